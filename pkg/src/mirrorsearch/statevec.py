"""Dense complex state vectors over n-qubit registers.

Basis ordering convention used everywhere in this package: a basis string
x1...xn is indexed by its integer value with x1 as the most significant bit,
so |00...0> is index 0 and |11...1> is index 2**n - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NormalizationError, WidthError

# 2**24 amplitudes (256 MiB complex128) is the largest register this package
# will represent; every shipped experiment runs far below it.
MAX_QUBITS = 24

# Unit-norm tolerance enforced on every constructed state.
NORM_TOL = 1e-12


def check_width(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_QUBITS:
        raise WidthError(f"register width must be an integer in [1, {MAX_QUBITS}], got {n!r}")


@dataclass(frozen=True)
class BasisIndex:
    """A concrete n-bit string, stored as its integer value plus the width."""

    value: int
    width: int

    def __post_init__(self):
        check_width(self.width)
        if not 0 <= self.value < (1 << self.width):
            raise WidthError(
                f"value {self.value} does not fit in {self.width} bits"
            )

    def bits(self) -> str:
        """Zero-padded bit string, most significant bit first."""
        return format(self.value, f"0{self.width}b")

    @classmethod
    def from_bits(cls, bits: str) -> BasisIndex:
        return cls(int(bits, 2), len(bits))

    def __int__(self) -> int:
        return self.value


def as_basis_index(x: BasisIndex | int, width: int) -> BasisIndex:
    """Coerce an int to a BasisIndex of the given width; validate widths match."""
    if isinstance(x, BasisIndex):
        if x.width != width:
            raise DimensionError(f"index width {x.width} != register width {width}")
        return x
    return BasisIndex(int(x), width)


class QuantumState:
    """Normalized complex amplitudes over all 2**n basis strings.

    Instances are immutable values: the amplitude buffer is read-only and all
    operations return fresh states. Construction validates the length and the
    unit norm, so every state produced by a public operation satisfies
    abs(norm - 1) <= 1e-12 by construction.
    """

    __slots__ = ("n", "amplitudes")

    def __init__(self, n: int, amplitudes):
        check_width(n)
        amps = np.array(amplitudes, dtype=np.complex128)
        if amps.shape != (1 << n,):
            raise DimensionError(
                f"expected {1 << n} amplitudes for width {n}, got shape {amps.shape}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"state norm is {norm!r}, not 1")
        amps.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "amplitudes", amps)

    def __setattr__(self, name, value):
        raise AttributeError("QuantumState is immutable")

    def __repr__(self):
        return f"QuantumState(n={self.n})"

    def probabilities(self) -> np.ndarray:
        """Born probabilities |amplitude|**2 for every basis index."""
        return np.abs(self.amplitudes) ** 2


def prepare_uniform(n: int) -> QuantumState:
    """The equal superposition: every amplitude exactly 1/sqrt(2**n), real."""
    check_width(n)
    size = 1 << n
    return QuantumState(n, np.full(size, 1.0 / math.sqrt(size), dtype=np.complex128))


def basis_state(index: BasisIndex) -> QuantumState:
    """The computational basis state |index>."""
    amps = np.zeros(1 << index.width, dtype=np.complex128)
    amps[index.value] = 1.0
    return QuantumState(index.width, amps)


def require_same_width(a: QuantumState, b: QuantumState) -> None:
    if a.n != b.n:
        raise DimensionError(f"register widths differ: {a.n} vs {b.n}")


def inner_product(a: QuantumState, b: QuantumState) -> complex:
    """<a|b> = sum conj(a_i) * b_i."""
    require_same_width(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def state_distance(a: QuantumState, b: QuantumState) -> float:
    """L2 norm of the amplitude difference; zero only for identical states.

    Global phase is not quotiented out: states are compared amplitude-wise.
    """
    require_same_width(a, b)
    return float(np.linalg.norm(a.amplitudes - b.amplitudes))
