"""Search-plane geometry, success probability, Born sampling, step records.

All in-scope dynamics stay in the real plane spanned by the marked state and
the uniform superposition of everything else, so a signed plane angle fully
describes a run. A state after k plain Grover iterations sits at angle
(2k+1)*theta, where sin(theta) = 1/sqrt(N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, MirrorSearchError
from .statevec import BasisIndex, QuantumState, as_basis_index

# A state counts as lying in the search plane when its non-marked amplitudes
# agree to this tolerance and every imaginary part is below it.
PLANE_TOL = 1e-8


@dataclass(frozen=True)
class StepTrace:
    """One row of a run's history: geometry and accounting after a step.

    op_kind is "prepare" (uniform state placed on the data register),
    "grover" (one full Grover iteration) or "reflect" (one stored-state
    reflection). emulated_index is the plain-Grover iteration count whose
    state the register now holds.
    """

    step_index: int
    op_kind: str
    emulated_index: int
    angle: float
    success_prob: float
    cumulative_oracle_calls: int
    max_imag: float


def success_probability(psi: QuantumState, omega: BasisIndex | int) -> float:
    """Born probability of measuring the marked string: |amplitude|**2."""
    idx = as_basis_index(omega, psi.n)
    return float(abs(psi.amplitudes[idx.value]) ** 2)


def angle_of(psi: QuantumState, omega: BasisIndex | int) -> float:
    """Signed plane angle of a state, in (-pi, pi].

    sin(angle) is the (real) amplitude on the marked string and cos(angle) is
    sqrt(N-1) times the common amplitude of all other strings. States outside
    the plane (unequal non-marked amplitudes, or any complex part) have no
    well-defined angle and raise GeometryError instead of returning noise.
    """
    idx = as_basis_index(omega, psi.n)
    amps = psi.amplitudes
    if float(np.max(np.abs(amps.imag))) > PLANE_TOL:
        raise GeometryError("state has complex amplitudes; no plane angle defined")
    rest = np.delete(amps.real, idx.value)
    common = float(rest.mean()) if rest.size else 0.0
    if rest.size and float(np.max(np.abs(rest - common))) > PLANE_TOL:
        raise GeometryError(
            "non-marked amplitudes are not mutually equal; state left the search plane"
        )
    sin_part = float(amps.real[idx.value])
    cos_part = math.sqrt(max((1 << psi.n) - 1, 1)) * common
    return math.atan2(sin_part, cos_part)


def sample_measurement(
    psi: QuantumState, shots: int, seed: int
) -> dict[int, int]:
    """Histogram of `shots` Born-rule measurements of the full register.

    Uses numpy's PCG64 generator seeded with `seed`; identical
    (state, shots, seed) triples produce identical histograms. Returns only
    outcomes that occurred, keyed by basis index, in ascending order.
    """
    if shots < 1:
        raise MirrorSearchError(f"shots must be >= 1, got {shots}")
    probs = psi.probabilities()
    # Guard against float round-off before handing to the multinomial sampler.
    counts = np.random.default_rng(seed).multinomial(shots, probs / probs.sum())
    hit = np.nonzero(counts)[0]
    return {int(i): int(counts[i]) for i in hit}


def record_step(
    psi: QuantumState,
    omega: BasisIndex | int,
    step_index: int,
    op_kind: str,
    emulated_index: int,
    cumulative_oracle_calls: int,
) -> StepTrace:
    """Build the trace row for a state a runner just produced."""
    return StepTrace(
        step_index=step_index,
        op_kind=op_kind,
        emulated_index=emulated_index,
        angle=angle_of(psi, omega),
        success_prob=success_probability(psi, omega),
        cumulative_oracle_calls=cumulative_oracle_calls,
        max_imag=float(np.max(np.abs(psi.amplitudes.imag))),
    )
