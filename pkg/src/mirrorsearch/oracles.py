"""Decision oracles over n-bit strings and their exhaustive classical baseline.

Two oracle kinds exist: a marked-string oracle (true on exactly one string)
and a CNF oracle built from a DIMACS formula (true on satisfying assignments).
CNF variable i (1-based) maps to bit i-1 of the basis string, most significant
first, matching the statevec index convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimacsError, DimensionError, UniquenessError, WidthError
from .statevec import BasisIndex, as_basis_index

# Exhaustive enumeration refuses registers wider than this (2**20 = ~1M rows).
BRUTE_FORCE_MAX_QUBITS = 20


@dataclass
class CnfFormula:
    """A CNF formula: clauses of nonzero signed 1-based variable indices."""

    num_vars: int
    clauses: list[list[int]]

    def __post_init__(self):
        if self.num_vars < 1:
            raise WidthError(f"num_vars must be >= 1, got {self.num_vars}")
        for clause in self.clauses:
            if not clause:
                raise DimacsError("empty clause")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise DimacsError(f"literal {lit} out of range (1..{self.num_vars})")


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF text: comment lines, one header, 0-terminated clauses.

    Raises DimacsError (with the offending 1-based line number) on a malformed
    header, out-of-range literal, empty clause, unterminated clause, or a
    clause count that disagrees with the header.
    """
    num_vars = None
    num_clauses = None
    clauses: list[list[int]] = []
    current: list[int] = []
    line_no = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsError("duplicate header", line_no)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", line_no)
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", line_no) from None
            if num_vars < 1 or num_clauses < 0:
                raise DimacsError(f"malformed header {line!r}", line_no)
            continue
        if num_vars is None:
            raise DimacsError("clause before header", line_no)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError(f"bad literal {token!r}", line_no) from None
            if lit == 0:
                if not current:
                    raise DimacsError("empty clause", line_no)
                clauses.append(current)
                current = []
            else:
                if abs(lit) > num_vars:
                    raise DimacsError(
                        f"literal {lit} out of range (1..{num_vars})", line_no
                    )
                current.append(lit)
    if num_vars is None:
        raise DimacsError("missing header", max(line_no, 1))
    if current:
        raise DimacsError("unterminated clause at end of input", line_no)
    if len(clauses) != num_clauses:
        raise DimacsError(
            f"header declares {num_clauses} clauses, found {len(clauses)}", line_no
        )
    return CnfFormula(num_vars, clauses)


def parse_dimacs_file(path) -> CnfFormula:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_dimacs(handle.read())


@dataclass
class Oracle:
    """A black-box decision function plus a counter of state-level applications.

    call_count increments once per application of the oracle operator to a
    state (see the grover module), never per basis-point evaluation, because
    the query-complexity accounting is in units of oracle invocations. The
    counter is not thread-safe; confine an oracle instance to one thread.
    """

    n: int
    kind: str  # "marked" | "cnf"
    omega: BasisIndex | None = None
    formula: CnfFormula | None = None
    call_count: int = 0
    _solutions: np.ndarray | None = field(default=None, repr=False, init=False, compare=False)

    @classmethod
    def marked(cls, n: int, omega: BasisIndex | int) -> Oracle:
        """Oracle that accepts exactly the string omega."""
        return cls(n=n, kind="marked", omega=as_basis_index(omega, n))

    @classmethod
    def from_cnf(cls, formula: CnfFormula) -> Oracle:
        """Oracle that accepts exactly the satisfying assignments of formula."""
        return cls(n=formula.num_vars, kind="cnf", formula=formula)

    def evaluate(self, x: BasisIndex | int) -> int:
        """f(x) as 0 or 1. Does not touch call_count."""
        idx = as_basis_index(x, self.n)
        if self.kind == "marked":
            return int(idx.value == self.omega.value)
        for clause in self.formula.clauses:
            if not any(self._literal_true(lit, idx.value) for lit in clause):
                return 0
        return 1

    def _literal_true(self, lit: int, value: int) -> bool:
        bit = (value >> (self.n - abs(lit))) & 1
        return bit == 1 if lit > 0 else bit == 0

    def record_application(self) -> None:
        """Count one state-level application of the oracle operator."""
        self.call_count += 1

    def solution_indices(self) -> np.ndarray:
        """Sorted integer indices of all accepted strings (computed once)."""
        if self._solutions is None:
            if self.kind == "marked":
                self._solutions = np.array([self.omega.value], dtype=np.int64)
            else:
                self._solutions = np.nonzero(self._cnf_mask())[0].astype(np.int64)
        return self._solutions

    def _cnf_mask(self) -> np.ndarray:
        """Vectorized satisfiability of every assignment (bool array of 2**n)."""
        indices = np.arange(1 << self.n, dtype=np.int64)
        sat = np.ones(1 << self.n, dtype=bool)
        for clause in self.formula.clauses:
            clause_sat = np.zeros(1 << self.n, dtype=bool)
            for lit in clause:
                bit = (indices >> (self.n - abs(lit))) & 1
                clause_sat |= bit == 1 if lit > 0 else bit == 0
            sat &= clause_sat
        return sat


def brute_force_solutions(oracle: Oracle) -> list[BasisIndex]:
    """All accepted strings in ascending order, by exhaustive enumeration.

    This is the classical baseline the quantum runs are compared against.
    Does not touch call_count. Refuses widths above BRUTE_FORCE_MAX_QUBITS.
    """
    if oracle.n > BRUTE_FORCE_MAX_QUBITS:
        raise WidthError(
            f"exhaustive enumeration is capped at {BRUTE_FORCE_MAX_QUBITS} qubits, "
            f"got {oracle.n}"
        )
    return [BasisIndex(int(v), oracle.n) for v in oracle.solution_indices()]


def unique_solution(oracle: Oracle) -> BasisIndex:
    """The single accepted string, or a UniquenessError naming the count found.

    Marked-string oracles are unique by construction; CNF oracles are checked
    by exhaustive enumeration (so CNF search is limited to the brute-force cap).
    """
    if oracle.kind == "marked":
        return oracle.omega
    solutions = brute_force_solutions(oracle)
    if len(solutions) != 1:
        listing = ", ".join(s.bits() for s in solutions[:8])
        if len(solutions) > 8:
            listing += ", ..."
        detail = f": {listing}" if solutions else ""
        raise UniquenessError(
            f"search requires exactly one solution, found {len(solutions)}{detail}",
            num_solutions=len(solutions),
        )
    return solutions[0]
