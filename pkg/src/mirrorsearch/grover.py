"""Grover search machinery: oracle operators, diffusion, iteration, runner.

Operator conventions (sign conventions are kept literal, no global-phase
cleanup): the phase oracle is 1 - 2|w><w| summed over accepted strings, the
diffusion operator is 2|s><s| - 1 with s the uniform superposition, and one
Grover iteration is diffusion after oracle. Each iteration rotates the state
by 2*theta toward the marked string, sin(theta) = 1/sqrt(N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .oracles import Oracle, unique_solution
from .statevec import QuantumState, check_width, prepare_uniform
from .trace import StepTrace, record_step


@dataclass(frozen=True)
class GroverParams:
    """Width-derived quantities: plane half-angle and iteration counts.

    t_opt is floor(pi / (4 * theta)) with the exact theta = arcsin(2**(-n/2));
    t_estimate is the coarse closed form pi * sqrt(2**n) / 4, reported for
    comparison (for n=8 it is 4*pi = 12.57 against t_opt = 12).
    """

    n: int
    theta: float
    t_opt: int
    t_estimate: float


def optimal_iterations(n: int) -> GroverParams:
    """Iteration count maximizing success probability, plus the sqrt-N estimate."""
    check_width(n)
    theta = math.asin(2.0 ** (-n / 2.0))
    return GroverParams(
        n=n,
        theta=theta,
        t_opt=math.floor(math.pi / (4.0 * theta)),
        t_estimate=math.pi * math.sqrt(1 << n) / 4.0,
    )


def phase_oracle_apply(oracle: Oracle, psi: QuantumState) -> QuantumState:
    """Negate the amplitude of every accepted string; counts one oracle call."""
    if oracle.n != psi.n:
        raise DimensionError(f"oracle width {oracle.n} != state width {psi.n}")
    out = psi.amplitudes.copy()
    out[oracle.solution_indices()] *= -1.0
    oracle.record_application()
    return QuantumState(psi.n, out)


def xor_oracle_apply(oracle: Oracle, psi_extended: QuantumState) -> QuantumState:
    """The (n+1)-qubit form |x>|y> -> |x>|y xor f(x)>; counts one oracle call.

    The ancilla y is the last qubit (least significant index bit). With the
    ancilla in (|0> - |1>)/sqrt(2) this reduces to the phase oracle on the
    first n qubits by phase kickback.
    """
    if psi_extended.n != oracle.n + 1:
        raise DimensionError(
            f"extended register must have width {oracle.n + 1}, got {psi_extended.n}"
        )
    out = psi_extended.amplitudes.copy()
    flips = oracle.solution_indices() << 1
    out[flips], out[flips + 1] = psi_extended.amplitudes[flips + 1], psi_extended.amplitudes[flips]
    oracle.record_application()
    return QuantumState(psi_extended.n, out)


def diffusion_apply(psi: QuantumState) -> QuantumState:
    """Reflect about the uniform superposition: out = 2<s|psi>|s> - psi.

    Since every component of |s> is 1/sqrt(N), this is 2*mean(psi) - psi.
    """
    return QuantumState(psi.n, 2.0 * np.mean(psi.amplitudes) - psi.amplitudes)


def grover_iteration(oracle: Oracle, psi: QuantumState) -> QuantumState:
    """One Grover iteration: diffusion after the phase oracle (one oracle call)."""
    return diffusion_apply(phase_oracle_apply(oracle, psi))


def grover_run(oracle: Oracle, steps: int) -> tuple[QuantumState, list[StepTrace]]:
    """Run `steps` Grover iterations from the uniform state, tracing each one.

    Refuses oracles without exactly one solution. Trace row k records the
    state after iteration k (angle (2k+1)*theta); the initial uniform state at
    angle theta is not a row, so steps=0 yields an empty trace.
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    omega = unique_solution(oracle)
    psi = prepare_uniform(oracle.n)
    calls_before = oracle.call_count
    traces: list[StepTrace] = []
    for k in range(1, steps + 1):
        psi = grover_iteration(oracle, psi)
        traces.append(
            record_step(
                psi,
                omega,
                step_index=k,
                op_kind="grover",
                emulated_index=k,
                cumulative_oracle_calls=oracle.call_count - calls_before,
            )
        )
    return psi, traces
