"""Stored-state reflections and schedules that fast-forward Grover search.

The model here takes one hypothetical primitive as an axiom: a register
holding state m can act on another register as the reflection operator
2|m><m| - 1, at unit cost and without consulting the oracle. Because a plain
Grover run stays in a fixed two-dimensional plane, reflections of stored run
states compose exactly: if s_i denotes the state after i Grover iterations
(at plane angle (2i+1)*theta), then

    reflect_about(s_k, s_j) = s_{2k-j}

since reflecting angle (2j+1)*theta about (2k+1)*theta lands on
(2(2k-j)+1)*theta. A schedule that performs one real Grover iteration and
then chains such reflections reaches the state of T iterations with a single
oracle call and O(log T) reflections.

Whether the reflection primitive is physically admissible is out of scope;
the simulator only answers what follows if it is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ScheduleError
from .oracles import Oracle, unique_solution
from .statevec import QuantumState, require_same_width, prepare_uniform
from .trace import StepTrace, record_step
from .grover import grover_iteration, optimal_iterations


@dataclass(frozen=True)
class GroverStep:
    """One real Grover iteration, turning the stored s_0 into s_1."""


@dataclass(frozen=True)
class ReflectStep:
    """Reflect stored state s_input about stored state s_mirror, store s_result.

    The composition law fixes result_index = 2*mirror_index - input_index.
    """

    mirror_index: int
    input_index: int
    result_index: int

    def __post_init__(self):
        if self.result_index != 2 * self.mirror_index - self.input_index:
            raise ScheduleError(
                f"reflect step {self.mirror_index},{self.input_index}"
                f"->{self.result_index} violates result = 2*mirror - input"
            )
        if self.input_index < 0 or self.mirror_index < 1 or self.result_index < 1:
            raise ScheduleError("reflect step indices must be nonnegative (mirror >= 1)")


@dataclass(frozen=True)
class ReflectionSchedule:
    """An ordered plan reaching some Grover iteration index by reflections.

    kind "power2" doubles the newest state against a fresh uniform register
    (endpoint is a power of two near the most successful angle, so it may
    differ from target_index); kind "binary" composes stored states to land
    exactly on target_index.
    """

    kind: str
    target_index: int
    steps: tuple[GroverStep | ReflectStep, ...]

    def __post_init__(self):
        if self.kind not in ("power2", "binary"):
            raise ScheduleError(f"unknown schedule kind {self.kind!r}")
        if self.target_index < 1:
            raise ScheduleError(f"target_index must be >= 1, got {self.target_index}")
        grover_steps = sum(isinstance(s, GroverStep) for s in self.steps)
        if grover_steps != 1:
            raise ScheduleError(f"schedule must contain exactly one Grover step, has {grover_steps}")
        bound = 2 * math.ceil(math.log2(max(self.target_index, 2)))
        reflects = len(self.steps) - 1
        if reflects > bound:
            raise ScheduleError(
                f"{reflects} reflections exceed the 2*ceil(log2(target)) bound of {bound}"
            )

    @property
    def emulated_index(self) -> int:
        """Grover iteration index of the state the schedule ends on."""
        last = self.steps[-1]
        return 1 if isinstance(last, GroverStep) else last.result_index

    @property
    def uses_two_systems_only(self) -> bool:
        """True when every reflection reads only the newest state and a fresh s_0.

        This is the role-alternating two-register regime: power2 schedules
        satisfy it by construction, binary schedules usually do not because
        they revisit older stored states.
        """
        current = 1
        for step in self.steps:
            if isinstance(step, GroverStep):
                continue
            if step.input_index != 0 or step.mirror_index != current:
                return False
            current = step.result_index
        return True


def reflection_count(schedule: ReflectionSchedule) -> int:
    """Number of stored-state reflections the schedule performs."""
    return sum(isinstance(s, ReflectStep) for s in schedule.steps)


def reflect_about(mirror: QuantumState, state: QuantumState) -> QuantumState:
    """Apply the stored state `mirror` as the operator 2|m><m| - 1 to `state`.

    Costs zero oracle calls: the mirror register itself encodes the operator.
    """
    require_same_width(mirror, state)
    overlap = np.vdot(mirror.amplitudes, state.amplitudes)
    return QuantumState(state.n, 2.0 * overlap * mirror.amplitudes - state.amplitudes)


def _power2_endpoint(target_index: int, n: int) -> int:
    """Power of two whose run state is most likely to measure the solution.

    Candidates are 2**m for m up to ceil(log2(target)); the winner minimizes
    |sin((2T+1)*theta)**2 - 1|, ties going to the smaller power.
    """
    theta = optimal_iterations(n).theta
    best, best_gap = 1, None
    for m in range(math.ceil(math.log2(max(target_index, 1))) + 1):
        t = 1 << m
        gap = abs(math.sin((2 * t + 1) * theta) ** 2 - 1.0)
        if best_gap is None or gap < best_gap:
            best, best_gap = t, gap
    return best


def _binary_steps(target_index: int) -> list[ReflectStep]:
    """Reflection chain landing exactly on target_index.

    Powers of two come from plain doubling (reflect s_0 about the previous
    power). Any other t with leading power k = 2**floor(log2 t) comes from
    reflecting s_{2k-t} about s_k, recursing on the correction 2k-t < k.
    Corrections descend through strictly smaller power levels, at most one
    each, so the chain stays within 2*ceil(log2(target)) steps.
    """
    steps: list[ReflectStep] = []
    stored = {0, 1}

    def ensure(t: int) -> None:
        if t in stored:
            return
        if t & (t - 1) == 0:  # power of two: plain doubling
            half = t >> 1
            ensure(half)
            steps.append(ReflectStep(half, 0, t))
        else:
            k = 1 << (t.bit_length() - 1)
            j = 2 * k - t
            ensure(k)
            ensure(j)
            steps.append(ReflectStep(k, j, t))
        stored.add(t)

    ensure(target_index)
    return steps


def build_schedule(kind: str, target_index: int, n: int | None = None) -> ReflectionSchedule:
    """Plan a run reaching Grover index target_index (or a power-2 stand-in).

    kind "binary" needs only the target; kind "power2" additionally needs the
    register width n because its endpoint choice compares success
    probabilities, which depend on theta.
    """
    if target_index < 1:
        raise ScheduleError(f"target_index must be >= 1, got {target_index}")
    if kind == "power2":
        if n is None:
            raise ScheduleError("power2 schedules need the register width n")
        endpoint = _power2_endpoint(target_index, n)
        steps = [ReflectStep(1 << m, 0, 1 << (m + 1)) for m in range(endpoint.bit_length() - 1)]
    elif kind == "binary":
        steps = _binary_steps(target_index)
    else:
        raise ScheduleError(f"unknown schedule kind {kind!r}")
    return ReflectionSchedule(kind, target_index, (GroverStep(), *steps))


def doubling_run(
    oracle: Oracle, schedule: ReflectionSchedule
) -> tuple[QuantumState, list[StepTrace]]:
    """Execute a reflection schedule; exactly one oracle call regardless of length.

    Keeps a store of run states keyed by emulated Grover index, with s_0 (the
    uniform state, re-preparable at will) always present. The trace records
    the initial preparation, the single Grover step, and every reflection.
    """
    omega = unique_solution(oracle)
    calls_before = oracle.call_count
    store: dict[int, QuantumState] = {0: prepare_uniform(oracle.n)}
    traces = [
        record_step(store[0], omega, step_index=0, op_kind="prepare",
                    emulated_index=0, cumulative_oracle_calls=0)
    ]
    current = store[0]
    for i, step in enumerate(schedule.steps, start=1):
        if isinstance(step, GroverStep):
            current = grover_iteration(oracle, store[0])
            store[1] = current
            emulated = 1
            kind = "grover"
        else:
            missing = [k for k in (step.mirror_index, step.input_index) if k not in store]
            if missing:
                raise ScheduleError(
                    f"step {i} references states {missing} not yet stored"
                )
            current = reflect_about(store[step.mirror_index], store[step.input_index])
            store[step.result_index] = current
            emulated = step.result_index
            kind = "reflect"
        traces.append(
            record_step(current, omega, step_index=i, op_kind=kind,
                        emulated_index=emulated,
                        cumulative_oracle_calls=oracle.call_count - calls_before)
        )
    return current, traces
