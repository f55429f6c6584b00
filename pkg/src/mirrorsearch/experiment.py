"""Experiment orchestration: configure, run, compare, serialize.

A run is deterministic given its config and seed. Reports serialize to JSON
(canonical, round-trips field-for-field) and the per-step trace table to CSV.

Cost accounting used by the comparison table: one unit per oracle
application, per diffusion application, and per stored-state reflection;
the classical baseline pays one unit per evaluated string in ascending scan
order, so it finds the solution after (solution index + 1) units.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, replace

from .errors import DimensionError, MirrorSearchError, WidthError
from .grover import GroverParams, grover_run, optimal_iterations
from .oracles import Oracle, parse_dimacs_file, unique_solution
from .reflect import ReflectStep, build_schedule, doubling_run, reflection_count
from .statevec import BasisIndex
from .trace import StepTrace, angle_of, sample_measurement, success_probability

# Flat schema of the CSV trace table (and of each JSON trace row's core).
CSV_TRACE_FIELDS = (
    "step_index",
    "op_kind",
    "emulated_index",
    "angle",
    "success_prob",
    "cumulative_oracle_calls",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce a run.

    Exactly one oracle source: a marked string (omega) or a DIMACS file
    (cnf_path). For CNF sources n may be left None and is filled from the
    formula. steps applies to plain Grover runs only (None means the optimal
    count); shots=0 disables sampling.
    """

    n: int | None = None
    omega: int | None = None
    cnf_path: str | None = None
    algorithm: str = "grover"
    schedule_kind: str = "binary"
    steps: int | None = None
    shots: int = 0
    seed: int = 0
    format: str = "json"
    output: str | None = None

    def __post_init__(self):
        if (self.omega is None) == (self.cnf_path is None):
            raise MirrorSearchError("exactly one oracle source (omega or cnf_path) is required")
        if self.omega is not None and self.n is None:
            raise MirrorSearchError("a marked-string oracle needs the register width n")
        if self.algorithm not in ("grover", "doubling"):
            raise MirrorSearchError(f"unknown algorithm {self.algorithm!r}")
        if self.schedule_kind not in ("power2", "binary"):
            raise MirrorSearchError(f"unknown schedule kind {self.schedule_kind!r}")
        if self.steps is not None and self.steps < 0:
            raise MirrorSearchError(f"steps must be >= 0, got {self.steps}")
        if self.shots < 0:
            raise MirrorSearchError(f"shots must be >= 0, got {self.shots}")
        if self.format not in ("json", "csv"):
            raise MirrorSearchError(f"unknown format {self.format!r}")


@dataclass(frozen=True)
class FinalSummary:
    success_prob: float
    angle: float
    emulated_index: int


@dataclass(frozen=True)
class RunCounts:
    """Operation breakdown, so any cost model can be applied after the fact.

    stored_states counts the distinct run states a doubling schedule kept
    around (0 for plain Grover); power2 schedules only ever touch the newest
    one plus a fresh uniform register, binary schedules revisit older ones.
    """

    oracle_calls: int
    reflections: int
    grover_steps: int
    stored_states: int


@dataclass(frozen=True)
class RunReport:
    config: ExperimentConfig
    params: GroverParams
    traces: tuple[StepTrace, ...]
    final: FinalSummary
    counts: RunCounts
    histogram: dict[int, int] | None
    wall_time: float

    def to_dict(self) -> dict:
        data = {
            "config": _config_to_dict(self.config),
            "params": asdict(self.params),
            "traces": [asdict(t) for t in self.traces],
            "final": asdict(self.final),
            "counts": asdict(self.counts),
            "histogram": _histogram_to_dict(self.histogram, self.params.n),
            "wall_time": self.wall_time,
        }
        return data

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> RunReport:
        histogram = data["histogram"]
        if histogram is not None:
            histogram = {int(bits, 2): count for bits, count in histogram.items()}
        return cls(
            config=_config_from_dict(data["config"]),
            params=GroverParams(**data["params"]),
            traces=tuple(StepTrace(**t) for t in data["traces"]),
            final=FinalSummary(**data["final"]),
            counts=RunCounts(**data["counts"]),
            histogram=histogram,
            wall_time=data["wall_time"],
        )

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls.from_dict(json.loads(text))

    def traces_to_csv(self) -> str:
        return traces_to_csv(self.traces)


def _config_to_dict(config: ExperimentConfig) -> dict:
    data = asdict(config)
    if config.omega is not None:
        data["omega"] = BasisIndex(config.omega, config.n).bits()
    return data


def _config_from_dict(data: dict) -> ExperimentConfig:
    data = dict(data)
    if data.get("omega") is not None:
        data["omega"] = int(data["omega"], 2)
    return ExperimentConfig(**data)


def _histogram_to_dict(histogram: dict[int, int] | None, n: int) -> dict | None:
    if histogram is None:
        return None
    return {BasisIndex(value, n).bits(): count for value, count in histogram.items()}


def traces_to_csv(traces) -> str:
    """The per-step trace table as CSV, exactly the CSV_TRACE_FIELDS columns."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_TRACE_FIELDS)
    for t in traces:
        writer.writerow([repr(getattr(t, f)) if isinstance(getattr(t, f), float)
                         else getattr(t, f) for f in CSV_TRACE_FIELDS])
    return buffer.getvalue()


def build_oracle(config: ExperimentConfig) -> tuple[ExperimentConfig, Oracle]:
    """Construct the oracle; returns the config with n resolved from a CNF file."""
    if config.omega is not None:
        if config.omega >= (1 << config.n):
            raise WidthError(
                f"omega {config.omega:#x} does not fit in {config.n} bits"
            )
        return config, Oracle.marked(config.n, config.omega)
    formula = parse_dimacs_file(config.cnf_path)
    if config.n is not None and config.n != formula.num_vars:
        raise DimensionError(
            f"--n {config.n} disagrees with the formula's {formula.num_vars} variables"
        )
    resolved = replace(config, n=formula.num_vars)
    return resolved, Oracle.from_cnf(formula)


def run_experiment(config: ExperimentConfig) -> RunReport:
    """Run one configured experiment and assemble its report.

    Grover runs make one oracle call per iteration; doubling runs make
    exactly one in total. Oracles without a unique solution are refused.
    """
    start = time.perf_counter()
    config, oracle = build_oracle(config)
    omega = unique_solution(oracle)
    params = optimal_iterations(config.n)

    if config.algorithm == "grover":
        steps = params.t_opt if config.steps is None else config.steps
        state, traces = grover_run(oracle, steps)
        counts = RunCounts(
            oracle_calls=oracle.call_count,
            reflections=0,
            grover_steps=steps,
            stored_states=0,
        )
        emulated = steps
    else:
        schedule = build_schedule(config.schedule_kind, params.t_opt, config.n)
        state, traces = doubling_run(oracle, schedule)
        result_indices = {s.result_index for s in schedule.steps if isinstance(s, ReflectStep)}
        counts = RunCounts(
            oracle_calls=oracle.call_count,
            reflections=reflection_count(schedule),
            grover_steps=1,
            stored_states=2 + len(result_indices),  # s_0 and s_1 plus every result
        )
        emulated = schedule.emulated_index

    final = FinalSummary(
        success_prob=success_probability(state, omega),
        angle=angle_of(state, omega),
        emulated_index=emulated,
    )
    histogram = (
        sample_measurement(state, config.shots, config.seed) if config.shots else None
    )
    return RunReport(
        config=config,
        params=params,
        traces=tuple(traces),
        final=final,
        counts=counts,
        histogram=histogram,
        wall_time=time.perf_counter() - start,
    )


@dataclass(frozen=True)
class ComparisonRow:
    algorithm: str
    oracle_calls: int
    reflections: int
    grover_steps: int
    total_unit_ops: int
    success_prob: float


COMPARISON_FIELDS = tuple(f.name for f in ComparisonRow.__dataclass_fields__.values())


def compare_algorithms(config: ExperimentConfig) -> list[ComparisonRow]:
    """Classical scan vs plain Grover vs doubling, on the same oracle.

    The classical row is closed-form: an ascending exhaustive scan pays one
    evaluation per string until it hits the solution. The quantum rows come
    from actual runs under the shared cost model (see module docstring).
    """
    resolved, oracle = build_oracle(config)
    omega = unique_solution(oracle)

    rows = [
        ComparisonRow(
            algorithm="classical",
            oracle_calls=omega.value + 1,
            reflections=0,
            grover_steps=0,
            total_unit_ops=omega.value + 1,
            success_prob=1.0,
        )
    ]
    for algorithm in ("grover", "doubling"):
        report = run_experiment(replace(resolved, algorithm=algorithm, shots=0))
        c = report.counts
        rows.append(
            ComparisonRow(
                algorithm=algorithm,
                oracle_calls=c.oracle_calls,
                reflections=c.reflections,
                grover_steps=c.grover_steps,
                total_unit_ops=c.oracle_calls + c.grover_steps + c.reflections,
                success_prob=report.final.success_prob,
            )
        )
    return rows


def comparison_to_csv(rows: list[ComparisonRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(COMPARISON_FIELDS)
    for row in rows:
        writer.writerow(
            [repr(v) if isinstance(v, float) else v for v in
             (getattr(row, f) for f in COMPARISON_FIELDS)]
        )
    return buffer.getvalue()
