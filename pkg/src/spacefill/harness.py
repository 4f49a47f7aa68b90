"""Batch comparison studies: many design families, many replicates, one table.

A study generates ``replicates`` designs per family at a common (n, d),
scores each with every criterion, and aggregates medians and
interquartile ranges per family.  Families are either plain generators
(random, lhs, halton, hammersley, sobol) or exchange-optimized entries
(mc, nn, maximin) run through :func:`spacefill.optimizer.best_of_restarts`
from random starting designs.

Replicate seeds derive from (base_seed, family index, replicate index),
so a study is fully deterministic given its base seed, any family can be
re-run in isolation, and replicates can execute in parallel without
changing a single output byte.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .criteria import CriteriaReport, evaluate
from .designs import format_float
from .generators import Family, GeneratorSpec, generate
from .optimizer import ExchangeConfig, Objective, ObjectiveKind, best_of_restarts
from .seeds import check_seed, derive_seed

GENERATOR_FAMILIES = tuple(f.value for f in Family)
OPTIMIZER_FAMILIES = tuple(k.value for k in ObjectiveKind)
STUDY_FAMILIES = GENERATOR_FAMILIES + OPTIMIZER_FAMILIES

CRITERIA_FIELDS = ("cov", "mindist", "dl2", "dc2", "mst_mean", "mst_std")


class StudySpecError(ValueError):
    """Raised when a study description is malformed; names the offending field."""


class StudyError(RuntimeError):
    """Raised when a replicate fails; identifies (family, replicate, seed)."""


@dataclass(frozen=True)
class StudySpec:
    n: int
    d: int
    replicates: int
    families: tuple[str, ...]
    base_seed: int
    exchange: ExchangeConfig

    def __post_init__(self):
        object.__setattr__(self, "families", tuple(self.families))
        if self.n < 2:
            raise StudySpecError(f"field 'n' must be at least 2, got {self.n}")
        if self.d < 1:
            raise StudySpecError(f"field 'd' must be at least 1, got {self.d}")
        if self.replicates < 1:
            raise StudySpecError(f"field 'replicates' must be at least 1, got {self.replicates}")
        if not self.families:
            raise StudySpecError("field 'families' must not be empty")
        for family in self.families:
            if family not in STUDY_FAMILIES:
                raise StudySpecError(
                    f"field 'families' contains unknown family {family!r}; "
                    f"known: {', '.join(STUDY_FAMILIES)}"
                )
        check_seed(self.base_seed)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "replicates": self.replicates,
            "families": list(self.families),
            "base_seed": self.base_seed,
            "exchange": {
                "max_iterations": self.exchange.max_iterations,
                "stall_limit": self.exchange.stall_limit,
                "restarts": self.exchange.restarts,
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StudySpec":
        if not isinstance(data, dict):
            raise StudySpecError("study spec must be a JSON object")
        for field_name in ("n", "d", "replicates", "families", "base_seed"):
            if field_name not in data:
                raise StudySpecError(f"field {field_name!r} is missing")
        def _int_field(name, value):
            if isinstance(value, bool) or not isinstance(value, int):
                raise StudySpecError(f"field {name!r} must be an integer, got {value!r}")
            return value
        n = _int_field("n", data["n"])
        d = _int_field("d", data["d"])
        replicates = _int_field("replicates", data["replicates"])
        base_seed = _int_field("base_seed", data["base_seed"])
        families = data["families"]
        if not isinstance(families, list) or not all(isinstance(f, str) for f in families):
            raise StudySpecError("field 'families' must be a list of family names")
        exchange_data = data.get("exchange")
        if exchange_data is None:
            exchange = ExchangeConfig.default_for(n)
        else:
            if not isinstance(exchange_data, dict):
                raise StudySpecError("field 'exchange' must be an object")
            try:
                exchange = ExchangeConfig(
                    max_iterations=_int_field(
                        "exchange.max_iterations", exchange_data["max_iterations"]
                    ),
                    stall_limit=_int_field("exchange.stall_limit", exchange_data["stall_limit"]),
                    restarts=_int_field(
                        "exchange.restarts", exchange_data.get("restarts", 1)
                    ),
                )
            except KeyError as exc:
                raise StudySpecError(f"field 'exchange.{exc.args[0]}' is missing") from None
            except ValueError as exc:
                raise StudySpecError(f"field 'exchange' is invalid: {exc}") from None
        try:
            return cls(
                n=n, d=d, replicates=replicates, families=tuple(families),
                base_seed=base_seed, exchange=exchange,
            )
        except ValueError as exc:
            if isinstance(exc, StudySpecError):
                raise
            raise StudySpecError(str(exc)) from None


@dataclass(frozen=True)
class StudyRow:
    family: str
    replicate: int
    seed: int
    report: CriteriaReport


@dataclass(frozen=True)
class FamilyAggregate:
    family: str
    medians: dict
    iqrs: dict


@dataclass(frozen=True)
class StudyReport:
    spec: StudySpec
    rows: tuple[StudyRow, ...]
    aggregates: tuple[FamilyAggregate, ...]
    mst_scatter: tuple[tuple[str, int, float, float], ...]


def replicate_seed(base_seed: int, family_index: int, replicate: int) -> int:
    """Seed for one (family, replicate) cell: derive(base_seed, family index, replicate)."""
    return derive_seed(base_seed, family_index, replicate)


def build_design(spec: StudySpec, family: str, seed: int):
    """Materialize one replicate design for a study cell."""
    if family in GENERATOR_FAMILIES:
        return generate(GeneratorSpec(family=Family(family), n=spec.n, d=spec.d, seed=seed))
    objective = Objective.for_design_shape(family, spec.n, spec.d)
    config = replace(spec.exchange, seed=seed)
    initials = GeneratorSpec(family=Family.RANDOM, n=spec.n, d=spec.d, seed=seed)
    return best_of_restarts(initials, objective, config).design


def _run_cell(spec: StudySpec, family_index: int, replicate: int) -> StudyRow:
    family = spec.families[family_index]
    seed = replicate_seed(spec.base_seed, family_index, replicate)
    try:
        design = build_design(spec, family, seed)
        report = evaluate(design, label=family)
    except Exception as exc:
        raise StudyError(
            f"family {family!r}, replicate {replicate}, seed {seed}: {exc}"
        ) from exc
    return StudyRow(family=family, replicate=replicate, seed=seed, report=report)


def run_study(spec: StudySpec, workers: int | None = 1) -> StudyReport:
    """Execute a study; deterministic given spec.base_seed regardless of workers.

    ``workers`` > 1 evaluates replicates in separate processes; ``None``
    uses all machine cores.  Results are assembled in (family, replicate)
    order either way.
    """
    cells = [
        (fi, ri) for fi in range(len(spec.families)) for ri in range(spec.replicates)
    ]
    if workers is not None and workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if workers == 1:
        rows = [_run_cell(spec, fi, ri) for fi, ri in cells]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_cell, [spec] * len(cells), *zip(*cells)))
    aggregates = tuple(
        _aggregate(family, [r.report for r in rows if r.family == family])
        for family in spec.families
    )
    scatter = tuple(
        (r.family, r.replicate, r.report.mst_mean, r.report.mst_std) for r in rows
    )
    return StudyReport(spec=spec, rows=tuple(rows), aggregates=aggregates, mst_scatter=scatter)


def _aggregate(family: str, reports: list[CriteriaReport]) -> FamilyAggregate:
    medians = {}
    iqrs = {}
    for name in CRITERIA_FIELDS:
        values = np.array([getattr(r, name) for r in reports])
        medians[name] = float(np.median(values))
        iqrs[name] = float(np.percentile(values, 75) - np.percentile(values, 25))
    return FamilyAggregate(family=family, medians=medians, iqrs=iqrs)


# ---------------------------------------------------------------------------
# Report files.  Per-replicate criteria, per-family aggregates and the MST
# scatter go to CSV; the study spec itself goes to a JSON manifest so the
# whole run can be replayed byte-identically.
# ---------------------------------------------------------------------------

REPLICATES_CSV = "replicates.csv"
AGGREGATE_CSV = "aggregate.csv"
MST_SCATTER_CSV = "mst_scatter.csv"
MANIFEST_JSON = "manifest.json"


def emit_report(report: StudyReport, directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []

    path = directory / REPLICATES_CSV
    lines = ["family,replicate,seed,n,d," + ",".join(CRITERIA_FIELDS)]
    for row in report.rows:
        values = ",".join(format_float(getattr(row.report, f)) for f in CRITERIA_FIELDS)
        lines.append(
            f"{row.family},{row.replicate},{row.seed},{row.report.n},{row.report.d},{values}"
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    paths.append(path)

    path = directory / AGGREGATE_CSV
    header = ["family"]
    for name in CRITERIA_FIELDS:
        header += [f"{name}_median", f"{name}_iqr"]
    lines = [",".join(header)]
    for agg in report.aggregates:
        cells = [agg.family]
        for name in CRITERIA_FIELDS:
            cells += [format_float(agg.medians[name]), format_float(agg.iqrs[name])]
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    paths.append(path)

    path = directory / MST_SCATTER_CSV
    lines = ["family,replicate,mst_mean,mst_std"]
    for family, replicate, mean, std in report.mst_scatter:
        lines.append(f"{family},{replicate},{format_float(mean)},{format_float(std)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    paths.append(path)

    path = directory / MANIFEST_JSON
    path.write_text(json.dumps(report.spec.to_dict(), indent=2) + "\n", encoding="utf-8")
    paths.append(path)
    return paths


def load_study_spec(path) -> StudySpec:
    """Parse a study spec JSON file (also reads emitted manifests)."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise StudySpecError(f"{path}: not valid JSON: {exc}") from None
    try:
        return StudySpec.from_dict(data)
    except StudySpecError as exc:
        raise StudySpecError(f"{path}: {exc}") from None
