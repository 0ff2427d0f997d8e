"""End-to-end pruning experiments over size/side schedules.

Runs the full pipeline (sample points, build the unit disk graph, prune,
verify the CDS) across seeded trials, collects per-vertex label/count
statistics, and emits a fixed-schema CSV for scaling sweeps.  Everything
is deterministic given the configured seeds; trials may run in worker
processes because each one derives its own seed.
"""

from __future__ import annotations

import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .geometry import SquareRegion, truncated_disk_area
from .rgg import build_udg, components, ell_power, ell_sqrt, sample_points
from .rule2 import prune, verify_cds
from .util import derived_seed, wilson_interval

__all__ = [
    "Schedule",
    "TrialResult",
    "VertexStatsArrays",
    "VertexStats",
    "default_alpha",
    "alpha_conditions",
    "make_schedule",
    "vertex_stats",
    "all_vertex_stats",
    "run_trial",
    "SweepConfig",
    "ScheduleSpec",
    "sweep",
    "sweep_rows_to_csv",
    "aggregate_rows",
    "conditional_prune_rate",
    "concentration_check",
    "CSV_SCHEMA_VERSION",
    "CSV_COLUMNS",
]

CSV_SCHEMA_VERSION = 1
CSV_COLUMNS = [
    "schema_ver",
    "n",
    "side",
    "seed",
    "trial",
    "cds_size",
    "U",
    "frac_pruned",
    "comp_g",
    "comp_c",
    "dominating",
    "cds_over_ell2",
    "ge_ell2_over_4",
    "millis",
]


@dataclass(frozen=True)
class Schedule:
    """A finite-n instance of the asymptotic parameter schedule.

    ``alpha`` is the label-window cut, ``xi = alpha / ell^2`` the crowding
    ratio, ``margin = 1 / (ln xi)^{3/2}`` the boundary margin used by the
    interior event, and [window_lo, window_hi) the label window the
    conditional pruning rate is measured on.
    """

    n: int
    ell: float
    alpha: float
    xi: float = field(init=False)
    margin: float = field(init=False)
    window_lo: float = field(init=False)
    window_hi: float = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not (math.isfinite(self.ell) and self.ell > 0):
            raise ValueError(f"ell must be positive, got {self.ell!r}")
        xi = self.alpha / (self.ell * self.ell)
        if xi <= 1.0:
            raise ValueError(
                f"alpha/ell^2 = {xi:.4g} <= 1: the boundary margin is undefined"
            )
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "margin", 1.0 / math.log(xi) ** 1.5)
        object.__setattr__(self, "window_lo", self.alpha)
        object.__setattr__(self, "window_hi", self.n - self.alpha)
        if self.n > 1 and self.ell < math.log(self.n):
            warnings.warn(
                f"ell={self.ell:.4g} below ln n={math.log(self.n):.4g}: outside the "
                "regime the analysis assumes",
                stacklevel=2,
            )
        if self.alpha >= self.n:
            warnings.warn(
                f"alpha={self.alpha:.4g} >= n={self.n}: the label window is empty at "
                "this size (expected at desk scale for the sqrt profile)",
                stacklevel=2,
            )


def default_alpha(n: int, ell: float, profile: str) -> float:
    """The window cut for a given habitat profile.

    ``"sqrt"`` (ell of order sqrt(n/ln n)) uses 32n / (ln ln n)^{3/2};
    ``"power"`` (ell of order (n/ln n)^t, t < 1/2) uses n / ln n.
    """
    if profile == "sqrt":
        if n <= 15:  # ln ln n <= 1 makes the exponent degenerate
            raise ValueError(f"sqrt profile needs n > 15, got {n}")
        return 32.0 * n / math.log(math.log(n)) ** 1.5
    if profile == "power":
        if n < 3:
            raise ValueError(f"power profile needs n >= 3, got {n}")
        return n / math.log(n)
    raise ValueError(f"unknown alpha profile {profile!r} (expected 'sqrt' or 'power')")


def alpha_conditions(n: int, ell: float, alpha: float) -> dict:
    """Evaluate the three admissibility conditions on alpha at this finite n.

    Reported, not enforced: the first and third are asymptotic statements
    that routinely fail at desk scale.
    """
    xi = alpha / (ell * ell)
    lower = 16.0 * n / math.log(xi) ** 1.5 if xi > 1 else math.inf
    return {
        "alpha_lt_n": alpha < n,
        "xi": xi,
        "xi_gt_1": xi > 1.0,
        "lower_bound_16n": lower,
        "lower_bound_holds": lower < alpha,
    }


def make_schedule(n: int, ell: float, alpha_profile: str = "sqrt") -> Schedule:
    return Schedule(n=n, ell=ell, alpha=default_alpha(n, ell, alpha_profile))


@dataclass(frozen=True)
class VertexStats:
    """Label/count statistics of one vertex.

    ``higher_count``/``lower_count`` are the numbers of neighbors (nodes
    within distance 1, clipped to the square) with larger/smaller labels;
    the means are the exact conditional expectations (n-i) A / ell^2 and
    (i-1) A / ell^2 with A the clipped-disk area.  ``interior`` says the
    margin disk fits in the square; ``concentrated`` says both counts sit
    strictly within half their mean.
    """

    vid: int
    higher_count: int
    lower_count: int
    higher_mean: float
    lower_mean: float
    interior: bool
    concentrated: bool


@dataclass(frozen=True)
class VertexStatsArrays:
    """Column layout of `VertexStats` over every vertex of one graph."""

    higher_count: np.ndarray
    lower_count: np.ndarray
    higher_mean: np.ndarray
    lower_mean: np.ndarray
    interior: np.ndarray
    concentrated: np.ndarray

    def single(self, vid: int) -> VertexStats:
        j = vid - 1
        return VertexStats(
            vid=vid,
            higher_count=int(self.higher_count[j]),
            lower_count=int(self.lower_count[j]),
            higher_mean=float(self.higher_mean[j]),
            lower_mean=float(self.lower_mean[j]),
            interior=bool(self.interior[j]),
            concentrated=bool(self.concentrated[j]),
        )


def all_vertex_stats(g, schedule: Schedule) -> VertexStatsArrays:
    """`VertexStats` columns for all vertices (one pass over the graph)."""
    n = g.n
    ids = np.arange(1, n + 1)
    higher = np.zeros(n, dtype=np.int64)
    lower = np.zeros(n, dtype=np.int64)
    if len(g.edges):
        lo = np.minimum(g.edges[:, 0], g.edges[:, 1])
        hi = np.maximum(g.edges[:, 0], g.edges[:, 1])
        # for index pairs lo < hi the higher label sits at hi
        np.add.at(higher, lo, 1)
        np.add.at(lower, hi, 1)
    areas = np.array(
        [truncated_disk_area(g.points[j], g.square) for j in range(n)]
    )
    ell2 = g.square.side**2
    higher_mean = (n - ids) * areas / ell2
    lower_mean = (ids - 1) * areas / ell2
    r = schedule.margin
    xs, ys = g.points[:, 0], g.points[:, 1]
    interior = (xs >= r) & (xs <= g.square.side - r) & (ys >= r) & (ys <= g.square.side - r)
    concentrated = (np.abs(higher - higher_mean) < 0.5 * higher_mean) & (
        np.abs(lower - lower_mean) < 0.5 * lower_mean
    )
    return VertexStatsArrays(
        higher_count=higher,
        lower_count=lower,
        higher_mean=higher_mean,
        lower_mean=lower_mean,
        interior=interior,
        concentrated=concentrated,
    )


def vertex_stats(g, i: int, schedule: Schedule) -> VertexStats:
    """Statistics of vertex ``i``; see `VertexStats` for the fields.

    The highest label has higher_mean 0, so its strict concentration
    inequality is unsatisfiable and it is never ``concentrated`` (the
    label window never reaches it anyway).
    """
    if not 1 <= i <= g.n:
        raise ValueError(f"vertex id {i} out of range 1..{g.n}")
    nbr = g.neighbors(i)
    area = truncated_disk_area(g.points[i - 1], g.square)
    ell2 = g.square.side**2
    higher_mean = (g.n - i) * area / ell2
    lower_mean = (i - 1) * area / ell2
    r = schedule.margin
    x, y = g.points[i - 1]
    hc = int((nbr > i).sum())
    lc = int((nbr < i).sum())
    return VertexStats(
        vid=i,
        higher_count=hc,
        lower_count=lc,
        higher_mean=higher_mean,
        lower_mean=lower_mean,
        interior=bool(r <= x <= g.square.side - r and r <= y <= g.square.side - r),
        concentrated=bool(
            abs(hc - higher_mean) < 0.5 * higher_mean
            and abs(lc - lower_mean) < 0.5 * lower_mean
        ),
    )


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one full pipeline run.  ``runtime_ms`` is measured wall
    time and excluded from equality so identical seeds compare equal."""

    n: int
    side: float
    seed: int
    cds_size: int
    pruned: int
    components_graph: int
    components_induced: int
    dominating: bool
    runtime_ms: float = field(compare=False, default=0.0)

    @property
    def component_preserving(self) -> bool:
        return self.components_graph == self.components_induced


def run_trial(n: int, side: float, seed: int, schedule: Schedule | None = None) -> TrialResult:
    """Sample, build, prune, verify; deterministic given (n, side, seed)."""
    if schedule is not None and (schedule.n != n or schedule.ell != side):
        warnings.warn(
            f"schedule (n={schedule.n}, ell={schedule.ell:.4g}) does not match the "
            f"trial (n={n}, side={side:.4g})",
            stacklevel=2,
        )
    t0 = time.perf_counter()
    square = SquareRegion(side)
    pts = sample_points(n, square, seed)
    g = build_udg(pts, square, seed=seed)
    cds = prune(g)
    report = verify_cds(g, cds)
    millis = (time.perf_counter() - t0) * 1000.0
    return TrialResult(
        n=n,
        side=side,
        seed=seed,
        cds_size=cds.size,
        pruned=n - cds.size,
        components_graph=report.components_graph,
        components_induced=report.components_induced,
        dominating=report.dominating,
        runtime_ms=millis,
    )


@dataclass(frozen=True)
class ScheduleSpec:
    """One sweep entry: n, the habitat rule, and the trial plan."""

    n: int
    ell_kind: str          # "sqrt" or "power"
    ell_value: float       # the constant c, or the exponent t
    alpha_profile: str
    trials: int
    seed: int

    def side(self) -> float:
        if self.ell_kind == "sqrt":
            return ell_sqrt(self.n, self.ell_value)
        if self.ell_kind == "power":
            return ell_power(self.n, self.ell_value)
        raise ValueError(f"unknown ell rule {self.ell_kind!r}")


@dataclass(frozen=True)
class SweepConfig:
    schedules: tuple[ScheduleSpec, ...]

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        if not isinstance(data, dict) or "schedules" not in data:
            raise ValueError("sweep config must be an object with a 'schedules' list")
        specs = []
        for pos, entry in enumerate(data["schedules"]):
            try:
                rule = entry["ell_rule"]
                spec = ScheduleSpec(
                    n=int(entry["n"]),
                    ell_kind=str(rule["kind"]),
                    ell_value=float(rule["value"]),
                    alpha_profile=str(entry.get("alpha_profile", "sqrt")),
                    trials=int(entry["trials"]),
                    seed=int(entry["seed"]),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"sweep config schedules[{pos}]: {exc}") from exc
            if spec.n < 1 or spec.trials < 0:
                raise ValueError(
                    f"sweep config schedules[{pos}]: need n >= 1 and trials >= 0"
                )
            if spec.ell_kind not in ("sqrt", "power"):
                raise ValueError(
                    f"sweep config schedules[{pos}]: unknown ell rule {spec.ell_kind!r}"
                )
            if spec.alpha_profile not in ("sqrt", "power"):
                raise ValueError(
                    f"sweep config schedules[{pos}]: unknown alpha profile "
                    f"{spec.alpha_profile!r}"
                )
            specs.append(spec)
        return cls(schedules=tuple(specs))


def _trial_args(config: SweepConfig):
    for spec in config.schedules:
        side = spec.side()
        for t in range(spec.trials):
            yield spec, t, derived_seed(spec.seed, t), side


def _run_spec_trial(args) -> tuple[TrialResult, int]:
    n, side, seed, trial = args
    res = run_trial(n, side, seed)
    return res, trial


def sweep(config: SweepConfig, parallel: int = 1, emit_timings: bool = False) -> list[dict]:
    """Run every configured trial and return one CSV row dict per trial.

    Rows are ordered by (schedule position, trial index) regardless of
    ``parallel``, and ``millis`` is 0 unless ``emit_timings`` is set, so
    output bytes are identical across parallelism settings and reruns.
    """
    jobs = [(spec.n, side, seed, t) for spec, t, seed, side in _trial_args(config)]
    if parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(_run_spec_trial, jobs, chunksize=1))
    else:
        results = [_run_spec_trial(j) for j in jobs]

    rows = []
    for (res, trial), (n, side, seed, _t) in zip(results, jobs):
        ell2 = side * side
        rows.append(
            {
                "schema_ver": CSV_SCHEMA_VERSION,
                "n": res.n,
                "side": res.side,
                "seed": res.seed,
                "trial": trial,
                "cds_size": res.cds_size,
                "U": res.pruned,
                "frac_pruned": res.pruned / res.n,
                "comp_g": res.components_graph,
                "comp_c": res.components_induced,
                "dominating": res.dominating,
                "cds_over_ell2": res.cds_size / ell2,
                "ge_ell2_over_4": res.cds_size >= ell2 / 4.0,
                "millis": round(res.runtime_ms, 3) if emit_timings else 0,
            }
        )
    return rows


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def sweep_rows_to_csv(rows: list[dict]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(_csv_cell(row[c]) for c in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def aggregate_rows(rows: list[dict]) -> list[dict]:
    """Per-(n, side) summary: mean CDS size, mean pruned fraction, the
    scaling ratio cds/ell^2, and how often the quarter-ell^2 floor held."""
    groups: dict[tuple[int, float], list[dict]] = {}
    for row in rows:
        groups.setdefault((row["n"], row["side"]), []).append(row)
    out = []
    for (n, side), grp in sorted(groups.items()):
        k = len(grp)
        out.append(
            {
                "n": n,
                "side": side,
                "trials": k,
                "mean_cds_size": sum(r["cds_size"] for r in grp) / k,
                "mean_frac_pruned": sum(r["frac_pruned"] for r in grp) / k,
                "mean_cds_over_ell2": sum(r["cds_over_ell2"] for r in grp) / k,
                "frac_ge_ell2_over_4": sum(r["ge_ell2_over_4"] for r in grp) / k,
                "all_dominating": all(r["dominating"] for r in grp),
            }
        )
    return out


@dataclass(frozen=True)
class PruneRateReport:
    window: tuple[int, int]
    eligible: int
    conditional_rate: float
    wilson_low: float
    wilson_high: float
    window_size: int
    unconditional_rate: float


def conditional_prune_rate(g, schedule: Schedule) -> PruneRateReport:
    """Pruning frequency among window vertices that are interior and
    concentrated, against the unconditional window rate.

    The window is the label range [alpha, n - alpha); raises when it is
    empty (which the sqrt profile produces at desk scale).
    """
    lo, hi = schedule.window_lo, schedule.window_hi
    if math.ceil(lo) >= hi:
        raise ValueError(
            f"empty label window [alpha, n-alpha) = [{lo:.4g}, {hi:.4g})"
        )
    stats = all_vertex_stats(g, schedule)
    kept = np.zeros(g.n, dtype=bool)
    kept[np.asarray(prune(g).members, dtype=np.int64) - 1] = True
    pruned = ~kept

    ids = np.arange(1, g.n + 1)
    in_window = (ids >= lo) & (ids < hi)
    eligible = in_window & stats.interior & stats.concentrated
    n_eligible = int(eligible.sum())
    if n_eligible == 0:
        raise ValueError("no interior+concentrated vertices in the label window")
    successes = int(pruned[eligible].sum())
    wl, wh = wilson_interval(successes, n_eligible)
    return PruneRateReport(
        window=(int(math.ceil(lo)), int(math.ceil(hi))),
        eligible=n_eligible,
        conditional_rate=successes / n_eligible,
        wilson_low=wl,
        wilson_high=wh,
        window_size=int(in_window.sum()),
        unconditional_rate=float(pruned[in_window].mean()),
    )


@dataclass(frozen=True)
class ConcentrationReport:
    checked: int
    vacuous: bool
    empirical_rate: float
    mean_bound: float
    ok: bool


def concentration_check(g, schedule: Schedule, slack: float = 0.05) -> ConcentrationReport:
    """Among interior window vertices whose Chebyshev-style floor
    1 - 16 ell^2/(n-i) - 16 ell^2/(i-1) is positive, compare the observed
    ``concentrated`` frequency with the mean floor minus ``slack``.

    The floor is negative everywhere at small n, in which case the check
    is vacuous and reported as such.
    """
    stats = all_vertex_stats(g, schedule)
    ids = np.arange(1, g.n + 1)
    ell2 = g.square.side**2
    with np.errstate(divide="ignore"):
        bound = 1.0 - 16.0 * ell2 / (g.n - ids) - 16.0 * ell2 / (ids - 1.0)
    eligible = (
        (ids >= schedule.window_lo)
        & (ids < schedule.window_hi)
        & stats.interior
        & (bound > 0.0)
    )
    n_el = int(eligible.sum())
    if n_el == 0:
        return ConcentrationReport(0, True, math.nan, math.nan, True)
    rate = float(stats.concentrated[eligible].mean())
    mean_bound = float(bound[eligible].mean())
    return ConcentrationReport(
        checked=n_el,
        vacuous=False,
        empirical_rate=rate,
        mean_bound=mean_bound,
        ok=rate >= mean_bound - slack,
    )
