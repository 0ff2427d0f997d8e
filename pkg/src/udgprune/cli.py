"""Command-line front end.

Subcommands: geom-check (geometry self-test CSV), run-rule2 (one pruning
run as JSON), local-coverage (colored-sample trials as CSV + summary
JSON), sweep (trial CSV from a JSON config), verify (CDS check for a
graph file).  All randomness flows from explicit --seed flags and timing
fields are zero unless --emit-timings is given, so identical invocations
produce identical bytes.  Files are written atomically.

Exit codes: 0 success, 1 usage/validation error, 2 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import geometry as geo
from . import harness as hz
from . import local_coverage as lc
from . import rgg
from . import rule2
from .util import atomic_write_text, derived_seed, wilson_interval

__all__ = ["main"]


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        atomic_write_text(out, text)


# ---------------------------------------------------------------- geom-check

def _geom_rows(seed: int, configs: int, samples: int) -> list[tuple[str, float, float, bool]]:
    rng = np.random.default_rng(seed)
    rows: list[tuple[str, float, float, bool]] = []
    kind_tag = {"lens": 1, "triple": 2, "truncated": 3, "omitted": 4}

    def mc_z(kind: str) -> float:
        worst = 0.0
        for k in range(configs):
            if kind == "lens":
                d = float(rng.uniform(0.0, 2.2))
                exact = geo.lens_area(d)
                o, q = (0.0, 0.0), (d, 0.0)
                mo, mq = geo.disk_membership(o), geo.disk_membership(q)
                member = lambda xs, ys: mo(xs, ys) & mq(xs, ys)
                bounds = (-1.0, 1.0 + d, -1.0, 1.0)
            elif kind == "triple":
                o = rng.uniform(0.0, 1.0, 2)
                q = o + rng.uniform(-1.2, 1.2, 2)
                u = o + rng.uniform(-1.2, 1.2, 2)
                exact = geo.triple_disk_intersection_area(o, q, u)
                mo, mq, mu = map(geo.disk_membership, (o, q, u))
                member = lambda xs, ys: mo(xs, ys) & mq(xs, ys) & mu(xs, ys)
                bounds = (o[0] - 1, o[0] + 1, o[1] - 1, o[1] + 1)
            elif kind == "truncated":
                side = float(rng.uniform(2.0, 6.0))
                sq = geo.SquareRegion(side)
                o = rng.uniform(0.0, side, 2)
                exact = geo.truncated_disk_area(o, sq)
                mo = geo.disk_membership(o)
                member = mo
                bounds = (max(0, o[0] - 1), min(side, o[0] + 1), max(0, o[1] - 1), min(side, o[1] + 1))
            else:  # omitted
                o = rng.uniform(0.0, 1.0, 2)
                q = o + rng.uniform(-1.0, 1.0, 2)
                u = o + rng.uniform(-1.0, 1.0, 2)
                exact = geo.omitted_area(o, q, u)
                mo, mq, mu = map(geo.disk_membership, (o, q, u))
                member = lambda xs, ys: mo(xs, ys) & ~mq(xs, ys) & ~mu(xs, ys)
                bounds = (o[0] - 1, o[0] + 1, o[1] - 1, o[1] + 1)
            est = geo.mc_area_oracle(member, bounds, samples, seed=derived_seed(seed, kind_tag[kind], k))
            if est.std_error > 0:
                worst = max(worst, abs(exact - est.value) / est.std_error)
        return worst

    for kind in ("lens", "triple", "truncated", "omitted"):
        rows.append((f"{kind}_vs_oracle_max_z", mc_z(kind), 3.0, True))

    # closed-form identities for the two-points-on-a-circle lens term
    diff0 = max(
        abs(geo.on_circle_pair_lens(d, 0.0) - geo.lens_area(2.0 * d))
        for d in rng.uniform(0.01, 0.9, 20)
    )
    rows.append(("pair_lens_form_phi0_maxdiff", diff0, 1e-12, True))
    diffpi = max(abs(geo.on_circle_pair_lens(d, math.pi) - math.pi) for d in rng.uniform(0.01, 0.9, 20))
    rows.append(("pair_lens_form_phipi_maxdiff", diffpi, 1e-12, True))

    # radial monotonicity
    worst = 0.0
    for _ in range(200):
        o = rng.uniform(-1, 1, 2)
        ang = rng.uniform(0, 2 * math.pi, 2)
        rad = rng.uniform(0, 1, 2)
        q2 = o + rad[0] * np.array([math.cos(ang[0]), math.sin(ang[0])])
        u2 = o + rad[1] * np.array([math.cos(ang[1]), math.sin(ang[1])])
        t = rng.uniform(0, 1, 2)
        worst = max(worst, geo.omitted_area(o, o + t[0] * (q2 - o), o + t[1] * (u2 - o)) - geo.omitted_area(o, q2, u2))
    rows.append(("radial_monotonicity_max_violation", worst, 1e-9, True))

    # angular monotonicity
    worst = 0.0
    for _ in range(40):
        delta = float(rng.uniform(1e-3, 0.2))
        vals = [geo.omitted_area_at_angle((0.0, 0.0), delta, p) for p in np.sort(rng.uniform(0, math.pi, 16))]
        worst = max(worst, max(0.0, -min(np.diff(vals))))
    rows.append(("angular_monotonicity_max_violation", worst, 1e-9, True))

    # extreme-pair dominance within a sector pair
    worst = 0.0
    for _ in range(200):
        frame = geo.SectorFrame(geo.Point2D(0.0, 0.0), int(10 ** rng.uniform(3, 5)))
        i = int(rng.integers(0, frame.count))
        ext = geo.extreme_points(frame, i)
        r1, r2 = frame.delta * np.sqrt(rng.uniform(0, 1, 2))
        a1 = (i + rng.uniform(-0.5, 0.5)) * frame.theta
        a2 = (i + rng.uniform(-0.5, 0.5)) * frame.theta + math.pi
        q = (r1 * math.cos(a1), r1 * math.sin(a1))
        u = (r2 * math.cos(a2), r2 * math.sin(a2))
        worst = max(worst, geo.omitted_area((0, 0), q, u) - geo.omitted_area((0, 0), *ext))
    rows.append(("extreme_pair_max_violation", worst, 1e-9, True))

    # scaling of the extreme omitted area with the size parameter
    vals = []
    for b in (10**3, 10**4, 10**5, 10**6):
        frame = geo.SectorFrame(geo.Point2D(0.0, 0.0), b)
        ext = geo.extreme_points(frame, 0)
        vals.append(geo.omitted_area(frame.center, *ext) * b * math.log(b) ** 3)
    rows.append(("extreme_area_scaling_ratio", max(vals) / min(vals), 10.0, True))

    # chord geometry of circle-circle intersections
    worst = 0.0
    for _ in range(100):
        p = rng.uniform(-2, 2, 2)
        ang = float(rng.uniform(0, 2 * math.pi))
        d = float(rng.uniform(1e-3, 1.999))
        q = p + d * np.array([math.cos(ang), math.sin(ang)])
        a, b2 = geo.circle_intersection_points(p, q)
        mid_ab = ((a[0] + b2[0]) / 2, (a[1] + b2[1]) / 2)
        mid_pq = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
        worst = max(worst, geo.dist(mid_ab, mid_pq))
        worst = max(worst, abs((a[0] - b2[0]) * (p[0] - q[0]) + (a[1] - b2[1]) * (p[1] - q[1])))
    rows.append(("chord_midpoint_maxdiff", worst, 1e-12, True))

    # clipping can only shrink the omitted region
    violations = 0
    for k in range(50):
        side = float(rng.uniform(2.0, 4.0))
        sq = geo.SquareRegion(side)
        o = np.array([rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)])
        q = o + rng.uniform(-1, 1, 2)
        u = o + rng.uniform(-1, 1, 2)
        est = geo.truncated_omitted_area(o, q, u, sq, samples=max(10_000, samples // 10), seed=derived_seed(seed, 99, k))
        if est.value > geo.omitted_area(o, q, u) + 3.0 * est.std_error:
            violations += 1
    rows.append(("clipped_exceeds_full_count", float(violations), 0.0, True))

    return [(name, float(stat), bound, float(stat) <= bound) for name, stat, bound, _ in rows]


def _cmd_geom_check(args) -> int:
    rows = _geom_rows(args.seed, args.configs, args.samples)
    lines = ["check,statistic,bound,pass"]
    for name, stat, bound, ok in rows:
        lines.append(f"{name},{stat!r},{bound!r},{'true' if ok else 'false'}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if all(ok for *_, ok in rows) else 2


# ----------------------------------------------------------------- run-rule2

def _cmd_run_rule2(args) -> int:
    if args.graph is not None:
        g = rgg.load_graph(args.graph)
        n, side, seed = g.n, g.square.side, g.seed if g.seed is not None else 0
    else:
        if args.n is None or args.side is None or args.seed is None:
            raise ValueError("need --graph FILE or all of --n, --side, --seed")
        n, side, seed = args.n, args.side, args.seed
        square = geo.SquareRegion(side)
        g = rgg.build_udg(rgg.sample_points(n, square, seed), square, seed=seed)
    import time as _time

    t0 = _time.perf_counter()
    cds = rule2.prune(g)
    report = rule2.verify_cds(g, cds)
    millis = (_time.perf_counter() - t0) * 1000.0
    payload = {
        "n": n,
        "side": side,
        "seed": seed,
        "cds_size": cds.size,
        "pruned": n - cds.size,
        "dominating": report.dominating,
        "component_preserving": report.component_preserving,
        "millis": round(millis, 3) if args.emit_timings else 0,
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


# ------------------------------------------------------------- local-coverage

def _cmd_local_coverage(args) -> int:
    center = (args.ox, args.oy)
    square = geo.SquareRegion(args.side)
    if args.w < 0 or args.b < 1 or args.trials < 1:
        raise ValueError("need w >= 0, b >= 1, trials >= 1")
    lines = ["trial,tau,Z,Y,X_b,pair_found"]
    hits = 0
    tau_sum = 0
    z_sum = 0
    xb_sum = 0
    for t in range(args.trials):
        sample = lc.sample_colored(center, square, args.w, args.b, seed=derived_seed(args.seed, t))
        stats = lc.sector_stats(sample)
        xb = lc.x_b_indicator(sample, stats)
        found, _ = lc.blue_pair_dominates(sample)
        hits += found
        tau_sum += stats.tau
        z_sum += stats.core_blue
        xb_sum += xb
        lines.append(
            f"{t},{stats.tau},{stats.core_blue},{stats.first_match},{xb},{'true' if found else 'false'}"
        )
    _emit("\n".join(lines) + "\n", args.out)
    wl, wh = wilson_interval(hits, args.trials)
    summary = {
        "b": args.b,
        "w": args.w,
        "trials": args.trials,
        "seed": args.seed,
        "pair_dominates_rate": hits / args.trials,
        "pair_dominates_wilson95": [wl, wh],
        "mean_tau": tau_sum / args.trials,
        "mean_core_blue": z_sum / args.trials,
        "x_b_rate": xb_sum / args.trials,
    }
    sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return 0


# ----------------------------------------------------------------------- sweep

def _cmd_sweep(args) -> int:
    try:
        with open(args.config) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read config {args.config}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"config {args.config} is not valid JSON: line {exc.lineno}: {exc.msg}") from exc
    config = hz.SweepConfig.from_dict(data)
    parallel = args.parallel if args.parallel is not None else (os.cpu_count() or 1)
    rows = hz.sweep(config, parallel=parallel, emit_timings=args.emit_timings)
    _emit(hz.sweep_rows_to_csv(rows), args.out)
    sys.stdout.write(json.dumps({"aggregates": hz.aggregate_rows(rows)}, indent=2) + "\n")
    return 0


# ---------------------------------------------------------------------- verify

def _cmd_verify(args) -> int:
    g = rgg.load_graph(args.graph)
    if args.cds is not None:
        with open(args.cds) as fh:
            ids = [int(tok) for tok in fh.read().split()]
        cds = rule2.GatewaySet(members=tuple(sorted(set(ids))))
        source = "file"
    else:
        cds = rule2.prune(g)
        source = "rule2"
    report = rule2.verify_cds(g, cds)
    payload = {
        "n": g.n,
        "cds_source": source,
        "cds_size": cds.size,
        "dominating": report.dominating,
        "component_preserving": report.component_preserving,
        "components_graph": report.components_graph,
        "components_induced": report.components_induced,
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


# ------------------------------------------------------------------ arg parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="udgprune",
        description="Rule 2 pruning on random unit disk graphs, with coverage-geometry self checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("geom-check", help="run geometry self-tests, emit CSV of (check,statistic,bound,pass)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--configs", type=int, default=20, help="random configurations per oracle check")
    p.add_argument("--samples", type=int, default=200_000, help="Monte Carlo samples per configuration")
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.set_defaults(func=_cmd_geom_check)

    p = sub.add_parser("run-rule2", help="prune one graph and report JSON")
    p.add_argument("--graph", default=None, help="graph file (header 'n side seed', lines 'id x y')")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--side", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--emit-timings", action="store_true", help="fill millis with wall time (breaks byte reproducibility)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_run_rule2)

    p = sub.add_parser("local-coverage", help="colored-sample coverage trials: CSV rows + summary JSON")
    p.add_argument("--b", type=int, required=True, help="blue point count")
    p.add_argument("--w", type=int, required=True, help="white point count")
    p.add_argument("--ox", type=float, required=True)
    p.add_argument("--oy", type=float, required=True)
    p.add_argument("--side", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="per-trial CSV path (default stdout)")
    p.set_defaults(func=_cmd_local_coverage)

    p = sub.add_parser("sweep", help="run a JSON-configured trial sweep, emit fixed-schema CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--parallel", type=int, default=None, help="worker processes (default: cpu count; 1 = in-process)")
    p.add_argument("--emit-timings", action="store_true")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("verify", help="check a CDS (from file, or freshly pruned) against a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--cds", default=None, help="whitespace-separated vertex ids; default: prune the graph first")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors; remap
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
