#!/usr/bin/env python3
"""Scaling sweep: how much does Rule 2 prune as the network grows?

Runs seeded trials across a range of n with habitat side sqrt(n / ln n),
so the per-unit-area density grows like ln n.  Reports the pruned
fraction U/n, the retained CDS size against the quarter-side-squared
floor, and the ratio cds / side^2 that the open scaling conjecture is
about.

Run:  python demos/pruning_fraction_sweep.py
"""

from udgprune import harness as hz

config = hz.SweepConfig.from_dict(
    {
        "schedules": [
            {
                "n": n,
                "ell_rule": {"kind": "sqrt", "value": 1.0},
                "alpha_profile": "sqrt",
                "trials": 5,
                "seed": 1000 + n,
            }
            for n in (1000, 4000, 16000)
        ]
    }
)

print("running 15 trials (5 seeds x 3 sizes); this takes ~15 seconds...")
rows = hz.sweep(config, parallel=1)

print()
print(f"{'n':>7} {'side':>8} {'U/n':>8} {'cds':>8} {'cds/side^2':>11} {'>= side^2/4':>12}")
for agg in hz.aggregate_rows(rows):
    print(
        f"{agg['n']:>7} {agg['side']:>8.2f} {agg['mean_frac_pruned']:>8.4f} "
        f"{agg['mean_cds_size']:>8.1f} {agg['mean_cds_over_ell2']:>11.3f} "
        f"{agg['frac_ge_ell2_over_4']:>11.0%}"
    )

print("""
Reading the table:
 - U/n creeps up with n: denser neighborhoods make it easier to find two
   adjacent higher-ID coverers, so a larger fraction of vertices retires.
 - The retained set stays far above side^2 / 4, the known floor for the
   expected CDS size in this regime.
 - cds / side^2 is the quantity conjectured to stay Theta(1); watching it
   drift (or not) at larger n is exactly what the `sweep` subcommand's
   CSV output is for.
""")
