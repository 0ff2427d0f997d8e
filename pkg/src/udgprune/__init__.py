"""Rule 2 connected-dominating-set pruning on random unit disk graphs.

Subpackages: `geometry` (disk-coverage areas, sector frames, Monte Carlo
oracle), `rgg` (random points and the unit disk graph), `rule2` (the
pruning rule, its brute-force oracle, CDS verification),
`local_coverage` (the colored-sample two-disk coverage experiment),
`harness` (schedules, trials, sweeps), `cli` (the command-line tool).
"""

from .geometry import (
    AreaEstimate,
    Point2D,
    SectorFrame,
    SquareRegion,
    lens_area,
    mc_area_oracle,
    omitted_area,
    truncated_disk_area,
)
from .rgg import UnitDiskGraph, build_udg, components, ell_power, ell_sqrt, sample_points
from .rule2 import GatewaySet, brute_force_prune, prune, verify_cds

__version__ = "0.1.0"

__all__ = [
    "AreaEstimate",
    "Point2D",
    "SectorFrame",
    "SquareRegion",
    "lens_area",
    "mc_area_oracle",
    "omitted_area",
    "truncated_disk_area",
    "UnitDiskGraph",
    "build_udg",
    "components",
    "ell_power",
    "ell_sqrt",
    "sample_points",
    "GatewaySet",
    "brute_force_prune",
    "prune",
    "verify_cds",
    "__version__",
]
