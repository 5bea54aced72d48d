"""Recompute the reference numbers behind the bundled registry cases.

Run with ``python3 demos/reference_values.py``.
"""

import numpy as np

from diversity_axioms import measures_hard as mh
from diversity_axioms import measures_poly as mp
from diversity_axioms.registry import CASE_IDS, corner_config, dist, grid_config, registry_case

# Sixteen points: four on each corner of the unit square, against a 4x4 grid.
corners = dist(corner_config())
grid = dist(grid_config())
print("Average, corners:", mp.average(corners))
print("Average, grid:   ", mp.average(grid))

# Both layouts have the same diameter, so Diameter cannot tell them apart.
print("Diameter, corners vs grid:", mp.diameter(corners), mp.diameter(grid))

# The corner layout is full of duplicates; the two new measures notice.
print("MultiDimVolume, corners:", mh.multi_dim_volume(corners))
print("MultiDimVolume, grid:   ", mh.multi_dim_volume(grid))
print("IntegralMaxClique, corners:", mh.integral_max_clique(corners))
print("IntegralMaxClique, grid:   ", mh.integral_max_clique(grid))

# Every registry case at once
print()
for case_id in CASE_IDS:
    result = registry_case(case_id).check()
    status = "PASS" if result.passed else "FAIL"
    print(f"{case_id:24s} {status}")

# A quick look at the profile m_k for the grid
prof = mh.volume_profile(grid)
np.set_printoptions(precision=4, suppress=True)
print("\nlog m_k for k = 2..16 on the grid:")
print(prof.log_m)
