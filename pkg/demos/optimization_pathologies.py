"""Hill-climb sixteen points in the unit square under different measures.

Average piles the points onto the corners; Energy spreads them out.  The
final layouts are written as SVG files next to this script.
"""

from pathlib import Path

from diversity_axioms.catalog import get_measure
from diversity_axioms.optimize import SearchConfig, corner_mass, maximize, to_svg

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

for name in ("average", "energy", "sum_diameter"):
    cfg = SearchConfig(get_measure(name), "unit_square", n=16, iterations=10_000, restarts=2, seed=0)
    traj = maximize(cfg)
    print(
        f"{name:13s} value {traj.final_value:9.5f}  "
        f"corner mass {corner_mass(traj.final):.2f}  accepted steps {len(traj.values)}"
    )
    (out / f"{name}.svg").write_text(to_svg(traj.final))

print("SVG files in", out)
