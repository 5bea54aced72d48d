"""Search every measure for monotonicity, uniqueness and continuity violations.

A cross means a concrete counterexample was found and can be replayed; a
tick only means the probe budget ran out without one.
"""

import sys

from diversity_axioms.axioms import property_matrix, replay
from diversity_axioms.catalog import CORE_MEASURES, EXTRA_MEASURES, get_measure

budget = int(sys.argv[1]) if len(sys.argv) > 1 else 200
handles = [get_measure(name) for name in CORE_MEASURES + EXTRA_MEASURES]
pm = property_matrix(handles, budget=budget, seed=0)
print(pm.to_text())

print("\nmismatches against the bundled expectation:", pm.mismatches() or "none")

# Show one witness in full
v = pm.verdicts["diameter"]["monotonicity"]
print("\nDiameter monotonicity witness from", v.witness.source)
print("B =\n", v.witness.b)
print("A =\n", v.witness.a)
print("f(A) =", v.witness.value_a, " f(B) =", v.witness.value_b)
print("replays:", replay(get_measure("diameter"), v))
