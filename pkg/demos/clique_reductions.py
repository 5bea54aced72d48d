"""Encode graphs as distance matrices and read the clique number back.

Edges become distance 3 and non-edges distance 2.  IntegralMaxClique then
determines the clique size exactly, and so does the profile m_k behind
MultiDimVolume.
"""

from itertools import combinations

import numpy as np

from diversity_axioms import measures_hard as mh


def brute_force_clique(adj):
    n = adj.shape[0]
    for k in range(n, 1, -1):
        for sub in combinations(range(n), k):
            if all(adj[i, j] for i, j in combinations(sub, 2)):
                return k
    return 1


rng = np.random.default_rng(1)
for trial in range(5):
    n = int(rng.integers(5, 11))
    upper = np.triu(rng.random((n, n)) < 0.5, 1)
    adj = upper | upper.T
    D = mh.reduction_instance(adj, "imc")
    value = mh.integral_max_clique(D)
    from_imc = mh.recover_clique_size(value, D)
    from_mdv = mh.clique_size_from_volume_profile(mh.volume_profile(mh.reduction_instance(adj, "mdv")))
    print(f"n={n:2d}  IMC={value:7.2f}  clique via IMC {from_imc}, via m_k {from_mdv}, "
          f"brute force {brute_force_clique(adj)}")
