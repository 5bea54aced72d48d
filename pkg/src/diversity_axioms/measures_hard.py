"""Exact solvers for the NP-hard measures.

Everything here is exponential in the collection size and guarded by an
explicit ``n_max``: exceeding it raises :class:`InstanceTooLarge` instead of
falling back to a heuristic.

* ``circles``: largest subset with all pairwise distances strictly above ``t``.
* ``ham_div``: shortest Hamiltonian circuit (Held-Karp).
* ``multi_dim_volume``: sum over ``k`` of the largest product of pairwise
  distances within a ``k``-subset.
* ``integral_max_clique``: integral over ``t`` of the edge weight of the
  size-first, weight-second maximum clique of the graph ``d >= t``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import DistanceMatrix, validate_distance_matrix
from .errors import InstanceTooLarge, NoIntegerSolution, NTooSmall

N_MAX_CLIQUE = 24
N_MAX_HELD_KARP = 18


def _dist(D):
    return D if isinstance(D, DistanceMatrix) else DistanceMatrix(D)


def _check_size(n, n_max):
    if n > n_max:
        raise InstanceTooLarge(n, n_max)


@dataclass(frozen=True, eq=False)
class ThresholdGraph:
    adjacency: np.ndarray
    weights: np.ndarray
    threshold: float
    comparison: str = "non_strict"

    @property
    def n(self):
        return self.adjacency.shape[0]


def threshold_graph(D, t, comparison="non_strict"):
    """Graph on the elements with an edge where the distance passes ``t``.

    ``strict`` keeps pairs with ``d > t``, ``non_strict`` pairs with ``d >= t``.
    Edge weights are the distances themselves.
    """
    d = _dist(D).d
    if comparison == "strict":
        adj = d > t
    elif comparison == "non_strict":
        adj = d >= t
    else:
        raise ValueError(f"comparison must be 'strict' or 'non_strict', got {comparison!r}")
    adj = adj.copy()
    np.fill_diagonal(adj, False)
    return ThresholdGraph(adj, d, float(t), comparison)


@dataclass(frozen=True)
class CliqueSolution:
    members: tuple
    size: int
    total_weight: float


def clique_weight(weights, members):
    members = sorted(members)
    return math.fsum(float(weights[i, j]) for a, i in enumerate(members) for j in members[a + 1:])


def max_clique(g, n_max=N_MAX_CLIQUE):
    """Maximum-cardinality clique, ties broken by larger total edge weight.

    Remaining ties go to the lexicographically smallest member set: the
    search enumerates cliques in lexicographic order and only replaces the
    incumbent on a strict (size, weight) improvement.  Pruning uses a greedy
    colouring bound on the attainable size and, when only a size tie is
    reachable, a bound on the attainable weight.
    """
    n = g.n
    _check_size(n, n_max)
    if n == 0:
        return CliqueSolution((), 0, 0.0)
    adj = np.asarray(g.adjacency, dtype=bool)
    w = np.asarray(g.weights, dtype=float)
    wl = w.tolist()
    nbr = [sum(1 << int(j) for j in np.flatnonzero(adj[i])) for i in range(n)]

    best_members = [0]
    best_size = 1
    best_weight = 0.0

    def bits(mask):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def colour_bound(cand):
        colours = 0
        uncoloured = cand
        while uncoloured:
            colours += 1
            avail = uncoloured
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                uncoloured &= ~low
                avail &= ~nbr[v] & ~low
        return colours

    def weight_bound(clique, cand, r):
        verts = list(bits(cand))
        gains = []
        for v in verts:
            row = wl[v]
            g_v = sum(row[c] for c in clique)
            if r > 1:
                inner = sorted((row[u] for u in bits(cand & nbr[v])), reverse=True)
                g_v += 0.5 * sum(inner[: r - 1])
            gains.append(g_v)
        gains.sort(reverse=True)
        return sum(gains[:r])

    def expand(clique, weight, cand):
        nonlocal best_members, best_size, best_weight
        while cand:
            reach = len(clique) + colour_bound(cand)
            if reach < best_size:
                return
            if reach == best_size:
                r = best_size - len(clique)
                if weight + weight_bound(clique, cand, r) <= best_weight:
                    return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            row = wl[v]
            new_weight = weight + sum(row[c] for c in clique)
            new_clique = clique + [v]
            size = len(new_clique)
            if size > best_size or (size == best_size and new_weight > best_weight):
                best_members, best_size, best_weight = new_clique, size, new_weight
            sub = cand & nbr[v]
            if sub:
                expand(new_clique, new_weight, sub)

    expand([], 0.0, (1 << n) - 1)
    members = tuple(sorted(best_members))
    return CliqueSolution(members, len(members), clique_weight(w, members))


def circles(D, t=1.0, n_max=N_MAX_CLIQUE):
    """Size of the largest subset whose pairwise distances all exceed ``t``."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    D = _dist(D)
    _check_size(D.n, n_max)
    return float(max_clique(threshold_graph(D, t, "strict"), n_max).size)


def ham_div(D, n_max=N_MAX_HELD_KARP):
    """Length of the shortest Hamiltonian circuit (Held-Karp dynamic programme)."""
    d = _dist(D).d
    n = d.shape[0]
    if n < 3:
        raise NTooSmall(n, 3)
    _check_size(n, n_max)
    # element 0 is the fixed start; subsets range over elements 1..n-1
    m = n - 1
    sub = d[1:, 1:]
    full = 1 << m
    masks = np.arange(full)
    pop = np.zeros(full, dtype=np.int8)
    for b in range(m):
        pop += ((masks >> b) & 1).astype(np.int8)
    dp = np.full((full, m), np.inf)
    parent = np.full((full, m), -1, dtype=np.int8)
    for j in range(m):
        dp[1 << j, j] = d[0, j + 1]
    for size in range(2, m + 1):
        layer = masks[pop == size]
        for j in range(m):
            sel = layer[(layer >> j) & 1 == 1]
            cand = dp[sel ^ (1 << j)] + sub[:, j]
            best = np.argmin(cand, axis=1)
            dp[sel, j] = cand[np.arange(len(sel)), best]
            parent[sel, j] = best
    # walk the optimal tour back and add its edges exactly once more
    j = int(np.argmin(dp[full - 1] + d[1:, 0]))
    mask = full - 1
    tour = []
    while j >= 0:
        tour.append(j + 1)
        mask, j = mask ^ (1 << j), int(parent[mask, j])
    tour = [0] + tour[::-1]
    return math.fsum(d[tour[i], tour[(i + 1) % n]] for i in range(n))


@dataclass(frozen=True, eq=False)
class VolumeProfile:
    """Largest ``k``-subset distance products ``m_k`` for ``k = 2..n``.

    ``log_m[k - 2]`` is ``log m_k`` (``-inf`` when every ``k``-subset
    contains coinciding elements); ``members[k - 2]`` is a maximising subset
    or ``None``.
    """

    log_m: np.ndarray
    members: tuple
    m: np.ndarray

    @property
    def ks(self):
        return np.arange(2, len(self.log_m) + 2)


def _subset_log_sums(L):
    """``log``-product of pairwise entries for every subset (bit-indexed)."""
    c = L.shape[0]
    logsum = np.zeros(1)
    pop = np.zeros(1, dtype=np.int8)
    for h in range(c):
        row = np.zeros(1)
        for j in range(h):
            row = np.concatenate([row, row + L[h, j]])
        logsum = np.concatenate([logsum, logsum + row])
        pop = np.concatenate([pop, pop + np.int8(1)])
    return logsum, pop


def volume_profile(D, n_max=N_MAX_CLIQUE):
    """Exact ``m_k`` for every ``k``.

    Any subset containing two coinciding elements has product zero, so the
    search runs over one representative per duplicate class; ``m_k = 0`` for
    ``k`` beyond the number of classes.  Maximisation happens in the log
    domain; the reported ``m`` is the direct product over the maximiser.
    """
    D = _dist(D)
    n = D.n
    _check_size(n, n_max)
    reps = D.classes.representatives()
    c = len(reps)
    log_m = np.full(max(n - 1, 0), -np.inf)
    members = [None] * max(n - 1, 0)
    m = np.zeros(max(n - 1, 0))
    if c >= 2:
        sub = D.d[np.ix_(reps, reps)]
        with np.errstate(divide="ignore"):
            L = np.log(sub)
        logsum, pop = _subset_log_sums(L)
        for k in range(2, c + 1):
            idx = np.flatnonzero(pop == k)
            best = idx[np.argmax(logsum[idx])]
            chosen = tuple(reps[b] for b in range(c) if (best >> b) & 1)
            log_m[k - 2] = logsum[best]
            members[k - 2] = chosen
            prod = 1.0
            for a, i in enumerate(chosen):
                for j in chosen[a + 1:]:
                    prod *= D.d[i, j]
            m[k - 2] = prod
    return VolumeProfile(log_m, tuple(members), m)


def multi_dim_volume(D, n_max=N_MAX_CLIQUE):
    return math.fsum(volume_profile(D, n_max).m)


def multi_dim_volume_normalized(D, n_max=N_MAX_CLIQUE):
    """Sum of ``m_k ** (2 / (k (k - 1)))``: the geometric-mean variant."""
    prof = volume_profile(D, n_max)
    terms = []
    for k, log_mk, mk in zip(prof.ks, prof.log_m, prof.m):
        if not np.isfinite(log_mk):
            continue
        power = 2.0 / (k * (k - 1))
        # the direct product is exact enough unless it under- or overflowed
        terms.append(mk**power if 0.0 < mk < np.inf else math.exp(log_mk * power))
    return math.fsum(terms)


def clique_weight_profile(D, n_max=N_MAX_CLIQUE):
    """Breakpoints ``v_1 < ... < v_m`` and ``w_t`` evaluated at each of them.

    ``w_t`` is constant on ``(v_{i-1}, v_i]`` because the graph ``d >= t``
    only changes when ``t`` passes a distance value.
    """
    D = _dist(D)
    _check_size(D.n, n_max)
    u = D.d[np.triu_indices(D.n, 1)]
    values = np.unique(u[u > 0])
    weights = np.zeros(len(values))
    for i, v in enumerate(values):
        sol = max_clique(threshold_graph(D, v, "non_strict"), n_max)
        if sol.size < 2:
            break
        weights[i] = sol.total_weight
    return values, weights


def integral_max_clique(D, n_max=N_MAX_CLIQUE):
    values, weights = clique_weight_profile(D, n_max)
    widths = np.diff(np.concatenate([[0.0], values]))
    return math.fsum(widths * weights)


def reduction_instance(adjacency, scheme, t=1.0):
    """Distance matrix encoding an unweighted graph.

    ``mdv`` / ``imc``: 3 for edges, 2 for non-edges.  ``circles``: ``1.1 t``
    for edges and ``0.9 t`` for non-edges, so edges pass the strict test
    ``d > t``.
    """
    adj = np.asarray(adjacency, dtype=bool)
    if scheme in ("mdv", "imc"):
        d = np.where(adj, 3.0, 2.0)
    elif scheme == "circles":
        if not t > 0:
            raise ValueError("circles reduction needs t > 0")
        d = np.where(adj, 1.1 * t, 0.9 * t)
    else:
        raise ValueError(f"unknown reduction scheme {scheme!r}")
    np.fill_diagonal(d, 0.0)
    return validate_distance_matrix(d)


def recover_clique_size(div_value, D, scheme="imc", tol=1e-6):
    """Invert ``div = 2 * sum(d) + 3 s (s - 1) / 2`` for the clique size ``s``."""
    if scheme != "imc":
        raise ValueError("only the imc scheme is invertible from a single value")
    d = _dist(D).d
    total = float(np.sum(d[np.triu_indices(d.shape[0], 1)]))
    pairs = (div_value - 2.0 * total) / 3.0
    disc = 1.0 + 8.0 * pairs
    if disc < -tol:
        raise NoIntegerSolution(f"negative discriminant for div={div_value!r}")
    s = (1.0 + math.sqrt(max(disc, 0.0))) / 2.0
    s_int = round(s)
    if s_int < 1 or abs(s - s_int) > tol:
        raise NoIntegerSolution(f"clique size {s!r} is not an integer")
    return int(s_int)


def clique_size_from_volume_profile(profile, rtol=1e-9):
    """Largest ``k`` with ``m_k = 3 ** (k (k - 1) / 2)``, compared in logs.

    Applies to matrices built by ``reduction_instance(g, "mdv")``; returns 1
    for an edgeless graph.
    """
    best = 1
    log3 = math.log(3.0)
    for k, log_mk in zip(profile.ks, profile.log_m):
        target = k * (k - 1) / 2 * log3
        if np.isfinite(log_mk) and abs(log_mk - target) <= rtol * target:
            best = int(k)
    return best
