"""Random inputs for the axiom falsifiers.

Every generator here returns inputs that pass validation.  Distance probes
work directly on matrices; similarity probes place angles on a circle arc
shorter than ``pi / 2`` and map them through the cosine kernel, so all
similarities stay positive and "increasing a distance" has a concrete
meaning.

Distances between distinct elements are drawn from ``[1, 4]`` (or from
points in a 4 x 4 box with separation at least 1).  Keeping them at unit
scale keeps products of many distances comparable in magnitude, which
is what makes strict floating-point comparisons meaningful for the
product-based measures.
"""

from dataclasses import dataclass

import numpy as np

from .core import (
    TWO_PI,
    DistanceMatrix,
    PointConfiguration,
    cosine_similarity_from_angles,
    validate_distance_matrix,
)

ARC_START = 0.5
MAX_ARC = np.pi / 2 - 0.1
EPS_RANGE = (0.05, 1.0)
ANGLE_EPS_RANGE = (0.02, 0.1)
DIST_RANGE = (1.0, 4.0)
BOX = 4.0
MIN_SEPARATION = 1.0


def cosine_kernel(angles):
    angles = np.mod(np.asarray(angles, dtype=float), TWO_PI)
    return cosine_similarity_from_angles(PointConfiguration("unit_circle", angles)).s


@dataclass(frozen=True, eq=False)
class ProbePair:
    """Two inputs ``A`` and ``B`` for which an axiom demands ``f(A) > f(B)``.

    ``a`` and ``b`` are the matrices handed to the measure (distances or
    similarities).  ``angles_a`` / ``angles_b`` record the circle layout when
    the similarities came through the cosine kernel.
    """

    a: np.ndarray
    b: np.ndarray
    source: str
    kernel: str | None = None
    angles_a: np.ndarray | None = None
    angles_b: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class ContinuityProbe:
    """A base input and a direction; ``at(eps)`` walks along it.

    With ``on_angles`` the base and direction live in angle space and the
    result is a cosine similarity matrix; otherwise they are distance
    matrices and the result is ``base + eps * direction``.
    """

    base: np.ndarray
    direction: np.ndarray
    source: str
    on_angles: bool = False

    def at(self, eps):
        x = self.base + eps * self.direction
        if self.on_angles:
            return cosine_kernel(x)
        return validate_distance_matrix(x).d

    def base_input(self):
        return self.at(0.0)


@dataclass(frozen=True, eq=False)
class PerturbationPlan:
    """Increments ``(i, j, eps)`` applied symmetrically to ``base``."""

    base: DistanceMatrix
    deltas: tuple

    def apply(self):
        d = np.array(self.base.d, copy=True)
        for i, j, eps in self.deltas:
            d[i, j] += eps
            d[j, i] += eps
        return validate_distance_matrix(d)


def random_labels(rng, n, dup_prob=0.5):
    """Class label per element; duplicates appear with probability ``dup_prob``."""
    if n == 1 or rng.random() >= dup_prob:
        return np.arange(n)
    c = int(rng.integers(1, n))
    labels = np.concatenate([np.arange(c), rng.integers(0, c, size=n - c)])
    return rng.permutation(labels)


def _separated_points(rng, count, existing=None, tries=10_000):
    pts = [] if existing is None else [np.asarray(p) for p in existing]
    start = len(pts)
    for _ in range(tries):
        if len(pts) - start == count:
            break
        p = rng.uniform(0.0, BOX, size=2)
        if all(np.hypot(*(p - q)) >= MIN_SEPARATION for q in pts):
            pts.append(p)
    if len(pts) - start != count:
        raise RuntimeError("could not place separated points")
    return np.array(pts[start:])


def class_distances(rng, c, geometry="abstract"):
    """Symmetric ``c x c`` matrix of distances between distinct classes."""
    if geometry == "abstract":
        m = rng.uniform(*DIST_RANGE, size=(c, c))
        m = np.triu(m, 1)
        m = m + m.T
        return m, None
    pts = _separated_points(rng, c)
    diff = pts[:, None, :] - pts[None, :, :]
    return np.hypot(diff[..., 0], diff[..., 1]), pts


def expand(class_d, labels):
    return class_d[np.ix_(labels, labels)]


def random_distance_matrix(rng, n, dup_prob=0.5, geometry=None):
    if geometry is None:
        geometry = "abstract" if rng.random() < 0.5 else "euclidean"
    labels = random_labels(rng, n, dup_prob)
    c = int(labels.max()) + 1
    cd, _ = class_distances(rng, c, geometry)
    return validate_distance_matrix(expand(cd, labels))


def _refine(rng, labels, split_prob=0.5):
    """Split some duplicate classes into sub-classes; returns new labels."""
    sub = labels.copy()
    nxt = int(labels.max()) + 1
    for c in np.unique(labels):
        members = np.flatnonzero(labels == c)
        if len(members) < 2 or rng.random() >= split_prob:
            continue
        k = int(rng.integers(1, len(members)))
        moved = rng.choice(members, size=k, replace=False)
        # moved elements may form one or several new sub-classes
        parts = rng.integers(0, int(rng.integers(1, k + 1)), size=k)
        for p in np.unique(parts):
            sub[moved[parts == p]] = nxt
            nxt += 1
    return sub


def random_perturbation(rng, D, pair_prob=0.3, split_prob=0.5):
    """A valid upward perturbation of ``D``.

    Increments are chosen per pair of sub-classes and applied to every
    element pair across them, so the result keeps the duplicate conditions.
    Splitting a class forces a positive increment between the parts.
    """
    labels = D.classes.labels(D.n)
    sub = _refine(rng, labels, split_prob)
    if sub.max() == 0:
        # a single class has no pair to push apart, so it must split
        sub = _refine(rng, labels, 1.0)
    groups = np.unique(sub)
    origin = {int(g): int(labels[np.flatnonzero(sub == g)[0]]) for g in groups}
    chosen = {}
    pairs = [(int(a), int(b)) for ai, a in enumerate(groups) for b in groups[ai + 1:]]
    for a, b in pairs:
        if origin[a] == origin[b] or rng.random() < pair_prob:
            chosen[(a, b)] = float(rng.uniform(*EPS_RANGE))
    if not chosen and pairs:
        a, b = pairs[int(rng.integers(len(pairs)))]
        chosen[(a, b)] = float(rng.uniform(*EPS_RANGE))
    deltas = []
    for i in range(D.n):
        for j in range(i + 1, D.n):
            key = (min(sub[i], sub[j]), max(sub[i], sub[j]))
            if key in chosen:
                deltas.append((i, j, chosen[key]))
    return PerturbationPlan(D, tuple(deltas))


def monotonicity_pair_distance(rng, n):
    B = random_distance_matrix(rng, n)
    A = random_perturbation(rng, B).apply()
    return ProbePair(A.d, B.d, "random")


def uniqueness_pair_distance(rng, n):
    """``B``: element 0 duplicates element 1.  ``A``: element 0 is fresh."""
    geometry = "abstract" if rng.random() < 0.5 else "euclidean"
    rest = random_labels(rng, n - 1)
    c = int(rest.max()) + 1
    cd, pts = class_distances(rng, c, geometry)
    b_labels = np.concatenate([[rest[0]], rest])
    B = expand(cd, b_labels)
    big = np.zeros((c + 1, c + 1))
    big[:c, :c] = cd
    if pts is None:
        fresh = rng.uniform(*DIST_RANGE, size=c)
    else:
        p = _separated_points(rng, 1, existing=pts)[0]
        fresh = np.hypot(*(pts - p).T)
    big[c, :c] = big[:c, c] = fresh
    A = expand(big, np.concatenate([[c], rest]))
    perm = rng.permutation(n)
    A = validate_distance_matrix(A[np.ix_(perm, perm)]).d
    B = validate_distance_matrix(B[np.ix_(perm, perm)]).d
    return ProbePair(A, B, "random")


def random_arc_angles(rng, n, labels=None):
    if labels is None:
        labels = random_labels(rng, n)
    c = int(labels.max()) + 1
    arc = rng.uniform(0.3, MAX_ARC - ANGLE_EPS_RANGE[1])
    class_angles = ARC_START + rng.uniform(0.0, arc, size=c)
    return class_angles[labels]


def monotonicity_pair_angles(rng, n):
    """Shift an extreme block of the sorted angles outward.

    Distances inside the block and inside the rest are unchanged; every
    distance across grows by the shift.  Cutting through a group of equal
    angles splits those duplicates.
    """
    b = random_arc_angles(rng, n)
    order = np.lexsort((np.arange(n), b))
    cut = int(rng.integers(1, n))
    eps = float(rng.uniform(*ANGLE_EPS_RANGE))
    a = b.copy()
    if rng.random() < 0.5:
        a[order[cut:]] += eps
    else:
        a[order[:cut]] -= eps
    return ProbePair(cosine_kernel(a), cosine_kernel(b), "random", "cosine", a, b)


def uniqueness_pair_angles(rng, n):
    rest = random_arc_angles(rng, n - 1)
    lo, hi = ARC_START, ARC_START + MAX_ARC
    while True:
        fresh = rng.uniform(lo, hi)
        if np.all(np.abs(rest - fresh) > 1e-3):
            break
    b = np.concatenate([[rest[0]], rest])
    a = np.concatenate([[fresh], rest])
    perm = rng.permutation(n)
    a, b = a[perm], b[perm]
    return ProbePair(cosine_kernel(a), cosine_kernel(b), "random", "cosine", a, b)


def continuity_probe_distance(rng, D, source="random"):
    """Direction from ``D`` that stays valid for every step ``eps <= 1/2``.

    Sub-classes produced by splitting drift apart at a positive rate; other
    class pairs move by a random rate bounded by the smallest positive
    distance.
    """
    labels = D.classes.labels(D.n)
    sub = _refine(rng, labels, split_prob=0.7)
    u = D.d[np.triu_indices(D.n, 1)]
    scale = float(np.min(u[u > 0])) if np.any(u > 0) else 1.0
    groups = np.unique(sub)
    rate = {}
    for ai, a in enumerate(groups):
        for b in groups[ai + 1:]:
            same = labels[sub == a][0] == labels[sub == b][0]
            rate[(a, b)] = rng.uniform(0.5, 1.0) if same else scale * rng.uniform(-1.0, 1.0)
    delta = np.zeros_like(D.d)
    for i in range(D.n):
        for j in range(i + 1, D.n):
            if sub[i] != sub[j]:
                key = (min(sub[i], sub[j]), max(sub[i], sub[j]))
                delta[i, j] = delta[j, i] = rate[key]
    return ContinuityProbe(np.array(D.d), delta, source)


def continuity_probe_angles(rng, angles, source="random"):
    labels = DistanceMatrix(np.abs(angles[:, None] - angles[None, :])).classes.labels(len(angles))
    sub = _refine(rng, labels, split_prob=0.7)
    velocity = rng.uniform(-1.0, 1.0, size=int(sub.max()) + 1)
    return ContinuityProbe(np.asarray(angles, dtype=float), velocity[sub], source, on_angles=True)


def with_boundary_distance(rng, D, value):
    """Copy of ``D`` where one pair of distinct classes sits at exactly ``value``."""
    labels = D.classes.labels(D.n)
    c = int(labels.max()) + 1
    if c < 2:
        return D
    a, b = rng.choice(c, size=2, replace=False)
    d = np.array(D.d, copy=True)
    mask = np.outer(labels == a, labels == b) | np.outer(labels == b, labels == a)
    d[mask] = value
    return validate_distance_matrix(d)
