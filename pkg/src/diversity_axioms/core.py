"""Validated input types and the builders that produce them.

A collection of ``n`` (possibly repeated) objects is described by its
pairwise distance matrix.  Valid matrices satisfy three conditions:

1. ``d[i, j] >= 0`` and ``d[i, i] == 0``;
2. if ``d[i, j] == 0`` then ``d[i, k] == d[j, k]`` for every ``k``;
3. ``d[i, j] == d[j, i]``.

The triangle inequality is intentionally not required.  Zero distance is
an equivalence relation under these conditions and its classes are the
groups of coinciding objects (see :func:`duplicate_classes`).

Instances are treated as immutable; the wrapped arrays are marked
read-only.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    AsymmetricEntry,
    DiagonalNotOne,
    InconsistentDuplicate,
    InvalidPoints,
    NegativeEntry,
    NotPSD,
    NotSquare,
)
from .linalg import jacobi_eigenvalues

PSD_EPS = 1e-9

SPACES = {"unit_square": 2, "unit_circle": 1, "unit_segment": 1}
TWO_PI = 2.0 * np.pi


def _frozen(a):
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Pairwise distances of a collection.

    Constructing this class directly skips validation; use
    :func:`validate_distance_matrix` for untrusted input.
    """

    d: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "d", _frozen(self.d))

    @property
    def n(self):
        return self.d.shape[0]

    @cached_property
    def classes(self):
        return duplicate_classes(self)

    def has_duplicates(self):
        return len(self.classes) < self.n

    def permuted(self, perm):
        perm = np.asarray(perm)
        return DistanceMatrix(self.d[np.ix_(perm, perm)])


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """Symmetric PSD similarity matrix with unit diagonal.

    ``eigenvalues`` holds the ascending spectrum of ``s`` computed during
    validation, or ``None`` for trusted construction.
    """

    s: np.ndarray
    eigenvalues: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "s", _frozen(self.s))
        if self.eigenvalues is not None:
            object.__setattr__(self, "eigenvalues", _frozen(self.eigenvalues))

    @property
    def n(self):
        return self.s.shape[0]

    def spectrum(self):
        if self.eigenvalues is not None:
            return self.eigenvalues
        return jacobi_eigenvalues(self.s)


@dataclass(frozen=True, eq=False)
class PointConfiguration:
    """``n`` points in one of the bounded model spaces.

    ``unit_square`` points are ``(x, y)`` in ``[0, 1]^2``, ``unit_segment``
    points are scalars in ``[0, 1]`` and ``unit_circle`` points are angles in
    ``[0, 2*pi)``.  ``points`` is always stored with shape ``(n, dim)``.
    """

    space: str
    points: np.ndarray = field(default_factory=lambda: np.zeros((0, 1)))

    def __post_init__(self):
        if self.space not in SPACES:
            raise InvalidPoints(f"unknown space {self.space!r}; expected one of {sorted(SPACES)}")
        dim = SPACES[self.space]
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1) if dim == 1 else pts.reshape(1, -1)
        if pts.ndim != 2 or pts.shape[1] != dim:
            raise InvalidPoints(f"{self.space} points need {dim} coordinate(s), got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise InvalidPoints("point coordinates must be finite")
        if self.space == "unit_circle":
            if np.any(pts < 0.0) or np.any(pts >= TWO_PI):
                raise InvalidPoints("unit_circle angles must lie in [0, 2*pi)")
        elif np.any(pts < 0.0) or np.any(pts > 1.0):
            raise InvalidPoints(f"{self.space} coordinates must lie in [0, 1]")
        object.__setattr__(self, "points", _frozen(pts))

    @property
    def n(self):
        return self.points.shape[0]

    def to_json(self):
        return {"space": self.space, "points": self.points.tolist()}


@dataclass(frozen=True)
class DuplicateClasses:
    """Partition of ``range(n)`` into groups of coinciding elements.

    Classes are sorted by their smallest member, members ascending.
    """

    classes: tuple

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def labels(self, n=None):
        n = sum(len(c) for c in self.classes) if n is None else n
        out = np.empty(n, dtype=int)
        for label, members in enumerate(self.classes):
            out[list(members)] = label
        return out

    def representatives(self):
        return [members[0] for members in self.classes]


def _square(raw):
    if isinstance(raw, DistanceMatrix):
        raw = raw.d
    elif isinstance(raw, SimilarityMatrix):
        raw = raw.s
    a = np.array(raw, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(a.shape)
    return a


def validate_distance_matrix(raw, zero_tol=0.0):
    """Check the three distance conditions and return a ``DistanceMatrix``.

    Entries with ``|d| <= zero_tol`` are snapped to exactly zero first; the
    default of 0 means only exact zeros mark coinciding objects.  The
    diagonal is forced to zero after the nonnegativity check.
    """
    if zero_tol < 0:
        raise ValueError("zero_tol must be nonnegative")
    d = _square(raw)
    if not np.all(np.isfinite(d)):
        bad = np.argwhere(~np.isfinite(d))[0]
        raise NegativeEntry(int(bad[0]), int(bad[1]), float(d[tuple(bad)]))
    if zero_tol > 0:
        d[np.abs(d) <= zero_tol] = 0.0
    neg = np.argwhere(d < 0)
    if len(neg):
        i, j = map(int, neg[0])
        raise NegativeEntry(i, j, float(d[i, j]))
    np.fill_diagonal(d, 0.0)
    asym = np.argwhere(d != d.T)
    if len(asym):
        i, j = map(int, asym[0])
        raise AsymmetricEntry(i, j)
    n = d.shape[0]
    zero = d == 0.0
    for i in range(n):
        for j in np.flatnonzero(zero[i, i + 1:]) + i + 1:
            diff = np.flatnonzero(d[i] != d[j])
            if len(diff):
                raise InconsistentDuplicate(i, int(j), int(diff[0]))
    return DistanceMatrix(d)


def validate_similarity_matrix(raw, eps_psd=PSD_EPS):
    """Check symmetry, unit diagonal and positive semi-definiteness."""
    s = _square(raw)
    diag = np.flatnonzero(s.diagonal() != 1.0)
    if len(diag):
        i = int(diag[0])
        raise DiagonalNotOne(i, float(s[i, i]))
    asym = np.argwhere(s != s.T)
    if len(asym):
        i, j = map(int, asym[0])
        raise AsymmetricEntry(i, j)
    eig = jacobi_eigenvalues(s)
    if eig[0] < -eps_psd:
        raise NotPSD(eig[0])
    return SimilarityMatrix(s, eig)


def distances_from_points(cfg):
    """Pairwise distances in the configuration's space.

    Euclidean for the square, absolute difference on the segment and arc
    length (radians) on the circle.
    """
    p = cfg.points
    if cfg.space == "unit_square":
        diff = p[:, None, :] - p[None, :, :]
        d = np.hypot(diff[..., 0], diff[..., 1])
    else:
        d = np.abs(p[:, 0][:, None] - p[:, 0][None, :])
        if cfg.space == "unit_circle":
            d = np.minimum(d, TWO_PI - d)
    return validate_distance_matrix(d)


def cosine_similarity_from_angles(cfg):
    if cfg.space != "unit_circle":
        raise InvalidPoints("cosine similarity needs a unit_circle configuration")
    d = distances_from_points(cfg).d
    return validate_similarity_matrix(np.cos(d))


def rbf_similarity_from_distances(D, sigma):
    """Gaussian kernel ``exp(-d^2 / sigma^2)`` on a distance matrix."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    d = D.d if isinstance(D, DistanceMatrix) else np.asarray(D, dtype=float)
    return validate_similarity_matrix(np.exp(-(d / sigma) ** 2))


def duplicate_classes(D):
    d = D.d if isinstance(D, DistanceMatrix) else np.asarray(D, dtype=float)
    n = d.shape[0]
    label = np.full(n, -1)
    classes = []
    for i in range(n):
        if label[i] >= 0:
            continue
        members = np.flatnonzero(d[i] == 0.0)
        label[members] = len(classes)
        classes.append(tuple(int(m) for m in members))
    return DuplicateClasses(tuple(classes))
