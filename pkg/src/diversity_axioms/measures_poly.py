"""Polynomial-time diversity measures.

Distance-based measures accept a :class:`DistanceMatrix` (or a plain
array assumed valid); similarity-based ones accept a
:class:`SimilarityMatrix`.  All return a float; Energy returns ``-inf``
when the collection contains coinciding objects.
"""

import math

import numpy as np

from .core import DistanceMatrix, SimilarityMatrix, duplicate_classes
from .errors import InvalidOrder, NTooSmall
from .linalg import jacobi_eigenvalues

EIG_CLAMP = 1e-12
DET_CLAMP = 1e-12


def _dist(D, min_n=2):
    d = D.d if isinstance(D, DistanceMatrix) else np.asarray(D, dtype=float)
    if d.shape[0] < min_n:
        raise NTooSmall(d.shape[0], min_n)
    return d


def _sim(S):
    return S.s if isinstance(S, SimilarityMatrix) else np.asarray(S, dtype=float)


def _upper(d):
    return d[np.triu_indices(d.shape[0], 1)]


def _off_diagonal(d):
    n = d.shape[0]
    return np.where(np.eye(n, dtype=bool), np.nan, d)


def average(D):
    return float(np.mean(_upper(_dist(D))))


def sum_average(D):
    d = _dist(D)
    return float(np.sum(_upper(d)) / d.shape[0])


def diameter(D):
    return float(np.max(_upper(_dist(D))))


def sum_diameter(D):
    return float(np.sum(np.nanmax(_off_diagonal(_dist(D)), axis=1)))


def bottleneck(D):
    return float(np.min(_upper(_dist(D))))


def sum_bottleneck(D):
    return float(np.sum(np.nanmin(_off_diagonal(_dist(D)), axis=1)))


def energy(D, gamma=1.0):
    """Negative mean inverse power of the pairwise distances."""
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    u = _upper(_dist(D))
    if np.any(u == 0.0):
        return -math.inf
    return float(-np.mean(u ** -gamma))


def unique(D):
    d = _dist(D, min_n=1)
    return len(duplicate_classes(d)) / d.shape[0]


def unique_plus_bounded(D):
    """``unique(D) + 1 - exp(-average(D))``.

    Monotone and strictly rewarding distinct elements, yet discontinuous at
    every duplicate boundary (jump of ``1/n``).
    """
    return unique(D) - math.expm1(-average(D))


def sym_spectrum(S):
    """Eigenvalues of ``S / n``, clamped at zero, in descending order."""
    if isinstance(S, SimilarityMatrix):
        eig = S.spectrum()
        n = S.n
    else:
        s = _sim(S)
        n = s.shape[0]
        eig = jacobi_eigenvalues(s)
    lam = np.asarray(eig, dtype=float) / n
    lam = np.where(lam < EIG_CLAMP, 0.0, lam)
    return lam[::-1].copy()


def vendi_score(S):
    """Exponential of the Shannon entropy of the spectrum of ``S / n``."""
    lam = sym_spectrum(S)
    lam = lam[lam > 0.0]
    return float(np.exp(-np.sum(lam * np.log(lam))))


def dpp_det(S):
    s = _sim(S)
    n = s.shape[0]
    off = ~np.eye(n, dtype=bool)
    # a unit off-diagonal entry in a PSD unit-diagonal matrix forces two equal rows
    if np.any(s[off] == 1.0):
        return 0.0
    det = float(np.linalg.det(s))
    if -DET_CLAMP < det < 0.0:
        det = 0.0
    return det


def rke(S):
    s = _sim(S)
    return float(-np.log(np.mean(s * s)))


def species(S, q=2.0):
    if q < 0 or q == 1:
        raise InvalidOrder(q)
    row = np.sum(_sim(S), axis=1)
    return float(np.sum(row ** (q - 1.0)) ** (1.0 / (1.0 - q)))
