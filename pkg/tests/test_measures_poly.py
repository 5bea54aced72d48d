import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diversity_axioms import measures_poly as mp
from diversity_axioms.core import PointConfiguration, cosine_similarity_from_angles
from diversity_axioms.errors import InvalidOrder, NTooSmall
from diversity_axioms.registry import DPP_S, DPP_S_HAT, RKE_UNIQ, VENDI_MONO, VENDI_UNIQ, sim

TRIPLE = np.array([[0, 1, 2], [1, 0, 3], [2, 3, 0]], dtype=float)
DUP = np.array([[0, 0, 1], [0, 0, 1], [1, 1, 0]], dtype=float)


class TestDistanceMeasures:
    def test_hand_values(self):
        assert mp.average(TRIPLE) == 2.0
        assert mp.sum_average(TRIPLE) == 2.0
        assert mp.diameter(TRIPLE) == 3.0
        assert mp.sum_diameter(TRIPLE) == 2 + 3 + 3
        assert mp.bottleneck(TRIPLE) == 1.0
        assert mp.sum_bottleneck(TRIPLE) == 1 + 1 + 2
        assert mp.energy(TRIPLE) == pytest.approx(-(1 + 1 / 2 + 1 / 3) / 3)
        assert mp.energy(TRIPLE, gamma=2.0) == pytest.approx(-(1 + 1 / 4 + 1 / 9) / 3)
        assert mp.unique(TRIPLE) == 1.0

    def test_two_points(self):
        d = np.array([[0, 1.0], [1.0, 0]])
        assert mp.average(d) == 1.0

    def test_duplicates(self):
        assert mp.energy(DUP) == -math.inf
        assert mp.bottleneck(DUP) == 0.0
        assert mp.unique(DUP) == pytest.approx(2 / 3)

    def test_unique_plus_bounded_jump(self):
        # n = 2: splitting the duplicate adds 1/n = 1/2 to the Unique part
        for d in (1e-3, 1e-6, 1e-9):
            close = np.array([[0, d], [d, 0]])
            assert mp.unique_plus_bounded(close) == pytest.approx(1.0, abs=2 * d)
        assert mp.unique_plus_bounded(np.zeros((2, 2))) == 0.5

    def test_energy_gamma(self):
        with pytest.raises(ValueError):
            mp.energy(TRIPLE, gamma=0.0)

    def test_too_small(self):
        with pytest.raises(NTooSmall):
            mp.average(np.zeros((1, 1)))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 7), st.integers(0, 2**31 - 1))
    def test_permutation_invariance(self, n, seed):
        rng = np.random.default_rng(seed)
        pts = rng.random((n, 2))
        d = np.hypot(*(pts[:, None] - pts[None]).transpose(2, 0, 1))
        perm = rng.permutation(n)
        dp = d[np.ix_(perm, perm)]
        for f in (mp.average, mp.sum_average, mp.diameter, mp.sum_diameter,
                  mp.bottleneck, mp.sum_bottleneck, mp.energy, mp.unique):
            assert f(dp) == pytest.approx(f(d), rel=1e-12)


class TestSimilarityMeasures:
    def test_identity_and_ones(self):
        n = 4
        assert mp.vendi_score(np.eye(n)) == pytest.approx(n)
        assert mp.vendi_score(np.ones((n, n))) == pytest.approx(1.0)
        assert mp.dpp_det(np.eye(n)) == 1.0
        assert mp.dpp_det(np.ones((n, n))) == 0.0
        assert mp.rke(np.eye(n)) == pytest.approx(math.log(n))
        assert mp.rke(np.ones((n, n))) == pytest.approx(0.0)

    def test_species_identity(self):
        # every row sums to 1, leaving n ** (1 / (1 - q))
        for q in (0.0, 0.5, 2.0, 3.0):
            assert mp.species(np.eye(5), q) == pytest.approx(5.0 ** (1 / (1 - q)))

    def test_species_order(self):
        with pytest.raises(InvalidOrder):
            mp.species(np.eye(2), 1.0)
        with pytest.raises(InvalidOrder):
            mp.species(np.eye(2), -0.5)

    def test_vendi_matches_numpy_entropy(self):
        rng = np.random.default_rng(0)
        angles = np.sort(rng.uniform(0, 1.2, size=6))
        S = cosine_similarity_from_angles(PointConfiguration("unit_circle", angles))
        lam = np.linalg.eigvalsh(S.s) / 6
        lam = lam[lam > 1e-12]
        assert mp.vendi_score(S) == pytest.approx(np.exp(-np.sum(lam * np.log(lam))), rel=1e-10)

    def test_dpp_matches_numpy(self):
        assert mp.dpp_det(DPP_S) == pytest.approx(np.linalg.det(DPP_S), abs=1e-15)

    def test_reference_values(self):
        a, b = VENDI_MONO
        assert mp.vendi_score(sim(a)) == pytest.approx(1.941, abs=5e-3)
        assert mp.vendi_score(sim(b)) == pytest.approx(1.916, abs=5e-3)
        a, b = VENDI_UNIQ
        assert mp.vendi_score(sim(a)) == pytest.approx(1.187, abs=5e-3)
        assert mp.vendi_score(sim(b)) == pytest.approx(1.233, abs=5e-3)
        assert mp.dpp_det(DPP_S) == pytest.approx(0.278, abs=1e-3)
        assert mp.dpp_det(DPP_S_HAT) == pytest.approx(0.312, abs=1e-3)
        a, b = RKE_UNIQ
        assert mp.rke(sim(a)) == pytest.approx(0.564, abs=5e-3)
        assert mp.rke(sim(b)) == pytest.approx(0.584, abs=5e-3)

    def test_permutation_invariance(self):
        S = sim(np.array([0.0, 0.3, 0.7, 1.2]))
        for perm in permutations(range(4)):
            p = list(perm)
            Sp = S.s[np.ix_(p, p)]
            assert mp.vendi_score(Sp) == pytest.approx(mp.vendi_score(S), rel=1e-10)
            assert mp.rke(Sp) == pytest.approx(mp.rke(S), rel=1e-12)
            assert mp.species(Sp) == pytest.approx(mp.species(S), rel=1e-12)

    def test_spectrum_clamped(self):
        lam = mp.sym_spectrum(np.ones((3, 3)))
        assert lam[0] == pytest.approx(1.0)
        assert np.all(lam[1:] == 0.0)
