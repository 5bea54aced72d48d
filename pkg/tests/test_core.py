import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from diversity_axioms.core import (
    TWO_PI,
    DistanceMatrix,
    PointConfiguration,
    cosine_similarity_from_angles,
    distances_from_points,
    duplicate_classes,
    rbf_similarity_from_distances,
    validate_distance_matrix,
    validate_similarity_matrix,
)
from diversity_axioms.errors import (
    AsymmetricEntry,
    DiagonalNotOne,
    InconsistentDuplicate,
    InvalidPoints,
    NegativeEntry,
    NotPSD,
    NotSquare,
    NoConvergence,
    ValidationError,
)
from diversity_axioms.linalg import jacobi_eigenvalues


class TestValidateDistance:
    def test_accepts_valid(self):
        D = validate_distance_matrix([[0, 1, 2], [1, 0, 1.5], [2, 1.5, 0]])
        assert D.n == 3
        assert not D.has_duplicates()

    def test_not_square(self):
        with pytest.raises(NotSquare):
            validate_distance_matrix([[0, 1, 2], [1, 0, 1]])

    def test_negative(self):
        with pytest.raises(NegativeEntry) as info:
            validate_distance_matrix([[0, -1], [-1, 0]])
        assert (info.value.i, info.value.j) == (0, 1)

    def test_asymmetric(self):
        with pytest.raises(AsymmetricEntry):
            validate_distance_matrix([[0, 1], [2, 0]])

    def test_inconsistent_duplicate(self):
        # 0 and 1 coincide but sit at different distances from 2
        with pytest.raises(InconsistentDuplicate):
            validate_distance_matrix([[0, 0, 1], [0, 0, 2], [1, 2, 0]])

    def test_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            validate_distance_matrix([[0, -1], [-1, 0]])
        assert issubclass(NotSquare, ValidationError)

    def test_zero_tol_snaps_tiny_entries(self):
        raw = [[0, 1e-14, 1], [1e-14, 0, 1], [1, 1, 0]]
        assert not validate_distance_matrix(raw).has_duplicates()
        D = validate_distance_matrix(raw, zero_tol=1e-12)
        assert D.has_duplicates()
        assert D.d[0, 1] == 0.0

    def test_nonfinite_rejected(self):
        with pytest.raises(ValidationError):
            validate_distance_matrix([[0, np.inf], [np.inf, 0]])

    def test_matrix_is_read_only(self):
        D = validate_distance_matrix([[0, 1], [1, 0]])
        with pytest.raises(ValueError):
            D.d[0, 1] = 5.0


class TestDuplicateClasses:
    def test_groups(self):
        d = np.array([[0, 0, 1, 0], [0, 0, 1, 0], [1, 1, 0, 1], [0, 0, 1, 0]], dtype=float)
        classes = duplicate_classes(d)
        assert classes.classes == ((0, 1, 3), (2,))
        np.testing.assert_array_equal(classes.labels(4), [0, 0, 1, 0])
        assert classes.representatives() == [0, 2]

    def test_permuted_keeps_structure(self):
        D = validate_distance_matrix([[0, 0, 2], [0, 0, 2], [2, 2, 0]])
        P = D.permuted([2, 0, 1])
        assert P.d[1, 2] == 0.0
        assert len(P.classes) == 2


class TestSimilarity:
    def test_diagonal(self):
        with pytest.raises(DiagonalNotOne):
            validate_similarity_matrix([[1, 0.5], [0.5, 0.9]])

    def test_asymmetric(self):
        with pytest.raises(AsymmetricEntry):
            validate_similarity_matrix([[1, 0.5], [0.4, 1]])

    def test_not_psd(self):
        with pytest.raises(NotPSD) as info:
            validate_similarity_matrix([[1, 0.9, -0.9], [0.9, 1, 0.9], [-0.9, 0.9, 1]])
        assert info.value.min_eigenvalue < 0

    def test_spectrum_cached(self):
        S = validate_similarity_matrix([[1, 0.5], [0.5, 1]])
        np.testing.assert_allclose(S.spectrum(), [0.5, 1.5], atol=1e-14)

    def test_cosine_from_angles(self):
        cfg = PointConfiguration("unit_circle", [0.0, np.pi / 3])
        S = cosine_similarity_from_angles(cfg)
        np.testing.assert_allclose(S.s, [[1, 0.5], [0.5, 1]], atol=1e-15)

    def test_cosine_needs_circle(self):
        with pytest.raises(InvalidPoints):
            cosine_similarity_from_angles(PointConfiguration("unit_segment", [0.1, 0.2]))

    def test_rbf(self):
        D = validate_distance_matrix([[0, 1], [1, 0]])
        S = rbf_similarity_from_distances(D, 2.0)
        assert S.s[0, 1] == pytest.approx(np.exp(-0.25))


class TestPoints:
    def test_square_distances(self):
        cfg = PointConfiguration("unit_square", [[0, 0], [1, 1], [0, 1]])
        D = distances_from_points(cfg)
        np.testing.assert_allclose(D.d[0], [0, np.sqrt(2), 1])

    def test_circle_wraps(self):
        cfg = PointConfiguration("unit_circle", [0.1, TWO_PI - 0.1])
        assert distances_from_points(cfg).d[0, 1] == pytest.approx(0.2)

    def test_segment(self):
        cfg = PointConfiguration("unit_segment", [0.25, 1.0])
        assert distances_from_points(cfg).d[0, 1] == 0.75

    def test_coinciding_points_are_duplicates(self):
        cfg = PointConfiguration("unit_square", [[0.5, 0.5], [0.5, 0.5], [0, 0]])
        assert distances_from_points(cfg).has_duplicates()

    @pytest.mark.parametrize(
        "space, pts",
        [
            ("unit_square", [[0, 1.5]]),
            ("unit_square", [[0.1, 0.2, 0.3]]),
            ("unit_segment", [-0.1]),
            ("unit_circle", [TWO_PI]),
            ("unit_sphere", [0.0]),
            ("unit_square", [[np.nan, 0.0]]),
        ],
    )
    def test_invalid(self, space, pts):
        with pytest.raises(InvalidPoints):
            PointConfiguration(space, pts)

    def test_json_roundtrip_shape(self):
        cfg = PointConfiguration("unit_segment", [0.1, 0.2])
        assert cfg.to_json() == {"space": "unit_segment", "points": [[0.1], [0.2]]}


symmetric = st.integers(1, 9).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.floats(-5, 5, allow_nan=False, width=32))
)


class TestJacobi:
    @settings(max_examples=60, deadline=None)
    @given(symmetric)
    def test_matches_lapack(self, a):
        a = (a + a.T) / 2
        np.testing.assert_allclose(jacobi_eigenvalues(a), np.linalg.eigvalsh(a), atol=1e-10)

    def test_ascending_and_trace(self):
        rng = np.random.default_rng(3)
        b = rng.standard_normal((12, 12))
        a = b @ b.T
        lam = jacobi_eigenvalues(a)
        assert np.all(np.diff(lam) >= 0)
        assert lam.sum() == pytest.approx(np.trace(a))

    def test_sweep_limit(self):
        rng = np.random.default_rng(0)
        b = rng.standard_normal((10, 10))
        with pytest.raises(NoConvergence):
            jacobi_eigenvalues(b + b.T, max_sweeps=1)


class TestDirectConstruction:
    def test_skips_validation(self):
        # documented: only validate_* checks the conditions
        D = DistanceMatrix([[0, -1], [-1, 0]])
        assert D.d[0, 1] == -1
