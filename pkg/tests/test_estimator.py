import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from h2seg import HypercubeSegmentation


def blobs(rng, k_each=6, d=8):
    """Two well-separated binary blobs around antipodal prototypes."""
    proto = rng.integers(0, 2, size=d)
    a = np.tile(proto, (k_each, 1))
    b = np.tile(1 - proto, (k_each, 1))
    X = np.vstack([a, b])
    flip = rng.random(X.shape) < 0.1
    return np.where(flip, 1 - X, X), np.array([0] * k_each + [1] * k_each)


class TestSklearnApi:
    def test_get_set_params_and_clone(self):
        est = HypercubeSegmentation(method="local", seed=3, restarts=2)
        params = est.get_params()
        assert params["method"] == "local" and params["seed"] == 3
        cloned = clone(est)
        assert cloned.get_params() == params
        est.set_params(method="exact")
        assert est.method == "exact"

    def test_unfitted_predict_raises(self):
        with pytest.raises(NotFittedError):
            HypercubeSegmentation().predict(np.ones((2, 3), dtype=int))

    def test_fit_returns_self(self):
        X = np.array([[1, 1], [0, 0]])
        est = HypercubeSegmentation()
        assert est.fit(X) is est


class TestFitPredict:
    def test_separates_blobs(self):
        rng = np.random.default_rng(0)
        X, truth = blobs(rng)
        labels = HypercubeSegmentation(method="exact").fit_predict(X)
        # cluster indices may be swapped relative to the ground truth
        same = (labels == truth).mean()
        assert same in (0.0, 1.0) or same > 0.9 or same < 0.1

    def test_binary_and_sign_inputs_agree(self):
        rng = np.random.default_rng(1)
        X01, _ = blobs(rng)
        Xpm = X01 * 2 - 1
        a = HypercubeSegmentation(method="exact").fit(X01)
        b = HypercubeSegmentation(method="exact").fit(Xpm)
        assert np.array_equal(a.labels_, b.labels_)
        assert np.array_equal(a.cluster_centers_ * 2 - 1, b.cluster_centers_)

    def test_centers_in_input_alphabet(self):
        rng = np.random.default_rng(2)
        X, _ = blobs(rng)
        est = HypercubeSegmentation(method="pairs").fit(X)
        assert set(np.unique(est.cluster_centers_)) <= {0, 1}
        est2 = HypercubeSegmentation(method="pairs").fit(X * 2 - 1)
        assert set(np.unique(est2.cluster_centers_)) <= {-1, 1}

    def test_predict_matches_training_labels_on_clean_data(self):
        rng = np.random.default_rng(3)
        proto = rng.integers(0, 2, size=10)
        X = np.vstack([np.tile(proto, (5, 1)), np.tile(1 - proto, (5, 1))])
        est = HypercubeSegmentation(method="exact").fit(X)
        assert np.array_equal(est.predict(X), est.labels_)

    def test_objective_attributes_consistent(self):
        rng = np.random.default_rng(4)
        X, _ = blobs(rng)
        est = HypercubeSegmentation(method="exact").fit(X)
        k, d = X.shape
        assert 2 * est.agreement_value_ == k * d + est.l1_value_

    def test_rejects_mixed_alphabet(self):
        with pytest.raises(ValueError):
            HypercubeSegmentation().fit(np.array([[0, 1], [2, 1]]))

    def test_rejects_fractional_values(self):
        with pytest.raises(ValueError):
            HypercubeSegmentation().fit(np.array([[0.5, 1.0], [0.0, 1.0]]))

    def test_accepts_float_typed_binary_values(self):
        est = HypercubeSegmentation(method="exact").fit(np.array([[1.0, 1.0], [0.0, 0.0]]))
        assert est.labels_.tolist() == [0, 1]

    def test_predict_rejects_wrong_width(self):
        est = HypercubeSegmentation().fit(np.array([[1, 1], [0, 0]]))
        with pytest.raises(ValueError, match="features"):
            est.predict(np.array([[1, 1, 1]]))

    def test_auto_uses_exact_when_small(self):
        est = HypercubeSegmentation(method="auto").fit(np.array([[1, 1], [0, 0]]))
        assert est.solve_method_ == "exact"

    def test_score_counts_agreements(self):
        X = np.array([[1, 1, 1], [0, 0, 0]])
        est = HypercubeSegmentation(method="exact").fit(X)
        assert est.score(X) == 6.0
