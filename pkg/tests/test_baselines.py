import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lperceptron.baselines import gnb_predict, gnb_train, knn_predict, knn_train
from lperceptron.errors import ConfigError, TrainingError


class TestGaussianNB:
    def test_separated_clusters(self, rng):
        x = np.concatenate([rng.normal(0, 1, 50), rng.normal(10, 1, 50)])[:, None]
        y = np.array([False] * 50 + [True] * 50)
        model = gnb_train(x, y)
        assert gnb_predict(model, [1.0]) is False
        assert gnb_predict(model, [9.0]) is True

    def test_tie_is_negative(self):
        x = np.array([[-1.0], [-3.0], [1.0], [3.0]])
        y = np.array([False, False, True, True])
        model = gnb_train(x, y)
        # mirror-image classes with equal priors: x=0 is equidistant
        assert gnb_predict(model, [0.0]) is False

    def test_hand_computed(self):
        model = gnb_train(np.array([[0.0], [1.0], [10.0], [11.0]]), np.array([False, False, True, True]))
        np.testing.assert_allclose(model.means[:, 0], [0.5, 10.5])
        np.testing.assert_allclose(model.variances[:, 0], [0.25, 0.25])
        # log N(0.4; 0.5, 0.25) = -0.5 log(2 pi 0.25) - 0.01 / 0.5
        # log N(0.4; 10.5, 0.25) = -0.5 log(2 pi 0.25) - 102.01 / 0.5
        lp = model.log_posteriors([[0.4]])[0]
        base = np.log(0.5) - 0.5 * np.log(2 * np.pi * 0.25)
        np.testing.assert_allclose(lp, [base - 0.02, base - 204.02])
        assert gnb_predict(model, [0.4]) is False

    def test_single_class_error(self):
        with pytest.raises(TrainingError):
            gnb_train(np.ones((3, 1)), np.array([True] * 3))

    def test_variance_floor(self):
        model = gnb_train(np.array([[1.0, 0.0], [1.0, 1.0], [2.0, 5.0], [2.0, 6.0]]),
                          np.array([False, False, True, True]))
        assert (model.variances > 0).all()
        np.testing.assert_allclose(model.priors.sum(), 1.0)


class TestKNN:
    def test_k1_training_row(self):
        x = np.array([[0.0, 0.0], [1.0, 1.0], [5.0, 5.0]])
        y = np.array([True, False, True])
        model = knn_train(x, y, 1)
        assert [knn_predict(model, r) for r in x] == y.tolist()

    def test_majority(self):
        x = np.array([[0.0], [0.1], [0.2], [5.0], [6.0]])
        y = np.array([True, True, False, False, False])
        assert knn_predict(knn_train(x, y, 3), [0.05]) is True

    def test_k_equals_n(self, rng):
        x = rng.normal(size=(7, 2))
        y = np.array([True] * 4 + [False] * 3)
        model = knn_train(x, y, 7)
        assert model.predict_batch(rng.normal(size=(10, 2)) * 100).all()

    def test_distance_tie_lower_index(self):
        x = np.array([[1.0], [-1.0]])
        model = knn_train(x, np.array([False, True]), 1)
        assert knn_predict(model, [0.0]) is False

    @pytest.mark.parametrize("k", [0, 2, 9])
    def test_invalid_k(self, k):
        with pytest.raises(ConfigError):
            knn_train(np.zeros((5, 1)), np.zeros(5, dtype=bool), k)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(-20, 20), st.integers(-20, 20)), min_size=4, max_size=30, unique=True),
       st.data())
def test_knn_k1_zero_training_error(points, data):
    x = np.array(points, dtype=float)
    y = np.array(data.draw(st.lists(st.booleans(), min_size=len(points), max_size=len(points))))
    model = knn_train(x, y, 1)
    assert (model.predict_batch(x) == y).all()


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-50, 50), min_size=6, max_size=30), st.data())
def test_gnb_duplication_invariance(values, data):
    n = len(values)
    x = np.array(values).reshape(-1, 1)
    y = np.array([i % 2 == 0 for i in range(n)])
    model = gnb_train(x, y)
    doubled = gnb_train(np.vstack([x, x]), np.concatenate([y, y]))
    probe = np.linspace(-60, 60, 25)[:, None]
    np.testing.assert_allclose(model.priors, doubled.priors)
    np.testing.assert_allclose(model.log_posteriors(probe), doubled.log_posteriors(probe), rtol=1e-9, atol=1e-9)
    lp = model.log_posteriors(probe)
    clear = np.abs(lp[:, 1] - lp[:, 0]) > 1e-6
    assert (model.predict_batch(probe)[clear] == doubled.predict_batch(probe)[clear]).all()
