import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lperceptron.errors import DimensionError, NumericInputError
from lperceptron.polyfit import Polynomial, build_targets, evaluate, evaluate_many, fit_polynomial, sse

from oracles import exact_normal_equations, pinv_fit


class TestBuildTargets:
    def test_wbcd_values(self):
        np.testing.assert_array_equal(build_targets([True, False, True], -2, 3), [-2, 3, -2])

    def test_single_class(self):
        np.testing.assert_array_equal(build_targets([False] * 4, 7.0, -1.5), [-1.5] * 4)

    def test_hsd_values(self):
        np.testing.assert_array_equal(build_targets([False, True], -1.3, 2.9), [2.9, -1.3])

    def test_empty(self):
        with pytest.raises(DimensionError):
            build_targets([], 1, 2)


class TestFit:
    def test_constant(self):
        np.testing.assert_allclose(fit_polynomial([0, 1, 2], [5, 5, 5], 0).coefficients, [5.0])

    def test_line(self):
        np.testing.assert_allclose(fit_polynomial([0, 1], [0, 1], 1).coefficients, [0.0, 1.0], atol=1e-14)

    def test_parabola(self):
        np.testing.assert_allclose(fit_polynomial([-1, 0, 1], [1, 0, 1], 2).coefficients, [0, 0, 1], atol=1e-14)

    def test_rank_deficient_min_norm(self):
        # pinv oracle: [2, 4, 8] / 21
        poly = fit_polynomial([2, 2, 2], [1, 2, 3], 2)
        np.testing.assert_allclose(poly.coefficients, [2 / 21, 4 / 21, 8 / 21], rtol=1e-12)
        np.testing.assert_allclose(poly.coefficients, pinv_fit([2, 2, 2], [1, 2, 3], 2), rtol=1e-12)
        assert evaluate(poly, 2.0) == pytest.approx(2.0)

    def test_underdetermined(self):
        poly = fit_polynomial([1.0, 2.0], [3.0, 5.0], 4)
        np.testing.assert_allclose(poly.coefficients, pinv_fit([1, 2], [3, 5], 4), rtol=1e-9, atol=1e-12)

    def test_degree_recorded(self):
        assert fit_polynomial([1, 2, 3, 4, 5], [0, 1, 0, 1, 0], 3).degree == 3

    @pytest.mark.parametrize("xs,ts", [([1, np.nan], [0, 1]), ([1, 2], [np.inf, 1])])
    def test_non_finite(self, xs, ts):
        with pytest.raises(NumericInputError):
            fit_polynomial(xs, ts, 1)

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            fit_polynomial([1, 2, 3], [1, 2], 1)

    def test_matches_exact_oracle(self, rng):
        for _ in range(25):
            degree = int(rng.integers(0, 6))
            n = int(rng.integers(degree + 2, 51))
            xs = rng.uniform(-5, 5, n)
            ts = rng.normal(size=n)
            got = fit_polynomial(xs, ts, degree).coefficients
            np.testing.assert_allclose(got, exact_normal_equations(xs, ts, degree), rtol=1e-6)

    def test_integer_features_degree_four(self):
        # WBCD-like column: integer values 1..10
        rng = np.random.default_rng(3)
        xs = rng.integers(1, 11, 200).astype(float)
        ts = np.where(rng.random(200) < 0.4, -2.0, 3.0)
        got = fit_polynomial(xs, ts, 4).coefficients
        np.testing.assert_allclose(got, exact_normal_equations(xs, ts, 4), rtol=1e-6)


class TestEvaluate:
    def test_horner(self):
        assert evaluate(Polynomial([1, 2, 3]), 2) == 17.0

    def test_constant(self):
        assert evaluate(Polynomial([-4.25]), 123.0) == -4.25

    def test_identity(self):
        assert evaluate(Polynomial([0, 1]), 7.5) == 7.5

    def test_vectorized_matches_scalar(self):
        p = Polynomial([0.5, -1, 0.25, 2])
        xs = np.linspace(-3, 3, 13)
        np.testing.assert_allclose(evaluate_many(p, xs), [evaluate(p, x) for x in xs])

    def test_non_finite_coefficients_rejected(self):
        with pytest.raises(NumericInputError):
            Polynomial([1.0, np.nan])


class TestSSE:
    def test_zero_for_interpolation(self):
        p = fit_polynomial([0, 1], [0, 1], 1)
        assert sse(p, [0, 1], [0, 1]) == pytest.approx(0.0, abs=1e-24)

    def test_zero_poly(self):
        assert sse(Polynomial([0]), [0, 1], [3, 4]) == 25.0

    def test_mean_fit(self):
        p = fit_polynomial([0, 1], [1, 3], 0)
        assert sse(p, [0, 1], [1, 3]) == pytest.approx(2.0)

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            sse(Polynomial([1]), [1, 2], [1])


# --- properties --------------------------------------------------------------

# feature values on a 0.01 grid, like the integer-coded columns the model sees
coords = st.integers(-500, 500).map(lambda i: i / 100)


@st.composite
def fit_problem(draw, max_degree=5):
    degree = draw(st.integers(0, max_degree))
    n = draw(st.integers(1, 40))
    xs = draw(st.lists(coords, min_size=n, max_size=n))
    ts = draw(st.lists(st.floats(-10, 10), min_size=n, max_size=n))
    return np.array(xs), np.array(ts), degree


def _distinct(xs):
    return np.unique(xs).size


@settings(max_examples=150, deadline=None)
@given(fit_problem())
def test_residual_orthogonality(problem):
    xs, ts, degree = problem
    assume(_distinct(xs) >= degree + 2)
    v = np.vander(xs, degree + 1, increasing=True)
    assume(np.linalg.cond(v) < 1e5)
    r = ts - evaluate_many(fit_polynomial(xs, ts, degree), xs)
    # a residual at rounding level has no direction to be orthogonal in
    assume(np.linalg.norm(r) >= 1e-3 * np.linalg.norm(ts))
    for j in range(degree + 1):
        scale = np.linalg.norm(r) * np.linalg.norm(v[:, j])
        assert abs(r @ v[:, j]) <= 1e-8 * scale


@settings(max_examples=150, deadline=None)
@given(fit_problem(max_degree=4))
def test_sse_monotone_in_degree(problem):
    xs, ts, degree = problem
    lower = sse(fit_polynomial(xs, ts, degree), xs, ts)
    higher = sse(fit_polynomial(xs, ts, degree + 1), xs, ts)
    assert higher <= lower + 1e-9


@settings(max_examples=150, deadline=None)
@given(fit_problem())
def test_interpolation(problem):
    xs, ts, degree = problem
    # several targets per repeated x cannot be interpolated; use one target per x value
    uniq, inverse = np.unique(xs, return_inverse=True)
    assume(uniq.size <= degree + 1)
    per_x = np.linspace(-3, 3, uniq.size)
    ts = per_x[inverse]
    err = sse(fit_polynomial(xs, ts, degree), xs, ts)
    assert err <= 1e-8 * max(np.linalg.norm(ts), 1.0)


@settings(max_examples=100, deadline=None)
@given(fit_problem(), st.randoms(use_true_random=False))
def test_permutation_invariance(problem, random):
    xs, ts, degree = problem
    order = list(range(xs.size))
    random.shuffle(order)
    a = fit_polynomial(xs, ts, degree)
    b = fit_polynomial(xs[order], ts[order], degree)
    probe = np.linspace(-5, 5, 11)
    np.testing.assert_allclose(a(probe), b(probe), rtol=1e-7, atol=1e-7 * (1 + np.abs(ts).max()))
