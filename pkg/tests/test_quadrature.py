import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from fracsl import (
    apply_left_integral,
    apply_right_integral,
    composition_matrix,
    left_weight,
    make_grid,
    make_weights,
    right_weight,
)

ALPHAS = [0.25, 0.5, 0.75, 1.0]


def quad_weights(alpha, n, b=1.0):
    """Brute-force w[i, j]: endpoint mean times the panel integral of the kernel, via QUADPACK."""
    dt = b / n
    W = np.zeros((n + 1, n + 1))
    for i in range(1, n + 1):
        ti = i * dt
        for j in range(i):
            # int_{t_j}^{t_j+1} (t_i - tau)^(alpha-1) dtau; the last panel carries the singularity
            if j < i - 1:
                val, _ = integrate.quad(
                    lambda tau: (ti - tau) ** (alpha - 1.0), j * dt, (j + 1) * dt, epsabs=1e-15, epsrel=1e-13
                )
            else:
                val, _ = integrate.quad(
                    lambda tau: 1.0, j * dt, ti, weight="alg", wvar=(0.0, alpha - 1.0), epsabs=1e-15, epsrel=1e-13
                )
            W[i, j] += 0.5 * val / math.gamma(alpha)
            W[i, j + 1] += 0.5 * val / math.gamma(alpha)
    return W


class TestWeights:
    def test_origin_weight_is_zero(self):
        for alpha in ALPHAS:
            assert left_weight(0, 0, alpha, 0.1) == 0.0
            assert right_weight(5, 5, alpha, 0.1, 5) == 0.0

    def test_alpha_one_interior(self):
        assert left_weight(3, 1, 1.0, 0.1) == pytest.approx(0.1, rel=1e-15)
        assert right_weight(1, 2, 1.0, 0.1, 4) == pytest.approx(0.1, rel=1e-15)

    def test_diagonal_half_order(self):
        # 0.25**0.5 / (2 Gamma(3/2)) = 0.5 / sqrt(pi)
        expected = float(mpmath.mpf("0.5") / mpmath.sqrt(mpmath.pi))
        assert left_weight(2, 2, 0.5, 0.25) == pytest.approx(expected, rel=2e-16)
        assert expected == pytest.approx(0.2820947918, abs=1e-10)

    @pytest.mark.parametrize("alpha", [0.2, 0.5, 0.9, 1.0])
    def test_against_brute_force_quadrature(self, alpha):
        n = 8
        ws = make_weights(alpha, make_grid(n))
        np.testing.assert_allclose(ws.left_matrix(), quad_weights(alpha, n), rtol=1e-10, atol=1e-14)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            left_weight(1, 2, 0.5, 0.1)
        with pytest.raises(IndexError):
            right_weight(3, 2, 0.5, 0.1, 4)
        ws = make_weights(0.5, make_grid(4))
        with pytest.raises(IndexError):
            ws.left(5, 0)

    def test_weightset_matches_scalar_functions(self):
        n = 12
        for alpha in (0.3, 0.7):
            ws = make_weights(alpha, make_grid(n))
            for i in range(n + 1):
                for j in range(i + 1):
                    assert ws.left(i, j) == left_weight(i, j, alpha, 1 / n)
                for j in range(i, n + 1):
                    assert ws.right(i, j) == right_weight(i, j, alpha, 1 / n, n)

    @pytest.mark.parametrize("n", range(2, 17))
    def test_mirror_exhaustive(self, n):
        for alpha in (0.15, 0.5, 0.85, 1.0):
            dt = 1 / n
            for i in range(n + 1):
                for j in range(i, n + 1):
                    assert right_weight(i, j, alpha, dt, n) == left_weight(n - i, n - j, alpha, dt)

    def test_alpha_one_is_composite_trapezoid(self):
        n = 10
        ws = make_weights(1.0, make_grid(n))
        W = ws.left_matrix()
        dt = 0.1
        for i in range(1, n + 1):
            expected = np.r_[dt / 2, np.full(i - 1, dt), dt / 2] if i > 1 else np.array([dt / 2, dt / 2])
            assert W[i, : i + 1].tolist() == expected.tolist()

    def test_nonnegative_exhaustive(self):
        for alpha in np.linspace(0.01, 1.0, 12):
            ws = make_weights(alpha, make_grid(512))
            # every table with n <= 512 is a leading block of the same lag/first arrays
            assert (ws.lag >= 0).all() and (ws.first >= 0).all()
            assert (ws.left_matrix() >= 0).all()

    @given(st.floats(0.01, 1.0), st.integers(2, 64))
    def test_row_sum_telescopes(self, alpha, n):
        ws = make_weights(alpha, make_grid(n))
        W = ws.left_matrix()
        mpmath.mp.prec = 113
        for i in range(1, n + 1):
            exact = float(mpmath.power(mpmath.mpf(i) / n, alpha) / mpmath.mpf(ws.gamma))
            got = math.fsum(W[i])
            assert abs(got - exact) <= 2 * np.spacing(exact)


class TestOperators:
    def test_zero_in_zero_out(self):
        ws = make_weights(0.4, make_grid(16))
        assert not apply_left_integral(np.zeros(17), ws).any()
        assert not apply_right_integral(np.zeros(17), ws).any()

    @pytest.mark.parametrize("alpha", [0.1, 0.37, 0.5, 0.99])
    def test_constant_is_integrated_exactly(self, alpha):
        n, C = 64, 2.5
        g = make_grid(n)
        ws = make_weights(alpha, g)
        mpmath.mp.prec = 80
        exact_left = np.array(
            [float(C * mpmath.power(mpmath.mpf(i) / n, alpha) / mpmath.gamma(1 + alpha)) for i in range(n + 1)]
        )
        np.testing.assert_allclose(apply_left_integral(np.full(n + 1, C), ws), exact_left, rtol=1e-14, atol=0)
        np.testing.assert_allclose(
            apply_right_integral(np.full(n + 1, C), ws), exact_left[::-1], rtol=1e-14, atol=0
        )

    def test_trapezoid_exact_on_linear(self):
        g = make_grid(4)
        ws = make_weights(1.0, g)
        np.testing.assert_allclose(apply_left_integral(g.nodes, ws), g.nodes**2 / 2, rtol=0, atol=1e-16)

    def test_boundary_entries_vanish(self):
        ws = make_weights(0.6, make_grid(9))
        phi = np.linspace(1, 2, 10)
        assert apply_left_integral(phi, ws)[0] == 0.0
        assert apply_right_integral(phi, ws)[-1] == 0.0

    def test_length_mismatch(self):
        ws = make_weights(0.6, make_grid(9))
        with pytest.raises(ValueError):
            apply_left_integral(np.ones(9), ws)

    @settings(max_examples=30)
    @given(st.floats(0.05, 1.0), st.integers(2, 64), st.integers(0, 2**31))
    def test_right_is_reversed_left(self, alpha, n, seed):
        phi = np.random.default_rng(seed).standard_normal(n + 1)
        ws = make_weights(alpha, make_grid(n))
        assert np.array_equal(apply_right_integral(phi, ws), apply_left_integral(phi[::-1], ws)[::-1])

    def test_matches_dense_matrices(self):
        ws = make_weights(0.45, make_grid(20))
        phi = np.random.default_rng(3).standard_normal(21)
        np.testing.assert_allclose(apply_left_integral(phi, ws), ws.left_matrix() @ phi, rtol=1e-14, atol=1e-15)
        np.testing.assert_allclose(apply_right_integral(phi, ws), ws.right_matrix() @ phi, rtol=1e-14, atol=1e-15)


class TestComposition:
    def test_three_node_trapezoid(self):
        # alpha = 1: right integral of 1 is b - t, trapezoid over [0, 0.5] of it is exact
        ws = make_weights(1.0, make_grid(2))
        A = composition_matrix(ws)
        assert (A @ np.ones(3))[1] == pytest.approx(0.375, abs=1e-16)

    def test_row_zero_and_nonnegative(self):
        for alpha in ALPHAS:
            A = composition_matrix(make_weights(alpha, make_grid(32)))
            assert not A[0].any()
            assert (A >= 0).all()

    def test_matches_ordered_triple_loop(self):
        n = 12
        ws = make_weights(0.55, make_grid(n))
        A = composition_matrix(ws)
        ref = np.zeros((n + 1, n + 1))
        for i in range(n + 1):
            for k in range(n + 1):
                acc = 0.0
                for j in range(min(i, k) + 1):
                    acc += ws.left(i, j) * ws.right(j, k)
                ref[i, k] = acc
        np.testing.assert_allclose(A, ref, rtol=1e-14, atol=1e-17)

    @pytest.mark.parametrize("n", [2, 7, 64, 256])
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_nested_application(self, alpha, n):
        ws = make_weights(alpha, make_grid(n))
        phi = np.random.default_rng(n).standard_normal(n + 1)
        A = composition_matrix(ws)
        nested = apply_left_integral(apply_right_integral(phi, ws), ws)
        assert np.abs(A @ phi - nested).max() <= 1e-13 * np.abs(phi).max()
