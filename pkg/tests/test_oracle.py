import math

import mpmath
import numpy as np
import pytest

from fracsl import (
    DomainError,
    NonConverged,
    OracleConfig,
    ProblemSpec,
    ResonantLambda,
    analytic_alpha1,
    apply_left_integral,
    direct_left_integral,
    direct_right_integral,
    make_grid,
    make_weights,
    power_law_solution,
)


class TestClosedForms:
    def test_sine_boundary(self):
        lam = -((math.pi / 2) ** 2)
        assert analytic_alpha1(lam, 1.0, 1.0, 1.0) == pytest.approx(1.0, abs=1e-15)
        assert analytic_alpha1(lam, 1.0, 1.0, 1 / 3) == pytest.approx(0.5, abs=1e-15)
        assert analytic_alpha1(lam, 1.0, 1.0, 0.0) == 0.0

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_resonance(self, k):
        with pytest.raises(ResonantLambda):
            analytic_alpha1(-((k * math.pi) ** 2), 1.0, 1.0, 0.5)

    def test_requires_negative_lambda(self):
        with pytest.raises(DomainError):
            analytic_alpha1(0.0, 1.0, 1.0, 0.5)

    def test_power_law(self):
        spec = ProblemSpec(0.5, 0.0)
        assert power_law_solution(spec, 0.25) == 0.5
        assert power_law_solution(spec, 0.0) == 0.0
        spec = ProblemSpec(0.3, 0.0, b=2.0, L=4.0)
        assert power_law_solution(spec, 2.0) == 4.0

    def test_sine_solves_ode(self):
        # -f'' + lam f = 0 checked by central differences
        lam, h = -3.0, 1e-4
        t = np.linspace(0.1, 0.9, 9)
        f = lambda x: analytic_alpha1(lam, 1.0, 1.0, x)  # noqa: E731
        d2 = (f(t + h) - 2 * f(t) + f(t - h)) / h**2
        np.testing.assert_allclose(d2, lam * f(t), rtol=1e-6)


class TestDirectIntegral:
    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.9])
    def test_constant(self, alpha):
        got = direct_left_integral(lambda x: np.ones_like(x), alpha, 0.7)
        assert got == pytest.approx(0.7**alpha / math.gamma(1 + alpha), rel=1e-12)

    def test_linear_power_rule(self):
        expected = float(1 / mpmath.gamma(2.5))
        assert expected == pytest.approx(0.7522527781, abs=1e-10)
        assert direct_left_integral(lambda x: x, 0.5, 1.0) == pytest.approx(expected, abs=1e-12)

    def test_zero(self):
        assert direct_left_integral(lambda x: 0 * x, 0.5, 1.0) == 0.0
        assert direct_left_integral(np.cos, 0.5, 0.0) == 0.0

    def test_smooth_against_series(self):
        # I^alpha cos(t) = sum_k (-1)^k t^(2k+alpha) / Gamma(2k+1+alpha)
        alpha, t = 0.35, 0.8
        mpmath.mp.dps = 30
        exact = mpmath.nsum(
            lambda k: (-1) ** k * mpmath.mpf(t) ** (2 * k + alpha) / mpmath.gamma(2 * k + 1 + alpha), [0, mpmath.inf]
        )
        assert direct_left_integral(np.cos, alpha, t) == pytest.approx(float(exact), abs=1e-8)

    def test_right_integral_constant(self):
        got = direct_right_integral(lambda x: np.ones_like(x), 0.4, 0.25, 1.0)
        assert got == pytest.approx(0.75**0.4 / math.gamma(1.4), rel=1e-12)

    def test_nonconverged(self):
        # tau**-0.9 is too rough for the stability test at this resolution
        with pytest.raises(NonConverged):
            direct_left_integral(lambda x: np.where(x > 0, x, 1.0) ** -0.9, 0.5, 1.0, OracleConfig(16))

    def test_resolution_for_grid(self):
        assert OracleConfig.for_grid(1024).resolution >= 8 * 1024
        with pytest.raises(ValueError):
            OracleConfig(0)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75, 1.0])
def test_discrete_operator_error_constant_is_stable(alpha):
    phi = lambda x: np.cos(x) + x  # noqa: E731
    consts = []
    for n in (16, 32, 64):
        g = make_grid(n)
        ref = np.array([direct_left_integral(phi, alpha, t, OracleConfig.for_grid(n)) for t in g.nodes])
        err = np.abs(apply_left_integral(phi(g.nodes), make_weights(alpha, g)) - ref).max()
        consts.append(err / g.dt ** (1 + alpha))
    assert max(consts) / min(consts) < 1.5


@pytest.mark.parametrize("lam", [-3.0, -10.0])
def test_special_solutions_meet_boundary_conditions(lam):
    assert analytic_alpha1(lam, 1.0, 2.0, 0.0) == 0.0
    assert analytic_alpha1(lam, 1.0, 2.0, 1.0) == pytest.approx(2.0, rel=1e-14)
    spec = ProblemSpec(0.4, lam, f"{-lam}", L=2.0)
    assert power_law_solution(spec, 0.0) == 0.0 and power_law_solution(spec, 1.0) == 2.0
