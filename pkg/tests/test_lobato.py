import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from norts import (
    ArmaSpec,
    InnovationLaw,
    InvalidInputError,
    NumericDegeneracyError,
    RngStream,
    ScenarioSpec,
    Series,
    fk_hat,
    lobato_test,
    run_scenario,
    simulate_arma,
)


def fk_bruteforce(x, k):
    """Direct triple-loop evaluation of the studentization sum."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    mu = sum(x) / n

    def gamma(h):
        if h >= n:
            return 0.0
        return sum((x[i + h] - mu) * (x[i] - mu) for i in range(n - h)) / n

    total = 0.0
    for t in range(-(n - 1), n):
        total += gamma(abs(t)) * (gamma(abs(t)) + gamma(n - abs(t))) ** (k - 1)
    return total


class TestFkHat:
    def test_constant_series_is_zero(self):
        assert fk_hat([3.0] * 15, 3) == 0.0
        assert fk_hat([3.0] * 15, 4) == 0.0

    @pytest.mark.parametrize("k", [3, 4])
    @pytest.mark.parametrize("a", [0.5, 2.0, -3.0])
    def test_scale_homogeneity(self, s20, k, a):
        scaled = Series(a * s20.values)
        assert fk_hat(scaled, k) == pytest.approx(a ** (2 * k) * fk_hat(s20, k), rel=1e-10)

    @pytest.mark.parametrize("k", [3, 4])
    def test_bruteforce_oracle_on_fixture(self, s20, k):
        assert fk_hat(s20, k) == pytest.approx(fk_bruteforce(s20.values, k), rel=1e-10, abs=1e-10)

    def test_rejects_bad_order(self, s20):
        with pytest.raises(InvalidInputError):
            fk_hat(s20, 2)
        with pytest.raises(InvalidInputError):
            fk_hat(s20, 5)


@given(
    values=st.lists(st.floats(-10, 10, allow_nan=False), min_size=10, max_size=30),
    k=st.sampled_from([3, 4]),
)
@settings(max_examples=80, deadline=None)
def test_fk_hat_matches_bruteforce_property(values, k):
    x = np.array(values)
    assert fk_hat(x, k) == pytest.approx(fk_bruteforce(x, k), rel=1e-10, abs=1e-10)


class TestLobatoTest:
    def test_terms_compose_statistic(self, s50):
        r = lobato_test(s50)
        assert r.statistic == pytest.approx(r.skewness_term + r.kurtosis_term, rel=1e-14)
        assert r.skewness_term >= 0 and r.kurtosis_term >= 0
        assert r.df == 2
        assert 0 <= r.p_value <= 1

    def test_ma3_gamma_series_rejected(self):
        # MA(3) driven by skewed gamma innovations: clearly non-normal marginal
        spec = ArmaSpec(ma=(0.2, 0.3, -0.4), innovation=InnovationLaw.gamma(3, 6))
        s = simulate_arma(spec, 250, 500, RngStream(298))
        r = lobato_test(s)
        assert r.p_value < 0.05

    def test_affine_invariance(self, s50):
        base = lobato_test(s50).statistic
        for a, b in [(2.5, 1.0), (-0.7, 3.0), (100.0, -50.0)]:
            mapped = lobato_test(Series(a * s50.values + b)).statistic
            assert mapped == pytest.approx(base, rel=1e-10)

    def test_gaussian_size_calibration(self):
        spec = ScenarioSpec(
            phi=0.0, law=InnovationLaw.normal(), n=250, method="lobato", trials=500
        )
        result = run_scenario(spec, RngStream(5150))
        assert 0.03 <= result.rate <= 0.09

    def test_short_series_rejected(self):
        with pytest.raises(InvalidInputError):
            lobato_test(np.arange(9, dtype=float))

    def test_zero_variance_rejected(self):
        with pytest.raises(InvalidInputError, match="zero variance"):
            lobato_test([1.0] * 20)

    def test_underflowing_scale_surfaces_degeneracy(self):
        # values so small that the studentization sums underflow to zero
        x = 1e-110 * RngStream(3)._generator().standard_normal(20)
        with pytest.raises(NumericDegeneracyError, match="studentization"):
            lobato_test(x)
