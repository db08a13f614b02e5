import numpy as np
import pytest

from norts import (
    ArmaSpec,
    EppsResult,
    InnovationLaw,
    InvalidInputError,
    Lambda,
    RngStream,
    ScenarioSpec,
    Series,
    ThetaParams,
    default_lambda,
    epps_test,
    g_hat,
    g_theta,
    g_vector,
    qn,
    run_scenario,
    simulate_arma,
    spectral_zero,
)

LAM = Lambda((0.7, 1.9))


def spectral_bruteforce(x, lam):
    """Loop evaluation of the Bartlett-weighted long-run covariance."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    rows = np.array([g_vector(v, lam) for v in x])
    mean = rows.mean(axis=0)
    d = rows - mean
    m = int(np.floor(n ** 0.4))
    mat = np.zeros((d.shape[1], d.shape[1]))
    for t in range(n):
        mat += np.outer(d[t], d[t])
    for i in range(1, m + 1):
        w = 1.0 - i / m
        cross = np.zeros_like(mat)
        for t in range(n - i):
            cross += np.outer(d[t], d[t + i])
        mat += w * (cross + cross.T)
    return mat / n


def pinv_bruteforce(mat, rcond=1e-10):
    """Explicit SVD pseudoinverse with relative singular-value cutoff."""
    u, sv, vt = np.linalg.svd(mat)
    keep = sv > rcond * sv.max()
    inv = np.zeros_like(sv)
    inv[keep] = 1.0 / sv[keep]
    return (vt.T * inv) @ u.T


class TestGVector:
    def test_at_zero(self):
        np.testing.assert_array_equal(g_vector(0.0, LAM), [1.0, 0.0, 1.0, 0.0])

    def test_half_period_first_pair(self):
        v = g_vector(np.pi / LAM.points[0], LAM)
        assert v[0] == pytest.approx(-1.0, abs=1e-12)
        assert v[1] == pytest.approx(0.0, abs=1e-12)

    def test_pythagorean_identity(self):
        rng = RngStream(41)._generator()
        for _ in range(50):
            lam = Lambda(tuple(np.sort(rng.uniform(0.1, 5.0, 3))))
            v = g_vector(rng.normal() * 10, lam)
            assert np.all(np.abs(v) <= 1.0 + 1e-15)
            pairs = v.reshape(-1, 2)
            np.testing.assert_allclose((pairs**2).sum(axis=1), 1.0, atol=1e-12)


class TestGTheta:
    def test_zero_mean_kills_imaginary_parts(self):
        v = g_theta(ThetaParams(0.0, 2.0), LAM)
        np.testing.assert_array_equal(v[1::2], 0.0)

    def test_small_variance_limit(self):
        theta = ThetaParams(1.3, 1e-14)
        v = g_theta(theta, LAM)
        pts = np.asarray(LAM.points)
        np.testing.assert_allclose(v[0::2], np.cos(pts * 1.3), atol=1e-12)
        np.testing.assert_allclose(v[1::2], np.sin(pts * 1.3), atol=1e-12)

    def test_direct_evaluation(self):
        v = g_theta(ThetaParams(1.0, 1.0), Lambda((1.0, 2.0)))
        assert v[0] == pytest.approx(np.exp(-0.5) * np.cos(1.0), abs=1e-12)
        assert v[1] == pytest.approx(np.exp(-0.5) * np.sin(1.0), abs=1e-12)
        assert v[0] == pytest.approx(0.3277, abs=5e-5)
        assert v[1] == pytest.approx(0.5104, abs=5e-5)


class TestGHat:
    def test_constant_series(self):
        v = g_hat([2.5] * 12, LAM)
        np.testing.assert_allclose(v, g_vector(2.5, LAM), atol=1e-15)

    def test_bounded(self, s50):
        assert np.all(np.abs(g_hat(s50, LAM)) <= 1.0)

    def test_double_loop_oracle(self, s20):
        n = len(s20)
        oracle = np.zeros(4)
        for x in s20.values:
            for j, lam in enumerate(LAM.points):
                oracle[2 * j] += np.cos(lam * x)
                oracle[2 * j + 1] += np.sin(lam * x)
        oracle /= n
        np.testing.assert_allclose(g_hat(s20, LAM), oracle, atol=1e-12)


class TestSpectralZero:
    def test_symmetric_exactly(self, s50):
        mat = spectral_zero(s50, ThetaParams(0.0, 1.0), LAM)
        np.testing.assert_array_equal(mat, mat.T)

    def test_constant_series_zero_matrix(self):
        mat = spectral_zero([1.0] * 25, ThetaParams(0.0, 1.0), LAM)
        np.testing.assert_allclose(mat, 0.0, atol=1e-25)

    def test_bruteforce_oracle(self, s20):
        mat = spectral_zero(s20, ThetaParams(0.0, 1.0), LAM)
        np.testing.assert_allclose(mat, spectral_bruteforce(s20.values, LAM), atol=1e-12)

    def test_iid_matches_monte_carlo_covariance(self):
        # for i.i.d. data the long-run covariance reduces to the plain
        # covariance of the moment vector
        n = 50_000
        s = simulate_arma(ArmaSpec(), n, 0, RngStream(55))
        lam = Lambda((1.0, 2.0))
        mat = spectral_zero(s, ThetaParams(0.0, 1.0), lam)
        rows = np.array([g_vector(v, lam) for v in s.values])
        oracle = np.cov(rows, rowvar=False, bias=True)
        assert np.linalg.norm(mat - oracle) <= 0.10 * np.linalg.norm(oracle)

    def test_positive_semidefinite(self, s50):
        mat = spectral_zero(s50, ThetaParams(0.0, 1.0), LAM)
        assert np.linalg.eigvalsh(mat).min() >= -1e-12


class TestQn:
    def test_zero_mismatch_gives_zero(self, s50):
        weight = np.eye(4)
        v = np.zeros(4)
        assert v @ weight @ v == 0.0  # quadratic form sanity
        theta = ThetaParams(0.0, 1.0)
        assert qn(s50, theta, LAM) >= 0.0

    def test_independent_svd_oracle(self, s50):
        mu = float(np.mean(s50.values))
        g0 = float(np.mean((s50.values - mu) ** 2))
        theta = ThetaParams(mu, g0)
        v = g_hat(s50, LAM) - g_theta(theta, LAM)
        oracle = float(v @ pinv_bruteforce(spectral_bruteforce(s50.values, LAM)) @ v)
        assert qn(s50, theta, LAM) == pytest.approx(oracle, abs=1e-8)


class TestEppsTest:
    def test_ar2_beta_series_rejected(self):
        spec = ArmaSpec(ar=(0.5, 0.2), innovation=InnovationLaw.beta(9, 1))
        s = simulate_arma(spec, 250, 500, RngStream(298))
        r = epps_test(s)
        assert isinstance(r, EppsResult)
        assert r.df == 2
        assert r.statistic > 5.0
        assert r.p_value < 0.05

    def test_gaussian_size_calibration(self):
        spec = ScenarioSpec(phi=0.0, law=InnovationLaw.normal(), n=250, method="epps", trials=500)
        result = run_scenario(spec, RngStream(5151))
        assert 0.03 <= result.rate <= 0.11

    def test_affine_invariance_default_lambda(self, s50):
        base = epps_test(s50).statistic
        for a, b in [(3.0, -2.0), (-0.4, 7.0), (250.0, 0.3)]:
            mapped = epps_test(Series(a * s50.values + b)).statistic
            assert mapped == pytest.approx(base, rel=1e-6, abs=1e-9)

    def test_minimizer_beats_random_probes(self, s50):
        r = epps_test(s50)
        lam = default_lambda(s50)
        q_star = qn(s50, r.theta_hat, lam)
        rng = RngStream(61)._generator()
        mu = float(np.mean(s50.values))
        sd = float(np.std(s50.values))
        for _ in range(100):
            theta = ThetaParams(mu + rng.normal() * sd, sd**2 * np.exp(rng.normal()))
            assert qn(s50, theta, lam) >= q_star - 1e-12

    def test_statistic_nonnegative_p_in_unit_interval(self, s20):
        r = epps_test(s20)
        assert r.statistic >= 0.0
        assert 0.0 <= r.p_value <= 1.0
        assert r.converged

    def test_short_series_rejected(self):
        with pytest.raises(InvalidInputError):
            epps_test(np.arange(9, dtype=float))

    def test_zero_variance_rejected(self):
        with pytest.raises(InvalidInputError, match="zero variance"):
            epps_test([2.0] * 30)

    def test_oversized_grid_rejected(self, s50):
        lam = Lambda(tuple(np.linspace(0.5, 5.0, 9)))
        with pytest.raises(InvalidInputError, match="grids larger"):
            epps_test(s50, lam)

    def test_lambda_validation(self):
        with pytest.raises(InvalidInputError):
            Lambda((1.0,))
        with pytest.raises(InvalidInputError):
            Lambda((0.0, 1.0))
        with pytest.raises(InvalidInputError):
            Lambda((2.0, 1.0))
