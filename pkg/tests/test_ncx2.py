import numpy as np
import pytest
from dataclasses import replace

from irs_sskrpm import (ErrorEventMoments, SystemConfig, build_g_bar, build_h,
                        laplace, moments_joint, moments_rpm, moments_ssk,
                        ncx2_pdf, validate)
from oracles import (event_direction, laplace_by_quadrature, pdf_mass,
                     pdf_mean, sample_xi)


@pytest.fixture(scope="module")
def hg(cfg):
    return build_h(cfg), build_g_bar(cfg)


# ---- moment builders ---------------------------------------------------------

def test_moments_ssk_rejects_equal_indices(hg, cfg):
    h, g_bar = hg
    with pytest.raises(ValueError):
        moments_ssk(h, g_bar, cfg, 1, 1)


def test_moments_rpm_rejects_equal_indices(hg, cfg):
    h, g_bar = hg
    with pytest.raises(ValueError):
        moments_rpm(h, g_bar, cfg, 1, 2, 2)


def test_moments_joint_rejects_equal_indices(hg, cfg):
    h, g_bar = hg
    with pytest.raises(ValueError):
        moments_joint(h, g_bar, cfg, 1, 1, 1, 2)
    with pytest.raises(ValueError):
        moments_joint(h, g_bar, cfg, 1, 2, 2, 2)


def test_moments_rayleigh_limit_is_central(hg):
    h, g_bar = hg
    cfg0 = validate(SystemConfig(k_r=0.0))
    assert moments_ssk(h, g_bar, cfg0, 1, 2).s_sq == 0.0
    assert moments_rpm(h, g_bar, cfg0, 1, 1, 2).s_sq == 0.0
    assert moments_joint(h, g_bar, cfg0, 1, 2, 1, 2).s_sq == 0.0


def test_moments_identical_columns_are_degenerate(cfg):
    g_bar = build_g_bar(cfg)
    col = np.exp(1j * np.linspace(0, 1, cfg.n_elements))
    h_same = np.stack([col, col], axis=1)
    mom = moments_ssk(h_same, g_bar, cfg, 1, 2)
    assert mom.sigma_sq == 0.0 and mom.s_sq == 0.0


def test_moments_ssk_matches_stated_formula(hg, cfg):
    h, g_bar = hg
    mom = moments_ssk(h, g_bar, cfg, 1, 2)
    dh = h[:, 0] - h[:, 1]
    sigma_expected = cfg.nu_r / (2 * (1 + cfg.k_r)) * np.sum(np.abs(dh) ** 2)
    assert mom.sigma_sq == pytest.approx(sigma_expected, rel=1e-13)
    assert mom.n_r == cfg.n_r


def test_moments_rpm_matches_stated_formula(hg, cfg):
    # binary phases: the phase gap factor 2*(1 - cos(pi)) = 4
    h, g_bar = hg
    mom = moments_rpm(h, g_bar, cfg, 1, 1, 2)
    expected = 2 * cfg.nu_r / (1 + cfg.k_r) * np.sum(np.abs(h[:, 0]) ** 2)
    assert mom.sigma_sq == pytest.approx(expected, rel=1e-13)


def test_moments_rpm_small_phase_gap_vanishes(cfg):
    # with a large constellation, adjacent phases give a small gap factor
    big = validate(replace(cfg, m_rpm=256))
    h, g_bar = build_h(big), build_g_bar(big)
    adjacent = moments_rpm(h, g_bar, big, 1, 1, 2)
    opposite = moments_rpm(h, g_bar, big, 1, 1, 129)
    gap = 2 * (1 - np.cos(2 * np.pi / 256))
    assert adjacent.sigma_sq == pytest.approx(opposite.sigma_sq * gap / 4.0, rel=1e-10)
    assert adjacent.sigma_sq < 1e-3 * opposite.sigma_sq


def test_moments_joint_reduces_to_rpm_when_alternative_column_is_zero(cfg):
    # with h_that == 0 the joint direction is exp(j*phi_m) * h_t, so sigma^2
    # equals the phase-error sigma^2 without the phase-gap factor
    g_bar = build_g_bar(cfg)
    col = np.exp(1j * np.linspace(0.2, 2.0, cfg.n_elements))
    h_synth = np.stack([col, np.zeros(cfg.n_elements, dtype=complex)], axis=1)
    mom = moments_joint(h_synth, g_bar, cfg, 1, 2, 1, 2)
    base = cfg.nu_r / (2 * (1 + cfg.k_r)) * np.sum(np.abs(col) ** 2)
    assert mom.sigma_sq == pytest.approx(base, rel=1e-13)


@pytest.mark.parametrize("kind,idx", [("ssk", (1, 2, 1, 1)),
                                      ("rpm", (1, 1, 1, 2)),
                                      ("joint", (1, 2, 1, 2))])
def test_empirical_moments_match(cfg, hg, kind, idx):
    # mean s^2 + 2 n_r sigma^2 and variance 4 n_r sigma^4 + 4 sigma^2 s^2
    h, g_bar = hg
    t, t_hat, m, m_hat = idx
    builder = {"ssk": lambda: moments_ssk(h, g_bar, cfg, t, t_hat),
               "rpm": lambda: moments_rpm(h, g_bar, cfg, t, m, m_hat),
               "joint": lambda: moments_joint(h, g_bar, cfg, t, t_hat, m, m_hat)}[kind]
    mom = builder()
    d = event_direction(cfg, h, kind, t, t_hat, m, m_hat)
    xi = sample_xi(cfg, d, 100_000, np.random.default_rng(42))
    n = xi.size
    mean_th = mom.s_sq + 2 * mom.n_r * mom.sigma_sq
    var_th = 4 * mom.n_r * mom.sigma_sq ** 2 + 4 * mom.sigma_sq * mom.s_sq
    se_mean = xi.std(ddof=1) / np.sqrt(n)
    assert abs(xi.mean() - mean_th) < 3 * se_mean
    centered_sq = (xi - xi.mean()) ** 2
    se_var = centered_sq.std(ddof=1) / np.sqrt(n)
    assert abs(xi.var(ddof=1) - var_th) < 3 * se_var


def test_empirical_laplace_matches(cfg, hg):
    h, g_bar = hg
    mom = moments_joint(h, g_bar, cfg, 1, 2, 1, 2)
    d = event_direction(cfg, h, "joint", 1, 2, 1, 2)
    xi = sample_xi(cfg, d, 100_000, np.random.default_rng(3))
    rng = np.random.default_rng(8)
    for a in rng.uniform(0.05, 3.0, size=5):
        samples = np.exp(-a * xi)
        se = samples.std(ddof=1) / np.sqrt(samples.size)
        assert abs(samples.mean() - laplace(mom, a)) < 3 * se


# ---- density -----------------------------------------------------------------

def test_pdf_rejects_bad_domain():
    mom = ErrorEventMoments(s_sq=1.0, sigma_sq=0.5, n_r=2)
    with pytest.raises(ValueError):
        ncx2_pdf(0.0, mom)
    with pytest.raises(ValueError):
        ncx2_pdf(-1.0, mom)
    with pytest.raises(ValueError):
        ncx2_pdf(1.0, ErrorEventMoments(s_sq=0.0, sigma_sq=0.0, n_r=1))


def test_pdf_central_single_antenna_is_exponential():
    mom = ErrorEventMoments(s_sq=0.0, sigma_sq=0.7, n_r=1)
    x = np.linspace(0.01, 8.0, 50)
    np.testing.assert_allclose(ncx2_pdf(x, mom),
                               np.exp(-x / 1.4) / 1.4, rtol=1e-12)


@pytest.mark.parametrize("mom", [
    ErrorEventMoments(s_sq=0.0, sigma_sq=1.3, n_r=1),
    ErrorEventMoments(s_sq=3.0, sigma_sq=1.0, n_r=2),
    ErrorEventMoments(s_sq=25.0, sigma_sq=0.2, n_r=3),
    ErrorEventMoments(s_sq=0.04, sigma_sq=4.0, n_r=4),
])
def test_pdf_normalizes(mom):
    assert pdf_mass(mom) == pytest.approx(1.0, abs=1e-8)


def test_pdf_mean_identity_by_quadrature():
    mom = ErrorEventMoments(s_sq=3.0, sigma_sq=1.0, n_r=2)
    assert pdf_mean(mom) == pytest.approx(7.0, abs=1e-6)


def test_pdf_nonnegative_and_unimodal(rng):
    for _ in range(15):
        mom = ErrorEventMoments(s_sq=float(rng.uniform(0, 8.0)),
                                sigma_sq=float(rng.uniform(0.1, 3.0)),
                                n_r=int(rng.integers(1, 5)))
        x = np.linspace(1e-6, mom.s_sq + 2 * mom.n_r * mom.sigma_sq + 40 * mom.sigma_sq, 800)
        f = ncx2_pdf(x, mom)
        assert np.all(f >= 0)
        d = np.diff(f)
        falling = False
        for step in d:
            if step < -1e-15:
                falling = True
            elif step > 1e-15:
                assert not falling, "density rose again after its mode"


def test_pdf_large_argument_no_overflow():
    mom = ErrorEventMoments(s_sq=4e4, sigma_sq=0.01, n_r=2)
    val = ncx2_pdf(mom.s_sq * 1.001, mom)
    assert np.isfinite(val) and val > 0


# ---- Laplace transform --------------------------------------------------------

def test_laplace_at_zero_is_one():
    mom = ErrorEventMoments(s_sq=2.0, sigma_sq=0.5, n_r=3)
    assert laplace(mom, 0.0) == 1.0


def test_laplace_central_closed_form():
    mom = ErrorEventMoments(s_sq=0.0, sigma_sq=0.8, n_r=2)
    a = 1.7
    assert laplace(mom, a) == pytest.approx((1 + 2 * a * 0.8) ** -2, rel=1e-14)


def test_laplace_stability_region():
    mom = ErrorEventMoments(s_sq=1.0, sigma_sq=1.0, n_r=1)
    assert laplace(mom, -0.2) > 1.0
    with pytest.raises(ValueError):
        laplace(mom, -0.5)


def test_laplace_against_quadrature(rng):
    for _ in range(12):
        mom = ErrorEventMoments(s_sq=float(rng.uniform(0, 6.0)),
                                sigma_sq=float(rng.uniform(0.1, 2.5)),
                                n_r=int(rng.integers(1, 5)))
        a = float(rng.uniform(0.01, 4.0))
        ref = laplace_by_quadrature(mom, a)
        assert laplace(mom, a) == pytest.approx(ref, rel=1e-6)


def test_laplace_decreasing_and_log_convex():
    mom = ErrorEventMoments(s_sq=2.5, sigma_sq=0.6, n_r=2)
    a = np.linspace(0.0, 20.0, 201)
    vals = laplace(mom, a)
    assert np.all(np.diff(vals) < 0)
    log_vals = np.log(vals)
    assert np.all(np.diff(log_vals, 2) >= -1e-12)
