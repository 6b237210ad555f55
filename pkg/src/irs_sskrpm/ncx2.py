"""Distribution of the ML decision statistic xi for each error event.

For an error event the statistic is xi = ||G^H d||^2 with a deterministic
direction d in C^N that depends only on H and the hypothesis pair:

    antenna error (t -> t_hat, phase correct):   d = h_t - h_that
    phase error (m -> m_hat, antenna correct):   d = (e^{j phi_m} - e^{j phi_mhat}) h_t
    joint error:                                 d = e^{j phi_m} h_t - e^{j phi_mhat} h_that

Because H is deterministic and the diffuse part of G is Gaussian, G^H d is a
circularly-symmetric complex Gaussian vector of length n_r, so xi is exactly
noncentral chi-square with 2*n_r degrees of freedom, per-real-component
variance sigma^2 = nu_r/(2*(1+K_r)) * ||d||^2 and noncentrality
s^2 = K_r*nu_r/(1+K_r) * ||G_bar^H d||^2 (the squared norm of the mean).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .airlink import rpm_phases
from .config import SystemConfig, path_loss


@dataclass(frozen=True)
class ErrorEventMoments:
    """Gaussian moments of one error event: noncentrality s^2, per-component
    variance sigma^2, and n_r (the statistic has 2*n_r degrees of freedom).

    sigma_sq == 0 only for degenerate events whose two hypotheses produce
    identical signatures; such events carry no decision information.
    """

    s_sq: float
    sigma_sq: float
    n_r: int


def _moments_from_direction(d: np.ndarray, g_bar: np.ndarray, cfg: SystemConfig) -> ErrorEventMoments:
    nu_r = path_loss(cfg.rho_0, cfg.d_r, cfg.eta)
    sigma_sq = nu_r / (2.0 * (1.0 + cfg.k_r)) * float(np.sum(np.abs(d) ** 2))
    mean_vec = g_bar.conj().T @ d
    s_sq = cfg.k_r * nu_r / (1.0 + cfg.k_r) * float(np.sum(np.abs(mean_vec) ** 2))
    return ErrorEventMoments(s_sq=s_sq, sigma_sq=sigma_sq, n_r=g_bar.shape[1])


def moments_ssk(h: np.ndarray, g_bar: np.ndarray, cfg: SystemConfig,
                t: int, t_hat: int) -> ErrorEventMoments:
    """Moments of the antenna-index error statistic; independent of the applied phase."""
    if t == t_hat:
        raise ValueError(f"t={t} and t_hat={t_hat} must differ")
    d = h[:, t - 1] - h[:, t_hat - 1]
    return _moments_from_direction(d, g_bar, cfg)


def moments_rpm(h: np.ndarray, g_bar: np.ndarray, cfg: SystemConfig,
                t: int, m: int, m_hat: int) -> ErrorEventMoments:
    """Moments of the phase-index error statistic for a known antenna t.

    Both moments carry the common factor |e^{j phi_m} - e^{j phi_mhat}|^2
    = 2*(1 - cos(phi_m - phi_mhat)).
    """
    if m == m_hat:
        raise ValueError(f"m={m} and m_hat={m_hat} must differ")
    phases = rpm_phases(cfg.m_rpm)
    d = (np.exp(1j * phases[m - 1]) - np.exp(1j * phases[m_hat - 1])) * h[:, t - 1]
    return _moments_from_direction(d, g_bar, cfg)


def moments_joint(h: np.ndarray, g_bar: np.ndarray, cfg: SystemConfig,
                  t: int, t_hat: int, m: int, m_hat: int) -> ErrorEventMoments:
    """Moments of the statistic when both antenna and phase are detected wrongly.

    Uses the exact signature difference e^{j phi_m} h_t - e^{j phi_mhat} h_that,
    so the resulting distribution matches the statistic the ML detector
    actually sees (sampled-statistic moments, pairwise error rates and the
    sampled capacity all agree with it).
    """
    if t == t_hat:
        raise ValueError(f"t={t} and t_hat={t_hat} must differ")
    if m == m_hat:
        raise ValueError(f"m={m} and m_hat={m_hat} must differ")
    phases = rpm_phases(cfg.m_rpm)
    d = np.exp(1j * phases[m - 1]) * h[:, t - 1] - np.exp(1j * phases[m_hat - 1]) * h[:, t_hat - 1]
    return _moments_from_direction(d, g_bar, cfg)


def ncx2_pdf(x, mom: ErrorEventMoments):
    """Density of xi at x > 0.

    Assembled in log space with the exponentially scaled Bessel function
    ive(n_r - 1, .), which keeps the evaluation finite for large
    sqrt(x)*s/sigma^2. For s^2 = 0 the noncentral form is singular and the
    central limit applies: a gamma density with shape n_r and scale 2*sigma^2.
    """
    if mom.sigma_sq <= 0:
        raise ValueError(f"sigma_sq={mom.sigma_sq} must be positive for a density")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("x must be strictly positive")
    nr = mom.n_r
    two_sig = 2.0 * mom.sigma_sq
    if mom.s_sq == 0.0:
        log_pdf = ((nr - 1) * np.log(x) - x / two_sig
                   - nr * np.log(two_sig) - special.gammaln(nr))
        out = np.exp(log_pdf)
        return out if out.shape else float(out)
    s = np.sqrt(mom.s_sq)
    sqrt_x = np.sqrt(x)
    z = sqrt_x * s / mom.sigma_sq
    log_pdf = (-np.log(two_sig)
               + 0.5 * (nr - 1) * (np.log(x) - np.log(mom.s_sq))
               - (sqrt_x - s) ** 2 / two_sig
               + np.log(special.ive(nr - 1, z)))
    out = np.exp(log_pdf)
    return out if out.shape else float(out)


def laplace(mom: ErrorEventMoments, a):
    """E[exp(-a*xi)] = (1 + 2*a*sigma^2)^(-n_r) * exp(-a*s^2 / (1 + 2*a*sigma^2)).

    Finite for every a >= 0; negative a is accepted only inside the stability
    region 1 + 2*a*sigma^2 > 0.
    """
    a = np.asarray(a, dtype=float)
    denom = 1.0 + 2.0 * a * mom.sigma_sq
    if np.any(denom <= 0.0):
        raise ValueError("transform argument outside the stability region")
    out = denom ** (-mom.n_r) * np.exp(-a * mom.s_sq / denom)
    return out if out.shape else float(out)
