"""Analytical performance: pairwise error probabilities, the Hamming-weighted
union bound on the average bit error rate, high-SNR diversity slope, and the
closed-form ergodic capacity of the discrete-input channel.

PEP of an event with statistic xi is E[Q(sqrt(P_s*xi/2))]. Craig's finite
integral for Q turns this into (1/pi) * int_0^{pi/2} L(P_s/(4*sin^2 w)) dw
where L is the Laplace transform of xi; the Chiani two-exponential
approximation of Q gives the closed form L(P_s/4)/12 + L(P_s/3)/4.

`paper_literal_args=True` doubles the transform arguments (P_s/(2*sin^2 w),
and {P_s/2, 2*P_s/3} in the closed form) for side-by-side comparison with
texts that use that convention; the default arguments are the ones consistent
with Q(sqrt(P_s*xi/2)) and are the ones validated against direct quadrature
and Monte-Carlo.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .channel import ChannelPair
from .config import SystemConfig
from .ncx2 import ErrorEventMoments, laplace, moments_joint, moments_rpm, moments_ssk


class NumericalError(RuntimeError):
    """A quadrature or evaluation failed to reach its required accuracy."""


#: Gauss-Legendre order for the Craig integral (>= 64); convergence is
#: checked against the doubled order on every evaluation.
GL_ORDER = 96

_MAX_REL_SPREAD = 1e-9


@lru_cache(maxsize=8)
def _gl_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights mapped from [-1, 1] to (0, pi/2)."""
    x, w = np.polynomial.legendre.leggauss(order)
    return (x + 1.0) * (np.pi / 4.0), w * (np.pi / 4.0)


@dataclass(frozen=True)
class PepValue:
    """Pairwise error probability: exact Craig-integral value and the
    Chiani closed-form approximation."""

    exact: float
    chiani: float


def _craig_at_order(mom: ErrorEventMoments, p_s: float, order: int, scale: float) -> float:
    omega, w = _gl_nodes(order)
    args = scale * p_s / (4.0 * np.sin(omega) ** 2)
    return float(np.dot(w, laplace(mom, args))) / np.pi


def pep_of_event(mom: ErrorEventMoments, p_s: float,
                 paper_literal_args: bool = False) -> PepValue:
    """PEP of a single error event at transmit power p_s (unit noise).

    The exact value is the Craig integral evaluated with fixed-order
    Gauss-Legendre quadrature; a relative spread above 1e-9 between the
    base and doubled orders raises NumericalError.
    """
    if p_s < 0:
        raise ValueError(f"p_s={p_s} must be non-negative")
    scale = 2.0 if paper_literal_args else 1.0
    lo = _craig_at_order(mom, p_s, GL_ORDER, scale)
    hi = _craig_at_order(mom, p_s, 2 * GL_ORDER, scale)
    spread = abs(hi - lo) / max(abs(hi), 1e-300)
    if spread > _MAX_REL_SPREAD:
        raise NumericalError(
            f"Craig quadrature did not converge: spread {spread:.3e} at orders "
            f"{GL_ORDER}/{2 * GL_ORDER}")
    chiani = (laplace(mom, scale * p_s / 4.0) / 12.0
              + laplace(mom, scale * p_s / 3.0) / 4.0)
    return PepValue(exact=hi, chiani=float(chiani))


def pep_ssk(chan: ChannelPair, cfg: SystemConfig, t: int, t_hat: int, p_s: float,
            paper_literal_args: bool = False) -> PepValue:
    """Average PEP of the antenna-index error t -> t_hat.

    The statistic is the same for every applied reflection phase (the unit
    phase factor drops out of the norm), so the average over phases equals
    the single-event value.
    """
    mom = moments_ssk(chan.h, chan.g_bar, cfg, t, t_hat)
    return pep_of_event(mom, p_s, paper_literal_args)


def pep_rpm(chan: ChannelPair, cfg: SystemConfig, m: int, m_hat: int, p_s: float,
            paper_literal_args: bool = False) -> PepValue:
    """Average PEP of the phase error m -> m_hat, averaged over the active antenna."""
    vals = [pep_of_event(moments_rpm(chan.h, chan.g_bar, cfg, t, m, m_hat),
                         p_s, paper_literal_args)
            for t in range(1, cfg.n_t + 1)]
    return PepValue(exact=float(np.mean([v.exact for v in vals])),
                    chiani=float(np.mean([v.chiani for v in vals])))


def pep_joint(chan: ChannelPair, cfg: SystemConfig, t: int, t_hat: int,
              m: int, m_hat: int, p_s: float,
              paper_literal_args: bool = False) -> PepValue:
    """PEP of the simultaneous antenna and phase error."""
    mom = moments_joint(chan.h, chan.g_bar, cfg, t, t_hat, m, m_hat)
    return pep_of_event(mom, p_s, paper_literal_args)


def _hamming(a: int, b: int) -> int:
    return bin(a ^ b).count("1")


def aber_union_terms(chan: ChannelPair, cfg: SystemConfig, p_s: float,
                     exact_pep: bool = False,
                     paper_literal_args: bool = False) -> tuple[float, float, float]:
    """The three union-bound components (antenna-only, phase-only, joint).

    Each pairwise term is weighted by the Hamming distance between the bit
    labels of the two hypotheses; terms with zero distance vanish, so the
    sums skip equal indices.
    """
    b = cfg.bits_total
    if b == 0:
        return (0.0, 0.0, 0.0)
    pick = (lambda v: v.exact) if exact_pep else (lambda v: v.chiani)
    n_t, m_rpm = cfg.n_t, cfg.m_rpm

    p_ssk = 0.0
    for t in range(1, n_t + 1):
        for t_hat in range(1, n_t + 1):
            if t_hat == t:
                continue
            d = _hamming(t - 1, t_hat - 1)
            p_ssk += d * pick(pep_ssk(chan, cfg, t, t_hat, p_s, paper_literal_args))
    p_ssk /= n_t * b

    p_rpm = 0.0
    for m in range(1, m_rpm + 1):
        for m_hat in range(1, m_rpm + 1):
            if m_hat == m:
                continue
            d = _hamming(m - 1, m_hat - 1)
            p_rpm += d * pick(pep_rpm(chan, cfg, m, m_hat, p_s, paper_literal_args))
    p_rpm /= m_rpm * b

    p_joint = 0.0
    for m in range(1, m_rpm + 1):
        for m_hat in range(1, m_rpm + 1):
            if m_hat == m:
                continue
            for t in range(1, n_t + 1):
                for t_hat in range(1, n_t + 1):
                    if t_hat == t:
                        continue
                    d = _hamming(t - 1, t_hat - 1) + _hamming(m - 1, m_hat - 1)
                    p_joint += d * pick(
                        pep_joint(chan, cfg, t, t_hat, m, m_hat, p_s, paper_literal_args))
    p_joint /= m_rpm * n_t * b

    return (p_ssk, p_rpm, p_joint)


def aber_union(chan: ChannelPair, cfg: SystemConfig, p_s: float,
               exact_pep: bool = False, paper_literal_args: bool = False) -> float:
    """Union bound on the average bit error rate.

    Uses the Chiani closed-form PEP by default; exact_pep=True switches every
    term to the Craig integral.
    """
    return float(sum(aber_union_terms(chan, cfg, p_s, exact_pep, paper_literal_args)))


def diversity_slope(snr_db, aber) -> float:
    """Empirical diversity order: the negated least-squares slope of
    log10(aber) against snr_db / 10."""
    snr_db = np.asarray(snr_db, dtype=float)
    aber = np.asarray(aber, dtype=float)
    keep = aber > 0
    if keep.sum() < 2:
        raise ValueError("need at least 2 points with positive error rate")
    coeff = np.polyfit(snr_db[keep] / 10.0, np.log10(aber[keep]), 1)
    return float(-coeff[0])


def capacity_closed(chan: ChannelPair, cfg: SystemConfig, p_s: float) -> float:
    """Closed-form ergodic capacity of the joint discrete-input channel,
    in bits per channel use.

    C = 2*log2(n_t*M) - log2(n_t*M + sum over pairs with both indices
    different of L_xi(P_s/2)); it grows from the zero-power baseline to the
    limit log2(n_t*M).
    """
    if p_s < 0:
        raise ValueError(f"p_s={p_s} must be non-negative")
    k = cfg.n_t * cfg.m_rpm
    total = 0.0
    for m in range(1, cfg.m_rpm + 1):
        for m_hat in range(1, cfg.m_rpm + 1):
            if m_hat == m:
                continue
            for t in range(1, cfg.n_t + 1):
                for t_hat in range(1, cfg.n_t + 1):
                    if t_hat == t:
                        continue
                    mom = moments_joint(chan.h, chan.g_bar, cfg, t, t_hat, m, m_hat)
                    total += laplace(mom, p_s / 2.0)
    return 2.0 * math.log2(k) - math.log2(k + total)
