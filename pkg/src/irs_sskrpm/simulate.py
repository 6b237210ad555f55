"""Monte-Carlo estimation of the bit error rate (exact signal model plus the
joint ML detector) and of the sampled mutual-information expectation, with
reproducible parallel RNG.

Reproducibility scheme: work is split into fixed-size chunks of trials and
the RNG for chunk c of sweep point i is a Philox generator keyed by
(seed, domain, i, c). Chunk boundaries never depend on the worker count and
partial results are reduced in chunk order (integer error counts exactly,
float partials in a fixed order), so a sweep is bit-identical for any number
of workers.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .airlink import rpm_phases
from .channel import build_g_bar, build_h, make_channel, rician_weights
from .config import SystemConfig, validate
from .metrics import NumericalError, aber_union, capacity_closed

#: Trials per RNG chunk. Fixed: changing it changes every simulated result.
CHUNK_TRIALS = 8192

_DOMAIN_BER = 0
_DOMAIN_CAPACITY = 1


@dataclass
class SweepRecord:
    """One (SNR, config) row of a sweep; fields not requested by the mode are None."""

    snr_db: float
    aber_analytical: float | None
    aber_sim: float | None
    aber_stderr: float | None
    cap_closed: float | None
    cap_sim: float | None
    trials: int


def resolve_workers(workers: int | None = None) -> int:
    """Worker count for chunk processing; the IRS_SSKRPM_THREADS environment
    variable caps it (and supplies the default when workers is None)."""
    cap = None
    env = os.environ.get("IRS_SSKRPM_THREADS")
    if env is not None:
        cap = max(1, int(env))
    if workers is None:
        workers = cap if cap is not None else 1
    return max(1, min(workers, cap) if cap is not None else workers)


def _chunk_rng(seed: int, domain: int, point_index: int, chunk_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(domain, point_index, chunk_index))
    return np.random.Generator(np.random.Philox(ss))


def _chunk_sizes(total: int) -> list[int]:
    full, rest = divmod(total, CHUNK_TRIALS)
    return [CHUNK_TRIALS] * full + ([rest] if rest else [])


def _ber_chunk(cfg: SystemConfig, p_s: float, seed: int, point_index: int,
               chunk_index: int, n_trials: int) -> int:
    """Simulate one chunk of trials; returns the bit-error count."""
    rng = _chunk_rng(seed, _DOMAIN_BER, point_index, chunk_index)
    n, n_r, n_t, m_rpm = cfg.n_elements, cfg.n_r, cfg.n_t, cfg.m_rpm
    b = cfg.bits_total
    h = build_h(cfg)
    g_bar = build_g_bar(cfg)
    w_los, w_nlos = rician_weights(cfg)
    phasors = np.exp(1j * rpm_phases(m_rpm))
    sqrt_p = math.sqrt(p_s)

    # Fixed draw order per chunk: symbol codes, diffuse channel part, noise.
    code = rng.integers(0, n_t * m_rpm, size=n_trials)
    gw = rng.standard_normal((2, n_trials, n, n_r))
    zw = rng.standard_normal((2, n_trials, n_r))
    g = w_los * g_bar[None] + w_nlos * math.sqrt(0.5) * (gw[0] + 1j * gw[1])
    z = math.sqrt(0.5) * (zw[0] + 1j * zw[1])

    base = np.einsum("bnr,nt->brt", g.conj(), h)          # G^H h_t per trial
    t_idx = code // m_rpm
    m_idx = code % m_rpm
    y = sqrt_p * phasors[m_idx][:, None] * base[np.arange(n_trials), :, t_idx] + z

    energy = np.sum(np.abs(base) ** 2, axis=1)            # (trials, n_t)
    ip = np.einsum("brt,br->bt", base.conj(), y)          # (trials, n_t)
    score = (p_s * energy[:, :, None]
             - 2.0 * sqrt_p * np.real(ip[:, :, None] * phasors.conj()[None, None, :]))
    detected = np.argmin(score.reshape(n_trials, n_t * m_rpm), axis=1)

    popcount = np.array([bin(v).count("1") for v in range(1 << b)])
    return int(popcount[code ^ detected].sum())


def simulate_ber(cfg: SystemConfig, p_s: float, trials: int, seed: int,
                 point_index: int = 0, workers: int | None = 1,
                 rel_precision: float | None = None) -> tuple[float, float]:
    """Estimate the average bit error rate at transmit power p_s.

    Per trial: uniform information bits, channel redraw, noisy reception and
    joint ML detection; returns (errors / (bits * trials), binomial standard
    error over all transmitted bits). Deterministic for fixed (seed, trials,
    cfg) regardless of the worker count.

    rel_precision, when set, stops early once stderr/aber falls below it
    (serial mode only; the trial count then depends on the data).
    """
    validate(cfg)
    if trials < 1:
        raise ValueError(f"trials={trials} must be >= 1")
    b = cfg.bits_total
    if b == 0:
        raise ValueError("nothing to transmit: n_t=1 and m_rpm=1 carry zero bits")
    sizes = _chunk_sizes(trials)
    workers = resolve_workers(workers)

    if rel_precision is not None:
        errors = 0
        done = 0
        for c, size in enumerate(sizes):
            errors += _ber_chunk(cfg, p_s, seed, point_index, c, size)
            done += size
            aber = errors / (b * done)
            stderr = math.sqrt(max(aber * (1.0 - aber), 0.0) / (done * b))
            if aber > 0 and stderr / aber < rel_precision:
                return aber, stderr
        return aber, stderr

    if workers > 1 and len(sizes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(_ber_chunk, [cfg] * len(sizes), [p_s] * len(sizes),
                                   [seed] * len(sizes), [point_index] * len(sizes),
                                   range(len(sizes)), sizes, chunksize=1))
    else:
        counts = [_ber_chunk(cfg, p_s, seed, point_index, c, size)
                  for c, size in enumerate(sizes)]
    errors = sum(counts)  # exact integer reduction, order-insensitive
    aber = errors / (b * trials)
    stderr = math.sqrt(max(aber * (1.0 - aber), 0.0) / (trials * b))
    return aber, stderr


def _capacity_chunk(cfg: SystemConfig, p_s: float, seed: int, point_index: int,
                    chunk_index: int, n_samples: int) -> tuple[float, float]:
    """Partial sums (sum_a, sum_a_sq) of the per-sample aggregate
    a_j = sum over hypothesis pairs of exp(-p_s * xi_j / 2)."""
    rng = _chunk_rng(seed, _DOMAIN_CAPACITY, point_index, chunk_index)
    n, n_r, n_t, m_rpm = cfg.n_elements, cfg.n_r, cfg.n_t, cfg.m_rpm
    h = build_h(cfg)
    g_bar = build_g_bar(cfg)
    w_los, w_nlos = rician_weights(cfg)
    phasors = np.exp(1j * rpm_phases(m_rpm))

    gw = rng.standard_normal((2, n_samples, n, n_r))
    g = w_los * g_bar[None] + w_nlos * math.sqrt(0.5) * (gw[0] + 1j * gw[1])
    base = np.einsum("bnr,nt->brt", g.conj(), h)          # (samples, n_r, n_t)

    agg = np.zeros(n_samples)
    for m in range(m_rpm):
        for m_hat in range(m_rpm):
            if m_hat == m:
                continue
            for t in range(n_t):
                for t_hat in range(n_t):
                    if t_hat == t:
                        continue
                    diff = phasors[m] * base[:, :, t] - phasors[m_hat] * base[:, :, t_hat]
                    xi = np.sum(np.abs(diff) ** 2, axis=1)
                    agg += np.exp(-0.5 * p_s * xi)
    return float(agg.sum()), float(np.dot(agg, agg))


def simulate_capacity(cfg: SystemConfig, p_s: float, channel_samples: int, seed: int,
                      point_index: int = 0, workers: int | None = 1,
                      with_stderr: bool = False):
    """Sampled ergodic capacity: every E[exp(-P_s*xi/2)] is averaged over
    redrawn channels with xi computed directly from the signature difference
    (an independent code path from the moment-based closed form).

    Returns the capacity in bits per channel use, or (capacity, stderr) when
    with_stderr is True.
    """
    validate(cfg)
    if channel_samples < 1:
        raise ValueError(f"channel_samples={channel_samples} must be >= 1")
    k = cfg.n_t * cfg.m_rpm
    sizes = _chunk_sizes(channel_samples)
    workers = resolve_workers(workers)
    if workers > 1 and len(sizes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_capacity_chunk, [cfg] * len(sizes), [p_s] * len(sizes),
                                     [seed] * len(sizes), [point_index] * len(sizes),
                                     range(len(sizes)), sizes, chunksize=1))
    else:
        partials = [_capacity_chunk(cfg, p_s, seed, point_index, c, size)
                    for c, size in enumerate(sizes)]
    # reduce in chunk order so the float result is worker-count independent
    sum_a = 0.0
    sum_a_sq = 0.0
    for pa, pa2 in partials:
        sum_a += pa
        sum_a_sq += pa2
    n = channel_samples
    mean_a = sum_a / n
    cap = 2.0 * math.log2(k) - math.log2(k + mean_a)
    if not with_stderr:
        return cap
    if n > 1:
        var_a = max(sum_a_sq / n - mean_a ** 2, 0.0) * n / (n - 1)
        stderr = math.sqrt(var_a / n) / ((k + mean_a) * math.log(2.0))
    else:
        stderr = float("inf")
    return cap, stderr


def run_sweep(cfg: SystemConfig, mode: str = "both", exact_pep: bool = False,
              paper_literal_args: bool = False, workers: int | None = 1,
              capacity_samples: int | None = None) -> list[SweepRecord]:
    """Evaluate every SNR point of cfg's grid.

    mode selects what is filled in: "analytic" (union bound and closed-form
    capacity), "sim" (Monte-Carlo ABER and sampled capacity at cfg.trials
    per point) or "both". Rows are ordered by SNR and the whole sweep is
    deterministic for a fixed cfg.seed.
    """
    validate(cfg)
    if mode not in ("analytic", "sim", "both"):
        raise ValueError(f"mode={mode!r} must be analytic, sim or both")
    chan = make_channel(cfg)
    samples = cfg.trials if capacity_samples is None else capacity_samples
    records: list[SweepRecord] = []
    for i, snr_db in enumerate(cfg.snr_grid_db):
        p_s = 10.0 ** (snr_db / 10.0)
        try:
            aber_a = aber_sim = stderr = cap_c = cap_s = None
            if mode in ("analytic", "both"):
                aber_a = aber_union(chan, cfg, p_s, exact_pep, paper_literal_args)
                cap_c = capacity_closed(chan, cfg, p_s)
            if mode in ("sim", "both"):
                aber_sim, stderr = simulate_ber(cfg, p_s, cfg.trials, cfg.seed,
                                                point_index=i, workers=workers)
                cap_s = simulate_capacity(cfg, p_s, samples, cfg.seed,
                                          point_index=i, workers=workers)
        except NumericalError as exc:
            raise NumericalError(f"sweep point snr_db={snr_db}: {exc}") from exc
        records.append(SweepRecord(snr_db=snr_db, aber_analytical=aber_a,
                                   aber_sim=aber_sim, aber_stderr=stderr,
                                   cap_closed=cap_c, cap_sim=cap_s,
                                   trials=cfg.trials))
    return records
