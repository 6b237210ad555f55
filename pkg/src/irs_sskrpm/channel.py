"""Array responses and channel matrices.

The BS->IRS link H is a deterministic rank-1 line-of-sight outer product; the
IRS->UT link G is Rician: a rank-1 LoS component G_bar plus an i.i.d.
circularly-symmetric Gaussian part, mixed by the K-factor.

IRS elements are enumerated y-major: the flat index of grid element
(nx, ny) is ny * n_x + nx. All sums downstream run over all N elements,
so results do not depend on this choice, but it is fixed so that fixtures
and dumps are reproducible.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .config import SystemConfig, path_loss


@dataclass
class ChannelPair:
    """One channel realization.

    h      -- BS->IRS matrix, (N, n_t), deterministic.
    g      -- IRS->UT matrix, (N, n_r); None for analytics-only use.
    g_bar  -- unit-modulus LoS component of g, (N, n_r).
    """

    h: np.ndarray
    g: np.ndarray | None
    g_bar: np.ndarray


def steering_irs(phi_a: float, phi_e: float, n_x: int, n_y: int,
                 kappa_over_lambda: float) -> np.ndarray:
    """Planar-array response of the IRS; unit-modulus, first entry exactly 1.

    Entry for grid index (nx, ny) is
    exp(-j*2*pi*(kappa/lambda)*(nx*sin(phi_e)*cos(phi_a) + ny*cos(phi_e))),
    flattened y-major.
    """
    if n_x < 1 or n_y < 1:
        raise ValueError(f"grid dimensions must be >= 1, got n_x={n_x}, n_y={n_y}")
    nx = np.arange(n_x)
    ny = np.arange(n_y)
    # shape (n_y, n_x); C-order ravel gives flat index ny * n_x + nx
    phase = nx[None, :] * (np.sin(phi_e) * np.cos(phi_a)) + ny[:, None] * np.cos(phi_e)
    return np.exp(-2j * np.pi * kappa_over_lambda * phase).ravel()


def steering_bs(phi_d: float, n_t: int, delta_over_lambda: float) -> np.ndarray:
    """Uniform-linear-array response; element k is exp(-j*2*pi*(delta/lambda)*k*sin(phi_d))."""
    if n_t < 1:
        raise ValueError(f"array length must be >= 1, got n_t={n_t}")
    return np.exp(-2j * np.pi * delta_over_lambda * np.arange(n_t) * np.sin(phi_d))


def build_h(cfg: SystemConfig) -> np.ndarray:
    """Deterministic BS->IRS matrix sqrt(nu) * a_irs(phi_a, phi_e) outer a_bs(phi_d)."""
    nu = path_loss(cfg.rho_0, cfg.d_t, cfg.eta)
    a_irs = steering_irs(cfg.phi_a, cfg.phi_e, cfg.n_x, cfg.n_y, cfg.kappa_over_lambda)
    a_bs = steering_bs(cfg.phi_d, cfg.n_t, cfg.delta_over_lambda)
    return np.sqrt(nu) * np.outer(a_irs, a_bs)


def build_g_bar(cfg: SystemConfig) -> np.ndarray:
    """Unit-modulus LoS component of the IRS->UT matrix.

    The UT array response reuses the ULA formula at the configured
    delta/lambda spacing (the UT spacing is not specified independently).
    """
    a_irs = steering_irs(cfg.psi_a, cfg.psi_e, cfg.n_x, cfg.n_y, cfg.kappa_over_lambda)
    a_ut = steering_bs(cfg.psi_d, cfg.n_r, cfg.delta_over_lambda)
    return np.outer(a_irs, a_ut)


def rician_weights(cfg: SystemConfig) -> tuple[float, float]:
    """(LoS amplitude, NLoS amplitude) of the IRS->UT mixture:
    sqrt(K*nu_r/(1+K)) and sqrt(nu_r/(1+K))."""
    nu_r = path_loss(cfg.rho_0, cfg.d_r, cfg.eta)
    return (np.sqrt(cfg.k_r * nu_r / (1.0 + cfg.k_r)),
            np.sqrt(nu_r / (1.0 + cfg.k_r)))


def sample_g(cfg: SystemConfig, g_bar: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Draw one Rician IRS->UT realization.

    G = sqrt(K*nu_r/(1+K)) * g_bar + sqrt(nu_r/(1+K)) * W with W entries
    i.i.d. CN(0, 1) (real and imaginary parts each of variance 1/2).
    """
    n, n_r = g_bar.shape
    if (n, n_r) != (cfg.n_elements, cfg.n_r):
        raise ValueError(f"g_bar has shape {g_bar.shape}, expected {(cfg.n_elements, cfg.n_r)}")
    w_los, w_nlos = rician_weights(cfg)
    parts = rng.standard_normal((2, n, n_r))
    w = (parts[0] + 1j * parts[1]) * np.sqrt(0.5)
    return w_los * g_bar + w_nlos * w


def make_channel(cfg: SystemConfig, rng: np.random.Generator | None = None) -> ChannelPair:
    """Build H and G_bar; additionally sample G when an RNG stream is supplied."""
    g_bar = build_g_bar(cfg)
    g = sample_g(cfg, g_bar, rng) if rng is not None else None
    return ChannelPair(h=build_h(cfg), g=g, g_bar=g_bar)


# ---- binary fixture dump ----------------------------------------------------
#
# Layout: header of 4 little-endian int64 (N, n_t, n_r, has_g), then H,
# G_bar and (when present) G, each row-major as interleaved (re, im) float64.

_HEADER = struct.Struct("<4q")


def _write_complex(fh, a: np.ndarray) -> None:
    inter = np.empty(a.shape + (2,), dtype="<f8")
    inter[..., 0] = a.real
    inter[..., 1] = a.imag
    fh.write(inter.tobytes(order="C"))


def _read_complex(fh, shape: tuple[int, int]) -> np.ndarray:
    count = shape[0] * shape[1] * 2
    flat = np.frombuffer(fh.read(count * 8), dtype="<f8", count=count)
    inter = flat.reshape(shape + (2,))
    return (inter[..., 0] + 1j * inter[..., 1]).astype(np.complex128)


def dump_channel(chan: ChannelPair, path: str) -> None:
    """Write a ChannelPair regression fixture in the documented binary layout."""
    n, n_t = chan.h.shape
    n_r = chan.g_bar.shape[1]
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(n, n_t, n_r, 0 if chan.g is None else 1))
        _write_complex(fh, chan.h)
        _write_complex(fh, chan.g_bar)
        if chan.g is not None:
            _write_complex(fh, chan.g)


def load_channel(path: str) -> ChannelPair:
    """Read back a fixture written by dump_channel."""
    with open(path, "rb") as fh:
        n, n_t, n_r, has_g = _HEADER.unpack(fh.read(_HEADER.size))
        h = _read_complex(fh, (n, n_t))
        g_bar = _read_complex(fh, (n, n_r))
        g = _read_complex(fh, (n, n_r)) if has_g else None
    return ChannelPair(h=h, g=g, g_bar=g_bar)
