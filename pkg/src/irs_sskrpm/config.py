"""Scenario parameters: a single validated record consumed by every other module.

Conventions baked in here:

* noise power is 1 per receive antenna, so "SNR (dB)" is just 10*log10(P_s);
* element spacings are configured as ratios kappa/lambda and delta/lambda;
* angles are plain radians and are always pinned explicitly in config files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace


class ConfigError(ValueError):
    """Raised for an invalid parameter value or a malformed config file."""


def path_loss(rho_0: float, d: float, eta: float) -> float:
    """Distance power law rho_0 * d**(-eta); d in the same unit as the reference distance."""
    if rho_0 <= 0 or d <= 0 or eta <= 0:
        raise ValueError(f"path_loss requires positive arguments, got rho_0={rho_0}, d={d}, eta={eta}")
    return rho_0 * d ** (-eta)


@dataclass(frozen=True)
class SystemConfig:
    """All physical and dimensional parameters of one scenario.

    Immutable after construction; `validate` checks the invariants and returns
    the same object, so a validated config is safe to share across workers.
    """

    n_t: int = 2                      # BS transmit antennas (power of two)
    n_r: int = 1                      # UT receive antennas
    n_x: int = 4                      # IRS grid, x direction
    n_y: int = 4                      # IRS grid, y direction
    m_rpm: int = 2                    # reflection-phase constellation size (power of two)
    d_t: float = 1.0                  # BS->IRS distance, km
    d_r: float = 4.0                  # IRS->UT distance, km
    d_0: float = 1.0                  # reference distance, km
    eta: float = 2.3                  # path-loss exponent
    rho_0: float = 1.0                # path loss at the reference distance
    k_r: float = 2.0                  # Rician K-factor of the IRS->UT link
    kappa_over_lambda: float = 0.5    # IRS element spacing / wavelength
    delta_over_lambda: float = 0.5    # BS (and UT) antenna spacing / wavelength
    phi_a: float = 1.2695             # azimuth AoA at the IRS, rad, in (0, 2*pi)
    phi_e: float = 1.1864             # elevation AoA at the IRS, rad, in (0, 2*pi)
    phi_d: float = 0.4174             # AoD at the BS, rad
    psi_a: float = 1.6710             # azimuth AoD from the IRS, rad
    psi_e: float = 1.5708             # elevation AoD from the IRS, rad
    psi_d: float = 0.7854             # AoA at the UT, rad
    snr_grid_db: tuple[float, ...] = tuple(float(v) for v in range(0, 42, 2))
    seed: int = 20240915              # master RNG seed (64-bit unsigned)
    trials: int = 100_000             # Monte-Carlo trials per SNR point

    # ---- derived quantities -------------------------------------------------

    @property
    def n_elements(self) -> int:
        """Total IRS element count N = n_x * n_y."""
        return self.n_x * self.n_y

    @property
    def bits_bs(self) -> int:
        """Bits carried by the antenna index, log2(n_t)."""
        return self.n_t.bit_length() - 1

    @property
    def bits_irs(self) -> int:
        """Bits carried by the reflection phase, log2(m_rpm)."""
        return self.m_rpm.bit_length() - 1

    @property
    def bits_total(self) -> int:
        return self.bits_bs + self.bits_irs

    @property
    def nu(self) -> float:
        """Path loss of the BS->IRS link."""
        return path_loss(self.rho_0, self.d_t, self.eta)

    @property
    def nu_r(self) -> float:
        """Path loss of the IRS->UT link."""
        return path_loss(self.rho_0, self.d_r, self.eta)


def _is_power_of_two(n: int) -> bool:
    return isinstance(n, int) and n >= 1 and (n & (n - 1)) == 0


def validate(cfg: SystemConfig) -> SystemConfig:
    """Check every invariant; return cfg unchanged or raise ConfigError naming the first offender."""
    if not _is_power_of_two(cfg.n_t):
        raise ConfigError(f"n_t={cfg.n_t} not a power of two")
    if not _is_power_of_two(cfg.m_rpm):
        raise ConfigError(f"m_rpm={cfg.m_rpm} not a power of two")
    for name in ("n_r", "n_x", "n_y"):
        v = getattr(cfg, name)
        if not isinstance(v, int) or v < 1:
            raise ConfigError(f"{name}={v} must be a positive integer")
    for name in ("d_t", "d_r", "d_0", "eta", "rho_0", "kappa_over_lambda", "delta_over_lambda"):
        v = getattr(cfg, name)
        if not v > 0:
            raise ConfigError(f"{name}={v} must be strictly positive")
    if cfg.k_r < 0:
        raise ConfigError(f"k_r={cfg.k_r} must be non-negative")
    for name in ("phi_a", "phi_e"):
        v = getattr(cfg, name)
        if not 0.0 < v < 2.0 * math.pi:
            raise ConfigError(f"{name}={v} must lie in the open interval (0, 2*pi)")
    for name in ("phi_d", "psi_a", "psi_e", "psi_d"):
        v = getattr(cfg, name)
        if not math.isfinite(v):
            raise ConfigError(f"{name}={v} must be finite")
    grid = cfg.snr_grid_db
    if any(grid[i] >= grid[i + 1] for i in range(len(grid) - 1)):
        raise ConfigError(f"snr_grid_db={list(grid)} must be strictly increasing")
    if not isinstance(cfg.seed, int) or not 0 <= cfg.seed < 2**64:
        raise ConfigError(f"seed={cfg.seed} must be a 64-bit unsigned integer")
    if not isinstance(cfg.trials, int) or cfg.trials < 1:
        raise ConfigError(f"trials={cfg.trials} must be a positive integer")
    return cfg


_INT_FIELDS = {"n_t", "n_r", "n_x", "n_y", "m_rpm", "seed", "trials"}


def _parse_value(key: str, raw: str, lineno: int):
    try:
        if key == "snr_grid_db":
            return tuple(float(tok) for tok in raw.split(",") if tok.strip())
        if key in _INT_FIELDS:
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"line {lineno}: cannot parse {key}={raw!r}") from exc


def parse_config(text: str) -> SystemConfig:
    """Parse a key=value config body ('#' comments, one key per field, unknown keys rejected)."""
    known = {f.name for f in fields(SystemConfig)}
    seen: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key=value, got {line.strip()!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        seen[key] = _parse_value(key, raw, lineno)
    return replace(SystemConfig(), **seen)


def load_config(path: str) -> SystemConfig:
    """Read and parse a config file; the result is not yet validated."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
