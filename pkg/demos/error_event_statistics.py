"""The decision statistic of each error event is noncentral chi-square with
2*n_r degrees of freedom. Compare the analytical moments and Laplace
transform against raw channel sampling, for all three event kinds.

Run: python demos/error_event_statistics.py
"""

import numpy as np

from irs_sskrpm import (SystemConfig, build_g_bar, build_h, laplace,
                        moments_joint, moments_rpm, moments_ssk, rpm_phases,
                        validate)
from irs_sskrpm.channel import rician_weights

cfg = validate(SystemConfig(n_r=2))
h, g_bar = build_h(cfg), build_g_bar(cfg)
phases = rpm_phases(cfg.m_rpm)

events = {
    "antenna error (1->2)": (moments_ssk(h, g_bar, cfg, 1, 2),
                             h[:, 0] - h[:, 1]),
    "phase error (1->2)": (moments_rpm(h, g_bar, cfg, 1, 1, 2),
                           (np.exp(1j * phases[0]) - np.exp(1j * phases[1])) * h[:, 0]),
    "joint error": (moments_joint(h, g_bar, cfg, 1, 2, 1, 2),
                    np.exp(1j * phases[0]) * h[:, 0] - np.exp(1j * phases[1]) * h[:, 1]),
}

rng = np.random.default_rng(1)
w_los, w_nlos = rician_weights(cfg)
n_samples = 200_000

for name, (mom, d) in events.items():
    w = (rng.standard_normal((n_samples, cfg.n_elements, cfg.n_r))
         + 1j * rng.standard_normal((n_samples, cfg.n_elements, cfg.n_r))) * np.sqrt(0.5)
    g = w_los * g_bar[None] + w_nlos * w
    xi = np.sum(np.abs(np.einsum("bnr,n->br", g.conj(), d)) ** 2, axis=1)

    mean_th = mom.s_sq + 2 * mom.n_r * mom.sigma_sq
    var_th = 4 * mom.n_r * mom.sigma_sq ** 2 + 4 * mom.sigma_sq * mom.s_sq
    print(f"{name}: s^2={mom.s_sq:.4f} sigma^2={mom.sigma_sq:.4f}")
    print(f"  mean      theory {mean_th:10.4f}   sampled {xi.mean():10.4f}")
    print(f"  variance  theory {var_th:10.4f}   sampled {xi.var(ddof=1):10.4f}")
    for a in (0.2, 1.0, 5.0):
        print(f"  E[exp(-{a}*xi)]  theory {laplace(mom, a):.6f}   "
              f"sampled {np.exp(-a * xi).mean():.6f}")
    print()
