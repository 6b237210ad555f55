"""Pairwise error probabilities of the three event kinds across SNR:
exact Craig-integral values next to the Chiani closed form, and how the
union bound on the average bit error rate is assembled from them.

Run: python demos/pep_anatomy.py
"""

from irs_sskrpm import (SystemConfig, aber_union_terms, make_channel,
                        pep_joint, pep_rpm, pep_ssk, validate)

cfg = validate(SystemConfig())
chan = make_channel(cfg)

print(f"{'SNR dB':>6} | {'ssk exact':>10} {'chiani':>10} | {'rpm exact':>10} "
      f"{'chiani':>10} | {'joint exact':>11} {'chiani':>10}")
for snr in range(0, 41, 5):
    p_s = 10 ** (snr / 10)
    s = pep_ssk(chan, cfg, 1, 2, p_s)
    r = pep_rpm(chan, cfg, 1, 2, p_s)
    j = pep_joint(chan, cfg, 1, 2, 1, 2, p_s)
    print(f"{snr:6d} | {s.exact:10.3e} {s.chiani:10.3e} | {r.exact:10.3e} "
          f"{r.chiani:10.3e} | {j.exact:11.3e} {j.chiani:10.3e}")

print("\nunion-bound composition (exact PEP):")
print(f"{'SNR dB':>6} | {'antenna':>10} {'phase':>10} {'joint':>10} {'total':>10}")
for snr in range(10, 41, 10):
    p_s = 10 ** (snr / 10)
    t1, t2, t3 = aber_union_terms(chan, cfg, p_s, exact_pep=True)
    print(f"{snr:6d} | {t1:10.3e} {t2:10.3e} {t3:10.3e} {t1 + t2 + t3:10.3e}")
