import numpy as np
import pytest
from dataclasses import replace

from irs_sskrpm import (ErrorEventMoments, SystemConfig, aber_union,
                        aber_union_terms, capacity_closed, diversity_slope,
                        laplace, make_channel, moments_joint, moments_rpm,
                        moments_ssk, pep_joint, pep_of_event, pep_rpm,
                        pep_ssk, validate)
from oracles import pep_by_quadrature


def test_pep_at_zero_power(chan, cfg):
    mom = moments_ssk(chan.h, chan.g_bar, cfg, 1, 2)
    v = pep_of_event(mom, 0.0)
    assert v.exact == pytest.approx(0.5, abs=1e-12)
    assert v.chiani == 1.0 / 3.0  # exactly, in float64


def test_pep_decays_to_zero(chan, cfg):
    mom = moments_ssk(chan.h, chan.g_bar, cfg, 1, 2)
    v = pep_of_event(mom, 1e16)
    assert v.exact < 1e-12


def test_pep_bounds_and_monotonicity(chan, cfg):
    mom = moments_joint(chan.h, chan.g_bar, cfg, 1, 2, 1, 2)
    prev = None
    for p_s in 10 ** np.linspace(-2, 5, 30):
        v = pep_of_event(mom, p_s)
        assert 0.0 <= v.exact <= 0.5
        assert 0.0 <= v.chiani <= 1.0 / 3.0
        if prev is not None:
            assert v.exact <= prev.exact + 1e-15
            assert v.chiani <= prev.chiani + 1e-15
        prev = v


def test_pep_exact_matches_direct_quadrature(rng):
    for _ in range(10):
        mom = ErrorEventMoments(s_sq=float(rng.uniform(0.0, 5.0)),
                                sigma_sq=float(rng.uniform(0.1, 2.0)),
                                n_r=int(rng.integers(1, 4)))
        p_s = float(rng.uniform(0.5, 80.0))
        ref = pep_by_quadrature(mom, p_s)
        assert pep_of_event(mom, p_s).exact == pytest.approx(ref, rel=1e-8)


def test_pep_ssk_is_phase_invariant(chan, cfg):
    # the event moments never touch the applied phase: bitwise-equal results
    big = validate(replace(cfg, m_rpm=4))
    moms = [moments_ssk(chan.h, chan.g_bar, big, 1, 2) for _ in range(4)]
    assert all(m == moms[0] for m in moms)
    v = pep_ssk(chan, big, 1, 2, 13.0)
    assert v.exact == pep_of_event(moms[0], 13.0).exact


def test_pep_rpm_adjacent_phases_worse_than_antipodal(chan, cfg):
    big = validate(replace(cfg, m_rpm=8))
    adjacent = pep_rpm(chan, big, 1, 2, 25.0)
    antipodal = pep_rpm(chan, big, 1, 5, 25.0)
    assert adjacent.exact > antipodal.exact


def test_pep_joint_decreases_with_surface_size(cfg):
    p_s = 10 ** 2.0
    small = validate(replace(cfg, n_x=4, n_y=4))
    large = validate(replace(cfg, n_x=8, n_y=4))
    v_small = pep_joint(make_channel(small), small, 1, 2, 1, 2, p_s)
    v_large = pep_joint(make_channel(large), large, 1, 2, 1, 2, p_s)
    assert v_large.exact < v_small.exact


def test_paper_literal_args_doubles_transform_argument(chan, cfg):
    mom = moments_ssk(chan.h, chan.g_bar, cfg, 1, 2)
    lit = pep_of_event(mom, 8.0, paper_literal_args=True)
    assert lit.chiani == pytest.approx(laplace(mom, 4.0) / 12 + laplace(mom, 16.0 / 3.0) / 4,
                                       rel=1e-14)
    assert lit.exact < pep_of_event(mom, 8.0).exact


def test_chiani_tracks_exact_in_the_low_error_regime(chan, cfg):
    # single receive antenna: the two-exponential closed form stays within
    # 15% of the Craig value once the PEP is below 1e-2
    checked = 0
    for p_s in 10 ** np.linspace(1.0, 6.0, 24):
        for mom in (moments_ssk(chan.h, chan.g_bar, cfg, 1, 2),
                    moments_rpm(chan.h, chan.g_bar, cfg, 1, 1, 2),
                    moments_joint(chan.h, chan.g_bar, cfg, 1, 2, 1, 2)):
            v = pep_of_event(mom, p_s)
            if v.exact <= 1e-2 and v.exact > 1e-300:
                assert abs(v.chiani - v.exact) / v.exact <= 0.15
                checked += 1
    assert checked > 10


def test_chiani_offset_bounded_for_multiple_antennas(rng):
    # with n_r >= 2 the closed form carries a larger systematic offset
    # (about 19-21% in the deep-decay limit); keep it under 25%
    for nr in (2, 3, 4):
        mom = ErrorEventMoments(s_sq=1.0, sigma_sq=0.5, n_r=nr)
        for p_s in 10 ** np.linspace(1.5, 6.0, 12):
            v = pep_of_event(mom, p_s)
            if v.exact <= 1e-2 and v.exact > 1e-300:
                assert abs(v.chiani - v.exact) / v.exact <= 0.25


# ---- union bound ---------------------------------------------------------------

def test_aber_union_single_ssk_term_reduction(cfg):
    # with one phase symbol only the antenna term survives and the weighted
    # sum collapses to the single pairwise error probability
    ssk_only = validate(replace(cfg, m_rpm=1))
    chan = make_channel(ssk_only)
    p_s = 50.0
    terms = aber_union_terms(chan, ssk_only, p_s, exact_pep=True)
    assert terms[1] == 0.0 and terms[2] == 0.0
    expected = pep_ssk(chan, ssk_only, 1, 2, p_s).exact
    assert aber_union(chan, ssk_only, p_s, exact_pep=True) == pytest.approx(expected, rel=1e-13)


def test_aber_union_degenerate_zero_bits():
    cfg0 = validate(SystemConfig(n_t=1, m_rpm=1))
    chan = make_channel(cfg0)
    assert aber_union(chan, cfg0, 10.0) == 0.0


def test_aber_union_dominates_each_component(chan, cfg):
    for p_s in (1.0, 30.0, 1000.0):
        terms = aber_union_terms(chan, cfg, p_s, exact_pep=True)
        total = aber_union(chan, cfg, p_s, exact_pep=True)
        assert all(total >= term - 1e-18 for term in terms)
        assert total == pytest.approx(sum(terms), rel=1e-14)


def test_aber_union_monotone_on_grid(chan, cfg):
    vals = [aber_union(chan, cfg, 10 ** (s / 10)) for s in cfg.snr_grid_db]
    assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:]))


def test_aber_union_array_gain_shift(cfg):
    # doubling the surface shifts the curve left by about 3 dB at 1e-2
    from oracles import crossing_snr
    grid = np.arange(16.0, 34.0, 1.0)
    small = validate(replace(cfg, n_x=4, n_y=4))
    large = validate(replace(cfg, n_x=8, n_y=4))
    a_small = [aber_union(make_channel(small), small, 10 ** (s / 10), exact_pep=True)
               for s in grid]
    a_large = [aber_union(make_channel(large), large, 10 ** (s / 10), exact_pep=True)
               for s in grid]
    shift = crossing_snr(grid, a_small, 1e-2) - crossing_snr(grid, a_large, 1e-2)
    assert shift == pytest.approx(3.0, abs=1.0)


# ---- diversity slope -----------------------------------------------------------

def test_diversity_slope_definition():
    snr = [10.0, 20.0, 30.0]
    aber = [1e-2, 1e-3, 1e-4]  # one decade per 10 dB
    assert diversity_slope(snr, aber) == pytest.approx(1.0, abs=1e-12)


def test_diversity_slope_cubic_decay():
    snr = np.linspace(5, 35, 13)
    aber = 2.7 * (10 ** (snr / 10.0)) ** -3.0
    assert diversity_slope(snr, aber) == pytest.approx(3.0, abs=1e-6)


def test_diversity_slope_needs_two_points():
    with pytest.raises(ValueError):
        diversity_slope([10.0], [1e-3])
    with pytest.raises(ValueError):
        diversity_slope([10.0, 20.0], [0.0, 0.0])


# ---- capacity ------------------------------------------------------------------

def test_capacity_zero_power_closed_form(chan, cfg):
    # K = 4 hypotheses and 4 cross pairs: 2*log2(4) - log2(4 + 4) = 1 bit
    assert capacity_closed(chan, cfg, 0.0) == pytest.approx(1.0, abs=0.0)
    k = cfg.n_t * cfg.m_rpm
    pairs = cfg.m_rpm * (cfg.m_rpm - 1) * cfg.n_t * (cfg.n_t - 1)
    expected = 2 * np.log2(k) - np.log2(k + pairs)
    assert capacity_closed(chan, cfg, 0.0) == expected


def test_capacity_reaches_upper_limit(chan, cfg):
    limit = np.log2(cfg.n_t * cfg.m_rpm)
    assert capacity_closed(chan, cfg, 1e7) == pytest.approx(limit, abs=1e-6)


def test_capacity_monotone_in_power(chan, cfg):
    vals = [capacity_closed(chan, cfg, 10 ** (s / 10)) for s in cfg.snr_grid_db]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
