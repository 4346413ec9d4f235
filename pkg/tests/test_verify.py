import os

import pytest

from abctrees.verify import (REPORTS, asymptotic_residuals, verify_10vs11, verify_crossover,
                             verify_leaf37_bound, verify_lemma7_leaf_move,
                             verify_lemma9_rootless_bound, verify_noRandM, verify_noRandM2)


@pytest.fixture(scope="module")
def reports():
    return {name: fn() for name, fn in REPORTS.items()}


def test_every_report_passes_and_agrees_with_recheck(reports):
    for name, rep in reports.items():
        assert rep.passed, name
        assert rep.recheck_margin > 0, name
        assert rep.worst_margin == pytest.approx(rep.recheck_margin, abs=1e-9), name


def test_no_r_and_m(reports):
    rep = reports["noRandM"]
    assert rep.checked == 75 * 7
    assert rep.notes["increasing_for_d_ge_100"]
    assert rep.notes["failing_points_d_le_25"]
    assert rep.notes["largest_failing_d"] == 25
    from abctrees.verify import _no_r_and_m
    assert _no_r_and_m(101, 7) > _no_r_and_m(100, 7)


def test_no_r_and_m2(reports):
    rep = reports["noRandM2"]
    assert rep.checked == 23
    # The tightest point is in the middle of the range, not at d = 3.
    assert rep.worst_point == (14,)


def test_10vs11(reports):
    rep = reports["10vs11"]
    assert rep.notes["lhs_all_negative"]
    assert rep.notes["abs_lhs_at_max"] < rep.notes["abs_lhs_at_120"] <= 6e-4


def test_crossover(reports):
    rep = reports["crossover"]
    assert rep.worst_point == (1000, 7)
    assert rep.notes["worst_forward_r"] == 7
    assert rep.notes["worst_reverse_r"] == 8
    assert rep.notes["margin_at_p1000"][9] > 0
    r0 = rep.notes["r0_margin_p1000_p1e4_p1e5"]
    assert r0[0] < r0[1] < r0[2]


def test_rootless_bound(reports):
    rep = reports["lemma9_rootless_bound"]
    assert rep.worst_point == (120,)
    assert rep.notes["increasing_sampled"]
    # With the constant subtracted, or with the exact r = 9 term, d = 120 fails.
    assert rep.notes["with_minus_0.0054_at_120"] < 0
    assert rep.notes["with_exact_r9_term_at_120"] < 0


def test_leaf37(reports):
    rep = reports["leaf37_bound"]
    assert rep.worst_point == (37,)
    assert rep.notes["largest_failing_l"] == 36
    assert rep.notes["margin_at_36"] < 0 < rep.notes["margin_at_37"]


def test_lemma7(reports):
    assert reports["lemma7_leaf_move"].checked > 700_000


def test_residuals(reports):
    rep = reports["asymptotic_residuals"]
    assert rep.worst_margin > 0
    r0 = rep.notes["r0_t_times_R_at_1e4_1e5_1e6"]
    assert len(r0) == 3
    assert all(abs(x - r0[-1]) < 0.1 * r0[-1] for x in r0)
    assert rep.notes["sup_t_times_R"] < 40


def test_deterministic():
    a, b = verify_crossover(), verify_crossover()
    assert a.worst_margin == b.worst_margin and a.worst_point == b.worst_point


def test_precision_override(monkeypatch):
    monkeypatch.setenv("ABC_PRECISION_BITS", "200")
    assert verify_leaf37_bound().passed
    monkeypatch.setenv("ABC_PRECISION_BITS", "64")
    with pytest.raises(ValueError):
        verify_leaf37_bound()
