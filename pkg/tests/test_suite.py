import itertools

import pytest

from fpqec.semion.weights import omega
from fpqec.tensors import gauge_transform_check, invariance_suite

TOL = 1e-12


@pytest.fixture(scope="module")
def results():
    return {r.name: r for r in invariance_suite()}


def test_everything_passes(results):
    failed = [n for n, r in results.items() if not r.passed]
    assert not failed, f"failed checks: {failed}"


def test_all_deviations_tiny(results):
    for name, r in results.items():
        if "not_exact" in name:
            continue
        assert r.max_deviation < TOL, (name, r.max_deviation)


def test_bialgebra_exact(results):
    r = results["bialgebra"]
    assert r.mode == "exact" and r.passed


def test_charged_move_has_minus_one(results):
    r = results["anyon_e_through_charged_delta"]
    assert r.mode == "up_to_sign"
    assert r.detail["scalar"] == -1


def test_cocycle_violation_zero(results):
    assert results["open_worldline_evaluates_to_zero"].passed
    assert results["three_legs_at_vertex_zero"].passed
    assert results["contractible_loop_nonzero"].passed


def test_omega_cocycle_all_16():
    for a, b, c, d in itertools.product((0, 1), repeat=4):
        lhs = omega(b, c, d) * omega(a, (b + c) % 2, d) * omega(a, b, c)
        rhs = omega((a + b) % 2, c, d) * omega(a, b, (c + d) % 2)
        assert lhs == rhs


def test_gauge_checks():
    rows = gauge_transform_check()
    failed = [r.name for r in rows if not r.passed]
    assert not failed
    names = {r.name for r in rows}
    # full table, charged and uncharged
    for cell in ("x", "y", "z", "xy", "xz", "yz"):
        assert f"gauge_table_{cell}" in names
        assert f"gauge_table_{cell}_charged" in names


def test_gauge_charged_picks_up_phase():
    rows = {r.name: r for r in gauge_transform_check()}
    sc = rows["gauge_table_xz_charged"].detail["scalar"]
    assert abs(abs(sc) - 1.0) < 1e-9
