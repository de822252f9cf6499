import pytest

from eqhodge.complexes import betti_vector, builtin_complex
from eqhodge.fixtures import cycle_cochain, seam_cochain
from eqhodge.oneform import (
    ASYMPTOTIC_CAVEAT,
    ClosedOneCochain,
    OneFormError,
    cyclic_cover,
    exact_approximation,
    fibration_trend_report,
    fit_decay_exponent,
    lift_cochain,
    periods,
    verify_delahgar,
)


def test_closedness_check_names_triangle():
    K = builtin_complex("rp2")
    omega = ClosedOneCochain({(0, 1): 1})
    with pytest.raises(OneFormError, match="triangle"):
        omega.check_closed(K)


def test_missing_edge_rejected():
    K = builtin_complex("cycle(3)")
    omega = ClosedOneCochain({(0, 5): 1})
    with pytest.raises(OneFormError, match="missing edge"):
        omega.check_closed(K)


def test_periods_cycle():
    K = builtin_complex("cycle(3)")
    pdata = periods(K, cycle_cochain(3))
    assert pdata.periods == (1,)
    assert pdata.integer_valued
    assert pdata.image_generator == 1


def test_periods_torus_seam(torus):
    pdata = periods(torus, seam_cochain(torus))
    # H_1 of the torus has rank 2: the fiber cycle has period 0 and the
    # circle direction has period 1
    assert sorted(abs(p) for p in pdata.periods) == [0, 1]
    assert pdata.image_generator == 1


def test_cyclic_cover_of_torus_is_torus(torus):
    omega = seam_cochain(torus)
    for m in (2, 3, 5):
        C = cyclic_cover(torus, omega, m)
        assert betti_vector(C.total) == (1, 2, 1)


def test_cyclic_cover_of_klein_alternates(klein_bottle):
    omega = seam_cochain(klein_bottle)
    assert betti_vector(cyclic_cover(klein_bottle, omega, 2).total) == (1, 2, 1)
    assert betti_vector(cyclic_cover(klein_bottle, omega, 3).total) == (1, 1, 0)


def test_cyclic_cover_rejects_non_integer(torus):
    omega = ClosedOneCochain({(0, 1): 0.5})
    with pytest.raises(OneFormError):
        cyclic_cover(torus, omega, 2)


def test_lift_cochain_closed(torus):
    omega = seam_cochain(torus)
    C = cyclic_cover(torus, omega, 3)
    lifted = lift_cochain(C, omega)
    lifted.check_closed(C.total)


def test_exact_approximation_counts(torus):
    omega = seam_cochain(torus)
    C = cyclic_cover(torus, omega, 2)
    appr = exact_approximation(C, lift_cochain(C, omega))
    assert sum((-1) ** k * c for k, c in enumerate(appr.counts)) == 0
    assert len(appr.vertex_function) == C.total.vertex_count


def test_verify_delahgar_towers(torus, klein_bottle):
    for K in (torus, klein_bottle):
        res = verify_delahgar(K, seam_cochain(K), 1, (2, 3, 4))
        assert res["passed"]
        assert res["defect_bound"] >= 0
        assert len(res["rows"]) == 3 * 3
        # slack scales exactly like 1/m
        for row in res["rows"]:
            assert row.slack * row.m == pytest.approx(
                (row.k + 1) * res["defect_bound"]
            )


def test_exact_cochain_reduces_to_base_inequality(torus):
    # an exact integer cochain d(g) has all periods zero, so every cyclic
    # cover splits into disjoint copies and the tower check coincides with
    # the base-matching inequality
    g = list(range(torus.vertex_count))
    omega = ClosedOneCochain({
        (u, v): g[v] - g[u] for (u, v) in torus.simplices[1]
    })
    assert all(p == 0 for p in periods(torus, omega).periods)
    res = verify_delahgar(torus, omega, 1, (2, 3))
    assert res["passed"]
    assert "disjoint union" in res["note"]
    assert res["defect_bound"] == 0
    from eqhodge.morse import verify_delocalized_morse

    for m in (2, 3):
        data = res["per_m"][m]
        base_results = verify_delocalized_morse(
            res["reference_counts"], data["gamma"], torus.dimension, 1e-8
        )
        for row in [r for r in res["rows"] if r.m == m]:
            base = base_results[row.k]
            assert row.lhs == pytest.approx(base.lhs, abs=1e-10)
            assert row.rhs == pytest.approx(base.rhs, abs=1e-10)


def test_fit_decay_exponent_exact():
    ms = [2, 3, 4, 5]
    vals = [1.0 / m for m in ms]
    assert fit_decay_exponent(ms, vals) == pytest.approx(1.0)
    assert fit_decay_exponent(ms, [0.0, 0.0, 0.0, 1.0]) is None


def test_fibration_trend_report(torus):
    rep = fibration_trend_report(torus, seam_cochain(torus), (2, 3, 4, 5, 6))
    assert rep["caveat"] == ASYMPTOTIC_CAVEAT
    for row in rep["summary"]:
        assert row["bound_holds"]
        assert abs(row["decay_exponent"] - 1.0) <= 0.1
