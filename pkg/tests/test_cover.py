import numpy as np
import pytest

from eqhodge.complexes import betti_vector, boundary_matrix, builtin_complex
from eqhodge.cover import (
    VoltageAssignment,
    VoltageError,
    build_cover,
    deck_matrix,
    lift_vertex_function,
    trivial_cover,
)
from eqhodge.fixtures import load_fixture_json, voltage_from_json
from eqhodge.groups import cyclic_group, symmetric_group


def test_cocycle_violation_names_triangle():
    K = builtin_complex("rp2")
    G = cyclic_group(2)
    volt = VoltageAssignment(G, {(0, 1): 1})
    with pytest.raises(VoltageError, match="triangle"):
        build_cover(K, G, volt)


def test_rp2_double_cover_is_sphere(rp2_cover):
    C = rp2_cover
    assert C.total.vertex_count == 12
    assert C.total.n_simplices(1) == 30
    assert C.total.n_simplices(2) == 20
    assert betti_vector(C.total) == (1, 0, 1)


def test_deck_matrices_form_representation(rp2_cover, torus_z3_cover):
    for C in (rp2_cover, torus_z3_cover):
        G = C.group
        for k in range(C.dimension + 1):
            mats = [deck_matrix(C, h, k) for h in range(G.order)]
            for h1 in range(G.order):
                for h2 in range(G.order):
                    prod = mats[h1] @ mats[h2]
                    assert np.array_equal(prod, mats[G.mul(h1, h2)])


def test_deck_matrices_orthogonal(rp2_cover):
    C = rp2_cover
    for k in range(C.dimension + 1):
        for h in range(C.group.order):
            U = deck_matrix(C, h, k)
            n = U.shape[0]
            assert np.array_equal(U @ U.T, np.eye(n, dtype=U.dtype))


def test_deck_commutes_with_boundary(rp2_cover, torus_z3_cover):
    for C in (rp2_cover, torus_z3_cover):
        for k in range(1, C.dimension + 1):
            d = boundary_matrix(C.total, k)
            for h in range(C.group.order):
                Ukm1 = deck_matrix(C, h, k - 1)
                Uk = deck_matrix(C, h, k)
                assert np.array_equal(Ukm1 @ d, d @ Uk)


def test_projection_and_lift_table(rp2_cover):
    C = rp2_cover
    n = C.group.order
    for k in range(C.dimension + 1):
        for bi, base_simplex in enumerate(C.base.simplices[k]):
            for g in range(n):
                ti, sign = C.lift_table[k][bi][g]
                total_simplex = C.total.simplices[k][ti]
                assert sign in (-1, 1)
                assert tuple(sorted(v // n for v in total_simplex)) == base_simplex


def test_fundamental_lifts_sit_at_identity_sheet(rp2_cover):
    C = rp2_cover
    lifts = C.fundamental_lifts(1)
    assert len(lifts) == C.base.n_simplices(1)


def test_trivial_cover_deck_action():
    K = builtin_complex("cycle(4)")
    G = cyclic_group(3)
    C = trivial_cover(K, G)
    assert C.total.vertex_count == 12
    # three disjoint copies: Betti numbers triple
    assert betti_vector(C.total) == (3, 3)


def test_s3_cover_connected():
    data = load_fixture_json("s3_fixture.json")
    from eqhodge.complexes import build_complex

    base = build_complex([tuple(f) for f in data["facets"]])
    G = symmetric_group(3)
    _, volt = voltage_from_json(data, G=G)
    C = build_cover(base, G, volt)
    assert C.total.vertex_count == 24
    assert betti_vector(C.total)[0] == 1


def test_lift_vertex_function_is_deck_invariant(rp2_cover):
    C = rp2_cover
    f = np.arange(C.base.vertex_count, dtype=float)
    ft = lift_vertex_function(C, f)
    n = C.group.order
    for v in range(C.total.vertex_count):
        assert ft[v] == f[v // n]
