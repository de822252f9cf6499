import numpy as np
import pytest

from eqhodge.complexes import (
    ComplexError,
    betti_vector,
    boundary_matrix,
    build_complex,
    builtin_complex,
    mapping_torus_facets,
)


def test_build_complex_closure():
    K = build_complex([(0, 1, 2)])
    assert K.n_simplices(0) == 3
    assert K.n_simplices(1) == 3
    assert K.n_simplices(2) == 1
    assert K.has_simplex((0, 2))
    assert not K.has_simplex((0, 3))


def test_build_complex_rejects_bad_vertices():
    with pytest.raises(ComplexError):
        build_complex([(0, 0, 1)])
    with pytest.raises(ComplexError):
        build_complex([(-1, 0)])


def test_boundary_of_boundary_vanishes():
    for name in ("cycle(5)", "rp2", "torus", "klein_bottle"):
        K = builtin_complex(name)
        for k in range(2, K.dimension + 1):
            d_k = boundary_matrix(K, k)
            d_km1 = boundary_matrix(K, k - 1)
            assert np.all(d_km1 @ d_k == 0)


def test_boundary_signs():
    K = build_complex([(0, 1, 2)])
    d2 = boundary_matrix(K, 2)
    # boundary of (0,1,2) is (1,2) - (0,2) + (0,1)
    col = {K.simplices[1][i]: d2[i, 0] for i in range(3)}
    assert col[(1, 2)] == 1
    assert col[(0, 2)] == -1
    assert col[(0, 1)] == 1


def test_betti_builtin_surfaces():
    assert betti_vector(builtin_complex("cycle(3)")) == (1, 1)
    assert betti_vector(builtin_complex("rp2")) == (1, 0, 0)
    assert betti_vector(builtin_complex("torus")) == (1, 2, 1)
    assert betti_vector(builtin_complex("klein_bottle")) == (1, 1, 0)


def test_mapping_torus_counts():
    facets = mapping_torus_facets([0, 1, 2])
    K = build_complex(facets)
    assert K.vertex_count == 9
    assert K.n_simplices(1) == 27
    assert K.n_simplices(2) == 18
    assert K.euler_characteristic() == 0


def test_mapping_torus_rejects_non_automorphism():
    # the swap 0<->1 fixes vertex 2, so edges of cycle(3) are preserved;
    # a map collapsing vertices is not
    with pytest.raises(ComplexError):
        mapping_torus_facets([0, 0, 2])


def test_builtin_complex_unknown():
    with pytest.raises(ComplexError):
        builtin_complex("dodecahedron")


def test_euler_characteristic():
    assert builtin_complex("rp2").euler_characteristic() == 1
    assert builtin_complex("cycle(4)").euler_characteristic() == 0
