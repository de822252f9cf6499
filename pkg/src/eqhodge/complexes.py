"""Oriented simplicial complexes, boundary operators, exact Betti numbers.

Simplices are stored as strictly increasing vertex tuples, one sorted list
per dimension.  Orientation is by increasing vertex order; boundary signs
are the usual alternating (-1)^i, which makes d(d(x)) = 0 an identity in
integer arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations

import numpy as np

from . import exact


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialComplex:
    """Immutable simplicial complex with per-dimension simplex tables."""

    vertex_count: int
    simplices: tuple  # tuple over k of tuple of vertex tuples, sorted
    name: str = ""
    _index: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        idx = tuple(
            {s: i for i, s in enumerate(level)} for level in self.simplices
        )
        object.__setattr__(self, "_index", idx)

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def n_simplices(self, k: int) -> int:
        if 0 <= k <= self.dimension:
            return len(self.simplices[k])
        return 0

    def index_of(self, simplex) -> int:
        s = tuple(simplex)
        return self._index[len(s) - 1][s]

    def has_simplex(self, simplex) -> bool:
        s = tuple(sorted(simplex))
        k = len(s) - 1
        return 0 <= k <= self.dimension and s in self._index[k]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(lv) for k, lv in enumerate(self.simplices))

    def facets(self):
        """Maximal simplices (faces of no higher simplex)."""
        maximal = []
        for k, level in enumerate(self.simplices):
            for s in level:
                if k == self.dimension:
                    maximal.append(s)
                    continue
                is_face = False
                for t in self.simplices[k + 1]:
                    if set(s) <= set(t):
                        is_face = True
                        break
                if not is_face:
                    maximal.append(s)
        return maximal


def build_complex(facets, name: str = "") -> SimplicialComplex:
    """Close a facet list under faces and assemble a complex."""
    if not facets:
        raise ComplexError("facet list is empty")
    levels: dict[int, set] = {}
    for f in facets:
        fs = tuple(sorted(int(v) for v in f))
        if len(set(fs)) != len(fs):
            raise ComplexError(f"facet {f!r} has repeated vertices")
        if fs and fs[0] < 0:
            raise ComplexError(f"facet {f!r} has a negative vertex")
        for k in range(len(fs)):
            levels.setdefault(k, set()).update(combinations(fs, k + 1))
    dim = max(levels)
    simplices = tuple(
        tuple(sorted(levels.get(k, set()))) for k in range(dim + 1)
    )
    vertex_count = max(v for (v,) in simplices[0]) + 1 if simplices[0] else 0
    return SimplicialComplex(vertex_count, simplices, name=name)


def boundary_matrix(K: SimplicialComplex, k: int) -> np.ndarray:
    """Integer boundary matrix from k-chains to (k-1)-chains."""
    if not 1 <= k <= K.dimension:
        raise ComplexError(f"degree {k} out of range 1..{K.dimension}")
    rows = K.n_simplices(k - 1)
    cols = K.n_simplices(k)
    D = np.zeros((rows, cols), dtype=np.int64)
    for j, s in enumerate(K.simplices[k]):
        for i, v in enumerate(s):
            face = s[:i] + s[i + 1:]
            D[K.index_of(face), j] = (-1) ** i
    return D


def betti_exact(K: SimplicialComplex, k: int) -> int:
    """k-th rational Betti number via exact integer ranks."""
    if not 0 <= k <= K.dimension:
        raise ComplexError(f"degree {k} out of range 0..{K.dimension}")
    nk = K.n_simplices(k)
    rank_k = exact.rank_int(boundary_matrix(K, k)) if k >= 1 else 0
    rank_k1 = (
        exact.rank_int(boundary_matrix(K, k + 1)) if k + 1 <= K.dimension else 0
    )
    return nk - rank_k - rank_k1


def betti_vector(K: SimplicialComplex):
    return tuple(betti_exact(K, k) for k in range(K.dimension + 1))


def _cycle_facets(n: int):
    if n < 3:
        raise ComplexError("cycle(n) needs n >= 3")
    return [(i, (i + 1) % n) for i in range(n)]


def _rp2_facets():
    data = json.loads(
        resources.files("eqhodge").joinpath("fixtures/rp2.json").read_text()
    )
    return [tuple(f) for f in data["facets"]]


def mapping_torus_facets(perm, n_layers: int = 3):
    """Triangulated mapping torus of a simplicial self-map of cycle(n).

    ``perm`` is a permutation of range(n) that maps edges of cycle(n) to
    edges (a rotation or reflection).  Vertex (i, t) has id n*t + i; each
    prism square is split along the (i,t)-(i+1,t+1) diagonal, and the top
    layer is glued to layer 0 through ``perm``.
    """
    p = [int(x) for x in perm]
    n = len(p)
    if sorted(p) != list(range(n)):
        raise ComplexError(f"{perm!r} is not a permutation of range({n})")
    if n < 3:
        raise ComplexError("mapping torus base needs n >= 3")
    for i in range(n):
        a, b = p[i], p[(i + 1) % n]
        if (b - a) % n not in (1, n - 1):
            raise ComplexError(
                f"{perm!r} does not map the edge ({i},{(i + 1) % n}) of "
                f"cycle({n}) to an edge"
            )
    L = max(int(n_layers), 3)

    def vid(i, t):
        return n * (t % L) + (i % n)

    facets = []
    for t in range(L):
        for i in range(n):
            a = vid(i, t)
            b = vid(i + 1, t)
            if t + 1 < L:
                c = vid(i, t + 1)
                d = vid(i + 1, t + 1)
            else:
                c = vid(p[i], 0)
                d = vid(p[(i + 1) % n], 0)
            facets.append((a, b, d))
            facets.append((a, c, d))
    return facets


def builtin_complex(name: str) -> SimplicialComplex:
    """Fixture complexes: cycle(n), rp2, torus, klein_bottle, mapping_torus(p)."""
    name = name.strip()
    if name.startswith("cycle(") and name.endswith(")"):
        n = int(name[6:-1])
        return build_complex(_cycle_facets(n), name=name)
    if name == "rp2":
        return build_complex(_rp2_facets(), name=name)
    if name == "torus":
        return build_complex(mapping_torus_facets([0, 1, 2]), name=name)
    if name == "klein_bottle":
        return build_complex(mapping_torus_facets([0, 2, 1]), name=name)
    if name.startswith("mapping_torus(") and name.endswith(")"):
        perm = [int(x) for x in name[14:-1].split(",")]
        return build_complex(mapping_torus_facets(perm), name=name)
    raise ComplexError(f"unknown builtin complex {name!r}")
