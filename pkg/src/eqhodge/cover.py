"""Finite regular covers of simplicial complexes from voltage assignments.

A voltage assignment labels each oriented base edge (u, v), u < v, with a
group element; reversed edges carry the inverse.  The simplex
{v0 < ... < vk} lifted at sheet g has vertices

    (v0, g), (v1, g * a(v0, v1)), ..., (vk, g * a(v0, vk)),

so voltages multiply on the right while the deck group acts on the left,
(v, g) -> (v, h*g); the two actions commute by construction.  Deck
transformations act on cochains as signed permutations, the sign being
the parity of the sort permutation of the image vertex tuple.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .complexes import SimplicialComplex, ComplexError, build_complex
from .groups import FiniteGroup


class VoltageError(ValueError):
    pass


@dataclass(frozen=True)
class VoltageAssignment:
    """Map from sorted base edges to group element indices.

    Unlisted edges carry the identity.  ``check_cocycle`` verifies
    a(u,v) * a(v,w) == a(u,w) on every 2-simplex.
    """

    group: FiniteGroup
    edges: dict

    def value(self, u: int, v: int) -> int:
        if u < v:
            return self.edges.get((u, v), self.group.identity)
        return self.group.inv(self.edges.get((v, u), self.group.identity))

    def check_cocycle(self, K: SimplicialComplex) -> None:
        if K.dimension < 2:
            return
        for (u, v, w) in K.simplices[2]:
            lhs = self.group.mul(self.value(u, v), self.value(v, w))
            if lhs != self.value(u, w):
                raise VoltageError(
                    f"cocycle condition fails on triangle {(u, v, w)}: "
                    f"a({u},{v})*a({v},{w}) != a({u},{w})"
                )


def _sort_sign(ids):
    """Parity sign of the permutation sorting ``ids`` (distinct values)."""
    order = sorted(range(len(ids)), key=lambda i: ids[i])
    sign = 1
    seen = [False] * len(ids)
    for i in range(len(ids)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return tuple(ids[i] for i in order), sign


@dataclass(frozen=True, eq=False)
class CoverComplex:
    """A |G|-sheeted regular cover with its deck action tables."""

    base: SimplicialComplex
    group: FiniteGroup
    voltage: VoltageAssignment
    total: SimplicialComplex
    # lift_table[k][base_index][g] = (total_index, sign)
    lift_table: tuple = field(repr=False)
    # projection[k][total_index] = base_index
    projection: tuple = field(repr=False)
    _deck_cache: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(
        default_factory=threading.Lock, repr=False, compare=False
    )

    @property
    def dimension(self) -> int:
        return self.total.dimension

    def vertex_id(self, v: int, g: int) -> int:
        return v * self.group.order + g

    def fundamental_lifts(self, k: int) -> np.ndarray:
        """Total indices of the sheet-e lifts of all base k-simplices."""
        e = self.group.identity
        return np.array(
            [self.lift_table[k][i][e][0] for i in range(self.base.n_simplices(k))],
            dtype=np.int64,
        )

    def deck_permutation(self, h: int, k: int):
        """Signed permutation of k-simplices: h sends simplex j to
        sign[j] * simplex perm[j].  Memoized behind a lock."""
        key = (h, k)
        with self._lock:
            if key in self._deck_cache:
                return self._deck_cache[key]
        n = self.group.order
        perm = np.empty(self.total.n_simplices(k), dtype=np.int64)
        sign = np.empty(self.total.n_simplices(k), dtype=np.int64)
        for j, s in enumerate(self.total.simplices[k]):
            ids = [
                self.vertex_id(t // n, self.group.mul(h, t % n)) for t in s
            ]
            srt, sg = _sort_sign(ids)
            perm[j] = self.total.index_of(srt)
            sign[j] = sg
        perm.setflags(write=False)
        sign.setflags(write=False)
        with self._lock:
            self._deck_cache[key] = (perm, sign)
        return perm, sign


def build_cover(
    K: SimplicialComplex, G: FiniteGroup, alpha: VoltageAssignment
) -> CoverComplex:
    alpha.check_cocycle(K)
    n = G.order

    def lift_ids(s, g):
        v0 = s[0]
        return [v * n + G.mul(g, alpha.value(v0, v)) for v in s]

    total_levels = []
    for k in range(K.dimension + 1):
        level = set()
        for s in K.simplices[k]:
            for g in range(n):
                level.add(tuple(sorted(lift_ids(s, g))))
        total_levels.append(tuple(sorted(level)))
    total = SimplicialComplex(
        K.vertex_count * n, tuple(total_levels),
        name=f"{K.name or 'complex'}^({n}-cover)",
    )

    lift_table = []
    projection = []
    for k in range(K.dimension + 1):
        tbl = []
        for s in K.simplices[k]:
            per_g = []
            for g in range(n):
                srt, sg = _sort_sign(lift_ids(s, g))
                per_g.append((total.index_of(srt), sg))
            tbl.append(tuple(per_g))
        lift_table.append(tuple(tbl))
        proj = np.empty(total.n_simplices(k), dtype=np.int64)
        for j, s in enumerate(total.simplices[k]):
            base_simplex = tuple(sorted(t // n for t in s))
            proj[j] = K.index_of(base_simplex)
        proj.setflags(write=False)
        projection.append(proj)

    return CoverComplex(
        base=K, group=G, voltage=alpha, total=total,
        lift_table=tuple(lift_table), projection=tuple(projection),
    )


def deck_matrix(C: CoverComplex, h: int, k: int) -> np.ndarray:
    """Dense signed permutation matrix U_h on k-cochains of the cover.

    U_h maps basis cochain j to sign[j] * basis cochain perm[j]; the
    family h -> U_h is a group homomorphism and each U_h is orthogonal.
    """
    if not 0 <= h < C.group.order:
        raise VoltageError(f"group element {h} out of range")
    if not 0 <= k <= C.dimension:
        raise ComplexError(f"degree {k} out of range 0..{C.dimension}")
    perm, sign = C.deck_permutation(h, k)
    m = len(perm)
    U = np.zeros((m, m), dtype=np.int64)
    U[perm, np.arange(m)] = sign
    return U


def lift_vertex_function(C: CoverComplex, f) -> np.ndarray:
    """Pull a base vertex function back to the cover: f~(v, g) = f(v)."""
    f = np.asarray(f, dtype=float)
    if f.shape != (C.base.vertex_count,):
        raise ComplexError(
            f"vertex function has length {f.shape}, expected "
            f"{C.base.vertex_count}"
        )
    n = C.group.order
    out = np.empty(C.base.vertex_count * n)
    for v in range(C.base.vertex_count):
        out[v * n:(v + 1) * n] = f[v]
    return out


def trivial_cover(K: SimplicialComplex, G: FiniteGroup) -> CoverComplex:
    """Cover with identity voltage everywhere: |G| disjoint copies of K."""
    return build_cover(K, G, VoltageAssignment(G, {}))
