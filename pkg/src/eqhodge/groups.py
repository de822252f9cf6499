"""Finite groups as multiplication tables, and their conjugacy classes."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by an order-|G| multiplication table.

    ``table[a][b]`` is the index of the product a*b.  Identity, inverses
    and associativity are verified on construction.
    """

    table: tuple
    identity: int = field(init=False)
    inverse: tuple = field(init=False)

    def __post_init__(self):
        n = len(self.table)
        tbl = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", tbl)
        for row in tbl:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise GroupError("multiplication table is not square over 0..n-1")
        e = None
        for a in range(n):
            if all(tbl[a][b] == b and tbl[b][a] == b for b in range(n)):
                e = a
                break
        if e is None:
            raise GroupError("table has no identity element")
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if tbl[a][b] == e and tbl[b][a] == e:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise GroupError(f"element {a} has no inverse")
        t = np.array(tbl, dtype=np.int64)
        # associativity: (a*b)*c == a*(b*c), vectorized over b, c
        for a in range(n):
            if not np.array_equal(t[t[a]], t[a][t]):
                raise GroupError(f"table is not associative at element {a}")
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conjugate(self, h: int, a: int) -> int:
        """h * a * h^-1."""
        return self.mul(self.mul(h, a), self.inv(h))


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: tuple
    @property
    def size(self) -> int:
        return len(self.members)


def conjugacy_classes(G: FiniteGroup):
    """Conjugacy classes ordered by minimal member index; {e} comes first."""
    seen = set()
    classes = []
    for a in range(G.order):
        if a in seen:
            continue
        members = sorted({G.conjugate(h, a) for h in range(G.order)})
        seen.update(members)
        classes.append(ConjugacyClass(members[0], tuple(members)))
    classes.sort(key=lambda c: c.members[0])
    return classes


def cyclic_group(m: int) -> FiniteGroup:
    if m < 1:
        raise GroupError("cyclic group order must be >= 1")
    return FiniteGroup(tuple(
        tuple((a + b) % m for b in range(m)) for a in range(m)
    ))


def symmetric_group(n: int) -> FiniteGroup:
    """S_n with elements enumerated in lexicographic permutation order."""
    perms = list(permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(idx[tuple(p[q[i]] for i in range(n))] for q in perms)
        for p in perms
    )
    return FiniteGroup(table)
