import pytest

from eqhodge.groups import (
    FiniteGroup,
    GroupError,
    conjugacy_classes,
    cyclic_group,
    symmetric_group,
)


def test_cyclic_group_table():
    G = cyclic_group(4)
    assert G.order == 4
    assert G.mul(2, 3) == 1
    assert G.inv(3) == 1
    assert G.identity == 0


def test_cyclic_conjugacy_classes_are_singletons():
    classes = conjugacy_classes(cyclic_group(5))
    assert len(classes) == 5
    assert all(c.size == 1 for c in classes)
    assert [c.representative for c in classes] == [0, 1, 2, 3, 4]


def test_symmetric_group_s3():
    G = symmetric_group(3)
    assert G.order == 6
    classes = conjugacy_classes(G)
    assert sorted(c.size for c in classes) == [1, 2, 3]
    # identity class comes first
    assert classes[0].members == (0,)


def test_group_axioms_enforced():
    # no identity element
    with pytest.raises(GroupError):
        FiniteGroup(((1, 1), (1, 1)))
    # identity exists but element 1 has no inverse
    with pytest.raises(GroupError):
        FiniteGroup(((0, 1), (1, 1)))
    # out-of-range entries
    with pytest.raises(GroupError):
        FiniteGroup(((0, 1), (1, 2)))


def test_conjugation():
    G = symmetric_group(3)
    for h in range(G.order):
        for g in range(G.order):
            x = G.conjugate(g, h)
            assert G.mul(G.mul(g, h), G.inv(g)) == x


def test_inverse_roundtrip():
    for G in (cyclic_group(6), symmetric_group(3)):
        for g in range(G.order):
            assert G.mul(g, G.inv(g)) == G.identity
