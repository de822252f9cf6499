"""Corpus fixtures: the covers, Morse functions and 1-cochains used by the
verification suite and the `corpus` CLI subcommand.

Fixture tables live in JSON files next to this module; the directory can
be overridden with the EQHODGE_FIXTURES environment variable.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .complexes import SimplicialComplex, builtin_complex, build_complex
from .cover import CoverComplex, VoltageAssignment, build_cover
from .groups import FiniteGroup, symmetric_group
from .oneform import ClosedOneCochain, cyclic_cover

FIXTURES_ENV = "EQHODGE_FIXTURES"


def fixture_path(name: str) -> Path:
    override = os.environ.get(FIXTURES_ENV)
    if override:
        return Path(override) / name
    return Path(str(resources.files("eqhodge").joinpath(f"fixtures/{name}")))


def load_fixture_json(name: str) -> dict:
    return json.loads(fixture_path(name).read_text())


def voltage_from_json(data: dict, G: FiniteGroup | None = None) -> tuple:
    """(group, voltage) from the cover JSON schema."""
    if G is None:
        G = FiniteGroup(tuple(tuple(r) for r in data["group"]["table"]))
    edges = {
        tuple(item["edge"]): int(item["g"]) for item in data.get("voltage", [])
    }
    return G, VoltageAssignment(G, edges)


def normalized_index_function(K: SimplicialComplex):
    """Documented Morse vertex function: f(v) = v / vertex_count.

    Injective, increasing in the vertex index, and bounded by 1 so Witten
    deformations at the corpus s-grid stay well-conditioned.
    """
    return tuple(v / K.vertex_count for v in range(K.vertex_count))


def cycle_cochain(n: int) -> ClosedOneCochain:
    """Integer cochain on cycle(n) with value 1 on the edge (0, 1)."""
    return ClosedOneCochain({(0, 1): 1})


def seam_cochain(K: SimplicialComplex, n_base: int = 3) -> ClosedOneCochain:
    """Circle-direction cochain on a mapping-torus fixture.

    Value -1 on each sorted edge that crosses from the top layer back to
    layer 0, i.e. the pullback of the circle form under the fibration;
    closed because every triangle crosses the seam coherently.
    """
    n_layers = K.vertex_count // n_base
    top = set(range(n_base * (n_layers - 1), n_base * n_layers))
    bottom = set(range(n_base))
    values = {}
    for (u, v) in K.simplices[1]:
        if u in bottom and v in top:
            values[(u, v)] = -1
    return ClosedOneCochain(values)


@dataclass
class CorpusFixture:
    """A named cover with its documented Morse function and optional cochain."""

    name: str
    base: SimplicialComplex
    morse_f: tuple
    omega: ClosedOneCochain | None = None
    _cover_factory: object = None
    _cover: CoverComplex | None = field(default=None, repr=False)

    @property
    def cover(self) -> CoverComplex:
        if self._cover is None:
            self._cover = self._cover_factory()
        return self._cover


def rp2_cover_fixture() -> CorpusFixture:
    base = builtin_complex("rp2")
    data = load_fixture_json("rp2_cover.json")
    G, volt = voltage_from_json(data)
    return CorpusFixture(
        name="rp2_z2",
        base=base,
        morse_f=normalized_index_function(base),
        _cover_factory=lambda: build_cover(base, G, volt),
    )


def s3_fixture() -> CorpusFixture:
    data = load_fixture_json("s3_fixture.json")
    base = build_complex([tuple(f) for f in data["facets"]], name="s3_graph")
    G = symmetric_group(3)
    _, volt = voltage_from_json(data, G=G)
    return CorpusFixture(
        name="s3_graph",
        base=base,
        morse_f=normalized_index_function(base),
        _cover_factory=lambda: build_cover(base, G, volt),
    )


def cyclic_fixture(base_name: str, m: int) -> CorpusFixture:
    base = builtin_complex(base_name)
    if base_name.startswith("cycle("):
        omega = cycle_cochain(base.vertex_count)
    else:
        omega = seam_cochain(base)
    return CorpusFixture(
        name=f"{base_name}_z{m}",
        base=base,
        morse_f=normalized_index_function(base),
        omega=omega,
        _cover_factory=lambda: cyclic_cover(base, omega, m),
    )


def corpus(m_max: int = 6):
    """The full fixture corpus used by the acceptance suite."""
    items = []
    for m in range(2, m_max + 1):
        items.append(cyclic_fixture("cycle(3)", m))
    items.append(rp2_cover_fixture())
    for m in range(2, m_max + 1):
        items.append(cyclic_fixture("torus", m))
    items.append(cyclic_fixture("klein_bottle", 2))
    items.append(s3_fixture())
    return items
