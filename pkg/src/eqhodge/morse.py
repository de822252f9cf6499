"""Discrete Morse data: acyclic matchings, critical counts, Morse verdicts.

An acyclic partial matching on the face poset pairs each matched cell
with a coface one dimension up; unmatched cells are critical and their
per-degree counts play the role of critical-point counts.  The
delocalized Novikov-Shubin checker compares alternating partial sums of
those counts against the gamma combinations from the delocalized module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import SimplicialComplex
from .cover import CoverComplex
from .delocalized import alternating_partial_sums


class MatchingError(ValueError):
    pass


@dataclass(frozen=True)
class MorseMatching:
    """Pairs (sigma, tau) with sigma a facet of tau, as vertex tuples."""

    pairs: tuple

    @staticmethod
    def from_pairs(pairs) -> "MorseMatching":
        norm = tuple(
            (tuple(sorted(s)), tuple(sorted(t))) for s, t in pairs
        )
        return MorseMatching(norm)

    def critical_counts(self, K: SimplicialComplex):
        matched = set()
        for s, t in self.pairs:
            matched.add(s)
            matched.add(t)
        return tuple(
            sum(1 for s in K.simplices[k] if s not in matched)
            for k in range(K.dimension + 1)
        )

    def critical_cells(self, K: SimplicialComplex):
        matched = {c for pair in self.pairs for c in pair}
        return [
            s for level in K.simplices for s in level if s not in matched
        ]


@dataclass(frozen=True)
class MatchingVerdict:
    valid: bool
    counts: tuple
    errors: tuple


def validate_matching(K: SimplicialComplex, M: MorseMatching) -> MatchingVerdict:
    """Check cell existence, disjointness, incidence, and acyclicity.

    Acyclicity is verified on the modified Hasse digraph: downward arcs
    tau -> facet, with each matched arc reversed; any directed cycle is
    reported with a witness.
    """
    errors = []
    used = {}
    for s, t in M.pairs:
        if not K.has_simplex(s) or not K.has_simplex(t):
            errors.append(f"pair ({s}, {t}) references a missing cell")
            continue
        if len(t) != len(s) + 1 or not set(s) <= set(t):
            errors.append(f"cell {s} is not a facet of {t}")
            continue
        for cell in (s, t):
            if cell in used:
                errors.append(f"cell {cell} occurs in more than one pair")
            used[cell] = True
    matched_up = dict(M.pairs)
    matched_down = {t: s for s, t in M.pairs}
    if errors:
        return MatchingVerdict(False, M.critical_counts(K), tuple(errors))

    # modified Hasse digraph: downward arcs, matched arcs reversed
    def successors(cell):
        k = len(cell) - 1
        if cell in matched_up:
            yield matched_up[cell]
            return
        if k >= 1:
            skip = matched_down.get(cell)
            for i in range(len(cell)):
                face = cell[:i] + cell[i + 1:]
                if face != skip:
                    yield face

    WHITE, GRAY, BLACK = 0, 1, 2
    color = {}
    cycle_witness = None

    def dfs(start):
        nonlocal cycle_witness
        stack = [(start, iter(successors(start)))]
        color[start] = GRAY
        path = [start]
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                c = color.get(nxt, WHITE)
                if c == GRAY:
                    i = path.index(nxt)
                    cycle_witness = path[i:] + [nxt]
                    return True
                if c == WHITE:
                    color[nxt] = GRAY
                    stack.append((nxt, iter(successors(nxt))))
                    path.append(nxt)
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
                path.pop()
        return False

    for level in K.simplices:
        for cell in level:
            if color.get(cell, WHITE) == WHITE:
                if dfs(cell):
                    errors.append(
                        "matching induces a directed cycle: "
                        + " -> ".join(map(str, cycle_witness))
                    )
                    return MatchingVerdict(
                        False, M.critical_counts(K), tuple(errors)
                    )

    counts = M.critical_counts(K)
    alt = sum((-1) ** k * c for k, c in enumerate(counts))
    if alt != K.euler_characteristic():
        errors.append(
            f"alternating critical count {alt} != Euler characteristic "
            f"{K.euler_characteristic()}"
        )
        return MatchingVerdict(False, counts, tuple(errors))
    return MatchingVerdict(True, counts, ())


def matching_from_vertex_function(K: SimplicialComplex, f) -> MorseMatching:
    """Lower-star matching of an injective vertex function.

    Ties are broken by vertex index, so any vertex function is usable.
    Each cell belongs to the lower star of its maximal vertex; within a
    lower star, cells are greedily paired with the unmatched coface
    obtained by adding the smallest admissible vertex.
    """
    f = list(f)
    if len(f) != K.vertex_count:
        raise MatchingError(
            f"vertex function has length {len(f)}, expected {K.vertex_count}"
        )

    def key(v):
        return (f[v], v)

    def star_vertex(cell):
        return max(cell, key=key)

    pairs = []
    matched = set()
    for v in range(K.vertex_count):
        star = [
            s for level in K.simplices for s in level if star_vertex(s) == v
        ]
        star.sort(key=lambda s: (len(s), tuple(key(u) for u in s)))
        for cell in star:
            if cell in matched:
                continue
            best = None
            best_w = None
            for w in K.simplices[0]:
                w = w[0]
                if w in cell or key(w) >= key(v):
                    continue
                coface = tuple(sorted(cell + (w,)))
                if not K.has_simplex(coface) or coface in matched:
                    continue
                if best_w is None or key(w) < best_w:
                    best, best_w = coface, key(w)
            if best is not None:
                pairs.append((cell, best))
                matched.add(cell)
                matched.add(best)
    return MorseMatching(tuple(pairs))


def lift_matching(C: CoverComplex, M: MorseMatching) -> MorseMatching:
    """Lift a base matching to every sheet of the cover.

    Critical counts multiply exactly by the number of sheets.
    """
    base_verdict = validate_matching(C.base, M)
    if not base_verdict.valid:
        raise MatchingError(
            "base matching invalid: " + "; ".join(base_verdict.errors)
        )
    n = C.group.order
    lifted = []
    for s, t in M.pairs:
        ks, kt = len(s) - 1, len(t) - 1
        si, ti = C.base.index_of(s), C.base.index_of(t)
        for g in range(n):
            t_total = C.total.simplices[kt][C.lift_table[kt][ti][g][0]]
            sset = set(s)
            s_total = tuple(v for v in t_total if v // n in sset)
            assert len(s_total) == len(s)
            lifted.append((tuple(sorted(s_total)), t_total))
    return MorseMatching(tuple(lifted))


@dataclass(frozen=True)
class MorseVerdict:
    k: int
    lhs: float
    rhs: float
    passed: bool
    equality: bool | None = None


def verify_delocalized_morse(c_counts, gammas, n: int, tol: float):
    """Check sum_{j<=k} (-1)^(k-j) C_j >= same sum of gamma_j - tol,
    with equality at k = n."""
    c_counts = list(c_counts)
    gammas = list(gammas)
    if len(c_counts) != n + 1 or len(gammas) != n + 1:
        raise ValueError(
            f"expected {n + 1} values, got {len(c_counts)} counts and "
            f"{len(gammas)} gammas"
        )
    csums = alternating_partial_sums(c_counts)
    gsums = alternating_partial_sums(gammas)
    verdicts = []
    for k in range(n + 1):
        if k < n:
            verdicts.append(
                MorseVerdict(k, csums[k], gsums[k], csums[k] >= gsums[k] - tol)
            )
        else:
            eq = abs(csums[k] - gsums[k]) <= tol
            verdicts.append(MorseVerdict(k, csums[k], gsums[k], eq, eq))
    return verdicts


def b_term_report(beta_e, beta_g, class_size: int):
    """Restate the inequality data: B_c^k = (1/|c|) * alternating beta_c sums,
    returned alongside the beta_e partial sums."""
    e_sums = alternating_partial_sums(list(beta_e))
    b_terms = [s / class_size for s in alternating_partial_sums(list(beta_g))]
    return {
        "beta_e_partial_sums": e_sums,
        "b_terms": b_terms,
        "rhs": [a + b for a, b in zip(e_sums, b_terms)],
    }
