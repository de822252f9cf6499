"""Delocalized traces over conjugacy classes and delocalized Betti numbers.

For an equivariant operator A on k-cochains of a cover, the delocalized
trace over a conjugacy class c sums the matrix entries A[h.lift(s), lift(s)]
over base simplices s and h in c, where lift(s) is the chosen fundamental
lift.  With U_h the signed-permutation deck matrix this is

    Tr_c(A) = sum_{h in c} sum_s (U_h^T A)[lift(s), lift(s)],

and equals (1/|G|) sum_{h in c} trace(A U_{h^-1}) by equivariance, which
serves as an independent cross-check.  The positive combination

    T_c(A) = Tr_{e}(A) + Tr_c(A) / |c|

is a positive trace; applying it to the harmonic projector gives the
combination gamma used in all Morse-type inequality checks.  An exact
character oracle (rational row reduction, no floating point) validates
every spectral delocalized Betti number.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from weakref import WeakKeyDictionary

import numpy as np

from . import exact
from .complexes import betti_exact, boundary_matrix
from .cover import CoverComplex
from .groups import ConjugacyClass
from .hodge import HarmonicProjector, harmonic_projector, laplacian, spectrum
from .rng import SplitMix64

EQUIVARIANCE_TOL = 1e-10
CROSSCHECK_TOL = 1e-10


class EquivarianceError(ValueError):
    pass


class CrosscheckError(RuntimeError):
    pass


@dataclass(frozen=True)
class EquivariantOperator:
    degree: int
    matrix: np.ndarray


_projector_cache: WeakKeyDictionary = WeakKeyDictionary()
_homology_cache: WeakKeyDictionary = WeakKeyDictionary()


def trivial_class(C: CoverComplex) -> ConjugacyClass:
    e = C.group.identity
    return ConjugacyClass(e, (e,))


def equivariance_defect(C: CoverComplex, k: int, A: np.ndarray) -> float:
    """max over h of ||A U_h - U_h A||_max."""
    A = np.asarray(A, dtype=float)
    worst = 0.0
    for h in range(C.group.order):
        perm, sign = C.deck_permutation(h, k)
        # (U_h A)[perm[i], j] = sign[i] A[i, j];  (A U_h)[i, j] = sign[j] A[i, perm[j]]
        UA = sign[:, None] * A
        AU = sign[None, :] * A[:, perm]
        diff = np.abs(UA - AU[perm, :]).max() if A.size else 0.0
        worst = max(worst, diff)
    return worst


def ensure_equivariant(C: CoverComplex, k: int, A: np.ndarray) -> None:
    scale = float(np.abs(A).max()) if np.asarray(A).size else 0.0
    defect = equivariance_defect(C, k, A)
    if defect > EQUIVARIANCE_TOL * (1.0 + scale):
        raise EquivarianceError(
            f"operator is not deck-equivariant in degree {k}: "
            f"defect {defect:g} exceeds {EQUIVARIANCE_TOL:g}*(1+{scale:g})"
        )


def random_lifts(C: CoverComplex, k: int, seed: int) -> np.ndarray:
    """Re-select fundamental lifts by seeded random deck translates."""
    gen = SplitMix64(seed)
    n = C.group.order
    return np.array(
        [C.lift_table[k][i][gen.next_uint64() % n][0]
         for i in range(C.base.n_simplices(k))],
        dtype=np.int64,
    )


def tr_delocalized(
    C: CoverComplex, k: int, A: np.ndarray, c: ConjugacyClass,
    lifts=None, check: bool = True,
) -> float:
    """Delocalized trace of an equivariant operator over class c."""
    A = np.asarray(A, dtype=float)
    if check:
        ensure_equivariant(C, k, A)
    if lifts is None:
        lifts = C.fundamental_lifts(k)
    total = 0.0
    for h in c.members:
        perm, sign = C.deck_permutation(h, k)
        total += float((sign[lifts] * A[perm[lifts], lifts]).sum())
    return total


def global_trace_crosscheck(
    C: CoverComplex, k: int, A: np.ndarray, c: ConjugacyClass
) -> float:
    """(1/|G|) sum_{h in c} trace(A U_{h^-1}); must match tr_delocalized."""
    A = np.asarray(A, dtype=float)
    total = 0.0
    idx = np.arange(C.total.n_simplices(k))
    for h in c.members:
        perm, sign = C.deck_permutation(h, k)
        total += float((sign * A[perm, idx]).sum())
    value = total / C.group.order
    direct = tr_delocalized(C, k, A, c)
    scale = float(np.abs(A).max()) if A.size else 0.0
    if abs(value - direct) > CROSSCHECK_TOL * (1.0 + scale):
        raise CrosscheckError(
            f"global trace {value:.15g} disagrees with fundamental-domain "
            f"trace {direct:.15g} in degree {k}, class of {c.representative}"
        )
    return value


def t_trace(
    C: CoverComplex, k: int, A: np.ndarray, c: ConjugacyClass,
    check: bool = True,
) -> float:
    """Positive trace T_c = Tr_e + Tr_c / |c|."""
    if check:
        ensure_equivariant(C, k, A)
    te = tr_delocalized(C, k, A, trivial_class(C), check=False)
    tg = tr_delocalized(C, k, A, c, check=False)
    return te + tg / c.size


def cover_projectors(C: CoverComplex) -> list[HarmonicProjector]:
    """Harmonic projectors of the cover, cross-checked against exact Betti."""
    cached = _projector_cache.get(C)
    if cached is not None:
        return cached
    projs = []
    for k in range(C.dimension + 1):
        S = spectrum(laplacian(C.total, k).astype(float), k)
        projs.append(harmonic_projector(S, expected_betti=betti_exact(C.total, k)))
    _projector_cache[C] = projs
    return projs


def beta_delocalized(C: CoverComplex, k: int, c: ConjugacyClass) -> float:
    """Delocalized Betti number: Tr_c of the degree-k harmonic projector."""
    P = cover_projectors(C)[k].matrix
    return tr_delocalized(C, k, P, c, check=False)


def gamma(C: CoverComplex, k: int, c: ConjugacyClass) -> float:
    """T_c of the harmonic projector: beta_e + beta_c / |c|."""
    P = cover_projectors(C)[k].matrix
    return t_trace(C, k, P, c, check=False)


def euler_delocalized(C: CoverComplex, c: ConjugacyClass) -> float:
    """Alternating sum of delocalized Betti numbers over degrees."""
    return sum(
        (-1) ** k * beta_delocalized(C, k, c) for k in range(C.dimension + 1)
    )


def _homology_data(C: CoverComplex, k: int):
    """Cycle and boundary bases in echelon form, over exact rationals."""
    cache = _homology_cache.setdefault(C, {})
    if k in cache:
        return cache[k]
    nk = C.total.n_simplices(k)
    if k == 0:
        zbasis, free = None, None  # cycles are everything; handled specially
    else:
        dk = boundary_matrix(C.total, k).tolist()
        zbasis, free = exact.nullspace(dk, ncols=nk)
    if k + 1 <= C.dimension:
        bbasis, lead = exact.column_space(boundary_matrix(C.total, k + 1).tolist())
    else:
        bbasis, lead = [], []
    cache[k] = (zbasis, free, bbasis, lead)
    return cache[k]


def character_oracle(C: CoverComplex, k: int, h: int) -> Fraction:
    """Exact trace of the deck element h on rational homology H_k(cover).

    Cycle and boundary bases are kept in echelon form, so expressing the
    image of a basis vector in the basis is a coordinate read-off:
    tr(U|Z) - tr(U|B) with every step over exact rationals.
    """
    zbasis, free, bbasis, lead = _homology_data(C, k)
    perm, sign = C.deck_permutation(h, k)
    pinv = np.empty_like(perm)
    pinv[perm] = np.arange(len(perm))
    if k == 0:
        tr_z = Fraction(int(sum(int(s) for p, s, i in
                                zip(perm, sign, range(len(perm))) if p == i)))
    else:
        tr_z = Fraction(0)
        for vec, fc in zip(zbasis, free):
            src = int(pinv[fc])
            tr_z += int(sign[src]) * vec[src]
    tr_b = Fraction(0)
    for vec, lr in zip(bbasis, lead):
        src = int(pinv[lr])
        tr_b += int(sign[src]) * vec[src]
    return tr_z - tr_b


def beta_oracle(C: CoverComplex, k: int, c: ConjugacyClass) -> Fraction:
    """(1/|G|) * class sum of the exact homology character."""
    total = Fraction(0)
    for h in c.members:
        total += character_oracle(C, k, h)
    return total / C.group.order


def random_equivariant(C: CoverComplex, k: int, seed: int) -> np.ndarray:
    """Deck average (1/|G|) sum_h U_h B U_h^-1 of a seeded random matrix."""
    m = C.total.n_simplices(k)
    B = SplitMix64(seed).matrix(m, m)
    A = np.zeros((m, m))
    for h in range(C.group.order):
        perm, sign = C.deck_permutation(h, k)
        A[np.ix_(perm, perm)] += (sign[:, None] * sign[None, :]) * B
    return A / C.group.order


def alternating_partial_sums(values):
    """s_k = sum_{j<=k} (-1)^(k-j) v_j for each k."""
    sums = []
    acc = 0.0
    for v in values:
        acc = v - acc
        sums.append(acc)
    return sums


def delocalized_report(C: CoverComplex, classes=None):
    """Per class and degree: beta, oracle beta, gamma, B-term, Euler sums."""
    from .groups import conjugacy_classes

    if classes is None:
        classes = conjugacy_classes(C.group)
    n = C.dimension
    rows = []
    for c in classes:
        betas = [beta_delocalized(C, k, c) for k in range(n + 1)]
        gammas = [gamma(C, k, c) for k in range(n + 1)]
        oracle = [float(beta_oracle(C, k, c)) for k in range(n + 1)]
        bterms = [b / c.size for b in alternating_partial_sums(betas)]
        euler = sum((-1) ** k * b for k, b in enumerate(betas))
        for k in range(n + 1):
            rows.append({
                "class": c.representative,
                "class_size": c.size,
                "k": k,
                "beta": betas[k],
                "beta_oracle": oracle[k],
                "gamma": gammas[k],
                "b_term": bterms[k],
                "euler": euler,
            })
    return rows
