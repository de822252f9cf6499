import pytest

from eqhodge.complexes import build_complex, builtin_complex
from eqhodge.fixtures import normalized_index_function
from eqhodge.morse import (
    MatchingError,
    MorseMatching,
    b_term_report,
    lift_matching,
    matching_from_vertex_function,
    validate_matching,
    verify_delocalized_morse,
)


def _lower_star_counts(K):
    M = matching_from_vertex_function(K, normalized_index_function(K))
    verdict = validate_matching(K, M)
    assert verdict.valid, verdict.errors
    return verdict.counts


def test_lower_star_cycle3():
    assert _lower_star_counts(builtin_complex("cycle(3)")) == (1, 1)


def test_lower_star_path():
    K = build_complex([(0, 1), (1, 2)])
    assert _lower_star_counts(K) == (1, 0)


def test_lower_star_rp2_perfect():
    assert _lower_star_counts(builtin_complex("rp2")) == (1, 1, 1)


def test_lower_star_mapping_tori():
    assert _lower_star_counts(builtin_complex("torus")) == (1, 3, 2)
    assert _lower_star_counts(builtin_complex("klein_bottle")) == (1, 3, 2)


def test_matching_rejects_missing_cell():
    K = builtin_complex("cycle(3)")
    M = MorseMatching.from_pairs([((0, 3), (0, 1, 3))])
    verdict = validate_matching(K, M)
    assert not verdict.valid
    assert "missing cell" in verdict.errors[0]


def test_matching_rejects_non_facet():
    K = builtin_complex("rp2")
    M = MorseMatching.from_pairs([((0,), (1, 2))])
    verdict = validate_matching(K, M)
    assert not verdict.valid
    assert "not a facet" in verdict.errors[0]


def test_matching_rejects_reuse():
    K = builtin_complex("rp2")
    M = MorseMatching.from_pairs([((0, 1), (0, 1, 2)), ((0, 1), (0, 1, 3))])
    verdict = validate_matching(K, M)
    assert not verdict.valid
    assert "more than one pair" in verdict.errors[0]


def test_matching_rejects_cycle_with_witness():
    # pair the three edges of a triangle boundary with rotated vertices:
    # the induced V-paths close up into a directed cycle
    K = builtin_complex("cycle(3)")
    M = MorseMatching.from_pairs([
        ((0,), (0, 1)), ((1,), (1, 2)), ((2,), (0, 2)),
    ])
    verdict = validate_matching(K, M)
    assert not verdict.valid
    assert "directed cycle" in verdict.errors[0]


def test_vertex_function_length_checked():
    K = builtin_complex("cycle(3)")
    with pytest.raises(MatchingError):
        matching_from_vertex_function(K, [0.0, 1.0])


def test_lift_matching_scales_counts(rp2_cover):
    C = rp2_cover
    M = matching_from_vertex_function(
        C.base, normalized_index_function(C.base)
    )
    base_counts = validate_matching(C.base, M).counts
    lifted = lift_matching(C, M)
    verdict = validate_matching(C.total, lifted)
    assert verdict.valid, verdict.errors
    assert verdict.counts == tuple(2 * c for c in base_counts)


def test_lift_matching_rejects_invalid_base(rp2_cover):
    M = MorseMatching.from_pairs([((0,), (1, 2))])
    with pytest.raises(MatchingError):
        lift_matching(rp2_cover, M)


def test_verify_delocalized_morse_synthetic():
    verdicts = verify_delocalized_morse([1, 1, 1], [1.0, 0.0, 0.0], 2, 1e-9)
    assert all(v.passed for v in verdicts)
    assert verdicts[2].equality is True
    verdicts = verify_delocalized_morse([0, 1, 1], [1.0, 0.0, 0.0], 2, 1e-9)
    assert not verdicts[0].passed
    with pytest.raises(ValueError):
        verify_delocalized_morse([1, 1], [1.0], 1, 1e-9)


def test_b_term_report():
    rep = b_term_report([0.5, 0.0, 0.5], [0.5, 0.0, -0.5], 1)
    assert rep["beta_e_partial_sums"] == [0.5, -0.5, 1.0]
    assert rep["b_terms"] == [0.5, -0.5, 0.0]
    assert rep["rhs"] == [1.0, -1.0, 1.0]
