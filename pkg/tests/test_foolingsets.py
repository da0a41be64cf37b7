"""Tests for fooling-set constructions and their verifier."""

import pytest

from src.algebra import Equation, check_equation
from src.catalog import cyclic_group, example_structure, language
from src.errors import FoolingSetError, InapplicableError
from src.foolingsets import (
    CONSTRUCTIONS,
    FoolingSet,
    PartialWord,
    build_aba_fooling,
    build_monlin_fooling,
    build_named_fooling,
    build_noncomm_fooling,
    build_sigma_aa_fooling,
    build_stswap_fooling,
    verify_fooling_set,
)


class TestPartialWord:
    def test_domain_and_format(self):
        w = PartialWord(("a", None, "b", None))
        assert w.domain == frozenset({1, 3})
        assert w.format() == "a _ b _"
        assert len(w) == 4

    def test_compose(self):
        w = PartialWord(("a", None))
        v = PartialWord((None, "b"))
        assert w.complementary(v)
        assert w.compose(v) == ["a", "b"]
        with pytest.raises(FoolingSetError):
            w.compose(w)

    def test_homogeneous(self):
        assert PartialWord(("a", None)).homogeneous(PartialWord(("b", None)))
        assert not PartialWord(("a", None)).homogeneous(PartialWord((None, "b")))


@pytest.mark.parametrize(
    ("name", "n", "size", "length"),
    [
        ("sigma-aa", 3, 8, 9),
        ("noncomm", 4, 4, 8),
        ("monlin", 2, 4, 12),
        ("monlin", 3, 8, 17),
        ("stswap", 5, 3, 10),
        ("xysep", 5, 3, 10),
        ("ab-semigroup", 3, 8, 6),
        ("aba", 5, 4, 10),
    ],
)
def test_named_constructions_verify(name, n, size, length):
    F = build_named_fooling(name, n)
    assert (F.size, F.length) == (size, length)
    result = verify_fooling_set(F)
    assert result.passed, result.counterexample
    assert result.exhaustive
    assert result.pairs_checked == size * (size - 1) // 2
    assert result.lower_bound_bits == F.lower_bound_bits


def test_every_construction_is_registered():
    assert set(CONSTRUCTIONS) == {"sigma-aa", "noncomm", "monlin", "stswap", "xysep", "ab-semigroup", "aba"}


def test_lower_bounds():
    assert build_sigma_aa_fooling(5).lower_bound_bits == 5
    assert build_named_fooling("noncomm", 4).lower_bound_bits == 2
    assert build_aba_fooling(2).lower_bound_bits == 0


def test_sigma_aa_layout():
    F = build_sigma_aa_fooling(2)
    assert F.domain == frozenset({1, 2, 4, 5})
    assert [w.format() for w in F.words] == ["b b _ b b _", "b a _ b b _", "b b _ b a _", "b a _ b a _"]
    assert F.witness(1, 3).format() == "_ _ b _ _ a"


def test_algebra_cells_are_named():
    F = build_named_fooling("noncomm", 2)
    assert F.word(0).format(F.format_cell) == "a _ 1 _"
    assert F.witness(0, 1).format(F.format_cell) == "_ b _ 1"


def test_sampled_verification():
    F = build_sigma_aa_fooling(4)
    result = verify_fooling_set(F, cap=5, seed=3)
    assert result.passed
    assert not result.exhaustive
    assert result.pairs_checked == 5


def test_wrong_subject_fails():
    F = build_sigma_aa_fooling(2)
    result = verify_fooling_set(F, subject=language(".*", "ab"))
    assert not result.passed
    assert result.counterexample == (0, 1)
    assert result.values == (True, True)


def test_malformed_sets():
    dfa = language("ab", "ab")
    unseparated = FoolingSet(
        "bogus", dfa, 2, lambda i: PartialWord(("a", None)), lambda i, j: PartialWord((None, "b")), 2
    )
    assert not verify_fooling_set(unseparated).passed

    overlapping = FoolingSet(
        "bogus", dfa, 2, lambda i: PartialWord(("a", None)), lambda i, j: PartialWord(("a", "b")), 2
    )
    with pytest.raises(FoolingSetError, match="complementary"):
        verify_fooling_set(overlapping)

    ragged = FoolingSet(
        "bogus",
        dfa,
        2,
        lambda i: PartialWord(("a", None) if i == 0 else (None, "a")),
        lambda i, j: PartialWord((None, None)),
        2,
    )
    with pytest.raises(FoolingSetError, match="homogeneous"):
        verify_fooling_set(ragged)


class TestApplicability:
    def test_unknown_construction(self):
        with pytest.raises(ValueError, match="unknown construction"):
            build_named_fooling("nope", 3)

    def test_size_limits(self):
        with pytest.raises(ValueError):
            build_sigma_aa_fooling(0)
        with pytest.raises(ValueError):
            build_aba_fooling(1)
        with pytest.raises(ValueError):
            build_named_fooling("stswap", 2)

    def test_noncomm_needs_noncommuting_pair(self):
        with pytest.raises(InapplicableError, match="commute"):
            build_noncomm_fooling(cyclic_group(3), 1, 2, 3)

    def test_noncomm_needs_monoid(self, s_abba):
        S = s_abba.algebra
        with pytest.raises(InapplicableError, match="monoid"):
            build_noncomm_fooling(S, S.index("a"), S.index("b"), 3)

    def test_monlin_needs_flcom_violation(self, m_ab):
        M = m_ab.algebra
        with pytest.raises(InapplicableError, match="FLCOM"):
            build_monlin_fooling(M, check_equation(M, Equation.COM), 2)

    def test_stswap_needs_violation(self):
        S = example_structure("a-sigma-b").algebra
        with pytest.raises(InapplicableError):
            build_stswap_fooling(S, S.index("a"), S.index("b"), S.index("a"), 4)
