"""Tests for the generic evaluators, the combinators and evaluator selection."""

import pytest

from src.algebra import direct_product, quotient, random_catalog, subalgebra
from src.catalog import cyclic_group, example_structure
from src.errors import AlgebraError, InapplicableError, StreamError
from src.evaluators import (
    BitPackedEvaluator,
    FirstLastComEvaluator,
    FirstLastEvaluator,
    IntervalMergeEvaluator,
    ProductEvaluator,
    QuotientEvaluator,
    StreamEvent,
    SubEvaluator,
    ThresholdPeriodCounter,
    make_bitpacked_evaluator,
    make_commutative_evaluator,
    make_first_last_letter_evaluator,
    make_fl_evaluator,
    make_flcom_evaluator,
    make_interval_merge_evaluator,
    make_li_evaluator,
    make_licom_evaluator,
    make_reference_evaluator,
    make_sparse_exception_evaluator,
)
from src.evaluators.registry import EVALUATOR_NAMES, build_evaluator, select_evaluator
from src.harness import differential_campaign, run_stream

SEMIGROUPS = random_catalog(5, seed=3)


def campaign(factory, subject, start=0, exhaustive_upto=4, sampled=(8, 17, 33), words=20, perms=3):
    result = differential_campaign(
        factory,
        subject,
        [*range(start, exhaustive_upto + 1), *sampled],
        words_per_n=words,
        perms_per_word=perms,
        seed=5,
        exhaustive_upto=exhaustive_upto,
    )
    assert result.passed, result.failure and result.failure.to_replay()
    return result


class TestStreamContract:
    def test_event_rejects_out_of_range_position(self):
        with pytest.raises(StreamError):
            StreamEvent("a", 0, 3)
        with pytest.raises(StreamError):
            StreamEvent("a", 4, 3)

    def test_duplicate_position(self, m_ab):
        e = make_reference_evaluator(m_ab.algebra)
        e.init(2)
        e.feed(StreamEvent(1, 1, 2))
        with pytest.raises(StreamError, match="twice"):
            e.feed(StreamEvent(2, 1, 2))

    def test_missing_positions(self, m_ab):
        e = make_reference_evaluator(m_ab.algebra)
        e.init(3)
        e.feed(StreamEvent(1, 2, 3))
        with pytest.raises(StreamError, match="never delivered: 1, 3"):
            e.finish()

    def test_length_mismatch_and_lifecycle(self, m_ab):
        e = make_reference_evaluator(m_ab.algebra)
        with pytest.raises(StreamError, match="init"):
            e.feed(StreamEvent(1, 1, 1))
        e.init(1)
        with pytest.raises(StreamError, match="does not match"):
            e.feed(StreamEvent(1, 1, 2))
        e.feed(StreamEvent(1, 1, 1))
        e.finish()
        with pytest.raises(StreamError):
            e.feed(StreamEvent(1, 1, 1))
        with pytest.raises(StreamError, match="twice"):
            e.finish()

    def test_init_resets(self, m_ab):
        M = m_ab.algebra
        a, b = M.index("a"), M.index("b")
        e = make_fl_evaluator(M)
        assert M.name(run_stream(e, [a, b], [2, 1])[0]) == "ab"
        assert M.name(run_stream(e, [b, a], [1, 2])[0]) == "0"

    def test_non_element_letter(self, m_ab):
        e = make_fl_evaluator(m_ab.algebra)
        with pytest.raises(StreamError):
            run_stream(e, [7], [1])
        with pytest.raises(StreamError):
            run_stream(make_fl_evaluator(m_ab), ["c"], [1])


class TestThresholdPeriodCounter:
    def test_exact_below_threshold(self):
        counter = ThresholdPeriodCounter(2, threshold=4, period=3)
        for _ in range(3):
            counter.add(0)
        assert counter.exact(0) == 3
        assert counter.representative(1) == 0

    def test_residue_above_threshold(self):
        counter = ThresholdPeriodCounter(1, threshold=4, period=3)
        for _ in range(10):
            counter.add(0)
        assert counter.exact(0) is None
        assert counter.representative(0) == 4
        assert counter.representative(0, floor=6) == 7

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            ThresholdPeriodCounter(1, 0, 1)


class TestReferenceAndCommutative:
    def test_reference_state_bits(self, m_ab):
        e = make_reference_evaluator(m_ab.algebra)
        e.init(10)
        assert e.state_bits() == 40
        e = make_reference_evaluator(m_ab)
        e.init(10)
        assert e.state_bits() == 20

    def test_commutative_on_parity(self):
        parity = example_structure("parity")
        e = make_commutative_evaluator(parity)
        assert run_stream(e, list("aaaa"), [3, 1, 4, 2]) == (True, 1)
        assert run_stream(e, list("aaa"), [3, 1, 2])[0] is False
        campaign(make_commutative_evaluator, parity, exhaustive_upto=8)

    def test_commutative_on_groups(self):
        for order in (2, 3, 4):
            campaign(make_commutative_evaluator, cyclic_group(order))

    def test_commutative_rejects_noncommutative(self, m_ab):
        with pytest.raises(InapplicableError, match="COM"):
            make_commutative_evaluator(m_ab.algebra)
        with pytest.raises(InapplicableError):
            make_commutative_evaluator(m_ab)


class TestFirstLast:
    def test_fl_on_ab(self, m_ab):
        campaign(make_fl_evaluator, m_ab.algebra)
        campaign(make_fl_evaluator, m_ab)

    def test_fl_rejects_groups(self):
        with pytest.raises(InapplicableError, match="FL"):
            make_fl_evaluator(cyclic_group(2))

    def test_fl_needs_monoid(self, s_abba):
        with pytest.raises(InapplicableError, match="monoid"):
            FirstLastEvaluator(s_abba.algebra)

    def test_flcom_on_groups_and_ab(self, m_ab):
        campaign(make_flcom_evaluator, cyclic_group(3), sampled=(20, 40, 90))
        campaign(make_flcom_evaluator, m_ab, sampled=(20, 40, 90))

    def test_flcom_on_product(self, m_ab):
        product = direct_product(m_ab.algebra, cyclic_group(2))
        campaign(make_flcom_evaluator, product.algebra, exhaustive_upto=3, sampled=(12, 30, 64))

    def test_flcom_rejects_linear_monoid(self, m_abba):
        with pytest.raises(InapplicableError, match="FLCOM"):
            make_flcom_evaluator(m_abba)

    def test_fl_state_is_logarithmic(self, m_ab):
        e = FirstLastComEvaluator(m_ab.algebra)
        e.init(1000)
        small = e.state_bits()
        e.init(1_000_000)
        assert e.state_bits() - small == 2 * 5 * 5 * 10
        assert FirstLastEvaluator(m_ab.algebra).k == 5


class TestLocal:
    def test_li_on_a_sigma_b(self):
        S = example_structure("a-sigma-b")
        campaign(make_li_evaluator, S, exhaustive_upto=8, sampled=(12, 30, 64))
        campaign(make_li_evaluator, S.algebra, start=1, exhaustive_upto=4, sampled=(12, 30, 64))

    def test_li_state_is_constant(self):
        S = example_structure("a-sigma-b")
        e = make_li_evaluator(S)
        e.init(100)
        assert e.state_bits() == 30
        e.init(10**6)
        assert e.state_bits() == 30
        e.init(6)
        assert e.state_bits() == 18

    def test_licom_on_li_times_com(self):
        li = example_structure("a-sigma-b").algebra
        product = direct_product(li, cyclic_group(2))
        campaign(make_licom_evaluator, product.algebra, start=1, exhaustive_upto=3, sampled=(25, 40, 80))

    def test_licom_on_group_semigroup(self):
        campaign(make_licom_evaluator, cyclic_group(3).with_identity(None), start=1, sampled=(25, 40, 80))

    def test_li_rejects_groups(self):
        with pytest.raises(InapplicableError, match="LI"):
            make_li_evaluator(cyclic_group(3).with_identity(None))

    def test_licom_rejects_abc(self, s_abc):
        with pytest.raises(InapplicableError, match="LICOM"):
            make_licom_evaluator(s_abc)

    def test_first_last_letter(self):
        S = example_structure("a-sigma-b")
        campaign(make_first_last_letter_evaluator, S, exhaustive_upto=8, sampled=(12, 30))
        e = make_first_last_letter_evaluator(S)
        e.init(1000)
        assert e.state_bits() == 6

    def test_first_last_letter_empty_word(self):
        S = example_structure("a-sigma-b").algebra
        e = make_first_last_letter_evaluator(S)
        e.init(0)
        with pytest.raises(AlgebraError, match="empty word"):
            e.finish()

        e = make_first_last_letter_evaluator(cyclic_group(1))
        e.init(0)
        assert e.finish() == 0

    def test_first_last_letter_rejects(self, s_abc):
        with pytest.raises(InapplicableError, match="xzy = xy"):
            make_first_last_letter_evaluator(s_abc)


class TestSparse:
    def test_sparse_on_aba_aca(self):
        S = example_structure("aba-aca")
        background = S.morphism["a"]
        factory = lambda s: make_sparse_exception_evaluator(s, background, 2)  # noqa: E731
        campaign(factory, S, exhaustive_upto=6, sampled=(10, 40, 100))

    def test_sparse_on_abba_semigroup(self, s_abba):
        background = s_abba.morphism["a"]
        campaign(lambda s: make_sparse_exception_evaluator(s, background, 2), s_abba, exhaustive_upto=7)

    def test_sparse_state_is_logarithmic(self, s_abba):
        e = make_sparse_exception_evaluator(s_abba, s_abba.morphism["a"], 2)
        e.init(1023)
        assert e.state_bits() == 2 * (10 + 3) + 2 + 1

    def test_sparse_needs_zero(self):
        with pytest.raises(InapplicableError, match="zero"):
            make_sparse_exception_evaluator(cyclic_group(3), 0, 2)

    def test_sparse_needs_enough_exceptions(self, s_abba):
        # Two b's can still be accepted.
        with pytest.raises(InapplicableError, match="exceptions"):
            make_sparse_exception_evaluator(s_abba, s_abba.morphism["a"], 1)

    def test_sparse_needs_idempotent_background(self):
        S = example_structure("abstar")
        with pytest.raises(InapplicableError):
            make_sparse_exception_evaluator(S, S.morphism["a"], 2)


class TestLinear:
    @pytest.mark.parametrize("S", SEMIGROUPS, ids=repr)
    def test_interval_and_bitpacked_on_catalog(self, S):
        for factory in (make_interval_merge_evaluator, make_bitpacked_evaluator):
            campaign(factory, S, start=1, exhaustive_upto=3, sampled=(4, 5, 9, 16, 17, 50, 129))

    @pytest.mark.parametrize("name", ["abba", "sigma-aa", "abc", "abba-semigroup"])
    def test_interval_and_bitpacked_on_languages(self, name):
        S = example_structure(name)
        for factory in (make_interval_merge_evaluator, make_bitpacked_evaluator):
            campaign(factory, S, exhaustive_upto=6, sampled=(7, 8, 33, 100))

    def test_interval_empty_word(self, m_abba):
        e = IntervalMergeEvaluator(m_abba.algebra)
        assert run_stream(e, [], []) == (m_abba.algebra.identity, 0)

    def test_bitpacked_state_grows_linearly(self, m_abba):
        e = BitPackedEvaluator(m_abba.algebra)
        e.init(4096)
        first = e.state_bits()
        e.init(8192)
        second = e.state_bits()
        assert 1.8 < second / first < 2.3
        interval = IntervalMergeEvaluator(m_abba.algebra)
        interval.init(8192)
        assert interval.state_bits() > second


@pytest.mark.slow
class TestRandomCatalog:
    """Every catalog algebra an evaluator accepts must agree with the reference."""

    CATALOG = random_catalog(40, seed=11)

    @pytest.mark.parametrize(
        ("factory", "extra"),
        [
            (make_fl_evaluator, "ab"),
            (make_flcom_evaluator, "ab"),
            (make_li_evaluator, "a-sigma-b"),
            (make_licom_evaluator, "a-sigma-b"),
            (make_first_last_letter_evaluator, "a-sigma-b"),
        ],
        ids=["fl", "flcom", "li", "licom", "firstlast"],
    )
    def test_campaign_on_accepted_algebras(self, factory, extra):
        accepted = 0
        for S in [*self.CATALOG, example_structure(extra).algebra]:
            try:
                factory(S)
            except InapplicableError:
                continue
            accepted += 1
            result = differential_campaign(
                factory, S, [*range(1, 17), 32, 64], words_per_n=100, perms_per_word=5, seed=7, exhaustive_upto=4
            )
            assert result.passed, result.failure and result.failure.to_replay()
        assert accepted >= 1


class TestCombinators:
    def test_product(self, m_ab):
        product = direct_product(m_ab.algebra, cyclic_group(2))

        def factory(_):
            return ProductEvaluator(
                make_fl_evaluator(m_ab.algebra), make_commutative_evaluator(cyclic_group(2)), product
            )

        campaign(factory, product.algebra, exhaustive_upto=3)

    def test_product_without_pairing_returns_tuples(self, m_ab):
        e = ProductEvaluator(make_fl_evaluator(m_ab.algebra), make_commutative_evaluator(cyclic_group(2)))
        answer, _ = run_stream(e, [(1, 1), (2, 1)], [2, 1])
        assert answer == (m_ab.algebra.index("ab"), 0)
        assert e.state_bits() == e.first.state_bits() + e.second.state_bits()

    def test_sub(self, m_ab):
        M = m_ab.algebra
        sub, embedding = subalgebra(M, [M.index("a")])
        campaign(lambda _: SubEvaluator(FirstLastEvaluator(M), embedding), sub, start=1)

    def test_quotient(self, m_ab):
        M = m_ab.algebra
        class_map = [0, 1, 2, 3, 3]
        Q = quotient(M, class_map)
        campaign(lambda _: QuotientEvaluator(FirstLastEvaluator(M), class_map), Q)

    def test_quotient_rejects_non_congruence(self, m_ab):
        with pytest.raises(AlgebraError):
            QuotientEvaluator(FirstLastEvaluator(m_ab.algebra), [0, 1, 1, 2, 3])

    def test_language_adapter_keeps_inner_name(self, m_ab):
        e = make_fl_evaluator(m_ab)
        assert e.name == "fl"
        assert run_stream(e, list("ab"), [2, 1])[0] is True
        assert run_stream(e, [], [])[0] is False


class TestRegistry:
    @pytest.mark.parametrize(
        ("example", "expected"),
        [
            ("parity", "commutative"),
            ("ab", "flcom"),
            ("abba", "bitpacked"),
            ("sigma-aa", "bitpacked"),
            ("a-sigma-b", "li"),
            ("abc", "bitpacked"),
            ("abstar", "abstar"),
            ("aba", "aba"),
            ("ababa", "ababa"),
            ("ababab", "ababab"),
        ],
    )
    def test_select(self, example, expected):
        assert select_evaluator(example_structure(example)) == expected

    def test_select_licom_for_group_semigroup(self):
        assert select_evaluator(cyclic_group(3).with_identity(None)) == "licom"

    def test_build(self, m_ab):
        assert build_evaluator("auto", m_ab).name == "flcom"
        assert build_evaluator("reference", m_ab).name == "reference"
        assert "auto" in EVALUATOR_NAMES and "ababab" in EVALUATOR_NAMES

    def test_build_rejects(self, m_ab):
        with pytest.raises(InapplicableError, match="only decides"):
            build_evaluator("aba", m_ab)
        with pytest.raises(InapplicableError, match="language"):
            build_evaluator("aba", m_ab.algebra)
        with pytest.raises(InapplicableError, match="unknown evaluator"):
            build_evaluator("magic", m_ab)

    def test_inapplicable_exit_code(self, m_abba):
        with pytest.raises(InapplicableError) as info:
            build_evaluator("flcom", m_abba)
        assert info.value.exit_code == 4
