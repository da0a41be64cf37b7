"""Tests for finite semigroups, equations and classification."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.algebra import (
    Equation,
    FiniteSemigroup,
    Regime,
    all_words,
    check_equation,
    classify_monoid,
    classify_semigroup,
    direct_product,
    evaluate_equation,
    evaluate_word,
    fl_subword,
    format_semigroup,
    neutral_element,
    parse_semigroup,
    power,
    quotient,
    random_catalog,
    subalgebra,
    transformation_semigroup,
    zero_element,
)
from src.catalog import EXAMPLES, cyclic_group, example_structure, structure
from src.errors import AlgebraError, CapExceededError, ParseError

CATALOG = random_catalog(24, seed=7)


def names(S, assignment):
    return {var: S.name(x) for var, x in assignment.items()}


class TestFiniteSemigroup:
    def test_rejects_non_associative_table(self):
        with pytest.raises(AlgebraError, match="associative"):
            FiniteSemigroup(("x", "y"), [[1, 0], [0, 0]])

    def test_rejects_one_sided_identity(self):
        # Left-zero semigroup: xy = x.
        with pytest.raises(AlgebraError, match="identity"):
            FiniteSemigroup(("a", "b"), [[0, 0], [1, 1]], identity=0)

    def test_rejects_bad_shape_and_names(self):
        with pytest.raises(AlgebraError):
            FiniteSemigroup(("a", "b"), [[0, 1]])
        with pytest.raises(AlgebraError):
            FiniteSemigroup(("a", "a"), [[0, 0], [0, 0]])
        with pytest.raises(AlgebraError):
            FiniteSemigroup(("a",), [[1]])

    def test_table_is_read_only(self):
        S = cyclic_group(3)
        with pytest.raises(ValueError):
            S.table[0, 0] = 1

    def test_index_and_repr(self, m_ab):
        M = m_ab.algebra
        assert M.elements == ("1", "a", "b", "ab", "0")
        assert M.index("ab") == 3
        assert repr(M) == "FiniteMonoid(1 a b ab 0)"
        assert repr(M.with_identity(None)) == "FiniteSemigroup(1 a b ab 0)"
        with pytest.raises(AlgebraError, match="unknown element"):
            M.index("ba")

    def test_neutral_and_zero(self, m_ab):
        M = m_ab.algebra
        assert neutral_element(M) == M.index("1")
        assert zero_element(M) == M.index("0")
        assert zero_element(cyclic_group(3)) is None


class TestEvaluation:
    def test_evaluate_word(self, m_ab):
        M = m_ab.algebra
        a, b = M.index("a"), M.index("b")
        assert M.name(evaluate_word(M, [a, b])) == "ab"
        assert M.name(evaluate_word(M, [b, a])) == "0"
        assert M.name(evaluate_word(M, [])) == "1"

    def test_empty_word_needs_identity(self, m_ab):
        with pytest.raises(AlgebraError, match="empty word"):
            evaluate_word(m_ab.algebra.with_identity(None), [])

    def test_power_rejects_zero_exponent(self):
        with pytest.raises(ValueError):
            power(cyclic_group(2), 1, 0)

    def test_idempotent_power(self, m_ab):
        assert cyclic_group(2).omega == 2
        assert cyclic_group(6).omega == 6
        assert m_ab.algebra.omega == 2

    @pytest.mark.parametrize("S", CATALOG[:12], ids=repr)
    def test_omega_map_is_idempotent(self, S):
        for x in range(S.size):
            e = int(S.omega_map[x])
            assert S.multiply(e, e) == e

    @pytest.mark.parametrize("S", CATALOG[:12], ids=repr)
    def test_omega_is_the_least_idempotent_power(self, S):
        def idempotent(n):
            return all(power(S, power(S, x, n), 2) == power(S, x, n) for x in range(S.size))

        assert idempotent(S.omega)
        assert not any(idempotent(n) for n in range(1, S.omega))

    @settings(max_examples=50, deadline=None)
    @given(data=st.data())
    def test_power_matches_repeated_product(self, data):
        S = data.draw(st.sampled_from(CATALOG))
        x = data.draw(st.integers(0, S.size - 1))
        n = data.draw(st.integers(1, 40))
        assert power(S, x, n) == evaluate_word(S, [x] * n)


class TestEquations:
    def test_com_witness_on_ab(self, m_ab):
        M = m_ab.algebra
        witness = check_equation(M, Equation.COM)
        assert witness is not None
        assert names(M, witness.assignment) == {"x": "a", "y": "b"}
        assert witness.describe(M) == "x=a y=b"
        assert witness.values(M) == "lhs=ab rhs=0"

    def test_flcom_witness_on_abba(self, m_abba):
        M = m_abba.algebra
        witness = check_equation(M, Equation.FLCOM)
        assert names(M, witness.assignment) == {"x": "a", "a": "1", "b": "1", "s": "1", "t": "b", "u": "b"}
        assert witness.values(M) == "lhs=bb rhs=0"

    def test_evaluate_equation_matches_witness(self, m_abba):
        M = m_abba.algebra
        witness = check_equation(M, Equation.FLCOM)
        assert evaluate_equation(M, "FLCOM", witness.assignment) == (witness.lhs_value, witness.rhs_value)

    def test_evaluate_equation_needs_every_variable(self, m_ab):
        with pytest.raises(ValueError, match="misses"):
            evaluate_equation(m_ab.algebra, Equation.COM, {"x": 0})

    def test_cap(self, m_abba):
        with pytest.raises(CapExceededError) as info:
            check_equation(m_abba.algebra, Equation.FLCOM, cap=100)
        assert info.value.exit_code == 3

    def test_groups_are_commutative(self):
        for order in (1, 2, 5):
            assert check_equation(cyclic_group(order), Equation.COM) is None

    @pytest.mark.parametrize("S", CATALOG, ids=repr)
    def test_equation_implications(self, S):
        holds = {eq: check_equation(S, eq) is None for eq in Equation}
        assert holds[Equation.LICOM] == (
            holds[Equation.LICOM1] and holds[Equation.LICOM2] and holds[Equation.LOCAL_COM]
        )
        if holds[Equation.COM] or holds[Equation.FL]:
            assert holds[Equation.FLCOM]
        if holds[Equation.LI]:
            assert holds[Equation.LICOM]

    @pytest.mark.slow
    def test_equation_implications_on_a_wide_catalog(self):
        for S in random_catalog(200, seed=11):
            holds = {eq: check_equation(S, eq) is None for eq in Equation}
            assert holds[Equation.LICOM] == (
                holds[Equation.LICOM1] and holds[Equation.LICOM2] and holds[Equation.LOCAL_COM]
            ), repr(S)
            if holds[Equation.COM] or holds[Equation.FL]:
                assert holds[Equation.FLCOM], repr(S)
            if holds[Equation.LI]:
                assert holds[Equation.LICOM], repr(S)

    @pytest.mark.parametrize("S", CATALOG, ids=repr)
    def test_com_agrees_with_pairwise_scan(self, S):
        rows = S.rows
        commutes = all(rows[x][y] == rows[y][x] for x in range(S.size) for y in range(S.size))
        assert (check_equation(S, Equation.COM) is None) == commutes


class TestClassification:
    @pytest.mark.parametrize(
        ("regex", "alphabet", "regime", "headline"),
        [
            ("(aa)*", "a", Regime.CONSTANT, "Constant (Com)"),
            ("ab", "ab", Regime.LOGARITHMIC, "Logarithmic (FL∨Com)"),
            ("a*bba*", "ab", Regime.LINEAR, None),
            (".*aa.*", "ab", Regime.LINEAR, None),
        ],
    )
    def test_monoids(self, regex, alphabet, regime, headline):
        M = structure(regex, alphabet, "monoid").algebra
        report = classify_monoid(M)
        assert report.regime is regime
        if headline:
            assert report.headline(M) == headline

    def test_linear_witness_is_flcom(self, m_abba):
        report = classify_monoid(m_abba.algebra)
        assert report.witness.equation is Equation.FLCOM
        assert report.variety is None

    def test_logarithmic_keeps_com_witness(self, m_ab):
        report = classify_monoid(m_ab.algebra)
        assert report.witness.equation is Equation.COM
        assert report.variety == "FL∨Com"

    def test_monoid_classification_needs_identity(self, s_abba):
        with pytest.raises(AlgebraError):
            classify_monoid(s_abba.algebra)

    def test_semigroups(self, s_abba, s_abc):
        S = s_abba.algebra
        report = classify_semigroup(S)
        assert report.regime is Regime.AT_LEAST_LOGARITHMIC
        assert report.headline(S) == "AtLeastLogarithmic, LICOM2 violated: s=a x=b y=b"
        assert report.witness.values(S) == "lhs=0 rhs=bb"

        T = s_abc.algebra
        report = classify_semigroup(T)
        assert report.witness.equation is Equation.LICOM1
        assert report.witness.describe(T) == "s=a x=b t=c"
        assert report.witness.values(T) == "lhs=0 rhs=b"

    def test_aba_aca_local_com_witness(self):
        S = example_structure("aba-aca").algebra
        assert S.elements == ("a", "b", "c", "ac", "ba", "bac", "0")
        report = classify_semigroup(S)
        assert report.regime is Regime.AT_LEAST_LOGARITHMIC
        assert report.witness.equation is Equation.LOCAL_COM
        assert report.witness.describe(S) == "s=a x=b y=c"
        assert report.witness.values(S) == "lhs=bac rhs=0"

    @pytest.mark.parametrize("name", ["abc", "a-sigma-b"])
    def test_small_semigroups_have_four_elements(self, name):
        assert example_structure(name).algebra.size == 4

    def test_a_sigma_b_is_constant(self):
        S = example_structure("a-sigma-b").algebra
        report = classify_semigroup(S)
        assert report.regime is Regime.CONSTANT
        assert report.headline(S) == "Constant (Li∨Com)"

    def test_catalog_examples_match_declared_regimes(self):
        for name, example in EXAMPLES.items():
            if example.regime is None:
                continue
            S = example_structure(name).algebra
            report = classify_monoid(S) if example.view == "monoid" else classify_semigroup(S)
            assert report.regime is example.regime, name


class TestFlSubword:
    def test_keeps_first_and_last(self):
        assert fl_subword([1, 2, 1, 3, 1, 1], 1) == [1, 2, 3, 1]
        assert fl_subword([1, 2, 1, 3, 1, 1], 2) == [1, 2, 1, 3, 1, 1]

    def test_rejects_nonpositive_k(self):
        with pytest.raises(ValueError):
            fl_subword([1], 0)


class TestOperators:
    def test_direct_product(self):
        product = direct_product(cyclic_group(2), cyclic_group(3))
        P = product.algebra
        assert P.size == 6
        assert P.identity == product.pair(0, 0)
        assert product.split(product.pair(1, 2)) == (1, 2)
        assert P.multiply(product.pair(1, 2), product.pair(1, 2)) == product.pair(0, 1)
        assert check_equation(P, Equation.COM) is None

    def test_subalgebra(self, m_ab):
        M = m_ab.algebra
        sub, embedding = subalgebra(M, [M.index("a")])
        assert sub.elements == ("a", "0")
        assert [M.name(x) for x in embedding] == ["a", "0"]
        assert not sub.is_monoid

        sub, _ = subalgebra(M, [M.index("a")], monoid=True)
        assert sub.elements == ("1", "a", "0")
        assert sub.identity == 0

    def test_subalgebra_needs_generators(self, m_ab):
        with pytest.raises(AlgebraError):
            subalgebra(m_ab.algebra.with_identity(None), [])

    def test_rees_quotient(self, m_ab):
        M = m_ab.algebra
        Q = quotient(M, [0, 1, 2, 3, 3])
        assert Q.elements == ("1", "a", "b", "[ab,0]")
        assert Q.identity == 0
        assert Q.name(Q.multiply(1, 2)) == "[ab,0]"
        # ab and ba = 0 land in the same class.
        assert classify_monoid(Q).regime is Regime.CONSTANT

    def test_quotient_rejects_non_congruence(self, m_ab):
        with pytest.raises(AlgebraError, match="congruence"):
            quotient(m_ab.algebra, [0, 1, 1, 2, 3])

    def test_transformation_semigroup(self):
        S = transformation_semigroup([(1, 0, 2)], 3)
        assert S.elements == ("102", "012")
        assert S.identity == 1
        assert transformation_semigroup([(1, 2, 0), (0, 0, 1)], 3, limit=2) is None

    def test_transformation_semigroup_rejects_bad_map(self):
        with pytest.raises(AlgebraError):
            transformation_semigroup([(0, 3, 1)], 3)

    def test_random_catalog_is_seeded(self):
        first = [S.elements for S in random_catalog(10, seed=11)]
        second = [S.elements for S in random_catalog(10, seed=11)]
        assert first == second
        assert all(S.size <= 8 for S in random_catalog(10, seed=11))

    def test_all_words(self):
        words = list(all_words([0, 1], 2))
        assert words == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]


class TestCodec:
    TABLE = """\
# cyclic group of order 2
elements: e g
identity: e
e g
g e
"""

    def test_parse(self):
        S = parse_semigroup(self.TABLE)
        assert S.elements == ("e", "g")
        assert S.identity == 0
        assert np.array_equal(S.table, [[0, 1], [1, 0]])

    def test_format_parses_back(self, m_abba):
        M = m_abba.algebra
        again = parse_semigroup(format_semigroup(M))
        assert again.elements == M.elements
        assert again.identity == M.identity
        assert np.array_equal(again.table, M.table)

    @pytest.mark.parametrize(
        ("text", "message"),
        [
            ("", "elements"),
            ("elements:\n", "no elements"),
            ("elements: a a\na a\na a\n", "unique"),
            ("elements: a b\na b\n", "rows"),
            ("elements: a b\na b\nb\n", "columns"),
            ("elements: a b\na c\nb a\n", "unknown element"),
            ("elements: a\nidentity: a b\na\n", "exactly one"),
        ],
    )
    def test_parse_errors(self, text, message):
        with pytest.raises(ParseError, match=message):
            parse_semigroup(text)

    def test_parse_error_exit_code(self):
        with pytest.raises(ParseError) as info:
            parse_semigroup("nonsense")
        assert info.value.exit_code == 2

    def test_non_associative_table_is_an_algebra_error(self):
        with pytest.raises(AlgebraError):
            parse_semigroup("elements: x y\ny x\nx x\n")
