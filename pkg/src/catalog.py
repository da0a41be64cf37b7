"""Named Examples.

The languages used throughout the tests, the CLI and the tool server, each
with the algebra view (monoid or semigroup) it is studied under, plus the
registry that maps a few concrete languages to their dedicated evaluators.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import FiniteSemigroup, Regime, parse_semigroup
from .errors import AlgebraError, InapplicableError
from .langkit import Dfa, SyntacticStructure, compile_language, syntactic_monoid, syntactic_semigroup


@dataclass(frozen=True)
class Example:
    """A language studied through its syntactic monoid or semigroup."""

    name: str
    regex: str
    alphabet: str
    view: str
    regime: Regime | None = None


EXAMPLES: dict[str, Example] = {
    e.name: e
    for e in (
        Example("parity", "(aa)*", "a", "monoid", Regime.CONSTANT),
        Example("ab", "ab", "ab", "monoid", Regime.LOGARITHMIC),
        Example("abba", "a*bba*", "ab", "monoid", Regime.LINEAR),
        Example("sigma-aa", ".*aa.*", "ab", "monoid", Regime.LINEAR),
        Example("a-sigma-b", "a.*b", "ab", "semigroup", Regime.CONSTANT),
        Example("abc", "a*bc*", "abc", "semigroup", Regime.AT_LEAST_LOGARITHMIC),
        Example("abba-semigroup", "a*bba*", "ab", "semigroup", Regime.AT_LEAST_LOGARITHMIC),
        Example("aba-aca", "a*ba+ca*", "abc", "semigroup", Regime.AT_LEAST_LOGARITHMIC),
        Example("abstar", "(ab)*", "ab", "semigroup", Regime.AT_LEAST_LOGARITHMIC),
        Example("aba", "a*b*a*", "ab", "monoid"),
        Example("ababa", "a*b*a*b*a*", "ab", "monoid"),
        Example("ababab", "a*b*a*b*a*b*", "ab", "monoid"),
    )
}


def get_example(name: str) -> Example:
    try:
        return EXAMPLES[name]
    except KeyError:
        known = ", ".join(sorted(EXAMPLES))
        raise ValueError(f"unknown example {name!r} (known: {known})") from None


@lru_cache(maxsize=None)
def language(regex: str, alphabet: str) -> Dfa:
    return compile_language(regex, alphabet)


@lru_cache(maxsize=None)
def structure(regex: str, alphabet: str, view: str = "monoid") -> SyntacticStructure:
    """Syntactic monoid or semigroup of a language, cached by its source text."""
    dfa = language(regex, alphabet)
    if view == "monoid":
        return syntactic_monoid(dfa)
    if view == "semigroup":
        return syntactic_semigroup(dfa)
    raise ValueError(f"view must be 'monoid' or 'semigroup', got {view!r}")


def example_structure(name: str) -> SyntacticStructure:
    example = get_example(name)
    return structure(example.regex, example.alphabet, example.view)


def cyclic_group(order: int) -> FiniteSemigroup:
    """Z/nZ with elements e, g, g2, ..."""
    if order < 1:
        raise ValueError("order must be positive")
    names = ("e", "g", *(f"g{i}" for i in range(2, order)))[:order]
    i = np.arange(order)
    return FiniteSemigroup(names, (i[:, None] + i[None, :]) % order, identity=0, check_laws=False)


# Languages with a dedicated evaluator, keyed by evaluator name. Lookup goes
# through minimal DFAs, so any regex denoting the same language matches.
SPECIAL_LANGUAGES: dict[str, tuple[str, str]] = {
    "abstar": ("(ab)*", "ab"),
    "aba": ("a*b*a*", "ab"),
    "ababa": ("a*b*a*b*a*", "ab"),
    "ababab": ("a*b*a*b*a*b*", "ab"),
}


def special_evaluator_for(dfa: Dfa) -> str | None:
    """Name of the dedicated evaluator for this language, if there is one."""
    for name, (regex, alphabet) in SPECIAL_LANGUAGES.items():
        if tuple(alphabet) == dfa.alphabet and language(regex, alphabet) == dfa:
            return name
    return None


def require_special(name: str, dfa: Dfa) -> None:
    """Check that the dedicated evaluator ``name`` decides the language of ``dfa``.

    Raises:
        InapplicableError: If the language is a different one.
    """
    regex, alphabet = SPECIAL_LANGUAGES[name]
    if tuple(alphabet) != dfa.alphabet or language(regex, alphabet) != dfa:
        raise InapplicableError(f"evaluator {name!r} only decides {regex} over {{{','.join(alphabet)}}}")


def resolve_subject(
    *,
    regex: str | None = None,
    alphabet: str | None = None,
    table: str | FiniteSemigroup | None = None,
    example: str | None = None,
    view: str | None = None,
) -> FiniteSemigroup | SyntacticStructure:
    """The language or algebra described by exactly one of ``regex``, ``table``
    (text or parsed) and ``example``.

    ``view`` picks the syntactic monoid or semigroup of a regex (default
    monoid); for a table, ``semigroup`` forgets the identity and ``monoid``
    requires one.
    """
    if sum(x is not None for x in (regex, table, example)) != 1:
        raise ValueError("give exactly one of regex, table or example")
    if example is not None:
        return example_structure(example)
    if regex is not None:
        if not alphabet:
            raise ValueError("a regex needs an alphabet")
        return structure(regex, alphabet, view or "monoid")
    S = table if isinstance(table, FiniteSemigroup) else parse_semigroup(table)
    if view == "semigroup":
        return S.with_identity(None)
    if view == "monoid" and S.identity is None:
        raise AlgebraError("the table declares no identity, it is not a monoid")
    return S
