"""Evaluator lookup by name, and automatic selection."""

import logging
from collections.abc import Callable

from ..algebra import Equation, FiniteSemigroup, Regime, check_equation, classify_monoid, classify_semigroup
from ..catalog import require_special, special_evaluator_for
from ..errors import InapplicableError
from ..langkit import SyntacticStructure
from . import (
    make_aba_evaluator,
    make_ababa_evaluator,
    make_ababab_evaluator,
    make_abstar_evaluator,
    make_bitpacked_evaluator,
    make_commutative_evaluator,
    make_first_last_letter_evaluator,
    make_fl_evaluator,
    make_flcom_evaluator,
    make_interval_merge_evaluator,
    make_li_evaluator,
    make_licom_evaluator,
    make_reference_evaluator,
)
from .base import Evaluator

logger = logging.getLogger(__name__)

Subject = FiniteSemigroup | SyntacticStructure

GENERIC: dict[str, Callable[[Subject], Evaluator]] = {
    "reference": make_reference_evaluator,
    "commutative": make_commutative_evaluator,
    "fl": make_fl_evaluator,
    "flcom": make_flcom_evaluator,
    "li": make_li_evaluator,
    "licom": make_licom_evaluator,
    "interval": make_interval_merge_evaluator,
    "bitpacked": make_bitpacked_evaluator,
    "firstlast": make_first_last_letter_evaluator,
}

LANGUAGE_ONLY: dict[str, Callable[[], Evaluator]] = {
    "abstar": make_abstar_evaluator,
    "aba": make_aba_evaluator,
    "ababa": make_ababa_evaluator,
    "ababab": make_ababab_evaluator,
}

EVALUATOR_NAMES = ("auto", *GENERIC, *LANGUAGE_ONLY)


def select_evaluator(subject: Subject) -> str:
    """Tightest applicable evaluator: a dedicated one for a registered
    language, else by classification of the algebra."""
    if isinstance(subject, SyntacticStructure):
        special = special_evaluator_for(subject.dfa)
        if special is not None:
            return special
        algebra = subject.algebra
    else:
        algebra = subject
    if algebra.is_monoid:
        report = classify_monoid(algebra)
        choice = {Regime.CONSTANT: "commutative", Regime.LOGARITHMIC: "flcom"}.get(report.regime, "bitpacked")
    else:
        report = classify_semigroup(algebra)
        if report.regime is Regime.CONSTANT:
            choice = "li" if check_equation(algebra, Equation.LI) is None else "licom"
        else:
            choice = "bitpacked"
    logger.debug("auto dispatch: %s -> %s", report.regime, choice)
    return choice


def build_evaluator(name: str, subject: Subject) -> Evaluator:
    """Instantiate evaluator ``name`` for ``subject``.

    Raises:
        InapplicableError: If the evaluator does not apply to the subject.
    """
    if name == "auto":
        name = select_evaluator(subject)
    if name in GENERIC:
        return GENERIC[name](subject)
    if name in LANGUAGE_ONLY:
        if not isinstance(subject, SyntacticStructure):
            raise InapplicableError(f"evaluator {name!r} decides a language, not an algebra")
        require_special(name, subject.dfa)
        return LANGUAGE_ONLY[name]()
    raise InapplicableError(f"unknown evaluator {name!r} (choose from {', '.join(EVALUATOR_NAMES)})")
