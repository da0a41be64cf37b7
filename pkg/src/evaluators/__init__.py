"""Out-of-order evaluators.

Factories accept a ``FiniteSemigroup`` (letters are element indices, the
answer is an element) or a ``SyntacticStructure`` (letters are alphabet
letters, the answer is accept/reject); the reference and commutative
evaluators also take a ``Dfa`` directly.
"""

from collections.abc import Callable, Sequence

from ..algebra import FiniteSemigroup, ProductAlgebra
from ..errors import InapplicableError
from ..langkit import Dfa, SyntacticStructure
from .base import Evaluator, StreamEvent, ThresholdPeriodCounter
from .combinators import LanguageEvaluator, ProductEvaluator, QuotientEvaluator, SubEvaluator
from .firstlast import FirstLastComEvaluator, FirstLastEvaluator
from .intervals import BitPackedEvaluator, IntervalMergeEvaluator, IntervalTables, run_left_endpoint
from .local import LocalComEvaluator, LocalEvaluator, SparseExceptionEvaluator
from .reference import CommutativeEvaluator, ReferenceEvaluator
from .special import (
    AbabaEvaluator,
    AbababEvaluator,
    AbaEvaluator,
    AbStarEvaluator,
    FirstLastLetterEvaluator,
)

Subject = FiniteSemigroup | SyntacticStructure | Dfa


def _lift(subject: Subject, build: Callable[[FiniteSemigroup], Evaluator]) -> Evaluator:
    if isinstance(subject, SyntacticStructure):
        return LanguageEvaluator(subject, build(subject.algebra))
    if isinstance(subject, FiniteSemigroup):
        return build(subject)
    raise InapplicableError(f"expected an algebra or a syntactic structure, got {type(subject).__name__}")


def make_reference_evaluator(subject: Subject) -> Evaluator:
    if isinstance(subject, SyntacticStructure):
        return ReferenceEvaluator(subject.dfa)
    return ReferenceEvaluator(subject)


def make_commutative_evaluator(subject: Subject) -> Evaluator:
    if isinstance(subject, SyntacticStructure):
        return CommutativeEvaluator(subject.dfa)
    return CommutativeEvaluator(subject)


def make_fl_evaluator(subject: Subject) -> Evaluator:
    return _lift(subject, FirstLastEvaluator)


def make_flcom_evaluator(subject: Subject) -> Evaluator:
    return _lift(subject, FirstLastComEvaluator)


def make_li_evaluator(subject: Subject) -> Evaluator:
    return _lift(subject, LocalEvaluator)


def make_licom_evaluator(subject: Subject) -> Evaluator:
    return _lift(subject, LocalComEvaluator)


def make_interval_merge_evaluator(subject: Subject) -> Evaluator:
    return _lift(subject, IntervalMergeEvaluator)


def make_bitpacked_evaluator(subject: Subject) -> Evaluator:
    return _lift(subject, BitPackedEvaluator)


def make_first_last_letter_evaluator(subject: Subject) -> Evaluator:
    return _lift(subject, FirstLastLetterEvaluator)


def make_sparse_exception_evaluator(subject: Subject, background: int, bound: int) -> Evaluator:
    return _lift(subject, lambda S: SparseExceptionEvaluator(S, background, bound))


def make_language_evaluator(structure: SyntacticStructure, inner: Evaluator) -> Evaluator:
    return LanguageEvaluator(structure, inner)


def make_product_evaluator(
    first: Evaluator, second: Evaluator, product: ProductAlgebra | None = None
) -> Evaluator:
    return ProductEvaluator(first, second, product)


def make_sub_evaluator(host: Evaluator, embedding: Sequence[int]) -> Evaluator:
    return SubEvaluator(host, embedding)


def make_quotient_evaluator(host: Evaluator, class_map: Sequence[int]) -> Evaluator:
    return QuotientEvaluator(host, class_map)


def make_abstar_evaluator() -> Evaluator:
    return AbStarEvaluator()


def make_aba_evaluator() -> Evaluator:
    return AbaEvaluator()


def make_ababa_evaluator() -> Evaluator:
    return AbabaEvaluator()


def make_ababab_evaluator() -> Evaluator:
    return AbababEvaluator()


__all__ = [
    "AbStarEvaluator",
    "AbaEvaluator",
    "AbabaEvaluator",
    "AbababEvaluator",
    "BitPackedEvaluator",
    "CommutativeEvaluator",
    "Evaluator",
    "FirstLastComEvaluator",
    "FirstLastEvaluator",
    "FirstLastLetterEvaluator",
    "IntervalMergeEvaluator",
    "IntervalTables",
    "LanguageEvaluator",
    "LocalComEvaluator",
    "LocalEvaluator",
    "ProductEvaluator",
    "QuotientEvaluator",
    "ReferenceEvaluator",
    "SparseExceptionEvaluator",
    "StreamEvent",
    "SubEvaluator",
    "ThresholdPeriodCounter",
    "make_aba_evaluator",
    "make_ababa_evaluator",
    "make_ababab_evaluator",
    "make_abstar_evaluator",
    "make_bitpacked_evaluator",
    "make_commutative_evaluator",
    "make_first_last_letter_evaluator",
    "make_fl_evaluator",
    "make_flcom_evaluator",
    "make_interval_merge_evaluator",
    "make_language_evaluator",
    "make_li_evaluator",
    "make_licom_evaluator",
    "make_product_evaluator",
    "make_quotient_evaluator",
    "make_reference_evaluator",
    "make_sparse_exception_evaluator",
    "make_sub_evaluator",
    "run_left_endpoint",
]
