"""Variety-closure combinators and the language adapter.

Evaluators compose the way varieties are closed: a product evaluator fans
each event out to one evaluator per factor, a sub-evaluator runs the host on
embedded letters, and a quotient evaluator runs the host on class
representatives. ``LanguageEvaluator`` turns an algebra evaluator into a
membership tester through a syntactic morphism.
"""

from collections.abc import Sequence

from ..algebra import FiniteSemigroup, ProductAlgebra, quotient
from ..errors import AlgebraError, StreamError
from ..langkit import SyntacticStructure
from .base import Evaluator, StreamEvent


class ProductEvaluator(Evaluator):
    name = "product"

    def __init__(self, first: Evaluator, second: Evaluator, product: ProductAlgebra | None = None) -> None:
        super().__init__()
        self.first = first
        self.second = second
        self.product = product

    def _reset(self, n: int) -> None:
        self.first.init(n)
        self.second.init(n)

    def _split(self, letter) -> tuple:
        if isinstance(letter, tuple) and len(letter) == 2:
            return letter
        if self.product is not None and not isinstance(letter, str) and 0 <= letter < self.product.algebra.size:
            return self.product.split(int(letter))
        raise StreamError(f"{letter!r} is not an element of the product")

    def _feed(self, letter, position: int) -> None:
        a, b = self._split(letter)
        self.first.feed(StreamEvent(a, position, self.n))
        self.second.feed(StreamEvent(b, position, self.n))

    def _finish(self):
        a, b = self.first.finish(), self.second.finish()
        return self.product.pair(a, b) if self.product is not None else (a, b)

    def state_bits(self) -> int:
        return self.first.state_bits() + self.second.state_bits()


class SubEvaluator(Evaluator):
    """Runs ``host`` on the image of each letter under ``embedding``."""

    name = "sub"

    def __init__(self, host: Evaluator, embedding: Sequence[int]) -> None:
        super().__init__()
        self.host = host
        self.embedding = list(embedding)
        self._back = {h: i for i, h in enumerate(self.embedding)}

    def _reset(self, n: int) -> None:
        self.host.init(n)

    def _feed(self, letter, position: int) -> None:
        if isinstance(letter, str) or not 0 <= letter < len(self.embedding):
            raise StreamError(f"{letter!r} is not an element of the subalgebra")
        self.host.feed(StreamEvent(self.embedding[letter], position, self.n))

    def _finish(self) -> int:
        result = self.host.finish()
        try:
            return self._back[result]
        except KeyError:
            raise AlgebraError(f"host result {result} lies outside the subalgebra") from None

    def state_bits(self) -> int:
        return self.host.state_bits()


class QuotientEvaluator(Evaluator):
    """Runs ``host`` on one fixed representative per class.

    Classes are numbered by sorted label, the same numbering ``quotient``
    uses for its elements.
    """

    name = "quotient"

    def __init__(self, host: Evaluator, class_map: Sequence[int]) -> None:
        super().__init__()
        algebra = getattr(host, "algebra", None)
        if isinstance(algebra, FiniteSemigroup):
            quotient(algebra, class_map)
        labels = sorted(set(class_map))
        number = {label: i for i, label in enumerate(labels)}
        self.host = host
        self.class_of = [number[c] for c in class_map]
        self.representative = [self.class_of.index(c) for c in range(len(labels))]

    def _reset(self, n: int) -> None:
        self.host.init(n)

    def _feed(self, letter, position: int) -> None:
        if isinstance(letter, str) or not 0 <= letter < len(self.representative):
            raise StreamError(f"{letter!r} is not a class of the quotient")
        self.host.feed(StreamEvent(self.representative[letter], position, self.n))

    def _finish(self) -> int:
        return self.class_of[self.host.finish()]

    def state_bits(self) -> int:
        return self.host.state_bits()


class LanguageEvaluator(Evaluator):
    """Membership through a syntactic morphism: letters in, accept/reject out."""

    def __init__(self, structure: SyntacticStructure, inner: Evaluator) -> None:
        super().__init__()
        self.structure = structure
        self.inner = inner
        self.name = inner.name

    def _reset(self, n: int) -> None:
        self.inner.init(n)

    def _feed(self, letter, position: int) -> None:
        try:
            x = self.structure.morphism[letter]
        except (KeyError, TypeError):
            raise StreamError(f"letter {letter!r} is not in the alphabet") from None
        self.inner.feed(StreamEvent(x, position, self.n))

    def _finish(self) -> bool:
        if self.n == 0:
            dfa = self.structure.dfa
            return dfa.initial in dfa.accepting
        return self.inner.finish() in self.structure.accepting

    def state_bits(self) -> int:
        return self.inner.state_bits()
