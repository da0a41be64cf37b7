"""Constant-space evaluators for semigroups in Li and Li∨Com, and the
sparse-exception evaluator.

Li: only the first k+1 and last k+1 letters matter (k = |S|). Li∨Com: the
same windows plus threshold/period counts of the interior letters, which are
multiplied in a canonical commutative order.
"""

import logging

from ..algebra import Equation, FiniteSemigroup, evaluate_word, power, zero_element
from ..errors import InapplicableError
from .base import (
    AlgebraEvaluator,
    ThresholdPeriodCounter,
    position_bits,
    require_equation,
    value_bits,
)

logger = logging.getLogger(__name__)


class LocalEvaluator(AlgebraEvaluator):
    """Keeps positions [1, k+1] and [n-k, n]; drops the interior."""

    name = "li"
    equation = Equation.LI

    def __init__(self, S: FiniteSemigroup) -> None:
        super().__init__(S)
        require_equation(S, self.equation, f"{self.name} evaluator")
        self.k = S.size
        self._full = True
        self._prefix: list[int | None] = []
        self._suffix: list[int | None] = []

    def _reset(self, n: int) -> None:
        k = self.k
        self._full = n <= 2 * k + 2
        self._prefix = [None] * (n if self._full else k + 1)
        self._suffix = [] if self._full else [None] * (k + 1)

    def _feed(self, letter, position: int) -> None:
        x = self.element(letter)
        n, k = self.n, self.k
        if self._full or position <= k + 1:
            self._prefix[position - 1] = x
        elif position >= n - k:
            self._suffix[position - (n - k)] = x
        else:
            self._interior(x)

    def _interior(self, x: int) -> None:
        pass

    def _middle(self) -> list[int]:
        return []

    def _finish(self) -> int:
        return evaluate_word(self.algebra, [*self._prefix, *self._middle(), *self._suffix])

    def state_bits(self) -> int:
        cells = len(self._prefix) + len(self._suffix)
        return cells * (self.element_bits + 1)


class LocalComEvaluator(LocalEvaluator):
    """Li windows plus interior counts with T = ω + 2k + 2, P = ω."""

    name = "licom"
    equation = Equation.LICOM

    def __init__(self, S: FiniteSemigroup) -> None:
        super().__init__(S)
        self.period = S.omega
        self.threshold = S.omega + 2 * self.k + 2
        self._counts = ThresholdPeriodCounter(S.size, self.threshold, self.period)

    def _reset(self, n: int) -> None:
        super()._reset(n)
        self._counts = ThresholdPeriodCounter(self.algebra.size, self.threshold, self.period)

    def _interior(self, x: int) -> None:
        self._counts.add(x)

    def _middle(self) -> list[int]:
        middle = []
        for m in range(self.algebra.size):
            c = self._counts.representative(m)
            if c:
                middle.append(power(self.algebra, m, c))
        return middle

    def state_bits(self) -> int:
        return super().state_bits() + self._counts.state_bits()


class SparseExceptionEvaluator(AlgebraEvaluator):
    """O(log n) evaluator for words that are mostly one idempotent letter.

    Keeps up to ``bound`` (position, element) pairs of letters other than the
    idempotent ``background``. Any product with more than ``bound`` such
    letters must be the zero; this is checked on construction.
    """

    name = "sparse"

    def __init__(self, S: FiniteSemigroup, background: int, bound: int) -> None:
        super().__init__(S)
        if bound < 1:
            raise ValueError("bound must be positive")
        zero = zero_element(S)
        if zero is None:
            raise InapplicableError("sparse-exception evaluator needs a zero element")
        rows = S.rows
        if rows[background][background] != background:
            raise InapplicableError(f"background {S.name(background)!r} is not idempotent")

        # Products reachable with j exceptions, background runs collapsed to
        # one letter (the background is idempotent). None is the empty word.
        others = [x for x in range(S.size) if x != background]
        reachable: set[int | None] = {None, background}
        for _ in range(bound + 1):
            step = set()
            for v in reachable:
                for x in others:
                    w = x if v is None else rows[v][x]
                    step.update((w, rows[w][background]))
            reachable = step
        if reachable - {zero}:
            raise InapplicableError(
                f"{bound + 1} exceptions to {S.name(background)!r} do not always give the zero"
            )
        self.background = background
        self.bound = bound
        self.zero = zero
        self._kept: list[tuple[int, int]] = []
        self._overflow = False

    def _reset(self, n: int) -> None:
        self._kept = []
        self._overflow = False

    def _feed(self, letter, position: int) -> None:
        x = self.element(letter)
        if x == self.background or self._overflow:
            return
        if len(self._kept) == self.bound:
            self._overflow = True
            self._kept = []
            logger.debug("sparse evaluator overflowed at position %d", position)
            return
        self._kept.append((position, x))

    def _finish(self) -> int:
        if self._overflow:
            return self.zero
        word = []
        previous = 0
        for position, x in sorted(self._kept):
            if position > previous + 1:
                word.append(self.background)
            word.append(x)
            previous = position
        if self.n > previous:
            word.append(self.background)
        return evaluate_word(self.algebra, word)

    def state_bits(self) -> int:
        pairs = self.bound * (position_bits(self.n) + self.element_bits)
        return pairs + value_bits(self.bound) + 1
