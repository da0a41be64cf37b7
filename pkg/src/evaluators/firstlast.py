"""First-last evaluators for monoids in FL and in FL∨Com.

Per element, the positions of its first k and last k occurrences are kept in
sorted lists (k = |M|). In FL that is all the product depends on. The FL∨Com
evaluator also keeps a threshold/period counter per element and rebuilds a
canonical word with the right counts before evaluating.
"""

import bisect
from collections import Counter

from ..algebra import Equation, FiniteSemigroup, evaluate_word
from .base import (
    AlgebraEvaluator,
    ThresholdPeriodCounter,
    position_bits,
    require_equation,
    require_monoid,
    value_bits,
)


class FirstLastEvaluator(AlgebraEvaluator):
    """O(log n) evaluator for monoids satisfying FL."""

    name = "fl"
    equation = Equation.FL

    def __init__(self, M: FiniteSemigroup, k: int | None = None) -> None:
        super().__init__(M)
        require_monoid(M, f"{self.name} evaluator")
        require_equation(M, self.equation, f"{self.name} evaluator")
        self.k = M.size if k is None else k
        self._first: list[list[int]] = []
        self._last: list[list[int]] = []

    def _reset(self, n: int) -> None:
        self._first = [[] for _ in range(self.algebra.size)]
        self._last = [[] for _ in range(self.algebra.size)]

    def _feed(self, letter, position: int) -> None:
        m = self.element(letter)
        self._track(m, position)

    def _track(self, m: int, position: int) -> None:
        k = self.k
        first = self._first[m]
        if len(first) < k or position < first[-1]:
            bisect.insort(first, position)
            if len(first) > k:
                first.pop()
        last = self._last[m]
        if len(last) < k or position > last[0]:
            bisect.insort(last, position)
            if len(last) > k:
                last.pop(0)

    def retained(self) -> list[tuple[int, int]]:
        """The (position, element) pairs of the k-first-last subword, in position order."""
        pairs = set()
        for m in range(self.algebra.size):
            pairs.update((p, m) for p in self._first[m])
            pairs.update((p, m) for p in self._last[m])
        return sorted(pairs)

    def witness(self) -> list[int]:
        return [m for _, m in self.retained()]

    def _finish(self) -> int:
        return evaluate_word(self.algebra, self.witness())

    def state_bits(self) -> int:
        size = self.algebra.size
        slots = 2 * self.k * size * position_bits(self.n)
        lengths = 2 * size * value_bits(self.k)
        return slots + lengths


class FirstLastComEvaluator(FirstLastEvaluator):
    """O(log n) evaluator for monoids satisfying the FL∨Com equation.

    Counts are kept with threshold T = ω + 2k + 2 and period P = ω. Should a
    monoid ever disagree with the reference under these values, the period
    to try next is lcm(element periods) * |M|! with T raised to match.
    """

    name = "flcom"
    equation = Equation.FLCOM

    def __init__(self, M: FiniteSemigroup, k: int | None = None) -> None:
        super().__init__(M, k)
        self.period = M.omega
        self.threshold = M.omega + 2 * self.k + 2
        self._counts = ThresholdPeriodCounter(M.size, self.threshold, self.period)

    def _reset(self, n: int) -> None:
        super()._reset(n)
        self._counts = ThresholdPeriodCounter(self.algebra.size, self.threshold, self.period)

    def _feed(self, letter, position: int) -> None:
        m = self.element(letter)
        self._track(m, position)
        self._counts.add(m)

    def witness(self) -> list[int]:
        retained = self.retained()
        kept = Counter(m for _, m in retained)
        extra: dict[int, int] = {}
        anchor: dict[int, int] = {}
        for m, f in kept.items():
            exact = self._counts.exact(m)
            total = exact if exact is not None else self._counts.representative(m, floor=f)
            if total > f:
                # More than 2k occurrences, so the first-k list is full and the
                # copies land strictly inside the retained occurrences of m.
                extra[m] = total - f
                anchor[m] = self._first[m][self.k - 1]
        word: list[int] = []
        for position, m in retained:
            word.append(m)
            if anchor.get(m) == position:
                word.extend([m] * extra[m])
        return word

    def state_bits(self) -> int:
        return super().state_bits() + self._counts.state_bits()
