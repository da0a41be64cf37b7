"""Language-specific evaluators.

Each decides one concrete language over {a, b} (or evaluates one concrete
semigroup law) with less space than the general algorithms need:

- ``(ab)*``: a violation flag, O(1).
- first/last letter: semigroups with xzy = xy, O(1).
- ``a*b*a*``: the b's must form one interval, O(log n).
- ``a*b*a*b*a*``: the interior a's must form one interval, checked with
  sums of positions and of squared positions, O(log n).
- ``a*b*a*b*a*b*``: blocks of about sqrt(n) positions, O(sqrt n).
"""

import logging
import math
from collections.abc import Iterator

from ..algebra import FiniteSemigroup, evaluate_word
from ..errors import InapplicableError, StreamError
from .base import AlgebraEvaluator, Evaluator, element_bits, position_bits, value_bits

logger = logging.getLogger(__name__)

LETTERS = ("a", "b")


def _letter(letter) -> str:
    if letter not in LETTERS:
        raise StreamError(f"letter {letter!r} is not in the alphabet 'ab'")
    return letter


class AbStarEvaluator(Evaluator):
    """Membership in (ab)*: every a at an odd position, every b at an even one."""

    name = "abstar"

    def _reset(self, n: int) -> None:
        self._violated = False

    def _feed(self, letter, position: int) -> None:
        odd = position % 2 == 1
        if (_letter(letter) == "a") != odd:
            self._violated = True

    def _finish(self) -> bool:
        return not self._violated and self.n % 2 == 0

    def state_bits(self) -> int:
        # Violation flag and n mod 2.
        return 2


class FirstLastLetterEvaluator(AlgebraEvaluator):
    """Evaluation in a semigroup with xzy = xy: only the first and last letters matter."""

    name = "firstlast"

    def __init__(self, S: FiniteSemigroup) -> None:
        super().__init__(S)
        rows = S.rows
        for x in range(S.size):
            for z in range(S.size):
                xz = rows[x][z]
                for y in range(S.size):
                    if rows[xz][y] != rows[x][y]:
                        raise InapplicableError(
                            f"first/last evaluator needs xzy = xy, fails at "
                            f"x={S.name(x)} z={S.name(z)} y={S.name(y)}"
                        )
        self._first: int | None = None
        self._last: int | None = None

    def _reset(self, n: int) -> None:
        self._first = self._last = None

    def _feed(self, letter, position: int) -> None:
        x = self.element(letter)
        if position == 1:
            self._first = x
        if position == self.n:
            self._last = x

    def _finish(self) -> int:
        if self.n == 0:
            return evaluate_word(self.algebra, [])
        if self.n == 1:
            return self._first
        return self.rows[self._first][self._last]

    def state_bits(self) -> int:
        return 2 * (self.element_bits + 1)


class AbaEvaluator(Evaluator):
    """Membership in a*b*a*: the b's form a contiguous interval."""

    name = "aba"

    def _reset(self, n: int) -> None:
        self._b_min = 0
        self._b_max = 0
        self._n_b = 0

    def _feed(self, letter, position: int) -> None:
        if _letter(letter) == "b":
            self._b_min = position if self._n_b == 0 else min(self._b_min, position)
            self._b_max = max(self._b_max, position)
            self._n_b += 1

    def _finish(self) -> bool:
        return self._n_b == 0 or self._b_max - self._b_min == self._n_b - 1

    def state_bits(self) -> int:
        return 3 * position_bits(self.n)


def _sum_to(m: int) -> int:
    return m * (m + 1) // 2


def _squares_to(m: int) -> int:
    return m * (m + 1) * (2 * m + 1) // 6


class AbabaEvaluator(Evaluator):
    """Membership in a*b*a*b*a*.

    Tracks b_min, b_max and the count, sum and sum of squares of
    a-positions. Letters outside [b_min, b_max] are forced to be a, so
    subtracting them leaves the interior a's. The word is in the language
    iff those form one interval; count and sum pin down the only possible
    interval, and the sum of squares equals the interval's exactly when the
    set is that interval.
    """

    name = "ababa"

    def _reset(self, n: int) -> None:
        self._b_min = 0
        self._b_max = 0
        self._n_a = 0
        self._p_a = 0
        self._q_a = 0

    def _feed(self, letter, position: int) -> None:
        if _letter(letter) == "a":
            self._n_a += 1
            self._p_a += position
            self._q_a += position * position
        else:
            self._b_min = position if self._b_max == 0 else min(self._b_min, position)
            self._b_max = max(self._b_max, position)

    def candidate(self) -> tuple[int, int] | None:
        """The only interval the interior a's could occupy, if any."""
        n, lo, hi = self.n, self._b_min, self._b_max
        outer = (lo - 1) + (n - hi)
        m = self._n_a - outer
        p = self._p_a - _sum_to(lo - 1) - (_sum_to(n) - _sum_to(hi))
        if m == 0:
            return None
        numerator = p - m * (m - 1) // 2
        if numerator % m:
            return None
        left = numerator // m
        return left, left + m - 1

    def _finish(self) -> bool:
        if self._b_max == 0:
            return True
        n, lo, hi = self.n, self._b_min, self._b_max
        m = self._n_a - (lo - 1) - (n - hi)
        if m == 0:
            return True
        interval = self.candidate()
        if interval is None:
            return False
        left, right = interval
        if not lo < left <= right < hi:
            return False
        q = self._q_a - _squares_to(lo - 1) - (_squares_to(n) - _squares_to(hi))
        return q == _squares_to(right) - _squares_to(left - 1)

    def state_bits(self) -> int:
        n = self.n
        return 3 * position_bits(n) + value_bits(_sum_to(n)) + value_bits(_squares_to(n))


# Block kinds for the sqrt(n) evaluator.
EMPTY, A_BLOCK, B_BLOCK, MEMORIZED = range(4)
MAX_MEMORIZED = 6
PATTERN = "ababab"


class AbababEvaluator(Evaluator):
    """Membership in a*b*a*b*a*b* with O(sqrt n) state.

    Positions are cut into blocks of b = ceil(sqrt n). A block is empty, an
    a-block or a b-block while all its letters agree. The first disagreeing
    letter makes it memorized: from then on its letters are stored cell by
    cell, and cells that were never stored are known to hold the block's
    first letter. Seven memorized blocks mean at least seven letter changes,
    so the word is rejected early and later events are ignored.
    """

    name = "ababab"

    def _reset(self, n: int) -> None:
        self.block = math.isqrt(n - 1) + 1 if n else 1
        self.blocks = -(-n // self.block)
        self._kind = [EMPTY] * self.blocks
        # Memorized blocks: first letter of the block, then the stored cells.
        self._memory: dict[int, tuple[str, list[str | None]]] = {}
        self._rejected = False

    @property
    def memorized_blocks(self) -> int:
        return len(self._memory)

    @property
    def rejected_early(self) -> bool:
        return self._rejected

    def _feed(self, letter, position: int) -> None:
        letter = _letter(letter)
        if self._rejected:
            return
        index, offset = divmod(position - 1, self.block)
        kind = self._kind[index]
        if kind == EMPTY:
            self._kind[index] = A_BLOCK if letter == "a" else B_BLOCK
        elif kind == MEMORIZED:
            self._memory[index][1][offset] = letter
        elif (kind == A_BLOCK) != (letter == "a"):
            if len(self._memory) == MAX_MEMORIZED:
                self._rejected = True
                self._memory.clear()
                logger.debug("ababab: rejecting early at position %d", position)
                return
            self._kind[index] = MEMORIZED
            cells: list[str | None] = [None] * self._block_length(index)
            cells[offset] = letter
            self._memory[index] = ("a" if kind == A_BLOCK else "b", cells)

    def _block_length(self, index: int) -> int:
        return min(self.block, self.n - index * self.block)

    def letters(self) -> Iterator[str]:
        """The word as reconstructed from the block summaries, left to right."""
        for index in range(self.blocks):
            kind = self._kind[index]
            if kind == MEMORIZED:
                default, cells = self._memory[index]
                for cell in cells:
                    yield cell if cell is not None else default
            else:
                yield from ("a" if kind == A_BLOCK else "b") * self._block_length(index)

    def reconstruct(self) -> list[str]:
        return list(self.letters())

    def _finish(self) -> bool:
        if self._rejected:
            return False
        phase = 0
        for letter in self.letters():
            while phase < len(PATTERN) and PATTERN[phase] != letter:
                phase += 1
            if phase == len(PATTERN):
                return False
        return True

    def state_bits(self) -> int:
        kinds = 2 * self.blocks
        slot = value_bits(max(self.blocks - 1, 0)) + 1 + 2 * self.block
        return kinds + MAX_MEMORIZED * slot + 1
