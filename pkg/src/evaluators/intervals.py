"""Linear-space evaluators for every finite algebra.

``IntervalMergeEvaluator`` keeps the maximal runs of streamed positions in
two tables indexed by position: the run length at both endpoints and the
product of the run at its left endpoint. Each event creates a one-letter run
and merges it with its right and left neighbours in O(1).

``BitPackedEvaluator`` applies the same merging to blocks of about log n
positions. Inside a block, streamed offsets are bits of one machine word and
the left end of a run is found with a single addition (the carry stops at
the first unset bit); completed blocks are merged as atomic symbols by a
block-level ``IntervalTables``.
"""

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass, field

from ..algebra import FiniteSemigroup, evaluate_word
from ..errors import AlgebraError
from .base import AlgebraEvaluator, position_bits

logger = logging.getLogger(__name__)


class IntervalTables:
    """Run lengths at both endpoints and run products at left endpoints."""

    def __init__(self, size: int, rows: tuple[tuple[int, ...], ...]) -> None:
        self.size = size
        self.rows = rows
        # Index 0 and size + 1 are sentinels that never hold a run.
        self.t_size = [0] * (size + 2)
        self.t_mu = [0] * (size + 2)

    def insert(self, i: int, x: int) -> tuple[int, int]:
        """Complete cell ``i`` with value ``x``; returns the merged run (l, r)."""
        t_size, t_mu, rows = self.t_size, self.t_mu, self.rows
        left = right = i
        value = x
        if t_size[i + 1]:
            right = i + t_size[i + 1]
            value = rows[value][t_mu[i + 1]]
        if t_size[i - 1]:
            left = i - t_size[i - 1]
            value = rows[t_mu[left]][value]
        length = right - left + 1
        t_size[left] = t_size[right] = length
        t_mu[left] = value
        return left, right

    def runs(self) -> Iterator[tuple[int, int, int]]:
        """Maximal runs (l, r, product), left to right."""
        i = 1
        while i <= self.size:
            if self.t_size[i]:
                right = i + self.t_size[i] - 1
                yield i, right, self.t_mu[i]
                i = right + 1
            else:
                i += 1

    def state_bits(self, element_bits: int) -> int:
        return self.size * (position_bits(self.size) + element_bits)


class IntervalMergeEvaluator(AlgebraEvaluator):
    """Θ(n log n)-bit evaluator for any finite semigroup."""

    name = "interval"

    def __init__(self, S: FiniteSemigroup) -> None:
        super().__init__(S)
        self.tables = IntervalTables(0, self.rows)

    def _reset(self, n: int) -> None:
        self.tables = IntervalTables(n, self.rows)

    def _feed(self, letter, position: int) -> None:
        self.tables.insert(position, self.element(letter))

    def _finish(self) -> int:
        if self.n == 0:
            return evaluate_word(self.algebra, [])
        return self.tables.t_mu[1]

    def state_bits(self) -> int:
        return self.tables.state_bits(self.element_bits)


def block_size(n: int) -> int:
    """b = max(1, ceil(log2 n) - 1)."""
    return max(1, math.ceil(math.log2(n)) - 1) if n > 1 else 1


# Powers of two to their exponent, so the carry's landing bit is read in O(1).
_LOG2 = {1 << e: e for e in range(64)}


def run_left_endpoint(v: int, p: int, b: int) -> int:
    """Left endpoint of the run of set bits through offset ``p``.

    Offsets 1..b are bits of a (b+1)-bit word, offset 1 the most significant
    data bit; offset 0 is a safety bit that is never set. Offset ``p`` is set
    first. Adding its weight carries through the run towards offset 0 and
    stops on the first unset offset p'', which ``v' & ~v`` isolates; the run
    starts right after it.
    """
    weight = 1 << (b - p)
    v |= weight
    landed = (v + weight) & ~v
    return b - _LOG2[landed] + 1


@dataclass
class PackedBlock:
    """One block: presence bits and the run products at left endpoints."""

    length: int
    width: int
    v: int = 0
    m: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.m:
            self.m = [0] * (self.length + 1)

    @property
    def complete(self) -> bool:
        full = ((1 << self.length) - 1) << (self.width - self.length)
        return self.v & full == full

    def bit(self, p: int) -> int:
        return 1 << (self.width - p)

    def insert(self, p: int, x: int, rows: tuple[tuple[int, ...], ...]) -> int:
        """Add offset ``p`` with value ``x``; returns the merged run's left endpoint."""
        value = x
        if p < self.length and self.v & self.bit(p + 1):
            value = rows[value][self.m[p + 1]]
        left = run_left_endpoint(self.v, p, self.width)
        self.v |= self.bit(p)
        if left < p:
            value = rows[self.m[left]][value]
        self.m[left] = value
        return left


class BitPackedEvaluator(AlgebraEvaluator):
    """Θ(n)-bit evaluator: packed micro blocks under a macro ``IntervalTables``."""

    name = "bitpacked"

    def __init__(self, S: FiniteSemigroup) -> None:
        super().__init__(S)
        self._fallback: IntervalMergeEvaluator | None = None
        self.block = 1
        self._blocks: list[PackedBlock] = []
        self.macro = IntervalTables(0, self.rows)

    def _reset(self, n: int) -> None:
        if n < 4:
            self._fallback = IntervalMergeEvaluator(self.algebra)
            self._fallback.init(n)
            return
        self._fallback = None
        b = self.block = block_size(n)
        count = -(-n // b)
        self._blocks = [PackedBlock(min(b, n - i * b), b) for i in range(count)]
        self.macro = IntervalTables(count, self.rows)

    def _feed(self, letter, position: int) -> None:
        x = self.element(letter)
        if self._fallback is not None:
            self._fallback.tables.insert(position, x)
            return
        index, offset = divmod(position - 1, self.block)
        packed = self._blocks[index]
        packed.insert(offset + 1, x, self.rows)
        if packed.complete:
            self.macro.insert(index + 1, packed.m[1])

    def _finish(self) -> int:
        if self._fallback is not None:
            return self._fallback._finish()
        if self.macro.t_size[1] != self.macro.size:
            raise AlgebraError("macro layer does not cover the word")
        return self.macro.t_mu[1]

    def state_bits(self) -> int:
        if self._fallback is not None:
            return self._fallback.state_bits()
        micro = sum((packed.width + 1) + packed.length * self.element_bits for packed in self._blocks)
        return micro + self.macro.state_bits(self.element_bits)
