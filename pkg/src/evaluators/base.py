"""Evaluator contract.

An evaluator receives the letters of a word of known length ``n`` as
``StreamEvent`` triples, in any order, each position exactly once, and then
answers: an element index for algebra evaluators, accept/reject for
language evaluators. ``state_bits()`` is the size of everything retained
between two ``feed`` calls under one fixed accounting rule:

- a position or count up to ``n`` costs ``n.bit_length()`` bits,
- an element of an algebra with ``k`` elements costs ``(k - 1).bit_length()`` bits,
- fixed-capacity structures are charged at capacity, not occupancy.

The exactly-once guard (a presence bitmap kept by this base class) is
harness bookkeeping and is not charged.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache

from ..algebra import Equation, EquationWitness, FiniteSemigroup, check_equation
from ..errors import InapplicableError, StreamError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class StreamEvent:
    """One streamed letter: ``letter`` sits at 1-based ``position`` of a word of ``length``."""

    letter: int | str
    position: int
    length: int

    def __post_init__(self) -> None:
        if not 1 <= self.position <= self.length:
            raise StreamError(f"position {self.position} outside 1..{self.length}")


def position_bits(n: int) -> int:
    return n.bit_length()


def element_bits(k: int) -> int:
    return (k - 1).bit_length()


def value_bits(limit: int) -> int:
    """Bits for a non-negative integer that never exceeds ``limit``."""
    return limit.bit_length()


class Evaluator(ABC):
    """Resumable out-of-order state machine."""

    name: str = "evaluator"

    def __init__(self) -> None:
        self._n: int | None = None
        self._seen = bytearray()
        self._fed = 0
        self._finished = False

    @property
    def n(self) -> int:
        if self._n is None:
            raise StreamError(f"{self.name}: init(n) has not been called")
        return self._n

    def init(self, n: int) -> None:
        """Start a new stream of length ``n``; resets all state."""
        if n < 0:
            raise StreamError(f"word length must be non-negative, got {n}")
        self._n = n
        self._seen = bytearray(n + 1)
        self._fed = 0
        self._finished = False
        self._reset(n)

    def feed(self, event: StreamEvent) -> None:
        n = self.n
        if self._finished:
            raise StreamError(f"{self.name}: feed after finish")
        if event.length != n:
            raise StreamError(f"event length {event.length} does not match stream length {n}")
        if not 1 <= event.position <= n:
            raise StreamError(f"position {event.position} outside 1..{n}")
        if self._seen[event.position]:
            raise StreamError(f"position {event.position} delivered twice")
        self._seen[event.position] = 1
        self._fed += 1
        self._feed(event.letter, event.position)

    def finish(self):
        n = self.n
        if self._finished:
            raise StreamError(f"{self.name}: finish called twice")
        if self._fed != n:
            missing = [p for p in range(1, n + 1) if not self._seen[p]]
            shown = ", ".join(map(str, missing[:5])) + (", ..." if len(missing) > 5 else "")
            raise StreamError(f"{n - self._fed} positions never delivered: {shown}")
        self._finished = True
        return self._finish()

    @abstractmethod
    def _reset(self, n: int) -> None: ...

    @abstractmethod
    def _feed(self, letter, position: int) -> None: ...

    @abstractmethod
    def _finish(self): ...

    @abstractmethod
    def state_bits(self) -> int: ...


class AlgebraEvaluator(Evaluator):
    """Evaluator whose letters are element indices of a finite algebra."""

    def __init__(self, algebra: FiniteSemigroup) -> None:
        super().__init__()
        self.algebra = algebra
        self.rows = algebra.rows

    def element(self, letter) -> int:
        if isinstance(letter, str) or not 0 <= letter < self.algebra.size:
            raise StreamError(f"{letter!r} is not an element of {self.algebra!r}")
        return int(letter)

    @property
    def element_bits(self) -> int:
        return element_bits(self.algebra.size)


@lru_cache(maxsize=256)
def _violation(S: FiniteSemigroup, equation: Equation) -> EquationWitness | None:
    return check_equation(S, equation)


def require_equation(S: FiniteSemigroup, equation: Equation, who: str) -> None:
    """Raise InapplicableError unless ``S`` satisfies ``equation``."""
    witness = _violation(S, equation)
    if witness is not None:
        raise InapplicableError(
            f"{who} needs {equation}, violated at {witness.describe(S)} ({witness.values(S)})"
        )


def require_monoid(S: FiniteSemigroup, who: str) -> None:
    if S.identity is None:
        raise InapplicableError(f"{who} needs a monoid")


class ThresholdPeriodCounter:
    """Per-element occurrence counts kept as (min(c, T), c mod P).

    Counts up to the threshold are exact; above it only the residue survives,
    which is enough when x^a = x^(a+P) holds for all a >= T.
    """

    def __init__(self, size: int, threshold: int, period: int) -> None:
        if threshold < 1 or period < 1:
            raise ValueError("threshold and period must be positive")
        self.threshold = threshold
        self.period = period
        self.capped = [0] * size
        self.residue = [0] * size

    def add(self, m: int) -> None:
        if self.capped[m] < self.threshold:
            self.capped[m] += 1
        self.residue[m] = (self.residue[m] + 1) % self.period

    def exact(self, m: int) -> int | None:
        """The true count if it is below the threshold, else None."""
        c = self.capped[m]
        return c if c < self.threshold else None

    def representative(self, m: int, floor: int = 0) -> int:
        """Smallest count >= max(floor, T) compatible with the stored residue,
        or the exact count when it is below the threshold."""
        exact = self.exact(m)
        if exact is not None:
            return exact
        low = max(floor, self.threshold)
        return low + (self.residue[m] - low) % self.period

    def state_bits(self) -> int:
        per = value_bits(self.threshold) + value_bits(self.period - 1)
        return per * len(self.capped)
