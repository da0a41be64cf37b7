"""Reference and commutative evaluators.

The reference evaluator buffers the whole word and is the ground truth every
other evaluator is tested against. The commutative evaluator folds letters in
arrival order, which is exact when the order of letters does not matter.
"""

from functools import lru_cache

from ..algebra import Equation, FiniteSemigroup, evaluate_word
from ..errors import AlgebraError, InapplicableError, StreamError
from ..langkit import Dfa, is_commutative_language
from .base import Evaluator, element_bits, require_equation


def _dfa_letter(dfa: Dfa, letter) -> str:
    if letter not in dfa.letter_index:
        raise StreamError(f"letter {letter!r} is not in the alphabet {''.join(dfa.alphabet)!r}")
    return letter


def _algebra_letter(S: FiniteSemigroup, letter) -> int:
    if isinstance(letter, str) or not 0 <= letter < S.size:
        raise StreamError(f"{letter!r} is not an element of {S!r}")
    return int(letter)


class ReferenceEvaluator(Evaluator):
    """Stores every letter in an array and evaluates left to right at the end."""

    name = "reference"

    def __init__(self, subject: FiniteSemigroup | Dfa) -> None:
        super().__init__()
        self.subject = subject
        self._symbols = len(subject.alphabet) if isinstance(subject, Dfa) else subject.size
        self._cells: list = []

    def _reset(self, n: int) -> None:
        self._cells = [None] * n

    def _feed(self, letter, position: int) -> None:
        if isinstance(self.subject, Dfa):
            letter = _dfa_letter(self.subject, letter)
        else:
            letter = _algebra_letter(self.subject, letter)
        self._cells[position - 1] = letter

    def _finish(self):
        if isinstance(self.subject, Dfa):
            return self.subject.accepts(self._cells)
        return evaluate_word(self.subject, self._cells)

    @property
    def word(self) -> list:
        return list(self._cells)

    def state_bits(self) -> int:
        # One symbol plus one presence bit per cell.
        return self.n * (element_bits(self._symbols) + 1)


@lru_cache(maxsize=128)
def _commutative_language(dfa: Dfa) -> bool:
    return is_commutative_language(dfa)


class CommutativeEvaluator(Evaluator):
    """Keeps a single element (or DFA state): the product of the letters seen so far."""

    name = "commutative"

    def __init__(self, subject: FiniteSemigroup | Dfa) -> None:
        super().__init__()
        if isinstance(subject, Dfa):
            if not _commutative_language(subject):
                raise InapplicableError("commutative evaluator needs a commutative language")
        else:
            require_equation(subject, Equation.COM, "commutative evaluator")
        self.subject = subject
        self._acc: int | None = None

    def _reset(self, n: int) -> None:
        if isinstance(self.subject, Dfa):
            self._acc = self.subject.initial
        else:
            self._acc = self.subject.identity

    def _feed(self, letter, position: int) -> None:
        if isinstance(self.subject, Dfa):
            self._acc = self.subject.step(self._acc, _dfa_letter(self.subject, letter))
            return
        x = _algebra_letter(self.subject, letter)
        self._acc = x if self._acc is None else self.subject.rows[self._acc][x]

    def _finish(self):
        if isinstance(self.subject, Dfa):
            return self._acc in self.subject.accepting
        if self._acc is None:
            raise AlgebraError("the empty word has no value in a semigroup without identity")
        return self._acc

    def state_bits(self) -> int:
        if isinstance(self.subject, Dfa):
            return element_bits(self.subject.num_states)
        # Semigroups also need an "empty product" flag.
        flag = 0 if self.subject.identity is not None else 1
        return element_bits(self.subject.size) + flag
