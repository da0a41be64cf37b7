"""Regular expressions, minimal DFAs and syntactic algebras.

A small regex dialect (letters, ``.``, concatenation, ``|``, ``*``, ``+``,
parentheses) is compiled through a Thompson NFA and the subset construction,
minimized by partition refinement and renumbered canonically. The syntactic
monoid (or semigroup) is then the transition monoid of the minimal DFA, with
every element named by the shortlex-least word inducing it.
"""

import logging
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .algebra import Equation, FiniteSemigroup, check_equation, evaluate_word, zero_element
from .config import get_settings
from .errors import CapExceededError, ParseError

logger = logging.getLogger(__name__)

SPECIAL = frozenset("()|*+.")


# Regex syntax tree

@dataclass(frozen=True)
class Literal:
    letter: str


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Concat:
    parts: tuple


@dataclass(frozen=True)
class Union:
    options: tuple


@dataclass(frozen=True)
class Star:
    inner: object


@dataclass(frozen=True)
class Plus:
    inner: object


Node = Literal | Epsilon | Concat | Union | Star | Plus


@dataclass(frozen=True)
class Regex:
    """Parsed expression together with its declared alphabet."""

    node: Node
    alphabet: tuple[str, ...]
    text: str = ""


def parse_alphabet(letters: str | Iterable[str]) -> tuple[str, ...]:
    """Validate a declared alphabet; order is significant."""
    alphabet = tuple(letters)
    if not alphabet:
        raise ParseError("alphabet must not be empty")
    for letter in alphabet:
        if len(letter) != 1 or letter in SPECIAL or letter.isspace() or letter == "_":
            raise ParseError(f"invalid alphabet letter {letter!r}")
        # "1" and "0" name the identity and the zero of extracted algebras.
        if letter in ("0", "1"):
            raise ParseError(f"alphabet letter {letter!r} is reserved for element names")
    if len(set(alphabet)) != len(alphabet):
        raise ParseError("alphabet letters must be distinct")
    return alphabet


class _Parser:
    def __init__(self, text: str, alphabet: tuple[str, ...]):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> Node:
        node = self.union()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return node

    def union(self) -> Node:
        options = [self.concat()]
        while self.peek() == "|":
            self.pos += 1
            options.append(self.concat())
        return options[0] if len(options) == 1 else Union(tuple(options))

    def concat(self) -> Node:
        parts = []
        while (ch := self.peek()) is not None and ch not in "|)":
            parts.append(self.postfix())
        if not parts:
            return Epsilon()
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    def postfix(self) -> Node:
        node = self.atom()
        while (ch := self.peek()) in ("*", "+"):
            self.pos += 1
            node = Star(node) if ch == "*" else Plus(node)
        return node

    def atom(self) -> Node:
        start = self.pos
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            node = self.union()
            if self.peek() != ")":
                raise ParseError("missing ')'", self.pos)
            self.pos += 1
            return node
        if ch == ".":
            self.pos += 1
            letters = tuple(Literal(a) for a in self.alphabet)
            return letters[0] if len(letters) == 1 else Union(letters)
        if ch in ("*", "+", ")"):
            raise ParseError(f"unexpected {ch!r}", start)
        if ch not in self.alphabet:
            raise ParseError(f"letter {ch!r} is not in the alphabet {''.join(self.alphabet)!r}", start)
        self.pos += 1
        return Literal(ch)


def parse_regex(text: str, alphabet: str | Iterable[str]) -> Regex:
    """Parse ``text`` over the declared ``alphabet``.

    Raises:
        ParseError: On a syntax error (with its position) or a literal
            outside the alphabet.
    """
    letters = parse_alphabet(alphabet)
    return Regex(_Parser(text, letters).parse(), letters, text)


# Automata

class _Nfa:
    """Thompson NFA with epsilon moves kept apart from letter moves."""

    def __init__(self) -> None:
        self.moves: list[dict[str, set[int]]] = []
        self.eps: list[set[int]] = []

    def state(self) -> int:
        self.moves.append({})
        self.eps.append(set())
        return len(self.moves) - 1

    def build(self, node: Node) -> tuple[int, int]:
        start, end = self.state(), self.state()
        match node:
            case Literal(letter):
                self.moves[start].setdefault(letter, set()).add(end)
            case Epsilon():
                self.eps[start].add(end)
            case Concat(parts):
                current = start
                for part in parts:
                    s, e = self.build(part)
                    self.eps[current].add(s)
                    current = e
                self.eps[current].add(end)
            case Union(options):
                for option in options:
                    s, e = self.build(option)
                    self.eps[start].add(s)
                    self.eps[e].add(end)
            case Star(inner) | Plus(inner):
                s, e = self.build(inner)
                self.eps[start].add(s)
                self.eps[e].update((s, end))
                if isinstance(node, Star):
                    self.eps[start].add(end)
        return start, end

    def closure(self, states: Iterable[int]) -> frozenset[int]:
        stack = list(states)
        seen = set(stack)
        while stack:
            for nxt in self.eps[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return frozenset(seen)


@dataclass(frozen=True)
class Dfa:
    """Complete DFA; ``delta[q][i]`` is the successor on ``alphabet[i]``."""

    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    initial: int
    accepting: frozenset[int]

    def __post_init__(self) -> None:
        n = len(self.delta)
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        for row in self.delta:
            if len(row) != len(self.alphabet) or not all(0 <= q < n for q in row):
                raise ValueError("transition function must be total")

    @property
    def num_states(self) -> int:
        return len(self.delta)

    @cached_property
    def letter_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    def step(self, state: int, letter: str) -> int:
        try:
            return self.delta[state][self.letter_index[letter]]
        except KeyError:
            raise ParseError(f"letter {letter!r} is not in the alphabet") from None

    def run(self, word: Iterable[str], state: int | None = None) -> int:
        q = self.initial if state is None else state
        for letter in word:
            q = self.step(q, letter)
        return q

    def accepts(self, word: Iterable[str]) -> bool:
        return self.run(word) in self.accepting


def _subset_construction(nfa: _Nfa, start: int, end: int, alphabet: tuple[str, ...]) -> Dfa:
    initial = nfa.closure([start])
    index = {initial: 0}
    order = [initial]
    delta: list[tuple[int, ...]] = []
    i = 0
    while i < len(order):
        current = order[i]
        row = []
        for letter in alphabet:
            target = nfa.closure(
                nxt for q in current for nxt in nfa.moves[q].get(letter, ())
            )
            if target not in index:
                index[target] = len(order)
                order.append(target)
            row.append(index[target])
        delta.append(tuple(row))
        i += 1
    accepting = frozenset(index[s] for s in order if end in s)
    return Dfa(alphabet, tuple(delta), 0, accepting)


def _canonical(dfa: Dfa) -> Dfa:
    """Drop unreachable states and renumber in BFS order (letters in alphabet order)."""
    numbering = {dfa.initial: 0}
    queue = deque([dfa.initial])
    while queue:
        q = queue.popleft()
        for nxt in dfa.delta[q]:
            if nxt not in numbering:
                numbering[nxt] = len(numbering)
                queue.append(nxt)
    delta = [None] * len(numbering)
    for q, new in numbering.items():
        delta[new] = tuple(numbering[nxt] for nxt in dfa.delta[q])
    accepting = frozenset(numbering[q] for q in dfa.accepting if q in numbering)
    return Dfa(dfa.alphabet, tuple(delta), 0, accepting)


def minimize(dfa: Dfa) -> Dfa:
    """Moore partition refinement followed by canonical renumbering."""
    dfa = _canonical(dfa)
    block = [1 if q in dfa.accepting else 0 for q in range(dfa.num_states)]
    count = len(set(block))
    while True:
        signatures: dict[tuple, int] = {}
        refined = []
        for q in range(dfa.num_states):
            key = (block[q], *(block[nxt] for nxt in dfa.delta[q]))
            refined.append(signatures.setdefault(key, len(signatures)))
        block = refined
        if len(signatures) == count:
            break
        count = len(signatures)
    delta: list = [None] * count
    for q in range(dfa.num_states):
        delta[block[q]] = tuple(block[nxt] for nxt in dfa.delta[q])
    accepting = frozenset(block[q] for q in dfa.accepting)
    return _canonical(Dfa(dfa.alphabet, tuple(delta), block[dfa.initial], accepting))


def compile_min_dfa(regex: Regex) -> Dfa:
    """Minimal complete DFA for the language of ``regex``."""
    nfa = _Nfa()
    start, end = nfa.build(regex.node)
    dfa = minimize(_subset_construction(nfa, start, end, regex.alphabet))
    logger.debug("compiled %r: %d NFA states, %d DFA states", regex.text, len(nfa.moves), dfa.num_states)
    return dfa


def compile_language(text: str, alphabet: str | Iterable[str]) -> Dfa:
    return compile_min_dfa(parse_regex(text, alphabet))


# Syntactic algebras

@dataclass(frozen=True)
class SyntacticStructure:
    """A syntactic monoid or semigroup with its morphism and accepting set."""

    algebra: FiniteSemigroup
    morphism: dict[str, int]
    accepting: frozenset[int]
    dfa: Dfa
    representatives: tuple[str, ...] = field(default=())

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.dfa.alphabet

    @property
    def is_monoid(self) -> bool:
        return self.algebra.is_monoid

    def image(self, word: Iterable[str]) -> list[int]:
        try:
            return [self.morphism[letter] for letter in word]
        except KeyError as e:
            raise ParseError(f"letter {e.args[0]!r} is not in the alphabet") from None

    def evaluate(self, word: Sequence[str]) -> int:
        return evaluate_word(self.algebra, self.image(word))

    def accepts(self, word: Sequence[str]) -> bool:
        """Membership through the algebra; the empty word goes to the DFA."""
        if not word:
            return self.dfa.initial in self.dfa.accepting
        return self.evaluate(word) in self.accepting


def _transition_algebra(dfa: Dfa, with_identity: bool, cap: int | None) -> SyntacticStructure:
    cap = get_settings().monoid_cap if cap is None else cap
    states = range(dfa.num_states)
    letters = [tuple(dfa.delta[q][i] for q in states) for i in range(len(dfa.alphabet))]

    # Breadth-first discovery in shortlex order names each element by its
    # shortlex-least word.
    found: dict[tuple[int, ...], str] = {}
    queue: deque[tuple[tuple[int, ...], str]] = deque()
    if with_identity:
        identity = tuple(states)
        found[identity] = ""
        queue.append((identity, ""))
    else:
        for letter, t in zip(dfa.alphabet, letters):
            if t not in found:
                found[t] = letter
                queue.append((t, letter))
    while queue:
        t, word = queue.popleft()
        for letter, a in zip(dfa.alphabet, letters):
            nxt = tuple(a[q] for q in t)
            if nxt not in found:
                found[nxt] = word + letter
                queue.append((nxt, word + letter))
                if len(found) > cap:
                    raise CapExceededError("syntactic algebra closure", len(found), cap)

    members = list(found)
    position = {t: i for i, t in enumerate(members)}
    table = [[position[tuple(g[q] for q in f)] for g in members] for f in members]
    words = [found[t] or "1" for t in members]
    draft = FiniteSemigroup(tuple(words), table, 0 if with_identity else None, check_laws=False)

    # The zero, if any, is named "0" and listed last.
    zero = zero_element(draft)
    order = list(range(len(members)))
    if zero is not None and len(members) > 1:
        words[zero] = "0"
        order.remove(zero)
        order.append(zero)
    remap = {old: new for new, old in enumerate(order)}
    table = [[remap[draft.rows[old_i][old_j]] for old_j in order] for old_i in order]
    algebra = FiniteSemigroup(
        tuple(words[i] for i in order),
        table,
        remap[0] if with_identity else None,
        check_laws=False,
    )
    morphism = {letter: remap[position[t]] for letter, t in zip(dfa.alphabet, letters)}
    accepting = frozenset(remap[position[t]] for t in members if t[dfa.initial] in dfa.accepting)
    representatives = tuple(found[members[i]] for i in order)
    logger.debug("syntactic %s: %d elements", "monoid" if with_identity else "semigroup", len(members))
    return SyntacticStructure(algebra, morphism, accepting, dfa, representatives)


def syntactic_monoid(dfa: Dfa, cap: int | None = None) -> SyntacticStructure:
    """Transition monoid of a minimal DFA, seeded with the identity."""
    return _transition_algebra(dfa, with_identity=True, cap=cap)


def syntactic_semigroup(dfa: Dfa, cap: int | None = None) -> SyntacticStructure:
    """Transition semigroup of a minimal DFA over nonempty words."""
    return _transition_algebra(dfa, with_identity=False, cap=cap)


def is_commutative_language(dfa: Dfa) -> bool:
    return check_equation(syntactic_monoid(dfa).algebra, Equation.COM) is None
