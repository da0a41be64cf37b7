"""Fooling sets and their verifier.

A fooling set is a family of partial words sharing one domain, together with
a complementary witness for every pair such that the two completions are told
apart by the subject (different verdicts for a language, different products
for an algebra). Streaming the shared domain first, an evaluator must then be
in pairwise different states, so it needs at least ceil(log2 |F|) bits.

Families can be exponentially large, so words and witnesses are produced on
demand from their index.
"""

import itertools
import logging
import math
import random
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algebra import Equation, EquationWitness, FiniteSemigroup, check_equation, evaluate_equation, power
from .catalog import example_structure, language
from .config import get_settings
from .errors import FoolingSetError, InapplicableError
from .evaluators.base import StreamEvent
from .evaluators.reference import ReferenceEvaluator
from .langkit import Dfa, SyntacticStructure

logger = logging.getLogger(__name__)

Subject = Dfa | FiniteSemigroup


@dataclass(frozen=True)
class PartialWord:
    """A word whose cells are letters (or element indices) or ``None`` placeholders."""

    cells: tuple

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def domain(self) -> frozenset[int]:
        """1-based positions that hold a letter."""
        return frozenset(i for i, c in enumerate(self.cells, start=1) if c is not None)

    def homogeneous(self, other: "PartialWord") -> bool:
        return len(self) == len(other) and self.domain == other.domain

    def complementary(self, other: "PartialWord") -> bool:
        return len(self) == len(other) and all(
            (a is None) != (b is None) for a, b in zip(self.cells, other.cells)
        )

    def compose(self, other: "PartialWord") -> list:
        if not self.complementary(other):
            raise FoolingSetError("partial words are not complementary")
        return [a if a is not None else b for a, b in zip(self.cells, other.cells)]

    def format(self, name: Callable[[object], str] = str) -> str:
        return " ".join("_" if c is None else name(c) for c in self.cells)


def _partial(cells: Sequence) -> PartialWord:
    return PartialWord(tuple(cells))


@dataclass(frozen=True)
class FoolingSet:
    """``size`` partial words ``word(i)`` with witnesses ``witness(i, j)``."""

    name: str
    subject: Subject
    size: int
    word: Callable[[int], PartialWord]
    witness: Callable[[int, int], PartialWord]
    length: int

    @property
    def domain(self) -> frozenset[int]:
        return self.word(0).domain if self.size else frozenset()

    @property
    def words(self) -> Iterator[PartialWord]:
        return (self.word(i) for i in range(self.size))

    @property
    def lower_bound_bits(self) -> int:
        return math.ceil(math.log2(self.size)) if self.size > 1 else 0

    def format_cell(self, cell) -> str:
        if isinstance(self.subject, FiniteSemigroup):
            return self.subject.name(cell)
        return str(cell)


@dataclass
class FoolingResult:
    """Outcome of ``verify_fooling_set``."""

    passed: bool
    pairs_checked: int
    exhaustive: bool
    lower_bound_bits: int
    counterexample: tuple[int, int] | None = None
    values: tuple = field(default=())


def _pairs(size: int, cap: int, seed: int) -> tuple[Iterator[tuple[int, int]], int, bool]:
    total = size * (size - 1) // 2
    if total <= cap:
        return itertools.combinations(range(size), 2), total, True
    rng = random.Random(seed)

    def sample() -> Iterator[tuple[int, int]]:
        for _ in range(cap):
            i, j = rng.sample(range(size), 2)
            yield min(i, j), max(i, j)

    return sample(), cap, False


def verify_fooling_set(
    F: FoolingSet,
    subject: Subject | None = None,
    cap: int | None = None,
    seed: int | None = None,
) -> FoolingResult:
    """Check the fooling property pair by pair with the reference evaluator.

    Each composition is streamed domain first, then the witness cells. All
    pairs are checked when there are at most ``cap`` of them, otherwise a
    seeded sample of ``cap`` pairs.

    Raises:
        FoolingSetError: If two words are not homogeneous or a witness is
            not complementary to both words of its pair.
    """
    settings = get_settings()
    cap = settings.fooling_pair_cap if cap is None else cap
    seed = settings.seed if seed is None else seed
    subject = F.subject if subject is None else subject

    domain = F.domain
    pairs, count, exhaustive = _pairs(F.size, cap, seed)
    if exhaustive:
        for i in range(F.size):
            if F.word(i).domain != domain or len(F.word(i)) != F.length:
                raise FoolingSetError(f"{F.name}: word {i} is not homogeneous with word 0")

    reference = ReferenceEvaluator(subject)
    order = sorted(domain) + [p for p in range(1, F.length + 1) if p not in domain]

    def run(cells: list):
        reference.init(len(cells))
        for p in order:
            reference.feed(StreamEvent(cells[p - 1], p, len(cells)))
        return reference.finish()

    for i, j in pairs:
        wi, wj, v = F.word(i), F.word(j), F.witness(i, j)
        if not wi.homogeneous(wj):
            raise FoolingSetError(f"{F.name}: words {i} and {j} are not homogeneous")
        if not (v.complementary(wi) and v.complementary(wj)):
            raise FoolingSetError(f"{F.name}: witness for ({i}, {j}) is not complementary")
        left, right = run(wi.compose(v)), run(wj.compose(v))
        if left == right:
            logger.info("%s: pair (%d, %d) is not separated", F.name, i, j)
            return FoolingResult(False, count, exhaustive, F.lower_bound_bits, (i, j), (left, right))
    return FoolingResult(True, count, exhaustive, F.lower_bound_bits)


# Constructions. Index i of an exponential family is read as a bit vector,
# bit 0 being the first block; iota is the lowest index where two differ.

def _bits(index: int, n: int) -> list[int]:
    return [(index >> i) & 1 for i in range(n)]


def _iota(i: int, j: int) -> int:
    """First differing block (0-based)."""
    return ((i ^ j) & -(i ^ j)).bit_length() - 1


def build_sigma_aa_fooling(n: int, dfa: Dfa | None = None) -> FoolingSet:
    """2^n words (b (a|b) _)^n for Σ*aaΣ* over {a, b}."""
    if n < 1:
        raise ValueError("n must be positive")

    def word(index: int) -> PartialWord:
        cells = []
        for bit in _bits(index, n):
            cells += ["b", "a" if bit else "b", None]
        return _partial(cells)

    def witness(i: int, j: int) -> PartialWord:
        p = _iota(i, j)
        cells = []
        for block in range(n):
            cells += [None, None, "a" if block == p else "b"]
        return _partial(cells)

    subject = dfa if dfa is not None else language(".*aa.*", "ab")
    return FoolingSet("sigma-aa", subject, 2**n, word, witness, 3 * n)


def build_noncomm_fooling(M: FiniteSemigroup, x: int, y: int, n: int) -> FoolingSet:
    """n words (e _)^(i-1) (x _) (e _)^(n-i); witnesses put y right after x."""
    if M.identity is None:
        raise InapplicableError("noncomm fooling set needs a monoid")
    if M.multiply(x, y) == M.multiply(y, x):
        raise InapplicableError(f"{M.name(x)} and {M.name(y)} commute")
    if n < 1:
        raise ValueError("n must be positive")
    e = M.identity

    def word(i: int) -> PartialWord:
        cells = []
        for block in range(n):
            cells += [x if block == i else e, None]
        return _partial(cells)

    def witness(i: int, j: int) -> PartialWord:
        first = min(i, j)
        cells = []
        for block in range(n):
            cells += [None, y if block == first else e]
        return _partial(cells)

    return FoolingSet("noncomm", M, n, word, witness, 2 * n)


def build_monlin_fooling(M: FiniteSemigroup, violation: EquationWitness, n: int) -> FoolingSet:
    """2^n words of length 5n+2 from a violation of the FL∨Com equation.

    Block i of a word is ``_ x _ e _`` or ``_ e _ x _``. The witness for a pair
    differing first at block iota fills blocks before iota with ``e _ e _ a``,
    block iota with ``s _ t _ u`` and later blocks with ``e _ e _ b``, and
    pads both ends with powers of xa and xb so that the compositions are
    exactly the two sides of the equation.
    """
    if M.identity is None:
        raise InapplicableError("monlin fooling set needs a monoid")
    if violation.equation is not Equation.FLCOM:
        raise InapplicableError(f"monlin fooling set needs an FLCOM violation, got {violation.equation}")
    lhs, rhs = evaluate_equation(M, Equation.FLCOM, violation.assignment)
    if lhs == rhs:
        raise InapplicableError("the assignment does not violate FLCOM")
    if n < 1:
        raise ValueError("n must be positive")
    e, w = M.identity, M.omega
    v = violation.assignment
    x, s, t, u = v["x"], v["s"], v["t"], v["u"]
    xa, xb = M.multiply(x, v["a"]), M.multiply(x, v["b"])

    def word(index: int) -> PartialWord:
        cells: list = [None]
        for bit in _bits(index, n):
            cells += [None, x, None, e, None] if bit else [None, e, None, x, None]
        cells.append(None)
        return _partial(cells)

    def witness(i: int, j: int) -> PartialWord:
        p = _iota(i, j)
        cells: list = [power(M, xa, n * w - p)]
        for block in range(n):
            if block < p:
                cells += [e, None, e, None, v["a"]]
            elif block == p:
                cells += [s, None, t, None, u]
            else:
                cells += [e, None, e, None, v["b"]]
        cells.append(power(M, xb, n * w - n + p + 1))
        return _partial(cells)

    return FoolingSet("monlin", M, 2**n, word, witness, 5 * n + 2)


def _omega_power(S: FiniteSemigroup, s: int) -> int:
    return int(S.omega_map[s])


def build_stswap_fooling(S: FiniteSemigroup, s: int, x: int, t: int, n: int) -> FoolingSet:
    """n-2 words (s^ω _)^i (t^ω _)^(n-i), i = 2..n-1."""
    if n < 3:
        raise ValueError("n must be at least 3")
    sw, tw = _omega_power(S, s), _omega_power(S, t)
    if S.multiply(S.multiply(S.multiply(sw, x), sw), tw) == S.multiply(S.multiply(sw, x), tw):
        raise InapplicableError("s^ω x s^ω t^ω = s^ω x t^ω holds for this assignment")

    def word(index: int) -> PartialWord:
        i = index + 2
        cells = []
        for block in range(1, n + 1):
            cells += [sw if block <= i else tw, None]
        return _partial(cells)

    def witness(a: int, b: int) -> PartialWord:
        i = min(a, b) + 2
        cells = []
        for block in range(1, n + 1):
            cells += [None, sw if block < i else x if block == i else tw]
        return _partial(cells)

    return FoolingSet("stswap", S, n - 2, word, witness, 2 * n)


def build_xysep_fooling(S: FiniteSemigroup, s: int, x: int, y: int, n: int) -> FoolingSet:
    """n-2 words (s^ω _)^(i-1) (x _) (s^ω _)^(n-i), i = 2..n-1."""
    if n < 3:
        raise ValueError("n must be at least 3")
    sw = _omega_power(S, s)
    m = S.multiply
    if m(m(m(m(sw, x), sw), y), sw) == m(m(m(sw, x), y), sw):
        raise InapplicableError("s^ω x s^ω y s^ω = s^ω x y s^ω holds for this assignment")

    def word(index: int) -> PartialWord:
        i = index + 2
        cells = []
        for block in range(1, n + 1):
            cells += [x if block == i else sw, None]
        return _partial(cells)

    def witness(a: int, b: int) -> PartialWord:
        j = max(a, b) + 2
        cells = []
        for block in range(1, n + 1):
            cells += [None, y if block == j else sw]
        return _partial(cells)

    return FoolingSet("xysep", S, n - 2, word, witness, 2 * n)


def build_abstar_semigroup_fooling(n: int) -> FoolingSet:
    """2^n words over S((ab)*): block i is ``a _`` or ``ab _``.

    The witness depends only on the first word of the pair and completes
    every block to abab; at the first difference the other word gets aab or
    abbab, both zero.
    """
    if n < 1:
        raise ValueError("n must be positive")
    structure = example_structure("abstar")
    S = structure.algebra
    a, ab, bab = (structure.evaluate(list(w)) for w in ("a", "ab", "bab"))

    def word(index: int) -> PartialWord:
        cells = []
        for bit in _bits(index, n):
            cells += [ab if bit else a, None]
        return _partial(cells)

    def witness(i: int, j: int) -> PartialWord:
        cells = []
        for bit in _bits(i, n):
            cells += [None, ab if bit else bab]
        return _partial(cells)

    return FoolingSet("ab-semigroup", S, 2**n, word, witness, 2 * n)


def build_aba_fooling(n: int, dfa: Dfa | None = None) -> FoolingSet:
    """n-1 words (a _)^i (b _)^(n-i) for a*b*a*."""
    if n < 2:
        raise ValueError("n must be at least 2")

    def word(index: int) -> PartialWord:
        i = index + 1
        cells = []
        for block in range(1, n + 1):
            cells += ["a" if block <= i else "b", None]
        return _partial(cells)

    def witness(a: int, b: int) -> PartialWord:
        j = max(a, b) + 1
        cells = []
        for block in range(1, n + 1):
            cells += [None, "a" if block <= j else "b"]
        return _partial(cells)

    subject = dfa if dfa is not None else language("a*b*a*", "ab")
    return FoolingSet("aba", subject, n - 1, word, witness, 2 * n)


def _noncomm(n: int) -> FoolingSet:
    structure = example_structure("ab")
    M = structure.algebra
    return build_noncomm_fooling(M, M.index("a"), M.index("b"), n)


def _monlin(n: int) -> FoolingSet:
    M = example_structure("abba").algebra
    violation = check_equation(M, Equation.FLCOM)
    return build_monlin_fooling(M, violation, n)


def _stswap(n: int) -> FoolingSet:
    S = example_structure("abc").algebra
    return build_stswap_fooling(S, S.index("a"), S.index("b"), S.index("c"), n)


def _xysep(n: int) -> FoolingSet:
    S = example_structure("abba-semigroup").algebra
    return build_xysep_fooling(S, S.index("a"), S.index("b"), S.index("b"), n)


CONSTRUCTIONS: dict[str, Callable[[int], FoolingSet]] = {
    "sigma-aa": build_sigma_aa_fooling,
    "noncomm": _noncomm,
    "monlin": _monlin,
    "stswap": _stswap,
    "xysep": _xysep,
    "ab-semigroup": build_abstar_semigroup_fooling,
    "aba": build_aba_fooling,
}


def build_named_fooling(name: str, n: int) -> FoolingSet:
    """One of the named constructions on its standard subject."""
    try:
        build = CONSTRUCTIONS[name]
    except KeyError:
        known = ", ".join(CONSTRUCTIONS)
        raise ValueError(f"unknown construction {name!r} (known: {known})") from None
    return build(n)


# Catalog example each construction is stated for. The first two are
# language-level; the rest are built on the example's algebra.
CONSTRUCTION_SUBJECTS: dict[str, str] = {
    "sigma-aa": "sigma-aa",
    "aba": "aba",
    "noncomm": "ab",
    "monlin": "abba",
    "stswap": "abc",
    "xysep": "abba-semigroup",
    "ab-semigroup": "abstar",
}
_LANGUAGE_CONSTRUCTIONS = frozenset({"sigma-aa", "aba"})


def _same_algebra(S: FiniteSemigroup, T: FiniteSemigroup) -> bool:
    return S.elements == T.elements and S.identity == T.identity and np.array_equal(S.table, T.table)


def construction_for(subject: Subject | SyntacticStructure) -> str | None:
    """Name of the construction whose standard subject is ``subject``, if any."""
    for name, example in CONSTRUCTION_SUBJECTS.items():
        standard = example_structure(example)
        if isinstance(subject, SyntacticStructure):
            if name in _LANGUAGE_CONSTRUCTIONS:
                if subject.dfa == standard.dfa:
                    return name
            elif _same_algebra(subject.algebra, standard.algebra):
                return name
        elif isinstance(subject, Dfa):
            if name in _LANGUAGE_CONSTRUCTIONS and subject == standard.dfa:
                return name
        elif name not in _LANGUAGE_CONSTRUCTIONS and _same_algebra(subject, standard.algebra):
            return name
    return None


@lru_cache(maxsize=None)
def _length_line(name: str) -> tuple[int, int, int]:
    """(smallest size, its length, length added per size step) of a construction."""
    for size in itertools.count(1):
        try:
            first = build_named_fooling(name, size).length
        except ValueError:
            continue
        return size, first, build_named_fooling(name, size + 1).length - first


def fooling_domain(name: str, n: int) -> frozenset[int]:
    """Domain of the largest instance of ``name`` that fits in ``n`` positions.

    Empty when even the smallest instance is longer than ``n``.
    """
    size, length, step = _length_line(name)
    if n < length:
        return frozenset()
    return build_named_fooling(name, size + (n - length) // step).domain
