"""Brute-force ground truths.

Exact one-way lower bounds by class counting, and exhaustive checks of the
combinatorial facts the evaluators rely on: first-last subwords preserve
products in FL, the sum-of-squares interval lemma, the pumping decomposition
of long words, and scattered alternations for early rejection.
"""

import itertools
import logging
import math
import random
from collections.abc import Iterable, Sequence

import numpy as np

from .algebra import FiniteSemigroup, evaluate_word, fl_subword, power
from .config import get_settings
from .errors import CapExceededError
from .foolingsets import build_named_fooling
from .langkit import Dfa, SyntacticStructure

logger = logging.getLogger(__name__)

Subject = Dfa | FiniteSemigroup | SyntacticStructure

# Domain assignments folded at once; bounds memory to CHUNK x completions.
CHUNK = 4096


def _digits(indices: np.ndarray, base: int, width: int) -> np.ndarray:
    """Base-``base`` digits of each index, least significant first, shape (len, width)."""
    return (indices[:, None] // base ** np.arange(width, dtype=np.int64)) % base


def one_way_classes(
    subject: Subject,
    n: int,
    domain: Iterable[int],
    cap: int | None = None,
    enumeration_seed: int | None = None,
) -> int:
    """Number of domain assignments that no completion can tell apart.

    Two assignments of the ``domain`` positions are equivalent when every
    completion of the remaining positions gets the same verdict (language)
    or the same product (algebra). Each assignment is keyed by its full
    signature over all completions, so the count is exact.

    Raises:
        CapExceededError: If either side has more than ``cap`` assignments.
    """
    cap = get_settings().oracle_cap if cap is None else cap
    if isinstance(subject, SyntacticStructure):
        subject = subject.dfa
    positions = sorted(set(domain))
    if any(not 1 <= p <= n for p in positions):
        raise ValueError(f"domain positions must lie in 1..{n}")
    rest = [p for p in range(1, n + 1) if p not in set(positions)]

    if isinstance(subject, Dfa):
        base = len(subject.alphabet)
        table = np.array(subject.delta, dtype=np.int64)
        start = subject.initial
        accepting = np.zeros(subject.num_states, dtype=bool)
        accepting[list(subject.accepting)] = True
    else:
        base = subject.size
        table = subject.table.astype(np.int64)
        start = subject.identity

    assignments, completions = base ** len(positions), base ** len(rest)
    for side, count in (("domain assignments", assignments), ("completions", completions)):
        if count > cap:
            raise CapExceededError(f"enumerating {side}", count, cap)

    completion_ids = np.arange(completions, dtype=np.int64)
    assignment_ids = np.arange(assignments, dtype=np.int64)
    if enumeration_seed is not None:
        rng = np.random.default_rng(enumeration_seed)
        completion_ids = rng.permutation(completion_ids)
        assignment_ids = rng.permutation(assignment_ids)
    rest_digits = _digits(completion_ids, base, len(rest))
    column = {p: ("rest", i) for i, p in enumerate(rest)}
    column.update({p: ("domain", i) for i, p in enumerate(positions)})

    signatures: set[bytes] = set()
    for lo in range(0, assignments, CHUNK):
        chunk = assignment_ids[lo:lo + CHUNK]
        dom_digits = _digits(chunk, base, len(positions))
        acc = None
        if start is not None:
            acc = np.full((len(chunk), completions), start, dtype=np.int64)
        for p in range(1, n + 1):
            side, i = column[p]
            letter = dom_digits[:, i][:, None] if side == "domain" else rest_digits[:, i][None, :]
            if acc is None:
                acc = np.broadcast_to(letter, (len(chunk), completions)).copy()
            else:
                acc = table[acc, letter]
        if acc is None:
            # n = 0 in a semigroup: no word to evaluate, one class.
            return 1
        if isinstance(subject, Dfa):
            acc = accepting[acc]
        if enumeration_seed is not None:
            # Signatures must not depend on the completion order.
            acc = acc[:, np.argsort(completion_ids)]
        signatures.update(row.tobytes() for row in acc)
    logger.debug("one-way classes for n=%d, |domain|=%d: %d", n, len(positions), len(signatures))
    return len(signatures)


def one_way_lower_bound(
    subject: Subject,
    n: int,
    domain: Iterable[int],
    cap: int | None = None,
) -> int:
    """ceil(log2(#classes)) bits for the order that streams ``domain`` first."""
    classes = one_way_classes(subject, n, domain, cap)
    return math.ceil(math.log2(classes)) if classes > 1 else 0


def check_fl_preservation(
    M: FiniteSemigroup,
    k: int | None = None,
    max_len: int = 8,
    cap: int | None = None,
) -> list[int] | None:
    """First word of length <= ``max_len`` whose product changes under ``fl_subword``.

    Returns None when every word keeps its product.
    """
    cap = get_settings().oracle_cap if cap is None else cap
    k = M.size if k is None else k
    total = sum(M.size**length for length in range(max_len + 1))
    if total > cap:
        raise CapExceededError("enumerating words", total, cap)
    for u in itertools.chain.from_iterable(
        itertools.product(range(M.size), repeat=length) for length in range(1, max_len + 1)
    ):
        reduced = fl_subword(u, k)
        if len(reduced) == len(u):
            continue
        if evaluate_word(M, u) != evaluate_word(M, reduced):
            return list(u)
    return None


def check_sum_of_squares_lemma(m_max: int) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Every X ⊆ {1..m} with the size and sum of an interval I has Σx² >= Σi²,
    with equality only for X = I.

    Checking m = ``m_max`` covers every smaller m. Returns None on success,
    else a counterexample (X, I).
    """
    if not 1 <= m_max <= 22:
        raise ValueError("m_max must be between 1 and 22")
    masks = np.arange(1 << m_max, dtype=np.uint32)
    # Per-subset size, sum and sum of squares, one bit position at a time.
    sizes = np.zeros(masks.shape, dtype=np.int8)
    sums = np.zeros(masks.shape, dtype=np.int16)
    squares = np.zeros(masks.shape, dtype=np.int32)
    for i in range(m_max):
        member = ((masks >> np.uint32(i)) & np.uint32(1)).astype(bool)
        sizes[member] += 1
        sums[member] += i + 1
        squares[member] += (i + 1) ** 2
    for left in range(1, m_max + 1):
        for right in range(left, m_max + 1):
            interval = np.arange(left, right + 1)
            size, total, square = len(interval), int(interval.sum()), int((interval * interval).sum())
            mask = ((1 << size) - 1) << (left - 1)
            same = (sizes == size) & (sums == total)
            bad = same & ((squares < square) | ((squares == square) & (masks != mask)))
            if bad.any():
                x = int(masks[np.argmax(bad)])
                subset = tuple(i + 1 for i in range(m_max) if x >> i & 1)
                return subset, tuple(int(i) for i in interval)
    return None


def _pumped(S: FiniteSemigroup, word: Sequence[int]) -> tuple[int, int]:
    """Product of ``word`` and of its pumped form w0 w1^ω w2.

    Some two prefix products among the first |S|+1 coincide, p_i = p_j with
    1 <= i < j; then w0 = w[:i], w1 = w[i:j], w2 = w[j:].
    """
    rows = S.rows
    seen: dict[int, int] = {}
    acc = None
    split = None
    for j, x in enumerate(word, start=1):
        acc = x if acc is None else rows[acc][x]
        if acc in seen:
            split = seen[acc], j
            break
        seen[acc] = j
    i, j = split
    w0, w1, w2 = word[:i], word[i:j], word[j:]
    value = rows[evaluate_word(S, w0)][power(S, evaluate_word(S, w1), S.omega)]
    if w2:
        value = rows[value][evaluate_word(S, w2)]
    return evaluate_word(S, word), value


def check_pumping_claim(
    S: FiniteSemigroup,
    trials: int | None = None,
    cap: int | None = None,
    seed: int | None = None,
) -> list[int] | None:
    """Every word of length |S|+1 equals w0 w1^ω w2 for its prefix-collision split.

    Exhaustive when there are at most ``cap`` such words, otherwise ``trials``
    seeded samples (default ``cap``). Returns None or a counterexample.
    """
    settings = get_settings()
    cap = settings.pumping_cap if cap is None else cap
    seed = settings.seed if seed is None else seed
    length = S.size + 1
    if S.size**length <= cap:
        words: Iterable = itertools.product(range(S.size), repeat=length)
    else:
        rng = random.Random(seed)
        count = cap if trials is None else trials
        words = ([rng.randrange(S.size) for _ in range(length)] for _ in range(count))
    for word in words:
        direct, pumped = _pumped(S, list(word))
        if direct != pumped:
            return list(word)
    return None


def count_scattered_alternations(word: Iterable[str]) -> int:
    """Greedy count of disjoint scattered factors ``ab`` or ``ba``, left to right."""
    count = 0
    held = None
    for letter in word:
        if held is None:
            held = letter
        elif letter != held:
            count += 1
            held = None
    return count


def parse_domain(text: str, n: int | None = None) -> tuple[int, list[int], Subject | None]:
    """Positions ``p1,p2,...`` (needs ``n``) or ``fooling:<construction>:<size>``.

    Returns (n, domain, subject); the subject is the construction's own for
    the ``fooling:`` form and None otherwise.
    """
    if text.startswith("fooling:"):
        try:
            _, name, size = text.split(":")
            F = build_named_fooling(name, int(size))
        except ValueError as e:
            raise ValueError(f"bad domain {text!r}: {e}") from None
        if n is not None and n != F.length:
            raise ValueError(f"construction {name} at size {size} has length {F.length}, not {n}")
        return F.length, sorted(F.domain), F.subject
    if n is None:
        raise ValueError("an explicit domain needs the word length n")
    try:
        return n, sorted({int(p) for p in text.split(",") if p.strip()}), None
    except ValueError:
        raise ValueError(f"bad domain {text!r}: expected p1,p2,... or fooling:<construction>:<size>") from None
