"""Streaming orders, differential campaigns and state-size profiles.

Everything here is seeded: the same factory, subject and seed give
byte-identical campaign results, replay files and CSV profiles.
"""

import csv
import io
import itertools
import logging
import math
import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from pathlib import Path

import numpy as np

from .algebra import FiniteSemigroup
from .errors import OutOfOrderError
from .evaluators import make_reference_evaluator
from .evaluators.base import Evaluator, StreamEvent
from .foolingsets import construction_for, fooling_domain
from .langkit import Dfa, SyntacticStructure

logger = logging.getLogger(__name__)

Subject = FiniteSemigroup | SyntacticStructure | Dfa
Factory = Callable[[Subject], Evaluator]


class PermutationKind(StrEnum):
    IDENTITY = "identity"
    REVERSE = "reverse"
    RANDOM = "random"
    EVENS_THEN_ODDS = "evens-then-odds"
    BLOCK_SHUFFLE = "block-shuffle"
    DOMAIN_FIRST = "domain-first"


@dataclass(frozen=True)
class PermutationSpec:
    """A streaming order on positions 1..n.

    ``seed`` drives ``random`` and ``block-shuffle``; ``block`` is the block
    length of ``block-shuffle``; ``domain`` is streamed first (ascending) by
    ``domain-first``, the even positions when left empty.
    """

    kind: PermutationKind
    n: int
    seed: int = 0
    block: int = 2
    domain: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")
        if self.block < 1:
            raise ValueError("block length must be positive")
        if any(not 1 <= p <= self.n for p in self.domain):
            raise ValueError(f"domain positions must lie in 1..{self.n}")


def make_permutation(spec: PermutationSpec) -> list[int]:
    """Positions in the order they are streamed."""
    n = spec.n
    positions = list(range(1, n + 1))
    match spec.kind:
        case PermutationKind.IDENTITY:
            return positions
        case PermutationKind.REVERSE:
            return positions[::-1]
        case PermutationKind.RANDOM:
            random.Random(spec.seed).shuffle(positions)
            return positions
        case PermutationKind.EVENS_THEN_ODDS:
            return positions[1::2] + positions[0::2]
        case PermutationKind.BLOCK_SHUFFLE:
            blocks = [positions[i:i + spec.block] for i in range(0, n, spec.block)]
            random.Random(spec.seed).shuffle(blocks)
            return [p for block in blocks for p in block]
        case PermutationKind.DOMAIN_FIRST:
            domain = spec.domain or frozenset(positions[1::2])
            return sorted(domain) + [p for p in positions if p not in domain]
    raise ValueError(f"unknown permutation kind {spec.kind!r}")


def parse_permutation(text: str, n: int, seed: int = 0) -> PermutationSpec:
    """``identity``, ``reverse``, ``random``, ``evens-then-odds``,
    ``block-shuffle[:B]`` or ``domain-first[:p1,p2,...]``."""
    kind, _, argument = text.partition(":")
    try:
        kind = PermutationKind(kind)
    except ValueError:
        known = ", ".join(k.value for k in PermutationKind)
        raise ValueError(f"unknown permutation {text!r} (known: {known})") from None
    if kind is PermutationKind.BLOCK_SHUFFLE and argument:
        return PermutationSpec(kind, n, seed=seed, block=int(argument))
    if kind is PermutationKind.DOMAIN_FIRST and argument:
        return PermutationSpec(kind, n, seed=seed, domain=frozenset(int(p) for p in argument.split(",")))
    return PermutationSpec(kind, n, seed=seed)


def symbols_of(subject: Subject) -> tuple:
    """Letters a stream over ``subject`` is made of."""
    if isinstance(subject, FiniteSemigroup):
        return tuple(range(subject.size))
    return tuple(subject.alphabet)


def run_stream(e: Evaluator, word: Sequence, perm: PermutationSpec | Sequence[int]):
    """Feed ``word`` in the given order; return (answer, max state_bits).

    State size is sampled after ``init`` and after every feed.
    """
    n = len(word)
    order = make_permutation(perm) if isinstance(perm, PermutationSpec) else list(perm)
    if len(order) != n:
        raise ValueError(f"permutation covers {len(order)} positions, word has {n}")
    return run_events(e, n, (StreamEvent(word[p - 1], p, n) for p in order))


def run_events(e: Evaluator, n: int, events: Iterable[StreamEvent]):
    """Feed ``events`` to a fresh stream of length ``n``; return (answer, max state_bits)."""
    e.init(n)
    peak = e.state_bits()
    for event in events:
        e.feed(event)
        peak = max(peak, e.state_bits())
    return e.finish(), peak


def _sample_word(rng: random.Random, symbols: Sequence, n: int) -> list:
    """Uniform letters half of the time, else a few long runs."""
    if n == 0:
        return []
    if rng.random() < 0.5:
        return [rng.choice(symbols) for _ in range(n)]
    runs = rng.randint(1, min(n, 2 * len(symbols) + 2))
    cuts = sorted(rng.sample(range(1, n), runs - 1)) if runs > 1 else []
    word = []
    for start, end in zip([0, *cuts], [*cuts, n]):
        word.extend([rng.choice(symbols)] * (end - start))
    return word


@dataclass(frozen=True)
class FailureRecord:
    """First disagreement with the reference, with everything needed to replay it."""

    subject: str
    evaluator: str
    seed: str
    word: tuple
    permutation: tuple[int, ...]
    expected: object
    actual: object

    def to_replay(self) -> str:
        lines = [
            f"subject: {self.subject}",
            f"evaluator: {self.evaluator}",
            f"seed: {self.seed}",
            f"word: {' '.join(map(str, self.word))}",
            f"permutation: {' '.join(map(str, self.permutation))}",
            f"expected: {self.expected}",
            f"actual: {self.actual}",
        ]
        return "\n".join(lines) + "\n"

    def write_replay(self, path: str | Path) -> None:
        Path(path).write_text(self.to_replay(), encoding="utf-8")


@dataclass
class CampaignResult:
    passed: bool
    trials: int
    failure: FailureRecord | None = None


def _exhaustive_orders(n: int, seed: int) -> list[list[int]]:
    orders = [
        make_permutation(PermutationSpec(PermutationKind.IDENTITY, n)),
        make_permutation(PermutationSpec(PermutationKind.REVERSE, n)),
    ]
    orders += [make_permutation(PermutationSpec(PermutationKind.RANDOM, n, seed=seed + i)) for i in range(10)]
    return orders


def differential_campaign(
    factory: Factory,
    subject: Subject,
    n_range: Iterable[int],
    words_per_n: int = 500,
    perms_per_word: int = 5,
    seed: int = 0,
    exhaustive_upto: int = 6,
    reference: Factory = make_reference_evaluator,
) -> CampaignResult:
    """Compare ``factory(subject)`` with the reference evaluator.

    Lengths up to ``exhaustive_upto`` run every word in identity, reverse and
    ten seeded random orders; longer lengths sample ``words_per_n`` words with
    ``perms_per_word`` random orders each. Sample ``i`` at length ``n`` draws
    from ``random.Random(f"{seed}:{n}:{i}")``, which is the replay seed.
    """
    e, oracle = factory(subject), reference(subject)
    symbols = symbols_of(subject)
    trials = 0

    def check(word: list, order: list[int], sample_seed: str) -> FailureRecord | None:
        expected, _ = run_stream(oracle, word, order)
        try:
            actual, _ = run_stream(e, word, order)
        except OutOfOrderError as err:
            actual = f"error: {err.message}"
        if actual == expected:
            return None
        return FailureRecord(repr(subject), e.name, sample_seed, tuple(word), tuple(order), expected, actual)

    for n in n_range:
        if n <= exhaustive_upto:
            orders = _exhaustive_orders(n, seed)
            for index, word in enumerate(itertools.product(symbols, repeat=n)):
                for order in orders:
                    trials += 1
                    failure = check(list(word), order, f"{seed}:{n}:exhaustive:{index}")
                    if failure is not None:
                        return CampaignResult(False, trials, failure)
        else:
            for index in range(words_per_n):
                sample_seed = f"{seed}:{n}:{index}"
                rng = random.Random(sample_seed)
                word = _sample_word(rng, symbols, n)
                for _ in range(perms_per_word):
                    order = list(range(1, n + 1))
                    rng.shuffle(order)
                    trials += 1
                    failure = check(word, order, sample_seed)
                    if failure is not None:
                        return CampaignResult(False, trials, failure)
        logger.info("campaign %s: n=%d ok (%d trials so far)", e.name, n, trials)
    return CampaignResult(True, trials)


def parse_schedule(text: str) -> list[int]:
    """``start:stop:xF`` (geometric), ``start:stop:+D`` (arithmetic) or ``n1,n2,...``."""
    try:
        if ":" not in text:
            schedule = [int(part) for part in text.split(",")]
        else:
            start, stop, step = text.split(":")
            start, stop = int(start), int(stop)
            if step.startswith("x") and int(step[1:]) >= 2:
                factor = int(step[1:])
                schedule = [start * factor**i for i in range(int(math.log(stop / start, factor) + 1e-9) + 1)]
            elif step.startswith("+") and int(step[1:]) >= 1:
                schedule = list(range(start, stop + 1, int(step[1:])))
            else:
                raise ValueError
    except ValueError:
        raise ValueError(f"bad schedule {text!r}: expected START:STOP:xF, START:STOP:+D or N1,N2,...") from None
    if not schedule or any(n < 1 for n in schedule) or any(a >= b for a, b in zip(schedule, schedule[1:])):
        raise ValueError(f"bad schedule {text!r}: lengths must be positive and increasing")
    return schedule


# Candidate growth terms; log2 is floored at 1 so that n = 1 stays usable.
MODELS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "constant": np.ones_like,
    "logarithmic": lambda n: np.log2(np.maximum(n, 2)),
    "sqrt": np.sqrt,
    "linear": lambda n: n,
    "linearithmic": lambda n: n * np.log2(np.maximum(n, 2)),
}


def _relative_fit(ratios: np.ndarray) -> float:
    """RMS of (y - c f) / (c f) at the best c, given ratios y / f.

    With u = 1/c the residuals are u * ratio - 1, minimised at
    u = sum(ratio) / sum(ratio^2).
    """
    total = float(np.sum(ratios * ratios))
    if total == 0:
        return math.inf
    u = float(np.sum(ratios)) / total
    return float(np.sqrt(np.mean((u * ratios - 1) ** 2)))


def fit_growth(samples: Sequence[tuple[int, int]]) -> tuple[str, float]:
    """Fit c * f(n) for each candidate f and return the one with the smallest
    relative RMS residual, with that residual.

    Residuals are normalised by the model's value at each n, so large n do
    not dominate. Ties go to the slower growth rate.
    """
    if not samples:
        raise ValueError("no samples to fit")
    n = np.array([s[0] for s in samples], dtype=float)
    y = np.array([s[1] for s in samples], dtype=float)
    if not y.any():
        return "constant", 0.0
    errors = {name: _relative_fit(y / f(n)) for name, f in MODELS.items()}
    best = min(errors, key=errors.__getitem__)
    return best, errors[best]


@dataclass
class GrowthProfile:
    """Worst observed state size per length, and the model it is consistent with."""

    evaluator: str
    samples: list[tuple[int, int]] = field(default_factory=list)
    fitted_model: str = ""
    fit_error: float = 0.0
    construction: str | None = None

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "max_state_bits", "model", "fit_error"])
        for n, bits in self.samples:
            writer.writerow([n, bits, self.fitted_model, f"{self.fit_error:.4f}"])
        return out.getvalue()

    def summary(self) -> str:
        return f"consistent with {self.fitted_model} growth (relative error {self.fit_error:.4f})"


DEFAULT_PROFILE_ORDERS = (
    PermutationKind.RANDOM,
    PermutationKind.REVERSE,
    PermutationKind.EVENS_THEN_ODDS,
    PermutationKind.DOMAIN_FIRST,
)


def growth_profile(
    factory: Factory,
    subject: Subject,
    n_schedule: Sequence[int] | None = None,
    orders: Sequence[PermutationKind] = DEFAULT_PROFILE_ORDERS,
    words_per_n: int = 2,
    seed: int = 0,
) -> GrowthProfile:
    """Maximum state_bits over sampled words and orders, per n, then a fit.

    The default schedule is 16, 32, ..., 16384. The domain-first order streams
    the domain of the subject's fooling construction, at the largest size that
    fits in n; subjects without one (or too short for it) get a random order
    instead.
    """
    schedule = list(n_schedule) if n_schedule is not None else parse_schedule("16:16384:x2")
    if any(a >= b for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be strictly increasing")
    e = factory(subject)
    symbols = symbols_of(subject)
    profile = GrowthProfile(e.name, construction=construction_for(subject))
    for n in schedule:
        domain = fooling_domain(profile.construction, n) if profile.construction else frozenset()
        worst = 0
        for index in range(words_per_n):
            rng = random.Random(f"{seed}:{n}:{index}")
            word = _sample_word(rng, symbols, n)
            for kind in orders:
                order_seed = rng.randrange(2**32)
                if kind is PermutationKind.DOMAIN_FIRST and not domain:
                    spec = PermutationSpec(PermutationKind.RANDOM, n, seed=order_seed)
                else:
                    spec = PermutationSpec(kind, n, seed=order_seed, domain=domain)
                _, bits = run_stream(e, word, spec)
                worst = max(worst, bits)
        profile.samples.append((n, worst))
        logger.info("profile %s: n=%d max_state_bits=%d", e.name, n, worst)
    profile.fitted_model, profile.fit_error = fit_growth(profile.samples)
    return profile
