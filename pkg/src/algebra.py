"""Finite semigroups and monoids.

Tables, left-fold evaluation, the idempotent power, exhaustive equation
checking and the space-regime classification of monoids and semigroups.
Also the variety operators (direct product, subalgebra, quotient), the
table-file codec, and seeded catalogs of transformation semigroups used to
cross-check the equation theory.

Element indices are plain ints in declaration order; names only matter for
I/O and witness reporting.
"""

import itertools
import logging
import math
import random
from collections import defaultdict
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import InitVar, dataclass, field
from enum import StrEnum
from functools import cached_property
from pathlib import Path

import numpy as np

from .config import get_settings
from .errors import AlgebraError, CapExceededError, ParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    """A finite semigroup given by its multiplication table.

    ``table[i, j]`` is the index of ``elements[i] * elements[j]``. When
    ``identity`` is set the structure is a monoid. Instances are immutable;
    the table array is made read-only on construction.
    """

    elements: tuple[str, ...]
    table: np.ndarray
    identity: int | None = None
    check_laws: InitVar[bool] = True

    def __post_init__(self, check_laws: bool) -> None:
        elements = tuple(self.elements)
        if not elements:
            raise AlgebraError("a semigroup needs at least one element")
        for name in elements:
            if not name or any(ch.isspace() for ch in name):
                raise AlgebraError(f"invalid element name {name!r}")
        if len(set(elements)) != len(elements):
            raise AlgebraError("element names must be pairwise distinct")

        k = len(elements)
        table = np.array(self.table, dtype=np.intp)
        if table.shape != (k, k):
            raise AlgebraError(f"table must be {k}x{k}, got shape {table.shape}")
        if table.min() < 0 or table.max() >= k:
            raise AlgebraError("table entries must be element indices")
        table.flags.writeable = False

        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "table", table)

        if check_laws:
            _check_associative(table, elements)
        if self.identity is not None:
            if not 0 <= self.identity < k:
                raise AlgebraError(f"identity index {self.identity} out of range")
            e = self.identity
            if (table[e] != np.arange(k)).any() or (table[:, e] != np.arange(k)).any():
                raise AlgebraError(f"{elements[e]!r} is not a two-sided identity")

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def is_monoid(self) -> bool:
        return self.identity is not None

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        """The table as nested tuples, for fast scalar lookups."""
        return tuple(tuple(int(v) for v in row) for row in self.table)

    @cached_property
    def omega(self) -> int:
        return idempotent_power(self)

    @cached_property
    def omega_map(self) -> np.ndarray:
        """``omega_map[x]`` is ``x`` raised to the idempotent power."""
        values = np.array([power(self, x, self.omega) for x in range(self.size)], dtype=np.intp)
        values.flags.writeable = False
        return values

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.elements)}

    def index(self, name: str) -> int:
        """Return the index of an element name."""
        try:
            return self._index[name]
        except KeyError:
            raise AlgebraError(f"unknown element {name!r}") from None

    def name(self, i: int) -> str:
        return self.elements[i]

    def multiply(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def with_identity(self, identity: int | None) -> "FiniteSemigroup":
        """Same table, viewed as a monoid (or as a plain semigroup for ``None``)."""
        return FiniteSemigroup(self.elements, self.table, identity, check_laws=False)

    def __repr__(self) -> str:
        kind = "FiniteMonoid" if self.is_monoid else "FiniteSemigroup"
        return f"{kind}({' '.join(self.elements)})"


def _check_associative(table: np.ndarray, elements: Sequence[str]) -> None:
    # One k x k slice per left factor keeps memory at O(k^2).
    for i in range(table.shape[0]):
        left = table[table[i]]
        right = table[i][table]
        bad = np.argwhere(left != right)
        if bad.size:
            j, k = (int(v) for v in bad[0])
            raise AlgebraError(
                "table is not associative: "
                f"({elements[i]}*{elements[j]})*{elements[k]} != "
                f"{elements[i]}*({elements[j]}*{elements[k]})"
            )


def evaluate_word(S: FiniteSemigroup, word: Iterable[int]) -> int:
    """Left fold of the multiplication table over ``word``.

    Raises:
        AlgebraError: If ``word`` is empty and ``S`` has no identity.
    """
    rows = S.rows
    it = iter(word)
    try:
        acc = next(it)
    except StopIteration:
        if S.identity is None:
            raise AlgebraError("the empty word has no value in a semigroup without identity") from None
        return S.identity
    for x in it:
        acc = rows[acc][x]
    return acc


def power(S: FiniteSemigroup, x: int, n: int) -> int:
    """``x`` to the positive power ``n``, by repeated squaring."""
    if n < 1:
        raise ValueError("exponent must be positive")
    rows = S.rows
    result = None
    base = x
    while n:
        if n & 1:
            result = base if result is None else rows[result][base]
        base = rows[base][base]
        n >>= 1
    return result


def idempotent_power(S: FiniteSemigroup) -> int:
    """Smallest n >= 1 with x^n = x^(2n) for every element x.

    Each element has an index i and period p (x^(i+p) = x^i, minimal). Then
    x^n is idempotent iff n >= i and p divides n, so the answer is the
    smallest multiple of lcm(periods) that is at least max(indices).
    """
    rows = S.rows
    period_lcm = 1
    max_index = 1
    for x in range(S.size):
        seen: dict[int, int] = {}
        value, exponent = x, 1
        while value not in seen:
            seen[value] = exponent
            value = rows[value][x]
            exponent += 1
        index = seen[value]
        period_lcm = math.lcm(period_lcm, exponent - index)
        max_index = max(max_index, index)
    return period_lcm * -(-max_index // period_lcm)


def neutral_element(S: FiniteSemigroup) -> int | None:
    """Index of a two-sided identity of the table, if one exists."""
    ids = np.arange(S.size)
    for e in range(S.size):
        if (S.table[e] == ids).all() and (S.table[:, e] == ids).all():
            return e
    return None


def zero_element(S: FiniteSemigroup) -> int | None:
    """Index of an absorbing element, if one exists."""
    for z in range(S.size):
        if (S.table[z] == z).all() and (S.table[:, z] == z).all():
            return z
    return None


# Equations

class Equation(StrEnum):
    COM = "COM"
    FL = "FL"
    FLCOM = "FLCOM"
    LI = "LI"
    LICOM = "LICOM"
    LICOM1 = "LICOM1"
    LICOM2 = "LICOM2"
    LOCAL_COM = "LOCAL_COM"


@dataclass(frozen=True)
class _Omega:
    factors: tuple


@dataclass(frozen=True)
class EquationSpec:
    """Two sides of an identity; variables are single letters."""

    equation: Equation
    variables: tuple[str, ...]
    lhs: tuple
    rhs: tuple
    text: str

    @cached_property
    def lookups(self) -> int:
        """Table lookups needed to evaluate both sides once."""
        return _count_lookups(self.lhs) + _count_lookups(self.rhs)


def _count_lookups(term: tuple) -> int:
    count = max(len(term) - 1, 0)
    for factor in term:
        if isinstance(factor, _Omega):
            count += 1 + _count_lookups(factor.factors)
    return count


def _parse_side(text: str) -> tuple:
    factors: list = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == "(":
            close = text.index(")", i)
            inner = _parse_side(text[i + 1:close])
            if not text.startswith("^w", close + 1):
                raise ValueError(f"parenthesised group must carry ^w in {text!r}")
            factors.append(_Omega(inner))
            i = close + 3
        elif ch.isalpha():
            if text.startswith("^w", i + 1):
                factors.append(_Omega((ch,)))
                i += 3
            else:
                factors.append(ch)
                i += 1
        else:
            raise ValueError(f"unexpected {ch!r} in {text!r}")
    return tuple(factors)


def _spec(equation: Equation, variables: str, text: str) -> EquationSpec:
    lhs, rhs = text.split("=")
    return EquationSpec(equation, tuple(variables.split()), _parse_side(lhs), _parse_side(rhs), text)


# Variable order fixes witness tie-breaking: the first variable is the most
# significant digit of the lexicographic enumeration.
EQUATIONS: dict[Equation, EquationSpec] = {
    spec.equation: spec
    for spec in (
        _spec(Equation.COM, "x y", "xy = yx"),
        _spec(Equation.FL, "x y z s t", "(xy)^w st (xz)^w = (xy)^w sxt (xz)^w"),
        _spec(Equation.FLCOM, "x a b s t u", "(xa)^w sxtu (xb)^w = (xa)^w stxu (xb)^w"),
        _spec(Equation.LI, "x y", "x^w y x^w = x^w"),
        _spec(Equation.LICOM, "s x y t", "s^w xy t^w = s^w yx t^w"),
        _spec(Equation.LICOM1, "s x t", "s^w x s^w t^w = s^w x t^w"),
        _spec(Equation.LICOM2, "s x y", "s^w x s^w y s^w = s^w xy s^w"),
        _spec(Equation.LOCAL_COM, "s x y", "s^w x s^w y s^w = s^w y s^w x s^w"),
    )
}


def _evaluate_term(S: FiniteSemigroup, term: tuple, values: Mapping[str, np.ndarray]) -> np.ndarray:
    acc = None
    for factor in term:
        if isinstance(factor, _Omega):
            value = S.omega_map[_evaluate_term(S, factor.factors, values)]
        else:
            value = values[factor]
        acc = value if acc is None else S.table[acc, value]
    return acc


@dataclass(frozen=True)
class EquationWitness:
    """An assignment under which the two sides of an equation differ."""

    equation: Equation
    assignment: dict[str, int]
    lhs_value: int
    rhs_value: int

    def __post_init__(self) -> None:
        if self.lhs_value == self.rhs_value:
            raise ValueError("a witness needs two different sides")

    def describe(self, S: FiniteSemigroup) -> str:
        """Assignment as ``name=value`` pairs in variable order."""
        return " ".join(f"{var}={S.name(value)}" for var, value in self.assignment.items())

    def values(self, S: FiniteSemigroup) -> str:
        return f"lhs={S.name(self.lhs_value)} rhs={S.name(self.rhs_value)}"


def evaluate_equation(
    S: FiniteSemigroup,
    equation: Equation | str,
    assignment: Mapping[str, int],
) -> tuple[int, int]:
    """Evaluate both sides of ``equation`` under one explicit assignment."""
    spec = EQUATIONS[Equation(equation)]
    missing = set(spec.variables) - set(assignment)
    if missing:
        raise ValueError(f"assignment misses variables {sorted(missing)}")
    values = {var: np.intp(assignment[var]) for var in spec.variables}
    return int(_evaluate_term(S, spec.lhs, values)), int(_evaluate_term(S, spec.rhs, values))


def check_equation(
    S: FiniteSemigroup,
    equation: Equation | str,
    cap: int | None = None,
) -> EquationWitness | None:
    """Exhaustively check an equation over every assignment of its variables.

    Returns:
        None if the equation holds, else the lexicographically first
        violating assignment (element-declaration order, variables in the
        order listed in ``EQUATIONS``).

    Raises:
        CapExceededError: If |S|^v times the per-assignment lookups exceeds
            the cap.
    """
    spec = EQUATIONS[Equation(equation)]
    cap = get_settings().equation_cap if cap is None else cap
    k, v = S.size, len(spec.variables)
    required = k**v * spec.lookups
    if required > cap:
        raise CapExceededError(f"checking {spec.equation} on {k} elements", required, cap)

    shape = (k,) * v
    values = {}
    for axis, var in enumerate(spec.variables):
        view = [1] * v
        view[axis] = k
        values[var] = np.arange(k, dtype=np.intp).reshape(view)
    lhs = _evaluate_term(S, spec.lhs, values)
    rhs = _evaluate_term(S, spec.rhs, values)
    lhs, rhs = (np.broadcast_to(side, shape) for side in (lhs, rhs))
    bad = np.argwhere(lhs != rhs)
    logger.debug("checked %s on %d elements (%d lookups)", spec.equation, k, required)
    if not bad.size:
        return None
    first = tuple(int(i) for i in bad[0])
    return EquationWitness(
        equation=spec.equation,
        assignment=dict(zip(spec.variables, first)),
        lhs_value=int(lhs[first]),
        rhs_value=int(rhs[first]),
    )


# Classification

class Regime(StrEnum):
    CONSTANT = "Constant"
    LOGARITHMIC = "Logarithmic"
    AT_LEAST_LOGARITHMIC = "AtLeastLogarithmic"
    LINEAR = "Linear"

    @property
    def rank(self) -> int:
        return {"Constant": 0, "Logarithmic": 1, "AtLeastLogarithmic": 1, "Linear": 2}[self.value]


@dataclass(frozen=True)
class RegimeReport:
    """Outcome of classifying a monoid or a semigroup."""

    subject: str
    regime: Regime
    witness: EquationWitness | None = None

    def __post_init__(self) -> None:
        if self.subject not in ("monoid", "semigroup"):
            raise ValueError(f"unknown subject kind {self.subject!r}")
        if self.subject == "semigroup" and self.regime in (Regime.LOGARITHMIC, Regime.LINEAR):
            raise ValueError("tight log/linear regimes are only established for monoids")
        if self.subject == "monoid" and self.regime is Regime.AT_LEAST_LOGARITHMIC:
            raise ValueError("monoid regimes are always tight")

    @property
    def variety(self) -> str | None:
        """Variety whose membership places the subject in its regime."""
        return {
            ("monoid", Regime.CONSTANT): "Com",
            ("monoid", Regime.LOGARITHMIC): "FL∨Com",
            ("semigroup", Regime.CONSTANT): "Li∨Com",
        }.get((self.subject, self.regime))

    def headline(self, S: FiniteSemigroup) -> str:
        if self.variety:
            return f"{self.regime} ({self.variety})"
        if self.witness:
            return f"{self.regime}, {self.witness.equation} violated: {self.witness.describe(S)}"
        return str(self.regime)


def classify_monoid(M: FiniteSemigroup, cap: int | None = None) -> RegimeReport:
    """Constant / logarithmic / linear regime of out-of-order monoid evaluation."""
    if M.identity is None:
        raise AlgebraError("classify_monoid needs a monoid, the table has no identity")
    com = check_equation(M, Equation.COM, cap)
    if com is None:
        return RegimeReport("monoid", Regime.CONSTANT)
    flcom = check_equation(M, Equation.FLCOM, cap)
    if flcom is None:
        return RegimeReport("monoid", Regime.LOGARITHMIC, com)
    return RegimeReport("monoid", Regime.LINEAR, flcom)


def classify_semigroup(S: FiniteSemigroup, cap: int | None = None) -> RegimeReport:
    """Constant regime iff Li∨Com; otherwise at least logarithmic.

    The witness comes from the first failing equation among LICOM1, LICOM2
    and LOCAL_COM, in that order.
    """
    if check_equation(S, Equation.LICOM, cap) is None:
        return RegimeReport("semigroup", Regime.CONSTANT)
    for equation in (Equation.LICOM1, Equation.LICOM2, Equation.LOCAL_COM):
        witness = check_equation(S, equation, cap)
        if witness is not None:
            return RegimeReport("semigroup", Regime.AT_LEAST_LOGARITHMIC, witness)
    # The three equations jointly imply LICOM, so this is unreachable on a
    # correct table.
    raise AlgebraError("LICOM fails but LICOM1, LICOM2 and LOCAL_COM all hold")


def fl_subword(u: Sequence[int], k: int) -> list[int]:
    """Keep the first k and last k occurrences of every element, in order."""
    if k < 1:
        raise ValueError("k must be positive")
    occurrences: dict[int, list[int]] = defaultdict(list)
    for i, m in enumerate(u):
        occurrences[m].append(i)
    keep: set[int] = set()
    for positions in occurrences.values():
        keep.update(positions[:k])
        keep.update(positions[-k:])
    return [u[i] for i in sorted(keep)]


# Variety operators

@dataclass(frozen=True)
class ProductAlgebra:
    """Direct product with its pairing maps."""

    algebra: FiniteSemigroup
    left: FiniteSemigroup
    right: FiniteSemigroup

    def pair(self, i: int, j: int) -> int:
        return i * self.right.size + j

    def split(self, x: int) -> tuple[int, int]:
        return divmod(x, self.right.size)


def direct_product(S1: FiniteSemigroup, S2: FiniteSemigroup) -> ProductAlgebra:
    k2 = S2.size
    table = (S1.table[:, None, :, None] * k2 + S2.table[None, :, None, :]).reshape(S1.size * k2, -1)
    names = tuple(f"({a},{b})" for a in S1.elements for b in S2.elements)
    identity = None
    if S1.identity is not None and S2.identity is not None:
        identity = S1.identity * k2 + S2.identity
    return ProductAlgebra(FiniteSemigroup(names, table, identity, check_laws=False), S1, S2)


def _closure(
    seeds: Sequence,
    multiply: Callable,
    limit: int | None = None,
) -> list | None:
    """Close ``seeds`` under ``multiply``; discovery order is kept."""
    found = list(dict.fromkeys(seeds))
    known = set(found)
    frontier = list(found)
    while frontier:
        fresh = []
        for a in found:
            for b in frontier:
                for c in (multiply(a, b), multiply(b, a)):
                    if c not in known:
                        known.add(c)
                        found.append(c)
                        fresh.append(c)
                        if limit is not None and len(found) > limit:
                            return None
        frontier = fresh
    return found


def _restrict(S: FiniteSemigroup, members: Sequence[int], identity: int | None) -> FiniteSemigroup:
    position = {m: i for i, m in enumerate(members)}
    table = [[position[S.rows[a][b]] for b in members] for a in members]
    names = tuple(S.name(m) for m in members)
    ident = position[identity] if identity is not None else None
    return FiniteSemigroup(names, table, ident, check_laws=False)


def subalgebra(
    S: FiniteSemigroup,
    generators: Iterable[int],
    monoid: bool = False,
) -> tuple[FiniteSemigroup, list[int]]:
    """Subsemigroup (or submonoid) generated by ``generators``.

    Returns:
        The subalgebra and its embedding (sub index -> host index).
    """
    seeds = list(generators)
    if monoid:
        if S.identity is None:
            raise AlgebraError("a submonoid needs a host identity")
        seeds = [S.identity, *seeds]
    if not seeds:
        raise AlgebraError("a subsemigroup needs at least one generator")
    members = _closure(seeds, S.multiply)
    return _restrict(S, members, S.identity if monoid else None), members


def quotient(S: FiniteSemigroup, class_map: Sequence[int]) -> FiniteSemigroup:
    """Quotient by the partition ``class_map`` (host index -> class label).

    Raises:
        AlgebraError: If the partition is not a congruence.
    """
    if len(class_map) != S.size:
        raise AlgebraError("class map must label every element")
    labels = sorted(set(class_map))
    relabel = {label: i for i, label in enumerate(labels)}
    classes = [relabel[c] for c in class_map]
    members: list[list[int]] = [[] for _ in labels]
    for x, c in enumerate(classes):
        members[c].append(x)

    table = [[-1] * len(labels) for _ in labels]
    for a in range(S.size):
        for b in range(S.size):
            c = classes[S.rows[a][b]]
            ca, cb = classes[a], classes[b]
            if table[ca][cb] == -1:
                table[ca][cb] = c
            elif table[ca][cb] != c:
                raise AlgebraError(
                    f"partition is not a congruence: {S.name(a)}*{S.name(b)} leaves its class"
                )
    names = tuple(
        S.name(group[0]) if len(group) == 1 else "[" + ",".join(S.name(x) for x in group) + "]"
        for group in members
    )
    identity = classes[S.identity] if S.identity is not None else None
    return FiniteSemigroup(names, table, identity, check_laws=False)


# Table-file codec

def parse_semigroup(text: str) -> FiniteSemigroup:
    """Parse the line-based table format.

    ``elements: n1 ... nk``, an optional ``identity: ni``, then k rows of k
    names each. Blank lines and ``#`` comments are ignored.
    """
    lines = [
        (number, line.strip())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines or not lines[0][1].startswith("elements:"):
        raise ParseError("first line must be 'elements: ...'")
    names = lines[0][1].removeprefix("elements:").split()
    if not names:
        raise ParseError("line 1: no elements declared")
    if len(set(names)) != len(names):
        raise ParseError("line 1: element names must be unique")
    index = {name: i for i, name in enumerate(names)}

    def lookup(number: int, name: str) -> int:
        try:
            return index[name]
        except KeyError:
            raise ParseError(f"line {number}: unknown element {name!r}") from None

    rest = lines[1:]
    identity = None
    if rest and rest[0][1].startswith("identity:"):
        number, line = rest[0]
        parts = line.removeprefix("identity:").split()
        if len(parts) != 1:
            raise ParseError(f"line {number}: identity takes exactly one name")
        identity = lookup(number, parts[0])
        rest = rest[1:]

    k = len(names)
    if len(rest) != k:
        raise ParseError(f"expected {k} table rows, got {len(rest)}")
    table = []
    for number, line in rest:
        cells = line.split()
        if len(cells) != k:
            raise ParseError(f"line {number}: expected {k} columns, got {len(cells)}")
        table.append([lookup(number, cell) for cell in cells])
    return FiniteSemigroup(tuple(names), table, identity)


def load_semigroup(path: str | Path) -> FiniteSemigroup:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return parse_semigroup(text)


def format_semigroup(S: FiniteSemigroup) -> str:
    lines = ["elements: " + " ".join(S.elements)]
    if S.identity is not None:
        lines.append(f"identity: {S.name(S.identity)}")
    width = max(len(name) for name in S.elements)
    for row in S.rows:
        lines.append(" ".join(S.name(x).ljust(width) for x in row).rstrip())
    return "\n".join(lines) + "\n"


# Transformation semigroups

Transformation = tuple[int, ...]


def _compose(f: Transformation, g: Transformation) -> Transformation:
    # Right action: apply f, then g.
    return tuple(g[q] for q in f)


def _transformation_algebra(members: Sequence[Transformation]) -> FiniteSemigroup:
    position = {t: i for i, t in enumerate(members)}
    table = [[position[_compose(f, g)] for g in members] for f in members]
    sep = "" if len(members[0]) <= 10 else "."
    names = tuple(sep.join(str(q) for q in t) for t in members)
    degree = len(members[0])
    identity = position.get(tuple(range(degree)))
    return FiniteSemigroup(names, table, identity, check_laws=False)


def transformation_semigroup(
    generators: Sequence[Sequence[int]],
    degree: int,
    limit: int | None = None,
) -> FiniteSemigroup | None:
    """Subsemigroup of the full transformation semigroup on ``degree`` points.

    Returns None when the closure grows past ``limit`` elements.
    """
    gens = [tuple(g) for g in generators]
    for g in gens:
        if len(g) != degree or not all(0 <= q < degree for q in g):
            raise AlgebraError(f"{g} is not a transformation of {degree} points")
    members = _closure(gens, _compose, limit)
    if members is None:
        return None
    return _transformation_algebra(members)


def random_catalog(
    count: int,
    seed: int = 0,
    degrees: Sequence[int] = (3, 4),
    max_size: int = 8,
    max_generators: int = 3,
) -> list[FiniteSemigroup]:
    """Seeded catalog of small transformation semigroups, deduplicated by element set."""
    rng = random.Random(seed)
    catalog: list[FiniteSemigroup] = []
    seen: set[frozenset[str]] = set()
    for _ in range(count * 50):
        if len(catalog) >= count:
            break
        degree = rng.choice(list(degrees))
        gens = [
            tuple(rng.randrange(degree) for _ in range(degree))
            for _ in range(rng.randint(1, max_generators))
        ]
        S = transformation_semigroup(gens, degree, limit=max_size)
        if S is None:
            continue
        key = frozenset(S.elements)
        if key in seen:
            continue
        seen.add(key)
        catalog.append(S)
    logger.debug("catalog: %d semigroups (seed %d)", len(catalog), seed)
    return catalog


def all_words(alphabet: Sequence[int], max_len: int, min_len: int = 0) -> Iterable[tuple[int, ...]]:
    """Every word of length ``min_len`` to ``max_len``, shortest first."""
    for length in range(min_len, max_len + 1):
        yield from itertools.product(alphabet, repeat=length)
