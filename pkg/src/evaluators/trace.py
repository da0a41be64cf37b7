"""Stream trace files.

Line 1 is ``n=<N>``; each following line is ``<pos> <token>`` with a 1-based
position. Tokens are alphabet letters for a language and element names for an
algebra. Duplicate or missing positions are not rejected here: the evaluator
reports them when the stream finishes.
"""

from dataclasses import dataclass
from pathlib import Path

from ..algebra import FiniteSemigroup
from ..errors import ParseError
from .base import StreamEvent


@dataclass(frozen=True)
class Trace:
    length: int
    entries: tuple[tuple[int, str], ...]

    def events(self, algebra: FiniteSemigroup | None = None) -> list[StreamEvent]:
        """Stream events; tokens become element indices when ``algebra`` is given."""
        if algebra is None:
            return [StreamEvent(token, position, self.length) for position, token in self.entries]
        return [StreamEvent(algebra.index(token), position, self.length) for position, token in self.entries]


def parse_trace(text: str) -> Trace:
    lines = [
        (number, line.strip())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines or not lines[0][1].startswith("n="):
        raise ParseError("first line must be 'n=<N>'")
    number, header = lines[0]
    try:
        length = int(header.removeprefix("n="))
    except ValueError:
        raise ParseError(f"line {number}: bad length {header!r}") from None
    if length < 0:
        raise ParseError(f"line {number}: length must be non-negative")

    entries = []
    for number, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {number}: expected '<pos> <letter>', got {line!r}")
        try:
            position = int(parts[0])
        except ValueError:
            raise ParseError(f"line {number}: bad position {parts[0]!r}") from None
        if not 1 <= position <= length:
            raise ParseError(f"line {number}: position {position} outside 1..{length}")
        entries.append((position, parts[1]))
    return Trace(length, tuple(entries))


def load_trace(path: str | Path) -> Trace:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read trace {path}: {e.strerror}") from None
    return parse_trace(text)


def format_trace(length: int, entries: list[tuple[int, str]]) -> str:
    lines = [f"n={length}", *(f"{position} {token}" for position, token in entries)]
    return "\n".join(lines) + "\n"
