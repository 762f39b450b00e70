"""
Concrete colored barred preferential arrangements and their canonical text.

    bpa     := special ("|" section)^lambda
    special := "[" assigns "]"
    section := block*
    block   := "{" assigns "}"
    assigns := (elem ":" color) ("," elem ":" color)* | empty

The special section lists gamma-colored elements, every block lists
beta-colored elements. Whitespace between tokens is ignored.
"""
import re
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Iterable, TypeAlias

from .exceptions import BpaParseError, StructureError
from .params import Params

Assignment: TypeAlias = tuple[tuple[int, int], ...]
Section: TypeAlias = tuple[Assignment, ...]


def _assignment(value: Mapping[int, int] | Iterable[tuple[int, int]]) -> Assignment:
    items = value.items() if isinstance(value, Mapping) else value
    return tuple(sorted((int(e), int(c)) for e, c in items))


@dataclass(frozen=True)
class BpaStructure:
    n: int
    params: Params
    special: Assignment
    sections: tuple[Section, ...]

    def __post_init__(self):
        object.__setattr__(self, 'special', _assignment(self.special))
        object.__setattr__(
            self, 'sections', tuple(tuple(_assignment(b) for b in section) for section in self.sections)
        )
        self._validate()

    @classmethod
    def trusted(cls, n: int, params: Params, special: Assignment, sections: tuple[Section, ...]) -> "BpaStructure":
        """Wrap generator output that is already canonical, skipping normalization and validation."""
        structure = object.__new__(cls)
        for name, value in (('n', n), ('params', params), ('special', special), ('sections', sections)):
            object.__setattr__(structure, name, value)
        return structure

    def _validate(self):
        params = self.params
        if len(self.sections) != params.lambda_:
            raise StructureError(
                f"Expected {params.lambda_} sections (bars), got {len(self.sections)}"
            )
        if params.gamma == 0 and self.special:
            raise StructureError("Special section must be empty when gamma = 0")
        for element, color in self.special:
            if not 1 <= color <= params.gamma:
                raise StructureError(f"Special color {color} of element {element} is outside 1..{params.gamma}")
        for section in self.sections:
            for block in section:
                if not block:
                    raise StructureError("Blocks must not be empty")
                for element, color in block:
                    if not 1 <= color <= params.beta:
                        raise StructureError(f"Block color {color} of element {element} is outside 1..{params.beta}")

        counts = Counter(e for e, _ in self.special)
        counts.update(e for section in self.sections for block in section for e, _ in block)
        repeated = sorted(e for e, c in counts.items() if c > 1)
        if repeated:
            raise StructureError(f"Element {repeated[0]} appears more than once")
        outside = sorted(e for e in counts if not 1 <= e <= self.n)
        if outside:
            raise StructureError(f"Element {outside[0]} is outside 1..{self.n}")
        missing = [e for e in range(1, self.n + 1) if e not in counts]
        if missing:
            raise StructureError(f"Element {missing[0]} is missing")

    @property
    def block_count(self) -> int:
        return sum(len(section) for section in self.sections)

    def __str__(self):
        return format_structure(self)


def _format_assignment(assignment: Assignment) -> str:
    return ','.join(f"{e}:{c}" for e, c in assignment)


def format_structure(structure: BpaStructure) -> str:
    text = f"[{_format_assignment(structure.special)}]"
    for section in structure.sections:
        text += ' |'
        if section:
            text += ' ' + ' '.join(f"{{{_format_assignment(b)}}}" for b in section)
    return text


_TOKEN = re.compile(r"\s*(?:(\d+)|([\[\]{}|,:]))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    position = 0
    stripped_end = len(text.rstrip())
    while position < stripped_end:
        match = _TOKEN.match(text, position)
        if not match:
            raise BpaParseError(f"Unexpected character {text[position]!r}", position)
        tokens.append((match.group(1) or match.group(2), match.start(match.lastindex)))
        position = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> str | None:
        return self.tokens[self.index][0] if self.index < len(self.tokens) else None

    def position(self) -> int | None:
        return self.tokens[self.index][1] if self.index < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        token = self.peek()
        if token is None:
            raise BpaParseError(f"Unexpected end of text, expected {expected or 'a token'!r}")
        if expected is not None and token != expected:
            raise BpaParseError(f"Expected {expected!r}, found {token!r}", self.position())
        self.index += 1
        return token

    def number(self) -> int:
        token = self.peek()
        if token is None or not token.isdigit():
            found = 'end of text' if token is None else repr(token)
            raise BpaParseError(f"Expected a number, found {found}", self.position())
        self.index += 1
        return int(token)

    def assigns(self, closing: str) -> list[tuple[int, int]]:
        pairs = []
        if self.peek() == closing:
            self.take(closing)
            return pairs
        while True:
            element = self.number()
            self.take(':')
            pairs.append((element, self.number()))
            if self.peek() == ',':
                self.take(',')
                continue
            self.take(closing)
            return pairs

    def structure(self) -> tuple[list, list]:
        if self.peek() == '{':
            raise BpaParseError("Block text before first bar must be special '[...]'", self.position())
        self.take('[')
        special = self.assigns(']')
        sections = []
        while self.peek() is not None:
            if self.peek() == '{':
                raise BpaParseError("Blocks must follow a bar '|'", self.position())
            self.take('|')
            blocks = []
            while self.peek() == '{':
                self.take('{')
                blocks.append(self.assigns('}'))
            sections.append(blocks)
        return special, sections


def parse_structure(text: str, params: Params, n: int) -> BpaStructure:
    special, sections = _Parser(text).structure()
    if len(sections) != params.lambda_:
        raise StructureError(f"Expected {params.lambda_} bars, found {len(sections)}")
    return BpaStructure(n, params, special, tuple(sections))
