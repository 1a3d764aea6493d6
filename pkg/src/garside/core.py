"""
Words, signed words and finite monoid presentations.

Atoms are stored as 0-based indices into an :class:`AtomTable`; the text
formats always use the atom names verbatim. A positive word is a tuple of
indices, a signed word a tuple of ``(index, sign)`` pairs with sign +1 or -1.

Presentation file format::

    # comment
    atoms: x1 x2 x3 x4
    rel: x1 x2 = x3 x3
    rel: x1 x3 = x2 x4
"""

from __future__ import annotations

import dataclasses
import re
from typing import Iterable, Sequence

from .errors import DuplicateAtom, ParseError, UnknownAtom

Word = tuple[int, ...]
SignedWord = tuple[tuple[int, int], ...]

EPSILON: Word = ()
_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclasses.dataclass(frozen=True)
class AtomTable:
    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ParseError("atom table is empty")
        seen = set()
        for name in self.names:
            if not _NAME.match(name):
                raise ParseError(f"invalid atom name {name!r}")
            if name in seen:
                raise DuplicateAtom(name)
            seen.add(name)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownAtom(name) from None

    def format_word(self, word: Sequence[int], empty: str = "1") -> str:
        if not word:
            return empty
        return " ".join(self.names[i] for i in word)

    def format_signed(self, word: Sequence[tuple[int, int]], empty: str = "1") -> str:
        if not word:
            return empty
        return " ".join(self.names[i] + ("" if s > 0 else "^-1") for i, s in word)


@dataclasses.dataclass(frozen=True)
class Presentation:
    atoms: AtomTable
    relations: tuple[tuple[Word, Word], ...] = ()

    def __post_init__(self):
        n = len(self.atoms)
        for k, (lhs, rhs) in enumerate(self.relations):
            if not lhs or not rhs:
                raise ParseError(f"relation {k} has an empty side")
            if any(not 0 <= i < n for i in lhs + rhs):
                raise ParseError(f"relation {k} uses an atom index out of range")
            if lhs == rhs:
                raise ParseError(f"relation {k} is degenerate (both sides identical)")

    @property
    def n(self) -> int:
        return len(self.atoms)

    @classmethod
    def from_names(cls, names: Iterable[str], relations: Iterable[tuple[str, str]]) -> "Presentation":
        """Build from atom names and relations given as space-separated strings."""
        atoms = AtomTable(tuple(names))
        rels = tuple(
            (tuple(atoms.index(t) for t in lhs.split()), tuple(atoms.index(t) for t in rhs.split()))
            for lhs, rhs in relations
        )
        return cls(atoms, rels)

    def word(self, text: str) -> Word:
        """Parse a positive word; ``""`` and ``"1"`` denote the identity."""
        signed = parse_word(text, self.atoms)
        if any(s < 0 for _, s in signed):
            raise ParseError(f"expected a positive word, got {text!r}")
        return tuple(i for i, _ in signed)

    def format_word(self, word: Sequence[int]) -> str:
        return self.atoms.format_word(word)


@dataclasses.dataclass(frozen=True)
class ValidationReport:
    homogeneous: bool
    quadratic: bool
    complemented: bool
    missing_pairs: tuple[tuple[int, int], ...]
    ambiguous_pairs: tuple[tuple[int, int], ...]

    def to_dict(self, atoms: AtomTable) -> dict:
        pair = lambda p: [atoms.names[p[0]], atoms.names[p[1]]]
        return {
            "homogeneous": self.homogeneous,
            "quadratic": self.quadratic,
            "complemented": self.complemented,
            "missing_pairs": [pair(p) for p in self.missing_pairs],
            "ambiguous_pairs": [pair(p) for p in self.ambiguous_pairs],
        }


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def _parse_names(body: str, lineno: int, offset: int, atoms: AtomTable) -> Word:
    word = []
    for m in re.finditer(r"\S+", body):
        token = m.group()
        col = offset + m.start() + 1
        if not _NAME.match(token):
            raise ParseError(f"invalid token {token!r}", lineno, col)
        if token not in atoms.names:
            raise UnknownAtom(token, lineno, col)
        word.append(atoms.names.index(token))
    return tuple(word)


def parse_presentation(text: str) -> Presentation:
    atoms = None
    relations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        head, sep, body = line.partition(":")
        key = head.strip()
        offset = len(head) + 1
        if not sep or key not in ("atoms", "rel"):
            raise ParseError("expected 'atoms:' or 'rel:'", lineno, len(raw) - len(raw.lstrip()) + 1)
        if key == "atoms":
            if atoms is not None:
                raise ParseError("atoms declared twice", lineno, 1)
            names = []
            for m in re.finditer(r"\S+", body):
                name = m.group()
                col = offset + m.start() + 1
                if not _NAME.match(name):
                    raise ParseError(f"invalid atom name {name!r}", lineno, col)
                if name in names:
                    raise DuplicateAtom(name, lineno, col)
                names.append(name)
            if not names:
                raise ParseError("no atoms declared", lineno, offset + 1)
            atoms = AtomTable(tuple(names))
            continue
        if atoms is None:
            raise ParseError("relation before the atoms line", lineno, 1)
        if body.count("=") != 1:
            raise ParseError("relation needs exactly one '='", lineno, offset + 1)
        left, right = body.split("=")
        lhs = _parse_names(left, lineno, offset, atoms)
        rhs = _parse_names(right, lineno, offset + len(left) + 1, atoms)
        if not lhs or not rhs:
            raise ParseError("relation side is empty", lineno, offset + 1)
        if lhs == rhs:
            raise ParseError("degenerate relation (both sides identical)", lineno, offset + 1)
        relations.append((lhs, rhs))
    if atoms is None:
        raise ParseError("missing 'atoms:' line", 1, 1)
    return Presentation(atoms, tuple(relations))


def render_presentation(p: Presentation) -> str:
    lines = ["atoms: " + " ".join(p.atoms.names)]
    for lhs, rhs in p.relations:
        lines.append(f"rel: {p.atoms.format_word(lhs)} = {p.atoms.format_word(rhs)}")
    return "\n".join(lines) + "\n"


def parse_word(text: str, atoms: AtomTable) -> SignedWord:
    """Parse ``name`` / ``name^-1`` tokens. A lone ``1`` is the identity."""
    tokens = text.split()
    if tokens == ["1"]:
        return ()
    out = []
    for pos, token in enumerate(tokens):
        name, sign = token, 1
        if token.endswith("^-1"):
            name, sign = token[:-3], -1
        if not _NAME.match(name):
            raise ParseError(f"invalid token {token!r}", 1, pos + 1)
        out.append((atoms.index(name), sign))
    return tuple(out)


def free_reduce(w: Iterable[tuple[int, int]]) -> SignedWord:
    stack: list[tuple[int, int]] = []
    for letter in w:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def positive(word: Sequence[int]) -> SignedWord:
    return tuple((i, 1) for i in word)


def inverse(w: Sequence[tuple[int, int]]) -> SignedWord:
    return tuple((i, -s) for i, s in reversed(w))


def fraction_word(num: Sequence[int], den: Sequence[int]) -> SignedWord:
    """Signed word spelling ``num . den^-1``."""
    return positive(num) + inverse(positive(den))


def closing_relations(p: Presentation) -> dict[tuple[int, int], list[int]]:
    """Map each unordered pair ``x < y`` of first letters to the relations joining them."""
    out: dict[tuple[int, int], list[int]] = {}
    for k, (lhs, rhs) in enumerate(p.relations):
        x, y = lhs[0], rhs[0]
        if x != y:
            out.setdefault((min(x, y), max(x, y)), []).append(k)
    return out


def validate(p: Presentation) -> ValidationReport:
    homogeneous = all(len(l) == len(r) for l, r in p.relations)
    quadratic = all(len(l) == 2 and len(r) == 2 for l, r in p.relations)
    closing = closing_relations(p)
    missing, ambiguous = [], []
    for x in range(p.n):
        for y in range(x + 1, p.n):
            count = len(closing.get((x, y), ()))
            if count == 0:
                missing.append((x, y))
            elif count > 1:
                ambiguous.append((x, y))
    return ValidationReport(
        homogeneous=homogeneous,
        quadratic=quadratic,
        complemented=not ambiguous,
        missing_pairs=tuple(missing),
        ambiguous_pairs=tuple(ambiguous),
    )
