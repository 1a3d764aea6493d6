"""
The group of fractions of a Gaussian monoid and its partial operation (+).

Elements are right fractions ``num . den^-1``. On positive elements (+) is
the left lcm; on pure inverses and on mixed pairs it is given by witness
rules built from an lcm ``a v b = a u = b v``:

    u^-1 (+) v^-1 = u^-1 a^-1          a^-1 (+) u = a^-1 b = u v^-1

For general fractions the operation is computed on a grid: the letters of
``g`` run along the top, those of ``h`` down the left side, and every cell
is closed by the rule matching the signs of its two edges. Whenever a
witness is missing the result is undefined.

Witnesses are filtered to left-coprime ones (``a ^ b = 1``); without that
filter every left multiple ``c a, c b`` of a witness pair would also
qualify and the value would not be determined.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Sequence, Union

from .core import AtomTable, SignedWord, Word, fraction_word, inverse, parse_word, positive
from .errors import AmbiguousGcd, AmbiguousLcm, BudgetExceeded, OutOfRange, Stuck
from .mbrace import Failure, PropertyReport
from .oracle import (
    CongruenceIndex,
    equal_oracle,
    lcm_oracle,
    left_divides,
    left_gcd_oracle,
    right_divides,
    right_gcd_oracle,
)
from .reversing import DEFAULT_STEPS, ComplementTable, lcm_left, right_reverse


@dataclasses.dataclass(frozen=True, order=True)
class GroupElement:
    """``num . den^-1``; not reduced unless produced by :func:`reduce`."""

    num: Word = ()
    den: Word = ()

    @property
    def is_identity(self) -> bool:
        return not self.num and not self.den

    @property
    def is_positive(self) -> bool:
        return not self.den

    @property
    def is_negative(self) -> bool:
        return not self.num and bool(self.den)

    def letters(self) -> SignedWord:
        return fraction_word(self.num, self.den)

    def format(self, atoms: AtomTable) -> str:
        return f"{atoms.format_word(self.num)} / {atoms.format_word(self.den)}"

    def to_json(self, atoms: AtomTable) -> dict:
        return {"num": [atoms.names[i] for i in self.num], "den": [atoms.names[i] for i in self.den]}

    @classmethod
    def parse(cls, text: str, atoms: AtomTable) -> "GroupElement":
        """Parse ``"<word> / <word>"`` (``1`` for the empty word)."""
        num_text, sep, den_text = text.partition("/")
        num = parse_word(num_text, atoms)
        den = parse_word(den_text, atoms) if sep else ()
        if any(s < 0 for _, s in num + den):
            raise ValueError("fraction sides must be positive words")
        return cls(tuple(i for i, _ in num), tuple(i for i, _ in den))


IDENTITY = GroupElement()


@dataclasses.dataclass(frozen=True)
class Defined:
    value: GroupElement
    # read along the right column and the bottom row: value = g.g_side = h.h_side
    g_side: GroupElement
    h_side: GroupElement
    rule: str
    steps: tuple = ()


@dataclasses.dataclass(frozen=True)
class Undefined:
    reason: str  # "no-witness", "stuck" or "budget"
    detail: tuple = ()


@dataclasses.dataclass(frozen=True)
class Ambiguous:
    candidates: tuple[GroupElement, ...]


OplusOutcome = Union[Defined, Undefined, Ambiguous]


class _Unclosable(Exception):
    def __init__(self, outcome):
        self.outcome = outcome


class FractionGroup:
    """Group of fractions over an oracle index and a right complement table, with memoisation."""

    def __init__(self, idx: CongruenceIndex, ct: ComplementTable, step_budget: int = DEFAULT_STEPS):
        self.idx = idx
        self.ct = ct
        self.step_budget = step_budget
        self._reduce: dict = {}
        self._witness: dict = {}
        self._neg_witness: dict = {}
        self._cells: dict = {}
        self._oplus: dict = {}

    # group structure ----------------------------------------------------

    def rep(self, word: Sequence[int]) -> Word:
        return self.idx.representative(word)

    def reduce(self, a: Sequence[int], c: Sequence[int]) -> GroupElement:
        key = (tuple(a), tuple(c))
        if key not in self._reduce:
            g = right_gcd_oracle(self.idx, a, c)
            a0 = right_divides(self.idx, g, a)
            c0 = right_divides(self.idx, g, c)
            self._reduce[key] = GroupElement(self.rep(a0), self.rep(c0))
        return self._reduce[key]

    def element(self, w: Sequence[tuple[int, int]]) -> GroupElement:
        """The reduced fraction equal to a signed word."""
        u, v, _ = right_reverse(self.ct, w, self.step_budget)
        return self.reduce(u, v)

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        p, q, _ = right_reverse(self.ct, inverse(positive(g.den)) + positive(h.num), self.step_budget)
        return self.reduce(g.num + p, h.den + q)

    @staticmethod
    def inv(g: GroupElement) -> GroupElement:
        return GroupElement(g.den, g.num)

    def equal(self, g: GroupElement, h: GroupElement) -> bool:
        _, p, q, _ = lcm_left(self.ct, g.den, h.den, self.step_budget)
        left, right = g.num + p, h.num + q
        return len(left) == len(right) and equal_oracle(self.idx, left, right)

    # witnesses ------------------------------------------------------------

    def witness_search(self, y: Sequence[int], x: Sequence[int]) -> list[Word]:
        """Left-coprime ``z`` with ``y v z == y x``, over the left divisors of ``y x``."""
        key = (tuple(y), tuple(x))
        if key not in self._witness:
            y, yx = tuple(y), tuple(y) + tuple(x)
            target = self.idx.class_of(yx)
            found = []
            for k in sorted(self.idx.left_divisor_keys(yx)):
                z = self.idx.key_word(k)
                m = lcm_oracle(self.idx, y, z)
                if m is None or self.idx.class_of(m) != target:
                    continue
                if left_gcd_oracle(self.idx, y, z) == ():
                    found.append(z)
            self._witness[key] = found
        return self._witness[key]

    def negative_witnesses(self, u: Sequence[int], v: Sequence[int]) -> list[tuple[Word, Word, Word]]:
        """Left-coprime ``(a, b, m)`` with ``a u == b v == m == a v b``, within the index bound."""
        key = (tuple(u), tuple(v))
        if key not in self._neg_witness:
            u, v = key
            idx = self.idx
            found = []
            for length in range(max(len(u), len(v)), idx.max_length + 1):
                common = set(idx.right_multiple_keys(u, length).tolist())
                common &= set(idx.right_multiple_keys(v, length).tolist())
                for code in sorted(common):
                    m = idx.decode(code, length)
                    a, b = right_divides(idx, u, m), right_divides(idx, v, m)
                    if left_gcd_oracle(idx, a, b) != ():
                        continue
                    lcm = lcm_oracle(idx, a, b)
                    if lcm is not None and equal_oracle(idx, lcm, m):
                        found.append((self.rep(a), self.rep(b), m))
            self._neg_witness[key] = found
        return self._neg_witness[key]

    def _distinct(self, values: list[GroupElement]) -> list[GroupElement]:
        out: list[GroupElement] = []
        for val in values:
            if not any(self.equal(val, seen) for seen in out):
                out.append(val)
        return out

    # local rules ------------------------------------------------------------

    def _mixed(self, x: Word, y: Word):
        """``x (+) y^-1`` for positive words: returns ``(value, b, v)`` or raises _Unclosable."""
        choices = []
        for b in self.witness_search(y, x):
            v = left_divides(self.idx, b, y + x)
            choices.append((self.reduce(x, v), b, v))
        if not choices:
            raise _Unclosable(Undefined("no-witness", ("mixed", y, x)))
        distinct = self._distinct([c[0] for c in choices])
        if len(distinct) > 1:
            raise _Unclosable(Ambiguous(tuple(distinct)))
        return choices[0]

    def _negative(self, u: Word, v: Word):
        """``u^-1 (+) v^-1``: returns ``(value, a, b)`` or raises _Unclosable."""
        choices = [(self.reduce((), m), a, b) for a, b, m in self.negative_witnesses(u, v)]
        if not choices:
            raise _Unclosable(Undefined("no-witness", ("negative", u, v)))
        distinct = self._distinct([c[0] for c in choices])
        if len(distinct) > 1:
            raise _Unclosable(Ambiguous(tuple(distinct)))
        return choices[0]

    def close_cell(self, s: tuple[int, int], t: tuple[int, int]) -> tuple[SignedWord, SignedWord]:
        """Edges ``(s', t')`` closing the cell with top ``s`` and left ``t``: ``s s' = t t' = s (+) t``."""
        key = (s, t)
        if key not in self._cells:
            self._cells[key] = self._close_cell(s, t)
        result = self._cells[key]
        if isinstance(result, _Unclosable):
            raise result
        return result

    def _close_cell(self, s, t):
        (x, sx), (y, sy) = s, t
        try:
            if s == t:
                return (), ()
            if sx > 0 and sy > 0:
                entry = self.ct.entry(x, y)
                if entry is None:
                    return _Unclosable(Undefined("stuck", (x, y)))
                return positive(entry[0]), positive(entry[1])
            if sx > 0 > sy:
                _, b, v = self._mixed((x,), (y,))
                return inverse(positive(v)), positive(b)
            if sy > 0 > sx:
                _, b, v = self._mixed((y,), (x,))
                return positive(b), inverse(positive(v))
            _, a, b = self._negative((x,), (y,))
            return inverse(positive(a)), inverse(positive(b))
        except _Unclosable as exc:
            return exc
        except (OutOfRange, AmbiguousLcm, AmbiguousGcd) as exc:
            return _Unclosable(Undefined("budget", (str(exc),)))

    def grid(self, g: GroupElement, h: GroupElement, budget: int | None = None) -> OplusOutcome:
        """Run the grid on the letters of ``g`` and ``h`` exactly as written, reduced or not."""
        budget = self.step_budget if budget is None else budget
        try:
            return self._grid(g, h, budget)
        except BudgetExceeded as exc:
            return Undefined("budget", (str(exc),))
        except Stuck as exc:
            return Undefined("stuck", (exc.x, exc.y))

    def _grid(self, g: GroupElement, h: GroupElement, budget: int) -> OplusOutcome:
        # formal word: (letter, +1/-1) where -1 marks a top edge read backwards
        word = [(s, -1) for s in reversed(g.letters())] + [(t, 1) for t in h.letters()]
        steps = []
        i = 0
        while i < len(word) - 1:
            (s, fs), (t, ft) = word[i], word[i + 1]
            if not (fs < 0 < ft):
                i += 1
                continue
            if len(steps) >= budget:
                return Undefined("budget", (f"grid exceeded {budget} cells",))
            try:
                s2, t2 = self.close_cell(s, t)
            except _Unclosable as exc:
                return exc.outcome
            word[i : i + 2] = [(a, 1) for a in s2] + [(a, -1) for a in reversed(t2)]
            steps.append((i, s, t, s2, t2))
            i = max(i - 1, 0)
        right_col = tuple(a for a, f in word if f > 0)
        bottom = tuple(a for a, f in reversed(word) if f < 0)
        g_side, h_side = self.element(right_col), self.element(bottom)
        value = self.element(g.letters() + right_col)
        return Defined(value, g_side, h_side, "grid", tuple(steps))

    # the partial operation ------------------------------------------------------

    def oplus(self, g: GroupElement, h: GroupElement, budget: int | None = None) -> OplusOutcome:
        """``g (+) h`` on the reduced forms of both arguments."""
        budget = self.step_budget if budget is None else budget
        g, h = self.reduce(g.num, g.den), self.reduce(h.num, h.den)
        key = (g, h, budget)
        if key not in self._oplus:
            try:
                self._oplus[key] = self._oplus_uncached(g, h, budget)
            except BudgetExceeded as exc:
                self._oplus[key] = Undefined("budget", (str(exc),))
            except Stuck as exc:
                self._oplus[key] = Undefined("stuck", (exc.x, exc.y))
        return self._oplus[key]

    def _oplus_uncached(self, g: GroupElement, h: GroupElement, budget: int) -> OplusOutcome:
        # arguments are reduced, so group equality is equality of fields
        if h == IDENTITY:
            return Defined(g, IDENTITY, g, "identity")
        if g == IDENTITY:
            return Defined(h, h, IDENTITY, "identity")
        if g == h:
            return Defined(g, IDENTITY, IDENTITY, "equal")
        try:
            if g.is_positive and h.is_positive:
                m, u, v, _ = lcm_left(self.ct, g.num, h.num, self.step_budget)
                return Defined(self.reduce(m, ()), self.reduce(u, ()), self.reduce(v, ()), "lcm")
            if g.is_negative and h.is_negative:
                value, a, b = self._negative(g.den, h.den)
                return Defined(value, self.reduce((), a), self.reduce((), b), "negative")
            if g.is_positive and h.is_negative:
                value, b, v = self._mixed(g.num, h.den)
                return Defined(value, self.reduce((), v), self.reduce(b, ()), "mixed")
            if g.is_negative and h.is_positive:
                value, b, v = self._mixed(h.num, g.den)
                return Defined(value, self.reduce(b, ()), self.reduce((), v), "mixed")
        except _Unclosable as exc:
            return exc.outcome
        except (OutOfRange, AmbiguousLcm, AmbiguousGcd) as exc:
            return Undefined("budget", (str(exc),))
        return self._grid(g, h, budget)


# module-level entry points --------------------------------------------------


def reduce(idx: CongruenceIndex, a: Sequence[int], c: Sequence[int]) -> GroupElement:
    g = right_gcd_oracle(idx, a, c)
    a0, c0 = right_divides(idx, g, a), right_divides(idx, g, c)
    return GroupElement(idx.representative(a0), idx.representative(c0))


def group_equal(idx: CongruenceIndex, ct: ComplementTable, g: GroupElement, h: GroupElement) -> bool:
    return FractionGroup(idx, ct).equal(g, h)


def mul(idx: CongruenceIndex, ct: ComplementTable, g: GroupElement, h: GroupElement) -> GroupElement:
    return FractionGroup(idx, ct).mul(g, h)


def inv(g: GroupElement) -> GroupElement:
    return FractionGroup.inv(g)


def witness_search(idx: CongruenceIndex, y: Sequence[int], x: Sequence[int]) -> list[Word]:
    # the table is not consulted by the search itself
    return FractionGroup(idx, None).witness_search(y, x)


def oplus_partial(
    idx: CongruenceIndex, ct: ComplementTable, g: GroupElement, h: GroupElement, budget: int = DEFAULT_STEPS
) -> OplusOutcome:
    return FractionGroup(idx, ct, budget).oplus(g, h)


# axiom sweeps ---------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class SampleSpec:
    """Reduced fractions with ``|num|, |den| <= bound``; separate bounds for pairs and triples."""

    pair_length: int = 2
    triple_length: int = 1
    pad_atoms: bool = True


def sample_elements(fg: FractionGroup, bound: int) -> list[GroupElement]:
    idx = fg.idx
    words = [w for k in range(bound + 1) for w in idx.classes(k)]
    seen = set()
    out = []
    for num, den in itertools.product(words, repeat=2):
        g = fg.reduce(num, den)
        if g not in seen:
            seen.add(g)
            out.append(g)
    out.sort(key=lambda g: (len(g.num) + len(g.den), g.num, g.den))
    return out


def _tally(report: PropertyReport, outcome) -> None:
    kind = "ambiguous" if isinstance(outcome, Ambiguous) else f"undefined:{outcome.reason}"
    report.notes[kind] = report.notes.get(kind, 0) + 1
    report.skipped += 1


def check_partial_axioms(
    idx: CongruenceIndex,
    ct: ComplementTable,
    sample_spec: SampleSpec = SampleSpec(),
    budget: int = DEFAULT_STEPS,
) -> list[PropertyReport]:
    fg = FractionGroup(idx, ct, budget)
    pairs = sample_elements(fg, sample_spec.pair_length)
    triples = sample_elements(fg, sample_spec.triple_length)
    pair_universe = f"reduced fractions with |num|,|den| <= {sample_spec.pair_length} ({len(pairs)} elements)"
    triple_universe = f"reduced fractions with |num|,|den| <= {sample_spec.triple_length} ({len(triples)} elements)"

    comm = PropertyReport("partial commutativity", pair_universe)
    for g, h in itertools.product(pairs, repeat=2):
        a, b = fg.oplus(g, h), fg.oplus(h, g)
        bad = next((o for o in (a, b) if not isinstance(o, Defined)), None)
        if bad is not None:
            _tally(comm, bad)
            continue
        comm.tested += 1
        if not fg.equal(a.value, b.value):
            comm.failures.append(Failure((g, h), a.value, b.value))

    well = PropertyReport("well-definedness under padding", pair_universe)
    pads = [(x,) for x in range(idx.n)] if sample_spec.pad_atoms else []
    for g, h, pad in itertools.product(pairs, pairs, pads):
        padded = fg.reduce(g.num + pad, g.den + pad)
        a, b = fg.oplus(g, h), fg.oplus(padded, h)
        bad = next((o for o in (a, b) if not isinstance(o, Defined)), None)
        if bad is not None:
            _tally(well, bad)
            continue
        well.tested += 1
        if not fg.equal(a.value, b.value):
            well.failures.append(Failure((g, h, GroupElement(pad, ())), a.value, b.value))

    assoc = PropertyReport("partial associativity", triple_universe)
    one_sided = 0
    for g, h, k in itertools.product(triples, repeat=3):
        gh, hk = fg.oplus(g, h), fg.oplus(h, k)
        left = fg.oplus(gh.value, k) if isinstance(gh, Defined) else gh
        right = fg.oplus(g, hk.value) if isinstance(hk, Defined) else hk
        if isinstance(left, Defined) != isinstance(right, Defined):
            one_sided += 1
        bad = next((o for o in (left, right) if not isinstance(o, Defined)), None)
        if bad is not None:
            _tally(assoc, bad)
            continue
        assoc.tested += 1
        if not fg.equal(left.value, right.value):
            assoc.failures.append(Failure((g, h, k), left.value, right.value))
    assoc.notes["one-sided"] = one_sided

    dist = PropertyReport("partial left distributivity", triple_universe)
    for w, g, h in itertools.product(triples, repeat=3):
        inner = fg.oplus(g, h)
        outer = fg.oplus(fg.mul(w, g), fg.mul(w, h))
        bad = next((o for o in (inner, outer) if not isinstance(o, Defined)), None)
        if bad is not None:
            _tally(dist, bad)
            continue
        dist.tested += 1
        lhs = fg.mul(w, inner.value)
        if not fg.equal(lhs, outer.value):
            dist.failures.append(Failure((w, g, h), lhs, outer.value))

    return [comm, well, assoc, dist]


def grid_padding_report(fg: FractionGroup, elements: Sequence[GroupElement]) -> PropertyReport:
    """
    Compare ``g (+) h`` with the grid run on the unreduced letters of ``g a a^-1``.

    This is a diagnostic of the grid itself, outside the operation on the
    group: a padded top row may meet ``h`` letter for letter, and the
    ``x (+) x = x`` cell then makes the grid read ``g a a^-1`` as a multiple of ``h``.
    """
    report = PropertyReport("grid on unreduced padding", f"{len(elements)} elements, padded by one atom")
    for g, h, x in itertools.product(elements, elements, range(fg.idx.n)):
        padded = GroupElement(g.num + (x,), g.den + (x,))
        a, b = fg.oplus(g, h), fg.grid(padded, h)
        bad = next((o for o in (a, b) if not isinstance(o, Defined)), None)
        if bad is not None:
            _tally(report, bad)
            continue
        report.tested += 1
        if not fg.equal(a.value, b.value):
            report.failures.append(Failure((g, h, GroupElement((x,), ())), a.value, b.value))
    return report
