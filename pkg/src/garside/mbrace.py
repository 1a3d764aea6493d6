"""
The M-brace carried by an lcm-monoid.

``a (+) b`` is the least common multiple for left divisibility, computed by
right reversing. The ``check_*`` sweeps enumerate every word up to a length
bound and decide each equality with the congruence oracle, never with
reversing, so they also serve as a cross-check of the reversing engine.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Any, Callable, Iterator, Sequence

from .core import AtomTable, Presentation, Word
from .errors import Stuck
from .oracle import CongruenceIndex, equal_oracle, invertibles
from .reversing import DEFAULT_STEPS, ComplementTable, lcm_left, lcm_right


@dataclasses.dataclass(frozen=True)
class Failure:
    inputs: tuple[Any, ...]
    lhs: Any
    rhs: Any


@dataclasses.dataclass
class PropertyReport:
    property: str
    universe: str
    tested: int = 0
    skipped: int = 0
    failures: list[Failure] = dataclasses.field(default_factory=list)
    notes: dict[str, int] = dataclasses.field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, fmt: Callable[[Any], str]) -> dict:
        out = {
            "property": self.property,
            "universe": self.universe,
            "tested": self.tested,
            "skipped": self.skipped,
            "passed": self.passed,
            "failures": [
                {"inputs": [fmt(x) for x in f.inputs], "lhs": fmt(f.lhs), "rhs": fmt(f.rhs)}
                for f in self.failures
            ],
        }
        if self.notes:
            out["notes"] = dict(self.notes)
        return out


def words_up_to(n: int, max_length: int) -> list[Word]:
    """All words of length <= max_length, shortest first, then lexicographic."""
    out: list[Word] = []
    for length in range(max_length + 1):
        out.extend(itertools.product(range(n), repeat=length))
    return out


def same(idx: CongruenceIndex, u: Word, v: Word) -> bool:
    """Oracle equality; words of different length never agree under a graded presentation."""
    return len(u) == len(v) and equal_oracle(idx, u, v)


def oplus(ct: ComplementTable, a: Sequence[int], b: Sequence[int], step_budget: int = DEFAULT_STEPS) -> Word:
    return lcm_left(ct, a, b, step_budget)[0]


def _cached(op: Callable[[Word, Word], Word]) -> Callable[[Word, Word], Word]:
    memo: dict[tuple[Word, Word], Word | Stuck] = {}

    def call(a: Word, b: Word) -> Word:
        key = (a, b)
        if key not in memo:
            try:
                memo[key] = op(a, b)
            except Stuck as exc:
                memo[key] = exc
        result = memo[key]
        if isinstance(result, Stuck):
            raise result
        return result

    return call


def _sweep(report: PropertyReport, tuples: Iterator[tuple], evaluate, idx: CongruenceIndex) -> PropertyReport:
    for args in tuples:
        try:
            lhs, rhs = evaluate(*args)
        except Stuck:
            report.skipped += 1
            continue
        report.tested += 1
        if not same(idx, lhs, rhs):
            report.failures.append(Failure(tuple(args), lhs, rhs))
    return report


def _monoid_reports(words, plus, idx, label: str, universe: str) -> list[PropertyReport]:
    pairs = lambda: itertools.product(words, repeat=2)
    triples = lambda: itertools.product(words, repeat=3)
    return [
        _sweep(PropertyReport(f"{label} commutativity", universe), pairs(),
               lambda a, b: (plus(a, b), plus(b, a)), idx),
        _sweep(PropertyReport(f"{label} associativity", universe), triples(),
               lambda a, b, c: (plus(plus(a, b), c), plus(a, plus(b, c))), idx),
        _sweep(PropertyReport(f"{label} identity", universe), ((a,) for a in words),
               lambda a: (plus(a, ()), a), idx),
        _sweep(PropertyReport(f"{label} idempotence", universe), ((a,) for a in words),
               lambda a: (plus(a, a), a), idx),
    ]


def check_left_mbrace(
    p: Presentation, idx: CongruenceIndex, ct: ComplementTable, max_length: int,
    step_budget: int = DEFAULT_STEPS,
) -> list[PropertyReport]:
    words = words_up_to(p.n, max_length)
    universe = f"words of length <= {max_length} ({len(words)} words)"
    plus = _cached(lambda a, b: lcm_left(ct, a, b, step_budget)[0])
    reports = _monoid_reports(words, plus, idx, "left lcm", universe)
    dist = _sweep(
        PropertyReport("left distributivity", universe),
        itertools.product(words, repeat=3),
        lambda a, b, c: (a + plus(b, c), plus(a + b, a + c)),
        idx,
    )
    reports.insert(2, dist)
    return reports


def check_right_mbrace(
    p: Presentation, idx: CongruenceIndex, ct_left: ComplementTable, max_length: int,
    step_budget: int = DEFAULT_STEPS,
) -> list[PropertyReport]:
    words = words_up_to(p.n, max_length)
    universe = f"words of length <= {max_length} ({len(words)} words)"
    plus = _cached(lambda a, b: lcm_right(ct_left, a, b, step_budget)[0])
    reports = _monoid_reports(words, plus, idx, "right lcm", universe)
    dist = _sweep(
        PropertyReport("right distributivity", universe),
        itertools.product(words, repeat=3),
        lambda a, b, c: (plus(a, b) + c, plus(a + c, b + c)),
        idx,
    )
    reports.insert(2, dist)
    return reports


def right_distributivity_witness(
    p: Presentation, idx: CongruenceIndex, ct: ComplementTable, max_length: int,
    step_budget: int = DEFAULT_STEPS,
):
    """First ``(a, b, c, lhs, rhs)`` with ``(a (+) b) c != a c (+) b c``, or ``None``."""
    words = words_up_to(p.n, max_length)
    plus = _cached(lambda a, b: lcm_left(ct, a, b, step_budget)[0])
    for a, b, c in itertools.product(words, repeat=3):
        try:
            lhs, rhs = plus(a, b) + c, plus(a + c, b + c)
        except Stuck:
            continue
        if not same(idx, lhs, rhs):
            return a, b, c, lhs, rhs
    return None


def invertible_uniqueness(idx: CongruenceIndex) -> PropertyReport:
    units = invertibles(idx)
    report = PropertyReport("unique invertible", f"classes of length <= {idx.max_length}")
    report.tested = sum(idx.class_counts)
    report.failures = [Failure((u,), u, ()) for u in units if u != ()]
    return report


def word_formatter(atoms: AtomTable) -> Callable[[Any], str]:
    return lambda w: atoms.format_word(w)
