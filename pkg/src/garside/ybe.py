"""
Finite set-theoretic solutions of the Yang-Baxter equation.

A solution on ``{0..n-1}`` is stored as two tables: ``sigma[x][y]`` is the
image of ``y`` under the left map of ``x`` and ``gamma[y][x]`` the image of
``x`` under the right map of ``y``, so that ``r(x, y) = (sigma[x][y],
gamma[y][x])``. Files and the public ``r_map`` use 1-based points.
"""

from __future__ import annotations

import dataclasses
import json
from typing import Sequence

from .core import AtomTable, Presentation, validate
from .errors import ExtractionConflict, InconsistentRetract, NotASolution, OutOfRange, ShapeMismatch

Table = tuple[tuple[int, ...], ...]


@dataclasses.dataclass(frozen=True)
class Solution:
    n: int
    sigma: Table
    gamma: Table
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        for label, table in (("sigma", self.sigma), ("gamma", self.gamma)):
            if len(table) != self.n or any(len(row) != self.n for row in table):
                raise ValueError(f"{label} must be an {self.n}x{self.n} table")
            if any(not 0 <= v < self.n for row in table for v in row):
                raise ValueError(f"{label} has a value out of range")

    def r(self, x: int, y: int) -> tuple[int, int]:
        """0-based ``r(x, y)``."""
        return self.sigma[x][y], self.gamma[y][x]

    @property
    def atom_names(self) -> tuple[str, ...]:
        return self.names or tuple(f"x{i + 1}" for i in range(self.n))

    @classmethod
    def from_images(cls, sigma: Sequence[Sequence[int]], gamma: Sequence[Sequence[int]], names=None) -> "Solution":
        """Build from 1-based image tables, one row per point."""
        to0 = lambda rows: tuple(tuple(v - 1 for v in row) for row in rows)
        return cls(len(sigma), to0(sigma), to0(gamma), tuple(names) if names else None)

    @classmethod
    def trivial(cls, n: int, names=None) -> "Solution":
        ident = tuple(tuple(range(n)) for _ in range(n))
        return cls(n, ident, ident, tuple(names) if names else None)

    def to_json(self) -> str:
        doc = {
            "n": self.n,
            "sigma": [[v + 1 for v in row] for row in self.sigma],
            "gamma": [[v + 1 for v in row] for row in self.gamma],
        }
        if self.names:
            doc["atoms"] = list(self.names)
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "Solution":
        doc = json.loads(text)
        sol = cls.from_images(doc["sigma"], doc["gamma"], doc.get("atoms"))
        if sol.n != doc["n"]:
            raise ValueError("'n' does not match the table size")
        return sol


@dataclasses.dataclass(frozen=True)
class SolutionReport:
    braided: bool
    involutive: bool
    nondegenerate: bool
    squarefree: bool
    # per property: 0-based witness tuples (triples, pairs, ("sigma"|"gamma", x), points)
    counterexamples: dict[str, tuple] = dataclasses.field(default_factory=dict)
    checked: dict[str, int] = dataclasses.field(default_factory=dict)

    @property
    def is_solution(self) -> bool:
        return self.braided and self.involutive and self.nondegenerate


def r_map(s: Solution, x: int, y: int) -> tuple[int, int]:
    """1-based ``r(x, y) = (sigma_x(y), gamma_y(x))``."""
    if not (1 <= x <= s.n and 1 <= y <= s.n):
        raise OutOfRange(f"points must lie in 1..{s.n}")
    a, b = s.r(x - 1, y - 1)
    return a + 1, b + 1


def _r12(s, t):
    a, b = s.r(t[0], t[1])
    return a, b, t[2]


def _r23(s, t):
    b, c = s.r(t[1], t[2])
    return t[0], b, c


def check_solution(s: Solution) -> SolutionReport:
    pts = range(s.n)
    bad_braid = tuple(
        (x, y, z) for x in pts for y in pts for z in pts
        if _r12(s, _r23(s, _r12(s, (x, y, z)))) != _r23(s, _r12(s, _r23(s, (x, y, z))))
    )
    bad_inv = tuple((x, y) for x in pts for y in pts if s.r(*s.r(x, y)) != (x, y))
    bad_nd = tuple(
        (label, x)
        for label, table in (("sigma", s.sigma), ("gamma", s.gamma))
        for x in pts
        if sorted(table[x]) != list(pts)
    )
    bad_sf = tuple(x for x in pts if s.r(x, x) != (x, x))
    return SolutionReport(
        braided=not bad_braid,
        involutive=not bad_inv,
        nondegenerate=not bad_nd,
        squarefree=not bad_sf,
        counterexamples={
            k: v for k, v in
            (("braided", bad_braid), ("involutive", bad_inv), ("nondegenerate", bad_nd), ("squarefree", bad_sf))
            if v
        },
        checked={"braided": s.n ** 3, "involutive": s.n ** 2, "nondegenerate": 2 * s.n, "squarefree": s.n},
    )


def _require_solution(s: Solution) -> None:
    report = check_solution(s)
    if not report.is_solution:
        failed = [k for k in ("braided", "involutive", "nondegenerate") if not getattr(report, k)]
        raise NotASolution("not a non-degenerate involutive solution: fails " + ", ".join(failed))


def structure_presentation(s: Solution) -> Presentation:
    """Relations ``x y = sigma_x(y) gamma_y(x)``, one per unordered pair of distinct words."""
    _require_solution(s)
    seen = set()
    relations = []
    for x in range(s.n):
        for y in range(s.n):
            left, right = (x, y), s.r(x, y)
            if left == right:
                continue
            lhs, rhs = min(left, right), max(left, right)
            if (lhs, rhs) not in seen:
                seen.add((lhs, rhs))
                relations.append((lhs, rhs))
    relations.sort()
    return Presentation(AtomTable(s.atom_names), tuple(relations))


def presentation_to_solution(p: Presentation) -> Solution:
    n = p.n
    report = validate(p)
    if not report.quadratic:
        raise ShapeMismatch("every relation side must have length 2")
    if len(p.relations) != n * (n - 1) // 2:
        raise ShapeMismatch(f"expected {n * (n - 1) // 2} relations, found {len(p.relations)}")
    sides = [w for rel in p.relations for w in rel]
    if len(set(sides)) != len(sides):
        raise ShapeMismatch("a length-2 word occurs in more than one relation side")

    sigma: list[list[int | None]] = [[None] * n for _ in range(n)]
    gamma: list[list[int | None]] = [[None] * n for _ in range(n)]

    def assign(x, y, a, b):
        for table, row, col, val in ((sigma, x, y, a), (gamma, y, x, b)):
            if table[row][col] is not None and table[row][col] != val:
                raise ExtractionConflict(f"conflicting values for the pair ({x}, {y})")
            table[row][col] = val

    for (x, y), (z, w) in p.relations:
        assign(x, y, z, w)
        assign(z, w, x, y)
    for x in range(n):
        for y in range(n):
            if sigma[x][y] is None:
                assign(x, y, x, y)
    sol = Solution(n, tuple(map(tuple, sigma)), tuple(map(tuple, gamma)), p.atoms.names)
    try:
        _require_solution(sol)
    except NotASolution as exc:
        raise NotASolution(f"extracted maps are not a solution: {exc}") from None
    return sol


def retract(s: Solution) -> Solution:
    """Quotient by ``x ~ y`` iff ``sigma_x == sigma_y``; classes numbered by first member."""
    _require_solution(s)
    index: dict[tuple[int, ...], int] = {}
    cls = []
    for x in range(s.n):
        cls.append(index.setdefault(s.sigma[x], len(index)))
    m = len(index)
    sigma: list[list[int | None]] = [[None] * m for _ in range(m)]
    gamma: list[list[int | None]] = [[None] * m for _ in range(m)]
    for x in range(s.n):
        for y in range(s.n):
            a, b = s.r(x, y)
            cx, cy = cls[x], cls[y]
            for table, row, col, val in ((sigma, cx, cy, cls[a]), (gamma, cy, cx, cls[b])):
                if table[row][col] is None:
                    table[row][col] = val
                elif table[row][col] != val:
                    raise InconsistentRetract(f"induced map not well defined at classes ({cx}, {cy})")
    names = None
    if s.names:
        firsts = [cls.index(c) for c in range(m)]
        names = tuple(s.names[i] for i in firsts)
    return Solution(m, tuple(map(tuple, sigma)), tuple(map(tuple, gamma)), names)


@dataclasses.dataclass(frozen=True)
class Level:
    m: int

    def __str__(self) -> str:
        return f"level {self.m}"


class Irretractable:
    def __repr__(self) -> str:
        return "Irretractable"

    def __str__(self) -> str:
        return "irretractable"

    def __eq__(self, other) -> bool:
        return isinstance(other, Irretractable)

    def __hash__(self) -> int:
        return hash(Irretractable)


class LevelBudgetExceeded:
    def __init__(self, budget: int):
        self.budget = budget

    def __repr__(self) -> str:
        return f"LevelBudgetExceeded({self.budget})"

    def __str__(self) -> str:
        return f"budget of {self.budget} retractions exceeded"


def mp_level(s: Solution, budget: int = 64):
    """Multipermutation level: ``Level(m)``, ``Irretractable()`` or ``LevelBudgetExceeded``."""
    current = s
    for m in range(budget + 1):
        if current.n == 1:
            return Level(m)
        if m == budget:
            break
        nxt = retract(current)
        if nxt.n == current.n:
            return Irretractable()
        current = nxt
    return LevelBudgetExceeded(budget)
