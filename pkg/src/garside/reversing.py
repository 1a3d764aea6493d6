"""
Word reversing over complemented presentations.

Right reversing rewrites a subword ``x^-1 y`` into ``u v^-1`` where
``x u = y v`` is the unique relation whose sides start with ``x`` and ``y``
(and ``x^-1 x`` into the empty word). It stops once the word has the shape
``positive . negative``. Left reversing is the mirror image: ``x y^-1``
becomes ``u^-1 v`` for the relation ``u x = v y``.

Rewrites always act on the leftmost candidate, so traces are reproducible.
"""

from __future__ import annotations

import dataclasses
from types import MappingProxyType
from typing import Mapping, NamedTuple, Sequence

from .core import Presentation, SignedWord, Word, inverse, positive
from .errors import AmbiguousPair, BudgetExceeded, CubeUnverified, Stuck
from .oracle import CongruenceIndex, equal_oracle

DEFAULT_STEPS = 10_000
RIGHT, LEFT = "right", "left"


class Step(NamedTuple):
    position: int
    x: int
    y: int
    relation: int  # -1 for the trivial rule x^-1 x -> 1
    u: Word
    v: Word


@dataclasses.dataclass(frozen=True)
class ComplementTable:
    presentation: Presentation
    direction: str
    # (x, y) -> (u, v, relation index): x.u = y.v (right) or u.x = v.y (left)
    entries: Mapping[tuple[int, int], tuple[Word, Word, int]]
    missing: tuple[tuple[int, int], ...]
    ambiguous: tuple[tuple[int, int], ...] = ()
    cube_verified: bool = False

    @property
    def names(self) -> tuple[str, ...]:
        return self.presentation.atoms.names

    @property
    def complete(self) -> bool:
        return not self.missing and not self.ambiguous

    def entry(self, x: int, y: int) -> tuple[Word, Word, int] | None:
        if x == y:
            return (), (), -1
        return self.entries.get((x, y))


def build_complement_table(
    p: Presentation, direction: str = RIGHT, allow_ambiguous: bool = False
) -> ComplementTable:
    """
    Collect, for every ordered pair of distinct atoms, the relation closing it.

    With ``allow_ambiguous`` the first closing relation wins and the pair is
    listed in ``ambiguous``; otherwise an ambiguous pair raises.
    """
    if direction not in (RIGHT, LEFT):
        raise ValueError(f"unknown direction {direction!r}")
    found: dict[tuple[int, int], list[int]] = {}
    entries: dict[tuple[int, int], tuple[Word, Word, int]] = {}
    for k, (lhs, rhs) in enumerate(p.relations):
        if direction == RIGHT:
            x, y, u, v = lhs[0], rhs[0], lhs[1:], rhs[1:]
        else:
            x, y, u, v = lhs[-1], rhs[-1], lhs[:-1], rhs[:-1]
        if x == y:
            continue
        found.setdefault((min(x, y), max(x, y)), []).append(k)
        if (x, y) not in entries:
            entries[(x, y)] = (u, v, k)
            entries[(y, x)] = (v, u, k)
    ambiguous = tuple(sorted(pair for pair, ks in found.items() if len(ks) > 1))
    if ambiguous and not allow_ambiguous:
        x, y = ambiguous[0]
        raise AmbiguousPair(x, y, tuple(found[(x, y)]))
    missing = tuple((x, y) for x in range(p.n) for y in range(x + 1, p.n) if (x, y) not in found)
    return ComplementTable(p, direction, MappingProxyType(entries), missing, ambiguous)


@dataclasses.dataclass(frozen=True)
class ReversingTrace:
    direction: str
    names: tuple[str, ...]
    initial: SignedWord
    steps: tuple[Step, ...]
    final: SignedWord
    # (position, x, y) of the pair that could not be closed
    blocked: tuple[int, int, int] | None = None


def _rewrite(direction: str, u: Word, v: Word) -> list[tuple[int, int]]:
    if direction == RIGHT:
        return list(positive(u) + inverse(positive(v)))
    return list(inverse(positive(u)) + positive(v))


def _is_candidate(direction: str, a: tuple[int, int], b: tuple[int, int]) -> bool:
    if direction == RIGHT:
        return a[1] < 0 < b[1]
    return b[1] < 0 < a[1]


def reverse(ct: ComplementTable, w: Sequence[tuple[int, int]], step_budget: int = DEFAULT_STEPS):
    """
    Reverse ``w`` in the direction of ``ct``.

    Returns ``(u, v, trace)``: for right reversing the final word is
    ``u v^-1``; for left reversing it is ``u^-1 v``.
    """
    direction = ct.direction
    word = list(w)
    steps: list[Step] = []
    i = 0
    while i < len(word) - 1:
        a, b = word[i], word[i + 1]
        if not _is_candidate(direction, a, b):
            i += 1
            continue
        x, y = a[0], b[0]
        entry = ct.entry(x, y)
        if entry is None:
            trace = ReversingTrace(direction, ct.names, tuple(w), tuple(steps), tuple(word), (i, x, y))
            raise Stuck(x, y, trace, ct.names)
        if len(steps) >= step_budget:
            trace = ReversingTrace(direction, ct.names, tuple(w), tuple(steps), tuple(word))
            raise BudgetExceeded(f"reversing exceeded {step_budget} steps", trace)
        u, v, rel = entry
        word[i : i + 2] = _rewrite(direction, u, v)
        steps.append(Step(i, x, y, rel, u, v))
        i = max(i - 1, 0)
    final = tuple(word)
    trace = ReversingTrace(direction, ct.names, tuple(w), tuple(steps), final)
    if direction == RIGHT:
        pos = tuple(a for a, s in final if s > 0)
        neg = tuple(a for a, s in reversed(final) if s < 0)
        return pos, neg, trace
    neg = tuple(a for a, s in reversed(final) if s < 0)
    pos = tuple(a for a, s in final if s > 0)
    return neg, pos, trace


def right_reverse(ct: ComplementTable, w, step_budget: int = DEFAULT_STEPS):
    if ct.direction != RIGHT:
        raise ValueError("right reversing needs a right complement table")
    return reverse(ct, w, step_budget)


def left_reverse(ct: ComplementTable, w, step_budget: int = DEFAULT_STEPS):
    if ct.direction != LEFT:
        raise ValueError("left reversing needs a left complement table")
    return reverse(ct, w, step_budget)


def replay(ct: ComplementTable, trace: ReversingTrace) -> SignedWord:
    """Re-apply the recorded steps to ``trace.initial``."""
    word = list(trace.initial)
    for step in trace.steps:
        a, b = word[step.position], word[step.position + 1]
        if (a[0], b[0]) != (step.x, step.y) or not _is_candidate(trace.direction, a, b):
            raise ValueError(f"step {step} does not match the word")
        if ct.entry(step.x, step.y) != (step.u, step.v, step.relation):
            raise ValueError(f"step {step} disagrees with the complement table")
        word[step.position : step.position + 2] = _rewrite(trace.direction, step.u, step.v)
    return tuple(word)


def lcm_left(ct: ComplementTable, a: Sequence[int], b: Sequence[int], step_budget: int = DEFAULT_STEPS):
    """Left-divisibility lcm: returns ``(m, u, v, trace)`` with ``m = a.u = b.v``."""
    a, b = tuple(a), tuple(b)
    u, v, trace = right_reverse(ct, inverse(positive(a)) + positive(b), step_budget)
    return a + u, u, v, trace


def lcm_right(ct: ComplementTable, a: Sequence[int], b: Sequence[int], step_budget: int = DEFAULT_STEPS):
    """Right-divisibility lcm: returns ``(m, u, v, trace)`` with ``m = u.a = v.b``."""
    a, b = tuple(a), tuple(b)
    u, v, trace = left_reverse(ct, positive(a) + inverse(positive(b)), step_budget)
    return u + a, u, v, trace


def equal_reversing(ct: ComplementTable, u: Sequence[int], v: Sequence[int], step_budget: int = DEFAULT_STEPS) -> bool:
    if not ct.cube_verified:
        raise CubeUnverified("run cube_check on this table first")
    if ct.direction == RIGHT:
        p, q, _ = right_reverse(ct, inverse(positive(u)) + positive(v), step_budget)
    else:
        p, q, _ = left_reverse(ct, positive(u) + inverse(positive(v)), step_budget)
    return p == () and q == ()


@dataclasses.dataclass(frozen=True)
class CubeReport:
    tested: int
    skipped: int
    failures: tuple[tuple[tuple[int, int, int], Word, Word], ...]
    table: ComplementTable

    @property
    def passed(self) -> bool:
        return not self.failures


def _same(idx: CongruenceIndex, u: Word, v: Word) -> bool:
    # length-preserving relations: different lengths are never equal
    return len(u) == len(v) and equal_oracle(idx, u, v)


def cube_check(ct: ComplementTable, idx: CongruenceIndex, step_budget: int = DEFAULT_STEPS) -> CubeReport:
    """
    Compare both association orders of the triple lcm for every atom triple.

    Triples where reversing gets stuck are skipped. The returned report
    carries a copy of the table marked verified when no triple fails.
    """
    lcm = lcm_left if ct.direction == RIGHT else lcm_right
    n = ct.presentation.n
    tested = skipped = 0
    failures = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                try:
                    lhs = lcm(ct, lcm(ct, (x,), (y,), step_budget)[0], (z,), step_budget)[0]
                    rhs = lcm(ct, (x,), lcm(ct, (y,), (z,), step_budget)[0], step_budget)[0]
                except Stuck:
                    skipped += 1
                    continue
                tested += 1
                if not _same(idx, lhs, rhs):
                    failures.append(((x, y, z), lhs, rhs))
    verified = dataclasses.replace(ct, cube_verified=not failures)
    return CubeReport(tested, skipped, tuple(failures), verified)


# DOT export -----------------------------------------------------------------


def export_dot(trace: ReversingTrace) -> str:
    """
    Render the reversing diagram of ``trace`` as a DOT digraph.

    Edges follow the monoid orientation of each atom; letters that are read
    with exponent -1 in the word are dashed. Identified vertices (from the
    ``x^-1 x`` rule) are joined by dotted undirected arcs, and the pair where
    reversing got stuck is drawn in red.
    """
    right = trace.direction == RIGHT
    pos_dir, neg_dir = ((1, 0), (0, 1)) if right else ((0, 1), (1, 0))
    positions: list[tuple[int, int]] = []
    edges: list[list] = []  # [tail, head, atom, dashed, red]
    dotted: list[tuple[int, int]] = []

    def vertex(pos):
        positions.append(pos)
        return len(positions) - 1

    def shifted(v, d, k=1):
        r, c = positions[v]
        return (r + k * d[0], c + k * d[1])

    def edge(tail, head, atom, sign):
        edges.append([tail, head, atom, sign < 0, False])
        return len(edges) - 1

    # letters of the current word: (atom, sign, edge id)
    letters = []
    here = vertex((0, 0))
    for atom, sign in trace.initial:
        if sign > 0:
            nxt = vertex(shifted(here, pos_dir))
            letters.append((atom, sign, edge(here, nxt, atom, sign)))
        else:
            nxt = vertex(shifted(here, neg_dir, -1))
            letters.append((atom, sign, edge(nxt, here, atom, sign)))
        here = nxt

    def path(start, atoms, d, end=None):
        """Chain of edges from ``start`` along direction ``d``; returns edge tails/heads."""
        verts = [start]
        for j in range(1, len(atoms) + 1):
            if j == len(atoms) and end is not None:
                verts.append(end)
            else:
                verts.append(vertex(shifted(start, d, j)))
        return verts

    for pos, _, _, _, u, v in trace.steps:
        (_, _, e1), (_, _, e2) = letters[pos], letters[pos + 1]
        if right:
            p_vert, q_vert = edges[e1][1], edges[e2][1]
            first_dir, second_dir = pos_dir, neg_dir
        else:
            p_vert, q_vert = edges[e1][0], edges[e2][0]
            first_dir, second_dir = neg_dir, pos_dir
        k, m = len(u), len(v)
        if k and m:
            if right:
                corner = vertex(shifted(p_vert, pos_dir, k))
            else:
                corner = vertex(shifted(p_vert, neg_dir, -k))
        elif k:
            corner = q_vert
        elif m:
            corner = p_vert
        else:
            corner = p_vert
            if p_vert != q_vert:
                dotted.append((p_vert, q_vert))
        new = []
        if right:
            # u runs down from P to the corner, v runs across from Q to the corner
            up = path(p_vert, u, first_dir, corner)
            vp = path(q_vert, v, second_dir, corner)
            new += [(a, 1, edge(up[j], up[j + 1], a, 1)) for j, a in enumerate(u)]
            v_edges = [(a, -1, edge(vp[j], vp[j + 1], a, -1)) for j, a in enumerate(v)]
            new += list(reversed(v_edges))
        else:
            # u runs from the corner to A, v from the corner to B
            up = path(corner, u, first_dir, p_vert) if k else [p_vert]
            vp = path(corner, v, second_dir, q_vert) if m else [q_vert]
            u_edges = [(a, -1, edge(up[j], up[j + 1], a, -1)) for j, a in enumerate(u)]
            new += list(reversed(u_edges))
            new += [(a, 1, edge(vp[j], vp[j + 1], a, 1)) for j, a in enumerate(v)]
        letters[pos : pos + 2] = new

    red_nodes = set()
    if trace.blocked is not None:
        pos = trace.blocked[0]
        for _, _, e in letters[pos : pos + 2]:
            edges[e][4] = True
        a, b = edges[letters[pos][2]], edges[letters[pos + 1][2]]
        red_nodes.add(a[0] if right else a[1])
        red_nodes.add(b[0] if right else b[1])

    r0 = min(r for r, _ in positions)
    c0 = min(c for _, c in positions)
    ids, used = [], {}
    for r, c in positions:
        base = f"n_{r - r0}_{c - c0}"
        used[base] = used.get(base, 0) + 1
        ids.append(base if used[base] == 1 else f"{base}_{used[base]}")

    lines = ["digraph reversing {", "  rankdir=LR;", "  node [shape=point];"]
    for v, (r, c) in enumerate(positions):
        attrs = [f'pos="{c - c0},{r0 - r}!"']
        if v in red_nodes:
            attrs.append("color=red")
        lines.append(f"  {ids[v]} [{', '.join(attrs)}];")
    for tail, head, atom, dashed, red in edges:
        attrs = [f'label="{trace.names[atom]}"']
        if dashed:
            attrs.append("style=dashed")
        if red:
            attrs.append("color=red")
        lines.append(f"  {ids[tail]} -> {ids[head]} [{', '.join(attrs)}];")
    for a, b in dotted:
        lines.append(f"  {ids[a]} -> {ids[b]} [style=dotted, dir=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
