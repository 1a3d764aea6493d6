"""Slow reference computations used to derive and cross-check expected values."""

from __future__ import annotations

import itertools
from collections import deque


def closure(word, relations):
    """Every word reachable from ``word`` by single relation substitutions (breadth first)."""
    word = tuple(word)
    seen = {word}
    queue = deque([word])
    rules = [(l, r) for l, r in relations] + [(r, l) for l, r in relations]
    while queue:
        w = queue.popleft()
        for lhs, rhs in rules:
            k = len(lhs)
            for i in range(len(w) - k + 1):
                if w[i:i + k] == lhs:
                    nxt = w[:i] + rhs + w[i + k:]
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
    return frozenset(seen)


def equal(u, v, relations):
    return tuple(v) in closure(u, relations)


def left_divides(a, g, relations):
    a = tuple(a)
    return any(w[:len(a)] == a for w in closure(g, relations))


def lcm(a, b, n, relations, bound):
    """Shortest common right multiple class of ``a`` and ``b`` by brute enumeration."""
    for length in range(max(len(a), len(b)), bound + 1):
        found = set()
        for w in itertools.product(range(n), repeat=length):
            if w[:len(a)] == tuple(a):
                cls = closure(w, relations)
                if any(x[:len(b)] == tuple(b) for x in cls):
                    found.add(min(cls))
        if found:
            return sorted(found)
    return []
