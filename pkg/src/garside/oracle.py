"""
Brute-force ground truth for homogeneous presentations.

Every relation preserves length, so the congruence splits into finite
pieces, one per length. For each length ``l <= max_length`` all ``n**l``
words are encoded as base-``n`` integers (first letter most significant, so
integer order is lexicographic order) and the graph of single relation
substitutions is split into connected components. The representative of a
class is its least code, i.e. its lexicographically least word.

Nothing here uses word reversing; this module is the independent check
against which the reversing engine is validated.
"""

from __future__ import annotations

import dataclasses
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .core import Presentation, Word, validate
from .errors import AmbiguousGcd, AmbiguousLcm, BudgetExceeded, NonHomogeneous, OutOfRange

DEFAULT_CLASS_CAP = 1_000_000
# Hard limit on the number of words enumerated at a single length.
WORD_CAP = 1 << 24


def _component_minima(size: int, rows: np.ndarray, cols: np.ndarray) -> tuple[np.ndarray, int]:
    if rows.size == 0:
        return np.arange(size, dtype=np.int64), size
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(size, size))
    ncomp, labels = connected_components(graph, directed=False)
    # first occurrence of each label in code order is the class minimum
    _, first = np.unique(labels, return_index=True)
    return first.astype(np.int64)[labels], int(ncomp)


@dataclasses.dataclass(frozen=True, eq=False)
class CongruenceIndex:
    presentation: Presentation
    max_length: int
    reps: tuple[np.ndarray, ...]
    class_counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.presentation.n

    # encoding ----------------------------------------------------------

    def encode(self, word: Sequence[int]) -> int:
        code = 0
        for letter in word:
            code = code * self.n + letter
        return code

    def decode(self, code: int, length: int) -> Word:
        out = []
        for _ in range(length):
            code, letter = divmod(code, self.n)
            out.append(letter)
        return tuple(reversed(out))

    def _check(self, *words: Sequence[int]) -> None:
        for w in words:
            if len(w) > self.max_length:
                raise OutOfRange(f"word of length {len(w)} exceeds index bound {self.max_length}")

    # classes ------------------------------------------------------------

    def class_of(self, word: Sequence[int]) -> tuple[int, int]:
        """Hashable class key ``(length, least code)``."""
        self._check(word)
        return len(word), int(self.reps[len(word)][self.encode(word)])

    def representative(self, word: Sequence[int]) -> Word:
        length, code = self.class_of(word)
        return self.decode(code, length)

    def key_word(self, key: tuple[int, int]) -> Word:
        return self.decode(key[1], key[0])

    def members(self, word: Sequence[int]) -> list[Word]:
        length, code = self.class_of(word)
        return [self.decode(int(c), length) for c in self._member_codes(length, code)]

    def _member_codes(self, length: int, code: int) -> np.ndarray:
        return np.flatnonzero(self.reps[length] == code)

    def classes(self, length: int) -> list[Word]:
        """Representatives of all classes of the given length, in lex order."""
        self._check((0,) * length)
        return [self.decode(int(c), length) for c in np.unique(self.reps[length])]

    @property
    def class_count(self) -> int:
        return sum(self.class_counts)

    # divisor sets, cached per class -------------------------------------

    def left_divisor_keys(self, word: Sequence[int]) -> frozenset[tuple[int, int]]:
        return _divisor_keys(self, self.class_of(word), True)

    def right_divisor_keys(self, word: Sequence[int]) -> frozenset[tuple[int, int]]:
        return _divisor_keys(self, self.class_of(word), False)

    def left_multiple_keys(self, word: Sequence[int], length: int) -> np.ndarray:
        """Class codes (at ``length``) of all ``word . u`` with ``|u| = length - |word|``."""
        k = length - len(word)
        codes = self.encode(word) * self.n ** k + np.arange(self.n ** k, dtype=np.int64)
        return np.unique(self.reps[length][codes])

    def right_multiple_keys(self, word: Sequence[int], length: int) -> np.ndarray:
        """Class codes of all ``u . word`` with ``|u| = length - |word|``."""
        k = length - len(word)
        codes = np.arange(self.n ** k, dtype=np.int64) * self.n ** len(word) + self.encode(word)
        return np.unique(self.reps[length][codes])


@lru_cache(maxsize=None)
def _divisor_keys(idx: CongruenceIndex, key: tuple[int, int], left: bool) -> frozenset:
    length, code = key
    members = idx._member_codes(length, code)
    out = set()
    for k in range(length + 1):
        if left:
            parts = members // idx.n ** (length - k)
        else:
            parts = members % idx.n ** k
        for c in np.unique(idx.reps[k][parts]):
            out.add((k, int(c)))
    return frozenset(out)


def build_index(p: Presentation, max_length: int, class_cap: int = DEFAULT_CLASS_CAP) -> CongruenceIndex:
    if max_length < 0:
        raise ValueError("max_length must be non-negative")
    if not validate(p).homogeneous:
        raise NonHomogeneous("the oracle needs length-preserving relations")
    n = p.n
    reps, counts = [], []
    total = 0
    for length in range(max_length + 1):
        size = n ** length
        if size > WORD_CAP:
            raise BudgetExceeded(f"{size} words of length {length} exceed the enumeration cap")
        rows, cols = [], []
        for lhs, rhs in p.relations:
            k = len(lhs)
            if k > length:
                continue
            lcode = rcode = 0
            for a, b in zip(lhs, rhs):
                lcode, rcode = lcode * n + a, rcode * n + b
            for pos in range(length - k + 1):
                tail = n ** (length - pos - k)
                prefix = np.arange(n ** pos, dtype=np.int64)[:, None] * (n ** (length - pos))
                suffix = np.arange(tail, dtype=np.int64)[None, :]
                base = (prefix + suffix).ravel()
                rows.append(base + lcode * tail)
                cols.append(base + rcode * tail)
        if rows:
            rep, ncomp = _component_minima(size, np.concatenate(rows), np.concatenate(cols))
        else:
            rep, ncomp = _component_minima(size, np.empty(0, np.int64), np.empty(0, np.int64))
        total += ncomp
        if total > class_cap:
            raise BudgetExceeded(f"class count exceeds cap {class_cap} at length {length}")
        rep.setflags(write=False)
        reps.append(rep)
        counts.append(ncomp)
    return CongruenceIndex(p, max_length, tuple(reps), tuple(counts))


def equal_oracle(idx: CongruenceIndex, u: Sequence[int], v: Sequence[int]) -> bool:
    idx._check(u, v)
    if len(u) != len(v):
        return False
    return idx.class_of(u) == idx.class_of(v)


def left_divides(idx: CongruenceIndex, a: Sequence[int], g: Sequence[int]) -> Word | None:
    """Return the lex-least ``u`` with ``a.u == g``, or ``None``."""
    idx._check(a, g)
    k = len(g) - len(a)
    if k < 0:
        return None
    target = idx.class_of(g)[1]
    codes = idx.encode(a) * idx.n ** k + np.arange(idx.n ** k, dtype=np.int64)
    hits = np.flatnonzero(idx.reps[len(g)][codes] == target)
    if hits.size == 0:
        return None
    return idx.decode(int(hits[0]), k)


def right_divides(idx: CongruenceIndex, a: Sequence[int], g: Sequence[int]) -> Word | None:
    """Return the lex-least ``u`` with ``u.a == g``, or ``None``."""
    idx._check(a, g)
    k = len(g) - len(a)
    if k < 0:
        return None
    target = idx.class_of(g)[1]
    codes = np.arange(idx.n ** k, dtype=np.int64) * idx.n ** len(a) + idx.encode(a)
    hits = np.flatnonzero(idx.reps[len(g)][codes] == target)
    if hits.size == 0:
        return None
    return idx.decode(int(hits[0]), k)


def _common_multiple(idx: CongruenceIndex, a, b, left: bool) -> Word | None:
    idx._check(a, b)
    multiples = idx.left_multiple_keys if left else idx.right_multiple_keys
    for length in range(max(len(a), len(b)), idx.max_length + 1):
        common = np.intersect1d(multiples(a, length), multiples(b, length))
        if common.size == 1:
            return idx.decode(int(common[0]), length)
        if common.size > 1:
            cands = [idx.decode(int(c), length) for c in common]
            raise AmbiguousLcm(f"{common.size} minimal common multiples at length {length}", cands)
    return None


def lcm_oracle(idx: CongruenceIndex, a: Sequence[int], b: Sequence[int]) -> Word | None:
    """Least common multiple for left divisibility (``m = a.u = b.v``)."""
    return _common_multiple(idx, tuple(a), tuple(b), True)


def right_lcm_oracle(idx: CongruenceIndex, a: Sequence[int], b: Sequence[int]) -> Word | None:
    """Least common multiple for right divisibility (``m = u.a = v.b``)."""
    return _common_multiple(idx, tuple(a), tuple(b), False)


def _gcd(idx: CongruenceIndex, a, b, left: bool) -> Word:
    idx._check(a, b)
    divisors = idx.left_divisor_keys if left else idx.right_divisor_keys
    common = divisors(a) & divisors(b)
    top = max(k for k, _ in common)
    best = sorted(key for key in common if key[0] == top)
    if len(best) > 1:
        raise AmbiguousGcd(
            f"{len(best)} maximal common divisors of length {top}", [idx.key_word(k) for k in best]
        )
    return idx.key_word(best[0])


def left_gcd_oracle(idx: CongruenceIndex, a: Sequence[int], b: Sequence[int]) -> Word:
    return _gcd(idx, tuple(a), tuple(b), True)


def right_gcd_oracle(idx: CongruenceIndex, a: Sequence[int], b: Sequence[int]) -> Word:
    return _gcd(idx, tuple(a), tuple(b), False)


def invertibles(idx: CongruenceIndex) -> list[Word]:
    """Classes ``c`` admitting ``d`` with ``c.d == 1`` and ``|c|+|d| <= max_length``."""
    reps = [idx.classes(k) for k in range(idx.max_length + 1)]
    found = []
    for lc, cs in enumerate(reps):
        for c in cs:
            if any(
                equal_oracle(idx, c + d, ())
                for ld in range(idx.max_length - lc + 1)
                for d in reps[ld]
            ):
                found.append(c)
    return found


def garside_element(idx: CongruenceIndex):
    """
    Fold the left lcm over all atoms.

    Returns ``(delta, balanced, generates)``, or ``None`` when some partial
    lcm has no common multiple within the bound.
    """
    delta: Word = ()
    for atom in range(idx.n):
        m = lcm_oracle(idx, delta, (atom,))
        if m is None:
            return None
        delta = m
    balanced = idx.left_divisor_keys(delta) == idx.right_divisor_keys(delta)
    generates = all(left_divides(idx, (atom,), delta) is not None for atom in range(idx.n))
    return delta, balanced, generates
