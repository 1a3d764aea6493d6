from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from garside.core import AtomTable
from garside.mbrace import oplus, same, words_up_to
from garside.oracle import build_index, right_gcd_oracle
from garside.partialbrace import (
    IDENTITY,
    Ambiguous,
    Defined,
    FractionGroup,
    GroupElement,
    SampleSpec,
    Undefined,
    check_partial_axioms,
    grid_padding_report,
    group_equal,
    inv,
    mul,
    oplus_partial,
    reduce,
    sample_elements,
    witness_search,
)
from garside.reversing import build_complement_table

X1, X2, X3, X4 = 0, 1, 2, 3
words2 = st.lists(st.integers(0, 3), max_size=2).map(tuple)


@pytest.fixture(scope="module")
def fg(idx, ct):
    return FractionGroup(idx, ct)


@pytest.fixture(scope="module")
def elements1(fg):
    return sample_elements(fg, 1)


@pytest.fixture(scope="module")
def elements2(fg):
    return sample_elements(fg, 2)


def E(num=(), den=()):
    return GroupElement(tuple(num), tuple(den))


def test_reduce(idx):
    assert reduce(idx, (X1, X3), (X3,)) == E((X1,))
    assert reduce(idx, (X2, X4), (X2, X4)) == IDENTITY
    assert reduce(idx, (X1, X3), (X2, X4)) == IDENTITY
    assert reduce(idx, (X1, X2), (X3,)) == E((X3,))  # x1 x2 = x3 x3


@settings(max_examples=60, deadline=None)
@given(words2, words2)
def test_reduce_is_coprime_and_equal(idx, ct, a, c):
    g = reduce(idx, a, c)
    assert right_gcd_oracle(idx, g.num, g.den) == ()
    assert group_equal(idx, ct, g, E(a, c))


def test_group_equal(idx, ct):
    g = E((X3,), (X4,))
    assert group_equal(idx, ct, g, g)
    assert not group_equal(idx, ct, g, IDENTITY)
    fg = FractionGroup(idx, ct)
    # x1^-1 x2 = x3 x4^-1 because x1 x3 = x2 x4
    assert fg.element(((X1, -1), (X2, 1))) == g


def test_mul(idx, ct):
    assert mul(idx, ct, E((X1,)), E((X3,))) == E((X1, X3))
    g = E((X1, X2), (X4,))
    assert mul(idx, ct, g, IDENTITY) == reduce(idx, g.num, g.den)
    assert mul(idx, ct, g, inv(g)) == IDENTITY
    assert inv(g) == E((X4,), (X1, X2))


@settings(max_examples=60, deadline=None)
@given(words2, words2, words2, words2, words2, words2)
def test_group_axioms(fg, a, b, c, d, e, f):
    g, h, k = fg.reduce(a, b), fg.reduce(c, d), fg.reduce(e, f)
    assert fg.equal(fg.mul(fg.mul(g, h), k), fg.mul(g, fg.mul(h, k)))
    assert fg.mul(g, fg.inv(g)) == IDENTITY == fg.mul(fg.inv(g), g)


def test_element_text_forms():
    atoms = AtomTable(("x1", "x2", "x3", "x4"))
    g = GroupElement.parse("x1 x3 / x2", atoms)
    assert g == E((X1, X3), (X2,))
    assert g.format(atoms) == "x1 x3 / x2"
    assert IDENTITY.format(atoms) == "1 / 1"
    assert GroupElement.parse("x4", atoms) == E((X4,))
    assert GroupElement.parse("1 / x4", atoms) == E((), (X4,))
    assert g.to_json(atoms) == {"num": ["x1", "x3"], "den": ["x2"]}
    with pytest.raises(ValueError):
        GroupElement.parse("x1^-1 / x2", atoms)


def test_witness_search(idx):
    assert witness_search(idx, (X3,), (X4,)) == []
    assert witness_search(idx, (X4,), (X3,)) == []
    assert (X2,) in witness_search(idx, (X1,), (X3,))
    assert witness_search(idx, (), (X2, X3)) == [(X2, X3)]


def test_oplus_fixtures(idx, ct):
    out = oplus_partial(idx, ct, E((X3,)), E((), (X4,)))
    assert out == Undefined("no-witness", ("mixed", (X4,), (X3,)))
    assert isinstance(oplus_partial(idx, ct, E((X4,)), E((), (X3,))), Undefined)
    neg = oplus_partial(idx, ct, E((), (X3,)), E((), (X4,)))
    assert isinstance(neg, Defined) and neg.value == E((), (X1, X3)) and neg.rule == "negative"
    assert neg.g_side == E((), (X1,)) and neg.h_side == E((), (X2,))
    g = E((X1, X2), (X4,))
    assert oplus_partial(idx, ct, g, g).value == reduce(idx, g.num, g.den)
    assert oplus_partial(idx, ct, g, IDENTITY).value == reduce(idx, g.num, g.den)


def test_oplus_mixed_value(fg):
    out = fg.oplus(E((X2,)), E((), (X1,)))
    # x1 v x3 = x1 x2: x2 (+) x1^-1 = x2 x3^-1
    assert isinstance(out, Defined) and out.rule == "mixed"
    assert out.value == E((X2,), (X3,))
    assert fg.oplus(E((), (X1,)), E((X2,))).value == out.value


def test_stuck_presentation(fig2):
    idx = build_index(fig2, 4)
    ct = build_complement_table(fig2)
    out = oplus_partial(idx, ct, E((0,)), E((1,)))
    assert out == Undefined("stuck", (0, 1))


def test_budget_is_undefined(fg):
    g, h = E((X1,), (X3,)), E((X2,))
    assert isinstance(fg.oplus(g, h), Defined)
    assert fg.oplus(g, h, budget=0) == Undefined("budget", ("grid exceeded 0 cells",))


def test_positive_part_is_the_lcm(fg, idx, ct):
    for a, b in itertools.product(words_up_to(4, 2), repeat=2):
        out = fg.oplus(E(a), E(b))
        assert isinstance(out, Defined) and out.value.den == ()
        assert same(idx, out.value.num, oplus(ct, a, b))


def test_mixed_definedness_matches_witnesses(fg):
    for x, y in itertools.product(words_up_to(4, 2)[1:], repeat=2):
        out = fg.oplus(E(x), E((), y))
        g, h = fg.reduce(x, ()), fg.reduce((), y)
        if g == h or g == IDENTITY or h == IDENTITY:
            continue
        assert isinstance(out, Defined) == bool(fg.witness_search(y, x)), (x, y)


def test_defined_results_factor_through_both_arguments(fg, elements2):
    for g, h in itertools.product(elements2, repeat=2):
        out = fg.oplus(g, h)
        assert not isinstance(out, Ambiguous)
        if isinstance(out, Defined):
            assert out.value == fg.reduce(out.value.num, out.value.den)
            assert fg.equal(out.value, fg.mul(g, out.g_side))
            assert fg.equal(out.value, fg.mul(h, out.h_side))


def test_commutativity_on_pairs(fg, elements2):
    for g, h in itertools.combinations(elements2, 2):
        a, b = fg.oplus(g, h), fg.oplus(h, g)
        assert isinstance(a, Defined) == isinstance(b, Defined)
        if isinstance(a, Defined):
            assert fg.equal(a.value, b.value)


def test_axiom_sweep(idx, ct):
    comm, well, assoc, dist = check_partial_axioms(idx, ct, SampleSpec(pair_length=1, triple_length=1))
    assert comm.universe.endswith("(21 elements)")
    assert (comm.tested, comm.skipped, comm.passed) == (325, 116, True)
    assert (well.tested, well.skipped, well.passed) == (1300, 464, True)
    assert (assoc.tested, assoc.skipped, assoc.passed) == (4017, 5244, True)
    assert assoc.notes["one-sided"] == 24
    assert comm.notes == {"undefined:no-witness": 116}
    # left distributivity does not survive the identity and mixed rules
    assert (dist.tested, dist.skipped, len(dist.failures)) == (6721, 2540, 2392)


def test_distributivity_failures_are_genuine(fg, idx, ct):
    *_, dist = check_partial_axioms(idx, ct, SampleSpec(pair_length=1, triple_length=1))
    for f in dist.failures[:200]:
        w, g, h = f.inputs
        assert fg.equal(f.lhs, fg.mul(w, fg.oplus(g, h).value))
        assert fg.equal(f.rhs, fg.oplus(fg.mul(w, g), fg.mul(w, h)).value)
        assert not fg.equal(f.lhs, f.rhs)


def test_identity_breaks_left_distributivity(fg):
    # w (1 (+) w^-1) = 1 while w.1 (+) w w^-1 = w (+) 1 = w
    for w in (E((X1,)), E((), (X3,)), E((X2,), (X4,))):
        lhs = fg.mul(w, fg.oplus(IDENTITY, fg.inv(w)).value)
        rhs = fg.oplus(fg.mul(w, IDENTITY), fg.mul(w, fg.inv(w))).value
        assert lhs == IDENTITY and fg.equal(rhs, w)


def test_unreduced_padding_changes_the_grid(fg, elements1):
    report = grid_padding_report(fg, elements1)
    assert (report.tested, len(report.failures)) == (1064, 172)
    g, h, pad = E((), (X1,)), E((X2,)), (X2,)
    assert fg.oplus(g, h).value == E((X2,), (X3,))
    assert fg.grid(E(pad, (X1,) + pad), h).value == g
