"""State-sum bracket and Jones polynomial."""

import random

import pytest

from rtfactor.diagram import (
    CATALOG,
    braid_closure_sliced,
    make_braid,
    parse_braid,
    pd_from_sliced,
    writhe,
)
from rtfactor.errors import TooManyCrossings
from rtfactor.kauffman import jones_polynomial, kauffman_bracket, loop_value
from rtfactor.ring import LaurentPoly, parse_laurent


def _pd(name):
    spec = CATALOG[name]
    tangle = spec.tangle()
    return pd_from_sliced(tangle), writhe(tangle)


def _bracket_of_braid(text):
    return kauffman_bracket(pd_from_sliced(braid_closure_sliced(parse_braid(text))))


def test_unknot_bracket_is_one():
    pd, _ = _pd("unknot")
    assert kauffman_bracket(pd) == LaurentPoly.one()


def test_unnormalized_bracket_counts_every_loop():
    pd, _ = _pd("unknot")
    assert kauffman_bracket(pd, normalized=False) == loop_value()
    two_unlink = pd_from_sliced(braid_closure_sliced(make_braid(2, [])))
    assert kauffman_bracket(two_unlink) == loop_value()
    assert kauffman_bracket(two_unlink, normalized=False) == loop_value() * loop_value()


def test_positive_kink_multiplies_by_minus_a_cubed():
    kink = LaurentPoly.q_power(3, 1, -1)
    assert _bracket_of_braid("B2:1") == kink
    assert _bracket_of_braid("B2:-1") == kink ** (-1)


def test_hopf_bracket_pinned():
    pd, _ = _pd("hopf_pos")
    expected = parse_laurent("-A^{4} - A^{-4}", var="A")
    assert kauffman_bracket(pd) == expected


def test_trefoil_bracket_pinned():
    pd, _ = _pd("trefoil_right")
    expected = parse_laurent("-A^{5} - A^{-3} + A^{-7}", var="A")
    assert kauffman_bracket(pd) == expected


def test_jones_right_trefoil_pinned():
    pd, w = _pd("trefoil_right")
    assert jones_polynomial(pd, w) == parse_laurent("-t^{4} + t^{3} + t", var="t")


def test_jones_left_trefoil_is_mirror():
    pd, w = _pd("trefoil_left")
    expected = parse_laurent("-t^{-4} + t^{-3} + t^{-1}", var="t")
    assert jones_polynomial(pd, w) == expected


def test_jones_figure_eight_is_self_mirror():
    pd, w = _pd("figure_eight")
    value = jones_polynomial(pd, w)
    assert value == parse_laurent("t^{-2} - t^{-1} + 1 - t + t^{2}", var="t")
    assert value == value.scale_exponents(-1)


def test_jones_hopf_has_half_integer_exponents():
    pd, w = _pd("hopf_pos")
    expected = parse_laurent("-t^{5/2} - t^{1/2}", var="t")
    assert jones_polynomial(pd, w) == expected


def test_jones_unaffected_by_reidemeister_one():
    for name in ("unknot", "unknot_pos_kink", "unknot_neg_kink"):
        spec = CATALOG[name]
        tangle = spec.tangle()
        value = jones_polynomial(pd_from_sliced(tangle), writhe(tangle))
        assert value == LaurentPoly.one(), name


def test_kink_multiplicativity_across_catalog():
    kink = LaurentPoly.q_power(3, 1, -1)
    for name, spec in CATALOG.items():
        base = spec.effective_braid()
        stabbed = make_braid(base.strands + 1, list(base.word) + [base.strands])
        braided = kauffman_bracket(pd_from_sliced(braid_closure_sliced(base)))
        kinked = kauffman_bracket(pd_from_sliced(braid_closure_sliced(stabbed)))
        assert kinked == braided * kink, name


def test_mirror_inverts_bracket_variable():
    rng = random.Random(2024)
    for _ in range(6):
        strands = rng.randint(2, 3)
        word = [rng.choice([1, -1]) * rng.randint(1, strands - 1)
                for _ in range(rng.randint(1, 5))]
        braid = make_braid(strands, word)
        mirror = make_braid(strands, [-x for x in word])
        value = kauffman_bracket(pd_from_sliced(braid_closure_sliced(braid)))
        flipped = kauffman_bracket(pd_from_sliced(braid_closure_sliced(mirror)))
        assert flipped == value.scale_exponents(-1)


def test_disjoint_union_multiplies_by_loop_value():
    # A split extra component shows up as an unused braid strand.
    for text in ("B2:1,1,1", "B2:1,1"):
        base = parse_braid(text)
        split = make_braid(base.strands + 1, base.word)
        lhs = kauffman_bracket(pd_from_sliced(braid_closure_sliced(split)))
        rhs = kauffman_bracket(pd_from_sliced(braid_closure_sliced(base)))
        assert lhs == rhs * loop_value()


def test_crossing_bound_enforced():
    word = [1] * 25
    pd = pd_from_sliced(braid_closure_sliced(make_braid(2, word)))
    with pytest.raises(TooManyCrossings):
        kauffman_bracket(pd)
