import random
from collections import Counter

import pytest

from rtfactor.diagram import (
    CAP,
    CATALOG,
    CUP,
    NEG_CROSS,
    POS_CROSS,
    BraidWord,
    braid_closure_sliced,
    braid_permutation,
    link_from_json,
    make_braid,
    make_sliced_tangle,
    parse_braid,
    pd_components,
    pd_from_sliced,
    permutation_cycles,
    resolve_link,
    stabilized,
    writhe,
)
from rtfactor.errors import (
    ArityMismatch,
    GeneratorOutOfRange,
    OpenTangle,
    ParseError,
    UnknownName,
)


def test_parse_braid_examples():
    b = parse_braid("B2:1,1,1")
    assert b == BraidWord(2, (1, 1, 1))
    assert parse_braid("B3:1,-2,1,-2") == BraidWord(3, (1, -2, 1, -2))
    assert parse_braid("B1:") == BraidWord(1, ())


def test_parse_braid_errors():
    with pytest.raises(GeneratorOutOfRange):
        parse_braid("B2:3")
    with pytest.raises(GeneratorOutOfRange):
        parse_braid("B2:0")
    with pytest.raises(GeneratorOutOfRange):
        parse_braid("B1:1")
    with pytest.raises(ParseError):
        parse_braid("2:1,1")
    with pytest.raises(ParseError):
        parse_braid("B2:1,,1")
    with pytest.raises(ParseError):
        parse_braid("B2:one")


def test_unknot_closure_is_cup_cap():
    t = braid_closure_sliced(make_braid(1, ()))
    assert t.slices == ((CUP, 0), (CAP, 0))
    assert t.closed


def test_closure_arity_bookkeeping():
    t = braid_closure_sliced(make_braid(2, (1, 1, 1)))
    assert t.closed
    pieces = [p for p, _ in t.slices]
    assert pieces == [CUP, CUP, POS_CROSS, POS_CROSS, POS_CROSS, CAP, CAP]
    positions = [q for _, q in t.slices]
    assert positions == [0, 1, 0, 0, 0, 1, 0]


def test_bad_slices_rejected():
    with pytest.raises(ArityMismatch):
        make_sliced_tangle(0, [(CAP, 0)])
    with pytest.raises(ArityMismatch):
        make_sliced_tangle(2, [(POS_CROSS, 1)])
    with pytest.raises(ArityMismatch):
        make_sliced_tangle(1, [(CUP, 2)])
    with pytest.raises(ArityMismatch):
        make_sliced_tangle(2, [("twist", 0)])


def test_open_tangle_allowed_but_not_closed():
    t = make_sliced_tangle(2, [(POS_CROSS, 0)])
    assert t.input_arity == 2
    assert t.output_arity == 2
    assert not t.closed
    with pytest.raises(OpenTangle):
        writhe(t)
    with pytest.raises(OpenTangle):
        pd_from_sliced(t)


def test_writhe_values():
    assert writhe(CATALOG["trefoil_right"].tangle()) == 3
    assert writhe(CATALOG["trefoil_left"].tangle()) == -3
    assert writhe(CATALOG["figure_eight"].tangle()) == 0
    assert writhe(CATALOG["unknot"].tangle()) == 0
    assert writhe(CATALOG["unknot_pos_kink"].tangle()) == 1
    assert writhe(CATALOG["unknot_neg_kink"].tangle()) == -1


def test_mirror_negates_writhe():
    rng = random.Random(2026)
    for _ in range(20):
        s = rng.randint(2, 4)
        word = [rng.choice([1, -1]) * rng.randint(1, s - 1)
                for _ in range(rng.randint(0, 6))]
        b = make_braid(s, word)
        mirror = make_braid(s, [-x for x in word])
        assert writhe(braid_closure_sliced(mirror)) == -writhe(braid_closure_sliced(b))


def test_stabilization_adds_kinks():
    b = make_braid(1, ())
    up = stabilized(b, 2)
    assert up == BraidWord(3, (1, 2))
    down = stabilized(b, -1)
    assert down == BraidWord(2, (-1,))
    assert writhe(braid_closure_sliced(up)) == 2
    assert writhe(braid_closure_sliced(down)) == -1
    assert stabilized(b, 0) is b


def test_pd_trefoil():
    pd = pd_from_sliced(CATALOG["trefoil_right"].tangle())
    assert len(pd.crossings) == 3
    counts = Counter(x for _, quad in pd.crossings for x in quad)
    # closed diagram: every arc shows up exactly twice among crossing slots
    assert all(v == 2 for v in counts.values())
    assert set(counts) == set(pd.arcs)
    assert pd_components(pd) == 1


def test_pd_crossing_free_unknot():
    pd = pd_from_sliced(CATALOG["unknot"].tangle())
    assert pd.crossings == ()
    assert len(pd.arcs) == 1
    assert pd_components(pd) == 1


def test_pd_component_counts():
    assert pd_components(pd_from_sliced(CATALOG["hopf_pos"].tangle())) == 2
    assert pd_components(pd_from_sliced(CATALOG["figure_eight"].tangle())) == 1
    # closure of a single generator on 3 strands: 2 components
    pd = pd_from_sliced(braid_closure_sliced(make_braid(3, (1,))))
    assert pd_components(pd) == 2


def test_components_match_braid_permutation_cycles():
    rng = random.Random(515)
    for _ in range(25):
        s = rng.randint(1, 4)
        word = [rng.choice([1, -1]) * rng.randint(1, max(1, s - 1))
                for _ in range(rng.randint(0, 7))] if s > 1 else []
        b = make_braid(s, word)
        want = permutation_cycles(braid_permutation(b))
        got = pd_components(pd_from_sliced(braid_closure_sliced(b)))
        assert got == want, (s, word)


def test_catalog_components():
    for name, comps in [("unknot", 1), ("unknot_pos_kink", 1), ("hopf_neg", 2),
                        ("trefoil_left", 1), ("figure_eight", 1)]:
        pd = pd_from_sliced(CATALOG[name].tangle())
        assert pd_components(pd) == comps, name


def test_link_json_roundtrip():
    spec = link_from_json('{"braid": {"strands": 2, "word": [1, 1, 1]}, "framing_kinks": -2}')
    assert spec.braid == BraidWord(2, (1, 1, 1))
    assert spec.framing_kinks == -2
    assert writhe(spec.tangle()) == 1  # 3 - 2
    with pytest.raises(ParseError):
        link_from_json('{"word": [1]}')
    with pytest.raises(ParseError):
        link_from_json('not json')


def test_resolve_link():
    assert resolve_link("trefoil_right") is CATALOG["trefoil_right"]
    assert resolve_link("B2:1,1").braid == BraidWord(2, (1, 1))
    assert resolve_link('{"braid": {"strands": 1, "word": []}}').braid == BraidWord(1, ())
    with pytest.raises(UnknownName):
        resolve_link("granny_knot")
