"""Combinatorial link and tangle presentations.

Three layers:

* BraidWord: `B<strands>:i1,i2,...` with signed 1-based generators.
* SlicedTangle: a Morse presentation, one elementary piece per slice
  (identity, positive or negative crossing, cup, cap) at an explicit
  position.  Widths are validated slice by slice.
* PDCode: planar-diagram data for the skein oracle, produced by arc-tracing
  a closed sliced tangle.

The trace closure of a braid puts the braid strands at positions 0..s-1 and
their return strands at 2s-1..s, nested, so braid generator i acts at
position i-1.  Extra framing is represented by Markov stabilizations, which
append one kink per unit of framing.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    GeneratorOutOfRange,
    OpenTangle,
    ParseError,
    UnknownName,
)

ID = "id"
POS_CROSS = "pos_cross"
NEG_CROSS = "neg_cross"
CUP = "cup"
CAP = "cap"


@dataclass(frozen=True)
class BraidWord:
    strands: int
    word: tuple  # signed generator indices, |i| in [1, strands-1]


def make_braid(strands: int, word) -> BraidWord:
    if strands < 1:
        raise ParseError("braid needs at least one strand")
    for i in word:
        if not isinstance(i, int) or i == 0 or not (1 <= abs(i) <= strands - 1):
            raise GeneratorOutOfRange(
                f"generator {i} out of range for {strands} strands")
    return BraidWord(strands, tuple(word))


_BRAID_RE = re.compile(r"^\s*B(\d+)\s*:\s*(.*?)\s*$")


def parse_braid(text: str) -> BraidWord:
    """Parse `B<s>:i1,i2,...`; an empty word after the colon is allowed."""
    m = _BRAID_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse braid {text!r}")
    strands = int(m.group(1))
    body = m.group(2)
    word = []
    if body:
        for chunk in body.split(","):
            chunk = chunk.strip()
            if not re.fullmatch(r"-?\d+", chunk):
                raise ParseError(f"bad braid letter {chunk!r}")
            word.append(int(chunk))
    return make_braid(strands, word)


def braid_permutation(b: BraidWord) -> list[int]:
    """Where each bottom strand position ends up at the top."""
    perm = list(range(b.strands))
    for letter in b.word:
        i = abs(letter) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return perm


def permutation_cycles(perm) -> int:
    seen = [False] * len(perm)
    count = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        count += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
    return count


def stabilized(b: BraidWord, kinks: int) -> BraidWord:
    """Markov-stabilize |kinks| times with the sign of `kinks`, adding one
    Reidemeister-I curl per unit of framing to the closure."""
    if kinks == 0:
        return b
    sign = 1 if kinks > 0 else -1
    strands = b.strands
    word = list(b.word)
    for _ in range(abs(kinks)):
        word.append(sign * strands)
        strands += 1
    return make_braid(strands, word)


# ---------------------------------------------------------------------------
# Sliced tangles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SlicedTangle:
    input_arity: int
    output_arity: int
    slices: tuple  # of (piece, position)

    @property
    def closed(self) -> bool:
        return self.input_arity == 0 and self.output_arity == 0


def make_sliced_tangle(input_arity: int, slices) -> SlicedTangle:
    """Validate width bookkeeping and return the tangle."""
    if input_arity < 0:
        raise ArityMismatch("negative input arity")
    width = input_arity
    for piece, pos in slices:
        if piece in (POS_CROSS, NEG_CROSS, CAP):
            if not (0 <= pos <= width - 2):
                raise ArityMismatch(
                    f"{piece} at position {pos} needs two strands, width is {width}")
            if piece == CAP:
                width -= 2
        elif piece == CUP:
            if not (0 <= pos <= width):
                raise ArityMismatch(f"cup at position {pos}, width is {width}")
            width += 2
        elif piece == ID:
            if not (0 <= pos < width):
                raise ArityMismatch(f"id at position {pos}, width is {width}")
        else:
            raise ArityMismatch(f"unknown piece {piece!r}")
    return SlicedTangle(input_arity, width, tuple((p, q) for p, q in slices))


def braid_closure_sliced(b: BraidWord) -> SlicedTangle:
    """Trace closure: s nested cups, the braid, s nested caps."""
    s = b.strands
    slices = [(CUP, p) for p in range(s)]
    for letter in b.word:
        slices.append((POS_CROSS if letter > 0 else NEG_CROSS, abs(letter) - 1))
    slices.extend((CAP, p) for p in range(s - 1, -1, -1))
    return make_sliced_tangle(0, slices)


def writhe(t: SlicedTangle) -> int:
    if not t.closed:
        raise OpenTangle("writhe needs a closed diagram")
    return (sum(1 for piece, _ in t.slices if piece == POS_CROSS)
            - sum(1 for piece, _ in t.slices if piece == NEG_CROSS))


# ---------------------------------------------------------------------------
# PD codes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PDCode:
    """Crossings as (sign, (in_left, in_right, out_left, out_right)) with the
    strand entering at in_left leaving at out_right and vice versa.  Sign +1
    means the in_left strand passes over for a positive braid generator.
    Arc labels in no crossing are closed crossing-free loops."""

    crossings: tuple
    arcs: frozenset


def pd_from_sliced(t: SlicedTangle) -> PDCode:
    """Arc-trace a closed sliced tangle into a PD code."""
    if not t.closed:
        raise OpenTangle("PD codes are built for closed diagrams")
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        parent[find(x)] = find(y)

    fresh = iter(range(1, 10 ** 9))

    def new_arc() -> int:
        a = next(fresh)
        parent[a] = a
        return a

    strands: list[int] = []
    crossings = []
    for piece, pos in t.slices:
        if piece == ID:
            continue
        if piece == CUP:
            a = new_arc()
            strands[pos:pos] = [a, a]
        elif piece == CAP:
            a, b = strands[pos], strands[pos + 1]
            union(a, b)
            del strands[pos:pos + 2]
        else:
            sign = 1 if piece == POS_CROSS else -1
            a, b = strands[pos], strands[pos + 1]
            c, d = new_arc(), new_arc()
            crossings.append((sign, (a, b, c, d)))
            strands[pos], strands[pos + 1] = c, d

    relabel: dict[int, int] = {}

    def canon(x: int) -> int:
        r = find(x)
        if r not in relabel:
            relabel[r] = len(relabel) + 1
        return relabel[r]

    out_crossings = tuple((sign, tuple(canon(x) for x in quad))
                          for sign, quad in crossings)
    all_arcs = {canon(x) for x in parent}
    return PDCode(out_crossings, frozenset(all_arcs))


def pd_components(pd: PDCode) -> int:
    """Number of link components: follow each strand through its crossings."""
    parent: dict[int, int] = {a: a for a in pd.arcs}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, (a, b, c, d) in pd.crossings:
        parent[find(a)] = find(d)   # in_left continues to out_right
        parent[find(b)] = find(c)   # in_right continues to out_left
    return len({find(a) for a in pd.arcs})


# ---------------------------------------------------------------------------
# Catalog and link files
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinkSpec:
    braid: BraidWord
    framing_kinks: int = 0

    def effective_braid(self) -> BraidWord:
        return stabilized(self.braid, self.framing_kinks)

    def tangle(self) -> SlicedTangle:
        return braid_closure_sliced(self.effective_braid())


CATALOG: dict[str, LinkSpec] = {
    "unknot": LinkSpec(make_braid(1, ())),
    "unknot_pos_kink": LinkSpec(make_braid(1, ()), 1),
    "unknot_neg_kink": LinkSpec(make_braid(1, ()), -1),
    "hopf_pos": LinkSpec(make_braid(2, (1, 1))),
    "hopf_neg": LinkSpec(make_braid(2, (-1, -1))),
    "trefoil_right": LinkSpec(make_braid(2, (1, 1, 1))),
    "trefoil_left": LinkSpec(make_braid(2, (-1, -1, -1))),
    "figure_eight": LinkSpec(make_braid(3, (1, -2, 1, -2))),
}


def link_from_json(text: str) -> LinkSpec:
    """Parse `{"braid": {"strands": s, "word": [...]}, "framing_kinks": k}`."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"bad link JSON: {e}") from None
    if not isinstance(data, dict) or "braid" not in data:
        raise ParseError("link JSON needs a 'braid' object")
    braid = data["braid"]
    try:
        b = make_braid(int(braid["strands"]), [int(x) for x in braid["word"]])
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad braid object: {e}") from None
    kinks = int(data.get("framing_kinks", 0))
    return LinkSpec(b, kinks)


def resolve_link(spec: str) -> LinkSpec:
    """Accept a catalog name, a braid string `B<s>:...`, or a link JSON."""
    s = spec.strip()
    if s in CATALOG:
        return CATALOG[s]
    if s.startswith("{"):
        return link_from_json(s)
    if s.startswith("B"):
        return LinkSpec(parse_braid(s))
    raise UnknownName(f"unknown link {spec!r} (not a catalog name, braid, or JSON)")
