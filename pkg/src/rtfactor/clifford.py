"""Clifford algebra on V + V*, its spinor representation, and the charged
fermion character identities.

Elements are stored in a canonical basis of words: all barred generators
before all unbarred ones, each block strictly ascending.  The defining
relations

    x_i xbar_j + xbar_j x_i = delta_ij,   x_i x_j + x_j x_i = 0,
    xbar_i xbar_j + xbar_j xbar_i = 0

are applied during multiplication.  Generator indices are 0-based.

The series identities at the end (character, wheel term, partition function)
compare a Grassmann-integral route against a matrix-determinant route; both
sides are computed independently.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial

from ._linalg import exact_rank
from .errors import DimensionMismatch, DimensionTooLarge, TraceNotZero
from .lie import LieAlgebra, Representation
from .ring import HSeries, rat, series_exp, series_inverse, series_log

MAX_HH_DIM = 3


@dataclass(frozen=True)
class CliffordElement:
    d: int
    # sorted tuple of ((bar_mask, x_mask), coeff); masks over d bits
    terms: tuple

    def coeff(self, bar_mask: int, x_mask: int) -> Fraction:
        for (b, x), c in self.terms:
            if b == bar_mask and x == x_mask:
                return c
        return Fraction(0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        if self.d != other.d:
            raise DimensionMismatch("mismatched generator counts")
        acc = dict(self.terms)
        for w, c in other.terms:
            acc[w] = acc.get(w, Fraction(0)) + c
        return cl_element(self.d, acc)

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + other.scale(-1)

    def scale(self, c) -> "CliffordElement":
        c = rat(c)
        return cl_element(self.d, {w: cc * c for w, cc in self.terms})


def cl_element(d: int, terms: dict) -> CliffordElement:
    clean = {}
    for (b, x), c in terms.items():
        c = rat(c)
        if not (0 <= b < (1 << d) and 0 <= x < (1 << d)):
            raise ValueError("word mask out of range")
        if c:
            clean[(b, x)] = c
    return CliffordElement(d, tuple(sorted(clean.items())))


def cl_zero(d: int) -> CliffordElement:
    return CliffordElement(d, ())


def cl_one(d: int) -> CliffordElement:
    return cl_element(d, {(0, 0): 1})


def x_gen(d: int, i: int) -> CliffordElement:
    return cl_element(d, {(0, 1 << i): 1})


def xbar_gen(d: int, i: int) -> CliffordElement:
    return cl_element(d, {(1 << i, 0): 1})


def _count_above(mask: int, i: int) -> int:
    return bin(mask >> (i + 1)).count("1")


def _append_x(word: tuple[int, int], i: int):
    """Words (with signs) for (canonical word) * x_i."""
    b, x = word
    if (x >> i) & 1:
        return []
    sign = -1 if _count_above(x, i) % 2 else 1
    return [(((b, x | (1 << i))), sign)]


def _append_bar(word: tuple[int, int], j: int):
    """Words (with signs) for (canonical word) * xbar_j."""
    b, x = word
    out = []
    if (x >> j) & 1:
        # contraction branch: delta from x_j xbar_j
        sign = -1 if _count_above(x, j) % 2 else 1
        out.append(((b, x & ~(1 << j)), sign))
    if not (b >> j) & 1:
        sign = (-1 if bin(x).count("1") % 2 else 1) * (-1 if _count_above(b, j) % 2 else 1)
        out.append(((b | (1 << j), x), sign))
    return out


def clifford_multiply(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    if a.d != b.d:
        raise DimensionMismatch("mismatched generator counts")
    d = a.d
    acc: dict[tuple[int, int], Fraction] = {}
    for (wb, xb), cb in b.terms:
        gens = ([("bar", j) for j in range(d) if (wb >> j) & 1]
                + [("x", i) for i in range(d) if (xb >> i) & 1])
        for wa, ca in a.terms:
            current = {wa: ca * cb}
            for kind, idx in gens:
                nxt: dict[tuple[int, int], Fraction] = {}
                step = _append_bar if kind == "bar" else _append_x
                for w, c in current.items():
                    for w2, s in step(w, idx):
                        nxt[w2] = nxt.get(w2, Fraction(0)) + c * s
                current = nxt
                if not current:
                    break
            for w, c in current.items():
                acc[w] = acc.get(w, Fraction(0)) + c
    return cl_element(d, acc)


def word_parity(word: tuple[int, int]) -> int:
    b, x = word
    return (bin(b).count("1") + bin(x).count("1")) % 2


# ---------------------------------------------------------------------------
# Spinor representation on subsets of {0..d-1}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpinorMatrix:
    d: int
    matrix: tuple  # 2^d x 2^d, indexed by subset bitmasks

    def supertrace(self) -> Fraction:
        acc = Fraction(0)
        for s in range(1 << self.d):
            v = self.matrix[s][s]
            acc += -v if bin(s).count("1") % 2 else v
        return acc


def spinor_matrix(a: CliffordElement) -> SpinorMatrix:
    """Action on the exterior algebra of V: x_i by wedging, xbar_i by contraction."""
    d = a.d
    n = 1 << d
    mat = [[Fraction(0)] * n for _ in range(n)]
    for (b, x), c in a.terms:
        xs = [i for i in range(d) if (x >> i) & 1]
        bars = [j for j in range(d) if (b >> j) & 1]
        for s0 in range(n):
            s, sign = s0, 1
            dead = False
            for i in reversed(xs):  # rightmost operator acts first
                if (s >> i) & 1:
                    dead = True
                    break
                if bin(s & ((1 << i) - 1)).count("1") % 2:
                    sign = -sign
                s |= 1 << i
            if dead:
                continue
            for j in reversed(bars):
                if not (s >> j) & 1:
                    dead = True
                    break
                if bin(s & ((1 << j) - 1)).count("1") % 2:
                    sign = -sign
                s &= ~(1 << j)
            if dead:
                continue
            mat[s][s0] += sign * c
    return SpinorMatrix(d, tuple(tuple(row) for row in mat))


def supertrace_via_top(a: CliffordElement) -> Fraction:
    """Coefficient of the interleaved top word xbar_0 x_0 xbar_1 x_1 ... after
    normalization; equals the supertrace of the spinor action."""
    d = a.d
    full = (1 << d) - 1
    # canonical storage has all bars first; the interleaved word differs by
    # moving each xbar_k past x_0..x_{k-1}, a pure sign
    swaps = d * (d - 1) // 2
    sign = -1 if swaps % 2 else 1
    return sign * a.coeff(full, full)


def hh0_dimension(d: int) -> int:
    """Codimension of the span of graded commutators of basis words."""
    if d > MAX_HH_DIM:
        raise DimensionTooLarge(f"generator count {d} exceeds {MAX_HH_DIM}")
    words = [(b, x) for b in range(1 << d) for x in range(1 << d)]
    index = {w: i for i, w in enumerate(words)}
    n = len(words)
    rows = []
    for w1 in words:
        e1 = CliffordElement(d, ((w1, Fraction(1)),))
        p1 = word_parity(w1)
        for w2 in words:
            e2 = CliffordElement(d, ((w2, Fraction(1)),))
            ab = clifford_multiply(e1, e2)
            ba = clifford_multiply(e2, e1)
            koszul = -1 if (p1 and word_parity(w2)) else 1
            comm = ab - ba.scale(koszul)
            if comm.is_zero:
                continue
            row = [Fraction(0)] * n
            for w, c in comm.terms:
                row[index[w]] = c
            rows.append(row)
    return n - exact_rank(rows)


# ---------------------------------------------------------------------------
# Series identities for the charged fermion system
# ---------------------------------------------------------------------------

def _coordinate_matrix(rho: Representation, coords) -> list[list[Fraction]]:
    if len(coords) != len(rho.matrices):
        raise DimensionMismatch(
            f"coordinate vector has length {len(coords)}, algebra has {len(rho.matrices)}")
    n = rho.dim
    m = [[Fraction(0)] * n for _ in range(n)]
    for a, ca in enumerate(coords):
        ca = rat(ca)
        if ca:
            for i in range(n):
                for j in range(n):
                    m[i][j] += ca * rho.matrices[a][i][j]
    return m


def _matrix_powers(m, order):
    n = len(m)
    powers = [[[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]]
    for _ in range(order):
        prev = powers[-1]
        nxt = [[sum((prev[i][k] * m[k][j] for k in range(n)), Fraction(0))
                for j in range(n)] for i in range(n)]
        powers.append(nxt)
    return powers


def _matrix_exp_series(m, scale: Fraction, order: int):
    """Matrix of HSeries for exp(scale * t * m), truncated at `order`."""
    n = len(m)
    powers = _matrix_powers(m, order)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cs = [scale**k * powers[k][i][j] / factorial(k) for k in range(order + 1)]
            out[i][j] = HSeries.make(order, cs)
    return out


def _series_det(mat, order: int) -> HSeries:
    n = len(mat)
    acc = HSeries.zero(order)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n)
                         if perm[i] > perm[j])
        term = HSeries.const(-1 if inversions % 2 else 1, order)
        for i in range(n):
            term = term * mat[i][perm[i]]
        acc = acc + term
    return acc


def todd_series(order: int) -> HSeries:
    """s/(1 - e^{-s}) as a truncated series: 1 + s/2 + s^2/12 - s^4/720 + ..."""
    # (1 - e^{-s})/s = sum_k (-1)^k s^k / (k+1)!
    g = HSeries.make(order, [Fraction((-1) ** k, factorial(k + 1))
                             for k in range(order + 1)])
    return series_inverse(g)


def charged_character(g: LieAlgebra, rho: Representation, coords, order: int) -> HSeries:
    """det(e^{tM/2} - e^{-tM/2}) as a t-series, M the image of the coordinate
    vector under the representation.  Requires trace M = 0."""
    m = _coordinate_matrix(rho, coords)
    n = rho.dim
    if sum((m[i][i] for i in range(n)), Fraction(0)) != 0:
        raise TraceNotZero("representation image must be traceless")
    plus = _matrix_exp_series(m, Fraction(1, 2), order)
    minus = _matrix_exp_series(m, Fraction(-1, 2), order)
    diff = [[plus[i][j] - minus[i][j] for j in range(n)] for i in range(n)]
    return _series_det(diff, order)


def wheel_term(rho: Representation, coords, order: int) -> HSeries:
    """-log det(e^{-tM/2} Td(tM)) as a t-series."""
    m = _coordinate_matrix(rho, coords)
    n = rho.dim
    powers = _matrix_powers(m, order)
    td = todd_series(order)
    exp_m = _matrix_exp_series(m, Fraction(-1, 2), order)
    td_m = [[HSeries.make(order, [td.coeffs[k] * powers[k][i][j]
                                  for k in range(order + 1)])
             for j in range(n)] for i in range(n)]
    prod = [[HSeries.zero(order) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = HSeries.zero(order)
            for k in range(n):
                acc = acc + exp_m[i][k] * td_m[k][j]
            prod[i][j] = acc
    return -series_log(_series_det(prod, order))


# -- Grassmann (Berezin) side of the partition function ----------------------

def berezin_determinant(m) -> Fraction:
    """Top coefficient of exp(sum m[i][j] psibar_i psi_j) in the exterior
    algebra on interleaved generators psibar_0 < psi_0 < psibar_1 < ...

    Equals det(m); computed by honest Grassmann expansion, not by a
    determinant routine, so it can serve as an independent route.
    """
    n = len(m)
    total = 2 * n
    # quadratic element: mask with bits 2i (psibar_i) and 2j+1 (psi_j)
    quad: dict[int, Fraction] = {}
    for i in range(n):
        for j in range(n):
            v = rat(m[i][j])
            if v:
                mask = (1 << (2 * i)) | (1 << (2 * j + 1))
                sign = 1 if 2 * i < 2 * j + 1 else -1  # store as psibar wedge psi
                quad[mask] = quad.get(mask, Fraction(0)) + sign * v

    def wedge(a: dict[int, Fraction], b: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                if ma & mb:
                    continue
                sign = 1
                rest = mb
                while rest:
                    low = rest & -rest
                    if bin(ma >> (low.bit_length())).count("1") % 2:
                        sign = -sign
                    rest ^= low
                mm = ma | mb
                out[mm] = out.get(mm, Fraction(0)) + sign * ca * cb
        return {k: v for k, v in out.items() if v}

    result = {0: Fraction(1)}
    power = {0: Fraction(1)}
    for k in range(1, n + 1):
        power = wedge(power, quad)
        if not power:
            break
        inv = Fraction(1, factorial(k))
        for mask, c in power.items():
            result[mask] = result.get(mask, Fraction(0)) + c * inv
    return result.get((1 << total) - 1, Fraction(0))


@dataclass(frozen=True)
class PartitionIdentity:
    holds: bool
    lhs: HSeries
    rhs: HSeries
    hbar_power: int


def partition_function_identity(g: LieAlgebra, rho: Representation, coords,
                                order: int) -> PartitionIdentity:
    """Tree-level Berezin integral times the exponentiated wheel term versus
    the charged character, as t-series.  hbar_power reports the filtration
    degree of the top fermion word."""
    m = _coordinate_matrix(rho, coords)
    n = rho.dim
    if sum((m[i][i] for i in range(n)), Fraction(0)) != 0:
        raise TraceNotZero("representation image must be traceless")
    top = berezin_determinant(m)
    tree = HSeries.make(order, [Fraction(0)] * n + [top]) if n <= order \
        else HSeries.zero(order)
    lhs = tree * series_exp(wheel_term(rho, coords, order))
    rhs = charged_character(g, rho, coords, order)
    return PartitionIdentity(lhs == rhs, lhs, rhs, -2 * n)
