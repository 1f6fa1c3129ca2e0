import pytest

from rtfactor.errors import KinkNotScalar, NotASquareOfSquare
from rtfactor.quantum_group import (
    RibbonRep,
    check_yang_baxter,
    lmat_identity,
    lmat_mul,
    quantum_dimension,
    ribbon_twist,
    sln_fundamental_ribbon,
)
from rtfactor.ring import LaurentPoly, parse_laurent

ONE = LaurentPoly.one()


def test_sl2_braiding_invertible_and_yang_baxter():
    rep = sln_fundamental_ribbon(2)
    assert lmat_mul(rep.R, rep.R_inv) == lmat_identity(4)
    assert check_yang_baxter(rep.R)
    assert check_yang_baxter(rep.R_inv)


def test_sl2_quantum_dimension_is_loop_value():
    rep = sln_fundamental_ribbon(2)
    assert quantum_dimension(rep) == parse_laurent("-q^{-1/2} - q^{1/2}")


def test_sl3_quantum_dimension():
    rep = sln_fundamental_ribbon(3)
    assert quantum_dimension(rep) == parse_laurent("q^{-1} + 1 + q")


def test_sl2_twist_single_monomial():
    rep = sln_fundamental_ribbon(2)
    assert ribbon_twist(rep) == LaurentPoly.q_power(3, 4, -1)  # -q^{3/4}
    assert rep.twist == ribbon_twist(rep)


def test_sl3_twist_on_third_root_line():
    rep = sln_fundamental_ribbon(3)
    t = ribbon_twist(rep)
    assert t == LaurentPoly.q_power(4, 3)  # q^{4/3}
    assert len(t.terms) == 1


def test_trivial_rep_twist_is_one():
    rep = RibbonRep(1, 1, ((ONE,),), ((ONE,),), ((ONE,),), ((ONE,),), ((ONE,),), ONE)
    assert ribbon_twist(rep) == ONE


def test_yang_baxter_identity_matrix():
    assert check_yang_baxter(lmat_identity(9))


def test_yang_baxter_rejects_non_square_of_square():
    with pytest.raises(NotASquareOfSquare):
        check_yang_baxter(lmat_identity(5))
    with pytest.raises(NotASquareOfSquare):
        check_yang_baxter((( ONE, ), ( ONE, ONE )))


def test_yang_baxter_detects_corruption():
    rep = sln_fundamental_ribbon(2)
    bad = [list(row) for row in rep.R]
    bad[0][3] = bad[0][3] + ONE
    assert not check_yang_baxter(tuple(tuple(r) for r in bad))


def test_double_twist_consistency():
    # positive kink then negative kink is the identity
    for n in [2, 3]:
        rep = sln_fundamental_ribbon(n)
        from rtfactor.quantum_group import _kink_matrix, _scalar_of
        pos = _scalar_of(_kink_matrix(rep.R, rep.cup, rep.cap, n), n, "kink")
        neg = _scalar_of(_kink_matrix(rep.R_inv, rep.cup, rep.cap, n), n, "kink")
        assert pos * neg == ONE


def test_left_kink_equals_right_kink():
    # the mirror curl (cap x I)(I x braiding)(cup x I) gives the same scalar
    for n in [2, 3]:
        rep = sln_fundamental_ribbon(n)
        out = [[LaurentPoly.zero()] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    cupbc = rep.cup[b][c]
                    if not cupbc:
                        continue
                    for x in range(n):
                        for y in range(n):
                            r = rep.R[x * n + y][c * n + a]
                            if r:
                                capbx = rep.cap[b][x]
                                if capbx:
                                    out[y][a] = out[y][a] + cupbc * r * capbx
        for i in range(n):
            for j in range(n):
                want = rep.twist if i == j else LaurentPoly.zero()
                assert out[i][j] == want, (n, i, j)


def test_pivot_commutes_with_braiding():
    for n in [2, 3]:
        rep = sln_fundamental_ribbon(n)
        from rtfactor.quantum_group import lmat_kron
        mm = lmat_kron(rep.pivot, rep.pivot)
        assert lmat_mul(mm, rep.R) == lmat_mul(rep.R, mm)


def test_kink_not_scalar_on_broken_cup():
    good = sln_fundamental_ribbon(2)
    eye = lmat_identity(2)
    broken = RibbonRep(2, 4, good.R, good.R_inv, eye, eye, eye, good.twist)
    with pytest.raises(KinkNotScalar):
        ribbon_twist(broken)


def test_sl4_full_invariants():
    rep = sln_fundamental_ribbon(4)  # construction validates everything
    assert quantum_dimension(rep) == parse_laurent("-q^{-3/2} - q^{-1/2} - q^{1/2} - q^{3/2}")
    assert rep.twist == LaurentPoly.q_power(15, 8, -1)
