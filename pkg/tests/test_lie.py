from fractions import Fraction

import pytest

from rtfactor._linalg import exact_rank
from rtfactor.errors import AntisymmetryViolation, DimensionMismatch, JacobiViolation, UnknownName
from rtfactor.lie import (
    InvariantPairing,
    algebra_from_json,
    algebra_to_json,
    builtin,
    check_invariant_pairing,
    check_representation,
    is_semisimple,
    killing_form,
    make_lie_algebra,
)

ALL_BUILTINS = ["sl2", "sl3", "so3", "sl2_irrep(3)", "sln_fundamental(4)", "abelian(3)"]


def test_sl2_constants_accepted():
    g, rep = builtin("sl2")
    assert g.dim == 3
    # [H,E] = 2E, [E,F] = H
    assert g.bracket(0, 1) == [Fraction(0), Fraction(2), Fraction(0)]
    assert g.bracket(1, 2) == [Fraction(1), Fraction(0), Fraction(0)]
    assert rep.dim == 2
    assert rep.matrices[0] == ((1, 0), (0, -1))


def test_antisymmetry_rejected():
    f = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    f[1][2][0] = 1
    f[2][1][0] = 1
    with pytest.raises(AntisymmetryViolation):
        make_lie_algebra(f)


def test_jacobi_rejected():
    # antisymmetric but non-Jacobi: [e0,e1]=e2, [e0,e2]=e0, [e1,e2]=0
    # (the cyclic sum on (e0,e1,e2) leaves -e2)
    f = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
    for (a, b, c) in [(0, 1, 2), (0, 2, 0)]:
        f[a][b][c] = Fraction(1)
        f[b][a][c] = Fraction(-1)
    with pytest.raises(JacobiViolation):
        make_lie_algebra(f)


def test_non_cubic_rejected():
    with pytest.raises(DimensionMismatch):
        make_lie_algebra([[[0, 0]]])


def test_abelian_accepted():
    g, _ = builtin("abelian(3)")
    assert g.dim == 3
    assert all(not any(g.bracket(a, b)) for a in range(3) for b in range(3))


def test_killing_form_sl2():
    g, _ = builtin("sl2")
    k = killing_form(g)
    assert k[0][0] == 8
    assert k[1][2] == k[2][1] == 4
    assert k[0][1] == k[0][2] == k[1][1] == k[2][2] == 0
    assert is_semisimple(g)


def test_killing_form_so3():
    g, _ = builtin("so3")
    k = killing_form(g)
    assert k == [[-2 if i == j else 0 for j in range(3)] for i in range(3)]
    assert is_semisimple(g)


def test_killing_form_abelian_zero():
    g, _ = builtin("abelian(3)")
    k = killing_form(g)
    assert all(v == 0 for row in k for v in row)
    assert exact_rank(k) == 0
    assert not is_semisimple(g)


def test_killing_pairing_invariant_for_semisimple():
    for name in ["sl2", "sl3", "so3"]:
        g, _ = builtin(name)
        report = check_invariant_pairing(g, InvariantPairing((killing_form(g),)))
        assert report.ok, (name, report.violations)


def test_identity_pairing_not_invariant_on_sl2():
    g, _ = builtin("sl2")
    eye = [[Fraction(1 if i == j else 0) for j in range(3)] for i in range(3)]
    report = check_invariant_pairing(g, InvariantPairing((eye,)))
    assert not report.ok
    assert any(v.kind == "invariance" for v in report.violations)


def test_degenerate_order0_reported():
    g, _ = builtin("abelian(2)")
    zero = [[Fraction(0)] * 2 for _ in range(2)]
    report = check_invariant_pairing(g, InvariantPairing((zero,)))
    assert not report.ok
    assert any(v.kind == "degenerate" and v.order == 0 for v in report.violations)


def test_graded_pairing_checked_per_order():
    g, _ = builtin("sl2")
    kappa = killing_form(g)
    eye = [[Fraction(1 if i == j else 0) for j in range(3)] for i in range(3)]
    report = check_invariant_pairing(g, InvariantPairing((kappa, eye)))
    assert not report.ok
    assert all(v.order == 1 for v in report.violations)
    # a Killing multiple at order 1 is fine
    half = [[v / 2 for v in row] for row in kappa]
    assert check_invariant_pairing(g, InvariantPairing((kappa, half))).ok


def test_all_builtins_validate():
    for name in ALL_BUILTINS:
        g, rep = builtin(name)
        make_lie_algebra([[list(g.structure_constants[a][b]) for b in range(g.dim)]
                          for a in range(g.dim)])
        if rep is not None:
            check_representation(g, rep)


def test_sl2_irrep_dimensions_and_weights():
    g, rep = builtin("sl2_irrep(4)")
    assert rep.dim == 5
    h = rep.matrices[0]
    assert [h[i][i] for i in range(5)] == [4, 2, 0, -2, -4]
    check_representation(g, rep)


def test_sln_fundamental_is_traceless():
    _, rep = builtin("sln_fundamental(3)")
    assert rep.dim == 3
    for m in rep.matrices:
        assert sum(m[i][i] for i in range(3)) == 0


def test_unknown_name_raises():
    for bad in ["e8", "sl2_irrep", "abelian", "sl(2)", ""]:
        with pytest.raises(UnknownName):
            builtin(bad)


def test_bad_representation_rejected():
    from rtfactor.lie import Representation
    g, _ = builtin("sl2")
    bad = Representation(2, (((1, 0), (0, -1)),) * 3)
    with pytest.raises(ValueError):
        check_representation(g, bad)
    with pytest.raises(DimensionMismatch):
        check_representation(g, Representation(2, (((1, 0), (0, -1)),)))


def test_json_roundtrip_all_builtins():
    for name in ALL_BUILTINS:
        g, _ = builtin(name)
        assert algebra_from_json(algebra_to_json(g)).structure_constants == g.structure_constants


def test_json_rational_coefficients():
    g = algebra_from_json('{"dim": 2, "brackets": [[0, 1, 1, "1/2"], [1, 0, 1, "-1/2"]]}')
    assert g.bracket(0, 1) == [Fraction(0), Fraction(1, 2)]
