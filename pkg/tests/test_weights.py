"""Graph weights, AS/IHX relations, symmetry factors."""

import random
from fractions import Fraction

import pytest

from rtfactor._linalg import mat_inv, mat_mul
from rtfactor.errors import (
    DimensionTooLarge,
    OpenFermionPath,
    OpenGraph,
    ParseError,
    TooLarge,
)
from rtfactor.lie import (
    InvariantPairing,
    Representation,
    builtin,
    killing_form,
)
from rtfactor.ring import HSeries, series_exp, series_log, series_inverse
from rtfactor.weights import (
    BicoloredGraph,
    JacobiGraph,
    check_AS_IHX,
    coupled_weight,
    disjoint_union,
    fermion_wheel,
    generate_trivalent_family,
    graph_from_json,
    graph_to_json,
    lie_weight,
    make_bicolored_graph,
    make_jacobi_graph,
    symmetry_factor,
    theta_graph,
)


def _killing_pairing(g):
    return InvariantPairing((tuple(tuple(row) for row in killing_form(g)),))


def test_theta_weight_is_dimension_for_killing():
    for g, _ in (builtin("sl2"), builtin("so3"), builtin("sl3")):
        weight = lie_weight(theta_graph(), g, _killing_pairing(g))
        assert weight == Fraction(g.dim)


def test_theta_weight_matches_brute_force():
    # theta_graph() reads the second vertex in the order (3, 5, 4), so the
    # edge (1, 4) lands on that tensor's third slot and (2, 5) on its
    # second; the six-fold loop below contracts exactly that pattern.
    g, _ = builtin("sl2")
    kill = killing_form(g)
    inv = mat_inv(kill)
    f = g.structure_constants
    dim = g.dim
    lowered = [[[sum(f[a][b][x] * kill[x][c] for x in range(dim))
                 for c in range(dim)] for b in range(dim)] for a in range(dim)]
    brute = Fraction(0)
    for a in range(dim):
        for b in range(dim):
            for c in range(dim):
                for d in range(dim):
                    for e in range(dim):
                        for h in range(dim):
                            brute += (lowered[a][b][c] * lowered[d][e][h]
                                      * inv[a][d] * inv[b][h] * inv[c][e])
    assert lie_weight(theta_graph(), g, _killing_pairing(g)) == brute


def test_self_loop_graph_vanishes():
    # One vertex with a self-loop, its third half-edge tied to a second
    # vertex carrying its own self-loop.
    graph = make_jacobi_graph(((0, 1, 2), (3, 4, 5)), (),
                              ((0, 1), (3, 4), (2, 5)))
    g, _ = builtin("sl2")
    assert lie_weight(graph, g, _killing_pairing(g)) == 0


def test_abelian_theta_vanishes():
    g, _ = builtin("abelian(3)")
    pairing = InvariantPairing((tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(3))
        for i in range(3)),))
    assert lie_weight(theta_graph(), g, pairing) == 0


def test_open_graph_rejected():
    graph = make_jacobi_graph((), (0, 1), ((0, 1),))
    g, _ = builtin("sl2")
    with pytest.raises(OpenGraph):
        lie_weight(graph, g, _killing_pairing(g))


def test_size_guards():
    g, _ = builtin("abelian(9)")
    pairing = InvariantPairing((tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(9))
        for i in range(9)),))
    with pytest.raises(DimensionTooLarge):
        lie_weight(theta_graph(), g, pairing)
    big = disjoint_union(disjoint_union(theta_graph(), theta_graph()),
                         disjoint_union(theta_graph(), theta_graph()))
    g2, _ = builtin("sl2")
    with pytest.raises(DimensionTooLarge):
        lie_weight(big, g2, _killing_pairing(g2))


def test_graded_pairing_weight_expands_order_by_order():
    g, _ = builtin("sl2")
    kill = tuple(tuple(row) for row in killing_form(g))
    half = tuple(tuple(c / 2 for c in row) for row in kill)
    graded = InvariantPairing((kill, half))
    weight = lie_weight(theta_graph(), g, graded)
    assert isinstance(weight, HSeries)
    assert weight.order == 1
    # With G = G0 (1 + h/2), the propagator scales by 1/(1 + h/2) and the
    # vertex by (1 + h/2); theta has 3 edges and 2 vertices, so the weight
    # is 3 * (1 + h/2)^(-1) truncated at h.
    assert weight.coeffs[0] == Fraction(3)
    assert weight.coeffs[1] == Fraction(-3, 2)


def test_classical_vertex_mode_drops_vertex_corrections():
    g, _ = builtin("sl2")
    kill = tuple(tuple(row) for row in killing_form(g))
    half = tuple(tuple(c / 2 for c in row) for row in kill)
    graded = InvariantPairing((kill, half))
    weight = lie_weight(theta_graph(), g, graded, classical_vertex=True)
    # Vertices stay at order 0: the h-coefficient comes from the edges
    # alone, 3 * (-2) * (1/2) = -3 relative to the constant term 3.
    assert weight.coeffs[0] == Fraction(3)
    assert weight.coeffs[1] == Fraction(-9, 2)


def test_weight_is_basis_independent():
    rng = random.Random(77)
    g, _ = builtin("sl2")
    dim = g.dim
    kill = killing_form(g)
    graphs = [theta_graph(),
              make_jacobi_graph(((0, 1, 2), (3, 4, 5)), (),
                                ((0, 1), (3, 4), (2, 5)))]
    for _ in range(3):
        while True:
            basis = [[Fraction(rng.randint(-2, 2)) for _ in range(dim)]
                     for _ in range(dim)]
            try:
                inverse = mat_inv(basis)
                break
            except ValueError:
                continue
        f = g.structure_constants
        new_f = [[[sum(basis[a][p] * basis[b][q] * f[p][q][r]
                       * inverse[r][c]
                       for p in range(dim) for q in range(dim)
                       for r in range(dim))
                   for c in range(dim)] for b in range(dim)]
                 for a in range(dim)]
        new_g = type(g)(dim, tuple(tuple(tuple(row) for row in plane)
                                   for plane in new_f))
        new_kill = [[sum(basis[a][p] * basis[b][q] * kill[p][q]
                         for p in range(dim) for q in range(dim))
                     for b in range(dim)] for a in range(dim)]
        pairing = InvariantPairing((tuple(tuple(row) for row in new_kill),))
        for graph in graphs:
            assert (lie_weight(graph, new_g, pairing)
                    == lie_weight(graph, g, _killing_pairing(g)))


def test_as_and_ihx_hold_for_builtins():
    rng = random.Random(510)
    family = generate_trivalent_family(6, rng)
    for g, _ in (builtin("sl2"), builtin("so3")):
        report = check_AS_IHX(g, _killing_pairing(g), family)
        assert report.ok, report.failures


def test_relation_failures_are_reported():
    # A fake "algebra" whose bracket tensor is all ones is neither
    # antisymmetric nor Jacobi; both relation families must flag it.
    from rtfactor.lie import LieAlgebra

    ones = tuple(tuple(tuple(Fraction(1) for _ in range(2))
                       for _ in range(2)) for _ in range(2))
    fake = LieAlgebra(2, ones)
    identity = InvariantPairing(((
        (Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(1)),
    ),))
    report = check_AS_IHX(fake, identity, [theta_graph()])
    assert not report.ok
    kinds = {kind for kind, _, _ in report.failures}
    assert kinds == {"AS", "IHX"}


def test_fermion_two_wheel_matches_direct_contraction():
    g, rho = builtin("sl2")
    pairing = _killing_pairing(g)
    inv = mat_inv([list(row) for row in pairing.orders[0]])
    dim = g.dim
    expected = Fraction(0)
    for a in range(dim):
        for b in range(dim):
            prod = mat_mul(rho.matrices[a], rho.matrices[b])
            expected -= inv[a][b] * sum(prod[i][i] for i in range(rho.dim))
    assert coupled_weight(fermion_wheel(2), g, rho, pairing) == expected


def test_vertexless_fermion_loop_counts_dimension():
    g, rho = builtin("sl2")
    graph = make_bicolored_graph(fermion_loops=1)
    assert coupled_weight(graph, g, rho, _killing_pairing(g)) == -rho.dim
    two = make_bicolored_graph(fermion_loops=2)
    assert coupled_weight(two, g, rho, _killing_pairing(g)) == rho.dim ** 2


def test_zero_representation_kills_coupled_weight():
    g, rho = builtin("sl2")
    zero_rho = Representation(rho.dim, tuple(
        tuple(tuple(Fraction(0) for _ in range(rho.dim))
              for _ in range(rho.dim)) for _ in g.structure_constants))
    assert coupled_weight(fermion_wheel(2), g, zero_rho,
                          _killing_pairing(g)) == 0


def test_open_fermion_path_rejected():
    coupling = ((0, 1, 2), (3, 4, 5))
    graph = make_bicolored_graph((), coupling, (), ((0, 3),), ((1, 5),))
    g, rho = builtin("sl2")
    with pytest.raises(OpenFermionPath):
        coupled_weight(graph, g, rho, _killing_pairing(g))


def test_coupled_wheel_cross_checks_one_loop_coefficients():
    # An abelian algebra with a single generator represented by a fixed
    # diagonal matrix turns the four-spoke wheel into -tr(M^4); the
    # series route computes the same trace inside its log-determinant.
    from rtfactor.clifford import todd_series, wheel_term

    g, _ = builtin("abelian(1)")
    m = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1)))
    rho = Representation(2, (m,))
    pairing = InvariantPairing((((Fraction(1),),),))
    order = 4
    wheel = wheel_term(rho, [Fraction(1)], order)
    todd = todd_series(order)
    half = HSeries.make(order, [Fraction(0), Fraction(-1, 2)])
    log_factor = series_log(series_exp(half) * todd)
    # wheel_term(s) = -sum_k log_factor[k] * tr(M^k) * s^k and the graph
    # weight of the 2k-wheel is -tr(M^(2k)).
    for spokes in (2, 4):
        weight = coupled_weight(fermion_wheel(spokes), g, rho, pairing)
        assert wheel.coeffs[spokes] == -log_factor.coeffs[spokes] * (-weight)


def test_symmetry_factor_pinned_values():
    assert symmetry_factor(theta_graph()) == 12
    assert symmetry_factor(disjoint_union(theta_graph(), theta_graph())) == 288
    strand = make_jacobi_graph((), (0, 1), ((0, 1),))
    assert symmetry_factor(strand) == 1


def test_symmetry_factor_legs_pin_the_attached_vertex():
    # A vertex with two legs and a self-loop would have a flip symmetry,
    # but the labeled legs freeze it; only the identity survives.
    graph = make_jacobi_graph(((0, 1, 2),), (3, 4, 5),
                              ((0, 3), (1, 4), (2, 5)))
    assert symmetry_factor(graph) == 1


def test_symmetry_factor_size_guard():
    graphs = theta_graph()
    for _ in range(4):
        graphs = disjoint_union(graphs, theta_graph())
    with pytest.raises(TooLarge):
        symmetry_factor(graphs)


def test_graph_json_round_trip():
    graph = theta_graph()
    again = graph_from_json(graph_to_json(graph))
    assert again == graph
    wheel = fermion_wheel(2)
    back = graph_from_json(graph_to_json(wheel))
    assert back == wheel


def test_graph_json_rejects_garbage():
    with pytest.raises(ParseError):
        graph_from_json("[1, 2]")
    with pytest.raises(ParseError):
        graph_from_json("{\"vertices\": [[0, 1]]}")
    with pytest.raises(ParseError):
        graph_from_json("not json")


def test_make_graph_validations():
    with pytest.raises(ParseError):
        make_jacobi_graph(((0, 1, 2),), (), ((0, 1),))  # dangling 2
    with pytest.raises(ParseError):
        make_jacobi_graph(((0, 1, 2), (2, 3, 4)), (),
                          ((0, 2), (1, 3), (2, 4)))  # label reuse
    with pytest.raises(ParseError):
        make_bicolored_graph((), ((0, 1, 2),), (), ((0, 0),), ((1, 2),))


def test_connectivity_recorded():
    assert theta_graph().connected
    assert not disjoint_union(theta_graph(), theta_graph()).connected
