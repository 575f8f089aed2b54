from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import alpha_below_one, alphas, connected_graphs, family_members

from alphaspectra.charpoly import (
    RationalPolynomial,
    charpoly_of_matrix,
    coalesce_phi,
    coates_digraph,
    compare_largest_roots,
    dp_poly,
    equivalent_root_difference,
    largest_real_root,
    neighbourhood_inclusion_difference,
    path_poly,
    path_wronskian,
    phi,
    phi_path,
    psi,
    rooted_product_phi,
    schwenk_vertex,
)
from alphaspectra.errors import VertexOutOfRange
from alphaspectra.families import Family, FamilySpec, build, cycle, path, star
from alphaspectra.graph import Graph
from alphaspectra.spectral import alpha_array, spectral_radius
from alphaspectra.transforms import coalesce

F = Fraction


def poly(*lowest_first) -> RationalPolynomial:
    return RationalPolynomial(coefficients=tuple(F(c) for c in lowest_first))


def test_coefficients_are_trimmed():
    assert poly(1, 2, 0, 0).coefficients == (1, 2)
    assert poly(0, 0).is_zero
    assert poly().degree == -1
    assert poly(3, 0, 5).degree == 2
    assert poly(3, 0, 5).leading_coefficient == 5


def test_arithmetic():
    x = RationalPolynomial.x()
    assert (x + 1) * (x - 1) == poly(-1, 0, 1)
    assert (x - 1) ** 3 == poly(-1, 3, -3, 1)
    assert ((x - 1) ** 3).exquo(x - 1) == poly(1, -2, 1)
    assert -(x + 1) == poly(-1, -1)
    assert 2 - x == poly(2, -1)
    assert (x**2 + 1)(F(1, 2)) == F(5, 4)


def test_json_round_trip():
    p = poly(F(-3, 8), F(1, 2), 1)
    assert p.to_json() == ["-3/8", "1/2", "1/1"]
    assert RationalPolynomial.from_json(p.to_json()) == p


def test_phi_of_an_edge(zoo):
    # (x - a)^2 - (1 - a)^2 = x^2 - 2 a x + 2 a - 1
    for alpha in (F(0), F(1, 3), F(1, 2)):
        assert phi(zoo["k2"], alpha) == poly(2 * alpha - 1, -2 * alpha, 1)


def test_phi_is_monic_of_degree_n(zoo):
    for g in zoo.values():
        p = phi(g, F(2, 5))
        assert p.degree == g.n
        assert p.leading_coefficient == 1


def test_psi_keeps_parent_degrees(zoo):
    # Deleting a leaf of P3 leaves K2 with loops alpha and 2 alpha
    alpha = F(1, 2)
    x = RationalPolynomial.x()
    expected = (x - alpha) * (x - 2 * alpha) - (1 - alpha) ** 2
    assert psi(path(3), {0}, alpha) == expected
    assert psi(path(3), {0}, alpha) != phi(path(2), alpha)
    assert psi(path(3), set(), alpha) == phi(path(3), alpha)
    with pytest.raises(VertexOutOfRange):
        psi(path(3), {3}, alpha)


def test_charpoly_of_small_matrices():
    assert charpoly_of_matrix([[0, 1], [1, 0]]) == poly(-1, 0, 1)
    assert charpoly_of_matrix([]) == RationalPolynomial.one()


@pytest.mark.parametrize("t", range(1, 16))
def test_path_polynomials(alpha_grid, t):
    for alpha in alpha_grid:
        assert phi_path(t, alpha) == phi(path(t), alpha)
        assert path_poly(t - 1, alpha) == psi(path(t), {0}, alpha)


def test_dp_poly_of_a_single_vertex():
    assert dp_poly(1, F(1, 2)).is_zero


@pytest.mark.parametrize("l", range(1, 11))
def test_path_wronskian_closed_form(alpha_grid, l):
    for alpha in alpha_grid:
        for k in range(1, l + 1):
            path_wronskian(k, l, alpha)


def test_path_wronskian_requires_ordered_indices():
    with pytest.raises(ValueError):
        path_wronskian(3, 2, F(1, 2))


@pytest.mark.parametrize(
    "name", ["p4", "k13", "c5", "k4", "theta_small", "inf_small"]
)
def test_schwenk_expansion_at_every_vertex(zoo, alpha_grid, name):
    g = zoo[name]
    for alpha in alpha_grid:
        digraph = coates_digraph(g, alpha)
        for v in range(g.n):
            assert schwenk_vertex(digraph, v) == phi(g, alpha)


def test_cycles_are_listed_once(zoo):
    digraph = coates_digraph(zoo["k4"], F(1, 2))
    cycles = list(digraph.cycles_through(0))
    # K4 has three triangles and three 4-cycles through a vertex
    assert len(cycles) == 6
    assert all(c[0] == 0 for c in cycles)


def test_coalescence_formula(alpha_grid):
    g, h = cycle(4), Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)])
    for alpha in alpha_grid:
        merged, _ = coalesce(g, 0, h, 1)
        formula = coalesce_phi(phi(g, alpha), psi(g, {0}, alpha), phi(h, alpha), psi(h, {1}, alpha))
        assert formula == phi(merged, alpha)


def test_rooted_product_formula(alpha_grid):
    spec = FamilySpec(family=Family.THETA_SMALL)
    g = build(spec)
    u, v = 0, 2
    h1, h2 = star(2), path(3)
    for alpha in alpha_grid:
        first, _ = coalesce(g, u, h1, 0)
        hosted, _ = coalesce(first, v, h2, 0)
        formula = rooted_product_phi(
            phi(g, alpha),
            psi(g, {u}, alpha),
            psi(g, {v}, alpha),
            psi(g, {u, v}, alpha),
            phi(h1, alpha),
            psi(h1, {0}, alpha),
            phi(h2, alpha),
            psi(h2, {0}, alpha),
        )
        assert formula == phi(hosted, alpha)


def test_equivalent_roots_identity(alpha_grid):
    # w1 and w3 of the small theta graph are swapped by an automorphism
    g = build(FamilySpec(family=Family.THETA_SMALL))
    for alpha in alpha_grid:
        direct, formula = equivalent_root_difference(g, 0, 2, path(3), 0, star(3), 0, alpha)
        assert direct == formula


def test_neighbourhood_inclusion_identity(alpha_grid):
    # N(0) - 2 = {1} is inside N(2) - 0 = {1, 3} on the path 0-1-2-3
    for alpha in alpha_grid:
        direct, formula = neighbourhood_inclusion_difference(path(4), 0, 2, alpha)
        assert direct == formula


def test_neighbourhood_inclusion_with_cycles(alpha_grid):
    g = build(FamilySpec(family=Family.THETA3, s=1, a=1, b=0))
    # w1 = 0 has N = {w2, w4}; w2 = 1 has N = {w1, w3, w4, s1, a1}
    for alpha in alpha_grid:
        direct, formula = neighbourhood_inclusion_difference(g, 0, 1, alpha)
        assert direct == formula
    with pytest.raises(ValueError):
        neighbourhood_inclusion_difference(g, 1, 0, F(1, 2))


def test_largest_real_root_brackets_radius(zoo):
    for g in (zoo["p4"], zoo["theta_small"], zoo["inf_small"]):
        low, high = largest_real_root(phi(g, F(1, 2)))
        rho = spectral_radius(g, F(1, 2)).radius
        assert float(low) - 1e-9 <= rho <= float(high) + 1e-9
        assert high - low <= F(1, 10**12)
    assert largest_real_root(poly(1, 0, 1)) is None


def test_compare_largest_roots():
    x = RationalPolynomial.x()
    assert compare_largest_roots((x - 2) * (x - 1), (x - 3)) == -1
    assert compare_largest_roots(x - 3, (x - 2) ** 2) == 1
    assert compare_largest_roots((x - 2) * (x + 5), (x - 2) ** 3) == 0
    # sqrt(2) against 1.4142
    assert compare_largest_roots(x**2 - 2, x - F(14142, 10000)) == 1


@settings(max_examples=25, deadline=None)
@given(g=connected_graphs(min_n=2, max_n=7), alpha=alphas)
def test_phi_roots_match_eigenvalues(g, alpha):
    p = phi(g, alpha)
    eigenvalues = np.linalg.eigvalsh(alpha_array(g, alpha))
    for value in eigenvalues:
        assert abs(float(p(F(value)))) < 1e-6 * (1 + max(abs(eigenvalues))) ** g.n


@settings(max_examples=25, deadline=None)
@given(g=connected_graphs(min_n=3, max_n=7), alpha=alpha_below_one)
def test_schwenk_expansion_on_random_graphs(g, alpha):
    assert schwenk_vertex(coates_digraph(g, alpha), 0) == phi(g, alpha)


ORACLE_ALPHAS = [F(0), F(1, 3), F(1, 2), F(2, 3)]
SMALL_MEMBERS = family_members(12)


@pytest.mark.parametrize("l", range(2, 11))
def test_path_wronskian_is_positive_beyond_two(alpha_grid, l):
    for alpha in alpha_grid:
        for k in range(1, l):
            w = path_wronskian(k, l, alpha)
            for x in (F(2), F(5, 2), F(3), F(4), F(10)):
                assert w(x) > 0, (k, l, alpha, x)


@settings(max_examples=50, deadline=None)
@given(g=connected_graphs(min_n=3, max_n=8), alpha=alphas, data=st.data())
def test_deleting_edges_raises_phi_beyond_the_radius(g, alpha, data):
    # A_alpha(H) <= A_alpha(G) entrywise for a spanning subgraph H
    removed = data.draw(st.sets(st.sampled_from(sorted(g.edges)), min_size=1))
    h = Graph.from_edges(g.n, g.edges - removed)
    phi_g, phi_h = phi(g, alpha), phi(h, alpha)
    _, start = largest_real_root(phi_g)
    for k in range(11):
        x = start + F(k, 10)
        assert phi_h(x) >= phi_g(x)


def _hubs(g: Graph) -> list[int]:
    """Vertex 0 and a vertex of largest degree"""
    return sorted({0, max(range(g.n), key=lambda v: g.degrees[v])})


@pytest.mark.slow
@pytest.mark.parametrize("spec", SMALL_MEMBERS, ids=str)
def test_schwenk_expansion_on_family_members(spec):
    g = build(spec)
    for alpha in ORACLE_ALPHAS:
        digraph = coates_digraph(g, alpha)
        for v in _hubs(g):
            assert schwenk_vertex(digraph, v) == phi(g, alpha)


@pytest.mark.slow
@pytest.mark.parametrize("spec", SMALL_MEMBERS, ids=str)
def test_coalescence_on_family_members(spec):
    g = build(spec)
    h = star(2)
    for alpha in ORACLE_ALPHAS:
        for u in _hubs(g):
            merged, _ = coalesce(g, u, h, 1)
            formula = coalesce_phi(
                phi(g, alpha), psi(g, {u}, alpha), phi(h, alpha), psi(h, {1}, alpha)
            )
            assert formula == phi(merged, alpha)


@pytest.mark.slow
@pytest.mark.parametrize("spec", SMALL_MEMBERS, ids=str)
def test_rooted_product_on_family_members(spec):
    g = build(spec)
    u, v = 0, g.n - 1
    h1, h2 = star(2), path(3)
    for alpha in ORACLE_ALPHAS:
        first, _ = coalesce(g, u, h1, 0)
        hosted, _ = coalesce(first, v, h2, 0)
        formula = rooted_product_phi(
            phi(g, alpha),
            psi(g, {u}, alpha),
            psi(g, {v}, alpha),
            psi(g, {u, v}, alpha),
            phi(h1, alpha),
            psi(h1, {0}, alpha),
            phi(h2, alpha),
            psi(h2, {0}, alpha),
        )
        assert formula == phi(hosted, alpha)
