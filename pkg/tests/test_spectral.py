from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from strategies import alphas, connected_graphs, family_members

from alphaspectra.charpoly import largest_real_root, phi
from alphaspectra.errors import AlphaOutOfRange, DisconnectedGraph, NoConvergence, NotUnitVector
from alphaspectra.families import build, complete, cycle, path, star, ustar2
from alphaspectra.graph import pendant_paths
from alphaspectra.spectral import (
    alpha_array,
    alpha_matrix,
    as_alpha,
    perron_vector,
    rayleigh_quotient,
    signless_laplacian_radius,
    spectral_radius,
)


def test_alpha_is_read_as_decimal():
    assert as_alpha(0.1) == Fraction(1, 10)
    assert as_alpha("0.3") == Fraction(3, 10)
    assert as_alpha("1/3") == Fraction(1, 3)
    with pytest.raises(AlphaOutOfRange):
        as_alpha(1.5)
    with pytest.raises(AlphaOutOfRange):
        as_alpha("a half")


def test_alpha_matrix_entries(zoo):
    a = alpha_matrix(zoo["p4"], Fraction(1, 4))
    assert a.entries[0] == (Fraction(1, 4), Fraction(3, 4), 0, 0)
    assert a.entries[1][1] == Fraction(1, 2)
    assert a.row_sums() == tuple(Fraction(d) for d in zoo["p4"].degrees)
    assert np.allclose(a.array, alpha_array(zoo["p4"], Fraction(1, 4)))


def test_alpha_zero_is_adjacency(zoo):
    assert np.array_equal(
        alpha_array(zoo["k4"], 0), np.ones((4, 4)) - np.eye(4)
    )


@pytest.mark.parametrize("alpha", ["0", "0.3", "0.5", "0.9", "1"])
def test_regular_graphs_have_radius_degree(alpha):
    assert spectral_radius(cycle(5), alpha).radius == pytest.approx(2, abs=1e-9)
    assert spectral_radius(complete(5), alpha).radius == pytest.approx(4, abs=1e-9)


def test_star_radius():
    assert spectral_radius(star(4), 0).radius == pytest.approx(2, abs=1e-9)
    # Q(K_{1,s}) has largest eigenvalue s + 1
    assert signless_laplacian_radius(star(3)) == pytest.approx(4, abs=1e-8)


def test_single_vertex():
    result = spectral_radius(star(0), Fraction(1, 2))
    assert result.radius == 0
    assert result.perron == (1.0,)


def test_perron_vector_is_positive_unit(zoo, config):
    result = spectral_radius(zoo["inf_small"], Fraction(1, 3), settings=config)
    assert result.is_positive
    assert np.linalg.norm(result.vector) == pytest.approx(1, abs=1e-12)
    assert result.within(config.TOL)


def test_rayleigh_quotient_at_perron_vector(zoo):
    x = perron_vector(zoo["theta_small"], Fraction(1, 2))
    assert rayleigh_quotient(zoo["theta_small"], Fraction(1, 2), x) == pytest.approx(
        spectral_radius(zoo["theta_small"], Fraction(1, 2)).radius, abs=1e-9
    )
    with pytest.raises(NotUnitVector):
        rayleigh_quotient(zoo["theta_small"], Fraction(1, 2), 2 * x)
    with pytest.raises(NotUnitVector):
        rayleigh_quotient(zoo["theta_small"], Fraction(1, 2), x[:3])


def test_disconnected_graph_raises(zoo):
    with pytest.raises(DisconnectedGraph):
        spectral_radius(zoo["two_edges"], 0)


def test_iteration_budget(zoo):
    with pytest.raises(NoConvergence) as e:
        spectral_radius(zoo["p4"], 0, tol=1e-14, max_iters=1)
    assert e.value.max_iters == 1


def test_correction_of_the_signless_laplacian_claim(table1_pair):
    b3, b5 = table1_pair
    rho_b3 = spectral_radius(b3, Fraction(1, 2)).radius
    rho_b5 = spectral_radius(b5, Fraction(1, 2)).radius
    assert rho_b3 == pytest.approx(4.6201, abs=5e-4)
    assert rho_b5 == pytest.approx(4.6171, abs=5e-4)
    assert signless_laplacian_radius(b3) > signless_laplacian_radius(b5)


@pytest.mark.parametrize(
    "alpha, dr",
    [
        ("0", -0.00353),
        ("0.1", -0.0016),
        ("0.2", 0.00053),
        ("0.3", 0.00237),
        ("0.4", 0.00327),
        ("0.5", 0.00302),
        ("0.6", 0.00207),
        ("0.7", 0.00108),
        ("0.8", 0.00042),
    ],
)
def test_table1_differences(table1_pair, alpha, dr):
    b3, b5 = table1_pair
    difference = spectral_radius(b3, alpha).radius - spectral_radius(b5, alpha).radius
    assert difference == pytest.approx(dr, abs=2e-5)
    assert np.sign(difference) == np.sign(dr)


@settings(max_examples=50, deadline=None)
@given(g=connected_graphs(min_n=2, max_n=9), alpha=alphas)
def test_radius_matches_dense_eigensolver(g, alpha):
    result = spectral_radius(g, alpha)
    expected = np.linalg.eigvalsh(alpha_array(g, alpha))[-1]
    assert result.radius == pytest.approx(expected, abs=1e-8)
    assert result.residual <= 1e-10


@settings(max_examples=30, deadline=None)
@given(g=connected_graphs(min_n=2, max_n=8))
def test_radius_between_average_and_max_degree(g):
    # d_avg <= rho_alpha <= d_max for every alpha
    for alpha in ("0", "0.25", "0.5", "0.75", "1"):
        rho = spectral_radius(g, alpha).radius
        assert 2 * g.m / g.n - 1e-8 <= rho <= max(g.degrees) + 1e-8


SMALL_MEMBERS = family_members(12)
# C3 is Delta1(0;0,0) and has radius exactly 2
NOT_CYCLES = [spec for spec in SMALL_MEMBERS if set(build(spec).degrees) != {2}]
MONOTONE_GRID = [Fraction(k, 8) for k in range(9)]


@pytest.mark.parametrize(
    "g",
    [path(120), path(200), ustar2(200, 150)],
    ids=["p120", "p200", "ustar2-200-150"],
)
@pytest.mark.parametrize("alpha", ["0", "0.5", "0.9"])
def test_long_graphs_converge(g, alpha):
    result = spectral_radius(g, alpha)
    assert result.within(1e-10)
    assert result.iterations < 1000
    expected = np.linalg.eigvalsh(alpha_array(g, alpha))[-1]
    assert result.radius == pytest.approx(expected, abs=1e-8)


@pytest.mark.parametrize("n", [120, 200])
def test_adjacency_radius_of_long_paths(n):
    assert spectral_radius(path(n), 0).radius == pytest.approx(
        2 * np.cos(np.pi / (n + 1)), abs=1e-9
    )


@settings(max_examples=40, deadline=None)
@given(g=connected_graphs(min_n=2, max_n=10))
def test_radius_is_monotone_in_alpha(g):
    radii = [spectral_radius(g, alpha).radius for alpha in MONOTONE_GRID]
    for smaller, larger in zip(radii, radii[1:]):
        assert larger >= smaller - 1e-10


@pytest.mark.parametrize("spec", NOT_CYCLES, ids=str)
def test_cyclic_family_members_exceed_two(spec, alpha_grid):
    g = build(spec)
    for alpha in alpha_grid:
        assert spectral_radius(g, alpha).radius > 2


@pytest.mark.parametrize("name", ["p4", "k13", "c5", "k4", "theta_small", "inf_small"])
def test_no_unit_vector_beats_the_radius(zoo, alpha_grid, name):
    g = zoo[name]
    rng = np.random.default_rng(7)
    for alpha in alpha_grid:
        rho = spectral_radius(g, alpha).radius
        for _ in range(100):
            x = rng.random(g.n)
            x /= np.linalg.norm(x)
            assert rayleigh_quotient(g, alpha, x) <= rho + 1e-10


@pytest.mark.parametrize("spec", NOT_CYCLES, ids=str)
def test_perron_entries_decrease_along_pendant_paths(spec, alpha_grid):
    g = build(spec)
    for alpha in alpha_grid:
        x = perron_vector(g, alpha)
        for p in pendant_paths(g):
            entries = x[list(p.vertices)]
            assert np.all(np.diff(entries) < 0), (str(p.vertices), alpha)


@pytest.mark.slow
@pytest.mark.parametrize("spec", SMALL_MEMBERS, ids=str)
def test_radius_is_the_largest_root_of_phi(spec, alpha_grid):
    g = build(spec)
    for alpha in alpha_grid:
        low, high = largest_real_root(phi(g, alpha))
        rho = spectral_radius(g, alpha).radius
        assert float(low) - 1e-9 <= rho <= float(high) + 1e-9
