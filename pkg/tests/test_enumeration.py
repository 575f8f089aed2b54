from fractions import Fraction

import pytest
from pydantic import ValidationError

from alphaspectra import enumeration
from alphaspectra.enumeration import (
    SearchSpace,
    argmax_radius,
    census,
    compare_pair,
    conjecture_probe,
    enumerate_by_subsets,
    enumerate_graphs,
    family_agreement,
    predicted_families,
    read_census,
    write_census,
)
from alphaspectra.errors import CapExceeded, EmptySpace, GapBelowResolution
from alphaspectra.families import bstar3, cycle, ustar2
from alphaspectra.graph import Graph, cyclomatic_number, diameter, is_isomorphic, to_graph6
from alphaspectra.settings import Settings

# Connected graphs with n vertices and n (resp. n + 1) edges
UNICYCLIC_COUNTS = {3: 1, 4: 2, 5: 5, 6: 13, 7: 33}
BICYCLIC_COUNTS = {4: 1, 5: 5, 6: 19, 7: 67}


def spaces(n_max: int):
    for c in (1, 2):
        for n in range(3, n_max + 1):
            for d in range(1, n - 1):
                yield SearchSpace(n=n, d=d, cyclomatic=c)


def test_search_space_validation():
    assert str(SearchSpace(n=7, d=3, cyclomatic=1)) == "U(7,3)"
    assert str(SearchSpace(n=7, d=3, cyclomatic=2)) == "B(7,3)"
    assert SearchSpace(n=7, d=3, cyclomatic=2).m == 8
    with pytest.raises(ValidationError):
        SearchSpace(n=3, d=2, cyclomatic=1)
    with pytest.raises(ValidationError):
        SearchSpace(n=6, d=2, cyclomatic=3)


def test_census_sizes():
    for n, count in UNICYCLIC_COUNTS.items():
        assert len(census(n, 1)) == count
    for n, count in BICYCLIC_COUNTS.items():
        assert len(census(n, 2)) == count
    assert census(3, 2) == ()


def test_smallest_spaces():
    assert list(enumerate_graphs(SearchSpace(n=3, d=1, cyclomatic=1))) == [
        census(3, 1)[0]
    ]
    assert is_isomorphic(census(3, 1)[0], cycle(3))
    assert list(enumerate_graphs(SearchSpace(n=4, d=1, cyclomatic=2))) == []
    (k4_minus_edge,) = enumerate_graphs(SearchSpace(n=4, d=2, cyclomatic=2))
    assert k4_minus_edge.m == 5


def test_census_members_are_in_their_space():
    for space in spaces(7):
        for g in enumerate_graphs(space):
            assert g.n == space.n
            assert diameter(g) == space.d
            assert cyclomatic_number(g) == space.cyclomatic


@pytest.mark.parametrize("space", list(spaces(6)), ids=str)
def test_generation_orders_agree(space):
    grown = {g.certificate for g in enumerate_graphs(space)}
    subsets = [g.certificate for g in enumerate_by_subsets(space)]
    assert len(subsets) == len(set(subsets))
    assert grown == set(subsets)


@pytest.mark.slow
@pytest.mark.parametrize(
    "space", [s for s in spaces(7) if s.n == 7], ids=str
)
def test_generation_orders_agree_at_order_7(space):
    grown = {g.certificate for g in enumerate_graphs(space)}
    assert grown == {g.certificate for g in enumerate_by_subsets(space)}


def test_cap():
    capped = Settings(ENUMERATION_CAP=5)
    with pytest.raises(CapExceeded):
        list(enumerate_graphs(SearchSpace(n=6, d=2, cyclomatic=1), capped))
    with pytest.raises(CapExceeded):
        argmax_radius(SearchSpace(n=6, d=2, cyclomatic=1), 0, settings=capped)


def test_empty_space():
    with pytest.raises(EmptySpace):
        argmax_radius(SearchSpace(n=4, d=1, cyclomatic=2), Fraction(1, 2))


def test_unicyclic_maximiser():
    space = SearchSpace(n=7, d=3, cyclomatic=1)
    report = argmax_radius(space, "0.5")
    assert is_isomorphic(report.maximizer, ustar2(7, 3))
    assert report.census == len(list(enumerate_graphs(space)))
    assert report.runner_up_gap > 0
    payload = report.to_json()
    assert payload["alpha"] == "1/2"
    assert payload["maximizer"] == to_graph6(report.maximizer)
    assert payload["space"] == {"n": 7, "d": 3, "cyclomatic": 1}


def test_single_member_space_has_no_gap():
    report = argmax_radius(SearchSpace(n=3, d=1, cyclomatic=1), 0)
    assert report.census == 1
    assert report.to_json()["gap"] is None


def test_near_ties_are_settled_exactly():
    space = SearchSpace(n=6, d=3, cyclomatic=1)
    with pytest.warns(UserWarning, match="comparing characteristic polynomials"):
        wide = argmax_radius(space, "0.5", tie_tol=10.0)
    assert wide.maximizer == argmax_radius(space, "0.5").maximizer
    assert len(wide.near_ties) == wide.census - 1


def test_gap_is_not_negative_when_exact_order_overrules_floats(monkeypatch):
    space = SearchSpace(n=6, d=3, cyclomatic=1)
    truth = argmax_radius(space, "0.5")
    exact_radii = enumeration._radii

    def runner_up_ahead(graphs, alpha, cfg):
        radii = exact_radii(graphs, alpha, cfg)
        order = sorted(range(len(radii)), key=lambda i: -radii[i])
        radii[order[1]] = radii[order[0]] + 5e-8
        return radii

    monkeypatch.setattr(enumeration, "_radii", runner_up_ahead)
    with pytest.warns(UserWarning, match="comparing characteristic polynomials"):
        report = argmax_radius(space, "0.5")
    assert report.maximizer == truth.maximizer
    assert report.runner_up_gap == 0.0


def test_compare_pair_reproduces_table1_sign(table1_pair):
    b3, b5 = table1_pair
    at_zero = compare_pair(b3, b5, 0)
    assert at_zero.sign == -1
    assert at_zero.gap == pytest.approx(-0.00353, abs=2e-5)
    assert at_zero.bound < 1e-6
    assert compare_pair(b3, b5, "0.5").sign == 1


def test_compare_pair_identical_graphs(table1_pair):
    b3, _ = table1_pair
    with pytest.raises(GapBelowResolution) as e:
        compare_pair(b3, b3, "0.3")
    assert e.value.gap == 0


def test_predicted_families():
    assert set(predicted_families(SearchSpace(n=7, d=3, cyclomatic=2))) == {"bstar3", "bstar5"}
    assert set(predicted_families(SearchSpace(n=7, d=5, cyclomatic=2))) == {"bstar5"}
    assert set(predicted_families(SearchSpace(n=7, d=2, cyclomatic=2))) == {"bstar3"}
    assert set(predicted_families(SearchSpace(n=7, d=5, cyclomatic=1))) == {"ustar2"}


def test_agreement_without_prediction():
    with pytest.warns(UserWarning, match="No predicted extremal family"):
        (record,) = family_agreement(3, 1, 1, ["0.5"])
    assert record.agrees is None


def test_agreement_on_a_small_space():
    records = family_agreement(7, 3, 1, ["0", "0.5"])
    assert [r.alpha for r in records] == [Fraction(0), Fraction(1, 2)]
    assert all(r.agrees and r.matches == "ustar2" for r in records)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(5, 10))
def test_unicyclic_maximisers(n):
    for d in range(2, n - 1):
        for record in family_agreement(n, d, 1, ["0", "0.25", "0.5", "0.75"]):
            assert record.matches == "ustar2", (n, d, record.alpha)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(5, 10))
def test_bicyclic_maximisers(n):
    for d in range(2, n - 1):
        space = SearchSpace(n=n, d=d, cyclomatic=2)
        for alpha in ("0", "0.25", "0.5", "0.75"):
            best = argmax_radius(space, alpha).maximizer
            assert any(
                is_isomorphic(best, g) for g in predicted_families(space).values()
            ), (n, d, alpha)
        half = argmax_radius(space, "0.5").maximizer
        if d <= n - 3:
            assert is_isomorphic(half, bstar3(n, d))


def test_conjecture_probe_records():
    records = conjecture_probe([6], alphas=("0.75",))
    assert [(r.n, r.d) for r in records] == [(6, 2), (6, 3)]
    assert all(r.alpha == Fraction(3, 4) for r in records)


def test_census_snapshot(tmp_path):
    target = tmp_path / "u6.g6"
    graphs = list(enumerate_graphs(SearchSpace(n=6, d=3, cyclomatic=1)))
    assert write_census(graphs, target) == len(graphs)
    assert read_census(target) == graphs
    with open(target, "a", encoding="ascii") as f:
        f.write(to_graph6(Graph.from_edges(4, [(0, 1), (2, 3)])) + "\n")
    assert read_census(target) == graphs
