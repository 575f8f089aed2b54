"""Exhaustive census of unicyclic and bicyclic graphs with a given diameter.

Two independent generation orders are provided. enumerate_graphs grows every
c-cyclic graph of order k from those of order k - 1 by hanging a pendant
vertex, seeded at each order with the cycle, infinity and theta cores.
enumerate_by_subsets filters all m-subsets of the edges of K_n and is only
meant as a slow cross-check.
"""

import logging
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, repeat
from pathlib import Path
from typing import Annotated, Iterable, Iterator, Literal, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic.functional_validators import AfterValidator

from .charpoly import compare_largest_roots, phi
from .errors import CapExceeded, EmptySpace, GapBelowResolution, InvalidFamilyParams
from .families import Family, FamilySpec, build, bstar3, bstar5, ustar2
from .graph import (
    Graph,
    canonical_form,
    diameter,
    is_connected,
    is_isomorphic,
    read_graph6_lines,
    to_graph6,
    write_graph6_lines,
)
from .settings import Settings
from .spectral import AlphaLike, as_alpha, spectral_radius
from .transforms import attach_pendant
from .validators import val_alpha, val_cyclomatic, val_positive_int

logger = logging.getLogger(__name__)


class SearchSpace(BaseModel):
    """Connected graphs of order n, diameter d and cyclomatic number 1 or 2"""

    n: Annotated[int, AfterValidator(val_positive_int)]
    d: Annotated[int, AfterValidator(val_positive_int)]
    cyclomatic: Annotated[int, AfterValidator(val_cyclomatic)] = Field(
        description="1 for U(n,d), 2 for B(n,d)"
    )

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _feasible_order(self):
        if self.n < 3 or not 1 <= self.d <= self.n - 2:
            raise ValueError(
                f"Search space needs n >= 3 and 1 <= d <= n - 2, got n={self.n}, d={self.d}"
            )
        return self

    @property
    def m(self) -> int:
        return self.n + self.cyclomatic - 1

    def __str__(self) -> str:
        name = "U" if self.cyclomatic == 1 else "B"
        return f"{name}({self.n},{self.d})"


def _check_cap(space: SearchSpace, settings: Optional[Settings]) -> None:
    cfg = settings or Settings()
    if space.n > cfg.ENUMERATION_CAP:
        raise CapExceeded(
            f"Order {space.n} exceeds the enumeration cap {cfg.ENUMERATION_CAP}"
        )


def _cores(k: int, cyclomatic: int) -> list[Graph]:
    """Pendant-free c-cyclic graphs of order k"""
    if cyclomatic == 1:
        return [build(FamilySpec(family=Family.CYCLE, n=k))] if k >= 3 else []
    cores = []
    for n1 in range(3, k + 1):
        for n2 in range(3, n1 + 1):
            n3 = k + 2 - n1 - n2
            if n3 >= 1:
                cores.append(
                    build(FamilySpec(family=Family.INFINITY_BASE, n1=n1, n2=n2, n3=n3))
                )
    for n1 in range(2, k + 1):
        for n2 in range(2, n1 + 1):
            n3 = k + 1 - n1 - n2
            if 1 <= n3 <= n2:
                cores.append(
                    build(FamilySpec(family=Family.THETA_BASE, n1=n1, n2=n2, n3=n3))
                )
    return cores


@lru_cache(maxsize=None)
def census(n: int, cyclomatic: int) -> tuple[Graph, ...]:
    """Canonical forms of all connected c-cyclic graphs of order n, sorted by certificate"""
    if n < (3 if cyclomatic == 1 else 4):
        return ()
    found = {g.certificate: canonical_form(g) for g in _cores(n, cyclomatic)}
    for g in census(n - 1, cyclomatic):
        for v in range(g.n):
            grown = attach_pendant(g, v).graph
            if grown.certificate not in found:
                found[grown.certificate] = canonical_form(grown)
    logger.info("Order %d: %d graphs with cyclomatic number %d", n, len(found), cyclomatic)
    return tuple(found[key] for key in sorted(found))


def enumerate_graphs(
    space: SearchSpace, settings: Optional[Settings] = None
) -> Iterator[Graph]:
    """Every isomorphism class of the search space exactly once, in canonical form.

    Args:
        space (SearchSpace): Order, diameter and cyclomatic number
        settings (Settings, optional): Source of the enumeration cap

    Yields:
        Graph

    Raises:
        CapExceeded
    """
    _check_cap(space, settings)
    for g in census(space.n, space.cyclomatic):
        if diameter(g) == space.d:
            yield g


def _connected_edge_set(n: int, chosen: Sequence[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = n
    for u, v in chosen:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            components -= 1
    return components == 1


def enumerate_by_subsets(
    space: SearchSpace, settings: Optional[Settings] = None
) -> Iterator[Graph]:
    """Same classes as enumerate_graphs, from all m-subsets of E(K_n). Slow.

    Raises:
        CapExceeded
    """
    _check_cap(space, settings)
    pairs = list(combinations(range(space.n), 2))
    seen = set()
    for chosen in combinations(pairs, space.m):
        if not _connected_edge_set(space.n, chosen):
            continue
        g = Graph.from_edges(space.n, chosen)
        if diameter(g) != space.d or g.certificate in seen:
            continue
        seen.add(g.certificate)
        yield canonical_form(g)


def _radius(g: Graph, alpha: Fraction, tol: float, max_iters: int) -> float:
    return spectral_radius(g, alpha, tol=tol, max_iters=max_iters).radius


def _radii(graphs: Sequence[Graph], alpha: Fraction, cfg: Settings) -> list[float]:
    if cfg.THREADS > 1 and len(graphs) > 1:
        chunk = max(1, len(graphs) // (4 * cfg.THREADS))
        with ProcessPoolExecutor(max_workers=cfg.THREADS) as pool:
            return list(
                pool.map(
                    _radius,
                    graphs,
                    repeat(alpha),
                    repeat(cfg.TOL),
                    repeat(cfg.MAX_ITERS),
                    chunksize=chunk,
                )
            )
    return [_radius(g, alpha, cfg.TOL, cfg.MAX_ITERS) for g in graphs]


class ExtremalReport(BaseModel):
    """Maximiser of the alpha-spectral radius over a census"""

    space: SearchSpace
    alpha: Annotated[Fraction, AfterValidator(val_alpha)]
    maximizer: Graph = Field(description="Canonical form of the maximiser")
    radius: float
    runner_up_gap: float = Field(
        description=(
            "Radius of the maximiser minus the best other radius, never negative, "
            "inf for a census of one"
        )
    )
    near_ties: list[Graph] = Field(
        default_factory=list,
        description="Other graphs within the tie tolerance, resolved by exact comparison",
    )
    exact_ties: list[Graph] = Field(
        default_factory=list,
        description="Non-isomorphic graphs whose largest characteristic roots coincide exactly",
    )
    census: int = Field(description="Number of isomorphism classes examined")

    model_config = ConfigDict(frozen=True)

    def to_json(self) -> dict:
        return {
            "space": {"n": self.space.n, "d": self.space.d, "cyclomatic": self.space.cyclomatic},
            "alpha": str(self.alpha),
            "maximizer": to_graph6(self.maximizer),
            "radius": self.radius,
            "gap": None if math.isinf(self.runner_up_gap) else self.runner_up_gap,
            "near_ties": [to_graph6(g) for g in self.near_ties],
            "exact_ties": [to_graph6(g) for g in self.exact_ties],
            "census": self.census,
        }


def argmax_radius(
    space: SearchSpace,
    alpha: AlphaLike,
    tie_tol: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> ExtremalReport:
    """Find the graph of largest alpha-spectral radius in a search space.

    Radii closer than tie_tol to the numerical maximum are re-ordered by
    comparing the largest real roots of the exact characteristic polynomials.
    Ties among equal floats are broken by the canonical certificate, so the
    report is deterministic.

    Args:
        space (SearchSpace): Graphs to examine
        alpha (AlphaLike): 0 <= alpha <= 1
        tie_tol (float, optional): Defaults to Settings.TIE_TOL
        settings (Settings, optional)

    Returns:
        ExtremalReport

    Raises:
        CapExceeded
        EmptySpace
    """
    cfg = settings or Settings()
    tie_tol = cfg.TIE_TOL if tie_tol is None else tie_tol
    alpha = as_alpha(alpha)
    graphs = list(enumerate_graphs(space, cfg))
    if not graphs:
        raise EmptySpace(f"{space} contains no graph")
    radii = _radii(graphs, alpha, cfg)
    ranked = sorted(zip(radii, graphs), key=lambda t: (-t[0], t[1].certificate))
    top = ranked[0][0]
    close = [g for r, g in ranked if top - r <= tie_tol]

    best = close[0]
    exact_ties: list[Graph] = []
    if len(close) > 1:
        if cfg.SHOW_WARNINGS:
            warnings.warn(
                f"{len(close)} graphs of {space} lie within {tie_tol} of the maximum at "
                f"alpha={alpha}; comparing characteristic polynomials exactly",
                UserWarning,
            )
        polys = {g.certificate: phi(g, alpha) for g in close}
        for g in close[1:]:
            if compare_largest_roots(polys[g.certificate], polys[best.certificate]) > 0:
                best = g
        exact_ties = [
            g
            for g in close
            if g is not best
            and compare_largest_roots(polys[g.certificate], polys[best.certificate]) == 0
        ]
        if exact_ties:
            warnings.warn(
                f"Exact tie in {space} at alpha={alpha} between {to_graph6(best)} and "
                f"{[to_graph6(g) for g in exact_ties]}",
                UserWarning,
            )

    radius = next(r for r, g in ranked if g is best)
    others = [r for r, g in ranked if g is not best]
    return ExtremalReport(
        space=space,
        alpha=alpha,
        maximizer=best,
        radius=radius,
        # exact comparison may crown a graph whose float radius trails a near tie
        runner_up_gap=max(0.0, radius - max(others)) if others else math.inf,
        near_ties=[g for g in close if g is not best],
        exact_ties=exact_ties,
        census=len(graphs),
    )


class PairComparison(BaseModel):
    alpha: Annotated[Fraction, AfterValidator(val_alpha)]
    rho_g: float
    rho_h: float
    gap: float = Field(description="rho_g - rho_h")
    bound: float = Field(description="Certified error of the gap")

    model_config = ConfigDict(frozen=True)

    @property
    def sign(self) -> int:
        return 1 if self.gap > 0 else -1


def compare_pair(
    g: Graph, h: Graph, alpha: AlphaLike, settings: Optional[Settings] = None
) -> PairComparison:
    """Order rho_alpha(g) and rho_alpha(h) with a certified error bound.

    For a unit vector x with ||A x - rho x||_2 = r some eigenvalue lies within r
    of rho, and for the positive Perron iterate that eigenvalue is the radius.
    The bound is twice the sum of the 2-norm residuals of both sides.

    Raises:
        DisconnectedGraph
        GapBelowResolution: |gap| does not exceed the bound
    """
    cfg = settings or Settings()
    alpha = as_alpha(alpha)
    first = spectral_radius(g, alpha, settings=cfg)
    second = spectral_radius(h, alpha, settings=cfg)
    gap = first.radius - second.radius
    bound = 2 * (math.sqrt(g.n) * first.residual + math.sqrt(h.n) * second.residual)
    if abs(gap) <= bound:
        raise GapBelowResolution(abs(gap), bound)
    return PairComparison(
        alpha=alpha, rho_g=first.radius, rho_h=second.radius, gap=gap, bound=bound
    )


class AgreementRecord(BaseModel):
    """Brute-force maximiser of one search space against the predicted families"""

    space: SearchSpace
    alpha: Annotated[Fraction, AfterValidator(val_alpha)]
    maximizer: str = Field(description="graph6 of the maximiser")
    expected: list[str] = Field(description="Feasible predicted families")
    matches: Optional[str] = Field(default=None, description="Predicted family isomorphic to the maximiser")

    model_config = ConfigDict(frozen=True)

    @property
    def agrees(self) -> Optional[bool]:
        """None when no predicted family exists for the space"""
        return None if not self.expected else self.matches is not None


def predicted_families(space: SearchSpace) -> dict[str, Graph]:
    """Extremal family members that exist in the space: U2* or B3* and B5*"""
    if space.cyclomatic == 1:
        builders = {Family.USTAR2.value: ustar2}
    else:
        builders = {Family.BSTAR3.value: bstar3, Family.BSTAR5.value: bstar5}
    found = {}
    for name, make in builders.items():
        try:
            found[name] = make(space.n, space.d)
        except InvalidFamilyParams:
            logger.debug("%s does not exist in %s", name, space)
    return found


def family_agreement(
    n: int,
    d: int,
    cyclomatic: Literal[1, 2],
    alphas: Iterable[AlphaLike],
    settings: Optional[Settings] = None,
) -> list[AgreementRecord]:
    """Compare the brute-force maximiser with U2*(n,d) or {B3*(n,d), B5*(n,d)} per alpha

    Raises:
        CapExceeded
        EmptySpace
    """
    cfg = settings or Settings()
    space = SearchSpace(n=n, d=d, cyclomatic=cyclomatic)
    predicted = predicted_families(space)
    if not predicted and cfg.SHOW_WARNINGS:
        warnings.warn(f"No predicted extremal family exists in {space}", UserWarning)
    records = []
    for alpha in alphas:
        report = argmax_radius(space, alpha, settings=cfg)
        match = next(
            (name for name, g in predicted.items() if is_isomorphic(g, report.maximizer)),
            None,
        )
        records.append(
            AgreementRecord(
                space=space,
                alpha=report.alpha,
                maximizer=to_graph6(report.maximizer),
                expected=list(predicted),
                matches=match,
            )
        )
    return records


class ProbeRecord(BaseModel):
    n: int
    d: int
    alpha: Annotated[Fraction, AfterValidator(val_alpha)]
    maximizer: str
    is_bstar3: bool
    runner_up_gap: float

    model_config = ConfigDict(frozen=True)


def conjecture_probe(
    orders: Iterable[int],
    alphas: Iterable[AlphaLike] = ("0.6", "0.75", "0.9"),
    settings: Optional[Settings] = None,
) -> list[ProbeRecord]:
    """Record whether B3*(n,d) maximises over B(n,d) for 1/2 < alpha < 1. Nothing is asserted."""
    cfg = settings or Settings()
    alphas = [as_alpha(a) for a in alphas]
    records = []
    for n in orders:
        for d in range(2, n - 2):
            space = SearchSpace(n=n, d=d, cyclomatic=2)
            target = bstar3(n, d)
            for alpha in alphas:
                report = argmax_radius(space, alpha, settings=cfg)
                records.append(
                    ProbeRecord(
                        n=n,
                        d=d,
                        alpha=alpha,
                        maximizer=to_graph6(report.maximizer),
                        is_bstar3=is_isomorphic(report.maximizer, target),
                        runner_up_gap=report.runner_up_gap,
                    )
                )
    return records


def write_census(graphs: Iterable[Graph], path: Path) -> int:
    return write_graph6_lines(graphs, path)


def read_census(path: Path) -> list[Graph]:
    """Load a graph6 snapshot, keeping connected graphs only"""
    graphs = list(read_graph6_lines(path))
    dropped = [g for g in graphs if not is_connected(g)]
    if dropped:
        logger.warning("Dropping %d disconnected graphs from %s", len(dropped), path)
    return [g for g in graphs if is_connected(g)]
