"""Randomised property suites for the radius-monotone graph rewrites.

Every suite draws connected graphs on 4 to 12 vertices from a seeded numpy
generator, applies one rewrite whose effect on rho_alpha is known, and
compares the two radii. Instances that miss a hypothesis (Perron entries
within the tie tolerance, a disconnected output, no applicable vertices) are
discarded. So are instances whose radius difference is within 12 tol, since
no sign can be read from them.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .errors import NoConvergence
from .families import path, star
from .graph import Graph, internal_paths, is_connected, to_graph6
from .settings import Settings
from .spectral import SpectralResult, spectral_radius
from .transforms import (
    coalesce,
    contract_cut_edge_with_pendant,
    graft,
    is_cut_edge,
    shift_pendant_paths,
    subdivide,
    two_switch,
)

logger = logging.getLogger(__name__)

ALPHAS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))

# (graph before, graph after, +1 if rho must increase and -1 if it must decrease)
Instance = Optional[tuple[Graph, Graph, int]]


class Counterexample(BaseModel):
    suite: str
    alpha: str
    before: str = Field(description="graph6 of the input graph")
    after: str = Field(description="graph6 of the rewritten graph")
    detail: str

    model_config = ConfigDict(frozen=True)


class SuiteReport(BaseModel):
    name: str
    checked: int = Field(description="Instances whose radius difference was judged")
    discarded: int = Field(description="Drawn instances that missed a hypothesis")
    violations: list[Counterexample] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


class LemmaReport(BaseModel):
    seed: int
    instances: int
    negative_control: bool = False
    suites: list[SuiteReport]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)


def random_connected_graph(
    rng: np.random.Generator, n_min: int = 4, n_max: int = 12, max_extra: int = 3
) -> Graph:
    """Random recursive tree plus up to max_extra random chords"""
    n = int(rng.integers(n_min, n_max + 1))
    edges = {(int(rng.integers(i)), i) for i in range(1, n)}
    for _ in range(int(rng.integers(0, max_extra + 1))):
        u, v = sorted(int(x) for x in rng.choice(n, size=2, replace=False))
        edges.add((u, v))
    return Graph.from_edges(n, edges)


def _graft(rng, g: Graph, x: np.ndarray, tie: float, negative: bool) -> Instance:
    u, v = (int(a) for a in rng.choice(g.n, size=2, replace=False))
    allowed = sorted(g.adjacency[v] - g.adjacency[u] - {u})
    if not allowed:
        return None
    lead = x[v] - x[u] if negative else x[u] - x[v]
    if lead < tie:
        return None
    size = int(rng.integers(1, len(allowed) + 1))
    moved = [int(w) for w in rng.choice(allowed, size=size, replace=False)]
    return g, graft(g, u, v, moved).graph, 1


def _contract(rng, g: Graph, x: np.ndarray, tie: float, negative: bool) -> Instance:
    bridges = [
        (u, v)
        for a, b in sorted(g.edges)
        for u, v in ((a, b), (b, a))
        if g.degrees[u] > 1 and g.degrees[v] > 1 and is_cut_edge(g, a, b)
    ]
    if not bridges:
        return None
    u, v = bridges[int(rng.integers(len(bridges)))]
    return g, contract_cut_edge_with_pendant(g, u, v).graph, 1


def _subdivide(rng, g: Graph, x: np.ndarray, tie: float, negative: bool) -> Instance:
    paths = internal_paths(g)
    if not paths:
        return None
    chosen = paths[int(rng.integers(len(paths)))]
    edge = chosen.edges[int(rng.integers(len(chosen.edges)))]
    return g, subdivide(g, edge).graph, -1


def _two_switch(rng, g: Graph, x: np.ndarray, tie: float, negative: bool) -> Instance:
    if g.m < 2:
        return None
    first, second = (int(i) for i in rng.choice(g.m, size=2, replace=False))
    edges = sorted(g.edges)
    u, v = edges[first] if rng.random() < 0.5 else edges[first][::-1]
    w, y = edges[second] if rng.random() < 0.5 else edges[second][::-1]
    if len({u, v, w, y}) != 4 or g.has_edge(u, w) or g.has_edge(v, y):
        return None
    if x[u] - x[y] < tie or x[w] - x[v] < tie:
        return None
    return g, two_switch(g, u, v, w, y).graph, 1


def _shift(rng, g: Graph, x: np.ndarray, tie: float, negative: bool) -> Instance:
    candidates = [
        (u, v) for u, v in sorted(g.edges) if g.degrees[u] >= 2 and g.degrees[v] >= 2
    ]
    if not candidates:
        return None
    u, v = candidates[int(rng.integers(len(candidates)))]
    if rng.random() < 0.5:
        u, v = v, u
    l = int(rng.integers(0, 3))
    k = l + int(rng.integers(2, 4))
    longer, shifted = shift_pendant_paths(g, u, v, k, l)
    return longer, shifted, 1


def _inclusion(rng, g: Graph, x: np.ndarray, tie: float, negative: bool) -> Instance:
    pairs = [
        (u1, u2)
        for u1 in range(g.n)
        for u2 in range(g.n)
        if u1 != u2 and g.adjacency[u1] - {u2} < g.adjacency[u2] - {u1}
    ]
    if not pairs:
        return None
    u1, u2 = pairs[int(rng.integers(len(pairs)))]
    size = int(rng.integers(1, 4))
    h = star(size) if rng.random() < 0.5 else path(size + 1)
    first, _ = coalesce(g, u1, h, 0)
    second, _ = coalesce(g, u2, h, 0)
    return first, second, 1


SUITES: dict[str, Callable] = {
    "graft": _graft,
    "contract-cut-edge": _contract,
    "subdivide-internal": _subdivide,
    "two-switch": _two_switch,
    "shift-pendant-paths": _shift,
    "neighbourhood-inclusion": _inclusion,
}


def _radius(g: Graph, alpha: Fraction, cfg: Settings) -> Optional[SpectralResult]:
    try:
        return spectral_radius(g, alpha, settings=cfg)
    except NoConvergence as e:
        logger.warning("Discarding %s: %s", to_graph6(g), e)
        return None


def run_suite(
    name: str,
    seed: int,
    instances: int,
    negative_control: bool = False,
    settings: Optional[Settings] = None,
) -> SuiteReport:
    """Draw graphs until `instances` of them have been judged or the attempt budget runs out.

    Args:
        name (str): Key of SUITES
        seed (int): PRNG seed; the suite index is mixed in so suites draw independent streams
        instances (int): Judged instances wanted
        negative_control (bool): Invert the Perron condition of the graft suite
        settings (Settings, optional)

    Returns:
        SuiteReport
    """
    cfg = settings or Settings()
    make = SUITES[name]
    rng = np.random.default_rng([seed, list(SUITES).index(name)])
    margin = 12 * cfg.TOL
    checked = discarded = 0
    violations: list[Counterexample] = []
    for _ in range(50 * instances):
        if checked >= instances:
            break
        g = random_connected_graph(rng)
        alpha = ALPHAS[int(rng.integers(len(ALPHAS)))]
        before_result = _radius(g, alpha, cfg)
        instance = (
            make(rng, g, before_result.vector, cfg.PERRON_TIE_TOL, negative_control)
            if before_result is not None
            else None
        )
        if instance is None or not is_connected(instance[1]):
            discarded += 1
            continue
        before, after, expected = instance
        first = before_result if before is g else _radius(before, alpha, cfg)
        second = _radius(after, alpha, cfg)
        if first is None or second is None:
            discarded += 1
            continue
        if name == "subdivide-internal" and first.radius <= 2 + margin:
            discarded += 1
            continue
        difference = second.radius - first.radius
        if abs(difference) <= margin:
            discarded += 1
            continue
        checked += 1
        if difference * expected < 0:
            violations.append(
                Counterexample(
                    suite=name,
                    alpha=str(alpha),
                    before=to_graph6(before),
                    after=to_graph6(after),
                    detail=(
                        f"rho went from {first.radius:.12f} to {second.radius:.12f}, "
                        f"expected {'an increase' if expected > 0 else 'a decrease'}"
                    ),
                )
            )
    logger.info(
        "Suite %s: %d checked, %d discarded, %d violations",
        name,
        checked,
        discarded,
        len(violations),
    )
    return SuiteReport(name=name, checked=checked, discarded=discarded, violations=violations)


def verify_lemmas(
    seed: Optional[int] = None,
    instances: Optional[int] = None,
    negative_control: bool = False,
    settings: Optional[Settings] = None,
) -> LemmaReport:
    """Run every suite; deterministic for a given seed and instance count"""
    cfg = settings or Settings()
    seed = cfg.SEED if seed is None else seed
    instances = cfg.LEMMA_INSTANCES if instances is None else instances
    names = list(SUITES)
    if cfg.THREADS > 1:
        with ProcessPoolExecutor(max_workers=cfg.THREADS) as pool:
            futures = [
                pool.submit(run_suite, name, seed, instances, negative_control, cfg)
                for name in names
            ]
            suites = [f.result() for f in futures]
    else:
        suites = [run_suite(name, seed, instances, negative_control, cfg) for name in names]
    return LemmaReport(
        seed=seed, instances=instances, negative_control=negative_control, suites=suites
    )
