import logging
from fractions import Fraction
from functools import cached_property
from typing import Annotated, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic.functional_validators import AfterValidator

from .errors import AlphaOutOfRange, DisconnectedGraph, NoConvergence, NotUnitVector
from .graph import Graph, is_connected
from .settings import Settings
from .validators import val_alpha, val_non_negative_int

logger = logging.getLogger(__name__)

AlphaLike = Union[Fraction, int, float, str]

# Relative gap between the Collatz-Wielandt bound and the Rayleigh quotient
# below which the power phase hands over to inverse iteration
ACCELERATE_WIDTH = 1e-3


def as_alpha(value: AlphaLike) -> Fraction:
    """Convert alpha to an exact rational in [0, 1].

    Strings and floats are read as decimal literals, so 0.1 becomes 1/10 and
    not the nearest binary double.

    Raises:
        AlphaOutOfRange
    """
    try:
        alpha = Fraction(str(value)) if isinstance(value, float) else Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise AlphaOutOfRange(f"Cannot read alpha from {value!r}: {e}")
    if not 0 <= alpha <= 1:
        raise AlphaOutOfRange(f"Alpha must satisfy 0 <= alpha <= 1, got {alpha}")
    return alpha


def alpha_array(g: Graph, alpha: AlphaLike) -> np.ndarray:
    """Dense float64 A_alpha(G) = alpha D(G) + (1 - alpha) A(G)"""
    a = float(as_alpha(alpha))
    matrix = np.zeros((g.n, g.n))
    for u, v in g.edges:
        matrix[u, v] = matrix[v, u] = 1.0 - a
    matrix[np.diag_indices(g.n)] = a * np.asarray(g.degrees, dtype=float)
    return matrix


class AlphaMatrix(BaseModel):
    """Exact A_alpha(G), entries indexed by vertex labels"""

    alpha: Annotated[Fraction, AfterValidator(val_alpha)]
    entries: tuple[tuple[Fraction, ...], ...] = Field(
        description="Symmetric n x n matrix of exact rationals"
    )

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _square_and_symmetric(self):
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise ValueError(f"Row {i} has {len(row)} entries, expected {n}")
            for j in range(i):
                if row[j] != self.entries[j][i]:
                    raise ValueError(f"Entries ({i}, {j}) and ({j}, {i}) differ")
        return self

    @property
    def n(self) -> int:
        return len(self.entries)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array([[float(e) for e in row] for row in self.entries]).reshape(
            self.n, self.n
        )

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(row, Fraction(0)) for row in self.entries)


def alpha_matrix(g: Graph, alpha: AlphaLike) -> AlphaMatrix:
    """Build A_alpha(G) with exact rational entries.

    Args:
        g (Graph): Any graph
        alpha (AlphaLike): 0 <= alpha <= 1

    Returns:
        AlphaMatrix: alpha = 0 gives the adjacency matrix, alpha = 1/2 gives Q(G)/2

    Raises:
        AlphaOutOfRange
    """
    alpha = as_alpha(alpha)
    off = 1 - alpha
    rows = []
    for i in range(g.n):
        row = [Fraction(0)] * g.n
        row[i] = alpha * g.degrees[i]
        for j in g.adjacency[i]:
            row[j] = off
        rows.append(tuple(row))
    return AlphaMatrix(alpha=alpha, entries=tuple(rows))


class SpectralResult(BaseModel):
    """Largest eigenvalue of A_alpha(G) with its Perron vector"""

    alpha: Annotated[Fraction, AfterValidator(val_alpha)]
    radius: float = Field(description="Rayleigh quotient of the final iterate")
    perron: tuple[float, ...] = Field(description="Unit 2-norm eigenvector estimate")
    iterations: Annotated[int, AfterValidator(val_non_negative_int)]
    residual: float = Field(description="||A_alpha x - radius x||_inf")

    model_config = ConfigDict(frozen=True)

    @property
    def vector(self) -> np.ndarray:
        return np.asarray(self.perron)

    @property
    def is_positive(self) -> bool:
        return all(x > 0 for x in self.perron)

    def within(self, tol: float) -> bool:
        return self.residual <= tol


def spectral_radius(
    g: Graph,
    alpha: AlphaLike,
    tol: Optional[float] = None,
    max_iters: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> SpectralResult:
    """Spectral radius and Perron vector of A_alpha(G) by shifted power iteration.

    The power phase runs on A_alpha + (1 - alpha) Delta I, whose spectrum is
    non-negative, so the largest eigenvalue is also dominant in magnitude. It
    starts from the normalised all-ones vector and keeps the iterate positive,
    which makes max_v (A_alpha x)_v / x_v an upper bound sigma on rho. Once
    that bound is within ACCELERATE_WIDTH of the Rayleigh quotient, or after
    2n power steps, the loop switches to inverse iteration with
    (sigma I - A_alpha). As sigma >= rho, the nearest eigenvalue to the shift
    is rho itself, and the contraction per step is
    (sigma - rho) / (sigma - lambda_2) instead of the power ratio.

    The Rayleigh quotient of the current iterate is the estimate in both
    phases, and the loop stops once ||A_alpha x - rho x||_inf drops to tol.

    Args:
        g (Graph): Connected graph
        alpha (AlphaLike): 0 <= alpha <= 1
        tol (float, optional): Residual tolerance. Defaults to Settings.TOL
        max_iters (int, optional): Iteration budget. Defaults to Settings.MAX_ITERS
        settings (Settings, optional): Source of the defaults

    Returns:
        SpectralResult

    Raises:
        DisconnectedGraph
        NoConvergence
        AlphaOutOfRange
    """
    cfg = settings or Settings()
    tol = cfg.TOL if tol is None else tol
    max_iters = cfg.MAX_ITERS if max_iters is None else max_iters
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    alpha = as_alpha(alpha)
    if not is_connected(g) or g.n == 0:
        raise DisconnectedGraph(f"Graph on {g.n} vertices is not connected")
    if g.n == 1:
        return SpectralResult(
            alpha=alpha, radius=0.0, perron=(1.0,), iterations=0, residual=0.0
        )

    matrix = alpha_array(g, alpha)
    identity = np.eye(g.n)
    # least eigenvalue of A_alpha is >= -(1 - alpha) Delta
    shifted = matrix + (1 - float(alpha)) * max(g.degrees) * identity
    x = np.full(g.n, 1.0 / np.sqrt(g.n))
    residual = np.inf
    upper = np.inf
    sigma = None
    for iteration in range(1, max_iters + 1):
        if sigma is None:
            y = shifted @ x
        else:
            try:
                y = np.linalg.solve(sigma * identity - matrix, x)
            except np.linalg.LinAlgError:
                # sigma landed on rho to working precision
                sigma += tol
                continue
            if y.sum() < 0:
                y = -y
        x = y / np.linalg.norm(y)
        ax = matrix @ x
        rho = float(x @ ax)
        residual = float(np.max(np.abs(ax - rho * x)))
        if residual <= tol:
            logger.debug(
                "Power iteration converged after %d steps (n=%d, alpha=%s, inverse=%s)",
                iteration,
                g.n,
                alpha,
                sigma is not None,
            )
            return SpectralResult(
                alpha=alpha,
                radius=rho,
                perron=tuple(float(v) for v in x),
                iterations=iteration,
                residual=residual,
            )
        if sigma is None:
            if np.all(x > 0):
                upper = min(upper, float(np.max(ax / x)))
            width = upper - rho
            if width <= ACCELERATE_WIDTH * max(1.0, rho) or iteration >= 2 * g.n:
                if np.isfinite(upper):
                    sigma = upper + tol
                    logger.debug(
                        "Switching to inverse iteration at sigma=%.12g after %d steps",
                        sigma,
                        iteration,
                    )
    raise NoConvergence(max_iters, residual)


def perron_vector(g: Graph, alpha: AlphaLike, tol: Optional[float] = None) -> np.ndarray:
    return spectral_radius(g, alpha, tol).vector


def signless_laplacian_radius(g: Graph, tol: Optional[float] = None) -> float:
    """rho_Q(G) = 2 rho_{1/2}(G)"""
    return 2 * spectral_radius(g, Fraction(1, 2), tol).radius


def rayleigh_quotient(g: Graph, alpha: AlphaLike, x: Sequence[float]) -> float:
    """x^T A_alpha(G) x written as the edge sum of alpha (x_u^2 + x_v^2) + 2 (1 - alpha) x_u x_v

    Raises:
        NotUnitVector: if |‖x‖ - 1| exceeds 1e-9
    """
    a = float(as_alpha(alpha))
    vector = np.asarray(x, dtype=float)
    if vector.shape != (g.n,):
        raise NotUnitVector(f"Expected a vector of length {g.n}, got shape {vector.shape}")
    if abs(np.linalg.norm(vector) - 1.0) > 1e-9:
        raise NotUnitVector(f"Vector has 2-norm {np.linalg.norm(vector)}, expected 1")
    return float(
        sum(
            a * (vector[u] ** 2 + vector[v] ** 2) + 2 * (1 - a) * vector[u] * vector[v]
            for u, v in g.edges
        )
    )
