import logging
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Annotated, Iterable, Iterator, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic.functional_validators import AfterValidator
from sympy import QQ, Poly, Rational, Symbol

from .errors import ClosedFormMismatch, VertexOutOfRange
from .graph import Graph
from .spectral import AlphaLike, alpha_matrix, as_alpha
from .transforms import coalesce
from .validators import val_non_negative_int, val_trimmed_coefficients

logger = logging.getLogger(__name__)

X = Symbol("x")

Scalar = Union[Fraction, int]


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _to_rational(c: Fraction) -> Rational:
    return Rational(c.numerator, c.denominator)


class RationalPolynomial(BaseModel):
    """Univariate polynomial in x over the rationals.

    Coefficients are exact and stored lowest degree first; the zero polynomial
    has no coefficients. Arithmetic is delegated to sympy's Poly over QQ.
    """

    coefficients: Annotated[
        tuple[Fraction, ...], AfterValidator(val_trimmed_coefficients)
    ] = Field(default=(), description="Exact coefficients, index = degree")

    model_config = ConfigDict(frozen=True)

    @classmethod
    def constant(cls, c: Scalar) -> "RationalPolynomial":
        return cls(coefficients=(Fraction(c),))

    @classmethod
    def zero(cls) -> "RationalPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "RationalPolynomial":
        return cls.constant(1)

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls(coefficients=(Fraction(0), Fraction(1)))

    @classmethod
    def from_poly(cls, poly: Poly) -> "RationalPolynomial":
        if poly.is_zero:
            return cls()
        return cls(
            coefficients=tuple(_to_fraction(c) for c in reversed(poly.all_coeffs()))
        )

    @classmethod
    def from_json(cls, coefficients: Sequence[str]) -> "RationalPolynomial":
        """Inverse of to_json: "num/den" strings lowest degree first"""
        return cls(coefficients=tuple(Fraction(c) for c in coefficients))

    @cached_property
    def poly(self) -> Poly:
        if not self.coefficients:
            return Poly(0, X, domain=QQ)
        return Poly(
            [_to_rational(c) for c in reversed(self.coefficients)], X, domain=QQ
        )

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial"""
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coefficients]

    def __call__(self, value):
        # Horner; exact for Fraction/int arguments, float otherwise
        result = 0 * value
        for c in reversed(self.coefficients):
            result = result * value + (c if isinstance(value, (int, Fraction)) else float(c))
        return result

    def _coerce(self, other) -> Poly:
        if isinstance(other, RationalPolynomial):
            return other.poly
        if isinstance(other, (int, Fraction)):
            return Poly(_to_rational(Fraction(other)), X, domain=QQ)
        return NotImplemented

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return RationalPolynomial.from_poly(self.poly + rhs)

    __radd__ = __add__

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return RationalPolynomial.from_poly(self.poly - rhs)

    def __rsub__(self, other):
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return RationalPolynomial.from_poly(rhs - self.poly)

    def __mul__(self, other):
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return RationalPolynomial.from_poly(self.poly * rhs)

    __rmul__ = __mul__

    def __neg__(self):
        return RationalPolynomial(coefficients=tuple(-c for c in self.coefficients))

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("Negative powers are not polynomials")
        return RationalPolynomial.from_poly(self.poly**exponent)

    def exquo(self, other: "RationalPolynomial") -> "RationalPolynomial":
        """Exact division, raising sympy's ExactQuotientFailed on a remainder"""
        return RationalPolynomial.from_poly(self.poly.exquo(other.poly))

    def __str__(self) -> str:
        return str(self.poly.as_expr())


def _bareiss(matrix: list[list[Poly]]) -> Poly:
    """Fraction-free Gaussian elimination over Q[x]"""
    size = len(matrix)
    if size == 0:
        return Poly(1, X, domain=QQ)
    m = [row[:] for row in matrix]
    sign = 1
    previous = Poly(1, X, domain=QQ)
    for k in range(size - 1):
        if m[k][k].is_zero:
            for i in range(k + 1, size):
                if not m[i][k].is_zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Poly(0, X, domain=QQ)
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).exquo(previous)
        previous = m[k][k]
    return m[-1][-1] * sign


def charpoly_of_matrix(entries: Sequence[Sequence[Fraction]]) -> RationalPolynomial:
    """det(xI - A) of a square rational matrix, by Bareiss elimination"""
    size = len(entries)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if i == j:
                row.append(Poly([1, -_to_rational(Fraction(entries[i][j]))], X, domain=QQ))
            else:
                row.append(Poly(-_to_rational(Fraction(entries[i][j])), X, domain=QQ))
        rows.append(row)
    return RationalPolynomial.from_poly(_bareiss(rows))


@lru_cache(maxsize=4096)
def _phi(g: Graph, alpha: Fraction) -> RationalPolynomial:
    return charpoly_of_matrix(alpha_matrix(g, alpha).entries)


def phi(g: Graph, alpha: AlphaLike) -> RationalPolynomial:
    """Characteristic polynomial of A_alpha(G), monic of degree n

    Raises:
        AlphaOutOfRange
    """
    return _phi(g, as_alpha(alpha))


def psi(g: Graph, u_set: Iterable[int], alpha: AlphaLike) -> RationalPolynomial:
    """Characteristic polynomial of A_alpha(G) with the rows and columns of u_set deleted.

    The remaining diagonal keeps the degrees of G, so this is the polynomial of
    the Coates digraph of A_alpha(G) minus u_set and generally differs from
    phi(G - u_set).

    Raises:
        VertexOutOfRange
        AlphaOutOfRange
    """
    removed = frozenset(u_set)
    for v in removed:
        g.check_vertex(v)
    if not removed:
        return phi(g, alpha)
    entries = alpha_matrix(g, alpha).entries
    kept = [v for v in range(g.n) if v not in removed]
    return charpoly_of_matrix([[entries[i][j] for j in kept] for i in kept])


@lru_cache(maxsize=1024)
def _path_poly(t: int, alpha: Fraction) -> RationalPolynomial:
    if t == 0:
        return RationalPolynomial.one()
    if t == 1:
        return RationalPolynomial(coefficients=(-alpha, Fraction(1)))
    x = RationalPolynomial.x()
    return (x - 2 * alpha) * _path_poly(t - 1, alpha) - (1 - alpha) ** 2 * _path_poly(
        t - 2, alpha
    )


def path_poly(t: int, alpha: AlphaLike) -> RationalPolynomial:
    """f_t = (x - 2 alpha) f_{t-1} - (1 - alpha)^2 f_{t-2}, f_0 = 1, f_1 = x - alpha.

    f_{t-1} is psi of the path on t vertices with one end deleted.
    """
    val_non_negative_int(t)
    return _path_poly(t, as_alpha(alpha))


def phi_path(t: int, alpha: AlphaLike) -> RationalPolynomial:
    """phi_alpha(P_t) = f_t + alpha f_{t-1} for t >= 1"""
    if t < 1:
        raise ValueError(f"Path order must be positive, got {t}")
    alpha = as_alpha(alpha)
    return path_poly(t, alpha) + alpha * path_poly(t - 1, alpha)


def dp_poly(l: int, alpha: AlphaLike) -> RationalPolynomial:
    """phi_alpha(P_l) - x f_{l-1}, the correction term when a path hangs at a root"""
    return phi_path(l, alpha) - RationalPolynomial.x() * path_poly(l - 1, alpha)


def path_wronskian(k: int, l: int, alpha: AlphaLike) -> RationalPolynomial:
    """f_{k+1} f_l - f_k f_{l+1}, checked against its closed form.

    With p = l - k the closed form is (1 - alpha)^(2k) (alpha f_p + (1 - alpha)^2 f_{p-1})
    for p >= 1 and zero for p = 0.

    Raises:
        ClosedFormMismatch: direct and closed-form arithmetic disagree
    """
    if not l >= k >= 1:
        raise ValueError(f"Expected l >= k >= 1, got k={k}, l={l}")
    alpha = as_alpha(alpha)
    direct = path_poly(k + 1, alpha) * path_poly(l, alpha) - path_poly(
        k, alpha
    ) * path_poly(l + 1, alpha)
    p = l - k
    if p == 0:
        closed = RationalPolynomial.zero()
    else:
        closed = (1 - alpha) ** (2 * k) * (
            alpha * path_poly(p, alpha) + (1 - alpha) ** 2 * path_poly(p - 1, alpha)
        )
    if direct != closed:
        raise ClosedFormMismatch(
            f"f_(k+1) f_l - f_k f_(l+1) for k={k}, l={l}, alpha={alpha}: "
            f"direct {direct} != closed form {closed}"
        )
    return direct


class WeightedDigraph(BaseModel):
    """Coates digraph of a symmetric rational matrix.

    Arc (i, j) carries a_ij, loops carry the diagonal. Zero weights are dropped.
    """

    n: Annotated[int, AfterValidator(val_non_negative_int)]
    arcs: dict[tuple[int, int], Fraction] = Field(default_factory=dict)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _symmetric(self):
        for (i, j), w in self.arcs.items():
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"Arc ({i}, {j}) leaves 0..{self.n - 1}")
            if self.arcs.get((j, i), Fraction(0)) != w:
                raise ValueError(f"Arc weights ({i}, {j}) and ({j}, {i}) differ")
        return self

    @classmethod
    def from_matrix(cls, entries: Sequence[Sequence[Fraction]]) -> "WeightedDigraph":
        return cls(
            n=len(entries),
            arcs={
                (i, j): Fraction(w)
                for i, row in enumerate(entries)
                for j, w in enumerate(row)
                if w != 0
            },
        )

    def weight(self, i: int, j: int) -> Fraction:
        return self.arcs.get((i, j), Fraction(0))

    @cached_property
    def out_neighbours(self) -> tuple[tuple[int, ...], ...]:
        """Non-loop arc heads per vertex, sorted"""
        heads: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.arcs:
            if i != j:
                heads[i].append(j)
        return tuple(tuple(sorted(h)) for h in heads)

    def charpoly(self, removed: Iterable[int] = ()) -> RationalPolynomial:
        """Characteristic polynomial of the digraph minus the removed vertices"""
        drop = set(removed)
        kept = [v for v in range(self.n) if v not in drop]
        return charpoly_of_matrix([[self.weight(i, j) for j in kept] for i in kept])

    def cycles_through(
        self, v: int, avoid: Iterable[int] = ()
    ) -> Iterator[tuple[int, ...]]:
        """Undirected cycles of length >= 3 through v, each yielded once starting at v"""
        blocked = set(avoid)
        path = [v]
        on_path = {v}

        def extend() -> Iterator[tuple[int, ...]]:
            here = path[-1]
            for w in self.out_neighbours[here]:
                if w == v and len(path) >= 3 and path[1] < path[-1]:
                    yield tuple(path)
                elif w not in on_path and w not in blocked:
                    path.append(w)
                    on_path.add(w)
                    yield from extend()
                    path.pop()
                    on_path.discard(w)

        yield from extend()

    def cycle_weight(self, cycle: Sequence[int]) -> Fraction:
        weight = Fraction(1)
        for a, b in zip(cycle, [*cycle[1:], cycle[0]]):
            weight *= self.weight(a, b)
        return weight


def coates_digraph(g: Graph, alpha: AlphaLike) -> WeightedDigraph:
    """Coates digraph of A_alpha(G): loops alpha d(v), arcs 1 - alpha both ways"""
    return WeightedDigraph.from_matrix(alpha_matrix(g, alpha).entries)


def schwenk_vertex(d: WeightedDigraph, v: int) -> RationalPolynomial:
    """Characteristic polynomial by expansion at v.

    phi = (x - a_vv) phi(D - v) - sum_u a_uv^2 phi(D - u - v)
          - 2 sum_C w(C) phi(D - V(C)),
    the last sum running over the undirected cycles of length >= 3 through v.

    Raises:
        VertexOutOfRange
    """
    if not 0 <= v < d.n:
        raise VertexOutOfRange(f"Vertex {v} is not in 0..{d.n - 1}")
    x = RationalPolynomial.x()
    result = (x - d.weight(v, v)) * d.charpoly({v})
    for u in d.out_neighbours[v]:
        result = result - d.weight(u, v) ** 2 * d.charpoly({u, v})
    for cycle in d.cycles_through(v):
        result = result - 2 * d.cycle_weight(cycle) * d.charpoly(cycle)
    return result


def coalesce_phi(
    g_phi: RationalPolynomial,
    g_psi_u: RationalPolynomial,
    h_phi: RationalPolynomial,
    h_psi_v: RationalPolynomial,
) -> RationalPolynomial:
    """phi(G(u,v)H) = phi(G) psi(H,v) + psi(G,u) phi(H) - x psi(G,u) psi(H,v).

    Each piece uses its own A_alpha; the merged vertex then carries the sum of
    the two loops, alpha d_G(u) + alpha d_H(v), which is its degree in the
    coalescence.
    """
    x = RationalPolynomial.x()
    return g_phi * h_psi_v + g_psi_u * h_phi - x * g_psi_u * h_psi_v


def rooted_product_phi(
    g: RationalPolynomial,
    g_u: RationalPolynomial,
    g_v: RationalPolynomial,
    g_uv: RationalPolynomial,
    g1: RationalPolynomial,
    g1_root: RationalPolynomial,
    g2: RationalPolynomial,
    g2_root: RationalPolynomial,
) -> RationalPolynomial:
    """phi of G with H1 hung at u and H2 hung at v.

    Args:
        g (RationalPolynomial): phi(G)
        g_u (RationalPolynomial): psi(G, u)
        g_v (RationalPolynomial): psi(G, v)
        g_uv (RationalPolynomial): psi(G, {u, v})
        g1 (RationalPolynomial): phi(H1)
        g1_root (RationalPolynomial): psi(H1, w1)
        g2 (RationalPolynomial): phi(H2)
        g2_root (RationalPolynomial): psi(H2, w2)

    Returns:
        RationalPolynomial: g g1' g2' + g_u (g1 - x g1') g2' + g_v (g2 - x g2') g1'
            + g_uv (g1 - x g1') (g2 - x g2')
    """
    x = RationalPolynomial.x()
    c1 = g1 - x * g1_root
    c2 = g2 - x * g2_root
    return g * g1_root * g2_root + g_u * c1 * g2_root + g_v * c2 * g1_root + g_uv * c1 * c2


def rooted_product_difference(
    df1: RationalPolynomial,
    df2: RationalPolynomial,
    df3: RationalPolynomial,
    g_phi: RationalPolynomial,
    g_psi_u: RationalPolynomial,
) -> RationalPolynomial:
    """phi(H1(G,G)) - phi(H2(G,G)) from the differences of the two host graphs.

    Returns:
        RationalPolynomial: DF1 psi(G,u)^2 + DF2 (phi(G) - x psi(G,u)) psi(G,u)
            + DF3 (phi(G) - x psi(G,u))^2
    """
    x = RationalPolynomial.x()
    rest = g_phi - x * g_psi_u
    return df1 * g_psi_u**2 + df2 * rest * g_psi_u + df3 * rest**2


def _max_root_interval(poly: Poly, eps: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    if poly.degree() < 1:
        return None
    intervals = poly.intervals(eps=_to_rational(eps))
    if not intervals:
        return None
    (low, high), _ = max(intervals, key=lambda item: item[0][1])
    return _to_fraction(low), _to_fraction(high)


def largest_real_root(
    p: RationalPolynomial, width: Fraction = Fraction(1, 10**12)
) -> Optional[tuple[Fraction, Fraction]]:
    """Exact isolating interval of the largest real root, no wider than width.

    Returns None when p has no real root.
    """
    return _max_root_interval(p.poly, width)


def _largest_root_in_common_part(own: Poly, common: Poly) -> bool:
    # own is square-free and common divides it, so the two factors share no root
    rest = own.exquo(common)
    eps = Fraction(1, 10**6)
    while True:
        c = _max_root_interval(common, eps)
        r = _max_root_interval(rest, eps)
        if c is None:
            return False
        if r is None or c[0] > r[1]:
            return True
        if r[0] > c[1]:
            return False
        eps /= 1000


def compare_largest_roots(p: RationalPolynomial, q: RationalPolynomial) -> int:
    """Exact sign of (largest real root of p) - (largest real root of q).

    Equal largest roots are detected through the square-free gcd; distinct
    roots are separated by refining rational isolating intervals.
    """
    if p == q:
        return 0
    sp, sq = p.poly.sqf_part(), q.poly.sqf_part()
    common = sp.gcd(sq)
    if (
        common.degree() >= 1
        and _largest_root_in_common_part(sp, common)
        and _largest_root_in_common_part(sq, common)
    ):
        return 0
    eps = Fraction(1, 10**6)
    while True:
        a = _max_root_interval(sp, eps)
        b = _max_root_interval(sq, eps)
        if a[1] < b[0]:
            return -1
        if b[1] < a[0]:
            return 1
        eps /= 1000


def equivalent_root_difference(
    g: Graph,
    u: int,
    v: int,
    h1: Graph,
    w1: int,
    h2: Graph,
    w2: int,
    alpha: AlphaLike,
) -> tuple[RationalPolynomial, RationalPolynomial]:
    """Both sides of psi(H,u) - psi(H,v) = psi(G,{u,v}) (F1' F2 - F1 F2').

    H hangs h1 at u and h2 at v of g (by their roots w1, w2); u and v must be
    equivalent under an automorphism of g for the identity to hold.

    Returns:
        tuple[RationalPolynomial, RationalPolynomial]: (direct, formula)
    """
    alpha = as_alpha(alpha)
    first, first_map = coalesce(g, u, h1, w1)
    hosted, second_map = coalesce(first, v, h2, w2)
    direct = psi(hosted, {u}, alpha) - psi(hosted, {v}, alpha)
    f1, f1_root = phi(h1, alpha), psi(h1, {w1}, alpha)
    f2, f2_root = phi(h2, alpha), psi(h2, {w2}, alpha)
    formula = psi(g, {u, v}, alpha) * (f1_root * f2 - f1 * f2_root)
    return direct, formula


def neighbourhood_inclusion_difference(
    g: Graph, u1: int, u2: int, alpha: AlphaLike
) -> tuple[RationalPolynomial, RationalPolynomial]:
    """Both sides of the expansion of psi(G,u2) - psi(G,u1) when N(u1)-u2 is inside N(u2)-u1.

    The formula side is
    alpha (d(u2) - d(u1)) psi(G,{u1,u2}) + (1 - alpha)^2 sum_w psi(G,{u1,u2,w})
    + 2 sum_Z (1 - alpha)^|Z| psi(G, V(Z) + u1),
    with w over N(u2) - N(u1) - u1 and Z over the cycles through u2 avoiding u1
    that do not come from a cycle through u1 by swapping u1 for u2.

    Returns:
        tuple[RationalPolynomial, RationalPolynomial]: (direct, formula)
    """
    alpha = as_alpha(alpha)
    n1 = g.adjacency[g.check_vertex(u1)] - {u2}
    n2 = g.adjacency[g.check_vertex(u2)] - {u1}
    if not n1 <= n2:
        raise ValueError(f"N({u1}) - {u2} is not contained in N({u2}) - {u1}")
    direct = psi(g, {u2}, alpha) - psi(g, {u1}, alpha)
    formula = alpha * (g.degrees[u2] - g.degrees[u1]) * psi(g, {u1, u2}, alpha)
    for w in sorted(n2 - n1):
        formula = formula + (1 - alpha) ** 2 * psi(g, {u1, u2, w}, alpha)
    digraph = coates_digraph(g, alpha)
    for cycle in digraph.cycles_through(u2, avoid={u1}):
        if cycle[1] in n1 and cycle[-1] in n1:
            continue
        formula = formula + 2 * (1 - alpha) ** len(cycle) * psi(
            g, {*cycle, u1}, alpha
        )
    return direct, formula
