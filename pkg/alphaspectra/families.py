from enum import Enum
from typing import Annotated, Optional

from pydantic import BaseModel, ConfigDict, Field
from pydantic.functional_validators import AfterValidator

from .errors import InvalidFamilyParams
from .graph import Graph, diameter
from .validators import val_non_negative_int

NonNegative = Annotated[int, AfterValidator(val_non_negative_int)]


class Family(str, Enum):
    """Named graph families, keyed by their compact command line name"""

    DELTA1 = "delta1"
    DELTA2 = "delta2"
    THETA1 = "theta1"
    THETA2 = "theta2"
    THETA3 = "theta3"
    THETA4 = "theta4"
    THETA5 = "theta5"
    INFINITY_BASE = "infinity"
    THETA_BASE = "theta"
    INF_SMALL = "infsmall"
    THETA_SMALL = "thetasmall"
    USTAR1 = "ustar1"
    USTAR2 = "ustar2"
    BSTAR3 = "bstar3"
    BSTAR4 = "bstar4"
    BSTAR5 = "bstar5"
    G1 = "g1"
    G2 = "g2"
    G3 = "g3"
    G4 = "g4"
    H1 = "h1"
    H2 = "h2"
    H3 = "h3"
    H4 = "h4"
    STAR = "star"
    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"


_SAB = ("s", "a", "b")
_REQUIRED: dict[Family, tuple[str, ...]] = {
    Family.DELTA1: _SAB,
    Family.DELTA2: _SAB,
    Family.THETA1: _SAB,
    Family.THETA2: _SAB,
    Family.THETA3: _SAB,
    Family.THETA4: _SAB,
    Family.THETA5: _SAB,
    Family.INFINITY_BASE: ("n1", "n2", "n3"),
    Family.THETA_BASE: ("n1", "n2", "n3"),
    Family.INF_SMALL: (),
    Family.THETA_SMALL: (),
    Family.USTAR1: ("n", "d"),
    Family.USTAR2: ("n", "d"),
    Family.BSTAR3: ("n", "d"),
    Family.BSTAR4: ("n", "d"),
    Family.BSTAR5: ("n", "d"),
    Family.G1: ("z",),
    Family.G2: ("z",),
    Family.G3: ("z",),
    Family.G4: ("z",),
    Family.H1: ("a", "b", "z"),
    Family.H2: ("a", "b", "z"),
    Family.H3: ("a", "b", "z"),
    Family.H4: ("a", "b", "z"),
    Family.STAR: ("s",),
    Family.PATH: ("n",),
    Family.CYCLE: ("n",),
    Family.COMPLETE: ("n",),
}
_PARAMETERS = ("s", "a", "b", "n", "d", "z", "n1", "n2", "n3")


class FamilySpec(BaseModel):
    """Tagged parameter record naming one member of a graph family.

    Which parameters are required depends on the family, e.g. s, a, b for the
    Delta and Theta families, n, d for the extremal graphs and n1, n2, n3 for
    the bicyclic bases.
    """

    family: Family
    s: Optional[NonNegative] = Field(default=None, description="Pendant edges")
    a: Optional[NonNegative] = Field(default=None, description="Length of the first pendant path")
    b: Optional[NonNegative] = Field(default=None, description="Length of the second pendant path")
    n: Optional[NonNegative] = Field(default=None, description="Order")
    d: Optional[NonNegative] = Field(default=None, description="Diameter")
    z: Optional[NonNegative] = Field(default=None, description="Extra pendant edges of G_i and H_i")
    n1: Optional[NonNegative] = Field(default=None, description="First cycle or path length of a bicyclic base")
    n2: Optional[NonNegative] = Field(default=None, description="Second cycle or path length of a bicyclic base")
    n3: Optional[NonNegative] = Field(default=None, description="Connecting path order or third path length")

    model_config = ConfigDict(frozen=True)

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Read a compact description such as "theta3:s=3,a=5,b=4" or "bstar3:n=16,d=9"

        Raises:
            InvalidFamilyParams: naming the position of the first unreadable token
        """
        name, _, rest = text.partition(":")
        try:
            family = Family(name.strip().lower())
        except ValueError:
            raise InvalidFamilyParams(
                f"Unknown family {name.strip()!r} at position 0 of {text!r}; "
                f"expected one of {[f.value for f in Family]}"
            )
        params: dict[str, int] = {}
        position = len(name) + 1
        for token in rest.split(",") if rest.strip() else []:
            key, eq, value = (part.strip() for part in token.partition("="))
            if not eq or key not in _PARAMETERS or not value.isdigit():
                raise InvalidFamilyParams(
                    f"Cannot read {token.strip()!r} at position {position} of {text!r}"
                )
            if key in params:
                raise InvalidFamilyParams(
                    f"Parameter {key!r} repeated at position {position} of {text!r}"
                )
            params[key] = int(value)
            position += len(token) + 1
        return cls(family=family, **params)

    def __str__(self) -> str:
        values = ",".join(
            f"{key}={getattr(self, key)}"
            for key in _PARAMETERS
            if getattr(self, key) is not None
        )
        return f"{self.family.value}:{values}" if values else self.family.value


class _Builder:
    """Accumulates labelled vertices and edges while recording vertex roles"""

    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []
        self.roles: dict[str, int] = {}

    def vertex(self, role: Optional[str] = None) -> int:
        v = self.n
        self.n += 1
        if role is not None:
            self.roles[role] = v
        return v

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def leaves(self, root: int, count: int, prefix: str = "s") -> None:
        start = sum(1 for role in self.roles if role.startswith(prefix) and role[len(prefix):].isdigit())
        for i in range(count):
            self.edge(root, self.vertex(f"{prefix}{start + i + 1}"))

    def path(self, root: int, length: int, prefix: str) -> int:
        """Hang a path with `length` new vertices; return its far end (root if empty)"""
        here = root
        for i in range(length):
            nxt = self.vertex(f"{prefix}{i + 1}")
            self.edge(here, nxt)
            here = nxt
        return here

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)


def _cycle(builder: _Builder, order: int, prefix: str = "w") -> list[int]:
    vertices = [builder.vertex(f"{prefix}{i + 1}") for i in range(order)]
    for i in range(order):
        builder.edge(vertices[i], vertices[(i + 1) % order])
    return vertices


def _theta_small(builder: _Builder) -> list[int]:
    # w1, w3 of degree 2; w2, w4 of degree 3 and adjacent
    w = [builder.vertex(f"w{i + 1}") for i in range(4)]
    for u, v in ((0, 1), (0, 3), (2, 1), (2, 3), (1, 3)):
        builder.edge(w[u], w[v])
    return w


def _require(condition: bool, reason: str) -> None:
    if not condition:
        raise InvalidFamilyParams(reason)


def _delta(kind: int, s: int, a: int, b: int) -> _Builder:
    builder = _Builder()
    w1, w2, w3 = _cycle(builder, 3)
    builder.leaves(w2, s)
    builder.path(w2, a, "a")
    builder.path(w2 if kind == 1 else w3, b, "b")
    return builder


# Vertex (index into w1..w4) receiving the leaves, path a and path b
_THETA_ROOTS = {
    1: (0, 0, 0),
    2: (1, 1, 1),
    3: (1, 1, 3),
    4: (0, 0, 2),
    5: (1, 0, 2),
}


def _theta(kind: int, s: int, a: int, b: int) -> _Builder:
    builder = _Builder()
    w = _theta_small(builder)
    leaf_root, a_root, b_root = _THETA_ROOTS[kind]
    builder.leaves(w[leaf_root], s)
    builder.path(w[a_root], a, "a")
    builder.path(w[b_root], b, "b")
    return builder


def _infinity_base(n1: int, n2: int, n3: int) -> _Builder:
    _require(n1 >= 3 and n2 >= 3 and n3 >= 1, "infinity base needs n1, n2 >= 3 and n3 >= 1")
    builder = _Builder()
    first = _cycle(builder, n1, prefix="c")
    u = first[0]
    builder.roles["u"] = u
    v = builder.path(u, n3 - 1, "p")
    builder.roles["v"] = v
    previous = v
    for i in range(n2 - 1):
        nxt = builder.vertex(f"d{i + 1}")
        builder.edge(previous, nxt)
        previous = nxt
    builder.edge(previous, v)
    return builder


def _theta_base(n1: int, n2: int, n3: int) -> _Builder:
    _require(
        n1 >= n2 >= n3 >= 1 and n2 >= 2,
        "theta base needs n1 >= n2 >= n3 >= 1 and n2 >= 2",
    )
    builder = _Builder()
    u, v = builder.vertex("u"), builder.vertex("v")
    for index, length in enumerate((n1, n2, n3), start=1):
        here = u
        for i in range(length - 1):
            nxt = builder.vertex(f"p{index}_{i + 1}")
            builder.edge(here, nxt)
            here = nxt
        builder.edge(here, v)
    return builder


def _inf_small() -> _Builder:
    builder = _Builder()
    w = [builder.vertex(f"w{i}") for i in range(5)]
    for u, v in ((0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)):
        builder.edge(w[u], w[v])
    return builder


def _extremal(family: Family, n: int, d: int) -> tuple[Family, int, int, int]:
    """Solve the parameter constraints of the extremal graph of order n and diameter d"""
    if family == Family.USTAR1:
        _require(2 <= d <= n - 3, f"ustar1 needs 2 <= d <= n - 3, got n={n}, d={d}")
        a, b = (d + 1) // 2, d // 2
        return Family.DELTA1, n - 3 - a - b, a, b
    if family == Family.USTAR2:
        _require(n >= 4 and 2 <= d <= n - 2, f"ustar2 needs n >= 4 and 2 <= d <= n - 2, got n={n}, d={d}")
        a, b = d // 2, (d - 1) // 2
        return Family.DELTA2, n - 3 - a - b, a, b
    if family == Family.BSTAR3:
        _require(2 <= d <= n - 3, f"bstar3 needs 2 <= d <= n - 3, got n={n}, d={d}")
        a, b = d // 2, (d - 1) // 2
        return Family.THETA3, n - 4 - a - b, a, b
    _require(3 <= d <= n - 2, f"{family.value} needs 3 <= d <= n - 2, got n={n}, d={d}")
    a, b = (d - 1) // 2, (d - 2) // 2
    kind = Family.THETA4 if family == Family.BSTAR4 else Family.THETA5
    return kind, n - 4 - a - b, a, b


# (family of the underlying Theta member, s offset, a, b, role of u1, role of v1)
_G_GRAPHS = {
    1: (3, 0, 1, 0, "a1", "w4"),
    2: (5, 1, 0, 0, "w1", "w3"),
    3: (3, 0, 1, 1, "a1", "b1"),
    4: (5, 1, 0, 1, "w1", "b1"),
}


def _g_graph(i: int, z: int) -> _Builder:
    kind, offset, a, b, u_role, v_role = _G_GRAPHS[i]
    builder = _theta(kind, z + offset, a, b)
    builder.roles["u1"] = builder.roles[u_role]
    builder.roles["v1"] = builder.roles[v_role]
    return builder


def _h_graph(i: int, a: int, b: int, z: int) -> _Builder:
    _require(a >= 1 and b >= 1, f"h{i} needs a, b >= 1, got a={a}, b={b}")
    builder = _g_graph(i, z)
    builder.path(builder.roles["u1"], a - 1, "p")
    builder.path(builder.roles["v1"], b - 1, "q")
    return builder


def _builder(spec: FamilySpec) -> _Builder:
    family = spec.family
    required = _REQUIRED[family]
    missing = [key for key in required if getattr(spec, key) is None]
    extra = [
        key for key in _PARAMETERS if key not in required and getattr(spec, key) is not None
    ]
    if family in (Family.USTAR1, Family.USTAR2, Family.BSTAR3, Family.BSTAR4, Family.BSTAR5):
        _require(not missing and not extra, f"{family.value} takes exactly n and d")
    else:
        _require(not missing, f"{family.value} is missing {missing}")
        _require(not extra, f"{family.value} does not take {extra}")

    if family in (Family.DELTA1, Family.DELTA2):
        s, a, b = spec.s, spec.a, spec.b
        if family == Family.DELTA1 and b > a:
            a, b = b, a
        return _delta(1 if family == Family.DELTA1 else 2, s, a, b)
    if family.value.startswith("theta") and family.value[-1].isdigit():
        kind = int(family.value[-1])
        s, a, b = spec.s, spec.a, spec.b
        if kind in (1, 2) and b > a:
            a, b = b, a
        return _theta(kind, s, a, b)
    if family == Family.INFINITY_BASE:
        return _infinity_base(spec.n1, spec.n2, spec.n3)
    if family == Family.THETA_BASE:
        return _theta_base(spec.n1, spec.n2, spec.n3)
    if family == Family.INF_SMALL:
        return _inf_small()
    if family == Family.THETA_SMALL:
        builder = _Builder()
        _theta_small(builder)
        return builder
    if family in (Family.USTAR1, Family.USTAR2, Family.BSTAR3, Family.BSTAR4, Family.BSTAR5):
        kind, s, a, b = _extremal(family, spec.n, spec.d)
        return _builder(FamilySpec(family=kind, s=s, a=a, b=b))
    if family in (Family.G1, Family.G2, Family.G3, Family.G4):
        return _g_graph(int(family.value[1]), spec.z)
    if family in (Family.H1, Family.H2, Family.H3, Family.H4):
        return _h_graph(int(family.value[1]), spec.a, spec.b, spec.z)
    if family == Family.STAR:
        builder = _Builder()
        builder.leaves(builder.vertex("center"), spec.s)
        return builder
    if family == Family.PATH:
        _require(spec.n >= 1, "path needs n >= 1")
        builder = _Builder()
        builder.path(builder.vertex("p0"), spec.n - 1, "p")
        return builder
    if family == Family.CYCLE:
        _require(spec.n >= 3, "cycle needs n >= 3")
        builder = _Builder()
        _cycle(builder, spec.n)
        return builder
    builder = _Builder()
    vertices = [builder.vertex(f"w{i + 1}") for i in range(spec.n)]
    for i, u in enumerate(vertices):
        for v in vertices[i + 1:]:
            builder.edge(u, v)
    return builder


def build(spec: FamilySpec) -> Graph:
    """Construct the labelled member of a family.

    Base vertices come first (w1, w2, ... as in the family definition), then
    star leaves, then path vertices in order of attachment. For the extremal
    families the order and diameter are re-checked on the constructed graph.

    Args:
        spec (FamilySpec): Family and parameters

    Returns:
        Graph

    Raises:
        InvalidFamilyParams
    """
    g = _builder(spec).graph()
    if spec.n is not None:
        _require(g.n == spec.n, f"{spec} has {g.n} vertices, expected {spec.n}")
    if spec.d is not None:
        _require(diameter(g) == spec.d, f"{spec} has diameter {diameter(g)}, expected {spec.d}")
    return g


def family_roles(spec: FamilySpec) -> dict[str, int]:
    """Role names (w1.., u1, v1, s1.., a1.., b1.., p1.., q1..) mapped to vertex labels"""
    return dict(_builder(spec).roles)


def resolve(spec: FamilySpec) -> FamilySpec:
    """The s, a, b member behind an extremal n, d spec; other specs are returned unchanged"""
    if spec.family in (Family.USTAR1, Family.USTAR2, Family.BSTAR3, Family.BSTAR4, Family.BSTAR5):
        kind, s, a, b = _extremal(spec.family, spec.n, spec.d)
        return FamilySpec(family=kind, s=s, a=a, b=b)
    return spec


def ustar1(n: int, d: int) -> Graph:
    """U1*(n,d) = Delta1(s;a,b) with 0 <= a - b <= 1 and d = a + b"""
    return build(FamilySpec(family=Family.USTAR1, n=n, d=d))


def ustar2(n: int, d: int) -> Graph:
    """U2*(n,d) = Delta2(s;a,b) with a = ceil((d-1)/2), b = floor((d-1)/2), s = n - 3 - a - b

    Raises:
        InvalidFamilyParams: unless n >= 4 and 2 <= d <= n - 2
    """
    return build(FamilySpec(family=Family.USTAR2, n=n, d=d))


def bstar3(n: int, d: int) -> Graph:
    """B3*(n,d) = Theta3(s;a,b) with 0 <= a - b <= 1 and d = a + b + 1

    Raises:
        InvalidFamilyParams: unless 2 <= d <= n - 3
    """
    return build(FamilySpec(family=Family.BSTAR3, n=n, d=d))


def bstar4(n: int, d: int) -> Graph:
    return build(FamilySpec(family=Family.BSTAR4, n=n, d=d))


def bstar5(n: int, d: int) -> Graph:
    """B5*(n,d) = Theta5(s;a,b) with 0 <= a - b <= 1 and d = a + b + 2

    Raises:
        InvalidFamilyParams: unless 3 <= d <= n - 2
    """
    return build(FamilySpec(family=Family.BSTAR5, n=n, d=d))


def ggraph(i: int, z: int) -> Graph:
    """G_i of the signless Laplacian comparison, roles u1 and v1 in family_roles"""
    _require(i in (1, 2, 3, 4), f"G_i is defined for i in 1..4, got {i}")
    return build(FamilySpec(family=Family(f"g{i}"), z=z))


def hgraph(i: int, a: int, b: int, z: int) -> Graph:
    """H_i(a,b) = G_i(P_a, P_b): paths P_a and P_b coalesced at u1 and v1 by an end.

    H_i(1,1) = G_i, H_1(a,b) ~ Theta3(z;a,b-1), H_2(a,b) ~ Theta5(z+1;a-1,b-1),
    H_3(a,b) ~ Theta3(z;a,b), H_4(a,b) ~ Theta5(z+1;a-1,b).

    Raises:
        InvalidFamilyParams
    """
    _require(i in (1, 2, 3, 4), f"H_i is defined for i in 1..4, got {i}")
    return build(FamilySpec(family=Family(f"h{i}"), a=a, b=b, z=z))


def star(s: int) -> Graph:
    """K_{1,s}, center 0"""
    return build(FamilySpec(family=Family.STAR, s=s))


def path(n: int) -> Graph:
    return build(FamilySpec(family=Family.PATH, n=n))


def cycle(n: int) -> Graph:
    return build(FamilySpec(family=Family.CYCLE, n=n))


def complete(n: int) -> Graph:
    return build(FamilySpec(family=Family.COMPLETE, n=n))
