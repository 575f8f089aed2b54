"""Signless Laplacian comparison of G_1..G_4 and the tabulated factors f_ij.

Everything in this module is evaluated at alpha = 1/2. With
F_i1 = phi(G_i), F_i2 = psi(G_i, u1), F_i3 = psi(G_i, v1) and
F_i4 = psi(G_i, {u1, v1}) the factorisations are

    F_1j = (x - 1/2)^(z-1) f_1j
    F_2j = (x - 1/2)^(z-1) f_2j
    F_3j = (x - 1/2)^(z-1) (x - 1) f_3j
    F_4j = (x - 1/2)^z f_4j

The first line of the published table reads "f_11 = f_12 = ..." next to a
separate f_12 line. Since G_1 and G_2 are isomorphic it is read here as
f_11 = f_21; the literal reading fails already on degree (see
table_reading_check).
"""

from fractions import Fraction
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from .charpoly import RationalPolynomial, phi, phi_path, path_poly, psi, rooted_product_difference
from .errors import IndexOutOfRange
from .families import Family, FamilySpec, family_roles, ggraph, hgraph

HALF = Fraction(1, 2)


def _p(*highest_first) -> RationalPolynomial:
    return RationalPolynomial(
        coefficients=tuple(Fraction(c) for c in reversed(highest_first))
    )


def _x_minus(c) -> RationalPolynomial:
    return _p(1, -Fraction(c))


def appendix_fij(i: int, j: int, z: int) -> RationalPolynomial:
    """Tabulated polynomial f_ij instantiated at z.

    Args:
        i (int): Graph index 1..4
        j (int): 1 for phi, 2 for psi at u1, 3 for psi at v1, 4 for psi at {u1, v1}
        z (int): Number of extra pendant edges, z >= 0

    Returns:
        RationalPolynomial

    Raises:
        IndexOutOfRange
    """
    if i not in range(1, 5) or j not in range(1, 5):
        raise IndexOutOfRange(f"f_ij is tabulated for 1 <= i, j <= 4, got ({i}, {j})")
    if z < 0:
        raise IndexOutOfRange(f"z must be non-negative, got {z}")
    z = Fraction(z)
    h, one = _x_minus(HALF), _x_minus(1)
    F = Fraction
    if (i, j) in ((1, 1), (2, 1)):
        return _p(1, -(z + 9) / 2, z + 5, -1) * h**2 * one
    if (i, j) == (1, 2):
        return _p(1, -(z + 9) / 2, z + F(21, 4), F(-3, 2)) * h * one
    if (i, j) == (1, 3):
        return _p(1, -(z + 7) / 2, (z + F(11, 2)) / 2, F(-1, 2)) * h * one
    if (i, j) == (1, 4):
        return _p(1, -(z + 7) / 2, (z + 6) / 2, F(-3, 4)) * one
    if (i, j) in ((2, 2), (2, 3)):
        return _p(
            1, -(z / 2 + 5), F(5, 4) * z + F(31, 4), -(F(5, 8) * z + F(35, 8)), F(3, 4)
        ) * h
    if (i, j) == (2, 4):
        return _p(1, -(z / 2 + 4), F(3, 4) * z + F(17, 4), -1) * h
    if (i, j) == (3, 1):
        return _p(
            1,
            -(z + 12) / 2,
            F(7, 4) * z + F(23, 2),
            -(F(11, 8) * z + F(17, 2)),
            z / 4 + F(5, 2),
            F(-1, 4),
        ) * h
    if (i, j) == (3, 2):
        return _p(
            1,
            -(z + 12) / 2,
            F(7, 4) * z + F(47, 4),
            -(F(11, 8) * z + F(75, 8)),
            z / 4 + F(51, 16),
            F(-3, 8),
        )
    if (i, j) == (3, 3):
        return _p(1, -(z + 11) / 2, F(3, 2) * z + 9, -(F(3, 4) * z + F(39, 8)), F(3, 4)) * h
    if (i, j) == (3, 4):
        return _p(1, -(z + 11) / 2, F(3, 2) * z + F(37, 4), -(F(3, 4) * z + F(45, 8)), F(9, 8))
    if (i, j) == (4, 1):
        return _p(
            1,
            -(z / 2 + 7),
            F(9, 4) * z + F(71, 4),
            -(F(13, 4) * z + F(83, 4)),
            F(27, 16) * z + F(185, 16),
            -(z / 4 + F(23, 8)),
            F(1, 4),
        )
    if (i, j) == (4, 2):
        return _p(
            1,
            -(z / 2 + 6),
            F(7, 4) * z + F(49, 4),
            -(F(13, 8) * z + F(83, 8)),
            F(5, 16) * z + F(55, 16),
            F(-3, 8),
        )
    if (i, j) == (4, 3):
        return _p(
            1,
            -(z / 2 + F(13, 2)),
            2 * z + F(59, 4),
            -(F(19, 8) * z + F(117, 8)),
            F(13, 16) * z + F(99, 16),
            F(-7, 8),
        )
    return _p(1, -(z / 2 + F(9, 2)), z + F(21, 4), F(-5, 4)) * one


def prefactor(i: int, z: int) -> RationalPolynomial:
    """(x - 1/2)^(z-1) for i = 1, 2; (x - 1/2)^(z-1) (x - 1) for i = 3; (x - 1/2)^z for i = 4

    Raises:
        IndexOutOfRange: z < 1, where the first three are not polynomials
    """
    if i not in range(1, 5):
        raise IndexOutOfRange(f"Prefactors exist for 1 <= i <= 4, got {i}")
    if z < 1:
        raise IndexOutOfRange(f"Prefactors need z >= 1, got {z}")
    h = _x_minus(HALF)
    if i == 4:
        return h**z
    if i == 3:
        return h ** (z - 1) * _x_minus(1)
    return h ** (z - 1)


def oracle_fij(i: int, j: int, z: int) -> RationalPolynomial:
    """F_ij by direct determinants on the generated G_i"""
    g = ggraph(i, z)
    roles = family_roles(FamilySpec(family=Family(f"g{i}"), z=z))
    removed = {1: (), 2: (roles["u1"],), 3: (roles["v1"],), 4: (roles["u1"], roles["v1"])}[j]
    return phi(g, HALF) if j == 1 else psi(g, removed, HALF)


class AppendixCheck(BaseModel):
    i: int
    j: int
    z: int
    expected: RationalPolynomial = Field(description="prefactor(i, z) * f_ij")
    actual: RationalPolynomial = Field(description="F_ij from determinants")

    model_config = ConfigDict(frozen=True)

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


class AppendixReport(BaseModel):
    zmax: int
    checks: list[AppendixCheck]
    readings: dict[str, bool] = Field(
        description="Whether each reading of the ambiguous first table line validates at z = 1"
    )

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def mismatches(self) -> list[AppendixCheck]:
        return [c for c in self.checks if not c.passed]


def table_reading_check(z: int = 1) -> dict[str, bool]:
    """Validate both readings of "f_11 = f_12 = ..." against the determinant oracle"""
    first_line = appendix_fij(1, 1, z)
    return {
        "f11=f21": prefactor(2, z) * first_line == oracle_fij(2, 1, z),
        "f11=f12": prefactor(1, z) * first_line == oracle_fij(1, 2, z),
    }


def verify_appendix(zmax: int) -> AppendixReport:
    """Check all sixteen F_ij factorisations for z = 1..zmax

    Raises:
        ValueError: zmax < 1
    """
    if zmax < 1:
        raise ValueError(f"zmax must be at least 1, got {zmax}")
    checks = [
        AppendixCheck(
            i=i,
            j=j,
            z=z,
            expected=prefactor(i, z) * appendix_fij(i, j, z),
            actual=oracle_fij(i, j, z),
        )
        for z in range(1, zmax + 1)
        for i in range(1, 5)
        for j in range(1, 5)
    ]
    return AppendixReport(zmax=zmax, checks=checks, readings=table_reading_check(1))


class ProofDifference(BaseModel):
    """phi(H_i(l,l)) - phi(H_j(l,l)) directly and through the host differences"""

    l: int
    z: int
    parity: Literal["even", "odd"]
    df1: RationalPolynomial
    df2: RationalPolynomial
    df3: RationalPolynomial
    direct: RationalPolynomial
    formula: RationalPolynomial

    @property
    def agrees(self) -> bool:
        return self.direct == self.formula


def proof_difference(l: int, z: int, parity: Literal["even", "odd"]) -> ProofDifference:
    """DF(x) = phi(B3*) - phi(B5*) for d = 2l (H_1 vs H_2) or d = 2l + 1 (H_3 vs H_4).

    The formula side is DF1 f_{l-1}^2 + DF2 f_{l-1} dp_l + DF3 dp_l^2 at alpha = 1/2.
    """
    if l < 1:
        raise ValueError(f"l must be positive, got {l}")
    first, second = (1, 2) if parity == "even" else (3, 4)

    def host(i: int) -> tuple[RationalPolynomial, RationalPolynomial, RationalPolynomial]:
        roles = family_roles(FamilySpec(family=Family(f"g{i}"), z=z))
        g = ggraph(i, z)
        u1, v1 = roles["u1"], roles["v1"]
        return (
            phi(g, HALF),
            psi(g, {u1}, HALF) + psi(g, {v1}, HALF),
            psi(g, {u1, v1}, HALF),
        )

    a, b = host(first), host(second)
    df1, df2, df3 = a[0] - b[0], a[1] - b[1], a[2] - b[2]
    formula = rooted_product_difference(
        df1, df2, df3, phi_path(l, HALF), path_poly(l - 1, HALF)
    )
    direct = phi(hgraph(first, l, l, z), HALF) - phi(hgraph(second, l, l, z), HALF)
    return ProofDifference(
        l=l, z=z, parity=parity, df1=df1, df2=df2, df3=df3, direct=direct, formula=formula
    )
