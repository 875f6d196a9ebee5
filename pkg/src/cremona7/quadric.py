"""Coordinates of P^5 read as ternary quadratic forms.

A point (x00, x01, x11, x02, x12, x22) is the quadric

    F = x00*T0^2 + 2*x01*T0*T1 + x11*T1^2 + 2*x02*T0*T2 + 2*x12*T1*T2 + x22*T2^2

with symmetric matrix [[x00, x01, x02], [x01, x11, x12], [x02, x12, x22]].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .point import ProjectivePoint
from .poly import NotDivisible, Polynomial, exact_divide, parse_poly, variables
from .report import CheckReport


class ZeroLinearForm(ValueError):
    pass


class ZeroDenominator(ValueError):
    pass


_D = parse_poly("x00*x11*x22 + 2*x01*x02*x12 - x00*x12^2 - x11*x02^2 - x22*x01^2")


def discriminant_poly() -> Polynomial:
    """Determinant of the symmetric coefficient matrix (a cubic with five terms)."""
    return _D


def septic_poly(s=1, t=1) -> Polynomial:
    """The D-free tail of the last form of g(s,t).

    For s = t = 1 this is x11^7 + 2*x01*x11^3*x00^3 + x00^7.
    """
    return parse_poly("x11^7").scale(Fraction(s) ** 2) + parse_poly(
        "x01*x11^3*x00^3"
    ).scale(2 * Fraction(s) * Fraction(t)) + parse_poly("x00^7").scale(Fraction(t) ** 2)


def symmetric_matrix(coords) -> list:
    x00, x01, x11, x02, x12, x22 = coords
    return [[x00, x01, x02], [x01, x11, x12], [x02, x12, x22]]


@dataclass(frozen=True)
class TernaryQuadric:
    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) != 6:
            raise ValueError("a ternary quadric has six coefficients")
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))

    @classmethod
    def from_matrix(cls, m) -> "TernaryQuadric":
        if any(m[i][j] != m[j][i] for i in range(3) for j in range(3)):
            raise ValueError("matrix is not symmetric")
        return cls((m[0][0], m[0][1], m[1][1], m[0][2], m[1][2], m[2][2]))

    def matrix(self) -> list:
        return symmetric_matrix(self.coefficients)

    def __call__(self, T0, T1, T2):
        x00, x01, x11, x02, x12, x22 = self.coefficients
        return (x00 * T0 * T0 + 2 * x01 * T0 * T1 + x11 * T1 * T1
                + 2 * x02 * T0 * T2 + 2 * x12 * T1 * T2 + x22 * T2 * T2)

    def discriminant(self) -> Fraction:
        (a, b, c), (_, d, e), (_, _, f) = self.matrix()
        return a * d * f + 2 * b * c * e - a * e * e - d * c * c - f * b * b

    def point(self) -> ProjectivePoint:
        return ProjectivePoint(self.coefficients)


@dataclass(frozen=True)
class LinearForm:
    a0: Fraction
    a1: Fraction
    a2: Fraction

    def square(self) -> TernaryQuadric:
        a0, a1, a2 = (Fraction(a) for a in (self.a0, self.a1, self.a2))
        return TernaryQuadric((a0 * a0, a0 * a1, a1 * a1, a0 * a2, a1 * a2, a2 * a2))


def veronese_point(form: LinearForm) -> ProjectivePoint:
    """The quadric l^2 as a point of P^5."""
    if not any((form.a0, form.a1, form.a2)):
        raise ZeroLinearForm("linear form is identically zero")
    return form.square().point()


def is_veronese(point: ProjectivePoint) -> bool:
    """True iff the symmetric matrix of the point has rank one."""
    m = symmetric_matrix(point.coords)
    for r1, r2 in combinations(range(3), 2):
        for c1, c2 in combinations(range(3), 2):
            if m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]:
                return False
    return True


def triangular_substitution(alpha: Polynomial, beta: Polynomial, denom: Polynomial) -> tuple:
    """Coefficient action of T0 -> T0 + (alpha/denom)*T2, T1 -> T1 + (beta/denom)*T2.

    Every output coordinate is multiplied by denom^2 to clear denominators.
    """
    if denom.is_zero():
        raise ZeroDenominator("denominator polynomial is zero")
    x00, x01, x11, x02, x12, x22 = variables()
    d = denom
    d2 = d * d
    ad = alpha * d
    bd = beta * d
    return (
        x00 * d2,
        x01 * d2,
        x11 * d2,
        x02 * d2 + x00 * ad + x01 * bd,
        x12 * d2 + x01 * ad + x11 * bd,
        x22 * d2 + (x02 * ad + x12 * bd).scale(2)
        + x00 * alpha * alpha + (x01 * alpha * beta).scale(2) + x11 * beta * beta,
    )


def discriminant_irreducibility_certificate() -> CheckReport:
    """Check the argument that D is irreducible over Q.

    D is linear in x22:  D = x22*A + B  with  A = x00*x11 - x01^2  and B free
    of x22.  A factorization of D would need a factor free of x22 dividing
    both A and B.  A is a nondegenerate ternary quadratic form (Gram
    determinant nonzero), hence irreducible, and A does not divide B.
    """
    x22 = Polynomial.var("x22")
    a = parse_poly("x00*x11 - x01^2")
    b = _D - x22 * a
    ok = True
    notes = []
    if "x22" in b.variables_used():
        ok = False
        notes.append("B depends on x22")
    # Gram matrix of A in (x00, x11, x01): A = x00*x11 - x01^2
    gram = TernaryQuadric((0, Fraction(1, 2), 0, 0, 0, -1))
    if gram.discriminant() == 0:
        ok = False
        notes.append("A is degenerate")
    try:
        exact_divide(b, a)
        ok = False
        notes.append("A divides B")
    except NotDivisible:
        pass
    return CheckReport(
        name="discriminant-irreducible",
        status="pass" if ok else "fail",
        detail="D = x22*(x00*x11 - x01^2) + B; A irreducible, A does not divide B"
        if ok else "; ".join(notes),
        data={"A": str(a), "B": str(b)},
    )
