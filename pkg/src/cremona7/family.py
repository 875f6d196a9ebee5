"""The two-parameter family g(s,t) of degree-7 Cremona maps and its identities.

Every map is produced by :func:`triangular_substitution`: g(s,t) uses
alpha = t*x00^3, beta = s*x11^3 and denominator D, and the generalized family
uses binary forms in (U, D) with denominator D^m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .point import ProjectivePoint, ZeroPoint, format_rational, proportional
from .poly import (
    NVARS,
    VARIABLES,
    Polynomial,
    content,
    divisibility_order,
    evaluate,
    exact_divide,
    substitute,
    variables,
)
from .quadric import discriminant_irreducibility_certificate, discriminant_poly, triangular_substitution
from .report import CheckReport

D = discriminant_poly()


class InhomogeneousMap(ValueError):
    pass


class IdenticallyZeroComposition(ArithmeticError):
    pass


class UnsupportedMapShape(ValueError):
    pass


class SpecInvariantViolated(ValueError):
    pass


class FundamentalPoint(ArithmeticError):
    """Every defining form vanishes at the point, so the image is undefined."""


@dataclass(frozen=True)
class FamilyParams:
    s: Fraction = Fraction(1)
    t: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "s", Fraction(self.s))
        object.__setattr__(self, "t", Fraction(self.t))

    def __add__(self, other: "FamilyParams") -> "FamilyParams":
        return FamilyParams(self.s + other.s, self.t + other.t)

    def __neg__(self) -> "FamilyParams":
        return FamilyParams(-self.s, -self.t)

    def is_zero(self) -> bool:
        return self.s == 0 and self.t == 0

    def __str__(self):
        return f"{format_rational(self.s)},{format_rational(self.t)}"


@dataclass(frozen=True)
class RationalMap:
    """Six homogeneous forms of equal degree, in the order f00, f01, f11, f02, f12, f22."""

    forms: tuple
    label: str = ""
    params: Optional[FamilyParams] = field(default=None, compare=False)

    def __post_init__(self):
        forms = tuple(self.forms)
        if len(forms) != NVARS:
            raise ValueError(f"a map of P^5 needs {NVARS} forms, got {len(forms)}")
        if all(f.is_zero() for f in forms):
            raise ValueError("all forms are zero")
        degs = set()
        for f in forms:
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                raise InhomogeneousMap(f"form {f} is not homogeneous")
            degs.add(f.total_degree())
        if len(degs) != 1:
            raise InhomogeneousMap(f"forms have different degrees {sorted(degs)}")
        object.__setattr__(self, "forms", forms)

    @property
    def degree(self) -> int:
        return next(f.total_degree() for f in self.forms if not f.is_zero())

    def __getitem__(self, name: str) -> Polynomial:
        return self.forms[VARIABLES.index(name)]

    def values_at(self, coords: Sequence) -> tuple:
        return tuple(evaluate(f, coords) for f in self.forms)

    def image(self, point: ProjectivePoint) -> ProjectivePoint:
        try:
            return ProjectivePoint(self.values_at(point.coords))
        except ZeroPoint:
            raise FundamentalPoint(f"{point} is a fundamental point of {self.label or 'the map'}") from None

    def normalized(self) -> "RationalMap":
        return RationalMap(_normalize_content(self.forms), self.label, self.params)

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.forms == other.forms


def _normalize_content(forms: Sequence[Polynomial]) -> tuple:
    """Divide by the rational content and make the leading coefficient of the first nonzero form positive."""
    c = content(forms)
    first = next(f for f in forms if not f.is_zero())
    if first.leading_term()[1] < 0:
        c = -c
    inv = 1 / c
    return tuple(f.scale(inv) for f in forms)


def identity_map() -> RationalMap:
    return RationalMap(variables(), "id", FamilyParams(0, 0))


def build_gst(params: FamilyParams) -> RationalMap:
    """The six degree-7 forms of g(s,t).

    No cancellation happens here: at s = t = 0 all six forms share the factor
    D^2, and :func:`compose` removes it.
    """
    s, t = params.s, params.t
    x00, x01, x11, x02, x12, x22 = variables()
    D2 = D * D
    sD = D.scale(s)
    tD = D.scale(t)
    forms = (
        x00 * D2,
        x01 * D2,
        x11 * D2,
        x02 * D2 + x01 * x11 ** 3 * sD + x00 ** 4 * tD,
        x12 * D2 + x01 * x00 ** 3 * tD + x11 ** 4 * sD,
        x22 * D2
        + (x12 * x11 ** 3 * sD).scale(2)
        + (x02 * x00 ** 3 * tD).scale(2)
        + (x11 ** 7).scale(s * s)
        + (x01 * x11 ** 3 * x00 ** 3).scale(2 * s * t)
        + (x00 ** 7).scale(t * t),
    )
    return RationalMap(forms, f"g({params})", params)


@dataclass(frozen=True)
class GeneralizedSpec:
    """Data of a generalized map: binary forms phi, psi of degree m in (U, D).

    ``phi_coeffs[k]`` is the coefficient of U^k * D^(m-k).  ``alpha`` and
    ``beta`` override phi and psi with raw polynomials of degree 3m.
    """

    m: int
    phi_coeffs: tuple = ()
    psi_coeffs: tuple = ()
    U: Optional[Polynomial] = None
    alpha: Optional[Polynomial] = None
    beta: Optional[Polynomial] = None

    def _binary_form(self, coeffs) -> Polynomial:
        if len(coeffs) != self.m + 1:
            raise SpecInvariantViolated(f"binary form of degree {self.m} needs {self.m + 1} coefficients")
        if self.U is None:
            if any(coeffs):
                raise SpecInvariantViolated("U is required when binary-form coefficients are nonzero")
            return Polynomial.zero()
        out = Polynomial.zero()
        for k, c in enumerate(coeffs):
            if c:
                out = out + (self.U ** k * D ** (self.m - k)).scale(c)
        return out

    def validate(self) -> None:
        if not isinstance(self.m, int) or self.m < 1:
            raise SpecInvariantViolated("m must be a positive integer")
        if self.U is not None:
            extra = self.U.variables_used() - {"x00", "x01", "x11"}
            if extra:
                raise SpecInvariantViolated(f"U involves {sorted(extra)}")
            if self.U.is_zero() or not self.U.is_homogeneous() or self.U.total_degree() != 3:
                raise SpecInvariantViolated("U must be a homogeneous cubic")
        for name in ("alpha", "beta"):
            p = getattr(self, name)
            if p is not None and not p.is_zero():
                if not p.is_homogeneous() or p.total_degree() != 3 * self.m:
                    raise SpecInvariantViolated(f"{name} must be homogeneous of degree {3 * self.m}")

    def phi(self) -> Polynomial:
        return self.alpha if self.alpha is not None else self._binary_form(self.phi_coeffs or (0,) * (self.m + 1))

    def psi(self) -> Polynomial:
        return self.beta if self.beta is not None else self._binary_form(self.psi_coeffs or (0,) * (self.m + 1))


def build_generalized(spec: GeneralizedSpec) -> RationalMap:
    spec.validate()
    forms = triangular_substitution(spec.phi(), spec.psi(), D ** spec.m)
    return RationalMap(forms, f"generalized(m={spec.m})")


def map_degree(rmap: RationalMap) -> int:
    return rmap.degree


def verify_discriminant_identity(rmap: RationalMap) -> CheckReport:
    """D(f00, ..., f22) == D^deg."""
    lhs = substitute(D, rmap.forms)
    deg = rmap.degree
    rhs = D ** deg
    ok = lhs == rhs
    return CheckReport(
        name=f"discriminant-identity {rmap.label}".strip(),
        status="pass" if ok else "fail",
        detail=f"D(forms) {'==' if ok else '!='} D^{deg}",
        data={
            "exponent": deg,
            "lhs_terms": len(lhs),
            "lhs_hash": lhs.fingerprint(),
            "rhs_terms": len(rhs),
            "rhs_hash": rhs.fingerprint(),
        },
    )


@dataclass(frozen=True)
class CancelledFactor:
    base: Polynomial
    exponent: int


def compose(a: RationalMap, b: RationalMap) -> tuple[RationalMap, CancelledFactor]:
    """The map "a after b", with the largest common power of D and the constant content removed."""
    return _reduce([substitute(f, b.forms) for f in a.forms], a, b)


def _reduce(raw: list, a: RationalMap, b: RationalMap) -> tuple[RationalMap, CancelledFactor]:
    if all(f.is_zero() for f in raw):
        raise IdenticallyZeroComposition(f"{a.label} o {b.label} vanishes identically")
    k = min(divisibility_order(f, D) for f in raw if not f.is_zero())
    if k:
        Dk = D ** k
        raw = [exact_divide(f, Dk) for f in raw]
    forms = _normalize_content(raw)
    label = f"{a.label} o {b.label}"
    params = a.params + b.params if a.params is not None and b.params is not None else None
    return RationalMap(forms, label, params), CancelledFactor(D, k)


def _family_exponent(rmap: RationalMap) -> int:
    """Return k if f00, f01, f11 are x00*D^k, x01*D^k, x11*D^k; else raise."""
    x = variables()
    k = None
    for i in range(3):
        f = rmap.forms[i]
        if f.is_zero():
            raise UnsupportedMapShape("leading forms vanish")
        ki = divisibility_order(f, D)
        if k is None:
            k = ki
        if ki != k or f != x[i] * D ** k:
            raise UnsupportedMapShape(f"{VARIABLES[i]} form is not {VARIABLES[i]}*D^{k}")
    if k == 0:
        raise UnsupportedMapShape("forms carry no power of D")
    return k


def common_factor_check(rmap: RationalMap) -> CheckReport:
    """Structural certificate that the six forms share no nonconstant factor.

    A common factor divides gcd(x00*D^k, x01*D^k, x11*D^k) = D^k, and D is
    irreducible, so it is enough that D fails to divide one of f02, f12, f22.
    """
    k = _family_exponent(rmap)
    x = variables()
    if all(f == xi * D ** k for f, xi in zip(rmap.forms, x)):
        raise UnsupportedMapShape("degenerate map x_ij*D^k (parameters zero); cancel first")
    cert = discriminant_irreducibility_certificate()
    orders = {VARIABLES[i]: divisibility_order(rmap.forms[i], D) for i in (3, 4, 5) if not rmap.forms[i].is_zero()}
    ok = cert.passed and min(orders.values()) == 0
    free = [name for name, o in orders.items() if o == 0]
    return CheckReport(
        name=f"no-common-factor {rmap.label}".strip(),
        status="pass" if ok else "fail",
        detail=(f"D irreducible; D does not divide f{free[0][1:]}" if ok
                else "D divides every form" if cert.passed else "irreducibility certificate failed"),
        data={"D_power_in_first_forms": k, "D_order": orders},
    )


def maps_equal_projectively(a: RationalMap, b: RationalMap) -> bool:
    return a.normalized().forms == b.normalized().forms


def verify_group_law(p1: FamilyParams, p2: FamilyParams) -> CheckReport:
    """g(p1) o g(p2) == g(p1 + p2), cancelling D^14 (D^16 when the sum is zero)."""
    composed, cancelled = compose(build_gst(p1), build_gst(p2))
    total = p1 + p2
    if total.is_zero():
        target, expected = identity_map(), 16
    else:
        target, expected = build_gst(total), 14
    same = composed.forms == target.normalized().forms
    ok = same and cancelled.exponent == expected
    return CheckReport(
        name=f"group-law g({p1}) o g({p2})",
        status="pass" if ok else "fail",
        detail=f"composite {'equals' if same else 'differs from'} {target.label}, cancelled D^{cancelled.exponent}",
        data={"cancelled_exponent": cancelled.exponent, "expected_exponent": expected, "target": target.label},
    )


def verify_inverse(params: FamilyParams) -> CheckReport:
    """g(-s,-t)(g(s,t)) == x_ij * D^16."""
    a, b = build_gst(-params), build_gst(params)
    raw = [substitute(f, b.forms) for f in a.forms]
    D16 = D ** 16
    exact = all(r == xi * D16 for r, xi in zip(raw, variables()))
    composed, cancelled = _reduce(raw, a, b)
    ok = exact and composed == identity_map() and cancelled.exponent == 16
    return CheckReport(
        name=f"inverse g({-params}) o g({params})",
        status="pass" if ok else "fail",
        detail=f"forms {'==' if exact else '!='} x_ij*D^16; cancelled D^{cancelled.exponent}",
        data={"cancelled_exponent": cancelled.exponent, "exact_xij_D16": exact},
    )


def pointwise_consistent(a: RationalMap, b: RationalMap, composed: RationalMap, point: ProjectivePoint) -> bool:
    """composed(P) is proportional to a(b(P))."""
    via = a.values_at(b.values_at(point.coords))
    direct = composed.values_at(point.coords)
    return proportional(via, direct)


def remark_as_printed(phi: Polynomial, psi: Polynomial, m: int) -> tuple:
    """The generalized formulas with the printed (inconsistent) x12' and x22' lines.

    Kept only to show that it breaks the discriminant identity.
    """
    x00, x01, x11, x02, x12, x22 = variables()
    Dm = D ** m
    D2m = Dm * Dm
    return (
        x00 * D2m,
        x01 * D2m,
        x11 * D2m,
        x02 * D2m + x01 * Dm * psi + x00 * Dm * phi,
        x12 * D2m + x01 * Dm * phi + x11 * Dm * phi,
        x22 * D2m + (x12 * Dm * phi).scale(2) + (x02 * Dm * psi).scale(2)
        + x11 * phi * phi + (x01 * phi * psi).scale(2) + x00 * psi * psi,
    )


__all__ = [
    "D",
    "CancelledFactor",
    "FamilyParams",
    "FundamentalPoint",
    "GeneralizedSpec",
    "IdenticallyZeroComposition",
    "InhomogeneousMap",
    "RationalMap",
    "SpecInvariantViolated",
    "UnsupportedMapShape",
    "build_generalized",
    "build_gst",
    "common_factor_check",
    "compose",
    "identity_map",
    "map_degree",
    "maps_equal_projectively",
    "pointwise_consistent",
    "remark_as_printed",
    "verify_discriminant_identity",
    "verify_group_law",
    "verify_inverse",
]
