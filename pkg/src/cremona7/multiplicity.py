"""Orders of vanishing, base-locus samples, and the Fano inequality check.

Multiplicity at a point is computed elementarily: dehomogenize at a nonzero
coordinate, translate the point to the origin, and take the lowest total
degree of the result.  Multiplicity along a positive-dimensional locus is
bounded above by the minimum over sampled points, because it can only jump
up at special points.  That is the direction a refutation needs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .family import D, FamilyParams, RationalMap, UnsupportedMapShape, build_gst
from .point import ProjectivePoint, format_rational
from .poly import NVARS, Polynomial, ZeroInput, divisibility_order, evaluate, substitute, variables
from .quadric import LinearForm, is_veronese, septic_poly, veronese_point
from .report import CheckReport

SCOPE_NOTE = "enumerated loci plus derived samples; not a universal proof over all subvarieties"


class ZeroPolynomial(ValueError):
    pass


class DegenerateParameter(ValueError):
    pass


def mult_at_point(f: Polynomial, point: ProjectivePoint, pivot: Optional[int] = None) -> int:
    """Order of vanishing of the form f at the point (0 iff f(P) != 0)."""
    if f.is_zero():
        raise ZeroPolynomial("multiplicity of the zero polynomial is undefined")
    i = point.pivot() if pivot is None else pivot
    affine = point.affine(i)
    x = variables()
    images = [Polynomial.one() if j == i else x[j] + affine[j] for j in range(NVARS)]
    return substitute(f, images).min_degree()


def min_mult_at_point(rmap: RationalMap, point: ProjectivePoint) -> int:
    return min(mult_at_point(f, point) for f in rmap.forms if not f.is_zero())


def is_fundamental(rmap: RationalMap, point: ProjectivePoint) -> bool:
    return not any(rmap.values_at(point.coords))


def order_along_hypersurface(f: Polynomial, h: Polynomial) -> int:
    """Generic multiplicity of f along the irreducible hypersurface h = 0."""
    if f.is_zero():
        raise ZeroInput("order of the zero polynomial is infinite")
    return divisibility_order(f, h)


@dataclass(frozen=True)
class FanoCase:
    dim_y: int
    d: int
    r: int = 6

    def __post_init__(self):
        if not 0 <= self.dim_y <= 3:
            raise ValueError("the subvariety must have 0 <= dim Y <= 3")
        if self.d < 1 or self.r < 1:
            raise ValueError("degree and index must be positive")

    @property
    def threshold(self) -> Fraction:
        return fano_threshold(self)


def fano_threshold(case: FanoCase) -> Fraction:
    """(4 - dim Y) * d / r: Fano asks for a Y whose multiplicity strictly exceeds this."""
    return Fraction((4 - case.dim_y) * case.d, case.r)


class Locus(Enum):
    SEPTIC_D_LOCUS = "septic-D-locus"
    VERONESE_FUNDAMENTAL = "veronese-fundamental"
    PLANE_X00_X01_X11 = "plane-x00-x01-x11"
    LINE_IN_PLANE = "line-in-plane"
    POINT_X22 = "point-x22"


# Dimension of each locus as a subvariety of P^5.  The septic locus is cut out
# by two equations; the Veronese samples lie on the conic {(1, -1, a2)}^2.
LOCUS_DIM = {
    Locus.POINT_X22: 0,
    Locus.VERONESE_FUNDAMENTAL: 1,
    Locus.LINE_IN_PLANE: 1,
    Locus.PLANE_X00_X01_X11: 2,
    Locus.SEPTIC_D_LOCUS: 3,
}


def on_locus(point: ProjectivePoint, tag: Locus, s=1, t=1) -> bool:
    c = point.coords
    if tag is Locus.SEPTIC_D_LOCUS:
        return c[0] != 0 and evaluate(D, c) == 0 and evaluate(septic_poly(s, t), c) == 0
    if tag is Locus.VERONESE_FUNDAMENTAL:
        return is_veronese(point) and evaluate(septic_poly(s, t), c) == 0
    if tag is Locus.PLANE_X00_X01_X11:
        return c[0] == c[1] == c[2] == 0
    if tag is Locus.LINE_IN_PLANE:
        return c[0] == c[1] == c[2] == c[3] == 0
    if tag is Locus.POINT_X22:
        return c == (0, 0, 0, 0, 0, 1)
    raise ValueError(tag)


@dataclass(frozen=True)
class LocusSample:
    point: ProjectivePoint
    tag: Locus
    witness: dict = field(default_factory=dict)

    def __post_init__(self):
        if not on_locus(self.point, self.tag):
            raise ValueError(f"{self.point} does not lie on {self.tag.value}")


def sample_septic_locus(lam, x02=0, x12=0) -> LocusSample:
    """A point with x00 = 1, x11 = lam on both D = 0 and the septic.

    x01 is solved from the septic, then x22 from D (which is linear in x22).
    """
    lam, x02, x12 = Fraction(lam), Fraction(x02), Fraction(x12)
    if lam == 0:
        raise DegenerateParameter("lambda must be nonzero")
    x01 = -(lam ** 7 + 1) / (2 * lam ** 3)
    lead = lam - x01 * x01
    if lead == 0:
        raise DegenerateParameter(f"D is independent of x22 at lambda={lam}")
    x22 = (x12 * x12 + lam * x02 * x02 - 2 * x01 * x02 * x12) / lead
    return LocusSample(
        ProjectivePoint((1, x01, lam, x02, x12, x22)),
        Locus.SEPTIC_D_LOCUS,
        {"lambda": format_rational(lam), "x02": format_rational(x02), "x12": format_rational(x12)},
    )


def sample_veronese_fundamental(a2) -> LocusSample:
    """The square of T0 - T1 + a2*T2, a double point of D on the septic."""
    a2 = Fraction(a2)
    return LocusSample(
        veronese_point(LinearForm(Fraction(1), Fraction(-1), a2)),
        Locus.VERONESE_FUNDAMENTAL,
        {"a2": format_rational(a2)},
    )


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if q or not nonzero:
            return q


def sample_plane(rng: random.Random) -> LocusSample:
    a, b, c = (random_rational(rng, nonzero=True) for _ in range(3))
    return LocusSample(ProjectivePoint((0, 0, 0, a, b, c)), Locus.PLANE_X00_X01_X11,
                       {"x02": format_rational(a), "x12": format_rational(b), "x22": format_rational(c)})


def sample_line(rng: random.Random) -> LocusSample:
    b, c = (random_rational(rng, nonzero=True) for _ in range(2))
    return LocusSample(ProjectivePoint((0, 0, 0, 0, b, c)), Locus.LINE_IN_PLANE,
                       {"x12": format_rational(b), "x22": format_rational(c)})


def x00_case_split_holds(point: ProjectivePoint) -> bool:
    """At a base point with x00 = 0: x11 = 0 and (x01 = 0 or 2*x02*x12 - x01*x22 = 0)."""
    x00, x01, x11, x02, x12, x22 = point.coords
    if x00 != 0:
        return True
    return x11 == 0 and (x01 == 0 or 2 * x02 * x12 - x01 * x22 == 0)


def _check_params(rmap: RationalMap) -> FamilyParams:
    p = rmap.params
    if p is None or p.is_zero() or p.s != p.t or rmap.degree != 7 or rmap != build_gst(p):
        raise UnsupportedMapShape("the refutation report needs g(c,c) with c != 0")
    return p


def _locus_report(rmap: RationalMap, tag: Locus, samples: list, d: int) -> CheckReport:
    case = FanoCase(LOCUS_DIM[tag], d)
    thr = case.threshold
    rows = []
    for sample in samples:
        mults = [mult_at_point(f, sample.point) for f in rmap.forms]
        rows.append({"point": str(sample.point), "mults": mults, "min": min(mults), "witness": sample.witness})
    bound = min(r["min"] for r in rows)
    violated = bound > thr
    return CheckReport(
        name=f"fano {tag.value}",
        status="fail" if violated else "pass",
        detail=f"dim {case.dim_y}: min mult {bound} {'>' if violated else '<='} {format_rational(thr)}",
        data={"dim_y": case.dim_y, "threshold": format_rational(thr), "min_mult": bound,
              "violated": violated, "samples": rows},
    )


def fano_refutation_report(rmap: RationalMap, seed: int = 0, n_septic: int = 5, n_veronese: int = 3,
                           n_plane: int = 5, n_line: int = 5) -> list:
    """Check every enumerated locus against the strict Fano inequality.

    Returns one report per locus group, one for the x00 = D = 0 case split,
    and a final summary whose data carries the violation count.
    """
    _check_params(rmap)
    d = rmap.degree
    rng = random.Random(seed)
    reports = []

    point = ProjectivePoint((0, 0, 0, 0, 0, 1))
    reports.append(_locus_report(rmap, Locus.POINT_X22, [LocusSample(point, Locus.POINT_X22)], d))

    septic = []
    while len(septic) < n_septic:
        try:
            septic.append(sample_septic_locus(random_rational(rng, nonzero=True),
                                              random_rational(rng), random_rational(rng)))
        except DegenerateParameter:
            continue
    reports.append(_locus_report(rmap, Locus.SEPTIC_D_LOCUS, septic, d))

    veronese = [sample_veronese_fundamental(0)]
    veronese += [sample_veronese_fundamental(random_rational(rng, nonzero=True)) for _ in range(n_veronese - 1)]
    reports.append(_locus_report(rmap, Locus.VERONESE_FUNDAMENTAL, veronese, d))

    plane = [sample_plane(rng) for _ in range(n_plane)]
    reports.append(_locus_report(rmap, Locus.PLANE_X00_X01_X11, plane, d))
    line = [sample_line(rng) for _ in range(n_line)]
    reports.append(_locus_report(rmap, Locus.LINE_IN_PLANE, line, d))

    orders = [order_along_hypersurface(f, D) for f in rmap.forms]
    thr = FanoCase(3, d).threshold
    violated = min(orders) > thr
    reports.append(CheckReport(
        name="fano divisor-D",
        status="fail" if violated else "pass",
        detail=f"dim 3: min order along D {min(orders)} {'>' if violated else '<='} {format_rational(thr)}",
        data={"dim_y": 3, "threshold": format_rational(thr), "min_mult": min(orders),
              "violated": violated, "orders": orders},
    ))

    base = [s.point for s in plane + line]
    split_ok = all(is_fundamental(rmap, p) and x00_case_split_holds(p) for p in base)
    reports.append(CheckReport(
        name="fano case-split x00=D=0",
        status="pass" if split_ok else "fail",
        detail="sampled base points with x00=0 have x11=0 and x01*(2*x02*x12 - x01*x22)=0",
        data={"points": [str(p) for p in base]},
    ))

    violations = sum(1 for r in reports if r.data.get("violated"))
    ok = violations == 0 and all(r.passed for r in reports)
    reports.append(CheckReport(
        name="fano summary",
        status="pass" if ok else "fail",
        detail=("no Fano violation found" if violations == 0 else f"{violations} Fano violation(s)")
        + f" ({SCOPE_NOTE})",
        data={"violations": violations, "seed": seed,
              "thresholds": {str(k): format_rational(FanoCase(k, d).threshold) for k in range(4)}},
    ))
    return reports
