"""Exit criteria.  Arithmetic is exact, so every tolerance is zero."""

import io
import random
import time
from fractions import Fraction

import pytest

from cremona7.cli import FORM_NAMES, main
from cremona7.family import (
    D,
    FamilyParams,
    GeneralizedSpec,
    build_generalized,
    build_gst,
    common_factor_check,
    compose,
    identity_map,
    map_degree,
    pointwise_consistent,
    verify_group_law,
)
from cremona7.multiplicity import fano_refutation_report, min_mult_at_point, mult_at_point
from cremona7.point import ProjectivePoint
from cremona7.poly import Polynomial, exact_divide, evaluate, parse_poly, substitute

criterion = pytest.mark.criterion


def rand_q(rng, nonzero=False):
    while True:
        q = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if q or not nonzero:
            return q


def rand_poly(rng, max_degree=6, max_terms=10, degree=None):
    terms = {}
    for _ in range(rng.randint(0 if degree is None else 1, max_terms)):
        total = rng.randint(0, max_degree) if degree is None else degree
        cuts = sorted(rng.randint(0, total) for _ in range(5))
        bounds = [0, *cuts, total]
        terms[tuple(bounds[i + 1] - bounds[i] for i in range(6))] = rand_q(rng, nonzero=True)
    return Polynomial(terms)


@criterion(1, "discriminant invariance D(g(s,t)) = D^7")
@pytest.mark.parametrize("s, t", [(1, 1), (1, 0), (0, 1), (2, 3), (Fraction(1, 2), -3)])
def test_discriminant_invariance(s, t):
    forms = build_gst(FamilyParams(s, t)).forms
    assert substitute(D, forms) == D ** 7


@criterion(2, "inverse: g(-1,-1) o g(1,1) = x_ij * D^16, under 2 minutes")
def test_inverse_identity():
    start = time.perf_counter()
    composed, cancelled = compose(build_gst(FamilyParams(-1, -1)), build_gst(FamilyParams(1, 1)))
    elapsed = time.perf_counter() - start
    assert composed == identity_map()
    assert cancelled.base == D and cancelled.exponent == 16
    assert elapsed < 120


@criterion(3, "group law g(1,0) o g(0,1) = g(1,1) cancelling D^14, plus two random pairs")
def test_group_law(group_composition):
    composed, cancelled = group_composition
    assert composed == build_gst(FamilyParams(1, 1))
    assert cancelled.exponent == 14
    rng = random.Random(0)
    for _ in range(2):
        p1 = FamilyParams(rand_q(rng), rand_q(rng))
        p2 = FamilyParams(rand_q(rng), rand_q(rng))
        report = verify_group_law(p1, p2)
        assert report.passed, report
        assert report.data["cancelled_exponent"] == (16 if (p1 + p2).is_zero() else 14)


@criterion(4, "six homogeneous degree-7 forms without common factor")
def test_degree_and_primitivity():
    rng = random.Random(0)
    params = [(1, 1), (1, 0), (0, 1), (2, 3), (Fraction(1, 2), -3)]
    params += [(rand_q(rng, True), rand_q(rng)) for _ in range(3)]
    for s, t in params:
        g = build_gst(FamilyParams(s, t))
        assert all(f.is_homogeneous() and f.total_degree() == 7 for f in g.forms)
        assert map_degree(g) == 7
        report = common_factor_check(g)
        assert report.passed, report
        assert report.data["D_order"]["x22"] == 0


@criterion(5, "multiplicities (5,5,5,5,5,4) at [0:0:0:0:0:1]; D double at [1:0:0:0:0:0]; septic sample min 1")
def test_multiplicity_headlines(g11):
    x22_point = ProjectivePoint((0, 0, 0, 0, 0, 1))
    assert [mult_at_point(f, x22_point) for f in g11.forms] == [5, 5, 5, 5, 5, 4]
    assert min_mult_at_point(g11, x22_point) == 4
    assert mult_at_point(D, ProjectivePoint((1, 0, 0, 0, 0, 0))) == 2
    assert min_mult_at_point(g11, ProjectivePoint((1, Fraction(-129, 16), 2, 0, 0, 0))) == 1


@criterion(6, "Fano refutation report: violation count 0")
def test_fano_refutation(g11):
    reports = fano_refutation_report(g11, seed=0)
    loci = {r.name: r.data for r in reports if "dim_y" in r.data}
    assert len(loci["fano septic-D-locus"]["samples"]) >= 5
    assert len(loci["fano veronese-fundamental"]["samples"]) >= 3
    assert len(loci["fano plane-x00-x01-x11"]["samples"]) >= 5
    assert len(loci["fano line-in-plane"]["samples"]) >= 5
    assert "fano divisor-D" in loci and "fano point-x22" in loci
    thresholds = {0: Fraction(14, 3), 1: Fraction(7, 2), 2: Fraction(7, 3), 3: Fraction(7, 6)}
    for data in loci.values():
        assert Fraction(data["threshold"]) == thresholds[data["dim_y"]]
        assert not data["violated"]
        assert data["min_mult"] <= thresholds[data["dim_y"]]
    summary = reports[-1]
    assert summary.name == "fano summary" and summary.passed
    assert summary.data["violations"] == 0


@criterion(7, "generalized family: m=1 equals g(s,t); m=2 gives D^13 and degree 13")
def test_generalized_family():
    x00, x11 = parse_poly("x00"), parse_poly("x11")
    for s, t in [(1, 1), (Fraction(2, 3), -4)]:
        spec = GeneralizedSpec(m=1, alpha=(x00 ** 3).scale(t), beta=(x11 ** 3).scale(s))
        assert build_generalized(spec) == build_gst(FamilyParams(s, t))
    spec = GeneralizedSpec(m=2, phi_coeffs=(0, 1, 0), psi_coeffs=(1, 0, 0), U=x00 ** 3)
    g = build_generalized(spec)
    assert substitute(D, g.forms) == D ** 13
    assert map_degree(g) == 13


@criterion(8, "property suites with seed 0")
def test_property_suites(group_composition):
    rng = random.Random(0)
    for _ in range(1000):
        a, b, c = rand_poly(rng), rand_poly(rng), rand_poly(rng)
        assert a + b == b + a and a * b == b * a
        assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for _ in range(300):
        f, g = rand_poly(rng), rand_poly(rng)
        if g:
            assert exact_divide(f * g, g) == f
    for _ in range(200):
        a, b = rand_poly(rng, degree=rng.randint(0, 4)), rand_poly(rng, degree=rng.randint(0, 4))
        assert (a * b).is_homogeneous() and (a * b).total_degree() == a.total_degree() + b.total_degree()

    points = [ProjectivePoint((0, 0, 0, 0, 0, 1)), ProjectivePoint((1, 0, 0, 0, 0, 0)),
              ProjectivePoint((1, -1, 1, 0, 0, 0)), ProjectivePoint((0, 0, 0, 1, 2, 3))]
    for _ in range(50):
        f = rand_poly(rng, degree=rng.randint(1, 3), max_terms=4) * D
        g = rand_poly(rng, degree=rng.randint(1, 3), max_terms=4) * (D if rng.random() < 0.5 else 1)
        p = rng.choice(points)
        assert mult_at_point(f * g, p) == mult_at_point(f, p) + mult_at_point(g, p)

    for _ in range(50):
        f = rand_poly(rng, degree=rng.randint(1, 4), max_terms=6) * D
        nonzero = rng.sample(range(6), rng.randint(2, 6))
        p = ProjectivePoint([rand_q(rng, True) if i in nonzero else 0 for i in range(6)])
        assert len({mult_at_point(f, p, pivot=i) for i in nonzero}) == 1

    composed, _ = group_composition
    a, b = build_gst(FamilyParams(1, 0)), build_gst(FamilyParams(0, 1))
    checked = 0
    while checked < 50:
        coords = [rand_q(rng) for _ in range(6)]
        if evaluate(D, coords) == 0:
            continue
        assert pointwise_consistent(a, b, composed, ProjectivePoint(coords))
        checked += 1


@criterion(9, "CLI round trips: emit -> parse, eval (1,1) then (-1,-1) on 20 points")
def test_cli_round_trips():
    def run(*argv):
        out = io.StringIO()
        code = main(list(argv), out, io.StringIO())
        return code, out.getvalue()

    code, text = run("emit", "--s", "1", "--t", "1")
    assert code == 0
    parsed = tuple(parse_poly(line.split("= ", 1)[1]) for line in text.splitlines())
    assert [line.split("=")[0] for line in text.splitlines()] == list(FORM_NAMES)
    assert parsed == build_gst(FamilyParams(1, 1)).forms

    rng = random.Random(0)
    done = 0
    while done < 20:
        coords = [rand_q(rng) for _ in range(6)]
        if evaluate(D, coords) == 0:
            continue
        point = ProjectivePoint(coords)
        code, image = run("eval", "--point", str(point), "--s", "1", "--t", "1")
        assert code == 0
        code, back = run("eval", "--point", image.strip(), "--s", "-1", "--t", "-1")
        assert code == 0 and back.strip() == str(point)
        done += 1

