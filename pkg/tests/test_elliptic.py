import random
from fractions import Fraction

import pytest

from lattes_lab.elliptic import (
    CATALOG,
    CATALOG_BY_NAME,
    Curve,
    add_points,
    cm_model,
    count_points,
    curve_hash,
    division_poly,
    eval_lattes_vs_group_law,
    format_curve,
    lattes_map,
    negate_point,
    noncm_family,
    parse_curve,
    quadratic_twist,
    random_point,
    scalar_mul,
    torsion_classify_Ed,
    torsion_x_rational,
)
from lattes_lab.intmath import kronecker, primes_upto
from lattes_lab.polyrat import Poly, QQ, format_ratmap


def test_invariants():
    assert Curve(0, 0, 0, 1, 0).j == 1728
    assert Curve(0, 0, 0, -264, 1694).j == -32768
    assert Curve(0, 0, 0, -9, 12).j == -5184
    assert Curve(0, 1, 0, -3, 1).j == 8000
    assert Curve(0, 0, 1, -38, 90).j == -(96**3)
    assert Curve(0, 0, 0, -35, 98).j == -3375
    assert Curve(0, 0, 0, -15, 22).j == 54000
    assert Curve(0, 0, 0, -120, 506).j == -12288000
    assert Curve(0, 0, 0, 0, 2).j == 0
    with pytest.raises(ValueError):
        Curve(0, 0, 0, 0, 0)  # singular


def test_b_invariant_identity():
    rng = random.Random(2)
    built = 0
    while built < 50:
        try:
            c = Curve(*[Fraction(rng.randrange(-6, 7)) for _ in range(5)])
        except ValueError:
            continue
        built += 1
        assert 4 * c.b8 == c.b2 * c.b6 - c.b4**2


def test_division_polys_fixed_values():
    assert division_poly(Curve(0, 0, 0, 1, 0), 3) == Poly(QQ, [-1, 0, 6, 0, 3])
    # 3(x-3)(x^3+3x^2-21x+25)
    assert division_poly(Curve(0, 0, 0, -15, 22), 3) == Poly(QQ, [-225, 264, -90, 0, 3])
    # 3(x^2-22x+132)(x^2+22x-176)
    assert division_poly(Curve(0, 0, 0, -264, 1694), 3) == Poly(QQ, [-69696, 20328, -1584, 0, 3])
    # 3(x-6)(x^3+6x^2-204x+800) = 3x^4 - 720x^2 + 6072x - 14400
    assert division_poly(Curve(0, 0, 0, -120, 506), 3) == Poly(QQ, [-14400, 6072, -720, 0, 3])
    assert division_poly(Curve(0, 0, 0, 5, 7), 1) == Poly.one(QQ)


def test_psi3_matches_short_form_symbolically():
    rng = random.Random(3)
    for _ in range(30):
        A, B = rng.randrange(-20, 21), rng.randrange(-20, 21)
        try:
            c = Curve(0, 0, 0, A, B)
        except ValueError:
            continue
        assert division_poly(c, 3) == Poly(QQ, [-A * A, 12 * B, 6 * A, 0, 3])


def test_division_poly_degree_and_leading():
    c = CATALOG_BY_NAME["d11"].curve
    for n in range(1, 14):
        f = division_poly(c, n)
        if n % 2:
            assert f.degree == (n * n - 1) // 2
            assert f.leading == n
        else:
            assert f.degree == (n * n - 4) // 2
            assert f.leading == Fraction(n, 2)


def test_lattes_displayed_forms():
    assert format_ratmap(lattes_map(Curve(0, 0, 0, 0, 2), 2)) == "(x^4 - 16x)/(4x^3 + 8)"
    assert (
        format_ratmap(lattes_map(Curve(0, 0, 0, 1, 0), 3))
        == "(x^9 - 12x^7 + 30x^5 + 36x^3 + 9x)/(9x^8 + 36x^6 + 30x^4 - 12x^2 + 1)"
    )
    assert (
        format_ratmap(lattes_map(Curve(0, 0, 0, -264, 1694), 2))
        == "(x^4 + 528x^2 - 13552x + 69696)/(4x^3 - 1056x + 6776)"
    )
    assert format_ratmap(lattes_map(Curve(1, 2, 3, 4, 5), 1)) == "x"


def test_lattes_degrees():
    for entry in CATALOG:
        for k in range(2, 9):
            L = lattes_map(entry.curve, k)
            assert L.num.degree == k * k
            assert L.den.degree <= k * k - 1


def test_lattes_composition():
    for entry in CATALOG:
        L2, L3, L6 = (lattes_map(entry.curve, k) for k in (2, 3, 6))
        assert L2.compose(L3) == L6
        assert L3.compose(L2) == L6
    c = CATALOG_BY_NAME["d3"].curve
    assert lattes_map(c, 2).compose(lattes_map(c, 2)) == lattes_map(c, 4)
    assert lattes_map(c, 2).compose(lattes_map(c, 4)) == lattes_map(c, 8)
    assert lattes_map(c, 4).compose(lattes_map(c, 2)) == lattes_map(c, 8)


def test_count_points_reference_traces():
    expected = {
        ("d4", 5): 2,
        ("d4", 13): -6,
        ("d4", 29): 10,
        ("d7", 11): -4,
        ("d7", 23): -8,
        ("d19", 5): -1,
        ("d19", 7): 3,
        ("d19", 17): -7,
        ("d27", 7): -1,
        ("d27", 37): -11,
        ("d3", 7): -1,
        ("d3", 13): -5,
        ("d3", 19): 7,
        ("d11", 5): -3,
        ("d11", 23): -9,
        ("d11", 31): 5,
        ("d11", 47): -12,
        ("d27", 13): -5,
        ("d27", 19): 7,
        ("d27", 61): 1,
        ("d3", 37): -11,
        ("d3", 43): -8,
    }
    for (name, p), ap in expected.items():
        order, got = count_points(CATALOG_BY_NAME[name].curve, p)
        assert got == ap, (name, p, got, ap)
        assert order == p + 1 - ap


def test_count_points_hasse_and_errors():
    c = CATALOG_BY_NAME["d4"].curve
    for p in c.good_primes(500):
        _, ap = count_points(c, p)
        assert ap * ap <= 4 * p
    with pytest.raises(ValueError):
        count_points(c, 2)  # bad reduction and p < 5
    with pytest.raises(ValueError):
        count_points(CATALOG_BY_NAME["d7"].curve, 7)


def test_twist_trace_relation():
    for name, d in (("d3", 5), ("d4", -1), ("d4", 3), ("d12", 7)):
        c = CATALOG_BY_NAME[name].curve
        tw = quadratic_twist(c, d)
        for p in primes_upto(500):
            if p < 5 or not (c.has_good_reduction(p) and tw.has_good_reduction(p)):
                continue
            if (2 * d) % p == 0:
                continue
            _, ap = count_points(c, p)
            _, ap_tw = count_points(tw, p)
            assert ap_tw == kronecker(d, p) * ap, (name, d, p)


def test_quadratic_twist_forms():
    c = Curve(0, 0, 0, 0, 2)
    assert quadratic_twist(c, 1) == c
    assert quadratic_twist(c, 5) == Curve(0, 0, 0, 0, 250)
    cx = Curve(0, 0, 0, 1, 0)
    assert quadratic_twist(cx, -1) == cx
    with pytest.raises(ValueError):
        quadratic_twist(CATALOG_BY_NAME["d19"].curve, 2)  # not short form
    with pytest.raises(ValueError):
        quadratic_twist(c, 12)  # not squarefree


def test_group_law_basics():
    c = CATALOG_BY_NAME["d4"].curve
    p = 7
    P = (0, 0)  # 2-torsion: y = 0
    assert add_points(c, P, None, p) == P
    assert add_points(c, P, P, p) is None
    assert negate_point(c, P, p) == P
    rng = random.Random(4)
    for _ in range(20):
        Q = random_point(c, p, rng)
        R = add_points(c, Q, negate_point(c, Q, p), p)
        assert R is None
    # associativity spot check
    for _ in range(20):
        A = random_point(c, 31, rng)
        B = random_point(c, 31, rng)
        C = random_point(c, 31, rng)
        lhs = add_points(c, add_points(c, A, B, 31), C, 31)
        rhs = add_points(c, A, add_points(c, B, C, 31), 31)
        assert lhs == rhs


def test_group_order_annihilates():
    rng = random.Random(8)
    for name in ("d4", "d19", "d11"):
        c = CATALOG_BY_NAME[name].curve
        for p in (13, 17, 29):
            if not c.has_good_reduction(p):
                continue
            n, _ = count_points(c, p)
            for _ in range(5):
                P = random_point(c, p, rng)
                assert scalar_mul(c, n, P, p) is None


def test_lattes_group_law_cross_oracle_sample():
    rng = random.Random(20240811)
    for name in ("d4", "d19", "d3"):
        assert eval_lattes_vs_group_law(CATALOG_BY_NAME[name].curve, 40, 5, 8, rng) is None


def test_torsion_x_rational():
    assert torsion_x_rational(Curve(0, 0, 0, 0, 2), 3) == {Fraction(0), Fraction(-2)}
    assert torsion_x_rational(Curve(0, 0, 0, -264, 1694), 6) == set()
    d12 = CATALOG_BY_NAME["d12"].curve
    assert torsion_x_rational(d12, 2) == {Fraction(2)}
    assert torsion_x_rational(d12, 3) == {Fraction(3)}
    assert torsion_x_rational(d12, 6) == {Fraction(2), Fraction(3), Fraction(-1)}
    # membership implies vanishing
    for x in torsion_x_rational(d12, 6):
        assert division_poly(d12, 6)(x) == 0 or d12.psi2_squared(x) == 0


def test_torsion_classify_Ed():
    assert torsion_classify_Ed(1) == "C6"
    assert torsion_classify_Ed(-432) == "C3"
    assert torsion_classify_Ed(2) == "C1"
    assert torsion_classify_Ed(4) == "C3"
    assert torsion_classify_Ed(8) == "C2"
    assert torsion_classify_Ed(-27) == "C2"
    assert torsion_classify_Ed(5) == "C1"
    with pytest.raises(ValueError):
        torsion_classify_Ed(64)  # 2^6
    with pytest.raises(ValueError):
        torsion_classify_Ed(0)


def test_torsion_classify_cross_check():
    """The formula agrees with direct 2-/3-torsion point detection."""
    from math import isqrt

    from lattes_lab.polyrat import rational_roots

    def rational_point_with_order(d, m):
        c = Curve(0, 0, 0, 0, d)
        poly = division_poly(c, m) if m == 3 else c.psi2_squared
        for x in rational_roots(poly):
            ysq = x**3 + d
            if ysq == 0:
                return True  # 2-torsion point (x, 0)
            num, den = ysq.numerator, ysq.denominator
            if num > 0 and isqrt(num) ** 2 == num and isqrt(den) ** 2 == den:
                return True
        return False

    for d in (1, 2, 3, 4, 5, 8, 9, -1, -27, -432, 17, 25, -8):
        tag = torsion_classify_Ed(d)
        has2 = rational_point_with_order(d, 2)
        has3 = rational_point_with_order(d, 3)
        expected = {(False, False): "C1", (True, False): "C2", (False, True): "C3",
                    (True, True): "C6"}[(has2, has3)]
        assert tag == expected, (d, tag, expected)


def test_cm_model():
    assert cm_model(-11, 1) == Curve(0, 0, 0, -264, 1694)
    assert cm_model(-11, 1).j == -32768
    assert cm_model(-27, 1) == Curve(0, 0, 0, -120, 506)
    assert cm_model(-12, 1) == CATALOG_BY_NAME["d12"].curve
    assert cm_model(-3, 2) == Curve(0, 0, 0, 0, 2)
    assert cm_model(-11, 2).j == -32768  # j is twist-invariant across the family
    assert cm_model(-12, 3).j == 54000
    assert cm_model(-27, 2).j == -12288000
    with pytest.raises(ValueError):
        cm_model(-43, 1)
    with pytest.raises(ValueError):
        cm_model(-3, 0)


def test_noncm_families():
    assert noncm_family("E", 1) == Curve(0, 0, 0, -9, 12)
    assert noncm_family("F", 1) == Curve(0, 0, 0, -60, 180)
    assert noncm_family("E", 2).j == -5184
    assert noncm_family("F", 3).j == -138240
    with pytest.raises(ValueError):
        noncm_family("G", 1)


def test_catalog_integrity():
    assert len(CATALOG) >= 10
    js = {
        "d4": 1728,
        "d8": 8000,
        "d7": -3375,
        "d12": 54000,
        "d19": -(96**3),
        "d27": -12288000,
        "d3": 0,
        "d11": -32768,
        "noncm-e": -5184,
        "noncm-f": -138240,
    }
    for name, j in js.items():
        assert CATALOG_BY_NAME[name].curve.j == j
    # non-CM j-invariants for the density curves are not CM values
    cm_js = {0, 1728, -3375, 8000, 54000, 287496, -32768, -884736, 16581375,
             -12288000, -884736000, -147197952000, -262537412640768000}
    assert CATALOG_BY_NAME["k2-s3"].curve.j not in cm_js
    assert CATALOG_BY_NAME["k2-c3"].curve.j not in cm_js


def test_curve_text_format():
    c = parse_curve("[0,0,1,-38,90]")
    assert c == CATALOG_BY_NAME["d19"].curve
    assert format_curve(c) == "[0,0,1,-38,90]"
    assert parse_curve("[0,0,0,1/2,-3/4]").a4 == Fraction(1, 2)
    with pytest.raises(ValueError):
        parse_curve("0,0,1,-38,90")
    with pytest.raises(ValueError):
        parse_curve("[1,2,3]")
    assert len(curve_hash(c)) == 12 and curve_hash(c) == curve_hash(parse_curve("[0,0,1,-38,90]"))
