import random
from fractions import Fraction
from math import gcd

import pytest

from lattes_lab.elliptic import CATALOG, CATALOG_BY_NAME, torsion_x_rational
from lattes_lab.galois import (
    Mat2Zm,
    SubgroupSpec,
    cm_density_full,
    cm_density_subgroup,
    diag_witness,
    empirical_density,
    frobenius_congruence_check,
    gl2_elements,
    in_Cm,
    k2_verdict,
)


def test_mat2zm_basics():
    A = Mat2Zm(5, 1, 2, 3, 4)
    assert A.det() == (4 - 6) % 5
    with pytest.raises(ValueError):
        Mat2Zm(4, 1, 0, 0, 2)  # det 2 not a unit mod 4
    B = Mat2Zm.identity(7)
    assert (A * Mat2Zm.identity(5)) == A
    assert not in_Cm(B)  # det(I - I) = 0


def test_in_Cm_examples():
    assert in_Cm(Mat2Zm(2, 0, 1, 1, 1))  # companion of T^2+T+1
    assert in_Cm(Mat2Zm(5, 2, 0, 0, 2))  # det(I-A)=1, det(I+A)=9=4
    assert not in_Cm(Mat2Zm.identity(3))


def test_in_Cm_conjugation_invariant():
    rng = random.Random(1)
    for m in (2, 3, 4, 5, 6, 7, 12):
        mats = list(gl2_elements(m))
        inverses = {}
        for A in mats:
            det_inv = pow(A.det(), -1, m)
            inverses[A] = Mat2Zm(
                m, A.d * det_inv, -A.b * det_inv, -A.c * det_inv, A.a * det_inv
            )
        for _ in range(150):
            A = rng.choice(mats)
            P = rng.choice(mats)
            assert in_Cm(A) == in_Cm(P * A * inverses[P])


def test_cm_density_full():
    assert cm_density_full(2) == Fraction(1, 3)
    assert cm_density_full(1) == Fraction(1)
    assert cm_density_full(6) > 0
    with pytest.raises(ValueError):
        cm_density_full(13)


def test_cm_density_full_by_hand_m2():
    # GL_2(F_2) has 6 elements; only the two of order 3 avoid eigenvalue 1
    mats = list(gl2_elements(2))
    assert len(mats) == 6
    hits = [A for A in mats if in_Cm(A)]
    assert len(hits) == 2


def test_cm_density_crt_product():
    assert cm_density_full(6) == cm_density_full(2) * cm_density_full(3)
    assert cm_density_full(10) == cm_density_full(2) * cm_density_full(5)


def test_cm_density_subgroup():
    rot = Mat2Zm(2, 0, 1, 1, 1)
    assert cm_density_subgroup(SubgroupSpec(2, (rot,))) == Fraction(2, 3)
    full = SubgroupSpec(2, (Mat2Zm(2, 0, 1, 1, 0), Mat2Zm(2, 1, 1, 0, 1)))
    assert len(full.closure()) == 6
    assert cm_density_subgroup(full) == Fraction(1, 3)
    assert cm_density_subgroup(SubgroupSpec(2, ())) == 0


def test_diag_witness():
    A = diag_witness(2, 5)
    assert (A.a, A.b, A.c, A.d) == (2, 0, 0, 2)  # -2^{-1} = -3 = 2 (mod 5)
    assert in_Cm(A)
    assert in_Cm(diag_witness(2, 35))
    with pytest.raises(ValueError):
        diag_witness(1, 5)
    with pytest.raises(ValueError):
        diag_witness(6, 35)  # 6 = 1 (mod 5)
    with pytest.raises(ValueError):
        diag_witness(5, 35)  # not a unit


def test_diag_witness_fuzz():
    for m in range(2, 51):
        primes = [ell for ell in range(2, m + 1) if m % ell == 0 and all(
            ell % d for d in range(2, ell))]
        for a in range(2, m):
            if gcd(a, m) != 1:
                continue
            if any(a % ell in (1 % ell, (-1) % ell) for ell in primes):
                continue
            assert in_Cm(diag_witness(a, m)), (a, m)


def test_frobenius_congruence_bridge():
    d4 = CATALOG_BY_NAME["d4"].curve
    assert frobenius_congruence_check(d4, 11, 3)  # 3 | 12 on both sides
    assert frobenius_congruence_check(d4, 13, 3)  # both sides false
    for entry in CATALOG:
        for p in entry.curve.good_primes(1000):
            for ell in (2, 3, 5, 7):
                if p == ell:
                    continue
                assert frobenius_congruence_check(entry.curve, p, ell)
    with pytest.raises(ValueError):
        frobenius_congruence_check(d4, 7, 7)


def test_k2_verdict():
    assert k2_verdict(CATALOG_BY_NAME["d3"].curve) == (True, "S3", Fraction(1, 3))
    assert k2_verdict(CATALOG_BY_NAME["k2-s3"].curve) == (True, "S3", Fraction(1, 3))
    assert k2_verdict(CATALOG_BY_NAME["k2-c3"].curve) == (True, "C3", Fraction(2, 3))
    assert k2_verdict(CATALOG_BY_NAME["d12"].curve) == (False, "reducible", None)
    assert k2_verdict(CATALOG_BY_NAME["d19"].curve)[0] in (True, False)


def test_k2_verdict_matches_torsion():
    for entry in CATALOG:
        exceptional, _, _ = k2_verdict(entry.curve)
        assert exceptional == (not torsion_x_rational(entry.curve, 2)), entry.name


def test_empirical_density_small():
    d = empirical_density(CATALOG_BY_NAME["d11"].curve, 6, 2000)
    assert d == 0
    d = empirical_density(CATALOG_BY_NAME["d3"].curve, 2, 2000)
    assert Fraction(1, 4) < d < Fraction(1, 2)  # split primes with odd trace
    with pytest.raises(ValueError):
        empirical_density(CATALOG_BY_NAME["d3"].curve, 2, 50)
