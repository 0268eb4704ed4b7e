import os

import pytest

from lattes_lab.elliptic import CATALOG_BY_NAME, count_points, noncm_family
from lattes_lab.exceptionality import (
    STRATEGY_TABLE,
    TraceCache,
    exceptionality_report,
    frobenius_scan,
    is_cubic_residue,
    permutes,
    render_scan_csv,
    render_scan_markdown,
    scan,
    strategy_primes,
    trace_record,
    twist_product_check,
    verify_d11_obstruction,
    verify_noncm_counterexample,
)
from lattes_lab.intmath import primes_upto

D4 = CATALOG_BY_NAME["d4"].curve
D11 = CATALOG_BY_NAME["d11"].curve
D12 = CATALOG_BY_NAME["d12"].curve
D3 = CATALOG_BY_NAME["d3"].curve


def test_trace_record_reference_values():
    r = trace_record(D4, 5)
    assert (r.ap, r.Ap, r.splitting) == (2, 32, "split")
    r = trace_record(D11, 5)
    assert (r.ap, r.Ap, r.splitting) == (-3, 27, "split")
    r = trace_record(CATALOG_BY_NAME["d7"].curve, 19)
    assert (r.ap, r.Ap) == (0, 400)
    r = trace_record(CATALOG_BY_NAME["k2-s3"].curve, 7)
    assert r.splitting is None  # never inferred for non-CM curves
    assert r.Ap == (7 + 1) ** 2 - r.ap**2


def test_permutes_methods_and_agreement():
    v = permutes(D4, 3, 11, "both")
    assert (v.gcd_value, v.permutes) == (3, False)
    v = permutes(D12, 5, 11, "both")
    assert v.permutes
    v = permutes(D11, 7, 13, "both")
    assert (v.gcd_value, v.permutes) == (7, False)
    v = permutes(D4, 1, 7, "criterion")
    assert v.permutes and v.gcd_value == 1
    # p dividing k stays consistent across both methods
    for curve, k, p in ((D4, 5, 5), (D4, 10, 5), (D11, 7, 7), (D3, 14, 7)):
        permutes(curve, k, p, "both")
    with pytest.raises(ValueError):
        permutes(D4, 3, 11, "magic")


def test_scan_matches_reference_rows():
    rows = scan(D4, 3, [5, 7, 11, 13, 19, 23, 29, 31])
    assert [(r.p, r.symbol, r.ap, r.gcd_value, r.permutes) for r in rows] == [
        (5, 1, 2, 1, True),
        (7, -1, 0, 1, True),
        (11, -1, 0, 3, False),
        (13, 1, -6, 1, True),
        (19, -1, 0, 1, True),
        (23, -1, 0, 3, False),
        (29, 1, 10, 1, True),
        (31, -1, 0, 1, True),
    ]
    rows = scan(CATALOG_BY_NAME["d19"].curve, 3, [5, 7, 11, 13, 17, 23, 29, 41])
    assert [r.permutes for r in rows] == [True] * 6 + [False, False]
    rows = scan(D4, 1, [5, 7, 11])
    assert all(r.permutes for r in rows)  # gcd(., 1) = 1


def test_scan_rejects_bad_primes():
    with pytest.raises(ValueError):
        scan(D11, 6, [5, 11])  # 11 divides the discriminant


def test_scan_annotates_p_dividing_k():
    rows = scan(D4, 5, [5, 7])
    assert rows[0].note == "p|k" and rows[1].note == ""


def test_render_formats():
    rows = scan(D11, 6, [5, 7])
    csv = render_scan_csv(rows)
    assert csv.splitlines()[0] == "p,symbol,ap,gcd,permutes"
    assert csv.splitlines()[1] == "5,+1,-3,3,no"
    md = render_scan_markdown(rows, 6, -11)
    assert "| 5 | +1 | -3 | 3 | No |" in md


def test_strategy_primes_reference():
    assert strategy_primes(-4, 3, 3) == [7, 19, 31]
    assert strategy_primes(-7, 3, 1) == [19]
    assert strategy_primes(-11, 3, 1) == [13]
    assert strategy_primes(-3, 2, 4) == [7, 13, 19, 37]
    assert strategy_primes(-27, 2, 4) == [7, 13, 19, 37]


def test_strategy_primes_soundness_sample():
    cases = [(-4, 9), (-16, 3), (-8, 5), (-28, 3), (-12, 7), (-3, 5), (-27, 5)]
    for D, k in cases:
        ps = strategy_primes(D, k, 25)
        assert len(ps) == 25 and ps == sorted(ps)
    # element-search rows
    for D, k in ((-19, 3), (-43, 2), (-11, 2), (-3, 2)):
        ps = strategy_primes(D, k, 3)
        assert len(ps) == 3


def test_strategy_soundness_suite_50():
    """Congruence rows emit 50 sound primes each (postcondition-checked)."""
    from lattes_lab.suites import suite_strategies

    res = suite_strategies(count=50)
    assert res.ok, res.failures


def test_strategy_inadmissible():
    with pytest.raises(ValueError):
        strategy_primes(-4, 2, 3)  # k must be odd
    with pytest.raises(ValueError):
        strategy_primes(-12, 3, 3)  # gcd(k, 6) must be 1
    with pytest.raises(ValueError):
        strategy_primes(-11, 6, 3)  # no strategy when 6 | k
    with pytest.raises(ValueError):
        strategy_primes(-3, 3, 3)


def test_strategy_table_shape():
    assert len(STRATEGY_TABLE) == 8
    discs = [d for row in STRATEGY_TABLE for d in row.discs]
    assert sorted(discs) == sorted(
        [-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163]
    )


def test_twist_product_check():
    assert twist_product_check(D3, 7, 3)       # 3 is a non-residue mod 7
    assert twist_product_check(D4, 13, 2)      # 2 is a non-residue mod 13
    with pytest.raises(ValueError):
        twist_product_check(D3, 7, 1)          # 1 is a square


def test_is_cubic_residue():
    assert is_cubic_residue(3, 5)
    assert not is_cubic_residue(3, 7)
    assert is_cubic_residue(8, 7)
    cubes_mod_13 = {pow(x, 3, 13) for x in range(1, 13)}
    for a in range(1, 13):
        assert is_cubic_residue(a, 13) == (a in cubes_mod_13)
    with pytest.raises(ValueError):
        is_cubic_residue(26, 13)


def test_verify_d11_obstruction():
    rep = verify_d11_obstruction(D11, 500)
    assert rep.ok and rep.violations == ()
    assert 11 in rep.skipped
    # the gcd table rows: gcd(A_p, 6) is 3 at p=5, 2 at p=7, 6 at p=47
    rows = scan(D11, 6, [5, 7, 47])
    assert [r.gcd_value for r in rows] == [3, 2, 6]
    from lattes_lab.elliptic import cm_model

    assert verify_d11_obstruction(cm_model(-11, 2), 300).ok


def test_verify_noncm_counterexample():
    for family in ("E", "F"):
        rep = verify_noncm_counterexample(family, 1, 500)
        assert rep.ok
    # by hand at small primes for family E, u=1
    c = noncm_family("E", 1)
    _, a5 = count_points(c, 5)
    assert is_cubic_residue(3, 5) and ((5 + 1) ** 2 - a5 * a5) % 2 == 0
    _, a7 = count_points(c, 7)
    assert not is_cubic_residue(3, 7) and ((7 + 1) ** 2 - a7 * a7) % 3 == 0


def test_exceptionality_report_verdicts():
    r = exceptionality_report(D3, 2, 100)
    assert r.verdict == "exceptional-evidence"
    assert set([7, 13, 19, 37]) <= set(r.witnesses)
    assert r.witness_density is not None

    r = exceptionality_report(D11, 6, 100)
    assert r.verdict == "obstructed" and r.obstruction == "cm-disc-11"
    assert not r.witnesses and not r.torsion_x

    r = exceptionality_report(D11, 7, 50)
    assert set([5, 7, 17, 23, 31]) <= set(r.witnesses)

    r = exceptionality_report(D4, 2, 200)
    assert r.verdict == "not-exceptional" and not r.witnesses
    assert r.torsion_x == frozenset({0})

    r = exceptionality_report(noncm_family("E", 1), 6, 200)
    assert r.verdict == "obstructed" and r.obstruction == "noncm-family-e"

    r = exceptionality_report(noncm_family("F", 2), 12, 200)
    assert r.verdict == "obstructed" and r.obstruction == "noncm-family-f"

    # inconclusive: tiny range with a high threshold
    r = exceptionality_report(D3, 2, 30, witness_threshold=50)
    assert r.verdict == "inconclusive"


def test_report_lists_bad_primes():
    r = exceptionality_report(D11, 7, 100)
    assert 11 in r.bad_primes


def test_cache_round_trip(tmp_path):
    path = str(tmp_path / "traces.txt")
    cache = TraceCache(path)
    good = D4.good_primes(200)
    cold = frobenius_scan(D4, good, cache=cache)
    cache.save()
    assert os.path.exists(path)
    with open(path) as fh:
        first = fh.readline().strip()
    assert first.count(",") == 2
    warm_cache = TraceCache(path)
    warm = frobenius_scan(D4, good, cache=warm_cache)
    assert warm == cold


def test_worker_determinism():
    good = [p for p in primes_upto(300) if p >= 5]
    one = frobenius_scan(D4, good, workers=1)
    many = frobenius_scan(D4, good, workers=8)
    assert one == many
    rows1 = scan(D4, 3, good, workers=1)
    rows8 = scan(D4, 3, good, workers=8)
    assert rows1 == rows8
