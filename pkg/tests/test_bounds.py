import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from crossfam.bounds import (
    IneqReport,
    aux_phi,
    check_key,
    check_key2,
    check_key3,
    check_key4,
    check_monotone_aux,
    cor_sum_report,
    hilton_compress_check,
    hilton_sum_rhs,
    random_cross_intersecting_pair,
    verify_cor_sum,
    verify_f87,
    verify_hilton_sum,
)
from crossfam.constructions import build_star
from crossfam.core import Family, SubsetWord, binomial, kset_masks, lex_family
from crossfam.ineqgrid import DEFAULT_GRIDS, parse_grid, run_grid
from crossfam.structure import is_cross_t_intersecting


def test_compress_examples():
    A = Family.of(5, [(1, 2), (3, 4)])
    B = Family.of(5, [(1, 3), (1, 4), (2, 3), (2, 4)])
    assert hilton_compress_check(A, B)
    S = build_star(7, 3, SubsetWord.of([1]))
    assert hilton_compress_check(S, S)
    with pytest.raises(ValueError):
        hilton_compress_check(Family.of(4, [(1, 2)]), Family.of(4, [(1, 3)]))  # n = a + b
    with pytest.raises(ValueError):
        hilton_compress_check(Family.of(6, [(1, 2)]), Family.of(6, [(3, 4)]))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(9, 3, 3), (8, 2, 3), (10, 3, 4)]))
def test_compression_keeps_cross_intersection(seed, nab):
    n, a, b = nab
    A, B = random_cross_intersecting_pair(n, a, b, random.Random(seed))
    assert is_cross_t_intersecting(A, B, 1)
    assert hilton_compress_check(A, B)


def test_hilton_sum_rhs():
    assert hilton_sum_rhs(6, 2, 2) == 15
    assert hilton_sum_rhs(8, 2, 2) == 21
    for m, t in [(5, 3), (9, 1)]:
        assert hilton_sum_rhs(m, 1, t) == t + 1
    with pytest.raises(ValueError):
        hilton_sum_rhs(5, 2, 2)


def _sum_oracle(m, a, t):
    """Max over all (t+1)-tuples of lex sizes, cross-intersection checked on the families."""
    N = binomial(m, a)
    fams = [lex_family(m, a, c).masks for c in range(N + 1)]
    cross = [[all(x & y for x in fams[i] for y in fams[j]) for j in range(N + 1)] for i in range(N + 1)]
    best = 0
    for vec in product(range(N + 1), repeat=t + 1):
        if sum(1 for c in vec if c) < 2:
            continue
        if all(cross[vec[i]][vec[j]] for i in range(t + 1) for j in range(i + 1, t + 1)):
            best = max(best, sum(vec))
    return best


@pytest.mark.parametrize("m,a,t", [(6, 2, 2), (7, 2, 2), (8, 2, 2), (8, 2, 3), (9, 3, 2)])
def test_hilton_sum_matches_oracle(m, a, t):
    r = verify_hilton_sum(m, a, t)
    assert r.lhs == _sum_oracle(m, a, t)
    assert r.verdict and r.rhs == hilton_sum_rhs(m, a, t)


def test_hilton_sum_anchors():
    r = verify_hilton_sum(6, 2, 2)
    assert r.lhs == 15 and r.witness == (5, 5, 5)  # three copies of the 1-star
    assert verify_hilton_sum(8, 2, 2).lhs == 21


def test_cor_sum():
    assert verify_cor_sum(6, 2, 2).lhs <= 15
    assert verify_cor_sum(8, 2, 2).lhs <= 21
    K2 = Family.of(8, [(1, 2)])
    K1 = Family(8, [m for m in kset_masks(8, 2) if m & K2.masks[0]])
    r = cor_sum_report(K1, K2, 2)
    assert r.lhs == len(K1) + 2 == 15 and r.verdict
    with pytest.raises(ValueError):
        cor_sum_report(K2, K1, 2)
    with pytest.raises(ValueError):
        cor_sum_report(Family.of(8, [(3, 4)]), K2, 2)


def test_f87():
    assert verify_f87(6, 2).lhs <= 10
    r = verify_f87(8, 3)
    assert r.rhs == 42 and r.lhs <= 42 and r.verdict
    assert verify_f87(4, 2).verdict  # m = 2a goes through all family pairs
    with pytest.raises(ValueError):
        verify_f87(5, 3)


def test_key_examples():
    r = check_key(10, 3, 2)
    assert (r.lhs, r.rhs, r.slack, r.verdict) == (48, 56, 8, True)
    r = check_key(7, 3, 2)  # n = ik + 1
    assert r.verdict and r.lhs == Fraction(1, 7) * 35
    with pytest.raises(ValueError):
        check_key(6, 3, 2)


@settings(max_examples=200)
@given(st.integers(1, 10), st.integers(1, 5), st.integers(1, 60))
def test_key_holds_everywhere_admissible(k, i, extra):
    assert check_key(i * k + extra, k, i).verdict


def test_key_chains():
    r = check_key2(2 * 9 + 3, 5, 2, 2)
    assert r.verdict and len(r.steps) == 4 and r.chain_ok
    assert check_key3(4 * 9 + 3, 5, 2, 4).verdict
    assert check_key3(44, 5, 2, Fraction(9, 2)).verdict
    assert check_key4(20, 5, 2, 4).verdict
    with pytest.raises(ValueError):
        check_key2(100, 5, 2, 1)
    with pytest.raises(ValueError):
        check_key2(20, 5, 2, 2)
    with pytest.raises(ValueError):
        check_key3(100, 5, 2, 2)
    with pytest.raises(ValueError):
        check_key4(19, 5, 2, 4)


def test_monotone_examples():
    r = check_monotone_aux("f", n=25, k=5, t=2, l=3)
    assert r.lhs == Fraction(10, 22) and r.verdict
    phi = [aux_phi(100, 5, 2, x) for x in (1, 2, 3)]
    assert phi[0] > phi[1] > phi[2]
    assert check_monotone_aux("phi", n=100, k=5, t=2).verdict
    assert check_monotone_aux("g", n=50, k=5, t=2, s=5).lhs == 0
    assert check_monotone_aux("h", n=25, k=5, t=2, l=4).verdict
    with pytest.raises(ValueError):
        check_monotone_aux("f", n=24, k=5, t=2, l=3)
    with pytest.raises(ValueError):
        check_monotone_aux("g", n=50, k=5, t=2, s=3)
    with pytest.raises(ValueError):
        check_monotone_aux("phi", n=99, k=5, t=2)
    with pytest.raises(ValueError):
        check_monotone_aux("q", n=99)


def test_phi_differences_closed_form():
    # phi(x+1) - phi(x) = -C(n-k-1+x, k-t-1) + (2x+1) C(n-t-2, k-t-2)
    for n, k, t in [(100, 5, 2), (144, 6, 3), (256, 8, 2)]:
        for x in range(1, k - t):
            diff = aux_phi(n, k, t, x + 1) - aux_phi(n, k, t, x)
            assert diff == -binomial(n - k - 1 + x, k - t - 1) + (2 * x + 1) * binomial(n - t - 2, k - t - 2)


def test_report_semantics():
    r = IneqReport("x", {}, Fraction(1), Fraction(1))
    assert r.verdict and r.slack == 0
    assert not IneqReport("x", {}, Fraction(1), Fraction(1), strict=True).verdict
    assert not IneqReport("x", {}, Fraction(0), Fraction(2), steps=(Fraction(0), Fraction(3), Fraction(2))).verdict


def test_grids():
    assert len(parse_grid("n=10,k=3,i=2", "key")) == 1
    pts = parse_grid("t=2..3,k=5,c=4|2*(t+2),n=min|min+10", "key3")
    assert {p["c"] for p in pts} == {4, 8, 10}
    assert all(p["n"] >= p["c"] * (p["k"] - p["t"]) ** 2 + p["t"] + 1 for p in pts)
    for bad in ("n=10,k=3", "n=10,k=3,i=2,z=1", "n=10;k=3", "n=__import__('os')"):
        with pytest.raises(ValueError):
            parse_grid(bad, "key")
    for check in DEFAULT_GRIDS:
        reports = run_grid(check)
        assert reports and all(r.verdict for r in reports), check
