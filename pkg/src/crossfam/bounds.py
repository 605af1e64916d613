"""Lex-compression bounds and an exact-rational binomial inequality oracle.

Cross-intersecting families can be replaced by initial lex segments of the same
sizes without losing the property (Hilton's lemma, valid for n > a + b).  Sums
of family sizes are therefore maximised over size vectors alone; whether two
lex segments cross-intersect is decided by materialising them.

Every report carries exact ``Fraction`` values.  ``IneqReport`` always encodes
the claim as ``lhs <= rhs`` (or ``lhs < rhs`` when ``strict``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import random

from .core import Family, binomial, kset_masks, lex_family
from .structure import _cross_ok

# Lex search refuses ground families larger than this.
MAX_LEX_MEMBERS = 5000


@dataclass(frozen=True)
class IneqReport:
    name: str
    params: dict
    lhs: Fraction
    rhs: Fraction
    strict: bool = False
    steps: tuple[Fraction, ...] = ()
    witness: object = field(default=None, compare=False)

    @property
    def chain_ok(self) -> bool:
        """Every intermediate step is <=; ``strict`` only concerns lhs vs rhs."""
        values = self.steps
        return all(a <= b for a, b in zip(values, values[1:]))

    @property
    def verdict(self) -> bool:
        ok = self.lhs < self.rhs if self.strict else self.lhs <= self.rhs
        return ok and self.chain_ok

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# --- lex compression -------------------------------------------------------

def hilton_compress_check(A: Family, B: Family) -> bool:
    """Compress both families to initial lex segments; are those cross-intersecting?"""
    n = A.n
    if B.n != n:
        raise ValueError("families live on different ground sets")
    if A.k is None or B.k is None:
        raise ValueError("both families must be uniform")
    a, b = A.k, B.k
    if not n > a + b:
        raise ValueError(f"need n > a + b, got n={n} a={a} b={b}")
    if not _cross_ok(A.masks, B.masks, 1):
        raise ValueError("input families are not cross-intersecting")
    LA = lex_family(n, a, len(A))
    LB = lex_family(n, b, len(B))
    return _cross_ok(LA.masks, LB.masks, 1)


def random_cross_intersecting_pair(n: int, a: int, b: int, rng: random.Random) -> tuple[Family, Family]:
    """A few random a-sets, then a random non-empty set of b-sets meeting all of them."""
    la, lb = kset_masks(n, a), kset_masks(n, b)
    while True:
        A = rng.sample(la, rng.randint(1, min(6, len(la))))
        partners = [y for y in lb if all(x & y for x in A)]
        if partners:
            B = rng.sample(partners, rng.randint(1, len(partners)))
            return Family(n, A, k=a), Family(n, B, k=b)


@lru_cache(maxsize=64)
def lex_cross_threshold(m: int, a: int, b: int) -> tuple[int, ...]:
    """g[c] = largest c' such that L(m,a,c) and L(m,b,c') are cross-intersecting.

    Built from the materialised member lists: row i records the first b-set
    disjoint from the i-th a-set, and g[c] is the minimum over rows i < c.
    """
    la = kset_masks(m, a)
    lb = kset_masks(m, b)
    if len(la) > MAX_LEX_MEMBERS or len(lb) > MAX_LEX_MEMBERS:
        raise ValueError(f"C({m},{a}) or C({m},{b}) exceeds the desk-scale limit {MAX_LEX_MEMBERS}")
    first_bad = []
    for x in la:
        j = 0
        while j < len(lb) and x & lb[j]:
            j += 1
        first_bad.append(j)
    g = [len(lb)]
    for j in first_bad:
        g.append(min(g[-1], j))
    return tuple(g)


def lex_pair_cross(m: int, a: int, c1: int, b: int, c2: int) -> bool:
    return c2 <= lex_cross_threshold(m, a, b)[c1]


def hilton_sum_rhs(m: int, a: int, t: int) -> int:
    if m < (t + 1) * a:
        raise ValueError(f"need m >= (t+1)a = {(t + 1) * a}, got m={m}")
    return max((t + 1) * binomial(m - 1, a - 1), binomial(m, a) - binomial(m - a, a) + t)


def _best_sorted_vector(m: int, a: int, parts: int) -> tuple[int, tuple[int, ...]]:
    """Max sum over non-increasing size vectors of pairwise cross-intersecting lex segments.

    At least two entries must be positive.  Depth-first over the entries from
    largest to smallest with a sum bound; the first optimum met in descending
    order is kept, so the witness is deterministic.
    """
    g = lex_cross_threshold(m, a, a)
    total = binomial(m, a)
    best = [0, ()]

    def go(vec: list[int], cap: int, acc: int) -> None:
        left = parts - len(vec)
        if left == 0:
            if len(vec) >= 2 and vec[1] >= 1 and acc > best[0]:
                best[0], best[1] = acc, tuple(vec)
            return
        if acc + left * cap <= best[0]:
            return
        for c in range(cap, -1, -1):
            if len(vec) == 1 and c == 0:
                break
            # pairwise with every earlier entry; g is non-increasing so vec[0] binds
            if vec and c > g[vec[0]]:
                continue
            vec.append(c)
            go(vec, min(c, cap), acc + c)
            vec.pop()

    for c1 in range(total, 0, -1):
        if c1 + (parts - 1) * min(c1, g[c1]) <= best[0]:
            continue
        go([c1], min(c1, g[c1]), c1)
    return best[0], best[1]


def verify_hilton_sum(m: int, a: int, t: int) -> IneqReport:
    """Exact max of |K_1| + ... + |K_{t+1}| against the closed-form bound."""
    rhs = hilton_sum_rhs(m, a, t)
    value, vec = _best_sorted_vector(m, a, t + 1)
    return IneqReport(
        "hilton-sum",
        {"m": m, "a": a, "t": t},
        Fraction(value),
        Fraction(rhs),
        witness=vec,
    )


def best_cor_pair(m: int, a: int, t: int) -> tuple[int, tuple[int, int]]:
    g = lex_cross_threshold(m, a, a)
    best, arg = -1, (0, 0)
    for c1 in range(binomial(m, a), 0, -1):
        c2 = min(c1, g[c1])
        if c2 >= 1 and c1 + t * c2 > best:
            best, arg = c1 + t * c2, (c1, c2)
    return best, arg


def verify_cor_sum(m: int, a: int, t: int) -> IneqReport:
    """Exact max of |K1| + t|K2| over non-empty cross-intersecting pairs with |K1| >= |K2|."""
    rhs = hilton_sum_rhs(m, a, t)
    value, arg = best_cor_pair(m, a, t)
    return IneqReport("cor-sum", {"m": m, "a": a, "t": t}, Fraction(value), Fraction(rhs), witness=arg)


def cor_sum_report(K1: Family, K2: Family, t: int) -> IneqReport:
    """Evaluate |K1| + t|K2| for an explicit pair against the closed-form bound."""
    m, a = K1.n, K1.k
    if K2.n != m or K2.k != a or a is None:
        raise ValueError("K1, K2 must be a-uniform on the same ground set")
    if not len(K2) or len(K1) < len(K2):
        raise ValueError("need |K1| >= |K2| >= 1")
    if not _cross_ok(K1.masks, K2.masks, 1):
        raise ValueError("K1, K2 are not cross-intersecting")
    return IneqReport(
        "cor-sum",
        {"m": m, "a": a, "t": t},
        Fraction(len(K1) + t * len(K2)),
        Fraction(hilton_sum_rhs(m, a, t)),
    )


def _brute_pairs(m: int, a: int):
    sets = kset_masks(m, a)
    if len(sets) > 8:
        raise ValueError("exhaustive pair search limited to at most 8 ground sets")
    fams = [tuple(x for i, x in enumerate(sets) if r >> i & 1) for r in range(1 << len(sets))]
    for f1 in fams:
        for f2 in fams:
            if f1 and f2 and _cross_ok(f1, f2, 1):
                yield len(f1), len(f2)


def verify_f87(m: int, a: int) -> IneqReport:
    """Exact max of |K1| + |K2| with |K1| >= |K2| >= C(m-2, a-2), against 2 C(m-1, a-1)."""
    if m < 2 * a:
        raise ValueError(f"need m >= 2a, got m={m} a={a}")
    floor = binomial(m - 2, a - 2)
    rhs = 2 * binomial(m - 1, a - 1)
    best, arg = -1, None
    if m == 2 * a:
        # compression needs m > 2a; tiny cases fall back to all family pairs
        for c1, c2 in _brute_pairs(m, a):
            if c1 >= c2 >= max(floor, 1) and c1 + c2 > best:
                best, arg = c1 + c2, (c1, c2)
    else:
        g = lex_cross_threshold(m, a, a)
        for c1 in range(binomial(m, a), 0, -1):
            c2 = min(c1, g[c1])
            if c2 >= max(floor, 1) and c1 + c2 > best:
                best, arg = c1 + c2, (c1, c2)
    if arg is None:
        # no qualifying pair: the bound holds vacuously
        return IneqReport("f87", {"m": m, "a": a}, Fraction(0), Fraction(rhs), witness=None)
    return IneqReport("f87", {"m": m, "a": a}, Fraction(best), Fraction(rhs), witness=arg)


# --- binomial inequality oracle --------------------------------------------

def check_key(n: int, k: int, i: int) -> IneqReport:
    """(n - ik)/n * C(n, k) <= C(n - i, k) for n > ik."""
    if not n > i * k:
        raise ValueError(f"need n > ik, got n={n} i={i} k={k}")
    lhs = Fraction(n - i * k, n) * binomial(n, k)
    return IneqReport("key", {"n": n, "k": k, "i": i}, lhs, Fraction(binomial(n - i, k)))


def _key2_floor(k: int, t: int, c: Fraction) -> Fraction:
    return c * (k - t) ** 2 + (t + 1)


def check_key2(n: int, k: int, t: int, c) -> IneqReport:
    """C(n-t-1, k-t-1) <= c/(c-1) C(n-k-1, k-t-1), through both intermediate bounds."""
    c = _frac(c)
    if not c > 1:
        raise ValueError(f"need c > 1, got {c}")
    if not n >= _key2_floor(k, t, c):
        raise ValueError(f"need n >= c(k-t)^2 + t + 1 = {_key2_floor(k, t, c)}, got {n}")
    base = binomial(n - k - 1, k - t - 1)
    steps = (
        Fraction(binomial(n - t - 1, k - t - 1)),
        Fraction(n - t - 1, n - t - 1 - (k - t) * (k - t - 1)) * base,
        Fraction(n - t - 1, n - t - 1 - (k - t) ** 2) * base,
        c / (c - 1) * base,
    )
    return IneqReport("key2", {"n": n, "k": k, "t": t, "c": c}, steps[0], steps[-1], steps=steps)


def check_key3(n: int, k: int, t: int, c) -> IneqReport:
    """C(n-t-1, k-t-1)^2 <= c/(c-2) C(n-k-1, k-t-1)^2 for c > 2."""
    c = _frac(c)
    if not c > 2:
        raise ValueError(f"need c > 2, got {c}")
    if not n >= _key2_floor(k, t, c):
        raise ValueError(f"need n >= c(k-t)^2 + t + 1 = {_key2_floor(k, t, c)}, got {n}")
    base = binomial(n - k - 1, k - t - 1) ** 2
    steps = (
        Fraction(binomial(n - t - 1, k - t - 1) ** 2),
        (c / (c - 1)) ** 2 * base,
        c * c / (c * c - 2 * c + 1) * base,
        c / (c - 2) * base,
    )
    return IneqReport("key3", {"n": n, "k": k, "t": t, "c": c}, steps[0], steps[-1], steps=steps)


def check_key4(n: int, k: int, t: int, c) -> IneqReport:
    """C(n-t-1, k-t-1)^2 <= c/(c-2) C(n-t-2, k-t-1)^2 for n >= ck, c > 2."""
    c = _frac(c)
    if not c > 2:
        raise ValueError(f"need c > 2, got {c}")
    if not n >= c * k:
        raise ValueError(f"need n >= ck = {c * k}, got {n}")
    lhs = Fraction(binomial(n - t - 1, k - t - 1) ** 2)
    rhs = c / (c - 2) * binomial(n - t - 2, k - t - 1) ** 2
    return IneqReport("key4", {"n": n, "k": k, "t": t, "c": c}, lhs, rhs)


# --- monotone auxiliary functions ------------------------------------------

def aux_f(n: int, k: int, t: int, l: int, s2: int) -> int:
    return binomial(s2, t) * k ** (l - t) * binomial(n - l, k - l) if l >= t else 0


def aux_g(n: int, k: int, t: int, s: int) -> int:
    return binomial(s, t) * k ** (s - t) * binomial(n - s, k - s)


def aux_h(n: int, k: int, t: int, l: int) -> Fraction:
    return (t + 1) ** 2 * Fraction(k) ** (l - t - 1) * binomial(n - l, k - l)


def aux_phi(n: int, k: int, t: int, x: int) -> int:
    return binomial(n - t, k - t) - binomial(n - k - 1 + x, k - t) + x * x * binomial(n - t - 2, k - t - 2)


def _mono_f(n: int, k: int, t: int, l: int, s2: int | None = None) -> IneqReport:
    if not n >= k * k:
        raise ValueError(f"need n >= k^2 = {k * k}, got {n}")
    if not t <= l <= k:
        raise ValueError(f"need t <= l <= k, got l={l}")
    s2 = t + 1 if s2 is None else s2
    ratio = Fraction(aux_f(n, k, t, l + 1, s2), aux_f(n, k, t, l, s2))
    closed = Fraction(k * (k - l), n - l)
    if ratio != closed:
        raise AssertionError(f"f ratio {ratio} differs from k(k-l)/(n-l) = {closed}")
    return IneqReport("mono:f", {"n": n, "k": k, "t": t, "l": l}, ratio, Fraction(1))


def _mono_g(n: int, k: int, t: int, s: int) -> IneqReport:
    if not n >= t * k * k:
        raise ValueError(f"need n >= tk^2 = {t * k * k}, got {n}")
    if not t + 2 <= s <= k:
        raise ValueError(f"need t+2 <= s <= k, got s={s}")
    ratio = Fraction(aux_g(n, k, t, s + 1), aux_g(n, k, t, s))
    closed = Fraction(s + 1, s + 1 - t) * Fraction(k * (k - s), n - s)
    if ratio != closed:
        raise AssertionError(f"g ratio {ratio} differs from its closed form {closed}")
    bound = Fraction(t + 3, 3) * Fraction(k * (k - s), n - s)
    return IneqReport(
        "mono:g", {"n": n, "k": k, "t": t, "s": s}, ratio, Fraction(1), strict=True,
        steps=(ratio, bound, Fraction(1)),
    )


def _mono_h(n: int, k: int, t: int, l: int) -> IneqReport:
    if not n >= k * k:
        raise ValueError(f"need n >= k^2 = {k * k}, got {n}")
    if not t + 1 <= l <= k:
        raise ValueError(f"need t+1 <= l <= k, got l={l}")
    ratio = aux_h(n, k, t, l + 1) / aux_h(n, k, t, l)
    closed = Fraction(k * (k - l), n - l)
    if ratio != closed:
        raise AssertionError(f"h ratio {ratio} differs from k(k-l)/(n-l) = {closed}")
    return IneqReport("mono:h", {"n": n, "k": k, "t": t, "l": l}, ratio, Fraction(1), strict=True)


def _mono_phi(n: int, k: int, t: int) -> IneqReport:
    if not n >= 4 * k * k:
        raise ValueError(f"need n >= 4k^2 = {4 * k * k}, got {n}")
    if not k - t >= 2:
        raise ValueError("phi needs at least two integer points (k - t >= 2)")
    values = [aux_phi(n, k, t, x) for x in range(1, k - t + 1)]
    # strictly decreasing iff the largest consecutive difference is negative
    worst = max(b - a for a, b in zip(values, values[1:]))
    return IneqReport("mono:phi", {"n": n, "k": k, "t": t}, Fraction(worst), Fraction(0), strict=True)


_MONO = {"f": _mono_f, "g": _mono_g, "h": _mono_h, "phi": _mono_phi}


def check_monotone_aux(kind: str, **params) -> IneqReport:
    """Exact ratio / consecutive-difference check for f, g, h or phi."""
    try:
        fn = _MONO[kind]
    except KeyError:
        raise ValueError(f"unknown auxiliary function {kind!r}") from None
    return fn(**params)
