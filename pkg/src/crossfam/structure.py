"""Predicates, t-transversals, covering numbers, bases and saturated pairs.

A t-transversal of a family is a set meeting every member in at least t
elements.  For a cross t-intersecting pair (F, G) the basis of F is the set of
inclusion-minimal t-transversals of G of size at most k; when the pair is
saturated F is recovered as the k-sets containing a basis member.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .core import Family, SubsetWord, common_intersection, elements_of, kset_masks, lex_key


class NoTransversalError(ValueError):
    """No t-transversal exists within the permitted size bound."""


# --- predicates ------------------------------------------------------------

def is_t_intersecting(family: Family, t: int) -> bool:
    masks = family.masks
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if (a & b).bit_count() < t:
                return False
    return True


def is_cross_t_intersecting(F: Family, G: Family, t: int) -> bool:
    if F.n != G.n:
        raise ValueError(f"families live on different ground sets ({F.n} vs {G.n})")
    return _cross_ok(F.masks, G.masks, t)


def _cross_ok(xs: Sequence[int], ys: Sequence[int], t: int) -> bool:
    for a in xs:
        for b in ys:
            if (a & b).bit_count() < t:
                return False
    return True


def is_nontrivial(family: Family, t: int) -> bool:
    return common_intersection(family).card < t


def is_transversal(mask: int, masks: Sequence[int], t: int) -> bool:
    for m in masks:
        if (mask & m).bit_count() < t:
            return False
    return True


# --- transversals ----------------------------------------------------------

def t_transversal_masks(masks: Sequence[int], n: int, t: int, size: int) -> list[int]:
    return [T for T in kset_masks(n, size) if is_transversal(T, masks, t)]


def t_transversals(family: Family, t: int, size: int) -> Family:
    """All ``size``-subsets T of [n] with |T & F| >= t for every member F."""
    if not t <= size <= family.n:
        raise ValueError(f"need t <= size <= n, got t={t} size={size} n={family.n}")
    return Family(family.n, t_transversal_masks(family.masks, family.n, t, size), k=size)


def _member_bound(family: Family) -> int:
    return family.k if family.k is not None else max(m.bit_count() for m in family.masks)


def tau_t(family: Family, t: int, k: int | None = None) -> int:
    """Minimum size of a t-transversal, searched for sizes t, t+1, ..., k.

    ``k`` defaults to the family's member size (largest member size for a
    mixed family).  Raises NoTransversalError when nothing of size <= k works.
    """
    if not len(family):
        raise ValueError("tau_t of an empty family is undefined")
    if k is None:
        k = _member_bound(family)
    masks = family.masks
    union = 0
    for m in masks:
        union |= m
    ground = [i for i in range(union.bit_length()) if union >> i & 1]
    for size in range(t, k + 1):
        if size > len(ground):
            break
        for combo in combinations(ground, size):
            T = 0
            for i in combo:
                T |= 1 << i
            if is_transversal(T, masks, t):
                return size
    raise NoTransversalError(f"no {t}-transversal of size <= {k}")


def tau_at_least(family: Family, t: int, bound: int) -> bool:
    """True iff every t-transversal of ``family`` has size >= ``bound``."""
    try:
        return tau_t(family, t, bound - 1) >= bound
    except NoTransversalError:
        return True


@dataclass(frozen=True)
class Basis:
    """Inclusion-minimal t-transversals (sizes t..k) of a target family."""

    family: Family
    t: int
    k: int

    def __post_init__(self):
        if self.family.n and len(self.family):
            sizes = self.family.sizes()
            if min(sizes) < self.t or max(sizes) > self.k:
                raise ValueError(f"basis member sizes {sorted(sizes)} outside [{self.t}, {self.k}]")

    @property
    def n(self) -> int:
        return self.family.n

    @property
    def masks(self) -> tuple[int, ...]:
        return self.family.masks

    @property
    def s(self) -> int:
        return min(m.bit_count() for m in self.family.masks)

    @property
    def layers(self) -> dict[int, int]:
        return self.family.sizes()

    def layer(self, size: int) -> Family:
        return self.family.layer(size)

    def up_to(self, size: int) -> Family:
        return self.family.filter(lambda m: m.bit_count() <= size)

    def __len__(self) -> int:
        return len(self.family)

    def is_antichain(self) -> bool:
        masks = self.family.masks
        for a, b in combinations(masks, 2):
            if a & b in (a, b):
                return False
        return True


def compute_basis(target: Family, t: int, k: int) -> Basis:
    """All inclusion-minimal t-transversals of ``target`` with size <= k.

    Depth-first include/exclude over the elements of the target's union, cut as
    soon as a member can no longer reach t hits.  A branch stops once it is a
    transversal; the survivors are then filtered for minimality.
    """
    masks = target.masks
    if not masks:
        raise ValueError("basis of an empty target is undefined")
    union = 0
    for m in masks:
        union |= m
    elems = [1 << i for i in range(union.bit_length()) if union >> i & 1]
    # suffix[i] = union of elements at positions >= i
    suffix = [0] * (len(elems) + 1)
    for i in range(len(elems) - 1, -1, -1):
        suffix[i] = suffix[i + 1] | elems[i]
    found: list[int] = []

    def feasible(T: int, rest: int) -> bool:
        for m in masks:
            if (T & m).bit_count() + (rest & m).bit_count() < t:
                return False
        return True

    def dfs(i: int, T: int, size: int) -> None:
        if is_transversal(T, masks, t):
            found.append(T)
            return
        if size == k or i == len(elems) or not feasible(T, suffix[i]):
            return
        dfs(i + 1, T | elems[i], size + 1)
        dfs(i + 1, T, size)

    dfs(0, 0, 0)
    minimal = [T for T in found if _is_minimal(T, masks, t)]
    return Basis(Family(target.n, minimal), t, k)


def _is_minimal(T: int, masks: Sequence[int], t: int) -> bool:
    rest = T
    while rest:
        low = rest & -rest
        if is_transversal(T & ~low, masks, t):
            return False
        rest ^= low
    return True


def reconstruct_from_basis(basis: Basis | Family, n: int, k: int) -> Family:
    """All k-subsets of [n] containing some basis member."""
    masks = basis.masks
    if not masks:
        raise ValueError("reconstruction needs a non-empty basis")
    return Family(n, (F for F in kset_masks(n, k) if any(B & F == B for B in masks)), k=k)


def partition_by_basis_rank(family: Family, basis: Basis | Family) -> dict[int, Family]:
    """Split ``family`` by the largest basis member each set contains."""
    masks = basis.masks
    buckets: dict[int, list[int]] = {}
    for F in family.masks:
        ranks = [B.bit_count() for B in masks if B & F == B]
        if not ranks:
            raise ValueError(f"member {elements_of(F)} contains no basis set")
        buckets.setdefault(max(ranks), []).append(F)
    return {l: Family(family.n, buckets[l], k=family.k) for l in sorted(buckets)}


# --- saturation ------------------------------------------------------------

@dataclass(frozen=True)
class SaturatedPair:
    F: Family
    G: Family
    t: int
    basis_F: Basis = field(repr=False)
    basis_G: Basis = field(repr=False)

    @property
    def n(self) -> int:
        return self.F.n

    @property
    def k(self) -> int:
        return self.F.k

    def swapped(self) -> "SaturatedPair":
        return SaturatedPair(self.G, self.F, self.t, self.basis_G, self.basis_F)

    def is_nontrivial(self) -> bool:
        return is_nontrivial(self.F, self.t) and is_nontrivial(self.G, self.t)

    def is_fixpoint(self) -> bool:
        n, k, t = self.n, self.k, self.t
        return (
            self.F.masks == tuple(t_transversal_masks(self.G.masks, n, t, k))
            and self.G.masks == tuple(t_transversal_masks(self.F.masks, n, t, k))
        )

    @property
    def A1(self) -> Family:
        """(t+1)-element t-transversals of G."""
        return t_transversals(self.G, self.t, self.t + 1)

    @property
    def A2(self) -> Family:
        """(t+1)-element t-transversals of F."""
        return t_transversals(self.F, self.t, self.t + 1)


def _check_pair_shape(F: Family, G: Family) -> int:
    if F.n != G.n:
        raise ValueError("families live on different ground sets")
    if F.k is None or G.k is None or F.k != G.k:
        raise ValueError("saturation needs two k-uniform families with the same k")
    return F.k


def saturate(F: Family, G: Family, t: int) -> SaturatedPair:
    """Grow (F, G) to a saturated cross t-intersecting pair.

    Alternates F <- T(G), G <- T(F), starting with F, where T is the family
    of k-element t-transversals, until neither side changes.
    """
    if not len(F) or not len(G):
        raise ValueError("saturation needs two non-empty families")
    k = _check_pair_shape(F, G)
    if not is_cross_t_intersecting(F, G, t):
        raise ValueError(f"input pair is not cross {t}-intersecting")
    n = F.n
    fm, gm = F.masks, G.masks
    while True:
        new_f = tuple(sorted(t_transversal_masks(gm, n, t, k), key=lex_key))
        new_g = tuple(sorted(t_transversal_masks(new_f, n, t, k), key=lex_key))
        if new_f == fm and new_g == gm:
            break
        fm, gm = new_f, new_g
    return pair_from_saturated(Family(n, fm, k=k), Family(n, gm, k=k), t)


def pair_from_saturated(F: Family, G: Family, t: int) -> SaturatedPair:
    """Attach bases to a pair already known to be saturated."""
    k = _check_pair_shape(F, G)
    return SaturatedPair(F, G, t, compute_basis(G, t, k), compute_basis(F, t, k))


def random_saturated_pair(n: int, k: int, t: int, rng: random.Random) -> SaturatedPair:
    """Saturate a random cross t-intersecting seed pair.

    F0 is a handful of random k-sets; G0 a random non-empty subset of the
    k-element t-transversals of F0.
    """
    universe = kset_masks(n, k)
    while True:
        f0 = rng.sample(universe, rng.randint(1, 4))
        partners = t_transversal_masks(f0, n, t, k)
        if not partners:
            continue
        g0 = rng.sample(partners, rng.randint(1, min(4, len(partners))))
        return saturate(Family(n, f0, k=k), Family(n, g0, k=k), t)


# --- exact cross t-intersecting (t+1)-uniform pairs -------------------------

class Clause(enum.Enum):
    CASE_I = "i"
    CASE_II = "ii"
    CASE_III = "iii"


def _require_exact(A: Family, B: Family, t: int) -> None:
    if not len(A) or not len(B):
        raise ValueError("exact pair needs two non-empty families")
    if A.k != t + 1 or B.k != t + 1:
        raise ValueError(f"exact pair members must all have size t+1={t + 1}")
    for a in A.masks:
        for b in B.masks:
            if (a & b).bit_count() != t:
                raise ValueError(
                    f"not exact cross {t}-intersecting: {elements_of(a)} & {elements_of(b)}"
                )


def classify_exact_pair(A: Family, B: Family, t: int, k: int) -> frozenset[Clause]:
    """Every clause of the exact-pair trichotomy that (A, B) satisfies.

    CASE_I: one side has at most 2 members, the other at most k+1 members and
    t-covering number >= t+1.  CASE_II: A | B is a sunflower with a t-element
    center.  CASE_III: |A| * |B| <= (t+2)^2 / 2.
    """
    _require_exact(A, B, t)
    if k < t + 1:
        raise ValueError(f"need k >= t+1, got k={k}")
    out = set()
    for X, Y in ((A, B), (B, A)):
        if len(X) <= 2 and len(Y) <= k + 1 and tau_at_least(Y, t, t + 1):
            out.add(Clause.CASE_I)
    union = A.union(B)
    if _is_sunflower(union.masks, t):
        out.add(Clause.CASE_II)
    if 2 * len(A) * len(B) <= (t + 2) ** 2:
        out.add(Clause.CASE_III)
    return frozenset(out)


def _is_sunflower(masks: Sequence[int], center_size: int) -> bool:
    if len(masks) < 2:
        return False
    center = masks[0] & masks[1]
    if center.bit_count() != center_size:
        return False
    return all(a & b == center for a, b in combinations(masks, 2))


@dataclass(frozen=True)
class ExactFactsReport:
    ok: bool
    fact1_violations: tuple[tuple[SubsetWord, SubsetWord], ...] = ()
    fact2_violations: tuple[tuple[SubsetWord, SubsetWord, SubsetWord], ...] = ()


def check_exact_facts(A: Family, B: Family, t: int) -> ExactFactsReport:
    """Check the two structural facts of an exact pair, on both sides.

    Fact 1: two members of one side share t-1 or t elements.  Fact 2: when two
    members share exactly t-1 elements, that intersection lies inside every
    member of the other side.
    """
    _require_exact(A, B, t)
    f1, f2 = [], []
    for X, Y in ((A, B), (B, A)):
        for a, b in combinations(X.masks, 2):
            common = a & b
            size = common.bit_count()
            if size not in (t - 1, t):
                f1.append((SubsetWord(a), SubsetWord(b)))
            if size == t - 1:
                for y in Y.masks:
                    if common & y != common:
                        f2.append((SubsetWord(a), SubsetWord(b), SubsetWord(y)))
    return ExactFactsReport(not f1 and not f2, tuple(f1), tuple(f2))


def exact_pairs(n: int, t: int):
    """Yield every exact cross t-intersecting pair of (t+1)-uniform families on [n] with [t+1] in B.

    Any pair can be relabelled so that B holds [t+1], so this covers all pairs
    up to relabelling (with repeats).  A runs over non-empty sets of partners
    of [t+1]; B is [t+1] plus any subset of the common partners of A.
    """
    if n < t + 2:
        return
    sets = kset_masks(n, t + 1)
    base = sets[0]

    def partners(x: int) -> list[int]:
        return [y for y in sets if (x & y).bit_count() == t]

    first = partners(base)
    for r in range(1, 1 << len(first)):
        A = [first[i] for i in range(len(first)) if r >> i & 1]
        common = [y for y in sets if y != base and all((a & y).bit_count() == t for a in A)]
        for q in range(1 << len(common)):
            B = [base] + [common[i] for i in range(len(common)) if q >> i & 1]
            yield Family(n, A, k=t + 1), Family(n, B, k=t + 1)
