"""The two extremal non-trivial t-intersecting families, stars and sunflowers."""

from __future__ import annotations

from itertools import combinations

from .core import (
    Family,
    GroundParams,
    SubsetWord,
    binomial,
    full_mask,
    kset_masks,
    mask_of,
)


def _interval(lo: int, hi: int) -> int:
    """Mask of the integer interval [lo, hi] (empty when lo > hi)."""
    if lo > hi:
        return 0
    return full_mask(hi) & ~full_mask(lo - 1)


def build_H(n: int, k: int, t: int) -> Family:
    """Hilton-Milner type family.

    All k-sets containing [t] that meet [t+1, k+1], together with the t sets
    [k+1] \\ {j} for 1 <= j <= t.
    """
    GroundParams(n, k, t)
    head = full_mask(t)
    window = _interval(t + 1, k + 1)
    members = [m for m in kset_masks(n, k) if m & head == head and m & window]
    top = full_mask(k + 1)
    members.extend(top & ~(1 << (j - 1)) for j in range(1, t + 1))
    return Family(n, members, k=k)


def build_A(n: int, k: int, t: int) -> Family:
    """Frankl type family: k-sets meeting [t+2] in at least t+1 elements."""
    GroundParams(n, k, t)
    if n < t + 2:
        raise ValueError(f"need n >= t+2, got n={n} t={t}")
    core = full_mask(t + 2)
    return Family(n, (m for m in kset_masks(n, k) if (m & core).bit_count() >= t + 1), k=k)


def size_A(n: int, k: int, t: int) -> int:
    GroundParams(n, k, t)
    return (t + 2) * binomial(n - t - 2, k - t - 1) + binomial(n - t - 2, k - t - 2)


def size_H(n: int, k: int, t: int) -> int:
    GroundParams(n, k, t)
    return t + binomial(n - t, k - t) - binomial(n - k - 1, k - t)


def build_star(n: int, k: int, center: SubsetWord | int) -> Family:
    """All k-subsets of [n] containing ``center``."""
    bits = center.bits if isinstance(center, SubsetWord) else int(center)
    if bits & ~full_mask(n):
        raise ValueError("center not inside the ground set")
    if bits.bit_count() > k or k > n:
        raise ValueError(f"need |center| <= k <= n, got |center|={bits.bit_count()} k={k} n={n}")
    return Family(n, (m for m in kset_masks(n, k) if m & bits == bits), k=k)


def sunflower_check(family: Family, center_size: int) -> SubsetWord | None:
    """The common center if ``family`` is a sunflower with |center| = center_size.

    Every pairwise intersection must equal the same set C.  A family with fewer
    than two members has no determined center and yields None.
    """
    masks = family.masks
    if not masks:
        raise ValueError("sunflower check needs a non-empty family")
    if len(masks) < 2:
        return None
    center = masks[0] & masks[1]
    if center.bit_count() != center_size:
        return None
    for a, b in combinations(masks, 2):
        if a & b != center:
            return None
    return SubsetWord(center)


def find_sunflower(family: Family, petals: int, center_size: int) -> tuple[SubsetWord, Family] | None:
    """Search ``family`` for a sub-sunflower with ``petals`` members and a center of ``center_size``.

    Returns (center, members) for the first admissible center met, else None.
    Members through a center C form a sunflower iff their parts outside C are
    pairwise disjoint, so each candidate center reduces to a disjoint-set search.
    """
    if petals < 2:
        raise ValueError("a sunflower needs at least two petals")
    masks = family.masks
    seen = set()
    for m in masks:
        for c in combinations([i for i in range(m.bit_length()) if m >> i & 1], center_size):
            center = sum(1 << i for i in c)
            if center in seen:
                continue
            seen.add(center)
            outer = [x & ~center for x in masks if x & center == center]
            if len(outer) < petals:
                continue
            chosen = _disjoint_pick(outer, petals)
            if chosen is not None:
                return SubsetWord(center), Family(family.n, (p | center for p in chosen))
    return None


def _disjoint_pick(parts: list[int], need: int) -> list[int] | None:
    picked: list[int] = []

    def go(start: int, used: int) -> bool:
        if len(picked) == need:
            return True
        for i in range(start, len(parts)):
            if len(parts) - i < need - len(picked):
                return False
            p = parts[i]
            if p & used:
                continue
            picked.append(p)
            if go(i + 1, used | p):
                return True
            picked.pop()
        return False

    return list(picked) if go(0, 0) else None


def build_family(kind: str, n: int, k: int, t: int | None = None, center=None) -> Family:
    """Dispatch by name: ``A``, ``H`` or ``star``."""
    if kind == "A":
        return build_A(n, k, t)
    if kind == "H":
        return build_H(n, k, t)
    if kind == "star":
        return build_star(n, k, mask_of(center or ()))
    raise ValueError(f"unknown family {kind!r}")
