"""Weighted branching process over ordered element sequences.

Starting from weight 1 on the empty sequence, every t-subset of a smallest
basis member B11 becomes a sequence of weight 1 / C(s, t).  A sequence S that
fails to t-meet some member B of the first basis is replaced by the |B \\ S|
extensions S + (y,), y in B \\ S, each inheriting w(S) / |B \\ S|.  The second
stage only draws B from members of size <= r1.  Total weight stays exactly 1,
and every member of the second basis shows up as the underlying set of a
surviving sequence, which yields the basis-size inequalities checked here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .core import Family, binomial, elements_of, lex_key
from .structure import Basis, tau_at_least

#: (sequence mask, violating members, stage) -> chosen member
Policy = Callable[[int, Sequence[int], int], int]


class BranchPreconditionError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def lex_policy(seq: int, violating: Sequence[int], stage: int) -> int:
    return min(violating, key=lex_key)


def random_policy(seed: int) -> Policy:
    rng = random.Random(seed)

    def choose(seq: int, violating: Sequence[int], stage: int) -> int:
        return rng.choice(sorted(violating, key=lex_key))

    return choose


def policy_from_name(name: str) -> Policy:
    if name == "lex":
        return lex_policy
    if name.startswith("random:"):
        return random_policy(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown policy {name!r} (use 'lex' or 'random:<seed>')")


def branch_policy(seq: int, basis: Basis | Family, stage: int, t: int, policy: Policy = lex_policy) -> int | None:
    """Member of ``basis`` the sequence fails to t-meet, or None if it meets all."""
    violating = [B for B in basis.masks if (B & seq).bit_count() < t]
    if not violating:
        return None
    return policy(seq, violating, stage)


@dataclass
class BranchSequence:
    elements: tuple[int, ...]
    mask: int
    weight: Fraction


@dataclass
class BranchState:
    live: list[BranchSequence] = field(default_factory=list)
    finished: list[BranchSequence] = field(default_factory=list)
    stage: int = 0

    def total_weight(self) -> Fraction:
        return sum((s.weight for s in self.live), Fraction(0)) + sum(
            (s.weight for s in self.finished), Fraction(0)
        )


@dataclass
class BranchReport:
    t: int
    k: int
    r1: int | None
    s1: int
    second_stage: bool
    survivors: list[BranchSequence]
    stage_sums: list[Fraction]
    stages: int
    lhs14: Fraction | None
    lhs15: Fraction
    cover: dict[int, tuple[int, ...] | None]

    @property
    def survivors_by_length(self) -> dict[int, list[BranchSequence]]:
        out: dict[int, list[BranchSequence]] = {}
        for s in self.survivors:
            out.setdefault(len(s.elements), []).append(s)
        return dict(sorted(out.items()))

    @property
    def mass_by_length(self) -> dict[int, Fraction]:
        return {l: sum((s.weight for s in seqs), Fraction(0)) for l, seqs in self.survivors_by_length.items()}

    @property
    def weight_conserved(self) -> bool:
        return all(w == 1 for w in self.stage_sums)

    @property
    def cover_holds(self) -> bool:
        return all(v is not None for v in self.cover.values())

    def weight_floor(self, length: int) -> Fraction:
        """Least weight a survivor of the given length can carry."""
        base = binomial(self.s1, self.t)
        if self.second_stage:
            return Fraction(1, base * self.r1 * self.k ** (length - self.t - 1))
        return Fraction(1, base * self.k ** (length - self.t))

    @property
    def weight_floor_holds(self) -> bool:
        return all(s.weight >= self.weight_floor(len(s.elements)) for s in self.survivors)

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "k": self.k,
            "r1": self.r1,
            "s1": self.s1,
            "second_stage": self.second_stage,
            "stages": self.stages,
            "weight_conserved": self.weight_conserved,
            "stage_sums": [rational_json(w) for w in self.stage_sums],
            "survivor_counts": {str(l): len(v) for l, v in self.survivors_by_length.items()},
            "mass_by_length": {str(l): rational_json(w) for l, w in self.mass_by_length.items()},
            "lhs14": None if self.lhs14 is None else rational_json(self.lhs14),
            "lhs15": rational_json(self.lhs15),
            "cover": [
                {"member": list(elements_of(B)), "sequence": None if seq is None else list(seq)}
                for B, seq in sorted(self.cover.items(), key=lambda kv: lex_key(kv[0]))
            ],
            "cover_holds": self.cover_holds,
            "weight_floor_holds": self.weight_floor_holds,
        }


def rational_json(q: Fraction) -> dict[str, str]:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def _layers(basis: Basis | Family) -> dict[int, int]:
    return basis.family.sizes() if isinstance(basis, Basis) else basis.sizes()


def _s(basis: Basis | Family) -> int:
    return min(m.bit_count() for m in basis.masks)


def lhs_inequality_14(B1: Basis | Family, B2: Basis | Family, r1: int, t: int, k: int) -> Fraction:
    """sum over r1 <= l <= k of |B2 layer l| / (C(s(B1), t) * r1 * k^(l-t-1))."""
    base = binomial(_s(B1), t) * r1
    layers = _layers(B2)
    return sum(
        (Fraction(layers.get(l, 0)) / (base * Fraction(k) ** (l - t - 1)) for l in range(r1, k + 1)),
        Fraction(0),
    )


def lhs_inequality_15(B1: Basis | Family, B2: Basis | Family, t: int, k: int) -> Fraction:
    """sum over s(B1) <= l <= k of |B2 layer l| / (C(s(B1), t) * k^(l-t))."""
    s1 = _s(B1)
    base = binomial(s1, t)
    layers = _layers(B2)
    return sum(
        (Fraction(layers.get(l, 0)) / (base * Fraction(k) ** (l - t)) for l in range(s1, k + 1)),
        Fraction(0),
    )


def minimal_r(basis: Basis | Family, t: int, k: int) -> int | None:
    """Least r with tau_t(basis members of size <= r) >= t+1, or None."""
    masks = basis.masks
    n = basis.n
    for r in range(_s(basis), k + 1):
        low = Family(n, (m for m in masks if m.bit_count() <= r))
        if len(low) and tau_at_least(low, t, t + 1):
            return r
    return None


def _check_preconditions(B1: Family, B2: Family, r1: int | None, t: int, second_stage: bool) -> None:
    if not len(B1) or not len(B2):
        raise BranchPreconditionError("both bases must be non-empty")
    s1 = _s(B1)
    if s1 < t + 1:
        witness = min((m for m in B1.masks if m.bit_count() == s1), key=lex_key)
        raise BranchPreconditionError(f"s(B1) = {s1} < t+1", elements_of(witness))
    if second_stage:
        if r1 is None:
            raise BranchPreconditionError("r1 required when the second stage runs")
        low = [m for m in B1.masks if m.bit_count() <= r1]
        if not low:
            raise BranchPreconditionError(f"no member of B1 has size <= r1={r1}")
        common = low[0]
        for m in low[1:]:
            common &= m
        # a t-set meets every member in t elements iff it lies in all of them
        if common.bit_count() >= t:
            witness = elements_of(common)[:t]
            raise BranchPreconditionError(
                f"tau_t(B1 members of size <= {r1}) = t: a t-set transversal exists", witness
            )
    for a in B1.masks:
        for b in B2.masks:
            if (a & b).bit_count() < t:
                raise BranchPreconditionError(
                    "B1, B2 not cross t-intersecting", (elements_of(a), elements_of(b))
                )


def run_branching(
    B1: Basis | Family,
    B2: Basis | Family,
    r1: int | None,
    t: int,
    k: int,
    policy: Policy = lex_policy,
    second_stage: bool = True,
) -> BranchReport:
    """Run the process against ``B1`` and certify it on ``B2``.

    With ``second_stage=False`` the r1-restricted stage is skipped, which is
    the variant behind the second inequality; ``r1`` is then ignored.
    """
    fam1 = B1.family if isinstance(B1, Basis) else B1
    fam2 = B2.family if isinstance(B2, Basis) else B2
    _check_preconditions(fam1, fam2, r1, t, second_stage)
    masks1 = fam1.masks
    n = fam1.n
    s1 = _s(fam1)
    first = min((m for m in masks1 if m.bit_count() == s1), key=lex_key)
    w0 = Fraction(1, binomial(s1, t))
    state = BranchState(stage=1)
    for combo in combinations(elements_of(first), t):
        mask = 0
        for x in combo:
            mask |= 1 << (x - 1)
        state.live.append(BranchSequence(combo, mask, w0))
    sums = [state.total_weight()]

    low = tuple(m for m in masks1 if r1 is not None and m.bit_count() <= r1)
    while state.live:
        state.stage += 1
        if state.stage > n + 1:
            raise RuntimeError("branching failed to terminate within n stages")
        pool = low if (second_stage and state.stage == 2) else masks1
        nxt: list[BranchSequence] = []
        for seq in state.live:
            violating = [B for B in pool if (B & seq.mask).bit_count() < t]
            if not violating:
                if state.stage == 2 and second_stage:
                    # ruled out by the tau precondition
                    raise RuntimeError("second stage found no violating member")
                state.finished.append(seq)
                continue
            chosen = policy(seq.mask, violating, state.stage)
            fresh = chosen & ~seq.mask
            share = seq.weight / fresh.bit_count()
            for y in elements_of(fresh):
                nxt.append(BranchSequence(seq.elements + (y,), seq.mask | 1 << (y - 1), share))
        state.live = nxt
        sums.append(state.total_weight())

    by_set: dict[int, tuple[int, ...]] = {}
    for seq in state.finished:
        by_set.setdefault(seq.mask, seq.elements)
    floor_len = r1 if second_stage else s1
    cover = {B: by_set.get(B) for B in fam2.masks if B.bit_count() >= floor_len}
    return BranchReport(
        t=t,
        k=k,
        r1=r1 if second_stage else None,
        s1=s1,
        second_stage=second_stage,
        survivors=state.finished,
        stage_sums=sums,
        stages=state.stage,
        lhs14=lhs_inequality_14(fam1, fam2, r1, t, k) if second_stage else None,
        lhs15=lhs_inequality_15(fam1, fam2, t, k),
        cover=cover,
    )
