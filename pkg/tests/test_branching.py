import json
import random
from fractions import Fraction

import pytest

from crossfam.branching import (
    BranchPreconditionError,
    branch_policy,
    lex_policy,
    lhs_inequality_14,
    lhs_inequality_15,
    minimal_r,
    policy_from_name,
    rational_json,
    run_branching,
)
from crossfam.core import Family, binomial, kset_masks
from crossfam.structure import random_saturated_pair

TOY = Family(4, kset_masks(4, 3))


def test_toy_value():
    rep = run_branching(TOY, TOY, 3, 2, 3)
    assert rep.lhs14 == rep.lhs15 == Fraction(4, 9)
    assert rep.weight_conserved and rep.cover_holds and rep.weight_floor_holds
    assert len(rep.survivors) == 6
    assert {s.weight for s in rep.survivors} == {Fraction(1, 6)}


def test_lhs_formulas_by_hand():
    # B2 layer sizes {3: 4}; s(B1) = 3, r1 = 3, t = 2, k = 3
    assert lhs_inequality_14(TOY, TOY, 3, 2, 3) == Fraction(4, binomial(3, 2) * 3 * 1)
    assert lhs_inequality_15(TOY, TOY, 2, 3) == Fraction(4, binomial(3, 2) * 3)
    mixed = Family.of(6, [(1, 2, 3), (1, 2, 4, 5)])
    # layers {3: 1, 4: 1} with s1 = 3, t = 2, k = 4, r1 = 3
    want14 = Fraction(1, 3 * 3 * 1) + Fraction(1, 3 * 3 * 4)
    want15 = Fraction(1, 3 * 4) + Fraction(1, 3 * 16)
    assert lhs_inequality_14(TOY, mixed, 3, 2, 4) == want14
    assert lhs_inequality_15(TOY, mixed, 2, 4) == want15


def _corpus(n, k, t, count, seed):
    rng = random.Random(seed)
    return [random_saturated_pair(n, k, t, rng) for _ in range(count)]


@pytest.mark.parametrize("n,k,t", [(8, 3, 2), (9, 4, 2), (10, 4, 3)])
@pytest.mark.parametrize("policy", ["lex", "random:5"])
def test_invariants_on_saturated_pairs(n, k, t, policy):
    runs = 0
    for P in _corpus(n, k, t, 30, f"branch{n}{k}{t}"):
        for B1, B2 in ((P.basis_F, P.basis_G), (P.basis_G, P.basis_F)):
            r1 = minimal_r(B1, t, k)
            for second in (True, False):
                if second and r1 is None:
                    continue
                try:
                    rep = run_branching(B1, B2, r1, t, k, policy_from_name(policy), second_stage=second)
                except BranchPreconditionError:
                    continue
                runs += 1
                assert rep.weight_conserved
                assert rep.cover_holds
                assert rep.weight_floor_holds
                assert rep.lhs15 <= 1
                if second:
                    assert rep.lhs14 <= 1
                # survivors are t-transversals of B1
                assert all(all((b & s.mask).bit_count() >= t for b in B1.masks) for s in rep.survivors)
    assert runs > 0


def test_preconditions():
    small = Family.of(5, [(1, 2)])
    with pytest.raises(BranchPreconditionError):
        run_branching(small, small, 2, 2, 3)  # s(B1) = 2 < t + 1
    star = Family.of(6, [(1, 2, 3), (1, 2, 4)])
    with pytest.raises(BranchPreconditionError) as exc:
        run_branching(star, star, 3, 2, 3)  # {1,2} t-meets every member
    assert exc.value.witness == (1, 2)
    with pytest.raises(BranchPreconditionError):
        run_branching(TOY, Family.of(4, [(1, 2, 3)]), None, 2, 3)  # r1 missing
    far = Family.of(7, [(5, 6, 7)])
    with pytest.raises(BranchPreconditionError):
        run_branching(TOY.union(Family(7)), far, 3, 2, 3)
    with pytest.raises(BranchPreconditionError):
        run_branching(Family(4, [], k=3), TOY, 3, 2, 3)


def test_minimal_r():
    assert minimal_r(TOY, 2, 3) == 3
    star = Family.of(6, [(1, 2, 3), (1, 2, 4)])
    assert minimal_r(star, 2, 3) is None


def test_policies():
    assert branch_policy(0b0011, TOY, 1, 2) is not None
    assert branch_policy(0b0111, Family.of(4, [(1, 2, 3)]), 1, 2) is None
    assert lex_policy(0, [0b1100, 0b0011], 1) == 0b0011
    a, b = policy_from_name("random:9"), policy_from_name("random:9")
    picks = [0b0011, 0b0101, 0b0110, 0b1001]
    assert [a(0, picks, 1) for _ in range(10)] == [b(0, picks, 1) for _ in range(10)]
    with pytest.raises(ValueError):
        policy_from_name("greedy")


def test_report_serialises():
    d = run_branching(TOY, TOY, 3, 2, 3).to_dict()
    json.dumps(d)
    assert d["lhs14"] == rational_json(Fraction(4, 9)) == {"num": "4", "den": "9"}
