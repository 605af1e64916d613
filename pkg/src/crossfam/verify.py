"""The full verification suite, at smoke or desk scale.

Each criterion returns a ``CriterionResult``; details hold only counts,
values and witnesses (no timings), so a report is a pure function of
(seed, scale).
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .bounds import (
    hilton_compress_check,
    hilton_sum_rhs,
    random_cross_intersecting_pair,
    verify_cor_sum,
    verify_f87,
    verify_hilton_sum,
)
from .branching import BranchPreconditionError, minimal_r, rational_json, run_branching
from .constructions import build_A, build_H, find_sunflower, size_A, size_H
from .core import Family, binomial, elements_of, kset_masks
from .ineqgrid import CHECKS, run_grid
from .search import max_nontrivial_t_intersecting, max_product_cross_1, max_product_nontrivial_cross
from .structure import (
    SaturatedPair,
    _cross_ok,
    check_exact_facts,
    classify_exact_pair,
    exact_pairs,
    is_cross_t_intersecting,
    is_nontrivial,
    is_t_intersecting,
    random_saturated_pair,
    reconstruct_from_basis,
    tau_t,
)

SCALES = ("smoke", "desk")

# per-scale knobs
_KNOBS = {
    "smoke": {"n_max": 12, "hmf": [(6, 3, 2), (7, 3, 2), (8, 4, 3)], "pairs": 20, "scan_n": 6,
              "hilton_pairs": 50, "m_max": 10},
    "desk": {"n_max": 16, "hmf": [(6, 3, 2), (7, 3, 2), (8, 3, 2), (9, 3, 2), (8, 4, 3)], "pairs": 200,
             "scan_n": 7, "hilton_pairs": 500, "m_max": 12},
}

SATURATION_TRIPLES = [(8, 3, 2), (9, 4, 2), (10, 4, 3)]
# the smallest k the product theorem is stated for
CLASSIFY_K = 5


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed, "details": self.details}


def _fams(*fs: Family) -> list[list[list[int]]]:
    return [[list(s) for s in f.sets()] for f in fs]


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


# --- 1, 2 -----------------------------------------------------------------------

def _grid(n_max: int):
    for t in (2, 3):
        for k in range(t + 1, 6):
            for n in range(k + 1, n_max + 1):
                yield n, k, t


def criterion_1(scale: str) -> CriterionResult:
    bad = []
    points = 0
    for n, k, t in _grid(_KNOBS[scale]["n_max"]):
        points += 1
        if n < t + 2:
            continue
        a, h = len(build_A(n, k, t)), len(build_H(n, k, t))
        if a != size_A(n, k, t) or h != size_H(n, k, t):
            bad.append([n, k, t, a, size_A(n, k, t), h, size_H(n, k, t)])
    anchors = {"size_A(12,4,2)": size_A(12, 4, 2), "size_H(12,4,2)": size_H(12, 4, 2)}
    ok = not bad and anchors == {"size_A(12,4,2)": 33, "size_H(12,4,2)": 26}
    return CriterionResult(1, "construction sizes match closed forms", ok,
                           {"points": points, "mismatches": bad, "anchors": anchors})


def criterion_2(scale: str) -> CriterionResult:
    bad = []
    points = 0
    for n, k, t in _grid(_KNOBS[scale]["n_max"]):
        points += 1
        for name, fam in (("A", build_A(n, k, t)), ("H", build_H(n, k, t))):
            if not (is_t_intersecting(fam, t) and is_nontrivial(fam, t)):
                bad.append([name, n, k, t])
    return CriterionResult(2, "A and H are non-trivial t-intersecting", not bad,
                           {"points": points, "failures": bad})


# --- 3, 4, 5 --------------------------------------------------------------------

def criterion_3(scale: str) -> CriterionResult:
    rows = []
    ok = True
    for n, k, t in _KNOBS[scale]["hmf"]:
        res = max_nontrivial_t_intersecting(n, k, t)
        target = max(size_A(n, k, t), size_H(n, k, t))
        row_ok = res.exhaustive and res.optimum == target and (k != 3 or res.optimum == 4)
        ok &= row_ok
        rows.append({"n": n, "k": k, "t": t, "optimum": res.optimum, "max_A_H": target,
                     "exhaustive": res.exhaustive, "equal": row_ok, "witness": _fams(*res.witnesses)})
    return CriterionResult(3, "exhaustive search matches max(|A|, |H|)", ok, {"rows": rows})


def criterion_4(scale: str) -> CriterionResult:
    rows = []
    ok = True
    for n, k, want in ((6, 2, 25), (8, 3, 441)):
        res = max_product_cross_1(n, k)
        bound = binomial(n - 1, k - 1) ** 2
        row_ok = res.exhaustive and res.optimum == want == bound
        ok &= row_ok
        rows.append({"n": n, "k": k, "optimum": res.optimum, "bound": bound, "exhaustive": res.exhaustive})
    return CriterionResult(4, "cross-intersecting product optimum equals C(n-1,k-1)^2", ok, {"rows": rows})


def criterion_5(scale: str) -> CriterionResult:
    rows = []
    ok = True
    for n, k, t in ((6, 3, 2), (7, 3, 2)):
        A, H = build_A(n, k, t), build_H(n, k, t)
        feasible = all(is_cross_t_intersecting(X, X, t) and is_nontrivial(X, t) for X in (A, H))
        res = max_product_nontrivial_cross(n, k, t)
        lower_ok = feasible and res.exhaustive and res.optimum >= len(A) ** 2 and res.optimum >= len(H) ** 2
        ok &= lower_ok
        cmp = res.extra["comparison"]
        ok &= cmp["informative_only"] is True
        rows.append({"n": n, "k": k, "t": t, "optimum": res.optimum, "lower_bounds_hold": lower_ok,
                     "comparison": cmp, "witness": _fams(*res.witnesses)})
    return CriterionResult(5, "pair search feasibility bounds (comparison is informative only)", ok,
                           {"rows": rows})


# --- 6, 7 -----------------------------------------------------------------------

def saturated_corpus(seed: int, count: int) -> dict[tuple[int, int, int], list[SaturatedPair]]:
    out = {}
    for n, k, t in SATURATION_TRIPLES:
        rng = random.Random(f"{seed}:{n},{k},{t}")
        out[(n, k, t)] = [random_saturated_pair(n, k, t, rng) for _ in range(count)]
    return out


def pair_checks(P: SaturatedPair) -> dict[str, bool | None]:
    """Basis and saturation facts for one pair; None where a hypothesis does not trigger."""
    n, k, t = P.n, P.k, P.t
    bF, bG = P.basis_F, P.basis_G
    out: dict[str, bool | None] = {
        "fixpoint": P.is_fixpoint(),
        "antichain": bF.is_antichain() and bG.is_antichain(),
        "bases_cross": _cross_ok(bF.masks, bG.masks, t),
        "reconstruct": reconstruct_from_basis(bF, n, k) == P.F and reconstruct_from_basis(bG, n, k) == P.G,
        "tau_identity": tau_t(P.F, t) == bG.s and tau_t(P.G, t) == bF.s,
        "no_sunflower": None,
        "small_A2_when_A1_empty": None,
        "small_A2_when_disjoint": None,
    }
    if P.is_nontrivial():
        out["no_sunflower"] = all(find_sunflower(b.family, k - t + 2, t) is None for b in (bF, bG))
        for Q in (P, P.swapped()):
            A1, A2 = Q.A1, Q.A2
            if not len(A1):
                ok = len(A2) <= binomial(Q.basis_F.s, t) * (k - t + 1)
                out["small_A2_when_A1_empty"] = ok and out["small_A2_when_A1_empty"] is not False
            elif not set(A1.masks) & set(A2.masks):
                ok = len(A2) <= 2 * (k - t + 1)
                out["small_A2_when_disjoint"] = ok and out["small_A2_when_disjoint"] is not False
    return out


def criterion_6(scale: str, seed: int, corpus=None) -> CriterionResult:
    corpus = corpus or saturated_corpus(seed, _KNOBS[scale]["pairs"])
    rows = []
    ok = True
    for (n, k, t), pairs in corpus.items():
        tally: dict[str, list[int]] = {}
        failures = []
        for i, P in enumerate(pairs):
            for name, v in pair_checks(P).items():
                slot = tally.setdefault(name, [0, 0])
                if v is None:
                    continue
                slot[0] += 1
                if not v:
                    slot[1] += 1
                    failures.append({"index": i, "check": name, "pair": _fams(P.F, P.G)})
        ok &= not failures
        rows.append({
            "n": n, "k": k, "t": t, "pairs": len(pairs),
            "nontrivial": sum(P.is_nontrivial() for P in pairs),
            "checked_failed": tally, "failures": failures[:5],
            "corpus_digest": _digest(_fams(*(X for P in pairs for X in (P.F, P.G)))),
        })
    return CriterionResult(6, "basis and saturation facts on seeded saturated pairs", ok, {"rows": rows})


def toy_branching() -> dict:
    B = Family(4, kset_masks(4, 3))
    rep = run_branching(B, B, 3, 2, 3)
    return {"lhs14": rep.lhs14, "lhs15": rep.lhs15, "weight_conserved": rep.weight_conserved,
            "cover": rep.cover_holds}


def branching_checks(P: SaturatedPair) -> list[dict]:
    """Run both variants in both orientations wherever the hypotheses hold."""
    out = []
    t, k = P.t, P.k
    for B1, B2 in ((P.basis_F, P.basis_G), (P.basis_G, P.basis_F)):
        r1 = minimal_r(B1, t, k)
        for second in (True, False):
            if second and r1 is None:
                continue
            try:
                rep = run_branching(B1, B2, r1, t, k, second_stage=second)
            except BranchPreconditionError:
                continue
            lhs = rep.lhs14 if second else rep.lhs15
            out.append({
                "second_stage": second,
                "weights": rep.weight_conserved,
                "cover": rep.cover_holds,
                "floor": rep.weight_floor_holds,
                "lhs14_le_1": rep.lhs14 is None or rep.lhs14 <= 1,
                "lhs15_le_1": rep.lhs15 <= 1,
                "lhs": lhs,
            })
    return out


def criterion_7(scale: str, seed: int, corpus=None) -> CriterionResult:
    corpus = corpus or saturated_corpus(seed, _KNOBS[scale]["pairs"])
    toy = toy_branching()
    ok = toy["lhs14"] == Fraction(4, 9) == toy["lhs15"] and toy["weight_conserved"] and toy["cover"]
    rows = []
    for (n, k, t), pairs in corpus.items():
        runs = fails = 0
        worst = Fraction(0)
        for P in pairs:
            for r in branching_checks(P):
                runs += 1
                good = r["weights"] and r["cover"] and r["floor"] and r["lhs14_le_1"] and r["lhs15_le_1"]
                fails += not good
                worst = max(worst, r["lhs"])
        ok &= fails == 0
        rows.append({"n": n, "k": k, "t": t, "runs": runs, "failures": fails, "max_lhs": rational_json(worst)})
    details = {"toy": {"lhs14": rational_json(toy["lhs14"]), "lhs15": rational_json(toy["lhs15"])}, "rows": rows}
    return CriterionResult(7, "branching process invariants and basis-size inequalities", ok, details)


# --- 8 --------------------------------------------------------------------------

def least_classifying_k(A: Family, B: Family, t: int, k: int) -> int | None:
    for kk in range(k, len(A) + len(B) + 2):
        if classify_exact_pair(A, B, t, kk):
            return kk
    return None


def criterion_8(scale: str, k: int = CLASSIFY_K) -> CriterionResult:
    t = 2
    n = _KNOBS[scale]["scan_n"]
    pairs = facts_bad = 0
    unclassified = []
    for A, B in exact_pairs(n, t):
        pairs += 1
        if not check_exact_facts(A, B, t).ok:
            facts_bad += 1
        if not classify_exact_pair(A, B, t, k):
            unclassified.append((A, B))
    singleton = all(min(len(A), len(B)) == 1 for A, B in unclassified)
    needed = [least_classifying_k(A, B, t, k) for A, B in unclassified]
    clean_k = max((x for x in needed if x is not None), default=k)
    details = {
        "ground_size": n, "t": t, "k": k, "pairs": pairs, "facts_failures": facts_bad,
        "unclassified": len(unclassified),
        "first_unclassified": _fams(*unclassified[0]) if unclassified else None,
        "all_unclassified_have_a_singleton_side": singleton,
        "least_k_classifying_every_pair": clean_k if None not in needed else None,
    }
    return CriterionResult(8, "exact-pair trichotomy on every exact cross 2-intersecting 3-uniform pair",
                           facts_bad == 0 and not unclassified, details)


# --- 9, 10 ----------------------------------------------------------------------

def criterion_9(scale: str, seed: int) -> CriterionResult:
    knobs = _KNOBS[scale]
    rng = random.Random(f"{seed}:hilton")
    samples = [random_cross_intersecting_pair(9, 3, 3, rng) for _ in range(knobs["hilton_pairs"])]
    compress_fail = sum(not hilton_compress_check(A, B) for A, B in samples)
    anchors = {"(6,2,2)": int(verify_hilton_sum(6, 2, 2).lhs), "(8,2,2)": int(verify_hilton_sum(8, 2, 2).lhs)}
    grid_bad = []
    points = 0
    for t in (2, 3):
        for m in range((t + 1) * 2, knobs["m_max"] + 1):
            for fn in (verify_hilton_sum, verify_cor_sum):
                points += 1
                r = fn(m, 2, t)
                if not r.verdict or r.rhs != hilton_sum_rhs(m, 2, t):
                    grid_bad.append([r.name, m, t, str(r.lhs), str(r.rhs)])
    for m in range(4, knobs["m_max"] + 1):
        points += 1
        r = verify_f87(m, 2)
        if not r.verdict:
            grid_bad.append([r.name, m, str(r.lhs), str(r.rhs)])
    ok = compress_fail == 0 and anchors == {"(6,2,2)": 15, "(8,2,2)": 21} and not grid_bad
    details = {
        "compress_pairs": len(samples), "compress_failures": compress_fail,
        "compress_digest": _digest(_fams(*(X for p in samples for X in p))),
        "hilton_sum_anchors": anchors, "grid_points": points, "grid_failures": grid_bad,
    }
    return CriterionResult(9, "lex compression and cross-intersecting sum bounds", ok, details)


def criterion_10(scale: str) -> CriterionResult:
    rows = {}
    ok = True
    for check in CHECKS:
        if check in ("hilton-sum", "cor-sum", "f87"):
            continue
        reports = run_grid(check)
        bad = [dict(r.params, lhs=str(r.lhs), rhs=str(r.rhs)) for r in reports if not r.verdict]
        ok &= not bad
        rows[check] = {"points": len(reports), "failures": [{k: str(v) for k, v in b.items()} for b in bad]}
    return CriterionResult(10, "binomial inequalities and monotone auxiliaries on side-condition grids", ok, rows)


# --- driver ---------------------------------------------------------------------

def verify_all(seed: int, scale: str = "desk") -> dict:
    if scale not in SCALES:
        raise ValueError(f"scale must be one of {SCALES}")
    corpus = saturated_corpus(seed, _KNOBS[scale]["pairs"])
    results = [
        criterion_1(scale),
        criterion_2(scale),
        criterion_3(scale),
        criterion_4(scale),
        criterion_5(scale),
        criterion_6(scale, seed, corpus),
        criterion_7(scale, seed, corpus),
        criterion_8(scale),
        criterion_9(scale, seed),
        criterion_10(scale),
    ]
    # in-process replay of the seeded parts; the cross-process check is a second CLI run
    replay = [criterion_6(scale, seed).to_dict(), criterion_9(scale, seed).to_dict()]
    same = replay == [results[5].to_dict(), results[8].to_dict()]
    results.append(CriterionResult(11, "seeded corpora replay identically", same,
                                   {"replayed": [6, 9], "identical": same}))
    return {
        "tool": {"name": "crossfam", "version": __version__},
        "config": {"command": "verify-all", "scale": scale, "seed": seed},
        "criteria": [r.to_dict() for r in results],
        "passed": [r.number for r in results if r.passed],
        "failed": [r.number for r in results if not r.passed],
    }
