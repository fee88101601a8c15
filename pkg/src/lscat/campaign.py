"""Seeded randomized campaigns over generated gradient-like systems."""

from __future__ import annotations

import hashlib
import json
import random

from .category import cat_space
from .cohomology import cup_length, order_complex
from .dynamics import verify_theorem
from .errors import BudgetExceeded
from .generators import generate_system, random_warted_space

CHECKS = ("theorem_holds", "criticality_holds", "blocks_hold",
          "normalization_count_holds", "cup_bound_holds")


def run_trial(seed: int, size: int = 10) -> dict:
    """One trial, fully determined by ``seed``."""
    rng = random.Random(seed)
    X = random_warted_space(rng.randrange(1 << 30), max_points=size)
    sys = generate_system(X, rng.randrange(1 << 30), level_spread=rng.randint(1, 3))
    report = verify_theorem(sys)
    record = {
        "seed": seed,
        "points": len(X),
        "rest_points": report.rest_point_count,
        "nu_X": report.nu_X,
        "m": report.m,
        "sum": report.sum,
        "theorem_holds": report.theorem_holds,
        "criticality_holds": report.criticality_holds,
        "blocks_hold": report.blocks_hold,
        "normalization_count_holds": report.normalization_count_holds,
        "moreover_holds": report.moreover_probe["holds"],
    }
    try:
        cl = cup_length(order_complex(X))
        record["cup_length"] = cl
        record["cup_bound_holds"] = cl + 1 <= cat_space(X)
    except BudgetExceeded:
        record["cup_length"] = None
        record["cup_bound_holds"] = None
    return record


def campaign(trials: int, size: int = 10, seed: int = 0, probe_moreover: bool = False) -> dict:
    """Aggregate ``trials`` runs with per-trial seeds ``seed + i``."""
    counts = {k: 0 for k in CHECKS}
    gave_up = []
    violations = []
    moreover_seeds = []
    digest = hashlib.sha256()
    for i in range(trials):
        s = seed + i
        try:
            rec = run_trial(s, size)
        except BudgetExceeded as exc:
            gave_up.append({"seed": s, "error": str(exc)})
            continue
        digest.update(json.dumps(rec, sort_keys=True).encode())
        for k in CHECKS:
            if rec[k] is True:
                counts[k] += 1
            elif rec[k] is False:
                violations.append({"seed": s, "check": k, "record": rec})
        if not rec["moreover_holds"]:
            moreover_seeds.append(s)
    out = {
        "trials": trials,
        "size": size,
        "seed": seed,
        "counts": counts,
        "violations": violations,
        "budget_exceeded": gave_up,
        "trial_digest": digest.hexdigest(),
    }
    if probe_moreover:
        out["moreover_probe"] = {
            "holds": trials - len(gave_up) - len(moreover_seeds),
            "fails": len(moreover_seeds),
            "frequency": len(moreover_seeds) / max(1, trials - len(gave_up)),
            "failing_seeds": moreover_seeds,
        }
    return out


def revalidate(seed: int, size: int = 10) -> dict:
    """Re-run a single trial from its seed (for reproducing reported violations)."""
    return run_trial(seed, size)
