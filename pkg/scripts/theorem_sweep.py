"""Seeded sweeps over random instance families.

Three experiments, each printing a one-line summary:

  equivalence   the algebraic and operational noiseless-subsystem checkers
                must agree on every instance, satisfying and violating alike
  sufficiency   every channel passing the unified correctability check gets
                a constructed recovery that corrects the protected algebra
  necessity     independently constructed correctable triples must pass the
                unified check; perturbed triples must fail both the triple
                check and the unified check

Exit status is nonzero if any instance misbehaves.

Usage: python scripts/theorem_sweep.py [--instances N] [--seed S] [--tol T]
"""

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from oqec import (
    check_correctable_triple,
    check_ns_algebraic,
    check_ns_operational,
    check_opalg_correct,
    check_oqec,
    build_oqec_recovery,
    identity_channel,
)
from oqec.ensembles import (
    b_noise_channel,
    isometry_error_channel,
    ns_channel,
    perturbed,
    random_decomposition,
    reversal_pair,
    rotated_ns_channel,
)

SHAPES = [(1, 2, 2), (1, 3, 1), (2, 2, 0), (2, 2, 2), (2, 3, 3), (3, 2, 4), (1, 4, 8), (2, 2, 8)]


def instance_dec(i: int, seed: int):
    m, n, extra = SHAPES[i % len(SHAPES)]
    return random_decomposition(m * n + extra, m, n, seed=seed + i)


def sweep_equivalence(instances: int, seed: int, tol: float) -> int:
    disagreements = 0
    for i in range(instances):
        dec = instance_dec(i, seed)
        if i % 2 == 0:
            ch = ns_channel(dec, 2 + i % 2, seed=seed + 1000 + i)
        elif i % 4 == 1:
            ch = b_noise_channel(dec, 2, seed=seed + 2000 + i)
        else:
            ch = perturbed(ns_channel(dec, 2, seed=seed + 3000 + i), 1e-2, seed=seed + 4000 + i)
        alg = check_ns_algebraic(ch, dec, tol)
        op = check_ns_operational(ch, dec, tol)
        if alg.verdict != op.verdict:
            disagreements += 1
            print(f"  disagreement at instance {i}: alg={alg.residual:.3e} op={op.residual:.3e}")
    print(f"equivalence: {instances} instances, {disagreements} disagreements")
    return disagreements


def sweep_sufficiency(instances: int, seed: int, tol: float) -> int:
    failures = 0
    worst = 0.0
    for i in range(instances):
        dec = instance_dec(i, seed + 50_000)
        kind = i % 3
        if kind == 0:
            ch = rotated_ns_channel(dec, 2, seed=seed + 5000 + i)
        elif kind == 1 and 2 * dec.sector_dim <= dec.dim_h:
            ch = isometry_error_channel(dec, 2, seed=seed + 6000 + i)
        else:
            ch = ns_channel(dec, 3, seed=seed + 7000 + i)
        rep = check_oqec(ch, dec, tol)
        if not rep.verdict:
            failures += 1
            print(f"  instance {i} unexpectedly fails the unified check: {rep.residual:.3e}")
            continue
        rec = build_oqec_recovery(ch, dec, tol)
        ver = check_opalg_correct(rec, ch, dec, tol)
        worst = max(worst, ver.residual)
        if not ver.verdict:
            failures += 1
            print(f"  instance {i}: constructed recovery fails, residual {ver.residual:.3e}")
    print(f"sufficiency: {instances} instances, {failures} failures, worst residual {worst:.3e}")
    return failures


def sweep_necessity(instances: int, seed: int, tol: float) -> int:
    failures = 0
    for i in range(instances):
        dec = instance_dec(i, seed + 90_000)
        if i % 2 == 0:
            r, ch = reversal_pair(dec.dim_h, seed=seed + 8000 + i)
        else:
            ch = ns_channel(dec, 2, seed=seed + 8500 + i)
            r = identity_channel(dec.dim_h)
        if not (
            check_correctable_triple(r, ch, dec, tol).verdict
            and check_oqec(ch, dec, tol).verdict
        ):
            failures += 1
            print(f"  correctable triple {i} not confirmed")
        bad = perturbed(ns_channel(dec, 2, seed=seed + 9000 + i), 1e-2, seed=seed + 9500 + i)
        r_id = identity_channel(dec.dim_h)
        if check_correctable_triple(r_id, bad, dec, tol).verdict or check_oqec(bad, dec, tol).verdict:
            failures += 1
            print(f"  perturbed triple {i} not rejected")
    print(f"necessity: {instances} triples + {instances} perturbations, {failures} failures")
    return failures


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=200)
    parser.add_argument("--seed", type=int, default=20260810)
    parser.add_argument("--tol", type=float, default=1e-9)
    args = parser.parse_args()
    bad = 0
    bad += sweep_equivalence(args.instances, args.seed, args.tol)
    bad += sweep_sufficiency(max(100, args.instances // 2), args.seed, args.tol)
    bad += sweep_necessity(max(100, args.instances // 2), args.seed, args.tol)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
