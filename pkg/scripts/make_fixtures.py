"""Regenerate the golden problem files in fixtures/.

Three bundled inputs: the three-qubit bit-flip code under uniform
single-qubit X noise, a single random (seeded) unitary error on the whole
space, and a two-sector decomposition whose protected factor is noiseless
by construction (A-factor noise plus independent remainder noise).

Usage: python scripts/make_fixtures.py [--outdir fixtures]
"""

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from oqec import QuantumChannel, SubsystemDecomposition, haar_unitary, random_channel, tensor
from oqec.cli import problem_to_dict, save_problem
from oqec.ensembles import ns_channel


def bitflip3() -> dict:
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    eye = np.eye(2, dtype=complex)
    errors = [
        tensor(x, tensor(eye, eye)),
        tensor(eye, tensor(x, eye)),
        tensor(eye, tensor(eye, x)),
    ]
    basis = np.zeros((8, 2), dtype=complex)
    basis[0, 0] = 1.0  # |000>
    basis[7, 1] = 1.0  # |111>
    dec = SubsystemDecomposition.subspace(basis)
    kraus = [op / np.sqrt(3) for op in errors]
    return problem_to_dict(8, kraus, dec)


def unitary4() -> dict:
    u = haar_unitary(4, np.random.default_rng(7))
    dec = SubsystemDecomposition.trivial(1, 4)  # code = whole space
    return problem_to_dict(4, [u], dec)


def ns_product6() -> dict:
    # 2 x 2 sector occupying the first four coordinates, remainder dim 2.
    v = np.eye(6, dtype=complex)[:, :4]
    dec = SubsystemDecomposition.from_embedding(v, 2, 2)
    ch = ns_channel(dec, 2, seed=11)
    return problem_to_dict(6, ch.kraus, dec)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--outdir",
        type=Path,
        default=Path(__file__).resolve().parent.parent / "fixtures",
    )
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, build in [
        ("bitflip3.json", bitflip3),
        ("unitary4.json", unitary4),
        ("ns_product6.json", ns_product6),
    ]:
        path = args.outdir / name
        save_problem(path, build())
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
