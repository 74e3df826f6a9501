"""Evaluate the noisy-teleportation Pauli probabilities on a grid of rates.

Every noise location gets the same rate p; the output is a CSV table with
one row per p.  The symbolic enumerator is built once and only evaluated
in the loop.
"""

import argparse
import csv
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from qect.circuits import noisy_teleportation
from qect.poly import evaluate
from qect.tensor import diagonal_to_pauli_probs


@dataclass
class Sweep:
    p_min: float = 0.0
    p_max: float = 0.1
    points: int = 11


def main() -> None:
    ap = argparse.ArgumentParser(description="noisy teleportation error rates")
    ap.add_argument("--p-min", type=float, default=Sweep.p_min)
    ap.add_argument("--p-max", type=float, default=Sweep.p_max)
    ap.add_argument("--points", type=int, default=Sweep.points)
    a = ap.parse_args()
    cfg = Sweep(a.p_min, a.p_max, a.points)

    probs = diagonal_to_pauli_probs(noisy_teleportation())
    names = sorted({v for p in probs.values() for v in p.table.names})
    out = csv.writer(sys.stdout)
    out.writerow(["p"] + [f"p_{k}" for k in "IXYZ"])
    for p in np.linspace(cfg.p_min, cfg.p_max, cfg.points):
        # the enumerator has exact coefficients, so evaluate at an exact rate
        point = {v: Fraction(f"{p:.6f}") for v in names}
        out.writerow([f"{p:.4f}"] + [f"{float(evaluate(probs[k], point)):.6g}" for k in "IXYZ"])


if __name__ == "__main__":
    main()
