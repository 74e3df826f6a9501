"""Time the stabilizer and normalizer histogram passes for each backend."""

import argparse
import time

from qect.codes import load_code
from qect.enumerator import NoiseModel, Side, build_histogram


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("codes", nargs="*", default=["perfect", "surface3", "surface5"])
    ap.add_argument("--backends", nargs="+", default=["numpy", "python"])
    ap.add_argument("--threads", type=int)
    a = ap.parse_args()
    for name in a.codes:
        code = load_code(name)
        model = NoiseModel.syndrome_extraction(code)
        for backend in a.backends:
            # pure Python on d = 5 walks 2^25 elements; skip it by default
            if backend == "python" and code.n - code.k > 16:
                print(f"{name:10s} {backend:7s} skipped")
                continue
            for side in Side:
                t0 = time.perf_counter()
                h = build_histogram(code, side, model, threads=a.threads, backend=backend)
                dt = time.perf_counter() - t0
                print(f"{name:10s} {backend:7s} {side.name.lower():10s} {len(h.counts):6d} bins  {dt:8.3f} s")


if __name__ == "__main__":
    main()
