"""Compute path enumerators for a code and save them as JSON.

    python scripts/run_paths.py surface3 --degree 3 --out results/d3.json
    python scripts/run_paths.py surface5 --degree 5 --no-idle
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from qect.codes import load_code
from qect.enumerator import NoiseModel, PathEngine


@dataclass
class PathRun:
    code: str = "surface3"
    degree: int = 3
    include_idle: bool = True
    merge: bool = True
    cosets: bool = False
    threads: int | None = None
    out: str | None = None


def run(cfg: PathRun) -> dict:
    code = load_code(cfg.code)
    model = NoiseModel.syndrome_extraction(code, include_idle=cfg.include_idle)
    engine = PathEngine(code, model, threads=cfg.threads)
    t0 = time.perf_counter()
    paths = engine.paths(cfg.degree, merge=cfg.merge)
    record = {
        "config": asdict(cfg),
        "A_path": paths.A_path.to_json(),
        "B_path": paths.B_path.to_json(),
        "seconds": round(time.perf_counter() - t0, 3),
    }
    print(f"A_path = {paths.A_path}")
    print(f"B_path = {paths.B_path}")
    if cfg.cosets and code.k == 1:
        cos = engine.cosets(cfg.degree, merge=cfg.merge)
        record["cosets"] = {k: v.to_json() for k, v in cos.items()}
        for k, v in cos.items():
            print(f"coset {k} = {v}")
    print(f"[{record['seconds']} s]")
    return record


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("code")
    ap.add_argument("--degree", type=int, default=PathRun.degree)
    ap.add_argument("--no-idle", action="store_true")
    ap.add_argument("--no-merge", action="store_true")
    ap.add_argument("--cosets", action="store_true")
    ap.add_argument("--threads", type=int)
    ap.add_argument("--out")
    a = ap.parse_args()
    cfg = PathRun(a.code, a.degree, not a.no_idle, not a.no_merge, a.cosets, a.threads, a.out)
    record = run(cfg)
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(json.dumps(record, indent=2))


if __name__ == "__main__":
    main()
