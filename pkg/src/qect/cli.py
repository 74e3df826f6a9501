"""Command-line front end.

Subcommands::

    qect tensor <circuit>            tensor of a circuit file
    qect trace <circuit> [--probs]   weighted trace (all noise wires contracted)
    qect paths <code> [--idle] [--degree N] [--merge] [--cosets]
    qect coset <code> --logical X|Y|Z|I
    qect sl <code>                   Shor-Laflamme weight distributions
    qect check [quick|oracle|all]    internal self-checks

``<code>`` is a code file or one of the built-in names ``perfect``,
``surface3``, ``surface5``.  The exit status is non-zero when a self-check
fails or the input is invalid.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Callable

from .codes import load_code
from .dsl import DSLError, elaborate, parse_circuit
from .enumerator import (
    DEFAULT_MAX_DEGREE,
    EnumeratorError,
    NoiseModel,
    PathEngine,
    PathEnumerators,
    macwilliams_for,
    shor_laflamme,
)
from .pauli import CodeError, PauliError
from .poly import PolyError, Polynomial
from .tensor import TensorError, diagonal_to_pauli_probs


def _emit(args, payload: dict, text: str) -> None:
    if args.out == "json":
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _threads(args) -> int | None:
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("QECT_THREADS")
    return int(env) if env else None


# -- circuit commands ---------------------------------------------------------------


def cmd_tensor(args) -> int:
    t = elaborate(parse_circuit(_read(args.circuit)), trace=False)
    _emit(args, t.to_json(), str(t))
    return 0


def cmd_trace(args) -> int:
    t = elaborate(parse_circuit(_read(args.circuit)), trace=True)
    payload = {"tensor": t.to_json()}
    lines = [str(t)]
    if args.probs:
        probs = diagonal_to_pauli_probs(t)
        payload["probabilities"] = {k: p.to_json() for k, p in probs.items()}
        lines += [f"p_{k} = {p}" for k, p in probs.items()]
    _emit(args, payload, "\n".join(lines))
    return 0


# -- enumeration commands -----------------------------------------------------------


def _engine(args):
    code = load_code(args.code)
    model = NoiseModel.syndrome_extraction(code, include_idle=args.idle)
    for wf in model.positions:
        if wf.local_qubits <= 4:
            macwilliams_for(wf)  # raises if the closed form fails its brute-force check
    return code, PathEngine(code, model, threads=_threads(args))


def path_invariants(p: PathEnumerators) -> list[str]:
    """Violated structural invariants of a path-enumerator pair (empty when fine)."""
    bad = []
    for name, poly in (("A_path", p.A_path), ("B_path", p.B_path)):
        if poly.constant() != 1:
            bad.append(f"{name} constant term is {poly.constant()}, expected 1")
        if any(c < 0 for c in poly.terms.values()):
            bad.append(f"{name} has a negative coefficient")
    if any(c < 0 for c in p.difference.terms.values()):
        bad.append("B_path - A_path has a negative coefficient")
    return bad


def cmd_paths(args) -> int:
    code, eng = _engine(args)
    t0 = time.perf_counter()
    p = eng.paths(args.degree, merge=args.merge)
    payload = {"A_path": p.A_path.to_json(), "B_path": p.B_path.to_json(), "meta": dict(p.meta)}
    lines = [f"A_path = {p.A_path}", f"B_path = {p.B_path}", f"B_path - A_path = {p.difference}"]
    problems = path_invariants(p)
    if args.cosets:
        cos = eng.cosets(args.degree, merge=args.merge)
        payload["cosets"] = {k: v.to_json() for k, v in cos.items()}
        lines += [f"coset {k} = {v}" for k, v in cos.items()]
        total = cos["I"] + cos["X"] + cos["Y"] + cos["Z"]
        if not _same(total, p.B_path):
            problems.append("coset enumerators do not add up to B_path")
    payload["meta"]["seconds"] = round(time.perf_counter() - t0, 3)
    payload["meta"]["include_idle"] = args.idle
    _emit(args, payload, "\n".join(lines))
    for msg in problems:
        print(f"self-check failed: {msg}", file=sys.stderr)
    return 1 if problems else 0


def _same(a: Polynomial, b: Polynomial) -> bool:
    t = a.table.union(b.table)
    return a.extend(t) == b.extend(t)


def cmd_coset(args) -> int:
    code, eng = _engine(args)
    poly = eng.coset(args.logical, args.degree, merge=args.merge)
    rep = eng._resolve(args.logical)
    _emit(args, {"logical": args.logical, "representative": str(rep), "coset": poly.to_json()}, f"coset {args.logical} ({rep}) = {poly}")
    return 0


def cmd_sl(args) -> int:
    code = load_code(args.code)
    a, b = shor_laflamme(code)
    diff = b - a
    dist = min((sum(e) for e in diff.terms), default=None)
    _emit(
        args,
        {"A": a.to_json(), "B": b.to_json(), "n": code.n, "k": code.k, "distance": dist},
        f"A(z) = {a}\nB(z) = {b}\ndistance = {dist}",
    )
    return 0


# -- self-checks --------------------------------------------------------------------


def _checks(suite: str) -> list[tuple[str, Callable[[], bool]]]:
    from . import checks

    quick = checks.QUICK
    if suite == "quick":
        return quick
    if suite == "oracle":
        return checks.ORACLE
    return quick + checks.ORACLE


def cmd_check(args) -> int:
    failed = 0
    results = {}
    for name, fn in _checks(args.suite):
        t0 = time.perf_counter()
        try:
            ok = bool(fn())
            err = ""
        except Exception as exc:  # a crashing check counts as a failure
            ok, err = False, f" ({type(exc).__name__}: {exc})"
        dt = time.perf_counter() - t0
        results[name] = ok
        failed += not ok
        if args.out == "text":
            print(f"{'PASS' if ok else 'FAIL'}  {name}  [{dt:.2f}s]{err}")
    if args.out == "json":
        json.dump({"results": results, "failed": failed}, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return 1 if failed else 0


# -- entry point --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qect", description="Circuit tensors and error-path enumerators.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("tensor", parents=[common], help="print the tensor of a circuit file")
    s.add_argument("circuit")
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("trace", parents=[common], help="weighted trace of a circuit file")
    s.add_argument("circuit")
    s.add_argument("--probs", action="store_true", help="also print Pauli probabilities of a diagonal one-qubit result")
    s.set_defaults(func=cmd_trace)

    def code_opts(s):
        s.add_argument("code")
        s.add_argument("--idle", action="store_true", help="include idle noise on unmeasured qubits")
        s.add_argument("--degree", type=int, default=DEFAULT_MAX_DEGREE)
        s.add_argument("--merge", action="store_true", help="merge per-size measurement variables into m")
        s.add_argument("--threads", type=int, default=None)

    s = sub.add_parser("paths", parents=[common], help="A_path and B_path of a code's syndrome-extraction circuit")
    code_opts(s)
    s.add_argument("--cosets", action="store_true", help="also print the four logical coset enumerators (k = 1)")
    s.set_defaults(func=cmd_paths)

    s = sub.add_parser("coset", parents=[common], help="path enumerator of one logical coset")
    code_opts(s)
    s.add_argument("--logical", required=True, help="I, X, Y, Z or an explicit Pauli string")
    s.set_defaults(func=cmd_coset)

    s = sub.add_parser("sl", parents=[common], help="Shor-Laflamme weight distributions")
    s.add_argument("code")
    s.set_defaults(func=cmd_sl)

    s = sub.add_parser("check", parents=[common], help="run internal self-checks")
    s.add_argument("suite", nargs="?", default="quick", choices=("quick", "oracle", "all"))
    s.set_defaults(func=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DSLError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CodeError, PauliError, PolyError, TensorError, EnumeratorError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
