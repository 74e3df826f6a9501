"""Self-checks run by ``qect check``; each returns True on success."""

from __future__ import annotations

from .circuits import teleportation
from .codes import perfect_code, rotated_surface_code
from .enumerator import (
    NoiseModel,
    PathEngine,
    Side,
    macwilliams_for,
    per_qubit,
    support_trigger,
    trace_syndrome_circuit,
)
from .poly import Polynomial
from .tensor import QUBIT, identity_tensor


def _same(a: Polynomial, b: Polynomial) -> bool:
    t = a.table.union(b.table)
    return a.extend(t) == b.extend(t)


def macwilliams_forms() -> bool:
    wfs = [per_qubit([0], "z"), support_trigger([0, 1], "m"), support_trigger([0, 1, 2, 3], "m")]
    return all(macwilliams_for(wf, check=False).verify() for wf in wfs)


def teleportation_identity() -> bool:
    return teleportation().equals(identity_tensor((QUBIT,)))


def backends_agree() -> bool:
    code = perfect_code()
    model = NoiseModel.syndrome_extraction(code)
    fast = PathEngine(code, model, backend="numpy")
    slow = PathEngine(code, model, backend="python")
    return all(fast.histogram(s).counts == slow.histogram(s).counts for s in Side)


def trace_matches_transform() -> bool:
    code = perfect_code()
    model = NoiseModel((per_qubit(range(code.n), "z"),))
    lhs = PathEngine(code, model).transform_lhs(Side.NORMALIZER, homogeneous=True)
    return _same(trace_syndrome_circuit(code, model), lhs)


def cosets_add_up() -> bool:
    code = rotated_surface_code(3)
    eng = PathEngine(code, NoiseModel.syndrome_extraction(code))
    cos = eng.cosets(3)
    return _same(cos["I"] + cos["X"] + cos["Y"] + cos["Z"], eng.paths(3).B_path)


def poisson_oracle() -> bool:
    from .oracle import poisson_rhs

    code = perfect_code()
    n, k = code.n, code.k
    positions = [per_qubit(range(n), "z"), (support_trigger([0, 1, 2, 3], "m"), per_qubit([4], "c"))]
    model = NoiseModel((positions[0],) + tuple(positions[1]))
    eng = PathEngine(code, model)
    ok = _same(poisson_rhs(code, positions, Side.STABILIZER), eng.transform_lhs(Side.NORMALIZER, homogeneous=True) * 2 ** (n - k))
    return ok and _same(poisson_rhs(code, positions, Side.NORMALIZER), eng.transform_lhs(Side.STABILIZER, homogeneous=True) * 2 ** (n + k))


def bounded_oracle() -> bool:
    from .oracle import bounded_path_count

    code = rotated_surface_code(3)
    model = NoiseModel.syndrome_extraction(code)
    paths = PathEngine(code, model).paths(2, merge=True)
    merged = NoiseModel(model.positions, model.merge, model.include_idle)
    return _same(bounded_path_count(code, merged, 2, "stabilizer"), paths.A_path) and _same(
        bounded_path_count(code, merged, 2, "normalizer"), paths.B_path
    )


QUICK = [
    ("macwilliams closed forms", macwilliams_forms),
    ("teleportation is the identity", teleportation_identity),
    ("numpy and python histograms agree", backends_agree),
    ("tensor trace equals transform sum", trace_matches_transform),
    ("coset enumerators add up to B_path", cosets_add_up),
]

ORACLE = [
    ("poisson summation against brute force", poisson_oracle),
    ("bounded path count against engine", bounded_oracle),
]
