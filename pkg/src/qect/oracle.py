"""Brute-force validators that share no code path with the fast engines.

* ``dense_tensor`` evaluates circuit tensors from the Choi state of the map.
* ``poisson_rhs`` sums weight monomials over all pairs of Paulis whose
  product lands in the stabilizer group or normalizer.
* ``bounded_path_count`` lists every fault configuration with at most two
  non-identity events and classifies the accumulated Pauli by its syndrome
  and its commutation with the logical operators.

Every routine enforces a hard size cap instead of silently truncating.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from typing import Sequence, Union

import numpy as np

from .enumerator import NoiseModel, Side, WeightFunction, WFKind
from .pauli import PauliString, StabilizerCode, symplectic
from .poly import Polynomial, Ring, VarTable
from .tensor import CircuitTensor, Signature, _entries_from_numeric, basis_matrices, qubits

DENSE_CAP = 64  # d_in * d_out
POISSON_CAP = 1 << 22  # number of (E1, E2) pairs
BOUNDED_CAP = 10 ** 7  # number of fault configurations


class OracleError(ValueError):
    pass


# -- dense tensors -----------------------------------------------------------------


def _dim(sig: Signature) -> int:
    return int(np.prod([w.dim for w in sig])) if sig else 1


def choi_state(a: np.ndarray) -> np.ndarray:
    """``(I (x) A)|beta>`` with the unnormalised maximally entangled ``|beta>``."""
    d_out, d_in = a.shape
    t = np.zeros((d_in, d_out), dtype=complex)
    for i in range(d_in):
        t[i] = a[:, i]
    return t.reshape(-1)


def dense_tensor(
    a: np.ndarray | Sequence[np.ndarray],
    in_sig: Signature | None = None,
    out_sig: Signature | None = None,
) -> CircuitTensor:
    """Circuit tensor of an operator (or Kraus list) through its Choi matrix.

    Entry ``(E, E')`` is ``<T|(conj(E) (x) E')|T> / d_in`` summed over the Choi
    states ``|T>`` of the Kraus operators.  The result lives in the FLOAT ring.
    """
    kraus = [np.asarray(a, dtype=complex)] if np.ndim(a) == 2 else [np.asarray(k, dtype=complex) for k in a]
    d_out, d_in = kraus[0].shape
    if d_in * d_out > DENSE_CAP:
        raise OracleError(f"dense oracle limited to d_in * d_out <= {DENSE_CAP}")
    in_sig = tuple(in_sig) if in_sig is not None else qubits(d_in.bit_length() - 1)
    out_sig = tuple(out_sig) if out_sig is not None else qubits(d_out.bit_length() - 1)
    if _dim(in_sig) != d_in or _dim(out_sig) != d_out:
        raise OracleError("matrix shape does not match the signatures")
    choi = np.zeros((d_in * d_out, d_in * d_out), dtype=complex)
    for k in kraus:
        t = choi_state(k)
        choi += np.outer(t, t.conj())
    in_labels, e_in = basis_matrices(in_sig)
    out_labels, e_out = basis_matrices(out_sig)
    values = np.zeros((len(in_labels), len(out_labels)), dtype=complex)
    for i, ei in enumerate(e_in):
        for j, eo in enumerate(e_out):
            values[i, j] = np.trace(np.kron(ei.conj(), eo) @ choi) / d_in
    return _entries_from_numeric(in_sig, out_sig, values, in_labels, out_labels, Ring.FLOAT)


# -- Poisson right-hand side ---------------------------------------------------------

Position = Union[WeightFunction, Sequence[WeightFunction]]


def _as_list(p: Position) -> list[WeightFunction]:
    return [p] if isinstance(p, WeightFunction) else list(p)


def _membership(code: StabilizerCode, side: Side) -> np.ndarray:
    """Boolean table over packed indices ``x | z << n``."""
    n = code.n
    lx, lz = code.logicals
    logicals = lx + lz
    out = np.zeros(4 ** n, dtype=bool)
    for idx in range(4 ** n):
        e = PauliString(n, idx & ((1 << n) - 1), idx >> n)
        if any(code.syndrome(e)):
            continue
        if side is Side.STABILIZER and any(symplectic(e, l) for l in logicals):
            continue
        out[idx] = True
    return out


def poisson_rhs(code: StabilizerCode, positions: Sequence[Position], side: Side) -> Polynomial:
    """``sum_{E1 E2 in side} u_1^{wt_1(E1)} u_2^{wt_2(E2)}`` by direct double loop."""
    if len(positions) != 2:
        raise OracleError("poisson_rhs takes exactly two positions")
    n = code.n
    if 16 ** n > POISSON_CAP:
        raise OracleError(f"{16 ** n} pairs exceed the cap {POISSON_CAP}")
    groups = [_as_list(p) for p in positions]
    names: list[str] = []
    for g in groups:
        for wf in g:
            for nm in (wf.w_name, wf.var):
                if nm not in names:
                    names.append(nm)
    table = VarTable(tuple(names))
    paulis = [PauliString(n, idx & ((1 << n) - 1), idx >> n) for idx in range(4 ** n)]
    keys: list[np.ndarray] = []
    monos: list[list[tuple[int, ...]]] = []
    for g in groups:
        ids: dict[tuple[int, ...], int] = {}
        col = np.empty(4 ** n, dtype=np.int64)
        for idx, e in enumerate(paulis):
            exp = [0] * len(table)
            for wf in g:
                a, b = wf.weight(e)
                exp[table.index[wf.w_name]] += a
                exp[table.index[wf.var]] += b
            col[idx] = ids.setdefault(tuple(exp), len(ids))
        keys.append(col)
        monos.append(list(ids))
    member = _membership(code, side)
    all_idx = np.arange(4 ** n)
    counts = np.zeros((len(monos[0]), len(monos[1])), dtype=np.int64)
    for i1 in range(4 ** n):
        hit = member[all_idx ^ i1]
        counts[keys[0][i1]] += np.bincount(keys[1][hit], minlength=len(monos[1]))
    terms: dict[tuple[int, ...], int] = {}
    for a, b in zip(*np.nonzero(counts)):
        e = tuple(x + y for x, y in zip(monos[0][a], monos[1][b]))
        terms[e] = terms.get(e, 0) + int(counts[a, b])
    return Polynomial(table, terms)


# -- bounded path counting -----------------------------------------------------------


def _events(code: StabilizerCode, model: NoiseModel) -> list[tuple[int, str, PauliString]]:
    """All single non-identity fault events as ``(slot, variable, Pauli)``."""
    n = code.n
    out = []
    slot = 0
    for wf in model.positions:
        var = model.merge.get(wf.var, wf.var)
        if wf.kind is WFKind.SUPPORT_TRIGGER:
            qs = wf.qubits
            r = len(qs)
            for lx in range(1 << r):
                for lz in range(1 << r):
                    if lx == 0 and lz == 0:
                        continue
                    x = sum(1 << q for i, q in enumerate(qs) if lx >> i & 1)
                    z = sum(1 << q for i, q in enumerate(qs) if lz >> i & 1)
                    out.append((slot, var, PauliString(n, x, z)))
            slot += 1
        else:
            for q in wf.qubits:
                for x, z in ((1, 0), (0, 1), (1, 1)):
                    out.append((slot, var, PauliString(n, x << q, z << q)))
                slot += 1
    return out


def bounded_path_count(
    code: StabilizerCode,
    model: NoiseModel,
    max_total_errors: int = 2,
    target: str | PauliString = "stabilizer",
) -> Polynomial:
    """Count fault configurations with at most ``max_total_errors`` events.

    ``target`` is ``"stabilizer"``, ``"normalizer"``, a logical name
    (``"I"``, ``"X"``, ``"Y"``, ``"Z"``) or an explicit normalizer element; the
    count is of configurations whose accumulated Pauli lies in that set.
    Variables are merged through the model's merge map.
    """
    if max_total_errors > 2:
        raise OracleError("bounded oracle supports at most two events")
    events = _events(code, model)
    n_cfg = 1 + len(events) + len(events) * (len(events) - 1) // 2
    if n_cfg > BOUNDED_CAP:
        raise OracleError(f"{n_cfg} configurations exceed the cap {BOUNDED_CAP}")
    lx, lz = code.logicals
    logicals = lx + lz

    def signature(p: PauliString) -> tuple[int, int]:
        syn = 0
        for j, bit in enumerate(code.syndrome(p)):
            syn |= bit << j
        lg = 0
        for j, l in enumerate(logicals):
            lg |= symplectic(p, l) << j
        return syn, lg

    if isinstance(target, PauliString):
        want_syn, want_lg = signature(target)
        if want_syn:
            raise OracleError("target is not in the normalizer")
        accept = lambda s, l: s == 0 and l == want_lg  # noqa: E731
    elif target == "stabilizer":
        accept = lambda s, l: s == 0 and l == 0  # noqa: E731
    elif target == "normalizer":
        accept = lambda s, l: s == 0  # noqa: E731
    elif target in ("I", "X", "Y", "Z"):
        return bounded_path_count(code, model, max_total_errors, code.logical(target))
    else:
        raise OracleError(f"unknown target {target!r}")

    names: list[str] = []
    for _, v, _ in events:
        if v not in names:
            names.append(v)
    table = VarTable(tuple(names))
    sigs = [signature(p) for _, _, p in events]
    counts: Counter = Counter()
    zero = (0,) * len(table)
    if accept(0, 0):
        counts[zero] += 1
    if max_total_errors >= 1:
        for (slot, v, _), (s, l) in zip(events, sigs):
            if accept(s, l):
                e = list(zero)
                e[table.index[v]] += 1
                counts[tuple(e)] += 1
    if max_total_errors >= 2:
        for a, b in combinations(range(len(events)), 2):
            if events[a][0] == events[b][0]:
                continue  # one slot carries a single fault
            sa, la = sigs[a]
            sb, lb = sigs[b]
            if accept(sa ^ sb, la ^ lb):
                e = list(zero)
                e[table.index[events[a][1]]] += 1
                e[table.index[events[b][1]]] += 1
                counts[tuple(e)] += 1
    return Polynomial(table, dict(counts))
