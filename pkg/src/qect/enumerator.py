"""Weight functions, MacWilliams transforms and the path-counting engine.

The engine evaluates sums of the form ``sum_{D in G} prod_j Phi_j^{wt_j(D)}``
over a stabilizer group or normalizer ``G`` by first building a histogram of
``G`` keyed by the per-class weight counts of each element, then expanding
each distinct key once.  Through the Poisson summation identity these sums
turn into exact counts of error tuples whose product lands in the stabilizer
(``A_path``) or the normalizer (``B_path``).

Working with unnormalised local factors keeps all arithmetic in the
integers: a support trigger on ``r`` qubits contributes ``1 + (4^r - 1) v``
when ``D`` is the identity on its support and ``1 - v`` otherwise (that is
``2^r`` times its transform), and a per-qubit counter contributes ``1 + 3v``
or ``1 - v`` per qubit.  With ``R`` the total number of covered qubit slots,

* ``A_path = 2^-(n+k) * sum_{D in N} prod F(D)``
* ``B_path = 2^-(n-k) * sum_{D in S} prod F(D)``
* coset ``L``: ``2^-(n+k) * sum_{D in N} omega(D, L) prod F(D)``.
"""

from __future__ import annotations

import enum
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .pauli import PauliError, PauliString, SignedPauli, StabilizerCode, iter_group, mul, symplectic
from .poly import Polynomial, Ring, VarTable, specialize, substitute_linear

DEFAULT_MAX_DEGREE = 5
GROUP_CAP = 30
LOW_BITS = 18  # elements expanded as one numpy block
BINCOUNT_LIMIT = 1 << 22


class EnumeratorError(ValueError):
    pass


class Side(enum.Enum):
    STABILIZER = "stabilizer"
    NORMALIZER = "normalizer"


class WFKind(enum.Enum):
    SUPPORT_TRIGGER = "support_trigger"
    PER_QUBIT_COUNT = "per_qubit_count"
    GLOBAL_PAULI = "global_pauli"


def _mask(qubits: Iterable[int]) -> int:
    m = 0
    for q in qubits:
        m |= 1 << q
    return m


@dataclass(frozen=True)
class WeightFunction:
    kind: WFKind
    qubits: tuple[int, ...]
    var: str
    w_name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(sorted(set(self.qubits))))
        if not self.w_name:
            object.__setattr__(self, "w_name", "w_" + self.var)
        if self.kind is WFKind.GLOBAL_PAULI and len(self.qubits) != 1:
            raise EnumeratorError("GLOBAL_PAULI acts on exactly one qubit")

    @property
    def mask(self) -> int:
        return _mask(self.qubits)

    @property
    def r(self) -> int:
        return len(self.qubits)

    @property
    def slots(self) -> int:
        """Total weight (w-exponent plus active exponent) the function assigns."""
        return 1 if self.kind is WFKind.SUPPORT_TRIGGER else self.r

    @property
    def lam(self) -> int:
        """Number of non-identity local errors per slot."""
        return 4 ** self.r - 1 if self.kind is WFKind.SUPPORT_TRIGGER else 3

    @property
    def local_qubits(self) -> int:
        """Qubits per slot (the MacWilliams normalisation is ``2^local_qubits``)."""
        return self.r if self.kind is WFKind.SUPPORT_TRIGGER else 1

    def weight(self, e: PauliString) -> tuple[int, int]:
        """``(identity exponent, active exponent)`` of ``e``."""
        s = e.support & self.mask
        if self.kind is WFKind.SUPPORT_TRIGGER:
            return (0, 1) if s else (1, 0)
        k = bin(s).count("1")
        return (self.r - k, k)


def support_trigger(qubits: Iterable[int], var: str, w_name: str = "") -> WeightFunction:
    return WeightFunction(WFKind.SUPPORT_TRIGGER, tuple(qubits), var, w_name)


def per_qubit(qubits: Iterable[int], var: str, w_name: str = "") -> WeightFunction:
    return WeightFunction(WFKind.PER_QUBIT_COUNT, tuple(qubits), var, w_name)


def global_pauli(qubit: int, var: str, w_name: str = "") -> WeightFunction:
    return WeightFunction(WFKind.GLOBAL_PAULI, (qubit,), var, w_name)


@dataclass(frozen=True)
class MacWilliamsTransform:
    wf: WeightFunction
    phi0: Polynomial
    phi1: Polynomial

    def verify(self) -> bool:
        """Brute-force check of the transform over the local error set of one slot."""
        return _brute_force_ok(self.wf.kind, self.wf.local_qubits, self.phi0, self.phi1)


@lru_cache(maxsize=None)
def _brute_force_ok(kind: WFKind, r: int, phi0: Polynomial, phi1: Polynomial) -> bool:
    # signed counts of identity and non-identity errors, per d, before the 1/2^r factor
    table = phi0.table
    for dx in range(1 << r):
        for dz in range(1 << r):
            d = PauliString(r, dx, dz)
            cw = cv = 0
            for ex in range(1 << r):
                for ez in range(1 << r):
                    e = PauliString(r, ex, ez)
                    sign = -1 if symplectic(d, e) else 1
                    if e.weight:
                        cv += sign
                    else:
                        cw += sign
            got = Polynomial(table, {(1, 0): Fraction(cw, 2 ** r), (0, 1): Fraction(cv, 2 ** r)})
            if got != (phi1 if d.weight else phi0):
                return False
    return True


def macwilliams_for(wf: WeightFunction, check: bool = True) -> MacWilliamsTransform:
    table = VarTable((wf.w_name, wf.var))
    scale = Fraction(1, 2 ** wf.local_qubits)
    phi0 = Polynomial(table, {(1, 0): scale, (0, 1): wf.lam * scale})
    phi1 = Polynomial(table, {(1, 0): scale, (0, 1): -scale})
    t = MacWilliamsTransform(wf, phi0, phi1)
    if check and wf.local_qubits <= 4 and not t.verify():
        raise EnumeratorError(f"MacWilliams transform check failed for {wf}")
    return t


@dataclass(frozen=True)
class NoiseModel:
    """Ordered weight-function positions plus an optional variable merge map."""

    positions: tuple[WeightFunction, ...]
    merge: Mapping[str, str] = field(default_factory=dict)
    include_idle: bool = True

    @classmethod
    def syndrome_extraction(
        cls,
        code: StabilizerCode,
        include_idle: bool = True,
        initial: str = "z",
        meas: str = "m",
        idle: str = "c",
    ) -> "NoiseModel":
        """Initial per-qubit noise, one support trigger per generator, optional idle counters.

        Measurement variables are named ``meas`` when every generator has the
        same support size and ``meas + str(r)`` otherwise; the merge map sends
        all of them to ``meas``.
        """
        n = code.n
        full = (1 << n) - 1
        positions = [per_qubit(range(n), initial)]
        sizes = {g.pauli.weight for g in code.generators}
        merge = {}
        for g in code.generators:
            r = g.pauli.weight
            var = meas if len(sizes) == 1 else f"{meas}{r}"
            merge[var] = meas
            positions.append(support_trigger(_bits(g.pauli.support), var))
        if include_idle:
            for g in code.generators:
                positions.append(per_qubit(_bits(full & ~g.pauli.support), idle))
        return cls(tuple(positions), merge, include_idle)

    @property
    def variables(self) -> list[str]:
        out: list[str] = []
        for wf in self.positions:
            if wf.var not in out:
                out.append(wf.var)
        return out

    @property
    def covered(self) -> int:
        return sum(wf.r for wf in self.positions)


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


# -- histogram engine ---------------------------------------------------------------


@dataclass(frozen=True)
class _Class:
    var: str
    w_name: str
    kind: WFKind
    lam: int
    masks: tuple[int, ...]
    slots: int

    @property
    def radix(self) -> int:
        return self.slots + 1


def _classes(model: NoiseModel) -> list[_Class]:
    groups: dict[tuple, list[WeightFunction]] = {}
    for wf in model.positions:
        kind = WFKind.SUPPORT_TRIGGER if wf.kind is WFKind.SUPPORT_TRIGGER else WFKind.PER_QUBIT_COUNT
        key = (wf.var, wf.w_name, kind, wf.lam)
        groups.setdefault(key, []).append(wf)
    out = []
    for (var, w_name, kind, lam), wfs in groups.items():
        out.append(_Class(var, w_name, kind, lam, tuple(wf.mask for wf in wfs), sum(wf.slots for wf in wfs)))
    return out


def _group_generators(code: StabilizerCode, side: Side) -> list[PauliString]:
    if side is Side.STABILIZER:
        return code.stabilizer_paulis
    return code.normalizer_basis


def default_threads() -> int:
    env = os.environ.get("QECT_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass
class Histogram:
    """Counts of group elements per key ``(class counts..., sign bits...)``."""

    classes: list[_Class]
    n_signs: int
    counts: dict[tuple[int, ...], int]
    group_size: int


def build_histogram(
    code: StabilizerCode,
    side: Side,
    model: NoiseModel,
    logicals: Sequence[PauliString] = (),
    threads: int | None = None,
    backend: str = "auto",
) -> Histogram:
    gens = _group_generators(code, side)
    if len(gens) > GROUP_CAP:
        raise EnumeratorError(f"group with {len(gens)} generators exceeds cap {GROUP_CAP}")
    classes = _classes(model)
    if backend == "auto":
        backend = "numpy" if code.n <= 31 else "python"
    if backend == "numpy":
        counts = _histogram_numpy(code.n, gens, classes, list(logicals), threads or default_threads())
    elif backend == "python":
        counts = _histogram_python(code.n, gens, classes, list(logicals))
    else:
        raise EnumeratorError(f"unknown backend {backend!r}")
    return Histogram(classes, len(logicals), counts, 1 << len(gens))


def _element_key(p: PauliString, classes: Sequence[_Class], logicals: Sequence[PauliString]) -> tuple[int, ...]:
    s = p.support
    key = []
    for c in classes:
        if c.kind is WFKind.SUPPORT_TRIGGER:
            key.append(sum(1 for m in c.masks if s & m))
        else:
            key.append(sum(bin(s & m).count("1") for m in c.masks))
    for l in logicals:
        key.append(symplectic(p, l))
    return tuple(key)


def _histogram_python(n: int, gens, classes, logicals) -> dict[tuple[int, ...], int]:
    counts: Counter = Counter()
    sg = [SignedPauli(0, g) for g in gens]
    if not sg:
        counts[_element_key(PauliString.identity(n), classes, logicals)] += 1
        return dict(counts)
    for e in iter_group(sg, cap=GROUP_CAP):
        counts[_element_key(e.pauli, classes, logicals)] += 1
    return dict(counts)


def _pack(p: PauliString) -> int:
    return p.x | (p.z << 32)


def _histogram_numpy(n: int, gens, classes, logicals, threads: int) -> dict[tuple[int, ...], int]:
    packed = [np.uint64(_pack(g)) for g in gens]
    low, high = packed[:LOW_BITS], packed[LOW_BITS:]
    block = np.zeros(1, dtype=np.uint64)
    for g in low:
        block = np.concatenate([block, block ^ g])
    radices = [c.radix for c in classes] + [2] * len(logicals)
    total = int(np.prod(radices, dtype=object))
    lmask = np.uint64((1 << 32) - 1)
    # per-qubit classes reduce to a weighted popcount over multiplicity groups
    plans = []
    for c in classes:
        if c.kind is WFKind.SUPPORT_TRIGGER:
            plans.append(("t", [np.uint64(m) for m in c.masks]))
        else:
            mult: dict[int, int] = {}
            for q in range(n):
                k = sum(1 for m in c.masks if m >> q & 1)
                if k:
                    mult[k] = mult.get(k, 0) | (1 << q)
            plans.append(("p", [(k, np.uint64(m)) for k, m in mult.items()]))
    lsw = [np.uint64(l.z | (l.x << 32)) for l in logicals]

    def keys_of(v: np.ndarray) -> np.ndarray:
        s = (v | (v >> np.uint64(32))) & lmask
        key = np.zeros(v.shape, dtype=np.int64)
        for (kind, data), rad in zip(plans, radices):
            acc = np.zeros(v.shape, dtype=np.int64)
            if kind == "t":
                for m in data:
                    acc += (s & m) != 0
            else:
                for k, m in data:
                    acc += k * np.bitwise_count(s & m).astype(np.int64)
            key = key * rad + acc
        for l in lsw:
            key = key * 2 + (np.bitwise_count(v & l) & 1).astype(np.int64)
        return key

    n_high = len(high)
    n_steps = 1 << n_high

    def run(start: int, stop: int) -> Counter | np.ndarray:
        use_bincount = total <= BINCOUNT_LIMIT
        acc_arr = np.zeros(total, dtype=np.int64) if use_bincount else None
        acc_cnt: Counter = Counter()
        g = start ^ (start >> 1)
        h = np.uint64(0)
        for j in range(n_high):
            if g >> j & 1:
                h ^= high[j]
        for i in range(start, stop):
            if i > start:
                j = (i & -i).bit_length() - 1
                h ^= high[j]
            keys = keys_of(block ^ h)
            if use_bincount:
                acc_arr += np.bincount(keys, minlength=total)
            else:
                u, c = np.unique(keys, return_counts=True)
                for a, b in zip(u.tolist(), c.tolist()):
                    acc_cnt[a] += b
        return acc_arr if use_bincount else acc_cnt

    n_tasks = max(1, min(threads, n_steps))
    bounds = [n_steps * t // n_tasks for t in range(n_tasks + 1)]
    if n_tasks == 1:
        parts = [run(0, n_steps)]
    else:
        with ThreadPoolExecutor(max_workers=n_tasks) as ex:
            parts = list(ex.map(lambda t: run(bounds[t], bounds[t + 1]), range(n_tasks)))
    flat: Counter = Counter()
    for part in parts:
        if isinstance(part, np.ndarray):
            for a in np.nonzero(part)[0].tolist():
                flat[a] += int(part[a])
        else:
            flat.update(part)
    out = {}
    for a, c in flat.items():
        digits = []
        for rad in reversed(radices):
            digits.append(a % rad)
            a //= rad
        out[tuple(reversed(digits))] = c
    return out


# -- polynomial assembly ------------------------------------------------------------


def group_weight_sum(
    code: StabilizerCode,
    side: Side,
    model: NoiseModel,
    merge: bool = False,
    threads: int | None = None,
) -> Polynomial:
    """Raw homogeneous sum ``sum_{D in G} prod_j u_j^{wt_j(D)}``."""
    hist = build_histogram(code, side, model, threads=threads)
    return _raw_from_histogram(hist, merge_map=model.merge if merge else None)


def _raw_from_histogram(hist: Histogram, merge_map: Mapping[str, str] | None = None) -> Polynomial:
    names: list[str] = []
    for c in hist.classes:
        for nm in (c.w_name, c.var):
            if nm not in names:
                names.append(nm)
    table = VarTable(tuple(names))
    terms: dict[tuple[int, ...], int] = {}
    for key, cnt in hist.counts.items():
        if any(key[len(hist.classes):]):
            raise EnumeratorError("raw sums are not defined with sign bits")
        exp = [0] * len(table)
        for c, k in zip(hist.classes, key):
            exp[table.index[c.var]] += k
            exp[table.index[c.w_name]] += c.slots - k
        e = tuple(exp)
        terms[e] = terms.get(e, 0) + cnt
    p = Polynomial(table, terms)
    if merge_map:
        mm = dict(merge_map)
        mm.update({"w_" + a: "w_" + b for a, b in merge_map.items()})
        p = p.rename(mm)
    return p


@lru_cache(maxsize=None)
def _factor_series(lam: int, a: int, b: int, cap: int) -> tuple[int, ...]:
    """Coefficients of ``(1 + lam v)^a (1 - v)^b`` up to degree ``cap``."""
    out = [0] * (cap + 1)
    from math import comb

    pa = [comb(a, i) * lam ** i for i in range(min(a, cap) + 1)]
    pb = [comb(b, j) * (-1) ** j for j in range(min(b, cap) + 1)]
    for i, x in enumerate(pa):
        for j, y in enumerate(pb):
            if i + j <= cap:
                out[i + j] += x * y
    return tuple(out)


def _mul_series(a: Sequence[int], b: Sequence[int], cap: int) -> list[int]:
    out = [0] * (cap + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b[: cap + 1 - i]):
                out[i + j] += x * y
    return out


def _expand_histogram(
    hist: Histogram,
    cap: int,
    merge_map: Mapping[str, str] | None,
    sign: Sequence[int] | None = None,
) -> tuple[VarTable, dict[tuple[int, ...], int]]:
    """``sum_key count * sign(key) * prod F`` with w = 1, as integer coefficients."""
    rename = dict(merge_map or {})
    names: list[str] = []
    for c in hist.classes:
        t = rename.get(c.var, c.var)
        if t not in names:
            names.append(t)
    table = VarTable(tuple(names))
    nv = len(names)
    var_idx = [table.index[rename.get(c.var, c.var)] for c in hist.classes]
    nc = len(hist.classes)
    acc: dict[tuple[int, ...], int] = {}
    cache: dict[tuple, dict[tuple[int, ...], int]] = {}
    for key, cnt in hist.counts.items():
        s = 1
        if sign is not None:
            for bit, use in zip(key[nc:], sign):
                if use and bit:
                    s = -s
        ckey = key[:nc]
        poly = cache.get(ckey)
        if poly is None:
            series = [[1] + [0] * cap for _ in range(nv)]
            for c, k, vi in zip(hist.classes, ckey, var_idx):
                series[vi] = _mul_series(series[vi], _factor_series(c.lam, c.slots - k, k, cap), cap)
            poly = _multiply_out(series, cap)
            cache[ckey] = poly
        mult = s * cnt
        for e, v in poly.items():
            acc[e] = acc.get(e, 0) + mult * v
    return table, acc


def _multiply_out(series: list[list[int]], cap: int) -> dict[tuple[int, ...], int]:
    terms: dict[tuple[int, ...], int] = {(): 1}
    for ser in series:
        nxt: dict[tuple[int, ...], int] = {}
        for e, v in terms.items():
            d = sum(e)
            for i, x in enumerate(ser[: cap + 1 - d]):
                if x:
                    k = e + (i,)
                    nxt[k] = nxt.get(k, 0) + v * x
        terms = nxt
    return {e: v for e, v in terms.items() if v}


def _divide_exact(table: VarTable, terms: Mapping[tuple[int, ...], int], den: int, cap: int) -> Polynomial:
    out = {}
    for e, v in terms.items():
        q, r = divmod(v, den)
        if r:
            raise EnumeratorError(f"internal error: coefficient {v} not divisible by {den}")
        if q:
            out[e] = q
    return Polynomial(table, out, Ring.EXACT, cap)


@dataclass(frozen=True)
class PathEnumerators:
    A_path: Polynomial
    B_path: Polynomial
    meta: Mapping = field(default_factory=dict)

    @property
    def difference(self) -> Polynomial:
        return self.B_path - self.A_path


class PathEngine:
    """Caches histograms for one (code, model) pair."""

    def __init__(self, code: StabilizerCode, model: NoiseModel, threads: int | None = None, backend: str = "auto"):
        self.code = code
        self.model = model
        self.threads = threads
        self.backend = backend
        self._hist: dict[tuple, Histogram] = {}

    def histogram(self, side: Side, logicals: Sequence[PauliString] = ()) -> Histogram:
        key = (side, tuple(logicals))
        if key not in self._hist:
            self._hist[key] = build_histogram(self.code, side, self.model, logicals, self.threads, self.backend)
        return self._hist[key]

    def _logical_pair(self) -> list[PauliString]:
        if self.code.k != 1:
            return []
        return [self.code.logical("X"), self.code.logical("Z")]

    def paths(self, max_degree: int = DEFAULT_MAX_DEGREE, merge: bool = True) -> PathEnumerators:
        n, k = self.code.n, self.code.k
        mm = self.model.merge if merge else None
        hn = self.histogram(Side.NORMALIZER, self._logical_pair())
        hs = self.histogram(Side.STABILIZER)
        ta, a = _expand_histogram(hn, max_degree, mm)
        tb, b = _expand_histogram(hs, max_degree, mm)
        meta = {"n": n, "k": k, "degree_cap": max_degree, "group_sizes": [hs.group_size, hn.group_size]}
        return PathEnumerators(_divide_exact(ta, a, 2 ** (n + k), max_degree), _divide_exact(tb, b, 2 ** (n - k), max_degree), meta)

    def coset(self, logical: PauliString | str, max_degree: int = DEFAULT_MAX_DEGREE, merge: bool = True) -> Polynomial:
        n, k = self.code.n, self.code.k
        L = self._resolve(logical)
        if any(self.code.syndrome(L)):
            raise EnumeratorError(f"{L} is not in the normalizer")
        pair = self._logical_pair()
        if pair:
            hist = self.histogram(Side.NORMALIZER, pair)
            # omega(D, L) for L = X^a Z^b * S depends only on the two sign bits
            a = symplectic(L, pair[1])  # L anticommutes with L_Z iff it has an X-bar part
            b = symplectic(L, pair[0])
            sign = [a, b]
        else:
            hist = self.histogram(Side.NORMALIZER, [L])
            sign = [1]
        t, acc = _expand_histogram(hist, max_degree, self.model.merge if merge else None, sign=sign)
        return _divide_exact(t, acc, 2 ** (n + k), max_degree)

    def cosets(self, max_degree: int = DEFAULT_MAX_DEGREE, merge: bool = True) -> dict[str, Polynomial]:
        if self.code.k != 1:
            raise EnumeratorError("coset tables are only provided for k = 1")
        return {name: self.coset(name, max_degree, merge) for name in ("I", "X", "Y", "Z")}

    def _resolve(self, logical) -> PauliString:
        if isinstance(logical, PauliString):
            return logical
        if isinstance(logical, SignedPauli):
            if logical.phase & 1:
                raise EnumeratorError("logical operator has phase +-i")
            return logical.pauli
        s = str(logical).upper()
        if s in ("I", "X", "Y", "Z"):
            return self.code.logical(s)
        return SignedPauli.from_str(s).pauli

    def transform_lhs(self, side: Side, max_degree: int | None = None, homogeneous: bool = False) -> Polynomial:
        """``sum_{D in side} prod_j Phi_j^{wt_j(D)}`` via substitution into the raw sum."""
        raw = _raw_from_histogram(self.histogram(side))
        return phi_substitute(raw, self.model, max_degree, homogeneous)


def phi_substitute(raw: Polynomial, model: NoiseModel, max_degree: int | None = None, homogeneous: bool = False) -> Polynomial:
    """Replace every ``(w, v)`` pair of the raw sum by its MacWilliams forms.

    Each variable must belong to one class of weight functions (one ``lam``).
    With ``homogeneous=False`` the w-variables are set to one first, so the
    result lives in the non-w variables and honours ``max_degree``.
    """
    mapping: dict[str, object] = {}
    seen: dict[str, int] = {}
    for wf in model.positions:
        if seen.setdefault(wf.var, wf.lam) != wf.lam:
            raise EnumeratorError(f"variable {wf.var!r} is shared by transforms with different normalisation")
        scale = Fraction(1, 2 ** wf.local_qubits)
        if homogeneous:
            t = macwilliams_for(wf, check=False)
            mapping[wf.w_name] = t.phi0
            mapping[wf.var] = t.phi1
        else:
            mapping[wf.w_name] = {1: scale, wf.var: wf.lam * scale}
            mapping[wf.var] = {1: scale, wf.var: -scale}
    mapping = {k: v for k, v in mapping.items() if k in raw.table}
    if homogeneous:
        names: list[str] = []
        for wf in model.positions:
            for nm in (wf.w_name, wf.var):
                if nm in raw.table and nm not in names:
                    names.append(nm)
        target = VarTable(tuple(names))
        mapping = {k: v.extend(target) for k, v in mapping.items()}
        return substitute_linear(raw, mapping, target=target)
    target = VarTable(tuple(n for n in model.variables if n in raw.table))
    return substitute_linear(raw, mapping, target=target, cap=max_degree)


def path_enumerators(
    code: StabilizerCode,
    model: NoiseModel | None = None,
    max_degree: int = DEFAULT_MAX_DEGREE,
    merge: bool = True,
    threads: int | None = None,
) -> PathEnumerators:
    model = model or NoiseModel.syndrome_extraction(code)
    return PathEngine(code, model, threads).paths(max_degree, merge)


def coset_enumerator(
    code: StabilizerCode,
    logical: PauliString | SignedPauli | str,
    model: NoiseModel | None = None,
    max_degree: int = DEFAULT_MAX_DEGREE,
    merge: bool = True,
    threads: int | None = None,
) -> Polynomial:
    model = model or NoiseModel.syndrome_extraction(code)
    return PathEngine(code, model, threads).coset(logical, max_degree, merge)


def shor_laflamme(code: StabilizerCode, var: str = "z") -> tuple[Polynomial, Polynomial]:
    """Weight distributions ``A(z) = sum_S z^wt`` and ``B(z) = sum_N z^wt``."""
    model = NoiseModel((per_qubit(range(code.n), var),))
    out = []
    for side in (Side.STABILIZER, Side.NORMALIZER):
        raw = group_weight_sum(code, side, model)
        out.append(specialize(raw, {"w_" + var: 1}))
    return out[0], out[1]


def distance(code: StabilizerCode) -> int:
    a, b = shor_laflamme(code)
    diff = b - a
    return min(sum(e) for e in diff.terms) if diff.terms else code.n


TRACE_CAP = 10


def trace_syndrome_circuit(code: StabilizerCode, model: NoiseModel | None = None) -> Polynomial:
    """Weighted trace of the noisy syndrome circuit, in MacWilliams-normalised form.

    Multiplies the diagonal tensor entries ``e^E_{I..I (x) E}`` of the
    projective measurements with the traced noise tensors for every ``E``
    and sums.  The result equals ``sum_{E in N} prod_j Phi_j^{wt_j(E)}``.
    """
    from . import tensor as T

    if code.n > TRACE_CAP:
        raise EnumeratorError(f"trace path limited to n <= {TRACE_CAP}")
    model = model or NoiseModel((per_qubit(range(code.n), "z"),))
    n = code.n
    meas = [T.tensor_projective_meas(g) for g in code.generators]
    noise = []
    for wf in model.positions:
        qs = list(wf.qubits)
        if not qs:
            continue
        if wf.kind is WFKind.SUPPORT_TRIGGER:
            r = len(qs)
            tens = T.trace_weights(T.pauli_noise(r, wf.w_name, wf.var))
        else:
            one = T.trace_weights(T.pauli_noise(1, wf.w_name, wf.var))
            tens = T.kron_all([one] * len(qs))
        noise.append((qs, tens))
    total: Polynomial | None = None
    for x in range(1 << n):
        for z in range(1 << n):
            lab = T.pauli_to_label(PauliString(n, x, z))
            if any(m[lab, (0,) + lab].is_zero() for m in meas):
                continue
            val = Polynomial.const(VarTable(()), 1)
            for qs, tens in noise:
                sub = tuple(lab[q] for q in qs)
                val = _times(val, tens[sub, sub])
            total = val if total is None else _plus(total, val)
    assert total is not None
    return total * Fraction(1, 2 ** model.covered)


def _times(a: Polynomial, b: Polynomial) -> Polynomial:
    t = a.table.union(b.table)
    return a.extend(t) * b.extend(t)


def _plus(a: Polynomial, b: Polynomial) -> Polynomial:
    t = a.table.union(b.table)
    return a.extend(t) + b.extend(t)
