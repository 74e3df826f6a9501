"""Circuit tensors: sparse maps from (input label, output label) to polynomials.

Every wire carries an error basis: the Pauli basis for a qubit, and the
clock powers ``Z_M^a`` for a classical (or noise-mode) wire of arity ``M``.
A tensor entry for a linear map ``A`` and labels ``(E, E')`` is
``(1/d_in) Tr(E^dag A^dag E' A)``, summed over Kraus operators for channels.
Composition is contravariant: ``compose(a, b)`` is "first ``a`` then ``b``"
and multiplies the matrices in that order.

Labels are tuples with one int per wire.  A quantum wire label is the
symplectic index ``x | z << 1`` (so ``I, X, Z, Y = 0, 1, 2, 3``); a classical
or noise wire label is the exponent ``a`` (flattened in mixed radix for
product groups).
"""

from __future__ import annotations

import cmath
import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, Mapping, Sequence

import numpy as np

from .pauli import PauliError, PauliString, SignedPauli, iter_group, mul, omega, symplectic
from .poly import (
    FLOAT_TOL,
    Polynomial,
    PolyError,
    QQi,
    Ring,
    VarTable,
    coeff_close,
    conj,
    parse_poly,
    to_exact,
    unify,
)

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_QCHARS = "IXZY"
_QINDEX = {c: i for i, c in enumerate(_QCHARS)}

EMPTY = VarTable(())
RATIONALIZE_DEN = 1 << 16
RATIONALIZE_TOL = 1e-12
UNITARY_TOL = 1e-9


class TensorError(ValueError):
    pass


# -- wires and labels --------------------------------------------------------------


@dataclass(frozen=True)
class Wire:
    """``kind`` is ``"q"`` (qubit), ``"c"`` (classical) or ``"n"`` (noise mode)."""

    kind: str
    dims: tuple[int, ...] = (2,)
    weights: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("q", "c", "n"):
            raise TensorError(f"unknown wire kind {self.kind!r}")
        if self.kind == "q":
            object.__setattr__(self, "dims", (2,))
        if any(d < 2 for d in self.dims):
            raise TensorError("wire arities must be >= 2")
        if self.weights is not None and len(self.weights) != self.size:
            raise TensorError(f"noise wire needs {self.size} weights, got {len(self.weights)}")

    @property
    def arity(self) -> int:
        return int(np.prod(self.dims))

    @property
    def size(self) -> int:
        """Number of error labels on the wire."""
        return 4 if self.kind == "q" else self.arity

    @property
    def dim(self) -> int:
        """Hilbert-space dimension carried by the wire."""
        return 2 if self.kind == "q" else self.arity

    def components(self, a: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.dims):
            out.append(a % d)
            a //= d
        return tuple(reversed(out))

    def flatten(self, comps: Sequence[int]) -> int:
        a = 0
        for c, d in zip(comps, self.dims):
            a = a * d + (c % d)
        return a

    def label_str(self, a: int) -> str:
        if self.kind == "q":
            return _QCHARS[a]
        if all(d == 2 for d in self.dims):
            return "".join("Z" if c else "I" for c in self.components(a))
        comps = self.components(a)
        if len(comps) == 1:
            return "I" if a == 0 else f"Z^{a}"
        return "Z^(" + ",".join(map(str, comps)) + ")"

    def parse_label(self, s: str) -> int:
        if self.kind == "q":
            if s not in _QINDEX:
                raise TensorError(f"bad qubit label {s!r}")
            return _QINDEX[s]
        if all(d == 2 for d in self.dims) and len(s) == len(self.dims) and set(s) <= {"I", "Z"}:
            return self.flatten([1 if c == "Z" else 0 for c in s])
        if s == "I":
            return 0
        if s.startswith("Z^(") and s.endswith(")"):
            return self.flatten([int(v) for v in s[3:-1].split(",")])
        if s.startswith("Z^"):
            return int(s[2:]) % self.arity
        raise TensorError(f"bad classical label {s!r}")

    def to_json(self) -> dict:
        if self.kind == "q":
            return {"kind": "quantum"}
        d: dict[str, Any] = {"kind": "classical" if self.kind == "c" else "noise", "dims": list(self.dims)}
        if self.weights is not None:
            d["weights"] = list(self.weights)
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> "Wire":
        kind = {"quantum": "q", "classical": "c", "noise": "n"}[d["kind"]]
        w = tuple(d["weights"]) if d.get("weights") is not None else None
        return cls(kind, tuple(d.get("dims", (2,))), w)


QUBIT = Wire("q")
BIT = Wire("c")


def classical(arity: int = 2) -> Wire:
    return Wire("c", (arity,))


def noise_wire(dims: Sequence[int] | int = 2, weights: Sequence[str] | None = None) -> Wire:
    dims = (dims,) if isinstance(dims, int) else tuple(dims)
    return Wire("n", dims, tuple(weights) if weights is not None else None)


Signature = tuple[Wire, ...]
Label = tuple[int, ...]


def qubits(n: int) -> Signature:
    return (QUBIT,) * n


def sig_labels(sig: Signature) -> Iterable[Label]:
    return itertools.product(*(range(w.size) for w in sig))


def label_str(sig: Signature, label: Label) -> str:
    parts = [w.label_str(a) for w, a in zip(sig, label)]
    if all(len(p) == 1 for p in parts):
        return "".join(parts)
    return ",".join(parts)


def parse_label(sig: Signature, s: str) -> Label:
    if not sig:
        if s not in ("", "-"):
            raise TensorError(f"label {s!r} given for empty signature")
        return ()
    parts = s.split(",") if "," in s else (list(s) if len(s) == len(sig) else [s])
    if len(parts) != len(sig):
        raise TensorError(f"label {s!r} does not match a {len(sig)}-wire signature")
    return tuple(w.parse_label(p) for w, p in zip(sig, parts))


def pauli_to_label(p: PauliString) -> Label:
    return tuple(((p.x >> i) & 1) | (((p.z >> i) & 1) << 1) for i in range(p.n))


def label_to_pauli(label: Sequence[int]) -> PauliString:
    x = z = 0
    for i, a in enumerate(label):
        x |= (a & 1) << i
        z |= ((a >> 1) & 1) << i
    return PauliString(len(label), x, z)


# -- roots of unity ---------------------------------------------------------------


def root_of_unity(turn: Fraction) -> Any:
    """``exp(2 pi i * turn)``; exact when ``4 * turn`` is an integer."""
    turn = turn % 1
    if (turn * 4).denominator == 1:
        return (1, QQi(0, 1), -1, QQi(0, -1))[int(turn * 4)]
    return cmath.exp(2j * cmath.pi * float(turn))


def _wire_phase(w: Wire, alpha: int, m: int, sign: int = 1) -> Fraction:
    return sum((Fraction(sign * a * b, d) for a, b, d in zip(w.components(alpha), w.components(m), w.dims)), Fraction(0))


def _is_exact(v) -> bool:
    return not isinstance(v, complex)


# -- tensors -----------------------------------------------------------------------


class CircuitTensor:
    """Sparse tensor; entries share one variable table and ring."""

    __slots__ = ("in_sig", "out_sig", "entries", "table", "ring")

    def __init__(
        self,
        in_sig: Signature,
        out_sig: Signature,
        entries: Mapping[tuple[Label, Label], Any],
        table: VarTable | None = None,
        ring: Ring | None = None,
    ):
        self.in_sig = tuple(in_sig)
        self.out_sig = tuple(out_sig)
        for w in self.out_sig:
            if w.kind == "n":
                raise TensorError("noise-mode wires may only appear on inputs")
        polys: dict[tuple[Label, Label], Polynomial] = {}
        raw = dict(entries)
        is_float = ring is Ring.FLOAT or any(isinstance(v, complex) or (isinstance(v, Polynomial) and v.ring is Ring.FLOAT) for v in raw.values())
        ring = Ring.FLOAT if is_float else Ring.EXACT
        tbl = table or EMPTY
        for v in raw.values():
            if isinstance(v, Polynomial):
                tbl = tbl.union(v.table)
        for key, v in raw.items():
            lin, lout = key
            if len(lin) != len(self.in_sig) or len(lout) != len(self.out_sig):
                raise TensorError(f"label {key} does not match signature")
            if isinstance(v, Polynomial):
                p = v.extend(tbl).to_ring(ring)
            else:
                p = Polynomial.const(tbl, v, ring)
            if not p.is_zero():
                polys[(tuple(lin), tuple(lout))] = p
        self.entries = polys
        self.table = tbl
        self.ring = ring

    # access
    def __getitem__(self, key) -> Polynomial:
        lin, lout = key
        if isinstance(lin, str):
            lin = parse_label(self.in_sig, lin)
        if isinstance(lout, str):
            lout = parse_label(self.out_sig, lout)
        return self.entries.get((tuple(lin), tuple(lout)), Polynomial.zero(self.table, self.ring))

    def __len__(self):
        return len(self.entries)

    def is_constant(self) -> bool:
        return all(p.is_constant() for p in self.entries.values())

    def values(self) -> dict[tuple[Label, Label], Any]:
        """Constant entries as scalars (raises when an entry is not constant)."""
        out = {}
        for k, p in self.entries.items():
            if not p.is_constant():
                raise TensorError("tensor has polynomial entries")
            out[k] = p.constant()
        return out

    def to_ring(self, ring: Ring) -> "CircuitTensor":
        return CircuitTensor(self.in_sig, self.out_sig, {k: p.to_ring(ring) for k, p in self.entries.items()}, self.table, ring)

    def map(self, fn: Callable[[Polynomial], Polynomial]) -> "CircuitTensor":
        return CircuitTensor(self.in_sig, self.out_sig, {k: fn(p) for k, p in self.entries.items()})

    # comparison
    def equals(self, other: "CircuitTensor", tol: float | None = None) -> bool:
        if self.in_sig != other.in_sig or self.out_sig != other.out_sig:
            return False
        for key in set(self.entries) | set(other.entries):
            a, b = self[key], other[key]
            if tol is None and a.ring is Ring.EXACT and b.ring is Ring.EXACT:
                if a != b:
                    return False
            elif not a.approx_equal(b, tol or FLOAT_TOL):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, CircuitTensor):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    # formatting
    def terms(self) -> list[tuple[str, str, Polynomial]]:
        keys = sorted(self.entries, key=lambda k: (k[0], k[1]))
        return [(label_str(self.in_sig, a), label_str(self.out_sig, b), self.entries[(a, b)]) for a, b in keys]

    def to_dict(self) -> dict[tuple[str, str], Polynomial]:
        return {(a, b): p for a, b, p in self.terms()}

    def __str__(self):
        if not self.entries:
            return "0"
        parts = []
        for a, b, p in self.terms():
            s = str(p)
            if s == "1":
                coeff = ""
            elif s == "-1":
                coeff = "-"
            elif len(p) == 1 and " " not in s:
                coeff = s + "*"
            else:
                coeff = f"({s})"
            parts.append(f"{coeff}e^{a or '-'}_{b or '-'}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "in_sig": [w.to_json() for w in self.in_sig],
            "out_sig": [w.to_json() for w in self.out_sig],
            "terms": [[a, b, p.to_json()] for a, b, p in self.terms()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, d: Mapping) -> "CircuitTensor":
        ins = tuple(Wire.from_json(w) for w in d["in_sig"])
        outs = tuple(Wire.from_json(w) for w in d["out_sig"])
        entries = {}
        for a, b, p in d["terms"]:
            entries[(parse_label(ins, a), parse_label(outs, b))] = Polynomial.from_json(p)
        return cls(ins, outs, entries)


def tensor_from_terms(in_sig: Signature, out_sig: Signature, terms: Mapping[tuple[str, str], Any]) -> CircuitTensor:
    """Build a tensor from string labels, e.g. ``{("X", "Z"): 1}``; str values parse as polynomials."""
    entries = {}
    for (a, b), v in terms.items():
        if isinstance(v, str):
            v = parse_poly(v)
        key = (parse_label(in_sig, a), parse_label(out_sig, b))
        entries[key] = entries[key] + v if key in entries else v
    return CircuitTensor(in_sig, out_sig, entries)


_TERM_RE = re.compile(r"^(?:\((?P<poly>[^()]*)\)\*?|(?P<num>[^e()]+?)\*)?e\^(?P<a>[^_\s]*)_(?P<b>\S*)$")


def parse_tensor(text: str, in_sig: Signature, out_sig: Signature) -> CircuitTensor:
    """Parse the textual form printed by ``str(tensor)``.

    Terms look like ``e^XZ_YY``, ``-e^I_I``, ``1/2*e^ZIZ_Z`` or
    ``(1 - z)e^X_X``; ``-`` stands for an empty label.
    """
    terms: dict[tuple[str, str], Any] = {}
    depth, start, chunks = 0, 0, []
    body = text.replace("−", "-").strip()
    for i, ch in enumerate(body):
        depth += (ch == "(") - (ch == ")")
        if ch in "+-" and depth == 0 and i > start and body[i - 1] in " \t":
            chunks.append(body[start:i])
            start = i
    chunks.append(body[start:])
    for chunk in chunks:
        s = chunk.replace(" ", "") if not chunk.strip().startswith(("+(", "-(", "(")) else chunk.strip()
        sign = 1
        if s[:1] in "+-":
            sign = -1 if s[0] == "-" else 1
            s = s[1:].strip()
        m = _TERM_RE.match(s)
        if m is None:
            raise TensorError(f"cannot parse tensor term {chunk.strip()!r}")
        if m.group("poly") is not None:
            coeff: Any = parse_poly(m.group("poly"))
        elif m.group("num") is not None:
            coeff = Fraction(m.group("num"))
        else:
            coeff = Fraction(1)
        key = tuple("" if lab == "-" else lab for lab in (m.group("a"), m.group("b")))
        v = coeff * sign
        terms[key] = terms[key] + v if key in terms else v
    return tensor_from_terms(in_sig, out_sig, terms)


def _unify_tensors(*ts: CircuitTensor) -> tuple[VarTable, Ring]:
    table = EMPTY
    for t in ts:
        table = table.union(t.table)
    ring = Ring.FLOAT if any(t.ring is Ring.FLOAT for t in ts) else Ring.EXACT
    return table, ring


# -- combinators -------------------------------------------------------------------


def compose(a: CircuitTensor, b: CircuitTensor, parallel: bool = False) -> CircuitTensor:
    """Tensor of "apply ``a`` then ``b``": ``sum_F a[E, F] * b[F, E']``."""
    if a.out_sig != b.in_sig:
        raise TensorError(f"cannot compose: output {a.out_sig} != input {b.in_sig}")
    table, ring = _unify_tensors(a, b)
    by_in: dict[Label, list[tuple[Label, Polynomial]]] = {}
    for (f, e2), p in b.entries.items():
        by_in.setdefault(f, []).append((e2, p.extend(table).to_ring(ring)))
    out: dict[tuple[Label, Label], Polynomial] = {}
    for (e, f), p in a.entries.items():
        row = by_in.get(f)
        if not row:
            continue
        p = p.extend(table).to_ring(ring)
        for e2, q in row:
            key = (e, e2)
            v = p * q
            out[key] = out[key] + v if key in out else v
    return CircuitTensor(a.in_sig, b.out_sig, out, table, ring)


def kron(a: CircuitTensor, b: CircuitTensor) -> CircuitTensor:
    table, ring = _unify_tensors(a, b)
    out = {}
    for (e1, f1), p in a.entries.items():
        p = p.extend(table).to_ring(ring)
        for (e2, f2), q in b.entries.items():
            out[(e1 + e2, f1 + f2)] = p * q.extend(table).to_ring(ring)
    return CircuitTensor(a.in_sig + b.in_sig, a.out_sig + b.out_sig, out, table, ring)


def kron_all(ts: Sequence[CircuitTensor]) -> CircuitTensor:
    out = ts[0]
    for t in ts[1:]:
        out = kron(out, t)
    return out


def compose_all(ts: Sequence[CircuitTensor]) -> CircuitTensor:
    out = ts[0]
    for t in ts[1:]:
        out = compose(out, t)
    return out


def permute(t: CircuitTensor, in_perm: Sequence[int] | None = None, out_perm: Sequence[int] | None = None) -> CircuitTensor:
    """Reorder wires: new wire ``i`` is old wire ``perm[i]``."""
    ip = list(range(len(t.in_sig))) if in_perm is None else list(in_perm)
    op = list(range(len(t.out_sig))) if out_perm is None else list(out_perm)
    if sorted(ip) != list(range(len(t.in_sig))) or sorted(op) != list(range(len(t.out_sig))):
        raise TensorError("invalid wire permutation")
    out = {}
    for (e, f), p in t.entries.items():
        out[(tuple(e[i] for i in ip), tuple(f[i] for i in op))] = p
    return CircuitTensor(tuple(t.in_sig[i] for i in ip), tuple(t.out_sig[i] for i in op), out, t.table, t.ring)


def apply_on(t: CircuitTensor, gate: CircuitTensor, positions: Sequence[int], insert_at: int | None = None) -> CircuitTensor:
    """Apply ``gate`` after ``t`` on output wires ``positions`` of ``t``.

    The gate's noise-mode input wires (if any) are not matched against ``t``;
    they are appended, in order, to the input signature of the result.  The
    gate's output wires replace the consumed wires, inserted at ``insert_at``
    (default: the smallest consumed position, or the end if nothing is consumed).
    """
    positions = list(positions)
    noise_pos = [i for i, w in enumerate(gate.in_sig) if w.kind == "n"]
    match_pos = [i for i, w in enumerate(gate.in_sig) if w.kind != "n"]
    matched = [gate.in_sig[i] for i in match_pos]
    if len(matched) != len(positions):
        raise TensorError(f"gate expects {len(matched)} wires, got {len(positions)}")
    for p, w in zip(positions, matched):
        if not 0 <= p < len(t.out_sig):
            raise TensorError(f"wire position {p} out of range")
        if t.out_sig[p] != w:
            raise TensorError(f"wire {p} has kind {t.out_sig[p].kind}, gate expects {w.kind}")
    if len(set(positions)) != len(positions):
        raise TensorError("repeated wire in gate application")
    rest = [i for i in range(len(t.out_sig)) if i not in positions]
    if insert_at is None:
        insert_at = sum(1 for i in rest if i < min(positions)) if positions else len(rest)
    new_out = [t.out_sig[i] for i in rest]
    new_out[insert_at:insert_at] = list(gate.out_sig)
    noise_sig = tuple(gate.in_sig[i] for i in noise_pos)
    table, ring = _unify_tensors(t, gate)
    by_in: dict[Label, list[tuple[Label, Label, Polynomial]]] = {}
    for (g_in, g_out), q in gate.entries.items():
        key = tuple(g_in[i] for i in match_pos)
        by_in.setdefault(key, []).append((tuple(g_in[i] for i in noise_pos), g_out, q.extend(table).to_ring(ring)))
    out: dict[tuple[Label, Label], Polynomial] = {}
    for (e, f), p in t.entries.items():
        row = by_in.get(tuple(f[i] for i in positions))
        if not row:
            continue
        p = p.extend(table).to_ring(ring)
        f_rest = [f[i] for i in rest]
        for nz, g_out, q in row:
            lab = f_rest[:insert_at] + list(g_out) + f_rest[insert_at:]
            key = (e + nz, tuple(lab))
            v = p * q
            out[key] = out[key] + v if key in out else v
    return CircuitTensor(t.in_sig + noise_sig, tuple(new_out), out, table, ring)


def scale(t: CircuitTensor, c) -> CircuitTensor:
    return t.map(lambda p: p * c)


def add(a: CircuitTensor, b: CircuitTensor) -> CircuitTensor:
    if a.in_sig != b.in_sig or a.out_sig != b.out_sig:
        raise TensorError("signature mismatch in tensor sum")
    table, ring = _unify_tensors(a, b)
    out = {k: p.extend(table).to_ring(ring) for k, p in a.entries.items()}
    for k, q in b.entries.items():
        q = q.extend(table).to_ring(ring)
        out[k] = out[k] + q if k in out else q
    return CircuitTensor(a.in_sig, a.out_sig, out, table, ring)


# -- elementary tensors -------------------------------------------------------------


def identity_tensor(sig: Signature) -> CircuitTensor:
    sig = tuple(sig)
    return CircuitTensor(sig, sig, {(l, l): 1 for l in sig_labels(sig)})


def _signed_pauli_of_label(label: Label) -> PauliString:
    return label_to_pauli(label)


def tensor_from_clifford(images: Sequence[tuple[SignedPauli | str, SignedPauli | str]]) -> CircuitTensor:
    """Tensor of the Clifford ``G`` with ``G X_i G^dag = images[i][0]`` and ``G Z_i G^dag = images[i][1]``.

    Entry ``(P, Q) = c`` whenever ``G P G^dag = c Q`` with ``Q`` in the positive basis.
    """
    m = len(images)
    imgs = []
    for pair in images:
        a, b = (SignedPauli.from_str(v) if isinstance(v, str) else v for v in pair)
        if a.n != m or b.n != m:
            raise TensorError("image length does not match the number of qubits")
        if a.phase & 1 or b.phase & 1:
            raise TensorError("Clifford images must be Hermitian (real phase)")
        imgs.append((a, b))
    for i in range(m):
        for j in range(m):
            ai, bi = imgs[i]
            aj, bj = imgs[j]
            if symplectic(ai.pauli, aj.pauli) or symplectic(bi.pauli, bj.pauli):
                raise TensorError("inconsistent Clifford table: images of X's or Z's anticommute")
            if symplectic(ai.pauli, bj.pauli) != (i == j):
                raise TensorError("inconsistent Clifford table: X/Z image commutation is wrong")
    entries = {}
    for x in range(1 << m):
        for z in range(1 << m):
            p = PauliString(m, x, z)
            # P = i^{|x & z|} X^x Z^z
            acc = SignedPauli(bin(x & z).count("1"), PauliString.identity(m))
            for i in range(m):
                if x >> i & 1:
                    acc = mul(acc, imgs[i][0])
            for i in range(m):
                if z >> i & 1:
                    acc = mul(acc, imgs[i][1])
            entries[(pauli_to_label(p), pauli_to_label(acc.pauli))] = acc.sign
    return CircuitTensor(qubits(m), qubits(m), entries)


CLIFFORD_TABLES: dict[str, list[tuple[str, str]]] = {
    "I": [("X", "Z")],
    "X": [("X", "-Z")],
    "Y": [("-X", "-Z")],
    "Z": [("-X", "Z")],
    "H": [("Z", "X")],
    "S": [("Y", "Z")],
    "SDG": [("-Y", "Z")],
    "SH": [("Z", "Y")],  # apply H then S
    "HSDG": [("Y", "X")],  # apply S^dag then H
    "SX": [("X", "-Y")],
    "CNOT": [("XX", "ZI"), ("IX", "ZZ")],
    "CX": [("XX", "ZI"), ("IX", "ZZ")],
    "CZ": [("XZ", "ZI"), ("ZX", "IZ")],
    "SWAP": [("IX", "IZ"), ("XI", "ZI")],
}


def gate(name: str) -> CircuitTensor:
    """Built-in Clifford gate by name (see :data:`CLIFFORD_TABLES`) or ``T``/``TDG``."""
    key = name.upper()
    if key in CLIFFORD_TABLES:
        return tensor_from_clifford(CLIFFORD_TABLES[key])
    if key in ("T", "TDG"):
        ph = cmath.exp((1j if key == "T" else -1j) * cmath.pi / 4)
        return tensor_from_unitary(np.diag([1, ph]))
    raise TensorError(f"unknown gate {name!r}")


def gate_unitary(name: str) -> np.ndarray:
    key = name.upper()
    s2 = 1 / np.sqrt(2)
    table = {
        "I": np.eye(2),
        "X": PAULI_MATRICES["X"],
        "Y": PAULI_MATRICES["Y"],
        "Z": PAULI_MATRICES["Z"],
        "H": np.array([[s2, s2], [s2, -s2]]),
        "S": np.diag([1, 1j]),
        "SDG": np.diag([1, -1j]),
        "T": np.diag([1, np.exp(1j * np.pi / 4)]),
        "TDG": np.diag([1, np.exp(-1j * np.pi / 4)]),
        "CNOT": np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
        "CZ": np.diag([1, 1, 1, -1]),
        "SWAP": np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]),
    }
    table["CX"] = table["CNOT"]
    table["SH"] = table["S"] @ table["H"]
    table["HSDG"] = table["H"] @ table["SDG"]
    table["SX"] = np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]) / 2
    if key not in table:
        raise TensorError(f"unknown gate {name!r}")
    return np.asarray(table[key], dtype=complex)


# -- dense (trace formula) constructors ---------------------------------------------


def basis_matrix(w: Wire, a: int) -> np.ndarray:
    if w.kind == "q":
        return PAULI_MATRICES[_QCHARS[a]]
    diag = []
    for j in range(w.arity):
        diag.append(complex(root_of_unity(_wire_phase(w, a, j))))
    return np.diag(diag)


def basis_matrices(sig: Signature) -> tuple[list[Label], np.ndarray]:
    labels = list(sig_labels(sig))
    d = int(np.prod([w.dim for w in sig])) if sig else 1
    mats = np.empty((len(labels), d, d), dtype=complex)
    cache = [[basis_matrix(w, a) for a in range(w.size)] for w in sig]
    for i, lab in enumerate(labels):
        m = np.ones((1, 1), dtype=complex)
        for k, a in enumerate(lab):
            m = np.kron(m, cache[k][a])
        mats[i] = m
    return labels, mats


def rationalize(v: complex) -> Any | None:
    """Exact value of ``v`` if both parts are rationals with small denominators."""
    parts = []
    for x in (v.real, v.imag):
        f = Fraction(x).limit_denominator(RATIONALIZE_DEN)
        if abs(float(f) - x) > RATIONALIZE_TOL:
            return None
        parts.append(f)
    return to_exact(QQi(parts[0], parts[1]))


def _entries_from_numeric(in_sig: Signature, out_sig: Signature, values: np.ndarray, in_labels, out_labels, ring: Ring | None) -> CircuitTensor:
    entries: dict[tuple[Label, Label], Any] = {}
    exact = ring is not Ring.FLOAT
    conv = {}
    if exact:
        for idx in zip(*np.nonzero(np.abs(values) > RATIONALIZE_TOL)):
            r = rationalize(complex(values[idx]))
            if r is None:
                if ring is Ring.EXACT:
                    raise TensorError(f"entry {complex(values[idx])} is not exactly representable")
                exact = False
                break
            conv[idx] = r
    for idx in zip(*np.nonzero(np.abs(values) > RATIONALIZE_TOL)):
        v = conv[idx] if exact else complex(values[idx])
        entries[(in_labels[idx[0]], out_labels[idx[1]])] = v
    return CircuitTensor(in_sig, out_sig, entries, ring=Ring.EXACT if exact else Ring.FLOAT)


def _sig_dim(sig: Signature) -> int:
    return int(np.prod([w.dim for w in sig])) if sig else 1


def tensor_from_kraus(
    kraus: Sequence[np.ndarray],
    in_sig: Signature | None = None,
    out_sig: Signature | None = None,
    ring: Ring | None = None,
    check: bool = True,
) -> CircuitTensor:
    """``(1/d_in) sum_j Tr(E^dag A_j^dag E' A_j)`` over the signature bases.

    Signatures default to all-qubit wires matching the matrix shapes.  The
    ring is chosen automatically (EXACT if every entry is a small rational)
    unless forced.
    """
    kraus = [np.asarray(k, dtype=complex) for k in kraus]
    if not kraus:
        raise TensorError("empty Kraus list")
    d_out, d_in = kraus[0].shape
    if in_sig is None:
        in_sig = qubits(_log2(d_in))
    if out_sig is None:
        out_sig = qubits(_log2(d_out))
    in_sig, out_sig = tuple(in_sig), tuple(out_sig)
    if _sig_dim(in_sig) != d_in or _sig_dim(out_sig) != d_out:
        raise TensorError("Kraus shape does not match signatures")
    for k in kraus:
        if k.shape != (d_out, d_in):
            raise TensorError("Kraus operators must share one shape")
    if check:
        total = sum(k.conj().T @ k for k in kraus)
        if not np.allclose(total, np.eye(d_in), atol=UNITARY_TOL):
            raise TensorError("Kraus operators are not trace preserving")
    in_labels, e_in = basis_matrices(in_sig)
    out_labels, e_out = basis_matrices(out_sig)
    values = np.zeros((len(in_labels), len(out_labels)), dtype=complex)
    for a in kraus:
        b = np.einsum("ab,lbc,cd->lad", a.conj().T, e_out, a)
        values += np.einsum("kab,lab->kl", e_in.conj(), b)
    values /= d_in
    return _entries_from_numeric(in_sig, out_sig, values, in_labels, out_labels, ring)


def _log2(d: int) -> int:
    n = d.bit_length() - 1
    if 1 << n != d:
        raise TensorError(f"dimension {d} is not a power of two")
    return n


def tensor_from_unitary(u: np.ndarray, ring: Ring | None = None) -> CircuitTensor:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise TensorError("unitary must be a square matrix")
    if not np.allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=UNITARY_TOL):
        raise TensorError("matrix is not unitary")
    return tensor_from_kraus([u], ring=ring, check=False)


def tensor_state_prep_dense(psi: Sequence[complex], ring: Ring | None = None) -> CircuitTensor:
    psi = np.asarray(psi, dtype=complex).reshape(-1, 1)
    nrm = np.linalg.norm(psi)
    if nrm < 1e-15:
        raise TensorError("zero state vector")
    return tensor_from_kraus([psi / nrm], in_sig=(), ring=ring)


def tensor_effect_dense(psi: Sequence[complex], ring: Ring | None = None) -> CircuitTensor:
    """Effect ``<psi|``: entries ``(1/d) <psi|E|psi>`` (not trace preserving)."""
    psi = np.asarray(psi, dtype=complex).reshape(1, -1)
    nrm = np.linalg.norm(psi)
    if nrm < 1e-15:
        raise TensorError("zero effect vector")
    return tensor_from_kraus([psi / nrm], out_sig=(), ring=ring, check=False)


# -- exact structured constructors ---------------------------------------------------


def tensor_state_prep(gens: Sequence[SignedPauli | str]) -> CircuitTensor:
    """Stabilizer state with the given generators: ``sum_S mu(S) e_S``."""
    gs = [SignedPauli.from_str(g) if isinstance(g, str) else g for g in gens]
    if not gs:
        return CircuitTensor((), (), {((), ()): 1})
    n = gs[0].n
    if len(gs) != n:
        raise TensorError(f"a stabilizer state on {n} qubits needs {n} generators")
    from .pauli import StabilizerCode

    try:
        StabilizerCode(tuple(gs))
    except ValueError as exc:
        raise TensorError(f"invalid stabilizer state: {exc}") from None
    entries = {}
    for s in iter_group(gs):
        entries[((), pauli_to_label(s.pauli))] = s.sign
    return CircuitTensor((), qubits(n), entries)


STATE_GENS = {
    "0": ["Z"],
    "1": ["-Z"],
    "+": ["X"],
    "-": ["-X"],
    "+i": ["Y"],
    "-i": ["-Y"],
    "bell": ["XX", "ZZ"],
}


def state_prep(name: str) -> CircuitTensor:
    if name not in STATE_GENS:
        raise TensorError(f"unknown state {name!r}")
    return tensor_state_prep(STATE_GENS[name])


def tensor_destructive_meas(p: str | PauliString) -> CircuitTensor:
    """Measure a single-qubit Pauli and discard the qubit: ``e^I_I + e^P_Z``."""
    s = str(p)
    if s not in ("X", "Y", "Z"):
        raise TensorError(f"destructive measurement needs X, Y or Z, got {s!r}")
    return CircuitTensor((QUBIT,), (BIT,), {((0,), (0,)): 1, ((_QINDEX[s],), (1,)): 1})


def tensor_destructive_meas_dense(basis: Sequence[Sequence[complex]], ring: Ring | None = None) -> CircuitTensor:
    """Measurement in an orthonormal basis ``{|phi_j>}``; Kraus ``|j><phi_j|``."""
    vecs = [np.asarray(v, dtype=complex) for v in basis]
    q = len(vecs)
    kraus = []
    for j, v in enumerate(vecs):
        k = np.zeros((q, len(v)), dtype=complex)
        k[j] = v.conj()
        kraus.append(k)
    return tensor_from_kraus(kraus, in_sig=qubits(_log2(len(vecs[0]))), out_sig=(classical(q),), ring=ring)


def tensor_projective_meas(s: SignedPauli | str) -> CircuitTensor:
    """Non-destructive measurement of ``S``; outputs (bit, qubits)."""
    s = SignedPauli.from_str(s) if isinstance(s, str) else s
    if s.phase & 1:
        raise TensorError("projective measurement needs a Hermitian Pauli (phase +-1)")
    n = s.n
    entries = {}
    for x in range(1 << n):
        for z in range(1 << n):
            p = PauliString(n, x, z)
            if symplectic(p, s.pauli):
                continue
            lab = pauli_to_label(p)
            entries[(lab, (0,) + lab)] = 1
            ps = mul(p, s)
            entries[(lab, (1,) + pauli_to_label(ps.pauli))] = ps.sign
    return CircuitTensor(qubits(n), (BIT,) + qubits(n), entries)


def projective_meas_kraus(s: SignedPauli | str) -> list[np.ndarray]:
    s = SignedPauli.from_str(s) if isinstance(s, str) else s
    mat = s.pauli.matrix() * (1, 1j, -1, -1j)[s.phase]
    d = mat.shape[0]
    out = []
    for m, sign in enumerate((1, -1)):
        proj = (np.eye(d) + sign * mat) / 2
        k = np.zeros((2 * d, d), dtype=complex)
        k[m * d:(m + 1) * d] = proj
        out.append(k)
    return out


def tensor_controlled_pauli(p: PauliString | str) -> CircuitTensor:
    """Apply ``P`` when the classical control bit is 1; inputs (bit, qubits)."""
    p = PauliString.from_str(p) if isinstance(p, str) else p
    entries = {}
    for x in range(1 << p.n):
        for z in range(1 << p.n):
            e = PauliString(p.n, x, z)
            lab = pauli_to_label(e)
            entries[((symplectic(e, p),) + lab, lab)] = 1
    return CircuitTensor((BIT,) + qubits(p.n), qubits(p.n), entries)


def tensor_classical_fn(
    f: Callable[..., Any] | Mapping[tuple[int, ...], Any],
    in_arities: Sequence[int],
    out_arities: Sequence[int],
) -> CircuitTensor:
    """Tensor of a deterministic classical function.

    ``f`` maps an input tuple to an output tuple (or a single value when there
    is one output).  Entry ``(a, b) = (1/prod N_i) sum_x zeta^{-a.x} zeta^{b.f(x)}``.
    """
    in_sig = tuple(classical(a) for a in in_arities)
    out_sig = tuple(classical(a) for a in out_arities)
    domain = list(itertools.product(*(range(a) for a in in_arities)))
    if isinstance(f, Mapping):
        if len(f) != len(domain):
            raise TensorError(f"function table has {len(f)} rows, expected {len(domain)}")
        table = {tuple(k): f[k] for k in f}
        fn = lambda *x: table[tuple(x)]  # noqa: E731
    else:
        fn = f
    images = []
    for x in domain:
        y = fn(*x)
        y = tuple(y) if isinstance(y, (tuple, list)) else (y,)
        if len(y) != len(out_arities):
            raise TensorError("function output arity mismatch")
        images.append(y)
    norm = Fraction(1, int(np.prod(in_arities))) if in_arities else Fraction(1)
    entries = {}
    for a in sig_labels(in_sig):
        for b in sig_labels(out_sig):
            acc: Any = 0
            for x, y in zip(domain, images):
                turn = sum((Fraction(-ai * xi, n) for ai, xi, n in zip(a, x, in_arities)), Fraction(0))
                turn += sum((Fraction(bj * yj, n) for bj, yj, n in zip(b, y, out_arities)), Fraction(0))
                acc = acc + root_of_unity(turn)
            if isinstance(acc, complex):
                v = acc * float(norm)
                if abs(v) > RATIONALIZE_TOL:
                    entries[(a, b)] = v
            else:
                v = acc * norm
                if v != 0:
                    entries[(a, b)] = to_exact(v)
    return CircuitTensor(in_sig, out_sig, entries)


CLASSICAL_FUNCTIONS: dict[str, tuple[Callable[..., Any], int]] = {
    "xor": (lambda a, b: a ^ b, 2),
    "and": (lambda a, b: a & b, 2),
    "or": (lambda a, b: a | b, 2),
    "not": (lambda a: 1 - a, 1),
    "mux": (lambda s, x1, x2: x1 if s == 0 else x2, 3),
    "copy": (lambda a: (a, a), 1),
}


def classical_gate(name: str) -> CircuitTensor:
    fn, k = CLASSICAL_FUNCTIONS[name.lower()]
    n_out = 2 if name.lower() == "copy" else 1
    return tensor_classical_fn(fn, [2] * k, [2] * n_out)


def tensor_selector(
    channels: Sequence[CircuitTensor],
    dims: Sequence[int] | None = None,
    weights: Sequence[str] | None = None,
    kind: str = "n",
) -> CircuitTensor:
    """Classically select channel ``m``: entry ``(1/M) sum_m zeta^{-a.m} [[U(m)]]``.

    ``dims`` factors the selector group (default ``(M,)``); channel index ``m``
    is read in mixed radix over ``dims``.  The new wire is prepended.
    """
    M = len(channels)
    if M < 2:
        raise TensorError("a selector needs at least two channels")
    dims = (M,) if dims is None else tuple(dims)
    if int(np.prod(dims)) != M:
        raise TensorError("selector dims do not multiply to the channel count")
    sig_in, sig_out = channels[0].in_sig, channels[0].out_sig
    for c in channels:
        if c.in_sig != sig_in or c.out_sig != sig_out:
            raise TensorError("selector channels must share signatures")
    w = Wire(kind, dims, tuple(weights) if weights is not None else None)
    table, ring = _unify_tensors(*channels)
    out: dict[tuple[Label, Label], Polynomial] = {}
    inv_m = Fraction(1, M)
    for alpha in range(M):
        for m, ch in enumerate(channels):
            z = root_of_unity(_wire_phase(w, alpha, m, sign=-1))
            if isinstance(z, complex):
                ring = Ring.FLOAT
            for (e, f), p in ch.entries.items():
                key = ((alpha,) + e, f)
                v = p.extend(table).to_ring(ring) * (z * float(inv_m) if isinstance(z, complex) else _mulc(z, inv_m))
                out[key] = out[key].to_ring(ring) + v if key in out else v
    return CircuitTensor((w,) + sig_in, sig_out, out, table, ring)


def _mulc(a, b):
    return to_exact(QQi._lift(a) * b) if isinstance(a, QQi) else to_exact(Fraction(a) * b)


def discard(w: Wire) -> CircuitTensor:
    """Ignore a classical or noise-mode input."""
    if w.kind == "q":
        return CircuitTensor((w,), (), {((0,), ()): Fraction(1, 2)})
    return CircuitTensor((w,), (), {((0,), ()): 1})


def _pad_inputs(t: CircuitTensor, extra: Signature, front: bool) -> CircuitTensor:
    for w in extra:
        t = kron(discard(w), t) if front else kron(t, discard(w))
    return t


def controlled_channel(on_one: CircuitTensor, on_zero: CircuitTensor | None = None) -> CircuitTensor:
    """Run ``on_one`` when a classical control bit is 1, ``on_zero`` (default identity) otherwise.

    The control bit becomes the first non-noise input.  Noise-mode inputs of
    both branches are kept (those of ``on_zero`` first), and the other branch
    ignores them.
    """
    core1 = tuple(w for w in on_one.in_sig if w.kind != "n")
    if on_zero is None:
        if core1 != on_one.out_sig:
            raise TensorError("default identity branch needs matching input and output wires")
        on_zero = identity_tensor(core1)
    n0 = [i for i, w in enumerate(on_zero.in_sig) if w.kind == "n"]
    n1 = [i for i, w in enumerate(on_one.in_sig) if w.kind == "n"]
    c0 = [i for i, w in enumerate(on_zero.in_sig) if w.kind != "n"]
    c1 = [i for i, w in enumerate(on_one.in_sig) if w.kind != "n"]
    # bring both into the layout (noise0, noise1, core)
    z = permute(on_zero, n0 + c0)
    o = permute(on_one, n1 + c1)
    nz0 = tuple(on_zero.in_sig[i] for i in n0)
    nz1 = tuple(on_one.in_sig[i] for i in n1)
    # insert ignored noise wires
    z = _insert_ignored(z, len(nz0), nz1)
    o = _insert_ignored(o, 0, nz0)
    sel = tensor_selector([z, o], kind="c")
    k = len(nz0) + len(nz1)
    return permute(sel, list(range(1, k + 1)) + [0] + list(range(k + 1, len(sel.in_sig))))


def _insert_ignored(t: CircuitTensor, at: int, wires: Signature) -> CircuitTensor:
    if not wires:
        return t
    padded = kron(_pad_inputs(CircuitTensor((), (), {((), ()): 1}), wires, front=False), t)
    k = len(wires)
    order = list(range(k, k + at)) + list(range(k)) + list(range(k + at, len(padded.in_sig)))
    return permute(padded, order)


def pauli_channels(n: int) -> list[CircuitTensor]:
    """Unitary Pauli channels ``X^{m_x} Z^{m_z}`` in pair-indexed order.

    Mode bits are ordered ``(x_0, z_0, x_1, z_1, ...)`` with qubit 0 most significant.
    """
    out = []
    for bits in itertools.product((0, 1), repeat=2 * n):
        x = sum(bits[2 * i] << i for i in range(n))
        z = sum(bits[2 * i + 1] << i for i in range(n))
        out.append(pauli_channel(PauliString(n, x, z)))
    return out


def pauli_channel(p: PauliString) -> CircuitTensor:
    entries = {}
    for x in range(1 << p.n):
        for z in range(1 << p.n):
            e = PauliString(p.n, x, z)
            lab = pauli_to_label(e)
            entries[(lab, lab)] = omega(p, e)
    return CircuitTensor(qubits(p.n), qubits(p.n), entries)


def pauli_mode_index(p: PauliString) -> int:
    """Flattened pair-indexed mode of ``p`` (inverse of :func:`pauli_channels` order)."""
    m = 0
    for i in range(p.n):
        m = (m << 2) | (((p.x >> i) & 1) << 1) | ((p.z >> i) & 1)
    return m


def pauli_selector(n: int, weights: Sequence[str] | None = None) -> CircuitTensor:
    return tensor_selector(pauli_channels(n), dims=(2,) * (2 * n), weights=weights)


def pauli_noise(n: int, identity_weight: str, error_weight: str) -> CircuitTensor:
    """Pauli selector with weight ``identity_weight`` on I and ``error_weight`` on every other Pauli."""
    w = [identity_weight] + [error_weight] * (4 ** n - 1)
    return pauli_selector(n, w)


def bitflip_noise(weight: str = "r", identity_weight: str = "1") -> CircuitTensor:
    """Classical bit-flip selector (identity, not) on one classical wire."""
    return tensor_selector([identity_tensor((BIT,)), classical_gate("not")], weights=(identity_weight, weight))


def depolarizing_noise(n: int, var: str) -> CircuitTensor:
    """Uniform Pauli selector with total error rate expressed through ``var``.

    Identity weight is ``1 - (q^2 - 2)/q^2 * var`` and each of the ``q^2 - 1``
    non-identity Paulis carries ``(q^2 - 2)/(q^2 (q^2 - 1)) * var`` with
    ``q^2 = 4^n``; for one qubit that is ``1 - var/2`` and ``var/6``.
    """
    q2 = 4 ** n
    return pauli_noise(n, f"1 - {q2 - 2}/{q2}*{var}", f"{q2 - 2}/{q2 * (q2 - 1)}*{var}")


# -- weighted trace ------------------------------------------------------------------


def _as_poly(v) -> Polynomial:
    if isinstance(v, Polynomial):
        return v
    if isinstance(v, str):
        return parse_poly(v)
    return Polynomial.const(EMPTY, v, Ring.FLOAT if isinstance(v, complex) else Ring.EXACT)


def trace_weights(
    t: CircuitTensor,
    model: Mapping[int, Sequence[Any]] | None = None,
    wires: Sequence[int] | None = None,
) -> CircuitTensor:
    """Contract noise-mode input wires against their mode weights.

    ``model`` maps input wire index to a list of weights ``w_m`` (polynomials,
    polynomial strings or scalars); unspecified wires use the names attached
    to the wire.  Entry ``(Z^a x E, E')`` picks up ``u_a = sum_m zeta^{a.m} w_m``.
    ``wires`` restricts the contraction to the listed input positions
    (default: every noise-mode wire).
    """
    model = dict(model or {})
    noise_idx = [i for i, w in enumerate(t.in_sig) if w.kind == "n"]
    if wires is not None:
        bad = [i for i in wires if i not in noise_idx]
        if bad:
            raise TensorError(f"wires {bad} are not noise-mode inputs")
        noise_idx = list(wires)
    weights: dict[int, list[Polynomial]] = {}
    for i in noise_idx:
        ws = model.get(i, t.in_sig[i].weights)
        if ws is None:
            raise TensorError(f"noise wire {i} has no weight assignment")
        ws = [_as_poly(v) for v in ws]
        if len(ws) != t.in_sig[i].size:
            raise TensorError(f"noise wire {i} needs {t.in_sig[i].size} weights")
        weights[i] = ws
    for i in model:
        if i not in weights:
            raise TensorError(f"wire {i} is not a noise-mode wire")
    all_polys = [p for ws in weights.values() for p in ws]
    table = t.table
    ring = t.ring
    for p in all_polys:
        table = table.union(p.table)
        if p.ring is Ring.FLOAT:
            ring = Ring.FLOAT
    # u_a per wire
    u: dict[int, list[Polynomial]] = {}
    for i, ws in weights.items():
        w = t.in_sig[i]
        us = []
        for a in range(w.size):
            acc = Polynomial.zero(table, ring)
            for m, wm in enumerate(ws):
                z = root_of_unity(_wire_phase(w, a, m))
                if isinstance(z, complex):
                    ring = Ring.FLOAT
                    acc = acc.to_ring(ring)
                acc = acc + wm.extend(table).to_ring(ring) * z
            us.append(acc)
        u[i] = us
    keep = [i for i in range(len(t.in_sig)) if i not in weights]
    out: dict[tuple[Label, Label], Polynomial] = {}
    for (e, f), p in t.entries.items():
        v = p.extend(table).to_ring(ring)
        for i in weights:
            v = v * u[i][e[i]].to_ring(ring)
            if v.is_zero():
                break
        if v.is_zero():
            continue
        key = (tuple(e[i] for i in keep), f)
        out[key] = out[key] + v if key in out else v
    return CircuitTensor(tuple(t.in_sig[i] for i in keep), t.out_sig, out, table, ring)


def uniform_pauli_noise(n: int, w: str = "w", z: str = "z") -> CircuitTensor:
    """Traced uniform Pauli channel: ``prod_i`` of ``(w+3z)`` on I and ``(w-z)`` otherwise."""
    table = VarTable((w, z))
    on = Polynomial(table, {(1, 0): 1, (0, 1): 3})
    off = Polynomial(table, {(1, 0): 1, (0, 1): -1})
    entries = {}
    for x in range(1 << n):
        for zz in range(1 << n):
            e = PauliString(n, x, zz)
            k = e.weight
            entries[(pauli_to_label(e),) * 2] = on ** (n - k) * off ** k
    return CircuitTensor(qubits(n), qubits(n), entries, table)


def diagonal_to_pauli_probs(t: CircuitTensor) -> dict[str, Polynomial]:
    """Pauli probabilities ``p_P = 4^-n sum_Q omega(P, Q) u_Q`` of a diagonal qubit tensor."""
    if t.in_sig != t.out_sig or any(w.kind != "q" for w in t.in_sig):
        raise TensorError("expected a qubit-to-qubit tensor")
    for e, f in t.entries:
        if e != f:
            raise TensorError("tensor is not diagonal")
    n = len(t.in_sig)
    u = {e: p for (e, _), p in t.entries.items()}
    out = {}
    for x in range(1 << n):
        for z in range(1 << n):
            p = PauliString(n, x, z)
            acc = Polynomial.zero(t.table, t.ring)
            for lab, uq in u.items():
                acc = acc + uq * omega(p, label_to_pauli(lab))
            out[str(p)] = acc * Fraction(1, 4 ** n) if t.ring is Ring.EXACT else acc * (1 / 4 ** n)
    return out


# -- process matrices ----------------------------------------------------------------


@dataclass(frozen=True)
class ProcessMatrix:
    """Pauli-basis process matrix ``chi[E, E']`` (rows E, columns E')."""

    n: int
    chi: np.ndarray

    def is_hermitian(self, tol: float = 1e-9) -> bool:
        return bool(np.allclose(self.chi, self.chi.conj().T, atol=tol))


def _pauli_basis(n: int) -> tuple[list[Label], np.ndarray]:
    return basis_matrices(qubits(n))


def process_matrix_from_kraus(kraus: Sequence[np.ndarray]) -> ProcessMatrix:
    """``chi[E, E'] = sum_j lam_{j,E'} conj(lam_{j,E})`` with ``lam_{j,E} = Tr(E A_j)/d``."""
    kraus = [np.asarray(k, dtype=complex) for k in kraus]
    d = kraus[0].shape[0]
    n = _log2(d)
    _, basis = _pauli_basis(n)
    lam = np.array([[np.trace(e @ a) / d for e in basis] for a in kraus])
    chi = np.einsum("jf,je->ef", lam, lam.conj())
    return ProcessMatrix(n, chi)


def psi_transform(pm: ProcessMatrix, check: bool = True) -> CircuitTensor:
    """``Psi(chi) = (1/d^2) sum chi[E,E'] Tr(F^dag E F' E'^dag) e^F_F'`` (FLOAT ring)."""
    if check and not pm.is_hermitian():
        raise TensorError("process matrix is not Hermitian")
    labels, basis = _pauli_basis(pm.n)
    d = 1 << pm.n
    # T[F, E, F', E'] = Tr(F^dag E F' E'^dag)
    t = np.einsum("fab,ebc,gcd,hda->fegh", basis.conj().transpose(0, 2, 1), basis, basis, basis.conj().transpose(0, 2, 1))
    vals = np.einsum("eh,fegh->fg", pm.chi, t) / d ** 2
    return _entries_from_numeric(qubits(pm.n), qubits(pm.n), vals, labels, labels, Ring.FLOAT)
