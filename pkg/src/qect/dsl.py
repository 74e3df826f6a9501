"""A small line-oriented circuit language and its elaboration into tensors.

Each non-blank line holds one statement; ``#`` starts a comment.  Wires are
named explicitly and nothing is allocated implicitly.  See
``docs/circuit-format.md`` for the full grammar.  A short example::

    input qubit q0
    prep bell q1 q2
    gate CNOT q0 q1
    measure X q0 -> b0
    measure Z q1 -> b1
    cpauli X b1 q2
    cpauli Z b0 q2
"""

from __future__ import annotations

import ast
import math
import operator
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .pauli import PauliError, PauliString, SignedPauli
from .poly import PolyError, parse_poly
from .tensor import (
    BIT,
    CLASSICAL_FUNCTIONS,
    QUBIT,
    STATE_GENS,
    CircuitTensor,
    TensorError,
    apply_on,
    bitflip_noise,
    classical_gate,
    controlled_channel,
    depolarizing_noise,
    discard,
    gate,
    identity_tensor,
    kron_all,
    pauli_channel,
    pauli_mode_index,
    pauli_noise,
    permute,
    state_prep,
    tensor_controlled_pauli,
    tensor_destructive_meas,
    tensor_from_unitary,
    tensor_projective_meas,
    tensor_selector,
    pauli_channels,
    trace_weights,
)


class DSLError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


class LexError(DSLError):
    pass


class ParseError(DSLError):
    pass


class SignatureError(DSLError):
    pass


# -- lexing ------------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    col: int
    quoted: bool = False


def tokenize_line(text: str, line: int) -> list[Token]:
    """Split on whitespace; ``"..."`` and bracketed ``[...]`` groups stay whole."""
    out: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "#":
            break
        if ch.isspace():
            i += 1
            continue
        start = i
        if ch == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise LexError("unterminated string", line, start + 1)
            out.append(Token(text[i + 1 : j], line, start + 1, quoted=True))
            i = j + 1
            continue
        depth = 0
        buf = []
        while i < n:
            c = text[i]
            if c == "[":
                depth += 1
            elif c == "]":
                depth -= 1
                if depth < 0:
                    raise LexError("unbalanced ']'", line, i + 1)
            elif c == '"' and depth == 0:
                # key="value" option
                j = text.find('"', i + 1)
                if j < 0:
                    raise LexError("unterminated string", line, i + 1)
                buf.append(text[i + 1 : j])
                i = j + 1
                continue
            elif (c.isspace() or c == "#") and depth == 0:
                break
            buf.append(c)
            i += 1
        if depth:
            raise LexError("unbalanced '['", line, start + 1)
        out.append(Token("".join(buf), line, start + 1))
    return out


# -- IR ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Stmt:
    op: str
    args: tuple[str, ...] = ()
    outs: tuple[str, ...] = ()
    opts: tuple[tuple[str, str], ...] = ()
    body: tuple["Stmt", ...] = ()
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class CircuitIR:
    statements: tuple[Stmt, ...]

    def pretty(self) -> str:
        return "".join(_pretty(s, 0) for s in self.statements)


def _quote(s: str) -> str:
    return f'"{s}"' if any(c.isspace() for c in s) or s == "" else s


def _pretty(s: Stmt, indent: int) -> str:
    pad = "  " * indent
    if s.op == "if":
        inner = "".join(_pretty(b, indent + 1) for b in s.body)
        return f"{pad}if {s.args[0]}\n{inner}{pad}end\n"
    parts = [s.op] + [_quote(a) for a in s.args]
    if s.outs:
        parts += ["->"] + list(s.outs)
    parts += [f"{k}={_quote(v)}" for k, v in s.opts]
    return pad + " ".join(parts) + "\n"


OPS = {
    "input",
    "prep",
    "gate",
    "unitary",
    "measure",
    "project",
    "classical",
    "cpauli",
    "noise",
    "discard",
    "trace",
    "output",
    "if",
    "end",
}
NOISE_KINDS = {"pauli", "depolarizing", "bitflip", "select"}
OPTION_KEYS = {"identity", "as"}


def parse_circuit(text: str) -> CircuitIR:
    stack: list[tuple[Stmt, list[Stmt]]] = []
    top: list[Stmt] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = tokenize_line(raw, lineno)
        if not toks:
            continue
        head = toks[0]
        if head.text not in OPS:
            raise ParseError(f"unknown statement {head.text!r}", lineno, head.col)
        if head.text == "end":
            if len(toks) > 1:
                raise ParseError("'end' takes no arguments", lineno, toks[1].col)
            if not stack:
                raise ParseError("'end' without 'if'", lineno, head.col)
            opener, body = stack.pop()
            done = Stmt("if", opener.args, body=tuple(body), line=opener.line, col=opener.col)
            (stack[-1][1] if stack else top).append(done)
            continue
        stmt = _parse_stmt(toks)
        if stmt.op == "if":
            if stack:
                raise ParseError("nested 'if' blocks are not supported", lineno, head.col)
            stack.append((stmt, []))
            continue
        (stack[-1][1] if stack else top).append(stmt)
    if stack:
        opener = stack[-1][0]
        raise ParseError("'if' block is never closed", opener.line, opener.col)
    return CircuitIR(tuple(top))


def _parse_stmt(toks: list[Token]) -> Stmt:
    head = toks[0]
    args: list[str] = []
    outs: list[str] = []
    opts: list[tuple[str, str]] = []
    arrow = False
    for t in toks[1:]:
        if t.text == "->" and not t.quoted:
            if arrow:
                raise ParseError("repeated '->'", t.line, t.col)
            arrow = True
            continue
        if not t.quoted and "=" in t.text and not t.text.startswith("["):
            key, _, val = t.text.partition("=")
            if key in OPTION_KEYS:
                opts.append((key, val))
                continue
            if head.text == "noise" and args[:1] == ["select"]:
                args.append(t.text)
                continue
            raise ParseError(f"unknown option {key!r}", t.line, t.col)
        (outs if arrow else args).append(t.text)
    if arrow and not outs:
        raise ParseError("'->' must be followed by wire names", head.line, head.col)
    op = head.text
    need = {
        "input": 2,
        "prep": 2,
        "gate": 2,
        "unitary": 2,
        "measure": 2,
        "project": 2,
        "classical": 2,
        "cpauli": 3,
        "noise": 3,
        "discard": 1,
        "output": 1,
        "if": 1,
    }
    if len(args) < need.get(op, 0):
        raise ParseError(f"'{op}' needs at least {need[op]} arguments", head.line, head.col)
    if op in ("measure", "project") and len(outs) != 1:
        raise ParseError(f"'{op}' needs '-> <bit>'", head.line, head.col)
    if op == "classical" and not outs:
        raise ParseError("'classical' needs '-> <outputs>'", head.line, head.col)
    if op not in ("measure", "project", "classical") and outs:
        raise ParseError(f"'{op}' takes no '->' outputs", head.line, head.col)
    if op == "noise" and args[0] not in NOISE_KINDS:
        raise ParseError(f"unknown noise kind {args[0]!r}", head.line, toks[1].col)
    if op == "if" and len(args) != 1:
        raise ParseError("'if' takes exactly one control bit", head.line, head.col)
    return Stmt(op, tuple(args), tuple(outs), tuple(opts), line=head.line, col=head.col)


# -- elaboration -------------------------------------------------------------------


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv, ast.Pow: operator.pow}


def _eval_number(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        v = _eval_number(node.operand)
        return v if isinstance(node.op, ast.UAdd) else -v
    if isinstance(node, ast.BinOp):
        a, b = _eval_number(node.left), _eval_number(node.right)
        f = _BINOPS.get(type(node.op))
        if f is not None:
            return f(a, b)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt" and len(node.args) == 1:
        return math.sqrt(_eval_number(node.args[0]))
    if isinstance(node, ast.Name) and node.id in ("i", "j"):
        return 1j
    raise ValueError("unsupported expression")


def parse_matrix(text: str) -> np.ndarray:
    """``[[a, b], [c, d]]`` with numbers, ``i``/``j`` imaginary units and ``sqrt``."""
    try:
        tree = ast.parse(text, mode="eval").body
        if not isinstance(tree, ast.List):
            raise ValueError("matrix must be a list of rows")
        rows = []
        for row in tree.elts:
            if not isinstance(row, ast.List):
                raise ValueError("matrix rows must be lists")
            rows.append([_eval_number(e) for e in row.elts])
        return np.array(rows, dtype=complex)
    except (SyntaxError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"bad matrix literal: {exc}") from None


@dataclass
class _State:
    tensor: CircuitTensor
    names: list[str]  # output wire names, in out_sig order
    noise: list[tuple[str, int]]  # (name, input position) of untraced noise wires
    counter: int = 0


class Elaborator:
    def __init__(self):
        self.inputs: list[tuple[str, object]] = []
        self.state: _State | None = None
        self.used: set[str] = set()

    # helpers
    def _err(self, s: Stmt, msg: str) -> SignatureError:
        return SignatureError(msg, s.line, s.col)

    def _pos(self, s: Stmt, name: str, kind: str | None = None) -> int:
        st = self.state
        if name not in st.names:
            raise self._err(s, f"wire {name!r} is not live")
        i = st.names.index(name)
        w = st.tensor.out_sig[i]
        if kind == "q" and w.kind != "q":
            raise self._err(s, f"wire {name!r} is classical, expected a qubit")
        if kind == "c" and w.kind != "c":
            raise self._err(s, f"wire {name!r} is a qubit, expected a classical wire")
        return i

    def _fresh(self, s: Stmt, names) -> None:
        for n in names:
            if n in self.used:
                raise self._err(s, f"wire name {n!r} already used")
            self.used.add(n)

    def _apply(self, s: Stmt, g: CircuitTensor, consumed: list[str], produced: list[str], noise_names: list[str] = ()) -> None:
        st = self.state
        pos = [st.names.index(n) for n in consumed]
        rest = [n for n in st.names if n not in consumed]
        at = sum(1 for i in range(len(st.names)) if i not in pos and i < min(pos)) if pos else len(rest)
        n_in_before = len(st.tensor.in_sig)
        try:
            st.tensor = apply_on(st.tensor, g, pos, insert_at=at)
        except TensorError as exc:
            raise self._err(s, str(exc)) from None
        st.names = rest[:at] + list(produced) + rest[at:]
        for k, nm in enumerate(noise_names):
            st.noise.append((nm, n_in_before + k))

    def _noise_name(self, s: Stmt, k: int) -> list[str]:
        given = dict(s.opts).get("as")
        if given:
            if k == 1:
                names = [given]
            else:
                names = [f"{given}{i}" for i in range(k)]
        else:
            names = []
            for _ in range(k):
                self.state.counter += 1
                names.append(f"noise{self.state.counter}")
        self._fresh(s, names)
        return names

    def _poly(self, s: Stmt, text: str) -> str:
        try:
            parse_poly(text)
        except PolyError as exc:
            raise ParseError(f"bad polynomial {text!r}: {exc}", s.line, s.col) from None
        return text

    # statements
    def run(self, ir: CircuitIR) -> CircuitTensor:
        for s in ir.statements:
            if s.op == "input":
                if self.state is not None:
                    raise self._err(s, "'input' must precede every other statement")
                self._input(s)
                continue
            if self.state is None:
                self._start()
            getattr(self, "_do_" + s.op)(s)
        if self.state is None:
            self._start()
        return self.state.tensor

    def _input(self, s: Stmt) -> None:
        kind = s.args[0]
        wires = {"qubit": QUBIT, "bit": BIT}
        if kind not in wires:
            raise ParseError(f"unknown wire kind {kind!r} (use qubit or bit)", s.line, s.col)
        self._fresh(s, s.args[1:])
        self.inputs.extend((n, wires[kind]) for n in s.args[1:])

    def _start(self) -> None:
        sig = tuple(w for _, w in self.inputs)
        self.state = _State(identity_tensor(sig), [n for n, _ in self.inputs], [])

    def _do_prep(self, s: Stmt) -> None:
        name, wires = s.args[0], list(s.args[1:])
        if name not in STATE_GENS:
            raise ParseError(f"unknown state {name!r}", s.line, s.col)
        t = state_prep(name)
        if len(t.out_sig) != len(wires):
            raise self._err(s, f"state {name!r} has {len(t.out_sig)} qubits, got {len(wires)} names")
        self._fresh(s, wires)
        self._apply(s, t, [], wires)

    def _do_gate(self, s: Stmt) -> None:
        name, wires = s.args[0], list(s.args[1:])
        try:
            g = gate(name)
        except TensorError:
            raise ParseError(f"unknown gate {name!r}", s.line, s.col) from None
        if len(g.in_sig) != len(wires):
            raise self._err(s, f"gate {name} acts on {len(g.in_sig)} qubits, got {len(wires)}")
        for w in wires:
            self._pos(s, w, "q")
        self._apply(s, g, wires, wires)

    def _do_unitary(self, s: Stmt) -> None:
        try:
            u = parse_matrix(s.args[0])
            g = tensor_from_unitary(u)
        except (ValueError, TensorError) as exc:
            raise ParseError(str(exc), s.line, s.col) from None
        wires = list(s.args[1:])
        if len(g.in_sig) != len(wires):
            raise self._err(s, f"matrix acts on {len(g.in_sig)} qubits, got {len(wires)}")
        for w in wires:
            self._pos(s, w, "q")
        self._apply(s, g, wires, wires)

    def _do_measure(self, s: Stmt) -> None:
        p, q = s.args[0], s.args[1]
        if len(s.args) != 2 or p not in ("X", "Y", "Z"):
            raise ParseError("usage: measure X|Y|Z <qubit> -> <bit>", s.line, s.col)
        self._pos(s, q, "q")
        self._fresh(s, s.outs)
        self._apply(s, tensor_destructive_meas(p), [q], list(s.outs))

    def _do_project(self, s: Stmt) -> None:
        try:
            sp = SignedPauli.from_str(s.args[0])
        except PauliError as exc:
            raise ParseError(str(exc), s.line, s.col) from None
        wires = list(s.args[1:])
        if sp.n != len(wires):
            raise self._err(s, f"Pauli {s.args[0]} has {sp.n} qubits, got {len(wires)} wires")
        for w in wires:
            self._pos(s, w, "q")
        self._fresh(s, s.outs)
        try:
            t = tensor_projective_meas(sp)
        except (TensorError, PauliError) as exc:
            raise self._err(s, str(exc)) from None
        self._apply(s, t, wires, list(s.outs) + wires)

    def _do_classical(self, s: Stmt) -> None:
        name, ins = s.args[0], list(s.args[1:])
        if name not in CLASSICAL_FUNCTIONS:
            raise ParseError(f"unknown classical function {name!r}", s.line, s.col)
        t = classical_gate(name)
        if len(t.in_sig) != len(ins) or len(t.out_sig) != len(s.outs):
            raise self._err(s, f"{name} maps {len(t.in_sig)} bits to {len(t.out_sig)}")
        for w in ins:
            self._pos(s, w, "c")
        self._fresh(s, s.outs)
        self._apply(s, t, ins, list(s.outs))

    def _do_cpauli(self, s: Stmt) -> None:
        p, bit, wires = s.args[0], s.args[1], list(s.args[2:])
        try:
            ps = PauliString.from_str(p)
        except PauliError as exc:
            raise ParseError(str(exc), s.line, s.col) from None
        if ps.n != len(wires):
            raise self._err(s, f"Pauli {p} has {ps.n} qubits, got {len(wires)} wires")
        self._pos(s, bit, "c")
        for w in wires:
            self._pos(s, w, "q")
        self._apply(s, tensor_controlled_pauli(ps), [bit] + wires, wires)

    def _noise_tensor(self, s: Stmt) -> tuple[CircuitTensor, list[str], int]:
        kind, rest = s.args[0], list(s.args[1:])
        opts = dict(s.opts)
        if kind == "select":
            wires = [a for a in rest if "=" not in a]
            pairs = [a.partition("=") for a in rest if "=" in a]
            n = len(wires)
            weights = ["0"] * 4 ** n
            for p, _, w in pairs:
                try:
                    ps = PauliString.from_str(p)
                except PauliError as exc:
                    raise ParseError(str(exc), s.line, s.col) from None
                if ps.n != n:
                    raise self._err(s, f"channel {p} does not act on {n} qubits")
                weights[pauli_mode_index(ps)] = self._poly(s, w)
            t = tensor_selector(pauli_channels(n), dims=(2,) * (2 * n), weights=weights)
            return t, wires, 1
        var, wires = rest[0], rest[1:]
        self._poly(s, var)
        if kind == "bitflip":
            if len(wires) != 1:
                raise ParseError("usage: noise bitflip <weight> <bit>", s.line, s.col)
            ident = self._poly(s, opts.get("identity", "1"))
            return bitflip_noise(var, ident), wires, 1
        if not wires:
            raise ParseError(f"noise {kind} needs at least one qubit", s.line, s.col)
        if kind == "depolarizing":
            return depolarizing_noise(len(wires), var), wires, 1
        ident = self._poly(s, opts.get("identity", "1"))
        one = pauli_noise(1, ident, var)
        t = kron_all([one] * len(wires))
        # kron interleaves (noise, qubit) pairs; move noise wires to the front
        k = len(wires)
        t = permute(t, [2 * i for i in range(k)] + [2 * i + 1 for i in range(k)])
        return t, wires, k

    def _do_noise(self, s: Stmt) -> None:
        t, wires, k = self._noise_tensor(s)
        want = "c" if s.args[0] == "bitflip" else "q"
        for w in wires:
            self._pos(s, w, want)
        names = self._noise_name(s, k)
        self._apply(s, t, wires, wires, names)

    def _do_discard(self, s: Stmt) -> None:
        for w in s.args:
            i = self._pos(s, w)
            self._apply(s, discard(self.state.tensor.out_sig[i]), [w], [])

    def _do_trace(self, s: Stmt) -> None:
        st = self.state
        names = list(s.args) or [n for n, _ in st.noise]
        by_name = dict(st.noise)
        for n in names:
            if n not in by_name:
                raise self._err(s, f"{n!r} is not an untraced noise wire")
        idx = [by_name[n] for n in names]
        try:
            st.tensor = trace_weights(st.tensor, wires=idx)
        except TensorError as exc:
            raise self._err(s, str(exc)) from None
        remaining = [(n, p) for n, p in st.noise if n not in names]
        # re-index the surviving noise inputs
        removed = sorted(idx)
        st.noise = [(n, p - sum(1 for r in removed if r < p)) for n, p in remaining]

    def _do_output(self, s: Stmt) -> None:
        st = self.state
        if sorted(s.args) != sorted(st.names) or len(set(s.args)) != len(s.args):
            raise self._err(s, f"output must list every live wire exactly once: {' '.join(st.names)}")
        order = [st.names.index(n) for n in s.args]
        st.tensor = permute(st.tensor, out_perm=order)
        st.names = list(s.args)

    def _do_if(self, s: Stmt) -> None:
        bit = s.args[0]
        self._pos(s, bit, "c")
        wires: list[str] = []
        for b in s.body:
            if b.op not in ("gate", "unitary", "noise"):
                raise self._err(b, f"'{b.op}' is not allowed inside an 'if' block")
            for w in _wires_of(b):
                if w == bit:
                    raise self._err(b, "the control bit cannot be used inside its own block")
                if w not in wires:
                    self._pos(b, w)
                    wires.append(w)
        sub = Elaborator()
        sub.used = self.used
        sub.inputs = [(w, self.state.tensor.out_sig[self.state.names.index(w)]) for w in wires]
        sub._start()
        sub.state.counter = self.state.counter
        for b in s.body:
            getattr(sub, "_do_" + b.op)(b)
        self.state.counter = sub.state.counter
        body = permute(sub.state.tensor, out_perm=[sub.state.names.index(w) for w in wires])
        noise_names = [n for n, _ in sub.state.noise]
        ctrl = controlled_channel(body)
        self._apply(s, ctrl, [bit] + wires, wires, noise_names)


def _wires_of(s: Stmt) -> list[str]:
    """Wire operands of a statement allowed inside an if block."""
    if s.op != "noise":
        return list(s.args[1:])
    if s.args[0] == "select":
        return [a for a in s.args[1:] if "=" not in a]
    return list(s.args[2:])


def elaborate(ir: CircuitIR, trace: bool = False) -> CircuitTensor:
    """Build the tensor of ``ir``; ``trace=True`` also contracts leftover noise wires."""
    el = Elaborator()
    t = el.run(ir)
    if trace and el.state.noise:
        t = trace_weights(t, wires=[p for _, p in el.state.noise])
    return t


def run_circuit(text: str, trace: bool = False) -> CircuitTensor:
    return elaborate(parse_circuit(text), trace=trace)


def iter_statements(ir: CircuitIR) -> Iterator[Stmt]:
    for s in ir.statements:
        yield s
        yield from s.body
