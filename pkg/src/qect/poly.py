"""Sparse multivariate polynomials with exact or floating coefficients.

A :class:`Polynomial` maps exponent tuples (indexed by a :class:`VarTable`)
to coefficients.  Two coefficient rings are supported:

* ``Ring.EXACT``: ``int``/``Fraction`` for real values and :class:`QQi`
  (Gaussian rationals) when an imaginary part is present.
* ``Ring.FLOAT``: Python ``complex``.

Polynomials may carry a total-degree cap; monomials above the cap are
dropped eagerly, so products of capped polynomials never materialise them.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number
from typing import Any, Iterable, Iterator, Mapping, Union

FLOAT_ZERO = 1e-12
FLOAT_TOL = 1e-9


class PolyError(ValueError):
    pass


class Ring(enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


# -- exact complex coefficients ----------------------------------------------------


class QQi:
    """Gaussian rational ``re + i*im`` with ``Fraction`` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Any = 0, im: Any = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(v) -> "QQi":
        if isinstance(v, QQi):
            return v
        if isinstance(v, (int, Fraction)):
            return QQi(v, 0)
        if isinstance(v, complex):
            raise PolyError("cannot mix float complex into the exact ring")
        return NotImplemented

    def __add__(self, o):
        o = QQi._lift(o)
        if o is NotImplemented:
            return o
        return _simplify(QQi(self.re + o.re, self.im + o.im))

    __radd__ = __add__

    def __sub__(self, o):
        o = QQi._lift(o)
        if o is NotImplemented:
            return o
        return _simplify(QQi(self.re - o.re, self.im - o.im))

    def __rsub__(self, o):
        o = QQi._lift(o)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, o):
        o = QQi._lift(o)
        if o is NotImplemented:
            return o
        return _simplify(QQi(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = QQi._lift(o)
        if o is NotImplemented:
            return o
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("QQi division by zero")
        return _simplify(QQi((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d))

    def __rtruediv__(self, o):
        o = QQi._lift(o)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __pow__(self, e: int):
        out: Any = 1
        for _ in range(e):
            out = out * self
        return out

    def conjugate(self):
        return _simplify(QQi(self.re, -self.im))

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        if isinstance(o, QQi):
            return self.re == o.re and self.im == o.im
        if isinstance(o, complex):
            return complex(self) == o
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"


Coeff = Union[int, Fraction, QQi, complex]


def _simplify(c):
    if isinstance(c, QQi):
        if c.im == 0:
            c = c.re
        else:
            return c
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _is_zero(c, ring: Ring) -> bool:
    if ring is Ring.FLOAT:
        return abs(c) < FLOAT_ZERO
    return not c


def to_exact(v) -> Coeff:
    """Convert a scalar into the exact ring (rejects floats)."""
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, (int, Fraction, QQi)):
        return _simplify(v)
    if isinstance(v, float) and v.is_integer():
        return int(v)
    raise PolyError(f"value {v!r} is not exact")


def _coerce(v, ring: Ring) -> Coeff:
    if ring is Ring.FLOAT:
        return complex(v)
    return to_exact(v)


def conj(c: Coeff) -> Coeff:
    if isinstance(c, (QQi, complex)):
        return c.conjugate()
    return c


def coeff_close(a, b, tol: float = FLOAT_TOL) -> bool:
    return abs(complex(a) - complex(b)) <= tol


# -- variable tables ---------------------------------------------------------------


@dataclass(frozen=True)
class VarTable:
    names: tuple[str, ...]
    index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise PolyError(f"duplicate variable names in {names}")
        object.__setattr__(self, "index", {n: i for i, n in enumerate(names)})

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self.index

    def __iter__(self):
        return iter(self.names)

    def union(self, other: "VarTable | Iterable[str]") -> "VarTable":
        names = list(self.names)
        for n in other:
            if n not in self.index:
                names.append(n)
        return VarTable(tuple(names))


def vars_(*names: str) -> VarTable:
    return VarTable(tuple(names))


# -- polynomials -------------------------------------------------------------------


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), tuple(-e for e in exp))


class Polynomial:
    """Immutable sparse polynomial; build with the classmethods or arithmetic."""

    __slots__ = ("table", "terms", "ring", "cap")

    def __init__(
        self,
        table: VarTable,
        terms: Mapping[tuple[int, ...], Any] | None = None,
        ring: Ring = Ring.EXACT,
        cap: int | None = None,
        *,
        _trusted: bool = False,
    ):
        self.table = table
        self.ring = ring
        self.cap = cap
        if _trusted:
            self.terms = dict(terms or {})
            return
        out: dict[tuple[int, ...], Coeff] = {}
        nv = len(table)
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nv:
                raise PolyError(f"exponent {exp} does not match {nv} variables")
            if any(e < 0 for e in exp):
                raise PolyError("negative exponent")
            if cap is not None and sum(exp) > cap:
                continue
            c = _coerce(c, ring)
            if exp in out:
                c = out[exp] + c
            if _is_zero(c, ring):
                out.pop(exp, None)
            else:
                out[exp] = _simplify(c) if ring is Ring.EXACT else c
        self.terms = out

    # constructors
    @classmethod
    def zero(cls, table: VarTable, ring: Ring = Ring.EXACT, cap: int | None = None) -> "Polynomial":
        return cls(table, {}, ring, cap, _trusted=True)

    @classmethod
    def const(cls, table: VarTable, c, ring: Ring = Ring.EXACT, cap: int | None = None) -> "Polynomial":
        return cls(table, {(0,) * len(table): c}, ring, cap)

    @classmethod
    def var(cls, table: VarTable, name: str, ring: Ring = Ring.EXACT, cap: int | None = None) -> "Polynomial":
        if name not in table:
            raise PolyError(f"unknown variable {name!r}")
        exp = [0] * len(table)
        exp[table.index[name]] = 1
        return cls(table, {tuple(exp): 1}, ring, cap)

    @classmethod
    def parse(cls, text: str, table: VarTable | None = None, ring: Ring = Ring.EXACT, cap: int | None = None) -> "Polynomial":
        return parse_poly(text, table, ring, cap)

    # basic properties
    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def constant(self) -> Coeff:
        return self.terms.get((0,) * len(self.table), 0 if self.ring is Ring.EXACT else 0j)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def coeff(self, monomial: Mapping[str, int] | tuple[int, ...] | str = ()) -> Coeff:
        exp = self._exp(monomial)
        return self.terms.get(exp, 0 if self.ring is Ring.EXACT else 0j)

    def _exp(self, monomial) -> tuple[int, ...]:
        if isinstance(monomial, tuple) and len(monomial) == len(self.table) and all(isinstance(e, int) for e in monomial):
            return monomial
        if isinstance(monomial, str):
            monomial = _parse_monomial(monomial)
        exp = [0] * len(self.table)
        for name, e in dict(monomial).items():
            if name not in self.table:
                if e:
                    return (-1,)
                continue
            exp[self.table.index[name]] = e
        return tuple(exp)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Coeff]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], Coeff]]:
        return iter(self.sorted_terms())

    # structural helpers
    def _check(self, other: "Polynomial") -> None:
        if self.table != other.table:
            raise PolyError(f"variable table mismatch: {self.table.names} vs {other.table.names}")
        if self.ring is not other.ring:
            raise PolyError(f"ring mismatch: {self.ring.value} vs {other.ring.value}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, Number) or isinstance(other, QQi):
            return Polynomial.const(self.table, other, self.ring, self.cap)
        return NotImplemented

    def _merge_cap(self, other: "Polynomial") -> int | None:
        if self.cap is None:
            return other.cap
        if other.cap is None:
            return self.cap
        return min(self.cap, other.cap)

    def extend(self, table: VarTable) -> "Polynomial":
        """Re-express over a larger table that contains every current variable."""
        if table == self.table:
            return self
        missing = [n for n in self.table if n not in table]
        if missing:
            raise PolyError(f"target table lacks variables {missing}")
        idx = [table.index[n] for n in self.table]
        out = {}
        for exp, c in self.terms.items():
            e = [0] * len(table)
            for i, v in zip(idx, exp):
                e[i] = v
            out[tuple(e)] = c
        return Polynomial(table, out, self.ring, self.cap, _trusted=True)

    def to_ring(self, ring: Ring) -> "Polynomial":
        if ring is self.ring:
            return self
        if ring is Ring.FLOAT:
            return Polynomial(self.table, {e: complex(c) for e, c in self.terms.items()}, ring, self.cap)
        return Polynomial(self.table, {e: to_exact(c) for e, c in self.terms.items()}, ring, self.cap)

    def truncate(self, cap: int | None) -> "Polynomial":
        if cap is None:
            return Polynomial(self.table, self.terms, self.ring, None, _trusted=True)
        return Polynomial(self.table, {e: c for e, c in self.terms.items() if sum(e) <= cap}, self.ring, cap, _trusted=True)

    def drop_unused(self) -> "Polynomial":
        used = [i for i in range(len(self.table)) if any(e[i] for e in self.terms)]
        table = VarTable(tuple(self.table.names[i] for i in used))
        return Polynomial(table, {tuple(e[i] for i in used): c for e, c in self.terms.items()}, self.ring, self.cap, _trusted=True)

    def rename(self, mapping: Mapping[str, str]) -> "Polynomial":
        """Rename variables; several names mapped to one target are merged."""
        names: list[str] = []
        for n in self.table:
            t = mapping.get(n, n)
            if t not in names:
                names.append(t)
        table = VarTable(tuple(names))
        idx = [table.index[mapping.get(n, n)] for n in self.table]
        out: dict[tuple[int, ...], Coeff] = {}
        for exp, c in self.terms.items():
            e = [0] * len(table)
            for i, v in zip(idx, exp):
                e[i] += v
            e = tuple(e)
            out[e] = out.get(e, 0) + c
        return Polynomial(table, out, self.ring, self.cap)

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return Polynomial(self.table, out, self.ring, self._merge_cap(other))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.table, {e: -c for e, c in self.terms.items()}, self.ring, self.cap, _trusted=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (Number, QQi)) and not isinstance(other, Polynomial):
            c = _coerce(other, self.ring)
            return Polynomial(self.table, {e: v * c for e, v in self.terms.items()}, self.ring, self.cap)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        cap = self._merge_cap(other)
        out: dict[tuple[int, ...], Coeff] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if cap is not None and d1 + sum(e2) > cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return Polynomial(self.table, out, self.ring, cap)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (Number, QQi)):
            return NotImplemented
        if self.ring is Ring.FLOAT:
            return self * (1 / complex(other))
        other = to_exact(other)
        inv = QQi(1) / other if isinstance(other, QQi) else Fraction(1) / Fraction(other)
        return self * _simplify(inv)

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative power")
        out = Polynomial.const(self.table, 1, self.ring, self.cap)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Polynomial":
        return Polynomial(self.table, {e: conj(c) for e, c in self.terms.items()}, self.ring, self.cap, _trusted=True)

    # comparison
    def __eq__(self, other):
        if isinstance(other, (Number, QQi)) and not isinstance(other, Polynomial):
            other = Polynomial.const(self.table, other, self.ring)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.table != other.table:
            a, b = _unify(self, other)
            return a == b
        if self.ring is Ring.FLOAT or other.ring is Ring.FLOAT:
            return self.approx_equal(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def approx_equal(self, other: "Polynomial", tol: float = FLOAT_TOL) -> bool:
        a, b = _unify(self, other)
        for e in set(a.terms) | set(b.terms):
            if not coeff_close(a.terms.get(e, 0), b.terms.get(e, 0), tol):
                return False
        return True

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_poly(self)

    # serialization
    def to_json(self) -> dict:
        terms = []
        for exp, c in self.sorted_terms():
            terms.append({"exp": list(exp), "coeff": _coeff_json(c)})
        return {"vars": list(self.table.names), "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping, ring: Ring | None = None, cap: int | None = None) -> "Polynomial":
        table = VarTable(tuple(data["vars"]))
        terms = {}
        floaty = False
        for t in data["terms"]:
            c, is_float = _coeff_from_json(t["coeff"])
            floaty |= is_float
            terms[tuple(t["exp"])] = c
        r = ring or (Ring.FLOAT if floaty else Ring.EXACT)
        return cls(table, terms, r, cap)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)


def _coeff_json(c) -> dict:
    if isinstance(c, complex):
        return {"re": c.real, "im": c.imag}
    if isinstance(c, QQi):
        re, im = c.re, c.im
    else:
        re, im = Fraction(c), Fraction(0)
    return {"num": str(re.numerator), "den": str(re.denominator), "inum": str(im.numerator), "iden": str(im.denominator)}


def _coeff_from_json(d: Mapping) -> tuple[Coeff, bool]:
    if "re" in d:
        return complex(d["re"], d.get("im", 0.0)), True
    re = Fraction(int(d["num"]), int(d["den"]))
    im = Fraction(int(d.get("inum", 0)), int(d.get("iden", 1)))
    return _simplify(QQi(re, im)), False


def _unify(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    table = a.table.union(b.table)
    a, b = a.extend(table), b.extend(table)
    if a.ring is not b.ring:
        a, b = a.to_ring(Ring.FLOAT), b.to_ring(Ring.FLOAT)
    return a, b


def unify(*polys: Polynomial) -> list[Polynomial]:
    """Bring polynomials onto a common table and ring (EXACT promotes to FLOAT)."""
    table = polys[0].table
    for p in polys[1:]:
        table = table.union(p.table)
    ring = Ring.FLOAT if any(p.ring is Ring.FLOAT for p in polys) else Ring.EXACT
    return [p.extend(table).to_ring(ring) for p in polys]


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a * b


LinearForm = Union[Polynomial, Mapping[str, Any]]


def _as_linear(form: LinearForm, table: VarTable, ring: Ring, cap: int | None) -> Polynomial:
    if isinstance(form, Polynomial):
        if form.degree() > 1:
            raise PolyError("substitution image is not linear")
        return form.extend(table.union(form.table)).to_ring(ring) if form.table != table else form.to_ring(ring)
    out = Polynomial.zero(table, ring, cap)
    for name, c in form.items():
        if name in (1, "1", ""):
            out = out + Polynomial.const(table, c, ring, cap)
        else:
            out = out + Polynomial.var(table, name, ring, cap) * _coerce(c, ring)
    return out


def substitute_linear(
    p: Polynomial,
    mapping: Mapping[str, LinearForm],
    target: VarTable | None = None,
    cap: int | None = None,
) -> Polynomial:
    """Replace each mapped variable by a linear form over ``target``.

    Unmapped variables are kept (and must then exist in ``target``).  The
    output cap is ``cap`` if given, otherwise the input's cap.
    """
    for name in mapping:
        if name not in p.table:
            raise PolyError(f"unknown variable {name!r}")
    cap = p.cap if cap is None else cap
    if target is None:
        names = [n for n in p.table if n not in mapping]
        for form in mapping.values():
            fnames = form.table.names if isinstance(form, Polynomial) else [k for k in form if k not in (1, "1", "")]
            names.extend(n for n in fnames if n not in names)
        target = VarTable(tuple(names))
    images: list[Polynomial] = []
    for name in p.table:
        if name in mapping:
            img = _as_linear(mapping[name], target, p.ring, cap)
            if img.table != target:
                raise PolyError("substitution images must share one target table")
        else:
            if name not in target:
                raise PolyError(f"unmapped variable {name!r} missing from target table")
            img = Polynomial.var(target, name, p.ring, cap)
        images.append(img)
    one = Polynomial.const(target, 1, p.ring, cap)
    power_cache: list[dict[int, Polynomial]] = [{0: one, 1: img} for img in images]

    def power(i: int, e: int) -> Polynomial:
        cache = power_cache[i]
        if e not in cache:
            cache[e] = power(i, e - 1) * images[i]
        return cache[e]

    acc: dict[tuple[int, ...], Coeff] = {}
    for exp, c in p.terms.items():
        term = Polynomial.const(target, c, p.ring, cap)
        for i, e in enumerate(exp):
            if e:
                term = term * power(i, e)
                if term.is_zero():
                    break
        for e2, c2 in term.terms.items():
            acc[e2] = acc[e2] + c2 if e2 in acc else c2
    return Polynomial(target, acc, p.ring, cap)


def specialize(p: Polynomial, values: Mapping[str, Any]) -> Polynomial:
    """Partially evaluate: set the named variables to scalar values and drop them."""
    keep = [i for i, n in enumerate(p.table.names) if n not in values]
    fixed = [(i, _coerce(values[n], p.ring)) for i, n in enumerate(p.table.names) if n in values]
    table = VarTable(tuple(p.table.names[i] for i in keep))
    out: dict[tuple[int, ...], Coeff] = {}
    for exp, c in p.terms.items():
        for i, v in fixed:
            if exp[i]:
                c = c * v ** exp[i]
        e = tuple(exp[i] for i in keep)
        out[e] = out[e] + c if e in out else c
    return Polynomial(table, out, p.ring, p.cap)


def evaluate(p: Polynomial, assignment: Mapping[str, Any]) -> Coeff:
    for i, name in enumerate(p.table.names):
        if name not in assignment and any(e[i] for e in p.terms):
            raise PolyError(f"no value assigned to variable {name!r}")
    values = {n: assignment.get(n, 0) for n in p.table.names}
    q = specialize(p, values)
    return q.constant()


# -- text form ---------------------------------------------------------------------


def _fmt_coeff(c) -> str:
    if isinstance(c, complex):
        if abs(c.imag) < FLOAT_ZERO:
            return f"{c.real:.12g}"
        return f"({c.real:.12g}{c.imag:+.12g}j)"
    if isinstance(c, QQi):
        return f"({c.re}{'+' if c.im >= 0 else '-'}{abs(c.im)}i)"
    return str(c)


def format_monomial(table: VarTable, exp: tuple[int, ...]) -> str:
    parts = []
    for n, e in zip(table.names, exp):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for exp, c in p.sorted_terms():
        mono = format_monomial(p.table, exp)
        neg = False
        if isinstance(c, (int, Fraction)) and c < 0:
            neg, c = True, -c
        elif isinstance(c, complex) and abs(c.imag) < FLOAT_ZERO and c.real < 0:
            neg, c = True, -c
        cs = _fmt_coeff(c)
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        out.append((neg, body))
    head = ("-" if out[0][0] else "") + out[0][1]
    return head + "".join((" - " if neg else " + ") + body for neg, body in out[1:])


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")
_NUM_RE = re.compile(r"^(\d+)(?:/(\d+))?$")
_FACTOR_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")


def _parse_monomial(text: str) -> dict[str, int]:
    out: dict[str, int] = {}
    for f in re.split(r"[*\s]+", text.strip()):
        if not f:
            continue
        m = _FACTOR_RE.match(f)
        if not m:
            raise PolyError(f"cannot parse factor {f!r}")
        out[m.group(1)] = out.get(m.group(1), 0) + int(m.group(2) or 1)
    return out


def parse_poly(text: str, table: VarTable | None = None, ring: Ring = Ring.EXACT, cap: int | None = None) -> Polynomial:
    """Parse ``"1 + 60*m - 3/2*c^2*z"``; factors are joined by ``*`` or spaces.

    Exponents use ``^``; each term has at most one leading rational number.
    """
    text = text.replace("−", "-").strip()
    if not text:
        raise PolyError("empty polynomial text")
    if "**" in text:
        raise PolyError("use '^' for exponents, not '**'")
    raw: list[tuple[Fraction, dict[str, int]]] = []
    pos = 0
    if text[0] not in "+-":
        text = "+" + text
    for m in re.finditer(r"([+-])([^+-]*)", text):
        if m.start() != pos:
            raise PolyError(f"unexpected text near {text[pos:m.start()]!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).strip()
        if not body:
            raise PolyError("dangling sign")
        factors = [f for f in re.split(r"[*\s]+", body) if f]
        coeff = Fraction(1)
        if factors and _NUM_RE.match(factors[0]):
            coeff = Fraction(factors.pop(0))
        mono = _parse_monomial(" ".join(factors))
        raw.append((sign * coeff, mono))
    names: list[str] = [] if table is None else list(table.names)
    for _, mono in raw:
        for n in mono:
            if n not in names:
                if table is not None:
                    raise PolyError(f"variable {n!r} not in table")
                names.append(n)
    table = table or VarTable(tuple(names))
    terms: dict[tuple[int, ...], Coeff] = {}
    for c, mono in raw:
        exp = [0] * len(table)
        for n, e in mono.items():
            exp[table.index[n]] += e
        e = tuple(exp)
        terms[e] = terms.get(e, 0) + c
    return Polynomial(table, terms, ring, cap)
