"""Symplectic Pauli algebra and stabilizer-group machinery.

Pauli strings are stored as a pair of Python ints used as bitmasks
(bit ``i`` is qubit ``i``).  Phases live outside the string as an exponent
of ``i``; a :class:`PauliString` is always an element of the positive
basis {I, X, Y, Z}^n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

_CHARS = "IXZY"  # index = x | (z << 1)
_PHASE_STR = {0: "+", 1: "+i", 2: "-", 3: "-i"}


class PauliError(ValueError):
    pass


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliString:
    n: int
    x: int = 0
    z: int = 0

    @classmethod
    def from_str(cls, s: str) -> "PauliString":
        x = z = 0
        for i, c in enumerate(s.upper()):
            if c == "X":
                x |= 1 << i
            elif c == "Z":
                z |= 1 << i
            elif c == "Y":
                x |= 1 << i
                z |= 1 << i
            elif c != "I":
                raise PauliError(f"invalid Pauli character {c!r}")
        return cls(len(s), x, z)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0)

    def __str__(self) -> str:
        return "".join(self[i] for i in range(self.n))

    def __repr__(self) -> str:
        return f"PauliString({str(self)!r})"

    def __getitem__(self, i: int) -> str:
        return _CHARS[((self.x >> i) & 1) | (((self.z >> i) & 1) << 1)]

    @property
    def support(self) -> int:
        return self.x | self.z

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    def is_identity(self) -> bool:
        return not (self.x or self.z)

    def restrict(self, qubits: Sequence[int]) -> "PauliString":
        x = z = 0
        for j, q in enumerate(qubits):
            x |= ((self.x >> q) & 1) << j
            z |= ((self.z >> q) & 1) << j
        return PauliString(len(qubits), x, z)

    def tensor(self, other: "PauliString") -> "PauliString":
        return PauliString(self.n + other.n, self.x | (other.x << self.n), self.z | (other.z << self.n))

    def matrix(self):
        import numpy as np

        from .tensor import PAULI_MATRICES

        out = np.ones((1, 1), dtype=complex)
        # qubit 0 is the leftmost tensor factor
        for i in range(self.n):
            out = np.kron(out, PAULI_MATRICES[self[i]])
        return out


@dataclass(frozen=True)
class SignedPauli:
    """``i**phase * pauli``."""

    phase: int
    pauli: PauliString

    def __post_init__(self):
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def from_str(cls, s: str) -> "SignedPauli":
        s = s.strip()
        phase = 0
        for prefix, p in (("+i", 1), ("-i", 3), ("i", 1), ("+", 0), ("-", 2)):
            if s.startswith(prefix) and (len(s) == len(prefix) or s[len(prefix)] in "IXYZixyz"):
                phase = p
                s = s[len(prefix):]
                break
        return cls(phase, PauliString.from_str(s))

    @property
    def n(self) -> int:
        return self.pauli.n

    @property
    def sign(self) -> int:
        """Real sign; raises for phases +-i."""
        if self.phase & 1:
            raise PauliError(f"phase of {self} is not real")
        return 1 - self.phase

    def __mul__(self, other: "SignedPauli") -> "SignedPauli":
        return mul(self, other)

    def __neg__(self) -> "SignedPauli":
        return SignedPauli(self.phase + 2, self.pauli)

    def __str__(self) -> str:
        return _PHASE_STR[self.phase] + str(self.pauli)


def _check_len(a: PauliString, b: PauliString) -> None:
    if a.n != b.n:
        raise PauliError(f"length mismatch: {a.n} != {b.n}")


def product_phase(a: PauliString, b: PauliString) -> int:
    """Exponent e with a*b = i**e * Q, Q in the positive basis."""
    x3, z3 = a.x ^ b.x, a.z ^ b.z
    e = _popcount(a.x & a.z) + _popcount(b.x & b.z) + 2 * _popcount(a.z & b.x) - _popcount(x3 & z3)
    return e % 4


def mul(a: SignedPauli | PauliString, b: SignedPauli | PauliString) -> SignedPauli:
    if isinstance(a, PauliString):
        a = SignedPauli(0, a)
    if isinstance(b, PauliString):
        b = SignedPauli(0, b)
    _check_len(a.pauli, b.pauli)
    p, q = a.pauli, b.pauli
    return SignedPauli(a.phase + b.phase + product_phase(p, q), PauliString(p.n, p.x ^ q.x, p.z ^ q.z))


def symplectic(a: PauliString, b: PauliString) -> int:
    """0 if a, b commute else 1."""
    return (_popcount(a.x & b.z) + _popcount(a.z & b.x)) & 1


def omega(a: PauliString | SignedPauli, b: PauliString | SignedPauli) -> int:
    """Commutation phase: +1 or -1."""
    if isinstance(a, SignedPauli):
        a = a.pauli
    if isinstance(b, SignedPauli):
        b = b.pauli
    _check_len(a, b)
    return -1 if symplectic(a, b) else 1


def mu(p: SignedPauli) -> complex | int:
    """Scalar relating ``p`` to its positive-basis element: p = mu(p) * Q."""
    return (1, 1j, -1, -1j)[p.phase]


def all_paulis(n: int) -> Iterator[PauliString]:
    for x in range(1 << n):
        for z in range(1 << n):
            yield PauliString(n, x, z)


# -- GF(2) linear algebra on symplectic vectors packed as (x | z << n) ------------

def _pack(p: PauliString) -> int:
    return p.x | (p.z << p.n)


def _unpack(v: int, n: int) -> PauliString:
    mask = (1 << n) - 1
    return PauliString(n, v & mask, v >> n)


def _reduce(v: int, basis: dict[int, int]) -> int:
    """Reduce v against an echelon basis keyed by pivot bit (lowest set bit)."""
    while v:
        piv = v & -v
        b = basis.get(piv)
        if b is None:
            return v
        v ^= b
    return 0


def _insert(v: int, basis: dict[int, int]) -> bool:
    v = _reduce(v, basis)
    if not v:
        return False
    piv = v & -v
    # keep the basis fully reduced at its pivots
    for k, b in list(basis.items()):
        if b & piv:
            basis[k] = b ^ v
    basis[piv] = v
    return True


def gf2_rank(paulis: Iterable[PauliString]) -> int:
    basis: dict[int, int] = {}
    return sum(_insert(_pack(p), basis) for p in paulis)


def _kernel_basis(rows: Sequence[PauliString], n: int) -> list[PauliString]:
    """Paulis commuting with every row (symplectic kernel), lowest-index pivoting."""
    # Condition for P: <row.x, P.z> + <row.z, P.x> = 0.  Work in the packed
    # coordinates v = P.x | P.z << n, with row functional r = row.z | row.x << n.
    funcs = [(r.z | (r.x << n)) for r in rows]
    width = 2 * n
    # Gaussian elimination on the functionals, reduced row echelon form.
    pivots: list[int] = []
    mat = list(funcs)
    r = 0
    for col in range(width):
        bit = 1 << col
        sel = next((i for i in range(r, len(mat)) if mat[i] & bit), None)
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i] & bit:
                mat[i] ^= mat[r]
        pivots.append(col)
        r += 1
    mat = mat[:r]
    free = [c for c in range(width) if c not in pivots]
    out = []
    for f in free:
        v = 1 << f
        for row, pc in zip(mat, pivots):
            if row & (1 << f):
                v |= 1 << pc
        out.append(_unpack(v, n))
    return out


# -- group iteration ----------------------------------------------------------------

DEFAULT_GROUP_CAP = 30


def iter_group(
    gens: Sequence[SignedPauli],
    start: int = 0,
    stop: int | None = None,
    cap: int = DEFAULT_GROUP_CAP,
) -> Iterator[SignedPauli]:
    """Yield every subset product of ``gens`` exactly once, in Gray-code order.

    Index ``i`` of the full range corresponds to the subset ``i ^ (i >> 1)``;
    ``start``/``stop`` select a contiguous slice of that index space so that
    disjoint slices can be enumerated independently.  Each step costs one
    multiplication.  Products are taken in increasing generator order.
    """
    m = len(gens)
    if m > cap:
        raise PauliError(f"{m} generators exceeds group iteration cap {cap}")
    if m == 0:
        if start == 0 and (stop is None or stop > 0):
            yield SignedPauli(0, PauliString.identity(0))
        return
    n = gens[0].n
    total = 1 << m
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return

    def subset_product(mask: int) -> SignedPauli:
        acc = SignedPauli(0, PauliString.identity(n))
        for j in range(m):
            if mask >> j & 1:
                acc = mul(acc, gens[j])
        return acc

    gray = start ^ (start >> 1)
    cur = subset_product(gray)
    yield cur
    for i in range(start + 1, stop):
        j = (i & -i).bit_length() - 1
        # toggling generator j: cur = prod_{l in S} g_l in increasing order;
        # toggling j in a product of pairwise commuting (up to sign) elements
        cur = _toggle(cur, gens, gray, j)
        gray ^= 1 << j
        yield cur


def _toggle(cur: SignedPauli, gens: Sequence[SignedPauli], mask: int, j: int) -> SignedPauli:
    # The canonical product is g_{a1} g_{a2} ... in increasing index order.  For
    # commuting generators multiplication order is irrelevant; for arbitrary
    # generators we fix the phase by commuting g_j past the higher-indexed ones.
    g = gens[j]
    higher = mask >> (j + 1)
    sign_flips = 0
    k = j + 1
    while higher:
        if higher & 1:
            sign_flips += symplectic(g.pauli, gens[k].pauli)
        higher >>= 1
        k += 1
    if mask >> j & 1:
        # remove g_j: cur = A g_j B  ->  A B = cur * B^-1 g_j^-1 B ... via commuting g_j to the end
        # cur = A B g_j (-1)^flips  =>  A B = cur g_j^-1 (-1)^flips
        inv = SignedPauli((-g.phase) % 4, g.pauli)  # g^-1 = conj phase * P (P^2 = I)
        out = mul(cur, inv)
    else:
        out = mul(cur, g)
    return SignedPauli(out.phase + 2 * (sign_flips & 1), out.pauli)


# -- stabilizer codes ---------------------------------------------------------------


class CodeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StabilizerCode:
    generators: tuple[SignedPauli, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise CodeError("a code needs at least one generator")
        n = gens[0].n
        for i, g in enumerate(gens):
            if g.n != n:
                raise CodeError(f"generator {i + 1} has length {g.n}, expected {n}")
            if g.phase & 1:
                raise CodeError(f"generator {i + 1} has non-real phase")
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if symplectic(gens[i].pauli, gens[j].pauli):
                    raise CodeError(f"generators {i + 1} and {j + 1} do not commute")
        basis: dict[int, int] = {}
        for i, g in enumerate(gens):
            if not _insert(_pack(g.pauli), basis):
                raise CodeError(f"generator {i + 1} is dependent on earlier generators")

    def __eq__(self, other):
        return isinstance(other, StabilizerCode) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    @property
    def n(self) -> int:
        return self.generators[0].n

    @property
    def k(self) -> int:
        return self.n - len(self.generators)

    @property
    def stabilizer_paulis(self) -> list[PauliString]:
        return [g.pauli for g in self.generators]

    def syndrome(self, e: PauliString) -> tuple[int, ...]:
        _check_len(e, self.generators[0].pauli)
        return tuple(symplectic(e, g.pauli) for g in self.generators)

    @cached_property
    def normalizer_basis(self) -> list[PauliString]:
        return _kernel_basis(self.stabilizer_paulis, self.n)

    @cached_property
    def logicals(self) -> tuple[list[PauliString], list[PauliString]]:
        """Symplectic pairs (L_X[i], L_Z[i]) completing the stabilizer rows."""
        n = self.n
        stab: dict[int, int] = {}
        for g in self.generators:
            _insert(_pack(g.pauli), stab)
        reduced: dict[int, int] = dict(stab)
        comp: list[PauliString] = []
        for p in self.normalizer_basis:
            v = _reduce(_pack(p), reduced)
            if v:
                _insert(v, reduced)
                comp.append(_unpack(v, n))
        if len(comp) == 2:
            pure = self._pure_logical_pair(stab)
            if pure is not None:
                return [pure[0]], [pure[1]]
        lx: list[PauliString] = []
        lz: list[PauliString] = []
        pool = list(comp)
        while pool:
            a = pool.pop(0)
            idx = next((i for i, b in enumerate(pool) if symplectic(a, b)), None)
            if idx is None:
                raise CodeError("could not complete symplectic logical basis")
            b = pool.pop(idx)
            lx.append(a)
            lz.append(b)
            new_pool = []
            for c in pool:
                if symplectic(c, b):
                    c = mul(c, a).pauli
                if symplectic(c, a):
                    c = mul(c, b).pauli
                new_pool.append(c)
            pool = new_pool
        return lx, lz

    def _pure_logical_pair(self, stab: dict[int, int]) -> tuple[PauliString, PauliString] | None:
        # For k = 1 look for an X-only L_X and a Z-only L_Z (always possible
        # for CSS codes, and for the perfect code via XXXXX / ZZZZZ).
        n = self.n
        found = []
        for kind in ("X", "Z"):
            rows = []
            for g in self.generators:
                # X-only P commutes with g iff |P.x & g.z| even; Z-only: |P.z & g.x| even
                rows.append(PauliString(n, g.pauli.z if kind == "X" else g.pauli.x, 0))
            cands = _kernel_basis([PauliString(n, 0, r.x) for r in rows], n)
            pick = None
            for c in sorted(cands, key=lambda p: (p.weight, p.x, p.z)):
                if c.z:  # basis vectors of the restricted kernel with a Z part are irrelevant
                    continue
                p = c if kind == "X" else PauliString(n, 0, c.x)
                if _reduce(_pack(p), dict(stab)):
                    pick = p
                    break
            if pick is None:
                return None
            found.append(pick)
        lx, lz = found
        if not symplectic(lx, lz):
            return None
        return _min_weight_rep(lx, self), _min_weight_rep(lz, self)

    def logical(self, which: str, index: int = 0) -> PauliString:
        lx, lz = self.logicals
        which = which.upper()
        if which == "X":
            return lx[index]
        if which == "Z":
            return lz[index]
        if which == "Y":
            return mul(lx[index], lz[index]).pauli
        if which == "I":
            return PauliString.identity(self.n)
        raise CodeError(f"unknown logical {which!r}")

    def in_normalizer(self, e: PauliString) -> bool:
        return not any(self.syndrome(e))

    def in_stabilizer(self, e: PauliString) -> bool:
        if any(self.syndrome(e)):
            return False
        lx, lz = self.logicals
        return not any(symplectic(e, l) for l in lx + lz)

    def iter_stabilizer(self, **kw) -> Iterator[SignedPauli]:
        return iter_group(self.generators, **kw)

    def iter_normalizer(self, **kw) -> Iterator[PauliString]:
        gens = [SignedPauli(0, p) for p in self.normalizer_basis]
        for sp in iter_group(gens, **kw):
            yield sp.pauli

    def __str__(self) -> str:
        return "\n".join(str(g) for g in self.generators)


MIN_WEIGHT_SEARCH_GENS = 16


def _min_weight_rep(p: PauliString, code: StabilizerCode) -> PauliString:
    """Lowest-weight element of p*S that keeps p's pure X or Z type (small codes only)."""
    if len(code.generators) > MIN_WEIGHT_SEARCH_GENS:
        return p
    x_only, z_only = p.z == 0, p.x == 0

    def key(q: PauliString):
        keeps = (x_only and q.z == 0) or (z_only and q.x == 0)
        return (not keeps, q.weight, q.x, q.z)

    best = p
    for s in code.iter_stabilizer():
        q = PauliString(p.n, p.x ^ s.pauli.x, p.z ^ s.pauli.z)
        if key(q) < key(best):
            best = q
    return best


def syndrome(code: StabilizerCode, e: PauliString) -> tuple[int, ...]:
    return code.syndrome(e)


def normalizer_basis(code: StabilizerCode) -> list[PauliString]:
    return code.normalizer_basis
