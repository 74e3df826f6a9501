"""Built-in stabilizer codes and the plain-text code file format.

File format: one generator per line, an optional ``+``/``-`` sign followed by
``I``/``X``/``Y``/``Z`` characters.  ``#`` starts a comment; blank lines are
ignored.  Line order fixes the generator order, which matters downstream
because generator ``j`` owns the ``j``-th measurement noise position.
"""

from __future__ import annotations

from pathlib import Path

from .pauli import CodeError, PauliString, SignedPauli, StabilizerCode, symplectic

PERFECT_CODE = ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")

ROTATED_SURFACE_D3 = (
    "ZZIZZIIII",
    "IIIIZZIZZ",
    "IXXIXXIII",
    "IIIXXIXXI",
    "IIZIIZIII",
    "IIIZIIZII",
    "XXIIIIIII",
    "IIIIIIIXX",
)

ROTATED_SURFACE_D5 = (
    "ZZIIIZZIIIIIIIIIIIIIIIIII",
    "IIZZIIIZZIIIIIIIIIIIIIIII",
    "IIIIIIZZIIIZZIIIIIIIIIIII",
    "IIIIIIIIZZIIIZZIIIIIIIIII",
    "IIIIIIIIIIZZIIIZZIIIIIIII",
    "IIIIIIIIIIIIZZIIIZZIIIIII",
    "IIIIIIIIIIIIIIIIZZIIIZZII",
    "IIIIIIIIIIIIIIIIIIZZIIIZZ",
    "IXXIIIXXIIIIIIIIIIIIIIIII",
    "IIIXXIIIXXIIIIIIIIIIIIIII",
    "IIIIIXXIIIXXIIIIIIIIIIIII",
    "IIIIIIIXXIIIXXIIIIIIIIIII",
    "IIIIIIIIIIIXXIIIXXIIIIIII",
    "IIIIIIIIIIIIIXXIIIXXIIIII",
    "IIIIIIIIIIIIIIIXXIIIXXIII",
    "IIIIIIIIIIIIIIIIIXXIIIXXI",
    "IIIIZIIIIZIIIIIIIIIIIIIII",
    "IIIIIZIIIIZIIIIIIIIIIIIII",
    "IIIIIIIIIIIIIIZIIIIZIIIII",
    "IIIIIIIIIIIIIIIZIIIIZIIII",
    "XXIIIIIIIIIIIIIIIIIIIIIII",
    "IIIIIIIIIIIIIIIIIIIIIXXII",
    "IIXXIIIIIIIIIIIIIIIIIIIII",
    "IIIIIIIIIIIIIIIIIIIIIIIXX",
)


def _from_strings(lines, name: str) -> StabilizerCode:
    return StabilizerCode(tuple(SignedPauli.from_str(s) for s in lines), name=name)


def perfect_code() -> StabilizerCode:
    """The [[5,1,3]] code."""
    return _from_strings(PERFECT_CODE, "perfect")


def rotated_surface_code(d: int) -> StabilizerCode:
    if d == 3:
        return _from_strings(ROTATED_SURFACE_D3, "surface3")
    if d == 5:
        return _from_strings(ROTATED_SURFACE_D5, "surface5")
    raise CodeError(f"rotated surface code only available for d in (3, 5), got {d}")


BUILTIN = {
    "perfect": perfect_code,
    "surface3": lambda: rotated_surface_code(3),
    "surface5": lambda: rotated_surface_code(5),
}


def parse_code(text: str, name: str = "") -> StabilizerCode:
    gens: list[SignedPauli] = []
    linenos: list[int] = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sign = 0
        if line[0] in "+-":
            sign = 2 if line[0] == "-" else 0
            line = line[1:].strip()
        bad = [c for c in line if c not in "IXYZ"]
        if bad or not line:
            raise CodeError(f"line {lineno}: invalid generator {raw.strip()!r}")
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise CodeError(f"line {lineno}: length {len(line)} differs from {width}")
        gens.append(SignedPauli(sign, PauliString.from_str(line)))
        linenos.append(lineno)
    if not gens:
        raise CodeError("no generators found")
    # report problems in terms of file lines before the generic validation
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if symplectic(gens[i].pauli, gens[j].pauli):
                raise CodeError(f"generators on lines {linenos[i]} and {linenos[j]} do not commute")
    try:
        return StabilizerCode(tuple(gens), name=name)
    except CodeError as exc:
        raise CodeError(f"{exc} (generators numbered in file order)") from None


def load_code(path: str | Path) -> StabilizerCode:
    """Load a built-in name (``perfect``, ``surface3``, ``surface5``) or a code file."""
    p = Path(path)
    if not p.exists() and str(path) in BUILTIN:
        return BUILTIN[str(path)]()
    return parse_code(p.read_text(), name=p.stem)


def dump_code(code: StabilizerCode) -> str:
    return "".join(("-" if g.phase == 2 else "+") + str(g.pauli) + "\n" for g in code.generators)
