"""Generator alphabets for the monoids whose factorizations we compute.

A Generator is a symbolic letter (a tag plus parameters), not a matrix;
realize() turns one into a concrete matrix once a dimension and semiring
are fixed.  The six generating-set builders below give the alphabets:

* gens_ut_zmax(n): upper triangular tropical matrices.
* gens_u_zmax(n): unitriangular tropical matrices (symbolic E letters).
* gens_gl_zmax(n): the invertible (monomial, unit entry) group, two letters.
* gens_m2_zmax(): all of the 2x2 tropical matrices, four letters.
* gens_m3_zmax(max_x): all of the 3x3 tropical matrices; four fixed
  letters plus the infinite X family, realized up to max_x.
* gens_ut_boolean(n): upper triangular Boolean matrices.

Letter text forms (used by the CLI word syntax, one token per letter):
``A``, ``B``, ``C``, ``D``, ``I``, ``NEG_I``, ``Ai(i,v)``, ``E(i,j,v)``,
``P(cycles)`` and ``X(i)``.  Bare ``A``/``B`` are resolved by monoid
context: the invertible-group letters in gl and m3 words, the 2x2
letters in m2 words.
"""

from __future__ import annotations

import re

from .matrix import (
    Matrix,
    Perm,
    construct_A,
    construct_E,
    construct_P,
    diag,
    identity,
    mat_mul,
)
from .semiring import BOOLEAN, BOTTOM, Semiring, ZMAX, format_scalar, is_finite, parse_scalar


class Generator:
    """A symbolic alphabet letter: kind tag plus parameter tuple."""

    __slots__ = ("kind", "params")

    def __init__(self, kind: str, params=()):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", tuple(params))

    def __setattr__(self, name, value):
        raise AttributeError("Generator is immutable")

    def __eq__(self, other):
        return isinstance(other, Generator) and self.kind == other.kind and self.params == other.params

    def __hash__(self):
        return hash((self.kind, self.params))

    def __repr__(self):
        return f"Generator({self.text()!r})"

    def text(self) -> str:
        k = self.kind
        if k in ("GL_A", "M2_A"):
            return "A"
        if k in ("GL_B", "M2_B"):
            return "B"
        if k == "M2_C":
            return "C"
        if k == "M2_D":
            return "D"
        if k == "IDENTITY":
            return "I"
        if k == "NEG_I":
            return "NEG_I"
        if k == "DIAG_A":
            i, v = self.params
            return f"Ai({i},{format_scalar(v)})"
        if k == "ELEM_E":
            i, j, v = self.params
            return f"E({i},{j},{format_scalar(v)})"
        if k == "PERM_P":
            (p,) = self.params
            return f"P({p.cycle_string()})"
        if k == "M3_X":
            (i,) = self.params
            return f"X({i})"
        raise AssertionError(f"unknown generator kind {k}")

    def realize(self, n: int, semiring: Semiring) -> Matrix:
        key = (self.kind, self.params, n, semiring.name)
        hit = _REALIZED.get(key)
        if hit is None:
            hit = _REALIZED[key] = _realize(self, n, semiring)
        return hit


_REALIZED: dict = {}


def _rotation(n: int, upto: int) -> Perm:
    """The cycle (1, 2, ..., upto) inside the symmetric group on 1..n."""
    if upto < 2:
        return Perm.identity(n)
    return Perm.from_cycles(n, [tuple(range(1, upto + 1))])


def _realize(g: Generator, n: int, semiring: Semiring) -> Matrix:
    k = g.kind
    if k == "IDENTITY":
        return identity(n, semiring)
    if k == "NEG_I":
        if semiring is not ZMAX:
            raise ValueError("NEG_I is a zmax letter")
        return diag((-1,) * n, ZMAX)
    if k == "DIAG_A":
        i, v = g.params
        return construct_A(i, v, n, semiring)
    if k == "ELEM_E":
        i, j, v = g.params
        return construct_E(i, j, n, semiring, v)
    if k == "PERM_P":
        (p,) = g.params
        if p.n != n:
            raise ValueError(f"permutation letter has degree {p.n}, word has n={n}")
        return construct_P(p, semiring)
    if k == "GL_A":
        if semiring is not ZMAX or n < 2:
            raise ValueError("the invertible-group letters live in zmax, n >= 2")
        return mat_mul(construct_A(1, 1, n, ZMAX), construct_P(_rotation(n, n - 1), ZMAX))
    if k == "GL_B":
        if semiring is not ZMAX or n < 2:
            raise ValueError("the invertible-group letters live in zmax, n >= 2")
        return mat_mul(construct_A(1, -1, n, ZMAX), construct_P(_rotation(n, n), ZMAX))
    if k == "M2_A":
        return Matrix(2, ZMAX, ((BOTTOM, -1), (0, BOTTOM)))
    if k == "M2_B":
        return diag((1, 0), ZMAX)
    if k == "M2_C":
        return diag((BOTTOM, 0), ZMAX)
    if k == "M2_D":
        return Matrix(2, ZMAX, ((0, 0), (0, BOTTOM)))
    if k == "M3_X":
        (i,) = g.params
        return Matrix(3, ZMAX, ((BOTTOM, 0, i), (0, BOTTOM, 0), (0, 0, BOTTOM)))
    raise AssertionError(f"unknown generator kind {k}")


# Shared letter constants.
GL_A = Generator("GL_A")
GL_B = Generator("GL_B")
M2_A = Generator("M2_A")
M2_B = Generator("M2_B")
M2_C = Generator("M2_C")
M2_D = Generator("M2_D")
IDENTITY_LETTER = Generator("IDENTITY")
NEG_I = Generator("NEG_I")


def diag_letter(i: int, v) -> Generator:
    return Generator("DIAG_A", (i, v))


def elem_letter(i: int, j: int, v) -> Generator:
    return Generator("ELEM_E", (i, j, v))


def perm_letter(p: Perm) -> Generator:
    return Generator("PERM_P", (p,))


def x_letter(i: int) -> Generator:
    if i < 0:
        raise ValueError("X letters are indexed by non-negative integers")
    return Generator("M3_X", (i,))


class GeneratingSet:
    """An alphabet bound to a monoid: listed letters plus, for the two
    infinite alphabets, a symbolic membership rule."""

    __slots__ = ("monoid", "n", "semiring", "letters", "symbolic")

    def __init__(self, monoid: str, n: int, semiring: Semiring, letters, symbolic: str | None = None):
        object.__setattr__(self, "monoid", monoid)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "semiring", semiring)
        object.__setattr__(self, "letters", tuple(letters))
        object.__setattr__(self, "symbolic", symbolic)

    def __setattr__(self, name, value):
        raise AttributeError("GeneratingSet is immutable")

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def realized(self):
        return [g.realize(self.n, self.semiring) for g in self.letters]

    def contains(self, g: Generator) -> bool:
        """Membership including the symbolic families (any E(i,j,z) for the
        unitriangular alphabet, any X(i) for the 3x3 alphabet)."""
        if g in self.letters:
            return True
        if self.monoid == "u" and g.kind == "ELEM_E":
            i, j, v = g.params
            return 1 <= i < j <= self.n and is_finite(v) and isinstance(v, int)
        if self.monoid == "m3" and g.kind == "M3_X":
            return g.params[0] >= 0
        return False

    def __repr__(self):
        return f"GeneratingSet({self.monoid}, n={self.n}, {len(self.letters)} letters)"


def gens_ut_zmax(n: int) -> GeneratingSet:
    """Upper triangular tropical alphabet: A_i(1) for every i, the scalar
    matrix -1 * I, E_ij for i < j, and A_i(-inf) for every i.

    Cardinality 2n + 1 + n(n-1)/2.
    """
    if not (1 <= n <= 8):
        raise ValueError(f"n={n} outside supported range 1..8")
    letters = [diag_letter(i, 1) for i in range(1, n + 1)]
    letters.append(NEG_I)
    letters += [elem_letter(i, j, 0) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    letters += [diag_letter(i, BOTTOM) for i in range(1, n + 1)]
    return GeneratingSet("ut", n, ZMAX, letters)


def gens_u_zmax(n: int) -> GeneratingSet:
    """Unitriangular tropical alphabet: the identity plus every E_ij(z)
    with i < j and z an integer (a symbolic, infinite family)."""
    if not (1 <= n <= 8):
        raise ValueError(f"n={n} outside supported range 1..8")
    symbolic = None if n == 1 else "E(i,j,z) for 1 <= i < j <= n and any integer z"
    return GeneratingSet("u", n, ZMAX, [IDENTITY_LETTER], symbolic)


def gens_gl_zmax(n: int) -> GeneratingSet:
    """The two-letter alphabet generating the invertible n x n tropical
    matrices: A scales slot 1 by 1 and rotates 1..n-1, B scales slot 1
    by -1 and rotates 1..n."""
    if not (2 <= n <= 8):
        raise ValueError(f"the invertible group needs n >= 2, got {n}")
    return GeneratingSet("gl", n, ZMAX, [GL_A, GL_B])


def gens_m2_zmax() -> GeneratingSet:
    """Four letters generating every 2x2 tropical matrix."""
    return GeneratingSet("m2", 2, ZMAX, [M2_A, M2_B, M2_C, M2_D])


def gens_m3_zmax(max_x: int = 0) -> GeneratingSet:
    """Alphabet generating every 3x3 tropical matrix: the two invertible
    group letters, E_12, A_1(-inf), and the X family.

    X(i) has top row (-inf, 0, i) and zeros off the diagonal elsewhere;
    the letters listed here realize X(0)..X(max_x), and contains() accepts
    any X(i) with i >= 0 since the family is genuinely infinite.
    """
    if max_x < 0:
        raise ValueError("max_x must be >= 0")
    letters = [GL_A, GL_B, elem_letter(1, 2, 0), diag_letter(1, BOTTOM)]
    letters += [x_letter(i) for i in range(max_x + 1)]
    return GeneratingSet("m3", 3, ZMAX, letters, symbolic="X(i) for any integer i >= 0")


def gens_ut_boolean(n: int) -> GeneratingSet:
    """Upper triangular Boolean alphabet: identity, E_ij(1) for i < j,
    and A_i(0) for every i."""
    if not (1 <= n <= 8):
        raise ValueError(f"n={n} outside supported range 1..8")
    letters = [IDENTITY_LETTER]
    letters += [elem_letter(i, j, 1) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    letters += [diag_letter(i, 0) for i in range(1, n + 1)]
    return GeneratingSet("ut_boolean", n, BOOLEAN, letters)


# -- letter token grammar --------------------------------------------------

_AI_RE = re.compile(r"^Ai\((\d+),([^)]+)\)$")
_E_RE = re.compile(r"^E\((\d+),(\d+),([^)]+)\)$")
_X_RE = re.compile(r"^X\((\d+)\)$")
_P_RE = re.compile(r"^P\((.*)\)$")

_BARE = {
    "gl": {"A": GL_A, "B": GL_B},
    "m3": {"A": GL_A, "B": GL_B},
    "m2": {"A": M2_A, "B": M2_B, "C": M2_C, "D": M2_D},
}


def parse_generator(token: str, monoid: str, n: int, semiring: Semiring) -> Generator:
    """One letter token to a Generator; monoid context resolves bare names."""
    bare = _BARE.get(monoid, {})
    if token in bare:
        return bare[token]
    if token == "I":
        return IDENTITY_LETTER
    if token == "NEG_I":
        return NEG_I
    m = _AI_RE.match(token)
    if m:
        return diag_letter(int(m.group(1)), parse_scalar(m.group(2), semiring))
    m = _E_RE.match(token)
    if m:
        return elem_letter(int(m.group(1)), int(m.group(2)), parse_scalar(m.group(3), semiring))
    m = _X_RE.match(token)
    if m:
        return x_letter(int(m.group(1)))
    m = _P_RE.match(token)
    if m:
        return perm_letter(Perm.parse_cycles(n, m.group(1)))
    raise ValueError(f"bad letter token {token!r}")


def generating_set(monoid: str, n: int, max_x: int = 0) -> GeneratingSet:
    """Builder dispatch by monoid name, as the CLI uses it."""
    if monoid == "ut":
        return gens_ut_zmax(n)
    if monoid == "u":
        return gens_u_zmax(n)
    if monoid == "gl":
        return gens_gl_zmax(n)
    if monoid == "m2":
        if n != 2:
            raise ValueError("the m2 monoid is 2x2")
        return gens_m2_zmax()
    if monoid == "m3":
        if n != 3:
            raise ValueError("the m3 monoid is 3x3")
        return gens_m3_zmax(max_x)
    if monoid == "ut_boolean":
        return gens_ut_boolean(n)
    raise ValueError(f"unknown monoid {monoid!r}")
