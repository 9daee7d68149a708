"""Square matrices over the ground semirings, with the structural tests
(monomial, invertible, regular) that the factorization algorithms lean on.

Matrices are immutable: a tuple of row tuples plus the owning semiring.
Indices in every public message and docstring are 1-based, matching the
usual matrix notation; ``rows`` itself is of course 0-based.

The supported dimension range is 1 <= n <= 8.  Everything here is exact
integer (or -inf) arithmetic; +inf appears only inside the regularity
residuation and never escapes a returned witness.
"""

from __future__ import annotations

from .semiring import (
    BOOLEAN,
    BOTTOM,
    Semiring,
    ZMAX,
    format_scalar,
    is_finite,
    parse_scalar,
    psi,
    semiring_by_name,
)

MAX_DIM = 8


class Matrix:
    __slots__ = ("n", "semiring", "rows")

    def __init__(self, n: int, semiring: Semiring, rows):
        if not (1 <= n <= MAX_DIM):
            raise ValueError(f"dimension {n} outside supported range 1..{MAX_DIM}")
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected {n}x{n} rows")
        for r in rows:
            for x in r:
                semiring.check(x)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "semiring", semiring)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def entry(self, i: int, j: int):
        """Entry at row i, column j, 1-based."""
        return self.rows[i - 1][j - 1]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.n == other.n
            and self.semiring is other.semiring
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.semiring.name, self.rows))

    def __repr__(self):
        return f"Matrix({self.semiring.name}, {format_matrix(self)!r})"


def _mk(n, semiring, rows):
    # Internal fast constructor: rows already a tuple of valid tuples.
    m = object.__new__(Matrix)
    object.__setattr__(m, "n", n)
    object.__setattr__(m, "semiring", semiring)
    object.__setattr__(m, "rows", rows)
    return m


def matrix(rows, semiring: Semiring = ZMAX) -> Matrix:
    """Build a matrix from a nested sequence, validating entries."""
    rows = tuple(tuple(r) for r in rows)
    return Matrix(len(rows), semiring, rows)


def identity(n: int, semiring: Semiring = ZMAX) -> Matrix:
    z, o = semiring.zero, semiring.one
    return Matrix(n, semiring, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))


def zeros(n: int, semiring: Semiring = ZMAX) -> Matrix:
    z = semiring.zero
    return Matrix(n, semiring, ((z,) * n,) * n)


def diag(values, semiring: Semiring = ZMAX) -> Matrix:
    values = tuple(values)
    n = len(values)
    z = semiring.zero
    return Matrix(n, semiring, tuple(tuple(values[i] if i == j else z for j in range(n)) for i in range(n)))


# -- multiplication ------------------------------------------------------

def _mul2(a, b):
    (a11, a12), (a21, a22) = a
    (b11, b12), (b21, b22) = b
    return (
        (max(a11 + b11, a12 + b21), max(a11 + b12, a12 + b22)),
        (max(a21 + b11, a22 + b21), max(a21 + b12, a22 + b22)),
    )


def _mul3(a, b):
    (a11, a12, a13), (a21, a22, a23), (a31, a32, a33) = a
    (b11, b12, b13), (b21, b22, b23), (b31, b32, b33) = b
    return (
        (
            max(a11 + b11, a12 + b21, a13 + b31),
            max(a11 + b12, a12 + b22, a13 + b32),
            max(a11 + b13, a12 + b23, a13 + b33),
        ),
        (
            max(a21 + b11, a22 + b21, a23 + b31),
            max(a21 + b12, a22 + b22, a23 + b32),
            max(a21 + b13, a22 + b23, a23 + b33),
        ),
        (
            max(a31 + b11, a32 + b21, a33 + b31),
            max(a31 + b12, a32 + b22, a33 + b32),
            max(a31 + b13, a32 + b23, a33 + b33),
        ),
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Product (ab)_ij = max over k of a_ik * b_kj, * the semiring product."""
    if a.semiring is not b.semiring:
        raise ValueError(f"semiring mismatch: {a.semiring.name} vs {b.semiring.name}")
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    n = a.n
    if a.semiring.name == "zmax":
        if n == 3:
            return _mk(3, a.semiring, _mul3(a.rows, b.rows))
        if n == 2:
            return _mk(2, a.semiring, _mul2(a.rows, b.rows))
        bcols = tuple(zip(*b.rows))
        out = tuple(
            tuple(max(x + y for x, y in zip(row, col)) for col in bcols)
            for row in a.rows
        )
        return _mk(n, a.semiring, out)
    bcols = tuple(zip(*b.rows))
    out = tuple(
        tuple(max(min(x, y) for x, y in zip(row, col)) for col in bcols)
        for row in a.rows
    )
    return _mk(n, a.semiring, out)


def mat_pow(m: Matrix, k: int) -> Matrix:
    if k < 0:
        raise ValueError("negative matrix power")
    acc = identity(m.n, m.semiring)
    base = m
    while k:
        if k & 1:
            acc = mat_mul(acc, base)
        base = mat_mul(base, base) if k > 1 else base
        k >>= 1
    return acc


def transpose(m: Matrix) -> Matrix:
    return _mk(m.n, m.semiring, tuple(zip(*m.rows)))


# -- permutations --------------------------------------------------------

class Perm:
    """A permutation of {1..n}, composed diagrammatically.

    ``img[i-1]`` is the image of i.  compose(s, t) applies s first, then
    t, so that matrix(s;t) = matrix(s) * matrix(t) for the row-style
    permutation matrices built by construct_P.
    """

    __slots__ = ("img",)

    def __init__(self, images):
        img = tuple(images)
        n = len(img)
        if sorted(img) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {img}")
        object.__setattr__(self, "img", img)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @property
    def n(self):
        return len(self.img)

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n, a, b):
        img = list(range(1, n + 1))
        img[a - 1], img[b - 1] = b, a
        return cls(img)

    @classmethod
    def from_cycles(cls, n, cycles):
        img = list(range(1, n + 1))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if not (1 <= x <= n):
                    raise ValueError(f"cycle entry {x} outside 1..{n}")
                if x in seen:
                    raise ValueError(f"cycles not disjoint at {x}")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b
        return cls(img)

    def __call__(self, i: int) -> int:
        return self.img[i - 1]

    def compose(self, other: "Perm") -> "Perm":
        """self then other: (s;t)(i) = t(s(i))."""
        return Perm(tuple(other.img[x - 1] for x in self.img))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.img)
        for i, x in enumerate(self.img):
            inv[x - 1] = i + 1
        return Perm(inv)

    def cycles(self):
        """Non-trivial cycles, each starting at its least element, sorted."""
        out = []
        seen = set()
        for start in range(1, len(self.img) + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        return "".join("(" + ",".join(str(x) for x in c) + ")" for c in self.cycles())

    @classmethod
    def parse_cycles(cls, n, text: str) -> "Perm":
        text = text.strip()
        if not text:
            return cls.identity(n)
        cycles = []
        rest = text
        while rest:
            if not rest.startswith("("):
                raise ValueError(f"bad cycle notation {text!r}")
            close = rest.find(")")
            if close < 0:
                raise ValueError(f"bad cycle notation {text!r}")
            body = rest[1:close].strip()
            if body:
                try:
                    cycles.append(tuple(int(t) for t in body.split(",")))
                except ValueError:
                    raise ValueError(f"bad cycle notation {text!r}") from None
            rest = rest[close + 1 :].strip()
        return cls.from_cycles(n, cycles)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.img == other.img

    def __hash__(self):
        return hash(self.img)

    def __repr__(self):
        return f"Perm{self.img}"


def construct_P(perm: Perm, semiring: Semiring = ZMAX, n: int | None = None) -> Matrix:
    """Permutation matrix: entry (i, j) is one exactly when j = perm(i)."""
    if n is None:
        n = perm.n
    elif n != perm.n:
        raise ValueError(f"permutation degree {perm.n} does not match n={n}")
    z, o = semiring.zero, semiring.one
    return Matrix(n, semiring, tuple(tuple(o if perm(i) == j else z for j in range(1, n + 1)) for i in range(1, n + 1)))


def construct_A(i: int, lam, n: int, semiring: Semiring = ZMAX) -> Matrix:
    """Diagonal matrix with lam in slot i and ones elsewhere on the diagonal."""
    if not (1 <= i <= n):
        raise ValueError(f"index {i} outside 1..{n}")
    semiring.check(lam)
    return diag(tuple(lam if k == i else semiring.one for k in range(1, n + 1)), semiring)


def construct_E(i: int, j: int, n: int, semiring: Semiring = ZMAX, lam=None) -> Matrix:
    """Identity plus a single off-diagonal entry lam at (i, j); lam defaults to one."""
    if i == j:
        raise ValueError(f"construct_E needs i != j, got i = j = {i}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"index ({i},{j}) outside 1..{n}")
    if lam is None:
        lam = semiring.one
    semiring.check(lam)
    rows = [[semiring.one if r == c else semiring.zero for c in range(1, n + 1)] for r in range(1, n + 1)]
    rows[i - 1][j - 1] = lam
    return Matrix(n, semiring, rows)


def permute(m: Matrix, row_perm: Perm, col_perm: Perm) -> Matrix:
    """P_row * m * P_col.  Entry (i, j) of the result is m[row(i), col^{-1}(j)]."""
    if row_perm.n != m.n or col_perm.n != m.n:
        raise ValueError("permutation degree does not match matrix dimension")
    cinv = col_perm.inverse()
    rows = tuple(
        tuple(m.rows[row_perm(i) - 1][cinv(j) - 1] for j in range(1, m.n + 1))
        for i in range(1, m.n + 1)
    )
    return _mk(m.n, m.semiring, rows)


# -- structure tests -----------------------------------------------------

def boolean_image(m: Matrix) -> Matrix:
    """Entrywise support map into the Boolean semiring (a morphism)."""
    if m.semiring is not ZMAX:
        raise ValueError("boolean_image expects a zmax matrix")
    return _mk(m.n, BOOLEAN, tuple(tuple(psi(x) for x in r) for r in m.rows))


def count_bottoms(m: Matrix) -> int:
    z = m.semiring.zero
    return sum(1 for r in m.rows for x in r if x == z)


def is_monomial(m: Matrix):
    """(perm, diag) when m has exactly one non-zero per row and column,
    placed at (i, perm(i)) with value diag[i-1]; None otherwise."""
    z = m.semiring.zero
    img = []
    vals = []
    used = set()
    for r in m.rows:
        hits = [j for j, x in enumerate(r) if x != z]
        if len(hits) != 1 or hits[0] in used:
            return None
        used.add(hits[0])
        img.append(hits[0] + 1)
        vals.append(r[hits[0]])
    return Perm(img), tuple(vals)


def is_invertible(m: Matrix) -> bool:
    """Invertible means monomial with every surviving entry a unit."""
    mono = is_monomial(m)
    if mono is None:
        return False
    _, vals = mono
    return all(m.semiring.is_unit(v) for v in vals)


def inverse(m: Matrix) -> Matrix:
    """Two-sided inverse of an invertible matrix.

    With m = D * P_sigma (diagonal times permutation), the inverse is
    P_sigma^{-1} * D^{-1}: entry (sigma(i), i) holds the scalar inverse
    of d_i, which tropically is -d_i and in the Boolean case 1.
    """
    mono = is_monomial(m)
    if mono is None or not all(m.semiring.is_unit(v) for v in mono[1]):
        raise ValueError("matrix is not invertible")
    perm, vals = mono
    z = m.semiring.zero
    rows = [[z] * m.n for _ in range(m.n)]
    for i in range(1, m.n + 1):
        v = vals[i - 1]
        rows[perm(i) - 1][i - 1] = -v if m.semiring is ZMAX else v
    return Matrix(m.n, m.semiring, rows)


def is_upper_triangular(m: Matrix) -> bool:
    z = m.semiring.zero
    return all(m.rows[i][j] == z for i in range(m.n) for j in range(i))


def is_unitriangular(m: Matrix) -> bool:
    return (
        is_upper_triangular(m)
        and all(m.rows[i][i] == m.semiring.one for i in range(m.n))
    )


# -- regularity ----------------------------------------------------------

def _residuation(m: Matrix):
    """Greatest Y with m*Y*m entrywise below m, in the completed semiring.

    Y[j][k] = min over pairs (i, l) with m[i][j] and m[k][l] both finite
    of m[i][l] - m[i][j] - m[k][l].  Pairs where either coefficient is
    bottom impose no constraint and are skipped (min of nothing = +inf);
    a finite pair with m[i][l] = -inf forces -inf.
    """
    n = m.n
    rows = m.rows
    INF = float("inf")
    finite_at = [[is_finite(x) for x in r] for r in rows]
    Y = []
    for j in range(n):
        yrow = []
        for k in range(n):
            best = INF
            for i in range(n):
                if not finite_at[i][j]:
                    continue
                mij = rows[i][j]
                for l in range(n):
                    if not finite_at[k][l]:
                        continue
                    t = rows[i][l] - mij - rows[k][l]
                    if t < best:
                        best = t
                        if best == BOTTOM:
                            break
                if best == BOTTOM:
                    break
            yrow.append(best)
        Y.append(yrow)
    return Y


def regularity_witness(m: Matrix):
    """(witness, variant) for a regular tropical matrix, (None, "") otherwise.

    The witness Y satisfies m*Y*m = m exactly.  variant is "exact" when
    the residuation produced no +inf entries, "clamped" when +inf slots
    (those multiplying only bottoms, hence irrelevant to the product)
    were replaced by a small finite value.
    """
    if m.semiring is not ZMAX:
        raise ValueError("regularity via residuation is defined for zmax matrices only")
    Y = _residuation(m)
    INF = float("inf")
    variant = "exact"
    if any(x == INF for row in Y for x in row):
        variant = "clamped"
        finite_entries = [x for r in m.rows for x in r if is_finite(x)]
        low = (min(finite_entries) if finite_entries else 0) - 1
        Y = [[low if x == INF else x for x in row] for row in Y]
    wit = matrix(Y, ZMAX)
    if mat_mul(mat_mul(m, wit), m) == m:
        return wit, variant
    return None, ""


def is_regular(m: Matrix):
    """A witness Y with m*Y*m = m, or None when no such Y exists.

    The residuation Y above is the greatest candidate below m's
    constraints, so failure of m*Y*m = m rules every Y out.
    """
    wit, _ = regularity_witness(m)
    return wit


# -- text and JSON forms --------------------------------------------------

def format_matrix(m: Matrix) -> str:
    """Rows joined by '; ', entries by single spaces: '-inf 0 5; 0 -inf 0; ...'."""
    return "; ".join(" ".join(format_scalar(x) for x in r) for r in m.rows)


def parse_matrix(text: str, semiring: Semiring = ZMAX) -> Matrix:
    parts = text.split(";")
    rows = []
    for part in parts:
        toks = part.split()
        if not toks:
            raise ValueError("empty row in matrix text")
        rows.append(tuple(parse_scalar(t, semiring) for t in toks))
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError(f"matrix text is not square: {text!r}")
    return Matrix(n, semiring, rows)


def matrix_to_json(m: Matrix) -> dict:
    return {
        "n": m.n,
        "semiring": m.semiring.name,
        "rows": [["-inf" if x == BOTTOM else x for x in r] for r in m.rows],
    }


def matrix_from_json(d: dict) -> Matrix:
    semiring = semiring_by_name(d["semiring"])
    rows = []
    for r in d["rows"]:
        row = []
        for x in r:
            if x == "-inf":
                row.append(BOTTOM)
            elif isinstance(x, int) and not isinstance(x, bool):
                row.append(x)
            else:
                raise ValueError(f"bad JSON entry {x!r}")
        rows.append(row)
    m = Matrix(int(d["n"]), semiring, rows)
    return m
