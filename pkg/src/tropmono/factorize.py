"""Words over the generator alphabets, and the factorization algorithms
that rewrite a matrix as such a word.

A Word is internally a DAG of leaf / concatenation / power nodes rather
than a flat letter list: the group-case words repeat large sub-words
(powers of rotation words, conjugated diagonal scalings) whose flattened
length grows with the entries, while the node count stays small.
Evaluation memoizes per node, and power nodes use binary exponentiation,
so verifying a factorization costs a few hundred 3x3 products even when
the flat word would have tens of thousands of letters.  Flat letter
sequences are produced lazily for printing and round-trips.

The five factorizations:

* factor_ut: upper triangular tropical matrices, any 1 <= n <= 8.
* factor_unitriangular: unit diagonal, strictly upper entries.
* factor_gl: invertible (monomial, unit entries) matrices, n >= 2,
  over the two-letter alphabet.
* factor_m2: every 2x2 tropical matrix over the four-letter alphabet.
* factor_m3: every 3x3 tropical matrix over the m3 alphabet; a case
  dispatcher on the count and shape of the -inf entries that recurses
  on strictly easier matrices.

The dispatcher's tie-breaking is fixed and documented inline: searches
over permutation pairs run in lexicographic order and take the first
hit, collinear detection scans rows then columns, and every ordered
comparison sends ties to the first-listed branch.  Words are not
minimized; simplify() is available but nothing applies it by default.
"""

from __future__ import annotations

import itertools

from .genset import (
    GL_A,
    GL_B,
    GeneratingSet,
    Generator,
    M2_A,
    M2_B,
    M2_C,
    M2_D,
    NEG_I,
    diag_letter,
    elem_letter,
    generating_set,
    parse_generator,
    x_letter,
)
from .matrix import (
    Matrix,
    Perm,
    construct_A,
    count_bottoms,
    diag,
    format_matrix,
    identity,
    is_invertible,
    is_monomial,
    is_unitriangular,
    is_upper_triangular,
    mat_mul,
    mat_pow,
    matrix,
    permute,
)
from .semiring import BOTTOM, Semiring, ZMAX, is_finite


class MembershipError(ValueError):
    """Input matrix (or word letter) is outside the monoid in question."""


# -- word nodes -----------------------------------------------------------

class _Leaf:
    __slots__ = ("g", "_vals")

    def __init__(self, g: Generator):
        self.g = g
        self._vals = {}


class _Cat:
    __slots__ = ("parts", "_vals")

    def __init__(self, parts):
        self.parts = tuple(parts)
        self._vals = {}


class _Pow:
    __slots__ = ("node", "k", "_vals")

    def __init__(self, node, k: int):
        if k < 0:
            raise ValueError("negative word power")
        self.node = node
        self.k = k
        self._vals = {}


def _cat(parts):
    flat = [p for p in parts if p is not None]
    if len(flat) == 1:
        return flat[0]
    return _Cat(flat)


_EMPTY = _Cat(())


def _node_eval(node, n: int, semiring: Semiring) -> Matrix:
    key = (n, semiring.name)
    hit = node._vals.get(key)
    if hit is not None:
        return hit
    if isinstance(node, _Leaf):
        val = node.g.realize(n, semiring)
    elif isinstance(node, _Cat):
        val = None
        for p in node.parts:
            v = _node_eval(p, n, semiring)
            val = v if val is None else mat_mul(val, v)
        if val is None:
            val = identity(n, semiring)
    else:
        val = mat_pow(_node_eval(node.node, n, semiring), node.k)
    node._vals[key] = val
    return val


def _node_letters(node):
    if isinstance(node, _Leaf):
        yield node.g
    elif isinstance(node, _Cat):
        for p in node.parts:
            yield from _node_letters(p)
    else:
        for _ in range(node.k):
            yield from _node_letters(node.node)


def _node_len(node, memo) -> int:
    key = id(node)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(node, _Leaf):
        out = 1
    elif isinstance(node, _Cat):
        out = sum(_node_len(p, memo) for p in node.parts)
    else:
        out = node.k * _node_len(node.node, memo)
    memo[key] = out
    return out


def _node_distinct(node, seen, out):
    if id(node) in seen:
        return
    seen.add(id(node))
    if isinstance(node, _Leaf):
        out.add(node.g)
    elif isinstance(node, _Cat):
        for p in node.parts:
            _node_distinct(p, seen, out)
    else:
        _node_distinct(node.node, seen, out)


class Word:
    """A word over one monoid's alphabet.  Immutable once built."""

    __slots__ = ("monoid", "n", "semiring", "root")

    def __init__(self, monoid: str, n: int, semiring: Semiring, root=None):
        self.monoid = monoid
        self.n = n
        self.semiring = semiring
        self.root = _EMPTY if root is None else root

    def letters(self):
        """Flat letter sequence, lazily.  Can be long; prefer letter_count
        or distinct_letters when the sequence itself is not needed."""
        return _node_letters(self.root)

    def letter_count(self) -> int:
        return _node_len(self.root, {})

    def distinct_letters(self):
        out: set = set()
        _node_distinct(self.root, set(), out)
        return out

    def text(self) -> str:
        toks = [g.text() for g in self.letters()]
        return " ".join(toks) if toks else "ε"

    def __repr__(self):
        k = self.letter_count()
        return f"Word({self.monoid}, n={self.n}, {k} letters)"


def word_alphabet(w: Word) -> "GeneratingSet":
    monoid = w.monoid
    if monoid == "ut" and w.semiring.name == "boolean":
        monoid = "ut_boolean"
    return generating_set(monoid, w.n)


def evaluate(w: Word) -> Matrix:
    """Multiply the word out.  The empty word is the identity.

    Every letter must belong to the word's monoid alphabet (including
    the symbolic E and X families); a stray letter raises
    MembershipError.
    """
    alphabet = word_alphabet(w)
    for g in w.distinct_letters():
        if not alphabet.contains(g):
            raise MembershipError(
                f"letter {g.text()} outside the {w.monoid} alphabet"
            )
    return _node_eval(w.root, w.n, w.semiring)


def parse_word(text: str, monoid: str, n: int, semiring: Semiring = ZMAX) -> Word:
    """Parse a space-separated letter sequence; 'ε' (or nothing) is empty."""
    toks = text.split()
    if toks == ["ε"]:
        toks = []
    leaves = [_Leaf(parse_generator(t, monoid, n, semiring)) for t in toks]
    return Word(monoid, n, semiring, _Cat(leaves))


def word_to_text(w: Word) -> str:
    return w.text()


def simplify(w: Word) -> Word:
    """Drop adjacent letter pairs that multiply to the identity.

    Off by default everywhere; factorization output is returned as
    constructed.  This flattens the word, so it is meant for words of
    modest length (CLI --simplify).
    """
    letters = list(w.letters())
    changed = True
    while changed:
        changed = False
        i = 0
        out = []
        while i < len(letters):
            if i + 1 < len(letters):
                a = letters[i].realize(w.n, w.semiring)
                b = letters[i + 1].realize(w.n, w.semiring)
                if mat_mul(a, b) == identity(w.n, w.semiring):
                    i += 2
                    changed = True
                    continue
            out.append(letters[i])
            i += 1
        letters = out
    return Word(w.monoid, w.n, w.semiring, _Cat([_Leaf(g) for g in letters]))


# -- upper triangular / unitriangular -------------------------------------

# Node caches shared across factorizations: the same sub-word reuses
# its evaluation cache, which matters when thousands of matrices are
# factored in one process.
_UT_DIAG: dict = {}
_UT_ELEM: dict = {}


def _ut_diag_node(n: int, i: int, a):
    # The word for the diagonal letter with a in slot i: powers of the
    # slot's +1 letter, or the bottom letter, or for negative a powers
    # of (-1 * I) compensated by +1 letters in every other slot.
    if a == 0:
        return None
    key = (n, i, a)
    node = _UT_DIAG.get(key)
    if node is not None:
        return node
    if a == BOTTOM:
        node = _Leaf(diag_letter(i, BOTTOM))
    elif a > 0:
        node = _Pow(_Leaf(diag_letter(i, 1)), a)
    else:
        k = -a
        parts = [_Pow(_Leaf(NEG_I), k)]
        parts += [_Pow(_Leaf(diag_letter(j, 1)), k) for j in range(1, n + 1) if j != i]
        node = _Cat(parts)
    _UT_DIAG[key] = node
    return node


def _ut_elem_node(n: int, i: int, j: int, a):
    if a == BOTTOM:
        return None
    key = (n, i, j, a)
    node = _UT_ELEM.get(key)
    if node is not None:
        return node
    e = _Leaf(elem_letter(i, j, 0))
    if a == 0:
        node = e
    else:
        node = _Cat((_ut_diag_node(n, i, a), e, _ut_diag_node(n, i, -a)))
    _UT_ELEM[key] = node
    return node


def factor_ut(m: Matrix) -> Word:
    """Upper triangular factorization over the ut alphabet.

    Emits columns right to left, each column bottom-up, the diagonal
    cell of the column last; multiplying back is exact for every upper
    triangular input.
    """
    if m.semiring is not ZMAX:
        raise MembershipError("factor_ut expects a zmax matrix")
    if not is_upper_triangular(m):
        raise MembershipError(f"matrix is not upper triangular: {format_matrix(m)}")
    n = m.n
    parts = []
    for l in range(n):
        j = n - l
        for k in range(n - l):
            i = n - l - k
            a = m.entry(i, j)
            if i == j:
                parts.append(_ut_diag_node(n, i, a))
            else:
                parts.append(_ut_elem_node(n, i, j, a))
    return Word("ut", n, ZMAX, _cat(parts))


def factor_unitriangular(m: Matrix) -> Word:
    """Factor a unit-diagonal triangular matrix into single E letters,
    one per finite strictly-upper entry, columns right to left."""
    if m.semiring is not ZMAX:
        raise MembershipError("factor_unitriangular expects a zmax matrix")
    if not is_unitriangular(m):
        raise MembershipError(
            f"matrix is not unitriangular (unit diagonal, nothing below): {format_matrix(m)}"
        )
    n = m.n
    parts = []
    for l in range(1, n):
        j = n + 1 - l
        for i in range(1, n - l + 1):
            a = m.entry(i, j)
            if a != BOTTOM:
                parts.append(_Leaf(elem_letter(i, j, a)))
    return Word("u", n, ZMAX, _cat(parts))


# -- the invertible group --------------------------------------------------

_GLA = _Leaf(GL_A)
_GLB = _Leaf(GL_B)

_GL_BITS: dict = {}
_GL_PERM: dict = {}


def _gl_bits(n: int) -> dict:
    """Shared sub-words for dimension n, built once.

    Y = B^{n-2} A^{n-1} B realizes the inverse rotation (the full cycle
    to the power n-1); from it come the full cycle Pc = Y^{n-1}, the
    short rotation Prho = B Y A, the transposition P12 = Pc^{n-2} Prho Pc,
    and the slot-1 diagonal words A1p = A Prho^{n-2} (scale by +1) and
    A1m = B Pc^{n-1} (scale by -1).
    """
    bits = _GL_BITS.get(n)
    if bits is not None:
        return bits
    Y = _Cat((_Pow(_GLB, n - 2), _Pow(_GLA, n - 1), _GLB))
    Pc = _Pow(Y, n - 1)
    Prho = _Cat((_GLB, Y, _GLA))
    P12 = _Cat((_Pow(Pc, n - 2), Prho, Pc))
    A1p = _Cat((_GLA, _Pow(Prho, n - 2)))
    A1m = _Cat((_GLB, _Pow(Pc, n - 1)))
    bits = {"Y": Y, "Pc": Pc, "Prho": Prho, "P12": P12, "A1p": A1p, "A1m": A1m}
    _GL_BITS[n] = bits
    return bits


def _gl_adjacent_node(n: int, k: int):
    """Word for the adjacent transposition (k, k+1): conjugate the
    (1,2) transposition by powers of the full cycle."""
    bits = _gl_bits(n)
    m = (1 - k) % n
    return _cat([
        _Pow(bits["Pc"], m) if m else None,
        bits["P12"],
        _Pow(bits["Pc"], (n - m) % n) if (n - m) % n else None,
    ])


def _gl_perm_node(n: int, perm: Perm):
    """Word realizing the permutation matrix of perm.

    Bubble-sorts the one-line form, recording adjacent swaps; the swaps
    applied first-to-last compose (diagrammatically) back to perm, so
    their matrices concatenate in recorded order.
    """
    key = (n, perm.img)
    hit = _GL_PERM.get(key)
    if hit is not None:
        return hit
    line = list(perm.img)
    swaps = []
    changed = True
    while changed:
        changed = False
        for k in range(n - 1):
            if line[k] > line[k + 1]:
                line[k], line[k + 1] = line[k + 1], line[k]
                swaps.append(k + 1)
                changed = True
    node = _cat([_gl_adjacent_node(n, k) for k in swaps])
    _GL_PERM[key] = node
    return node


def _gl_slot_node(n: int, i: int, d: int):
    """Word for the diagonal matrix with d in slot i, zero elsewhere."""
    if d == 0:
        return None
    bits = _gl_bits(n)
    base = bits["A1p"] if d > 0 else bits["A1m"]
    if i != 1:
        t = Perm.transposition(n, 1, i)
        conj = _gl_perm_node(n, t)
        base = _Cat((conj, base, conj))
    return _Pow(base, abs(d))


def _factor_gl_node(m: Matrix):
    mono = is_monomial(m)
    if mono is None or not all(is_finite(v) for v in mono[1]):
        raise MembershipError(f"matrix is not invertible: {format_matrix(m)}")
    perm, vals = mono
    n = m.n
    parts = [_gl_slot_node(n, i, d) for i, d in enumerate(vals, start=1)]
    parts.append(_gl_perm_node(n, perm))
    return _cat(parts)


def factor_gl(m: Matrix) -> Word:
    """Factor an invertible matrix over the two-letter alphabet.

    Splits m into a diagonal part times a permutation matrix, words the
    diagonal slot by slot and the permutation by adjacent swaps.  Every
    letter is a unit, so every prefix stays invertible.
    """
    if m.semiring is not ZMAX:
        raise MembershipError("factor_gl expects a zmax matrix")
    if m.n < 2:
        raise MembershipError("the invertible-group factorization needs n >= 2")
    return Word("gl", m.n, ZMAX, _factor_gl_node(m))


# -- the full 2x2 monoid ----------------------------------------------------

_M2A = _Leaf(M2_A)
_M2B = _Leaf(M2_B)
_M2C = _Leaf(M2_C)
_M2D = _Leaf(M2_D)
# F = B A swaps the two rows (on the left) or columns (on the right); F F = I.
_M2F = _Cat((_M2B, _M2A))
# B(-1) = A B A, so negative diagonal powers are powers of this word.
_M2BNEG = _Cat((_M2A, _M2B, _M2A))


def _b2(z):
    """Word for the diagonal matrix (z, 0): powers of B, or of A B A."""
    if z == 0:
        return None
    if z > 0:
        return _Pow(_M2B, z)
    return _Pow(_M2BNEG, -z)


def _m2_corner(x, y, z):
    # [[-inf, x], [y, z]] = B(x) F B(z) D F B(y - z)
    return _cat([_b2(x), _M2F, _b2(z), _M2D, _M2F, _b2(y - z)])


def _m2_row1(x, y):
    # [[-inf, -inf], [x, y]] = C F B(y) D B(x - y)
    return _cat([_M2C, _M2F, _b2(y), _M2D, _b2(x - y)])


def _m2_col1(x, y):
    # [[-inf, x], [-inf, y]] = B(x) F B(y) D F C
    return _cat([_b2(x), _M2F, _b2(y), _M2D, _M2F, _M2C])


def _factor_m2_node(m: Matrix):
    (a, b), (c, d) = m.rows
    bottoms = frozenset(
        (i, j) for i, row in enumerate(m.rows, 1) for j, x in enumerate(row, 1) if x == BOTTOM
    )
    z = len(bottoms)
    if z == 4:
        return _Cat((_M2C, _M2F, _M2C))
    if z == 3:
        # Route the single finite entry to (2,1), where C F B(x) puts it.
        if (1, 1) not in bottoms:
            return _cat([_M2F, _M2C, _M2F, _b2(a)])
        if (1, 2) not in bottoms:
            return _cat([_M2F, _M2C, _M2F, _b2(b), _M2F])
        if (2, 1) not in bottoms:
            return _cat([_M2C, _M2F, _b2(c)])
        return _cat([_M2C, _M2F, _b2(d), _M2F])
    if z == 2:
        if bottoms == {(1, 1), (1, 2)}:
            return _m2_row1(c, d)
        if bottoms == {(2, 1), (2, 2)}:
            return _cat([_M2F, _m2_row1(a, b)])
        if bottoms == {(1, 1), (2, 1)}:
            return _m2_col1(b, d)
        if bottoms == {(1, 2), (2, 2)}:
            return _cat([_m2_col1(a, c), _M2F])
        if bottoms == {(1, 1), (2, 2)}:
            return _cat([_b2(b), _M2F, _b2(c)])
        # Diagonal (x, y): the anti-diagonal word times a column swap.
        return _cat([_b2(a), _M2F, _b2(d), _M2F])
    if z == 1:
        if (1, 1) in bottoms:
            return _m2_corner(b, c, d)
        if (1, 2) in bottoms:
            return _cat([_m2_corner(a, d, c), _M2F])
        if (2, 1) in bottoms:
            return _cat([_M2F, _m2_corner(d, a, b)])
        return _cat([_M2F, _m2_corner(c, b, a), _M2F])
    # No bottoms.  m = G B(b) F B(a) where G = [[0, 0], [x, y]] collects
    # the row differences; G itself splits into two one-bottom matrices,
    # by cases on the order of x and y.
    x = d - b
    y = c - a
    if y <= x:
        g = _cat([_m2_corner(0, y, y), _m2_corner(x - y, 0, 0), _M2F])
    else:
        g = _cat([
            _M2F, _m2_corner(0, -x, -y), _M2F,
            _M2F, _m2_corner(x, y, x), _M2F,
        ])
    return _cat([g, _b2(b), _M2F, _b2(a)])


def factor_m2(m: Matrix) -> Word:
    """Factor any 2x2 tropical matrix over the four-letter alphabet.

    Total: dispatches on the set of -inf positions; the no-bottom case
    peels a difference matrix that splits into one-bottom pieces.
    """
    if m.semiring is not ZMAX:
        raise MembershipError("factor_m2 expects a zmax matrix")
    if m.n != 2:
        raise MembershipError(f"factor_m2 expects 2x2, got {m.n}x{m.n}")
    return Word("m2", 2, ZMAX, _factor_m2_node(m))


# -- the full 3x3 monoid ----------------------------------------------------

_E12 = _Leaf(elem_letter(1, 2, 0))
_A1INF = _Leaf(diag_letter(1, BOTTOM))

_M3_BITS: dict = {}


def _m3_perm(perm: Perm):
    return _gl_perm_node(3, perm)


def _m3_bits() -> dict:
    """Cached lift words: the elementary letters E13 and E23 and the
    bottom-diagonal letters in slots 2 and 3 as conjugates of the two
    m3 letters, and the 2x2 alphabet embedded in the lower block."""
    bits = _M3_BITS.get(3)
    if bits is not None:
        return bits
    p23 = _m3_perm(Perm.from_cycles(3, [(2, 3)]))
    p12 = _m3_perm(Perm.from_cycles(3, [(1, 2)]))
    p13 = _m3_perm(Perm.from_cycles(3, [(1, 3)]))
    bits = {
        "e13": _cat([p23, _E12, p23]),
        "e23": _cat([
            _m3_perm(Perm.from_cycles(3, [(2, 1, 3)])),
            _E12,
            _m3_perm(Perm.from_cycles(3, [(2, 3, 1)])),
        ]),
        "a2inf": _cat([p12, _A1INF, p12]),
        "a3inf": _cat([p13, _A1INF, p13]),
        # One plus the 2x2 letters: lifts of A, B, C, D.
        "m2A": _factor_gl_node(matrix([[0, BOTTOM, BOTTOM], [BOTTOM, BOTTOM, -1], [BOTTOM, 0, BOTTOM]])),
        "m2B": _factor_gl_node(diag((0, 1, 0))),
        "m2C": _cat([p12, _A1INF, p12]),
        "m2D": _cat([
            _m3_perm(Perm.from_cycles(3, [(1, 3, 2)])),
            _E12,
            _m3_perm(Perm.from_cycles(3, [(1, 3)])),
        ]),
    }
    _M3_BITS[3] = bits
    return bits


def _m3_elem(i: int, j: int):
    if (i, j) == (1, 2):
        return _E12
    bits = _m3_bits()
    return bits["e13"] if (i, j) == (1, 3) else bits["e23"]


def _m3_slot_inf(i: int):
    if i == 1:
        return _A1INF
    bits = _m3_bits()
    return bits["a2inf"] if i == 2 else bits["a3inf"]


def _m3_scale(i: int, a):
    """Word for the diagonal with a in slot i: a group word when a is
    finite, the (conjugated) bottom letter when a is -inf."""
    if a == 0:
        return None
    if a == BOTTOM:
        return _m3_slot_inf(i)
    return _factor_gl_node(construct_A(i, a, 3, ZMAX))


def _m3_ut_node(u: Matrix):
    """The triangular factorization re-targeted at the m3 alphabet:
    same column order as factor_ut, with each ut letter lifted."""
    parts = []
    for l in range(3):
        j = 3 - l
        for k in range(3 - l):
            i = 3 - l - k
            a = u.entry(i, j)
            if i == j:
                parts.append(_m3_scale(i, a))
            elif a != BOTTOM:
                if a == 0:
                    parts.append(_m3_elem(i, j))
                else:
                    parts.append(_cat([
                        _factor_gl_node(construct_A(i, a, 3, ZMAX)),
                        _m3_elem(i, j),
                        _factor_gl_node(construct_A(i, -a, 3, ZMAX)),
                    ]))
    return _cat(parts)


def _m3_lift_m2(node, memo):
    """Structurally substitute the 2x2 letters by their 3x3 lift words,
    preserving concatenation and power structure."""
    hit = memo.get(id(node))
    if hit is not None:
        return hit
    bits = _m3_bits()
    if isinstance(node, _Leaf):
        out = {
            "M2_A": bits["m2A"],
            "M2_B": bits["m2B"],
            "M2_C": bits["m2C"],
            "M2_D": bits["m2D"],
        }[node.g.kind]
    elif isinstance(node, _Cat):
        out = _Cat([_m3_lift_m2(p, memo) for p in node.parts])
    else:
        out = _Pow(_m3_lift_m2(node.node, memo), node.k)
    memo[id(node)] = out
    return out


_S3 = [Perm(img) for img in itertools.permutations((1, 2, 3))]


def _m3_search_ut(m: Matrix):
    """First (s, t) in lexicographic order with P_s m P_t upper
    triangular, or None."""
    for s in _S3:
        for t in _S3:
            u = permute(m, s, t)
            if is_upper_triangular(u):
                return s, t, u
    return None


def _m3_search_block(m: Matrix):
    """First (s, t) with P_s m P_t of shape scalar-plus-2x2-block
    (first row and column bottom off the corner), or None."""
    for s in _S3:
        for t in _S3:
            u = permute(m, s, t)
            r = u.rows
            if r[0][1] == BOTTOM and r[0][2] == BOTTOM and r[1][0] == BOTTOM and r[2][0] == BOTTOM:
                return s, t, u
    return None


def _m3_collinear(m: Matrix):
    """A row, then a column, holding at least two bottoms; None if none."""
    for r in range(1, 4):
        cells = [c for c in range(1, 4) if m.entry(r, c) == BOTTOM]
        if len(cells) >= 2:
            return "row", r, cells
    for c in range(1, 4):
        cells = [r for r in range(1, 4) if m.entry(r, c) == BOTTOM]
        if len(cells) >= 2:
            return "col", c, cells
    return None


def _m3_e12_node(lam):
    """E_12 with a finite parameter: conjugate the letter by slot-1 scalings."""
    if lam == 0:
        return _E12
    return _cat([
        _factor_gl_node(construct_A(1, lam, 3, ZMAX)),
        _E12,
        _factor_gl_node(construct_A(1, -lam, 3, ZMAX)),
    ])


def _m3_split_row(m: Matrix, r: int, cells, depth: int):
    # Send the bottom pair (plus a possible third) of row r to row 3,
    # its columns to 1 and 2; then row 3 peels off:
    # [[a,b,c],[d,e,x],[-,-,y]] = [[0,-,c],[-,0,x],[-,-,y]] * [[a,b,-],[d,e,-],[-,-,0]].
    rho = Perm.transposition(3, r, 3) if r != 3 else Perm.identity(3)
    if len(cells) == 3:
        gamma = Perm.identity(3)
    else:
        ca, cb = cells
        cf = ({1, 2, 3} - {ca, cb}).pop()
        img = [0, 0, 0]
        img[ca - 1], img[cb - 1], img[cf - 1] = 1, 2, 3
        gamma = Perm(img)
    mp = permute(m, rho, gamma)
    g = mp.rows
    left = matrix([[0, BOTTOM, g[0][2]], [BOTTOM, 0, g[1][2]], [BOTTOM, BOTTOM, g[2][2]]])
    right = matrix([[g[0][0], g[0][1], BOTTOM], [g[1][0], g[1][1], BOTTOM], [BOTTOM, BOTTOM, 0]])
    return _cat([
        _m3_perm(rho.inverse()),
        _m3_node(left, depth + 1),
        _m3_node(right, depth + 1),
        _m3_perm(gamma.inverse()),
    ])


def _m3_split_col(m: Matrix, c: int, cells, depth: int):
    # Dual: send the bottom pair of column c to column 3, its rows to
    # 1 and 2; then column 3 peels off on the right:
    # [[a,b,-],[d,e,-],[f,g,y]] = [[a,b,-],[d,e,-],[-,-,0]] * [[0,-,-],[-,0,-],[f,g,y]].
    tau = Perm.transposition(3, c, 3) if c != 3 else Perm.identity(3)
    if len(cells) == 3:
        rho = Perm.identity(3)
    else:
        ra, rb = cells
        rf = ({1, 2, 3} - {ra, rb}).pop()
        rho = Perm((ra, rb, rf))
    mp = permute(m, rho, tau)
    g = mp.rows
    left = matrix([[g[0][0], g[0][1], BOTTOM], [g[1][0], g[1][1], BOTTOM], [BOTTOM, BOTTOM, 0]])
    right = matrix([[0, BOTTOM, BOTTOM], [BOTTOM, 0, BOTTOM], [g[2][0], g[2][1], g[2][2]]])
    return _cat([
        _m3_perm(rho.inverse()),
        _m3_node(left, depth + 1),
        _m3_node(right, depth + 1),
        _m3_perm(tau.inverse()),
    ])


def _m3_x_route(m: Matrix, depth: int):
    # Three bottoms forming a permutation pattern: push them onto the
    # diagonal, strip a diagonal scaling, and land in the X family.
    cells = {i: j for i in range(1, 4) for j in range(1, 4) if m.entry(i, j) == BOTTOM}
    pi = Perm((cells[1], cells[2], cells[3]))
    mp = permute(m, pi.inverse(), Perm.identity(3))
    g = mp.rows
    a, b = g[0][1], g[0][2]
    c, d = g[1][0], g[1][2]
    e, f = g[2][0], g[2][1]
    x, y, z = b - a, c - d, f - e
    s = x + y + z
    strip = _factor_gl_node(diag((a, d, e)))
    if s >= 0:
        middle = _cat([
            _factor_gl_node(diag((0, s - x, z))),
            _Leaf(x_letter(s)),
            _factor_gl_node(diag((-z, 0, x - s))),
        ])
    else:
        i = -s
        left = matrix([[BOTTOM, BOTTOM, 0], [BOTTOM, -x, BOTTOM], [z, BOTTOM, BOTTOM]])
        rightm = matrix([[BOTTOM, BOTTOM, x], [BOTTOM, 0, BOTTOM], [-z - i, BOTTOM, BOTTOM]])
        middle = _cat([
            _factor_gl_node(left),
            _Leaf(x_letter(i)),
            _factor_gl_node(rightm),
        ])
    return _cat([_m3_perm(pi), strip, middle])


def _m3_clear(m: Matrix, cells, depth: int):
    # One or two (non-collinear) bottoms: normalize the first bottom to
    # (2,3) (and the second to (3,2)), then peel one parametrized E_12
    # off the left, which plants a new bottom at (1,2) or (1,1).
    if len(cells) == 2:
        (r1, c1), (r2, c2) = cells
        r3 = ({1, 2, 3} - {r1, r2}).pop()
        sigma = Perm((r3, r1, r2))
        img = [0, 0, 0]
        img[c1 - 1], img[c2 - 1], img[({1, 2, 3} - {c1, c2}).pop() - 1] = 3, 2, 1
        tau = Perm(img)
    else:
        ((r1, c1),) = cells
        ra, rb = sorted({1, 2, 3} - {r1})
        sigma = Perm((ra, r1, rb))
        ca, cb = sorted({1, 2, 3} - {c1})
        img = [0, 0, 0]
        img[c1 - 1], img[ca - 1], img[cb - 1] = 3, 1, 2
        tau = Perm(img)
    mp = permute(m, sigma, tau)
    g = mp.rows
    a, b = g[0][0], g[0][1]
    d, e = g[1][0], g[1][1]
    if a + e >= b + d:
        lam = b - e
        cleared = [list(r) for r in g]
        cleared[0][1] = BOTTOM
    else:
        lam = a - d
        cleared = [list(r) for r in g]
        cleared[0][0] = BOTTOM
    rest = matrix(cleared)
    return _cat([
        _m3_perm(sigma.inverse()),
        _m3_e12_node(lam),
        _m3_node(rest, depth + 1),
        _m3_perm(tau.inverse()),
    ])


def _m3_dense(m: Matrix, depth: int):
    # No bottoms: normalize the top row to zeros, sort columns by the
    # second row, and split by where the third row's first entry sits.
    g = m.rows
    top = g[0]
    m0 = matrix([[g[i][j] - top[j] for j in range(3)] for i in range(3)])
    order = sorted(range(3), key=lambda j: m0.rows[1][j])
    tau_inv = Perm(tuple(o + 1 for o in order))
    m1 = permute(m0, Perm.identity(3), tau_inv.inverse())
    a, b, c = m1.rows[1]
    d, e, f = m1.rows[2]
    if d <= e and d <= f:
        left = matrix([[0, BOTTOM, BOTTOM], [a, b, c], [d, e, f]])
        right = matrix([[0, 0, 0], [BOTTOM, 0, BOTTOM], [BOTTOM, BOTTOM, 0]])
    elif d >= e:
        left = matrix([[0, -b, -d], [c, 0, BOTTOM], [f, BOTTOM, 0]])
        right = matrix([[BOTTOM, BOTTOM, 0], [a, b, BOTTOM], [d, e, BOTTOM]])
    else:
        left = matrix([[0, -c, -d], [b, 0, BOTTOM], [e, BOTTOM, 0]])
        right = matrix([[BOTTOM, 0, BOTTOM], [a, BOTTOM, c], [d, BOTTOM, f]])
    return _cat([
        _m3_node(left, depth + 1),
        _m3_node(right, depth + 1),
        _m3_perm(tau_inv),
        _factor_gl_node(diag(top)),
    ])


def _m3_node(m: Matrix, depth: int):
    if depth > 6:
        raise AssertionError(
            f"factor_m3 dispatcher exceeded its recursion bound on {format_matrix(m)}"
        )
    if is_invertible(m):
        return _factor_gl_node(m)
    z = count_bottoms(m)
    if z >= 3:
        hit = _m3_search_ut(m)
        if hit is not None:
            s, t, u = hit
            return _cat([
                _m3_perm(s.inverse()),
                _m3_ut_node(u),
                _m3_perm(t.inverse()),
            ])
    if z >= 4:
        hit = _m3_search_block(m)
        if hit is None:
            raise AssertionError(
                f"no triangular or block form for {format_matrix(m)}"
            )
        s, t, u = hit
        g = u.rows
        sub = matrix([[g[1][1], g[1][2]], [g[2][1], g[2][2]]])
        return _cat([
            _m3_perm(s.inverse()),
            _m3_scale(1, g[0][0]),
            _m3_lift_m2(_factor_m2_node(sub), {}),
            _m3_perm(t.inverse()),
        ])
    if z in (2, 3):
        col = _m3_collinear(m)
        if col is not None:
            kind, idx, cells = col
            if kind == "row":
                return _m3_split_row(m, idx, cells, depth)
            return _m3_split_col(m, idx, cells, depth)
        if z == 3:
            return _m3_x_route(m, depth)
        cells = sorted(
            (i, j) for i in range(1, 4) for j in range(1, 4) if m.entry(i, j) == BOTTOM
        )
        return _m3_clear(m, cells, depth)
    if z == 1:
        cells = [
            (i, j) for i in range(1, 4) for j in range(1, 4) if m.entry(i, j) == BOTTOM
        ]
        return _m3_clear(m, cells, depth)
    return _m3_dense(m, depth)


def factor_m3(m: Matrix) -> Word:
    """Factor any 3x3 tropical matrix over the m3 alphabet.

    Dispatches on the count and position of -inf entries: invertible
    matrices go to the group word; three or more bottoms are searched
    for a permuted triangular or block form; collinear bottom pairs
    split a triangular or block factor off; a diagonal bottom pattern
    lands in the X family; one or two scattered bottoms are grown by
    clearing an entry with a parametrized E_12; a dense matrix splits
    into easier pieces after column sorting.  Each recursion strictly
    increases the bottom count, so the depth is bounded (asserted at 6).
    """
    if m.semiring is not ZMAX:
        raise MembershipError("factor_m3 expects a zmax matrix")
    if m.n != 3:
        raise MembershipError(f"factor_m3 expects 3x3, got {m.n}x{m.n}")
    return Word("m3", 3, ZMAX, _m3_node(m, 0))


def factor(m: Matrix, monoid: str) -> Word:
    """Dispatch by monoid name, as the CLI does."""
    if monoid == "ut":
        return factor_ut(m)
    if monoid == "u":
        return factor_unitriangular(m)
    if monoid == "gl":
        return factor_gl(m)
    if monoid == "m2":
        return factor_m2(m)
    if monoid == "m3":
        return factor_m3(m)
    raise ValueError(f"unknown monoid {monoid!r}")
