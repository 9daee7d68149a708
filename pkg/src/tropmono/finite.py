"""Finite monoid computations: closures, J-classes, generating rank,
and prime certificates.

These run over matrices of either semiring, but every interesting finite
case here is Boolean (tropical closures are infinite and stop at the
element cap, which is a supported, flagged outcome rather than an
error).  Boolean matrices are keyed by an n^2-bit integer packing for
closure bookkeeping and the heavy pair scans.
"""

from __future__ import annotations

import json
from collections import deque

from .matrix import (
    Matrix,
    format_matrix,
    identity,
    is_invertible,
    mat_mul,
    matrix_to_json,
)

DEFAULT_CAP = 10 ** 6


def _key(m: Matrix):
    if m.semiring.name == "boolean":
        bits = 0
        pos = 0
        for row in m.rows:
            for x in row:
                bits |= x << pos
                pos += 1
        return bits
    return m.rows


class FiniteMonoid:
    """A closure result: elements (index 0 is the identity), the indices
    of the generators inside the element list, and the right Cayley
    action cayley[e][g] = index of elements[e] * generator g.

    closed is False when the cap cut the walk short; in that case cayley
    rows exist only for the elements whose products were explored.
    """

    __slots__ = ("n", "semiring", "elements", "gens", "cayley", "closed", "_index")

    def __init__(self, n, semiring, elements, gens, cayley, closed):
        self.n = n
        self.semiring = semiring
        self.elements = elements
        self.gens = gens
        self.cayley = cayley
        self.closed = closed
        self._index = {_key(m): i for i, m in enumerate(elements)}

    def __len__(self):
        return len(self.elements)

    def index_of(self, m: Matrix):
        return self._index.get(_key(m))

    def __contains__(self, m: Matrix):
        return _key(m) in self._index


def closure(gens, cap: int = DEFAULT_CAP) -> FiniteMonoid:
    """Multiply out the monoid generated by gens (plus the identity).

    Breadth-first on right multiplication by the generators.  Stops when
    the element count would pass cap and flags the result not closed.
    """
    gens = list(gens)
    if gens:
        n, semiring = gens[0].n, gens[0].semiring
        for g in gens:
            if g.n != n or g.semiring is not semiring:
                raise ValueError("generators disagree on dimension or semiring")
    else:
        raise ValueError("closure needs at least one matrix to fix n; pass [identity(n, sr)]")
    elements = [identity(n, semiring)]
    index = {_key(elements[0]): 0}
    gen_idx = []
    for g in gens:
        k = _key(g)
        if k not in index:
            index[k] = len(elements)
            elements.append(g)
        gen_idx.append(index[k])
    cayley: list = []
    closed = True
    queue = deque(range(len(elements)))
    while queue:
        e = queue.popleft()
        if e < len(cayley):
            continue
        while len(cayley) <= e:
            cayley.append(None)
        row = []
        for g in gens:
            p = mat_mul(elements[e], g)
            k = _key(p)
            i = index.get(k)
            if i is None:
                if len(elements) >= cap:
                    closed = False
                    row.append(-1)
                    continue
                i = len(elements)
                index[k] = i
                elements.append(p)
                queue.append(i)
            row.append(i)
        cayley[e] = row
    while len(cayley) < len(elements):
        cayley.append(None)
    return FiniteMonoid(n, semiring, elements, gen_idx, cayley, closed)


# -- J-classes -------------------------------------------------------------

class JClassDecomposition:
    """The partition of a closed finite monoid by mutual two-sided-ideal
    membership, with the ideal order between classes."""

    __slots__ = ("classes", "_class_of", "_reach")

    def __init__(self, classes, class_of, reach):
        self.classes = classes
        self._class_of = class_of
        self._reach = reach

    def class_of(self, e: int) -> int:
        return self._class_of[e]

    def leq(self, ci: int, cj: int) -> bool:
        """Class order: ci below cj when ci's ideal is contained in cj's,
        i.e. ci's members are reachable from cj's by multiplication."""
        rep_i = self.classes[ci][0]
        rep_j = self.classes[cj][0]
        return bool(self._reach[rep_j] >> rep_i & 1)

    def __len__(self):
        return len(self.classes)


def jclasses(fm: FiniteMonoid) -> JClassDecomposition:
    """J-classes of a closed monoid: x and y share a class exactly when
    each lies in the other's two-sided ideal.

    Ideals are computed by breadth-first walks that multiply by the
    generators on both sides (left and right steps commute, so the
    walks reach exactly S^1 x S^1).
    """
    if not fm.closed:
        raise ValueError("jclasses needs a closed monoid (closure hit its cap)")
    size = len(fm.elements)
    gmats = [fm.elements[g] for g in fm.gens]
    succ = [[] for _ in range(size)]
    for e in range(size):
        row = fm.cayley[e]
        for i, g in enumerate(gmats):
            succ[e].append(row[i])
            left = fm.index_of(mat_mul(g, fm.elements[e]))
            succ[e].append(left)
    reach = []
    for start in range(size):
        seen = 1 << start
        stack = [start]
        while stack:
            v = stack.pop()
            for w in succ[v]:
                if not (seen >> w & 1):
                    seen |= 1 << w
                    stack.append(w)
        reach.append(seen)
    class_of = [-1] * size
    classes = []
    for e in range(size):
        if class_of[e] >= 0:
            continue
        members = [
            f
            for f in range(e, size)
            if class_of[f] < 0 and (reach[e] >> f & 1) and (reach[f] >> e & 1)
        ]
        ci = len(classes)
        for f in members:
            class_of[f] = ci
        classes.append(members)
    return JClassDecomposition(classes, class_of, reach)


# -- generation and rank -----------------------------------------------------

def _product_table(fm: FiniteMonoid):
    size = len(fm.elements)
    table = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            table[i][j] = fm.index_of(mat_mul(fm.elements[i], fm.elements[j]))
    return table


def _generated_indices(fm: FiniteMonoid, subset, table=None) -> set:
    """Indices of the submonoid generated by the subset (identity included)."""
    ident = fm.index_of(identity(fm.n, fm.semiring))
    seen = {ident} | set(subset)
    queue = deque(seen)
    while queue:
        e = queue.popleft()
        for g in subset:
            if table is not None:
                p = table[e][g]
            else:
                p = fm.index_of(mat_mul(fm.elements[e], fm.elements[g]))
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def is_generating(fm: FiniteMonoid, subset) -> bool:
    """Does the subset (of element indices) generate the whole monoid?"""
    if not fm.closed:
        raise ValueError("is_generating needs a closed monoid")
    return len(_generated_indices(fm, sorted(set(subset)))) == len(fm.elements)


def irredundant(fm: FiniteMonoid, subset) -> list:
    """For each member of the subset, True when dropping it breaks
    generation (the member is necessary)."""
    subset = list(subset)
    out = []
    for i in range(len(subset)):
        rest = subset[:i] + subset[i + 1 :]
        out.append(not is_generating(fm, rest))
    return out


def _unit_flags(fm: FiniteMonoid):
    return [is_invertible(m) for m in fm.elements]


def _prime_orbits(fm: FiniteMonoid, table):
    """Orbits (under unit multiples on both sides) of the prime elements.

    A generating set must meet every such orbit: a prime never splits as
    a product of two non-units, so nothing else can produce it.
    """
    units = _unit_flags(fm)
    unit_idx = [i for i, u in enumerate(units) if u]
    size = len(fm.elements)
    orbits = []
    seen_orbit = set()
    for x in range(size):
        if units[x] or x in seen_orbit:
            continue
        prime = True
        for u in range(size):
            row = table[u]
            for v in range(size):
                if row[v] == x and units[u] == units[v]:
                    # Either two units (impossible for non-unit x) or two
                    # non-units: not exactly one unit factor.
                    prime = False
                    break
            if not prime:
                break
        if prime:
            orbit = frozenset(table[table[u][x]][v] for u in unit_idx for v in unit_idx)
            seen_orbit |= orbit
            orbits.append(orbit)
    return orbits


def rank_search(fm: FiniteMonoid, k: int):
    """Exhaustive search for a generating subset of size k, smallest
    index tuples first; None when no size-k subset generates.

    Candidates must meet every prime orbit (see _prime_orbits), which
    prunes most tuples before the closure test.
    """
    if not fm.closed:
        raise ValueError("rank_search needs a closed monoid")
    if len(fm.elements) > 64:
        raise ValueError(f"rank_search supports at most 64 elements, got {len(fm.elements)}")
    if k > 4:
        raise ValueError(f"rank_search supports k <= 4, got {k}")
    table = _product_table(fm)
    orbits = _prime_orbits(fm, table)
    size = len(fm.elements)
    import itertools

    for subset in itertools.combinations(range(size), k):
        ss = set(subset)
        if any(not (orbit & ss) for orbit in orbits):
            continue
        if len(_generated_indices(fm, list(subset), table)) == size:
            return list(subset)
    return None


def prime_certificate(x: Matrix, fm: FiniteMonoid) -> bool:
    """Certify that x is prime in fm: every two-factor product equal to
    x has exactly one unit factor.

    Scans all |fm|^2 ordered pairs.  Units are excluded from being
    prime by convention (a unit splits as unit times unit), so passing
    one raises ValueError.
    """
    if not fm.closed:
        raise ValueError("prime_certificate needs a closed monoid")
    xi = fm.index_of(x)
    if xi is None:
        raise ValueError(f"matrix not in the monoid: {format_matrix(x)}")
    if is_invertible(x):
        raise ValueError("units are excluded from primality")
    units = _unit_flags(fm)
    if fm.semiring.name == "boolean":
        packed = [_key(m) for m in fm.elements]
        rows = [
            [tuple((p >> (r * fm.n + c)) & 1 for c in range(fm.n)) for r in range(fm.n)]
            for p in packed
        ]
        # Pack each element as a tuple of row bitmasks for fast products.
        rmask = [
            tuple(sum(bit << c for c, bit in enumerate(row)) for row in rs) for rs in rows
        ]
        target = rmask[xi]
        n = fm.n
        full = (1 << n) - 1
        for u in range(len(rmask)):
            au = rmask[u]
            for v in range(len(rmask)):
                bv = rmask[v]
                prod = []
                ok = True
                for r in range(n):
                    acc = 0
                    arow = au[r]
                    c = 0
                    while arow:
                        if arow & 1:
                            acc |= bv[c]
                        arow >>= 1
                        c += 1
                    if acc != target[r]:
                        ok = False
                        break
                    prod.append(acc)
                if ok and units[u] == units[v]:
                    return False
        return True
    for u, mu in enumerate(fm.elements):
        for v, mv in enumerate(fm.elements):
            if mat_mul(mu, mv) == x and units[u] == units[v]:
                return False
    return True


def x_family_j_related(s: int, t: int) -> bool:
    """Are the 3x3 X matrices with corner parameters s and t in the
    same J-class of the tropical 3x3 monoid?

    Exactly when s = t or s = -t: conjugating X(s) by monomial matrices
    negates or keeps the corner parameter and nothing else reaches it,
    so each |s| pins its own class.  Any integers are accepted; the
    generator letters themselves only carry non-negative indices since
    X(-s) sits in the same class as X(s).
    """
    return s == t or s + t == 0


def monoid_to_json(fm: FiniteMonoid) -> dict:
    flat = []
    for row in fm.cayley:
        if row is None:
            flat.extend([-1] * len(fm.gens))
        else:
            flat.extend(row)
    return {
        "n": fm.n,
        "semiring": fm.semiring.name,
        "closed": fm.closed,
        "elements": [matrix_to_json(m)["rows"] for m in fm.elements],
        "gens": list(fm.gens),
        "cayley": flat,
    }


def monoid_to_json_text(fm: FiniteMonoid) -> str:
    return json.dumps(monoid_to_json(fm))
