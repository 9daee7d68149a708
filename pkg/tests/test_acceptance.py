"""The acceptance gate: nine criteria, one test per criterion.

Each test is self-contained, pins its tolerance (exact equality
throughout; the scalars are integers or -inf) and asserts its runtime
bound.  Run with -s to see the per-criterion summary lines; under
plain `pytest -v` the pass/fail line per criterion is the test line
itself.
"""

import itertools
import random
import time

from tropmono.factorize import evaluate, factor_gl, factor_m2, factor_m3, factor_unitriangular, factor_ut
from tropmono.finite import closure, is_generating, prime_certificate, rank_search, x_family_j_related
from tropmono.genset import gens_m2_zmax, gens_m3_zmax, gens_ut_boolean, x_letter
from tropmono.matrix import (
    Perm,
    boolean_image,
    construct_A,
    construct_E,
    construct_P,
    diag,
    identity,
    mat_mul,
    matrix,
    parse_matrix,
    regularity_witness,
)
from tropmono.semiring import BOOLEAN, BOTTOM, ZMAX, is_finite


def rnd_entry(rng, p_bot=0.3, lo=-20, hi=20):
    return BOTTOM if rng.random() < p_bot else rng.randint(lo, hi)


def test_criterion_1_factorization_soundness_3x3():
    """Multiply-back is entry-exact on the full {-inf,0,1} grid (3^9
    matrices) and on 10^4 random matrices with entries in
    {-inf} u [-20,20].  Tolerance: exact equality.  Budget: 30 s."""
    t0 = time.monotonic()
    for cells in itertools.product((BOTTOM, 0, 1), repeat=9):
        m = matrix([cells[0:3], cells[3:6], cells[6:9]])
        assert evaluate(factor_m3(m)) == m
    rng = random.Random(20260815)
    for _ in range(10_000):
        m = matrix([[rnd_entry(rng) for _ in range(3)] for _ in range(3)])
        assert evaluate(factor_m3(m)) == m
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0, f"took {elapsed:.1f}s"
    print(f"criterion 1: PASS (19683 grid + 10000 random, exact, {elapsed:.1f}s)")


def test_criterion_2_factorization_soundness_ut_u_gl_m2():
    """10^3 random instances per family: upper triangular, unit
    triangular, and invertible matrices spread over n in {2,3,4,5}
    (250 each), plus 10^3 full 2x2 matrices.  Exact.  Budget: 10 s."""
    rng = random.Random(20260816)
    t0 = time.monotonic()
    for n in (2, 3, 4, 5):
        for _ in range(250):
            rows = [[rnd_entry(rng) if j >= i else BOTTOM for j in range(n)] for i in range(n)]
            m = matrix(rows)
            assert evaluate(factor_ut(m)) == m
        for _ in range(250):
            rows = [
                [0 if j == i else (rnd_entry(rng) if j > i else BOTTOM) for j in range(n)]
                for i in range(n)
            ]
            m = matrix(rows)
            assert evaluate(factor_unitriangular(m)) == m
        for _ in range(250):
            img = list(range(1, n + 1))
            rng.shuffle(img)
            m = mat_mul(diag([rng.randint(-20, 20) for _ in range(n)]), construct_P(Perm(img)))
            assert evaluate(factor_gl(m)) == m
    for _ in range(1000):
        m = matrix([[rnd_entry(rng) for _ in range(2)] for _ in range(2)])
        assert evaluate(factor_m2(m)) == m
    elapsed = time.monotonic() - t0
    assert elapsed < 10.0, f"took {elapsed:.1f}s"
    print(f"criterion 2: PASS (4x1000 instances, exact, {elapsed:.1f}s)")


def test_criterion_3_boolean_closure_oracle():
    """Closure sizes are exactly 16 (all 2x2 Boolean matrices from the
    support images of the 2x2 alphabet), 8, and 64 (upper triangular
    Boolean patterns, 2^(n(n+1)/2) for n = 2, 3).  Budget: 1 s."""
    t0 = time.monotonic()
    fm = closure([boolean_image(g) for g in gens_m2_zmax().realized()])
    assert len(fm) == 16 and fm.closed
    fm2 = closure([g.realize(2, BOOLEAN) for g in gens_ut_boolean(2).letters])
    assert len(fm2) == 8 and fm2.closed
    fm3 = closure([g.realize(3, BOOLEAN) for g in gens_ut_boolean(3).letters])
    assert len(fm3) == 64 and fm3.closed
    elapsed = time.monotonic() - t0
    assert elapsed < 1.0, f"took {elapsed:.2f}s"
    print(f"criterion 3: PASS (16/8/64 exact, {elapsed:.2f}s)")


def test_criterion_4_rank_of_full_2x2_boolean_is_3():
    """No pair among all C(16,2) = 120 pairs generates the 16-element
    monoid; some triple does.  Budget: 5 s."""
    t0 = time.monotonic()
    fm = closure([boolean_image(g) for g in gens_m2_zmax().realized()])
    assert len(fm) == 16
    pairs = list(itertools.combinations(range(16), 2))
    assert len(pairs) == 120
    assert not any(is_generating(fm, p) for p in pairs)
    assert rank_search(fm, 2) is None
    triple = rank_search(fm, 3)
    assert triple is not None and is_generating(fm, triple)
    elapsed = time.monotonic() - t0
    assert elapsed < 5.0, f"took {elapsed:.2f}s"
    print(f"criterion 4: PASS (120 pairs fail, triple {triple} generates, {elapsed:.2f}s)")


def test_criterion_5_prime_certificate_in_3x3_boolean():
    """The support image of every corner letter is one fixed Boolean
    matrix; an exhaustive 512^2 ordered-pair scan certifies it prime in
    the full 512-element 3x3 Boolean monoid.  Budget: 10 s."""
    t0 = time.monotonic()
    fm = closure([boolean_image(g) for g in gens_m3_zmax().realized()])
    assert len(fm) == 512 and fm.closed
    images = {boolean_image(x_letter(s).realize(3, ZMAX)) for s in range(11)}
    assert len(images) == 1  # every corner parameter has the same support
    x = images.pop()
    assert prime_certificate(x, fm)
    elapsed = time.monotonic() - t0
    assert elapsed < 10.0, f"took {elapsed:.2f}s"
    print(f"criterion 5: PASS (512 elements, 262144-pair scan, {elapsed:.2f}s)")


def test_criterion_6_corner_family_j_classes():
    """The family relation is s = t or s + t = 0 on the whole grid
    [-10,10]^2, so the eleven realized corner letters land in eleven
    distinct classes (the desk-scale witness that the 3x3 tropical
    monoid cannot be finitely generated)."""
    for s in range(-10, 11):
        for t in range(-10, 11):
            assert x_family_j_related(s, t) == (s == t or s + t == 0)
    # the letters realize to distinct matrices, pairwise unrelated
    mats = [x_letter(i).realize(3, ZMAX) for i in range(11)]
    assert len(set(mats)) == 11
    classes = []
    for s in range(11):
        for cls in classes:
            if x_family_j_related(s, cls[0]):
                cls.append(s)
                break
        else:
            classes.append([s])
    assert len(classes) == 11
    print("criterion 6: PASS (relation exact on [-10,10]^2, 11 distinct classes)")


def test_criterion_7_regularity():
    """Residuation rejects every corner letter X_0..X_10 and produces a
    verified witness (m * w * m = m, exact) for the identity, all three
    A_i(-inf), E_12, and the 2x2 letter with rows (0 0; 0 -inf).
    Budget: 1 s."""
    t0 = time.monotonic()
    for s in range(11):
        x = x_letter(s).realize(3, ZMAX)
        wit, variant = regularity_witness(x)
        assert wit is None and variant == ""
    accepted = [identity(3)]
    accepted += [construct_A(i, BOTTOM, 3) for i in (1, 2, 3)]
    accepted.append(construct_E(1, 2, 3))
    accepted.append(parse_matrix("0 0; 0 -inf"))
    for m in accepted:
        wit, variant = regularity_witness(m)
        assert wit is not None and variant in ("exact", "clamped")
        assert mat_mul(mat_mul(m, wit), m) == m
    elapsed = time.monotonic() - t0
    assert elapsed < 1.0, f"took {elapsed:.2f}s"
    print(f"criterion 7: PASS (11 rejections, 6 verified witnesses, {elapsed:.2f}s)")


def test_criterion_8_irredundancy_invariants():
    """Random words over the three-letter alphabets obtained by dropping
    one letter from {A, B, E_12, A_1(-inf)}: without A_1(-inf) every
    product keeps at least one finite entry in each row and column;
    without E_12 it keeps at most one.  10^4 words each, fixed seed,
    zero violations.  (The corner letters are excluded: any of them
    already carries two finite entries in a row, so the at-most-one
    half is a statement about the other four letters.)"""
    letters = {g.text(): g.realize(3, ZMAX) for g in gens_m3_zmax().letters}
    no_bottom_scaler = [letters["A"], letters["B"], letters["E(1,2,0)"]]
    no_elem = [letters["A"], letters["B"], letters["Ai(1,-inf)"]]
    rng = random.Random(20260817)

    def rand_word(gens):
        m = identity(3)
        for _ in range(rng.randint(1, 14)):
            m = mat_mul(m, rng.choice(gens))
        return m

    violations = 0
    for _ in range(10_000):
        m = rand_word(no_bottom_scaler)
        for i in range(1, 4):
            if not any(is_finite(m.entry(i, j)) for j in range(1, 4)):
                violations += 1
            if not any(is_finite(m.entry(j, i)) for j in range(1, 4)):
                violations += 1
    for _ in range(10_000):
        m = rand_word(no_elem)
        for i in range(1, 4):
            if sum(1 for j in range(1, 4) if is_finite(m.entry(i, j))) > 1:
                violations += 1
            if sum(1 for j in range(1, 4) if is_finite(m.entry(j, i))) > 1:
                violations += 1
    assert violations == 0
    print("criterion 8: PASS (2 x 10000 words, zero violations)")


def test_criterion_9_bottom_pattern_coverage():
    """Exhaustive audit of all 2^9 bottom patterns: every pattern with
    at least four bottoms can be row/column permuted to an upper
    triangular pattern or to a 1+2 block diagonal pattern (top-left
    cell plus a lower-right 2x2 block).  Zero escapes, which is what
    the dense >= 4-bottom branch of the 3x3 factorizer relies on."""
    perms = [Perm(img) for img in itertools.permutations((1, 2, 3))]
    escapes = []
    for bits in range(512):
        bottom = {(i, j) for i in range(3) for j in range(3) if bits >> (3 * i + j) & 1}
        if len(bottom) < 4:
            continue
        ok = False
        for rho in perms:
            for gamma in perms:
                moved = {(rho.inverse()(i + 1) - 1, gamma(j + 1) - 1) for (i, j) in bottom}
                if {(1, 0), (2, 0), (2, 1)} <= moved:
                    ok = True  # upper triangular up to permutation
                elif {(0, 1), (0, 2), (1, 0), (2, 0)} <= moved:
                    ok = True  # 1 + 2 block diagonal up to permutation
                if ok:
                    break
            if ok:
                break
        if not ok:
            escapes.append(bottom)
    assert escapes == []
    print("criterion 9: PASS (all >=4-bottom patterns covered, zero escapes)")
