import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from refleq.errors import ConfigurationError
from refleq.freealg import (Algebra, commutator, hom_apply, in_left_ideal,
                            in_right_ideal, jacobi_check)
from refleq.liealg import (Case, compose, fm_algebra, gl_algebra, weyl_algebra,
                           bm_tensor_algebra, zeta_images, f_elem, fm_rep_gens)


def test_heisenberg_relation():
    W = weyl_algebra(1, 1)
    x, d = W.gen(("x", 1, 1)), W.gen(("d", 1, 1))
    assert d * x == x * d + 1
    assert commutator(d, x) == W.one()


def test_weyl_power_normal_form():
    W = weyl_algebra(1, 1)
    x, d = W.gen(("x", 1, 1)), W.gen(("d", 1, 1))
    assert x * x * d == W.element({(("x", 1, 1), ("x", 1, 1), ("d", 1, 1)): 1})
    # d x^2 = x^2 d + 2x
    assert d * x * x == x * x * d + x.scaled(2)


def test_gl_bracket():
    A = gl_algebra(2)
    E = lambda i, j: A.gen(("E", i, j))
    assert commutator(E(1, 2), E(2, 1)) == E(1, 1) - E(2, 2)
    assert commutator(E(1, 1), E(1, 2)) == E(1, 2)


def test_one_is_identity():
    A = gl_algebra(2)
    e = A.gen(("E", 1, 2)) + A.scalar(Fraction(3, 7))
    assert A.one() * e == e
    assert e * A.one() == e


def test_fm_sl2_triple():
    # In the sp_2 family (m=1) the elements F_{-1,1}/2, F_{1,-1}/2, F_{-1,-1}
    # form an sl2-triple: [E, F] = H.
    alg = fm_algebra(Case.SP, 1)
    E = f_elem(alg, Case.SP, -1, 1).scaled(Fraction(1, 2))
    F = f_elem(alg, Case.SP, 1, -1).scaled(Fraction(1, 2))
    H = f_elem(alg, Case.SP, -1, -1)
    assert commutator(E, F) == H
    assert commutator(H, E) == E.scaled(2)
    assert commutator(H, F) == F.scaled(-2)


def test_fm_pair_identification():
    # F_{ab} = -eps_ab F_{-b,-a}; the so-family diagonal-cross generator vanishes
    alg_sp = fm_algebra(Case.SP, 2)
    assert f_elem(alg_sp, Case.SP, 1, 2) == f_elem(alg_sp, Case.SP, -2, -1).scaled(-1)
    alg_so = fm_algebra(Case.SO, 2)
    assert not f_elem(alg_so, Case.SO, 1, -1)
    assert f_elem(alg_sp, Case.SP, 1, -1)


def test_fm_bracket_matches_defining_relation():
    # spot-check [F_cd, F_ab] for the stored rewrite against the relation
    for case in Case:
        m = 2
        alg = fm_algebra(case, m)
        idx = [-2, -1, 1, 2]
        rng = random.Random(7)
        for _ in range(25):
            a, b, c, d = (rng.choice(idx) for _ in range(4))
            lhs = commutator(f_elem(alg, case, a, b), f_elem(alg, case, c, d))
            from refleq.liealg import eps
            e = eps(case, a, b)
            rhs = ((f_elem(alg, case, a, d).scaled(1) if c == b else alg.zero())
                   - (f_elem(alg, case, c, b) if a == d else alg.zero())
                   - (f_elem(alg, case, -b, d).scaled(e) if c == -a else alg.zero())
                   + (f_elem(alg, case, c, -a).scaled(e) if -b == d else alg.zero()))
            assert lhs == rhs


def test_jacobi_gl_and_fm():
    ok, bad = jacobi_check(gl_algebra(2))
    assert ok, bad
    for case in Case:
        ok, bad = jacobi_check(fm_algebra(case, 2))
        assert ok, bad


def test_jacobi_weyl_and_mixed():
    ok, _ = jacobi_check(weyl_algebra(2, 2))
    assert ok
    from refleq.liealg import bm_defar_algebra
    ok, bad = jacobi_check(bm_defar_algebra(Case.SP, 1, 1))
    assert ok, bad


def test_jacobi_negative_control():
    # corrupt one structure constant: Jacobi reports an offending triple
    gens = [("a", 1), ("a", 2), ("a", 3)]
    brackets = {(("a", 2), ("a", 1)): {(("a", 3),): 1},
                (("a", 3), ("a", 1)): {(("a", 3),): 1},
                (("a", 3), ("a", 2)): {(("a", 1),): 1}}
    bad_alg = Algebra(gens, brackets, name="corrupt")
    ok, witness = jacobi_check(bad_alg)
    assert not ok and witness is not None


def test_zeta_is_homomorphism():
    # the differential-operator images respect every bracket (m, n <= 2)
    for case in Case:
        for m in (1, 2):
            for n in (1, 2):
                if case is Case.SO and n % 2:
                    continue
                W = weyl_algebra(m, n)
                imgs = zeta_images(case, m, n, W)
                falg = fm_algebra(case, m)
                gens = list(imgs)
                for g in gens:
                    for h in gens:
                        br = commutator(falg.gen(g), falg.gen(h))
                        lhs = commutator(imgs[g], imgs[h])
                        rhs = hom_apply(imgs, br, W)
                        assert lhs == rhs, (case, m, n, g, h)


def test_zeta_values_match_examples():
    # m=1, n=1, sp family: F_{11} -> 1/2 + x d
    W = weyl_algebra(1, 1)
    imgs = zeta_images(Case.SP, 1, 1, W)
    falg = fm_algebra(Case.SP, 1)
    F11 = f_elem(falg, Case.SP, 1, 1)
    img = hom_apply(imgs, F11, W)
    assert img == W.scalar(Fraction(1, 2)) + W.gen(("x", 1, 1)) * W.gen(("d", 1, 1))
    # m=1, n=2, sp family: F_{1,-1} -> -2 x_{11} x_{12}
    W2 = weyl_algebra(1, 2)
    imgs2 = zeta_images(Case.SP, 1, 2, W2)
    img2 = hom_apply(imgs2, f_elem(falg, Case.SP, 1, -1), W2)
    assert img2 == (W2.gen(("x", 1, 1)) * W2.gen(("x", 1, 2))).scaled(-2)


def test_hom_apply_missing_image():
    A = gl_algebra(2)
    with pytest.raises(ConfigurationError):
        hom_apply({}, A.gen(("E", 1, 1)), A)


def test_algebra_mismatch():
    with pytest.raises(ConfigurationError):
        gl_algebra(2).one() * gl_algebra(3).one()


def test_left_ideal_suffix_test():
    # in U(gl_2): E11*E12 ends in a raising generator, E12*E11 does not
    A = gl_algebra(2)
    up = A.meta["up"]
    e = A.gen(("E", 1, 1)) * A.gen(("E", 1, 2))
    assert in_left_ideal(e, lambda g: g in up)
    # E12 E11 = (E11 - 1) E12 is also in the ideal; the suffix test sees it
    e2 = A.gen(("E", 1, 2)) * A.gen(("E", 1, 1))
    assert in_left_ideal(e2, lambda g: g in up)
    e3 = A.gen(("E", 2, 1)) * A.gen(("E", 1, 1))
    assert not in_left_ideal(e3, lambda g: g in up)


def test_right_ideal_prefix_test():
    A = gl_algebra(2)
    low = A.meta["low"]
    e = A.gen(("E", 2, 1)) * A.gen(("E", 1, 1))
    assert in_right_ideal(e, lambda g: g in low)


def test_nc_dump_canonical():
    A = gl_algebra(2)
    e = A.gen(("E", 1, 2)).scaled(Fraction(1, 2)) + A.one()
    assert e.dumps() == "(ncsum (term 1) (term 1/2 (E 1 2)))"


@st.composite
def nc_elements(draw):
    A = gl_algebra(2)
    gens = list(A.gens)
    n_terms = draw(st.integers(0, 3))
    e = A.zero()
    for _ in range(n_terms):
        w = tuple(draw(st.sampled_from(gens)) for _ in range(draw(st.integers(0, 3))))
        c = draw(st.integers(-3, 3))
        e = e + A.element({w: c})
    return e


@given(nc_elements(), nc_elements(), nc_elements())
@settings(max_examples=40, deadline=None)
def test_normalize_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(nc_elements())
@settings(max_examples=30, deadline=None)
def test_normalize_idempotent(a):
    # re-normalizing the stored words changes nothing
    again = a.alg.element({w: c for w, c in a.terms()})
    assert again == a
