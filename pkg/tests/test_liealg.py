from fractions import Fraction

import pytest

from refleq.errors import ConfigurationError
from refleq.freealg import commutator, in_left_ideal
from refleq.liealg import (Case, Conventions, BlockConventions, W_series,
                           Z_series, bar, eps, f_elem, f_gen_weight,
                           f_resolvent, f_resolvent_entry, fm_algebra,
                           gl_algebra, hc_phi, hc_psi, rho_labels,
                           signed_range, verify_cor13, verify_hc_fm,
                           verify_hc_gl, verify_lemma_eep, verify_prop12,
                           x_weight)
from refleq.series import TruncSeries
from refleq.smatrix import SeriesMatrix, block_inverse


def test_conventions_tilde_theta():
    c = Conventions(Case.SP, 3)
    assert [c.tilde(i) for i in (1, 2, 3)] == [2, 1, 3]
    assert all(c.theta(i) == 1 for i in (1, 2, 3))
    c2 = Conventions(Case.SO, 4)
    assert [c2.tilde(i) for i in (1, 2, 3, 4)] == [2, 1, 4, 3]
    assert [c2.theta(i) for i in (1, 2, 3, 4)] == [1, -1, 1, -1]
    with pytest.raises(ConfigurationError):
        Conventions(Case.SO, 3)


def test_block_conventions():
    c = BlockConventions(Case.SP, 1, 2)
    assert c.tilde(1) == 1            # n = 1 odd fixed point
    assert c.tilde(2) == 3 and c.tilde(3) == 2
    assert c.theta(2) == 1


def test_bar_involution():
    for m in (1, 2, 3):
        for c in signed_range(m):
            assert bar(m, bar(m, c)) == c


def test_eps():
    assert eps(Case.SP, 1, -2) == -1
    assert eps(Case.SP, -1, -2) == 1
    assert eps(Case.SO, 1, -2) == 1


def test_resolvent_low_order():
    # entries delta_ab u^{-1} + F_ab u^{-2} at order 2
    for case in Case:
        m = 2
        R = f_resolvent(case, m, 2)
        alg = fm_algebra(case, m)
        idx = signed_range(m)
        for i, a in enumerate(idx):
            for j, b in enumerate(idx):
                s = R.entry(i, j)
                assert s.coeff(1) == (1 if a == b else 0)
                assert s.coeff(2) == f_elem(alg, case, a, b) or (
                    not s.coeff(2) and not f_elem(alg, case, a, b))


def test_resolvent_inverts():
    for case in Case:
        m = 1
        K = 4
        alg = fm_algebra(case, m)
        from refleq.liealg import f_gen_matrix
        FM = f_gen_matrix(alg, case, m)
        R = f_resolvent(case, m, K)
        n = 2 * m
        # (u - F) * R == 1 up to order K-1 (exponent u costs one order)
        uI = SeriesMatrix([[TruncSeries(K, {-1: 1} if i == j else {}) for j in range(n)]
                           for i in range(n)])
        FMat = SeriesMatrix([[TruncSeries(K, {0: FM[i][j]} if FM[i][j] else {})
                              for j in range(n)] for i in range(n)])
        lhs = (uI - FMat) * R
        assert lhs.eq_upto(SeriesMatrix.identity(n, K), K - 1)
        rhs = R * (uI - FMat)
        assert rhs.eq_upto(SeriesMatrix.identity(n, K), K - 1)


def test_resolvent_diagonal_m1_order3():
    # m=1 diagonal entry: u^-1 + F_{-1,-1} u^-2 + (F_{-1,-1}^2 + F_{-1,1}F_{1,-1}) u^-3
    case = Case.SP
    alg = fm_algebra(case, 1)
    s = f_resolvent_entry(case, 1, -1, -1, 3)
    Fd = f_elem(alg, case, -1, -1)
    Fup = f_elem(alg, case, -1, 1)
    Fdn = f_elem(alg, case, 1, -1)
    assert s.coeff(1) == 1
    assert s.coeff(2) == Fd
    assert s.coeff(3) == Fd * Fd + Fup * Fdn


def test_bracket_with_resolvent_entries():
    # [F_ab, F_cd(u)] reproduces the defining-relation pattern entrywise
    for case in Case:
        m = 1
        K = 3
        alg = fm_algebra(case, m)
        idx = signed_range(m)
        R = {(c, d): f_resolvent_entry(case, m, c, d, K) for c in idx for d in idx}
        for a in idx:
            for b in idx:
                F = f_elem(alg, case, a, b)
                e = eps(case, a, b)
                for c in idx:
                    for d in idx:
                        lhs = R[(c, d)].map_coeffs(lambda t: commutator(F, t))
                        rhs = TruncSeries(K)
                        if c == b:
                            rhs = rhs + R[(a, d)]
                        if a == d:
                            rhs = rhs - R[(c, b)]
                        if c == -a:
                            rhs = rhs - R[(-b, d)].lmul_coeff(e)
                        if -b == d:
                            rhs = rhs + R[(c, -a)].lmul_coeff(e)
                        assert lhs == rhs, (case, a, b, c, d)


def test_trace_series_leading_terms_and_centrality():
    for case in Case:
        m = 2
        W = W_series(case, m, 4)
        assert W.coeff(1) == 2 * m
        alg = fm_algebra(case, m)
        for g in alg.gens:
            x = alg.gen(g)
            for c in W.c.values():
                assert commutator(x, c if not isinstance(c, int) else alg.scalar(c)) == 0
    Z = Z_series(2, 4)
    assert Z.coeff(1) == 2
    glalg = gl_algebra(2)
    for g in glalg.gens:
        for c in Z.c.values():
            assert commutator(glalg.gen(g), c if not isinstance(c, int) else glalg.scalar(c)) == 0


def test_weights():
    # raising generator E_1 = F_{-bar1, -bar2} has weight eps_1 - eps_2
    m = 2
    assert f_gen_weight(m, -bar(m, 1), -bar(m, 2)) == (Fraction(1), Fraction(-1))
    assert x_weight(m, bar(m, 1)) == (Fraction(-1), Fraction(0))


def test_rho():
    assert rho_labels(Case.SP, 3) == (3, 2, 1)
    assert rho_labels(Case.SO, 3) == (2, 1, 0)


def test_hc_cartan_monomial_fixed():
    alg = fm_algebra(Case.SP, 2)
    h = f_elem(alg, Case.SP, -1, -1) * f_elem(alg, Case.SP, -2, -2)
    red, clean = hc_psi(h)
    assert clean and red == h


def test_hc_drops_raising_suffix():
    alg = gl_algebra(2)
    e = alg.gen(("E", 1, 1)) * alg.gen(("E", 1, 2))
    red, clean = hc_phi(e)
    assert clean and not red


def test_verify_hc_gl():
    for l in (1, 2, 3):
        assert verify_hc_gl(l, 6).ok


def test_verify_hc_fm():
    for case in Case:
        for m in (1, 2):
            assert verify_hc_fm(case, m, 6).ok, (case, m)


def test_verify_prop12_and_cor13():
    for case in Case:
        assert verify_prop12(case, 1, 4).ok, case
        assert verify_cor13(case, 1, 4).ok, case
    assert verify_prop12(Case.SP, 2, 3).ok
    assert verify_cor13(Case.SO, 2, 3).ok


def test_verify_lemma_eep():
    assert verify_lemma_eep(1, 4).ok
    assert verify_lemma_eep(2, 4).ok
    assert verify_lemma_eep(3, 3).ok


def test_block_inverse_block_diagonal():
    K = 3
    one = TruncSeries.one(K)
    zero = TruncSeries(K)
    a = TruncSeries(K, {0: 1, 1: 2})
    d = TruncSeries(K, {0: 1, 1: -1})
    M = SeriesMatrix([[a, zero], [zero, d]])
    inv = block_inverse(M, 1, check_order=K - 1)
    assert inv.entry(0, 0) == a.inv()
    assert inv.entry(1, 1) == d.inv()
    assert inv.entry(0, 1) == zero


def test_block_inverse_vs_adjugate():
    # 2x2 scalar-series case against the cofactor formula
    K = 4
    a = TruncSeries(K, {0: 1, 1: 1})
    b = TruncSeries(K, {1: 2})
    c = TruncSeries(K, {1: Fraction(1, 3)})
    d = TruncSeries(K, {0: 1, 2: -1})
    M = SeriesMatrix([[a, b], [c, d]])
    inv = block_inverse(M, 1, check_order=K)
    det_inv = (a * d - b * c).inv()
    assert inv.entry(0, 0).eq_upto(d * det_inv, K)
    assert inv.entry(0, 1).eq_upto(-b * det_inv, K)
    assert inv.entry(1, 0).eq_upto(-c * det_inv, K)
    assert inv.entry(1, 1).eq_upto(a * det_inv, K)


def test_block_inverse_parabolic_shape():
    """Block inverse of the shifted generator matrix of f_{m+l}, m = l = 1.

    Modulo the left ideal of the complementary-block raising part, the
    bottom-right block of the inverse equals the resolvent of the small
    gl block, and the top-right block vanishes.
    """
    from refleq.modules import parind_fml_algebra
    case = Case.SP
    m = l = 1
    K = 2
    alg = parind_fml_algebra(case, m, l)
    from refleq.liealg import f_gen_matrix
    FM = f_gen_matrix(alg, case, m + l, sort="F")
    idx = signed_range(m + l)
    v0 = Fraction(case.sign, 2) + m + l  # constant shift of the spectral variable
    n4 = 2 * (m + l)
    M = SeriesMatrix([[TruncSeries(K, {-1: 1 if i == j else 0, 0: (v0 if i == j else 0)})
                       + TruncSeries(K, {0: -FM[i][j]} if FM[i][j] else {})
                       for j in range(n4)] for i in range(n4)])
    # rows/cols ordered -2,-1,1,2; the l x l corner is the row/col of index m+l=2
    inv = block_inverse(M, n4 - l)
    qp = alg.meta["qp_gens"]
    in_ideal = lambda el: in_left_ideal(el, lambda g: g in qp)
    # top-right block vanishes mod the ideal
    for i in range(n4 - l):
        s = inv.entry(i, n4 - l)
        assert all(in_ideal(_as_elem(alg, c)) for c in s.c.values())
    # bottom-right block equals the resolvent of the embedded gl_l
    Egen = f_elem(alg, case, m + 1, m + 1)
    res = SeriesMatrix.resolvent([[Egen]], K, shift=v0)
    diff = inv.entry(n4 - l, n4 - l) - res.entry(0, 0)
    assert all(in_ideal(_as_elem(alg, c)) for c in diff.c.values())


def _as_elem(alg, c):
    return alg.scalar(c) if isinstance(c, (int, Fraction)) else c
