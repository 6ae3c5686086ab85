"""Generator-series machinery: images, relation checkers, central series.

Everything here works with concrete images of the generator series: square
matrices of truncated series over an enveloping/Weyl-type coefficient ring.
A map into such a ring is a homomorphism from the RTT (resp. reflection)
presentation exactly when its image matrix satisfies the defining relation,
and that is what the checkers assert, coefficient by coefficient, in the
denominator-cleared two-variable form.

Truncation bookkeeping: the cleared relations multiply by u^2 - v^2 (resp.
u - v), so a check up to bi-order (K, K) needs input series exact to order
K + 2 (resp. K + 1).  The checkers enforce that through the `slack` of the
supplied matrices.
"""

from fractions import Fraction
from itertools import product

from .errors import ConfigurationError, DegeneracyError
from .freealg import commutator
from .liealg import (Case, Conventions, BlockConventions, bm_tensor_algebra,
                     cached, compose, eps, f_gen_matrix, f_rep, fm_algebra,
                     fm_fragment, gl_algebra, gl_fragment, signed_range,
                     weyl_algebra, weyl_fragment, zeta_images)
from .report import check, failed, passed
from .series import BiTruncSeries, TruncSeries
from .smatrix import SeriesMatrix

HALF = Fraction(1, 2)


# -- coefficient rings -------------------------------------------------------


def al_algebra(l, n, esort="E", xsort="x", dsort="d"):
    """U(gl_l) (x) PD(C^l x C^n) as one algebra with commuting blocks."""
    def build():
        egens, ebr = gl_fragment(esort, l)
        wgens, wbr = weyl_fragment(xsort, dsort, range(1, l + 1), range(1, n + 1))
        meta = {"sort": esort, "l": l, "n": n, "weyl": (xsort, dsort)}
        from .freealg import Algebra
        return Algebra(egens + wgens, {**ebr, **wbr}, name=f"A({l},{n})",
                       meta=meta, split=[len(egens)])
    return cached(("al", l, n, esort, xsort, dsort), build)


def tensor_gl_algebra(n, factors, sorts):
    """U(gl_n)^{(x) factors} with one sort per commuting factor."""
    def build():
        gens, brackets, split = [], {}, []
        for s in sorts:
            fg, fb = gl_fragment(s, n)
            gens.extend(fg)
            brackets.update(fb)
            split.append(len(gens))
        from .freealg import Algebra
        return Algebra(gens, brackets, name=f"U(gl_{n})^{factors}",
                       meta={"n": n}, split=split[:-1])
    return cached(("tensor_gl", n, factors, tuple(sorts)), build)


def bm_al_algebra(case, m, n, l):
    """U(f_m) (x) PD(m x n) (x) U(gl_l) (x) PD(l x n), all blocks commuting."""
    def build():
        fgens, fbr = fm_fragment("F", case, m)
        w1gens, w1br = weyl_fragment("x", "d", range(1, m + 1), range(1, n + 1))
        egens, ebr = gl_fragment("E", l)
        w2gens, w2br = weyl_fragment("y", "e", range(1, l + 1), range(1, n + 1))
        gens = fgens + w1gens + egens + w2gens
        split = [len(fgens), len(fgens) + len(w1gens),
                 len(fgens) + len(w1gens) + len(egens)]
        from .freealg import Algebra
        meta = dict(fm_algebra(case, m).meta)
        meta.update({"n": n, "l": l})
        return Algebra(gens, {**fbr, **w1br, **ebr, **w2br},
                       name=f"B({case.value},{m},{n})xA({l},{n})", meta=meta,
                       split=split)
    return cached(("bm_al", case, m, n, l), build)


# -- image builders ----------------------------------------------------------


def eval_images(n, K, alg=None, sort="E"):
    """T_ij(u) -> delta_ij + E_ij u^{-1} over U(gl_n)."""
    alg = alg or gl_algebra(n, sort)
    out = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            coeffs = {1: alg.gen((sort, i, j))}
            if i == j:
                coeffs[0] = 1
            row.append(TruncSeries(K, coeffs))
        out.append(row)
    return SeriesMatrix(out)


def alpha_images(l, n, K, alg=None, esort="E", xsort="x", dsort="d"):
    """T_ij(u) -> delta_ij + sum_ab (u+E')^{-1}_ab x_ai d_bj over A_l."""
    alg = alg or al_algebra(l, n, esort, xsort, dsort)
    Ep = [[-alg.gen((esort, b, a)) for b in range(1, l + 1)] for a in range(1, l + 1)]
    R = SeriesMatrix.resolvent(Ep, K)  # (u + E')^{-1}
    out = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            s = TruncSeries(K, {0: 1} if i == j else {})
            for a in range(1, l + 1):
                for b in range(1, l + 1):
                    xd = alg.gen((xsort, a, i)) * alg.gen((dsort, b, j))
                    s = s + R.entry(a - 1, b - 1).rmul_coeff(xd)
            row.append(s)
        out.append(row)
    return SeriesMatrix(out)


def pin_images(case, n, K, alg=None, sort="E"):
    """S_ij(u) -> delta_ij + (E_ij - theta theta E_tilde)/(u +- 1/2)."""
    alg = alg or gl_algebra(n, sort)
    conv = Conventions(case, n)
    c = Fraction(case.sign, 2)
    # 1/(u + c) = sum_s (-c)^s u^{-s-1}
    inv = TruncSeries(K, {s + 1: (-c) ** s for s in range(K)})
    out = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            g = alg.gen((sort, i, j)) - alg.gen(
                (sort, conv.tilde(j), conv.tilde(i))).scaled(conv.theta(i) * conv.theta(j))
            s = inv.rmul_coeff(g)
            if i == j:
                s = s + TruncSeries.one(K)
            row.append(s)
        out.append(row)
    return SeriesMatrix(out)


def pq_elements(case, m, n, alg, conv=None, xsort="x", dsort="d"):
    """The signed-index annihilation/creation pairs used by the image formulas.

    p_{c,i} = x_{-c,i} and q_{c,i} = d_{-c,i} for c < 0;
    p_{c,i} = -theta_i d_{c,~i} and q_{c,i} = theta_i x_{c,~i} for c > 0.
    """
    conv = conv or Conventions(case, n)

    def p(c, i):
        if c < 0:
            return alg.gen((xsort, -c, i))
        return alg.gen((dsort, c, conv.tilde(i))).scaled(-conv.theta(i))

    def q(c, i):
        if c < 0:
            return alg.gen((dsort, -c, i))
        return alg.gen((xsort, c, conv.tilde(i))).scaled(conv.theta(i))

    return p, q


def beta_images(case, m, n, K, alg=None, conv=None):
    """S_ij(u) -> delta_ij + sum_cd F_cd(u +- 1/2 + m) (x) p_ci q_dj."""
    alg = alg or bm_tensor_algebra(case, m, n)
    conv = conv or Conventions(case, n)
    if m == 0:
        return SeriesMatrix.identity(n, K)
    shift = Fraction(case.sign, 2) + m
    R = SeriesMatrix.resolvent(f_gen_matrix(alg, case, m, alg.meta["sort"]), K, shift)
    p, q = pq_elements(case, m, n, alg, conv)
    idx = signed_range(m)
    out = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            s = TruncSeries(K, {0: 1} if i == j else {})
            for ci, c in enumerate(idx):
                for di, d in enumerate(idx):
                    pq = p(c, i) * q(d, j)
                    if pq:
                        s = s + R.entry(ci, di).rmul_coeff(pq)
            row.append(s)
        out.append(row)
    return SeriesMatrix(out)


def series_log1(s):
    """log of a series with leading term 1 (coefficients must commute)."""
    K = s.K
    t = s - TruncSeries.one(K)
    out = TruncSeries(K)
    power = TruncSeries.one(K)
    for k in range(1, K + 1):
        power = power * t
        if power.is_zero():
            break
        out = out + power.lmul_coeff(Fraction((-1) ** (k + 1), k))
    return out


def series_exp0(s):
    """exp of a series with zero constant term (coefficients must commute)."""
    K = s.K
    out = TruncSeries.one(K)
    power = TruncSeries.one(K)
    fact = 1
    for k in range(1, K + 1):
        power = power * s
        if power.is_zero():
            break
        fact *= k
        out = out + power.lmul_coeff(Fraction(1, fact))
    return out


def wbar_series(case, m, K, alg=None):
    """The central series with (1 -+ 1/(2u)) Wbar(u) = W(u +- 1/2 + m)."""
    alg = alg or fm_algebra(case, m)
    shift = Fraction(case.sign, 2) + m
    Wsh = SeriesMatrix.resolvent(f_gen_matrix(alg, case, m, alg.meta["sort"]),
                                 K, shift).trace()
    pref = (TruncSeries.one(K) - TruncSeries(K, {1: Fraction(case.sign, 2)})).inv()
    return pref * Wsh


def wtilde_series(case, m, K, alg=None):
    """A canonical solution of Wtilde(-u) Wtilde(u)^{-1} = 1 - Wbar(u).

    The defining equation leaves even-order data free; the canonical choice
    here forces log Wtilde to have odd powers of u^{-1} only, which pins the
    series down and reproduces the forced coefficient m at u^{-1}.
    """
    wbar = wbar_series(case, m, K, alg)
    L = series_log1(TruncSeries.one(K) - wbar)
    odd_ok = all(e % 2 == 1 for e in L.c)
    if not odd_ok:
        raise DegeneracyError("log(1 - Wbar) acquired even-order terms")
    return series_exp0(L.lmul_coeff(Fraction(-1, 2)))


def tilde_beta_images(case, m, n, K, alg=None, conv=None):
    """The normalized images: the plain images times Wtilde(u) (x) 1."""
    alg = alg or bm_tensor_algebra(case, m, n)
    B = beta_images(case, m, n, K, alg, conv)
    wt = wtilde_series(case, m, K, alg)
    return B.lscale(wt)


def transpose_twist(T, conv):
    """T(u) -> T'(-u), the involutive form-transpose twist."""
    return T.map(lambda s: s.negate_var()).form_transpose(conv.theta, conv.tilde)


def s_from_t(T, conv):
    """S(u) = T'(-u) T(u): the reflection-side series from an RTT-side one."""
    return transpose_twist(T, conv) * T


def tau_twist(T, z):
    """T_ij(u) -> T_ij(u - z), re-expanded."""
    return T.shift(z)


def g_twist(T, g):
    """T_ij(u) -> g(u) T_ij(u) for a scalar series g with leading term 1."""
    return T.map(lambda s: g * s)


def omega_twist(S, n):
    """S(u) -> S(-u - n/2)^{-1}, the involutive reflection-side twist."""
    return S.subs_neg_shift(Fraction(n, 2)).inverse()


# -- bivariate helpers -------------------------------------------------------


def bi_uv(a, b, filt=None):
    """a(u) * b(v): coefficient (e, f) = a_e * b_f (a's coefficients left)."""
    r = BiTruncSeries(a.K)
    for e, va in a.c.items():
        for f, vb in b.c.items():
            if filt and not filt(e, f):
                continue
            pr = va * vb
            if pr:
                r.c[(e, f)] = pr
    return r


def bi_vu(a, b, filt=None):
    """a(v) * b(u): coefficient (e, f) = a_f * b_e (a's coefficients left)."""
    r = BiTruncSeries(a.K)
    for f, va in a.c.items():
        for e, vb in b.c.items():
            if filt and not filt(e, f):
                continue
            pr = va * vb
            if pr:
                r.c[(e, f)] = pr
    return r


# -- relation checkers -------------------------------------------------------


def check_rtt(T, K, suite="relations", label="rtt"):
    """All n^4 components of the cleared RTT relation up to bi-order (K, K).

    (u - v) [T_ij(u), T_kl(v)] = T_kj(u) T_il(v) - T_kj(v) T_il(u);
    requires entries exact to order >= K + 1.
    """
    if T.K < K + 1:
        raise ConfigurationError("rtt check needs input order at least K+1")
    n = T.n
    filt = lambda e, f: (e <= K + 1 and f <= K) or (e <= K and f <= K + 1)
    checks = []
    bad = []
    for i, j, k, l in product(range(n), repeat=4):
        if (i, j, k, l) > (k, l, i, j):
            continue  # the component at (k,l,i,j) is the same identity
        Tij, Tkl = T.entry(i, j), T.entry(k, l)
        Tkj, Til = T.entry(k, j), T.entry(i, l)
        comm = bi_uv(Tij, Tkl, filt) - bi_vu(Tkl, Tij, filt)
        lhs = comm.mul_u() - comm.mul_v()
        rhs = bi_uv(Tkj, Til, filt) - bi_vu(Tkj, Til, filt)
        if not lhs.eq_upto(rhs, K):
            bad.append((i + 1, j + 1, k + 1, l + 1))
    checks.append(check(not bad, suite, f"{label}-K{K}",
                        f"all {n}^4 cleared RTT components to bi-order ({K},{K})",
                        witness=str(bad)))
    return checks


def check_reflection(S, case, K, conv=None, suite="relations", label="reflection"):
    """All n^4 components of the cleared reflection relation up to (K, K).

    Requires entries exact to order >= K + 2 (the relation clears u^2 - v^2).
    """
    if S.K < K + 2:
        raise ConfigurationError("reflection check needs input order at least K+2")
    n = S.n
    conv = conv or Conventions(case, n)
    sgn = case.sign
    th, ti = conv.theta, conv.tilde
    filt = lambda e, f: (e <= K + 2 and f <= K) or (e <= K and f <= K + 2)
    E = lambda i, j: S.entry(i - 1, j - 1)
    bad = []
    for i, j, k, l in product(range(1, n + 1), repeat=4):
        if (i, j, k, l) > (k, l, i, j):
            continue
        comm = bi_uv(E(i, j), E(k, l), filt) - bi_vu(E(k, l), E(i, j), filt)
        lhs = comm.mul_u(2) - comm.mul_v(2)
        t1 = bi_uv(E(k, j), E(i, l), filt) - bi_vu(E(k, j), E(i, l), filt)
        rhs = t1.mul_u() + t1.mul_v()
        t2 = (bi_uv(E(i, ti(k)), E(ti(j), l), filt).scale(th(k) * th(j))
              - bi_vu(E(k, ti(i)), E(ti(l), j), filt).scale(th(i) * th(l)))
        rhs = rhs - (t2.mul_u() - t2.mul_v()).scale(sgn)
        t3 = bi_uv(E(k, ti(i)), E(ti(j), l), filt) - bi_vu(E(k, ti(i)), E(ti(j), l), filt)
        rhs = rhs + t3.scale(sgn * th(i) * th(j))
        if not lhs.eq_upto(rhs, K):
            bad.append((i, j, k, l))
    return [check(not bad, suite, f"{label}-{case.value}-K{K}",
                  f"all {n}^4 cleared reflection components to bi-order ({K},{K})",
                  witness=str(bad))]


def check_commutant(M, lie_images, K, suite="relations", label="commutant"):
    """Every series coefficient commutes with every supplied algebra element."""
    bad = []
    for name, X in lie_images.items():
        for i in range(M.n):
            for j in range(M.n):
                for e, cf in M.entry(i, j).c.items():
                    if e > K:
                        continue
                    el = cf if not isinstance(cf, (int, Fraction)) else None
                    if el is not None and commutator(el, X):
                        bad.append((name, i + 1, j + 1, e))
    return [check(not bad, suite, label,
                  "series coefficients commute with the embedded algebra",
                  witness=str(bad[:5]))]


# -- central series ----------------------------------------------------------


def o_series(S, case, K, conv=None):
    """The central series read off the rank-1 projection of the twisted relation.

    Applies the operator chain of the defining extraction to the distinguished
    vector sum_i theta_i e_i (x) e_~i, whose image under the rank-1 kernel is
    proportional to itself; the proportionality series, divided by the scalar
    (2u -+ 1) times the kernel eigenvalue, is the central series.
    """
    n = S.n
    conv = conv or Conventions(case, n)
    th, ti = conv.theta, conv.tilde
    Sneg_inv = S.map(lambda s: s.negate_var()).inverse()
    rng = range(1, n + 1)
    # w1 = (1 (x) S(-u)^{-1}) v0 where v0_(a,d) = theta_a [d == ~a]
    w1 = {(a, b): Sneg_inv.entry(b - 1, ti(a) - 1).rmul_coeff(th(a))
          for a in rng for b in rng}
    # multiply by R(2u) = 2u - permutation: w2_(a,b) = 2u w1_(a,b) - w1_(b,a)
    w2 = {}
    for a in rng:
        for b in rng:
            s2 = TruncSeries(S.K, {e - 1: 2 * v for e, v in w1[(a, b)].c.items()
                                   if e - 1 >= -2})
            w2[(a, b)] = s2 - w1[(b, a)]
    # multiply by S_1(u): w3_(a,b) = sum_c S_ac(u) w2_(c,b)
    w3 = {}
    for a in rng:
        for b in rng:
            acc = TruncSeries(S.K)
            for c in rng:
                acc = acc + S.entry(a - 1, c - 1) * w2[(c, b)]
            w3[(a, b)] = acc
    # apply the rank-1 kernel: the image has coordinate (a, ~a) equal to
    # -theta_a * sum_c theta_c w3_(c, ~c)
    core = TruncSeries(S.K)
    for c in rng:
        core = core + w3[(c, ti(c))].lmul_coeff(th(c))
    denom = TruncSeries(S.K, {-1: 2 * n, 0: -case.sign * n}).inv()  # 1/(n(2u -+ 1))
    return core * denom


def o_series_checks(S, case, K, conv=None, suite="relations", label="central-series",
                    expect_one=None):
    out = []
    O = o_series(S, case, K, conv)
    Oneg = O.negate_var()
    out.append(check((O * Oneg).eq_upto(TruncSeries.one(O.K), K), suite,
                     f"{label}-involution",
                     "central series times its reflection is 1"))
    if expect_one is True:
        out.append(check(O.eq_upto(TruncSeries.one(O.K), K), suite,
                         f"{label}-trivial", "central series equals 1",
                         witness=repr(O.upto(K))))
    elif expect_one is False:
        out.append(check(not O.eq_upto(TruncSeries.one(O.K), K), suite,
                         f"{label}-nontrivial",
                         "unnormalized image has a nontrivial central series"))
    return out


# -- coaction ----------------------------------------------------------------


def coaction_images(S, T, conv):
    """S_ij(u) -> sum_gh S_gh(u) * theta_i theta_g T_{~g,~i}(-u) T_{h,j}(u)."""
    n = S.n
    th, ti = conv.theta, conv.tilde
    Tneg = T.map(lambda s: s.negate_var())
    out = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            acc = TruncSeries(S.K)
            for g in range(1, n + 1):
                for h in range(1, n + 1):
                    term = S.entry(g - 1, h - 1) \
                        * Tneg.entry(ti(g) - 1, ti(i) - 1) * T.entry(h - 1, j - 1)
                    acc = acc + term.lmul_coeff(th(i) * th(g))
            row.append(acc)
        out.append(row)
    return SeriesMatrix(out)


def comult_images(T1, T2):
    """Delta: T_ij(u) -> sum_k T_ik(u) (x) T_kj(u), i.e. the matrix product."""
    return T1 * T2


def coassociativity_check(case, n, K, suite="coaction"):
    """Iterated coaction equals coaction followed by comultiplication."""
    alg = tensor_gl_algebra(n, 3, ("E0", "E1", "E2"))
    conv = Conventions(case, n)
    S0 = pin_images(case, n, K, alg, "E0")
    T1 = eval_images(n, K, alg, "E1")
    T2 = eval_images(n, K, alg, "E2")
    one_way = coaction_images(coaction_images(S0, T1, conv), T2, conv)
    other = coaction_images(S0, comult_images(T1, T2), conv)
    ok = one_way.eq_upto(other, K)
    return [check(ok, suite, f"coassociativity-{case.value}-n{n}-K{K}",
                  "both iterations of the coaction agree entrywise")]


# -- the centralizer-image identity ------------------------------------------


def olshanski_images(case, m, n, l, K):
    """Both sides of the centralizer-image identity, realized on P(C^m x C^{n+l}).

    Returns (lhs, rhs) as n x n series matrices over the Weyl algebra on
    m x (n+l) variables: lhs is the upper-left block inverse of the realized
    big-matrix image, rhs is the scalar prefactor times the small-side image
    with its resolvent pushed into the extra l columns.
    """
    if case is Case.SO and (n % 2 or l % 2):
        raise ConfigurationError("the alternating case requires even n and even l")
    conv = BlockConventions(case, n, l) if l else Conventions(case, n)
    sgn = case.sign
    alg = weyl_algebra(m, n + l)
    N = n + l
    c0 = Fraction(l - sgn, 2)  # the spectral shift (l -+ 1)/2
    # realized big matrix: delta_ij + 1/(u - c0) sum_c (x_ci d_cj - th th x_c~j d_c~i)
    pole = TruncSeries(K, {e: c0 ** (e - 1) for e in range(1, K + 1)})
    big = []
    for i in range(1, N + 1):
        row = []
        for j in range(1, N + 1):
            g = alg.zero()
            for c in range(1, m + 1):
                g = g + alg.gen(("x", c, i)) * alg.gen(("d", c, j))
                g = g - (alg.gen(("x", c, conv.tilde(j)))
                         * alg.gen(("d", c, conv.tilde(i)))).scaled(
                             conv.theta(i) * conv.theta(j))
            s = pole.rmul_coeff(g)
            if i == j:
                s = s + TruncSeries.one(K)
            row.append(s)
        big.append(row)
    M = SeriesMatrix(big)
    if l == 0:
        lhs = M
    else:
        A = M.block(0, n, 0, n)
        D = M.block(n, N, n, N)
        Dinv = D.inverse()
        B = [[M.entry(i, j) for j in range(n, N)] for i in range(n)]
        C = [[M.entry(i, j) for j in range(n)] for i in range(n, N)]
        BDC = [[_dot3(B, Dinv.m, C, i, j, K) for j in range(n)] for i in range(n)]
        lhs = SeriesMatrix([[A.entry(i, j) - BDC[i][j] for j in range(n)]
                            for i in range(n)])
    # rhs: f(u) * (delta + sum_cd zeta-bar resolvent entries (x) p q)
    f = TruncSeries.one(K) + pole.lmul_coeff(m)
    if m == 0:
        return lhs, SeriesMatrix.identity(n, K).map(lambda s: s * f)
    zimgs = zeta_images(case, m, l if l else 0, alg, "x", "d",
                        cols=range(n + 1, N + 1), conv=conv) if l else None
    idx = signed_range(m)

    def zbar(c, d):
        if l == 0:
            return alg.zero()
        cf, rep = f_rep(case, c, d)
        if rep is None:
            return alg.zero()
        return zimgs[("F", rep[0], rep[1])].scaled(cf)

    Zmat = [[zbar(c, d) for d in idx] for c in idx]
    R = SeriesMatrix.resolvent(Zmat, K, Fraction(sgn, 2) + m)
    p, q = pq_elements(case, m, n, alg, conv)
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            s = TruncSeries(K, {0: 1} if i == j else {})
            for ci, c in enumerate(idx):
                for di, d in enumerate(idx):
                    pq = p(c, i) * q(d, j)
                    if pq:
                        s = s + R.entry(ci, di).rmul_coeff(pq)
            row.append(f * s)
        rows.append(row)
    return lhs, SeriesMatrix(rows)


def _dot3(B, D, C, i, j, K):
    acc = TruncSeries(K)
    for a in range(len(D)):
        for b in range(len(D)):
            acc = acc + B[i][a] * D[a][b] * C[b][j]
    return acc


def olshanski_check(case, m, n, l, K, suite="olshanski"):
    lhs, rhs = olshanski_images(case, m, n, l, K + 1)
    ok = lhs.eq_upto(rhs, K)
    return [check(ok, suite, f"centralizer-image-{case.value}-m{m}-n{n}-l{l}-K{K}",
                  "block inverse of the realized image matches the prefactored"
                  " small-side image")]


# -- scalar R-matrix identities ----------------------------------------------


def r_matrix_entry(n, a, b, c, d, K):
    """R(u) = u - permutation, on C^n (x) C^n; indices 1-based."""
    s = TruncSeries(K)
    if a == c and b == d:
        s = s + TruncSeries(K, {-1: 1})
    if a == d and b == c:
        s = s - TruncSeries.one(K)
    return s


def r_prime_entry(case, n, a, b, c, d, K, conv=None):
    conv = conv or Conventions(case, n)
    s = TruncSeries(K)
    if a == c and b == d:
        s = s + TruncSeries(K, {-1: 1})
    if b == conv.tilde(a) and d == conv.tilde(c):
        s = s - TruncSeries.const(K, conv.theta(a) * conv.theta(c))
    return s


def verify_r_identities(case, n, K, suite="relations"):
    """R(u) R(-u) = 1 - u^2 and R'(u) R'(n - u) = u (n - u)."""
    conv = Conventions(case, n)
    pairs = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1)]
    ok1 = ok2 = True
    for (a, b) in pairs:
        for (e, f) in pairs:
            acc = TruncSeries(K)
            acc2 = TruncSeries(K)
            for (c, d) in pairs:
                acc = acc + r_matrix_entry(n, a, b, c, d, K) * \
                    r_matrix_entry(n, c, d, e, f, K).negate_var()
                r2 = r_prime_entry(case, n, c, d, e, f, K, conv)
                # R'(n-u): substitute u -> n - u, i.e. entries (n-u) delta - kernel
                r2sub = TruncSeries(K)
                for ex, v in r2.c.items():
                    if ex == -1:
                        r2sub = r2sub + TruncSeries(K, {-1: -v, 0: n * v})
                    else:
                        r2sub = r2sub + TruncSeries(K, {ex: v})
                acc2 = acc2 + r_prime_entry(case, n, a, b, c, d, K, conv) * r2sub
            want = TruncSeries(K, {0: 1, -2: -1}) if (a, b) == (e, f) else TruncSeries(K)
            want2 = TruncSeries(K, {-1: n, -2: -1}) if (a, b) == (e, f) else TruncSeries(K)
            ok1 = ok1 and acc == want
            ok2 = ok2 and acc2 == want2
    return [check(ok1, suite, f"yang-kernel-{n}", "R(u) R(-u) = 1 - u^2"),
            check(ok2, suite, f"twisted-kernel-{case.value}-{n}",
                  "R'(u) R'(n-u) = u(n-u)")]
