"""Square matrices of truncated series, with the inverses the checks rely on.

Entries are :class:`refleq.series.TruncSeries` over a shared coefficient ring
(exact scalars or noncommutative elements).  Inversion is supported for
matrices whose leading coefficient matrix (at the smallest exponent present)
is an invertible matrix of exact scalars -- which covers generator-image
matrices (leading term = identity) and resolvent-style matrices (leading
term = u * identity).
"""

from fractions import Fraction

from .errors import ConfigurationError, SingularMatrixError
from .series import TruncSeries


def _frac_inv_matrix(M):
    """Exact inverse of a matrix of Fractions by Gauss-Jordan elimination."""
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("leading coefficient matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


class SeriesMatrix:
    __slots__ = ("n", "K", "m")

    def __init__(self, entries):
        self.m = [list(row) for row in entries]
        self.n = len(self.m)
        if any(len(row) != self.n for row in self.m):
            raise ConfigurationError("matrix must be square")
        self.K = self.m[0][0].K
        for row in self.m:
            for s in row:
                if s.K != self.K:
                    raise ConfigurationError("mixed truncation orders in matrix")

    @classmethod
    def identity(cls, n, K):
        return cls([[TruncSeries.one(K) if i == j else TruncSeries(K)
                     for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n, K):
        return cls([[TruncSeries(K) for _ in range(n)] for _ in range(n)])

    @classmethod
    def resolvent(cls, nc_entries, K, shift=0):
        """((u + shift) - N)^{-1} for a constant matrix N of ring elements.

        Exact closed form: sum_s (N - shift)^s u^{-s-1}.
        """
        n = len(nc_entries)
        M = [[nc_entries[i][j] - (shift if i == j else 0) for j in range(n)]
             for i in range(n)]
        out = [[{} for _ in range(n)] for _ in range(n)]
        power = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for s in range(K):
            for i in range(n):
                for j in range(n):
                    v = power[i][j]
                    if v:
                        out[i][j][s + 1] = v
            if s < K - 1:
                power = [[sum_entries(power, M, i, j) for j in range(n)] for i in range(n)]
        return cls([[TruncSeries(K, out[i][j]) for j in range(n)] for i in range(n)])

    def entry(self, i, j):
        return self.m[i][j]

    def __add__(self, other):
        return SeriesMatrix([[a + b for a, b in zip(r1, r2)]
                             for r1, r2 in zip(self.m, other.m)])

    def __sub__(self, other):
        return SeriesMatrix([[a - b for a, b in zip(r1, r2)]
                             for r1, r2 in zip(self.m, other.m)])

    def __neg__(self):
        return SeriesMatrix([[-a for a in row] for row in self.m])

    def __mul__(self, other):
        if isinstance(other, SeriesMatrix):
            n = self.n
            if other.n != n:
                raise ConfigurationError("matrix size mismatch")
            out = []
            for i in range(n):
                row = []
                for j in range(n):
                    acc = TruncSeries(self.K)
                    for k in range(n):
                        acc = acc + self.m[i][k] * other.m[k][j]
                    row.append(acc)
                out.append(row)
            return SeriesMatrix(out)
        if isinstance(other, TruncSeries):
            return SeriesMatrix([[a * other for a in row] for row in self.m])
        return SeriesMatrix([[a.rmul_coeff(other) for a in row] for row in self.m])

    def lscale(self, series):
        """series * M with the series coefficients on the left of each entry."""
        return SeriesMatrix([[series * a for a in row] for row in self.m])

    def map(self, fn):
        return SeriesMatrix([[fn(a) for a in row] for row in self.m])

    def subs_neg_shift(self, z):
        """Entrywise u -> -u - z."""
        return self.map(lambda s: s.sub_neg_shift(z))

    def shift(self, z):
        """Entrywise u -> u - z."""
        return self.map(lambda s: s.shift(z))

    def trace(self):
        acc = TruncSeries(self.K)
        for i in range(self.n):
            acc = acc + self.m[i][i]
        return acc

    def transpose(self):
        return SeriesMatrix([[self.m[j][i] for j in range(self.n)] for i in range(self.n)])

    def form_transpose(self, theta, tilde, offset=1):
        """Transpose relative to the bilinear form: (i,j) -> theta_i theta_j M[~j][~i].

        Indices run 1..n externally; `offset` converts to 0-based storage.
        """
        n = self.n
        out = [[None] * n for _ in range(n)]
        for i in range(offset, n + offset):
            for j in range(offset, n + offset):
                s = self.m[tilde(j) - offset][tilde(i) - offset]
                out[i - offset][j - offset] = s.lmul_coeff(theta(i) * theta(j))
        return SeriesMatrix(out)

    def inverse(self):
        """Inverse when the leading coefficient matrix is invertible over Q."""
        n, K = self.n, self.K
        exps = [e for row in self.m for s in row for e in s.c]
        if not exps:
            raise SingularMatrixError("cannot invert the zero matrix")
        e0 = min(exps)
        lead = [[self.m[i][j].coeff(e0) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                v = lead[i][j]
                if isinstance(v, (int, Fraction)):
                    continue
                if v.is_scalar():
                    lead[i][j] = v.scalar_value()
                else:
                    raise SingularMatrixError("leading coefficient matrix is not scalar")
        Cinv = _frac_inv_matrix(lead)
        # T = (C u^{-e0})^{-1} * self = 1 + N with N of positive order
        Tinv_lead = SeriesMatrix([[TruncSeries.u_power(K, -e0, Cinv[i][j])
                                   if Cinv[i][j] else TruncSeries(K)
                                   for j in range(n)] for i in range(n)])
        N = Tinv_lead * self - SeriesMatrix.identity(n, K)
        acc = SeriesMatrix.identity(n, K)
        term = SeriesMatrix.identity(n, K)
        for _ in range(K + 2):
            term = (-term) * N
            if all(s.is_zero() for row in term.m for s in row):
                break
            acc = acc + term
        return acc * Tinv_lead

    def block(self, r0, r1, c0, c1):
        if r1 - r0 != c1 - c0:
            raise ConfigurationError("only square blocks are supported")
        return SeriesMatrix([[self.m[i][j] for j in range(c0, c1)] for i in range(r0, r1)])

    def eq_upto(self, other, order):
        return all(a.eq_upto(b, order) for r1, r2 in zip(self.m, other.m)
                   for a, b in zip(r1, r2))

    def is_zero_upto(self, order):
        return all(all(e > order for e in s.c) for row in self.m for s in row)

    def __repr__(self):
        return f"SeriesMatrix(n={self.n}, K={self.K})"


def sum_entries(A, B, i, j):
    acc = 0
    for k in range(len(A)):
        a = A[i][k]
        b = B[k][j]
        if a and b:
            acc = acc + a * b
    return acc


def block_inverse(M, p, check_order=None):
    """Inverse of a 2x2-block series matrix via Schur complements.

    Blocks A (p x p) and D must be invertible as series matrices; optionally
    verifies M * M^{-1} = 1 up to `check_order`.
    """
    n = M.n
    A = M.block(0, p, 0, p)
    D = M.block(p, n, p, n)
    B = [[M.m[i][j] for j in range(p, n)] for i in range(p)]
    C = [[M.m[i][j] for j in range(p)] for i in range(p, n)]
    Ainv, Dinv = A.inverse(), D.inverse()

    def mult(X, Y):
        rows, inner, cols = len(X), len(Y), len(Y[0])
        K = M.K
        return [[_dot(X, Y, i, j, inner, K) for j in range(cols)] for i in range(rows)]

    def _dot(X, Y, i, j, inner, K):
        acc = TruncSeries(K)
        for k in range(inner):
            acc = acc + X[i][k] * Y[k][j]
        return acc

    BDC = mult(mult(B, Dinv.m), C)
    CAB = mult(mult(C, Ainv.m), B)
    tlA = SeriesMatrix([[A.m[i][j] - BDC[i][j] for j in range(p)] for i in range(p)]).inverse()
    brD = SeriesMatrix([[D.m[i][j] - CAB[i][j] for j in range(n - p)]
                        for i in range(n - p)]).inverse()
    trB = mult(mult([[-s for s in row] for row in Ainv.m], B), brD.m)
    blC = mult(mult([[-s for s in row] for row in Dinv.m], C), tlA.m)
    out = [[None] * n for _ in range(n)]
    for i in range(p):
        for j in range(p):
            out[i][j] = tlA.m[i][j]
        for j in range(p, n):
            out[i][j] = trB[i][j - p]
    for i in range(p, n):
        for j in range(p):
            out[i][j] = blC[i - p][j]
        for j in range(p, n):
            out[i][j] = brD.m[i - p][j - p]
    result = SeriesMatrix(out)
    if check_order is not None:
        prod = M * result
        if not prod.eq_upto(SeriesMatrix.identity(n, M.K), check_order):
            raise SingularMatrixError("block inverse failed verification")
    return result
