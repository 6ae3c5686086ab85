"""Sparse noncommutative polynomials with a configurable rewriting system.

One engine realizes every algebra in the library: enveloping algebras of the
general-linear and twisted-symmetric families, Weyl algebras of polynomial
differential operators, tensor products of those (disjoint generator sorts
that commute across sorts), and the mixed presentation where a Lie generator
commutes with a differential operator through its differential-operator
image.

A generator is a hashable tuple ``(sort, *indices)``.  A word is a tuple of
generators; a word is *normal* when adjacent ranks never descend.  The
rewriting data is, for each out-of-order adjacent pair g*h (rank g > rank h),
the correction ``[g, h]`` as a dict ``word -> coefficient`` over strictly
smaller words, so ``g*h = h*g + [g,h]`` and rewriting terminates.  Pairs not
listed commute.

Internally words are tuples of small ints (the generator's rank), so the
descent test is integer comparison and normal forms cache well.  Algebras
built from mutually commuting blocks declare ``split`` boundaries; products
then multiply blockwise, which is what keeps the big relation checks fast.
"""

import sys
from bisect import bisect_right
from fractions import Fraction

from .errors import ConfigurationError

sys.setrecursionlimit(1000000)


def _is_zero(c):
    return not c


def _add_term(d, w, c):
    s = d.get(w, 0) + c
    if _is_zero(s):
        d.pop(w, None)
    else:
        d[w] = s


class Algebra:
    """A PBW-type presentation: ordered generators plus bracket corrections."""

    def __init__(self, gens, brackets=None, name="", meta=None, split=None):
        self.gens = tuple(gens)
        self.code = {g: i for i, g in enumerate(self.gens)}
        if len(self.code) != len(self.gens):
            raise ConfigurationError("duplicate generators")
        self.name = name
        self.meta = meta or {}
        # split: sorted code boundaries of mutually commuting blocks
        self.split = tuple(split) if split else None
        self.bracket = {}
        if brackets:
            for (g, h), corr in brackets.items():
                cg, ch = self.code.get(g), self.code.get(h)
                if cg is None or ch is None:
                    raise ConfigurationError(f"bracket for unknown generators {g}, {h}")
                if cg <= ch:
                    raise ConfigurationError(
                        f"bracket table must be indexed by descending pairs, got {g}, {h}")
                corr2 = {}
                for w, c in corr.items():
                    if not _is_zero(c):
                        corr2[tuple(self.code[x] for x in w)] = c
                if corr2:
                    self.bracket[(cg, ch)] = corr2
        if self.split:
            self._check_split()
        self._nf = {}

    def _check_split(self):
        blocks = self.split
        for (cg, ch), corr in self.bracket.items():
            bg, bh = bisect_right(blocks, cg), bisect_right(blocks, ch)
            if bg != bh:
                raise ConfigurationError("split blocks must commute exactly")
            for w in corr:
                for x in w:
                    if bisect_right(blocks, x) != bg:
                        raise ConfigurationError("bracket corrections must stay in-block")

    # -- element constructors -------------------------------------------

    def zero(self):
        return NCElement(self, {})

    def one(self):
        return NCElement(self, {(): 1})

    def scalar(self, c):
        return NCElement(self, {(): c} if not _is_zero(c) else {})

    def gen(self, *gid):
        g = gid[0] if len(gid) == 1 and isinstance(gid[0], tuple) else tuple(gid)
        c = self.code.get(g)
        if c is None:
            raise ConfigurationError(f"unknown generator {g!r} in algebra {self.name!r}")
        return NCElement(self, {(c,): 1})

    def element(self, terms):
        """Build from a {word-of-generator-ids: coeff} mapping, normalizing."""
        out = {}
        for w, c in terms.items():
            try:
                cw = tuple(self.code[g] for g in w)
            except KeyError as exc:
                raise ConfigurationError(
                    f"unknown generator {exc.args[0]!r} in algebra {self.name!r}") from None
            if not _is_zero(c):
                for nw, nc in self.normal_form(cw).items():
                    _add_term(out, nw, c * nc)
        return NCElement(self, out)

    def word(self, codes):
        return NCElement(self, dict(self.normal_form(tuple(codes))))

    # -- rewriting --------------------------------------------------------

    def normal_form(self, word):
        """Normal form of a coded word, as dict word -> coefficient.  Cached."""
        cached = self._nf.get(word)
        if cached is not None:
            return cached
        i = -1
        for j in range(len(word) - 1):
            if word[j] > word[j + 1]:
                i = j
                break
        if i < 0:
            res = {word: 1}
            self._nf[word] = res
            return res
        g, h = word[i], word[i + 1]
        pre, post = word[:i], word[i + 2:]
        out = dict(self.normal_form(pre + (h, g) + post))
        corr = self.bracket.get((g, h))
        if corr:
            for bw, bc in corr.items():
                for nw, nc in self.normal_form(pre + bw + post).items():
                    _add_term(out, nw, bc * nc)
        self._nf[word] = out
        return out

    def _split_word(self, w):
        blocks = self.split
        segs = [()] * (len(blocks) + 1)
        lo = 0
        for b_idx in range(len(blocks)):
            b = blocks[b_idx]
            hi = lo
            while hi < len(w) and w[hi] < b:
                hi += 1
            segs[b_idx] = w[lo:hi]
            lo = hi
        segs[len(blocks)] = w[lo:]
        return segs

    def mul_dicts(self, a, b):
        if self.split is None:
            out = {}
            for w1, c1 in a.items():
                for w2, c2 in b.items():
                    c = c1 * c2
                    for nw, nc in self.normal_form(w1 + w2).items():
                        _add_term(out, nw, c * nc)
            return out
        return self._mul_split(a, b)

    def _mul_split(self, a, b):
        out = {}
        nfs = self.normal_form
        split = self._split_word
        seg_cache_a = {w: split(w) for w in a}
        seg_cache_b = {w: split(w) for w in b}
        for w1, c1 in a.items():
            segs1 = seg_cache_a[w1]
            for w2, c2 in b.items():
                segs2 = seg_cache_b[w2]
                cur = {(): c1 * c2}
                for s1, s2 in zip(segs1, segs2):
                    if not s1 and not s2:
                        continue
                    part = nfs(s1 + s2)
                    nxt = {}
                    for pw, pc in cur.items():
                        for qw, qc in part.items():
                            _add_term(nxt, pw + qw, pc * qc)
                    cur = nxt
                    if not cur:
                        break
                for w, c in cur.items():
                    _add_term(out, w, c)
        return out

    def decode(self, word):
        return tuple(self.gens[c] for c in word)

    def cache_size(self):
        return len(self._nf)


class NCElement:
    """An element of an :class:`Algebra`: dict of normal coded words to coefficients."""

    __slots__ = ("alg", "t")

    def __init__(self, alg, terms):
        self.alg = alg
        self.t = terms

    def _check(self, other):
        if self.alg is not other.alg:
            raise ConfigurationError(
                f"algebra mismatch: {self.alg.name!r} vs {other.alg.name!r}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.alg.scalar(other)
        self._check(other)
        out = dict(self.t)
        for w, c in other.t.items():
            _add_term(out, w, c)
        return NCElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return NCElement(self.alg, {w: -c for w, c in self.t.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.alg.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        self._check(other)
        return NCElement(self.alg, self.alg.mul_dicts(self.t, other.t))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    def scaled(self, c):
        if _is_zero(c):
            return NCElement(self.alg, {})
        return NCElement(self.alg, {w: c * v for w, v in self.t.items()})

    def __bool__(self):
        return bool(self.t)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.alg.scalar(other)
        if not isinstance(other, NCElement):
            return NotImplemented
        if self.alg is not other.alg:
            return False
        return self.t == other.t

    def __hash__(self):
        raise TypeError("NCElement is unhashable")

    def is_scalar(self):
        return not self.t or (len(self.t) == 1 and () in self.t)

    def scalar_value(self):
        if not self.is_scalar():
            raise ConfigurationError("element is not a scalar")
        return self.t.get((), 0)

    def scalar_inverse(self):
        v = self.scalar_value()
        if _is_zero(v):
            raise ZeroDivisionError("zero scalar")
        return self.alg.scalar(Fraction(1, 1) / v)

    def words(self):
        """Normal words as tuples of generator ids."""
        return [self.alg.decode(w) for w in self.t]

    def terms(self):
        return [(self.alg.decode(w), c) for w, c in self.t.items()]

    def dumps(self):
        """Canonical s-expression: terms sorted by word, exact rationals."""
        if not self.t:
            return "(ncsum)"
        parts = []
        for w in sorted(self.t, key=lambda w: (len(w), w)):
            c = self.t[w]
            gens = " ".join("(" + " ".join(str(x) for x in g) + ")"
                            for g in self.alg.decode(w))
            parts.append(f"(term {Fraction(c)} {gens})" if w else f"(term {Fraction(c)})")
        return "(ncsum " + " ".join(parts) + ")"

    def __repr__(self):
        if not self.t:
            return "0"
        bits = []
        for w in sorted(self.t, key=lambda w: (len(w), w)):
            c = self.t[w]
            mono = "*".join("_".join(str(x) for x in g)
                            for g in self.alg.decode(w)) or "1"
            bits.append(f"({c})*{mono}")
        return " + ".join(bits)


# -- derived operations ----------------------------------------------------


def commutator(a, b):
    return a * b - b * a


def hom_apply(images, elem, target):
    """Multiplicative extension of a generator-image map.

    ``images`` maps generator ids of ``elem.alg`` to elements of ``target``;
    every generator occurring in ``elem`` must have an image.
    """
    src = elem.alg
    out = target.zero()
    cache = {(): target.one()}

    def word_image(w):
        got = cache.get(w)
        if got is not None:
            return got
        head = word_image(w[:-1])
        g = src.gens[w[-1]]
        try:
            img = images[g]
        except KeyError:
            raise ConfigurationError(f"no image supplied for generator {g!r}") from None
        got = head * img
        cache[w] = got
        return got

    for w, c in elem.t.items():
        out = out + word_image(w).scaled(c)
    return out


def jacobi_check(alg, triples=None):
    """Exhaustive Jacobi/consistency check of the rewrite data.

    Returns (True, None) or (False, offending_triple).  Commutators are
    computed through the rewrite system itself, so an inconsistent table
    shows up as a nonzero Jacobi sum.
    """
    gens = alg.gens
    n = len(gens)
    if triples is None:
        triples = ((i, j, k) for i in range(n) for j in range(i + 1, n)
                   for k in range(j + 1, n))
    for i, j, k in triples:
        a, b, c = alg.gen(gens[i]), alg.gen(gens[j]), alg.gen(gens[k])
        s = (commutator(a, commutator(b, c))
             + commutator(b, commutator(c, a))
             + commutator(c, commutator(a, b)))
        if s:
            return False, (gens[i], gens[j], gens[k])
    return True, None


def in_left_ideal(elem, gen_test):
    """Left-ideal membership by the suffix test.

    Valid when the generating set is closed under bracketing with all larger
    generators (true for the triangular subalgebras used here): an element
    lies in the left ideal iff every normal word ends in a matching generator.
    """
    gens = elem.alg.gens
    return all(w and gen_test(gens[w[-1]]) for w in elem.t)


def in_right_ideal(elem, gen_test):
    """Right-ideal membership by the prefix test (mirror of in_left_ideal)."""
    gens = elem.alg.gens
    return all(w and gen_test(gens[w[0]]) for w in elem.t)
