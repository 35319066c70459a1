"""Sparse integer polynomials in the two parameters ``q`` and ``t``.

A :class:`QTPoly` stores a map ``(a, b) -> c`` meaning ``c * q**a * t**b``.
Products and exact quotients of large operands go through Kronecker
substitution so the heavy lifting happens inside CPython's big integers.
GCDs use the heuristic evaluation/interpolation method with a primitive
remainder sequence in ``Z[t][q]`` as the fallback.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd, isqrt
from typing import Dict, Iterable, Tuple

Exp = Tuple[int, int]

# below this many term pairs the plain double loop beats packing
_KRONECKER_MIN_WORK = 400
_HEU_GCD_TRIES = 6


class NotDivisible(ArithmeticError):
    """Raised by :func:`divexact` when the division leaves a remainder."""


class QTPoly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Dict[Exp, int] | None = None, _clean: bool = False):
        if terms is None:
            terms = {}
        elif not _clean:
            terms = {k: int(c) for k, c in terms.items() if c}
        self.terms = terms
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: int) -> "QTPoly":
        return cls({(0, 0): c} if c else {}, True)

    @classmethod
    def monomial(cls, a: int, b: int, c: int = 1) -> "QTPoly":
        if a < 0 or b < 0:
            raise ValueError("negative exponent")
        return cls({(a, b): c} if c else {}, True)

    # -- basic queries ----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, QTPoly):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == ({(0, 0): other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    def constant_value(self) -> int:
        return self.terms.get((0, 0), 0)

    def deg_q(self) -> int:
        return max((a for a, _ in self.terms), default=-1)

    def deg_t(self) -> int:
        return max((b for _, b in self.terms), default=-1)

    def leading(self) -> Tuple[Exp, int]:
        """Lexicographically greatest exponent and its coefficient."""
        k = max(self.terms)
        return k, self.terms[k]

    def max_norm(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = igcd(g, c)
            if g == 1:
                break
        return g

    def sorted_terms(self):
        return sorted(self.terms.items())

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> "QTPoly":
        return QTPoly({k: -c for k, c in self.terms.items()}, True)

    def __add__(self, other) -> "QTPoly":
        if isinstance(other, int):
            other = QTPoly.const(other)
        elif not isinstance(other, QTPoly):
            return NotImplemented
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out = dict(big)
        for k, c in small.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return QTPoly(out, True)

    __radd__ = __add__

    def __sub__(self, other) -> "QTPoly":
        if isinstance(other, int):
            other = QTPoly.const(other)
        elif not isinstance(other, QTPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) - c
            if v:
                out[k] = v
            else:
                del out[k]
        return QTPoly(out, True)

    def __rsub__(self, other) -> "QTPoly":
        return (-self) + other

    def __mul__(self, other) -> "QTPoly":
        if isinstance(other, int):
            if not other:
                return QTPoly()
            return QTPoly({k: c * other for k, c in self.terms.items()}, True)
        if not isinstance(other, QTPoly):
            return NotImplemented
        return _mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QTPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = QTPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale_exact(self, c: int) -> "QTPoly":
        """Divide every coefficient by the integer ``c`` (must be exact)."""
        out = {}
        for k, v in self.terms.items():
            qv, r = divmod(v, c)
            if r:
                raise NotDivisible(f"{v} not divisible by {c}")
            out[k] = qv
        return QTPoly(out, True)

    def shift(self, da: int, db: int) -> "QTPoly":
        return QTPoly({(a + da, b + db): c for (a, b), c in self.terms.items()}, True)

    def min_exponents(self) -> Exp:
        return (min(a for a, _ in self.terms), min(b for _, b in self.terms))

    # -- evaluation -------------------------------------------------------
    def evaluate(self, q0, t0):
        """Exact value at rational ``(q0, t0)``; returns an int or Fraction."""
        if not self.terms:
            return 0
        q0 = Fraction(q0)
        t0 = Fraction(t0)
        qa = {}
        tb = {}
        total = Fraction(0)
        for (a, b), c in self.terms.items():
            if a not in qa:
                qa[a] = q0 ** a
            if b not in tb:
                tb[b] = t0 ** b
            total += c * qa[a] * tb[b]
        return total

    def __repr__(self) -> str:
        return f"QTPoly({self})"

    def __str__(self) -> str:
        return render_poly(self)


ZERO = QTPoly()
ONE = QTPoly.const(1)
Q = QTPoly.monomial(1, 0)
T = QTPoly.monomial(0, 1)


def render_poly(p: QTPoly) -> str:
    """Render as ``c*q^a*t^b`` terms in ascending lexicographic ``(a, b)``."""
    if not p.terms:
        return "0"
    out = []
    for (a, b), c in sorted(p.terms.items()):
        factors = []
        if a:
            factors.append("q" if a == 1 else f"q^{a}")
        if b:
            factors.append("t" if b == 1 else f"t^{b}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# -- Kronecker substitution -----------------------------------------------

def _nbytes_for(bound: int) -> int:
    # room for sign: digits live in (-2**(8n-1), 2**(8n-1))
    return (bound.bit_length() + 1) // 8 + 1


def _pack(terms: Dict[Exp, int], width: int, nbytes: int, ndigits: int) -> int:
    size = ndigits * nbytes
    pos = bytearray(size)
    neg = bytearray(size)
    for (a, b), c in terms.items():
        i = (a * width + b) * nbytes
        if c > 0:
            pos[i:i + nbytes] = c.to_bytes(nbytes, "little")
        else:
            neg[i:i + nbytes] = (-c).to_bytes(nbytes, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(value: int, width: int, nbytes: int, ndigits: int) -> Dict[Exp, int]:
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * ndigits, "little")
    shifted = value + offset
    if shifted < 0 or shifted.bit_length() > 8 * nbytes * ndigits:
        raise OverflowError("packed value out of range")
    data = shifted.to_bytes(ndigits * nbytes, "little")
    out = {}
    from_bytes = int.from_bytes
    for idx in range(ndigits):
        d = from_bytes(data[idx * nbytes:(idx + 1) * nbytes], "little") - half
        if d:
            out[divmod(idx, width)] = d
    return out


def _mul_naive(f: Dict[Exp, int], g: Dict[Exp, int]) -> Dict[Exp, int]:
    out: Dict[Exp, int] = {}
    get = out.get
    for (a1, b1), c1 in f.items():
        for (a2, b2), c2 in g.items():
            k = (a1 + a2, b1 + b2)
            out[k] = get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _mul(f: QTPoly, g: QTPoly) -> QTPoly:
    if not f.terms or not g.terms:
        return QTPoly()
    if len(f.terms) * len(g.terms) < _KRONECKER_MIN_WORK:
        return QTPoly(_mul_naive(f.terms, g.terms), True)
    width = f.deg_t() + g.deg_t() + 1
    bound = f.max_norm() * g.max_norm() * min(len(f.terms), len(g.terms))
    nbytes = _nbytes_for(bound)
    ndigits = (f.deg_q() + g.deg_q() + 1) * width
    pf = _pack(f.terms, width, nbytes, ndigits)
    pg = _pack(g.terms, width, nbytes, ndigits)
    return QTPoly(_unpack(pf * pg, width, nbytes, ndigits), True)


def _divexact_longhand(f: QTPoly, h: QTPoly) -> QTPoly:
    if not h.terms:
        raise ZeroDivisionError("polynomial division by zero")
    rem = dict(f.terms)
    quo: Dict[Exp, int] = {}
    (ha, hb), hc = h.leading()
    hterms = list(h.terms.items())
    while rem:
        (ra, rb) = max(rem)
        rc = rem[(ra, rb)]
        da, db = ra - ha, rb - hb
        if da < 0 or db < 0 or rc % hc:
            raise NotDivisible("remainder is nonzero")
        c = rc // hc
        quo[(da, db)] = c
        for (a, b), v in hterms:
            k = (a + da, b + db)
            nv = rem.get(k, 0) - c * v
            if nv:
                rem[k] = nv
            else:
                rem.pop(k, None)
    return QTPoly(quo, True)


def divexact(f: QTPoly, h: QTPoly) -> QTPoly:
    """Quotient ``f / h`` in ``Z[q, t]``; raises :class:`NotDivisible` otherwise."""
    if not h.terms:
        raise ZeroDivisionError("polynomial division by zero")
    if not f.terms:
        return QTPoly()
    if len(h.terms) == 1:
        ((ha, hb), hc), = h.terms.items()
        out = {}
        for (a, b), c in f.terms.items():
            if a < ha or b < hb or c % hc:
                raise NotDivisible("remainder is nonzero")
            out[(a - ha, b - hb)] = c // hc
        return QTPoly(out, True)
    dq = f.deg_q() - h.deg_q()
    if dq < 0 or f.deg_t() < h.deg_t():
        raise NotDivisible("divisor has larger degree")
    if len(f.terms) * len(h.terms) < _KRONECKER_MIN_WORK:
        return _divexact_longhand(f, h)
    width = f.deg_t() + 1
    # generous room for quotient coefficients; the product check below is rigorous
    bits = max(f.max_norm(), h.max_norm()).bit_length() + f.deg_q() + f.deg_t() + 16
    nbytes = bits // 8 + 2
    ndigits = (f.deg_q() + 1) * width
    pf = _pack(f.terms, width, nbytes, ndigits)
    ph = _pack(h.terms, width, nbytes, ndigits)
    quo, rem = divmod(pf, ph)
    if rem:
        raise NotDivisible("remainder is nonzero")
    try:
        qterms = _unpack(quo, width, nbytes, (dq + 1) * width)
    except OverflowError:
        return _divexact_longhand(f, h)
    cand = QTPoly(qterms, True)
    if cand * h == f:
        return cand
    return _divexact_longhand(f, h)


def divides(h: QTPoly, f: QTPoly) -> bool:
    try:
        divexact(f, h)
    except NotDivisible:
        return False
    return True


# -- GCD ------------------------------------------------------------------

def normalize_sign(p: QTPoly) -> QTPoly:
    """Flip sign so the lexicographically greatest coefficient is positive."""
    if p.terms and p.leading()[1] < 0:
        return -p
    return p


def primitive(p: QTPoly) -> Tuple[int, QTPoly]:
    c = p.content()
    if c in (0, 1):
        return c, p
    return c, p.scale_exact(c)


class HeuristicGCDFailed(Exception):
    pass


def _uni_eval(coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _interpolate(value: int, x: int):
    """Balanced base-``x`` digits of ``value``, lowest first."""
    out = []
    half = x // 2
    while value:
        r = value % x
        if r > half:
            r -= x
        out.append(r)
        value = (value - r) // x
    return out


def _uni_divexact(f, h):
    """Exact division of dense integer coefficient lists (lowest first)."""
    f = list(f)
    dh = len(h) - 1
    lc = h[-1]
    quo = [0] * (len(f) - dh)
    for i in range(len(f) - 1 - dh, -1, -1):
        c, r = divmod(f[i + dh], lc)
        if r:
            return None
        quo[i] = c
        if c:
            for j in range(dh + 1):
                f[i + j] -= c * h[j]
    if any(f[:dh]):
        return None
    return quo


def _uni_primitive(f):
    g = 0
    for c in f:
        g = igcd(g, c)
    if f and f[-1] < 0:
        g = -g
    return [c // g for c in f] if g not in (0, 1) else f


def _uni_heu_gcd(f, g):
    """Heuristic GCD of univariate integer polynomials (dense, lowest first).

    The integer content is part of the answer: after evaluating ``t`` it
    carries the ``t``-factors of the bivariate GCD.
    """
    cf = 0
    for c in f:
        cf = igcd(cf, c)
    cg = 0
    for c in g:
        cg = igcd(cg, c)
    cont = igcd(cf, cg)
    f = [c // cf for c in f]
    g = [c // cg for c in g]
    fn = max(abs(c) for c in f)
    gn = max(abs(c) for c in g)
    b = 2 * min(fn, gn) + 29
    x = max(min(b, 99 * isqrt(b)), 2 * min(fn // abs(f[-1]), gn // abs(g[-1])) + 4)
    for _ in range(_HEU_GCD_TRIES):
        ff = _uni_eval(f, x)
        gg = _uni_eval(g, x)
        if ff and gg:
            hh = igcd(ff, gg)
            h = _uni_primitive(_interpolate(hh, x))
            if h and _uni_divexact(f, h) is not None and _uni_divexact(g, h) is not None:
                return [cont * c for c in h]
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    raise HeuristicGCDFailed


def _to_dense_in_q(p: QTPoly, t0: int):
    out = [0] * (p.deg_q() + 1)
    tp = {}
    for (a, b), c in p.terms.items():
        if b not in tp:
            tp[b] = t0 ** b
        out[a] += c * tp[b]
    return out


def _heu_gcd(f: QTPoly, g: QTPoly) -> QTPoly:
    """Heuristic GCD of primitive bivariate polynomials, both of positive q- or t-degree."""
    fn, gn = f.max_norm(), g.max_norm()
    b = 2 * min(fn, gn) + 29
    x = max(min(b, 99 * isqrt(b)), 2 * min(fn // abs(f.leading()[1]), gn // abs(g.leading()[1])) + 4)
    for _ in range(_HEU_GCD_TRIES):
        ff = _to_dense_in_q(f, x)
        gg = _to_dense_in_q(g, x)
        while ff and not ff[-1]:
            ff.pop()
        while gg and not gg[-1]:
            gg.pop()
        if ff and gg:
            try:
                if len(ff) == 1 or len(gg) == 1:
                    c = 0
                    for v in ff + gg:
                        c = igcd(c, v)
                    hq = [c]
                else:
                    hq = _uni_heu_gcd(ff, gg)
            except HeuristicGCDFailed:
                hq = None
            if hq is not None:
                terms = {}
                for a, coeff in enumerate(hq):
                    for bexp, d in enumerate(_interpolate(coeff, x)):
                        if d:
                            terms[(a, bexp)] = d
                h = QTPoly(terms, True)
                if h.terms:
                    h = normalize_sign(primitive(h)[1])
                    if divides(h, f) and divides(h, g):
                        return h
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    raise HeuristicGCDFailed


# primitive PRS in Z[t][q]; univariate pieces are dense integer lists in t

def _t_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _t_mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _t_trim(out)


def _t_sub(f, g):
    n = max(len(f), len(g))
    out = [(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)]
    return _t_trim(out)


def _t_prem(f, g):
    """Pseudo-remainder in Z[t]."""
    f = list(f)
    dg = len(g) - 1
    lc = g[-1]
    while len(f) - 1 >= dg and f:
        c = f[-1]
        shift = len(f) - 1 - dg
        f = [v * lc for v in f]
        for j in range(dg + 1):
            f[shift + j] -= c * g[j]
        _t_trim(f)
    return f


def _t_gcd(f, g):
    """GCD in Z[t] by primitive PRS; result has positive leading coefficient."""
    f = _uni_primitive(_t_trim(list(f)))
    g = _uni_primitive(_t_trim(list(g)))
    if not f:
        return g
    if not g:
        return f
    cf = 0
    for c in f:
        cf = igcd(cf, c)
    cg = 0
    for c in g:
        cg = igcd(cg, c)
    c = igcd(cf, cg)
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = _t_prem(f, g)
        f, g = g, _uni_primitive(r) if r else []
    f = _uni_primitive(f)
    return [c * v for v in f]


def _to_rec(p: QTPoly):
    out = [[] for _ in range(p.deg_q() + 1)]
    for (a, b), c in p.terms.items():
        row = out[a]
        if len(row) <= b:
            row.extend([0] * (b + 1 - len(row)))
        row[b] = c
    return [_t_trim(r) for r in out]


def _from_rec(rec) -> QTPoly:
    terms = {}
    for a, row in enumerate(rec):
        for b, c in enumerate(row):
            if c:
                terms[(a, b)] = c
    return QTPoly(terms, True)


def _rec_content(rec):
    c = []
    for row in rec:
        if row:
            c = _t_gcd(c, row)
            if len(c) == 1 and abs(c[0]) == 1:
                break
    return c


def _rec_divexact_t(rec, c):
    out = []
    for row in rec:
        if row:
            qrow = _uni_divexact(row, c)
            if qrow is None:
                raise NotDivisible("content division failed")
            out.append(_t_trim(qrow))
        else:
            out.append([])
    return out


def _rec_prem(f, g):
    """Pseudo-remainder of f by g in Z[t][q]."""
    f = [list(r) for r in f]
    dg = len(g) - 1
    lc = g[-1]
    while len(f) - 1 >= dg:
        c = f[-1]
        shift = len(f) - 1 - dg
        f = [_t_mul(r, lc) for r in f]
        for j in range(dg + 1):
            f[shift + j] = _t_sub(f[shift + j], _t_mul(c, g[j]))
        while f and not f[-1]:
            f.pop()
    return f


def gcd_prs(f: QTPoly, g: QTPoly) -> QTPoly:
    """GCD via primitive polynomial remainder sequences over ``Z[t]``."""
    if not f.terms:
        return normalize_sign(g)
    if not g.terms:
        return normalize_sign(f)
    ci = igcd(f.content(), g.content())
    F = _to_rec(primitive(f)[1])
    G = _to_rec(primitive(g)[1])
    cf = _rec_content(F)
    cg = _rec_content(G)
    c = _t_gcd(cf, cg)
    F = _rec_divexact_t(F, cf)
    G = _rec_divexact_t(G, cg)
    if len(F) < len(G):
        F, G = G, F
    while G:
        if len(G) == 1:
            # nonzero remainder free of q: primitive parts are coprime
            F = [[1]]
            break
        R = _rec_prem(F, G)
        F, G = G, (_rec_divexact_t(R, _rec_content(R)) if R else [])
    h = _from_rec([_t_mul(row, c) for row in F])
    h = normalize_sign(primitive(h)[1])
    return h * ci if ci != 1 else h


def gcd(f: QTPoly, g: QTPoly) -> QTPoly:
    """Greatest common divisor in ``Z[q, t]`` with positive leading coefficient."""
    if not f.terms:
        return normalize_sign(g)
    if not g.terms:
        return normalize_sign(f)
    ci = igcd(f.content(), g.content())
    # pull out the common monomial factor
    fa, fb = f.min_exponents()
    ga, gb = g.min_exponents()
    ma, mb = min(fa, ga), min(fb, gb)
    fp = primitive(f.shift(-fa, -fb))[1]
    gp = primitive(g.shift(-ga, -gb))[1]
    if fp.is_constant() or gp.is_constant():
        core = ONE
    elif fp == gp or fp == -gp:
        core = normalize_sign(fp)
    else:
        try:
            core = _heu_gcd(fp, gp)
        except HeuristicGCDFailed:
            core = gcd_prs(fp, gp)
    return core.shift(ma, mb) * ci


def from_terms(items: Iterable[Tuple[int, int, int]]) -> QTPoly:
    out: Dict[Exp, int] = {}
    for a, b, c in items:
        out[(a, b)] = out.get((a, b), 0) + c
    return QTPoly(out)
