"""Symmetric polynomials in ``n`` variables in the monomial basis."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .partitions import (
    EMPTY,
    Partition,
    conjugate,
    padded,
    partition,
    sort_key,
)
from .qtpoly import QTPoly


@lru_cache(maxsize=None)
def orbit(mu: Partition, n: int) -> Tuple[Tuple[int, ...], ...]:
    """Distinct rearrangements of ``mu`` padded to length ``n``."""
    return tuple(sorted(set(permutations(padded(mu, n)))))


@lru_cache(maxsize=None)
def m_at_spectral(mu: Partition, lam: Partition, n: int) -> QTPoly:
    """``m_mu`` at the spectral point of ``lam``; always a polynomial in q, t."""
    lam_p = padded(lam, n)
    terms: Dict[Tuple[int, int], int] = {}
    for alpha in orbit(mu, n):
        a = b = 0
        for i, e in enumerate(alpha):
            if e:
                a += e * lam_p[i]
                b += e * (n - 1 - i)
        terms[(a, b)] = terms.get((a, b), 0) + 1
    return QTPoly(terms)


def m_eval(mu: Partition, point: Sequence, field):
    """``m_mu`` at an arbitrary point given as a sequence of scalars."""
    n = len(point)
    total = field.zero
    for alpha in orbit(mu, n):
        term = field.one
        for x, e in zip(point, alpha):
            if e:
                term = term * x ** e
        total = total + term
    return total


@lru_cache(maxsize=None)
def m_product(lam: Partition, mu: Partition, n: int) -> Tuple[Tuple[Partition, int], ...]:
    """Integer structure constants of ``m_lam * m_mu`` in ``n`` variables."""
    out: Dict[Partition, int] = {}
    orb_mu = orbit(mu, n)
    for alpha in orbit(lam, n):
        for beta in orb_mu:
            s = tuple(x + y for x, y in zip(alpha, beta))
            # count each monomial only at the dominant representative of its orbit
            if all(s[i] >= s[i + 1] for i in range(n - 1)):
                nu = partition(s)
                out[nu] = out.get(nu, 0) + 1
    return tuple(sorted(out.items()))


class SymPoly:
    """``sum coeffs[lam] * m_lam`` over a coefficient field."""

    __slots__ = ("n", "field", "coeffs")

    def __init__(self, n: int, field, coeffs: Mapping[Partition, object] | None = None):
        self.n = n
        self.field = field
        clean = {}
        for lam, c in (coeffs or {}).items():
            lam = partition(lam)
            if len(lam) > n:
                if c:
                    raise ValueError(f"m_{lam} does not exist in {n} variables")
                continue
            if c:
                clean[lam] = field(c)
        self.coeffs = clean

    @classmethod
    def monomial(cls, lam: Partition, n: int, field) -> "SymPoly":
        return cls(n, field, {lam: field.one})

    @classmethod
    def constant(cls, c, n: int, field) -> "SymPoly":
        return cls(n, field, {EMPTY: c})

    def _new(self, coeffs: Dict[Partition, object]) -> "SymPoly":
        p = SymPoly.__new__(SymPoly)
        p.n, p.field = self.n, self.field
        p.coeffs = {k: v for k, v in coeffs.items() if v}
        return p

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __getitem__(self, lam: Partition):
        return self.coeffs.get(partition(lam), self.field.zero)

    def support(self, order: str = "lex"):
        return sorted(self.coeffs, key=sort_key(order))

    def degree(self) -> int:
        return max((sum(k) for k in self.coeffs), default=-1)

    def __add__(self, other: "SymPoly") -> "SymPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return self._new(out)

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] - v if k in out else -v
        return self._new(out)

    def __neg__(self) -> "SymPoly":
        return self._new({k: -v for k, v in self.coeffs.items()})

    def scale(self, c) -> "SymPoly":
        if not c:
            return self._new({})
        return self._new({k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other) -> "SymPoly":
        if isinstance(other, SymPoly):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __call__(self, lam: Partition):
        return poly_eval(self, lam)

    def __repr__(self) -> str:
        return f"SymPoly(n={self.n}, {render_sympoly(self)})"


def poly_eval(f: SymPoly, lam: Partition):
    """``f`` at the spectral point of ``lam``."""
    field = f.field
    total = field.zero
    for mu, c in f.coeffs.items():
        total = total + c * field.from_poly(m_at_spectral(mu, lam, f.n))
    return total


def multiply(f: SymPoly, g: SymPoly) -> SymPoly:
    if f.n != g.n:
        raise ValueError("variable counts differ")
    out: Dict[Partition, object] = {}
    for lam, a in f.coeffs.items():
        for mu, b in g.coeffs.items():
            ab = a * b
            for nu, k in m_product(lam, mu, f.n):
                term = ab * k
                out[nu] = out[nu] + term if nu in out else term
    return f._new(out)


def elementary_e(k: int, n: int, field) -> SymPoly:
    if not 0 <= k <= n:
        raise ValueError(f"e_{k} does not exist in {n} variables")
    return SymPoly.monomial((1,) * k, n, field)


@lru_cache(maxsize=None)
def _e_product_int(mu: Partition, n: int) -> Tuple[Tuple[Partition, int], ...]:
    # integer coefficients of prod_i e_{mu'_i}
    if len(mu) > n:
        raise ValueError(f"E_{mu} needs {len(mu)} > {n} variables")
    cur: Dict[Partition, int] = {EMPTY: 1}
    for k in conjugate(mu):
        nxt: Dict[Partition, int] = {}
        for lam, c in cur.items():
            for nu, k2 in m_product(lam, (1,) * k, n):
                nxt[nu] = nxt.get(nu, 0) + c * k2
        cur = {k_: v for k_, v in nxt.items() if v}
    return tuple(sorted(cur.items()))


def e_product_E(mu: Partition, n: int, field) -> SymPoly:
    """``E_mu = e_{mu'_1} e_{mu'_2} ...``, equal to ``m_mu`` plus dominance-lower terms."""
    return SymPoly(n, field, {nu: field(c) for nu, c in _e_product_int(partition(mu), n)})


def expand_in_E(g: SymPoly, order: str = "lex") -> Dict[Partition, object]:
    """Coefficients ``b`` with ``g = sum b[mu] * E_mu`` (unitriangular back-substitution)."""
    key = sort_key(order)
    rem = dict(g.coeffs)
    out: Dict[Partition, object] = {}
    while rem:
        mu = max(rem, key=key)
        b = rem.pop(mu)
        out[mu] = b
        for nu, c in _e_product_int(mu, g.n):
            if nu == mu:
                continue
            v = rem.get(nu, g.field.zero) - b * c
            if v:
                rem[nu] = v
            else:
                rem.pop(nu, None)
    return out


def from_E(coeffs: Mapping[Partition, object], n: int, field) -> SymPoly:
    total = SymPoly(n, field)
    for mu, b in coeffs.items():
        total = total + e_product_E(mu, n, field).scale(b)
    return total


def linear_combination(items: Iterable[Tuple[object, SymPoly]], n: int, field) -> SymPoly:
    out: Dict[Partition, object] = {}
    for c, p in items:
        if not c:
            continue
        for k, v in p.coeffs.items():
            term = v * c
            out[k] = out[k] + term if k in out else term
    return SymPoly(n, field)._new(out)


# -- rendering --------------------------------------------------------------

def _m_name(lam: Partition) -> str:
    return "m[" + ",".join(map(str, lam)) + "]"


def render_sympoly(f: SymPoly, order: str = "lex") -> str:
    """Top term first: ``m[2] - (1 + q)·m[1] + q·m[]``."""
    if not f.coeffs:
        return "0"
    field = f.field
    pieces = []
    for lam in reversed(f.support(order)):
        c = f.coeffs[lam]
        text = field.render(c)
        negative = False
        if text.startswith("-"):
            neg_text = field.render(-c)
            if not neg_text.startswith("-"):
                negative, text = True, neg_text
        if text == "1":
            body = _m_name(lam)
        else:
            wrap = _has_top_level_sign(text) or "/" in text
            body = (f"({text})" if wrap else text) + "·" + _m_name(lam)
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)


def _has_top_level_sign(text: str) -> bool:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return True
    return False


def sympoly_to_json(f: SymPoly, order: str = "lex") -> dict:
    return {
        "n": f.n,
        "basis": "m",
        "terms": [
            {"partition": list(lam), "coeff": f.field.to_json(f.coeffs[lam])}
            for lam in f.support(order)
        ],
    }


def sympoly_from_json(d: dict, field) -> SymPoly:
    if d.get("basis", "m") != "m":
        raise ValueError("only the monomial basis is supported")
    return SymPoly(d["n"], field, {tuple(t["partition"]): field.from_json(t["coeff"]) for t in d["terms"]})
