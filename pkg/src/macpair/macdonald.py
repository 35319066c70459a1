"""Macdonald polynomials, interpolation polynomials and the Fourier pairing.

Difference operators are never applied in the variables ``x``.  Everything
goes through their values at spectral points: for a symmetric ``f``,

    [D_k f](lam^) = t^(k(k-1)/2) * sum over vertical k-strips nu/lam of
                    d_S(lam^) * f(nu^),      S = rows of the strip,

and chains of such strips starting at the empty partition give the
coefficients ``c[mu][nu]`` of ``[D_mu f](0^) = sum_nu c[mu][nu] f(nu^)``.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Tuple

from .exactfield import DegenerateSpecialization, RatFunc
from .linsolve import InconsistentSystem, SingularSystem, solve
from .partitions import (
    EMPTY,
    Partition,
    conjugate,
    dominance_leq,
    eigenvalue_poly,
    enumerate_partitions,
    format_partition,
    parse_partition,
    partitions_of,
    sort_key,
    spectral_exponents,
    vertical_strips,
    ORDERS,
)
from .qtpoly import ONE, QTPoly
from .symfunc import (
    SymPoly,
    expand_in_E,
    linear_combination,
    m_at_spectral,
    poly_eval,
    sympoly_from_json,
    sympoly_to_json,
)


class InternalInconsistency(AssertionError):
    """Two routes that must agree exactly did not; always an implementation bug."""


# -- d_S and the strip recursion ---------------------------------------------

@lru_cache(maxsize=None)
def d_factor_parts(rows: Tuple[int, ...], lam: Partition, n: int) -> Tuple[QTPoly, QTPoly]:
    """Numerator and denominator polynomials of ``d_S`` at the spectral point of ``lam``.

    ``rows`` are 0-based.  Not reduced; the denominator is a product of
    differences of distinct t-powers and never vanishes symbolically.
    """
    exps = spectral_exponents(lam, n)
    inside = set(rows)
    num, den = ONE, ONE
    for i in rows:
        ai, bi = exps[i]
        for j in range(n):
            if j in inside:
                continue
            aj, bj = exps[j]
            num = num * (QTPoly.monomial(ai, bi + 1) - QTPoly.monomial(aj, bj))
            den = den * (QTPoly.monomial(ai, bi) - QTPoly.monomial(aj, bj))
    return num, den


def _quotient(num: QTPoly, den: QTPoly, field):
    if field.mode == "symbolic":
        return RatFunc(num, den)
    d = field.from_poly(den)
    if d == 0:
        raise DegenerateSpecialization(f"denominator {den} vanishes at q={field.q0}, t={field.t0}")
    return field.from_poly(num) / d


def d_factor(rows: Iterable[int], lam: Partition, n: int, field):
    """``d_S`` at the spectral point of ``lam``; ``rows`` is the 0-based set S."""
    rows = tuple(sorted(rows))
    if any(not 0 <= i < n for i in rows):
        raise ValueError(f"rows {rows} outside 0..{n - 1}")
    return _quotient(*d_factor_parts(rows, lam, n), field)


@lru_cache(maxsize=None)
def strip_weight_parts(lam: Partition, k: int, n: int) -> Tuple[Tuple[Partition, QTPoly, QTPoly], ...]:
    """``(nu, num, den)`` with ``t^(k(k-1)/2) d_S(lam^) = num/den`` for each vertical strip."""
    out = []
    pre = QTPoly.monomial(0, k * (k - 1) // 2)
    for move in vertical_strips(lam, k, n):
        num, den = d_factor_parts(move.rows, lam, n)
        out.append((move.target, pre * num, den))
    return tuple(out)


def apply_Dk_eval(f: SymPoly, k: int, lam: Partition, field=None):
    """``[D_k f]`` at the spectral point of ``lam``."""
    field = field or f.field
    n = f.n
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    total = field.zero
    for nu, num, den in strip_weight_parts(lam, k, n):
        total = total + _quotient(num, den, field) * poly_eval(f, nu)
    return total


def chain_coefficients(mu: Partition, n: int, field, strip_order: str = "decreasing") -> Dict[Partition, object]:
    """Coefficients ``c[nu]`` with ``[D_mu f](0^) = sum c[nu] f(nu^)``.

    ``D_mu`` is the product of ``D_k`` over the parts ``k`` of the conjugate
    of ``mu``.  ``strip_order`` only changes the order the commuting factors
    are applied in (``"decreasing"`` or ``"increasing"``).
    """
    if len(mu) > n:
        raise ValueError(f"D_{mu} needs {len(mu)} > {n} variables")
    sizes = list(conjugate(mu))
    if strip_order == "increasing":
        sizes.reverse()
    cur: Dict[Partition, object] = {EMPTY: field.one}
    for k in sizes:
        nxt: Dict[Partition, object] = {}
        for lam, c in cur.items():
            for nu, num, den in strip_weight_parts(lam, k, n):
                w = c * _quotient(num, den, field)
                nxt[nu] = nxt[nu] + w if nu in nxt else w
        cur = {nu: c for nu, c in nxt.items() if c}
    return cur


# -- P_lambda ---------------------------------------------------------------

def _raise_degenerate(field, err):
    if field.mode == "numeric":
        raise DegenerateSpecialization(f"{err} at q={field.q0}, t={field.t0}") from err
    raise err


def macdonald_P(lam: Partition, n: int, field, order: str = "lex", method: str = "gauss") -> SymPoly:
    """Monic eigenfunction of ``D_1`` with top monomial ``m_lam``.

    Unknown coefficients sit on partitions strictly below ``lam`` in
    dominance; the eigen-relation is imposed at every spectral point of the
    same size.
    """
    if len(lam) > n:
        raise ValueError(f"P_{lam} needs {len(lam)} > {n} variables")
    d = sum(lam)
    same = sorted(partitions_of(d, n), key=sort_key(order))
    below = [mu for mu in same if mu != lam and dominance_leq(mu, lam)]
    if not below:
        return SymPoly.monomial(lam, n, field)
    ev = field.from_poly(eigenvalue_poly(lam, 1, n))

    def residual(mu, nu):
        # [D_1 m_mu](nu^) - e_1(lam^) m_mu(nu^)
        m = SymPoly.monomial(mu, n, field)
        return apply_Dk_eval(m, 1, nu, field) - ev * field.from_poly(m_at_spectral(mu, nu, n))

    matrix = [[residual(mu, nu) for mu in below] for nu in same]
    rhs = [-residual(lam, nu) for nu in same]
    try:
        sol = solve(field, matrix, rhs, method)
    except (SingularSystem, InconsistentSystem, ZeroDivisionError) as err:
        _raise_degenerate(field, err)
    coeffs = {lam: field.one}
    coeffs.update(zip(below, sol))
    return SymPoly(n, field, coeffs)


# -- I_mu -------------------------------------------------------------------

def interpolation_I(mu: Partition, n: int, field, order: str = "lex", method: str = "gauss") -> SymPoly:
    """Top monomial ``m_mu``; vanishes at ``lam^`` for every ``lam`` before ``mu``."""
    if len(mu) > n:
        raise ValueError(f"I_{mu} needs {len(mu)} > {n} variables")
    less = ORDERS[order]
    nodes = [lam for lam in enumerate_partitions(sum(mu), n, order) if less(lam, mu)]
    if not nodes:
        return SymPoly.monomial(mu, n, field)
    matrix = [[field.from_poly(m_at_spectral(kappa, lam, n)) for kappa in nodes] for lam in nodes]
    rhs = [-field.from_poly(m_at_spectral(mu, lam, n)) for lam in nodes]
    try:
        sol = solve(field, matrix, rhs, method)
    except (SingularSystem, InconsistentSystem, ZeroDivisionError) as err:
        _raise_degenerate(field, err)
    coeffs = {mu: field.one}
    coeffs.update(zip(nodes, sol))
    return SymPoly(n, field, coeffs)


# -- the cache that ties everything together --------------------------------

class BasisCache:
    """Memoized P, I, norms and chain coefficients for one ``(n, field, order)``."""

    def __init__(self, n: int, field, order: str = "lex"):
        if n < 1:
            raise ValueError("need at least one variable")
        if order not in ORDERS:
            raise ValueError(f"unknown order {order!r}")
        self.n = n
        self.field = field
        self.order = order
        self.P_cache: Dict[Partition, SymPoly] = {}
        self.I_cache: Dict[Partition, SymPoly] = {}
        self.norm_cache: Dict[Partition, object] = {}
        self.chain_cache: Dict[Partition, Dict[Partition, object]] = {}
        self._eval: Dict[Tuple[str, Partition, Partition], object] = {}
        self.hits = 0
        self.misses = 0

    # objects
    def P(self, lam: Partition) -> SymPoly:
        p = self.P_cache.get(lam)
        if p is None:
            self.misses += 1
            p = self.P_cache[lam] = macdonald_P(lam, self.n, self.field, self.order)
        else:
            self.hits += 1
        return p

    def I(self, mu: Partition) -> SymPoly:
        p = self.I_cache.get(mu)
        if p is None:
            self.misses += 1
            p = self.I_cache[mu] = interpolation_I(mu, self.n, self.field, self.order)
        else:
            self.hits += 1
        return p

    def chain(self, mu: Partition) -> Dict[Partition, object]:
        c = self.chain_cache.get(mu)
        if c is None:
            self.misses += 1
            c = self.chain_cache[mu] = chain_coefficients(mu, self.n, self.field)
        else:
            self.hits += 1
        return c

    def norm(self, mu: Partition):
        v = self.norm_cache.get(mu)
        if v is None:
            self.misses += 1
            v = self.norm_cache[mu] = norm_I(mu, self)
        else:
            self.hits += 1
        return v

    # evaluations at spectral points
    def I_at(self, mu: Partition, lam: Partition):
        key = ("I", mu, lam)
        v = self._eval.get(key)
        if v is None:
            v = self._eval[key] = poly_eval(self.I(mu), lam)
        return v

    def P_at(self, lam: Partition, nu: Partition):
        key = ("P", lam, nu)
        v = self._eval.get(key)
        if v is None:
            v = self._eval[key] = poly_eval(self.P(lam), nu)
        return v

    def P_at_zero(self, lam: Partition):
        return self.P_at(lam, EMPTY)

    def N(self, lam: Partition) -> SymPoly:
        z = self.P_at_zero(lam)
        if not z:
            _raise_degenerate(self.field, ZeroDivisionError(f"P_{lam}(0^) = 0"))
        return self.P(lam).scale(1 / z)

    def N_at(self, lam: Partition, mu: Partition):
        z = self.P_at_zero(lam)
        if not z:
            _raise_degenerate(self.field, ZeroDivisionError(f"P_{lam}(0^) = 0"))
        return self.P_at(lam, mu) / z

    def partitions(self, max_size: int) -> List[Partition]:
        return enumerate_partitions(max_size, self.n, self.order)

    def build(self, max_size: int) -> None:
        """Populate every cached object with ``|lam| <= max_size``."""
        for lam in self.partitions(max_size):
            self.P(lam)
            self.I(lam)
            self.chain(lam)
        for lam in self.partitions(max_size):
            self.norm(lam)

    # persistence: one JSON file per object, human-diffable
    def directory(self, root) -> Path:
        return Path(root) / f"n{self.n}-{self.field.key()}-{self.order}"

    def save(self, root) -> Dict[str, int]:
        base = self.directory(root)
        base.mkdir(parents=True, exist_ok=True)
        written = {"P": 0, "I": 0, "chain": 0, "norm": 0}
        for kind, store in (("P", self.P_cache), ("I", self.I_cache)):
            for lam, poly in store.items():
                _write_json(base / f"{kind}[{format_partition(lam)}].json", sympoly_to_json(poly, self.order))
                written[kind] += 1
        for mu, coeffs in self.chain_cache.items():
            doc = {
                "mu": list(mu),
                "n": self.n,
                "coeffs": [
                    {"partition": list(nu), "coeff": self.field.to_json(coeffs[nu])}
                    for nu in sorted(coeffs, key=sort_key(self.order))
                ],
            }
            _write_json(base / f"chain[{format_partition(mu)}].json", doc)
            written["chain"] += 1
        if self.norm_cache:
            doc = {
                "n": self.n,
                "norms": [
                    {"partition": list(mu), "value": self.field.to_json(self.norm_cache[mu])}
                    for mu in sorted(self.norm_cache, key=sort_key(self.order))
                ],
            }
            _write_json(base / "norms.json", doc)
            written["norm"] = len(self.norm_cache)
        _write_json(base / "meta.json", {"n": self.n, "order": self.order, "field": self.field.describe()})
        return written

    def load(self, root) -> Dict[str, int]:
        base = self.directory(root)
        loaded = {"P": 0, "I": 0, "chain": 0, "norm": 0}
        if not base.is_dir():
            return loaded
        for path in sorted(base.glob("*.json")):
            name = path.name
            doc = json.loads(path.read_text())
            if name.startswith(("P[", "I[")):
                lam = parse_partition(name[2:name.rindex("]")])
                poly = sympoly_from_json(doc, self.field)
                (self.P_cache if name[0] == "P" else self.I_cache)[lam] = poly
                loaded[name[0]] += 1
            elif name.startswith("chain["):
                mu = parse_partition(name[6:name.rindex("]")])
                self.chain_cache[mu] = {
                    tuple(e["partition"]): self.field.from_json(e["coeff"]) for e in doc["coeffs"]
                }
                loaded["chain"] += 1
            elif name == "norms.json":
                for e in doc["norms"]:
                    self.norm_cache[tuple(e["partition"])] = self.field.from_json(e["value"])
                    loaded["norm"] += 1
        return loaded


def _write_json(path: Path, doc) -> None:
    text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if path.exists() and path.read_text() == text:
        return
    tmp = path.with_suffix(".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


# -- pairing, norms, binomial coefficients ----------------------------------

def pairing_via_operators(g: SymPoly, f: SymPoly, cache: BasisCache):
    """``<g, f> = [D(g) f](0^)`` through the E-expansion of ``g`` and chain coefficients."""
    if g.n != f.n or g.n != cache.n:
        raise ValueError("variable counts differ")
    field = cache.field
    values: Dict[Partition, object] = {}
    total = field.zero
    for mu, b in expand_in_E(g, cache.order).items():
        inner = field.zero
        for nu, c in cache.chain(mu).items():
            if nu not in values:
                values[nu] = poly_eval(f, nu)
            if values[nu]:
                inner = inner + c * values[nu]
        total = total + b * inner
    return total


def expand_in_P(f: SymPoly, cache: BasisCache) -> Dict[Partition, object]:
    """Coefficients ``b`` with ``f = sum b[lam] P_lam``."""
    key = sort_key(cache.order)
    rem = f
    out: Dict[Partition, object] = {}
    while rem:
        lam = max(rem.coeffs, key=key)
        b = rem.coeffs[lam]
        out[lam] = b
        rem = rem - cache.P(lam).scale(b)
        if lam in rem.coeffs:
            raise InternalInconsistency(f"P_{lam} is not monic at m_{lam}")
    return out


def pairing_via_spectrum(g: SymPoly, f: SymPoly, cache: BasisCache):
    """``<g, f> = sum_lam b_lam P_lam(0^) g(lam^)`` where ``f = sum b_lam P_lam``."""
    if g.n != f.n or g.n != cache.n:
        raise ValueError("variable counts differ")
    field = cache.field
    total = field.zero
    for lam, b in expand_in_P(f, cache).items():
        total = total + b * cache.P_at_zero(lam) * poly_eval(g, lam)
    return total


def apply_D_of(h: SymPoly, f: SymPoly, cache: BasisCache) -> SymPoly:
    """``D(h) f`` as a polynomial, via the eigen-expansion of ``f``."""
    items = [(b * poly_eval(h, lam), cache.P(lam)) for lam, b in expand_in_P(f, cache).items()]
    return linear_combination(items, cache.n, cache.field)


def norm_I(mu: Partition, cache: BasisCache):
    """``<I_mu, I_mu>`` as ``I_mu(mu^) P_mu(0^)``, cross-checked two more ways."""
    top = cache.I_at(mu, mu)
    value = top * cache.P_at_zero(mu)
    via_chain = cache.chain(mu).get(mu, cache.field.zero) * top
    via_pairing = pairing_via_operators(cache.I(mu), cache.I(mu), cache)
    if not (value == via_chain == via_pairing):
        raise InternalInconsistency(
            f"norm of I_{mu}: I(mu^)P(0^)={cache.field.render(value)}, "
            f"c*I(mu^)={cache.field.render(via_chain)}, <I,I>={cache.field.render(via_pairing)}"
        )
    return value


def binomial_coefficients(lam: Partition, cache: BasisCache) -> Dict[Partition, object]:
    """``I_mu(lam^) / <I_mu, I_mu>`` for every ``|mu| <= |lam|``."""
    if len(lam) > cache.n:
        raise ValueError(f"{lam} has more than {cache.n} parts")
    out = {}
    for mu in cache.partitions(sum(lam)):
        nrm = cache.norm(mu)
        if not nrm:
            _raise_degenerate(cache.field, ZeroDivisionError(f"<I_{mu}, I_{mu}> = 0"))
        out[mu] = cache.I_at(mu, lam) / nrm
    return out


def binomial_expansion(lam: Partition, cache: BasisCache) -> SymPoly:
    coeffs = binomial_coefficients(lam, cache)
    return linear_combination(((c, cache.I(mu)) for mu, c in coeffs.items()), cache.n, cache.field)
