"""Verification suites: every identity checked by exact equality.

Each suite walks all partitions inside ``(n, max_size)`` and emits one
:class:`Case` per identity instance.  Failing cases carry the offending
values in canonical rendering so they can be re-evaluated by hand.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Optional

from .exactfield import DegenerateSpecialization, NumericField, make_field
from .macdonald import (
    BasisCache,
    apply_D_of,
    apply_Dk_eval,
    binomial_coefficients,
    chain_coefficients,
    d_factor,
    expand_in_P,
    interpolation_I,
    macdonald_P,
    pairing_via_operators,
    pairing_via_spectrum,
)
from .partitions import (
    EMPTY,
    Partition,
    contains,
    dominance_leq,
    eigenvalue_ek,
    format_partition,
    padded,
    spectral_point,
)
from .symfunc import SymPoly, linear_combination, m_eval, multiply, poly_eval, render_sympoly

SUITES = (
    "oneD", "crucial", "eigen", "chain", "routes", "t1", "t2", "t3",
    "symmetry", "extra", "adjoint", "order", "cache",
)
MAX_RESAMPLES = 5


class RetryBudgetExhausted(RuntimeError):
    """Numeric resampling hit degenerate parameters too many times."""


@dataclass
class SuiteConfig:
    suite: str
    n: int
    max_size: int
    mode: str = "symbolic"
    q0: Optional[Fraction] = None
    t0: Optional[Fraction] = None
    seed: Optional[int] = None
    order: str = "lex"
    pairs: int = 50

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if self.max_size < 0:
            raise ValueError("max_size must be >= 0")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.mode == "numeric" and (self.q0 is None) != (self.t0 is None):
            raise ValueError("give both q0 and t0, or neither")

    def echo(self) -> dict:
        out = {"n": self.n, "max_size": self.max_size, "mode": self.mode, "order": self.order}
        if self.mode == "numeric":
            out["seed"] = self.seed
            if self.q0 is not None:
                out["q0"] = str(self.q0)
                out["t0"] = str(self.t0)
        if self.suite in ("symmetry", "adjoint"):
            out["pairs"] = self.pairs
            out["seed"] = self.seed
        return out


@dataclass
class Case:
    label: str
    status: str  # pass | fail | degenerate-resampled
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        d = {"label": self.label, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Report:
    suite: str
    config: dict
    cases: List[Case] = dc_field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(c.status == "pass" for c in self.cases)

    @property
    def failed(self) -> int:
        return sum(c.status == "fail" for c in self.cases)

    @property
    def resampled(self) -> int:
        return sum(c.status == "degenerate-resampled" for c in self.cases)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "cases": [c.to_json() for c in self.cases],
            "passed": self.passed,
            "failed": self.failed,
            "resampled": self.resampled,
        }

    def summary(self) -> str:
        return f"{self.suite}: {self.passed} passed, {self.failed} failed, {self.resampled} resampled"


# -- numeric parameter sampling ----------------------------------------------

def _degenerate_pair(q0: Fraction, t0: Fraction, bound: int) -> bool:
    if q0 in (0, 1, -1) or t0 in (0, 1, -1) or q0 == t0:
        return True
    for i in range(-bound, bound + 1):
        qi = q0 ** i
        for j in range(-bound, bound + 1):
            if (i or j) and qi * t0 ** j == 1:
                return True
    return False


def sample_parameters(rng: random.Random, max_size: int):
    """Rational ``(q0, t0)`` with small numerators/denominators, avoiding known degeneracies."""
    bound = 2 * max_size + 2
    while True:
        a, b, c, d = (rng.randint(2, 100) for _ in range(4))
        q0, t0 = Fraction(a, b), Fraction(c, d)
        if not _degenerate_pair(q0, t0, bound):
            return q0, t0


# -- helpers -------------------------------------------------------------------

def _lbl(lam: Partition) -> str:
    return "[" + format_partition(lam).replace("[]", "") + "]"


def _check(label: str, lhs, rhs, field, **context) -> Case:
    if lhs == rhs:
        return Case(label, "pass")
    witness = {k: v for k, v in context.items()}
    witness["lhs"] = field.render(lhs)
    witness["rhs"] = field.render(rhs)
    return Case(label, "fail", witness)


def _truth(label: str, ok: bool, **context) -> Case:
    return Case(label, "pass") if ok else Case(label, "fail", dict(context))


def random_sympoly(rng: random.Random, cache: BasisCache, max_degree: int, terms: int = 4) -> SymPoly:
    pool = cache.partitions(max_degree)
    picks = rng.sample(pool, min(terms, len(pool)))
    coeffs = {}
    for lam in picks:
        c = 0
        while c == 0:
            c = rng.randint(-9, 9)
        coeffs[lam] = cache.field(c)
    return SymPoly(cache.n, cache.field, coeffs)


# -- suites --------------------------------------------------------------------

def suite_oneD(cache: BasisCache, cfg: SuiteConfig, rng) -> Iterator[Case]:
    if cache.n != 1:
        cache = BasisCache(1, cache.field, cache.order)
    F = cache.field
    top = cfg.max_size

    def x(k):
        return SymPoly.monomial((k,) if k else EMPTY, 1, F)

    for a in range(top + 1):
        for b in range(top + 1):
            want = F.q ** (a * b)
            yield _check(f"<x^{a},x^{b}> operators", pairing_via_operators(x(a), x(b), cache), want, F)
            yield _check(f"<x^{a},x^{b}> spectrum", pairing_via_spectrum(x(a), x(b), cache), want, F)
    for k in range(top + 1):
        prod = x(0)
        for j in range(k):
            prod = multiply(prod, x(1) - x(0).scale(F.q ** j))
        got = cache.I((k,) if k else EMPTY)
        yield _truth(f"I_{k} = (x-1)...(x-q^{k - 1})", got == prod,
                     lhs=render_sympoly(got), rhs=render_sympoly(prod))
    for k in range(top + 1):
        Ik = cache.I((k,) if k else EMPTY)
        for m in range(top + 1):
            Im = cache.I((m,) if m else EMPTY)
            want = cache.I_at((k,) if k else EMPTY, (k,) if k else EMPTY) if k == m else F.zero
            yield _check(f"<I_{k},I_{m}> = delta I_{k}(q^{k})", pairing_via_operators(Ik, Im, cache), want, F)
    for k in range(top + 1):
        total = SymPoly(1, F)
        for m in range(k + 1):
            mu = (m,) if m else EMPTY
            lam = (k,) if k else EMPTY
            total = total + cache.I(mu).scale(cache.I_at(mu, lam) / cache.I_at(mu, mu))
        yield _truth(f"x^{k} Newton expansion", total == x(k), lhs=render_sympoly(total))
    # Fourier transform: x* = T and T* = x
    for a in range(top):
        for b in range(top):
            Tf = x(b).scale(F.q ** b)
            yield _check(f"<x*x^{a},x^{b}> = <x^{a},T x^{b}>",
                         pairing_via_operators(multiply(x(1), x(a)), x(b), cache),
                         pairing_via_operators(x(a), Tf, cache), F)
            Tg = x(a).scale(F.q ** a)
            yield _check(f"<T x^{a},x^{b}> = <x^{a},x*x^{b}>",
                         pairing_via_operators(Tg, x(b), cache),
                         pairing_via_operators(x(a), multiply(x(1), x(b)), cache), F)


def suite_crucial(cache: BasisCache, cfg: SuiteConfig, rng) -> Iterator[Case]:
    n, F = cache.n, cache.field
    for lam in cache.partitions(cfg.max_size):
        lp = padded(lam, n)
        for k in range(n + 1):
            for S in combinations(range(n), k):
                inside = set(S)
                forced = any(lp[i] == lp[i + 1] and i not in inside and (i + 1) in inside for i in range(n - 1))
                d = d_factor(S, lam, n, F)
                rows = "{" + ",".join(str(i + 1) for i in S) + "}"
                if forced:
                    yield _check(f"d_{rows}({_lbl(lam)}^) = 0", d, F.zero, F)
                else:
                    yield _truth(f"d_{rows}({_lbl(lam)}^) != 0", bool(d), value=F.render(d))
    # the strip formula against the full sum over all subsets at generic points
    for lam in cache.partitions(cfg.max_size):
        point = spectral_point(lam, n, F)
        for kappa in cache.partitions(cfg.max_size):
            f = SymPoly.monomial(kappa, n, F)
            for k in range(n + 1):
                full = F.zero
                for S in combinations(range(n), k):
                    shifted = [x * F.q if i in S else x for i, x in enumerate(point)]
                    full = full + d_factor(S, lam, n, F) * m_eval(kappa, shifted, F)
                full = full * F.t ** (k * (k - 1) // 2)
                yield _check(f"[D_{k} m{_lbl(kappa)}]({_lbl(lam)}^) strips = all subsets",
                             apply_Dk_eval(f, k, lam, F), full, F)


def suite_eigen(cache: BasisCache, cfg: SuiteConfig, rng) -> Iterator[Case]:
    n, F = cache.n, cache.field
    for lam in cache.partitions(cfg.max_size):
        P = cache.P(lam)
        yield _truth(f"P{_lbl(lam)} unitriangular", P[lam] == F.one and all(
            dominance_leq(mu, lam) for mu in P.coeffs), support=[list(mu) for mu in P.support()])
        for k in range(n + 1):
            ev = eigenvalue_ek(lam, k, n, F)
            for nu in cache.partitions(sum(lam) + n):
                yield _check(f"[D_{k} P{_lbl(lam)}]({_lbl(nu)}^) = e_{k}({_lbl(lam)}^) P{_lbl(lam)}({_lbl(nu)}^)",
                             apply_Dk_eval(P, k, nu, F), ev * cache.P_at(lam, nu), F)


def suite_chain(cache: BasisCache, cfg: SuiteConfig, rng) -> Iterator[Case]:
    n, F = cache.n, cache.field
    for mu in cache.partitions(cfg.max_size):
        c = cache.chain(mu)
        bad = [list(nu) for nu in c if not (sum(nu) == sum(mu) and dominance_leq(nu, mu))]
        yield _truth(f"chain{_lbl(mu)} support below mu", not bad, outside=bad)
        yield _truth(f"chain{_lbl(mu)} diagonal nonzero", bool(c.get(mu)))
        other = chain_coefficients(mu, n, F, strip_order="increasing")
        yield _truth(f"chain{_lbl(mu)} independent of strip order", other == c,
                     decreasing={format_partition(k): F.render(v) for k, v in c.items()},
                     increasing={format_partition(k): F.render(v) for k, v in other.items()})


def _basis_family(cache: BasisCache, max_size: int):
    F = cache.field
    out = []
    for mu in cache.partitions(max_size):
        out.append((f"m{_lbl(mu)}", SymPoly.monomial(mu, cache.n, F)))
        out.append((f"I{_lbl(mu)}", cache.I(mu)))
        out.append((f"P{_lbl(mu)}", cache.P(mu)))
    return out


def suite_routes(cache: BasisCache, cfg: SuiteConfig, rng) -> Iterator[Case]:
    F = cache.field
    family = _basis_family(cache, cfg.max_size)
    for gname, g in family:
        for fname, f in family:
            yield _check(f"<{gname},{fname}> operators = spectrum",
                         pairing_via_operators(g, f, cache), pairing_via_spectrum(g, f, cache), F)


def suite_t1(cache: BasisCache, cfg: SuiteConfig, rng) -> Iterator[Case]:
    F = cache.field
    parts = cache.partitions(cfg.max_size)
    for mu in parts:
        for nu in parts:
            v = pairing_via_operators(cache.I(mu), cache.I(nu), cache)
            if mu == nu:
                yield _truth(f"<I{_lbl(mu)},I{_lbl(mu)}> != 0", bool(v), value=F.render(v))
            else:
                yield _check(f"<I{_lbl(mu)},I{_lbl(nu)}> = 0", v, F.zero, F)


def suite_t2(cache: BasisCache, cfg: SuiteConfig, rng) -> Iterator[Case]:
    F = cache.field
    for mu in cache.partitions(cfg.max_size):
        gram = pairing_via_operators(cache.I(mu), cache.I(mu), cache)
        top = cache.I_at(mu, mu)
        p0 = cache.P_at_zero(mu)
        cmm = cache.chain(mu).get(mu, F.zero)
        yield _check(f"<I{_lbl(mu)},I{_lbl(mu)}> = I(mu^) P(0^)", gram, top * p0, F)
        yield _check(f"<I{_lbl(mu)},I{_lbl(mu)}> = c(mu,mu) I(mu^)", gram, cmm * top, F)
        yield _check(f"P{_lbl(mu)}(0^) = c(mu,mu)", p0, cmm, F)


def suite_t3(cache: BasisCache, cfg: SuiteConfig, rng) -> Iterator[Case]:
    F = cache.field
    for lam in cache.partitions(cfg.max_size):
        coeffs = binomial_coefficients(lam, cache)
        expansion = linear_combination(((c, cache.I(mu)) for mu, c in coeffs.items()), cache.n, F)
        N = cache.N(lam)
        yield _truth(f"N{_lbl(lam)} = sum_mu I_mu(lam^) I_mu / <I_mu,I_mu>", expansion == N,
                     lhs=render_sympoly(expansion), rhs=render_sympoly(N))
        for mu, c in coeffs.items():
            if not contains(mu, lam):
                yield _check(f"binomial coeff {_lbl(mu)} in N{_lbl(lam)} = 0", c, F.zero, F)


def suite_symmetry(cache: BasisCache, cfg: SuiteConfig, rng) -> Iterator[Case]:
    F = cache.field
    parts = cache.partitions(cfg.max_size)
    for i, lam in enumerate(parts):
        for mu in parts[i:]:
            yield _check(f"N{_lbl(lam)}({_lbl(mu)}^) = N{_lbl(mu)}({_lbl(lam)}^)",
                         cache.N_at(lam, mu), cache.N_at(mu, lam), F)
    for k in range(cfg.pairs):
        f = random_sympoly(rng, cache, cfg.max_size)
        g = random_sympoly(rng, cache, cfg.max_size)
        yield _check(f"random pair {k}: <f,g> = <g,f>",
                     pairing_via_operators(f, g, cache), pairing_via_operators(g, f, cache), F,
                     f=render_sympoly(f), g=render_sympoly(g))


def suite_extra(cache: BasisCache, cfg: SuiteConfig, rng) -> Iterator[Case]:
    F = cache.field
    for mu in cache.partitions(cfg.max_size):
        for lam in cache.partitions(cfg.max_size + 2):
            if not contains(mu, lam):
                yield _check(f"I{_lbl(mu)}({_lbl(lam)}^) = 0", cache.I_at(mu, lam), F.zero, F)
    for mu in cache.partitions(cfg.max_size):
        b = expand_in_P(cache.I(mu), cache)
        outside = [list(lam) for lam in b if not contains(lam, mu)]
        yield _truth(f"I{_lbl(mu)} = P{_lbl(mu)} + P-terms inside mu",
                     b.get(mu) == F.one and not outside, outside=outside)


def suite_adjoint(cache: BasisCache, cfg: SuiteConfig, rng) -> Iterator[Case]:
    F = cache.field
    deg = min(3, cfg.max_size)
    for k in range(max(1, cfg.pairs // 2)):
        h = random_sympoly(rng, cache, deg, 2)
        g = random_sympoly(rng, cache, deg)
        f = random_sympoly(rng, cache, deg)
        yield _check(f"random triple {k}: <hg,f> = <g,D(h)f>",
                     pairing_via_operators(multiply(h, g), f, cache),
                     pairing_via_operators(g, apply_D_of(h, f, cache), cache), F,
                     h=render_sympoly(h), g=render_sympoly(g), f=render_sympoly(f))


def suite_order(cache: BasisCache, cfg: SuiteConfig, rng) -> Iterator[Case]:
    alt = "conjugate" if cache.order == "lex" else "lex"
    other = BasisCache(cache.n, cache.field, alt)
    for mu in cache.partitions(cfg.max_size):
        a, b = cache.I(mu), other.I(mu)
        yield _truth(f"I{_lbl(mu)} same under {cache.order} and {alt} orders", a == b,
                     lhs=render_sympoly(a), rhs=render_sympoly(b))


def suite_cache(cache: BasisCache, cfg: SuiteConfig, rng) -> Iterator[Case]:
    """Cached entries (possibly loaded from disk) against fresh computation."""
    n, F = cache.n, cache.field
    for mu in cache.partitions(cfg.max_size):
        cache.P(mu)
        cache.I(mu)
        cache.chain(mu)
        cache.norm(mu)
    for mu in sorted(cache.P_cache, key=lambda p: (sum(p), p)):
        yield _truth(f"cached P{_lbl(mu)} = fresh", cache.P_cache[mu] == macdonald_P(mu, n, F, cache.order))
    for mu in sorted(cache.I_cache, key=lambda p: (sum(p), p)):
        yield _truth(f"cached I{_lbl(mu)} = fresh", cache.I_cache[mu] == interpolation_I(mu, n, F, cache.order))
    for mu in sorted(cache.chain_cache, key=lambda p: (sum(p), p)):
        yield _truth(f"cached chain{_lbl(mu)} = fresh", cache.chain_cache[mu] == chain_coefficients(mu, n, F))
    for mu in sorted(cache.norm_cache, key=lambda p: (sum(p), p)):
        fresh = interpolation_I(mu, n, F, cache.order)
        value = poly_eval(fresh, mu) * poly_eval(macdonald_P(mu, n, F, cache.order), EMPTY)
        yield _check(f"cached norm{_lbl(mu)} = fresh", cache.norm_cache[mu], value, F)


SUITE_FUNCS: Dict[str, Callable] = {
    "oneD": suite_oneD,
    "crucial": suite_crucial,
    "eigen": suite_eigen,
    "chain": suite_chain,
    "routes": suite_routes,
    "t1": suite_t1,
    "t2": suite_t2,
    "t3": suite_t3,
    "symmetry": suite_symmetry,
    "extra": suite_extra,
    "adjoint": suite_adjoint,
    "order": suite_order,
    "cache": suite_cache,
}


def resolve_field(cfg: SuiteConfig, rng: random.Random):
    if cfg.mode == "symbolic":
        return make_field("symbolic")
    if cfg.q0 is not None:
        return NumericField(cfg.q0, cfg.t0)
    return NumericField(*sample_parameters(rng, cfg.max_size))


def run_suite(cfg: SuiteConfig, cache: Optional[BasisCache] = None) -> Report:
    """Run one suite; numeric mode resamples (q0, t0) on degenerate specializations."""
    rng = random.Random(cfg.seed if cfg.seed is not None else 0)
    sampler = random.Random(rng.random())
    if cache is not None and cfg.mode == cache.field.mode and cache.n == cfg.n and cache.order == cfg.order:
        field = cache.field
    else:
        field = resolve_field(cfg, sampler)
        cache = BasisCache(cfg.n, field, cfg.order)
    report = Report(cfg.suite, cfg.echo())
    resamples = 0
    while True:
        case_rng = random.Random(rng.random())
        try:
            cases = list(SUITE_FUNCS[cfg.suite](cache, cfg, case_rng))
        except DegenerateSpecialization as err:
            if cfg.mode != "numeric":
                raise
            report.cases.append(Case(f"resample after q0={field.q0}, t0={field.t0}", "degenerate-resampled",
                                     {"reason": str(err)}))
            resamples += 1
            if resamples > MAX_RESAMPLES:
                raise RetryBudgetExhausted(f"{cfg.suite}: {MAX_RESAMPLES} resamples all degenerate") from err
            field = NumericField(*sample_parameters(sampler, cfg.max_size))
            cache = BasisCache(cfg.n, field, cfg.order)
            continue
        report.cases.extend(cases)
        if cfg.mode == "numeric":
            report.config["q0"] = str(field.q0)
            report.config["t0"] = str(field.t0)
        return report
