from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from macpair.exactfield import NumericField, SymbolicField
from macpair.partitions import EMPTY, dominance_leq, enumerate_partitions, padded
from macpair.symfunc import (
    SymPoly,
    e_product_E,
    elementary_e,
    expand_in_E,
    from_E,
    m_at_spectral,
    m_eval,
    m_product,
    multiply,
    render_sympoly,
    sympoly_from_json,
    sympoly_to_json,
)

from sym_oracle import (
    elementary,
    monomial_symmetric,
    qt_to_sympy,
    scalar_to_sympy,
    spectral,
    sympoly_expr,
    xs,
)

F = SymbolicField()


def coefficients_from_expr(expr, n):
    """Monomial-basis coefficients of a symmetric sympy polynomial."""
    poly = sp.Poly(sp.expand(expr), *xs(n))
    out = {}
    for exps, c in poly.terms():
        if all(exps[i] >= exps[i + 1] for i in range(n - 1)):
            lam = tuple(e for e in exps if e)
            out[lam] = c
    return out


@pytest.mark.parametrize("n", [1, 2, 3])
def test_m_product_matches_expansion(n):
    parts = enumerate_partitions(3, n)
    for lam in parts:
        for mu in parts:
            want = coefficients_from_expr(monomial_symmetric(lam, n) * monomial_symmetric(mu, n), n)
            assert dict(m_product(lam, mu, n)) == want


@pytest.mark.parametrize("n", [1, 2, 3])
def test_m_at_spectral_matches_substitution(n):
    x = xs(n)
    for mu in enumerate_partitions(3, n):
        expr = monomial_symmetric(mu, n)
        for lam in enumerate_partitions(3, n):
            val = expr.subs(dict(zip(x, spectral(lam, n))), simultaneous=True)
            assert sp.expand(qt_to_sympy(m_at_spectral(mu, lam, n)) - val) == 0


def test_m_eval_at_rational_point():
    G = NumericField(2, 3)
    pt = [Fraction(1, 2), Fraction(-3), Fraction(5, 7)]
    x = xs(3)
    for mu in enumerate_partitions(4, 3):
        want = monomial_symmetric(mu, 3).subs({xi: sp.Rational(v.numerator, v.denominator) for xi, v in zip(x, pt)})
        got = m_eval(mu, pt, G)
        assert sp.Rational(got.numerator, got.denominator) == want


@pytest.mark.parametrize("n", [2, 3, 4])
def test_E_products_are_unitriangular(n):
    for mu in enumerate_partitions(5, n):
        E = e_product_E(mu, n, F)
        assert E[mu] == F.one
        assert all(dominance_leq(nu, mu) for nu in E.coeffs)
        lam_conj = [sum(1 for x in mu if x > j) for j in range(mu[0])] if mu else []
        want = sp.Mul(*[elementary(k, n) for k in lam_conj])
        assert sp.expand(sympoly_expr(E) - want) == 0


def random_poly(n, draw_coeffs):
    parts = enumerate_partitions(3, n)
    return SymPoly(n, F, {lam: c for lam, c in zip(parts, draw_coeffs)})


coeff_lists = st.lists(st.integers(-4, 4), min_size=1, max_size=7)


@settings(max_examples=40)
@given(st.integers(1, 3), coeff_lists)
def test_E_expansion_roundtrip(n, cs):
    f = random_poly(n, cs)
    assert from_E(expand_in_E(f), n, F) == f
    assert from_E(expand_in_E(f, "conjugate"), n, F) == f


@settings(max_examples=40)
@given(st.integers(1, 3), coeff_lists, coeff_lists, coeff_lists)
def test_ring_laws(n, a, b, c):
    f, g, h = (random_poly(n, x) for x in (a, b, c))
    assert multiply(f, g) == multiply(g, f)
    assert multiply(multiply(f, g), h) == multiply(f, multiply(g, h))
    assert multiply(f, g + h) == multiply(f, g) + multiply(f, h)
    assert f - f == SymPoly(n, F)
    assert sp.expand(sympoly_expr(multiply(f, g)) - sympoly_expr(f) * sympoly_expr(g)) == 0


def test_evaluation_at_spectral_point():
    f = SymPoly(2, F, {(1,): F.q, (1, 1): 3, EMPTY: -1})
    want = (sympoly_expr(f)).subs(dict(zip(xs(2), spectral((2, 1), 2))), simultaneous=True)
    assert sp.expand(scalar_to_sympy(f((2, 1))) - want) == 0


def test_render_top_term_first():
    f = SymPoly(1, F, {(2,): 1, (1,): -(1 + F.q), EMPTY: F.q})
    assert render_sympoly(f) == "m[2] - (1 + q)·m[1] + q·m[]"
    assert render_sympoly(SymPoly(2, F)) == "0"
    assert render_sympoly(SymPoly.constant(F.one, 2, F)) == "m[]"
    g = SymPoly(2, F, {(1, 1): F.one / (1 - F.q), (2,): -2})
    assert render_sympoly(g) == "-2·m[2] - (1/(-1 + q))·m[1,1]"


def test_json_roundtrip():
    f = SymPoly(2, F, {(2,): 1, (1, 1): (1 + F.q) / (1 - F.t), EMPTY: F(Fraction(1, 3))})
    doc = sympoly_to_json(f)
    assert [t["partition"] for t in doc["terms"]] == [[], [1, 1], [2]]
    assert sympoly_from_json(doc, F) == f


def test_variable_limits():
    with pytest.raises(ValueError):
        SymPoly(2, F, {(1, 1, 1): 1})
    with pytest.raises(ValueError):
        elementary_e(3, 2, F)
    with pytest.raises(ValueError):
        e_product_E((1, 1, 1), 2, F)
    assert SymPoly(2, F, {(1, 1, 1): 0}) == SymPoly(2, F)
    assert padded((1,), 3) == (1, 0, 0)
