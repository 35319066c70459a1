import json
import random
from fractions import Fraction

import pytest

from macpair import verify
from macpair.exactfield import DegenerateSpecialization, NumericField, make_field, specialize
from macpair.macdonald import BasisCache, pairing_via_operators
from macpair.symfunc import SymPoly
from macpair.verify import (
    SUITES,
    Case,
    RetryBudgetExhausted,
    SuiteConfig,
    _degenerate_pair,
    run_suite,
    sample_parameters,
)


@pytest.mark.parametrize("suite", SUITES)
@pytest.mark.parametrize("n", [1, 2])
def test_every_suite_passes_small(suite, n):
    r = run_suite(SuiteConfig(suite, n, 3))
    assert r.failed == 0 and r.passed > 0


def test_t1_one_variable_gram_diagonal():
    r = run_suite(SuiteConfig("t1", 1, 3))
    assert r.ok and r.passed == 16
    assert "<I[2],I[2]> != 0" in [c.label for c in r.cases]


def test_t3_trivial_case():
    r = run_suite(SuiteConfig("t3", 2, 0))
    assert [c.label for c in r.cases] == ["N[] = sum_mu I_mu(lam^) I_mu / <I_mu,I_mu>"]
    assert r.ok


def test_oneD_pairing_rows():
    r = run_suite(SuiteConfig("oneD", 1, 3))
    labels = [c.label for c in r.cases]
    assert "<x^2,x^3> operators" in labels and r.ok


def test_report_json_schema_and_determinism():
    cfg = SuiteConfig("symmetry", 2, 2, pairs=5, seed=11)
    a = json.dumps(run_suite(cfg).to_json())
    b = json.dumps(run_suite(cfg).to_json())
    assert a == b
    doc = json.loads(a)
    assert list(doc) == ["suite", "config", "cases", "passed", "failed", "resampled"]
    assert all(set(c) <= {"label", "status", "witness"} for c in doc["cases"])
    assert doc["passed"] + doc["failed"] + doc["resampled"] == len(doc["cases"])


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig("bogus", 2, 2)
    with pytest.raises(ValueError):
        SuiteConfig("t1", 2, -1)
    with pytest.raises(ValueError):
        SuiteConfig("t1", 0, 2)
    with pytest.raises(ValueError):
        SuiteConfig("t1", 2, 2, mode="numeric", q0=Fraction(2))


def test_sampling_rules():
    rng = random.Random(3)
    for _ in range(50):
        q0, t0 = sample_parameters(rng, 4)
        for v in (q0, t0):
            assert 2 <= v.numerator <= 100 or v.denominator > 1
            assert v not in (0, 1, -1)
        assert q0 != t0
        assert not _degenerate_pair(q0, t0, 10)
    assert _degenerate_pair(Fraction(2), Fraction(1, 2), 1)
    assert _degenerate_pair(Fraction(4), Fraction(1, 2), 2)
    assert not _degenerate_pair(Fraction(4), Fraction(1, 2), 1)


def test_numeric_suites_with_seed():
    r = run_suite(SuiteConfig("t2", 3, 3, mode="numeric", seed=4))
    assert r.ok and "q0" in r.config and "t0" in r.config


def test_symbolic_pass_specializes_to_numeric_pass():
    sym = BasisCache(2, make_field("symbolic"))
    G = NumericField(Fraction(13, 4), Fraction(2, 9))
    num = BasisCache(2, G)
    for mu in sym.partitions(3):
        for nu in sym.partitions(3):
            a = pairing_via_operators(sym.I(mu), sym.I(nu), sym)
            assert specialize(a, G.q0, G.t0) == pairing_via_operators(num.I(mu), num.I(nu), num)


def test_resampling_on_degeneracy(monkeypatch):
    calls = []

    def flaky(cache, cfg, rng):
        calls.append(cache.field)
        if len(calls) < 3:
            raise DegenerateSpecialization("forced")
        yield Case("ok", "pass")

    monkeypatch.setitem(verify.SUITE_FUNCS, "t1", flaky)
    r = run_suite(SuiteConfig("t1", 2, 2, mode="numeric", seed=1))
    assert r.resampled == 2 and r.passed == 1
    assert len({(f.q0, f.t0) for f in calls}) == 3
    assert r.config["q0"] == str(calls[-1].q0)


def test_retry_budget(monkeypatch):
    def always(cache, cfg, rng):
        raise DegenerateSpecialization("forced")
        yield

    monkeypatch.setitem(verify.SUITE_FUNCS, "t1", always)
    with pytest.raises(RetryBudgetExhausted):
        run_suite(SuiteConfig("t1", 2, 2, mode="numeric", seed=1))
    with pytest.raises(DegenerateSpecialization):
        run_suite(SuiteConfig("t1", 2, 2))


def test_failure_witness_reproduces():
    # swap in a wrong I and check the witness shows the offending values
    cache = BasisCache(2, make_field("symbolic"))
    wrong = cache.I((1,)) + SymPoly.constant(cache.field.one, 2, cache.field)
    cache.I_cache[(1,)] = wrong
    r = run_suite(SuiteConfig("t1", 2, 1), cache)
    bad = [c for c in r.cases if c.status == "fail"]
    assert bad and not r.ok
    w = bad[0].witness
    assert w["rhs"] == "0"
    assert w["lhs"] == cache.field.render(pairing_via_operators(cache.I(()), wrong, cache))
