import json

import pytest

from macpair.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def usage(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    capsys.readouterr()
    return exc.value.code


def test_poly_commands(capsys):
    assert run(capsys, "P", "--n", "2", "--part", "2") == \
        (0, "m[2] + ((-1 + t - q + q*t)/(-1 + q*t))·m[1,1]\n", "")
    assert run(capsys, "I", "--n", "1", "--part", "2")[1] == "m[2] - (1 + q)·m[1] + q·m[]\n"
    assert run(capsys, "N", "--n", "2", "--part", "[]")[1] == "m[]\n"


def test_poly_numeric_and_json(capsys):
    code, out, _ = run(capsys, "P", "--n", "2", "--part", "2", "--q", "2", "--t", "3")
    assert code == 0 and out == "m[2] + (6/5)·m[1,1]\n"
    code, out, _ = run(capsys, "I", "--n", "2", "--part", "1", "--json")
    doc = json.loads(out)
    assert doc["kind"] == "I" and doc["partition"] == [1] and doc["field"] == {"mode": "symbolic"}
    assert doc["terms"] == [{"partition": [], "coeff": {"num": "-1 - t", "den": "1"}},
                            {"partition": [1], "coeff": {"num": "1", "den": "1"}}]


def test_pair(capsys):
    assert run(capsys, "pair", "--n", "1", "m:2", "m:3")[1] == "q^6\n"
    assert run(capsys, "pair", "--n", "2", "I:1", "I:1")[1] == "-t - t^2 + q*t + q*t^2\n"
    # m_1 = I_1 + (1 + t) and I_1 vanishes at the empty point, so the values coincide
    assert run(capsys, "pair", "--n", "2", "m:1", "I:1")[1] == "-t - t^2 + q*t + q*t^2\n"
    code, out, _ = run(capsys, "pair", "--n", "2", "P:2", "N:1,1", "--json")
    doc = json.loads(out)
    assert code == 0 and set(doc) == {"g", "f", "n", "field", "value", "text"}


def test_exit_codes(capsys):
    assert usage(capsys, "P", "--n", "2", "--part", "1,2") == 2
    assert usage(capsys, "P", "--n", "1", "--part", "1,1") == 2
    assert usage(capsys, "P", "--n", "2", "--part", "1", "--q", "2") == 2
    assert usage(capsys, "P", "--n", "2", "--part", "1", "--q", "2", "--t", "3", "--seed", "1") == 2
    assert usage(capsys, "P", "--n", "2", "--part", "1", "--mode", "numeric") == 2
    assert usage(capsys, "P", "--n", "2", "--part", "1", "--mode", "symbolic", "--seed", "4") == 2
    assert usage(capsys, "pair", "--n", "2", "X:1", "m:1") == 2
    assert usage(capsys, "verify", "--suite", "nope", "--n", "2", "--max-size", "2") == 2
    assert usage(capsys, "verify", "--suite", "t1", "--n", "0", "--max-size", "2") == 2
    assert usage(capsys, "cache", "build") == 2
    code, _, err = run(capsys, "I", "--n", "2", "--part", "2", "--q", "1", "--t", "3")
    assert code == 3 and "degenerate" in err


def test_verify_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--suite", "t1,t2,t3", "--n", "2", "--max-size", "4",
                       "--mode", "symbolic", "--cache-dir", str(tmp_path))
    assert code == 0
    assert out.splitlines()[0] == "t1: 81 passed, 0 failed, 0 resampled"
    assert run(capsys, "verify", "--suite", "oneD", "--n", "1", "--max-size", "5", "--no-cache")[0] == 0
    assert run(capsys, "verify", "--suite", "crucial", "--n", "3", "--max-size", "4", "--no-cache")[0] == 0


def test_verify_json_and_numeric(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "t2,symmetry", "--n", "2", "--max-size", "3",
                       "--seed", "5", "--pairs", "4", "--json", "--no-cache")
    reports = json.loads(out)
    assert code == 0 and [r["suite"] for r in reports] == ["t2", "symmetry"]
    assert reports[0]["config"]["mode"] == "numeric"


def test_verify_reports_failure(capsys, monkeypatch):
    from macpair import verify
    from macpair.verify import Case

    def broken(cache, cfg, rng):
        yield Case("forced", "fail", {"lhs": "1", "rhs": "0"})

    monkeypatch.setitem(verify.SUITE_FUNCS, "t1", broken)
    code, out, _ = run(capsys, "verify", "--suite", "t1", "--n", "2", "--max-size", "1", "--no-cache")
    assert code == 1 and "FAIL forced: lhs=1; rhs=0" in out


def test_cache_lifecycle(capsys, tmp_path, monkeypatch):
    root = tmp_path / "c"
    monkeypatch.setenv("MACD_CACHE", str(root))
    code, out, _ = run(capsys, "cache", "stat")
    assert out == "total: P: 0, I: 0, chain: 0, norm: 0\n"
    run(capsys, "cache", "build", "--n", "2", "--max-size", "3")
    files = {p: p.read_bytes() for p in root.rglob("*.json")}
    code, out, _ = run(capsys, "cache", "build", "--n", "2", "--max-size", "3")
    assert code == 0 and "P: 6 (6 hit, 0 computed), 6 stored" in out
    assert {p: p.read_bytes() for p in root.rglob("*.json")} == files
    out = run(capsys, "cache", "stat")[1]
    assert "n2-symbolic-lex: P: 6, I: 6, chain: 6, norm: 6" in out
    # an explicit flag wins over the environment
    other = tmp_path / "other"
    run(capsys, "cache", "build", "--n", "1", "--max-size", "2", "--cache-dir", str(other))
    assert (other / "n1-symbolic-lex" / "meta.json").is_file()
    run(capsys, "cache", "clear")
    assert not any(root.iterdir())
    assert (other / "n1-symbolic-lex").is_dir()


def test_default_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("MACD_CACHE", raising=False)
    monkeypatch.chdir(tmp_path)
    run(capsys, "cache", "build", "--n", "1", "--max-size", "1")
    assert (tmp_path / ".macd-cache" / "n1-symbolic-lex" / "I[1].json").is_file()


def test_verify_retry_exhaustion_exits_3(capsys, monkeypatch):
    from macpair import verify
    from macpair.exactfield import DegenerateSpecialization

    def always(cache, cfg, rng):
        raise DegenerateSpecialization("forced")
        yield

    monkeypatch.setitem(verify.SUITE_FUNCS, "t2", always)
    code, _, err = run(capsys, "verify", "--suite", "t2", "--n", "2", "--max-size", "2", "--seed", "3", "--no-cache")
    assert code == 3 and "resamples" in err
