"""Command-line interface: reports, exit codes, determinism, error paths."""

import json

import pytest

from mfcat.cli import main
from mfcat.serialize import mf_to_json, module_to_json


@pytest.fixture()
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        out = json.loads(captured.out) if captured.out.strip() else None
        err = json.loads(captured.err) if captured.err.strip() else None
        return code, out, err
    return _run


@pytest.fixture()
def mf_file(tmp_path, E_u):
    path = tmp_path / "eu.json"
    path.write_text(json.dumps(mf_to_json(E_u)))
    return str(path)


@pytest.fixture()
def mf_file_v(tmp_path, E_v):
    path = tmp_path / "ev.json"
    path.write_text(json.dumps(mf_to_json(E_v)))
    return str(path)


class TestVerify:
    def test_ok(self, run, mf_file):
        code, out, _ = run("verify", "--source", mf_file)
        assert code == 0
        assert out["result"]["ok"] is True
        assert out["engine"]["name"] == "mfcat"
        assert "input_hash" in out and "timing_ms" in out

    def test_missing_file(self, run, tmp_path):
        code, out, err = run("verify", "--source", str(tmp_path / "no.json"))
        assert code == 1
        assert out is None and "error" in err

    def test_schema_error_cites_path(self, run, tmp_path, E_u):
        obj = mf_to_json(E_u)
        obj["e1"][0][0] = "x9"
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(obj))
        code, _out, err = run("verify", "--source", str(bad))
        assert code == 1
        assert "mf.e1[0][0]" in err["error"]

    def test_json_error_cites_position(self, run, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _out, err = run("verify", "--source", str(bad))
        assert code == 1
        assert "line" in err["error"]


class TestHom:
    def test_self_hom(self, run, mf_file):
        code, out, _ = run("hom", "--source", mf_file, "--target", mf_file)
        assert code == 0
        assert out["result"]["dim"] == 1

    def test_u_to_v(self, run, mf_file, mf_file_v):
        code, out, _ = run("hom", "--source", mf_file,
                           "--target", mf_file_v)
        assert code == 0
        assert out["result"]["dim"] == 0

    def test_naive_model(self, run, mf_file):
        code, out, _ = run("hom", "--model", "naive", "--source", mf_file,
                           "--target", mf_file)
        assert code == 0
        assert out["result"]["model"] == "naive"


class TestCech:
    def test_closed_form(self, run):
        code, out, _ = run("cech", "--space", "P2", "--twist", "-3",
                           "--p", "2")
        assert code == 0
        assert out["result"] == {"dim": 1, "stable": True,
                                 "twist": -3, "p": 2}

    def test_h0(self, run):
        code, out, _ = run("cech", "--space", "P1", "--twist", "3",
                           "--p", "0")
        assert code == 0
        assert out["result"]["dim"] == 4

    def test_determinism(self, run):
        _c1, o1, _ = run("cech", "--space", "P1", "--twist", "-2", "--p", "1")
        _c2, o2, _ = run("cech", "--space", "P1", "--twist", "-2", "--p", "1")
        o1.pop("timing_ms")
        o2.pop("timing_ms")
        assert o1 == o2


class TestContractible:
    def test_false_exit_zero(self, run, mf_file):
        code, out, _ = run("contractible", "--source", mf_file)
        assert code == 0
        assert out["result"]["contractible"] is False

    def test_prop28(self, run, mf_file):
        code, out, _ = run("prop28", "--source", mf_file)
        assert code == 0
        assert out["result"]["condition1_contractible"] is False


class TestModuleCommands:
    def test_coker(self, run, mf_file):
        code, out, _ = run("coker", "--source", mf_file)
        assert code == 0
        assert out["result"]["module"]["twists"] == [-1]

    def test_stable_hom(self, run, tmp_path, mf_file, E_u):
        from mfcat.hypersurface import coker_module
        mod = tmp_path / "mod.json"
        mod.write_text(json.dumps(module_to_json(coker_module(E_u))))
        code, out, _ = run("stable-hom", "--source", mf_file,
                           "--module", str(mod))
        assert code == 0
        assert out["result"]["dim"] == 1 and out["result"]["stable"] is True

    def test_rel_perfect_periodic_exit(self, run, tmp_path):
        ctx = {"ring": {"field": {"type": "prime", "p": 32003},
                        "variables": ["x", "y", "z"], "ideal": ["x*y"]},
               "W": "z", "mode": "projective"}
        mod = {"ring": ctx["ring"], "twists": [0],
               "relations": [["x", "y"]]}
        cpath = tmp_path / "ctx.json"
        mpath = tmp_path / "mod.json"
        cpath.write_text(json.dumps(ctx))
        mpath.write_text(json.dumps(mod))
        code, out, _ = run("rel-perfect", "--context", str(cpath),
                           "--module", str(mpath))
        assert code == 0
        assert out["result"]["perfect"] is False
        assert out["result"]["status"] == "periodic"


class TestSuite:
    def test_generate(self, run):
        code, out, _ = run("suite", "--seed", "0", "--profile", "a1-affine")
        assert code == 0
        assert len(out["result"]["objects"]) == 6

    def test_seed_determinism(self, run):
        _c, o1, _ = run("suite", "--seed", "2", "--profile", "p1-small")
        _c, o2, _ = run("suite", "--seed", "2", "--profile", "p1-small")
        assert o1["result"] == o2["result"]


class TestFormats:
    def test_text_format(self, run, mf_file, capsys):
        code = main(["--format", "text", "verify", "--source", mf_file])
        out = capsys.readouterr().out
        assert code == 0
        assert "ok" in out

    def test_unknown_command(self):
        with pytest.raises(SystemExit):
            main(["frobnicate"])
