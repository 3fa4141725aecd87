from __future__ import annotations

import json

import pytest

from hecke_forge.cli import VOLATILE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hecke_mul(capsys):
    code, out, _ = run(capsys, "hecke", "mul", "--datum", "A2_sl", "T[s1]*T[s1]")
    assert code == 0
    cert = json.loads(out)
    assert cert["result"]["terms"] == {"e": "-a*b", "s1": "a + b"}
    assert cert["schema"].endswith("/1")


def test_unknown_datum_exits_2(capsys):
    code, out, err = run(capsys, "hecke", "mul", "--datum", "E9", "T[e]")
    assert code == 2
    assert "unknown datum" in err and out == ""


def test_bad_subcommand_exits_2(capsys):
    code, _out, _err = run(capsys, "frobnicate")
    assert code == 2


def test_bad_expression_exits_2(capsys):
    code, _out, err = run(capsys, "hecke", "mul", "T[s9]")
    assert code == 2 and "s9" in err


@pytest.mark.parametrize("facet", ["1", "s7"])
def test_bad_facet_exits_2(capsys, facet):
    code, _out, err = run(capsys, "parahoric", "gram", "--datum", "A1_sl", "--facet", facet)
    assert code == 2 and ("facet" in err or facet in err)


def test_radius_below_precondition_exits_2(capsys):
    code, _out, err = run(capsys, "complex", "verify", "--suite", "tech", "--radius", "1")
    assert code == 2 and "radius" in err


def test_parahoric_gram_g2(capsys):
    code, out, _ = run(capsys, "parahoric", "gram", "--datum", "G2", "--facet", "s0,s1")
    cert = json.loads(out)
    assert code == 0 and cert["ok"]
    (gram,) = cert["result"]
    assert gram["det"] == "1" and gram["unit"]


def test_weyl_commands(capsys):
    code, out, _ = run(capsys, "weyl", "len", "--datum", "A2_sl", "s1*s2*s1")
    assert code == 0 and json.loads(out)["result"]["length"] == 3
    code, out, _ = run(capsys, "weyl", "omega", "--datum", "A1_pgl", "o1")
    assert json.loads(out)["result"]["epsilon_C"] == -1


def strip(cert):
    return {k: v for k, v in cert.items() if k not in VOLATILE}


def test_verify_all_is_reproducible(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        code = main(["verify-all", "--datum", "A1_pgl", "--radius", "5", "--L", "3", "--seed", "7",
                     "--emit", str(p), "--quiet"])
        assert code == 0
    one, two = (json.loads(p.read_text()) for p in paths)
    assert one["ok"] and all(one["checks"].values())
    assert json.dumps(strip(one), sort_keys=True) == json.dumps(strip(two), sort_keys=True)


def test_threads_give_the_same_certificate(tmp_path, monkeypatch):
    base = ["verify-all", "--datum", "A1_sl", "--radius", "4", "--L", "2", "--quiet"]
    main(base + ["--emit", str(tmp_path / "one.json")])
    monkeypatch.setenv("HECKE_FORGE_THREADS", "2")
    main(base + ["--emit", str(tmp_path / "two.json")])
    one, two = (json.loads((tmp_path / f).read_text()) for f in ("one.json", "two.json"))
    assert strip(one) == strip(two)


def test_datum_file(tmp_path, capsys):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"name": "mine", "pairing": [[1]], "roots": [[2], [-2]],
                                "coroots": [[1], [-1]], "simple": [0]}))
    code, out, _ = run(capsys, "rootdata", "validate", "--datum-file", str(path))
    assert code == 0 and json.loads(out)["checks"] == {"valid": True}
    path.write_text(json.dumps({"name": "bad", "pairing": [[1]], "roots": [[2], [-2]],
                                "coroots": [[2], [-2]], "simple": [0]}))
    code, _out, err = run(capsys, "rootdata", "validate", "--datum-file", str(path))
    assert code == 2 and "invalid root datum" in err


def test_complex_build_and_verify(tmp_path, capsys):
    target = tmp_path / "m.json"
    code, _out, _ = run(capsys, "complex", "build", "--datum", "A2_sl", "--radius", "1", "--emit", str(target),
                        "--quiet")
    assert code == 0
    data = json.loads(target.read_text())["result"]
    assert set(data) == {"d1", "d2", "augmentation"}
    code, out, _ = run(capsys, "complex", "verify", "--datum", "A1_pgl", "--suite", "exactness",
                       "--a", "1/2", "--b", "3", "--radius", "5")
    assert code == 0 and json.loads(out)["checks"] == {"exact[a=1/2,b=3]": True}


def test_dualres_and_center(tmp_path, capsys):
    code, out, _ = run(capsys, "dualres", "verify", "--datum", "A1_sl", "--L", "2")
    assert code == 0 and json.loads(out)["ok"]
    table = tmp_path / "t.json"
    code, _out, _ = run(capsys, "center", "experiment", "--datum", "A1_pgl", "--spec", "h0", "--maxdeg", "3",
                        "--emit", str(table), "--quiet")
    rows = json.loads(table.read_text())["result"]["table"]
    assert code == 0 and [r["degree"] for r in rows] == [0, 1, 2, 3]
    code, out, _ = run(capsys, "center", "gate", "--datum", "A2_sl")
    assert json.loads(out)["result"]["xmodq_torsion"] == [3]
