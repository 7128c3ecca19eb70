import json
import subprocess
import sys

import pytest

from cubegirth.cli import main, run
from cubegirth.core import grid, hypercube
from cubegirth.formats import save_autperm, save_cubegraph, save_permgrp
from cubegirth.girth import cyclic, symmetric


@pytest.fixture
def files(tmp_path):
    out = {}

    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        out[name] = str(p)

    put("c3.cg", "cubegraph 1\nv 0\nv 1\nv 2\ne 0 1\ne 1 2\ne 2 0\n")
    put("grid.cg", save_cubegraph(grid(2, 3)))
    put("sq.cg", save_cubegraph(hypercube(2)))
    put("sq.ap", save_autperm({"f": {v: (1 - v[0], v[1]) for v in hypercube(2).vertices}}))
    put("z5.pg", save_permgrp(cyclic(5)))
    put("s3.pg", save_permgrp(symmetric(3)))
    put("bad.cg", "cubegraph 1\nv a\ne a b\n")
    put("p.ps", "pocset 1\np x\np y\nc x 0 y 0\n")
    return out


def test_validate_c3_fails_with_triple(files):
    code, rep = run(["validate", files["c3.cg"]])
    assert code == 1 and sorted(rep["counterexample"]) == [0, 1, 2]
    assert rep["report_version"] == 1


def test_validate_grid_passes(files):
    assert run(["validate", files["grid.cg"]])[0] == 0


def test_format_error_exit_three(files):
    code, rep = run(["validate", files["bad.cg"]])
    assert code == 3 and (rep["line"], rep["column"]) == (3, 5)
    assert run(["validate", "/nonexistent/file"])[0] == 3


def test_girth_z5(files):
    code, rep = run(["girth", files["z5.pg"]])
    assert code == 0 and rep["girth"] == 5 and rep["witness"] == [rep["generators"][0]] * 5


def test_girth_non_generating(files):
    code, rep = run(["girth", files["s3.pg"], "--gens", "a"])
    assert code in (1, 3)


def test_free_group_girth_is_inconclusive():
    code, rep = run(["girth", "--tree", "0,0", "--radius", "8"])
    assert code == 2 and rep["lower_bound"] == 17 and rep["radius"] == 8


def test_law_check(files):
    assert run(["law-check", files["s3.pg"], "--word", "[a,b]"])[0] == 1
    assert run(["law-check", files["s3.pg"], "--word", "a^6"])[0] == 0
    assert run(["law-check", files["s3.pg"], "--word", "[a,"])[0] == 3


def test_girth_sup(files):
    code, rep = run(["girth-sup", files["z5.pg"], "--max-gens", "1"])
    assert code == 0 and rep["value"] == 5


def test_hyperplanes_relations_dual(files):
    code, rep = run(["hyperplanes", files["grid.cg"]])
    assert code == 0 and rep["count"] == 3
    code, rep = run(["relations", files["grid.cg"]])
    assert code == 0 and len(rep["relation"]) == 3
    code, rep = run(["dual", files["grid.cg"]])
    assert code == 0 and rep["isomorphic"] and rep["theta_isomorphism"]
    code, rep = run(["dual", files["p.ps"]])
    assert code == 0 and rep["dual_vertices"] == 3


def test_flip_and_skewer_search():
    code, rep = run(["flip-search", "--tree", "2,2,2", "--halfspace", "c:", "--max-word-len", "4"])
    assert code == 0 and rep["word"]
    code, rep = run(["skewer-search", "--tree", "0,0", "--h1", "a:aa", "--h2", "A:", "--strong", "--radius", "10"])
    assert code == 0 and rep["word"] == "aaa" and rep["strong"]
    code, rep = run(["flip-search", "--tree", "0,0", "--halfspace", "nonsense"])
    assert code == 3


def test_flip_search_on_finite_complex(files):
    code, rep = run(["flip-search", "--complex", files["sq.cg"], "--action", files["sq.ap"], "--halfspace", "h0/0"])
    assert code == 2 and rep["word"] is None


def test_amplify_cli():
    code, rep = run(["amplify", "--tree", "2,2,2", "--triple", "a:ab", "b:ba", ":c", "--n", "3",
                     "--max-word-len", "64", "--radius", "64"])
    assert code == 0 and len(rep["family"]["pairs"]) == 3 and rep["verify"]["ok"]


def test_girth_cert_build_and_check(tmp_path):
    code, rep = run(["girth-cert", "build", "--tree", "0,0", "--radius", "18"])
    assert code == 0 and rep["cert"]["N"] == 2
    p = tmp_path / "c.json"
    p.write_text(json.dumps(rep["cert"]))
    code, rep2 = run(["girth-cert", "check", "--cert", str(p), "--radius", "18"])
    assert code == 0
    code, _ = run(["girth-cert", "check", "--cert", str(p), "--radius", "12"])
    assert code == 2


def test_verify_report_roundtrip(tmp_path, files):
    code, rep = run(["girth", files["z5.pg"]])
    p = tmp_path / "r.json"
    p.write_text(json.dumps(rep))
    assert run(["--verify-report", str(p)])[0] == 0
    rep["girth"] = 4
    p.write_text(json.dumps(rep))
    code, out = run(["--verify-report", str(p)])
    assert code == 1 and "girth" in out["differing_keys"]


def test_reports_are_byte_identical(files, capsys):
    main(["girth", files["s3.pg"]])
    first = capsys.readouterr().out
    main(["girth", files["s3.pg"]])
    assert capsys.readouterr().out == first


def test_unknown_subcommand_exit_three():
    assert run(["frobnicate"])[0] == 3


def test_module_entry_point(files):
    p = subprocess.run([sys.executable, "-m", "cubegirth", "validate", files["c3.cg"]], capture_output=True, text=True)
    assert p.returncode == 1 and json.loads(p.stdout)["status"] == "fail"
