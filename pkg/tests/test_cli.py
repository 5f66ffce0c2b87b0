import json

import pytest

from zsl.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def h2(tmp_path):
    plus = [(0, 1), (1, 0), (1, 1)]
    elems = sorted(plus + [tuple(-x for x in v) for v in plus])
    return write(tmp_path, "h2.json", {"rank": 2, "elements": [list(v) for v in elems]})


def test_davenport_hypercube2(capsys, h2):
    code, out, _ = run(capsys, "davenport", "-i", h2)
    assert code == 0
    report = json.loads(out)
    assert report["davenport"] == 3 and report["complete"] is True


def test_atoms_roundtrip(capsys, h2, tmp_path):
    out_path = tmp_path / "atoms.json"
    code, _, _ = run(capsys, "atoms", "-i", h2, "-o", str(out_path), "--threads", "2")
    assert code == 0
    report = json.loads(out_path.read_text())
    assert report["complete"] and len(report["atoms"]) == 5


def test_atoms_bad_json_exit2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "atoms", "-i", str(bad))
    assert code == 2
    assert "JSON" in err


def test_missing_field_named(capsys, tmp_path):
    path = write(tmp_path, "g.json", {"rank": 2})
    code, _, err = run(capsys, "atoms", "-i", path)
    assert code == 2
    assert "elements" in err


def test_delm_methods(capsys, h2):
    for method in ("enumerate", "formula", "both"):
        code, out, _ = run(capsys, "delm", "-i", h2, "--method", method)
        assert code == 0
        assert json.loads(out)["elementary_davenport"] == 3


def test_bounds(capsys, h2):
    code, out, _ = run(capsys, "bounds", "-i", h2)
    assert code == 0
    report = json.loads(out)
    for key in ("snf_G0", "snf_G1", "hadamard", "dgs", "elm_product"):
        assert report[key] >= 3


def test_lengths_and_catenary(capsys, h2, tmp_path):
    # (u)(-u) for the triple atom u: lengths {2, 3}, catenary 3
    elem = write(tmp_path, "e.json", {"mult": [1, 1, 1, 1, 1, 1]})
    code, out, _ = run(capsys, "lengths", "-i", h2, "--element", elem)
    assert code == 0
    report = json.loads(out)
    assert report["lengths"] == [2, 3]
    assert len(report["factorizations"]) == 2
    code, out, _ = run(capsys, "catenary", "-i", h2, "--element", elem)
    assert code == 0
    assert json.loads(out)["catenary"] == 3


def test_unions(capsys, h2):
    code, out, _ = run(capsys, "unions", "-i", h2, "--k", "4")
    assert code == 0
    report = json.loads(out)
    assert report["rho"] == 6 and report["lambda"] == 3


def test_omega_and_tame(capsys, h2):
    code, out, _ = run(capsys, "omega", "-i", h2, "--atom", "0", "--mode", "both")
    assert code == 0
    assert json.loads(out)["omega"] in (2, 3)
    code, out, _ = run(capsys, "tame", "-i", h2, "--atom", "0")
    assert code == 0
    report = json.loads(out)
    assert report["tame"] == max(report["omega"], report["tau"] + 1)


def test_omega_bad_atom_index(capsys, h2):
    code, _, err = run(capsys, "omega", "-i", h2, "--atom", "99")
    assert code == 2
    assert "atom" in err


def test_decompose_rational(capsys, h2, tmp_path):
    # 3/2 times the triple atom (1,0)(0,1)(-1,-1); ground order is lexicographic
    seq = write(tmp_path, "s.json", {"mult": ["3/2", 0, 0, "3/2", "3/2", 0]})
    code, out, _ = run(capsys, "decompose", "-i", h2, "--seq", seq)
    assert code == 0
    report = json.loads(out)
    assert report["reconstructs"] is True
    assert report["parts_count"] == 1
    assert report["parts"][0]["exponent"] == "3/2"


def test_decompose_rejects_non_zero_sum(capsys, h2, tmp_path):
    seq = write(tmp_path, "s.json", {"mult": [1, 0, 0, 0, 0, 0]})
    code, _, err = run(capsys, "decompose", "-i", h2, "--seq", seq)
    assert code == 2
    assert "zero-sum" in err


def test_fib(capsys):
    code, out, _ = run(capsys, "fib", "--rank", "3")
    assert code == 0
    report = json.loads(out)
    assert report["atom_length"] == 5 and report["verified"] is True


def test_hypercube_signed(capsys):
    code, out, _ = run(capsys, "hypercube", "--rank", "3", "--signed")
    assert code == 0
    assert len(json.loads(out)["elements"]) == 14


def test_fp(capsys):
    code, out, _ = run(capsys, "fp", "--group", "2,2", "--budget", "5")
    assert code == 0
    report = json.loads(out)
    assert report["half_factorial"] and report["tame"] == 2


def test_monext(capsys, h2):
    code, out, _ = run(capsys, "monext", "--h0", h2, "--d", "group:2",
                       "--check", "all", "--samples", "60")
    assert code == 0
    report = json.loads(out)
    assert report["theta"]["passed"]
    assert len(report["atom_invariants"]) == 10
    assert report["catenary_elements_checked"] > 0


def test_monext_bad_d(capsys, h2):
    code, _, err = run(capsys, "monext", "--h0", h2, "--d", "weird:3")
    assert code == 2
    assert "--d" in err


def test_acm(capsys, tmp_path):
    spec = write(tmp_path, "acm.json",
                 {"omega": 5, "c": ["1", "1", "1", "3/2", "3/2"],
                  "lambda": [[1, 2], [3, 4]]})
    code, out, _ = run(capsys, "acm", "--spec", spec)
    assert code == 0
    report = json.loads(out)
    assert report["atom_count"] == 12 and report["tame"] == 5


def test_acm_bad_tower_sum(capsys, tmp_path):
    spec = write(tmp_path, "acm.json",
                 {"omega": 3, "c": ["1", "1/2", "1"], "lambda": [[1, 2]]})
    code, _, err = run(capsys, "acm", "--spec", spec)
    assert code == 2
    assert "non-integral" in err


def test_hnp(capsys, tmp_path):
    towers = write(tmp_path, "towers.json",
                   {"udim": 1, "cycle_towers": [{"ranks": [1, 1]},
                                                {"ranks": [2, 1]}],
                    "faithful_towers": [], "class_group": []})
    code, out, _ = run(capsys, "hnp", "--towers", towers)
    assert code == 0
    report = json.loads(out)
    assert report["tame"] == 5 and report["half_factorial"]


def test_certify_single_criterion(capsys):
    code = main(["certify", "--suite", "01,03"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS 01-rank2-hypercube" in out
    assert "PASS 03-fibonacci-witnesses" in out


def test_certify_unknown_suite(capsys):
    code = main(["certify", "--suite", "99"])
    err = capsys.readouterr().err
    assert code == 2
    assert "criteria" in err


def test_csv_and_table_formats(capsys, h2):
    code, out, _ = run(capsys, "davenport", "-i", h2, "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "key,value"
    code, out, _ = run(capsys, "davenport", "-i", h2, "--format", "table")
    assert code == 0
    assert any(line.startswith("davenport") for line in out.splitlines())


def test_threads_validation(capsys, h2):
    code, _, err = run(capsys, "davenport", "-i", h2, "--threads", "0")
    assert code == 2
    assert "threads" in err


def test_determinism_across_thread_counts(capsys, h2):
    _, out1, _ = run(capsys, "atoms", "-i", h2, "--threads", "1")
    _, out4, _ = run(capsys, "atoms", "-i", h2, "--threads", "4")
    assert out1 == out4


def test_canonicalize_orders_elements(capsys, tmp_path):
    path = write(tmp_path, "g.json", {"rank": 1, "elements": [[3], [-3]]})
    code, out, _ = run(capsys, "atoms", "-i", path, "--canonicalize")
    assert code == 0
    assert json.loads(out)["atoms"] == [[1, 1]]
