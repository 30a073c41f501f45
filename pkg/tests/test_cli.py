import io
import json
import subprocess
import sys

import pytest

from dualcentrality import builtin_instance
from dualcentrality.cli import main
from dualcentrality.hypergraph import read_hypergraph, read_perturbation


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "edge3": "1 2 3\n",
        "k3": "1 2\n1 3\n2 3\n",
        "split": "1 2 3\n4 5 6\n",
        "bad": "1 2\n2 2\n",
        "star": "1 2\n1 3\n1 4\n1 5\n",
        "empty": "# no perturbation\n",
    }.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def test_spectral_values(files):
    code, out, _ = run("spectral", "--input", files["edge3"])
    assert code == 0 and "lambda_s = 1.0000" in out
    code, out, _ = run("spectral", "--input", files["k3"])
    assert code == 0 and "lambda_s = 2.0000" in out


def test_spectral_json_and_csv(files):
    code, out, _ = run("spectral", "--input", files["k3"], "--format", "json")
    obj = json.loads(out)
    assert list(obj) == ["n", "m", "lambda_s", "x_s", "iterations", "gap", "residual"]
    assert obj["lambda_s"] == pytest.approx(2.0)
    code, out, _ = run("spectral", "--input", files["k3"], "--format", "csv", "--precision", "6")
    assert out.splitlines() == ["vertex,x_s", "1,0.577350", "2,0.577350", "3,0.577350"]


@pytest.mark.parametrize(
    "argv, code",
    [
        (("spectral", "--input", "{split}"), 3),
        (("spectral", "--input", "{bad}"), 2),
        (("spectral", "--input", "/nonexistent/file"), 2),
        (("spectral",), 2),
        (("spectral", "--input", "{star}", "--max-iter", "3"), 4),
        (("centrality", "--input", "{k3}", "--perturb-edge", "1,2,3"), 5),
        (("centrality", "--input", "{k3}", "--perturb-edge", "1,7"), 5),
        (("centrality", "--instance", "fig9"), 2),
        (("centrality", "--instance", "fig1-candidate", "--case", "2"), 2),
        (("examples", "nope"), 2),
    ],
)
def test_exit_codes(files, tmp_path, argv, code):
    argv = [a.format(**files) for a in argv]
    if argv[0] == "examples":
        argv += ["--out-dir", str(tmp_path)]
    got, out, err = run(*argv)
    assert got == code
    assert err.startswith("error:")


def test_argparse_rejects_bad_precision():
    with pytest.raises(SystemExit) as info:
        main(["centrality", "--instance", "fig1-candidate", "--precision", "16"])
    assert info.value.code == 2


def test_centrality_text_fig1():
    code, out, _ = run("centrality", "--instance", "fig1-candidate")
    assert code == 0
    assert "ranking: 1 = 2 = 8 > 3 = 5 = 7 > 4 = 6" in out
    assert "0.2983" in out and "-0.2320" in out
    assert "reference fig1-candidate:1: match" in out


def test_centrality_fig2_case1_ranking():
    code, out, _ = run("rank", "--instance", "fig2-candidate")
    assert out.strip() == "1 = 2 = 3 > 4 = 5 = 6 = 7 = 8 = 9"


def test_centrality_json_schema():
    code, out, _ = run("centrality", "--instance", "fig2-candidate", "--case", "2", "--format", "json")
    obj = json.loads(out)
    assert list(obj) == [
        "n", "m", "lambda_s", "lambda_d", "x_s", "x_d", "ranking",
        "residual_standard", "residual_dual", "table_match",
    ]
    assert obj["ranking"] == [[4, 5], [6], [1], [2], [7], [3], [8, 9]]
    assert obj["table_match"]["verdict"] == "match"


def test_centrality_csv(files):
    code, out, _ = run("centrality", "--instance", "fig1-candidate", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "vertex,x_s,x_d,rank_group"
    assert lines[1] == "1,0.3536,0.2983,1"
    assert lines[4] == "4,0.3536,-0.2320,3"


def test_empty_perturbation_gives_zero_column(files):
    code, out, _ = run("centrality", "--input", files["k3"], "--perturb", files["empty"])
    row = [line for line in out.splitlines() if line.strip().startswith("x_d")][0]
    assert row.split()[1:] == ["0.0000"] * 3
    assert "table" not in json.loads(run("centrality", "--input", files["k3"], "--format", "json")[1])


def test_inline_and_file_perturbations_are_summed(files, tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("1 2\n")
    a = json.loads(run("centrality", "--input", files["star"], "--perturb", str(p),
                       "--perturb-edge", "1,2", "--format", "json")[1])
    b = json.loads(run("centrality", "--input", files["star"], "--perturb-edge", "1,2,w=2",
                       "--format", "json")[1])
    assert a["x_d"] == pytest.approx(b["x_d"], abs=1e-14)


def test_json_is_deterministic():
    argv = ("centrality", "--instance", "fig2-candidate", "--case", "2", "--format", "json")
    assert run(*argv)[1] == run(*argv)[1]


def test_verify_pass():
    code, out, _ = run("verify", "--instance", "fig2-candidate")
    assert code == 0
    assert "FAIL" not in out and "PASS  mmatrix_group_axioms" in out


def test_verify_proportional_perturbation(files):
    # weight 1/(m-1)! = 1 on every edge of K3 gives A_d = A_s
    code, out, _ = run("verify", "--input", files["k3"], "--perturb", files["k3"])
    assert code == 0
    max_xd = float(out.strip().splitlines()[-1].split("=")[1])
    assert max_xd <= 1e-9


def test_verify_stored_result_and_corruption(tmp_path):
    code, out, _ = run("centrality", "--instance", "fig1-candidate", "--format", "json")
    good = tmp_path / "good.json"
    good.write_text(out)
    assert run("verify", "--instance", "fig1-candidate", "--result", str(good))[0] == 0

    obj = json.loads(out)
    obj["x_d"][2] += 0.1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    code, out, err = run("verify", "--instance", "fig1-candidate", "--result", str(bad))
    assert code == 6
    assert "FAIL  eigen_equation_dual" in out
    assert "eigen_equation_dual" in err

    obj = json.loads(good.read_text())
    obj["x_s"][0] *= 1.01
    bad.write_text(json.dumps(obj))
    code, out, _ = run("verify", "--instance", "fig1-candidate", "--result", str(bad))
    assert code == 6 and "FAIL  eigen_equation_standard" in out and "FAIL  normalization" in out

    bad.write_text("{}")
    assert run("verify", "--instance", "fig1-candidate", "--result", str(bad))[0] == 2


def test_examples_roundtrip(tmp_path):
    for name in ("fig1-candidate", "fig2-candidate"):
        code, out, _ = run("examples", name, "--out-dir", str(tmp_path))
        assert code == 0
        H, perts = builtin_instance(name)
        written = out.split()
        assert len(written) == 1 + len(perts)
        assert read_hypergraph(written[0]) == H
        assert [read_perturbation(p) for p in written[1:]] == perts


def test_examples_all(tmp_path):
    code, out, _ = run("examples", "all", "--out-dir", str(tmp_path))
    assert code == 0 and len(out.split()) == 5


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "dualcentrality", "spectral", "--input", files["split"]],
        capture_output=True, text=True,
    )
    assert proc.returncode == 3
    assert "not connected" in proc.stderr and proc.stdout == ""
