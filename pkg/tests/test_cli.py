import json
import subprocess
import sys

import pytest

from quadmod.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, fixture, main, run


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def make(name, path, *extra):
    assert main(["fixtures", name, "--out", str(path), "--no-timestamps", *extra]) == EXIT_OK
    return path


def machine(argv):
    rep = run([*argv, "--format", "machine", "--no-timestamps"])
    return rep.exit_status, json.loads(rep.render("machine"))


def test_fixture_bundles_validate():
    assert fixture("CONST").structure.moore.dims()[1] == 0
    assert fixture("NERVE").structure.moore.length == 1
    assert fixture("IDEALSQ").kind == "crossed_square"


def test_fixtures_listing(capsys):
    assert main(["fixtures", "--no-timestamps"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "CONST" in out and "TRUNCPOLY" in out


@pytest.mark.parametrize("name", ["CONST", "NERVE", "DK", "IDEALSQ", "TRUNCPOLY"])
def test_every_fixture_validates(workdir, name):
    path = make(name, workdir / f"{name}.json")
    status, doc = machine(["validate", str(path)])
    assert status == EXIT_OK and all(doc["verdicts"].values())


def test_validate_nerve_exit_0(workdir, capsys):
    path = make("NERVE", workdir / "nerve.json")
    assert main(["validate", str(path), "--no-timestamps"]) == EXIT_OK
    assert "PASS" in capsys.readouterr().out


def test_moore_and_homotopy(workdir):
    path = make("NERVE", workdir / "nerve.json")
    status, doc = machine(["moore", str(path)])
    assert status == EXIT_OK and doc["moore"]["NE dims"][:3] == [3, 2, 0]
    status, doc = machine(["homotopy", str(path)])
    assert status == EXIT_OK and doc["moore homotopy"]["dims"]["0"] == 1


def test_pairings_n2(workdir):
    path = make("DK", workdir / "dk.json", "--field", "Fp:7")
    status, doc = machine(["pairings", str(path), "--n", "2"])
    assert status == EXIT_OK
    assert doc["verdicts"]["d(NE) = d(I)"] and doc["verdicts"]["d(NE) = sum KK"]
    assert doc["pairings"]["P(n)"] == ["C_{(0),(1)}"]


def test_pairings_n3_memberships(workdir):
    path = make("DK", workdir / "dk.json", "--field", "Fp:7")
    status, doc = machine(["pairings", str(path), "--n", "3"])
    assert status == EXIT_OK
    assert sum(1 for k in doc["verdicts"] if k.endswith("membership")) == 6


def test_functor_writes_output_and_certificate(workdir):
    src = make("TRUNCPOLY", workdir / "tp.json")
    out = workdir / "lam.json"
    status, doc = machine(["functor", "lambda", str(src), "--out", str(out)])
    assert status == EXIT_OK
    cert = json.loads((workdir / "lam.cert.json").read_text())
    assert cert["ok"] and cert["construction"] == "lambda"
    assert json.loads(out.read_text())["kind"] == "quadratic"
    assert main(["certify", str(src), str(out), "--no-timestamps"]) == EXIT_OK


@pytest.mark.parametrize("name,fixture_name,extra", [
    ("delta", "NERVE", []),
    ("m2", "NERVE", []),
    ("simp2", "DK", ["--field", "Fp:7"]),
    ("cone", "IDEALSQ", []),
    ("psi", "IDEALSQ", []),
])
def test_every_functor_runs(workdir, name, fixture_name, extra):
    src = make(fixture_name, workdir / "in.json", *extra)
    status, doc = machine(["functor", name, str(src), "--out", str(workdir / "out.json")])
    assert status == EXIT_OK, doc
    assert (workdir / "out.cert.json").exists()


def test_printed_qm3_exit_1(workdir):
    src = make("TRUNCPOLY", workdir / "tp.json")
    out = workdir / "lam.json"
    assert main(["functor", "lambda", str(src), "--out", str(out), "--no-timestamps"]) == EXIT_OK
    status, doc = machine(["validate", str(out), "--qm3", "printed"])
    assert status == EXIT_FAIL
    assert any("QM3 action identity (printed)" in w for w in doc["witnesses"])


def test_corrupted_lifting_exit_1_with_2cm_witness(workdir):
    src = make("TRUNCPOLY", workdir / "tp.json")
    doc = json.loads(src.read_text())
    table = doc["payload"]["bilinear"]["lifting"]["table"]
    table[0][3] = "5"
    src.write_text(json.dumps(doc))
    status, rep = machine(["functor", "lambda", str(src)])
    assert status == EXIT_FAIL
    assert any(w.startswith("2CM") for w in rep["witnesses"])


def test_psi_source_form_exit_1(workdir):
    src = make("IDEALSQ", workdir / "sq.json")
    status, rep = machine(["functor", "psi", str(src), "--omega-form", "source"])
    assert status == EXIT_FAIL
    assert any("QM2" in w for w in rep["witnesses"])


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["validate", "missing.json"],
    ["validate", "x.json", "--field", "Fp:6"],
    ["fixtures", "NOPE"],
    ["fixtures", "IDEALSQ", "--truncation", "3"],
    ["fixtures", "CONST", "--truncation", "9"],
    ["fixtures", "DK", "--diffs", "{oops"],
    ["pairings", "x.json"],
])
def test_usage_errors_exit_2(workdir, argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert capsys.readouterr().err


def test_wrong_kind_is_usage_error(workdir):
    src = make("IDEALSQ", workdir / "sq.json")
    assert run(["functor", "lambda", str(src)]).exit_status == EXIT_USAGE
    assert run(["moore", str(src)]).exit_status == EXIT_USAGE


def test_truncation_only_for_fixtures(workdir):
    src = make("NERVE", workdir / "n.json")
    assert run(["validate", str(src), "--truncation", "3"]).exit_status == EXIT_USAGE


def test_malformed_bundle_exit_2(workdir):
    bad = workdir / "bad.json"
    bad.write_text('{"kind": "algebra",')
    rep = run(["validate", str(bad)])
    assert rep.exit_status == EXIT_USAGE and "line" in rep.error


def test_field_override_reduces(workdir):
    src = make("NERVE", workdir / "n.json")
    status, doc = machine(["validate", str(src), "--field", "Fp:7"])
    assert status == EXIT_OK and doc["structure"]["field"] == "Fp:7"


def test_outputs_byte_identical_without_timestamps(workdir):
    src = make("IDEALSQ", workdir / "sq.json")
    texts = []
    out, rep = workdir / "psi.json", workdir / "rep.txt"
    for _ in range(2):
        main(["functor", "psi", str(src), "--out", str(out), "--no-timestamps"])
        main(["homotopy", str(out), "--out", str(rep), "--no-timestamps", "--format", "machine"])
        texts.append((out.read_bytes(), (workdir / "psi.cert.json").read_bytes(), rep.read_bytes()))
    assert texts[0] == texts[1]
    again = workdir / "sq2.json"
    make("IDEALSQ", again)
    assert again.read_bytes() == src.read_bytes()


def test_timestamp_present_by_default():
    rep = run(["fixtures"])
    assert rep.timestamp is not None and "timestamp" in rep.render("text")


def test_report_to_file(workdir):
    src = make("NERVE", workdir / "n.json")
    assert main(["moore", str(src), "--out", "moore.txt", "--no-timestamps"]) == EXIT_OK
    assert "NE dims" in (workdir / "moore.txt").read_text()


def test_module_entry_point(workdir):
    proc = subprocess.run([sys.executable, "-m", "quadmod.cli", "fixtures", "--no-timestamps"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "catalog" in proc.stdout
