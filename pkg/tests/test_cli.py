import csv
import io
import json

import pytest

from doublestandard.cli import main
from doublestandard.render import read_ppm


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_atlas_period_three():
    code, out, err = run("atlas", "--period", "3")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 7
    assert {r["tau"] for r in rows} == {"0"} | {f"{k}/7" for k in range(1, 7)}
    man = json.loads(err)
    assert man["command"] == "atlas" and man["inputs"]["period"] == 3
    assert "cfg" in man and "tool_version" in man


def test_atlas_floats_have_17_digits():
    _, out, _ = run("atlas", "--period", "1")
    row = next(csv.DictReader(io.StringIO(out)))
    assert float(row["a_super"]) == pytest.approx(0.5, abs=1e-12)


def test_classify_json():
    code, out, _ = run("classify", "--a", "0.5", "--b", "0.9")
    assert code == 0
    rec = json.loads(out)
    assert rec["type"] == "0/1" and rec["period"] == 1
    assert rec["multiplier"] == pytest.approx(0.2, abs=1e-12)
    assert list(rec) == sorted(rec)


def test_classify_no_attractor():
    code, out, _ = run("classify", "--a", "0.1", "--b", "0.3")
    assert code == 0 and json.loads(out)["outcome"] == "no_attractor"


def test_out_file_and_manifest(tmp_path):
    dest = tmp_path / "sec.csv"
    code, out, _ = run("section", "--type", "0/1", "--b", "1.0", "--out", str(dest))
    assert code == 0 and out == ""
    rows = list(csv.DictReader(dest.open()))
    assert len(rows) == 1 and float(rows[0]["lo"]) < 0.5 < float(rows[0]["hi"])
    man = json.loads((tmp_path / "sec.csv.manifest.json").read_text())
    assert man["inputs"]["type"] == "0/1"


def test_usage_errors():
    assert run("atlas")[0] == 2
    assert run("section", "--type", "zz", "--b", "0.9")[0] == 2
    assert run("classify", "--a", "0.5", "--b", "1.5")[0] == 2
    assert run("nonsense")[0] == 2


def test_domain_errors():
    code, _, err = run("path", "--type", "1/2", "--a", "0.5", "--b", "0.9")
    assert code == 1 and "TypeMismatch" in err
    assert run("koenigs-check", "--a", "0.1", "--b", "0.3")[0] == 1
    assert run("koenigs-check", "--a", "0.5", "--b", "1.0")[0] == 1


def test_path_command():
    code, out, _ = run("path", "--type", "0/1", "--a", "0.5", "--b", "0.9")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert float(rows[-1]["a"]) == pytest.approx(0.5) and float(rows[-1]["b"]) == 1.0


def test_koenigs_check_reports():
    code, out, _ = run("koenigs-check", "--a", "0.47", "--b", "0.85")
    rec = json.loads(out)
    assert code == 0
    assert rec["functional_equation_residual"] < 1e-6
    assert rec["normalization_error"] < 1e-6
    assert rec["reflection_residual_with_factor"] < 1e-9


def test_connect_small(tmp_path):
    code, out, _ = run("connect", "--type", "0/1", "--width", "64", "--height", "64",
                       "--window", "0.3", "0.7", "0.6", "1.0")
    rec = json.loads(out)
    assert code == 0 and rec["status"] == "PASS" and rec["components"] == 1


def test_connect_low_resolution():
    code, out, _ = run("connect", "--type", "0/1", "--width", "1", "--height", "1")
    rec = json.loads(out)
    assert code == 0 and rec["status"] == "FAIL" and "resolution" in rec["note"]


def test_render_round_trip(tmp_path):
    img, man = tmp_path / "t.ppm", tmp_path / "t.json"
    code, _, _ = run("render", "--mode", "tongues", "--width", "48", "--height", "24",
                     "--window", "0", "1", "0.5", "1", "--manifest", str(man), "--out", str(img),
                     "--threads", "1")
    assert code == 0 and man.exists()
    first = img.read_bytes()
    assert read_ppm(first).shape == (24, 48, 3)
    run_man = json.loads((tmp_path / "t.ppm.manifest.json").read_text())
    img2 = tmp_path / "u.ppm"
    (tmp_path / "run.json").write_text(json.dumps(run_man))
    code, _, _ = run("render", "--manifest", str(tmp_path / "run.json"), "--out", str(img2),
                     "--threads", "4")
    assert code == 0 and img2.read_bytes() == first
    assert (tmp_path / "u.ppm.legend.csv").read_text() == (tmp_path / "t.ppm.legend.csv").read_text()


def test_render_needs_mode_or_manifest(tmp_path):
    assert run("render", "--out", str(tmp_path / "x.ppm"))[0] == 2
    assert run("render", "--mode", "tongues")[0] == 2
