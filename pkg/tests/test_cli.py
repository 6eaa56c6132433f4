import json
import subprocess
import sys
from pathlib import Path

import pytest

from nerfkit import fixtures as fx
from nerfkit import io
from nerfkit.cli import run

ROOT = Path(__file__).resolve().parents[1]
FIX = ROOT / "fixtures"


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "nerfkit.cli", *map(str, argv)], cwd=ROOT,
                          capture_output=True, text=True, timeout=300)


def test_validate_one_nerve_example():
    r = _cli("validate", "--as", "one-nerve", "fixtures/nerve_z2.json")
    assert r.returncode == 0, r.stdout + r.stderr


def test_pi_example():
    r = _cli("pi", "--i", "2", "--base", "I_f", "--json", "fixtures/weak_cocycle_nerve.json")
    assert r.returncode == 0, r.stdout + r.stderr
    doc = json.loads(r.stdout.strip().splitlines()[-1])
    assert doc["group"]["order"] == 2 and doc["group"]["abelian"]


def test_equiv_example():
    r = _cli("equiv", "--k", "1", "--json", "fixtures/inclusion_source.json",
             "fixtures/inclusion_target.json", "fixtures/inclusion_morphism.json")
    assert r.returncode == 1, r.stdout + r.stderr
    doc = json.loads(r.stdout.strip().splitlines()[-1])
    w = doc["equivalence"]["witnesses"][0]
    assert w["h"] == 0 and w["reason"] == "existence"


def test_report_determinism():
    a = _cli("equiv", "--k", "1", "--json", "fixtures/inclusion_source.json",
             "fixtures/inclusion_target.json", "fixtures/inclusion_morphism.json")
    b = _cli("equiv", "--k", "1", "--json", "fixtures/inclusion_source.json",
             "fixtures/inclusion_target.json", "fixtures/inclusion_morphism.json")
    assert a.stdout == b.stdout and a.stdout


def test_nerve_output_determinism(tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"n{k}.json"
        assert run(["nerve", "--bound", "3", "--out", str(out), str(FIX / "s3_delooping.json")]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_malformed_input_exit_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "presheaf", "n": 1,')
    r = _cli("validate", "--as", "presheaf", bad)
    assert r.returncode == 2
    assert "line 1" in (r.stdout + r.stderr)


def test_wrong_kind_exit_two():
    assert run(["validate", "--as", "one-nerve", str(FIX / "z2_delooping.json")]) == 2


def test_unknown_fixture_exit_two():
    assert run(["fixture", "no_such_thing"]) == 2


def test_verdict_false_exit_one():
    assert run(["validate", "--as", "one-nerve", str(FIX / "broken_horn.json")]) == 1
    assert run(["validate", "--as", "weak2", str(FIX / "broken_pentagon.json")]) == 1
    assert run(["validate", "--as", "strict", str(FIX / "broken_godement.json")]) == 1
    assert run(["validate", "--as", "category", str(FIX / "broken_category.json")]) == 1


INTENDED = {
    "terminal": "category", "z2_delooping": "category", "arrow_cat": "category",
    "contractible_groupoid": "category", "s3_delooping": "category", "discrete2": "category",
    "strict2_z2": "strict", "z2_loops": "strict", "crossed_id_z2": "strict",
    "walking_2cell": "strict", "weak_cocycle": "weak2", "nerve_z2": "one-nerve",
    "nerve_s3": "one-nerve", "multinerve_z2_loops": "strict-nerf",
    "weak_cocycle_nerve": "n-nerve",
}


@pytest.mark.parametrize("name", sorted(INTENDED))
def test_fixture_files_pass_their_validator(name):
    assert run(["validate", "--as", INTENDED[name], str(FIX / f"{name}.json")]) == 0


def test_generated_fixtures_match_shipped(tmp_path):
    assert run(["fixture", "all", "--out", str(tmp_path)]) == 0
    for f in sorted(FIX.glob("*.json")):
        assert (tmp_path / f.name).read_bytes() == f.read_bytes(), f.name


def test_generate_terminal_and_z2(tmp_path):
    assert run(["fixture", "terminal", "--out", str(tmp_path / "t.json")]) == 0
    T = io.load(tmp_path / "t.json")
    assert T.n_objects == 1 and T.n_arrows == 1
    assert run(["fixture", "z2_delooping", "--out", str(tmp_path / "z.json")]) == 0
    Z = io.load(tmp_path / "z.json")
    assert Z.n_objects == 1 and Z.n_arrows == 2


def test_truncate_and_pi0(capsys):
    assert run(["pi0", "--json", str(FIX / "weak_cocycle_nerve.json")]) == 0
    doc = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert doc["size"] == 1 and doc["classes"] == ["x"]
    assert run(["truncate", "--times", "2", str(FIX / "multinerve_z2_loops.json")]) == 0


def test_extract_and_strictify():
    assert run(["extract2", str(FIX / "weak_cocycle_nerve_ext.json")]) == 0
    assert run(["strictify", str(FIX / "multinerve_strict2_z2_ext.json")]) == 0


def test_nerve_bound_env(monkeypatch, tmp_path):
    monkeypatch.setenv("NERVE_BOUND", "2")
    out = tmp_path / "n.json"
    assert run(["nerve", "--out", str(out), str(FIX / "z2_delooping.json")]) == 0
    assert io.load(out).region.boxes == ((2,),)
