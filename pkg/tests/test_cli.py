from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from conftest import fixture_path
from subtorus.classify import Bounds, Classification, verify_witness
from subtorus.cli import (
    EXIT_NON_INJECTIVE,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_UNRESOLVED,
    EXIT_WITNESS,
    load_group_spec,
    main,
    parse_group_spec,
    run_batch,
)
from subtorus.errors import InputError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --- group spec format ------------------------------------------------------------

def test_group_spec_parsing():
    spec = parse_group_spec("# comment\nbasis: a b\nphi: a -> b\nb -> a b  # bare line\nbound.max_steps: 12\n")
    assert spec.basis.letters == ("a", "b")
    assert spec.bounds == {"max_steps": 12}
    assert spec.torus().phi.images == ("b", "ab")
    assert spec.canonical_text() == "basis: a b\nphi: a -> b\nphi: b -> ab\n"
    assert len(spec.digest()) == 16


def test_group_spec_errors():
    for bad in ("phi: a -> a", "basis: a\nbasis: b\na -> a", "basis: a\nbound.nope: 1\na -> a",
                "basis: a\nbound.max_steps: x\na -> a", "basis: a\nwhat"):
        with pytest.raises(InputError):
            parse_group_spec(bad)


def test_fixture_specs_load():
    for name in ("free_factor", "bs12", "klein", "z2", "fib", "f2xz"):
        load_group_spec(fixture_path(f"{name}.grp")).torus()


# --- classify -----------------------------------------------------------------------

def test_classify_example_json(capsys):
    code, out, _ = run(capsys, "classify", fixture_path("free_factor.grp"), "t", "a", "--json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["verdict"] == "SubMappingTorus" and data["refinement"] == "General"
    assert data["V_rank"] == 3 and data["witness_ok"] is True
    assert data["presentation"] == "< s, a, b, c | s a s^-1 = b, s b s^-1 = c, s c s^-1 = a b^2 c^2 >"


def test_classify_bs_summary(capsys):
    code, out, _ = run(capsys, "classify", fixture_path("bs12.grp"), "t", "a")
    assert code == EXIT_OK
    assert "refinement: BaumslagSolitar(1,2)" in out
    assert "witness: verified" in out
    assert "presentation: < s, a | s a s^-1 = a^2 >" in out


def test_classify_fiber_case(capsys):
    code, out, _ = run(capsys, "classify", fixture_path("f2xz.grp"), "a", "b", "--json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["verdict"] == "FreeRank2" and data["fiber_rank"] == 2


def test_classify_unresolved_exit(capsys):
    # with no closure steps allowed, the commutator of t and a is found as a relation
    code, out, _ = run(capsys, "classify", fixture_path("z2.grp"), "t", "a", "--bounds-max-steps", "0")
    assert code == EXIT_UNRESOLVED
    assert "verdict: Unresolved" in out


def test_classify_error_exits(capsys, tmp_path):
    code, _, err = run(capsys, "classify", fixture_path("noninjective.grp"), "t", "a")
    assert code == EXIT_NON_INJECTIVE and "not injective" in err
    code, _, _ = run(capsys, "classify", fixture_path("bs12.grp"), "t", "b")
    assert code == EXIT_PARSE
    code, _, _ = run(capsys, "classify", str(tmp_path / "missing.grp"), "t", "a")
    assert code == EXIT_PARSE
    bad = tmp_path / "bad.grp"
    bad.write_text("basis: a\na => aa\n")
    code, _, _ = run(capsys, "classify", str(bad), "t", "a")
    assert code == EXIT_PARSE
    code, _, _ = run(capsys, "classify", fixture_path("bs12.grp"))
    assert code == EXIT_PARSE


def test_bounds_from_file_and_flags(capsys, tmp_path):
    spec = tmp_path / "z2.grp"
    spec.write_text("basis: a\nphi: a -> a\nbound.max_steps: 0\n")
    code, _, _ = run(capsys, "classify", str(spec), "t", "a")
    assert code == EXIT_UNRESOLVED
    code, _, _ = run(capsys, "classify", str(spec), "t", "a", "--bounds-max-steps", "4")
    assert code == EXIT_OK


# --- nf -------------------------------------------------------------------------------

def test_nf(capsys):
    code, out, _ = run(capsys, "nf", fixture_path("bs12.grp"), "taT")
    assert code == EXIT_OK and out.strip() == "a^2"
    code, out, _ = run(capsys, "nf", fixture_path("bs12.grp"), "TaT a t t")
    assert out.strip() == "T^2 a^3 t^2"
    code, out, _ = run(capsys, "nf", fixture_path("bs12.grp"), "Tat", "--json")
    assert json.loads(out) == {"p": 1, "z": "a", "q": 1, "text": "T a t"}


def test_nf_resource_cap(capsys, tmp_path):
    spec = tmp_path / "small.grp"
    spec.write_text("basis: a\nphi: a -> aa\n")
    code, _, err = run(capsys, "nf", str(spec), "t" * 25 + "a")
    assert code == EXIT_UNRESOLVED and "exceeds cap" in err


# --- present and betti ------------------------------------------------------------------

def _verdict_file(capsys, tmp_path, group, x, y, name="verdict.json"):
    code, out, _ = run(capsys, "classify", fixture_path(group), x, y, "--json")
    path = tmp_path / name
    path.write_text(out)
    return path


def test_present_round_trip(capsys, tmp_path):
    path = _verdict_file(capsys, tmp_path, "free_factor.grp", "t", "a")
    c = Classification.from_json(json.loads(path.read_text()))
    assert verify_witness(c.group, c)
    code, out, _ = run(capsys, "present", str(path))
    assert code == EXIT_OK
    assert out.strip() == "< s, a, b, c | s a s^-1 = b, s b s^-1 = c, s c s^-1 = a b^2 c^2 >"
    code, out, _ = run(capsys, "present", str(path), "--json")
    assert json.loads(out)["generators"] == ["s", "a", "b", "c"]


def test_present_free_and_unresolved(capsys, tmp_path):
    path = _verdict_file(capsys, tmp_path, "f2xz.grp", "at", "b")
    code, out, _ = run(capsys, "present", str(path))
    assert code == EXIT_OK and out.strip() == "< s, c1, d1 | s c1 s^-1 = d1 >"
    code, out, _ = run(capsys, "classify", fixture_path("z2.grp"), "t", "a", "--json",
                       "--bounds-max-steps", "0")
    path = tmp_path / "unresolved.json"
    path.write_text(out)
    code, _, _ = run(capsys, "present", str(path))
    assert code == EXIT_UNRESOLVED


def test_present_rejects_tampered_witness(capsys, tmp_path):
    path = _verdict_file(capsys, tmp_path, "free_factor.grp", "t", "a")
    data = json.loads(path.read_text())
    data["psi_images"][0] = [3]
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "present", str(path))
    assert code == EXIT_WITNESS and "images" in err


def test_betti(capsys, tmp_path):
    code, out, _ = run(capsys, "betti", fixture_path("klein.pres"))
    assert code == EXIT_OK and out.strip() == "1"
    path = _verdict_file(capsys, tmp_path, "free_factor.grp", "t", "a")
    code, out, _ = run(capsys, "betti", str(path))
    assert out.strip() == "1"
    pres = tmp_path / "p.json"
    pres.write_text(json.dumps({"generators": ["a", "t"], "relators": ["t a t^-1 a^-1"]}))
    code, out, _ = run(capsys, "betti", str(pres))
    assert out.strip() == "2"
    bad = tmp_path / "bad.pres"
    bad.write_text("< a | b >")
    code, _, _ = run(capsys, "betti", str(bad))
    assert code == EXIT_PARSE


# --- batch --------------------------------------------------------------------------------

def test_batch_deterministic(capsys):
    args = ("batch", fixture_path("bs12.grp"), "-n", "10", "--seed", "7")
    code1, out1, err1 = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    lines = out1.splitlines()
    assert len(lines) == 10
    records = [json.loads(line) for line in lines]
    assert [r["index"] for r in records] == list(range(10))
    assert all(r["seed"] == 7 for r in records)
    assert err1.strip().endswith("10")


def test_batch_workers_match_serial():
    spec = load_group_spec(fixture_path("fib.grp"))
    serial = run_batch(spec, 8, 3, Bounds(max_steps=16))
    parallel = run_batch(spec, 8, 3, Bounds(max_steps=16), workers=4)
    assert serial == parallel


def test_batch_summary_and_out_file(capsys, tmp_path):
    out_file = tmp_path / "records.jsonl"
    code, out, _ = run(capsys, "batch", fixture_path("bs12.grp"), "-n", "50", "--seed", "1",
                       "--out", str(out_file))
    assert code == EXIT_OK
    rows = [line.split() for line in out.strip().splitlines()]
    counts = {tag: int(n) for tag, n in rows}
    assert counts.pop("total") == 50 == sum(counts.values())
    assert "VerificationFailed" not in counts and "Error" not in counts
    # appending keeps earlier records
    run(capsys, "batch", fixture_path("bs12.grp"), "-n", "5", "--seed", "2", "--out", str(out_file))
    assert len(out_file.read_text().splitlines()) == 55


def test_batch_timing_flag(capsys):
    code, out, _ = run(capsys, "batch", fixture_path("klein.grp"), "-n", "2", "--timing")
    assert all("wall_time" in json.loads(line) for line in out.splitlines())


def test_batch_rejects_bad_n(capsys):
    code, _, _ = run(capsys, "batch", fixture_path("bs12.grp"), "-n", "0")
    assert code == EXIT_PARSE


def test_module_entry_point():
    env = dict(os.environ)
    proc = subprocess.run([sys.executable, "-m", "subtorus", "nf", fixture_path("bs12.grp"), "taT"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and proc.stdout.strip() == "a^2"
