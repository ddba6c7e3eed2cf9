import csv
import io
import json
import os
import pathlib
import subprocess

import pytest

import dcomp

CLI = os.environ.get("DCOMP_CLI", "dcomp")
DATA = pathlib.Path(os.environ.get("DCOMP_DATA", pathlib.Path(__file__).resolve().parents[2] / "data"))


def run(*args, check=True):
    return subprocess.run([CLI, *args], capture_output=True, text=True, check=check)


def test_count_grid_matches_library():
    out = run("count", "--corpus", "single-prime", "--re-grid", "0.05,0.5,10", "--im-grid", "-5,5,10").stdout
    lines = out.splitlines()
    assert lines[0].startswith("# dcomp 0.1.0 config_hash=")
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    assert len(rows) == 100
    phi = dcomp.Symbol.from_corpus("single-prime")
    for row in rows[::7]:
        w = complex(float(row["w_re"]), float(row["w_im"]))
        assert float(row["value"]) == pytest.approx(dcomp.restricted_counting(phi, w), abs=1e-15)
        assert row["kind"] == "restricted"


def test_report_two_s(tmp_path):
    out = tmp_path / "r.json"
    proc = run("report", "--corpus", "two-s", "--N", "32,64", "--skip-littleo", "-o", str(out))
    assert proc.returncode == 0
    report = json.loads(out.read_text())
    assert report["meta"]["tool"] == "dcomp"
    assert {s["conclusion"] for s in report["report"]["spaces"]} == {"noncompact-consistent"}


def test_certify_failure_exit_code(tmp_path):
    sym = tmp_path / "bad.json"
    sym.write_text(json.dumps({"c0": 1, "psi": {"2": [1, 0]}}))
    proc = run("certify", "--symbol", str(sym), check=False)
    assert proc.returncode == 2


def test_symbol_file_loader():
    phi = dcomp.load_symbol(DATA / "corpus" / "five-halves.json")
    assert phi.c0 == 0
    assert phi.symbol_class == "G0"


def test_binary_matrix(tmp_path):
    out = tmp_path / "m.bin"
    run("matrix", "--corpus", "translate", "--N", "4", "--format", "binary", "-o", str(out))
    blob = out.read_bytes()
    assert blob[:4] == b"DCMX"
    import struct

    rows, n, flags = struct.unpack_from("<III", blob, 4)
    assert (rows, n, flags) == (4, 4, 1)
    idx = struct.unpack_from("<4Q", blob, 16)
    assert idx == (1, 2, 3, 4)
    vals = struct.unpack_from("<32d", blob, 16 + 32)
    diag = [vals[2 * (j * 4 + j)] for j in range(4)]
    assert diag == pytest.approx([1.0, 0.5, 1 / 3, 0.25])
