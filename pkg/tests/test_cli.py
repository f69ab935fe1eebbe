import hashlib
import json
import subprocess
import sys

import pytest

from sumdiff.bigcomb import decimal_string, sci_round
from sumdiff.cli import MAX_INLINE_DIGITS, encode_count, main, parse_int_list, parse_range
from sumdiff.counts import Params, q_value


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_compute_example_1(capsys):
    code, cert = run(capsys, "compute", "--m", "4", "--L", "8", "--B", "3")
    assert code == 0
    assert cert["params"] == {"m": 4, "L": 8, "B": 3}
    assert cert["counts"] == {"u": "221", "s": "2075", "d": "2307", "q": "2381"}
    assert cert["theta"]["lower"] == "1.013631"
    assert set(cert) == {"params", "counts", "theta", "tool_version", "elapsed_seconds"}
    assert set(cert["theta"]) == {"lower", "ln_ratio", "ln_q"}


def test_compute_degenerate(capsys):
    code, cert = run(capsys, "compute", "--m", "1", "--L", "0", "--B", "1")
    assert code == 2
    assert cert["counts"] == {"u": "1", "s": "1", "d": "1", "q": "1"}
    assert cert["theta"] is None


def test_compute_paper_optimum(capsys):
    code, cert = run(capsys, "compute", "--m", "80", "--L", "64", "--B", "5")
    assert code == 0 and cert["theta"]["lower"] == "1.162997"


def test_compute_canonicalizes(capsys):
    _, cert = run(capsys, "compute", "--m", "2", "--L", "100", "--B", "1")
    assert cert["params"] == {"m": 2, "L": 2, "B": 1}


def test_negative_flag_rejected(capsys):
    assert main(["compute", "--m", "-1", "--L", "3", "--B", "1"]) == 1
    assert "non-negative" in capsys.readouterr().err


def test_search_paper_grid(capsys):
    code, res = run(capsys, "search", "--m", "1:128", "--L", "64", "--B", "1:7", "--top", "5", "--confirm", "--workers", "1")
    assert code == 0
    best = res["ranked"][0]
    assert best["params"] == {"m": 80, "L": 64, "B": 5}
    assert best["theta_exact"]["lower"] == "1.162997"
    assert len(res["ranked"]) == 5


def test_search_single(capsys):
    code, res = run(capsys, "search", "--m", "4:4", "--L", "8", "--B", "3:3", "--workers", "1")
    assert code == 0 and len(res["ranked"]) == 1
    assert res["ranked"][0]["theta_exact"] is None


def test_search_empty_grid(capsys):
    code, _ = run(capsys, "search", "--m", "5:4", "--L", "8", "--B", "3:3")
    assert code == 1


def test_range_parsing():
    assert parse_range("3:9") == (3, 9)
    assert parse_range("7") == (7, 7)
    assert parse_int_list("8,16:18") == (8, 16, 17, 18)


@pytest.mark.parametrize("argv", [("--m", "4", "--L", "8", "--B", "3"), ("--m", "2", "--L", "2", "--B", "1")])
def test_oracle_pass(capsys, argv):
    code, rep = run(capsys, "oracle", *argv)
    assert code == 0
    assert rep["status"] == "PASS" and rep["injective"]
    assert all(q["match"] for q in rep["quantities"].values())


def test_oracle_cap(capsys):
    code, rep = run(capsys, "oracle", "--m", "10", "--L", "50", "--B", "5", "--cap", "1000")
    assert code == 3 and rep["status"] == "CAP_EXCEEDED"


def test_certify_writes_file(tmp_path, capsys):
    out = tmp_path / "ex1.json"
    assert main(["certify", "--m", "4", "--L", "8", "--B", "3", "--out", str(out)]) == 0
    cert = json.loads(out.read_text())
    assert cert["counts"]["u"] == "221"
    assert cert["elapsed_seconds"] >= 0


def test_certify_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for f in (a, b):
        assert main(["certify", "--m", "80", "--L", "64", "--B", "5", "--out", str(f)]) == 0
    ca, cb = json.loads(a.read_text()), json.loads(b.read_text())
    assert ca["counts"] == cb["counts"] and ca["theta"] == cb["theta"]


def test_certify_io_error(tmp_path):
    assert main(["certify", "--m", "4", "--L", "8", "--B", "3", "--out", str(tmp_path / "no" / "x.json")]) == 4


def test_large_counts_use_sci_and_digest(tmp_path):
    # q = 11^4000 - ... has 4166 digits, the other counts stay inline
    out = tmp_path / "big.json"
    assert main(["certify", "--m", "4000", "--L", "400", "--B", "5", "--out", str(out)]) == 0
    cert = json.loads(out.read_text())
    q = q_value(Params(4000, 400, 5))
    text = decimal_string(q)
    assert len(text) > MAX_INLINE_DIGITS
    entry = cert["counts"]["q"]
    assert entry["digits10"] == len(text)
    assert entry["sha256_of_decimal"] == hashlib.sha256(text.encode()).hexdigest()
    assert entry["sci"]["mantissa"] == str(sci_round(q, 10).mantissa)
    assert entry["sci"]["exponent10"] == len(text) - 1
    assert isinstance(cert["counts"]["u"], str)


def test_encode_count_threshold():
    assert encode_count(10**3999) == "1" + "0" * 3999
    big = encode_count(10**4000)
    assert big["digits10"] == 4001
    assert big["sci"] == {"mantissa": "1.000000000", "exponent10": 4000}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sumdiff", "compute", "--m", "4", "--L", "8", "--B", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["theta"]["lower"] == "1.013631"
