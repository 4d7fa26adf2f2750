import json
from pathlib import Path

import pytest

from deuring.cli import compute_record, run
from deuring.table import OutputRecord, render_table

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("p", [29, 41, 71, 97])
def test_golden_json(p, capsys):
    assert run(["--prime", str(p), "--format", "json"]) == 0
    out = capsys.readouterr().out
    assert out == (GOLDEN / f"p{p}.json").read_text(encoding="utf-8")


def test_table_row_29(capsys):
    assert run(["--prime", "29"]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == "p = 29"
    assert "1728" in lines[1] and "⋆" in lines[2]
    assert "Λ = {3}" in out


def test_emit_orders_and_fingerprints(capsys):
    assert run(["--prime", "29", "--emit-orders", "--emit-fingerprints"]) == 0
    out = capsys.readouterr().out
    assert "e1² = −10" in out
    assert "fingerprint j = 0:" in out


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_small_prime_note(p, capsys):
    assert run(["--prime", str(p), "--format", "json"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["type_number"] == 0 and "class number one" in rec["note"]


def test_not_prime(capsys):
    assert run(["--prime", "91"]) == 2
    assert "not a prime" in capsys.readouterr().err


def test_empty_range(capsys):
    assert run(["--range", "24..28"]) == 2


def test_bad_ell_set(capsys):
    assert run(["--prime", "97", "--ell-set", "3,5,7"]) == 1
    assert "[step 4]" in capsys.readouterr().err


def test_range_to_file(tmp_path):
    out = tmp_path / "rows.json"
    assert run(["--range", "29..41", "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert [r["p"] for r in data] == [29, 31, 37, 41]


def test_jobs_same_output(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["--range", "29..43", "--format", "json", "--out", str(a)]) == 0
    assert run(["--range", "29..43", "--format", "json", "--out", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("p", [5, 29, 73])
def test_record_round_trip(p):
    rec = compute_record(p)
    again = OutputRecord.from_json(json.loads(json.dumps(rec.to_json())))
    assert again.to_json() == rec.to_json()
    assert render_table(again, True, True) == render_table(rec, True, True)


def test_schema_checked():
    with pytest.raises(ValueError):
        OutputRecord.from_json({"schema": 99})
