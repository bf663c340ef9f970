import json
import random
from pathlib import Path

import pytest

from gammaforms import cli
from gammaforms.recurrences import SEEDS, family, family_to_json


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# gen


def test_gen_uvw_csv(capsys):
    code, out, _ = run(capsys, "gen", "--family", "uvw", "--max-n", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,u,v,w"
    assert lines[-1] == "3,82861,-225240,-179426"


def test_gen_single_family_json(capsys):
    code, out, _ = run(capsys, "gen", "--family", "q", "--max-n", "4", "--format", "json")
    assert code == 0
    assert out.strip() == family_to_json(family("q", 4))
    payload = json.loads(out)
    assert payload["values"] == ["1", "3", "50", "2022", "148824"]


def test_gen_group_json(capsys):
    code, out, _ = run(capsys, "gen", "--family", "laguerre", "--max-n", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert [entry["family"] for entry in payload] == ["ptilde", "qtilde"]


def test_gen_table_format(capsys):
    code, out, _ = run(capsys, "gen", "--family", "u", "--max-n", "2", "--format", "table")
    assert code == 0
    assert "558" in out


def test_gen_rejects_negative_max_n(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["gen", "--family", "uvw", "--max-n", "-1"])
    assert exc.value.code == 2


def test_gen_rejects_unknown_family(capsys):
    code, _, err = run(capsys, "gen", "--family", "zeta", "--max-n", "3")
    assert code == 2
    assert "unknown family" in err


# ---------------------------------------------------------------------------
# constants


def test_constants_text(capsys):
    code, out, _ = run(capsys, "constants", "--which", "gamma", "--digits", "20")
    assert code == 0
    assert out.strip() == "0.57721566490153286061"


def test_constants_json(capsys):
    code, out, _ = run(capsys, "constants", "--which", "delta", "--digits", "15", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == "0.596347362323194"
    assert payload["digits"] == 15
    assert "exp-integral-series" in payload["provenance"]


def test_constants_rejects_zero_digits(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["constants", "--which", "gamma", "--digits", "0"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# forms / fit


def test_forms_csv(capsys):
    code, out, _ = run(capsys, "forms", "--which", "l", "--max-n", "4", "--normalized")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,value,normalized"
    assert len(lines) == 6
    first = lines[1].split(",")
    assert first[0] == "0" and first[2] == ""  # no envelope at n = 0
    assert "e-1" in first[1]  # scientific notation
    row2 = lines[3].split(",")
    assert row2[1].startswith("-2.4792503130")


def test_forms_json(capsys):
    code, out, _ = run(capsys, "forms", "--which", "f", "--max-n", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["form"] == "f"
    assert len(payload["rows"]) == 4
    assert payload["rows"][1]["value"].startswith("2.683530052")


def test_fit_json(capsys):
    code, out, _ = run(capsys, "fit", "--form", "f", "--range", "20..150", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["converged"] is True
    assert payload["target"] == pytest.approx(1.44867846, abs=1e-6)
    assert payload["c_estimate"] == pytest.approx(1.4487, abs=0.02)


def test_fit_rejects_bad_range(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["fit", "--form", "f", "--range", "200..100"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# rodrigues


def test_rodrigues_text(capsys):
    code, out, _ = run(capsys, "rodrigues", "--n", "1", "--print-poly")
    assert code == 0
    assert "p = 2" in out and "q = 3" in out
    assert "z^4: 1" in out


def test_rodrigues_json(capsys):
    code, out, _ = run(capsys, "rodrigues", "--n", "2", "--format", "json", "--print-poly")
    assert code == 0
    payload = json.loads(out)
    assert payload["p"] == "31" and payload["q"] == "50"
    assert payload["degree"] == 8
    assert payload["coefficients"][2] == "905/2"


# ---------------------------------------------------------------------------
# verify


def test_verify_rodrigues_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "rodrigues", "--max-n", "6")
    assert code == 0
    assert "all checks passed" in out


def test_verify_identities_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "identities", "--max-n", "10")
    assert code == 0


def test_verify_constants_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "constants", "--digits", "30",
                       "--max-n", "300", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    names = [c["name"] for c in payload["checks"]]
    assert "constants[gamma-30]" in names
    assert "elapsed_s" not in payload  # deterministic by default


def test_verify_reports_are_deterministic(capsys):
    args = ("verify", "--suite", "determinant", "--max-n", "20", "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_suites_mapping():
    assert set(cli.suites()) == {
        "integrality",
        "determinant",
        "rodrigues",
        "identities",
        "asymptotics",
        "constants",
    }


# ---------------------------------------------------------------------------
# cache behavior


def test_cache_round_trip_idempotent(capsys, tmp_path):
    args = ("gen", "--family", "q", "--max-n", "40", "--format", "json",
            "--cache-dir", str(tmp_path))
    code, cold, _ = run(capsys, *args)
    assert code == 0
    assert (tmp_path / "q_40.json").exists()
    code, warm, _ = run(capsys, *args)
    assert code == 0
    assert cold == warm


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    code, _, _ = run(capsys, "gen", "--family", "r", "--max-n", "12")
    assert code == 0
    assert (tmp_path / "r_12.json").exists()


def test_cache_corrupted_file_regenerates(capsys, tmp_path):
    path = tmp_path / "q_10.json"
    path.write_text("{not json")
    code, out, err = run(capsys, "gen", "--family", "q", "--max-n", "10",
                         "--format", "csv", "--cache-dir", str(tmp_path))
    assert code == 0
    assert "failed revalidation" in err
    assert out.strip().split("\n")[4] == "3,2022"
    # regenerated file is now valid
    assert json.loads(path.read_text())["values"][3] == "2022"


def test_cache_tampered_value_detected(capsys, tmp_path):
    fam = family("q", 30)
    # choose a tamper index the deterministic revalidation will sample
    rng = random.Random("q:30")
    sampled = [rng.randint(len(fam.initial), 30) for _ in range(3)]
    payload = json.loads(family_to_json(fam))
    payload["values"][sampled[0]] = str(int(payload["values"][sampled[0]]) + 1)
    (tmp_path / "q_30.json").write_text(json.dumps(payload))
    code, out, err = run(capsys, "gen", "--family", "q", "--max-n", "30",
                         "--format", "csv", "--cache-dir", str(tmp_path))
    assert code == 0
    assert "failed revalidation" in err
    assert out.strip().split("\n")[4] == "3,2022"
