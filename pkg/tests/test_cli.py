import json

import numpy as np
import pytest

from purimap import cli
from purimap.riemann import INFINITY


class TestParseComplex:
    @pytest.mark.parametrize("text,expect", [
        ("1+0i", 1 + 0j),
        ("0.5-0.3i", 0.5 - 0.3j),
        ("2", 2 + 0j),
        ("-3.5", -3.5 + 0j),
        ("1.5i", 1.5j),
        ("i", 1j),
        ("-i", -1j),
        ("1e-3+2e-4i", 1e-3 + 2e-4j),
        ("0.5436+0i", 0.5436 + 0j),
    ])
    def test_accepted_forms(self, text, expect):
        assert cli.parse_complex(text).value == expect

    def test_infinity(self):
        assert cli.parse_complex("inf") is INFINITY
        assert cli.parse_complex("Infinity") is INFINITY

    @pytest.mark.parametrize("bad", ["", "1+2", "abc", "2i+1", "1+i2"])
    def test_rejected_forms(self, bad):
        with pytest.raises(ValueError):
            cli.parse_complex(bad)


class TestConstantsCommand:
    def test_json_payload(self, capsys):
        assert cli.main(["constants"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(payload["zeta_A"] - 0.5436890127) < 1e-9
        assert abs(payload["zeta_B"] - 1.8392867552) < 1e-9
        assert abs(payload["zeta_C"] - 0.475) < 0.005
        assert payload["residuals"]["cubic"] < 1e-12

    def test_roundtrip_exact_floats(self, capsys):
        cli.main(["constants"])
        text = capsys.readouterr().out
        payload = json.loads(text)
        cli.main(["constants"])
        assert capsys.readouterr().out == text
        from purimap.reduced import compute_constants
        assert payload["zeta_A"] == compute_constants().zeta_A


class TestIterateCommand:
    def test_entangled_fixed_point(self, capsys):
        assert cli.main(["iterate", "--zeta", "1+0i", "--steps", "3"]) == 0
        records = json.loads(capsys.readouterr().out)
        assert len(records) == 3
        for rec in records:
            assert abs(rec["entropy"] - 1.0) < 1e-10
            assert len(rec["state"]) == 8

    def test_separable_alternation(self, capsys):
        assert cli.main(["iterate", "--zeta", "0+0i", "--steps", "2"]) == 0
        records = json.loads(capsys.readouterr().out)
        assert all(rec["entropy"] < 1e-10 for rec in records)
        first, second = (rec["state"] for rec in records)
        assert first != second

    def test_mixed_run_reaches_an_attractor(self, capsys):
        assert cli.main(["iterate", "--zeta", "0.5+0i", "--lambda", "0.75",
                         "--steps", "50"]) == 0
        records = json.loads(capsys.readouterr().out)
        assert len(records[0]["state"]) == 16
        yields = [rec["cumulative_yield"] for rec in records]
        assert all(b <= a for a, b in zip(yields, yields[1:]))
        final = np.array(records[-1]["state"])
        from purimap import fano
        from purimap.states import trace_distance_matrices
        m = fano.from_fano(final)
        targets = [fano.mixed_cycle_seed(),
                   fano.stable_mixed_cycle()[1],
                   np.diag([1, 0, 0, 0.0]).astype(complex),
                   np.full((4, 4), 0.25, dtype=complex)]
        bell = np.zeros((4, 4), complex)
        for i, j in ((0, 0), (0, 3), (3, 0), (3, 3)):
            bell[i, j] = 0.5
        targets.append(bell)
        assert min(trace_distance_matrices(m, t) for t in targets) < 1e-3

    def test_output_file(self, tmp_path, capsys):
        out = tmp_path / "traj.json"
        assert cli.main(["iterate", "--zeta", "1+0i", "--steps", "2",
                         "--out", str(out)]) == 0
        assert json.loads(out.read_text())

    def test_io_failure_exit_code(self, tmp_path):
        missing = tmp_path / "no" / "such" / "dir" / "x.json"
        assert cli.main(["iterate", "--zeta", "1+0i", "--steps", "1",
                         "--out", str(missing)]) == 1

    def test_bad_lambda_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["iterate", "--zeta", "1+0i", "--lambda", "1.5"])
        assert exc.value.code == 2

    def test_bad_literal_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["iterate", "--zeta", "frog"])
        assert exc.value.code == 2


class TestBasinCommand:
    def test_single_cell_summary(self, capsys):
        assert cli.main(["basin", "--viewport", "0.99:1.01:-0.01:0.01",
                         "--resolution", "1"]) == 0
        out = capsys.readouterr().out.strip()
        assert out == "cells=1 bell=1 separable=0 mixed=0 unresolved=0"

    def test_writes_ppm_and_csv(self, tmp_path, capsys):
        ppm = tmp_path / "chart.ppm"
        csv = tmp_path / "chart.csv"
        assert cli.main(["basin", "--resolution", "16",
                         "--out-ppm", str(ppm), "--out-csv", str(csv)]) == 0
        data = ppm.read_bytes()
        assert data.startswith(b"P6\n16 16\n255\n")
        assert len(data) == len(b"P6\n16 16\n255\n") + 16 * 16 * 3
        lines = csv.read_text().strip().split("\n")
        assert lines[0] == "re,im,label,steps"
        assert len(lines) == 1 + 256
        summary = capsys.readouterr().out
        assert summary.startswith("cells=256 ")

    def test_mixed_chart_counts(self, capsys):
        assert cli.main(["basin", "--resolution", "24",
                         "--lambda", "0.75"]) == 0
        out = capsys.readouterr().out.strip()
        fields = dict(kv.split("=") for kv in out.split())
        assert int(fields["bell"]) > 0
        assert int(fields["separable"]) > 0
        assert int(fields["mixed"]) > 0

    def test_thread_count_does_not_change_bytes(self, tmp_path):
        outs = []
        for threads in ("1", "3"):
            ppm = tmp_path / f"chart{threads}.ppm"
            assert cli.main(["basin", "--resolution", "20",
                             "--threads", threads,
                             "--out-ppm", str(ppm)]) == 0
            outs.append(ppm.read_bytes())
        assert outs[0] == outs[1]

    def test_io_failure_exit_code(self, tmp_path):
        bad = tmp_path / "missing" / "x.ppm"
        assert cli.main(["basin", "--resolution", "4",
                         "--out-ppm", str(bad)]) == 1


class TestCyclesCommand:
    def test_default_sweep(self, capsys):
        assert cli.main(["cycles", "--seeds", "30"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["cycles"]) == 3
        assert payload["unresolved_seed_count"] == 0
        periods = sorted(c["period"] for c in payload["cycles"])
        assert periods == [1, 2, 2]
        assert all(c["stable"] for c in payload["cycles"])
        assert all(len(c["eigenvalue_magnitudes"]) == 15
                   for c in payload["cycles"])
        diag = payload["mixed_partner_vs_reference"]
        assert abs(diag["trace_distance_to_reference"] - 0.25) < 1e-9
        assert abs(diag["corner_coherence"] - 0.25) < 1e-9

    def test_pure_seeds_find_two_cycles(self, capsys):
        assert cli.main(["cycles", "--seeds", "20", "--lambda", "1"]) == 0
        payload = json.loads(capsys.readouterr().out)
        periods = sorted(c["period"] for c in payload["cycles"])
        assert periods == [1, 2]

    def test_include_unstable_reports_fully_mixed_point(self, capsys):
        assert cli.main(["cycles", "--seeds", "10",
                         "--include-unstable"]) == 0
        payload = json.loads(capsys.readouterr().out)
        entry = payload["fully_mixed_fixed_point"]
        assert entry["period"] == 1
        assert max(entry["eigenvalue_magnitudes"]) < 1e-2
        coords = entry["states"][0]
        assert coords[0] == 1.0
        assert max(abs(c) for c in coords[1:]) < 1e-12


class TestOracleCheckCommand:
    def test_passes_and_is_deterministic(self, capsys):
        assert cli.main(["oracle-check", "--samples", "200"]) == 0
        first = capsys.readouterr().out
        assert "PASS" in first
        assert cli.main(["oracle-check", "--samples", "200"]) == 0
        assert capsys.readouterr().out == first

    def test_seed_changes_samples_not_verdict(self, capsys):
        assert cli.main(["oracle-check", "--samples", "100",
                         "--seed", "123"]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_rejects_bad_samples(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["oracle-check", "--samples", "0"])
        assert exc.value.code == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["iterate"])  # --zeta is required
    assert exc.value.code == 2


def test_json_floats_have_17_significant_digits():
    from purimap._jsonfmt import dumps
    text = dumps({"x": 1 / 3, "n": 7, "ok": True, "seq": [0.1, 2.5]})
    assert json.loads(text) == {"x": 1 / 3, "n": 7, "ok": True,
                                "seq": [0.1, 2.5]}
    assert "0.33333333333333331" in text
    assert "0.10000000000000001" in text
    with pytest.raises(ValueError):
        dumps({"bad": float("nan")})
