import json
import subprocess
import sys

import pytest

from qpositivity import cli
from qpositivity.errors import IdentityViolation


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines()]


def run_raw(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


class TestLandauCommand:
    def test_holds(self, capsys):
        code, recs = run_cli(capsys, "landau", "--a", "30,1", "--b", "15,10,6")
        assert code == 0
        (rec,) = recs
        assert rec["command"] == "landau"
        assert rec["status"] == "ok"
        assert rec["payload"]["holds"] is True
        assert rec["payload"]["witness"] is None

    def test_fails_with_witness(self, capsys):
        code, recs = run_cli(capsys, "landau", "--a", "1,1", "--b", "2")
        assert code == 0  # a failing verdict is an answer, not an error
        (rec,) = recs
        assert rec["status"] == "not-polynomial"
        assert rec["payload"]["witness"] == "1/2"
        assert rec["payload"]["min_value"] == -1

    def test_canonicalization_reported(self, capsys):
        _, recs = run_cli(capsys, "landau", "--a", "2,3", "--b", "3,1,1")
        assert recs[0]["payload"]["canonical_a"] == [2]
        assert recs[0]["payload"]["canonical_b"] == [1, 1]

    def test_degenerate_tuple(self, capsys):
        code, recs = run_cli(capsys, "landau", "--a", "5", "--b", "5")
        assert code == 0
        assert recs[0]["payload"]["degenerate"] is True
        assert recs[0]["payload"]["holds"] is True


class TestDpolyCommand:
    def test_central_gaussian(self, capsys):
        code, recs = run_cli(capsys, "dpoly", "--a", "2,1", "--b", "1,1,1", "--n", "2")
        assert code == 0
        payload = recs[0]["payload"]
        assert payload["coefficients"] == ["1", "1", "2", "1", "1"]
        assert payload["value_at_1"] == "6"
        assert payload["classical_ratio"] == "6"
        assert payload["q1_agrees"] is True

    def test_not_polynomial(self, capsys):
        code, recs = run_cli(capsys, "dpoly", "--a", "1,1", "--b", "2", "--n", "1")
        assert code == 0
        assert recs[0]["status"] == "not-polynomial"
        assert recs[0]["payload"]["smallest_failing_ell"] == 2

    def test_negative_coefficient_exits_2(self, capsys):
        code, recs = run_cli(capsys, "dpoly", "--a", "6,1,1", "--b", "5,3", "--n", "1")
        assert code == 2
        assert recs[0]["status"] == "negative-found"
        assert recs[0]["payload"]["coefficients"] == ["1", "-1", "1"]
        assert recs[0]["payload"]["negative_positions"] == [1]


class TestSweepCommand:
    def test_one_record_per_n(self, capsys):
        code, recs = run_cli(capsys, "sweep", "--a", "2", "--b", "1,1", "--n-max", "4")
        assert code == 0
        assert [rec["payload"]["n"] for rec in recs] == [1, 2, 3, 4]
        assert all(rec["payload"]["is_positive"] for rec in recs)
        assert recs[1]["payload"]["degree"] == 4

    def test_landau_failing_tuple_refused(self, capsys):
        code, recs = run_cli(capsys, "sweep", "--a", "1,1", "--b", "2", "--n-max", "5")
        assert code == 0
        (rec,) = recs
        assert rec["status"] == "not-polynomial"
        assert rec["payload"]["witness"] == "1/2"

    def test_full_flag_adds_coefficients(self, capsys):
        _, lean = run_cli(capsys, "sweep", "--a", "2", "--b", "1,1", "--n-max", "2")
        _, full = run_cli(capsys, "sweep", "--a", "2", "--b", "1,1", "--n-max", "2", "--full")
        assert "coefficients" not in lean[0]["payload"]
        assert full[1]["payload"]["coefficients"] == ["1", "1", "2", "1", "1"]

    def test_jobs_flag_gives_identical_records(self, capsys):
        args = ("sweep", "--a", "3", "--b", "2,1", "--n-max", "6", "--no-timing")
        _, seq = run_raw(capsys, *args, "--jobs", "1")
        _, par = run_raw(capsys, *args, "--jobs", "2")
        assert seq == par

    def test_csv_projection(self, capsys):
        code, out = run_raw(
            capsys, "sweep", "--a", "2", "--b", "1,1", "--n-max", "3", "--format", "csv"
        )
        lines = out.strip().splitlines()
        assert lines[0] == "n,degree,num_terms,min_coeff,is_positive"
        assert lines[1:] == ["1,1,2,1,True", "2,4,5,1,True", "3,9,10,1,True"]


class TestEnumerateCommand:
    def test_lists_tuples(self, capsys):
        code, recs = run_cli(
            capsys, "enumerate", "--r", "1", "--s", "2", "--sum-bound", "4", "--balanced"
        )
        assert code == 0
        pairs = [(tuple(r["payload"]["a"]), tuple(r["payload"]["b"])) for r in recs]
        assert pairs == [((2,), (1, 1)), ((3,), (2, 1)), ((4,), (3, 1))]

    def test_sweeping_each_tuple(self, capsys):
        code, recs = run_cli(
            capsys,
            "enumerate",
            "--r", "1", "--s", "2", "--sum-bound", "4", "--balanced",
            "--sweep-n", "3",
        )
        assert code == 0
        assert all(rec["payload"]["all_positive"] for rec in recs)
        assert [row["n"] for row in recs[0]["payload"]["per_n"]] == [1, 2, 3]

    def test_sum_bound_cap(self, capsys):
        code = cli.main(
            ["enumerate", "--r", "1", "--s", "2", "--sum-bound", "65", "--balanced"]
        )
        assert code == 1
        assert "capped" in capsys.readouterr().err


class TestIdentitiesCommand:
    def test_all_pass(self, capsys):
        code, recs = run_cli(capsys, "identities", "--max-n", "3")
        assert code == 0
        names = [rec["payload"]["identity"] for rec in recs]
        assert names == [
            "super-catalan-three-way",
            "b-recurrence",
            "chu-vandermonde",
            "double-chu-vandermonde",
            "q-binomial-theorem",
            "r-unit-shift",
        ]
        assert all(rec["status"] == "ok" for rec in recs)
        assert all(rec["payload"]["failures"] == [] for rec in recs)

    def test_max_n_zero_trivial_bases(self, capsys):
        code, recs = run_cli(capsys, "identities", "--max-n", "0")
        assert code == 0
        assert all(rec["status"] == "ok" for rec in recs)

    def test_cap(self, capsys):
        assert cli.main(["identities", "--max-n", "17"]) == 1
        capsys.readouterr()


class TestBorweinAndRpoly:
    def test_borwein(self, capsys):
        code, recs = run_cli(capsys, "borwein", "--n-max", "5")
        assert code == 0
        assert [rec["payload"]["n"] for rec in recs] == list(range(6))
        assert all(rec["payload"]["is_positive"] for rec in recs)

    def test_rpoly_unit(self, capsys):
        code, recs = run_cli(capsys, "rpoly", "--n", "1", "--m", "1", "--r", "1", "--s", "1")
        assert code == 0
        assert recs[0]["payload"]["coefficients"] == ["0", "1"]

    def test_rpoly_violation_exits_3(self, capsys, monkeypatch):
        def boom(n, m, r, s):
            raise IdentityViolation("forced for the test")

        monkeypatch.setattr(cli, "r_poly", boom)
        code, recs = run_cli(capsys, "rpoly", "--n", "2", "--m", "2", "--r", "2", "--s", "2")
        assert code == 3
        assert recs[0]["status"] == "identity-violation"


class TestUsageErrors:
    def test_missing_argument(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["landau", "--a", "2"])
        assert info.value.code == 1
        capsys.readouterr()

    def test_malformed_list(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["landau", "--a", "2,x", "--b", "1"])
        assert info.value.code == 1
        capsys.readouterr()

    def test_zero_entry(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["landau", "--a", "0", "--b", "1"])
        assert info.value.code == 1
        capsys.readouterr()

    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["frobnicate"])
        assert info.value.code == 1
        capsys.readouterr()


class TestDeterminismAndCaching:
    def test_no_timing_output_is_reproducible(self, capsys):
        args = ("sweep", "--a", "3", "--b", "2,1", "--n-max", "5", "--no-timing")
        _, first = run_raw(capsys, *args)
        _, second = run_raw(capsys, *args)
        assert first == second
        assert "elapsed_ms" not in first

    def test_timing_present_by_default(self, capsys):
        _, recs = run_cli(capsys, "landau", "--a", "2", "--b", "1,1")
        assert isinstance(recs[0]["elapsed_ms"], int)

    def test_out_dir_persists_and_replays(self, capsys, tmp_path, monkeypatch):
        args = (
            "sweep", "--a", "2", "--b", "1,1", "--n-max", "3",
            "--no-timing", "--out", str(tmp_path),
        )
        code, first = run_raw(capsys, *args)
        assert code == 0
        files = list(tmp_path.iterdir())
        assert len(files) == 1
        assert files[0].name.startswith("sweep-")

        def boom(_args):
            raise AssertionError("cache should have been used")

        monkeypatch.setitem(cli._DISPATCH, "sweep", boom)
        code, second = run_raw(capsys, *args)
        assert code == 0
        assert second == first

    def test_out_dir_distinguishes_inputs(self, capsys, tmp_path):
        base = ("sweep", "--a", "2", "--b", "1,1", "--out", str(tmp_path))
        run_raw(capsys, *base, "--n-max", "2")
        run_raw(capsys, *base, "--n-max", "3")
        assert len(list(tmp_path.iterdir())) == 2

    def test_replayed_exit_code_preserved(self, capsys, tmp_path):
        args = (
            "dpoly", "--a", "6,1,1", "--b", "5,3", "--n", "1",
            "--no-timing", "--out", str(tmp_path),
        )
        assert run_raw(capsys, *args)[0] == 2
        assert run_raw(capsys, *args)[0] == 2  # replayed from disk


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qpositivity", "landau", "--a", "2", "--b", "1,1"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    rec = json.loads(proc.stdout.splitlines()[0])
    assert rec["payload"]["holds"] is True
