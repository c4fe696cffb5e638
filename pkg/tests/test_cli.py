import io
import json
import subprocess
import sys

import pytest

from lagrange_puiseux import cli
from lagrange_puiseux.identity import VerificationReport
from lagrange_puiseux.rng import SplitMix64, random_rspecs
from lagrange_puiseux.series import PrecisionError


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    try:
        cfg = cli.parse_args(argv)
    except SystemExit as exc:
        return exc.code, "", ""
    code = cli.run_campaign(cfg, out, err)
    return code, out.getvalue(), err.getvalue()


class TestSplitMix64:
    def test_reference_vector(self):
        # published SplitMix64 outputs for seed 1234567
        rng = SplitMix64(1234567)
        assert [rng.next_u64() for _ in range(5)] == [
            6457827717110365317,
            3203168211198807973,
            9817491932198370423,
            4593380528125082431,
            16408922859458223821,
        ]

    def test_randint_range(self):
        rng = SplitMix64(7)
        draws = [rng.randint(-3, 3) for _ in range(2000)]
        assert set(draws) == set(range(-3, 4))

    def test_random_rspec_shape(self):
        for R in random_rspecs(5, 50, 2, 5, 3):
            assert R.r0 == 1
            assert 2 <= R.degree <= 5
            assert R.coeffs[-1] != 0
            assert all(abs(c) <= 3 for c in R.coeffs)

    def test_seeded(self):
        assert random_rspecs(42, 10, 1, 6, 3) == random_rspecs(42, 10, 1, 6, 3)
        assert random_rspecs(42, 10, 1, 6, 3) != random_rspecs(43, 10, 1, 6, 3)


class TestParseArgs:
    def test_verify(self):
        cfg = cli.parse_args(["verify", "--r", "1,1,1", "--e", "1", "--order", "8"])
        assert cfg.mode == "verify" and cfg.rspec().coeffs == (1, 1, 1) and cfg.order == 8

    def test_json_flag(self):
        cfg = cli.parse_args(["verify", "--r", "1,0,1/2", "--e", "2", "--order", "6", "--json"])
        assert cfg.json and cfg.e == 2
        assert [str(c) for c in cfg.rspec().coeffs] == ["1", "0", "1/2"]

    @pytest.mark.parametrize(
        "argv,flag",
        [
            (["verify", "--r", "0,1", "--e", "1", "--order", "4"], "r_0 must be nonzero"),
            (["verify", "--r", "1/0"], "--r"),
            (["verify", "--r", "1,x"], "--r"),
            (["verify", "--r", "1,1", "--e", "0"], "--e"),
            (["verify", "--r", "1,1", "--order", "-2"], "--order"),
            (["verify", "--r", "2,1", "--e", "2"], "--root"),
            (["verify", "--r", "4,1", "--e", "2", "--root", "3"], "--root"),
            (["random-verify", "--deg-min", "4", "--deg-max", "2"], "--deg-max"),
            (["random-verify", "--seed", "-1"], "--seed"),
        ],
    )
    def test_usage_errors(self, argv, flag, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.parse_args(argv)
        assert exc.value.code == cli.EXIT_USAGE
        assert flag in capsys.readouterr().err


class TestRunCampaign:
    def test_linear_collapse(self):
        code, out, _ = run(["verify", "--r", "1,1", "--e", "1", "--order", "10", "--json"])
        assert code == cli.EXIT_OK
        rep = json.loads(out)
        assert rep["lhs"] == rep["rhs"] == ["1"] + ["0"] * 10
        assert rep["equal"] is True and rep["first_mismatch"] is None

    def test_quadratic(self):
        code, out, _ = run(["verify", "--r", "1,1,1", "--e", "1", "--order", "6"])
        assert code == cli.EXIT_OK
        assert "lhs: 1, 0, -1," in out and "equal: yes" in out

    def test_invert_single_branch(self):
        code, out, _ = run(["invert", "--r", "1,2,1", "--order", "5", "--json"])
        doc = json.loads(out)
        assert code == 0
        assert doc["series"]["coeffs"] == ["1", "2", "5", "14", "42"]
        assert doc["power_sums"] == []

    def test_invert_ramified(self):
        code, out, _ = run(["invert", "--r", "1,1", "--e", "2", "--order", "4"])
        assert code == 0
        assert out.startswith("g(t), t = q^(1/2) = t + 1/2*t^2 + 1/8*t^3")
        assert sum(line.startswith("p_") for line in out.splitlines()) == 4

    def test_random_verify(self):
        argv = ["random-verify", "--cases", "25", "--deg-min", "2", "--deg-max", "5",
                "--e", "2", "--order", "8", "--seed", "42", "--json"]
        code, out, err = run(argv)
        assert code == cli.EXIT_OK
        lines = out.splitlines()
        assert len(lines) == 25
        assert all(json.loads(line)["equal"] for line in lines)
        assert "25/25" in err

    def test_reports_roundtrip(self):
        _, out, _ = run(["random-verify", "--cases", "4", "--e", "3", "--order", "5", "--seed", "9", "--json"])
        for line in out.splitlines():
            assert VerificationReport.from_json(line).to_json() == line

    def test_mismatch_exit_code(self, monkeypatch):
        real = cli.verify

        def skewed(R, e, N):
            rep = real(R, e, N)
            rhs = list(rep.rhs)
            rhs[-1] += 1
            return VerificationReport(rep.r, e, N, rep.lhs, tuple(rhs), False, N)

        monkeypatch.setattr(cli, "verify", skewed)
        code, out, _ = run(["verify", "--r", "1,1,1", "--order", "4", "--json"])
        assert code == cli.EXIT_MISMATCH
        assert json.loads(out)["first_mismatch"] == 4

    def test_precision_exit_code(self, monkeypatch):
        def boom(R, e, N):
            raise PrecisionError("synthetic")

        monkeypatch.setattr(cli, "verify", boom)
        code, _, err = run(["verify", "--r", "1,1,1", "--e", "2", "--order", "4"])
        assert code == cli.EXIT_INTERNAL
        assert "e(N+e+2) = 16" in err

    def test_parallel_matches_serial(self):
        argv = ["random-verify", "--cases", "6", "--e", "2", "--order", "5", "--seed", "3", "--json"]
        assert run(argv)[1] == run(argv + ["--jobs", "2"])[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lagrange_puiseux", "verify", "--r", "1,1", "--order", "3", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["equal"] is True
    bad = subprocess.run([sys.executable, "-m", "lagrange_puiseux", "verify", "--r", "0,1"],
                         capture_output=True, text=True, check=False)
    assert bad.returncode == 2
