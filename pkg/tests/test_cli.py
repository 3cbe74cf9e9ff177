"""Command-line surface: file format, exit codes, JSON reports, determinism."""

import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from lpsieve import Basis
from lpsieve.cli import main
from lpsieve.errors import ParseError
from lpsieve.instances import emit_instance, load_instance, parse_instance


INSTANCE = """# comment line
dim: 3
3 1 0
1 4 1
0 2 5
t: 1/2 1/3 2/5
"""


@pytest.fixture
def inst_file(tmp_path):
    f = tmp_path / "inst.txt"
    f.write_text(INSTANCE)
    return f


def run_main(args, capsys):
    code = main([str(a) for a in args])
    out = capsys.readouterr().out
    return code, out


class TestInstanceFormat:
    def test_parse(self, inst_file):
        inst = load_instance(inst_file)
        assert inst.basis.dim == 3
        assert inst.basis.columns[0] == (3, 1, 0)
        assert inst.target == (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5))
        assert len(inst.content_hash) == 64

    def test_round_trip_exact(self):
        B = Basis([[3, 1], [1, 4]])
        t = (Fraction(-7, 3), Fraction(2))
        text = emit_instance(B, t)
        inst = parse_instance(text)
        assert inst.basis.columns == B.columns
        assert inst.target == t

    def test_zero_denominator_diagnostics(self):
        with pytest.raises(ParseError) as ei:
            parse_instance("dim: 2\n1 0\n1/0 1\n")
        assert ei.value.line == 3

    def test_wrong_dim(self):
        with pytest.raises(ParseError):
            parse_instance("dim: 2\n1 0 3\n0 1\n")


class TestExitCodes:
    def test_reduce_ok(self, inst_file, capsys):
        code, out = run_main(["reduce", inst_file], capsys)
        assert code == 0
        assert "dim: 3" in out

    def test_reduce_identity_fixed_point(self, tmp_path, capsys):
        f = tmp_path / "id.txt"
        f.write_text("dim: 2\n1 0\n0 1\n")
        code, out = run_main(["reduce", f], capsys)
        assert code == 0
        assert parse_instance(out).basis.columns == Basis.identity(2).columns

    def test_parse_error_is_2(self, tmp_path, capsys):
        f = tmp_path / "bad.txt"
        f.write_text("dim: 2\n1/0 0\n0 1\n")
        assert run_main(["reduce", f], capsys)[0] == 2

    def test_rank_error_is_3(self, tmp_path, capsys):
        f = tmp_path / "sing.txt"
        f.write_text("dim: 2\n1 2\n2 4\n")
        assert run_main(["reduce", f], capsys)[0] == 3

    def test_missing_target_is_2(self, tmp_path, capsys):
        f = tmp_path / "nt.txt"
        f.write_text("dim: 2\n1 0\n0 1\n")
        assert run_main(["cvp", f, "--p", "2"], capsys)[0] == 2

    def test_guard_is_5(self, capsys):
        code, _ = run_main(["cover", "--mode", "grid-cover", "--n", "8", "--a", "1"], capsys)
        assert code == 5


class TestSvpCommand:
    def test_z4_linf_norm_one(self, tmp_path, capsys):
        f = tmp_path / "z4.txt"
        f.write_text("dim: 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n")
        code, out = run_main(["svp", f, "--p", "inf", "--seed", "0", "--retries", "2"], capsys)
        assert code == 0
        rep = json.loads(out)
        assert rep["norm"] == 1.0

    def test_oracle_flag(self, inst_file, capsys):
        code, out = run_main(
            ["svp", inst_file, "--p", "inf", "--seed", "1", "--retries", "2", "--oracle"],
            capsys,
        )
        rep = json.loads(out)
        assert rep["oracle_value"] == 3.0
        assert rep["ratio"] >= 1.0

    def test_report_fields(self, inst_file, capsys):
        _, out = run_main(["svp", inst_file, "--p", "2", "--seed", "0", "--retries", "2"], capsys)
        rep = json.loads(out)
        for key in ("coeffs", "coords", "norm", "mu_used", "seed", "caps",
                    "cap_bound", "instance_hash", "epsilon"):
            assert key in rep

    def test_low_p_routing(self, inst_file, capsys):
        code, out = run_main(
            ["svp", inst_file, "--p", "1", "--seed", "0", "--retries", "1"], capsys
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["extras"]["a_eps"] == pytest.approx(1057.7947669259263)


class TestCvpCommand:
    def test_target_in_lattice(self, tmp_path, capsys):
        B = Basis([[3, 1], [1, 4]])
        f = tmp_path / "hit.txt"
        f.write_text(emit_instance(B, B.multiply([2, -1])))
        code, out = run_main(["cvp", f, "--p", "2", "--seed", "0"], capsys)
        assert code == 0
        assert json.loads(out)["norm"] == 0.0

    def test_batch_mode(self, tmp_path, capsys):
        B = Basis([[3, 1], [1, 4]])
        for i in range(3):
            (tmp_path / f"i{i}.txt").write_text(emit_instance(B, (Fraction(i, 3), Fraction(1, 2))))
        code, out = run_main(
            ["cvp", tmp_path, "--p", "2", "--seed", "0", "--retries", "1"], capsys
        )
        assert code == 0
        lines = [json.loads(l) for l in out.strip().splitlines()]
        assert len(lines) == 3
        assert all("instance" in rec for rec in lines)


class TestCoverCommand:
    def test_a_eps_pinned_constants(self, capsys):
        code, out = run_main(["cover", "--mode", "a-eps", "--eps", "0.401"], capsys)
        assert code == 0
        rep = json.loads(out)
        assert rep["a_eps_linf"] == pytest.approx(168.652069, abs=1e-4)
        assert rep["a_eps_l1"] == pytest.approx(59.1769, abs=1e-3)

    def test_exponent_linf_decreasing(self, capsys):
        code, out = run_main(
            ["cover", "--mode", "exponent-linf", "--a", "1,2,4,8,16"], capsys
        )
        assert code == 0
        rows = [json.loads(l) for l in out.strip().splitlines()]
        vals = [r["exponent"] for r in rows]
        assert all(x > y for x, y in zip(vals, vals[1:]))

    def test_grid_cover_verified(self, capsys):
        code, out = run_main(["cover", "--mode", "grid-cover", "--n", "2", "--a", "0.5"], capsys)
        assert code == 0
        rep = json.loads(out)
        assert rep["verified"] is True
        assert rep["centers"] >= 1


class TestDeterminism:
    def test_byte_identical_json(self, inst_file, capsys):
        args = ["svp", inst_file, "--p", "inf", "--seed", "7", "--retries", "2"]
        _, out1 = run_main(args, capsys)
        _, out2 = run_main(args, capsys)
        assert out1 == out2

    def test_console_script_entry(self, inst_file):
        # the subprocess path must agree byte-for-byte with the in-process path
        cmd = [sys.executable, "-m", "lpsieve.cli", "svp", str(inst_file),
               "--p", "inf", "--seed", "7", "--retries", "2"]
        r1 = subprocess.run(cmd, capture_output=True, text=True)
        r2 = subprocess.run(cmd, capture_output=True, text=True)
        assert r1.returncode == 0
        assert r1.stdout == r2.stdout
