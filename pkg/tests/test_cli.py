import csv
import io
import subprocess
import sys

import pytest

from autoeval import rs
from autoeval.cli import main
from autoeval.field import FieldContext
from autoeval.poly import DensePoly, write_poly


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestVerify:
    def test_ternary(self, capsys):
        code, out, _ = run(["verify", "--field", "p=3,m=5", "--degrees", "10,100", "--trials", "50",
                            "--seed", "7"], capsys)
        assert code == 0
        assert "m1         100/100" in out

    def test_extension(self, capsys):
        code, out, _ = run(["verify", "--field", "p=2,m=8,s=4", "--degrees", "0,1,30", "--trials", "5"], capsys)
        assert code == 0 and "ext_m2" in out

    def test_malformed_field(self, capsys):
        code, _, err = run(["verify", "--field", "p=3"], capsys)
        assert code == 2 and "usage error" in err

    def test_bad_divisor(self, capsys):
        assert run(["verify", "--field", "p=2,m=8,s=3"], capsys)[0] == 2

    def test_zero_trials(self, capsys):
        code, _, err = run(["verify", "--field", "p=3,m=5", "--trials", "0"], capsys)
        assert code == 0 and "warning" in err

    def test_argparse_errors_exit_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--degrees", "a,b"])
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            main(["bench", "--methods", "fast"])
        assert exc.value.code == 2


class TestBench:
    def rows(self, text):
        return list(csv.DictReader(io.StringIO(text)))

    def test_columns_and_values(self, capsys):
        code, out, _ = run(["bench", "--field", "p=3,m=5", "--degrees", "10,1000"], capsys)
        assert code == 0
        rows = self.rows(out)
        assert list(rows[0]) == ["p", "s", "m", "n", "method", "L", "predicted_mul", "measured_mul",
                                 "measured_add", "horner_mul", "wall_ns"]
        by = {(r["n"], r["method"]): r for r in rows}
        assert by[("10", "m1")]["predicted_mul"] == "9"
        assert by[("1000", "horner")]["measured_mul"] == "1000"
        assert all(int(r["measured_mul"]) <= int(r["predicted_mul"]) for r in rows)

    def test_binary_255(self, capsys):
        _, out, _ = run(["bench", "--field", "p=2,m=8", "--degrees", "255", "--methods", "m1"], capsys)
        row = self.rows(out)[0]
        assert (row["L"], row["predicted_mul"]) == ("4", "33")

    def test_deterministic_file_output(self, tmp_path, monkeypatch):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["bench", "--field", "p=2,m=8,s=2", "--degrees", "10,100,300", "--seed", "3"]
        assert main(args + ["--out", str(a)]) == 0
        monkeypatch.setenv("AUTOEVAL_THREADS", "4")
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_timing_fills_wall_clock(self, capsys):
        _, out, _ = run(["bench", "--field", "p=3,m=5", "--degrees", "100", "--methods", "m1", "--timing"],
                        capsys)
        assert int(self.rows(out)[0]["wall_ns"]) > 0

    def test_inapplicable_method_skipped(self, capsys):
        code, out, err = run(["bench", "--field", "p=3,m=5", "--degrees", "10", "--methods", "ext_m2,m1"],
                             capsys)
        assert code == 0 and "skipped" in err and len(self.rows(out)) == 1

    def test_unwritable_path(self, capsys, tmp_path):
        code, _, err = run(["bench", "--degrees", "10", "--out", str(tmp_path / "no" / "x.csv")], capsys)
        assert code == 1 and "cannot write" in err


class TestRS:
    def test_worstcase(self, capsys, tmp_path):
        out_csv = tmp_path / "cost.csv"
        code, out, _ = run(["rs", "--demo", "worstcase", "--words", "1", "--out", str(out_csv)], capsys)
        assert code == 0
        assert "6735 vs 8159" in out
        assert sum(line.startswith("S") for line in out.splitlines()) == 32
        text = out_csv.read_text().splitlines()
        assert text[0] == "stage,muls,adds"
        assert "automorphic_table_products,3570,0" in text

    def test_codewords(self, capsys):
        code, out, _ = run(["rs", "--demo", "codeword", "--words", "5"], capsys)
        assert code == 0 and "all syndromes zero: True" in out

    def test_random(self, capsys):
        code, out, _ = run(["rs", "--demo", "random", "--words", "3"], capsys)
        assert code == 0 and "agree on 96 syndromes: True" in out

    def test_input_file(self, capsys, tmp_path):
        ctx = rs.build_rs_context()
        path = tmp_path / "word.txt"
        with open(path, "w") as fh:
            rs.write_word(rs.worst_case_word(ctx, 0), fh)
        code, out, _ = run(["rs", "--input", str(path)], capsys)
        assert code == 0 and "6735 vs 8159" in out

    def test_words_must_be_positive(self, capsys):
        assert run(["rs", "--words", "0"], capsys)[0] == 2


class TestEval:
    def test_poly_file(self, capsys, tmp_path):
        F = FieldContext.get(3, 5)
        path = tmp_path / "f.poly"
        with open(path, "w") as fh:
            write_poly(DensePoly(F, [1, 2, 1, 0, 2, 1, 1, 0, 2, 0, 1]), fh)
        code, out, _ = run(["eval", "--poly", str(path)], capsys)
        assert code == 0
        assert "method=m1 L=1 predicted_mul=9 measured_mul=9" in out

    def test_missing_file(self, capsys):
        assert run(["eval", "--poly", "/nonexistent.poly"], capsys)[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "autoeval", "rs"], capture_output=True, text=True)
    assert res.returncode == 0 and "6735 vs 8159" in res.stdout
