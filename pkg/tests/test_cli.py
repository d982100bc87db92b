"""CLI tests: subcommands, exit codes, deterministic reports."""

import json

import pytest

from morphfreq.cli import main

CORPUS = "corpus"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestClassify:
    def test_fibonacci_pretty(self, capsys):
        code, out, _ = run(capsys, "classify", f"{CORPUS}/fibonacci.morph", "--pretty")
        assert code == 0
        assert "unbounded: a b" in out
        assert "k1=1" in out
        assert "primitive: yes" in out

    def test_ab_b_pretty(self, capsys):
        code, out, _ = run(capsys, "classify", f"{CORPUS}/ab_b.morph", "--pretty")
        assert code == 0
        assert "bounded: b" in out
        assert "unbounded: a" in out
        assert "primitive: no" in out

    def test_json_keys(self, capsys):
        code, out, _ = run(capsys, "classify", f"{CORPUS}/fibonacci.morph")
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"morphism", "classification", "letters", "factors",
                            "parameters", "version"}
        assert doc["classification"]["k1"] == 1

    def test_erasing_rule_exits_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.morph"
        bad.write_text("alphabet: a b\na -> a b\nb ->\n")
        code, _, err = run(capsys, "classify", str(bad))
        assert code == 1
        assert "line 3" in err

    def test_missing_file_exits_1(self, capsys):
        code, _, err = run(capsys, "classify", "no/such/file.morph")
        assert code == 1
        assert "error" in err


class TestLetters:
    def test_fibonacci(self, capsys):
        code, out, _ = run(capsys, "letters", f"{CORPUS}/fibonacci.morph", "--tol", "1e-6")
        assert code == 0
        doc = json.loads(out)
        alpha_a = doc["letters"]["frequencies"]["a"]["midpoint"]["decimal"]
        assert abs(alpha_a - 0.618034) < 1e-4
        assert doc["letters"]["method"] == "eigenvector"

    def test_thue_morse_half(self, capsys):
        code, out, _ = run(capsys, "letters", f"{CORPUS}/thue_morse.morph")
        assert code == 0
        doc = json.loads(out)
        for letter in ("a", "b"):
            iv = doc["letters"]["frequencies"][letter]
            assert abs(iv["midpoint"]["decimal"] - 0.5) < 1e-6

    def test_not_prolongable_start_exits_1(self, capsys):
        code, _, err = run(capsys, "letters", f"{CORPUS}/fibonacci.morph", "--start", "b")
        assert code == 1
        assert "b" in err

    def test_inconclusive_exits_2_with_intervals_printed(self, capsys, monkeypatch):
        # a starved bit budget stops the enclosure before it reaches tol
        monkeypatch.setenv("MORPHFREQ_MAX_BIGINT_BITS", "8")
        code, out, _ = run(
            capsys, "letters", f"{CORPUS}/fibonacci.morph", "--tol", "1e-12",
        )
        assert code == 2
        doc = json.loads(out)
        assert doc["letters"]["diagnostic"] == "inconclusive"
        assert doc["letters"]["frequencies"]["a"]["lo"]["decimal"] <= 0.619


class TestFactorFreq:
    def test_fibonacci_ab(self, capsys):
        code, out, _ = run(
            capsys, "factor-freq", f"{CORPUS}/fibonacci.morph",
            "--factor", "a b", "--tol", "1e-3",
        )
        assert code == 0
        doc = json.loads(out)
        rep = doc["factors"][0]
        assert rep["verdict"] == "converged"
        assert abs(rep["estimate"]["midpoint"]["decimal"] - 0.3820) < 1e-3

    def test_single_letter_consistent_with_letters(self, capsys):
        code, out, _ = run(
            capsys, "factor-freq", f"{CORPUS}/fibonacci.morph", "--factor", "a",
        )
        assert code == 0
        doc = json.loads(out)
        mid = doc["factors"][0]["estimate"]["midpoint"]["decimal"]
        assert abs(mid - 0.6180) < 1e-3

    def test_degenerate_support_exit_code(self, capsys):
        code, out, _ = run(
            capsys, "factor-freq", f"{CORPUS}/ab_b.morph", "--factor", "b b",
        )
        assert code == 3
        doc = json.loads(out)
        rep = doc["factors"][0]
        assert rep["verdict"] == "degenerate-support"
        assert rep["degenerate_alpha"] is True
        assert rep["estimate"]["midpoint"]["decimal"] > 0.99

    def test_level_cap_exit_code(self, capsys):
        code, out, _ = run(
            capsys, "factor-freq", f"{CORPUS}/fibonacci.morph",
            "--factor", "a b", "--tol", "1e-6", "--max-level", "3",
        )
        assert code == 2
        doc = json.loads(out)
        assert doc["factors"][0]["verdict"] == "level-cap-reached"

    def test_unknown_factor_letter_exits_1(self, capsys):
        code, _, err = run(
            capsys, "factor-freq", f"{CORPUS}/fibonacci.morph", "--factor", "a z",
        )
        assert code == 1
        assert "z" in err


class TestVerify:
    def test_fibonacci_small(self, capsys):
        code, out, _ = run(
            capsys, "verify", f"{CORPUS}/fibonacci.morph",
            "--max-len", "2", "--prefix", "100000",
        )
        assert code == 0
        doc = json.loads(out)
        assert all(entry["pass"] for entry in doc["factors"])
        factors = ["".join(entry["factor"]) for entry in doc["factors"]]
        assert factors == sorted(factors, key=lambda s: (len(s), s))

    def test_aba_b_includes_bounded_letter_factors(self, capsys):
        code, out, _ = run(
            capsys, "verify", f"{CORPUS}/aba_b.morph",
            "--max-len", "2", "--prefix", "100000",
        )
        assert code == 0
        doc = json.loads(out)
        assert ["".join(e["factor"]) for e in doc["factors"] if len(e["factor"]) == 1] == ["a", "b"]


class TestGenerate:
    def test_raw(self, capsys):
        code, out, _ = run(capsys, "generate", f"{CORPUS}/fibonacci.morph", "--n", "13")
        assert code == 0
        assert out == "abaababaabaab\n"

    def test_single_letter(self, capsys):
        code, out, _ = run(capsys, "generate", f"{CORPUS}/fibonacci.morph", "--n", "1")
        assert code == 0
        assert out == "a\n"

    def test_ab_b(self, capsys):
        code, out, _ = run(capsys, "generate", f"{CORPUS}/ab_b.morph", "--n", "5")
        assert code == 0
        assert out == "abbbb\n"

    def test_tokens_format(self, capsys):
        code, out, _ = run(
            capsys, "generate", f"{CORPUS}/fibonacci.morph", "--n", "3",
            "--format", "tokens",
        )
        assert out == "a b a\n"

    def test_lines_format(self, capsys):
        code, out, _ = run(
            capsys, "generate", f"{CORPUS}/fibonacci.morph", "--n", "3",
            "--format", "lines",
        )
        assert out == "a\nb\na\n"


class TestBigIntCap:
    def test_exceeding_cap_aborts_with_diagnostic(self, capsys, monkeypatch):
        # unreachable tolerance forces the level loop into 65-bit lengths
        monkeypatch.setenv("MORPHFREQ_MAX_BIGINT_BITS", "64")
        code, _, err = run(
            capsys, "factor-freq", f"{CORPUS}/fibonacci.morph",
            "--factor", "a b", "--tol", "1e-30", "--max-level", "400",
        )
        assert code == 1
        assert "64-bit cap" in err

    def test_default_cap_not_hit(self, capsys):
        code, _, _ = run(
            capsys, "factor-freq", f"{CORPUS}/fibonacci.morph", "--factor", "a b",
        )
        assert code == 0


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ("classify", f"{CORPUS}/fibonacci.morph"),
        ("letters", f"{CORPUS}/aba_b.morph", "--tol", "1e-4"),
        ("factor-freq", f"{CORPUS}/thue_morse.morph", "--factor", "a b",
         "--empirical", "10000"),
        ("verify", f"{CORPUS}/fibonacci.morph", "--max-len", "2", "--prefix", "10000"),
    ])
    def test_byte_identical_output(self, capsys, argv):
        code1, out1, _ = run(capsys, *argv)
        code2, out2, _ = run(capsys, *argv)
        assert code1 == code2
        assert out1 == out2
