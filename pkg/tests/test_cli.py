import json

import pytest

from multigleu.cli import (
    EXIT_DATA,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    load_corpus,
    main,
)
from multigleu.cli import CorpusFormatError


def write(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def corpus(tmp_path):
    src = write(
        tmp_path / "src.txt",
        ["he go to school", "she eat apple", "they is happy"],
    )
    hyp = write(
        tmp_path / "hyp.txt",
        ["he goes to school", "she eats an apple", "they are happy"],
    )
    ref1 = write(
        tmp_path / "ref1.txt",
        ["he goes to school", "she eats an apple", "they are happy"],
    )
    ref2 = write(
        tmp_path / "ref2.txt",
        ["he is going to school", "", "they seem happy"],
    )
    return {"src": src, "hyp": hyp, "ref1": ref1, "ref2": ref2, "dir": tmp_path}


def run_score(corpus, tmp_path, *extra):
    out = tmp_path / "out"
    code = main(
        [
            "score",
            "--source",
            corpus["src"],
            "--hypothesis",
            corpus["hyp"],
            "--ref",
            corpus["ref1"],
            "--ref",
            corpus["ref2"],
            "--output",
            str(out),
            *extra,
        ]
    )
    return code, out.read_bytes() if out.exists() else b""


class TestLoadCorpus:
    def test_full_coverage(self, corpus):
        segments = load_corpus(corpus["src"], corpus["hyp"], [corpus["ref1"]])
        assert len(segments) == 3
        assert all(len(s.references) == 1 for s in segments)

    def test_partial_second_reference(self, corpus):
        segments = load_corpus(
            corpus["src"], corpus["hyp"], [corpus["ref1"], corpus["ref2"]]
        )
        assert [len(s.references) for s in segments] == [2, 1, 2]

    def test_line_count_mismatch_names_files(self, corpus, tmp_path):
        short = write(tmp_path / "short.txt", ["only one line"])
        with pytest.raises(CorpusFormatError) as err:
            load_corpus(corpus["src"], corpus["hyp"], [short])
        assert "short.txt" in str(err.value)
        assert "1 lines" in str(err.value)
        assert "3 lines" in str(err.value)

    def test_invalid_utf8_reports_byte_offset(self, corpus, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_bytes(b"fine line\nbroken \xff here\nlast\n")
        with pytest.raises(CorpusFormatError) as err:
            load_corpus(corpus["src"], corpus["hyp"], [str(bad)])
        assert "byte offset 17" in str(err.value)

    def test_whitespace_only_reference_treated_as_missing(self, corpus, tmp_path):
        ref = write(tmp_path / "blankish.txt", ["he goes to school", "   ", "x"])
        segments = load_corpus(corpus["src"], corpus["hyp"], [ref])
        assert [len(s.references) for s in segments] == [1, 0, 1]


class TestScoreCommand:
    def test_json_report_structure(self, corpus, tmp_path):
        code, payload = run_score(corpus, tmp_path)
        assert code == EXIT_OK
        report = json.loads(payload)
        assert report["version"]
        assert set(report["corpus"]) == {
            "select_best",
            "simple_average",
            "weighted_average",
            "merged",
            "single_ref",
        }
        assert report["n_segments"] == 3
        assert report["n_skipped"] == 0
        # first segment hypothesis == ref1, so select-best and merged hit 1.0
        assert report["corpus"]["select_best"]["score"] >= report["corpus"]["simple_average"]["score"]

    def test_six_decimal_formatting(self, corpus, tmp_path):
        code, payload = run_score(corpus, tmp_path, "--strategy", "merged")
        assert code == EXIT_OK
        text = payload.decode()
        assert '"score": 1.000000' in text or '"score": 0.' in text
        for token in ('"score": ',):
            start = text.index(token) + len(token)
            digits = text[start : text.index("\n", start)].rstrip(",")
            whole, frac = digits.split(".")
            assert len(frac) == 6

    def test_byte_determinism(self, corpus, tmp_path):
        _, first = run_score(corpus, tmp_path, "--per-segment")
        _, second = run_score(corpus, tmp_path, "--per-segment")
        assert first == second

    def test_single_reference_equivalence(self, corpus, tmp_path):
        out = tmp_path / "single-out"
        code = main(
            [
                "score",
                "--source",
                corpus["src"],
                "--hypothesis",
                corpus["hyp"],
                "--ref",
                corpus["ref1"],
                "--output",
                str(out),
            ]
        )
        assert code == EXIT_OK
        report = json.loads(out.read_bytes())
        scores = {report["corpus"][k]["score"] for k in report["corpus"]}
        assert len(scores) == 1

    def test_tsv_corpus_summary(self, corpus, tmp_path):
        code, payload = run_score(corpus, tmp_path, "--format", "tsv")
        assert code == EXIT_OK
        lines = payload.decode().splitlines()
        assert lines[0] == "strategy\tscore\tn_segments\tn_skipped"
        assert len(lines) == 6  # header + four strategies + single_ref

    def test_tsv_per_segment(self, corpus, tmp_path):
        code, payload = run_score(
            corpus, tmp_path, "--format", "tsv", "--per-segment"
        )
        assert code == EXIT_OK
        lines = payload.decode().splitlines()
        assert lines[0].startswith("index\tn_references\t")
        assert len(lines) == 4  # header + 3 segments

    def test_char_mode(self, tmp_path):
        src = write(tmp_path / "s", ["他去学校", "我吃苹果"])
        hyp = write(tmp_path / "h", ["他去了学校", "我吃了苹果"])
        ref = write(tmp_path / "r", ["他去了学校", "我吃了一个苹果"])
        out = tmp_path / "o"
        code = main(
            [
                "score",
                "--source", src,
                "--hypothesis", hyp,
                "--ref", ref,
                "--mode", "char",
                "--strategy", "merged",
                "--output", str(out),
            ]
        )
        assert code == EXIT_OK
        report = json.loads(out.read_bytes())
        assert 0.0 < report["corpus"]["merged"]["score"] <= 1.0

    def test_bootstrap_deterministic(self, corpus, tmp_path):
        extra = ["--bootstrap", "200", "--seed", "7", "--compare", "merged:average"]
        _, first = run_score(corpus, tmp_path, *extra)
        _, second = run_score(corpus, tmp_path, *extra)
        assert first == second
        report = json.loads(first)
        assert report["bootstrap"]["iterations"] == 200
        assert report["bootstrap"]["seed"] == 7
        assert 0.0 <= float(report["bootstrap"]["p_value"]) <= 1.0

    def test_jobs_do_not_change_output(self, corpus, tmp_path):
        _, serial = run_score(corpus, tmp_path, "--per-segment")
        _, parallel = run_score(corpus, tmp_path, "--per-segment", "--jobs", "2")
        assert serial == parallel

    def test_stdout_default(self, corpus, capsysbinary):
        code = main(
            [
                "score",
                "--source", corpus["src"],
                "--hypothesis", corpus["hyp"],
                "--ref", corpus["ref1"],
            ]
        )
        assert code == EXIT_OK
        payload = capsysbinary.readouterr().out
        assert json.loads(payload)["n_segments"] == 3


class TestBleuMetric:
    def test_bleu_matches_gleu_with_source_set_to_reference(self, tmp_path):
        # on single-reference inputs, BLEU == GLEU when S is the reference
        src = write(tmp_path / "s", ["the cat sat on mat", "dogs runs fast"])
        hyp = write(tmp_path / "h", ["the cat sat on the mat", "the dog runs fast"])
        ref = write(tmp_path / "r", ["the cat sat on the mat", "the dog runs quickly"])
        out_bleu = tmp_path / "ob"
        out_gleu = tmp_path / "og"
        assert (
            main(
                [
                    "score",
                    "--source", src,
                    "--hypothesis", hyp,
                    "--ref", ref,
                    "--metric", "bleu",
                    "--output", str(out_bleu),
                ]
            )
            == EXIT_OK
        )
        assert (
            main(
                [
                    "score",
                    "--source", ref,  # source := the reference file
                    "--hypothesis", hyp,
                    "--ref", ref,
                    "--strategy", "merged",
                    "--output", str(out_gleu),
                ]
            )
            == EXIT_OK
        )
        bleu = json.loads(out_bleu.read_bytes())["corpus"]["bleu"]["score"]
        gleu = json.loads(out_gleu.read_bytes())["corpus"]["merged"]["score"]
        assert bleu == pytest.approx(gleu, abs=1e-12)


class TestCurveCommand:
    def test_tsv_one_row_per_k(self, corpus, tmp_path):
        out = tmp_path / "curve.tsv"
        code = main(
            [
                "curve",
                "--source", corpus["src"],
                "--hypothesis", corpus["hyp"],
                "--ref", corpus["ref1"],
                "--ref", corpus["ref2"],
                "--k-max", "3",
                "--format", "tsv",
                "--output", str(out),
            ]
        )
        assert code == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == "k\tselect_best\tsimple_average\tweighted_average\tmerged"
        assert len(lines) == 4
        k1 = lines[1].split("\t")
        assert len(set(k1[1:])) == 1  # strategies coincide at k=1

    def test_permuted_curve_deterministic(self, corpus, tmp_path):
        args = [
            "curve",
            "--source", corpus["src"],
            "--hypothesis", corpus["hyp"],
            "--ref", corpus["ref1"],
            "--ref", corpus["ref2"],
            "--k-max", "2",
            "--permute-refs",
            "--trials", "3",
            "--seed", "11",
        ]
        out1, out2 = tmp_path / "c1", tmp_path / "c2"
        assert main([*args, "--output", str(out1)]) == EXIT_OK
        assert main([*args, "--output", str(out2)]) == EXIT_OK
        assert out1.read_bytes() == out2.read_bytes()


class TestExitCodes:
    def test_usage_unknown_flag(self, corpus):
        assert main(["score", "--nonsense"]) == EXIT_USAGE

    def test_usage_bad_value(self, corpus, tmp_path):
        code, _ = run_score(corpus, tmp_path, "--tau", "-2.0")
        assert code == EXIT_USAGE

    def test_usage_bootstrap_needs_seed_and_compare(self, corpus, tmp_path):
        code, _ = run_score(corpus, tmp_path, "--bootstrap", "100")
        assert code == EXIT_USAGE

    def test_usage_permute_needs_seed(self, corpus):
        assert (
            main(
                [
                    "curve",
                    "--source", corpus["src"],
                    "--hypothesis", corpus["hyp"],
                    "--ref", corpus["ref1"],
                    "--k-max", "2",
                    "--permute-refs",
                ]
            )
            == EXIT_USAGE
        )

    def test_validation_mismatched_lines(self, corpus, tmp_path):
        short = write(tmp_path / "short.txt", ["one line"])
        code = main(
            [
                "score",
                "--source", corpus["src"],
                "--hypothesis", corpus["hyp"],
                "--ref", short,
            ]
        )
        assert code == EXIT_DATA

    def test_validation_no_references_anywhere(self, corpus, tmp_path):
        empty_refs = write(tmp_path / "empty.txt", ["", "", ""])
        code = main(
            [
                "score",
                "--source", corpus["src"],
                "--hypothesis", corpus["hyp"],
                "--ref", empty_refs,
            ]
        )
        assert code == EXIT_DATA

    def test_io_missing_file(self, corpus):
        code = main(
            [
                "score",
                "--source", "/nonexistent/path.txt",
                "--hypothesis", corpus["hyp"],
                "--ref", corpus["ref1"],
            ]
        )
        assert code == EXIT_IO

    def test_help_exits_zero(self):
        assert main(["--help"]) == 0
