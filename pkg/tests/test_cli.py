"""Command-line behavior: exit codes, output formats, determinism."""

import random

import pytest

from hapaxprior.cli import main


SPEC_TEXT = """\
name=dutch-en
suffix=en
functions=inf,pl
map V(inf) inf
map V(pl) pl
"""


def write_spec(tmp_path):
    path = tmp_path / "class.spec"
    path.write_text(SPEC_TEXT)
    return str(path)


def write_corpus(tmp_path, pairs, name="corpus.tsv"):
    tags = {0: "V(inf)", 1: "V(pl)"}
    path = tmp_path / name
    path.write_text("".join(f"{form}\t{tags[fn]}\n" for form, fn in pairs))
    return str(path)


def crossval_pairs(n=120, seed=1):
    """Frequent types plus an alternating-function hapax tail."""
    rng = random.Random(seed)
    pairs = [("hebben", rng.randrange(2)) for _ in range(15)]
    pairs += [("kunnen", rng.randrange(2)) for _ in range(15)]
    pairs += [(f"rare{i}en", i % 2) for i in range(n - 30)]
    rng.shuffle(pairs)
    return pairs


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def data_lines(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


class TestExitCodes:
    def test_usage_errors_exit_1(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        corpus = write_corpus(tmp_path, [("lopen", 0), ("eten", 1)])
        cases = [
            ["nosuchcommand"],
            ["spectrum", "--corpus", corpus],  # missing --class-spec
            ["crossval", "--corpus", corpus, "--class-spec", spec, "--k", "1"],
            ["crossval", "--corpus", corpus, "--class-spec", spec, "--ratio", "inf"],
            ["crossval", "--corpus", corpus, "--class-spec", spec, "--ratio", "inf/xx"],
            ["figure", "--corpus", corpus, "--class-spec", spec, "--smooth-window", "4"],
            ["priors", "--corpus", corpus, "--class-spec", spec],  # no forms
            ["priors", "--corpus", corpus, "--class-spec", spec,
             "--form", "lopen", "--threshold", "0"],
            ["synth", "--n-types", "10", "--target-tokens", "5", "--out",
             str(tmp_path / "s.tsv")],  # infeasible
            ["synth", "--n-types", "10", "--target-tokens", "20"],  # out is stdout
        ]
        for argv in cases:
            code, out, err = run(capsys, *argv)
            assert code == 1, argv
            assert err.strip(), argv

    def test_data_errors_exit_2(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        bad = tmp_path / "bad.tsv"
        bad.write_text("only one field\n")
        nohapax = write_corpus(
            tmp_path, [("lopen", 0)] * 6 + [("eten", 1)] * 6, name="nohapax.tsv"
        )
        cases = [
            ["spectrum", "--corpus", str(tmp_path / "absent.tsv"), "--class-spec", spec],
            ["spectrum", "--corpus", str(bad), "--class-spec", spec],
            ["crossval", "--corpus", nohapax, "--class-spec", spec, "--k", "2"],
        ]
        for argv in cases:
            code, out, err = run(capsys, *argv)
            assert code == 2, argv
            assert err.strip(), argv

    def test_help_exits_0(self, capsys):
        assert run(capsys, "--help")[0] == 0
        assert run(capsys, "crossval", "--help")[0] == 0


class TestSpectrum:
    def test_summary_and_rows(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        corpus = write_corpus(
            tmp_path,
            [("lopen", 0), ("lopen", 1), ("eten", 0), ("kijken", 1), ("lopen", 0)],
        )
        code, out, err = run(capsys, "spectrum", "--corpus", corpus, "--class-spec", spec)
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("# hapaxprior spectrum ") and "seed=0" in lines[0]
        assert lines[1] == "# types=3 tokens=5 hapax_types=2 dropped=0"
        assert data_lines(out) == [
            "function,tokens,hapax_tokens",
            "inf,3,1",
            "pl,2,1",
        ]

    def test_out_file_matches_stdout(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        corpus = write_corpus(tmp_path, crossval_pairs())
        code, out, _ = run(capsys, "spectrum", "--corpus", corpus, "--class-spec", spec)
        assert code == 0
        target = tmp_path / "out.csv"
        assert main(["spectrum", "--corpus", corpus, "--class-spec", spec,
                     "--out", str(target)]) == 0
        capsys.readouterr()
        assert target.read_text() == out


class TestPriors:
    def test_frequent_form_first_function(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        pairs = [("lopen", 0)] * 92 + [("lopen", 1)] * 43
        pairs += [(f"zeldzaam{i}en", i % 2) for i in range(10)]
        corpus = write_corpus(tmp_path, pairs)
        code, out, _ = run(capsys, "priors", "--corpus", corpus, "--class-spec", spec,
                           "--form", "lopen")
        assert code == 0
        header, row = data_lines(out)
        assert header == "form,source,support,inf,pl"
        form, source, support, p_inf, p_pl = row.split(",")
        assert (form, source, support) == ("lopen", "backoff-form", "135")
        assert round(float(p_inf), 2) == 0.68
        assert float(p_inf) == pytest.approx(92 / 135, abs=1e-6)

    def test_unseen_form_uses_hapax_route(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        pairs = [("lopen", 0)] * 5 + [(f"r{i}en", i % 2) for i in range(4)]
        corpus = write_corpus(tmp_path, pairs)
        _, out, _ = run(capsys, "priors", "--corpus", corpus, "--class-spec", spec,
                        "--form", "nieuwen")
        row = data_lines(out)[1].split(",")
        assert row[1] == "backoff-hapax"
        assert float(row[3]) == pytest.approx(0.5)

    def test_forms_file_and_repeated_flags(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        corpus = write_corpus(tmp_path, [("lopen", 0), ("eten", 1), ("praten", 0)])
        forms_file = tmp_path / "forms.txt"
        forms_file.write_text("# comment\neten\npraten\n")
        _, out, _ = run(capsys, "priors", "--corpus", corpus, "--class-spec", spec,
                        "--form", "lopen", "--forms-file", str(forms_file))
        rows = data_lines(out)[1:]
        assert [r.split(",")[0] for r in rows] == ["lopen", "eten", "praten"]


class TestCrossvalAndReport:
    def test_csv_shape(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        corpus = write_corpus(tmp_path, crossval_pairs())
        code, out, _ = run(capsys, "crossval", "--corpus", corpus, "--class-spec", spec,
                           "--k", "5", "--seed", "3")
        assert code == 0
        lines = data_lines(out)
        assert lines[0] == ("run,n_inf,n_pl,omle,n1_inf,n1_pl,hmle,"
                            "n0_inf,n0_pl,e_o_inf,e_o_pl,e_h_inf,e_h_pl")
        assert len(lines) == 6
        assert [row.split(",")[0] for row in lines[1:]] == ["1", "2", "3", "4", "5"]
        ttests = [l for l in out.splitlines() if l.startswith("# ttest ")]
        assert len(ttests) == 2
        assert ttests[0].startswith("# ttest overall t=")
        assert ttests[1].startswith("# ttest hapax t=")
        assert " df=4 " in ttests[0]

    def test_report_equals_crossval_numbers(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        corpus = write_corpus(tmp_path, crossval_pairs())
        args = ["--corpus", corpus, "--class-spec", spec, "--k", "4", "--seed", "9"]
        _, csv_out, _ = run(capsys, "crossval", *args)
        _, table_out, _ = run(capsys, "report", *args)

        csv_rows = [line.split(",")[1:] for line in data_lines(csv_out)[1:]]
        csv_columns = {str(i + 1): row for i, row in enumerate(csv_rows)}

        table_lines = [l for l in table_out.splitlines() if not l.startswith("#")]
        runs = table_lines[0].split()[1:]
        assert runs == ["1", "2", "3", "4"]
        for i, line in enumerate(table_lines[1:]):
            cells = line.split()[1:]
            for run_id, cell in zip(runs, cells):
                assert cell == csv_columns[run_id][i]

        assert [l for l in csv_out.splitlines() if l.startswith("# ttest")] == [
            l for l in table_out.splitlines() if l.startswith("# ttest")
        ]

    def test_ratio_flag_changes_orientation(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        corpus = write_corpus(tmp_path, crossval_pairs())
        _, fwd, _ = run(capsys, "crossval", "--corpus", corpus, "--class-spec", spec,
                        "--k", "3", "--ratio", "inf/pl")
        _, rev, _ = run(capsys, "crossval", "--corpus", corpus, "--class-spec", spec,
                        "--k", "3", "--ratio", "pl/inf")
        assert "ratio=inf/pl" in fwd.splitlines()[0]
        assert "ratio=pl/inf" in rev.splitlines()[0]
        # omle column flips to the other function's share
        o_fwd = float(data_lines(fwd)[1].split(",")[3])
        o_rev = float(data_lines(rev)[1].split(",")[3])
        assert o_fwd + o_rev == pytest.approx(1.0)


class TestFigure:
    def test_tiny_corpus_hand_trace(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        corpus = write_corpus(tmp_path, [("eten", 0), ("eten", 1), ("lopen", 0)])
        code, out, _ = run(capsys, "figure", "--corpus", corpus, "--class-spec", spec,
                           "--smooth-window", "3")
        assert code == 0
        assert data_lines(out) == [
            "frequency,log_frequency,n_types,proportion,smoothed",
            "1,0.000000,1,1.000000,1.000000",
            "2,0.693147,1,0.500000,0.500000",
        ]

    def test_smoothed_column_is_running_median(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        pairs = []
        # frequencies 1..6 with controlled per-class proportions
        for f in range(1, 7):
            for t in range(3):
                form = f"w{f}x{t}en"
                pairs += [(form, 0 if (f + t) % 2 else 1)] * f
        corpus = write_corpus(tmp_path, pairs)
        _, out, _ = run(capsys, "figure", "--corpus", corpus, "--class-spec", spec,
                        "--smooth-window", "3")
        rows = [line.split(",") for line in data_lines(out)[1:]]
        props = [float(r[3]) for r in rows]
        smoothed = [float(r[4]) for r in rows]
        assert smoothed[0] == props[0] and smoothed[-1] == props[-1]
        for i in range(1, len(props) - 1):
            assert smoothed[i] == pytest.approx(sorted(props[i - 1 : i + 2])[1])


class TestSynth:
    def test_writes_corpus_truth_and_spec(self, tmp_path, capsys):
        out = tmp_path / "gen.tsv"
        spec_out = tmp_path / "gen.spec"
        code, _, err = run(
            capsys, "synth", "--n-types", "30", "--target-tokens", "120",
            "--p-high", "0.9", "--p-low", "0.2", "--seed", "6",
            "--out", str(out), "--spec-out", str(spec_out),
        )
        assert code == 0
        assert "120 tokens" in err
        assert (tmp_path / "gen.tsv.truth.csv").exists()
        body = out.read_text().splitlines()
        assert body[0].startswith("# hapaxprior synth ") and "seed=6" in body[0]
        assert len(body) == 121

        # the generated pair loads straight back into the pipeline
        code, out2, _ = run(capsys, "spectrum", "--corpus", str(out),
                            "--class-spec", str(spec_out))
        assert code == 0
        assert "# types=30 tokens=120" in out2

    def test_truth_out_flag(self, tmp_path, capsys):
        truth = tmp_path / "custom_truth.csv"
        code, _, _ = run(
            capsys, "synth", "--n-types", "5", "--target-tokens", "20",
            "--out", str(tmp_path / "g.tsv"), "--truth-out", str(truth),
        )
        assert code == 0
        assert truth.read_text().startswith("form,true_p_reference\n")


class TestDeterminismAndNonMutation:
    def test_repeat_invocations_byte_identical(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        corpus = write_corpus(tmp_path, crossval_pairs())
        for argv in (
            ["crossval", "--corpus", corpus, "--class-spec", spec, "--k", "5", "--seed", "11"],
            ["figure", "--corpus", corpus, "--class-spec", spec],
            ["report", "--corpus", corpus, "--class-spec", spec, "--k", "3", "--seed", "2"],
        ):
            a = tmp_path / "a.out"
            b = tmp_path / "b.out"
            assert main([*argv, "--out", str(a)]) == 0
            assert main([*argv, "--out", str(b)]) == 0
            capsys.readouterr()
            assert a.read_bytes() == b.read_bytes()

        synth_argv = ["synth", "--n-types", "25", "--target-tokens", "100",
                      "--p-high", "0.8", "--p-low", "0.3", "--seed", "5"]
        outs = []
        for name in ("s1.tsv", "s2.tsv"):
            path = tmp_path / name
            assert main([*synth_argv, "--out", str(path),
                         "--truth-out", str(tmp_path / (name + ".t"))]) == 0
            capsys.readouterr()
            outs.append((path.read_bytes(), (tmp_path / (name + ".t")).read_bytes()))
        assert outs[0] == outs[1]

    def test_inputs_not_mutated(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        corpus = write_corpus(tmp_path, crossval_pairs())
        before = (open(corpus, "rb").read(), open(spec, "rb").read())
        for argv in (
            ["spectrum", "--corpus", corpus, "--class-spec", spec],
            ["priors", "--corpus", corpus, "--class-spec", spec, "--form", "hebben"],
            ["crossval", "--corpus", corpus, "--class-spec", spec, "--k", "3"],
            ["figure", "--corpus", corpus, "--class-spec", spec],
            ["report", "--corpus", corpus, "--class-spec", spec, "--k", "3"],
        ):
            assert main([*argv, "--out", str(tmp_path / "scratch.out")]) == 0
            capsys.readouterr()
        assert (open(corpus, "rb").read(), open(spec, "rb").read()) == before
