import json

import pytest

from termmt.cli import main


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(path, text):
    path.write_text(text, encoding="utf-8", newline="")
    return path


def test_filter_table2(fixtures, tmp_path, capsys):
    out, rep = tmp_path / "out.tsv", tmp_path / "rep.tsv"
    code, _, _ = run(["filter", fixtures / "table2.tsv", "--src-lang", "mul", "--tgt-lang", "mul",
                      "-o", out, "--report", rep], capsys)
    assert code == 0
    assert out.read_text() == ""
    lines = rep.read_text().splitlines()
    assert lines[0].startswith("# termmt ") and "config=" in lines[0]
    assert len(lines[1:]) == 9
    assert [l.split("\t")[0] for l in lines[1:]] == [str(i) for i in range(9)]


def test_filter_idf_monotone(tmp_path, capsys):
    corpus = ["common filler"] * 2000
    corpus[0] += " unique"
    for k in range(1, 6):
        corpus[k] += " fairly"
    write(tmp_path / "corpus.txt", "\n".join(corpus) + "\n")
    write(tmp_path / "terms.tsv", "unique\tx1\nfairly\tx2\ncommon\tx3\n")
    kept = {}
    for thr in (5, 7):
        out = tmp_path / f"out{thr}.tsv"
        code, _, _ = run(["filter", tmp_path / "terms.tsv", "--corpus", tmp_path / "corpus.txt",
                          "--idf-threshold", thr, "--stemmer", "none", "-o", out], capsys)
        assert code == 0
        kept[thr] = [l.split("\t")[0] for l in out.read_text().splitlines()]
    assert kept[5] == ["unique", "fairly"]
    assert kept[7] == ["unique"]
    assert set(kept[7]) <= set(kept[5])


def test_idf_table_roundtrip(tmp_path, capsys):
    write(tmp_path / "corpus.txt", "a b\nb c\n")
    table = tmp_path / "idf.tsv"
    assert run(["idf", tmp_path / "corpus.txt", "--stemmer", "none", "-o", table], capsys)[0] == 0
    write(tmp_path / "terms.tsv", "a\tx\nb\ty\n")
    code, out, _ = run(["filter", tmp_path / "terms.tsv", "--idf-table", table, "--idf-threshold", "0.5"], capsys)
    assert code == 0 and out == "a\tx\n"


def test_missing_file(tmp_path, capsys):
    missing = tmp_path / "nope.tsv"
    code, _, err = run(["filter", missing], capsys)
    assert code == 3
    assert str(missing) in err


def test_parse_error_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.tsv"
    bad.write_bytes(b"flu\tgrippe\n\xff\tx\n")
    code, _, err = run(["filter", bad], capsys)
    assert code == 2
    assert "bad.tsv:2:" in err
    write(tmp_path / "notab.tsv", "flu grippe\n")
    assert run(["filter", tmp_path / "notab.tsv"], capsys)[0] == 2


def test_argparse_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["filter"])
    assert exc.value.code == 2


def test_select_first(fixtures, capsys):
    code, out, _ = run(["select", fixtures / "table3.tsv", "--strategy", "first"], capsys)
    assert code == 0
    assert out.splitlines() == [
        "disease outbreak\tapparition de maladie",
        "epidemiologist\tépidémiologistes",
        "wash your hands\tlavez-vous les mains",
        "benzoylperoxid\tDibenzoylperoxid",
        "alternativní medicína\tAlternativmedizin",
    ]


def test_select_alignment_requires_model(fixtures, capsys):
    code, _, err = run(["select", fixtures / "table3.tsv", "--strategy", "alignment"], capsys)
    assert code == 3 and "--model" in err


def test_align_and_select(tmp_path, capsys):
    src = ["the epidemiologist works", "an epidemiologist came", "the epidemiologist said"] * 5
    tgt = ["le épidémiologiste travaille", "un épidémiologiste venait", "le épidémiologiste dit"] * 5
    write(tmp_path / "s.txt", "\n".join(src) + "\n")
    write(tmp_path / "t.txt", "\n".join(tgt) + "\n")
    model = tmp_path / "model.tsv"
    code, _, _ = run(["align-train", "--src", tmp_path / "s.txt", "--tgt", tmp_path / "t.txt",
                      "--iterations", "5", "-o", model], capsys)
    assert code == 0 and model.read_text().startswith("#iterations=5")
    write(tmp_path / "terms.tsv", "epidemiologist\tépidémiologistes | épidémiologiste\n")
    code, out, _ = run(["select", tmp_path / "terms.tsv", "--strategy", "alignment", "--model", model], capsys)
    assert code == 0 and out == "epidemiologist\tépidémiologiste\n"


def test_align_line_mismatch(tmp_path, capsys):
    write(tmp_path / "s.txt", "a\nb\n")
    write(tmp_path / "t.txt", "x\n")
    assert run(["align-train", "--src", tmp_path / "s.txt", "--tgt", tmp_path / "t.txt"], capsys)[0] == 2


def test_recognize_and_annotate(tmp_path, capsys):
    terms = write(tmp_path / "terms.tsv", "infection\tинфекция\n")
    text = write(tmp_path / "in.txt", "infections result in mild symptoms\nnothing here\n")
    code, out, _ = run(["recognize", text, "--terms", terms, "--tgt-lang", "ru"], capsys)
    assert code == 0 and out == "0\t0\t1\t0\tинфекция\n"
    code, out, _ = run(["annotate", text, "--terms", terms, "--tgt-lang", "ru"], capsys)
    assert code == 0
    assert out.encode("utf-8") == (
        "infections|s инфекция|t result|w in|w mild|w symptoms|w\nnothing|w here|w\n").encode("utf-8")


def test_annotate_empty_collection(tmp_path, capsys):
    terms = write(tmp_path / "terms.tsv", "")
    text = write(tmp_path / "in.txt", "a b c\n")
    code, out, _ = run(["annotate", text, "--terms", terms], capsys)
    assert code == 0 and out == "a|w b|w c|w\n"


def test_annotate_rejects_separator(tmp_path, capsys):
    terms = write(tmp_path / "terms.tsv", "")
    text = write(tmp_path / "in.txt", "a b|c\n")
    assert run(["annotate", text, "--terms", terms], capsys)[0] == 2


def test_annotate_train_deterministic(tmp_path, capsys):
    src = ["the infections spread fast", "mild infections result"] * 20
    tgt = ["инфекция распространяется быстро", "легкие инфекции результат"] * 20
    write(tmp_path / "s.txt", "\n".join(src) + "\n")
    write(tmp_path / "t.txt", "\n".join(tgt) + "\n")
    model = tmp_path / "m.tsv"
    assert run(["align-train", "--src", tmp_path / "s.txt", "--tgt", tmp_path / "t.txt", "-o", model], capsys)[0] == 0
    base = ["annotate-train", "--src", tmp_path / "s.txt", "--tgt", tmp_path / "t.txt", "--model", model,
            "--rate", "0.5"]
    outs = []
    for k in range(2):
        o = tmp_path / f"a{k}.txt"
        assert run(base + ["--seed", "7", "-o", o], capsys)[0] == 0
        outs.append(o.read_bytes())
    assert outs[0] == outs[1]
    assert len(outs[0].splitlines()) == 40
    code, _, err = run(base, capsys)
    assert code == 3 and "--seed" in err


def test_evaluate_identity(tmp_path, capsys):
    rows = write(tmp_path / "eval.tsv",
                 "flu spreads in the city\tla grippe se propage en ville\tla grippe se propage en ville\n")
    side = write(tmp_path / "terms.tsv", "0\t0\t1\tgrippe\n")
    code, out, _ = run(["evaluate", rows, "--terms", side, "--tgt-lang", "fr", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["table"]["Accuracy"] == 1.0
    assert data["table"]["BLEU"] == 100.0
    assert data["table"]["1 - TERm"] == 1.0
    code, out, _ = run(["evaluate", rows, "--terms", side], capsys)
    assert code == 0 and "exact_accuracy=1.000000" in out


def test_coverage_cli(tmp_path, capsys):
    write(tmp_path / "s.txt", "flu cases\nno flu\nnothing\n")
    write(tmp_path / "t.txt", "cas de grippe\npas de grippe\nrien\n")
    terms = write(tmp_path / "terms.tsv", "flu\tgrippe\ncases\tcas\nfever\tfièvre\n")
    code, out, _ = run(["coverage", "--terms", terms, "--src", tmp_path / "s.txt", "--tgt", tmp_path / "t.txt",
                        "--tgt-lang", "fr", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)["metrics"]
    assert data["unique_total"] == 3 and data["unique_ge1"] == 2 and data["unique_ge10"] == 0


def test_config_file_precedence(tmp_path, capsys):
    terms = write(tmp_path / "terms.tsv", "infection\tинфекция\n")
    text = write(tmp_path / "in.txt", "infections result\n")
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_len": 2}))
    code, out, _ = run(["annotate", text, "--terms", terms, "--config", cfg], capsys)
    assert code == 0 and out == "infections|w result|w\n"
    code, out, _ = run(["annotate", text, "--terms", terms, "--config", cfg, "--max-len", "5"], capsys)
    assert out == "infections|s инфекция|t result|w\n"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(["annotate", text, "--terms", terms, "--config", cfg], capsys)[0] == 3
    cfg.write_text("{not json")
    assert run(["annotate", text, "--terms", terms, "--config", cfg], capsys)[0] == 3


def test_invalid_threshold_exit(tmp_path, capsys):
    terms = write(tmp_path / "terms.tsv", "a\tb\n")
    code, _, _ = run(["filter", terms, "--idf-threshold", "-1", "--corpus", terms], capsys)
    assert code in (3, 4)
