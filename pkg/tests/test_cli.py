import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from tesscurv.cli import main
from tesscurv.corpus import shipped_corpus_dir
from tesscurv.exchange import load

T2_TEXT = "tess v1 closed center=- radius=-\n0: 1 3\n1: 2 0\n2: 3 1\n3: 0 2\n"


def test_generate_writes_header(tmp_path, capsys):
    assert main(["generate", "--family", "platonic", "--name", "cube"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("tess v1 closed")
    path = tmp_path / "cube.tess"
    assert main(["generate", "--family", "platonic", "--name", "cube", "--out", str(path)]) == 0
    assert load(path).n_vertices == 8


def test_generate_kagome(tmp_path):
    path = tmp_path / "k.tess"
    assert main(["generate", "--family", "kagome", "--polygon", "6", "--radius", "4", "--out", str(path)]) == 0
    t = load(path)
    assert set(t.degrees[t.interior_mask].tolist()) == {4}


def test_generate_is_deterministic(tmp_path):
    a, b = tmp_path / "a.tess", tmp_path / "b.tess"
    for p in (a, b):
        assert main(["generate", "--family", "hyperbolic", "--p", "5", "--q", "4", "--radius", "4", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "--family", "hyperbolic", "--p", "5", "--q", "3", "--radius", "3"],
        ["generate", "--family", "hyperbolic", "--q", "3", "--radius", "3"],
        ["generate", "--family", "schedule", "--schedule", "5", "--radius", "3"],
        ["generate", "--family", "kagome", "--polygon", "7", "--radius", "3"],
    ],
)
def test_invalid_generator_spec_is_usage_error(argv, capsys):
    assert main(argv) == 2
    assert "invalid generator spec" in capsys.readouterr().err


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--family", "moebius"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["report"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--tol", "-1"])
    assert exc.value.code == 2


def test_unknown_section_is_usage_error(tmp_path):
    path = tmp_path / "c.tess"
    main(["generate", "--family", "platonic", "--name", "cube", "--out", str(path)])
    assert main(["report", str(path), "--sections", "topology"]) == 2


def test_report_json_is_deterministic(tmp_path):
    src = tmp_path / "h.tess"
    main(["generate", "--family", "hyperbolic", "--p", "7", "--q", "3", "--radius", "6", "--out", str(src)])
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert main(["report", str(src), "--seed", "5", "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    bundle = json.loads(outs[0])
    assert bundle["header"]["seed"] == 5
    assert bundle["header"]["input"] == "h.tess"
    tags = {row["tag"] for row in bundle["rows"]}
    assert {"GB", "CUT-LOCUS", "RECUR", "FUJIWARA-LOWER"} <= tags
    assert {row["status"] for row in bundle["rows"]} <= {"pass", "inapplicable"}


def test_report_csv(tmp_path, capsys):
    src = tmp_path / "c.tess"
    main(["generate", "--family", "platonic", "--name", "icosahedron", "--out", str(src)])
    capsys.readouterr()
    assert main(["report", str(src), "--format", "csv", "--sections", "curvature", "--seed", "3"]) == 0
    text = capsys.readouterr().out
    assert "# seed=3" in text
    assert "GB" in text


def test_report_missing_file_is_io_error(tmp_path):
    assert main(["report", str(tmp_path / "nope.tess")]) == 3


def test_verify_shipped_corpus(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "ok   hyperbolic-7-3-8" in out


def _copy_corpus(tmp_path):
    dst = tmp_path / "corpus"
    shutil.copytree(shipped_corpus_dir(), dst)
    return dst


def test_verify_planted_t2_fails(tmp_path, capsys):
    corpus = _copy_corpus(tmp_path)
    (corpus / "planted-t2.tess").write_text(T2_TEXT)
    assert main(["verify", str(corpus), "--sections", "curvature"]) == 1
    out = capsys.readouterr().out
    assert "FAIL planted-t2" in out
    assert "T2" in out


def test_verify_corrupt_file_is_io_error(tmp_path, capsys):
    corpus = _copy_corpus(tmp_path)
    (corpus / "cube.tess").write_text("tess v1 closed center=- radius=-\n0: 1 x\n")
    assert main(["verify", str(corpus), "--sections", "curvature"]) == 3
    assert "I/O error" in capsys.readouterr().err


def test_verify_digest_mismatch_fails(tmp_path, capsys):
    corpus = _copy_corpus(tmp_path)
    with open(corpus / "cube.tess", "a") as fh:
        fh.write("# edited\n")
    assert main(["verify", str(corpus), "--sections", "curvature"]) == 1
    assert "DIGEST" in capsys.readouterr().out


def test_verify_missing_directory(tmp_path):
    assert main(["verify", str(tmp_path / "none")]) == 3


def test_build_corpus_matches_shipped(tmp_path):
    out = tmp_path / "built"
    assert main(["build-corpus", str(out)]) == 0
    shipped = Path(shipped_corpus_dir())
    built = sorted(p.name for p in out.iterdir())
    assert built == sorted(p.name for p in shipped.iterdir() if p.suffix in (".tess", ".json"))
    for f in built:
        assert (out / f).read_bytes() == (shipped / f).read_bytes()


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "tesscurv", "generate", "--family", "platonic", "--name", "tetrahedron"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "tess v1 closed center=- radius=-"
