import json

import pytest

from boundedratios.cli import main
from boundedratios.primitive import enumerate_primitives
from boundedratios.raylab import format_ratio


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr()


def test_rank_output(capsys):
    code, out = run(["rank", "--n", "3"], capsys)
    assert code == 0
    assert out.out.strip() == "rank=14 free=[156 256 356 456 345 346]"


def test_primitives_and_relations(capsys, tmp_path):
    code, out = run(["primitives", "--n", "3", "--out", str(tmp_path)], capsys)
    assert code == 0 and out.out.strip().endswith("count=18")
    assert len((tmp_path / "primitives_n3.txt").read_text().splitlines()) == 18
    code, out = run(["relations", "--n", "4"], capsys)
    assert code == 0 and "chains=32 equations=64" in out.out


def test_basis(capsys):
    code, out = run(["basis", "--n", "4"], capsys)
    assert code == 0 and "size=62 rank=62 formula=62 expected=62" in out.out


def test_facets_n3(capsys, tmp_path):
    code, out = run(["facets", "--n", "3", "--out", str(tmp_path)], capsys)
    assert code == 0
    lines = out.out.strip().splitlines()
    assert sum("outer={" in ln for ln in lines) == 16
    assert lines[-1].startswith("facets=16")
    assert (tmp_path / "hull_n3.H").read_text().startswith("H 20 16 ")


def test_build_f_and_exact_check(capsys, tmp_path):
    code, out = run(["build-f", "--n", "3", "--out", str(tmp_path)], capsys)
    assert code == 0 and "inequalities=16" in out.out
    fpath = tmp_path / "F3.H"
    assert (tmp_path / "F3.H.lambda").exists()
    good = format_ratio(enumerate_primitives(3)[0].vector())
    bad = format_ratio(-enumerate_primitives(3)[0].vector())
    (tmp_path / "r.txt").write_text(good + "\n")
    code, out = run(["check", "--n", "3", "--mode", "exact", "--f-file", str(fpath),
                     "--ratio-file", str(tmp_path / "r.txt")], capsys)
    assert code == 0 and "bounded: bounded (exact)" in out.out
    assert "extremal: extremal" in out.out
    (tmp_path / "b.txt").write_text(bad + "\n")
    code, out = run(["check", "--n", "3", "--mode", "exact", "--f-file", str(fpath),
                     "--ratio-file", str(tmp_path / "b.txt")], capsys)
    assert code == 1 and "bounded: unbounded (exact) witness=" in out.out


def test_check_sampled_deterministic(capsys, tmp_path):
    r = tmp_path / "ray1.txt"
    r.write_text("[1 3 6 8][1 4 5 8][1 4 6 7][2 3 5 8][2 3 6 7] / "
                 "[1 3 5 8][1 3 6 7][1 4 6 8][2 3 6 8][2 4 5 7]\n")
    argv = ["check", "--n", "4", "--ratio-file", str(r), "--mode", "sampled", "--k", "300",
            "--seed", "7", "--out", str(tmp_path / "a")]
    code, out = run(argv, capsys)
    assert code == 0
    assert "bounded: no-counterexample (sampled)" in out.out
    assert "primitive-cone: separation (verified=True)" in out.out
    argv[-1] = str(tmp_path / "b")
    run(argv, capsys)
    a = (tmp_path / "a" / "ratio_reports.json").read_text()
    b = (tmp_path / "b" / "ratio_reports.json").read_text()
    strip = lambda t: [dict(x, elapsed=0) for x in json.loads(t)]
    assert strip(a) == strip(b)


def test_search_n3(capsys):
    code, out = run(["search", "--n", "3"], capsys)
    assert code == 0 and out.out.startswith("status=conjecture-consistent")


def test_wsgraph(capsys):
    code, out = run(["wsgraph", "--n", "4"], capsys)
    assert code == 0 and "isomorphic: 2 4" in out.out


@pytest.mark.parametrize("argv", [["rank", "--n", "9"], ["nosuch"], ["verify-rays", "--n", "3"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1


def test_bad_inputs(capsys, tmp_path):
    code, _ = run(["check", "--n", "4", "--ratio-file", str(tmp_path / "missing.txt")], capsys)
    assert code == 1
    (tmp_path / "empty.txt").write_text("# nothing\n")
    code, _ = run(["check", "--n", "4", "--ratio-file", str(tmp_path / "empty.txt")], capsys)
    assert code == 1
    code, _ = run(["check", "--n", "4"], capsys)
    assert code == 1


def test_budget_abort(capsys):
    code, out = run(["build-f", "--n", "3", "--budget-seconds", "0.0001"], capsys)
    assert code == 2 and "resource abort" in out.err
