import pytest

from petrisynth import parse_lts, parse_net, parse_removal
from petrisynth.cli import main

from conftest import DEMO_TEXT

TRIANGLE_HS = """\
universe X0 X1 X2
set X0 X1
set X0 X2
set X1 X2
lambda 2
"""


@pytest.fixture()
def demo_path(tmp_path):
    path = tmp_path / "demo.lts"
    path.write_text(DEMO_TEXT)
    return str(path)


@pytest.fixture()
def hs_path(tmp_path):
    path = tmp_path / "tri.hs"
    path.write_text(TRIANGLE_HS)
    return str(path)


def test_check_negative(demo_path, capsys):
    assert main(["check", demo_path, "--property", "essp"]) == 1
    assert capsys.readouterr().out == "unsolvable essa x s1\n"


def test_check_positive_with_shrink(demo_path, capsys):
    assert main(["check", demo_path, "--property", "ssp", "--shrink"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("region ")
    assert out.count("region ") == 1


def test_synth_rg_verify_pipeline(demo_path, tmp_path, capsys):
    removal = tmp_path / "cut.rm"
    removal.write_text("remove state s3\n")
    fixed = tmp_path / "demo_no_s3.lts"
    assert main(["apply", demo_path, str(removal), "--out", str(fixed)]) == 0
    parsed = parse_lts(fixed.read_text())
    assert "s3" not in parsed.states

    net = tmp_path / "demo_no_s3.net"
    assert main(["synth", str(fixed), "--out", str(net)]) == 0
    parse_net(net.read_text())

    rg = tmp_path / "demo_no_s3.rg"
    assert main(["rg", str(net), "--out", str(rg)]) == 0
    parse_lts(rg.read_text())

    capsys.readouterr()
    assert main(["verify", str(fixed), str(net), "--relation", "realization"]) == 0
    assert capsys.readouterr().out == "ok\n"


def test_synth_fails_on_unimplementable(demo_path, capsys):
    assert main(["synth", demo_path]) == 1
    assert "unsolvable" in capsys.readouterr().out


def test_verify_negative(demo_path, tmp_path, capsys):
    net = tmp_path / "demo.net"
    assert main(["synth", demo_path, "--property", "ssp", "--out", str(net)]) == 0
    capsys.readouterr()
    assert main(["verify", demo_path, str(net), "--relation", "embedding"]) == 0
    assert main(["verify", demo_path, str(net), "--relation", "language"]) == 1


def test_rg_cap_exceeded(demo_path, tmp_path, capsys):
    net = tmp_path / "demo.net"
    main(["synth", demo_path, "--property", "ssp", "--out", str(net)])
    capsys.readouterr()
    assert main(["rg", str(net), "--cap", "5"]) == 1
    assert "cap exceeded" in capsys.readouterr().out


def test_repair_exact_and_budget(demo_path, tmp_path, capsys):
    out = tmp_path / "fix.txt"
    code = main(["repair", demo_path, "--mode", "event", "--property", "realization",
                 "--max-k", "2", "--out", str(out)])
    assert code == 0
    report = capsys.readouterr().out
    assert "remove event a" in report and "k=1" in report
    # the artifact is a plain removal file that apply can read back
    assert out.read_text() == "remove event a\n"
    assert main(["apply", demo_path, str(out)]) == 0

    capsys.readouterr()
    assert main(["repair", demo_path, "--mode", "state", "--property", "language",
                 "--max-k", "0"]) == 1
    assert "within budget" in capsys.readouterr().out


def test_repair_greedy(demo_path, capsys):
    assert main(["repair", demo_path, "--mode", "state", "--property", "language",
                 "--greedy"]) == 0
    out = capsys.readouterr().out
    assert "k=1" in out


def test_repair_requires_budget_or_greedy(demo_path, capsys):
    assert main(["repair", demo_path, "--mode", "state", "--property", "language"]) == 2
    assert "--max-k" in capsys.readouterr().err


def test_hs_and_gen_and_mappings(hs_path, tmp_path, capsys):
    assert main(["hs", hs_path]) == 0
    out = capsys.readouterr().out
    assert "hitting set: X0 X1" in out and "size=2" in out

    lts_path = tmp_path / "tri.lts"
    assert main(["gen", hs_path, "--family", "event", "--out", str(lts_path)]) == 0
    assert capsys.readouterr().out == "kappa=2\n"
    generated = parse_lts(lts_path.read_text())

    rm_path = tmp_path / "tri.rm"
    assert main(["map-fwd", hs_path, "--family", "event", "--z", "X0,X1",
                 "--out", str(rm_path)]) == 0
    removal = parse_removal(rm_path.read_text())
    assert removal.mode == "event"
    assert removal.items == frozenset({"X0", "X1"})

    fixed_path = tmp_path / "fixed.lts"
    assert main(["apply", str(lts_path), str(rm_path), "--out", str(fixed_path)]) == 0
    capsys.readouterr()
    assert main(["check", str(fixed_path), "--property", "both"]) == 0

    capsys.readouterr()
    assert main(["map-back", hs_path, str(rm_path), "--family", "event"]) == 0
    assert "hitting set: X0 X1" in capsys.readouterr().out


def test_hs_reports_unhittable(tmp_path, capsys):
    path = tmp_path / "bad.hs"
    path.write_text("universe a b\nset a b\nset # empty\nlambda 1\n")
    assert main(["hs", str(path)]) == 1
    assert "empty set" in capsys.readouterr().out


def test_format_errors_exit_2(hs_path, demo_path, capsys):
    assert main(["check", hs_path, "--property", "ssp"]) == 2
    assert capsys.readouterr().err != ""
    assert main(["hs", demo_path]) == 2
    with pytest.raises(SystemExit) as excinfo:
        main(["gen", hs_path, "--family", "nope"])
    assert excinfo.value.code == 2


def test_missing_file_exits_2(capsys):
    assert main(["check", "/nonexistent/x.lts", "--property", "ssp"]) == 2
    assert capsys.readouterr().err != ""


def test_stdout_artifact_when_no_out(demo_path, tmp_path, capsys):
    removal = tmp_path / "cut.rm"
    removal.write_text("remove event a\n")
    assert main(["apply", demo_path, str(removal)]) == 0
    out = capsys.readouterr().out
    parsed = parse_lts(out)
    assert "a" not in parsed.events
