import json
import os

import pytest

from kconj import cli, differentials, ktheory, rings, verify
from kconj.groups import build_group, parse_descriptor


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_present_su2(capsys):
    code, out, _ = run(capsys, "present", "SU(2)")
    assert code == 0
    assert "R(G) = Z[y1]" in out
    assert "K^0 = R(G)" in out
    assert "K^1 = R(G)·b[y1]" in out
    assert "K^0 = 1, K^1 = 1" in out


def test_present_json(capsys):
    code, out, _ = run(capsys, "present", "SU(3)", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["relations"] == ["b^2=0", "anticommute"]
    assert data["ranks"] == {"K0": 2, "K1": 2}
    assert data["generators"] == ["b[y1]", "b[y2]"]


def test_beta_adjoint(capsys):
    code, out, _ = run(capsys, "beta", "SU(2)", "y1^2+4*y1+3")
    assert code == 0
    assert "beta^Ad = (2*y1 + 4)*b[y1]" in out
    assert "forgetful = 4*b[y1]" in out


def test_beta_output_reparses(capsys):
    g = build_group(parse_descriptor("SU(2) x U(1)"))
    code, out, _ = run(capsys, "beta", "SU(2) x U(1)", "3*y1^2*t1^-1 - 2")
    assert code == 0
    line = next(l for l in out.splitlines() if l.startswith("beta^Ad = "))
    printed = line.removeprefix("beta^Ad = ")
    rho = rings.parse_element("3*y1^2*t1^-1 - 2", g.ring)
    assert ktheory.parse_kclass(printed, g) == ktheory.beta_ad(g, rho)


def test_diff_output_reparses(capsys):
    g = build_group(parse_descriptor("U(1)"))
    code, out, _ = run(capsys, "diff", "U(1)", "t1^-1")
    assert code == 0
    assert "d = -t1^-2*dt1" in out
    line = next(l for l in out.splitlines() if l.startswith("d = "))
    printed = line.removeprefix("d = ")
    assert differentials.parse_diffform(printed, g) == differentials.d(
        g, g.ring.gen("t1") ** -1
    )


def test_char_both_directions(capsys):
    code, out, _ = run(capsys, "char", "from-gen", "SU(2)", "y1+2")
    assert code == 0 and out.strip() == "x1_1 + x1_1^-1"
    code, out, _ = run(capsys, "char", "to-gen", "SU(2)", "x1_1^2 + 1 + x1_1^-2")
    assert code == 0 and out.strip() == "y1^2 + 4*y1 + 3"


def test_char_roundtrip_through_text(capsys):
    code, out, _ = run(capsys, "char", "from-gen", "U(2)", "y1*t1 + 2*t1")
    assert code == 0
    code, out2, _ = run(capsys, "char", "to-gen", "U(2)", out.strip())
    assert code == 0 and out2.strip() == "y1*t1 + 2*t1"


def test_verify_u1_window3(capsys):
    code, out, _ = run(capsys, "verify", "U(1)", "--window", "3", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    deficits = [
        rep["deficit"] for reps in data["windows"].values() for rep in reps
    ]
    assert deficits and all(d == 0 for d in deficits)


def test_verify_text_names_failed_invariant(capsys, monkeypatch):
    def failing(ctx):
        return verify.CheckResult("always-fails", "tests", False, "injected")

    monkeypatch.setattr(
        verify, "REGISTRY", verify.REGISTRY + (("always-fails", "tests", failing),)
    )
    code, out, err = run(capsys, "verify", "SU(2)", "--window", "2")
    assert code == 2
    assert "FAIL always-fails" in out
    assert "failed invariants: always-fails" in err


def test_verify_degree_filter(capsys):
    code, out, _ = run(capsys, "verify", "U(1)", "--window", "2", "--degree", "1")
    assert code == 0
    window_lines = [l for l in out.splitlines() if l.startswith("window ")]
    assert window_lines and all("degree 1" in l for l in window_lines)


def test_tor_table(capsys):
    code, out, _ = run(capsys, "tor", "SU(2) x U(1)")
    assert code == 0
    assert "degree   0: rank 1" in out
    assert "degree  -1: rank 2" in out
    assert "degree  -2: rank 1" in out
    code, out, _ = run(capsys, "tor", "T^3", "--json")
    data = json.loads(out)
    assert [r["rank"] for r in data["ranks"]] == [1, 3, 3, 1]
    assert data["ranks"][1]["parity"] == "odd"


def test_parse_error_exit_code_and_position(capsys):
    code, out, err = run(capsys, "beta", "SU(2)", "y1 + zz")
    assert code == 1
    assert "parse error" in err and "position 5" in err


def test_invalid_descriptor_exit_code(capsys):
    code, _, err = run(capsys, "present", "SO(3)")
    assert code == 1
    assert "invalid group descriptor" in err


def test_not_invariant_is_an_error(capsys):
    code, _, err = run(capsys, "char", "to-gen", "SU(2)", "x1_1")
    assert code == 1
    assert "error" in err


def test_report_dir_writes_csv_and_figures(tmp_path, capsys):
    out_dir = tmp_path / "report"
    code, _, _ = run(capsys, "verify", "U(1)", "--window", "2",
                     "--report-dir", str(out_dir))
    assert code == 0
    assert (out_dir / "verify_checks.csv").exists()
    assert (out_dir / "window_homology.csv").exists()
    assert (out_dir / "window_deficits.png").exists()
    header = (out_dir / "window_homology.csv").read_text().splitlines()[0]
    assert header == "suite,degree,rank_cycles,rank_boundaries,deficit"

    tor_dir = tmp_path / "tor"
    code, _, _ = run(capsys, "tor", "SU(3)", "--report-dir", str(tor_dir))
    assert code == 0
    assert (tor_dir / "tor_ranks.csv").exists()
    assert (tor_dir / "tor_ranks.png").exists()
    rows = (tor_dir / "tor_ranks.csv").read_text().splitlines()
    assert rows[0] == "degree,rank,parity"
    assert rows[1].startswith("0,1,")


def test_registry_covers_every_module_invariant():
    # every invariant a module declares must be registered in verify,
    # and nothing else may claim those names
    from kconj import characters, complexes, differentials, groups, intlinalg, ktheory, rings

    declared = []
    for module in (groups, rings, characters, complexes, intlinalg, ktheory, differentials):
        declared.extend(module.INVARIANT_CHECKS)
    assert len(declared) == len(set(declared))
    registered = verify.registered_names()
    assert len(registered) == len(set(registered))
    assert set(declared) == set(registered)
    assert len(registered) == len(declared)


def test_verify_runs_every_registered_check(capsys):
    code, out, _ = run(capsys, "verify", "SU(2)", "--window", "2")
    assert code == 0
    for name in verify.registered_names():
        assert name in out


def test_json_descriptor_accepted(capsys):
    code, out, _ = run(capsys, "present", '{"factors": ["SU(2)"], "torus_rank": 1}')
    assert code == 0
    assert "Z[y1, t1^±1]" in out
