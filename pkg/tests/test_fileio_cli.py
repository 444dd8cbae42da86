import json

import pytest

from cmtop import fixtures
from cmtop.cli import main
from cmtop.complexes import are_isomorphic
from cmtop.fileio import (
    FormatError,
    format_complex,
    format_crossed_module,
    format_group,
    load_complex,
    load_crossed_module,
    load_group,
    parse_complex,
    parse_crossed_module,
    parse_group,
)


def test_group_round_trip(tmp_path):
    for name in ("z2", "z6", "s3", "k4"):
        g = fixtures.group(name)
        path = tmp_path / f"{name}.grp"
        path.write_text(format_group(g))
        back = load_group(path)
        assert back.order == g.order
        assert (back.table == g.table).all()


def test_group_parse_rejects_bad_files():
    with pytest.raises(FormatError, match="expected header"):
        parse_group("nope 2\n0 1\n1 0")
    with pytest.raises(FormatError, match="identity"):
        parse_group("group g 2\n1 0\n0 1")  # 0 is not the identity
    with pytest.raises(FormatError, match="expected 2 entries"):
        parse_group("group g 2\n0 1 1\n1 0")
    with pytest.raises(FormatError, match="associativity|inverse|closed"):
        parse_group("group g 3\n0 1 2\n1 0 0\n2 0 0")


def test_crossed_module_round_trip(tmp_path):
    for name in ("id_z3", "conj_z2z2", "z4_to_z2", "trivh_s3"):
        cm = fixtures.crossed_module(name)
        path = tmp_path / f"{name}.cmod"
        path.write_text(format_crossed_module(cm))
        back = load_crossed_module(path)
        assert back.h.order == cm.h.order
        assert back.g.order == cm.g.order
        assert back.boundary.map == cm.boundary.map
        assert (back.action == cm.action).all()


def test_crossed_module_group_by_file(tmp_path):
    (tmp_path / "z2.grp").write_text(format_group(fixtures.group("z2")))
    text = (
        "cmod file_based\n"
        "group_h file z2.grp\n"
        "group_g file z2.grp\n"
        "delta 0 1\n"
        "action\n"
        "0 1\n"
        "0 1\n"
    )
    cmod = tmp_path / "m.cmod"
    cmod.write_text(text)
    cm = load_crossed_module(cmod)
    assert cm.h.order == cm.g.order == 2


def test_crossed_module_loader_reports_axiom_violation():
    text = (
        "cmod broken\n"
        "group_h inline z2 2\n"
        "0 1\n"
        "1 0\n"
        "group_g inline z2 2\n"
        "0 1\n"
        "1 0\n"
        "delta 0 1\n"
        "action\n"
        "0 1\n"
        "1 0\n"  # e |> y != y would be fine, but this breaks equivariance
    )
    with pytest.raises(FormatError, match="invalid crossed module"):
        parse_crossed_module(text)


def test_complex_simplicial_round_trip(tmp_path):
    c = fixtures.s3_boundary_4simplex()
    path = tmp_path / "s3.tri"
    path.write_text(format_complex(c))
    assert "tet 1 2 3 4" in path.read_text()
    back = load_complex(path)
    assert back == c


def test_complex_delta_round_trip(tmp_path):
    for name in ("solid_torus", "s2_interval"):
        c = fixtures.COMPLEXES[name]()
        path = tmp_path / f"{name}.tri"
        path.write_text(format_complex(c))
        back = load_complex(path)
        assert back.counts == c.counts
        assert are_isomorphic(back, c)


def test_complex_parse_errors_carry_line_numbers():
    with pytest.raises(FormatError, match="<x>:1"):
        parse_complex("tet 1 2 3\n", "<x>")
    with pytest.raises(FormatError, match="distinct"):
        parse_complex("tet 1 2 3 3\n", "<x>")
    with pytest.raises(FormatError, match="<x>:2.*unknown edge"):
        parse_complex("edge 0 1 2\nface 0 0 0 7\n", "<x>")
    with pytest.raises(FormatError, match="consistent"):
        parse_complex("edge 0 1 2\nedge 1 1 3\nedge 2 1 3\nface 0 0 1 2\n", "<x>")
    with pytest.raises(FormatError, match="empty"):
        parse_complex("# nothing\n", "<x>")


def test_cli_invariant_matches_spec_example(capsys):
    assert main(["invariant", "--complex", "single_tet", "--cm", "id_z2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Z = 1/1")


def test_cli_invariant_brute_and_json(capsys):
    assert main(["invariant", "--complex", "single_tet", "--cm", "z4_to_z2",
                 "--engine", "brute", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["value"] == {"numerator": 2, "denominator": 1}
    assert payload["engine"] == "brute"


def test_cli_validate_cm_rejects_broken(tmp_path, capsys):
    cm = fixtures.crossed_module("id_z3")
    text = format_crossed_module(cm).replace("action\n0 1 2\n", "action\n0 2 1\n")
    bad = tmp_path / "broken.cmod"
    bad.write_text(text)
    assert main(["validate-cm", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "INVALID" in out


def test_cli_validate_complex(tmp_path, capsys):
    assert main(["validate-complex", "single_tet"]) == 0
    bad = tmp_path / "bad.tri"
    bad.write_text("tet 1 2 3 4\ntet 1 2 3 4\n")
    assert main(["validate-complex", str(bad)]) == 1
    assert "duplicate tet" in capsys.readouterr().out


def test_cli_move_round_trip(tmp_path, capsys):
    out_file = tmp_path / "moved.tri"
    assert main(["move", "--complex", "single_tet", "--move", "14",
                 "--tet", "0", "--new-vertex", "9", "--out", str(out_file)]) == 0
    moved = load_complex(out_file)
    assert moved.counts.as_tuple() == (5, 10, 10, 4)
    capsys.readouterr()
    assert main(["move", "--complex", str(out_file), "--move", "41",
                 "--vertex", "9"]) == 0
    back = parse_complex(capsys.readouterr().out)
    assert are_isomorphic(back, fixtures.single_tet())


def test_cli_move_needs_exactly_one_target(capsys):
    assert main(["move", "--complex", "single_tet", "--move", "14"]) == 2
    assert main(["move", "--complex", "single_tet", "--move", "14",
                 "--tet", "0", "--face", "1"]) == 2


def test_cli_word_and_reps_agree(capsys):
    assert main(["word", "--cm", "trivh_s3", "--builtin", "k52", "--json"]) == 0
    word_payload = json.loads(capsys.readouterr().out)
    assert main(["reps", "--group", "s3", "--builtin", "k52", "--json"]) == 0
    reps_payload = json.loads(capsys.readouterr().out)
    num = word_payload["value"]["numerator"]
    den = word_payload["value"]["denominator"]
    assert 6 * num == reps_payload["count"] * den


def test_cli_custom_word_matches_builtin(capsys):
    assert main(["word", "--cm", "trivh_z2", "--word", "X y x Y x y X Y x Y D"]) == 0
    a = capsys.readouterr().out
    assert main(["word", "--cm", "trivh_z2", "--builtin", "fig8"]) == 0
    assert a == capsys.readouterr().out


def test_cli_unreadable_file_is_a_clean_error(tmp_path, capsys):
    missing = tmp_path / "nowhere" / "x.cmod"
    assert main(["validate-cm", str(missing)]) == 1
    assert main(["invariant", "--complex", "single_tet", "--cm", str(missing)]) == 1


def test_cli_deterministic_output(capsys):
    for _ in range(2):
        assert main(["invariant", "--complex", "solid_torus", "--cm", "id_z3",
                     "--threads", "4"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == out[1]
