"""Command-line contract: outputs, exit codes, determinism."""

import pytest

import folcalc as fc
from folcalc.cli import main


def write(path, text):
    path.write_text(text)
    return str(path)


@pytest.fixture
def tree_fol(tmp_path):
    m = fc.random_movie(3, h_extra=1, seed=2)
    return write(tmp_path / "tree.fol", fc.serialize_fol(m))


@pytest.fixture
def cycle_fol(tmp_path, census):
    m = next(
        m for m in census
        if not fc.is_tree(fc.build_gpp(m)) and len(fc.build_gpp(m).edges) >= 2
    )
    return write(tmp_path / "cycle.fol", fc.serialize_fol(m))


def test_validate_ok(capsys, tree_fol):
    assert main(["validate", tree_fol]) == 0
    assert capsys.readouterr().out.strip() == "ok"


def test_validate_violations(capsys, tmp_path):
    path = write(
        tmp_path / "bad.fol",
        "fol 1 genus=0\nelliptic p1 +\nelliptic n1 -\narc a1 p1 n1\n"
        "event 1 + a1 a1 corridor=a1:L,a1:L resolution=1\n",
    )
    assert main(["validate", path]) == 1
    out = capsys.readouterr().out
    assert "violation=" in out


def test_validate_parse_error_exit(capsys, tmp_path):
    path = write(tmp_path / "junk.fol", "not a document\n")
    assert main(["validate", path]) == 3
    assert "line 1" in capsys.readouterr().err


def test_counts_line(capsys, tree_fol):
    assert main(["counts", tree_fol]) == 0
    assert capsys.readouterr().out.strip() == "e+=3 e-=3 h+=2 h-=2 PH=2"


def test_tight_line(capsys, tree_fol):
    assert main(["tight", tree_fol]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "tree=true dividing_circles=1 verdict=tight-compatible"


def test_tight_on_trivial(capsys, tmp_path):
    path = write(tmp_path / "t.fol", fc.serialize_fol(fc.trivial_movie()))
    main(["tight", path])
    out = capsys.readouterr().out
    assert "tree=true dividing_circles=1" in out


def test_gpp_text(capsys, tree_fol):
    assert main(["gpp", tree_fol]) == 0
    out = capsys.readouterr().out
    assert out.count("vertex=") == 3
    assert out.count("edge=") == 2


def test_gpp_dot(capsys, tree_fol):
    assert main(["gpp", tree_fol, "--format", "dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("graph gpp {")
    assert out.rstrip().endswith("}")
    assert out.count(" -- ") == 2
    assert 'label="' in out


def test_realize_verify_replay_iso_pipeline(capsys, tmp_path, tree_fol):
    mov = str(tmp_path / "out.mov")
    back = str(tmp_path / "back.fol")
    assert main(["realize", tree_fol, "-o", mov]) == 0
    assert capsys.readouterr().out.startswith("steps=")
    assert main(["verify", tree_fol, mov]) == 0
    assert capsys.readouterr().out.strip() == "ok"
    assert main(["replay", mov, "-o", back]) == 0
    capsys.readouterr()
    assert main(["iso", tree_fol, back]) == 0
    assert capsys.readouterr().out.strip() == "isomorphic=true"


def test_realize_obstruction_exit(capsys, cycle_fol):
    assert main(["realize", cycle_fol]) == 2
    out = capsys.readouterr().out
    assert out.startswith("obstruction=")


def test_realize_to_stdout(capsys, tree_fol):
    assert main(["realize", tree_fol]) == 0
    out = capsys.readouterr().out
    assert out.startswith("mov 1 base=trivial")


def test_iso_differs(capsys, tmp_path, tree_fol):
    other = write(tmp_path / "o.fol", fc.serialize_fol(fc.random_movie(2, seed=0)))
    assert main(["iso", tree_fol, other]) == 1
    assert capsys.readouterr().out.strip() == "isomorphic=false"


def test_enumerate_is_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["enumerate", "--kmax", "2", "--out", str(a)]) == 0
    assert main(["enumerate", "--kmax", "2", "--out", str(b)]) == 0
    out = capsys.readouterr().out
    assert "k=1 classes=1" in out and "k=2 classes=3" in out
    for name in ("census_k1.txt", "census_k2.txt"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_enumerate_guard_and_override(capsys, tmp_path, monkeypatch):
    assert main(["enumerate", "--kmax", "9", "--out", str(tmp_path / "x")]) == 4
    capsys.readouterr()
    monkeypatch.setenv("FOLCALC_KMAX_OVERRIDE", "2")
    assert main(["enumerate", "--kmax", "3", "--out", str(tmp_path / "y")]) == 4
    capsys.readouterr()
    monkeypatch.setenv("FOLCALC_KMAX_OVERRIDE", "soon")
    assert main(["enumerate", "--kmax", "2", "--out", str(tmp_path / "z")]) == 4


def test_random_deterministic(capsys, tmp_path):
    a, b = str(tmp_path / "a.fol"), str(tmp_path / "b.fol")
    assert main(["random", "--k", "4", "--seed", "7", "-o", a]) == 0
    assert main(["random", "--k", "4", "--seed", "7", "-o", b]) == 0
    capsys.readouterr()
    assert open(a).read() == open(b).read()
    assert main(["validate", a]) == 0


def test_norm_page(capsys):
    assert main(["norm", "page", "--genus", "0", "--boundary", "1"]) == 0
    assert capsys.readouterr().out.strip() == "chi=1 norm=-1"


def test_norm_sum(capsys):
    assert main(["norm", "sum", "--page", "0,1", "--page", "1,2"]) == 0
    assert capsys.readouterr().out.strip() == "genus=1 boundary=2 chi=-2 norm=2"


def test_norm_sum_bad_spec(capsys):
    assert main(["norm", "sum", "--page", "nope"]) == 4


def test_norm_ledger(capsys):
    assert main(["norm", "ledger", "--chi", "0"]) == 0
    out = capsys.readouterr().out
    assert "entry=B chi=0 norm=0" in out
    assert "entry=B0 chi=1 norm=-1" in out
    assert "identity holds=true" in out
    assert "holds=false" not in out


def test_norm_ledger_text(capsys):
    assert main(["norm", "ledger", "--chi", "-2", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "[ok]" in out
    assert "B1 (chi=-2)" in out


def test_norm_additivity(capsys):
    assert main(["norm", "additivity", "--sn1", "2", "--sn2", "3"]) == 0
    assert capsys.readouterr().out.strip() == "value=6 relation=upper-bound"
    assert main(["norm", "additivity", "--sn1", "2", "--sn2", "3", "--tight"]) == 0
    assert capsys.readouterr().out.strip() == "value=6 relation=exact"


def test_usage_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["definitely-not-a-command"])
    assert exc.value.code == 4


def test_missing_file_is_usage_error(capsys, tmp_path):
    assert main(["validate", str(tmp_path / "absent.fol")]) == 4
    assert "cannot read" in capsys.readouterr().err
