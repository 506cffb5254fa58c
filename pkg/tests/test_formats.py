"""Text formats: grammar, error positions, round trips."""

import pytest

import folcalc as fc

TRIVIAL_DOC = """\
fol 1 genus=0
elliptic p1 +
elliptic n1 -
arc a1 p1 n1
rot p1 : a1
rot n1 : a1
"""


def test_trivial_document_parses():
    doc = fc.parse_fol(TRIVIAL_DOC)
    movie, report = fc.validate_document(doc)
    assert report.ok
    assert movie == fc.trivial_movie()


def test_comments_and_blank_lines_are_ignored():
    text = "# heading\n\nfol 1 genus=0  # trailing\nelliptic p1 +\nelliptic n1 -\narc a1 p1 n1\n"
    movie, report = fc.validate_document(fc.parse_fol(text))
    assert report.ok


def test_single_line_form_parses():
    text = fc.serialize_fol(fc.trivial_movie(), single_line=True)
    assert "\n" not in text
    movie, report = fc.validate_document(fc.parse_fol(text))
    assert report.ok
    assert movie == fc.trivial_movie()


def test_serialize_is_a_fixed_point(census, random_corpus):
    for m in census + random_corpus[:30]:
        text = fc.serialize_fol(m)
        back = fc.parse_fol(text).to_movie()
        assert fc.validate(back).ok
        assert fc.is_isomorphic(back, m)
        assert fc.serialize_fol(back) == text


def test_serialization_is_rotation_invariant(census):
    for m in census:
        for r in m.ranks():
            assert fc.serialize_fol(fc.rebase(m, r)) == fc.serialize_fol(m)


def test_empty_document():
    with pytest.raises(fc.FolParseError) as exc:
        fc.parse_fol("")
    assert (exc.value.line, exc.value.col) == (1, 1)


def test_unknown_directive_position():
    with pytest.raises(fc.FolParseError) as exc:
        fc.parse_fol("fol 1 genus=0\nbogus p1 +\n")
    assert (exc.value.line, exc.value.col) == (2, 1)
    assert "bogus" in str(exc.value)


def test_duplicate_elliptic_position():
    with pytest.raises(fc.FolParseError) as exc:
        fc.parse_fol("fol 1 genus=0\nelliptic p1 +\nelliptic p1 -\n")
    assert (exc.value.line, exc.value.col) == (3, 10)
    assert "duplicate" in str(exc.value)


def test_duplicate_rank_rejected():
    text = (
        "fol 1 genus=0\nelliptic p1 +\nelliptic n1 -\narc a1 p1 n1\n"
        "event 3 + a1 a1 corridor=a1:L,a1:L resolution=1\n"
        "event 3 - a1 a1 corridor=a1:L,a1:L resolution=1\n"
    )
    with pytest.raises(fc.FolParseError) as exc:
        fc.parse_fol(text)
    assert exc.value.line == 6
    assert "duplicate event rank" in str(exc.value)


def test_bad_sign_reports_position():
    with pytest.raises(fc.FolParseError) as exc:
        fc.parse_fol("fol 1 genus=0\nelliptic p1 *\n")
    assert (exc.value.line, exc.value.col) == (2, 13)


def test_corridor_must_name_the_arcs_in_order():
    text = "fol 1 genus=0\nevent 1 + a1 a2 corridor=a2:L,a1:L resolution=1\n"
    with pytest.raises(fc.FolParseError) as exc:
        fc.parse_fol(text)
    assert exc.value.line == 2
    assert exc.value.col == 17
    assert "corridor" in str(exc.value)


def test_resolution_values_restricted():
    text = "fol 1 genus=0\nevent 1 + a1 a2 corridor=a1:L,a2:L resolution=7\n"
    with pytest.raises(fc.FolParseError) as exc:
        fc.parse_fol(text)
    assert "resolution" in str(exc.value)


def test_bad_header_version():
    with pytest.raises(fc.FolParseError):
        fc.parse_fol("fol 9 genus=0\n")


def test_genus_one_rejected_at_validation():
    text = "fol 1 genus=1\nelliptic p1 +\nelliptic n1 -\narc a1 p1 n1\n"
    doc = fc.parse_fol(text)
    _, report = fc.validate_document(doc)
    assert not report.ok
    assert any("unsupported genus" in v.detail for v in report.violations)


def test_rot_declarations_are_cross_checked():
    text = TRIVIAL_DOC.replace("rot p1 : a1", "rot p1 : zz")
    doc = fc.parse_fol(text)
    _, report = fc.validate_document(doc)
    assert not report.ok
    assert any(v.invariant == "rotation-declaration" for v in report.violations)


def test_rot_for_unknown_point_is_flagged():
    text = TRIVIAL_DOC + "rot p9 : a1\n"
    doc = fc.parse_fol(text)
    _, report = fc.validate_document(doc)
    assert not report.ok
    assert any(v.invariant == "references" for v in report.violations)


def test_rot_accepts_any_cyclic_rotation(census):
    m = next(m for m in census if len(m.events) >= 4)
    text = fc.serialize_fol(m)
    lines = text.splitlines()
    for i, line in enumerate(lines):
        if line.startswith("rot") and line.count("@") >= 2:
            head, _, word = line.partition(" : ")
            tokens = word.split()
            rotated = tokens[1:] + tokens[:1]
            lines[i] = f"{head} : {' '.join(rotated)}"
            break
    _, report = fc.validate_document(fc.parse_fol("\n".join(lines)))
    assert report.ok


def test_invalid_movie_serializes_without_normalizing():
    # closure fails, so the writer must not try to replay it
    bad = fc.FoliationMovie(
        elliptic=(
            fc.EllipticPoint("p1", fc.POSITIVE),
            fc.EllipticPoint("p2", fc.POSITIVE),
            fc.EllipticPoint("n1", fc.NEGATIVE),
            fc.EllipticPoint("n2", fc.NEGATIVE),
        ),
        initial_arcs=(fc.Arc("a1", "p1", "n1"), fc.Arc("a2", "p2", "n2")),
        events=(fc.SaddleEvent(rank=7, sign=fc.POSITIVE, arcs=("a1", "a2")),),
    )
    text = fc.serialize_fol(bad)
    assert "event 7" in text
    doc = fc.parse_fol(text)
    _, report = fc.validate_document(doc)
    assert not report.ok


# -- scripts ---------------------------------------------------------------


def test_mov_roundtrip():
    m = fc.random_movie(3, h_extra=1, seed=4)
    script = fc.realize(m).script
    text = fc.serialize_mov(script)
    doc = fc.parse_mov(text)
    replayed = doc.to_script(fc.base_movie())
    assert replayed == script
    assert fc.serialize_mov(replayed) == text
    assert fc.verify_realization(m, replayed)


def test_mov_covers_every_move_kind():
    steps = (
        fc.FingerMove(
            target="n1", gap_first=0, gap_second=0, sign=fc.POSITIVE,
            new_positive="p2", new_negative="n2", new_arc="a2",
        ),
        fc.SwapPi(1, 2),
        fc.ChangeInFoliation(2, 3, 1),
        fc.InverseFingerMove("p2"),
    )
    script = fc.MoveScript(base=fc.base_movie(), steps=steps)
    text = fc.serialize_mov(script)
    assert fc.parse_mov(text).to_script(fc.base_movie()) == script


def test_mov_rejects_foreign_base():
    other = fc.random_movie(2, seed=0)
    with pytest.raises(ValueError):
        fc.serialize_mov(fc.MoveScript(base=other, steps=()))


def test_mov_parse_errors():
    with pytest.raises(fc.FolParseError):
        fc.parse_mov("mov 1 base=other\n")
    with pytest.raises(fc.FolParseError) as exc:
        fc.parse_mov("mov 1 base=trivial\nwiggle 1 2\n")
    assert (exc.value.line, exc.value.col) == (2, 1)
    with pytest.raises(fc.FolParseError):
        fc.parse_mov("mov 1 base=trivial\nfinger target=n1 gaps=0 sign=+ new=a,b,c\n")
