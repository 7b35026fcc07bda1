from hypothesis import assume, given

from helpers import cp2, genus_zero_configurations, ruled
from nefcurves.classify import (
    Codim1Tag,
    Status,
    check_codim1,
    check_dimension_bound,
    check_tree_theorem,
    classify_codim1,
    comb_structure,
    is_centered_graph,
)
from nefcurves.config import CurveConfiguration, is_connected, is_nef_graph, summarize
from nefcurves.lattice import IntersectionLattice, genus
from nefcurves.moves import MoveKind

COMB = ((1, 0, -1, -1), 1), ((0, 1, 0, 0), 1), ((0, 1, 0, 0), 1)


def test_tree_theorem(cremona, multi1):
    r = check_tree_theorem(cremona)
    assert r.status is Status.PASS and r.detail["is_tree"]
    assert check_tree_theorem(cp2(0, ((1,), 1), ((1,), 1))).status is Status.PASS
    assert check_tree_theorem(multi1).status is Status.NA


def test_dimension_bound():
    r = check_dimension_bound(ruled(2, *COMB))
    assert r.status is Status.PASS and (r.detail["weighted_l"], r.detail["L"], r.detail["slack"]) == (2, 3, 0)
    r = check_dimension_bound(cp2(1, ((2, -1), 1), ((0, 1), 1)))
    assert (r.detail["l_G"], r.detail["L"], r.detail["slack"]) == (4, 5, 0)
    assert check_dimension_bound(cp2(0, ((1,), 1), ((1,), 1), ((1,), 1))).status is Status.NA
    assert check_dimension_bound(cp2(0, ((2,), 1))).status is Status.NA


def test_classify_blowup_of_smooth():
    c = cp2(2, ((2, -1, 0), 1), ((0, 1, -1), 1), ((0, 0, 1), 1))
    res = classify_codim1(c)
    assert res.tag is Codim1Tag.BlowupOfSmooth
    assert res.witness.kinds == [MoveKind.BlowDown1, MoveKind.BlowDown1]
    assert [s.after.vertices[0].cls for s in res.witness][-1] == (2, 0, 0)
    assert res.base == cp2(2, ((2, 0, 0), 1))
    assert res.replays()


def test_classify_comb_and_two_vertex():
    res = classify_codim1(ruled(2, *COMB))
    assert res.tag is Codim1Tag.Comb
    assert res.base.vertices[res.spike].cls == (1, 0, -1, -1) and len(res.teeth) == 2
    assert classify_codim1(cp2(0, ((1,), 1), ((1,), 1))).tag is Codim1Tag.TwoVertex


def test_classify_not_applicable():
    assert classify_codim1(cp2(0, ((2,), 1))).tag is Codim1Tag.NotApplicable
    assert classify_codim1(cp2(0, ((1,), 1), ((1,), 1), ((1,), 1))).tag is Codim1Tag.NotApplicable
    # b+ = 2: two hyperbolic planes
    lat = IntersectionLattice(
        ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0)), (0, 0, 0, 0)
    )
    c = CurveConfiguration.of(lat, [((1, 0, 0, 0), 1), ((0, 1, 0, 0), 1)])
    assert genus(lat, c.total) == 2  # not genus zero either
    res = classify_codim1(c)
    assert res.tag is Codim1Tag.NotApplicable


def test_classify_not_codim1(cremona):
    res = classify_codim1(cremona)
    assert res.tag is Codim1Tag.NotCodim1
    assert check_codim1(cremona).status is Status.NA


def test_blowup_of_comb():
    # blow up the comb spike at a general point
    c = ruled(3, ((1, 0, -1, -1, -1), 1), ((0, 0, 0, 0, 1), 1), ((0, 1, 0, 0, 0), 1), ((0, 1, 0, 0, 0), 1))
    res = classify_codim1(c)
    assert res.tag is Codim1Tag.BlowupOfComb and len(res.witness) == 1 and res.replays()


def test_multiple_vertex_on_negative_pair_still_classifies():
    # BlowUp2 at the intersection of two negative curves gives a multiplicity-2 vertex
    c = cp2(3, ((2, -1, 0, 0), 1), ((0, 1, -1, -1), 1), ((0, 0, 1, -1), 1), ((0, 0, 0, 1), 2))
    s = summarize(c)
    assert s.l_G == s.L - 1 and is_connected(c) and is_nef_graph(c)
    res = classify_codim1(c)
    assert res.tag is Codim1Tag.BlowupOfSmooth and res.replays()


def test_centered_graph():
    ok, centre, teeth = is_centered_graph(ruled(2, *COMB))
    assert ok and centre == 0 and teeth == [1, 2]
    assert ruled(2, *COMB).squares[centre] == -len(teeth)
    assert not is_centered_graph(cp2(0, ((1,), 1), ((1,), 1), ((1,), 1)))[0]
    assert is_centered_graph(cp2(0, ((1,), 1))) == (True, 0, [])


def test_comb_structure_rejects_wrong_spike():
    assert comb_structure(ruled(1, ((1, 0, -1), 1), ((0, 1, 0), 1), ((0, 1, 0), 1))) is None


@given(genus_zero_configurations())
def test_genus_zero_theorems(c):
    assert genus(c.lattice, c.total) == 0
    assume(is_nef_graph(c))
    assert check_tree_theorem(c).status is Status.PASS
    assert check_dimension_bound(c).status is not Status.FAIL
    res = classify_codim1(c)
    assert res.tag is not Codim1Tag.Violation, res.reason
    assert res.replays()
