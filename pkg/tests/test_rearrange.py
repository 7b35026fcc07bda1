import pytest
from hypothesis import assume, given

from helpers import configurations, cp2, genus_zero_configurations
from nefcurves.config import CurveConfiguration, HypothesisError, is_connected, is_nef_graph, summarize
from nefcurves.lattice import preset_lattice
from nefcurves.moves import MoveKind
from nefcurves.rearrange import LONE_SQUARE_ZERO, check_genus_bound, is_rearranged, rearrange

CREMONA_FINAL = ((2, 0, -1, -1, -1, -1), 1), ((2, 0, -1, -1, -1, -1), 1), ((2, 0, -1, -1, -1, 0), 1)


def test_is_rearranged(cremona):
    assert is_rearranged(cp2(5, *CREMONA_FINAL))
    assert not is_rearranged(cremona)
    assert not is_rearranged(cp2(0, ((1,), 2)))


def test_rearrange_cremona(cremona):
    form = rearrange(cremona)
    assert form.trace.kinds == [MoveKind.CombineIII, MoveKind.CombineI, MoveKind.Expansion]
    assert form.config == cp2(5, *CREMONA_FINAL)
    assert form.trace.replays(cremona)
    assert form.exception is None and form.strong_bound_eligible


def test_rearrange_fixpoint(multi1):
    form = rearrange(multi1)
    assert len(form.trace) == 0 and form.config == multi1
    assert len(rearrange(rearrange(cp2(0, ((1,), 3))).config).trace) == 0


def test_genus_bound_reports(cremona, multi1):
    r = check_genus_bound(multi1)
    assert (r.g_total, r.genus_sum, r.weighted_genus_sum) == (4, 0, 0)
    assert r.multi1_applies and r.multi1_holds
    assert r.g_total - (1 + summarize(r.rearranged.config).weighted_genus_sum) == 3
    r = check_genus_bound(cremona)
    assert r.g_total == r.genus_sum == 0 and r.violations == []


def test_nef_required():
    lat = preset_lattice("cp2_blowup", 10)
    c = CurveConfiguration.of(lat, [(tuple(-x for x in lat.canonical), 2)])
    with pytest.raises(HypothesisError, match="not nef"):
        rearrange(c)
    with pytest.raises(HypothesisError):
        check_genus_bound(c)


def test_negative_total_genus_is_out_of_hypothesis():
    c = cp2(2, ((0, 1, 0), 2), ((1, -1, -1), 2))
    assert is_connected(c) and is_nef_graph(c)
    assert summarize(c).genus_total == -1
    with pytest.raises(HypothesisError, match="negative genus"):
        check_genus_bound(c)


def test_lone_square_zero_exception():
    lat = preset_lattice("cp2_blowup", 9)
    c = CurveConfiguration.of(lat, [((3,) + (-1,) * 9, 2)])
    form = rearrange(c)
    assert form.exception == LONE_SQUARE_ZERO and len(form.trace) == 0
    assert not form.strong_bound_eligible


@given(configurations())
def test_rearrange_properties(c):
    assume(is_connected(c) and is_nef_graph(c))
    form = rearrange(c)
    m = sum(v.mult for v in c)
    assert len(form.trace) <= m * m + m
    assert form.config.total == c.total
    assert form.trace.replays()
    if form.exception is None:
        assert is_rearranged(form.config)
        assert len(rearrange(form.config).trace) == 0
    prev = sum(c.genera)
    for step in form.trace:
        assert is_connected(step.after) and is_nef_graph(step.after)
        assert sum(step.after.genera) >= prev
        prev = sum(step.after.genera)
        if step.move.kind.is_combination:
            assert sum(v.mult for v in step.after) < sum(v.mult for v in step.before)
    s = summarize(c)
    if s.genus_total >= 0:
        assert check_genus_bound(c).violations == []
    if s.genus_total == 0:
        assert all(v.mult == 1 for v in form.config)


@given(genus_zero_configurations())
def test_genus_zero_rearranges_to_multiplicity_one(c):
    assume(is_nef_graph(c))
    form = rearrange(c)
    assert form.exception is None
    assert all(v.mult == 1 for v in form.config)
