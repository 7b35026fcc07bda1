"""Acceptance gate: one pass/fail line per criterion.

Every tolerance is exact (integer arithmetic, zero violations allowed).
The census bounds below are the ones this suite runs; see README for how
to run the larger bounds through the CLI.

Run directly with ``python3 tests/test_acceptance.py`` or through pytest,
which prints the same lines in its terminal summary.
"""

from __future__ import annotations

import time

import pytest

from helpers import load, ruled
from nefcurves.census import CensusBounds, blowup_census, blowup_roundtrip, run_census
from nefcurves.checks import CHECKERS
from nefcurves.config import CurveConfiguration, HypothesisError, is_connected, is_nef_graph, summarize, validate
from nefcurves.lattice import genus, pair, preset_lattice
from nefcurves.moves import MoveKind
from nefcurves.rearrange import check_genus_bound, is_rearranged, rearrange

RESULTS: list[str] = []

GOLDEN_TIME_LIMIT = 1.0  # seconds, all four golden examples together

# (preset, k, max_vertices, max_mult, coeff_bound, connected+nef filter)
CENSUS_BOUNDS = [
    ("cp2_blowup", 0, 4, 3, 2, True),
    ("cp2_blowup", 1, 4, 3, 2, True),
    ("cp2_blowup", 2, 3, 2, 2, True),
    ("cp2_blowup", 3, 3, 2, 1, True),
    ("cp2_blowup", 3, 4, 1, 1, True),
    ("ruled_blowup", 2, 3, 2, 1, True),
]
# move invariants are also checked on configurations that are neither
# connected nor nef
UNFILTERED_MOVE_BOUNDS = [("cp2_blowup", 2, 3, 2, 1, False)]
DETERMINISM_BOUNDS = ("cp2_blowup", 2, 3, 2, 1, False)


def record(label: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)


def _bounds(spec) -> CensusBounds:
    kind, k, v, m, c, filtered = spec
    return CensusBounds(preset_lattice(kind, k), v, m, c, require_connected=filtered, require_nef=filtered)


def _name(spec) -> str:
    kind, k, v, m, c, filtered = spec
    return f"{kind}({k}) v<={v} m<={m} |c|<={c}" + ("" if filtered else " unfiltered")


@pytest.fixture(scope="module")
def census_reports():
    reports = [(spec, run_census(_bounds(spec), CHECKERS)) for spec in CENSUS_BOUNDS]
    reports += [(spec, run_census(_bounds(spec), ["moves"])) for spec in UNFILTERED_MOVE_BOUNDS]
    return reports


def _tally(reports, checker):
    inside = fails = 0
    examples = []
    for _, r in reports:
        c = r.checked.get(checker)
        if c is None:
            continue
        inside += c["in_hypothesis"]
        fails += c["fail"]
        examples += [v for v in r.violations if v["checker"] == checker][:2]
    return inside, fails, examples


def _check_census(reports, checker, label) -> None:
    inside, fails, examples = _tally(reports, checker)
    detail = f"{inside} in-hypothesis configurations, {fails} violations"
    if examples:
        detail += f"; first: {examples[0]['vertices']} {examples[0]['messages'][:1]}"
    ok = fails == 0 and inside > 0
    record(label, ok, detail)
    assert ok, detail


# 1. golden examples


def _first_step_touches(form, cls) -> bool:
    step = form.trace.steps[0]
    return any(step.before[i].cls == cls for i in step.move.participants)


def test_1a_cremona():
    t = time.perf_counter()
    c = load("cremona")
    s = summarize(c)
    form = rearrange(c)
    kinds = form.trace.kinds
    ok = (
        s.total == (6, 0, -3, -3, -3, -2)
        and c.lattice.format(s.total) == "6H-3E2-3E3-3E4-2E5"
        and s.genus_total == 0
        and kinds[:2] == [MoveKind.CombineIII, MoveKind.CombineI]
        and _first_step_touches(form, (0, 1, 0, 0, 0, 0))
    )
    _golden_time.append(time.perf_counter() - t)
    record("1a Cremona example: total, genus 0, trace CombineIII then CombineI", ok, f"trace {[k.value for k in kinds]}")
    assert ok


def test_1b_multi1():
    t = time.perf_counter()
    c = load("multi1")
    s = summarize(c)
    report = check_genus_bound(c)
    slack = report.g_total - (1 + summarize(report.rearranged.config).weighted_genus_sum)
    ok = s.genus_total == 4 and s.weighted_genus_sum == 0 and slack >= 1 and is_rearranged(c) and report.multi1_holds
    _golden_time.append(time.perf_counter() - t)
    record("1b multi-1 example: g=4, sum m_i g_i=0, slack>=1, rearranged", ok, f"slack {slack}")
    assert ok


def test_1c_minus_2k():
    t = time.perf_counter()
    c = load("minus2k")
    lat = c.lattice
    minus_k = tuple(-x for x in lat.canonical)
    rejected = []
    for op in (rearrange, check_genus_bound):
        try:
            op(c)
        except HypothesisError:
            rejected.append(op.__name__)
    ok = (
        len(rejected) == 2
        and not is_nef_graph(c)
        and genus(lat, tuple(2 * x for x in minus_k)) == 0
        and genus(lat, minus_k) == 1
    )
    _golden_time.append(time.perf_counter() - t)
    record("1c -2K example: rejected as not nef; g(-2K)=0, g(-K)=1", ok, f"rejected by {rejected}")
    assert ok


def test_1d_not_connected():
    t = time.perf_counter()
    c = load("not_connected")
    lat = c.lattice
    ok = (
        validate(c) == []
        and not is_connected(c)
        and c.total == (3, 0, -2)
        and pair(lat, c.total, (0, 1, -1)) == -2
        and not is_nef_graph(c)
    )
    _golden_time.append(time.perf_counter() - t)
    total = sum(_golden_time)
    ok = ok and total < GOLDEN_TIME_LIMIT
    record("1d not-connected example: valid, disconnected, total pairs -2 with E1-E2", ok, f"golden total {total:.3f}s")
    assert ok


_golden_time: list[float] = []


# 2. move invariants


def test_2_move_invariants(census_reports):
    _check_census(census_reports, "moves", "2  move invariants over every configuration x applicable move")


# 3. theorem census


def test_3i_genus_bound(census_reports):
    _check_census(census_reports, "genus_bound", "3i  g(e) >= sum g(e_i) on connected nef configurations")


def test_3ii_tree(census_reports):
    _check_census(census_reports, "tree", "3ii g(e)=0 => vertex genera 0 and tree")


def test_3iii_dimension(census_reports):
    _check_census(census_reports, "dimension", "3iii sum m_i l_i <= L-1 for reducible genus-zero")


def test_3iv_multiplicity(census_reports):
    _check_census(census_reports, "multi1", "3iv rearranged genus-zero forms have multiplicity 1")


def test_3v_codim1(census_reports):
    _check_census(census_reports, "codim1", "3v l_G=L-1 configurations classify with replaying witness")
    tags = {}
    for _, r in census_reports:
        for t, n in r.histograms.get("codim1_tag", {}).items():
            tags[t] = tags.get(t, 0) + n
    assert {"TwoVertex", "Comb", "BlowupOfSmooth", "BlowupOfComb"} <= set(tags), tags


# 4. termination


def test_4_termination(census_reports):
    _check_census(census_reports, "termination", "4  rearrange within M^2+M steps and is a fixpoint")


# 5. blow-up round trip


def test_5_blowup_roundtrip():
    cp2 = preset_lattice("cp2_blowup", 0)
    seeds = [
        (CurveConfiguration.of(cp2, [((2,), 1)]), 3),
        (ruled(0, ((1, -1), 1), ((0, 1), 1), ((0, 1), 1)), 2),
    ]
    total = bad = 0
    first = ""
    for seed, depth in seeds:
        for rec in blowup_census([seed], depth):
            total += 1
            problems = blowup_roundtrip(rec)
            if problems:
                bad += 1
                first = first or f"{rec.config!r}: {problems}"
    ok = bad == 0 and total > 2
    record("5  blow-up census round trip (CP2 {(2H,1)} depth<=3, ruled comb depth<=2)", ok, f"{total} outputs, {bad} mismatches {first}")
    assert ok


# 6. determinism


def test_6_determinism():
    b = _bounds(DETERMINISM_BOUNDS)
    small = CensusBounds(preset_lattice("cp2_blowup", 1), 3, 2, 2, require_connected=True, require_nef=True)
    a1, a2, a4 = run_census(b, []), run_census(b, []), run_census(b, [], jobs=4)
    c1, c4 = run_census(small, CHECKERS), run_census(small, CHECKERS, jobs=4)
    ok = (
        a1.fingerprint == a2.fingerprint == a4.fingerprint
        and a1.candidates == a4.candidates
        and c1.fingerprint == c4.fingerprint
        and c1.checked == c4.checked
        and c1.histograms == c4.histograms
        and c1.violations == c4.violations
    )
    record("6  census fingerprints equal across runs and jobs 1 vs 4", ok, f"{a1.fingerprint[:16]}... over {a1.candidates} configurations")
    assert ok


def test_census_scope(census_reports):
    """Not a criterion: lists what the census covered."""
    for spec, r in census_reports:
        print(f"  {_name(spec)}: {r.candidates} configurations in {r.wall_time:.1f}s")
    assert all(r.candidates > 0 for _, r in census_reports)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
