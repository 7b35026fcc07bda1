"""Genus zero configurations: trees, dimension bounds, and maximal dimension strata.

For a connected nef configuration whose total class ``e`` has genus zero,
every vertex has genus zero and the graph is a tree; the weighted dimension
``sum m_i l_{e_i}`` is at most ``L - 1`` with ``L = l_e``.  When ``b+ = 1``
the configurations reaching ``l_G = L - 1`` are two transverse curves, a
comb, or iterated blow-ups of a smooth curve or of a comb.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .config import CurveConfiguration, is_connected, is_nef_graph, is_tree, is_valid, summarize
from .lattice import genus, signature
from .moves import BLOWDOWN_KINDS, MoveTrace, applicable_moves, apply_move, new_vertex_classes


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NA = "n/a"


@dataclass
class TheoremCheck:
    name: str
    status: Status
    detail: dict = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.status is Status.FAIL


def _genus0_hypotheses(config: CurveConfiguration) -> str | None:
    if not is_valid(config):
        return "invalid configuration"
    if not is_connected(config):
        return "not connected"
    if not is_nef_graph(config):
        return "not nef"
    g = genus(config.lattice, config.total)
    if g != 0:
        return f"total genus is {g}, not 0"
    return None


def is_reducible(config: CurveConfiguration) -> bool:
    return len(config) >= 2 or (len(config) == 1 and config[0].mult > 1)


def check_tree_theorem(config: CurveConfiguration) -> TheoremCheck:
    """Genus zero total class forces genus zero vertices and a tree."""
    why = _genus0_hypotheses(config)
    if why:
        return TheoremCheck("tree", Status.NA, {"reason": why})
    all_g0 = all(g == 0 for g in config.genera)
    tree = is_tree(config)
    status = Status.PASS if all_g0 and tree else Status.FAIL
    return TheoremCheck("tree", status, {"all_vertex_genus_zero": all_g0, "is_tree": tree})


def check_dimension_bound(config: CurveConfiguration) -> TheoremCheck:
    why = _genus0_hypotheses(config)
    if not why and not is_reducible(config):
        why = "irreducible (single vertex of multiplicity 1)"
    if why:
        return TheoremCheck("dimension", Status.NA, {"reason": why})
    s = summarize(config)
    slack = s.L - 1 - s.weighted_l
    status = Status.PASS if slack >= 0 and s.l_G <= s.L - 1 else Status.FAIL
    return TheoremCheck(
        "dimension", status, {"weighted_l": s.weighted_l, "l_G": s.l_G, "L": s.L, "slack": slack}
    )


def is_centered_graph(config: CurveConfiguration) -> tuple[bool, int | None, list[int]]:
    """Star test: one centre, every other vertex meets only the centre, once.

    Returns ``(ok, centre, teeth)``; a single vertex is a centre with no teeth.
    """
    n = len(config)
    if n == 0:
        return False, None, []
    p = config.pairings
    for c in sorted(range(n), key=lambda i: (config.squares[i], i)):
        teeth = [i for i in range(n) if i != c]
        if all(p[c][t] == 1 and config.neighbors(t) == [c] for t in teeth):
            return True, c, teeth
    return False, None, []


def comb_structure(config: CurveConfiguration) -> tuple[int, list[int]] | None:
    """``(spike, teeth)`` if the configuration is a comb, else ``None``.

    A comb has n >= 3 multiplicity one vertices: one spike of square
    ``1 - n`` and ``n - 1`` copies of a square zero class each meeting the
    spike once.
    """
    n = len(config)
    if n < 3 or any(v.mult != 1 for v in config.vertices):
        return None
    sq = config.squares
    spikes = [i for i in range(n) if sq[i] < 0]
    if len(spikes) != 1 or sq[spikes[0]] != 1 - n:
        return None
    s = spikes[0]
    teeth = [i for i in range(n) if i != s]
    f = config[teeth[0]].cls
    if any(config[t].cls != f for t in teeth) or sq[teeth[0]] != 0:
        return None
    if any(config.pairings[s][t] != 1 for t in teeth):
        return None
    return s, teeth


class Codim1Tag(str, enum.Enum):
    TwoVertex = "TwoVertex"
    Comb = "Comb"
    BlowupOfSmooth = "BlowupOfSmooth"
    BlowupOfComb = "BlowupOfComb"
    NotCodim1 = "NotCodim1"
    NotApplicable = "NotApplicable"
    Violation = "Violation"


@dataclass
class Codim1Class:
    tag: Codim1Tag
    witness: MoveTrace = field(default_factory=MoveTrace)
    base: CurveConfiguration | None = None
    spike: int | None = None
    teeth: list[int] = field(default_factory=list)
    reason: str = ""

    def replays(self) -> bool:
        if not self.witness.steps:
            return True
        if not self.witness.replays():
            return False
        if any(s.move.kind not in BLOWDOWN_KINDS for s in self.witness):
            return False
        if any(s.before.total != s.after.total for s in self.witness):
            return False
        return self.base is None or self.witness.steps[-1].after == self.base


def _all_negative(cfg: CurveConfiguration, move, nxt: CurveConfiguration) -> bool:
    lat = cfg.lattice
    if any(cfg.squares[i] >= 0 for i in move.participants):
        return False
    return all(lat.invariants(c)[0] < 0 for c in new_vertex_classes(cfg, move))


def _search_blowdowns(config: CurveConfiguration, target: str) -> MoveTrace | None:
    """Depth-first search for blow-downs ending at a smooth vertex or a comb.

    Every step must involve only negative classes, except that the final
    step toward a single smooth vertex is unconstrained.
    """
    dead: set = set()

    def done(cfg):
        if target == "smooth":
            return len(cfg) == 1 and cfg[0].mult == 1 and cfg.squares[0] >= 0
        return comb_structure(cfg) is not None

    def go(cfg):
        for move in applicable_moves(cfg, kinds=BLOWDOWN_KINDS):
            nxt = apply_move(cfg, move)
            if not _all_negative(cfg, move, nxt):
                if target == "smooth" and done(nxt):
                    return [(move, cfg, nxt)]
                continue
            if done(nxt):
                return [(move, cfg, nxt)]
            if nxt in dead:
                continue
            rest = go(nxt)
            if rest is not None:
                return [(move, cfg, nxt)] + rest
        dead.add(cfg)
        return None

    steps = go(config)
    if steps is None:
        return None
    trace = MoveTrace()
    for move, before, after in steps:
        trace.append(move, before, after)
    return trace


def classify_codim1(config: CurveConfiguration) -> Codim1Class:
    why = _genus0_hypotheses(config)
    if not why and signature(config.lattice)[0] != 1:
        why = "lattice does not have b+ = 1"
    if not why and not is_reducible(config):
        why = "irreducible"
    if why:
        return Codim1Class(Codim1Tag.NotApplicable, reason=why)
    s = summarize(config)
    if s.l_G != s.L - 1:
        return Codim1Class(Codim1Tag.NotCodim1, reason=f"l_G = {s.l_G}, L - 1 = {s.L - 1}")
    sq = config.squares
    if any(v.mult != 1 for i, v in enumerate(config.vertices) if sq[i] >= 0):
        return Codim1Class(Codim1Tag.Violation, reason="a vertex of non-negative square has multiplicity > 1")
    if -1 not in sq:
        if any(v.mult != 1 for v in config.vertices):
            return Codim1Class(Codim1Tag.Violation, reason="no -1 vertex but a multiplicity exceeds 1")
        if len(config) == 2 and min(sq) >= 0 and config.pairings[0][1] == 1:
            return Codim1Class(Codim1Tag.TwoVertex, base=config)
        comb = comb_structure(config)
        if comb is not None:
            return Codim1Class(Codim1Tag.Comb, base=config, spike=comb[0], teeth=comb[1])
        return Codim1Class(Codim1Tag.Violation, reason="no -1 vertex, neither two-vertex nor comb")
    for target, tag in (("smooth", Codim1Tag.BlowupOfSmooth), ("comb", Codim1Tag.BlowupOfComb)):
        trace = _search_blowdowns(config, target)
        if trace is not None:
            base = trace.steps[-1].after
            spike, teeth = comb_structure(base) if target == "comb" else (None, [])
            return Codim1Class(tag, witness=trace, base=base, spike=spike, teeth=teeth)
    return Codim1Class(Codim1Tag.Violation, reason="no blow-down sequence reaches a smooth curve or a comb")


def check_codim1(config: CurveConfiguration) -> TheoremCheck:
    result = classify_codim1(config)
    if result.tag in (Codim1Tag.NotApplicable, Codim1Tag.NotCodim1):
        return TheoremCheck("codim1", Status.NA, {"tag": result.tag.value, "reason": result.reason})
    ok = result.tag is not Codim1Tag.Violation and result.replays()
    detail = {"tag": result.tag.value, "witness_length": len(result.witness)}
    if result.reason:
        detail["reason"] = result.reason
    return TheoremCheck("codim1", Status.PASS if ok else Status.FAIL, detail)

