"""Rearranging a connected nef configuration into normal form.

The normal form has three properties:

(a) vertices of non-negative square have multiplicity one;
(b) no -1 vertex is adjoined to another -1 vertex or to a vertex of
    non-negative square;
(c) at each -1 vertex ``(E, n0)`` the adjoined vertices satisfy
    ``sum n_i D_i.E > n0``.

The strategy is deterministic: combinations (i) then (ii) at -1 vertices,
then a combination (iii) where the equality case holds, then an expansion.
Each combination lowers the total multiplicity and at most that many
expansions fit in between, so the loop is bounded by ``M**2 + M`` steps for
initial total multiplicity ``M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import (
    CurveConfiguration,
    HypothesisError,
    canonicalize,
    require,
    summarize,
)
from .lattice import genus
from .moves import Move, MoveKind, MoveTrace, applicable_moves, apply_move

LONE_SQUARE_ZERO = "lone-square-zero"


@dataclass
class RearrangedForm:
    config: CurveConfiguration
    trace: MoveTrace
    strong_bound_eligible: bool
    # set when the normal form cannot be reached without disconnecting
    exception: str | None = None
    step_bound: int = field(default=0)


def is_rearranged(config: CurveConfiguration) -> bool:
    sq = config.squares
    p = config.pairings
    for i, v in enumerate(config.vertices):
        if sq[i] >= 0 and v.mult != 1:
            return False
    for i in range(len(config)):
        if sq[i] != -1:
            continue
        nbrs = config.neighbors(i)
        if any(sq[j] >= -1 for j in nbrs):
            return False
        if sum(config[j].mult * p[i][j] for j in nbrs) <= config[i].mult:
            return False
    return True


def _has_strong_bound_obstruction(config: CurveConfiguration) -> bool:
    sq, gs = config.squares, config.genera
    return any(sq[i] == 0 and v.mult >= 2 and gs[i] >= 1 for i, v in enumerate(config.vertices))


def next_move(config: CurveConfiguration) -> Move | None:
    """The strategy's next step, or ``None`` if no rearranging move is available."""
    sq = config.squares
    moves = applicable_moves(config, kinds=[MoveKind.Expansion, MoveKind.CombineI, MoveKind.CombineII, MoveKind.CombineIII])
    for m in moves:
        if m.kind is MoveKind.CombineI and any(sq[i] == -1 for i in m.participants):
            return m
    for m in moves:
        if m.kind is MoveKind.CombineII:
            a, b = m.participants
            if (sq[a] == -1 and sq[b] >= -1) or (sq[b] == -1 and sq[a] >= -1):
                return m
    for m in moves:
        if m.kind is MoveKind.CombineIII:
            return m
    for m in moves:
        if m.kind is MoveKind.Expansion:
            if len(config) == 1 and sq[0] == 0:
                continue
            return m
    return None


def rearrange(config: CurveConfiguration) -> RearrangedForm:
    require(config)
    cur = canonicalize(config)
    m0 = sum(v.mult for v in cur.vertices)
    bound = m0 * m0 + m0
    trace = MoveTrace()
    eligible = not _has_strong_bound_obstruction(cur)
    exception = None
    while not is_rearranged(cur):
        move = next_move(cur)
        if move is None:
            exception = LONE_SQUARE_ZERO
            break
        nxt = apply_move(cur, move)
        trace.append(move, cur, nxt)
        cur = nxt
        eligible = eligible and not _has_strong_bound_obstruction(cur)
        if len(trace) > bound:
            raise RuntimeError(f"rearrangement exceeded its step bound {bound}")
    return RearrangedForm(cur, trace, eligible, exception, bound)


@dataclass
class GenusBoundReport:
    g_total: int
    genus_sum: int
    weighted_genus_sum: int
    bound_holds: bool
    multi1_applies: bool
    multi1_holds: bool | None
    strong_bound_eligible: bool
    strong_bound_holds: bool
    certificate: MoveTrace
    rearranged: RearrangedForm

    @property
    def violations(self) -> list[str]:
        out = []
        if not self.bound_holds:
            out.append(f"genus bound: g(e)={self.g_total} < sum g_i={self.genus_sum}")
        if self.multi1_applies and not self.multi1_holds:
            out.append("multi-1 bound: g(e) < 1 + sum m'_j g(e'_j) on the rearranged form")
        if self.strong_bound_eligible and not self.strong_bound_holds:
            out.append(f"strong bound: g(e)={self.g_total} < sum m_i g_i={self.weighted_genus_sum}")
        return out


def check_genus_bound(config: CurveConfiguration) -> GenusBoundReport:
    """Genus bound ``g(e) >= sum g(e_i)`` with the supporting rearrangement.

    Requires a valid, connected, nef configuration whose total class has
    non-negative genus.
    """
    require(config)
    s = summarize(config)
    if s.genus_total < 0:
        raise HypothesisError(f"total class has negative genus {s.genus_total}")
    form = rearrange(config)
    final = form.config
    multi1_applies = form.exception is None and any(v.mult > 1 for v in final.vertices)
    multi1_holds = None
    if multi1_applies:
        fs = summarize(final)
        multi1_holds = s.genus_total >= 1 + fs.weighted_genus_sum
    assert genus(config.lattice, final.total) == s.genus_total
    return GenusBoundReport(
        g_total=s.genus_total,
        genus_sum=s.genus_sum,
        weighted_genus_sum=s.weighted_genus_sum,
        bound_holds=s.genus_total >= s.genus_sum,
        multi1_applies=multi1_applies,
        multi1_holds=multi1_holds,
        strong_bound_eligible=form.strong_bound_eligible,
        strong_bound_holds=s.genus_total >= s.weighted_genus_sum,
        certificate=form.trace,
        rearranged=form,
    )
