"""Per-configuration theorem checkers used by the census.

Each checker returns ``None`` when the configuration is outside its
hypotheses, otherwise a (possibly empty) list of violation messages.
"""

from __future__ import annotations

from .classify import (
    Codim1Tag,
    Status,
    check_dimension_bound,
    check_tree_theorem,
    classify_codim1,
)
from .config import (
    CurveConfiguration,
    is_connected,
    is_nef_graph,
    is_tree,
    is_valid,
    summarize,
)
from .lattice import genus
from .moves import (
    BLOWDOWN_KINDS,
    COMBINE_KINDS,
    MoveKind,
    MoveNotApplicable,
    applicable_moves,
    apply_move,
    new_vertex_classes,
)
from .rearrange import LONE_SQUARE_ZERO, is_rearranged, rearrange

CHECKERS = ("genus_bound", "multi1", "tree", "dimension", "codim1", "termination", "moves")


class ConfigContext:
    """Lazily shared facts about one configuration (rearrangement is computed once)."""

    def __init__(self, config: CurveConfiguration, b_plus_one: bool):
        self.config = config
        self.b_plus_one = b_plus_one
        self.valid = is_valid(config)
        self.connected = self.valid and is_connected(config)
        self.nef = self.valid and is_nef_graph(config)
        self.summary = summarize(config)
        self._form = None
        self.notes: dict = {}

    @property
    def form(self):
        if self._form is None:
            self._form = rearrange(self.config)
        return self._form


def check_genus_bound_ctx(ctx: ConfigContext) -> list[str] | None:
    s = ctx.summary
    if not (ctx.connected and ctx.nef) or s.genus_total < 0:
        return None
    out = []
    ctx.notes["genus_slack"] = s.genus_total - s.genus_sum
    if s.genus_total < s.genus_sum:
        out.append(f"g(e)={s.genus_total} < sum g_i={s.genus_sum}")
    form = ctx.form
    if form.strong_bound_eligible and s.genus_total < s.weighted_genus_sum:
        out.append(f"strong bound: g(e)={s.genus_total} < sum m_i g_i={s.weighted_genus_sum}")
    return out


def check_termination_ctx(ctx: ConfigContext) -> list[str] | None:
    """The rearrangement trace: step bound, per-step invariants, fixpoint."""
    if not (ctx.connected and ctx.nef):
        return None
    cfg = ctx.config
    out = []
    try:
        form = ctx.form
    except RuntimeError as exc:
        return [str(exc)]
    if len(form.trace) > form.step_bound:
        out.append(f"trace length {len(form.trace)} exceeds bound {form.step_bound}")
    final = form.config
    if form.exception is None and not is_rearranged(final):
        out.append("final form is not rearranged")
    if form.exception == LONE_SQUARE_ZERO and not (len(final) == 1 and final.squares[0] == 0):
        out.append("exception flagged on a non lone square-zero form")
    if form.trace and form.trace.steps[0].before != cfg:
        out.append("trace does not start at the input")
    if not form.trace.replays():
        out.append("trace does not replay")
    total = cfg.total
    prev = None
    for step in form.trace:
        b, a = step.before, step.after
        if prev is not None and b != prev:
            out.append("trace is not contiguous")
        prev = a
        if a.total != total:
            out.append(f"total class changed at {step.move}")
        if not (is_valid(a) and is_connected(a) and is_nef_graph(a)):
            out.append(f"{step.move} left the connected nef configurations")
        if sum(a.genera) < sum(b.genera):
            out.append(f"sum of genera decreased at {step.move}")
        if step.move.kind in COMBINE_KINDS and sum(v.mult for v in a) >= sum(v.mult for v in b):
            out.append(f"total multiplicity did not drop at {step.move}")
    if form.exception is None and len(rearrange(final).trace):
        out.append("rearrange is not a fixpoint")
    return out


def check_multi1_ctx(ctx: ConfigContext) -> list[str] | None:
    """Multiplicity lemma on the normal form, and its genus-zero contrapositive."""
    s = ctx.summary
    if not (ctx.connected and ctx.nef) or s.genus_total < 0:
        return None
    try:
        form = ctx.form
    except RuntimeError as exc:
        return [str(exc)]
    final = form.config
    out = []
    if form.exception is None and any(v.mult > 1 for v in final):
        fs = summarize(final)
        ctx.notes["multi1_slack"] = s.genus_total - 1 - fs.weighted_genus_sum
        if s.genus_total < 1 + fs.weighted_genus_sum:
            out.append(f"multi-1 bound: g(e)={s.genus_total} < 1 + {fs.weighted_genus_sum}")
    if s.genus_total == 0 and any(v.mult > 1 for v in final):
        out.append("genus zero total but the rearranged form has a multiple vertex")
    return out


def _as_list(check) -> list[str] | None:
    if check.status is Status.NA:
        return None
    if check.status is Status.FAIL:
        return [f"{check.name}: {check.detail}"]
    return []


def check_tree_ctx(ctx: ConfigContext) -> list[str] | None:
    return _as_list(check_tree_theorem(ctx.config))


def check_dimension_ctx(ctx: ConfigContext) -> list[str] | None:
    res = check_dimension_bound(ctx.config)
    if res.status is not Status.NA:
        ctx.notes["dimension_slack"] = res.detail["slack"]
    return _as_list(res)


def check_codim1_ctx(ctx: ConfigContext) -> list[str] | None:
    s = ctx.summary
    if not (ctx.connected and ctx.nef and ctx.b_plus_one) or s.genus_total != 0:
        return None
    res = classify_codim1(ctx.config)
    if res.tag in (Codim1Tag.NotApplicable, Codim1Tag.NotCodim1):
        return None
    ctx.notes["codim1_tag"] = res.tag.value
    if res.tag is Codim1Tag.Violation:
        return [f"codim1: {res.reason}"]
    out = []
    if not res.replays():
        out.append("codim1: witness does not replay")
    if res.tag is Codim1Tag.Comb:
        n = len(ctx.config)
        if ctx.config.squares[res.spike] != 1 - n:
            out.append("codim1: comb spike square is not 1 - n")
    return out


class _Tag:
    """Deferred ``"<move> on <config>"`` text; most moves never need it."""

    __slots__ = ("move", "config")

    def __init__(self, move, config):
        self.move, self.config = move, config

    def __format__(self, spec):
        return f"{self.move} on {self.config!r}"


def move_invariant_violations(config: CurveConfiguration) -> list[str]:
    """Check the move calculus on every applicable move of a valid configuration."""
    if not is_valid(config):
        return []
    out = []
    lat = config.lattice
    connected = is_connected(config)
    nef = is_nef_graph(config)
    total = config.total
    g_total = genus(lat, total)
    mult = sum(v.mult for v in config)
    gsum = sum(config.genera)
    wgsum = sum(v.mult * g for v, g in zip(config, config.genera))
    all_adj_m2 = all(a == -2 for a in config.adjunctions)
    pre_tree = is_tree(config) if connected else False
    genus0_ctx = connected and nef and g_total == 0
    setting = all(config.squares[i] < 0 for i, v in enumerate(config) if v.mult > 1)
    l_G = sum(config.dims)
    for move in applicable_moves(config):
        tag = _Tag(move, config)
        try:
            post = apply_move(config, move)
        except MoveNotApplicable as exc:
            out.append(f"listed move not applicable: {tag}: {exc}")
            continue
        kind = move.kind
        if post.total != total:
            out.append(f"total class changed: {tag}")
        if not is_valid(post):
            out.append(f"result invalid: {tag}")
            continue
        if nef and not is_nef_graph(post):
            out.append(f"nefness lost: {tag}")
        post_mult = sum(v.mult for v in post)
        if kind is MoveKind.Expansion:
            sq = config.squares[move.participants[0]]
            if connected and (len(config) >= 2 or sq > 0) and not is_connected(post):
                out.append(f"expansion disconnected: {tag}")
            if post_mult != mult:
                out.append(f"expansion changed total multiplicity: {tag}")
        else:
            if connected and nef and not is_connected(post):
                out.append(f"connectivity lost: {tag}")
            if post_mult >= mult:
                out.append(f"total multiplicity did not drop: {tag}")
        if sum(post.genera) < gsum:
            out.append(f"sum g_i decreased: {tag}")
        if sum(v.mult * g for v, g in zip(post, post.genera)) < wgsum:
            out.append(f"sum m_i g_i decreased: {tag}")
        if kind in BLOWDOWN_KINDS or not (connected and nef):
            continue
        ps = move.participants
        new = new_vertex_classes(config, move)
        p = config.pairings
        if kind in COMBINE_KINDS and all(lat.invariants(c)[0] + lat.invariants(c)[1] == -2 for c in new):
            if any(config.adjunctions[i] != -2 for i in ps):
                out.append(f"adj pull-back failed: {tag}")
            if kind in (MoveKind.CombineI, MoveKind.CombineII) and p[ps[0]][ps[1]] != 1:
                out.append(f"adj pull-back: D1.D2 != 1: {tag}")
            if kind is MoveKind.CombineIII:
                e = ps[0]
                if config.genera[e] != 0 or any(p[e][i] != 1 for i in ps[1:]):
                    out.append(f"adj pull-back: g(E) or D_i.E wrong: {tag}")
        if all_adj_m2 and all(a == -2 for a in post.adjunctions) and is_tree(post) and not pre_tree:
            out.append(f"tree pull-back failed: {tag}")
        if not genus0_ctx:
            continue
        post_l = sum(post.dims)
        if kind is MoveKind.Expansion:
            if post_l <= l_G:
                out.append(f"expansion did not raise l_G: {tag}")
            continue
        if not setting:
            continue
        if kind is MoveKind.CombineI and config[ps[0]].mult == 1 and -1 not in (
            config.squares[ps[0]], config.squares[ps[1]]
        ):
            continue
        all_neg = all(lat.invariants(c)[0] < 0 for c in new)
        if post_l < l_G:
            out.append(f"l_G decreased: {tag}")
        elif (post_l == l_G) != all_neg:
            out.append(f"l_G equality does not match negativity of new vertices: {tag}")
    return out


def check_moves_ctx(ctx: ConfigContext) -> list[str] | None:
    if not ctx.valid:
        return None
    return move_invariant_violations(ctx.config)


DISPATCH = {
    "genus_bound": check_genus_bound_ctx,
    "multi1": check_multi1_ctx,
    "tree": check_tree_ctx,
    "dimension": check_dimension_ctx,
    "codim1": check_codim1_ctx,
    "termination": check_termination_ctx,
    "moves": check_moves_ctx,
}


def run_checkers(config: CurveConfiguration, checkers, b_plus_one: bool) -> tuple[dict, dict]:
    """Return ``({checker: None | [violations]}, notes)`` for one configuration."""
    ctx = ConfigContext(config, b_plus_one)
    results = {}
    for name in checkers:
        results[name] = DISPATCH[name](ctx)
    return results, ctx.notes
