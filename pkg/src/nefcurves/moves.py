"""Rewriting steps on curve configurations.

Curve expansion and the three curve combinations rearrange the multiply
covered part of a configuration without changing its total class.  Simple
combinatorial blow-downs remove a genus zero -1 vertex; blow-ups are their
inverses and extend the lattice by a fresh exceptional class.

Every ``apply_*`` function checks its preconditions and raises
:class:`MoveNotApplicable` naming the failed clause.  Results are returned in
canonical vertex order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .config import (
    ConfigSummary,
    CurveConfiguration,
    Vertex,
    canonicalize,
    summarize,
)
from .lattice import Class


class MoveNotApplicable(ValueError):
    pass


class MoveKind(enum.Enum):
    Expansion = "Expansion"
    CombineI = "CombineI"
    CombineII = "CombineII"
    CombineIII = "CombineIII"
    BlowDown1 = "BlowDown1"
    BlowDown2 = "BlowDown2"
    BlowUp1 = "BlowUp1"
    BlowUp2 = "BlowUp2"

    @property
    def order(self) -> int:
        return _KIND_ORDER[self]

    @property
    def is_combination(self) -> bool:
        return self in (MoveKind.CombineI, MoveKind.CombineII, MoveKind.CombineIII)


_KIND_ORDER = {k: i for i, k in enumerate(MoveKind)}
COMBINE_KINDS = (MoveKind.CombineI, MoveKind.CombineII, MoveKind.CombineIII)
BLOWDOWN_KINDS = (MoveKind.BlowDown1, MoveKind.BlowDown2)

_ARITY = {
    MoveKind.Expansion: 1,
    MoveKind.CombineI: 2,
    MoveKind.CombineII: 2,
    MoveKind.BlowDown1: 2,
    MoveKind.BlowDown2: 3,
    MoveKind.BlowUp1: 1,
    MoveKind.BlowUp2: 2,
}


@dataclass(frozen=True)
class Move:
    """One rewriting step.

    Participant conventions: CombineII lists the higher multiplicity vertex
    first; CombineIII lists the -1 vertex then its neighbours; blow-downs
    list the -1 vertex first.
    """

    kind: MoveKind
    participants: tuple[int, ...]

    def __post_init__(self):
        kind = MoveKind(self.kind)
        object.__setattr__(self, "kind", kind)
        ps = tuple(int(p) for p in self.participants)
        object.__setattr__(self, "participants", ps)
        if len(set(ps)) != len(ps) or any(p < 0 for p in ps):
            raise ValueError(f"participants must be distinct non-negative indices: {ps}")
        want = _ARITY.get(kind)
        if want is not None and len(ps) != want:
            raise ValueError(f"{kind.value} takes {want} participants, got {len(ps)}")
        if kind is MoveKind.CombineIII and len(ps) < 2:
            raise ValueError("CombineIII needs the -1 vertex and at least one neighbour")

    def sort_key(self):
        return (self.kind.order, self.participants)

    def __str__(self):
        return f"{self.kind.value}({','.join(map(str, self.participants))})"

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "participants": list(self.participants)}


@dataclass(frozen=True)
class Step:
    move: Move
    before: CurveConfiguration
    after: CurveConfiguration

    @property
    def summary_before(self) -> ConfigSummary:
        return summarize(self.before)

    @property
    def summary_after(self) -> ConfigSummary:
        return summarize(self.after)


@dataclass
class MoveTrace:
    steps: list[Step] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    @property
    def moves(self) -> list[Move]:
        return [s.move for s in self.steps]

    @property
    def kinds(self) -> list[MoveKind]:
        return [s.move.kind for s in self.steps]

    def append(self, move: Move, before: CurveConfiguration, after: CurveConfiguration) -> None:
        if self.steps and self.steps[-1].after != before:
            raise ValueError("trace step does not start where the previous one ended")
        self.steps.append(Step(move, before, after))

    def replays(self, start: CurveConfiguration | None = None) -> bool:
        """Re-apply every move and compare with the recorded results."""
        if not self.steps:
            return True
        # moves index vertices in the canonical order the trace was recorded in
        cur = self.steps[0].before if start is None else canonicalize(start)
        for step in self.steps:
            if cur != step.before:
                return False
            cur = apply_move(cur, step.move)
            if cur != step.after:
                return False
        return True

    def to_json(self) -> list[dict]:
        return [
            {"move": s.move.to_json(), "before": _summary_json(s.before), "after": _summary_json(s.after)}
            for s in self.steps
        ]


def _summary_json(config: CurveConfiguration) -> dict:
    s = summarize(config)
    return {
        "vertices": [[list(v.cls), v.mult] for v in config.vertices],
        "total": list(s.total),
        "total_mult": s.total_mult,
        "genus_sum": s.genus_sum,
        "l_G": s.l_G,
    }


def _fail(move: str, clause: str):
    raise MoveNotApplicable(f"{move} not applicable: {clause}")


def _check_index(config: CurveConfiguration, name: str, *idx: int) -> None:
    n = len(config)
    if len(set(idx)) != len(idx):
        _fail(name, f"participants {idx} are not distinct")
    for i in idx:
        if not 0 <= i < n:
            _fail(name, f"vertex index {i} out of range for {n} vertices")


def _add(a: Class, b: Class, k: int = 1) -> Class:
    return tuple(x + k * y for x, y in zip(a, b))


def _finish(config: CurveConfiguration, removed, added) -> CurveConfiguration:
    return canonicalize(config.replace(removed, added))


def apply_expansion(config: CurveConfiguration, v: int) -> CurveConfiguration:
    _check_index(config, "Expansion", v)
    vert = config[v]
    if config.squares[v] < 0:
        _fail("Expansion", f"vertex {v} has negative square {config.squares[v]}")
    if vert.mult <= 1:
        _fail("Expansion", f"vertex {v} has multiplicity {vert.mult} <= 1")
    return _finish(config, [v], [Vertex(vert.cls, 1)] * vert.mult)


def expansion_weakens_strong_bound(config: CurveConfiguration, v: int) -> bool:
    """Expanding ``(e, m)`` with ``e.e = 0``, ``m > 1``, ``g(e) > 0`` voids the strong bound."""
    return config.squares[v] == 0 and config[v].mult > 1 and config.genera[v] > 0


def apply_combine_i(config: CurveConfiguration, v1: int, v2: int) -> CurveConfiguration:
    _check_index(config, "CombineI", v1, v2)
    a, b = config[v1], config[v2]
    if config.pairings[v1][v2] <= 0:
        _fail("CombineI", f"vertices {v1},{v2} are not adjoined")
    if a.mult != b.mult:
        _fail("CombineI", f"multiplicities differ ({a.mult} != {b.mult})")
    return _finish(config, [v1, v2], [Vertex(_add(a.cls, b.cls), a.mult)])


def apply_combine_ii(config: CurveConfiguration, v1: int, v2: int) -> CurveConfiguration:
    _check_index(config, "CombineII", v1, v2)
    a, b = config[v1], config[v2]
    d12 = config.pairings[v1][v2]
    if d12 <= 0:
        _fail("CombineII", f"vertices {v1},{v2} are not adjoined")
    if a.mult <= b.mult:
        _fail("CombineII", f"need n1 > n2, got {a.mult} <= {b.mult}")
    if d12 < -config.squares[v1]:
        _fail("CombineII", f"D1.D2 = {d12} < -D1.D1 = {-config.squares[v1]}")
    return _finish(
        config,
        [v1, v2],
        [Vertex(_add(a.cls, b.cls), b.mult), Vertex(a.cls, a.mult - b.mult)],
    )


def apply_combine_iii(config: CurveConfiguration, e_vertex: int, neighbors: Sequence[int]) -> CurveConfiguration:
    neighbors = list(neighbors)
    _check_index(config, "CombineIII", e_vertex, *neighbors)
    if config.squares[e_vertex] != -1:
        _fail("CombineIII", f"vertex {e_vertex} has square {config.squares[e_vertex]}, not -1")
    if not neighbors:
        _fail("CombineIII", "no neighbours listed")
    actual = set(config.neighbors(e_vertex))
    if set(neighbors) != actual:
        _fail("CombineIII", f"listed neighbours {sorted(neighbors)} differ from adjoined vertices {sorted(actual)}")
    p = config.pairings[e_vertex]
    for i in neighbors:
        if config.squares[i] > -2:
            _fail("CombineIII", f"neighbour {i} has square {config.squares[i]} > -2")
    n0 = config[e_vertex].mult
    weighted = sum(config[i].mult * p[i] for i in neighbors)
    if weighted != n0:
        _fail("CombineIII", f"sum n_i D_i.E = {weighted} != n0 = {n0}")
    e_cls = config[e_vertex].cls
    added = [Vertex(_add(config[i].cls, e_cls, p[i]), config[i].mult) for i in neighbors]
    return _finish(config, [e_vertex, *neighbors], added)


def _blowdown_vertex_ok(config: CurveConfiguration, v: int, name: str) -> None:
    if config.squares[v] != -1:
        _fail(name, f"vertex {v} has square {config.squares[v]}, not -1")
    if config.genera[v] != 0:
        _fail(name, f"vertex {v} has genus {config.genera[v]}, not 0")


def apply_blowdown(config: CurveConfiguration, move: Move) -> CurveConfiguration:
    name = move.kind.value
    ps = move.participants
    _check_index(config, name, *ps)
    v = ps[0]
    _blowdown_vertex_ok(config, v, name)
    nbrs = set(config.neighbors(v))
    vcls = config[v].cls
    p = config.pairings[v]
    if move.kind is MoveKind.BlowDown1:
        u = ps[1]
        if nbrs != {u}:
            _fail(name, f"vertex {v} is adjoined to {sorted(nbrs)}, not exactly [{u}]")
        if p[u] != 1:
            _fail(name, f"u.v = {p[u]}, not 1")
        if config[u].mult != config[v].mult:
            _fail(name, f"multiplicities differ ({config[u].mult} != {config[v].mult})")
        return _finish(config, [v, u], [Vertex(_add(config[u].cls, vcls), config[u].mult)])
    if move.kind is MoveKind.BlowDown2:
        u1, u2 = ps[1], ps[2]
        if nbrs != {u1, u2}:
            _fail(name, f"vertex {v} is adjoined to {sorted(nbrs)}, not exactly [{u1}, {u2}]")
        if p[u1] != 1 or p[u2] != 1:
            _fail(name, f"edge labels {p[u1]},{p[u2]} are not both 1")
        if config[u1].mult + config[u2].mult != config[v].mult:
            _fail(name, f"t1 + t2 = {config[u1].mult + config[u2].mult} != {config[v].mult}")
        return _finish(
            config,
            [v, u1, u2],
            [Vertex(_add(config[u1].cls, vcls), config[u1].mult), Vertex(_add(config[u2].cls, vcls), config[u2].mult)],
        )
    _fail(name, "not a blow-down")


def apply_blowup(config: CurveConfiguration, move: Move, label: str | None = None) -> CurveConfiguration:
    """Blow up at a point of one vertex (BlowUp1) or at an intersection of two (BlowUp2)."""
    name = move.kind.value
    ps = move.participants
    _check_index(config, name, *ps)
    if move.kind is MoveKind.BlowUp2 and config.pairings[ps[0]][ps[1]] < 1:
        _fail(name, f"vertices {ps[0]},{ps[1]} are not adjoined")
    if move.kind not in (MoveKind.BlowUp1, MoveKind.BlowUp2):
        _fail(name, "not a blow-up")
    lat = config.lattice.extended(label)
    exc = lat.basis(lat.rank - 1)
    old = [Vertex(v.cls + (0,), v.mult) for v in config.vertices]
    moved = [Vertex(_add(old[i].cls, exc, -1), old[i].mult) for i in ps]
    new_mult = sum(old[i].mult for i in ps)
    kept = [v for i, v in enumerate(old) if i not in ps]
    return canonicalize(CurveConfiguration(lat, tuple(kept + moved + [Vertex(exc, new_mult)])))


def apply_move(config: CurveConfiguration, move: Move) -> CurveConfiguration:
    k = move.kind
    ps = move.participants
    if k is MoveKind.Expansion:
        return apply_expansion(config, ps[0])
    if k is MoveKind.CombineI:
        return apply_combine_i(config, *ps)
    if k is MoveKind.CombineII:
        return apply_combine_ii(config, *ps)
    if k is MoveKind.CombineIII:
        return apply_combine_iii(config, ps[0], ps[1:])
    if k in BLOWDOWN_KINDS:
        return apply_blowdown(config, move)
    return apply_blowup(config, move)


def new_vertex_classes(config: CurveConfiguration, move: Move) -> list[Class]:
    """Classes of the vertices a combination creates (CombineII's leftover included)."""
    ps = move.participants
    if move.kind is MoveKind.CombineI:
        return [_add(config[ps[0]].cls, config[ps[1]].cls)]
    if move.kind is MoveKind.CombineII:
        return [_add(config[ps[0]].cls, config[ps[1]].cls), config[ps[0]].cls]
    if move.kind is MoveKind.CombineIII:
        e = ps[0]
        return [_add(config[i].cls, config[e].cls, config.pairings[e][i]) for i in ps[1:]]
    if move.kind is MoveKind.Expansion:
        return [config[ps[0]].cls]
    if move.kind is MoveKind.BlowDown1:
        return [_add(config[ps[1]].cls, config[ps[0]].cls)]
    if move.kind is MoveKind.BlowDown2:
        return [_add(config[i].cls, config[ps[0]].cls) for i in ps[1:]]
    raise ValueError(f"no new-vertex rule for {move.kind.value}")


def _applies(config: CurveConfiguration, move: Move) -> bool:
    try:
        apply_move(config, move)
    except MoveNotApplicable:
        return False
    return True


def applicable_moves(config: CurveConfiguration, kinds=None) -> list[Move]:
    """Every expansion, combination and blow-down whose preconditions hold.

    Blow-ups are always available and are not listed.
    """
    kinds = set(kinds) if kinds is not None else {
        MoveKind.Expansion, *COMBINE_KINDS, *BLOWDOWN_KINDS
    }
    n = len(config)
    sq = config.squares
    p = config.pairings
    out: list[Move] = []
    if MoveKind.Expansion in kinds:
        out += [Move(MoveKind.Expansion, (i,)) for i in range(n) if sq[i] >= 0 and config[i].mult > 1]
    for i, j in combinations(range(n), 2):
        if p[i][j] <= 0:
            continue
        mi, mj = config[i].mult, config[j].mult
        if MoveKind.CombineI in kinds and mi == mj:
            out.append(Move(MoveKind.CombineI, (i, j)))
        if MoveKind.CombineII in kinds and mi != mj:
            hi, lo = (i, j) if mi > mj else (j, i)
            if p[hi][lo] >= -sq[hi]:
                out.append(Move(MoveKind.CombineII, (hi, lo)))
    minus_one = [i for i in range(n) if sq[i] == -1]
    for e in minus_one:
        nbrs = config.neighbors(e)
        if not nbrs:
            continue
        if MoveKind.CombineIII in kinds:
            m = Move(MoveKind.CombineIII, (e, *nbrs))
            if _applies(config, m):
                out.append(m)
        if MoveKind.BlowDown1 in kinds and len(nbrs) == 1:
            m = Move(MoveKind.BlowDown1, (e, nbrs[0]))
            if _applies(config, m):
                out.append(m)
        if MoveKind.BlowDown2 in kinds and len(nbrs) == 2:
            m = Move(MoveKind.BlowDown2, (e, *nbrs))
            if _applies(config, m):
                out.append(m)
    out.sort(key=Move.sort_key)
    return out
