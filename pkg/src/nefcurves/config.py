"""Curve configurations: weighted graphs over an intersection lattice.

A vertex carries a class and a positive multiplicity.  Edges are not stored;
two vertices are adjoined when their classes pair positively, and the edge is
labelled by that pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .lattice import Class, IntersectionLattice, LatticeError, genus, j_dimension


class ConfigError(ValueError):
    """Malformed configuration input (bad multiplicity, wrong class length)."""


@dataclass(frozen=True, order=True)
class Vertex:
    cls: Class
    mult: int = 1

    def key(self) -> tuple[Class, int]:
        return (self.cls, self.mult)


@dataclass(frozen=True, eq=False)
class CurveConfiguration:
    """An ordered list of vertices over a lattice.

    Vertex order is kept as given so that indices are meaningful to callers,
    but equality and hashing are by multiset of ``(class, mult)``.
    Zero-multiplicity vertices are dropped on construction.
    """

    lattice: IntersectionLattice
    vertices: tuple[Vertex, ...]

    def __post_init__(self):
        verts = []
        r = self.lattice.rank
        for i, v in enumerate(self.vertices):
            if not isinstance(v, Vertex):
                v = Vertex(*v)
            cls = v.cls
            if not (type(cls) is tuple and len(cls) == r and all(type(c) is int for c in cls)):
                try:
                    cls = self.lattice.check(cls)
                except LatticeError as exc:
                    raise ConfigError(f"vertex {i}: {exc}") from None
            if type(v.mult) is not int and (isinstance(v.mult, bool) or int(v.mult) != v.mult) or v.mult < 0:
                raise ConfigError(f"vertex {i}: multiplicity must be a non-negative integer, got {v.mult!r}")
            if v.mult == 0:
                continue
            verts.append(Vertex(cls, int(v.mult)))
        object.__setattr__(self, "vertices", tuple(verts))

    @classmethod
    def of(cls, lattice: IntersectionLattice, pairs: Iterable[tuple[Sequence[int], int]]) -> "CurveConfiguration":
        return cls(lattice, tuple(Vertex(tuple(c), m) for c, m in pairs))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i: int) -> Vertex:
        return self.vertices[i]

    @cached_property
    def key(self) -> tuple:
        return (self.lattice, tuple(sorted(v.key() for v in self.vertices)))

    def __eq__(self, other):
        if not isinstance(other, CurveConfiguration):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        body = ", ".join(f"({self.lattice.format(v.cls)},{v.mult})" for v in self.vertices)
        return f"{{{body}}}"

    # cached per-vertex data; the pairing table is the single source of edges

    @cached_property
    def pairings(self) -> tuple[tuple[int, ...], ...]:
        vs = self.vertices
        pairing = self.lattice.pairing
        n = len(vs)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = rows[j][i] = pairing(vs[i].cls, vs[j].cls)
        return tuple(tuple(r) for r in rows)

    @cached_property
    def squares(self) -> tuple[int, ...]:
        return tuple(self.pairings[i][i] for i in range(len(self)))

    @cached_property
    def _invariants(self) -> tuple[tuple[int, int], ...]:
        inv = self.lattice.invariants
        return tuple(inv(v.cls) for v in self.vertices)

    @cached_property
    def genera(self) -> tuple[int, ...]:
        return tuple((sq + k) // 2 + 1 for sq, k in self._invariants)

    @cached_property
    def adjunctions(self) -> tuple[int, ...]:
        return tuple(sq + k for sq, k in self._invariants)

    @cached_property
    def dims(self) -> tuple[int, ...]:
        """``l_e`` of each vertex class."""
        return tuple(max((sq - k) // 2, 0) for sq, k in self._invariants)

    @cached_property
    def total(self) -> Class:
        return total_class(self)

    @cached_property
    def total_pairings(self) -> tuple[int, ...]:
        """``e . e_i`` for the total class ``e``."""
        p = self.pairings
        return tuple(
            sum(v.mult * p[j][i] for j, v in enumerate(self.vertices)) for i in range(len(self))
        )

    def neighbors(self, i: int) -> list[int]:
        row = self.pairings[i]
        return [j for j in range(len(self)) if j != i and row[j] > 0]

    def replace(self, removed: Iterable[int], added: Iterable[Vertex]) -> "CurveConfiguration":
        gone = set(removed)
        kept = [v for i, v in enumerate(self.vertices) if i not in gone]
        return CurveConfiguration(self.lattice, tuple(kept) + tuple(added))


@dataclass(frozen=True)
class ConfigSummary:
    total: Class
    genus_total: int
    genus_sum: int
    weighted_genus_sum: int
    total_mult: int
    l_G: int
    weighted_l: int
    L: int
    edge_label_sum: int


def validate(config: CurveConfiguration) -> list[str]:
    """Violations of the curve-configuration conditions; empty means valid."""
    problems = []
    if not config.vertices:
        return ["empty configuration"]
    fmt = config.lattice.format
    for i, adj in enumerate(config.adjunctions):
        if adj < -2:
            problems.append(f"vertex {i} ({fmt(config[i].cls)}): adjunction {adj} < -2")
    p = config.pairings
    for i in range(len(config)):
        for j in range(i + 1, len(config)):
            if p[i][j] < 0:
                problems.append(
                    f"vertices {i},{j} ({fmt(config[i].cls)}, {fmt(config[j].cls)}): pairing {p[i][j]} < 0"
                )
    return problems


def is_valid(config: CurveConfiguration) -> bool:
    n = len(config)
    if not n or min(config.adjunctions) < -2:
        return False
    p = config.pairings
    return all(p[i][j] >= 0 for i in range(n) for j in range(i + 1, n))


def total_class(config: CurveConfiguration) -> Class:
    r = config.lattice.rank
    out = [0] * r
    for v in config.vertices:
        for k in range(r):
            out[k] += v.mult * v.cls[k]
    return tuple(out)


def is_connected(config: CurveConfiguration) -> bool:
    n = len(config)
    if n == 0:
        return False
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in config.neighbors(i):
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def is_nef_graph(config: CurveConfiguration) -> bool:
    return all(x >= 0 for x in config.total_pairings)


def edge_label_sum(config: CurveConfiguration) -> int:
    p = config.pairings
    n = len(config)
    return sum(p[i][j] for i in range(n) for j in range(i + 1, n) if p[i][j] > 0)


def is_tree(config: CurveConfiguration) -> bool:
    return is_connected(config) and edge_label_sum(config) == len(config) - 1


def is_simple_tree(config: CurveConfiguration) -> bool:
    return is_tree(config) and all(v.mult == 1 for v in config.vertices)


def summarize(config: CurveConfiguration) -> ConfigSummary:
    lat = config.lattice
    total = config.total
    return ConfigSummary(
        total=total,
        genus_total=genus(lat, total),
        genus_sum=sum(config.genera),
        weighted_genus_sum=sum(v.mult * g for v, g in zip(config.vertices, config.genera)),
        total_mult=sum(v.mult for v in config.vertices),
        l_G=sum(config.dims),
        weighted_l=sum(v.mult * l for v, l in zip(config.vertices, config.dims)),
        L=j_dimension(lat, total)[1],
        edge_label_sum=edge_label_sum(config),
    )


def canonicalize(config: CurveConfiguration) -> CurveConfiguration:
    """Vertices sorted by class coefficients, then multiplicity."""
    return CurveConfiguration(config.lattice, tuple(sorted(config.vertices, key=Vertex.key)))


def is_canonical(config: CurveConfiguration) -> bool:
    keys = [v.key() for v in config.vertices]
    return keys == sorted(keys)


def embed(config: CurveConfiguration, lattice: IntersectionLattice) -> CurveConfiguration:
    """Carry a configuration into a lattice extending ``config.lattice`` by zero coordinates."""
    pad = lattice.rank - config.lattice.rank
    if pad < 0:
        raise ConfigError("target lattice is smaller than the source lattice")
    return CurveConfiguration(
        lattice, tuple(Vertex(v.cls + (0,) * pad, v.mult) for v in config.vertices)
    )


class HypothesisError(ValueError):
    """The configuration does not meet the hypotheses of the requested check."""


def require(config: CurveConfiguration, *, connected: bool = True, nef: bool = True) -> None:
    problems = validate(config)
    if problems:
        raise HypothesisError("invalid configuration: " + "; ".join(problems))
    if connected and not is_connected(config):
        raise HypothesisError("configuration is not connected")
    if nef and not is_nef_graph(config):
        bad = [i for i, x in enumerate(config.total_pairings) if x < 0]
        raise HypothesisError(f"configuration is not nef: total class pairs negatively with vertices {bad}")
