"""Exhaustive enumeration of small configurations and theorem checking.

Candidate vertex classes are all classes with coefficients in
``[-coeff_bound, coeff_bound]`` and adjunction number at least -2.  A
configuration is a multiset of at most ``max_vertices`` pairs
``(class, mult)`` with ``mult <= max_mult`` whose classes pair
non-negatively.  Multisets are generated with non-decreasing candidate
index, so each appears exactly once and already in canonical vertex order.

The enumeration is split by the index of the first class; partitions are
independent and their results are merged in index order, which keeps the
fingerprint identical for any number of workers.
"""

from __future__ import annotations

import hashlib
import itertools
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator

from .checks import CHECKERS, run_checkers
from .classify import Codim1Tag, classify_codim1, comb_structure
from .config import CurveConfiguration, Vertex, is_connected, validate
from .lattice import Class, IntersectionLattice, genus, raw_pair, signature
from .moves import Move, MoveKind, apply_blowup

HISTOGRAMS = ("genus_slack", "multi1_slack", "dimension_slack", "codim1_tag")
STAGES = ("class_multisets", "valid", "connected", "configurations", "nef", "genus0")


@dataclass(frozen=True)
class CensusBounds:
    lattice: IntersectionLattice
    max_vertices: int
    max_mult: int
    coeff_bound: int
    require_connected: bool = False
    require_nef: bool = False
    require_genus0_total: bool = False

    def __post_init__(self):
        for name in ("max_vertices", "max_mult", "coeff_bound"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")


def candidate_classes(lattice: IntersectionLattice, coeff_bound: int) -> list[Class]:
    """Non-zero classes with bounded coefficients and ``adj >= -2``, in lexicographic order."""
    rng = range(-coeff_bound, coeff_bound + 1)
    zero = lattice.zero()
    out = []
    for c in itertools.product(rng, repeat=lattice.rank):
        if c == zero:
            continue
        sq, k = lattice.invariants(c)
        if sq + k >= -2:
            out.append(c)
    return out


class _Tables:
    """Pairings among candidate classes, computed once per census."""

    def __init__(self, bounds: CensusBounds):
        lat = bounds.lattice
        self.bounds = bounds
        self.classes = candidate_classes(lat, bounds.coeff_bound)
        g = lat.gram
        cs = self.classes
        self.P = [[raw_pair(g, a, b) for b in cs] for a in cs]
        self.K = [lat.invariants(c)[1] for c in cs]


def _connected_idx(P, idx) -> bool:
    n = len(idx)
    seen = {0}
    stack = [0]
    while stack:
        a = stack.pop()
        row = P[idx[a]]
        for j in range(n):
            if j not in seen and row[idx[j]] > 0:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def _partition(tables: _Tables, first: int, stages: Counter) -> Iterator[tuple[tuple[int, int], ...]]:
    """Configurations (as ``((class_index, mult), ...)``) whose first class is ``first``."""
    b = tables.bounds
    P, K = tables.P, tables.K
    n = len(tables.classes)
    mults = range(1, b.max_mult + 1)

    def class_sets(idx):
        yield idx
        if len(idx) == b.max_vertices:
            return
        for j in range(idx[-1], n):
            if all(P[i][j] >= 0 for i in idx) and (j != idx[-1] or P[j][j] >= 0):
                yield from class_sets(idx + (j,))

    for idx in class_sets((first,)):
        stages["class_multisets"] += 1
        stages["valid"] += 1
        k = len(idx)
        if not _connected_idx(P, idx):
            if b.require_connected:
                continue
        else:
            stages["connected"] += 1
        for ms in itertools.product(mults, repeat=k):
            if any(idx[a] == idx[a + 1] and ms[a] > ms[a + 1] for a in range(k - 1)):
                continue
            stages["configurations"] += 1
            tp = [sum(ms[j] * P[idx[j]][idx[i]] for j in range(k)) for i in range(k)]
            nef = min(tp) >= 0
            if nef:
                stages["nef"] += 1
            elif b.require_nef:
                continue
            adj = sum(ms[i] * (tp[i] + K[idx[i]]) for i in range(k))
            if adj == -2:
                stages["genus0"] += 1
            elif b.require_genus0_total:
                continue
            yield tuple(zip(idx, ms))


def _make_config(tables: _Tables, items) -> CurveConfiguration:
    cs = tables.classes
    cfg = CurveConfiguration(tables.bounds.lattice, tuple(Vertex(cs[i], m) for i, m in items))
    P = tables.P
    cfg.__dict__["pairings"] = tuple(tuple(P[i][j] for j, _ in items) for i, _ in items)
    return cfg


def _item_bytes(tables: _Tables, items) -> bytes:
    cs = tables.classes
    return (";".join(f"{list(cs[i])}x{m}" for i, m in items) + "\n").encode()


def enumerate_configs(bounds: CensusBounds) -> Iterator[CurveConfiguration]:
    """Deterministic stream of every configuration within ``bounds``."""
    tables = _Tables(bounds)
    stages: Counter = Counter()
    for first in range(len(tables.classes)):
        for items in _partition(tables, first, stages):
            yield _make_config(tables, items)


@dataclass
class CensusReport:
    lattice: dict
    bounds: dict
    checkers: list[str]
    candidate_classes: int = 0
    candidates: int = 0
    stages: dict = field(default_factory=dict)
    checked: dict = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    histograms: dict = field(default_factory=dict)
    fingerprint: str = ""
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def consistent(self) -> bool:
        all_pass = all(c["pass"] == c["in_hypothesis"] for c in self.checked.values())
        return all_pass == (not self.violations)

    def summary(self) -> dict:
        d = asdict(self)
        d.pop("violations")
        d["violations"] = len(self.violations)
        return d


def _blank_checked(checkers) -> dict:
    return {c: {"in_hypothesis": 0, "pass": 0, "fail": 0, "out_of_hypothesis": 0} for c in checkers}


def _violation_record(config: CurveConfiguration, checker: str, messages: list[str]) -> dict:
    lat = config.lattice
    return {
        "checker": checker,
        "lattice": {"gram": [list(r) for r in lat.gram], "canonical": list(lat.canonical)},
        "vertices": [{"class": list(v.cls), "mult": v.mult} for v in config],
        "messages": messages,
    }


class _Accumulator:
    def __init__(self, checkers):
        self.checkers = list(checkers)
        self.count = 0
        self.checked = _blank_checked(checkers)
        self.violations: list[dict] = []
        self.hist = {h: Counter() for h in HISTOGRAMS}

    def add(self, config: CurveConfiguration, b_plus_one: bool) -> None:
        self.count += 1
        if not self.checkers:
            return
        results, notes = run_checkers(config, self.checkers, b_plus_one)
        for name, res in results.items():
            c = self.checked[name]
            if res is None:
                c["out_of_hypothesis"] += 1
                continue
            c["in_hypothesis"] += 1
            if res:
                c["fail"] += 1
                self.violations.append(_violation_record(config, name, res))
            else:
                c["pass"] += 1
        for h in HISTOGRAMS:
            if h in notes:
                self.hist[h][notes[h]] += 1

    def merge(self, other: dict) -> None:
        self.count += other["count"]
        for name, c in other["checked"].items():
            for k, v in c.items():
                self.checked[name][k] += v
        self.violations.extend(other["violations"])
        for h, cnt in other["hist"].items():
            self.hist[h].update(cnt)

    def export(self) -> dict:
        return {"count": self.count, "checked": self.checked, "violations": self.violations, "hist": self.hist}


def _run_chunk(args) -> list[tuple[int, bytes, dict, dict]]:
    bounds, checkers, firsts, b_plus_one = args
    tables = _Tables(bounds)
    out = []
    for first in firsts:
        stages: Counter = Counter()
        acc = _Accumulator(checkers)
        h = hashlib.sha256()
        for items in _partition(tables, first, stages):
            h.update(_item_bytes(tables, items))
            acc.add(_make_config(tables, items), b_plus_one)
        out.append((first, h.digest(), dict(stages), acc.export()))
    return out


def run_census(
    bounds: CensusBounds,
    checkers: Iterable[str] = CHECKERS,
    jobs: int = 1,
    configs: Iterable[CurveConfiguration] | None = None,
) -> CensusReport:
    """Check every enumerated configuration (or the given ones) with ``checkers``."""
    checkers = list(checkers)
    unknown = set(checkers) - set(CHECKERS)
    if unknown:
        raise ValueError(f"unknown checkers: {sorted(unknown)}")
    start = time.perf_counter()
    lat = bounds.lattice
    b_plus_one = signature(lat)[0] == 1
    report = CensusReport(
        lattice={"gram": [list(r) for r in lat.gram], "canonical": list(lat.canonical), "labels": list(lat.labels)},
        bounds={
            "max_vertices": bounds.max_vertices,
            "max_mult": bounds.max_mult,
            "coeff_bound": bounds.coeff_bound,
            "require_connected": bounds.require_connected,
            "require_nef": bounds.require_nef,
            "require_genus0_total": bounds.require_genus0_total,
        },
        checkers=checkers,
    )
    acc = _Accumulator(checkers)
    stream = hashlib.sha256()
    stages: Counter = Counter()
    if configs is not None:
        for cfg in configs:
            stream.update(repr([(list(v.cls), v.mult) for v in cfg]).encode() + b"\n")
            acc.add(cfg, signature(cfg.lattice)[0] == 1)
    else:
        n = len(candidate_classes(lat, bounds.coeff_bound))
        report.candidate_classes = n
        firsts = list(range(n))
        if jobs <= 1:
            chunks = [_run_chunk((bounds, checkers, firsts, b_plus_one))]
        else:
            # interleave so the expensive low indices spread across workers
            tasks = [(bounds, checkers, firsts[i::jobs * 4], b_plus_one) for i in range(jobs * 4)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                chunks = list(pool.map(_run_chunk, tasks))
        parts = sorted(itertools.chain.from_iterable(chunks), key=lambda t: t[0])
        for _, digest, st, exported in parts:
            stream.update(digest)
            stages.update(st)
            acc.merge(exported)
    report.candidates = acc.count
    report.stages = {s: stages.get(s, 0) for s in STAGES}
    report.checked = acc.checked
    report.violations = acc.violations
    report.histograms = {h: {str(k): v for k, v in sorted(c.items())} for h, c in acc.hist.items()}
    report.fingerprint = stream.hexdigest()
    report.wall_time = time.perf_counter() - start
    return report


@dataclass(frozen=True)
class BlowupRecord:
    config: CurveConfiguration
    depth: int
    origin: str  # "smooth" or "comb"
    moves: tuple[Move, ...]

    @property
    def expected_tag(self) -> Codim1Tag:
        if self.origin == "smooth" and self.depth == 0:
            return Codim1Tag.NotApplicable  # a lone smooth curve is irreducible
        if self.origin == "smooth":
            return Codim1Tag.BlowupOfSmooth
        return Codim1Tag.BlowupOfComb if self.depth else Codim1Tag.Comb


def _seed_origin(seed: CurveConfiguration) -> str:
    if len(seed) == 1:
        v = seed[0]
        if v.mult == 1 and seed.squares[0] >= 0 and seed.genera[0] == 0:
            return "smooth"
    elif comb_structure(seed) is not None:
        return "comb"
    raise ValueError(f"seed {seed!r} is neither a smooth genus-0 curve of non-negative square nor a comb")


def _blowup_targets(cfg: CurveConfiguration, origin: str, depth: int) -> list[Move]:
    if origin == "smooth" and depth == 0:
        return [Move(MoveKind.BlowUp1, (0,))]
    neg = [i for i in range(len(cfg)) if cfg.squares[i] < 0]
    moves = [Move(MoveKind.BlowUp1, (i,)) for i in neg]
    moves += [
        Move(MoveKind.BlowUp2, (i, j))
        for i, j in itertools.combinations(neg, 2)
        if cfg.pairings[i][j] >= 1
    ]
    return moves


def blowup_census(seeds: Iterable[CurveConfiguration], depth: int) -> Iterator[BlowupRecord]:
    """All infinitely-near blow-up sequences of length ``<= depth`` from the seeds.

    After the first blow-up of a smooth seed, and throughout for a comb, only
    components of negative square are blown up (at a point, or at the
    intersection of two of them).
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    for seed in seeds:
        origin = _seed_origin(seed)
        level = {seed: ()}
        yield BlowupRecord(seed, 0, origin, ())
        for d in range(depth):
            nxt: dict = {}
            for cfg, hist in level.items():
                for move in _blowup_targets(cfg, origin, d):
                    out = apply_blowup(cfg, move)
                    if out not in nxt:
                        nxt[out] = hist + (move,)
            level = nxt
            for cfg, hist in level.items():
                yield BlowupRecord(cfg, d + 1, origin, hist)


def blowup_roundtrip(record: BlowupRecord) -> list[str]:
    """Classify a blow-up and compare with how it was built."""
    res = classify_codim1(record.config)
    out = []
    if res.tag is not record.expected_tag:
        out.append(f"expected {record.expected_tag.value}, got {res.tag.value} ({res.reason})")
    elif res.tag is not Codim1Tag.NotApplicable:
        if len(res.witness) != record.depth:
            out.append(f"witness length {len(res.witness)} != depth {record.depth}")
        if not res.replays():
            out.append("witness does not replay")
    if not is_connected(record.config) or validate(record.config):
        out.append("blow-up left the valid connected configurations")
    if genus(record.config.lattice, record.config.total) != 0:
        out.append("total genus changed")
    return out
