"""JSON input documents and DOT export.

A document looks like::

    {"lattice": {"preset": "cp2_blowup", "k": 5},
     "vertices": [{"class": [2, 0, -1, -1, -1, -1], "mult": 1}, ...]}

or uses ``{"gram": [[...], ...], "canonical": [...]}`` for the lattice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .config import ConfigError, CurveConfiguration, Vertex, canonicalize
from .lattice import IntersectionLattice, LatticeError, preset_lattice


class InputError(ValueError):
    """A document that does not describe a lattice and a configuration."""


@dataclass(frozen=True)
class InputDocument:
    config: CurveConfiguration
    # how the lattice was given, kept for serialization
    preset: tuple[str, int] | None = None

    @property
    def lattice(self) -> IntersectionLattice:
        return self.config.lattice


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {json.dumps(value)}")
    return value


def _int_list(value, where: str) -> list[int]:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list of integers, got {json.dumps(value)}")
    return [_int(x, f"{where}[{i}]") for i, x in enumerate(value)]


def _parse_lattice(spec) -> tuple[IntersectionLattice, tuple[str, int] | None]:
    if not isinstance(spec, dict):
        raise InputError("lattice: expected an object")
    if "preset" in spec:
        extra = set(spec) - {"preset", "k"}
        if extra:
            raise InputError(f"lattice: unexpected fields {sorted(extra)}")
        if "k" not in spec:
            raise InputError("lattice.k: missing")
        name = spec["preset"]
        k = _int(spec["k"], "lattice.k")
        try:
            return preset_lattice(name, k), (name, k)
        except LatticeError as exc:
            raise InputError(f"lattice.preset: {exc}") from None
    for key in ("gram", "canonical"):
        if key not in spec:
            raise InputError(f"lattice.{key}: missing (give either preset+k or gram+canonical)")
    gram = spec["gram"]
    if not isinstance(gram, list):
        raise InputError("lattice.gram: expected a list of rows")
    rows = tuple(tuple(_int_list(r, f"lattice.gram[{i}]")) for i, r in enumerate(gram))
    canonical = tuple(_int_list(spec["canonical"], "lattice.canonical"))
    labels = spec.get("labels", ())
    try:
        return IntersectionLattice(rows, canonical, tuple(labels)), None
    except LatticeError as exc:
        raise InputError(f"lattice: {exc}") from None


def parse_document(obj) -> InputDocument:
    if not isinstance(obj, dict):
        raise InputError("document: expected a JSON object")
    for key in ("lattice", "vertices"):
        if key not in obj:
            raise InputError(f"{key}: missing")
    lattice, preset = _parse_lattice(obj["lattice"])
    raw = obj["vertices"]
    if not isinstance(raw, list):
        raise InputError("vertices: expected a list")
    verts = []
    for i, v in enumerate(raw):
        where = f"vertices[{i}]"
        if not isinstance(v, dict) or "class" not in v:
            raise InputError(f"{where}: expected an object with a 'class' field")
        cls = _int_list(v["class"], f"{where}.class")
        if len(cls) != lattice.rank:
            raise InputError(f"{where}.class: length {len(cls)} does not match lattice rank {lattice.rank}")
        mult = _int(v.get("mult", 1), f"{where}.mult")
        if mult < 1:
            raise InputError(f"{where}.mult: multiplicity must be at least 1, got {mult}")
        verts.append(Vertex(tuple(cls), mult))
    try:
        config = CurveConfiguration(lattice, tuple(verts))
    except ConfigError as exc:
        raise InputError(f"vertices: {exc}") from None
    return InputDocument(config, preset)


def parse_input(data: bytes | str) -> InputDocument:
    """Parse a UTF-8 JSON document; errors name the line or the field."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"input is not UTF-8: {exc}") from None
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_document(obj)


def lattice_to_json(lattice: IntersectionLattice, preset: tuple[str, int] | None = None) -> dict:
    if preset is not None:
        return {"preset": preset[0], "k": preset[1]}
    return {"gram": [list(r) for r in lattice.gram], "canonical": list(lattice.canonical)}


def config_to_json(config: CurveConfiguration, preset: tuple[str, int] | None = None) -> dict:
    return {
        "lattice": lattice_to_json(config.lattice, preset),
        "vertices": [{"class": list(v.cls), "mult": v.mult} for v in config],
    }


def serialize(doc: InputDocument | CurveConfiguration) -> str:
    if isinstance(doc, CurveConfiguration):
        doc = InputDocument(doc)
    return json.dumps(config_to_json(doc.config, doc.preset), indent=2) + "\n"


def export_dot(config: CurveConfiguration, name: str = "configuration") -> str:
    """Undirected DOT graph in canonical vertex order, edges labelled by pairing."""
    cfg = canonicalize(config)
    lines = [f"graph {name} {{", "  node [shape=box];"]
    for i, v in enumerate(cfg):
        coeffs = " ".join(str(c) for c in v.cls)
        label = f"[{coeffs}] x{v.mult} | sq={cfg.squares[i]} g={cfg.genera[i]}"
        lines.append(f'  v{i} [label="{label}"];')
    p = cfg.pairings
    for i in range(len(cfg)):
        for j in range(i + 1, len(cfg)):
            if p[i][j] > 0:
                lines.append(f'  v{i} -- v{j} [label="{p[i][j]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
