import json
from pathlib import Path

from hypothesis import assume
from hypothesis import strategies as st

from nefcurves.config import CurveConfiguration, Vertex
from nefcurves.document import parse_input
from nefcurves.lattice import preset_lattice

DATA = Path(__file__).parent / "data"


def load(name: str) -> CurveConfiguration:
    return parse_input((DATA / f"{name}.json").read_bytes()).config


def cfg(kind, k, *pairs):
    return CurveConfiguration.of(preset_lattice(kind, k), pairs)


def cp2(k, *pairs):
    return cfg("cp2_blowup", k, *pairs)


def ruled(k, *pairs):
    return cfg("ruled_blowup", k, *pairs)


lattices = st.sampled_from(
    [preset_lattice("cp2_blowup", k) for k in range(4)]
    + [preset_lattice("ruled_blowup", k) for k in range(3)]
)


@st.composite
def classes(draw, lattice, bound=2):
    return tuple(draw(st.integers(-bound, bound)) for _ in range(lattice.rank))


@st.composite
def configurations(draw, max_vertices=4, max_mult=3, bound=2):
    """Valid configurations (pairwise pairings >= 0, adj >= -2)."""
    lat = draw(lattices)
    n = draw(st.integers(1, max_vertices))
    verts = []
    for _ in range(n):
        c = draw(classes(lat, bound))
        sq, k = lat.invariants(c)
        if sq + k < -2 or c == lat.zero():
            continue
        if any(lat.pairing(c, v.cls) < 0 for v in verts):
            continue
        if any(v.cls == c for v in verts) and sq < 0:
            continue
        verts.append(Vertex(c, draw(st.integers(1, max_mult))))
    assume(verts)
    return CurveConfiguration(lat, tuple(verts))


def dump(config) -> str:
    return json.dumps([[list(v.cls), v.mult] for v in config])


_SEEDS = [
    cp2(0, ((1,), 1)),
    cp2(0, ((2,), 1)),
    cp2(0, ((1,), 1), ((1,), 1)),
    ruled(0, ((1, 0), 1), ((0, 1), 1)),
    ruled(0, ((1, -1), 1), ((0, 1), 1), ((0, 1), 1)),
    ruled(0, ((1, 1), 1)),
]


@st.composite
def genus_zero_configurations(draw, max_blowups=3):
    """Connected genus-zero trees grown from smooth seeds by random blow-ups."""
    from nefcurves.moves import Move, MoveKind, apply_blowup

    c = draw(st.sampled_from(_SEEDS))
    for _ in range(draw(st.integers(0, max_blowups))):
        n = len(c)
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if c.pairings[i][j] > 0]
        if pairs and draw(st.booleans()):
            c = apply_blowup(c, Move(MoveKind.BlowUp2, draw(st.sampled_from(pairs))))
        else:
            c = apply_blowup(c, Move(MoveKind.BlowUp1, (draw(st.integers(0, n - 1)),)))
    return c
