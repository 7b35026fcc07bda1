"""Intersection lattices and the numerical invariants of a homology class.

A lattice is an abstract stand-in for ``H_2(M; Z)``: a symmetric integer Gram
matrix together with a distinguished characteristic class ``K`` (the
canonical class).  Classes are plain tuples of integers in the lattice basis.

Nothing here decides whether a class is effective; every class handed to the
library is assumed effective, and only the lattice-theoretic consequences are
computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

Class = tuple[int, ...]


class LatticeError(ValueError):
    """Rejected lattice or class input (shape, symmetry, parity)."""


def _as_class(values: Sequence[int]) -> Class:
    out = []
    for v in values:
        if isinstance(v, bool) or int(v) != v:
            raise LatticeError(f"class coefficients must be integers, got {v!r}")
        out.append(int(v))
    return tuple(out)


@dataclass(frozen=True)
class IntersectionLattice:
    """Integer lattice with a symmetric pairing and a characteristic class.

    ``labels`` name the basis vectors and are only used for printing; the
    presets use ``H, E1, ...`` and ``B, F, E1, ...``.
    """

    gram: tuple[tuple[int, ...], ...]
    canonical: Class
    labels: tuple[str, ...] = field(default=())
    _memo: dict = field(default_factory=dict, init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        gram = tuple(_as_class(row) for row in self.gram)
        r = len(gram)
        if r == 0:
            raise LatticeError("lattice rank must be positive")
        for i, row in enumerate(gram):
            if len(row) != r:
                raise LatticeError(f"gram row {i} has length {len(row)}, expected {r}")
        for i in range(r):
            for j in range(i + 1, r):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError(
                        f"gram is not symmetric: entry ({i},{j})={gram[i][j]} "
                        f"but ({j},{i})={gram[j][i]}"
                    )
        canonical = _as_class(self.canonical)
        if len(canonical) != r:
            raise LatticeError(f"canonical class has length {len(canonical)}, expected {r}")
        # K.b == b.b (mod 2) on a basis implies it for every class.
        for i in range(r):
            kb = sum(canonical[j] * gram[j][i] for j in range(r))
            if (kb - gram[i][i]) % 2:
                raise LatticeError(
                    f"canonical class is not characteristic: K.b{i}={kb}, b{i}.b{i}={gram[i][i]}"
                )
        labels = tuple(self.labels) if self.labels else tuple(f"b{i}" for i in range(r))
        if len(labels) != r:
            raise LatticeError(f"expected {r} basis labels, got {len(labels)}")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "canonical", canonical)
        object.__setattr__(self, "labels", labels)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def check(self, e: Sequence[int]) -> Class:
        e = _as_class(e)
        if len(e) != self.rank:
            raise LatticeError(f"class {e} has length {len(e)}, lattice rank is {self.rank}")
        return e

    def invariants(self, e: Class) -> tuple[int, int]:
        """``(e.e, K.e)`` for an already checked class, memoized per lattice."""
        got = self._memo.get(e)
        if got is None:
            got = (raw_pair(self.gram, e, e), raw_pair(self.gram, self.canonical, e))
            if len(self._memo) < 1 << 18:
                self._memo[e] = got
        return got

    def pairing(self, a: Class, b: Class) -> int:
        """``a . b`` for already checked classes, memoized per lattice."""
        key = (a, b) if a <= b else (b, a)
        got = self._memo.get(key)
        if got is None:
            got = raw_pair(self.gram, a, b)
            if len(self._memo) < 1 << 18:
                self._memo[key] = got
        return got

    def zero(self) -> Class:
        return (0,) * self.rank

    def basis(self, i: int) -> Class:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def format(self, e: Sequence[int]) -> str:
        """Human readable class, e.g. ``2H-E1-E2``."""
        parts = []
        for c, name in zip(e, self.labels):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}{name}")
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s[0] == "+" else s

    def extended(self, label: str | None = None) -> "IntersectionLattice":
        """Lattice with one extra class of square -1, orthogonal to the old basis.

        The canonical class picks up the new exceptional class with
        coefficient one, as for a blow-up.
        """
        r = self.rank
        gram = [list(row) + [0] for row in self.gram]
        gram.append([0] * r + [-1])
        if label is None:
            n = 1 + sum(1 for lab in self.labels if lab.startswith("E"))
            label = f"E{n}"
            while label in self.labels:
                n += 1
                label = f"E{n}"
        return IntersectionLattice(
            tuple(tuple(row) for row in gram), self.canonical + (1,), self.labels + (label,)
        )


def pair(lattice: IntersectionLattice, a: Sequence[int], b: Sequence[int]) -> int:
    """The intersection number ``a . b``."""
    return raw_pair(lattice.gram, lattice.check(a), lattice.check(b))


def raw_pair(g: tuple[tuple[int, ...], ...], a: Class, b: Class) -> int:
    """Unchecked pairing for callers that already validated lengths."""
    total = 0
    for i, ai in enumerate(a):
        if ai:
            row = g[i]
            total += ai * sum(row[j] * bj for j, bj in enumerate(b) if bj)
    return total


def adjunction(lattice: IntersectionLattice, e: Sequence[int]) -> int:
    """``adj(e) = e.e + K.e``."""
    sq, k = lattice.invariants(lattice.check(e))
    return sq + k


def genus(lattice: IntersectionLattice, e: Sequence[int]) -> int:
    """The J-genus ``(e.e + K.e)/2 + 1``; exact because K is characteristic."""
    adj = adjunction(lattice, e)
    assert adj % 2 == 0, "parity broken: canonical class is not characteristic"
    return adj // 2 + 1


def j_dimension(lattice: IntersectionLattice, e: Sequence[int]) -> tuple[int, int]:
    """Return ``(iota, l)`` with ``iota = (e.e - K.e)/2`` and ``l = max(iota, 0)``."""
    sq, k = lattice.invariants(lattice.check(e))
    d = sq - k
    assert d % 2 == 0
    iota = d // 2
    return iota, max(iota, 0)


def preset_lattice(kind: str, k: int) -> IntersectionLattice:
    """``cp2_blowup``: CP^2 blown up k times; ``ruled_blowup``: S^2 x S^2 blown up k times."""
    if k < 0:
        raise LatticeError("k must be non-negative")
    if kind == "cp2_blowup":
        r = k + 1
        gram = [[0] * r for _ in range(r)]
        gram[0][0] = 1
        for i in range(1, r):
            gram[i][i] = -1
        canonical = (-3,) + (1,) * k
        labels = ("H",) + tuple(f"E{i}" for i in range(1, k + 1))
    elif kind == "ruled_blowup":
        r = k + 2
        gram = [[0] * r for _ in range(r)]
        gram[0][1] = gram[1][0] = 1
        for i in range(2, r):
            gram[i][i] = -1
        canonical = (-2, -2) + (1,) * k
        labels = ("B", "F") + tuple(f"E{i}" for i in range(1, k + 1))
    else:
        raise LatticeError(f"unknown lattice preset {kind!r}")
    return IntersectionLattice(tuple(tuple(row) for row in gram), canonical, labels)


def signature(lattice: IntersectionLattice | Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Inertia ``(b_plus, b_minus, b_zero)`` of the Gram matrix.

    Symmetric Gaussian elimination over the rationals, using congruence
    transformations only, so Sylvester's law applies.
    """
    gram = lattice.gram if isinstance(lattice, IntersectionLattice) else lattice
    a = [[Fraction(x) for x in row] for row in gram]
    n = len(a)
    for i, row in enumerate(a):
        if len(row) != n or any(a[i][j] != a[j][i] for j in range(n)):
            raise LatticeError("signature needs a square symmetric matrix")
    pos = neg = 0
    while a:
        n = len(a)
        p = next((i for i in range(n) if a[i][i] != 0), None)
        if p is None:
            hit = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if hit is None:
                break
            i, j = hit
            # b_i -> b_i + b_j makes the diagonal entry 2 a_ij != 0
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            p = i
        piv = a[p][p]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        rest = [r for r in range(n) if r != p]
        a = [[a[r][c] - a[r][p] * a[p][c] / piv for c in rest] for r in rest]
    total = len(gram)
    return pos, neg, total - pos - neg
