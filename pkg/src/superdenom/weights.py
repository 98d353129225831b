"""Exact linear algebra over the epsilon/delta coordinate lattice.

A weight is a rational coordinate vector over the split basis
eps_1..eps_m, delta_1..delta_n.  The invariant bilinear form is diagonal:
(eps_i, eps_j) = delta_ij, (delta_i, delta_j) = -delta_ij, mixed pairs 0.
Everything runs in exact rational arithmetic; no floats appear anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Optional, Sequence

from .errors import StructuralError

ZERO = Q(0)
ONE = Q(1)


def _frac_tuple(values) -> tuple:
    return tuple(v if isinstance(v, Q) else Q(v) for v in values)


@dataclass(frozen=True)
class Weight:
    """Immutable rational vector split into an eps block and a delta block."""

    eps: tuple
    delta: tuple = ()

    @staticmethod
    def make(eps, delta=()) -> "Weight":
        return Weight(_frac_tuple(eps), _frac_tuple(delta))

    @staticmethod
    def zero(m: int, n: int) -> "Weight":
        return Weight((ZERO,) * m, (ZERO,) * n)

    @staticmethod
    def eps_unit(i: int, m: int, n: int) -> "Weight":
        """eps_i as a weight; i is 1-based."""
        coords = [ZERO] * m
        coords[i - 1] = ONE
        return Weight(tuple(coords), (ZERO,) * n)

    @staticmethod
    def delta_unit(j: int, m: int, n: int) -> "Weight":
        """delta_j as a weight; j is 1-based."""
        coords = [ZERO] * n
        coords[j - 1] = ONE
        return Weight((ZERO,) * m, tuple(coords))

    def dims(self) -> tuple:
        return (len(self.eps), len(self.delta))

    def coords(self) -> tuple:
        """Merged coordinate tuple, eps block first."""
        return self.eps + self.delta

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.eps) and all(c == 0 for c in self.delta)

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(
            tuple(a + b for a, b in zip(self.eps, other.eps)),
            tuple(a + b for a, b in zip(self.delta, other.delta)),
        )

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(
            tuple(a - b for a, b in zip(self.eps, other.eps)),
            tuple(a - b for a, b in zip(self.delta, other.delta)),
        )

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.eps), tuple(-a for a in self.delta))

    def scale(self, c) -> "Weight":
        c = c if isinstance(c, Q) else Q(c)
        return Weight(tuple(c * a for a in self.eps), tuple(c * a for a in self.delta))

    def _check(self, other: "Weight") -> None:
        if self.dims() != other.dims():
            raise StructuralError(
                "weight dimension mismatch: %s vs %s" % (self.dims(), other.dims())
            )

    def pretty(self) -> str:
        """Readable form such as 'e1 - d2' or '1/2*e1 + 3/2*d1'."""
        parts = []
        for label, block in (("e", self.eps), ("d", self.delta)):
            for idx, c in enumerate(block, start=1):
                if c == 0:
                    continue
                if c == 1:
                    body = "%s%d" % (label, idx)
                elif c == -1:
                    body = "-%s%d" % (label, idx)
                else:
                    body = "%s*%s%d" % (c, label, idx)
                parts.append(body)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __str__(self) -> str:
        return self.pretty()


def bilinear_form(x: Weight, y: Weight):
    """Invariant form: +1 on eps coordinates, -1 on delta coordinates."""
    if x.dims() != y.dims():
        raise StructuralError(
            "form needs equal dimensions: %s vs %s" % (x.dims(), y.dims())
        )
    acc = ZERO
    for a, b in zip(x.eps, y.eps):
        acc += a * b
    for a, b in zip(x.delta, y.delta):
        acc -= a * b
    return acc


def solve_in_span(vectors: Sequence[Weight], target: Weight) -> Optional[list]:
    """Exact coordinates of target in span(vectors), or None if outside.

    Plain Gaussian elimination over Fraction.  Free variables are pinned to
    zero, so the answer is unique whenever the vectors are independent.
    """
    if not vectors:
        return [] if target.is_zero() else None
    rows = len(vectors[0].coords())
    cols = len(vectors)
    mat = [[vectors[j].coords()[i] for j in range(cols)] + [target.coords()[i]]
           for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if mat[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = ONE / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if mat[i][cols] != 0:
            return None
    sol = [ZERO] * cols
    for row, c in enumerate(pivots):
        sol[c] = mat[row][cols]
    return sol


def rank_of(vectors: Sequence[Weight]) -> int:
    """Rank of the coordinate matrix, exact."""
    if not vectors:
        return 0
    rows = [list(v.coords()) for v in vectors]
    rank = 0
    ncols = len(rows[0])
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = ONE / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True)
class ConeCoords:
    """Coordinates of a vector in a fixed simple-root basis."""

    coeffs: tuple

    def height(self):
        acc = ZERO
        for c in self.coeffs:
            acc += c
        return acc

    def reconstruct(self, basis: Sequence[Weight]) -> Weight:
        if len(basis) != len(self.coeffs):
            raise StructuralError("basis size mismatch")
        out = Weight.zero(*basis[0].dims())
        for c, b in zip(self.coeffs, basis):
            if c != 0:
                out = out + b.scale(c)
        return out

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)


def in_positive_cone(nu: Weight, basis: Sequence[Weight], ring: str = "integer"
                     ) -> Optional[ConeCoords]:
    """Express nu as a nonnegative combination of basis vectors, if possible.

    ring='integer' additionally requires integer coefficients;
    ring='rational' accepts any nonnegative rationals.
    """
    if ring not in ("integer", "rational"):
        raise StructuralError("unknown ring %r" % ring)
    sol = solve_in_span(basis, nu)
    if sol is None:
        return None
    if any(c < 0 for c in sol):
        return None
    if ring == "integer" and any(c.denominator != 1 for c in sol):
        return None
    return ConeCoords(tuple(sol))


def height(mu: ConeCoords):
    """Sum of cone coordinates."""
    return mu.height()
