"""Truncated exponential series over the weight lattice.

Every series lives in a frame: a simple system whose positive cone fixes
both the expansion directions and the coordinates.  A series stores the
coefficient of e^{offset - mu} keyed by the coordinate tuple of mu in the
simple basis; the offset is the frame's rho unless stated otherwise.
Truncation is by height (coordinate sum) of mu.  Keys may go negative in
intermediate sums; only assembled identities are expected to stay in the
cone.

Geometric factors 1/(1 + e^{-gamma}) are expanded along the positive
direction of the frame: a negative gamma is first rewritten via
1/(1 + e^{gamma'}) = e^{-gamma'}/(1 + e^{-gamma'}) with gamma' = -gamma.
Skipping that rewrite silently changes which power series the product
denotes, so terms are always normalized before expansion.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Optional, Sequence

from .errors import StructuralError
from .simple import SimpleSystem
from .weights import Weight


@dataclass(frozen=True)
class GeometricTerm:
    """coeff * e^{exponent} / prod_{gamma in denoms} (1 + e^{-gamma})."""

    coeff: object
    exponent: Weight
    denoms: tuple

    @staticmethod
    def make(coeff, exponent: Weight, denoms: Sequence[Weight]) -> "GeometricTerm":
        return GeometricTerm(coeff, exponent,
                             tuple(sorted(denoms, key=lambda w: w.coords())))

    def to_json(self) -> dict:
        return {
            "coeff": str(self.coeff),
            "exponent": {"eps": [str(c) for c in self.exponent.eps],
                         "delta": [str(c) for c in self.exponent.delta]},
            "denominators": [{"eps": [str(c) for c in g.eps],
                              "delta": [str(c) for c in g.delta]}
                             for g in self.denoms],
        }


def normalize(term: GeometricTerm, frame: SimpleSystem) -> GeometricTerm:
    """Rewrite all denominator roots to be positive in the frame."""
    exponent = term.exponent
    denoms = []
    for g in term.denoms:
        if frame.is_positive_root(g):
            denoms.append(g)
        elif frame.is_positive_root(-g):
            exponent = exponent + g
            denoms.append(-g)
        else:
            raise StructuralError("denominator %s is not a root here" % g)
    return GeometricTerm.make(term.coeff, exponent, denoms)


def act(w, term: GeometricTerm) -> GeometricTerm:
    """Image of the term under a signed permutation (coefficient untouched)."""
    return GeometricTerm.make(term.coeff, w.apply(term.exponent),
                              [w.apply(g) for g in term.denoms])


def canonical_terms(terms: Sequence[GeometricTerm], frame: SimpleSystem) -> tuple:
    """Normalize, merge equal (exponent, denominators) and drop zeros.

    Two finite lists of geometric terms denote the same function iff their
    canonical forms coincide, so this is the exact closed-form comparison.
    """
    acc = {}
    for t in terms:
        nt = normalize(t, frame)
        key = (nt.exponent.coords(), tuple(g.coords() for g in nt.denoms))
        cur = acc.get(key)
        if cur is None:
            acc[key] = nt
        else:
            acc[key] = GeometricTerm(cur.coeff + nt.coeff, cur.exponent, cur.denoms)
    out = [t for t in acc.values() if t.coeff != 0]
    return tuple(sorted(out, key=lambda t: (t.exponent.coords(),
                                            tuple(g.coords() for g in t.denoms))))


class FormalSeries:
    """Coefficients of e^{offset - mu}, mu keyed in the frame's simple basis."""

    __slots__ = ("frame", "H", "offset", "data")

    def __init__(self, frame: SimpleSystem, H: int, offset: Optional[Weight] = None,
                 data: Optional[dict] = None):
        self.frame = frame
        self.H = H
        self.offset = frame.rho if offset is None else offset
        self.data = {} if data is None else data

    def _compatible(self, other: "FormalSeries") -> None:
        if self.frame is not other.frame and self.frame != other.frame:
            raise StructuralError("series frames differ")
        if self.H != other.H or self.offset != other.offset:
            raise StructuralError("series windows differ")

    def copy(self) -> "FormalSeries":
        return FormalSeries(self.frame, self.H, self.offset, dict(self.data))

    def add(self, other: "FormalSeries") -> "FormalSeries":
        self._compatible(other)
        data = dict(self.data)
        for k, v in other.data.items():
            nv = data.get(k, 0) + v
            if nv:
                data[k] = nv
            else:
                data.pop(k, None)
        return FormalSeries(self.frame, self.H, self.offset, data)

    def scale(self, c) -> "FormalSeries":
        if c == 0:
            return FormalSeries(self.frame, self.H, self.offset, {})
        return FormalSeries(self.frame, self.H, self.offset,
                            {k: c * v for k, v in self.data.items()})

    def mul_binomial(self, sign: int, root: Weight) -> "FormalSeries":
        """Multiply by (1 + sign * e^{-root}) for a positive root."""
        step = self.frame.cone_int(root)
        data = dict(self.data)
        for k, v in self.data.items():
            k2 = tuple(a + b for a, b in zip(k, step))
            if _ht(k2) > self.H:
                continue
            nv = data.get(k2, 0) + sign * v
            if nv:
                data[k2] = nv
            else:
                data.pop(k2, None)
        return FormalSeries(self.frame, self.H, self.offset, data)

    def mul_geometric(self, root: Weight) -> "FormalSeries":
        """Multiply by 1/(1 + e^{-root}) for a positive root of the frame."""
        step = self.frame.cone_int(root)
        return FormalSeries(self.frame, self.H, self.offset,
                            _geometric(self.data, step, self.H))

    def coefficient_at(self, weight: Weight):
        """Coefficient of e^{weight}."""
        key = self.frame.cone_key(self.offset - weight)
        return self.data.get(key, 0)

    def nonzero_count(self) -> int:
        return len(self.data)

    def negative_support(self) -> list:
        """Keys with a negative coordinate (exponents outside offset - Q+)."""
        return sorted((k for k in self.data if any(c < 0 for c in k)),
                      key=lambda k: (_ht(k), k))

    def eq_report(self, other: "FormalSeries") -> Optional[dict]:
        """None if equal on the window; else data about the first difference."""
        self._compatible(other)
        diffs = []
        for k in set(self.data) | set(other.data):
            a, b = self.data.get(k, 0), other.data.get(k, 0)
            if a != b:
                diffs.append((_ht(k), k, a, b))
        if not diffs:
            return None
        h, k, a, b = min(diffs)
        mu = _key_weight(self.frame, k)
        return {
            "exponent": str(self.offset - mu),
            "mu": [str(c) for c in k],
            "height": str(h),
            "left": str(a),
            "right": str(b),
        }

    def items_sorted(self) -> list:
        return sorted(self.data.items(), key=lambda kv: (_ht(kv[0]), kv[0]))

    def dump_lines(self) -> list:
        """One line per term: coefficient, mu over the frame, exponent."""
        out = []
        for k, v in self.items_sorted():
            mu = ",".join(str(c) for c in k)
            out.append("%s [%s] e^(%s)"
                       % (v, mu, self.offset - _key_weight(self.frame, k)))
        return out

    def to_json(self) -> dict:
        return {
            "offset": {"eps": [str(c) for c in self.offset.eps],
                       "delta": [str(c) for c in self.offset.delta]},
            "truncation_height": self.H,
            "terms": [{"mu": [str(c) for c in k], "coeff": str(v)}
                      for k, v in self.items_sorted()],
        }


def _ht(key: tuple):
    return sum(key)


def _key_weight(frame: SimpleSystem, key: tuple) -> Weight:
    out = Weight.zero(frame.m, frame.n)
    for c, b in zip(key, frame.simple_roots):
        if c:
            out = out + b.scale(Q(c) if isinstance(c, int) else c)
    return out


def _geometric(data: dict, step: tuple, H) -> dict:
    """Multiply key->coeff data by sum_k (-1)^k e^{-k * step}.

    Uses G[key] = F[key] - G[key - step], walking keys in height order;
    the step height is >= 1 so the recursion is well founded.
    """
    out = {}
    heap = [(_ht(k), k) for k in data if _ht(k) <= H]
    heapq.heapify(heap)
    seen = set()
    hstep = sum(step)
    while heap:
        h, k = heapq.heappop(heap)
        if k in seen:
            continue
        seen.add(k)
        prev = tuple(a - b for a, b in zip(k, step))
        g = data.get(k, 0) - out.get(prev, 0)
        if g:
            out[k] = g
            nk = tuple(a + b for a, b in zip(k, step))
            if h + hstep <= H and nk not in seen:
                heapq.heappush(heap, (h + hstep, nk))
    return out


def expand_term(term: GeometricTerm, frame: SimpleSystem, H,
                offset: Optional[Weight] = None) -> FormalSeries:
    """Expand one normalized geometric term in the frame's directions."""
    nt = normalize(term, frame)
    offset = frame.rho if offset is None else offset
    base = frame.cone_key(offset - nt.exponent)
    data = {base: nt.coeff} if _ht(base) <= H else {}
    for g in nt.denoms:
        data = _geometric(data, frame.cone_int(g), H)
    return FormalSeries(frame, H, offset, data)


def _expand_chunk(args) -> dict:
    terms, frame, H, offset = args
    acc = {}
    for t in terms:
        for k, v in expand_term(t, frame, H, offset).data.items():
            nv = acc.get(k, 0) + v
            if nv:
                acc[k] = nv
            else:
                acc.pop(k, None)
    return acc


def worker_count() -> int:
    """Worker processes to use, from SUPERDENOM_WORKERS (default 1)."""
    raw = os.environ.get("SUPERDENOM_WORKERS", "1")
    try:
        k = int(raw)
    except ValueError:
        return 1
    return max(k, 1)


def expand_terms(terms: Sequence[GeometricTerm], frame: SimpleSystem, H,
                 offset: Optional[Weight] = None,
                 workers: Optional[int] = None) -> FormalSeries:
    """Sum of the expansions of the terms, optionally across processes."""
    offset = frame.rho if offset is None else offset
    workers = worker_count() if workers is None else max(workers, 1)
    terms = list(terms)
    if workers == 1 or len(terms) < 2 * workers:
        return FormalSeries(frame, H, offset,
                            _expand_chunk((terms, frame, H, offset)))
    import multiprocessing
    chunks = [(terms[i::workers], frame, H, offset) for i in range(workers)]
    with multiprocessing.Pool(workers) as pool:
        parts = pool.map(_expand_chunk, chunks)
    acc = {}
    for part in parts:
        for k, v in part.items():
            nv = acc.get(k, 0) + v
            if nv:
                acc[k] = nv
            else:
                acc.pop(k, None)
    return FormalSeries(frame, H, offset, acc)
