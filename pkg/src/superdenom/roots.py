"""Root data for the basic classical families gl, osp (B/C/D) and q.

Coordinates are normalized so that the eps block always carries the larger
side: eps count m >= delta count n, and the distinguished component
Delta# = {alpha even : (alpha, alpha) > 0} lies in the span of the eps_i.
A request such as B(1, 2) or gl(2|3) is re-embedded accordingly; the
user-facing labels are kept on the SuperType for reporting.

Root sets are stored as three frozensets: the fixed positive even roots,
all odd roots, and Delta#.  Positive odd roots are not fixed here; they
depend on the choice of simple system and live in `simple.SimpleSystem`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, Optional

from .errors import DomainError, ValidationError
from .weights import Weight, bilinear_form

FAMILIES = ("GL", "B", "D", "C", "Q")

# internal embeddings: which block carries the single/long roots
GL_TAG = "GL"
B_EPS = "B_EPS"        # so(2m+1) on eps, sp(2n) on delta
B_DELTA = "B_DELTA"    # sp(2m) on eps, so(2n+1) on delta
D_EPS = "D_EPS"        # so(2m) on eps, sp(2n) on delta
D_DELTA = "D_DELTA"    # sp(2m) on eps, so(2n) on delta
C_TAG = "C"
Q_TAG = "Q"


@dataclass(frozen=True)
class SuperType:
    """User-facing family label.  For C and Q only n is meaningful."""

    family: str
    m: int = 1
    n: int = 0
    sharp_choice: Optional[str] = None  # only for B(n,n): 'B_side'/'C_side'

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError("unknown family %r" % (self.family,))
        if self.family in ("C", "Q"):
            if self.n < 2:
                raise ValidationError("%s(n) needs n >= 2" % self.family)
        else:
            if self.m < 1 or self.n < 0:
                raise ValidationError("need m >= 1 and n >= 0")
            if self.family == "D" and max(self.m, self.n) < 1:
                raise ValidationError("D(m,n) needs positive ranks")
        if self.sharp_choice not in (None, "B_side", "C_side"):
            raise ValidationError("sharp_choice must be B_side or C_side")
        if self.sharp_choice is not None and not (
                self.family == "B" and self.m == self.n):
            raise ValidationError("sharp_choice only applies to B(n,n)")

    def label(self) -> str:
        if self.family in ("C", "Q"):
            return "%s(%d)" % (self.family, self.n)
        if self.family == "GL":
            return "gl(%d|%d)" % (self.m, self.n)
        extra = ""
        if self.family == "B" and self.m == self.n:
            extra = ",%s" % ("B#" if self.sharp_choice == "B_side" else "C#")
        return "%s(%d,%d%s)" % (self.family, self.m, self.n, extra)


@dataclass(frozen=True)
class RootSystem:
    """Root data in normalized coordinates (eps block >= delta block)."""

    stype: SuperType
    family: str            # internal embedding tag
    m: int                 # eps count
    n: int                 # delta count
    positive_even: frozenset
    odd: frozenset
    sharp: frozenset
    defect: int
    marking_mode: str      # 'M' or 'N', diagram metadata

    def even(self) -> frozenset:
        return self.positive_even | frozenset(-a for a in self.positive_even)

    def all_roots(self) -> frozenset:
        return self.even() | self.odd

    def is_root(self, w: Weight) -> bool:
        return w in self.even() or w in self.odd

    def is_odd_root(self, w: Weight) -> bool:
        return w in self.odd

    def eps(self, i: int) -> Weight:
        return Weight.eps_unit(i, self.m, self.n)

    def delta(self, j: int) -> Weight:
        return Weight.delta_unit(j, self.m, self.n)


def is_isotropic(alpha: Weight) -> bool:
    return bilinear_form(alpha, alpha) == 0


def _pair_roots(m: int, n: int) -> set:
    """U': eps_i +- eps_j and delta_i +- delta_j, i < j."""
    out = set()
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            a, b = Weight.eps_unit(i, m, n), Weight.eps_unit(j, m, n)
            out.add(a - b)
            out.add(a + b)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            a, b = Weight.delta_unit(i, m, n), Weight.delta_unit(j, m, n)
            out.add(a - b)
            out.add(a + b)
    return out


def _mixed_odd(m: int, n: int) -> set:
    """All +-eps_i +- delta_j."""
    out = set()
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            e, d = Weight.eps_unit(i, m, n), Weight.delta_unit(j, m, n)
            out.update({e + d, e - d, -e + d, -e - d})
    return out


def build(stype: SuperType) -> RootSystem:
    """Construct the normalized root data for a user-facing type."""
    fam = stype.family
    if fam == "GL":
        m, n = max(stype.m, stype.n), min(stype.m, stype.n)
        mode = "M" if stype.m >= stype.n else "N"
        pos_even = set()
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                pos_even.add(Weight.eps_unit(i, m, n) - Weight.eps_unit(j, m, n))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                pos_even.add(Weight.delta_unit(i, m, n) - Weight.delta_unit(j, m, n))
        odd = set()
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                v = Weight.eps_unit(i, m, n) - Weight.delta_unit(j, m, n)
                odd.update({v, -v})
        return RootSystem(stype, GL_TAG, m, n, frozenset(pos_even),
                          frozenset(odd), _positive_square(pos_even),
                          min(m, n), mode)

    if fam in ("B", "D"):
        p, q = stype.m, stype.n
        if fam == "B":
            if p > q or (p == q and stype.sharp_choice == "B_side"):
                tag, m, n = B_EPS, p, q
            else:
                tag, m, n = B_DELTA, q, p
        else:
            if p > q:
                tag, m, n = D_EPS, p, q
            else:
                tag, m, n = D_DELTA, q, p
        mode = "M" if tag in (B_EPS, D_EPS) else "N"
        pos_even = _pair_roots(m, n)
        odd = _mixed_odd(m, n)
        if tag == B_EPS:
            pos_even |= {Weight.eps_unit(i, m, n) for i in range(1, m + 1)}
            pos_even |= {Weight.delta_unit(j, m, n).scale(2) for j in range(1, n + 1)}
            for j in range(1, n + 1):
                d = Weight.delta_unit(j, m, n)
                odd.update({d, -d})
        elif tag == B_DELTA:
            pos_even |= {Weight.eps_unit(i, m, n).scale(2) for i in range(1, m + 1)}
            pos_even |= {Weight.delta_unit(j, m, n) for j in range(1, n + 1)}
            for i in range(1, m + 1):
                e = Weight.eps_unit(i, m, n)
                odd.update({e, -e})
        elif tag == D_EPS:
            pos_even |= {Weight.delta_unit(j, m, n).scale(2) for j in range(1, n + 1)}
        else:  # D_DELTA
            pos_even |= {Weight.eps_unit(i, m, n).scale(2) for i in range(1, m + 1)}
        return RootSystem(stype, tag, m, n, frozenset(pos_even), frozenset(odd),
                          _positive_square(pos_even), min(p, q), mode)

    if fam == "C":
        # n eps coordinates carrying C_n, one delta coordinate; all odd
        # roots +-eps_i +- delta_1 are isotropic and the defect is 1.
        m, n = stype.n, 1
        pos_even = set()
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                a, b = Weight.eps_unit(i, m, n), Weight.eps_unit(j, m, n)
                pos_even.update({a - b, a + b})
        pos_even |= {Weight.eps_unit(i, m, n).scale(2) for i in range(1, m + 1)}
        odd = _mixed_odd(m, n)
        return RootSystem(stype, C_TAG, m, n, frozenset(pos_even), frozenset(odd),
                          _positive_square(pos_even), 1, "M")

    # Q(n): Delta_0 = Delta_1 = A_{n-1} on eps with the positive definite form
    m, n = stype.n, 0
    pos_even = set()
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            pos_even.add(Weight.eps_unit(i, m, n) - Weight.eps_unit(j, m, n))
    odd = {v for v in pos_even} | {-v for v in pos_even}
    return RootSystem(stype, Q_TAG, m, n, frozenset(pos_even), frozenset(odd),
                      _positive_square(pos_even), 0, "M")


def _positive_square(pos_even: Iterable[Weight]) -> frozenset:
    """Delta#: even roots of positive square length, both signs."""
    out = set()
    for a in pos_even:
        if bilinear_form(a, a) > 0:
            out.add(a)
            out.add(-a)
    return frozenset(out)


def even_simple_roots(rs: RootSystem) -> tuple:
    """Simple roots of the fixed positive even system.

    A positive root is simple iff it is not a sum of two positive roots.
    """
    pos = rs.positive_even
    sums = set()
    pos_list = sorted(pos, key=_root_key)
    for i, a in enumerate(pos_list):
        for b in pos_list[i:]:
            sums.add(a + b)
    return tuple(a for a in pos_list if a not in sums)


def sharp_simple_roots(rs: RootSystem) -> tuple:
    """Simple roots of the positive part of Delta#."""
    pos = rs.sharp & rs.positive_even
    sums = set()
    pos_list = sorted(pos, key=_root_key)
    for i, a in enumerate(pos_list):
        for b in pos_list[i:]:
            sums.add(a + b)
    return tuple(a for a in pos_list if a not in sums)


def complement_simple_roots(rs: RootSystem) -> tuple:
    """Simple roots of the positive even roots outside Delta#."""
    pos = rs.positive_even - rs.sharp
    sums = set()
    pos_list = sorted(pos, key=_root_key)
    for i, a in enumerate(pos_list):
        for b in pos_list[i:]:
            sums.add(a + b)
    return tuple(a for a in pos_list if a not in sums)


def _root_key(w: Weight) -> tuple:
    return w.coords()


def root_json(w: Weight, odd: bool) -> dict:
    return {
        "eps": [str(c) for c in w.eps],
        "delta": [str(c) for c in w.delta],
        "parity": "odd" if odd else "even",
    }


def system_json(rs: RootSystem) -> dict:
    """Deterministic JSON payload listing the root data."""
    return {
        "type": rs.stype.label(),
        "family": rs.stype.family,
        "m": rs.stype.m if rs.stype.family not in ("C", "Q") else rs.stype.n,
        "n": rs.stype.n,
        "sharp_choice": rs.stype.sharp_choice,
        "eps_count": rs.m,
        "delta_count": rs.n,
        "defect": rs.defect,
        "positive_even": [root_json(a, False) for a in
                          sorted(rs.positive_even, key=_root_key)],
        "odd": [root_json(a, True) for a in sorted(rs.odd, key=_root_key)],
        "sharp_positive": [root_json(a, False) for a in
                           sorted(rs.sharp & rs.positive_even, key=_root_key)],
    }
