"""Bow diagrams for admissible pairs and their two moves.

A pair is drawn by sorting the m+n coordinate lines by the value of the
defining functional, marking sharp-side coordinates `a` and the others
`b`, and joining the two coordinates of each element of S by a bow:
smile for a difference, frown for a sum.  The two moves (swapping the
vertices of a smile, sliding a bow past a free `a`) mirror the odd
reflections at S and the exchange moves, so connected components of the
pair graph become orbits of diagrams.  Every frown-free diagram
normalizes to b-a blocks followed by plain a's; a frown is pinned to the
front and the rest normalizes the same way.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Optional

from .errors import DomainError, StructuralError, ValidationError
from .roots import RootSystem
from .simple import (AdmissiblePair, derive, enumerate_admissible_pairs,
                     functional_for, make_pair, pair_components)
from .weights import Weight

SMILE = "smile"
FROWN = "frown"
_GLYPH = {SMILE: "⌣", FROWN: "⌢"}
_ASCII = {SMILE: "(_)", FROWN: "(^)"}
_DIAGRAM_FAMILIES = ("GL", "B_EPS", "B_DELTA", "D_EPS", "D_DELTA")


@dataclass(frozen=True)
class Diagram:
    """Marks in increasing functional order plus adjacent disjoint bows."""

    marks: tuple
    bows: tuple        # (left, right, kind), sorted, right = left + 1
    mode: str          # which user block carries the sharp roots

    def validate(self) -> "Diagram":
        if any(mk not in ("a", "b") for mk in self.marks):
            raise ValidationError("marks must be a or b")
        if self.marks.count("a") < self.marks.count("b"):
            raise ValidationError("more b marks than a marks")
        vertices = set()
        frowns = 0
        for left, right, kind in self.bows:
            if right != left + 1:
                raise ValidationError("bow (%d,%d) is not adjacent"
                                      % (left, right))
            if {self.marks[left], self.marks[right]} != {"a", "b"}:
                raise ValidationError("bow (%d,%d) joins equal marks"
                                      % (left, right))
            if vertices & {left, right}:
                raise ValidationError("bows share a vertex at (%d,%d)"
                                      % (left, right))
            vertices |= {left, right}
            if kind == FROWN:
                frowns += 1
                if (left, right) != (0, 1) or self.marks[0] != "a":
                    raise ValidationError("a frown may only lead as a-b")
            elif kind != SMILE:
                raise ValidationError("unknown bow kind %r" % (kind,))
        if frowns > 1:
            raise ValidationError("at most one frown")
        for p, mk in enumerate(self.marks):
            if mk == "b" and p not in vertices:
                raise ValidationError("b at position %d is not a vertex" % p)
        return self

    def bow_at(self, left: int) -> Optional[tuple]:
        for bow in self.bows:
            if bow[0] == left:
                return bow
        return None

    def is_vertex(self, p: int) -> bool:
        return any(p in (left, right) for left, right, _ in self.bows)

    def has_frown(self) -> bool:
        return any(kind == FROWN for _, _, kind in self.bows)

    def render(self, style: str = "unicode") -> str:
        glyphs = _GLYPH if style == "unicode" else _ASCII
        out = []
        for p, mk in enumerate(self.marks):
            out.append(mk)
            bow = self.bow_at(p)
            if bow is not None:
                out.append(glyphs[bow[2]])
        return "".join(out)

    def to_json(self) -> dict:
        return {
            "marks": "".join(self.marks),
            "bows": [{"left": left, "right": right, "kind": kind}
                     for left, right, kind in self.bows],
            "mode": self.mode,
            "render": self.render(),
        }


def _mk(marks, bows, mode) -> Diagram:
    return Diagram(tuple(marks), tuple(sorted(bows)), mode).validate()


def from_pair(pair: AdmissiblePair, rs: Optional[RootSystem] = None) -> Diagram:
    """Draw the pair: order the coordinates by the functional, bow S."""
    rs = pair.rs if rs is None else rs
    if rs.family not in _DIAGRAM_FAMILIES:
        raise DomainError("diagrams cover the gl/B/D families")
    f = functional_for(pair.system)
    coords = [("e", i, f.x_eps(i)) for i in range(1, rs.m + 1)] \
        + [("d", j, f.x_delta(j)) for j in range(1, rs.n + 1)]
    coords.sort(key=lambda c: c[2])
    position = {(kind, idx): p for p, (kind, idx, _) in enumerate(coords)}
    marks = ["a" if kind == "e" else "b" for kind, _, _ in coords]
    bows = []
    for beta in pair.S:
        eps_c, delta_c = beta.coords()[:rs.m], beta.coords()[rs.m:]
        ei = next(i for i, c in enumerate(eps_c, 1) if c)
        dj = next(j for j, c in enumerate(delta_c, 1) if c)
        p, q = sorted((position[("e", ei)], position[("d", dj)]))
        if q != p + 1:
            raise ValidationError(
                "endpoints of %s are not neighbours in the functional order"
                % beta)
        same_sign = eps_c[ei - 1] * delta_c[dj - 1] > 0
        bows.append((p, q, FROWN if same_sign else SMILE))
    diagram = _mk(marks, bows, rs.marking_mode)
    if diagram.has_frown() and not (rs.family == "D_EPS" and rs.m > rs.n):
        raise ValidationError("sum bows occur only for D with more a's")
    return diagram


# ---------------------------------------------------------------------------
# moves

def move_swap(d: Diagram, bow: int) -> Diagram:
    """Exchange the two marks of a smile bow (the odd reflection at it)."""
    if not 0 <= bow < len(d.bows):
        raise DomainError("no bow with index %d" % bow)
    left, right, kind = d.bows[bow]
    if kind != SMILE:
        raise DomainError("only smile bows swap")
    marks = list(d.marks)
    marks[left], marks[right] = marks[right], marks[left]
    return _mk(marks, d.bows, d.mode)


def move_slide(d: Diagram, window: int) -> Diagram:
    """Rewrite ab-a <-> a-ba on the three positions starting at window.

    The bow hops over the free `a`; marks stay put.  Mirrors the exchange
    move, which changes S while keeping the simple system.
    """
    if not 0 <= window <= len(d.marks) - 3:
        raise DomainError("window %d out of range" % window)
    k = window
    if list(d.marks[k:k + 3]) not in (["a", "b", "a"],):
        raise DomainError("window is not an a,b,a stretch")
    here = {bow[:2]: bow for bow in d.bows}
    if (k + 1, k + 2) in here and not d.is_vertex(k):
        old, new = here[(k + 1, k + 2)], (k, k + 1)
    elif (k, k + 1) in here and not d.is_vertex(k + 2):
        old, new = here[(k, k + 1)], (k + 1, k + 2)
    else:
        raise DomainError("window has no slidable bow")
    if old[2] != SMILE:
        raise DomainError("only smile bows slide")
    bows = [bow for bow in d.bows if bow != old] + [new + (SMILE,)]
    return _mk(d.marks, bows, d.mode)


def available_moves(d: Diagram) -> list:
    """Every legal (kind, argument) move, deterministically ordered."""
    out = [("swap", i) for i, bow in enumerate(d.bows) if bow[2] == SMILE]
    for k in range(len(d.marks) - 2):
        try:
            move_slide(d, k)
        except DomainError:
            continue
        out.append(("slide", k))
    return out


def apply_move(d: Diagram, move: tuple) -> Diagram:
    kind, arg = move
    if kind == "swap":
        return move_swap(d, arg)
    if kind == "slide":
        return move_slide(d, arg)
    raise DomainError("unknown move %r" % (move,))


# ---------------------------------------------------------------------------
# canonical forms

def canonical_form(d: Diagram) -> tuple:
    """Greedy left-to-right normal form plus the move word that reaches it.

    Smile bows are dragged left and oriented b-a; a frown is already
    pinned at the front, so normalization works to its right.
    """
    d.validate()
    word = []
    cur = d
    target = 2 if cur.has_frown() else 0
    while True:
        rest = [bow for bow in cur.bows if bow[2] == SMILE
                and bow[0] >= target]
        if not rest:
            break
        left = min(bow[0] for bow in rest)
        while left > target:
            if cur.marks[left] != "b":
                idx = cur.bows.index(cur.bow_at(left))
                cur = move_swap(cur, idx)
                word.append(("swap", left))
            cur = move_slide(cur, left - 1)
            word.append(("slide", left - 1))
            left -= 1
        if cur.marks[left] != "b":
            idx = cur.bows.index(cur.bow_at(left))
            cur = move_swap(cur, idx)
            word.append(("swap", left))
        target += 2
    return cur, tuple(word)


def canonical_smile(m: int, n: int, mode: str) -> Diagram:
    marks = ["b", "a"] * n + ["a"] * (m - n)
    return _mk(marks, [(2 * i, 2 * i + 1, SMILE) for i in range(n)], mode)


def canonical_frown(m: int, n: int, mode: str) -> Diagram:
    marks = ["a", "b"] + ["b", "a"] * (n - 1) + ["a"] * (m - n)
    bows = [(0, 1, FROWN)] + [(2 * i, 2 * i + 1, SMILE) for i in range(1, n)]
    return _mk(marks, bows, mode)


def equivalence_classes(rs: RootSystem, cap: Optional[int] = None) -> list:
    """Canonical forms of the move-graph components; their count is checked.

    Components are computed on the pairs themselves, under the moves the
    diagrams realise: odd reflections in S, and exchange moves that keep
    the difference/sum kind of the replaced root.  (Kind-changing
    exchanges also preserve the alternating sum, so the classes here are
    finer than equality of the sums; counting uses the bow moves only.)
    Each component's drawable members must share one canonical diagram.
    Some D pairs carry a sum root away from the front and have no
    diagram; they still belong to a component.  One class everywhere
    except D with m > n, which splits into the frown-free class and the
    frown class.
    """
    if rs.family not in _DIAGRAM_FAMILIES:
        raise DomainError("diagrams cover the gl/B/D families")
    if rs.defect < 1:
        raise DomainError("no bows without isotropic roots")
    pairs = enumerate_admissible_pairs(rs) if cap is None \
        else enumerate_admissible_pairs(rs, cap)
    out = []
    for component in pair_components(pairs, same_kind_only=True):
        canons = set()
        for pair in component:
            try:
                diagram = from_pair(pair)
            except ValidationError:
                continue
            canons.add(canonical_form(diagram)[0])
        if len(canons) != 1:
            raise StructuralError(
                "component of %s yields %d canonical diagrams"
                % (rs.stype.label(), len(canons)))
        out.append(canons.pop())
    if len(set(out)) != len(out):
        raise StructuralError("distinct components share a canonical form")
    out.sort(key=lambda d: d.render())
    expected = 2 if rs.family == "D_EPS" else 1
    if len(out) != expected:
        raise StructuralError(
            "%s falls into %d diagram classes, expected %d"
            % (rs.stype.label(), len(out), expected))
    return out


# ---------------------------------------------------------------------------
# reconstruction

def pair_from_diagram(d: Diagram, rs: RootSystem) -> AdmissiblePair:
    """Rebuild the admissible pair a diagram came from.

    The functional values are pinned by the family: consecutive integers
    from 1 for gl and B; for D, integers from 0 when a coordinate sits at
    zero (the frown situation) and half-integers otherwise.  Candidate
    ladders that fail to produce a valid pair are discarded; the diagram
    must determine the survivor uniquely and round-trip to itself.
    """
    d.validate()
    if rs.family not in _DIAGRAM_FAMILIES:
        raise DomainError("diagrams cover the gl/B/D families")
    size = rs.m + rs.n
    if len(d.marks) != size or d.marks.count("a") != rs.m:
        raise DomainError("diagram shape does not match %s" % rs.stype.label())
    if rs.family in ("GL", "B_EPS", "B_DELTA"):
        ladders = [[Q(p + 1) for p in range(size)]]
    elif d.has_frown():
        ladders = [[Q(p) for p in range(size)]]
    else:
        ladders = [[Q(2 * p + 1, 2) for p in range(size)],
                   [Q(p) for p in range(size)]]
    found = {}
    for xs in ladders:
        try:
            pair = _reconstruct(d, rs, xs)
        except (ValidationError, DomainError):
            continue
        found[pair.key()] = pair
    if not found:
        raise DomainError("no functional ladder reconstructs this diagram")
    if len(found) > 1:
        raise StructuralError("diagram does not determine the pair")
    (pair,) = found.values()
    if from_pair(pair, rs) != d:
        raise StructuralError("reconstructed pair draws differently")
    return pair


def _reconstruct(d: Diagram, rs: RootSystem, xs: list) -> AdmissiblePair:
    a_pos = [p for p, mk in enumerate(d.marks) if mk == "a"]
    b_pos = [p for p, mk in enumerate(d.marks) if mk == "b"]
    at = {}
    for i, p in enumerate(reversed(a_pos), 1):
        at[p] = rs.eps(i)
    for j, p in enumerate(reversed(b_pos), 1):
        at[p] = rs.delta(j)
    values = {at[p]: xs[p] for p in range(len(xs))}

    def val(w: Weight):
        return sum((c * values[rs.eps(i)]
                    for i, c in enumerate(w.coords()[:rs.m], 1) if c),
                   Q(0)) \
            + sum(c * values[rs.delta(j)]
                  for j, c in enumerate(w.coords()[rs.m:], 1) if c)

    pi = [a for a in rs.all_roots() if val(a) == 1]
    sys = derive(pi, rs)
    S = []
    for left, right, kind in d.bows:
        u, v = at[left], at[right]
        beta = (v - u) if kind == SMILE else (v + u)
        if not sys.is_positive_root(beta):
            beta = -beta
        S.append(beta)
    return make_pair(S, sys)
