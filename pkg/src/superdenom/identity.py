"""Verification engine for the Weyl denominator identity and its lemmas.

The identity equates R e^rho, the Weyl denominator of the fixed root
datum times e^rho, with the alternating W#-sum X of the geometric terms
e^rho / prod_{beta in S}(1 + e^{-beta}) attached to an admissible pair.
Everything here is exact: truncated series carry rational coefficients,
closed-form statements are decided by canonicalizing finite term lists,
and cone questions go through rational elimination or the simplex in
`lp`.  Nothing is sampled and nothing is floated.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import DomainError, StructuralError
from .groups import (GroupDescriptor, SignedPermutation,
                     check_stabilizer_dichotomy, dominant_representative,
                     enumerate_group, external_delta_flips, orbit,
                     orbit_intersects_shifted_cone, reflection, sharp_group,
                     weyl_group)
from .lp import OPTIMAL, maximize
from .roots import (RootSystem, SuperType, build, even_simple_roots,
                    is_isotropic)
from .series import (FormalSeries, GeometricTerm, act, canonical_terms,
                     expand_terms)
from .simple import (AdmissiblePair, SimpleSystem, even_frame, make_pair,
                     second_class_pair, second_type_move, standard_pair)
from .weights import Weight, bilinear_form, solve_in_span


@lru_cache(maxsize=None)
def _sharp(rs: RootSystem) -> GroupDescriptor:
    return sharp_group(rs)


@lru_cache(maxsize=None)
def _full(rs: RootSystem) -> GroupDescriptor:
    return weyl_group(rs)


def _zero(rs: RootSystem) -> Weight:
    return Weight.zero(rs.m, rs.n)


def _us(t0: float) -> int:
    return int(round((time.perf_counter() - t0) * 1_000_000))


def _coords(w: Weight) -> tuple:
    return w.coords()


# ---------------------------------------------------------------------------
# the two sides

@dataclass(frozen=True)
class PhiData:
    """Per-element bookkeeping for the expanded form of X.

    phi is the sum of the w-images of S that land negative; abs_w maps
    each beta in S to the positive root +-w(beta).
    """

    w: SignedPermutation
    phi: Weight
    abs_w: dict


def phi_data(w: SignedPermutation, pair: AdmissiblePair) -> PhiData:
    frame = pair.system
    phi = _zero(pair.rs)
    abs_w = {}
    for b in pair.S:
        wb = w.apply(b)
        if frame.is_positive_root(wb):
            abs_w[b] = wb
        else:
            phi = phi + wb
            abs_w[b] = -wb
    return PhiData(w, phi, abs_w)


def y_term(pair: AdmissiblePair) -> GeometricTerm:
    """Y = e^rho / prod_{beta in S}(1 + e^{-beta})."""
    return GeometricTerm.make(1, pair.system.rho, pair.S)


def closed_form_terms(pair: AdmissiblePair) -> tuple:
    """The terms sgn(w) * w(Y) over W#, before any expansion."""
    frame = pair.system
    rho = frame.rho
    return tuple(
        GeometricTerm.make(w.sgn(), w.apply(rho), [w.apply(b) for b in pair.S])
        for w in _sharp(pair.rs).elements())


def lhs(pair: AdmissiblePair, H: int) -> FormalSeries:
    """R e^rho: odd factors expanded geometrically, even factors exactly."""
    frame = pair.system
    odd_pos = sorted(frame.pos_odd, key=_coords)
    series = expand_terms(
        [GeometricTerm.make(1, frame.rho, odd_pos)], frame, H, workers=1)
    for a in sorted(pair.rs.positive_even, key=_coords):
        series = series.mul_binomial(-1, a)
    return series


def rhs_closed(pair: AdmissiblePair, H: int,
               workers: Optional[int] = None) -> FormalSeries:
    """X as the alternating W#-sum of geometric terms, expanded to H."""
    return expand_terms(closed_form_terms(pair), pair.system, H,
                        workers=workers)


def rhs_expanded(pair: AdmissiblePair, H: int) -> FormalSeries:
    """X via the phi/|w| expansion; must agree with rhs_closed exactly."""
    frame = pair.system
    rho = frame.rho
    acc = {}
    for w in _sharp(pair.rs).elements():
        pd = phi_data(w, pair)
        base = frame.cone_key(rho - (w.apply(rho) + pd.phi))
        steps = [frame.cone_int(pd.abs_w[b]) for b in pair.S]
        _mu_accumulate(acc, base, steps, w.sgn(), H)
    return FormalSeries(frame, H, rho,
                        {k: v for k, v in acc.items() if v})


def _mu_accumulate(acc: dict, base: tuple, steps: list, sgn_w: int, H) -> None:
    """Add sgn_w * (-1)^{sum mu} at base + mu.steps for all mu >= 0 in range."""
    def rec(idx, key, sign):
        if idx == len(steps):
            if sum(key) <= H:
                acc[key] = acc.get(key, 0) + sign
            return
        step = steps[idx]
        cur, flip = key, sign
        while sum(cur) <= H:
            rec(idx + 1, cur, flip)
            cur = tuple(a + b for a, b in zip(cur, step))
            flip = -flip
    rec(0, base, sgn_w)


# ---------------------------------------------------------------------------
# reports

@dataclass
class VerificationReport:
    """Self-contained record of one verification run."""

    system: SuperType
    pair: Optional[AdmissiblePair]
    H: int
    lhs_terms: int
    rhs_terms: int
    equal: bool
    first_discrepancy: Optional[dict]
    timings: dict
    checks: dict
    note: str = ""

    def to_json(self) -> dict:
        return {
            "system": self.system.label(),
            "pair": None if self.pair is None else self.pair.to_json(),
            "H": self.H,
            "lhs_terms": self.lhs_terms,
            "rhs_terms": self.rhs_terms,
            "equal": self.equal,
            "first_discrepancy": self.first_discrepancy,
            "timings": {k: self.timings[k] for k in sorted(self.timings)},
            "checks": {k: self.checks[k] for k in sorted(self.checks)},
            "note": self.note,
        }


def verify(pair: AdmissiblePair, H: int = 8, workers: Optional[int] = None,
           expanded: bool = True, skew: bool = True) -> VerificationReport:
    """Compare both sides to height H; cross-check the expansion and skewness.

    Inequality is reported, never raised; the first discrepancy names the
    exponent and both coefficients.
    """
    timings, checks = {}, {}
    t = time.perf_counter()
    left = lhs(pair, H)
    timings["lhs"] = _us(t)
    t = time.perf_counter()
    right = rhs_closed(pair, H, workers=workers)
    timings["rhs_closed"] = _us(t)
    t = time.perf_counter()
    first = left.eq_report(right)
    checks["lhs_equals_rhs_closed"] = first is None
    timings["compare"] = _us(t)
    if expanded:
        t = time.perf_counter()
        expand = rhs_expanded(pair, H)
        diff = right.eq_report(expand)
        checks["expansion_matches_closed_form"] = diff is None
        if first is None:
            first = diff
        timings["rhs_expanded"] = _us(t)
    if skew:
        t = time.perf_counter()
        ok, witness = skew_invariance_check(pair, H, series=right,
                                            workers=workers)
        checks["skew_invariance"] = ok
        if first is None and witness is not None:
            first = witness
        timings["skew"] = _us(t)
    return VerificationReport(
        system=pair.rs.stype, pair=pair, H=H,
        lhs_terms=left.nonzero_count(), rhs_terms=right.nonzero_count(),
        equal=all(checks.values()), first_discrepancy=first,
        timings=timings, checks=checks)


def skew_invariance_check(pair: AdmissiblePair, H: int,
                          series: Optional[FormalSeries] = None,
                          workers: Optional[int] = None) -> tuple:
    """w X = sgn(w) X for every generating reflection of the full W."""
    frame = pair.system
    X = rhs_closed(pair, H, workers=workers) if series is None else series
    terms = closed_form_terms(pair)
    group = _full(pair.rs)
    for g, root in zip(group.generators, group.reflection_roots):
        acted = expand_terms([act(g, t) for t in terms], frame, H,
                             workers=workers)
        diff = acted.eq_report(X.scale(g.sgn()))
        if diff is not None:
            diff = dict(diff, generator=str(root))
            return False, diff
    return True, None


def acted_series(pair: AdmissiblePair, g: SignedPermutation, H: int,
                 workers: Optional[int] = None) -> FormalSeries:
    """The series of g(X), expanded in the pair's own frame."""
    return expand_terms([act(g, t) for t in closed_form_terms(pair)],
                        pair.system, H, workers=workers)


# ---------------------------------------------------------------------------
# the e^rho coefficient and its stabilizer set

def stabilizer_elements(pair: AdmissiblePair) -> tuple:
    rho = pair.system.rho
    return tuple(w for w in _sharp(pair.rs).elements()
                 if w.apply(rho) == rho)


def e_rho_coefficient_set(pair: AdmissiblePair) -> tuple:
    """{w in Stab rho : wS positive}; its sign sum is the e^rho coefficient."""
    frame = pair.system
    return tuple(w for w in stabilizer_elements(pair)
                 if all(frame.is_positive_root(w.apply(b)) for b in pair.S))


def e_rho_coefficient(pair: AdmissiblePair) -> int:
    return sum(w.sgn() for w in e_rho_coefficient_set(pair))


def second_class_expected_set(rs: RootSystem) -> frozenset:
    """The three-element coefficient set of the second-class anchor pair."""
    m, n = rs.m, rs.n
    swap = reflection(rs.eps(m - 1) - rs.eps(m))
    double_flip = swap.compose(reflection(rs.eps(m - 1) + rs.eps(m)))
    return frozenset((SignedPermutation.identity(m, n), swap, double_flip))


# ---------------------------------------------------------------------------
# symbolic cross-multiplication (no truncation)

def cross_multiplied_check(pair: AdmissiblePair) -> tuple:
    """Compare X * prod_{odd+}(1+e^{-a}) with e^rho * prod_{even+}(1-e^{-a}).

    Both sides are finite Laurent polynomials, computed exactly; keyed by
    cone coordinates of rho - exponent.  Returns (equal, left, right).
    """
    frame = pair.system
    rho = frame.rho
    odd_pos = sorted(frame.pos_odd, key=_coords)
    zero_key = frame.cone_key(_zero(pair.rs))
    right = _poly(zero_key, 1, sorted(pair.rs.positive_even, key=_coords),
                  frame, -1)
    left = {}
    for w in _sharp(pair.rs).elements():
        pd = phi_data(w, pair)
        dropped = set(pd.abs_w.values())
        base = frame.cone_key(rho - (w.apply(rho) + pd.phi))
        part = _poly(base, w.sgn(),
                     [a for a in odd_pos if a not in dropped], frame, +1)
        for k, v in part.items():
            nv = left.get(k, 0) + v
            if nv:
                left[k] = nv
            else:
                left.pop(k, None)
    return left == right, left, right


def _poly(base_key: tuple, coeff, roots: Sequence[Weight],
          frame: SimpleSystem, sign: int) -> dict:
    out = {base_key: coeff}
    for r in roots:
        step = frame.cone_int(r)
        nxt = dict(out)
        for k, v in out.items():
            k2 = tuple(a + b for a, b in zip(k, step))
            nv = nxt.get(k2, 0) + sign * v
            if nv:
                nxt[k2] = nv
            else:
                nxt.pop(k2, None)
        out = nxt
    return out


# ---------------------------------------------------------------------------
# q(n)

def exchange_preserves_sum(pair: AdmissiblePair, gamma: Weight,
                           gamma_prime: Weight, H: int = 8,
                           workers: Optional[int] = None) -> bool:
    """X is unchanged when gamma in S is traded for gamma_prime.

    Both pairs share Pi, hence the same expansion frame, so the truncated
    alternating sums compare key by key.
    """
    moved = second_type_move(pair, gamma, gamma_prime)
    here = rhs_closed(pair, H, workers)
    there = rhs_closed(moved, H, workers)
    return here.eq_report(there) is None


def qn_system(n: int) -> RootSystem:
    return build(SuperType("Q", n=n))


def qn_standard_set(rs: RootSystem) -> tuple:
    """The nested set eps_i - eps_{n+1-i}, i = 1..[n/2]."""
    n = rs.m
    return tuple(rs.eps(i) - rs.eps(n + 1 - i) for i in range(1, n // 2 + 1))


def qn_a_set(rs: RootSystem, S: Sequence[Weight]) -> tuple:
    """All w with wS inside the positive part, under w(eps_i) = eps_{w(i)}."""
    pos = rs.positive_even
    return tuple(w for w in _full(rs).elements()
                 if all(w.apply(b) in pos for b in S))


def qn_orthogonal_sets(rs: RootSystem, size: int) -> list:
    """All sets of pairwise-orthogonal positive roots of the given size."""
    pos = sorted(rs.positive_even, key=_coords)
    out = []

    def rec(start, cur):
        if len(cur) == size:
            out.append(tuple(cur))
            return
        for i in range(start, len(pos)):
            b = pos[i]
            if all(bilinear_form(b, c) == 0 for c in cur):
                cur.append(b)
                rec(i + 1, cur)
                cur.pop()

    rec(0, [])
    return out


def qn_a_value(rs: RootSystem, S: Sequence[Weight]) -> int:
    return sum(w.sgn() for w in qn_a_set(rs, S))


def qn_identity(n_or_rs, S: Optional[Sequence[Weight]] = None,
                H: int = 8) -> tuple:
    """Check a(S) * R = sum_w sgn(w) / prod_{b in S}(1 + e^{-w b}).

    Returns (report, a).  When a = 0 the right side must vanish to height
    H, which is checked rather than skipped.
    """
    rs = qn_system(n_or_rs) if isinstance(n_or_rs, int) else n_or_rs
    if rs.family != "Q":
        raise DomainError("the alternating-sum identity is specific to q(n)")
    S = qn_standard_set(rs) if S is None else tuple(S)
    for b in S:
        if b not in rs.positive_even:
            raise DomainError("%s is not a positive root of q(n)" % b)
    frame = even_frame(rs)
    zero = _zero(rs)
    pos = sorted(rs.positive_even, key=_coords)
    timings = {}
    t = time.perf_counter()
    a = qn_a_value(rs, S)
    timings["a_value"] = _us(t)
    t = time.perf_counter()
    left = expand_terms([GeometricTerm.make(1, zero, pos)], frame, H,
                        offset=zero, workers=1)
    for alpha in pos:
        left = left.mul_binomial(-1, alpha)
    left = left.scale(a)
    timings["lhs"] = _us(t)
    t = time.perf_counter()
    right = expand_terms(
        [GeometricTerm.make(w.sgn(), zero, [w.apply(b) for b in S])
         for w in _full(rs).elements()], frame, H, offset=zero)
    timings["rhs"] = _us(t)
    first = left.eq_report(right)
    note = ("action w(eps_i) = eps_{w(i)}; a(S) = %d for S = {%s}"
            % (a, ", ".join(str(b) for b in S)))
    if a == 0:
        note += "; identity reduces to the vanishing of the alternating sum"
    report = VerificationReport(
        system=rs.stype, pair=None, H=H,
        lhs_terms=left.nonzero_count(), rhs_terms=right.nonzero_count(),
        equal=first is None, first_discrepancy=first,
        timings=timings, checks={"identity": first is None}, note=note)
    return report, a


# ---------------------------------------------------------------------------
# regular orbits and the cone presentation of xi

def xi_vector(pair: AdmissiblePair) -> Weight:
    acc = _zero(pair.rs)
    for b in pair.S:
        acc = acc + b
    return acc


def regular_orbit_scan(rs: RootSystem, H: int = 10,
                       check: bool = True) -> list:
    """Dominant representatives of the regular W-orbits inside rho_0 - Q+.

    The search region is rho_0 - {mu in Q+ : height(mu) <= H} in the
    standard frame; orbit containment in the cone is exact.  With check
    on, the result must match the classification: only W rho_0 except for
    gl(n|n), where the representatives are rho_0 - s*xi.
    """
    if rs.family not in ("GL", "C"):
        raise DomainError("orbit scans cover the gl and C families only")
    pair = standard_pair(rs, "step2")
    frame = pair.system
    group = _full(rs)
    rho0 = frame.rho0
    evens = even_simple_roots(rs)
    reps = set()
    seen = set()
    for key in _keys_up_to(len(frame.simple_roots), H):
        mu = _zero(rs)
        for c, b in zip(key, frame.simple_roots):
            if c:
                mu = mu + b.scale(c)
        lam = rho0 - mu
        if lam in seen:
            continue
        orb = orbit(lam, group)
        seen.update(orb)
        if len(orb) != group.order:
            continue
        if all(frame.cone(rho0 - p, ring="integer") is not None for p in orb):
            reps.add(dominant_representative(lam, group, evens))
    out = sorted(reps, key=_coords)
    if check:
        expected = expected_regular_orbit_reps(rs, H)
        if out != expected:
            raise StructuralError(
                "regular orbits [%s] do not match the classification [%s]"
                % (", ".join(map(str, out)), ", ".join(map(str, expected))))
    return out


def expected_regular_orbit_reps(rs: RootSystem, H: int = 10) -> list:
    pair = standard_pair(rs, "step2")
    rho0 = pair.system.rho0
    if rs.family == "C" or rs.m != rs.n:
        return [rho0]
    xi = xi_vector(pair)
    step = pair.system.height_int(xi)
    return sorted((rho0 - xi.scale(s) for s in range(H // step + 1)),
                  key=_coords)


def _keys_up_to(rank: int, H: int):
    if rank == 0:
        yield ()
        return
    for first in range(H + 1):
        for rest in _keys_up_to(rank - 1, H - first):
            yield (first,) + rest


def xi_presentation_unique(pair: AdmissiblePair,
                           target: Optional[Weight] = None) -> tuple:
    """Is target (default: sum of S) uniquely a cone combination of Delta+?

    Maximizes the total weight placed outside S with the exact simplex;
    the presentation is unique iff that optimum exists and is zero and S
    itself carries coefficient 1 everywhere.  Returns (unique, detail).
    """
    frame = pair.system
    target = xi_vector(pair) if target is None else target
    gens = sorted(frame.positive_roots, key=_coords)
    support = set(pair.S)
    cost = [0 if g in support else 1 for g in gens]
    dim = pair.rs.m + pair.rs.n
    A = [[g.coords()[i] for g in gens] for i in range(dim)]
    status, value, _ = maximize(cost, A, target.coords())
    if status != OPTIMAL:
        return False, "presentation program is %s" % status
    if value != 0:
        return False, "mass %s can sit outside S" % value
    sol = solve_in_span(list(pair.S), target)
    if sol is None or any(c != 1 for c in sol):
        return False, "restriction to S gives %s" % (sol,)
    return True, "unique, coefficient 1 on each element of S"


def xi_uniqueness(rs: RootSystem) -> bool:
    if rs.family != "GL" or rs.m != rs.n:
        raise DomainError("xi presentations are a gl(n|n) question")
    ok, _ = xi_presentation_unique(standard_pair(rs, "step2"))
    return ok


def lhs_xi_coefficient(rs: RootSystem, s: int):
    """Coefficient of e^{rho - s*xi} in R e^rho for gl(n|n)."""
    if rs.family != "GL" or rs.m != rs.n:
        raise DomainError("xi coefficients are a gl(n|n) question")
    pair = standard_pair(rs, "step2")
    frame = pair.system
    target = xi_vector(pair).scale(s)
    H = frame.height_int(target)
    return lhs(pair, H).coefficient_at(frame.rho - target)


# ---------------------------------------------------------------------------
# the rho lemmas

def simple_norms_nonnegative(pair: AdmissiblePair) -> bool:
    return all(bilinear_form(a, a) >= 0 for a in pair.system.simple_roots)


def rho_descent_holds(pair: AdmissiblePair) -> bool:
    """rho - w rho lies in the rational positive cone for every w in W#."""
    frame = pair.system
    rho = frame.rho
    return all(frame.cone(rho - w.apply(rho), ring="rational") is not None
               for w in _sharp(pair.rs).elements())


def stabilizer_matches_zero_pairing_reflections(pair: AdmissiblePair) -> bool:
    """Stab rho = <s_alpha : alpha positive-square, (alpha, rho) = 0>."""
    rs = pair.rs
    rho = pair.system.rho
    roots = [a for a in sorted(rs.sharp & rs.positive_even, key=_coords)
             if bilinear_form(a, rho) == 0]
    generated = enumerate_group(tuple(reflection(a) for a in roots),
                                (rs.m, rs.n))
    return set(generated) == set(stabilizer_elements(pair))


def eps_symmetry_rank(pair: AdmissiblePair) -> Optional[int]:
    """k when Stab rho is exactly the permutations of eps_1..eps_k.

    Returns None when the stabilizer involves sign flips, touches the
    delta block, or is not a full symmetric group on an initial segment.
    """
    stab = stabilizer_elements(pair)
    k = 1
    for w in stab:
        if any(j != i or s != 1 for i, (j, s) in enumerate(w.delta_images)):
            return None
        for i, (j, s) in enumerate(w.eps_images):
            if s != 1:
                return None
            if j != i:
                k = max(k, i + 1, j + 1)
    perms = {tuple(j for j, _ in w.eps_images[:k]) for w in stab}
    if len(stab) != math.factorial(k) or len(perms) != len(stab):
        return None
    return k


def eps_symmetry_expected(rs: RootSystem) -> int:
    return rs.n if rs.m == rs.n else rs.n + 1


def eps_symmetry_applicable(pair: AdmissiblePair) -> bool:
    """Where the stabilizer-is-a-symmetric-group statement is asserted.

    Excluded: C and q (handled separately), D with equal sides (rho = 0,
    the stabilizer is all of W#), and D frames containing the sum root
    eps_m + delta_n (their stabilizer picks up the flip pair on the last
    two eps coordinates).
    """
    rs = pair.rs
    if rs.family in ("C", "Q"):
        return False
    if rs.family in ("D_EPS", "D_DELTA") and rs.m == rs.n:
        return False
    if rs.family == "D_EPS" and \
            (rs.eps(rs.m) + rs.delta(rs.n)) in pair.system.simple_roots:
        return False
    return True


# ---------------------------------------------------------------------------
# the classical orbit dichotomy (even root system, its own frame)

def even_rho_normalized(rs: RootSystem) -> bool:
    """<rho_0, alpha^> = 1 on every even simple root."""
    rho0 = even_frame(rs).rho
    return all(2 * bilinear_form(rho0, a) == bilinear_form(a, a)
               for a in even_simple_roots(rs))


def coefficient_box(rs: RootSystem, radius: int = 1, scale=1,
                    offset: Optional[Weight] = None) -> list:
    """Integral-pairing sample weights inside the even root span."""
    simples = even_simple_roots(rs)
    base = _zero(rs) if offset is None else offset
    out = []
    for combo in product(range(-radius, radius + 1), repeat=len(simples)):
        w = base
        for c, a in zip(combo, simples):
            if c:
                w = w + a.scale(Q(c) * scale)
        out.append(w)
    return out


def classical_dominant_check(rs: RootSystem,
                             samples: Optional[Iterable[Weight]] = None) -> bool:
    """Every orbit meets the dominant cone; regular orbits exactly once."""
    group = _full(rs)
    simples = even_simple_roots(rs)
    for lam in coefficient_box(rs) if samples is None else samples:
        orb = orbit(lam, group)
        doms = [mu for mu in orb
                if all(2 * bilinear_form(mu, a) * bilinear_form(a, a) >= 0
                       for a in simples)]
        if not doms:
            return False
        if len(orb) == group.order and len(doms) != 1:
            return False
    return True


def classical_dichotomy_check(rs: RootSystem,
                              samples: Optional[Iterable[Weight]] = None) -> bool:
    """Stabilizers are trivial or contain a reflection."""
    group = _full(rs)
    if samples is None:
        samples = coefficient_box(rs) + coefficient_box(rs, scale=Q(1, 2))
    return all(check_stabilizer_dichotomy(lam, group, rs.even())
               for lam in samples)


def classical_regular_cone_check(rs: RootSystem,
                                 samples: Optional[Iterable[Weight]] = None
                                 ) -> bool:
    """Regular integral orbits meet rho_0 + (rational cone on simples)."""
    group = _full(rs)
    simples = even_simple_roots(rs)
    rho0 = even_frame(rs).rho
    if samples is None:
        samples = coefficient_box(rs) + coefficient_box(rs, offset=rho0)
    for lam in samples:
        if len(orbit(lam, group)) != group.order:
            continue
        if not orbit_intersects_shifted_cone(lam, group, simples, rho0):
            return False
    return True


# ---------------------------------------------------------------------------
# closed-form generator relations

def y_canonical(pair: AdmissiblePair) -> tuple:
    return canonical_terms([y_term(pair)], pair.system)


def y_fixed_by(pair: AdmissiblePair, g: SignedPermutation) -> bool:
    """g(Y) = Y as normalized closed forms."""
    return canonical_terms([act(g, y_term(pair))], pair.system) \
        == y_canonical(pair)


def y_shifts_by(pair: AdmissiblePair, g: SignedPermutation,
                shift: Weight) -> bool:
    """g(Y) = e^{shift} Y as normalized closed forms."""
    frame = pair.system
    target = GeometricTerm.make(1, frame.rho + shift, pair.S)
    return canonical_terms([act(g, y_term(pair))], frame) \
        == canonical_terms([target], frame)


def partner_map(pair: AdmissiblePair) -> dict:
    """delta index -> (eps index, kind) read off S; kind is diff or sum."""
    rs = pair.rs
    out = {}
    for beta in pair.S:
        eps_c, delta_c = beta.coords()[:rs.m], beta.coords()[rs.m:]
        ei = next(i for i, c in enumerate(eps_c, 1) if c)
        dj = next(j for j, c in enumerate(delta_c, 1) if c)
        kind = "sum" if eps_c[ei - 1] * delta_c[dj - 1] > 0 else "diff"
        out[dj] = (ei, kind)
    return out


def partner_products(pair: AdmissiblePair) -> list:
    """The paired transpositions w_i that fix Y in closed form.

    For consecutive delta indices whose S-partners are both differences,
    w_i swaps the deltas and their eps partners simultaneously; when the
    higher partner enters S through a sum, the eps transposition is
    replaced by the flipped one (the plus-root reflection).
    """
    rs = pair.rs
    partners = partner_map(pair)
    out = []
    for j in sorted(partners):
        if j + 1 not in partners:
            continue
        (ei, kind), (ei2, kind2) = partners[j], partners[j + 1]
        if kind != "diff":
            continue
        if kind2 == "sum" and ei2 != ei + 1:
            continue
        eps_root = (rs.eps(ei) + rs.eps(ei2)) if kind2 == "sum" \
            else (rs.eps(ei) - rs.eps(ei2))
        out.append(reflection(eps_root).compose(
            reflection(rs.delta(j) - rs.delta(j + 1))))
    return out


def dropped_denominator_sum_vanishes(pair: AdmissiblePair, beta: Weight,
                                     shift: Weight) -> bool:
    """F(e^{rho+shift} / prod_{S minus beta}) = 0, decided in closed form.

    This is the collapse step: cancelling one denominator of Y leaves an
    alternating sum killed by a sign-reversing pairing on W#.
    """
    if beta not in pair.S:
        raise DomainError("%s is not in S" % beta)
    frame = pair.system
    rest = [b for b in pair.S if b != beta]
    terms = [GeometricTerm.make(w.sgn(), w.apply(frame.rho + shift),
                                [w.apply(b) for b in rest])
             for w in _sharp(pair.rs).elements()]
    return canonical_terms(terms, frame) == ()
