"""Simple systems, odd reflections, admissible pairs and root functionals.

The even positive roots are fixed once and for all by the root datum; the
odd positive roots depend on the choice of simple system Pi.  Changing Pi
by the odd reflection at an isotropic simple root beta replaces beta by
-beta in the positive system and shifts rho by beta.  An admissible pair
(S, Pi) consists of a simple system together with a maximal set of
pairwise orthogonal isotropic roots inside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from itertools import combinations
from typing import Optional, Sequence

from .errors import DomainError, ResourceLimitError, StructuralError, ValidationError
from .roots import RootSystem, is_isotropic
from .weights import (ConeCoords, Weight, bilinear_form, rank_of, solve_in_span)

PAIR_CAP = 10 ** 6


class _LatticeSolver:
    """Precomputed elimination for repeated solves against a fixed basis."""

    def __init__(self, basis: Sequence[Weight]):
        self.basis = tuple(basis)
        dim = len(basis[0].coords()) if basis else 0
        cols = len(basis)
        aug = [[basis[j].coords()[i] for j in range(cols)] +
               [Q(1) if k == i else Q(0) for k in range(dim)]
               for i in range(dim)]
        pivots = []
        r = 0
        for c in range(cols):
            row = next((i for i in range(r, dim) if aug[i][c] != 0), None)
            if row is None:
                continue
            aug[r], aug[row] = aug[row], aug[r]
            inv = Q(1) / aug[r][c]
            aug[r] = [v * inv for v in aug[r]]
            for i in range(dim):
                if i != r and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
            pivots.append(c)
            r += 1
        self.dim, self.cols, self.rank = dim, cols, r
        self.pivots = pivots
        self.transform = [row[cols:] for row in aug]

    def solve(self, target: Weight) -> Optional[list]:
        t = target.coords()
        if not self.basis:
            return [] if all(v == 0 for v in t) else None
        out = [Q(0)] * self.cols
        for row in range(self.rank):
            acc = Q(0)
            for k, tv in enumerate(t):
                if tv and self.transform[row][k]:
                    acc += self.transform[row][k] * tv
            out[self.pivots[row]] = acc
        for row in range(self.rank, self.dim):
            acc = Q(0)
            for k, tv in enumerate(t):
                if tv and self.transform[row][k]:
                    acc += self.transform[row][k] * tv
            if acc != 0:
                return None
        return out


class SimpleSystem:
    """A simple system with its derived positive roots and rho data."""

    def __init__(self, simple_roots, rs, positive_even, positive_odd):
        self.simple_roots = tuple(sorted(simple_roots, key=lambda w: w.coords()))
        self.rs = rs
        self.pos_even = frozenset(positive_even)
        self.pos_odd = frozenset(positive_odd)
        self.positive_roots = self.pos_even | self.pos_odd
        half = Q(1, 2)
        self.rho0 = _half_sum(self.pos_even, rs)
        self.rho1 = _half_sum(self.pos_odd, rs)
        self.rho = self.rho0 - self.rho1
        self._solver = _LatticeSolver(self.simple_roots)
        self._int_cache = {}

    @property
    def m(self) -> int:
        return self.rs.m

    @property
    def n(self) -> int:
        return self.rs.n

    def key(self) -> tuple:
        return tuple(w.coords() for w in self.simple_roots)

    def __eq__(self, other) -> bool:
        return isinstance(other, SimpleSystem) and self.key() == other.key() \
            and self.rs.family == other.rs.family

    def __hash__(self) -> int:
        return hash(self.key())

    def is_positive_root(self, w: Weight) -> bool:
        return w in self.positive_roots

    def isotropic_simples(self) -> tuple:
        return tuple(a for a in self.simple_roots if is_isotropic(a))

    def cone_key(self, w: Weight) -> tuple:
        """Coordinates of a span vector in the simple basis, signs free.

        Integer entries come back as ints, the rest as Fractions; the two
        hash alike, so mixed keys index the same series bucket.
        """
        cached = self._int_cache.get(w)
        if cached is not None:
            return cached
        sol = self._solver.solve(w)
        if sol is None:
            raise StructuralError("%s is outside the simple-root span" % w)
        out = tuple(int(c) if c.denominator == 1 else c for c in sol)
        self._int_cache[w] = out
        return out

    def cone_int(self, w: Weight) -> tuple:
        """Like cone_key but insists on integer (lattice) coordinates."""
        out = self.cone_key(w)
        if any(not isinstance(c, int) for c in out):
            raise StructuralError("%s has non-integer simple coordinates" % w)
        return out

    def cone(self, w: Weight, ring: str = "integer") -> Optional[ConeCoords]:
        sol = self._solver.solve(w)
        if sol is None or any(c < 0 for c in sol):
            return None
        if ring == "integer" and any(c.denominator != 1 for c in sol):
            return None
        return ConeCoords(tuple(sol))

    def height_int(self, w: Weight) -> int:
        return sum(self.cone_int(w))

    def to_json(self) -> dict:
        from .roots import root_json
        return {
            "simple_roots": [root_json(a, a in self.rs.odd)
                             for a in self.simple_roots],
            "rho": {"eps": [str(c) for c in self.rho.eps],
                    "delta": [str(c) for c in self.rho.delta]},
        }


def _half_sum(roots, rs) -> Weight:
    acc = Weight.zero(rs.m, rs.n)
    for a in roots:
        acc = acc + a
    return acc.scale(Q(1, 2))


def derive(pi: Sequence[Weight], rs: RootSystem, universe: str = "super"
           ) -> SimpleSystem:
    """Build the simple system determined by pi; validates as it goes.

    universe='super' uses all roots; universe='even' restricts to the even
    part (used for plain Lie-algebra frames such as orbit computations).
    """
    pi = tuple(pi)
    if universe not in ("super", "even"):
        raise StructuralError("unknown universe %r" % universe)
    even_universe = rs.even()
    odd_universe = rs.odd if universe == "super" else frozenset()
    for a in pi:
        if a not in even_universe and a not in odd_universe:
            raise ValidationError("%s is not a root of the system" % a)
    if rank_of(pi) != len(pi):
        raise ValidationError("simple roots are linearly dependent")
    solver = _LatticeSolver(pi)

    def _nonneg_int(w):
        sol = solver.solve(w)
        if sol is None:
            return False
        return all(c >= 0 and c.denominator == 1 for c in sol)

    pos_even, pos_odd = set(), set()
    for universe_set, bucket in ((even_universe, pos_even), (odd_universe, pos_odd)):
        seen = set()
        for a in universe_set:
            if a in seen:
                continue
            seen.add(a)
            seen.add(-a)
            plus, minus = _nonneg_int(a), _nonneg_int(-a)
            if plus == minus:
                raise ValidationError(
                    "not a simple system: %s and its negative are %s the cone"
                    % (a, "both in" if plus else "both outside"))
            bucket.add(a if plus else -a)
    return SimpleSystem(pi, rs, pos_even, pos_odd)


def odd_reflection(sys: SimpleSystem, beta: Weight) -> SimpleSystem:
    """Odd reflection at an isotropic simple root.

    New simple roots: beta goes to -beta; roots orthogonal to beta stay;
    the rest gain beta.  The positive system changes only by beta -> -beta
    and rho moves to rho + beta.
    """
    if beta not in sys.simple_roots:
        raise DomainError("%s is not a simple root here" % beta)
    if not is_isotropic(beta):
        raise DomainError("%s is not isotropic" % beta)
    new_pi = []
    for a in sys.simple_roots:
        if a == beta:
            new_pi.append(-beta)
        elif bilinear_form(a, beta) == 0:
            new_pi.append(a)
        else:
            new_pi.append(a + beta)
    out = derive(new_pi, sys.rs)
    expected = (sys.positive_roots - {beta}) | {-beta}
    if out.positive_roots != expected:
        raise StructuralError("odd reflection did not flip exactly %s" % beta)
    if out.rho != sys.rho + beta:
        raise StructuralError("rho did not shift by %s" % beta)
    return out


@dataclass(frozen=True)
class AdmissiblePair:
    """A simple system together with its chosen maximal isotropic S."""

    S: tuple
    system: SimpleSystem

    @property
    def rs(self) -> RootSystem:
        return self.system.rs

    def key(self) -> tuple:
        return (tuple(sorted(w.coords() for w in self.S)), self.system.key())

    def to_json(self) -> dict:
        idx = {a: i for i, a in enumerate(self.system.simple_roots)}
        return {
            "S": [idx[b] for b in sorted(self.S, key=lambda w: w.coords())],
            "system": self.system.to_json(),
        }


def is_admissible(S: Sequence[Weight], sys: SimpleSystem) -> tuple:
    """(ok, reason).  S must be a maximal orthogonal isotropic subset of Pi."""
    rs = sys.rs
    if sys.pos_even != rs.positive_even:
        return False, "positive even roots differ from the fixed ones"
    if len(set(S)) != len(S):
        return False, "S has repeats"
    if len(S) != rs.defect:
        return False, "S has size %d, defect is %d" % (len(S), rs.defect)
    for b in S:
        if b not in sys.simple_roots:
            return False, "%s is not simple here" % b
        if not is_isotropic(b):
            return False, "%s is not isotropic" % b
    for a, b in combinations(S, 2):
        if bilinear_form(a, b) != 0:
            return False, "%s and %s are not orthogonal" % (a, b)
    return True, None


def make_pair(S: Sequence[Weight], sys: SimpleSystem, validate: bool = True
              ) -> AdmissiblePair:
    S = tuple(sorted(S, key=lambda w: w.coords()))
    if validate:
        ok, reason = is_admissible(S, sys)
        if not ok:
            raise ValidationError("pair is not admissible: %s" % reason)
    return AdmissiblePair(S, sys)


def pair_odd_reflection(pair: AdmissiblePair, beta: Weight) -> AdmissiblePair:
    """Move the whole pair by the odd reflection at beta in S."""
    if beta not in pair.S:
        raise DomainError("%s is not in S" % beta)
    sys2 = odd_reflection(pair.system, beta)
    new_S = [-b if b == beta else b for b in pair.S]
    return make_pair(new_S, sys2)


def second_type_move(pair: AdmissiblePair, gamma: Weight, gamma_prime: Weight
                     ) -> AdmissiblePair:
    """Exchange gamma in S for another isotropic simple root gamma'.

    Hypotheses: gamma + gamma' lies in Delta#, and gamma' is orthogonal to
    every other element of S.  Pi is unchanged, so both pairs expand in the
    same frame and the alternating sums agree; callers may verify that.
    """
    sys = pair.system
    if gamma not in pair.S:
        raise DomainError("%s is not in S" % gamma)
    if gamma_prime not in sys.simple_roots:
        raise DomainError("%s is not a simple root" % gamma_prime)
    if not is_isotropic(gamma_prime):
        raise DomainError("%s is not isotropic" % gamma_prime)
    if (gamma + gamma_prime) not in pair.rs.sharp:
        raise DomainError("%s + %s does not lie in Delta#" % (gamma, gamma_prime))
    for b in pair.S:
        if b != gamma and bilinear_form(b, gamma_prime) != 0:
            raise DomainError("%s is not orthogonal to %s" % (gamma_prime, b))
    new_S = [gamma_prime if b == gamma else b for b in pair.S]
    return make_pair(new_S, sys)


def isotropic_kind(root: Weight) -> str:
    """'difference' for +-(eps_i - delta_j), 'sum' for +-(eps_i + delta_j)."""
    coords = root.coords()
    eps_c = next((c for c in coords if c), 0)
    delta_c = next((c for c in reversed(coords) if c), 0)
    return "sum" if eps_c * delta_c > 0 else "difference"


def second_type_moves(pair: AdmissiblePair, same_kind_only: bool = False) -> list:
    """All applicable (gamma, gamma_prime) choices for this pair.

    With same_kind_only the exchange must keep the difference/sum kind of
    the replaced root unless gamma + gamma_prime is a long sharp root of
    norm 4 (the 2*eps normalisation); that is exactly the reach of the
    bow moves on diagrams.  The unrestricted list still yields equal
    alternating sums.
    """
    out = []
    for gamma in pair.S:
        for gp in pair.system.isotropic_simples():
            if gp in pair.S:
                continue
            alpha = gamma + gp
            if alpha not in pair.rs.sharp:
                continue
            if any(bilinear_form(b, gp) != 0 for b in pair.S if b != gamma):
                continue
            if same_kind_only and isotropic_kind(gamma) != isotropic_kind(gp) \
                    and bilinear_form(alpha, alpha) != 4:
                continue
            out.append((gamma, gp))
    return out


# ---------------------------------------------------------------------------
# standard pairs

def standard_pair(rs: RootSystem, variant: str = "step3") -> AdmissiblePair:
    """Distinguished admissible pairs used as seeds and fixtures.

    'step2' is the zigzag pair threading eps and delta from the front;
    'step3' pins S to the tail coordinates; 'step3_prime' is the second
    equivalence class, which exists only for D with more eps than delta.
    """
    if variant not in ("step2", "step3", "step3_prime"):
        raise DomainError("unknown variant %r" % variant)
    fam, m, n = rs.family, rs.m, rs.n
    if fam == "Q":
        raise DomainError("Q(n) has no admissible pairs; use the qn helpers")
    e = lambda i: rs.eps(i)
    d = lambda j: rs.delta(j)

    if variant == "step3_prime":
        if fam != "D_EPS" or not (m > n >= 1):
            raise DomainError("step3_prime needs D with m > n >= 1")
        S = [d(n - i) - e(m - i) for i in range(1, n)] + [d(n) + e(m)]
        return make_pair(S, derive(_step3_pi(rs), rs))

    if fam == "C":
        pi = [e(i) - e(i + 1) for i in range(1, m)] + [e(m) - d(1), e(m) + d(1)]
        return make_pair([e(m) - d(1)], derive(pi, rs))

    if variant == "step3" and fam != "GL" and n >= 1:
        S = [d(n - i) - e(m - i) for i in range(0, n)]
        return make_pair(S, derive(_step3_pi(rs), rs))

    # step2 (and the cases that collapse onto it)
    if fam == "GL":
        S = [e(i) - d(i) for i in range(1, n + 1)]
        pi = _zigzag(rs, n)
        if m > n:
            pi.append(d(n) - e(n + 1))
            pi += [e(j) - e(j + 1) for j in range(n + 1, m)]
        return make_pair(S, derive(pi, rs))

    if n == 0:
        if fam == "D_EPS" and m < 2:
            raise DomainError("no simple system for D with a single eps")
        pi = [e(i) - e(i + 1) for i in range(1, m)]
        if fam in ("B_EPS", "B_DELTA"):
            pi.append(e(m))
        elif fam == "D_DELTA":
            pi.append(e(m).scale(2))
        else:
            pi.append(e(m - 1) + e(m))
        return make_pair([], derive(pi, rs))

    if m == n:
        if fam in ("B_EPS", "B_DELTA"):
            S = [d(i) - e(i) for i in range(1, n + 1)]
            pi = []
            for i in range(1, n + 1):
                pi.append(d(i) - e(i))
                if i < n:
                    pi.append(e(i) - d(i + 1))
            pi.append(e(n))
        else:  # D with equal sides: the fork closes on the last eps
            S = [e(i) - d(i) for i in range(1, n + 1)]
            pi = _zigzag(rs, n) + [e(n) + d(n)]
        return make_pair(S, derive(pi, rs))

    # m > n >= 1
    S = [e(i) - d(i) for i in range(1, n + 1)]
    pi = _zigzag(rs, n)
    pi.append(d(n) - e(n + 1))
    if fam in ("B_EPS", "B_DELTA"):
        pi += [e(j) - e(j + 1) for j in range(n + 1, m)]
        pi.append(e(m))
    elif fam == "D_DELTA":
        pi += [e(j) - e(j + 1) for j in range(n + 1, m)]
        pi.append(e(m).scale(2))
    elif m >= n + 2:  # D with the eps chain long enough to fork at the end
        pi += [e(j) - e(j + 1) for j in range(n + 1, m)]
        pi.append(e(m - 1) + e(m))
    else:  # D with m = n + 1: the chain is empty, the fork closes on delta
        pi.append(d(n) + e(m))
    return make_pair(S, derive(pi, rs))


def second_class_pair(rs: RootSystem) -> AdmissiblePair:
    """Anchor pair of the second equivalence class for D with m > n.

    S threads the front of the zigzag and closes with the sum root
    eps_m + delta_n; Pi runs the zigzag, then the eps chain, then forks at
    delta_n.  For n = 1 this is the same pair as step3_prime; for larger n
    the two share Pi only when m = n + 1, and S always differs.
    """
    fam, m, n = rs.family, rs.m, rs.n
    if fam != "D_EPS" or not (m > n >= 1):
        raise DomainError("the second class exists only for D with m > n >= 1")
    e = lambda i: rs.eps(i)
    d = lambda j: rs.delta(j)
    pi = []
    for i in range(1, n):
        pi.append(e(i) - d(i))
        pi.append(d(i) - e(i + 1))
    pi += [e(i) - e(i + 1) for i in range(n, m - 1)]
    pi += [e(m - 1) - d(n), d(n) - e(m), d(n) + e(m)]
    S = [e(i) - d(i) for i in range(1, n)] + [e(m) + d(n)]
    return make_pair(S, derive(pi, rs))


def _zigzag(rs: RootSystem, n: int) -> list:
    """eps_1-delta_1, delta_1-eps_2, ..., eps_n-delta_n."""
    pi = []
    for i in range(1, n + 1):
        pi.append(rs.eps(i) - rs.delta(i))
        if i < n:
            pi.append(rs.delta(i) - rs.eps(i + 1))
    return pi


def _step3_pi(rs: RootSystem) -> list:
    """Simple roots with S threaded through the tail coordinates."""
    fam, m, n = rs.family, rs.m, rs.n
    e = lambda i: rs.eps(i)
    d = lambda j: rs.delta(j)
    if m == n:
        p = []
        for i in range(1, n + 1):
            p.append(d(i) - e(i))
            if i < n:
                p.append(e(i) - d(i + 1))
    else:
        p = [e(i) - e(i + 1) for i in range(1, m - n)]
        p.append(e(m - n) - d(1))
        for j in range(1, n + 1):
            p.append(d(j) - e(m - n + j))
            if j < n:
                p.append(e(m - n + j) - d(j + 1))
    if fam in ("B_EPS", "B_DELTA"):
        p.append(e(m))
    elif fam == "D_EPS":
        p.append(e(m) + d(n))
    elif fam == "D_DELTA":
        p.append(e(m).scale(2))
    else:
        raise DomainError("no tail-threaded pair for %s" % fam)
    return p


# ---------------------------------------------------------------------------
# enumeration

def enumerate_simple_systems(rs: RootSystem, cap: int = PAIR_CAP) -> list:
    """All simple systems sharing the fixed even positive roots.

    Breadth-first closure under odd reflections from the standard seed;
    even reflections are excluded because the even positive part is fixed.
    """
    if rs.family == "Q":
        raise DomainError("Q(n) simple systems are not enumerated here")
    seed = standard_pair(rs, "step2").system
    seen = {seed.key(): seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for sys in frontier:
            for beta in sys.isotropic_simples():
                out = odd_reflection(sys, beta)
                if out.key() not in seen:
                    seen[out.key()] = out
                    nxt.append(out)
                    if len(seen) > cap:
                        raise ResourceLimitError(
                            "simple-system enumeration exceeded cap %d" % cap)
        frontier = sorted(nxt, key=lambda s: s.key())
    return [seen[k] for k in sorted(seen)]


def enumerate_admissible_pairs(rs: RootSystem, cap: int = PAIR_CAP) -> list:
    """All admissible pairs over all simple systems."""
    out = []
    for sys in enumerate_simple_systems(rs, cap):
        iso = sys.isotropic_simples()
        for S in combinations(iso, rs.defect):
            if all(bilinear_form(a, b) == 0 for a, b in combinations(S, 2)):
                out.append(make_pair(S, sys))
                if len(out) > cap:
                    raise ResourceLimitError(
                        "pair enumeration exceeded cap %d" % cap)
    return out


def pair_neighbors(pair: AdmissiblePair, same_kind_only: bool = False) -> list:
    """Pairs reachable by one move (odd reflection in S or exchange move)."""
    out = [pair_odd_reflection(pair, b) for b in pair.S]
    out += [second_type_move(pair, g, gp)
            for g, gp in second_type_moves(pair, same_kind_only)]
    return out


def pair_components(pairs: Sequence[AdmissiblePair],
                    same_kind_only: bool = False) -> list:
    """Connected components of the move graph on the given pairs."""
    index = {p.key(): i for i, p in enumerate(pairs)}
    seen = set()
    comps = []
    for p in pairs:
        if p.key() in seen:
            continue
        comp = []
        stack = [p]
        seen.add(p.key())
        while stack:
            cur = stack.pop()
            comp.append(cur)
            for nb in pair_neighbors(cur, same_kind_only):
                k = nb.key()
                if k not in index:
                    raise StructuralError("move left the enumerated pair set")
                if k not in seen:
                    seen.add(k)
                    stack.append(nb)
        comps.append(sorted(comp, key=lambda q: q.key()))
    return comps


# ---------------------------------------------------------------------------
# root functionals

@dataclass(frozen=True)
class Functional:
    """f with <f, alpha> = 1 on the simple roots; values over the merged basis."""

    values: tuple
    m: int
    n: int

    def pair(self, w: Weight):
        acc = Q(0)
        for x, c in zip(self.values, w.coords()):
            if c:
                acc += x * c
        return acc

    def x_eps(self, i: int):
        return self.values[i - 1]

    def x_delta(self, j: int):
        return self.values[self.m + j - 1]


def functional_for(sys: SimpleSystem) -> Functional:
    """Solve <f, alpha> = 1 on Pi and check the sorting properties.

    The pairing is the coordinate pairing, not the bilinear form.  For gl
    the solution line is pinned by min value 1; elsewhere it is unique.
    The checks: integer nonzero on all roots, >= 1 on positives, = 1
    exactly on the simples.
    """
    rs = sys.rs
    if rs.family not in ("GL", "B_EPS", "B_DELTA", "D_EPS", "D_DELTA"):
        raise DomainError("functionals are defined for gl/B/D only")
    dim = rs.m + rs.n
    rows = [list(a.coords()) + [Q(1)] for a in sys.simple_roots]
    sol = _solve_affine(rows, dim)
    if sol is None:
        raise ValidationError("no functional solves <f, Pi> = 1")
    if rs.family == "GL":
        shift = Q(1) - min(sol)
        sol = [x + shift for x in sol]
    f = Functional(tuple(sol), rs.m, rs.n)
    for a in rs.all_roots():
        v = f.pair(a)
        if v == 0 or v.denominator != 1:
            raise ValidationError("functional is %s on root %s" % (v, a))
    for a in sys.positive_roots:
        v = f.pair(a)
        if v < 1:
            raise ValidationError("functional is %s on positive root %s" % (v, a))
        if (v == 1) != (a in sys.simple_roots):
            raise ValidationError("value 1 does not match simplicity at %s" % a)
    return f


def _solve_affine(rows, dim) -> Optional[list]:
    """Solve the system rows * x = rhs.  Free coordinates are pinned to 0."""
    mat = [row[:] for row in rows]
    pivots = []
    r = 0
    for c in range(dim):
        row = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if row is None:
            continue
        mat[r], mat[row] = mat[row], mat[r]
        inv = Q(1) / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                fct = mat[i][c]
                mat[i] = [a - fct * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(mat)):
        if mat[i][dim] != 0:
            return None
    sol = [Q(0)] * dim
    for row, c in enumerate(pivots):
        sol[c] = mat[row][dim]
    return sol


def even_frame(rs: RootSystem) -> SimpleSystem:
    """The even root system as its own frame (odd part ignored)."""
    from .roots import even_simple_roots
    return derive(even_simple_roots(rs), rs, universe="even")
