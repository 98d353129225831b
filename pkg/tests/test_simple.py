from fractions import Fraction as Q

import pytest

from superdenom.errors import DomainError, ValidationError
from superdenom.roots import SuperType, build
from superdenom.simple import (derive, enumerate_admissible_pairs,
                               enumerate_simple_systems, even_frame,
                               functional_for, is_admissible, isotropic_kind,
                               make_pair, odd_reflection, pair_components,
                               pair_neighbors, pair_odd_reflection,
                               second_class_pair, second_type_move,
                               second_type_moves, standard_pair)
from superdenom.weights import Weight, bilinear_form


def test_derive_gl_2_1():
    rs = build(SuperType("GL", 2, 1))
    e1, e2, d1 = rs.eps(1), rs.eps(2), rs.delta(1)
    sys = derive([d1 - e2, e1 - d1], rs)
    assert set(sys.simple_roots) == {d1 - e2, e1 - d1}
    assert sys.pos_even == {e1 - e2}
    assert sys.pos_odd == {e1 - d1, d1 - e2}
    assert sys.rho == Weight.zero(2, 1)


def test_derive_rejects_non_simple_sets():
    rs = build(SuperType("GL", 2, 1))
    e1, e2, d1 = rs.eps(1), rs.eps(2), rs.delta(1)
    with pytest.raises(ValidationError):
        derive([e1 - e2, e1 - d1, d1 - e2], rs)   # dependent set
    with pytest.raises(ValidationError):
        derive([e1 - e2], rs)                      # wrong size
    with pytest.raises(ValidationError):
        derive([e1 - e2, e1 + d1], rs)             # not a root


def test_rho_of_standard_pairs_pairs_with_simples():
    # (rho, alpha) = (alpha, alpha)/2 for every simple root
    for st in [SuperType("GL", 3, 2), SuperType("B", 2, 2),
               SuperType("D", 2, 1), SuperType("D", 1, 2),
               SuperType("C", n=3)]:
        pair = standard_pair(build(st), "step2")
        sys = pair.system
        for a in sys.simple_roots:
            assert bilinear_form(sys.rho, a) == Q(bilinear_form(a, a), 2)


def test_odd_reflection_moves_rho_by_beta():
    rs = build(SuperType("GL", 2, 2))
    sys = standard_pair(rs, "step2").system
    for beta in sys.isotropic_simples():
        flipped = odd_reflection(sys, beta)
        assert flipped.rho == sys.rho + beta
        assert -beta in flipped.simple_roots
        # reflecting back returns the original system
        assert odd_reflection(flipped, -beta) == sys


def test_odd_reflection_requires_isotropic_simple():
    rs = build(SuperType("B", 2, 1))
    sys = standard_pair(rs, "step2").system
    even = next(a for a in sys.simple_roots if bilinear_form(a, a) != 0)
    with pytest.raises(DomainError):
        odd_reflection(sys, even)


def test_admissibility_checks():
    rs = build(SuperType("GL", 2, 2))
    pair = standard_pair(rs, "step2")
    ok, why = is_admissible(pair.S, pair.system)
    assert ok, why
    # S must consist of simple roots of Pi
    e1, d2 = rs.eps(1), rs.delta(2)
    bad, why = is_admissible([e1 - d2], pair.system)
    assert not bad


def test_standard_pair_shapes():
    rs = build(SuperType("GL", 3, 2))
    p2 = standard_pair(rs, "step2")
    e = rs.eps
    d = rs.delta
    assert set(p2.S) == {e(1) - d(1), e(2) - d(2)}
    p3 = standard_pair(rs, "step3")
    assert p3 == p2   # one distinguished pair for gl
    b = build(SuperType("B", 3, 2))
    q3 = standard_pair(b, "step3")
    assert set(q3.S) == {d(1) - e(2), d(2) - e(3)}
    dd = build(SuperType("D", 3, 2))
    prime = standard_pair(dd, "step3_prime")
    assert set(prime.S) == {d(1) - e(2), e(3) + d(2)}
    with pytest.raises(DomainError):
        standard_pair(rs, "step3_prime")   # D-only variant
    with pytest.raises(DomainError):
        standard_pair(build(SuperType("Q", n=3)), "step2")


def test_second_class_pair_d_eps():
    rs = build(SuperType("D", 3, 2))
    pair = second_class_pair(rs)
    e, d = rs.eps, rs.delta
    assert set(pair.S) == {e(1) - d(1), e(3) + d(2)}
    assert e(3) + d(2) in pair.system.simple_roots
    assert d(2) - e(3) in pair.system.simple_roots
    with pytest.raises(DomainError):
        second_class_pair(build(SuperType("D", 2, 3)))


def test_pair_odd_reflection_keeps_admissibility():
    rs = build(SuperType("D", 2, 1))
    pair = standard_pair(rs, "step2")
    for beta in pair.S:
        moved = pair_odd_reflection(pair, beta)
        assert -beta in moved.S
        ok, why = is_admissible(moved.S, moved.system)
        assert ok, why


def test_isotropic_kind():
    rs = build(SuperType("D", 2, 1))
    e, d = rs.eps, rs.delta
    assert isotropic_kind(e(1) - d(1)) == "difference"
    assert isotropic_kind(d(1) - e(2)) == "difference"
    assert isotropic_kind(e(2) + d(1)) == "sum"
    assert isotropic_kind(-e(2) - d(1)) == "sum"


def test_second_type_move_requires_hypotheses():
    rs = build(SuperType("GL", 2, 1))
    pair = standard_pair(rs, "step2")
    moves = second_type_moves(pair)
    assert moves
    for gamma, gp in moves:
        moved = second_type_move(pair, gamma, gp)
        assert gp in moved.S and gamma not in moved.S
        assert moved.system == pair.system
    e, d = rs.eps, rs.delta
    with pytest.raises(DomainError):
        second_type_move(pair, e(1) + d(1), e(1) - d(1))


def test_kind_restricted_moves_subset():
    rs = build(SuperType("D", 2, 1))
    for pair in enumerate_admissible_pairs(rs):
        allm = set(second_type_moves(pair))
        kept = set(second_type_moves(pair, same_kind_only=True))
        assert kept <= allm
        for g, gp in allm - kept:
            # only short-alpha kind-changing exchanges are filtered out
            alpha = g + gp
            assert isotropic_kind(g) != isotropic_kind(gp)
            assert bilinear_form(alpha, alpha) != 4


def test_enumeration_counts():
    expected = {
        ("GL", 1, 1): 2, ("GL", 2, 1): 4, ("GL", 2, 2): 4,
        ("GL", 3, 1): 6, ("GL", 3, 2): 12, ("GL", 3, 3): 8,
        ("B", 2, 1): 4, ("B", 3, 2): 12,
        ("D", 2, 1): 6, ("D", 1, 2): 8,
    }
    for (fam, m, n), count in expected.items():
        rs = build(SuperType(fam, m, n))
        pairs = enumerate_admissible_pairs(rs)
        assert len(pairs) == count, (fam, m, n, len(pairs))
        assert len({p.key() for p in pairs}) == count


def test_pi_determined_by_s():
    for st in [SuperType("GL", 3, 2), SuperType("B", 2, 2),
               SuperType("D", 2, 1), SuperType("D", 2, 2)]:
        rs = build(st)
        by_s = {}
        for p in enumerate_admissible_pairs(rs):
            key = frozenset(b.coords() for b in p.S)
            by_s.setdefault(key, set()).add(p.system.key())
        assert all(len(v) == 1 for v in by_s.values())


def test_components_full_vs_diagram_moves():
    # unrestricted moves merge the two D(2,1) classes; bow moves keep them apart
    rs = build(SuperType("D", 2, 1))
    pairs = enumerate_admissible_pairs(rs)
    assert len(pair_components(pairs)) == 1
    assert len(pair_components(pairs, same_kind_only=True)) == 2
    gl = build(SuperType("GL", 2, 2))
    glp = enumerate_admissible_pairs(gl)
    assert len(pair_components(glp)) == 1
    assert len(pair_components(glp, same_kind_only=True)) == 1


def test_neighbors_stay_admissible():
    rs = build(SuperType("B", 2, 2))
    for pair in enumerate_admissible_pairs(rs):
        for nb in pair_neighbors(pair):
            ok, why = is_admissible(nb.S, nb.system)
            assert ok, why


def test_functional_values():
    rs = build(SuperType("GL", 2, 1))
    pair = make_pair([rs.eps(1) - rs.delta(1)],
                     derive([rs.delta(1) - rs.eps(2),
                             rs.eps(1) - rs.delta(1)], rs))
    f = functional_for(pair.system)
    assert (f.x_eps(2), f.x_delta(1), f.x_eps(1)) == (1, 2, 3)
    for a in pair.system.simple_roots:
        assert f.pair(a) == 1
    for a in pair.system.positive_roots:
        assert f.pair(a) >= 1
    with pytest.raises(DomainError):
        functional_for(standard_pair(build(SuperType("C", n=2)), "step2").system)


def test_even_frame():
    rs = build(SuperType("B", 2, 1))
    frame = even_frame(rs)
    assert frame.pos_even == rs.positive_even
    assert not frame.pos_odd
    assert frame.rho == frame.rho0


def test_enumerate_simple_systems_closure():
    rs = build(SuperType("GL", 2, 2))
    systems = enumerate_simple_systems(rs)
    assert len(systems) == 6   # six choices of Delta_+ over the fixed evens
    for sys in systems:
        assert sys.pos_even == rs.positive_even
        for beta in sys.isotropic_simples():
            assert odd_reflection(sys, beta) in systems
