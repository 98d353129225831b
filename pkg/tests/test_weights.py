from fractions import Fraction as Q

import pytest

from superdenom.weights import (ConeCoords, Weight, bilinear_form,
                                in_positive_cone, rank_of, solve_in_span)


def w(eps, delta=()):
    return Weight.make(eps, delta)


def test_arithmetic_and_units():
    e1 = Weight.eps_unit(1, 2, 1)
    e2 = Weight.eps_unit(2, 2, 1)
    d1 = Weight.delta_unit(1, 2, 1)
    assert (e1 + e2 - d1).coords() == (1, 1, -1)
    assert (-e1).coords() == (-1, 0, 0)
    assert e1.scale(Q(3, 2)).coords() == (Q(3, 2), 0, 0)
    assert Weight.zero(2, 1).is_zero()
    assert not e1.is_zero()
    assert e1.dims() == (2, 1)


def test_mixed_dims_rejected():
    with pytest.raises(Exception):
        Weight.eps_unit(1, 2, 1) + Weight.eps_unit(1, 1, 1)


def test_bilinear_form_signature():
    # eps block positive definite, delta block negative definite, blocks orthogonal
    e1 = Weight.eps_unit(1, 2, 2)
    e2 = Weight.eps_unit(2, 2, 2)
    d1 = Weight.delta_unit(1, 2, 2)
    d2 = Weight.delta_unit(2, 2, 2)
    assert bilinear_form(e1, e1) == 1
    assert bilinear_form(e1, e2) == 0
    assert bilinear_form(d1, d1) == -1
    assert bilinear_form(d1, d2) == 0
    assert bilinear_form(e1, d1) == 0
    beta = e1 - d1
    assert bilinear_form(beta, beta) == 0  # isotropic
    assert bilinear_form(e1 + d1, e1 + d1) == 0
    assert bilinear_form(e1 - e2, e1 - e2) == 2


def test_bilinear_form_is_symmetric_and_bilinear():
    x = w((1, 2), (3,))
    y = w((0, -1), (Q(1, 2),))
    z = w((2, 0), (1,))
    assert bilinear_form(x, y) == bilinear_form(y, x)
    assert bilinear_form(x + z, y) == bilinear_form(x, y) + bilinear_form(z, y)
    assert bilinear_form(x.scale(3), y) == 3 * bilinear_form(x, y)


def test_solve_in_span():
    e1 = Weight.eps_unit(1, 2, 1)
    e2 = Weight.eps_unit(2, 2, 1)
    d1 = Weight.delta_unit(1, 2, 1)
    basis = [e1 - e2, e2 - d1]
    sol = solve_in_span(basis, e1 - d1)
    assert sol == [1, 1]
    assert solve_in_span(basis, e1 + d1) is None
    # rational coordinates come back exactly
    sol = solve_in_span(basis, (e1 - e2).scale(Q(1, 2)))
    assert sol == [Q(1, 2), 0]


def test_rank_of():
    e1 = Weight.eps_unit(1, 3, 0)
    e2 = Weight.eps_unit(2, 3, 0)
    e3 = Weight.eps_unit(3, 3, 0)
    assert rank_of([e1 - e2, e2 - e3]) == 2
    assert rank_of([e1 - e2, e2 - e3, e1 - e3]) == 2
    assert rank_of([]) == 0


def test_in_positive_cone_rings():
    e1 = Weight.eps_unit(1, 2, 0)
    e2 = Weight.eps_unit(2, 2, 0)
    basis = [e1 - e2, e2]
    got = in_positive_cone(e1 + e2, basis, ring="integer")
    assert got is not None and got.coeffs == (1, 2)
    assert got.height() == 3
    assert got.is_integral()
    # half points are rejected over the integers but not over the rationals
    half = (e1 + e2).scale(Q(1, 2))
    assert in_positive_cone(half, basis, ring="integer") is None
    frac = in_positive_cone(half, basis, ring="rational")
    assert frac is not None and frac.coeffs == (Q(1, 2), 1)
    assert not frac.is_integral()
    # negative coordinates never pass
    assert in_positive_cone(e2 - e1, basis, ring="rational") is None


def test_cone_coords_reconstruct():
    e1 = Weight.eps_unit(1, 2, 0)
    e2 = Weight.eps_unit(2, 2, 0)
    basis = [e1 - e2, e2]
    cc = ConeCoords((2, 1))
    assert cc.reconstruct(basis) == e1.scale(2) - e2


def test_pretty_printing():
    assert str(w((1, 0), (-1,))) == "e1 - d1"
    assert str(w((Q(-1, 2), 0), (Q(1, 2),))) == "-1/2*e1 + 1/2*d1"
    assert str(Weight.zero(1, 1)) == "0"
