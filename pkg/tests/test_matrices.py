from fractions import Fraction

import pytest

from repident.exactnum import Cyc, cyc_root_of_unity
from repident.matrices import Mat, column_space_basis, rref


def _m(entries):
    return Mat(tuple(tuple(Cyc.from_rational(Fraction(v)) for v in row) for row in entries))


def test_arithmetic():
    a = _m([[1, 2], [3, 4]])
    b = _m([[0, 1], [1, 0]])
    assert (a + b) - b == a
    assert a * Mat.identity(2) == a
    assert (a * b).rows[0][0] == 2
    assert a.trace() == 5
    assert (-a).rows[1][0] == -3


def test_inverse_and_det():
    a = _m([[1, 2], [3, 4]])
    assert a.det() == -2
    inv = a.inverse()
    assert a * inv == Mat.identity(2)
    singular = _m([[1, 2], [2, 4]])
    assert singular.det().is_zero()
    with pytest.raises(ZeroDivisionError):
        singular.inverse()


def test_monomial_fast_path():
    i = cyc_root_of_unity(4, 1)
    zero = Cyc.zero(4)
    a = Mat(((zero, i), (i, zero)))
    assert a.monomial_form()
    b = a * a
    assert b.is_scalar() == -1


def test_conj_transpose_and_galois():
    i = cyc_root_of_unity(4, 1)
    zero = Cyc.zero(4)
    a = Mat(((i, zero), (zero, -i)))
    assert a.conj_transpose() * a == Mat.identity(2)
    assert a.galois(3) == a.conj_transpose().transpose()


def test_scalar_detection():
    assert Mat.identity(3).is_scalar() == 1
    assert Mat.scalar(2, Cyc.from_rational(Fraction(5, 2))).is_scalar() == Fraction(5, 2)
    assert _m([[1, 1], [0, 1]]).is_scalar() is None


def test_pow_int():
    a = _m([[1, 1], [0, 1]])
    assert a.pow_int(5).rows[0][1] == 5
    assert a.pow_int(-2) == a.inverse() * a.inverse()
    assert a.pow_int(0).is_identity()


def test_rref_and_column_space():
    rows = [[Cyc.from_rational(v) for v in row] for row in ([1, 2, 3], [2, 4, 6], [1, 0, 1])]
    reduced, pivots = rref(rows)
    assert pivots == [0, 1]
    basis = column_space_basis(rows)
    assert len(basis) == 2


def test_json_round_trip():
    a = _m([[1, 2], [3, 4]])
    assert Mat.from_json(a.to_json(), 2) == a
