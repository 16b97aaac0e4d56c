import random

import numpy as np
import pytest

from magsq.hurwitz import make_algebra, tensor_algebra
from magsq.jordan import (
    circ, jordan_identity_check, make_jordan, mr_star, reflection_auto,
    scalar_trace, trace_form, trace_signature, traceless_basis,
)
from magsq.ratlin import Rat


@pytest.fixture(scope="module")
def J3O():
    return make_jordan(make_algebra("O"), 3, (1, 1, 1))


def test_dimensions():
    O = make_algebra("O")
    assert make_jordan(O, 3, (1, 1, 1)).dim == 27
    assert make_jordan(O, 2, (1, 1)).dim == 10
    assert make_jordan(O, 3, (-1, 1, 1)).dim == 27
    for name in ("R", "C", "H", "Cs", "Hs", "Os"):
        A = make_algebra(name)
        J = make_jordan(A, 3, (1, 1, 1))
        assert J.dim == 3 + 3 * A.dim


def test_bad_inputs():
    O = make_algebra("O")
    with pytest.raises(ValueError):
        make_jordan(O, 4, (1, 1, 1, 1))
    with pytest.raises(ValueError):
        make_jordan(O, 3, (1, 1))
    with pytest.raises(ValueError):
        make_jordan(O, 3, (1, 2, 1))


def test_unit_and_idempotent(J3O):
    I = J3O.unit_vector()
    e11 = np.zeros(J3O.dim, dtype=np.int64)
    e11[J3O.index_of(("diag", 0, 0))] = 1
    assert circ(J3O, e11, e11) == list(e11)
    assert circ(J3O, I, e11) == list(e11)
    x = np.arange(J3O.dim, dtype=np.int64)
    assert circ(J3O, I, x) == [Rat(int(v)) for v in x]


def test_commutativity(J3O):
    assert (J3O.circ2 == J3O.circ2.transpose(1, 0, 2)).all()


def test_lorentzian_element_shape():
    # eta = (-1,1,1): mirror of (0,1) and (0,2) entries carries a minus sign
    O = make_algebra("O")
    J = make_jordan(O, 3, (-1, 1, 1))
    v = np.zeros(J.dim, dtype=np.int64)
    v[J.index_of(("off", 0, 1, 2))] = 1  # i2 in the (0,1) slot
    M = J.element_matrix(v)
    assert M[0][1][2] == 1 and M[1][0][2] == 1   # -conj(i2) = +i2
    v = np.zeros(J.dim, dtype=np.int64)
    v[J.index_of(("off", 1, 2, 2))] = 1
    M = J.element_matrix(v)
    assert M[1][2][2] == 1 and M[2][1][2] == -1  # +conj(i2) = -i2


def test_trace_signatures():
    O, Os = make_algebra("O"), make_algebra("Os")
    assert trace_signature(make_jordan(O, 3, (1, 1, 1))) == (27, 0, 0)
    # split norm form on the off-diagonal blocks: 3 + 3*4 plus, 3*4 minus
    assert trace_signature(make_jordan(Os, 3, (1, 1, 1))) == (15, 12, 0)
    sig = trace_signature(make_jordan(O, 3, (-1, 1, 1)))
    assert sig[2] == 0 and sig[0] > 0 and sig[1] > 0


def test_mr_star_traceless_and_example():
    R = make_algebra("R")
    J = make_jordan(R, 3, (1, 1, 1))
    x = [0] * J.dim
    x[J.index_of(("diag", 0, 0))] = 1
    x[J.index_of(("diag", 1, 0))] = -1
    out = mr_star(J, x, x)
    # X o X - (2/3) I for X = E11 - E22
    expected = [Rat(1, 3), Rat(1, 3), Rat(-2, 3), Rat(0), Rat(0), Rat(0)]
    assert out == expected
    with pytest.raises(ValueError):
        mr_star(J, J.unit_vector(), x)


def test_mr_star_closes_on_traceless():
    O = make_algebra("O")
    J = make_jordan(O, 3, (1, 1, 1))
    B = traceless_basis(J)
    rng = random.Random(5)
    for _ in range(20):
        x = B.T @ np.array([rng.randrange(-2, 3) for _ in range(len(B))])
        y = B.T @ np.array([rng.randrange(-2, 3) for _ in range(len(B))])
        out = mr_star(J, list(x), list(y))
        assert scalar_trace(J, out) == 0


def test_reflection_properties(J3O):
    s = reflection_auto(J3O, (1, 1, -1))
    assert int((s == 1).sum()) == 11 and int((s == -1).sum()) == 16
    assert (s * s == 1).all()
    # trace form preserved
    rng = random.Random(3)
    for _ in range(10):
        x = np.array([rng.randrange(-2, 3) for _ in range(27)])
        y = np.array([rng.randrange(-2, 3) for _ in range(27)])
        assert trace_form(J3O, list(s * x), list(s * y)) == trace_form(J3O, list(x), list(y))
    assert (reflection_auto(J3O, (1, 1, 1)) == 1).all()
    with pytest.raises(ValueError):
        reflection_auto(J3O, (1, 1))


def test_jordan_identity():
    O = make_algebra("O")
    assert jordan_identity_check(make_jordan(O, 3, (1, 1, 1)), samples=60)
    assert jordan_identity_check(make_jordan(O, 3, (-1, 1, 1)), samples=60)
    assert jordan_identity_check(make_jordan(make_algebra("Os"), 3, (1, 1, 1)), samples=60)
    assert jordan_identity_check(make_jordan(O, 2, (1, 1)), samples=60)


def test_formal_tensor_hermitian_space_recorded():
    # Hermitian 3x3 over HxO: forms an algebra but need not satisfy the
    # Jordan identity; the verdict is recorded, not asserted.
    T = tensor_algebra(make_algebra("H"), make_algebra("O"))
    J = make_jordan(T, 3, (1, 1, 1))
    assert J.dim == 3 * len(J.fixed_units) + 3 * T.dim
    verdict = jordan_identity_check(J, samples=25)
    assert verdict in (True, False)


def test_closure_on_all_basis_pairs(J3O):
    # circ is total on the basis: every structure row exists and is finite
    assert J3O.circ2.shape == (27, 27, 27)
    # spot check an off-diagonal product against explicit matrices
    a = J3O.index_of(("off", 0, 1, 3))
    b = J3O.index_of(("off", 1, 2, 5))
    got = circ(J3O, np.eye(27, dtype=np.int64)[a], np.eye(27, dtype=np.int64)[b])
    O = make_algebra("O")
    i3 = [0] * 8
    i3[3] = 1
    i5 = [0] * 8
    i5[5] = 1
    prod = O.mul_vec(i3, i5)  # lands in the (0,2) slot as (i3 i5)/2
    expect = [Rat(0)] * 27
    for u in range(8):
        if prod[u] != 0:
            expect[J3O.index_of(("off", 0, 2, u))] = prod[u] / 2
    assert got == expect
