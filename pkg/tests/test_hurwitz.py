import random

import numpy as np
import pytest

from magsq.hurwitz import (
    HURWITZ_NAMES, check_composition, composition_witness, conj, make_algebra,
    mult_table_json, norm, property_profile, tensor_algebra, trace_form,
)
from magsq.ratlin import Rat

# Table of expected identity profiles for tensor products
# (commutative, associative, alternative, flexible, power-associative)
TENSOR_PROFILES = {
    ("C", "C"): (True, True, True, True, True),
    ("C", "H"): (False, True, True, True, True),
    ("H", "H"): (False, True, True, True, True),
    ("C", "O"): (False, False, True, True, True),
    ("H", "O"): (False, False, False, False, False),
    ("O", "O"): (False, False, False, False, False),
}

EXPECTED_NORM_SIG = {
    "R": (1, 0), "C": (2, 0), "H": (4, 0), "O": (8, 0),
    "Cs": (1, 1), "Hs": (2, 2), "Os": (4, 4),
}


@pytest.fixture(scope="module")
def algebras():
    return {n: make_algebra(n) for n in HURWITZ_NAMES}


def test_unknown_name_rejected():
    with pytest.raises(ValueError):
        make_algebra("S")


def test_unit_acts_as_identity(algebras):
    for A in algebras.values():
        eye = np.eye(A.dim, dtype=np.int8)
        assert (A.mult[A.unit] == eye).all()
        assert (A.mult[:, A.unit] == eye).all()


def test_octonion_fano_squares(algebras):
    O = algebras["O"]
    for k in range(1, 8):
        assert O.mult[k, k, 0] == -1
    # each oriented line multiplies cyclically
    from magsq.hurwitz import FANO_LINES
    for a, b, c in FANO_LINES:
        assert O.mult[a, b, c] == 1 and O.mult[b, a, c] == -1
        assert O.mult[b, c, a] == 1 and O.mult[c, a, b] == 1


def test_norm_signatures(algebras):
    for name, A in algebras.items():
        sig = (int((A.norm_sign > 0).sum()), int((A.norm_sign < 0).sum()))
        assert sig == EXPECTED_NORM_SIG[name]


def test_split_units_square_plus_one(algebras):
    # the split-fixing requirement: Cs = <1, u> with u^2 = +1, Hs signature (2,2)
    Cs = algebras["Cs"]
    assert Cs.mult[1, 1, 0] == 1
    Os = algebras["Os"]
    squares = [int(Os.mult[k, k, 0]) for k in range(1, 8)]
    assert squares.count(1) == 4 and squares.count(-1) == 3


def test_norm_values(algebras):
    O = algebras["O"]
    e1 = [0, 1, 0, 0, 0, 0, 0, 0]
    assert norm(O, e1) == 1
    Os = algebras["Os"]
    split_unit = [0, 0, 0, 0, 1, 0, 0, 0]  # i4 squares to +1
    assert Os.mult[4, 4, 0] == 1
    assert norm(Os, split_unit) == -1
    for A in algebras.values():
        one = [1] + [0] * (A.dim - 1)
        assert norm(A, one) == 1


def test_trace_form_is_polarization(algebras):
    rng = random.Random(7)
    for A in algebras.values():
        x = [rng.randrange(-3, 4) for _ in range(A.dim)]
        y = [rng.randrange(-3, 4) for _ in range(A.dim)]
        xy = [a + b for a, b in zip(x, y)]
        assert trace_form(A, x, y) == norm(A, xy) - norm(A, x) - norm(A, y)


def test_norm_is_multiplicative_on_samples(algebras):
    rng = random.Random(11)
    for A in algebras.values():
        for _ in range(25):
            x = [Rat(rng.randrange(-2, 3)) for _ in range(A.dim)]
            y = [Rat(rng.randrange(-2, 3)) for _ in range(A.dim)]
            assert norm(A, A.mul_vec(x, y)) == norm(A, x) * norm(A, y)


def test_conj_is_norm_isometry(algebras):
    rng = random.Random(13)
    for A in algebras.values():
        x = [rng.randrange(-3, 4) for _ in range(A.dim)]
        assert norm(A, conj(A, x)) == norm(A, x)


def test_conj_of_product(algebras):
    # conj(xy) = conj(y) conj(x) on random vectors
    rng = random.Random(17)
    for A in algebras.values():
        x = [Rat(rng.randrange(-2, 3)) for _ in range(A.dim)]
        y = [Rat(rng.randrange(-2, 3)) for _ in range(A.dim)]
        lhs = conj(A, A.mul_vec(x, y))
        rhs = A.mul_vec(conj(A, y), conj(A, x))
        assert list(lhs) == list(rhs)


def test_composition_all_seven(algebras):
    for name, A in algebras.items():
        assert check_composition(A), name
        assert composition_witness(A) is None


def test_tensor_products_not_composition(algebras):
    for a, b in [("C", "O"), ("H", "O"), ("O", "O")]:
        T = tensor_algebra(algebras[a], algebras[b])
        assert not check_composition(T)
        assert composition_witness(T) is not None


def test_tensor_dims(algebras):
    assert tensor_algebra(algebras["H"], algebras["O"]).dim == 32
    T = tensor_algebra(algebras["R"], algebras["O"])
    assert (T.mult == algebras["O"].mult).all()


def test_tensor_swap_isomorphism(algebras):
    A, B = algebras["C"], algebras["H"]
    T1, T2 = tensor_algebra(A, B), tensor_algebra(B, A)
    n, m = A.dim, B.dim
    perm = np.array([(i % m) * n + (i // m) for i in range(n * m)])
    assert (T1.mult == T2.mult[np.ix_(perm, perm, perm)]).all()


def test_identity_profiles_match_expected(algebras):
    for (a, b), expected in TENSOR_PROFILES.items():
        P = property_profile(tensor_algebra(algebras[a], algebras[b]))
        assert P.as_tuple() == expected, (a, b, P.as_tuple())
        for flag, value in zip(
                ("commutative", "associative", "alternative", "flexible",
                 "power_associative"), expected):
            if not value:
                assert flag in P.witnesses


def test_profile_witnesses_are_real(algebras):
    T = tensor_algebra(algebras["H"], algebras["O"])
    P = property_profile(T)
    kind, x = P.witnesses["power_associative"]
    x = np.array(x, dtype=np.int64)
    M = T.mult.astype(np.int64)
    xx = np.einsum("i,j,ijk->k", x, x, M)
    if kind == "cubic":
        l = np.einsum("i,j,ijk->k", x, xx, M)
        r = np.einsum("i,j,ijk->k", xx, x, M)
    else:
        l = np.einsum("i,j,ijk->k", xx, xx, M)
        r = np.einsum("i,j,ijk->k", x, np.einsum("i,j,ijk->k", x, xx, M), M)
    assert not (l == r).all()


def test_mult_table_json_round_trip(algebras):
    A = algebras["H"]
    triples = mult_table_json(A)
    M = np.zeros((4, 4, 4), dtype=np.int8)
    for i, j, k, s in triples:
        M[i, j, k] = s
    assert (M == A.mult).all()
