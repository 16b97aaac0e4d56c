"""The seven composition algebras R, C, H, O, Cs, Hs, Os, their tensor
products, and exact identity profiling.

Basis convention: index 0 is the unit, indices 1..dim-1 are imaginary units
i_k.  Octonion products follow the oriented Fano lines in FANO_LINES with
i_a i_b = i_c along each cycle and i_k^2 = -1.  The split table is the
Cayley-Dickson sign flip of O on the doubled half {i_4..i_7}: products of
two units from that half change sign, which makes exactly i_4..i_7 square
to +1 and gives the norm form signature (4,4).  C, H (and Cs, Hs) are the
subalgebras on {1,i_1} and {1,i_1,i_2,i_3} ({1,i_4} and {1,i_1,i_4,i_5}).

Conjugation fixes the unit and negates every imaginary unit; the norm is
N(x) = conj(x) x, which on the basis is the diagonal form stored in
norm_sign (so split units of square +1 carry norm -1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from magsq.ratlin import Rat

__all__ = [
    "AlgebraTable", "IdentityProfile", "make_algebra", "tensor_algebra",
    "norm", "trace_form", "conj", "check_composition", "composition_witness",
    "property_profile", "mult_table_json", "HURWITZ_NAMES",
]

HURWITZ_NAMES = ("R", "C", "H", "O", "Cs", "Hs", "Os")

# oriented lines {a,b,c}: i_a i_b = i_c cyclically
FANO_LINES = ((1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 4, 7),
              (1, 7, 6), (2, 5, 7), (3, 6, 5))

SPLIT_OF = {"C": "Cs", "H": "Hs", "O": "Os", "R": "R"}
DIVISION_OF = {v: k for k, v in SPLIT_OF.items()}

_PROFILE_SEED = 1729
_PROFILE_SAMPLES = 120


@dataclass(frozen=True, eq=False)
class AlgebraTable:
    """A finite-dimensional algebra with unit, exact integer structure
    constants, conjugation signs and diagonal norm form."""

    name: str
    dim: int
    unit: int
    mult: np.ndarray       # int8, mult[i, j, k] = coefficient of e_k in e_i e_j
    conj_sign: np.ndarray  # int8, +1 on unit, -1 on imaginary units
    norm_sign: np.ndarray  # int8, N(e_k) = norm_sign[k]
    basis_labels: tuple = ()

    def mul_basis(self, i: int, j: int) -> np.ndarray:
        return self.mult[i, j]

    def mul_vec(self, x, y):
        """Exact product of two coordinate vectors (Rat entries allowed)."""
        x = list(x)
        y = list(y)
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("dimension mismatch")
        out = [Rat(0)] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                row = self.mult[i, j]
                for k in np.nonzero(row)[0]:
                    out[k] += xi * yj * int(row[k])
        return out

    def conj_vec(self, x):
        return [int(s) * xv for s, xv in zip(self.conj_sign, x)]

    def imaginary_indices(self) -> list:
        return [k for k in range(self.dim) if k != self.unit]

    @property
    def is_split(self) -> bool:
        return bool((np.asarray(self.norm_sign) < 0).any())


def _fano_table() -> np.ndarray:
    M = np.zeros((8, 8, 8), dtype=np.int8)
    M[0, :, :] = np.eye(8, dtype=np.int8)
    M[:, 0, :] = np.eye(8, dtype=np.int8)
    for k in range(1, 8):
        M[k, k, 0] = -1
    for line in FANO_LINES:
        for t in range(3):
            a, b, c = line[t], line[(t + 1) % 3], line[(t + 2) % 3]
            M[a, b, c] = 1
            M[b, a, c] = -1
    return M


def _sub_table(M: np.ndarray, idx: list) -> np.ndarray:
    n = len(idx)
    out = np.zeros((n, n, n), dtype=np.int8)
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            row = M[i, j]
            nz = np.nonzero(row)[0]
            for k in nz:
                if k not in idx:
                    raise ValueError("subalgebra not closed")
                out[a, b, idx.index(int(k))] = row[k]
    return out


def _finish(name: str, M: np.ndarray) -> AlgebraTable:
    dim = M.shape[0]
    conj_sign = np.full(dim, -1, dtype=np.int8)
    conj_sign[0] = 1
    # N(i_k) = conj(i_k) i_k = -(i_k)^2 on imaginary units; N(1) = 1
    norm_sign = np.array([int(M[k, k, 0]) * int(conj_sign[k]) if k else 1
                          for k in range(dim)], dtype=np.int8)
    labels = tuple(["1"] + [f"i{k}" for k in range(1, dim)])
    A = AlgebraTable(name, dim, 0, M, conj_sign, norm_sign, labels)
    _validate(A)
    return A


def _validate(A: AlgebraTable) -> None:
    M, dim = A.mult, A.dim
    eye = np.eye(dim, dtype=np.int8)
    if not (M[A.unit] == eye).all() or not (M[:, A.unit] == eye).all():
        raise ValueError(f"{A.name}: unit is not a two-sided identity")
    s = A.conj_sign.astype(np.int64)
    # conj(e_i e_j) = conj(e_j) conj(e_i) componentwise
    lhs = M.astype(np.int64) * s[None, None, :]
    rhs = np.transpose(M, (1, 0, 2)).astype(np.int64) * s[:, None, None] * s[None, :, None]
    if not (lhs == rhs).all():
        raise ValueError(f"{A.name}: conjugation is not an anti-automorphism")
    if A.norm_sign[A.unit] != 1:
        raise ValueError(f"{A.name}: N(1) != 1")


def make_algebra(name: str) -> AlgebraTable:
    """One of the seven unital composition algebras, as an exact table."""
    if name not in HURWITZ_NAMES:
        raise ValueError(f"unknown algebra {name!r}; expected one of {HURWITZ_NAMES}")
    O = _fano_table()
    if name in ("R", "C", "H", "O"):
        idx = {"R": [0], "C": [0, 1], "H": [0, 1, 2, 3], "O": list(range(8))}[name]
        return _finish(name, _sub_table(O, idx))
    # split family: flip the sign of products of two doubled-half units
    Os = O.copy()
    half = np.arange(8) >= 4
    flip = np.outer(half, half)
    Os[flip] = -Os[flip]
    if name == "Os":
        return _finish(name, Os)
    idx = {"Cs": [0, 4], "Hs": [0, 1, 4, 5]}[name]
    return _finish(name, _sub_table(Os, idx))


def tensor_algebra(A: AlgebraTable, B: AlgebraTable) -> AlgebraTable:
    """Componentwise product algebra on A (x) B with conj = conj (x) conj."""
    n, m = A.dim, B.dim
    # basis index (i, j) -> i*m + j; (a_i (x) b_j)(a_k (x) b_l) = (a_i a_k) (x) (b_j b_l)
    M = np.einsum("ikp,jlq->ijklpq", A.mult, B.mult).reshape(n * m, n * m, n * m)
    conj_sign = np.outer(A.conj_sign, B.conj_sign).reshape(-1).astype(np.int8)
    norm_sign = np.outer(A.norm_sign, B.norm_sign).reshape(-1).astype(np.int8)
    labels = tuple(f"{a}.{b}" for a in A.basis_labels for b in B.basis_labels)
    T = AlgebraTable(f"{A.name}x{B.name}", n * m, 0, M.astype(np.int8),
                     conj_sign, norm_sign, labels)
    _validate(T)
    return T


def norm(A: AlgebraTable, x) -> Rat:
    """N(x) = conj(x) x; on coordinates the diagonal form stored in norm_sign."""
    x = list(x)
    if len(x) != A.dim:
        raise ValueError("dimension mismatch")
    return sum((Rat(int(s)) * xv * xv for s, xv in zip(A.norm_sign, x)), Rat(0))


def trace_form(A: AlgebraTable, x, y) -> Rat:
    """Polarized norm <x,y> = N(x+y) - N(x) - N(y) = conj(x)y + conj(y)x."""
    x, y = list(x), list(y)
    if len(x) != A.dim or len(y) != A.dim:
        raise ValueError("dimension mismatch")
    return sum((2 * Rat(int(s)) * xv * yv for s, xv, yv in zip(A.norm_sign, x, y)), Rat(0))


def conj(A: AlgebraTable, x):
    if len(list(x)) != A.dim:
        raise ValueError("dimension mismatch")
    return A.conj_vec(list(x))


def _polarized_gram(A: AlgebraTable) -> np.ndarray:
    """G[(x,y),(w,z)] = <e_x e_y, e_w e_z> as an (n^2, n^2) int64 array."""
    n = A.dim
    P = A.mult.reshape(n * n, n).astype(np.int64)
    d = A.norm_sign.astype(np.int64)
    return 2 * (P * d[None, :]) @ P.T


def _composition_violation(A: AlgebraTable):
    """First violating quadruple of a polarized composition identity, else None.

    Checks <xy,wz> + <wy,xz> = <x,w><y,z> and <xz,yw> + <xw,yz> = <x,y><z,w>
    on all basis quadruples; both sides are multilinear so this decides the
    composition property exactly.
    """
    n = A.dim
    G = _polarized_gram(A).reshape(n, n, n, n)  # G[a,b,c,d] = <e_a e_b, e_c e_d>
    t = np.diag(2 * A.norm_sign.astype(np.int64))
    lhs1 = G + np.einsum("wyxz->xywz", G)
    rhs1 = np.einsum("xw,yz->xywz", t, t)
    bad = np.argwhere(lhs1 != rhs1)
    if len(bad):
        x, y, w, z = (int(v) for v in bad[0])
        return ("left", (x, y, w, z), int(lhs1[x, y, w, z]), int(rhs1[x, y, w, z]))
    # right slot: <xz,yw> + <xw,yz> = <x,y><z,w>
    lhs2 = np.einsum("xzyw->xyzw", G) + np.einsum("xwyz->xyzw", G)
    rhs2 = np.einsum("xy,zw->xyzw", t, t)
    bad = np.argwhere(lhs2 != rhs2)
    if len(bad):
        x, y, z, w = (int(v) for v in bad[0])
        return ("right", (x, y, z, w), int(lhs2[x, y, z, w]), int(rhs2[x, y, z, w]))
    return None


def check_composition(A: AlgebraTable) -> bool:
    """True iff the norm form composes with the product, N(xy) = N(x)N(y)."""
    return _composition_violation(A) is None


def composition_witness(A: AlgebraTable):
    """A violating basis quadruple with both sides, or None when composition holds."""
    return _composition_violation(A)


@dataclass(frozen=True)
class IdentityProfile:
    """Exact verdicts for the standard identity ladder of an algebra."""

    commutative: bool
    associative: bool
    alternative: bool
    flexible: bool
    power_associative: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    def as_tuple(self):
        return (self.commutative, self.associative, self.alternative,
                self.flexible, self.power_associative)

    def __post_init__(self):
        chain = (self.associative, self.alternative, self.flexible,
                 self.power_associative)
        for a, b in zip(chain, chain[1:]):
            if a and not b:
                raise ValueError("identity implication chain violated")


def _profile_samples(dim: int):
    rng = random.Random(_PROFILE_SEED)
    basis = list(np.eye(dim, dtype=np.int64))
    extra = [np.array([rng.randrange(-2, 3) for _ in range(dim)], dtype=np.int64)
             for _ in range(_PROFILE_SAMPLES)]
    return basis + extra


def property_profile(T: AlgebraTable) -> IdentityProfile:
    """Decide commutativity/associativity/alternativity/flexibility on basis
    elements via full linearization (exact: the identities are multilinear
    after polarization), and power-associativity on a fixed deterministic
    rational sample set plus all basis elements."""
    n = T.dim
    M = T.mult.astype(np.int64)
    wit = {}

    commutative = True
    diff = M - M.transpose(1, 0, 2)
    bad = np.argwhere(diff.any(axis=2))
    if len(bad):
        commutative = False
        wit["commutative"] = tuple(int(v) for v in bad[0])

    # T1[x,y,z] = (xy)z, T2[x,y,z] = x(yz), both as coordinate vectors
    T1 = np.einsum("xyk,kzl->xyzl", M, M)
    T2 = np.einsum("yzk,xkl->xyzl", M, M)

    associative = True
    bad = np.argwhere((T1 - T2).any(axis=3))
    if len(bad):
        associative = False
        wit["associative"] = tuple(int(v) for v in bad[0])

    # flexible x(yx) = (xy)x, linearized in x:
    flex = T2 + T2.transpose(2, 1, 0, 3) - T1 - T1.transpose(2, 1, 0, 3)
    flexible = True
    bad = np.argwhere(flex.any(axis=3))
    if len(bad):
        flexible = False
        wit["flexible"] = tuple(int(v) for v in bad[0])

    # left alternative x(xy) = (xx)y and right alternative (yx)x = y(xx), linearized
    left = T2 + T2.transpose(1, 0, 2, 3) - T1 - T1.transpose(1, 0, 2, 3)
    right = T1 + T1.transpose(0, 2, 1, 3) - T2 - T2.transpose(0, 2, 1, 3)
    alternative = True
    bad = np.argwhere(left.any(axis=3))
    if len(bad):
        alternative = False
        wit["alternative"] = ("left",) + tuple(int(v) for v in bad[0])
    else:
        bad = np.argwhere(right.any(axis=3))
        if len(bad):
            alternative = False
            wit["alternative"] = ("right",) + tuple(int(v) for v in bad[0])

    power_associative = True
    for x in _profile_samples(n):
        xx = np.einsum("i,j,ijk->k", x, x, M)
        # cubic: x(xx) vs (xx)x ; quartic: (xx)(xx) vs x(x(xx))
        xxx_l = np.einsum("i,j,ijk->k", x, xx, M)
        xxx_r = np.einsum("i,j,ijk->k", xx, x, M)
        if not (xxx_l == xxx_r).all():
            power_associative = False
            wit["power_associative"] = ("cubic", tuple(int(v) for v in x))
            break
        x4_a = np.einsum("i,j,ijk->k", xx, xx, M)
        x4_b = np.einsum("i,j,ijk->k", x, xxx_l, M)
        if not (x4_a == x4_b).all():
            power_associative = False
            wit["power_associative"] = ("quartic", tuple(int(v) for v in x))
            break

    return IdentityProfile(commutative, associative, alternative, flexible,
                           power_associative, wit)


def mult_table_json(A: AlgebraTable) -> list:
    """Audit export: list of signed triples (i, j, k, sign)."""
    out = []
    for i in range(A.dim):
        for j in range(A.dim):
            row = A.mult[i, j]
            for k in np.nonzero(row)[0]:
                out.append((i, j, int(k), int(row[k])))
    return out
