"""Rank-2 and rank-3 (pseudo-)Euclidean Jordan algebras of eta-Hermitian
matrices over a composition (or tensor) algebra.

An element satisfies eta X^dagger eta = X with eta a diagonal sign matrix,
so the mirror of the (i,j) entry is eta_i eta_j conj(X_ij).  The basis is:
one diagonal unit per slot and per conjugation-fixed base unit (for the
seven Hurwitz algebras the fixed space is just R, giving the familiar
n + n(n-1)/2 * dim A count), plus one element per off-diagonal slot and
base unit.  Products are X o Y = (XY + YX)/2; structure constants are
stored doubled so they stay integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from magsq.hurwitz import AlgebraTable
from magsq.ratlin import Rat, RatMatrix, symmetric_signature

__all__ = [
    "JordanAlgebra", "TracelessSubspace", "make_jordan", "circ", "mr_star",
    "trace_form", "trace_signature", "reflection_auto", "jordan_identity_check",
    "scalar_trace",
]

_SAMPLE_SEED = 40961


@dataclass(eq=False)
class JordanAlgebra:
    base: AlgebraTable
    n: int
    eta: tuple
    dim: int
    slots: tuple          # per basis element: ("diag", i, unit) | ("off", i, j, unit)
    basis_labels: tuple
    circ2: np.ndarray     # int8/int16, circ2[a,b,:] = coordinates of 2 * (e_a o e_b)
    fixed_units: tuple    # base units with conj_sign +1 (diagonal entries live here)

    def unit_vector(self):
        v = np.zeros(self.dim, dtype=np.int64)
        for a, s in enumerate(self.slots):
            if s[0] == "diag" and s[2] == self.base.unit:
                v[a] = 1
        return v

    def index_of(self, slot) -> int:
        return self.slots.index(slot)

    def diag_positions(self):
        return [a for a, s in enumerate(self.slots)
                if s[0] == "diag" and s[2] == self.base.unit]

    def element_matrix(self, vec):
        """Coordinates -> (n, n, dimA) array of base-algebra coordinates."""
        M = [[[Rat(0)] * self.base.dim for _ in range(self.n)] for _ in range(self.n)]
        for a, x in enumerate(vec):
            if x == 0:
                continue
            s = self.slots[a]
            if s[0] == "diag":
                _, i, u = s
                M[i][i][u] += x
            else:
                _, i, j, u = s
                M[i][j][u] += x
                cu = int(self.base.conj_sign[u])
                M[j][i][u] += x * cu * self.eta[i] * self.eta[j]
        return M


@dataclass(eq=False)
class TracelessSubspace:
    parent: JordanAlgebra
    basis: np.ndarray  # (dim-1, dim) integer coordinate vectors, scalar trace 0


def _basis_slots(A: AlgebraTable, n: int):
    fixed = tuple(k for k in range(A.dim) if A.conj_sign[k] == 1)
    slots = []
    labels = []
    for i in range(n):
        for u in fixed:
            slots.append(("diag", i, u))
            labels.append(f"E{i}{i}" if u == A.unit else f"E{i}{i}[{A.basis_labels[u]}]")
    for i in range(n):
        for j in range(i + 1, n):
            for u in range(A.dim):
                slots.append(("off", i, j, u))
                labels.append(f"F{i}{j}[{A.basis_labels[u]}]")
    return fixed, tuple(slots), tuple(labels)


def _slot_entries(slot, eta, conj_sign):
    """Nonzero matrix entries of a basis element: {(r,c): (unit, sign)}."""
    if slot[0] == "diag":
        _, i, u = slot
        return {(i, i): (u, 1)}
    _, i, j, u = slot
    return {(i, j): (u, 1), (j, i): (u, int(conj_sign[u]) * eta[i] * eta[j])}


def make_jordan(A: AlgebraTable, n: int, eta) -> JordanAlgebra:
    """Exact eta-Hermitian Jordan algebra over A; closure verified on all
    basis pairs (raises if the symmetrized product leaves the space)."""
    if n not in (2, 3):
        raise ValueError("rank must be 2 or 3")
    eta = tuple(int(e) for e in eta)
    if len(eta) != n or any(e not in (-1, 1) for e in eta):
        raise ValueError("eta must be a diagonal sign vector of length n")
    if not hasattr(A, "conj_sign"):
        raise ValueError("base algebra lacks a conjugation")
    fixed, slots, labels = _basis_slots(A, n)
    dim = len(slots)
    pos = {s: a for a, s in enumerate(slots)}
    entries = [_slot_entries(s, eta, A.conj_sign) for s in slots]
    mult = A.mult.astype(np.int64)
    conj_sign = A.conj_sign.astype(int)

    circ2 = np.zeros((dim, dim, dim), dtype=np.int16)
    for a in range(dim):
        Ea = entries[a]
        for b in range(a, dim):
            Eb = entries[b]
            prod = {}
            for (r, m), (u, su) in Ea.items():
                for (m2, c), (v, sv) in Eb.items():
                    if m != m2:
                        continue
                    acc = prod.setdefault((r, c), np.zeros(A.dim, dtype=np.int64))
                    acc += su * sv * mult[u, v]
            for (r, m), (u, su) in Eb.items():
                for (m2, c), (v, sv) in Ea.items():
                    if m != m2:
                        continue
                    acc = prod.setdefault((r, c), np.zeros(A.dim, dtype=np.int64))
                    acc += su * sv * mult[u, v]
            vec = _project(prod, pos, fixed, eta, conj_sign, n, A, a, b)
            circ2[a, b] = vec
            circ2[b, a] = vec
    J = JordanAlgebra(A, n, eta, dim, slots, labels, circ2, fixed)
    _validate_jordan(J)
    return J


def _project(prod, pos, fixed, eta, conj_sign, n, A, a, b):
    """Express a product matrix (dict slot -> A-vector) in the basis.

    Verifies eta-Hermiticity and diagonal membership in the conjugation-fixed
    space; any residue means the space is not closed, which is a hard error.
    """
    vec = np.zeros(len(pos), dtype=np.int64)
    for i in range(n):
        d = prod.get((i, i))
        if d is None:
            continue
        for u in np.nonzero(d)[0]:
            u = int(u)
            if conj_sign[u] != 1:
                raise ValueError(
                    f"product of basis {a},{b} has non-Hermitian diagonal")
            vec[pos[("diag", i, u)]] = d[u]
    for i in range(n):
        for j in range(i + 1, n):
            up = prod.get((i, j))
            lo = prod.get((j, i))
            upv = np.zeros(A.dim, dtype=np.int64) if up is None else up
            lov = np.zeros(A.dim, dtype=np.int64) if lo is None else lo
            mirror = np.array([lov[u] * conj_sign[u] for u in range(A.dim)],
                              dtype=np.int64) * eta[i] * eta[j]
            if not (upv == mirror).all():
                raise ValueError(
                    f"product of basis {a},{b} is not eta-Hermitian")
            for u in np.nonzero(upv)[0]:
                vec[pos[("off", i, j, int(u))]] = upv[u]
    return vec


def _validate_jordan(J: JordanAlgebra) -> None:
    if not (J.circ2 == J.circ2.transpose(1, 0, 2)).all():
        raise AssertionError("Jordan product is not commutative")
    I = J.unit_vector()
    prods = np.einsum("a,abk->bk", I, J.circ2.astype(np.int64))
    if not (prods == 2 * np.eye(J.dim, dtype=np.int64)).all():
        raise AssertionError("identity is not a unit for the Jordan product")


def circ(J: JordanAlgebra, x, y):
    """Exact Jordan product of two coordinate vectors."""
    out = [Rat(0)] * J.dim
    C = J.circ2
    for a, xa in enumerate(x):
        if xa == 0:
            continue
        for b, yb in enumerate(y):
            if yb == 0:
                continue
            row = C[a, b]
            for k in np.nonzero(row)[0]:
                out[k] += xa * yb * Rat(int(row[k]), 2)
    return out


def _rat(v) -> Rat:
    if isinstance(v, type(Rat(0))):
        return v
    if isinstance(v, (int, np.integer)):
        return Rat(int(v))
    return Rat(v)


def scalar_trace(J: JordanAlgebra, x) -> Rat:
    """Matrix trace, real part (the full trace for Hurwitz base algebras)."""
    return sum((_rat(x[a]) for a in J.diag_positions()), Rat(0))


def trace_form(J: JordanAlgebra, x, y) -> Rat:
    return scalar_trace(J, circ(J, x, y))


def trace_gram(J: JordanAlgebra) -> RatMatrix:
    diag = J.diag_positions()
    T = J.circ2[:, :, diag].astype(np.int64).sum(axis=2)
    ent = {}
    for a in range(J.dim):
        for b in range(J.dim):
            if T[a, b]:
                ent[(a, b)] = Rat(int(T[a, b]), 2)
    return RatMatrix(J.dim, J.dim, ent)


def trace_signature(J: JordanAlgebra):
    return symmetric_signature(trace_gram(J))


def traceless_basis(J: JordanAlgebra) -> np.ndarray:
    """Integer basis of the scalar-trace-zero subspace (dimension dim-1)."""
    diag = J.diag_positions()
    rows = []
    last = diag[-1]
    for a in range(J.dim):
        if a == last:
            continue
        v = np.zeros(J.dim, dtype=np.int64)
        v[a] = 1
        if a in diag:
            v[last] = -1
        rows.append(v)
    return np.array(rows, dtype=np.int64)


def traceless_subspace(J: JordanAlgebra) -> TracelessSubspace:
    return TracelessSubspace(J, traceless_basis(J))


def mr_star(J: JordanAlgebra, x, y):
    """Trace-corrected (Michel-Radicati) product on traceless elements."""
    if scalar_trace(J, x) != 0 or scalar_trace(J, y) != 0:
        raise ValueError("mr_star is defined on traceless elements")
    p = circ(J, x, y)
    t = scalar_trace(J, p)
    if t != 0:
        I = J.unit_vector()
        corr = t / J.n
        p = [pv - corr * int(iv) for pv, iv in zip(p, I)]
    return p


def reflection_auto(J: JordanAlgebra, s):
    """Signs of the conjugation X -> sXs on the basis; an exact automorphism.

    s is a diagonal +-1 vector of length n.  Diagonal basis elements are
    fixed; the (i,j) block picks up s_i s_j.
    """
    s = tuple(int(v) for v in s)
    if len(s) != J.n or any(v not in (-1, 1) for v in s):
        raise ValueError("s must be a diagonal sign vector of length n")
    signs = np.array([1 if sl[0] == "diag" else s[sl[1]] * s[sl[2]]
                      for sl in J.slots], dtype=np.int64)
    # automorphism check: circ2[a,b,k] s_k = s_a s_b circ2[a,b,k] for all a,b,k
    C = J.circ2.astype(np.int64)
    lhs = C * signs[None, None, :]
    rhs = C * signs[:, None, None] * signs[None, :, None]
    if not (lhs == rhs).all():
        raise AssertionError("reflection is not an automorphism")
    return signs


def _jordan_samples(dim: int, count: int):
    import random
    rng = random.Random(_SAMPLE_SEED)
    basis = list(np.eye(dim, dtype=np.int64))
    extra = [np.array([rng.randrange(-2, 3) for _ in range(dim)], dtype=np.int64)
             for _ in range(count)]
    return basis, extra


def jordan_identity_check(J: JordanAlgebra, samples: int = 120) -> bool:
    """(X^2 o Y) o X = X^2 o (Y o X) on all basis pairs and a fixed
    deterministic sample set; exact integer arithmetic throughout."""
    C = J.circ2.astype(np.int64)
    basis, extra = _jordan_samples(J.dim, samples)
    xs = basis + extra
    ys = extra[: max(10, len(extra) // 4)] + basis
    for x in xs:
        Ax = np.tensordot(x, C, axes=(0, 0))   # Ax[b,k]: u @ Ax = 2 (u o x)
        xx = x @ Ax                            # 2 x^2
        Axx = np.tensordot(xx, C, axes=(0, 0))
        for y in ys:
            lhs = (y @ Axx) @ Ax               # 8 (x^2 o y) o x
            rhs = (y @ Ax) @ Axx               # 8 x^2 o (y o x)
            if not (lhs == rhs).all():
                return False
    return True
