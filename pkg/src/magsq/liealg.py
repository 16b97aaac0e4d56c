"""Lie algebras with sparse exact structure constants.

Everything downstream (magic-square cells, coset splits) is carried by
LieAlgebra: labeled basis, brackets as sparse rational vectors, integer-scaled
adjoint matrices for fast exact verification (Jacobi, Killing) via scipy
sparse integer arithmetic.

Derivation and triality algebras are realized as Leibniz kernels.  For large
Jordan algebras the kernel is produced as the span of inner derivations,
each verified against the Leibniz rule exactly, and completeness is certified
by a mod-p rank bound of the constraint system (rank over Q >= rank mod p for
integer matrices, so dim ker over Q <= dim ker mod p; equality with the
verified span is an exact sandwich).  If the certificate cannot be closed the
code falls back to a full exact kernel computation.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from magsq import jordan as jordan_mod
from magsq.hurwitz import AlgebraTable
from magsq.jordan import JordanAlgebra
from magsq.ratlin import Rat, RatMatrix, kernel_basis, symmetric_signature, gram_matrix

__all__ = [
    "LieAlgebra", "RealFormLabel", "InvolutionSplit", "SpanSolver",
    "jacobi_check", "killing_form", "killing_signature", "character",
    "derivations_of", "triality_of", "involution_split", "restricted_signature",
    "identify_real_form", "center", "derived_subalgebra", "so_basis",
    "DegenerateKillingFormError", "matrix_lie_algebra",
]

_MODP = 2_147_483_629
_CERT_SEED = 90210


class DegenerateKillingFormError(ValueError):
    def __init__(self, n_zero):
        super().__init__(f"Killing form is degenerate ({n_zero} null directions)")
        self.n_zero = n_zero


# ---------------------------------------------------------------------------
# integer row reduction utilities

def _rref_int(rows, ncols):
    """Fully reduced primitive-integer echelon of integer dict-rows.

    Returns list of (pivot_col, rowdict) sorted by pivot column; each pivot
    column appears in exactly one row.
    """
    pivots = []  # (col, rowdict)
    for row in rows:
        row = dict(row)
        for col, prow in pivots:
            m = row.get(col)
            if m is None:
                continue
            p = prow[col]
            for c, v in prow.items():
                w = row.get(c, 0) * p - m * v
                if w:
                    row[c] = w
                else:
                    row.pop(c, None)
            for c in [c for c, v in row.items() if v == 0]:
                del row[c]
            g = 0
            for v in row.values():
                g = math.gcd(g, v)
            if g > 1:
                row = {c: v // g for c, v in row.items()}
        if not row:
            continue
        col = min(row)
        # back-eliminate the new pivot from existing rows
        for i, (pc, prow) in enumerate(pivots):
            m = prow.get(col)
            if m is None:
                continue
            p = row[col]
            new = {c: v * p for c, v in prow.items()}
            for c, v in row.items():
                w = new.get(c, 0) - m * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            g = 0
            for v in new.values():
                g = math.gcd(g, v)
            if g > 1:
                new = {c: v // g for c, v in new.items()}
            pivots[i] = (pc, new)
        pivots.append((col, row))
        pivots.sort(key=lambda t: t[0])
    return pivots


def _rows_from_matrix(arr):
    out = []
    for r in np.asarray(arr):
        nz = np.nonzero(r)[0]
        out.append({int(c): int(r[c]) for c in nz})
    return out


def _dense_rows(pivots, ncols, dtype=np.int64):
    R = np.zeros((len(pivots), ncols), dtype=dtype)
    for i, (_, row) in enumerate(pivots):
        for c, v in row.items():
            R[i, c] = v
    return R


class SpanSolver:
    """Exact coordinates over a fixed integer row space.

    Stores the reduced echelon of the rows; membership and coordinates are
    exact (returns None when the query is outside the span).  Coordinates
    refer to the reduced rows, exposed as .basis.
    """

    def __init__(self, rows, ncols):
        if isinstance(rows, np.ndarray):
            rows = _rows_from_matrix(rows)
        self.pivots = _rref_int(rows, ncols)
        self.ncols = ncols
        self.basis = _dense_rows(self.pivots, ncols)
        self.pivcols = [c for c, _ in self.pivots]
        self.pivvals = [row[c] for c, row in self.pivots]

    @property
    def dim(self):
        return len(self.pivots)

    def coords(self, vec):
        """vec: dict or array of ints/Rats -> list of Rat, or None."""
        if isinstance(vec, dict):
            get = lambda c: vec.get(c, 0)
            items = dict(vec)
        else:
            arr = vec
            get = lambda c: arr[c]
            items = {int(c): arr[c] for c in np.nonzero(arr)[0]} if isinstance(arr, np.ndarray) else {c: v for c, v in enumerate(arr) if v != 0}
        coeffs = [Rat(0)] * len(self.pivots)
        residual = {c: Rat(int(v)) if isinstance(v, (int, np.integer)) else v
                    for c, v in items.items()}
        for i, (col, row) in enumerate(self.pivots):
            rv = residual.get(col)
            if rv is None or rv == 0:
                continue
            t = rv / row[col]
            coeffs[i] = t
            for c, v in row.items():
                w = residual.get(c, Rat(0)) - t * v
                if w:
                    residual[c] = w
                else:
                    residual.pop(c, None)
        if residual:
            return None
        return coeffs

    def contains(self, vec) -> bool:
        return self.coords(vec) is not None


# ---------------------------------------------------------------------------
# the carrier

class LieAlgebra:
    """Labeled basis plus sparse exact antisymmetric structure constants."""

    def __init__(self, dim, labels, bracket, rep_matrices=None):
        self.dim = dim
        self.labels = list(labels)
        if len(self.labels) != dim:
            raise ValueError("labels must cover the basis")
        # bracket: {(i, j): {k: Rat}} for i < j, zero entries absent
        self.bracket = bracket
        self.rep_matrices = rep_matrices
        self._scale = None
        self._ads = None
        self._killing = None

    def bracket_vec(self, i, j):
        if i == j:
            return {}
        if i < j:
            return self.bracket.get((i, j), {})
        return {k: -v for k, v in self.bracket.get((j, i), {}).items()}

    def bracket_of(self, x, y):
        """Exact bracket of two coordinate vectors given as dicts/sequences."""
        xd = x if isinstance(x, dict) else {i: v for i, v in enumerate(x) if v != 0}
        yd = y if isinstance(y, dict) else {i: v for i, v in enumerate(y) if v != 0}
        out = {}
        for i, xi in xd.items():
            for j, yj in yd.items():
                for k, c in self.bracket_vec(i, j).items():
                    w = out.get(k, Rat(0)) + xi * yj * c
                    if w:
                        out[k] = w
                    else:
                        out.pop(k, None)
        return out

    def scale(self) -> int:
        if self._scale is None:
            den = 1
            for row in self.bracket.values():
                for v in row.values():
                    d = int(v.denominator)
                    den = den * d // math.gcd(den, d)
            self._scale = den
        return self._scale

    def ads(self):
        """Integer adjoint matrices: ads()[i] = scale * ad(e_i), csr int64."""
        if self._ads is None:
            L = self.scale()
            n = self.dim
            data = [[] for _ in range(n)]
            rows = [[] for _ in range(n)]
            cols = [[] for _ in range(n)]
            for (i, j), vec in self.bracket.items():
                for k, v in vec.items():
                    c = int(v * L)
                    data[i].append(c)
                    rows[i].append(k)
                    cols[i].append(j)
                    data[j].append(-c)
                    rows[j].append(k)
                    cols[j].append(i)
            self._ads = [sp.csr_matrix((data[i], (rows[i], cols[i])), shape=(n, n),
                                       dtype=np.int64) for i in range(n)]
        return self._ads

    def segment_indices(self, prefix: str):
        return [i for i, lab in enumerate(self.labels) if lab.startswith(prefix)]


def matrix_lie_algebra(mats, space_dim, label_prefix="x", check_closure=True):
    """LieAlgebra spanned by integer matrices under the commutator.

    The given matrices are reduced to a primitive echelon basis; commutators
    must land in the span exactly (raises otherwise).
    """
    flat = [np.asarray(m, dtype=np.int64).reshape(-1) for m in mats]
    solver = SpanSolver(np.array(flat) if flat else np.zeros((0, space_dim * space_dim), dtype=np.int64),
                        space_dim * space_dim)
    basis = [solver.basis[i].reshape(space_dim, space_dim) for i in range(solver.dim)]
    r = solver.dim
    bracket = {}
    for i in range(r):
        for j in range(i + 1, r):
            comm = basis[i] @ basis[j] - basis[j] @ basis[i]
            if not comm.any():
                continue
            coords = solver.coords(comm.reshape(-1))
            if coords is None:
                if check_closure:
                    raise ValueError("matrix span is not closed under commutator")
                continue
            vec = {k: c for k, c in enumerate(coords) if c != 0}
            if vec:
                bracket[(i, j)] = vec
    labels = [f"{label_prefix}{i}" for i in range(r)]
    return LieAlgebra(r, labels, bracket, rep_matrices=basis)


# ---------------------------------------------------------------------------
# verification + invariants

def jacobi_check(L: LieAlgebra) -> bool:
    """Exact Jacobi identity on all basis triples, via ad([x,y]) = [ad x, ad y]."""
    ads = L.ads()
    n = L.dim
    sc = L.scale()
    for (i, j), vec in L.bracket.items():
        lhs = sp.csr_matrix((n, n), dtype=np.int64)
        for k, v in vec.items():
            lhs = lhs + int(v * sc) * ads[k]
        rhs = ads[i] @ ads[j] - ads[j] @ ads[i]
        if (lhs - rhs).nnz:
            return False
    # pairs with zero bracket still need [ad_i, ad_j] = 0
    nz = set(L.bracket.keys())
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in nz:
                continue
            if (ads[i] @ ads[j] - ads[j] @ ads[i]).nnz:
                return False
    return True


def killing_form(L: LieAlgebra) -> RatMatrix:
    """K(e_i, e_j) = Tr(ad e_i ad e_j), exact."""
    if L._killing is None:
        ads = L.ads()
        n = L.dim
        if n == 0:
            L._killing = RatMatrix(0, 0, {})
            return L._killing
        AD = sp.vstack([a.reshape(1, n * n) for a in ads], format="csr")
        ADT = sp.vstack([a.T.reshape(1, n * n) for a in ads], format="csr")
        K = (AD @ ADT.T).toarray()
        s2 = L.scale() ** 2
        ent = {}
        for i in range(n):
            for j in range(n):
                if K[i, j]:
                    ent[(i, j)] = Rat(int(K[i, j]), s2)
        L._killing = RatMatrix(n, n, ent)
    return L._killing


def killing_signature(L: LieAlgebra):
    return symmetric_signature(killing_form(L))


def character(L: LieAlgebra) -> int:
    """chi = n_plus - n_minus of the Killing form; raises when degenerate."""
    np_, nm, nz = killing_signature(L)
    if nz:
        raise DegenerateKillingFormError(nz)
    return np_ - nm


def center(L: LieAlgebra):
    """Exact basis of {x : [x, e_j] = 0 for all j}."""
    rows = {}
    sc = L.scale()
    for i, ad in enumerate(L.ads()):
        coo = ad.tocoo()
        for k, j, v in zip(coo.row, coo.col, coo.data):
            rows.setdefault((int(k), int(j)), {})[i] = Rat(int(v), sc)
    ent = {}
    for r, key in enumerate(rows):
        for c, v in rows[key].items():
            ent[(r, c)] = v
    return kernel_basis(RatMatrix(len(rows), L.dim, ent))


def derived_subalgebra(L: LieAlgebra):
    """Primitive integer basis of span of all brackets."""
    sc = L.scale()
    rows = []
    for vec in L.bracket.values():
        rows.append({k: int(v * sc) for k, v in vec.items()})
    piv = _rref_int(rows, L.dim)
    return _dense_rows(piv, L.dim)


# ---------------------------------------------------------------------------
# derivation and triality algebras

def _product_tensor(obj):
    """(P, n, unit_vector, scalar_weights, kind) for a table or Jordan algebra.

    P is an integer product tensor (a positive multiple of the product keeps
    the Leibniz kernel unchanged); scalar_weights is the diagonal of the
    invariant bilinear form used to pre-restrict the derivation search space,
    or None when unavailable.
    """
    if isinstance(obj, JordanAlgebra):
        P = obj.circ2.astype(np.int64)
        n = obj.dim
        unit = obj.unit_vector()
        G = jordan_mod.trace_gram(obj)
        diag = np.zeros(n, dtype=np.int64)
        ok = True
        den = 1
        for (i, j), v in G.entries.items():
            if i != j:
                ok = False
                break
            den = den * int(v.denominator) // math.gcd(den, int(v.denominator))
        if ok:
            for (i, _), v in G.entries.items():
                diag[i] = int(v * den)
            if (diag == 0).any():
                ok = False
        return P, n, unit, (diag if ok else None), "jordan"
    if isinstance(obj, AlgebraTable):
        P = obj.mult.astype(np.int64)
        n = obj.dim
        unit = np.zeros(n, dtype=np.int64)
        unit[obj.unit] = 1
        diag = 2 * obj.norm_sign.astype(np.int64)
        return P, n, unit, diag, "algebra"
    raise TypeError("derivations_of expects an AlgebraTable or JordanAlgebra")


def _leibniz_ok(D, P):
    """Exact Leibniz check of one matrix against product tensor P."""
    lhs = np.einsum("ijl,kl->ijk", P, D)
    rhs = np.einsum("li,ljk->ijk", D, P) + np.einsum("lj,ilk->ijk", D, P)
    return (lhs == rhs).all()


def _trace_functional_guard(P, n, unit):
    """Check Tr(L_x) == c * f(x) with f the unit-coordinate functional in the
    trace-orthogonal sense used to justify restricting derivations to
    form-skew matrices.  Returns True when the restriction is sound."""
    trL = np.einsum("ijj->i", P)          # Tr of left multiplication by e_i
    # f must be supported where the unit vector is, proportionally
    c_candidates = trL[unit != 0]
    if len(c_candidates) == 0 or (c_candidates == 0).any():
        return False
    # require trL = c * u_weighted for the unit-support pattern: off-support zero
    c = c_candidates[0]
    expected = np.zeros(n, dtype=np.int64)
    expected[unit != 0] = c * unit[unit != 0]
    return (trL == expected).all()


def _skew_unit_space(n, diag, unit):
    """Integer basis of {D : D form-skew, D(unit) = 0} (or just D(unit)=0)."""
    rows = []
    if diag is not None:
        for i in range(n):
            for j in range(i + 1, n):
                D = np.zeros((n, n), dtype=np.int64)
                D[i, j] = int(diag[j])
                D[j, i] = -int(diag[i])
                rows.append(D.reshape(-1))
    else:
        for i in range(n):
            for j in range(n):
                D = np.zeros((n, n), dtype=np.int64)
                D[i, j] = 1
                rows.append(D.reshape(-1))
    V = np.array(rows, dtype=np.int64)
    # impose D(unit) = 0: kernel of the map coeffs -> D(unit)
    act = np.array([row.reshape(n, n) @ unit for row in V], dtype=np.int64)  # (r, n)
    ent = {}
    for r in range(act.shape[0]):
        for c in range(n):
            if act[r, c]:
                ent[(c, r)] = Rat(int(act[r, c]))
    ker = kernel_basis(RatMatrix(n, act.shape[0], ent))
    out = []
    for v in ker:
        den = 1
        for x in v:
            d = int(x.denominator)
            den = den * d // math.gcd(den, d)
        iv = np.array([int(x * den) for x in v], dtype=np.int64)
        out.append(iv @ V)
    return np.array(out, dtype=np.int64) if out else np.zeros((0, n * n), dtype=np.int64)


def _leibniz_row(P, n, i, j, k):
    """Sparse End-coefficients of the (i,j,k) Leibniz equation."""
    row = {}
    for l in np.nonzero(P[i, j])[0]:
        row[k * n + int(l)] = row.get(k * n + int(l), 0) + int(P[i, j, l])
    for l in np.nonzero(P[:, j, k])[0]:
        row[int(l) * n + i] = row.get(int(l) * n + i, 0) - int(P[l, j, k])
    for l in np.nonzero(P[i, :, k])[0]:
        row[int(l) * n + j] = row.get(int(l) * n + j, 0) - int(P[i, l, k])
    return {c: v for c, v in row.items() if v}


def _modp_rank(M: np.ndarray, p=_MODP) -> int:
    A = np.mod(M.astype(object), p).astype(np.int64) if M.dtype == object else np.mod(M, p)
    A = A.astype(np.int64)
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = None
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        col = A[r + 1:, c]
        mask = np.nonzero(col)[0]
        if len(mask):
            A[r + 1 + mask] = (A[r + 1 + mask] - np.outer(col[mask], A[r])) % p
        r += 1
    return r


def _certify_kernel_dim(P, n, Vbasis, found_dim, label=""):
    """Exact upper bound dim ker(Leibniz | span V) <= dim via mod-p rank of a
    sampled equation subset; True when it matches found_dim."""
    dimV = Vbasis.shape[0]
    if dimV == found_dim:
        return True  # the whole space is derivations, nothing to certify
    triples = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
    rng = random.Random(_CERT_SEED)
    rng.shuffle(triples)
    target_rank = dimV - found_dim
    Vt = Vbasis.T  # (n^2, dimV)
    batch = max(2 * dimV, 512)
    rows = []
    rank = 0
    for start in range(0, len(triples), batch):
        for (i, j, k) in triples[start:start + batch]:
            er = _leibniz_row(P, n, i, j, k)
            if not er:
                continue
            v = np.zeros(dimV, dtype=np.int64)
            for pos, val in er.items():
                v += val * Vt[pos]
            if v.any():
                rows.append(v)
        if not rows:
            continue
        rank = _modp_rank(np.array(rows, dtype=np.int64))
        if rank == target_rank:
            return True
        if rank > target_rank:
            raise AssertionError("certificate rank exceeded expected bound")
        if len(rows) > 6 * dimV + 4096:
            break
    return rank == target_rank


def _exact_kernel_restricted(P, n, Vbasis):
    """Full exact Leibniz kernel inside span(V); fallback path."""
    dimV = Vbasis.shape[0]
    Vt = Vbasis.T
    rows = {}
    idx = 0
    ent = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                er = _leibniz_row(P, n, i, j, k)
                if not er:
                    continue
                v = np.zeros(dimV, dtype=np.int64)
                for pos, val in er.items():
                    v += val * Vt[pos]
                nz = np.nonzero(v)[0]
                if len(nz) == 0:
                    continue
                for c in nz:
                    ent[(idx, int(c))] = Rat(int(v[c]))
                idx += 1
    ker = kernel_basis(RatMatrix(idx, dimV, ent))
    out = []
    for kv in ker:
        den = 1
        for x in kv:
            d = int(x.denominator)
            den = den * d // math.gcd(den, d)
        iv = np.array([int(x * den) for x in kv], dtype=np.int64)
        out.append(iv @ Vbasis)
    return out


def derivations_of(obj, label_prefix="der") -> LieAlgebra:
    """Lie algebra of Leibniz derivations A(xy) = A(x)y + xA(y) of a
    multiplication table (composition/tensor algebra or Jordan algebra).

    Candidate generators are the inner derivations ([L_a,L_b]+[L_a,R_b]+
    [R_a,R_b] for algebras, [L_X,L_Y] for Jordan algebras), each verified
    exactly; completeness of their span is certified by a mod-p rank bound,
    with a full exact kernel as fallback.
    """
    P, n, unit, diag, kind = _product_tensor(obj)

    # candidate inner derivations
    cands = []
    if kind == "jordan":
        Ls = [P[a].T.copy() for a in range(n)]   # L_a[k, j] = P[a, j, k]
        for a in range(n):
            for b in range(a + 1, n):
                D = Ls[a] @ Ls[b] - Ls[b] @ Ls[a]
                if D.any():
                    cands.append(D)
    else:
        Ls = [P[a].T.copy() for a in range(n)]
        Rs = [P[:, a].T.copy() for a in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                D = (Ls[a] @ Ls[b] - Ls[b] @ Ls[a]
                     + Ls[a] @ Rs[b] - Rs[b] @ Ls[a]
                     + Rs[a] @ Rs[b] - Rs[b] @ Rs[a])
                if D.any():
                    cands.append(D)

    solver = SpanSolver(np.array([c.reshape(-1) for c in cands], dtype=np.int64)
                        if cands else np.zeros((0, n * n), dtype=np.int64), n * n)
    basis_ok = all(_leibniz_ok(solver.basis[i].reshape(n, n), P)
                   for i in range(solver.dim))

    use_restricted = basis_ok and diag is not None and _trace_functional_guard(P, n, unit)
    V = _skew_unit_space(n, diag if use_restricted else None, unit)
    if use_restricted and solver.dim:
        # the verified span must sit inside V or the restriction is unsound
        vs = SpanSolver(V, n * n)
        if not all(vs.contains(solver.basis[i]) for i in range(solver.dim)):
            use_restricted = False
            V = _skew_unit_space(n, None, unit)

    certified = basis_ok and _certify_kernel_dim(P, n, V, solver.dim)
    if not certified:
        vecs = _exact_kernel_restricted(P, n, _skew_unit_space(n, None, unit))
        solver = SpanSolver(np.array(vecs, dtype=np.int64)
                            if vecs else np.zeros((0, n * n), dtype=np.int64), n * n)
        for i in range(solver.dim):
            if not _leibniz_ok(solver.basis[i].reshape(n, n), P):
                raise AssertionError("exact kernel produced a non-derivation")

    mats = [solver.basis[i].reshape(n, n) for i in range(solver.dim)]
    return matrix_lie_algebra(mats, n, label_prefix=label_prefix)


def so_basis(norm_sign) -> list:
    """Integer basis of matrices skew for the diagonal form norm_sign."""
    d = np.asarray(norm_sign, dtype=np.int64)
    n = len(d)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            X = np.zeros((n, n), dtype=np.int64)
            X[i, j] = 1
            X[j, i] = -int(d[i]) * int(d[j])
            out.append(X)
    return out


def triality_of(A: AlgebraTable) -> LieAlgebra:
    """Triples (T1,T2,T3) in so(A)^3 with T1(xy) = T2(x)y + x T3(y).

    Solved as an exact kernel over the so(A) parameters; the result is closed
    under the componentwise commutator (verified)."""
    n = A.dim
    S = so_basis(A.norm_sign)
    r = len(S)
    M = A.mult.astype(np.int64)
    ent = {}
    row_idx = 0
    # for each basis pair (x,y) and component k: sum_a u_a [S_a(e_x e_y)]_k
    #   - sum_b v_b [S_b(e_x) e_y]_k - sum_c w_c [e_x S_c(e_y)]_k = 0
    for x in range(n):
        for y in range(n):
            xy = M[x, y]
            cols = {}
            for a, Sa in enumerate(S):
                vec = Sa @ xy
                for k in np.nonzero(vec)[0]:
                    cols.setdefault(int(k), {})[a] = cols.get(int(k), {}).get(a, 0) + int(vec[k])
            for b, Sb in enumerate(S):
                vec = np.einsum("l,lk->k", Sb[:, x], M[:, y, :])
                for k in np.nonzero(vec)[0]:
                    cols.setdefault(int(k), {})[r + b] = cols.get(int(k), {}).get(r + b, 0) - int(vec[k])
            for c, Sc in enumerate(S):
                vec = np.einsum("l,lk->k", Sc[:, y], M[x, :, :])
                for k in np.nonzero(vec)[0]:
                    cols.setdefault(int(k), {})[2 * r + c] = cols.get(int(k), {}).get(2 * r + c, 0) - int(vec[k])
            for k, row in cols.items():
                clean = {c: v for c, v in row.items() if v}
                if clean:
                    for c, v in clean.items():
                        ent[(row_idx, c)] = Rat(v)
                    row_idx += 1
    ker = kernel_basis(RatMatrix(row_idx, 3 * r, ent))
    mats = []
    for v in ker:
        den = 1
        for x in v:
            d = int(x.denominator)
            den = den * d // math.gcd(den, d)
        iv = [int(x * den) for x in v]
        T1 = sum((iv[a] * S[a] for a in range(r)), np.zeros((n, n), dtype=np.int64))
        T2 = sum((iv[r + a] * S[a] for a in range(r)), np.zeros((n, n), dtype=np.int64))
        T3 = sum((iv[2 * r + a] * S[a] for a in range(r)), np.zeros((n, n), dtype=np.int64))
        big = np.zeros((3 * n, 3 * n), dtype=np.int64)
        big[:n, :n] = T1
        big[n:2 * n, n:2 * n] = T2
        big[2 * n:, 2 * n:] = T3
        mats.append(big)
    return matrix_lie_algebra(mats, 3 * n, label_prefix="tri")


# ---------------------------------------------------------------------------
# involutions and signatures

@dataclass
class InvolutionSplit:
    """g = k (+) m split by an exact involutive automorphism."""

    parent: LieAlgebra
    theta_int: sp.csr_matrix
    theta_den: int
    k_basis: np.ndarray   # (dim k, n) primitive integer rows
    m_basis: np.ndarray
    reductive: bool = True
    symmetric: bool = True

    @property
    def k_dim(self):
        return self.k_basis.shape[0]

    @property
    def m_dim(self):
        return self.m_basis.shape[0]

    def k_algebra(self) -> LieAlgebra:
        """The fixed subalgebra with structure constants over k_basis."""
        L = self.parent
        solver = SpanSolver(self.k_basis, L.dim)
        r = solver.dim
        bracket = {}
        for i in range(r):
            for j in range(i + 1, r):
                w = _bracket_int(L, solver.basis[i], solver.basis[j])
                if not w.any():
                    continue
                coords = solver.coords(w)
                if coords is None:
                    raise AssertionError("k is not closed under the bracket")
                sc = Rat(1, L.scale())
                vec = {k: c * sc for k, c in enumerate(coords) if c != 0}
                if vec:
                    bracket[(i, j)] = vec
        labels = [f"k{i}" for i in range(r)]
        return LieAlgebra(r, labels, bracket)


def _bracket_int(L: LieAlgebra, u, v):
    """scale * [u, v] for integer coordinate vectors, via sparse ads."""
    ads = L.ads()
    n = L.dim
    acc = None
    for i in np.nonzero(u)[0]:
        t = ads[int(i)] @ v
        t = int(u[i]) * t
        acc = t if acc is None else acc + t
    return acc if acc is not None else np.zeros(n, dtype=np.int64)


def _eigen_rows(theta_int: sp.csr_matrix, den: int, sign: int) -> np.ndarray:
    n = theta_int.shape[0]
    M = (theta_int + sign * den * sp.identity(n, dtype=np.int64, format="csr")).toarray()
    rows = []
    for c in range(n):
        col = M[:, c]
        if col.any():
            rows.append({int(i): int(col[i]) for i in np.nonzero(col)[0]})
    piv = _rref_int(rows, n)
    return _dense_rows(piv, n)


def involution_split(L: LieAlgebra, theta_int, theta_den=1) -> InvolutionSplit:
    """Split L by an exact involution theta = theta_int / theta_den.

    Verifies theta^2 = id and the automorphism property exactly, extracts the
    +-1 eigenspaces via the projectors (1 +- theta)/2, and verifies the
    reductive and symmetric bracket inclusions on every basis pair.
    """
    n = L.dim
    T = sp.csr_matrix(theta_int, dtype=np.int64, shape=(n, n))
    den = int(theta_den)
    sq = (T @ T - den * den * sp.identity(n, dtype=np.int64, format="csr"))
    if sq.nnz:
        raise ValueError("theta is not an involution")
    ads = L.ads()
    Tdense = T.toarray()
    for i in range(n):
        col = Tdense[:, i]
        Ti = None
        for a in np.nonzero(col)[0]:
            t = int(col[a]) * ads[int(a)]
            Ti = t if Ti is None else Ti + t
        if Ti is None:
            Ti = sp.csr_matrix((n, n), dtype=np.int64)
        if ((Ti @ T) - den * (T @ ads[i])).nnz:
            raise ValueError("theta is not a Lie algebra automorphism")
    kb = _eigen_rows(T, den, +1)
    mb = _eigen_rows(T, den, -1)
    if kb.shape[0] + mb.shape[0] != n:
        raise AssertionError("eigenspaces do not span")
    split = InvolutionSplit(L, T, den, kb, mb)
    _verify_inclusions(split)
    return split


def _theta_eigen_ok(split: InvolutionSplit, w, sign) -> bool:
    return not (split.theta_int @ w - sign * split.theta_den * w).any()


def _verify_inclusions(split: InvolutionSplit) -> None:
    L = split.parent
    kb, mb = split.k_basis, split.m_basis
    for basis_a, basis_b, sign, attr in (
            (kb, kb, +1, "reductive"), (kb, mb, -1, "reductive"),
            (mb, mb, +1, "symmetric")):
        rows_a = range(basis_a.shape[0])
        for ia in rows_a:
            same = basis_a is basis_b
            for ib in range(ia + 1 if same else 0, basis_b.shape[0]):
                w = _bracket_int(L, basis_a[ia], basis_b[ib])
                if not w.any():
                    continue
                if not _theta_eigen_ok(split, w, sign):
                    raise AssertionError(
                        f"bracket inclusion violated for segment pair ({attr})")


def restricted_signature(L: LieAlgebra, subbasis, ambient_form: RatMatrix,
                         allow_degenerate=False):
    """Signature of the ambient form on a subspace: (nc, c) with nc the
    positive (non-compact) and c the negative (compact) directions."""
    vecs = [list(int(x) for x in row) for row in np.asarray(subbasis)]
    G = gram_matrix(ambient_form, vecs)
    npos, nneg, nzero = symmetric_signature(G)
    if nzero and not allow_degenerate:
        raise DegenerateKillingFormError(nzero)
    if allow_degenerate:
        return npos, nneg, nzero
    return npos, nneg


# ---------------------------------------------------------------------------
# real-form labels

@dataclass(frozen=True)
class RealFormLabel:
    name: str
    dim: int
    chi: int
    nc: int
    c: int
    aliases: tuple = ()
    identified: bool = True

    def matches(self, name: str) -> bool:
        return name == self.name or name in self.aliases

    def __post_init__(self):
        if self.nc + self.c != self.dim or self.nc - self.c != self.chi:
            raise ValueError(f"inconsistent label {self.name}")


def _load_labels():
    path = Path(__file__).parent / "data" / "real_form_labels.json"
    doc = json.loads(path.read_text())
    table = {}
    by_name = {}
    for rec in doc["labels"]:
        lab = RealFormLabel(rec["name"], rec["dim"], rec["chi"], rec["nc"],
                            rec["c"], tuple(rec["aliases"]))
        key = (lab.dim, lab.chi)
        if key in table:
            raise AssertionError(
                f"label table collision: {lab.name} vs {table[key].name} at {key}")
        table[key] = lab
        by_name[lab.name] = lab
        for a in lab.aliases:
            if a in by_name:
                raise AssertionError(f"alias collision: {a}")
            by_name[a] = lab
    return table, by_name, doc["schema_version"]


_LABEL_TABLE, _LABELS_BY_NAME, LABEL_SCHEMA_VERSION = _load_labels()


def identify_real_form(dim: int, char: int) -> RealFormLabel:
    """Unique label for (dim, chi), or an explicit unidentified record."""
    lab = _LABEL_TABLE.get((dim, char))
    if lab is not None:
        return lab
    nc = (dim + char) // 2
    return RealFormLabel(f"unidentified({dim},{char})", dim, char, nc,
                         dim - nc, (), identified=False)


def label_by_name(name: str) -> RealFormLabel:
    lab = _LABELS_BY_NAME.get(name)
    if lab is None:
        raise KeyError(f"unknown real-form label {name!r}")
    return lab
