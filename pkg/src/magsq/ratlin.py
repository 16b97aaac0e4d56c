"""Exact rational linear algebra: kernels, ranks, inertia signatures.

All verdicts downstream (derivation spaces, Killing characters, tangent
signatures) reduce to the three operations here, so everything is computed
over Q with no rounding.  Internally rows are cleared to integers and kept
primitive (gcd 1) during elimination, which bounds coefficient growth the
same way fraction-free schemes do while staying sparse-friendly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rat

__all__ = ["Rat", "RatMatrix", "kernel_basis", "rank", "symmetric_signature"]


def _as_rat(x) -> Rat:
    return x if isinstance(x, type(Rat(0))) else Rat(x)


@dataclass
class RatMatrix:
    """Sparse exact rational matrix; no explicit zeros are stored."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)  # (r, c) -> Rat, never zero

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> "RatMatrix":
        nr = len(data)
        nc = len(data[0]) if nr else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != nc:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                v = _as_rat(v)
                if v != 0:
                    entries[(i, j)] = v
        return cls(nr, nc, entries)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, {(i, i): Rat(1) for i in range(n)})

    def __getitem__(self, rc) -> Rat:
        return self.entries.get(rc, Rat(0))

    def set(self, r: int, c: int, v) -> None:
        v = _as_rat(v)
        if v == 0:
            self.entries.pop((r, c), None)
        else:
            self.entries[(r, c)] = v

    def to_rows(self) -> list:
        out = [[Rat(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         {(c, r): v for (r, c), v in self.entries.items()})

    def is_symmetric(self) -> bool:
        for (r, c), v in self.entries.items():
            if self.entries.get((c, r)) != v:
                return False
        return True


def _int_rows(M: RatMatrix) -> list:
    """Clear each row to primitive integers (kernel/rank invariant)."""
    rows = [dict() for _ in range(M.rows)]
    for (r, c), v in M.entries.items():
        rows[r][c] = v
    out = []
    for row in rows:
        if not row:
            continue
        den = 1
        for v in row.values():
            d = int(v.denominator)
            den = den * d // math.gcd(den, d)
        ints = {c: int(v.numerator) * (den // int(v.denominator)) for c, v in row.items()}
        g = 0
        for v in ints.values():
            g = math.gcd(g, v)
        if g > 1:
            ints = {c: v // g for c, v in ints.items()}
        out.append(ints)
    return out


def _eliminate(rows: list) -> list:
    """Sparse integer echelon; returns pivot rows as (pivot_col, rowdict).

    Pivot choice favours short rows, row combinations are re-primitivized,
    so entries stay modest even on the ~10^4-equation derivation systems.
    """
    pending = [r for r in rows if r]
    pivots = []  # (col, rowdict), rowdict primitive integer
    pivot_cols = set()
    while pending:
        pending.sort(key=len)
        row = pending.pop(0)
        # reduce against existing pivots lazily (rows arrive pre-reduced below)
        col = min(row)
        p = row[col]
        pivots.append((col, row))
        pivot_cols.add(col)
        nxt = []
        for other in pending:
            m = other.get(col)
            if m is None:
                nxt.append(other)
                continue
            new = {}
            for c, v in other.items():
                new[c] = v * p
            for c, v in row.items():
                w = new.get(c, 0) - m * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            if new:
                g = 0
                for v in new.values():
                    g = math.gcd(g, v)
                if g > 1:
                    new = {c: v // g for c, v in new.items()}
                nxt.append(new)
        pending = nxt
    pivots.sort(key=lambda t: t[0])
    return pivots


def rank(M: RatMatrix) -> int:
    """Exact rank over Q."""
    return len(_eliminate(_int_rows(M)))


def kernel_basis(M: RatMatrix) -> list:
    """Exact basis of the right null space of M, one vector per free column.

    Vectors are tuples of Rat with M v = 0 exactly; they are linearly
    independent by construction (unit coordinate in distinct free columns).
    """
    pivots = _eliminate(_int_rows(M))
    pivot_cols = [c for c, _ in pivots]
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(M.cols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        x = {f: Rat(1)}
        for c, row in reversed(pivots):
            s = Rat(0)
            for cc, v in row.items():
                if cc == c:
                    continue
                xv = x.get(cc)
                if xv is not None:
                    s += v * xv
            if s != 0:
                x[c] = -s / row[c]
        basis.append(tuple(x.get(c, Rat(0)) for c in range(M.cols)))
    return basis


def solve_in_span(pivots: list, vec: dict, ncols: int):
    """Express vec (dict col->int/Rat) over echelon pivot rows.

    Returns dict pivot_index -> Rat coefficient, or None if vec is outside
    the row span.  Used for exact membership tests.
    """
    residual = {c: _as_rat(v) for c, v in vec.items() if v != 0}
    coeffs = {}
    for idx, (col, row) in enumerate(pivots):
        rv = residual.get(col)
        if rv is None or rv == 0:
            continue
        t = rv / row[col]
        coeffs[idx] = t
        for c, v in row.items():
            w = residual.get(c, Rat(0)) - t * v
            if w:
                residual[c] = w
            else:
                residual.pop(c, None)
    if residual:
        return None
    return coeffs


def _sym_int(B: RatMatrix):
    """Scale a symmetric RatMatrix by a positive integer to integer dict-of-dict."""
    den = 1
    for v in B.entries.values():
        d = int(v.denominator)
        den = den * d // math.gcd(den, d)
    rows: dict = {}
    for (r, c), v in B.entries.items():
        rows.setdefault(r, {})[c] = int(v.numerator) * (den // int(v.denominator))
    return rows


def symmetric_signature(B: RatMatrix):
    """Inertia (n_plus, n_minus, n_zero) of an exactly symmetric matrix.

    Congruence diagonalization with simultaneous row/column operations;
    diagonal pivots are consumed directly, and when every remaining diagonal
    entry vanishes a nonzero off-diagonal entry is consumed as a hyperbolic
    2x2 block contributing (1, 1).  Each Schur complement is rescaled by the
    |pivot| (a positive congruence) and re-primitivized, keeping the whole
    computation in integers.
    """
    if not B.is_symmetric():
        raise ValueError("symmetric_signature requires an exactly symmetric matrix")
    n = B.rows
    rows = _sym_int(B)
    active = set(range(n))
    n_plus = n_minus = 0

    def drop(i):
        row = rows.pop(i, {})
        for j in row:
            if j != i and j in rows:
                rows[j].pop(i, None)
        active.discard(i)

    def normalize():
        g = 0
        for i in list(rows):
            r = rows[i]
            if not r:
                del rows[i]
                continue
            for v in r.values():
                g = math.gcd(g, v)
        if g > 1:
            for r in rows.values():
                for c in list(r):
                    r[c] //= g

    while active:
        pivot = None
        best = None
        for i in active:
            d = rows.get(i, {}).get(i, 0)
            if d:
                w = len(rows[i])
                if best is None or w < best:
                    best, pivot = w, i
        if pivot is not None:
            i = pivot
            d = rows[i][i]
            if d > 0:
                n_plus += 1
            else:
                n_minus += 1
            sgn = 1 if d > 0 else -1
            ad = abs(d)
            col = {j: v for j, v in rows[i].items() if j != i and j in active}
            drop(i)
            touched = [j for j in col if col[j]]
            # S' = |d| * C - sgn(d) * b b^T   (positive congruence of the Schur complement)
            for j in active:
                rj = rows.setdefault(j, {})
                bj = col.get(j, 0)
                if bj:
                    for k in touched:
                        if k in active:
                            w = ad * rj.get(k, 0) - sgn * bj * col[k]
                            if w:
                                rj[k] = w
                            else:
                                rj.pop(k, None)
                    rest = [k for k in rj if k not in col]
                    for k in rest:
                        rj[k] *= ad
                else:
                    for k in list(rj):
                        rj[k] *= ad
                if not rj:
                    del rows[j]
            normalize()
            continue
        # all diagonals zero: find hyperbolic pair
        pair = None
        for i in active:
            r = rows.get(i)
            if r:
                for j, v in r.items():
                    if j != i and j in active and v:
                        pair = (i, j, v)
                        break
            if pair:
                break
        if pair is None:
            return (n_plus, n_minus, n - n_plus - n_minus)
        i, j, b = pair
        n_plus += 1
        n_minus += 1
        sgn = 1 if b > 0 else -1
        ab = abs(b)
        col_i = {k: v for k, v in rows.get(i, {}).items() if k in active and k not in (i, j)}
        col_j = {k: v for k, v in rows.get(j, {}).items() if k in active and k not in (i, j)}
        drop(i)
        drop(j)
        touched = set(col_i) | set(col_j)
        # S' = |b| * C - sgn(b) * (u v^T + v u^T) with u = col_i, v = col_j
        for kk in active:
            rk = rows.setdefault(kk, {})
            ui, vi = col_i.get(kk, 0), col_j.get(kk, 0)
            for ll in touched:
                if ll not in active:
                    continue
                w = ab * rk.get(ll, 0) - sgn * (ui * col_j.get(ll, 0) + vi * col_i.get(ll, 0))
                if w:
                    rk[ll] = w
                else:
                    rk.pop(ll, None)
            rest = [ll for ll in rk if ll not in touched]
            for ll in rest:
                rk[ll] *= ab
            if not rk:
                del rows[kk]
        normalize()
    return (n_plus, n_minus, n - n_plus - n_minus)


def gram_matrix(form: RatMatrix, basis: Iterable) -> RatMatrix:
    """B^T F B for basis given as vectors (sequences of Rat)."""
    vecs = [list(v) for v in basis]
    m = len(vecs)
    # sparse product: for each basis vector, form F v
    Fcols: dict = {}
    for (r, c), val in form.entries.items():
        Fcols.setdefault(c, []).append((r, val))
    out = RatMatrix(m, m, {})
    for a, va in enumerate(vecs):
        fv: dict = {}
        for c, x in enumerate(va):
            if x == 0:
                continue
            for r, val in Fcols.get(c, ()):
                fv[r] = fv.get(r, Rat(0)) + val * x
        for b, vb in enumerate(vecs):
            s = Rat(0)
            for r, w in fv.items():
                if vb[r] != 0:
                    s += w * vb[r]
            if s != 0:
                out.entries[(a, b)] = s
    return out
