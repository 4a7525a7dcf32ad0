"""Exact linear algebra helpers: integer matrices, Hermite normal form, sparse
kernel solves over an arbitrary exact field, and Krylov-style annihilators.

Matrices are tuples of tuples (immutable); sparse rows are dicts column->value.
No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import InternalConsistencyError
from .exactmath import Polynomial


def identity(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(tuple(row[i] for row in m) for i in range(len(m[0])))


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_pow(a, n: int):
    if n < 0:
        raise ValueError("negative matrix power")
    result = identity(len(a))
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        n >>= 1
    return result


# ---------------------------------------------------------------------------
# Hermite normal form (row style)
# ---------------------------------------------------------------------------


def hnf_rows_with_transform(rows: Sequence[Sequence[int]]):
    """Row-style Hermite normal form with a unimodular transform.

    Returns (R, U, rank) where U is unimodular, U * rows == R padded with zero
    rows, R is the canonical echelon form of the row lattice: pivot columns
    increase, pivots positive, entries above each pivot reduced into [0, pivot).
    Rows of U beyond `rank` form a basis of the left kernel of the input.
    """
    work = [list(map(int, r)) for r in rows]
    m = len(work)
    n = len(work[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        U[r], U[piv] = U[piv], U[r]
        for i in range(r + 1, m):
            # Euclid on the two column entries, applied to whole rows
            while work[i][col]:
                q = work[r][col] // work[i][col]
                if q:
                    work[r] = [a - q * b for a, b in zip(work[r], work[i])]
                    U[r] = [a - q * b for a, b in zip(U[r], U[i])]
                work[r], work[i] = work[i], work[r]
                U[r], U[i] = U[i], U[r]
        if work[r][col] < 0:
            work[r] = [-a for a in work[r]]
            U[r] = [-a for a in U[r]]
        p = work[r][col]
        for i in range(r):
            q = work[i][col] // p
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    for i in range(r, m):
        if any(work[i]):
            raise InternalConsistencyError("nonzero row below HNF rank")
    R = tuple(tuple(row) for row in work[:r])
    return R, tuple(tuple(row) for row in U), r


def hnf_rows(rows: Sequence[Sequence[int]]):
    R, _, _ = hnf_rows_with_transform(rows)
    return R


# ---------------------------------------------------------------------------
# Sparse kernel solve over an exact field
# ---------------------------------------------------------------------------


def kernel_basis(rows, ncols: int, zero, one):
    """Kernel basis of the linear system rows * x = 0 over an exact field.

    `rows` is a list of sparse rows (dict col -> value); values need +, -, *, /
    and == against `zero`.  Deterministic: pivot columns are the smallest in
    each reduced row, rows processed sparsest-first.  Returns a list of dense
    kernel vectors, one per free column, in increasing free-column order.
    """
    pivots = {}
    order = []
    queue = sorted((dict(r) for r in rows), key=lambda d: (len(d), tuple(sorted(d))))
    for row in queue:
        row = {c: v for c, v in row.items() if not v == zero}
        while True:
            hit = [c for c in row if c in pivots]
            if not hit:
                break
            c = min(hit)
            f = row.pop(c)
            for j, v in pivots[c].items():
                if j == c:
                    continue
                nv = row.get(j, zero) - f * v
                if nv == zero:
                    row.pop(j, None)
                else:
                    row[j] = nv
        if not row:
            continue
        p = min(row)
        inv = one / row[p]
        newrow = {j: v * inv for j, v in row.items()}
        newrow[p] = one
        pivots[p] = newrow
        order.append(p)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        x = {f: one}
        for c in reversed(order):
            s = zero
            for j, v in pivots[c].items():
                if j == c:
                    continue
                xj = x.get(j)
                if xj is not None:
                    s = s + v * xj
            if not s == zero:
                x[c] = zero - s
        basis.append([x.get(j, zero) for j in range(ncols)])
    return basis


# ---------------------------------------------------------------------------
# Krylov annihilator
# ---------------------------------------------------------------------------


def min_annihilator(mat, vec) -> Polynomial:
    """Monic minimal polynomial g with g(mat) * vec = 0, over Q.

    For integer inputs the result is monic with integer coefficients (it divides
    the matrix's minimal polynomial, which is monic integer); asserted.
    """
    n = len(vec)
    v = tuple(Fraction(x) for x in vec)
    basis = []  # (reduced vector, lead index, combo coefficients over Krylov vectors)
    krylov = v
    d = 0
    while True:
        w = list(krylov)
        combo = [Fraction(0)] * (d + 1)
        combo[d] = Fraction(1)
        for bv, lead, bc in basis:
            if w[lead]:
                f = w[lead] / bv[lead]
                w = [a - f * b for a, b in zip(w, bv)]
                for i, c in enumerate(bc):
                    combo[i] -= f * c
        lead = next((i for i, a in enumerate(w) if a), None)
        if lead is None:
            poly = Polynomial(combo)
            if not poly.is_monic_integer:
                raise InternalConsistencyError(
                    "annihilator of an integer Krylov sequence must be monic integer"
                )
            return poly
        basis.append((tuple(w), lead, tuple(combo)))
        if d >= n:
            raise InternalConsistencyError("Krylov sequence exceeded dimension")
        krylov = mat_vec(mat, krylov)
        d += 1
