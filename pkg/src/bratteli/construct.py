"""Constructions of new stationary diagrams carrying prescribed measures.

Three builders, each returning the new diagram together with its rebuilt,
independently verified measure:

* `build_rational_family(q, lam, extra)` - the cyclic family: a
  q*lam^(extra+1)-vertex odometer-style block (uniform eigenvector, Perron
  root lam^(extra+1)) fed by `extra` loop vertices, so the measure's value
  group matches the rational group with parameters (q, lam) while the diagram
  has max(extra, 1) minimal components.

* `extend_with_minimal_component(mu)` - for a good measure with irrational
  Perron root: adds one new minimal vertex below the class, searching over
  powers M = R + N, loop sizes c, and nonnegative integer edge vectors u with
  sum_j u_j x_j = (lam^R - 1)(lam^M - c).  The extended diagram carries the
  rescaled eigenvector ((lam^R - 1)/lam^R at the new vertex, x/lam^R
  elsewhere) with eigenvalue psi = lam^M and the same value group.

* `collapse_to_simple(mu)` - the reverse direction: rewrites each outside
  support coordinate through an integer relation q_i x_i = sum_j p_ij x_j and
  folds it into the class rows of A^M, yielding a simple (single class)
  diagram carrying the *same* eigenvector with eigenvalue lam^M.

Every candidate is verified from scratch before being returned: the exact
eigen identity in the original field, the Perron root of the rebuilt class
compared as real algebraic numbers, value-group equality, goodness, and the
minimal-component count.  Failed candidates are skipped; exhausted budgets
raise SearchFailedError.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from math import lcm

from .diagram import ClassDecomposition, Diagram, decompose, make_diagram
from .errors import (
    DiagramValidationError,
    InternalConsistencyError,
    SearchFailedError,
    SizeLimitError,
    UnsupportedOperationError,
)
from .exactmath import FieldElement, compare_real
from .goodness import is_good
from .linalg import hnf_rows_with_transform, mat_pow, transpose
from .measure import ErgodicMeasure, build_measure
from .values import _as_algebraic, group_equal

FAMILY_SIZE_LIMIT = 512
DEFAULT_MAX_R = 16
DEFAULT_MAX_N = 32
DEFAULT_COEFF_BOUND = 10**6
_TRANSLATE_RADIUS = 16
_C_SCAN_LIMIT = 256  # loop sizes tried per (M, R) pair; solvable c are periodic


@dataclass(frozen=True)
class ConstructionResult:
    diagram: Diagram
    measure: ErgodicMeasure
    psi_power: int  # the carried eigenvalue is (base lambda) ** psi_power
    detail: dict

    def as_dict(self):
        return {
            "incidence": [list(r) for r in self.diagram.incidence],
            "psi_power": self.psi_power,
            "detail": self.detail,
        }


def count_minimal_components(d: Diagram | ClassDecomposition) -> int:
    dec = d if isinstance(d, ClassDecomposition) else decompose(d)
    return len(dec.minimal())


def proper_minimal_count(d: Diagram | ClassDecomposition) -> int:
    """Minimal components of a non-simple diagram; a simple diagram has none
    (its single class is the whole structure, not a component below it)."""
    dec = d if isinstance(d, ClassDecomposition) else decompose(d)
    if len(dec.classes) == 1:
        return 0
    return len(dec.minimal())


# ---------------------------------------------------------------------------
# Rational family
# ---------------------------------------------------------------------------


def build_rational_family(q: int, lam: int, extra: int = 0) -> ConstructionResult:
    if q < 1 or lam < 2 or extra < 0:
        raise ValueError("family parameters require q >= 1, lambda >= 2, extra >= 0")
    lam_i = lam ** (extra + 1)
    size = q if extra == 0 else q * lam_i
    if size > FAMILY_SIZE_LIMIT:
        raise SizeLimitError(
            f"family diagram would have {size} vertices (limit {FAMILY_SIZE_LIMIT})"
        )
    A = [[0] * size for _ in range(size)]
    start = 0 if extra == 0 else extra
    for r in range(extra):  # the feeder loops, one per extra minimal component
        A[r][r] = 2
        A[r][size - 1] = lam_i - 2
    for r in range(start, size):  # the cyclic block: diagonal + one forward edge
        A[r][r] = lam_i - 1
        A[r][r + 1 if r + 1 < size else start] += 1
    d = make_diagram(transpose(A), name=f"family-q{q}-l{lam}-x{extra}")
    dec = decompose(d)
    if count_minimal_components(dec) != max(extra, 1):
        raise InternalConsistencyError("family has the wrong number of minimal components")
    mu = build_measure(dec, dec.vertex_class[start])
    qq, p = mu.rational_data()
    if qq != size or any(v != 1 for v in p) or mu.lam_int() != lam_i:
        raise InternalConsistencyError("family measure is not the uniform eigenvector")
    if not is_good(mu).good:
        raise InternalConsistencyError("family measure must be good")
    return ConstructionResult(
        diagram=d,
        measure=mu,
        psi_power=extra + 1,
        detail={"q": q, "lambda": lam, "extra": extra, "size": size},
    )


# ---------------------------------------------------------------------------
# Shared integer-solving helpers
# ---------------------------------------------------------------------------


def _alpha_relation_tools(mu: ErgodicMeasure):
    """HNF machinery for the lattice spanned by the class coordinates:
    (den, echelon rows, transform, rank, integer kernel rows) for the matrix
    whose rows are the coefficient vectors of x_j, j in the class."""
    vecs = [mu.x_at(v).coeffs for v in mu.vertex_class.vertices]
    den = lcm(*(c.denominator for v in vecs for c in v))
    Xi = [[int(c * den) for c in v] for v in vecs]
    R, U, rank = hnf_rows_with_transform(Xi)
    return den, R, U, rank, U[rank:]


def _solve_integer(den, R, U, rank, target: FieldElement):
    """One integer vector u with sum_j u_j x_j = target, or None."""
    w = [c * den for c in target.coeffs]
    if any(f.denominator != 1 for f in w):
        return None
    w = [int(f) for f in w]
    t = []
    for row in R:
        j = next(i for i, a in enumerate(row) if a)
        if w[j] % row[j]:
            return None
        f = w[j] // row[j]
        t.append(f)
        if f:
            w = [a - f * b for a, b in zip(w, row)]
    if any(w):
        return None
    u = [0] * len(U)
    for i, f in enumerate(t):
        if f:
            u = [a + f * b for a, b in zip(u, U[i])]
    return u


def _shell_scan(u0, kernel, ok):
    """First vector u0 + integer combination of the kernel rows satisfying
    `ok`, scanning combinations in increasing max-norm shells."""
    if not kernel:
        return list(u0) if ok(u0) else None
    dim = len(kernel)
    for radius in range(_TRANSLATE_RADIUS + 1):
        for combo in iter_product(range(-radius, radius + 1), repeat=dim):
            if radius and max(abs(k) for k in combo) != radius:
                continue
            u = list(u0)
            for k, row in zip(combo, kernel):
                if k:
                    u = [a + k * b for a, b in zip(u, row)]
            if ok(u):
                return u
    return None


def _nonneg_translate(u0, kernel, coeff_bound):
    return _shell_scan(u0, kernel, lambda u: all(0 <= a <= coeff_bound for a in u))


def _support_adjacency(mu: ErgodicMeasure):
    A = mu.diagram.adjacency
    supp = mu.support
    return tuple(tuple(A[u][v] for v in supp) for u in supp)


def _eigen_identity(Q, z, psi) -> bool:
    """Exact check Q z == psi z, entries of z in the original field."""
    for i, row in enumerate(Q):
        acc = psi.field.zero()
        for a, zj in zip(row, z):
            if a:
                acc = acc + zj * a
        if acc != psi * z[i]:
            return False
    return True


# ---------------------------------------------------------------------------
# Extension: one more minimal component, same value group
# ---------------------------------------------------------------------------


def extend_with_minimal_component(
    mu: ErgodicMeasure,
    max_r: int = DEFAULT_MAX_R,
    max_n: int = DEFAULT_MAX_N,
    coeff_bound: int = DEFAULT_COEFF_BOUND,
) -> ConstructionResult:
    if mu.is_rational:
        raise UnsupportedOperationError(
            "the extension construction requires an irrational Perron root"
        )
    g = is_good(mu)
    if not g.good:
        raise UnsupportedOperationError("the extension construction requires a good measure")
    lam = mu.lam
    alpha = list(mu.vertex_class.vertices)
    non_alpha = [v for v in mu.support if v not in set(alpha)]
    n = len(mu.support)
    m = len(non_alpha)
    pos = {v: i for i, v in enumerate(mu.support)}
    # new vertex order: outside vertices, the fresh vertex, then the class
    order = [pos[v] for v in non_alpha] + [None] + [pos[v] for v in alpha]

    den, R_h, U, rank, kernel = _alpha_relation_tools(mu)
    A_supp = _support_adjacency(mu)
    base_proper = _proper_below(mu)

    r_min = max(g.R, 1)
    tried = 0
    last = None
    for M in range(r_min, max_r + max_n + 1):
        A_M = mat_pow(A_supp, M)
        psi = lam**M
        for R in range(max(r_min, M - max_n), min(M, max_r) + 1):
            scale = lam**R
            c = 2
            while c <= _C_SCAN_LIMIT and (psi - c).sign() > 0:
                last = {"M": M, "R": R, "c": c}
                tried += 1
                target = (scale - 1) * (psi - c)
                u0 = _solve_integer(den, R_h, U, rank, target)
                if u0 is not None:
                    u = _nonneg_translate(u0, kernel, coeff_bound)
                    if u is not None:
                        result = _try_extension(mu, A_M, M, R, c, u, order, m, n, base_proper)
                        if result is not None:
                            return result
                c += 1
    raise SearchFailedError(
        f"no extension found within max_r={max_r}, max_n={max_n}, "
        f"coeff_bound={coeff_bound} ({tried} candidates tried)",
        last_tried=last,
    )


def _proper_below(mu: ErgodicMeasure) -> int:
    """Minimal components of the support subdiagram proper: 0 when the class
    is the whole support, else the number of minimal classes it accesses."""
    dec = mu.decomposition
    below = dec.below[mu.class_index]
    if len(below) == 1:
        return 0
    return sum(1 for c in below if dec.classes[c].is_minimal)


def _try_extension(mu, A_M, M, R, c, u, order, m, n, base_proper):
    lam = mu.lam
    scale = lam**R
    Q = [[0] * (n + 1) for _ in range(n + 1)]
    for new_u, old_u in enumerate(order):
        if old_u is None:
            continue
        for new_v, old_v in enumerate(order):
            if old_v is not None:
                Q[new_u][new_v] = A_M[old_u][old_v]
    Q[m][m] = c
    for j, val in enumerate(u):
        Q[m][m + 1 + j] = val

    # the rescaled eigenvector in the new vertex order
    inv = scale.inverse()
    z = [mu.x_at(mu.support[i]) * inv for i in order[:m]]
    z.append((scale - 1) * inv)
    z.extend(mu.x_at(mu.support[i]) * inv for i in order[m + 1 :])
    psi = lam**M
    if not _eigen_identity(Q, z, psi):
        return None

    try:
        d = make_diagram(transpose(Q), name="extended")
    except DiagramValidationError:
        return None
    dec = decompose(d)
    # the class must survive the matrix power in one piece, keep its full
    # support, stay distinguished, and carry the Perron root lam^M
    cls_ids = {dec.vertex_class[m + 1 + j] for j in range(n - m)}
    if len(cls_ids) != 1:
        return None
    idx = cls_ids.pop()
    cls = dec.classes[idx]
    if not cls.is_distinguished or len(dec.support(idx)) != n + 1:
        return None
    if compare_real(cls.perron, _as_algebraic(psi)) != 0:
        return None
    # z is positive, sums to 1, and solves the eigen system for the class
    # Perron root, so it *is* the class measure (the eigenspace is a line)
    nu = build_measure(dec, idx)
    if not group_equal(nu, mu).equal:
        return None
    if not is_good(nu).good:
        return None
    if proper_minimal_count(dec) != base_proper + 1:
        return None
    return ConstructionResult(
        diagram=d,
        measure=nu,
        psi_power=M,
        detail={"M": M, "R": R, "N": M - R, "c": c, "u": list(u)},
    )


# ---------------------------------------------------------------------------
# Collapse: the same eigenvector on a simple diagram
# ---------------------------------------------------------------------------


def collapse_to_simple(mu: ErgodicMeasure, max_power: int = DEFAULT_MAX_R) -> ConstructionResult:
    if len(mu.decomposition.classes) == 1:
        return ConstructionResult(
            diagram=mu.diagram,
            measure=mu,
            psi_power=1,
            detail={"already_simple": True},
        )
    alpha = list(mu.vertex_class.vertices)
    non_alpha = [v for v in mu.support if v not in set(alpha)]
    pos = {v: i for i, v in enumerate(mu.support)}
    den, R_h, U, rank, kernel = _alpha_relation_tools(mu)

    # integer relations q_i x_i = sum_j p_ij x_j for each outside coordinate
    relations = []
    for v in non_alpha:
        x = mu.x_at(v)
        qi = lcm(*(f.denominator for f in _lattice_coords(den, R_h, x)))
        p = _solve_integer(den, R_h, U, rank, x * qi)
        if p is None:
            raise InternalConsistencyError("outside coordinate has no integer relation")
        relations.append((v, qi, p))

    A_supp = _support_adjacency(mu)
    n_alpha = len(alpha)
    tried = 0
    used = None
    for M in range(1, max_power + 1):
        A_M = mat_pow(A_supp, M)
        mod = [list(row) for row in A_M]
        used = []
        for t, (v, qi, p) in enumerate(relations):
            r = pos[alpha[t % n_alpha]]
            mod[r][pos[v]] += qi
            # the relation holds modulo the kernel, so shift p until the row
            # entries stay nonnegative (possible once A^M is large enough)
            budget = [mod[r][pos[a]] for a in alpha]
            fit = _shell_scan(p, kernel, lambda w: all(a <= b for a, b in zip(w, budget)))
            if fit is None:
                break
            for j, pj in enumerate(fit):
                mod[r][pos[alpha[j]]] -= pj
            used.append((v, qi, fit))
        if len(used) != len(relations):
            continue
        tried += 1
        psi = mu.lam**M
        z = [mu.x_at(v) for v in mu.support]
        if not _eigen_identity(mod, z, psi):
            raise InternalConsistencyError("collapse rewrite broke the eigen identity")
        try:
            d = make_diagram(transpose(mod), name="collapsed")
        except DiagramValidationError:
            continue
        dec = decompose(d)
        if len(dec.classes) != 1:
            continue
        if compare_real(dec.classes[0].perron, _as_algebraic(psi)) != 0:
            continue
        nu = build_measure(dec, 0)
        if not group_equal(nu, mu).equal:
            continue
        return ConstructionResult(
            diagram=d,
            measure=nu,
            psi_power=M,
            detail={
                "M": M,
                "relations": [
                    {"vertex": v + 1, "q": qi, "p": list(p)} for v, qi, p in used
                ],
            },
        )
    raise SearchFailedError(
        f"no single-class rewrite found within max_power={max_power} "
        f"({tried} nonnegative candidates)"
    )


def _lattice_coords(den, R_h, x: FieldElement):
    """Rational coordinates of x against the den-scaled echelon rows."""
    w = [c * den for c in x.coeffs]
    t = []
    for row in R_h:
        j = next(i for i, a in enumerate(row) if a)
        f = w[j] / row[j]
        t.append(f)
        if f:
            w = [a - f * b for a, b in zip(w, row)]
    if any(w):
        raise InternalConsistencyError("coordinate outside the class span")
    return t
