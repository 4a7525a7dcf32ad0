"""Clopen value sets of ergodic measures.

The values a measure takes on clopen sets form S(mu) = G(mu) intersect [0,1],
where G(mu) is the group generated by all cylinder values: the increasing
union over N of lambda^(-N) * H, with H the lattice spanned by the eigenvector
coordinates x_v.  Everything here is a certificate-producing computation on
that pair (H, lambda):

* membership of a single value runs the denominator orbit: multiply by lambda
  until the H-coordinates become integral (yes, with exponent) or a fractional
  state repeats (no; the state space (1/d)Z^r / Z^r is finite, so this always
  terminates);
* level-n value sets are enumerated outright from path counts, for use as an
  independent oracle against the orbit test;
* group equality canonicalizes rational groups by prime content and reduces
  irrational comparisons to lattice inclusions plus a power match of the two
  Perron roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import EnumerationBudgetError, InternalConsistencyError, ValueExprError
from .exactmath import (
    FieldElement,
    NumberField,
    Polynomial,
    RealAlgebraic,
    compare_real,
    count_real_roots,
    horner_interval,
)
from .diagram import heights
from .linalg import hnf_rows, min_annihilator
from .measure import ErgodicMeasure


# ---------------------------------------------------------------------------
# Lattices of field elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeGroup:
    """A finitely generated subgroup of Q(lambda): (1/den) times an integer
    row lattice in coefficient coordinates, rows in canonical Hermite form."""

    field: NumberField
    den: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    @classmethod
    def from_elements(cls, field: NumberField, elems) -> "LatticeGroup":
        vecs = [e.coeffs for e in elems]
        den = lcm(*(c.denominator for v in vecs for c in v)) if vecs else 1
        rows = [[int(c * den) for c in v] for v in vecs]
        reduced = hnf_rows(rows) if rows else ()
        reduced = tuple(r for r in reduced if any(r))
        g = den
        for r in reduced:
            for a in r:
                g = gcd(g, a)
        if g > 1:
            den //= g
            reduced = tuple(tuple(a // g for a in r) for r in reduced)
        return cls(field, den, reduced)

    def generator(self, i: int) -> FieldElement:
        return self.field.element(Fraction(a, self.den) for a in self.rows[i])

    def generators(self):
        return tuple(self.generator(i) for i in range(self.rank))

    def _pivots(self):
        pivots = []
        for row in self.rows:
            j = next(i for i, a in enumerate(row) if a)
            pivots.append(j)
        return pivots

    def rational_coords(self, x: FieldElement):
        """Coordinates of x w.r.t. the lattice rows over Q, or None if x is
        outside the rational span."""
        w = [c * self.den for c in x.coeffs]
        t = []
        for row, j in zip(self.rows, self._pivots()):
            f = w[j] / row[j]
            t.append(f)
            if f:
                w = [a - f * b for a, b in zip(w, row)]
        if any(w):
            return None
        return tuple(t)

    def contains(self, x: FieldElement) -> bool:
        t = self.rational_coords(x)
        return t is not None and all(f.denominator == 1 for f in t)

    def coords(self, x: FieldElement):
        t = self.rational_coords(x)
        if t is None or any(f.denominator != 1 for f in t):
            return None
        return tuple(int(f) for f in t)

    def mult_matrix(self, gamma: FieldElement):
        """Integer matrix of multiplication by gamma in lattice coordinates.

        Requires gamma * L <= L; raises InternalConsistencyError otherwise.
        """
        cols = []
        for i in range(self.rank):
            t = self.coords(gamma * self.generator(i))
            if t is None:
                raise InternalConsistencyError(
                    "multiplier does not preserve the lattice"
                )
            cols.append(t)
        r = self.rank
        return tuple(tuple(cols[i][j] for i in range(r)) for j in range(r))

    def index_of_sublattice(self, sub: "LatticeGroup") -> int:
        """[self : sub] for a finite-index sublattice (same rank)."""
        if sub.rank != self.rank:
            raise InternalConsistencyError("sublattice has smaller rank")
        mat = []
        for i in range(sub.rank):
            t = self.coords(sub.generator(i))
            if t is None:
                raise InternalConsistencyError("not a sublattice")
            mat.append(t)
        reduced = hnf_rows(mat)
        if len(reduced) != self.rank:
            raise InternalConsistencyError("sublattice does not have full rank")
        idx = 1
        for row in reduced:
            idx *= next(a for a in row if a)
        return idx

    def saturation_contains(self, x: FieldElement, gamma: FieldElement):
        """Decide x in union over N of gamma^(-N) * L, with certificate.

        Returns (True, exponent, visited) or (False, None, visited); the
        exponent is the least N with gamma^N x in L.
        """
        t = self.rational_coords(x)
        if t is None:
            return False, None, 0
        M = self.mult_matrix(gamma)
        u = tuple(f % 1 for f in t)
        seen = set()
        n = 0
        while True:
            if all(f == 0 for f in u):
                return True, n, len(seen)
            if u in seen:
                return False, None, len(seen)
            seen.add(u)
            u = tuple(
                sum(M[i][j] * u[j] for j in range(self.rank)) % 1
                for i in range(self.rank)
            )
            n += 1


def value_lattice(mu: ErgodicMeasure) -> LatticeGroup:
    """H(mu): the lattice spanned by the eigenvector coordinates."""
    H = LatticeGroup.from_elements(mu.field, mu.x)
    H.mult_matrix(mu.lam)  # lambda * H <= H must hold; fail loudly if not
    return H


# ---------------------------------------------------------------------------
# Value expression parser
# ---------------------------------------------------------------------------


def _tokenize(text: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j])))
            i = j
        elif ch in "l+-*/^":
            toks.append((ch, None))
            i += 1
        else:
            raise ValueExprError(f"unexpected character {ch!r} at position {i}")
    return toks


def parse_value(text: str, field: NumberField) -> FieldElement:
    """Parse a value expression into an element of `field`.

    Grammar: sums and differences of terms, where a term is `num`,
    `num/num`, `l`, `l^k`, or `num[/num]*l[^k]` with `l` the Perron root.
    """
    toks = _tokenize(text)
    if not toks:
        raise ValueExprError("empty value expression")
    pos = 0

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    def take(kind):
        nonlocal pos
        if peek() != kind:
            raise ValueExprError(f"expected {kind!r} at token {pos} in {text!r}")
        tok = toks[pos]
        pos += 1
        return tok[1]

    def parse_pow():
        take("l")
        k = 1
        if peek() == "^":
            take("^")
            k = take("num")
        return field.lam() ** k

    def parse_term():
        if peek() == "l":
            return parse_pow()
        neg = False
        if peek() == "-":
            take("-")
            neg = True
        num = take("num")
        den = 1
        if peek() == "/":
            take("/")
            den = take("num")
            if den == 0:
                raise ValueExprError("zero denominator")
        r = field.rational(-num if neg else num) / den
        if peek() == "*":
            take("*")
            return r * parse_pow()
        return r

    acc = parse_term()
    while peek() in ("+", "-"):
        op = peek()
        take(op)
        t = parse_term()
        acc = acc + t if op == "+" else acc - t
    if pos != len(toks):
        raise ValueExprError(f"trailing tokens after position {pos} in {text!r}")
    return acc


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MemberResult:
    member: bool
    reason: str  # integral-orbit | outside-range | outside-span | orbit-cycled
    exponent: int | None = None
    coords: tuple[int, ...] | None = None
    visited: int = 0

    def as_dict(self):
        return {
            "member": self.member,
            "reason": self.reason,
            "exponent": self.exponent,
            "coords": list(self.coords) if self.coords is not None else None,
            "visited": self.visited,
        }


def member_value(mu: ErgodicMeasure, value) -> MemberResult:
    """Decide whether `value` lies in S(mu), with a machine-checkable
    certificate: on yes, the exponent N and the integral H-coordinates of
    lambda^N * value; on no, either a range/span obstruction or the closed
    denominator orbit.  `value` may be a FieldElement, a string in the
    expression grammar of `parse_value`, or anything Fraction accepts."""
    if isinstance(value, FieldElement):
        v = value
    elif isinstance(value, str):
        v = parse_value(value, mu.field)
    else:
        v = mu.field.rational(Fraction(value))
    if v.sign() < 0 or (v - 1).sign() > 0:
        return MemberResult(False, "outside-range")
    H = value_lattice(mu)
    if H.rational_coords(v) is None:
        return MemberResult(False, "outside-span")
    ok, n, visited = H.saturation_contains(v, mu.lam)
    if not ok:
        return MemberResult(False, "orbit-cycled", visited=visited)
    w = v * mu.lam**n
    coords = H.coords(w)
    if coords is None:
        raise InternalConsistencyError("orbit certificate failed to verify")
    return MemberResult(True, "integral-orbit", exponent=n, coords=coords, visited=visited)


# ---------------------------------------------------------------------------
# Finite enumeration (oracle)
# ---------------------------------------------------------------------------


def enumerate_level_values(mu: ErgodicMeasure, level: int, budget: int = 10**6):
    """All measures of unions of level-`level` cylinders, sorted increasing.

    A vertex v carries h_v(level) cylinders of equal measure x_v /
    lambda^(level-1), so the value set is the set of subset sums with
    multiplicities up to the path counts.  The combination count (the product
    of h_v + 1 over the support) must stay within `budget`.
    """
    h = heights(mu.diagram, level)
    counts = [h[v] for v in mu.support]
    product = 1
    for c in counts:
        product *= c + 1
    if product > budget:
        raise EnumerationBudgetError(product, budget)
    scale = mu.lam ** (level - 1)
    atoms = [x / scale for x in mu.x]
    sums = {mu.field.zero()}
    for atom, count in zip(atoms, counts):
        step = mu.field.zero()
        layer = []
        for a in range(count + 1):
            if a:
                step = step + atom
            layer.append(step)
        sums = {s + t for s in sums for t in layer}
    if mu.is_rational:
        return tuple(sorted(sums, key=lambda e: e.as_fraction()))
    return tuple(sorted(sums))


# ---------------------------------------------------------------------------
# Group equality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupCompareResult:
    equal: bool
    case: str
    detail: dict

    def as_dict(self):
        return {"equal": self.equal, "case": self.case, "detail": self.detail}


def _prime_factors(n: int) -> tuple[int, ...]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def rational_group_invariant(mu: ErgodicMeasure):
    """Canonical form of G(mu) <= Q: (primes of lambda, q with those primes
    stripped).  G = (1/q') Z[1/lambda], so the pair determines the group."""
    lam = mu.lam_int()
    q, _ = mu.rational_data()
    primes = _prime_factors(lam)
    qq = q
    for p in primes:
        while qq % p == 0:
            qq //= p
    return primes, qq


def _minpoly_of_element(e: FieldElement) -> Polynomial:
    """Minimal polynomial of e over Q via the Krylov annihilator of 1 under
    multiplication by e (requires integer coefficient vector)."""
    field = e.field
    k = field.degree
    if any(c.denominator != 1 for c in e.coeffs):
        raise InternalConsistencyError("power of an algebraic integer not integral")
    # multiplication-by-e matrix: column j = coeffs of e * lambda^j
    cols = []
    cur = e
    lam = field.lam()
    for j in range(k):
        cols.append(tuple(int(c) for c in cur.coeffs))
        if j + 1 < k:
            cur = cur * lam
    mat = tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))
    vec = tuple(1 if i == 0 else 0 for i in range(k))
    return min_annihilator(mat, vec)


def _as_algebraic(e: FieldElement) -> RealAlgebraic:
    """The element as an exact real algebraic number (own minimal polynomial)."""
    g = _minpoly_of_element(e)
    if g.degree == 1:
        return RealAlgebraic.from_rational(-g[0])
    root = e.field.root
    while True:
        lo, hi = horner_interval(e.coeffs, root.lo, root.hi)
        if g.eval(lo) != 0 and g.eval(hi) != 0 and count_real_roots(g, lo, hi) == 1:
            return RealAlgebraic(g, lo, hi)
        root.refine()


def _power_match(small: ErgodicMeasure, big: ErgodicMeasure):
    """Find M >= 1 with small.lam ** M == big.lam exactly, else None."""
    target = big.field.root
    target_poly = big.field.minpoly
    M = 0
    power = small.field.one()
    while True:
        M += 1
        power = power * small.field.lam()
        value = _as_algebraic(power)
        if value.minimal_polynomial() == target_poly and compare_real(value, target) == 0:
            return M, power
        if compare_real(value, target) > 0:
            return None


def _embed(x: FieldElement, power: FieldElement) -> FieldElement:
    """Map coefficients over the big root to the small field via root -> power."""
    field = power.field
    out = field.zero()
    basis = field.one()
    for c in x.coeffs:
        out = out + basis * c
        basis = basis * power
    return out


def _lattice_in_saturation(H: LatticeGroup, G: LatticeGroup, gamma: FieldElement, scale=None):
    """Check every generator of H (optionally scaled) lies in the gamma
    saturation of G; returns (ok, exponents or failing index)."""
    exponents = []
    for i in range(H.rank):
        g = H.generator(i)
        if scale is not None:
            g = g * scale
        ok, n, _ = G.saturation_contains(g, gamma)
        if not ok:
            return False, i
        exponents.append(n)
    return True, exponents


def group_equal(mu1: ErgodicMeasure, mu2: ErgodicMeasure) -> GroupCompareResult:
    """Decide G(mu1) == G(mu2), i.e. whether the two measures take the same
    full sets of clopen values."""
    if mu1.is_rational and mu2.is_rational:
        inv1 = rational_group_invariant(mu1)
        inv2 = rational_group_invariant(mu2)
        return GroupCompareResult(
            inv1 == inv2,
            "rational",
            {
                "invariant_1": {"primes": list(inv1[0]), "q": inv1[1]},
                "invariant_2": {"primes": list(inv2[0]), "q": inv2[1]},
            },
        )
    if mu1.is_rational != mu2.is_rational:
        return GroupCompareResult(
            False,
            "mixed",
            {"reason": "one group lies in Q, the other does not"},
        )

    H1 = value_lattice(mu1)
    H2 = value_lattice(mu2)
    same_root = (
        mu1.field.minpoly == mu2.field.minpoly
        and compare_real(mu1.field.root, mu2.field.root) == 0
    )
    if same_root:
        # identical saturating multiplier: mutual lattice inclusion suffices
        H2 = LatticeGroup(mu1.field, H2.den, H2.rows)
        ok12, e12 = _lattice_in_saturation(H1, H2, mu1.lam)
        ok21, e21 = _lattice_in_saturation(H2, H1, mu1.lam)
        equal = ok12 and ok21
        return GroupCompareResult(
            equal,
            "same-root",
            {"H1_in_G2": ok12, "H2_in_G1": ok21, "exponents": [e12, e21] if equal else None},
        )

    # order the two roots; a match requires the larger to be a power of the smaller
    if compare_real(mu1.field.root, mu2.field.root) < 0:
        small, big, flipped = mu1, mu2, False
    else:
        small, big, flipped = mu2, mu1, True
    match = _power_match(small, big)
    if match is None:
        return GroupCompareResult(
            False,
            "power-scan",
            {"reason": "neither Perron root is a power of the other"},
        )
    M, power = match
    Hs = value_lattice(small)
    Hb_raw = value_lattice(big)
    gens = [_embed(Hb_raw.generator(i), power) for i in range(Hb_raw.rank)]
    Hb = LatticeGroup.from_elements(small.field, gens)
    lam = small.field.lam()
    # G_small is invariant under both roots automatically; G_big needs the
    # small root as a multiplier, which reduces to two more lattice checks.
    ok1, d1 = _lattice_in_saturation(Hs, Hb, power)
    ok2, d2 = _lattice_in_saturation(Hb, Hs, lam)
    ok3, d3 = _lattice_in_saturation(Hb, Hb, power, scale=lam)
    ok4, d4 = _lattice_in_saturation(Hb, Hb, power, scale=lam.inverse())
    equal = ok1 and ok2 and ok3 and ok4
    return GroupCompareResult(
        equal,
        "power-match",
        {
            "power": M,
            "flipped": flipped,
            "checks": {
                "H_small_in_G_big": ok1,
                "H_big_in_G_small": ok2,
                "lambda_H_big_in_G_big": ok3,
                "inv_lambda_H_big_in_G_big": ok4,
            },
        },
    )
