"""Exact arithmetic: polynomials, real algebraic numbers, and number fields Q(lambda).

Everything in this module is exact.  Polynomials carry Fraction coefficients,
real algebraic numbers are (squarefree integer polynomial, isolating interval)
pairs refined by rational bisection, and field elements are coefficient vectors
in the basis 1, lambda, ..., lambda^(k-1).  Floating point appears only in the
display helpers and never feeds a decision.

Factorization is squarefree reduction + rational-root extraction + Kronecker
interpolation, guarded by a degree bound (default 12): inputs here are small
class blocks of diagrams, not research-grade polynomials, and the zero-dependency
exactness is worth more than asymptotics.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InternalConsistencyError, UnsupportedDegreeError

MAX_FACTOR_DEGREE = 12

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class Polynomial:
    """Immutable univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- basic structure -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return _ZERO
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _ZERO

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        )

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(
            [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
        )

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial([])
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Polynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [_ZERO] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lc = other.leading
        while len(rem) - 1 >= d and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lc
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            rem.pop()  # leading term cancelled exactly
        return Polynomial(q), Polynomial(rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus / evaluation -------------------------------------------

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x) -> Fraction:
        x = _frac(x)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- normal forms ------------------------------------------------------

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return self * (1 / self.leading)

    def primitive(self) -> "Polynomial":
        """Integer primitive part with positive leading coefficient."""
        if self.is_zero:
            return self
        den = math.lcm(*[c.denominator for c in self.coeffs])
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return Polynomial([Fraction(c, g) for c in ints])

    @property
    def is_integer(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    @property
    def is_monic_integer(self) -> bool:
        return self.is_integer and self.leading == 1

    def int_coeffs(self) -> tuple:
        if not self.is_integer:
            raise ValueError("polynomial is not integral")
        return tuple(int(c) for c in self.coeffs)

    # -- display -----------------------------------------------------------

    def to_string(self, var: str = "t") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for p in range(self.degree, -1, -1):
            c = self[p]
            if c == 0:
                continue
            if p == 0:
                term = _format_coeff(abs(c))
            else:
                v = var if p == 1 else f"{var}^{p}"
                term = v if abs(c) == 1 else f"{_format_coeff(abs(c))}*{v}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({self.to_string()})"


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over Q (zero polynomial if both inputs are zero)."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Polynomial, b: Polynomial):
    """Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = a, b
    u0, u1 = Polynomial([1]), Polynomial([])
    v0, v1 = Polynomial([]), Polynomial([1])
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0.is_zero:
        return r0, u0, v0
    scale = 1 / r0.leading
    return r0 * scale, u0 * scale, v0 * scale


def squarefree_part(p: Polynomial) -> Polynomial:
    """p divided by gcd(p, p'), as a primitive integer polynomial."""
    if p.degree < 1:
        raise ValueError("constant polynomial has no squarefree part")
    g = poly_gcd(p, p.derivative())
    return (p // g).primitive()


# ---------------------------------------------------------------------------
# Factorization over Q
# ---------------------------------------------------------------------------


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(h: Polynomial) -> list:
    """All rational roots of a primitive integer polynomial (each once)."""
    roots = []
    coeffs = h.int_coeffs()
    # factor out t^k first
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        roots.append(_ZERO)
    a0, an = coeffs[k], coeffs[-1]
    for num in _divisors(a0):
        for den in _divisors(an):
            if math.gcd(num, den) != 1:
                continue
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if h.eval(cand) == 0 and cand not in roots:
                    roots.append(cand)
    return roots


def _lagrange_interpolate(points: Sequence, values: Sequence) -> Polynomial:
    acc = Polynomial([])
    for i, (xi, yi) in enumerate(zip(points, values)):
        if yi == 0:
            continue
        basis = Polynomial([yi])
        for j, xj in enumerate(points):
            if j == i:
                continue
            basis = basis * Polynomial([Fraction(-xj, xi - xj), Fraction(1, xi - xj)])
        acc = acc + basis
    return acc


# -- factor-degree patterns mod p ------------------------------------------
#
# Kronecker splitting is exponential in the divisor counts, so before running
# it we intersect the factor-degree patterns of h modulo a few small primes:
# a rational factor of degree d survives reduction mod p (for p not dividing
# the leading coefficient) as a degree-d factor, so d must be a subset sum of
# the mod-p irreducible degrees for every usable prime.  A random irreducible
# polynomial is certified after one or two patterns; the divisor search then
# only ever runs on genuinely reducible inputs, over the surviving degrees.

_PATTERN_PRIMES = (2, 3, 5, 7, 11, 13)


def _gfp_trim(f: list, p: int) -> list:
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def _gfp_monic(f: list, p: int) -> list:
    inv = pow(f[-1], -1, p)
    return [(c * inv) % p for c in f]


def _gfp_mul(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _gfp_rem(a: list, f: list, p: int) -> list:
    """a mod f over GF(p); f monic."""
    a = [c % p for c in a]
    d = len(f) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(d):
                a[i - d + j] = (a[i - d + j] - c * f[j]) % p
    del a[d:]
    while a and a[-1] == 0:
        a.pop()
    return a


def _gfp_quo(a: list, f: list, p: int) -> list:
    """a // f over GF(p) for monic f dividing a."""
    a = [c % p for c in a]
    d = len(f) - 1
    q = [0] * max(1, len(a) - d)
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            q[i - d] = c
            a[i] = 0
            for j in range(d):
                a[i - d + j] = (a[i - d + j] - c * f[j]) % p
    return _gfp_trim(q, p)


def _gfp_gcd(a: list, b: list, p: int) -> list:
    a, b = _gfp_trim(a, p), _gfp_trim(b, p)
    while b:
        a, b = b, _gfp_rem(a, _gfp_monic(b, p), p)
    return a


def _gfp_powmod(base: list, e: int, f: list, p: int) -> list:
    out = [1]
    base = _gfp_rem(base, f, p)
    while e:
        if e & 1:
            out = _gfp_rem(_gfp_mul(out, base, p), f, p)
        base = _gfp_rem(_gfp_mul(base, base, p), f, p)
        e >>= 1
    return out


def _modp_degree_pattern(h: Polynomial, p: int):
    """Irreducible factor degrees of h mod p (distinct-degree factorization),
    or None when the prime is unusable (degree drops or h mod p not squarefree)."""
    f = _gfp_trim(h.int_coeffs(), p)
    if len(f) != h.degree + 1:
        return None
    f = _gfp_monic(f, p)
    deriv = _gfp_trim([i * c for i, c in enumerate(f)][1:], p)
    if len(_gfp_gcd(f, deriv, p)) != 1:
        return None
    pattern = []
    fstar = f
    u = [0, 1]
    k = 1
    while len(fstar) - 1 >= 2 * k:
        u = _gfp_powmod(u, p, fstar, p)  # x^(p^k) mod fstar
        diff = u + [0, 0]
        diff[1] = (diff[1] - 1) % p
        g = _gfp_gcd(diff, fstar, p)
        if len(g) > 1:
            pattern.extend([k] * ((len(g) - 1) // k))
            fstar = _gfp_quo(fstar, _gfp_monic(g, p), p)
            u = _gfp_rem(u, fstar, p)
        k += 1
    if len(fstar) > 1:
        pattern.append(len(fstar) - 1)
    return pattern


def _possible_factor_degrees(h: Polynomial) -> set:
    """Degrees a rational factor of h can have: the intersection of mod-p
    subset sums over _PATTERN_PRIMES (all of 0..n when no prime is usable)."""
    n = h.degree
    possible = set(range(n + 1))
    trivial = {0, n}
    for p in _PATTERN_PRIMES:
        if possible == trivial:
            break
        pat = _modp_degree_pattern(h, p)
        if pat is None:
            continue
        sums = {0}
        for d in pat:
            sums |= {s + d for s in sums}
        possible &= sums
    return possible


def _kronecker_split(h: Polynomial, allowed: set | None = None):
    """One nontrivial integer factor of h, or None if h is irreducible.

    h must be squarefree, primitive integer, without rational roots, degree >= 2.
    `allowed` optionally restricts the factor degrees worth trying.
    """
    n = h.degree
    if n <= 3:
        return None  # degree 2/3 with no rational root is irreducible over Q
    for d in range(2, n // 2 + 1):
        if allowed is not None and d not in allowed:
            continue
        pts = list(range(d + 1))
        vals = [int(h.eval(p)) for p in pts]
        # h has no rational roots, so no evaluation vanishes
        choice_sets = [[v for v in _divisors(vals[0])]]  # sign fixed: g and -g both divide
        for v in vals[1:]:
            ds = _divisors(v)
            choice_sets.append([x for d0 in ds for x in (d0, -d0)])
        stack = [(0, [])]
        while stack:
            idx, chosen = stack.pop()
            if idx == len(pts):
                g = _lagrange_interpolate(pts, chosen)
                if g.degree != d:
                    continue
                g = g.primitive()
                if not g.is_integer or g.degree != d:
                    continue
                q, r = divmod(h, g)
                if r.is_zero:
                    return g
                continue
            for c in choice_sets[idx]:
                stack.append((idx + 1, chosen + [c]))
    return None


def _factor_squarefree(h: Polynomial) -> list:
    """Irreducible primitive integer factors of a squarefree primitive integer h."""
    out = []
    for r in _rational_roots(h):
        lin = Polynomial([-r, 1]).primitive()
        out.append(lin)
        h = (h // Polynomial([-r, 1])).primitive()
    queue = [h] if h.degree >= 1 else []
    while queue:
        g = queue.pop()
        allowed = _possible_factor_degrees(g) if g.degree >= 4 else None
        split = _kronecker_split(g, allowed)
        if split is None:
            out.append(g)
        else:
            queue.append(split)
            queue.append((g // split).primitive())
    return out


def factor_over_rationals(p: Polynomial, bound: int = MAX_FACTOR_DEGREE) -> list:
    """Factor p into irreducibles over Q: list of (factor, multiplicity).

    Factors are primitive integer polynomials with positive leading coefficient;
    their product with multiplicities equals p up to a rational constant.
    Deterministic order: by degree, then lexicographically on coefficients.
    """
    if p.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if p.degree > bound:
        raise UnsupportedDegreeError(p.degree, bound)
    if p.degree == 0:
        return []
    work = p.primitive()
    sqf = squarefree_part(work)
    factors = []
    for irr in _factor_squarefree(sqf):
        mult = 0
        while True:
            q, r = divmod(work, irr)
            if not r.is_zero:
                break
            work = q
            mult += 1
        factors.append((irr, mult))
    if work.degree != 0:
        raise InternalConsistencyError(
            f"factorization left degree {work.degree} unexplained"
        )
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return factors


def is_irreducible(p: Polynomial) -> bool:
    fs = factor_over_rationals(p)
    return len(fs) == 1 and fs[0][1] == 1


# ---------------------------------------------------------------------------
# Sturm sequences and real root isolation
# ---------------------------------------------------------------------------


def _sturm_chain(p: Polynomial) -> list:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero:
        chain.append(-(chain[-2] % chain[-1]))
    chain.pop()
    return chain


def _variations(chain: list, x: Fraction) -> int:
    signs = []
    for q in chain:
        v = q.eval(x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: Polynomial, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi]."""
    sq = squarefree_part(p)
    chain = _sturm_chain(sq)
    return _variations(chain, lo) - _variations(chain, hi)


def _cauchy_bound(p: Polynomial) -> Fraction:
    lc = abs(p.leading)
    return 1 + max(abs(c) / lc for c in p.coeffs[:-1]) if p.degree >= 1 else _ONE


class RealAlgebraic:
    """A real algebraic number: squarefree integer polynomial + isolating interval.

    The interval [lo, hi] contains exactly one real root of poly; refinement
    narrows the interval in place (the number itself never changes, so the
    mutation is benign).  Rational numbers are stored with lo == hi.
    """

    __slots__ = ("poly", "_lo", "_hi")

    def __init__(self, poly: Polynomial, lo, hi, _checked: bool = False):
        lo, hi = _frac(lo), _frac(hi)
        self.poly = poly
        self._lo = lo
        self._hi = hi
        if _checked:
            return
        if lo == hi:
            if poly.eval(lo) != 0:
                raise ValueError("point interval does not hit a root")
        else:
            if lo > hi:
                raise ValueError("interval is reversed")
            plo, phi = poly.eval(lo), poly.eval(hi)
            if plo == 0 or phi == 0:
                raise ValueError("isolating interval endpoints must not be roots")
            if (plo > 0) == (phi > 0):
                raise ValueError("no sign change across the putative isolating interval")
            if count_real_roots(poly, lo, hi) != 1:
                raise ValueError("interval does not isolate exactly one root")

    @classmethod
    def from_rational(cls, r) -> "RealAlgebraic":
        r = _frac(r)
        poly = Polynomial([-r, 1]).primitive()
        return cls(poly, r, r, _checked=True)

    @property
    def lo(self) -> Fraction:
        return self._lo

    @property
    def hi(self) -> Fraction:
        return self._hi

    @property
    def is_rational(self) -> bool:
        return self._lo == self._hi

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("number is not (known) rational")
        return self._lo

    def refine(self) -> None:
        """One bisection step.  Collapses to a point if the midpoint is the root."""
        if self._lo == self._hi:
            return
        mid = (self._lo + self._hi) / 2
        v = self.poly.eval(mid)
        if v == 0:
            self._lo = self._hi = mid
            return
        if (v > 0) == (self.poly.eval(self._lo) > 0):
            self._lo = mid
        else:
            self._hi = mid

    def refine_below(self, width: Fraction) -> None:
        while self._hi - self._lo > width:
            self.refine()

    def approx(self, digits: int = 12) -> float:
        self.refine_below(Fraction(1, 10 ** (digits + 5)) * max(1, abs(self._hi)))
        return float((self._lo + self._hi) / 2)

    def approx_str(self, digits: int = 12) -> str:
        return f"%.{digits}g" % self.approx(digits)

    def __float__(self):
        return self.approx()

    def __repr__(self):
        if self.is_rational:
            return f"RealAlgebraic({_format_coeff(self._lo)})"
        return (
            f"RealAlgebraic({self.poly.to_string()}, "
            f"({_format_coeff(self._lo)}, {_format_coeff(self._hi)}))"
        )

    def __eq__(self, other):
        if not isinstance(other, RealAlgebraic):
            return NotImplemented
        return compare_real(self, other) == 0

    __hash__ = None  # exact equality crosses representations; hashing would lie

    def minimal_polynomial(self) -> Polynomial:
        """The irreducible factor of poly vanishing at this number.

        For algebraic integers (every eigenvalue in this package) the factor is
        monic with integer coefficients.
        """
        if self.is_rational:
            return Polynomial([-self._lo, 1]).primitive()
        for f, _ in factor_over_rationals(self.poly):
            # interval endpoints are never roots of poly, hence of any factor,
            # and every root of a factor is a root of poly -- so one hit in the
            # interval identifies the factor of this number exactly
            if count_real_roots(f, self._lo, self._hi) >= 1:
                return f
        raise InternalConsistencyError("no factor of poly vanishes in the interval")


def isolate_real_roots(p: Polynomial) -> list:
    """All distinct real roots of p, increasing, as RealAlgebraic numbers."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return []
    sq = squarefree_part(p)
    rational = _rational_roots(sq)
    h = sq
    for r in rational:
        h = (h // Polynomial([-r, 1])).primitive()
    roots = [RealAlgebraic.from_rational(r) for r in rational]
    if h.degree >= 1:
        chain = _sturm_chain(h)
        bound = _cauchy_bound(h)
        stack = [(-bound, bound)]
        while stack:
            lo, hi = stack.pop()
            n = _variations(chain, lo) - _variations(chain, hi)
            if n == 0:
                continue
            if n == 1:
                # endpoints are never roots: h has no rational roots at all
                ra = RealAlgebraic(h, lo, hi, _checked=True)
                ra.refine_below(Fraction(1, 2))  # keep reported intervals tidy
                roots.append(ra)
                continue
            mid = (lo + hi) / 2
            stack.append((lo, mid))
            stack.append((mid, hi))
    roots.sort(key=_SortKey)
    return roots


class _SortKey:
    """functools.cmp_to_key without the import, for exact root ordering."""

    __slots__ = ("val",)

    def __init__(self, val):
        self.val = val

    def __lt__(self, other):
        return compare_real(self.val, other.val) < 0


def compare_real(a: RealAlgebraic, b: RealAlgebraic) -> int:
    """Exact comparison: -1, 0, or +1.  Equality decided algebraically."""
    if a is b:
        return 0
    if a.is_rational and b.is_rational:
        x, y = a.as_fraction(), b.as_fraction()
        return (x > y) - (x < y)

    if a.is_rational or b.is_rational:
        if b.is_rational:
            return -compare_real(b, a)
        r = a.as_fraction()
        if b.poly.eval(r) == 0 and b._lo < r < b._hi:
            return 0  # r is the unique root of b.poly in the interval, so r = b
        while b._lo <= r <= b._hi:
            b.refine()
            if b.is_rational:
                return compare_real(a, b)
        return -1 if r < b._lo else 1

    g = poly_gcd(a.poly, b.poly)
    if g.degree >= 1:
        lo, hi = max(a._lo, b._lo), min(a._hi, b._hi)
        # a root of g inside both isolating intervals is a common root: a root of
        # a.poly in a's interval (hence a) and likewise b.  Interval endpoints are
        # never roots of the defining polynomials, so the half-open count is exact.
        if lo < hi and count_real_roots(g, lo, hi) >= 1:
            return 0
    while True:
        if a.is_rational or b.is_rational:
            return compare_real(a, b)
        if a._hi <= b._lo:
            return -1
        if b._hi <= a._lo:
            return 1
        a.refine()
        b.refine()


# ---------------------------------------------------------------------------
# Interval arithmetic on Fraction endpoints (for signs of field elements)
# ---------------------------------------------------------------------------


def _iv_mul(a, b):
    (al, ah), (bl, bh) = a, b
    prods = (al * bl, al * bh, ah * bl, ah * bh)
    return min(prods), max(prods)


def _iv_add(a, b):
    return a[0] + b[0], a[1] + b[1]


def horner_interval(coeffs: Sequence, lo: Fraction, hi: Fraction):
    """Enclosure of sum(coeffs[i] * x^i) for x in [lo, hi]."""
    acc = (_ZERO, _ZERO)
    x = (lo, hi)
    for c in reversed(list(coeffs)):
        acc = _iv_add(_iv_mul(acc, x), (c, c))
    return acc


# ---------------------------------------------------------------------------
# Number fields Q(lambda)
# ---------------------------------------------------------------------------


class NumberField:
    """Q(lambda) for lambda a real algebraic integer with monic integer minimal
    polynomial; elements are coefficient vectors in basis 1, lambda, ..., lambda^(k-1)."""

    __slots__ = ("minpoly", "root", "degree", "_companion")

    def __init__(self, minpoly: Polynomial, root: RealAlgebraic, validate: bool = True):
        if validate:
            if not minpoly.is_monic_integer:
                raise ValueError("minimal polynomial must be monic with integer coefficients")
            if minpoly.degree < 1:
                raise ValueError("minimal polynomial must be nonconstant")
            if not is_irreducible(minpoly):
                raise ValueError("minimal polynomial is reducible over Q")
            ok = root.poly == minpoly or (
                root.is_rational and minpoly.eval(root.as_fraction()) == 0
            )
            if not ok:
                raise ValueError("root does not select a root of the minimal polynomial")
        self.minpoly = minpoly
        self.root = root
        self.degree = minpoly.degree
        self._companion = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, NumberField):
            return NotImplemented
        return self.minpoly == other.minpoly and compare_real(self.root, other.root) == 0

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return f"NumberField({self.minpoly.to_string()})"

    # -- element constructors --------------------------------------------

    def element(self, coeffs: Iterable) -> "FieldElement":
        cs = tuple(_frac(c) for c in coeffs)
        if len(cs) != self.degree:
            raise ValueError(f"coefficient vector length {len(cs)} != degree {self.degree}")
        return FieldElement(self, cs)

    def zero(self) -> "FieldElement":
        return FieldElement(self, (_ZERO,) * self.degree)

    def one(self) -> "FieldElement":
        return self.rational(1)

    def rational(self, r) -> "FieldElement":
        cs = [_ZERO] * self.degree
        cs[0] = _frac(r)
        return FieldElement(self, tuple(cs))

    def lam(self) -> "FieldElement":
        """lambda itself as a field element."""
        if self.degree == 1:
            return self.rational(-self.minpoly[0])  # t - c: lambda = c
        cs = [_ZERO] * self.degree
        cs[1] = _ONE
        return FieldElement(self, tuple(cs))

    def from_polynomial(self, p: Polynomial) -> "FieldElement":
        """p(lambda) reduced modulo the minimal polynomial."""
        rem = p % self.minpoly
        cs = [rem[i] for i in range(self.degree)]
        return FieldElement(self, tuple(cs))

    def companion(self) -> "CompanionPair":
        if self._companion is None:
            self._companion = companion_pair(self)
        return self._companion


class FieldElement:
    """An element of Q(lambda) as a rational coefficient vector of length k."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other
            if other.is_rational:
                return self.field.rational(other.as_fraction())
            return None
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = self.field.degree
        if k == 1:
            return FieldElement(self.field, (self.coeffs[0] * o.coeffs[0],))
        prod = [_ZERO] * (2 * k - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        m = self.field.minpoly.coeffs  # monic, length k+1
        for p in range(2 * k - 2, k - 1, -1):
            c = prod[p]
            if c:
                prod[p] = _ZERO
                for j in range(k):
                    prod[p - k + j] -= c * m[j]
        return FieldElement(self.field, tuple(prod[:k]))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise ZeroDivisionError("inversion of zero field element")
        if self.field.degree == 1:
            return FieldElement(self.field, (1 / self.coeffs[0],))
        a = Polynomial(self.coeffs)
        g, u, _ = poly_xgcd(a, self.field.minpoly)
        if g.degree != 0:
            raise InternalConsistencyError("gcd with irreducible minpoly is nonconstant")
        return self.field.from_polynomial(u * (1 / g[0]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates & comparisons ---------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def sign(self) -> int:
        """Sign of the real value: zero decided algebraically, else by refinement."""
        if self.is_zero:
            return 0
        if self.is_rational:
            return 1 if self.coeffs[0] > 0 else -1
        root = self.field.root
        while True:
            lo, hi = horner_interval(self.coeffs, root.lo, root.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            root.refine()

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    # -- display ----------------------------------------------------------------

    def approx(self, digits: int = 12) -> float:
        if self.is_rational:
            return float(self.coeffs[0])
        root = self.field.root
        target = Fraction(1, 10 ** (digits + 5))
        while True:
            lo, hi = horner_interval(self.coeffs, root.lo, root.hi)
            if hi - lo < target * max(1, abs(hi)):
                return float((lo + hi) / 2)
            root.refine()

    def approx_str(self, digits: int = 12) -> str:
        return f"%.{digits}g" % self.approx(digits)

    def to_expr_string(self) -> str:
        """Render in the CLI value grammar, e.g. '3 - 1*l' or '1/4'."""
        parts = []
        for p, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = _format_coeff(abs(c))
            if p == 0:
                term = mag
            elif p == 1:
                term = f"{mag}*l"
            else:
                term = f"{mag}*l^{p}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        return f"<{self.to_expr_string()}>"


class CompanionPair:
    """Multiplication by lambda (C) and by 1/lambda (D) on coefficient vectors."""

    __slots__ = ("C", "D")

    def __init__(self, C, D):
        self.C = C
        self.D = D


def companion_pair(field: NumberField) -> CompanionPair:
    """Build C (multiplication by lambda) and D = C^(-1) for the field basis.

    C is the companion matrix of the minimal polynomial; D's first column
    encodes 1/lambda as a polynomial in lambda, and D shifts e_i to e_(i-1).
    C*D = I is asserted.
    """
    k = field.degree
    m = field.minpoly.coeffs  # m[0..k], monic
    C = [[_ZERO] * k for _ in range(k)]
    for j in range(k - 1):
        C[j + 1][j] = _ONE
    for i in range(k):
        C[i][k - 1] = -m[i]
    D = [[_ZERO] * k for _ in range(k)]
    m0 = m[0]
    for i in range(k - 1):
        D[i][0] = -m[i + 1] / m0
    D[k - 1][0] = -1 / m0
    for j in range(1, k):
        D[j - 1][j] = _ONE
    for i in range(k):
        for j in range(k):
            s = sum(C[i][l] * D[l][j] for l in range(k))
            if s != (1 if i == j else 0):
                raise InternalConsistencyError("companion pair failed C*D = I")
    return CompanionPair(
        tuple(tuple(row) for row in C), tuple(tuple(row) for row in D)
    )
