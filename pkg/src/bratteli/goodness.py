"""Goodness of ergodic measures, with machine-checkable certificates.

A measure on class alpha is *good* when every value in S(mu) can be realized
by a clopen set assembled from alpha-cylinders alone.  Concretely this reduces
to: each eigenvector coordinate x_i at a support vertex outside alpha must lie
in the lambda-saturation of the lattice Lambda_alpha spanned by the class
coordinates.  Three branches:

* no support vertices outside the class: trivially good (R = 0);
* rational lambda: a closed form on prime valuations - write x = p/q, let
  a = gcd of the class numerators; the measure is good iff a becomes 1 after
  repeatedly dividing out gcd(a, lambda), and the least exponent R is explicit;
* irrational lambda: run the denominator orbit of each outside coordinate
  against Lambda_alpha.

The rational closed form and the generic orbit agree (the q = lcm choice
forces the support numerators to be coprime, which makes the stripped-gcd test
equivalent); the test suite cross-checks them on random diagrams.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import InternalConsistencyError, UnsupportedOperationError
from .measure import ErgodicMeasure
from .values import (
    LatticeGroup,
    MemberResult,
    _prime_factors,
    member_value,
    value_lattice,
)


@dataclass(frozen=True)
class GoodnessResult:
    good: bool
    branch: str  # empty-outside | rational | lattice-orbit
    outside: tuple[int, ...]
    R: int | None = None
    exponents: tuple[int, ...] | None = None
    witness_vertex: int | None = None
    class_gcd: int | None = None  # rational branch: a
    residual: int | None = None  # rational branch: a with lambda's primes removed
    index: int | None = None  # orbit branch: [H : Lambda_alpha]

    def as_dict(self):
        return {
            "good": self.good,
            "branch": self.branch,
            "outside": [v + 1 for v in self.outside],
            "R": self.R,
            "exponents": list(self.exponents) if self.exponents is not None else None,
            "witness_vertex": None if self.witness_vertex is None else self.witness_vertex + 1,
            "class_gcd": self.class_gcd,
            "residual": self.residual,
            "index": self.index,
        }


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _good_rational(mu: ErgodicMeasure, outside) -> GoodnessResult:
    q, p = mu.rational_data()
    pos = {v: i for i, v in enumerate(mu.support)}
    cls = mu.vertex_class
    a = gcd(*(p[pos[v]] for v in cls.vertices))
    lam = mu.lam_int()
    residual = a
    while (g := gcd(residual, lam)) > 1:
        residual //= g
    if residual != 1:
        e = _prime_factors(residual)[0]
        va = _valuation(a, e)
        witness = next(v for v in outside if _valuation(p[pos[v]], e) < va)
        return GoodnessResult(
            False,
            "rational",
            tuple(outside),
            witness_vertex=witness,
            class_gcd=a,
            residual=residual,
        )
    exps = []
    for v in outside:
        n = 0
        for e in _prime_factors(a):
            need = _valuation(a, e) - _valuation(p[pos[v]], e)
            if need > 0:
                n = max(n, -(-need // _valuation(lam, e)))
        exps.append(n)
    return GoodnessResult(
        True,
        "rational",
        tuple(outside),
        R=max(exps, default=0),
        exponents=tuple(exps),
        class_gcd=a,
        residual=1,
    )


def _good_orbit(mu: ErgodicMeasure, outside) -> GoodnessResult:
    field = mu.field
    cls = mu.vertex_class
    lattice = LatticeGroup.from_elements(field, [mu.x_at(v) for v in cls.vertices])
    if field.degree > 1 and lattice.rank != field.degree:
        raise InternalConsistencyError("class coordinates do not span the field")
    index = value_lattice(mu).index_of_sublattice(lattice)
    exps = []
    for v in outside:
        ok, n, _ = lattice.saturation_contains(mu.x_at(v), mu.lam)
        if not ok:
            return GoodnessResult(
                False, "lattice-orbit", tuple(outside), witness_vertex=v, index=index
            )
        exps.append(n)
    return GoodnessResult(
        True,
        "lattice-orbit",
        tuple(outside),
        R=max(exps, default=0),
        exponents=tuple(exps),
        index=index,
    )


def is_good(mu: ErgodicMeasure) -> GoodnessResult:
    cls = mu.vertex_class
    alpha = set(cls.vertices)
    outside = [v for v in mu.support if v not in alpha]
    if not outside:
        return GoodnessResult(True, "empty-outside", (), R=0, exponents=())
    if mu.is_rational:
        return _good_rational(mu, outside)
    return _good_orbit(mu, outside)


def good_via_orbit(mu: ErgodicMeasure) -> GoodnessResult:
    """The generic lattice-orbit decision, regardless of field degree.

    Used to cross-check the rational closed form; `is_good` is the fast path.
    """
    cls = mu.vertex_class
    alpha = set(cls.vertices)
    outside = [v for v in mu.support if v not in alpha]
    if not outside:
        return GoodnessResult(True, "empty-outside", (), R=0, exponents=())
    return _good_orbit(mu, outside)


# ---------------------------------------------------------------------------
# Derived classification for rational measures
# ---------------------------------------------------------------------------


def is_multiplicative(mu: ErgodicMeasure) -> bool:
    """Whether S(mu) is closed under products (rational lambda only):
    equivalent to every prime of q dividing lambda."""
    if not mu.is_rational:
        raise UnsupportedOperationError(
            "the multiplicativity test applies to rational Perron roots only"
        )
    q, _ = mu.rational_data()
    lam = mu.lam_int()
    return all(lam % e == 0 for e in _prime_factors(q))


def is_bernoulli_type(mu: ErgodicMeasure) -> bool:
    """Whether a good rational measure is of Bernoulli product type."""
    if not mu.is_rational:
        raise UnsupportedOperationError(
            "the Bernoulli-type test applies to rational Perron roots only"
        )
    if not is_good(mu).good:
        raise UnsupportedOperationError("the Bernoulli-type test requires a good measure")
    q, _ = mu.rational_data()
    lam = mu.lam_int()
    return all(lam % e == 0 for e in _prime_factors(q))


# ---------------------------------------------------------------------------
# Quotient witness: a value provably outside S(mu)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientWitness:
    prime: int
    value: Fraction
    result: MemberResult

    def as_dict(self):
        return {
            "prime": self.prime,
            "value": str(self.value),
            "member": self.result.as_dict(),
        }


def quotient_witness(mu: ErgodicMeasure) -> QuotientWitness:
    """The smallest prime p such that 1/p provably lies outside S(mu).

    Every group element has coordinate denominators whose primes divide the
    eigenvector denominators or the lambda-inverse matrix denominators, so the
    smallest prime outside that set gives 1/p not in G(mu); the denominator
    orbit is run anyway and must come back negative.
    """
    dens = [c.denominator for x in mu.x for c in x.coeffs]
    for row in mu.field.companion().D:
        dens.extend(c.denominator for c in row)
    blocked = set(_prime_factors(lcm(*dens)))
    p = 2
    while p in blocked:
        p = _next_prime(p)
    res = member_value(mu, Fraction(1, p))
    if res.member:
        raise InternalConsistencyError("quotient witness failed verification")
    return QuotientWitness(p, Fraction(1, p), res)


def _next_prime(p: int) -> int:
    cand = p + 1
    while True:
        if all(cand % d for d in range(2, int(cand**0.5) + 1)):
            return cand
        cand += 1
