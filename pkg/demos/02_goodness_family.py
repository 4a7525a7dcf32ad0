"""
A one-parameter family where goodness is a power-of-two question
================================================================

Take the family of three-vertex diagrams

        F_N = | 2 0 0 |
              | 1 N 1 |
              | 1 1 N |

The big class {2,3} carries a rational measure with lambda = N + 1 and
reduced vector x = (1/q, ...) for q = 2N.  Its measure is *good* — every
admissible clopen value below a clopen mass is realized inside — exactly when
every prime of q divides lambda, which for this family means N = 2^k + 1.

The decision comes with a machine-checkable certificate either way: a power R
with lambda^R * x integral over the class lattice (good), or a residual prime
and a witness vertex (not good).
"""

from bratteli import (
    build_measure,
    decompose,
    good_via_orbit,
    is_bernoulli_type,
    is_good,
    is_multiplicative,
    make_diagram,
    quotient_witness,
)


def family(N):
    return make_diagram([[2, 0, 0], [1, N, 1], [1, 1, N]], name=f"family-{N}")


def family_measure(N):
    dec = decompose(family(N))
    return build_measure(dec, 1)  # the big class, in topological order


print("N: verdict (certificate)")
good_ns = []
for N in range(3, 34):
    mu = family_measure(N)
    res = is_good(mu)
    if res.good:
        good_ns.append(N)
        print(f"  {N:2d}: good      (lambda^{res.R} clears the class gcd)")
    else:
        print(
            f"  {N:2d}: not good  (residual {res.residual}, "
            f"witness vertex {res.witness_vertex + 1})"
        )

print(f"\ngood exactly at N = {good_ns}")
print("i.e. N = 2^k + 1: ", [2**k + 1 for k in range(1, 6)])

# The generic lattice-orbit branch reaches the same verdicts independently.
assert all(good_via_orbit(family_measure(N)).good == (N in good_ns) for N in range(3, 34))
print("the closed-form and lattice-orbit branches agree on the whole sweep")

# A closer look at the smallest bad case, N = 4: lambda = 5, x = (1/8,...),
# and no power of 5 ever clears the prime 2 in the denominators.
mu4 = family_measure(4)
q, p = mu4.rational_data()
res4 = is_good(mu4)
print(f"\nN=4: lambda = {mu4.lam_int()}, q = {q}, numerators {p}")
print(f"  residual prime left over: {res4.residual}")

# For any rational measure there is also a provably-missing value: the
# smallest prime not dividing any coordinate denominator.
w = quotient_witness(mu4)
print(f"  provably outside S(mu): {w.value} (orbit closed after {w.result.visited} points)")

# Good rational measures subdivide further: multiplicative (S closed under
# products) and Bernoulli product type coincide for this normal form.
mu5 = family_measure(5)
print(f"\nN=5: good={is_good(mu5).good}, multiplicative={is_multiplicative(mu5)}, "
      f"bernoulli type={is_bernoulli_type(mu5)}")
