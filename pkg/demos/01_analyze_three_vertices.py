"""
Classifying the measures of a three-vertex diagram
==================================================

A stationary Bratteli diagram is given by one square incidence matrix F:
F[v][w] counts the edges from vertex w at one level to vertex v at the next.
This walkthrough takes the three-vertex diagram

        F = | 1 1 0 |
            | 1 2 0 |
            | 0 1 3 |

and derives everything the library knows about it: the class structure, the
two ergodic tail-invariant probability measures, their exact eigendata, and
membership in their clopen values sets.  Every number is exact; floats appear
only as display approximations.
"""

from fractions import Fraction

from bratteli import (
    decompose,
    enumerate_level_values,
    ergodic_measures,
    heights,
    make_diagram,
    member_value,
)

d = make_diagram([[1, 1, 0], [1, 2, 0], [0, 1, 3]], name="three-vertex")
print(f"diagram {d.name}: {d.size} vertices")

# The measure-side matrix is the transpose A = F^T; its strongly connected
# components are the classes, ordered so that accessed classes come first.
dec = decompose(d)
for cls in dec.classes:
    kind = "minimal" if cls.is_minimal else "non-minimal"
    tags = " distinguished" if cls.is_distinguished else ""
    print(
        f"  class {cls.label}: {kind},{tags} "
        f"perron root ~ {cls.perron.approx_str(8)} "
        f"(minimal polynomial {cls.minpoly.to_string('t')})"
    )

# Each distinguished class carries exactly one finite ergodic measure.
measures = ergodic_measures(dec)
print(f"\n{len(measures)} ergodic probability measures")

mu1, mu2 = measures

# The golden-ratio-squared measure: lambda^2 = 3 lambda - 1.
print("\nmu1, the irrational one:")
print(f"  lambda ~ {mu1.field.root.approx_str(12)}")
for v in mu1.support:
    e = mu1.x_at(v)
    print(f"  x[{v + 1}] = {e.to_expr_string()}  (~ {e.approx(8):.8f})")

# The integer measure on the full support: lambda = 3, x = (1/4, 1/2, 1/4).
print("\nmu2, the rational one:")
print(f"  lambda = {mu2.lam_int()}")
q, p = mu2.rational_data()
print(f"  x = ({', '.join(f'{n}/{q}' for n in p)})")

# Path counts (tower heights) grow like consecutive Fibonacci numbers here.
print("\nheights of the first five levels:")
for n in range(1, 6):
    print(f"  level {n}: {heights(d, n)}")

# A cylinder through vertex v at level n has measure x_v / lambda^(n-1).
c = mu2.cylinder(1, 3)
print(f"\nmu2(cylinder through vertex 2 at level 3) = {c.as_fraction()}")

# Membership in the clopen values set S(mu) is decidable with a certificate:
# the denominator orbit either reaches an integral point (member, with the
# witness exponent) or closes into a cycle (non-member).
for value in (Fraction(1, 3), Fraction(1, 5)):
    r = member_value(mu2, value)
    verdict = "in S(mu2)" if r.member else "NOT in S(mu2)"
    print(f"  {value}: {verdict} ({r.reason}, visited {r.visited} orbit points)")

# The same machinery works in the number field: lambda - 2 is a value of mu1.
r = member_value(mu1, mu1.lam - 2)
print(f"  lambda - 2: member of S(mu1) = {r.member} (exponent {r.exponent})")

# Finite enumeration cross-checks the decision procedure: all level-n values.
values = enumerate_level_values(mu2, 2)
print(f"\nS_2(mu2) has {len(values)} values: "
      f"{[str(e.as_fraction()) for e in values[:5]]} ...")
assert all(member_value(mu2, v).member for v in values)
print("every enumerated value passes the membership decision, as it must")
