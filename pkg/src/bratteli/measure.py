"""Ergodic tail-invariant probability measures on stationary diagrams.

Each distinguished class alpha carries exactly one finite ergodic measure.  It
is determined by the Perron root lambda of the class block and the right
eigenvector x of the adjacency matrix restricted to the support (the vertices
of all classes alpha accesses), normalized so the entries sum to 1.  A
cylinder through vertex v at level n then has measure x_v / lambda^(n-1).

Everything is exact: lambda lives in the number field Q(lambda) defined by its
minimal polynomial, and eigenvector coordinates are field elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .diagram import ClassDecomposition, Diagram, decompose
from .errors import InfiniteMeasureError, InternalConsistencyError
from .exactmath import FieldElement, NumberField
from .linalg import kernel_basis


@dataclass(frozen=True)
class ErgodicMeasure:
    """The finite ergodic tail-invariant measure of one distinguished class."""

    diagram: Diagram
    decomposition: ClassDecomposition
    class_index: int
    field: NumberField
    lam: FieldElement
    support: tuple[int, ...]
    x: tuple[FieldElement, ...]

    @property
    def vertex_class(self):
        return self.decomposition.classes[self.class_index]

    @property
    def is_rational(self) -> bool:
        """True when lambda (hence every coordinate) is rational."""
        return self.field.degree == 1

    def x_at(self, vertex: int) -> FieldElement:
        """Eigenvector coordinate at a vertex; zero outside the support."""
        try:
            i = self.support.index(vertex)
        except ValueError:
            return self.field.zero()
        return self.x[i]

    def cylinder(self, vertex: int, level: int) -> FieldElement:
        """Measure of one cylinder through `vertex` at `level` (levels from 1)."""
        if level < 1:
            raise ValueError("levels are numbered from 1")
        return self.x_at(vertex) / self.lam ** (level - 1)

    def rational_data(self) -> tuple[int, tuple[int, ...]]:
        """For rational lambda: (q, p) with x = p/q, q = lcm of denominators.

        The numerators are then automatically coprime as a set.
        """
        if not self.is_rational:
            raise InternalConsistencyError("rational_data on an irrational measure")
        fracs = [e.as_fraction() for e in self.x]
        q = lcm(*(f.denominator for f in fracs))
        p = tuple(f.numerator * (q // f.denominator) for f in fracs)
        if gcd(*p) != 1:
            raise InternalConsistencyError("lcm denominator left a common factor")
        return q, p

    def lam_int(self) -> int:
        if not self.is_rational:
            raise InternalConsistencyError("lam_int on an irrational measure")
        f = self.lam.as_fraction()
        if f.denominator != 1:
            raise InternalConsistencyError("rational Perron root is not an integer")
        return f.numerator

    def __repr__(self) -> str:  # pragma: no cover - debugging nicety
        return f"<measure on class {self.vertex_class.label}>"


def build_measure(dec: ClassDecomposition, class_index: int) -> ErgodicMeasure:
    """Construct the measure of a distinguished class exactly."""
    if not 0 <= class_index < len(dec.classes):
        raise ValueError(f"no class with index {class_index}")
    cls = dec.classes[class_index]
    if not cls.is_distinguished:
        raise InfiniteMeasureError(
            f"class {cls.label} is not distinguished: its tail-invariant measure "
            "has infinite total mass"
        )
    field = NumberField(cls.minpoly, cls.perron)
    lam = field.lam()
    supp = dec.support(class_index)
    A = dec.diagram.adjacency
    rows = []
    for u in supp:
        row = {}
        for j, v in enumerate(supp):
            entry = field.rational(Fraction(A[u][v]))
            if u == v:
                entry = entry - lam
            if not entry.is_zero:
                row[j] = entry
        rows.append(row)
    kern = kernel_basis(rows, len(supp), field.zero(), field.one())
    if len(kern) != 1:
        raise InternalConsistencyError(
            f"eigenspace of class {cls.label} has dimension {len(kern)}, expected 1"
        )
    vec = kern[0]
    total = field.zero()
    for e in vec:
        total = total + e
    if total.is_zero:
        raise InternalConsistencyError("eigenvector has zero coordinate sum")
    x = tuple(e / total for e in vec)
    for e in x:
        if not e.sign() > 0:
            raise InternalConsistencyError(
                f"normalized eigenvector of class {cls.label} is not positive"
            )
    return ErgodicMeasure(
        diagram=dec.diagram,
        decomposition=dec,
        class_index=class_index,
        field=field,
        lam=lam,
        support=supp,
        x=x,
    )


def ergodic_measures(d: Diagram | ClassDecomposition):
    """All finite ergodic tail-invariant measures, one per distinguished class."""
    dec = d if isinstance(d, ClassDecomposition) else decompose(d)
    return tuple(build_measure(dec, c.index) for c in dec.distinguished())
