"""Stationary Bratteli diagrams: JSON parsing, validation, height vectors,
and decomposition of the vertex set into accessibility classes.

Conventions
-----------
The incidence matrix F is indexed F[v][w] = number of edges from vertex w at
one level to vertex v at the level above.  Its transpose A = F^T is the
adjacency matrix of the accessibility digraph: A[i][j] > 0 means there is an
edge i -> j, and class alpha *accesses* class beta (alpha >= beta) when there
is a path from beta to alpha.  Minimal components are the classes that access
nothing but themselves.

Vertices are 0-based throughout the API; rendered output (labels, error
messages) is 1-based to match the way matrices are usually read aloud.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass

from .errors import DiagramValidationError, InternalConsistencyError
from .exactmath import Polynomial, RealAlgebraic, compare_real, isolate_real_roots
from .linalg import mat_vec, min_annihilator


@dataclass(frozen=True)
class Diagram:
    """A stationary Bratteli diagram, given by its incidence matrix F."""

    incidence: tuple[tuple[int, ...], ...]
    name: str | None = None

    @property
    def size(self) -> int:
        return len(self.incidence)

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """A = F^T; A[i][j] = number of edges i -> j in the accessibility digraph."""
        n = self.size
        return tuple(tuple(self.incidence[j][i] for j in range(n)) for i in range(n))

    def to_json(self) -> str:
        doc = {} if self.name is None else {"name": self.name}
        doc["incidence"] = [list(row) for row in self.incidence]
        return json.dumps(doc, indent=2) + "\n"

    def __repr__(self) -> str:  # pragma: no cover - debugging nicety
        label = self.name or "diagram"
        return f"<{label}: {self.size} vertices>"


def _validate_rows(rows) -> tuple[tuple[int, ...], ...]:
    if not isinstance(rows, list) or not rows:
        raise DiagramValidationError("'incidence' must be a non-empty list of rows")
    n = len(rows)
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise DiagramValidationError(f"row {i + 1} is not a list")
        if len(row) != n:
            raise DiagramValidationError(
                f"matrix is not square: row {i + 1} has {len(row)} entries, expected {n}"
            )
        for j, entry in enumerate(row):
            if isinstance(entry, bool) or not isinstance(entry, int):
                raise DiagramValidationError(f"entry ({i + 1},{j + 1}) is not an integer")
            if entry < 0:
                raise DiagramValidationError(f"entry ({i + 1},{j + 1}) is negative")
        out.append(tuple(row))
    for i in range(n):
        if not any(out[i]):
            raise DiagramValidationError(f"zero row {i + 1}: vertex {i + 1} has no incoming edges")
    for j in range(n):
        if not any(out[i][j] for i in range(n)):
            raise DiagramValidationError(
                f"zero column {j + 1}: vertex {j + 1} has no outgoing edges"
            )
    return tuple(out)


def make_diagram(rows, name: str | None = None) -> Diagram:
    """Build a validated diagram from a nested list (programmatic entry point)."""
    return Diagram(_validate_rows([list(r) for r in rows]), name)


def parse_diagram(text: str) -> Diagram:
    """Parse the JSON interchange format {"name"?: str, "incidence": [[uint]]}."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramValidationError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DiagramValidationError("top-level value must be an object")
    for key in doc:
        if key not in ("name", "incidence"):
            raise DiagramValidationError(f"unexpected key '{key}'")
    if "incidence" not in doc:
        raise DiagramValidationError("missing required key 'incidence'")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise DiagramValidationError("'name' must be a string")
    return Diagram(_validate_rows(doc["incidence"]), name)


def load_diagram(path) -> Diagram:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_diagram(fh.read())


def heights(d: Diagram, n: int) -> tuple[int, ...]:
    """Path counts from the root to each vertex at level n (level 1 = all ones)."""
    if n < 1:
        raise ValueError("levels are numbered from 1")
    h = (1,) * d.size
    for _ in range(n - 1):
        h = mat_vec(d.incidence, h)
    return h


def vertex_label(vertices) -> str:
    return "{" + ",".join(str(v + 1) for v in vertices) + "}"


@dataclass(frozen=True)
class VertexClass:
    """One accessibility class, with its Perron data and flags.

    `perron` is the spectral radius of the class block as an exact real
    algebraic number and `minpoly` its minimal polynomial.  A class is
    *minimal* (equivalently *final*) when it accesses no other class, *initial*
    when no other class accesses it, and *distinguished* when its Perron root
    strictly dominates those of all classes it accesses.
    """

    index: int
    vertices: tuple[int, ...]
    perron: RealAlgebraic
    minpoly: Polynomial
    is_minimal: bool
    is_final: bool
    is_initial: bool
    is_distinguished: bool

    @property
    def label(self) -> str:
        return vertex_label(self.vertices)


@dataclass(frozen=True)
class ClassDecomposition:
    """Classes in topological order: accessed classes come first, so minimal
    components lead and the permuted incidence matrix is block lower
    triangular.  Ties are broken by smallest vertex, and `vertex_order` is the
    Frobenius permutation (new position -> original vertex)."""

    diagram: Diagram
    classes: tuple[VertexClass, ...]
    vertex_class: tuple[int, ...]
    below: tuple[frozenset[int], ...]
    vertex_order: tuple[int, ...]

    def accesses(self, a: int, b: int) -> bool:
        """True when class a >= class b (a accesses b)."""
        return b in self.below[a]

    def support(self, a: int) -> tuple[int, ...]:
        """Vertices of all classes accessed by class a, in increasing order."""
        verts = []
        for b in self.below[a]:
            verts.extend(self.classes[b].vertices)
        return tuple(sorted(verts))

    def minimal(self) -> tuple[VertexClass, ...]:
        return tuple(c for c in self.classes if c.is_minimal)

    def distinguished(self) -> tuple[VertexClass, ...]:
        return tuple(c for c in self.classes if c.is_distinguished)


def _strongly_connected_components(adj):
    """Iterative Tarjan; returns list of components (tuples of vertices)."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    components = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for k in range(pi, len(adj[v])):
                w = adj[v][k]
                if index[w] == -1:
                    work.append((v, k + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(tuple(sorted(comp)))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return components


def _class_perron(block) -> tuple[RealAlgebraic, Polynomial]:
    """Spectral radius of an irreducible nonnegative class block.

    The minimal annihilator of the all-ones vector has the Perron root among
    its roots (pair it with the positive left eigenvector), so the largest real
    root is the spectral radius.  This keeps the polynomial degree at the size
    of the Krylov sequence rather than the block.
    """
    g = min_annihilator(block, (1,) * len(block))
    roots = isolate_real_roots(g)
    if not roots:
        raise InternalConsistencyError("class annihilator has no real root")
    rho = roots[-1]
    if rho.is_rational and rho.as_fraction() < 0:
        raise InternalConsistencyError("negative spectral radius")
    mp = rho.minimal_polynomial()
    if not rho.is_rational and rho.poly != mp:
        # The annihilator can be reducible; rebase onto the irreducible factor.
        # The interval still isolates (mp's roots are among the old poly's).
        rho = RealAlgebraic(mp, rho.lo, rho.hi)
    return rho, mp


def decompose(d: Diagram) -> ClassDecomposition:
    n = d.size
    A = d.adjacency
    adj = tuple(tuple(j for j in range(n) if A[i][j]) for i in range(n))
    comps = _strongly_connected_components(adj)

    cid = [-1] * n
    for c, comp in enumerate(comps):
        for v in comp:
            cid[v] = c

    m = len(comps)
    out_edges = [set() for _ in range(m)]
    indeg = [0] * m
    for i in range(n):
        for j in adj[i]:
            a, b = cid[i], cid[j]
            if a != b and b not in out_edges[a]:
                out_edges[a].add(b)
                indeg[b] += 1

    # topological order, sources (minimal components) first, smallest vertex wins ties
    heap = [(comps[c][0], c) for c in range(m) if indeg[c] == 0]
    heapq.heapify(heap)
    topo = []
    while heap:
        _, c = heapq.heappop(heap)
        topo.append(c)
        for b in out_edges[c]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, (comps[b][0], b))
    if len(topo) != m:
        raise InternalConsistencyError("class digraph has a cycle")

    pos = [0] * m
    for p, c in enumerate(topo):
        pos[c] = p

    below = []
    for p, c in enumerate(topo):
        acc = {p}
        for q in range(p):
            if c in out_edges[topo[q]]:
                acc |= below[q]
        below.append(frozenset(acc))
    accessed_by_other = [any(p in below[q] for q in range(m) if q != p) for p in range(m)]

    classes = []
    for p, c in enumerate(topo):
        verts = comps[c]
        block = tuple(tuple(A[u][v] for v in verts) for u in verts)
        rho, mp = _class_perron(block)
        minimal = below[p] == {p}
        distinguished = all(
            compare_real(rho, classes[q].perron) > 0 for q in below[p] if q != p
        )
        classes.append(
            VertexClass(
                index=p,
                vertices=verts,
                perron=rho,
                minpoly=mp,
                is_minimal=minimal,
                is_final=minimal,
                is_initial=not accessed_by_other[p],
                is_distinguished=distinguished,
            )
        )

    vertex_class = [0] * n
    order = []
    for p, c in enumerate(topo):
        for v in comps[c]:
            vertex_class[v] = p
            order.append(v)

    return ClassDecomposition(
        diagram=d,
        classes=tuple(classes),
        vertex_class=tuple(vertex_class),
        below=tuple(below),
        vertex_order=tuple(order),
    )
