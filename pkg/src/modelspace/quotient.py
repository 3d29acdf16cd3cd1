"""Model spaces of matching systems as semi-simplicial quotients.

The faces of ``k`` disjoint copies of the standard ``n``-simplex are glued
along every pair of matched facets by the order-preserving vertex bijection.
Gluing two facets glues all of their corresponding sub-faces, so the cells
of the quotient are the classes of the equivalence relation generated by::

    (i, A[S]) ~ (i', B[S])   for every pair ((i, j), (i', j')) and S

where ``A`` and ``B`` are the sorted vertex lists of the two facets and ``S``
ranges over nonempty position sets.  Every generator is order preserving, and
so is every composite, hence a face is never glued to itself by a nontrivial
map and class membership alone determines the cellular chain complex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Sequence

from .homology import IntMatrix
from .matchings import InvalidSystem, Matching, MatchingError, MatchingSystem, as_system, validate_system


class Face(NamedTuple):
    simplex: int
    vertices: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def remove(self, position: int) -> Face:
        return Face(self.simplex, self.vertices[:position] + self.vertices[position + 1:])

    def __str__(self):
        return f"{self.simplex}:[{','.join(map(str, self.vertices))}]"

    @classmethod
    def parse(cls, text: str) -> Face:
        simplex, _, rest = text.partition(":")
        return cls(int(simplex), tuple(int(v) for v in rest.strip("[]").split(",")))


@dataclass(frozen=True)
class FaceClass:
    representative: Face
    members: tuple[Face, ...]

    @property
    def dim(self) -> int:
        return self.representative.dim


@dataclass(frozen=True)
class QuotientComplex:
    """Cells per dimension, boundary matrices and connected components.

    ``boundary[d]`` maps degree ``d`` chains to degree ``d - 1`` (rows are
    ``(d-1)``-cells); ``boundary[0]`` is the empty map out of degree 0.
    """

    n: int
    cells: tuple[tuple[FaceClass, ...], ...]
    boundary: tuple[IntMatrix, ...]
    component_of: tuple[tuple[int, ...], ...]
    face_index: dict[Face, tuple[int, int]] = field(compare=False, repr=False)

    @property
    def num_components(self) -> int:
        return max((c for comps in self.component_of for c in comps), default=-1) + 1

    def cell_of(self, face: Face | tuple) -> int:
        """Index of the class containing ``face`` within its dimension."""
        return self.face_index[Face(*face)][1]

    def cell_counts(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    def chain_boundary(self, face: Face) -> dict[int, int]:
        """Boundary of a single face computed from that face (not the representative)."""
        face = Face(*face)
        out: dict[int, int] = {}
        for r in range(len(face.vertices)):
            idx = self.cell_of(face.remove(r))
            out[idx] = out.get(idx, 0) + (-1) ** r
        return {i: v for i, v in out.items() if v}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "cells": [[str(c.representative) for c in cells] for cells in self.cells],
            "members": [[[str(f) for f in c.members] for c in cells] for cells in self.cells],
            "boundary": [[list(t) for t in b.entries] for b in self.boundary],
            "components": [list(c) for c in self.component_of],
        }

    @classmethod
    def from_json(cls, data: dict) -> QuotientComplex:
        cells = []
        face_index = {}
        for d, (reps, members) in enumerate(zip(data["cells"], data["members"])):
            row = []
            for idx, (rep, mem) in enumerate(zip(reps, members)):
                fc = FaceClass(Face.parse(rep), tuple(Face.parse(m) for m in mem))
                row.append(fc)
                for f in fc.members:
                    face_index[f] = (d, idx)
            cells.append(tuple(row))
        sizes = [len(c) for c in cells]
        boundary = [IntMatrix(0, sizes[0])]
        for d in range(1, len(cells)):
            boundary.append(IntMatrix(sizes[d - 1], sizes[d], tuple(tuple(t) for t in data["boundary"][d])))
        return cls(
            data["n"],
            tuple(cells),
            tuple(boundary),
            tuple(tuple(c) for c in data["components"]),
            face_index,
        )


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def all_faces(n: int, k: int) -> list[Face]:
    return [
        Face(i, verts)
        for i in range(k)
        for r in range(1, n + 2)
        for verts in combinations(range(n + 1), r)
    ]


def facet_identifications(system: MatchingSystem):
    """Yield ``(face, face')`` for every generator of the gluing relation."""
    n = system.n
    for (i, j), (i2, j2) in system.pairs:
        a = [v for v in range(n + 1) if v != j]
        b = [v for v in range(n + 1) if v != j2]
        for r in range(1, n + 1):
            for pos in combinations(range(n), r):
                yield Face(i, tuple(a[p] for p in pos)), Face(i2, tuple(b[p] for p in pos))


def _assemble(n: int, classes: list[list[Face]], component_key) -> QuotientComplex:
    by_dim: list[list[FaceClass]] = [[] for _ in range(n + 1)]
    for members in classes:
        members = sorted(members)
        by_dim[members[0].dim].append(FaceClass(members[0], tuple(members)))
    cells = tuple(tuple(sorted(row, key=lambda c: c.representative)) for row in by_dim)
    face_index = {}
    for d, row in enumerate(cells):
        for idx, fc in enumerate(row):
            for f in fc.members:
                face_index[f] = (d, idx)

    boundary = [IntMatrix(0, len(cells[0]))]
    for d in range(1, n + 1):
        entries = []
        for col, fc in enumerate(cells[d]):
            rep = fc.representative
            for r in range(d + 1):
                entries.append((face_index[rep.remove(r)][1], col, (-1) ** r))
        boundary.append(IntMatrix(len(cells[d - 1]), len(cells[d]), tuple(entries)))

    # components via the 1-skeleton
    uf = _UnionFind(len(cells[0]))
    if n >= 1:
        for fc in cells[1]:
            a, b = fc.representative.vertices
            s = fc.representative.simplex
            uf.union(face_index[Face(s, (a,))][1], face_index[Face(s, (b,))][1])
    vertex_root = [uf.find(v) for v in range(len(cells[0]))]

    def root_of(fc: FaceClass) -> int:
        rep = fc.representative
        return vertex_root[face_index[Face(rep.simplex, rep.vertices[:1])][1]]

    first_rep: dict[int, Face] = {}
    for row in cells:
        for fc in row:
            r = root_of(fc)
            if r not in first_rep or fc.representative < first_rep[r]:
                first_rep[r] = fc.representative
    order = {r: i for i, r in enumerate(sorted(first_rep, key=lambda r: first_rep[r]))}
    component_of = tuple(tuple(order[root_of(fc)] for fc in row) for row in cells)
    return QuotientComplex(n, cells, tuple(boundary), component_of, face_index)


def build_quotient(system: MatchingSystem | Matching | str) -> QuotientComplex:
    """Cellular chain complex of the model space of a valid system."""
    system = as_system(system)
    report = validate_system(system)
    if not report.valid:
        raise InvalidSystem(report.violations)
    faces = all_faces(system.n, system.k)
    index = {f: i for i, f in enumerate(faces)}
    uf = _UnionFind(len(faces))
    for f, g in facet_identifications(system):
        uf.union(index[f], index[g])
    groups: dict[int, list[Face]] = {}
    for f in faces:
        groups.setdefault(uf.find(index[f]), []).append(f)
    qc = _assemble(system.n, list(groups.values()), None)
    top = len(qc.cells[system.n])
    if top != system.k:
        raise AssertionError(f"{top} top cells for {system.k} simplices")
    return qc


def components(qc: QuotientComplex) -> list[QuotientComplex]:
    """Split ``qc`` into connected components, ordered by smallest representative."""
    out = []
    for comp in range(qc.num_components):
        keep = [[i for i, c in enumerate(row) if c == comp] for row in qc.component_of]
        cells = tuple(tuple(qc.cells[d][i] for i in keep[d]) for d in range(qc.n + 1))
        face_index = {}
        for d, row in enumerate(cells):
            for idx, fc in enumerate(row):
                for f in fc.members:
                    face_index[f] = (d, idx)
        boundary = [IntMatrix(0, len(cells[0]))]
        for d in range(1, qc.n + 1):
            boundary.append(qc.boundary[d].submatrix(keep[d - 1], keep[d]))
        component_of = tuple(tuple(0 for _ in row) for row in cells)
        out.append(QuotientComplex(qc.n, cells, tuple(boundary), component_of, face_index))
    return out


def cycle_class_check(qc: QuotientComplex, system: MatchingSystem | Matching | str) -> bool:
    """Whether ``sum_i eps_i * (top cell i)`` is a cellular cycle."""
    system = as_system(system)
    n = system.n
    acc: dict[int, int] = {}
    cols = qc.boundary[n].columns()
    for i, eps in enumerate(system.coeffs):
        top = qc.cell_of(Face(i, tuple(range(n + 1))))
        for r, v in cols[top].items():
            acc[r] = acc.get(r, 0) + eps * v
    return not any(acc.values())


# -- single-simplex combinatorics --------------------------------------------

def _as_matching(m) -> Matching:
    if isinstance(m, Matching):
        return m
    return as_system(m).as_matching()


def vertex_equivalence(m: Matching | MatchingSystem | str) -> list[list[int]]:
    """Partition of ``{0..n}`` generated by merging every interval ``[J, K]`` of a matched pair."""
    m = _as_matching(m)
    uf = _UnionFind(m.n + 1)
    for e, o in m.pairs.items():
        lo, hi = min(e, o), max(e, o)
        for v in range(lo, hi):
            uf.union(v, v + 1)
    classes: dict[int, list[int]] = {}
    for v in range(m.n + 1):
        classes.setdefault(uf.find(v), []).append(v)
    return sorted(classes.values())


def spanning_tree_edges(m: Matching | MatchingSystem | str) -> list[tuple[int, int]]:
    """Edges ``[j, j+1]`` with ``j`` maximal in its vertex class."""
    m = _as_matching(m)
    if m.n < 3:
        raise MatchingError("the spanning tree description needs n >= 3")
    return [(max(c), max(c) + 1) for c in vertex_equivalence(m) if max(c) < m.n]


@dataclass(frozen=True)
class FrontFaceReport:
    k: int
    sign: int
    I: tuple[int, ...]
    image_I: tuple[int, ...]
    complement: tuple[int, ...]


class FrontFaceError(AssertionError):
    """The boundary of a front face is not plus or minus the next front face."""


def front_face_boundary(m: Matching | MatchingSystem | str, k: int, qc: QuotientComplex | None = None) -> FrontFaceReport:
    """Check ``d [0..k+1] = +-[0..k]`` in the quotient of a single-simplex matching."""
    m = _as_matching(m)
    n = m.n
    if k % 2 == 0 or not 1 <= k <= n - 1:
        raise MatchingError(f"k must be odd with 1 <= k <= {n - 1}, got {k}")
    if qc is None:
        qc = build_quotient(m)
    chain = qc.chain_boundary(Face(0, tuple(range(k + 2))))
    target = qc.cell_of(Face(0, tuple(range(k + 1))))
    if set(chain) != {target} or abs(chain[target]) != 1:
        raise FrontFaceError(f"boundary of [0..{k + 1}] is {chain}, not +-[0..{k}] (cell {target})")
    I = tuple(j for j in range(0, k + 2, 2) if m.partner(j) <= k)
    image = tuple(m.partner(j) for j in I)
    rest = tuple(j for j in range(k + 2) if j not in I and j not in image)
    sign = sum((-1) ** j for j in rest)
    if sign != chain[target]:
        raise FrontFaceError(f"index count gives sign {sign}, quotient gives {chain[target]}")
    return FrontFaceReport(k, chain[target], I, image, rest)


def boundary_block(qc: QuotientComplex, d: int, rows: Sequence[Face], cols: Sequence[Face]) -> list[list[int]]:
    """Matrix of ``boundary[d]`` restricted to the classes of the given faces."""
    dense = qc.boundary[d].to_dense()
    return [[dense[qc.cell_of(r)][qc.cell_of(c)] for c in cols] for r in rows]
