"""Exact integer linear algebra and integral homology of finite chain complexes.

Everything here works with Python integers; there is no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class InconsistentComplex(ValueError):
    """The boundary maps do not compose to zero."""


class NotACandidate(ValueError):
    """The profile cannot belong to an oriented closed connected manifold at all."""


@dataclass(frozen=True)
class IntMatrix:
    """Sparse integer matrix as sorted nonzero ``(row, col, value)`` triplets."""

    rows: int
    cols: int
    entries: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        merged: dict[tuple[int, int], int] = {}
        for r, c, v in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside a {self.rows}x{self.cols} matrix")
            merged[(r, c)] = merged.get((r, c), 0) + int(v)
        object.__setattr__(
            self, "entries", tuple(sorted((r, c, v) for (r, c), v in merged.items() if v))
        )

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(nrows, ncols, tuple((i, j, v) for i, row in enumerate(rows) for j, v in enumerate(row) if v))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[dict[int, int]]) -> IntMatrix:
        return cls(nrows, len(columns), tuple((r, c, v) for c, col in enumerate(columns) for r, v in col.items()))

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def columns(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.cols)]
        for r, c, v in self.entries:
            out[c][r] = v
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        rmap = {r: i for i, r in enumerate(rows)}
        cmap = {c: j for j, c in enumerate(cols)}
        return IntMatrix(
            len(rows),
            len(cols),
            tuple((rmap[r], cmap[c], v) for r, c, v in self.entries if r in rmap and c in cmap),
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for r, c, v in other.entries:
            by_row.setdefault(r, []).append((c, v))
        acc: dict[tuple[int, int], int] = {}
        for r, k, v in self.entries:
            for c, w in by_row.get(k, ()):
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return IntMatrix(self.rows, other.cols, tuple((r, c, v) for (r, c), v in acc.items()))

    def is_zero(self) -> bool:
        return not self.entries


def _as_dense(A) -> list[list[int]]:
    if isinstance(A, IntMatrix):
        return A.to_dense()
    return [[int(x) for x in row] for row in A]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class SNFResult:
    D: list[list[int]]
    rank: int
    U: list[list[int]] | None = None
    V: list[list[int]] | None = None

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d]


def _dense_snf(D: list[list[int]], U: list[list[int]] | None, V: list[list[int]] | None) -> int:
    """Reduce ``D`` in place to Smith form, applying row ops to ``U`` and column ops to ``V``.

    Pivot rule: smallest nonzero absolute value in the remaining block, first
    in row order.  Returns the rank.
    """
    m = len(D)
    n = len(D[0]) if m else 0

    def swap_rows(a, b):
        if a != b:
            D[a], D[b] = D[b], D[a]
            if U is not None:
                U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        if a != b:
            for row in D:
                row[a], row[b] = row[b], row[a]
            if V is not None:
                for row in V:
                    row[a], row[b] = row[b], row[a]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        rd, rs = D[dst], D[src]
        for j in range(n):
            if rs[j]:
                rd[j] += q * rs[j]
        if U is not None:
            ud, us = U[dst], U[src]
            for j in range(m):
                if us[j]:
                    ud[j] += q * us[j]

    def add_col(dst, src, q):
        for row in D:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                # a remainder is now smaller than the pivot; move it into place
                cand = [(abs(D[i][t]), 0, i) for i in range(t + 1, m) if D[i][t]]
                cand += [(abs(D[t][j]), 1, j) for j in range(t + 1, n) if D[t][j]]
                _, axis, idx = min(cand)
                if axis == 0:
                    swap_rows(t, idx)
                else:
                    swap_cols(t, idx)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1
    return t


def smith_normal_form(A, keep_transforms: bool = False) -> SNFResult:
    """Smith normal form ``D = U A V`` with ``d_1 | d_2 | ...`` on the diagonal.

    ``A`` may be an :class:`IntMatrix` or a nested list.  ``U`` and ``V``
    are only returned when ``keep_transforms`` is set.
    """
    D = _as_dense(A)
    m = len(D)
    n = len(D[0]) if m else (A.cols if isinstance(A, IntMatrix) else 0)
    if m == 0 or n == 0:
        D = [[0] * n for _ in range(m)]
        return SNFResult(D, 0, _identity(m) if keep_transforms else None, _identity(n) if keep_transforms else None)
    U = _identity(m) if keep_transforms else None
    V = _identity(n) if keep_transforms else None
    rank = _dense_snf(D, U, V)
    return SNFResult(D, rank, U, V)


def _eliminate_units(matrix: IntMatrix) -> tuple[int, list[list[int]]]:
    """Peel off unit pivots by sparse elimination.

    Each step pivots on an entry of absolute value 1, clears its column with
    row operations and drops the pivot row and column (the row can be cleared
    by column operations that touch nothing else).  Returns the number of
    pivots taken and the dense residual block.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for r, c, v in matrix.entries:
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)
    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols):
            if c not in cols:
                continue
            cand = [r for r in cols[c] if abs(rows[r][c]) == 1]
            if not cand:
                continue
            r = min(cand, key=lambda x: (len(rows[x]), x))
            u = rows[r][c]
            prow = rows.pop(r)
            for r2 in sorted(cols[c] - {r}):
                row2 = rows[r2]
                f = row2[c] * u
                for c2, v in prow.items():
                    nv = row2.get(c2, 0) - f * v
                    if nv:
                        if c2 not in row2:
                            cols[c2].add(r2)
                        row2[c2] = nv
                    elif c2 in row2:
                        del row2[c2]
                        cols[c2].discard(r2)
                if not row2:
                    del rows[r2]
            for c2 in prow:
                cols[c2].discard(r)
                if not cols[c2]:
                    del cols[c2]
            cols.pop(c, None)
            units += 1
            progress = True
    rlist = sorted(rows)
    clist = sorted(cols)
    cidx = {c: j for j, c in enumerate(clist)}
    dense = []
    for r in rlist:
        row = [0] * len(clist)
        for c, v in rows[r].items():
            row[cidx[c]] = v
        dense.append(row)
    return units, dense


def invariant_factors(A) -> list[int]:
    """Nonzero Smith diagonal of ``A`` in divisibility order."""
    if isinstance(A, IntMatrix):
        matrix = A
    else:
        dense = _as_dense(A)
        matrix = IntMatrix.from_dense(dense) if dense else IntMatrix(0, 0)
    units, residual = _eliminate_units(matrix)
    rest: list[int] = []
    if residual and residual[0]:
        rest = smith_normal_form(residual).invariant_factors
    return [1] * units + rest


# -- abelian groups and homology profiles -------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group ``Z^rank + Z/t_1 + ... `` with ``t_1 | t_2 | ...``."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.rank < 0 or any(t < 2 for t in self.torsion):
            raise ValueError(f"invalid group data rank={self.rank} torsion={self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def from_diagonal(cls, ngens: int, diagonal: Sequence[int]) -> AbelianGroup:
        """Cokernel of a relation matrix on ``ngens`` generators with the given invariant factors."""
        nonzero = [abs(d) for d in diagonal if d]
        return cls(ngens - len(nonzero), tuple(d for d in nonzero if d > 1))

    @classmethod
    def parse(cls, text: str) -> AbelianGroup:
        text = text.strip()
        if text == "0":
            return cls()
        rank, torsion = 0, []
        for term in text.split("+"):
            if term == "Z":
                rank += 1
            elif term.startswith("Z^"):
                rank += int(term[2:])
            elif term.startswith("Z/"):
                torsion.append(int(term[2:]))
            else:
                raise ValueError(f"cannot parse group term {term!r}")
        return cls(rank, tuple(torsion))

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def direct_sum(self, other: AbelianGroup) -> AbelianGroup:
        diag = [0] * (self.rank + other.rank) + list(self.torsion) + list(other.torsion)
        n = len(diag)
        factors = invariant_factors([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
        return AbelianGroup.from_diagonal(n, factors)

    def __str__(self):
        terms = []
        if self.rank == 1:
            terms.append("Z")
        elif self.rank > 1:
            terms.append(f"Z^{self.rank}")
        terms += [f"Z/{t}" for t in self.torsion]
        return "+".join(terms) or "0"


@dataclass(frozen=True)
class HomologyProfile:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "betti", tuple(self.betti))
        object.__setattr__(self, "torsion", tuple(tuple(t) for t in self.torsion))
        if len(self.betti) != len(self.torsion):
            raise ValueError("betti and torsion cover different degrees")
        for d in range(len(self.betti)):
            self.group(d)  # validates divisibility

    @classmethod
    def from_groups(cls, groups: Sequence[AbelianGroup]) -> HomologyProfile:
        return cls(tuple(g.rank for g in groups), tuple(g.torsion for g in groups))

    @property
    def top_degree(self) -> int:
        return len(self.betti) - 1

    def group(self, d: int) -> AbelianGroup:
        if 0 <= d < len(self.betti):
            return AbelianGroup(self.betti[d], self.torsion[d])
        return AbelianGroup()

    def groups(self) -> list[AbelianGroup]:
        return [self.group(d) for d in range(len(self.betti))]

    def direct_sum(self, other: HomologyProfile) -> HomologyProfile:
        top = max(len(self.betti), len(other.betti))
        return HomologyProfile.from_groups([self.group(d).direct_sum(other.group(d)) for d in range(top)])

    def text(self) -> str:
        return " ".join(f"H{d}={g}" for d, g in enumerate(self.groups()))

    @classmethod
    def parse(cls, text: str) -> HomologyProfile:
        groups = []
        for d, item in enumerate(text.split()):
            label, _, value = item.partition("=")
            if label != f"H{d}":
                raise ValueError(f"expected H{d}, got {label!r}")
            groups.append(AbelianGroup.parse(value))
        return cls.from_groups(groups)

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}

    @classmethod
    def from_json(cls, data: dict) -> HomologyProfile:
        return cls(tuple(data["betti"]), tuple(tuple(t) for t in data["torsion"]))

    def __str__(self):
        return self.text()


def check_boundaries(boundary: Sequence[IntMatrix]) -> None:
    for d in range(1, len(boundary)):
        if not (boundary[d - 1] @ boundary[d]).is_zero():
            raise InconsistentComplex(f"boundary composition in degree {d} is nonzero")


def chain_homology(sizes: Sequence[int], boundary: Sequence[IntMatrix]) -> HomologyProfile:
    """Homology of ``C_top -> ... -> C_0`` where ``boundary[d]: C_d -> C_{d-1}``.

    ``boundary[0]`` is the zero map out of degree 0.
    """
    top = len(sizes) - 1
    for d in range(1, top + 1):
        b = boundary[d]
        if (b.rows, b.cols) != (sizes[d - 1], sizes[d]):
            raise ValueError(f"boundary {d} has shape {b.rows}x{b.cols}, expected {sizes[d-1]}x{sizes[d]}")
    check_boundaries(boundary)
    factors = [[] for _ in range(top + 2)]
    for d in range(1, top + 1):
        factors[d] = invariant_factors(boundary[d])
    groups = []
    for d in range(top + 1):
        rank_out = len(factors[d]) if d >= 1 else 0
        rank_in = len(factors[d + 1])
        groups.append(
            AbelianGroup(sizes[d] - rank_out - rank_in, tuple(t for t in factors[d + 1] if t > 1))
        )
    return HomologyProfile.from_groups(groups)


def homology(qc) -> HomologyProfile:
    """Integral homology of a built quotient complex (whole complex)."""
    return chain_homology([len(c) for c in qc.cells], qc.boundary)


def component_homology(qc) -> list[HomologyProfile]:
    from .quotient import components

    return [homology(c) for c in components(qc)]


# -- derived checks ------------------------------------------------------------

def is_sphere_profile(h: HomologyProfile, n: int) -> bool:
    if h.top_degree != n:
        return False
    expected = [1] + [0] * (n - 1) + [1] if n >= 1 else [1]
    return list(h.betti) == expected and not any(h.torsion)


@dataclass(frozen=True)
class PDVerdict:
    compatible: bool
    reason: str
    degree: int | None = None

    def __bool__(self):
        return self.compatible


def pd_compatible(h: HomologyProfile, n: int, check_torsion: bool = False) -> PDVerdict:
    """Test the Betti (and optionally torsion) symmetry forced by Poincare duality.

    Raises :class:`NotACandidate` when ``H_0``, ``H_n`` are not both ``Z``.
    """
    if h.top_degree != n:
        raise NotACandidate(f"profile covers degrees 0..{h.top_degree}, expected 0..{n}")
    if h.betti[0] != 1 or h.torsion[0]:
        raise NotACandidate(f"H0={h.group(0)}: not connected")
    if h.betti[n] != 1 or h.torsion[n]:
        raise NotACandidate(f"H{n}={h.group(n)}: no fundamental class")
    for d in range(n + 1):
        if h.betti[d] != h.betti[n - d]:
            return PDVerdict(False, f"betti_{d} = {h.betti[d]} != betti_{n - d} = {h.betti[n - d]}", d)
    if check_torsion:
        for d in range(n):
            if h.torsion[d] != h.torsion[n - d - 1]:
                return PDVerdict(
                    False, f"torsion of H{d} {h.torsion[d]} != torsion of H{n - d - 1} {h.torsion[n - d - 1]}", d
                )
    return PDVerdict(True, "symmetric")


def suspension_shift_check(h_base: HomologyProfile, h_ext: HomologyProfile) -> bool:
    """Whether ``h_ext`` is the double-suspension shift of ``h_base``."""
    if h_ext.top_degree != h_base.top_degree + 2:
        return False
    if h_ext.group(0) != AbelianGroup(1) or not h_ext.group(1).is_trivial or not h_ext.group(2).is_trivial:
        return False
    return all(h_ext.group(j + 2) == h_base.group(j) for j in range(1, h_base.top_degree + 1))


def generation_rank(h: HomologyProfile | AbelianGroup, d: int | None = None) -> int:
    """Minimal number of generators of ``H_d`` (or of the given group)."""
    g = h if isinstance(h, AbelianGroup) else h.group(d)
    return g.rank + len(g.torsion)
