"""Matrices of homogeneous polynomials with degree shifts."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from ..algebra import Polynomial, Ring, format_polynomial


@dataclass(frozen=True)
class GradedMatrix:
    """``entries[i][j]`` has degree ``row_shifts[i] - col_shifts[j]`` when nonzero.

    A vector of degree d in the source has its j-th component in R_{d + col_shifts[j]};
    its image has the i-th component in R_{d + row_shifts[i]}.
    """

    ring: Ring
    entries: tuple
    shape: tuple
    row_shifts: tuple
    col_shifts: tuple
    weights: tuple

    @property
    def nrows(self) -> int:
        return self.shape[0]

    @property
    def ncols(self) -> int:
        return self.shape[1]

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def transpose(self) -> "GradedMatrix":
        cols = tuple(tuple(self.entries[i][j] for i in range(self.nrows)) for j in range(self.ncols))
        return GradedMatrix(
            self.ring,
            cols,
            (self.ncols, self.nrows),
            tuple(-s for s in self.col_shifts),
            tuple(-s for s in self.row_shifts),
            self.weights,
        )

    @property
    def T(self) -> "GradedMatrix":
        return self.transpose()

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        zero = self.ring.zero()
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return graded_matrix(self.ring, rows, self.weights, shape=(self.nrows, other.ncols))

    def map_vector(self, v: Sequence[Polynomial]) -> list:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for a matrix with {self.ncols} columns")
        zero = self.ring.zero()
        out = []
        for row in self.entries:
            acc = zero
            for a, b in zip(row, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def rows_text(self) -> list:
        return [[format_polynomial(p) for p in row] for row in self.entries]

    def __str__(self):
        return "\n".join("(" + ", ".join(r) + ")" for r in self.rows_text())


def infer_shifts(nodes: Sequence[int], edges: Sequence[tuple], start_order: Sequence) -> dict:
    """Solve shift[a] - shift[b] = e over a graph of (a, b, e) constraints.

    Each connected component is anchored at 0 on its first node in
    ``start_order``; isolated nodes get shift 0.  Raises on inconsistency.
    """
    adj: dict = {n: [] for n in nodes}
    for a, b, e in edges:
        adj[a].append((b, e))
        adj[b].append((a, -e))
    shift: dict = {}
    for s in start_order:
        if s in shift:
            continue
        shift[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, e in adj[u]:
                # shift[u] - shift[v] = e
                want = shift[u] - e
                if v not in shift:
                    shift[v] = want
                    queue.append(v)
                elif shift[v] != want:
                    raise ValueError(f"inconsistent degree shifts at {v}: {shift[v]} vs {want}")
    return shift


def _entry_degree(p: Polynomial, weights) -> int:
    if not p.is_homogeneous(weights):
        raise ValueError(f"matrix entry {p} is not homogeneous")
    return p.degree(weights)


def graded_matrix(
    ring: Ring,
    entries: Sequence[Sequence],
    weights: Sequence[int] | None = None,
    shape: tuple | None = None,
) -> GradedMatrix:
    """Build a graded matrix from polynomials or polynomial strings, inferring shifts."""
    weights = tuple(weights) if weights is not None else (1,) * ring.nvars
    rows = [[ring.parse(e) if isinstance(e, str) else e for e in row] for row in entries]
    if shape is None:
        if not rows:
            raise ValueError("empty matrix needs an explicit shape")
        shape = (len(rows), len(rows[0]))
    nr, nc = shape
    if len(rows) != nr or any(len(r) != nc for r in rows):
        raise ValueError(f"entries do not form a {nr}x{nc} matrix")
    edges = []
    for i, row in enumerate(rows):
        for j, p in enumerate(row):
            if p:
                edges.append((("r", i), ("c", j), _entry_degree(p, weights)))
    nodes = [("r", i) for i in range(nr)] + [("c", j) for j in range(nc)]
    shift = infer_shifts(nodes, edges, nodes)
    return GradedMatrix(
        ring,
        tuple(tuple(r) for r in rows),
        (nr, nc),
        tuple(shift[("r", i)] for i in range(nr)),
        tuple(shift[("c", j)] for j in range(nc)),
        weights,
    )


def zero_matrix(ring: Ring, nrows: int, ncols: int, weights=None) -> GradedMatrix:
    z = ring.zero()
    return graded_matrix(ring, [[z] * ncols for _ in range(nrows)], weights, shape=(nrows, ncols))


def jacobian(gens: Sequence[Polynomial], weights: Sequence[int] | None = None) -> GradedMatrix:
    """Rows indexed by variables, columns by generators: entry (v, g) = d f_g / d x_v."""
    if not gens:
        raise ValueError("jacobian of an empty generator list")
    ring = gens[0].ring
    rows = [[f.diff(v) for f in gens] for v in range(ring.nvars)]
    return graded_matrix(ring, rows, weights, shape=(ring.nvars, len(gens)))


def chain_shifts(maps: Sequence[GradedMatrix], anchor: int = 1) -> list:
    """Joint shifts for modules M_0 -> M_1 -> ... along maps applied in order.

    ``maps[k]`` sends M_k to M_{k+1}; the returned list holds one shift
    vector per module.  Components are anchored on module ``anchor`` first.
    """
    sizes = [maps[0].ncols] + [m.nrows for m in maps]
    for k in range(1, len(maps)):
        if maps[k].ncols != maps[k - 1].nrows:
            raise ValueError(f"maps {k - 1} and {k} are not composable")
    nodes = [(k, i) for k, n in enumerate(sizes) for i in range(n)]
    edges = []
    for k, m in enumerate(maps):
        for i in range(m.nrows):
            for j in range(m.ncols):
                p = m.entries[i][j]
                if p:
                    edges.append(((k + 1, i), (k, j), _entry_degree(p, m.weights)))
    order = [(anchor, i) for i in range(sizes[anchor])] + nodes
    shift = infer_shifts(nodes, edges, order)
    return [tuple(shift[(k, i)] for i in range(n)) for k, n in enumerate(sizes)]
