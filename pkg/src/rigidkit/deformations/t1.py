"""Dimensions of T^1 and T^2 as graded subquotients over R = S/I."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import lcm
from typing import Sequence

from ..algebra import (
    INFINITE,
    Polynomial,
    Reducer,
    buchberger,
    format_polynomial,
    graded_piece_basis,
    quotient_dimension,
    sparse_rank,
    standard_monomials,
)
from .graded import GradedMatrix, chain_shifts, graded_matrix, zero_matrix
from .presentation import SingularityPresentation

DEFAULT_DEGREE_BOUND = 12
DEFAULT_WINDOW = 4


def default_degree_bound() -> int:
    raw = os.environ.get("RIGIDKIT_DEGREE_BOUND", "").strip()
    return int(raw) if raw else DEFAULT_DEGREE_BOUND


class NoStabilization(RuntimeError):
    def __init__(self, report: "T1Report"):
        super().__init__(
            f"NO-STABILIZATION: contributions in the last {report.window} degrees "
            f"up to {report.degree_bound} are not all zero"
        )
        self.report = report


class ComplexFailure(RuntimeError):
    def __init__(self, residues: list):
        super().__init__(f"COMPLEX-FAILURE: composite is nonzero modulo the ideal at {len(residues)} entries")
        self.residues = residues


@dataclass(frozen=True)
class DegreePiece:
    degree: int
    dim_middle: int
    dim_kernel: int
    dim_image: int

    @property
    def contribution(self) -> int:
        return self.dim_kernel - self.dim_image


@dataclass
class T1Report:
    method: str  # hypersurface or graded-subquotient
    total: int | float
    pieces: list = field(default_factory=list)
    degree_bound: int | None = None
    window: int = 0
    stabilized: bool = True
    ext2: int | None = None

    @property
    def finite(self) -> bool:
        return self.total != INFINITE

    def per_degree(self) -> dict:
        return {p.degree: p.contribution for p in self.pieces if p.contribution}

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "total": self.total if self.finite else "INFINITE",
            "per_degree": {str(k): v for k, v in self.per_degree().items()},
            "degree_bound": self.degree_bound,
            "window": self.window,
            "stabilized": self.stabilized,
        }


def hypersurface_t1(f: Polynomial, weights: Sequence[int] | None = None) -> T1Report:
    """dim S/(f, df/dx_1, ..., df/dx_n); Ext^2 of a hypersurface vanishes."""
    ring = f.ring
    gens = [f] + [f.diff(i) for i in range(ring.nvars)]
    gb = buchberger([g for g in gens if g], ring=ring)
    dim = quotient_dimension(gb)
    if dim == INFINITE:
        return T1Report("hypersurface", INFINITE, ext2=None)
    counts: dict = {}
    w = weights or (1,) * ring.nvars
    for m in standard_monomials(gb):
        d = sum(a * b for a, b in zip(w, m))
        counts[d] = counts.get(d, 0) + 1
    pieces = [DegreePiece(d, c, c, 0) for d, c in sorted(counts.items())]
    return T1Report("hypersurface", dim, pieces, ext2=0)


class _GradedRing:
    """Monomial bases of R_d and normal forms of monomials, both cached."""

    def __init__(self, pres: SingularityPresentation):
        self.pres = pres
        self.gb = pres.basis
        self.reduce = Reducer(self.gb)
        self._basis: dict = {}
        self._nf: dict = {}

    def basis(self, d: int) -> list:
        if d < 0:
            return []
        b = self._basis.get(d)
        if b is None:
            b = graded_piece_basis(self.gb, d, self.pres.weights)
            self._basis[d] = b
        return b

    def nf_monomial(self, m) -> dict:
        r = self._nf.get(m)
        if r is None:
            r = self.reduce.terms({m: 1})
            self._nf[m] = r
        return r

    def times(self, p: Polynomial, m) -> dict:
        """Normal form of p * x^m as a term dict."""
        out: dict = {}
        for e, c in p.terms.items():
            for s, v in self.nf_monomial(tuple(a + b for a, b in zip(e, m))).items():
                x = out.get(s, 0) + c * v
                if x:
                    out[s] = x
                else:
                    out.pop(s, None)
        return out


def _integer_row(vec: dict) -> dict:
    d = 1
    for v in vec.values():
        d = lcm(d, v.denominator)
    return {k: int(v * d) for k, v in vec.items()}


def _image_vectors(R: _GradedRing, M: GradedMatrix, src_shifts, d: int) -> list:
    """Images of the monomial basis of the degree-d source piece, keyed by (row, monomial)."""
    vecs = []
    for j in range(M.ncols):
        col = [M.entries[i][j] for i in range(M.nrows)]
        for m in R.basis(d + src_shifts[j]):
            vec: dict = {}
            for i, p in enumerate(col):
                if p:
                    for s, v in R.times(p, m).items():
                        vec[(i, s)] = v
            vecs.append(_integer_row(vec))
    return vecs


def composite_residues(outer: GradedMatrix, inner: GradedMatrix, pres: SingularityPresentation) -> list:
    """Entries of outer * inner that are nonzero modulo the ideal, as (i, j, residue)."""
    reduce = Reducer(pres.basis)
    comp = outer @ inner
    out = []
    for i, row in enumerate(comp.entries):
        for j, p in enumerate(row):
            r = reduce(p)
            if r:
                out.append((i, j, r))
    return out


def graded_subquotient_dim(
    outer: GradedMatrix,
    inner: GradedMatrix,
    pres: SingularityPresentation,
    degree_bound: int | None = None,
    window: int = DEFAULT_WINDOW,
) -> T1Report:
    """Sum over degrees of dim ker(outer_d) - dim im(inner_d) on graded pieces of R."""
    if degree_bound is None:
        degree_bound = default_degree_bound()
    residues = composite_residues(outer, inner, pres)
    if residues:
        raise ComplexFailure(residues)
    src, mid, _ = chain_shifts([inner, outer])
    R = _GradedRing(pres)
    start = min(-t for t in mid) if mid else 0
    pieces = []
    for d in range(start, degree_bound + 1):
        dim_mid = sum(len(R.basis(d + t)) for t in mid)
        if dim_mid == 0:
            pieces.append(DegreePiece(d, 0, 0, 0))
            continue
        rank_out = sparse_rank(_image_vectors(R, outer, mid, d))
        rank_in = sparse_rank(_image_vectors(R, inner, src, d))
        pieces.append(DegreePiece(d, dim_mid, dim_mid - rank_out, rank_in))
    tail = pieces[-window:] if window else []
    stabilized = len(pieces) >= window and all(p.contribution == 0 for p in tail)
    report = T1Report(
        "graded-subquotient",
        sum(p.contribution for p in pieces),
        pieces,
        degree_bound,
        window,
        stabilized,
    )
    if not stabilized:
        raise NoStabilization(report)
    return report


def presentation_t1(
    pres: SingularityPresentation,
    degree_bound: int | None = None,
    window: int = DEFAULT_WINDOW,
    method: str | None = None,
) -> T1Report:
    """T^1 of a presentation, with Ext^2 filled in when the data allows it.

    Hypersurfaces use the Jacobian quotient unless ``method`` asks for the
    graded route; other presentations need a declared syzygy matrix.
    """
    if method is None:
        method = "hypersurface" if len(pres.generators) == 1 else "graded-subquotient"
    if method == "hypersurface":
        if len(pres.generators) != 1:
            raise ValueError("the hypersurface shortcut needs exactly one generator")
        return hypersurface_t1(pres.generators[0], pres.weights)
    jac_t = pres.jacobian().T
    if len(pres.generators) == 1:
        outer = zero_matrix(pres.ring, 1, 1, pres.weights)
    elif pres.syzygy is None:
        raise ValueError(f"presentation {pres.label!r} declares no syzygy matrix")
    else:
        outer = pres.syzygy.T
    report = graded_subquotient_dim(outer, jac_t, pres, degree_bound, window)
    if len(pres.generators) == 1:
        report.ext2 = 0
    elif pres.second_syzygy is not None:
        report.ext2 = graded_subquotient_dim(
            pres.second_syzygy.T, pres.syzygy.T, pres, degree_bound, window
        ).total
    return report


def verify_membership(vectors: Sequence[Sequence], matrix: GradedMatrix, pres: SingularityPresentation) -> list:
    """For each vector v, whether matrix * v vanishes modulo the ideal."""
    reduce = Reducer(pres.basis)
    out = []
    for v in vectors:
        v = [pres.ring.parse(e) if isinstance(e, str) else e for e in v]
        out.append(all(not reduce(p) for p in matrix.map_vector(v)))
    return out


@dataclass
class ComplexCheck:
    """Composite ``maps[k+1] * maps[k]`` and its entries that survive modulo the ideal."""

    index: int
    composite: list
    residues: list

    @property
    def ok(self) -> bool:
        return not self.residues


@dataclass
class ComplexReport:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def lines(self) -> list:
        out = []
        for c in self.checks:
            state = "zero mod I" if c.ok else f"{len(c.residues)} nonzero entries"
            out.append(f"composite {c.index + 1}->{c.index + 2}: {state}")
            for i, j, r in c.residues:
                out.append(f"  entry ({i + 1},{j + 1}) residue {format_polynomial(r)}")
        return out


def verify_complex(maps: Sequence[GradedMatrix], pres: SingularityPresentation) -> ComplexReport:
    """Check that consecutive maps (listed in order of application) compose to zero mod I."""
    reduce = Reducer(pres.basis)
    checks = []
    for k in range(len(maps) - 1):
        first, second = maps[k], maps[k + 1]
        if second.ncols != first.nrows:
            raise ValueError(f"maps {k + 1} and {k + 2} are not composable: {first.shape}, {second.shape}")
        comp = second @ first
        residues = []
        for i, row in enumerate(comp.entries):
            for j, p in enumerate(row):
                r = reduce(p)
                if r:
                    residues.append((i, j, r))
        checks.append(ComplexCheck(k, [list(r) for r in comp.entries], residues))
    return ComplexReport(checks)


def as_matrix(pres: SingularityPresentation, rows: Sequence[Sequence]) -> GradedMatrix:
    return graded_matrix(pres.ring, rows, pres.weights)
