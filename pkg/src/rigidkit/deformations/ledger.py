"""Local-to-global bookkeeping for Ext^1 and Ext^2 of the cotangent sheaf."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence


@dataclass(frozen=True)
class Estimate:
    """Exact value, or a closed interval [low, high] when the sequences do not pin it down."""

    low: int
    high: int

    @property
    def exact(self) -> bool:
        return self.low == self.high

    @property
    def value(self) -> int | None:
        return self.low if self.exact else None

    @property
    def status(self) -> str:
        return "EXACT" if self.exact else "INTERVAL"

    def __str__(self):
        return f"{self.low} EXACT" if self.exact else f"[{self.low}, {self.high}] INTERVAL"


@dataclass(frozen=True)
class DeformationLedger:
    h1T: int
    h2T: int
    local_t1: tuple
    local_ext2: tuple
    ext1: Estimate
    ext2: Estimate
    notes: tuple = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {
            "h1T": self.h1T,
            "h2T": self.h2T,
            "local_t1": list(self.local_t1),
            "local_ext2": list(self.local_ext2),
            "ext1": str(self.ext1),
            "ext2": str(self.ext2),
        }


def local_to_global(
    h1T: int,
    h2T: int,
    local_t1: Sequence[int],
    local_ext2: Sequence[int],
    isolated: bool = True,
) -> DeformationLedger:
    """Assemble global Ext^i(Omega, O) from H^i(T) and the local Ext sheaves.

    The four-term sequence 0 -> H^1(T) -> Ext^1 -> H^0(Ext^1) -> H^2(T) makes
    Ext^1 = h1T + sum(local_t1) once H^2(T) = 0 (or the local part vanishes).
    Ext^2 vanishes when H^2(T) = 0, the local Ext^2 vanish and H^1 of the local
    T^1 sheaf is zero, which holds for zero-dimensional support.
    """
    t1 = tuple(int(x) for x in local_t1)
    e2 = tuple(int(x) for x in local_ext2)
    s1 = sum(t1)
    s2 = sum(e2)
    notes = []
    if h2T == 0 or s1 == 0:
        ext1 = Estimate(h1T + s1, h1T + s1)
    else:
        ext1 = Estimate(h1T + max(0, s1 - h2T), h1T + s1)
        notes.append("H^2(T) != 0: the map H^0(Ext^1) -> H^2(T) is not determined")
    if h2T == 0 and s2 == 0 and isolated:
        ext2 = Estimate(0, 0)
    else:
        high = h2T + s2 + (0 if isolated else s1)
        ext2 = Estimate(max(0, h2T - s1), high)
        notes.append("Ext^2 bounded only: obstruction vanishing hypotheses fail")
    return DeformationLedger(h1T, h2T, t1, e2, ext1, ext2, tuple(notes))
