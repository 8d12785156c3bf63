"""Closed-form cohomology of O(d) on projective space, Kuenneth and Serre duality."""

from __future__ import annotations

from math import comb
from typing import Sequence


def bott_projective(k: int, d: int, i: int) -> int:
    """h^i(P^k, O(d)).  ``k = 0`` is a point."""
    if k < 0:
        raise ValueError("dimension must be non-negative")
    if i == 0 and d >= 0:
        return comb(d + k, k)
    if i == k and d <= -k - 1:
        return comb(-d - 1, k)
    return 0


def projective_table(k: int, d: int) -> list:
    return [bott_projective(k, d, i) for i in range(k + 1)]


def kunneth(hA: Sequence[int], hB: Sequence[int], i: int) -> int:
    """h^i of an exterior product from the two cohomology tables."""
    return sum(hA[j] * hB[i - j] for j in range(len(hA)) if 0 <= i - j < len(hB))


def kunneth_table(hA: Sequence[int], hB: Sequence[int]) -> list:
    return [kunneth(hA, hB, i) for i in range(len(hA) + len(hB) - 1)]


def serre_duality_check(k: int, d: int) -> bool:
    """h^i(O(d)) == h^(k-i)(O(-d-k-1)) for every i."""
    return all(
        bott_projective(k, d, i) == bott_projective(k, -d - k - 1, k - i) for i in range(k + 1)
    )
