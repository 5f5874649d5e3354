"""Independent oracles used by unit and acceptance tests."""

from __future__ import annotations

import itertools
from math import gcd

from surfcob.homology import IntMatrix


def gcd_of_minors(mat: IntMatrix, k: int) -> int:
    """gcd of all k x k minors, 0 when every minor vanishes."""
    rows = range(mat.rows)
    cols = range(mat.cols)
    g = 0
    for rsel in itertools.combinations(rows, k):
        for csel in itertools.combinations(cols, k):
            minor = _det([[mat.data[i][j] for j in csel] for i in rsel])
            g = gcd(g, minor)
    return g


def _det(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j, head in enumerate(rows[0]):
        if head == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total += (-1) ** j * head * _det(minor)
    return total


def minors_invariant_factors(mat: IntMatrix) -> list[int]:
    """Invariant factors d_k = gcd_k / gcd_{k-1} from the gcd-of-minors
    characterization; trailing zeros trimmed."""
    out = []
    prev = 1
    for k in range(1, min(mat.rows, mat.cols) + 1):
        g = gcd_of_minors(mat, k)
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def first_satisfying_vector(p_rows: list[list[int]], targets: list[int]):
    """Reference lexicographic search: +1 sorts before -1, first declared
    point most significant."""
    n = len(p_rows[0]) if p_rows else 0
    for vec in itertools.product((1, -1), repeat=n):
        if all(
            sum(m * s for m, s in zip(row, vec)) == t
            for row, t in zip(p_rows, targets)
        ):
            return vec
    return None
