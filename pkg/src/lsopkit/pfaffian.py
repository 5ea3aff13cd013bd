"""Pfaffians of skew-symmetric arrays.

Two independent evaluation routes are provided:

* ``pf_expand``    -- exact recursive expansion along the last index, with
                      alternating signs; exponential cost, size-capped, the
                      ground-truth oracle;
* ``pf_eliminate`` -- cubic-cost skew-symmetric Gaussian elimination with
                      greedy full pivoting on the largest-magnitude entry.

Both return 1 for the empty array.  On Fraction entries both are exact and
must agree identically; elimination returns an exact structural 0 when a
pivot step finds no nonzero entry.

``check_identity_even`` / ``check_identity_odd`` evaluate the two minor
identities that relate a Pfaffian bordered by four extra indices to
three-fold products of smaller Pfaffians (the even identity fixes an
even-cardinality base set, the odd identity an odd one).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Dict, List, Sequence, Tuple

from .errors import DimensionError, ExpansionLimitError, IncompleteTableError
from .modes import Scalar

EXPANSION_CAP_DEFAULT = 10


class SkewArray:
    """Skew-symmetric array of even size, storing only the strict upper triangle.

    The accessor supplies e(j,i) = -e(i,j) and e(i,i) = 0; negative logical
    sizes or odd sizes are rejected by the operations, not the container.
    """

    __slots__ = ("size", "_upper")

    def __init__(self, size: int, upper: Dict[Tuple[int, int], Scalar]):
        self.size = size
        for (i, j) in upper:
            if not (0 <= i < j < size):
                raise IncompleteTableError(f"entry ({i},{j}) outside strict upper triangle of size {size}")
        self._upper = dict(upper)

    @staticmethod
    def from_entry_fn(size: int, fn: Callable[[int, int], Scalar]) -> "SkewArray":
        return SkewArray(size, {(i, j): fn(i, j) for i in range(size) for j in range(i + 1, size)})

    @staticmethod
    def from_dense(rows: Sequence[Sequence[Scalar]]) -> "SkewArray":
        n = len(rows)
        return SkewArray(n, {(i, j): rows[i][j] for i in range(n) for j in range(i + 1, n)})

    def entry(self, i: int, j: int) -> Scalar:
        if i == j:
            return 0
        if i < j:
            if (i, j) not in self._upper:
                raise IncompleteTableError(f"entry ({i},{j}) missing")
            return self._upper[(i, j)]
        return -self.entry(j, i)

    def dense(self) -> List[List[Scalar]]:
        return [[self.entry(i, j) for j in range(self.size)] for i in range(self.size)]

    def submatrix(self, indices: Sequence[int]) -> "SkewArray":
        idx = list(indices)
        return SkewArray.from_entry_fn(len(idx), lambda p, q: self.entry(idx[p], idx[q]))


def pf_expand(s: SkewArray, cap: int = EXPANSION_CAP_DEFAULT) -> Scalar:
    """Pfaffian by recursive expansion along the last index.

    Refuses sizes above ``cap`` (the term count grows like (2n-1)!!); use
    pf_eliminate for larger arrays.
    """
    if s.size % 2:
        raise DimensionError(f"Pfaffian needs even size, got {s.size}")
    if s.size > cap:
        raise ExpansionLimitError(
            f"expansion refused for size {s.size} > cap {cap}; use pf_eliminate instead"
        )
    entry = s.entry

    @lru_cache(maxsize=None)
    def rec(indices: Tuple[int, ...]) -> Scalar:
        if not indices:
            return 1
        if len(indices) == 2:
            return entry(indices[0], indices[1])
        last = indices[-1]
        rest = indices[:-1]
        total = 0
        for k, ik in enumerate(rest):
            term = entry(ik, last) * rec(rest[:k] + rest[k + 1:])
            total = total + term if k % 2 == 0 else total - term
        return total

    return rec(tuple(range(s.size)))


def pf_eliminate(s: SkewArray) -> Scalar:
    """Pfaffian by skew-symmetric elimination, O(n^3).

    Greedy full pivoting: each 2x2 step pulls the largest-magnitude
    remaining entry into pivot position via symmetric row/column swaps
    (each swap flips the sign).  A step with no nonzero entry left means
    the array is structurally singular and the Pfaffian is exactly 0.
    """
    n = s.size
    if n % 2:
        raise DimensionError(f"Pfaffian needs even size, got {n}")
    if n == 0:
        return 1
    m = s.dense()
    sign = 1
    result = None  # running product, seeded by the first pivot to keep the scalar type
    for k in range(0, n, 2):
        pi, pj, best = -1, -1, 0.0
        for i in range(k, n):
            row = m[i]
            for j in range(i + 1, n):
                v = _magnitude(row[j])
                if v > best:
                    best, pi, pj = v, i, j
        if pi < 0:
            zero = m[0][0] * 0
            return zero
        if pi != k:
            _swap_sym(m, pi, k)
            sign = -sign
            if pj == k:
                pj = pi
        if pj != k + 1:
            _swap_sym(m, pj, k + 1)
            sign = -sign
        a = m[k][k + 1]
        result = a if result is None else result * a
        rk, rk1 = m[k], m[k + 1]
        for i in range(k + 2, n):
            bi0, bi1 = rk[i], rk1[i]
            if bi0 == 0 and bi1 == 0:
                continue
            ri = m[i]
            for j in range(i + 1, n):
                upd = (bi1 * rk[j] - bi0 * rk1[j]) / a
                if upd != 0:
                    ri[j] += upd
                    m[j][i] = -ri[j]
    return result if sign > 0 else -result


def pf_indices(s: SkewArray, indices: Sequence[int], method: str = "eliminate") -> Scalar:
    """Pfaffian of the sub-array picked out by an ordered index list.

    A repeated index forces the value 0 (antisymmetry).  The order of the
    list matters: transposing two indices negates the result, which the
    sub-array construction realizes automatically.
    """
    idx = list(indices)
    if len(idx) % 2:
        raise DimensionError(f"index list must have even length, got {len(idx)}")
    if len(set(idx)) != len(idx):
        return 0
    sub = s.submatrix(idx)
    if method == "expand":
        return pf_expand(sub)
    return pf_eliminate(sub)


def check_identity_even(s: SkewArray, base: Sequence[int], a: int, b: int, c: int, d: int) -> Scalar:
    """Residual |LHS - RHS| of the even-base minor identity.

    LHS = Pf(base,a,b,c,d) * Pf(base); RHS is the alternating three-product
    sum Pf(base,a,b)Pf(base,c,d) - Pf(base,a,c)Pf(base,b,d)
    + Pf(base,a,d)Pf(base,b,c).  Exact zero on Fraction input.
    """
    base = list(base)
    if len(base) % 2:
        raise DimensionError(f"even identity needs an even base set, got {len(base)} indices")
    pf = lambda ix: pf_indices(s, ix)
    lhs = pf(base + [a, b, c, d]) * pf(base)
    rhs = (
        pf(base + [a, b]) * pf(base + [c, d])
        - pf(base + [a, c]) * pf(base + [b, d])
        + pf(base + [a, d]) * pf(base + [b, c])
    )
    return abs(lhs - rhs)


def check_identity_odd(s: SkewArray, base: Sequence[int], a: int, b: int, c: int, d: int) -> Scalar:
    """Residual |LHS - RHS| of the odd-base minor identity.

    LHS = Pf(base,a,b,c) * Pf(base,d); RHS = Pf(base,a,b,d)Pf(base,c)
    - Pf(base,a,c,d)Pf(base,b) + Pf(base,b,c,d)Pf(base,a).
    """
    base = list(base)
    if len(base) % 2 == 0:
        raise DimensionError(f"odd identity needs an odd base set, got {len(base)} indices")
    pf = lambda ix: pf_indices(s, ix)
    lhs = pf(base + [a, b, c]) * pf(base + [d])
    rhs = (
        pf(base + [a, b, d]) * pf(base + [c])
        - pf(base + [a, c, d]) * pf(base + [b])
        + pf(base + [b, c, d]) * pf(base + [a])
    )
    return abs(lhs - rhs)


def _magnitude(v: Scalar) -> float:
    if v == 0:
        return 0.0
    try:
        return abs(float(v))
    except OverflowError:
        return float("inf")


def _swap_sym(m: List[List[Scalar]], i: int, j: int) -> None:
    # symmetric row+column swap; preserves skew symmetry, flips Pf sign
    m[i], m[j] = m[j], m[i]
    for row in m:
        row[i], row[j] = row[j], row[i]
