"""Dense linear-algebra kernels at desk scale (n <= 64).

Everything here is implemented in-repo on plain lists so that the numerical
oracles stay auditable: a pivoted determinant (exact on Fractions), a linear
solver, an implicit-shift QL eigensolver for symmetric tridiagonal matrices,
and a Hessenberg + double-shift QR eigensolver for general real matrices
with a characteristic-polynomial root oracle for sizes <= 6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import ConvergenceError, DimensionError
from .modes import Scalar, is_exact

Matrix = List[List[Scalar]]

_EPS = 2.0 ** -52

MAX_DENSE_SIZE = 64


# ---------------------------------------------------------------------------
# matrix helpers
# ---------------------------------------------------------------------------

def zeros(rows: int, cols: int) -> Matrix:
    return [[0.0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1.0
    return m


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    bt = transpose(b)
    return [[sum(a[i][p] * bt[j][p] for p in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(a: Matrix, v: Sequence[Scalar]) -> List[Scalar]:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, s: Scalar) -> Matrix:
    return [[x * s for x in row] for row in a]


def inf_norm(a: Matrix) -> float:
    return max((sum(abs(float(x)) for x in row) for row in a), default=0.0)


def max_abs(a: Matrix) -> float:
    return max((abs(float(x)) for row in a for x in row), default=0.0)


def vec_inf_norm(v: Sequence[Scalar]) -> float:
    return max((abs(float(x)) for x in v), default=0.0)


def _check_square(a: Matrix, cap: int = MAX_DENSE_SIZE) -> int:
    n = len(a)
    if any(len(row) != n for row in a):
        raise DimensionError("matrix is not square")
    if n > cap:
        raise DimensionError(f"matrix size {n} exceeds the desk-scale cap {cap}")
    return n


def _exact_matrix(a: Matrix) -> bool:
    return all(is_exact(x) for row in a for x in row)


# ---------------------------------------------------------------------------
# determinant and linear solves
# ---------------------------------------------------------------------------

def dense_det(a: Matrix) -> Scalar:
    """Determinant by pivoted elimination; exact when all entries are exact."""
    n = _check_square(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    exact = _exact_matrix(m)
    det = Fraction(1) if exact else 1.0
    sign = 1
    for k in range(n):
        p = _pick_pivot(m, k, exact)
        if p is None:
            return det * 0
        if p != k:
            m[k], m[p] = m[p], m[k]
            sign = -sign
        piv = m[k][k]
        det *= piv
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = m[i][k] / piv
                row_i, row_k = m[i], m[k]
                for j in range(k, n):
                    row_i[j] -= f * row_k[j]
    return det if sign > 0 else -det


def solve_linear(a: Matrix, b: Sequence[Scalar]) -> List[Scalar]:
    """Solve a x = b by Gaussian elimination with partial pivoting.

    Exact on Fraction input; raises DegeneracyError-free ValueError on a
    singular system (callers wrap it in the domain-specific error).
    """
    n = _check_square(a)
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    exact = _exact_matrix(a) and all(is_exact(x) for x in b)
    for k in range(n):
        p = _pick_pivot(m, k, exact)
        if p is None:
            raise ValueError("singular linear system")
        if p != k:
            m[k], m[p] = m[p], m[k]
        piv = m[k][k]
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = m[i][k] / piv
                for j in range(k, n + 1):
                    m[i][j] -= f * m[k][j]
    x: List[Scalar] = [0] * n
    for i in range(n - 1, -1, -1):
        acc = m[i][n]
        for j in range(i + 1, n):
            acc -= m[i][j] * x[j]
        x[i] = acc / m[i][i]
    return x


def mat_inverse(a: Matrix) -> Matrix:
    n = _check_square(a)
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        cols.append(solve_linear(a, e))
    return transpose(cols)


def _pick_pivot(m: Matrix, k: int, exact: bool):
    n = len(m)
    if exact:
        for i in range(k, n):
            if m[i][k] != 0:
                return i
        return None
    best, arg = 0.0, None
    for i in range(k, n):
        v = abs(float(m[i][k]))
        if v > best:
            best, arg = v, i
    return arg


# ---------------------------------------------------------------------------
# symmetric tridiagonal eigenvalues (implicit-shift QL)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymTridiag:
    """Symmetric tridiagonal matrix given by its diagonal and off-diagonal."""

    diag: Tuple[float, ...]
    offdiag: Tuple[float, ...]

    def __init__(self, diag: Sequence[Scalar], offdiag: Sequence[Scalar]):
        if len(offdiag) != max(len(diag) - 1, 0):
            raise DimensionError(
                f"offdiag length {len(offdiag)} inconsistent with diag length {len(diag)}"
            )
        vals = tuple(float(x) for x in diag) + tuple(float(x) for x in offdiag)
        if any(math.isnan(v) or math.isinf(v) for v in vals):
            raise ValueError("tridiagonal entries must be finite")
        object.__setattr__(self, "diag", tuple(float(x) for x in diag))
        object.__setattr__(self, "offdiag", tuple(float(x) for x in offdiag))

    @property
    def size(self) -> int:
        return len(self.diag)

    def dense(self) -> Matrix:
        n = self.size
        m = zeros(n, n)
        for i in range(n):
            m[i][i] = self.diag[i]
        for i in range(n - 1):
            m[i][i + 1] = m[i + 1][i] = self.offdiag[i]
        return m

    def norm_inf(self) -> float:
        return inf_norm(self.dense()) if self.size else 0.0


def sym_tridiag_eigs(t: SymTridiag) -> List[float]:
    """All eigenvalues of a symmetric tridiagonal matrix, ascending.

    Implicit-shift QL with Wilkinson-style shifts; iteration cap 50 per
    eigenvalue.  Output is deterministic for identical input.
    """
    n = t.size
    if n == 0:
        return []
    d = list(t.diag)
    e = list(t.offdiag) + [0.0]
    for l in range(n):
        iters = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            iters += 1
            if iters > 50:
                raise ConvergenceError(f"QL sweep failed to deflate index {l} after 50 iterations")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return sorted(d)


# ---------------------------------------------------------------------------
# general real eigenvalues (Hessenberg + double-shift QR)
# ---------------------------------------------------------------------------

def dense_eigs(a: Matrix, method: str = "qr") -> List[complex]:
    """All eigenvalues of a real square matrix, sorted by (re, im).

    method="qr" (default): stabilized-elimination Hessenberg reduction
    followed by Francis double-shift QR.  method="charpoly": exact
    characteristic polynomial plus simultaneous root iteration, available
    for sizes <= 6 as the independent oracle.
    """
    n = _check_square(a)
    if n == 0:
        return []
    if method == "charpoly":
        if n > 6:
            raise DimensionError("charpoly oracle limited to size <= 6")
        return sort_complex(_charpoly_roots(a))
    h = [[float(x) for x in row] for row in a]
    _hessenberg(h)
    return sort_complex(_hqr(h))


def _hessenberg(a: Matrix) -> None:
    """Reduce to upper Hessenberg in place by pivoted elementary similarity."""
    n = len(a)
    for m in range(1, n - 1):
        x, piv = 0.0, m
        for j in range(m, n):
            if abs(a[j][m - 1]) > abs(x):
                x = a[j][m - 1]
                piv = j
        if piv != m:
            a[piv], a[m] = a[m], a[piv]
            for row in a:
                row[piv], row[m] = row[m], row[piv]
        if x != 0.0:
            for i in range(m + 1, n):
                y = a[i][m - 1]
                if y != 0.0:
                    y /= x
                    a[i][m - 1] = 0.0
                    for j in range(m, n):
                        a[i][j] -= y * a[m][j]
                    for j in range(n):
                        a[j][m] += y * a[j][i]
    for i in range(2, n):
        for j in range(i - 1):
            a[i][j] = 0.0


def _hqr(a: Matrix) -> List[complex]:
    """Eigenvalues of an upper Hessenberg matrix (Francis double shift).

    Exceptional shifts after 10 and 20 stalled sweeps, failure at 30.
    """
    n = len(a)
    anorm = 0.0
    for i in range(n):
        for j in range(max(i - 1, 0), n):
            anorm += abs(a[i][j])
    if anorm == 0.0:
        return [0j] * n
    eigs: List[complex] = []
    nn = n - 1
    t = 0.0
    while nn >= 0:
        its = 0
        while True:
            l = nn
            while l >= 1:
                s = abs(a[l - 1][l - 1]) + abs(a[l][l])
                if s == 0.0:
                    s = anorm
                if abs(a[l][l - 1]) <= _EPS * s:
                    a[l][l - 1] = 0.0
                    break
                l -= 1
            x = a[nn][nn]
            if l == nn:
                eigs.append(complex(x + t, 0.0))
                nn -= 1
                break
            y = a[nn - 1][nn - 1]
            w = a[nn][nn - 1] * a[nn - 1][nn]
            if l == nn - 1:
                p = 0.5 * (y - x)
                q = p * p + w
                z = math.sqrt(abs(q))
                x += t
                if q >= 0.0:
                    z = p + math.copysign(z, p)
                    eigs.append(complex(x + z, 0.0))
                    eigs.append(complex(x + z if z == 0.0 else x - w / z, 0.0))
                else:
                    eigs.append(complex(x + p, z))
                    eigs.append(complex(x + p, -z))
                nn -= 2
                break
            if its == 30:
                raise ConvergenceError("QR iteration failed to deflate after 30 sweeps")
            if its in (10, 20):
                t += x
                for i in range(nn + 1):
                    a[i][i] -= x
                s = abs(a[nn][nn - 1]) + abs(a[nn - 1][nn - 2])
                y = x = 0.75 * s
                w = -0.4375 * s * s
            its += 1
            m = nn - 2
            while m >= l:
                z = a[m][m]
                r = x - z
                s = y - z
                p = (r * s - w) / a[m + 1][m] + a[m][m + 1]
                q = a[m + 1][m + 1] - z - r - s
                r = a[m + 2][m + 1]
                s = abs(p) + abs(q) + abs(r)
                p /= s
                q /= s
                r /= s
                if m == l:
                    break
                u = abs(a[m][m - 1]) * (abs(q) + abs(r))
                v = abs(p) * (abs(a[m - 1][m - 1]) + abs(z) + abs(a[m + 1][m + 1]))
                if u <= _EPS * v:
                    break
                m -= 1
            for i in range(m + 2, nn + 1):
                a[i][i - 2] = 0.0
                if i != m + 2:
                    a[i][i - 3] = 0.0
            for k in range(m, nn):
                if k != m:
                    p = a[k][k - 1]
                    q = a[k + 1][k - 1]
                    r = a[k + 2][k - 1] if k != nn - 1 else 0.0
                    x = abs(p) + abs(q) + abs(r)
                    if x != 0.0:
                        p /= x
                        q /= x
                        r /= x
                s = math.copysign(math.sqrt(p * p + q * q + r * r), p)
                if s == 0.0:
                    continue
                if k == m:
                    if l != m:
                        a[k][k - 1] = -a[k][k - 1]
                else:
                    a[k][k - 1] = -s * x
                p += s
                x = p / s
                y = q / s
                z = r / s
                q /= p
                r /= p
                for j in range(k, nn + 1):
                    p = a[k][j] + q * a[k + 1][j]
                    if k != nn - 1:
                        p += r * a[k + 2][j]
                        a[k + 2][j] -= p * z
                    a[k + 1][j] -= p * y
                    a[k][j] -= p * x
                mmin = min(nn, k + 3)
                for i in range(l, mmin + 1):
                    p = x * a[i][k] + y * a[i][k + 1]
                    if k != nn - 1:
                        p += z * a[i][k + 2]
                        a[i][k + 2] -= p * r
                    a[i][k + 1] -= p * q
                    a[i][k] -= p
    return eigs


# ---------------------------------------------------------------------------
# characteristic-polynomial oracle (sizes <= 6)
# ---------------------------------------------------------------------------

def charpoly(a: Matrix) -> List[Scalar]:
    """Monic characteristic polynomial coefficients [c_0, ..., c_{n-1}, 1].

    Faddeev-LeVerrier recursion; exact on Fraction input.
    """
    n = _check_square(a)
    exact = _exact_matrix(a)
    one_ = Fraction(1) if exact else 1.0
    coeffs = [one_ * 0] * n + [one_]
    m = [[one_ if i == j else one_ * 0 for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        am = mat_mul(a, m)
        tr = sum(am[i][i] for i in range(n))
        if exact:
            c = -Fraction(tr, k)
        else:
            c = -tr / k
        coeffs[n - k] = c
        m = [[am[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


def _charpoly_roots(a: Matrix) -> List[complex]:
    coeffs = [complex(float(c), 0.0) for c in charpoly(a)]
    return polynomial_roots(coeffs)


def polynomial_roots(coeffs: Sequence[complex]) -> List[complex]:
    """Roots of a monic polynomial by simultaneous (Weierstrass) iteration."""
    n = len(coeffs) - 1
    if n == 0:
        return []
    lead = coeffs[-1]
    cs = [c / lead for c in coeffs]

    def val(z: complex) -> complex:
        acc = 0j
        for c in reversed(cs):
            acc = acc * z + c
        return acc

    radius = 1.0 + max(abs(c) for c in cs[:-1]) if n else 1.0
    seed = complex(0.4, 0.9)
    roots = [radius * seed**k for k in range(1, n + 1)]
    for _ in range(500):
        moved = 0.0
        for i in range(n):
            denom = 1 + 0j
            for j in range(n):
                if j != i:
                    denom *= roots[i] - roots[j]
            if denom == 0:
                roots[i] += complex(1e-8, 1e-8)
                continue
            delta = val(roots[i]) / denom
            roots[i] -= delta
            moved = max(moved, abs(delta))
        if moved < 1e-14 * (1.0 + radius):
            break
    else:
        raise ConvergenceError("root iteration did not settle in 500 rounds")
    return roots


# ---------------------------------------------------------------------------
# spectrum comparison helpers
# ---------------------------------------------------------------------------

def sort_complex(zs: Sequence[complex]) -> List[complex]:
    return sorted((complex(z) for z in zs), key=lambda z: (z.real, z.imag))


def min_cost_assignment(cost: Matrix) -> List[int]:
    """Optimal assignment for a square cost matrix (Hungarian with potentials).

    Returns match[i] = column assigned to row i, minimizing the total cost;
    O(n^3), deterministic.
    """
    n = len(cost)
    if n == 0:
        return []
    inf = float("inf")
    u = [0.0] * (n + 1)
    v = [0.0] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta, j1 = inf, -1
            for j in range(1, n + 1):
                if not used[j]:
                    cur = float(cost[i0 - 1][j - 1]) - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    match = [0] * n
    for j in range(1, n + 1):
        match[p[j] - 1] = j - 1
    return match


def spectra_distance(xs: Sequence[complex], ys: Sequence[complex]) -> float:
    """Max pairing distance between two equally sized spectra.

    Pairs the multisets by the min-total-|difference| assignment and
    reports the largest matched distance.
    """
    if len(xs) != len(ys):
        raise DimensionError(f"spectra sizes differ: {len(xs)} vs {len(ys)}")
    xs_l = [complex(x) for x in xs]
    ys_l = [complex(y) for y in ys]
    cost = [[abs(x - y) for y in ys_l] for x in xs_l]
    match = min_cost_assignment(cost)
    return max((cost[i][match[i]] for i in range(len(xs_l))), default=0.0)
