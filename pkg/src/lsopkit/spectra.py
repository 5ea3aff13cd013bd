"""Symplectic pencils, butterfly matrices, and the z + 1/z spectral folding.

The recurrence relations of the orthonormal family fold into a generalized
eigenvalue problem U v = z V v with 2N x 2N blocks built from F (unit lower
bidiagonal with subdiagonal -sqrt(beta_n)), G = diag(alpha_1..alpha_N) and
H = diag(0, alpha_1..alpha_{N-1}).  Two assemblies are provided:

* build_pencil            -- the textbook block layout
      U = [[H, I], [-F^T, O]],  V = [[F, O], [G, I]];
* pencil_from_recurrence  -- the layout obtained by direct rearrangement of
  the recurrences under the eigenvector ordering
  (qt_1, qt_3, ..., qt_2N-1, qt_0, ..., qt_2N-2):
      U = [[I, -H], [O, -F^T]],  V = [[O, F], [I, -G]].

pencil_residual measures how well each reproduces the recurrences on the
actual support; both satisfy the pencil symplecticity identity
U J U^T = V J V^T.  The butterfly matrix is the multiplication operator in
a gauged alternating basis; its parameter quadruples (a, b, c, d), the
bijection with (alpha, beta, r, lambda), the reduction to a symmetric
tridiagonal matrix, and the two-way eigenvalue map lambda = z + 1/z all
live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import AdmissibilityError, DimensionError
from .lsop import FamilyValues, RecurrenceData
from .lsolp import GaugeParams, family_vector_order
from .numerics import (Matrix, SymTridiag, dense_eigs, identity, inf_norm, mat_mul,
                       mat_sub, mat_vec, solve_linear, transpose, zeros)

DOUBLE_ROOT_TOL = 1e-12

CONVENTION_DIFFERENCE = "difference-of-alphas"
CONVENTION_PLAIN = "plain-alpha"


@dataclass(frozen=True)
class PencilPair:
    """A 2N x 2N generalized eigenvalue pencil (U, V)."""

    u: Matrix
    v: Matrix

    @property
    def size(self) -> int:
        return len(self.u)

    @property
    def half(self) -> int:
        return len(self.u) // 2


def _pencil_blocks(rec: RecurrenceData) -> Tuple[Matrix, Matrix, Matrix]:
    """F, G, H blocks shared by both pencil layouts (floats)."""
    n = rec.order
    if n < 1:
        raise DimensionError("pencil needs order >= 1")
    for k in range(1, n):
        if not rec.beta[k] > 0:
            raise AdmissibilityError(f"beta_{k} = {rec.beta[k]} must be positive")
    f = identity(n)
    for k in range(1, n):
        f[k][k - 1] = -math.sqrt(float(rec.beta[k]))
    g = zeros(n, n)
    for k in range(n):
        g[k][k] = float(rec.alpha[k + 1])
    h = zeros(n, n)
    for k in range(1, n):
        h[k][k] = float(rec.alpha[k])
    return f, g, h


def build_pencil(rec: RecurrenceData) -> PencilPair:
    """The textbook pencil: U = [[H, I], [-F^T, O]], V = [[F, O], [G, I]]."""
    f, g, h = _pencil_blocks(rec)
    n = rec.order
    u = _assemble(h, identity(n), _neg(transpose(f)), zeros(n, n))
    v = _assemble(f, zeros(n, n), g, identity(n))
    return PencilPair(u=u, v=v)


def pencil_from_recurrence(rec: RecurrenceData) -> PencilPair:
    """Pencil rearranged directly from the recurrences (odd-first ordering).

    Row block 1:  o_n - alpha_n e_n = z (F e)_n          (qt_2n+1 line)
    Row block 2:  -(F^T e)_n = z (o_n - alpha_{n+1} e_n)  (top line, beta_N = 0)
    giving U = [[I, -H], [O, -F^T]], V = [[O, F], [I, -G]].
    """
    f, g, h = _pencil_blocks(rec)
    n = rec.order
    u = _assemble(identity(n), _neg(h), zeros(n, n), _neg(transpose(f)))
    v = _assemble(zeros(n, n), f, identity(n), _neg(g))
    return PencilPair(u=u, v=v)


@dataclass(frozen=True)
class PencilReport:
    """Recurrence fidelity of a pencil, with the rederived layout attached."""

    residual_given: float
    residual_corrected: float
    corrected: PencilPair
    entry_difference: float


def pencil_residual(p: PencilPair, fv: FamilyValues, rec: RecurrenceData,
                    tol: float = 1e-10) -> PencilReport:
    """max_k |U v(z_k) - z_k V v(z_k)|_inf / |v(z_k)|_inf over the support.

    The eigenvector v(z) stacks the family values odd-first.  When the given
    pencil misses the tolerance, the report carries the recurrence-derived
    layout, its (small) residual, and the largest entry difference between
    the two assemblies.
    """
    res_given = _pencil_support_residual(p, fv)
    corrected = pencil_from_recurrence(rec)
    res_corr = _pencil_support_residual(corrected, fv)
    diff = max(
        max(abs(a - b) for ra, rb in zip(p.u, corrected.u) for a, b in zip(ra, rb)),
        max(abs(a - b) for ra, rb in zip(p.v, corrected.v) for a, b in zip(ra, rb)),
    )
    return PencilReport(residual_given=res_given, residual_corrected=res_corr,
                        corrected=corrected, entry_difference=diff)


def _pencil_support_residual(p: PencilPair, fv: FamilyValues) -> float:
    order_map = family_vector_order(fv.order)
    worst = 0.0
    for k, z in enumerate(fv.measure.nodes):
        vec = [fv.qt_node[k][j] for j in order_map]
        uv = mat_vec(p.u, vec)
        vv = mat_vec(p.v, vec)
        zf = float(z)
        num = max(abs(a - zf * b) for a, b in zip(uv, vv))
        den = max(abs(x) for x in vec)
        worst = max(worst, num / den)
    return worst


def symplectic_j(n: int) -> Matrix:
    """The canonical skew form J = [[O, I], [-I, O]] of size 2n."""
    j = zeros(2 * n, 2 * n)
    for k in range(n):
        j[k][n + k] = 1.0
        j[n + k][k] = -1.0
    return j


def symplectic_pencil_check(p: PencilPair) -> Tuple[float, float]:
    """(|U J U^T - V J V^T|_inf, |S J S^T - J|_inf with S = V^-1 U).

    The second value certifies membership of the transfer matrix in the
    symplectic group; it requires V invertible.
    """
    n = p.half
    j = symplectic_j(n)
    lhs = mat_mul(mat_mul(p.u, j), transpose(p.u))
    rhs = mat_mul(mat_mul(p.v, j), transpose(p.v))
    pencil_res = inf_norm(mat_sub(lhs, rhs))
    s = transfer_matrix(p)
    sjst = mat_mul(mat_mul(s, j), transpose(s))
    transfer_res = inf_norm(mat_sub(sjst, j))
    return pencil_res, transfer_res


def transfer_matrix(p: PencilPair) -> Matrix:
    """S = V^-1 U by columnwise solves."""
    cols = []
    ut = transpose(p.u)
    for col in ut:
        cols.append(solve_linear(p.v, col))
    return transpose(cols)


def pencil_eigenvalues(p: PencilPair) -> List[complex]:
    """Generalized eigenvalues of (U, V) through the transfer matrix."""
    return dense_eigs(transfer_matrix(p))


# ---------------------------------------------------------------------------
# symmetric tridiagonal reduction of the pencil
# ---------------------------------------------------------------------------

def build_tridiagonal(rec: RecurrenceData) -> SymTridiag:
    """T with diagonal (alpha_1, alpha_2 - alpha_1, ..., alpha_N - alpha_N-1)
    and off-diagonal (sqrt(beta_1), ..., sqrt(beta_N-1)); eig T = {z_k + 1/z_k}."""
    n = rec.order
    for k in range(1, n):
        if not rec.beta[k] > 0:
            raise AdmissibilityError(f"beta_{k} = {rec.beta[k]} must be positive")
    diag = [float(rec.alpha[k + 1]) - float(rec.alpha[k]) for k in range(n)]
    off = [math.sqrt(float(rec.beta[k])) for k in range(1, n)]
    return SymTridiag(diag, off)


# ---------------------------------------------------------------------------
# butterfly matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ButterflyParams:
    """Parameter quadruples of the butterfly form.

    0-based storage of the 1-based quadruples: a[i], b[i], c[i] carry
    a_{i+1}, b_{i+1}, c_{i+1} for i = 0..N-1, and d[i] carries d_{i+2} for
    i = 0..N-2 (the coupling between pairs i and i+1).
    """

    a: Tuple[float, ...]
    b: Tuple[float, ...]
    c: Tuple[float, ...]
    d: Tuple[float, ...]

    def __post_init__(self):
        n = len(self.a)
        if not (len(self.b) == len(self.c) == n and len(self.d) == max(n - 1, 0)):
            raise DimensionError("parameter lengths must be (N, N, N, N-1)")
        if any(x == 0 for x in self.a):
            raise AdmissibilityError("butterfly parameters a_i must be nonzero")

    @property
    def order(self) -> int:
        return len(self.a)

    def hypothesis_holds(self) -> bool:
        """Real-symmetric reduction hypothesis a_i a_{i+1} > 0."""
        return all(self.a[i] * self.a[i + 1] > 0 for i in range(self.order - 1))


def butterfly_params(rec: RecurrenceData, g: GaugeParams,
                     convention: str = CONVENTION_DIFFERENCE) -> ButterflyParams:
    """(a, b, c, d) from recurrence data and a gauge.

    a_i+1 = 1/r_i^2, b_i+1 = lambda_i, c_i+1 = r_i^2 (gamma_i - lambda_i),
    d_i+2 = r_i r_i+1 sqrt(beta_i+1), where gamma_i is alpha_{i+1} - alpha_i
    under the default difference convention and alpha_i under the plain
    one.  The difference convention is the one the multiplication operator
    actually realizes (see determine_diagonal_convention).
    """
    n = rec.order
    if g.order != n:
        raise ValueError(f"gauge order {g.order} != recurrence order {n}")
    for k in range(1, n):
        if not rec.beta[k] > 0:
            raise AdmissibilityError(f"beta_{k} = {rec.beta[k]} must be positive")
    gamma = _gamma(rec, convention)
    a = [1.0 / (float(g.r[i]) ** 2) for i in range(n)]
    b = [float(g.lam[i]) for i in range(n)]
    c = [float(g.r[i]) ** 2 * (gamma[i] - float(g.lam[i])) for i in range(n)]
    d = [float(g.r[i]) * float(g.r[i + 1]) * math.sqrt(float(rec.beta[i + 1]))
         for i in range(n - 1)]
    return ButterflyParams(a=tuple(a), b=tuple(b), c=tuple(c), d=tuple(d))


def butterfly_inverse_params(bp: ButterflyParams) -> Tuple[List[float], List[float], List[float], List[float]]:
    """Recover (alpha, beta, r^2, lambda) from the quadruples.

    alpha is the cumulative sum of gamma_i = a_i c_i + b_i with alpha_0 = 0;
    beta_{i+1} = d_{i+1}^2 a_i a_{i+1}; r is determined up to sign, so the
    squares are returned.
    """
    n = bp.order
    r2 = [1.0 / bp.a[i] for i in range(n)]
    lam = list(bp.b)
    gamma = [bp.a[i] * bp.c[i] + bp.b[i] for i in range(n)]
    alpha = [0.0]
    for i in range(n):
        alpha.append(alpha[-1] + gamma[i])
    beta = [0.0] + [bp.d[i] ** 2 * bp.a[i] * bp.a[i + 1] for i in range(n - 1)] + [0.0]
    return alpha, beta[: n + 1], r2, lam


def butterfly_from_params(bp: ButterflyParams) -> Matrix:
    """Dense 2N x 2N butterfly matrix from its quadruples.

    Block layout (N+N): [[diag(b), Btr], [diag(a), Bbr]] with tridiagonal
    Btr (diagonal b_i c_i - 1/a_i, couplings b_i d) and Bbr (diagonal
    a_i c_i, couplings a_i d).
    """
    n = bp.order
    m = zeros(2 * n, 2 * n)
    for i in range(n):
        m[i][i] = bp.b[i]
        m[n + i][i] = bp.a[i]
        m[i][n + i] = bp.b[i] * bp.c[i] - 1.0 / bp.a[i]
        m[n + i][n + i] = bp.a[i] * bp.c[i]
    for i in range(n - 1):
        m[i][n + i + 1] = bp.b[i] * bp.d[i]
        m[i + 1][n + i] = bp.b[i + 1] * bp.d[i]
        m[n + i][n + i + 1] = bp.a[i] * bp.d[i]
        m[n + i + 1][n + i] = bp.a[i + 1] * bp.d[i]
    return m


def build_butterfly(rec: RecurrenceData, g: GaugeParams,
                    convention: str = CONVENTION_DIFFERENCE) -> Matrix:
    """Butterfly matrix of the gauged family (params + dense assembly)."""
    return butterfly_from_params(butterfly_params(rec, g, convention))


def determine_diagonal_convention(mult: Matrix, rec: RecurrenceData,
                                  g: GaugeParams) -> Tuple[str, dict]:
    """Which diagonal convention the multiplication operator realizes.

    Compares the numerically computed multiplication matrix against the
    butterfly assembled under both candidate conventions and returns the
    winner together with both entrywise residuals.
    """
    residuals = {}
    for convention in (CONVENTION_DIFFERENCE, CONVENTION_PLAIN):
        bt = build_butterfly(rec, g, convention)
        residuals[convention] = max(
            abs(x - y) for rx, ry in zip(mult, bt) for x, y in zip(rx, ry)
        )
    winner = min(residuals, key=residuals.get)
    return winner, residuals


def _gamma(rec: RecurrenceData, convention: str) -> List[float]:
    n = rec.order
    if convention == CONVENTION_DIFFERENCE:
        return [float(rec.alpha[i + 1]) - float(rec.alpha[i]) for i in range(n)]
    if convention == CONVENTION_PLAIN:
        return [float(rec.alpha[i]) for i in range(n)]
    raise ValueError(f"unknown convention {convention!r}")


def butterfly_to_tridiagonal(bp: ButterflyParams) -> SymTridiag:
    """Symmetric tridiagonal reduction of a butterfly matrix.

    Diagonal a_i c_i + b_i, off-diagonal sqrt(a_i a_{i+1}) |d|; requires the
    reality hypothesis a_i a_{i+1} > 0.  Its eigenvalues are z + 1/z over
    the butterfly spectrum.
    """
    if not bp.hypothesis_holds():
        raise AdmissibilityError("reduction hypothesis a_i a_{i+1} > 0 violated")
    n = bp.order
    diag = [bp.a[i] * bp.c[i] + bp.b[i] for i in range(n)]
    off = [math.sqrt(bp.a[i] * bp.a[i + 1]) * abs(bp.d[i]) for i in range(n - 1)]
    return SymTridiag(diag, off)


# ---------------------------------------------------------------------------
# the lambda = z + 1/z correspondence
# ---------------------------------------------------------------------------

def eig_correspondence(lambdas: Sequence[float]) -> List[Tuple[complex, complex]]:
    """Each real lambda maps to the root pair of z^2 - lambda z + 1.

    |lambda| > 2: real pair listed with the |z| > 1 representative first;
    |lambda| = 2 (within 1e-12 on lambda^2 - 4): the double point z = +-1;
    |lambda| < 2: the unit-modulus conjugate pair (positive imaginary part
    first).
    """
    out: List[Tuple[complex, complex]] = []
    for lam in lambdas:
        lam = float(lam)
        disc = lam * lam - 4.0
        if abs(disc) <= DOUBLE_ROOT_TOL:
            z = complex(lam / 2.0, 0.0)
            out.append((z, z))
        elif disc > 0:
            root = math.sqrt(disc)
            z = (lam + root) / 2.0 if lam > 0 else (lam - root) / 2.0
            out.append((complex(z, 0.0), complex(1.0 / z, 0.0)))
        else:
            im = math.sqrt(-disc) / 2.0
            out.append((complex(lam / 2.0, im), complex(lam / 2.0, -im)))
    return out


def canonical_z_list(pairs: Sequence[Tuple[complex, complex]]) -> List[complex]:
    """Flatten correspondence pairs into a sorted spectrum list."""
    flat: List[complex] = []
    for z, zi in pairs:
        flat.extend([z, zi])
    return sorted(flat, key=lambda c: (c.real, c.imag))


def inversion_closure_defect(spectrum: Sequence[complex]) -> float:
    """How far a multiset is from being closed under z -> 1/z.

    Pairs each eigenvalue with the nearest candidate inverse and returns the
    largest |z * z' - 1| over the pairing.
    """
    zs = list(spectrum)
    worst = 0.0
    for z in zs:
        best = min(abs(z * w - 1.0) for w in zs)
        worst = max(worst, best)
    return worst


def _assemble(tl: Matrix, tr: Matrix, bl: Matrix, br: Matrix) -> Matrix:
    n = len(tl)
    out = zeros(2 * n, 2 * n)
    for i in range(n):
        for j in range(n):
            out[i][j] = tl[i][j]
            out[i][n + j] = tr[i][j]
            out[n + i][j] = bl[i][j]
            out[n + i][n + j] = br[i][j]
    return out


def _neg(a: Matrix) -> Matrix:
    return [[-x for x in row] for row in a]
