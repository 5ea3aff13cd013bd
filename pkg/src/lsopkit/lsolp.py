"""Skew orthonormal families in the alternating Laurent basis.

The alternating basis {1, z^-1, z, z^-2, z^2, ...} turns the orthonormal
family {qt_n} into Laurent members

    Q_2m(z)   =  z^-m     qt_2m(z),
    Q_2m+1(z) = -z^-m-1   qt_2m(z),

with skew orthonormality <Q_2m|Q_2n+1> = delta_mn and vanishing same-parity
pairings.  The same family also arises by skew Gram-Schmidt directly in the
alternating basis; both constructions are provided and cross-checked.

Two one-parameter freedoms act on each pair without disturbing the pairing
pattern: member scaling (r_n) and adding a multiple of the even member to
the odd one (lambda_n).  The multiplication-by-z operator in a gauged basis
is computed here by skew-duality extraction; it is the numerical ground
truth the butterfly assembly in `spectra` is checked against.

Families carry two representations: coefficient polynomials (exact-mode
algebra, serialization) and value tables on the measure's support (the
numerically accurate route, inherited from lsop.FamilyValues).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import AdmissibilityError, DegeneracyError, RepresentationError, StructureError
from .laurent import LaurentPoly
from .lsop import FamilyValues
from .modes import is_exact
from .moments import DiscreteMeasure, skew_inner

PAIRING_VALIDATION_TOL = 1e-8
REPRESENTATION_TOL = 1e-8


@dataclass(frozen=True)
class GaugeParams:
    """Per-pair gauge data: nonzero scalings r_n and shear parameters lambda_n."""

    r: Tuple[float, ...]
    lam: Tuple[float, ...]

    def __post_init__(self):
        if len(self.r) != len(self.lam):
            raise ValueError("r and lambda must have equal length")
        if any(x == 0 for x in self.r):
            raise AdmissibilityError("gauge scalings r_n must be nonzero")

    @staticmethod
    def trivial(n: int) -> "GaugeParams":
        return GaugeParams(r=(1.0,) * n, lam=(0.0,) * n)

    @property
    def order(self) -> int:
        return len(self.r)


@dataclass(frozen=True)
class LsolpFamily:
    """A skew orthonormal family in the alternating basis.

    members[j] are coefficient polynomials (may be None for value-only
    families); node_values[k][j] and recip_values[k][j] hold member j at
    z_k and 1/z_k.
    """

    measure: DiscreteMeasure
    order: int
    node_values: Tuple[Tuple[float, ...], ...]
    recip_values: Tuple[Tuple[float, ...], ...]
    members: Optional[Tuple[LaurentPoly, ...]] = None

    @property
    def size(self) -> int:
        return 2 * self.order

    def pairing(self, a: int, b: int) -> float:
        tot = 0.0
        for (w, vz, vr) in zip(self.measure.weights, self.node_values, self.recip_values):
            tot += (vr[a] * vz[b] - vz[a] * vr[b]) * float(w)
        return tot

    def gram(self) -> List[List[float]]:
        d = self.size
        return [[self.pairing(a, b) for b in range(d)] for a in range(d)]

    def pairing_defect(self) -> float:
        """Max deviation of the Gram matrix from the canonical skew pattern."""
        worst = 0.0
        for a in range(self.size):
            for b in range(self.size):
                expect = 0.0
                if a % 2 == 0 and b % 2 == 1 and a // 2 == b // 2:
                    expect = 1.0
                elif a % 2 == 1 and b % 2 == 0 and a // 2 == b // 2:
                    expect = -1.0
                worst = max(worst, abs(self.pairing(a, b) - expect))
        return worst


def _require_orthonormal(fam: LsolpFamily, tol: float, where: str) -> None:
    defect = fam.pairing_defect()
    if defect > tol:
        raise StructureError(f"{where}: family is not skew orthonormal "
                             f"(defect {defect:.3e} > {tol:g})")


# ---------------------------------------------------------------------------
# construction from the orthonormal monomial-basis family
# ---------------------------------------------------------------------------

def lsolp_from_values(fv: FamilyValues, validate: bool = True) -> LsolpFamily:
    """Alternating-basis family from orthonormal value tables (production path)."""
    n = fv.order
    node_vals, recip_vals = [], []
    for (z, vz, vr) in zip(fv.measure.nodes, fv.qt_node, fv.qt_recip):
        zf = float(z)
        row_z = [0.0] * (2 * n)
        row_r = [0.0] * (2 * n)
        for m in range(n):
            zm = zf ** m
            row_z[2 * m] = vz[2 * m] / zm
            row_r[2 * m] = vr[2 * m] * zm
            row_z[2 * m + 1] = -vz[2 * m] / (zm * zf)
            row_r[2 * m + 1] = -vr[2 * m] * zm * zf
        node_vals.append(tuple(row_z))
        recip_vals.append(tuple(row_r))
    fam = LsolpFamily(measure=fv.measure, order=n,
                      node_values=tuple(node_vals), recip_values=tuple(recip_vals))
    if validate:
        _require_orthonormal(fam, PAIRING_VALIDATION_TOL, "lsolp_from_values")
    return fam


def lsolp_from_lsop(m: DiscreteMeasure, qtilde: Sequence[LaurentPoly],
                    validate: bool = True) -> LsolpFamily:
    """Alternating-basis family from orthonormal coefficient polynomials.

    Q_2m = z^-m qt_2m and Q_2m+1 = -z^-m-1 qt_2m; the odd members reuse the
    even polynomial, so only the even inputs matter.  Coefficient arithmetic
    is exact-friendly but ill-conditioned at higher order; prefer
    lsolp_from_values inside numerical pipelines.
    """
    if len(qtilde) % 2:
        raise ValueError("expected an even count of family members")
    n = len(qtilde) // 2
    members: List[LaurentPoly] = []
    for k in range(n):
        members.append(qtilde[2 * k].shift(-k))
        members.append(qtilde[2 * k].shift(-k - 1).scale(-1))
    fam = _family_from_polys(m, members)
    if validate:
        _require_orthonormal(fam, PAIRING_VALIDATION_TOL, "lsolp_from_lsop")
    return fam


def _family_from_polys(m: DiscreteMeasure, members: Sequence[LaurentPoly]) -> LsolpFamily:
    node_vals, recip_vals = [], []
    for z in m.nodes:
        zf = float(z)
        node_vals.append(tuple(float(p(zf)) for p in members))
        recip_vals.append(tuple(float(p(1.0 / zf)) for p in members))
    return LsolpFamily(measure=m, order=len(members) // 2,
                       node_values=tuple(node_vals), recip_values=tuple(recip_vals),
                       members=tuple(members))


# ---------------------------------------------------------------------------
# independent construction: skew Gram-Schmidt in the alternating basis
# ---------------------------------------------------------------------------

def alternating_exponent(j: int) -> int:
    """Exponent of the j-th alternating basis member: 0, -1, 1, -2, 2, ..."""
    if j == 0:
        return 0
    return (j + 1) // 2 if j % 2 == 0 else -((j + 1) // 2)


def gram_schmidt_pairs(m: DiscreteMeasure, count: int):
    """Unnormalized skew Gram-Schmidt pairs (P_2k, P_2k+1, kappa_k).

    P_2k has leading alternating-basis coefficient 1; P_2k+1 additionally
    has vanishing z^k coefficient (the shear convention).  Exact on exact
    measures.  Raises on a vanishing pairing kappa_k (rank deficiency).
    """
    pairs = []
    npairs = (count + 1) // 2
    for k in range(npairs):
        p_even = _project(m, LaurentPoly.monomial(alternating_exponent(2 * k)), pairs)
        p_odd = _project(m, LaurentPoly.monomial(alternating_exponent(2 * k + 1)), pairs)
        lead = p_even.coeff(k)
        if lead == 0:
            raise DegeneracyError(f"Gram-Schmidt breakdown: even member {2 * k} lost its leading term")
        shear = p_odd.coeff(k) / lead
        if shear != 0:
            p_odd = p_odd - p_even.scale(shear)
        kappa = skew_inner(m, p_even, p_odd)
        if kappa == 0 or (not is_exact(kappa) and abs(float(kappa)) < 1e-13):
            raise DegeneracyError(f"skew pairing of pair {k} vanished (rank-deficient support)")
        pairs.append((p_even, p_odd, kappa))
    return pairs


def gram_schmidt_lsolp(m: DiscreteMeasure, count: int, validate: bool = True) -> LsolpFamily:
    """Skew orthonormal family by Gram-Schmidt in the alternating basis.

    Normalization matches the shift construction: the even leading
    coefficient is positive and the odd leading coefficient is its negative.
    An odd count rounds up to the full pair; the requested members are the
    first `count` entries of `members`.
    """
    pairs = gram_schmidt_pairs(m, count)
    members: List[LaurentPoly] = []
    for k, (p_even, p_odd, kappa) in enumerate(pairs):
        p = p_even.coeff(k)
        s = p_odd.coeff(-k - 1)
        u_sq = -float(s) / (float(p) * float(kappa))
        if not u_sq > 0:
            raise DegeneracyError(f"pair {k} normalization square {u_sq} not positive")
        u = math.sqrt(u_sq)
        v = -u * float(p) / float(s)
        members.append(p_even.as_float().scale(u))
        members.append(p_odd.as_float().scale(v))
    fam = _family_from_polys(m, members)
    if validate:
        _require_orthonormal(fam, PAIRING_VALIDATION_TOL, "gram_schmidt_lsolp")
    return fam


def _project(m: DiscreteMeasure, v: LaurentPoly, pairs) -> LaurentPoly:
    # remove components along completed pairs: v -= <E|v>/k F - <F|v>/k E
    for (e, f, kappa) in pairs:
        ce = skew_inner(m, e, v)
        cf = skew_inner(m, f, v)
        if ce != 0:
            v = v - f.scale(ce / kappa)
        if cf != 0:
            v = v + e.scale(cf / kappa)
    return v


# ---------------------------------------------------------------------------
# gauge action
# ---------------------------------------------------------------------------

def gauge_transform(fam: LsolpFamily, g: GaugeParams, validate: bool = True) -> LsolpFamily:
    """Gauged family Qt_2n = Q_2n / r_n, Qt_2n+1 = r_n Q_2n+1 + lambda_n Q_2n."""
    return _apply_gauge(fam, g, scaled_shear=False, validate=validate)


def gauge_transform_scaled(fam: LsolpFamily, g: GaugeParams, validate: bool = True) -> LsolpFamily:
    """Gauge variant with the shear applied inside the scaling:
    Qt_2n+1 = r_n (Q_2n+1 + lambda_n Q_2n).

    Equivalent to gauge_transform with lambda_n -> r_n lambda_n; this is the
    parameterization under which the butterfly parameter map is the stated
    one-to-one correspondence (see spectra.butterfly_params).
    """
    return _apply_gauge(fam, g, scaled_shear=True, validate=validate)


def _apply_gauge(fam: LsolpFamily, g: GaugeParams, scaled_shear: bool, validate: bool) -> LsolpFamily:
    if g.order != fam.order:
        raise ValueError(f"gauge order {g.order} != family order {fam.order}")

    def transform_row(row: Sequence[float]) -> Tuple[float, ...]:
        out = list(row)
        for k in range(fam.order):
            r, lam = float(g.r[k]), float(g.lam[k])
            shear = r * lam if scaled_shear else lam
            out[2 * k] = row[2 * k] / r
            out[2 * k + 1] = r * row[2 * k + 1] + shear * row[2 * k]
        return tuple(out)

    members = None
    if fam.members is not None:
        members = []
        for k in range(fam.order):
            r, lam = float(g.r[k]), float(g.lam[k])
            shear = r * lam if scaled_shear else lam
            members.append(fam.members[2 * k].as_float().scale(1.0 / r))
            members.append(fam.members[2 * k + 1].as_float().scale(r)
                           + fam.members[2 * k].as_float().scale(shear))
        members = tuple(members)
    out = LsolpFamily(measure=fam.measure, order=fam.order,
                      node_values=tuple(transform_row(r) for r in fam.node_values),
                      recip_values=tuple(transform_row(r) for r in fam.recip_values),
                      members=members)
    if validate:
        _require_orthonormal(out, PAIRING_VALIDATION_TOL, "gauge_transform")
    return out


# ---------------------------------------------------------------------------
# multiplication-by-z operator
# ---------------------------------------------------------------------------

def family_vector_order(n: int) -> List[int]:
    """Member indices in eigenvector order (Q_1, Q_3, ..., Q_2N-1, Q_0, ..., Q_2N-2)."""
    return [2 * k + 1 for k in range(n)] + [2 * k for k in range(n)]


def multiplication_matrix(fam: LsolpFamily, tol: float = REPRESENTATION_TOL) -> List[List[float]]:
    """Matrix A of the multiplication operator f -> z f in the gauged basis.

    Row ordering follows the eigenvector layout (odd members first); the
    entry A[r][c] is the coefficient of member c in z * member r, extracted
    through the skew-duality pairings
        coeff on Q_2m   = -<Q_2m+1 | v>,   coeff on Q_2m+1 = <Q_2m | v>.
    A residual check at every support point guards against a family that z
    does not stabilize.
    """
    n = fam.order
    order_map = family_vector_order(n)
    m = fam.measure
    nodes = [float(z) for z in m.nodes]
    weights = [float(w) for w in m.weights]

    def pair_with(a: int, v_node: Sequence[float], v_recip: Sequence[float]) -> float:
        tot = 0.0
        for k in range(len(nodes)):
            tot += (fam.recip_values[k][a] * v_node[k] - fam.node_values[k][a] * v_recip[k]) * weights[k]
        return tot

    rows = []
    for r in order_map:
        zv_node = [nodes[k] * fam.node_values[k][r] for k in range(len(nodes))]
        zv_recip = [fam.recip_values[k][r] / nodes[k] for k in range(len(nodes))]
        coeff_even = [-pair_with(2 * mm + 1, zv_node, zv_recip) for mm in range(n)]
        coeff_odd = [pair_with(2 * mm, zv_node, zv_recip) for mm in range(n)]
        row = [0.0] * (2 * n)
        for mm in range(n):
            row[mm] = coeff_odd[mm]
            row[n + mm] = coeff_even[mm]
        rows.append(row)
    _validate_representation(fam, rows, order_map, tol)
    return rows


def _validate_representation(fam: LsolpFamily, rows: List[List[float]],
                             order_map: List[int], tol: float) -> None:
    n = fam.order
    nodes = [float(z) for z in fam.measure.nodes]
    scale = max(1.0, max(abs(x) for row in rows for x in row))
    for k, z in enumerate(nodes):
        for point, table in ((z, fam.node_values), (1.0 / z, fam.recip_values)):
            vec = [table[k][j] for j in order_map]
            vec_norm = max(1.0, max(abs(x) for x in vec))
            for r in range(2 * n):
                lhs = sum(rows[r][c] * vec[c] for c in range(2 * n))
                err = abs(lhs - point * vec[r]) / (scale * vec_norm)
                if err > tol:
                    raise RepresentationError(
                        f"multiplication operator fails at support point {point:.6g}: "
                        f"row {r} residual {err:.3e} > {tol:g}"
                    )


def butterfly_sparsity_defect(a: List[List[float]]) -> float:
    """Largest |entry| outside the butterfly sparsity pattern.

    Pattern (N+N block layout): diagonal top-left and bottom-left blocks,
    tridiagonal top-right and bottom-right blocks.
    """
    n2 = len(a)
    n = n2 // 2
    worst = 0.0
    for i in range(n2):
        for j in range(n2):
            bi, bj = i // n, j // n
            ii, jj = i % n, j % n
            if bj == 0:
                allowed = ii == jj
            else:
                allowed = abs(ii - jj) <= 1
            if not allowed:
                worst = max(worst, abs(a[i][j]))
    return worst


def lsolp_pfaffian_member(mu_table, n: int, odd: bool) -> LaurentPoly:
    """Unnormalized alternating-basis member by direct Pfaffian expansion.

    Even: Pf(0,-1,1,-2,2,...,-n,n,z); odd: Pf(0,-1,1,...,-n,-n-1,z).
    Used as an oracle: the result is proportional to the corresponding
    shifted family member.
    """
    from .pfaffian import SkewArray, pf_indices

    exps = [0]
    for k in range(1, n + 1):
        exps.extend([-k, k])
    if odd:
        exps[-1] = -n - 1
    table = SkewArray.from_entry_fn(len(exps), lambda i, j: mu_table.mu_at(exps[j] - exps[i]))
    coeffs = {}
    for pos in range(len(exps)):
        minor = pf_indices(table, [i for i in range(len(exps)) if i != pos])
        if minor != 0:
            coeffs[exps[pos]] = minor if pos % 2 == 0 else -minor
    return LaurentPoly(coeffs)
