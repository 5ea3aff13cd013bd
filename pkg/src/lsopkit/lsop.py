"""Construction of Laurent skew orthogonal polynomials over a discrete measure.

Two independent routes build the same monic family {q_n}:

* the moment-table route: q_2n and q_2n+1 are ratios of Pfaffian minors of
  the skew-moment table, expanded coefficientwise (the oracle path);
* the recurrence route: q_0 = 1, q_1 = z, then the two coupled relations

      z (q_2n   - beta_n  q_2n-2) = q_2n+1 - alpha_n q_2n
      z (q_2n+1 - alpha_n+1 q_2n) = q_2n+2 - q_2n

  driven by alpha_n = sigma_n / tau_n and beta_n = tau_n+1 tau_n-1 / tau_n^2
  (the production path).

The recurrence coefficients come from a discrete Stieltjes walk on the
folded measure (nodes z + 1/z, weights (z - 1/z) w).  The walk always runs
in exact rational arithmetic -- a binary64 measure is lifted to its exact
rational image first -- because the coefficient array is a brutally
ill-conditioned parameterization of the family: correctly rounded
(alpha, beta) alone cap the achievable skew-orthonormality defect near
1e-7 at order 8, while value tables rounded from the exact walk reach
1e-11.  Double mode therefore rounds once, at the outputs.

Even-degree members fold into monic orthogonal polynomials in w = z + 1/z;
that reduction and its Hankel-determinant counterpart live here too,
together with the squared-variable comparison family q_2n = p_n(z^2),
q_2n+1 = z p_n(z^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import AdmissibilityError, DegeneracyError, StructureError
from .laurent import LaurentPoly
from .modes import Scalar, is_exact
from .moments import DiscreteMeasure, MomentTable, skew_inner
from .numerics import dense_det, solve_linear
from .pfaffian import SkewArray, pf_indices

TAU_DEGENERACY_RELATIVE = 1e-8

ONE = LaurentPoly.constant(1)
Z = LaurentPoly.monomial(1)


@dataclass(frozen=True)
class RecurrenceData:
    """Recurrence coefficients and Pfaffian minors of one measure.

    alpha[n] = sigma_n / tau_n for n = 0..order (alpha[0] = 0);
    beta[n]  = tau_{n+1} tau_{n-1} / tau_n^2 for n = 1..order-1, with
    beta[0] = 0 (placeholder) and beta[order] = 0 (finite-rank convention);
    tau[0] = 1, sigma[0] = 0.
    """

    order: int
    alpha: Tuple[Scalar, ...]
    beta: Tuple[Scalar, ...]
    tau: Tuple[Scalar, ...]
    sigma: Tuple[Scalar, ...]

    def __post_init__(self):
        n = self.order
        if not (len(self.alpha) == len(self.beta) == len(self.tau) == len(self.sigma) == n + 1):
            raise ValueError("coefficient arrays must all have length order + 1")
        if self.alpha[0] != 0 or self.sigma[0] != 0 or self.tau[0] != 1:
            raise ValueError("conventions violated: alpha_0 = sigma_0 = 0, tau_0 = 1")

    def is_admissible(self) -> bool:
        """tau_n > 0 for all n <= order, equivalently beta_n > 0 inside."""
        return all(t > 0 for t in self.tau)

    def require_admissible(self) -> None:
        if not self.is_admissible():
            bad = [n for n, t in enumerate(self.tau) if not t > 0]
            raise AdmissibilityError(f"tau must be positive; offending indices {bad}")

    def scale_squares(self) -> List[Scalar]:
        """Orthonormalization scale squares s_n = tau_n / tau_{n+1}, n < order."""
        self.require_admissible()
        return [self.tau[n] / self.tau[n + 1] for n in range(self.order)]

    def kappa(self, n: int) -> Scalar:
        """Pairing normalizer <q_2n | q_2n+1> = tau_{n+1} / tau_n."""
        return self.tau[n + 1] / self.tau[n]

    def as_float(self) -> "RecurrenceData":
        return RecurrenceData(
            order=self.order,
            alpha=tuple(float(x) for x in self.alpha),
            beta=tuple(float(x) for x in self.beta),
            tau=tuple(float(x) for x in self.tau),
            sigma=tuple(float(x) for x in self.sigma),
        )


# ---------------------------------------------------------------------------
# recurrence coefficients: Pfaffian route (oracle)
# ---------------------------------------------------------------------------

def moment_skew_array(mu: MomentTable, top_index: int) -> SkewArray:
    """Skew table over indices 0..top_index with entries <z^i|z^j> = mu_{j-i}."""
    return SkewArray.from_entry_fn(top_index + 1, lambda i, j: mu.mu_at(j - i))


def moment_pfaffian_table(mu: MomentTable, n: int) -> RecurrenceData:
    """Recurrence data from Pfaffian minors of the moment table.

    tau_k = Pf(0,...,2k-1) and sigma_k = Pf(0,...,2k-2,2k); a vanishing
    tau_k (exactly in rational arithmetic, below 1e-8 x running scale in
    double) aborts with a degeneracy error since the family does not exist.
    """
    table = moment_skew_array(mu, 2 * n)
    exact = is_exact(mu.mu_at(1))
    tau: List[Scalar] = [Fraction(1) if exact else 1.0]
    sigma: List[Scalar] = [Fraction(0) if exact else 0.0]
    scale = 1.0
    for k in range(1, n + 1):
        t = pf_indices(table, list(range(2 * k)))
        s = pf_indices(table, list(range(2 * k - 1)) + [2 * k])
        if exact:
            if t == 0:
                raise DegeneracyError(f"tau_{k} = 0: the skew orthogonal family does not exist")
        else:
            scale = max(scale, abs(float(t)), abs(float(s)))
            if abs(float(t)) <= TAU_DEGENERACY_RELATIVE * scale:
                raise DegeneracyError(
                    f"tau_{k} = {float(t):.3e} below degeneracy threshold "
                    f"({TAU_DEGENERACY_RELATIVE:g} x scale {scale:.3e})"
                )
        tau.append(t)
        sigma.append(s)
    alpha = [tau[0] * 0] + [sigma[k] / tau[k] for k in range(1, n + 1)]
    beta = [tau[0] * 0]
    for k in range(1, n + 1):
        if k < n:
            beta.append(tau[k + 1] * tau[k - 1] / (tau[k] * tau[k]))
        else:
            beta.append(tau[0] * 0)  # finite-rank convention beta_order = 0
    return RecurrenceData(order=n, alpha=tuple(alpha), beta=tuple(beta),
                          tau=tuple(tau), sigma=tuple(sigma))


# ---------------------------------------------------------------------------
# recurrence coefficients and support values: folded Stieltjes route
# ---------------------------------------------------------------------------

def folded_support(m: DiscreteMeasure) -> Tuple[List[Scalar], List[Scalar]]:
    """Folded nodes x_k = z_k + 1/z_k and weights (z_k - 1/z_k) w_k."""
    xs, ws = [], []
    for z, w in zip(m.nodes, m.weights):
        zi = 1 / z if isinstance(z, Fraction) else 1.0 / z
        xs.append(z + zi)
        ws.append((z - zi) * w)
    return xs, ws


class _FoldedWalk:
    """Exact discrete Stieltjes walk on the folded measure.

    Carries the monic folded polynomials p_j by their values on the support
    (all the functional ever sees) and records the three-term data
    (a_j, b_j, h_j) plus the value table p_j(x_k) for later reuse.
    """

    def __init__(self, m_exact: DiscreteMeasure, n: int):
        xs, ws = folded_support(m_exact)
        self.xs, self.ws = xs, ws
        self.a: List[Fraction] = []
        self.b: List[Fraction] = [Fraction(0)]
        self.h: List[Fraction] = []
        self.p_values: List[List[Fraction]] = []
        p_prev = [Fraction(0)] * len(xs)
        p_cur = [Fraction(1)] * len(xs)
        for j in range(n):
            self.p_values.append(list(p_cur))
            hj = sum(w * p * p for w, p in zip(ws, p_cur))
            if hj == 0:
                raise DegeneracyError(f"folded norm h_{j} vanished; tau_{j + 1} = 0")
            self.h.append(hj)
            aj = sum(w * x * p * p for w, x, p in zip(ws, xs, p_cur)) / hj
            self.a.append(aj)
            if j >= 1:
                self.b.append(self.h[j] / self.h[j - 1])
            p_next = [
                (x - aj) * pc - (self.b[j] * pp if j >= 1 else 0)
                for x, pc, pp in zip(xs, p_cur, p_prev)
            ]
            p_prev, p_cur = p_cur, p_next

    def recurrence_data(self, n: int) -> RecurrenceData:
        tau: List[Fraction] = [Fraction(1)]
        for k in range(n):
            tau.append(tau[-1] * self.h[k])
        alpha: List[Fraction] = [Fraction(0)]
        for k in range(n):
            alpha.append(alpha[-1] + self.a[k])
        beta: List[Fraction] = [Fraction(0)]
        for k in range(1, n + 1):
            beta.append(self.b[k] if k < n else Fraction(0))
        sigma = [alpha[k] * tau[k] for k in range(n + 1)]
        return RecurrenceData(order=n, alpha=tuple(alpha), beta=tuple(beta),
                              tau=tuple(tau), sigma=tuple(sigma))


def _lift_exact(m: DiscreteMeasure) -> Optional[DiscreteMeasure]:
    try:
        return DiscreteMeasure([Fraction(z) for z in m.nodes],
                               [Fraction(w) for w in m.weights], strict=m.strict)
    except (TypeError, ValueError):
        return None  # complex or otherwise unliftable nodes


def recurrence_from_measure(m: DiscreteMeasure, n: Optional[int] = None) -> RecurrenceData:
    """Recurrence data by the folded Stieltjes walk.

    The walk is exact on the measure's rational image; a float measure gets
    float outputs (rounded once), an exact measure gets exact outputs.
    """
    if n is None:
        n = m.size
    if n > m.size:
        raise DegeneracyError(f"order {n} exceeds the measure's {m.size} nodes")
    m_exact = m if m.is_exact() else _lift_exact(m)
    if m_exact is None:
        return _recurrence_inexact(m, n)
    walk = _FoldedWalk(m_exact, n)
    rec = walk.recurrence_data(n)
    return rec if m.is_exact() else rec.as_float()


def tau_sequence(m: DiscreteMeasure, n: int) -> List[Scalar]:
    """tau_0..tau_n of a measure via the folded Stieltjes route."""
    return list(recurrence_from_measure(m, n).tau)


def _recurrence_inexact(m: DiscreteMeasure, n: int) -> RecurrenceData:
    # complex-node fallback: same walk in ambient arithmetic
    xs, ws = folded_support(m)
    p_prev = [w * 0 for w in xs]
    p_cur = [1 + w * 0 for w in xs]
    a, b, h = [], [0.0], []
    for j in range(n):
        hj = sum(w * p * p for w, p in zip(ws, p_cur))
        if hj == 0:
            raise DegeneracyError(f"folded norm h_{j} vanished; tau_{j + 1} = 0")
        h.append(hj)
        aj = sum(w * x * p * p for w, x, p in zip(ws, xs, p_cur)) / hj
        a.append(aj)
        if j >= 1:
            b.append(h[j] / h[j - 1])
        p_next = [(x - aj) * pc - (b[j] * pp if j >= 1 else 0)
                  for x, pc, pp in zip(xs, p_cur, p_prev)]
        p_prev, p_cur = p_cur, p_next
    tau = [1.0]
    for k in range(n):
        tau.append(tau[-1] * h[k])
    alpha = [0.0]
    for k in range(n):
        alpha.append(alpha[-1] + a[k])
    beta = [0.0] + [b[k] if k < n else 0.0 for k in range(1, n + 1)]
    sigma = [alpha[k] * tau[k] for k in range(n + 1)]
    return RecurrenceData(order=n, alpha=tuple(alpha), beta=tuple(beta),
                          tau=tuple(tau), sigma=tuple(sigma))


@dataclass(frozen=True)
class FamilyValues:
    """Accurate values of the orthonormal family on the measure's support.

    qt_node[k][j]  = qt_j(z_k) and qt_recip[k][j] = qt_j(1/z_k) for
    j = 0..2*order-1, rounded from the exact walk; these tables, not the
    coefficient arrays, are the numerically trustworthy representation.
    """

    measure: DiscreteMeasure
    rec: RecurrenceData
    order: int
    qt_node: Tuple[Tuple[float, ...], ...]
    qt_recip: Tuple[Tuple[float, ...], ...]

    def pairing(self, a: int, b: int) -> float:
        """<qt_a | qt_b> by summation over the support."""
        tot = 0.0
        for (z, w, vz, vr) in zip(self.measure.nodes, self.measure.weights,
                                  self.qt_node, self.qt_recip):
            tot += (vr[a] * vz[b] - vz[a] * vr[b]) * float(w)
        return tot

    def gram(self) -> List[List[float]]:
        d = 2 * self.order
        return [[self.pairing(a, b) for b in range(d)] for a in range(d)]


def exact_support_values(m: DiscreteMeasure, n: Optional[int] = None):
    """Exact monic values q_0..q_2n at every node and reciprocal.

    Returns (monic_node, monic_recip, rec) with monic_node[k][j] = q_j(z_k)
    as Fractions; built from the exact walk: even members are
    q_2j(z) = z^j p_j(z + 1/z), odd members follow the recurrence line
    q_2j+1 = z (q_2j - beta_j q_2j-2) + alpha_j q_2j.
    """
    if n is None:
        n = m.size
    m_exact = m if m.is_exact() else _lift_exact(m)
    if m_exact is None:
        raise AdmissibilityError("exact support values need real nodes")
    walk = _FoldedWalk(m_exact, n)
    rec = walk.recurrence_data(n)
    monic_node, monic_recip = [], []
    for k, z in enumerate(m_exact.nodes):
        zi = 1 / z
        vz = [Fraction(0)] * (2 * n + 1)
        vr = [Fraction(0)] * (2 * n + 1)
        for j in range(n):
            pv = walk.p_values[j][k]
            vz[2 * j] = z**j * pv
            vr[2 * j] = zi**j * pv
        vz[2 * n] = Fraction(0)  # p_n vanishes on the folded support
        vr[2 * n] = Fraction(0)
        for j in range(n):
            t = vz[2 * j] - (rec.beta[j] * vz[2 * j - 2] if j >= 1 else 0)
            vz[2 * j + 1] = z * t + rec.alpha[j] * vz[2 * j]
            t = vr[2 * j] - (rec.beta[j] * vr[2 * j - 2] if j >= 1 else 0)
            vr[2 * j + 1] = zi * t + rec.alpha[j] * vr[2 * j]
        monic_node.append(vz)
        monic_recip.append(vr)
    return monic_node, monic_recip, rec


def evaluate_family(m: DiscreteMeasure, n: Optional[int] = None) -> FamilyValues:
    """Orthonormal family values on the support, via the exact walk.

    Even members come directly from the folded value table,
    qt_2j(z) = z^j p_j(z + 1/z) / sqrt(h_j), reflected exactly for 1/z;
    odd members are assembled from the evens through
    qt_2j+1 = z (qt_2j - sqrt(beta_j) qt_2j-2) + alpha_j qt_2j.
    """
    if n is None:
        n = m.size
    m_exact = m if m.is_exact() else _lift_exact(m)
    if m_exact is None:
        raise AdmissibilityError("family evaluation needs real nodes")
    walk = _FoldedWalk(m_exact, n)
    rec_exact = walk.recurrence_data(n)
    rec_exact.require_admissible()
    alpha = [float(x) for x in rec_exact.alpha]
    sqrt_b = [0.0] + [math.sqrt(float(x)) for x in rec_exact.beta[1:]]
    sqrt_h = [math.sqrt(float(x)) for x in walk.h]
    qt_node, qt_recip = [], []
    for k, z in enumerate(m_exact.nodes):
        zf = float(z)
        vz = [0.0] * (2 * n)
        vr = [0.0] * (2 * n)
        zpow = 1.0
        for j in range(n):
            pv = float(walk.p_values[j][k])
            vz[2 * j] = zpow * pv / sqrt_h[j]
            vr[2 * j] = pv / (zpow * sqrt_h[j])
            zpow *= zf
        for j in range(n):
            t = vz[2 * j] - (sqrt_b[j] * vz[2 * j - 2] if j >= 1 else 0.0)
            vz[2 * j + 1] = zf * t + alpha[j] * vz[2 * j]
            t = vr[2 * j] - (sqrt_b[j] * vr[2 * j - 2] if j >= 1 else 0.0)
            vr[2 * j + 1] = t / zf + alpha[j] * vr[2 * j]
        qt_node.append(tuple(vz))
        qt_recip.append(tuple(vr))
    rec = rec_exact if m.is_exact() else rec_exact.as_float()
    return FamilyValues(measure=m, rec=rec, order=n,
                        qt_node=tuple(qt_node), qt_recip=tuple(qt_recip))


# ---------------------------------------------------------------------------
# the polynomials themselves (coefficient route)
# ---------------------------------------------------------------------------

def lsop_via_pfaffian(mu: MomentTable, n: int) -> LaurentPoly:
    """Monic q_n from Pfaffian minors, expanded along the variable column.

    q_2m(z)   = sum_k (-1)^k z^k Pf({0..2m} \\ {k}) / tau_m
    q_2m+1(z) = z^(2m+1) + sum_{k<2m} (-1)^k z^k Pf(({0..2m-1} \\ {k}) + {2m+1}) / tau_m

    so the odd members have no z^2m term by construction.
    """
    m_half = n // 2
    top = 2 * m_half + (1 if n % 2 else 0)
    table = moment_skew_array(mu, top)
    tau_m = pf_indices(table, list(range(2 * m_half)))
    if tau_m == 0:
        raise DegeneracyError(f"tau_{m_half} = 0: q_{n} does not exist")
    coeffs = {}
    if n % 2 == 0:
        idx = list(range(2 * m_half + 1))
        for k in idx:
            minor = pf_indices(table, [i for i in idx if i != k])
            if minor != 0:
                coeffs[k] = (minor if k % 2 == 0 else -minor) / tau_m
    else:
        idx = list(range(2 * m_half)) + [2 * m_half + 1]
        for pos, k in enumerate(idx):
            minor = pf_indices(table, [i for i in idx if i != k])
            if minor != 0:
                coeffs[k] = (minor if pos % 2 == 0 else -minor) / tau_m
    return LaurentPoly(coeffs)


def lsop_via_recurrence(rec: RecurrenceData, n: int) -> List[LaurentPoly]:
    """Monic q_0..q_2n by the coupled two-term recurrences."""
    if n > rec.order:
        raise ValueError(f"requested 2*{n} polynomials from order-{rec.order} data")
    qs = [ONE, Z]
    for k in range(n):
        if k >= 1:
            q_odd = Z * qs[2 * k] - rec.beta[k] * (Z * qs[2 * k - 2]) + rec.alpha[k] * qs[2 * k]
            qs.append(q_odd)
        q_even = Z * qs[2 * k + 1] - rec.alpha[k + 1] * (Z * qs[2 * k]) + qs[2 * k]
        qs.append(q_even)
    return qs[: 2 * n + 1]


def orthonormalize(qs: Sequence[LaurentPoly], rec: RecurrenceData) -> List[LaurentPoly]:
    """Scaled family qt_2n = sqrt(tau_n / tau_{n+1}) q_2n (same scale on 2n+1).

    The scales are irrational in general, so the output is float-valued;
    exact statements about this family go through the scale squares (the
    pairing <q_2m|q_2n+1> tau_n/tau_{n+1} = delta_mn is rational), and
    numerical statements through FamilyValues tables.
    """
    scales = rec.scale_squares()
    out = []
    for j in range(2 * rec.order):
        s = scales[j // 2]
        if not s > 0:
            raise AdmissibilityError(f"scale square tau_{j//2}/tau_{j//2+1} = {s} not positive")
        out.append(qs[j].as_float().scale(math.sqrt(float(s))))
    return out


# ---------------------------------------------------------------------------
# reduction of even members to orthogonal polynomials in w = z + 1/z
# ---------------------------------------------------------------------------

def even_to_op(q2n: LaurentPoly, rel_tol: float = 1e-8) -> LaurentPoly:
    """The unique monic P with q_2n(z) = z^n P(z + 1/z).

    Peels binomial expansions of (z + 1/z)^k from the top.  Exact input
    must be exactly self-reciprocal; float input is accepted up to a
    relative symmetry defect of rel_tol and symmetrized before peeling
    (rounding breaks the mirror identity bitwise).
    """
    if q2n.is_zero():
        raise StructureError("zero polynomial has no reduction")
    order = q2n.max_exp
    if order % 2 or q2n.min_exp < 0:
        raise StructureError(f"expected an ordinary polynomial of even degree, got exponents "
                             f"[{q2n.min_exp}, {order}]")
    exact = all(is_exact(c) for c in q2n.coeffs.values())
    if exact:
        if not q2n.is_self_reciprocal(order):
            raise StructureError("polynomial is not self-reciprocal; no representation in z + 1/z")
        work = q2n
    else:
        scale = max(q2n.max_abs_coeff(), 1.0)
        defect = max(abs(float(q2n.coeff(order - e)) - float(c)) for e, c in q2n.coeffs.items())
        if defect > rel_tol * scale:
            raise StructureError(f"symmetry defect {defect:.3e} exceeds {rel_tol:g} x scale; "
                                 "no representation in z + 1/z")
        sym = {}
        for e in set(q2n.coeffs) | {order - e for e in q2n.coeffs}:
            sym[e] = 0.5 * (float(q2n.coeff(e)) + float(q2n.coeff(order - e)))
        work = LaurentPoly(sym)
    n = order // 2
    r = work.shift(-n)
    w_plus = LaurentPoly({1: 1, -1: 1})
    coeffs = {}
    for k in range(n, -1, -1):
        c = r.coeff(k)
        if c != 0:
            coeffs[k] = c
            r = r - _poly_pow(w_plus, k).scale(c)
    if exact and not r.is_zero():
        raise StructureError("reduction left a remainder; input violates Laurent symmetry")
    return LaurentPoly(coeffs)


def op_via_hankel(c: Sequence[Scalar], n: int) -> LaurentPoly:
    """Monic degree-n orthogonal polynomial of the moment sequence c.

    Solves the Hankel system sum_j x_j c_{i+j} = -c_{i+n} (i < n) by dense
    elimination; equivalent to the bordered-determinant ratio.
    """
    if n == 0:
        return ONE
    if len(c) < 2 * n:
        raise ValueError(f"need {2 * n} moments for degree {n}, got {len(c)}")
    h = [[c[i + j] for j in range(n)] for i in range(n)]
    rhs = [-c[i + n] for i in range(n)]
    try:
        xs = solve_linear(h, rhs)
    except ValueError as exc:
        raise DegeneracyError(f"Hankel block of order {n} is singular") from exc
    coeffs = {j: xs[j] for j in range(n)}
    coeffs[n] = 1
    return LaurentPoly(coeffs)


def hankel_det(c: Sequence[Scalar], n: int) -> Scalar:
    """det (c_{i+j}), 0 <= i, j < n; the order-0 determinant is 1."""
    return dense_det([[c[i + j] for j in range(n)] for i in range(n)])


def shifted_hankel_det(c: Sequence[Scalar], n: int) -> Scalar:
    """Hankel variant with the last column advanced by one index.

    Rows (c_i, ..., c_{i+n-2}, c_{i+n}); the order-0 value is 0 by the
    sigma_0 convention.
    """
    if n == 0:
        return 0
    rows = [[c[i + j] for j in range(n - 1)] + [c[i + n]] for i in range(n)]
    return dense_det(rows)


@dataclass(frozen=True)
class PfaffianDetReport:
    """Comparison of Pfaffian minors against (shifted) Hankel determinants."""

    tau_deviation: Tuple[float, ...]
    sigma_deviation: Tuple[float, ...]
    max_relative: float
    exact_match: bool


def verify_pfaffian_det(rec: RecurrenceData, c: Sequence[Scalar], n: int) -> PfaffianDetReport:
    """Check tau_k = Hankel_k(c) and sigma_k = shifted-Hankel_k(c) for k <= n."""
    tau_dev, sigma_dev = [], []
    max_rel = 0.0
    exact = True
    for k in range(n + 1):
        td = rec.tau[k] - hankel_det(c, k)
        sd = rec.sigma[k] - shifted_hankel_det(c, k)
        exact = exact and td == 0 and sd == 0
        tau_dev.append(abs(float(td)))
        sigma_dev.append(abs(float(sd)))
        denom = max(1.0, abs(float(rec.tau[k])), abs(float(rec.sigma[k])))
        max_rel = max(max_rel, abs(float(td)) / denom, abs(float(sd)) / denom)
    return PfaffianDetReport(tuple(tau_dev), tuple(sigma_dev), max_rel, exact)


# ---------------------------------------------------------------------------
# squared-variable comparison construction
# ---------------------------------------------------------------------------

def kodama_sops(a: Sequence[Scalar], b: Sequence[Scalar], n: int) -> List[LaurentPoly]:
    """Skew family q_2k = p_k(z^2), q_2k+1 = z p_k(z^2) from monic three-term
    coefficients (a_k, b_k); returns q_0..q_{2n+1}."""
    if len(a) < n or (n >= 2 and len(b) < n):
        raise ValueError(f"need {n} a-coefficients and {n} b-coefficients")
    # p_k in z^2 directly: p_{k+1}(u) = (u - a_k) p_k(u) - b_k p_{k-1}(u), u = z^2
    ps = [ONE]
    if n >= 1:
        u = LaurentPoly.monomial(2)
        ps.append(u - LaurentPoly.constant(a[0]))
        for k in range(1, n):
            ps.append((u - LaurentPoly.constant(a[k])) * ps[k] - ps[k - 1].scale(b[k]))
    qs = []
    for k in range(n + 1):
        qs.append(ps[k])
        qs.append(ps[k].shift(1))
    return qs


def kodama_residuals(qs: Sequence[LaurentPoly], a: Sequence[Scalar], b: Sequence[Scalar]) -> List[LaurentPoly]:
    """Defects of z q_2k = q_2k+1 and z q_2k+1 = q_2k+2 + a_k q_2k + b_k q_2k-2.

    All returned polynomials are identically zero when qs came from
    kodama_sops with the same coefficients.
    """
    n = len(qs) // 2 - 1
    out = []
    for k in range(n + 1):
        out.append(qs[2 * k].shift(1) - qs[2 * k + 1])
        if k < n:
            res = qs[2 * k + 1].shift(1) - qs[2 * k + 2] - qs[2 * k].scale(a[k])
            if k >= 1:
                res = res - qs[2 * k - 2].scale(b[k])
            out.append(res)
    return out


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _poly_pow(p: LaurentPoly, k: int) -> LaurentPoly:
    out = ONE
    for _ in range(k):
        out = out * p
    return out


def skew_gram(m: DiscreteMeasure, fs: Sequence[LaurentPoly], gs: Sequence[LaurentPoly]):
    """Matrix of <f_i | g_j> pairings (test and report helper)."""
    return [[skew_inner(m, f, g) for g in gs] for f in fs]
