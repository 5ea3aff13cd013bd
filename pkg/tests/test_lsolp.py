"""Alternating-basis families, gauges, and the multiplication operator."""

import math
import random
from fractions import Fraction

import pytest

from lsopkit.errors import AdmissibilityError, DegeneracyError, RepresentationError, StructureError
from lsopkit.lsolp import (GaugeParams, butterfly_sparsity_defect, gauge_transform,
                           gauge_transform_scaled, gram_schmidt_lsolp, gram_schmidt_pairs,
                           lsolp_from_lsop, lsolp_from_values, lsolp_pfaffian_member,
                           multiplication_matrix)
from lsopkit.lsop import evaluate_family, lsop_via_recurrence, orthonormalize, recurrence_from_measure
from lsopkit.moments import DiscreteMeasure, MomentTable, random_measure
from lsopkit.numerics import dense_eigs, spectra_distance

REF = DiscreteMeasure([Fraction(2)], [Fraction(1)])


def random_gauge(rng, n):
    return GaugeParams(r=tuple(rng.choice([-1, 1]) * rng.uniform(0.5, 2.0) for _ in range(n)),
                       lam=tuple(rng.uniform(-2, 2) for _ in range(n)))


def test_gauge_params_validation():
    with pytest.raises(AdmissibilityError):
        GaugeParams(r=(0.0,), lam=(1.0,))
    with pytest.raises(ValueError):
        GaugeParams(r=(1.0,), lam=(1.0, 2.0))


def test_shift_construction_reference():
    rec = recurrence_from_measure(REF, 1)
    qt = orthonormalize(lsop_via_recurrence(rec, 1), rec)
    fam = lsolp_from_lsop(REF.as_float(), qt)
    # Q_0 = qt_0, Q_1 = -z^-1 qt_0, <Q_0|Q_1> = 1
    assert fam.members[0] == qt[0]
    assert fam.members[1] == qt[0].shift(-1).scale(-1)
    assert fam.pairing(0, 1) == pytest.approx(1.0)
    assert fam.pairing(0, 0) == pytest.approx(0.0)


def test_odd_member_is_shifted_even():
    m = random_measure(31, 3, mode="double")
    rec = recurrence_from_measure(m, 3)
    qt = orthonormalize(lsop_via_recurrence(rec, 3), rec)
    fam = lsolp_from_lsop(m, qt)
    for k in range(3):
        # z Q_2k+1 = -Q_2k identically
        diff = fam.members[2 * k + 1].shift(1) + fam.members[2 * k]
        assert diff.max_abs_coeff() < 1e-12


def test_from_values_matches_from_polys():
    m = random_measure(32, 4, mode="double")
    rec = recurrence_from_measure(m, 4)
    fv = evaluate_family(m, 4)
    qt = orthonormalize(lsop_via_recurrence(rec, 4), rec)
    fam_v = lsolp_from_values(fv)
    fam_c = lsolp_from_lsop(m, qt)
    for r1, r2 in zip(fam_v.node_values, fam_c.node_values):
        for a, b in zip(r1, r2):
            assert a == pytest.approx(b, rel=1e-8, abs=1e-8)


def test_validation_rejects_non_orthonormal():
    m = random_measure(33, 2, mode="double")
    rec = recurrence_from_measure(m, 2)
    qt = orthonormalize(lsop_via_recurrence(rec, 2), rec)
    qt[0] = qt[0].scale(1.5)  # break the pairing
    with pytest.raises(StructureError):
        lsolp_from_lsop(m, qt)


def test_gram_schmidt_count_one():
    fam = gram_schmidt_lsolp(REF.as_float(), 1)
    assert fam.members[0].coeffs == pytest.approx({0: math.sqrt(2.0 / 3.0)})


def test_gram_schmidt_matches_shift_exact():
    # exact leading-normalized pairs against the shifted monic family
    m = random_measure(34, 2, mode="rational")
    rec = recurrence_from_measure(m, 2)
    qs = lsop_via_recurrence(rec, 2)
    pairs = gram_schmidt_pairs(m, 4)
    for k, (p_even, p_odd, kappa) in enumerate(pairs):
        assert p_even == qs[2 * k].shift(-k)
        assert p_odd == qs[2 * k].shift(-k - 1)
        assert kappa == -rec.kappa(k)


def test_gram_schmidt_matches_shift_values():
    m = random_measure(35, 3, mode="double")
    fam_gs = gram_schmidt_lsolp(m, 6)
    fam_sh = lsolp_from_values(evaluate_family(m, 3))
    for r1, r2 in zip(fam_gs.node_values, fam_sh.node_values):
        for a, b in zip(r1, r2):
            assert a == pytest.approx(b, abs=1e-10)


def test_gram_schmidt_degenerate_support():
    dup = DiscreteMeasure([2.0, 2.0], [0.3, 0.4], strict=False)
    with pytest.raises(DegeneracyError):
        gram_schmidt_lsolp(dup, 4)


def test_gauge_identity():
    m = random_measure(36, 3, mode="double")
    fam = lsolp_from_values(evaluate_family(m, 3))
    same = gauge_transform(fam, GaugeParams.trivial(3))
    for r1, r2 in zip(fam.node_values, same.node_values):
        assert r1 == r2


def test_gauge_preserves_pairings():
    rng = random.Random(7)
    m = random_measure(37, 4, mode="double")
    fam = lsolp_from_values(evaluate_family(m, 4))
    for _ in range(5):
        g = random_gauge(rng, 4)
        assert gauge_transform(fam, g).pairing_defect() < 1e-9
        assert gauge_transform_scaled(fam, g).pairing_defect() < 1e-9


def test_gauge_variants_differ_by_shear_scaling():
    rng = random.Random(8)
    m = random_measure(38, 3, mode="double")
    fam = lsolp_from_values(evaluate_family(m, 3))
    g = random_gauge(rng, 3)
    scaled = gauge_transform_scaled(fam, g)
    plain = gauge_transform(fam, GaugeParams(r=g.r, lam=tuple(r * l for r, l in zip(g.r, g.lam))))
    for r1, r2 in zip(scaled.node_values, plain.node_values):
        for a, b in zip(r1, r2):
            assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


def test_multiplication_matrix_order_one():
    m = DiscreteMeasure([2.0], [1.0])
    fam = lsolp_from_values(evaluate_family(m, 1))
    mat = multiplication_matrix(fam)
    eigs = dense_eigs(mat)
    assert spectra_distance(eigs, [complex(0.5), complex(2.0)]) < 1e-12


def test_multiplication_matrix_butterfly_sparsity():
    rng = random.Random(9)
    m = random_measure(39, 5, mode="double")
    fam = gauge_transform_scaled(lsolp_from_values(evaluate_family(m, 5)), random_gauge(rng, 5))
    mat = multiplication_matrix(fam)
    scale = max(abs(x) for row in mat for x in row)
    assert butterfly_sparsity_defect(mat) < 1e-9 * max(1.0, scale)


def test_multiplication_spectrum_gauge_invariant():
    rng = random.Random(10)
    m = random_measure(40, 4, mode="double")
    base = lsolp_from_values(evaluate_family(m, 4))
    reference = dense_eigs(multiplication_matrix(base))
    for _ in range(3):
        g = random_gauge(rng, 4)
        eigs = dense_eigs(multiplication_matrix(gauge_transform_scaled(base, g)))
        assert spectra_distance(eigs, reference) < 1e-8


def test_multiplication_representation_error():
    # a family that z does not stabilize on the support: truncate to half the pairs
    m = random_measure(41, 4, mode="double")
    fam = lsolp_from_values(evaluate_family(m, 4))
    half = type(fam)(measure=m, order=2,
                     node_values=tuple(r[:4] for r in fam.node_values),
                     recip_values=tuple(r[:4] for r in fam.recip_values))
    with pytest.raises(RepresentationError):
        multiplication_matrix(half)


def test_pfaffian_members_proportional():
    m = random_measure(42, 2, mode="rational")
    table = MomentTable.from_measure(m, 4)
    qs = lsop_via_recurrence(recurrence_from_measure(m, 2), 2)
    for n in range(2):
        even = lsolp_pfaffian_member(table, n, odd=False)
        assert even == qs[2 * n].shift(-n).scale(even.coeff(n))
        odd = lsolp_pfaffian_member(table, n, odd=True)
        assert odd == qs[2 * n].shift(-n - 1).scale(odd.coeff(-n - 1))


def test_ungauged_multiplication_diagonal_is_alpha_difference():
    # the even rows of the ungauged operator read
    # z Q_2n = sqrt(b_{n+1}) Q_2n+2 + Q_2n+1 + (a_{n+1} - a_n) Q_2n + sqrt(b_n) Q_2n-2
    m = random_measure(43, 4, mode="double")
    rec = recurrence_from_measure(m, 4)
    fam = lsolp_from_values(evaluate_family(m, 4))
    mat = multiplication_matrix(fam)
    n = 4
    for k in range(n):
        row = mat[n + k]  # even member Q_2k lives in the second block
        diff = float(rec.alpha[k + 1] - rec.alpha[k])
        assert row[n + k] == pytest.approx(diff, abs=1e-10)
        assert row[k] == pytest.approx(1.0, abs=1e-10)          # Q_2k+1 coefficient
        if k + 1 < n:
            assert row[n + k + 1] == pytest.approx(math.sqrt(float(rec.beta[k + 1])), abs=1e-10)
        if k >= 1:
            assert row[n + k - 1] == pytest.approx(math.sqrt(float(rec.beta[k])), abs=1e-10)
        odd_row = mat[k]  # z Q_2k+1 = -Q_2k
        assert odd_row[n + k] == pytest.approx(-1.0, abs=1e-10)
        for j, v in enumerate(odd_row):
            if j != n + k:
                assert v == pytest.approx(0.0, abs=1e-10)
