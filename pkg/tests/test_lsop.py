"""The skew orthogonal family: both routes, reductions, comparisons."""

import math
import random
from fractions import Fraction

import pytest

from lsopkit.errors import AdmissibilityError, DegeneracyError, StructureError
from lsopkit.laurent import LaurentPoly
from lsopkit.lsop import (evaluate_family, even_to_op, exact_support_values,
                          hankel_det, kodama_residuals, kodama_sops, lsop_via_pfaffian,
                          lsop_via_recurrence, moment_pfaffian_table, op_via_hankel,
                          orthonormalize, recurrence_from_measure, shifted_hankel_det,
                          verify_pfaffian_det)
from lsopkit.moments import DiscreteMeasure, MomentTable, mu_moment, random_measure, skew_inner

REF = DiscreteMeasure([Fraction(2)], [Fraction(1)])
REF_TABLE = MomentTable.from_measure(REF, 1)


def test_reference_minors():
    rec = moment_pfaffian_table(REF_TABLE, 1)
    assert rec.tau[0] == 1 and rec.sigma[0] == 0
    assert rec.tau[1] == Fraction(3, 2)       # Pf(0,1) = mu_1
    assert rec.sigma[1] == Fraction(15, 4)    # Pf(0,2) = mu_2
    assert rec.alpha[1] == Fraction(5, 2)     # z + 1/z at z = 2


def test_tau1_is_mu1():
    m = random_measure(8, 3, mode="rational")
    rec = moment_pfaffian_table(MomentTable.from_measure(m, 3), 3)
    assert rec.tau[1] == mu_moment(m, 1)


def test_routes_give_identical_coefficient_data():
    m = random_measure(11, 4, mode="rational")
    by_pfaffian = moment_pfaffian_table(MomentTable.from_measure(m, 4), 4)
    by_stieltjes = recurrence_from_measure(m, 4)
    assert by_pfaffian.tau == by_stieltjes.tau
    assert by_pfaffian.sigma == by_stieltjes.sigma
    assert by_pfaffian.alpha == by_stieltjes.alpha
    assert by_pfaffian.beta == by_stieltjes.beta


def test_first_three_members():
    assert lsop_via_pfaffian(REF_TABLE, 0) == LaurentPoly.constant(Fraction(1))
    assert lsop_via_pfaffian(REF_TABLE, 1) == LaurentPoly.monomial(1, Fraction(1))
    q2 = lsop_via_pfaffian(REF_TABLE, 2)
    assert q2 == LaurentPoly({2: Fraction(1), 1: Fraction(-5, 2), 0: Fraction(1)})


def test_recurrence_seeds_and_q2():
    rec = recurrence_from_measure(REF, 1)
    qs = lsop_via_recurrence(rec, 1)
    assert qs[0] == LaurentPoly.constant(Fraction(1))
    assert qs[1] == LaurentPoly.monomial(1, Fraction(1))
    assert qs[2] == LaurentPoly({2: Fraction(1), 1: -rec.alpha[1], 0: Fraction(1)})


def test_cross_route_equality_full_family():
    m = random_measure(21, 4, mode="rational")
    table = MomentTable.from_measure(m, 4)
    rec = recurrence_from_measure(m, 4)
    qs = lsop_via_recurrence(rec, 4)
    for n in range(9):
        assert lsop_via_pfaffian(table, n) == qs[n]


def test_odd_members_have_no_subtop_term():
    m = random_measure(13, 5, mode="rational")
    qs = lsop_via_recurrence(recurrence_from_measure(m, 5), 5)
    for k in range(5):
        assert qs[2 * k + 1].coeff(2 * k) == 0
        assert qs[2 * k + 1].coeff(2 * k + 1) == 1


def test_even_members_self_reciprocal():
    m = random_measure(14, 5, mode="rational")
    qs = lsop_via_recurrence(recurrence_from_measure(m, 5), 5)
    for k in range(6):
        assert qs[2 * k].is_self_reciprocal(2 * k)


def test_top_member_is_node_polynomial():
    m = random_measure(15, 3, mode="rational")
    qs = lsop_via_recurrence(recurrence_from_measure(m, 3), 3)
    prod = LaurentPoly.constant(Fraction(1))
    for z in m.nodes:
        prod = prod * LaurentPoly({1: Fraction(1), 0: -z}) * LaurentPoly({1: Fraction(1), 0: -1 / z})
    assert qs[6] == prod


def test_degeneracy_detected_exactly():
    # mu_1 = 0 forces tau_1 = 0: weights of opposite sign at reciprocal-symmetric spots
    m = DiscreteMeasure([Fraction(2), Fraction(3)],
                        [Fraction(1), Fraction(-9, 16)], strict=False)
    table = MomentTable.from_measure(m, 2)
    assert mu_moment(m, 1) == 0
    with pytest.raises(DegeneracyError):
        moment_pfaffian_table(table, 2)


def test_orthonormalize_reference_scale():
    rec = recurrence_from_measure(REF, 1)
    qs = lsop_via_recurrence(rec, 1)
    qt = orthonormalize(qs, rec)
    assert qt[0].coeff(0) == pytest.approx(math.sqrt(2.0 / 3.0))
    assert skew_inner(REF.as_float(), qt[0], qt[1]) == pytest.approx(1.0)


def test_orthonormalize_rejects_nonpositive_scales():
    rec = recurrence_from_measure(REF, 1)
    bad = type(rec)(order=1, alpha=rec.alpha, beta=rec.beta,
                    tau=(Fraction(1), Fraction(-3, 2)), sigma=rec.sigma)
    with pytest.raises(AdmissibilityError):
        orthonormalize(lsop_via_recurrence(rec, 1), bad)


def test_family_values_match_coefficient_evaluation():
    m = random_measure(16, 3, mode="double")
    rec = recurrence_from_measure(m, 3)
    fv = evaluate_family(m, 3)
    qt = orthonormalize(lsop_via_recurrence(rec, 3), rec)
    for k, z in enumerate(m.nodes):
        for j in range(6):
            assert fv.qt_node[k][j] == pytest.approx(qt[j](z), rel=1e-9, abs=1e-9)
            assert fv.qt_recip[k][j] == pytest.approx(qt[j](1.0 / z), rel=1e-9, abs=1e-9)


def test_family_gram_is_canonical():
    for seed in (1, 2, 3):
        m = random_measure(seed, 6, mode="double")
        gram = evaluate_family(m, 6).gram()
        for a in range(12):
            for b in range(12):
                expect = 0.0
                if a % 2 == 0 and b % 2 == 1 and a // 2 == b // 2:
                    expect = 1.0
                elif a % 2 == 1 and b % 2 == 0 and a // 2 == b // 2:
                    expect = -1.0
                assert gram[a][b] == pytest.approx(expect, abs=1e-9)


def test_exact_support_values_consistent():
    m = random_measure(18, 3, mode="rational")
    node_vals, recip_vals, rec = exact_support_values(m, 3)
    qs = lsop_via_recurrence(rec, 3)
    for k, z in enumerate(m.nodes):
        for j in range(7):
            assert node_vals[k][j] == qs[j](z)
            assert recip_vals[k][j] == qs[j](1 / z)


def test_even_to_op_basics():
    assert even_to_op(LaurentPoly.constant(Fraction(1))) == LaurentPoly.constant(Fraction(1))
    q2 = LaurentPoly({2: Fraction(1), 1: Fraction(-5, 2), 0: Fraction(1)})
    r1 = even_to_op(q2)
    assert r1 == LaurentPoly({1: Fraction(1), 0: Fraction(-5, 2)})


def test_even_to_op_rejects_asymmetric():
    with pytest.raises(StructureError):
        even_to_op(LaurentPoly({2: Fraction(1), 0: Fraction(2)}))
    with pytest.raises(StructureError):
        even_to_op(LaurentPoly({2: 1.0, 1: 5.0, 0: 1.0 + 1e-3}))


def test_even_to_op_tolerates_float_jitter():
    p = LaurentPoly({0: 1.0, 1: -2.5, 2: 1.0 + 1e-12})
    r = even_to_op(p)
    assert r.coeff(1) == pytest.approx(1.0, abs=1e-11)


def test_hankel_op_examples():
    cs = [Fraction(3, 2), Fraction(15, 4), Fraction(87, 8), Fraction(525, 16)]
    assert op_via_hankel(cs, 0) == LaurentPoly.constant(1)
    r1 = op_via_hankel(cs, 1)
    assert r1 == LaurentPoly({1: Fraction(1), 0: -cs[1] / cs[0]})


def test_hankel_singular_block():
    cs = [Fraction(1), Fraction(1), Fraction(1), Fraction(1)]
    with pytest.raises(DegeneracyError):
        op_via_hankel(cs, 2)


def test_reduction_equals_hankel_route():
    m = random_measure(19, 4, mode="rational")
    table = MomentTable.from_measure(m, 4)
    qs = lsop_via_recurrence(recurrence_from_measure(m, 4), 4)
    cs = table.c_list(8)
    for n in range(5):
        assert even_to_op(qs[2 * n]) == op_via_hankel(cs, n)


def test_three_term_for_reduced_members():
    m = random_measure(20, 4, mode="rational")
    rec = recurrence_from_measure(m, 4)
    qs = lsop_via_recurrence(rec, 4)
    rbars = [even_to_op(qs[2 * n]) for n in range(5)]
    w = LaurentPoly.monomial(1)
    for n in range(1, 4):
        gamma = rec.alpha[n + 1] - rec.alpha[n]
        lhs = (w - LaurentPoly.constant(gamma)) * rbars[n] - rbars[n - 1].scale(rec.beta[n])
        assert lhs == rbars[n + 1]


def test_verify_pfaffian_det_exact_and_perturbed():
    m = random_measure(22, 4, mode="rational")
    table = MomentTable.from_measure(m, 4)
    rec = moment_pfaffian_table(table, 4)
    cs = table.c_list(8)
    report = verify_pfaffian_det(rec, cs, 4)
    assert report.exact_match and report.max_relative == 0
    assert rec.tau[1] == hankel_det(cs, 1) == cs[0]
    assert rec.sigma[1] == shifted_hankel_det(cs, 1) == cs[1]
    bad = list(cs)
    bad[2] += 1
    assert not verify_pfaffian_det(rec, bad, 4).exact_match


def test_kodama_construction():
    qs = kodama_sops([Fraction(0)], [Fraction(0)], 0)
    assert qs[0] == LaurentPoly.constant(1)
    assert qs[1] == LaurentPoly.monomial(1)

    # zero coefficients degenerate to pure monomials
    qs = kodama_sops([Fraction(0)] * 3, [Fraction(0)] * 3, 3)
    for n, q in enumerate(qs):
        assert q == LaurentPoly.monomial(n)

    rng = random.Random(6)
    a = [Fraction(rng.randint(-5, 5)) for _ in range(4)]
    b = [Fraction(rng.randint(1, 5)) for _ in range(4)]
    qs = kodama_sops(a, b, 3)
    for res in kodama_residuals(qs, a, b):
        assert res.is_zero()


def test_stieltjes_order_cap():
    m = random_measure(1, 2, mode="double")
    with pytest.raises(DegeneracyError):
        recurrence_from_measure(m, 3)
