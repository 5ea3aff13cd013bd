"""Verification reports, file formats, and the command-line interface."""

import json
import os
from fractions import Fraction

import pytest

from lsopkit import serialize
from lsopkit.cli import main
from lsopkit.moments import DiscreteMeasure, random_measure
from lsopkit.verify import CLAIMS, DEFAULT_TOLERANCES, RunConfig, run_verification


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(order=0)
    with pytest.raises(ValueError):
        RunConfig(mode="decimal")
    with pytest.raises(ValueError):
        RunConfig(tolerances={"no-such-claim": 1e-3})
    with pytest.raises(ValueError):
        RunConfig(tolerances={"skew-orthonormality": -1.0})


def test_every_claim_has_default_tolerance():
    ids = [cid for cid, _ in CLAIMS]
    assert len(ids) == len(set(ids))
    for cid in ids:
        assert cid in DEFAULT_TOLERANCES


def test_report_contains_each_claim_once():
    rep = run_verification(RunConfig(seed=2, order=3, mode="double"))
    seen = [c.claim_id for c in rep.claims]
    assert seen == [cid for cid, _ in CLAIMS]
    doc = rep.document()
    assert doc["counts"]["pass"] + doc["counts"]["flag"] == len(CLAIMS)


def test_report_deterministic_bytes():
    cfg = RunConfig(seed=9, order=4, mode="double")
    assert run_verification(cfg).render() == run_verification(cfg).render()


def test_rational_run_exact_claims_zero():
    rep = run_verification(RunConfig(seed=3, order=4, mode="rational"))
    assert rep.all_pass
    exact_ids = {
        "pfaffian-route-agreement", "pfaffian-square-determinant",
        "pfaffian-minor-identity-even", "pfaffian-minor-identity-odd",
        "moment-shift-invariance", "laurent-argument-symmetry",
        "chebyshev-moment-roundtrip", "lsop-route-agreement",
        "lsop-self-reciprocity", "lsop-top-factorization",
        "skew-orthonormality", "folded-reduction-agreement",
        "folded-functional-orthogonality", "three-term-relation",
        "pfaffian-hankel-identity", "squared-variable-recurrence",
        "lsolp-construction-agreement",
    }
    for c in rep.claims:
        if c.claim_id in exact_ids:
            assert c.exact and c.residual == 0.0, c.claim_id


def test_double_run_within_tolerances():
    rep = run_verification(RunConfig(seed=4, order=8, mode="double"))
    assert rep.all_pass, [c.claim_id for c in rep.flagged]


def test_tightened_tolerance_flags_spectrum():
    cfg = RunConfig(seed=5, order=4, mode="double",
                    tolerances={"tridiagonal-spectrum": 1e-30})
    rep = run_verification(cfg)
    assert any(c.claim_id == "tridiagonal-spectrum" and c.status == "flag" for c in rep.claims)
    assert not rep.all_pass


def test_corrupted_measure_flags_without_aborting():
    m = random_measure(5, 4, mode="double")
    weights = list(m.weights)
    weights[0] = -weights[0]  # inadmissible: tau turns negative
    bad = DiscreteMeasure(m.nodes, weights)
    rep = run_verification(RunConfig(seed=5, order=4, mode="double"), bad)
    assert len(rep.claims) == len(CLAIMS)  # the suite ran to completion
    flagged = {c.claim_id for c in rep.flagged}
    assert "tridiagonal-spectrum" in flagged
    assert "skew-orthonormality" in flagged
    # measure-independent claims still pass
    assert "pfaffian-route-agreement" not in flagged


def test_conventions_are_reported():
    rep = run_verification(RunConfig(seed=6, order=4, mode="double"))
    by_id = {c.claim_id: c for c in rep.claims}
    assert by_id["skew-moment-sign-convention"].convention == "entries-mu(j-i)"
    assert by_id["pencil-recurrence-residual"].convention == "rearranged-layout"
    assert by_id["butterfly-diagonal-convention"].convention == "difference-of-alphas"


# -- serialization ------------------------------------------------------------

def test_measure_roundtrip_double(tmp_path):
    m = random_measure(7, 4, mode="double")
    text = serialize.save_measure(m, {"seed": 7})
    back = serialize.load_measure(text, "double")
    assert back.nodes == m.nodes and back.weights == m.weights


def test_measure_roundtrip_rational():
    m = random_measure(7, 3, mode="rational")
    text = serialize.save_measure(m)
    back = serialize.load_measure(text, "rational")
    assert back.nodes == m.nodes and back.weights == m.weights
    assert all(isinstance(z, Fraction) for z in back.nodes)


def test_decimal_literals_parse_exactly_in_rational_mode():
    text = '{"nodes": [2.5], "weights": [0.1]}'
    m = serialize.load_measure(text, "rational")
    assert m.nodes[0] == Fraction(5, 2)
    assert m.weights[0] == Fraction(1, 10)  # exact decimal, not binary float


def test_seventeen_digit_roundtrip():
    x = 0.1234567890123456789
    text = serialize.dumps({"x": x})
    assert json.loads(text)["x"] == x


def test_matrix_document_roundtrip():
    m = [[1.5, 2.0], [3.0, 4.25]]
    text = serialize.dumps(serialize.matrix_document(m))
    assert serialize.load_matrix(text) == m


def test_butterfly_file_roundtrip():
    text = serialize.save_butterfly_params([1.0], [0.5], [2.0], [])
    a, b, c, d = serialize.load_butterfly_params(text)
    assert (a, b, c, d) == ([1.0], [0.5], [2.0], [])


def test_bad_measure_file_rejected():
    with pytest.raises(ValueError):
        serialize.load_measure('{"nodes": [2.0]}', "double")


# -- CLI ----------------------------------------------------------------------

def run_cli(*argv):
    return main(list(argv))


def test_cli_gen_measure_deterministic(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli("gen-measure", "--seed", "3", "--order", "4", "--out", str(p1)) == 0
    assert run_cli("gen-measure", "--seed", "3", "--order", "4", "--out", str(p2)) == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_cli_verify_pass_and_report(tmp_path):
    mfile = tmp_path / "m.json"
    rfile = tmp_path / "r.json"
    assert run_cli("gen-measure", "--seed", "2", "--order", "3", "--out", str(mfile)) == 0
    code = run_cli("verify", str(mfile), "--seed", "2", "--out", str(rfile))
    assert code == 0
    doc = json.loads(rfile.read_text())
    assert doc["status"] == "pass"
    assert doc["environment"]["seed"] == 2


def test_cli_verify_deterministic(tmp_path):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert run_cli("verify", "--seed", "11", "--order", "3", "--out", str(r1)) == 0
    assert run_cli("verify", "--seed", "11", "--order", "3", "--out", str(r2)) == 0
    assert r1.read_bytes() == r2.read_bytes()


def test_cli_verify_flag_exit_code(tmp_path):
    code = run_cli("verify", "--seed", "2", "--order", "3",
                   "--tol", "tridiagonal-spectrum=1e-30",
                   "--out", str(tmp_path / "r.json"))
    assert code == 2


def test_cli_usage_errors(tmp_path):
    assert run_cli("verify", "--tol", "bogus") == 1
    assert run_cli("verify", "--tol", "no-such=1e-3") == 1
    assert run_cli("verify", str(tmp_path / "missing.json")) == 1
    assert run_cli("no-such-command") == 1


def test_cli_mode_from_environment(tmp_path):
    out = tmp_path / "m.json"
    os.environ["LSOPKIT_MODE"] = "rational"
    try:
        assert run_cli("gen-measure", "--seed", "1", "--order", "2", "--out", str(out)) == 0
        doc = json.loads(out.read_text())
        assert doc["metadata"]["mode"] == "rational"
        assert isinstance(doc["nodes"][0], str) and "/" in doc["nodes"][0]
    finally:
        del os.environ["LSOPKIT_MODE"]


def test_cli_lsop_pencil_butterfly(tmp_path):
    mfile = tmp_path / "m.json"
    run_cli("gen-measure", "--seed", "5", "--order", "3", "--out", str(mfile))
    for cmd in ("lsop", "pencil", "butterfly"):
        out = tmp_path / f"{cmd}.json"
        assert run_cli(cmd, str(mfile), "--out", str(out)) == 0
        doc = json.loads(out.read_text())
        assert doc["order"] == 3
    pdoc = json.loads((tmp_path / "pencil.json").read_text())
    assert pdoc["recurrence_layout"]["support_residual"] <= 1e-10
    assert pdoc["eigenvalue_mismatch"] <= 1e-6
    bdoc = json.loads((tmp_path / "butterfly.json").read_text())
    assert bdoc["diagonal_convention"] == "difference-of-alphas"
    assert bdoc["spectrum_mismatch"] <= 1e-7


def test_cli_solve_butterfly(tmp_path):
    pfile = tmp_path / "bp.json"
    pfile.write_text(serialize.save_butterfly_params([1.0], [0.0], [2.5], []))
    out = tmp_path / "sol.json"
    assert run_cli("solve-butterfly", str(pfile), "--out", str(out)) == 0
    doc = json.loads(out.read_text())
    assert doc["folded_eigenvalues"] == [2.5]
    assert doc["pairs"][0] == [[2.0, 0.0], [0.5, 0.0]]


def test_cli_solve_butterfly_refuses_bad_hypothesis(tmp_path):
    pfile = tmp_path / "bp.json"
    pfile.write_text(serialize.save_butterfly_params([1.0, -1.0], [0.0, 0.0], [1.0, 1.0], [0.5]))
    assert run_cli("solve-butterfly", str(pfile)) == 1


def test_poly_pairs_serialization():
    from lsopkit.laurent import LaurentPoly

    p = LaurentPoly({-2: Fraction(1, 3), 0: Fraction(-1), 3: Fraction(2)})
    assert serialize.poly_pairs(p) == [[-2, Fraction(1, 3)], [0, Fraction(-1)], [3, Fraction(2)]]


def test_dense_size_cap():
    import pytest as _pytest

    from lsopkit.errors import DimensionError
    from lsopkit.numerics import dense_det

    with _pytest.raises(DimensionError):
        dense_det([[0.0] * 65 for _ in range(65)])
