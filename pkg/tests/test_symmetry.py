import numpy as np
import pytest

from spinorlab.clifford import pauli
from spinorlab.equations import catalog_equation
from spinorlab.linalg import mat_max, proportional
from spinorlab.opcalc import sample_momenta
from spinorlab.symmetry import (Intertwiner, NonInvariance, SymmetryElement,
                                classify_equation, group_elements,
                                intertwine_condition, random_search_oracle,
                                solve_intertwiner,
                                verify_projection_relations)


# -- element algebra -----------------------------------------------------------

def test_label_round_trip():
    for g in group_elements(3):
        assert SymmetryElement.parse(g.label, 3) == g


def test_parse_is_order_insensitive():
    assert SymmetryElement.parse("C*P3", 3) == SymmetryElement.parse("P3*C", 3)


def test_time_reversal_product_is_conjugation():
    t1 = SymmetryElement.parse("T1", 3)
    t2 = SymmetryElement.parse("T2", 3)
    assert t1.compose(t2).label == "C"
    assert SymmetryElement.parse("T2*C", 3) == t1


def test_canonicalization_folds_conjugation_pairs():
    # P1*C*T1 has two antilinear factors: they cancel to a linear element
    g = SymmetryElement.parse("P1*C*T1", 3)
    assert g.label == "P1*T2"
    assert not g.conjugate and g.time_flip


def test_group_sizes():
    assert len(group_elements(2)) == 16
    assert len(group_elements(3)) == 32
    assert len(group_elements(4)) == 64


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        SymmetryElement.parse("P5", 3)
    with pytest.raises(ValueError):
        SymmetryElement.parse("Q1", 3)


# -- intertwining condition ------------------------------------------------------

def test_condition_charge_conjugation_on_chi_plus():
    eq = catalog_equation("chi_plus")
    g = SymmetryElement.parse("C", 3)
    ht, h = intertwine_condition(eq, g, (1.0, 1.0, 1.0))
    # -conj(H(-p)) = s2*p1 + s1*p2 - s3*|p3|
    want = pauli(2) + pauli(1) - pauli(3)
    assert mat_max(ht - want) == 0.0
    assert mat_max(h - (-pauli(2) + pauli(1) + pauli(3))) == 0.0


def test_condition_p3_is_even():
    eq = catalog_equation("chi_plus")
    g = SymmetryElement.parse("P3", 3)
    for p in sample_momenta(3, 4, 3):
        ht, h = intertwine_condition(eq, g, p)
        assert mat_max(ht - h) == 0.0


def test_wigner_reversal_of_weyl_solved_by_sigma2():
    eq = catalog_equation("weyl_plus")
    out = solve_intertwiner(eq, SymmetryElement.parse("T1", 3))
    assert isinstance(out, Intertwiner)
    assert proportional(out.unitary_rep, pauli(2), 1e-10)


# -- solver ---------------------------------------------------------------------

def test_solver_chi_plus_examples():
    eq = catalog_equation("chi_plus")
    out = solve_intertwiner(eq, SymmetryElement.parse("C", 3))
    assert isinstance(out, Intertwiner)
    assert proportional(out.unitary_rep, pauli(1), 1e-10)
    assert out.holdout_residual <= 1e-7
    assert out.nullity == 1

    out = solve_intertwiner(eq, SymmetryElement.parse("P3", 3))
    assert isinstance(out, Intertwiner)
    assert proportional(out.unitary_rep, np.eye(2), 1e-10)

    out = solve_intertwiner(eq, SymmetryElement.parse("P1", 3))
    assert isinstance(out, NonInvariance)
    assert out.relative > 1e-2


def test_solver_validates_sample_counts():
    eq = catalog_equation("chi_plus")
    g = SymmetryElement.parse("C", 3)
    with pytest.raises(ValueError):
        solve_intertwiner(eq, g, n_fit=4)
    with pytest.raises(ValueError):
        solve_intertwiner(eq, g, n_holdout=2)


def test_invariant_nullspaces_are_one_dimensional_2x2():
    for name in ("weyl_plus", "chi_plus", "flat_plus"):
        eq = catalog_equation(name)
        for g in group_elements(eq.d):
            out = solve_intertwiner(eq, g)
            if isinstance(out, Intertwiner):
                assert out.nullity == 1, (name, g.label)


# -- classification ---------------------------------------------------------------

def test_classify_weyl_plus():
    rep = classify_equation(catalog_equation("weyl_plus"))
    assert rep.agreement and rep.coherence_ok
    assert not rep.verdict_for("P1*P2*P3").invariant
    assert not rep.verdict_for("C").invariant
    assert rep.verdict_for("P1*P2*P3*C").invariant
    assert rep.verdict_for("T1").invariant
    assert not rep.verdict_for("T2").invariant


def test_classify_chi_plus_matches_claims():
    rep = classify_equation(catalog_equation("chi_plus"))
    assert rep.agreement and rep.coherence_ok
    assert rep.claims_checked == 14


def test_classify_dirac_massless_fully_invariant():
    rep = classify_equation(catalog_equation("dirac_massless"))
    assert rep.agreement
    assert len(rep.verdicts) == 32
    assert all(v.invariant for v in rep.verdicts)


def test_classify_reports_flat_tp_combinations():
    # all four T^a P^b products hold for the 2+1-dimensional pair
    rep = classify_equation(catalog_equation("flat_plus"))
    assert rep.agreement
    for a in (1, 2):
        for b in (1, 2):
            assert rep.verdict_for(f"T{a}*P{b}").invariant


def test_classify_desitter():
    rep = classify_equation(catalog_equation("desitter", kappa=1.5))
    assert rep.agreement and rep.coherence_ok
    assert rep.verdict_for("T1").invariant
    assert rep.verdict_for("T2*C").invariant        # same group element as T1
    for lab in ("P1", "P2", "P3", "P4", "T2", "C"):
        assert not rep.verdict_for(lab).invariant


def test_classify_kappa_pair():
    for name in ("kappa_plus", "kappa_minus"):
        rep = classify_equation(catalog_equation(name, kappa=0.8))
        assert rep.agreement, name
        assert rep.verdict_for("P3").invariant
        assert rep.verdict_for("C").invariant
        assert not rep.verdict_for("T1").invariant


def test_corruption_flips_a_verdict():
    good = classify_equation(catalog_equation("chi_plus"))
    bad = classify_equation(catalog_equation("chi_plus", corrupt_reduction=True))
    gv = {v.element.label: v.invariant for v in good.verdicts}
    bv = {v.element.label: v.invariant for v in bad.verdicts}
    assert any(gv[k] != bv[k] for k in gv)
    assert not bad.agreement
    assert bv["T1"] and not gv["T1"]


# -- oracle and projector relations ------------------------------------------------

def test_oracle_agrees_on_spot_checks():
    eq = catalog_equation("chi_plus")
    pts = sample_momenta(3, 12, 42)
    best, verdict = random_search_oracle(eq, SymmetryElement.parse("C", 3),
                                         pts, n_candidates=20_000, seed=5)
    assert verdict and best < 1e-3
    best, verdict = random_search_oracle(eq, SymmetryElement.parse("P1", 3),
                                         pts, n_candidates=20_000, seed=5)
    assert not verdict and best > 1e-2


def test_projection_relations():
    res = verify_projection_relations()
    assert set(res) == {"P1", "P2", "P3", "T1", "T2", "C"}
    for key, val in res.items():
        assert val <= 1e-9, key
