"""Pairings, braiding tensors, doubles and triplets."""

import dataclasses

import numpy as np
import pytest

from hopftrisect.examples import function_coalgebra, group_algebra, trivial_hom
from hopftrisect.groups import cyclic_group, dihedral_group, hom_from_map, identity_hom
from hopftrisect.hopf import check_hopf_g_coalgebra, dualize
from hopftrisect.pairings import (
    FundamentalLemmaReport,
    HopfGDoublet,
    HopfGTriplet,
    HopfPair,
    InvalidRMatrix,
    build_tuv,
    check_doublet,
    check_fundamental_lemma,
    check_hopf_pair,
    check_triplet,
    check_tuv_relations,
    derived_pairs,
    drinfeld_double,
    quasitriangular_triplet,
    r_matrix,
    standard_doublet,
)
from hopftrisect.scalars import EXACT, FLOAT, array, eye, kron, zeros


def failing_axioms(report):
    return {e.axiom for e in report.failures()}


def same_matrix(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and bool(np.all(a == b))


@pytest.fixture
def sector_pair():
    """Both members are the one-dimensional-sectors structure graded by Z/2."""
    H = function_coalgebra(identity_hom(cyclic_group(2)))
    return HopfPair(H, H, array([[1]], EXACT))


@pytest.fixture
def eval_pair():
    """Functions on Z/2 paired with its group algebra by evaluation."""
    fun = function_coalgebra(trivial_hom(cyclic_group(2)))
    grp = group_algebra(cyclic_group(2))
    return HopfPair(fun, grp, eye(2, EXACT))


def test_trivial_pair_braids_trivially():
    H = function_coalgebra(trivial_hom(cyclic_group(1)))
    p = HopfPair(H, H, array([[1]], EXACT))
    assert check_hopf_pair(p).ok
    tuv = build_tuv(p)
    one = array([[1]], EXACT)
    for tensors in (tuv.T, tuv.T_inv, tuv.U, tuv.V):
        assert list(tensors) == [(0, 0)]
        assert same_matrix(tensors[0, 0], one)


def test_trivial_pair_derived_variants_unchanged():
    H = function_coalgebra(trivial_hom(cyclic_group(1)))
    p = HopfPair(H, H, array([[1]], EXACT))
    for q in derived_pairs(p):
        for side, orig in ((q.first, H), (q.second, H)):
            assert side.dims == orig.dims
            assert same_matrix(side.M[0], orig.M[0])
            assert same_matrix(side.Delta[0, 0], orig.Delta[0, 0])
            assert same_matrix(side.S[0], orig.S[0])
        assert same_matrix(q.form, p.form)


def test_sector_graded_pair_passes(sector_pair):
    assert check_hopf_pair(sector_pair).ok


def test_zero_form_fails_unit_laws(sector_pair):
    p = HopfPair(sector_pair.first, sector_pair.second, zeros((1, 1), EXACT))
    report = check_hopf_pair(p)
    assert not report.ok
    assert {"pair-unit", "pair-counit"} <= failing_axioms(report)


def test_evaluation_pair_passes(eval_pair):
    assert check_hopf_pair(eval_pair).ok


def test_evaluation_pair_float_backend():
    fun = function_coalgebra(trivial_hom(cyclic_group(2)), field=FLOAT)
    grp = group_algebra(cyclic_group(2), field=FLOAT)
    assert check_hopf_pair(HopfPair(fun, grp, eye(2, FLOAT))).ok


def test_pair_rejects_mismatched_grading_groups():
    a = function_coalgebra(identity_hom(cyclic_group(2)))
    b = function_coalgebra(identity_hom(cyclic_group(3)))
    with pytest.raises(ValueError):
        HopfPair(a, b, array([[1]], EXACT))


def test_tuv_relations_hold_on_valid_pairs(sector_pair, eval_pair):
    for p in (sector_pair, eval_pair):
        tuv = build_tuv(p)
        report = check_tuv_relations(tuv)
        assert report.ok
        axioms = {e.axiom for e in report.entries}
        assert {
            "t-inverse-left",
            "t-inverse-right",
            "uv-composition",
            "antipode-sandwich",
        } <= axioms


def test_tuv_covers_all_populated_sector_pairs(sector_pair):
    tuv = build_tuv(sector_pair)
    expected = {(g, h) for g in range(2) for h in range(2)}
    assert set(tuv.T) == expected
    assert set(tuv.U) == expected
    assert set(tuv.V) == expected


def test_corrupted_antipode_breaks_exchange_not_inversion(sector_pair):
    H = sector_pair.first
    bad_s = dict(H.S)
    bad_s[1] = array([[2]], EXACT)
    crooked = dataclasses.replace(H, S=bad_s)
    tuv = build_tuv(HopfPair(H, crooked, sector_pair.form))
    report = check_tuv_relations(tuv)
    assert not report.ok
    assert "uv-composition" in failing_axioms(report)
    for e in report.entries:
        if e.axiom.startswith("t-inverse"):
            assert e.ok


def test_derived_pairs_pass_the_pair_check(sector_pair, eval_pair):
    for p in (sector_pair, eval_pair):
        variants = derived_pairs(p)
        assert len(variants) == 4
        for q in variants:
            assert check_hopf_pair(q).ok, str(check_hopf_pair(q))


def test_double_of_evaluation_pair_is_componentwise(eval_pair):
    """Over an abelian group the twist is invisible: the double of functions
    against the group algebra multiplies componentwise."""
    D = drinfeld_double(eval_pair)
    assert D.dims == (4,)
    assert check_hopf_g_coalgebra(D).ok
    fun, grp = eval_pair.first, eval_pair.second
    cols = np.arange(16).reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).ravel()
    assert same_matrix(D.M[0], kron(fun.M[0], grp.M[0])[:, cols])
    assert same_matrix(D.i[0], kron(fun.i[0], grp.i[0]))
    assert same_matrix(D.epsilon, kron(fun.epsilon, grp.epsilon))


def test_double_of_sector_graded_pair(sector_pair):
    D = drinfeld_double(sector_pair)
    assert D.dims == (1, 1)
    assert check_hopf_g_coalgebra(D).ok


def test_standard_doublet_passes():
    to_parity = hom_from_map(cyclic_group(4), cyclic_group(2), [0, 1, 0, 1])
    H = function_coalgebra(to_parity)
    assert check_doublet(standard_doublet(H)).ok


def test_scaled_form_breaks_doublet_multiplication():
    to_parity = hom_from_map(cyclic_group(4), cyclic_group(2), [0, 1, 0, 1])
    H = function_coalgebra(to_parity)
    d = standard_doublet(H)
    forms = dict(d.forms)
    forms[1] = 2 * forms[1]
    report = check_doublet(HopfGDoublet(d.first, d.second, forms))
    assert not report.ok
    assert "doublet-multiplication" in failing_axioms(report)


def test_tampered_antipode_breaks_doublet():
    to_parity = hom_from_map(cyclic_group(4), cyclic_group(2), [0, 1, 0, 1])
    H = function_coalgebra(to_parity)
    bad_s = dict(H.S)
    bad_s[1] = 2 * bad_s[1]
    d = standard_doublet(H)
    report = check_doublet(HopfGDoublet(d.first, dataclasses.replace(H, S=bad_s), d.forms))
    assert not report.ok
    assert "doublet-antipode" in failing_axioms(report)


def test_derived_doublets_pass_the_doublet_check():
    to_parity = hom_from_map(cyclic_group(4), cyclic_group(2), [0, 1, 0, 1])
    d = standard_doublet(function_coalgebra(to_parity))
    variants = derived_pairs(d)
    assert len(variants) == 2
    for q in variants:
        assert check_doublet(q).ok, str(check_doublet(q))


def test_derived_pairs_rejects_other_types():
    with pytest.raises(TypeError):
        derived_pairs(object())


@pytest.fixture
def z2_triplet():
    """Quasitriangular triplet of the Z/2 group algebra with the unit R."""
    H = dualize(function_coalgebra(trivial_hom(cyclic_group(2))))
    R = r_matrix(H, kron(H.i, H.i))
    return quasitriangular_triplet(H, R)


def test_quasitriangular_z2_triplet_checks_out(z2_triplet):
    report = check_triplet(z2_triplet)
    assert report.ok, str(report)
    axioms = {e.axiom for e in report.entries}
    assert any(a.startswith("pair-") for a in axioms)
    assert any(a.startswith("alpha-beta-") for a in axioms)
    assert any(a.startswith("alpha-kappa-") for a in axioms)
    assert any(a.startswith("double-map-") for a in axioms)


def test_fundamental_lemma_verdicts_agree_when_valid(z2_triplet):
    report = check_fundamental_lemma(z2_triplet)
    assert isinstance(report, FundamentalLemmaReport)
    assert report.verdicts == (True, True, True)
    assert report.agree and report.ok
    assert "agree" in str(report)


def test_quasitriangular_on_abelian_function_algebra():
    H = dualize(group_algebra(cyclic_group(4)))
    trip = quasitriangular_triplet(H, r_matrix(H, kron(H.i, H.i)))
    assert check_triplet(trip).ok
    assert check_fundamental_lemma(trip).verdicts == (True, True, True)


def test_r_matrix_accepts_square_layout():
    H = dualize(function_coalgebra(trivial_hom(cyclic_group(2))))
    flat = r_matrix(H, kron(H.i, H.i))
    square = r_matrix(H, np.asarray(kron(H.i, H.i)).reshape(2, 2))
    assert same_matrix(flat.element, square.element)
    assert same_matrix(flat.inverse, square.inverse)


def test_non_invertible_r_matrix_is_rejected():
    H = dualize(function_coalgebra(trivial_hom(cyclic_group(2))))
    candidate = array([[1], [1], [0], [0]], EXACT)
    with pytest.raises(InvalidRMatrix, match="r-invertible"):
        quasitriangular_triplet(H, r_matrix(H, candidate))


def test_unit_r_matrix_fails_braiding_without_cocommutativity():
    H = dualize(group_algebra(dihedral_group(3)))
    with pytest.raises(InvalidRMatrix, match="r-braiding"):
        quasitriangular_triplet(H, r_matrix(H, kron(H.i, H.i)))


def test_zeroed_alpha_beta_form_fails_the_doublet_leg(z2_triplet):
    t = z2_triplet
    broken = HopfGTriplet(
        alpha=t.alpha,
        beta=t.beta,
        kappa=t.kappa,
        form_kb=t.form_kb,
        form_ab={0: zeros((2, 2), EXACT)},
        form_ak=t.form_ak,
    )
    report = check_triplet(broken)
    assert not report.ok
    assert any(a.startswith("alpha-beta-") for a in failing_axioms(report))


def test_triplet_shape_validation(z2_triplet):
    t = z2_triplet
    with pytest.raises(ValueError, match="form_kb"):
        HopfGTriplet(
            alpha=t.alpha,
            beta=t.beta,
            kappa=t.kappa,
            form_kb=zeros((1, 2), EXACT),
            form_ab=t.form_ab,
            form_ak=t.form_ak,
        )
