"""Axioms, integrals, duality, and crossings on small concrete structures."""

import numpy as np
import pytest

from hopftrisect.examples import (
    function_coalgebra,
    function_coalgebra_cointegral,
    function_coalgebra_crossing,
    function_coalgebra_integral,
    group_algebra,
    trivial_hom,
)
from hopftrisect.groups import cyclic_group, dihedral_group, hom_from_map, trivial_group
from hopftrisect.hopf import (
    AmbiguousCointegral,
    AmbiguousIntegral,
    Cointegral,
    Crossing,
    DegeneratePairing,
    GIntegral,
    HopfGCoalgebra,
    NoCointegral,
    NoIntegral,
    check_antipode_antimorphism,
    check_cosemisimple,
    check_crossing,
    check_cyclicity,
    check_hopf_g_algebra,
    check_hopf_g_coalgebra,
    check_involutory,
    check_ladders,
    coopposite,
    dualize,
    iterated_delta,
    iterated_m,
    normalize_pair,
    opposite,
    solve_cointegral,
    solve_g_cointegral,
    solve_g_integral,
)
from hopftrisect.scalars import EXACT, FLOAT, array, eye, tensor_eq, zeros


def d4_to_d8():
    """The embedding-like map sending the rotation generator to r^4."""
    d4, d8 = dihedral_group(4), dihedral_group(8)
    images = [d8.index_of("1"), d8.index_of("r^4"), d8.index_of("1"), d8.index_of("r^4"),
              d8.index_of("s"), d8.index_of("sr^4"), d8.index_of("s"), d8.index_of("sr^4")]
    return hom_from_map(d4, d8, images)


def sweedler():
    """The four-dimensional Hopf algebra with a non-involutory antipode.

    Basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx; Delta(x) = x (x) 1
    + g (x) x.  S(x) = -gx, so S^2(x) = -x.
    """
    m = zeros((4, 16), EXACT)
    products = {
        (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
        (1, 0): (1, 1), (1, 1): (0, 1), (1, 2): (3, 1), (1, 3): (2, 1),
        (2, 0): (2, 1), (2, 1): (3, -1),
        (3, 0): (3, 1), (3, 1): (2, -1),
    }
    for (a, b), (p, coeff) in products.items():
        m[p, a * 4 + b] = coeff
    delta = zeros((16, 4), EXACT)
    delta[0, 0] = 1          # 1 -> 1 (x) 1
    delta[5, 1] = 1          # g -> g (x) g
    delta[8, 2] = 1          # x -> x (x) 1 ...
    delta[6, 2] = 1          #   ... + g (x) x
    delta[13, 3] = 1         # gx -> gx (x) g ...
    delta[3, 3] = 1          #   ... + 1 (x) gx
    eps = array([[1, 1, 0, 0]], EXACT)
    s = zeros((4, 4), EXACT)
    s[0, 0] = 1
    s[1, 1] = 1
    s[3, 2] = -1             # S(x) = -gx
    s[2, 3] = 1              # S(gx) = x
    unit = zeros((4, 1), EXACT)
    unit[0, 0] = 1
    return HopfGCoalgebra(
        group=trivial_group(), dims=(4,),
        M={0: m}, i={0: unit}, Delta={(0, 0): delta}, epsilon=eps, S={0: s},
        field=EXACT,
    )


def structures_equal(a, b) -> bool:
    if a.dims != b.dims or type(a) is not type(b):
        return False
    for key in a.M:
        if not tensor_eq(a.M[key], b.M[key], a.field, 0):
            return False
    for key in a.S:
        if not tensor_eq(a.S[key], b.S[key], a.field, 0):
            return False
    if isinstance(a, HopfGCoalgebra):
        for key in a.Delta:
            if not tensor_eq(a.Delta[key], b.Delta[key], a.field, 0):
                return False
        for key in a.i:
            if not tensor_eq(a.i[key], b.i[key], a.field, 0):
                return False
        return tensor_eq(a.epsilon, b.epsilon, a.field, 0)
    for key in a.Delta:
        if not tensor_eq(a.Delta[key], b.Delta[key], a.field, 0):
            return False
    for key in a.epsilon:
        if not tensor_eq(a.epsilon[key], b.epsilon[key], a.field, 0):
            return False
    return tensor_eq(a.i, b.i, a.field, 0)


# ---------------------------------------------------------------------------
# axioms


def test_function_coalgebra_passes_axioms():
    H = function_coalgebra(d4_to_d8())
    report = check_hopf_g_coalgebra(H)
    assert report.ok, str(report)
    assert check_involutory(H)
    assert check_antipode_antimorphism(H)


def test_function_coalgebra_dims_follow_fibers():
    phi = d4_to_d8()
    H = function_coalgebra(phi)
    d8 = phi.target
    assert H.dims[d8.index_of("r^4")] == 2
    assert H.dims[d8.index_of("r")] == 0
    assert sum(H.dims) == 8
    assert len(H.support()) == 4


def test_group_algebra_passes_axioms():
    for K in (cyclic_group(2), dihedral_group(3)):
        H = group_algebra(K)
        assert check_hopf_g_coalgebra(H).ok
        assert check_involutory(H)
        assert check_antipode_antimorphism(H)


def test_functions_on_group_pass_axioms():
    H = function_coalgebra(trivial_hom(cyclic_group(4)))
    assert H.dims == (4,)
    assert check_hopf_g_coalgebra(H).ok


def test_corrupted_comultiplication_is_caught():
    H = function_coalgebra(d4_to_d8())
    g = H.support()[1]
    bad_delta = dict(H.Delta)
    mat = bad_delta[g, g].copy()
    mat[0, 0] += 1
    bad_delta[g, g] = mat
    bad = HopfGCoalgebra(group=H.group, dims=H.dims, M=H.M, i=H.i,
                         Delta=bad_delta, epsilon=H.epsilon, S=H.S, field=H.field)
    report = check_hopf_g_coalgebra(bad)
    assert not report.ok
    failed_axioms = {e.axiom for e in report.failures()}
    assert failed_axioms & {"coassociativity", "comultiplication-multiplicative",
                            "counit-left", "counit-right", "antipode-left",
                            "antipode-right"}
    witness = report.failures()[0]
    assert witness.witness is not None
    assert witness.residual is not None


def test_zeroed_antipode_fails_antipode_axiom():
    H = group_algebra(cyclic_group(2))
    bad_s = {0: zeros((2, 2), EXACT)}
    bad = HopfGCoalgebra(group=H.group, dims=H.dims, M=H.M, i=H.i,
                         Delta=H.Delta, epsilon=H.epsilon, S=bad_s, field=H.field)
    report = check_hopf_g_coalgebra(bad)
    axioms = {e.axiom for e in report.failures()}
    assert "antipode-left" in axioms or "antipode-right" in axioms
    assert not check_involutory(bad)


def test_sweedler_is_hopf_but_not_involutory():
    H = sweedler()
    assert check_hopf_g_coalgebra(H).ok
    assert not check_involutory(H)
    assert check_antipode_antimorphism(H)


# ---------------------------------------------------------------------------
# ladders


def test_ladders_pass_on_involutory_structures():
    for H in (function_coalgebra(d4_to_d8()), group_algebra(cyclic_group(3))):
        report = check_ladders(H)
        assert report.entries
        assert report.ok, str(report)


def test_ladders_fail_without_involutivity():
    report = check_ladders(sweedler())
    assert not report.ok
    assert all(e.axiom.startswith("ladder-") for e in report.failures())
    passing = {e.axiom for e in report.entries if e.ok}
    # the pairs that only need the antipode axiom still invert each other
    assert any(name.startswith("ladder-A1") for name in passing)


# ---------------------------------------------------------------------------
# integrals and cointegrals


def test_function_coalgebra_integral_is_all_ones():
    phi = d4_to_d8()
    H = function_coalgebra(phi)
    mu = solve_g_integral(H, side="two-sided")
    expected = function_coalgebra_integral(phi)
    for g in H.group.elements():
        assert tensor_eq(mu.forms[g], expected.forms[g], EXACT, 0)


def test_group_algebra_integral_is_delta_at_identity():
    H = group_algebra(dihedral_group(4))
    mu = solve_g_integral(H, side="two-sided")
    row = mu.forms[0]
    assert row[0, 0] == 1
    assert all(row[0, k] == 0 for k in range(1, 8))


def test_group_algebra_cointegral_sums_the_group():
    H = group_algebra(cyclic_group(2))
    e = solve_cointegral(H, side="two-sided")
    assert tensor_eq(e.element, array([[1], [1]], EXACT), EXACT, 0)


def test_function_coalgebra_cointegral_is_delta_at_identity():
    phi = d4_to_d8()
    H = function_coalgebra(phi)
    e = solve_cointegral(H, side="two-sided")
    assert tensor_eq(e.element, function_coalgebra_cointegral(phi).element, EXACT, 0)


def test_sweedler_integral_exists_but_is_one_sided():
    H = sweedler()
    mu = solve_g_integral(H, side="right")
    assert any(x != 0 for x in mu.forms[0][0])
    with pytest.raises(NoIntegral):
        solve_g_integral(H, side="two-sided")


def test_sweedler_cointegral_is_one_sided():
    H = sweedler()
    e = solve_cointegral(H, side="right")
    assert tensor_eq(e.element, array([[0], [0], [1], [1]], EXACT), EXACT, 0)
    with pytest.raises(NoCointegral):
        solve_cointegral(H, side="two-sided")


def test_degenerate_systems_are_rejected():
    H = group_algebra(cyclic_group(2))
    no_delta = {(0, 0): zeros((4, 2), EXACT)}
    starved = HopfGCoalgebra(group=H.group, dims=H.dims, M=H.M, i=H.i,
                             Delta=no_delta, epsilon=H.epsilon, S=H.S, field=H.field)
    with pytest.raises(NoIntegral):
        solve_g_integral(starved)
    unconstrained = HopfGCoalgebra(group=H.group, dims=H.dims, M=H.M,
                                   i={0: zeros((2, 1), EXACT)}, Delta=no_delta,
                                   epsilon=H.epsilon, S=H.S, field=H.field)
    with pytest.raises(AmbiguousIntegral):
        solve_g_integral(unconstrained)

    no_m = {0: zeros((2, 4), EXACT)}
    starved_co = HopfGCoalgebra(group=H.group, dims=H.dims, M=no_m, i=H.i,
                                Delta=H.Delta, epsilon=H.epsilon, S=H.S, field=H.field)
    with pytest.raises(NoCointegral):
        solve_cointegral(starved_co)
    unconstrained_co = HopfGCoalgebra(group=H.group, dims=H.dims, M=no_m, i=H.i,
                                      Delta=H.Delta, epsilon=zeros((1, 2), EXACT),
                                      S=H.S, field=H.field)
    with pytest.raises(AmbiguousCointegral):
        solve_cointegral(unconstrained_co)


def test_normalize_pair_fixes_the_pairing_value():
    phi = d4_to_d8()
    H = function_coalgebra(phi)
    mu = solve_g_integral(H, side="right")
    doubled = GIntegral(forms={g: row * 2 for g, row in mu.forms.items()}, side="right")
    e = solve_cointegral(H, side="right")
    normal, e2 = normalize_pair(H, doubled, e)
    one = H.group.identity
    assert np.dot(normal.forms[one], e2.element)[0, 0] == 1
    for g in H.support():
        assert tensor_eq(normal.forms[g], mu.forms[g], EXACT, 0)


def test_normalize_pair_rejects_degenerate_pairings():
    H = group_algebra(cyclic_group(2))
    mu = solve_g_integral(H)
    dead = Cointegral(element=array([[0], [1]], EXACT), side="right")
    # mu = delta at the identity, so it annihilates this element
    with pytest.raises(DegeneratePairing):
        normalize_pair(H, mu, dead)


def test_cosemisimple_verdicts():
    assert check_cosemisimple(function_coalgebra(d4_to_d8()))
    assert check_cosemisimple(group_algebra(cyclic_group(2)))
    assert not check_cosemisimple(sweedler())


def test_cyclicity_report_on_normalized_pairs():
    for H in (function_coalgebra(d4_to_d8()), group_algebra(dihedral_group(3))):
        mu, e = normalize_pair(H, solve_g_integral(H, side="two-sided"),
                               solve_cointegral(H, side="two-sided"))
        report = check_cyclicity(H, mu, e)
        assert report.ok, str(report)
        axioms = {entry.axiom for entry in report.entries}
        assert "cointegral-antipode-formula" in axioms
        assert "trace-cyclic" in axioms
        assert "cointegral-cyclic" in axioms


# ---------------------------------------------------------------------------
# duality and opposites


def test_dualize_round_trips():
    H = function_coalgebra(d4_to_d8())
    dual = dualize(H)
    assert check_hopf_g_algebra(dual).ok
    back = dualize(dual)
    assert structures_equal(H, back)


def test_g_cointegral_of_dual_matches_integral():
    phi = d4_to_d8()
    H = function_coalgebra(phi)
    ec = solve_g_cointegral(dualize(H), side="two-sided")
    mu = function_coalgebra_integral(phi)
    for g in H.group.elements():
        assert tensor_eq(ec.elements[g], mu.forms[g].T, EXACT, 0)


def test_opposite_and_coopposite_are_involutions():
    H = function_coalgebra(d4_to_d8())
    assert structures_equal(H, opposite(opposite(H)))
    assert structures_equal(H, coopposite(coopposite(H)))
    dual = dualize(H)
    assert structures_equal(dual, opposite(opposite(dual)))
    assert structures_equal(dual, coopposite(coopposite(dual)))


def test_opposite_and_coopposite_pass_axioms():
    H = function_coalgebra(d4_to_d8())
    assert check_hopf_g_coalgebra(opposite(H)).ok
    assert check_hopf_g_coalgebra(coopposite(H)).ok
    dual = dualize(H)
    assert check_hopf_g_algebra(opposite(dual)).ok
    assert check_hopf_g_algebra(coopposite(dual)).ok


# ---------------------------------------------------------------------------
# iterated helpers


def test_iterated_delta_on_group_algebra():
    H = group_algebra(cyclic_group(2))
    three = iterated_delta(H, (0, 0, 0))
    v = zeros((2, 1), EXACT)
    v[1, 0] = 1  # the nontrivial group element
    out = np.dot(three, v)
    # grouplike: s -> s (x) s (x) s sits at flat index 7
    assert out[7, 0] == 1
    assert sum(1 for k in range(8) if out[k, 0] != 0) == 1


def test_iterated_m_degenerate_cases():
    H = group_algebra(cyclic_group(2))
    assert iterated_m(H, 0, 0).shape == (2, 1)
    assert tensor_eq(iterated_m(H, 0, 1), eye(2, EXACT), EXACT, 0)
    sig = iterated_delta(H, ())
    assert sig.shape == (1, 2)


# ---------------------------------------------------------------------------
# crossings


def test_conjugation_crossing_passes():
    phi = d4_to_d8()
    H = function_coalgebra(phi)
    crossing = function_coalgebra_crossing(phi)
    assert len(crossing.acting_elements()) == 4
    report = check_crossing(H, crossing)
    assert report.entries
    assert report.ok, str(report)
    axioms = {e.axiom for e in report.entries}
    assert "crossing-homomorphism" in axioms
    assert "crossing-integral" in axioms


def test_crossing_swaps_a_fiber():
    phi = d4_to_d8()
    d8 = phi.target
    crossing = function_coalgebra_crossing(phi)
    swap = crossing.phi[d8.index_of("r^4"), d8.index_of("s")]
    assert tensor_eq(swap, array([[0, 1], [1, 0]], EXACT), EXACT, 0)


def test_abelian_source_gives_identity_crossing():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    phi = hom_from_map(z4, z2, [0, 1, 0, 1])
    crossing = function_coalgebra_crossing(phi)
    assert crossing.acting_elements() == [0, 1]
    for (g, h), mat in crossing.phi.items():
        assert tensor_eq(mat, eye(mat.shape[0], EXACT), EXACT, 0)
    assert check_crossing(function_coalgebra(phi), crossing).ok


def test_uncrossable_hom_yields_empty_family():
    crossing = function_coalgebra_crossing(trivial_hom(dihedral_group(4)))
    assert crossing.phi == {}


def test_wrong_crossing_fails_comultiplication_law():
    phi = d4_to_d8()
    H = function_coalgebra(phi)
    crossing = function_coalgebra_crossing(phi)
    d8 = phi.target
    s, r4 = d8.index_of("s"), d8.index_of("r^4")
    # collapsing one sector map onto a single fiber point is no coalgebra map
    tampered = dict(crossing.phi)
    proj = zeros((2, 2), EXACT)
    proj[0, 0] = 1
    tampered[r4, s] = proj
    report = check_crossing(H, Crossing(phi=tampered))
    assert not report.ok
    assert any(e.axiom == "crossing-comultiplication" for e in report.failures())


def test_identity_maps_fail_the_action_coherence():
    # conjugation by s fixes every sector here, so identity maps satisfy the
    # sector-local laws; what they miss is compatibility across the acting group
    phi = d4_to_d8()
    H = function_coalgebra(phi)
    crossing = function_coalgebra_crossing(phi)
    s = phi.target.index_of("s")
    lazy = dict(crossing.phi)
    for g in H.group.elements():
        lazy[g, s] = eye(lazy[g, s].shape[0], EXACT)
    report = check_crossing(H, Crossing(phi=lazy))
    assert not report.ok
    assert any(e.axiom == "crossing-homomorphism" for e in report.failures())
    assert not any(e.axiom == "crossing-comultiplication" for e in report.failures())


def test_crossing_on_the_dual_family():
    phi = d4_to_d8()
    H = dualize(function_coalgebra(phi))
    crossing = function_coalgebra_crossing(phi)
    # transpose-inverse of each map gives the dual crossing; for permutation
    # matrices that is just the matrix itself
    report = check_crossing(H, crossing)
    assert report.entries
    assert report.ok, str(report)


# ---------------------------------------------------------------------------
# float backend


def test_axioms_and_integrals_in_float():
    phi = d4_to_d8()
    H = function_coalgebra(phi, field=FLOAT)
    assert check_hopf_g_coalgebra(H).ok
    mu = solve_g_integral(H, side="two-sided")
    expected = function_coalgebra_integral(phi, field=FLOAT)
    for g in H.support():
        assert tensor_eq(mu.forms[g], expected.forms[g], FLOAT, 1e-9)
