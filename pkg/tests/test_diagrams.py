"""Diagram structure, words, colorings, and the move engine."""

import itertools
import random

import pytest

from hopftrisect import (
    Coloring,
    Curve,
    DiagCrossing,
    HeegaardDiagram,
    InvalidSlide,
    NoTriangle,
    NotAStabilization,
    NotCancellablePair,
    TrisectionDiagram,
    UnknownName,
    apply_handle_slide,
    apply_three_point,
    apply_two_point,
    builtin,
    conjugate_coloring,
    connected_sum,
    cyclic_group,
    destabilize,
    dihedral_group,
    enumerate_colorings,
    evaluate_word,
    free_reduce,
    insert_two_point,
    move_basepoint,
    pi1_presentation,
    reverse_orientation,
    stabilize,
    trisection_of_heegaard,
    validate,
    validate_coloring,
    words,
)

S3 = dihedral_group(3)


def failing_checks(report):
    return {e.axiom for e in report.failures()}


def hom_count(d, G):
    """Count homomorphisms to G by raw table lookups, as an independent
    check on the coloring enumeration."""
    relators = pi1_presentation(d).relators
    total = 0
    for colors in itertools.product(range(G.order), repeat=d.genus):
        good = True
        for rel in relators:
            v = G.identity
            for idx, e in rel:
                g = colors[idx] if e == 1 else G.inverse[colors[idx]]
                v = G.cayley[v][g]
            if v != G.identity:
                good = False
                break
        if good:
            total += 1
    return total


def triangle_diagram():
    """Genus 1, three curves pairwise crossing once around a triangle."""
    return TrisectionDiagram(
        genus=1,
        alpha=(Curve("alpha", 0, (0, 1)),),
        beta=(Curve("beta", 0, (0, 2)),),
        kappa=(Curve("kappa", 0, (1, 2)),),
        crossings=(
            DiagCrossing(0, ("beta", 0), ("alpha", 0), 1),
            DiagCrossing(1, ("kappa", 0), ("alpha", 0), 1),
            DiagCrossing(2, ("beta", 0), ("kappa", 0), 1),
        ),
    )


# ---------------------------------------------------------------------------
# structure and validation


def test_standard_summand_validates():
    t = builtin("t_st")
    assert t.genus == 3
    assert len(t.alpha) == len(t.beta) == len(t.kappa) == 3
    assert len(t.crossings) == 6
    assert validate(t).ok


def test_empty_genus_zero_validates():
    d = builtin("s4_genus0")
    assert d.genus == 0
    assert d.alpha == () and d.crossings == ()
    assert validate(d).ok


def test_crossing_within_one_family_is_flagged():
    d = TrisectionDiagram(
        genus=2,
        alpha=(Curve("alpha", 0, (0,)), Curve("alpha", 1, (0,))),
        beta=(Curve("beta", 0, ()), Curve("beta", 1, ())),
        kappa=(Curve("kappa", 0, ()), Curve("kappa", 1, ())),
        crossings=(DiagCrossing(0, ("alpha", 0), ("alpha", 1), 1),),
    )
    report = validate(d)
    assert not report.ok
    assert "crossing-families-distinct" in failing_checks(report)


def test_missing_incidence_is_flagged():
    t = builtin("t_st")
    broken = TrisectionDiagram(
        genus=t.genus,
        alpha=(Curve("alpha", 0, (0,)),) + t.alpha[1:],
        beta=t.beta,
        kappa=t.kappa,
        crossings=t.crossings,
    )
    report = validate(broken)
    assert not report.ok
    assert "sequence-matches-incidences" in failing_checks(report)


def test_wrong_family_count_is_flagged():
    d = TrisectionDiagram(
        genus=1,
        alpha=(Curve("alpha", 0, ()),),
        beta=(),
        kappa=(Curve("kappa", 0, ()),),
        crossings=(),
    )
    assert "family-size" in failing_checks(validate(d))


def test_heegaard_builtin_validates():
    h = builtin("heegaard_s3")
    assert isinstance(h, HeegaardDiagram)
    assert validate(h).ok


# ---------------------------------------------------------------------------
# words and presentations


def test_summand_words_are_four_letters_and_two_blanks():
    beta_words, kappa_words = words(builtin("t_st"))
    assert beta_words == (((0, 1),), ((1, 1),), ())
    assert kappa_words == (((0, 1),), (), ((2, 1),))


def test_product_diagram_words_are_empty():
    beta_words, kappa_words = words(builtin("s1_x_s3"))
    assert beta_words == ((),)
    assert kappa_words == ((),)


def test_heegaard_sphere_word_is_one_letter():
    beta_words, kappa_words = words(builtin("heegaard_s3"))
    assert beta_words == (((0, 1),),)
    assert kappa_words == ()


def test_lens_word_is_a_power():
    h = builtin("heegaard_lens(2,1)")
    beta_words, _ = words(h)
    assert beta_words == (((0, 1), (0, 1)),)
    assert words(builtin("heegaard_lens", 5, 1))[0] == (((0, 1),) * 5,)


def test_presentations():
    t = pi1_presentation(builtin("t_st"))
    assert t.generators == ("a1", "a2", "a3")
    assert len(t.relators) == 6
    circle = pi1_presentation(builtin("s1_x_s3"))
    assert circle.generators == ("a1",)
    assert all(r == () for r in circle.relators)
    sphere = pi1_presentation(builtin("s4_genus0"))
    assert sphere.generators == () and sphere.relators == ()
    assert str(pi1_presentation(builtin("heegaard_s3"))) == "<a1 | a1>"


def test_free_reduce():
    assert free_reduce(((0, 1), (0, -1))) == ()
    assert free_reduce(((0, 1), (1, 1), (1, -1), (0, 1))) == ((0, 1), (0, 1))
    assert free_reduce(()) == ()


# ---------------------------------------------------------------------------
# colorings


def test_summand_has_only_the_identity_coloring():
    t = builtin("t_st")
    found = enumerate_colorings(t, S3)
    assert len(found) == 1
    assert found[0].colors == (S3.identity,) * 3
    assert validate_coloring(t, found[0])


def test_product_diagram_takes_any_color():
    d = builtin("s1_x_s3")
    big = dihedral_group(8)
    assert len(enumerate_colorings(d, big)) == 16
    assert len(enumerate_colorings(d, S3)) == 6


def test_genus_zero_has_exactly_the_empty_coloring():
    found = enumerate_colorings(builtin("s4_genus0"), S3)
    assert len(found) == 1
    assert found[0].colors == ()


def test_coloring_counts_match_homomorphism_counts():
    G = dihedral_group(4)
    for d in (
        builtin("t_st"),
        builtin("s1_x_s3"),
        trisection_of_heegaard(builtin("heegaard_lens(2,1)")),
    ):
        assert len(enumerate_colorings(d, G)) == hom_count(d, G)


def test_colorings_are_conjugation_closed():
    d = trisection_of_heegaard(builtin("heegaard_lens(2,1)"))
    G = dihedral_group(4)
    found = {c.colors for c in enumerate_colorings(d, G)}
    for colors in found:
        for b in G.elements():
            assert conjugate_coloring(Coloring(G, colors), b).colors in found


def test_conjugation_by_identity_and_in_abelian_groups_is_trivial():
    G = cyclic_group(6)
    c = Coloring(G, (2, 5))
    assert conjugate_coloring(c, G.identity) == c
    for b in G.elements():
        assert conjugate_coloring(c, b) == c


# ---------------------------------------------------------------------------
# two-point moves


def test_insert_then_remove_round_trips():
    t = builtin("t_st")
    grown = insert_two_point(t, ("alpha", 0), 1, ("beta", 2), 0, 1)
    assert len(grown.crossings) == 8
    assert validate(grown).ok
    new_ids = [x.id for x in grown.crossings[-2:]]
    assert apply_two_point(grown, *new_ids) == t


def test_insertion_leaves_coloring_counts_alone():
    t = builtin("t_st")
    grown = insert_two_point(t, ("alpha", 1), 0, ("kappa", 0), 0, -1)
    assert len(enumerate_colorings(grown, S3)) == 1


def test_bigon_removal_in_genus_two_drops_two_crossings():
    d = connected_sum(builtin("s1_x_s3"), builtin("s1_x_s3"))
    d = insert_two_point(d, ("alpha", 0), 0, ("beta", 1), 0, 1)
    assert d.genus == 2 and len(d.crossings) == 2
    d = apply_two_point(d, 0, 1)
    assert len(d.crossings) == 0
    assert validate(d).ok


def test_two_point_rejects_equal_signs():
    t = builtin("t_st")
    grown = insert_two_point(t, ("alpha", 0), 0, ("beta", 2), 0, 1)
    flipped = TrisectionDiagram(
        genus=grown.genus,
        alpha=grown.alpha,
        beta=grown.beta,
        kappa=grown.kappa,
        crossings=grown.crossings[:-1]
        + (DiagCrossing(grown.crossings[-1].id, ("alpha", 0), ("beta", 2), 1),),
    )
    with pytest.raises(NotCancellablePair, match="cancel"):
        apply_two_point(flipped, 6, 7)


def test_two_point_rejects_non_adjacent_pairs():
    d = builtin("t_st")
    d = insert_two_point(d, ("alpha", 0), 0, ("beta", 2), 0, 1)
    d = move_basepoint(d, ("alpha", 0), 1)
    # a second pair lands between the first pair's wrap, separating it
    # along alpha while it stays adjacent along beta
    d = insert_two_point(d, ("alpha", 0), 4, ("kappa", 0), 0, 1)
    with pytest.raises(NotCancellablePair, match="adjacent"):
        apply_two_point(d, 6, 7)


def test_two_point_rejects_unrelated_crossings():
    with pytest.raises(NotCancellablePair, match="curve pairs"):
        apply_two_point(builtin("t_st"), 0, 3)


def test_insert_rejects_same_family():
    with pytest.raises(NotCancellablePair, match="family"):
        insert_two_point(builtin("t_st"), ("alpha", 0), 0, ("alpha", 1), 0, 1)


# ---------------------------------------------------------------------------
# three-point moves


def test_triangle_move_swaps_adjacent_pairs():
    d = triangle_diagram()
    moved = apply_three_point(d, 0, 1, 2)
    assert moved.alpha[0].crossing_sequence == (1, 0)
    assert moved.beta[0].crossing_sequence == (2, 0)
    assert moved.kappa[0].crossing_sequence == (2, 1)
    assert validate(moved).ok
    assert {x.sign for x in moved.crossings} == {1}


def test_triangle_move_is_an_involution():
    d = triangle_diagram()
    assert apply_three_point(apply_three_point(d, 0, 1, 2), 0, 1, 2) == d


def test_three_point_requires_a_triangle():
    with pytest.raises(NoTriangle, match="share"):
        apply_three_point(builtin("t_st"), 0, 2, 4)
    with pytest.raises(NoTriangle, match="no crossing"):
        apply_three_point(triangle_diagram(), 0, 1, 9)


# ---------------------------------------------------------------------------
# handle slides


def slide_fixture():
    """Genus 2, one beta curve meeting alpha_2 in a cancelling pair, so
    every coloring is valid and slides can be watched in isolation."""
    d = connected_sum(builtin("s1_x_s3"), builtin("s1_x_s3"))
    return insert_two_point(d, ("alpha", 1), 0, ("beta", 0), 0, 1)


def test_alpha_slide_rewrites_partner_words():
    d = slide_fixture()
    slid, _ = apply_handle_slide(d, None, ("alpha", 0), ("alpha", 1))
    beta_words, _ = words(slid)
    assert beta_words[0] == ((0, 1), (1, 1), (1, -1), (0, -1))
    assert validate(slid).ok


def test_alpha_slide_color_update_order():
    G = dihedral_group(4)
    pairs = [
        (a, b)
        for a in G.elements()
        for b in G.elements()
        if G.mul(G.inv(a), b) != G.mul(b, G.inv(a))
    ]
    a, b = pairs[0]
    d = slide_fixture()
    c = Coloring(G, (a, b))
    slid, updated = apply_handle_slide(d, c, ("alpha", 0), ("alpha", 1))
    assert updated.colors == (a, G.mul(G.inv(a), b))
    assert updated.colors != (a, G.mul(b, G.inv(a)))
    assert validate_coloring(slid, updated)


def test_slide_then_reverse_slide_restores_colors():
    G = dihedral_group(4)
    d = slide_fixture()
    c = Coloring(G, (3, 5))
    d1, c1 = apply_handle_slide(d, c, ("alpha", 0), ("alpha", 1))
    d2, c2 = reverse_orientation(d1, c1, ("alpha", 0))
    d3, c3 = apply_handle_slide(d2, c2, ("alpha", 0), ("alpha", 1))
    _, c4 = reverse_orientation(d3, c3, ("alpha", 0))
    assert c4.colors == c.colors


def test_beta_slide_keeps_colors():
    t = builtin("t_st")
    c = enumerate_colorings(t, S3)[0]
    slid, after = apply_handle_slide(t, c, ("beta", 0), ("beta", 1), attach=1)
    assert after == c
    assert validate(slid).ok
    assert validate_coloring(slid, after)
    beta_words, _ = words(slid)
    assert beta_words[0] == ((0, 1), (1, 1))


def test_slide_rejections():
    t = builtin("t_st")
    with pytest.raises(InvalidSlide, match="one family"):
        apply_handle_slide(t, None, ("beta", 0), ("alpha", 1))
    with pytest.raises(InvalidSlide, match="itself"):
        apply_handle_slide(t, None, ("alpha", 2), ("alpha", 2))
    with pytest.raises(InvalidSlide, match="index"):
        apply_handle_slide(t, None, ("alpha", 0), ("alpha", 5))
    with pytest.raises(InvalidSlide, match="attach"):
        apply_handle_slide(t, None, ("alpha", 0), ("alpha", 1), attach=9)


# ---------------------------------------------------------------------------
# stabilization


def test_stabilizing_the_empty_diagram_gives_the_summand():
    G = S3
    d, c = stabilize(builtin("s4_genus0"), Coloring(G, ()))
    assert d == builtin("t_st")
    assert c.colors == (G.identity,) * 3


def test_stabilize_then_destabilize_is_identity():
    G = dihedral_group(4)
    d = builtin("s1_x_s3")
    c = Coloring(G, (3,))
    up_d, up_c = stabilize(d, c)
    assert up_d.genus == 4
    assert validate(up_d).ok
    assert validate_coloring(up_d, up_c)
    down_d, down_c = destabilize(up_d, up_c)
    assert down_d == d
    assert down_c == c


def test_destabilize_needs_the_exact_marked_summand():
    G = S3
    with pytest.raises(NotAStabilization, match="genus"):
        destabilize(builtin("s1_x_s3"), Coloring(G, (0,)))
    up_d, up_c = stabilize(builtin("s1_x_s3"), Coloring(G, (0,)))
    rotated = move_basepoint(up_d, ("alpha", 1), 1)
    with pytest.raises(NotAStabilization, match="differs"):
        destabilize(rotated, up_c)
    tinted = Coloring(G, up_c.colors[:-1] + (1,))
    with pytest.raises(NotAStabilization, match="identity"):
        destabilize(up_d, tinted)


def test_destabilize_rejects_summand_touching_the_rest():
    G = S3
    up_d, up_c = stabilize(builtin("s1_x_s3"), Coloring(G, (0,)))
    linked = insert_two_point(up_d, ("alpha", 0), 0, ("beta", 1), 0, 1)
    with pytest.raises(NotAStabilization, match="cross"):
        destabilize(linked, up_c)


# ---------------------------------------------------------------------------
# orientation, basepoints, sums


def word_inverse(w):
    return tuple((i, -e) for i, e in reversed(w))


def rotations(w):
    return [w[k:] + w[:k] for k in range(max(1, len(w)))]


def test_reversing_a_beta_curve_reverses_and_inverts_its_word():
    h = HeegaardDiagram(
        genus=2,
        alpha=(Curve("alpha", 0, (0, 1)), Curve("alpha", 1, (2,))),
        beta=(Curve("beta", 0, (0, 1, 2)), Curve("beta", 1, ())),
        crossings=(
            DiagCrossing(0, ("beta", 0), ("alpha", 0), 1),
            DiagCrossing(1, ("beta", 0), ("alpha", 0), -1),
            DiagCrossing(2, ("beta", 0), ("alpha", 1), 1),
        ),
    )
    before = words(h)[0][0]
    flipped, _ = reverse_orientation(h, None, ("beta", 0))
    after = words(flipped)[0][0]
    assert after == ((0, -1), (1, -1), (0, 1))
    assert after in rotations(word_inverse(before))
    assert validate(flipped).ok


def test_reversing_an_alpha_curve_inverts_its_color():
    d = trisection_of_heegaard(builtin("heegaard_lens(3,1)"))
    G = cyclic_group(3)
    c = Coloring(G, (1,))
    assert validate_coloring(d, c)
    flipped, inverted = reverse_orientation(d, c, ("alpha", 0))
    assert inverted.colors == (2,)
    assert validate_coloring(flipped, inverted)
    beta_words, kappa_words = words(flipped)
    assert beta_words[0] == ((0, -1),) * 3
    assert kappa_words[0] == ((0, -1),) * 3


def test_reverse_orientation_is_an_involution():
    d = triangle_diagram()
    c = enumerate_colorings(d, S3)[0]
    once_d, once_c = reverse_orientation(d, c, ("kappa", 0))
    twice_d, twice_c = reverse_orientation(once_d, once_c, ("kappa", 0))
    assert twice_d == d and twice_c == c


def test_move_basepoint_steps_compose():
    d = trisection_of_heegaard(builtin("heegaard_lens(3,1)"))
    ref = ("beta", 0)
    one = move_basepoint(d, ref, 1)
    assert move_basepoint(one, ref, 1) == move_basepoint(d, ref, 2)
    stepped = d
    for _ in range(3):
        stepped = move_basepoint(stepped, ref, 1)
    assert stepped == d
    with pytest.raises(Exception, match="offset"):
        move_basepoint(d, ref, 3)


def test_connected_sum_adds_genus_and_respects_the_empty_diagram():
    t = builtin("t_st")
    empty = builtin("s4_genus0")
    assert connected_sum(t, empty) == t
    assert connected_sum(empty, t) == t
    doubled = connected_sum(t, t)
    assert doubled.genus == 6
    assert len(doubled.crossings) == 12
    assert validate(doubled).ok
    assert len(enumerate_colorings(doubled, S3)) == 1


def test_connected_sum_is_associative():
    a = builtin("t_st")
    b = builtin("s1_x_s3")
    c = triangle_diagram()
    assert connected_sum(connected_sum(a, b), c) == connected_sum(
        a, connected_sum(b, c)
    )


# ---------------------------------------------------------------------------
# built-ins and the Heegaard bridge


def test_builtin_name_errors():
    with pytest.raises(UnknownName):
        builtin("klein_bottle")
    with pytest.raises(UnknownName, match="parameters"):
        builtin("t_st", 4)
    with pytest.raises(UnknownName, match="coprime"):
        builtin("heegaard_lens(4,2)")
    with pytest.raises(UnknownName, match="parameters"):
        builtin("heegaard_lens")


def test_heegaard_s1xs2_is_free():
    h = builtin("heegaard_s1xs2")
    assert words(h) == (((),), ())
    assert len(enumerate_colorings(h, S3)) == 6


def test_trisected_heegaard_doubles_the_words():
    for name in ("heegaard_s3", "heegaard_lens(3,1)", "heegaard_s1xs2"):
        h = builtin(name)
        t = trisection_of_heegaard(h)
        assert validate(t).ok
        beta_words, kappa_words = words(t)
        assert beta_words == words(h)[0]
        assert kappa_words == beta_words
        assert len(enumerate_colorings(t, S3)) == len(enumerate_colorings(h, S3))


# ---------------------------------------------------------------------------
# randomized move soak


def test_random_move_sequences_preserve_validity_and_colorings():
    rng = random.Random(20260822)
    G = dihedral_group(4)
    base = connected_sum(
        trisection_of_heegaard(builtin("heegaard_lens(2,1)")),
        trisection_of_heegaard(builtin("heegaard_lens(2,1)")),
    )
    d = base
    c = enumerate_colorings(d, G)[3]
    assert c.colors != (G.identity, G.identity)

    families = ("alpha", "beta", "kappa")
    for step in range(60):
        kind = rng.choice(
            ["basepoint", "reverse", "conjugate", "slide", "two_point", "stab"]
        )
        if kind == "basepoint":
            ref = (rng.choice(families), rng.randrange(d.genus))
            seq = d.curve(ref).crossing_sequence
            if seq:
                d = move_basepoint(d, ref, rng.randrange(len(seq)))
        elif kind == "reverse":
            ref = (rng.choice(families), rng.randrange(d.genus))
            d, c = reverse_orientation(d, c, ref)
        elif kind == "conjugate":
            c = conjugate_coloring(c, rng.randrange(G.order))
        elif kind == "slide":
            if len(d.crossings) > 60:
                continue
            fam = rng.choice(families)
            i, j = rng.sample(range(d.genus), 2)
            seq_len = len(d.curve((fam, i)).crossing_sequence)
            d, c = apply_handle_slide(
                d, c, (fam, i), (fam, j), attach=rng.randrange(seq_len + 1)
            )
        elif kind == "two_point":
            fam_x, fam_y = rng.sample(families, 2)
            x = (fam_x, rng.randrange(d.genus))
            y = (fam_y, rng.randrange(d.genus))
            px = rng.randrange(len(d.curve(x).crossing_sequence) + 1)
            py = rng.randrange(len(d.curve(y).crossing_sequence) + 1)
            d = insert_two_point(d, x, px, y, py, rng.choice([1, -1]))
            if rng.random() < 0.5:
                pair = [q.id for q in d.crossings[-2:]]
                d = apply_two_point(d, *pair)
        else:
            d, c = stabilize(d, c)
            d, c = destabilize(d, c)
        assert validate(d).ok, f"structure broke at step {step}"
        assert validate_coloring(d, c), f"coloring broke at step {step}"
