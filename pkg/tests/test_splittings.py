import random

import pytest

from autfn.automorphisms import (compose, identity, inner, inverse, left_transvection,
                                 nielsen_tau, parse_automorphism, petal_inversion,
                                 petal_permutation, right_transvection)
from autfn.mk import MkElement, is_j_element, j_element
from autfn.splittings import (CageSplitting, OutOfBall,
                              RoseSplitting, StabilizerWarning, TwistedMap, WkElement,
                              are_adjacent, build_ball, cage_stab_representative,
                              collapse_petal, collapse_vertex_map, coset_normal_form,
                              edge_stab_membership, fixes_arc, from_json, left_translate,
                              lift_correction, map_edges, mk_to_rose, parse_splitting,
                              rose_stab_membership, rose_to_mk, theta,
                              third_case_fixed_element_check, to_dot, to_json, wk_act)
from autfn.suites import random_mk, random_signed_permutation, random_stab, random_word
from autfn.words import enumerate_ball


@pytest.fixture
def s3():
    return RoseSplitting.standard(3, 1)


@pytest.fixture
def s4():
    return RoseSplitting.standard(4, 2)


def V(s, text):
    return coset_normal_form(s.basis.word(text), s)


def test_coset_normal_form_examples(s3):
    assert str(V(s3, "a1")) == "1"
    assert str(V(s3, "x1 a2")) == "x1"
    assert str(V(s3, "a1 x1")) == "a1 x1"


def test_normal_forms_separate_cosets(s3):
    ball = list(enumerate_ball(s3.basis, 3))
    A = s3.vertex_factor
    for g in ball[:60]:
        for h in ball:
            same = all(abs(c) - 1 in A for c in (~g * h).codes)
            assert (coset_normal_form(g, s3) == coset_normal_form(h, s3)) == same


def test_adjacency_examples(s3, s4):
    assert are_adjacent(V(s3, ""), V(s3, "x1"), s3) == (1, 1)
    assert are_adjacent(V(s3, ""), V(s3, "a1 x1"), s3) == (1, 1)
    assert are_adjacent(V(s3, ""), V(s3, "x1^-1"), s3) == (1, -1)
    assert are_adjacent(V(s4, ""), V(s4, "x1 x2"), s4) is None
    assert are_adjacent(V(s4, "x1"), V(s4, "x1 a2 x2"), s4) == (2, 1)


def test_ball_examples(s3, s4):
    b0 = build_ball(s3, 0)
    assert len(b0.vertices) == 1 and not b0.edges
    b1 = build_ball(s3, 1)
    assert [str(v) for v in b1.vertices] == ["1", "x1", "x1^-1"]
    assert [(str(u), str(v)) for u, v in b1.edges] == [("1", "x1"), ("1", "x1^-1")]
    b = build_ball(s4, 1)
    assert len(b.vertices) == 5 and len(b.edges) == 4
    assert all(str(u) == "1" for u, _ in b.edges)


def _parent_edges(ball):
    """Oracle: each non-base vertex hangs off the coset of its prefix ending
    just before its last stable letter."""
    s = ball.splitting
    edges = set()
    for v in ball.vertices:
        if not v.rep:
            continue
        parent = coset_normal_form(type(v.rep)._trusted(v.rep.basis, v.rep.codes[:-1]), s)
        edges.add(frozenset((parent, v)))
    return edges


@pytest.mark.parametrize("N,k,L", [(3, 1, 3), (4, 2, 3), (5, 3, 2), (5, 1, 3)])
def test_ball_is_tree_and_matches_parent_oracle(N, k, L):
    ball = build_ball(RoseSplitting.standard(N, k), L)
    assert ball.is_tree()
    assert len(ball.edges) == len(ball.vertices) - 1
    assert {frozenset(e) for e in ball.edges} == _parent_edges(ball)


def test_twisted_action_examples(s3):
    b = s3.basis
    x1 = V(s3, "x1")
    assert TwistedMap(nielsen_tau(b), s3)(x1) == x1
    assert TwistedMap(inner(b.word("a1")), s3)(x1) == V(s3, "a1 x1")
    assert TwistedMap(left_transvection(b, 1, b.word("a2")), s3)(x1) == V(s3, "a2 x1")


def test_twisted_action_outside_base_stabilizer(s3):
    b = s3.basis
    f = TwistedMap(inner(b.word("x1 a2")), s3)
    assert f.in_stabilizer
    assert f(V(s3, "")) == V(s3, "x1")
    for v in build_ball(s3, 2).vertices:
        assert f(v) == left_translate(b.word("x1 a2"), v, s3)


def test_twisted_action_warns_off_stabilizer(s4):
    phi = parse_automorphism("x1 -> x1 x2", s4.basis)
    with pytest.warns(StabilizerWarning):
        TwistedMap(phi, s4)


def test_twisted_equivariance(s4):
    rng = random.Random(8)
    ball = build_ball(s4, 2)
    for _ in range(100):
        phi = compose(inner(random_word(rng, s4.basis, 2)), random_stab(rng, s4))
        f = TwistedMap(phi, s4)
        g = random_word(rng, s4.basis, 3)
        x = rng.choice(ball.vertices)
        assert f(left_translate(g, x, s4)) == left_translate(phi(g), f(x), s4)


def test_adjacency_preserved(s4):
    rng = random.Random(6)
    small, big = build_ball(s4, 1), build_ball(s4, 4)
    for _ in range(30):
        phi = random_stab(rng, s4)
        try:
            images = map_edges(phi, small, big)
        except OutOfBall:
            continue
        for u, v in images:
            assert are_adjacent(u, v, s4) is not None


def test_map_edges_reports_out_of_ball(s3):
    b = s3.basis
    phi = right_transvection(b, 1, b.word("a1")) ** 1
    phi = compose(inner(b.word("x1 x1 x1")), phi)
    with pytest.raises(OutOfBall):
        map_edges(phi, build_ball(s3, 1), build_ball(s3, 1))


def test_rose_stab_examples(s3, s4):
    b = s3.basis
    d = rose_stab_membership(left_transvection(b, 1, b.word("a1")), s3)
    assert d.u == (b.word("a1"),) and d.v == (b.identity,)
    assert d.w.is_identity() and d.phi_a.is_identity()
    d = rose_stab_membership(petal_permutation(s4.basis, [1, 0]), s4)
    assert d.w == WkElement((1, 0), (1, 1)) and not any(d.u) and not any(d.v)
    assert rose_stab_membership(parse_automorphism("x1 -> x1 x2", s4.basis), s4) is None
    assert rose_stab_membership(inner(b.word("x1")), s3) is None


def test_rose_to_mk_examples(s3, s4):
    b = s3.basis
    m = rose_to_mk(rose_stab_membership(left_transvection(b, 1, b.word("a1")), s3))
    fb = s3.factor_basis
    assert m == MkElement((fb.word("a1^-1"), fb.identity), identity(fb))
    m = rose_to_mk(rose_stab_membership(inner(s4.basis.word("a1")), s4))
    assert m == j_element(s4.factor_basis.word("a1"), 4) and is_j_element(m)
    with pytest.raises(ValueError):
        rose_to_mk(rose_stab_membership(petal_inversion(b, 1), s3))


def test_rose_round_trip_and_homomorphism(s4):
    rng = random.Random(12)
    fb = s4.factor_basis
    for _ in range(200):
        m1, m2 = random_mk(rng, 4, fb), random_mk(rng, 4, fb)
        phi1, phi2 = mk_to_rose(m1, s4), mk_to_rose(m2, s4)
        assert rose_to_mk(rose_stab_membership(phi1, s4)) == m1
        assert rose_to_mk(rose_stab_membership(compose(phi1, phi2), s4)) == m1 * m2


def test_signed_permutations(s4):
    rng = random.Random(13)
    assert len(set(WkElement.all(2))) == 8
    for _ in range(100):
        p, q = random_stab(rng, s4), random_stab(rng, s4)
        dp, dq = rose_stab_membership(p, s4), rose_stab_membership(q, s4)
        assert dp.reassemble(s4) == p
        assert rose_stab_membership(compose(p, q), s4).w == dp.w * dq.w


def test_wk_action_matches_conjugation(s4):
    rng = random.Random(14)
    fb = s4.factor_basis
    for _ in range(100):
        m = random_mk(rng, 4, fb)
        w = random_signed_permutation(rng, 2)
        W = w.automorphism(s4)
        conj = compose(compose(W, mk_to_rose(m, s4)), inverse(W))
        assert rose_to_mk(rose_stab_membership(conj, s4)) == wk_act(w, m)


def test_edge_stab_examples(s3, s4):
    b = s3.basis
    assert edge_stab_membership(right_transvection(b, 1, b.word("a2")), s3, 1)
    assert not edge_stab_membership(left_transvection(b, 1, b.word("a1")), s3, 1)
    assert edge_stab_membership(left_transvection(s4.basis, 2, s4.basis.word("a1")), s4, 1)


def test_theta_of_corrected_left_transvection_is_in_j():
    for N in (3, 4):
        s = RoseSplitting.standard(N, N - 2)
        for text in ("a1", "a2", "a1 a2"):
            a = s.basis.word(text)
            phi = left_transvection(s.basis, 1, a)
            g, corrected = lift_correction(phi, s, 1)
            assert g == a
            assert corrected == compose(inner(~a), phi)
            m = theta(corrected, s, 1)
            assert m.k == 2 * (N - 2) - 1
            assert m == j_element(~s.factor_basis.word(text), m.k)


def test_lift_correction_with_translation(s3):
    b = s3.basis
    phi = compose(inner(b.word("x1 a2")), left_transvection(b, 1, b.word("a1")))
    g, corrected = lift_correction(phi, s3, 1)
    assert edge_stab_membership(corrected, s3, 1)
    assert compose(inner(g), corrected) == phi


def test_fixes_arc_examples(s3):
    b = s3.basis
    ball = build_ball(s3, 3)
    path = [(V(s3, ""), V(s3, "x1"))]
    assert fixes_arc(nielsen_tau(b), path, ball)
    assert not fixes_arc(inner(b.word("x1")), path, ball)
    long_path = [(V(s3, ""), V(s3, "x1")), (V(s3, "x1"), V(s3, "x1 a1 x1"))]
    assert fixes_arc(identity(b), long_path, ball)
    with pytest.raises(OutOfBall):
        fixes_arc(identity(b), [(V(s3, ""), V(s3, "x1 x1"))], ball)


def test_third_case_examples(s3):
    b = s3.basis
    a1 = b.word("a1")
    assert third_case_fixed_element_check(right_transvection(b, 1, b.word("a2")), s3, a1)
    assert not third_case_fixed_element_check(nielsen_tau(b), s3, a1)
    assert third_case_fixed_element_check(identity(b), s3, b.word("a2 a1"))
    with pytest.raises(ValueError):
        third_case_fixed_element_check(left_transvection(b, 1, a1), s3, a1)
    with pytest.raises(ValueError):
        third_case_fixed_element_check(identity(b), s3, b.identity)


def test_third_case_never_violated(s3):
    rng = random.Random(21)
    fb = s3.factor_basis
    for _ in range(200):
        m = random_mk(rng, 2, fb)
        m = MkElement((fb.identity, m.coords[1]), m.phi)
        phi = mk_to_rose(m, s3)
        w = random_word(rng, s3.basis, 3, letters=(0, 1))
        if w:
            third_case_fixed_element_check(phi, s3, w)


def test_cage_examples():
    c = CageSplitting.standard(2, 2, 2)
    assert c.basis.names == ("a1", "a2", "b1", "b2", "x1") and c.k == 2
    rep = cage_stab_representative(identity(c.basis), c)
    assert rep.phi_a.is_identity() and rep.phi_b.is_identity()
    assert rep.pairs == ((c.basis.identity, c.basis.identity),)
    phi = parse_automorphism("x1 -> a1 x1 b1", c.basis)
    assert cage_stab_representative(phi, c).pairs == ((c.basis.word("a1"), c.basis.word("b1")),)
    assert cage_stab_representative(parse_automorphism("x1 -> b1 x1", c.basis), c) is None
    with pytest.raises(ValueError):
        CageSplitting(c.basis, (0, 1), (1, 2), (4,))


def test_collapse_examples(s4):
    coarse = collapse_petal(s4, 2)
    assert coarse.vertex_factor == (0, 1, 3) and coarse.k == 1
    assert str(collapse_vertex_map(V(s4, "x2"), coarse)) == "1"
    assert str(collapse_vertex_map(V(s4, "x1"), coarse)) == "x1"
    image = collapse_vertex_map(V(s4, "x2 x1"), coarse)
    assert str(image) == "x2 x1"
    assert are_adjacent(V(coarse, ""), image, coarse) == (1, 1)
    with pytest.raises(IndexError):
        collapse_petal(s4, 3)


def test_collapse_maps_edges_to_edges_or_points(s4):
    coarse = collapse_petal(s4, 2)
    for u, v in build_ball(s4, 3).edges:
        cu, cv = collapse_vertex_map(u, coarse), collapse_vertex_map(v, coarse)
        assert cu == cv or are_adjacent(cu, cv, coarse) is not None


def test_exports_round_trip(s4):
    ball = build_ball(s4, 2)
    assert from_json(to_json(ball)) == ball
    dot = to_dot(ball)
    assert dot.count(" -- ") == len(ball.edges)
    assert dot == to_dot(build_ball(s4, 2))
    assert '"1" -- "x1" [label="1+"]' in dot


def test_parse_splitting():
    assert parse_splitting("rose@N=4,k=2") == RoseSplitting.standard(4, 2)
    assert parse_splitting("rose") == RoseSplitting.standard(3, 1)
    with pytest.raises(ValueError):
        parse_splitting("cage@N=4")
    with pytest.raises(ValueError):
        parse_splitting("rose@N=3,k=5")


def test_degenerate_rose_without_vertex_group():
    s = RoseSplitting.standard(2, 2)
    phi = petal_permutation(s.basis, [1, 0], factor=())
    d = rose_stab_membership(phi, s)
    assert d is not None and d.phi_a is None and d.w.perm == (1, 0)
    assert build_ball(s, 2).is_tree()
