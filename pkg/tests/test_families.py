import itertools

import pytest

from autfn.automorphisms import (compose, conjugator_of, fixed_words, inner, left_transvection, nielsen_tau,
                                 parse_automorphism)
from autfn.families import (AUT_KINDS, OUT_KINDS, FamilyKind, GeneratedFactor,
                            bounded_intersection_oracle, centralizer_evidence,
                            check_direct_product, depth_table, family_generators,
                            fixed_parameters_ok, ia3_noncommuting_pair, inner_generators,
                            intersection_is_trivial, nonabelian_count, out_l1_lands_in_j,
                            parse_family_spec)
from autfn.words import standard_basis


def labels(factors):
    return [f.label for f in factors]


def test_generator_examples():
    db = family_generators(FamilyKind.DB, 3)
    assert labels(db) == ["L_1", "R_1"] and all(len(f.generators) == 2 for f in db)
    assert labels(family_generators(FamilyKind.AutTauCentral, 3)) == ["L_1^tau", "R_1^tau", "I(A)^tau", "<tau>"]
    assert labels(family_generators(FamilyKind.AutPlain, 4)) == ["L_1", "L_2", "R_1", "R_2", "I(A)"]
    assert labels(family_generators("AutTauFirst", 4))[0] == "<tau, L_1>"
    assert labels(family_generators("AutTauInner", 3))[-1] == "<I(A), tau>"
    with pytest.raises(ValueError):
        family_generators(FamilyKind.DB, 2)


def test_factor_invariants():
    with pytest.raises(ValueError):
        GeneratedFactor("empty", ())


@pytest.mark.parametrize("kind", list(FamilyKind))
@pytest.mark.parametrize("N", [3, 4])
def test_direct_product_and_counts(kind, N):
    factors = family_generators(kind, N)
    assert nonabelian_count(factors) == kind.expected_factor_count(N)
    report = check_direct_product(factors)
    assert report.ok, report.failures[:3]


def test_counts_by_type():
    for kind in AUT_KINDS:
        assert kind.expected_factor_count(5) == 7
    for kind in OUT_KINDS + (FamilyKind.DB,):
        assert kind.expected_factor_count(5) == 6


def test_commutation_failure_example():
    b = standard_basis(3)
    tau = nielsen_tau(b)
    l1 = left_transvection(b, 1, b.word("a1"))
    assert compose(tau, l1).image("x1") == b.word("a1 a2 x1")
    assert compose(l1, tau).image("x1") == b.word("a1 x1")
    L1 = family_generators(FamilyKind.DB, 3)[0]
    report = check_direct_product([L1, GeneratedFactor("<tau>", (tau,), cyclic=True)])
    assert not report.all_commute


def test_inner_factor_commutes_with_transvections():
    ia = family_generators(FamilyKind.AutPlain, 3)[-1]
    db = family_generators(FamilyKind.DB, 3)
    assert check_direct_product([ia] + db).all_commute


def test_intersection_examples():
    L1, R1 = family_generators(FamilyKind.DB, 3)
    common = bounded_intersection_oracle(L1, R1, 3)
    assert len(common) == 1 and common[0].is_identity()
    assert bounded_intersection_oracle(L1, L1, 2) == depth_table(L1, 2)
    ia = family_generators(FamilyKind.AutPlain, 3)[-1]
    ia_tau = family_generators(FamilyKind.AutTauCentral, 3)[2]
    # depth-d products over {a1, a2} are exactly inner(g) with |g| <= d, so the
    # intersection is the part of the I(A)^tau table with short conjugators
    for d in (2, 3, 4):
        got = bounded_intersection_oracle(ia, ia_tau, d)
        want = [phi for phi in depth_table(ia_tau, d) if len(conjugator_of(phi)) <= d]
        assert set(got) == set(want)
    assert len(bounded_intersection_oracle(ia, ia_tau, 2)) == 5
    with pytest.raises(ValueError):
        bounded_intersection_oracle(L1, R1, 0)


def test_depth_table_size():
    L1 = family_generators(FamilyKind.DB, 3)[0]
    # free group of rank 2: 1 + 4 + 12 + 36 reduced products
    assert len(depth_table(L1, 3)) == 53


@pytest.mark.parametrize("kind", list(FamilyKind))
def test_pairwise_intersections_trivial(kind):
    factors = family_generators(kind, 3)
    outer = kind in OUT_KINDS
    for f, g in itertools.combinations(factors, 2):
        assert intersection_is_trivial(f, g, 3, outer), (f.label, g.label)


def test_centralizer_examples():
    ev = centralizer_evidence(FamilyKind.AutTauCentral, 3)
    assert ev.tau_centralizes_others and ev.tau_central
    ev = centralizer_evidence(FamilyKind.AutPlain, 3)
    assert not ev.tau_centralizes_others and ev.failing_pair[0] == "L_1"
    ev = centralizer_evidence(FamilyKind.AutTauInner, 3)
    assert ev.tau_centralizes_others
    b = standard_basis(3)
    tau = nielsen_tau(b)
    for w in fixed_words(tau, 3):
        assert compose(tau, inner(w)) == compose(inner(w), tau)


def test_centralizer_probe_finds_only_tau_powers():
    ev = centralizer_evidence(FamilyKind.AutTauCentral, 3, depth=1)
    tau = nielsen_tau(standard_basis(3))
    assert tau in ev.probe and ev.probe_all_nielsen
    ev = centralizer_evidence(FamilyKind.AutPlain, 3, depth=1)
    assert [p.is_identity() for p in ev.probe] == [True]


def test_no_inner_generators_in_db():
    for N in (3, 4, 5):
        assert inner_generators(family_generators(FamilyKind.DB, N)) == []


@pytest.mark.parametrize("kind", list(FamilyKind))
def test_tau_parameters_fixed(kind):
    assert fixed_parameters_ok(kind, 4)


def test_out_l1_maps_into_j():
    assert out_l1_lands_in_j(3) and out_l1_lands_in_j(4)


def test_ia3_filter():
    for f in family_generators(FamilyKind.AutTauFirst, 3):
        assert ia3_noncommuting_pair(f, 3) is not None
    # depth 2 is too shallow for plain transvection factors
    L1 = family_generators(FamilyKind.DB, 3)[0]
    assert ia3_noncommuting_pair(L1, 2) is None


def test_conjugated_family_still_a_direct_product():
    b = standard_basis(3)
    conj = parse_automorphism("a1 -> a1 x1; x1 -> x1 a2", b)
    spec_factors = family_generators(FamilyKind.AutTauCentral, 3, conj)
    assert check_direct_product(spec_factors).ok


def test_parse_family_spec():
    spec = parse_family_spec("DB@N=4")
    assert spec.kind is FamilyKind.DB and spec.N == 4 and spec.conj is None
    spec = parse_family_spec("AutTauCentral")
    assert spec.N == 3
    spec = parse_family_spec("OutPlain@N=3~conj=a1 -> a2; a2 -> a1")
    assert spec.conj is not None and len(spec.factors()) == 2
    with pytest.raises(ValueError):
        parse_family_spec("Nope@N=3")
    with pytest.raises(ValueError):
        parse_family_spec("DB@M=3")
