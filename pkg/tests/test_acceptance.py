"""Acceptance criteria, one test each, with their runtime budgets.

Each test prints a PASS/FAIL line and the conftest summary repeats them.
"""
import contextlib
import itertools
import json
import random
import subprocess
import sys
import time

from autfn import families as fam
from autfn import mk
from autfn import nielsen as ni
from autfn import splittings as sp
from autfn.automorphisms import (IntMatrix, compose, fixed_words, inner, left_transvection,
                                 letter_inversion, letter_swap, nielsen_tau, right_transvection)
from autfn.oracles import naive_reduce, subgroup_ball
from autfn.suites import random_mk, random_stab, random_word, stab0_generators
from autfn.words import (ball_size, enumerate_ball, enumerate_codes, invert_codes,
                         is_reduced_codes, multiply_codes, reduce_codes, standard_basis)

from conftest import record


@contextlib.contextmanager
def criterion(number, description, budget=None):
    t0 = time.perf_counter()
    passed = False
    try:
        yield
        elapsed = time.perf_counter() - t0
        passed = budget is None or elapsed < budget
        if not passed:
            raise AssertionError(f"took {elapsed:.1f} s, budget {budget} s")
    finally:
        elapsed = time.perf_counter() - t0
        note = f" ({elapsed:.1f} s" + (f" of {budget} s)" if budget else ")")
        record(number, description + note, passed)
        print(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {description}{note}")


def test_01_word_algebra():
    with criterion(1, "word reduction, group axioms and ball counts", budget=10):
        alphabet = (1, -1, 2, -2, 3, -3)
        outputs = set()
        for n in range(9):
            for seq in itertools.product(alphabet, repeat=n):
                outputs.add(reduce_codes(seq))
        for r in outputs:
            assert reduce_codes(r) == r and is_reduced_codes(r)
        assert len(outputs) == ball_size(3, 8)
        rng = random.Random(1)
        for _ in range(300):
            seq = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 14)))
            assert reduce_codes(seq) == naive_reduce(seq)
        for c in enumerate_codes(3, 8):
            inv = invert_codes(c)
            assert multiply_codes(c, ()) == c == multiply_codes((), c)
            assert multiply_codes(c, inv) == () == multiply_codes(inv, c)
            assert invert_codes(inv) == c
        b = standard_basis(3)
        for _ in range(1000):
            u, v, w = (random_word(rng, b, 8) for _ in range(3))
            assert (u * v) * w == u * (v * w)
        for rank in (1, 2, 3, 4):
            basis = standard_basis(rank)
            for L in range(5):
                words = list(enumerate_ball(basis, L))
                expected = 1 + sum(2 * rank * (2 * rank - 1) ** (l - 1) for l in range(1, L + 1))
                assert len(words) == len(set(words)) == expected
                assert all(is_reduced_codes(w.codes) for w in words)


def test_02_mk_group_law():
    with criterion(2, "M_k associativity, identity and inverse on 1000 triples", budget=5):
        b = standard_basis(2)
        rng = random.Random(2)
        failures = 0
        for t in range(1000):
            k = (1, 2, 3)[t % 3]
            x, y, z = (random_mk(rng, k, b) for _ in range(3))
            e = mk.mk_identity(k, b)
            ok = ((x * y) * z == x * (y * z) and x * e == x == e * x
                  and x * ~x == e == ~x * x)
            failures += not ok
        assert failures == 0


def test_03_embedding_and_involutions():
    with criterion(3, "A^(k+1) embedding, alpha_i relations and Sym(k+1) equivariance", budget=5):
        b = standard_basis(2)
        rng = random.Random(3)
        k = 3
        for _ in range(200):
            t = tuple(random_word(rng, b, 3) for _ in range(k + 1))
            assert mk.extract_tuple(mk.embed_tuple(t)) == t
        for _ in range(200):
            x = random_mk(rng, k, b)
            for i in range(1, k + 1):
                assert mk.alpha(i, mk.alpha(i, x)) == x
            for i, j in itertools.permutations(range(1, k + 1), 2):
                y = x
                for _ in range(3):
                    y = mk.alpha(i, mk.alpha(j, y))
                assert y == x
        for _ in range(200):
            t = tuple(random_word(rng, b, 3) for _ in range(k + 1))
            i = rng.randint(1, k)
            assert mk.alpha(i, mk.embed_tuple(t)) == mk.embed_tuple(mk.swap_tuple(t, i))


def test_04_fixed_subgroup_of_tau_powers():
    with criterion(4, "Fix(tau^p), p = 1, 2, 3, equals <a1 a2 a1^-1, a2> up to length 5", budget=30):
        b = standard_basis(2)
        a1, a2 = b.generators()
        oracle = subgroup_ball([a1 * a2 * ~a1, a2], 10, 5)
        tau = nielsen_tau(b)
        listings = [fixed_words(tau ** p, 5) for p in (1, 2, 3)]
        assert listings[0] == listings[1] == listings[2] == oracle


def test_05_nielsen_detection():
    with criterion(5, "trace/determinant criterion and the trace-closure lemma", budget=20):
        b = standard_basis(2)
        tau = nielsen_tau(b)
        count = 0
        for y in enumerate_ball(b, 2):
            conj = compose(compose(inner(y), tau), inner(~y))
            for p in range(-3, 4):
                q = conj ** p
                for g in enumerate_ball(b, 2):
                    assert ni.is_nielsen_power_outer(compose(inner(g), q))
                    count += 1
        assert count == 17 * 7 * 17
        assert not ni.is_nielsen_power_outer(letter_swap(b, 0, 1))
        assert not ni.is_nielsen_power_outer(letter_inversion(b, 0))
        assert not ni.is_nielsen_power_outer(letter_inversion(b, 1))
        r = range(-3, 4)
        for e in itertools.product(r, repeat=4):
            M = IntMatrix((e[:2], e[2:]))
            if M.trace() == 2 and M.det() == 1:
                for n in r:
                    if n and (M @ IntMatrix(((1, n), (0, 1)))).trace() == 2:
                        assert M[1, 0] == 0


def test_06_similarity_witnesses():
    with criterion(6, "witness (1, a1^-1) for ad_a2 tau; definitive none for ad_a1 tau"):
        b = standard_basis(2)
        a1, a2 = b.generators()
        tau = nielsen_tau(b)
        res = ni.nielsen_power_witness(compose(inner(a2), tau), 2)
        assert res.outcome is ni.Outcome.FOUND
        assert (res.witness.p, res.witness.y) == (1, ~a1)
        assert res.witness.reproduces(compose(inner(a2), tau))
        res = ni.nielsen_power_witness(compose(inner(a1), tau))
        assert res.outcome is ni.Outcome.NONE and "obstruction" in res.reason


def test_07_rose_stabilizer():
    with criterion(7, "rose stabilizer round trip, homomorphism and edge condition"):
        s = sp.RoseSplitting.standard(4, 2)
        fb = s.factor_basis
        rng = random.Random(7)
        for _ in range(200):
            m = random_mk(rng, 2 * s.k, fb)
            d = sp.rose_stab_membership(sp.mk_to_rose(m, s), s)
            assert d is not None and sp.rose_to_mk(d) == m
        for _ in range(200):
            m1, m2 = random_mk(rng, 2 * s.k, fb), random_mk(rng, 2 * s.k, fb)
            prod = compose(sp.mk_to_rose(m1, s), sp.mk_to_rose(m2, s))
            assert sp.rose_to_mk(sp.rose_stab_membership(prod, s)) == m1 * m2
        B = s.basis
        for a in enumerate_ball(B, 2):
            if not a or not all(abs(c) <= 2 for c in a.codes):
                continue
            for j in (1, 2):
                assert not sp.edge_stab_membership(left_transvection(B, j, a), s, j)
                assert sp.edge_stab_membership(right_transvection(B, j, a), s, j)
                other = 3 - j
                assert sp.edge_stab_membership(left_transvection(B, other, a), s, j)


def test_08_tree_balls():
    with criterion(8, "tree balls are trees; twisted equivariance; inner maps translate", budget=60):
        rng = random.Random(8)
        for N in (3, 4, 5):
            s = sp.RoseSplitting.standard(N, N - 2)
            for L in range(4):
                ball = sp.build_ball(s, L)
                assert ball.is_connected() and ball.is_acyclic()
            for _ in range(100):
                phi = compose(inner(random_word(rng, s.basis, 2)), random_stab(rng, s))
                f = sp.TwistedMap(phi, s)
                g = random_word(rng, s.basis, 3)
                x = rng.choice(ball.vertices)
                assert f(sp.left_translate(g, x, s)) == sp.left_translate(phi(g), f(x), s)
            for g in enumerate_ball(s.basis, 2):
                f = sp.TwistedMap(inner(g), s)
                for v in ball.vertices:
                    assert f(v) == sp.left_translate(g, v, s)


def test_09_lift_correction():
    with criterion(9, "inner correction fixes the base edge for products of <= 2 generators"):
        s = sp.RoseSplitting.standard(3, 1)
        gens = stab0_generators(s)
        products = list(gens) + [compose(g, h) for g in gens for h in gens]
        failures = 0
        for phi in products:
            g, corrected = sp.lift_correction(phi, s, 1)
            failures += not (sp.edge_stab_membership(corrected, s, 1)
                             and compose(inner(g), corrected) == phi)
        assert failures == 0 and len(products) == len(gens) * (len(gens) + 1)


def test_10_direct_product_families():
    with criterion(10, "families: commutators, factor counts, intersections, tau", budget=120):
        kinds = fam.AUT_KINDS + fam.OUT_KINDS
        for N in (3, 4, 5):
            for kind in kinds:
                factors = fam.family_generators(kind, N)
                want = 2 * N - 3 if kind in fam.AUT_KINDS else 2 * N - 4
                assert fam.nonabelian_count(factors) == want
                report = fam.check_direct_product(factors)
                assert report.all_commute and report.nonabelian_ok
                outer = kind in fam.OUT_KINDS
                for f1, f2 in itertools.combinations(factors, 2):
                    assert fam.intersection_is_trivial(f1, f2, 3, outer), (kind, f1.label, f2.label)
                ev = fam.centralizer_evidence(kind, N)
                assert ev.tau_centralizes_others == kind.lists_tau
            for kind in (fam.FamilyKind.AutTauCentral, fam.FamilyKind.AutTauInner):
                assert fam.centralizer_evidence(kind, N).tau_centralizes_others
            ev = fam.centralizer_evidence(fam.FamilyKind.AutPlain, N)
            assert not ev.tau_centralizes_others and ev.failing_pair[0] == "L_1"


def _cli(*args):
    cmd = [sys.executable, "-m", "autfn.cli", *args]
    return subprocess.run(cmd, capture_output=True, check=True).stdout


def test_11_cli_determinism(tmp_path):
    with criterion(11, "CLI output byte-identical across runs; ball exports round-trip"):
        runs = [
            ("verify", "--suite", "mk", "--seed", "11"),
            ("verify", "--suite", "splittings.tree", "--seed", "11", "--n", "4", "--L", "2"),
            ("ball", "rose@N=4,k=2", "--L", "2", "--format", "json"),
            ("ball", "rose@N=5,k=3", "--L", "2", "--format", "dot"),
            ("fix", "a1 -> a1 a2", "--L", "4"),
            ("centralizer", "AutTauCentral@N=3", "--depth", "1"),
        ]
        for args in runs:
            assert _cli(*args) == _cli(*args), args
        for N, k, L in ((3, 1, 3), (4, 2, 2), (5, 3, 2)):
            s = sp.RoseSplitting.standard(N, k)
            ball = sp.build_ball(s, L)
            text = _cli("ball", f"rose@N={N},k={k}", "--L", str(L), "--format", "json").decode()
            assert sp.from_json(text) == ball
            assert sp.from_json(sp.to_json(ball)) == ball
            dot = _cli("ball", f"rose@N={N},k={k}", "--L", str(L), "--format", "dot").decode()
            assert dot == sp.to_dot(ball)
            lines = dot.splitlines()
            assert sum(" -- " in l for l in lines) == len(ball.edges)
            assert sum("[label=" in l and " -- " not in l for l in lines) == len(ball.vertices)
        out = _cli("verify", "--suite", "nielsen", "--seed", "11").decode().splitlines()
        assert all(json.loads(l)["verdict"] == "pass" for l in out)
