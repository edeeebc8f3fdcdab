"""Named, seeded verification suites run by ``autfn verify``.

Every suite draws randomness from its own ``random.Random`` whose seed is the
first 8 bytes of sha256("<seed>:<suite name>"), so adding or reordering suites
never changes the stream another suite sees.
"""
from __future__ import annotations

import fnmatch
import hashlib
import itertools
import json
import random
import time
from dataclasses import asdict, dataclass
from typing import Callable

from . import automorphisms as au
from . import families as fam
from . import mk
from . import nielsen as ni
from . import splittings as sp
from .automorphisms import Automorphism, IntMatrix, compose, inner, inverse, nielsen_tau
from .oracles import count_reduced_by_brute_force, naive_reduce, subgroup_ball, substitute_naive
from .words import (Basis, Word, ball_size, enumerate_ball, enumerate_codes, invert_codes,
                    is_reduced_codes, multiply_codes, reduce_codes, standard_basis)

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


def suite_rng(seed: int, name: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{name}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


@dataclass
class SuiteReport:
    suite: str
    anchor: str
    seed: int
    samples: int
    verdict: str
    counterexample: str | None = None
    elapsed_ms: float | None = None

    def to_json(self, timing: bool = False) -> str:
        d = asdict(self)
        if not timing:
            d.pop("elapsed_ms")
        return json.dumps(d, sort_keys=False)


@dataclass
class Context:
    n: int | None = None
    L: int | None = None
    depth: int | None = None

    def get(self, name: str, default: int) -> int:
        value = getattr(self, name)
        return default if value is None else value


class Counterexample(Exception):
    pass


def require(cond: bool, what: str):
    if not cond:
        raise Counterexample(what)


@dataclass
class Outcome:
    samples: int
    verdict: str = PASS
    note: str | None = None


@dataclass(frozen=True)
class Suite:
    name: str
    anchor: str
    run: Callable[[random.Random, Context], Outcome]


REGISTRY: dict[str, Suite] = {}


def register(name: str, anchor: str):
    def deco(fn):
        if name in REGISTRY:
            raise ValueError(f"suite {name} registered twice")
        REGISTRY[name] = Suite(name, anchor, fn)
        return fn
    return deco


def select(selector: str) -> list[Suite]:
    """Exact name, ``all``, a dotted prefix (``families``) or an fnmatch glob."""
    if selector in ("all", "*"):
        return list(REGISTRY.values())
    if selector in REGISTRY:
        return [REGISTRY[selector]]
    hits = [s for n, s in REGISTRY.items()
            if n.startswith(selector + ".") or fnmatch.fnmatchcase(n, selector)]
    if not hits:
        raise KeyError(selector)
    return hits


def run_suite(suite: Suite, seed: int, ctx: Context) -> SuiteReport:
    rng = suite_rng(seed, suite.name)
    t0 = time.perf_counter()
    try:
        out = suite.run(rng, ctx)
        report = SuiteReport(suite.name, suite.anchor, seed, out.samples, out.verdict, out.note)
    except Counterexample as exc:
        report = SuiteReport(suite.name, suite.anchor, seed, 0, FAIL, str(exc))
    report.elapsed_ms = round((time.perf_counter() - t0) * 1000, 1)
    return report


# -- random generators ---------------------------------------------------------------

def random_word(rng: random.Random, basis: Basis, max_length: int,
                letters: tuple[int, ...] | None = None) -> Word:
    idx = letters if letters is not None else tuple(range(basis.rank))
    alphabet = [s * (i + 1) for i in idx for s in (1, -1)]
    n = rng.randint(0, max_length)
    codes: list[int] = []
    while len(codes) < n:
        c = rng.choice(alphabet)
        if codes and codes[-1] == -c:
            continue
        codes.append(c)
    return Word(basis, codes)


def aut_f2_generators(basis: Basis) -> list[Automorphism]:
    """tau, the swap, the inversion of a1 and tau^-1 on a rank-2 basis."""
    tau = nielsen_tau(basis)
    return [tau, inverse(tau), au.letter_swap(basis, 0, 1), au.letter_inversion(basis, 0)]


def random_aut_f2(rng: random.Random, basis: Basis, depth: int = 3) -> Automorphism:
    gens = aut_f2_generators(basis) + [inner(basis.generator(0)), inner(basis.generator(1))]
    phi = au.identity(basis)
    for _ in range(rng.randint(0, depth)):
        phi = compose(phi, rng.choice(gens))
    return phi


def random_mk(rng: random.Random, k: int, basis: Basis, coord_length: int = 3) -> mk.MkElement:
    return mk.MkElement(tuple(random_word(rng, basis, coord_length) for _ in range(k)),
                        random_aut_f2(rng, basis))


def random_signed_permutation(rng: random.Random, k: int) -> sp.WkElement:
    perm = list(range(k))
    rng.shuffle(perm)
    return sp.WkElement(tuple(perm), tuple(rng.choice((1, -1)) for _ in range(k)))


def random_stab(rng: random.Random, s: sp.RoseSplitting, signed: bool = True) -> Automorphism:
    """A random base-vertex stabilizer element, optionally with a petal permutation part."""
    fb = s.factor_basis
    m = random_mk(rng, 2 * s.k, fb, 2)
    phi = sp.mk_to_rose(m, s)
    if signed:
        phi = compose(phi, random_signed_permutation(rng, s.k).automorphism(s))
    return phi


def _fmt(phi: Automorphism) -> str:
    return au.format_automorphism(phi)


# -- words ---------------------------------------------------------------------------

@register("words.reduce", "free reduction is idempotent and yields reduced words")
def _words_reduce(rng, ctx):
    L = ctx.get("L", 8)
    n = 0
    alphabet = (1, -1, 2, -2, 3, -3)
    outputs = set()
    for length in range(L + 1):
        for seq in itertools.product(alphabet, repeat=length):
            outputs.add(reduce_codes(seq))
            n += 1
    # idempotence only needs checking once per distinct output
    for r in outputs:
        require(reduce_codes(r) == r and is_reduced_codes(r), f"reduced output {r}")
    require(len(outputs) == ball_size(3, L), f"{len(outputs)} distinct outputs")
    # cross-check against the naive rewriting oracle on a sample
    for _ in range(1000):
        seq = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 12)))
        require(reduce_codes(seq) == naive_reduce(seq), f"raw sequence {seq} vs naive reduction")
    return Outcome(n + 1000)


@register("words.axioms", "group axioms for reduced words")
def _words_axioms(rng, ctx):
    L = ctx.get("L", 8)
    basis = standard_basis(3)
    n = 0
    for c in enumerate_codes(3, L):
        inv = invert_codes(c)
        require(multiply_codes(c, ()) == c and multiply_codes((), c) == c, f"identity fails for {c}")
        require(not multiply_codes(c, inv) and not multiply_codes(inv, c), f"inverse fails for {c}")
        n += 1
    for _ in range(1000):
        u, v, w = (random_word(rng, basis, L) for _ in range(3))
        require((u * v) * w == u * (v * w), f"associativity fails for ({u}, {v}, {w})")
    return Outcome(n + 1000)


@register("words.count", "ball sizes 1 + sum 2N(2N-1)^(l-1)")
def _words_count(rng, ctx):
    L = ctx.get("L", 4)
    n = 0
    for rank in (1, 2, 3, 4):
        basis = standard_basis(rank)
        for length in range(L + 1):
            listed = sum(1 for _ in enumerate_ball(basis, length))
            want = ball_size(rank, length)
            require(listed == want, f"rank {rank}, L {length}: {listed} != {want}")
            if (2 * rank) ** length <= 6 ** 4:
                require(count_reduced_by_brute_force(rank, length) == want,
                        f"rank {rank}, L {length}: brute force disagrees")
            n += 1
    return Outcome(n)


# -- automorphisms ------------------------------------------------------------------

@register("automorphisms.compose", "composition, inverses and substitution")
def _aut_compose(rng, ctx):
    N = ctx.get("n", 3)
    s = sp.RoseSplitting.standard(N, N - 2)
    basis = s.basis
    for _ in range(200):
        f, g, h = (random_stab(rng, s) for _ in range(3))
        f = compose(f, inner(random_word(rng, basis, 2)))
        w = random_word(rng, basis, 6)
        require(compose(compose(f, g), h) == compose(f, compose(g, h)),
                f"associativity: {_fmt(f)} / {_fmt(g)} / {_fmt(h)}")
        require(compose(f, inverse(f)).is_identity(), f"inverse: {_fmt(f)}")
        require(f(w) == substitute_naive(basis, f.images, w), f"substitution: {_fmt(f)} on {w}")
        require(compose(f, g)(w) == f(g(w)), f"action: {_fmt(f)} after {_fmt(g)} on {w}")
    return Outcome(200)


# -- nielsen ---------------------------------------------------------------------------

@register("nielsen.trace", "trace-2 subgroups: M E_n of trace 2 forces a zero lower-left entry")
def _nielsen_trace(rng, ctx):
    r = range(-3, 4)
    n_checked = 0
    for a, b, c, d in itertools.product(r, repeat=4):
        M = IntMatrix(((a, b), (c, d)))
        if M.trace() != 2 or M.det() != 1:
            continue
        for n in r:
            if n == 0:
                continue
            E = IntMatrix(((1, n), (0, 1)))
            if (M @ E).trace() == 2:
                require(c == 0, f"M = {M.tolist()}, n = {n}")
            n_checked += 1
    return Outcome(n_checked)


def nielsen_family(basis: Basis, g_len: int = 2, y_len: int = 2, p_max: int = 3):
    tau = nielsen_tau(basis)
    for y in enumerate_ball(basis, y_len):
        conj = compose(compose(inner(y), tau), inner(~y))
        powers = {p: conj ** p for p in range(-p_max, p_max + 1)}
        for g in enumerate_ball(basis, g_len):
            ad = inner(g)
            for p, q in powers.items():
                yield g, y, p, compose(ad, q)


@register("nielsen.family", "trace 2 and determinant 1 on conjugates of Nielsen powers")
def _nielsen_family(rng, ctx):
    basis = standard_basis(2)
    n = 0
    for g, y, p, phi in nielsen_family(basis):
        require(ni.is_nielsen_power_outer(phi), f"g = {g}, y = {y}, p = {p}")
        n += 1
    for phi in (au.letter_swap(basis, 0, 1), au.letter_inversion(basis, 0), au.letter_inversion(basis, 1)):
        require(not ni.is_nielsen_power_outer(phi), f"{_fmt(phi)} accepted")
        n += 1
    return Outcome(n)


@register("nielsen.witness", "similarity witnesses w = y tau^p(y)^-1")
def _nielsen_witness(rng, ctx):
    basis = standard_basis(2)
    tau = nielsen_tau(basis)
    a1, a2 = basis.generator(0), basis.generator(1)
    res = ni.nielsen_power_witness(compose(inner(a2), tau), 2)
    require(res.outcome is ni.Outcome.FOUND and res.witness == ni.NielsenWitness(1, ~a1),
            f"ad_a2 o tau gave {res}")
    res = ni.nielsen_power_witness(compose(inner(a1), tau))
    require(res.outcome is ni.Outcome.NONE, f"ad_a1 o tau gave {res}")
    n = 2
    L = ctx.get("L", 2)
    for _ in range(100):
        y = random_word(rng, basis, L)
        p = rng.choice((-2, -1, 1, 2))
        phi = ni.NielsenWitness(p, y).automorphism()
        res = ni.nielsen_power_witness(phi, L, max_power=2)
        require(res.outcome is ni.Outcome.FOUND and res.witness.reproduces(phi),
                f"p = {p}, y = {y}: {res.outcome.value}")
        n += 1
    return Outcome(n)


def tau_fix_listing(basis: Basis, L: int) -> set[Word]:
    a1, a2 = basis.generator(0), basis.generator(1)
    return subgroup_ball([a1 * a2 * ~a1, a2], 2 * L, L)


@register("nielsen.fix", "nontrivial powers of tau share the fixed subgroup <a1 a2 a1^-1, a2>")
def _nielsen_fix(rng, ctx):
    L = ctx.get("L", 5)
    basis = standard_basis(2)
    tau = nielsen_tau(basis)
    oracle = tau_fix_listing(basis, L)
    for p in (1, 2, 3):
        got = au.fixed_words(tau ** p, L)
        require(got == oracle, f"tau^{p}: symmetric difference "
                f"{sorted(map(str, got ^ oracle))[:5]}")
    return Outcome(3)


# -- M_k ----------------------------------------------------------------------------------

@register("mk.assoc", "group law (g; phi)(h; psi) = (g phi(h); phi psi)")
def _mk_assoc(rng, ctx):
    basis = standard_basis(2)
    n = 1000
    for t in range(n):
        k = (1, 2, 3)[t % 3]
        x, y, z = (random_mk(rng, k, basis) for _ in range(3))
        e = mk.mk_identity(k, basis)
        require((x * y) * z == x * (y * z), f"associativity: {x}, {y}, {z}")
        require(x * e == x and e * x == x, f"identity: {x}")
        require(x * ~x == e and ~x * x == e, f"inverse: {x}")
    return Outcome(n)


@register("mk.embed", "A^(k+1) embedding, the involutions alpha_i and Sym(k+1) symmetry")
def _mk_embed(rng, ctx):
    basis = standard_basis(2)
    k = 3
    n = 0
    for _ in range(200):
        t = tuple(random_word(rng, basis, 3) for _ in range(k + 1))
        m = mk.embed_tuple(t)
        require(mk.extract_tuple(m) == t, f"round trip of {[str(g) for g in t]}")
        n += 1
    for _ in range(200):
        x = random_mk(rng, k, basis)
        i, j = rng.sample(range(1, k + 1), 2)
        require(mk.alpha(i, mk.alpha(i, x)) == x, f"alpha_{i}^2 on {x}")
        y = x
        for _ in range(3):
            y = mk.alpha(i, mk.alpha(j, y))
        require(y == x, f"(alpha_{i} alpha_{j})^3 on {x}")
        n += 1
    for _ in range(200):
        t = tuple(random_word(rng, basis, 3) for _ in range(k + 1))
        i = rng.randint(1, k)
        require(mk.alpha(i, mk.embed_tuple(t)) == mk.embed_tuple(mk.swap_tuple(t, i)),
                f"alpha_{i} vs transposition on {[str(g) for g in t]}")
        n += 1
    return Outcome(n)


# -- splittings --------------------------------------------------------------------------

@register("splittings.stab", "rose stabilizer decomposition x_i -> u_i w(x_i) v_i")
def _split_stab(rng, ctx):
    N = ctx.get("n", 4)
    s = sp.RoseSplitting.standard(N, N - 2)
    fb = s.factor_basis
    n = 0
    for _ in range(200):
        m = random_mk(rng, 2 * s.k, fb, 3)
        phi = sp.mk_to_rose(m, s)
        d = sp.rose_stab_membership(phi, s)
        require(d is not None and sp.rose_to_mk(d) == m, f"round trip of {m}")
        w = random_signed_permutation(rng, s.k)
        signed = compose(phi, w.automorphism(s))
        d2 = sp.rose_stab_membership(signed, s)
        require(d2 is not None and d2.reassemble(s) == signed, f"reassembly of {_fmt(signed)}")
        n += 1
    for _ in range(200):
        m1, m2 = (random_mk(rng, 2 * s.k, fb, 3) for _ in range(2))
        prod = compose(sp.mk_to_rose(m1, s), sp.mk_to_rose(m2, s))
        d = sp.rose_stab_membership(prod, s)
        require(d is not None and sp.rose_to_mk(d) == m1 * m2, f"homomorphism on {m1}, {m2}")
        n += 1
    b = s.basis
    for j in range(1, s.k + 1):
        for a in enumerate_ball(fb, 2):
            if not a:
                continue
            aw = sp._from_factor(a, b)
            left = au.left_transvection(b, j, aw)
            right = au.right_transvection(b, j, aw)
            require(not sp.edge_stab_membership(left, s, j), f"L_{j}({a}) fixes edge {j}")
            require(sp.edge_stab_membership(right, s, j), f"R_{j}({a}) misses edge {j}")
            n += 2
    return Outcome(n)


@register("splittings.tree", "tree balls, twisted equivariance, inner maps act by translation")
def _split_tree(rng, ctx):
    L = ctx.get("L", 3)
    ns = (ctx.n,) if ctx.n is not None else (3, 4, 5)
    n = 0
    for N in ns:
        s = sp.RoseSplitting.standard(N, N - 2)
        for l in range(L + 1):
            ball = sp.build_ball(s, l)
            require(ball.is_connected() and ball.is_acyclic(), f"{s.spec()} L={l}")
            n += 1
        ball = sp.build_ball(s, min(L, 2))
        for _ in range(100 // len(ns) + 1):
            phi = compose(inner(random_word(rng, s.basis, 2)), random_stab(rng, s))
            f = sp.TwistedMap(phi, s)
            g = random_word(rng, s.basis, 3)
            x = rng.choice(ball.vertices)
            lhs = f(sp.left_translate(g, x, s))
            rhs = sp.left_translate(phi(g), f(x), s)
            require(lhs == rhs, f"phi = {_fmt(phi)}, g = {g}, x = {x}")
            n += 1
        for g in enumerate_ball(s.basis, 2):
            f = sp.TwistedMap(inner(g), s)
            for v in ball.vertices:
                require(f(v) == sp.left_translate(g, v, s), f"inner({g}) on {v}")
                n += 1
    return Outcome(n)


def stab0_generators(s: sp.RoseSplitting) -> list[Automorphism]:
    """Transvections, inner automorphisms and Aut(A) moves, with inverses."""
    b = s.basis
    fb = s.factor_basis
    gens = []
    for a in (fb.generator(0), fb.generator(1)):
        aw = sp._from_factor(a, b)
        for j in range(1, s.k + 1):
            gens.append(au.left_transvection(b, j, aw))
            gens.append(au.right_transvection(b, j, aw))
    gens += [inner(g) for g in b.generators()]
    gens += [au.extend(phi, b, s.vertex_factor) for phi in aut_f2_generators(fb)]
    with_inv = []
    for g in gens:
        for h in (g, inverse(g)):
            if h not in with_inv:
                with_inv.append(h)
    return with_inv


@register("splittings.lift", "inner correction ad_g^-1 phi fixes the base edge")
def _split_lift(rng, ctx):
    N = ctx.get("n", 3)
    s = sp.RoseSplitting.standard(N, N - 2)
    gens = stab0_generators(s)
    products = [au.identity(s.basis)] + gens + [compose(g, h) for g in gens for h in gens]
    for phi in products:
        try:
            g, corrected = sp.lift_correction(phi, s, 1)
        except ValueError as exc:
            raise Counterexample(f"{_fmt(phi)}: {exc}")
        require(sp.edge_stab_membership(corrected, s, 1), f"{_fmt(phi)} corrected by {g}")
        require(compose(inner(g), corrected) == phi, f"{_fmt(phi)}: correction is not inner")
    return Outcome(len(products))


# -- families ---------------------------------------------------------------------------

def _family_suite(kind: fam.FamilyKind):
    def run(rng, ctx):
        ns = (ctx.n,) if ctx.n is not None else (3, 4, 5)
        depth = ctx.get("depth", 3)
        n = 0
        for N in ns:
            factors = fam.family_generators(kind, N)
            want = kind.expected_factor_count(N)
            require(fam.nonabelian_count(factors) == want, f"{kind.value}@N={N}: factor count")
            outer = kind in fam.OUT_KINDS
            report = fam.check_direct_product(factors, outer=outer)
            bad = report.failures[:1]
            require(not bad, f"{kind.value}@N={N}: {bad[0] if bad else ''}")
            require(report.nonabelian_ok, f"{kind.value}@N={N}: abelian factor {report.witnesses}")
            for f1, f2 in itertools.combinations(factors, 2):
                require(fam.intersection_is_trivial(f1, f2, depth, outer),
                        f"{kind.value}@N={N}: {f1.label} meets {f2.label}")
            ev = fam.centralizer_evidence(kind, N)
            require(ev.tau_centralizes_others == kind.lists_tau,
                    f"{kind.value}@N={N}: tau centralizing {ev.tau_centralizes_others}, {ev.failing_pair}")
            require(fam.fixed_parameters_ok(kind, N), f"{kind.value}@N={N}: parameter outside Fix(tau)")
            require(not fam.inner_generators(factors) or kind in (fam.FamilyKind.AutPlain,
                                                                  fam.FamilyKind.AutTauCentral,
                                                                  fam.FamilyKind.AutTauFirst,
                                                                  fam.FamilyKind.AutTauInner),
                    f"{kind.value}@N={N}: inner generator")
            for f in factors:
                if not f.cyclic:
                    require(fam.ia3_noncommuting_pair(f, 3) is not None,
                            f"{kind.value}@N={N}: {f.label} abelian inside IA_3")
            conj = random_stab(rng, sp.RoseSplitting.standard(N, N - 2))
            creport = fam.check_direct_product(fam.family_generators(kind, N, conj), outer=outer)
            require(creport.ok, f"{kind.value}@N={N} conjugated by {_fmt(conj)}")
            if kind is fam.FamilyKind.OutPlain:
                require(fam.out_l1_lands_in_j(N), f"OutPlain@N={N}: Theta(L_1) not in J")
            n += len(report.pairs)
        return Outcome(n)
    return run


for _kind in fam.FamilyKind:
    register(f"families.{_kind.value}", f"direct product family {_kind.value}")(_family_suite(_kind))
