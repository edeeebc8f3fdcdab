"""Explicit direct products of free groups in Aut(F_N) and their checks.

Notation, over the basis a1, a2, x1, ..., x_{N-2} with A = <a1, a2>:

* ``L_i`` / ``R_i``: left / right transvections of x_i by elements of A,
  generated by the parameters a1 and a2.
* ``I(A)``: inner automorphisms by elements of A.
* ``tau``: a1 -> a1 a2, fixing every other letter.
* a ``^tau`` superscript restricts parameters to the tau-fixed subgroup
  <a1 a2 a1^-1, a2>.

Out kinds are represented by their canonical lifts to Aut(F_N); equality in
Out is equality up to an inner automorphism.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Sequence

from .automorphisms import (Automorphism, compose, conjugator_of, format_automorphism,
                            identity, inner, inverse, is_in_ia3, is_inner, left_transvection,
                            letter_inversion, letter_swap, nielsen_tau, parse_automorphism,
                            right_transvection)
from .mk import MkElement, is_j_element
from .splittings import (RoseSplitting, lift_correction, mk_to_rose, theta)
from .words import Basis, Word, enumerate_ball, standard_basis


class FamilyKind(enum.Enum):
    DB = "DB"
    AutPlain = "AutPlain"
    AutTauCentral = "AutTauCentral"
    AutTauFirst = "AutTauFirst"
    AutTauInner = "AutTauInner"
    OutPlain = "OutPlain"
    OutTauCentral = "OutTauCentral"
    OutTauFirst = "OutTauFirst"

    @property
    def is_out(self) -> bool:
        return self.value.startswith("Out") or self is FamilyKind.DB

    @property
    def lists_tau(self) -> bool:
        return "Tau" in self.value

    @property
    def expected_factor_count(self):
        """Number of nonabelian factors as a function of N."""
        return (lambda n: 2 * n - 4) if self.is_out else (lambda n: 2 * n - 3)


AUT_KINDS = (FamilyKind.AutPlain, FamilyKind.AutTauCentral, FamilyKind.AutTauFirst,
             FamilyKind.AutTauInner)
OUT_KINDS = (FamilyKind.OutPlain, FamilyKind.OutTauCentral, FamilyKind.OutTauFirst)


@dataclass(frozen=True)
class GeneratedFactor:
    label: str
    generators: tuple[Automorphism, ...]
    cyclic: bool = False
    note: str = ""

    def __post_init__(self):
        if not self.generators:
            raise ValueError(f"factor {self.label} has no generators")


def _params(basis: Basis, fixed: bool) -> list[Word]:
    a1, a2 = basis.generator(0), basis.generator(1)
    return [a1 * a2 * ~a1, a2] if fixed else [a1, a2]


def _transvections(kind: str, basis: Basis, i: int, fixed: bool) -> GeneratedFactor:
    make = left_transvection if kind == "L" else right_transvection
    label = f"{kind}_{i}" + ("^tau" if fixed else "")
    return GeneratedFactor(label, tuple(make(basis, i, w) for w in _params(basis, fixed)))


def _inner_factor(basis: Basis, fixed: bool) -> GeneratedFactor:
    label = "I(A)^tau" if fixed else "I(A)"
    return GeneratedFactor(label, tuple(inner(w) for w in _params(basis, fixed)))


def family_generators(kind: FamilyKind | str, N: int,
                      conj: Automorphism | None = None) -> list[GeneratedFactor]:
    """Factor-wise generator sets; ``conj`` conjugates the whole family."""
    kind = FamilyKind(kind) if isinstance(kind, str) else kind
    if N < 3:
        raise ValueError(f"families need N >= 3, got {N}")
    basis = standard_basis(N)
    petals = range(1, N - 1)
    tau = nielsen_tau(basis)
    tau_factor = GeneratedFactor("<tau>", (tau,), cyclic=True)
    mixed_note = "semidirect product F_2 x| Z"

    def Ls(fixed, start=1):
        return [_transvections("L", basis, i, fixed) for i in petals if i >= start]

    def Rs(fixed):
        return [_transvections("R", basis, i, fixed) for i in petals]

    if kind is FamilyKind.DB:
        factors = [f for i in petals for f in (_transvections("L", basis, i, False),
                                                _transvections("R", basis, i, False))]
    elif kind is FamilyKind.AutPlain:
        factors = Ls(False) + Rs(False) + [_inner_factor(basis, False)]
    elif kind is FamilyKind.AutTauCentral:
        factors = Ls(True) + Rs(True) + [_inner_factor(basis, True), tau_factor]
    elif kind is FamilyKind.AutTauFirst:
        first = _transvections("L", basis, 1, False)
        factors = ([GeneratedFactor("<tau, L_1>", (tau,) + first.generators, note=mixed_note)]
                   + Ls(True, start=2) + Rs(True) + [_inner_factor(basis, True)])
    elif kind is FamilyKind.AutTauInner:
        ia = _inner_factor(basis, False)
        factors = Ls(True) + Rs(True) + [GeneratedFactor("<I(A), tau>", ia.generators + (tau,),
                                                         note=mixed_note)]
    elif kind is FamilyKind.OutPlain:
        factors = Ls(False) + Rs(False)
    elif kind is FamilyKind.OutTauCentral:
        factors = Ls(True) + Rs(True) + [tau_factor]
    elif kind is FamilyKind.OutTauFirst:
        first = _transvections("L", basis, 1, False)
        factors = ([GeneratedFactor("<tau, L_1>", (tau,) + first.generators, note=mixed_note)]
                   + Ls(True, start=2) + Rs(True))
    else:  # pragma: no cover
        raise ValueError(kind)
    if conj is not None:
        if conj.basis != basis:
            raise ValueError("conjugating automorphism must act on the family's basis")
        ci = inverse(conj)
        factors = [GeneratedFactor(f.label, tuple(compose(compose(conj, g), ci) for g in f.generators),
                                   f.cyclic, f.note) for f in factors]
    return factors


def nonabelian_count(factors: Sequence[GeneratedFactor]) -> int:
    return sum(not f.cyclic for f in factors)


# -- direct product checks -------------------------------------------------------

@dataclass(frozen=True)
class PairCheck:
    left: str
    left_index: int
    right: str
    right_index: int
    commutes: bool


@dataclass
class DirectProductReport:
    pairs: list[PairCheck]
    witnesses: dict[str, tuple[int, int] | None]
    cyclic: list[str]

    @property
    def failures(self) -> list[PairCheck]:
        return [p for p in self.pairs if not p.commutes]

    @property
    def all_commute(self) -> bool:
        return not self.failures

    @property
    def nonabelian_ok(self) -> bool:
        return all(w is not None for label, w in self.witnesses.items() if label not in self.cyclic)

    @property
    def ok(self) -> bool:
        return self.all_commute and self.nonabelian_ok


def _equal(phi: Automorphism, psi: Automorphism, outer: bool) -> bool:
    if not outer:
        return phi == psi
    return is_inner(compose(phi, inverse(psi)))


def _commute(phi: Automorphism, psi: Automorphism, outer: bool = False) -> bool:
    return _equal(compose(phi, psi), compose(psi, phi), outer)


def check_direct_product(factors: Sequence[GeneratedFactor], outer: bool = False) -> DirectProductReport:
    """Exact commutator checks between factors plus non-commuting witnesses within.

    With ``outer`` the commutators are only required to be inner.
    """
    pairs = []
    for (i, f), (j, g) in itertools.combinations(enumerate(factors), 2):
        for a, phi in enumerate(f.generators):
            for b, psi in enumerate(g.generators):
                pairs.append(PairCheck(f.label, a, g.label, b, _commute(phi, psi, outer)))
    witnesses = {}
    for f in factors:
        witnesses[f.label] = next(((a, b) for a, b in itertools.combinations(range(len(f.generators)), 2)
                                   if not _commute(f.generators[a], f.generators[b], outer)), None)
    return DirectProductReport(pairs, witnesses, [f.label for f in factors if f.cyclic])


# -- bounded tables ------------------------------------------------------------------

def depth_table(f: GeneratedFactor, d: int) -> list[Automorphism]:
    """Products of at most d generators and inverses, deduplicated, in discovery order."""
    if d < 0:
        raise ValueError("depth must be non-negative")
    symbols = []
    for g in f.generators:
        symbols.append(g)
        symbols.append(inverse(g))
    seen = {identity(f.generators[0].basis)}
    order = list(seen)
    layer = list(seen)
    for _ in range(d):
        nxt = []
        for phi in layer:
            for s in symbols:
                psi = compose(phi, s)
                if psi not in seen:
                    seen.add(psi)
                    order.append(psi)
                    nxt.append(psi)
        layer = nxt
    return order


def bounded_intersection_oracle(f1: GeneratedFactor, f2: GeneratedFactor, d: int,
                                outer: bool = False) -> list[Automorphism]:
    """Automorphisms in both depth-d tables (identity included).

    With ``outer`` an element of the first table counts when it agrees with
    some element of the second up to an inner automorphism.
    """
    if d < 1:
        raise ValueError("depth must be at least 1")
    t1, t2 = depth_table(f1, d), depth_table(f2, d)
    if not outer:
        s2 = set(t2)
        return [phi for phi in t1 if phi in s2]
    return [phi for phi in t1 if any(_equal(phi, psi, True) for psi in t2)]


def intersection_is_trivial(f1: GeneratedFactor, f2: GeneratedFactor, d: int, outer: bool = False) -> bool:
    common = bounded_intersection_oracle(f1, f2, d, outer)
    return all(_equal(phi, identity(phi.basis), outer) for phi in common)


def ia3_noncommuting_pair(f: GeneratedFactor, d: int = 3) -> tuple[Automorphism, Automorphism] | None:
    """A non-commuting pair inside the IA_3 part of the depth-d table."""
    table = [phi for phi in depth_table(f, d) if is_in_ia3(phi)]
    for phi, psi in itertools.combinations(table, 2):
        if not commutes_aut(phi, psi):
            return phi, psi
    return None


def commutes_aut(phi: Automorphism, psi: Automorphism) -> bool:
    return _commute(phi, psi)


def inner_generators(factors: Sequence[GeneratedFactor], length: int = 4) -> list[Automorphism]:
    """Generators equal to inner(g) for some |g| <= length."""
    out = []
    for f in factors:
        for g in f.generators:
            c = conjugator_of(g)
            if c is not None and len(c) <= length:
                out.append(g)
    return out


def fixed_parameters_ok(kind: FamilyKind, N: int) -> bool:
    """Every parameter of a ^tau factor lies in Fix(tau)."""
    basis = standard_basis(N)
    tau = nielsen_tau(basis)
    for f in family_generators(kind, N):
        if "^tau" not in f.label:
            continue
        for g in f.generators:
            c = conjugator_of(g)
            params = [c] if c is not None else [_transvection_parameter(g, basis)]
            if any(p is None or tau(p) != p for p in params):
                return False
    return True


def _transvection_parameter(g: Automorphism, basis: Basis) -> Word | None:
    """w for x_i -> w x_i or x_i -> x_i w, the only letter g moves."""
    moved = [i for i in range(basis.rank) if g.image(i) != basis.generator(i)]
    if len(moved) != 1:
        return None
    x = basis.generator(moved[0])
    img = g.image(moved[0])
    left, right = img * ~x, ~x * img
    return left if len(left) < len(img) else right


def out_l1_lands_in_j(N: int) -> bool:
    """L_1 of OutPlain maps into J under Theta after the inner correction."""
    s = RoseSplitting.standard(N, N - 2)
    for g in family_generators(FamilyKind.OutPlain, N)[0].generators:
        _, corrected = lift_correction(g, s, 1)
        if not is_j_element(theta(corrected, s, 1)):
            return False
    return True


# -- centralizers -----------------------------------------------------------------

@dataclass
class CentralizerReport:
    kind: FamilyKind
    N: int
    tau_centralizes_others: bool
    tau_central: bool
    failing_pair: tuple[str, str] | None = None
    probe: list[Automorphism] = field(default_factory=list)
    probe_size: int = 0
    probe_all_nielsen: bool = True


def _tau_check(factors: Sequence[GeneratedFactor], tau: Automorphism):
    """(tau commutes with every factor not containing it, with everything, first failure)."""
    others_ok, all_ok, failing = True, True, None
    for f in factors:
        holds_tau = tau in f.generators
        for g in f.generators:
            if commutes_aut(tau, g):
                continue
            all_ok = False
            if not holds_tau:
                others_ok = False
                if failing is None:
                    failing = (f.label, format_automorphism(g))
    return others_ok, all_ok, failing


def stab_probe(N: int, depth: int) -> list[Automorphism]:
    """Elements of the rose stabilizer obtained from M_{2k}(A) elements with
    coordinates of length <= depth and automorphism part a product of at most
    ``depth`` standard generators of Aut(A), through mk_to_rose."""
    s = RoseSplitting.standard(N, N - 2)
    fb = s.factor_basis
    gens = [nielsen_tau(fb), letter_swap(fb, 0, 1), letter_inversion(fb, 0)]
    phis = depth_table(GeneratedFactor("Aut(A)", tuple(gens)), depth)
    ball = list(enumerate_ball(fb, depth))
    out = []
    for phi in phis:
        for coords in itertools.product(ball, repeat=2 * s.k):
            out.append(mk_to_rose(MkElement(coords, phi), s))
    return out


def centralizer_evidence(kind: FamilyKind | str, N: int = 3, depth: int = 0) -> CentralizerReport:
    """tau versus the family's generators, plus an optional bounded probe.

    With depth > 0 the probe lists every enumerated stabilizer element that
    commutes with all family generators and checks each is a power of tau
    times the identity on the stable letters.
    """
    kind = FamilyKind(kind) if isinstance(kind, str) else kind
    factors = family_generators(kind, N)
    tau = nielsen_tau(standard_basis(N))
    others, central, failing = _tau_check(factors, tau)
    report = CentralizerReport(kind, N, others, central, failing)
    if depth > 0:
        gens = [g for f in factors for g in f.generators]
        cands = stab_probe(N, depth)
        report.probe_size = len(cands)
        found = {phi for phi in cands if all(commutes_aut(phi, g) for g in gens)}
        report.probe = sorted(found, key=lambda p: tuple(w.sort_key() for w in p.images))
        report.probe_all_nielsen = all(_is_tau_power(phi, tau) for phi in report.probe)
    return report


def _is_tau_power(phi: Automorphism, tau: Automorphism, bound: int = 8) -> bool:
    return any(phi == tau ** n for n in range(-bound, bound + 1))


# -- spec strings ---------------------------------------------------------------------

_SPEC = re.compile(r"^\s*(?P<kind>\w+)(?:@(?P<params>[^~]*))?(?:~conj=(?P<conj>.*))?\s*$", re.S)


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    N: int
    conj: Automorphism | None = None

    def factors(self) -> list[GeneratedFactor]:
        return family_generators(self.kind, self.N, self.conj)


def parse_family_spec(text: str, default_n: int = 3, inverse_bound: int | None = 4) -> FamilySpec:
    """``DB@N=4`` or ``AutTauCentral@N=3~conj=<automorphism>``."""
    m = _SPEC.match(text)
    if not m:
        raise ValueError(f"bad family spec {text!r}")
    try:
        kind = FamilyKind(m.group("kind"))
    except ValueError:
        raise ValueError(f"unknown family kind {m.group('kind')!r}; "
                         f"expected one of {', '.join(k.value for k in FamilyKind)}") from None
    n = default_n
    for part in filter(None, (m.group("params") or "").split(",")):
        key, _, val = part.partition("=")
        if key.strip() != "N" or not val.strip().isdigit():
            raise ValueError(f"bad family parameter {part!r}")
        n = int(val)
    conj = None
    if m.group("conj") is not None:
        conj = parse_automorphism(m.group("conj"), standard_basis(n), inverse_bound=inverse_bound,
                                  offset=m.start("conj"))
    return FamilySpec(kind, n, conj)
