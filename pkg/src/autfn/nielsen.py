"""Powers of Nielsen transformations in Aut(F_2)."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .automorphisms import (Automorphism, abelianization_matrix, commutes, compose,
                            conjugator_of, exponent_sums, inner, inverse, nielsen_tau)
from .words import Word, enumerate_ball


class RankError(ValueError):
    pass


class NotNielsen(ValueError):
    pass


def _require_rank2(phi: Automorphism):
    if phi.basis.rank != 2:
        raise RankError(f"expected an automorphism of F_2, got rank {phi.basis.rank}")


def is_nielsen_power_outer(phi: Automorphism) -> bool:
    """Trace 2 and determinant 1 on the abelianization.

    Includes the zeroth power, so every inner automorphism qualifies.
    """
    _require_rank2(phi)
    m = abelianization_matrix(phi)
    return m.trace() == 2 and m.det() == 1


@dataclass(frozen=True)
class NielsenWitness:
    """phi = (ad_y o tau o ad_y^-1)^p."""

    p: int
    y: Word

    def automorphism(self) -> Automorphism:
        tau = nielsen_tau(self.y.basis)
        ad = inner(self.y)
        return compose(compose(ad, tau), inverse(ad)) ** self.p

    def reproduces(self, phi: Automorphism) -> bool:
        return self.automorphism() == phi


class Outcome(enum.Enum):
    FOUND = "found"
    NONE = "none"                  # definitive: no witness exists at all
    INCONCLUSIVE = "inconclusive"  # search bounds exhausted


@dataclass(frozen=True)
class WitnessSearch:
    outcome: Outcome
    witness: NielsenWitness | None = None
    reason: str = ""

    def __bool__(self):
        return self.outcome is Outcome.FOUND


def tau_power_of_matrix(phi: Automorphism) -> int | None:
    """p with abelianization(phi) = [[1,0],[p,1]], or None."""
    m = abelianization_matrix(phi)
    if m[0, 0] == 1 and m[1, 1] == 1 and m[0, 1] == 0:
        return m[1, 0]
    return None


def split_tau_power(phi: Automorphism) -> tuple[Word, int] | None:
    """Write phi = ad_w o tau^p, or return None when phi has no such form."""
    _require_rank2(phi)
    p = tau_power_of_matrix(phi)
    if p is None:
        return None
    tau = nielsen_tau(phi.basis)
    w = conjugator_of(compose(phi, tau ** -p))
    # Nielsen: IA(F_2) = Inn(F_2), so a matching matrix forces an inner quotient
    assert w is not None, "matrix matched tau^p but quotient is not inner"
    return w, p


def nielsen_power_witness(phi: Automorphism, length: int = 4, max_power: int = 4) -> WitnessSearch:
    """Search y with |y| <= length and phi = ad_w o tau^p, w = y tau^p(y)^-1.

    Definitive negatives come from the abelianized equation
    (I - M^p) y_ab = w_ab, which here reads w_ab = (0, -p * y_ab[0]).
    """
    _require_rank2(phi)
    split = split_tau_power(phi)
    if split is None:
        return WitnessSearch(Outcome.NONE, reason="abelianization is not a power of tau's")
    w, p = split
    if abs(p) > max_power:
        return WitnessSearch(Outcome.INCONCLUSIVE, reason=f"|p| = {abs(p)} exceeds {max_power}")
    if p == 0:
        if not w:
            return WitnessSearch(Outcome.FOUND, NielsenWitness(0, w))
        return WitnessSearch(Outcome.NONE, reason="p = 0 needs w = 1")
    wa = exponent_sums(w)
    if wa[0] != 0 or wa[1] % p != 0:
        return WitnessSearch(Outcome.NONE, reason=f"abelianized obstruction: w_ab = {wa}, p = {p}")
    taup = nielsen_tau(phi.basis) ** p
    for y in enumerate_ball(phi.basis, length):
        if y * ~taup(y) == w:
            return WitnessSearch(Outcome.FOUND, NielsenWitness(p, y))
    return WitnessSearch(Outcome.INCONCLUSIVE, reason=f"no y of length <= {length}")


@dataclass
class CommutingReport:
    powers_commute: bool
    commute: bool
    fix_element: Word | None = None
    sign: int | None = None
    nielsen_inputs: bool = True
    notes: list[str] = field(default_factory=list)


def _fix_conjugator(tau0: Automorphism, tau1: Automorphism) -> tuple[Word, int] | None:
    for sign in (1, -1):
        w = conjugator_of(compose(tau1, tau0 ** -sign))
        if w is not None and tau0(w) == w:
            return w, sign
    return None


def commuting_nielsen_check(tau0: Automorphism, tau1: Automorphism, p: int, q: int,
                            strict: bool = False, length: int = 4) -> CommutingReport:
    """Compare [tau0^p, tau1^q] = 1 with [tau0, tau1] = 1 and look for
    w in Fix(tau0) with tau1 = ad_w o tau0^{+-1}.

    Inputs are validated as p = +-1 Nielsen witnesses; with ``strict`` a
    failed validation raises, otherwise it is recorded in the report.
    """
    _require_rank2(tau0)
    _require_rank2(tau1)
    if p == 0 or q == 0:
        raise ValueError("powers must be non-zero")
    ok = True
    notes = []
    for name, t in (("tau0", tau0), ("tau1", tau1)):
        res = nielsen_power_witness(t, length=length, max_power=1)
        if not res or abs(res.witness.p) != 1:
            ok = False
            notes.append(f"{name}: not validated as a Nielsen transformation ({res.outcome.value})")
    if strict and not ok:
        raise NotNielsen("; ".join(notes))
    report = CommutingReport(
        powers_commute=commutes(tau0 ** p, tau1 ** q),
        commute=commutes(tau0, tau1),
        nielsen_inputs=ok,
        notes=notes,
    )
    if report.powers_commute and report.commute:
        found = _fix_conjugator(tau0, tau1)
        if found is not None:
            report.fix_element, report.sign = found
    return report
