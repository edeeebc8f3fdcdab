"""The semidirect products M_k(A) = A^k x| Aut(A) with diagonal action.

Elements are written (g_1, ..., g_k ; phi) and multiply as

    (g ; phi) . (h ; psi) = (g_1 phi(h_1), ..., g_k phi(h_k) ; phi o psi).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .automorphisms import (Automorphism, IntMatrix, abelianization_matrix, compose,
                            conjugator_of, format_automorphism, identity, inner, inverse,
                            nielsen_tau, parse_automorphism)
from .words import Basis, Word, WordParseError, enumerate_ball, parse_word


class ArityMismatch(ValueError):
    pass


class NotInner(ValueError):
    pass


@dataclass(frozen=True)
class MkElement:
    coords: tuple[Word, ...]
    phi: Automorphism

    def __post_init__(self):
        for g in self.coords:
            if g.basis != self.phi.basis:
                raise ValueError("coordinates and automorphism must share A's basis")

    @property
    def k(self) -> int:
        return len(self.coords)

    @property
    def basis(self) -> Basis:
        return self.phi.basis

    def __mul__(self, other: "MkElement") -> "MkElement":
        return mk_mul(self, other)

    def __invert__(self) -> "MkElement":
        return mk_inv(self)

    def __pow__(self, n: int) -> "MkElement":
        base = self if n >= 0 else mk_inv(self)
        out = mk_identity(self.k, self.basis)
        for _ in range(abs(n)):
            out = mk_mul(out, base)
        return out

    def __str__(self):
        return format_mk(self)

    def sort_key(self):
        return (tuple(g.sort_key() for g in self.coords),
                tuple(w.sort_key() for w in self.phi.images))


def mk_identity(k: int, basis: Basis) -> MkElement:
    return MkElement((basis.identity,) * k, identity(basis))


def mk_mul(x: MkElement, y: MkElement) -> MkElement:
    if x.k != y.k:
        raise ArityMismatch(f"arity {x.k} vs {y.k}")
    phi = x.phi
    coords = tuple(g * phi(h) for g, h in zip(x.coords, y.coords))
    return MkElement(coords, compose(phi, y.phi))


def mk_inv(x: MkElement) -> MkElement:
    phi_inv = inverse(x.phi)
    return MkElement(tuple(phi_inv(~g) for g in x.coords), phi_inv)


def commute(x: MkElement, y: MkElement) -> bool:
    return mk_mul(x, y) == mk_mul(y, x)


def coordinate(i: int, g: Word, k: int) -> MkElement:
    """The element of the i-th visible copy A_i (1-based)."""
    if not 1 <= i <= k:
        raise IndexError(f"index {i} out of range for arity {k}")
    coords = [g.basis.identity] * k
    coords[i - 1] = g
    return MkElement(tuple(coords), identity(g.basis))


def j_element(g: Word, k: int) -> MkElement:
    """(g^-1, ..., g^-1 ; ad_g)."""
    return MkElement((~g,) * k, inner(g))


def is_j_element(m: MkElement) -> bool:
    g = conjugator_of(m.phi)
    return g is not None and all(c == ~g for c in m.coords)


def tau_bar(k: int, basis: Basis) -> MkElement:
    """(1, ..., 1 ; tau)."""
    return MkElement((basis.identity,) * k, nielsen_tau(basis))


# -- A^{k+1} <-> M^0_k --------------------------------------------------------

def embed_tuple(t: Sequence[Word]) -> MkElement:
    """(g_1, ..., g_k, x) -> (g_1 x^-1, ..., g_k x^-1 ; ad_x)."""
    if len(t) < 2:
        raise ValueError("need at least one visible coordinate plus x")
    *gs, x = t
    xi = ~x
    return MkElement(tuple(g * xi for g in gs), inner(x))


def extract_tuple(m: MkElement) -> tuple[Word, ...]:
    """(g_1, ..., g_k ; ad_x) -> (g_1 x, ..., g_k x, x)."""
    x = conjugator_of(m.phi)
    if x is None:
        raise NotInner(f"{format_automorphism(m.phi)} is not inner")
    return tuple(g * x for g in m.coords) + (x,)


def alpha(i: int, x: MkElement) -> MkElement:
    """The involution exchanging A_i and J."""
    if not 1 <= i <= x.k:
        raise IndexError(f"alpha index {i} out of range for arity {x.k}")
    gi = x.coords[i - 1]
    gi_inv = ~gi
    coords = tuple(gi_inv if j == i - 1 else g * gi_inv for j, g in enumerate(x.coords))
    return MkElement(coords, compose(inner(gi), x.phi))


def swap_tuple(t: Sequence[Word], i: int) -> tuple[Word, ...]:
    """Apply the transposition (i, k+1) to a (k+1)-tuple; i is 1-based."""
    t = list(t)
    t[i - 1], t[-1] = t[-1], t[i - 1]
    return tuple(t)


def pi(m: MkElement) -> Automorphism:
    return m.phi


def pi_bar_matrix(m: MkElement) -> IntMatrix:
    """Image in Out(F_2) = GL(2, Z) through the abelianization."""
    return abelianization_matrix(m.phi)


# -- probes and the group shapes of maximal products ---------------------------

def enumerate_mk(k: int, basis: Basis, coord_length: int,
                 phis: Sequence[Automorphism]) -> Iterator[MkElement]:
    """All elements whose coordinates have length <= coord_length and whose
    automorphism is drawn from ``phis``."""
    ball = list(enumerate_ball(basis, coord_length))
    for phi in phis:
        for coords in itertools.product(ball, repeat=k):
            yield MkElement(coords, phi)


def centralizer_probe(generators: Sequence[MkElement],
                      enumerator: Iterable[MkElement]) -> list[MkElement]:
    """Enumerated elements commuting with every generator, sorted."""
    ks = {g.k for g in generators}
    out = []
    for m in enumerator:
        ks.add(m.k)
        if len(ks) > 1:
            raise ArityMismatch(f"mixed arities {sorted(ks)}")
        if all(commute(m, g) for g in generators):
            out.append(m)
    return sorted(out, key=MkElement.sort_key)


def tau_fixed_parameters(basis: Basis) -> tuple[Word, Word]:
    """Free basis of Fix(tau): a1 a2 a1^-1 and a2."""
    a1, a2 = basis.generator(0), basis.generator(1)
    return a1 * a2 * ~a1, a2


def plain_parameters(basis: Basis) -> tuple[Word, Word]:
    return basis.generator(0), basis.generator(1)


def shape_generators(shape: str, k: int, basis: Basis, j: int = 1) -> list[tuple[str, list[MkElement]]]:
    """Generator sets for the four shapes of maximal products in M_k.

    shape is one of
      ``central``  A_1^t x ... x A_k^t x J^t x <tau_bar>
      ``plain``    A_1 x ... x A_k x J
      ``j_tau``    A_1^t x ... x A_k^t x <J, tau_bar>
      ``a_tau``    ... x <A_j, tau_bar> x ... x J^t  (A_j unrestricted)
    Each entry is (label, generators).
    """
    plain = plain_parameters(basis)
    fixed = tau_fixed_parameters(basis)
    tb = tau_bar(k, basis)
    factors: list[tuple[str, list[MkElement]]] = []
    if shape == "plain":
        for i in range(1, k + 1):
            factors.append((f"A_{i}", [coordinate(i, g, k) for g in plain]))
        factors.append(("J", [j_element(g, k) for g in plain]))
    elif shape == "central":
        for i in range(1, k + 1):
            factors.append((f"A_{i}^tau", [coordinate(i, g, k) for g in fixed]))
        factors.append(("J^tau", [j_element(g, k) for g in fixed]))
        factors.append(("<tau>", [tb]))
    elif shape == "j_tau":
        for i in range(1, k + 1):
            factors.append((f"A_{i}^tau", [coordinate(i, g, k) for g in fixed]))
        factors.append(("<J, tau>", [j_element(g, k) for g in plain] + [tb]))
    elif shape == "a_tau":
        for i in range(1, k + 1):
            if i == j:
                factors.append((f"<A_{i}, tau>", [coordinate(i, g, k) for g in plain] + [tb]))
            else:
                factors.append((f"A_{i}^tau", [coordinate(i, g, k) for g in fixed]))
        factors.append(("J^tau", [j_element(g, k) for g in fixed]))
    else:
        raise ValueError(f"unknown shape {shape!r}")
    return factors


def in_central_shape(m: MkElement) -> bool:
    """Membership in A_1^tau x ... x A_k^tau x J^tau x <tau_bar>.

    Writes m = (h_1 x^-1, ..., h_k x^-1 ; ad_x tau^p) and checks that x and
    every h_i are tau-fixed.
    """
    basis = m.basis
    if basis.rank != 2:
        return False
    from .nielsen import split_tau_power
    split = split_tau_power(m.phi)
    if split is None:
        return False
    x, _ = split
    tau = nielsen_tau(basis)
    if tau(x) != x:
        return False
    return all(tau(g * x) == g * x for g in m.coords)


# -- text syntax -----------------------------------------------------------------

def format_mk(m: MkElement) -> str:
    coords = " | ".join(str(g) for g in m.coords)
    return f"({coords} ; {format_automorphism(m.phi, compact=True)})"


_MK = re.compile(r"^\s*\((?P<body>.*)\)\s*$", re.S)


def parse_mk(text: str, basis: Basis, offset: int = 0, inverse_bound: int | None = 4) -> MkElement:
    """Parse ``(g1 | ... | gk ; phi)``."""
    m = _MK.match(text)
    if not m:
        raise WordParseError("expected '(g1 | ... | gk ; phi)'", offset)
    body = m.group("body")
    start = offset + m.start("body")
    if ";" not in body:
        raise WordParseError("missing ';' between coordinates and automorphism", start)
    head, tail = body.split(";", 1)
    coords, pos = [], 0
    for piece in head.split("|"):
        coords.append(parse_word(piece, basis, start + pos))
        pos += len(piece) + 1
    phi = parse_automorphism(tail, basis, inverse_bound=inverse_bound, offset=start + len(head) + 1)
    return MkElement(tuple(coords), phi)
