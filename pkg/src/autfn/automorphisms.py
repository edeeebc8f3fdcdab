"""Automorphisms of a free group given by basis images plus an inverse witness."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .words import (Basis, BasisMismatch, Word, WordParseError,
                    enumerate_codes, factor_membership, multiply_codes,
                    canonical_basis_for, parse_word, standard_basis)


class RoundTripFailure(ValueError):
    """The proposed inverse witness does not invert the images."""

    def __init__(self, letter: str, direction: str):
        super().__init__(f"round trip fails on {letter} ({direction})")
        self.letter = letter
        self.direction = direction


def _substitute(images: Sequence[tuple[int, ...]], codes: Sequence[int]) -> tuple[int, ...]:
    out: tuple[int, ...] = ()
    for c in codes:
        if c > 0:
            out = multiply_codes(out, images[c - 1])
        else:
            img = images[-c - 1]
            out = multiply_codes(out, tuple(-x for x in reversed(img)))
    return out


class Automorphism:
    """phi in Aut(F_N) stored as images of basis letters and of their preimages.

    Equality and hashing look at the images only; the inverse witness is
    determined by them.
    """

    __slots__ = ("basis", "_img", "_inv", "_hash")

    def __init__(self, basis: Basis, images: Sequence[tuple[int, ...]],
                 inverse_images: Sequence[tuple[int, ...]]):
        self.basis = basis
        self._img = tuple(tuple(w) for w in images)
        self._inv = tuple(tuple(w) for w in inverse_images)
        self._hash = None

    @property
    def images(self) -> tuple[Word, ...]:
        return tuple(Word._trusted(self.basis, w) for w in self._img)

    @property
    def inverse_images(self) -> tuple[Word, ...]:
        return tuple(Word._trusted(self.basis, w) for w in self._inv)

    def image(self, which: int | str) -> Word:
        i = self.basis.index(which) if isinstance(which, str) else which
        return Word._trusted(self.basis, self._img[i])

    def __call__(self, w: Word) -> Word:
        if w.basis != self.basis:
            raise BasisMismatch(f"{w.basis} vs {self.basis}")
        return Word._trusted(self.basis, _substitute(self._img, w.codes))

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.basis == other.basis and self._img == other._img

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.basis.names, self._img))
        return self._hash

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        return compose(self, other)

    def __invert__(self) -> "Automorphism":
        return inverse(self)

    def __pow__(self, n: int) -> "Automorphism":
        base = self if n >= 0 else inverse(self)
        out = identity(self.basis)
        for _ in range(abs(n)):
            out = compose(out, base)
        return out

    def is_identity(self) -> bool:
        return all(img == (i + 1,) for i, img in enumerate(self._img))

    def __str__(self):
        return format_automorphism(self)

    def __repr__(self):
        return f"Automorphism({format_automorphism(self)!r})"


def make_automorphism(images: Sequence[Word], inverse_images: Sequence[Word]) -> Automorphism:
    """Build an automorphism, checking that the witness inverts the images."""
    if not images or len(images) != len(inverse_images):
        raise ValueError("images and inverse images must both cover the basis")
    basis = images[0].basis
    if basis.rank != len(images):
        raise ValueError(f"expected {basis.rank} images, got {len(images)}")
    for w in list(images) + list(inverse_images):
        if w.basis != basis:
            raise BasisMismatch(f"{w.basis} vs {basis}")
    img = [w.codes for w in images]
    inv = [w.codes for w in inverse_images]
    for i in range(basis.rank):
        if _substitute(img, inv[i]) != (i + 1,):
            raise RoundTripFailure(basis.names[i], "phi(witness(x)) != x")
        if _substitute(inv, img[i]) != (i + 1,):
            raise RoundTripFailure(basis.names[i], "witness(phi(x)) != x")
    return Automorphism(basis, img, inv)


def from_mapping(basis: Basis, images: Mapping[str, str | Word],
                 inverse_images: Mapping[str, str | Word]) -> Automorphism:
    """Convenience constructor; unlisted letters are fixed."""
    def full(m):
        out = []
        for i, name in enumerate(basis.names):
            w = m.get(name, basis.generator(i))
            out.append(parse_word(w, basis) if isinstance(w, str) else w)
        return out
    return make_automorphism(full(images), full(inverse_images))


def identity(basis: Basis) -> Automorphism:
    gens = tuple((i + 1,) for i in range(basis.rank))
    return Automorphism(basis, gens, gens)


def apply(phi: Automorphism, w: Word) -> Word:
    return phi(w)


def compose(phi: Automorphism, psi: Automorphism) -> Automorphism:
    """phi o psi, i.e. w -> phi(psi(w))."""
    if phi.basis != psi.basis:
        raise BasisMismatch(f"{phi.basis} vs {psi.basis}")
    img = [_substitute(phi._img, w) for w in psi._img]
    inv = [_substitute(psi._inv, w) for w in phi._inv]
    return Automorphism(phi.basis, img, inv)


def inverse(phi: Automorphism) -> Automorphism:
    return Automorphism(phi.basis, phi._inv, phi._img)


def inner(g: Word) -> Automorphism:
    """ad_g : w -> g w g^-1."""
    b = g.basis
    gi = ~g
    img = [(g * b.generator(i) * gi).codes for i in range(b.rank)]
    inv = [(gi * b.generator(i) * g).codes for i in range(b.rank)]
    return Automorphism(b, img, inv)


def commutes(phi: Automorphism, psi: Automorphism) -> bool:
    return compose(phi, psi) == compose(psi, phi)


def conjugator_of(phi: Automorphism) -> Word | None:
    """Return g with phi = ad_g, or None if phi is not inner.

    For each letter b the image g b g^-1 reduces to s b s^-1 where s is g
    with its maximal b-power suffix removed.  With two or more letters g
    must equal one of these s, so checking each candidate is exact.
    """
    b = phi.basis
    candidates = []
    for i, img in enumerate(phi._img):
        n = len(img)
        if n % 2 == 0:
            return None
        h = n // 2
        if img[h] != i + 1:
            return None
        s = img[:h]
        if img[h + 1:] != tuple(-c for c in reversed(s)):
            return None
        candidates.append(s)
    for s in candidates:
        g = Word._trusted(b, s)
        if inner(g) == phi:
            return g
    return None


def is_inner(phi: Automorphism) -> bool:
    return conjugator_of(phi) is not None


# -- abelianization -------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix; entry (r, c) is the exponent sum of letter r in
    the image of letter c.  With a modulus the entries are reduced."""

    rows: tuple[tuple[int, ...], ...]
    modulus: int | None = None

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r][c]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        n = self.size
        mod = self.modulus or other.modulus
        rows = []
        for r in range(n):
            row = []
            for c in range(n):
                v = sum(self.rows[r][k] * other.rows[k][c] for k in range(n))
                row.append(v % mod if mod else v)
            rows.append(tuple(row))
        return IntMatrix(tuple(rows), mod)

    def reduce_mod(self, m: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(v % m for v in row) for row in self.rows), m)

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.size))

    def det(self) -> int:
        # Bareiss fraction-free elimination
        n = self.size
        m = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for r in range(k + 1, n):
                    if m[r][k] != 0:
                        m[k], m[r] = m[r], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        d = sign * m[n - 1][n - 1]
        return d % self.modulus if self.modulus else d

    def is_identity(self) -> bool:
        return all(self.rows[r][c] == (1 if r == c else 0)
                   for r in range(self.size) for c in range(self.size))

    @classmethod
    def identity(cls, n: int, modulus: int | None = None) -> "IntMatrix":
        return cls(tuple(tuple(int(r == c) for c in range(n)) for r in range(n)), modulus)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def exponent_sums(w: Word) -> tuple[int, ...]:
    v = [0] * w.basis.rank
    for c in w.codes:
        v[abs(c) - 1] += 1 if c > 0 else -1
    return tuple(v)


def abelianization_matrix(phi: Automorphism, modulus: int | None = None) -> IntMatrix:
    n = phi.basis.rank
    cols = [exponent_sums(w) for w in phi.images]
    rows = tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))
    m = IntMatrix(rows)
    return m.reduce_mod(modulus) if modulus else m


def is_in_ia3(phi: Automorphism) -> bool:
    return abelianization_matrix(phi, 3).is_identity()


def fixed_words(phi: Automorphism, length: int) -> set[Word]:
    """All reduced words of length <= length fixed by phi."""
    img = phi._img
    b = phi.basis
    return {Word._trusted(b, codes) for codes in enumerate_codes(b.rank, length)
            if _substitute(img, codes) == codes}


# -- standard generators ----------------------------------------------------

def _stable_indices(basis: Basis, factor: Iterable[int]) -> list[int]:
    f = set(factor)
    return [i for i in range(basis.rank) if i not in f]


def _stable_index(basis: Basis, i: int, factor: Iterable[int]) -> int:
    stable = _stable_indices(basis, factor)
    if not 1 <= i <= len(stable):
        raise IndexError(f"petal {i} out of range (have {len(stable)} stable letters)")
    return stable[i - 1]


def _with_images(basis: Basis, changes: dict[int, Word], inv_changes: dict[int, Word]
                 ) -> Automorphism:
    img = [changes[i].codes if i in changes else (i + 1,) for i in range(basis.rank)]
    inv = [inv_changes[i].codes if i in inv_changes else (i + 1,) for i in range(basis.rank)]
    return Automorphism(basis, img, inv)


def nielsen_tau(basis: Basis) -> Automorphism:
    """a1 -> a1 a2, every other letter fixed."""
    if basis.rank < 2:
        raise ValueError("tau needs rank >= 2")
    a1, a2 = basis.generator(0), basis.generator(1)
    return _with_images(basis, {0: a1 * a2}, {0: a1 * ~a2})


def _check_in_factor(w: Word, factor: Iterable[int]):
    if not factor_membership(w, factor):
        raise ValueError(f"{w} does not lie in the vertex factor")


def left_transvection(basis: Basis, i: int, w: Word,
                      factor: Sequence[int] = (0, 1)) -> Automorphism:
    """x_i -> w x_i with w in the factor; x_i is the i-th letter outside it."""
    _check_in_factor(w, factor)
    j = _stable_index(basis, i, factor)
    x = basis.generator(j)
    return _with_images(basis, {j: w * x}, {j: ~w * x})


def right_transvection(basis: Basis, i: int, w: Word,
                       factor: Sequence[int] = (0, 1)) -> Automorphism:
    _check_in_factor(w, factor)
    j = _stable_index(basis, i, factor)
    x = basis.generator(j)
    return _with_images(basis, {j: x * w}, {j: x * ~w})


def petal_permutation(basis: Basis, sigma: Sequence[int],
                      factor: Sequence[int] = (0, 1)) -> Automorphism:
    """x_i -> x_{sigma(i)}; sigma is 0-based over the petals."""
    stable = _stable_indices(basis, factor)
    if sorted(sigma) != list(range(len(stable))):
        raise ValueError(f"{sigma} is not a permutation of {len(stable)} petals")
    img, inv = {}, {}
    for i, s in enumerate(sigma):
        img[stable[i]] = basis.generator(stable[s])
        inv[stable[s]] = basis.generator(stable[i])
    return _with_images(basis, img, inv)


def petal_inversion(basis: Basis, i: int, factor: Sequence[int] = (0, 1)) -> Automorphism:
    j = _stable_index(basis, i, factor)
    x = ~basis.generator(j)
    return _with_images(basis, {j: x}, {j: x})


def letter_swap(basis: Basis, i: int, j: int) -> Automorphism:
    gi, gj = basis.generator(i), basis.generator(j)
    return _with_images(basis, {i: gj, j: gi}, {i: gj, j: gi})


def letter_inversion(basis: Basis, i: int) -> Automorphism:
    g = ~basis.generator(i)
    return _with_images(basis, {i: g}, {i: g})


def extend(phi: Automorphism, basis: Basis, factor: Sequence[int]) -> Automorphism:
    """Extend an automorphism of the factor (given over its own basis) to the
    whole basis by fixing the remaining letters."""
    factor = sorted(factor)
    if phi.basis.rank != len(factor):
        raise ValueError("factor size does not match the automorphism's rank")
    remap = {k + 1: factor[k] + 1 for k in range(len(factor))}

    def lift(codes):
        return Word._trusted(basis, tuple(remap[abs(c)] * (1 if c > 0 else -1) for c in codes))

    img = {factor[k]: lift(phi._img[k]) for k in range(len(factor))}
    inv = {factor[k]: lift(phi._inv[k]) for k in range(len(factor))}
    return _with_images(basis, img, inv)


def restrict(phi: Automorphism, factor: Sequence[int]) -> Automorphism | None:
    """Restriction of phi to the factor (over the factor's own basis), or None
    when phi or its inverse does not preserve the factor."""
    factor = sorted(factor)
    if not factor:
        return None
    sub = phi.basis.restrict(factor)
    remap = {factor[k] + 1: k + 1 for k in range(len(factor))}
    img, inv = [], []
    for i in factor:
        for src, dst in ((phi._img, img), (phi._inv, inv)):
            codes = src[i]
            if any(abs(c) not in remap for c in codes):
                return None
            dst.append(tuple(remap[abs(c)] * (1 if c > 0 else -1) for c in codes))
    return Automorphism(sub, img, inv)


# -- text syntax --------------------------------------------------------------

_ARROW = re.compile(r"\s*->\s*")


def format_automorphism(phi: Automorphism, compact: bool = False) -> str:
    """``a1 -> a1 a2; a2 -> a2``.  Compact form drops fixed letters."""
    parts = []
    for i, name in enumerate(phi.basis.names):
        w = phi.image(i)
        if compact and w.codes == (i + 1,):
            continue
        parts.append(f"{name} -> {w}")
    return "; ".join(parts) if parts else "1"


def mentioned_names(text: str) -> set[str]:
    names = set()
    for tok in re.split(r"[\s;|()*]+|->", text):
        tok = tok.strip()
        if tok.endswith("^-1"):
            tok = tok[:-3]
        if tok and tok != "1" and not re.fullmatch(r"\^\s*-?\d+", tok):
            names.add(tok)
    return names


def _parse_map(text: str, basis: Basis, offset: int) -> list[Word]:
    images = basis.generators()
    if text.strip() in ("", "1"):
        return images
    pos = 0
    for clause in text.split(";"):
        start = offset + pos
        pos += len(clause) + 1
        if not clause.strip():
            continue
        pieces = _ARROW.split(clause)
        if len(pieces) != 2:
            raise WordParseError(f"expected 'name -> word' in {clause.strip()!r}", start)
        name = pieces[0].strip()
        if name not in basis:
            raise WordParseError(f"unknown generator {name!r}", start)
        images[basis.index(name)] = parse_word(pieces[1], basis, start + clause.index("->") + 2)
    return images


def search_inverse(images: Sequence[Word], length: int) -> list[Word] | None:
    """Look for preimages of every basis letter among words of length <= length."""
    basis = images[0].basis
    img = [w.codes for w in images]
    want = {(i + 1,): i for i in range(basis.rank)}
    found: dict[int, Word] = {}
    for codes in enumerate_codes(basis.rank, length):
        out = _substitute(img, codes)
        if out in want and want[out] not in found:
            found[want[out]] = Word._trusted(basis, codes)
            if len(found) == basis.rank:
                return [found[i] for i in range(basis.rank)]
    return None


def parse_automorphism(text: str, basis: Basis | None = None,
                       inverse_bound: int | None = 4, offset: int = 0) -> Automorphism:
    """Parse ``a1 -> a1 a2; a2 -> a2`` with an optional ``| witness`` part.

    Unlisted letters are fixed; ``1`` is the identity.  Without a witness a
    bounded preimage search of length ``inverse_bound`` is run.
    """
    if basis is None:
        basis = canonical_basis_for(mentioned_names(text))
    if "|" in text:
        head, tail = text.split("|", 1)
        images = _parse_map(head, basis, offset)
        witness = _parse_map(tail, basis, offset + len(head) + 1)
        return make_automorphism(images, witness)
    images = _parse_map(text, basis, offset)
    if inverse_bound is None:
        raise WordParseError("no inverse witness given and search disabled", offset)
    witness = search_inverse(images, inverse_bound)
    if witness is None:
        raise RoundTripFailure(basis.names[0],
                               f"no inverse witness of length <= {inverse_bound} found")
    return make_automorphism(images, witness)


def default_basis(rank: int | None, *texts: str) -> Basis:
    if rank is not None:
        return standard_basis(rank)
    names: set[str] = set()
    for t in texts:
        names |= mentioned_names(t)
    try:
        return canonical_basis_for(names)
    except WordParseError:
        # report the first offending name where it occurs in the first text holding it
        for t in texts:
            for m in re.finditer(r"[^\s;|()*^>-]+", t):
                tok = m.group()
                if tok in names and tok != "1" and not tok.lstrip("-").isdigit():
                    try:
                        canonical_basis_for([tok])
                    except WordParseError:
                        raise WordParseError(f"unknown generator {tok!r}", m.start()) from None
        raise

