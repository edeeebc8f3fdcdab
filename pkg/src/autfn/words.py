"""Reduced words over a ranked free-group basis.

Letters are stored as signed integer codes: basis position ``i`` with sign
``s`` is the code ``s * (i + 1)``.  Inverse letters are then negatives of each
other, which keeps free reduction to a single comparison per step.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence


class BasisMismatch(ValueError):
    """Raised when two values over different bases are combined."""


class WordParseError(ValueError):
    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class Letter(NamedTuple):
    index: int
    sign: int

    @property
    def code(self) -> int:
        return self.sign * (self.index + 1)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(abs(code) - 1, 1 if code > 0 else -1)


@dataclass(frozen=True)
class Basis:
    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ValueError("a basis needs at least one letter")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"basis names must be distinct: {self.names}")
        object.__setattr__(self, "_lookup", {n: i for i, n in enumerate(self.names)})

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._lookup[name]

    def __contains__(self, name: str) -> bool:
        return name in self._lookup

    def generator(self, which: int | str) -> "Word":
        i = self.index(which) if isinstance(which, str) else which
        if not 0 <= i < self.rank:
            raise IndexError(f"basis index {i} out of range for rank {self.rank}")
        return Word._trusted(self, (i + 1,))

    def generators(self) -> list["Word"]:
        return [self.generator(i) for i in range(self.rank)]

    @property
    def identity(self) -> "Word":
        return Word._trusted(self, ())

    def word(self, text: str) -> "Word":
        return parse_word(text, self)

    def letter_codes(self) -> list[int]:
        """All 2N letter codes in enumeration order: a1, a1^-1, a2, a2^-1, ..."""
        return [c for i in range(1, self.rank + 1) for c in (i, -i)]

    def restrict(self, indices: Iterable[int]) -> "Basis":
        return Basis(tuple(self.names[i] for i in sorted(indices)))

    def __repr__(self):
        return f"Basis({', '.join(self.names)})"


def standard_basis(rank: int) -> Basis:
    """a1, a2, x1, ..., x_{N-2}; rank 1 gives just a1."""
    if rank < 1:
        raise ValueError("rank must be positive")
    names = ["a1", "a2"][:rank] + [f"x{i}" for i in range(1, rank - 1)]
    return Basis(tuple(names))


def reduce_codes(codes: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for c in codes:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def is_reduced_codes(codes: Sequence[int]) -> bool:
    return all(codes[i] != -codes[i + 1] for i in range(len(codes) - 1))


def invert_codes(codes: Sequence[int]) -> tuple[int, ...]:
    return tuple(-c for c in reversed(codes))


def multiply_codes(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    # both inputs reduced: cancellation only happens at the seam
    i, n, m = 0, len(u), len(v)
    while i < n and i < m and u[n - 1 - i] == -v[i]:
        i += 1
    return tuple(u[: n - i]) + tuple(v[i:])


def letter_key(code: int) -> tuple[int, int]:
    """Order letters by (index, sign) with +1 before -1."""
    return (abs(code), 0 if code > 0 else 1)


class Word:
    """An immutable freely reduced word.  Reduction happens at construction."""

    __slots__ = ("basis", "codes", "_hash")

    def __init__(self, basis: Basis, letters: Iterable[int | Letter] = ()):
        codes = []
        for c in letters:
            if isinstance(c, Letter):
                c = c.code
            if c == 0 or abs(c) > basis.rank:
                raise ValueError(f"letter code {c} out of range for {basis}")
            codes.append(c)
        self.basis = basis
        self.codes = reduce_codes(codes)
        self._hash = None

    @classmethod
    def _trusted(cls, basis: Basis, codes: tuple[int, ...]) -> "Word":
        w = cls.__new__(cls)
        w.basis = basis
        w.codes = codes
        w._hash = None
        return w

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter.from_code(c) for c in self.codes)

    def __len__(self):
        return len(self.codes)

    def __bool__(self):
        return bool(self.codes)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.codes == other.codes and (self.basis is other.basis or self.basis == other.basis)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.basis.names, self.codes))
        return self._hash

    def _check(self, other: "Word"):
        if self.basis is not other.basis and self.basis != other.basis:
            raise BasisMismatch(f"{self.basis} vs {other.basis}")

    def __mul__(self, other: "Word") -> "Word":
        self._check(other)
        return Word._trusted(self.basis, multiply_codes(self.codes, other.codes))

    def __invert__(self) -> "Word":
        return Word._trusted(self.basis, invert_codes(self.codes))

    def inverse(self) -> "Word":
        return ~self

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else ~self
        out = self.basis.identity
        for _ in range(abs(n)):
            out = out * base
        return out

    def conjugate(self, g: "Word") -> "Word":
        """g * self * g^-1"""
        return g * self * ~g

    def sort_key(self) -> tuple:
        return (len(self.codes), tuple(letter_key(c) for c in self.codes))

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


def reduce(basis: Basis, raw: Iterable[int | Letter]) -> Word:
    return Word(basis, raw)


def multiply(u: Word, v: Word) -> Word:
    return u * v


def invert(u: Word) -> Word:
    return ~u


def conjugate(u: Word, g: Word) -> Word:
    """Return g u g^-1."""
    u._check(g)
    return u.conjugate(g)


def commutator(u: Word, v: Word) -> Word:
    return u * v * ~u * ~v


def factor_membership(u: Word, factor: Iterable[int]) -> bool:
    f = frozenset(factor)
    return all(abs(c) - 1 in f for c in u.codes)


def _prefix_len(codes: Sequence[int], f: frozenset) -> int:
    n = 0
    for c in codes:
        if abs(c) - 1 not in f:
            break
        n += 1
    return n


def _suffix_len(codes: Sequence[int], f: frozenset) -> int:
    n = 0
    for c in reversed(codes):
        if abs(c) - 1 not in f:
            break
        n += 1
    return n


def strip_prefix(u: Word, factor: Iterable[int]) -> tuple[Word, Word]:
    """Split u = prefix * remainder with prefix the maximal factor-prefix.

    Returns (prefix, remainder).
    """
    n = _prefix_len(u.codes, frozenset(factor))
    return Word._trusted(u.basis, u.codes[:n]), Word._trusted(u.basis, u.codes[n:])


def strip_suffix(u: Word, factor: Iterable[int]) -> tuple[Word, Word]:
    """Split u = remainder * suffix with suffix the maximal factor-suffix.

    Returns (remainder, suffix).
    """
    n = _suffix_len(u.codes, frozenset(factor))
    cut = len(u.codes) - n
    return Word._trusted(u.basis, u.codes[:cut]), Word._trusted(u.basis, u.codes[cut:])


def strip_both(u: Word, factor: Iterable[int]) -> tuple[Word, Word, Word]:
    """u = prefix * core * suffix with maximal factor prefix and suffix.

    When u lies entirely in the factor the whole word is the prefix.
    """
    f = frozenset(factor)
    p = _prefix_len(u.codes, f)
    if p == len(u.codes):
        return u, u.basis.identity, u.basis.identity
    s = _suffix_len(u.codes, f)
    cut = len(u.codes) - s
    b = u.basis
    return (Word._trusted(b, u.codes[:p]), Word._trusted(b, u.codes[p:cut]),
            Word._trusted(b, u.codes[cut:]))


def ball_size(rank: int, length: int) -> int:
    """Number of reduced words of length <= length in a free group of this rank."""
    return 1 + sum(2 * rank * (2 * rank - 1) ** (l - 1) for l in range(1, length + 1))


def enumerate_codes(rank: int, length: int, alphabet: Sequence[int] | None = None
                    ) -> Iterator[tuple[int, ...]]:
    """Reduced code tuples of length <= length in shortlex order."""
    if length < 0:
        raise ValueError("length bound must be non-negative")
    if alphabet is None:
        alphabet = [c for i in range(1, rank + 1) for c in (i, -i)]
    layer: list[tuple[int, ...]] = [()]
    yield ()
    for _ in range(length):
        nxt = []
        for w in layer:
            last = w[-1] if w else 0
            for c in alphabet:
                if c != -last:
                    nxt.append(w + (c,))
        yield from nxt
        layer = nxt


def enumerate_ball(basis: Basis, length: int) -> Iterator[Word]:
    """Every reduced word of length <= length exactly once, shortlex order."""
    for codes in enumerate_codes(basis.rank, length):
        yield Word._trusted(basis, codes)


# -- text syntax ---------------------------------------------------------

def format_codes(basis: Basis, codes: Sequence[int]) -> str:
    if not codes:
        return "1"
    return " ".join(basis.names[c - 1] if c > 0 else basis.names[-c - 1] + "^-1"
                    for c in codes)


def format_word(w: Word) -> str:
    return format_codes(w.basis, w.codes)


def parse_word(text: str, basis: Basis, offset: int = 0) -> Word:
    """Parse whitespace separated tokens ``name`` or ``name^-1``.

    ``1`` or the empty string is the identity.  ``offset`` shifts reported
    error positions when the text is embedded in a larger expression.
    """
    codes = []
    pos = 0
    for token in text.split():
        pos = text.index(token, pos)
        if token == "1":
            pos += 1
            continue
        name, sign = token, 1
        if token.endswith("^-1"):
            name, sign = token[:-3], -1
        elif "^" in token:
            raise WordParseError(f"bad exponent in {token!r}", offset + pos)
        if name not in basis:
            raise WordParseError(f"unknown generator {name!r}", offset + pos)
        codes.append(sign * (basis.index(name) + 1))
        pos += len(token)
    return Word(basis, codes)


def canonical_basis_for(names: Iterable[str], minimum_rank: int = 2) -> Basis:
    """Smallest standard basis containing every given name."""
    rank = minimum_rank
    for n in names:
        if n == "a1":
            continue
        if n == "a2":
            rank = max(rank, 2)
        elif n.startswith("x") and n[1:].isdigit() and int(n[1:]) >= 1:
            rank = max(rank, int(n[1:]) + 2)
        else:
            raise WordParseError(f"unknown generator {n!r}")
    return standard_basis(rank)


def product_of(words: Iterable[Word], basis: Basis) -> Word:
    out = basis.identity
    for w in words:
        out = out * w
    return out


def all_letter_sequences(rank: int, length: int) -> Iterator[tuple[int, ...]]:
    """Every (not necessarily reduced) code sequence of length <= length."""
    alphabet = [c for i in range(1, rank + 1) for c in (i, -i)]
    for n in range(length + 1):
        yield from itertools.product(alphabet, repeat=n)
