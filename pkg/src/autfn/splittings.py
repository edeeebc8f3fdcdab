"""Collapsed roses, cages, and finite pieces of their Bass-Serre trees.

Vertices of the Bass-Serre tree of a collapsed rose are the cosets gA of the
vertex factor A.  A coset is represented by its normal form: the reduced word
with its maximal A-suffix removed.  Because A is generated by a subset of the
basis, two normal forms that differ give different cosets (the reduced
quotient retains a stable letter), so cosets and normal forms correspond.
"""
from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass
from typing import Sequence

from .automorphisms import (Automorphism, compose, format_automorphism, inner, inverse,
                            make_automorphism, restrict, extend)
from .mk import MkElement
from .words import (Basis, Word, invert_codes, multiply_codes, parse_word, standard_basis,
                    strip_both, strip_suffix, factor_membership)


class StabilizerWarning(UserWarning):
    """A twisted action was requested for an automorphism outside the stabilizer."""


class OutOfBall(ValueError):
    pass


class CaseAnalysisViolation(AssertionError):
    """Raised when a fixed arc does not force the expected fixed element."""


# -- splittings ------------------------------------------------------------------

@dataclass(frozen=True)
class RoseSplitting:
    basis: Basis
    vertex_factor: tuple[int, ...]

    def __post_init__(self):
        vf = tuple(sorted(set(self.vertex_factor)))
        if any(not 0 <= i < self.basis.rank for i in vf):
            raise ValueError(f"vertex factor {vf} out of range")
        object.__setattr__(self, "vertex_factor", vf)

    @classmethod
    def standard(cls, N: int, k: int) -> "RoseSplitting":
        """Vertex factor on the first N - k letters, petals on the last k."""
        if not 1 <= k <= N:
            raise ValueError(f"need 1 <= k <= N, got N={N}, k={k}")
        return cls(standard_basis(N), tuple(range(N - k)))

    @property
    def N(self) -> int:
        return self.basis.rank

    @property
    def stable_letters(self) -> tuple[int, ...]:
        vf = set(self.vertex_factor)
        return tuple(i for i in range(self.N) if i not in vf)

    @property
    def k(self) -> int:
        return len(self.stable_letters)

    def petal_of(self, index: int) -> int:
        """1-based petal number of a basis index."""
        return self.stable_letters.index(index) + 1

    def stable_letter(self, petal: int) -> Word:
        if not 1 <= petal <= self.k:
            raise IndexError(f"petal {petal} out of range for k={self.k}")
        return self.basis.generator(self.stable_letters[petal - 1])

    @property
    def factor_basis(self) -> Basis:
        return self.basis.restrict(self.vertex_factor)

    def spec(self) -> str:
        return f"rose@N={self.N},k={self.k}"


@dataclass(frozen=True)
class CageSplitting:
    basis: Basis
    factor_a: tuple[int, ...]
    factor_b: tuple[int, ...]
    connectors: tuple[int, ...]

    def __post_init__(self):
        parts = list(self.factor_a) + list(self.factor_b) + list(self.connectors)
        if sorted(parts) != list(range(self.basis.rank)):
            raise ValueError("A, B and the connectors must partition the basis")

    @classmethod
    def standard(cls, rank_a: int, rank_b: int, k: int) -> "CageSplitting":
        names = ([f"a{i}" for i in range(1, rank_a + 1)] + [f"b{i}" for i in range(1, rank_b + 1)]
                 + [f"x{i}" for i in range(1, k)])
        basis = Basis(tuple(names))
        a = tuple(range(rank_a))
        b = tuple(range(rank_a, rank_a + rank_b))
        return cls(basis, a, b, tuple(range(rank_a + rank_b, len(names))))

    @property
    def N(self) -> int:
        return self.basis.rank

    @property
    def k(self) -> int:
        return len(self.connectors) + 1


# -- vertices and adjacency -----------------------------------------------------------

@dataclass(frozen=True)
class CosetVertex:
    rep: Word

    def __str__(self):
        return str(self.rep)

    def sort_key(self):
        return self.rep.sort_key()

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()


def coset_normal_form(g: Word, s: RoseSplitting) -> CosetVertex:
    rest, _ = strip_suffix(g, s.vertex_factor)
    return CosetVertex(rest)


def _rep(v: CosetVertex | Word) -> Word:
    return v.rep if isinstance(v, CosetVertex) else v


def _adjacency_codes(g: tuple[int, ...], h: tuple[int, ...], vf: frozenset
                     ) -> tuple[int, int] | None:
    d = multiply_codes(invert_codes(g), h)
    lo, hi = 0, len(d)
    while lo < hi and abs(d[lo]) - 1 in vf:
        lo += 1
    while hi > lo and abs(d[hi - 1]) - 1 in vf:
        hi -= 1
    if hi - lo != 1:
        return None
    return d[lo]


def are_adjacent(g: CosetVertex | Word, h: CosetVertex | Word, s: RoseSplitting
                 ) -> tuple[int, int] | None:
    """(petal, sign) when g^-1 h lies in A x^sign A, else None."""
    c = _adjacency_codes(_rep(g).codes, _rep(h).codes, frozenset(s.vertex_factor))
    if c is None:
        return None
    return s.petal_of(abs(c) - 1), (1 if c > 0 else -1)


# -- finite balls ------------------------------------------------------------------

@dataclass(frozen=True)
class TreeBall:
    splitting: RoseSplitting
    L: int
    vertices: tuple[CosetVertex, ...]
    edges: tuple[tuple[CosetVertex, CosetVertex], ...]

    def __contains__(self, v: CosetVertex) -> bool:
        return v in self._vertex_set()

    def _vertex_set(self):
        return frozenset(self.vertices)

    def has_edge(self, u: CosetVertex, v: CosetVertex) -> bool:
        return _edge(u, v) in frozenset(self.edges)

    def neighbours(self, v: CosetVertex) -> list[CosetVertex]:
        out = [b for a, b in self.edges if a == v] + [a for a, b in self.edges if b == v]
        return sorted(out)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def is_acyclic(self) -> bool:
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True

    def is_tree(self) -> bool:
        return self.is_connected() and self.is_acyclic()


def _edge(u: CosetVertex, v: CosetVertex) -> tuple[CosetVertex, CosetVertex]:
    return (u, v) if u.sort_key() <= v.sort_key() else (v, u)


def normal_forms(s: RoseSplitting, L: int) -> list[CosetVertex]:
    """All coset normal forms of length <= L, shortlex order."""
    from .words import enumerate_codes
    vf = frozenset(s.vertex_factor)
    return [CosetVertex(Word._trusted(s.basis, c)) for c in enumerate_codes(s.N, L)
            if not c or abs(c[-1]) - 1 not in vf]


def build_ball(s: RoseSplitting, L: int) -> TreeBall:
    """Vertices of normal-form length <= L and every adjacent pair among them."""
    if L < 0:
        raise ValueError("L must be non-negative")
    verts = normal_forms(s, L)
    vf = frozenset(s.vertex_factor)
    edges = []
    for i, u in enumerate(verts):
        uc = u.rep.codes
        for v in verts[i + 1:]:
            if _adjacency_codes(uc, v.rep.codes, vf) is not None:
                edges.append((u, v))
    return TreeBall(s, L, tuple(verts), tuple(sorted(edges, key=lambda e: (e[0].sort_key(), e[1].sort_key()))))


# -- twisted equivariant maps -------------------------------------------------------

def base_vertex_image(phi: Automorphism, s: RoseSplitting) -> Word | None:
    """Normal form c with phi(A) = c A c^-1, or None if there is none."""
    b = s.basis
    if not s.vertex_factor:
        return b.identity
    vf = frozenset(s.vertex_factor)
    found = None
    for i in s.vertex_factor:
        u = phi.image(i).codes
        n = len(u)
        cands = []
        for l in range((n - 1) // 2 + 1):
            if l and abs(u[l - 1]) - 1 in vf:
                continue
            if u[n - l:] != invert_codes(u[:l]):
                continue
            if all(abs(c) - 1 in vf for c in u[l:n - l]):
                cands.append(u[:l])
        if len(cands) != 1:
            return None
        if found is not None and cands[0] != found:
            return None
        found = cands[0]
    c = Word._trusted(b, found)
    if restrict(compose(inner(~c), phi), s.vertex_factor) is None:
        return None
    return c


class TwistedMap:
    """The phi-twistedly equivariant map f with f(g x) = phi(g) f(x).

    On vertices f(gA) = phi(g) c A where phi(A) = c A c^-1.
    """

    def __init__(self, phi: Automorphism, s: RoseSplitting, warn: bool = True):
        self.phi = phi
        self.splitting = s
        c = base_vertex_image(phi, s)
        self.in_stabilizer = (c is not None and
                              rose_stab_membership(compose(inner(~c), phi), s) is not None)
        if not self.in_stabilizer and warn:
            warnings.warn(f"{format_automorphism(phi)} does not stabilize {s.spec()}",
                          StabilizerWarning, stacklevel=2)
        self.base = c if c is not None else s.basis.identity

    def __call__(self, v: CosetVertex | Word) -> CosetVertex:
        return coset_normal_form(self.phi(_rep(v)) * self.base, self.splitting)

    def edge(self, u: CosetVertex, v: CosetVertex) -> tuple[CosetVertex, CosetVertex]:
        return self(u), self(v)


def twisted_vertex_action(phi: Automorphism, v: CosetVertex | Word, s: RoseSplitting) -> CosetVertex:
    return TwistedMap(phi, s)(v)


def left_translate(g: Word, v: CosetVertex, s: RoseSplitting) -> CosetVertex:
    return coset_normal_form(g * v.rep, s)


# -- signed permutations of petals --------------------------------------------------------

@dataclass(frozen=True)
class WkElement:
    """x_i -> x_{perm[i]}^{signs[i]} (0-based petals)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))) or len(self.signs) != len(self.perm):
            raise ValueError(f"not a signed permutation: {self.perm}, {self.signs}")
        if any(e not in (1, -1) for e in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def identity(cls, k: int) -> "WkElement":
        return cls(tuple(range(k)), (1,) * k)

    @property
    def k(self) -> int:
        return len(self.perm)

    def is_identity(self) -> bool:
        return self == WkElement.identity(self.k)

    def __mul__(self, other: "WkElement") -> "WkElement":
        """self o other."""
        perm = tuple(self.perm[other.perm[i]] for i in range(self.k))
        signs = tuple(self.signs[other.perm[i]] * other.signs[i] for i in range(self.k))
        return WkElement(perm, signs)

    @classmethod
    def all(cls, k: int):
        for perm in itertools.permutations(range(k)):
            for signs in itertools.product((1, -1), repeat=k):
                yield cls(perm, signs)

    def automorphism(self, s: RoseSplitting) -> Automorphism:
        d = RoseStabDecomposition(
            tuple(s.basis.identity for _ in range(self.k)),
            tuple(s.basis.identity for _ in range(self.k)),
            self, None)
        return d.reassemble(s)


@dataclass(frozen=True)
class RoseStabDecomposition:
    """phi(x_i) = u_i w(x_i) v_i with phi|_A = phi_a (over A's own basis)."""

    u: tuple[Word, ...]
    v: tuple[Word, ...]
    w: WkElement
    phi_a: Automorphism | None

    def reassemble(self, s: RoseSplitting) -> Automorphism:
        b = s.basis
        if self.phi_a is not None:
            base = extend(self.phi_a, b, s.vertex_factor)
            base_inv = inverse(base)
        else:
            base = base_inv = None
        img = list(b.generators())
        inv = list(b.generators())
        if base is not None:
            for i in s.vertex_factor:
                img[i] = base.image(i)
                inv[i] = base_inv.image(i)
        for i, j in enumerate(s.stable_letters):
            x_img = b.generator(s.stable_letters[self.w.perm[i]]) ** self.w.signs[i]
            img[j] = self.u[i] * x_img * self.v[i]
            # phi^-1(x_{w(i)}^{sign}) = phi^-1(u_i)^-1 x_i phi^-1(v_i)^-1
            ui = base_inv(~self.u[i]) if base_inv else ~self.u[i]
            vi = base_inv(~self.v[i]) if base_inv else ~self.v[i]
            pre = ui * b.generator(j) * vi
            inv[s.stable_letters[self.w.perm[i]]] = pre if self.w.signs[i] == 1 else ~pre
        return make_automorphism(img, inv)


def rose_stab_membership(phi: Automorphism, s: RoseSplitting) -> RoseStabDecomposition | None:
    """Decompose phi if it fixes the base vertex A, else None."""
    phi_a = None
    if s.vertex_factor:
        phi_a = restrict(phi, s.vertex_factor)
        if phi_a is None:
            return None
    stable = s.stable_letters
    us, vs, perm, signs = [], [], [], []
    for j in stable:
        pre, core, suf = strip_both(phi.image(j), s.vertex_factor)
        if len(core) != 1:
            return None
        c = core.codes[0]
        if abs(c) - 1 not in stable:
            return None
        us.append(pre)
        vs.append(suf)
        perm.append(stable.index(abs(c) - 1))
        signs.append(1 if c > 0 else -1)
    if sorted(perm) != list(range(len(stable))):
        return None
    return RoseStabDecomposition(tuple(us), tuple(vs), WkElement(tuple(perm), tuple(signs)), phi_a)


def rose_to_mk(d: RoseStabDecomposition) -> MkElement:
    """phi -> (u_1^-1, ..., u_k^-1, v_1, ..., v_k ; phi|_A); requires w = 1."""
    if not d.w.is_identity():
        raise ValueError("rose_to_mk needs the signed permutation part to be trivial")
    if d.phi_a is None:
        raise ValueError("rose_to_mk needs a non-trivial vertex factor")
    fb = d.phi_a.basis
    # transport coordinates from the ambient basis to A's own basis
    coords = [_to_factor(~u, fb) for u in d.u] + [_to_factor(v, fb) for v in d.v]
    return MkElement(tuple(coords), d.phi_a)


def _to_factor(w: Word, fb: Basis) -> Word:
    names = w.basis.names
    return Word._trusted(fb, tuple((fb.index(names[abs(c) - 1]) + 1) * (1 if c > 0 else -1)
                                   for c in w.codes))


def _from_factor(w: Word, b: Basis) -> Word:
    names = w.basis.names
    return Word._trusted(b, tuple((b.index(names[abs(c) - 1]) + 1) * (1 if c > 0 else -1)
                                  for c in w.codes))


def mk_to_rose(m: MkElement, s: RoseSplitting) -> Automorphism:
    """a -> phi(a), x_i -> g_i^-1 x_i g_{k+i}."""
    k = s.k
    if m.k != 2 * k:
        raise ValueError(f"expected arity {2 * k}, got {m.k}")
    b = s.basis
    u = tuple(_from_factor(~g, b) for g in m.coords[:k])
    v = tuple(_from_factor(g, b) for g in m.coords[k:])
    return RoseStabDecomposition(u, v, WkElement.identity(k), m.phi).reassemble(s)


def wk_act(w: WkElement, m: MkElement) -> MkElement:
    """The coordinate action matching conjugation m -> w m w^-1.

    Petal i moves to petal w(i); an inverted petal also swaps its pair
    (g_i, g_{k+i}), so W_k acts through permutations of the 2k coordinates.
    """
    k = w.k
    if m.k != 2 * k:
        raise ValueError(f"expected arity {2 * k}, got {m.k}")
    g, h = list(m.coords[:k]), list(m.coords[k:])
    g2, h2 = [None] * k, [None] * k
    for i in range(k):
        p = w.perm[i]
        g2[p], h2[p] = (g[i], h[i]) if w.signs[i] == 1 else (h[i], g[i])
    return MkElement(tuple(g2 + h2), m.phi)


def edge_stab_membership(phi: Automorphism, s: RoseSplitting, j: int) -> bool:
    """phi fixes the edge from A to x_j A: w = 1 and u_j = 1."""
    d = rose_stab_membership(phi, s)
    return d is not None and d.w.is_identity() and not d.u[j - 1]


def theta(phi: Automorphism, s: RoseSplitting, j: int = 1) -> MkElement:
    """Edge-stabilizer coordinates: drop the (trivial) u_j from rose_to_mk."""
    d = rose_stab_membership(phi, s)
    if d is None or not d.w.is_identity() or d.u[j - 1]:
        raise ValueError("automorphism does not fix the edge of petal %d" % j)
    m = rose_to_mk(d)
    coords = m.coords[:j - 1] + m.coords[j:]
    return MkElement(coords, m.phi)


def lift_correction(phi: Automorphism, s: RoseSplitting, j: int = 1) -> tuple[Word, Automorphism]:
    """g with f_phi(e) = g e for the edge e = [A, x_j A], and ad_g^-1 o phi."""
    f = TwistedMap(phi, s, warn=False)
    if not f.in_stabilizer:
        raise ValueError("automorphism does not stabilize the splitting")
    p = f(s.basis.identity)
    q = f(s.stable_letter(j))
    a, core, _ = strip_both(~p.rep * q.rep, s.vertex_factor)
    if core != s.stable_letter(j):
        raise ValueError("image edge lies in a different orbit or orientation")
    g = p.rep * a
    return g, compose(inner(~g), phi)


def map_edges(phi: Automorphism, ball: TreeBall, target: TreeBall) -> list[tuple[CosetVertex, CosetVertex]]:
    """Images under f_phi of the edges of ``ball``; raises OutOfBall when an
    image vertex falls outside ``target``."""
    f = TwistedMap(phi, ball.splitting)
    verts = frozenset(target.vertices)
    out = []
    for u, v in ball.edges:
        fu, fv = f(u), f(v)
        for x in (fu, fv):
            if x not in verts:
                raise OutOfBall(f"{x} lies outside the ball of radius {target.L}")
        out.append(_edge(fu, fv))
    return out


# -- arcs --------------------------------------------------------------------------

def path_vertices(path: Sequence[tuple[CosetVertex, CosetVertex]], ball: TreeBall) -> list[CosetVertex]:
    """Validate a simple edge path in the ball and list its vertices in order."""
    if not path:
        raise ValueError("empty path")
    for u, v in path:
        if not ball.has_edge(u, v):
            raise OutOfBall(f"edge {u} -- {v} is not in the ball")
    if len(path) == 1:
        return list(path[0])
    first, second = path[0], path[1]
    start = first[0] if first[1] in second else first[1]
    verts = [start]
    for u, v in path:
        cur = verts[-1]
        if cur == u:
            verts.append(v)
        elif cur == v:
            verts.append(u)
        else:
            raise ValueError("edges do not form a path")
    if len(set(verts)) != len(verts):
        raise ValueError("path is not simple")
    return verts


def fixes_arc(phi: Automorphism, path: Sequence[tuple[CosetVertex, CosetVertex]], ball: TreeBall) -> bool:
    verts = path_vertices(path, ball)
    f = TwistedMap(phi, ball.splitting)
    return all(f(v) == v for v in verts)


def third_case_fixed_element_check(phi: Automorphism, s: RoseSplitting, w: Word) -> bool:
    """Whether f_phi fixes A, x_1 A and w x_1 A; if it does, phi(w) must equal w."""
    if not edge_stab_membership(phi, s, 1):
        raise ValueError("phi must fix the edge of petal 1")
    if not w or not factor_membership(w, s.vertex_factor):
        raise ValueError("w must be a non-trivial element of the vertex factor")
    f = TwistedMap(phi, s, warn=False)
    x1 = s.stable_letter(1)
    verts = [s.basis.identity, x1, w * x1]
    fixed = all(f(v) == coset_normal_form(v, s) for v in verts)
    if fixed and phi(w) != w:
        raise CaseAnalysisViolation(f"f fixes the arc but phi({w}) = {phi(w)}")
    return fixed


# -- cages ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CageStabRepresentative:
    phi_a: Automorphism | None
    phi_b: Automorphism | None
    pairs: tuple[tuple[Word, Word], ...]


def cage_stab_representative(phi: Automorphism, c: CageSplitting) -> CageStabRepresentative | None:
    """phi|_A, phi|_B and the pairs (a_i, b_i) with phi(x_i) = a_i x_i b_i."""
    restrictions = []
    for factor in (c.factor_a, c.factor_b):
        if factor:
            r = restrict(phi, factor)
            if r is None:
                return None
            restrictions.append(r)
        else:
            restrictions.append(None)
    fa, fb = frozenset(c.factor_a), frozenset(c.factor_b)
    pairs = []
    for j in c.connectors:
        img = phi.image(j).codes
        lo = 0
        while lo < len(img) and abs(img[lo]) - 1 in fa:
            lo += 1
        hi = len(img)
        while hi > lo and abs(img[hi - 1]) - 1 in fb:
            hi -= 1
        if img[lo:hi] != (j + 1,):
            return None
        pairs.append((Word._trusted(c.basis, img[:lo]), Word._trusted(c.basis, img[hi:])))
    return CageStabRepresentative(restrictions[0], restrictions[1], tuple(pairs))


# -- collapsing --------------------------------------------------------------------------

def collapse_petal(s: RoseSplitting, j: int) -> RoseSplitting:
    if s.k < 2:
        raise ValueError("collapsing needs at least two petals")
    if not 1 <= j <= s.k:
        raise IndexError(f"petal {j} out of range for k={s.k}")
    return RoseSplitting(s.basis, s.vertex_factor + (s.stable_letters[j - 1],))


def collapse_vertex_map(v: CosetVertex, coarse: RoseSplitting) -> CosetVertex:
    return coset_normal_form(v.rep, coarse)


# -- export ----------------------------------------------------------------------------

def _edge_label(ball: TreeBall, u: CosetVertex, v: CosetVertex) -> tuple[int, int]:
    lab = are_adjacent(u, v, ball.splitting)
    assert lab is not None
    return lab


def to_dot(ball: TreeBall) -> str:
    s = ball.splitting
    lines = [f'graph "{s.spec()},L={ball.L}" {{']
    for v in ball.vertices:
        lines.append(f'  "{v}" [label="{v}"];')
    for u, v in ball.edges:
        petal, sign = _edge_label(ball, u, v)
        lines.append(f'  "{u}" -- "{v}" [label="{petal}{"+" if sign > 0 else "-"}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(ball: TreeBall) -> str:
    s = ball.splitting
    data = {
        "splitting": {"kind": "rose", "names": list(s.basis.names),
                      "vertex_factor": list(s.vertex_factor)},
        "L": ball.L,
        "vertices": [str(v) for v in ball.vertices],
        "edges": [dict(zip(("u", "v", "petal", "sign"), (str(u), str(v)) + _edge_label(ball, u, v)))
                  for u, v in ball.edges],
    }
    return json.dumps(data, indent=2) + "\n"


def from_json(text: str) -> TreeBall:
    data = json.loads(text)
    sp = data["splitting"]
    if sp.get("kind", "rose") != "rose":
        raise ValueError(f"unsupported splitting kind {sp.get('kind')!r}")
    basis = Basis(tuple(sp["names"]))
    s = RoseSplitting(basis, tuple(sp["vertex_factor"]))

    def vertex(t):
        v = coset_normal_form(parse_word(t, basis), s)
        if str(v) != t:
            raise ValueError(f"{t!r} is not a coset normal form")
        return v

    verts = tuple(vertex(t) for t in data["vertices"])
    edges = tuple(_edge(vertex(e["u"]), vertex(e["v"])) for e in data["edges"])
    return TreeBall(s, int(data["L"]), verts, edges)


def parse_splitting(spec: str) -> RoseSplitting:
    """``rose@N=4,k=2``; k defaults to N - 2 and N to 3."""
    kind, _, params = spec.partition("@")
    if kind.strip() != "rose":
        raise ValueError(f"unknown splitting kind {kind!r}")
    values = {"N": 3}
    for part in filter(None, params.split(",")):
        key, _, val = part.partition("=")
        key = key.strip()
        if key not in ("N", "k") or not val.strip().isdigit():
            raise ValueError(f"bad splitting parameter {part!r}")
        values[key] = int(val)
    values.setdefault("k", max(values["N"] - 2, 1))
    return RoseSplitting.standard(values["N"], values["k"])
