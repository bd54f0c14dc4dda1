"""Finite categories, functors, and natural transformations.

Objects and arrows are integer ids.  ``comp[(f, g)]`` stores the
diagrammatic composite "f then g".  Products are strictly associative by
construction: the n-fold product encodes object/arrow tuples row-major with
mixed radix, so C^(m*k) and (C^k)-tuples-of-length-m are literally the same
indexing and never need re-bracketing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class CatError(Exception):
    pass


@dataclass(frozen=True)
class FinCategory:
    n_objects: int
    src: tuple[int, ...]
    dst: tuple[int, ...]
    identity: tuple[int, ...]              # per object
    comp: tuple[tuple[int, int, int], ...]  # (f, g, f-then-g); empty when lazy

    _comp_map: dict = field(default_factory=dict, compare=False, repr=False, hash=False)
    _then_fn: object = field(default=None, compare=False, repr=False, hash=False)
    _inverse_cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        table = {(f, g): h for f, g, h in self.comp}
        object.__setattr__(self, "_comp_map", table)

    @property
    def n_arrows(self) -> int:
        return len(self.src)

    def arrows(self):
        return range(self.n_arrows)

    def hom(self, a: int, b: int) -> list[int]:
        return [f for f in self.arrows() if self.src[f] == a and self.dst[f] == b]

    def then(self, f: int, g: int) -> int:
        if self.dst[f] != self.src[g]:
            raise CatError(f"arrows {f} and {g} are not composable")
        if f == self.identity[self.src[f]]:
            return g
        if g == self.identity[self.dst[f]]:
            return f
        hit = self._comp_map.get((f, g))
        if hit is not None:
            return hit
        if self._then_fn is not None:
            return self._then_fn(f, g)  # type: ignore[operator]
        raise CatError(f"missing composite for ({f}, {g})")

    def is_identity(self, f: int) -> bool:
        return self.identity[self.src[f]] == f

    def inverse(self, f: int) -> int | None:
        if f in self._inverse_cache:
            return self._inverse_cache[f]
        out = None
        for g in self.hom(self.dst[f], self.src[f]):
            if self.then(f, g) == self.identity[self.src[f]] and \
               self.then(g, f) == self.identity[self.src[g]]:
                out = g
                break
        self._inverse_cache[f] = out
        return out


@dataclass(frozen=True)
class CategoryViolation:
    kind: str
    data: tuple


def build_category(n_objects: int, src: list[int], dst: list[int], identity: list[int],
                   comp: dict[tuple[int, int], int]) -> FinCategory:
    # Canonical form: store every composable pair, identity composites included,
    # so structurally equal categories compare equal.
    full = dict(comp)
    for f in range(len(src)):
        for g in range(len(src)):
            if dst[f] != src[g] or (f, g) in full:
                continue
            if identity[src[f]] == f:
                full[(f, g)] = g
            elif identity[src[g]] == g:
                full[(f, g)] = f
    triples = tuple(sorted((f, g, h) for (f, g), h in full.items()))
    return FinCategory(n_objects, tuple(src), tuple(dst), tuple(identity), triples)


def validate_category(cat: FinCategory) -> CategoryViolation | None:
    n = cat.n_arrows
    for a in range(cat.n_objects):
        i = cat.identity[a]
        if not 0 <= i < n or cat.src[i] != a or cat.dst[i] != a:
            return CategoryViolation("identity", (a,))
    for f in cat.arrows():
        for g in cat.arrows():
            if cat.dst[f] != cat.src[g]:
                continue
            try:
                h = cat.then(f, g)
            except CatError:
                return CategoryViolation("missing-composite", (f, g))
            if cat.src[h] != cat.src[f] or cat.dst[h] != cat.dst[g]:
                return CategoryViolation("composite-endpoints", (f, g, h))
    for f in cat.arrows():
        for g in cat.arrows():
            if cat.dst[f] != cat.src[g]:
                continue
            for h in cat.arrows():
                if cat.dst[g] != cat.src[h]:
                    continue
                if cat.then(cat.then(f, g), h) != cat.then(f, cat.then(g, h)):
                    return CategoryViolation("associativity", (f, g, h))
    return None


def terminal_category() -> FinCategory:
    return build_category(1, [0], [0], [0], {})


def discrete_category(n: int) -> FinCategory:
    return build_category(n, list(range(n)), list(range(n)), list(range(n)), {})


def poset_category(relation: list[tuple[int, int]], n: int) -> FinCategory:
    """Thin category from a reflexive-transitive relation given as pairs (a<=b).

    Arrows are ordered with the identities first, matching the text format.
    """
    strict = sorted(set(relation) - {(a, a) for a in range(n)})
    pairs = [(a, a) for a in range(n)] + strict
    src = [a for a, _ in pairs]
    dst = [b for _, b in pairs]
    idx = {p: i for i, p in enumerate(pairs)}
    identity = [idx[(a, a)] for a in range(n)]
    comp = {}
    for (a, b) in pairs:
        for (b2, c) in pairs:
            if b2 != b:
                continue
            if (a, c) not in idx:
                raise CatError("relation is not transitive")
            comp[(idx[(a, b)], idx[(b, c)])] = idx[(a, c)]
    return build_category(n, src, dst, identity, comp)


def group_delooping(n: int) -> FinCategory:
    """One object, arrows Z/n under addition."""
    comp = {(a, b): (a + b) % n for a in range(n) for b in range(n)}
    return build_category(1, [0] * n, [0] * n, [0], comp)


def graded_scalar_category(grading: int, scalars: int) -> FinCategory:
    """Objects Z/grading; End(x) = Z/scalars written additively; no cross arrows.

    Arrow id = x * scalars + s for the scalar s at object x.
    """
    n_arr = grading * scalars
    src = [a // scalars for a in range(n_arr)]
    dst = list(src)
    identity = [x * scalars for x in range(grading)]
    comp = {}
    for x in range(grading):
        for s in range(scalars):
            for t in range(scalars):
                comp[(x * scalars + s, x * scalars + t)] = x * scalars + (s + t) % scalars
    return build_category(grading, src, dst, identity, comp)


# -- products -------------------------------------------------------------------

def encode(parts: tuple[int, ...], radices: tuple[int, ...]) -> int:
    idx = 0
    for p, r in zip(parts, radices):
        idx = idx * r + p
    return idx


def decode(idx: int, radices: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for r in reversed(radices):
        out.append(idx % r)
        idx //= r
    return tuple(reversed(out))


class ProductCategory:
    """Strict product with row-major mixed-radix encoding of tuples.

    The underlying FinCategory is built on first access; encodings are
    available without it, which keeps large powers cheap to index.
    """

    def __init__(self, factors: tuple[FinCategory, ...]):
        self.factors = factors
        self._cat: FinCategory | None = None

    def obj_radices(self) -> tuple[int, ...]:
        return tuple(c.n_objects for c in self.factors)

    def arr_radices(self) -> tuple[int, ...]:
        return tuple(c.n_arrows for c in self.factors)

    @property
    def n_objects(self) -> int:
        n = 1
        for c in self.factors:
            n *= c.n_objects
        return n

    @property
    def n_arrows(self) -> int:
        n = 1
        for c in self.factors:
            n *= c.n_arrows
        return n

    def encode_obj(self, parts: tuple[int, ...]) -> int:
        return encode(parts, self.obj_radices())

    def decode_obj(self, idx: int) -> tuple[int, ...]:
        return decode(idx, self.obj_radices())

    def encode_arr(self, parts: tuple[int, ...]) -> int:
        return encode(parts, self.arr_radices())

    def decode_arr(self, idx: int) -> tuple[int, ...]:
        return decode(idx, self.arr_radices())

    def then_arr(self, f: int, g: int) -> int:
        fp = self.decode_arr(f)
        gp = self.decode_arr(g)
        return self.encode_arr(tuple(c.then(a, b) for c, a, b in zip(self.factors, fp, gp)))

    def identity_arr(self, o: int) -> int:
        parts = self.decode_obj(o)
        return self.encode_arr(tuple(c.identity[p] for c, p in zip(self.factors, parts)))

    def arr_src(self, a: int) -> int:
        parts = self.decode_arr(a)
        return self.encode_obj(tuple(c.src[p] for c, p in zip(self.factors, parts)))

    def arr_dst(self, a: int) -> int:
        parts = self.decode_arr(a)
        return self.encode_obj(tuple(c.dst[p] for c, p in zip(self.factors, parts)))

    @property
    def cat(self) -> FinCategory:
        if self._cat is None:
            if not self.factors:
                self._cat = terminal_category()
            elif len(self.factors) == 1:
                self._cat = self.factors[0]
            else:
                src = tuple(self.arr_src(a) for a in range(self.n_arrows))
                dst = tuple(self.arr_dst(a) for a in range(self.n_arrows))
                identity = tuple(self.identity_arr(o) for o in range(self.n_objects))
                self._cat = FinCategory(self.n_objects, src, dst, identity, (),
                                        _then_fn=self.then_arr)
        return self._cat


def product(factors: list[FinCategory]) -> ProductCategory:
    """Componentwise product; the empty product is the terminal category."""
    return ProductCategory(tuple(factors))


def power(cat: FinCategory, n: int) -> ProductCategory:
    return product([cat] * n)


# -- functors and natural transformations ---------------------------------------

@dataclass(frozen=True)
class FinFunctor:
    source: FinCategory
    target: FinCategory
    obj_map: tuple[int, ...]
    arr_map: tuple[int, ...]


def validate_functor(fun: FinFunctor) -> CategoryViolation | None:
    c, d = fun.source, fun.target
    for f in c.arrows():
        g = fun.arr_map[f]
        if d.src[g] != fun.obj_map[c.src[f]] or d.dst[g] != fun.obj_map[c.dst[f]]:
            return CategoryViolation("functor-endpoints", (f,))
    for a in range(c.n_objects):
        if fun.arr_map[c.identity[a]] != d.identity[fun.obj_map[a]]:
            return CategoryViolation("functor-identity", (a,))
    for f in c.arrows():
        for g in c.arrows():
            if c.dst[f] != c.src[g]:
                continue
            if fun.arr_map[c.then(f, g)] != d.then(fun.arr_map[f], fun.arr_map[g]):
                return CategoryViolation("functor-composition", (f, g))
    return None


def identity_functor(cat: FinCategory) -> FinFunctor:
    return FinFunctor(cat, cat, tuple(range(cat.n_objects)), tuple(range(cat.n_arrows)))


def compose_functors(f: FinFunctor, g: FinFunctor) -> FinFunctor:
    if f.target != g.source:
        raise CatError("functor composition mismatch")
    return FinFunctor(f.source, g.target,
                      tuple(g.obj_map[o] for o in f.obj_map),
                      tuple(g.arr_map[a] for a in f.arr_map))


@dataclass(frozen=True)
class FinNat:
    source: FinFunctor
    target: FinFunctor
    components: tuple[int, ...]  # arrow in the common target per source object


def validate_nat(nat: FinNat) -> CategoryViolation | None:
    f, g = nat.source, nat.target
    if f.source != g.source or f.target != g.target:
        return CategoryViolation("nat-boundary", ())
    c, d = f.source, f.target
    for a in range(c.n_objects):
        comp = nat.components[a]
        if d.src[comp] != f.obj_map[a] or d.dst[comp] != g.obj_map[a]:
            return CategoryViolation("nat-component", (a,))
    for h in c.arrows():
        a, b = c.src[h], c.dst[h]
        left = d.then(f.arr_map[h], nat.components[b])
        right = d.then(nat.components[a], g.arr_map[h])
        if left != right:
            return CategoryViolation("naturality", (h,))
    return None


def identity_nat(fun: FinFunctor) -> FinNat:
    comps = tuple(fun.target.identity[fun.obj_map[a]] for a in range(fun.source.n_objects))
    return FinNat(fun, fun, comps)


def vert_nat(p: FinNat, q: FinNat) -> FinNat:
    if p.target != q.source:
        raise CatError("vertical composition mismatch")
    d = p.source.target
    comps = tuple(d.then(a, b) for a, b in zip(p.components, q.components))
    return FinNat(p.source, q.target, comps)


def whisker_left(fun: FinFunctor, nat: FinNat) -> FinNat:
    """Precompose: the transformation fun;nat with components at fun-images."""
    if fun.target != nat.source.source:
        raise CatError("left whisker mismatch")
    comps = tuple(nat.components[fun.obj_map[a]] for a in range(fun.source.n_objects))
    return FinNat(compose_functors(fun, nat.source), compose_functors(fun, nat.target), comps)


def whisker_right(nat: FinNat, fun: FinFunctor) -> FinNat:
    """Postcompose: apply fun to every component."""
    if nat.source.target != fun.source:
        raise CatError("right whisker mismatch")
    comps = tuple(fun.arr_map[c] for c in nat.components)
    return FinNat(compose_functors(nat.source, fun), compose_functors(nat.target, fun), comps)


def invert_nat(nat: FinNat) -> FinNat:
    d = nat.source.target
    comps = []
    for c in nat.components:
        inv = d.inverse(c)
        if inv is None:
            raise CatError("component is not invertible")
        comps.append(inv)
    return FinNat(nat.target, nat.source, tuple(comps))


def enumerate_functors(c: FinCategory, d: FinCategory, bound: int = 1 << 22) -> list[FinFunctor]:
    """All functors c -> d, ordered lexicographically by (obj_map, arr_map)."""
    if d.n_objects ** c.n_objects > bound:
        raise CatError("functor enumeration bound exceeded")
    out = []
    non_identity = [f for f in c.arrows() if not c.is_identity(f)]
    for obj_map in itertools.product(range(d.n_objects), repeat=c.n_objects):
        choices = []
        feasible = True
        for f in non_identity:
            hom = d.hom(obj_map[c.src[f]], obj_map[c.dst[f]])
            if not hom:
                feasible = False
                break
            choices.append(hom)
        if not feasible:
            continue
        for picks in itertools.product(*choices):
            arr_map = [0] * c.n_arrows
            for a in range(c.n_objects):
                arr_map[c.identity[a]] = d.identity[obj_map[a]]
            for f, g in zip(non_identity, picks):
                arr_map[f] = g
            fun = FinFunctor(c, d, tuple(obj_map), tuple(arr_map))
            if validate_functor(fun) is None:
                out.append(fun)
    return out


def enumerate_naturals(f: FinFunctor, g: FinFunctor) -> list[FinNat]:
    if f.source != g.source or f.target != g.target:
        raise CatError("natural transformations need parallel functors")
    c, d = f.source, f.target
    choices = [d.hom(f.obj_map[a], g.obj_map[a]) for a in range(c.n_objects)]
    out = []
    for comps in itertools.product(*choices):
        nat = FinNat(f, g, tuple(comps))
        if validate_nat(nat) is None:
            out.append(nat)
    return out
