"""Models of 2-theories in finite categories and everything built on them:
lax/colax/pseudo homomorphisms, modifications, internal (co)algebras,
lifting along an exchange table, internal homs, and convolution.

Cell direction convention, fixed once: a lax structure cell at a generator
a: n -> 1 for a homomorphism f: X -> Y points

    Y(a) o f1^n  ==>  f1 o X(a)

(colax is reversed, pseudo is invertible componentwise, strict stores
identities).  The lift of a model along an exchange table realizes every
basis operation as such a homomorphism whose cells are the evaluated
exchange cells.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import fincat
from .cells import (
    CellError,
    Gen,
    PowerR,
    SigmaTable,
    TwoTheoryPresentation,
    derive_sigma,
    evaluate_pasting,
)
from .fincat import (
    FinCategory,
    FinFunctor,
    FinNat,
    ProductCategory,
    build_category,
    compose_functors,
    enumerate_functors,
    enumerate_naturals,
    identity_nat,
    validate_functor,
    validate_nat,
    vert_nat,
    whisker_left,
    whisker_right,
)
from .theory import (
    Apply,
    Morphism,
    Proj,
    generator_morphism,
    is_inert,
    power_right,
)

HOM_ENUMERATION_BOUND = 256


class EnumerationBound(Exception):
    """Raised instead of sampling when a search space exceeds its bound."""


@dataclass(frozen=True)
class CatModel:
    theory: TwoTheoryPresentation
    carrier: FinCategory
    op_functors: tuple[tuple[str, FinFunctor], ...]
    cell_nats: tuple[tuple[str, FinNat], ...] = ()

    _powers: dict = field(default_factory=dict, compare=False, repr=False, hash=False)
    _functors: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def power(self, n: int) -> ProductCategory:
        if n not in self._powers:
            self._powers[n] = fincat.power(self.carrier, n)
        return self._powers[n]

    def op_functor(self, name: str) -> FinFunctor:
        for n, f in self.op_functors:
            if n == name:
                return f
        raise CellError(f"model has no operation {name}")

    def cell_nat(self, name: str) -> FinNat:
        for n, f in self.cell_nats:
            if n == name:
                return f
        raise CellError(f"model has no 2-cell {name}")

    def functor_of(self, f: Morphism) -> FinFunctor:
        if f in self._functors:
            return self._functors[f]
        dom = self.power(f.source)
        cod = self.power(f.target)
        obj_map = []
        for o in range(dom.n_objects):
            objs = dom.decode_obj(o)
            obj_map.append(cod.encode_obj(tuple(self._eval_obj(c, objs) for c in f.components)))
        arr_map = []
        for a in range(dom.n_arrows):
            arrs = dom.decode_arr(a)
            arr_map.append(cod.encode_arr(tuple(self._eval_arr(c, arrs) for c in f.components)))
        fun = FinFunctor(dom.cat, cod.cat, tuple(obj_map), tuple(arr_map))
        self._functors[f] = fun
        return fun

    def eval_morphism_obj(self, f: Morphism, objs: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(self._eval_obj(c, objs) for c in f.components)

    def eval_morphism_arr(self, f: Morphism, arrs: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(self._eval_arr(c, arrs) for c in f.components)

    def _eval_obj(self, t, objs: tuple[int, ...]) -> int:
        if isinstance(t, Proj):
            return objs[t.index]
        assert isinstance(t, Apply)
        args = tuple(self._eval_obj(a, objs) for a in t.args)
        return self.op_functor(t.op.name).obj_map[self.power(t.op.arity).encode_obj(args)]

    def _eval_arr(self, t, arrs: tuple[int, ...]) -> int:
        if isinstance(t, Proj):
            return arrs[t.index]
        assert isinstance(t, Apply)
        args = tuple(self._eval_arr(a, arrs) for a in t.args)
        return self.op_functor(t.op.name).arr_map[self.power(t.op.arity).encode_arr(args)]


@dataclass(frozen=True)
class ModelViolation:
    kind: str
    detail: str


def validate_cat_model(model: CatModel) -> list[ModelViolation]:
    problems = []
    base = model.theory.base
    for g in base.generators:
        try:
            fun = model.op_functor(g.name)
        except CellError:
            problems.append(ModelViolation("missing-op", g.name))
            continue
        if fun.source != model.power(g.arity).cat or fun.target != model.carrier:
            problems.append(ModelViolation("op-shape", g.name))
        elif validate_functor(fun) is not None:
            problems.append(ModelViolation("op-functor", g.name))
    for eq in base.equations:
        if model.functor_of(eq.lhs) != model.functor_of(eq.rhs):
            problems.append(ModelViolation("equation", eq.name))
    for cell in model.theory.cells:
        try:
            nat = model.cell_nat(cell.name)
        except CellError:
            problems.append(ModelViolation("missing-cell", cell.name))
            continue
        if nat.source != model.functor_of(cell.source) or nat.target != model.functor_of(cell.target):
            problems.append(ModelViolation("cell-boundary", cell.name))
            continue
        if validate_nat(nat) is not None:
            problems.append(ModelViolation("cell-naturality", cell.name))
        if cell.invertible and any(model.carrier.inverse(c) is None for c in nat.components):
            problems.append(ModelViolation("cell-invertibility", cell.name))
    for name, lhs, rhs in model.theory.cell_equations:
        if evaluate_pasting(lhs, model) != evaluate_pasting(rhs, model):
            problems.append(ModelViolation("cell-equation", name))
    return problems


def terminal_model(theory2: TwoTheoryPresentation) -> CatModel:
    term = fincat.terminal_category()
    ops = tuple(
        (g.name, FinFunctor(fincat.power(term, g.arity).cat, term, (0,), (0,)))
        for g in theory2.base.generators
    )
    skeleton = CatModel(theory2, term, ops)
    cells = tuple(
        (c.name, FinNat(skeleton.functor_of(c.source), skeleton.functor_of(c.target), (0,)))
        for c in theory2.cells
    )
    return CatModel(theory2, term, ops, cells)


def power_cat_model(model: CatModel, n: int) -> CatModel:
    """The n-th power model: carrier C^n, operations computed coordinatewise."""
    carrier = model.power(n).cat
    ops = tuple(
        (g.name, model.functor_of(power_right(generator_morphism(g), n)))
        for g in model.theory.base.generators
    )
    cells = tuple(
        (c.name, evaluate_pasting(PowerR(Gen(c), n), model))
        for c in model.theory.cells
    )
    return CatModel(model.theory, carrier, ops, cells)


# -- homomorphisms of models -----------------------------------------------------

@dataclass(frozen=True)
class LaxHom:
    source: CatModel
    target: CatModel
    weakness: str  # strict | pseudo | lax | colax
    f1: FinFunctor
    cells: tuple[tuple[str, FinNat], ...]

    def cell(self, name: str) -> FinNat:
        for n, c in self.cells:
            if n == name:
                return c
        raise CellError(f"hom has no structure cell for {name}")

    def point(self) -> int:
        """Underlying object, for homs out of the terminal model."""
        return self.f1.obj_map[0]


def functor_power(fun: FinFunctor, n: int, src_pow: ProductCategory,
                  dst_pow: ProductCategory) -> FinFunctor:
    obj_map = []
    for o in range(src_pow.n_objects):
        parts = src_pow.decode_obj(o)
        obj_map.append(dst_pow.encode_obj(tuple(fun.obj_map[p] for p in parts)))
    arr_map = []
    for a in range(src_pow.n_arrows):
        parts = src_pow.decode_arr(a)
        arr_map.append(dst_pow.encode_arr(tuple(fun.arr_map[p] for p in parts)))
    return FinFunctor(src_pow.cat, dst_pow.cat, tuple(obj_map), tuple(arr_map))


def hom_cell_boundary(hom_src: CatModel, hom_dst: CatModel, f1: FinFunctor,
                      gen_name: str, weakness: str) -> tuple[FinFunctor, FinFunctor]:
    g = generator_morphism(hom_src.theory.base.op(gen_name))
    n = g.source
    fpow = functor_power(f1, n, hom_src.power(n), hom_dst.power(n))
    via_target = compose_functors(fpow, hom_dst.functor_of(g))
    via_source = compose_functors(hom_src.functor_of(g), f1)
    if weakness == "colax":
        return via_source, via_target
    return via_target, via_source


def identity_hom(model: CatModel, weakness: str = "strict") -> LaxHom:
    f1 = fincat.identity_functor(model.carrier)
    cells = []
    for g in model.theory.base.generators:
        src, tgt = hom_cell_boundary(model, model, f1, g.name, weakness)
        cells.append((g.name, identity_nat(src)))
    return LaxHom(model, model, weakness, f1, tuple(cells))


def extend_hom_cell(hom: LaxHom, f: Morphism) -> FinNat:
    """Canonical structure cell of a homomorphism at an arbitrary morphism."""
    X, Y = hom.source, hom.target
    a, b = f.source, f.target
    fpow_a = functor_power(hom.f1, a, X.power(a), Y.power(a))
    if hom.weakness == "colax":
        outer_src = compose_functors(X.functor_of(f), functor_power(hom.f1, b, X.power(b), Y.power(b)))
        outer_tgt = compose_functors(fpow_a, Y.functor_of(f))
    else:
        outer_src = compose_functors(fpow_a, Y.functor_of(f))
        outer_tgt = compose_functors(X.functor_of(f), functor_power(hom.f1, b, X.power(b), Y.power(b)))

    if is_inert(f):
        return FinNat(outer_src, outer_tgt,
                      tuple(Y.power(b).identity_arr(outer_src.obj_map[o])
                            for o in range(outer_src.source.n_objects)))

    from .cells import _decompose, _is_plain_generator
    if _is_plain_generator(f):
        return hom.cell(f.components[0].op.name)  # type: ignore[union-attr]

    u, heads = _decompose(f)
    v_src = sum(h.source for h in heads)
    head_nats = [extend_hom_cell(hom, h) for h in heads]
    # Stack the head cells blockwise over C_X^{v_src}.
    dom = X.power(v_src)
    cod = Y.power(b)
    comps = []
    for o in range(dom.n_objects):
        objs = dom.decode_obj(o)
        out: list[int] = []
        off = 0
        for h, nat in zip(heads, head_nats):
            block = objs[off:off + h.source]
            off += h.source
            c = nat.components[X.power(h.source).encode_obj(block)]
            out.extend(Y.power(h.target).decode_arr(c))
        comps.append(cod.encode_arr(tuple(out)))
    fpow_v = functor_power(hom.f1, v_src, X.power(v_src), Y.power(v_src))
    from .theory import par as par_morphism
    v = par_morphism(heads)
    if hom.weakness == "colax":
        par_nat = FinNat(compose_functors(X.functor_of(v),
                                          functor_power(hom.f1, b, X.power(b), Y.power(b))),
                         compose_functors(fpow_v, Y.functor_of(v)), tuple(comps))
        right = whisker_left(X.functor_of(u), par_nat)
        left = whisker_right(extend_hom_cell(hom, u), Y.functor_of(v))
        return FinNat(outer_src, outer_tgt, vert_nat(right, left).components)
    par_nat = FinNat(compose_functors(fpow_v, Y.functor_of(v)),
                     compose_functors(X.functor_of(v),
                                      functor_power(hom.f1, b, X.power(b), Y.power(b))),
                     tuple(comps))
    first = whisker_right(extend_hom_cell(hom, u), Y.functor_of(v))
    second = whisker_left(X.functor_of(u), par_nat)
    return FinNat(outer_src, outer_tgt, vert_nat(first, second).components)


def validate_lax_hom(hom: LaxHom) -> list[ModelViolation]:
    problems = []
    X, Y = hom.source, hom.target
    if validate_functor(hom.f1) is not None:
        problems.append(ModelViolation("hom-functor", "underlying map"))
        return problems
    for g in X.theory.base.generators:
        try:
            nat = hom.cell(g.name)
        except CellError:
            problems.append(ModelViolation("hom-missing-cell", g.name))
            continue
        src, tgt = hom_cell_boundary(X, Y, hom.f1, g.name, hom.weakness)
        if nat.source != src or nat.target != tgt:
            problems.append(ModelViolation("hom-cell-boundary", g.name))
            continue
        if validate_nat(nat) is not None:
            problems.append(ModelViolation("hom-cell-naturality", g.name))
        if hom.weakness == "strict" and src != tgt:
            problems.append(ModelViolation("hom-not-strict", g.name))
        if hom.weakness in ("strict", "pseudo"):
            if any(Y.carrier.inverse(c) is None for c in nat.components):
                problems.append(ModelViolation("hom-cell-invertibility", g.name))
        if hom.weakness == "strict" and \
           any(not Y.carrier.is_identity(c) for c in nat.components):
            problems.append(ModelViolation("hom-strict-cells", g.name))
    if problems:
        return problems
    for eq in X.theory.base.equations:
        if extend_hom_cell(hom, eq.lhs) != extend_hom_cell(hom, eq.rhs):
            problems.append(ModelViolation("hom-equation", eq.name))
    for cell in X.theory.cells:
        a, b = cell.source.source, cell.source.target
        xs = evaluate_pasting(Gen(cell), X)
        ys = evaluate_pasting(Gen(cell), Y)
        fpow_a = functor_power(hom.f1, a, X.power(a), Y.power(a))
        fpow_b = functor_power(hom.f1, b, X.power(b), Y.power(b))
        if hom.weakness == "colax":
            lhs = vert_nat(whisker_right(xs, fpow_b), extend_hom_cell(hom, cell.target))
            rhs = vert_nat(extend_hom_cell(hom, cell.source), whisker_left(fpow_a, ys))
        else:
            lhs = vert_nat(extend_hom_cell(hom, cell.source), whisker_right(xs, fpow_b))
            rhs = vert_nat(whisker_left(fpow_a, ys), extend_hom_cell(hom, cell.target))
        if lhs != rhs:
            problems.append(ModelViolation("hom-cell-compat", cell.name))
    return problems


def compose_homs(f: LaxHom, g: LaxHom) -> LaxHom:
    if f.target is not g.source and f.target != g.source:
        raise CellError("hom composition mismatch")
    if f.weakness != g.weakness:
        raise CellError("hom composition across weaknesses")
    f1 = compose_functors(f.f1, g.f1)
    cells = []
    for gen in f.source.theory.base.generators:
        n = gen.arity
        fpow = functor_power(f.f1, n, f.source.power(n), f.target.power(n))
        if f.weakness == "colax":
            nat = vert_nat(whisker_right(f.cell(gen.name), g.f1),
                           whisker_left(fpow, g.cell(gen.name)))
        else:
            nat = vert_nat(whisker_left(fpow, g.cell(gen.name)),
                           whisker_right(f.cell(gen.name), g.f1))
        src, tgt = hom_cell_boundary(f.source, g.target, f1, gen.name, f.weakness)
        cells.append((gen.name, FinNat(src, tgt, nat.components)))
    return LaxHom(f.source, g.target, f.weakness, f1, tuple(cells))


def tuple_homs(homs: list[LaxHom], target_power: CatModel,
               source_model: CatModel | None = None,
               weakness: str | None = None) -> LaxHom:
    """Pair homs X -> Y into a single hom X -> Y^n; the empty tuple is the
    unique hom into the zeroth power."""
    if not homs:
        X = source_model
        w = weakness
        if X is None or w is None:
            raise CellError("empty tuple needs an explicit source and weakness")
        term_like = target_power
        f1 = FinFunctor(X.carrier, term_like.carrier,
                        (0,) * X.carrier.n_objects, (0,) * X.carrier.n_arrows)
        cells = []
        for gen in X.theory.base.generators:
            src, tgt = hom_cell_boundary(X, term_like, f1, gen.name, w)
            cells.append((gen.name, identity_nat(src)))
        return LaxHom(X, term_like, w, f1, tuple(cells))
    X = homs[0].source
    Y = homs[0].target
    n = len(homs)
    ypow = Y.power(n)
    obj_map = tuple(
        ypow.encode_obj(tuple(h.f1.obj_map[o] for h in homs))
        for o in range(X.carrier.n_objects)
    )
    arr_map = tuple(
        ypow.encode_arr(tuple(h.f1.arr_map[a] for h in homs))
        for a in range(X.carrier.n_arrows)
    )
    f1 = FinFunctor(X.carrier, target_power.carrier, obj_map, arr_map)
    cells = []
    for gen in X.theory.base.generators:
        m = gen.arity
        src, tgt = hom_cell_boundary(X, target_power, f1, gen.name, homs[0].weakness)
        comps = []
        for o in range(X.power(m).n_objects):
            comps.append(ypow.encode_arr(tuple(h.cell(gen.name).components[o] for h in homs)))
        cells.append((gen.name, FinNat(src, tgt, tuple(comps))))
    return LaxHom(X, target_power, homs[0].weakness, f1, tuple(cells))


def power_hom(hom: LaxHom, n: int, src_power: CatModel, dst_power: CatModel) -> LaxHom:
    """The induced hom X^n -> Y^n acting coordinatewise."""
    X, Y = hom.source, hom.target
    f1 = functor_power(hom.f1, n, X.power(n), Y.power(n))
    f1 = FinFunctor(src_power.carrier, dst_power.carrier, f1.obj_map, f1.arr_map)
    cells = []
    for gen in X.theory.base.generators:
        m = gen.arity
        src, tgt = hom_cell_boundary(src_power, dst_power, f1, gen.name, hom.weakness)
        dom = X.power(m * n)
        comps = []
        for o in range(dom.n_objects):
            objs = dom.decode_obj(o)
            arrows: list[int] = [0] * n
            for j in range(n):
                col = tuple(objs[i * n + j] for i in range(m))
                arrows[j] = hom.cell(gen.name).components[X.power(m).encode_obj(col)]
            comps.append(Y.power(n).encode_arr(tuple(arrows)))
        cells.append((gen.name, FinNat(src, tgt, tuple(comps))))
    return LaxHom(src_power, dst_power, hom.weakness, f1, tuple(cells))


def enumerate_homs_w(X: CatModel, Y: CatModel, weakness: str,
                     bound: int = HOM_ENUMERATION_BOUND) -> list[LaxHom]:
    """All weakness-w homomorphisms X -> Y, deterministically ordered."""
    out = []
    for f1 in enumerate_functors(X.carrier, Y.carrier):
        per_gen: list[list[FinNat]] = []
        feasible = True
        total = 1
        for g in X.theory.base.generators:
            src, tgt = hom_cell_boundary(X, Y, f1, g.name, weakness)
            if weakness == "strict":
                if src != tgt:
                    feasible = False
                    break
                per_gen.append([identity_nat(src)])
                continue
            nats = enumerate_naturals(src, tgt)
            if weakness == "pseudo":
                nats = [n for n in nats
                        if all(Y.carrier.inverse(c) is not None for c in n.components)]
            if not nats:
                feasible = False
                break
            per_gen.append(nats)
            total *= len(nats)
            if total > bound:
                raise EnumerationBound(
                    f"{total} candidate structure-cell assignments exceed bound {bound}")
        if not feasible:
            continue
        for picks in itertools.product(*per_gen):
            hom = LaxHom(X, Y, weakness, f1,
                         tuple((g.name, nat) for g, nat in
                               zip(X.theory.base.generators, picks)))
            if not validate_lax_hom(hom):
                out.append(hom)
    return out


# -- modifications ------------------------------------------------------------------

@dataclass(frozen=True)
class Modification:
    source: LaxHom
    target: LaxHom
    component: FinNat  # between the underlying functors


def validate_modification(mod: Modification) -> list[ModelViolation]:
    f, g = mod.source, mod.target
    problems = []
    if f.source != g.source or f.target != g.target or f.weakness != g.weakness:
        return [ModelViolation("modification-boundary", "homs not parallel")]
    if mod.component.source != f.f1 or mod.component.target != g.f1:
        return [ModelViolation("modification-component", "wrong boundary")]
    if validate_nat(mod.component) is not None:
        problems.append(ModelViolation("modification-naturality", ""))
    X, Y = f.source, f.target
    for gen in X.theory.base.generators:
        n = gen.arity
        tpow_comps = []
        for o in range(X.power(n).n_objects):
            objs = X.power(n).decode_obj(o)
            tpow_comps.append(Y.power(n).encode_arr(
                tuple(mod.component.components[p] for p in objs)))
        fpow = functor_power(f.f1, n, X.power(n), Y.power(n))
        gpow = functor_power(g.f1, n, X.power(n), Y.power(n))
        tpow = FinNat(fpow, gpow, tuple(tpow_comps))
        op = X.functor_of(generator_morphism(gen))
        if f.weakness == "colax":
            lhs = vert_nat(f.cell(gen.name),
                           whisker_right(tpow, Y.functor_of(generator_morphism(gen))))
            rhs = vert_nat(whisker_left(op, mod.component), g.cell(gen.name))
        else:
            lhs = vert_nat(whisker_right(tpow, Y.functor_of(generator_morphism(gen))),
                           g.cell(gen.name))
            rhs = vert_nat(f.cell(gen.name), whisker_left(op, mod.component))
        if lhs != rhs:
            problems.append(ModelViolation("modification-structure", gen.name))
    return problems


def _id_fun(model: CatModel, n: int) -> FinFunctor:
    return fincat.identity_functor(model.power(n).cat)


def enumerate_modifications(f: LaxHom, g: LaxHom) -> list[Modification]:
    out = []
    for nat in enumerate_naturals(f.f1, g.f1):
        mod = Modification(f, g, nat)
        if not validate_modification(mod):
            out.append(mod)
    return out


def identity_modification(f: LaxHom) -> Modification:
    return Modification(f, f, identity_nat(f.f1))


def compose_modifications(s: Modification, t: Modification) -> Modification:
    if s.target != t.source:
        raise CellError("modification composition mismatch")
    return Modification(s.source, t.target, vert_nat(s.component, t.component))


# -- homomorphism categories ----------------------------------------------------------

@dataclass(frozen=True)
class HomCategory:
    cat: FinCategory
    objects: tuple[LaxHom, ...]
    arrows: tuple[Modification, ...]

    def object_index(self, hom: LaxHom) -> int:
        for i, h in enumerate(self.objects):
            if h == hom:
                return i
        raise CellError("hom is not an object of this category")

    def arrow_index(self, mod: Modification) -> int:
        for i, m in enumerate(self.arrows):
            if m == mod:
                return i
        raise CellError("modification is not an arrow of this category")


def build_hom_category(X: CatModel, Y: CatModel, weakness: str,
                       bound: int = HOM_ENUMERATION_BOUND) -> HomCategory:
    homs = enumerate_homs_w(X, Y, weakness, bound)
    arrows: list[Modification] = []
    for f in homs:
        for g in homs:
            arrows.extend(enumerate_modifications(f, g))
    obj_index = {id(h): i for i, h in enumerate(homs)}
    src = []
    dst = []
    for m in arrows:
        src.append(next(i for i, h in enumerate(homs) if h == m.source))
        dst.append(next(i for i, h in enumerate(homs) if h == m.target))
    identity_ids = []
    for i, h in enumerate(homs):
        ident = identity_modification(h)
        identity_ids.append(next(j for j, m in enumerate(arrows) if m == ident))
    comp = {}
    for i, m1 in enumerate(arrows):
        for j, m2 in enumerate(arrows):
            if m1.target != m2.source:
                continue
            m3 = compose_modifications(m1, m2)
            comp[(i, j)] = next(k for k, m in enumerate(arrows) if m == m3)
    cat = build_category(len(homs), src, dst, identity_ids, comp)
    return HomCategory(cat, tuple(homs), tuple(arrows))


def internal_algebras(model: CatModel, bound: int = HOM_ENUMERATION_BOUND) -> HomCategory:
    """Objects: lax homomorphisms from the terminal model; arrows: modifications."""
    return build_hom_category(terminal_model(model.theory), model, "lax", bound)


def internal_coalgebras(model: CatModel, bound: int = HOM_ENUMERATION_BOUND) -> HomCategory:
    return build_hom_category(terminal_model(model.theory), model, "colax", bound)


@dataclass(frozen=True)
class InternalAlgebra:
    obj: int
    structure: tuple[tuple[str, int], ...]  # generator -> structure arrow


def algebra_view(hom: LaxHom) -> InternalAlgebra:
    return InternalAlgebra(hom.point(),
                           tuple((name, nat.components[0]) for name, nat in hom.cells))


# -- lifting along an exchange table --------------------------------------------------

def lift_hom(model: CatModel, sigma: SigmaTable, beta: Morphism,
             weakness: str | None = None,
             src_power: CatModel | None = None) -> LaxHom:
    """The operation X(beta): X^k -> X as a homomorphism of models.

    Structure cells are the evaluated exchange cells sigma_{alpha, beta}.
    A colax lift inverts them, which needs an invertible table.
    """
    from .cells import Inverse
    if beta.target != 1:
        raise CellError("lift expects a map with target 1")
    k = beta.source
    src = src_power if src_power is not None else power_cat_model(model, k)
    if weakness is None:
        weakness = "lax" if sigma.weakness == "strict" else sigma.weakness
    f1 = model.functor_of(beta)
    f1 = FinFunctor(src.carrier, model.carrier, f1.obj_map, f1.arr_map)
    cells = []
    for gen in model.theory.base.generators:
        alpha = generator_morphism(gen)
        pasting = derive_sigma(model.theory, sigma, alpha, beta)
        if weakness == "colax":
            pasting = Inverse(pasting)
        nat = evaluate_pasting(pasting, model)
        bsrc, btgt = hom_cell_boundary(src, model, f1, gen.name, weakness)
        cells.append((gen.name, FinNat(bsrc, btgt, nat.components)))
    return LaxHom(src, model, weakness, f1, tuple(cells))


def lift_model(model: CatModel, sigma: SigmaTable, probes: list | None = None):
    """Lift every basis operation to a homomorphism; refuse incoherent tables."""
    from .cells import check_sigma_coherence
    probe_list = probes if probes is not None else [model]
    report = check_sigma_coherence(model.theory, sigma, probe_list)
    if report.verdict != "Coherent":
        raise CellError(f"refusing to lift along an incoherent table: {report.issues[0]}")
    lifts = []
    for op in model.theory.base.basis_ops():
        hom = lift_hom(model, sigma, generator_morphism(op))
        bad = validate_lax_hom(hom)
        if bad:
            raise CellError(f"lift of {op.name} fails validation: {bad[0]}")
        lifts.append((op.name, hom))
    return lifts


def internal_hom(X: CatModel, Y: CatModel, sigma: SigmaTable, weakness: str,
                 bound: int = HOM_ENUMERATION_BOUND) -> tuple[CatModel, HomCategory]:
    """The homomorphism category made into a model: operations act by
    postcomposition with the lifted operations of Y."""
    homcat = build_hom_category(X, Y, weakness, bound)
    theory2 = X.theory
    ops = []
    for gen in theory2.base.generators:
        n = gen.arity
        ypow_model = power_cat_model(Y, n)
        lifted = lift_hom(Y, sigma, generator_morphism(gen), weakness, ypow_model)
        hpow = fincat.power(homcat.cat, n)
        obj_map = []
        for o in range(hpow.n_objects):
            idxs = hpow.decode_obj(o)
            tup = tuple_homs([homcat.objects[i] for i in idxs], ypow_model, X, weakness)
            obj_map.append(homcat.object_index(compose_homs(tup, lifted)))
        arr_map = []
        for a in range(hpow.n_arrows):
            idxs = hpow.decode_arr(a)
            mods = [homcat.arrows[i] for i in idxs]
            src_tup = tuple_homs([m.source for m in mods], ypow_model, X, weakness)
            tgt_tup = tuple_homs([m.target for m in mods], ypow_model, X, weakness)
            # component of the whiskered modification at x: lifted(f1) of the tuple arrow
            comps = []
            xcat = X.carrier
            for o in range(xcat.n_objects):
                arrow_tuple = Y.power(n).encode_arr(
                    tuple(m.component.components[o] for m in mods))
                comps.append(lifted.f1.arr_map[arrow_tuple])
            new_mod = Modification(
                compose_homs(src_tup, lifted), compose_homs(tgt_tup, lifted),
                FinNat(compose_homs(src_tup, lifted).f1,
                       compose_homs(tgt_tup, lifted).f1, tuple(comps)))
            arr_map.append(homcat.arrow_index(new_mod))
        ops.append((gen.name, FinFunctor(hpow.cat, homcat.cat, tuple(obj_map), tuple(arr_map))))

    hommodel = CatModel(theory2, homcat.cat, tuple(ops))
    cell_nats = []
    for cellsym in theory2.cells:
        a = cellsym.source.source
        ynat = evaluate_pasting(Gen(cellsym), Y)
        hpow = fincat.power(homcat.cat, a)
        comps = []
        for o in range(hpow.n_objects):
            idxs = hpow.decode_obj(o)
            homs = [homcat.objects[i] for i in idxs]
            src_fun = hommodel.functor_of(cellsym.source)
            tgt_fun = hommodel.functor_of(cellsym.target)
            src_hom = homcat.objects[src_fun.obj_map[o]]
            tgt_hom = homcat.objects[tgt_fun.obj_map[o]]
            mod_comps = []
            for x in range(X.carrier.n_objects):
                yobjs = tuple(h.f1.obj_map[x] for h in homs)
                mod_comps.append(ynat.components[Y.power(a).encode_obj(yobjs)])
            mod = Modification(src_hom, tgt_hom,
                               FinNat(src_hom.f1, tgt_hom.f1, tuple(mod_comps)))
            comps.append(homcat.arrow_index(mod))
        cell_nats.append((cellsym.name, FinNat(hommodel.functor_of(cellsym.source),
                                               hommodel.functor_of(cellsym.target),
                                               tuple(comps))))
    hommodel = CatModel(theory2, homcat.cat, tuple(ops), tuple(cell_nats))
    return hommodel, homcat


# -- convolution -----------------------------------------------------------------------

def convolution_algebra(model: CatModel, algebra: LaxHom, coalgebra: LaxHom,
                        rho=None):
    """Operations on the hom-set from the coalgebra's object to the algebra's.

    Each n-ary operation sends (f_1,...,f_n) to
    o_coalgebra ; X(op)(f_1,...,f_n) ; o_algebra.
    Returns (FinSetModel on the hom-set, list of carrier arrow ids).
    """
    from . import finset
    if algebra.weakness != "lax" or coalgebra.weakness != "colax":
        raise CellError("convolution needs a lax algebra and a colax coalgebra")
    if rho is not None:
        problems = rho_validates_for_convolution(rho)
        if problems:
            raise CellError(f"invalid comparison morphism: {problems[0]}")
    cat = model.carrier
    a = algebra.point()
    c = coalgebra.point()
    hom = cat.hom(c, a)
    if not hom:
        raise CellError("empty hom-set: no convolution carrier")
    index = {arrow: i for i, arrow in enumerate(hom)}
    base = model.theory.base
    tables = {}
    for g in base.generators:
        n = g.arity
        fun = model.op_functor(g.name)
        o_a = algebra.cell(g.name).components[0]
        o_c = coalgebra.cell(g.name).components[0]
        table = []
        for args in itertools.product(range(len(hom)), repeat=n):
            arrows = tuple(hom[i] for i in args)
            mid = fun.arr_map[model.power(n).encode_arr(arrows)]
            value = cat.then(cat.then(o_c, mid), o_a)
            if value not in index:
                raise CellError("convolution value escaped the hom-set")
            table.append(index[value])
        tables[g.name] = tuple(table)
    result = finset.validate_model(base, len(hom), tables)
    if not isinstance(result, finset.FinSetModel):
        raise CellError(f"convolution tables violate {result.equation} at {result.env}")
    return result, hom


def rho_validates_for_convolution(rho) -> list[str]:
    """The comparison morphism must send each generator to the canonical
    iterated multiplication of its arity (the clone of a commutative base)."""
    from .cells import validate_theory_morphism
    from .theory import Equal, decide_equal
    problems = validate_theory_morphism(rho)
    target = rho.target
    mult = [g for g in target.generators if g.arity == 2]
    unit = [g for g in target.generators if g.arity == 0]
    if not mult or not unit:
        return problems + ["target theory lacks a binary operation or unit"]
    m, u = mult[0], unit[0]

    def canonical(n: int) -> Morphism:
        if n == 0:
            return generator_morphism(u)
        out = Morphism(n, 1, (Proj(n - 1, n),))
        for i in range(n - 2, -1, -1):
            stack = Morphism(n, 2, (Proj(i, n), out.components[0]))
            out = fincat_compose_safe(stack, generator_morphism(m))
        return out

    for g in rho.source.generators:
        img = rho.image(g.name)
        v = decide_equal(target, img, canonical(g.arity))
        if not isinstance(v, Equal):
            problems.append(f"image of {g.name} is not the canonical {g.arity}-fold product")
    return problems


def fincat_compose_safe(f: Morphism, g: Morphism) -> Morphism:
    from .theory import compose as theory_compose
    return theory_compose(f, g)
