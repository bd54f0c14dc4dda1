"""Pasting expressions for 2-cells, exchange-cell tables, and their coherence.

An exchange table assigns to each pair of basis operations (a: m->1, b: k->1)
a 2-cell

    sigma_{a,b} : row_then_col(a, b)  ==>  col_then_row(a, b)

on m x k matrix contexts ("first apply b to every row, then a to the column"
versus "first apply a to every column, then b to the row").  Cells for
composite or tupled morphisms are never stored: they are derived by a closure
recursion (``derive_sigma``) that whiskers and stacks the basis entries.  The
checks in this module compare derived cells against each other on probe
models, which is where non-coherent tables (e.g. a braiding that is not a
symmetry) fail.

Pasting evaluation is written against a small model protocol:
``model.functor_of(morphism)``, ``model.cell_nat(name)``,
``model.power(n)`` (a fincat.ProductCategory), and ``model.carrier``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fincat import FinNat
from .theory import (
    Apply,
    Morphism,
    Proj,
    TheoryError,
    TheoryPresentation,
    col_then_row,
    compose,
    decide_equal,
    generator_morphism,
    identity,
    is_inert,
    normalize_morphism,
    par,
    power_left,
    power_right,
    row_then_col,
    transpose,
)


class CellError(Exception):
    pass


@dataclass(frozen=True)
class TwoCellSymbol:
    name: str
    source: Morphism
    target: Morphism
    invertible: bool = False

    def __post_init__(self):
        if (self.source.source, self.source.target) != (self.target.source, self.target.target):
            raise CellError(f"2-cell {self.name}: boundary morphisms not parallel")


# -- pasting expression nodes --------------------------------------------------

@dataclass(frozen=True)
class Pasting:
    def source(self) -> Morphism:
        raise NotImplementedError

    def target(self) -> Morphism:
        raise NotImplementedError


@dataclass(frozen=True)
class Id(Pasting):
    morphism: Morphism

    def source(self) -> Morphism:
        return self.morphism

    def target(self) -> Morphism:
        return self.morphism


@dataclass(frozen=True)
class Gen(Pasting):
    cell: TwoCellSymbol

    def source(self) -> Morphism:
        return self.cell.source

    def target(self) -> Morphism:
        return self.cell.target


@dataclass(frozen=True)
class Inverse(Pasting):
    inner: Pasting

    def source(self) -> Morphism:
        return self.inner.target()

    def target(self) -> Morphism:
        return self.inner.source()


@dataclass(frozen=True)
class Vert(Pasting):
    first: Pasting
    second: Pasting

    def source(self) -> Morphism:
        return self.first.source()

    def target(self) -> Morphism:
        return self.second.target()


@dataclass(frozen=True)
class HWhiskerL(Pasting):
    left: Morphism
    inner: Pasting

    def source(self) -> Morphism:
        return compose(self.left, self.inner.source())

    def target(self) -> Morphism:
        return compose(self.left, self.inner.target())


@dataclass(frozen=True)
class HWhiskerR(Pasting):
    inner: Pasting
    right: Morphism

    def source(self) -> Morphism:
        return compose(self.inner.source(), self.right)

    def target(self) -> Morphism:
        return compose(self.inner.target(), self.right)


@dataclass(frozen=True)
class PowerL(Pasting):
    """k copies acting on the k rows: cell k*m -> k*n from a cell m -> n."""
    k: int
    inner: Pasting

    def source(self) -> Morphism:
        return power_left(self.inner.source(), self.k)

    def target(self) -> Morphism:
        return power_left(self.inner.target(), self.k)


@dataclass(frozen=True)
class PowerR(Pasting):
    """k copies acting on the k columns: cell m*k -> n*k from a cell m -> n."""
    inner: Pasting
    k: int

    def source(self) -> Morphism:
        return power_right(self.inner.source(), self.k)

    def target(self) -> Morphism:
        return power_right(self.inner.target(), self.k)


@dataclass(frozen=True)
class Par(Pasting):
    """Horizontal juxtaposition on consecutive variable blocks."""
    parts: tuple[Pasting, ...]

    def source(self) -> Morphism:
        return par([p.source() for p in self.parts])

    def target(self) -> Morphism:
        return par([p.target() for p in self.parts])


def is_invertible_pasting(p: Pasting) -> bool:
    if isinstance(p, Id):
        return True
    if isinstance(p, Gen):
        return p.cell.invertible
    if isinstance(p, Inverse):
        return is_invertible_pasting(p.inner)
    if isinstance(p, Vert):
        return is_invertible_pasting(p.first) and is_invertible_pasting(p.second)
    if isinstance(p, (HWhiskerL, HWhiskerR)):
        return is_invertible_pasting(p.inner)
    if isinstance(p, (PowerL, PowerR)):
        return is_invertible_pasting(p.inner)
    if isinstance(p, Par):
        return all(is_invertible_pasting(q) for q in p.parts)
    raise CellError(f"unknown pasting node {p!r}")


def is_identity_pasting(p: Pasting) -> bool:
    """Structurally an identity cell (no generator content)."""
    if isinstance(p, Id):
        return True
    if isinstance(p, Gen):
        return False
    if isinstance(p, Inverse):
        return is_identity_pasting(p.inner)
    if isinstance(p, Vert):
        return is_identity_pasting(p.first) and is_identity_pasting(p.second)
    if isinstance(p, (HWhiskerL, HWhiskerR, PowerL, PowerR)):
        return is_identity_pasting(p.inner)
    if isinstance(p, Par):
        return all(is_identity_pasting(q) for q in p.parts)
    raise CellError(f"unknown pasting node {p!r}")


def simplify_pasting(p: Pasting) -> Pasting:
    """Collapse identity layers and cancel adjacent inverse pairs."""
    if isinstance(p, Vert):
        a = simplify_pasting(p.first)
        b = simplify_pasting(p.second)
        if is_identity_pasting(a):
            return b
        if is_identity_pasting(b):
            return a
        if isinstance(b, Inverse) and b.inner == a:
            return Id(a.source())
        if isinstance(a, Inverse) and a.inner == b:
            return Id(a.source())
        return Vert(a, b)
    if isinstance(p, HWhiskerL):
        inner = simplify_pasting(p.inner)
        if is_identity_pasting(inner):
            return Id(compose(p.left, inner.source()))
        return HWhiskerL(p.left, inner)
    if isinstance(p, HWhiskerR):
        inner = simplify_pasting(p.inner)
        if is_identity_pasting(inner):
            return Id(compose(inner.source(), p.right))
        return HWhiskerR(inner, p.right)
    if isinstance(p, PowerL):
        inner = simplify_pasting(p.inner)
        if is_identity_pasting(inner):
            return Id(power_left(inner.source(), p.k))
        return PowerL(p.k, inner)
    if isinstance(p, PowerR):
        inner = simplify_pasting(p.inner)
        if is_identity_pasting(inner):
            return Id(power_right(inner.source(), p.k))
        return PowerR(inner, p.k)
    if isinstance(p, Par):
        parts = tuple(simplify_pasting(q) for q in p.parts)
        if all(is_identity_pasting(q) for q in parts):
            return Id(par([q.source() for q in parts]))
        return Par(parts)
    if isinstance(p, Inverse):
        inner = simplify_pasting(p.inner)
        if is_identity_pasting(inner):
            return inner
        if isinstance(inner, Inverse):
            return inner.inner
        return Inverse(inner)
    return p


def flatten_vert(p: Pasting) -> list[Pasting]:
    if isinstance(p, Vert):
        return flatten_vert(p.first) + flatten_vert(p.second)
    return [p]


# -- presentations with 2-cells --------------------------------------------------

@dataclass(frozen=True)
class TwoTheoryPresentation:
    base: TheoryPresentation
    cells: tuple[TwoCellSymbol, ...] = ()
    cell_equations: tuple[tuple[str, Pasting, Pasting], ...] = ()

    def cell(self, name: str) -> TwoCellSymbol:
        for c in self.cells:
            if c.name == name:
                return c
        raise CellError(f"unknown 2-cell {name}")

    @property
    def name(self) -> str:
        return self.base.name


def boundary_normal_form(theory: TheoryPresentation, f: Morphism) -> Morphism:
    nf, _, ok = normalize_morphism(theory, f)
    if not ok:
        raise CellError("boundary normalization exceeded budget")
    return nf


def boundaries_agree(theory: TheoryPresentation, f: Morphism, g: Morphism) -> bool:
    return boundary_normal_form(theory, f) == boundary_normal_form(theory, g)


def validate_pasting(theory2: TwoTheoryPresentation, p: Pasting) -> list[str]:
    """Well-formedness: vertical boundaries agree modulo the equations, and
    inverses only wrap invertible content."""
    problems: list[str] = []

    def walk(q: Pasting):
        if isinstance(q, Vert):
            if not boundaries_agree(theory2.base, q.first.target(), q.second.source()):
                problems.append("vertical composite boundaries do not meet")
            walk(q.first)
            walk(q.second)
        elif isinstance(q, Inverse):
            if not is_invertible_pasting(q.inner):
                problems.append("inverse of a non-invertible pasting")
            walk(q.inner)
        elif isinstance(q, (HWhiskerL, HWhiskerR, PowerL, PowerR)):
            walk(q.inner)
        elif isinstance(q, Par):
            for part in q.parts:
                walk(part)

    try:
        p.source()
        p.target()
    except TheoryError as e:
        return [f"ill-typed pasting: {e}"]
    walk(p)
    return problems


def validate_two_theory(theory2: TwoTheoryPresentation) -> list[str]:
    problems = []
    for name, lhs, rhs in theory2.cell_equations:
        for side, p in (("lhs", lhs), ("rhs", rhs)):
            for issue in validate_pasting(theory2, p):
                problems.append(f"cell equation {name} ({side}): {issue}")
        if not boundaries_agree(theory2.base, lhs.source(), rhs.source()):
            problems.append(f"cell equation {name}: sources differ")
        if not boundaries_agree(theory2.base, lhs.target(), rhs.target()):
            problems.append(f"cell equation {name}: targets differ")
    return problems


# -- evaluation against a model ---------------------------------------------------

def pasting_components(p: Pasting, model) -> tuple[int, ...]:
    """Component table of a pasting: one arrow of C^t per object of C^s,
    where s and t are the boundary contexts.  Never materializes functors,
    so it stays cheap on large matrix contexts."""
    if isinstance(p, Id):
        f = p.morphism
        dom = model.power(f.source)
        cod = model.power(f.target)
        carrier = model.carrier
        out = []
        for o in range(dom.n_objects):
            objs = model.eval_morphism_obj(f, dom.decode_obj(o))
            out.append(cod.encode_arr(tuple(carrier.identity[x] for x in objs)))
        return tuple(out)
    if isinstance(p, Gen):
        return model.cell_nat(p.cell.name).components
    if isinstance(p, Inverse):
        comps = pasting_components(p.inner, model)
        cod = model.power(p.inner.source().target)
        carrier = model.carrier
        out = []
        for c in comps:
            parts = cod.decode_arr(c)
            inv = []
            for a in parts:
                ia = carrier.inverse(a)
                if ia is None:
                    raise CellError("pasting inverse of a non-invertible component")
                inv.append(ia)
            out.append(cod.encode_arr(tuple(inv)))
        return tuple(out)
    if isinstance(p, Vert):
        a = pasting_components(p.first, model)
        b = pasting_components(p.second, model)
        cod = model.power(p.first.source().target)
        carrier = model.carrier
        out = []
        for x, y in zip(a, b):
            xp = cod.decode_arr(x)
            yp = cod.decode_arr(y)
            out.append(cod.encode_arr(tuple(carrier.then(i, j) for i, j in zip(xp, yp))))
        return tuple(out)
    if isinstance(p, HWhiskerL):
        comps = pasting_components(p.inner, model)
        dom = model.power(p.left.source)
        mid = model.power(p.inner.source().source)
        out = []
        for o in range(dom.n_objects):
            objs = model.eval_morphism_obj(p.left, dom.decode_obj(o))
            out.append(comps[mid.encode_obj(objs)])
        return tuple(out)
    if isinstance(p, HWhiskerR):
        comps = pasting_components(p.inner, model)
        mid = model.power(p.inner.source().target)
        cod = model.power(p.right.target)
        out = []
        for c in comps:
            arrs = mid.decode_arr(c)
            out.append(cod.encode_arr(model.eval_morphism_arr(p.right, arrs)))
        return tuple(out)
    if isinstance(p, (PowerL, PowerR)):
        rows = isinstance(p, PowerL)
        inner = p.inner
        k = p.k
        comps = pasting_components(inner, model)
        m = inner.source().source
        n = inner.source().target
        dom = model.power(m * k)
        inner_dom = model.power(m)
        inner_cod = model.power(n)
        out_cod = model.power(n * k)
        out = []
        for o in range(dom.n_objects):
            objs = dom.decode_obj(o)
            if rows:
                blocks = [objs[i * m:(i + 1) * m] for i in range(k)]
            else:
                blocks = [tuple(objs[i * k + j] for i in range(m)) for j in range(k)]
            arrows = [inner_cod.decode_arr(comps[inner_dom.encode_obj(tuple(b))])
                      for b in blocks]
            cells_out = [0] * (n * k)
            for b, arrow in enumerate(arrows):
                for t in range(n):
                    if rows:
                        cells_out[b * n + t] = arrow[t]
                    else:
                        cells_out[t * k + b] = arrow[t]
            out.append(out_cod.encode_arr(tuple(cells_out)))
        return tuple(out)
    if isinstance(p, Par):
        parts = p.parts
        nats = [pasting_components(q, model) for q in parts]
        srcs = [q.source() for q in parts]
        dom = model.power(sum(s.source for s in srcs))
        cod = model.power(sum(s.target for s in srcs))
        out = []
        for o in range(dom.n_objects):
            objs = dom.decode_obj(o)
            arrow_parts: list[int] = []
            off = 0
            for comps, s in zip(nats, srcs):
                block = objs[off:off + s.source]
                off += s.source
                c = comps[model.power(s.source).encode_obj(tuple(block))]
                arrow_parts.extend(model.power(s.target).decode_arr(c))
            out.append(cod.encode_arr(tuple(arrow_parts)))
        return tuple(out)
    raise CellError(f"unknown pasting node {p!r}")


def evaluate_pasting(p: Pasting, model) -> FinNat:
    """Natural-transformation table of a pasting, with evaluated boundaries.

    The model must satisfy the base equations so that the boundary functors
    of a vertical composite agree on the nose.
    """
    return FinNat(model.functor_of(p.source()), model.functor_of(p.target()),
                  pasting_components(p, model))


# -- exchange tables ---------------------------------------------------------------

WEAKNESSES = ("strict", "pseudo", "lax", "colax")


@dataclass(frozen=True)
class SigmaTable:
    name: str
    weakness: str
    entries: tuple[tuple[tuple[str, str], Pasting], ...]
    symmetric: bool = False

    def __post_init__(self):
        if self.weakness not in WEAKNESSES:
            raise CellError(f"unknown weakness {self.weakness}")

    def entry(self, a: str, b: str) -> Pasting | None:
        for (x, y), p in self.entries:
            if (x, y) == (a, b):
                return p
        return None


def sigma_boundaries(alpha: Morphism, beta: Morphism) -> tuple[Morphism, Morphism]:
    return row_then_col(alpha, beta), col_then_row(alpha, beta)


def _is_plain_generator(f: Morphism) -> bool:
    if f.target != 1:
        return False
    c = f.components[0]
    return (isinstance(c, Apply)
            and len(c.args) == f.source
            and all(isinstance(a, Proj) and a.index == i for i, a in enumerate(c.args)))


def _decompose(f: Morphism) -> tuple[Morphism, list[Morphism]]:
    """Split f as (argument stack u, head factors) with f = u then par(heads)."""
    heads: list[Morphism] = []
    arg_terms: list[Apply | Proj] = []
    for c in f.components:
        if isinstance(c, Proj):
            heads.append(identity(1))
            arg_terms.append(c)
        else:
            assert isinstance(c, Apply)
            heads.append(generator_morphism(c.op))
            arg_terms.extend(c.args)
    u = Morphism(f.source, len(arg_terms), tuple(arg_terms))
    return u, heads


def _regroup_in(a: int, col_sizes: list[int]) -> Morphism:
    """Inert a*(sum c_j) -> sum_j (a*c_j): row-major matrix to per-block matrices."""
    total = sum(col_sizes)
    comps = []
    off = 0
    for c in col_sizes:
        for i in range(a):
            for t in range(c):
                comps.append(Proj(i * total + off + t, a * total))
        off += c
    return Morphism(a * total, a * total, tuple(comps))


def _regroup_out(n: int, col_sizes: list[int]) -> Morphism:
    """Inert sum_j (n*d_j) -> n*(sum d_j): per-block matrices back to one matrix."""
    total = sum(col_sizes)
    offsets = []
    acc = 0
    for d in col_sizes:
        offsets.append(acc)
        acc += n * d
    comps = []
    for i in range(n):
        for j, d in enumerate(col_sizes):
            for t in range(d):
                comps.append(Proj(offsets[j] + i * d + t, n * total))
    return Morphism(n * total, n * total, tuple(comps))


def derive_sigma(theory2: TwoTheoryPresentation, sigma: SigmaTable,
                 f: Morphism, g: Morphism) -> Pasting:
    """Exchange cell row_then_col(f, g) => col_then_row(f, g) for arbitrary f, g.

    Inert factors contribute identities; composition peels argument stacks
    off the head operations; tuplings stack the per-factor cells with Par.
    """
    if is_inert(f) or is_inert(g):
        return Id(row_then_col(f, g))
    if not _is_plain_generator(f):
        u, heads = _decompose(f)
        head_cells = [derive_sigma(theory2, sigma, h, g) for h in heads]
        par_cell: Pasting = head_cells[0] if len(heads) == 1 else Par(tuple(head_cells))
        if is_inert(u):
            return HWhiskerL(power_right(u, g.source), par_cell)
        v = par(heads)
        return Vert(
            HWhiskerR(derive_sigma(theory2, sigma, u, g), power_right(v, g.target)),
            HWhiskerL(power_right(u, g.source), par_cell),
        )
    if not _is_plain_generator(g):
        u, heads = _decompose(g)
        if is_inert(u) and len(heads) > 1:
            return _row_par(theory2, sigma, f, u, heads)
        if is_inert(u):
            inner = _row_par(theory2, sigma, f, identity(heads[0].source), heads) \
                if len(heads) > 1 else derive_sigma(theory2, sigma, f, heads[0])
            return HWhiskerL(power_left(u, f.source), inner)
        v = par(heads)
        inner = _row_par(theory2, sigma, f, identity(v.source), heads) \
            if len(heads) > 1 else derive_sigma(theory2, sigma, f, heads[0])
        return Vert(
            HWhiskerL(power_left(u, f.source), inner),
            HWhiskerR(derive_sigma(theory2, sigma, f, u), power_left(v, f.target)),
        )
    a = f.components[0].op  # type: ignore[union-attr]
    b = g.components[0].op  # type: ignore[union-attr]
    entry = sigma.entry(a.name, b.name)
    if entry is None:
        if sigma.weakness == "strict":
            return Id(row_then_col(f, g))
        raise CellError(f"sigma table {sigma.name} has no entry for ({a.name}, {b.name})")
    return entry


def _row_par(theory2: TwoTheoryPresentation, sigma: SigmaTable,
             f: Morphism, u: Morphism, heads: list[Morphism]) -> Pasting:
    cells = tuple(derive_sigma(theory2, sigma, f, h) for h in heads)
    p_in = _regroup_in(f.source, [h.source for h in heads])
    p_out = _regroup_out(f.target, [h.target for h in heads])
    core: Pasting = Par(cells) if len(cells) > 1 else cells[0]
    inner = HWhiskerR(HWhiskerL(p_in, core), p_out)
    if is_inert(u) and u == identity(u.source):
        return inner
    return HWhiskerL(power_left(u, f.source), inner)


# -- relative equality of pastings ---------------------------------------------------

@dataclass(frozen=True)
class SyntacticallyEqual:
    pass


@dataclass(frozen=True)
class EqualOnProbes:
    probes: int


@dataclass(frozen=True)
class Distinguished:
    probe: int
    obj: int
    left: int
    right: int


RelativeVerdict = SyntacticallyEqual | EqualOnProbes | Distinguished


def _rewrite_with_cell_equations(p: Pasting, equations, budget: int) -> Pasting:
    def rewrite_once(q: Pasting) -> Pasting | None:
        for _, lhs, rhs in equations:
            if q == lhs:
                return rhs
            if q == rhs:
                return lhs
        if isinstance(q, Vert):
            for attr, other in (("first", q.second), ("second", q.first)):
                hit = rewrite_once(getattr(q, attr))
                if hit is not None:
                    return Vert(hit, other) if attr == "first" else Vert(other, hit)
        if isinstance(q, (HWhiskerL, HWhiskerR, PowerL, PowerR, Inverse)):
            hit = rewrite_once(q.inner)
            if hit is not None:
                if isinstance(q, HWhiskerL):
                    return HWhiskerL(q.left, hit)
                if isinstance(q, HWhiskerR):
                    return HWhiskerR(hit, q.right)
                if isinstance(q, PowerL):
                    return PowerL(q.k, hit)
                if isinstance(q, PowerR):
                    return PowerR(hit, q.k)
                return Inverse(hit)
        if isinstance(q, Par):
            for i, part in enumerate(q.parts):
                hit = rewrite_once(part)
                if hit is not None:
                    parts = list(q.parts)
                    parts[i] = hit
                    return Par(tuple(parts))
        return None

    seen = {p}
    for _ in range(budget):
        candidate = rewrite_once(p)
        if candidate is None or candidate in seen:
            break
        if _pasting_weight(candidate) <= _pasting_weight(p):
            p = candidate
            seen.add(p)
        else:
            break
    return p


def _pasting_weight(p: Pasting) -> int:
    if isinstance(p, (Id, Gen)):
        return 1
    if isinstance(p, Inverse):
        return 1 + _pasting_weight(p.inner)
    if isinstance(p, Vert):
        return 1 + _pasting_weight(p.first) + _pasting_weight(p.second)
    if isinstance(p, (HWhiskerL, HWhiskerR, PowerL, PowerR)):
        return 1 + _pasting_weight(p.inner)
    if isinstance(p, Par):
        return 1 + sum(_pasting_weight(q) for q in p.parts)
    raise CellError("unknown node")


def pastings_equal(theory2: TwoTheoryPresentation, p: Pasting, q: Pasting,
                   probes: list, budget: int = 10_000) -> RelativeVerdict:
    """Equality relative to probe models, with a syntactic fast path."""
    sp = _rewrite_with_cell_equations(simplify_pasting(p), theory2.cell_equations, budget)
    sq = _rewrite_with_cell_equations(simplify_pasting(q), theory2.cell_equations, budget)
    if sp == sq:
        return SyntacticallyEqual()
    for idx, model in enumerate(probes):
        np_ = pasting_components(p, model)
        nq = pasting_components(q, model)
        for o, (l, r) in enumerate(zip(np_, nq)):
            if l != r:
                return Distinguished(idx, o, l, r)
    return EqualOnProbes(len(probes))


# -- gray-style coherence instances ---------------------------------------------------

def gray2_row_instance(theory2: TwoTheoryPresentation, sigma: SigmaTable,
                       alpha: Morphism, t: Pasting) -> tuple[Pasting, Pasting]:
    """Naturality of the exchange cells against a 2-cell in the row slot."""
    beta_src = t.source()
    beta_tgt = t.target()
    m, n = alpha.source, alpha.target
    k, l = beta_src.source, beta_src.target
    lhs = Vert(
        HWhiskerR(PowerL(m, t), power_right(alpha, l)),
        derive_sigma(theory2, sigma, alpha, beta_tgt),
    )
    rhs = Vert(
        derive_sigma(theory2, sigma, alpha, beta_src),
        HWhiskerL(power_right(alpha, k), PowerL(n, t)),
    )
    return lhs, rhs


def gray2_column_instance(theory2: TwoTheoryPresentation, sigma: SigmaTable,
                          t: Pasting, beta: Morphism) -> tuple[Pasting, Pasting]:
    """Naturality of the exchange cells against a 2-cell in the column slot."""
    alpha_src = t.source()
    alpha_tgt = t.target()
    m, n = alpha_src.source, alpha_src.target
    k, l = beta.source, beta.target
    lhs = Vert(
        HWhiskerL(power_left(beta, m), PowerR(t, l)),
        derive_sigma(theory2, sigma, alpha_tgt, beta),
    )
    rhs = Vert(
        derive_sigma(theory2, sigma, alpha_src, beta),
        HWhiskerR(PowerR(t, k), power_left(beta, n)),
    )
    return lhs, rhs


def transpose_conjugate(p: Pasting, m: int, k: int, n: int, l: int) -> Pasting:
    """Re-read a cell on k x m matrices as a cell on m x k matrices."""
    return HWhiskerR(HWhiskerL(transpose(m, k), p), transpose(l, n))


@dataclass(frozen=True)
class CoherenceIssue:
    check: str
    detail: str
    verdict: RelativeVerdict | None


@dataclass(frozen=True)
class CoherenceReport:
    verdict: str  # Coherent | Incoherent
    checked: int
    issues: tuple[CoherenceIssue, ...]


def _basis_morphisms(theory2: TwoTheoryPresentation) -> list[Morphism]:
    return [generator_morphism(op) for op in theory2.base.basis_ops()]


def check_sigma_coherence(theory2: TwoTheoryPresentation, sigma: SigmaTable,
                          probes: list) -> CoherenceReport:
    issues: list[CoherenceIssue] = []
    checked = 0
    base = theory2.base
    basis = _basis_morphisms(theory2)

    # Entry typing: boundaries, strictness, invertibility.
    for (a, b), entry in sigma.entries:
        checked += 1
        want_src, want_tgt = sigma_boundaries(
            generator_morphism(base.op(a)), generator_morphism(base.op(b)))
        if not boundaries_agree(base, entry.source(), want_src) or \
           not boundaries_agree(base, entry.target(), want_tgt):
            issues.append(CoherenceIssue("entry-boundary", f"({a},{b})", None))
        if sigma.weakness == "strict" and not is_identity_pasting(entry):
            issues.append(CoherenceIssue("strict-entry", f"({a},{b}) is not an identity", None))
        if sigma.weakness in ("strict", "pseudo") and not is_invertible_pasting(entry):
            issues.append(CoherenceIssue("entry-invertible", f"({a},{b})", None))
    if issues:
        # A malformed table cannot be whiskered into the derived instances.
        return CoherenceReport("Incoherent", checked, tuple(issues))

    # Exchange against inert maps stays an identity.
    for g in basis:
        checked += 1
        cell = derive_sigma(theory2, sigma, identity(1), g)
        if not is_identity_pasting(simplify_pasting(cell)):
            issues.append(CoherenceIssue("unit-slot", f"sigma(id, {g!r}) not identity", None))

    # Compatibility of derived cells with the 1-cell equations (both slots).
    for eq in base.equations:
        for g in basis:
            for slot in ("column", "row"):
                checked += 1
                if slot == "column":
                    lhs = derive_sigma(theory2, sigma, eq.lhs, g)
                    rhs = derive_sigma(theory2, sigma, eq.rhs, g)
                else:
                    lhs = derive_sigma(theory2, sigma, g, eq.lhs)
                    rhs = derive_sigma(theory2, sigma, g, eq.rhs)
                v = pastings_equal(theory2, lhs, rhs, probes)
                if isinstance(v, Distinguished):
                    issues.append(CoherenceIssue(
                        f"gray1-{slot}", f"equation {eq.name} against {g!r}", v))

    # Naturality against every generating 2-cell (both slots).
    for cellsym in theory2.cells:
        t = Gen(cellsym)
        for g in basis:
            checked += 1
            lhs, rhs = gray2_column_instance(theory2, sigma, t, g)
            v = pastings_equal(theory2, lhs, rhs, probes)
            if isinstance(v, Distinguished):
                issues.append(CoherenceIssue(
                    "gray2-vertical", f"cell {cellsym.name} in column slot against {g!r}", v))
            checked += 1
            lhs, rhs = gray2_row_instance(theory2, sigma, g, t)
            v = pastings_equal(theory2, lhs, rhs, probes)
            if isinstance(v, Distinguished):
                issues.append(CoherenceIssue(
                    "gray2-horizontal", f"cell {cellsym.name} in row slot against {g!r}", v))

    if sigma.symmetric:
        for a in basis:
            for b in basis:
                checked += 1
                fwd = derive_sigma(theory2, sigma, a, b)
                bwd = transpose_conjugate(
                    derive_sigma(theory2, sigma, b, a),
                    a.source, b.source, a.target, b.target)
                roundtrip = Vert(fwd, bwd)
                v = pastings_equal(theory2, roundtrip, Id(fwd.source()), probes)
                if isinstance(v, Distinguished):
                    issues.append(CoherenceIssue(
                        "symmetry", f"sigma({b!r},{a!r}) o sigma({a!r},{b!r}) != id", v))

    verdict = "Coherent" if not issues else "Incoherent"
    return CoherenceReport(verdict, checked, tuple(issues))


def derived_associativity_check(theory2: TwoTheoryPresentation, sigma: SigmaTable,
                                probes: list) -> CoherenceReport:
    """Naturality of exchange cells against the exchange cells themselves.

    For coherent tables this must pass on every probe; a failure indicates
    an incoherent table or an engine defect.  Instantiated on a one-object
    carrier with a braiding table, the equation is the braid relation on
    three strands.
    """
    issues = []
    checked = 0
    basis = _basis_morphisms(theory2)
    for a in basis:
        for b in basis:
            s = derive_sigma(theory2, sigma, a, b)
            if is_identity_pasting(simplify_pasting(s)):
                continue
            for g in basis:
                checked += 1
                lhs, rhs = gray2_column_instance(theory2, sigma, s, g)
                v = pastings_equal(theory2, lhs, rhs, probes)
                if isinstance(v, Distinguished):
                    issues.append(CoherenceIssue(
                        "associativity", f"triple ({a!r},{b!r},{g!r})", v))
    verdict = "Coherent" if not issues else "Incoherent"
    return CoherenceReport(verdict, checked, tuple(issues))


# -- direct braiding checks on a monoidal model ----------------------------------------

@dataclass(frozen=True)
class BraidIssue:
    check: str
    triple: tuple[int, ...]


@dataclass(frozen=True)
class BraidReport:
    verdict: str
    triples_checked: int
    issues: tuple[BraidIssue, ...]


def yang_baxter_check(model, tensor_op: str = "m", braiding_cell: str = "b") -> BraidReport:
    """Hexagon and braid-relation scan over all object triples of the carrier.

    The braiding component at objects (x, y) is an arrow x@y -> y@x; the
    hexagons expand the braiding of a tensor product, and the braid relation
    compares the two rebracketings of the three-strand crossing.
    """
    cat = model.carrier
    tensor = model.op_functor(tensor_op)
    braid = model.cell_nat(braiding_cell)
    sq = model.power(2)

    def t_obj(x, y):
        return tensor.obj_map[sq.encode_obj((x, y))]

    def t_arr(f, g):
        return tensor.arr_map[sq.encode_arr((f, g))]

    def c(x, y):
        return braid.components[sq.encode_obj((x, y))]

    issues = []
    count = 0
    objs = range(cat.n_objects)
    for x, y, z in itertools.product(objs, objs, objs):
        count += 1
        idx = cat.identity[x]
        idy = cat.identity[y]
        idz = cat.identity[z]
        # braiding a tensor out on the left: c(x@y, z) = (1x @ c(y,z)) then (c(x,z) @ 1y)
        lhs = c(t_obj(x, y), z)
        rhs = cat.then(t_arr(idx, c(y, z)), t_arr(c(x, z), idy))
        if lhs != rhs:
            issues.append(BraidIssue("hexagon-left", (x, y, z)))
        # braiding a tensor out on the right: c(x, y@z) = (c(x,y) @ 1z) then (1y @ c(x,z))
        lhs = c(x, t_obj(y, z))
        rhs = cat.then(t_arr(c(x, y), idz), t_arr(idy, c(x, z)))
        if lhs != rhs:
            issues.append(BraidIssue("hexagon-right", (x, y, z)))
        # braid relation on three strands
        lhs = cat.then(cat.then(t_arr(c(x, y), idz), t_arr(idy, c(x, z))), t_arr(c(y, z), idx))
        rhs = cat.then(cat.then(t_arr(idx, c(y, z)), t_arr(c(x, z), idy)), t_arr(idz, c(x, y)))
        if lhs != rhs:
            issues.append(BraidIssue("braid-relation", (x, y, z)))
    verdict = "Holds" if not issues else "Fails"
    return BraidReport(verdict, count, tuple(issues))


# -- commuting over another theory ------------------------------------------------------

@dataclass(frozen=True)
class TheoryMorphism:
    source: TheoryPresentation
    target: TheoryPresentation
    images: tuple[tuple[str, Morphism], ...]

    def image(self, name: str) -> Morphism:
        for n, f in self.images:
            if n == name:
                return f
        raise TheoryError(f"no image for generator {name}")

    def translate_morphism(self, f: Morphism) -> Morphism:
        comps = tuple(self._translate_term(c, f.source) for c in f.components)
        return Morphism(f.source, f.target, comps)

    def _translate_term(self, t, context: int):
        if isinstance(t, Proj):
            return t
        assert isinstance(t, Apply)
        args = tuple(self._translate_term(a, context) for a in t.args)
        image = self.image(t.op.name)
        stack = Morphism(context, len(args), args)
        return compose(stack, image).components[0]


def validate_theory_morphism(rho: TheoryMorphism, budget: int = 10_000,
                             model_bound: int = 3) -> list[str]:
    problems = []
    for g in rho.source.generators:
        img = rho.image(g.name)
        if (img.source, img.target) != (g.arity, 1):
            problems.append(f"image of {g.name} has the wrong shape")
    for eq in rho.source.equations:
        from .theory import Equal
        v = decide_equal(rho.target, rho.translate_morphism(eq.lhs),
                         rho.translate_morphism(eq.rhs), budget, model_bound)
        if not isinstance(v, Equal):
            problems.append(f"equation {eq.name} is not preserved")
    return problems


@dataclass(frozen=True)
class CommutingOverReport:
    verdict: str
    issues: tuple[str, ...]


def check_commuting_over(rho: TheoryMorphism, theory2_target: TwoTheoryPresentation,
                         mu_entries: SigmaTable, unit_name: str | None,
                         probes: list, budget: int = 10_000) -> CommutingOverReport:
    """Unit laws for a multiplication valued in another theory.

    The entry table types exchange cells over the rho-images; the unit laws
    ask each basis operation of the source to be unital against the unit
    after translation.
    """
    issues = list(validate_theory_morphism(rho))
    base = theory2_target.base
    for (a, b), entry in mu_entries.entries:
        fa = rho.image(a)
        fb = rho.image(b)
        want_src, want_tgt = sigma_boundaries(fa, fb)
        if not boundaries_agree(base, entry.source(), want_src) or \
           not boundaries_agree(base, entry.target(), want_tgt):
            issues.append(f"entry ({a},{b}) has the wrong boundary over the images")
    if unit_name is not None:
        from .theory import Equal, unit_insertion
        u_img = rho.image(unit_name)
        for g in rho.source.basis_ops():
            if g.arity <= 1:
                continue
            img = rho.image(g.name)
            for k in range(g.arity):
                composite = compose(unit_insertion(u_img, k, g.arity), img)
                v = decide_equal(base, composite, identity(1), budget)
                if not isinstance(v, Equal):
                    issues.append(f"unit law fails for {g.name} at position {k}")
    verdict = "Passes" if not issues else "Fails"
    return CommutingOverReport(verdict, tuple(issues))
