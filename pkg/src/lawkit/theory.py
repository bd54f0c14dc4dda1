"""Terms and morphisms of free single-sorted algebraic theories.

A morphism m -> n is an n-tuple of terms in m variables.  Contexts of size
m*k are read as m x k matrices stored row-major: entry (i, j) is variable
i*k + j.  All power/transpose bookkeeping in this package is derived from
that one convention:

  * ``power_left(f, k)``  ("k·f"): f applied to each of the k rows,
    k*m -> k*n.
  * ``power_right(f, k)`` ("f·k"): f applied to each of the k columns,
    m*k -> n*k.
  * ``transpose(m, k)``: the inert permutation m*k -> k*m re-reading the
    matrix column-major.

Equality of parallel morphisms is semi-decided: oriented rewriting with a
global termination guard, then counter-model search over small finite
models.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class TheoryError(Exception):
    """Malformed term, morphism, or presentation."""


@dataclass(frozen=True)
class OpSymbol:
    name: str
    arity: int

    def __post_init__(self):
        if self.arity < 0:
            raise TheoryError(f"negative arity for {self.name}")


@dataclass(frozen=True)
class Term:
    """Base class; concrete terms are Proj or Apply."""

    def size(self) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class Proj(Term):
    index: int
    context: int

    def __post_init__(self):
        if not 0 <= self.index < self.context:
            raise TheoryError(f"projection {self.index} outside context {self.context}")

    def size(self) -> int:
        return 1


@dataclass(frozen=True)
class Apply(Term):
    op: OpSymbol
    args: tuple[Term, ...]
    context: int

    def __post_init__(self):
        if len(self.args) != self.op.arity:
            raise TheoryError(f"{self.op.name} expects {self.op.arity} args, got {len(self.args)}")
        for a in self.args:
            if a.context != self.context:
                raise TheoryError(f"argument context mismatch under {self.op.name}")

    def size(self) -> int:
        return 1 + sum(a.size() for a in self.args)


def term_key(t: Term):
    """Total-order key: Proj < Apply, Proj by index, Apply by op name then args."""
    if isinstance(t, Proj):
        return (0, t.index)
    assert isinstance(t, Apply)
    return (1, t.op.name, tuple(term_key(a) for a in t.args))


def term_order(t: Term):
    return (t.size(), term_key(t))


def substitute(t: Term, args: tuple[Term, ...], context: int) -> Term:
    """Replace Proj(j) by args[j]; every args[j] must live in ``context``."""
    if isinstance(t, Proj):
        return args[t.index]
    assert isinstance(t, Apply)
    return Apply(t.op, tuple(substitute(a, args, context) for a in t.args), context)


@dataclass(frozen=True)
class Morphism:
    source: int
    target: int
    components: tuple[Term, ...]

    def __post_init__(self):
        if len(self.components) != self.target:
            raise TheoryError("component count != target")
        for c in self.components:
            if c.context != self.source:
                raise TheoryError("component context != source")

    def __repr__(self):
        return f"Morphism({self.source}->{self.target}, {[render_term(c) for c in self.components]})"


def render_term(t: Term) -> str:
    if isinstance(t, Proj):
        return f"x{t.index + 1}"
    assert isinstance(t, Apply)
    if not t.args:
        return t.op.name
    return f"{t.op.name}({', '.join(render_term(a) for a in t.args)})"


def identity(n: int) -> Morphism:
    return Morphism(n, n, tuple(Proj(i, n) for i in range(n)))


def proj_morphism(i: int, n: int) -> Morphism:
    return Morphism(n, 1, (Proj(i, n),))


def generator_morphism(op: OpSymbol) -> Morphism:
    n = op.arity
    return Morphism(n, 1, (Apply(op, tuple(Proj(i, n) for i in range(n)), n),))


def tupling(fs: list[Morphism]) -> Morphism:
    """Pair morphisms with a common source into one map onto the product."""
    if not fs:
        raise TheoryError("tupling of nothing needs an explicit source")
    src = fs[0].source
    if any(f.source != src for f in fs):
        raise TheoryError("tupling requires a common source")
    comps = tuple(c for f in fs for c in f.components)
    return Morphism(src, sum(f.target for f in fs), comps)


def compose(f: Morphism, g: Morphism) -> Morphism:
    """Diagrammatic composite: f then g, so eval(compose(f,g)) = eval(g) o eval(f)."""
    if f.target != g.source:
        raise TheoryError(f"compose mismatch: {f.target} != {g.source}")
    comps = tuple(substitute(c, f.components, f.source) for c in g.components)
    return Morphism(f.source, g.target, comps)


def par(fs: list[Morphism]) -> Morphism:
    """Juxtaposition f1 x ... x fk with consecutive variable blocks."""
    src = sum(f.source for f in fs)
    comps: list[Term] = []
    offset = 0
    for f in fs:
        args = tuple(Proj(offset + j, src) for j in range(f.source))
        comps.extend(substitute(c, args, src) for c in f.components)
        offset += f.source
    return Morphism(src, sum(f.target for f in fs), tuple(comps))


def operadic_compose(alpha: Morphism, betas: list[Morphism]) -> Morphism:
    """alpha(beta_1, ..., beta_n) = (beta_1 x ... x beta_n) then alpha."""
    if alpha.source != len(betas):
        raise TheoryError(f"operadic composition expects {alpha.source} arguments, got {len(betas)}")
    for b in betas:
        if b.target != 1:
            raise TheoryError("operadic arguments must have target 1")
    return compose(par(betas), alpha)


def power_left(f: Morphism, k: int) -> Morphism:
    """k·f: f applied to each of the k rows of a k x m matrix; k*m -> k*n."""
    m, n = f.source, f.target
    src = k * m
    comps: list[Term] = []
    for i in range(k):
        args = tuple(Proj(i * m + j, src) for j in range(m))
        comps.extend(substitute(c, args, src) for c in f.components)
    return Morphism(src, k * n, tuple(comps))


def power_right(f: Morphism, k: int) -> Morphism:
    """f·k: f applied to each of the k columns of an m x k matrix; m*k -> n*k."""
    m, n = f.source, f.target
    src = m * k
    comps: list[Term] = [None] * (n * k)  # type: ignore[list-item]
    for j in range(k):
        args = tuple(Proj(i * k + j, src) for i in range(m))
        for t, c in enumerate(f.components):
            comps[t * k + j] = substitute(c, args, src)
    return Morphism(src, n * k, tuple(comps))


def transpose(m: int, k: int) -> Morphism:
    """Inert iso m*k -> k*m reading an m x k matrix column-major."""
    src = m * k
    comps = tuple(Proj(i * k + j, src) for j in range(k) for i in range(m))
    return Morphism(src, k * m, comps)


def tensor_ops(f: Morphism, g: Morphism) -> Morphism:
    """Columns-then-rows composite m*k -> n*l: (f·k) then (n·g)."""
    return compose(power_right(f, g.source), power_left(g, f.target))


def col_then_row(f: Morphism, g: Morphism) -> Morphism:
    return tensor_ops(f, g)


def row_then_col(f: Morphism, g: Morphism) -> Morphism:
    """Rows-then-columns composite m*k -> n*l: (m·g) then (f·l)."""
    return compose(power_left(g, f.source), power_right(f, g.target))


def unit_insertion(u: Morphism, k: int, n: int) -> Morphism:
    """u_{k,n}: 1 -> n placing the variable at position k (0-based), u elsewhere."""
    if u.source != 0 or u.target != 1:
        raise TheoryError("unit must be a map 0 -> 1")
    comps = []
    for i in range(n):
        if i == k:
            comps.append(Proj(0, 1))
        else:
            comps.append(substitute(u.components[0], (), 1))
    return Morphism(1, n, tuple(comps))


def is_inert(f: Morphism) -> bool:
    """True when every component is a bare projection."""
    return all(isinstance(c, Proj) for c in f.components)


@dataclass(frozen=True)
class Equation:
    name: str
    lhs: Morphism
    rhs: Morphism

    def __post_init__(self):
        if (self.lhs.source, self.lhs.target) != (self.rhs.source, self.rhs.target):
            raise TheoryError(f"equation {self.name}: sides not parallel")


@dataclass(frozen=True)
class TheoryPresentation:
    """Generators, oriented equations, and a basis of active operations.

    Generator declaration order doubles as the precedence used by the
    term order, so the user controls rule orientation by declaration.
    """

    name: str
    generators: tuple[OpSymbol, ...]
    equations: tuple[Equation, ...] = ()
    basis: tuple[str, ...] | None = None

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise TheoryError("duplicate generator names")
        byname = {g.name: g for g in self.generators}
        for eq in self.equations:
            for side in (eq.lhs, eq.rhs):
                for c in side.components:
                    _check_ops_declared(c, byname)
        if self.basis is None:
            object.__setattr__(self, "basis", tuple(names))
        else:
            for b in self.basis:
                if b not in byname:
                    raise TheoryError(f"basis element {b} is not a generator")

    def op(self, name: str) -> OpSymbol:
        for g in self.generators:
            if g.name == name:
                return g
        raise TheoryError(f"unknown generator {name}")

    def basis_ops(self) -> list[OpSymbol]:
        return [self.op(b) for b in self.basis]

    def units(self) -> list[OpSymbol]:
        return [g for g in self.generators if g.arity == 0]

    def rewrite_rules(self) -> list[tuple[str, Term, Term]]:
        """Component-wise oriented rules (name, lhs pattern, rhs pattern)."""
        rules = []
        for eq in self.equations:
            for i, (l, r) in enumerate(zip(eq.lhs.components, eq.rhs.components)):
                suffix = "" if eq.lhs.target == 1 else f".{i}"
                rules.append((eq.name + suffix, l, r))
        return rules


def _check_ops_declared(t: Term, byname: dict[str, OpSymbol]) -> None:
    if isinstance(t, Apply):
        declared = byname.get(t.op.name)
        if declared is None or declared.arity != t.op.arity:
            raise TheoryError(f"equation uses undeclared operation {t.op.name}/{t.op.arity}")
        for a in t.args:
            _check_ops_declared(a, byname)


# -- rewriting ---------------------------------------------------------------

def match(pattern: Term, t: Term, binding: dict[int, Term]) -> dict[int, Term] | None:
    """First-order matching; pattern projections are (possibly repeated) metavariables."""
    if isinstance(pattern, Proj):
        bound = binding.get(pattern.index)
        if bound is None:
            out = dict(binding)
            out[pattern.index] = t
            return out
        return binding if bound == t else None
    assert isinstance(pattern, Apply)
    if not isinstance(t, Apply) or t.op != pattern.op:
        return None
    for pa, ta in zip(pattern.args, t.args):
        binding = match(pa, ta, binding)  # type: ignore[assignment]
        if binding is None:
            return None
    return binding


def subterm_at(t: Term, path: tuple[int, ...]) -> Term:
    for i in path:
        assert isinstance(t, Apply)
        t = t.args[i]
    return t


def replace_at(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    assert isinstance(t, Apply)
    i = path[0]
    args = list(t.args)
    args[i] = replace_at(args[i], path[1:], new)
    return Apply(t.op, tuple(args), t.context)


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    path: tuple[int, ...]
    before: Term
    after: Term


def _instantiate(rhs: Term, binding: dict[int, Term], context: int) -> Term:
    if isinstance(rhs, Proj):
        return binding[rhs.index]
    assert isinstance(rhs, Apply)
    return Apply(rhs.op, tuple(_instantiate(a, binding, context) for a in rhs.args), context)


def _try_rules_at(t: Term, sub: Term, path: tuple[int, ...],
                  rules: list[tuple[str, Term, Term]]) -> tuple[Term, RewriteStep] | None:
    for name, lhs, rhs in rules:
        binding = match(lhs, sub, {})
        if binding is None:
            continue
        if any(i not in binding for i in range(lhs.context)):
            # Rule introduces variables absent from its own lhs; skip.
            continue
        new_sub = _instantiate(rhs, binding, sub.context)
        # Termination guard: a step must strictly decrease the whole term.
        if term_order(new_sub) < term_order(sub):
            return replace_at(t, path, new_sub), RewriteStep(name, path, sub, new_sub)
    return None


def rewrite_once(t: Term, rules) -> tuple[Term, RewriteStep] | None:
    """Leftmost-innermost single step, or None at a normal form."""
    def walk(sub: Term, path: tuple[int, ...]):
        if isinstance(sub, Apply):
            for i, a in enumerate(sub.args):
                hit = walk(a, path + (i,))
                if hit is not None:
                    return hit
        return _try_rules_at(t, sub, path, rules)
    return walk(t, ())


def normalize(t: Term, rules, budget: int = 10_000) -> tuple[Term, list[RewriteStep], bool]:
    """Rewrite to a fixpoint; returns (normal form, trace, within_budget)."""
    trace: list[RewriteStep] = []
    for _ in range(budget):
        hit = rewrite_once(t, rules)
        if hit is None:
            return t, trace, True
        t, step = hit
        trace.append(step)
    return t, trace, False


def replay_trace(t: Term, trace: list[RewriteStep]) -> Term:
    for step in trace:
        if subterm_at(t, step.path) != step.before:
            raise TheoryError("trace does not replay")
        t = replace_at(t, step.path, step.after)
    return t


def normalize_morphism(theory: TheoryPresentation, f: Morphism,
                       budget: int = 10_000) -> tuple[Morphism, list[list[RewriteStep]], bool]:
    rules = theory.rewrite_rules()
    comps, traces, ok = [], [], True
    for c in f.components:
        nf, tr, within = normalize(c, rules, budget)
        comps.append(nf)
        traces.append(tr)
        ok = ok and within
    return Morphism(f.source, f.target, tuple(comps)), traces, ok


# -- equality decision --------------------------------------------------------

@dataclass(frozen=True)
class Equal:
    lhs_trace: tuple
    rhs_trace: tuple
    normal_form: Morphism


@dataclass(frozen=True)
class NotEqual:
    model: "object"           # finset.FinSetModel
    witness: tuple[int, ...]  # input tuple separating the two morphisms


@dataclass(frozen=True)
class Unknown:
    reason: str
    budget: int
    model_bound: int


EqualityVerdict = Equal | NotEqual | Unknown


def decide_equal(theory: TheoryPresentation, f: Morphism, g: Morphism,
                 budget: int = 10_000, model_bound: int = 4) -> EqualityVerdict:
    """Semi-decide f = g: join normal forms, else search for a separating model."""
    if (f.source, f.target) != (g.source, g.target):
        raise TheoryError("decide_equal needs parallel morphisms")
    nf, ftr, fok = normalize_morphism(theory, f, budget)
    ng, gtr, gok = normalize_morphism(theory, g, budget)
    if fok and gok and nf == ng:
        return Equal(tuple(tuple(t) for t in ftr), tuple(tuple(t) for t in gtr), nf)

    from . import finset
    for size in range(1, model_bound + 1):
        for model in finset.enumerate_models(theory, size):
            hit = finset.separating_input(model, f, g)
            if hit is not None:
                return NotEqual(model, hit)
    reason = "normal forms differ; no counter-model up to bound" if (fok and gok) \
        else "rewrite budget exhausted; no counter-model up to bound"
    return Unknown(reason, budget, model_bound)


# -- commutativity, unitality, Eckmann-Hilton preconditions -------------------

@dataclass(frozen=True)
class CommutativityReport:
    verdict: str                     # "Commutative" | "NotCommutative" | "Inconclusive"
    pairs: tuple[tuple[str, str, EqualityVerdict], ...]

    def pair(self, a: str, b: str) -> EqualityVerdict:
        for x, y, v in self.pairs:
            if (x, y) == (a, b):
                return v
        raise KeyError((a, b))


def commutativity_square(alpha: Morphism, beta: Morphism) -> tuple[Morphism, Morphism]:
    """The two composites whose equality is the commutation of alpha with beta."""
    return row_then_col(alpha, beta), col_then_row(alpha, beta)


def check_commutative(theory: TheoryPresentation, budget: int = 10_000,
                      model_bound: int = 4) -> CommutativityReport:
    pairs = []
    verdict = "Commutative"
    for a in theory.basis_ops():
        for b in theory.basis_ops():
            lhs, rhs = commutativity_square(generator_morphism(a), generator_morphism(b))
            v = decide_equal(theory, lhs, rhs, budget, model_bound)
            pairs.append((a.name, b.name, v))
            if isinstance(v, NotEqual):
                verdict = "NotCommutative"
            elif isinstance(v, Unknown) and verdict != "NotCommutative":
                verdict = "Inconclusive"
    return CommutativityReport(verdict, tuple(pairs))


def check_unital(theory: TheoryPresentation, alpha: OpSymbol, unit: OpSymbol,
                 budget: int = 10_000, model_bound: int = 4) -> dict[int, EqualityVerdict]:
    """Per insertion position: is alpha(u,...,x,...,u) = x?"""
    if alpha.arity <= 1:
        raise TheoryError("unitality is only defined for arity > 1")
    if unit.arity != 0:
        raise TheoryError("unit must be nullary")
    u = generator_morphism(unit)
    a = generator_morphism(alpha)
    out = {}
    for k in range(alpha.arity):
        composite = compose(unit_insertion(u, k, alpha.arity), a)
        out[k] = decide_equal(theory, composite, identity(1), budget, model_bound)
    return out


@dataclass(frozen=True)
class EhReport1d:
    passes: bool
    unit: str | None
    merged_units: tuple[tuple[str, str], ...]
    non_unital: tuple[str, ...]
    unary_basis: tuple[str, ...]


def eh_preconditions_1d(theory: TheoryPresentation, budget: int = 10_000,
                        model_bound: int = 4) -> EhReport1d:
    """Basis-level preconditions for the collapse of doubled models.

    Requires a prior Commutative verdict; any two nullary basis maps are
    first merged (a commutative theory admits at most one unit).
    """
    basis = theory.basis_ops()
    unary = tuple(g.name for g in basis if g.arity == 1)
    units = [g for g in basis if g.arity == 0]
    merged = []
    for u, v in itertools.combinations(units, 2):
        verdict = decide_equal(theory, generator_morphism(u), generator_morphism(v),
                               budget, model_bound)
        if isinstance(verdict, Equal):
            merged.append((u.name, v.name))
    unit = units[0].name if units else None
    non_unital = []
    for g in basis:
        if g.arity > 1:
            if not units:
                non_unital.append(g.name)
                continue
            verdicts = check_unital(theory, g, units[0], budget, model_bound)
            if not all(isinstance(v, Equal) for v in verdicts.values()):
                non_unital.append(g.name)
    passes = not unary and not non_unital
    return EhReport1d(passes, unit, tuple(merged), tuple(non_unital), unary)
