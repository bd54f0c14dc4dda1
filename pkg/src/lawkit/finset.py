"""Finite-set semantics: evaluation, validation, enumeration, matrix actions.

Carriers are initial segments 0..n-1.  Operation tables are flat tuples in
row-major argument order: args (a_0,...,a_{k-1}) index sum(a_i * n^(k-1-i)).
X^0 is the one-element set, so nullary tables have exactly one cell.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .theory import (
    Apply,
    CommutativityReport,
    Morphism,
    OpSymbol,
    Proj,
    Term,
    TheoryError,
    TheoryPresentation,
)


def table_index(args: tuple[int, ...], size: int) -> int:
    idx = 0
    for a in args:
        idx = idx * size + a
    return idx


def all_tuples(size: int, arity: int):
    return itertools.product(range(size), repeat=arity)


@dataclass(frozen=True)
class FinSetModel:
    theory: TheoryPresentation
    size: int
    tables: tuple[tuple[str, tuple[int, ...]], ...]  # generator order of the theory

    def table(self, name: str) -> tuple[int, ...]:
        for n, t in self.tables:
            if n == name:
                return t
        raise TheoryError(f"no table for {name}")

    def apply(self, op: str, args: tuple[int, ...]) -> int:
        return self.table(op)[table_index(args, self.size)]

    def eval_term(self, t: Term, env: tuple[int, ...]) -> int:
        if isinstance(t, Proj):
            return env[t.index]
        assert isinstance(t, Apply)
        return self.apply(t.op.name, tuple(self.eval_term(a, env) for a in t.args))

    def eval_morphism(self, f: Morphism, env: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(self.eval_term(c, env) for c in f.components)


@dataclass(frozen=True)
class Violation:
    equation: str
    env: tuple[int, ...]
    lhs_value: tuple[int, ...]
    rhs_value: tuple[int, ...]


def make_model(theory: TheoryPresentation, size: int,
               tables: dict[str, tuple[int, ...]]) -> FinSetModel:
    ordered = []
    for g in theory.generators:
        t = tables.get(g.name)
        if t is None or len(t) != size ** g.arity:
            raise TheoryError(f"table for {g.name} must have {size ** g.arity} cells")
        if any(not 0 <= v < size for v in t):
            raise TheoryError(f"table for {g.name} has out-of-range values")
        ordered.append((g.name, tuple(t)))
    return FinSetModel(theory, size, tuple(ordered))


def validate_model(theory: TheoryPresentation, size: int,
                   tables: dict[str, tuple[int, ...]]) -> FinSetModel | Violation:
    """Accept iff every equation holds on every input tuple."""
    model = make_model(theory, size, tables)
    for eq in theory.equations:
        for env in all_tuples(size, eq.lhs.source):
            lv = model.eval_morphism(eq.lhs, env)
            rv = model.eval_morphism(eq.rhs, env)
            if lv != rv:
                return Violation(eq.name, env, lv, rv)
    return model


def separating_input(model: FinSetModel, f: Morphism, g: Morphism) -> tuple[int, ...] | None:
    for env in all_tuples(model.size, f.source):
        if model.eval_morphism(f, env) != model.eval_morphism(g, env):
            return env
    return None


# -- model enumeration (backtracking over table cells) ------------------------

def _partial_eval(t: Term, env: tuple[int, ...], tables, size: int) -> int | None:
    if isinstance(t, Proj):
        return env[t.index]
    assert isinstance(t, Apply)
    args = []
    for a in t.args:
        v = _partial_eval(a, env, tables, size)
        if v is None:
            return None
        args.append(v)
    cell = tables[t.op.name][table_index(tuple(args), size)]
    return cell


def enumerate_models(theory: TheoryPresentation, size: int, cell_limit: int = 4 ** 4):
    """Yield every model of the given carrier size, in lexicographic table order.

    Cells are assigned one at a time; an equation instance prunes the branch
    as soon as both sides become defined and disagree.
    """
    if size < 1:
        raise TheoryError("carrier size must be >= 1")
    total_cells = sum(size ** g.arity for g in theory.generators)
    if total_cells > cell_limit:
        raise TheoryError(f"enumeration over {total_cells} cells exceeds limit {cell_limit}")

    tables: dict[str, list[int | None]] = {
        g.name: [None] * (size ** g.arity) for g in theory.generators
    }
    slots = [(g.name, i) for g in theory.generators for i in range(size ** g.arity)]
    instances = [
        (eq, env)
        for eq in theory.equations
        for env in all_tuples(size, eq.lhs.source)
    ]

    def consistent() -> bool:
        for eq, env in instances:
            for l, r in zip(eq.lhs.components, eq.rhs.components):
                lv = _partial_eval(l, env, tables, size)
                if lv is None:
                    continue
                rv = _partial_eval(r, env, tables, size)
                if rv is None:
                    continue
                if lv != rv:
                    return False
        return True

    def fill(pos: int):
        if pos == len(slots):
            yield make_model(theory, size,
                             {n: tuple(v for v in t) for n, t in tables.items()})  # type: ignore[misc]
            return
        name, i = slots[pos]
        for v in range(size):
            tables[name][i] = v
            if consistent():
                yield from fill(pos + 1)
        tables[name][i] = None

    yield from fill(0)


def canonical_filter(models: list[FinSetModel]) -> list[FinSetModel]:
    """Keep one representative per isomorphism class: the table-lex minimum."""
    out = []
    for m in models:
        flat = tuple(t for _, t in m.tables)
        best = flat
        for perm in itertools.permutations(range(m.size)):
            inv = [0] * m.size
            for i, p in enumerate(perm):
                inv[p] = i
            renamed = []
            for g in m.theory.generators:
                table = m.table(g.name)
                new = [0] * len(table)
                for args in all_tuples(m.size, g.arity):
                    pargs = tuple(perm[a] for a in args)
                    new[table_index(pargs, m.size)] = perm[table[table_index(args, m.size)]]
                renamed.append(tuple(new))
            best = min(best, tuple(renamed))
        if best == flat:
            out.append(m)
    return out


# -- homomorphisms -------------------------------------------------------------

@dataclass(frozen=True)
class ModelHom:
    source: FinSetModel
    target: FinSetModel
    mapping: tuple[int, ...]


def is_hom(source: FinSetModel, target: FinSetModel, mapping: tuple[int, ...]) -> bool:
    for g in source.theory.generators:
        for args in all_tuples(source.size, g.arity):
            lhs = mapping[source.apply(g.name, args)]
            rhs = target.apply(g.name, tuple(mapping[a] for a in args))
            if lhs != rhs:
                return False
    return True


def enumerate_homs(source: FinSetModel, target: FinSetModel) -> list[ModelHom]:
    if source.theory is not target.theory and source.theory.name != target.theory.name:
        raise TheoryError("hom endpoints live over different theories")
    out = []
    for mapping in itertools.product(range(target.size), repeat=source.size):
        if is_hom(source, target, mapping):
            out.append(ModelHom(source, target, mapping))
    return out


def compose_homs(f: ModelHom, g: ModelHom) -> ModelHom:
    if f.target != g.source:
        raise TheoryError("hom composition mismatch")
    return ModelHom(f.source, g.target, tuple(g.mapping[v] for v in f.mapping))


def power_model(model: FinSetModel, n: int) -> FinSetModel:
    """The n-th power: carrier size**n with pointwise operations.

    Elements encode tuples row-major: (a_0,...,a_{n-1}) -> sum a_i * size^(n-1-i).
    """
    size = model.size
    psize = size ** n

    def encode(tup: tuple[int, ...]) -> int:
        return table_index(tup, size)

    decode_cache = list(itertools.product(range(size), repeat=n))

    tables = {}
    for g in model.theory.generators:
        table = []
        for args in all_tuples(psize, g.arity):
            tuples = [decode_cache[a] for a in args]
            result = tuple(
                model.apply(g.name, tuple(t[i] for t in tuples)) for i in range(n)
            )
            table.append(encode(result))
        tables[g.name] = tuple(table)
    return make_model(model.theory, psize, tables)


# -- matrix actions and semantic commutativity ---------------------------------

@dataclass(frozen=True)
class MatrixView:
    rows: int
    cols: int
    entries: tuple[int, ...]  # row-major

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise TheoryError("matrix entry count mismatch")

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))


def _as_evaluator(model: FinSetModel, op: OpSymbol | Morphism):
    """Accept an operation symbol or any morphism with target 1."""
    if isinstance(op, Morphism):
        if op.target != 1:
            raise TheoryError("matrix actions need maps with target 1")
        return op.source, lambda args: model.eval_morphism(op, args)[0]
    return op.arity, lambda args: model.apply(op.name, args)


def act_left(model: FinSetModel, alpha: OpSymbol | Morphism,
             mat: MatrixView) -> tuple[int, ...]:
    """Apply alpha to each column; the matrix must have arity-many rows."""
    arity, evaluate = _as_evaluator(model, alpha)
    if mat.rows != arity:
        raise TheoryError("row count must equal the operation arity")
    return tuple(evaluate(mat.col(j)) for j in range(mat.cols))


def act_right(model: FinSetModel, mat: MatrixView,
              beta: OpSymbol | Morphism) -> tuple[int, ...]:
    """Apply beta to each row; the matrix must have arity-many columns."""
    arity, evaluate = _as_evaluator(model, beta)
    if mat.cols != arity:
        raise TheoryError("column count must equal the operation arity")
    return tuple(evaluate(mat.row(i)) for i in range(mat.rows))


@dataclass(frozen=True)
class SemanticCommutativityReport:
    verdict: str
    pairs: tuple[tuple[str, str, bool], ...]
    witness: tuple[str, str, MatrixView] | None


def semantic_commutativity_check(model: FinSetModel) -> SemanticCommutativityReport:
    """Column action then row action must equal row action then column action."""
    pairs = []
    witness = None
    for a in model.theory.basis_ops():
        for b in model.theory.basis_ops():
            ok = True
            for entries in all_tuples(model.size, a.arity * b.arity):
                mat = MatrixView(a.arity, b.arity, tuple(entries))
                via_cols = model.apply(b.name, act_left(model, a, mat))
                via_rows = model.apply(a.name, act_right(model, mat, b))
                if via_cols != via_rows:
                    ok = False
                    if witness is None:
                        witness = (a.name, b.name, mat)
                    break
            pairs.append((a.name, b.name, ok))
    verdict = "Passes" if all(ok for _, _, ok in pairs) else "Fails"
    return SemanticCommutativityReport(verdict, tuple(pairs), witness)


# -- uniqueness of the doubled structure ---------------------------------------

@dataclass(frozen=True)
class EhUniquenessReport:
    count: int
    unique: bool
    structures: tuple[tuple[tuple[str, tuple[int, ...]], ...], ...]


def eh_uniqueness_probe(theory: TheoryPresentation, model: FinSetModel,
                        size_bound: int = 3) -> EhUniquenessReport:
    """Count model structures on the same carrier whose operation tables are
    homomorphisms from the corresponding power models.

    Exactly one such structure (the pointwise lift) exists for theories that
    satisfy the one-dimensional collapse preconditions.
    """
    if model.size > size_bound:
        raise TheoryError(f"carrier {model.size} exceeds probe bound {size_bound}")
    candidates: list[list[tuple[int, ...]]] = []
    powers: dict[int, FinSetModel] = {}
    for g in theory.generators:
        if g.arity not in powers:
            powers[g.arity] = power_model(model, g.arity)
        homs = enumerate_homs(powers[g.arity], model)
        candidates.append([h.mapping for h in homs])
    structures = []
    for choice in itertools.product(*candidates):
        tables = {g.name: choice[i] for i, g in enumerate(theory.generators)}
        if isinstance(validate_model(theory, model.size, tables), FinSetModel):
            structures.append(tuple(sorted(tables.items())))
    return EhUniquenessReport(len(structures), len(structures) == 1, tuple(structures))


def syntactic_semantic_agreement(theory: TheoryPresentation, report: CommutativityReport,
                                 size: int) -> list[str]:
    """Return disagreement descriptions (empty = full agreement up to the size)."""
    from .theory import Equal
    problems = []
    for model in enumerate_models(theory, size):
        sem = semantic_commutativity_check(model)
        sem_by_pair = {(a, b): ok for a, b, ok in sem.pairs}
        for a, b, verdict in report.pairs:
            if isinstance(verdict, Equal) and not sem_by_pair[(a, b)]:
                problems.append(f"pair ({a},{b}) proved equal but fails semantically on {model.tables}")
        if report.verdict == "Commutative" and sem.verdict != "Passes":
            problems.append(f"theory commutative but model {model.tables} fails semantically")
    return problems
