"""Text format for presentations, exchange tables, models, and check suites.

Grammar sketch (comments run ``--`` to end of line, identifiers
``[a-zA-Z][a-zA-Z0-9_]*``, files use the ``.law`` extension):

    theory T {
      op m : 2 -> 1;
      basis m, u;
      eq assoc : m(m(x1,x2),x3) = m(x1,m(x2,x3));
      cell b : m => m . swap(1,2) invertible;
      celleq sq : vert(b, b) = id(m . m);          -- pasting equations
    }
    sigma S for T weakness pseudo symmetric {
      (m,m) = whiskR(par(id(x1), b, id(x1)), m(m(x1,x2),x3));
    }
    model M of T in finset { carrier 2; table m = [0,1,1,0]; table u = [0]; }
    model P of T in fincat {
      objects 2;
      arrow le : 0 -> 1;
      compose { le then le = le; }                  -- omit identity composites
      functor m { obj [0,0,0,1]; arr auto; }
      nat c auto;
    }
    model G of T in moncat {
      grading 2; scalars 2;
      tensor m; unit u;
      braiding c = [[0,0],[0,1]];
    }
    check commutative T;
    import "other.law";

Morphism expressions compose with ``.`` in function order (``m . swap(1,2)``
applies the swap first).  A morphism may carry an explicit source context as
``[n]``; otherwise the context is the largest variable index mentioned.  The
serializer always writes the explicit form, making serialize-then-parse the
identity and parse-then-serialize idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import fincat
from .catmodels import CatModel
from .cells import (
    Gen,
    HWhiskerL,
    HWhiskerR,
    Id,
    Inverse,
    Par,
    Pasting,
    PowerL,
    PowerR,
    SigmaTable,
    TwoCellSymbol,
    TwoTheoryPresentation,
    Vert,
)
from .finset import FinSetModel, validate_model
from .fincat import FinCategory, FinFunctor, FinNat, build_category, graded_scalar_category
from .theory import (
    Apply,
    Equation,
    Morphism,
    OpSymbol,
    Proj,
    Term,
    TheoryPresentation,
    compose,
    identity,
)


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}"


@dataclass
class SourceFile:
    path: str
    text: str
    diagnostics: list[Diagnostic] = field(default_factory=list)


class ParseError(Exception):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"{line}:{col}: {message}")
        self.diagnostic = Diagnostic(line, col, message)


# -- declarations kept for serialization ------------------------------------------------

@dataclass(frozen=True)
class FinSetDecl:
    size: int
    tables: tuple[tuple[str, tuple[int, ...]], ...]


@dataclass(frozen=True)
class FunctorDecl:
    name: str
    obj: tuple[int, ...]
    arr: tuple[int, ...] | None  # None = derive into a thin target


@dataclass(frozen=True)
class NatDecl:
    name: str
    components: tuple[int, ...] | None  # None = unique arrows in a thin target


@dataclass(frozen=True)
class FinCatDecl:
    objects: int
    arrows: tuple[tuple[str, int, int], ...]
    composites: tuple[tuple[str, str, str], ...]
    functors: tuple[FunctorDecl, ...]
    nats: tuple[NatDecl, ...]


@dataclass(frozen=True)
class MonCatDecl:
    grading: int
    scalars: int
    tensor: str | None
    unit: str | None
    braidings: tuple[tuple[str, tuple[tuple[int, ...], ...]], ...]
    functors: tuple[FunctorDecl, ...]
    nats: tuple[NatDecl, ...]


@dataclass(frozen=True)
class ModelDecl:
    name: str
    theory: str
    kind: str  # finset | fincat | moncat
    payload: FinSetDecl | FinCatDecl | MonCatDecl


@dataclass(frozen=True)
class Document:
    theories: tuple[TwoTheoryPresentation, ...] = ()
    sigmas: tuple[tuple[str, SigmaTable], ...] = ()  # (for-theory, table)
    models: tuple[ModelDecl, ...] = ()
    checks: tuple[tuple[str, tuple[str, ...]], ...] = ()

    def theory(self, name: str) -> TwoTheoryPresentation:
        for t in self.theories:
            if t.base.name == name:
                return t
        raise KeyError(f"no theory named {name}")

    def sigma(self, name: str) -> tuple[str, SigmaTable]:
        for for_theory, s in self.sigmas:
            if s.name == name:
                return for_theory, s
        raise KeyError(f"no sigma table named {name}")

    def model_decl(self, name: str) -> ModelDecl:
        for m in self.models:
            if m.name == name:
                return m
        raise KeyError(f"no model named {name}")

    def finset_model(self, name: str) -> FinSetModel:
        decl = self.model_decl(name)
        if decl.kind != "finset":
            raise KeyError(f"{name} is not a finite-set model")
        theory2 = self.theory(decl.theory)
        assert isinstance(decl.payload, FinSetDecl)
        result = validate_model(theory2.base, decl.payload.size, dict(decl.payload.tables))
        if not isinstance(result, FinSetModel):
            raise ValueError(f"model {name} violates {result.equation} at {result.env}")
        return result

    def cat_model(self, name: str) -> CatModel:
        decl = self.model_decl(name)
        theory2 = self.theory(decl.theory)
        if decl.kind == "fincat":
            return _elaborate_fincat(theory2, decl.payload)  # type: ignore[arg-type]
        if decl.kind == "moncat":
            return _elaborate_moncat(theory2, decl.payload)  # type: ignore[arg-type]
        raise KeyError(f"{name} is not a categorical model")


# -- tokenizer ----------------------------------------------------------------------------

_PUNCT = ("->", "=>", "{", "}", "(", ")", "[", "]", "<", ">", ",", ";", ":", ".", "=")


@dataclass(frozen=True)
class Token:
    kind: str  # ident | nat | punct | string | eof
    value: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    i = 0
    line, col = 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise ParseError(line, col, "unterminated string")
            out.append(Token("string", text[i + 1:j], line, col))
            col += j - i + 1
            i = j + 1
            continue
        matched = False
        for p in _PUNCT:
            if text.startswith(p, i):
                out.append(Token("punct", p, line, col))
                i += len(p)
                col += len(p)
                matched = True
                break
        if matched:
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("nat", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(line, col, f"unexpected character {c!r}")
    out.append(Token("eof", "", line, col))
    return out


# -- parser --------------------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def fail(self, message: str):
        t = self.peek()
        raise ParseError(t.line, t.col, message)

    def expect(self, kind: str, value: str | None = None) -> Token:
        t = self.peek()
        if t.kind != kind or (value is not None and t.value != value):
            want = value if value is not None else kind
            self.fail(f"expected {want!r}, found {t.value!r}")
        return self.next()

    def accept(self, kind: str, value: str | None = None) -> Token | None:
        t = self.peek()
        if t.kind == kind and (value is None or t.value == value):
            return self.next()
        return None

    def nat(self) -> int:
        return int(self.expect("nat").value)

    def ident(self) -> str:
        return self.expect("ident").value

    def nat_list(self) -> tuple[int, ...]:
        self.expect("punct", "[")
        out = []
        if not self.accept("punct", "]"):
            out.append(self.nat())
            while self.accept("punct", ","):
                out.append(self.nat())
            self.expect("punct", "]")
        return tuple(out)

    def nat_matrix(self) -> tuple[tuple[int, ...], ...]:
        self.expect("punct", "[")
        rows = [self.nat_list()]
        while self.accept("punct", ","):
            rows.append(self.nat_list())
        self.expect("punct", "]")
        return tuple(rows)


# -- morphism expressions -------------------------------------------------------------------

@dataclass(frozen=True)
class _RawTerm:
    head: str | int  # op name, or variable index for projections
    args: tuple["_RawTerm", ...] = ()

    def max_var(self) -> int:
        if isinstance(self.head, int):
            return self.head + 1
        return max((a.max_var() for a in self.args), default=0)


@dataclass(frozen=True)
class _RawAtom:
    kind: str  # terms | swap | id
    terms: tuple[_RawTerm, ...] = ()
    a: int = 0
    b: int = 0
    context: int | None = None


def _parse_raw_term(p: _Parser, ops: dict[str, int]) -> _RawTerm:
    name = p.ident()
    if len(name) > 1 and name[0] in "xp" and name[1:].isdigit():
        return _RawTerm(int(name[1:]) - 1)
    if name not in ops:
        p.fail(f"unknown operation {name!r}")
    args = []
    if p.accept("punct", "("):
        if not p.accept("punct", ")"):
            args.append(_parse_raw_term(p, ops))
            while p.accept("punct", ","):
                args.append(_parse_raw_term(p, ops))
            p.expect("punct", ")")
    if len(args) != ops[name]:
        p.fail(f"{name} expects {ops[name]} arguments, got {len(args)}")
    return _RawTerm(name, tuple(args))


def _parse_atom(p: _Parser, ops: dict[str, int]) -> _RawAtom:
    context = None
    if p.peek().kind == "punct" and p.peek().value == "[":
        p.next()
        context = p.nat()
        p.expect("punct", "]")
    t = p.peek()
    if t.kind == "punct" and t.value == "<":
        p.next()
        terms = [_parse_raw_term(p, ops)]
        while p.accept("punct", ","):
            terms.append(_parse_raw_term(p, ops))
        p.expect("punct", ">")
        return _RawAtom("terms", tuple(terms), context=context)
    if t.kind == "ident" and t.value == "swap":
        p.next()
        p.expect("punct", "(")
        a = p.nat()
        p.expect("punct", ",")
        b = p.nat()
        p.expect("punct", ")")
        return _RawAtom("swap", a=a - 1, b=b - 1, context=context)
    if t.kind == "ident" and t.value == "id":
        save = p.pos
        p.next()
        p.expect("punct", "(")
        if p.peek().kind == "nat":
            n = p.nat()
            p.expect("punct", ")")
            return _RawAtom("id", a=n, context=context)
        p.pos = save
    return _RawAtom("terms", (_parse_raw_term(p, ops),), context=context)


def _elaborate_term(raw: _RawTerm, by_name: dict[str, OpSymbol], context: int) -> Term:
    if isinstance(raw.head, int):
        if raw.head >= context:
            raise ParseError(0, 0, f"variable x{raw.head + 1} outside context {context}")
        return Proj(raw.head, context)
    op = by_name[raw.head]
    return Apply(op, tuple(_elaborate_term(a, by_name, context) for a in raw.args), context)


def _atom_to_morphism(atom: _RawAtom, by_name: dict[str, OpSymbol],
                      forced_source: int | None) -> Morphism:
    if atom.kind == "swap":
        n = atom.context if atom.context is not None else forced_source
        if n is None:
            n = max(atom.a, atom.b) + 1
        comps = list(range(n))
        comps[atom.a], comps[atom.b] = comps[atom.b], comps[atom.a]
        return Morphism(n, n, tuple(Proj(i, n) for i in comps))
    if atom.kind == "id":
        return identity(atom.a)
    ctx = atom.context
    if ctx is None:
        ctx = max((t.max_var() for t in atom.terms), default=0)
        if forced_source is not None:
            ctx = max(ctx, forced_source)
    comps = tuple(_elaborate_term(t, by_name, ctx) for t in atom.terms)
    return Morphism(ctx, len(atom.terms), comps)


def parse_morphism_expr(p: _Parser, base_ops: list[OpSymbol],
                        source_hint: int | None = None) -> Morphism:
    """A chain a1 . a2 . ... . ak applies the rightmost atom first."""
    ops = {g.name: g.arity for g in base_ops}
    by_name = {g.name: g for g in base_ops}
    atoms = [_parse_atom(p, ops)]
    while p.accept("punct", "."):
        atoms.append(_parse_atom(p, ops))
    atoms.reverse()  # rightmost first
    morphs: list[Morphism] = []
    forced = source_hint
    for i, atom in enumerate(atoms):
        m = _atom_to_morphism(atom, by_name, forced)
        morphs.append(m)
        forced = None
    # thread: swap atoms later in the chain take their size from the feed
    out = morphs[0]
    for i, atom in enumerate(atoms[1:], start=1):
        m = morphs[i]
        if atom.kind == "swap" and atom.context is None and m.source != out.target:
            m = _atom_to_morphism(atom, by_name, out.target)
        out = compose(out, m)
    return out


def _parse_pasting(p: _Parser, theory2_cells: dict[str, TwoCellSymbol],
                   base_ops: list[OpSymbol]) -> Pasting:
    t = p.peek()
    if t.kind != "ident":
        p.fail("expected a pasting expression")
    name = t.value
    if name == "id":
        p.next()
        p.expect("punct", "(")
        m = parse_morphism_expr(p, base_ops)
        p.expect("punct", ")")
        return Id(m)
    if name == "inv":
        p.next()
        p.expect("punct", "(")
        inner = _parse_pasting(p, theory2_cells, base_ops)
        p.expect("punct", ")")
        return Inverse(inner)
    if name == "vert":
        p.next()
        p.expect("punct", "(")
        a = _parse_pasting(p, theory2_cells, base_ops)
        p.expect("punct", ",")
        b = _parse_pasting(p, theory2_cells, base_ops)
        p.expect("punct", ")")
        return Vert(a, b)
    if name == "whiskL":
        p.next()
        p.expect("punct", "(")
        m = parse_morphism_expr(p, base_ops)
        p.expect("punct", ",")
        inner = _parse_pasting(p, theory2_cells, base_ops)
        p.expect("punct", ")")
        return HWhiskerL(m, inner)
    if name == "whiskR":
        p.next()
        p.expect("punct", "(")
        inner = _parse_pasting(p, theory2_cells, base_ops)
        p.expect("punct", ",")
        m = parse_morphism_expr(p, base_ops)
        p.expect("punct", ")")
        return HWhiskerR(inner, m)
    if name == "powL":
        p.next()
        p.expect("punct", "(")
        k = p.nat()
        p.expect("punct", ",")
        inner = _parse_pasting(p, theory2_cells, base_ops)
        p.expect("punct", ")")
        return PowerL(k, inner)
    if name == "powR":
        p.next()
        p.expect("punct", "(")
        inner = _parse_pasting(p, theory2_cells, base_ops)
        p.expect("punct", ",")
        k = p.nat()
        p.expect("punct", ")")
        return PowerR(inner, k)
    if name == "par":
        p.next()
        p.expect("punct", "(")
        parts = [_parse_pasting(p, theory2_cells, base_ops)]
        while p.accept("punct", ","):
            parts.append(_parse_pasting(p, theory2_cells, base_ops))
        p.expect("punct", ")")
        return Par(tuple(parts))
    if name in theory2_cells:
        p.next()
        return Gen(theory2_cells[name])
    p.fail(f"unknown pasting combinator or cell {name!r}")


# -- block parsers ----------------------------------------------------------------------------

def _parse_theory(p: _Parser) -> TwoTheoryPresentation:
    name = p.ident()
    p.expect("punct", "{")
    ops: list[OpSymbol] = []
    basis: tuple[str, ...] | None = None
    equations: list[Equation] = []
    cells: dict[str, TwoCellSymbol] = {}
    cell_equations = []
    while not p.accept("punct", "}"):
        kw = p.ident()
        if kw == "op":
            op_name = p.ident()
            p.expect("punct", ":")
            arity = p.nat()
            p.expect("punct", "->")
            target = p.nat()
            if target != 1:
                p.fail("operations must target 1")
            ops.append(OpSymbol(op_name, arity))
            p.expect("punct", ";")
        elif kw == "basis":
            names = [p.ident()]
            while p.accept("punct", ","):
                names.append(p.ident())
            basis = tuple(names)
            p.expect("punct", ";")
        elif kw == "eq":
            eq_name = p.ident()
            p.expect("punct", ":")
            lhs = parse_morphism_expr(p, ops)
            p.expect("punct", "=")
            rhs = parse_morphism_expr(p, ops)
            p.expect("punct", ";")
            lhs, rhs = _pad_parallel(lhs, rhs)
            equations.append(Equation(eq_name, lhs, rhs))
        elif kw == "cell":
            cell_name = p.ident()
            p.expect("punct", ":")
            src = parse_morphism_expr(p, ops)
            p.expect("punct", "=>")
            tgt = parse_morphism_expr(p, ops)
            invertible = bool(p.accept("ident", "invertible"))
            p.expect("punct", ";")
            src, tgt = _pad_parallel(src, tgt)
            cells[cell_name] = TwoCellSymbol(cell_name, src, tgt, invertible)
        elif kw == "celleq":
            ce_name = p.ident()
            p.expect("punct", ":")
            lhs_p = _parse_pasting(p, cells, ops)
            p.expect("punct", "=")
            rhs_p = _parse_pasting(p, cells, ops)
            p.expect("punct", ";")
            cell_equations.append((ce_name, lhs_p, rhs_p))
        else:
            p.fail(f"unknown theory item {kw!r}")
    base = TheoryPresentation(name, tuple(ops), tuple(equations), basis)
    return TwoTheoryPresentation(base, tuple(cells.values()), tuple(cell_equations))


def _pad_parallel(lhs: Morphism, rhs: Morphism) -> tuple[Morphism, Morphism]:
    if lhs.source == rhs.source:
        return lhs, rhs
    ctx = max(lhs.source, rhs.source)
    return _repad(lhs, ctx), _repad(rhs, ctx)


def _repad(m: Morphism, ctx: int) -> Morphism:
    if m.source == ctx:
        return m
    widen = Morphism(ctx, m.source, tuple(Proj(i, ctx) for i in range(m.source)))
    return compose(widen, m)


def _parse_sigma(p: _Parser, theories: list[TwoTheoryPresentation]) -> tuple[str, SigmaTable]:
    name = p.ident()
    p.expect("ident", "for")
    theory_name = p.ident()
    theory2 = None
    for t in theories:
        if t.base.name == theory_name:
            theory2 = t
    if theory2 is None:
        p.fail(f"sigma table references unknown theory {theory_name!r}")
    p.expect("ident", "weakness")
    weakness = p.ident()
    symmetric = bool(p.accept("ident", "symmetric"))
    p.expect("punct", "{")
    entries = []
    cells = {c.name: c for c in theory2.cells}
    ops = list(theory2.base.generators)
    while not p.accept("punct", "}"):
        p.expect("punct", "(")
        a = p.ident()
        p.expect("punct", ",")
        b = p.ident()
        p.expect("punct", ")")
        p.expect("punct", "=")
        pasting = _parse_pasting(p, cells, ops)
        p.expect("punct", ";")
        entries.append(((a, b), pasting))
    return theory_name, SigmaTable(name, weakness, tuple(entries), symmetric)


def _parse_model(p: _Parser, theories: list[TwoTheoryPresentation]) -> ModelDecl:
    name = p.ident()
    p.expect("ident", "of")
    theory_name = p.ident()
    if not any(t.base.name == theory_name for t in theories):
        p.fail(f"model references unknown theory {theory_name!r}")
    p.expect("ident", "in")
    kind = p.ident()
    p.expect("punct", "{")
    if kind == "finset":
        size = None
        tables = []
        while not p.accept("punct", "}"):
            kw = p.ident()
            if kw == "carrier":
                size = p.nat()
                p.expect("punct", ";")
            elif kw == "table":
                tname = p.ident()
                p.expect("punct", "=")
                tables.append((tname, p.nat_list()))
                p.expect("punct", ";")
            else:
                p.fail(f"unknown finset item {kw!r}")
        if size is None:
            p.fail("finset model needs a carrier")
        return ModelDecl(name, theory_name, "finset", FinSetDecl(size, tuple(tables)))
    if kind == "fincat":
        objects = 0
        arrows = []
        composites = []
        functors = []
        nats = []
        while not p.accept("punct", "}"):
            kw = p.ident()
            if kw == "objects":
                objects = p.nat()
                p.expect("punct", ";")
            elif kw == "arrow":
                aname = p.ident()
                p.expect("punct", ":")
                src = p.nat()
                p.expect("punct", "->")
                dst = p.nat()
                p.expect("punct", ";")
                arrows.append((aname, src, dst))
            elif kw == "compose":
                p.expect("punct", "{")
                while not p.accept("punct", "}"):
                    f = p.ident()
                    p.expect("ident", "then")
                    g = p.ident()
                    p.expect("punct", "=")
                    h = p.ident()
                    p.expect("punct", ";")
                    composites.append((f, g, h))
            elif kw == "functor":
                functors.append(_parse_functor_decl(p))
            elif kw == "nat":
                nats.append(_parse_nat_decl(p))
            else:
                p.fail(f"unknown fincat item {kw!r}")
        return ModelDecl(name, theory_name, "fincat",
                         FinCatDecl(objects, tuple(arrows), tuple(composites),
                                    tuple(functors), tuple(nats)))
    if kind == "moncat":
        grading = 1
        scalars = 1
        tensor = None
        unit = None
        braidings = []
        functors = []
        nats = []
        while not p.accept("punct", "}"):
            kw = p.ident()
            if kw == "grading":
                grading = p.nat()
                p.expect("punct", ";")
            elif kw == "scalars":
                scalars = p.nat()
                p.expect("punct", ";")
            elif kw == "tensor":
                tensor = p.ident()
                p.expect("punct", ";")
            elif kw == "unit":
                unit = p.ident()
                p.expect("punct", ";")
            elif kw == "braiding":
                bname = p.ident()
                p.expect("punct", "=")
                braidings.append((bname, p.nat_matrix()))
                p.expect("punct", ";")
            elif kw == "functor":
                functors.append(_parse_functor_decl(p))
            elif kw == "nat":
                nats.append(_parse_nat_decl(p))
            else:
                p.fail(f"unknown moncat item {kw!r}")
        return ModelDecl(name, theory_name, "moncat",
                         MonCatDecl(grading, scalars, tensor, unit,
                                    tuple(braidings), tuple(functors), tuple(nats)))
    p.fail(f"unknown model kind {kind!r}")
    raise AssertionError


def _parse_functor_decl(p: _Parser) -> FunctorDecl:
    fname = p.ident()
    p.expect("punct", "{")
    obj = None
    arr: tuple[int, ...] | None = None
    auto = False
    while not p.accept("punct", "}"):
        kw = p.ident()
        if kw == "obj":
            obj = p.nat_list()
            p.expect("punct", ";")
        elif kw == "arr":
            if p.accept("ident", "auto"):
                auto = True
            else:
                arr = p.nat_list()
            p.expect("punct", ";")
        else:
            p.fail(f"unknown functor item {kw!r}")
    if obj is None:
        p.fail(f"functor {fname} needs an object table")
    return FunctorDecl(fname, obj, None if auto else (arr if arr is not None else ()))


def _parse_nat_decl(p: _Parser) -> NatDecl:
    nname = p.ident()
    if p.accept("ident", "auto"):
        p.expect("punct", ";")
        return NatDecl(nname, None)
    p.expect("punct", "=")
    comps = p.nat_list()
    p.expect("punct", ";")
    return NatDecl(nname, comps)


def parse(text: str, path: str = "<string>",
          loader=None) -> tuple[Document | None, SourceFile]:
    """Parse a document; diagnostics are collected in the returned SourceFile."""
    source = SourceFile(path, text)
    try:
        tokens = tokenize(text)
        p = _Parser(tokens)
        theories: list[TwoTheoryPresentation] = []
        sigmas: list[tuple[str, SigmaTable]] = []
        models: list[ModelDecl] = []
        checks: list[tuple[str, tuple[str, ...]]] = []
        while p.peek().kind != "eof":
            kw = p.ident()
            if kw == "theory":
                theories.append(_parse_theory(p))
            elif kw == "sigma":
                sigmas.append(_parse_sigma(p, theories))
            elif kw == "model":
                models.append(_parse_model(p, theories))
            elif kw == "check":
                kind = p.ident()
                args = []
                while not p.accept("punct", ";"):
                    args.append(p.ident())
                checks.append((kind, tuple(args)))
            elif kw == "import":
                fname = p.expect("string").value
                p.expect("punct", ";")
                if loader is None:
                    p.fail("imports need a loader")
                sub_doc = loader(fname)
                theories.extend(sub_doc.theories)
                sigmas.extend(sub_doc.sigmas)
                models.extend(sub_doc.models)
                checks.extend(sub_doc.checks)
            else:
                p.fail(f"unknown top-level keyword {kw!r}")
        return Document(tuple(theories), tuple(sigmas), tuple(models), tuple(checks)), source
    except ParseError as e:
        source.diagnostics.append(e.diagnostic)
        return None, source


def parse_file(path) -> tuple[Document | None, SourceFile]:
    from pathlib import Path
    path = Path(path)

    def loader(fname: str) -> Document:
        doc, src = parse_file(path.parent / fname)
        if doc is None:
            raise ParseError(src.diagnostics[0].line, src.diagnostics[0].col,
                             f"{fname}: {src.diagnostics[0].message}")
        return doc

    text = path.read_text(encoding="utf-8")
    source = SourceFile(str(path), text)
    try:
        tokens = tokenize(text)
    except ParseError as e:
        source.diagnostics.append(e.diagnostic)
        return None, source
    doc, sub = parse(text, str(path), loader=loader)
    source.diagnostics.extend(sub.diagnostics)
    return doc, source


# -- elaboration of categorical model blocks -----------------------------------------------

def _elaborate_fincat(theory2: TwoTheoryPresentation, decl: FinCatDecl) -> CatModel:
    n = decl.objects
    names = [f"id{a}" for a in range(n)] + [a for a, _, _ in decl.arrows]
    if len(set(names)) != len(names):
        raise ValueError("duplicate arrow names")
    src = list(range(n)) + [s for _, s, _ in decl.arrows]
    dst = list(range(n)) + [d for _, _, d in decl.arrows]
    index = {nm: i for i, nm in enumerate(names)}
    comp = {}
    for f, g, h in decl.composites:
        comp[(index[f], index[g])] = index[h]
    cat = build_category(n, src, dst, list(range(n)), comp)
    return _attach_tables(theory2, cat, decl.functors, decl.nats)


def _elaborate_moncat(theory2: TwoTheoryPresentation, decl: MonCatDecl) -> CatModel:
    cat = graded_scalar_category(decl.grading, decl.scalars)
    functors = list(decl.functors)
    nats = list(decl.nats)
    ops: list[tuple[str, FinFunctor]] = []
    cells: list[tuple[str, FinNat]] = []
    if decl.tensor is not None:
        sq = fincat.power(cat, 2)
        obj_map = tuple((x + y) % decl.grading
                        for o in range(sq.n_objects)
                        for x, y in [sq.decode_obj(o)])
        arr_map = []
        for a in range(sq.n_arrows):
            f, g = sq.decode_arr(a)
            x, s = divmod(f, decl.scalars)
            y, t = divmod(g, decl.scalars)
            arr_map.append(((x + y) % decl.grading) * decl.scalars
                           + (s + t) % decl.scalars)
        ops.append((decl.tensor, FinFunctor(sq.cat, cat, obj_map, tuple(arr_map))))
    if decl.unit is not None:
        ops.append((decl.unit, FinFunctor(fincat.power(cat, 0).cat, cat,
                                          (0,), (cat.identity[0],))))
    model = _attach_tables(theory2, cat, tuple(functors), tuple(nats), extra_ops=tuple(ops))
    if decl.braidings:
        sq = fincat.power(cat, 2)
        braid_cells = []
        for bname, rows in decl.braidings:
            cellsym = theory2.cell(bname)
            comps = []
            for o in range(sq.n_objects):
                x, y = sq.decode_obj(o)
                comps.append(((x + y) % decl.grading) * decl.scalars
                             + rows[x][y] % decl.scalars)
            braid_cells.append((bname, FinNat(model.functor_of(cellsym.source),
                                              model.functor_of(cellsym.target),
                                              tuple(comps))))
        model = CatModel(theory2, cat, model.op_functors,
                         model.cell_nats + tuple(braid_cells))
    return model


def _attach_tables(theory2: TwoTheoryPresentation, cat: FinCategory,
                   functors: tuple[FunctorDecl, ...], nats: tuple[NatDecl, ...],
                   extra_ops: tuple[tuple[str, FinFunctor], ...] = ()) -> CatModel:
    ops = list(extra_ops)
    have = {n for n, _ in ops}
    for decl in functors:
        op = theory2.base.op(decl.name)
        dom = fincat.power(cat, op.arity)
        if len(decl.obj) != dom.n_objects:
            raise ValueError(f"functor {decl.name}: object table has the wrong size")
        if decl.arr is None:
            arr = []
            for a in range(dom.n_arrows):
                hom = cat.hom(decl.obj[dom.arr_src(a)], decl.obj[dom.arr_dst(a)])
                if len(hom) != 1:
                    raise ValueError(f"functor {decl.name}: arrows are not forced; "
                                     "give an explicit table")
                arr.append(hom[0])
            arr = tuple(arr)
        else:
            arr = decl.arr
            if len(arr) != dom.n_arrows:
                raise ValueError(f"functor {decl.name}: arrow table has the wrong size")
        ops.append((decl.name, FinFunctor(dom.cat, cat, decl.obj, arr)))
        have.add(decl.name)
    for g in theory2.base.generators:
        if g.name not in have:
            raise ValueError(f"model gives no table for operation {g.name}")
    skeleton = CatModel(theory2, cat, tuple(ops))
    cells = []
    for decl in nats:
        cellsym = theory2.cell(decl.name)
        fsrc = skeleton.functor_of(cellsym.source)
        ftgt = skeleton.functor_of(cellsym.target)
        if decl.components is None:
            comps = []
            for o in range(fsrc.source.n_objects):
                hom = cat.hom(fsrc.obj_map[o], ftgt.obj_map[o])
                if len(hom) != 1:
                    raise ValueError(f"nat {decl.name}: components are not forced")
                comps.append(hom[0])
            comps = tuple(comps)
        else:
            comps = decl.components
        cells.append((decl.name, FinNat(fsrc, ftgt, comps)))
    return CatModel(theory2, cat, tuple(ops), tuple(cells))


# -- serializer -------------------------------------------------------------------------------

def render_term(t: Term) -> str:
    if isinstance(t, Proj):
        return f"x{t.index + 1}"
    assert isinstance(t, Apply)
    if not t.args:
        return t.op.name
    return f"{t.op.name}({', '.join(render_term(a) for a in t.args)})"


def render_morphism(m: Morphism) -> str:
    body = f"<{', '.join(render_term(c) for c in m.components)}>" \
        if m.target != 1 else render_term(m.components[0])
    return f"[{m.source}] {body}"


def render_pasting(p: Pasting) -> str:
    if isinstance(p, Id):
        return f"id({render_morphism(p.morphism)})"
    if isinstance(p, Gen):
        return p.cell.name
    if isinstance(p, Inverse):
        return f"inv({render_pasting(p.inner)})"
    if isinstance(p, Vert):
        return f"vert({render_pasting(p.first)}, {render_pasting(p.second)})"
    if isinstance(p, HWhiskerL):
        return f"whiskL({render_morphism(p.left)}, {render_pasting(p.inner)})"
    if isinstance(p, HWhiskerR):
        return f"whiskR({render_pasting(p.inner)}, {render_morphism(p.right)})"
    if isinstance(p, PowerL):
        return f"powL({p.k}, {render_pasting(p.inner)})"
    if isinstance(p, PowerR):
        return f"powR({render_pasting(p.inner)}, {p.k})"
    if isinstance(p, Par):
        return f"par({', '.join(render_pasting(q) for q in p.parts)})"
    raise ValueError(f"unknown pasting {p!r}")


def _render_list(xs) -> str:
    return "[" + ", ".join(str(x) for x in xs) + "]"


def serialize(doc: Document) -> str:
    out = []
    for t in doc.theories:
        out.append(f"theory {t.base.name} {{")
        for g in t.base.generators:
            out.append(f"  op {g.name} : {g.arity} -> 1;")
        if tuple(t.base.basis) != tuple(g.name for g in t.base.generators):
            out.append(f"  basis {', '.join(t.base.basis)};")
        for eq in t.base.equations:
            out.append(f"  eq {eq.name} : {render_morphism(eq.lhs)}"
                       f" = {render_morphism(eq.rhs)};")
        for c in t.cells:
            inv = " invertible" if c.invertible else ""
            out.append(f"  cell {c.name} : {render_morphism(c.source)}"
                       f" => {render_morphism(c.target)}{inv};")
        for name, lhs, rhs in t.cell_equations:
            out.append(f"  celleq {name} : {render_pasting(lhs)} = {render_pasting(rhs)};")
        out.append("}")
    for for_theory, s in doc.sigmas:
        sym = " symmetric" if s.symmetric else ""
        out.append(f"sigma {s.name} for {for_theory} weakness {s.weakness}{sym} {{")
        for (a, b), pasting in s.entries:
            out.append(f"  ({a}, {b}) = {render_pasting(pasting)};")
        out.append("}")
    for m in doc.models:
        out.append(f"model {m.name} of {m.theory} in {m.kind} {{")
        if isinstance(m.payload, FinSetDecl):
            out.append(f"  carrier {m.payload.size};")
            for tname, table in m.payload.tables:
                out.append(f"  table {tname} = {_render_list(table)};")
        elif isinstance(m.payload, FinCatDecl):
            out.append(f"  objects {m.payload.objects};")
            for aname, s_, d_ in m.payload.arrows:
                out.append(f"  arrow {aname} : {s_} -> {d_};")
            if m.payload.composites:
                out.append("  compose {")
                for f, g, h in m.payload.composites:
                    out.append(f"    {f} then {g} = {h};")
                out.append("  }")
            for f in m.payload.functors:
                out.append(_render_functor(f))
            for nd in m.payload.nats:
                out.append(_render_nat(nd))
        elif isinstance(m.payload, MonCatDecl):
            out.append(f"  grading {m.payload.grading};")
            out.append(f"  scalars {m.payload.scalars};")
            if m.payload.tensor is not None:
                out.append(f"  tensor {m.payload.tensor};")
            if m.payload.unit is not None:
                out.append(f"  unit {m.payload.unit};")
            for bname, rows in m.payload.braidings:
                body = ", ".join(_render_list(r) for r in rows)
                out.append(f"  braiding {bname} = [{body}];")
            for f in m.payload.functors:
                out.append(_render_functor(f))
            for nd in m.payload.nats:
                out.append(_render_nat(nd))
        out.append("}")
    for kind, args in doc.checks:
        out.append(f"check {kind} {' '.join(args)};")
    return "\n".join(out) + "\n"


def finset_model_decl(name: str, model: FinSetModel) -> ModelDecl:
    """Wrap a finite-set model as a declaration so it can be serialized."""
    return ModelDecl(name, model.theory.name, "finset",
                     FinSetDecl(model.size, model.tables))


def document_to_json(doc: Document) -> dict:
    """JSON form of a document, mirroring the block structure field by field."""
    def term_str(m: Morphism) -> str:
        return render_morphism(m)

    theories = []
    for t in doc.theories:
        theories.append({
            "name": t.base.name,
            "operations": [{"name": g.name, "arity": g.arity}
                           for g in t.base.generators],
            "basis": list(t.base.basis),
            "equations": [{"name": e.name, "lhs": term_str(e.lhs),
                           "rhs": term_str(e.rhs)} for e in t.base.equations],
            "cells": [{"name": c.name, "source": term_str(c.source),
                       "target": term_str(c.target), "invertible": c.invertible}
                      for c in t.cells],
            "cell_equations": [{"name": n, "lhs": render_pasting(l),
                                "rhs": render_pasting(r)}
                               for n, l, r in t.cell_equations],
        })
    sigmas = []
    for for_theory, s in doc.sigmas:
        sigmas.append({
            "name": s.name, "for": for_theory, "weakness": s.weakness,
            "symmetric": s.symmetric,
            "entries": [{"pair": [a, b], "pasting": render_pasting(p)}
                        for (a, b), p in s.entries],
        })
    models = []
    for m in doc.models:
        entry: dict = {"name": m.name, "theory": m.theory, "kind": m.kind}
        if isinstance(m.payload, FinSetDecl):
            entry["carrier"] = m.payload.size
            entry["tables"] = {n: list(t) for n, t in m.payload.tables}
        elif isinstance(m.payload, FinCatDecl):
            entry["objects"] = m.payload.objects
            entry["arrows"] = [{"name": n, "src": s_, "dst": d_}
                               for n, s_, d_ in m.payload.arrows]
            entry["composites"] = [list(c) for c in m.payload.composites]
            entry["functors"] = [{"name": f.name, "obj": list(f.obj),
                                  "arr": None if f.arr is None else list(f.arr)}
                                 for f in m.payload.functors]
            entry["nats"] = [{"name": nd.name,
                              "components": None if nd.components is None
                              else list(nd.components)}
                             for nd in m.payload.nats]
        elif isinstance(m.payload, MonCatDecl):
            entry["grading"] = m.payload.grading
            entry["scalars"] = m.payload.scalars
            entry["tensor"] = m.payload.tensor
            entry["unit"] = m.payload.unit
            entry["braidings"] = [{"name": n, "exponents": [list(r) for r in rows]}
                                  for n, rows in m.payload.braidings]
            entry["functors"] = [{"name": f.name, "obj": list(f.obj),
                                  "arr": None if f.arr is None else list(f.arr)}
                                 for f in m.payload.functors]
            entry["nats"] = [{"name": nd.name,
                              "components": None if nd.components is None
                              else list(nd.components)}
                             for nd in m.payload.nats]
        models.append(entry)
    return {
        "theories": theories,
        "sigmas": sigmas,
        "models": models,
        "checks": [{"kind": k, "args": list(a)} for k, a in doc.checks],
    }


def _render_functor(f: FunctorDecl) -> str:
    arr = "arr auto;" if f.arr is None else f"arr {_render_list(f.arr)};"
    return f"  functor {f.name} {{ obj {_render_list(f.obj)}; {arr} }}"


def _render_nat(nd: NatDecl) -> str:
    if nd.components is None:
        return f"  nat {nd.name} auto;"
    return f"  nat {nd.name} = {_render_list(nd.components)};"
