"""Batch entry point: dispatch verifications over .law files, emit reports.

Exit codes: 0 all verdicts positive; 1 a check failed and the report carries
a witness; 2 inconclusive or a search bound was exceeded; 3 malformed input.
Reports are deterministic; pass --no-timings to make the JSON byte-stable.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, is_dataclass
from pathlib import Path

from . import dsl, finset, theory
from .catmodels import (
    EnumerationBound,
    internal_algebras,
    internal_coalgebras,
    algebra_view,
    convolution_algebra,
    internal_hom,
    validate_cat_model,
)
from .cells import (
    CellError,
    check_sigma_coherence,
    derived_associativity_check,
    validate_two_theory,
    yang_baxter_check,
)
from .multimaps import (
    bilax_check,
    closed_check,
    eckmann_hilton_2d,
    eh_local_iso_probe,
    fox_comonad,
    internal_bialgebras,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3


class InputError(Exception):
    pass


def _jsonable(x):
    if is_dataclass(x) and not isinstance(x, type):
        return {k: _jsonable(v) for k, v in asdict(x).items()}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return repr(x)


def make_report(command: str, files: list[str], verdicts, witnesses, timings):
    digest = hashlib.sha256()
    for f in files:
        digest.update(Path(f).read_bytes())
    return {
        "command": command,
        "inputs": {"files": [str(f) for f in files], "digest": digest.hexdigest()},
        "verdicts": _jsonable(verdicts),
        "witnesses": _jsonable(witnesses),
        "timings": timings,
    }


REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "inputs", "verdicts", "witnesses", "timings"],
    "properties": {
        "command": {"type": "string"},
        "inputs": {
            "type": "object",
            "required": ["files", "digest"],
            "properties": {
                "files": {"type": "array", "items": {"type": "string"}},
                "digest": {"type": "string"},
            },
        },
        "verdicts": {"type": "array", "items": {
            "type": "object",
            "required": ["name", "verdict"],
            "properties": {"name": {"type": "string"}, "verdict": {"type": "string"}},
        }},
        "witnesses": {"type": "array"},
        "timings": {"type": ["object", "null"]},
    },
}


def validate_report(report) -> list[str]:
    """Structural validation against the shipped schema subset."""
    problems = []

    def check(value, schema, path):
        types = schema.get("type")
        if types is not None:
            allowed = types if isinstance(types, list) else [types]
            kind = {"object": dict, "array": list, "string": str}.get
            ok = False
            for t in allowed:
                if t == "null" and value is None:
                    ok = True
                elif t in ("object", "array", "string") and isinstance(value, kind(t)):
                    ok = True
            if not ok:
                problems.append(f"{path}: expected {types}")
                return
        if isinstance(value, dict):
            for req in schema.get("required", ()):
                if req not in value:
                    problems.append(f"{path}: missing {req}")
            for key, sub in schema.get("properties", {}).items():
                if key in value:
                    check(value[key], sub, f"{path}.{key}")
        if isinstance(value, list) and "items" in schema:
            for i, item in enumerate(value):
                check(item, schema["items"], f"{path}[{i}]")

    check(report, REPORT_SCHEMA, "$")
    return problems


def emit_report(report, fmt: str, out=sys.stdout):
    if fmt == "json":
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return
    out.write(f"command: {report['command']}\n")
    for v in report["verdicts"]:
        detail = v.get("detail")
        suffix = f"  {detail}" if detail not in (None, {}) else ""
        out.write(f"  {v['name']}: {v['verdict']}{suffix}\n")
    for w in report["witnesses"]:
        out.write(f"  witness: {w}\n")
    if report.get("timings"):
        out.write(f"  elapsed: {report['timings']['elapsed_s']:.3f}s\n")


def load_document(path: str) -> dsl.Document:
    doc, source = dsl.parse_file(path)
    if doc is None:
        raise InputError("; ".join(str(d) for d in source.diagnostics))
    return doc


def _pick_theory(doc: dsl.Document, name: str | None):
    if name is not None:
        return doc.theory(name)
    if not doc.theories:
        raise InputError("no theory block in the input")
    return doc.theories[0]


def _pick_sigma(doc: dsl.Document, name: str | None):
    if name is not None:
        return doc.sigma(name)
    if not doc.sigmas:
        raise InputError("no sigma block in the input")
    return doc.sigmas[0]


def _cat_models_for(doc: dsl.Document, theory_name: str, names: list[str] | None):
    decls = [m for m in doc.models if m.kind in ("fincat", "moncat")
             and m.theory == theory_name]
    if names:
        return [(n, doc.cat_model(n)) for n in names]
    return [(m.name, doc.cat_model(m.name)) for m in decls]


# -- subcommand handlers --------------------------------------------------------------------

def cmd_check_theory(args, doc):
    verdicts = []
    failed = False
    for t in doc.theories:
        problems = validate_two_theory(t)
        verdicts.append({"name": t.base.name,
                         "verdict": "Valid" if not problems else "Invalid",
                         "detail": problems or None})
        failed = failed or bool(problems)
    for m in doc.models:
        if m.kind == "finset":
            try:
                doc.finset_model(m.name)
                verdicts.append({"name": m.name, "verdict": "Valid", "detail": None})
            except ValueError as e:
                verdicts.append({"name": m.name, "verdict": "Invalid", "detail": str(e)})
                failed = True
        else:
            model = doc.cat_model(m.name)
            problems = validate_cat_model(model)
            verdicts.append({"name": m.name,
                             "verdict": "Valid" if not problems else "Invalid",
                             "detail": _jsonable(problems) or None})
            failed = failed or bool(problems)
    return (EXIT_FAILED if failed else EXIT_OK), verdicts, []


def cmd_commutative(args, doc):
    theory2 = _pick_theory(doc, args.theory)
    base = theory2.base
    witnesses = []
    if args.mode == "syntactic":
        report = theory.check_commutative(base, model_bound=args.max_size)
        verdicts = [{"name": base.name, "verdict": report.verdict, "detail": None}]
        for a, b, v in report.pairs:
            verdicts.append({"name": f"({a},{b})", "verdict": type(v).__name__,
                             "detail": None})
            if isinstance(v, theory.NotEqual):
                witnesses.append({"pair": [a, b], "model_size": v.model.size,
                                  "tables": _jsonable(dict(v.model.tables)),
                                  "input": list(v.witness)})
        code = {"Commutative": EXIT_OK, "NotCommutative": EXIT_FAILED,
                "Inconclusive": EXIT_INCONCLUSIVE}[report.verdict]
        return code, verdicts, witnesses
    verdicts = []
    failed = False
    for size in range(1, args.max_size + 1):
        for model in finset.enumerate_models(base, size):
            sem = finset.semantic_commutativity_check(model)
            if sem.verdict != "Passes":
                failed = True
                a, b, mat = sem.witness
                witnesses.append({"pair": [a, b], "model_size": model.size,
                                  "tables": _jsonable(dict(model.tables)),
                                  "matrix": list(mat.entries)})
                verdicts.append({"name": f"size-{size}", "verdict": "Fails",
                                 "detail": None})
                break
        if failed:
            break
    if not failed:
        verdicts.append({"name": base.name, "verdict": "Passes",
                         "detail": f"all models up to size {args.max_size}"})
    return (EXIT_FAILED if failed else EXIT_OK), verdicts, witnesses


def cmd_sigma_check(args, doc):
    for_theory, sigma = _pick_sigma(doc, args.sigma)
    theory2 = doc.theory(for_theory)
    probes = _cat_models_for(doc, for_theory, args.models)
    if not probes:
        raise InputError("no probe models available")
    report = check_sigma_coherence(theory2, sigma, [m for _, m in probes])
    verdicts = [{"name": sigma.name, "verdict": report.verdict,
                 "detail": f"{report.checked} instances on {len(probes)} probes"}]
    witnesses = [{"check": i.check, "detail": i.detail, "verdict": _jsonable(i.verdict)}
                 for i in report.issues]
    return (EXIT_OK if report.verdict == "Coherent" else EXIT_FAILED), verdicts, witnesses


def cmd_assoc_derived(args, doc):
    for_theory, sigma = _pick_sigma(doc, args.sigma)
    theory2 = doc.theory(for_theory)
    probes = _cat_models_for(doc, for_theory, args.models)
    if not probes:
        raise InputError("no probe models available")
    pre = check_sigma_coherence(theory2, sigma, [m for _, m in probes])
    if pre.verdict != "Coherent":
        return EXIT_INCONCLUSIVE, [{"name": sigma.name, "verdict": "SkippedIncoherent",
                                    "detail": None}], []
    report = derived_associativity_check(theory2, sigma, [m for _, m in probes])
    verdicts = [{"name": sigma.name, "verdict": report.verdict,
                 "detail": f"{report.checked} triples"}]
    witnesses = [{"check": i.check, "detail": i.detail} for i in report.issues]
    return (EXIT_OK if report.verdict == "Coherent" else EXIT_FAILED), verdicts, witnesses


def cmd_yang_baxter(args, doc):
    model_name, tensor, braiding = args.model, args.tensor, args.braiding
    if model_name is None:
        for kind, cargs in doc.checks:
            if kind == "yang_baxter":
                model_name, tensor, braiding = cargs[0], cargs[1], cargs[2]
                break
    if model_name is None:
        raise InputError("no model given and no yang_baxter directive found")
    model = doc.cat_model(model_name)
    report = yang_baxter_check(model, tensor, braiding)
    verdicts = [{"name": model_name, "verdict": report.verdict,
                 "detail": f"{report.triples_checked} triples"}]
    witnesses = [{"check": i.check, "triple": list(i.triple)} for i in report.issues]
    return (EXIT_OK if report.verdict == "Holds" else EXIT_FAILED), verdicts, witnesses


def cmd_models(args, doc):
    theory2 = _pick_theory(doc, args.theory)
    if args.size > args.max_size:
        raise EnumerationBound(f"size {args.size} exceeds bound {args.max_size}")
    models = list(finset.enumerate_models(theory2.base, args.size))
    verdicts = [{"name": f"{theory2.base.name}/size-{args.size}",
                 "verdict": str(len(models)),
                 "detail": None}]
    witnesses = [{"tables": _jsonable(dict(m.tables))} for m in models]
    return EXIT_OK, verdicts, witnesses


def cmd_homs(args, doc):
    source = doc.finset_model(args.source)
    target = doc.finset_model(args.target)
    homs = finset.enumerate_homs(source, target)
    verdicts = [{"name": f"{args.source}->{args.target}", "verdict": str(len(homs)),
                 "detail": None}]
    witnesses = [{"mapping": list(h.mapping)} for h in homs]
    return EXIT_OK, verdicts, witnesses


def _intalg_like(args, doc, colax: bool):
    model = doc.cat_model(args.model)
    cat = internal_coalgebras(model) if colax else internal_algebras(model)
    kind = "IntCoalg" if colax else "IntAlg"
    verdicts = [{"name": f"{kind}({args.model})",
                 "verdict": str(cat.cat.n_objects),
                 "detail": f"{cat.cat.n_arrows} arrows"}]
    witnesses = [_jsonable(algebra_view(h)) for h in cat.objects]
    return EXIT_OK, verdicts, witnesses


def cmd_intalg(args, doc):
    return _intalg_like(args, doc, colax=False)


def cmd_intcoalg(args, doc):
    return _intalg_like(args, doc, colax=True)


def cmd_intbialg(args, doc):
    _, sigma = _pick_sigma(doc, args.sigma)
    model = doc.cat_model(args.model)
    cat, pairs = internal_bialgebras(model, sigma)
    verdicts = [{"name": f"IntBialg({args.model})",
                 "verdict": str(cat.cat.n_objects),
                 "detail": f"{cat.cat.n_arrows} arrows"}]
    witnesses = [{"object": a.point()} for a, _ in pairs]
    return EXIT_OK, verdicts, witnesses


def cmd_convolve(args, doc):
    model = doc.cat_model(args.model)
    algs = internal_algebras(model).objects
    coalgs = internal_coalgebras(model).objects
    if not algs or not coalgs:
        return EXIT_FAILED, [{"name": args.model, "verdict": "NoAlgebras",
                              "detail": None}], []
    a = algs[args.algebra]
    c = coalgs[args.coalgebra]
    try:
        conv, hom = convolution_algebra(model, a, c)
    except CellError as e:
        return EXIT_FAILED, [{"name": args.model, "verdict": "Fails",
                              "detail": str(e)}], []
    verdicts = [{"name": f"convolution({args.model})", "verdict": "Valid",
                 "detail": f"carrier {conv.size}"}]
    witnesses = [{"tables": _jsonable(dict(conv.tables)), "hom_arrows": list(hom)}]
    return EXIT_OK, verdicts, witnesses


def cmd_hom_internal(args, doc):
    for_theory, sigma = _pick_sigma(doc, args.sigma)
    X = doc.cat_model(args.source)
    Y = doc.cat_model(args.target)
    hom_model, homcat = internal_hom(X, Y, sigma, args.weakness)
    problems = validate_cat_model(hom_model)
    verdicts = [{"name": f"Hom({args.source},{args.target})",
                 "verdict": "Valid" if not problems else "Invalid",
                 "detail": f"{homcat.cat.n_objects} objects, {homcat.cat.n_arrows} arrows"}]
    witnesses = [_jsonable(algebra_view(h)) for h in homcat.objects] if args.list else []
    return (EXIT_OK if not problems else EXIT_FAILED), verdicts, witnesses


def cmd_closed_check(args, doc):
    _, sigma = _pick_sigma(doc, args.sigma)
    X = doc.cat_model(args.x)
    Y = doc.cat_model(args.y)
    Z = doc.cat_model(args.z)
    report = closed_check(X, Y, Z, sigma, args.weakness)
    verdicts = [{"name": f"Mul({args.x},{args.y};{args.z})",
                 "verdict": "Bijection" if report.bijection else "Fails",
                 "detail": f"{report.multimap_count} multimaps, {report.hom_count} homs"}]
    witnesses = [{"issue": i} for i in report.issues]
    return (EXIT_OK if report.bijection else EXIT_FAILED), verdicts, witnesses


def cmd_fox(args, doc):
    for_theory, sigma = _pick_sigma(doc, args.sigma)
    models = _cat_models_for(doc, for_theory, args.models)
    if not models:
        raise InputError("no models available")
    report = fox_comonad(sigma, models)
    verdicts = []
    witnesses = []
    for r in report.models:
        verdicts.append({"name": r.model,
                         "verdict": "Holds" if (r.counit_underlying and
                                                r.counit_functorial and
                                                r.coassociativity) else "Fails",
                         "detail": f"delta iso: {r.delta_is_iso}, "
                                   f"|IntAlg| {r.intalg_size} -> {r.double_size}"})
        if r.missing:
            witnesses.append({"model": r.model, "missing_objects": list(r.missing)})
    return (EXIT_OK if report.verdict == "Holds" else EXIT_FAILED), verdicts, witnesses


def cmd_eh(args, doc):
    verdicts = []
    witnesses = []
    failed = False
    if args.dim == 1:
        theory2 = _pick_theory(doc, args.theory)
        report = theory.eh_preconditions_1d(theory2.base)
        verdicts.append({"name": theory2.base.name,
                         "verdict": "Passes" if report.passes else "Fails",
                         "detail": _jsonable(report)})
        failed = not report.passes
        for name in args.models or []:
            model = doc.finset_model(name)
            probe = finset.eh_uniqueness_probe(theory2.base, model)
            verdicts.append({"name": f"uniqueness({name})",
                             "verdict": "Unique" if probe.unique else "NotUnique",
                             "detail": f"{probe.count} doubled structures"})
            if not probe.unique:
                failed = True
                witnesses.append({"model": name, "count": probe.count})
    else:
        for_theory, sigma = _pick_sigma(doc, args.sigma)
        theory2 = doc.theory(for_theory)
        report = eckmann_hilton_2d(theory2, sigma)
        verdicts.append({"name": theory2.base.name,
                         "verdict": "Passes" if report.passes else "Fails",
                         "detail": _jsonable(report)})
        failed = not report.passes
        models = _cat_models_for(doc, for_theory, args.models)
        if report.passes and len(models) >= 1:
            for xn, X in models:
                for yn, Y in models:
                    probe = eh_local_iso_probe(X, Y, sigma)
                    ok = probe.objects_bijective and probe.arrows_bijective
                    verdicts.append({"name": f"lift({xn},{yn})",
                                     "verdict": "Bijection" if ok else "Fails",
                                     "detail": f"{probe.hom_count} homs, "
                                               f"{probe.lifted_count} lifted"})
                    if not ok:
                        failed = True
                        witnesses.append({"pair": [xn, yn],
                                          "extra_lifts": probe.extra_lifts})
    return (EXIT_FAILED if failed else EXIT_OK), verdicts, witnesses


def cmd_bilax(args, doc):
    _, sigma = _pick_sigma(doc, args.sigma)
    model = doc.cat_model(args.model)
    algs = internal_algebras(model).objects
    coalgs = internal_coalgebras(model).objects
    verdicts = []
    witnesses = []
    failed = False
    for i, a in enumerate(algs):
        for j, c in enumerate(coalgs):
            if a.point() != c.point():
                continue
            report = bilax_check(a, c, sigma)
            verdicts.append({"name": f"alg{i}/coalg{j}@{a.point()}",
                             "verdict": report.verdict, "detail": None})
            if report.verdict != "Bilax":
                failed = True
                witnesses.append({"pair": [i, j], "issues": list(report.issues)})
    if not verdicts:
        verdicts.append({"name": args.model, "verdict": "NoPairs", "detail": None})
    return (EXIT_FAILED if failed else EXIT_OK), verdicts, witnesses


HANDLERS = {
    "check-theory": cmd_check_theory,
    "commutative": cmd_commutative,
    "sigma-check": cmd_sigma_check,
    "assoc-derived": cmd_assoc_derived,
    "yang-baxter": cmd_yang_baxter,
    "models": cmd_models,
    "homs": cmd_homs,
    "intalg": cmd_intalg,
    "intcoalg": cmd_intcoalg,
    "intbialg": cmd_intbialg,
    "convolve": cmd_convolve,
    "hom-internal": cmd_hom_internal,
    "closed-check": cmd_closed_check,
    "fox": cmd_fox,
    "eh": cmd_eh,
    "bilax": cmd_bilax,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lawkit", description="verification toolkit for presented theories")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--no-timings", action="store_true")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker fan-out (reserved; execution is sequential)")
    parser.add_argument("--seed", type=int, default=None,
                        help="reserved; all searches are exhaustive")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **extra):
        p = sub.add_parser(name)
        p.add_argument("file")
        for flag, kwargs in extra.items():
            p.add_argument(flag, **kwargs)
        return p

    add("check-theory")
    add("commutative",
        **{"--theory": dict(default=None),
           "--mode": dict(choices=("syntactic", "semantic"), default="syntactic"),
           "--max-size": dict(type=int, default=4)})
    add("sigma-check", **{"--sigma": dict(default=None),
                          "--models": dict(nargs="*", default=None)})
    add("assoc-derived", **{"--sigma": dict(default=None),
                            "--models": dict(nargs="*", default=None)})
    add("yang-baxter", **{"--model": dict(default=None),
                          "--tensor": dict(default="m"),
                          "--braiding": dict(default="b")})
    add("models", **{"--theory": dict(default=None),
                     "--size": dict(type=int, required=True),
                     "--max-size": dict(type=int, default=4)})
    add("homs", **{"--source": dict(required=True), "--target": dict(required=True)})
    add("intalg", **{"--model": dict(required=True)})
    add("intcoalg", **{"--model": dict(required=True)})
    add("intbialg", **{"--model": dict(required=True), "--sigma": dict(default=None)})
    add("convolve", **{"--model": dict(required=True),
                       "--algebra": dict(type=int, default=0),
                       "--coalgebra": dict(type=int, default=0)})
    add("hom-internal", **{"--source": dict(required=True),
                           "--target": dict(required=True),
                           "--sigma": dict(default=None),
                           "--weakness": dict(default="lax"),
                           "--list": dict(action="store_true")})
    add("closed-check", **{"--x": dict(required=True), "--y": dict(required=True),
                           "--z": dict(required=True), "--sigma": dict(default=None),
                           "--weakness": dict(default="lax")})
    add("fox", **{"--sigma": dict(default=None), "--models": dict(nargs="*", default=None)})
    add("eh", **{"--dim": dict(type=int, choices=(1, 2), default=2),
                 "--theory": dict(default=None), "--sigma": dict(default=None),
                 "--models": dict(nargs="*", default=None)})
    add("bilax", **{"--model": dict(required=True), "--sigma": dict(default=None)})
    return parser


def run(argv: list[str], out=sys.stdout) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit:
        return EXIT_INPUT
    start = time.monotonic()
    try:
        doc = load_document(args.file)
        code, verdicts, witnesses = HANDLERS[args.command](args, doc)
    except (InputError, KeyError, FileNotFoundError, ValueError) as e:
        report = make_report(args.command, [], [{"name": "input", "verdict": "Error",
                                                 "detail": str(e)}], [], None)
        emit_report(report, args.format, out)
        return EXIT_INPUT
    except (EnumerationBound, theory.TheoryError, CellError) as e:
        report = make_report(args.command, [args.file],
                             [{"name": "bounds", "verdict": "Inconclusive",
                               "detail": str(e)}], [], None)
        emit_report(report, args.format, out)
        return EXIT_INCONCLUSIVE
    timings = None if args.no_timings else {"elapsed_s": time.monotonic() - start}
    report = make_report(args.command, [args.file], verdicts, witnesses, timings)
    emit_report(report, args.format, out)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
