from pathlib import Path

import pytest

from conftest import LAW_DIR, law
from lawkit import dsl, fixtures as fx
from lawkit.catmodels import validate_cat_model


def all_law_files():
    return sorted(LAW_DIR.glob("*.law"))


def test_empty_theory_is_projection_skeleton():
    doc, src = dsl.parse("theory skeleton { }")
    assert doc is not None and not src.diagnostics
    t = doc.theory("skeleton")
    assert t.base.generators == () and t.base.equations == ()


def test_shipped_t_comm_parses_to_presentation():
    doc, _ = dsl.parse_file(law("t_comm.law"))
    base = doc.theory("t_comm").base
    assert len(base.generators) == 2
    assert {e.name for e in base.equations} >= {"assoc", "lunit", "runit", "comm"}
    assert base == fx.t_comm


def test_syntax_error_carries_position():
    doc, src = dsl.parse("theory t {\n  op m : 2 ->\n}")
    assert doc is None
    d = src.diagnostics[0]
    assert (d.line, d.col) == (3, 1)


def test_unresolved_reference_diagnostic():
    doc, src = dsl.parse("sigma s for missing weakness strict { }")
    assert doc is None
    assert "missing" in src.diagnostics[0].message


def test_every_fixture_file_round_trips():
    for path in all_law_files():
        doc, src = dsl.parse_file(path)
        assert doc is not None, (path, src.diagnostics)
        text = dsl.serialize(doc)
        doc2, src2 = dsl.parse(text)
        assert doc2 is not None, (path, src2.diagnostics)
        assert doc2 == doc, path
        assert dsl.serialize(doc2) == text, path


def test_serialize_reflects_mutation():
    doc, _ = dsl.parse_file(law("t_ass.law"))
    mutated = dsl.Document(doc.theories, doc.sigmas, doc.models,
                           doc.checks + (("commutative", ("t_ass",)),))
    assert dsl.serialize(mutated) != dsl.serialize(doc)
    assert dsl.serialize(mutated).count("check commutative") == 2


def test_parsed_models_equal_builders():
    cases = [
        ("t_comm_flat.law", "poset_meet", fx.poset_meet_model),
        ("t_comm_flat.law", "graded_lines", fx.graded_lines),
        ("t_braid.law", "graded_lines_z3", fx.graded_lines_z3),
        ("t_inv.law", "scalar_involution", fx.scalar_involution_model),
        ("t_inv.law", "poset_involution", fx.poset_involution_model),
        ("t_pointed_flat.law", "pointed_poset", fx.pointed_poset_model),
        ("t_ass_flat.law", "delooping_z2", fx.delooping_model),
        ("t_ass_flat.law", "discrete_z2", fx.discrete_group_model),
        ("t_gl2.law", "gl2_action", fx.gl2_self_action_model),
        ("graded_lines_mutant.law", "graded_lines_mutant", fx.graded_lines_mutant),
    ]
    for fname, model_name, builder in cases:
        doc, _ = dsl.parse_file(law(fname))
        assert doc.cat_model(model_name) == builder(), (fname, model_name)


def test_parsed_sigmas_equal_builders():
    pairs = [
        ("t_comm_flat.law", "sigma_comm_flat", fx.sigma_comm_flat),
        ("t_braid.law", "sigma_braid", fx.sigma_braid),
        ("t_inv.law", "sigma_inv", fx.sigma_inv),
        ("t_pointed_flat.law", "sigma_pointed_flat", fx.sigma_pointed_flat),
        ("t_gl2.law", "sigma_gl", fx.sigma_gl),
    ]
    for fname, name, built in pairs:
        doc, _ = dsl.parse_file(law(fname))
        assert doc.sigma(name)[1] == built, name


def test_finset_model_block():
    doc, _ = dsl.parse_file(law("t_comm.law"))
    model = doc.finset_model("z2_add")
    assert model.size == 2 and model.table("m") == (0, 1, 1, 0)
    with pytest.raises(KeyError):
        doc.finset_model("nope")


def test_invalid_finset_model_reports_equation():
    text = """
theory t { op m : 2 -> 1; eq idem : m(x1,x1) = x1; }
model bad of t in finset { carrier 2; table m = [0, 1, 1, 0]; }
"""
    doc, _ = dsl.parse(text)
    with pytest.raises(ValueError):
        doc.finset_model("bad")


def test_import_merges_blocks():
    doc, _ = dsl.parse_file(law("graded_lines_mutant.law"))
    assert any(m.name == "graded_lines_mutant" for m in doc.models)
    assert any(m.name == "poset_meet" for m in doc.models)  # from the import


def test_elaborated_models_validate():
    for path in all_law_files():
        doc, _ = dsl.parse_file(path)
        for m in doc.models:
            if m.kind == "finset":
                doc.finset_model(m.name)
            else:
                model = doc.cat_model(m.name)
                if m.name != "graded_lines_mutant":
                    assert validate_cat_model(model) == [], m.name


def test_morphism_context_annotation():
    doc, _ = dsl.parse("theory t { op u : 0 -> 1; eq e : [2] u = [2] u; }")
    eq = doc.theory("t").base.equations[0]
    assert eq.lhs.source == 2


def test_finset_model_round_trips_through_decl():
    doc, _ = dsl.parse_file(law("t_comm.law"))
    model = doc.finset_model("z2_add")
    decl = dsl.finset_model_decl("z2_add", model)
    assert decl == doc.model_decl("z2_add")


def test_basis_clause():
    doc, _ = dsl.parse("""
theory t { op m : 2 -> 1; op n : 2 -> 1; basis m; }
""")
    assert doc.theory("t").base.basis == ("m",)


def test_law_path_helper():
    from lawkit import fixtures
    assert fixtures.law_path("t_comm.law").exists()
    assert len(fixtures.law_files()) >= 9
    with pytest.raises(FileNotFoundError):
        fixtures.law_path("absent.law")


def test_document_json_dump_mirrors_blocks():
    import json
    doc, _ = dsl.parse_file(law("t_comm_flat.law"))
    dump = dsl.document_to_json(doc)
    json.dumps(dump)  # serializable
    assert [t["name"] for t in dump["theories"]] == ["t_comm_flat"]
    theory = dump["theories"][0]
    assert {o["name"]: o["arity"] for o in theory["operations"]} == {"m": 2, "u": 0}
    assert len(theory["cell_equations"]) == 3
    sigma = dump["sigmas"][0]
    assert sigma["symmetric"] and sigma["weakness"] == "pseudo"
    kinds = {m["name"]: m["kind"] for m in dump["models"]}
    assert kinds == {"poset_meet": "fincat", "poset_join": "fincat",
                     "graded_lines": "moncat"}
    graded = [m for m in dump["models"] if m["name"] == "graded_lines"][0]
    assert graded["braidings"][0]["exponents"] == [[0, 0], [0, 1]]
    assert dump["checks"][0]["kind"] == "sigma_coherent"
