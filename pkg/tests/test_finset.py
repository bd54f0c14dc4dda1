import itertools

import pytest

import oracles
from lawkit import fixtures as fx
from lawkit.finset import (
    FinSetModel,
    MatrixView,
    ModelHom,
    Violation,
    act_left,
    act_right,
    canonical_filter,
    compose_homs,
    enumerate_homs,
    enumerate_models,
    eh_uniqueness_probe,
    power_model,
    semantic_commutativity_check,
    validate_model,
)
from lawkit.theory import TheoryError, check_commutative, transpose

Z2 = {"m": (0, 1, 1, 0), "u": (0,)}
AND = {"m": (0, 0, 0, 1), "u": (1,)}


def test_validate_accepts_z2():
    assert isinstance(validate_model(fx.t_comm, 2, Z2), FinSetModel)


def test_validate_rejects_wrong_unit():
    result = validate_model(fx.t_comm, 2, {"m": (0, 1, 1, 0), "u": (1,)})
    assert isinstance(result, Violation)
    assert result.equation in ("lunit", "runit")
    assert result.env == (0,)


def test_validate_selfmaps_monoid():
    # all self-maps of {0,1} under composition: id, swap, const0, const1
    maps = [(0, 1), (1, 0), (0, 0), (1, 1)]
    table = []
    for f in maps:
        for g in maps:
            table.append(maps.index(tuple(g[f[x]] for x in (0, 1))))
    model = validate_model(fx.t_ass, 4, {"m": tuple(table), "u": (0,)})
    assert isinstance(model, FinSetModel)


def test_enumerate_models_counts():
    assert len(list(enumerate_models(fx.t_ass, 1))) == 1
    assert len(list(enumerate_models(fx.t_ass, 2))) == 4
    assert len(list(enumerate_models(fx.t_comm, 2))) == 4


def test_enumeration_matches_oracle():
    for size in (1, 2, 3):
        got = list(enumerate_models(fx.t_ass, size))
        want = oracles.monoids(size)
        assert len(got) == len(want)
        got_keys = {m.table("m") for m in got}
        want_keys = {tuple(x for row in t for x in row) for t, _ in want}
        assert got_keys == want_keys


def test_canonical_filter_counts_up_to_iso():
    labeled = list(enumerate_models(fx.t_ass, 2))
    assert len(canonical_filter(labeled)) == 2


def test_act_left_identity_and_projection():
    model = validate_model(fx.t_comm, 2, Z2)
    mat = MatrixView(1, 3, (1, 0, 1))
    ident = fx.t_comm.op("m")
    # identity-arity-1 behaviour via a 1-row matrix and the nullary-free op
    from lawkit.theory import OpSymbol
    assert act_left(model, OpSymbol("u", 0), MatrixView(0, 2, ())) == \
        (model.apply("u", ()),) * 2


def test_act_left_example():
    model = validate_model(fx.t_comm, 2, Z2)
    mat = MatrixView(2, 2, (1, 0, 1, 1))
    assert act_left(model, fx.t_comm.op("m"), mat) == (0, 1)


def test_act_right_row_application():
    model = validate_model(fx.t_comm, 2, Z2)
    mat = MatrixView(2, 2, (1, 0, 1, 1))
    assert act_right(model, mat, fx.t_comm.op("m")) == (1, 0)


def test_act_transpose_factorization():
    model = validate_model(fx.t_comm, 2, Z2)
    op = fx.t_comm.op("m")
    for entries in itertools.product(range(2), repeat=4):
        mat = MatrixView(2, 2, tuple(entries))
        matT = MatrixView(2, 2, tuple(model.eval_morphism(transpose(2, 2), entries)))
        assert act_right(model, mat, op) == act_left(model, op, matT)


def test_semantic_commutativity():
    model = validate_model(fx.t_comm, 2, Z2)
    assert semantic_commutativity_check(model).verdict == "Passes"
    one = validate_model(fx.t_comm, 1, {"m": (0,), "u": (0,)})
    assert semantic_commutativity_check(one).verdict == "Passes"
    maps = [(0, 1), (1, 0), (0, 0), (1, 1)]
    table = []
    for f in maps:
        for g in maps:
            table.append(maps.index(tuple(g[f[x]] for x in (0, 1))))
    selfmaps = validate_model(fx.t_ass, 4, {"m": tuple(table), "u": (0,)})
    report = semantic_commutativity_check(selfmaps)
    assert report.verdict == "Fails"
    a, b, mat = report.witness
    assert (a, b) == ("m", "m") and mat.rows == 2 and mat.cols == 2


def test_enumerate_homs_examples():
    z2 = validate_model(fx.t_comm, 2, Z2)
    one = validate_model(fx.t_comm, 1, {"m": (0,), "u": (0,)})
    band = validate_model(fx.t_comm, 2, AND)
    assert len(enumerate_homs(z2, one)) == 1
    homs = enumerate_homs(z2, z2)
    assert len(homs) == 2
    assert {h.mapping for h in homs} == {(0, 0), (0, 1)}
    assert [h.mapping for h in enumerate_homs(band, z2)] == [(0, 0)]


def test_homs_closed_under_composition():
    z2 = validate_model(fx.t_comm, 2, Z2)
    homs = enumerate_homs(z2, z2)
    keys = {h.mapping for h in homs}
    for f in homs:
        for g in homs:
            assert compose_homs(f, g).mapping in keys


def test_hom_determined_by_mapping():
    z2 = validate_model(fx.t_comm, 2, Z2)
    homs = enumerate_homs(z2, z2)
    assert len({h.mapping for h in homs}) == len(homs)


def test_power_model_pointwise():
    z2 = validate_model(fx.t_comm, 2, Z2)
    sq = power_model(z2, 2)
    assert sq.size == 4
    # (1,0) + (1,1) = (0,1): encoded 2 + 3 -> 1
    assert sq.apply("m", (2, 3)) == 1


def test_eh_uniqueness_probe():
    z2 = validate_model(fx.t_comm, 2, Z2)
    assert eh_uniqueness_probe(fx.t_comm, z2).count == 1
    pointed = validate_model(fx.t_pointed, 2, {"u": (0,)})
    assert eh_uniqueness_probe(fx.t_pointed, pointed).count == 1
    swap = validate_model(fx.t_inv_1d, 2, {"inv": (1, 0)})
    report = eh_uniqueness_probe(fx.t_inv_1d, swap)
    assert report.count == 2 and not report.unique


def test_eh_uniqueness_bound():
    maps = validate_model(fx.t_comm, 2, Z2)
    with pytest.raises(TheoryError):
        eh_uniqueness_probe(fx.t_comm, maps, size_bound=1)


def test_syntactic_semantic_agreement_small():
    from lawkit.finset import syntactic_semantic_agreement
    for theory in (fx.t_comm, fx.t_ass, fx.t_pointed, fx.t_inv_1d):
        report = check_commutative(theory)
        for size in (1, 2, 3):
            assert syntactic_semantic_agreement(theory, report, size) == []


def test_act_with_identity_and_projection_morphisms():
    from lawkit.theory import identity, proj_morphism
    model = validate_model(fx.t_comm, 2, Z2)
    mat = MatrixView(1, 3, (1, 0, 1))
    assert act_left(model, identity(1), mat) == (1, 0, 1)
    mat2 = MatrixView(2, 2, (1, 0, 0, 1))
    assert act_right(model, mat2, proj_morphism(0, 2)) == (1, 0)  # first column
