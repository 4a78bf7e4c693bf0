import json

import numpy as np
import pytest

from motivium import jsonio
from motivium.cli import PACKAGED_FIXTURES
from motivium.jsonio import SchemaError
from motivium.modrep import RepresentationError, decompose
from motivium.motexpr import motive_isomorphic


def fixture(name):
    return json.loads((PACKAGED_FIXTURES / f"{name}.json").read_text())


def test_parse_error_reports_line():
    with pytest.raises(SchemaError) as exc:
        jsonio.parse_json('{\n "p": 7,\n "dim": }')
    assert exc.value.line == 3 and "line 3" in str(exc.value)


def test_dumps_is_canonical():
    assert jsonio.dumps({"b": 1, "a": [1, 2]}) == jsonio.dumps({"a": [1, 2], "b": 1})
    assert jsonio.dumps({}).endswith("\n")


def test_module_round_trip():
    M = jsonio.module_from_json(fixture("f7_c3"))
    again = jsonio.module_from_json(M.to_json())
    assert again.dim == 3 and again.p == 7
    assert all(np.array_equal(a, b) for a, b in zip(M.action, again.action))
    assert sorted(s.module.dim for s in decompose(again).summands) == [1, 1, 1]


@pytest.mark.parametrize(
    "mutate, path",
    [
        (lambda d: d.pop("dim"), "dim"),
        (lambda d: d.pop("group"), "group"),
        (lambda d: d.update(dim="three"), "dim"),
        (lambda d: d.update(p=8), "p"),
        (lambda d: d["action"].pop("gen_0"), "action"),
        (lambda d: d["action"].update(gen_0=[[1, 0], [0, 1]]), "action.gen_0"),
        (lambda d: d["group"].update(generators=[[0, 0, 1]]), "group.generators"),
    ],
)
def test_module_schema_errors_name_the_field(mutate, path):
    d = fixture("f7_c3")
    mutate(d)
    with pytest.raises(SchemaError) as exc:
        jsonio.module_from_json(d)
    assert exc.value.path.startswith(path)


def test_prime_flag_conflicts_and_fills_in():
    d = fixture("f7_c3")
    with pytest.raises(SchemaError, match="conflicts"):
        jsonio.module_from_json(d, prime=5)
    d.pop("p")
    with pytest.raises(SchemaError):
        jsonio.module_from_json(d)
    assert jsonio.module_from_json(d, prime=7).p == 7


def test_non_representation_is_not_a_schema_error():
    with pytest.raises(RepresentationError) as exc:
        jsonio.module_from_json(fixture("bad_rep_c3"))
    assert not isinstance(exc.value, SchemaError)


def test_subgroup_gens_accepts_indices_and_perms():
    G = jsonio.group_from_json({"degree": 3, "generators": [[1, 2, 0]]})
    assert jsonio.subgroup_gens([0], G, "x") == jsonio.subgroup_gens([[1, 2, 0]], G, "x")
    with pytest.raises(SchemaError):
        jsonio.subgroup_gens([3], G, "x")
    with pytest.raises(SchemaError):
        jsonio.subgroup_gens([[1, 0, 2]], G, "x")


def test_context_round_trip():
    ctx = jsonio.context_from_json(fixture("trace_counterexample")["context"])
    again = jsonio.context_from_json(jsonio.context_to_json(ctx))
    assert again.labels == ctx.labels
    assert again.is_p_special("E") and not again.is_p_special("F")
    assert again.contains("F", "E")


def test_motive_bundle():
    ctx, pre, M, N = jsonio.motive_bundle_from_json(fixture("trace_counterexample"))
    assert M.rank == N.rank == 1
    assert not motive_isomorphic(M, N)
    assert jsonio.formal_motive_to_json(M)[0]["shift"] == 0
    d = fixture("trace_counterexample")
    d["M"][0]["variety"] = "nowhere"
    with pytest.raises(SchemaError, match="unknown variety"):
        jsonio.motive_bundle_from_json(d)
    d = fixture("trace_counterexample")
    d["N"][0]["artin"] = "A9"
    with pytest.raises(SchemaError, match="unknown Artin"):
        jsonio.motive_bundle_from_json(d)


def test_motive_bundle_inline_artin_and_mult():
    d = fixture("trace_counterexample")
    d["N"] = [{"artin": {"base": "F", "dim": 1, "action": {"gen_0": [[4]]}}, "mult": 2}]
    ctx, pre, M, N = jsonio.motive_bundle_from_json(d)
    assert N.rank == 2 and len(N) == 2


def test_tits_bundle():
    ctx, G1, G2, phi, tau0 = jsonio.tits_bundle_from_json(fixture("tits_2a3"))
    assert tau0 == frozenset()
    assert G1.p_index["K2"] == frozenset({1, 2})
    with pytest.raises(SchemaError, match="phi"):
        jsonio.tits_bundle_from_json(fixture("tits_2a3_badphi"))
    d = fixture("tits_2a3")
    d["G1"]["p_index"]["K9"] = [1]
    with pytest.raises(SchemaError, match="unknown field label"):
        jsonio.tits_bundle_from_json(d)


@pytest.mark.parametrize(
    "name, kind",
    [
        ("f7_c3", "module"),
        ("tits_2a3", "tits-bundle"),
        ("trace_counterexample", "motive-bundle"),
    ],
)
def test_detect_kind(name, kind):
    assert jsonio.detect_kind(fixture(name)) == kind


def test_detect_kind_other():
    assert jsonio.detect_kind({"degree": 2, "generators": []}) == "group"
    assert jsonio.detect_kind(fixture("trace_counterexample")["context"]) == "context"
    with pytest.raises(SchemaError):
        jsonio.detect_kind([])
    with pytest.raises(SchemaError):
        jsonio.detect_kind({"hello": 1})
