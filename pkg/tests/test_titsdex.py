import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motivium.artin import GaloisContext, LatticeError
from motivium.groups import compose, cyclic_group, invert, symmetric_group
from motivium.titsdex import (
    DiagramIso,
    DiagramTypeWarning,
    DynkinDiagram,
    StarAction,
    TitsGroupDatum,
    condition_i_check,
    invariant_subsets,
    minimal_constant_field,
    motivic_equiv_check,
    standard_motive_type,
)

from catalog import K_ROWS, a3_context, a3_datum, a3_perturbations


def test_diagram_validation():
    with pytest.raises(ValueError):
        DynkinDiagram([1, 1], [])
    with pytest.raises(ValueError):
        DynkinDiagram([1, 2], [(1, 3)])
    with pytest.raises(ValueError):
        DynkinDiagram([1, 2], [(1, 2, 4)])
    with pytest.raises(ValueError):
        DynkinDiagram([1, 2], [(1, 1)])
    with pytest.warns(DiagramTypeWarning):
        DynkinDiagram([1, 2, 3], [(1, 2), (2, 3), (3, 1)])


@pytest.mark.parametrize(
    "verts,edges,expected",
    [
        ([1, 2, 3], [(1, 2), (2, 3)], "A3"),
        ([1, 2], [(1, 2, 3)], "G2"),
        ([1, 2, 3, 4], [(1, 2), (2, 3, 2), (3, 4)], "F4"),
        ([1, 2, 3, 4], [(1, 2), (2, 3), (2, 4)], "D4"),
        ([1, 2, 3], [(1, 2), (2, 3, 2)], "B3/C3"),
        ([1, 2, 3, 4, 5, 6], [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)], "E6"),
    ],
)
def test_component_types(verts, edges, expected):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        D = DynkinDiagram(verts, edges)
    assert D.component_types() == [expected]


def test_star_action_validation():
    ctx = a3_context()
    D = DynkinDiagram([1, 2, 3], [(1, 2), (2, 3)])
    with pytest.raises(ValueError):
        StarAction(ctx, D, [[2, 1, 3]])  # not an automorphism
    with pytest.raises(ValueError):
        StarAction(ctx, D, [])
    C3 = cyclic_group(3)
    ctx3 = GaloisContext(C3, {})
    with pytest.raises(ValueError):
        StarAction(ctx3, D, [[3, 2, 1]])  # flip has order 2, generator order 3


def test_invariant_subsets_examples():
    G = a3_datum(a3_context())
    assert sorted(map(sorted, invariant_subsets(G, "F"))) == sorted([[], [2], [1, 3], [1, 2, 3]])
    assert len(list(invariant_subsets(G, "E"))) == 8
    ctx = GaloisContext(cyclic_group(2), {})
    D = DynkinDiagram([1, 2, 3], [(1, 2), (2, 3)])
    trivial = TitsGroupDatum(D, StarAction(ctx, D, [[1, 2, 3]]), {"F": set(), "E": set()})
    assert len(list(invariant_subsets(trivial, "F"))) == 8
    with pytest.raises(LatticeError):
        list(invariant_subsets(G, "nope"))


def test_minimal_constant_field_examples():
    G = a3_datum(a3_context())
    assert minimal_constant_field(G, set()).order == 2
    assert minimal_constant_field(G, {1}).order == 1
    assert minimal_constant_field(G, {1, 3}).order == 2


def test_standard_motive_type_examples():
    G = a3_datum(a3_context())
    assert standard_motive_type(G, {1, 3}) == ("F", frozenset({1, 3}))
    assert standard_motive_type(G, {1})[0] == "E"
    assert standard_motive_type(G, {2}) == ("F", frozenset({2}))


def test_standard_motive_type_reports_missing_subgroup():
    S3 = symmetric_group(3)
    ctx = GaloisContext(S3, {})
    D = DynkinDiagram(["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("a", "d")])
    star = StarAction(ctx, D, [["a", "c", "b", "d"], ["a", "c", "d", "b"]])
    G = TitsGroupDatum(D, star, {"F": set(), "E": set()})
    with pytest.raises(LatticeError, match="extend the lattice"):
        standard_motive_type(G, {"b"})


def test_datum_validation():
    ctx = a3_context()
    with pytest.raises(ValueError, match="orbits"):
        a3_datum(ctx, {"F": {1}})
    with pytest.raises(ValueError, match="monotone"):
        a3_datum(ctx, {"F": {2}, "E": set()})
    with pytest.raises(LatticeError):
        a3_datum(ctx, {"X": set()})
    D = DynkinDiagram([1, 2, 3], [(1, 2), (2, 3)])
    with pytest.raises(LatticeError):
        TitsGroupDatum(D, StarAction(ctx, D, [[3, 2, 1]]), {"F": set()})


def test_diagram_iso_validation():
    ctx = a3_context()
    G = a3_datum(ctx)
    with pytest.raises(ValueError, match="bond"):
        DiagramIso(G, G, {1: 2, 2: 1, 3: 3})
    with pytest.raises(ValueError, match="bijection"):
        DiagramIso(G, G, {1: 1, 2: 1, 3: 3})
    ctx_triv = GaloisContext(cyclic_group(2), {})
    D = DynkinDiagram([1, 2, 3], [(1, 2), (2, 3)])
    G_triv = TitsGroupDatum(D, StarAction(ctx_triv, D, [[1, 2, 3]]), {"F": set(), "E": set()})
    G_flip = TitsGroupDatum(D, StarAction(ctx_triv, D, [[3, 2, 1]]), {"F": set(), "E": set()})
    with pytest.raises(ValueError, match="equivariant"):
        DiagramIso(G_triv, G_flip, {1: 1, 2: 2, 3: 3})


def test_condition_i_examples():
    ctx = a3_context()
    G = a3_datum(ctx)
    phi = DiagramIso.identity(G)
    assert condition_i_check(G, G, phi, {2}).passed
    G2 = a3_datum(ctx, {"K2": {1, 2, 3}}, name="G'")
    v = condition_i_check(G, G2, DiagramIso.identity(G, G2), {2})
    assert not v.passed and v.witness["label"] == "K2" and v.witness["kind"] == "index-mismatch"
    G3 = a3_datum(ctx, {"K1": set()}, name="G''")
    v = condition_i_check(G, G3, DiagramIso.identity(G, G3), {2})
    assert not v.passed and v.witness["label"] == "K1" and v.witness["kind"] == "distinguished-mismatch"
    with pytest.raises(ValueError):
        condition_i_check(G, G, phi, {1})


def test_motivic_equiv_examples():
    ctx = a3_context()
    G = a3_datum(ctx)
    assert motivic_equiv_check(G, G, DiagramIso.identity(G)).passed
    G2 = a3_datum(ctx, {"K3": {1, 2}}, name="G'")
    v = motivic_equiv_check(G, G2, DiagramIso.identity(G, G2))
    assert not v.passed
    assert v.witness == {"label": "K3", "symmetric_difference": [1, 3]}
    G3 = a3_datum(ctx, {"L1": {2}}, name="G''")
    v = motivic_equiv_check(G, G3, DiagramIso.identity(G, G3))
    assert v.passed and "p-special" in v.note


def test_flip_isomorphism_relabels_rows():
    ctx = a3_context()
    G = a3_datum(ctx)
    G2 = a3_datum(ctx, {"K2": {2, 3}, "K3": {1, 2}}, name="G'")
    flip = DiagramIso(G, G2, {1: 3, 2: 2, 3: 1})
    assert motivic_equiv_check(G, G2, flip).passed
    assert not motivic_equiv_check(G, G2, DiagramIso.identity(G, G2)).passed


def test_contexts_must_agree():
    G = a3_datum(a3_context())
    ctx_other = GaloisContext(cyclic_group(2), {})
    D = G.diagram
    other = TitsGroupDatum(D, StarAction(ctx_other, D, [[3, 2, 1]]), {"F": set(), "E": set()})
    with pytest.raises(LatticeError):
        motivic_equiv_check(G, other, DiagramIso.identity(G, other))


# -- properties --------------------------------------------------------------


def _random_rows(draw_bools):
    rows = {}
    for label, row in K_ROWS.items():
        rows[label] = {v for v in (1, 2, 3) if draw_bools()}
    return rows


@settings(max_examples=100, deadline=None)
@given(st.lists(st.booleans(), min_size=15, max_size=15), st.booleans())
def test_verdict_symmetry(bits, flip):
    it = iter(bits)
    ctx = a3_context()
    G = a3_datum(ctx)
    G2 = a3_datum(ctx, _random_rows(lambda: next(it)), name="G'")
    mapping = {1: 3, 2: 2, 3: 1} if flip else {1: 1, 2: 2, 3: 3}
    phi = DiagramIso(G, G2, mapping)
    a = motivic_equiv_check(G, G2, phi)
    b = motivic_equiv_check(G2, G, phi.inverse())
    assert a.passed == b.passed
    if not a.passed:
        assert a.witness["label"] == b.witness["label"]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.booleans(), min_size=15, max_size=15))
def test_condition_i_empty_equals_all_special(bits):
    it = iter(bits)
    ctx = a3_context(all_special=True)
    G = a3_datum(ctx)
    G2 = a3_datum(ctx, _random_rows(lambda: next(it)), name="G'")
    phi = DiagramIso.identity(G, G2)
    a = condition_i_check(G, G2, phi, frozenset())
    b = motivic_equiv_check(G, G2, phi)
    assert a.passed == b.passed
    if not a.passed:
        assert a.witness["label"] == b.witness["label"]


def test_perturbations_are_valid_single_toggles():
    perts = a3_perturbations()
    assert len(perts) == 10
    for label, row in perts:
        assert len(set(row) ^ K_ROWS[label]) == 1


@pytest.mark.parametrize("tau", [set(), {1}, {2}, {1, 2}, {1, 3}, {1, 2, 3}])
def test_stabiliser_equivariance(tau):
    S3 = symmetric_group(3)
    ctx = GaloisContext(S3, {})
    D = DynkinDiagram(["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("a", "d")])
    star = StarAction(ctx, D, [["a", "c", "b", "d"], ["a", "c", "d", "b"]])
    G = TitsGroupDatum(D, star, {"F": set(), "E": set()})
    names = {1: "b", 2: "c", 3: "d"}
    t = {names[v] for v in tau}
    for g in S3.elements:
        stab = minimal_constant_field(G, t)
        moved = minimal_constant_field(G, star.image_set(g, t))
        conj = {compose(compose(g, h), invert(g)) for h in stab.elements}
        assert conj == set(moved.elements)
