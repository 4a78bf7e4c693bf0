"""JSON loading and dumping for groups, modules, contexts and bundles.

Structural problems raise :class:`SchemaError` carrying a field path (and a
line number for parse errors).  Data that parses but breaks a mathematical
invariant surfaces as the library's own error types.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

import numpy as np

from .artin import ArtinMotive, GaloisContext
from .ffarith import is_prime
from .groups import FiniteGroup
from .modrep import GModule
from .motexpr import AUpperLabel, FormalMotive, VarietyPreorder
from .titsdex import DiagramIso, DynkinDiagram, StarAction, TitsGroupDatum

__all__ = [
    "SchemaError",
    "parse_json",
    "load_json_file",
    "sha256_bytes",
    "dumps",
    "group_from_json",
    "module_from_json",
    "context_from_json",
    "context_to_json",
    "motive_bundle_from_json",
    "formal_motive_to_json",
    "tits_bundle_from_json",
    "detect_kind",
]


class SchemaError(ValueError):
    """Malformed input; ``path`` names the offending field."""

    def __init__(self, message: str, path: str = "", line: int | None = None):
        self.path = path
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if path:
            where.append(f"field {path}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


def parse_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON ({exc.msg}, column {exc.colno})", line=exc.lineno) from None


def load_json_file(path) -> tuple[Any, bytes]:
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise SchemaError("file is not UTF-8 text") from None
    return parse_json(text), raw


def sha256_bytes(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# helpers for field access with paths


def _get(obj, key, path, kind=None, default=...):
    if not isinstance(obj, dict):
        raise SchemaError("expected an object", path)
    if key not in obj:
        if default is not ...:
            return default
        raise SchemaError("missing required field", _join(path, key))
    val = obj[key]
    if kind is not None and not _is_kind(val, kind):
        raise SchemaError(f"expected {_kind_name(kind)}", _join(path, key))
    return val


def _is_kind(val, kind):
    if kind is int:
        return isinstance(val, int) and not isinstance(val, bool)
    return isinstance(val, kind)


def _kind_name(kind):
    return {int: "an integer", list: "a list", dict: "an object", str: "a string", bool: "a boolean"}.get(kind, str(kind))


def _join(path, key):
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else str(key)


def _perm(val, degree, path):
    if not isinstance(val, list) or not all(_is_kind(x, int) for x in val):
        raise SchemaError("expected a list of integers", path)
    if sorted(val) != list(range(degree)):
        raise SchemaError(f"not a permutation of 0..{degree - 1}", path)
    return tuple(val)


def group_from_json(obj, path="group") -> FiniteGroup:
    degree = _get(obj, "degree", path, int)
    if degree < 1:
        raise SchemaError("degree must be positive", _join(path, "degree"))
    gens = _get(obj, "generators", path, list, default=[])
    perms = [_perm(g, degree, _join(_join(path, "generators"), k)) for k, g in enumerate(gens)]
    return FiniteGroup(degree, perms)


def subgroup_gens(val, G: FiniteGroup, path) -> list:
    if not isinstance(val, list):
        raise SchemaError("expected a list of generator indices or permutations", path)
    out = []
    for k, item in enumerate(val):
        sub = _join(path, k)
        if _is_kind(item, int):
            if not 0 <= item < len(G.generators):
                raise SchemaError(f"generator index out of range (group has {len(G.generators)})", sub)
            out.append(G.generators[item])
        else:
            perm = _perm(item, G.degree, sub)
            if perm not in G:
                raise SchemaError("permutation is not an element of the group", sub)
            out.append(perm)
    return out


def _matrix(val, dim, p, path) -> np.ndarray:
    if not isinstance(val, list) or len(val) != dim:
        raise SchemaError(f"expected a {dim}x{dim} matrix", path)
    for r, row in enumerate(val):
        if not isinstance(row, list) or len(row) != dim:
            raise SchemaError(f"expected a row of length {dim}", _join(path, r))
        for c, x in enumerate(row):
            if not _is_kind(x, int):
                raise SchemaError("expected an integer", _join(_join(path, r), c))
    return np.array(val, dtype=np.int64).reshape(dim, dim) % p


def _prime(obj, path, prime):
    p = _get(obj, "p", path, int, default=prime)
    if p is None:
        raise SchemaError("missing required field (or pass --prime)", _join(path, "p"))
    if prime is not None and p != prime:
        raise SchemaError(f"prime {p} conflicts with requested prime {prime}", _join(path, "p"))
    if not is_prime(p):
        raise SchemaError(f"{p} is not prime", _join(path, "p"))
    return p


def _action(obj, group: FiniteGroup, dim, p, path):
    action = _get(obj, "action", path, dict, default={})
    ngens = len(group.generators)
    expected = {f"gen_{k}" for k in range(ngens)}
    if set(action) != expected:
        raise SchemaError(f"expected keys {sorted(expected)}, got {sorted(action)}", _join(path, "action"))
    return [_matrix(action[f"gen_{k}"], dim, p, _join(_join(path, "action"), f"gen_{k}")) for k in range(ngens)]


def module_from_json(obj, path="", *, prime: int | None = None, group: FiniteGroup | None = None) -> GModule:
    """Module from ``{"p", "group", "dim", "action": {"gen_i": matrix}}``.

    A group passed in overrides the ``group`` field.  Matrices that do not
    form a representation raise ``RepresentationError``.
    """
    p = _prime(obj, path, prime)
    if group is None:
        group = group_from_json(_get(obj, "group", path, dict), _join(path, "group"))
    dim = _get(obj, "dim", path, int)
    if dim < 0:
        raise SchemaError("dimension must be non-negative", _join(path, "dim"))
    return GModule(group, p, dim, _action(obj, group, dim, p, path))


def context_from_json(obj, path="context") -> GaloisContext:
    G = group_from_json(_get(obj, "group", path, dict), _join(path, "group"))
    fields_obj = _get(obj, "fields", path, dict, default={})
    fields, special = {}, {}
    for label, spec in fields_obj.items():
        sub = _join(_join(path, "fields"), label)
        if label == "F" and isinstance(spec, dict) and "subgroup_gens" not in spec:
            fields[label] = G
        else:
            gens = subgroup_gens(_get(spec, "subgroup_gens", sub, list), G, _join(sub, "subgroup_gens"))
            fields[label] = G.subgroup(gens)
        special[label] = _get(spec, "p_special", sub, bool, default=False)
    order = []
    for k, pair in enumerate(_get(obj, "order", path, list, default=[])):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
            raise SchemaError("expected a pair of field labels", _join(_join(path, "order"), k))
        order.append((pair[0], pair[1]))
    return GaloisContext(G, fields, order, special)


def context_to_json(ctx: GaloisContext) -> dict:
    return {
        "group": ctx.gamma.to_json(),
        "fields": {
            label: {"subgroup_gens": [list(g) for g in sub.generators], "p_special": ctx.is_p_special(label)}
            for label, sub in ctx.fields.items()
        },
        "order": [list(pair) for pair in ctx.order],
    }


def _artin_ref(ref, ctx: GaloisContext, p: int, named: dict, path) -> ArtinMotive:
    if isinstance(ref, str):
        if ref not in named:
            raise SchemaError(f"unknown Artin module {ref!r}", path)
        return named[ref]
    base = _get(ref, "base", path, str, default="F")
    if base not in ctx.fields:
        raise SchemaError(f"unknown field label {base!r}", _join(path, "base"))
    M = module_from_json(ref, path, prime=p, group=ctx.subgroup(base))
    return ArtinMotive(ctx, M, base)


def _formal_motive(val, ctx, p, preorder, named, path) -> FormalMotive:
    if not isinstance(val, list):
        raise SchemaError("expected a list of summands", path)
    entries = []
    for k, item in enumerate(val):
        sub = _join(path, k)
        vlabel = _get(item, "variety", sub, str, default="point")
        if vlabel not in preorder:
            raise SchemaError(f"unknown variety label {vlabel!r}", _join(sub, "variety"))
        art = _artin_ref(_get(item, "artin", sub), ctx, p, named, _join(sub, "artin"))
        shift = _get(item, "shift", sub, int, default=0)
        mult = _get(item, "mult", sub, int, default=1)
        if shift < 0 or mult < 0:
            raise SchemaError("shift and mult must be non-negative", sub)
        entries.append((AUpperLabel(preorder[vlabel], art), shift, mult))
    return FormalMotive.from_entries(entries)


def motive_bundle_from_json(obj, *, prime: int | None = None):
    """Returns ``(context, preorder, M, N)`` from a trace-compare bundle."""
    p = _prime(obj, "", prime)
    ctx = context_from_json(_get(obj, "context", "", dict))
    varieties = _get(obj, "varieties", "", list, default=[])
    for k, v in enumerate(varieties):
        _get(v, "label", _join("varieties", k), str)
    preorder = VarietyPreorder(ctx, varieties)
    named = {}
    for name, ref in _get(obj, "modules", "", dict, default={}).items():
        named[name] = _artin_ref(ref, ctx, p, {}, _join("modules", name))
    M = _formal_motive(_get(obj, "M", ""), ctx, p, preorder, named, "M")
    N = _formal_motive(_get(obj, "N", ""), ctx, p, preorder, named, "N")
    return ctx, preorder, M, N


def formal_motive_to_json(M: FormalMotive) -> list[dict]:
    out = []
    for label, shift in M:
        A = label.artin
        out.append({
            "variety": label.variety.label,
            "artin": {"base": A.base, "dim": A.rank,
                      "action": {f"gen_{k}": m.tolist() for k, m in enumerate(A.module.action)}},
            "shift": shift,
            "mult": 1,
        })
    return out


def _vertex_list(val, path):
    if not isinstance(val, list) or not all(isinstance(v, (int, str)) and not isinstance(v, bool) for v in val):
        raise SchemaError("expected a list of vertex labels", path)
    return val


def _diagram(obj, path) -> DynkinDiagram:
    verts = _vertex_list(_get(obj, "vertices", path, list), _join(path, "vertices"))
    edges = _get(obj, "edges", path, list, default=[])
    for k, e in enumerate(edges):
        if not isinstance(e, list) or len(e) not in (2, 3):
            raise SchemaError("expected [u, v] or [u, v, multiplicity]", _join(_join(path, "edges"), k))
    try:
        return DynkinDiagram(verts, [tuple(e) for e in edges])
    except ValueError as exc:
        raise SchemaError(str(exc), path) from None


def _datum(obj, ctx, default_diagram, path) -> TitsGroupDatum:
    D = _diagram(obj["diagram"], _join(path, "diagram")) if isinstance(obj, dict) and "diagram" in obj else default_diagram
    if D is None:
        raise SchemaError("missing required field", _join(path, "diagram"))
    star_obj = _get(obj, "star", path, dict, default={})
    ngens = len(ctx.gamma.generators)
    expected = {f"gen_{k}" for k in range(ngens)}
    if set(star_obj) != expected:
        raise SchemaError(f"expected keys {sorted(expected)}, got {sorted(star_obj)}", _join(path, "star"))
    images = [_vertex_list(star_obj[f"gen_{k}"], _join(_join(path, "star"), f"gen_{k}")) for k in range(ngens)]
    table = _get(obj, "p_index", path, dict)
    p_index = {k: frozenset(_vertex_list(v, _join(_join(path, "p_index"), k))) for k, v in table.items()}
    for label in p_index:
        if label not in ctx.fields:
            raise SchemaError(f"unknown field label {label!r}", _join(_join(path, "p_index"), label))
    try:
        star = StarAction(ctx, D, images)
    except ValueError as exc:
        raise SchemaError(str(exc), _join(path, "star")) from None
    return TitsGroupDatum(
        D, star, p_index,
        _get(obj, "p_consistent", path, bool, default=True),
        _get(obj, "name", path, str, default=path),
    )


def _phi(val, G1: TitsGroupDatum, G2: TitsGroupDatum, path) -> DiagramIso:
    if val is None:
        mapping = {v: v for v in G1.diagram.vertices}
    elif isinstance(val, list):
        mapping = {}
        for k, pair in enumerate(val):
            if not isinstance(pair, list) or len(pair) != 2:
                raise SchemaError("expected a [source, target] pair", _join(path, k))
            mapping[pair[0]] = pair[1]
    elif isinstance(val, dict):
        by_str = {str(v): v for v in G1.diagram.vertices}
        by_str2 = {str(v): v for v in G2.diagram.vertices}
        mapping = {by_str.get(k, k): by_str2.get(str(w), w) for k, w in val.items()}
    else:
        raise SchemaError("expected a list of pairs or an object", path)
    try:
        return DiagramIso(G1, G2, mapping)
    except ValueError as exc:
        raise SchemaError(str(exc), path) from None


def tits_bundle_from_json(obj):
    """Returns ``(context, G1, G2, phi, tau0)`` from a tits-equiv bundle."""
    ctx = context_from_json(_get(obj, "context", "", dict))
    D = _diagram(obj["diagram"], "diagram") if "diagram" in obj else None
    G1 = _datum(_get(obj, "G1", "", dict), ctx, D, "G1")
    G2 = _datum(_get(obj, "G2", "", dict), ctx, D, "G2")
    phi = _phi(obj.get("phi"), G1, G2, "phi")
    tau0 = frozenset(_vertex_list(_get(obj, "tau0", "", list, default=[]), "tau0"))
    return ctx, G1, G2, phi, tau0


def detect_kind(obj) -> str:
    if not isinstance(obj, dict):
        raise SchemaError("top-level value must be an object")
    if "G1" in obj or "G2" in obj:
        return "tits-bundle"
    if "M" in obj or "N" in obj:
        return "motive-bundle"
    if "fields" in obj:
        return "context"
    if "action" in obj or "dim" in obj:
        return "module"
    if "degree" in obj:
        return "group"
    raise SchemaError("cannot tell what kind of document this is")
