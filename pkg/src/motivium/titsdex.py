"""Dynkin diagrams with a Galois star-action and higher Tits p-index tables.

The p-distinguished vertex sets over each field of the lattice are input
data; the checkers compare two such tables along an equivariant diagram
isomorphism.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import product as _product
from typing import Hashable, Iterator, Mapping, Sequence

from .artin import GaloisContext, LatticeError
from .groups import FiniteGroup, GSet, orbits, stabilizer_of_subset
from .verdict import Verdict

__all__ = [
    "DiagramTypeWarning",
    "DynkinDiagram",
    "StarAction",
    "TitsGroupDatum",
    "DiagramIso",
    "invariant_subsets",
    "minimal_constant_field",
    "standard_motive_type",
    "condition_i_check",
    "motivic_equiv_check",
]

Vertex = Hashable


class DiagramTypeWarning(UserWarning):
    """A connected component is not a Dynkin diagram of type A-G."""


@dataclass(frozen=True)
class DynkinDiagram:
    vertices: tuple
    edges: tuple  # (u, v, bond multiplicity)

    def __init__(self, vertices: Sequence[Vertex], edges: Sequence[Sequence] = ()):
        verts = tuple(vertices)
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertex labels")
        es = []
        seen = set()
        for e in edges:
            u, v, *rest = e
            mult = rest[0] if rest else 1
            if u not in verts or v not in verts:
                raise ValueError(f"edge {e} uses an unknown vertex")
            if u == v:
                raise ValueError("loops are not allowed")
            if mult not in (1, 2, 3):
                raise ValueError(f"bond multiplicity {mult} not in {{1, 2, 3}}")
            key = frozenset((u, v))
            if key in seen:
                raise ValueError(f"repeated edge {u}-{v}")
            seen.add(key)
            es.append((u, v, int(mult)))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(es))
        for msg in self.type_problems():
            warnings.warn(msg, DiagramTypeWarning, stacklevel=2)

    def index(self, v: Vertex) -> int:
        return self.vertices.index(v)

    def bond(self, u: Vertex, v: Vertex) -> int:
        for a, b, m in self.edges:
            if {a, b} == {u, v}:
                return m
        return 0

    def neighbours(self, v: Vertex) -> list[Vertex]:
        return [b if a == v else a for a, b, _ in self.edges if v in (a, b)]

    def components(self) -> list[list[Vertex]]:
        left = list(self.vertices)
        comps = []
        while left:
            comp = [left.pop(0)]
            i = 0
            while i < len(comp):
                for w in self.neighbours(comp[i]):
                    if w not in comp:
                        comp.append(w)
                        left.remove(w)
                i += 1
            comps.append(comp)
        return comps

    def type_problems(self) -> list[str]:
        problems = []
        for comp in self.components():
            name = _classify(self, comp)
            if name is None:
                problems.append(f"component {comp} is not of type A-G")
        return problems

    def component_types(self) -> list[str | None]:
        return [_classify(self, comp) for comp in self.components()]

    def is_automorphism(self, perm: Mapping[Vertex, Vertex]) -> bool:
        if set(perm) != set(self.vertices) or not _is_bijection(perm, self.vertices):
            return False
        return all(self.bond(perm[a], perm[b]) == m for a, b, m in self.edges) and len(self.edges) == len(
            {frozenset((perm[a], perm[b])) for a, b, _ in self.edges}
        )

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


def _is_bijection(mapping: Mapping, codomain) -> bool:
    values = list(mapping.values())
    return len(set(values)) == len(values) and set(values) == set(codomain)


def _classify(D: DynkinDiagram, comp: list) -> str | None:
    n = len(comp)
    edges = [(a, b, m) for a, b, m in D.edges if a in comp]
    if len(edges) != n - 1:
        return None  # not a tree
    degs = {v: len(D.neighbours(v)) for v in comp}
    multi = [e for e in edges if e[2] > 1]
    if len(multi) > 1 or max(degs.values(), default=0) > 3:
        return None
    if multi:
        u, v, m = multi[0]
        if any(d > 2 for d in degs.values()):
            return None
        if m == 3:
            return "G2" if n == 2 else None
        ends = [x for x in comp if degs[x] <= 1]
        if n <= 2 or u in ends or v in ends:
            return f"B{n}/C{n}"
        return "F4" if n == 4 else None
    branch = [v for v in comp if degs[v] == 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1:
        return None
    centre = branch[0]
    arms = []
    for start in D.neighbours(centre):
        length, prev, cur = 1, centre, start
        while True:
            nxt = [w for w in D.neighbours(cur) if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{n}"
    return None


class StarAction:
    """Homomorphism from the Galois group to Aut(D), given on generators."""

    def __init__(self, context: GaloisContext, diagram: DynkinDiagram, generator_images: Sequence[Sequence[Vertex]]):
        self.context = context
        self.diagram = diagram
        gens = context.gamma.generators
        if len(generator_images) != len(gens):
            raise ValueError(f"need {len(gens)} vertex permutations, got {len(generator_images)}")
        maps = []
        for k, images in enumerate(generator_images):
            images = list(images)
            if len(images) != len(diagram.vertices):
                raise ValueError(f"star image {k} has wrong length")
            perm = dict(zip(diagram.vertices, images))
            if not diagram.is_automorphism(perm):
                raise ValueError(f"star image {k} is not a diagram automorphism")
            maps.append(perm)
        self.generator_maps = maps
        idx = {v: i for i, v in enumerate(diagram.vertices)}
        try:
            self.gset = GSet(context.gamma, len(diagram.vertices), [[idx[m[v]] for v in diagram.vertices] for m in maps])
            for g in context.gamma.elements:
                self.gset.perm_of(g)
        except ValueError as exc:
            raise ValueError(f"star action is not a group homomorphism: {exc}") from None

    def image(self, g, v: Vertex) -> Vertex:
        i = self.gset.act(g, self.diagram.index(v))
        return self.diagram.vertices[i]

    def image_set(self, g, subset) -> frozenset:
        return frozenset(self.image(g, v) for v in subset)

    def orbits_under(self, H: FiniteGroup) -> list[frozenset]:
        sub = GSet(H, self.gset.size, [self.gset.perm_of(h) for h in H.generators])
        return [frozenset(self.diagram.vertices[i] for i in orb) for orb in orbits(sub)]

    def is_invariant(self, subset, H: FiniteGroup | None = None) -> bool:
        H = H if H is not None else self.context.gamma
        S = frozenset(subset)
        return all(self.image_set(h, S) == S for h in H.generators)

    def images_json(self) -> dict:
        return {f"gen_{k}": [m[v] for v in self.diagram.vertices] for k, m in enumerate(self.generator_maps)}


@dataclass(eq=False)
class TitsGroupDatum:
    """Diagram, star-action and the p-distinguished set over each lattice field."""

    diagram: DynkinDiagram
    star: StarAction
    p_index: dict[str, frozenset]
    p_consistent: bool = True
    name: str = ""

    def __post_init__(self):
        ctx = self.context
        self.p_index = {k: frozenset(v) for k, v in self.p_index.items()}
        missing = [lab for lab in ctx.labels if lab not in self.p_index]
        if missing:
            raise LatticeError(f"p-index table lacks lattice labels {missing}")
        for label, verts in self.p_index.items():
            if label not in ctx.fields:
                raise LatticeError(f"p-index row {label!r} is not a lattice label")
            bad = [v for v in verts if v not in self.diagram.vertices]
            if bad:
                raise ValueError(f"p-index row {label!r} has unknown vertices {bad}")
            if not self.star.is_invariant(verts, ctx.subgroup(label)):
                raise ValueError(f"p-index row {label!r} is not a union of Gal(E/{label})-orbits")
        for small, big in ctx._closure:
            if not self.p_index[small] <= self.p_index[big]:
                raise ValueError(f"p-index not monotone: row {small!r} is not inside row {big!r}")

    @property
    def context(self) -> GaloisContext:
        return self.star.context


class DiagramIso:
    """Vertex bijection between two diagrams, equivariant for the star-actions."""

    def __init__(self, source: TitsGroupDatum, target: TitsGroupDatum, mapping: Mapping[Vertex, Vertex]):
        self.source, self.target = source, target
        self.mapping = dict(mapping)
        D, D2 = source.diagram, target.diagram
        if set(self.mapping) != set(D.vertices) or not _is_bijection(self.mapping, D2.vertices):
            raise ValueError("phi is not a bijection between the vertex sets")
        for a, b, m in D.edges:
            if D2.bond(self.mapping[a], self.mapping[b]) != m:
                raise ValueError(f"phi does not preserve the bond {a}-{b}")
        if len(D.edges) != len(D2.edges):
            raise ValueError("phi does not preserve the edge set")
        for k, (m1, m2) in enumerate(zip(source.star.generator_maps, target.star.generator_maps)):
            for v in D.vertices:
                if self.mapping[m1[v]] != m2[self.mapping[v]]:
                    raise ValueError(
                        f"phi is not equivariant: phi(gen_{k}.{v}) = {self.mapping[m1[v]]!r} "
                        f"but gen_{k}.phi({v}) = {m2[self.mapping[v]]!r}"
                    )

    def __call__(self, subset) -> frozenset:
        return frozenset(self.mapping[v] for v in subset)

    def inverse(self) -> "DiagramIso":
        return DiagramIso(self.target, self.source, {w: v for v, w in self.mapping.items()})

    @classmethod
    def identity(cls, datum: TitsGroupDatum, other: TitsGroupDatum | None = None) -> "DiagramIso":
        return cls(datum, other if other is not None else datum, {v: v for v in datum.diagram.vertices})


# ---------------------------------------------------------------------------
# operations


def invariant_subsets(G: TitsGroupDatum, label: str) -> Iterator[frozenset]:
    """Lazily yield every Gal(E/K)-stable vertex subset (unions of orbits)."""
    H = G.context.subgroup(label)
    orbs = G.star.orbits_under(H)
    for choice in _product((False, True), repeat=len(orbs)):
        yield frozenset().union(*[o for o, keep in zip(orbs, choice) if keep])


def minimal_constant_field(G: TitsGroupDatum, tau) -> FiniteGroup:
    """Setwise stabiliser of tau; its fixed field is the minimal field L_tau."""
    idx = [G.diagram.index(v) for v in tau]
    return stabilizer_of_subset(G.star.gset, idx)


def standard_motive_type(G: TitsGroupDatum, tau) -> tuple[str, frozenset]:
    stab = minimal_constant_field(G, tau)
    label = G.context.label_of(stab)
    if label is None:
        raise LatticeError(
            f"stabiliser of {sorted(tau, key=repr)} (generators {[list(g) for g in stab.generators]}) "
            "is not a lattice field; extend the lattice"
        )
    return label, frozenset(tau)


def _check_pair(G: TitsGroupDatum, G2: TitsGroupDatum, phi: DiagramIso):
    if not G.context.same_as(G2.context):
        raise LatticeError("group data do not share the same Galois context")
    if phi.source is not G or phi.target is not G2:
        # allow structurally equal data
        if phi.source.diagram != G.diagram or phi.target.diagram != G2.diagram:
            raise ValueError("phi does not connect the given diagrams")


def _sorted(vs) -> list:
    return sorted(vs, key=repr)


def condition_i_check(G: TitsGroupDatum, G2: TitsGroupDatum, phi: DiagramIso, tau0=frozenset()) -> Verdict:
    """Check condition (i) over every lattice field.

    For each K: tau0 is p-distinguished for G_K iff phi(tau0) is for G2_K,
    and whenever both hold, phi(D^p_{G_K}) = D^p_{G2_K}.
    """
    _check_pair(G, G2, phi)
    tau0 = frozenset(tau0)
    if not G.star.is_invariant(tau0):
        raise ValueError("tau0 must be invariant under the star-action")
    checked = []
    for label in G.context.labels:
        checked.append(label)
        d1, d2 = G.p_index[label], G2.p_index[label]
        a, b = tau0 <= d1, phi(tau0) <= d2
        if a != b:
            return Verdict(
                False,
                {"label": label, "kind": "distinguished-mismatch", "subset": _sorted(tau0),
                 "tau0_distinguished": a, "phi_tau0_distinguished": b},
                checked,
            )
        if a and phi(d1) != d2:
            return Verdict(
                False,
                {"label": label, "kind": "index-mismatch", "subset": _sorted(phi(d1) ^ d2),
                 "phi_of_index": _sorted(phi(d1)), "index_prime": _sorted(d2)},
                checked,
            )
    return Verdict(True, None, checked)


_SPECIAL_NOTE = "verdict relative to the p-special labels of the declared lattice"


def motivic_equiv_check(G: TitsGroupDatum, G2: TitsGroupDatum, phi: DiagramIso) -> Verdict:
    """phi(D^p_{G_K}) = D^p_{G2_K} at every p-special lattice label K."""
    _check_pair(G, G2, phi)
    checked = []
    for label in G.context.labels:
        if not G.context.is_p_special(label):
            continue
        checked.append(label)
        d1, d2 = G.p_index[label], G2.p_index[label]
        if phi(d1) != d2:
            return Verdict(
                False,
                {"label": label, "symmetric_difference": _sorted(phi(d1) ^ d2)},
                checked,
                _SPECIAL_NOTE,
            )
    return Verdict(True, None, checked, _SPECIAL_NOTE)
