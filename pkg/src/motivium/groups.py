"""Finite permutation groups, subgroups and finite G-sets.

A permutation is a tuple ``g`` with ``g[i]`` the image of point ``i``.
Products compose right to left: ``(g * h)[i] = g[h[i]]``, so that
``action(gh, x) == action(g, action(h, x))``.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable, Sequence, TypeVar

__all__ = [
    "MAX_ORDER",
    "GroupOrderError",
    "Perm",
    "compose",
    "invert",
    "identity_perm",
    "FiniteGroup",
    "GSet",
    "coset_space",
    "product",
    "orbits",
    "double_cosets",
    "stabilizer_of_subset",
    "all_subgroups",
    "cyclic_group",
    "symmetric_group",
    "dihedral_group",
    "direct_product",
    "perm_order",
]

MAX_ORDER = 1000

Perm = tuple
T = TypeVar("T")


class GroupOrderError(ValueError):
    pass


def compose(g: Perm, h: Perm) -> Perm:
    return tuple(g[i] for i in h)


def invert(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, gi in enumerate(g):
        out[gi] = i
    return tuple(out)


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def _check_perm(g, degree):
    if len(g) != degree or sorted(g) != list(range(degree)):
        raise ValueError(f"{list(g)} is not a permutation of [0, {degree})")


class FiniteGroup:
    """Permutation group generated by ``generators`` on ``degree`` points.

    Elements are enumerated on demand by breadth-first closure and kept in
    lexicographic order, so that the identity is element 0 and "least
    element" is well defined.  ``parent`` is set for groups built through
    :meth:`subgroup`.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]], parent: "FiniteGroup | None" = None):
        self.degree = int(degree)
        gens = [tuple(int(x) for x in g) for g in generators]
        for g in gens:
            _check_perm(g, self.degree)
        self.generators: tuple[Perm, ...] = tuple(gens)
        self.parent = parent
        self._elements: tuple[Perm, ...] | None = None
        self._tree: dict[Perm, tuple[Perm, int]] | None = None

    # -- enumeration -------------------------------------------------------

    def _close(self):
        ident = identity_perm(self.degree)
        tree: dict[Perm, tuple[Perm, int] | None] = {ident: None}
        queue = deque([ident])
        while queue:
            x = queue.popleft()
            for k, s in enumerate(self.generators):
                y = compose(s, x)
                if y not in tree:
                    tree[y] = (x, k)
                    if len(tree) > MAX_ORDER:
                        raise GroupOrderError(f"group order exceeds the cap of {MAX_ORDER}")
                    queue.append(y)
        self._tree = tree
        self._elements = tuple(sorted(tree))

    @property
    def elements(self) -> tuple[Perm, ...]:
        if self._elements is None:
            self._close()
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, g) -> bool:
        if self._tree is None:
            self._close()
        return tuple(g) in self._tree

    @property
    def identity(self) -> Perm:
        return identity_perm(self.degree)

    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def same_elements(self, other: "FiniteGroup") -> bool:
        return self.degree == other.degree and self.element_set() == other.element_set()

    def is_subgroup_of(self, other: "FiniteGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def subgroup(self, generators: Iterable[Sequence[int]]) -> "FiniteGroup":
        sub = FiniteGroup(self.degree, generators, parent=self)
        if not sub.is_subgroup_of(self):
            raise ValueError("generators do not lie in the parent group")
        return sub

    def trivial_subgroup(self) -> "FiniteGroup":
        return FiniteGroup(self.degree, [], parent=self)

    def conjugate(self, g: Perm) -> "FiniteGroup":
        gi = invert(g)
        return FiniteGroup(self.degree, [compose(compose(g, h), gi) for h in self.generators], parent=self.parent)

    def exponent(self) -> int:
        from math import lcm

        e = 1
        for g in self.elements:
            e = lcm(e, perm_order(g))
        return e

    def is_normal_in(self, other: "FiniteGroup") -> bool:
        mine = self.element_set()
        return all(
            compose(compose(g, h), invert(g)) in mine for g in other.generators for h in self.generators
        )

    def core_in(self, other: "FiniteGroup") -> "FiniteGroup":
        """Largest normal subgroup of ``other`` contained in ``self``."""
        common = self.element_set()
        for g in other.elements:
            gi = invert(g)
            common = common & {compose(compose(g, h), gi) for h in self.elements}
        return other.subgroup(_generators_for(sorted(common), self.degree))

    # -- homomorphisms out of the group ------------------------------------

    def extend_hom(self, images: Sequence[T], mul: Callable[[T, T], T], unit: T, eq: Callable[[T, T], bool]) -> dict[Perm, T]:
        """Extend generator images to every element and check well-definedness.

        Raises ``ValueError`` when the images do not define a homomorphism.
        """
        if len(images) != len(self.generators):
            raise ValueError("need one image per generator")
        if self._tree is None:
            self._close()
        hom: dict[Perm, T] = {}
        for g in self._bfs_order():
            link = self._tree[g]
            hom[g] = unit if link is None else mul(images[link[1]], hom[link[0]])
        for g in self.elements:
            for k, s in enumerate(self.generators):
                if not eq(hom[compose(s, g)], mul(images[k], hom[g])):
                    raise ValueError(f"generator images violate a relation (generator {k})")
        return hom

    def _bfs_order(self):
        # parents precede children in insertion order of the closure
        return list(self._tree)

    def __repr__(self):
        return f"FiniteGroup(degree={self.degree}, order={self.order}, gens={[list(g) for g in self.generators]})"

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        return cls(int(data["degree"]), data.get("generators", []))


def perm_order(g: Perm) -> int:
    from math import lcm

    seen = set()
    out = 1
    for i in range(len(g)):
        if i in seen:
            continue
        n = 0
        j = i
        while j not in seen:
            seen.add(j)
            j = g[j]
            n += 1
        out = lcm(out, n)
    return out


def _generators_for(elements: Sequence[Perm], degree: int) -> list[Perm]:
    """A small generating list for the subgroup with the given elements."""
    target = set(elements)
    gens: list[Perm] = []
    span = {identity_perm(degree)}
    for g in sorted(target):
        if g in span:
            continue
        gens.append(g)
        span = set(FiniteGroup(degree, gens).elements)
    return gens


# ---------------------------------------------------------------------------
# G-sets


class GSet:
    """Finite set ``{0, ..., size-1}`` with a left action of ``group``.

    The action is stored as one point permutation per group generator and
    extended to all group elements on demand (checking it is an action).
    """

    def __init__(self, group: FiniteGroup, size: int, generator_images: Sequence[Sequence[int]], labels: Sequence | None = None):
        self.group = group
        self.size = int(size)
        imgs = [tuple(int(x) for x in im) for im in generator_images]
        for im in imgs:
            _check_perm(im, self.size)
        self.generator_images: tuple[Perm, ...] = tuple(imgs)
        self.labels = tuple(labels) if labels is not None else None
        self.coset_index: dict[Perm, int] | None = None
        self._hom: dict[Perm, Perm] | None = None

    def perm_of(self, g: Perm) -> Perm:
        if self._hom is None:
            self._hom = self.group.extend_hom(
                self.generator_images, compose, identity_perm(self.size), lambda a, b: a == b
            )
        return self._hom[tuple(g)]

    def act(self, g: Perm, x: int) -> int:
        return self.perm_of(g)[x]

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"GSet(size={self.size}, group_order={self.group.order})"


def coset_space(G: FiniteGroup, H: FiniteGroup) -> GSet:
    """Left cosets gH with G acting by left multiplication.

    Cosets are represented by their least element and ordered by it.
    """
    if not H.is_subgroup_of(G):
        raise ValueError("H is not a subgroup of G")
    h_elems = H.elements
    rep_of: dict[Perm, int] = {}
    reps: list[Perm] = []
    for g in G.elements:  # lexicographic, so the first hit is the least element
        if g in rep_of:
            continue
        idx = len(reps)
        reps.append(g)
        for h in h_elems:
            rep_of[compose(g, h)] = idx
    images = [tuple(rep_of[compose(s, r)] for r in reps) for s in G.generators]
    gs = GSet(G, len(reps), images, labels=reps)
    gs.coset_index = rep_of
    return gs


def product(X: GSet, Y: GSet) -> GSet:
    """Diagonal action on X x Y; pair (x, y) is point ``x * |Y| + y``."""
    if X.group is not Y.group and not (
        X.group.generators == Y.group.generators and X.group.degree == Y.group.degree
    ):
        raise ValueError("G-sets have different acting groups")
    ny = Y.size
    images = []
    for gx, gy in zip(X.generator_images, Y.generator_images):
        images.append(tuple(gx[x] * ny + gy[y] for x in range(X.size) for y in range(ny)))
    return GSet(X.group, X.size * ny, images)


def orbits(X: GSet) -> list[list[int]]:
    seen = [False] * X.size
    out = []
    for start in range(X.size):
        if seen[start]:
            continue
        orb = [start]
        seen[start] = True
        i = 0
        while i < len(orb):
            x = orb[i]
            i += 1
            for im in X.generator_images:
                y = im[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
        out.append(sorted(orb))
    return out


def double_cosets(G: FiniteGroup, H: FiniteGroup, K: FiniteGroup) -> list[Perm]:
    """Least representative of each double coset HgK, in increasing order."""
    if not (H.is_subgroup_of(G) and K.is_subgroup_of(G)):
        raise ValueError("H and K must be subgroups of G")
    seen: set[Perm] = set()
    reps = []
    for g in G.elements:
        if g in seen:
            continue
        reps.append(g)
        for h in H.elements:
            hg = compose(h, g)
            for k in K.elements:
                seen.add(compose(hg, k))
    return reps


def stabilizer_of_subset(X: GSet, subset: Iterable[int]) -> FiniteGroup:
    S = frozenset(subset)
    if any(not 0 <= s < X.size for s in S):
        raise ValueError("subset is not contained in the G-set")
    G = X.group
    stab = [g for g in G.elements if frozenset(X.act(g, s) for s in S) == S]
    return G.subgroup(_generators_for(stab, G.degree))


# ---------------------------------------------------------------------------
# subgroup lattice and standard groups


def all_subgroups(G: FiniteGroup) -> list[FiniteGroup]:
    """Every subgroup of G, ordered by (order, sorted element list)."""
    ident = G.identity
    found: dict[frozenset, FiniteGroup] = {frozenset([ident]): G.trivial_subgroup()}
    cyclic = {}
    for g in G.elements:
        c = G.subgroup([g])
        cyclic.setdefault(c.element_set(), c)
    frontier = list(cyclic.items())
    for key, grp in frontier:
        found.setdefault(key, grp)
    cyclic_gens = [grp.generators[0] for grp in cyclic.values() if grp.generators]
    new = list(found.items())
    while new:
        nxt = []
        for key, grp in new:
            for c in cyclic_gens:
                if c in key:
                    continue
                bigger = G.subgroup(list(grp.generators) + [c])
                bkey = bigger.element_set()
                if bkey not in found:
                    found[bkey] = bigger
                    nxt.append((bkey, bigger))
        new = nxt
    return sorted(found.values(), key=lambda s: (s.order, sorted(s.elements)))


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(n, [tuple((i + 1) % n for i in range(n))] if n > 1 else [])


def symmetric_group(n: int) -> FiniteGroup:
    if n <= 1:
        return FiniteGroup(max(n, 1), [])
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple((i + 1) % n for i in range(n)))
    return FiniteGroup(n, gens)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of a regular n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup(n, [rot, ref])


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.degree, H.degree
    gens = [tuple(list(g) + [n + i for i in range(m)]) for g in G.generators]
    gens += [tuple(list(range(n)) + [n + x for x in h]) for h in H.generators]
    return FiniteGroup(n + m, gens)
