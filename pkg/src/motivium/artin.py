"""Artin motives as direct summands of Galois permutation modules.

Everything happens inside one finite Galois context ``Gal(E/F)``: a field
between F and E is named by a label and represented by its subgroup
``Gamma_L``.  An Artin motive over a field K of the lattice is an
F_p[Gamma_K]-module.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteGroup, coset_space
from .modrep import (
    GModule,
    decompose,
    direct_sum,
    induce,
    is_isomorphic,
    perm_module,
    restrict,
    same_group,
    character_order,
    tensor,
)

__all__ = [
    "LatticeError",
    "PPrimeWarning",
    "GaloisContext",
    "ArtinMotive",
    "EtaleAlgebra",
    "motive_of_spec",
    "corestriction",
    "base_change",
    "picard_order",
    "m_of_variety",
    "m_functor",
    "splitting_fields",
    "tensor_motives",
]


class LatticeError(ValueError):
    """A field label or subgroup is not part of the declared lattice."""


class PPrimeWarning(UserWarning):
    """The normal closure of a non-Galois field has degree divisible by p."""


@dataclass(eq=False)
class GaloisContext:
    """Finite Galois group ``gamma = Gal(E/F)`` with a lattice of intermediate fields.

    ``fields`` maps a label to its subgroup ``Gal(E/L)``; ``order`` lists
    declared containments ``(small, big)`` meaning small is a subfield of big.
    """

    gamma: FiniteGroup
    fields: dict[str, FiniteGroup]
    order: list[tuple[str, str]] = field(default_factory=list)
    p_special: dict[str, bool] = field(default_factory=dict)

    def __post_init__(self):
        if "F" not in self.fields:
            self.fields = {"F": self.gamma, **self.fields}
        if "E" not in self.fields:
            self.fields["E"] = self.gamma.trivial_subgroup()
        if not self.fields["F"].same_elements(self.gamma):
            raise LatticeError("label 'F' must name the whole Galois group")
        if self.fields["E"].order != 1:
            raise LatticeError("label 'E' must name the trivial subgroup")
        for label, sub in self.fields.items():
            if not sub.is_subgroup_of(self.gamma):
                raise LatticeError(f"subgroup for {label!r} is not contained in the Galois group")
        for small, big in self.order:
            for lab in (small, big):
                if lab not in self.fields:
                    raise LatticeError(f"unknown field label {lab!r} in declared order")
            if not self.fields[big].is_subgroup_of(self.fields[small]):
                raise LatticeError(
                    f"declared {small!r} <= {big!r} but Gal(E/{big}) is not inside Gal(E/{small})"
                )
        self._closure = self._close_order()

    def _close_order(self) -> set[tuple[str, str]]:
        rel = {(a, a) for a in self.fields} | set(map(tuple, self.order))
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for c, d in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        return rel

    @property
    def labels(self) -> list[str]:
        return list(self.fields)

    def subgroup(self, label: str) -> FiniteGroup:
        try:
            return self.fields[label]
        except KeyError:
            raise LatticeError(f"unknown field label {label!r}") from None

    def contains(self, small: str, big: str) -> bool:
        """Declared (transitively closed) containment ``small <= big``."""
        return (small, big) in self._closure

    def label_of(self, subgroup: FiniteGroup) -> str | None:
        for label, sub in self.fields.items():
            if sub.same_elements(subgroup):
                return label
        return None

    def degree(self, label: str) -> int:
        return self.gamma.order // self.subgroup(label).order

    def is_galois(self, label: str) -> bool:
        return self.subgroup(label).is_normal_in(self.gamma)

    def normal_closure_degree(self, label: str) -> int:
        core = self.subgroup(label).core_in(self.gamma)
        return self.gamma.order // core.order

    def is_p_prime(self, label: str, p: int) -> bool:
        return self.normal_closure_degree(label) % p != 0

    def is_p_special(self, label: str) -> bool:
        return bool(self.p_special.get(label, False))

    def same_as(self, other: "GaloisContext") -> bool:
        if self is other:
            return True
        return (
            self.gamma.same_elements(other.gamma)
            and set(self.fields) == set(other.fields)
            and all(self.fields[k].same_elements(other.fields[k]) for k in self.fields)
        )


@dataclass(eq=False)
class ArtinMotive:
    """An Artin motive over the field ``base`` of ``context``."""

    context: GaloisContext
    module: GModule
    base: str = "F"
    provenance: str | None = None

    def __post_init__(self):
        target = self.context.subgroup(self.base)
        if not same_group(self.module.group, target):
            if not self.module.group.same_elements(target):
                raise LatticeError(f"module group does not match Gal(E/{self.base})")
            self.module = _regroup(self.module, target)

    @property
    def p(self) -> int:
        return self.module.p

    @property
    def rank(self) -> int:
        return self.module.dim

    def isomorphic_to(self, other: "ArtinMotive", seed: int = 0) -> bool:
        _check_same(self, other)
        return is_isomorphic(self.module, other.module, seed)

    def verify_provenance(self, seed: int = 0) -> bool:
        """Check the module is a summand of ``M(L)^F`` when provenance names L.

        Provenance strings have the form ``"summand of M(L)^F"``.
        """
        if not self.provenance or not self.provenance.startswith("summand of M("):
            return True
        label = self.provenance[len("summand of M("):].split(")")[0]
        ambient = motive_of_spec(self.context, label, self.p, base=self.base, warn=False)
        amb = decompose(ambient.module, seed)
        mine = decompose(self.module, seed)
        for s in mine.summands:
            hits = [t for t in amb.summands if is_isomorphic(s.module, t.module, seed)]
            if not hits or hits[0].multiplicity < s.multiplicity:
                return False
        return True

    def __repr__(self):
        return f"ArtinMotive(base={self.base!r}, rank={self.rank}, p={self.p})"


@dataclass
class EtaleAlgebra:
    """Product of fields ``L_i``, each given by its subgroup ``H_i``."""

    context: GaloisContext
    factors: list[FiniteGroup]

    def __post_init__(self):
        for H in self.factors:
            if not H.is_subgroup_of(self.context.gamma):
                raise LatticeError("factor subgroup is not inside the Galois group")

    @property
    def dimension(self) -> int:
        return sum(self.context.gamma.order // H.order for H in self.factors)

    def motive(self, p: int) -> ArtinMotive:
        mods = [perm_module(coset_space(self.context.gamma, H), p) for H in self.factors]
        return ArtinMotive(self.context, direct_sum(*mods), "F", "motive of an etale algebra")


def _check_same(a: ArtinMotive, b: ArtinMotive):
    if not a.context.same_as(b.context):
        raise ValueError("Artin motives live in different Galois contexts")
    if a.base != b.base:
        raise ValueError(f"Artin motives over different fields: {a.base!r} vs {b.base!r}")
    if a.p != b.p:
        raise ValueError("Artin motives with different primes")


def motive_of_spec(ctx: GaloisContext, label: str, p: int, *, base: str = "F", warn: bool = True) -> ArtinMotive:
    """``M(L)^K``: the permutation module on ``Gamma_K / Gamma_L``.

    The default ``base="F"`` gives the motive of Spec L viewed over F.
    """
    H = ctx.subgroup(label)
    K = ctx.subgroup(base)
    if not H.is_subgroup_of(K):
        raise LatticeError(f"{label!r} does not contain {base!r}")
    if warn and base == "F" and not ctx.is_galois(label) and not ctx.is_p_prime(label, p):
        warnings.warn(
            f"normal closure of {label!r} has degree {ctx.normal_closure_degree(label)} divisible by {p}",
            PPrimeWarning,
            stacklevel=2,
        )
    X = coset_space(K, H)
    return ArtinMotive(ctx, perm_module(X, p), base, f"summand of M({label})^{base}")


def corestriction(A: ArtinMotive, target: str = "F") -> ArtinMotive:
    """Transfer from ``A.base`` down to ``target``: induction of modules."""
    ctx = A.context
    G = ctx.subgroup(target)
    if not A.module.group.is_subgroup_of(G):
        raise LatticeError(f"{A.base!r} is not an extension of {target!r}")
    module = A.module
    if module.group.same_elements(G):
        return ArtinMotive(ctx, _regroup(module, G), target, A.provenance)
    return ArtinMotive(ctx, induce(module, G), target, None)


def _regroup(M: GModule, G: FiniteGroup) -> GModule:
    if same_group(M.group, G):
        return M
    return GModule(G, M.p, M.dim, [M.matrix_of(g) for g in G.generators], check=False)


def base_change(A: ArtinMotive, label: str) -> ArtinMotive:
    """Scalar extension to the field ``label``: restriction to its subgroup."""
    H = A.context.subgroup(label)
    if not H.is_subgroup_of(A.module.group):
        raise LatticeError(f"{label!r} is not an extension of {A.base!r}")
    if H.same_elements(A.module.group):
        return ArtinMotive(A.context, _regroup(A.module, H), label, A.provenance)
    return ArtinMotive(A.context, restrict(A.module, H), label, None)


def picard_order(A: ArtinMotive) -> int | None:
    """Order of A in the Picard group, or None when A is not invertible."""
    if A.rank != 1:
        return None
    return character_order(A.module)


def m_of_variety(ctx: GaloisContext, constants: str, p: int) -> ArtinMotive:
    """Image of M(X) for a connected X whose field of constants is ``constants``."""
    return motive_of_spec(ctx, constants, p)


def m_functor(A: ArtinMotive) -> ArtinMotive:
    """On Artin motives the functor is the identity."""
    return A


def splitting_fields(A: ArtinMotive) -> list[str]:
    """Lattice labels over which A becomes a sum of Tate motives."""
    out = []
    for label in A.context.labels:
        H = A.context.subgroup(label)
        if not H.is_subgroup_of(A.module.group):
            continue
        if all(_is_identity(A.module.matrix_of(h)) for h in H.generators):
            out.append(label)
    return out


def _is_identity(m) -> bool:
    return np.array_equal(m, np.eye(m.shape[0], dtype=m.dtype))


def tensor_motives(A: ArtinMotive, B: ArtinMotive) -> ArtinMotive:
    _check_same(A, B)
    return ArtinMotive(A.context, tensor(A.module, B.module), A.base, None)


def decompose_motive(A: ArtinMotive, seed: int = 0) -> list[ArtinMotive]:
    """Indecomposable summands of A, repeated with multiplicity."""
    return [
        ArtinMotive(A.context, M, A.base, A.provenance)
        for M in decompose(A.module, seed).indecomposables()
    ]


def conjugate_field(ctx: GaloisContext, label: str, g) -> FiniteGroup:
    """``g Gamma_L g^-1``: the subgroup of the conjugate embedding of L."""
    return ctx.subgroup(label).conjugate(tuple(g))
