"""Artin motives, A-upper motive calculus and Tits-index checks over F_p."""

from .artin import ArtinMotive, GaloisContext, LatticeError, base_change, corestriction, motive_of_spec, picard_order
from .groups import FiniteGroup, GSet, coset_space, cyclic_group, dihedral_group, symmetric_group
from .modrep import (
    GModule,
    character_module,
    decompose,
    hom_space,
    induce,
    is_indecomposable,
    is_isomorphic,
    perm_module,
    restrict,
    tensor,
    trivial_module,
)
from .motexpr import AUpperLabel, FormalMotive, VarietyPreorder, higher_trace_compare, motive_isomorphic
from .titsdex import DiagramIso, DynkinDiagram, StarAction, TitsGroupDatum, condition_i_check, motivic_equiv_check
from .verdict import Verdict

__version__ = "0.1.0"

__all__ = [
    "ArtinMotive",
    "GaloisContext",
    "LatticeError",
    "base_change",
    "corestriction",
    "motive_of_spec",
    "picard_order",
    "FiniteGroup",
    "GSet",
    "coset_space",
    "cyclic_group",
    "dihedral_group",
    "symmetric_group",
    "GModule",
    "character_module",
    "decompose",
    "hom_space",
    "induce",
    "is_indecomposable",
    "is_isomorphic",
    "perm_module",
    "restrict",
    "tensor",
    "trivial_module",
    "AUpperLabel",
    "FormalMotive",
    "VarietyPreorder",
    "higher_trace_compare",
    "motive_isomorphic",
    "DiagramIso",
    "DynkinDiagram",
    "StarAction",
    "TitsGroupDatum",
    "condition_i_check",
    "motivic_equiv_check",
    "Verdict",
]
