"""Formal motives: finite sums of shifted A-upper motives U_A(Y){n}.

A variety enters only through its class in a user-supplied dominance
preorder and its isotropy over each lattice field.  The Artin part of an
A-upper label is an indecomposable :class:`~motivium.artin.ArtinMotive`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .artin import ArtinMotive, GaloisContext, LatticeError, base_change
from .groups import coset_space, compose
from .modrep import (
    GModule,
    decompose,
    is_indecomposable,
    is_isomorphic,
    tensor,
    trivial_module,
)
from .verdict import Verdict

__all__ = [
    "POINT",
    "VarietyPreorder",
    "VarietyClass",
    "AUpperLabel",
    "FormalMotive",
    "labels_isomorphic",
    "motive_isomorphic",
    "artin_tate_trace",
    "tate_trace_ranks",
    "higher_trace_compare",
    "tensor_artin",
    "expand_corestriction",
]

POINT = "point"
TRACE_NOTE = "partial trace: shift-0 Artin layer of each isotropic summand"


class VarietyPreorder:
    """Dominance preorder and isotropy table for a set of variety labels.

    ``classes`` entries look like ``{"label": "Y", "dominates": ["Z"],
    "isotropy": {"E": True}}``.  Dominance is reflexively and transitively
    closed on load; the label ``"point"`` is added and made equivalent to
    every label isotropic over F.  Isotropy over a field is inherited by
    every declared extension of it.
    """

    def __init__(self, context: GaloisContext, classes: Iterable[Mapping] = ()):
        self.context = context
        self._dom: dict[str, set[str]] = {}
        self._iso: dict[str, dict[str, bool]] = {}
        for entry in classes:
            label = str(entry["label"])
            if label in self._dom:
                raise ValueError(f"duplicate variety label {label!r}")
            self._dom[label] = set(map(str, entry.get("dominates", ())))
            iso = {str(k): bool(v) for k, v in dict(entry.get("isotropy", {})).items()}
            for k in iso:
                context.subgroup(k)
            self._iso[label] = iso
        if POINT not in self._dom:
            self._dom[POINT] = set()
        self._iso[POINT] = {k: True for k in context.labels}
        for label, targets in self._dom.items():
            unknown = targets - set(self._dom)
            if unknown:
                raise ValueError(f"{label!r} dominates unknown labels {sorted(unknown)}")
        for label in list(self._dom):
            self._check_isotropy(label)
            if self.is_isotropic(label, "F"):
                self._dom[label].add(POINT)
                self._dom[POINT].add(label)
            # every variety carries a multiplicity-one correspondence to the point
            self._dom[label].add(POINT)
        self._close()
        self._check_dominance()

    def _check_isotropy(self, label):
        ctx = self.context
        for small, big in ctx._closure:
            if small in self._iso[label] and big in self._iso[label]:
                if self._iso[label][small] and not self._iso[label][big]:
                    raise ValueError(
                        f"isotropy of {label!r} not monotone: isotropic over {small!r} but not over {big!r}"
                    )

    def _check_dominance(self):
        # X dominates Y forces Y isotropic wherever X is
        for a, targets in self._dom.items():
            for b in targets:
                for k in self.context.labels:
                    if self.is_isotropic(a, k) and not self.is_isotropic(b, k):
                        raise ValueError(
                            f"{a!r} dominates {b!r} and is isotropic over {k!r}, but {b!r} is not"
                        )

    def _close(self):
        for label in self._dom:
            self._dom[label].add(label)
        changed = True
        while changed:
            changed = False
            for a, targets in self._dom.items():
                extra = set().union(*(self._dom[b] for b in targets)) - targets
                if extra:
                    targets |= extra
                    changed = True

    @property
    def labels(self) -> list[str]:
        return list(self._dom)

    def __getitem__(self, label: str) -> "VarietyClass":
        if label not in self._dom:
            raise KeyError(f"unknown variety label {label!r}")
        return VarietyClass(label, self)

    def __contains__(self, label) -> bool:
        return label in self._dom

    def dominates(self, a: str, b: str) -> bool:
        return b in self._dom[a]

    def equivalent(self, a: str, b: str) -> bool:
        return self.dominates(a, b) and self.dominates(b, a)

    def is_isotropic(self, label: str, field: str) -> bool:
        iso = self._iso[label]
        if field in iso:
            return iso[field]
        return any(v and self.context.contains(k, field) for k, v in iso.items())

    def to_json(self) -> list[dict]:
        return [
            {"label": lab, "dominates": sorted(self._dom[lab] - {lab}), "isotropy": dict(self._iso[lab])}
            for lab in self._dom
            if lab != POINT
        ]


@dataclass(frozen=True)
class VarietyClass:
    label: str
    preorder: VarietyPreorder

    def __repr__(self):
        return f"VarietyClass({self.label!r})"


class AUpperLabel:
    """Names the A-upper motive U_A(Y) for a variety class Y and an
    indecomposable Artin motive A."""

    def __init__(self, variety: VarietyClass, artin: ArtinMotive, *, check: bool = True):
        if check and (artin.rank == 0 or not is_indecomposable(artin.module)):
            raise ValueError("the Artin part of an A-upper label must be indecomposable")
        self.variety = variety
        self.artin = artin

    @property
    def context(self) -> GaloisContext:
        return self.artin.context

    def __repr__(self):
        return f"U[{self.artin.rank}-dim Artin]({self.variety.label})"


def _check_contexts(u: AUpperLabel, v: AUpperLabel):
    if not u.context.same_as(v.context) or u.artin.p != v.artin.p:
        raise ValueError("A-upper labels live in different contexts")
    if u.variety.preorder is not v.variety.preorder:
        raise ValueError("A-upper labels use different variety preorders")


def _artin_iso(a: ArtinMotive, b: ArtinMotive) -> bool:
    if a.base != b.base or a.rank != b.rank:
        return False
    return is_isomorphic(a.module, b.module)


def labels_isomorphic(u: AUpperLabel, v: AUpperLabel) -> bool:
    """Isomorphic Artin parts and equivalent variety classes."""
    _check_contexts(u, v)
    if not u.variety.preorder.equivalent(u.variety.label, v.variety.label):
        return False
    return _artin_iso(u.artin, v.artin)


class FormalMotive:
    """Finite multiset of shifted A-upper labels."""

    def __init__(self, summands: Iterable[tuple[AUpperLabel, int]] = ()):
        items = []
        for label, shift in summands:
            if int(shift) < 0:
                raise ValueError("Tate shifts must be non-negative")
            items.append((label, int(shift)))
        self.summands: tuple[tuple[AUpperLabel, int], ...] = tuple(items)
        if items:
            first = items[0][0]
            for lab, _ in items[1:]:
                _check_contexts(first, lab)

    @classmethod
    def from_entries(cls, entries: Iterable[tuple[AUpperLabel, int, int]]) -> "FormalMotive":
        return cls((lab, shift) for lab, shift, mult in entries for _ in range(mult))

    def __add__(self, other: "FormalMotive") -> "FormalMotive":
        return FormalMotive(self.summands + other.summands)

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    @property
    def context(self) -> GaloisContext | None:
        return self.summands[0][0].context if self.summands else None

    @property
    def rank(self) -> int:
        return sum(lab.artin.rank for lab, _ in self.summands)

    def shifts(self) -> Counter:
        return Counter(s for _, s in self.summands)

    def __repr__(self):
        return " + ".join(f"{lab!r}{{{s}}}" for lab, s in self.summands) or "0"


def _match_multisets(xs: Sequence, ys: Sequence, same) -> bool:
    if len(xs) != len(ys):
        return False
    left = list(ys)
    for x in xs:
        for i, y in enumerate(left):
            if same(x, y):
                del left[i]
                break
        else:
            return False
    return True


def _by_shift(items):
    out: dict[int, list] = {}
    for thing, shift in items:
        out.setdefault(shift, []).append(thing)
    return out


def motive_isomorphic(M: FormalMotive, N: FormalMotive) -> bool:
    """Shift-preserving bijection of summands under :func:`labels_isomorphic`."""
    if M.summands and N.summands:
        _check_contexts(M.summands[0][0], N.summands[0][0])
    bm, bn = _by_shift(M), _by_shift(N)
    if set(bm) != set(bn):
        return False
    return all(_match_multisets(bm[s], bn[s], labels_isomorphic) for s in sorted(bm))


def artin_tate_trace(M: FormalMotive, field: str) -> list[tuple[ArtinMotive, int]]:
    """Artin-Tate part over ``field``: every summand whose variety is
    isotropic there contributes the indecomposable summands of its Artin
    part, base-changed, at its own shift."""
    out = []
    for label, shift in M:
        ctx = label.context
        ctx.subgroup(field)
        if not label.variety.preorder.is_isotropic(label.variety.label, field):
            continue
        A = base_change(label.artin, field)
        for piece in decompose(A.module).indecomposables():
            out.append((ArtinMotive(ctx, piece, field, None), shift))
    out.sort(key=lambda t: (t[1], t[0].module.sort_key()))
    return out


def tate_trace_ranks(M: FormalMotive, field: str) -> dict[int, int]:
    """Rank-only Tate trace: number of Tate summands at each shift."""
    counts: dict[int, int] = {}
    for A, shift in artin_tate_trace(M, field):
        if A.rank == 1 and A.module.is_trivial():
            counts[shift] = counts.get(shift, 0) + 1
    return counts


def _traces_match(ta, tb) -> bool:
    ba, bb = _by_shift(ta), _by_shift(tb)
    if set(ba) != set(bb):
        return False
    return all(_match_multisets(ba[s], bb[s], _artin_iso) for s in ba)


def _describe_trace(trace) -> list[dict]:
    out = []
    for A, shift in trace:
        entry = {"shift": shift, "rank": A.rank, "tate": A.rank == 1 and A.module.is_trivial()}
        if A.rank == 1:
            entry["character"] = [int(m[0, 0]) for m in A.module.action]
        out.append(entry)
    return out


def higher_trace_compare(M: FormalMotive, N: FormalMotive, *, report: bool = False) -> Verdict:
    """Compare Artin-Tate traces of M and N over every lattice field.

    FAIL names the first label (in lattice order) where they differ.  With
    ``report=True`` the per-label traces are attached as ``details``.
    """
    ctx = M.context or N.context
    if M.context is not None and N.context is not None and not M.context.same_as(N.context):
        raise LatticeError("formal motives use different lattices")
    if ctx is None:
        return Verdict(True, None, [], TRACE_NOTE)
    checked = []
    details = {}
    witness = None
    for label in ctx.labels:
        tm, tn = artin_tate_trace(M, label), artin_tate_trace(N, label)
        checked.append(label)
        if report:
            details[label] = {"M": _describe_trace(tm), "N": _describe_trace(tn)}
        if not _traces_match(tm, tn):
            witness = {"label": label}
            if not report:
                break
    return Verdict(witness is None, witness, checked, TRACE_NOTE, {"traces": details} if report else {})


def tensor_artin(M: FormalMotive, B: ArtinMotive) -> FormalMotive:
    """Rewrite each U_A(Y){n} (x) B as the sum of U_A'(Y){n} over the
    indecomposable summands A' of A (x) B."""
    out = []
    for label, shift in M:
        if not label.context.same_as(B.context) or label.artin.base != B.base:
            raise ValueError("Artin motive B is over a different context or field")
        prod = tensor(label.artin.module, B.module)
        for piece in decompose(prod).indecomposables():
            art = ArtinMotive(label.context, piece, B.base, None)
            out.append((AUpperLabel(label.variety, art, check=False), shift))
    return FormalMotive(out)


def artin_tensor_power(B: ArtinMotive, k: int) -> ArtinMotive:
    mod: GModule = trivial_module(B.module.group, B.p)
    for _ in range(k):
        mod = tensor(mod, B.module)
    return ArtinMotive(B.context, mod, B.base, None)


def expand_corestriction(
    u: AUpperLabel,
    field: str,
    conjugation: Sequence[Mapping[str, str]],
) -> FormalMotive:
    """``(U(Y)^F)_L`` as the sum of ``U(Y_sigma)`` over sigma in Gal(L/F).

    ``conjugation`` gives, for each generator of the Galois group, the
    permutation it induces on variety labels.
    """
    ctx = u.context
    if not ctx.is_galois(field):
        raise ValueError(f"{field!r} is not Galois over F")
    gamma = ctx.gamma
    if len(conjugation) != len(gamma.generators):
        raise ValueError("missing conjugation data: need one label map per Galois generator")
    universe = {u.variety.label}
    for m in conjugation:
        universe |= set(m) | set(m.values())
    labels = sorted(universe)
    preorder = u.variety.preorder
    unknown = [lab for lab in labels if lab not in preorder]
    if unknown:
        raise ValueError(f"conjugation data names unknown variety labels {unknown}")
    maps = []
    for k, m in enumerate(conjugation):
        full = {lab: m.get(lab, lab) for lab in labels}
        if sorted(full.values()) != labels:
            raise ValueError(f"conjugation data for generator {k} is not a permutation")
        maps.append(full)
    index = {lab: i for i, lab in enumerate(labels)}
    perms = [tuple(index[m[lab]] for lab in labels) for m in maps]
    hom = gamma.extend_hom(perms, compose, tuple(range(len(labels))), lambda a, b: a == b)
    H = ctx.subgroup(field)
    for h in H.elements:
        if hom[h][index[u.variety.label]] != index[u.variety.label]:
            raise ValueError(f"Gal(E/{field}) moves {u.variety.label!r}; it is not defined over {field!r}")
    upper = ArtinMotive(ctx, trivial_module(H, u.artin.p), field, None)
    out = []
    for rep in coset_space(gamma, H).labels:
        conj = labels[hom[rep][index[u.variety.label]]]
        out.append((AUpperLabel(preorder[conj], upper, check=False), 0))
    return FormalMotive(out)
