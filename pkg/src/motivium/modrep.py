"""Finite-dimensional F_p[G]-modules and their Krull-Schmidt decomposition.

Modules act on column vectors: ``rho(g) @ v``.  Endomorphism rings are
computed once per module; summands inherit their endomorphisms and their
mutual homomorphisms by compressing with the embedding/projection pair of
each summand, so the linear solver only ever runs on the ambient module.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import ffarith as ff
from .groups import FiniteGroup, GSet, Perm, coset_space, compose, invert

__all__ = [
    "RepresentationError",
    "GModule",
    "EndAlgebra",
    "Summand",
    "Decomposition",
    "perm_module",
    "trivial_module",
    "character_module",
    "direct_sum",
    "hom_space",
    "decompose",
    "is_indecomposable",
    "is_isomorphic",
    "tensor",
    "restrict",
    "induce",
    "conjugate_module",
    "trivial_multiplicity",
]

# random Fitting attempts before falling back on the radical certificate
_QUICK_TRIES = 6
_MAX_TRIES = 400


class RepresentationError(ValueError):
    """Action matrices do not define a representation of the group."""


def same_group(g1: FiniteGroup, g2: FiniteGroup) -> bool:
    return g1 is g2 or (g1.degree == g2.degree and g1.generators == g2.generators)


class GModule:
    """An F_p-representation of a finite permutation group.

    ``action`` holds one ``dim x dim`` matrix per generator of ``group``.
    Construction checks invertibility and that the generator images extend
    to a homomorphism on the whole group.
    """

    def __init__(self, group: FiniteGroup, p: int, dim: int, action: Sequence, *, check: bool = True):
        if not ff.is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.group = group
        self.p = int(p)
        self.dim = int(dim)
        mats = []
        for k, a in enumerate(action):
            m = np.array(a, dtype=np.int64)
            if m.size != self.dim * self.dim:
                raise RepresentationError(f"action matrix {k} has shape {m.shape}, expected {self.dim}x{self.dim}")
            m = m.reshape(self.dim, self.dim) % p
            m.setflags(write=False)
            mats.append(m)
        if len(mats) != len(group.generators):
            raise RepresentationError(
                f"expected {len(group.generators)} action matrices, got {len(mats)}"
            )
        self.action: tuple[np.ndarray, ...] = tuple(mats)
        self._hom = None
        if check:
            self._validate()

    def _validate(self):
        for k, m in enumerate(self.action):
            if self.dim and not ff.is_invertible(m, self.p):
                raise RepresentationError(f"action matrix {k} is not invertible mod {self.p}")
        self._element_map()

    def _element_map(self):
        if self._hom is None:
            p = self.p
            try:
                self._hom = self.group.extend_hom(
                    self.action,
                    lambda a, b: (a @ b) % p,
                    ff.identity(self.dim),
                    lambda a, b: np.array_equal(a, b),
                )
            except ValueError as exc:
                raise RepresentationError(str(exc)) from None
        return self._hom

    def matrix_of(self, g: Perm) -> np.ndarray:
        return self._element_map()[tuple(g)]

    # -- structure ---------------------------------------------------------

    def is_trivial(self) -> bool:
        return all(np.array_equal(m, ff.identity(self.dim)) for m in self.action)

    def permutation_images(self) -> list[Perm] | None:
        """Point permutations if every action matrix is a permutation matrix."""
        perms = []
        for m in self.action:
            if not (np.all((m == 0) | (m == 1)) and np.all(m.sum(axis=0) == 1) and np.all(m.sum(axis=1) == 1)):
                return None
            perms.append(tuple(int(i) for i in np.argmax(m, axis=0)))
        return perms

    def sort_key(self) -> tuple:
        return (self.dim, tuple(tuple(m.ravel().tolist()) for m in self.action))

    def same_matrices(self, other: "GModule") -> bool:
        return (
            self.p == other.p
            and self.dim == other.dim
            and same_group(self.group, other.group)
            and all(np.array_equal(a, b) for a, b in zip(self.action, other.action))
        )

    def __repr__(self):
        return f"GModule(p={self.p}, dim={self.dim}, group_order={self.group.order})"

    def to_json(self, group_ref=None) -> dict:
        return {
            "p": self.p,
            "group": group_ref if group_ref is not None else self.group.to_json(),
            "dim": self.dim,
            "action": {f"gen_{k}": m.tolist() for k, m in enumerate(self.action)},
        }

    @cached_property
    def endomorphisms(self) -> "EndAlgebra":
        return EndAlgebra(self)


def _check_compatible(M: GModule, N: GModule):
    if M.p != N.p:
        raise ValueError(f"prime mismatch: {M.p} vs {N.p}")
    if not same_group(M.group, N.group):
        raise ValueError("modules are over different groups")


def trivial_module(group: FiniteGroup, p: int, dim: int = 1) -> GModule:
    return GModule(group, p, dim, [ff.identity(dim)] * len(group.generators), check=False)


def character_module(group: FiniteGroup, p: int, values: Sequence[int]) -> GModule:
    """One-dimensional module with generator k acting by ``values[k]``."""
    return GModule(group, p, 1, [[[v]] for v in values])


def perm_module(X: GSet, p: int) -> GModule:
    n = X.size
    mats = []
    for im in X.generator_images:
        m = np.zeros((n, n), dtype=np.int64)
        m[list(im), list(range(n))] = 1
        mats.append(m)
    return GModule(X.group, p, n, mats)


def direct_sum(*modules: GModule) -> GModule:
    if not modules:
        raise ValueError("direct_sum needs at least one module")
    first = modules[0]
    for M in modules[1:]:
        _check_compatible(first, M)
    dim = sum(M.dim for M in modules)
    mats = []
    for k in range(len(first.group.generators)):
        m = np.zeros((dim, dim), dtype=np.int64)
        off = 0
        for M in modules:
            m[off:off + M.dim, off:off + M.dim] = M.action[k]
            off += M.dim
        mats.append(m)
    return GModule(first.group, first.p, dim, mats, check=False)


def conjugate_module(M: GModule, P: np.ndarray) -> GModule:
    """The module with matrices ``P^-1 rho(g) P`` (isomorphic to M)."""
    Pinv = ff.inverse(P, M.p)
    return GModule(M.group, M.p, M.dim, [(Pinv @ m @ P) % M.p for m in M.action], check=False)


# ---------------------------------------------------------------------------
# Hom spaces


def _perm_hom_basis(M: GModule, N: GModule) -> list[np.ndarray] | None:
    pm, pn = M.permutation_images(), N.permutation_images()
    if pm is None or pn is None:
        return None
    # orbitals: G-orbits on (N-point, M-point) pairs
    seen = np.zeros((N.dim, M.dim), dtype=bool)
    basis = []
    for y in range(N.dim):
        for x in range(M.dim):
            if seen[y, x]:
                continue
            f = np.zeros((N.dim, M.dim), dtype=np.int64)
            stack = [(y, x)]
            seen[y, x] = True
            while stack:
                b, a = stack.pop()
                f[b, a] = 1
                for gm, gn in zip(pm, pn):
                    nb, na = gn[b], gm[a]
                    if not seen[nb, na]:
                        seen[nb, na] = True
                        stack.append((nb, na))
            basis.append(f)
    return basis


def hom_space(M: GModule, N: GModule, *, use_orbitals: bool = True) -> list[np.ndarray]:
    """Basis of the intertwiners ``f: M -> N`` (``N.dim x M.dim`` matrices)."""
    _check_compatible(M, N)
    if M.dim == 0 or N.dim == 0:
        return []
    if use_orbitals:
        basis = _perm_hom_basis(M, N)
        if basis is not None:
            return basis
    if not M.group.generators:
        return [m for m in _unit_basis(N.dim, M.dim)]
    return ff.solve_commutant(list(zip(M.action, N.action)), M.p)


def _unit_basis(n, m):
    for i in range(n):
        for j in range(m):
            e = np.zeros((n, m), dtype=np.int64)
            e[i, j] = 1
            yield e


def _span_basis(mats: Iterable[np.ndarray], shape, p) -> list[np.ndarray]:
    mats = list(mats)
    if not mats or shape[0] == 0 or shape[1] == 0:
        return []
    flat = np.array([m.ravel() for m in mats], dtype=np.int64) % p
    r, piv = ff.rref(flat, p)
    return [r[i].reshape(shape).copy() for i in range(len(piv))]


# ---------------------------------------------------------------------------
# endomorphism algebras


class EndAlgebra:
    """A subalgebra of ``M_n(F_p)`` given by a basis; by default End_G(M)."""

    def __init__(self, module: GModule | None = None, basis: Sequence[np.ndarray] | None = None, *, p: int | None = None, n: int | None = None):
        self.module = module
        if basis is None:
            if module is None:
                raise ValueError("need a module or a basis")
            basis = hom_space(module, module)
        self.p = module.p if module is not None else int(p)
        self.n = module.dim if module is not None else int(n)
        self.basis: list[np.ndarray] = _span_basis(basis, (self.n, self.n), self.p)
        flat = np.array([b.ravel() for b in self.basis], dtype=np.int64).reshape(len(self.basis), self.n * self.n)
        self._flat = flat
        if self.basis:
            _, piv = ff.rref(flat, self.p)
            self._piv = piv
            self._solve = ff.inverse(flat[:, piv], self.p)
        else:
            self._piv, self._solve = [], np.zeros((0, 0), dtype=np.int64)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, x: np.ndarray) -> np.ndarray:
        v = np.asarray(x, dtype=np.int64).ravel() % self.p
        c = (v[self._piv] @ self._solve) % self.p
        if not np.array_equal((c @ self._flat) % self.p, v):
            raise ValueError("matrix is not in the algebra")
        return c

    def element(self, c: Sequence[int]) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=np.int64)
        for ci, b in zip(c, self.basis):
            if ci:
                out = (out + ci * b) % self.p
        return out

    def random_element(self, rng: random.Random) -> np.ndarray:
        return self.element([rng.randrange(self.p) for _ in self.basis])

    # -- Jacobson radical ---------------------------------------------------

    @cached_property
    def radical_basis(self) -> list[np.ndarray]:
        """Jacobson radical by the iterated generalised-trace filtration.

        ``I_-1 = A``; ``I_i = {a in I_(i-1) : g_i(ab) = 0 for all b in A}``
        with ``g_i(x) = (Tr(x~^(p^i)) mod p^(i+1)) / p^i`` for an integer lift
        ``x~``.  ``I_l`` with ``p^l <= n < p^(l+1)`` is the radical.
        """
        p, n = self.p, self.n
        if not self.basis:
            return []
        ideal = list(self.basis)
        i = 0
        while True:
            q = p**i
            if q > n:
                break
            modulus = p ** (i + 1)
            vals = np.zeros((len(self.basis), len(ideal)), dtype=np.int64)
            for k, a in enumerate(ideal):
                for j, b in enumerate(self.basis):
                    x = (a @ b) % p
                    vals[j, k] = _gen_trace(x, q, modulus)
            kern = ff.nullspace(vals, p)
            ideal = _span_basis(
                [sum((int(c) * a for c, a in zip(row, ideal)), np.zeros((n, n), dtype=np.int64)) % p for row in kern],
                (n, n),
                p,
            )
            if not ideal:
                break
            i += 1
        return ideal

    @cached_property
    def _quotient(self):
        """Structure of A/J: complement basis, products, commutativity."""
        p, n = self.p, self.n
        rad = self.radical_basis
        comp = []
        span = list(rad)
        cur = len(_span_basis(span, (n, n), p)) if span else 0
        for b in self.basis:
            trial = _span_basis(span + [b], (n, n), p)
            if len(trial) > cur:
                span.append(b)
                comp.append(b)
                cur = len(trial)
        ordered = np.array([m.ravel() for m in list(rad) + comp], dtype=np.int64).reshape(-1, n * n)
        _, piv = ff.rref(ordered, p) if len(ordered) else (None, [])
        solve = ff.inverse(ordered[:, piv], p) if len(ordered) else None
        r = len(rad)

        def qcoords(x):
            v = np.asarray(x, dtype=np.int64).ravel() % p
            return ((v[piv] @ solve) % p)[r:]

        return comp, qcoords

    @cached_property
    def residue_degree(self) -> int:
        """``dim(A / J(A))``; equals k when A is local with residue field F_(p^k)."""
        return self.dim - len(self.radical_basis)

    def _frobenius_fixed(self, elems):
        """Fixed space of x -> x^p on the span of ``elems`` modulo J."""
        comp, qcoords = self._quotient
        p = self.p
        if not elems:
            return np.zeros((0, len(comp)), dtype=np.int64)
        # express elems in quotient coordinates; Frobenius acts on their span
        coords = np.array([qcoords(e) for e in elems], dtype=np.int64)
        images = np.array([qcoords(ff.matpow(e, p, p)) for e in elems], dtype=np.int64)
        # solve sum c_a (image_a - coord_a) = 0
        kern = ff.nullspace(((images - coords) % p).T, p)
        return (kern @ coords) % p

    @cached_property
    def is_local(self) -> bool:
        """True iff A/J(A) is a field (A local), decided deterministically."""
        if self.dim == 0:
            return False
        comp, qcoords = self._quotient
        if len(comp) == 1:
            return True
        p = self.p
        for a in comp:
            for b in comp:
                if np.any(qcoords((a @ b - b @ a) % p)):
                    return False
        fixed = self._frobenius_fixed(comp)
        return ff.rank(fixed, p) == 1

    def central_splitter(self) -> np.ndarray | None:
        """An element whose minimal polynomial has two distinct roots, found
        in the centre of A/J when that centre is not a field; else None."""
        comp, qcoords = self._quotient
        p, n = self.p, self.n
        if len(comp) <= 1:
            return None
        # centre of A/J: z with z b - b z in J for all b
        rows = []
        for b in comp:
            block = np.array([qcoords((a @ b - b @ a) % p) for a in comp], dtype=np.int64).T
            rows.append(block)
        kern = ff.nullspace(np.concatenate(rows, axis=0), p)
        centre = [sum((int(c) * a for c, a in zip(row, comp)), np.zeros((n, n), dtype=np.int64)) % p for row in kern]
        fixed = self._frobenius_fixed(centre)
        one = qcoords(ff.identity(n))
        for v in fixed:
            if ff.rank(np.array([v, one]), p) == 2:
                return sum((int(c) * a for c, a in zip(v, comp)), np.zeros((n, n), dtype=np.int64)) % p
        return None


def _gen_trace(x: np.ndarray, q: int, modulus: int) -> int:
    if q == 1:
        return int(np.trace(x)) % modulus
    acc = ff.identity(x.shape[0])
    base = x.astype(np.int64) % modulus
    e = q
    while e:
        if e & 1:
            acc = (acc @ base) % modulus
        base = (base @ base) % modulus
        e >>= 1
    t = int(np.trace(acc)) % modulus
    if t % q:
        raise ArithmeticError("generalised trace not divisible; not an element of the previous ideal")
    return t // q


# ---------------------------------------------------------------------------
# decomposition


@dataclass
class _Piece:
    S: np.ndarray  # ambient.dim x d, columns span the summand
    P: np.ndarray  # d x ambient.dim, coordinate projection (P @ S = I)
    residue_degree: int = 0


@dataclass
class Summand:
    """One isomorphism class of indecomposable summands."""

    module: GModule
    multiplicity: int
    residue_degree: int
    embeddings: list[np.ndarray] = field(default_factory=list, repr=False)

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def is_trivial(self) -> bool:
        return self.module.dim == 1 and self.module.is_trivial()


@dataclass
class Decomposition:
    module: GModule
    summands: list[Summand]
    seed: int = 0

    def __iter__(self):
        return iter(self.summands)

    def __len__(self):
        return len(self.summands)

    @property
    def total_dim(self) -> int:
        return sum(s.multiplicity * s.dim for s in self.summands)

    def indecomposables(self) -> list[GModule]:
        """Summand modules listed with multiplicity."""
        return [s.module for s in self.summands for _ in range(s.multiplicity)]

    def to_json(self) -> dict:
        out = []
        for s in self.summands:
            entry = {
                "dim": s.dim,
                "multiplicity": s.multiplicity,
                "residue_degree": s.residue_degree,
                "action": {f"gen_{k}": m.tolist() for k, m in enumerate(s.module.action)},
            }
            if s.dim == 1:
                entry["character"] = [int(m[0, 0]) for m in s.module.action]
            out.append(entry)
        return {"p": self.module.p, "dim": self.module.dim, "summands": out}


def _compress(end_basis, piece_from: _Piece, piece_to: _Piece, p) -> list[np.ndarray]:
    """``P_to @ phi @ S_from`` for every phi, batched."""
    if not end_basis:
        return []
    E = np.stack(end_basis)
    k, n, _ = E.shape
    d_from, d_to = piece_from.S.shape[1], piece_to.P.shape[0]
    ES = ff.matmul(E.reshape(k * n, n), piece_from.S, p).reshape(k, n, d_from)
    out = ff.matmul(piece_to.P, ES.transpose(1, 0, 2).reshape(n, k * d_from), p)
    return list(out.reshape(d_to, k, d_from).transpose(1, 0, 2))


def _fitting_split(phi: np.ndarray, p: int, seed: int) -> list[np.ndarray] | None:
    """Column bases of the Fitting components of ``phi`` (None if only one)."""
    mp = ff.min_poly(phi, p)
    facs = ff.factor(mp, seed=seed)
    if len(facs) < 2:
        return None
    return [ff.column_nullspace(ff.poly_eval_matrix(f**e, phi, p), p) for f, e in facs]


def _split_piece(piece: _Piece, blocks: list[np.ndarray], p: int) -> list[_Piece]:
    Q = np.concatenate(blocks, axis=1)
    Qinv = ff.inverse(Q, p)
    out, off = [], 0
    for K in blocks:
        d = K.shape[1]
        out.append(_Piece((piece.S @ K) % p, (Qinv[off:off + d] @ piece.P) % p))
        off += d
    return out


def _piece_algebra(end_basis, piece: _Piece, p) -> EndAlgebra:
    d = piece.S.shape[1]
    return EndAlgebra(basis=_compress(end_basis, piece, piece, p), p=p, n=d)


def _split_completely(M: GModule, rng: random.Random) -> list[_Piece]:
    p = M.p
    end_basis = M.endomorphisms.basis
    todo = [_Piece(ff.identity(M.dim), ff.identity(M.dim))]
    done: list[_Piece] = []
    while todo:
        piece = todo.pop()
        alg = _piece_algebra(end_basis, piece, p)
        if alg.dim == 1:
            piece.residue_degree = 1
            done.append(piece)
            continue
        blocks = None
        for _ in range(_QUICK_TRIES):
            blocks = _fitting_split(alg.random_element(rng), p, rng.randrange(2**31))
            if blocks:
                break
        if not blocks:
            if alg.is_local:
                piece.residue_degree = alg.residue_degree
                done.append(piece)
                continue
            z = alg.central_splitter()
            if z is not None:
                blocks = _fitting_split(z, p, rng.randrange(2**31))
            tries = 0
            while not blocks:
                tries += 1
                if tries > _MAX_TRIES:
                    raise RuntimeError("failed to split a decomposable module")
                blocks = _fitting_split(alg.random_element(rng), p, rng.randrange(2**31))
        todo.extend(_split_piece(piece, blocks, p))
    return done


def _pieces_isomorphic(end_basis, a: _Piece, b: _Piece, p: int) -> bool:
    if a.S.shape[1] != b.S.shape[1] or a.residue_degree != b.residue_degree:
        return False
    fwd = _span_basis(_compress(end_basis, a, b, p), (b.S.shape[1], a.S.shape[1]), p)
    if not fwd:
        return False
    back = _span_basis(_compress(end_basis, b, a, p), (a.S.shape[1], b.S.shape[1]), p)
    return _local_iso_witness(fwd, back, p)


def _local_iso_witness(fwd, back, p) -> bool:
    """For indecomposable M, N: M ~ N iff some g f (f: M->N, g: N->M) is a unit.

    Non-units of the local ring End(M) form an ideal, so it suffices to
    test products of spanning elements.
    """
    for f in fwd:
        for g in back:
            if ff.is_invertible((g @ f) % p, p):
                return True
    return False


def _canonical_piece(M: GModule, piece: _Piece) -> tuple[_Piece, GModule]:
    p = M.p
    d = piece.S.shape[1]
    Sc = ff.rref(piece.S.T, p)[0][:d].T.copy()
    T = (piece.P @ Sc) % p
    Pc = (ff.inverse(T, p) @ piece.P) % p
    canon = _Piece(Sc, Pc, piece.residue_degree)
    sub = GModule(M.group, p, d, [(Pc @ m @ Sc) % p for m in M.action], check=False)
    return canon, sub


def decompose(M: GModule, seed: int = 0) -> Decomposition:
    """Complete decomposition into indecomposables with multiplicities.

    Randomness (choice of endomorphisms to split along) comes from ``seed``
    only; the resulting multiset of isomorphism classes does not depend on it.
    """
    if M.dim == 0:
        return Decomposition(M, [], seed)
    rng = random.Random(seed)
    pieces = _split_completely(M, rng)
    end_basis = M.endomorphisms.basis
    classes: list[list[_Piece]] = []
    for piece in pieces:
        for cls in classes:
            if _pieces_isomorphic(end_basis, cls[0], piece, M.p):
                cls.append(piece)
                break
        else:
            classes.append([piece])
    summands = []
    for cls in classes:
        canon = [_canonical_piece(M, pc) for pc in cls]
        rep = min(canon, key=lambda t: t[1].sort_key())
        summands.append(
            Summand(rep[1], len(cls), cls[0].residue_degree, embeddings=[c[0].S for c in canon])
        )
    summands.sort(key=lambda s: s.module.sort_key())
    return Decomposition(M, summands, seed)


def is_indecomposable(M: GModule) -> bool:
    """True iff End_G(M) is local."""
    if M.dim == 0:
        raise ValueError("the zero module is neither decomposable nor indecomposable")
    return M.endomorphisms.is_local


def _indecomposables_isomorphic(A: GModule, B: GModule) -> bool:
    if A.dim != B.dim:
        return False
    if A.same_matrices(B):
        return True
    fwd = hom_space(A, B)
    if not fwd:
        return False
    back = hom_space(B, A)
    return _local_iso_witness(fwd, back, A.p)


def is_isomorphic(M: GModule, N: GModule, seed: int = 0) -> bool:
    """Decide ``M ~ N`` by matching complete decompositions."""
    _check_compatible(M, N)
    if M.dim != N.dim:
        return False
    if M.same_matrices(N):
        return True
    dm, dn = decompose(M, seed), decompose(N, seed)
    return decompositions_match(dm, dn)


def decompositions_match(dm: Decomposition, dn: Decomposition) -> bool:
    if dm.total_dim != dn.total_dim or len(dm.summands) != len(dn.summands):
        return False
    unmatched = list(dn.summands)
    for s in dm.summands:
        for t in unmatched:
            if (
                s.multiplicity == t.multiplicity
                and s.residue_degree == t.residue_degree
                and _indecomposables_isomorphic(s.module, t.module)
            ):
                unmatched.remove(t)
                break
        else:
            return False
    return not unmatched


def tensor(M: GModule, N: GModule) -> GModule:
    _check_compatible(M, N)
    mats = [np.kron(a, b) % M.p for a, b in zip(M.action, N.action)]
    return GModule(M.group, M.p, M.dim * N.dim, mats, check=False)


def restrict(M: GModule, H: FiniteGroup) -> GModule:
    if not H.is_subgroup_of(M.group):
        raise ValueError("not a subgroup of the module's group")
    return GModule(H, M.p, M.dim, [M.matrix_of(h) for h in H.generators], check=False)


def induce(M: GModule, G: FiniteGroup) -> GModule:
    """Induced module ``F_p[G] (x)_{F_p[H]} M`` with blocks indexed by G/H."""
    H = M.group
    if not H.is_subgroup_of(G):
        raise ValueError("module group is not a subgroup of G")
    X = coset_space(G, H)
    reps = X.labels
    r, d, p = X.size, M.dim, M.p
    mats = []
    for s, im in zip(G.generators, X.generator_images):
        big = np.zeros((r * d, r * d), dtype=np.int64)
        for i, t in enumerate(reps):
            j = im[i]
            h = compose(invert(reps[j]), compose(s, t))
            big[j * d:(j + 1) * d, i * d:(i + 1) * d] = M.matrix_of(h)
        mats.append(big)
    return GModule(G, p, r * d, mats, check=False)


def trivial_multiplicity(M: GModule, seed: int = 0) -> int:
    return sum(s.multiplicity for s in decompose(M, seed).summands if s.is_trivial)


def character_order(M: GModule) -> int:
    """Multiplicative order of a one-dimensional module."""
    if M.dim != 1:
        raise ValueError("not one-dimensional")
    order = 1
    for m in M.action:
        v = int(m[0, 0])
        k, x = 1, v
        while x != 1:
            x = (x * v) % M.p
            k += 1
        order = math.lcm(order, k)
    return order
