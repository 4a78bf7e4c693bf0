"""Exact arithmetic over a prime field F_p.

Matrices are plain ``numpy`` int64 arrays with entries reduced into
``[0, p)``.  Entries stay below ``p`` and dimensions stay at desk scale,
so products never overflow int64.  Polynomials are :class:`FPoly`
values, stored lowest degree first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "PrimeField",
    "FPoly",
    "is_prime",
    "as_matrix",
    "identity",
    "matmul",
    "matpow",
    "rref",
    "rank",
    "nullspace",
    "column_nullspace",
    "inverse",
    "is_invertible",
    "solve_commutant",
    "min_poly",
    "poly_eval_matrix",
    "factor",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, value: int) -> int:
        return value % self.p

    def inv(self, value: int) -> int:
        value %= self.p
        if value == 0:
            raise ZeroDivisionError("0 has no inverse mod p")
        return pow(value, -1, self.p)

    def elements(self) -> range:
        return range(self.p)


# ---------------------------------------------------------------------------
# matrices


def as_matrix(rows, p: int) -> np.ndarray:
    m = np.array(rows, dtype=np.int64)
    if m.ndim == 1 and m.size == 0:
        m = m.reshape(0, 0)
    if m.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    return m % p


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


_EXACT_FLOAT = 2**52


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product mod p; uses float BLAS while every dot product stays exact."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    inner = a.shape[-1]
    if inner * (p - 1) ** 2 < _EXACT_FLOAT:
        return np.remainder(a.astype(np.float64) @ b.astype(np.float64), p).astype(np.int64)
    return (a @ b) % p


def matpow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    result = identity(a.shape[0])
    base = a % p
    while k:
        if k & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        k >>= 1
    return result


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; returns ``(R, pivot_columns)``."""
    m = np.array(a, dtype=np.int64) % p
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), -1, p)
        if inv != 1:
            m[r, c:] = (m[r, c:] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            m[np.ix_(rows, np.arange(c, ncols))] = (
                m[np.ix_(rows, np.arange(c, ncols))]
                - np.outer(col[rows], m[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : a @ x = 0}``."""
    a = np.asarray(a, dtype=np.int64)
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return identity(ncols)
    r, pivots = rref(a, p)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    basis[np.arange(len(free)), free] = 1
    if pivots and free:
        basis[:, pivots] = (-r[: len(pivots)][:, free].T) % p
    return basis


def column_nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Kernel basis as the columns of the returned matrix."""
    return nullspace(a, p).T.copy()


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([np.asarray(a, dtype=np.int64) % p, identity(n)], axis=1)
    r, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return r[:, n:].copy()


def is_invertible(a: np.ndarray, p: int) -> bool:
    n = a.shape[0]
    return a.shape == (n, n) and rank(a, p) == n


def _spin(gens: Sequence[np.ndarray], m: int, p: int):
    """Spin standard vectors under ``gens`` into a basis of F_p^m.

    Returns ``(S, recipe)``: the columns of S are the basis, and
    ``recipe[j]`` is ``("seed", i)`` or ``(g, parent)`` meaning column j is
    ``gens[g] @ S[:, parent]``.
    """
    echelon: list[tuple[int, np.ndarray]] = []
    cols: list[np.ndarray] = []
    recipe: list[tuple] = []

    def add(v, how):
        w = v.copy()
        for c, row in echelon:
            if w[c]:
                w = (w - w[c] * row) % p
        nz = np.flatnonzero(w)
        if nz.size == 0:
            return False
        c = int(nz[0])
        echelon.append((c, (w * pow(int(w[c]), -1, p)) % p))
        cols.append(v)
        recipe.append(how)
        return True

    seeds = 0
    for i in range(m):
        if len(cols) == m:
            break
        e = np.zeros(m, dtype=np.int64)
        e[i] = 1
        if not add(e, ("seed", seeds)):
            continue
        seeds += 1
        j = len(cols) - 1
        while j < len(cols):
            for g, a in enumerate(gens):
                add((a @ cols[j]) % p, (g, j))
            j += 1
    return np.stack(cols, axis=1), recipe, seeds


def solve_commutant(system: Sequence[tuple[np.ndarray, np.ndarray]], p: int) -> list[np.ndarray]:
    """Basis of all X with ``X @ A == B @ X`` for every pair ``(A, B)``.

    ``A`` is m x m and ``B`` is n x n; solutions X are n x m.  The source
    is spun from a few seed vectors; X is fixed by the seed images, and the
    relations of the spun basis give the linear conditions on them.
    """
    if not system:
        raise ValueError("empty system")
    m = system[0][0].shape[0]
    n = system[0][1].shape[0]
    for a, b in system:
        if a.shape != (m, m) or b.shape != (n, n):
            raise ValueError("dimension mismatch in intertwining system")
    if m == 0 or n == 0:
        return []
    As = [np.asarray(a, dtype=np.int64) % p for a, _ in system]
    Bs = [np.asarray(b, dtype=np.int64) % p for _, b in system]
    S, recipe, r = _spin(As, m, p)
    S_inv = inverse(S, p)
    # F[j] maps the seed images (r*n unknowns) to X @ S[:, j]
    F = np.zeros((m, n, r * n), dtype=np.int64)
    for j, (how, src) in enumerate(recipe):
        if how == "seed":
            F[j, :, src * n:(src + 1) * n] = identity(n)
        else:
            F[j] = matmul(Bs[how], F[src], p)
    blocks = []
    for g, (a, b) in enumerate(zip(As, Bs)):
        C = matmul(S_inv, matmul(a, S, p), p)
        # X A S[:, j] = sum_k C[k, j] X S[:, k] must equal B X S[:, j]
        lhs = matmul(C.T, F.reshape(m, n * r * n), p).reshape(m, n, r * n)
        rhs = matmul(b, F.transpose(1, 0, 2).reshape(n, m * r * n), p).reshape(n, m, r * n).transpose(1, 0, 2)
        # where A S[:, j] was itself added as a basis column the relation holds by construction
        keep = np.ones(m, dtype=bool)
        for how, src in recipe:
            if how == g:
                keep[src] = False
        blocks.append(((lhs - rhs) % p)[keep].reshape(-1, r * n))
    eqs = np.concatenate(blocks, axis=0)
    coeffs = nullspace(eqs, p) if eqs.shape[0] else identity(r * n)
    if not coeffs.shape[0]:
        return []
    # X S = [F_j y]_j, so X = (F y) S^{-1}
    xs = matmul(F.transpose(1, 0, 2).reshape(n * m, r * n), coeffs.T, p)
    xs = xs.reshape(n, m, -1).transpose(2, 0, 1)
    sols = matmul(xs.reshape(-1, m), S_inv, p).reshape(-1, n * m)
    basis = rref(sols, p)[0]
    basis = basis[np.any(basis != 0, axis=1)]
    return [basis[i].reshape(n, m).copy() for i in range(basis.shape[0])]


# ---------------------------------------------------------------------------
# polynomials (coefficient tuples, lowest degree first)


def _trim(c: Sequence[int], p: int) -> tuple[int, ...]:
    c = [x % p for x in c]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _monic(c: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not c:
        return c
    inv = pow(c[-1], -1, p)
    return tuple((x * inv) % p for x in c)


def _add(a, b, p):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p)


def _sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p)


def _mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out, p)


def _divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = pow(b[-1], -1, p)
    for i in range(len(a) - len(b), -1, -1):
        coef = (a[i + len(b) - 1] * inv) % p
        q[i] = coef
        if coef:
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - coef * y) % p
    return _trim(q, p), _trim(a[: len(b) - 1], p)


def _mod(a, b, p):
    return _divmod(a, b, p)[1]


def _gcd(a, b, p):
    a, b = _trim(a, p), _trim(b, p)
    while b:
        a, b = b, _mod(a, b, p)
    return _monic(a, p)


def _deriv(a, p):
    return _trim([i * a[i] for i in range(1, len(a))], p)


def _powmod(base, e, mod, p):
    result = (1,)
    base = _mod(base, mod, p)
    while e:
        if e & 1:
            result = _mod(_mul(result, base, p), mod, p)
        base = _mod(_mul(base, base, p), mod, p)
        e >>= 1
    return result


class FPoly:
    """Monic polynomial over F_p (or the distinguished zero polynomial)."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs: Iterable[int], p: int):
        self.p = p
        self.coeffs = _monic(_trim(list(coeffs), p), p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, FPoly) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __mul__(self, other: "FPoly") -> "FPoly":
        return FPoly(_mul(self.coeffs, other.coeffs, self.p), self.p)

    def __pow__(self, k: int) -> "FPoly":
        out = FPoly((1,), self.p)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "FPoly(0)"
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' if mono else ''}{mono}")
        return f"FPoly({' + '.join(terms)} mod {self.p})"


def poly_eval_matrix(f: FPoly | Sequence[int], a: np.ndarray, p: int) -> np.ndarray:
    coeffs = f.coeffs if isinstance(f, FPoly) else _trim(f, p)
    n = a.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc @ a) % p
        acc[np.diag_indices(n)] = (acc[np.diag_indices(n)] + c) % p
    return acc


def min_poly(a: np.ndarray, p: int) -> FPoly:
    """Monic annihilating polynomial of least degree."""
    a = np.asarray(a, dtype=np.int64) % p
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("min_poly of a non-square matrix")
    if n == 0:
        return FPoly((1,), p)
    # first linear relation among I, a, a^2, ... gives the minimal polynomial
    powers = [identity(n).ravel()]
    current = identity(n)
    for _ in range(n):
        current = (current @ a) % p
        powers.append(current.ravel())
        kern = nullspace(np.array(powers, dtype=np.int64).T, p)
        if kern.shape[0]:
            return FPoly(kern[0].tolist(), p)
    raise AssertionError("Cayley-Hamilton bound exceeded")


# ---------------------------------------------------------------------------
# factorisation


def _squarefree(f, p):
    """Yun-style squarefree decomposition: list of (g, mult), g squarefree."""
    out: list[tuple[tuple[int, ...], int]] = []

    def rec(f, scale):
        if len(f) <= 1:
            return
        d = _deriv(f, p)
        if not d:
            # f is a polynomial in x^p: take the p-th root
            root = _monic(_trim([f[i] for i in range(0, len(f), p)], p), p)
            rec(root, scale * p)
            return
        g = _gcd(f, d, p)
        w = _divmod(f, g, p)[0]
        i = 1
        while len(w) > 1:
            y = _gcd(w, g, p)
            z = _divmod(w, y, p)[0]
            if len(z) > 1:
                out.append((_monic(z, p), i * scale))
            i += 1
            w = y
            g = _divmod(g, y, p)[0]
        if len(g) > 1:
            root = _monic(_trim([g[i] for i in range(0, len(g), p)], p), p)
            rec(root, scale * p)

    rec(_monic(f, p), 1)
    return out


def _distinct_degree(f, p):
    out = []
    x = (0, 1)
    h = x
    d = 0
    f = _monic(f, p)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, f, p)
        g = _gcd(_sub(h, x, p), f, p)
        if len(g) > 1:
            out.append((g, d))
            f = _divmod(f, g, p)[0]
            h = _mod(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree(f, d, p, rng):
    n = len(f) - 1
    if n == d:
        return [_monic(f, p)]
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)], p)
        if len(a) <= 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t = a
            acc = a
            for _ in range(d - 1):
                t = _mod(_mul(t, t, p), f, p)
                acc = _add(acc, t, p)
            g = _gcd(acc, f, p)
        else:
            b = _powmod(a, (p**d - 1) // 2, f, p)
            g = _gcd(_sub(b, (1,), p), f, p)
        if 1 < len(g) < len(f):
            q = _divmod(f, g, p)[0]
            return _equal_degree(g, d, p, rng) + _equal_degree(q, d, p, rng)


def factor(f: FPoly, seed: int = 0) -> list[tuple[FPoly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coeffs)."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    p = f.p
    rng = random.Random(seed)
    found: dict[tuple[int, ...], int] = {}
    for g, mult in _squarefree(f.coeffs, p):
        for h, d in _distinct_degree(g, p):
            for irr in _equal_degree(h, d, p, rng):
                found[irr] = found.get(irr, 0) + mult
    items = sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0][::-1]))
    return [(FPoly(c, p), m) for c, m in items]
