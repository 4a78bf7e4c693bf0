import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motivium import ffarith as ff
from motivium.groups import all_subgroups, coset_space, cyclic_group, symmetric_group
from motivium.modrep import (
    EndAlgebra,
    GModule,
    RepresentationError,
    character_module,
    conjugate_module,
    decompose,
    direct_sum,
    hom_space,
    induce,
    is_indecomposable,
    is_isomorphic,
    perm_module,
    restrict,
    tensor,
    trivial_module,
    trivial_multiplicity,
)

import oracles
from catalog import group_catalog

C2, C3 = cyclic_group(2), cyclic_group(3)
CATALOG = group_catalog()


def regular(G, p):
    return perm_module(coset_space(G, G.trivial_subgroup()), p)


def characters(D):
    return sorted(int(s.module.action[0][0, 0]) for s in D.summands for _ in range(s.multiplicity))


def a_module():
    """The 2-dim summand of F_2[C3] on the sum-zero vectors e0+e1, e1+e2."""
    return GModule(C3, 2, 2, [[[0, 1], [1, 1]]])


# -- construction ----------------------------------------------------------


def test_perm_module_examples():
    M = regular(C2, 3)
    assert M.dim == 2 and M.action[0].tolist() == [[0, 1], [1, 0]]
    fixed = perm_module(coset_space(C2, C2), 5)
    assert fixed.dim == 1 and fixed.is_trivial()
    R = regular(C3, 7)
    assert R.action[0].tolist() == oracles.perm_matrix((1, 2, 0)).tolist()


def test_bad_representation_rejected():
    with pytest.raises(RepresentationError):
        GModule(C3, 7, 1, [[[3]]])
    with pytest.raises(RepresentationError):
        GModule(C2, 3, 2, [[[1, 1], [1, 1]]])
    with pytest.raises(RepresentationError):
        GModule(C2, 3, 2, [[[1, 0, 0], [0, 1, 0]]])


def test_zero_module_decomposes_to_nothing():
    Z = GModule(C3, 7, 0, [np.zeros((0, 0), dtype=np.int64)])
    D = decompose(Z)
    assert D.summands == [] and D.total_dim == 0
    with pytest.raises(ValueError):
        is_indecomposable(Z)


# -- hom spaces ------------------------------------------------------------


def test_hom_space_examples():
    triv = trivial_module(C2, 3)
    sign = character_module(C2, 3, [2])
    assert len(hom_space(triv, triv)) == 1
    assert len(hom_space(triv, sign)) == 0
    assert len(hom_space(regular(C3, 2), regular(C3, 2))) == 3


def test_hom_space_mismatch():
    with pytest.raises(ValueError):
        hom_space(trivial_module(C2, 3), trivial_module(C2, 5))
    with pytest.raises(ValueError):
        hom_space(trivial_module(C2, 3), trivial_module(C3, 3))


@pytest.mark.parametrize("name", ["C3", "S3", "C2xC2", "D4"])
def test_orbital_basis_matches_linear_solver(name):
    G = CATALOG[name]
    subs = all_subgroups(G)
    for H, K in itertools.product(subs, repeat=2):
        M, N = perm_module(coset_space(G, H), 2), perm_module(coset_space(G, K), 2)
        fast = hom_space(M, N)
        slow = hom_space(M, N, use_orbitals=False)
        assert len(fast) == len(slow)
        assert ff.rank(np.array([f.ravel() for f in fast + slow]), 2) == len(slow)


def test_commutant_dimension_against_independent_solver():
    for name in ["C3", "C4", "S3"]:
        for p in (2, 3):
            M = regular(CATALOG[name], p)
            assert len(hom_space(M, M, use_orbitals=False)) == len(oracles.endomorphism_basis(M.action, p, M.dim))


# -- worked examples -------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7])
def test_regular_c2_odd_p(p):
    D = decompose(regular(C2, p))
    assert characters(D) == [1, p - 1]
    assert all(s.dim == 1 and s.multiplicity == 1 for s in D.summands)


def test_regular_c3_over_f2():
    D = decompose(regular(C3, 2))
    assert sorted(s.dim for s in D.summands) == [1, 2]
    A = next(s for s in D.summands if s.dim == 2)
    assert A.residue_degree == 2
    assert is_indecomposable(A.module)
    assert oracles.is_indecomposable(A.module.action, 2, 2)
    assert is_isomorphic(A.module, a_module())


def test_regular_c3_over_f7():
    D = decompose(regular(C3, 7))
    assert characters(D) == [1, 2, 4]
    assert trivial_multiplicity(regular(C3, 7)) == 1


def test_eigenvectors_of_the_cubic_example():
    # v1 = 1 + 2s - 3s^2 and v2 = 1 - 3s + 2s^2 in F_7[C3]
    R = regular(C3, 7)
    s = R.action[0]
    v1 = np.array([1, 2, -3]) % 7
    v2 = np.array([1, -3, 2]) % 7
    assert ((s @ v1) % 7).tolist() == ((-3 * v1) % 7).tolist()
    assert ((s @ v2) % 7).tolist() == ((2 * v2) % 7).tolist()


def test_is_indecomposable_examples():
    triv = trivial_module(C3, 2)
    assert is_indecomposable(triv)
    assert not is_indecomposable(direct_sum(triv, triv))
    assert is_indecomposable(a_module())


def test_is_isomorphic_examples():
    M = regular(C3, 7)
    assert is_isomorphic(M, M)
    assert not is_isomorphic(character_module(C3, 7, [2]), character_module(C3, 7, [4]))
    assert is_isomorphic(regular(C2, 3), direct_sum(trivial_module(C2, 3), character_module(C2, 3, [2])))


def test_is_isomorphic_agrees_with_exhaustive_search():
    rng = random.Random(5)
    mods = [
        a_module(),
        direct_sum(trivial_module(C3, 2), trivial_module(C3, 2)),
        regular(C2, 2),
        direct_sum(trivial_module(C2, 2), trivial_module(C2, 2)),
        regular(C2, 3),
        direct_sum(character_module(C2, 3, [2]), character_module(C2, 3, [2])),
    ]
    for M in mods:
        for N in mods:
            if M.dim != N.dim or M.p != N.p or M.group is not N.group:
                continue
            P = _random_invertible(N.dim, N.p, rng)
            N2 = conjugate_module(N, P)
            assert is_isomorphic(M, N2) == oracles.is_isomorphic_brute(M.action, N2.action, M.p, M.dim)


def test_tensor_examples():
    c2, c4 = character_module(C3, 7, [2]), character_module(C3, 7, [4])
    assert tensor(c2, c4).is_trivial()
    assert tensor(tensor(c2, c2), c2).is_trivial()
    M = regular(C3, 2)
    assert is_isomorphic(tensor(M, trivial_module(C3, 2)), M)


def test_restrict_examples():
    t = C3.trivial_subgroup()
    assert restrict(character_module(C3, 7, [2]), t).is_trivial()
    R = restrict(a_module(), t)
    D = decompose(R)
    assert len(D.summands) == 1 and D.summands[0].multiplicity == 2 and D.summands[0].is_trivial
    M = regular(C3, 5)
    assert restrict(M, C3).same_matrices(M)
    with pytest.raises(ValueError):
        restrict(M, symmetric_group(3))


def test_induce_examples():
    t = C3.trivial_subgroup()
    I = induce(trivial_module(t, 2), C3)
    assert I.dim == 3 and is_isomorphic(I, regular(C3, 2))
    T = trivial_module(C3, 2)
    assert is_isomorphic(induce(T, C3), T)
    S3 = symmetric_group(3)
    H = S3.subgroup([(1, 0, 2)])
    I2 = induce(trivial_module(H, 3), S3)
    assert I2.dim == 3
    assert is_isomorphic(I2, perm_module(coset_space(S3, H), 3))
    with pytest.raises(ValueError):
        induce(trivial_module(S3, 3), C3)


def test_trivial_multiplicity_examples():
    T = trivial_module(C2, 3)
    assert trivial_multiplicity(direct_sum(T, T)) == 2
    assert trivial_multiplicity(character_module(C2, 3, [2])) == 0


def test_f2_s4_and_f3_s4_projectives():
    S4 = CATALOG["S4"]
    D2 = decompose(regular(S4, 2))
    assert sorted((s.dim, s.multiplicity) for s in D2.summands) == [(8, 1), (8, 2)]
    D3 = decompose(regular(S4, 3))
    assert sorted((s.dim, s.multiplicity) for s in D3.summands) == [(3, 1), (3, 1), (3, 3), (3, 3)]


def test_summand_ordering_is_canonical():
    D = decompose(regular(C3, 7))
    keys = [s.module.sort_key() for s in D.summands]
    assert keys == sorted(keys)
    dims = [s.dim for s in decompose(regular(CATALOG["S3"], 2)).summands]
    assert dims == sorted(dims)


# -- radical certificate ---------------------------------------------------


@pytest.mark.parametrize("name,p", [("C3", 2), ("C2", 2), ("C4", 2), ("S3", 3), ("C2xC2", 2), ("S3", 2), ("C3", 3)])
def test_radical_matches_brute_force(name, p):
    M = regular(CATALOG[name], p)
    A = M.endomorphisms
    J = A.radical_basis
    brute = oracles.radical_brute(A.basis, p)
    assert p ** len(J) == len(brute)
    keys = {m.tobytes() for m in brute}
    for x in oracles.span(J, p) if J else []:
        assert x in keys


def test_radical_of_truncated_polynomial_algebra():
    # F_3[x]/(x^3) as 3x3 matrices; radical spanned by x and x^2
    N = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]], dtype=np.int64)
    alg = EndAlgebra(basis=[ff.identity(3), N, (N @ N) % 3], p=3, n=3)
    assert len(alg.radical_basis) == 2
    assert alg.is_local and alg.residue_degree == 1


def test_end_of_a_is_the_field_with_four_elements():
    alg = a_module().endomorphisms
    assert alg.dim == 2 and alg.radical_basis == [] and alg.residue_degree == 2


# -- properties ------------------------------------------------------------


def _random_invertible(n, p, rng):
    while True:
        P = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)], dtype=np.int64)
        if ff.is_invertible(P, p):
            return P


def _perm_instance(name, idx, p):
    G = CATALOG[name]
    subs = all_subgroups(G)
    return perm_module(coset_space(G, subs[idx % len(subs)]), p)


GROUP_NAMES = ["C2", "C3", "C4", "C2xC2", "S3", "C6", "D4", "A4"]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GROUP_NAMES), st.integers(0, 20), st.sampled_from([2, 3, 5]), st.integers(0, 10**6))
def test_basis_change_invariance(name, idx, p, seed):
    M = _perm_instance(name, idx, p)
    P = _random_invertible(M.dim, p, random.Random(seed))
    N = conjugate_module(M, P)
    assert is_isomorphic(M, N, seed)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GROUP_NAMES), st.integers(0, 20), st.sampled_from([2, 3, 5, 7]), st.integers(0, 100), st.integers(0, 100))
def test_decomposition_seed_stability(name, idx, p, s1, s2):
    M = _perm_instance(name, idx, p)
    d1, d2 = decompose(M, s1), decompose(M, s2)
    assert d1.total_dim == d2.total_dim == M.dim
    assert len(d1.summands) == len(d2.summands)
    from motivium.modrep import decompositions_match

    assert decompositions_match(d1, d2)
    for s in d1.summands:
        assert is_indecomposable(s.module)
    for a, b in itertools.combinations(d1.summands, 2):
        assert not is_isomorphic(a.module, b.module)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GROUP_NAMES), st.integers(0, 20), st.sampled_from([2, 3, 5]), st.integers(0, 1000))
def test_embeddings_span_the_module(name, idx, p, seed):
    M = _perm_instance(name, idx, p)
    D = decompose(M, seed)
    cols = np.concatenate([S for s in D.summands for S in s.embeddings], axis=1)
    assert ff.rank(cols, p) == M.dim
    for s in D.summands:
        for S in s.embeddings:
            # image is invariant: g S = S h for the summand's action
            for g, h in zip(M.action, s.module.action):
                assert ff.rank(np.concatenate([S, (g @ S) % p], axis=1), p) == S.shape[1]
