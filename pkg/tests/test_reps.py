import random
from fractions import Fraction

import pytest

from peterweyl.algebra import GroupAlgebraElement, subgroup_idempotent
from peterweyl.errors import NormalizationError
from peterweyl.linalg import ONE, ZERO, mat_mul
from peterweyl.reps import (
    NormalizedVector,
    block_decompose,
    character_table,
    decompose_induced,
    irreducible_models,
    matrix_coefficient,
    normalized_coefficient,
    schur_convolve,
)
from peterweyl.scalars import CycloScalar
from tests.conftest import chain_for

# Frozen outputs of brute-force decompositions of the permutation modules C[G/B, chi]
XI_DEGREES = {
    ("SL2", 2, (0,)): [1, 2],
    ("SL2", 3, (0,)): [1, 3],
    ("SL2", 3, (1,)): [2, 2],
    ("GL2", 3, (0, 0)): [1, 3],
    ("GL2", 3, (0, 1)): [4],
    ("GL2", 3, (1, 1)): [1, 3],
}
IRREDUCIBLE_DEGREES = {
    ("SL2", 2): [1, 1, 2],
    ("SL2", 3): [1, 1, 1, 2, 2, 2, 3],
    ("GL2", 3): [1, 1, 2, 2, 2, 3, 3, 4],
    ("GL3", 2): [1, 3, 3, 6, 7, 8],
}


@pytest.mark.parametrize("key", list(XI_DEGREES))
def test_induced_constituents(key):
    family, q, exps = key
    chain = chain_for(family, q)
    chi = chain.character(exps)
    Xi = decompose_induced(chain, chi)
    assert [m.degree for m in Xi] == XI_DEGREES[key]
    # each constituent contains the chi-isotypic line of P exactly once
    assert all(m.fixed_dim == 1 for m in Xi)
    assert sum(m.degree for m in Xi) == chain.G.order // len(chain.P)


def test_induced_module_by_brute_force_permutation_action(sl2_3):
    """Ind_B^G(1) of SL2(3): its character is the number of fixed cosets."""
    G, B = sl2_3.G, sl2_3.B
    cosets = {frozenset(G.mul(g, b) for b in B) for g in range(G.order)}
    perm_char = [sum(1 for C in cosets if G.mul(c[0], next(iter(C))) in C) for c in G.classes]
    Xi = decompose_induced(sl2_3, sl2_3.trivial_character())
    total = [sum((m.character[k] for m in Xi), ZERO) for k in range(len(G.classes))]
    assert total == perm_char


@pytest.mark.parametrize("key", list(IRREDUCIBLE_DEGREES))
def test_complete_irreducible_lists(key):
    G = chain_for(*key).G
    models = irreducible_models(G)
    assert [m.degree for m in models] == IRREDUCIBLE_DEGREES[key]
    assert sum(m.degree ** 2 for m in models) == G.order
    assert len(models) == len(G.classes)


@pytest.mark.parametrize("key", [("SL2", 3), ("GL2", 3)])
def test_character_orthogonality(key):
    G = chain_for(*key).G
    models = irreducible_models(G)
    sizes = [len(c) for c in G.classes]
    for a in models:
        for b in models:
            ip = sum((n * x * y.conj() for n, x, y in zip(sizes, a.character, b.character)), ZERO)
            assert ip == (G.order if a is b else 0)


def test_models_are_homomorphisms(gl2_3):
    G = gl2_3.G
    rng = random.Random(0)
    for m in irreducible_models(G):
        for _ in range(5):
            a, b = rng.randrange(G.order), rng.randrange(G.order)
            assert mat_mul(m.matrix(a), m.matrix(b)) == m.matrix(G.mul(a, b))


def test_gram_form_is_invariant(sl2_3):
    G = sl2_3.G
    m = decompose_induced(sl2_3, sl2_3.trivial_character())[1]
    u = [ONE, ZERO, CycloScalar.rational(2)]
    v = [ZERO, ONE, -ONE]
    for g in range(0, G.order, 3):
        M = m.matrix(g)
        gu = [sum((M[i][j] * u[j] for j in range(3)), ZERO) for i in range(3)]
        gv = [sum((M[i][j] * v[j] for j in range(3)), ZERO) for i in range(3)]
        assert m.inner(gu, gv) == m.inner(u, v)


def test_character_table_text(sl2_2):
    table = character_table(irreducible_models(sl2_2.G))
    assert sorted(v[0] for v in table.values()) == ["Q(zeta_1): 1", "Q(zeta_1): 1", "Q(zeta_1): 2"]


def test_schur_relation_with_constant(sl2_3):
    G = sl2_3.G
    Xi = decompose_induced(sl2_3, sl2_3.trivial_character())
    for m in Xi:
        d = m.degree
        units = [[ONE if i == j else ZERO for i in range(d)] for j in range(d)]
        for x2 in units:
            for y1 in units:
                m1, m2 = matrix_coefficient(m, units[0], x2), matrix_coefficient(m, y1, units[-1])
                lhs = m1.element * m2.element
                assert lhs == schur_convolve(m1, m2)
                const = m.inner(x2, y1).conj() * Fraction(G.order, d)
                assert lhs == matrix_coefficient(m, units[0], units[-1]).element.scale(const)
    a, b = Xi
    assert schur_convolve(matrix_coefficient(a, [ONE], [ONE]), matrix_coefficient(b, [ONE, ZERO, ZERO], [ONE, ZERO, ZERO])) == GroupAlgebraElement.zero(G)


def test_orthogonal_vectors_in_trivial_model(sl2_2):
    triv = decompose_induced(sl2_2, sl2_2.trivial_character())[0]
    assert triv.degree == 1 and all(c == 1 for c in triv.character)
    # in a one-dimensional model the only vector orthogonal to u is 0
    assert not matrix_coefficient(triv, [ONE], [ZERO]).element


def test_matrix_coefficient_star(gl2_3):
    m = decompose_induced(gl2_3, gl2_3.character((0, 1)))[0]
    u = [ONE, ZERO, ONE, ZERO]
    v = [ZERO, ONE, ZERO, CycloScalar.zeta(2)]
    mc = matrix_coefficient(m, u, v)
    assert mc.element.star() == matrix_coefficient(m, v, u).element


def test_normalized_vectors(sl2_3):
    m = decompose_induced(sl2_3, sl2_3.trivial_character())[1]
    basis = m.normalized_basis()
    assert len(basis) == 3 and all(nv.check(m) for nv in basis)
    with pytest.raises(NormalizationError):
        NormalizedVector.of(m, [ZERO, ZERO, ZERO])
    p = normalized_coefficient(m, basis[0], basis[0])
    assert p * p == p


def test_block_decomposition(sl2_2):
    G = sl2_2.G
    Xi = decompose_induced(sl2_2, sl2_2.trivial_character())
    bases = [m.normalized_basis() for m in Xi]
    blocks = block_decompose(GroupAlgebraElement.zero(G), Xi, bases)
    assert not any(blocks.values())
    eB = subgroup_idempotent(G, sl2_2.B)
    e_xi = sum((m.central_idempotent for m in Xi), GroupAlgebraElement.zero(G))
    f = e_xi * GroupAlgebraElement.random(G, random.Random(1)) * e_xi
    blocks = block_decompose(f, Xi, bases)
    total = GroupAlgebraElement.zero(G)
    for piece in blocks.values():
        total = total + piece
    assert total == f
    assert eB * e_xi == eB
