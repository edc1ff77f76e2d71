import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from peterweyl.algebra import (
    GroupAlgebraElement,
    character_idempotent,
    convolve,
    operator_fourier_separation,
    subgroup_idempotent,
)
from peterweyl.errors import GroupMismatchError, IncompleteRepresentationListError
from peterweyl.groups import FiniteGroup
from peterweyl.reps import irreducible_models
from peterweyl.scalars import CycloScalar
from tests.conftest import chain_for

G24 = chain_for("SL2", 3).G
seeds = st.integers(0, 10 ** 6)


def rand(seed, G=G24, support=6, conductor=3):
    return GroupAlgebraElement.random(G, random.Random(seed), support=support, conductor=conductor)


def naive_convolution(f, g):
    """Oracle: (f * g)(x) = sum_y f(y) g(y^-1 x), evaluated point by point."""
    G = f.group
    out = {}
    for x in range(G.order):
        total = CycloScalar.rational(0)
        for y in range(G.order):
            total = total + f(y) * g(G.mul(G.inverse[y], x))
        if total:
            out[x] = total
    return GroupAlgebraElement(G, out)


@given(seeds, seeds)
def test_convolution_matches_pointwise_formula(s, t):
    f, g = rand(s), rand(t, conductor=4)
    assert convolve(f, g) == naive_convolution(f, g)


@given(seeds, seeds, seeds)
def test_associative_and_bilinear(s, t, u):
    f, g, h = rand(s), rand(t), rand(u)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g).scale(3) == f.scale(3) + g.scale(3)


@given(seeds, seeds)
def test_star_is_an_anti_involution(s, t):
    f, g = rand(s), rand(t)
    assert (f * g).star() == g.star() * f.star()
    assert f.star().star() == f
    assert f.scale(CycloScalar.zeta(3)).star() == f.star().scale(CycloScalar.zeta(3, 2))


def test_delta_rules():
    G = G24
    for a in range(0, G.order, 5):
        assert GroupAlgebraElement.delta(G, a).star() == GroupAlgebraElement.delta(G, G.inverse[a])
        for b in range(0, G.order, 7):
            assert GroupAlgebraElement.delta(G, a) * GroupAlgebraElement.delta(G, b) == GroupAlgebraElement.delta(G, G.mul(a, b))
    f = rand(3)
    assert GroupAlgebraElement.identity(G) * f == f == f * GroupAlgebraElement.identity(G)
    assert f.translate_left(4) == GroupAlgebraElement.delta(G, 4) * f
    assert f.translate_right(4) == f * GroupAlgebraElement.delta(G, 4)


def test_subgroup_idempotents(sl2_2):
    G = sl2_2.G
    assert subgroup_idempotent(G, {G.identity}) == GroupAlgebraElement.identity(G)
    eB = subgroup_idempotent(G, sl2_2.B)
    assert len(eB.support) == 2 and all(c == Fraction(1, 2) for c in eB.coeffs.values())
    eG = subgroup_idempotent(G, range(G.order))
    assert eG.is_idempotent() and eG.is_central() and eG.star() == eG
    assert eB.is_idempotent() and not eB.is_central()


def test_character_idempotent(gl2_3):
    chi = gl2_3.character((0, 1))
    e = character_idempotent(gl2_3.G, gl2_3.T, chi.values)
    assert e.is_idempotent() and e.star() == e
    assert e * character_idempotent(gl2_3.G, gl2_3.T, gl2_3.character((1, 0)).values) == GroupAlgebraElement.zero(gl2_3.G)


def test_mismatched_groups():
    with pytest.raises(GroupMismatchError):
        GroupAlgebraElement.identity(G24) * GroupAlgebraElement.identity(FiniteGroup.symmetric(3))


def test_text_format(sl2_2):
    G = sl2_2.G
    text = GroupAlgebraElement.delta(G, G.identity, Fraction(1, 2)).to_text()
    assert text == "(Q(zeta_1): 1/2) * [[1,0],[0,1]]"
    assert GroupAlgebraElement.zero(G).to_text() == "0"


def test_fourier_separation_basic(sl2_2):
    G = sl2_2.G
    reps = irreducible_models(G)
    f = GroupAlgebraElement.delta(G, G.identity)
    assert operator_fourier_separation(f, f, reps)
    assert not operator_fourier_separation(f, GroupAlgebraElement.zero(G), reps)
    rng = random.Random(5)
    a, b = GroupAlgebraElement.random(G, rng), GroupAlgebraElement.random(G, rng)
    assert operator_fourier_separation(a, b, reps) == (a == b)
    with pytest.raises(IncompleteRepresentationListError):
        operator_fourier_separation(a, b, reps[:-1])


@given(seeds)
def test_fourier_separation_property(seed):
    G = chain_for("GL2", 3).G
    reps = irreducible_models(G)
    rng = random.Random(seed)
    f = GroupAlgebraElement.random(G, rng, support=4)
    g = f + GroupAlgebraElement.delta(G, rng.randrange(G.order)) if seed % 2 else f
    assert operator_fourier_separation(f, g, reps) == (f == g)
