import random

import pytest

from peterweyl.errors import FormError, InvolutionHypothesisError, NotStarFixedError
from peterweyl.involutions import (
    AntiInvolution,
    bullet_on_finite_hecke,
    check_hermitian_form,
    extend_involution,
    form_left,
    form_report,
    form_right,
    hecke_basis,
    interchanges_bimodules,
    positivity_certificate,
    restrict_star,
    transport_hermitian_form,
    verify_positivity,
)
from peterweyl.linalg import ONE, ZERO, is_positive_definite
from peterweyl.morita import FiniteModule
from peterweyl.scenarios import small_involution
from tests.conftest import context_for


def _extension(ctx, choice=0):
    key = ("ext", choice)
    if key not in ctx.cache:
        ctx.cache[key] = extend_involution(small_involution(ctx), ctx.H_big, ctx.Xi, choice)
    return ctx.cache[key]


def test_star_restricts_to_corners(ctx):
    star = restrict_star(ctx.H_small)
    assert all(star.check().values())
    with pytest.raises(NotStarFixedError):
        restrict_star(ctx.biml)


@pytest.mark.parametrize("key", [("SL2", 2, (0,)), ("SL2", 3, (0,)), ("GL2", 3, (0, 0))])
def test_bullet_on_borel_hecke_algebra(key):
    c = context_for(*key)
    bullet = bullet_on_finite_hecke(c.H_small, c.chain)
    assert all(bullet.check().values())
    assert bullet(c.H_small.one) == c.H_small.one
    # on the finite Hecke algebra of B the two involutions agree
    assert all(bullet(b) == b.star() for b in c.H_small.basis)
    T = hecke_basis(c.chain, c.H_small)
    assert all(bullet(t) == t for t in T.values())


def test_extension_is_an_anti_involution(ctx):
    ext = _extension(ctx)
    assert all(ext.check().values())
    assert ext(ctx.e_xi.element) == ctx.e_xi.element
    circ = small_involution(ctx)
    assert all(ext(b) == circ(b) for b in ctx.H_small.basis)


def test_extension_of_star_is_star(ctx):
    ext = _extension(ctx)
    assert all(img == b.star() for img, b in zip(ext.images, ctx.H_big.basis))


def test_extension_independent_of_fixed_vector(ctx):
    a, b = _extension(ctx, 0), _extension(ctx, 1)
    assert all(x == y for x, y in zip(a.images, b.images))


def test_extension_interchanges_bimodules(ctx):
    ext = _extension(ctx)
    assert interchanges_bimodules(ext, ctx.biml, ctx.bimr)
    assert interchanges_bimodules(ext, ctx.bimr, ctx.biml)


def test_hypothesis_violation_names_the_basis_element():
    c = context_for("SL2", 3, (1,))
    H = c.H_small
    bad = AntiInvolution(H, [H.basis[0], H.basis[1].star().scale(-1)], "twisted")
    with pytest.raises(InvolutionHypothesisError, match="basis element 1"):
        extend_involution(bad, c.H_big, c.Xi)


def test_forms_take_values_in_the_small_algebra(ctx):
    ext = _extension(ctx)
    rng = random.Random(2)
    a = ctx.biml.element([rng.randint(-2, 2) for _ in range(ctx.biml.dim)])
    x = ctx.bimr.element([rng.randint(-2, 2) for _ in range(ctx.bimr.dim)])
    assert ctx.H_small.contains(form_left(ext, a, a))
    assert ctx.H_small.contains(form_right(ext, x, x))


def test_positivity_witnesses(ctx):
    ext = _extension(ctx)
    assert positivity_certificate(ctx.biml.element([ZERO] * ctx.biml.dim), ctx.cert, ext) == []
    e = ctx.e_sigma.element
    assert form_left(ext, e, e) == e
    assert verify_positivity(e, positivity_certificate(e, ctx.cert, ext), ext)
    rng = random.Random(ctx.scenario.seed + 11)
    for _ in range(3):
        a = ctx.biml.element([rng.randint(-3, 3) for _ in range(ctx.biml.dim)])
        assert verify_positivity(a, positivity_certificate(a, ctx.cert, ext), ext)


def test_transport_of_the_trivial_form():
    c = context_for("SL2", 2, (0,))
    ext = _extension(c)
    simples = FiniteModule.simples(c.H_small)
    X = next(m for m in simples if m.dim == 1)
    gram = [[ONE]]
    Y, G = transport_hermitian_form(X, gram, c.biml, c.H_big, ext, ext)
    assert Y.dim >= 1 and is_positive_definite(G)
    Y2, G2 = transport_hermitian_form(X, [[-ONE]], c.biml, c.H_big, ext, ext)
    assert G2 == [[-g for g in row] for row in G]


def test_degenerate_forms_are_rejected():
    c = context_for("SL2", 2, (0,))
    ext = _extension(c)
    X = FiniteModule.regular(c.H_small)
    with pytest.raises(FormError):
        check_hermitian_form(X, [[ZERO, ZERO], [ZERO, ZERO]], AntiInvolution.from_function(c.H_small, ext))


def test_form_reports(ctx):
    ext = _extension(ctx)
    for X in [FiniteModule.regular(ctx.H_small)] + FiniteModule.simples(ctx.H_small):
        report = form_report(X, X.l2_gram(), ctx.biml, ctx.bimr, ctx.H_big, ctx.H_small, ext)
        assert report["input positive definite"]
        assert report["transported positive definite"] and report["roundtrip positive definite"]
        assert report["roundtrip congruent"]
