from fractions import Fraction

import pytest

from peterweyl.algebra import GroupAlgebraElement, subgroup_idempotent
from peterweyl.errors import IncompleteOrbitError
from peterweyl.groups import weyl_orbit
from peterweyl.idempotents import (
    build_e_delta,
    build_e_sigma,
    build_e_xi,
    control_models,
    idem_formula_sum,
    verify_compatibility,
    xi_element,
)
from peterweyl.reps import decompose_induced, irreducible_models


def test_scenario_idempotents(ctx):
    for e in (ctx.e_sigma, ctx.e_delta, ctx.e_xi):
        assert all(e.check().values()), e.kind
    assert all(verify_compatibility(ctx.e_xi, ctx.e_sigma, ctx.e_delta).values())


def test_sign_character_idempotent_of_sl2_3(sl2_3):
    e = build_e_sigma(sl2_3, sl2_3.character((1,)))
    assert e.element.support == sl2_3.B
    assert e.element * e.element == e.element


def test_trivial_orbit_gives_borel_idempotent(sl2_2, sl2_3):
    for chain in (sl2_2, sl2_3):
        e = build_e_delta(chain, [chain.trivial_character()])
        assert e.element == subgroup_idempotent(chain.G, chain.B)


def test_two_element_orbit(gl2_3):
    orbit = weyl_orbit(gl2_3.character((0, 1)))
    assert len(orbit) == 2
    e = build_e_delta(gl2_3, orbit)
    parts = [build_e_sigma(gl2_3, c).element for c in orbit]
    assert e.element == parts[0] + parts[1]
    assert parts[0] * parts[1] == GroupAlgebraElement.zero(gl2_3.G)
    assert e.element * e.element == e.element
    with pytest.raises(IncompleteOrbitError):
        build_e_delta(gl2_3, orbit[:1])


def test_e_xi_class_function_for_sl2_2(sl2_2):
    """(1/6)(triv + 2 St), with St = perm - triv on the 3 cosets of B."""
    G = sl2_2.G
    Xi = decompose_induced(sl2_2, sl2_2.trivial_character())
    e = build_e_xi(G, Xi).element
    fixed_points = {g: sum(1 for x in range(G.order) if G.mul(g, x) in {G.mul(x, b) for b in sl2_2.B}) // 2 for g in range(G.order)}
    for g in range(G.order):
        steinberg = fixed_points[g] - 1
        assert e(g) == Fraction(1 + 2 * steinberg, 6)
    assert e == xi_element(G, Xi)


def test_idem_formula_resummation(ctx):
    bases = [m.normalized_basis() for m in ctx.Xi]
    assert idem_formula_sum(ctx.Xi, bases) == ctx.e_xi.element


def test_control_models_are_annihilated(ctx):
    G = ctx.chain.G
    others = control_models(G, ctx.Xi, irreducible_models(G))
    assert len(others) + len(ctx.Xi) == len(G.classes)
    for m in others:
        assert m.fixed_dimension(ctx.e_sigma.element) == 0
        assert m.central_idempotent * ctx.e_xi.element == GroupAlgebraElement.zero(G)


def test_summary_is_json_ready(ctx):
    s = ctx.e_xi.summary()
    assert s["kind"] == "xi" and s["central"] is True
    assert ctx.e_sigma.summary()["support_size"] == len(ctx.e_sigma.element.support)
