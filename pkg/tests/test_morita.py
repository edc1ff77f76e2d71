import pytest

from peterweyl.algebra import GroupAlgebraElement, subgroup_idempotent
from peterweyl.errors import CertificateError, ModuleAxiomError
from peterweyl.linalg import ONE, ZERO, span_rank
from peterweyl.morita import (
    FiniteModule,
    bimodule_factorization_check,
    center_tables,
    center_transfer,
    center_transfer_report,
    certify_full_idempotent,
    corner_algebra,
    cyclic_and_fg_module_checks,
    full_idempotent_span_check,
    morita_functors,
    roundtrip,
    tensor_module,
)
from peterweyl.reps import decompose_induced
from tests.conftest import context_for

# dim H_B, dim H_Xi, dim Z, dim H(Xi, sigma) from rank computations, cross-checked below
DIMENSIONS = {
    ("SL2", 2, (0,)): (2, 5, 2, 3),
    ("SL2", 3, (0,)): (2, 10, 2, 4),
    ("SL2", 3, (1,)): (2, 8, 2, 4),
    ("GL2", 3, (0, 0)): (2, 10, 2, 4),
    ("GL2", 3, (0, 1)): (1, 16, 1, 4),
}


@pytest.mark.parametrize("key", list(DIMENSIONS))
def test_dimension_ledger(key):
    c = context_for(*key)
    h_small, h_big, center, bim = DIMENSIONS[key]
    assert c.H_small.dim == h_small
    assert c.H_big.dim == h_big == sum(m.degree ** 2 for m in c.Xi)
    assert len(c.H_big.center) == len(c.H_small.center) == center == len(c.Xi)
    assert c.biml.dim == c.bimr.dim == bim
    # brute-force oracle: dimension of e G e' as the span of all e delta_g e'
    G = c.chain.G
    assert span_rank([(c.e_xi.element * GroupAlgebraElement.delta(G, g) * c.e_xi.element).coeffs for g in range(G.order)]) == h_big
    assert span_rank([(c.e_xi.element * GroupAlgebraElement.delta(G, g) * c.e_sigma.element).coeffs for g in range(G.order)]) == bim


def test_whole_group_corner(sl2_2):
    G = sl2_2.G
    assert corner_algebra(GroupAlgebraElement.identity(G)).dim == G.order


def test_certificates(ctx):
    cert = ctx.cert
    assert all(cert.verify(ctx.biml, ctx.bimr).values())
    assert len(cert.a) == sum(m.degree for m in ctx.Xi)
    assert all(ctx.cert_solve.verify(ctx.biml, ctx.bimr).values())
    assert full_idempotent_span_check(ctx.H_big, ctx.e_sigma)


def test_trivial_certificate(sl2_2):
    c = context_for("SL2", 2, (0,))
    cert = certify_full_idempotent(c.H_big, c.e_xi)
    assert cert.method == "trivial" and cert.a == [c.e_xi.element]
    with pytest.raises(CertificateError):
        certify_full_idempotent(c.H_big, c.e_sigma)  # models are needed


def test_certificate_independent_of_vector_choice(ctx):
    other = certify_full_idempotent(ctx.H_big, ctx.e_sigma, ctx.Xi, vector_choice=1)
    assert other.sum_ab() == ctx.e_xi.element


def test_bimodule_factorizations_and_generation(ctx):
    assert all(bimodule_factorization_check(ctx.H_big, ctx.H_small, ctx.biml, ctx.bimr).values())
    gen = cyclic_and_fg_module_checks(ctx.H_big, ctx.H_small, ctx.biml, ctx.bimr)
    assert gen["biml cyclic with generator e_small"] and gen["bimr generated"]
    assert 1 <= gen["bimr generators over H_small"] <= ctx.bimr.dim


def test_tensor_of_regular_module_for_sl2_2():
    c = context_for("SL2", 2, (0,))
    Y = tensor_module(c.biml, c.H_big, FiniteModule.regular(c.H_small))
    assert Y.dim == 3
    assert tensor_module(c.biml, c.H_big, FiniteModule.zero(c.H_small)).dim == 0


def test_trivial_module_transports_to_a_line():
    c = context_for("SL2", 2, (0,))
    triv = [X for X in FiniteModule.simples(c.H_small) if X.dim == 1]
    Y = tensor_module(c.biml, c.H_big, triv[0])
    assert Y.dim in (1, 2)  # the simple H_Xi-module of the matching block
    assert morita_functors(c.H_big, c.H_small, c.biml, c.bimr, triv[0]).dim == 1


def test_roundtrips(ctx):
    modules = [FiniteModule.regular(ctx.H_small)] + FiniteModule.simples(ctx.H_small)
    for X in modules:
        r = roundtrip(ctx.H_big, ctx.H_small, ctx.biml, ctx.bimr, X)
        assert r["roundtrip_dim"] == X.dim
        assert r["intertwiner"] and r["natural"] and r["corner_form_agrees"]


def test_center_transfer(ctx):
    report = center_transfer_report(ctx.H_big, ctx.H_small, ctx.cert, ctx.cert_solve)
    assert all(v for k, v in report.items() if not k.startswith("dim"))
    tables = center_tables(ctx.H_big, ctx.H_small, ctx.cert)
    assert tables["small"] == tables["big"]


def test_center_transfer_of_primitive_idempotents():
    c = context_for("SL2", 2, (0,))
    blocks = [m.central_idempotent for m in c.Xi]
    for z in c.H_small.central_idempotents:
        w = center_transfer(c.H_big, c.H_small, c.cert, z)
        assert w * w == w
        assert any(w == b for b in blocks)


def test_module_axiom_check_rejects_bad_actions():
    c = context_for("SL2", 2, (0,))
    assert c.H_small.basis[0] == c.H_small.one
    with pytest.raises(ModuleAxiomError):
        FiniteModule(c.H_small, [[[ZERO]], [[ONE]]])  # the identity acts by 0


def test_borel_corner_of_sl2_2(sl2_2):
    eB = subgroup_idempotent(sl2_2.G, sl2_2.B)
    Xi = decompose_induced(sl2_2, sl2_2.trivial_character())
    assert all(m.borel_fixed_dim == 1 for m in Xi)
    assert corner_algebra(eB).dim == 2
