"""
Peter-Weyl idempotents of a finite group of Lie type.

    e_sigma = (1/|MU|) sum_{m,u} conj(chi(m)) delta_{mu} = e_a * e_U
    e_Delta = sum over a Weyl orbit of the e_sigma
    e_Xi    = (1/|G|) sum_{lambda in Xi} deg(lambda) conj(chi_lambda)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from peterweyl.algebra import GroupAlgebraElement, character_idempotent, subgroup_idempotent
from peterweyl.groups import check_orbit
from peterweyl.reps import block_projectors


@dataclass
class PeterWeylIdempotent:
    kind: str
    element: GroupAlgebraElement
    provenance: tuple
    support_subgroup: frozenset
    chain: object = field(default=None, repr=False)

    @property
    def group(self):
        return self.element.group

    def check(self) -> dict:
        e = self.element
        report = {
            "idempotent": e * e == e,
            "star_fixed": e.star() == e,
            "support": e.support <= self.support_subgroup,
        }
        if self.kind == "xi":
            report["central"] = e.is_central()
        return report

    def summary(self) -> dict:
        return {
            "kind": self.kind,
            "provenance": [str(p) for p in self.provenance],
            "support_size": len(self.element.support),
            **{k: bool(v) for k, v in self.check().items()},
        }


def _mu(chain):
    G = chain.G
    return frozenset(G.mul(m, u) for m in chain.M for u in chain.U)


def build_e_sigma(chain, chi) -> PeterWeylIdempotent:
    G = chain.G
    e_a = character_idempotent(G, chain.M, chi.values)
    e_U = subgroup_idempotent(G, chain.U)
    e = e_a * e_U
    if e != e_U * e_a:
        raise ArithmeticError("e_a and e_U do not commute")  # pragma: no cover
    return PeterWeylIdempotent("sigma", e, (chi,), _mu(chain), chain)


def build_e_delta(chain, delta) -> PeterWeylIdempotent:
    delta = sorted(delta, key=lambda c: c.exponents)
    check_orbit(delta)
    e = GroupAlgebraElement.zero(chain.G)
    for tau in delta:
        e = e + build_e_sigma(chain, tau).element
    return PeterWeylIdempotent("delta", e, tuple(delta), _mu(chain), chain)


def xi_element(G, Xi) -> GroupAlgebraElement:
    out = GroupAlgebraElement.zero(G)
    for model in Xi:
        out = out + model.central_idempotent
    return out


def build_e_xi(G, Xi, chain=None) -> PeterWeylIdempotent:
    """Class-function formula for the central idempotent of the Xi-block."""
    w = Fraction(1, G.order)
    coeffs = {}
    for g in range(G.order):
        v = sum((m.character_value(g).conj() * m.degree for m in Xi), 0)
        if v:
            coeffs[g] = v * w
    e = GroupAlgebraElement(G, coeffs)
    return PeterWeylIdempotent("xi", e, tuple(m.label for m in Xi), frozenset(range(G.order)), chain)


def verify_compatibility(e_xi, e_sigma, e_delta) -> dict:
    x, s, d = e_xi.element, e_sigma.element, e_delta.element
    return {
        "xi*sigma=sigma": x * s == s,
        "sigma*xi=sigma": s * x == s,
        "xi*delta=delta": x * d == d,
        "delta*xi=delta": d * x == d,
        "xi*xi=xi": x * x == x,
        "sigma*sigma=sigma": s * s == s,
        "delta*delta=delta": d * d == d,
        "xi central": x.is_central(),
    }


def idem_formula_sum(Xi, bases) -> GroupAlgebraElement:
    """sum over Xi and each normalized basis of the diagonal matrix coefficients."""
    out = None
    for _, _, p in block_projectors(Xi, bases):
        out = p if out is None else out + p
    return out


def control_models(G, Xi, all_models) -> list:
    """Irreducibles outside Xi (by character)."""
    return [m for m in all_models if not any(m.equivalent(x) for x in Xi)]
