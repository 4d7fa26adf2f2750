"""Separable isogenies from l-subgroups (Velu) and traces of the resulting endomorphisms."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .finite_fields import FieldElement, embed, make_field, poly_roots
from .supersingular_curves import (
    Curve,
    Point,
    TorsionContext,
    curve_from_j,
    echelon_generators,
    normalize_twist,
    torsion_basis,
)


@dataclass
class Subgroup:
    generator: tuple
    elements: tuple  # the nonzero points
    order: int

    def __contains__(self, P: Point) -> bool:
        return P is None or P in self.elements


def cyclic_subgroup(E: Curve, generator: tuple, order: int) -> Subgroup:
    elements = []
    P = generator
    for _ in range(order - 1):
        if P is None:
            raise ValueError(f"generator has order smaller than {order}")
        elements.append(P)
        P = E.add(P, generator)
    if P is not None:
        raise ValueError(f"generator does not have order {order}")
    return Subgroup(generator, tuple(elements), order)


def subgroups_of_order(ctx: TorsionContext) -> list[Subgroup]:
    """The l + 1 cyclic subgroups of E[l]: <P1 + k P2> for k < l, and <P2>."""
    E, ell = ctx.curve, ctx.ell
    gens = []
    R = ctx.P1
    for _ in range(ell):
        gens.append(R)
        R = E.add(R, ctx.P2)
    gens.append(ctx.P2)
    return [cyclic_subgroup(E, g, ell) for g in gens]


def velu_codomain(E: Curve, C: Subgroup) -> Curve:
    """Codomain E/C for y^2 = x^3 + A x + B."""
    F = E.field
    v = F.zero
    w = F.zero
    seen = set()
    for Q in C.elements:
        E.check(Q)
        x, y = Q
        if x in seen:
            continue
        seen.add(x)
        gx = 3 * x * x + E.A
        if not y:
            vq, uq = gx, F.zero
        else:
            vq, uq = 2 * gx, 4 * y * y
        v = v + vq
        w = w + uq + x * vq
    return Curve(E.A - 5 * v, E.B - 7 * w)


def velu_evaluate(E: Curve, C: Subgroup, P: Point) -> Point:
    """phi(P) = (x(P) + sum x(P+Q) - x(Q), y(P) + sum y(P+Q) - y(Q)) over Q in C \\ {0}."""
    E.check(P)
    if P in C:
        return None
    x, y = P
    for Q in C.elements:
        R = E.add(P, Q)
        x = x + R[0] - Q[0]
        y = y + R[1] - Q[1]
    return (x, y)


@dataclass(frozen=True)
class Isomorphism:
    """(x, y) -> (v x, w y) from one curve onto another, with w^2 = v^3."""

    v: FieldElement
    w: FieldElement

    def __call__(self, P: Point) -> Point:
        if P is None:
            return None
        return (self.v * P[0], self.w * P[1])


def _all_square_roots(c: FieldElement) -> list[FieldElement]:
    r = c.sqrt()
    if r is None:
        return []
    return sorted({r, -r}, key=FieldElement.index)


def _all_cube_roots(c: FieldElement) -> list[FieldElement]:
    F = c.field
    return poly_roots([-c, F.zero, F.zero, F.one])


def _isomorphisms_in_field(source: Curve, target: Curve) -> list[Isomorphism]:
    A, B, A2, B2 = target.A, target.B, source.A, source.B
    if not B:  # j = 1728
        vs = _all_square_roots(A / A2)
    elif not A:  # j = 0
        vs = _all_cube_roots(B / B2)
    else:
        vs = [(B * A2) / (A * B2)]
    out = []
    for v in vs:
        if v * v * A2 != A or v ** 3 * B2 != B:
            continue
        for w in _all_square_roots(v ** 3):
            out.append(Isomorphism(v, w))
    return out


def isomorphism_search(source: Curve, target: Curve) -> tuple[list[Isomorphism], Curve, Curve]:
    """Every isomorphism source -> target, extending the field once if needed.

    Returns (isomorphisms, source, target) with both curves over the field the
    isomorphisms live in.
    """
    if source.j_invariant() != target.j_invariant():
        raise ValueError("curves have different j-invariants")
    isos = _isomorphisms_in_field(source, target)
    if isos:
        return isos, source, target
    F = source.field
    K = make_field(F.p, 2 * F.k)
    source, target = source.base_change(K), target.base_change(K)
    isos = _isomorphisms_in_field(source, target)
    if not isos:
        raise ArithmeticError(f"no isomorphism found over {K}")
    return isos, source, target


def hasse_trace_bound(ell: int) -> int:
    return math.isqrt(4 * ell)


def _lift(P: Point, K) -> Point:
    if P is None or P[0].field == K:
        return P
    return (embed(P[0], K), embed(P[1], K))


def endo_trace_set(E: Curve, C: Subgroup, ell: int, ctx: TorsionContext) -> set[int]:
    """Traces of the endomorphisms with kernel C (empty if E/C is not isomorphic to E)."""
    E_C = velu_codomain(E, C)
    if E_C.j_invariant() != E.j_invariant():
        return set()
    isos, _, target = isomorphism_search(E_C, E)
    K = target.field
    if K != E.field:
        E_big = target
        C = Subgroup(_lift(C.generator, K), tuple(_lift(Q, K) for Q in C.elements), C.order)
    else:
        E_big = E
    points = [_lift(P, K) for P in ctx.test_points]
    if len(points) < 2:
        raise ValueError("torsion context carries no test points")
    bound = hasse_trace_bound(ell)
    traces = set()
    for psi in isos:
        admissible = set(range(-bound, bound + 1))
        for P in points:
            phiP = psi(velu_evaluate(E_big, C, P))
            phi2P = psi(velu_evaluate(E_big, C, phiP))
            target_pt = E_big.add(phi2P, E_big.mul(ell, P))
            ok = set()
            R = E_big.mul(-bound, phiP)
            for t in range(-bound, bound + 1):
                if R == target_pt:
                    ok.add(t)
                R = E_big.add(R, phiP)
            admissible &= ok
        if len(admissible) != 1:
            raise ArithmeticError(
                f"trace of a degree-{ell} endomorphism not determined: candidates {sorted(admissible)}"
            )
        traces |= admissible
    return traces


@dataclass
class IsogenyData:
    """Everything computed on the curve side for one j and one ell."""

    ell: int
    context: TorsionContext
    subgroups: list
    traces: list  # per subgroup, a set of traces


def curve_rng(p: int, j: FieldElement, seed: int, tag: str = "") -> random.Random:
    return random.Random(f"{p}|{j.c}|{seed}|{tag}")


def normalized_curve(j: FieldElement) -> Curve:
    return normalize_twist(curve_from_j(j))


def isogeny_data(E: Curve, ell: int, seed: int = 0) -> IsogenyData:
    p = E.field.p
    j = E.j_invariant()
    tests = echelon_generators(E, p + 1, curve_rng(p, j, seed, "test"))
    ctx = torsion_basis(E, ell, curve_rng(p, j, seed, f"ell{ell}"), tests)
    subgroups = subgroups_of_order(ctx)
    traces = [endo_trace_set(ctx.curve, C, ell, ctx) for C in subgroups]
    return IsogenyData(ell, ctx, subgroups, traces)


def isog_fingerprint(j: FieldElement, ells: Iterable[int], seed: int = 0) -> frozenset:
    """{(tr phi, l) : phi an endomorphism of degree l in ells} for the curve with invariant j."""
    E = normalized_curve(j)
    out = set()
    for ell in ells:
        data = isogeny_data(E, ell, seed)
        for ts in data.traces:
            out |= {(t, ell) for t in ts}
    return frozenset(out)
