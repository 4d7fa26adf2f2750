"""Supersingular j-invariants, curve models over F_{p^2}, and l-torsion bases.

Points are ``(x, y)`` tuples of field elements; ``None`` is the point at
infinity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Optional, Sequence

import numpy as np
from sympy import factorint, n_order

from .finite_fields import FieldElement, FiniteField, embed, make_field

INFINITY = None
Point = Optional[tuple]


class Curve:
    """Short Weierstrass curve y^2 = x^3 + A x + B."""

    def __init__(self, A: FieldElement, B: FieldElement):
        if A.field != B.field:
            raise ValueError("coefficients from different fields")
        self.field: FiniteField = A.field
        self.A = A
        self.B = B
        if not (4 * A ** 3 + 27 * B * B):
            raise ValueError(f"singular curve A={A}, B={B}")

    def __repr__(self):
        return f"Curve(y^2 = x^3 + {self.A}*x + {self.B} over {self.field})"

    def __eq__(self, other):
        return isinstance(other, Curve) and self.A == other.A and self.B == other.B

    def __hash__(self):
        return hash((self.A, self.B))

    def rhs(self, x: FieldElement) -> FieldElement:
        return (x * x + self.A) * x + self.B

    def contains(self, P: Point) -> bool:
        if P is None:
            return True
        x, y = P
        return y * y == self.rhs(x)

    def check(self, P: Point) -> Point:
        if not self.contains(P):
            raise ValueError(f"point {P} is not on {self}")
        return P

    def neg(self, P: Point) -> Point:
        if P is None:
            return None
        return (P[0], -P[1])

    def add(self, P: Point, Q: Point) -> Point:
        if P is None:
            return Q
        if Q is None:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y1 != y2 or not y1:
                return None
            lam = (3 * x1 * x1 + self.A) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - x1 - x2
        return (x3, lam * (x1 - x3) - y1)

    def sub(self, P: Point, Q: Point) -> Point:
        return self.add(P, self.neg(Q))

    def mul(self, n: int, P: Point) -> Point:
        if n < 0:
            return self.mul(-n, self.neg(P))
        result = None
        addend = P
        while n:
            if n & 1:
                result = self.add(result, addend)
            n >>= 1
            if n:
                addend = self.add(addend, addend)
        return result

    def j_invariant(self) -> FieldElement:
        a3 = 4 * self.A ** 3
        return 1728 * a3 / (a3 + 27 * self.B * self.B)

    def base_change(self, target: FiniteField) -> "Curve":
        return Curve(embed(self.A, target), embed(self.B, target))

    def lift_point(self, P: Point, target: FiniteField) -> Point:
        if P is None:
            return None
        return (embed(P[0], target), embed(P[1], target))

    def random_point(self, rng: random.Random) -> tuple:
        F = self.field
        while True:
            x = F.from_index(rng.randrange(F.order))
            y = self.rhs(x).sqrt()
            if y is not None:
                return (x, y if rng.randrange(2) else -y)

    def points(self) -> list[Point]:
        """Every rational point (tiny fields only)."""
        pts: list[Point] = [None]
        for x in self.field.elements():
            r = self.rhs(x)
            if not r:
                pts.append((x, r))
                continue
            y = r.sqrt()
            if y is not None:
                pts.extend([(x, y), (x, -y)])
        return pts


def j_invariant(E: Curve) -> FieldElement:
    return E.j_invariant()


def curve_from_j(j: FieldElement) -> Curve:
    F = j.field
    if j == 0:
        return Curve(F.zero, F.one)
    if j == 1728:
        return Curve(F.one, F.zero)
    c = 1728 - j
    return Curve(3 * j * c, 2 * j * c * c)


# ---------------------------------------------------------------------------
# point counting over F_{p^2}
# ---------------------------------------------------------------------------

def count_points(E: Curve) -> int:
    """#E(F_{p^2}) by summing the quadratic character over all x."""
    F = E.field
    if F.k != 2 or F.nonresidue is None:
        raise ValueError("exhaustive counting is implemented for F_{p^2} = F_p(sqrt eps)")
    p, eps = F.p, F.nonresidue
    a = np.arange(p, dtype=np.int64)
    x0 = np.repeat(a, p)
    x1 = np.tile(a, p)

    def mul(u0, u1, v0, v1):
        return (u0 * v0 + eps * (u1 * v1 % p)) % p, (u0 * v1 + u1 * v0) % p

    A0, A1 = E.A.c
    B0, B1 = E.B.c
    s0, s1 = mul(x0, x1, x0, x1)
    s0, s1 = (s0 + A0) % p, (s1 + A1) % p
    r0, r1 = mul(s0, s1, x0, x1)
    r0, r1 = (r0 + B0) % p, (r1 + B1) % p
    nrm = (r0 * r0 - eps * (r1 * r1 % p)) % p
    chi = np.full(p, -1, dtype=np.int64)
    chi[(a * a) % p] = 1
    chi[0] = 0
    return p * p + 1 + int(chi[nrm].sum())


# ---------------------------------------------------------------------------
# supersingular j-invariants
# ---------------------------------------------------------------------------

def deuring_polynomial(p: int) -> list[int]:
    """Coefficients (low to high) of H_p(x) = sum_i C(m, i)^2 x^i mod p, m = (p-1)/2."""
    m = (p - 1) // 2
    return [comb(m, i) ** 2 % p for i in range(m + 1)]


def legendre_to_j(lam: FieldElement) -> FieldElement:
    t = lam * lam - lam + 1
    return 256 * t ** 3 / (lam * lam * (lam - 1) ** 2)


def _hasse_roots(p: int) -> list[FieldElement]:
    F = make_field(p, 2)
    eps = F.nonresidue
    a = np.arange(p, dtype=np.int64)
    l0 = np.repeat(a, p)
    l1 = np.tile(a, p)
    acc0 = np.zeros(p * p, dtype=np.int64)
    acc1 = np.zeros(p * p, dtype=np.int64)
    for c in reversed(deuring_polynomial(p)):
        acc0, acc1 = ((acc0 * l0 + eps * (acc1 * l1 % p) + c) % p,
                      (acc0 * l1 + acc1 * l0) % p)
    hits = np.nonzero((acc0 == 0) & (acc1 == 0))[0]
    return [F([int(l0[i]), int(l1[i])]) for i in hits]


def is_rational(j: FieldElement) -> bool:
    return j.is_prime_field()


def conjugate(j: FieldElement) -> FieldElement:
    return j.frobenius()


def canonical_representative(j: FieldElement) -> FieldElement:
    """Of j and its conjugate, the one written a + b sqrt(eps) with b < p/2."""
    if is_rational(j):
        return j
    return j if j.c[1] < j.field.p / 2 else conjugate(j)


@dataclass
class SupersingularSet:
    p: int
    all_j: list  # every supersingular j in F_{p^2}
    representatives: list  # one j per Frobenius orbit
    orbit_sizes: list

    @property
    def h(self) -> int:
        return len(self.all_j)

    @property
    def t(self) -> int:
        return len(self.representatives)


def supersingular_j_list(p: int) -> SupersingularSet:
    if p < 5:
        raise ValueError("p must be at least 5")
    js = set()
    for lam in _hasse_roots(p):
        if lam == 0 or lam == 1:
            raise ArithmeticError(f"degenerate Legendre parameter {lam} is a root of H_{p}")
        js.add(legendre_to_j(lam))
    all_j = sorted(js, key=FieldElement.index)
    for j in all_j:
        if conjugate(j) not in js:
            raise ArithmeticError(f"supersingular set for p={p} is not Galois stable at {j}")
    reps = sorted({canonical_representative(j) for j in all_j},
                  key=lambda j: (not is_rational(j), j.index()))
    sizes = [1 if is_rational(j) else 2 for j in reps]
    return SupersingularSet(p, all_j, reps, sizes)


def render_j(j: FieldElement) -> str:
    """``'17'`` for rational j, ``'3±10√2'`` for a conjugate pair."""
    if is_rational(j):
        return str(j.c[0])
    p = j.field.p
    a, b = j.c
    return f"{a}±{min(b, p - b)}√{j.field.nonresidue}"


def j_to_json(j: FieldElement):
    if is_rational(j):
        return j.c[0]
    p = j.field.p
    a, b = j.c
    return {"a": a, "b": min(b, p - b), "eps": j.field.nonresidue}


# ---------------------------------------------------------------------------
# twists with Frobenius = -p
# ---------------------------------------------------------------------------

def _twisting_element(F: FiniteField, need_noncube: bool) -> FieldElement:
    n = 2
    while True:
        d = F.from_index(n)
        if d and not d.is_square() and (not need_noncube or d ** ((F.order - 1) // 3) != 1):
            return d
        n += 1


def twists(E: Curve) -> list[Curve]:
    F = E.field
    j = E.j_invariant()
    if j == 0:
        d = _twisting_element(F, True)
        return [Curve(E.A, E.B * d ** i) for i in range(6)]
    if j == 1728:
        d = _twisting_element(F, False)
        return [Curve(E.A * d ** i, E.B) for i in range(4)]
    d = _twisting_element(F, False)
    return [E, Curve(E.A * d * d, E.B * d ** 3)]


def normalize_twist(E: Curve) -> Curve:
    """The twist of E over F_{p^2} with exactly (p+1)^2 points (Frobenius acts as -p)."""
    p = E.field.p
    for tw in twists(E):
        if count_points(tw) == (p + 1) ** 2:
            return tw
    raise ArithmeticError(f"no twist of {E} has (p+1)^2 points; j is not supersingular")


# ---------------------------------------------------------------------------
# torsion
# ---------------------------------------------------------------------------

def _in_span(E: Curve, P: Point, Q: Point, order: int) -> bool:
    """Is Q a multiple of P (P of prime order ``order``)?"""
    R = None
    for _ in range(order):
        if R == Q:
            return True
        R = E.add(R, P)
    return False


def _spans_torsion(E: Curve, P: Point, Q: Point, r: int) -> bool:
    return P is not None and Q is not None and not _in_span(E, P, Q, r)


def echelon_generators(E: Curve, n: int, rng: random.Random) -> tuple:
    """Two points generating E(F) = (Z/n)^2."""
    primes = sorted(factorint(n))
    for _ in range(200):
        P = E.random_point(rng)
        Q = E.random_point(rng)
        if all(_spans_torsion(E, E.mul(n // r, P), E.mul(n // r, Q), r) for r in primes):
            return P, Q
    raise ArithmeticError(f"could not find generators of (Z/{n})^2 on {E}")


@dataclass
class TorsionContext:
    ell: int
    m: int
    field: FiniteField
    n: int
    curve: Curve  # the normalized curve over `field`
    P1: tuple
    P2: tuple
    test_points: tuple = ()  # generators of E(F_{p^2}), lifted to `field`

    @property
    def q(self) -> int:
        return self.field.order


def torsion_field_degree(p: int, ell: int) -> int:
    """m with E[ell] defined over F_{p^(2m)} on a curve with Frobenius -p."""
    return int(n_order((-p) % ell, ell))


def torsion_basis(E: Curve, ell: int, rng: random.Random,
                  test_points: Sequence = ()) -> TorsionContext:
    p = E.field.p
    if ell == p:
        raise ValueError("ell must differ from the characteristic")
    m = torsion_field_degree(p, ell)
    K = make_field(p, 2 * m)
    n = abs((-p) ** m - 1)
    EK = E.base_change(K)
    found: list = []
    for _ in range(100):
        R = EK.mul(n // ell, EK.random_point(rng))
        if R is None:
            continue
        if EK.mul(ell, R) is not None:
            raise ArithmeticError(f"group exponent of {EK} is not {n}; wrong twist?")
        if not found:
            found.append(R)
        elif not _in_span(EK, found[0], R, ell):
            found.append(R)
            break
    if len(found) < 2:
        raise ArithmeticError(f"no basis of E[{ell}] found over {K}")
    lifted = tuple(E.lift_point(P, K) for P in test_points)
    return TorsionContext(ell, m, K, n, EK, found[0], found[1], lifted)
