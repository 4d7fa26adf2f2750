"""Integral positive-definite ternary quadratic forms in Seeber notation.

A form ``(a11, a22, a33; a23, a13, a12)`` is

    f = a11 x^2 + a22 y^2 + a33 z^2 + a23 yz + a13 xz + a12 xy

with cross coefficients *not* doubled.  The discriminant used here is
``4 det(G)`` for the half-integral Gram matrix G, which is a positive
prime p for the forms attached to the quaternion algebra ramified at p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterator, Optional, Sequence

Vector = tuple[int, int, int]


@dataclass(frozen=True, order=True)
class TernaryForm:
    a11: int
    a22: int
    a33: int
    a23: int
    a13: int
    a12: int
    tau: Optional[int] = field(default=None, compare=False)

    @property
    def coefficients(self) -> tuple[int, int, int, int, int, int]:
        return (self.a11, self.a22, self.a33, self.a23, self.a13, self.a12)

    @property
    def gram2(self) -> tuple[tuple[int, ...], ...]:
        """Even Gram matrix 2G, so that f(x) = x^T (2G) x / 2."""
        return (
            (2 * self.a11, self.a12, self.a13),
            (self.a12, 2 * self.a22, self.a23),
            (self.a13, self.a23, 2 * self.a33),
        )

    def __str__(self):
        return "({},{},{};{},{},{})".format(*self.coefficients)

    def seeber_rows(self) -> list[str]:
        """The three-row block ``a11 a22 a33 / a23 a13 a12 / tau``."""
        tau = self.tau if self.tau is not None else automorph_count(self)
        return [
            "{:>3} {:>3} {:>3}".format(self.a11, self.a22, self.a33),
            "{:>3} {:>3} {:>3}".format(self.a23, self.a13, self.a12),
            "{:>11}".format(tau),
        ]

    def to_json(self) -> dict:
        tau = self.tau if self.tau is not None else automorph_count(self)
        return {
            "a11": self.a11, "a22": self.a22, "a33": self.a33,
            "a23": self.a23, "a13": self.a13, "a12": self.a12, "tau": tau,
        }

    @classmethod
    def from_json(cls, d: dict) -> "TernaryForm":
        return cls(d["a11"], d["a22"], d["a33"], d["a23"], d["a13"], d["a12"], d.get("tau"))

    def with_tau(self) -> "TernaryForm":
        if self.tau is not None:
            return self
        return TernaryForm(*self.coefficients, tau=automorph_count(self))

    @cached_property
    def _cholesky(self) -> tuple[Fraction, ...]:
        """Completion of squares: f = q1 (x + c12 y + c13 z)^2 + q2 (y + c23 z)^2 + q3 z^2."""
        a11, a22, a33, a23, a13, a12 = map(Fraction, self.coefficients)
        q1 = a11
        c12 = a12 / (2 * a11)
        c13 = a13 / (2 * a11)
        q2 = a22 - q1 * c12 * c12
        c23 = (a23 / 2 - q1 * c12 * c13) / q2 if q2 else Fraction(0)
        q3 = a33 - q1 * c13 * c13 - q2 * c23 * c23
        return q1, q2, q3, c12, c13, c23


def evaluate(f: TernaryForm, x: Sequence[int]) -> int:
    x1, x2, x3 = x
    return (f.a11 * x1 * x1 + f.a22 * x2 * x2 + f.a33 * x3 * x3
            + f.a23 * x2 * x3 + f.a13 * x1 * x3 + f.a12 * x1 * x2)


def bilinear(f: TernaryForm, x: Sequence[int], y: Sequence[int]) -> int:
    """B(x, y) = f(x + y) - f(x) - f(y)."""
    g = f.gram2
    return sum(x[i] * g[i][j] * y[j] for i in range(3) for j in range(3))


def discriminant(f: TernaryForm) -> int:
    a11, a22, a33, a23, a13, a12 = f.coefficients
    return (4 * a11 * a22 * a33 + a12 * a13 * a23
            - a11 * a23 * a23 - a22 * a13 * a13 - a33 * a12 * a12)


def is_positive_definite(f: TernaryForm) -> bool:
    return (f.a11 > 0 and 4 * f.a11 * f.a22 - f.a12 * f.a12 > 0
            and discriminant(f) > 0)


def _int_range(center: Fraction, radius_sq: Fraction) -> range:
    """Integers x with (x - center)^2 <= radius_sq."""
    if radius_sq < 0:
        return range(0)
    r = math.isqrt(radius_sq.numerator // radius_sq.denominator) + 1
    lo = math.floor(center) - r
    hi = math.ceil(center) + r
    while (lo - center) ** 2 > radius_sq and lo <= hi:
        lo += 1
    while (hi - center) ** 2 > radius_sq and hi >= lo:
        hi -= 1
    return range(lo, hi + 1)


def short_vectors(f: TernaryForm, bound: int) -> list[tuple[Vector, int]]:
    """All x with 0 < f(x) <= bound, each once, as (x, f(x)) pairs."""
    if not is_positive_definite(f):
        raise ValueError(f"form {f} is not positive definite")
    out = []
    if bound <= 0:
        return out
    q1, q2, q3, c12, c13, c23 = f._cholesky
    bound = Fraction(bound)
    for z in _int_range(Fraction(0), bound / q3):
        rest_z = bound - q3 * z * z
        for y in _int_range(-c23 * z, rest_z / q2):
            rest_y = rest_z - q2 * (y + c23 * z) ** 2
            for x in _int_range(-c12 * y - c13 * z, rest_y / q1):
                if x == y == z == 0:
                    continue
                v = (x, y, z)
                out.append((v, evaluate(f, v)))
    return out


def representation_numbers(f: TernaryForm, bound: int) -> list[int]:
    """r(f, n) for n = 0..bound."""
    r = [0] * (bound + 1)
    r[0] = 1
    for _, n in short_vectors(f, bound):
        r[n] += 1
    return r


def _det3(m) -> int:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _transforms(f: TernaryForm, g: TernaryForm) -> Iterator[tuple[Vector, Vector, Vector]]:
    """Yield column triples (v1, v2, v3) of every T in GL3(Z) with f(Tx) = g(x)."""
    if discriminant(f) != discriminant(g):
        return
    targets = (g.a11, g.a22, g.a33)
    vecs = short_vectors(f, max(targets))
    cands = [[v for v, n in vecs if n == t] for t in targets]
    gg = g.gram2
    for v1 in cands[0]:
        for v2 in cands[1]:
            if bilinear(f, v1, v2) != gg[0][1]:
                continue
            for v3 in cands[2]:
                if bilinear(f, v1, v3) != gg[0][2] or bilinear(f, v2, v3) != gg[1][2]:
                    continue
                if abs(_det3((v1, v2, v3))) == 1:
                    yield v1, v2, v3


def find_transform(f: TernaryForm, g: TernaryForm) -> Optional[tuple[Vector, Vector, Vector]]:
    return next(_transforms(f, g), None)


def equivalent(f: TernaryForm, g: TernaryForm) -> bool:
    """Decide integral equivalence by exhaustive assembly of a transform."""
    return find_transform(f, g) is not None


def automorph_count(f: TernaryForm) -> int:
    """Number of integral automorphs modulo +-identity."""
    return sum(1 for _ in _transforms(f, f)) // 2


def _cross(u: Vector, v: Vector) -> Vector:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _rank(vectors: list[Vector]) -> int:
    if not vectors:
        return 0
    if len(vectors) == 1:
        return int(any(vectors[0]))
    if len(vectors) == 2:
        if any(_cross(*vectors)):
            return 2
        return int(any(any(v) for v in vectors))
    if _det3(vectors):
        return 3
    return max(_rank([a, b]) for a, b in ((vectors[0], vectors[1]), (vectors[0], vectors[2]),
                                           (vectors[1], vectors[2])))


def successive_minima(f: TernaryForm) -> tuple[int, int, int]:
    """The three successive minima N1 <= N2 <= N3 of f."""
    vecs = sorted(short_vectors(f, max(f.a11, f.a22, f.a33)), key=lambda vn: (vn[1], vn[0]))
    chosen: list[Vector] = []
    minima = []
    for v, n in vecs:
        if _rank(chosen + [v]) > len(chosen):
            chosen.append(v)
            minima.append(n)
            if len(chosen) == 3:
                break
    return tuple(minima)


def schiemann_bound(f: TernaryForm) -> int:
    """Floor of the explicit bound b(f) on representation numbers that separate classes."""
    n1, n2, n3 = (Fraction(n) for n in successive_minima(f))
    return math.floor(schiemann_bound_from_minima(n1, n2, n3))


def schiemann_bound_from_minima(n1, n2, n3) -> Fraction:
    n1, n2, n3 = Fraction(n1), Fraction(n2), Fraction(n3)
    return min(
        -Fraction(1, 14) * n1 + Fraction(18, 7) * n2 + n3,
        Fraction(3, 2) * n1 - Fraction(5, 6) * n2 + Fraction(17, 6) * n3,
        Fraction(13, 5) * n1 + n2 + n3,
        Fraction(7, 2) * n3,
    )


def _primitive_tail(v: Vector, i: int) -> bool:
    tail = v[i:]
    return any(tail) and math.gcd(*tail) == 1


def is_reduced(f: TernaryForm) -> bool:
    a11, a22, a33, a23, a13, a12 = f.coefficients
    if not is_positive_definite(f):
        return False
    if not (a11 <= a22 <= a33):
        return False
    if a12 < 0 or a13 < 0 or ((a12 == 0 or a13 == 0) and a23 < 0):
        return False
    if a11 == a22 and abs(a23) > a13:
        return False
    if a22 == a33 and a13 > a12:
        return False
    diag = (a11, a22, a33)
    for v, n in short_vectors(f, a33):
        for i in range(3):
            if n < diag[i] and _primitive_tail(v, i):
                return False
    return True


def reduced_candidates(p: int) -> list[TernaryForm]:
    """Reduced forms of discriminant p found in the box cut out by a11 a22 a33 <= 2p."""
    out = []
    for a11 in range(1, 2 * p + 1):
        if a11 ** 3 > 2 * p:
            break
        for a22 in range(a11, 2 * p + 1):
            if a11 * a22 * a22 > 2 * p:
                break
            for a33 in range(a22, 2 * p // (a11 * a22) + 1):
                for a23, a13, a12 in product(range(-a22, a22 + 1), range(-a11, a11 + 1),
                                             range(-a11, a11 + 1)):
                    f = TernaryForm(a11, a22, a33, a23, a13, a12)
                    if discriminant(f) == p and is_reduced(f):
                        out.append(f)
    return out


def representative_key(f: TernaryForm) -> tuple:
    """Preference among reduced forms of one class: sparse, small cross terms first."""
    cross = (f.a23, f.a13, f.a12)
    return (sum(1 for c in cross if c), sum(abs(c) for c in cross), f.coefficients)


def enumerate_reduced(p: int) -> list[TernaryForm]:
    """One reduced representative per class of discriminant p, sorted, with tau attached."""
    classes: list[TernaryForm] = []
    for f in sorted(reduced_candidates(p), key=representative_key):
        if not any(equivalent(g, f) for g in classes):
            classes.append(f)
    return sorted(f.with_tau() for f in classes)
