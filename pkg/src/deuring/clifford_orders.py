"""Maximal orders C_0(f) built from ternary forms, and their trace/norm fingerprints.

The even Clifford algebra of f has the Z-basis {1, e1, e2, e3} with, for every
even permutation (i, j, k) of (1, 2, 3),

    e_i^2   = a_jk e_i - a_jj a_kk
    e_i e_j = a_kk (a_ij - e_k)
    e_j e_i = a_1k e1 + a_2k e2 + a_3k e3 - a_ik a_jk

(indices of a are unordered).  For the forms of discriminant p this is a
maximal order in the quaternion algebra ramified at p and infinity.
"""

from __future__ import annotations

import math
from functools import cached_property
from typing import Iterable, Sequence

from .ternary_forms import TernaryForm, short_vectors

Fingerprint = frozenset  # of (trace, norm) pairs

EVEN_PERMUTATIONS = ((1, 2, 3), (2, 3, 1), (3, 1, 2))


def _coef(f: TernaryForm, i: int, j: int) -> int:
    i, j = min(i, j), max(i, j)
    return {
        (1, 1): f.a11, (2, 2): f.a22, (3, 3): f.a33,
        (2, 3): f.a23, (1, 3): f.a13, (1, 2): f.a12,
    }[(i, j)]


class OrderPresentation:
    """Structure constants of C_0(f) in the basis (1, e1, e2, e3)."""

    def __init__(self, form: TernaryForm):
        self.form = form
        a = lambda i, j: _coef(form, i, j)
        table = [[None] * 4 for _ in range(4)]
        for i in range(4):
            unit = [0, 0, 0, 0]
            unit[i] = 1
            table[0][i] = tuple(unit)
            table[i][0] = tuple(unit)
        for i, j, k in EVEN_PERMUTATIONS:
            sq = [0, 0, 0, 0]
            sq[0] = -a(j, j) * a(k, k)
            sq[i] = a(j, k)
            table[i][i] = tuple(sq)

            ij = [0, 0, 0, 0]
            ij[0] = a(k, k) * a(i, j)
            ij[k] = -a(k, k)
            table[i][j] = tuple(ij)

            ji = [0, a(1, k), a(2, k), a(3, k)]
            ji[0] = -a(i, k) * a(j, k)
            table[j][i] = tuple(ji)
        self.table = tuple(tuple(row) for row in table)
        # tr(e_i) = a_jk
        self.basis_traces = (2, form.a23, form.a13, form.a12)

    def __repr__(self):
        return f"OrderPresentation({self.form})"

    def __eq__(self, other):
        return isinstance(other, OrderPresentation) and self.form.coefficients == other.form.coefficients

    def __hash__(self):
        return hash(self.form.coefficients)

    def element(self, coords: Sequence[int]) -> "QuaternionElement":
        return QuaternionElement(self, tuple(coords))

    @property
    def one(self) -> "QuaternionElement":
        return self.element((1, 0, 0, 0))

    def basis(self) -> list["QuaternionElement"]:
        return [self.element(tuple(int(i == j) for j in range(4))) for i in range(4)]

    def relations(self) -> list[str]:
        """The multiplication table as human-readable relations."""
        names = ("1", "e1", "e2", "e3")
        lines = []
        for i in range(1, 4):
            for j in range(1, 4):
                lhs = f"e{i}²" if i == j else f"e{i}·e{j}"
                lines.append(f"{lhs} = {_render(self.table[i][j], names)}")
        return lines

    def to_json(self) -> dict:
        return {
            "basis": ["1", "e1", "e2", "e3"],
            "products": {
                f"e{i}*e{j}": list(self.table[i][j]) for i in range(1, 4) for j in range(1, 4)
            },
        }

    @cached_property
    def qtilde(self) -> tuple[tuple[int, int, int], ...]:
        return qtilde(self.form)

    @cached_property
    def qtilde_form(self) -> TernaryForm:
        m = self.qtilde
        return TernaryForm(m[0][0], m[1][1], m[2][2], 2 * m[1][2], 2 * m[0][2], 2 * m[0][1])


def _render(vec: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for c, name in zip(vec, names):
        if c == 0:
            continue
        mag = abs(c)
        if name == "1":
            term = str(mag)
        else:
            term = name if mag == 1 else f"{mag}{name}"
        sign = "−" if c < 0 else "+"
        parts.append((sign, term))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("−" if first_sign == "−" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


class QuaternionElement:
    __slots__ = ("order", "x")

    def __init__(self, order: OrderPresentation, x: tuple):
        self.order = order
        self.x = x

    def _check(self, other: "QuaternionElement"):
        if other.order is not self.order and other.order != self.order:
            raise ValueError("elements of different orders")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.order.element((other, 0, 0, 0))
        self._check(other)
        return QuaternionElement(self.order, tuple(a + b for a, b in zip(self.x, other.x)))

    __radd__ = __add__

    def __neg__(self):
        return QuaternionElement(self.order, tuple(-a for a in self.x))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QuaternionElement(self.order, tuple(a * other for a in self.x))
        self._check(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            return self.x == (other, 0, 0, 0)
        return isinstance(other, QuaternionElement) and self.order == other.order and self.x == other.x

    def __hash__(self):
        return hash(self.x)

    def __repr__(self):
        return _render(self.x, ("1", "e1", "e2", "e3"))

    def conjugate(self) -> "QuaternionElement":
        return trace(self) - self


def multiply(a: QuaternionElement, b: QuaternionElement) -> QuaternionElement:
    if a.order is not b.order and a.order != b.order:
        raise ValueError("elements of different orders")
    table = a.order.table
    out = [0, 0, 0, 0]
    for i, x in enumerate(a.x):
        if x:
            row = table[i]
            for j, y in enumerate(b.x):
                if y:
                    xy = x * y
                    for k, c in enumerate(row[j]):
                        if c:
                            out[k] += xy * c
    return QuaternionElement(a.order, tuple(out))


def trace(a: QuaternionElement) -> int:
    return sum(c * t for c, t in zip(a.x, a.order.basis_traces))


def norm(a: QuaternionElement) -> int:
    prod = multiply(a, a.conjugate())
    if any(prod.x[1:]):
        raise ArithmeticError(f"alpha * conj(alpha) is not scalar for {a} in {a.order}")
    return prod.x[0]


def clifford(f: TernaryForm) -> OrderPresentation:
    return OrderPresentation(f)


def qtilde(f: TernaryForm) -> tuple[tuple[int, int, int], ...]:
    """Gram matrix of the positive ternary form 4 nr - tr^2 on the span of e1, e2, e3."""
    a11, a22, a33, a23, a13, a12 = f.coefficients
    m12 = a13 * a23 - 2 * a12 * a33
    m13 = a12 * a23 - 2 * a13 * a22
    m23 = a12 * a13 - 2 * a11 * a23
    return (
        (4 * a22 * a33 - a23 * a23, m12, m13),
        (m12, 4 * a11 * a33 - a13 * a13, m23),
        (m13, m23, 4 * a11 * a22 - a12 * a12),
    )


def trace_norm_pairs(order: OrderPresentation, n: int) -> Fingerprint:
    """{(tr a, n) : a in the order, nr a = n}, via 4 nr - tr^2 = q(e-part)."""
    if n < 1:
        raise ValueError("norm must be positive")
    _, t1, t2, t3 = order.basis_traces
    out = set()
    vecs = [((0, 0, 0), 0)] + short_vectors(order.qtilde_form, 4 * n)
    for (x1, x2, x3), q in vecs:
        rest = 4 * n - q
        t = math.isqrt(rest)
        if t * t != rest:
            continue
        lin = t1 * x1 + t2 * x2 + t3 * x3
        for tt in {t, -t}:
            if (tt - lin) % 2 == 0:
                out.add((tt, n))
    return frozenset(out)


def gamma_set(order: OrderPresentation, b: int) -> Fingerprint:
    out: set = set()
    for n in range(1, b + 1):
        out |= trace_norm_pairs(order, n)
    return frozenset(out)


def fingerprint(order: OrderPresentation, ells: Iterable[int]) -> Fingerprint:
    out: set = set()
    for ell in ells:
        out |= trace_norm_pairs(order, ell)
    return frozenset(out)


def _primes_from(start: int) -> Iterable[int]:
    from sympy import nextprime

    q = start
    while True:
        yield q
        q = nextprime(q)


def select_lambda(orders: Sequence[OrderPresentation], taus: Sequence[int],
                  p: int | None = None, cap: int | None = None) -> list[int]:
    """Shortest prefix of 3, 5, 7, 11, ... (skipping p) separating the orders together with tau."""
    if len(orders) != len(taus):
        raise ValueError("orders and taus must align")
    if len(orders) <= 1:
        return []
    if cap is None:
        from .ternary_forms import schiemann_bound

        cap = max(schiemann_bound(o.form) for o in orders)
    ells: list[int] = []
    prints = [frozenset() for _ in orders]
    for ell in _primes_from(3):
        if ell == p:
            continue
        if ell > max(cap, 3):
            raise RuntimeError(
                f"no separating norm set up to the bound {cap}; orders are not distinguished"
            )
        ells.append(ell)
        prints = [fp | trace_norm_pairs(o, ell) for fp, o in zip(prints, orders)]
        keys = list(zip(taus, prints))
        if len(set(keys)) == len(keys):
            return ells
