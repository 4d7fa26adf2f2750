"""Exact arithmetic in F_p and its extensions F_{p^k}.

Every extension is built directly over the prime field with a monic
irreducible modulus found by a deterministic search, so the same (p, k)
always gives the same field.  Subfields are reached through :func:`embed`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional, Sequence

from sympy import isprime


# ---------------------------------------------------------------------------
# dense polynomials over F_p (coefficient lists, lowest degree first)
# ---------------------------------------------------------------------------

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pdivmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _trim(q), _trim(a[:db])


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list:
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _pdivmod(_pmul(base, base, p), mod, p)[1]
    return result


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Ben-Or test: ``poly`` has no factor of degree <= deg/2."""
    poly = _trim([c % p for c in poly])
    k = len(poly) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(k // 2):
        xp = _ppowmod(xp, p, poly, p)
        if len(_pgcd(poly, _psub(xp, x, p), p)) > 1:
            return False
    return True


def smallest_nonresidue(p: int) -> int:
    for e in range(2, p):
        if pow(e, (p - 1) // 2, p) == p - 1:
            return e
    raise ValueError(f"no quadratic non-residue mod {p}")


def _search_modulus(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    if k == 2 and p > 2:
        return ((-smallest_nonresidue(p)) % p, 0, 1)
    n = 1
    while True:
        digits = []
        m = n
        for _ in range(k):
            digits.append(m % p)
            m //= p
        if m:
            raise RuntimeError(f"no irreducible polynomial of degree {k} over F_{p}")
        if digits[0] and is_irreducible(digits + [1], p):
            return tuple(digits) + (1,)
        n += 1


# ---------------------------------------------------------------------------
# fields and elements
# ---------------------------------------------------------------------------

class FiniteField:
    """The field F_p[X]/(modulus) of order p**k."""

    def __init__(self, p: int, modulus: Sequence[int]):
        self.p = p
        self.modulus = tuple(modulus)
        self.k = len(self.modulus) - 1
        self.order = p ** self.k
        k = self.k
        # X^(k+i) reduced mod modulus, for i = 0..k-2
        red = []
        cur = [(-c) % p for c in self.modulus[:k]]
        for _ in range(max(k - 1, 0)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * m) % p for c, m in zip(cur, self.modulus[:k])]
        self._red = tuple(
            tuple((j, c) for j, c in enumerate(row) if c) for row in red
        )
        self._binomial = k == 2 and self.modulus[1] == 0
        self.nonresidue = (-self.modulus[0]) % p if self._binomial else None
        self.zero = FieldElement(self, (0,) * k)
        self.one = FieldElement(self, (1,) + (0,) * (k - 1))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return self is other or (
            isinstance(other, FiniteField) and self.p == other.p and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.k - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.k:
            raise ValueError("too many coefficients")
        return FieldElement(self, tuple(coeffs) + (0,) * (self.k - len(coeffs)))

    @property
    def gen(self) -> "FieldElement":
        if self.k == 1:
            return self(-self.modulus[0])
        return self([0, 1])

    def from_index(self, n: int) -> "FieldElement":
        coeffs = []
        for _ in range(self.k):
            coeffs.append(n % self.p)
            n //= self.p
        return FieldElement(self, tuple(coeffs))

    def elements(self) -> Iterable["FieldElement"]:
        for n in range(self.order):
            yield self.from_index(n)

    def _reduce(self, prod: list) -> tuple:
        k, p = self.k, self.p
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i]
            if c:
                for j, r in self._red[i - k]:
                    prod[j] += c * r
        return tuple(c % p for c in prod[:k])

    def _mul(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        if self.k == 1:
            return (a[0] * b[0] % p,)
        if self._binomial:
            a0, a1 = a
            b0, b1 = b
            return ((a0 * b0 + self.nonresidue * a1 * b1) % p, (a0 * b1 + a1 * b0) % p)
        k = self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._reduce(prod)

    def _inv(self, a: tuple) -> tuple:
        p = self.p
        if self.k == 1:
            return (pow(a[0], -1, p),)
        if self._binomial:
            a0, a1 = a
            n = pow((a0 * a0 - self.nonresidue * a1 * a1) % p, -1, p)
            return (a0 * n % p, -a1 * n % p)
        # extended Euclid in F_p[X]
        r0, r1 = list(self.modulus), _trim(list(a))
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        c = pow(r1[0], -1, p)
        s1 = [x * c % p for x in s1]
        return tuple(s1) + (0,) * (self.k - len(s1))


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FiniteField:
    """Return the canonical field of order p**k.

    F_{p^2} is always F_p(sqrt(eps)) with eps the smallest non-residue;
    higher degrees use the first irreducible polynomial in ascending
    base-p order of its lower coefficients.
    """
    if not isinstance(p, int) or not isprime(p):
        raise ValueError(f"{p!r} is not a prime")
    if k < 1:
        raise ValueError("degree must be >= 1")
    return FiniteField(p, _search_modulus(p, k))


class FieldElement:
    __slots__ = ("field", "c")

    def __init__(self, field: FiniteField, coeffs: tuple):
        self.field = field
        self.c = coeffs

    def _coerce(self, other) -> Optional[tuple]:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError(f"mixed fields {self.field} and {other.field}")
            return other.c
        if isinstance(other, int):
            return (other % self.field.p,) + (0,) * (self.field.k - 1)
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple((x + y) % p for x, y in zip(self.c, b)))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple((x - y) % p for x, y in zip(self.c, b)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple(-x % p for x in self.c))

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            return FieldElement(self.field, tuple(x * other % p for x in self.c))
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.c, b))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not any(self.c):
            raise ZeroDivisionError("inverse of zero in " + repr(self.field))
        return FieldElement(self.field, self.field._inv(self.c))

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        field = self.field
        result = field.one.c
        base = self.c
        while e:
            if e & 1:
                result = field._mul(result, base)
            e >>= 1
            if e:
                base = field._mul(base, base)
        return FieldElement(field, result)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.c == other.c and self.field == other.field
        if isinstance(other, int):
            return self.c == (other % self.field.p,) + (0,) * (self.field.k - 1)
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        if self.field.k == 1:
            return str(self.c[0])
        return f"{self.field!r}{list(self.c)}"

    def index(self) -> int:
        """Position in the canonical ordering of field elements."""
        n = 0
        for x in reversed(self.c):
            n = n * self.field.p + x
        return n

    def is_prime_field(self) -> bool:
        return not any(self.c[1:])

    def frobenius(self, times: int = 1) -> "FieldElement":
        return self ** (self.field.p ** times)

    def is_square(self) -> bool:
        if not self:
            return True
        return self ** ((self.field.order - 1) // 2) == 1

    def sqrt(self) -> Optional["FieldElement"]:
        """A square root (Tonelli-Shanks), or None for non-squares."""
        if not self:
            return self
        field = self.field
        q = field.order
        if not self.is_square():
            return None
        if q % 4 == 3:
            return self ** ((q + 1) // 4)
        s, t = 0, q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = _first_nonsquare(field)
        m, c = s, z ** t
        r, u = self ** ((t + 1) // 2), self ** t
        while u != 1:
            i, v = 0, u
            while v != 1:
                v, i = v * v, i + 1
            b = c ** (1 << (m - i - 1))
            m, c = i, b * b
            r, u = r * b, u * c
        return r


@lru_cache(maxsize=None)
def _first_nonsquare(field: FiniteField) -> FieldElement:
    n = 2
    while True:
        z = field.from_index(n)
        if not z.is_square():
            return z
        n += 1


# ---------------------------------------------------------------------------
# polynomials over F_q and root finding
# ---------------------------------------------------------------------------

def _ftrim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _fmul(a: list, b: list, field: FiniteField) -> list:
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return _ftrim(out)


def _fdivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    inv_lead = b[-1].inverse()
    q = [b[0].field.zero] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lead
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = a[i - db + j] - c * b[j]
    return _ftrim(q), _ftrim(a[:db])


def _fmonic(a: list) -> list:
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _fgcd(a: list, b: list) -> list:
    a, b = _ftrim(list(a)), _ftrim(list(b))
    while b:
        a, b = b, _fdivmod(a, b)[1]
    return _fmonic(a) if a else a


def _fpowmod(base: list, e: int, mod: list, field: FiniteField) -> list:
    result = [field.one]
    base = _fdivmod(base, mod)[1]
    while e:
        if e & 1:
            result = _fdivmod(_fmul(result, base, field), mod)[1]
        e >>= 1
        if e:
            base = _fdivmod(_fmul(base, base, field), mod)[1]
    return result


def _fsub(a: list, b: list, field: FiniteField) -> list:
    n = max(len(a), len(b))
    a = list(a) + [field.zero] * (n - len(a))
    b = list(b) + [field.zero] * (n - len(b))
    return _ftrim([x - y for x, y in zip(a, b)])


def _split(g: list, field: FiniteField) -> list:
    if len(g) == 2:
        return [-g[0] / g[1]]
    half = (field.order - 1) // 2
    n = 0
    while True:
        a = field.from_index(n)
        n += 1
        h = _fpowmod([a, field.one], half, g, field)
        d = _fgcd(g, _fsub(h, [field.one], field))
        if 1 < len(d) < len(g):
            return _split(d, field) + _split(_fdivmod(g, d)[0], field)


def poly_roots(coeffs: Sequence[FieldElement]) -> list[FieldElement]:
    """All distinct roots in the coefficient field, in canonical order."""
    poly = _ftrim(list(coeffs))
    if not poly:
        raise ValueError("zero polynomial")
    field = poly[0].field
    if len(poly) == 1:
        return []
    poly = _fmonic(poly)
    x = [field.zero, field.one]
    xq = _fpowmod(x, field.order, poly, field)
    g = _fgcd(poly, _fsub(xq, x, field))
    if len(g) <= 1:
        return []
    return sorted(set(_split(g, field)), key=FieldElement.index)


def root_of(c: FieldElement, k: int) -> Optional[FieldElement]:
    """The canonically smallest u with u**k == c, or None."""
    if not c:
        raise ValueError("root_of requires a nonzero argument")
    field = c.field
    if k == 1:
        return c
    if k == 2:
        r = c.sqrt()
        if r is None:
            return None
        return min(r, -r, key=FieldElement.index)
    roots = poly_roots([-c] + [field.zero] * (k - 1) + [field.one])
    return roots[0] if roots else None


@lru_cache(maxsize=None)
def _generator_image(source: FiniteField, target: FiniteField) -> tuple:
    if source._binomial:
        # X^2 - eps: the root is a square root of eps
        r = root_of(target(source.nonresidue), 2)
    else:
        roots = poly_roots([target(c) for c in source.modulus])
        r = roots[0] if roots else None
    if r is None:
        raise ArithmeticError(f"{source} does not embed in {target}")
    powers = [target.one]
    for _ in range(source.k - 1):
        powers.append(powers[-1] * r)
    return tuple(powers)


def embed(a: FieldElement, target: FiniteField) -> FieldElement:
    """Image of ``a`` under the canonical embedding into ``target``."""
    source = a.field
    if source == target:
        return a
    if source.p != target.p or target.k % source.k:
        raise ValueError(f"cannot embed {source} into {target}")
    if source.k == 1:
        return target(a.c[0])
    powers = _generator_image(source, target)
    out = target.zero
    for c, pw in zip(a.c, powers):
        if c:
            out = out + pw * c
    return out
