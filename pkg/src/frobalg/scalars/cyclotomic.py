"""Exact arithmetic in the cyclotomic field Q(zeta), zeta a primitive N-th root of unity, N odd.

Elements are stored as rational coefficient vectors of length phi(N), i.e. as
residues modulo the N-th cyclotomic polynomial in the power basis
1, zeta, ..., zeta^(phi(N)-1).  That residue is the canonical form, so equality
and hashing are structural.

Since N is odd, q = zeta**2 is again a primitive N-th root of unity, and every
half-integer power q**(m/2) is simply zeta**m.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den is monic
    num = list(num)
    out = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return out, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (lowest degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


class CyclotomicField:
    """The field Q(zeta) for a primitive root of unity zeta of odd order N >= 3.

    Instances are interned per order, so ``CyclotomicField(3) is CyclotomicField(3)``.
    """

    _instances: dict[int, "CyclotomicField"] = {}

    def __new__(cls, order: int):
        if order in cls._instances:
            return cls._instances[order]
        if not isinstance(order, int) or order < 3 or order % 2 == 0:
            raise ValueError(f"root of unity order must be an odd integer >= 3, got {order!r}")
        self = super().__new__(cls)
        self.order = order
        self.minimal_polynomial = cyclotomic_polynomial(order)
        self.degree = len(self.minimal_polynomial) - 1
        assert self.degree == _euler_phi(order)
        # zeta**i reduced, for 0 <= i < N
        self._powers = tuple(self._reduce_power(i) for i in range(order))
        self.zero = Cyclo(self, (Fraction(0),) * self.degree)
        self.one = self._powers[0]
        cls._instances[order] = self
        return self

    def __getnewargs__(self):
        return (self.order,)

    def _reduce_power(self, i: int) -> "Cyclo":
        coeffs = [0] * (i + 1)
        coeffs[i] = 1
        if i >= self.degree:
            _, rem = _poly_divmod_int(coeffs, list(self.minimal_polynomial))
            coeffs = rem
        coeffs = coeffs + [0] * (self.degree - len(coeffs))
        return Cyclo(self, tuple(Fraction(c) for c in coeffs[: self.degree]))

    def __repr__(self) -> str:
        return f"CyclotomicField({self.order})"

    def zeta_power(self, m: int) -> "Cyclo":
        """zeta**m; zeta_power(2) is the quantum parameter q."""
        return self._powers[m % self.order]

    @property
    def q(self) -> "Cyclo":
        return self.zeta_power(2)

    def __call__(self, value) -> "Cyclo":
        if isinstance(value, Cyclo):
            if value.field is not self:
                raise ValueError("scalar belongs to a different cyclotomic field")
            return value
        if isinstance(value, (int, Rational)):
            return Cyclo(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))
        if isinstance(value, str):
            return self(Fraction(value))
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def from_power_coefficients(self, coeffs) -> "Cyclo":
        """Sum of coeffs[i] * zeta**i for an arbitrary-length coefficient list."""
        out = self.zero
        for i, c in enumerate(coeffs):
            c = Fraction(c)
            if c:
                out = out + self.zeta_power(i).scale(c)
        return out

    def from_json(self, data) -> "Cyclo":
        """Inverse of :meth:`Cyclo.to_json`; also accepts a bare rational string or int."""
        if isinstance(data, (int, str)):
            return self(Fraction(data))
        return self.from_power_coefficients(Fraction(x) for x in data)


class Cyclo:
    """An element of Q(zeta) in canonical reduced form."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- coercion helpers -------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Cyclo):
            if other.field is not self.field:
                raise ValueError("mixing scalars from different cyclotomic fields")
            return other
        if isinstance(other, (int, Rational)):
            return self.field(other)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclo(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclo(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Cyclo":
        c = Fraction(c)
        return Cyclo(self.field, tuple(a * c for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        field = self.field
        deg = field.degree
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        out = prod[:deg]
        for i in range(deg, 2 * deg - 1):
            c = prod[i]
            if c:
                red = field._powers[i % field.order].coeffs
                for j in range(deg):
                    if red[j]:
                        out[j] += c * red[j]
        return Cyclo(field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        """Multiplicative inverse via the extended Euclidean algorithm over Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        # invariant: r_i = s_i * self (mod minimal polynomial)
        r0 = [Fraction(c) for c in self.field.minimal_polynomial]
        r1 = list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        _trim(r1)
        while len(r1) > 1 or r1[0] == 0:
            q, r = _fdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _fsub(s0, _fmul(q, s1))
            if len(r1) == 1 and r1[0] == 0:
                raise ZeroDivisionError("element is not invertible")
        c = r1[0]
        coeffs = [x / c for x in s1]
        return self.field.from_power_coefficients(coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparisons ------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = self.field(other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            if not any(self.coeffs[1:]):
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.field.order, self.coeffs))
        return self._hash

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "z" if i == 1 else f"z^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _fmul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _fsub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(x) for x in out])


def _fdivmod(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    _trim(num)
    if len(num) < len(den):
        return [Fraction(0)], num
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] / lead
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    rem = num[: len(den) - 1] or [Fraction(0)]
    return _trim(q), _trim(rem)


def zeta_power(field: CyclotomicField, m: int) -> Cyclo:
    return field.zeta_power(m)
