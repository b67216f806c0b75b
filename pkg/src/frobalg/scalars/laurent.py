"""Commutative Laurent polynomials over Q(zeta) and fractions of them.

Fractions are deliberately left unreduced (no multivariate gcd); two fractions
are equal iff their cross products agree.
"""

from __future__ import annotations

from fractions import Fraction


class LaurentPoly:
    """Finite sum of c * y^e with e in Z^nvars, c in Q(zeta)."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = field(c)
                if c:
                    e = tuple(e)
                    if len(e) != nvars:
                        raise ValueError("exponent length does not match number of variables")
                    self.terms[e] = self.terms.get(e, field.zero) + c
            self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def _raw(cls, field, nvars, terms):
        obj = cls.__new__(cls)
        obj.field, obj.nvars, obj.terms = field, nvars, terms
        return obj

    @classmethod
    def constant(cls, field, nvars, c=1):
        c = field(c)
        return cls._raw(field, nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def monomial(cls, field, e, c=1):
        c = field(c)
        return cls._raw(field, len(e), {tuple(e): c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.field, self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly.constant(self.field, self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.field, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.field, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for e, c in self.terms.items():
            for f, d in other.terms.items():
                g = tuple(x + y for x, y in zip(e, f))
                v = c * d
                s = out.get(g)
                out[g] = v if s is None else s + v
        return LaurentPoly._raw(self.field, self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def leading(self):
        """(exponent, coefficient) of the lexicographically largest term."""
        e = max(self.terms)
        return e, self.terms[e]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"y{i}^{k}" for i, k in enumerate(e) if k) or "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)


class CommutativeFraction:
    """num / den with den != 0; the denominator's leading coefficient is normalized to 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.constant(num.field, num.nvars, 1)
        if den.is_zero():
            raise ZeroDivisionError("fraction with zero denominator")
        _, lead = den.leading()
        if lead != 1:
            inv = lead.inverse()
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    def _lift(self, other):
        if isinstance(other, CommutativeFraction):
            return other
        if isinstance(other, LaurentPoly):
            return CommutativeFraction(other)
        return CommutativeFraction(LaurentPoly.constant(self.num.field, self.num.nvars, other))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._lift(other)
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __add__(self, other):
        other = self._lift(other)
        if self.den == other.den:
            return CommutativeFraction(self.num + other.num, self.den)
        return CommutativeFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return CommutativeFraction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        return CommutativeFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero fraction")
        return CommutativeFraction(self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __repr__(self):
        return f"({self.num}) / ({self.den})"
