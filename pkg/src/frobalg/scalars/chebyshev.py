"""Chebyshev polynomials T_n (T_0 = 2, T_1 = x) and polynomials stored in the T-basis.

Univariate polynomials in the power basis are plain coefficient lists, lowest
degree first.  ``ChebPoly`` stores a multivariate polynomial directly in the
product basis prod_p T_{a(p)}(alpha_p), where products follow

    T_a * T_b = T_{a+b} + T_{|a-b|}      (valid for all a, b >= 0 since T_0 = 2).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct


@lru_cache(maxsize=None)
def chebyshev_t(n: int) -> tuple[int, ...]:
    """Integer coefficients of T_n, lowest degree first."""
    if n < 0:
        raise ValueError("Chebyshev index must be nonnegative")
    if n == 0:
        return (2,)
    if n == 1:
        return (0, 1)
    prev, cur = chebyshev_t(n - 2), chebyshev_t(n - 1)
    out = [0] * (n + 1)
    for i, c in enumerate(cur):
        out[i + 1] += c
    for i, c in enumerate(prev):
        out[i] -= c
    return tuple(out)


def poly_trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [0]


def poly_add(a, b) -> list:
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_scale(a, c) -> list:
    return poly_trim([c * x for x in a])


def poly_mul(a, b) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_compose(f, g) -> list:
    """f(g(x)) by Horner's rule."""
    out = [0]
    for c in reversed(list(f)):
        out = poly_add(poly_mul(out, g), [c])
    return out


def poly_degree(p) -> int:
    p = poly_trim(p)
    return -1 if len(p) == 1 and p[0] == 0 else len(p) - 1


def chebyshev_expand(f) -> dict[int, object]:
    """Coefficients c_k with f = sum_k c_k T_k (note 1 = T_0 / 2).

    Works for any coefficient type supporting field arithmetic with rationals.
    """
    rem = poly_trim(list(f))
    out: dict[int, object] = {}
    while True:
        d = poly_degree(rem)
        if d < 0:
            break
        c = rem[d]
        if d == 0:
            out[0] = c * Fraction(1, 2)
            break
        # T_d is monic for d >= 1
        out[d] = c
        rem = poly_add(rem, poly_scale(list(chebyshev_t(d)), -c))
        rem = poly_trim(rem[:d]) if len(rem) > d else rem
    return out


def chebyshev_collect(coeffs: dict[int, object]) -> list:
    """Power-basis polynomial sum_k coeffs[k] * T_k."""
    out = [0]
    for k, c in coeffs.items():
        out = poly_add(out, poly_scale(list(chebyshev_t(k)), c))
    return out


def chebyshev_trace_filter(f, n: int) -> list:
    """Module trace of f over C[T_n(x)]: keep the T_k-components with n | k."""
    kept = {k: c for k, c in chebyshev_expand(f).items() if k % n == 0}
    return chebyshev_collect(kept)


@lru_cache(maxsize=None)
def residue_split(m: int, n: int) -> tuple[tuple[int, tuple[tuple[int, Fraction], ...]], ...]:
    """Write T_m = sum_r g_r(T_n) * T_r with 0 <= r < n.

    Returns ((r, ((j, c), ...)), ...) where g_r = sum c * T_j and every j is a
    multiple of n, i.e. g_r lies in C[T_n(x)] written in the T-basis.  The
    scalar 1 is T_0 / 2.  Uses T_{jn} T_r = T_{jn+r} + T_{jn-r}.
    """
    j, r = divmod(m, n)
    acc: dict[int, dict[int, Fraction]] = {}

    def add(res, idx, c):
        slot = acc.setdefault(res, {})
        slot[idx] = slot.get(idx, 0) + c

    if r == 0:
        add(0, m, Fraction(1, 2))
    elif j == 0:
        add(r, 0, Fraction(1, 2))
    else:
        add(r, j * n, Fraction(1))
        for res, terms in residue_split(j * n - r, n):
            for idx, c in terms:
                add(res, idx, -c)
    return tuple(
        (res, tuple(sorted((i, c) for i, c in terms.items() if c)))
        for res, terms in sorted(acc.items())
        if any(terms.values())
    )


class ChebPoly:
    """Polynomial in commuting variables alpha_0..alpha_{m-1} in the T-product basis.

    ``terms`` maps a multi-index tuple a to a nonzero scalar, meaning
    sum coef(a) * prod_p T_{a[p]}(alpha_p).  Scalars are cyclotomic elements.
    """

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        self.terms = {}
        if terms:
            for a, c in terms.items():
                c = field(c)
                if c:
                    a = tuple(a)
                    if len(a) != nvars or any(x < 0 for x in a):
                        raise ValueError(f"bad Chebyshev multi-index {a}")
                    self.terms[a] = c

    @classmethod
    def _raw(cls, field, nvars, terms):
        obj = cls.__new__(cls)
        obj.field, obj.nvars, obj.terms = field, nvars, terms
        return obj

    @classmethod
    def constant(cls, field, nvars, c=1):
        c = field(c)
        if not c:
            return cls._raw(field, nvars, {})
        # 1 = prod T_0 / 2^nvars
        return cls._raw(field, nvars, {(0,) * nvars: c * Fraction(1, 2**nvars)})

    @classmethod
    def variable(cls, field, nvars, p):
        a = [0] * nvars
        a[p] = 1
        # remaining variables sit at T_0 = 2
        return cls._raw(field, nvars, {tuple(a): field.one * Fraction(1, 2 ** (nvars - 1))})

    @classmethod
    def from_power_basis(cls, field, nvars, poly: dict) -> "ChebPoly":
        """Import sum c * prod alpha_p^e(p) given as {exponent tuple: scalar}."""
        out = cls._raw(field, nvars, {})
        for e, c in poly.items():
            term = cls.constant(field, nvars, c)
            for p, k in enumerate(e):
                if k:
                    coeffs = chebyshev_expand([0] * k + [1])
                    factor = {}
                    for deg, cc in coeffs.items():
                        idx = [0] * nvars
                        idx[p] = deg
                        # other variables contribute T_0 = 2, compensate
                        factor[tuple(idx)] = field(cc) * Fraction(1, 2 ** (nvars - 1))
                    term = term * cls._raw(field, nvars, factor)
            out = out + term
        return out

    def to_power_basis(self) -> dict:
        """Inverse of :meth:`from_power_basis`."""
        out: dict[tuple, object] = {}
        for a, c in self.terms.items():
            polys = [list(chebyshev_t(k)) for k in a]
            for e in iproduct(*(range(len(p)) for p in polys)):
                coef = 1
                for p, k in zip(polys, e):
                    coef *= p[k]
                if coef:
                    out[e] = out.get(e, self.field.zero) + c * coef
        return {e: c for e, c in out.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ChebPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "ChebPoly") -> "ChebPoly":
        out = dict(self.terms)
        for a, c in other.terms.items():
            s = out.get(a)
            s = c if s is None else s + c
            if s:
                out[a] = s
            else:
                out.pop(a, None)
        return ChebPoly._raw(self.field, self.nvars, out)

    def __neg__(self):
        return ChebPoly._raw(self.field, self.nvars, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ChebPoly":
        c = self.field(c)
        if not c:
            return ChebPoly._raw(self.field, self.nvars, {})
        return ChebPoly._raw(self.field, self.nvars, {a: x * c for a, x in self.terms.items()})

    def __mul__(self, other: "ChebPoly") -> "ChebPoly":
        out: dict = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                cd = c * d
                for idx, mult in cheb_index_product(a, b):
                    v = cd if mult == 1 else cd * mult
                    s = out.get(idx)
                    out[idx] = v if s is None else s + v
        return ChebPoly._raw(self.field, self.nvars, {a: c for a, c in out.items() if c})

    def map_indices(self, fn) -> "ChebPoly":
        out: dict = {}
        for a, c in self.terms.items():
            b = fn(a)
            out[b] = out.get(b, self.field.zero) + c
        return ChebPoly._raw(self.field, self.nvars, {a: c for a, c in out.items() if c})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for a, c in sorted(self.terms.items()):
            mono = "*".join(f"T{k}(alpha{p})" for p, k in enumerate(a) if k) or "T0^*"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)


@lru_cache(maxsize=65536)
def cheb_index_product(a: tuple, b: tuple) -> tuple[tuple[tuple, int], ...]:
    """Expand prod_p T_{a_p} T_{b_p} into T-product monomials with integer multiplicities."""
    acc: dict[tuple, int] = {(): 1}
    for x, y in zip(a, b):
        opts = (x + y, abs(x - y))
        nxt: dict[tuple, int] = {}
        for idx, m in acc.items():
            for o in opts:
                key = idx + (o,)
                nxt[key] = nxt.get(key, 0) + m
        acc = nxt
    return tuple(acc.items())
