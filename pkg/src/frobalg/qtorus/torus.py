"""Quantum torus C[alpha_p]<x_i^{+-1}> / (x_a x_b = q^{P(a,b)} x_b x_a) at q = zeta^2.

A ``TorusElement`` is a flat map (a, k) -> scalar meaning
sum c * alpha^a x^k, where alpha^a = prod_p T_{a_p}(alpha_p) is a Chebyshev
product (the alpha_p are central) and x^k = x_1^{k_1} ... x_n^{k_n} is the
ordered monomial.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from ..scalars import ChebPoly, CyclotomicField, residue_split
from ..scalars.chebyshev import cheb_index_product
from .forms import SkewForm
from .lattice import Lattice, standard_lattice, validate_central


class QuantumTorus:
    def __init__(self, form: SkewForm, N: int, alpha_names=()):
        self.form = form
        self.field = CyclotomicField(N)
        self.N = N
        self.alpha_names = tuple(alpha_names)

    @property
    def n(self) -> int:
        return self.form.n

    @property
    def nalpha(self) -> int:
        return len(self.alpha_names)

    def __eq__(self, other):
        return (
            isinstance(other, QuantumTorus)
            and self.form == other.form
            and self.N == other.N
            and self.alpha_names == other.alpha_names
        )

    def __hash__(self):
        return hash((self.form, self.N, self.alpha_names))

    def __repr__(self):
        return f"QuantumTorus(n={self.n}, N={self.N}, alphas={self.nalpha})"

    # -- constructors -----------------------------------------------------
    def element(self, terms=None) -> "TorusElement":
        out = {}
        if terms:
            for (a, k), c in terms.items():
                a, k = tuple(a), tuple(k)
                if len(a) != self.nalpha or len(k) != self.n:
                    raise ValueError("monomial shape does not match the torus")
                if any(x < 0 for x in a):
                    raise ValueError("Chebyshev indices must be nonnegative")
                c = self.field(c)
                s = out.get((a, k))
                c = c if s is None else s + c
                if c:
                    out[(a, k)] = c
                else:
                    out.pop((a, k), None)
        return TorusElement(self, out)

    def monomial(self, k, a=None, coef=1) -> "TorusElement":
        a = tuple(a) if a is not None else (0,) * self.nalpha
        return self.element({(a, tuple(k)): coef})

    def gen(self, i: int, power: int = 1) -> "TorusElement":
        k = [0] * self.n
        k[i] = power
        return self.monomial(k)

    def alpha(self, p: int, index: int = 1) -> "TorusElement":
        """T_index(alpha_p)."""
        a = [0] * self.nalpha
        a[p] = index
        # the other alpha variables sit at T_0 = 2
        return self.monomial((0,) * self.n, a, Fraction(1, 2 ** (self.nalpha - 1)) if self.nalpha else 1)

    def scalar(self, c) -> "TorusElement":
        if self.nalpha:
            return self.monomial((0,) * self.n, None, self.field(c) * Fraction(1, 2**self.nalpha))
        return self.monomial((0,) * self.n, None, c)

    @property
    def one(self) -> "TorusElement":
        return self.scalar(1)

    @property
    def zero(self) -> "TorusElement":
        return TorusElement(self, {})

    def from_cheb(self, coef: ChebPoly, k=None) -> "TorusElement":
        k = tuple(k) if k is not None else (0,) * self.n
        return TorusElement(self, {(a, k): c for a, c in coef.terms.items()})

    def from_json(self, data) -> "TorusElement":
        """Parse [{"alpha": {p: int}, "k": [int], "coef": scalar}, ...]."""
        terms = {}
        for entry in data:
            a = [0] * self.nalpha
            for p, idx in (entry.get("alpha") or {}).items():
                pos = self.alpha_names.index(p) if p in self.alpha_names else int(p)
                a[pos] = int(idx)
            k = tuple(int(x) for x in entry["k"])
            key = (tuple(a), k)
            terms[key] = terms.get(key, self.field.zero) + self.field.from_json(entry.get("coef", "1"))
        return self.element(terms)

    # -- structural maps ---------------------------------------------------
    def weyl_monomial(self, k) -> "TorusElement":
        """[x^k] = zeta^{-sum_{j<l} P(j,l) k_j k_l} x^k."""
        P = self.form.P
        n = self.n
        e = -sum(P[j][l] * k[j] * k[l] for j in range(n) for l in range(j + 1, n))
        return self.monomial(k, coef=self.field.zeta_power(e))

    def weyl_word(self, word) -> "TorusElement":
        """Evaluate the Weyl-ordering formula on a word of generator powers [(i, e), ...].

        The factors x_i^e pairwise q-commute with C = e * e' * P(i, i'), and the
        result is zeta^{-sum_{j<l} C_jl} times the plain product, which does not
        depend on the order of the factors.
        """
        P = self.form.P
        total = self.one
        corr = 0
        for pos, (i, e) in enumerate(word):
            total = total * self.gen(i, e)
            for i2, e2 in word[pos + 1 :]:
                corr += P[i][i2] * e * e2
        return total.scale(self.field.zeta_power(-corr))

    def frobenius_lift(self, classical: "TorusElement") -> "TorusElement":
        """alpha_p -> T_N(alpha_p), x_e -> x_e^N on a classical (commutative) element.

        ``classical`` carries the same (a, k) data read commutatively; in the
        T-basis T_m(T_N(y)) = T_{mN}(y), so every index is scaled by N.
        """
        N = self.N
        if classical.torus.n != self.n or classical.torus.nalpha != self.nalpha:
            raise ValueError("classical element has the wrong shape")
        return TorusElement(
            self,
            {
                (tuple(N * x for x in a), tuple(N * x for x in k)): self.field(c)
                for (a, k), c in classical.terms.items()
            },
        )

    def classical(self) -> "QuantumTorus":
        """Same generators with the zero form (q = 1 shape)."""
        zero = SkewForm(tuple(tuple(0 for _ in range(self.n)) for _ in range(self.n)), self.form.names)
        return QuantumTorus(zero, self.N, self.alpha_names)

    def residue_decompose(self, t: "TorusElement") -> dict:
        """t = sum coef[(aRes, kRes)] * alpha^{aRes} x^{kRes} with coef in the Frobenius image.

        Exponents split as k = N u + r with r in [0, N); x^{Nu} x^r = x^k exactly
        because the phase is a multiple of 2N.  Chebyshev indices split through
        T_{jN} T_r = T_{jN+r} + T_{jN-r}.
        """
        N = self.N
        out: dict = {}
        for (a, k), c in t.terms.items():
            kres = tuple(x % N for x in k)
            base = tuple(x - r for x, r in zip(k, kres))
            for ares, coef_idx in _alpha_split(a, N):
                slot = out.setdefault((ares, kres), {})
                for idx, m in coef_idx:
                    key = (idx, base)
                    v = c * m
                    s = slot.get(key)
                    slot[key] = v if s is None else s + v
        return {
            key: TorusElement(self, {m: c for m, c in terms.items() if c})
            for key, terms in out.items()
            if any(terms.values())
        }

    def reassemble(self, parts: dict) -> "TorusElement":
        out = self.zero
        for (ares, kres), coef in parts.items():
            basis = TorusElement(self, {(tuple(ares), tuple(kres)): self.field.one})
            out = out + coef * basis
        return out

    def trace_over_frobenius(self, t: "TorusElement") -> "TorusElement":
        """Projection onto the (0, 0) residue component; linear over the Frobenius image.

        The residue-zero basis element is prod_p T_0(alpha_p) = 2^{#alpha}, so the
        component is its coefficient times that element, not the bare coefficient.
        """
        zero_key = ((0,) * self.nalpha, (0,) * self.n)
        parts = self.residue_decompose(t)
        if zero_key not in parts:
            return self.zero
        return self.reassemble({zero_key: parts[zero_key]})

    def trace_over_center(self, t: "TorusElement", lattice: Lattice) -> "TorusElement":
        """Keep the monomials whose x-exponent lies in ``lattice``; alpha factors pass through."""
        validate_central(lattice, self.form, self.N)
        return TorusElement(self, {(a, k): c for (a, k), c in t.terms.items() if k in lattice})

    def frobenius_lattice(self) -> Lattice:
        return standard_lattice(self.n, self.N)

    def is_central(self, t: "TorusElement") -> bool:
        return all((g * t - t * g).is_zero() for g in map(self.gen, range(self.n)))


def _alpha_split(a: tuple, N: int):
    """Residue split of prod_p T_{a_p} as [(aRes, [(index tuple, multiplier), ...]), ...]."""
    per_var = [residue_split(m, N) for m in a]
    out = []
    for choice in iproduct(*per_var):
        ares = tuple(r for r, _ in choice)
        coefs = [((), Fraction(1))]
        for _, terms in choice:
            coefs = [(idx + (j,), m * c) for idx, m in coefs for j, c in terms]
        out.append((ares, coefs))
    return out


class TorusElement:
    __slots__ = ("torus", "terms")

    def __init__(self, torus: QuantumTorus, terms: dict):
        self.torus = torus
        self.terms = terms

    # -- ring operations ----------------------------------------------------
    def _check(self, other):
        if not isinstance(other, TorusElement):
            if isinstance(other, int) or hasattr(other, "field"):
                return self.torus.scalar(other)
            return NotImplemented
        if other.torus is not self.torus and other.torus != self.torus:
            raise ValueError("elements of different tori")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return TorusElement(self.torus, out)

    __radd__ = __add__

    def __neg__(self):
        return TorusElement(self.torus, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TorusElement":
        c = self.torus.field(c)
        if not c:
            return self.torus.zero
        return TorusElement(self.torus, {m: x * c for m, x in self.terms.items()})

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        torus = self.torus
        zp = torus.field.zeta_power
        phase = torus.form.phase
        out: dict = {}
        for (a, k), c in self.terms.items():
            for (b, l), d in other.terms.items():
                cd = c * d
                ph = phase(k, l)
                if ph % torus.N:
                    cd = cd * zp(ph)
                kl = tuple(x + y for x, y in zip(k, l))
                if a:
                    for idx, mult in cheb_index_product(a, b):
                        v = cd if mult == 1 else cd * mult
                        key = (idx, kl)
                        s = out.get(key)
                        out[key] = v if s is None else s + v
                else:
                    key = ((), kl)
                    s = out.get(key)
                    out[key] = cd if s is None else s + cd
        return TorusElement(torus, {m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other * self

    def __pow__(self, e: int):
        if e < 0:
            if len(self.terms) != 1 or self.torus.nalpha:
                raise ValueError("only alpha-free monomials are inverted inside the torus")
            ((a, k), c), = self.terms.items()
            neg = tuple(-x for x in k)
            # x^k x^{-k} = zeta^{phase(k, -k)}
            ph = self.torus.form.phase(k, neg)
            inv = self.torus.monomial(neg, a, c.inverse() * self.torus.field.zeta_power(-ph))
            return inv ** (-e)
        out = self.torus.one
        for _ in range(e):
            out = out * self
        return out

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.torus.scalar(other)
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def support(self) -> set:
        return set(self.terms)

    def x_exponents(self) -> set:
        return {k for _, k in self.terms}

    def alpha_coefficient(self, k) -> ChebPoly:
        """The ChebPoly multiplying x^k."""
        k = tuple(k)
        return ChebPoly._raw(
            self.torus.field,
            self.torus.nalpha,
            {a: c for (a, kk), c in self.terms.items() if kk == k},
        )

    def to_json(self) -> list[dict]:
        names = self.torus.alpha_names
        return [
            {
                "alpha": {names[p]: x for p, x in enumerate(a) if x},
                "k": list(k),
                "coef": c.to_json(),
            }
            for (a, k), c in sorted(self.terms.items())
        ]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, k), c in sorted(self.terms.items()):
            alpha = "*".join(f"T{x}(a{p})" for p, x in enumerate(a) if x)
            mono = "*".join(f"{self.torus.form.names[i]}^{e}" for i, e in enumerate(k) if e)
            body = "*".join(s for s in (alpha, mono) if s) or "1"
            parts.append(f"({c})*{body}")
        return " + ".join(parts)
