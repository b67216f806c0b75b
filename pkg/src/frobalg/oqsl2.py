"""O_q(SL_2) in PBW normal form at q = zeta^2, zeta a primitive N-th root of unity.

Relations: ca = q^2 ac, db = q^2 bd, ba = q^2 ab, dc = q^2 cd, bc = cb,
ad - q^{-2} bc = 1, da - q^2 cb = 1.

Normal-form monomials are a^i b^j c^k (i >= 0) and b^j c^k d^l (l >= 1); a key
(s, j, k) encodes a^s b^j c^k when s >= 0 and b^j c^k d^{-s} when s < 0.
All q-power bookkeeping for moving a or d past b, c goes through the
``SkewForm.phase`` of the two local tori below.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

from .qtorus import QuantumTorus, SkewForm, TorusElement, central_lattice
from .qtorus.forms import FixtureInvalid
from .scalars import CyclotomicField
from .trace_engine import FiniteDimAlgebra, tensor_product

# generators (a, b, c): ab = q^{-2} ba, ac = q^{-2} ca, bc = cb
A_FORM = SkewForm(((0, -2, -2), (2, 0, 0), (2, 0, 0)), ("a", "b", "c"))
# generators (d, b, c): db = q^2 bd, dc = q^2 cd, bc = cb
D_FORM = SkewForm(((0, 2, 2), (-2, 0, 0), (-2, 0, 0)), ("d", "b", "c"))


class InsideW(ValueError):
    """Specialization point with rho(a) = rho(d) = 0."""


def _form_for(s: int) -> SkewForm:
    return A_FORM if s > 0 else D_FORM


def _move_left(s: int, j: int, k: int) -> int:
    """zeta-exponent e with b^j c^k Y = zeta^e Y b^j c^k, Y = a^s (s > 0) or d^{-s} (s < 0)."""
    if s == 0:
        return 0
    return _form_for(s).phase((0, j, k), (abs(s), 0, 0))


def _d_to_right(l: int, j: int, k: int) -> int:
    """zeta-exponent e with d^l b^j c^k = zeta^e b^j c^k d^l."""
    return -D_FORM.phase((0, j, k), (l, 0, 0))


@lru_cache(maxsize=None)
def _ad_expansion(first: str, s: int, l: int, N: int) -> tuple:
    """Y^s Z^l for {Y, Z} = {a, d} as (signed remainder, ((t, zeta exps), ...)).

    a^s d^l = a^{s-1} (1 + q^{-2} bc) d^{l-1}, and bc d^m = q^{-4m} d^m bc, so
    a^s d^l = a^{s-m} d^{l-m} prod_{i=l-m}^{l-1} (1 + q^{-2-4i} bc) with bc on the
    right; symmetrically d^l a^s uses (1 + q^{2+4i} bc).  Coefficients are
    returned as lists of zeta exponents (a polynomial in bc over Z[zeta]).
    """
    m = min(s, l)
    # polynomial in bc: dict t -> list of zeta exponents (summed)
    poly: dict[int, dict[int, int]] = {0: {0: 1}}
    top = l if first == "a" else s
    for i in range(top - m, top):
        e = (-4 - 8 * i) if first == "a" else (4 + 8 * i)
        nxt: dict[int, dict[int, int]] = {}
        for t, coeffs in poly.items():
            for z, c in coeffs.items():
                slot = nxt.setdefault(t, {})
                slot[z] = slot.get(z, 0) + c
                slot = nxt.setdefault(t + 1, {})
                key = (z + e) % N
                slot[key] = slot.get(key, 0) + c
        poly = nxt
    if first == "a":
        rem = s - l if s >= l else -(l - s)
    else:
        rem = -(l - s) if l >= s else s - l
    return rem, tuple((t, tuple(sorted(c.items()))) for t, c in sorted(poly.items()))


class OqSL2:
    """The algebra O_q(SL_2) at a primitive N-th root zeta = q^{1/2}."""

    _cache: dict[int, "OqSL2"] = {}

    def __new__(cls, N: int):
        if N in cls._cache:
            return cls._cache[N]
        self = super().__new__(cls)
        self.N = N
        self.field = CyclotomicField(N)
        self.dbc = QuantumTorus(D_FORM, N)
        self.abc = QuantumTorus(A_FORM, N)
        self._a_in_dbc = None
        self._d_in_abc = None
        cls._cache[N] = self
        return self

    def __repr__(self):
        return f"OqSL2(N={self.N})"

    # -- elements -------------------------------------------------------------
    def element(self, terms=None) -> "OqElement":
        out = {}
        for key, c in (terms or {}).items():
            c = self.field(c)
            if c:
                out[tuple(key)] = out.get(tuple(key), self.field.zero) + c
        return OqElement(self, {k: c for k, c in out.items() if c})

    @property
    def one(self) -> "OqElement":
        return self.element({(0, 0, 0): 1})

    def gen(self, letter: str, power: int = 1) -> "OqElement":
        if power < 0:
            raise ValueError("O_q(SL_2) words use nonnegative exponents")
        key = {"a": (power, 0, 0), "b": (0, power, 0), "c": (0, 0, power), "d": (-power, 0, 0)}[letter]
        return self.element({key: 1})

    def _mul_monomials(self, m1, m2) -> dict:
        """Product of two normal-form monomials as {key: Cyclo}."""
        N = self.N
        zp = self.field.zeta_power
        s1, j1, k1 = m1
        s2, j2, k2 = m2
        # pass to the left form Y b^j c^k
        ph = 0
        if s1 < 0:
            ph -= _d_to_right(-s1, j1, k1)
        if s2 < 0:
            ph -= _d_to_right(-s2, j2, k2)
        # Y1 b^j1 c^k1 Y2 b^j2 c^k2 -> Y1 Y2 b^{j1+j2} c^{k1+k2}
        ph += _move_left(s2, j1, k1)
        J, K = j1 + j2, k1 + k2
        if s1 == 0 or s2 == 0 or (s1 > 0) == (s2 > 0):
            rem, poly = s1 + s2, ((0, ((0, 1),)),)
        elif s1 > 0:
            rem, poly = _ad_expansion("a", s1, -s2, N)
        else:
            rem, poly = _ad_expansion("d", s2, -s1, N)
        out: dict = {}
        for t, coeffs in poly:
            coef = self.field.zero
            for z, mult in coeffs:
                coef = coef + zp(z + ph).scale(mult)
            if not coef:
                continue
            x, y = J + t, K + t
            if rem < 0:
                coef = coef * zp(_d_to_right(-rem, x, y))
            out[(rem, x, y)] = coef
        return out

    def normal_form(self, word) -> "OqElement":
        """PBW normal form of a word: a string like "a d b^2 c" or [(letter, exp), ...]."""
        out = self.one
        for letter, e in parse_word(word):
            out = out * self.gen(letter, e)
        return out

    # -- Frobenius and center ---------------------------------------------------
    def frobenius_generators(self) -> dict[str, "OqElement"]:
        N = self.N
        return {L: self.gen(l, N) for L, l in zip("ABCD", "abcd")}

    def verify_frobenius_hom(self) -> dict:
        gens = {l: self.gen(l) for l in "abcd"}
        F = self.frobenius_generators()
        names = list(F)
        pairwise = all((F[x] * F[y] - F[y] * F[x]).is_zero() for i, x in enumerate(names) for y in names[i + 1 :])
        central = all((F[x] * g - g * F[x]).is_zero() for x in names for g in gens.values())
        det = F["A"] * F["D"] - F["B"] * F["C"]
        return {
            "N": self.N,
            "pairwise_commute": pairwise,
            "central": central,
            "det_is_one": det == self.one,
            "AD_minus_BC": det.to_json(),
        }

    def center_generators(self) -> list["OqElement"]:
        """x_0 = 1, x_i = b^i c^{N-i}."""
        N = self.N
        return [self.one] + [self.element({(0, i, N - i): 1}) for i in range(1, N)]

    def center_generator_check(self) -> dict:
        gens = [self.gen(l) for l in "abcd"]
        xs = self.center_generators()
        central = [all((x * g - g * x).is_zero() for g in gens) for x in xs]
        classes = []
        for x in xs:
            parts = self.dbc.residue_decompose(self.eliminate_a(x))
            classes.append(tuple(sorted(parts)))
        independent = all(len(c) == 1 for c in classes) and len(set(classes)) == len(classes)
        return {"N": self.N, "central": central, "independent": independent}

    # -- localization -------------------------------------------------------------
    def a_in_dbc(self) -> TorusElement:
        """a = (1 + q^{-2} bc) d^{-1} in the (d, b, c) torus."""
        if self._a_in_dbc is None:
            T = self.dbc
            one_plus = T.one + T.monomial((0, 1, 1), coef=self.field.zeta_power(-4))
            self._a_in_dbc = one_plus * T.monomial((-1, 0, 0))
        return self._a_in_dbc

    def d_in_abc(self) -> TorusElement:
        """d = a^{-1} (1 + q^{-2} bc) in the (a, b, c) torus."""
        if self._d_in_abc is None:
            T = self.abc
            one_plus = T.one + T.monomial((0, 1, 1), coef=self.field.zeta_power(-4))
            self._d_in_abc = T.monomial((-1, 0, 0)) * one_plus
        return self._d_in_abc

    def eliminate_a(self, x: "OqElement") -> TorusElement:
        """Image of x in the (d, b, c) Laurent torus of O_q[d^{-1}]."""
        T = self.dbc
        a = self.a_in_dbc()
        powers = [T.one]
        out = T.zero
        for (s, j, k), c in x.terms.items():
            if s >= 0:
                while len(powers) <= s:
                    powers.append(powers[-1] * a)
                term = powers[s] * T.monomial((0, j, k))
            else:
                term = T.monomial((0, j, k)) * T.monomial((-s, 0, 0))
            out = out + term.scale(c)
        return out

    def eliminate_d(self, x: "OqElement") -> TorusElement:
        """Image of x in the (a, b, c) Laurent torus of O_q[a^{-1}]."""
        T = self.abc
        d = self.d_in_abc()
        powers = [T.one]
        out = T.zero
        for (s, j, k), c in x.terms.items():
            if s >= 0:
                term = T.monomial((s, j, k))
            else:
                while len(powers) <= -s:
                    powers.append(powers[-1] * d)
                term = T.monomial((0, j, k)) * powers[-s]
            out = out + term.scale(c)
        return out

    def trace_over_frobenius_fraction(self, x: "OqElement") -> TorusElement:
        return self.dbc.trace_over_frobenius(self.eliminate_a(x))

    def center_lattice(self):
        return central_lattice(D_FORM, self.N)

    def trace_over_center_fraction(self, x: "OqElement") -> TorusElement:
        return self.dbc.trace_over_center(self.eliminate_a(x), self.center_lattice())

    # -- specialization ----------------------------------------------------------------
    def specialize(self, rho: "SLPoint") -> FiniteDimAlgebra:
        """O_q tensored over O(SL_2) with C at rho, on the N^3 PBW basis."""
        if rho.field is not self.field:
            raise ValueError("specialization point lives in a different field")
        k11, k12, k21, k22 = rho.entries
        N = self.N
        if k11:
            kind, elim, Y = "a", self.eliminate_d, k11
        elif k22:
            kind, elim, Y = "d", self.eliminate_a, k22
        else:
            raise InsideW("rho(a) = rho(d) = 0; no PBW basis survives")
        keys = list(iproduct(range(N), repeat=3))
        index = {key: i for i, key in enumerate(keys)}
        values = (Y, k12, k21)
        pow_cache: dict = {}

        def central_value(u):
            if u not in pow_cache:
                v = self.field.one
                for base, e in zip(values, u):
                    if e:
                        v = v * base**e
                pow_cache[u] = v
            return pow_cache[u]

        def reduce(t: TorusElement) -> dict:
            vec: dict = {}
            for (_, k), c in t.terms.items():
                r = tuple(x % N for x in k)
                u = tuple(x // N for x in k)
                # x^{N u} x^r = x^k exactly; x^{N u} is central with value prod rho^u
                v = c * central_value(u)
                if v:
                    i = index[r]
                    vec[i] = vec.get(i, self.field.zero) + v
            return {i: c for i, c in vec.items() if c}

        elems = [self.normal_form([(kind, s1), ("b", s2), ("c", s3)]) for s1, s2, s3 in keys]

        def mul_basis(i, j):
            return reduce(elim(elems[i] * elems[j]))

        labels = [f"{kind}^{s1} b^{s2} c^{s3}" for s1, s2, s3 in keys]
        alg = FiniteDimAlgebra(self.field, labels, mul_basis=mul_basis, unit={index[(0, 0, 0)]: self.field.one})
        alg.meta = {"kind": kind, "rho": rho.to_json(), "N": N}
        alg.project = lambda x: reduce(elim(x))
        return alg

    def specialize_quotient(self, rho: "SLPoint") -> FiniteDimAlgebra:
        """O_q / (A - k11, B - k12, C - k21, D - k22) by linear algebra, valid at every rho.

        Reducing N-th powers to their values is a linear map pi whose kernel lies
        in the ideal; the quotient is span(reduced monomials) modulo the
        images pi((X - rho X) m) for reduced monomials m and X in {A, B, C, D}.
        This does not need rho(a) or rho(d) to be invertible, so it also covers W.
        """
        N, field = self.N, self.field
        k11, k12, k21, k22 = rho.entries
        span = sorted({(s, j, k) for s in range(-(N - 1), N) for j in range(N) for k in range(N)})
        col = {m: i for i, m in enumerate(span)}

        def pi(x: OqElement) -> dict:
            vec: dict = {}
            for (s, j, k), c in x.terms.items():
                y, ye = (k11, s) if s >= 0 else (k22, -s)
                v = c * (y ** (ye // N) if ye >= N else field.one)
                if j >= N:
                    v = v * k12 ** (j // N)
                if k >= N:
                    v = v * k21 ** (k // N)
                if not v:
                    continue
                r = ye % N
                key = (r if s >= 0 else -r, j % N, k % N)
                i = col[key]
                vec[i] = vec.get(i, field.zero) + v
            return {i: c for i, c in vec.items() if c}

        F = self.frobenius_generators()
        values = {"A": k11, "B": k12, "C": k21, "D": k22}
        echelon: dict[int, dict] = {}  # pivot column -> row with 1 at pivot

        def reduce_vec(vec: dict) -> dict:
            vec = dict(vec)
            for p in sorted(echelon):
                c = vec.get(p)
                if c:
                    for i, x in echelon[p].items():
                        vec[i] = vec.get(i, field.zero) - c * x
                    vec = {i: x for i, x in vec.items() if x}
            return vec

        for m in span:
            mono = self.element({m: 1})
            for X, val in values.items():
                vec = reduce_vec(pi(F[X] * mono - mono.scale(val)))
                if not vec:
                    continue
                p = min(vec)
                inv = vec[p].inverse()
                row = {i: x * inv for i, x in vec.items()}
                for q, other in echelon.items():
                    c = other.get(p)
                    if c:
                        for i, x in row.items():
                            other[i] = other.get(i, field.zero) - c * x
                        echelon[q] = {i: x for i, x in other.items() if x}
                echelon[p] = row
        free = [i for i in range(len(span)) if i not in echelon]
        index = {i: n for n, i in enumerate(free)}
        elems = [self.element({span[i]: 1}) for i in free]

        def coords(vec: dict) -> dict:
            return {index[i]: c for i, c in reduce_vec(vec).items()}

        def mul_basis(i, j):
            return coords(pi(elems[i] * elems[j]))

        def label(m):
            s, j, k = m
            return f"a^{max(s, 0)} b^{j} c^{k} d^{max(-s, 0)}"

        unit = coords(pi(self.one))
        alg = FiniteDimAlgebra(field, [label(span[i]) for i in free], mul_basis=mul_basis, unit=unit)
        alg.meta = {"kind": "quotient", "rho": rho.to_json(), "N": N}
        alg.project = lambda x: coords(pi(x))
        return alg

    def tensor_specializations(self, points) -> FiniteDimAlgebra:
        algs = [self.specialize(p) for p in points]
        out = algs[0]
        for alg in algs[1:]:
            out = tensor_product(out, alg)
        return out


class OqElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: OqSL2, terms: dict):
        self.algebra = algebra
        self.terms = terms

    def _lift(self, other):
        if isinstance(other, OqElement):
            if other.algebra is not self.algebra:
                raise ValueError("elements of different algebras")
            return other
        return self.algebra.one.scale(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key)
            s = c if s is None else s + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return OqElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return OqElement(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "OqElement":
        c = self.algebra.field(c)
        if not c:
            return OqElement(self.algebra, {})
        return OqElement(self.algebra, {k: x * c for k, x in self.terms.items()})

    def __mul__(self, other):
        other = self._lift(other)
        alg = self.algebra
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2
                for key, c in alg._mul_monomials(m1, m2).items():
                    v = c12 * c
                    s = out.get(key)
                    out[key] = v if s is None else s + v
        return OqElement(alg, {k: c for k, c in out.items() if c})

    def __rmul__(self, other):
        return self._lift(other) * self

    def __pow__(self, e: int):
        out = self.algebra.one
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.algebra.one.scale(other)
        if not isinstance(other, OqElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_json(self) -> list[dict]:
        out = []
        for (s, j, k), c in sorted(self.terms.items()):
            out.append({"a": max(s, 0), "b": j, "c": k, "d": max(-s, 0), "coef": c.to_json()})
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (s, j, k), c in sorted(self.terms.items()):
            letters = []
            if s > 0:
                letters.append(f"a^{s}")
            if j:
                letters.append(f"b^{j}")
            if k:
                letters.append(f"c^{k}")
            if s < 0:
                letters.append(f"d^{-s}")
            parts.append(f"({c})*{'*'.join(letters) or '1'}")
        return " + ".join(parts)


_WORD_RE = re.compile(r"([abcd])(?:\^(\d+))?")


def parse_word(word) -> list[tuple[str, int]]:
    """'a d b^2' -> [('a', 1), ('d', 1), ('b', 2)]; lists of pairs pass through."""
    if isinstance(word, str):
        stripped = word.replace("*", " ").replace(" ", "")
        pos, out = 0, []
        while pos < len(stripped):
            m = _WORD_RE.match(stripped, pos)
            if not m:
                raise ValueError(f"cannot parse word {word!r} at position {pos}")
            out.append((m.group(1), int(m.group(2) or 1)))
            pos = m.end()
        return out
    return [(str(l), int(e)) for l, e in word]


@dataclass(frozen=True)
class SLPoint:
    """A point of SL_2 over Q(zeta): rho(a), rho(b), rho(c), rho(d)."""

    field: CyclotomicField
    entries: tuple

    def __post_init__(self):
        k11, k12, k21, k22 = self.entries
        if k11 * k22 - k12 * k21 != 1:
            raise FixtureInvalid("specialization matrix must have determinant 1")

    @classmethod
    def from_matrix(cls, field: CyclotomicField, m) -> "SLPoint":
        (k11, k12), (k21, k22) = m
        return cls(field, tuple(field.from_json(x) if isinstance(x, (str, list)) else field(x) for x in (k11, k12, k21, k22)))

    @classmethod
    def from_json(cls, field: CyclotomicField, data: dict) -> "SLPoint":
        try:
            return cls.from_matrix(field, data["m"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, FixtureInvalid):
                raise
            raise FixtureInvalid(f"malformed SL_2 point: {exc}") from exc

    def in_w(self) -> bool:
        return not self.entries[0] and not self.entries[3]

    def to_json(self) -> dict:
        k = self.entries
        return {"m": [[k[0].to_json(), k[1].to_json()], [k[2].to_json(), k[3].to_json()]]}
