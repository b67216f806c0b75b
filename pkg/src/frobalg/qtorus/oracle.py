"""Brute-force traces, Gram certificates and inverse witnesses for the quantum torus.

These are the defining constructions (left-multiplication matrix on a free
basis over a central subalgebra, diagonal averaged), kept independent of the
projection formulas in ``torus.py``.  In particular the Chebyshev part is
decomposed by power-basis division by T_N instead of the index recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct

from ..linalg import laplace_det, solve_cramer
from ..scalars import CommutativeFraction, LaurentPoly, chebyshev_expand, chebyshev_t
from ..scalars.chebyshev import poly_trim
from .lattice import Lattice, validate_central
from .torus import QuantumTorus, TorusElement


class BasisNotClosed(ValueError):
    """A product did not decompose over the declared basis."""


class DegeneratePairing(ArithmeticError):
    """The trace pairing on a basis has vanishing determinant."""


class NotInvertible(ArithmeticError):
    """The left-multiplication system for an inverse is singular."""


@lru_cache(maxsize=None)
def _cheb_split_by_division(m: int, N: int):
    """T_m = sum_r g_r(T_N) T_r by repeated division by T_N in the power basis.

    Returns {r: {j: c}} with g_r = sum_j c T_j, every j a multiple of N.
    """
    f = list(chebyshev_t(m))
    tn = list(chebyshev_t(N))
    layers = []  # f = sum_j T_N^j * layers[j], deg layers[j] < N
    while any(f):
        quo = [0] * max(len(f) - N, 1)
        rem = list(f)
        for i in range(len(rem) - N - 1, -1, -1):
            c = rem[i + N]
            quo[i] = c
            if c:
                for j, d in enumerate(tn):
                    rem[i + j] -= c * d
        layers.append(poly_trim(rem[:N]))
        f = poly_trim(quo) if len(f) > N else [0]
    out: dict[int, dict[int, Fraction]] = {}
    for j, layer in enumerate(layers):
        power = [0] * j + [1]  # y^j, y = T_N(x)
        # T_i(T_N(x)) = T_{iN}(x)
        y_coeffs = {i * N: Fraction(c) for i, c in chebyshev_expand(power).items()}
        for r, c in chebyshev_expand([Fraction(v) for v in layer]).items():
            slot = out.setdefault(r, {})
            for idx, d in y_coeffs.items():
                slot[idx] = slot.get(idx, 0) + c * d
    return {r: {i: c for i, c in t.items() if c} for r, t in out.items() if any(t.values())}


class FrobeniusSubring:
    """Free basis {alpha^a x^b : a, b in [0, N)} over the N-th power subalgebra."""

    def __init__(self, torus: QuantumTorus):
        self.torus = torus
        N = torus.N
        self.basis = [
            (a, b)
            for a in iproduct(range(N), repeat=torus.nalpha)
            for b in iproduct(range(N), repeat=torus.n)
        ]
        self.keys = frozenset(self.basis)

    def basis_element(self, key) -> TorusElement:
        a, b = key
        return TorusElement(self.torus, {(a, b): self.torus.field.one})

    def split(self, a, k):
        """alpha^a x^k as [(basis key, coefficient in the subalgebra)]."""
        torus = self.torus
        N = torus.N
        r = tuple(x % N for x in k)
        u = tuple(x - y for x, y in zip(k, r))
        ph = torus.form.phase(u, r)
        scal = torus.field.zeta_power(-ph)
        per_var = [_cheb_split_by_division(m, N).items() for m in a]
        out = []
        for choice in iproduct(*per_var):
            ares = tuple(res for res, _ in choice)
            terms = {(): Fraction(1)}
            for _, g in choice:
                terms = {idx + (j,): c * d for idx, c in terms.items() for j, d in g.items()}
            coef = TorusElement(torus, {(idx, u): scal * c for idx, c in terms.items() if c})
            out.append(((ares, r), coef))
        return out


class LatticeSubring:
    """Free basis {x^r : r in a transversal of Z^n / L} over span{alpha^a x^l : l in L}."""

    def __init__(self, torus: QuantumTorus, lattice: Lattice, candidates=None):
        validate_central(lattice, torus.form, torus.N)
        self.torus = torus
        self.lattice = lattice
        self._rep = lattice.coset_map(torus.N, candidates)
        self.basis = sorted(set(self._rep.values()))
        self.keys = frozenset(self.basis)

    def basis_element(self, key) -> TorusElement:
        # x^r itself; a bare monomial would carry T_0(alpha) = 2 per alpha variable
        return self.torus.monomial(key, coef=Fraction(1, 2**self.torus.nalpha))

    def split(self, a, k):
        torus = self.torus
        r = self._rep[tuple(x % torus.N for x in k)]
        u = tuple(x - y for x, y in zip(k, r))
        if u not in self.lattice:
            raise BasisNotClosed(f"{k} - {r} is not in the lattice")
        ph = torus.form.phase(u, r)
        coef = TorusElement(torus, {(a, u): torus.field.zeta_power(-ph)})
        return [(r, coef)]


def _coordinates(t: TorusElement, subring) -> dict:
    keys = subring.keys
    out: dict = {}
    for (a, k), c in t.terms.items():
        for key, coef in subring.split(a, k):
            if key not in keys:
                raise BasisNotClosed(f"monomial {(a, k)} lands outside the basis at {key}")
            out[key] = out.get(key, t.torus.zero) + coef.scale(c)
    return {key: v for key, v in out.items() if v}


def brute_force_trace(t: TorusElement, subring) -> TorusElement:
    """(1/k) * sum_i of the i-th diagonal entry of left multiplication by t."""
    torus = t.torus
    total = torus.zero
    for key in subring.basis:
        image = t * subring.basis_element(key)
        coords = _coordinates(image, subring)
        if key in coords:
            total = total + coords[key]
    return total.scale(Fraction(1, len(subring.basis)))


def left_matrix(t: TorusElement, subring) -> list[list[TorusElement]]:
    """M[i][j] = coefficient of basis_i in t * basis_j."""
    keys = subring.basis
    zero = t.torus.zero
    cols = [_coordinates(t * subring.basis_element(kj), subring) for kj in keys]
    return [[cols[j].get(ki, zero) for j in range(len(keys))] for ki in keys]


def right_matrix(t: TorusElement, subring) -> list[list[TorusElement]]:
    keys = subring.basis
    zero = t.torus.zero
    cols = [_coordinates(subring.basis_element(kj) * t, subring) for kj in keys]
    return [[cols[j].get(ki, zero) for j in range(len(keys))] for ki in keys]


# -- Gram certificates -------------------------------------------------------


@dataclass
class GramCertificate:
    basis: list
    gram: list
    symmetric: bool
    matching: list | None
    determinant: TorusElement
    monomial_determinant: bool

    @property
    def nondegenerate(self) -> bool:
        return not self.determinant.is_zero()


def _perm_sign(perm) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def gram_certificate(torus: QuantumTorus, basis, trace) -> GramCertificate:
    """G_ij = trace(e_i e_j) on monomial keys (a, k); certify symmetry and det != 0.

    ``trace`` is a callable TorusElement -> TorusElement.  When G is a
    generalized permutation matrix with monomial entries the determinant is the
    signed product along the matching; otherwise a division-free expansion is used.
    """
    elems = [TorusElement(torus, {(tuple(a), tuple(k)): torus.field.one}) for a, k in basis]
    n = len(elems)
    G = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            G[i][j] = trace(elems[i] * elems[j])
    symmetric = all(G[i][j] == G[j][i] for i in range(n) for j in range(i))
    matching = []
    for i in range(n):
        nz = [j for j in range(n) if G[i][j]]
        if len(nz) != 1 or len(G[i][nz[0]].terms) != 1:
            matching = None
            break
        matching.append(nz[0])
    if matching is not None and len(set(matching)) == n:
        det = torus.one.scale(_perm_sign(matching))
        for i, j in enumerate(matching):
            det = det * G[i][j]
        monomial = True
    else:
        matching = None
        det = laplace_det(G, torus.zero, torus.one)
        monomial = len(det.terms) == 1
    cert = GramCertificate(list(basis), G, symmetric, matching, det, monomial)
    if det.is_zero():
        raise DegeneratePairing("trace pairing is degenerate on the given basis")
    return cert


# -- inverses in the localization -------------------------------------------


def _as_laurent(coef: TorusElement, N: int, field, n: int) -> LaurentPoly:
    # coefficients of the alpha-free Frobenius image are c * x^{N u}
    terms = {}
    for (a, k), c in coef.terms.items():
        if any(x % N for x in k):
            raise BasisNotClosed(f"coefficient exponent {k} is not in N Z^n")
        terms[tuple(x // N for x in k)] = c
    return LaurentPoly(field, n, terms)


@dataclass
class DivisionWitness:
    element: TorusElement
    coordinates: dict  # basis key -> CommutativeFraction over Laurent polys in y_i = x_i^N
    left_verified: bool
    right_verified: bool
    subring: object = field(repr=False, default=None)

    def as_torus_element(self) -> TorusElement | None:
        """The inverse as a TorusElement when every coordinate is a Laurent polynomial."""
        torus = self.element.torus
        out = torus.zero
        for key, frac in self.coordinates.items():
            if len(frac.den.terms) != 1:
                return None
            (e, c), = frac.den.terms.items()
            for f, d in frac.num.terms.items():
                u = tuple(torus.N * (x - y) for x, y in zip(f, e))
                coef = TorusElement(torus, {((), u): d / c})
                out = out + coef * self.subring.basis_element(key)
        return out


def division_witness(t: TorusElement) -> DivisionWitness:
    """Solve L_t v = coords(1) over Frac(Frobenius image) and verify t s = s t = 1."""
    torus = t.torus
    if torus.nalpha:
        raise ValueError("division witnesses are implemented for alpha-free tori")
    if t.is_zero():
        raise NotInvertible("zero has no inverse")
    field_ = torus.field
    N, n = torus.N, torus.n
    sub = FrobeniusSubring(torus)
    keys = sub.basis
    zero = LaurentPoly.constant(field_, n, 0)
    one = LaurentPoly.constant(field_, n, 1)

    def to_poly_matrix(M):
        return [[_as_laurent(e, N, field_, n) if e else zero for e in row] for row in M]

    L = to_poly_matrix(left_matrix(t, sub))
    R = to_poly_matrix(right_matrix(t, sub))
    unit_key = ((), (0,) * n)
    rhs = [one if key == unit_key else zero for key in keys]
    try:
        v = solve_cramer(L, rhs, zero, one, CommutativeFraction)
    except ZeroDivisionError as exc:
        raise NotInvertible(str(exc)) from exc

    def check(M):
        for i, row in enumerate(M):
            acc = CommutativeFraction(zero)
            for e, x in zip(row, v):
                if e and x:
                    acc = acc + x * e
            if not acc == CommutativeFraction(rhs[i]):
                return False
        return True

    coords = {key: x for key, x in zip(keys, v) if x}
    return DivisionWitness(t, coords, check(L), check(R), sub)
