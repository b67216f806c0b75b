"""Finite-index sublattices of Z^n: Smith/Hermite normal forms, membership, transversals."""

from __future__ import annotations

from itertools import product as iproduct
from math import gcd

from .forms import SkewForm


class LatticeNotCentral(ValueError):
    """A lattice generator k violates P k = 0 (mod N)."""


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A):
    """Return (D, U, V) with U A V = D diagonal and U, V unimodular.

    A is an m x n integer matrix given as a list of rows.
    """
    D = [list(map(int, row)) for row in A]
    m = len(D)
    n = len(D[0]) if m else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(M, i, j):
        M[i], M[j] = M[j], M[i]

    def swap_cols(M, i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return D, U, V
            i, j = best
            swap_rows(D, t, i)
            swap_rows(U, t, i)
            swap_cols(D, t, j)
            swap_cols(V, t, j)
            p = D[t][t]
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    D[i] = [a - q * b for a, b in zip(D[i], D[t])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[t])]
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    for row in D:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
            if any(D[i][t] for i in range(t + 1, m)) or any(D[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            D[t] = [a + b for a, b in zip(D[t], D[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return D, U, V


def hermite_rows(vectors):
    """Integer row echelon basis of the lattice spanned by ``vectors``."""
    rows = [list(map(int, v)) for v in vectors if any(v)]
    if not rows:
        return []
    n = len(rows[0])
    basis = []
    col = 0
    while rows and col < n:
        live = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[col] else rest).append(r)
            live = nxt
        if live:
            piv = live[0]
            if piv[col] < 0:
                piv = [-a for a in piv]
            basis.append(piv)
        rows = [r for r in rest if any(r)]
        col += 1
    return basis


class Lattice:
    """Subgroup of Z^n generated by the given integer vectors (the columns of a generator matrix)."""

    def __init__(self, generators, n: int | None = None):
        gens = tuple(tuple(int(x) for x in g) for g in generators)
        if n is None:
            if not gens:
                raise ValueError("need the ambient rank for an empty generator list")
            n = len(gens[0])
        if any(len(g) != n for g in gens):
            raise ValueError("generator length does not match ambient rank")
        self.n = n
        self.generators = gens
        self._echelon = hermite_rows(gens)
        self._residue_cache: dict[int, frozenset] = {}

    def __contains__(self, k) -> bool:
        v = [int(x) for x in k]
        for row in self._echelon:
            c = next(i for i, x in enumerate(row) if x)
            if v[c] % row[c]:
                return False
            q = v[c] // row[c]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return not any(v)

    def contains_multiples(self, N: int) -> bool:
        """N * Z^n is a sublattice."""
        return all(tuple(N * int(i == j) for j in range(self.n)) in self for i in range(self.n))

    def residues(self, N: int) -> frozenset:
        """Image of the lattice in (Z/N)^n."""
        if N not in self._residue_cache:
            gens = [tuple(x % N for x in g) for g in self.generators]
            seen = {(0,) * self.n}
            frontier = list(seen)
            while frontier:
                nxt = []
                for v in frontier:
                    for g in gens:
                        w = tuple((a + b) % N for a, b in zip(v, g))
                        if w not in seen:
                            seen.add(w)
                            nxt.append(w)
                frontier = nxt
            self._residue_cache[N] = frozenset(seen)
        return self._residue_cache[N]

    def index(self, N: int) -> int:
        """[Z^n : L], assuming N Z^n is contained in L."""
        return N**self.n // len(self.residues(N))

    def coset_map(self, N: int, candidates=None) -> dict:
        """Map each residue class in (Z/N)^n to a chosen coset representative.

        With no ``candidates`` the representative is the colexicographically
        smallest vector in [0, N)^n, so trailing coordinates are zeroed first.
        Explicit candidates must form a full transversal.
        """
        res = sorted(self.residues(N))
        if candidates is None:
            candidates = sorted(iproduct(range(N), repeat=self.n), key=lambda v: v[::-1])
            explicit = False
        else:
            candidates = [tuple(c) for c in candidates]
            explicit = True
        rep_of_class: dict = {}
        classes: dict = {}
        for c in candidates:
            key = _coset_key(c, res, N)
            if key in rep_of_class:
                if explicit:
                    raise ValueError(f"candidates {rep_of_class[key]} and {c} lie in the same coset")
                continue
            rep_of_class[key] = c
        if explicit and len(rep_of_class) != self.index(N):
            raise ValueError("candidates do not cover every coset")
        for v in iproduct(range(N), repeat=self.n):
            classes[v] = rep_of_class[_coset_key(v, res, N)]
        return classes

    def transversal(self, N: int, candidates=None) -> list[tuple[int, ...]]:
        return sorted(set(self.coset_map(N, candidates).values()))

    def __repr__(self):
        return f"Lattice(n={self.n}, generators={list(self.generators)})"


def _coset_key(v, residues, N):
    # smallest element of v + L in (Z/N)^n identifies the coset
    return min(tuple((a + b) % N for a, b in zip(v, r)) for r in residues)


def standard_lattice(n: int, N: int) -> Lattice:
    return Lattice([[N * int(i == j) for j in range(n)] for i in range(n)], n)


def central_lattice(form: SkewForm, N: int) -> Lattice:
    """{k in Z^n : P k = 0 (mod N)}, the exponents of central monomials."""
    D, _, V = smith_normal_form([list(r) for r in form.P])
    n = form.n
    gens = []
    for i in range(n):
        d = D[i][i] if i < len(D) else 0
        mult = N // gcd(d, N)
        gens.append([V[r][i] * mult for r in range(n)])
    for i in range(n):
        gens.append([N * int(i == j) for j in range(n)])
    return Lattice(gens, n)


def validate_central(lattice: Lattice, form: SkewForm, N: int) -> None:
    """Raise unless N Z^n <= L <= central lattice."""
    if lattice.n != form.n:
        raise ValueError("lattice rank does not match the skew form")
    for g in lattice.generators:
        if any(x % N for x in form.apply(g)):
            raise LatticeNotCentral(f"generator {g} is not central: P k = {form.apply(g)} mod {N}")
    if not lattice.contains_multiples(N):
        raise ValueError(f"lattice does not contain {N} Z^{lattice.n}")
