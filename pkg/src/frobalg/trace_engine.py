"""Finite-dimensional algebras over an exact field.

Elements are sparse vectors ``{basis index: scalar}``.  Structure constants are
either given as a table or produced on demand by ``mul_basis(i, j)`` and cached.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .linalg import bareiss_det


class FieldMismatch(ValueError):
    """Tensor factors are defined over different scalar fields."""


class AxiomViolation(ArithmeticError):
    """Unit or associativity law fails."""


def _axpy(acc: dict, c, vec: dict) -> None:
    for i, x in vec.items():
        v = c * x
        s = acc.get(i)
        acc[i] = v if s is None else s + v


def _clean(vec: dict) -> dict:
    return {i: c for i, c in vec.items() if c}


class FiniteDimAlgebra:
    def __init__(self, field, labels, table=None, *, mul_basis=None, unit=None):
        if (table is None) == (mul_basis is None):
            raise ValueError("give exactly one of a structure-constant table or mul_basis")
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        if self.dim == 0:
            raise ValueError("the zero algebra is not allowed")
        self._table = {} if table is None else {k: _clean(v) for k, v in table.items()}
        self._mul_basis = mul_basis
        self.unit = _clean(dict(unit)) if unit is not None else {0: field.one}
        self.meta: dict = {}

    def product(self, i: int, j: int) -> dict:
        key = (i, j)
        got = self._table.get(key)
        if got is None:
            if self._mul_basis is None:
                return {}
            got = _clean(self._mul_basis(i, j))
            self._table[key] = got
        return got

    def basis(self, i: int) -> dict:
        return {i: self.field.one}

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                _axpy(out, a * b, self.product(i, j))
        return _clean(out)

    def add(self, u: dict, v: dict) -> dict:
        out = dict(u)
        _axpy(out, self.field.one, v)
        return _clean(out)

    def scale(self, c, u: dict) -> dict:
        return _clean({i: c * x for i, x in u.items()})

    def left_matrix(self, x: dict) -> list[list]:
        zero = self.field.zero
        M = [[zero] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for i, c in self.mul(x, self.basis(j)).items():
                M[i][j] = c
        return M

    def random_element(self, rng: random.Random, density: int = 3, coeff_range: int = 3) -> dict:
        out = {}
        for _ in range(density):
            c = rng.randint(-coeff_range, coeff_range)
            if c:
                out[rng.randrange(self.dim)] = self.field(c)
        return out

    def check_unit(self, indices=None) -> bool:
        indices = range(self.dim) if indices is None else indices
        for i in indices:
            e = self.basis(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                return False
        return True

    def check_associativity(self, seed: int = 0, samples: int = 2000) -> bool:
        """Exhaustive on basis triples when dim <= 27, otherwise ``samples`` seeded triples."""
        if self.dim <= 27:
            triples = iproduct(range(self.dim), repeat=3)
        else:
            rng = random.Random(seed)
            triples = [tuple(rng.randrange(self.dim) for _ in range(3)) for _ in range(samples)]
        for i, j, k in triples:
            if self.mul(self.product(i, j), self.basis(k)) != self.mul(self.basis(i), self.product(j, k)):
                return False
        return True

    def validate(self, seed: int = 0) -> None:
        if not self.check_unit():
            raise AxiomViolation("unit law fails")
        if not self.check_associativity(seed):
            raise AxiomViolation("associativity fails")

    def to_json(self) -> dict:
        constants = []
        for i in range(self.dim):
            for j in range(self.dim):
                vec = self.product(i, j)
                if vec:
                    constants.append({"i": i, "j": j, "v": {str(k): c.to_json() for k, c in sorted(vec.items())}})
        return {
            "order": self.field.order,
            "labels": self.labels,
            "unit": {str(k): c.to_json() for k, c in sorted(self.unit.items())},
            "constants": constants,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, field, data: dict) -> "FiniteDimAlgebra":
        table = {}
        for entry in data["constants"]:
            table[(entry["i"], entry["j"])] = {int(k): field.from_json(c) for k, c in entry["v"].items()}
        unit = {int(k): field.from_json(c) for k, c in data["unit"].items()}
        return cls(field, data["labels"], table, unit=unit)


def trace_f(x: dict, alg: FiniteDimAlgebra):
    """(1/k) * sum of the diagonal of left multiplication by x."""
    total = alg.field.zero
    for j in range(alg.dim):
        c = alg.mul(x, alg.basis(j)).get(j)
        if c:
            total = total + c
    return total * Fraction(1, alg.dim)


def _basis_traces(alg: FiniteDimAlgebra) -> list:
    """t_m = Trace(e_m), so Trace(sum x_m e_m) = sum x_m t_m."""
    cached = alg.meta.get("_basis_traces")
    if cached is None:
        cached = [trace_f(alg.basis(m), alg) for m in range(alg.dim)]
        alg.meta["_basis_traces"] = cached
    return cached


def trace_linear(x: dict, alg: FiniteDimAlgebra):
    t = _basis_traces(alg)
    total = alg.field.zero
    for m, c in x.items():
        if t[m]:
            total = total + c * t[m]
    return total


def gram_matrix(alg: FiniteDimAlgebra) -> list[list]:
    k = alg.dim
    G = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            G[i][j] = trace_linear(alg.product(i, j), alg)
    return G


@dataclass
class FrobeniusCertificate:
    gram: list
    symmetric: bool
    determinant: object
    verdict: str

    @property
    def nondegenerate(self) -> bool:
        return self.verdict == "nondegenerate"

    def rank_deficiency_witness(self):
        """Indices of all-zero Gram rows, the simplest reason for det = 0."""
        return [i for i, row in enumerate(self.gram) if not any(row)]


def frobenius_certificate(alg: FiniteDimAlgebra) -> FrobeniusCertificate:
    G = gram_matrix(alg)
    k = alg.dim
    symmetric = all(G[i][j] == G[j][i] for i in range(k) for j in range(i))
    det = bareiss_det(G, alg.field.zero, alg.field.one)
    return FrobeniusCertificate(G, symmetric, det, "nondegenerate" if det else "degenerate")


def tensor_product(A: FiniteDimAlgebra, B: FiniteDimAlgebra) -> FiniteDimAlgebra:
    """Basis e_i (x) f_j at index i * dim B + j; the factors commute."""
    if A.field is not B.field:
        raise FieldMismatch(f"cannot tensor over Q(zeta_{A.field.order}) and Q(zeta_{B.field.order})")
    nb = B.dim

    def mul_basis(p, q):
        i1, j1 = divmod(p, nb)
        i2, j2 = divmod(q, nb)
        u, v = A.product(i1, i2), B.product(j1, j2)
        return {i * nb + j: a * b for i, a in u.items() for j, b in v.items()}

    labels = [f"({la})x({lb})" for la in A.labels for lb in B.labels]
    unit = {i * nb + j: a * b for i, a in A.unit.items() for j, b in B.unit.items()}
    out = FiniteDimAlgebra(A.field, labels, mul_basis=mul_basis, unit=unit)
    out.meta["factors"] = (A, B)
    return out


def pure_tensor(A: FiniteDimAlgebra, B: FiniteDimAlgebra, u: dict, v: dict) -> dict:
    return {i * B.dim + j: a * b for i, a in u.items() for j, b in v.items()}
