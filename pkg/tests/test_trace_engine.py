import json
import random

import pytest

from frobalg.oqsl2 import OqSL2, SLPoint
from frobalg.scalars import CyclotomicField
from frobalg.trace_engine import (
    AxiomViolation,
    FieldMismatch,
    FiniteDimAlgebra,
    frobenius_certificate,
    gram_matrix,
    pure_tensor,
    tensor_product,
    trace_f,
)

F3 = CyclotomicField(3)


def cubic_extension(field, c=2):
    """field[t] / (t^3 - c): a field when c is not a cube, hence a division algebra."""
    table = {}
    for i in range(3):
        for j in range(3):
            k = i + j
            table[(i, j)] = {k: field.one} if k < 3 else {k - 3: field(c)}
    return FiniteDimAlgebra(field, ["1", "t", "t^2"], table)


def matrices(field):
    """2x2 matrices on the basis E11, E12, E21, E22."""
    table = {}
    for (i, j), p in zip([(0, 0), (0, 1), (1, 0), (1, 1)], range(4)):
        for (k, l), r in zip([(0, 0), (0, 1), (1, 0), (1, 1)], range(4)):
            if j == k:
                table[(p, r)] = {2 * i + l: field.one}
    return FiniteDimAlgebra(field, ["E11", "E12", "E21", "E22"], table, unit={0: field.one, 3: field.one})


def test_one_dimensional():
    alg = FiniteDimAlgebra(F3, ["1"], {(0, 0): {0: F3.one}})
    assert gram_matrix(alg) == [[1]]
    assert frobenius_certificate(alg).nondegenerate


def test_zero_algebra_forbidden():
    with pytest.raises(ValueError):
        FiniteDimAlgebra(F3, [], {})


def test_division_algebra_is_frobenius():
    alg = cubic_extension(F3)
    alg.validate()
    assert trace_f(alg.unit, alg) == 1
    assert trace_f(alg.basis(1), alg) == 0
    cert = frobenius_certificate(alg)
    assert cert.symmetric and cert.nondegenerate


def test_matrix_algebra_trace():
    alg = matrices(F3)
    alg.validate()
    # normalized trace of E11 is 1/2
    assert trace_f(alg.basis(0), alg) == F3(1) / 2
    assert frobenius_certificate(alg).nondegenerate


def test_trace_symmetric_and_linear():
    alg = O_generic()
    rng = random.Random(0)
    for _ in range(50):
        x, y = alg.random_element(rng), alg.random_element(rng)
        assert trace_f(alg.mul(x, y), alg) == trace_f(alg.mul(y, x), alg)
        assert trace_f(alg.add(x, y), alg) == trace_f(x, alg) + trace_f(y, alg)


def O_generic():
    O = OqSL2(3)
    return O.specialize(SLPoint.from_matrix(O.field, ((2, 1), (1, 1))))


def test_associativity_violation_detected():
    table = {(0, 0): {0: F3.one}, (0, 1): {1: F3.one}, (1, 0): {1: F3.one}, (1, 1): {1: F3.one}}
    fine = FiniteDimAlgebra(F3, ["1", "e"], table)
    fine.validate()
    bad = dict(table)
    bad[(1, 1)] = {0: F3.one, 1: F3.one}  # e^2 = 1 + e, still associative
    FiniteDimAlgebra(F3, ["1", "e"], bad).validate()
    broken = {
        (0, 0): {0: F3.one}, (0, 1): {1: F3.one}, (0, 2): {2: F3.one},
        (1, 0): {1: F3.one}, (2, 0): {2: F3.one},
        (1, 1): {2: F3.one}, (1, 2): {0: F3.one}, (2, 1): {1: F3.one}, (2, 2): {0: F3.one},
    }
    with pytest.raises(AxiomViolation):
        FiniteDimAlgebra(F3, ["1", "u", "v"], broken).validate()


def test_unit_violation_detected():
    table = {(0, 0): {0: F3.one}, (0, 1): {0: F3.one}, (1, 0): {1: F3.one}, (1, 1): {1: F3.one}}
    with pytest.raises(AxiomViolation):
        FiniteDimAlgebra(F3, ["1", "e"], table).validate()


def test_tensor_product_structure():
    A, B = cubic_extension(F3), matrices(F3)
    T = tensor_product(A, B)
    assert T.dim == 12
    T.validate()
    assert T.unit == pure_tensor(A, B, A.unit, B.unit)
    rng = random.Random(1)
    for _ in range(10):
        u, v = A.random_element(rng), B.random_element(rng)
        assert trace_f(pure_tensor(A, B, u, v), T) == trace_f(u, A) * trace_f(v, B)
    assert frobenius_certificate(T).nondegenerate


def test_tensor_associativity_up_to_reindexing():
    A, B, C = cubic_extension(F3), matrices(F3), cubic_extension(F3, 3)
    left = tensor_product(tensor_product(A, B), C)
    right = tensor_product(A, tensor_product(B, C))
    # both use the index (i * dim B + j) * dim C + k
    for p in range(0, left.dim, 5):
        for q in range(0, left.dim, 7):
            assert left.product(p, q) == right.product(p, q)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        tensor_product(cubic_extension(F3), cubic_extension(CyclotomicField(5)))


def test_large_tensor_dimension_and_unit():
    alg = O_generic()
    T = tensor_product(alg, alg)
    assert T.dim == 729
    assert trace_f(T.unit, T) == 1
    assert T.check_associativity(seed=3, samples=200)


def test_json_roundtrip():
    alg = cubic_extension(F3)
    data = json.loads(alg.dumps())
    again = FiniteDimAlgebra.from_json(F3, data)
    assert all(again.product(i, j) == alg.product(i, j) for i in range(3) for j in range(3))
    assert again.dumps() == alg.dumps()
