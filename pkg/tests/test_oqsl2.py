import random
from fractions import Fraction
from itertools import product as iproduct

import pytest

from frobalg.checks import rewrite_once
from frobalg.oqsl2 import InsideW, OqSL2, SLPoint, parse_word
from frobalg.qtorus import FixtureInvalid, LatticeSubring, brute_force_trace
from frobalg.trace_engine import frobenius_certificate, trace_f

O3 = OqSL2(3)


def random_word(rng, max_len=4, max_exp=3):
    return [(rng.choice("abcd"), rng.randint(1, max_exp)) for _ in range(rng.randint(1, max_len))]


def random_element(O, rng):
    x = O.element()
    for _ in range(rng.randint(1, 3)):
        x = x + O.normal_form(random_word(rng)).scale(rng.randint(-3, 3))
    return x


def test_parse_word():
    assert parse_word("a d b^2") == [("a", 1), ("d", 1), ("b", 2)]
    assert parse_word("a*d") == [("a", 1), ("d", 1)]
    with pytest.raises(ValueError):
        parse_word("ae")


def test_defining_relations():
    O = O3
    q2, qm2 = O.field.zeta_power(4), O.field.zeta_power(-4)
    bc = O.element({(0, 1, 1): 1})
    assert O.normal_form("ad") == O.one + bc.scale(qm2)
    assert O.normal_form("da") == O.one + bc.scale(q2)
    assert O.normal_form("ba") == O.normal_form("ab").scale(q2)
    assert O.normal_form("ca") == O.normal_form("ac").scale(q2)
    assert O.normal_form("db") == O.normal_form("bd").scale(q2)
    assert O.normal_form("dc") == O.normal_form("cd").scale(q2)
    assert O.normal_form("bc") == O.normal_form("cb")


@pytest.mark.parametrize("N", (3, 5))
def test_associativity(N):
    O = OqSL2(N)
    rng = random.Random(N)
    for _ in range(100):
        x, y, z = (O.normal_form(random_word(rng, 3)) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_confluence():
    rng = random.Random(2)
    for _ in range(200):
        word = tuple(rng.choice("abcd") for _ in range(rng.randint(2, 8)))
        combo = {word: O3.field.one}
        for _ in range(rng.randint(1, 6)):
            combo = rewrite_once(O3, combo, rng)
        total = O3.element()
        for w, c in combo.items():
            total = total + O3.normal_form([(l, 1) for l in w]).scale(c)
        assert total == O3.normal_form([(l, 1) for l in word])


@pytest.mark.parametrize("N", (3, 5, 7))
def test_frobenius_homomorphism(N):
    r = OqSL2(N).verify_frobenius_hom()
    assert r["pairwise_commute"] and r["central"] and r["det_is_one"]


def test_frobenius_fails_off_roots_of_unity_order():
    # a^2 is not central at N = 3
    O = O3
    a2, d = O.gen("a", 2), O.gen("d")
    assert a2 * d != d * a2


def test_center_generators():
    for N in (3, 5):
        r = OqSL2(N).center_generator_check()
        assert all(r["central"]) and r["independent"]


def test_eliminate_a_examples():
    O = O3
    T = O.dbc
    a = O.eliminate_a(O.gen("a"))
    assert len(a.terms) == 2
    assert a * T.gen(0) == T.one + T.monomial((0, 1, 1), coef=O.field.zeta_power(-4))
    assert O.eliminate_a(O.normal_form("ad")) == T.one + T.monomial((0, 1, 1), coef=O.field.zeta_power(-4))
    assert O.eliminate_a(O.gen("a", 2)) == a * a


def test_eliminations_are_multiplicative():
    rng = random.Random(5)
    for _ in range(100):
        x, y = random_element(O3, rng), random_element(O3, rng)
        assert O3.eliminate_a(x * y) == O3.eliminate_a(x) * O3.eliminate_a(y)
    for _ in range(30):
        x, y = random_element(O3, rng), random_element(O3, rng)
        assert O3.eliminate_d(x * y) == O3.eliminate_d(x) * O3.eliminate_d(y)


def test_trace_over_frobenius_examples():
    O = O3
    assert O.trace_over_frobenius_fraction(O.normal_form("d b^2 c^2")).is_zero()
    assert O.trace_over_frobenius_fraction(O.gen("d", 3)) == O.dbc.monomial((3, 0, 0))
    got = O.trace_over_frobenius_fraction(O.normal_form("a d b^2 c^2"))
    assert got == O.dbc.monomial((0, 3, 3), coef=O.field.zeta_power(-4))


def test_trace_over_frobenius_formula():
    O = O3
    for k in iproduct(range(7), repeat=3):
        x = O.normal_form([("d", k[0]), ("b", k[1]), ("c", k[2])])
        want = O.dbc.monomial(k) if all(v % 3 == 0 for v in k) else O.dbc.zero
        assert O.trace_over_frobenius_fraction(x) == want


def test_trace_over_center_examples():
    O = O3
    assert O.trace_over_center_fraction(O.normal_form("d b")).is_zero()
    assert O.trace_over_center_fraction(O.normal_form("b c^2")) == O.dbc.monomial((0, 1, 2))
    assert O.trace_over_center_fraction(O.one) == O.dbc.one


def test_center_lattice_shape():
    L = O3.center_lattice()
    assert L.residues(3) == frozenset((0, j, k) for j in range(3) for k in range(3) if (j + k) % 3 == 0)


def test_center_trace_matches_oracle():
    O = O3
    L = O.center_lattice()
    sub = LatticeSubring(O.dbc, L, [(i, j, 0) for i in range(3) for j in range(3)])
    rng = random.Random(9)
    for _ in range(20):
        t = O.eliminate_a(random_element(O, rng))
        assert O.dbc.trace_over_center(t, L) == brute_force_trace(t, sub)


def test_fraction_traces_symmetric():
    rng = random.Random(12)
    for _ in range(20):
        x, y = random_element(O3, rng), random_element(O3, rng)
        assert O3.trace_over_frobenius_fraction(x * y) == O3.trace_over_frobenius_fraction(y * x)
        assert O3.trace_over_center_fraction(x * y) == O3.trace_over_center_fraction(y * x)


def test_fraction_trace_linear_over_frobenius_image():
    rng = random.Random(13)
    A, D = O3.gen("a", 3), O3.gen("d", 3)
    for _ in range(10):
        x = random_element(O3, rng)
        for z in (A, D, A * D):
            lhs = O3.trace_over_frobenius_fraction(z * x)
            assert lhs == O3.eliminate_a(z) * O3.trace_over_frobenius_fraction(x)


# -- specialization -----------------------------------------------------------


def point(m, N=3):
    return SLPoint.from_matrix(OqSL2(N).field, m)


def test_slpoint_validation():
    with pytest.raises(FixtureInvalid):
        point(((1, 1), (1, 1)))
    with pytest.raises(FixtureInvalid):
        SLPoint.from_json(O3.field, {"m": [[1, 0]]})
    p = point(((2, 0), (0, Fraction(1, 2))))
    assert SLPoint.from_json(O3.field, p.to_json()) == p


def test_inside_w_rejected():
    with pytest.raises(InsideW):
        O3.specialize(point(((0, 1), (-1, 0))))


@pytest.mark.parametrize("m,kind", [(((2, 1), (1, 1)), "a"), (((0, 1), (-1, 3)), "d")])
def test_specialization_at_generic_points(m, kind):
    alg = O3.specialize(point(m))
    assert alg.meta["kind"] == kind
    assert alg.dim == 27
    alg.validate()
    assert trace_f(alg.unit, alg) == 1
    cert = frobenius_certificate(alg)
    assert cert.symmetric and cert.nondegenerate


def test_specialization_is_a_homomorphism():
    alg = O3.specialize(point(((2, 1), (1, 1))))
    rng = random.Random(3)
    for _ in range(30):
        x, y = random_element(O3, rng), random_element(O3, rng)
        assert alg.project(x * y) == alg.mul(alg.project(x), alg.project(y))
    for letter, val in zip("abcd", (2, 1, 1, 1)):
        assert alg.project(O3.gen(letter, 3)) == {0: O3.field(val)}


@pytest.mark.parametrize("m", [((1, 0), (0, 1)), ((2, 0), (0, Fraction(1, 2))), ((1, 0), (1, 1))])
def test_gram_degenerate_when_b_or_c_is_nilpotent(m):
    """rho(b) = 0 makes b^N = 0, so b spans a nilpotent two-sided ideal in the radical of the trace form."""
    alg = O3.specialize(point(m))
    assert alg.dim == 27
    assert trace_f(alg.unit, alg) == 1
    cert = frobenius_certificate(alg)
    assert cert.symmetric
    assert not cert.nondegenerate
    b_index = alg.labels.index("a^0 b^1 c^0")
    assert b_index in cert.rank_deficiency_witness()


def test_class_of_b_has_zero_trace():
    alg = O3.specialize(point(((1, 0), (0, 1))))
    assert trace_f(alg.project(O3.gen("b")), alg) == 0


@pytest.mark.parametrize("m", [((1, 0), (0, 1)), ((2, 1), (1, 1)), ((0, 1), (-1, 0))])
def test_quotient_construction(m):
    rho = point(m)
    alg = O3.specialize_quotient(rho)
    assert alg.dim == 27
    alg.validate()
    rng = random.Random(4)
    for _ in range(15):
        x, y = random_element(O3, rng), random_element(O3, rng)
        assert alg.project(x * y) == alg.mul(alg.project(x), alg.project(y))
    if not rho.in_w():
        direct = O3.specialize(rho)
        assert frobenius_certificate(alg).verdict == frobenius_certificate(direct).verdict


def test_tensor_of_specializations():
    pts = [point(((2, 1), (1, 1))), point(((1, 0), (0, 1)))]
    alg = O3.tensor_specializations(pts)
    assert alg.dim == 729
    assert trace_f(alg.unit, alg) == 1
