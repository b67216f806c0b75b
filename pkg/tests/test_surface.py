import json
from itertools import product as iproduct

import pytest

from frobalg.checks import fixture_path, load_square
from frobalg.qtorus import FixtureInvalid, QuantumTorus, central_lattice
from frobalg.surface import (
    BSpec,
    IndexMismatch,
    PbSurface,
    UnsupportedSurface,
    b_generators,
    b_membership,
    euler_char,
    expected_dims,
    lambda_set,
    lemma_transversal,
    r_invariant,
    surface_info,
    tau_bar_layout,
    tau_bar_size,
    xck_pattern,
)

TABLE = [
    ("triangle.json", 1, 2, 6, 0),
    ("square.json", 1, 3, 9, 1),
    ("annulus.json", 0, 2, 6, 0),
    ("punctured_disk.json", 0, 1, 2, 0),
]


@pytest.mark.parametrize("name,chi,r,tau,lam", TABLE)
def test_formula_table(name, chi, r, tau, lam):
    s = PbSurface.load(fixture_path(name))
    assert euler_char(s) == chi
    assert r_invariant(s) == r
    assert tau_bar_size(s) == tau
    assert len(lambda_set(s)) == lam
    dims = expected_dims(s, 3)
    assert dims == {"overFrobenius": 3 ** (3 * r), "overCenter": 3 ** (3 * r - lam - s.interior)}


def test_higher_genus():
    s = PbSurface(genus=1, boundary=(2, 3), interior=2)
    assert euler_char(s) == -4
    assert r_invariant(s) == 9
    assert tau_bar_size(s) == 25
    assert lambda_set(s) == [(0, 2)]


@pytest.mark.parametrize("s", [PbSurface(0, (2,)), PbSurface(0, (1,))])
def test_bigon_and_monogon_unsupported(s):
    with pytest.raises(UnsupportedSurface):
        tau_bar_size(s)
    assert surface_info(s, 3)["tauBar"] is None


@pytest.mark.parametrize(
    "data",
    [{"genus": 0, "boundary": []}, {"genus": -1, "boundary": [1]}, {"genus": 0, "boundary": [0]}, {"genus": 0}],
)
def test_invalid_surfaces(data):
    with pytest.raises(FixtureInvalid):
        PbSurface.from_json(data)


def test_lambda_layout_override():
    s = PbSurface(0, (4,), lambda_layout=((5, 6, 7, 8),))
    assert tau_bar_layout(s).lambda_circles == ((5, 6, 7, 8),)
    with pytest.raises(FixtureInvalid):
        tau_bar_layout(PbSurface(0, (4,), lambda_layout=((1, 2, 3),)))
    with pytest.raises(FixtureInvalid):
        tau_bar_layout(PbSurface(0, (4, 2), lambda_layout=((0, 1, 2, 3), (3, 4))))


def test_b_membership_agrees_with_generators():
    layout = tau_bar_layout(PbSurface(0, (4, 2), interior=0))
    spec = BSpec(layout, 3)
    L = b_generators(spec)
    for vals in iproduct(range(3), repeat=6):
        k = vals + (0,) * (layout.size - 6)
        assert b_membership(k, spec) == (k in L)
    with pytest.raises(IndexMismatch):
        b_membership((0, 0), spec)


def test_xck_patterns_lie_in_b():
    layout = tau_bar_layout(PbSurface(0, (4,)))
    spec = BSpec(layout, 3)
    for k in range(3):
        assert b_membership(xck_pattern(0, k, layout, 3), spec)
    assert xck_pattern(0, 1, layout, 3)[:4] == (1, 2, 1, 2)
    with pytest.raises(ValueError):
        xck_pattern(0, 3, layout, 3)


def test_lemma_transversal_is_a_transversal():
    layout = tau_bar_layout(PbSurface(0, (4,)))
    L = b_generators(BSpec(layout, 3))
    reps = lemma_transversal(layout, 3)
    assert len(reps) == 3**8 == L.index(3)
    assert len(L.transversal(3, reps)) == len(reps)


def test_square_fixture_form_makes_b_central():
    surf, form = load_square(fixture_path("square.json"))
    layout = tau_bar_layout(surf)
    L = b_generators(BSpec(layout, 3))
    assert L.residues(3) <= central_lattice(form, 3).residues(3)
    T = QuantumTorus(form, 3)
    assert T.is_central(T.monomial(xck_pattern(0, 1, layout, 3)))


def test_surface_json_roundtrip(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"genus": 0, "boundary": [3], "interior": 0}))
    assert PbSurface.load(path) == PbSurface(0, (3,))
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(FixtureInvalid):
        PbSurface.load(bad)
