"""Verification checks addressable from the command line.

Each check returns ``(passed, witness)``.  Hard checks decide the exit code;
exploratory ones are reported with status "info" and never fail a run.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product as iproduct
from pathlib import Path
from typing import Callable

from .oqsl2 import InsideW, OqSL2, SLPoint
from .qtorus import (
    FrobeniusSubring,
    LatticeSubring,
    QuantumTorus,
    SkewForm,
    brute_force_trace,
    central_lattice,
    division_witness,
    gram_certificate,
    validate_central,
)
from .qtorus.forms import FixtureInvalid
from .qtorus.lattice import LatticeNotCentral
from .scalars import CyclotomicField, chebyshev_t, chebyshev_trace_filter
from .scalars.chebyshev import poly_trim
from .surface import (
    BSpec,
    PbSurface,
    b_generators,
    b_membership,
    expected_dims,
    lambda_set,
    lemma_transversal,
    r_invariant,
    tau_bar_layout,
    tau_bar_size,
)
from .trace_engine import frobenius_certificate, trace_f


class CheckFailed(RuntimeError):
    pass


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("frobalg") / "fixtures" / name))


@dataclass
class Context:
    N: int = 3
    seed: int = 0
    form: Path | None = None
    square: Path = field(default_factory=lambda: fixture_path("square.json"))
    rho: list[Path] = field(default_factory=list)
    w_points: list[Path] = field(default_factory=list)

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")


@dataclass(frozen=True)
class Check:
    name: str
    claim: str
    suites: tuple[str, ...]
    run: Callable[[Context], tuple[bool, object]]
    hard: bool = True


REGISTRY: dict[str, Check] = {}


def check(name, claim, suites, hard=True):
    def wrap(fn):
        REGISTRY[name] = Check(name, claim, tuple(suites), fn, hard)
        return fn

    return wrap


# -- helpers -------------------------------------------------------------------


def _torus_text(t) -> str:
    return repr(t)


def random_form(rng: random.Random, n: int, bound: int = 3) -> SkewForm:
    P = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            P[i][j] = rng.randint(-bound, bound)
            P[j][i] = -P[i][j]
    return SkewForm(tuple(map(tuple, P)))


def random_monomial(rng, torus: QuantumTorus, span: int, alpha_max: int):
    a = tuple(rng.randint(0, alpha_max) for _ in range(torus.nalpha))
    k = tuple(rng.randint(-span, span) for _ in range(torus.n))
    return torus.element({(a, k): 1})


def random_sparse(rng, torus: QuantumTorus, terms: int, span: int, alpha_max: int):
    out = torus.zero
    for _ in range(terms):
        c = torus.field.from_power_coefficients([rng.randint(-3, 3) for _ in range(torus.field.degree)])
        out = out + random_monomial(rng, torus, span, alpha_max).scale(c)
    return out


def load_rho(path, N: int) -> SLPoint:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FixtureInvalid(f"cannot read SL_2 point {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise FixtureInvalid(f"{path}: expected an object with key 'm'")
    return SLPoint.from_json(CyclotomicField(N), data)


def load_square(path) -> tuple[PbSurface, SkewForm]:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FixtureInvalid(f"cannot read surface fixture {path}: {exc}") from exc
    if "form" not in data:
        raise FixtureInvalid(f"{path} carries no skew form")
    return PbSurface.from_json(data), SkewForm.from_json(data["form"])


def square_setup(ctx: Context):
    surf, form = load_square(ctx.square)
    layout = tau_bar_layout(surf)
    if form.n != layout.size:
        raise FixtureInvalid(f"form has rank {form.n}, surface needs {layout.size}")
    lattice = b_generators(BSpec(layout, ctx.N))
    try:
        validate_central(lattice, form, ctx.N)
    except LatticeNotCentral as exc:
        raise FixtureInvalid(f"subgroup B is not central for this form: {exc}") from exc
    return surf, form, layout, lattice


SPECIALIZATION_POINTS = {
    "identity": ((1, 0), (0, 1)),
    "diag(2,1/2)": ((2, 0), (0, Fraction(1, 2))),
    "lower(1,0;1,1)": ((1, 0), (1, 1)),
}


# -- criteria ----------------------------------------------------------------


@check("c01_chebyshev_trace", "Tr over C[T_N] of T_k is T_k when N | k and 0 otherwise", ["torus"])
def _c01(ctx):
    bad = []
    for N in sorted({3, 5, ctx.N}):
        torus = QuantumTorus(SkewForm(((0,),)), N, ("alpha",))
        sub = FrobeniusSubring(torus)
        for k in range(4 * N + 1):
            tk = list(chebyshev_t(k))
            want = tk if k % N == 0 else [0]
            got = chebyshev_trace_filter(tk, N)
            oracle = brute_force_trace(torus.element({((k,), (0,)): 1}), sub)
            expect = torus.element({((k,), (0,)): 1}) if k % N == 0 else torus.zero
            if poly_trim(list(got)) != poly_trim(want) or oracle != expect:
                bad.append({"N": N, "k": k})
    return not bad, {"mismatches": bad}


@check("c02_frobenius_hom", "a^N, b^N, c^N, d^N commute, are central and satisfy AD - BC = 1", ["bigon"])
def _c02(ctx):
    out = {}
    ok = True
    for N in sorted({3, 5, 7, ctx.N}):
        r = OqSL2(N).verify_frobenius_hom()
        passed = r["pairwise_commute"] and r["central"] and r["det_is_one"]
        ok &= passed
        out[str(N)] = {k: r[k] for k in ("pairwise_commute", "central", "det_is_one")}
    return ok, out


def _frr_expected(O: OqSL2, k):
    N = O.N
    if all(x % N == 0 for x in k):
        return O.dbc.monomial(k)
    return O.dbc.zero


@check("c03_bigon_trace_frobenius", "Tr(d^k1 b^k2 c^k3) over the Frobenius image and Tr(a d b^(N-1) c^(N-1)) = q^-2 b^N c^N", ["bigon"])
def _c03(ctx):
    O = OqSL2(ctx.N)
    N = O.N
    bad = []
    for k in iproduct(range(2 * N + 1), repeat=3):
        x = O.normal_form([("d", k[0]), ("b", k[1]), ("c", k[2])])
        # the word d^k1 b^k2 c^k3 is the ordered torus monomial x^k
        if O.trace_over_frobenius_fraction(x) != _frr_expected(O, k):
            bad.append(list(k))
    ok, remark = _remark(O)
    return not bad and ok, {"mismatches": bad[:10], "remark": remark}


def _remark(O: OqSL2):
    N = O.N
    x = O.normal_form([("a", 1), ("d", 1), ("b", N - 1), ("c", N - 1)])
    got = O.trace_over_frobenius_fraction(x)
    want = O.dbc.monomial((0, N, N), coef=O.field.zeta_power(-4))
    return got == want, {"got": _torus_text(got), "want": "q^-2 b^N c^N"}


@check("bigon_remark", "Tr(a d b^{N-1} c^{N-1}) = q^-2 b^N c^N", ["bigon"])
def _remark_check(ctx):
    return _remark(OqSL2(ctx.N))


@check("c04_bigon_trace_center", "Tr(d^k1 b^k2) over the center, and projection equals the module trace", ["bigon"])
def _c04(ctx):
    O = OqSL2(ctx.N)
    N = O.N
    L = O.center_lattice()
    bad = []
    for k1, k2 in iproduct(range(2 * N + 1), repeat=2):
        x = O.normal_form([("d", k1), ("b", k2)])
        want = O.dbc.monomial((k1, k2, 0)) if k1 % N == 0 and k2 % N == 0 else O.dbc.zero
        if O.trace_over_center_fraction(x) != want:
            bad.append([k1, k2])
    candidates = [(k1, k2, 0) for k1 in range(N) for k2 in range(N)]
    sub = LatticeSubring(O.dbc, L, candidates)
    rng = ctx.rng("c04")
    disagree = []
    for trial in range(50):
        word = [(rng.choice("abcd"), rng.randint(0, 2 * N)) for _ in range(rng.randint(1, 4))]
        x = O.normal_form(word) + O.normal_form([(rng.choice("bcd"), rng.randint(0, N))]).scale(rng.randint(-3, 3))
        t = O.eliminate_a(x)
        if O.dbc.trace_over_center(t, L) != brute_force_trace(t, sub):
            disagree.append(word)
    return not bad and not disagree, {"formula_mismatches": bad, "oracle_mismatches": disagree[:5]}


@check("c05_torus_trace_oracle", "projection trace over the Frobenius image equals the module trace", ["torus"])
def _c05(ctx):
    rng = ctx.rng("c05")
    N = ctx.N
    bad = []
    forms = 0
    for n in (2, 3):
        for _ in range(5):
            form = random_form(rng, n)
            forms += 1
            torus = QuantumTorus(form, N, ("alpha",))
            sub = FrobeniusSubring(torus)
            samples = [random_monomial(rng, torus, 2 * N, 2 * N) for _ in range(100)]
            samples += [random_sparse(rng, torus, 4, 2 * N, 2 * N) for _ in range(20)]
            for t in samples:
                if torus.trace_over_frobenius(t) != brute_force_trace(t, sub):
                    bad.append({"P": form.P, "t": t.to_json()})
    return not bad, {"forms": forms, "mismatches": bad[:3]}


@check("torus_fixture_oracle", "projection trace equals the module trace on a fixture form", ["torus"])
def _fixture_oracle(ctx):
    if ctx.form is None:
        return True, {"skipped": "no --form given"}
    form = SkewForm.load(ctx.form)
    torus = QuantumTorus(form, ctx.N, ("alpha",))
    sub = FrobeniusSubring(torus)
    rng = ctx.rng("fixture")
    bad = []
    for _ in range(100):
        t = random_monomial(rng, torus, 2 * ctx.N, 2 * ctx.N)
        if torus.trace_over_frobenius(t) != brute_force_trace(t, sub):
            bad.append(t.to_json())
    return not bad, {"form": str(ctx.form), "monomials": 100, "mismatches": bad[:3]}


@check("c06_surface_center_trace", "membership in B matches its generators; trace over B equals the module trace", ["surface"])
def _c06(ctx):
    N = ctx.N
    surf, form, layout, lattice = square_setup(ctx)
    spec = BSpec(layout, N)
    lam = sorted(layout.lambda_indices())
    membership_bad = []
    for vals in iproduct(range(N), repeat=len(lam)):
        k = [0] * layout.size
        for i, v in zip(lam, vals):
            k[i] = v
        if b_membership(k, spec) != (tuple(k) in lattice):
            membership_bad.append(k)
    torus = QuantumTorus(form, N)
    sub = LatticeSubring(torus, lattice, lemma_transversal(layout, N))
    rng = ctx.rng("c06")
    bad = []
    for trial in range(50):
        k = [rng.randint(-2 * N, 2 * N) for _ in range(layout.size)]
        if trial % 2:
            # force a B-pattern on the even circle so nonzero traces are exercised
            for idx in layout.lambda_circles:
                kc = rng.randint(0, N - 1)
                for pos, i in enumerate(idx):
                    k[i] = (kc if pos % 2 == 0 else -kc) + N * rng.randint(-1, 1)
            for i in range(layout.size):
                if i not in layout.lambda_indices():
                    k[i] = N * rng.randint(-1, 1)
        t = torus.monomial(k)
        if torus.trace_over_center(t, lattice) != brute_force_trace(t, sub):
            bad.append(k)
    return not membership_bad and not bad, {
        "patterns": N ** len(lam),
        "membership_mismatches": membership_bad,
        "trace_mismatches": bad[:5],
        "basis_size": len(sub.basis),
    }


@check("c07_specialization", "specializations are N^3-dimensional with symmetric trace and nonsingular Gram", ["specialize"])
def _c07(ctx):
    N = ctx.N
    O = OqSL2(N)
    ok = True
    out = {}
    algs = []
    for name, m in SPECIALIZATION_POINTS.items():
        alg = O.specialize(SLPoint.from_matrix(O.field, m))
        alg.validate(ctx.seed)
        cert = frobenius_certificate(alg)
        t1 = trace_f(alg.unit, alg)
        passed = alg.dim == N**3 and cert.symmetric and t1 == 1 and cert.nondegenerate
        ok &= passed
        out[name] = {
            "dim": alg.dim,
            "basis": alg.meta["kind"],
            "trace_one": t1.to_json(),
            "symmetric": cert.symmetric,
            "verdict": cert.verdict,
            "zero_gram_rows": [alg.labels[i] for i in cert.rank_deficiency_witness()],
        }
        algs.append(alg)
    tensor = O.tensor_specializations([SLPoint.from_matrix(O.field, m) for m in list(SPECIALIZATION_POINTS.values())[:2]])
    out["tensor_dim"] = tensor.dim
    ok &= tensor.dim == N**6
    return ok, out


@check("c08_division", "nonzero elements of the rank-1 torus have verified two-sided inverses", ["torus"])
def _c08(ctx):
    N = ctx.N
    torus = QuantumTorus(SkewForm(((0,),)), N)
    rng = ctx.rng("c08")
    bad = []
    done = 0
    while done < 50:
        t = random_sparse(rng, torus, rng.randint(1, 3), 2 * N, 0)
        if t.is_zero():
            continue
        w = division_witness(t)
        inv = w.as_torus_element()
        two_sided = w.left_verified and w.right_verified
        if inv is not None:
            two_sided &= t * inv == torus.one and inv * t == torus.one
        if not two_sided:
            bad.append(t.to_json())
        done += 1
    return not bad, {"elements": done, "failures": bad[:3]}


@check("c09_torus_gram", "Gram matrices of the residue bases are signed monomial permutation matrices", ["torus"])
def _c09(ctx):
    rng = ctx.rng("c09")
    bad = []
    cases = 0
    for N in sorted({3, 5, ctx.N}):
        for n in (1, 2, 3):
            if N**n > 125:
                continue
            form = random_form(rng, n)
            torus = QuantumTorus(form, N)
            frob_basis = [((), k) for k in iproduct(range(N), repeat=n)]
            L = central_lattice(form, N)
            center_basis = [((), k) for k in L.transversal(N)]
            for label, basis, tr in (
                ("frobenius", frob_basis, torus.trace_over_frobenius),
                ("center", center_basis, lambda t, L=L: torus.trace_over_center(t, L)),
            ):
                cases += 1
                try:
                    cert = gram_certificate(torus, basis, tr)
                    good = cert.symmetric and cert.matching is not None and cert.monomial_determinant
                except ArithmeticError:
                    good = False
                if not good:
                    bad.append({"N": N, "P": form.P, "pairing": label})
    return not bad, {"cases": cases, "failures": bad}


SURFACE_TABLE = [
    ("triangle.json", 2, 6, 0),
    ("square.json", 3, 9, 1),
    ("annulus.json", 2, 6, 0),
    ("punctured_disk.json", 1, 2, 0),
]


@check("c10_surface_table", "r, |tau-bar|, Lambda and dimensions of the four fixture surfaces", ["surface"])
def _c10(ctx):
    N = ctx.N
    rows = []
    ok = True
    for name, r, tau, lam in SURFACE_TABLE:
        s = PbSurface.load(fixture_path(name))
        got = (r_invariant(s), tau_bar_size(s), len(lambda_set(s)))
        dims = expected_dims(s, N)
        want_dims = {"overFrobenius": N ** (3 * r), "overCenter": N ** (3 * r - lam - s.interior)}
        good = got == (r, tau, lam) and dims == want_dims
        ok &= good
        rows.append({"fixture": name, "r": got[0], "tauBar": got[1], "lambda": got[2], "dims": dims, "ok": good})
    return ok, rows


# -- supplementary hard checks ----------------------------------------------------


@check("bigon_center_generators", "b^i c^{N-i} are central and independent over the Frobenius image", ["bigon"])
def _center_gens(ctx):
    r = OqSL2(ctx.N).center_generator_check()
    return all(r["central"]) and r["independent"], r


@check("bigon_pbw_confluence", "rewriting a word by single relations never changes its normal form", ["bigon"])
def _confluence(ctx):
    O = OqSL2(ctx.N)
    rng = ctx.rng("confluence")
    bad = []
    for _ in range(200):
        word = [rng.choice("abcd") for _ in range(rng.randint(2, 8))]
        combo = {tuple(word): O.field.one}
        for _ in range(rng.randint(1, 6)):
            combo = rewrite_once(O, combo, rng)
        total = O.element()
        for w, c in combo.items():
            total = total + O.normal_form([(l, 1) for l in w]).scale(c)
        if total != O.normal_form([(l, 1) for l in word]):
            bad.append("".join(word))
    return not bad, {"words": 200, "failures": bad[:5]}


def rewrite_once(O: OqSL2, combo: dict, rng: random.Random) -> dict:
    """Apply one defining relation at a random adjacent pair of a random word."""
    field = O.field
    q2 = field.zeta_power(4)
    qm2 = field.zeta_power(-4)
    rules = {
        ("c", "a"): [(q2, ("a", "c"))],
        ("d", "b"): [(q2, ("b", "d"))],
        ("b", "a"): [(q2, ("a", "b"))],
        ("d", "c"): [(q2, ("c", "d"))],
        ("b", "c"): [(field.one, ("c", "b"))],
        ("c", "b"): [(field.one, ("b", "c"))],
        ("a", "d"): [(field.one, ()), (qm2, ("b", "c"))],
        ("d", "a"): [(field.one, ()), (q2, ("c", "b"))],
    }
    words = [w for w in combo if any((w[i], w[i + 1]) in rules for i in range(len(w) - 1))]
    if not words:
        return combo
    w = rng.choice(sorted(words))
    spots = [i for i in range(len(w) - 1) if (w[i], w[i + 1]) in rules]
    i = rng.choice(spots)
    out = dict(combo)
    c = out.pop(w)
    for coef, repl in rules[(w[i], w[i + 1])]:
        nw = w[:i] + repl + w[i + 2 :]
        out[nw] = out.get(nw, field.zero) + c * coef
    return {k: v for k, v in out.items() if v}


# -- exploratory ---------------------------------------------------------------------


@check("x_b_vs_central_lattice", "index of B against the full central lattice of the fixture form", ["surface"], hard=False)
def _b_vs_central(ctx):
    _, form, layout, lattice = square_setup(ctx)
    full = central_lattice(form, ctx.N)
    return True, {
        "index_B": lattice.index(ctx.N),
        "index_central": full.index(ctx.N),
        "equal": lattice.residues(ctx.N) == full.residues(ctx.N),
    }


@check("x_generic_point_gram", "Gram verdict at points with rho(b) rho(c) != 0", ["specialize"], hard=False)
def _generic(ctx):
    O = OqSL2(ctx.N)
    out = {}
    for name, m in {"(2,1;1,1)": ((2, 1), (1, 1)), "(0,1;-1,3)": ((0, 1), (-1, 3))}.items():
        alg = O.specialize(SLPoint.from_matrix(O.field, m))
        out[name] = {"basis": alg.meta["kind"], "verdict": frobenius_certificate(alg).verdict}
    return True, out


@check("x_w_point_gram", "Gram determinant at points of W via the quotient construction", ["specialize"], hard=False)
def _w_points(ctx):
    O = OqSL2(ctx.N)
    points = [load_rho(p, ctx.N) for p in ctx.w_points] or [SLPoint.from_matrix(O.field, ((0, 1), (-1, 0)))]
    out = []
    for rho in points:
        try:
            O.specialize(rho)
            direct = "basis available"
        except InsideW:
            direct = "InsideW"
        alg = O.specialize_quotient(rho)
        cert = frobenius_certificate(alg)
        out.append({"rho": rho.to_json(), "direct": direct, "dim": alg.dim, "det": cert.determinant.to_json(), "verdict": cert.verdict})
    return True, out


# -- running -------------------------------------------------------------------------

SUITES = ("bigon", "torus", "surface", "specialize", "all")


def select(suite: str, exploratory: bool, only=None) -> list[Check]:
    chosen = [
        c
        for c in REGISTRY.values()
        if (suite == "all" or suite in c.suites) and (c.hard or exploratory)
    ]
    if only:
        wanted = set(only)
        unknown = wanted - set(REGISTRY)
        if unknown:
            raise KeyError(f"unknown checks: {sorted(unknown)}")
        chosen = [REGISTRY[n] for n in sorted(wanted)]
    return sorted(chosen, key=lambda c: c.name)


def run_checks(checks: list[Check], ctx: Context, timings: bool = True) -> dict:
    records = []
    for c in checks:
        start = time.perf_counter()
        try:
            passed, witness = c.run(ctx)
        except FixtureInvalid:
            raise
        except Exception as exc:  # a crash inside a check is a failed check, not a fixture error
            passed, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
        status = ("pass" if passed else "fail") if c.hard else "info"
        rec = {"name": c.name, "claim": c.claim, "hard": c.hard, "status": status, "witness": witness}
        if timings:
            rec["elapsed"] = round(time.perf_counter() - start, 3)
        records.append(rec)
    return {
        "N": ctx.N,
        "seed": ctx.seed,
        "passed": all(r["status"] != "fail" for r in records),
        "checks": records,
    }
