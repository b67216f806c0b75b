"""Combinatorics of punctured bordered surfaces.

A surface is given by its genus, the number of punctures on each boundary circle
of the compactification, and the number of interior punctures.  Generator
indices for the torus are laid out with the doubled boundary arcs first, circle
by circle in input order (each circle's arcs in cyclic order starting at its
chosen first arc), followed by the remaining arcs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .qtorus.forms import FixtureInvalid
from .qtorus.lattice import Lattice


class UnsupportedSurface(ValueError):
    """The bigon and monogon have no quasitriangulation torus."""


class IndexMismatch(ValueError):
    """An exponent vector does not match the generator layout."""


@dataclass(frozen=True)
class PbSurface:
    genus: int
    boundary: tuple[int, ...]
    interior: int = 0
    lambda_layout: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(int(x) for x in self.boundary))
        if self.genus < 0 or self.interior < 0:
            raise FixtureInvalid("genus and interior puncture count must be nonnegative")
        if not self.boundary:
            raise FixtureInvalid("surface must have nonempty boundary")
        if any(t < 1 for t in self.boundary):
            raise FixtureInvalid("every boundary circle needs at least one puncture")
        if self.lambda_layout is not None:
            object.__setattr__(self, "lambda_layout", tuple(tuple(int(i) for i in lst) for lst in self.lambda_layout))

    @classmethod
    def from_json(cls, data: dict) -> "PbSurface":
        try:
            return cls(
                genus=int(data.get("genus", 0)),
                boundary=tuple(data["boundary"]),
                interior=int(data.get("interior", 0)),
                lambda_layout=data.get("lambdaLayout"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, FixtureInvalid):
                raise
            raise FixtureInvalid(f"malformed surface fixture: {exc}") from exc

    @classmethod
    def load(cls, path) -> "PbSurface":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise FixtureInvalid(f"cannot read surface fixture {path}: {exc}") from exc
        return cls.from_json(data)

    def is_bigon(self) -> bool:
        return self.genus == 0 and self.boundary == (2,) and self.interior == 0

    def is_monogon(self) -> bool:
        return self.genus == 0 and self.boundary == (1,) and self.interior == 0


def euler_char(s: PbSurface) -> int:
    # boundary punctures do not change the homotopy type
    return 2 - 2 * s.genus - len(s.boundary) - s.interior


def r_invariant(s: PbSurface) -> int:
    """-chi + number of boundary arcs of the open surface."""
    return -euler_char(s) + sum(s.boundary)


def tau_bar_size(s: PbSurface) -> int:
    if s.is_bigon() or s.is_monogon():
        raise UnsupportedSurface("bigon and monogon are handled separately")
    return 3 * r_invariant(s) - s.interior


def lambda_set(s: PbSurface) -> list[tuple[int, int]]:
    """(circle index, puncture count) for boundary circles with an even count."""
    return [(i, t) for i, t in enumerate(s.boundary) if t % 2 == 0]


@dataclass(frozen=True)
class TauBarLayout:
    size: int
    lambda_circles: tuple[tuple[int, ...], ...]
    boundary_arcs: tuple[tuple[int, ...], ...] = field(default=())

    def lambda_indices(self) -> set[int]:
        return {i for lst in self.lambda_circles for i in lst}


def tau_bar_layout(s: PbSurface) -> TauBarLayout:
    size = tau_bar_size(s)
    circles = []
    pos = 0
    for t in s.boundary:
        circles.append(tuple(range(pos, pos + t)))
        pos += t
    if pos > size:
        raise UnsupportedSurface("more doubled boundary arcs than generators")
    lam = [circles[i] for i, _ in lambda_set(s)]
    if s.lambda_layout is not None:
        if len(s.lambda_layout) != len(lam):
            raise FixtureInvalid("lambdaLayout must list one index list per even boundary circle")
        for given, (_, t) in zip(s.lambda_layout, lambda_set(s)):
            if len(given) != t or any(not 0 <= i < size for i in given):
                raise FixtureInvalid(f"bad lambdaLayout entry {given}")
        flat = [i for lst in s.lambda_layout for i in lst]
        if len(flat) != len(set(flat)):
            raise FixtureInvalid("lambdaLayout index lists overlap")
        lam = list(s.lambda_layout)
    return TauBarLayout(size, tuple(lam), tuple(circles))


@dataclass(frozen=True)
class BSpec:
    layout: TauBarLayout
    N: int


def b_membership(k, spec: BSpec) -> bool:
    """Alternating (k_c, -k_c, ...) mod N on each even circle's arcs, 0 mod N elsewhere."""
    layout, N = spec.layout, spec.N
    if len(k) != layout.size:
        raise IndexMismatch(f"exponent has length {len(k)}, layout has {layout.size} generators")
    lam = layout.lambda_indices()
    if any(k[i] % N for i in range(layout.size) if i not in lam):
        return False
    for idx in layout.lambda_circles:
        kc = k[idx[0]]
        for pos, i in enumerate(idx):
            want = kc if pos % 2 == 0 else -kc
            if (k[i] - want) % N:
                return False
    return True


def b_generators(spec: BSpec) -> Lattice:
    n, N = spec.layout.size, spec.N
    gens = [[N * int(i == j) for j in range(n)] for i in range(n)]
    for idx in spec.layout.lambda_circles:
        v = [0] * n
        for pos, i in enumerate(idx):
            v[i] = 1 if pos % 2 == 0 else -1
        gens.append(v)
    return Lattice(gens, n)


def expected_dims(s: PbSurface, N: int) -> dict[str, int]:
    r = r_invariant(s)
    return {
        "overFrobenius": N ** (3 * r),
        "overCenter": N ** (3 * r - len(lambda_set(s)) - s.interior),
    }


def xck_pattern(circle: int, k: int, layout: TauBarLayout, N: int) -> tuple[int, ...]:
    """Exponent of X_{c,k}: k, N-k, k, N-k, ... along the circle's arcs; zero for k = 0."""
    if not 0 <= k <= N - 1:
        raise ValueError("k must lie in [0, N-1]")
    v = [0] * layout.size
    if k:
        for pos, i in enumerate(layout.lambda_circles[circle]):
            v[i] = k if pos % 2 == 0 else N - k
    return tuple(v)


def lemma_transversal(layout: TauBarLayout, N: int) -> list[tuple[int, ...]]:
    """{k in [0, N)^size : k vanishes at each even circle's first arc}."""
    from itertools import product as iproduct

    firsts = {idx[0] for idx in layout.lambda_circles}
    free = [i for i in range(layout.size) if i not in firsts]
    out = []
    for vals in iproduct(range(N), repeat=len(free)):
        v = [0] * layout.size
        for i, x in zip(free, vals):
            v[i] = x
        out.append(tuple(v))
    return out


def surface_info(s: PbSurface, N: int) -> dict:
    info = {
        "genus": s.genus,
        "boundary": list(s.boundary),
        "interior": s.interior,
        "chi": euler_char(s),
        "r": r_invariant(s),
        "lambda": len(lambda_set(s)),
        "dims": expected_dims(s, N),
    }
    if s.is_bigon() or s.is_monogon():
        info["tauBar"] = None
    else:
        layout = tau_bar_layout(s)
        info["tauBar"] = layout.size
        info["lambdaIndices"] = [list(x) for x in layout.lambda_circles]
    return info
