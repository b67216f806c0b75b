"""Antisymmetric integer forms and the q-commutation phase shared by all torus products."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path


class FixtureInvalid(ValueError):
    """A user-supplied fixture failed validation."""


@dataclass(frozen=True)
class SkewForm:
    """x_a x_b = q^{P[a][b]} x_b x_a on generators x_0..x_{n-1}."""

    P: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = ()
    _lower: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        P = tuple(tuple(int(x) for x in row) for row in self.P)
        n = len(P)
        if n == 0:
            raise FixtureInvalid("skew form must have positive rank")
        if any(len(row) != n for row in P):
            raise FixtureInvalid("skew form must be square")
        for i in range(n):
            if P[i][i] != 0:
                raise FixtureInvalid(f"diagonal entry P[{i}][{i}] is nonzero")
            for j in range(i):
                if P[i][j] != -P[j][i]:
                    raise FixtureInvalid(f"P is not antisymmetric at ({i}, {j})")
        names = tuple(self.names) or tuple(f"x{i}" for i in range(n))
        if len(names) != n:
            raise FixtureInvalid("number of names does not match rank")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "names", names)
        lower = tuple((i, j, P[i][j]) for i in range(n) for j in range(i) if P[i][j])
        object.__setattr__(self, "_lower", lower)

    @property
    def n(self) -> int:
        return len(self.P)

    def phase(self, u, v) -> int:
        """zeta-exponent of x^u x^v = zeta^phase x^{u+v} for ordered monomials.

        Moving every x_j of the right factor left past each x_i (i > j) of the
        left factor costs q^{P[i][j]} = zeta^{2 P[i][j]}.
        """
        s = 0
        for i, j, p in self._lower:
            ui, vj = u[i], v[j]
            if ui and vj:
                s += p * ui * vj
        return 2 * s

    def pairing(self, u, v) -> int:
        """u^T P v."""
        P = self.P
        return sum(u[i] * P[i][j] * v[j] for i in range(self.n) for j in range(self.n) if u[i] and v[j])

    def apply(self, k) -> tuple[int, ...]:
        """P k."""
        return tuple(sum(row[j] * k[j] for j in range(self.n)) for row in self.P)

    def to_json(self) -> dict:
        return {"n": self.n, "names": list(self.names), "P": [list(r) for r in self.P]}

    @classmethod
    def from_json(cls, data: dict) -> "SkewForm":
        try:
            P = data["P"]
            n = int(data.get("n", len(P)))
            names = data.get("names") or ()
        except (KeyError, TypeError) as exc:
            raise FixtureInvalid(f"malformed skew-form fixture: {exc}") from exc
        if len(P) != n:
            raise FixtureInvalid(f"declared n={n} but P has {len(P)} rows")
        return cls(P=tuple(tuple(r) for r in P), names=tuple(names))

    @classmethod
    def load(cls, path) -> "SkewForm":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise FixtureInvalid(f"cannot read skew-form fixture {path}: {exc}") from exc
        return cls.from_json(data)


def mul_monomial(form: SkewForm, u, v) -> tuple[int, tuple[int, ...]]:
    """(phase, u + v) with x^u x^v = zeta^phase x^{u+v}."""
    return form.phase(u, v), tuple(a + b for a, b in zip(u, v))
