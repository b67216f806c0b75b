"""Element expressions for the command line.

Bigon:  ``2*a d b^2 c - 1/3 b c^2``
Torus:  ``x[0]^3 x[1]^-1 + alpha[0]^2 x[1]``

Terms are separated by ``+``/``-``; factors by ``*`` or whitespace.  A term may
open with a rational coefficient.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .qtorus.forms import FixtureInvalid

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+(?:/\d+)?)"
    r"|(?P<x>x\[(?P<xi>\d+)\])"
    r"|(?P<alpha>alpha\[(?P<ap>\d+)\])"
    r"|(?P<gen>[abcd])"
    r"|(?P<pow>\^\s*(?P<e>-?\d+))"
    r"|(?P<op>[+\-*])"
    r")"
)


class ExpressionError(FixtureInvalid):
    pass


def tokenize(text: str) -> list[tuple[str, object]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group("num"):
            out.append(("num", Fraction(m.group("num"))))
        elif m.group("x"):
            out.append(("x", int(m.group("xi"))))
        elif m.group("alpha"):
            out.append(("alpha", int(m.group("ap"))))
        elif m.group("gen"):
            out.append(("gen", m.group("gen")))
        elif m.group("pow"):
            out.append(("pow", int(m.group("e"))))
        elif m.group("op"):
            out.append(("op", m.group("op")))
    return out


def parse_terms(text: str) -> list[tuple[Fraction, list[tuple[str, object, int]]]]:
    """[(coefficient, [(kind, name, exponent), ...]), ...]"""
    terms = []
    sign, coef, factors = Fraction(1), Fraction(1), []
    started = pending_op = False

    def flush():
        if not started:
            raise ExpressionError("empty term")
        terms.append((sign * coef, factors))

    for kind, val in tokenize(text):
        if kind == "op" and val in "+-":
            if started:
                flush()
            elif pending_op:
                raise ExpressionError("two operators in a row")
            sign = Fraction(1 if val == "+" else -1)
            coef, factors = Fraction(1), []
            started, pending_op = False, True
        elif kind == "op":
            continue
        elif kind == "num":
            if factors:
                raise ExpressionError("coefficients must open a term")
            coef *= val
            started, pending_op = True, False
        elif kind == "pow":
            if not factors:
                raise ExpressionError("exponent without a base")
            k, name, e = factors[-1]
            factors[-1] = (k, name, e * val)
        else:
            factors.append((kind, val, 1))
            started, pending_op = True, False
    flush()
    return terms


def is_torus_expression(terms) -> bool:
    kinds = {k for _, fs in terms for k, _, _ in fs}
    if kinds & {"x", "alpha"} and "gen" in kinds:
        raise ExpressionError("cannot mix bigon generators with torus variables")
    return bool(kinds & {"x", "alpha"})


def to_bigon(O, terms):
    total = O.element()
    for coef, factors in terms:
        if any(e < 0 for _, _, e in factors):
            raise ExpressionError("bigon words use nonnegative exponents")
        total = total + O.normal_form([(name, e) for _, name, e in factors]).scale(coef)
    return total


def alpha_count(terms) -> int:
    return max((name + 1 for _, fs in terms for k, name, _ in fs if k == "alpha"), default=0)


def to_torus(torus, terms):
    total = torus.zero
    for coef, factors in terms:
        t = torus.one
        for kind, name, e in factors:
            if kind == "x":
                if name >= torus.n:
                    raise ExpressionError(f"x[{name}] exceeds rank {torus.n}")
                t = t * torus.gen(name, e)
            else:
                if e < 0:
                    raise ExpressionError("alpha powers must be nonnegative")
                t = t * torus.alpha(name, 1) ** e
        total = total + t.scale(coef)
    return total
