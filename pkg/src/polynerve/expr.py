"""A tiny expression language for building polytopes.

Grammar::

    EXPR := NAME '(' ARGS ')'
    ARGS := (ARG (',' ARG)*)?
    ARG  := EXPR | INTEGER | STRING

Constructors are ``simplex(n)``, ``cube(n)``, ``cross(n)``, ``polygon(k)``,
``pyr(E)``, ``prod(E, E)``, ``dual(E)`` and ``file("path")``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple, Union

from .errors import ArityError, ExprSyntaxError, SizeOutOfRange, UnknownConstructor
from .polytope import IncidencePolytope, make_standard, polar_dual, product, pyramid

MAX_DEPTH = 16
MAX_FACETS = 62
MAX_VERTICES = 10**6

# name -> tuple of argument kinds
SIGNATURES = {
    "simplex": ("int",),
    "cube": ("int",),
    "cross": ("int",),
    "polygon": ("int",),
    "pyr": ("expr",),
    "prod": ("expr", "expr"),
    "dual": ("expr",),
    "file": ("str",),
}


@dataclass(frozen=True)
class PolytopeExpr:
    name: str
    args: Tuple[Union["PolytopeExpr", int, str], ...]
    line: int = 1
    col: int = 1

    def __str__(self) -> str:
        parts = [json.dumps(a) if isinstance(a, str) else str(a) for a in self.args]
        return f"{self.name}({','.join(parts)})"

    @property
    def depth(self) -> int:
        sub = [a.depth for a in self.args if isinstance(a, PolytopeExpr)]
        return 1 + max(sub, default=0)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def where(self, pos: int = None) -> Tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def fail(self, message: str, pos: int = None):
        raise ExprSyntaxError(message, *self.where(pos))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = repr(self.peek()) if self.peek() else "end of input"
            self.fail(f"expected {ch!r}, got {got}")
        self.pos += 1

    def parse(self) -> PolytopeExpr:
        node = self.expr(1)
        if self.peek():
            self.fail(f"unexpected {self.peek()!r} after expression")
        return node

    def expr(self, depth: int) -> PolytopeExpr:
        if depth > MAX_DEPTH:
            self.fail(f"expression nested deeper than {MAX_DEPTH}")
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        name = self.text[start:self.pos]
        if not name or not (name[0].isalpha() or name[0] == "_"):
            self.fail("expected a constructor name", start)
        line, col = self.where(start)
        if name not in SIGNATURES:
            raise UnknownConstructor(f"unknown constructor {name!r} at line {line}, column {col}")
        self.expect("(")
        args: List[Union[PolytopeExpr, int, str]] = []
        if self.peek() != ")":
            args.append(self.arg(depth))
            while self.peek() == ",":
                self.pos += 1
                args.append(self.arg(depth))
        self.expect(")")
        sig = SIGNATURES[name]
        if len(args) != len(sig):
            raise ArityError(
                f"{name} takes {len(sig)} argument(s), got {len(args)} (line {line}, column {col})"
            )
        for kind, a in zip(sig, args):
            ok = {"int": isinstance(a, int), "str": isinstance(a, str), "expr": isinstance(a, PolytopeExpr)}[kind]
            if not ok:
                raise ArityError(f"{name} expects a {kind} argument (line {line}, column {col})")
        return PolytopeExpr(name, tuple(args), line, col)

    def arg(self, depth: int):
        ch = self.peek()
        if ch.isdigit() or ch == "-":
            start = self.pos
            self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            try:
                return int(self.text[start:self.pos])
            except ValueError:
                self.fail("malformed integer", start)
        if ch == '"':
            start = self.pos
            try:
                value, end = json.JSONDecoder().raw_decode(self.text, self.pos)
            except json.JSONDecodeError:
                self.fail("unterminated string", start)
            self.pos = end
            return value
        if not ch:
            self.fail("unexpected end of input")
        return self.expr(depth + 1)


def parse_expression(text: str) -> PolytopeExpr:
    """Parse ``text``; errors carry the 1-based line and column."""
    return _Parser(text).parse()


def _check(n: int, m: int, v: int, where: PolytopeExpr):
    if m > MAX_FACETS:
        raise SizeOutOfRange(f"{where}: {m} facets exceeds the limit of {MAX_FACETS}")
    if v > MAX_VERTICES:
        raise SizeOutOfRange(f"{where}: {v} vertices exceeds the limit of {MAX_VERTICES}")


def _load_file(path: str) -> IncidencePolytope:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if "polytope" in data:
        data = data["polytope"]
    return IncidencePolytope.from_json(data)


def evaluate(E: Union[PolytopeExpr, str]) -> IncidencePolytope:
    """Build the polytope, checking size limits before each construction."""
    if isinstance(E, str):
        E = parse_expression(E)
    name, args = E.name, E.args
    if name in ("simplex", "cube", "cross", "polygon"):
        k = args[0]
        if k < (3 if name == "polygon" else 1):
            raise SizeOutOfRange(f"{E}: size argument too small")
        predicted = {
            "simplex": (k, k + 1, k + 1),
            "cube": (k, 2 * k, 2**k if k < 64 else MAX_VERTICES + 1),
            "cross": (k, 2**k if k < 64 else MAX_FACETS + 1, 2 * k),
            "polygon": (2, k, k),
        }[name]
        _check(*predicted, E)
        return make_standard(name, k)
    if name == "file":
        P = _load_file(args[0])
        _check(P.n, P.m, P.v, E)
        return P
    subs = [evaluate(a) for a in args]
    if name == "pyr":
        Q = subs[0]
        _check(Q.n + 1, Q.m + 1, Q.v + 1, E)
        return pyramid(Q)
    if name == "dual":
        Q = subs[0]
        _check(Q.n, Q.v, Q.m, E)
        return polar_dual(Q)
    A, B = subs
    _check(A.n + B.n, A.m + B.m, A.v * B.v, E)
    return product(A, B)
