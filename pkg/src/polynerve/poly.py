"""Exact integer polynomials in one and two variables."""

from __future__ import annotations

from math import comb
from typing import Dict, Iterable, Mapping, Tuple


class Poly:
    """Univariate polynomial with integer coefficients, lowest degree first.

    Trailing zeros are stripped, so equal polynomials compare equal.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: Tuple[int, ...] = tuple(c)

    @classmethod
    def binomial(cls, k: int) -> "Poly":
        """``(t + 1)**k``."""
        return cls(comb(k, i) for i in range(k + 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self.coeffs == Poly(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self), len(other))
        return Poly(self[i] + other[i] for i in range(n))

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self), len(other))
        return Poly(self[i] - other[i] for i in range(n))

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(other * c for c in self.coeffs)
        out = [0] * max(0, len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, times: int = 1) -> "Poly":
        c = list(self.coeffs)
        for _ in range(times):
            c = [i * c[i] for i in range(1, len(c))]
        return Poly(c)

    def shift_by_one(self) -> "Poly":
        """Substitute ``t -> t + 1``."""
        out = Poly()
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + Poly.binomial(k) * c
        return out

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def __str__(self):
        return render_univariate(self)


def render_univariate(p: Poly, var: str = "t") -> str:
    terms = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if abs(c) == 1 else f"{abs(c)} {mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class BivariatePolynomial:
    """Sparse integer polynomial in ``a`` (alpha) and ``t``.

    Keys are ``(alpha_degree, t_degree)``; zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Tuple[int, int], int] | None = None):
        self.terms: Dict[Tuple[int, int], int] = {
            (int(a), int(b)): int(c) for (a, b), c in (terms or {}).items() if c
        }

    def add_term(self, a: int, t: int, c: int = 1) -> None:
        key = (a, t)
        v = self.terms.get(key, 0) + c
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def __eq__(self, other):
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __call__(self, alpha, t):
        return sum(c * alpha**a * t**b for (a, b), c in self.terms.items())

    def specialize_alpha(self, alpha: int) -> Poly:
        """Univariate polynomial in ``t`` obtained by fixing ``alpha``."""
        deg = max((b for _, b in self.terms), default=-1)
        out = [0] * (deg + 1)
        for (a, b), c in self.terms.items():
            out[b] += c * alpha**a
        return Poly(out)

    def coefficient(self, a: int, t: int) -> int:
        return self.terms.get((a, t), 0)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"a": a, "t": b, "c": c}
                for (a, b), c in sorted(self.terms.items(), key=_term_order)
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "BivariatePolynomial":
        return cls({(d["a"], d["t"]): d["c"] for d in data["terms"]})

    def __repr__(self):
        return f"BivariatePolynomial({self})"

    def __str__(self):
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=_term_order):
            mono = []
            if a:
                mono.append("a" if a == 1 else f"a^{a}")
            if b:
                mono.append("t" if b == 1 else f"t^{b}")
            body = " ".join(mono) if mono else "1"
            if abs(c) != 1 or not mono:
                body = f"{abs(c)} {body}" if mono else str(abs(c))
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _term_order(item):
    (a, b), _ = item
    return (b, -a)
