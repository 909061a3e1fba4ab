"""Sparse multivariate polynomials over Q in variables t0, t1, ..."""
from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ArityError

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class Poly:
    variable_count: int
    terms: Mapping[Exponent, Fraction]

    def __post_init__(self):
        clean = {}
        for exp, c in self.terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.variable_count:
                raise ArityError(f"exponent {exp} has wrong length for {self.variable_count} variables")
            c = Fraction(c)
            if c != 0:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        object.__setattr__(self, "terms", {e: c for e, c in sorted(clean.items()) if c != 0})

    @classmethod
    def constant(cls, c, nvars: int) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls.constant(1, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        if not 0 <= i < nvars:
            raise ArityError(f"variable t{i} out of range for {nvars} variables")
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> Fraction | None:
        """The value if the polynomial is constant, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and (0,) * self.variable_count in self.terms:
            return self.terms[(0,) * self.variable_count]
        return None

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.variable_count != self.variable_count:
                raise ArityError("polynomials over different numbers of variables")
            return other
        return Poly.constant(other, self.variable_count)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Poly(self.variable_count, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.variable_count, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Poly(self.variable_count, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = Poly.one(self.variable_count)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.variable_count == other.variable_count and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.variable_count, tuple(self.terms.items())))

    def evaluate(self, point: Sequence) -> Fraction:
        return evaluate(self, point)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"t{i}" if k == 1 else f"t{i}^{k}" for i, k in enumerate(exp) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def evaluate(p: Poly, point: Sequence) -> Fraction:
    """Exact value of ``p`` at a rational point."""
    if len(point) != p.variable_count:
        raise ArityError(f"point has {len(point)} coordinates, polynomial has {p.variable_count} variables")
    pt = [Fraction(x) for x in point]
    total = Fraction(0)
    for exp, c in p.terms.items():
        term = c
        for x, k in zip(pt, exp):
            if k:
                term *= x**k
        total += term
    return total


_VAR = re.compile(r"t(\d+)$")


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse integers, rationals ``p/q``, variables ``t0..t{m-1}`` with ``+ - * ^``.

    ``**`` is accepted as a synonym for ``^``. Division is allowed only by a
    nonzero constant.
    """
    try:
        # '^' must bind like '**', not like bitwise xor
        tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}") from exc

    def walk(node) -> Poly:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Poly.constant(node.value, nvars)
        if isinstance(node, ast.Name):
            m = _VAR.match(node.id)
            if not m:
                raise ValueError(f"unknown variable {node.id!r}")
            return Poly.var(int(m.group(1)), nvars)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = walk(node.operand)
            return -inner if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp):
            left = walk(node.left)
            if isinstance(node.op, ast.Pow):
                k = walk(node.right).constant_value()
                if k is None or k.denominator != 1 or k < 0:
                    raise ValueError("exponents must be nonnegative integer constants")
                return left ** int(k)
            right = walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                d = right.constant_value()
                if d is None or d == 0:
                    raise ValueError("division only by nonzero constants")
                return left * (1 / d)
        raise ValueError(f"unsupported syntax in polynomial {text!r}")

    return walk(tree)
