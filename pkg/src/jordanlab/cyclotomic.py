"""Exact arithmetic in Q and in cyclotomic fields Q(zeta_m).

An element is a tuple of ``Fraction`` coefficients of a polynomial in
``zeta`` of degree below ``phi(m)``, reduced modulo the m-th cyclotomic
polynomial, so equality is equality of tuples.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache

from .errors import UnsupportedField

MAX_CONDUCTOR = 24

Poly = tuple[Fraction, ...]  # coefficients, constant term first


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _psub(a, b) -> list[Fraction]:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _pdivmod(a, b) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        _trim(a)
    return _trim(q), a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> Poly:
    """Phi_m as a coefficient tuple: x^m - 1 divided by Phi_d for proper d | m."""
    num = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            num, r = _pdivmod(num, cyclotomic_polynomial(d))
            assert not r
    return tuple(num)


class Cyclo:
    """Element of Q(zeta_m); ``m = 1`` is Q itself."""

    __slots__ = ("m", "c")

    def __init__(self, m: int, coeffs=()):
        if not 1 <= m <= MAX_CONDUCTOR:
            raise UnsupportedField(f"Q(zeta_{m}) not supported (1 <= m <= {MAX_CONDUCTOR})")
        self.m = m
        p = _trim([Fraction(x) for x in coeffs])
        mod = cyclotomic_polynomial(m)
        if len(p) >= len(mod):
            _, p = _pdivmod(p, mod)
        self.c: Poly = tuple(p)

    @classmethod
    def rational(cls, m: int, x) -> "Cyclo":
        return cls(m, [Fraction(x)])

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "Cyclo":
        k %= m
        return cls(m, [0] * k + [1])

    def _coerce(self, other) -> "Cyclo":
        if isinstance(other, Cyclo):
            if other.m != self.m:
                raise ValueError(f"mixing Q(zeta_{self.m}) and Q(zeta_{other.m})")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.m, [other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.c), len(o.c))
        return Cyclo(self.m, [(self.c[i] if i < len(self.c) else 0) + (o.c[i] if i < len(o.c) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.m, [-x for x in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclo(self.m, _pmul(self.c, o.c))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        """Extended Euclid against Phi_m."""
        if not self.c:
            raise ZeroDivisionError("inverse of zero")
        r0, r1 = list(cyclotomic_polynomial(self.m)), list(self.c)
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        # r0 is a nonzero constant since Phi_m is irreducible
        assert len(r0) == 1
        return Cyclo(self.m, [x / r0[0] for x in s0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        out = Cyclo(self.m, [1])
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return self.m == other.m and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c == Cyclo(self.m, [other]).c
        return NotImplemented

    def __hash__(self):
        return hash((self.m, self.c))

    def __bool__(self):
        return bool(self.c)

    def is_zero(self) -> bool:
        return not self.c

    def __repr__(self):
        return f"Cyclo({self.m}, {str(self)!r})"

    def __str__(self):
        if not self.c:
            return "0"
        terms = []
        for k, x in enumerate(self.c):
            if not x:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and abs(x) == 1:
                coef = "-" if x < 0 else ""
                terms.append(coef + mono)
            else:
                terms.append(f"{x}{'*' + mono if mono else ''}")
        s = " + ".join(terms)
        return s.replace("+ -", "- ")


def parse_scalar(text: str, m: int = 1) -> Cyclo:
    """Parse ``"3/4"``, ``"z^2 - 1"``, ``"zeta**5"`` etc. into Q(zeta_m)."""
    src = text.strip().replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval").body
    except SyntaxError as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Cyclo(m, [node.value])
        if isinstance(node, ast.Name) and node.id in ("z", "zeta"):
            if m == 1:
                raise ValueError("zeta is not available over Q; use --field Qzeta:m")
            return Cyclo.zeta(m)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError("exponents must be integer literals")
                return ev(node.left) ** node.right.value
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise ValueError(f"unsupported syntax in scalar {text!r}")

    return ev(tree)
