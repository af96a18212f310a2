"""Combinatorial bounds and an audited ledger of numeric bounds.

* :func:`isotypical_bound` enumerates the ways an ``N``-dimensional
  representation can split into isotypical pieces and bounds the weak
  Jordan constant in each case.
* :func:`order_bound` bounds the weak Jordan constant of any group of order
  ``n`` using only the factorization of ``n``: a group of order ``p^k``
  has an abelian normal subgroup of order ``p^a`` with ``2k <= a(a+1)``.
* The ledger is a JSON list of arithmetic expressions with the value each
  must produce; :func:`ledger_check` evaluates them exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterator

import numpy as np

from .errors import BadParams, LedgerError, TableMiss

# weak Jordan constants of GL_d over an algebraically closed field of
# characteristic zero, d = 1..5 (the linear-groups table; taken as data)
JBAR_GL = {1: 1, 2: 12, 3: 72, 4: 960, 5: 960}


def jbar_gl(d: int) -> int:
    try:
        return JBAR_GL[d]
    except KeyError:
        raise TableMiss(f"no weak Jordan constant tabulated for GL_{d}") from None


# -- isotypical partition bound -------------------------------------------------

@dataclass(frozen=True)
class PartitionCase:
    parts: tuple[tuple[int, int], ...]  # (multiplicity m, dimension d), d increasing

    @property
    def dimension(self) -> int:
        return sum(m * d for m, d in self.parts)

    @property
    def summands(self) -> int:
        return sum(m for m, _ in self.parts)

    @property
    def bound(self) -> int:
        out = 1
        for m, d in self.parts:
            out *= math.factorial(m) * jbar_gl(d) ** m
        return out

    def __str__(self) -> str:
        return " + ".join(f"{m}x{d}" for m, d in self.parts)


def _partitions(n: int, largest: int) -> Iterator[list[int]]:
    """Partitions of ``n`` into parts ``<= largest``, parts non-increasing."""
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield [k] + rest


def partition_cases(N: int, m_min: int) -> list[PartitionCase]:
    if N < 1 or not 1 <= m_min <= N:
        raise BadParams(f"need N >= 1 and 1 <= m_min <= N, got N={N}, m_min={m_min}")
    out = []
    for p in _partitions(N, N):
        if len(p) < m_min:
            continue
        parts = sorted(((p.count(d), d) for d in set(p)), key=lambda t: t[1])
        out.append(PartitionCase(tuple(parts)))
    return out


def isotypical_bound(N: int, m_min: int) -> tuple[int, list[PartitionCase]]:
    """Maximum of the case bounds over all splittings of an ``N``-dimensional
    representation into at least ``m_min`` irreducible summands."""
    cases = partition_cases(N, m_min)
    for c in cases:
        for _, d in c.parts:
            jbar_gl(d)
    return max(c.bound for c in cases), cases


# -- order-based bound ----------------------------------------------------------

def abelian_exponent(alpha: int) -> int:
    """Least ``a`` with ``a(a+1) >= 2*alpha``."""
    if alpha < 0:
        raise BadParams("alpha must be >= 0")
    a = 0
    while a * (a + 1) < 2 * alpha:
        a += 1
    return a


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def guaranteed_abelian(n: int) -> int:
    """Order of an abelian subgroup every group of order ``n`` is sure to have."""
    if n < 1:
        raise BadParams("n must be >= 1")
    return max((p ** abelian_exponent(a) for p, a in factorize(n).items()), default=1)


def order_bound(n: int) -> int:
    return n // guaranteed_abelian(n)


def max_order_bound_upto(limit: int) -> tuple[int, int]:
    """``(max, argmax)`` of :func:`order_bound` over ``1..limit``; ties go to
    the smallest argument."""
    if limit < 1:
        raise BadParams("limit must be >= 1")
    n = np.arange(limit + 1, dtype=np.int64)
    g = np.ones(limit + 1, dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    for p in np.flatnonzero(is_prime):
        p = int(p)
        v = np.zeros(limit // p + 1, dtype=np.int64)  # valuation of k*p, k >= 0
        pk = p
        while pk <= limit:
            v[pk // p::pk // p] += 1
            pk *= p
        idx = np.arange(p, limit + 1, p)
        vals = v[idx // p]
        contrib = np.array([p ** abelian_exponent(int(a)) for a in range(int(vals.max()) + 1)], dtype=np.int64)
        np.maximum.at(g, idx, contrib[vals])
    bound = n[1:] // g[1:]
    k = int(np.argmax(bound))
    return int(bound[k]), k + 1


# -- closed-form geometric bounds ---------------------------------------------

def geom_bound(kind: str, **params) -> int:
    """``hurwitz(g)``, ``xiao(K2)``, ``namikawa(rho, h12)`` or ``minkowski4()``."""
    def need(name, lo):
        if name not in params:
            raise BadParams(f"{kind} needs parameter {name}")
        v = params[name]
        if not isinstance(v, int) or isinstance(v, bool) or v < lo:
            raise BadParams(f"{kind}: {name} must be an integer >= {lo}, got {v!r}")
        return v

    if kind == "hurwitz":
        return 84 * (need("g", 2) - 1)
    if kind == "xiao":
        return 42 ** 2 * need("K2", 1)
    if kind == "namikawa":
        return 20 - need("rho", 1) + need("h12", 0)
    if kind == "minkowski4":
        return 5760
    raise BadParams(f"unknown bound kind {kind!r}")


# -- ledger -------------------------------------------------------------------

_OPS = {"add", "sub", "mul", "div", "floor", "max", "min", "pow", "fact", "table", "param"}


def evaluate(expr) -> int:
    """Evaluate a nested-array expression with exact integer arithmetic."""
    if isinstance(expr, bool):
        raise LedgerError(f"boolean in expression: {expr!r}")
    if isinstance(expr, int):
        return expr
    if not isinstance(expr, list) or not expr or expr[0] not in _OPS:
        raise LedgerError(f"malformed expression: {expr!r}")
    op, *args = expr
    if op == "param":
        if len(args) != 2 or not isinstance(args[0], str):
            raise LedgerError(f"param needs a name and a value: {expr!r}")
        return evaluate(args[1])
    if op == "table":
        return jbar_gl(evaluate(args[0]))
    vals = [evaluate(a) for a in args]
    if op == "add":
        return sum(vals)
    if op == "mul":
        return math.prod(vals)
    if op in ("max", "min"):
        if not vals:
            raise LedgerError(f"{op} of nothing")
        return max(vals) if op == "max" else min(vals)
    if op == "fact":
        if len(vals) != 1 or vals[0] < 0:
            raise LedgerError(f"bad factorial: {expr!r}")
        return math.factorial(vals[0])
    if len(vals) != 2:
        raise LedgerError(f"{op} takes two arguments: {expr!r}")
    a, b = vals
    if op == "sub":
        return a - b
    if op == "pow":
        if b < 0:
            raise LedgerError("negative exponent")
        return a ** b
    if b == 0:
        raise LedgerError("division by zero")
    if op == "div":
        if a % b:
            raise LedgerError(f"inexact division {a} / {b}")
        return a // b
    return a // b  # floor


def render(expr) -> str:
    if isinstance(expr, int):
        return str(expr)
    op, *args = expr
    if op == "param":
        return f"{args[0]}={render(args[1])}"
    if op == "table":
        return f"Jbar(GL_{render(args[0])})"
    if op == "fact":
        return f"{render(args[0])}!"
    sym = {"add": " + ", "sub": " - ", "mul": "*", "div": "/", "floor": " // ", "pow": "^"}
    if op in sym:
        inner = sym[op].join(render(a) for a in args)
        return f"({inner})"
    return f"{op}(" + ", ".join(render(a) for a in args) + ")"


@dataclass(frozen=True)
class LedgerEntry:
    id: str
    description: str
    expr: list
    expected: int
    citation: str

    def value(self) -> int:
        return evaluate(self.expr)


@dataclass
class LedgerRow:
    entry: LedgerEntry
    value: int | None
    ok: bool
    error: str | None = None


@dataclass
class LedgerReport:
    rows: list[LedgerRow]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def failures(self) -> list[str]:
        return [r.entry.id for r in self.rows if not r.ok]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "count": len(self.rows),
            "failures": self.failures,
            "entries": [{"id": r.entry.id, "expected": r.entry.expected, "value": r.value,
                         "ok": r.ok, "citation": r.entry.citation, "error": r.error} for r in self.rows],
        }


def default_ledger_path() -> Path:
    return Path(str(resources.files("jordanlab") / "data" / "ledger.json"))


def load_ledger(path: str | Path | None = None) -> list[LedgerEntry]:
    with open(path or default_ledger_path()) as fh:
        raw = json.load(fh)
    entries = []
    seen = set()
    for e in raw["entries"]:
        if e["id"] in seen:
            raise LedgerError(f"duplicate ledger id {e['id']!r}")
        seen.add(e["id"])
        entries.append(LedgerEntry(e["id"], e["description"], e["expr"], int(e["expected"]), e["citation"]))
    return entries


def ledger_check(entries: list[LedgerEntry] | None = None) -> LedgerReport:
    if entries is None:
        entries = load_ledger()
    rows = []
    for e in entries:
        try:
            v = e.value()
        except (LedgerError, TableMiss) as exc:
            rows.append(LedgerRow(e, None, False, str(exc)))
            continue
        rows.append(LedgerRow(e, v, v == e.expected, None if v == e.expected else f"expected {e.expected}, got {v}"))
    return LedgerReport(rows)
