import json
import math
import time
from collections import Counter
from pathlib import Path

import pytest

from jordanlab import caselaw
from jordanlab.caselaw import (LedgerEntry, abelian_exponent, evaluate, geom_bound, guaranteed_abelian,
                               isotypical_bound, jbar_gl, ledger_check, load_ledger, max_order_bound_upto,
                               order_bound, partition_cases)
from jordanlab.errors import BadParams, LedgerError, TableMiss

GOLDEN = Path(__file__).parent / "golden" / "orderbound_79380.json"


# -- table and isotypical bound ----------------------------------------------------

def test_jbar_table():
    assert [jbar_gl(d) for d in range(1, 6)] == [1, 12, 72, 960, 960]
    with pytest.raises(TableMiss):
        jbar_gl(6)


def test_isotypical_7_4():
    t = time.perf_counter()
    best, cases = isotypical_bound(7, 4)
    assert time.perf_counter() - t < 1
    assert best == 10368
    assert Counter(c.bound for c in cases) == Counter([5040, 1440, 1728, 1728, 5760, 10368, 1728])
    assert all(c.dimension == 7 and c.summands >= 4 for c in cases)


def test_isotypical_small_cases():
    best, cases = isotypical_bound(7, 7)
    assert best == 5040 and len(cases) == 1
    best, cases = isotypical_bound(2, 2)
    assert best == 2 and [c.parts for c in cases] == [((2, 1),)]


def test_isotypical_needs_table_beyond_five():
    with pytest.raises(TableMiss):
        isotypical_bound(7, 2)


def test_isotypical_bad_params():
    for N, m in [(0, 1), (3, 0), (3, 4)]:
        with pytest.raises(BadParams):
            partition_cases(N, m)


def _compositions(n):
    if n == 0:
        yield ()
        return
    for k in range(1, n + 1):
        for rest in _compositions(n - k):
            yield (k,) + rest


@pytest.mark.parametrize("N", range(1, 10))
def test_partition_enumeration_matches_compositions(N):
    for m_min in range(1, N + 1):
        naive = {tuple(sorted(Counter(c).items())) for c in _compositions(N) if len(c) >= m_min}
        ours = {tuple(sorted((d, m) for m, d in case.parts)) for case in partition_cases(N, m_min)}
        assert ours == naive
        assert len(partition_cases(N, m_min)) == len(naive)


# -- order bound -----------------------------------------------------------------

def test_abelian_exponent_is_least_solution():
    for alpha in range(0, 65):
        a = abelian_exponent(alpha)
        assert a * (a + 1) >= 2 * alpha
        assert a == 0 or (a - 1) * a < 2 * alpha


def test_order_bound_examples():
    assert guaranteed_abelian(60) == 5 and order_bound(60) == 12
    for p in [2, 3, 5, 7, 11, 7919]:
        assert order_bound(p) == 1
    assert order_bound(1) == 1
    assert guaranteed_abelian(79380) == 49 and order_bound(79380) == 1620


def test_guaranteed_abelian_at_least_each_prime():
    for n in range(1, 3000):
        for p in caselaw.factorize(n):
            assert guaranteed_abelian(n) >= p


def test_factorize():
    for n in range(1, 2000):
        f = caselaw.factorize(n)
        assert math.prod(p ** a for p, a in f.items()) == n


def test_sweep_golden_and_ceiling():
    golden = json.loads(GOLDEN.read_text())
    t = time.perf_counter()
    mx, arg = max_order_bound_upto(golden["limit"])
    assert time.perf_counter() - t < 5
    assert (mx, arg) == (golden["max"], golden["argmax"])
    assert mx <= 9922


def test_sweep_matches_pointwise():
    limit = 5000
    values = [order_bound(n) for n in range(1, limit + 1)]
    mx = max(values)
    assert max_order_bound_upto(limit) == (mx, values.index(mx) + 1)
    assert max_order_bound_upto(1) == (1, 1)


# -- closed-form bounds -------------------------------------------------------------

def test_geom_bounds():
    assert geom_bound("hurwitz", g=3) == 168
    assert geom_bound("xiao", K2=45) == 79380
    assert geom_bound("namikawa", rho=1, h12=14) == 33
    assert geom_bound("minkowski4") == 5760
    with pytest.raises(BadParams):
        geom_bound("hurwitz", g=1)
    with pytest.raises(BadParams):
        geom_bound("xiao")
    with pytest.raises(BadParams):
        geom_bound("nonsense")


# -- ledger ------------------------------------------------------------------------

def test_expression_language():
    assert evaluate(["mul", 2, ["pow", 12, 2]]) == 288
    assert evaluate(["mul", ["fact", 3], ["pow", ["table", 2], 3]]) == 10368
    assert evaluate(["max", 1, ["param", "N", 16], 3]) == 16
    assert evaluate(["floor", 79380, 8]) == 9922
    assert evaluate(["div", 160, 4]) == 40
    with pytest.raises(LedgerError):
        evaluate(["div", 7, 2])
    with pytest.raises(LedgerError):
        evaluate(["unknown", 1])
    with pytest.raises(LedgerError):
        evaluate(True)


def test_shipped_ledger_passes():
    t = time.perf_counter()
    rep = ledger_check()
    assert time.perf_counter() - t < 1
    assert rep.ok, rep.failures
    assert len(rep.rows) >= 30
    values = {r.value for r in rep.rows}
    for v in [288, 82944, 3456, 10368, 107495424, 2304, 4608, 9504, 1920, 960, 720, 504, 2016,
              5760, 9922, 40]:
        assert v in values


def test_named_ledger_entries():
    by_id = {e.id: e for e in load_ledger()}
    assert by_id["cr2-weak"].value() == 288
    assert by_id["cr3-weak"].value() == 10368
    assert by_id["cr3-strong"].value() == 107495424
    assert all(e.citation for e in by_id.values())


def test_ledger_reports_mismatch():
    bad = LedgerEntry("typo", "deliberately wrong", ["mul", 2, 144], 289, "test")
    rep = ledger_check([bad])
    assert not rep.ok and rep.failures == ["typo"]
    assert rep.to_json()["entries"][0]["value"] == 288
