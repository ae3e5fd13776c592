"""Exhaustive order-11 sweep, feature gated: OPQUERY_EXHAUSTIVE=1.

Runs the 8-query procedure against every one of the 3 991 680 candidate
operations of order 11. Each distinct operation covers all relabelings that
produce it, and the procedure is deterministic per table, so this is the
full labeling sweep with the tenfold duplication removed. Takes a few
minutes single threaded.
"""

import os

import pytest

from opquery import OpTable, Oracle, recover_order11
from opquery.treesearch import iter_cyclic_prime_tables

pytestmark = pytest.mark.skipif(
    os.environ.get("OPQUERY_EXHAUSTIVE") != "1",
    reason="set OPQUERY_EXHAUSTIVE=1 to run the full order-11 sweep (~minutes)",
)


def test_every_order_11_operation_recovered_in_8_queries():
    count = 0
    for raw in iter_cyclic_prime_tables(11):
        truth = OpTable(raw)
        o = Oracle(truth)
        res = recover_order11(o)
        assert res.queries_used == 8, count
        assert res.table == truth, count
        count += 1
    assert count == 3_991_680
