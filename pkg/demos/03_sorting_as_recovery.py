"""
Sorting in disguise
===================

Recovering the table of max(x, y) under an unknown labeling is exactly
comparison sorting: each query x*y answers which of the two is bigger.
So the classic results transfer both ways. Merge sort gives the upper
bound n ceil(lg n) - 2^ceil(lg n) + 1, and the information-theoretic
log2(n!) is a floor no method can beat.
"""

import itertools
import math

from opquery import (
    MaxChainSpec,
    Oracle,
    build_max_chain,
    merge_sort_worst_case,
    new_hidden,
    oracle_for,
    recover_max_chain,
)

# one run on 10 elements
inst = new_hidden(MaxChainSpec(10), seed=0)
oracle = oracle_for(inst)
result = recover_max_chain(oracle)
print("n = 10:", result.queries_used, "queries, bound is", merge_sort_worst_case(10))
assert result.table == inst.truth

# the worst case bound is tight: run every labeling for small n
print("\nn   worst  bound  avg     log2(n!)")
for n in range(2, 9):
    canonical = build_max_chain(n)
    costs = []
    for perm in itertools.permutations(range(n)):
        o = Oracle(canonical.relabel(perm))
        costs.append(recover_max_chain(o).queries_used)
    worst, avg = max(costs), sum(costs) / len(costs)
    print(f"{n}   {worst:4d}  {merge_sort_worst_case(n):4d}   {avg:6.3f}  {math.log2(math.factorial(n)):7.3f}")

# the average stays above log2(n!) because the query tree has n! leaves
# and two-way answers; no clever ordering of comparisons can dodge that
