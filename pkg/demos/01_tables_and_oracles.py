"""
Operation tables and query oracles
==================================

A finite binary operation is just an n x n table of element indices. This
walk-through builds a few canonical tables, hides one behind a counting
oracle, and pokes at it.
"""

import numpy as np

from opquery import (
    AbelianSpec,
    build_abelian,
    build_max_chain,
    check_axioms,
    new_hidden,
    oracle_for,
)

# the cyclic group of order 6, as a plain table: entry [x, y] is x*y
z6 = build_abelian([6])
print("cyclic order 6:")
print(z6.entries)
print("abelian group axioms hold:", check_axioms(z6, "abelian_group"))

# max(x, y) on a chain is associative and commutative but has no inverses
mx = build_max_chain(4)
print("\nmax on a 4-chain:")
print(mx.entries)
print("semigroup:", check_axioms(mx, "semigroup"), "| group:", check_axioms(mx, "group"))

# hide a relabeled copy behind an oracle; the seed fixes the permutation
inst = new_hidden(AbelianSpec((6,)), seed=42)
oracle = oracle_for(inst)
print("\nhidden instance: n =", oracle.n, "| queries so far:", oracle.count)

z = oracle.query(2, 5)
print("asked 2*5, got", z, "| count is now", oracle.count)

# the transcript records every (x, y, answer) triple in order
oracle.query(0, 0)
oracle.query(5, 2)
print("transcript:", oracle.transcript)

# commutativity shows through the relabeling
assert oracle.transcript[0][2] == oracle.transcript[2][2]
print("2*5 == 5*2, as it must in an abelian group")

# the truth is available on the instance for checking, not for peeking
print("\nhidden table is a relabeling of the canonical one:",
      np.array_equal(inst.truth.entries, inst.canonical.relabel(inst.perm).entries))
