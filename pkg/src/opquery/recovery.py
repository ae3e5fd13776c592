"""Recovery algorithms: rebuild a hidden table within a proved query budget.

Each function takes an oracle promised to hide an operation from a specific
class and returns the full table plus the number of queries spent:

- abelian groups: exactly n queries, by growing a tower of subgroups
  (power chain of one element, then repeated coset extensions);
- cyclic groups of odd prime order: at most n - 2 queries (one power chain,
  with the tail of the chain forced instead of queried);
- cyclic groups of order 11: exactly 8 queries, a hand-tuned schedule whose
  final two answers pin down the four elements the power ladder missed;
- max tables of a total order: merge sort driven by the oracle, at most
  n*ceil(log2 n) - 2^ceil(log2 n) + 1 queries;
- ring multiplication over a known addition table: exactly |A|^2 queries
  for a greedy generating set A with |A| <= log2 n, everything else
  rebuilt bilinearly.

Oracle answers that contradict the promised class raise NotInClassError,
naming the query that broke the structure where one can be pinned down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Optional

import numpy as np

from .algebra import OpTable, check_axioms, identity_of, is_prime
from .errors import NotInClassError, ValidationError
from .oracle import Oracle, Transcript


@dataclass
class RecoveryResult:
    """Outcome of one recovery run against one oracle."""

    table: OpTable
    queries_used: int
    method: str
    trace: Optional[Transcript] = None
    # subgroup sizes after each tower step, and oracle cost per step
    # (tower methods only; each step costs exactly its size increase)
    tower: Optional[tuple[int, ...]] = None
    step_queries: Optional[tuple[int, ...]] = None

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "n": self.table.n,
            "queries_used": self.queries_used,
            "table": self.table.entries.tolist(),
        }


def _cyclic_table(powers: list[int]) -> np.ndarray:
    """Table of a cyclic group given the element at each exponent."""
    n = len(powers)
    p = np.array(powers, dtype=np.int64)
    logs = np.empty(n, dtype=np.int64)
    logs[p] = np.arange(n)
    return p[(logs[:, None] + logs[None, :]) % n]


def recover_abelian(oracle: Oracle) -> RecoveryResult:
    """Recover a hidden abelian group table with exactly n queries.

    First walk the power chain of element 0: each step queries the previous
    power times 0 again, and the chain closes after exactly ord(0) queries,
    exposing the identity (the last element before the chain wraps) and the
    whole cyclic subgroup it generates. Then repeat: take the smallest
    element b outside the known subgroup H, chain b until some power lands
    inside H, and query s*b^i for every non-identity s in H and every
    0 < i < chain length. Those answers name every element of the enlarged
    subgroup, and all remaining products follow from the bookkeeping
    (s*b^i)(t*b^j) = (st)b^(i+j), folding b^chain-length back into H when
    the exponents overflow. Each step costs exactly the number of elements
    it adds, so the whole run telescopes to n queries.
    """
    n = oracle.n
    start = oracle.count
    table = np.full((n, n), -1, dtype=np.int64)

    a = 0
    chain = [a]
    seen = {a}
    while True:
        nxt = oracle.query(chain[-1], a)
        if nxt == a:
            break
        if nxt in seen:
            raise NotInClassError(f"query ({chain[-1]}, {a}) -> {nxt} revisits the power chain without closing it")
        chain.append(nxt)
        seen.add(nxt)
    k = len(chain)
    e = chain[-1]  # a^k * a = a forces a^k to be the identity
    powers = [e] + chain[:-1]  # powers[i] = a^i, powers[0] = identity
    for i in range(k):
        for j in range(k):
            table[powers[i], powers[j]] = powers[(i + j) % k]

    members = set(chain)
    tower = [k]
    step_queries = [k]

    while len(members) < n:
        step_start = oracle.count
        b = min(x for x in range(n) if x not in members)
        bchain = [b]
        while bchain[-1] not in members:
            nxt = oracle.query(bchain[-1], b)
            if nxt in bchain and nxt not in members:
                raise NotInClassError(f"query ({bchain[-1]}, {b}) -> {nxt} cycles outside the known subgroup")
            bchain.append(nxt)
            if len(bchain) > n:
                raise NotInClassError(f"coset chain of {b} exceeded {n} elements; not a group")
        k = len(bchain)  # first exponent whose power of b is back inside H
        b_back = bchain[-1]
        bpow = {i: bchain[i - 1] for i in range(1, k)}  # b^i for 0 < i < k

        # elem maps (subgroup element s, coset exponent i) to the element s*b^i
        base = sorted(members)
        elem: dict[tuple[int, int], int] = {}
        used = set(members)
        for s in base:
            elem[(s, 0)] = s
        for i in range(1, k):
            elem[(e, i)] = bpow[i]
            used.add(bpow[i])
        for s in base:
            if s == e:
                continue
            for i in range(1, k):
                z = oracle.query(s, bpow[i])
                if z in used:
                    raise NotInClassError(f"query ({s}, {bpow[i]}) -> {z} collides with an element already placed")
                used.add(z)
                elem[(s, i)] = z

        items = list(elem.items())
        for (s, i), xs in items:
            for (t, j), yt in items:
                st = int(table[s, t])
                if i + j < k:
                    z = elem[(st, i + j)]
                else:
                    z = elem[(int(table[st, b_back]), i + j - k)]
                table[xs, yt] = z

        members = set(used)
        tower.append(len(members))
        step_queries.append(oracle.count - step_start)

    if (table < 0).any():
        raise NotInClassError("subgroup tower closed before covering every element")
    queries = oracle.count - start
    assert queries == n, "tower accounting must telescope to n"
    return RecoveryResult(
        OpTable(table),
        queries,
        "abelian",
        trace=oracle.transcript[start:],
        tower=tuple(tower),
        step_queries=tuple(step_queries),
    )


def recover_abelian_prime(oracle: Oracle, n: Optional[int] = None) -> RecoveryResult:
    """Recover a group of odd prime order with at most n - 2 queries.

    Every non-identity element generates, so one power chain suffices; and
    the chain's last two queries are redundant. If 0*0 != 0 the chain
    0, 0^2, ..., 0^(n-1) costs n - 2 queries and the single leftover element
    must be the identity. If 0*0 = 0 then 0 is the identity, and the chain
    of element 1 can stop at 1^(n-2) because only one element remains for
    the exponent n - 1 slot. n = 2 has no such slack and is handed to
    the n-query method.
    """
    if n is None:
        n = oracle.n
    if n != oracle.n:
        raise ValidationError(f"declared n = {n} but oracle has n = {oracle.n}")
    if not is_prime(n):
        raise ValidationError(f"method needs prime order, got n = {n}")
    if n == 2:
        return recover_abelian(oracle)

    start = oracle.count
    a = 0
    asq = oracle.query(a, a)
    if asq != a:
        gen = a
        chain = [a, asq]  # a^1, a^2
        while len(chain) < n - 1:
            nxt = oracle.query(chain[-1], gen)
            if nxt in chain or nxt == asq:
                raise NotInClassError(f"query ({chain[-1]}, {gen}) -> {nxt} repeats a power; order of {gen} is not {n}")
            chain.append(nxt)
        rest = set(range(n)) - set(chain)
        if len(rest) != 1:
            raise NotInClassError("power chain failed to cover n - 1 distinct elements")
        e = rest.pop()  # a^n would be the identity; it is the only element left
        powers = [e] + chain
    else:
        e = a
        gen = 1
        chain = [gen]  # gen^1 .. gen^(n-2)
        while len(chain) < n - 2:
            nxt = oracle.query(chain[-1], gen)
            if nxt == e or nxt in chain:
                raise NotInClassError(f"query ({chain[-1]}, {gen}) -> {nxt} closes the chain early; order of {gen} is not {n}")
            chain.append(nxt)
        rest = set(range(n)) - {e} - set(chain)
        if len(rest) != 1:
            raise NotInClassError("power chain failed to cover n - 2 distinct elements")
        powers = [e] + chain + [rest.pop()]  # the leftover must be gen^(n-1)

    queries = oracle.count - start
    assert queries == n - 2
    return RecoveryResult(OpTable(_cyclic_table(powers)), queries, "prime", trace=oracle.transcript[start:])


_LEFTOVER_EXPONENTS = tuple(permutations((6, 8, 9, 10)))


def recover_order11(oracle: Oracle) -> RecoveryResult:
    """Recover a hidden group of order 11 with exactly 8 queries.

    Schedule: square element 0. If that moved, 0 generates; otherwise 0 is
    the identity and element 1 generates. Four more queries climb the ladder
    to the generator's powers 3, 4, 5 and 7, and when the identity is still
    unknown it falls out of power7 * power4 = power11. That names seven of
    the eleven elements, leaving four with exponents {6, 8, 9, 10} in some
    order. Querying b*c and b*d for three of the leftovers b, c, d gives two
    constraints, and exactly one of the 24 exponent assignments satisfies
    both (pairwise sums of {6,8,9,10} are distinct mod 11, so each answer
    pins the pair it came from). Any other survivor count means the oracle
    was not an order-11 group.
    """
    if oracle.n != 11:
        raise ValidationError(f"method is specific to n = 11, oracle has n = {oracle.n}")
    start = oracle.count
    q = oracle.query

    a = 0
    asq = q(a, a)
    if asq == a:
        e: Optional[int] = a  # only the identity squares to itself
        a1 = 1
        a2 = q(a1, a1)
    else:
        e = None
        a1 = a
        a2 = asq
    a3 = q(a2, a1)
    a4 = q(a3, a1)
    a5 = q(a4, a1)
    a7 = q(a5, a2)
    if asq != a:
        e = q(a7, a4)  # generator^11 = identity

    anchors = (e, a1, a2, a3, a4, a5, a7)
    if len(set(anchors)) != 7:
        raise NotInClassError("power ladder collided; oracle is not a cyclic group of order 11")
    powers: list[int] = [-1] * 11
    for exp, elt in zip((0, 1, 2, 3, 4, 5, 7), anchors):
        powers[exp] = elt  # type: ignore[assignment]

    rest = sorted(set(range(11)) - set(anchors))
    b, c, d, f = rest
    zbc = q(b, c)
    zbd = q(b, d)

    survivors = []
    for sb, sc, sd, sf in _LEFTOVER_EXPONENTS:
        powers[sb], powers[sc], powers[sd], powers[sf] = b, c, d, f
        if powers[(sb + sc) % 11] == zbc and powers[(sb + sd) % 11] == zbd:
            survivors.append((sb, sc, sd, sf))
    if len(survivors) != 1:
        raise NotInClassError(f"{len(survivors)} exponent assignments fit the final two answers; oracle is not an order-11 group")
    sb, sc, sd, sf = survivors[0]
    powers[sb], powers[sc], powers[sd], powers[sf] = b, c, d, f

    queries = oracle.count - start
    assert queries == 8
    return RecoveryResult(OpTable(_cyclic_table(powers)), queries, "eleven8", trace=oracle.transcript[start:])


def merge_sort_worst_case(n: int) -> int:
    """Worst-case comparison count of top-down merge sort on n items."""
    if n < 1:
        raise ValidationError("need n >= 1")
    if n == 1:
        return 0
    c = math.ceil(math.log2(n))
    return n * c - 2**c + 1


def _merge_sort(items: list[int], bigger) -> list[int]:
    if len(items) <= 1:
        return items
    mid = len(items) // 2
    left = _merge_sort(items[:mid], bigger)
    right = _merge_sort(items[mid:], bigger)
    merged: list[int] = []
    i = j = 0
    while i < len(left) and j < len(right):
        if bigger(left[i], right[j]) == right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return merged


def recover_max_chain(oracle: Oracle) -> RecoveryResult:
    """Recover a hidden max table by sorting the elements with oracle comparisons.

    Each query x*y must answer x or y (the larger); merge sort then needs at
    most n*ceil(log2 n) - 2^ceil(log2 n) + 1 of them, and the sorted order
    determines the whole table.
    """
    n = oracle.n
    start = oracle.count

    def bigger(x: int, y: int) -> int:
        z = oracle.query(x, y)
        if z != x and z != y:
            raise NotInClassError(f"query ({x}, {y}) -> {z} is outside the pair; not a max table")
        return z

    order = _merge_sort(list(range(n)), bigger)
    pos = np.empty(n, dtype=np.int64)
    pos[np.array(order)] = np.arange(n)
    idx = np.arange(n)
    table = np.where(pos[:, None] >= pos[None, :], idx[:, None], idx[None, :])
    queries = oracle.count - start
    if queries > merge_sort_worst_case(n):
        raise NotInClassError("comparison count exceeded the sorting bound; answers were inconsistent")
    return RecoveryResult(OpTable(table), queries, "maxchain", trace=oracle.transcript[start:])


# ---------------------------------------------------------------------------
# rings with a known addition table


def _closure_decompositions(add: OpTable) -> tuple[list[int], dict[int, tuple[int, ...]]]:
    """Greedy generating set of an abelian group plus one expression of every

    element as a sum of generators (with repetition). Each adjoined generator
    at least doubles the closure, so at most log2 n generators come back.
    """
    if not check_axioms(add, "abelian_group"):
        raise ValidationError("known addition table is not an abelian group")
    n = add.n
    arr = add.entries
    e = identity_of(add)
    assert e is not None
    decomp: dict[int, tuple[int, ...]] = {e: ()}
    gens: list[int] = []
    while len(decomp) < n:
        g = min(x for x in range(n) if x not in decomp)
        gens.append(g)
        base = dict(decomp)
        gj, j = g, 1
        while gj not in base:
            for h, dh in base.items():
                decomp[int(arr[h, gj])] = dh + (g,) * j
            gj, j = int(arr[gj, g]), j + 1
        assert len(decomp) == len(base) * j
    return gens, decomp


def greedy_generating_set(add: OpTable) -> list[int]:
    """Generators of an abelian group table, greedily smallest-index first."""
    gens, _ = _closure_decompositions(add)
    return gens


def recover_ring_multiplication(add: OpTable, oracle: Oracle) -> RecoveryResult:
    """Recover a hidden multiplication that distributes over a known addition.

    Queries exactly the |A|^2 ordered pairs of a greedy generating set A of
    the additive group, then expands every product bilinearly: with
    x = sum of generators a_i and y = sum of b_j, x*y is the sum of all
    queried a_i*b_j. A query-free spot-check confirms the rebuilt table
    distributes over the given addition.
    """
    if add.n != oracle.n:
        raise ValidationError(f"addition table has n = {add.n}, oracle has n = {oracle.n}")
    gens, decomp = _closure_decompositions(add)
    n = add.n
    arr = add.entries
    e = identity_of(add)
    start = oracle.count

    prod: dict[tuple[int, int], int] = {}
    for ga in gens:
        for gb in gens:
            prod[(ga, gb)] = oracle.query(ga, gb)

    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        dx = decomp[x]
        for y in range(n):
            acc = e
            for gx in dx:
                for gy in decomp[y]:
                    acc = int(arr[acc, prod[(gx, gy)]])
            table[x, y] = acc

    if not _distributes(arr, table):
        raise NotInClassError("rebuilt multiplication does not distribute over the known addition")
    queries = oracle.count - start
    assert queries == len(gens) ** 2
    return RecoveryResult(OpTable(table), queries, "ringmul", trace=oracle.transcript[start:])


def _distributes(add: np.ndarray, mul: np.ndarray) -> bool:
    from .algebra import distributive_laws_hold

    return distributive_laws_hold(add, mul)


def recover_ring_full(oracle_add: Oracle, oracle_mul: Oracle) -> tuple[RecoveryResult, RecoveryResult]:
    """Recover both ring tables: addition in n queries, then multiplication

    in |A|^2 <= (log2 n)^2, so n + (log2 n)^2 in total.
    """
    if oracle_add.n != oracle_mul.n:
        raise ValidationError("addition and multiplication oracles disagree on n")
    add_result = recover_abelian(oracle_add)
    mul_result = recover_ring_multiplication(add_result.table, oracle_mul)
    return add_result, mul_result


# ---------------------------------------------------------------------------
# budgets

METHODS = ("abelian", "prime", "eleven8", "maxchain", "ringmul", "ringfull")


def query_budget(method: str, n: int) -> float:
    """The proved query budget each method promises on an in-class oracle of size n."""
    if n < 1:
        raise ValidationError("need n >= 1")
    if method == "abelian":
        return float(n)
    if method == "prime":
        return float(n - 2 if n >= 3 else n)
    if method == "eleven8":
        if n != 11:
            raise ValidationError("eleven8 applies to n = 11 only")
        return 8.0
    if method == "maxchain":
        return float(merge_sort_worst_case(n))
    if method == "ringmul":
        return math.log2(n) ** 2 if n > 1 else 0.0
    if method == "ringfull":
        return n + math.log2(n) ** 2 if n > 1 else 1.0
    raise ValidationError(f"unknown method {method!r}; choose from {METHODS}")
