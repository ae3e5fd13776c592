"""Query tree enumeration, verification, and exact minimax search."""

import math

import numpy as np
import pytest

from opquery import (
    CapabilityError,
    Leaf,
    Node,
    OperationSet,
    ValidationError,
    build_abelian,
    build_max_chain,
    enumerate_orbit,
    minimal_worst_case,
    render_tree,
    tree_from_dict,
    tree_stats,
    tree_to_dict,
    verify_query_tree,
)
from opquery.treesearch import iter_cyclic_prime_tables


def test_enumerate_orbit_sizes():
    assert len(enumerate_orbit(build_abelian([4]))) == 12
    assert len(enumerate_orbit(build_abelian([2, 2]))) == 4
    assert len(enumerate_orbit(build_max_chain(3))) == 6
    assert len(enumerate_orbit(build_abelian([]))) == 1


def test_enumerate_orbit_is_distinct_and_contains_canonical():
    t = build_abelian([4])
    ops = enumerate_orbit(t)
    raw = {bytes(op.tobytes()) for op in ops.tables}
    assert len(raw) == 12
    assert t.entries.astype(ops.tables.dtype).tobytes() in raw


def test_enumerate_orbit_cap():
    with pytest.raises(CapabilityError):
        enumerate_orbit(build_max_chain(9))


def test_cyclic_prime_fast_path_matches_brute():
    for p in (2, 3, 5, 7):
        fast = enumerate_orbit(build_abelian([p]))
        count = p * math.factorial(p - 2)
        assert len(fast) == count
        brute = {op.tobytes() for op in fast.tables}
        assert len(brute) == count


def test_iter_cyclic_prime_counts():
    assert sum(1 for _ in iter_cyclic_prime_tables(3)) == 3
    assert sum(1 for _ in iter_cyclic_prime_tables(5)) == 30
    assert sum(1 for _ in iter_cyclic_prime_tables(7)) == 840


def test_operation_set_validation():
    t = build_abelian([3]).entries
    with pytest.raises(ValidationError):
        OperationSet(np.stack([t, t]))  # duplicates
    ops = OperationSet(t[None, :, :])
    assert len(ops) == 1 and ops.n == 3


# --- hand-built reference trees -------------------------------------------

def three_element_tree():
    """Depth profile {2,2,3,3,3,3} over the six max tables of a 3-chain.

    Root asks 0*1; each answer narrows the order of the remaining pair.
    """
    return Node(
        (0, 1),
        {
            0: Node((0, 2), {0: Node((1, 2), {1: Leaf(), 2: Leaf()}), 2: Leaf()}),
            1: Node((0, 2), {0: Leaf(), 2: Node((1, 2), {1: Leaf(), 2: Leaf()})}),
        },
    )


def cyclic_four_tree():
    """Twelve leaves, all at depth 2, over the relabelings of a cyclic group
    of order 4: the root asks 0*0, the reply pins down enough structure that
    one more query decides.
    """
    return Node(
        (0, 0),
        {
            0: Node((1, 1), {0: Leaf(), 2: Leaf(), 3: Leaf()}),
            1: Node((0, 1), {0: Leaf(), 2: Leaf(), 3: Leaf()}),
            2: Node((0, 2), {0: Leaf(), 1: Leaf(), 3: Leaf()}),
            3: Node((0, 3), {0: Leaf(), 1: Leaf(), 2: Leaf()}),
        },
    )


def test_three_element_reference_tree():
    ops = enumerate_orbit(build_max_chain(3))
    v = verify_query_tree(three_element_tree(), ops)
    assert v.ok, v.failure
    assert sorted(v.depths.values()) == [2, 2, 3, 3, 3, 3]
    worst, avg = tree_stats(three_element_tree(), ops)
    assert worst == 3
    assert avg == pytest.approx(16 / 6)


def test_cyclic_four_reference_tree():
    ops = enumerate_orbit(build_abelian([4]))
    v = verify_query_tree(cyclic_four_tree(), ops)
    assert v.ok, v.failure
    assert v.leaf_count == 12
    assert set(v.depths.values()) == {2}
    worst, avg = tree_stats(cyclic_four_tree(), ops)
    assert worst == 2 and avg == 2.0


def test_verify_rejects_incomplete_tree():
    ops = enumerate_orbit(build_max_chain(3))
    stub = Node((0, 1), {0: Leaf(), 1: Leaf()})
    v = verify_query_tree(stub, ops)
    assert not v.ok and v.failure is not None


def test_verify_rejects_non_separating_tree():
    ops = enumerate_orbit(build_abelian([4]))
    v = verify_query_tree(Leaf(), ops)
    assert not v.ok


def test_tree_stats_raises_on_bad_tree():
    ops = enumerate_orbit(build_max_chain(3))
    with pytest.raises(ValidationError):
        tree_stats(Leaf(), ops)


def test_tree_serialization_round_trip():
    tree = three_element_tree()
    ops = enumerate_orbit(build_max_chain(3))
    # leaf ids are filled in during verification on the original tree
    d = tree_to_dict(tree)
    back = tree_from_dict(d)
    assert tree_to_dict(back) == d
    assert verify_query_tree(back, ops).ok
    assert d["query"] == [0, 1]
    assert set(d["children"]) == {"0", "1"}


def test_render_tree_mentions_queries():
    text = render_tree(three_element_tree())
    assert "0*1?" in text and "leaf" in text


def test_minimal_worst_case_values():
    assert minimal_worst_case(enumerate_orbit(build_abelian([4])))[0] == 2
    assert minimal_worst_case(enumerate_orbit(build_max_chain(3)))[0] == 3
    assert minimal_worst_case(enumerate_orbit(build_max_chain(4)))[0] == 5


def test_minimal_worst_case_witness_verifies():
    for canonical in (build_abelian([4]), build_max_chain(3), build_max_chain(4), build_abelian([2, 2])):
        ops = enumerate_orbit(canonical)
        depth, tree = minimal_worst_case(ops)
        v = verify_query_tree(tree, ops)
        assert v.ok
        worst, avg = tree_stats(tree, ops)
        assert worst == depth
        # no tree can beat the information floor
        assert avg >= math.log(len(ops), ops.n) - 1e-9


def test_minimal_worst_case_deterministic():
    ops = enumerate_orbit(build_max_chain(3))
    d1, t1 = minimal_worst_case(ops)
    d2, t2 = minimal_worst_case(ops)
    assert d1 == d2 and tree_to_dict(t1) == tree_to_dict(t2)


def test_minimal_worst_case_budget():
    ops = enumerate_orbit(build_abelian([5]))  # 30 candidates
    with pytest.raises(CapabilityError):
        minimal_worst_case(ops, budget=10)


def test_minimal_worst_case_singleton():
    ops = enumerate_orbit(build_abelian([]))
    depth, tree = minimal_worst_case(ops)
    assert depth == 0 and isinstance(tree, Leaf)
