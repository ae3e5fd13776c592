"""Canonical table construction and axiom checks."""

import numpy as np
import pytest

from opquery import (
    AbelianSpec,
    MaxChainSpec,
    OpTable,
    RingSpec,
    ValidationError,
    abelian_invariant_factorizations,
    build_abelian,
    build_gf,
    build_max_chain,
    build_ring,
    build_zn_ring,
    check_axioms,
    count_automorphisms,
    count_ring_automorphisms,
    distributive_laws_hold,
    euler_phi,
    invariant_factors_from_cyclic,
    is_prime,
)
from opquery.algebra import (
    CONWAY_POLYNOMIALS,
    are_isomorphic,
    canonical_table,
    element_order,
    identity_of,
    is_cyclic_group,
    ring_product,
)


def test_optable_rejects_bad_shapes():
    with pytest.raises(ValidationError):
        OpTable(np.zeros((2, 3), dtype=np.int64))
    with pytest.raises(ValidationError):
        OpTable(np.array([[0, 2], [1, 0]]))  # entry 2 out of range for n=2
    with pytest.raises(ValidationError):
        OpTable(np.zeros((0, 0), dtype=np.int64))


def test_optable_equality_and_hash():
    a = build_abelian([4])
    b = build_abelian([4])
    assert a == b and hash(a) == hash(b)
    assert a != build_abelian([2, 2])


def test_relabel_is_conjugation():
    t = build_abelian([6])
    perm = (2, 0, 4, 1, 5, 3)
    r = t.relabel(perm)
    for x in range(6):
        for y in range(6):
            assert r[perm[x], perm[y]] == perm[t[x, y]]


def test_relabel_identity_perm_is_noop():
    t = build_abelian([2, 4])
    assert t.relabel(tuple(range(8))) == t


def test_abelian_spec_validation():
    with pytest.raises(ValidationError):
        AbelianSpec((3, 2))  # 3 does not divide 2
    with pytest.raises(ValidationError):
        AbelianSpec((1, 4))
    assert AbelianSpec((2, 2, 4)).n == 16
    assert AbelianSpec(()).n == 1


def test_invariant_factors_from_cyclic():
    assert invariant_factors_from_cyclic([2, 3]) == (6,)
    assert invariant_factors_from_cyclic([4, 6]) == (2, 12)
    assert invariant_factors_from_cyclic([2, 2]) == (2, 2)
    assert invariant_factors_from_cyclic([]) == ()


def test_abelian_invariant_factorizations_counts():
    # number of abelian groups of order n, for small n
    expected = {1: 1, 2: 1, 4: 2, 8: 3, 12: 2, 16: 5}
    for n, count in expected.items():
        assert len(abelian_invariant_factorizations(n)) == count
    total = sum(len(abelian_invariant_factorizations(n)) for n in range(1, 17))
    assert total == 25


def test_build_abelian_axioms():
    for factors in [(), (2,), (5,), (2, 2), (2, 4), (3, 3), (2, 2, 2)]:
        t = build_abelian(list(factors))
        assert check_axioms(t, "abelian_group")
        assert identity_of(t) == 0


def test_build_abelian_z6_isomorphic_to_z2xz3():
    assert are_isomorphic(build_abelian([6]), canonical_table(AbelianSpec(invariant_factors_from_cyclic([2, 3])))) is not None


def test_element_orders_in_z12():
    t = build_abelian([12])
    orders = [element_order(t, x) for x in range(12)]
    assert orders == [1, 12, 6, 4, 3, 12, 2, 12, 3, 4, 6, 12]


def test_max_chain_table():
    t = build_max_chain(4)
    assert t[1, 3] == 3 and t[3, 1] == 3 and t[2, 2] == 2
    assert check_axioms(t, "semigroup")
    assert not check_axioms(t, "group")
    assert MaxChainSpec(1).n == 1
    with pytest.raises(ValidationError):
        MaxChainSpec(0)


def test_check_axioms_rejects_non_associative():
    arr = np.array([[0, 1], [1, 1]], dtype=np.int64)
    assert check_axioms(OpTable(arr), "semigroup")
    arr2 = np.array([[1, 0], [0, 0]], dtype=np.int64)
    assert not check_axioms(OpTable(arr2), "semigroup")
    assert check_axioms(OpTable(arr2), "groupoid")


def test_is_cyclic_group():
    assert is_cyclic_group(build_abelian([8]))
    assert not is_cyclic_group(build_abelian([2, 4]))
    assert not is_cyclic_group(build_max_chain(4))


def test_number_theory_helpers():
    assert [m for m in range(2, 20) if is_prime(m)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert not is_prime(1)
    assert euler_phi(1) == 1
    assert euler_phi(12) == 4
    assert euler_phi(11) == 10


def test_zn_ring():
    rt = build_zn_ring(6)
    assert rt.mul[2, 5] == 4
    assert check_axioms(rt.add, "abelian_group")
    assert distributive_laws_hold(rt.add.entries, rt.mul.entries)


def test_gf_field_properties():
    for (p, r) in [(2, 2), (2, 3), (3, 2), (2, 4)]:
        rt = build_gf(p, r)
        q = p**r
        assert rt.n == q
        assert check_axioms(rt.add, "abelian_group")
        # no zero divisors: exactly (q-1)^2 nonzero products
        assert int(np.count_nonzero(rt.mul.entries)) == (q - 1) ** 2
        # multiplicative identity exists
        assert identity_of(rt.mul) is not None


def test_gf_prime_matches_zn():
    assert build_gf(5, 1).mul == build_zn_ring(5).mul


def test_conway_constants_cover_stated_range():
    # every prime power q = p^r with r >= 2 and q <= 64
    needed = {(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (5, 2), (7, 2)}
    assert needed <= set(CONWAY_POLYNOMIALS)
    for (p, r), coeffs in CONWAY_POLYNOMIALS.items():
        assert len(coeffs) == r + 1 and coeffs[-1] == 1
        assert all(0 <= c < p for c in coeffs)


def test_ring_product_axioms():
    a = build_zn_ring(2)
    b = build_gf(3, 1)
    rt = ring_product(a, b)
    assert rt.n == 6
    assert check_axioms(rt.add, "abelian_group")
    assert distributive_laws_hold(rt.add.entries, rt.mul.entries)


def test_ring_spec_parsing():
    assert RingSpec("z4").n == 4
    assert RingSpec("gf8").n == 8
    assert RingSpec("z2xgf9").n == 18
    with pytest.raises(ValidationError):
        RingSpec("gf6")  # not a prime power
    with pytest.raises(ValidationError):
        RingSpec("q5")


def test_build_ring_names_normalize():
    assert build_ring("Z4") == build_ring("z4")
    assert build_ring(RingSpec("gf4")) == build_ring("gf4")


def test_automorphism_counts():
    assert count_automorphisms(build_abelian([4])) == 2
    assert count_automorphisms(build_abelian([2, 2])) == 6
    assert count_automorphisms(build_abelian([5])) == 4
    assert count_ring_automorphisms(build_gf(2, 2)) == 2
    assert count_ring_automorphisms(build_gf(2, 3)) == 3
    assert count_ring_automorphisms(build_zn_ring(8)) == 1


def test_are_isomorphic_finds_witness():
    a = build_abelian([4])
    perm = (3, 1, 0, 2)
    b = a.relabel(perm)
    w = are_isomorphic(a, b)
    assert w is not None
    assert a.relabel(w) == b
    assert are_isomorphic(a, build_abelian([2, 2])) is None
