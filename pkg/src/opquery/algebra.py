"""Finite operation tables: builders, axiom checks, and symmetry counting.

Everything operates on a dense carrier {0, ..., n-1}. A binary operation is
stored as an n x n table of element indices, immutable once built. The three
table families used throughout are finite abelian groups (given by their
invariant factor chain), the "later element wins" max table of a chain, and
finite commutative rings (Z_n, GF(p^r), and direct products of those).

Symmetry counts (automorphisms, isomorphisms) are brute force over
permutations, guarded by a cap, with a totient fast path for cyclic groups.
Counts are exact Python integers throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Literal, Optional, Sequence, Union

import numpy as np

from .errors import CapabilityError, ValidationError

# Permutation brute force is n! * n^2 work; past this it needs an explicit cap.
BRUTE_FORCE_CAP = 8


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True, eq=False)
class OpTable:
    """An immutable n x n operation table over element indices 0..n-1.

    ``t[x, y]`` is the product of x and y. The entries array is a read-only
    int64 numpy array; sharing one table between threads is safe.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValidationError(f"operation table must be square, got shape {arr.shape}")
        n = arr.shape[0]
        if n < 1:
            raise ValidationError("operation table needs at least one element")
        if arr.min() < 0 or arr.max() >= n:
            raise ValidationError(f"table entries must be element indices in [0, {n})")
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    def __getitem__(self, key: tuple[int, int]) -> int:
        x, y = key
        return int(self.entries[x, y])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OpTable) and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.n, self.entries.tobytes()))

    def relabel(self, perm: Sequence[int]) -> "OpTable":
        """The same operation carried through the renaming x -> perm[x]."""
        p = _as_permutation(perm, self.n)
        inv = np.empty(self.n, dtype=np.int64)
        inv[p] = np.arange(self.n)
        return OpTable(p[self.entries[np.ix_(inv, inv)]])

    def to_dict(self) -> dict:
        return {"n": self.n, "table": self.entries.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "OpTable":
        t = cls(np.array(d["table"], dtype=np.int64))
        if t.n != int(d["n"]):
            raise ValidationError("declared n does not match table shape")
        return t


def _as_permutation(perm: Sequence[int], n: int) -> np.ndarray:
    p = np.asarray(perm, dtype=np.int64)
    if p.shape != (n,) or not np.array_equal(np.sort(p), np.arange(n)):
        raise ValidationError(f"not a permutation of 0..{n - 1}: {perm!r}")
    return p


@dataclass(frozen=True, eq=False)
class RingTables:
    """Addition and multiplication tables over one carrier.

    Construction checks the ring laws that every consumer here relies on:
    addition is an abelian group and multiplication distributes over it
    from both sides.
    """

    add: OpTable
    mul: OpTable

    def __post_init__(self) -> None:
        if self.add.n != self.mul.n:
            raise ValidationError("addition and multiplication tables differ in size")
        if not check_axioms(self.add, "abelian_group"):
            raise ValidationError("addition table is not an abelian group")
        if not distributive_laws_hold(self.add.entries, self.mul.entries):
            raise ValidationError("multiplication does not distribute over addition")

    @property
    def n(self) -> int:
        return self.add.n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RingTables) and self.add == other.add and self.mul == other.mul

    def __hash__(self) -> int:
        return hash((self.add, self.mul))

    def relabel(self, perm: Sequence[int]) -> "RingTables":
        return RingTables(self.add.relabel(perm), self.mul.relabel(perm))

    def to_dict(self) -> dict:
        return {"n": self.n, "add": self.add.entries.tolist(), "mul": self.mul.entries.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "RingTables":
        n = int(d["n"])
        return cls(
            OpTable.from_dict({"n": n, "table": d["add"]}),
            OpTable.from_dict({"n": n, "table": d["mul"]}),
        )


# ---------------------------------------------------------------------------
# structure specs


@dataclass(frozen=True)
class AbelianSpec:
    """Finite abelian group by invariant factors d1 | d2 | ... | dk, each >= 2.

    The empty chain is the trivial group. ``from_cyclic`` accepts any list of
    cyclic moduli and normalizes it to the invariant factor chain.
    """

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        fs = tuple(int(d) for d in self.factors)
        for d in fs:
            if d < 2:
                raise ValidationError(f"invariant factors must be >= 2, got {d}")
        for a, b in zip(fs, fs[1:]):
            if b % a != 0:
                raise ValidationError(f"invariant factor chain broken: {a} does not divide {b}")
        object.__setattr__(self, "factors", fs)

    @property
    def n(self) -> int:
        return math.prod(self.factors)

    @classmethod
    def from_cyclic(cls, moduli: Sequence[int]) -> "AbelianSpec":
        return cls(invariant_factors_from_cyclic(moduli))


@dataclass(frozen=True)
class MaxChainSpec:
    """Total order on n elements, operation = max of the two arguments."""

    n: int

    def __post_init__(self) -> None:
        if int(self.n) < 1:
            raise ValidationError("max chain needs n >= 1")
        object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True)
class RingSpec:
    """Commutative ring family by name: ``z<n>``, ``gf<q>``, or products

    joined with ``x`` such as ``z4xgf9``. Names are lowercased on ingestion.
    """

    name: str

    def __post_init__(self) -> None:
        norm = str(self.name).strip().lower()
        _ring_atoms(norm)  # validate eagerly
        object.__setattr__(self, "name", norm)

    @property
    def n(self) -> int:
        return math.prod(size for _, size in _ring_atoms(self.name))


StructureSpec = Union[AbelianSpec, MaxChainSpec, RingSpec]


def spec_to_dict(spec: StructureSpec) -> dict:
    if isinstance(spec, AbelianSpec):
        return {"kind": "abelian", "factors": list(spec.factors)}
    if isinstance(spec, MaxChainSpec):
        return {"kind": "maxchain", "n": spec.n}
    if isinstance(spec, RingSpec):
        return {"kind": "ring", "name": spec.name}
    raise ValidationError(f"unknown spec type: {type(spec).__name__}")


def spec_from_dict(d: dict) -> StructureSpec:
    kind = d.get("kind")
    if kind == "abelian":
        return AbelianSpec(tuple(d["factors"]))
    if kind == "maxchain":
        return MaxChainSpec(d["n"])
    if kind == "ring":
        return RingSpec(d["name"])
    raise ValidationError(f"unknown spec kind: {kind!r}")


def invariant_factors_from_cyclic(moduli: Sequence[int]) -> tuple[int, ...]:
    """Normalize a direct sum of cyclic groups to its invariant factor chain.

    >>> invariant_factors_from_cyclic([2, 3])
    (6,)
    >>> invariant_factors_from_cyclic([4, 6])
    (2, 12)
    """
    by_prime: dict[int, list[int]] = {}
    for m in moduli:
        m = int(m)
        if m < 1:
            raise ValidationError(f"cyclic modulus must be >= 1, got {m}")
        for p, e in _factorize(m).items():
            by_prime.setdefault(p, []).append(e)
    if not by_prime:
        return ()
    width = max(len(v) for v in by_prime.values())
    factors = [1] * width
    for p, exps in by_prime.items():
        exps = sorted(exps, reverse=True)
        for slot, e in enumerate(exps):
            factors[slot] *= p**e
    # largest prime powers were placed first; invariant chains run smallest first
    return tuple(d for d in reversed(factors) if d > 1)


def abelian_invariant_factorizations(n: int) -> list[tuple[int, ...]]:
    """Every invariant factor chain with product n, i.e. every abelian group of order n."""
    if n < 1:
        raise ValidationError("group order must be >= 1")

    def chains(rem: int, base: int) -> Iterator[tuple[int, ...]]:
        if rem == 1:
            yield ()
            return
        for d in range(2, rem + 1):
            if rem % d == 0 and d % base == 0:
                for rest in chains(rem // d, d):
                    yield (d,) + rest

    return sorted(chains(n, 1))


# ---------------------------------------------------------------------------
# number theory helpers


def _factorize(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValidationError("totient needs n >= 1")
    out = n
    for p in _factorize(n):
        out = out // p * (p - 1)
    return out


# ---------------------------------------------------------------------------
# builders


@lru_cache(maxsize=512)
def _build_abelian_cached(factors: tuple[int, ...]) -> OpTable:
    n = math.prod(factors) if factors else 1
    if not factors:
        return OpTable(np.zeros((1, 1), dtype=np.int64))
    idx = np.arange(n)
    table = np.zeros((n, n), dtype=np.int64)
    stride = 1
    for d in factors:
        digit = (idx // stride) % d
        table += ((digit[:, None] + digit[None, :]) % d) * stride
        stride *= d
    return OpTable(table)


def build_abelian(spec: AbelianSpec | Sequence[int]) -> OpTable:
    """Canonical table of the abelian group with the given invariant factors.

    Element i has mixed-radix digits over the factors; addition is digitwise.
    Index 0 is the identity.
    """
    if not isinstance(spec, AbelianSpec):
        spec = AbelianSpec(tuple(spec))
    return _build_abelian_cached(spec.factors)


def build_max_chain(n: int) -> OpTable:
    """Canonical max table on 0 < 1 < ... < n-1."""
    if n < 1:
        raise ValidationError("max chain needs n >= 1")
    idx = np.arange(n)
    return OpTable(np.maximum.outer(idx, idx))


# Conway polynomials for the field sizes supported here (prime powers <= 64
# with r >= 2), coefficients low degree first, leading 1 included. GF(p)
# itself is plain mod-p arithmetic and needs no polynomial.
CONWAY_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


def build_zn_ring(n: int) -> RingTables:
    if n < 2:
        raise ValidationError("Z_n ring needs n >= 2")
    idx = np.arange(n)
    return RingTables(
        OpTable((idx[:, None] + idx[None, :]) % n),
        OpTable((idx[:, None] * idx[None, :]) % n),
    )


def build_gf(p: int, r: int) -> RingTables:
    """The finite field GF(p^r); element i has base-p digits as coefficients.

    Uses the fixed Conway polynomial for (p, r). Sizes past 64 are outside
    the shipped polynomial table.
    """
    if not is_prime(p):
        raise ValidationError(f"field characteristic must be prime, got {p}")
    if r < 1:
        raise ValidationError("field extension degree must be >= 1")
    q = p**r
    if r == 1:
        return build_zn_ring(p)
    if (p, r) not in CONWAY_POLYNOMIALS:
        raise CapabilityError(f"no irreducible polynomial shipped for GF({p}^{r}); table covers prime powers <= 64")
    poly = CONWAY_POLYNOMIALS[(p, r)]

    idx = np.arange(q)
    digits = np.stack([(idx // p**i) % p for i in range(r)])  # (r, q)
    weights = p ** np.arange(r)
    add = ((digits[:, :, None] + digits[:, None, :]) % p * weights[:, None, None]).sum(axis=0)

    def reduce_mul(x: int, y: int) -> int:
        prod = [0] * (2 * r - 1)
        for i in range(r):
            xi = (x // p**i) % p
            if xi == 0:
                continue
            for j in range(r):
                prod[i + j] = (prod[i + j] + xi * ((y // p**j) % p)) % p
        for deg in range(2 * r - 2, r - 1, -1):
            c = prod[deg]
            if c == 0:
                continue
            prod[deg] = 0
            for i in range(r):  # x^deg = -(low part of poly) * x^(deg-r)
                prod[deg - r + i] = (prod[deg - r + i] - c * poly[i]) % p
        return sum(prod[i] * p**i for i in range(r))

    mul = np.zeros((q, q), dtype=np.int64)
    for x in range(q):
        for y in range(x, q):
            mul[x, y] = mul[y, x] = reduce_mul(x, y)
    if np.count_nonzero(mul) != (q - 1) * (q - 1):
        raise ValidationError(f"shipped polynomial for GF({p}^{r}) produced zero divisors")
    return RingTables(OpTable(add), OpTable(mul))


def ring_product(a: RingTables, b: RingTables) -> RingTables:
    """Componentwise product ring; pair (i, j) is encoded as i * b.n + j."""
    nb = b.n

    def combine(ta: np.ndarray, tb: np.ndarray) -> OpTable:
        return OpTable((ta[:, None, :, None] * nb + tb[None, :, None, :]).reshape(a.n * nb, a.n * nb))

    return RingTables(combine(a.add.entries, b.add.entries), combine(a.mul.entries, b.mul.entries))


def _ring_atoms(name: str) -> list[tuple[str, int]]:
    if not name:
        raise ValidationError("empty ring name")
    atoms: list[tuple[str, int]] = []
    for token in name.split("x"):
        if token.startswith("gf") and token[2:].isdigit():
            q = int(token[2:])
            fac = _factorize(q)
            if len(fac) != 1:
                raise ValidationError(f"gf size must be a prime power, got {q}")
            atoms.append(("gf", q))
        elif token.startswith("z") and token[1:].isdigit():
            n = int(token[1:])
            if n < 2:
                raise ValidationError(f"z ring modulus must be >= 2, got {n}")
            atoms.append(("zn", n))
        else:
            raise ValidationError(f"cannot parse ring component {token!r} in {name!r}")
    return atoms


@lru_cache(maxsize=128)
def _build_ring_cached(name: str) -> RingTables:
    parts = []
    for kind, size in _ring_atoms(name):
        if kind == "gf":
            ((p, r),) = _factorize(size).items()
            parts.append(build_gf(p, r))
        else:
            parts.append(build_zn_ring(size))
    ring = parts[0]
    for nxt in parts[1:]:
        ring = ring_product(ring, nxt)
    return ring


def build_ring(spec: RingSpec | str) -> RingTables:
    """Canonical tables for a ring family name such as ``z8`` or ``gf9``."""
    if not isinstance(spec, RingSpec):
        spec = RingSpec(spec)
    return _build_ring_cached(spec.name)


@lru_cache(maxsize=512)
def _canonical_max_chain_cached(n: int) -> OpTable:
    return build_max_chain(n)


def canonical_table(spec: StructureSpec) -> OpTable:
    """Canonical single-operation table for a groupoid spec."""
    if isinstance(spec, AbelianSpec):
        return build_abelian(spec)
    if isinstance(spec, MaxChainSpec):
        return _canonical_max_chain_cached(spec.n)
    raise ValidationError("ring specs carry two tables; use canonical_ring")


def canonical_ring(spec: RingSpec | str) -> RingTables:
    return build_ring(spec)


# ---------------------------------------------------------------------------
# axiom checks

AxiomClass = Literal["groupoid", "semigroup", "group", "abelian_group"]


def _is_associative(t: np.ndarray) -> bool:
    # t[t[x,y], z] vs t[x, t[y,z]] over the full cube
    return bool(np.array_equal(t[t], t[:, t]))


def identity_of(t: OpTable) -> Optional[int]:
    """The two-sided identity element, or None."""
    arr = t.entries
    idx = np.arange(t.n)
    hits = np.flatnonzero((arr == idx[None, :]).all(axis=1) & (arr.T == idx[None, :]).all(axis=1))
    return int(hits[0]) if hits.size else None


def element_order(t: OpTable, x: int) -> int:
    """Order of x in a group table (number of steps for x, x*x, ... to reach the identity)."""
    e = identity_of(t)
    if e is None:
        raise ValidationError("element orders need an identity element")
    cur = x
    for k in range(1, t.n + 1):
        if cur == e:
            return k
        cur = t[cur, x]
    raise ValidationError("power chain failed to reach the identity; not a group table")


def check_axioms(t: OpTable, which: AxiomClass) -> bool:
    """True iff the table satisfies the named axiom package.

    ``groupoid`` is closure only (guaranteed by construction, so always
    True); ``semigroup`` adds associativity; ``group`` adds a two-sided
    identity and inverses; ``abelian_group`` adds commutativity.
    """
    arr = t.entries
    if which == "groupoid":
        return True
    if which == "semigroup":
        return _is_associative(arr)
    if which in ("group", "abelian_group"):
        if not _is_associative(arr):
            return False
        e = identity_of(t)
        if e is None:
            return False
        has_inverses = bool((arr == e).any(axis=1).all() and (arr == e).any(axis=0).all())
        if not has_inverses:
            return False
        if which == "abelian_group":
            return bool(np.array_equal(arr, arr.T))
        return True
    raise ValidationError(f"unknown axiom class {which!r}")


def distributive_laws_hold(add: np.ndarray, mul: np.ndarray) -> bool:
    """Both distributive laws a*(b+c) = a*b + a*c and (a+b)*c = a*c + b*c."""
    left = np.array_equal(mul[:, add], add[mul[:, :, None], mul[:, None, :]])
    right = np.array_equal(mul[add], add[mul[:, None, :], mul[None, :, :]])
    return bool(left and right)


def is_cyclic_group(t: OpTable) -> bool:
    if not check_axioms(t, "group"):
        return False
    return any(element_order(t, x) == t.n for x in range(t.n))


# ---------------------------------------------------------------------------
# symmetry counting


def _check_cap(n: int, cap: Optional[int], what: str) -> int:
    limit = BRUTE_FORCE_CAP if cap is None else cap
    if n > limit:
        raise CapabilityError(f"{what} is brute force over {n}! permutations; cap is {limit} (pass a larger cap to override)")
    return limit


def count_automorphisms(t: OpTable, cap: Optional[int] = None) -> int:
    """Number of relabelings fixing the table, by brute force over permutations."""
    _check_cap(t.n, cap, "count_automorphisms")
    arr = t.entries
    count = 0
    for perm in permutations(range(t.n)):
        p = np.array(perm)
        if np.array_equal(p[arr], arr[np.ix_(p, p)]):
            count += 1
    return count


def count_ring_automorphisms(rt: RingTables, cap: Optional[int] = None) -> int:
    """Number of relabelings fixing addition and multiplication simultaneously."""
    _check_cap(rt.n, cap, "count_ring_automorphisms")
    add, mul = rt.add.entries, rt.mul.entries
    count = 0
    for perm in permutations(range(rt.n)):
        p = np.array(perm)
        if np.array_equal(p[add], add[np.ix_(p, p)]) and np.array_equal(p[mul], mul[np.ix_(p, p)]):
            count += 1
    return count


def are_isomorphic(a: OpTable, b: OpTable, cap: Optional[int] = None) -> Optional[tuple[int, ...]]:
    """A relabeling carrying a onto b, or None. Both tables must share a size."""
    if a.n != b.n:
        raise ValidationError(f"cannot compare tables of sizes {a.n} and {b.n}")
    _check_cap(a.n, cap, "are_isomorphic")
    aa, bb = a.entries, b.entries
    for perm in permutations(range(a.n)):
        p = np.array(perm)
        if np.array_equal(p[aa], bb[np.ix_(p, p)]):
            return tuple(perm)
    return None
