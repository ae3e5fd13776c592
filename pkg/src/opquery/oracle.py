"""Query oracles over hidden operation tables.

A hidden instance is a canonical table pushed through a secret uniformly
random relabeling, so the oracle's carrier names carry no information beyond
what queries reveal. The oracle itself is a cost meter: every successful
query is appended to a transcript and counted, repeats included. Recovery
code is expected to cache its own answers.

The permutation stream is an explicitly coded Fisher-Yates shuffle driven by
``random.Random`` (Mersenne Twister) bits, so a seed pins down the same
instance on every platform.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Sequence, Union

from .algebra import (
    OpTable,
    RingSpec,
    RingTables,
    StructureSpec,
    canonical_ring,
    canonical_table,
    spec_from_dict,
    spec_to_dict,
)
from .errors import ValidationError

Transcript = tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class HiddenInstance:
    """One seeded relabeling of a canonical single-operation table."""

    spec: StructureSpec
    seed: int
    canonical: OpTable
    perm: tuple[int, ...]
    truth: OpTable


@dataclass(frozen=True)
class HiddenRingInstance:
    """One seeded relabeling of a canonical ring; both tables share the permutation."""

    spec: RingSpec
    seed: int
    canonical: RingTables
    perm: tuple[int, ...]
    truth: RingTables


class Oracle:
    """Answers x*y lookups against a hidden truth table, counting every query."""

    __slots__ = ("_truth", "_transcript")

    def __init__(self, truth: OpTable):
        self._truth = truth
        self._transcript: list[tuple[int, int, int]] = []

    @property
    def n(self) -> int:
        return self._truth.n

    @property
    def count(self) -> int:
        return len(self._transcript)

    @property
    def transcript(self) -> Transcript:
        return tuple(self._transcript)

    def query(self, x: int, y: int) -> int:
        n = self._truth.n
        if not (0 <= x < n and 0 <= y < n):
            raise ValidationError(f"query ({x}, {y}) out of range for n = {n}")
        z = int(self._truth.entries[x, y])
        self._transcript.append((x, y, z))
        return z


def _rand_below(rng: random.Random, m: int) -> int:
    # rejection sampling on getrandbits keeps the draw exactly uniform
    k = m.bit_length()
    r = rng.getrandbits(k)
    while r >= m:
        r = rng.getrandbits(k)
    return r


def random_permutation(n: int, seed: int) -> tuple[int, ...]:
    """Uniform permutation of 0..n-1 by Fisher-Yates over seeded Twister bits."""
    rng = random.Random(seed)
    out = list(range(n))
    for i in range(n - 1, 0, -1):
        j = _rand_below(rng, i + 1)
        out[i], out[j] = out[j], out[i]
    return tuple(out)


def new_hidden(spec: StructureSpec, seed: int) -> HiddenInstance:
    """Build the canonical table for ``spec`` and hide it behind a seeded relabeling."""
    if isinstance(spec, RingSpec):
        raise ValidationError("ring specs hide two tables; use new_hidden_ring")
    canonical = canonical_table(spec)
    perm = random_permutation(canonical.n, seed)
    return HiddenInstance(spec, seed, canonical, perm, canonical.relabel(perm))


def new_hidden_ring(spec: RingSpec | str, seed: int) -> HiddenRingInstance:
    if not isinstance(spec, RingSpec):
        spec = RingSpec(spec)
    canonical = canonical_ring(spec)
    perm = random_permutation(canonical.n, seed)
    return HiddenRingInstance(spec, seed, canonical, perm, canonical.relabel(perm))


def oracle_for(instance: HiddenInstance) -> Oracle:
    return Oracle(instance.truth)


def ring_oracles(instance: HiddenRingInstance) -> tuple[Oracle, Oracle]:
    """One oracle per hidden ring table: (addition, multiplication)."""
    return Oracle(instance.truth.add), Oracle(instance.truth.mul)


def verify_recovery(oracle: Oracle, claimed: OpTable) -> tuple[bool, int]:
    """Compare a claimed table against the oracle's truth without spending queries.

    Returns (exact match, queries spent so far).
    """
    if claimed.n != oracle.n:
        raise ValidationError(f"claimed table has n = {claimed.n}, oracle has n = {oracle.n}")
    return claimed == oracle._truth, oracle.count


def replay_matches(transcript: Sequence[tuple[int, int, int]], table: OpTable) -> bool:
    """True iff every recorded answer agrees with the given table."""
    return all(table[x, y] == z for x, y, z in transcript)


# ---------------------------------------------------------------------------
# file formats


def save_transcript(path: str, transcript: Sequence[tuple[int, int, int]]) -> None:
    """One JSON object per line: {"x": ..., "y": ..., "z": ...}."""
    with open(path, "w") as fh:
        for x, y, z in transcript:
            fh.write(json.dumps({"x": int(x), "y": int(y), "z": int(z)}) + "\n")


def load_transcript(path: str) -> Transcript:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            d = json.loads(line)
            out.append((int(d["x"]), int(d["y"]), int(d["z"])))
    return tuple(out)


AnyInstance = Union[HiddenInstance, HiddenRingInstance]


def instance_to_dict(instance: AnyInstance) -> dict:
    """Test/debug export: spec, seed, canonical tables, and the secret permutation."""
    if isinstance(instance, HiddenRingInstance):
        return {
            "kind": "ring",
            "spec": spec_to_dict(instance.spec),
            "seed": instance.seed,
            "perm": list(instance.perm),
            "canonical": instance.canonical.to_dict(),
        }
    return {
        "kind": "groupoid",
        "spec": spec_to_dict(instance.spec),
        "seed": instance.seed,
        "perm": list(instance.perm),
        "canonical": instance.canonical.to_dict(),
    }


def instance_from_dict(d: dict) -> AnyInstance:
    spec = spec_from_dict(d["spec"])
    seed = int(d["seed"])
    perm = tuple(int(p) for p in d["perm"])
    if d.get("kind") == "ring":
        canonical = RingTables.from_dict(d["canonical"])
        return HiddenRingInstance(spec, seed, canonical, perm, canonical.relabel(perm))
    canonical = OpTable.from_dict(d["canonical"])
    return HiddenInstance(spec, seed, canonical, perm, canonical.relabel(perm))


def save_instance(path: str, instance: AnyInstance) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_dict(instance), fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def load_instance(path: str) -> AnyInstance:
    with open(path) as fh:
        return instance_from_dict(json.load(fh))
