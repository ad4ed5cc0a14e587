"""Finite set systems, shattering, and exact VC dimension.

A system is a finite ground sequence of distinct hashable points together
with a family of subsets. Subsets are stored as integer bitmasks over
ground indices, so membership tests and trace computations are single
AND operations regardless of ground size (Python integers grow as needed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Hashable, Iterable, Mapping, Optional, Sequence

from .errors import DomainError, ResourceLimitError

# Guards for exhaustive searches. These stop runaway inputs; results below
# the caps are exact, never sampled.
DEFAULT_TARGET_CAP = 20
DEFAULT_WORK_CAP = 2_000_000


def _canonical_key(points: frozenset) -> tuple:
    return (len(points), sorted(map(repr, points)))


@dataclass(frozen=True)
class ShatterReport:
    """Outcome of testing whether a family shatters a target set.

    ``witnesses`` maps each realized subset of the target to one witness
    (the first in canonical order); ``missing`` lists the subsets no member
    cuts out. The witness type depends on the producer: set-system checks
    store family members, progression checks store progression specs.
    """

    target: frozenset
    shattered: bool
    missing: tuple = ()
    witnesses: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "shattered" if self.shattered else "not-shattered"

    def to_json(self, witness_json=None) -> dict:
        def enc(subset):
            return sorted(map(str, subset))

        if witness_json is None:
            witness_json = lambda w: sorted(map(str, w))
        return {
            "target": enc(self.target),
            "verdict": self.verdict,
            "missing": [enc(m) for m in sorted(self.missing, key=_canonical_key)],
            "witnesses": [
                {"subset": enc(s), "witness": witness_json(w)}
                for s, w in sorted(self.witnesses.items(), key=lambda kv: _canonical_key(kv[0]))
            ],
        }


class SetSystem:
    """Ground sequence plus a deduplicated family of subsets."""

    def __init__(self, ground: Sequence[Hashable], family: Iterable[Iterable[Hashable]]):
        ground = tuple(ground)
        if len(set(ground)) != len(ground):
            raise DomainError("ground points must be distinct")
        self.ground = ground
        self._index = {p: i for i, p in enumerate(ground)}
        masks = set()
        for member in family:
            mask = 0
            for p in member:
                if p not in self._index:
                    raise DomainError(f"family member contains {p!r} outside the ground set")
                mask |= 1 << self._index[p]
            masks.add(mask)
        self.masks = tuple(sorted(masks))

    @classmethod
    def from_masks(cls, ground: Sequence[Hashable], masks: Iterable[int]) -> "SetSystem":
        sys = cls.__new__(cls)
        sys.ground = tuple(ground)
        if len(set(sys.ground)) != len(sys.ground):
            raise DomainError("ground points must be distinct")
        sys._index = {p: i for i, p in enumerate(sys.ground)}
        full = (1 << len(sys.ground)) - 1
        cleaned = set()
        for m in masks:
            if m < 0 or m & ~full:
                raise DomainError("mask has bits outside the ground set")
            cleaned.add(m)
        sys.masks = tuple(sorted(cleaned))
        return sys

    def __len__(self) -> int:
        return len(self.masks)

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, SetSystem)
            and self.ground == other.ground
            and self.masks == other.masks
        )

    def __repr__(self) -> str:
        return f"SetSystem(|ground|={len(self.ground)}, |family|={len(self.masks)})"

    def mask_of(self, points: Iterable[Hashable]) -> int:
        mask = 0
        for p in points:
            if p not in self._index:
                raise DomainError(f"{p!r} is not a ground point")
            mask |= 1 << self._index[p]
        return mask

    def points_of(self, mask: int) -> frozenset:
        return frozenset(p for p, i in self._index.items() if mask >> i & 1)

    def members(self) -> tuple:
        return tuple(self.points_of(m) for m in self.masks)

    def to_json(self) -> dict:
        return {
            "ground": list(self.ground),
            "family": [[i for i in range(len(self.ground)) if m >> i & 1] for m in self.masks],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "SetSystem":
        try:
            ground = list(obj["ground"])
            family = list(obj["family"])
        except (KeyError, TypeError) as exc:
            raise DomainError("set system JSON needs 'ground' and 'family' keys") from exc
        n = len(ground)
        masks = []
        for member in family:
            mask = 0
            for i in member:
                if not isinstance(i, int) or not 0 <= i < n:
                    raise DomainError(f"family index {i!r} out of range for ground of size {n}")
                mask |= 1 << i
            masks.append(mask)
        return cls.from_masks(ground, masks)


def cuts_out(sys: SetSystem, target: Iterable[Hashable], sub: Iterable[Hashable]) -> Optional[frozenset]:
    """First family member whose trace on target equals sub, or None.

    Requires sub to be a subset of target and target a subset of the ground.
    """
    tmask = sys.mask_of(target)
    smask = sys.mask_of(sub)
    if smask & ~tmask:
        raise DomainError("sub must be contained in target")
    for m in sys.masks:
        if m & tmask == smask:
            return sys.points_of(m)
    return None


def shatters(sys: SetSystem, target: Iterable[Hashable], cap: int = DEFAULT_TARGET_CAP) -> ShatterReport:
    """Exhaustive shattering check over all subsets of the target."""
    tpoints = frozenset(target)
    tmask = sys.mask_of(tpoints)
    t = bin(tmask).count("1")
    if t > cap:
        raise ResourceLimitError(f"target of size {t} exceeds shatter cap {cap}")
    bits = [i for i in range(len(sys.ground)) if tmask >> i & 1]
    compress = {1 << b: 1 << j for j, b in enumerate(bits)}

    first_witness: dict[int, int] = {}
    for m in sys.masks:
        trace = m & tmask
        small = 0
        for b in bits:
            if trace >> b & 1:
                small |= compress[1 << b]
        if small not in first_witness:
            first_witness[small] = m

    witnesses = {}
    missing = []
    for small in range(1 << t):
        sub = frozenset(sys.ground[bits[j]] for j in range(t) if small >> j & 1)
        if small in first_witness:
            witnesses[sub] = sys.points_of(first_witness[small])
        else:
            missing.append(sub)
    return ShatterReport(
        target=tpoints,
        shattered=not missing,
        missing=tuple(sorted(missing, key=_canonical_key)),
        witnesses=witnesses,
    )


def _has_shattered_subset(sys: SetSystem, size: int, work_cap: int) -> bool:
    n = len(sys.ground)
    if size > n or len(sys.masks) < 2**size:
        return False
    if math.comb(n, size) > work_cap:
        raise ResourceLimitError(
            f"{math.comb(n, size)} candidate {size}-subsets exceed work cap {work_cap}"
        )
    want = 2**size
    for bits in combinations(range(n), size):
        tmask = 0
        for b in bits:
            tmask |= 1 << b
        seen = set()
        for m in sys.masks:
            seen.add(m & tmask)
            if len(seen) == want:
                return True
    return False


def vc_dimension_exact(
    sys: SetSystem, cap: int = DEFAULT_TARGET_CAP, work_cap: int = DEFAULT_WORK_CAP
) -> Optional[int]:
    """Largest size of a shattered subset of the ground, by exhaustive search.

    Returns None for an empty family: no set is shattered, not even the
    empty one, so the dimension is undefined there rather than 0. With a
    nonempty family the empty set is always shattered and the result is a
    certified exact value, found by growing the size until some level has
    no shattered subset (subsets of shattered sets are shattered, so the
    first gap is conclusive).
    """
    if not sys.masks:
        return None
    best = 0
    top = min(cap, len(sys.ground))
    for size in range(1, top + 1):
        if _has_shattered_subset(sys, size, work_cap):
            best = size
        else:
            return best
    if top < len(sys.ground) and len(sys.masks) >= 2 ** (top + 1):
        raise ResourceLimitError(
            f"dimension at least {best} but search capped at subset size {top}",
            partial=best,
        )
    return best


def shatter_function(sys: SetSystem, n: int, work_cap: int = DEFAULT_WORK_CAP) -> int:
    """Maximum number of distinct traces over any n-point subset of the ground."""
    g = len(sys.ground)
    if not 0 <= n <= g:
        raise DomainError(f"shatter function needs 0 <= n <= {g}, got {n}")
    if math.comb(g, n) > work_cap:
        raise ResourceLimitError(f"{math.comb(g, n)} candidate subsets exceed work cap {work_cap}")
    limit = min(2**n, len(sys.masks))
    best = 0
    for bits in combinations(range(g), n):
        tmask = 0
        for b in bits:
            tmask |= 1 << b
        count = len({m & tmask for m in sys.masks})
        if count > best:
            best = count
            if best == limit:
                break
    return best


def complement_system(sys: SetSystem) -> SetSystem:
    """System of complements of the members within the same ground."""
    full = (1 << len(sys.ground)) - 1
    return SetSystem.from_masks(sys.ground, (full & ~m for m in sys.masks))


def intersection_system(a: SetSystem, b: SetSystem) -> SetSystem:
    """All pairwise intersections of members of a and b over a shared ground."""
    if a.ground != b.ground:
        raise DomainError("intersection requires identical ground sequences")
    return SetSystem.from_masks(a.ground, (m1 & m2 for m1 in a.masks for m2 in b.masks))


def preimage_system(mapping: Mapping[Hashable, Hashable], sys: SetSystem) -> SetSystem:
    """Pull the family back through a map from a new ground into sys.ground."""
    new_ground = tuple(mapping.keys())
    for p, q in mapping.items():
        if q not in sys._index:
            raise DomainError(f"{p!r} maps to {q!r} which is not a ground point")
    masks = []
    for m in sys.masks:
        pre = 0
        for j, p in enumerate(new_ground):
            if m >> sys._index[mapping[p]] & 1:
                pre |= 1 << j
        masks.append(pre)
    return SetSystem.from_masks(new_ground, masks)
