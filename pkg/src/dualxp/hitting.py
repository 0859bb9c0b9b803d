"""Exact minimal-hitting-set solver used by the dual enumeration engine.

Depth-first search over include/exclude decisions in universe order, with a
reachability prune and superset blocking, followed by a deterministic shrink
pass.  Exact and deterministic for fixed input order; a node budget guards
against desk-scale blowups.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

DEFAULT_NODE_BUDGET = 10 ** 7


class BudgetExceeded(Exception):
    """Search node budget exhausted."""


@dataclass(frozen=True)
class HittingSetInstance:
    """Universe of element ids, sets to hit, and sets the answer may not cover."""

    universe: tuple[int, ...]
    to_hit: tuple[frozenset[int], ...]
    blocked: tuple[frozenset[int], ...] = ()

    def __post_init__(self) -> None:
        elems = set(self.universe)
        for s in self.to_hit + self.blocked:
            if not s <= elems:
                raise ValueError("set contains elements outside the universe")


def minimal_hitting_set(instance: HittingSetInstance, smallest: bool = False,
                        budget: int = DEFAULT_NODE_BUDGET) -> Optional[frozenset[int]]:
    """A subset-minimal hitting set of `to_hit` that is a superset of no
    blocked set, or None when no such set exists.

    With `smallest=True` the result is additionally of minimum cardinality.
    """
    if any(not s for s in instance.to_hit):
        return None  # an empty set can never be hit
    if any(not b for b in instance.blocked):
        return None  # every set is a superset of the empty blocked set
    nodes = [0]

    def tick() -> None:
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"hitting-set search exceeded {budget} nodes")

    universe = instance.universe
    n = len(universe)
    # element -> positions of to-hit sets it belongs to
    member_of: dict[int, list[int]] = {e: [] for e in universe}
    for i, s in enumerate(instance.to_hit):
        for e in s:
            member_of[e].append(i)

    def search(idx: int, chosen: list[int], unhit: set[int],
               size_cap: Optional[int]) -> Optional[list[int]]:
        tick()
        if not unhit:
            # additions are pruned against blocked, so chosen is clean here
            return list(chosen)
        if idx == n:
            return None
        if size_cap is not None and len(chosen) >= size_cap:
            return None
        # prune: some unhit set has no members among the remaining elements
        remaining = set(universe[idx:])
        for i in unhit:
            if not (instance.to_hit[i] & remaining):
                return None
        e = universe[idx]
        hits = [i for i in member_of[e] if i in unhit]
        if hits:
            chosen.append(e)
            if not _covers_blocked(chosen, instance.blocked):
                for i in hits:
                    unhit.discard(i)
                found = search(idx + 1, chosen, unhit, size_cap)
                if found is not None:
                    return found
                for i in hits:
                    unhit.add(i)
            chosen.pop()
        return search(idx + 1, chosen, unhit, size_cap)

    all_unhit = set(range(len(instance.to_hit)))
    if smallest:
        for cap in range(0, n + 1):
            found = search(0, [], set(all_unhit), cap)
            if found is not None:
                return frozenset(found)
        return None
    found = search(0, [], set(all_unhit), None)
    if found is None:
        return None
    return frozenset(_shrink(found, instance))


def _covers_blocked(chosen: Sequence[int], blocked) -> bool:
    cs = set(chosen)
    return any(b <= cs for b in blocked)


def _shrink(chosen: list[int], instance: HittingSetInstance) -> list[int]:
    """Drop elements in universe order while the set still hits everything.

    Shrinking can only shed supersets, so blocked-avoidance is preserved.
    """
    current = list(chosen)
    for e in list(current):
        trial = [x for x in current if x != e]
        ts = set(trial)
        if all(s & ts for s in instance.to_hit):
            current = trial
    return current


def iterate_minimal_hitting_sets(instance: HittingSetInstance, smallest: bool = False,
                                 budget: int = DEFAULT_NODE_BUDGET) -> Iterator[frozenset[int]]:
    """Enumerate the complete family of minimal hitting sets by iterated
    blocking: each reported set is added to `blocked`, which excludes exactly
    its supersets and therefore no other minimal hitting set."""
    blocked = list(instance.blocked)
    while True:
        found = minimal_hitting_set(
            HittingSetInstance(instance.universe, instance.to_hit, tuple(blocked)),
            smallest=smallest, budget=budget,
        )
        if found is None:
            return
        yield found
        blocked.append(found)
