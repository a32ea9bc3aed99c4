"""Permutation groups given by generators, and their orbits on coordinate sets.

Groups are never materialized: orbits come from breadth-first closure over
the generators.  For a finite group, closure under the generators alone
already yields full orbits (every element has finite order).
"""

from __future__ import annotations

from typing import FrozenSet, Iterable, Optional, Sequence

from .errors import ValidationError


class PermutationGroup:
    """A subgroup of the symmetric group on n points, given by generators.

    Permutations are tuples p of length n with image p[i] for point i,
    0-based.
    """

    __slots__ = ("n", "generators")

    def __init__(self, generators: Iterable[Sequence[int]]):
        gens = tuple(tuple(g) for g in generators)
        if not gens:
            raise ValidationError("at least one generator required")
        n = len(gens[0])
        for g in gens:
            if len(g) != n or sorted(g) != list(range(n)):
                raise ValidationError("generator is not a permutation")
        self.n = n
        self.generators = gens

    def orbit_of_point(self, point: int) -> frozenset:
        if not 0 <= point < self.n:
            raise ValidationError("point out of range")
        seen = {point}
        frontier = [point]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = g[x]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def is_transitive(self) -> bool:
        return len(self.orbit_of_point(0)) == self.n

    def orbit_of_set(
        self, coords: Iterable[int], limit: Optional[int] = None
    ) -> list[FrozenSet[int]]:
        """Distinct images of the set under the group, in BFS discovery order.

        Raises ValidationError when the orbit grows past `limit`; callers use
        the limit to abort plans that would be too large to materialize.
        """
        start = frozenset(coords)
        for c in start:
            if not 0 <= c < self.n:
                raise ValidationError("coordinate out of range")
        seen = {start}
        order = [start]
        frontier = [start]
        while frontier:
            nxt = []
            for s in frontier:
                for g in self.generators:
                    img = frozenset(g[x] for x in s)
                    if img not in seen:
                        seen.add(img)
                        order.append(img)
                        nxt.append(img)
                        if limit is not None and len(seen) > limit:
                            raise ValidationError(
                                f"set orbit exceeds limit {limit}"
                            )
            frontier = nxt
        return order


def compose(p: Sequence[int], q: Sequence[int]) -> tuple:
    """Permutation applying q first, then p."""
    if len(p) != len(q):
        raise ValidationError("length mismatch")
    return tuple(p[q[i]] for i in range(len(p)))


def identity_permutation(n: int) -> tuple:
    return tuple(range(n))


def cyclic_shift_permutation(n: int) -> tuple:
    """The n-cycle sending point i to i+1 mod n."""
    return tuple((i + 1) % n for i in range(n))
