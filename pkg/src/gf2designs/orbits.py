"""Matrix groups over GF(2) and their orbits on Grassmannian layers.

A group is built by breadth-first closure from its generators, so the
element order is deterministic.  Orbits on a layer are found by scanning
subspace indices in ascending order and expanding each unseen seed with
the generators; because the layer enumeration is sorted, the seed of an
orbit is also its lexicographically least member and serves as the
representative.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .gf2 import GF2Matrix
from .grassmannian import Subspace, enumerate_subspaces, grassmannian_index

DEFAULT_CLOSURE_CAP = 10**6


class ClosureExceedsCapError(RuntimeError):
    """Group closure grew past the configured element cap."""


def format_signature(lengths) -> str:
    """Multiset of orbit lengths in ``len^count`` form, lengths descending."""
    counts = Counter(lengths)
    return " ".join(f"{n}^{counts[n]}" for n in sorted(counts, reverse=True))


@dataclass(frozen=True)
class MatrixGroup:
    """A finite subgroup of GL(v, 2) with its full element list."""

    generators: tuple[GF2Matrix, ...]
    elements: tuple[GF2Matrix, ...]
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.elements[0].dim


def group_closure(
    generators, cap: int = DEFAULT_CLOSURE_CAP, name: str = ""
) -> MatrixGroup:
    """Breadth-first closure of the generators, identity first."""
    gens = tuple(generators)
    if not gens:
        raise ValueError("need at least one generator (use the identity)")
    dim = gens[0].dim
    for g in gens:
        if g.dim != dim:
            raise ValueError("generators have mixed dimensions")
        if not g.is_invertible():
            raise ValueError("generator is not invertible")
    ident = GF2Matrix.identity(dim)
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        new_frontier = []
        for el in frontier:
            for g in gens:
                prod = el @ g
                if prod not in seen:
                    seen.add(prod)
                    elements.append(prod)
                    new_frontier.append(prod)
                    if len(elements) > cap:
                        raise ClosureExceedsCapError(
                            f"closure exceeds cap {cap}"
                        )
        frontier = new_frontier
    return MatrixGroup(gens, tuple(elements), name)


@dataclass(frozen=True)
class OrbitPartition:
    """Partition of the r-layer of F_2^v into group orbits.

    ``orbit_of[i]`` is the orbit id of subspace index ``i``; ids are
    assigned in order of first appearance, so orbit 0 is seeded by
    subspace 0.  ``members[j]`` lists orbit j's subspace indices in
    ascending order; its first entry is the representative.
    """

    v: int
    r: int
    orbit_of: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    @property
    def n_orbits(self) -> int:
        return len(self.members)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(m) for m in self.members)

    def representative_index(self, orbit_id: int) -> int:
        return self.members[orbit_id][0]

    def representative(self, orbit_id: int) -> Subspace:
        return enumerate_subspaces(self.v, self.r)[self.members[orbit_id][0]]

    def signature(self) -> str:
        """Orbit length multiset in the ``len^count`` notation, lengths descending."""
        return format_signature(self.lengths)


def orbits(group: MatrixGroup, v: int, r: int) -> OrbitPartition:
    """Full orbit partition of the r-dimensional subspaces of F_2^v."""
    index = grassmannian_index(v, r)
    layer = index.subspaces
    n = len(layer)
    gens = group.generators
    orbit_of = [-1] * n
    members: list[tuple[int, ...]] = []
    for seed in range(n):
        if orbit_of[seed] >= 0:
            continue
        oid = len(members)
        orbit_of[seed] = oid
        stack = [seed]
        found = [seed]
        while stack:
            i = stack.pop()
            sub = layer[i]
            for g in gens:
                j = index.rank(sub.image(g))
                if orbit_of[j] < 0:
                    orbit_of[j] = oid
                    found.append(j)
                    stack.append(j)
        found.sort()
        members.append(tuple(found))
    return OrbitPartition(v, r, tuple(orbit_of), tuple(members))


def fixed_subspaces(group: MatrixGroup, v: int, r: int) -> list[Subspace]:
    """All r-subspaces mapped to themselves by every group element.

    Being fixed by the generators is enough, since images compose.
    """
    gens = group.generators
    return [
        sub
        for sub in enumerate_subspaces(v, r)
        if all(sub.image(g) == sub for g in gens)
    ]


def write_orbit_cache(path, part: OrbitPartition, group: MatrixGroup) -> None:
    """Persist a partition: a header line, then one orbit id per subspace index."""
    name = group.name or "anonymous"
    if any(ch.isspace() for ch in name):
        raise ValueError("group name must not contain whitespace")
    with open(path, "w") as fh:
        fh.write(f"orbits {part.v} {part.r} {name} {group.order}\n")
        for oid in part.orbit_of:
            fh.write(f"{oid}\n")


def read_orbit_cache(path) -> tuple[OrbitPartition, str, int]:
    """Reload a cached partition; returns (partition, group name, group order)."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 5 or header[0] != "orbits":
            raise ValueError(f"{path}: bad orbit cache header")
        v, r = int(header[1]), int(header[2])
        name, order = header[3], int(header[4])
        orbit_of = [int(line) for line in fh if line.strip()]
    n = len(enumerate_subspaces(v, r))
    if len(orbit_of) != n:
        raise ValueError(f"{path}: expected {n} entries, got {len(orbit_of)}")
    buckets: dict[int, list[int]] = {}
    next_id = 0
    for i, oid in enumerate(orbit_of):
        if oid == next_id and oid not in buckets:
            next_id += 1
        elif oid not in buckets:
            raise ValueError(f"{path}: orbit ids must appear in first-seen order")
        buckets.setdefault(oid, []).append(i)
    members = tuple(tuple(buckets[j]) for j in range(next_id))
    return OrbitPartition(v, r, tuple(orbit_of), members), name, order
