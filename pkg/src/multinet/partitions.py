"""Finite-set partitions, restriction and (weak) orthogonality.

Elements are small integers or strings.  They are ordered "naturally", so
``"i2" < "i10"`` and ``2 < 10``, which keeps canonical forms readable.

Two partitions of the same ground set are *orthogonal* when their incidence
graph (one node per block, one edge per element joining the two blocks that
contain it) is a tree; *weakly orthogonal* when it is a forest.  Parallel
edges count as a cycle of length two.
"""
from __future__ import annotations

import re
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator

from . import config
from .errors import DomainError, ResourceError

Elem = Hashable

_CHUNK = re.compile(r"(\d+)")


def elem_key(x: Elem) -> tuple:
    """Natural sort key: digit runs compare as integers."""
    text = str(x)
    parts = tuple(
        (0, int(c)) if c.isdigit() else (1, c) for c in _CHUNK.split(text) if c
    )
    return parts + ((2, type(x).__name__),)


def sort_elems(xs: Iterable[Elem]) -> tuple:
    return tuple(sorted(xs, key=elem_key))


@dataclass(frozen=True)
class Partition:
    """A partition in canonical form.

    Accepts any iterable of iterables; elements are sorted within blocks and
    blocks are sorted by their least element.

    >>> Partition([[3, 1], [2]])
    [(1,3),(2)]
    """

    blocks: tuple[tuple[Elem, ...], ...]
    ground: tuple[Elem, ...] = field(init=False, compare=False, repr=False)

    def __init__(self, blocks: Iterable[Iterable[Elem]]):
        seen: set = set()
        canon = []
        for raw in blocks:
            block = sort_elems(raw)
            if not block:
                raise DomainError("partition blocks must be non-empty")
            for x in block:
                if x in seen:
                    raise DomainError(f"element {x!r} occurs in two blocks")
                seen.add(x)
            canon.append(block)
        canon.sort(key=lambda b: elem_key(b[0]))
        object.__setattr__(self, "blocks", tuple(canon))
        object.__setattr__(self, "ground", sort_elems(seen))

    @classmethod
    def from_labels(cls, labels: dict) -> "Partition":
        """Build a partition from an element -> block-label map."""
        groups: dict = {}
        for x, lab in labels.items():
            groups.setdefault(lab, []).append(x)
        return cls(groups.values())

    @classmethod
    def discrete(cls, ground: Iterable[Elem]) -> "Partition":
        return cls([x] for x in ground)

    @classmethod
    def indiscrete(cls, ground: Iterable[Elem]) -> "Partition":
        g = list(ground)
        return cls([g] if g else [])

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __repr__(self) -> str:
        inner = ",".join("(" + ",".join(str(x) for x in b) + ")" for b in self.blocks)
        return f"[{inner}]"

    def sort_key(self) -> tuple:
        return tuple(tuple(elem_key(x) for x in b) for b in self.blocks)

    def block_of(self, x: Elem) -> tuple:
        for b in self.blocks:
            if x in b:
                return b
        raise DomainError(f"{x!r} is not in the ground set")

    def same_block(self, x: Elem, y: Elem) -> bool:
        return y in self.block_of(x)

    def restrict(self, ys: Iterable[Elem]) -> "Partition":
        return restrict(self, ys)

    def rename(self, mapping: dict) -> "Partition":
        """Apply an injective renaming to the elements (missing keys are kept)."""
        return Partition([mapping.get(x, x) for x in b] for b in self.blocks)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in b] for b in self.blocks]


def restrict(p: Partition, ys: Iterable[Elem]) -> Partition:
    """Restriction of ``p`` to the subset ``ys`` of its ground set."""
    ys = set(ys)
    if not ys:
        raise DomainError("cannot restrict to an empty set")
    missing = ys.difference(p.ground)
    if missing:
        raise DomainError(f"not in ground set: {sort_elems(missing)}")
    return Partition([x for x in b if x in ys] for b in p.blocks if ys.intersection(b))


@dataclass(frozen=True)
class IncidenceGraph:
    """Bipartite multigraph between the blocks of two partitions.

    ``edges`` holds ``(left_index, right_index, element)`` triples, one per
    element of the common ground set.
    """

    left: tuple[tuple, ...]
    right: tuple[tuple, ...]
    edges: tuple[tuple[int, int, Elem], ...]

    @property
    def n_vertices(self) -> int:
        return len(self.left) + len(self.right)

    def _components_and_cycle(self) -> tuple[int, bool]:
        parent = list(range(self.n_vertices))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        cyclic = False
        components = self.n_vertices
        offset = len(self.left)
        for li, ri, _ in self.edges:
            a, b = find(li), find(offset + ri)
            if a == b:
                cyclic = True
            else:
                parent[a] = b
                components -= 1
        return components, cyclic

    def is_acyclic(self) -> bool:
        return not self._components_and_cycle()[1]

    def is_connected(self) -> bool:
        return self._components_and_cycle()[0] == 1


def _check_same_ground(p: Partition, q: Partition) -> None:
    if set(p.ground) != set(q.ground):
        raise DomainError(f"ground sets differ: {p.ground} vs {q.ground}")


def incidence_graph(p: Partition, q: Partition) -> IncidenceGraph:
    _check_same_ground(p, q)
    lidx = {x: i for i, b in enumerate(p.blocks) for x in b}
    ridx = {x: i for i, b in enumerate(q.blocks) for x in b}
    edges = tuple((lidx[x], ridx[x], x) for x in p.ground)
    return IncidenceGraph(p.blocks, q.blocks, edges)


class OrthogonalityCounter:
    """Counts pairwise (weak) orthogonality tests performed in a context."""

    def __init__(self):
        self.tests = 0


_counter: ContextVar[OrthogonalityCounter | None] = ContextVar(
    "orthogonality_counter", default=None
)


@contextmanager
def count_orthogonality_tests():
    """Count calls to :func:`weakly_orthogonal` / :func:`orthogonal` in this context."""
    box = OrthogonalityCounter()
    token = _counter.set(box)
    try:
        yield box
    finally:
        _counter.reset(token)


def _incidence_summary(p: Partition, q: Partition) -> tuple[int, bool]:
    # Union-find straight over block indices; avoids building IncidenceGraph.
    box = _counter.get()
    if box is not None:
        box.tests += 1
    _check_same_ground(p, q)
    ridx = {x: i for i, b in enumerate(q.blocks) for x in b}
    offset = len(p.blocks)
    parent = list(range(offset + len(q.blocks)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    components = len(parent)
    for li, b in enumerate(p.blocks):
        for x in b:
            a, c = find(li), find(offset + ridx[x])
            if a == c:
                return components, True
            parent[a] = c
            components -= 1
    return components, False


def weakly_orthogonal(p: Partition, q: Partition) -> bool:
    return not _incidence_summary(p, q)[1]


def orthogonal(p: Partition, q: Partition) -> bool:
    components, cyclic = _incidence_summary(p, q)
    return not cyclic and components == 1


@dataclass(frozen=True)
class PartitionSet:
    """A finite set of partitions over one ground set, stored canonically."""

    ground: tuple[Elem, ...]
    members: tuple[Partition, ...]

    def __init__(self, ground: Iterable[Elem], members: Iterable[Partition] = ()):
        g = sort_elems(set(ground))
        gs = set(g)
        uniq = set()
        for p in members:
            if set(p.ground) != gs:
                raise DomainError(f"member {p} is not a partition of {g}")
            uniq.add(p)
        object.__setattr__(self, "ground", g)
        object.__setattr__(self, "members", tuple(sorted(uniq, key=Partition.sort_key)))

    @classmethod
    def of(cls, *members: Partition) -> "PartitionSet":
        if not members:
            raise DomainError("PartitionSet.of needs at least one member; pass the ground explicitly")
        return cls(members[0].ground, members)

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, p: object) -> bool:
        return p in set(self.members)

    def __repr__(self) -> str:
        return "{" + ", ".join(map(repr, self.members)) + "}"

    def as_set(self) -> frozenset:
        return frozenset(self.members)

    def restrict(self, ys: Iterable[Elem]) -> "PartitionSet":
        ys = list(ys)
        return PartitionSet(ys, (restrict(p, ys) for p in self.members))

    def rename(self, mapping: dict) -> "PartitionSet":
        return PartitionSet(
            (mapping.get(x, x) for x in self.ground), (p.rename(mapping) for p in self.members)
        )

    def _check(self, other: "PartitionSet") -> None:
        if set(self.ground) != set(other.ground):
            raise DomainError(f"ground sets differ: {self.ground} vs {other.ground}")

    def union(self, other: "PartitionSet") -> "PartitionSet":
        self._check(other)
        return PartitionSet(self.ground, self.members + other.members)

    def intersection(self, other: "PartitionSet") -> "PartitionSet":
        self._check(other)
        keep = other.as_set()
        return PartitionSet(self.ground, (p for p in self.members if p in keep))

    def to_json(self) -> list:
        return [p.to_json() for p in self.members]


def sets_orthogonal(P: PartitionSet, Q: PartitionSet, mode: str = "strong") -> bool:
    """Pairwise orthogonality of two partition sets; vacuously true if one is empty."""
    if set(P.ground) != set(Q.ground):
        raise DomainError(f"ground sets differ: {P.ground} vs {Q.ground}")
    if mode not in ("strong", "weak"):
        raise DomainError(f"unknown orthogonality mode {mode!r}")
    test = orthogonal if mode == "strong" else weakly_orthogonal
    return all(test(p, q) for p in P for q in Q)


BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597]


def enumerate_partitions(xs: Iterable[Elem], bound: int | None = None) -> Iterator[Partition]:
    """Yield every partition of ``xs`` once, in restricted-growth-string order."""
    xs = list(xs)
    if len(set(xs)) != len(xs):
        raise DomainError("ground set has repeated elements")
    limit = config.partition_bound() if bound is None else bound
    n = len(xs)
    if n > limit:
        raise ResourceError(f"ground set of size {n} exceeds partition bound {limit}")
    if n == 0:
        yield Partition([])
        return
    rgs = [0] * n
    # maxes[i] = max(rgs[:i+1])
    maxes = [0] * n
    while True:
        blocks: list[list] = [[] for _ in range(maxes[-1] + 1)]
        for x, b in zip(xs, rgs):
            blocks[b].append(x)
        yield Partition(blocks)
        i = n - 1
        while i > 0 and rgs[i] > maxes[i - 1]:
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        maxes[i] = max(maxes[i - 1], rgs[i])
        for j in range(i + 1, n):
            rgs[j] = 0
            maxes[j] = maxes[i]


def orthogonal_set(P: PartitionSet, bound: int | None = None) -> PartitionSet:
    """All partitions of the ground set orthogonal to every member of ``P``."""
    n = len(P.ground)
    # p ⊥ q forces |p| + |q| == n + 1, a cheap prefilter.
    wanted = {n + 1 - len(p) for p in P}
    if len(wanted) > 1:
        return PartitionSet(P.ground)
    out = []
    for q in enumerate_partitions(P.ground, bound):
        if wanted and len(q) not in wanted:
            continue
        if all(orthogonal(p, q) for p in P):
            out.append(q)
    return PartitionSet(P.ground, out)


def biorthogonal_pair(P: PartitionSet, Q: PartitionSet, bound: int | None = None) -> bool:
    if not sets_orthogonal(P, Q, "strong"):
        return False
    return sets_orthogonal(orthogonal_set(P, bound), orthogonal_set(Q, bound), "strong")
