"""Girard connectives built from basic partitions.

For ``n = u*v`` the basic partitions split ``1..n`` into ``u`` cyclic
intervals of length ``v``; there are ``v`` of them, one per shift.  Their
orthogonal set gives the primal connective ``G_{u,v}``; the basic partitions
themselves give the dual ``G^perp_{u,v}``.  The output element is the link's
port ``o1``.

Link type names are ``G_u_v`` and ``Gdual_u_v``; :func:`mstructure.builtin_type`
resolves them on demand.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError, ResourceError
from .hypergraph import Hyperedge, Hypergraph, Vertex
from .mstructure import LinkType, MStructure, Signature, behavior
from .partitions import Partition, PartitionSet, orthogonal_set

OUT = "o1"


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def _check(u: int, v: int, allow_nonprime: bool) -> None:
    if not (isinstance(u, int) and isinstance(v, int)) or u < 1 or v < 1:
        raise DomainError(f"block count and size must be positive integers, got {u}, {v}")
    if not allow_nonprime and not (_is_prime(u) and _is_prime(v)):
        raise DomainError(f"u and v must be prime (got {u}, {v}); pass allow_nonprime to experiment")


@dataclass(frozen=True)
class BasicPartitionFamily:
    u: int
    v: int
    members: PartitionSet

    @property
    def n(self) -> int:
        return self.u * self.v


def basic_partitions(u: int, v: int, allow_nonprime: bool = False) -> BasicPartitionFamily:
    """Partitions of ``1..uv`` into ``u`` cyclic intervals of length ``v``."""
    _check(u, v, allow_nonprime)
    n = u * v
    members = []
    for shift in range(v):
        blocks = [
            [str((shift + k * v + j) % n + 1) for j in range(v)] for k in range(u)
        ]
        members.append(Partition(blocks))
    ground = [str(k) for k in range(1, n + 1)]
    return BasicPartitionFamily(u, v, PartitionSet(ground, members))


def sbp(u: int, v: int, allow_nonprime: bool = False) -> PartitionSet:
    return basic_partitions(u, v, allow_nonprime).members


def psbp(u: int, v: int, allow_nonprime: bool = False, bound: int | None = None) -> PartitionSet:
    return orthogonal_set(sbp(u, v, allow_nonprime), bound)


def _to_ports(p: Partition) -> list[list[str]]:
    return [[f"i{x}" for x in b] for b in p.blocks]


def gsbp(u: int, v: int, allow_nonprime: bool = False, bound: int | None = None) -> PartitionSet:
    """Primal behavior: each orthogonal partition with the output joined to a non-singleton block."""
    n = u * v
    ground = [f"i{k}" for k in range(1, n + 1)] + [OUT]
    out = []
    for q in psbp(u, v, allow_nonprime, bound):
        blocks = _to_ports(q)
        for k, b in enumerate(blocks):
            if len(b) > 1 or n == 1:
                out.append(Partition(blocks[:k] + [b + [OUT]] + blocks[k + 1 :]))
    return PartitionSet(ground, out)


def gsbp_dual(u: int, v: int, allow_nonprime: bool = False) -> PartitionSet:
    """Dual behavior: each basic partition with the output put in each block in turn."""
    n = u * v
    ground = [f"i{k}" for k in range(1, n + 1)] + [OUT]
    out = []
    for p in sbp(u, v, allow_nonprime):
        blocks = _to_ports(p)
        for k, b in enumerate(blocks):
            out.append(Partition(blocks[:k] + [b + [OUT]] + blocks[k + 1 :]))
    return PartitionSet(ground, out)


@dataclass(frozen=True)
class GirardType:
    u: int
    v: int
    polarity: str  # "primal" | "dual"
    link: LinkType

    @property
    def behavior(self) -> PartitionSet:
        return self.link.behavior


def girard_name(u: int, v: int, polarity: str = "primal") -> str:
    return f"{'G' if polarity == 'primal' else 'Gdual'}_{u}_{v}"


def girard_type(u: int, v: int, polarity: str = "primal", allow_nonprime: bool = False) -> GirardType:
    if polarity not in ("primal", "dual"):
        raise DomainError(f"polarity must be 'primal' or 'dual', got {polarity!r}")
    beh = gsbp(u, v, allow_nonprime) if polarity == "primal" else gsbp_dual(u, v, allow_nonprime)
    link = LinkType(girard_name(u, v, polarity), u * v, 1, beh)
    return GirardType(u, v, polarity, link)


def _check_perm(perm: Sequence[int], n: int) -> tuple[int, ...]:
    perm = tuple(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise DomainError(f"{perm} is not a permutation of 1..{n}")
    return perm


def _two_level(perm: Sequence[int], u: int, v: int, inner: str, outer: str) -> MStructure:
    n = u * v
    perm = _check_perm(perm, n)
    vertices = [Vertex(f"i{k}") for k in range(1, n + 1)] + [Vertex(OUT)]
    edges = []
    mids = []
    for g in range(u):
        group = tuple(f"i{perm[g * v + j]}" for j in range(v))
        mid = f"m{g + 1}"
        vertices.append(Vertex(mid))
        mids.append(mid)
        edges.append(Hyperedge(f"g{g + 1}", group, (mid,), f"{inner}_{v}"))
    edges.append(Hyperedge("root", tuple(mids), (OUT,), f"{outer}_{u}"))
    return MStructure(Hypergraph(tuple(vertices), tuple(edges)), Signature())


def cnf_structure(perm: Sequence[int], u: int, v: int) -> MStructure:
    """``(a_t1 | .. | a_tv) * .. *`` with ``u`` par groups of size ``v`` under a tensor."""
    return _two_level(perm, u, v, "par", "tensor")


def dnf_structure(perm: Sequence[int], u: int, v: int) -> MStructure:
    """``(a_t1 * .. * a_tv) | .. |`` with ``u`` tensor groups of size ``v`` under a par."""
    return _two_level(perm, u, v, "tensor", "par")


def rotations(n: int) -> list[tuple[int, ...]]:
    """The cyclic group on ``1..n`` as permutations."""
    return [tuple((k - 1 + s) % n + 1 for k in range(1, n + 1)) for s in range(n)]


def cyclic_union_intersection(u: int, v: int) -> tuple[PartitionSet, PartitionSet]:
    """(intersection over rotations of CNF behaviors, union over rotations of DNF behaviors)."""
    inter = None
    union = None
    for tau in rotations(u * v):
        c = behavior(cnf_structure(tau, u, v))
        d = behavior(dnf_structure(tau, u, v))
        inter = c if inter is None else inter.intersection(c)
        union = d if union is None else union.union(d)
    return inter, union


def _shapes(n: int) -> Iterator[object]:
    """Binary tree shapes with ``n`` leaves; a leaf is ``None``."""
    if n == 1:
        yield None
        return
    for k in range(1, n):
        for left in _shapes(k):
            for right in _shapes(n - k):
                yield (left, right)


def _count_internal(shape) -> int:
    return 0 if shape is None else 1 + _count_internal(shape[0]) + _count_internal(shape[1])


def formula_trees(n: int) -> Iterator[MStructure]:
    """Every {tensor, par} binary formula tree over inputs ``i1..in`` in every leaf order."""
    for shape in _shapes(n):
        k = _count_internal(shape)
        for order in itertools.permutations(range(1, n + 1)):
            for ops in itertools.product(("tensor", "par"), repeat=k):
                yield _tree_structure(shape, order, ops)


def _tree_structure(shape, order, ops) -> MStructure:
    leaves = iter(order)
    opit = iter(ops)
    vertices = [Vertex(f"i{k}") for k in range(1, len(order) + 1)]
    edges = []

    def build(node, out):
        if node is None:
            return f"i{next(leaves)}"
        op = next(opit)
        eid = f"t{len(edges) + 1}"
        edges.append(None)
        slot = len(edges) - 1
        ins = []
        for child in node:
            if child is None:
                ins.append(build(child, None))
            else:
                mid = f"n{len(vertices)}"
                vertices.append(Vertex(mid))
                build(child, mid)
                ins.append(mid)
        edges[slot] = Hyperedge(eid, tuple(ins), (out,), op)
        return out

    if shape is None:
        return MStructure(Hypergraph.build(vertices, ()), Signature())
    vertices.append(Vertex(OUT))
    build(shape, OUT)
    return MStructure(Hypergraph(tuple(vertices), tuple(edges)), Signature())


PROBE_LIMIT = 5


def nondecomposability_probe(target: PartitionSet, n_inputs: int) -> MStructure | None:
    """First formula tree whose behavior equals ``target``, or ``None``.

    ``target`` must be over ``i1..in, o1``.  Searches tree-shaped structures
    only.
    """
    if n_inputs > PROBE_LIMIT:
        raise ResourceError(f"probe limited to {PROBE_LIMIT} inputs, got {n_inputs}")
    expected = {f"i{k}" for k in range(1, n_inputs + 1)} | {OUT}
    if set(target.ground) != expected:
        raise DomainError(f"target ground must be {sorted(expected)}")
    for s in formula_trees(n_inputs):
        if behavior(s) == target:
            return s
    return None
