"""Multiplicative structures: linear hypergraphs whose links carry behaviors.

A link type is ``(n_in, n_out, behavior)`` where the behavior is a set of
partitions of the formal ports ``i1..in, o1..om``.  A switching picks one
partition per link; the corresponding *test* replaces every link by one
undirected hyperedge per block, instantiating ``ik`` with the k-th input
vertex of the link and ``ok`` with its k-th output vertex.

Everything that quantifies over tests enumerates switchings, so cost is the
product of the behavior sizes.  That product is checked against
``config.switching_bound()`` before any work is done.
"""
from __future__ import annotations

import itertools
import math
import re
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from . import config
from .errors import DomainError, ResourceError
from .hypergraph import (
    Hyperedge,
    Hypergraph,
    UndirectedHypergraph,
    Vertex,
    border as graph_border,
    graph_inputs,
    graph_outputs,
    is_linear,
)
from .partitions import Partition, PartitionSet, elem_key


def ports(n_in: int, n_out: int) -> tuple[str, ...]:
    return tuple(f"i{k}" for k in range(1, n_in + 1)) + tuple(
        f"o{k}" for k in range(1, n_out + 1)
    )


@dataclass(frozen=True)
class LinkType:
    name: str
    n_in: int
    n_out: int
    behavior: PartitionSet

    def __post_init__(self):
        if self.n_in < 0 or self.n_out < 0:
            raise DomainError("arities must be non-negative")
        formal = set(ports(self.n_in, self.n_out))
        if set(self.behavior.ground) != formal:
            raise DomainError(
                f"link type {self.name}: behavior ground {self.behavior.ground} "
                f"is not the formal border {sorted(formal, key=elem_key)}"
            )
        if len(self.behavior) == 0:
            raise DomainError(f"link type {self.name}: empty behavior")

    @property
    def ports(self) -> tuple[str, ...]:
        return ports(self.n_in, self.n_out)


def _lt(name: str, n_in: int, n_out: int, members) -> LinkType:
    g = ports(n_in, n_out)
    return LinkType(name, n_in, n_out, PartitionSet(g, [Partition(m) for m in members]))


def _inputs(n):
    return [f"i{k}" for k in range(1, n + 1)]


def ax_type() -> LinkType:
    return _lt("ax", 0, 2, [[["o1", "o2"]]])


def tensor_type() -> LinkType:
    return _lt("tensor", 2, 1, [[["i1", "i2", "o1"]]])


def par_type() -> LinkType:
    return _lt("par", 2, 1, [[["i1", "o1"], ["i2"]], [["i1"], ["i2", "o1"]]])


def cut_type() -> LinkType:
    # Written with o-ports in the definition although the type has no outputs;
    # read as a partition of the inputs.
    return _lt("cut", 2, 0, [[["i1", "i2"]]])


def _check_arity(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n-ary link families need arity >= 1, got {n!r}")


def tensor_n_type(n: int) -> LinkType:
    _check_arity(n)
    return _lt(f"tensor_{n}", n, 1, [[_inputs(n) + ["o1"]]])


def par_n_type(n: int) -> LinkType:
    _check_arity(n)
    members = []
    for k in range(1, n + 1):
        members.append([[f"i{j}", "o1"] if j == k else [f"i{j}"] for j in range(1, n + 1)])
    return _lt(f"par_{n}", n, 1, members)


def tensor_bullet_n_type(n: int) -> LinkType:
    _check_arity(n)
    return _lt(f"tensor_bullet_{n}", n, 0, [[_inputs(n)]])


def par_bullet_n_type(n: int) -> LinkType:
    _check_arity(n)
    return _lt(f"par_bullet_{n}", n, 0, [[[x] for x in _inputs(n)]])


_FAMILY = re.compile(r"^(tensor|par|tensor_bullet|par_bullet)_(\d+)$")
_FIXED = {"ax": ax_type, "tensor": tensor_type, "par": par_type, "cut": cut_type}
_FAMILIES = {
    "tensor": tensor_n_type,
    "par": par_n_type,
    "tensor_bullet": tensor_bullet_n_type,
    "par_bullet": par_bullet_n_type,
}


_GIRARD = re.compile(r"^(G|Gdual)_(\d+)_(\d+)$")


@lru_cache(maxsize=None)
def builtin_type(name: str) -> LinkType | None:
    if name in _FIXED:
        return _FIXED[name]()
    m = _FAMILY.match(name)
    if m:
        return _FAMILIES[m.group(1)](int(m.group(2)))
    m = _GIRARD.match(name)
    if m:
        from .connectives import girard_type

        pol = "primal" if m.group(1) == "G" else "dual"
        return girard_type(int(m.group(2)), int(m.group(3)), pol).link
    return None


class Signature(Mapping[str, LinkType]):
    """Name -> LinkType map.  Builtin names resolve on demand."""

    def __init__(self, types: Iterable[LinkType] = ()):
        self._types: dict[str, LinkType] = {}
        for t in types:
            if t.name in self._types and self._types[t.name] != t:
                raise DomainError(f"duplicate link type name {t.name!r}")
            self._types[t.name] = t

    def __getitem__(self, name: str) -> LinkType:
        if name in self._types:
            return self._types[name]
        t = builtin_type(name)
        if t is None:
            raise KeyError(name)
        return t

    def __contains__(self, name) -> bool:
        return name in self._types or builtin_type(name) is not None

    def __iter__(self) -> Iterator[str]:
        return iter(self._types)

    def __len__(self) -> int:
        return len(self._types)

    def __eq__(self, other) -> bool:
        return isinstance(other, Signature) and self._types == other._types

    def __hash__(self) -> int:
        return hash(frozenset(self._types))

    def __repr__(self) -> str:
        return f"Signature({sorted(self._types)})"

    def custom(self) -> list[LinkType]:
        """Registered types that are not builtins."""
        return [t for n, t in self._types.items() if builtin_type(n) != t]

    def extend(self, *types: LinkType) -> "Signature":
        return Signature(list(self._types.values()) + list(types))

    def merge(self, other: "Signature") -> "Signature":
        return Signature(list(self._types.values()) + list(other._types.values()))


def builtin_types(arities: Iterable[int] = (1, 2, 3, 4)) -> Signature:
    types = [ax_type(), tensor_type(), par_type(), cut_type()]
    for n in arities:
        types += [tensor_n_type(n), par_n_type(n), tensor_bullet_n_type(n), par_bullet_n_type(n)]
    return Signature(types)


@dataclass(frozen=True)
class Switching:
    """One partition per link, instantiated on the link's actual vertices."""

    choices: tuple[tuple[str, Partition], ...]

    def as_dict(self) -> dict[str, Partition]:
        return dict(self.choices)

    def to_json(self) -> dict:
        return {eid: p.to_json() for eid, p in self.choices}

    def __getitem__(self, eid: str) -> Partition:
        return self.as_dict()[eid]


_enumerated: ContextVar[list | None] = ContextVar("enumerated_structures", default=None)


@contextmanager
def record_switching_enumerations():
    """Collect every structure whose switchings are enumerated in this context."""
    seen: list = []
    token = _enumerated.set(seen)
    try:
        yield seen
    finally:
        _enumerated.reset(token)


@dataclass(frozen=True)
class _Compiled:
    vertex_ids: tuple[str, ...]
    border_idx: tuple[int, ...]
    input_idx: tuple[int, ...]
    output_idx: tuple[int, ...]
    edge_ids: tuple[str, ...]
    # options[e][k] = blocks (tuples of vertex indices) of the k-th partition
    options: tuple[tuple[tuple[tuple[int, ...], ...], ...], ...]
    partitions: tuple[tuple[Partition, ...], ...]

    @property
    def n_switchings(self) -> int:
        return math.prod(len(o) for o in self.options)


@dataclass(frozen=True)
class MStructure:
    """A linear hypergraph whose edge payloads name link types of ``signature``."""

    graph: Hypergraph
    signature: Signature = field(default_factory=Signature)

    def __post_init__(self):
        if not is_linear(self.graph):
            raise DomainError("a multiplicative structure must be linear")
        for e in self.graph.edges:
            if e.payload not in self.signature:
                raise DomainError(f"link {e.id}: unknown type {e.payload!r}")
            t = self.signature[e.payload]
            if len(e.inputs) != t.n_in or len(e.outputs) != t.n_out:
                raise DomainError(
                    f"link {e.id}: type {t.name} expects {t.n_in} inputs / {t.n_out} outputs, "
                    f"got {len(e.inputs)} / {len(e.outputs)}"
                )

    def __hash__(self) -> int:
        return hash(self.graph)

    @classmethod
    def build(cls, links: Iterable, vertices: Iterable = (), signature: Signature | None = None):
        """Build from ``(id, type, inputs, outputs)`` tuples."""
        edges = [Hyperedge(eid, tuple(i), tuple(o), t) for eid, t, i, o in links]
        return cls(Hypergraph.build(vertices, edges), signature or Signature())

    def link_type(self, e: Hyperedge) -> LinkType:
        return self.signature[e.payload]

    @property
    def links(self) -> tuple[Hyperedge, ...]:
        return self.graph.edges

    @cached_property
    def inputs(self) -> frozenset[str]:
        return graph_inputs(self.graph)

    @cached_property
    def outputs(self) -> frozenset[str]:
        return graph_outputs(self.graph)

    @cached_property
    def border(self) -> frozenset[str]:
        return graph_border(self.graph)

    def label(self, vid: str) -> str | None:
        return self.graph.label(vid)

    def with_labels(self, labels: Mapping[str, str | None]) -> "MStructure":
        vs = tuple(Vertex(v.id, labels.get(v.id, v.label)) for v in self.graph.vertices)
        return MStructure(Hypergraph(vs, self.graph.edges), self.signature)

    @cached_property
    def _compiled(self) -> _Compiled:
        vids = self.graph.vertex_ids
        idx = {v: k for k, v in enumerate(vids)}
        options = []
        parts = []
        for e in self.graph.edges:
            t = self.link_type(e)
            inst = dict(zip(t.ports, e.inputs + e.outputs))
            edge_opts = []
            edge_parts = []
            for p in t.behavior:
                actual = p.rename(inst)
                edge_parts.append(actual)
                edge_opts.append(tuple(tuple(idx[x] for x in b) for b in actual.blocks))
            options.append(tuple(edge_opts))
            parts.append(tuple(edge_parts))
        bset = self.border
        return _Compiled(
            vertex_ids=vids,
            border_idx=tuple(idx[v] for v in vids if v in bset),
            input_idx=tuple(idx[v] for v in vids if v in self.inputs),
            output_idx=tuple(idx[v] for v in vids if v in self.outputs),
            edge_ids=tuple(e.id for e in self.graph.edges),
            options=tuple(options),
            partitions=tuple(parts),
        )

    @cached_property
    def _behavior_cache(self) -> dict:
        return {}


def count_switchings(s: MStructure) -> int:
    return s._compiled.n_switchings


def _choice_vectors(s: MStructure, bound: int | None, stream: bool) -> Iterator[tuple[int, ...]]:
    c = s._compiled
    limit = config.switching_bound() if bound is None else bound
    if not stream and c.n_switchings > limit:
        raise ResourceError(f"{c.n_switchings} switchings exceed the bound {limit}")
    rec = _enumerated.get()
    if rec is not None:
        rec.append(s)
    return itertools.product(*(range(len(o)) for o in c.options))


def _switching(s: MStructure, vec: tuple[int, ...]) -> Switching:
    c = s._compiled
    return Switching(tuple((eid, c.partitions[e][k]) for e, (eid, k) in enumerate(zip(c.edge_ids, vec))))


def enumerate_switchings(
    s: MStructure, bound: int | None = None, stream: bool = False
) -> Iterator[Switching]:
    """All switchings in canonical order (edges by id, partitions canonically).

    Raises :class:`ResourceError` if there are more than ``bound`` of them,
    unless ``stream`` is set.
    """
    for vec in _choice_vectors(s, bound, stream):
        yield _switching(s, vec)


def _run(c: _Compiled, vec: tuple[int, ...]) -> tuple[list[int], bool]:
    parent = list(range(len(c.vertex_ids)))
    cyclic = False

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for opts, k in zip(c.options, vec):
        for block in opts[k]:
            r0 = find(block[0])
            for x in block[1:]:
                r = find(x)
                if r == r0:
                    cyclic = True
                else:
                    parent[r] = r0
    roots = [find(i) for i in range(len(parent))]
    return roots, cyclic


def _vector_of(s: MStructure, sigma: Switching) -> tuple[int, ...]:
    c = s._compiled
    chosen = sigma.as_dict()
    vec = []
    for e, eid in enumerate(c.edge_ids):
        if eid not in chosen:
            raise DomainError(f"switching does not cover link {eid}")
        try:
            vec.append(c.partitions[e].index(chosen[eid]))
        except ValueError:
            raise DomainError(f"{chosen[eid]} is not in the behavior of link {eid}") from None
    return tuple(vec)


def test(s: MStructure, sigma: Switching) -> UndirectedHypergraph:
    """The undirected hypergraph induced by a switching."""
    _vector_of(s, sigma)
    uedges = []
    for eid, p in sigma.choices:
        uedges.extend(frozenset(b) for b in p.blocks)
    return UndirectedHypergraph(s.graph.vertex_ids, tuple(uedges))


def _border_partition(c: _Compiled, roots: list[int]) -> Partition:
    return Partition.from_labels({c.vertex_ids[i]: roots[i] for i in c.border_idx})


def test_behavior(s: MStructure, sigma: Switching) -> Partition:
    c = s._compiled
    roots, _ = _run(c, _vector_of(s, sigma))
    return _border_partition(c, roots)


def iter_tests(s: MStructure, bound: int | None = None, stream: bool = False):
    """Yield ``(switching, test hypergraph)`` pairs in canonical order."""
    for sigma in enumerate_switchings(s, bound, stream):
        yield sigma, test(s, sigma)


def behavior(s: MStructure, bound: int | None = None) -> PartitionSet:
    """The set of border partitions induced by all tests."""
    cache = s._behavior_cache
    if "behavior" in cache:
        return cache["behavior"]
    c = s._compiled
    seen = set()
    for vec in _choice_vectors(s, bound, False):
        roots, _ = _run(c, vec)
        seen.add(tuple(roots[i] for i in c.border_idx))
    out = []
    for key in seen:
        out.append(Partition.from_labels({c.vertex_ids[i]: r for i, r in zip(c.border_idx, key)}))
    result = PartitionSet(s.border, out)
    cache["behavior"] = result
    return result


def first_failing_test(s: MStructure, bound: int | None = None) -> Switching | None:
    """Lexicographically first switching whose test is not a tree, if any."""
    c = s._compiled
    n = len(c.vertex_ids)
    for vec in _choice_vectors(s, bound, False):
        roots, cyclic = _run(c, vec)
        if cyclic or n == 0 or len(set(roots)) != 1:
            return _switching(s, vec)
    return None


def is_correct(s: MStructure, bound: int | None = None) -> bool:
    """Every test is connected and acyclic."""
    return first_failing_test(s, bound) is None


def is_net(s: MStructure, bound: int | None = None) -> bool:
    return not s.inputs and bool(s.outputs) and is_correct(s, bound)


@dataclass(frozen=True)
class ComponentWitness:
    """Why a structure fails to be a component under one switching."""

    switching: Switching | None
    reason: str  # "cyclic" | "unreached" | "empty-border"
    unreached: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "switching": self.switching.to_json() if self.switching else None,
            "reason": self.reason,
            "unreached": list(self.unreached),
        }


def component_witness(s: MStructure, bound: int | None = None) -> ComponentWitness | None:
    c = s._compiled
    if not c.vertex_ids:
        return None
    if not c.border_idx:
        return ComponentWitness(None, "empty-border")
    for vec in _choice_vectors(s, bound, False):
        roots, cyclic = _run(c, vec)
        if cyclic:
            return ComponentWitness(_switching(s, vec), "cyclic")
        good = {roots[i] for i in c.border_idx}
        lost = tuple(c.vertex_ids[i] for i, r in enumerate(roots) if r not in good)
        if lost:
            return ComponentWitness(_switching(s, vec), "unreached", lost)
    return None


def is_component(s: MStructure, bound: int | None = None) -> bool:
    """Every test is acyclic and joins every vertex to some border vertex."""
    return component_witness(s, bound) is None


def is_transitory(s: MStructure, bound: int | None = None) -> bool:
    """A component in which each input reaches an output in at least one test.

    An isolated vertex is its own output, so it reaches one trivially.
    """
    if not is_component(s, bound):
        return False
    c = s._compiled
    pending = set(c.input_idx)
    outs = c.output_idx
    for vec in _choice_vectors(s, bound, False):
        if not pending:
            break
        roots, _ = _run(c, vec)
        out_roots = {roots[o] for o in outs}
        pending = {i for i in pending if roots[i] not in out_roots}
    return not pending


MLL_TYPES = ("ax", "tensor", "par")


def dr_check_mll(s: MStructure) -> bool:
    """Classic switching criterion for structures over ax / tensor / par.

    Coded separately from the behavior machinery: each par link contributes
    one ordinary edge from a chosen premise to its conclusion, and each test
    must be a tree.  A proof net also needs no inputs and a non-empty
    conclusion.
    """
    for e in s.links:
        if e.payload not in MLL_TYPES or s.link_type(e) != builtin_type(e.payload):
            raise DomainError(f"link {e.id} of type {e.payload!r} is not an MLL link")
    if s.inputs or not s.outputs:
        return False
    base = nx.Graph()
    base.add_nodes_from(("v", v) for v in s.graph.vertex_ids)
    pars = []
    for e in s.links:
        if e.payload == "par":
            pars.append(e)
            continue
        node = ("e", e.id)
        base.add_node(node)
        for x in e.border:
            base.add_edge(node, ("v", x))
    for choice in itertools.product((0, 1), repeat=len(pars)):
        g = base.copy()
        for e, side in zip(pars, choice):
            g.add_edge(("v", e.inputs[side]), ("v", e.outputs[0]))
        if not nx.is_tree(g):
            return False
    return True


def substructure(s: MStructure, edge_ids: Iterable[str]) -> MStructure:
    """The sub-structure spanned by some links and the vertices they touch."""
    keep = set(edge_ids)
    edges = [e for e in s.links if e.id in keep]
    vids = {x for e in edges for x in e.border}
    verts = [v for v in s.graph.vertices if v.id in vids]
    return MStructure(Hypergraph(tuple(verts), tuple(edges)), s.signature)


def link_type_of(
    s: MStructure,
    name: str,
    inputs: Sequence[str] | None = None,
    outputs: Sequence[str] | None = None,
) -> LinkType:
    """Package a structure's behavior as a single link type.

    Border vertices are mapped positionally onto ``i1..`` / ``o1..``; by
    default in natural id order.
    """
    ins = list(inputs) if inputs is not None else sorted(s.inputs, key=elem_key)
    outs = list(outputs) if outputs is not None else sorted(s.outputs, key=elem_key)
    if set(ins) & set(outs):
        raise DomainError("isolated vertices cannot be assigned a single port")
    if set(ins) | set(outs) != set(s.border) or len(ins) + len(outs) != len(s.border):
        raise DomainError("inputs/outputs must enumerate the border exactly once")
    formal = dict(zip(ins + outs, ports(len(ins), len(outs))))
    return LinkType(name, len(ins), len(outs), behavior(s).rename(formal))


def _as_digraph(s: MStructure, labels: bool) -> nx.DiGraph:
    g = nx.DiGraph()
    for v in s.graph.vertices:
        g.add_node(("v", v.id), kind="v", tag=v.label if labels else None)
    for e in s.links:
        t = s.link_type(e)
        g.add_node(("e", e.id), kind="e", tag=(t.n_in, t.n_out, t.behavior))
        for k, x in enumerate(e.inputs):
            g.add_edge(("v", x), ("e", e.id), port=("in", k))
        for k, x in enumerate(e.outputs):
            g.add_edge(("e", e.id), ("v", x), port=("out", k))
    return g


def isomorphism(s: MStructure, t: MStructure, labels: bool = True) -> dict[str, str] | None:
    """A vertex bijection s -> t preserving links, port order, types and labels.

    Link types are compared by arity and behavior, not by name.
    """
    gs, gt = _as_digraph(s, labels), _as_digraph(t, labels)
    if gs.number_of_nodes() != gt.number_of_nodes() or gs.number_of_edges() != gt.number_of_edges():
        return None
    m = DiGraphMatcher(
        gs,
        gt,
        node_match=lambda a, b: a["kind"] == b["kind"] and a["tag"] == b["tag"],
        edge_match=lambda a, b: a["port"] == b["port"],
    )
    for mapping in m.isomorphisms_iter():
        return {a[1]: b[1] for a, b in mapping.items() if a[0] == "v"}
    return None


def is_isomorphic(s: MStructure, t: MStructure, labels: bool = True) -> bool:
    return isomorphism(s, t, labels) is not None
