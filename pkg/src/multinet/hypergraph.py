"""Directed linear hypergraphs and their undirected shadows.

A hyperedge is a pair of vertex lists (inputs, outputs) plus an opaque
payload.  A hypergraph is *linear* when every vertex is the input of at most
one hyperedge and the output of at most one hyperedge.  Inputs of the whole
graph are the vertices that are not the output of any edge; outputs are the
vertices that are not the input of any edge (an isolated vertex is both).

Vertex labels are carried along but ignored by every graph-theoretic
operation here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import CompositionError, DomainError
from .partitions import Partition, elem_key


@dataclass(frozen=True)
class Vertex:
    id: str
    label: str | None = None


@dataclass(frozen=True)
class Hyperedge:
    id: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    payload: Any = None

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if len(set(self.inputs)) != len(self.inputs) or len(set(self.outputs)) != len(self.outputs):
            raise DomainError(f"hyperedge {self.id}: repeated vertex in a port list")
        if set(self.inputs) & set(self.outputs):
            raise DomainError(f"hyperedge {self.id}: a vertex is both input and output")

    @property
    def border(self) -> tuple[str, ...]:
        return self.inputs + self.outputs


def _id_key(x):
    return elem_key(x)


@dataclass(frozen=True)
class Hypergraph:
    """Immutable hypergraph; vertices and edges are kept sorted by id."""

    vertices: tuple[Vertex, ...] = ()
    edges: tuple[Hyperedge, ...] = ()
    _vindex: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        vs = tuple(sorted(self.vertices, key=lambda v: _id_key(v.id)))
        es = tuple(sorted(self.edges, key=lambda e: _id_key(e.id)))
        index = {v.id: v for v in vs}
        if len(index) != len(vs):
            raise DomainError("duplicate vertex id")
        if len({e.id for e in es}) != len(es):
            raise DomainError("duplicate hyperedge id")
        for e in es:
            for x in e.border:
                if x not in index:
                    raise DomainError(f"hyperedge {e.id} uses unknown vertex {x!r}")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)
        object.__setattr__(self, "_vindex", index)

    @classmethod
    def build(cls, vertices: Iterable = (), edges: Iterable = ()) -> "Hypergraph":
        """Convenience constructor.

        ``vertices`` items may be ``Vertex``, bare ids, or ``(id, label)``
        pairs.  ``edges`` items may be ``Hyperedge`` or
        ``(id, inputs, outputs[, payload])`` tuples.  Vertices mentioned only
        by edges are added unlabeled.
        """
        vs: dict[str, Vertex] = {}
        for v in vertices:
            if isinstance(v, Vertex):
                vs[v.id] = v
            elif isinstance(v, tuple):
                vs[v[0]] = Vertex(v[0], v[1])
            else:
                vs[v] = Vertex(v)
        es = []
        for e in edges:
            if not isinstance(e, Hyperedge):
                e = Hyperedge(*e)
            for x in e.border:
                vs.setdefault(x, Vertex(x))
            es.append(e)
        return cls(tuple(vs.values()), tuple(es))

    @property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    def vertex(self, vid: str) -> Vertex:
        return self._vindex[vid]

    def label(self, vid: str) -> str | None:
        return self._vindex[vid].label

    def edge(self, eid: str) -> Hyperedge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def __contains__(self, vid) -> bool:
        return vid in self._vindex


def graph_inputs(g: Hypergraph) -> frozenset[str]:
    produced = {x for e in g.edges for x in e.outputs}
    return frozenset(v for v in g.vertex_ids if v not in produced)


def graph_outputs(g: Hypergraph) -> frozenset[str]:
    consumed = {x for e in g.edges for x in e.inputs}
    return frozenset(v for v in g.vertex_ids if v not in consumed)


def border(g: Hypergraph) -> frozenset[str]:
    return graph_inputs(g) | graph_outputs(g)


def is_linear(g: Hypergraph) -> bool:
    seen_in: set[str] = set()
    seen_out: set[str] = set()
    for e in g.edges:
        for x in e.inputs:
            if x in seen_in:
                return False
            seen_in.add(x)
        for x in e.outputs:
            if x in seen_out:
                return False
            seen_out.add(x)
    return True


def is_dag(g: Hypergraph) -> bool:
    """True iff no directed cycle runs through the hyperedges."""
    succ: dict[str, list[str]] = {v: [] for v in g.vertex_ids}
    for e in g.edges:
        for x in e.inputs:
            succ[x].extend(e.outputs)
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(succ, WHITE)
    for root in succ:
        if colour[root] != WHITE:
            continue
        stack = [(root, iter(succ[root]))]
        colour[root] = GREY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[node] = BLACK
                stack.pop()
            elif colour[nxt] == GREY:
                return False
            elif colour[nxt] == WHITE:
                colour[nxt] = GREY
                stack.append((nxt, iter(succ[nxt])))
    return True


@dataclass(frozen=True)
class UndirectedHypergraph:
    vertices: tuple[str, ...]
    uedges: tuple[frozenset, ...]

    def __post_init__(self):
        vs = set(self.vertices)
        for e in self.uedges:
            if not e:
                raise DomainError("undirected hyperedges must be non-empty")
            if not e <= vs:
                raise DomainError(f"undirected hyperedge {sorted(e)} uses unknown vertices")


def undirected_shadow(g: Hypergraph) -> UndirectedHypergraph:
    return UndirectedHypergraph(
        g.vertex_ids, tuple(frozenset(e.border) for e in g.edges if e.border)
    )


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.cyclic = False

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self.cyclic = True
        else:
            self.parent[ra] = rb


def _scan(u: UndirectedHypergraph) -> _UnionFind:
    # Joining every member of a uedge to its first member is exactly adding
    # the uedge's node to the bipartite incidence expansion.
    uf = _UnionFind(u.vertices)
    for e in u.uedges:
        it = iter(e)
        first = next(it)
        for x in it:
            uf.union(first, x)
    return uf


def connected_components(u: UndirectedHypergraph) -> Partition:
    uf = _scan(u)
    return Partition.from_labels({v: uf.find(v) for v in u.vertices})


def is_forest(u: UndirectedHypergraph) -> bool:
    return not _scan(u).cyclic


def is_tree(u: UndirectedHypergraph) -> bool:
    uf = _scan(u)
    if uf.cyclic or not u.vertices:
        return False
    roots = {uf.find(v) for v in u.vertices}
    return len(roots) == 1


def _fresh(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    k = 1
    while f"{base}'{k}" in taken:
        k += 1
    return f"{base}'{k}"


def rename(g: Hypergraph, vmap: dict[str, str], emap: dict[str, str] | None = None) -> Hypergraph:
    """Rename vertices (and optionally edges); unmapped ids are kept."""
    emap = emap or {}
    vs = [Vertex(vmap.get(v.id, v.id), v.label) for v in g.vertices]
    es = [
        Hyperedge(
            emap.get(e.id, e.id),
            tuple(vmap.get(x, x) for x in e.inputs),
            tuple(vmap.get(x, x) for x in e.outputs),
            e.payload,
        )
        for e in g.edges
    ]
    return Hypergraph(tuple(vs), tuple(es))


def disjoint_union(g: Hypergraph, h: Hypergraph) -> tuple[Hypergraph, dict, dict]:
    """Disjoint union; colliding ids of ``h`` are renamed.

    Returns ``(union, vertex_map, edge_map)`` where the maps send ids of
    ``h`` to their ids in the union.
    """
    vtaken = set(g.vertex_ids)
    vmap = {}
    for v in h.vertices:
        new = _fresh(v.id, vtaken)
        vtaken.add(new)
        vmap[v.id] = new
    etaken = {e.id for e in g.edges}
    emap = {}
    for e in h.edges:
        new = _fresh(e.id, etaken)
        etaken.add(new)
        emap[e.id] = new
    h2 = rename(h, vmap, emap)
    union = Hypergraph(g.vertices + h2.vertices, g.edges + h2.edges)
    return union, vmap, emap


@dataclass(frozen=True)
class Interface:
    """Ordered pairs ``(vertex of G, vertex of H)`` to be identified."""

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        pairs = tuple((a, b) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise DomainError("an interface needs at least one pair")
        left = [a for a, _ in pairs]
        right = [b for _, b in pairs]
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise DomainError("interface projections must be injective")


def compose(
    g: Hypergraph, h: Hypergraph, interface: Interface | Sequence[tuple[str, str]]
) -> tuple[Hypergraph, dict, dict]:
    """Glue ``h`` onto ``g`` identifying each pair of the interface.

    The identified vertex keeps ``g``'s id and label.  Returns
    ``(composite, vertex_map, edge_map)`` with the maps from ids of ``h``.
    """
    if not isinstance(interface, Interface):
        interface = Interface(tuple(interface))
    for a, b in interface.pairs:
        if a not in g:
            raise DomainError(f"interface vertex {a!r} not in the first graph")
        if b not in h:
            raise DomainError(f"interface vertex {b!r} not in the second graph")
    glue = {b: a for a, b in interface.pairs}
    # Rename h first so that glued vertices take g's ids and nothing else
    # collides with g.
    vtaken = set(g.vertex_ids)
    vmap = {}
    for v in h.vertices:
        if v.id in glue:
            vmap[v.id] = glue[v.id]
        else:
            new = _fresh(v.id, vtaken)
            vtaken.add(new)
            vmap[v.id] = new
    etaken = {e.id for e in g.edges}
    emap = {}
    for e in h.edges:
        new = _fresh(e.id, etaken)
        etaken.add(new)
        emap[e.id] = new
    h2 = rename(h, vmap, emap)
    glued_ids = set(glue.values())
    extra = tuple(v for v in h2.vertices if v.id not in glued_ids)
    result = Hypergraph(g.vertices + extra, g.edges + h2.edges)
    if not is_linear(result):
        raise CompositionError("composition breaks linearity")
    return result, vmap, emap
