"""Generators of small multiplicative structures for exhaustive and random checks."""
from __future__ import annotations

import itertools
import random
from typing import Iterator, Sequence

from .errors import DomainError
from .hypergraph import Hyperedge, Hypergraph, Vertex
from .mstructure import MStructure, Signature, builtin_type

MLL = ("ax", "tensor", "par")
SMALL_TYPES = (
    "ax",
    "tensor",
    "par",
    "cut",
    "par_1",
    "par_3",
    "tensor_3",
    "par_bullet_1",
    "par_bullet_2",
    "tensor_bullet_2",
)


def _ports(types: Sequence[str]):
    ins, outs = [], []
    for k, name in enumerate(types):
        t = builtin_type(name)
        ins += [(k, j) for j in range(t.n_in)]
        outs += [(k, j) for j in range(t.n_out)]
    return ins, outs


def _assemble(types: Sequence[str], matching: dict, signature: Signature | None = None) -> MStructure:
    edges = []
    for k, name in enumerate(types):
        t = builtin_type(name)
        inputs = tuple(
            f"v{matching[(k, j)][0]}.{matching[(k, j)][1]}" if (k, j) in matching else f"w{k}.{j}"
            for j in range(t.n_in)
        )
        outputs = tuple(f"v{k}.{j}" for j in range(t.n_out))
        edges.append(Hyperedge(f"l{k}", inputs, outputs, name))
    return MStructure(Hypergraph.build((), edges), signature or Signature())


def _matchings(ins, outs) -> Iterator[dict]:
    """Partial injective maps from input ports to output ports of other links."""
    used: set = set()
    current: dict = {}

    def rec(i):
        if i == len(ins):
            yield dict(current)
            return
        yield from rec(i + 1)
        port = ins[i]
        for o in outs:
            if o in used or o[0] == port[0]:
                continue
            used.add(o)
            current[port] = o
            yield from rec(i + 1)
            del current[port]
            used.discard(o)

    return rec(0)


def enumerate_structures(types: Sequence[str] = MLL, max_links: int = 2) -> Iterator[MStructure]:
    """Every way of wiring up to ``max_links`` links, one multiset at a time.

    Isomorphic copies are not removed.
    """
    for n in range(1, max_links + 1):
        for combo in itertools.combinations_with_replacement(types, n):
            ins, outs = _ports(combo)
            for m in _matchings(ins, outs):
                yield _assemble(combo, m)


def isolated_vertices(n: int) -> MStructure:
    return MStructure(Hypergraph(tuple(Vertex(f"x{k}") for k in range(n)), ()))


def random_structure(rng: random.Random, types: Sequence[str] = SMALL_TYPES, max_links: int = 3) -> MStructure:
    n = rng.randint(1, max_links)
    combo = [rng.choice(types) for _ in range(n)]
    ins, outs = _ports(combo)
    rng.shuffle(ins)
    free = list(outs)
    matching = {}
    for port in ins:
        if rng.random() < 0.5:
            options = [o for o in free if o[0] != port[0]]
            if options:
                o = rng.choice(options)
                free.remove(o)
                matching[port] = o
    return _assemble(combo, matching)


EXHAUSTIVE_TYPES = ("ax", "tensor", "par", "par_1", "par_bullet_1", "tensor_bullet_2")


def component_corpus(types: Sequence[str] = EXHAUSTIVE_TYPES, max_links: int = 2) -> list[MStructure]:
    """Components with up to ``max_links`` links, one per isomorphism class.

    A single isolated vertex is included as the 0-link component.
    """
    from .mstructure import is_component, is_isomorphic

    found: list[MStructure] = []
    for s in itertools.chain([isolated_vertices(1)], enumerate_structures(types, max_links)):
        if is_component(s) and not any(is_isomorphic(s, t) for t in found):
            found.append(s)
    return found


def random_components(rng: random.Random, count: int, types: Sequence[str] = SMALL_TYPES, max_links: int = 3) -> list[MStructure]:
    from .mstructure import is_component

    out = []
    while len(out) < count:
        s = random_structure(rng, types, max_links)
        if is_component(s):
            out.append(s)
    return out


def random_sites(rng: random.Random, pool: Sequence[MStructure], count: int, max_glue: int = 2):
    """Random (host, guest, X) triples drawn from a pool of components."""
    from .expansion import ExpansionSite

    hosts = [s for s in pool if s.inputs]
    guests = [s for s in pool if s.outputs]
    if not hosts or not guests:
        raise DomainError("the pool needs a structure with inputs and one with outputs")
    out = []
    while len(out) < count:
        h, g = rng.choice(hosts), rng.choice(guests)
        k = rng.randint(1, min(max_glue, len(h.inputs), len(g.outputs)))
        xs = rng.sample(sorted(h.inputs), k)
        ys = rng.sample(sorted(g.outputs), k)
        out.append(ExpansionSite(h, g, tuple(zip(xs, ys))))
    return out
