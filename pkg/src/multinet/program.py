"""Methods, their compiled components, and a bounded expansion engine.

A method has a head (atoms it produces) and a body (clauses of atoms it
consumes).  Compiled, the head atoms become the component's outputs and the
body atoms its inputs, so a method is applied by gluing its outputs onto
inputs of the current state carrying the same labels.  A state with no
inputs is a solution.

Compilation, for head ``h1..hk`` and clauses ``C1..Cm``:

* header: one ``ax`` per head atom, the dual ends gathered by ``tensor_k``;
* body: one ``par_j`` per clause (or a Girard link for a generalized
  clause), gathered by ``tensor_m``;
* synchronizer: ``tensor`` of body and header, closed by ``par_bullet_1``.

Unary gathering links are identities on behaviors and are left out.  A fact
(no clauses) is a header closed by ``par_bullet_1``.  With a generalized
synchronizer the k-th clause output and the k-th head dual feed one Girard
link in alternation, closed by ``par_bullet_1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import CompileError, DomainError, ExpansionError
from .expansion import ExpansionSite, check_conditions, compose_site
from .hypergraph import Hyperedge, Hypergraph, Vertex, disjoint_union, rename
from .mstructure import (
    LinkType,
    MStructure,
    Signature,
    behavior,
    is_component,
    is_net,
    is_transitory,
    link_type_of,
)
from .partitions import PartitionSet, elem_key


@dataclass(frozen=True)
class Clause:
    """A disjunction of atoms, or the inputs of a named Girard link."""

    atoms: tuple[str, ...]
    link: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if not self.atoms:
            raise DomainError("a clause needs at least one atom")


@dataclass(frozen=True)
class Method:
    name: str
    head: tuple[str, ...]
    body: tuple[Clause, ...] = ()
    synchro: str | None = None  # Girard link name for a generalized synchronizer

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(self.head))
        body = tuple(c if isinstance(c, Clause) else Clause(tuple(c)) for c in self.body)
        object.__setattr__(self, "body", body)
        if not self.head:
            raise DomainError(f"method {self.name}: the head needs at least one atom")

    @property
    def is_fact(self) -> bool:
        return not self.body


def compile_method(m: Method, signature: Signature | None = None) -> MStructure:
    sig = signature or Signature()
    vertices: list[Vertex] = []
    edges: list[Hyperedge] = []

    def link(eid, type_name, ins, outs):
        if type_name not in sig:
            raise CompileError(f"method {m.name}: unknown link type {type_name!r}")
        t = sig[type_name]
        if (t.n_in, t.n_out) != (len(ins), len(outs)):
            raise CompileError(
                f"method {m.name}: {type_name} takes {t.n_in} inputs, got {len(ins)}"
            )
        edges.append(Hyperedge(eid, tuple(ins), tuple(outs), type_name))

    duals = []
    for j, atom in enumerate(m.head, 1):
        vertices += [Vertex(f"h{j}~", f"~{atom}"), Vertex(f"h{j}", atom)]
        link(f"ax{j}", "ax", (), (f"h{j}~", f"h{j}"))
        duals.append(f"h{j}~")

    clause_outs = []
    for j, clause in enumerate(m.body, 1):
        ins = [f"b{j}.{k}" for k in range(1, len(clause.atoms) + 1)]
        vertices += [Vertex(v, a) for v, a in zip(ins, clause.atoms)]
        if clause.link is None and len(ins) == 1:
            clause_outs.append(ins[0])
            continue
        vertices.append(Vertex(f"c{j}"))
        if clause.link is not None:
            kind = clause.link
        else:
            kind = "par" if len(ins) == 2 else f"par_{len(ins)}"
        link(f"cl{j}", kind, ins, (f"c{j}",))
        clause_outs.append(f"c{j}")

    if m.synchro is not None:
        if len(duals) != len(clause_outs):
            raise CompileError(
                f"method {m.name}: a generalized synchronizer pairs each clause with one head atom"
            )
        vertices.append(Vertex("s"))
        link("sync", m.synchro, [x for pair in zip(clause_outs, duals) for x in pair], ("s",))
        link("end", "par_bullet_1", ("s",), ())
        return MStructure(Hypergraph(tuple(vertices), tuple(edges)), sig)

    def gather(eid, ins, out):
        if len(ins) == 1:
            return ins[0]
        vertices.append(Vertex(out))
        link(eid, "tensor" if len(ins) == 2 else f"tensor_{len(ins)}", ins, (out,))
        return out

    hout = gather("hdr", duals, "hout")
    if not clause_outs:
        link("end", "par_bullet_1", (hout,), ())
    else:
        bout = gather("body", clause_outs, "bout")
        vertices.append(Vertex("s"))
        link("sync", "tensor", (bout, hout), ("s",))
        link("end", "par_bullet_1", ("s",), ())
    return MStructure(Hypergraph(tuple(vertices), tuple(edges)), sig)


def method_link(m: Method, signature: Signature | None = None) -> tuple[LinkType, tuple, tuple]:
    """Package a compiled method as one link: ``(type, input labels, output labels)``."""
    s = compile_method(m, signature)
    ins = sorted(s.inputs, key=elem_key)
    outs = sorted(s.outputs, key=elem_key)
    t = link_type_of(s, f"M_{m.name}", ins, outs)
    return t, tuple(s.label(v) for v in ins), tuple(s.label(v) for v in outs)


def atomic_template(m: Method, signature: Signature | None = None) -> MStructure:
    """A method as a single link whose behavior is that of its compiled component."""
    t, in_labels, out_labels = method_link(m, signature)
    ins = [Vertex(f"in{k}", a) for k, a in enumerate(in_labels, 1)]
    outs = [Vertex(f"out{k}", a) for k, a in enumerate(out_labels, 1)]
    e = Hyperedge(m.name, tuple(v.id for v in ins), tuple(v.id for v in outs), t.name)
    sig = (signature or Signature()).extend(t)
    return MStructure(Hypergraph(tuple(ins + outs), (e,)), sig)


@dataclass(frozen=True)
class Program:
    methods: tuple[Method, ...]
    signature: Signature = field(default_factory=Signature)
    goals: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        names = [m.name for m in self.methods]
        if len(set(names)) != len(names):
            raise DomainError("method names must be unique")
        object.__setattr__(self, "methods", tuple(sorted(self.methods, key=lambda m: elem_key(m.name))))

    def method(self, name: str) -> Method:
        for m in self.methods:
            if m.name == name:
                return m
        raise KeyError(name)

    @cached_property
    def _templates(self) -> dict:
        return {}

    def template(self, name: str, atomic: bool = False) -> MStructure:
        key = (name, atomic)
        if key not in self._templates:
            m = self.method(name)
            self._templates[key] = (
                atomic_template(m, self.signature) if atomic else compile_method(m, self.signature)
            )
        return self._templates[key]


@dataclass(frozen=True)
class Step:
    """One engine step: methods applied together on disjoint state inputs."""

    applications: tuple[tuple[str, tuple[tuple[str, str], ...]], ...]

    def to_json(self) -> list:
        return [
            {"method": name, "glue": [{"state": a, "method": b} for a, b in pairs]}
            for name, pairs in self.applications
        ]


@dataclass(frozen=True)
class ExecutionState:
    structure: MStructure
    trace: tuple[Step, ...] = ()

    @property
    def depth(self) -> int:
        return len(self.trace)

    @property
    def open_inputs(self) -> list[tuple[str, str | None]]:
        return [(v, self.structure.label(v)) for v in sorted(self.structure.inputs, key=elem_key)]


def seed(goal: Sequence[str]) -> ExecutionState:
    """Edgeless start state with one labeled vertex per goal atom."""
    vs = tuple(Vertex(f"g{k}", a) for k, a in enumerate(goal, 1))
    return ExecutionState(MStructure(Hypergraph(vs, ()), Signature()))


@dataclass(frozen=True)
class Candidate:
    method: str
    pairs: tuple[tuple[str, str], ...]  # (state input, template output)

    @property
    def targets(self) -> frozenset[str]:
        return frozenset(a for a, _ in self.pairs)

    def sort_key(self):
        return (elem_key(self.method), tuple((elem_key(a), elem_key(b)) for a, b in self.pairs))


def matchings(state: ExecutionState, template: MStructure, method: str) -> list[Candidate]:
    """Total injective label-respecting maps from template outputs to state inputs."""
    s = state.structure
    outs = sorted(template.outputs, key=elem_key)
    free = sorted(s.inputs, key=elem_key)
    found = []
    for image in itertools.permutations(free, len(outs)):
        if all(s.label(a) == template.label(b) for a, b in zip(image, outs)):
            found.append(Candidate(method, tuple(sorted(zip(image, outs)))))
    return sorted(found, key=Candidate.sort_key)


def _instantiate(template: MStructure, cand: Candidate) -> MStructure:
    # Deterministic prefix: the same method on the same inputs gives the same ids.
    prefix = f"{cand.method}@{'+'.join(a for a, _ in cand.pairs)}/"
    g = template.graph
    vmap = {v: prefix + v for v in g.vertex_ids}
    emap = {e.id: prefix + e.id for e in g.edges}
    return MStructure(rename(g, vmap, emap), template.signature)


def _batch_site(state: ExecutionState, program: Program, batch: Sequence[Candidate], atomic: bool):
    guest = None
    pairs = []
    for cand in batch:
        copy = _instantiate(program.template(cand.method, atomic), cand)
        pairs += [(a, f"{cand.method}@{'+'.join(x for x, _ in cand.pairs)}/{b}") for a, b in cand.pairs]
        if guest is None:
            guest = copy
        else:
            g, _, _ = disjoint_union(guest.graph, copy.graph)
            guest = MStructure(g, guest.signature.merge(copy.signature))
    return ExpansionSite(state.structure, guest, tuple(pairs))


def applicable_sites(state: ExecutionState, program: Program, name: str, atomic: bool = False) -> list[ExpansionSite]:
    """Sites for one method that pass the expansion conditions."""
    sites = []
    for cand in matchings(state, program.template(name, atomic), name):
        site = _batch_site(state, program, [cand], atomic)
        if check_conditions(site).ok:
            sites.append(site)
    return sites


def apply(
    state: ExecutionState,
    program: Program,
    batch: Sequence[Candidate],
    atomic: bool = False,
    check: bool = True,
) -> ExecutionState:
    """Apply a batch of method applications on pairwise disjoint state inputs."""
    if not batch:
        raise DomainError("nothing to apply")
    seen: set = set()
    for cand in batch:
        if seen & cand.targets:
            raise DomainError("batched applications must use disjoint state inputs")
        seen |= cand.targets
    site = _batch_site(state, program, batch, atomic)
    report = check_conditions(site)
    if not report.ok:
        raise ExpansionError(
            f"cannot apply {[c.method for c in batch]}: condition ({report.failed}) fails",
            report.failed,
            report.witness,
        )
    new = compose_site(site).structure
    if check and not is_component(new):
        raise ExpansionError("expansion produced a non-component", None, None)
    step = Step(tuple((c.method, c.pairs) for c in batch))
    return ExecutionState(new, state.trace + (step,))


def apply_method(state: ExecutionState, program: Program, name: str, atomic: bool = False) -> ExecutionState:
    """Apply ``name`` at its first applicable site."""
    cands = matchings(state, program.template(name, atomic), name)
    for cand in cands:
        site = _batch_site(state, program, [cand], atomic)
        if check_conditions(site).ok:
            return apply(state, program, [cand], atomic)
    raise ExpansionError(f"method {name} has no applicable site", None, None)


def _batches(cands: list[Candidate], concurrent: bool) -> list[tuple[Candidate, ...]]:
    if not concurrent:
        return [(c,) for c in cands]
    out = []

    def rec(start, chosen, used):
        if chosen:
            out.append(tuple(chosen))
        for k in range(start, len(cands)):
            c = cands[k]
            if used & c.targets:
                continue
            chosen.append(c)
            rec(k + 1, chosen, used | c.targets)
            chosen.pop()

    rec(0, [], frozenset())
    out.sort(key=lambda b: (-len(b), [c.sort_key() for c in b]))
    return out


def successors(
    state: ExecutionState, program: Program, concurrent: bool = True, atomic: bool = False
) -> list[ExecutionState]:
    cands = []
    for m in program.methods:
        cands += matchings(state, program.template(m.name, atomic), m.name)
    out = []
    for batch in _batches(cands, concurrent):
        site = _batch_site(state, program, batch, atomic)
        if check_conditions(site).ok:
            out.append(apply(state, program, batch, atomic))
    return out


@dataclass(frozen=True)
class RunResult:
    status: str  # "solved" | "no_solution" | "bound"
    solutions: tuple[ExecutionState, ...]
    explored: int

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "explored": self.explored,
            "solutions": [
                {
                    "depth": s.depth,
                    "trace": [step.to_json() for step in s.trace],
                    "component": is_component(s.structure),
                    "net": is_net(s.structure),
                }
                for s in self.solutions
            ],
        }


def run(
    program: Program,
    start: ExecutionState,
    depth: int = 4,
    find_all: bool = False,
    concurrent: bool = True,
    atomic: bool = False,
    check_transitory: bool = False,
) -> RunResult:
    """Breadth-first search for input-free states within ``depth`` steps.

    States reached twice (same structure) are explored once.  With
    ``find_all`` every solution within the bound is returned, otherwise the
    search stops at the first level holding a solution.
    """
    if depth < 0:
        raise DomainError("depth must be non-negative")
    frontier = [start]
    seen = {start.structure.graph}
    solutions: list[ExecutionState] = []
    explored = 0
    cut_off = False
    for level in range(depth + 1):
        next_frontier = []
        for state in frontier:
            explored += 1
            if not is_component(state.structure):
                raise ExpansionError("reached a state that is not a component")
            if check_transitory and not is_transitory(state.structure):
                raise ExpansionError("reached a state that is not transitory")
            if not state.structure.inputs:
                solutions.append(state)
                continue
            if level == depth:
                cut_off = True
                continue
            for nxt in successors(state, program, concurrent, atomic):
                if nxt.structure.graph not in seen:
                    seen.add(nxt.structure.graph)
                    next_frontier.append(nxt)
        if solutions and not find_all:
            break
        frontier = next_frontier
    if solutions:
        status = "solved"
    elif cut_off:
        status = "bound"
    else:
        status = "no_solution"
    return RunResult(status, tuple(solutions), explored)


def realizable_connections(state: ExecutionState) -> PartitionSet:
    """Behavior of the state's structure (over vertex ids)."""
    return behavior(state.structure)


def labelled(structure: MStructure, parts: PartitionSet) -> PartitionSet:
    """Rename vertex ids to their labels where the label is unique on the border."""
    counts: dict = {}
    for v in parts.ground:
        lab = structure.label(v)
        counts[lab] = counts.get(lab, 0) + 1
    mapping = {
        v: structure.label(v)
        for v in parts.ground
        if structure.label(v) is not None and counts[structure.label(v)] == 1
    }
    return parts.rename(mapping)
