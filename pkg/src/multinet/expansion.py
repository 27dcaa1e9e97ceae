"""Expansion: gluing a guest component's outputs onto a host's inputs.

Two deciders are provided.  :func:`expands_direct` builds the composite and
enumerates its tests.  :func:`expands_characterized` only looks at the two
behaviors, so it costs ``|B(host)| * |B(guest)|`` pair checks and never
touches the composite's switchings.

The characterization works pair by pair.  For ``p`` in B(host) and ``q`` in
B(guest) the composite test is the host test glued to the guest test on X:

* it is acyclic iff ``p|X`` and ``q|X`` are weakly orthogonal, because each
  side is already a forest and a new cycle must alternate between host
  components and guest components through X;
* every vertex reaches the composite border iff every block of the join of
  ``p`` and ``q`` (glued on X) meets the composite border, because every
  vertex already reaches its own side's border.

The composite border is the two borders minus X, plus the glued vertices
that were isolated on one side (they stay unconsumed or unproduced).

:func:`one_sided_conditions` keeps the coarser per-vertex criterion (each
glued vertex is joined to a non-glued border vertex in every test of one
side).  It implies expansion but is not necessary; see the tests.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import DomainError, ExpansionError
from .hypergraph import Interface, compose
from .mstructure import (
    MStructure,
    behavior,
    is_component,
    is_transitory,
)
from .partitions import Partition, PartitionSet, weakly_orthogonal


@dataclass(frozen=True)
class ExpansionSite:
    """Glue ``guest`` below ``host``: each pair is (host input, guest output)."""

    host: MStructure
    guest: MStructure
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        pairs = tuple((a, b) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise DomainError("an expansion site needs at least one glued pair")
        Interface(pairs)
        for a, b in pairs:
            if a not in self.host.inputs:
                raise DomainError(f"{a!r} is not an input of the host")
            if b not in self.guest.outputs:
                raise DomainError(f"{b!r} is not an output of the guest")

    @property
    def host_side(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.pairs)

    @property
    def guest_side(self) -> tuple[str, ...]:
        return tuple(b for _, b in self.pairs)


@dataclass(frozen=True)
class Expanded:
    """A composite plus the site it came from and the guest renaming."""

    structure: MStructure
    site: ExpansionSite
    vertex_map: dict = field(compare=False)
    edge_map: dict = field(compare=False)


def _isolated(s: MStructure) -> frozenset[str]:
    return s.inputs & s.outputs


def composite_border(site: ExpansionSite) -> frozenset[str]:
    """Border of the composite, named with host ids for glued vertices."""
    xs = set(site.host_side)
    to_host = {b: a for a, b in site.pairs}
    host_iso = _isolated(site.host)
    guest_iso = _isolated(site.guest)
    out = set(site.host.border - xs)
    out |= {b for b in site.guest.border if b not in to_host}
    out |= {a for a, b in site.pairs if a in host_iso or b in guest_iso}
    return frozenset(out)


def compose_site(site: ExpansionSite) -> Expanded:
    graph, vmap, emap = compose(site.host.graph, site.guest.graph, site.pairs)
    sig = site.host.signature.merge(site.guest.signature)
    return Expanded(MStructure(graph, sig), site, vmap, emap)


def expands_direct(site: ExpansionSite, bound: int | None = None) -> bool:
    """Compose, then decide component-ness by enumerating the composite's tests."""
    return is_component(compose_site(site).structure, bound)


def _join_border(site: ExpansionSite) -> frozenset:
    # Join namespace: host ids as they are, glued guest ids as their host
    # partner, other guest ids tagged so they cannot collide with host ids.
    xs = set(site.host_side)
    to_host = {b: a for a, b in site.pairs}
    host_iso = _isolated(site.host)
    guest_iso = _isolated(site.guest)
    out = set(site.host.border - xs)
    out |= {("g", b) for b in site.guest.border if b not in to_host}
    out |= {a for a, b in site.pairs if a in host_iso or b in guest_iso}
    return frozenset(out)


def _join_blocks_meet(p: Partition, q: Partition, to_host: dict, border: frozenset) -> bool:
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part, rename in ((p, None), (q, to_host)):
        for block in part.blocks:
            ids = [rename.get(x, ("g", x)) if rename is not None else x for x in block]
            r = find(ids[0])
            for y in ids[1:]:
                s = find(y)
                if s != r:
                    parent[s] = r
    good = {find(x) for x in parent if x in border}
    return all(find(x) in good for x in parent)


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of checking the expansion conditions on one site."""

    a: bool
    b: bool
    c: bool
    failed: str | None = None
    witness: object = None

    @property
    def ok(self) -> bool:
        return self.a and self.b and self.c


def check_conditions(site: ExpansionSite, bound: int | None = None) -> ConditionReport:
    """Exact behavior-level conditions for ``host o_X guest`` to be a component.

    (a) the composite border is non-empty;
    (b) the restrictions of the two behaviors to X are pairwise weakly
        orthogonal;
    (c) for every pair of behaviors, every block of their join over X meets
        the composite border.

    Host and guest are assumed to be components.
    """
    cb = composite_border(site)
    if not cb:
        return ConditionReport(False, True, True, "a", None)
    xs = site.host_side
    to_host = {b: a for a, b in site.pairs}
    bh = behavior(site.host, bound)
    bg = behavior(site.guest, bound)
    rh = bh.restrict(xs)
    rg = bg.restrict(site.guest_side).rename(to_host)
    for p in rh:
        for q in rg:
            if not weakly_orthogonal(p, q):
                return ConditionReport(True, False, True, "b", (p, q))
    border_ids = _join_border(site)
    for p in bh:
        for q in bg:
            if not _join_blocks_meet(p, q, to_host, border_ids):
                return ConditionReport(True, True, False, "c", (p, q))
    return ConditionReport(True, True, True)


def expands_characterized(site: ExpansionSite, bound: int | None = None) -> bool:
    return check_conditions(site, bound).ok


def one_sided_conditions(site: ExpansionSite, bound: int | None = None) -> ConditionReport:
    """Coarser sufficient check.

    (a) some border vertex of either side is not glued; (b) as in
    :func:`check_conditions`; (c) each glued vertex is joined to a non-glued
    border vertex of its side in every test of the host, or in every test of
    the guest.
    """
    hx = set(site.host_side)
    gx = set(site.guest_side)
    if not (site.host.border - hx) and not (site.guest.border - gx):
        return ConditionReport(False, True, True, "a", None)
    to_host = {b: a for a, b in site.pairs}
    bh = behavior(site.host, bound)
    bg = behavior(site.guest, bound)
    rg = bg.restrict(site.guest_side).rename(to_host)
    for p in bh.restrict(site.host_side):
        for q in rg:
            if not weakly_orthogonal(p, q):
                return ConditionReport(True, False, True, "b", (p, q))

    def anchored(beh: PartitionSet, x: str, glued: set) -> bool:
        return all(any(y not in glued for y in p.block_of(x)) for p in beh)

    for a, b in site.pairs:
        if not (anchored(bh, a, hx) or anchored(bg, b, gx)):
            return ConditionReport(True, True, False, "c", a)
    return ConditionReport(True, True, True)


def expand_traced(site: ExpansionSite, bound: int | None = None) -> Expanded:
    report = check_conditions(site, bound)
    if not report.ok:
        raise ExpansionError(
            f"expansion condition ({report.failed}) fails", report.failed, report.witness
        )
    return compose_site(site)


def expand(site: ExpansionSite, bound: int | None = None) -> MStructure:
    """The composite component; raises :class:`ExpansionError` otherwise."""
    return expand_traced(site, bound).structure


def transitory_preserved(site: ExpansionSite, bound: int | None = None) -> bool | None:
    """Check that a transitory host expanded by a transitory guest stays transitory.

    Returns ``None`` when the hypotheses do not hold (guest not transitory or
    no expansion), otherwise the verdict of a direct check on the composite.
    """
    if not is_transitory(site.host, bound):
        raise DomainError("the host must be a transitory component")
    if not is_transitory(site.guest, bound) or not expands_characterized(site, bound):
        return None
    return is_transitory(compose_site(site).structure, bound)


def sites_between(host: MStructure, guest: MStructure, max_size: int = 2) -> Iterable[ExpansionSite]:
    """Every site pairing up to ``max_size`` host inputs with guest outputs."""
    from itertools import combinations, permutations

    ins = sorted(host.inputs)
    outs = sorted(guest.outputs)
    for k in range(1, max_size + 1):
        for hs in combinations(ins, k):
            for gs in permutations(outs, k):
                yield ExpansionSite(host, guest, tuple(zip(hs, gs)))
