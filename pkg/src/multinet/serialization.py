"""JSON and DOT encodings of partitions, link types and structures."""
from __future__ import annotations

import json
from typing import Any

from .errors import DomainError
from .hypergraph import Hyperedge, Hypergraph, Vertex
from .mstructure import LinkType, MStructure, Signature
from .partitions import Partition, PartitionSet


def partition_from_json(data) -> Partition:
    if not isinstance(data, list) or not all(isinstance(b, list) for b in data):
        raise DomainError("a partition is a list of blocks")
    return Partition([[str(x) for x in b] for b in data])


def partition_set_to_json(ps: PartitionSet) -> dict:
    return {"ground": list(ps.ground), "members": ps.to_json()}


def partition_set_from_json(data) -> PartitionSet:
    if isinstance(data, dict):
        members = [partition_from_json(p) for p in data.get("members", [])]
        ground = data.get("ground")
        if ground is None:
            if not members:
                raise DomainError("an empty partition set needs an explicit ground")
            ground = members[0].ground
        return PartitionSet([str(x) for x in ground], members)
    if isinstance(data, list) and data:
        members = [partition_from_json(p) for p in data]
        return PartitionSet(members[0].ground, members)
    raise DomainError("expected a partition set")


def link_type_to_json(t: LinkType) -> dict:
    return {"name": t.name, "in": t.n_in, "out": t.n_out, "behavior": t.behavior.to_json()}


def link_type_from_json(data: dict) -> LinkType:
    try:
        n_in, n_out = int(data["in"]), int(data["out"])
        members = [partition_from_json(p) for p in data["behavior"]]
        name = str(data["name"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"bad link type: {exc}") from None
    ground = [f"i{k}" for k in range(1, n_in + 1)] + [f"o{k}" for k in range(1, n_out + 1)]
    return LinkType(name, n_in, n_out, PartitionSet(ground, members))


def structure_to_json(s: MStructure) -> dict:
    return {
        "vertices": [
            {"id": v.id, "label": v.label} if v.label is not None else {"id": v.id}
            for v in s.graph.vertices
        ],
        "edges": [
            {"id": e.id, "type": e.payload, "inputs": list(e.inputs), "outputs": list(e.outputs)}
            for e in s.graph.edges
        ],
        "signature": [link_type_to_json(t) for t in s.signature.custom()],
    }


def structure_from_json(data: Any) -> MStructure:
    if not isinstance(data, dict):
        raise DomainError("a structure is a JSON object")
    sig = Signature(link_type_from_json(t) for t in data.get("signature", []))
    vertices = []
    for v in data.get("vertices", []):
        if isinstance(v, str):
            vertices.append(Vertex(v))
        else:
            vertices.append(Vertex(str(v["id"]), v.get("label")))
    edges = []
    for k, e in enumerate(data.get("edges", []), 1):
        try:
            edges.append(
                Hyperedge(
                    str(e.get("id", f"e{k}")),
                    tuple(map(str, e.get("inputs", []))),
                    tuple(map(str, e.get("outputs", []))),
                    str(e["type"]),
                )
            )
        except KeyError:
            raise DomainError(f"edge {k} has no type") from None
    return MStructure(Hypergraph.build(vertices, edges), sig)


def dumps(obj: Any) -> str:
    """Stable JSON text (sorted keys, fixed separators)."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


_UNICODE = {"tensor": "⊗", "par": "⅋", "cut": "cut", "ax": "ax", "tensor_bullet": "⊗•", "par_bullet": "⅋•"}


def pretty_type(name: str, unicode: bool = False) -> str:
    if not unicode:
        return name
    if name in _UNICODE:
        return _UNICODE[name]
    for base in ("tensor_bullet", "par_bullet", "tensor", "par"):
        prefix = base + "_"
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return f"{_UNICODE[base]}{name[len(prefix):]}"
    if name.startswith("Gdual_"):
        return "G⊥" + name[len("Gdual"):]
    return name


def _q(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return '"' + escaped + '"'


def to_dot(s: MStructure, unicode: bool = False, name: str = "structure") -> str:
    """Links as boxes, vertices as ellipses, inputs drawn above their link."""
    lines = [f"digraph {_q(name)} {{", "  rankdir=TB;"]
    for v in s.graph.vertices:
        label = v.id if v.label is None else f"{v.label}\n{v.id}"
        lines.append(f"  {_q('v:' + v.id)} [shape=ellipse, label={_q(label)}];")
    for e in s.graph.edges:
        lines.append(
            f"  {_q('e:' + e.id)} [shape=box, label={_q(pretty_type(e.payload, unicode))}];"
        )
        for k, x in enumerate(e.inputs, 1):
            lines.append(f"  {_q('v:' + x)} -> {_q('e:' + e.id)} [taillabel={_q(str(k))}];")
        for k, x in enumerate(e.outputs, 1):
            lines.append(f"  {_q('e:' + e.id)} -> {_q('v:' + x)} [headlabel={_q(str(k))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"

