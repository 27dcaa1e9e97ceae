"""MLL formulas over atoms and their formula-tree structures.

Text syntax (ASCII): ``*`` for tensor, ``|`` for par, ``~a`` for a negated
atom, parentheses for grouping.  Both connectives are n-ary when chained.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .hypergraph import Hyperedge, Hypergraph, Vertex
from .mstructure import MStructure, Signature


@dataclass(frozen=True)
class Atom:
    name: str
    negated: bool = False

    def __str__(self):
        return ("~" if self.negated else "") + self.name


@dataclass(frozen=True)
class Tensor:
    children: tuple

    def __str__(self):
        return "(" + " * ".join(map(str, self.children)) + ")"


@dataclass(frozen=True)
class Par:
    children: tuple

    def __str__(self):
        return "(" + " | ".join(map(str, self.children)) + ")"


Formula = Atom | Tensor | Par


def dual(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.name, not f.negated)
    if isinstance(f, Tensor):
        return Par(tuple(dual(c) for c in f.children))
    return Tensor(tuple(dual(c) for c in f.children))


def leaves(f: Formula) -> list[Atom]:
    if isinstance(f, Atom):
        return [f]
    return [a for c in f.children for a in leaves(c)]


def to_unicode(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name + ("⊥" if f.negated else "")
    sep = " ⊗ " if isinstance(f, Tensor) else " ⅋ "
    return "(" + sep.join(to_unicode(c) for c in f.children) + ")"


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][\w']*)|(.))")


def parse_formula(text: str) -> Formula:
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            tokens.append(("atom", m.group(1), m.start(1)))
        elif m.group(2) and not m.group(2).isspace():
            tokens.append((m.group(2), m.group(2), m.start(2)))
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def fail(msg):
        col = tokens[pos][2] + 1 if pos < len(tokens) else len(text) + 1
        raise ParseError(msg, 1, col)

    def expr():
        nonlocal pos
        first = unary()
        op = peek()
        if op not in ("*", "|"):
            return first
        items = [first]
        while peek() == op:
            pos += 1
            items.append(unary())
        if peek() in ("*", "|"):
            fail("mixed connectives need parentheses")
        return (Tensor if op == "*" else Par)(tuple(items))

    def unary():
        nonlocal pos
        kind = peek()
        if kind == "~":
            pos += 1
            if peek() != "atom":
                fail("negation applies to atoms only")
            name = tokens[pos][1]
            pos += 1
            return Atom(name, True)
        if kind == "atom":
            name = tokens[pos][1]
            pos += 1
            return Atom(name)
        if kind == "(":
            pos += 1
            inner = expr()
            if peek() != ")":
                fail("expected ')'")
            pos += 1
            return inner
        fail("expected an atom or '('")

    result = expr()
    if pos != len(tokens):
        fail("unexpected trailing input")
    return result


def formula_structure(f: Formula) -> MStructure:
    """Formula tree with leaves as inputs ``i1..in`` (left to right) and root ``o1``.

    Leaves carry their atom as label.  Binary nodes use ``tensor``/``par``,
    wider ones ``tensor_k``/``par_k``.
    """
    vertices: list[Vertex] = []
    edges: list[Hyperedge] = []
    counter = {"leaf": 0, "node": 0}

    def build(g: Formula, out: str) -> None:
        if isinstance(g, Atom):
            raise AssertionError("atoms are handled by the parent")
        ins = []
        for c in g.children:
            if isinstance(c, Atom):
                counter["leaf"] += 1
                vid = f"i{counter['leaf']}"
                vertices.append(Vertex(vid, str(c)))
                ins.append(vid)
            else:
                counter["node"] += 1
                vid = f"n{counter['node']}"
                vertices.append(Vertex(vid))
                ins.append(vid)
                build(c, vid)
        base = "tensor" if isinstance(g, Tensor) else "par"
        name = base if len(ins) == 2 else f"{base}_{len(ins)}"
        edges.append(Hyperedge(f"l{len(edges) + 1}", tuple(ins), (out,), name))

    if isinstance(f, Atom):
        return MStructure(Hypergraph((Vertex("i1", str(f)),), ()), Signature())
    vertices.append(Vertex("o1"))
    build(f, "o1")
    return MStructure(Hypergraph(tuple(vertices), tuple(edges)), Signature())
