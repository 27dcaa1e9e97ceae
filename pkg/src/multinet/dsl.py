"""Parser for the program language.

::

    % comment to end of line
    #use G(2,2) as R.            % bind a Girard link (G or Gdual) to a name
    #use Gdual(2,2) as U.
    F: a :- (b), (c).            % head atoms produced, clauses consumed
    G: b :- (b1 | b2).           % '|' separates the atoms of one clause
    D: c :- R(r1, r2, r3, r4).   % a clause feeding a bound Girard link
    S: c1, c2 :- (r1), (r2) using U.    % generalized synchronizer
    B: b1, b2.                   % fact
    ?- a.                        % goal

Head atoms become outputs of the compiled method, body atoms its inputs.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .connectives import girard_type
from .errors import DomainError, ParseError
from .mstructure import Signature
from .program import Clause, Method, Program

_TOKENS = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<pragma>\#[A-Za-z]+)
  | (?P<neck>:-)
  | (?P<query>\?-)
  | (?P<int>\d+(?![A-Za-z_']))
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[:,.()|])
  | (?P<bad>.)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, start = 1, 0
    for m in _TOKENS.finditer(text):
        kind = m.lastgroup
        col = m.start() - start + 1
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind in ("ws", "comment"):
            continue
        elif kind == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", line, col)
        else:
            out.append(Token(kind if kind != "punct" else m.group(), m.group(), line, col))
    out.append(Token("eof", "", line, len(text) - start + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.aliases: dict[str, str] = {}
        self.types = []
        self.methods: list[Method] = []
        self.goals: list[tuple[str, ...]] = []
        self._girards: dict = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.column)

    def expect(self, kind, what=None) -> Token:
        tok = self.tok
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise self.error(f"expected {what or repr(kind)}, found {found!r}")
        self.pos += 1
        return tok

    def accept(self, kind) -> Token | None:
        if self.tok.kind == kind:
            self.pos += 1
            return self.tokens[self.pos - 1]
        return None

    def parse(self) -> Program:
        while self.tok.kind != "eof":
            if self.tok.kind == "pragma":
                self.pragma()
            elif self.tok.kind == "query":
                self.goal()
            elif self.tok.kind == "name":
                self.method()
            else:
                raise self.error(f"unexpected {self.tok.text!r}")
        return Program(tuple(self.methods), Signature(self.types), tuple(self.goals))

    def pragma(self):
        tok = self.expect("pragma")
        if tok.text != "#use":
            raise self.error(f"unknown pragma {tok.text}", tok)
        fam = self.expect("name", "G or Gdual")
        if fam.text not in ("G", "Gdual"):
            raise self.error(f"unknown connective family {fam.text!r}", fam)
        self.expect("(")
        u = self.expect("int", "an integer")
        self.expect(",")
        v = self.expect("int", "an integer")
        self.expect(")")
        kw = self.expect("name", "'as'")
        if kw.text != "as":
            raise self.error("expected 'as'", kw)
        alias = self.expect("name", "a name")
        self.expect(".")
        if alias.text in self.aliases:
            raise self.error(f"name {alias.text!r} already bound", alias)
        try:
            g = girard_type(int(u.text), int(v.text), "primal" if fam.text == "G" else "dual")
        except DomainError as exc:
            raise self.error(str(exc), u) from None
        self.aliases[alias.text] = g.link.name
        self.types.append(g.link)
        self._girards[alias.text] = g

    def atoms(self, sep=",") -> list[str]:
        out = [self.expect("name", "an atom").text]
        while self.accept(sep):
            out.append(self.expect("name", "an atom").text)
        return out

    def goal(self):
        self.expect("query")
        self.goals.append(tuple(self.atoms()))
        self.expect(".")

    def clause(self) -> Clause:
        if self.accept("("):
            atoms = self.atoms("|")
            self.expect(")")
            return Clause(tuple(atoms))
        name = self.expect("name", "'(' or a bound link name")
        if name.text not in self.aliases:
            raise self.error(f"unbound link name {name.text!r}", name)
        self.expect("(")
        atoms = self.atoms(",")
        self.expect(")")
        g = self._girards[name.text]
        if len(atoms) != g.link.n_in:
            raise self.error(
                f"{name.text} takes {g.link.n_in} atoms, got {len(atoms)}", name
            )
        return Clause(tuple(atoms), self.aliases[name.text])

    def method(self):
        name = self.expect("name")
        if any(m.name == name.text for m in self.methods):
            raise self.error(f"duplicate method name {name.text!r}", name)
        self.expect(":")
        if self.tok.kind != "name":
            raise self.error(f"method {name.text}: the head needs at least one atom")
        head = self.atoms()
        body = []
        synchro = None
        if self.accept("neck"):
            body.append(self.clause())
            while self.accept(","):
                body.append(self.clause())
        using = self.tok
        if using.kind == "name" and using.text == "using":
            self.pos += 1
            alias = self.expect("name", "a bound link name")
            if alias.text not in self.aliases:
                raise self.error(f"unbound link name {alias.text!r}", alias)
            g = self._girards[alias.text]
            if g.v != 2 or len(head) != g.u or len(body) != g.u:
                raise self.error(
                    f"synchronizer {alias.text} needs blocks of size 2 and "
                    f"{g.u} head atoms and clauses",
                    alias,
                )
            synchro = self.aliases[alias.text]
        self.expect(".", "'.'")
        self.methods.append(Method(name.text, tuple(head), tuple(body), synchro))


def parse_program(text: str) -> Program:
    return _Parser(text).parse()


def format_method(m: Method, unicode: bool = False) -> str:
    sep = " ⅋ " if unicode else " | "
    parts = []
    for c in m.body:
        if c.link is None:
            parts.append("(" + sep.join(c.atoms) + ")")
        else:
            parts.append(f"{c.link}(" + ", ".join(c.atoms) + ")")
    text = f"{m.name}: " + ", ".join(m.head)
    if parts:
        text += " :- " + ", ".join(parts)
    if m.synchro:
        text += f" using {m.synchro}"
    return text + "."
