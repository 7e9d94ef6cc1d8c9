"""Text format for spaces, structures, subsets, relations and preorders.

::

    space S { s0 s1 s2 }
    istruct w on S { state s0 { cmd inc { ok -> s1 } } }
    subset goal in S { s2 }
    relation R : S -> S { (s0,s1) }
    preorder le on S { (s0,s1) }

Names are bare tokens or double-quoted strings with JSON escapes.  ``#``
starts a comment.  Keywords are only recognized in keyword position, so a
quoted or bare name may coincide with a keyword elsewhere.  Preorders are
closed reflexively and transitively on load.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .core import Relation, StateSpace, Subset, rtc
from .errors import ModelError
from .istruct import Command, InteractionStructure

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<punct>[{}(),:])
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<bare>[^\s{}(),:#"]+)
    """,
    re.VERBOSE,
)
_BARE = re.compile(r'[^\s{}(),:#"]+')


@dataclass(frozen=True)
class Token:
    kind: str  # "name" | "punct"
    text: str
    line: int
    quoted: bool = False


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    pos, line = 0, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ModelError(f"unexpected character {text[pos]!r}", line)
        kind, val = m.lastgroup, m.group()
        if kind == "arrow" or kind == "punct":
            out.append(Token("punct", val, line))
        elif kind == "string":
            try:
                out.append(Token("name", json.loads(val), line, quoted=True))
            except json.JSONDecodeError:
                raise ModelError(f"bad string literal {val}", line) from None
        elif kind == "bare":
            if "->" in val:
                # "a->b" splits at the arrow
                head = val[: val.index("->")]
                if head:
                    out.append(Token("name", head, line))
                pos = m.start() + len(head)
                out.append(Token("punct", "->", line))
                pos += 2
                continue
            out.append(Token("name", val, line))
        line += val.count("\n")
        pos = m.end()
    return out


@dataclass
class ModelFile:
    spaces: dict[str, StateSpace] = field(default_factory=dict)
    istructs: dict[str, InteractionStructure] = field(default_factory=dict)
    subsets: dict[str, Subset] = field(default_factory=dict)
    relations: dict[str, Relation] = field(default_factory=dict)
    preorders: dict[str, Relation] = field(default_factory=dict)

    @classmethod
    def collect(
        cls,
        istructs: dict[str, InteractionStructure] | None = None,
        subsets: dict[str, Subset] | None = None,
        relations: dict[str, Relation] | None = None,
        preorders: dict[str, Relation] | None = None,
        spaces: dict[str, StateSpace] | None = None,
    ) -> "ModelFile":
        """Assemble a model, registering every space the objects mention."""
        m = cls()
        for sp in (spaces or {}).values():
            m._add_space(sp)
        for name, w in (istructs or {}).items():
            m._add_space(w.source)
            m._add_space(w.target)
            m.istructs[name] = w
        for name, u in (subsets or {}).items():
            m._add_space(u.space)
            m.subsets[name] = u
        for name, r in (relations or {}).items():
            m._add_space(r.domain)
            m._add_space(r.codomain)
            m.relations[name] = r
        for name, r in (preorders or {}).items():
            m._add_space(r.domain)
            m.preorders[name] = rtc(r)
        return m

    def _add_space(self, sp: StateSpace) -> None:
        old = self.spaces.get(sp.name)
        if old is None:
            self.spaces[sp.name] = sp
        elif old != sp:
            raise ModelError(f"two different spaces named {sp.name!r}")

    def get(self, kind: str, name: str):
        table = getattr(self, kind)
        if name not in table:
            label = kind[:-1] if kind.endswith("s") else kind
            known = ", ".join(sorted(table)) or "none"
            raise ModelError(f"unknown {label} {name!r} (known: {known})")
        return table[name]


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.model = ModelFile()

    def _line(self) -> int | None:
        if self.i < len(self.toks):
            return self.toks[self.i].line
        return self.toks[-1].line if self.toks else 1

    def error(self, msg: str, line: int | None = None):
        return ModelError(msg, self._line() if line is None else line)

    def peek(self) -> Token | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            raise self.error("unexpected end of input")
        self.i += 1
        return t

    def punct(self, text: str) -> Token:
        t = self.next()
        if t.kind != "punct" or t.text != text:
            raise ModelError(f"expected {text!r}, found {t.text!r}", t.line)
        return t

    def at(self, text: str) -> bool:
        t = self.peek()
        return t is not None and t.kind == "punct" and t.text == text

    def name(self, what: str) -> Token:
        t = self.next()
        if t.kind != "name":
            raise ModelError(f"expected {what}, found {t.text!r}", t.line)
        return t

    def keyword(self, word: str) -> Token:
        t = self.next()
        if t.kind != "name" or t.quoted or t.text != word:
            raise ModelError(f"expected keyword {word!r}, found {t.text!r}", t.line)
        return t

    def space_ref(self) -> StateSpace:
        t = self.name("space name")
        sp = self.model.spaces.get(t.text)
        if sp is None:
            raise ModelError(f"unknown space {t.text!r}", t.line)
        return sp

    def state_ref(self, sp: StateSpace) -> tuple[int, int]:
        t = self.name("state name")
        if t.text not in sp:
            raise ModelError(f"state {t.text!r} is not in space {sp.name!r}", t.line)
        return sp.index(t.text), t.line

    def declare(self, table: dict, t: Token, kind: str) -> None:
        if t.text in table:
            raise ModelError(f"duplicate {kind} {t.text!r}", t.line)

    def parse(self) -> ModelFile:
        while self.peek() is not None:
            t = self.next()
            if t.kind != "name" or t.quoted:
                raise ModelError(f"expected a declaration, found {t.text!r}", t.line)
            handler = {
                "space": self.p_space,
                "istruct": self.p_istruct,
                "subset": self.p_subset,
                "relation": self.p_relation,
                "preorder": self.p_preorder,
            }.get(t.text)
            if handler is None:
                raise ModelError(f"unknown declaration {t.text!r}", t.line)
            handler()
        return self.model

    def p_space(self) -> None:
        t = self.name("space name")
        self.declare(self.model.spaces, t, "space")
        self.punct("{")
        states: list[str] = []
        while not self.at("}"):
            s = self.name("state name")
            if s.text in states:
                raise ModelError(f"duplicate state {s.text!r}", s.line)
            states.append(s.text)
        self.punct("}")
        self.model.spaces[t.text] = StateSpace(t.text, tuple(states))

    def p_istruct(self) -> None:
        t = self.name("istruct name")
        self.declare(self.model.istructs, t, "istruct")
        self.keyword("on")
        src = self.space_ref()
        tgt = src
        nxt = self.peek()
        if nxt is not None and nxt.kind == "name" and not nxt.quoted and nxt.text == "to":
            self.next()
            tgt = self.space_ref()
        self.punct("{")
        rows: list[tuple[Command, ...] | None] = [None] * len(src)
        while not self.at("}"):
            self.keyword("state")
            s, line = self.state_ref(src)
            if rows[s] is not None:
                raise ModelError(f"state {src.states[s]!r} described twice", line)
            self.punct("{")
            cmds: list[Command] = []
            while not self.at("}"):
                self.keyword("cmd")
                a = self.name("command name")
                if any(c.name == a.text for c in cmds):
                    raise ModelError(f"duplicate command {a.text!r}", a.line)
                self.punct("{")
                resp: list[str] = []
                nexts: list[int] = []
                while not self.at("}"):
                    d = self.name("response name")
                    if d.text in resp:
                        raise ModelError(f"duplicate response {d.text!r}", d.line)
                    self.punct("->")
                    n, _ = self.state_ref(tgt)
                    resp.append(d.text)
                    nexts.append(n)
                self.punct("}")
                cmds.append(Command(a.text, tuple(resp), tuple(nexts)))
            self.punct("}")
            rows[s] = tuple(cmds)
        self.punct("}")
        table = tuple(r if r is not None else () for r in rows)
        self.model.istructs[t.text] = InteractionStructure(t.text, src, tgt, table)

    def p_subset(self) -> None:
        t = self.name("subset name")
        self.declare(self.model.subsets, t, "subset")
        self.keyword("in")
        sp = self.space_ref()
        self.punct("{")
        bits = 0
        while not self.at("}"):
            s, _ = self.state_ref(sp)
            bits |= 1 << s
        self.punct("}")
        self.model.subsets[t.text] = Subset(sp, bits)

    def _pairs(self, dom: StateSpace, cod: StateSpace) -> tuple[int, ...]:
        rows = [0] * len(dom)
        self.punct("{")
        while not self.at("}"):
            self.punct("(")
            a, _ = self.state_ref(dom)
            self.punct(",")
            b, _ = self.state_ref(cod)
            self.punct(")")
            rows[a] |= 1 << b
        self.punct("}")
        return tuple(rows)

    def p_relation(self) -> None:
        t = self.name("relation name")
        self.declare(self.model.relations, t, "relation")
        self.punct(":")
        dom = self.space_ref()
        self.punct("->")
        cod = self.space_ref()
        self.model.relations[t.text] = Relation(dom, cod, self._pairs(dom, cod))

    def p_preorder(self) -> None:
        t = self.name("preorder name")
        self.declare(self.model.preorders, t, "preorder")
        self.keyword("on")
        sp = self.space_ref()
        self.model.preorders[t.text] = rtc(Relation(sp, sp, self._pairs(sp, sp)))


def parse_model(text: str) -> ModelFile:
    return _Parser(text).parse()


def load_model(path: str | Path) -> ModelFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ModelError(f"cannot read {path}: {e.strerror}") from None
    except UnicodeDecodeError:
        raise ModelError(f"{path} is not UTF-8") from None
    return parse_model(text)


# -- printing ------------------------------------------------------------------


def quote(name: str) -> str:
    if _BARE.fullmatch(name) and "->" not in name:
        return name
    return json.dumps(name, ensure_ascii=False)


def _pairs_text(r: Relation) -> str:
    body = " ".join(f"({quote(a)},{quote(b)})" for a, b in r.named_pairs())
    return "{ " + body + " }" if body else "{ }"


def _names_text(names) -> str:
    body = " ".join(quote(s) for s in names)
    return "{ " + body + " }" if body else "{ }"


def print_model(m: ModelFile) -> str:
    """Canonical text: spaces, istructs, subsets, relations, preorders."""
    lines: list[str] = []
    for name, sp in m.spaces.items():
        lines.append(f"space {quote(name)} {_names_text(sp.states)}")
    for name, w in m.istructs.items():
        head = f"istruct {quote(name)} on {quote(w.source.name)}"
        if not w.homogeneous:
            head += f" to {quote(w.target.name)}"
        body = [(s, row) for s, row in enumerate(w.table) if row]
        if not body:
            lines.append(head + " { }")
            continue
        lines.append(head + " {")
        for s, row in body:
            lines.append(f"  state {quote(w.source.states[s])} {{")
            for c in row:
                resp = " ".join(
                    f"{quote(d)} -> {quote(w.target.states[n])}" for d, n in zip(c.responses, c.next)
                )
                lines.append(f"    cmd {quote(c.name)} {{ {resp} }}" if resp else f"    cmd {quote(c.name)} {{ }}")
            lines.append("  }")
        lines.append("}")
    for name, u in m.subsets.items():
        lines.append(f"subset {quote(name)} in {quote(u.space.name)} {_names_text(u.names())}")
    for name, r in m.relations.items():
        lines.append(
            f"relation {quote(name)} : {quote(r.domain.name)} -> {quote(r.codomain.name)} {_pairs_text(r)}"
        )
    for name, r in m.preorders.items():
        lines.append(f"preorder {quote(name)} on {quote(r.domain.name)} {_pairs_text(r)}")
    return "\n".join(lines) + "\n"
