"""Client and server programs, and running one against the other.

A client is a well-founded tree of ``Call(command, branches)`` nodes ending
in ``Exit``; a server is an invariant subset with a table choosing one
response per (state, command).  ``execute`` runs a client against a server.
That is the compatibility rule of basic topology as a program:
``A(U) ⋒ J(V)`` yields a final state in ``U ⋒ J(V)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import TYPE_CHECKING, Mapping, Union

from .core import Subset, same_space
from .errors import ContractViolation, MalformedProgram, MissingWitness, NotCovered
from .fixpoint import CoverResult, cover, interior
from .istruct import InteractionStructure

if TYPE_CHECKING:
    from .simulation import SimCert


@dataclass(frozen=True)
class Exit:
    def __repr__(self) -> str:
        return "Exit"


EXIT = Exit()


@dataclass(frozen=True)
class Call:
    command: int
    branches: tuple["Node", ...]

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))


Node = Union[Exit, Call]


@dataclass(frozen=True)
class ClientProgram:
    root: int
    tree: Node


@dataclass(frozen=True)
class ServerProgram:
    inv: Subset
    choice: Mapping[tuple[int, int], int] = field(hash=False)
    warning: str | None = None


@dataclass(frozen=True)
class ServerViolation:
    state: int
    command: int
    reason: str


@dataclass(frozen=True)
class Step:
    state: int
    command: int
    response: int
    next: int


@dataclass(frozen=True)
class Trace:
    start: int
    steps: tuple[Step, ...]
    final: int

    def __len__(self) -> int:
        return len(self.steps)


# -- clients -------------------------------------------------------------------


def tree_from_cover(w: InteractionStructure, res: CoverResult, state: int, memo: dict | None = None) -> Node:
    """Read a client tree off cover stages: Exit at stage 0, else the witness."""
    if res.stage[state] is None:
        raise NotCovered(w.source.states[state])
    memo = {} if memo is None else memo
    stack = [state]
    while stack:
        s = stack[-1]
        if s in memo:
            stack.pop()
            continue
        if res.stage[s] == 0:
            memo[s] = EXIT
            stack.pop()
            continue
        nexts = w.table[s][res.witness[s]].next
        pending = [n for n in nexts if n not in memo]
        if pending:
            stack.extend(pending)
            continue
        memo[s] = Call(res.witness[s], tuple(memo[n] for n in nexts))
        stack.pop()
    return memo[state]


def synth_client(
    w: InteractionStructure,
    start: str | int,
    goal: Subset,
    preorder=None,
) -> ClientProgram:
    """A client driving ``start`` into ``goal``; raises NotCovered if none exists."""
    s = w.source.index(start)
    res = cover(w, goal, preorder)
    return ClientProgram(s, tree_from_cover(w, res, s))


def _tree(p: ClientProgram | Node) -> Node:
    return p.tree if isinstance(p, ClientProgram) else p


def _check_call(w: InteractionStructure, s: int, node: Call) -> tuple:
    row = w.table[s]
    if not 0 <= node.command < len(row):
        raise MalformedProgram(f"command #{node.command} is not available at {w.source.states[s]!r}")
    c = row[node.command]
    if len(node.branches) != len(c.next):
        raise MalformedProgram(
            f"({w.source.states[s]},{c.name}) has {len(c.next)} responses "
            f"but the program gives {len(node.branches)} branches"
        )
    return c.next


def client_exits(w: InteractionStructure, start: str | int, p: ClientProgram | Node) -> list[tuple[tuple[int, ...], int]]:
    """All complete response paths through ``p`` and the states they end in,
    in lexicographic response order."""
    out: list[tuple[tuple[int, ...], int]] = []
    stack: list[tuple[int, Node, tuple[int, ...]]] = [(w.source.index(start), _tree(p), ())]
    while stack:
        s, node, path = stack.pop()
        if isinstance(node, Exit):
            out.append((path, s))
            continue
        nexts = _check_call(w, s, node)
        for d in reversed(range(len(nexts))):
            stack.append((nexts[d], node.branches[d], path + (d,)))
    return out


def verify_client(w: InteractionStructure, start: str | int, p: ClientProgram | Node, goal: Subset) -> bool:
    same_space(goal.space, w.source, "verify_client")
    return all(goal.bits >> s & 1 for _, s in client_exits(w, start, p))


def depth(p: ClientProgram | Node) -> int:
    node = _tree(p)
    if isinstance(node, Exit):
        return 0
    return 1 + max((depth(b) for b in node.branches), default=0)


# -- servers -------------------------------------------------------------------


def synth_server(w: InteractionStructure, maintain: Subset) -> ServerProgram:
    res = interior(w, maintain)
    warning = None if res.subset else "invariant is empty: no state can be served"
    return ServerProgram(res.subset, res.choice, warning)


def verify_server(w: InteractionStructure, srv: ServerProgram) -> ServerViolation | None:
    """First (state, command) where the table is missing or leaves ``inv``."""
    same_space(srv.inv.space, w.source, "verify_server")
    for s in srv.inv:
        for a, c in enumerate(w.table[s]):
            d = srv.choice.get((s, a))
            if d is None:
                return ServerViolation(s, a, "no response chosen")
            if not 0 <= d < len(c.next):
                return ServerViolation(s, a, f"response #{d} does not exist")
            if not srv.inv.bits >> c.next[d] & 1:
                return ServerViolation(
                    s, a, f"next state {w.target.states[c.next[d]]!r} leaves the invariant"
                )
    return None


def make_server(w: InteractionStructure, inv: Subset, choice: Mapping[tuple[int, int], int]) -> ServerProgram:
    return ServerProgram(inv, MappingProxyType(dict(choice)))


# -- execution -----------------------------------------------------------------


def execute(
    w: InteractionStructure,
    start: str | int,
    p: ClientProgram | Node,
    srv: ServerProgram,
) -> tuple[int, Trace]:
    """Run client ``p`` from ``start`` against ``srv``; returns (final, trace)."""
    s = w.source.index(start)
    if isinstance(p, ClientProgram) and p.root != s:
        raise ContractViolation("client program is rooted at a different state")
    if not srv.inv.bits >> s & 1:
        raise ContractViolation(f"start state {w.source.states[s]!r} is outside the server invariant")
    node = _tree(p)
    steps = []
    while isinstance(node, Call):
        nexts = _check_call(w, s, node)
        d = srv.choice.get((s, node.command))
        if d is None or not 0 <= d < len(nexts):
            raise ContractViolation(
                f"server has no response for ({w.source.states[s]},{w.table[s][node.command].name})"
            )
        n = nexts[d]
        if not srv.inv.bits >> n & 1:
            raise ContractViolation(f"server response leads outside its invariant at {w.source.states[s]!r}")
        steps.append(Step(s, node.command, d, n))
        s, node = n, node.branches[d]
    return s, Trace(w.source.index(start), tuple(steps), s)


def execute_across(
    cert: "SimCert",
    start_high: str | int,
    start_low: str | int,
    p: ClientProgram | Node,
    srv: ServerProgram,
) -> tuple[tuple[int, int], Trace, Trace]:
    """Run a high-level client on a low-level server through a simulation.

    Each high command is translated by the certificate into a low-level
    client tree, run against ``srv``, and its exit path mapped back to a high
    response.  Returns ``((final_high, final_low), high_trace, low_trace)``.
    """
    wh, wl, rel = cert.high, cert.low, cert.relation
    sh, sl = wh.source.index(start_high), wl.source.index(start_low)
    if not rel.rows[sh] >> sl & 1:
        raise ContractViolation("start pair is not related by the certificate")
    if not srv.inv.bits >> sl & 1:
        raise ContractViolation("low start state is outside the server invariant")
    node = _tree(p)
    high_steps, low_steps = [], []
    start = (sh, sl)
    while isinstance(node, Call):
        nexts = _check_call(wh, sh, node)
        wit = cert.witnesses.get((sh, sl, node.command))
        if wit is None:
            raise MissingWitness(
                f"no witness for ({wh.source.states[sh]},{wl.source.states[sl]},"
                f"{wh.table[sh][node.command].name})"
            )
        sl_next, low = execute(wl, sl, wit.program, srv)
        path = tuple(step.response for step in low.steps)
        dh = wit.exits.get(path)
        if dh is None or not 0 <= dh < len(nexts):
            raise MissingWitness(f"witness has no high response for low path {path}")
        sh_next = nexts[dh]
        if not rel.rows[sh_next] >> sl_next & 1:
            raise ContractViolation("certificate relation broken after a translated step")
        high_steps.append(Step(sh, node.command, dh, sh_next))
        low_steps.extend(low.steps)
        sh, sl, node = sh_next, sl_next, node.branches[dh]
    return (
        (sh, sl),
        Trace(start[0], tuple(high_steps), sh),
        Trace(start[1], tuple(low_steps), sl),
    )
