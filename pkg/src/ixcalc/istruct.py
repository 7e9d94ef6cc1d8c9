"""Interaction structures and their algebra.

An interaction structure from ``S`` to ``S'`` assigns to every state a list of
commands; each command has a list of responses and each response a next state
in ``S'``.  Commands, responses and states are addressed by index; names are
kept only for display and serialization.

Constructions that enumerate functions (dual, sequential composition,
intersections, localization) are exponential, so each is guarded by a size cap
(``DEFAULT_MAX_SIZE`` unless the caller passes ``max_size``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Literal, Mapping, NamedTuple, Sequence

from .core import (
    Relation,
    StateSpace,
    Subset,
    TransitionStructure,
    iter_bits,
    product_space,
    same_space,
)
from .errors import NotHomogeneous, SizeCapExceeded, SpaceMismatch

DEFAULT_MAX_SIZE = 1_000_000

Agent = Literal["angel", "demon"]


@dataclass(frozen=True)
class Command:
    name: str
    responses: tuple[str, ...]
    next: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "responses", tuple(self.responses))
        object.__setattr__(self, "next", tuple(self.next))


@dataclass(frozen=True)
class InteractionStructure:
    """``<A, D, n>`` from ``source`` to ``target``.

    ``table[s]`` lists the commands available at state ``s``.  Construction
    does not validate; call :func:`validate` on hand-built data.
    """

    name: str
    source: StateSpace
    target: StateSpace
    table: tuple[tuple[Command, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(row) for row in self.table))

    @classmethod
    def build(
        cls,
        name: str,
        source: StateSpace,
        layout: Mapping[str, Mapping[str, Mapping[str, str]]],
        target: StateSpace | None = None,
    ) -> "InteractionStructure":
        """Build from ``{state: {command: {response: next_state}}}``.

        States missing from ``layout`` have no commands.
        """
        target = source if target is None else target
        rows: list[list[Command]] = [[] for _ in source.states]
        for s, cmds in layout.items():
            rows[source.index(s)] = [
                Command(a, tuple(resp), tuple(target.index(n) for n in resp.values()))
                for a, resp in cmds.items()
            ]
        return cls(name, source, target, tuple(tuple(r) for r in rows))

    @property
    def homogeneous(self) -> bool:
        return self.source is self.target or self.source == self.target

    def require_homogeneous(self, what: str) -> None:
        if not self.homogeneous:
            raise NotHomogeneous(f"{what} needs a structure on one space, got {self.name!r}")

    def commands(self, state: str | int) -> tuple[Command, ...]:
        return self.table[self.source.index(state)]

    def command_index(self, state: str | int, name: str) -> int:
        for i, c in enumerate(self.commands(state)):
            if c.name == name:
                return i
        raise KeyError(f"no command {name!r} at state {self.source.states[self.source.index(state)]!r}")

    def response_index(self, state: str | int, command: int, name: str) -> int:
        try:
            return self.commands(state)[command].responses.index(name)
        except ValueError:
            raise KeyError(f"no response {name!r}") from None

    def step(self, state: int, command: int, response: int) -> int:
        """``s[a/d]``."""
        return self.table[state][command].next[response]

    @cached_property
    def masks(self) -> tuple[tuple[int, ...], ...]:
        """Per state and command, the bit-vector of reachable next states."""
        out = []
        for row in self.table:
            ms = []
            for c in row:
                m = 0
                for n in c.next:
                    m |= 1 << n
                ms.append(m)
            out.append(tuple(ms))
        return tuple(out)

    def size(self) -> int:
        return sum(len(row) for row in self.table)


class Factorization(NamedTuple):
    issue: TransitionStructure
    perform: TransitionStructure
    mid: StateSpace


def _cap(max_size: int | None) -> int:
    return DEFAULT_MAX_SIZE if max_size is None else max_size


def validate(w: InteractionStructure) -> list[str]:
    """List every invariant violation, each naming its location."""
    errors: list[str] = []
    src, tgt = w.source.states, w.target
    if len(w.table) != len(src):
        errors.append(f"table has {len(w.table)} rows but source space has {len(src)} states")
    for s, row in enumerate(w.table):
        sname = src[s] if s < len(src) else f"#{s}"
        seen: set[str] = set()
        for a, c in enumerate(row):
            if c.name in seen:
                errors.append(f"duplicate command {c.name!r} at state {sname!r}")
            seen.add(c.name)
            if len(set(c.responses)) != len(c.responses):
                errors.append(f"duplicate response name for ({sname},{c.name})")
            if len(c.next) != len(c.responses):
                errors.append(f"({sname},{c.name}): {len(c.responses)} responses but {len(c.next)} next states")
            for d, n in enumerate(c.next):
                if not isinstance(n, int) or not 0 <= n < len(tgt):
                    dname = c.responses[d] if d < len(c.responses) else f"#{d}"
                    errors.append(f"next state of ({sname},{c.name},{dname}) is out of range: {n!r}")
    return errors


def one_step(w: InteractionStructure, u: Subset, agent: Agent = "angel") -> Subset:
    """``w°(U)`` (angel: some command forces U) or ``w•(U)`` (demon: every
    command admits a response into U)."""
    same_space(u.space, w.target, "one_step")
    return Subset(w.source, _one_step_bits(w, u.bits, agent))


def _one_step_bits(w: InteractionStructure, ubits: int, agent: Agent = "angel") -> int:
    out = 0
    if agent == "angel":
        outside = ~ubits
        for s, ms in enumerate(w.masks):
            for m in ms:
                if m & outside == 0:
                    out |= 1 << s
                    break
    elif agent == "demon":
        for s, ms in enumerate(w.masks):
            if all(m & ubits for m in ms):
                out |= 1 << s
    else:
        raise ValueError(f"agent must be 'angel' or 'demon', not {agent!r}")
    return out


def dual(w: InteractionStructure, max_size: int | None = None) -> InteractionStructure:
    """Swap the agents: commands become the demon's choice functions."""
    cap = _cap(max_size)
    rows = []
    for s, row in enumerate(w.table):
        count = 1
        for c in row:
            count *= len(c.responses)
        if count > cap:
            raise SizeCapExceeded(f"dual at state {w.source.states[s]!r}", count, cap)
        cmds = []
        for choice in product(*(range(len(c.responses)) for c in row)):
            name = ",".join(f"{c.name}↦{c.responses[d]}" for c, d in zip(row, choice)) or "∅"
            cmds.append(
                Command(name, tuple(c.name for c in row), tuple(c.next[d] for c, d in zip(row, choice)))
            )
        rows.append(tuple(cmds))
    return InteractionStructure(f"dual({w.name})", w.source, w.target, tuple(rows))


def skip(space: StateSpace) -> InteractionStructure:
    return InteractionStructure(
        "skip", space, space, tuple((Command("*", ("*",), (i,)),) for i in range(len(space)))
    )


def from_transition(
    t: TransitionStructure | StateSpace,
    kind: Literal["skip", "angelic", "demonic"],
) -> InteractionStructure:
    """Lift a transition structure to an angelic or demonic update, or build
    ``skip`` on a space (``t`` may then be the space itself)."""
    if kind == "skip":
        return skip(t if isinstance(t, StateSpace) else t.source)
    if not isinstance(t, TransitionStructure):
        raise TypeError("angelic/demonic updates need a transition structure")
    if kind == "angelic":
        rows = tuple(tuple(Command(lbl, ("*",), (n,)) for lbl, n in row) for row in t.transitions)
        return InteractionStructure("angelic", t.source, t.target, rows)
    if kind == "demonic":
        rows = tuple(
            (Command("*", tuple(lbl for lbl, _ in row), tuple(n for _, n in row)),)
            for row in t.transitions
        )
        return InteractionStructure("demonic", t.source, t.target, rows)
    raise ValueError(f"unknown update kind {kind!r}")


def _shared_spaces(
    ws: Sequence[InteractionStructure],
    source: StateSpace | None,
    target: StateSpace | None,
) -> tuple[StateSpace, StateSpace]:
    if not ws:
        if source is None:
            raise SpaceMismatch("an empty family needs an explicit source space")
        return source, source if target is None else target
    src = ws[0].source if source is None else source
    tgt = ws[0].target if target is None else target
    for w in ws:
        same_space(w.source, src, "family sources")
        same_space(w.target, tgt, "family targets")
    return src, tgt


def union_all(
    ws: Sequence[InteractionStructure],
    *,
    source: StateSpace | None = None,
    target: StateSpace | None = None,
) -> InteractionStructure:
    """Tagged disjoint union of commands; the empty union is ``abort``."""
    ws = list(ws)
    src, tgt = _shared_spaces(ws, source, target)
    rows = []
    for s in range(len(src)):
        rows.append(
            tuple(
                Command(f"in{i}({c.name})", c.responses, c.next)
                for i, w in enumerate(ws)
                for c in w.table[s]
            )
        )
    name = "abort" if not ws else "(" + " ∪ ".join(w.name for w in ws) + ")"
    return InteractionStructure(name, src, tgt, tuple(rows))


def intersection_all(
    ws: Sequence[InteractionStructure],
    *,
    source: StateSpace | None = None,
    target: StateSpace | None = None,
    max_size: int | None = None,
) -> InteractionStructure:
    """Commands are tuples (one per member); responses are tagged by member.

    The empty intersection is ``magic``: one command with no responses.
    """
    ws = list(ws)
    src, tgt = _shared_spaces(ws, source, target)
    cap = _cap(max_size)
    rows = []
    for s in range(len(src)):
        members = [w.table[s] for w in ws]
        count = 1
        for m in members:
            count *= len(m)
        if count > cap:
            raise SizeCapExceeded(f"intersection at state {src.states[s]!r}", count, cap)
        cmds = []
        for combo in product(*members):
            responses, nxt = [], []
            for i, c in enumerate(combo):
                responses.extend(f"in{i}({d})" for d in c.responses)
                nxt.extend(c.next)
            cmds.append(Command("(" + ",".join(c.name for c in combo) + ")", tuple(responses), tuple(nxt)))
        rows.append(tuple(cmds))
    name = "magic" if not ws else "(" + " ∩ ".join(w.name for w in ws) + ")"
    return InteractionStructure(name, src, tgt, tuple(rows))


def seq(
    w1: InteractionStructure,
    w2: InteractionStructure,
    max_size: int | None = None,
) -> InteractionStructure:
    """Sequential composition ``w1 ; w2``.

    A command is a first command plus a continuation choosing, for each of its
    responses, a command of ``w2`` at the state reached.
    """
    same_space(w1.target, w2.source, "sequential composition")
    cap = _cap(max_size)
    rows = []
    for s, row in enumerate(w1.table):
        count = 0
        for c1 in row:
            k = 1
            for n in c1.next:
                k *= len(w2.table[n])
            count += k
        if count > cap:
            raise SizeCapExceeded(f"seq at state {w1.source.states[s]!r}", count, cap)
        cmds = []
        for c1 in row:
            for cont in product(*(range(len(w2.table[n])) for n in c1.next)):
                label = ",".join(f"{d}↦{w2.table[n][a2].name}" for d, n, a2 in zip(c1.responses, c1.next, cont))
                responses, nxt = [], []
                for d1, n1, a2 in zip(c1.responses, c1.next, cont):
                    c2 = w2.table[n1][a2]
                    responses.extend(f"({d1},{d2})" for d2 in c2.responses)
                    nxt.extend(c2.next)
                cmds.append(Command(f"({c1.name};{label})", tuple(responses), tuple(nxt)))
        rows.append(tuple(cmds))
    return InteractionStructure(f"({w1.name};{w2.name})", w1.source, w2.target, tuple(rows))


def tensor(w1: InteractionStructure, w2: InteractionStructure) -> InteractionStructure:
    """Synchronous (lock-step) product on the cartesian product space."""
    src = product_space(f"{w1.source.name}×{w2.source.name}", w1.source, w2.source)
    if w1.homogeneous and w2.homogeneous:
        tgt = src
    else:
        tgt = product_space(f"{w1.target.name}×{w2.target.name}", w1.target, w2.target)
    n2 = len(w2.target)
    rows = []
    for r1 in w1.table:
        for r2 in w2.table:
            cmds = []
            for c1 in r1:
                for c2 in r2:
                    cmds.append(
                        Command(
                            f"({c1.name},{c2.name})",
                            tuple(f"({d1},{d2})" for d1 in c1.responses for d2 in c2.responses),
                            tuple(x * n2 + y for x in c1.next for y in c2.next),
                        )
                    )
            rows.append(tuple(cmds))
    return InteractionStructure(f"({w1.name}⊗{w2.name})", src, tgt, tuple(rows))


def angelic_product(w1: InteractionStructure, w2: InteractionStructure) -> InteractionStructure:
    """The angel picks one side and only that side steps."""
    w1.require_homogeneous("angelic product")
    w2.require_homogeneous("angelic product")
    space = product_space(f"{w1.source.name}⊙{w2.source.name}", w1.source, w2.source)
    n2 = len(w2.source)
    rows = []
    for i, r1 in enumerate(w1.table):
        for j, r2 in enumerate(w2.table):
            cmds = [Command(f"inl({c.name})", c.responses, tuple(x * n2 + j for x in c.next)) for c in r1]
            cmds += [Command(f"inr({c.name})", c.responses, tuple(i * n2 + y for y in c.next)) for c in r2]
            rows.append(tuple(cmds))
    return InteractionStructure(f"({w1.name}⊙{w2.name})", space, space, tuple(rows))


def projections(w1: InteractionStructure, w2: InteractionStructure):
    """The two projection relations ``S_i -> S1 x S2`` of the angelic product."""
    prod = angelic_product(w1, w2)
    n1, n2 = len(w1.source), len(w2.source)
    pi1 = Relation.from_pairs(w1.source, prod.source, [(i, i * n2 + j) for i in range(n1) for j in range(n2)])
    pi2 = Relation.from_pairs(w2.source, prod.source, [(j, i * n2 + j) for i in range(n1) for j in range(n2)])
    return prod, pi1, pi2


def factorize(w: InteractionStructure) -> Factorization:
    """Split ``w`` into an angelic update (issue a command) followed by a
    demonic update (perform it) through the space of (state, command) pairs."""
    mid_names, issue, perform = [], [], []
    for s, row in enumerate(w.table):
        out = []
        for c in row:
            out.append((c.name, len(mid_names)))
            mid_names.append(f"({w.source.states[s]},{c.name})")
            perform.append(tuple(zip(c.responses, c.next)))
        issue.append(tuple(out))
    mid = StateSpace(f"Σ{w.source.name}", tuple(mid_names))
    return Factorization(
        TransitionStructure(w.source, mid, tuple(issue)),
        TransitionStructure(mid, w.target, tuple(perform)),
        mid,
    )


def localize(w: InteractionStructure, init: str | int, max_size: int | None = None):
    """Build the reachable part of ``L(w)`` from ``{init}``.

    States of ``L(w)`` are finite sets of ``w``-states (logs of visited states).
    A command picks a member and one of its commands; the response adds the
    reached state to the log.  Returns ``(L(w), SelfSimulation)`` where the
    preorder is reverse inclusion of logs.
    """
    from .topology import SelfSimulation

    w.require_homogeneous("localize")
    cap = _cap(max_size)
    start = 1 << w.source.index(init)
    index = {start: 0}
    order = [start]
    edges: list[list[tuple[str, tuple[str, ...], tuple[int, ...]]]] = []
    queue = deque([start])
    while queue:
        log = queue.popleft()
        cmds = []
        for si in iter_bits(log):
            for c in w.table[si]:
                targets = []
                for n in c.next:
                    nxt = log | (1 << n)
                    if nxt not in index:
                        if len(order) >= cap:
                            raise SizeCapExceeded("localize reachable logs", len(order) + 1, cap)
                        index[nxt] = len(order)
                        order.append(nxt)
                        queue.append(nxt)
                    targets.append(nxt)
                cmds.append((f"{c.name}@{w.source.states[si]}", c.responses, targets))
        edges.append(cmds)
    names = tuple("{" + ",".join(w.source.states[i] for i in iter_bits(log)) + "}" for log in order)
    space = StateSpace(f"L({w.source.name})", names)
    rows = tuple(
        tuple(Command(name, resp, tuple(index[t] for t in targets)) for name, resp, targets in cmds)
        for cmds in edges
    )
    lw = InteractionStructure(f"L({w.name})", space, space, rows)
    leq = Relation(
        space,
        space,
        tuple(
            sum(1 << j for j, other in enumerate(order) if other & ~log == 0)
            for log in order
        ),
    )
    return lw, SelfSimulation(lw, leq)
