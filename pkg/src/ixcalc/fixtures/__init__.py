"""Small named interaction structures used by tests, demos and the CLI.

Each builder returns fresh immutable values.  The same objects ship as
model files next to this module (``*.ix``) for use from the command line.
"""

from __future__ import annotations

from importlib import resources

from ..core import Relation, StateSpace
from ..istruct import InteractionStructure

STACK_CAPACITY = 2
BITS = ("0", "1")


def count3() -> InteractionStructure:
    """``s0 -inc-> s1 -inc-> s2``; ``s2`` has no commands."""
    sp = StateSpace("S", ("s0", "s1", "s2"))
    return InteractionStructure.build(
        "w", sp, {"s0": {"inc": {"ok": "s1"}}, "s1": {"inc": {"ok": "s2"}}}
    )


def coin() -> InteractionStructure:
    sp = StateSpace("C", ("s", "win", "lose"))
    return InteractionStructure.build("coin", sp, {"s": {"play": {"good": "win", "bad": "lose"}}})


def magic() -> InteractionStructure:
    """One state with a command the demon cannot answer."""
    sp = StateSpace("M", ("m",))
    return InteractionStructure.build("magic", sp, {"m": {"go": {}}})


def jump2() -> InteractionStructure:
    sp = StateSpace("J", ("a0", "a2"))
    return InteractionStructure.build("jump2", sp, {"a0": {"jump": {"ok": "a2"}}})


def jump2_relation() -> Relation:
    """Relates ``jump2`` to ``count3``: one jump is two increments."""
    return Relation.from_pairs(jump2().source, count3().source, [("a0", "s0"), ("a2", "s2")])


def _stacks() -> list[str]:
    out = [""]
    for v in BITS:
        out.append(v)
    for v in BITS:
        for u in BITS:
            out.append(v + u)
    return out


def _stack_name(st: str) -> str:
    return "[" + st + "]"


def stack() -> InteractionStructure:
    """Bounded stack of bits, capacity 2; ``pop`` answers with the top bit."""
    stacks = _stacks()
    sp = StateSpace("Stack", tuple(_stack_name(s) for s in stacks))
    layout: dict = {}
    for st in stacks:
        cmds: dict = {}
        if len(st) < STACK_CAPACITY:
            for v in BITS:
                cmds[f"push{v}"] = {"ok": _stack_name(st + v)}
        if st:
            cmds["pop"] = {st[-1]: _stack_name(st[:-1])}
        layout[_stack_name(st)] = cmds
    return InteractionStructure.build("stack", sp, layout)


def _array_name(count: int, cells: str) -> str:
    return f"c{count}:{cells}"


def _arrays() -> list[tuple[int, str]]:
    return [(c, x + y) for c in range(STACK_CAPACITY + 1) for x in BITS for y in BITS]


def array() -> InteractionStructure:
    """Two bit cells plus a counter; cells are written, the counter moves."""
    states = _arrays()
    sp = StateSpace("Array", tuple(_array_name(c, cells) for c, cells in states))
    layout: dict = {}
    for c, cells in states:
        cmds: dict = {}
        for i in range(STACK_CAPACITY):
            for v in BITS:
                new = cells[:i] + v + cells[i + 1 :]
                cmds[f"write{i}:{v}"] = {"ok": _array_name(c, new)}
        if c < STACK_CAPACITY:
            cmds["inc"] = {"ok": _array_name(c + 1, cells)}
        if c > 0:
            cmds["dec"] = {"ok": _array_name(c - 1, cells)}
        layout[_array_name(c, cells)] = cmds
    return InteractionStructure.build("array", sp, layout)


def stack_array_relation() -> Relation:
    """A stack is represented by any array whose counter is the stack height
    and whose first cells hold the stack contents."""
    pairs = []
    for st in _stacks():
        for c, cells in _arrays():
            if c == len(st) and cells.startswith(st):
                pairs.append((_stack_name(st), _array_name(c, cells)))
    return Relation.from_pairs(stack().source, array().source, pairs)


def lcount3():
    """Reachable part of ``L(count3)`` from ``s0`` with its preorder."""
    from ..istruct import localize

    return localize(count3(), "s0")


BUILDERS = {
    "count3": count3,
    "coin": coin,
    "magic": magic,
    "jump2": jump2,
    "stack": stack,
    "array": array,
}

MODEL_FILES = ("count3", "coin", "magic", "jump2", "stack_array", "lcount3")


def model_text(name: str) -> str:
    """Source of a shipped ``.ix`` model file."""
    if name not in MODEL_FILES:
        raise KeyError(f"no fixture model {name!r}")
    return resources.files(__name__).joinpath(f"{name}.ix").read_text(encoding="utf-8")


def model_path(name: str):
    if name not in MODEL_FILES:
        raise KeyError(f"no fixture model {name!r}")
    return resources.files(__name__).joinpath(f"{name}.ix")
