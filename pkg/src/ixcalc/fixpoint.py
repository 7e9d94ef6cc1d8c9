"""Cover (least fixpoint) and interior (greatest fixpoint) engines.

``cover(w, U)`` is the set of states from which the angel has a terminating
strategy ending in ``U``; ``interior(w, V)`` is the largest set inside ``V``
that the demon can keep invariant forever.  Both record the constructive
content of the fixpoint (stages and witnesses, resp. a response choice table)
so that client and server programs can be read off them.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .core import Relation, Subset, iter_bits, same_space
from .istruct import InteractionStructure, _one_step_bits


@dataclass(frozen=True)
class CoverResult:
    """``A_w(U)`` with per-state stages and witness commands.

    ``stage[s]`` is the round at which ``s`` entered (0 for base members,
    ``None`` outside the cover).  ``witness[s]`` is the least-index command
    whose responses all land in strictly earlier stages.
    """

    subset: Subset
    stage: tuple[int | None, ...]
    witness: tuple[int | None, ...]
    rounds: int


@dataclass(frozen=True)
class InteriorResult:
    """``J_w(V)`` with, per member and command, a response staying inside."""

    subset: Subset
    choice: Mapping[tuple[int, int], int]
    rounds: int


def check_preorder(w: InteractionStructure, preorder: Relation) -> None:
    same_space(preorder.domain, w.source, "preorder")
    same_space(preorder.codomain, w.source, "preorder")
    if not (preorder.is_reflexive() and preorder.is_transitive()):
        raise ValueError("preorder must be reflexive and transitive")


def down_bits(preorder: Relation, bits: int) -> int:
    """``{s | s <= s' for some s' in bits}``; preorder pairs are ``(s, s')``."""
    out = 0
    for i, row in enumerate(preorder.rows):
        if row & bits:
            out |= 1 << i
    return out


def cover(w: InteractionStructure, u: Subset, preorder: Relation | None = None) -> CoverResult:
    """Least fixpoint of ``X -> U' ∪ w°(X)``, saturating round by round.

    With a preorder, ``U'`` is the down-closure of ``U`` (the localized cover
    ``A_{w,<=}``); otherwise ``U' = U``.
    """
    w.require_homogeneous("cover")
    same_space(u.space, w.source, "cover")
    base = u.bits
    if preorder is not None:
        check_preorder(w, preorder)
        base = down_bits(preorder, base)
    n = len(w.source)
    stage: list[int | None] = [None] * n
    witness: list[int | None] = [None] * n
    for i in iter_bits(base):
        stage[i] = 0
    x = base
    rounds = 0
    masks = w.masks
    while True:
        rounds += 1
        outside = ~x
        new = 0
        for s in range(n):
            if x >> s & 1:
                continue
            for a, m in enumerate(masks[s]):
                if m & outside == 0:
                    new |= 1 << s
                    stage[s] = rounds
                    witness[s] = a
                    break
        if not new:
            break
        x |= new
    return CoverResult(Subset(w.source, x), tuple(stage), tuple(witness), rounds)


def cover_bits(w: InteractionStructure, bits: int) -> int:
    """Bit-level cover without bookkeeping, for inner loops."""
    x = bits
    masks = w.masks
    while True:
        outside = ~x
        new = 0
        for s, ms in enumerate(masks):
            if x >> s & 1:
                continue
            for m in ms:
                if m & outside == 0:
                    new |= 1 << s
                    break
        if not new:
            return x
        x |= new


def interior(w: InteractionStructure, v: Subset) -> InteriorResult:
    """Greatest fixpoint of ``X -> V ∩ w•(X)`` by pruning downward from ``V``."""
    w.require_homogeneous("interior")
    same_space(v.space, w.source, "interior")
    x = v.bits
    rounds = 0
    while True:
        rounds += 1
        y = x & _one_step_bits(w, x, "demon")
        if y == x:
            break
        x = y
    choice: dict[tuple[int, int], int] = {}
    for s in iter_bits(x):
        for a, c in enumerate(w.table[s]):
            for d, n in enumerate(c.next):
                if x >> n & 1:
                    choice[(s, a)] = d
                    break
    return InteriorResult(Subset(w.source, x), MappingProxyType(choice), rounds)


def interior_bits(w: InteractionStructure, bits: int) -> int:
    x = bits
    while True:
        y = x & _one_step_bits(w, x, "demon")
        if y == x:
            return x
        x = y


def open_join(w: InteractionStructure, us: Iterable[Subset]) -> Subset:
    bits = 0
    for u in us:
        same_space(u.space, w.source, "open_join")
        bits |= u.bits
    return cover(w, Subset(w.source, bits)).subset


def closed_meet(w: InteractionStructure, vs: Iterable[Subset]) -> Subset:
    bits = w.source.mask
    for v in vs:
        same_space(v.space, w.source, "closed_meet")
        bits &= v.bits
    return interior(w, Subset(w.source, bits)).subset


def is_open(w: InteractionStructure, u: Subset) -> bool:
    return cover(w, u).subset == u


def is_closed(w: InteractionStructure, v: Subset) -> bool:
    return interior(w, v).subset == v


def pos(w: InteractionStructure) -> Subset:
    """Positivity predicate ``J(S)``: states where the demon never deadlocks."""
    return interior(w, w.source.full()).subset
