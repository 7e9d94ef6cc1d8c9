"""Preorders on states, localization, formal points and continuous maps.

A ``SelfSimulation`` pairs a homogeneous structure with a preorder ``<=``
whose converse is a general simulation of the structure by itself.  Pairs
``(s, s')`` in ``leq`` mean ``s <= s'``; ``s`` is the more refined state.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .core import Relation, Subset, converse, iter_bits, same_space
from .errors import SizeCapExceeded
from .fixpoint import cover_bits, down_bits, interior_bits
from .istruct import InteractionStructure, _one_step_bits

EXHAUSTIVE_LIMIT = 8
HARD_LIMIT = 16


@dataclass(frozen=True)
class Verdict:
    ok: bool
    condition: str | None = None
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


OK = Verdict(True)


@dataclass(frozen=True, eq=False)
class SelfSimulation:
    structure: InteractionStructure
    leq: Relation

    def __post_init__(self):
        w = self.structure
        w.require_homogeneous("self-simulation")
        same_space(self.leq.domain, w.source, "preorder")
        same_space(self.leq.codomain, w.source, "preorder")
        if not self.leq.is_reflexive():
            raise ValueError("preorder is not reflexive")
        if not self.leq.is_transitive():
            raise ValueError("preorder is not transitive")

    @cached_property
    def certificate(self):
        # imported lazily: simulation depends on programs, which is heavier
        from .simulation import check_sim

        return check_sim(self.structure, self.structure, converse(self.leq), "general")

    @property
    def certified(self) -> bool:
        return bool(self.certificate)

    def down_bits(self, bits: int) -> int:
        return down_bits(self.leq, bits)

    def up_bits(self, bits: int) -> int:
        return self.leq.image_bits(bits)


def saturation_preorder(w: InteractionStructure) -> SelfSimulation:
    """``s <= s'`` iff ``s`` is in the cover of ``{s'}``."""
    w.require_homogeneous("saturation_preorder")
    rows = [0] * len(w.source)
    for t in range(len(w.source)):
        for s in iter_bits(cover_bits(w, 1 << t)):
            rows[s] |= 1 << t
    return SelfSimulation(w, Relation(w.source, w.source, tuple(rows)))


def identity_preorder(w: InteractionStructure) -> SelfSimulation:
    return SelfSimulation(w, Relation(w.source, w.source, tuple(1 << i for i in range(len(w.source)))))


def down_closure(ss: SelfSimulation, u: Subset) -> Subset:
    same_space(u.space, ss.structure.source, "down_closure")
    return Subset(u.space, ss.down_bits(u.bits))


def up_closure(ss: SelfSimulation, u: Subset) -> Subset:
    same_space(u.space, ss.structure.source, "up_closure")
    return Subset(u.space, ss.up_bits(u.bits))


def bin_down(ss: SelfSimulation, u: Subset, v: Subset) -> Subset:
    same_space(u.space, v.space, "bin_down")
    return down_closure(ss, u) & down_closure(ss, v)


def localized_cover(ss: SelfSimulation, u: Subset) -> Subset:
    same_space(u.space, ss.structure.source, "localized_cover")
    return Subset(u.space, cover_bits(ss.structure, ss.down_bits(u.bits)))


def check_localized(ss: SelfSimulation, strict: bool = False) -> Verdict:
    """For all ``s1 <= s2`` and commands ``a2`` at ``s2``, ``s1`` must reach
    the down-closure of the ``a2``-successors within ``↓{s1}``."""
    w = ss.structure
    masks = w.masks
    down: dict[int, int] = {}

    def dn(bits: int) -> int:
        if bits not in down:
            down[bits] = ss.down_bits(bits)
        return down[bits]

    for s1, ups in enumerate(ss.leq.rows):
        here = dn(1 << s1)
        for s2 in iter_bits(ups):
            for a2, m in enumerate(masks[s2]):
                target = dn(m) & here
                if strict:
                    ok = bool(_one_step_bits(w, target) >> s1 & 1)
                else:
                    ok = (
                        bool(target >> s1 & 1)
                        or bool(_one_step_bits(w, target) >> s1 & 1)
                        or bool(cover_bits(w, target) >> s1 & 1)
                    )
                if not ok:
                    return Verdict(
                        False,
                        "localized",
                        (s1, s2, a2),
                        f"({w.source.states[s1]},{w.source.states[s2]},{w.table[s2][a2].name})",
                    )
    return OK


def check_formal_point(ss: SelfSimulation, alpha: Subset) -> Verdict:
    w = ss.structure
    same_space(alpha.space, w.source, "formal point")
    a = alpha.bits
    if interior_bits(w, ss.up_bits(a)) != a:
        return Verdict(False, "closed", None, "subset differs from the interior of its up-closure")
    if not a:
        return Verdict(False, "nonempty")
    members = list(iter_bits(a))
    for i, s1 in enumerate(members):
        d1 = ss.down_bits(1 << s1)
        for s2 in members[i + 1 :]:
            if not d1 & ss.down_bits(1 << s2) & a:
                return Verdict(
                    False,
                    "convergent",
                    (s1, s2),
                    f"no common refinement of {w.source.states[s1]} and {w.source.states[s2]} in the subset",
                )
    return OK


def check_continuous_map(r: Relation, ss_h: SelfSimulation, ss_l: SelfSimulation) -> Verdict:
    """Simulation, totality and convergence, in that order; first failure wins."""
    from .simulation import check_sim

    wh, wl = ss_h.structure, ss_l.structure
    same_space(r.domain, wh.source, "relation domain")
    same_space(r.codomain, wl.source, "relation codomain")
    res = check_sim(wh, wl, r, "general")
    if not res:
        return Verdict(
            False,
            "simulation",
            (res.high_state, res.low_state, res.high_command),
            res.describe(wh, wl),
        )
    full = wl.source.mask
    reach = cover_bits(wl, ss_l.down_bits(r.image_bits(wh.source.mask)))
    if reach != full:
        missing = full & ~reach
        return Verdict(
            False,
            "total",
            ((missing & -missing).bit_length() - 1,),
            "low states not covered by the image",
        )
    nh = len(wh.source)
    for s1 in range(nh):
        for s2 in range(s1, nh):
            lhs = ss_l.down_bits(r.rows[s1]) & ss_l.down_bits(r.rows[s2])
            if not lhs:
                continue
            meet = ss_h.down_bits(1 << s1) & ss_h.down_bits(1 << s2)
            rhs = cover_bits(wl, ss_l.down_bits(r.image_bits(meet)))
            if lhs & ~rhs:
                return Verdict(
                    False,
                    "convergent",
                    (s1, s2),
                    f"images of {wh.source.states[s1]} and {wh.source.states[s2]} do not converge",
                )
    return OK


def _subset_stream(n: int, exhaustive: bool, samples: int, rng: random.Random):
    if exhaustive:
        yield from range(1 << n)
    else:
        for _ in range(samples):
            yield rng.getrandbits(n) if n else 0


def continuity_conditions(
    r: Relation,
    w1: InteractionStructure,
    w2: InteractionStructure,
    *,
    exhaustive: bool | None = None,
    samples: int = 256,
    seed: int = 0,
) -> tuple[bool, bool]:
    """``(cond1, cond2)`` for ``r`` on ``S1 x S2``.

    cond1: ``R˘(A2(V)) ⊆ A1(R˘(V))`` for all ``V``; cond2:
    ``R(J1(U)) ⊆ J2(R(U))`` for all ``U``.  With ``exhaustive=None`` all
    subsets are scanned when both spaces have at most ``EXHAUSTIVE_LIMIT``
    states; otherwise ``samples`` random subsets from ``seed``.
    """
    w1.require_homogeneous("continuity")
    w2.require_homogeneous("continuity")
    same_space(r.domain, w1.source, "relation domain")
    same_space(r.codomain, w2.source, "relation codomain")
    n1, n2 = len(w1.source), len(w2.source)
    if exhaustive is None:
        exhaustive = max(n1, n2) <= EXHAUSTIVE_LIMIT
    elif exhaustive and max(n1, n2) > HARD_LIMIT:
        raise SizeCapExceeded("exhaustive continuity scan (states)", max(n1, n2), HARD_LIMIT)
    rng = random.Random(seed)
    conv = converse(r)

    cond1 = True
    for v in _subset_stream(n2, exhaustive, samples, rng):
        if conv.image_bits(cover_bits(w2, v)) & ~cover_bits(w1, conv.image_bits(v)):
            cond1 = False
            break
    cond2 = True
    for u in _subset_stream(n1, exhaustive, samples, rng):
        if r.image_bits(interior_bits(w1, u)) & ~interior_bits(w2, r.image_bits(u)):
            cond2 = False
            break
    return cond1, cond2
