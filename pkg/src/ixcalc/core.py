"""Finite state spaces, subsets, relations and transition structures.

Subsets are bit-vectors over an enumerated state space (bit ``i`` is the
state with index ``i``) and relations are dense bit-matrices stored row by
row.  Everything here is immutable; every iteration runs in index order so
results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import SpaceMismatch

__all__ = [
    "StateSpace",
    "Subset",
    "Relation",
    "TransitionStructure",
    "same_space",
    "angelic_update",
    "demonic_update",
    "converse",
    "compose",
    "identity",
    "rtc",
    "post_divide",
    "pre_divide",
    "t_identity",
    "t_compose",
    "pre_compose_rel",
    "post_divide_t",
    "t_to_relation",
    "iter_bits",
    "subsets",
    "product_space",
]


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the indices of set bits, lowest first."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def same_space(a: "StateSpace", b: "StateSpace", what: str = "operands") -> None:
    if a is not b and a != b:
        raise SpaceMismatch(f"{what}: space {a.name!r} != {b.name!r}")


@dataclass(frozen=True)
class StateSpace:
    """A named, ordered, duplicate-free sequence of state names."""

    name: str
    states: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        index: dict[str, int] = {}
        for i, s in enumerate(self.states):
            if s in index:
                raise ValueError(f"duplicate state {s!r} in space {self.name!r}")
            index[s] = i
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self) -> Iterator[str]:
        return iter(self.states)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, state: str | int) -> int:
        """Index of a state given by name or (already) by index."""
        if isinstance(state, int):
            if not 0 <= state < len(self.states):
                raise IndexError(f"state index {state} out of range for {self.name!r}")
            return state
        try:
            return self._index[state]
        except KeyError:
            raise KeyError(f"unknown state {state!r} in space {self.name!r}") from None

    @property
    def mask(self) -> int:
        return (1 << len(self.states)) - 1

    def subset(self, states: Iterable[str | int] = ()) -> "Subset":
        return Subset.of(self, states)

    def full(self) -> "Subset":
        return Subset(self, self.mask)

    def empty(self) -> "Subset":
        return Subset(self, 0)


@dataclass(frozen=True)
class Subset:
    """A predicate on a state space, stored as a bit-vector."""

    space: StateSpace
    bits: int

    @classmethod
    def of(cls, space: StateSpace, states: Iterable[str | int] = ()) -> "Subset":
        bits = 0
        for s in states:
            bits |= 1 << space.index(s)
        return cls(space, bits)

    @classmethod
    def full(cls, space: StateSpace) -> "Subset":
        return cls(space, space.mask)

    @classmethod
    def empty(cls, space: StateSpace) -> "Subset":
        return cls(space, 0)

    def _check(self, other: "Subset") -> None:
        same_space(self.space, other.space, "subset operands")

    def __contains__(self, state: str | int) -> bool:
        return bool(self.bits >> self.space.index(state) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __or__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.space, self.bits | other.bits)

    def __and__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.space, self.bits & other.bits)

    def __sub__(self, other: "Subset") -> "Subset":
        self._check(other)
        return Subset(self.space, self.bits & ~other.bits)

    def __le__(self, other: "Subset") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: "Subset") -> bool:
        return other <= self

    def complement(self) -> "Subset":
        return Subset(self.space, self.space.mask & ~self.bits)

    def issubset(self, other: "Subset") -> bool:
        return self <= other

    def overlap(self, other: "Subset") -> int | None:
        """Least-index state in both subsets, or ``None`` when disjoint."""
        self._check(other)
        common = self.bits & other.bits
        if not common:
            return None
        return (common & -common).bit_length() - 1

    def names(self) -> tuple[str, ...]:
        return tuple(self.space.states[i] for i in self)

    def __str__(self) -> str:
        return "{" + ",".join(self.names()) + "}"


@dataclass(frozen=True)
class Relation:
    """A relation between two state spaces as rows of bit-vectors.

    ``rows[i]`` holds the image ``R(s_i)`` as a bit-vector over the codomain.
    """

    domain: StateSpace
    codomain: StateSpace
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != len(self.domain):
            raise ValueError(
                f"relation has {len(self.rows)} rows, domain {self.domain.name!r} "
                f"has {len(self.domain)} states"
            )
        cap = self.codomain.mask
        if any(r & ~cap for r in self.rows):
            raise ValueError("relation row exceeds codomain size")

    @classmethod
    def from_pairs(
        cls,
        domain: StateSpace,
        codomain: StateSpace,
        pairs: Iterable[tuple[str | int, str | int]],
    ) -> "Relation":
        rows = [0] * len(domain)
        for a, b in pairs:
            rows[domain.index(a)] |= 1 << codomain.index(b)
        return cls(domain, codomain, tuple(rows))

    @classmethod
    def empty(cls, domain: StateSpace, codomain: StateSpace) -> "Relation":
        return cls(domain, codomain, (0,) * len(domain))

    @classmethod
    def full(cls, domain: StateSpace, codomain: StateSpace) -> "Relation":
        return cls(domain, codomain, (codomain.mask,) * len(domain))

    def __contains__(self, pair: tuple[str | int, str | int]) -> bool:
        a, b = pair
        return bool(self.rows[self.domain.index(a)] >> self.codomain.index(b) & 1)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return self.pairs()

    def __len__(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def pairs(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self.rows):
            for j in iter_bits(row):
                yield i, j

    def named_pairs(self) -> list[tuple[str, str]]:
        d, c = self.domain.states, self.codomain.states
        return [(d[i], c[j]) for i, j in self.pairs()]

    def row(self, state: str | int) -> Subset:
        """``R(s)``: the states related to ``state``."""
        return Subset(self.codomain, self.rows[self.domain.index(state)])

    def image_bits(self, bits: int) -> int:
        out = 0
        for i in iter_bits(bits):
            out |= self.rows[i]
        return out

    def image(self, u: Subset) -> Subset:
        """Direct image ``R(U)``; equal to the angelic update along the converse."""
        same_space(u.space, self.domain, "image")
        return Subset(self.codomain, self.image_bits(u.bits))

    def preimage(self, v: Subset) -> Subset:
        """``{s | R(s) overlaps V}``, i.e. the angelic update ``<R>(V)``."""
        return angelic_update(self, v)

    def _check(self, other: "Relation") -> None:
        same_space(self.domain, other.domain, "relation domains")
        same_space(self.codomain, other.codomain, "relation codomains")

    def __or__(self, other: "Relation") -> "Relation":
        self._check(other)
        return Relation(self.domain, self.codomain, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __and__(self, other: "Relation") -> "Relation":
        self._check(other)
        return Relation(self.domain, self.codomain, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other: "Relation") -> bool:
        self._check(other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __ge__(self, other: "Relation") -> bool:
        return other <= self

    def is_endo(self) -> bool:
        return self.domain is self.codomain or self.domain == self.codomain

    def is_reflexive(self) -> bool:
        return self.is_endo() and all(r >> i & 1 for i, r in enumerate(self.rows))

    def is_transitive(self) -> bool:
        return self.is_endo() and all(self.image_bits(r) & ~r == 0 for r in self.rows)

    def __str__(self) -> str:
        return "{" + ",".join(f"({a},{b})" for a, b in self.named_pairs()) + "}"


# -- update transformers -------------------------------------------------------


def angelic_update(r: Relation, u: Subset) -> Subset:
    """``<R>(U) = {s | R(s) overlaps U}`` over ``domain(R)``."""
    same_space(u.space, r.codomain, "angelic update")
    bits = 0
    for i, row in enumerate(r.rows):
        if row & u.bits:
            bits |= 1 << i
    return Subset(r.domain, bits)


def demonic_update(r: Relation, u: Subset) -> Subset:
    """``[R](U) = {s | R(s) included in U}`` over ``domain(R)``."""
    same_space(u.space, r.codomain, "demonic update")
    outside = ~u.bits
    bits = 0
    for i, row in enumerate(r.rows):
        if row & outside == 0:
            bits |= 1 << i
    return Subset(r.domain, bits)


# -- relation algebra ----------------------------------------------------------


def converse(r: Relation) -> Relation:
    rows = [0] * len(r.codomain)
    for i, j in r.pairs():
        rows[j] |= 1 << i
    return Relation(r.codomain, r.domain, tuple(rows))


def compose(q: Relation, r: Relation) -> Relation:
    """Relational composition ``Q ; R`` (first ``Q``, then ``R``)."""
    same_space(q.codomain, r.domain, "composition")
    return Relation(q.domain, r.codomain, tuple(r.image_bits(row) for row in q.rows))


def identity(space: StateSpace) -> Relation:
    return Relation(space, space, tuple(1 << i for i in range(len(space))))


def rtc(r: Relation) -> Relation:
    """Reflexive-transitive closure (Warshall over bit rows)."""
    if not r.is_endo():
        raise SpaceMismatch("rtc needs an endo-relation")
    rows = [row | (1 << i) for i, row in enumerate(r.rows)]
    for k in range(len(rows)):
        bit, rk = 1 << k, rows[k]
        for i in range(len(rows)):
            if rows[i] & bit:
                rows[i] |= rk
    return Relation(r.domain, r.codomain, tuple(rows))


def post_divide(q: Relation, r: Relation) -> Relation:
    """``Q / R`` with ``(s1, s2)`` related iff ``R(s2) <= Q(s1)``.

    ``Q`` is on ``S1 x S3`` and ``R`` on ``S2 x S3``; ``(- ; R)`` is left
    adjoint to ``(- / R)``.
    """
    same_space(q.codomain, r.codomain, "post-division")
    rows = []
    for qrow in q.rows:
        outside = ~qrow
        bits = 0
        for j, rrow in enumerate(r.rows):
            if rrow & outside == 0:
                bits |= 1 << j
        rows.append(bits)
    return Relation(q.domain, r.domain, tuple(rows))


def pre_divide(r: Relation, q: Relation) -> Relation:
    """``R \\ Q``, the converse of ``Q~ / R~``; right adjoint of ``(R ; -)``."""
    same_space(r.domain, q.domain, "pre-division")
    return converse(post_divide(converse(q), converse(r)))


# -- transition structures -----------------------------------------------------


@dataclass(frozen=True)
class TransitionStructure:
    """Per source state, an ordered family of labelled targets ``s[t]``."""

    source: StateSpace
    target: StateSpace
    transitions: tuple[tuple[tuple[str, int], ...], ...]

    def __post_init__(self):
        trans = tuple(tuple((str(lbl), int(n)) for lbl, n in row) for row in self.transitions)
        object.__setattr__(self, "transitions", trans)
        if len(trans) != len(self.source):
            raise ValueError("transition table length differs from source space")
        for i, row in enumerate(trans):
            labels = [lbl for lbl, _ in row]
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate label at state {self.source.states[i]!r}")
            for lbl, n in row:
                if not 0 <= n < len(self.target):
                    raise ValueError(
                        f"transition {lbl!r} at {self.source.states[i]!r} leaves the target space"
                    )

    @classmethod
    def from_dict(
        cls,
        source: StateSpace,
        table: dict[str, dict[str, str]],
        target: StateSpace | None = None,
    ) -> "TransitionStructure":
        target = source if target is None else target
        rows = [[] for _ in source.states]
        for s, moves in table.items():
            rows[source.index(s)] = [(lbl, target.index(n)) for lbl, n in moves.items()]
        return cls(source, target, tuple(tuple(r) for r in rows))

    def successors(self, state: str | int) -> Subset:
        bits = 0
        for _, n in self.transitions[self.source.index(state)]:
            bits |= 1 << n
        return Subset(self.target, bits)


def t_identity(space: StateSpace) -> TransitionStructure:
    return TransitionStructure(space, space, tuple((("*", i),) for i in range(len(space))))


def t_compose(t1: TransitionStructure, t2: TransitionStructure) -> TransitionStructure:
    """Sequential composition; labels become ``(t1,t2)``."""
    same_space(t1.target, t2.source, "transition composition")
    rows = []
    for row in t1.transitions:
        out = []
        for l1, mid in row:
            for l2, n in t2.transitions[mid]:
                out.append((f"({l1},{l2})", n))
        rows.append(tuple(out))
    return TransitionStructure(t1.source, t2.target, tuple(rows))


def pre_compose_rel(t: TransitionStructure, r: Relation) -> Relation:
    """``T ; R``: ``(s1, s3)`` related iff some ``s1[t]`` is related to ``s3``."""
    same_space(t.target, r.domain, "pre-composition")
    rows = []
    for row in t.transitions:
        bits = 0
        for _, n in row:
            bits |= r.rows[n]
        rows.append(bits)
    return Relation(t.source, r.codomain, tuple(rows))


def post_divide_t(r: Relation, t: TransitionStructure) -> Relation:
    """``R / T``: ``(s1, s2)`` related iff every ``s2[t]`` lies in ``R(s1)``."""
    same_space(r.codomain, t.target, "post-division by a transition structure")
    succ = [t.successors(j).bits for j in range(len(t.source))]
    rows = []
    for rrow in r.rows:
        outside = ~rrow
        bits = 0
        for j, sj in enumerate(succ):
            if sj & outside == 0:
                bits |= 1 << j
        rows.append(bits)
    return Relation(r.domain, t.source, tuple(rows))


def t_to_relation(t: TransitionStructure) -> Relation:
    return pre_compose_rel(t, identity(t.target))


def subsets(space: StateSpace) -> Iterator[Subset]:
    """All ``2^n`` subsets of a space in bit order."""
    for bits in range(1 << len(space)):
        yield Subset(space, bits)


def product_space(name: str, a: StateSpace, b: StateSpace) -> StateSpace:
    """Cartesian product, row-major: ``(a_i, b_j)`` has index ``i*|b| + j``."""
    return StateSpace(name, tuple(f"({x},{y})" for x in a.states for y in b.states))
