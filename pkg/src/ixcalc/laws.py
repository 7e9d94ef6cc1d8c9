"""Seeded random structures and the algebraic law suite.

``run_laws`` draws small random cases and checks every law in ``LAWS`` on
each, returning a tally.  Each law is a function of a ``Case`` returning
``None`` when it holds or a short description of the first failure.  All
randomness flows from one seed, so a run is reproducible byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .core import (
    Relation,
    StateSpace,
    Subset,
    compose,
    converse,
    iter_bits,
    post_divide,
    pre_divide,
    rtc,
)
from .errors import SizeCapExceeded
from .fixpoint import cover, cover_bits, interior, interior_bits
from .istruct import (
    InteractionStructure,
    _one_step_bits,
    dual,
    factorize,
    from_transition,
    intersection_all,
    localize,
    seq,
    skip,
    tensor,
    union_all,
)
from .modelfile import ModelFile
from .programs import client_exits, execute, synth_client, synth_server, verify_client
from .simulation import KINDS, check_sim, greatest_sim, saturate, sim_leq, verify_cert
from .topology import check_localized, continuity_conditions, saturation_preorder

SEED_STRIDE = 1_000_003
EXHAUSTIVE_STATES = 6
SAMPLED_SUBSETS = 48
MAX_LOCALIZED = 16

_COMMAND_WEIGHTS = (0, 1, 1, 2, 2, 3)
_RESPONSE_WEIGHTS = (0, 1, 1, 1, 2, 2, 3)


# -- generation ----------------------------------------------------------------


def random_space(rng: random.Random, n: int, name: str = "S") -> StateSpace:
    return StateSpace(name, tuple(f"{name.lower()}{i}" for i in range(n)))


def random_structure(
    rng: random.Random,
    space: StateSpace,
    name: str = "w",
    max_commands: int = 3,
    max_responses: int = 3,
) -> InteractionStructure:
    """Uniform-ish structure: 0..3 commands per state, 0..3 responses each
    (zero responses are rarer so covers stay interesting)."""
    from .istruct import Command

    n = len(space)
    rows = []
    for _ in range(n):
        k = min(rng.choice(_COMMAND_WEIGHTS), max_commands)
        cmds = []
        for a in range(k):
            m = min(rng.choice(_RESPONSE_WEIGHTS), max_responses)
            cmds.append(Command(f"a{a}", tuple(f"d{d}" for d in range(m)), tuple(rng.randrange(n) for _ in range(m))))
        rows.append(tuple(cmds))
    return InteractionStructure(name, space, space, tuple(rows))


def random_relation(rng: random.Random, dom: StateSpace, cod: StateSpace, density: float = 0.4) -> Relation:
    rows = []
    for _ in range(len(dom)):
        bits = 0
        for j in range(len(cod)):
            if rng.random() < density:
                bits |= 1 << j
        rows.append(bits)
    return Relation(dom, cod, tuple(rows))


@dataclass
class Case:
    """Material for one iteration: two structures on ``S``, one on ``S_l``
    and a relation ``S x S_l``."""

    rng: random.Random
    w1: InteractionStructure
    w2: InteractionStructure
    wl: InteractionStructure
    rel: Relation
    _subsets: dict = field(default_factory=dict)

    def subsets(self, space: StateSpace) -> list[int]:
        key = space.name, len(space)
        if key not in self._subsets:
            n = len(space)
            if n <= EXHAUSTIVE_STATES:
                self._subsets[key] = list(range(1 << n))
            else:
                self._subsets[key] = sorted({self.rng.getrandbits(n) for _ in range(SAMPLED_SUBSETS)} | {0, space.mask})
        return self._subsets[key]


def random_case(seed: int, i: int, max_states: int = 5) -> Case:
    rng = random.Random(seed * SEED_STRIDE + i)
    s = random_space(rng, rng.randint(1, max_states), "S")
    sl = random_space(rng, rng.randint(1, max_states), "L")
    w1 = random_structure(rng, s, "w1")
    w2 = random_structure(rng, s, "w2")
    wl = random_structure(rng, sl, "wl")
    return Case(rng, w1, w2, wl, random_relation(rng, s, sl))


def model_cases(model: ModelFile, seed: int = 0) -> list[Case]:
    """One case per homogeneous structure in the model, paired with every
    model relation leaving its space (or a random one when there is none)."""
    out = []
    homs = [w for w in model.istructs.values() if w.homogeneous]
    for k, w in enumerate(homs):
        rng = random.Random(seed * SEED_STRIDE + k)
        rels = [r for r in model.relations.values() if r.domain == w.source]
        paired = False
        for r in rels:
            lows = [x for x in homs if x.source == r.codomain]
            for wl in lows:
                out.append(Case(rng, w, w, wl, r))
                paired = True
        if not paired:
            out.append(Case(rng, w, w, w, random_relation(rng, w.source, w.source)))
    return out


# -- brute-force helpers -------------------------------------------------------


def _angel_scan(w: InteractionStructure, u: int) -> int:
    out = 0
    for s, row in enumerate(w.table):
        if any(all(u >> n & 1 for n in c.next) for c in row):
            out |= 1 << s
    return out


def _demon_scan(w: InteractionStructure, u: int) -> int:
    out = 0
    for s, row in enumerate(w.table):
        if all(any(u >> n & 1 for n in c.next) for c in row):
            out |= 1 << s
    return out


def exit_sets(w: InteractionStructure, depth: int) -> list[set[int]]:
    """For every state, the exit-state sets of all client trees of depth at
    most ``depth``; trees are enumerated up to their exit set."""
    n = len(w.source)
    cur = [{1 << s} for s in range(n)]
    for _ in range(depth):
        nxt = []
        for s in range(n):
            found = {1 << s}
            for c in w.table[s]:
                combos = {0}
                for t in c.next:
                    combos = {x | y for x in combos for y in cur[t]}
                found |= combos
            nxt.append(found)
        cur = nxt
    return cur


def tree_cover(w: InteractionStructure, u: int, depth: int | None = None) -> int:
    """States with some client tree of bounded depth whose exits all lie in ``u``."""
    sets = exit_sets(w, len(w.source) if depth is None else depth)
    return sum(1 << s for s, fam in enumerate(sets) if any(x & ~u == 0 for x in fam))


def brute_sim(wh: InteractionStructure, wl: InteractionStructure, rel: Relation, kind: str) -> bool:
    """Direct quantifier evaluation of the simulation condition."""
    rows = rel.rows
    depth = len(wl.source)
    sets = exit_sets(wl, depth) if kind in ("tc", "general") else None

    def reach_tree(sl: int, t: int) -> bool:
        return any(x & ~t == 0 for x in sets[sl])

    for sh, row in enumerate(rows):
        for sl in iter_bits(row):
            for ch in wh.table[sh]:
                t = 0
                for n in ch.next:
                    t |= rows[n]
                if kind == "general":
                    ok = reach_tree(sl, t)
                else:
                    # ∃a_l ∀d_l ∃d_h, with the inner target per kind
                    ok = any(
                        all(
                            any(rows[nh] >> nl & 1 for nh in ch.next)
                            if kind in ("linear", "affine")
                            else reach_tree(nl, t)
                            for nl in cl.next
                        )
                        for cl in wl.table[sl]
                    )
                    if kind == "affine" and not ok:
                        ok = any(rows[nh] >> sl & 1 for nh in ch.next)
                if not ok:
                    return False
    return True


def _paths_closure(r: Relation) -> Relation:
    rows = []
    for i in range(len(r.domain)):
        seen, todo = {i}, [i]
        while todo:
            x = todo.pop()
            for y in iter_bits(r.rows[x]):
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        rows.append(sum(1 << y for y in seen))
    return Relation(r.domain, r.codomain, tuple(rows))


def _name(space: StateSpace, bits: int) -> str:
    return Subset(space, bits).__str__()


# -- laws ----------------------------------------------------------------------

Law = Callable[[Case], "str | None"]
LAWS: dict[str, Law] = {}


def law(name: str):
    def deco(fn: Law) -> Law:
        LAWS[name] = fn
        return fn

    return deco


@law("galois")
def _galois(c: Case) -> str | None:
    r = c.rel
    img = [r.image_bits(u) for u in range(1 << len(r.domain))] if len(r.domain) <= EXHAUSTIVE_STATES else None
    for u in c.subsets(r.domain):
        ru = img[u] if img is not None else r.image_bits(u)
        for v in c.subsets(r.codomain):
            box = 0
            for i, row in enumerate(r.rows):
                if row & ~v == 0:
                    box |= 1 << i
            if (ru & ~v == 0) != (u & ~box == 0):
                return f"U={_name(r.domain, u)} V={_name(r.codomain, v)}"
    return None


@law("relation-algebra")
def _relalg(c: Case) -> str | None:
    r = c.rel
    q = random_relation(c.rng, c.wl.source, c.w1.source)
    if converse(converse(r)).rows != r.rows:
        return "converse not involutive"
    if converse(compose(r, q)).rows != compose(converse(q), converse(r)).rows:
        return "converse does not reverse composition"
    # unions through <R~> and intersections through [R]
    us = c.subsets(r.domain)
    for u1 in us[:8]:
        for u2 in us[-8:]:
            if r.image_bits(u1 | u2) != r.image_bits(u1) | r.image_bits(u2):
                return "image does not commute with union"
    vs = c.subsets(r.codomain)
    for v1 in vs[:8]:
        for v2 in vs[-8:]:
            def box(v: int) -> int:
                return sum(1 << i for i, row in enumerate(r.rows) if row & ~v == 0)

            if box(v1 & v2) != box(v1) & box(v2):
                return "demonic update does not commute with intersection"
    return None


@law("rtc")
def _rtc(c: Case) -> str | None:
    e = random_relation(c.rng, c.w1.source, c.w1.source, 0.3)
    t = rtc(e)
    if not (t.is_reflexive() and t.is_transitive()):
        return "closure not a preorder"
    if rtc(t).rows != t.rows:
        return "closure not idempotent"
    if t.rows != _paths_closure(e).rows:
        return "closure differs from path search"
    return None


@law("division")
def _division(c: Case) -> str | None:
    s, l = c.w1.source, c.wl.source
    rng = c.rng
    for _ in range(6):
        p = random_relation(rng, s, l)
        r = random_relation(rng, l, s)
        q = random_relation(rng, s, s)
        if (compose(p, r) <= q) != (p <= post_divide(q, r)):
            return "post-division adjunction"
        r2 = random_relation(rng, s, l)
        p2 = random_relation(rng, l, s)
        if (compose(r2, p2) <= q) != (p2 <= pre_divide(r2, q)):
            return "pre-division adjunction"
    return None


@law("one-step")
def _one_step(c: Case) -> str | None:
    for w in (c.w1, c.w2):
        for u in c.subsets(w.source):
            if _one_step_bits(w, u) != _angel_scan(w, u):
                return f"angel at {_name(w.source, u)}"
            if _one_step_bits(w, u, "demon") != _demon_scan(w, u):
                return f"demon at {_name(w.source, u)}"
    return None


@law("homomorphisms")
def _homs(c: Case) -> str | None:
    w1, w2 = c.w1, c.w2
    sp = w1.source
    sk = skip(sp)
    un = union_all([w1, w2])
    it = intersection_all([w1, w2])
    sq = seq(w1, w2)
    ab = union_all([], source=sp)
    mg = intersection_all([], source=sp)
    unit = seq(sk, w1)
    for u in c.subsets(sp):
        a1, a2 = _one_step_bits(w1, u), _one_step_bits(w2, u)
        if _one_step_bits(sk, u) != u:
            return f"skip at {_name(sp, u)}"
        if _one_step_bits(un, u) != a1 | a2:
            return f"union at {_name(sp, u)}"
        if _one_step_bits(it, u) != a1 & a2:
            return f"intersection at {_name(sp, u)}"
        if _one_step_bits(sq, u) != _one_step_bits(w1, _one_step_bits(w2, u)):
            return f"sequence at {_name(sp, u)}"
        if _one_step_bits(ab, u) != 0 or _one_step_bits(mg, u) != sp.mask:
            return "extrema"
        if _one_step_bits(unit, u) != a1:
            return f"unit at {_name(sp, u)}"
    return None


@law("dual")
def _dual(c: Case) -> str | None:
    w = c.w1
    d = dual(w)
    for s, row in enumerate(w.table):
        expect = 1
        for cmd in row:
            expect *= len(cmd.next)
        if len(d.table[s]) != expect:
            return f"dual size at {w.source.states[s]}"
    for u in c.subsets(w.source):
        if _one_step_bits(w, u, "demon") != _one_step_bits(d, u):
            return f"demon vs dual at {_name(w.source, u)}"
    return None


@law("factorization")
def _factor(c: Case) -> str | None:
    w = c.w1
    f = factorize(w)
    comp = seq(from_transition(f.issue, "angelic"), from_transition(f.perform, "demonic"))
    for u in c.subsets(w.source):
        if _one_step_bits(comp, u) != _one_step_bits(w, u):
            return f"at {_name(w.source, u)}"
    return None


@law("tensor")
def _tensor(c: Case) -> str | None:
    w1, wl = c.w1, c.wl
    if len(w1.source) * len(wl.source) > 16:
        return None
    t = tensor(w1, wl)
    n2 = len(wl.source)
    for u in c.subsets(w1.source):
        for v in c.subsets(wl.source):
            uv = sum(1 << (x * n2 + y) for x in iter_bits(u) for y in iter_bits(v))
            lhs = _one_step_bits(t, uv)
            rhs = sum(1 << (x * n2 + y) for x in iter_bits(_one_step_bits(w1, u)) for y in iter_bits(_one_step_bits(wl, v)))
            if rhs & ~lhs:
                return f"U={_name(w1.source, u)} V={_name(wl.source, v)}"
    return None


@law("determinism")
def _determinism(c: Case) -> str | None:
    w = c.w1
    if dual(w) != dual(w) or seq(w, c.w2) != seq(w, c.w2) or factorize(w) != factorize(w):
        return "constructions differ between runs"
    return None


@law("cover-closure")
def _cover_closure(c: Case) -> str | None:
    w = c.w1
    n = len(w.source)
    subs = c.subsets(w.source)
    cov = {u: cover_bits(w, u) for u in subs}
    for u in subs:
        a = cov[u]
        if u & ~a:
            return f"not extensive at {_name(w.source, u)}"
        if cover_bits(w, a) != a:
            return f"not idempotent at {_name(w.source, u)}"
        res = cover(w, Subset(w.source, u))
        if res.subset.bits != a or res.rounds > n + 1:
            return "bookkeeping cover differs"
        for v in subs:
            if u & ~cov[v] == 0 and a & ~cov[v]:
                return f"not monotone at {_name(w.source, u)} in {_name(w.source, v)}"
    return None


@law("interior")
def _interior(c: Case) -> str | None:
    w = c.w1
    n = len(w.source)
    subs = c.subsets(w.source)
    jnt = {v: interior_bits(w, v) for v in subs}
    for v in subs:
        j = jnt[v]
        if j & ~v:
            return f"not contractive at {_name(w.source, v)}"
        if interior_bits(w, j) != j:
            return f"not idempotent at {_name(w.source, v)}"
        res = interior(w, Subset(w.source, v))
        if res.subset.bits != j or res.rounds > n + 1:
            return "bookkeeping interior differs"
        for u in subs:
            if jnt[u] & ~v == 0 and jnt[u] & ~j:
                return f"not monotone at {_name(w.source, v)}"
    return None


@law("fixpoint-extremal")
def _extremal(c: Case) -> str | None:
    w = c.w1
    if len(w.source) > EXHAUSTIVE_STATES:
        return None
    full = w.source.mask
    saturated = [x for x in range(full + 1) if _angel_scan(w, x) & ~x == 0]
    invariant = [x for x in range(full + 1) if x & ~_demon_scan(w, x) == 0]
    for u in c.subsets(w.source):
        least = full
        for x in saturated:
            if u & ~x == 0:
                least &= x
        if cover_bits(w, u) != least:
            return f"cover not least saturated superset of {_name(w.source, u)}"
        great = 0
        for x in invariant:
            if x & ~u == 0:
                great |= x
        if interior_bits(w, u) != great:
            return f"interior not greatest invariant inside {_name(w.source, u)}"
    return None


@law("cover-trees")
def _cover_trees(c: Case) -> str | None:
    w = c.w1
    if len(w.source) > 5:
        return None
    sets = exit_sets(w, len(w.source))
    for u in c.subsets(w.source):
        t = sum(1 << s for s, fam in enumerate(sets) if any(x & ~u == 0 for x in fam))
        if t != cover_bits(w, u):
            return f"at {_name(w.source, u)}"
    return None


@law("compatibility")
def _compat(c: Case) -> str | None:
    w = c.w1
    rng = c.rng
    for _ in range(4):
        u = rng.getrandbits(len(w.source))
        v = rng.getrandbits(len(w.source))
        us, vs = Subset(w.source, u), Subset(w.source, v)
        srv = synth_server(w, vs)
        both = cover_bits(w, u) & srv.inv.bits
        if not both:
            continue
        s = (both & -both).bit_length() - 1
        p = synth_client(w, s, us)
        if not verify_client(w, s, p, us):
            return "synthesized client fails verification"
        final, trace = execute(w, s, p, srv)
        if not (u >> final & 1 and srv.inv.bits >> final & 1):
            return f"final state {w.source.states[final]} outside U ⋒ J(V)"
        x = trace.start
        for st in trace.steps:
            if st.state != x:
                return "trace does not chain"
            x = w.step(st.state, st.command, st.response)
        if x != trace.final:
            return "trace replay mismatch"
        if final not in {e for _, e in client_exits(w, s, p)}:
            return "final state is not an exit of the client"
    return None


@law("sim-brute-force")
def _sim_brute(c: Case) -> str | None:
    if len(c.wl.source) > 5:
        return None
    for kind in KINDS:
        got = check_sim(c.w1, c.wl, c.rel, kind)
        if bool(got) != brute_sim(c.w1, c.wl, c.rel, kind):
            return f"{kind}: checker says {bool(got)}"
        if got and verify_cert(got):
            return f"{kind}: certificate does not verify"
        g = greatest_sim(c.w1, c.wl, kind, within=c.rel)
        if not brute_sim(c.w1, c.wl, g, kind):
            return f"{kind}: greatest simulation inside R is not a simulation"
        if got and not c.rel <= g:
            return f"{kind}: certified relation not inside greatest"
    return None


@law("subcommutativity")
def _subcomm(c: Case) -> str | None:
    r, wh, wl = c.rel, c.w1, c.wl
    ok = all(
        r.image_bits(_one_step_bits(wh, u)) & ~_one_step_bits(wl, r.image_bits(u)) == 0
        for u in c.subsets(wh.source)
    )
    if len(wh.source) > EXHAUSTIVE_STATES and ok:
        return None  # sampled subsets can only refute
    if ok != bool(check_sim(wh, wl, r, "linear")):
        return f"subcommutation {ok} vs checker"
    return None


@law("union-closure")
def _union(c: Case) -> str | None:
    wh, wl = c.w1, c.wl
    for kind in ("linear", "general"):
        g = greatest_sim(wh, wl, kind)
        r1 = greatest_sim(wh, wl, kind, within=random_relation(c.rng, wh.source, wl.source, 0.6) & g)
        r2 = greatest_sim(wh, wl, kind, within=random_relation(c.rng, wh.source, wl.source, 0.6) & g)
        if not check_sim(wh, wl, r1 | r2, kind):
            return f"{kind}: union of simulations is not one"
        if not (r1 | r2) <= g:
            return f"{kind}: union escapes the greatest simulation"
    return None


@law("saturation")
def _saturation(c: Case) -> str | None:
    wh, wl, r = c.w1, c.wl, c.rel
    s = saturate(r, wl)
    if not r <= s or saturate(s, wl).rows != s.rows:
        return "saturation is not a closure"
    if not (sim_leq(r, s, wl) and sim_leq(s, r, wl)):
        return "R and its saturation are not equivalent"
    g = greatest_sim(wh, wl, "general", within=r)
    if not check_sim(wh, wl, saturate(g, wl), "general"):
        return "saturation of a general simulation is not one"
    if saturate(greatest_sim(wh, wl, "general"), wl).rows != greatest_sim(wh, wl, "general").rows:
        return "greatest general simulation is not saturated"
    return None


@law("kleisli")
def _kleisli(c: Case) -> str | None:
    wh, wm = c.w1, c.wl
    wl = c.w2
    rng = c.rng
    r2 = greatest_sim(wh, wm, "general", within=random_relation(rng, wh.source, wm.source, 0.7))
    q2 = greatest_sim(wm, wl, "general", within=random_relation(rng, wm.source, wl.source, 0.7))
    r1 = greatest_sim(wh, wm, "general", within=random_relation(rng, wh.source, wm.source, 0.7) & r2)
    q1 = greatest_sim(wm, wl, "general", within=random_relation(rng, wm.source, wl.source, 0.7) & q2)
    big = compose(r2, q2)
    if not check_sim(wh, wl, big, "general"):
        return "composite of general simulations is not one"
    if not sim_leq(compose(r1, q1), big, wl):
        return "composition is not monotone"
    return None


@law("invariant-transport")
def _transport(c: Case) -> str | None:
    wh, wl = c.w1, c.wl
    r = greatest_sim(wh, wl, "linear", within=c.rel)
    for u in c.subsets(wh.source):
        if u & ~_one_step_bits(wh, u) == 0:
            img = r.image_bits(u)
            if img & ~_one_step_bits(wl, img):
                return f"image of {_name(wh.source, u)} is not a post-fixpoint"
    return None


@law("cover-transport")
def _cover_transport(c: Case) -> str | None:
    wh, wl = c.w1, c.wl
    r = c.rel
    lifted = all(
        r.image_bits(cover_bits(wh, u)) & ~cover_bits(wl, r.image_bits(u)) == 0
        for u in c.subsets(wh.source)
    )
    if len(wh.source) > EXHAUSTIVE_STATES and lifted:
        return None
    if lifted != bool(check_sim(wh, wl, r, "general")):
        return f"lifted condition {lifted} vs checker"
    return None


@law("continuity")
def _continuity(c: Case) -> str | None:
    wh, wl, r = c.w1, c.wl, c.rel
    if max(len(wh.source), len(wl.source)) > EXHAUSTIVE_STATES:
        return None
    is_sim = bool(check_sim(wh, wl, r, "general"))
    c1, c2 = continuity_conditions(converse(r), wl, wh, exhaustive=True)
    if c1 != is_sim:
        return f"cond1 {c1} vs simulation {is_sim}"
    if is_sim and not c2:
        return "simulation without cond2"
    return None


@law("self-simulation")
def _selfsim(c: Case) -> str | None:
    w = c.w1
    ss = saturation_preorder(w)
    if not ss.certified:
        return "saturation preorder is not a self-simulation"
    if ss.leq.rows != converse(saturate(Relation(w.source, w.source, tuple(1 << i for i in range(len(w.source)))), w)).rows:
        return "saturation preorder differs from the saturated identity"
    return None


@law("localization")
def _localization(c: Case) -> str | None:
    w = c.w1
    try:
        lw, ss = localize(w, 0, max_size=MAX_LOCALIZED)
    except SizeCapExceeded:
        return None  # too many reachable logs for a per-iteration check
    if not check_localized(ss):
        return "L(w) is not localized"
    if not ss.certified:
        return "L(w) preorder is not a self-simulation"
    rng = c.rng
    n = len(lw.source)
    for _ in range(10):
        u, v = rng.getrandbits(n), rng.getrandbits(n)
        cu = cover_bits(lw, ss.down_bits(u))
        cv = cover_bits(lw, ss.down_bits(v))
        meet = ss.down_bits(u) & ss.down_bits(v)
        if cu & cv & ~cover_bits(lw, meet):
            return "convergence fails on L(w)"
    return None


# -- runner --------------------------------------------------------------------


@dataclass
class LawReport:
    iterations: int
    tally: dict[str, dict[str, int]]
    failures: list[dict]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "iterations": self.iterations,
            "laws": self.tally,
            "failed": sum(t["failed"] for t in self.tally.values()),
            "passed": sum(t["passed"] for t in self.tally.values()),
            "failures": self.failures,
        }


MAX_REPORTED_FAILURES = 20


def run_cases(cases: Iterable[Case], names: Iterable[str] | None = None) -> LawReport:
    chosen = list(LAWS) if names is None else list(names)
    tally = {n: {"passed": 0, "failed": 0} for n in chosen}
    failures: list[dict] = []
    count = 0
    for i, case in enumerate(cases):
        count += 1
        for n in chosen:
            problem = LAWS[n](case)
            if problem is None:
                tally[n]["passed"] += 1
            else:
                tally[n]["failed"] += 1
                if len(failures) < MAX_REPORTED_FAILURES:
                    failures.append({"law": n, "iteration": i, "detail": problem})
    return LawReport(count, tally, failures)


def run_laws(seed: int = 0, iterations: int = 100, max_states: int = 5, names: Iterable[str] | None = None) -> LawReport:
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    return run_cases((random_case(seed, i, max_states) for i in range(iterations)), names)


def run_model_laws(model: ModelFile, seed: int = 0, names: Iterable[str] | None = None) -> LawReport:
    return run_cases(model_cases(model, seed), names)


__all__ = [
    "Case",
    "LAWS",
    "LawReport",
    "brute_sim",
    "exit_sets",
    "random_case",
    "random_relation",
    "random_space",
    "random_structure",
    "run_laws",
    "run_model_laws",
    "tree_cover",
]
