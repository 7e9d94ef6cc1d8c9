"""Brute-force reference implementations used to freeze expected values.

Everything here works on plain dicts and frozensets and never imports the
package, so agreement with the package is evidence rather than tautology.
A structure is ``(states, table)`` with ``table[s][a][d] = next``.
"""

from __future__ import annotations

import random
from itertools import product

COUNT3 = (["s0", "s1", "s2"], {"s0": {"inc": {"ok": "s1"}}, "s1": {"inc": {"ok": "s2"}}})
COIN = (["s", "win", "lose"], {"s": {"play": {"good": "win", "bad": "lose"}}})
MAGIC = (["m"], {"m": {"go": {}}})
JUMP2 = (["a0", "a2"], {"a0": {"jump": {"ok": "a2"}}})


def cmds(w, s):
    return w[1].get(s, {})


def all_subsets(states):
    for k in range(1 << len(states)):
        yield frozenset(s for i, s in enumerate(states) if k >> i & 1)


def angel(w, u):
    return frozenset(s for s in w[0] if any(all(n in u for n in r.values()) for r in cmds(w, s).values()))


def demon(w, u):
    return frozenset(s for s in w[0] if all(any(n in u for n in r.values()) for r in cmds(w, s).values()))


def exit_families(w, depth):
    """state -> set of exit sets over all client trees of depth <= depth."""
    fam = {s: {frozenset([s])} for s in w[0]}
    for _ in range(depth):
        new = {}
        for s in w[0]:
            found = {frozenset([s])}
            for resp in cmds(w, s).values():
                combos = {frozenset()}
                for n in resp.values():
                    combos = {x | y for x in combos for y in fam[n]}
                found |= combos
            new[s] = found
        fam = new
    return fam


def tree_cover(w, u, depth=None):
    """Roots of client trees (depth <= |S| by default) with all exits in u."""
    fam = exit_families(w, len(w[0]) if depth is None else depth)
    return frozenset(s for s in w[0] if any(x <= u for x in fam[s]))


def min_tree_depth(w, u):
    """state -> least depth of a tree into u (the cover stage)."""
    out = {}
    for d in range(len(w[0]) + 1):
        for s in tree_cover(w, u, d):
            out.setdefault(s, d)
    return out


def interior_scan(w, v):
    """Union of every subset X of v with X inside demon(X)."""
    best = frozenset()
    for x in all_subsets(sorted(v, key=w[0].index)):
        if x <= demon(w, x):
            best |= x
    return best


def dual_size(w, s):
    k = 1
    for resp in cmds(w, s).values():
        k *= len(resp)
    return k


def is_sim(wh, wl, rel, kind):
    """Quantifier-level simulation test; rel is a set of (s_h, s_l) pairs."""
    img = {s: frozenset(b for a, b in rel if a == s) for s in wh[0]}
    for sh, sl in rel:
        for resp_h in cmds(wh, sh).values():
            t = frozenset().union(*(img[n] for n in resp_h.values())) if resp_h else frozenset()
            if kind == "linear":
                ok = any(
                    all(any(nl in img[nh] for nh in resp_h.values()) for nl in resp_l.values())
                    for resp_l in cmds(wl, sl).values()
                )
            elif kind == "general":
                ok = sl in tree_cover(wl, t)
            else:
                raise ValueError(kind)
            if not ok:
                return False
    return True


def greatest_sim_enum(wh, wl, kind):
    """Union of all simulations, by enumerating every relation."""
    pairs = [(a, b) for a in wh[0] for b in wl[0]]
    out = set()
    for k in range(1 << len(pairs)):
        rel = {p for i, p in enumerate(pairs) if k >> i & 1}
        if is_sim(wh, wl, rel, kind):
            out |= rel
    return out


def saturate(rel, wl, dom):
    out = set()
    for a in dom:
        for b in tree_cover(wl, frozenset(y for x, y in rel if x == a)):
            out.add((a, b))
    return out


def saturation_leq(w):
    """Pairs (s, t) with s covered by {t}."""
    return {(s, t) for t in w[0] for s in tree_cover(w, frozenset([t]))}


def down(leq, u):
    return frozenset(s for s, t in leq if t in u)


def up(leq, u):
    return frozenset(t for s, t in leq if s in u)


def localize_bfs(w, init):
    start = frozenset([init])
    seen, order, todo = {start}, [start], [start]
    while todo:
        log = todo.pop(0)
        for s in sorted(log, key=w[0].index):
            for resp in cmds(w, s).values():
                for n in resp.values():
                    nxt = log | {n}
                    if nxt not in seen:
                        seen.add(nxt)
                        order.append(nxt)
                        todo.append(nxt)
    return order


def localized_verdict(w, leq):
    """First (s1, s2, a2) violating localization, or None."""
    for s1 in w[0]:
        for s2 in w[0]:
            if (s1, s2) not in leq:
                continue
            for a2, resp in cmds(w, s2).items():
                target = down(leq, frozenset(resp.values())) & down(leq, frozenset([s1]))
                if s1 not in tree_cover(w, target):
                    return (s1, s2, a2)
    return None


def point_verdict(w, leq, alpha):
    if interior_scan(w, up(leq, alpha)) != alpha:
        return "closed"
    if not alpha:
        return "nonempty"
    for x in alpha:
        for y in alpha:
            if not (down(leq, {x}) & down(leq, {y}) & alpha):
                return "convergent"
    return None


def run_client(w, start, goal, inv):
    """Exec trace of the stage-minimal client against the least-response server."""
    depth = min_tree_depth(w, goal)
    s, steps = start, []
    while depth[s] > 0:
        a, resp = next(
            (a, r) for a, r in cmds(w, s).items() if all(depth.get(n, 99) < depth[s] for n in r.values())
        )
        d, n = next((d, n) for d, n in resp.items() if n in inv)
        steps.append((s, a, d, n))
        s = n
    return steps, s


# -- random structures ---------------------------------------------------------


def random_structure(rng: random.Random, n: int, prefix: str = "q"):
    states = [f"{prefix}{i}" for i in range(n)]
    table = {}
    for s in states:
        row = {}
        for a in range(rng.choice((0, 1, 1, 2, 3))):
            row[f"c{a}"] = {f"r{d}": rng.choice(states) for d in range(rng.choice((0, 1, 1, 2, 3)))}
        if row:
            table[s] = row
    return states, table


def random_rel(rng: random.Random, dom, cod, density=0.4):
    return {(a, b) for a, b in product(dom, cod) if rng.random() < density}
