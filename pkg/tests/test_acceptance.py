"""Acceptance criteria, each reported as one PASS/FAIL line.

All comparisons are exact.  Expected values in ``LEDGER`` were produced by the
brute-force functions in ``oracles.py``; criterion 3 recomputes them with the
oracle before checking the package against them.
"""

from __future__ import annotations

import json
import os
import random
import subprocess
import sys
import time
from itertools import combinations
from pathlib import Path

from conftest import ACCEPTANCE_LINES, to_istruct

import oracles as O
from ixcalc import fixtures as F
from ixcalc.core import Relation, converse, iter_bits
from ixcalc.errors import SizeCapExceeded
from ixcalc.fixpoint import cover, interior, pos
from ixcalc.istruct import dual, localize
from ixcalc.programs import execute, synth_client, synth_server
from ixcalc.simulation import check_sim, greatest_sim, saturate
from ixcalc.topology import (
    bin_down,
    check_formal_point,
    check_localized,
    continuity_conditions,
    identity_preorder,
    localized_cover,
    saturation_preorder,
)


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def cli(*args: str, hashseed: str = "0") -> subprocess.CompletedProcess:
    env = dict(os.environ, PYTHONHASHSEED=hashseed)
    return subprocess.run(
        [sys.executable, "-m", "ixcalc", *args], capture_output=True, env=env, timeout=300
    )


# -- 1 ---------------------------------------------------------------------------


def test_criterion_1_law_suite():
    t0 = time.perf_counter()
    proc = cli("laws", "--random", "--seed", "0", "--iterations", "200", "--max-states", "5")
    elapsed = time.perf_counter() - t0
    rep = json.loads(proc.stdout)
    res = rep["result"]
    ok = proc.returncode == 0 and res["failed"] == 0 and res["iterations"] == 200 and elapsed < 60
    report(1, ok, f"{res['passed']} law checks over {len(res['laws'])} laws, {res['failed']} failures, {elapsed:.1f}s")
    assert ok, res["failures"]


# -- 2 ---------------------------------------------------------------------------


def test_criterion_2_cover_equals_tree_enumeration():
    checked = mismatches = 0
    for seed in range(100):
        rng = random.Random(1000 + seed)
        w = O.random_structure(rng, rng.randint(1, 4))
        iw = to_istruct(w)
        for k in range(1 << len(w[0])):
            u = frozenset(s for i, s in enumerate(w[0]) if k >> i & 1)
            got = frozenset(cover(iw, iw.source.subset(u)).subset.names())
            checked += 1
            if got != O.tree_cover(w, u):
                mismatches += 1
    ok = mismatches == 0
    report(2, ok, f"100 structures, {checked} subsets, {mismatches} mismatches")
    assert ok


# -- 3 ---------------------------------------------------------------------------

# Frozen from the brute-force oracle.
LEDGER = {
    "cover count3 {s2}": {"s0", "s1", "s2"},
    "cover stages count3 {s2}": {"s0": 2, "s1": 1, "s2": 0},
    "cover coin {win}": {"win"},
    "cover magic {}": {"m"},
    "interior count3 full": {"s0", "s1", "s2"},
    "interior count3 {s0,s1}": set(),
    "interior coin {s,win}": {"s", "win"},
    "interior magic full": set(),
    "pos count3": {"s0", "s1", "s2"},
    "dual sizes count3": [1, 1, 1],
    "dual sizes coin": [2, 1, 1],
    "dual sizes magic": [0],
    "greatest linear count3": {("s0", "s0"), ("s1", "s0"), ("s1", "s1"), ("s2", "s0"), ("s2", "s1"), ("s2", "s2")},
    "greatest general count3 size": 9,
    "saturate {(s2,s2)}": {("s2", "s0"), ("s2", "s1"), ("s2", "s2")},
    "jump2 to count3 linear": False,
    "jump2 to count3 general": True,
    "L(count3) states": 3,
    "saturation preorder count3": {("s0", "s0"), ("s0", "s1"), ("s0", "s2"), ("s1", "s1"), ("s1", "s2"), ("s2", "s2")},
    "localized count3 sat": None,
    "localized count3 identity": ("s0", "s0", "inc"),
    "point count3 sat full": None,
    "point count3 sat empty": "nonempty",
    "point coin identity {s,win}": "convergent",
    "exec count3 s0 to {s2}": ([("s0", "inc", "ok", "s1"), ("s1", "inc", "ok", "s2")], "s2"),
}


def oracle_ledger() -> dict:
    c3, coin, magic, j2 = O.COUNT3, O.COIN, O.MAGIC, O.JUMP2
    fs = frozenset
    full = fs(c3[0])
    sat = O.saturation_leq(c3)
    ident = {(s, s) for s in c3[0]}
    return {
        "cover count3 {s2}": set(O.tree_cover(c3, fs({"s2"}))),
        "cover stages count3 {s2}": O.min_tree_depth(c3, fs({"s2"})),
        "cover coin {win}": set(O.tree_cover(coin, fs({"win"}))),
        "cover magic {}": set(O.tree_cover(magic, fs())),
        "interior count3 full": set(O.interior_scan(c3, full)),
        "interior count3 {s0,s1}": set(O.interior_scan(c3, fs({"s0", "s1"}))),
        "interior coin {s,win}": set(O.interior_scan(coin, fs({"s", "win"}))),
        "interior magic full": set(O.interior_scan(magic, fs(magic[0]))),
        "pos count3": set(O.interior_scan(c3, full)),
        "dual sizes count3": [O.dual_size(c3, s) for s in c3[0]],
        "dual sizes coin": [O.dual_size(coin, s) for s in coin[0]],
        "dual sizes magic": [O.dual_size(magic, s) for s in magic[0]],
        "greatest linear count3": O.greatest_sim_enum(c3, c3, "linear"),
        "greatest general count3 size": len(O.greatest_sim_enum(c3, c3, "general")),
        "saturate {(s2,s2)}": O.saturate({("s2", "s2")}, c3, c3[0]),
        "jump2 to count3 linear": O.is_sim(j2, c3, {("a0", "s0"), ("a2", "s2")}, "linear"),
        "jump2 to count3 general": O.is_sim(j2, c3, {("a0", "s0"), ("a2", "s2")}, "general"),
        "L(count3) states": len(O.localize_bfs(c3, "s0")),
        "saturation preorder count3": sat,
        "localized count3 sat": O.localized_verdict(c3, sat),
        "localized count3 identity": O.localized_verdict(c3, ident),
        "point count3 sat full": O.point_verdict(c3, sat, full),
        "point count3 sat empty": O.point_verdict(c3, sat, fs()),
        "point coin identity {s,win}": O.point_verdict(coin, {(s, s) for s in coin[0]}, fs({"s", "win"})),
        "exec count3 s0 to {s2}": O.run_client(c3, "s0", fs({"s2"}), full),
    }


def artifact_ledger() -> dict:
    c3, coin, magic, j2 = F.count3(), F.coin(), F.magic(), F.jump2()
    S = c3.source

    def names(u):
        return set(u.names())

    cov = cover(c3, S.subset(["s2"]))
    lv = check_localized(identity_preorder(c3))
    st = S.states
    final, trace = execute(c3, "s0", synth_client(c3, "s0", S.subset(["s2"])), synth_server(c3, S.full()))
    steps = [
        (st[x.state], c3.table[x.state][x.command].name, c3.table[x.state][x.command].responses[x.response], st[x.next])
        for x in trace.steps
    ]
    return {
        "cover count3 {s2}": names(cov.subset),
        "cover stages count3 {s2}": {st[s]: cov.stage[s] for s in cov.subset},
        "cover coin {win}": names(cover(coin, coin.source.subset(["win"])).subset),
        "cover magic {}": names(cover(magic, magic.source.empty()).subset),
        "interior count3 full": names(interior(c3, S.full()).subset),
        "interior count3 {s0,s1}": names(interior(c3, S.subset(["s0", "s1"])).subset),
        "interior coin {s,win}": names(interior(coin, coin.source.subset(["s", "win"])).subset),
        "interior magic full": names(interior(magic, magic.source.full()).subset),
        "pos count3": names(pos(c3)),
        "dual sizes count3": [len(r) for r in dual(c3).table],
        "dual sizes coin": [len(r) for r in dual(coin).table],
        "dual sizes magic": [len(r) for r in dual(magic).table],
        "greatest linear count3": set(greatest_sim(c3, c3, "linear").named_pairs()),
        "greatest general count3 size": len(greatest_sim(c3, c3, "general")),
        "saturate {(s2,s2)}": set(saturate(Relation.from_pairs(S, S, [("s2", "s2")]), c3).named_pairs()),
        "jump2 to count3 linear": bool(check_sim(j2, c3, F.jump2_relation(), "linear")),
        "jump2 to count3 general": bool(check_sim(j2, c3, F.jump2_relation(), "general")),
        "L(count3) states": len(localize(c3, "s0")[0].source),
        "saturation preorder count3": set(saturation_preorder(c3).leq.named_pairs()),
        "localized count3 sat": None if check_localized(saturation_preorder(c3)) else "fail",
        "localized count3 identity": None if lv else tuple(lv.detail.strip("()").split(",")),
        "point count3 sat full": check_formal_point(saturation_preorder(c3), S.full()).condition,
        "point count3 sat empty": check_formal_point(saturation_preorder(c3), S.empty()).condition,
        "point coin identity {s,win}": check_formal_point(
            identity_preorder(coin), coin.source.subset(["s", "win"])
        ).condition,
        "exec count3 s0 to {s2}": (steps, st[final]),
    }


def test_criterion_3_fixture_ledger():
    oracle, artifact = oracle_ledger(), artifact_ledger()
    bad = [k for k in LEDGER if not (oracle[k] == LEDGER[k] == artifact[k])]
    ok = not bad and set(oracle) == set(artifact) == set(LEDGER)
    report(3, ok, f"{len(LEDGER)} ledger values, oracle = frozen = artifact" + (f"; mismatched: {bad}" if bad else ""))
    assert ok


# -- 4 ---------------------------------------------------------------------------


def test_criterion_4_compatibility_execution():
    t0 = time.perf_counter()
    found = failures = attempts = 0
    while found < 100 and attempts < 10_000:
        rng = random.Random(5000 + attempts)
        attempts += 1
        w = O.random_structure(rng, rng.randint(1, 5))
        iw = to_istruct(w)
        u = iw.source.subset(s for s in w[0] if rng.random() < 0.4)
        v = iw.source.subset(s for s in w[0] if rng.random() < 0.7)
        meet = cover(iw, u).subset & interior(iw, v).subset
        if not meet:
            continue
        found += 1
        start = rng.choice(list(iter_bits(meet.bits)))
        final, _ = execute(iw, start, synth_client(iw, start, u), synth_server(iw, v))
        inv = O.interior_scan(w, frozenset(v.names()))
        steps, ofinal = O.run_client(w, w[0][start], frozenset(u.names()), inv)
        name = w[0][final]
        if not (name in u.names() and name in inv and name == ofinal):
            failures += 1
    elapsed = time.perf_counter() - t0
    ok = found == 100 and failures == 0 and elapsed < 30
    report(4, ok, f"{found} instances ({attempts} drawn), {failures} failures, {elapsed:.2f}s")
    assert ok


# -- 5 ---------------------------------------------------------------------------


def test_criterion_5_simulation_iff_continuity():
    relations = disagreements = sims = 0
    for seed in range(50):
        rng = random.Random(7000 + seed)
        wh, wl = O.random_structure(rng, rng.randint(1, 4), "h"), O.random_structure(rng, rng.randint(1, 4), "l")
        ih, il = to_istruct(wh, "h", "H"), to_istruct(wl, "l", "L")
        candidates = [
            Relation.from_pairs(ih.source, il.source, sorted(O.random_rel(rng, wh[0], wl[0]))),
            greatest_sim(ih, il, "general"),
            Relation.full(ih.source, il.source),
        ]
        for r in candidates:
            relations += 1
            is_sim = bool(check_sim(ih, il, r, "general"))
            sims += is_sim
            cond1, _ = continuity_conditions(converse(r), il, ih, exhaustive=True)
            if is_sim != cond1 or is_sim != O.is_sim(wh, wl, set(r.named_pairs()), "general"):
                disagreements += 1
    ok = disagreements == 0
    report(5, ok, f"50 pairs, {relations} relations ({sims} simulations), {disagreements} disagreements")
    assert ok


# -- 6 ---------------------------------------------------------------------------


def opens_of(ss):
    n = len(ss.structure.source)
    space = ss.structure.source
    return sorted({localized_cover(ss, space.subset(iter_bits(k))).bits for k in range(1 << n)})


def distributivity_failures(ss) -> tuple[int, int]:
    """Exhaustive check of U ∩ ⋁V_i = ⋁(U ∩ V_i) over opens and every family."""
    space = ss.structure.source
    opens = opens_of(ss)

    def join(bits: int) -> int:
        return localized_cover(ss, space.subset(iter_bits(bits))).bits

    checks = fails = 0
    for u in opens:
        for r in range(len(opens) + 1):
            for fam in combinations(opens, r):
                union = 0
                meets = 0
                for v in fam:
                    union |= v
                    meets |= u & v
                checks += 1
                if u & join(union) != join(meets):
                    fails += 1
    return checks, fails


def convergence_failures(ss, rng: random.Random, triples: int = 50) -> tuple[int, int]:
    space = ss.structure.source
    n = len(space)
    got = fails = tries = 0
    while got < triples and tries < 20_000:
        tries += 1
        u = space.subset(i for i in range(n) if rng.random() < 0.5)
        v = space.subset(i for i in range(n) if rng.random() < 0.5)
        both = localized_cover(ss, u) & localized_cover(ss, v)
        if not both:
            continue
        s = rng.choice(list(iter_bits(both.bits)))
        got += 1
        if s not in localized_cover(ss, bin_down(ss, u, v)):
            fails += 1
    return got, fails


def test_criterion_6_localization_consequences():
    rng = random.Random(6)
    subjects = [("count3/sat", saturation_preorder(F.count3()))]
    seed = 0
    while len(subjects) < 21:
        wrng = random.Random(9000 + seed)
        seed += 1
        w = O.random_structure(wrng, wrng.randint(1, 4))
        try:
            lw, ss = localize(to_istruct(w), w[0][0], max_size=64)
        except SizeCapExceeded:
            continue
        assert len(lw.source) == len(O.localize_bfs(w, w[0][0]))
        subjects.append((f"L(w{seed - 1})", ss))
    conv_fail = dist_fail = dist_checks = short = not_localized = 0
    for _, ss in subjects:
        if not check_localized(ss):
            not_localized += 1
        got, fails = convergence_failures(ss, rng)
        conv_fail += fails
        short += got < 50 and len(ss.structure.source) > 0
        if len(ss.structure.source) <= 4:
            checks, fails = distributivity_failures(ss)
            dist_checks += checks
            dist_fail += fails
    ok = conv_fail == 0 and dist_fail == 0 and short == 0 and not_localized == 0
    report(
        6,
        ok,
        f"{len(subjects)} localized subjects, {50 * len(subjects)} convergence triples, "
        f"{dist_checks} distributivity checks, {conv_fail + dist_fail} failures",
    )
    assert ok


# -- 7 ---------------------------------------------------------------------------


def test_criterion_7_determinism(tmp_path: Path):
    models = {}
    for name in ("count3", "jump2"):
        p = tmp_path / f"{name}.ix"
        p.write_text(F.model_text(name), encoding="utf-8")
        models[name] = str(p)
    c3, j2 = models["count3"], models["jump2"]

    def produce(tag: str, hashseed: str) -> dict[str, bytes]:
        d = tmp_path / tag
        d.mkdir()
        out: dict[str, bytes] = {}
        cert, cl, sv, tr, jc = (str(d / n) for n in ("cert.json", "c.json", "s.json", "t.jsonl", "jc.json"))
        runs = {
            "sim": ("sim", j2, "--kind", "general", "--from", "jump2", "--to", "w", "--relation", "R", "--cert", cert),
            "synth-client": ("synth", "client", c3, "--istruct", "w", "--start", "s0", "--goal", "goal", "--out", cl),
            "synth-server": ("synth", "server", c3, "--istruct", "w", "--maintain", "all", "--out", sv),
            "exec": ("exec", c3, "--istruct", "w", "--start", "s0", "--client", cl, "--server", sv, "--trace", tr),
            "synth-jump": ("synth", "client", j2, "--istruct", "jump2", "--start", "a0", "--goal", "top", "--out", jc),
            "exec-across": (
                "exec-across", j2, "--cert", cert, "--start-high", "a0", "--start-low", "s0",
                "--client", jc, "--server", sv,
            ),
            "cover": ("cover", c3, "--istruct", "w", "--subset", "goal"),
            "sim-greatest": ("sim-greatest", c3, "--kind", "general", "--from", "w", "--to", "w"),
            "laws": ("laws", "--random", "--seed", "11", "--iterations", "20"),
        }
        for key, argv in runs.items():
            proc = cli(*argv, hashseed=hashseed)
            assert proc.returncode == 0, (key, proc.stdout)
            out[key] = proc.stdout.replace((str(d) + os.sep).encode(), b"<dir>/")
        for name in ("cert.json", "c.json", "s.json", "t.jsonl", "jc.json"):
            out[name] = (d / name).read_bytes()
        return out

    a, b, c = produce("run1", "0"), produce("run2", "0"), produce("run3", "12345")
    differing = sorted(k for k in a if not (a[k] == b[k] == c[k]))
    ok = not differing
    report(7, ok, f"{len(a)} artifacts byte-identical across 3 runs (2 hash seeds)" + (f"; differing: {differing}" if differing else ""))
    assert ok
