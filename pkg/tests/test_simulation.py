from __future__ import annotations

import random

import pytest
from conftest import to_istruct
from oracles import COUNT3, JUMP2, greatest_sim_enum, is_sim, random_rel, random_structure
from oracles import saturate as oracle_saturate

from ixcalc import fixtures as F
from ixcalc.core import Relation, compose, identity
from ixcalc.errors import SpaceMismatch
from ixcalc.programs import EXIT, Call
from ixcalc.simulation import (
    KINDS,
    SimCert,
    Witness,
    check_sim,
    greatest_sim,
    kleisli_compose,
    saturate,
    sim_compare,
    sim_leq,
    verify_cert,
)

LINEAR_COUNT3 = {("s0", "s0"), ("s1", "s0"), ("s1", "s1"), ("s2", "s0"), ("s2", "s1"), ("s2", "s2")}


def rel(wh, wl, pairs):
    return Relation.from_pairs(wh.source, wl.source, sorted(pairs))


def test_identity_and_empty_certify(count3, coin, magic):
    for kind in KINDS:
        assert check_sim(count3, count3, identity(count3.source), kind)
        for a in (count3, coin, magic):
            for b in (count3, coin, magic):
                cert = check_sim(a, b, Relation.empty(a.source, b.source), kind)
                assert cert and not cert.witnesses


def test_jump2_over_count3(count3, jump2):
    r = F.jump2_relation()
    cx = check_sim(jump2, count3, r, "linear")
    assert not cx and cx.describe(jump2, count3) == "(a0,s0,jump)"
    cert = check_sim(jump2, count3, r, "general")
    assert cert and verify_cert(cert) is None
    wit = cert.witnesses[(0, 0, 0)]
    assert wit.program == Call(0, (Call(0, (EXIT,)),))
    assert dict(wit.exits) == {(0, 0): 0}
    assert check_sim(jump2, count3, r, "tc")
    assert not check_sim(jump2, count3, r, "affine")
    pairs = {(a, b) for a, b in r.named_pairs()}
    assert not is_sim(JUMP2, COUNT3, pairs, "linear")
    assert is_sim(JUMP2, COUNT3, pairs, "general")


def test_affine_prefers_skip(count3):
    r = rel(count3, count3, [("s0", "s0"), ("s1", "s1"), ("s2", "s2"), ("s0", "s1")])
    cert = check_sim(count3, count3, r, "affine")
    assert cert.witnesses[(0, 1, 0)].program is EXIT
    assert verify_cert(cert) is None


def test_unknown_kind_and_mismatch(count3, coin):
    with pytest.raises(ValueError):
        check_sim(count3, count3, identity(count3.source), "bogus")
    with pytest.raises(SpaceMismatch):
        check_sim(count3, coin, identity(count3.source))


def test_verify_cert_rejects_tampering(count3, jump2):
    cert = check_sim(jump2, count3, F.jump2_relation(), "general")
    assert verify_cert(SimCert("general", jump2, count3, cert.relation, {})).startswith("missing witness")
    bad = {(0, 0, 0): Witness(Call(0, (EXIT,)), {(0,): 0})}
    assert "outside the relation" in verify_cert(SimCert("general", jump2, count3, cert.relation, bad))
    assert "not a single call" in verify_cert(SimCert("linear", jump2, count3, cert.relation, cert.witnesses))
    bad = {(0, 0, 0): Witness(EXIT, {(): 0})}
    assert "tc witness" in verify_cert(SimCert("tc", jump2, count3, cert.relation, bad))


def test_greatest_sim_examples(count3):
    lin = greatest_sim(count3, count3, "linear")
    assert set(lin.named_pairs()) == LINEAR_COUNT3
    assert set(lin.named_pairs()) == greatest_sim_enum(COUNT3, COUNT3, "linear")
    gen = greatest_sim(count3, count3, "general")
    assert len(gen) == 9 and len(greatest_sim_enum(COUNT3, COUNT3, "general")) == 9
    for kind in KINDS:
        g = greatest_sim(count3, count3, kind)
        assert identity(count3.source) <= g
        assert check_sim(count3, count3, g, kind)


def test_greatest_sim_within(count3):
    r = rel(count3, count3, [("s0", "s1"), ("s1", "s2")])
    g = greatest_sim(count3, count3, "linear", within=r)
    assert g <= r and check_sim(count3, count3, g, "linear")


@pytest.mark.parametrize("seed", range(12))
def test_greatest_sim_matches_enumeration(seed):
    rng = random.Random(seed)
    wh = random_structure(rng, rng.randint(1, 2), "h")
    wl = random_structure(rng, rng.randint(1, 3), "l")
    ih, il = to_istruct(wh, "h", "H"), to_istruct(wl, "l", "L")
    for kind in ("linear", "general"):
        assert set(greatest_sim(ih, il, kind).named_pairs()) == greatest_sim_enum(wh, wl, kind)


@pytest.mark.parametrize("seed", range(40))
def test_checker_matches_quantifiers(seed):
    rng = random.Random(seed)
    wh = random_structure(rng, rng.randint(1, 4), "h")
    wl = random_structure(rng, rng.randint(1, 4), "l")
    ih, il = to_istruct(wh, "h", "H"), to_istruct(wl, "l", "L")
    pairs = random_rel(rng, wh[0], wl[0])
    r = rel(ih, il, pairs)
    for kind in ("linear", "general"):
        res = check_sim(ih, il, r, kind)
        assert bool(res) == is_sim(wh, wl, pairs, kind)
        if res:
            assert verify_cert(res) is None


def test_kleisli_and_saturation(count3, jump2):
    r = F.jump2_relation()
    assert kleisli_compose(r, identity(count3.source)) == r
    assert kleisli_compose(identity(jump2.source), r) == r
    assert check_sim(jump2, count3, kleisli_compose(r, identity(count3.source)), "general")
    top = rel(count3, count3, [("s2", "s2")])
    sat = saturate(top, count3)
    assert set(sat.named_pairs()) == {("s2", "s0"), ("s2", "s1"), ("s2", "s2")}
    assert set(sat.named_pairs()) == oracle_saturate({("s2", "s2")}, COUNT3, COUNT3[0])
    assert saturate(sat, count3) == sat
    assert not saturate(Relation.empty(count3.source, count3.source), count3)
    assert sim_compare(top, sat, count3) == "equiv"
    assert sim_leq(Relation.empty(count3.source, count3.source), top, count3)


def test_sim_compare_orders(count3):
    a = rel(count3, count3, [("s0", "s2")])
    b = rel(count3, count3, [("s1", "s2")])
    c = rel(count3, count3, [("s0", "s0")])
    assert sim_compare(a, a | b, count3) == "leq"
    assert sim_compare(a | b, a, count3) == "geq"
    assert sim_compare(a, b, count3) == "incomparable"
    # s0 is covered by {s2}, so {(s0,s0)} sits below {(s0,s2)}
    assert sim_compare(c, a, count3) == "leq"


@pytest.mark.parametrize("seed", range(20))
def test_kleisli_composition_certifies(seed):
    rng = random.Random(seed)
    ws = [random_structure(rng, rng.randint(1, 3), p) for p in "hml"]
    iws = [to_istruct(w, p, p.upper()) for w, p in zip(ws, "hml")]
    r = greatest_sim(iws[0], iws[1], "general")
    q = greatest_sim(iws[1], iws[2], "general")
    assert check_sim(iws[0], iws[2], kleisli_compose(r, q), "general")
    assert kleisli_compose(r, q) == compose(r, q)


def test_stack_on_array_certifies():
    st, ar = F.stack(), F.array()
    r = F.stack_array_relation()
    assert not check_sim(st, ar, r, "linear")
    cert = check_sim(st, ar, r, "general")
    assert cert and verify_cert(cert) is None
    assert r <= greatest_sim(st, ar, "general")
