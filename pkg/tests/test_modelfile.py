from __future__ import annotations

import dataclasses
import random

import pytest

from ixcalc import fixtures as F
from ixcalc.core import rtc
from ixcalc.errors import ModelError
from ixcalc.laws import random_relation, random_space, random_structure
from ixcalc.modelfile import ModelFile, load_model, parse_model, print_model, quote, tokenize


def test_count3_fixture_file():
    m = parse_model(F.model_text("count3"))
    assert list(m.spaces) == ["S"] and list(m.istructs) == ["w"]
    assert m.istructs["w"] == F.count3()
    assert m.subsets["goal"].names() == ("s2",)
    assert len(m.preorders["sat"]) == 6


@pytest.mark.parametrize("name", F.MODEL_FILES)
def test_fixture_round_trip(name):
    text = F.model_text(name)
    m = parse_model(text)
    printed = print_model(m)
    assert print_model(parse_model(printed)) == printed
    assert load_model(F.model_path(name)).istructs.keys() == m.istructs.keys()


def test_fixture_files_match_builders():
    m = parse_model(F.model_text("stack_array"))
    assert m.istructs["stack"] == F.stack() and m.istructs["array"] == F.array()
    assert m.relations["rep"] == F.stack_array_relation()
    j = parse_model(F.model_text("jump2"))
    assert j.relations["R"] == F.jump2_relation()
    lw, ss = F.lcount3()
    lm = parse_model(F.model_text("lcount3"))
    # the file names the structure "lw"; everything else is identical
    assert dataclasses.replace(lm.istructs["lw"], name=lw.name) == lw
    assert lm.preorders["rev"] == ss.leq


@pytest.mark.parametrize("seed", range(50))
def test_random_model_round_trip(seed):
    rng = random.Random(seed)
    s = random_space(rng, rng.randint(1, 5), "S")
    t = random_space(rng, rng.randint(1, 4), "T")
    m = ModelFile.collect(
        istructs={"w": random_structure(rng, s, "w"), "v": random_structure(rng, t, "v")},
        subsets={"u": s.subset(i for i in range(len(s)) if rng.random() < 0.5)},
        relations={"r": random_relation(rng, s, t)},
        preorders={"p": random_relation(rng, s, s)},
    )
    text = print_model(m)
    back = parse_model(text)
    assert back.istructs == m.istructs and back.relations == m.relations
    assert back.preorders["p"] == rtc(m.preorders["p"])
    assert print_model(back) == text


def test_quoting_odd_names():
    assert quote("s0") == "s0"
    assert quote("a b") == '"a b"'
    assert quote("(x,y)") == '"(x,y)"'
    text = 'space "S p" { "a b" "{c}" }\nsubset u in "S p" { "a b" }\n'
    m = parse_model(text)
    assert m.subsets["u"].names() == ("a b",)
    assert parse_model(print_model(m)).subsets["u"] == m.subsets["u"]


def test_arrow_splitting():
    assert [t.text for t in tokenize("ok->s1")] == ["ok", "->", "s1"]


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("space S { a }\nsubset u in S { b }\n", 2, "b"),
        ("space S { a }\nspace S { b }\n", 2, "duplicate"),
        ("space S { a a }\n", 1, "a"),
        ("subset u in S { a }\n", 1, "S"),
        ("space S { a }\n\nistruct w on S {\n  state a { cmd go { ok -> z } }\n}\n", 4, "z"),
        ("space S { a }\nrelation r : S -> S { (a,a) (a,q) }\n", 2, "q"),
        ("space S { a }\nbogus\n", 2, "bogus"),
        ("space S { a\n", None, "end of input"),
    ],
)
def test_parse_errors(text, line, fragment):
    with pytest.raises(ModelError) as ei:
        parse_model(text)
    assert fragment in str(ei.value)
    if line is not None:
        assert ei.value.line == line


def test_unknown_lookup():
    m = parse_model(F.model_text("count3"))
    with pytest.raises(ModelError, match="unknown istruct 'x' \\(known: w\\)"):
        m.get("istructs", "x")


def test_preorder_closed_on_load():
    m = parse_model("space S { a b c }\npreorder p on S { (a,b) (b,c) }\n")
    assert set(m.preorders["p"].named_pairs()) >= {("a", "c"), ("a", "a"), ("c", "c")}
