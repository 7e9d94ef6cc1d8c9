from __future__ import annotations

import pytest

from ixcalc import fixtures as F
from ixcalc.laws import LAWS, random_case, run_cases, run_laws, run_model_laws
from ixcalc.modelfile import parse_model


def test_registry_names():
    assert len(LAWS) == 25
    for name in ("galois", "dual", "factorization", "sim-brute-force", "subcommutativity", "kleisli"):
        assert name in LAWS


def test_random_run_is_clean_and_reproducible():
    a = run_laws(seed=7, iterations=30, max_states=4)
    assert a.ok and a.iterations == 30
    assert a.to_json() == run_laws(seed=7, iterations=30, max_states=4).to_json()
    assert all(t["passed"] == 30 for t in a.tally.values())


def test_cases_are_seeded():
    x, y = random_case(1, 3), random_case(1, 3)
    assert x.w1 == y.w1 and x.rel == y.rel
    assert random_case(1, 3).w1 != random_case(2, 3).w1 or random_case(1, 3).rel != random_case(2, 3).rel


@pytest.mark.parametrize("name", F.MODEL_FILES)
def test_fixture_models(name):
    rep = run_model_laws(parse_model(F.model_text(name)))
    assert rep.ok, rep.failures


def test_subset_selection_and_bad_input():
    rep = run_laws(seed=0, iterations=3, names=["galois"])
    assert list(rep.tally) == ["galois"]
    with pytest.raises(ValueError):
        run_laws(max_states=0)


def test_failures_are_reported():
    def broken(case):
        return "always wrong"

    LAWS["broken"] = broken
    try:
        rep = run_cases([random_case(0, 0)], ["broken"])
    finally:
        del LAWS["broken"]
    assert not rep.ok and rep.failures == [{"law": "broken", "iteration": 0, "detail": "always wrong"}]
    assert rep.to_json()["failed"] == 1
