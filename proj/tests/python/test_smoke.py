import pytest

import assgp


@pytest.fixture()
def engine():
    return assgp.Engine()


def test_word_arithmetic(engine):
    assert engine.reduce("x0 x0^-1") == "e"
    assert engine.mul("x0 x1", "x1^-1 x0") == "x0 x0"
    assert engine.inv("x0 x1^-1") == "x1 x0^-1"
    assert engine.pow("x0", 3) == "x0 x0 x0"
    assert engine.lett("x0 x1^-1 x0") == ["x0", "x1"]
    assert engine.cyclic_member("x1^5", "x1") == 5
    assert engine.cyclic_member("x0", "x1") is None
    assert engine.retraction(["x0"], "x0 x1 x0") == "x0 x0"


def test_split_cancellation(engine):
    v_pre, v_suf, w_pre, w_suf = engine.split_cancellation("x0 x1", "x1^-1 x0")
    assert (v_pre, v_suf, w_pre, w_suf) == ("x0", "x1", "x1^-1", "x0")


def test_systems_and_membership(engine):
    seed = engine.seed_system(["x0"], 1)
    sys2 = seed.cyclic_enrich(["x1"])
    assert sys2.depth == 1
    assert sys2.alphabet_size == 2

    assert sys2.member(1, "x1^4")["verdict"] == "in"
    out = sys2.member(1, "x0")
    assert out["verdict"] == "not-in"
    deep = sys2.member(0, "x0 x1^2 x0^-1")
    assert deep["verdict"] == "in"

    assert all(ok for _, ok, _ in sys2.verify())
    assert all(ok for _, ok, _ in sys2.is_extension_of(seed))
    words = sys2.enumerate_level(1, exponent_budget=2)
    assert "x1 x1" in words and "e" in words


def test_rewriting_lemmas(engine):
    g0 = "x3 x0"
    assert engine.sandwich_reduce(g0, "x3", ["x0", "e", "x0^-1"], [1, -1]) == "e"
    # a cancelling pair collapses to e on both sides
    equal, lhs, rhs = engine.eta_equality([g0, engine.inv(g0)], g0, "x3")
    assert equal and lhs == "e" and rhs == "e"


def test_assgp_extension(engine):
    base = engine.seed_system(["x0"], 1)
    out = engine.assgp_extend(base, "x0")
    assert out["k"] == 5
    assert out["folds_to_g"]
    assert out["pipeline_ok"]
    extended = out["extended"]
    assert extended.member(1, out["g0"])["verdict"] == "in"


def test_chain_build_and_queries(tmp_path):
    chain = assgp.build_chain(max_word_len=2, generators=2, max_depth=1, seed=3)
    assert chain.stage_count >= 4

    sep = chain.separation_witness("x0 x1")
    assert sep is not None and sep["replays"]

    cert = chain.assgp_certificate("x0 x1", 1)
    assert cert is not None
    assert cert["folds_to_g"] and cert["spot_ok"]

    assert chain.u_member("e", 1)["verdict"] == "in"
    assert chain.conjugation_level("x0 x1", 1) == 3
    assert all(ok for _, ok, _ in chain.invariant_suites(samples=8))

    run_dir = tmp_path / "run"
    chain.save(str(run_dir))
    reloaded = assgp.load_run(str(run_dir))
    assert reloaded.stage_count == chain.stage_count
    again = reloaded.assgp_certificate("x0 x1", 1)
    assert again is not None and again["folds_to_g"]


def test_lemma_suites():
    results = assgp.lemma_suites(samples=60, seed=5)
    assert results and all(ok for _, ok, _ in results)
