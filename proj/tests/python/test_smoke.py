"""Smoke tests for the python bindings; the heavy verification lives in the
C++ suites."""

from fractions import Fraction

import pytest

import imago


def test_worked_example_values():
    ex = imago.make_worked_example()
    a, b = ex.antecedent, ex.consequent
    assert imago.prob_conditional(ex.prior, ex.selection, a, b) == Fraction(1, 4)
    assert imago.imaged_belief(ex.prior, ex.selection, a, b) == Fraction(1, 4)
    assert imago.updated_prob(ex.prior, ex.lambda_, a, b) == Fraction(1, 2)
    assert imago.lambda_gap(ex.prior, ex.selection, ex.lambda_, a, b) == Fraction(1, 4)

    report = imago.theorem1_check(ex.prior, ex.selection, ex.lambda_)
    assert report["equality_forall"] is False
    assert report["uniqueness"] is False
    assert report["agree"] is True
    assert report["witness"] == (a, b)


def test_algebra_and_events():
    alg = imago.Algebra(["rain", "wind", "snow"])
    e = alg.event_of(["rain", "snow"])
    assert e == 0b101
    assert alg.event_label(e) == "{rain,snow}"
    assert alg.atoms_of(e) == [0, 2]
    assert alg.top == 0b111


def test_classification_of_sampled_tables():
    alg = imago.Algebra(3)
    f = imago.sample_stalnaker_selection(alg, seed=12)
    result = imago.classify(f)
    assert result["strongest"] == "stalnaker"
    assert "identity" in result["properties"]
    assert imago.strict_uniqueness_above_bottom(f)


def test_probability_is_exact():
    alg = imago.Algebra(2)
    dist = imago.ProbabilityDist(alg, ["1/3", "2/3"])
    assert dist.prob(0b01) == Fraction(1, 3)
    assert dist.prob(0b11) == 1
    with pytest.raises(Exception, match="not normalized"):
        imago.ProbabilityDist(alg, ["1/3", "1/3"])
    with pytest.raises(TypeError):
        imago.ProbabilityDist(alg, [0.5, 0.5])


def test_enumeration_budget():
    alg = imago.Algebra(1)
    tables = list(imago.enumerate_selection_functions(alg))
    assert len(tables) == 4
    with pytest.raises(imago.BudgetExceededError):
        imago.enumerate_selection_functions(imago.Algebra(3))


def test_update_dominates_conditional():
    alg = imago.Algebra(3)
    f = imago.sample_selection_function(alg, ["normality"], seed=5)
    dist = imago.ProbabilityDist.sample(alg, seed=6)
    lam = imago.random_lambda(f, seed=7)
    result = imago.fact7_check(dist, f, lam)
    assert result["holds"] is True
    assert result["max_gap"] >= 0


def test_campaign_roundtrip():
    report = imago.run_campaign(atoms=2, mode="exhaustive", targets="fact3,prop1", seed=3)
    assert report["targets"]["fact3"]["checked"] == 65536
    assert report["targets"]["fact3"]["passed"] == 65536
    assert report["targets"]["prop1"]["passed"] == 65536

    again = imago.run_campaign(atoms=2, mode="exhaustive", targets="fact3,prop1", seed=3)
    report.pop("runtime_ms")
    again.pop("runtime_ms")
    assert report == again


def test_counterexample_miner():
    model = imago.find_theorem1_counterexample(imago.Algebra(3), seed=1)
    assert model is not None
    assert model["conditional_prob"] < model["updated_prob"]
    alg = imago.Algebra(3)
    assert model["antecedent"] == alg.event_of(["a2", "a3"])
    assert imago.find_theorem1_counterexample(imago.Algebra(1), seed=1) is None
