"""Randomized cross-checks of the staged matcher against the brute-force
enumerator, at moderate case counts; the acceptance suite reruns the same
runners at full volume with different seeds."""

from .randgen import run_oracle_equivalence_cases, run_simulation_cases


def test_matcher_agrees_with_brute_force_on_random_cases():
    stats = run_oracle_equivalence_cases(seed=11, n_cases=200)
    assert stats["cases"] == 200
    assert stats["with_solutions"] >= 50      # the generators find real matches
    assert stats["higher_order_cases"] >= 20  # ... including higher-order ones


def test_variable_lifts_simulate_first_order_matches():
    stats = run_simulation_cases(seed=12, n_cases=100)
    assert stats["cases"] == 100
    assert stats["lifted_solutions"] >= stats["base_solutions"]
