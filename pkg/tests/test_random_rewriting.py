"""Randomized soundness checks for rule application and derivation replay."""

from .randgen import run_soundness_cases


def test_random_rule_applications_stay_sound_and_replayable():
    stats = run_soundness_cases(seed=13, n_applications=200)
    assert stats["applications"] == 200
    assert stats["replays"] >= 150
    assert stats["overflows"] >= 1   # fan-out onto wired ports does occur
    assert stats["black_holes"] >= 1  # ... and so do deliberately freed ports
