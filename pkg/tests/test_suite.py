from lipfree.suite import run_suite

from helpers import tiny_space


def test_suite_passes_on_default_style_pool():
    report = run_suite(seed=3, max_size=6, spaces=12)
    assert report["all_passed"], [b for b in report["batteries"]
                                  if not b["passed"]]
    assert all(b["counterexample"] is None for b in report["batteries"])


def test_suite_zero_spaces_vacuous():
    report = run_suite(seed=0, spaces=0)
    assert report["all_passed"]
    assert all(b["cases"] == 0 for b in report["batteries"])


def test_suite_reproducible():
    a = run_suite(seed=9, max_size=5, spaces=8)
    b = run_suite(seed=9, max_size=5, spaces=8)
    assert a == b


def test_sabotaged_distances_break_strong_duality():
    # triangle inequality violated: the direct-edge transport overpays, the
    # dual stays sharp, and the battery must report the counterexample
    broken = tiny_space([[0, 1, 3], [1, 0, 1], [3, 1, 0]],
                        labels=("e", "1", "2"))
    report = run_suite(seed=1, pool=[broken] * 6)
    assert not report["all_passed"]
    battery = {b["name"]: b for b in report["batteries"]}
    duality = battery["free.strong_duality"]
    assert not duality["passed"]
    assert duality["counterexample"] is not None
    assert "dual" in duality["counterexample"]
