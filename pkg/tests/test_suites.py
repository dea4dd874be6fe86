import pytest

from hypermatch.errors import PreconditionError
from hypermatch.suites import ORACLE_POINTS, SUITES, default_cases, run_suite

SMALL = {"lemma1": 40, "lemma2": 15, "pullback": 30, "lemma3": 20, "cor1": 10, "thm1": 8, "thm2": 8}


@pytest.mark.parametrize("suite", sorted(SMALL))
def test_small_run_passes(suite):
    report = run_suite(suite, seed=7, cases=SMALL[suite])
    assert report.ok, report.failures[:3]
    assert report.cases == SMALL[suite] and report.checks > 0


@pytest.mark.parametrize("suite", sorted(SMALL))
def test_byte_identical(suite):
    a = run_suite(suite, seed=11, cases=SMALL[suite]).to_json()
    b = run_suite(suite, seed=11, cases=SMALL[suite]).to_json()
    assert a == b


def test_case_is_replayable_alone():
    # case i depends only on (seed, i), so a prefix run agrees with the longer run
    short = run_suite("lemma2", seed=3, cases=5)
    long = run_suite("lemma2", seed=3, cases=10)
    assert short.checks <= long.checks
    assert [f["case"] for f in short.failures] == [f["case"] for f in long.failures if f["case"] < 5]


def test_grid_suites():
    assert run_suite("bounds").ok
    report = run_suite("oracle")
    assert report.ok and report.cases == len(ORACLE_POINTS)


def test_timing_excluded_by_default():
    report = run_suite("lemma1", cases=3)
    assert "wall_time" not in report.to_dict()
    assert "wall_time" in report.to_dict(include_timing=True)


def test_unknown_suite():
    with pytest.raises(PreconditionError):
        run_suite("nope")


def test_suite_table():
    assert set(SUITES) >= {"lemma1", "lemma2", "lemma3", "cor1", "thm1", "thm2", "bounds", "oracle"}
    assert default_cases("lemma1") == 1000 and default_cases("bounds") == 0
