import pytest

from htgroups import braid, ribbon, selftest
from htgroups.braid import BraidWord


def flipped_cable(w: BraidWord, i: int, d: int) -> BraidWord:
    """The cable formula with the sign of the strand-under-block crossings flipped."""
    c = i
    out = []
    for g in w.letters:
        q = abs(g)
        sgn = 1 if g > 0 else -1
        if q < c - 1:
            out.append(g)
        elif q > c:
            out.append(sgn * (q + d - 1))
        elif q == c - 1:
            out.extend(-sgn * k for k in range(c - 1, c + d - 1))
            c -= 1
        else:
            out.extend(sgn * k for k in range(c + d - 1, c - 1, -1))
            c += 1
    return BraidWord(w.strands + d - 1, tuple(out))


def test_flipped_cable_agrees_with_cable_away_from_the_flip():
    # sanity of the fixture: only letters crossing in from the left differ
    w = BraidWord(3, (2, -2))
    assert flipped_cable(w, 1, 2) == braid.cable(w, 1, 2)
    assert flipped_cable(BraidWord(2, (1,)), 2, 2) != braid.cable(BraidWord(2, (1,)), 2, 2)


def test_cable_sign_flip_is_caught(monkeypatch):
    monkeypatch.setattr(braid, "cable", flipped_cable)
    monkeypatch.setattr(ribbon, "cable", flipped_cable)
    res = selftest.run_suite("cabling")
    assert not res.passed
    assert res.first_failure.startswith("cable homomorphism")


def test_unmutated_cabling_passes():
    assert selftest.run_suite("cabling", n=50).passed


@pytest.mark.parametrize("name", ["forest", "braid", "ribbon_group", "confluence"])
def test_fixed_seed_reproduces_case_counts(name):
    a = selftest.run_suite(name, 99, n=20)
    b = selftest.run_suite(name, 99, n=20)
    assert a.counts == b.counts and a.cases == b.cases and a.failures == b.failures == 0


def test_scaled_sizes():
    assert selftest.scaled_sizes("quotients", 1.0) == {}
    assert selftest.scaled_sizes("quotients", 0.5) == {"n": 100, "n_lift": 50}
    assert selftest.scaled_sizes("cantor_oracle", 0.1) == {"n": 10}


def test_result_line_format():
    res = selftest.SuiteResult("demo")
    res.check(True, "a")
    res.check(False, "b", "detail")
    assert not res.passed and res.counts == {"a": 1, "b": 1}
    assert res.line().startswith("FAIL demo: 2 cases, 1 failures")
    assert "b: detail" in res.line()
