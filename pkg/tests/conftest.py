import os

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from htgroups import braid, forest as fo
from htgroups.diagram import GroupContext, Variant, random_element

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("HYPOTHESIS_EXAMPLES", "60")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# lines appended by the acceptance tests, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def forests(draw, d=None, r=None, max_carets=6):
    d = draw(st.sampled_from([2, 3])) if d is None else d
    r = draw(st.integers(1, 3)) if r is None else r
    f = fo.Forest.trivial(d, r)
    for _ in range(draw(st.integers(0, max_carets))):
        f = fo.split_leaf(f, draw(st.integers(1, f.leaf_count)))
    return f


@st.composite
def braid_words(draw, strands=None, max_len=20):
    n = draw(st.integers(1, 6)) if strands is None else strands
    if n == 1:
        return braid.BraidWord(1)
    gens = st.integers(1, n - 1).flatmap(lambda g: st.sampled_from([g, -g]))
    return braid.BraidWord(n, tuple(draw(st.lists(gens, max_size=max_len))))


contexts = st.builds(
    GroupContext,
    st.sampled_from([2, 3]),
    st.integers(1, 3),
    st.sampled_from(list(Variant)),
)


@st.composite
def elements(draw, ctx=None):
    ctx = draw(contexts) if ctx is None else ctx
    return random_element(
        ctx,
        draw(st.integers(0, 3)),
        draw(st.integers(0, 4)),
        2,
        draw(st.integers(0, 2**32)),
    )


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile (or load from cache) the normal-form kernels once, outside any timing
    w = braid.BraidWord(3, (1, -2, 1))
    assert w.garside is not None and w.permutation is not None
