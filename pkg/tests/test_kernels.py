import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from htgroups import _jit, _kernels, braid
from htgroups.braid import BraidWord
from htgroups.rng import SplitMix64

CORPUS_SCRIPT = """
import json
from htgroups import _jit, braid
from htgroups.rng import SplitMix64
rng = SplitMix64(77)
out = []
for _ in range(150):
    n = 1 + rng.below(8)
    w = braid.random_word(rng, n, rng.below(40))
    f = w.garside
    out.append([f.infimum, [list(x) for x in f.factors], list(w.permutation.images)])
print(json.dumps({"backend": _jit.BACKEND, "forms": out}))
"""


def _corpus(flag: str) -> dict:
    env = dict(os.environ, HTGROUPS_JIT=flag)
    proc = subprocess.run([sys.executable, "-c", CORPUS_SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def test_backends_agree_across_processes():
    fast, slow = _corpus("1"), _corpus("0")
    assert slow["backend"] == "numpy"
    assert fast["backend"] == ("numba" if _jit.USE_NUMBA else "numpy")
    assert fast["forms"] == slow["forms"]


def _python(fn):
    return getattr(fn, "py_func", fn)


@pytest.mark.skipif(not _jit.USE_NUMBA, reason="numba backend disabled")
def test_compiled_and_python_kernels_agree_in_process():
    rng = SplitMix64(5)
    for _ in range(100):
        n = 2 + rng.below(6)
        letters = np.asarray(braid.random_word(rng, n, rng.below(30)).letters, dtype=np.int64)
        inf, fac = _kernels.normal_form(letters, n)
        inf2, fac2 = _python(_kernels.normal_form)(letters, n)
        assert inf == inf2 and np.array_equal(fac, fac2)
        assert np.array_equal(_kernels.permutation_of(letters, n), _python(_kernels.permutation_of)(letters, n))


def _length(perm) -> int:
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])


@given(st.integers(2, 7).flatmap(lambda n: st.tuples(st.permutations(range(n)), st.permutations(range(n)))))
def test_left_weighting_a_pair(pair):
    a = np.array(pair[0], dtype=np.int64)
    b = np.array(pair[1], dtype=np.int64)
    a2, b2 = a.copy(), b.copy()
    _kernels.left_weight(a2, b2)
    # the product braid and its length are unchanged
    assert _length(a2) + _length(b2) == _length(a) + _length(b)
    before = BraidWord(len(a), tuple(braid.permutation_braid_letters([v + 1 for v in a])
                                     + braid.permutation_braid_letters([v + 1 for v in b])))
    after = BraidWord(len(a), tuple(braid.permutation_braid_letters([v + 1 for v in a2])
                                    + braid.permutation_braid_letters([v + 1 for v in b2])))
    assert braid.handle_reduce_is_trivial(before * after.inverse())
    # and the pair is now left-weighted: S(b) is inside F(a)
    assert braid.starting_set(tuple(v + 1 for v in b2)) <= braid.finishing_set(tuple(v + 1 for v in a2))


def test_identity_and_delta_predicates():
    assert _kernels.is_identity(np.arange(4))
    assert _kernels.is_delta(np.arange(4)[::-1].copy())
    assert not _kernels.is_delta(np.arange(4))


@pytest.mark.parametrize("flag,backend", [("0", "numpy"), ("off", "numpy"), ("false", "numpy"), ("1", None)])
def test_env_flag(flag, backend):
    env = dict(os.environ, HTGROUPS_JIT=flag)
    out = subprocess.run(
        [sys.executable, "-c", "from htgroups import BACKEND; print(BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    ).stdout.strip()
    assert out == (backend or _jit.BACKEND)


def test_benchmark_script_runs():
    script = os.path.join(os.path.dirname(__file__), "..", "benchmarks", "bench_garside.py")
    out = subprocess.run([sys.executable, script, "--words", "2", "--repeat", "1"],
                         capture_output=True, text=True, check=True).stdout
    assert "speedup" in out and len(out.strip().splitlines()) == 7
