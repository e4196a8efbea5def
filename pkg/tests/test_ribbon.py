import pytest
from hypothesis import given, strategies as st

from htgroups import ribbon
from htgroups.braid import BraidWord, Permutation
from htgroups.errors import ParseError
from htgroups.ribbon import RibbonBraid, SignedPermutation

from conftest import braid_words


def R(twists, *letters):
    return RibbonBraid(tuple(twists), BraidWord(len(twists), tuple(letters)))


@st.composite
def ribbons(draw, strands=None, max_len=20):
    b = draw(braid_words(strands, max_len))
    t = draw(st.lists(st.integers(-3, 3), min_size=b.strands, max_size=b.strands))
    return RibbonBraid(tuple(t), b)


def test_product_examples():
    out = R([1, 0], 1) * R([0, 0], -1)
    assert out.twists == (1, 0) and out.braid.is_trivial()
    assert ribbon.rb_equal(R([2]) * R([3]), R([5]))
    x = R([1, -2, 3], 1, -2)
    e = RibbonBraid.identity(3)
    assert ribbon.rb_equal(e * x, x) and ribbon.rb_equal(x * e, x)


def test_inverse_examples():
    assert RibbonBraid.identity(2).inverse() == RibbonBraid.identity(2)
    inv = R([1, 0], 1).inverse()
    assert inv.twists == (0, -1) and inv.braid.letters == (-1,)
    assert ribbon.rb_equal(R([1, 0], 1) * inv, RibbonBraid.identity(2))
    assert R([1, 0], 1).inverse().inverse() == R([1, 0], 1)


def test_orientation():
    assert ribbon.is_oriented(RibbonBraid.identity(3))
    assert not ribbon.is_oriented(R([1]))
    assert (R([2, 0], 1) * R([0, -4], -1)).is_oriented()


def test_split_band_examples():
    assert ribbon.split_band(R([1]), 1, 2) == R([1, 1], 1)
    assert ribbon.split_band(R([2]), 1, 2) == R([2, 2], 1, 1)
    plain = ribbon.split_band(R([0, 0], 1), 2, 2)
    assert plain.twists == (0, 0, 0) and plain.braid == BraidWord(3, (1, 2))


def test_merge_examples():
    assert ribbon.try_merge_band(R([1, 1], 1), 1, 2, 1) == R([1])
    assert ribbon.try_merge_band(R([0, 1]), 1, 2, 1) is None
    # right twists, but the braid is not a cable
    assert ribbon.try_merge_band(R([0, 0], 1), 1, 2, 1) is None


def test_merge_full_twist_round_trip():
    assert ribbon.rb_equal(ribbon.try_merge_band(R([2, 2], 1, 1), 1, 2, 1), R([2]))


def test_projection_examples():
    s = ribbon.project_to_signed(R([3, 0], 1))
    assert s.signs == (1, 0) and s.perm == Permutation((2, 1))
    assert ribbon.project_to_signed(RibbonBraid.identity(2)) == SignedPermutation.identity(2)
    assert ribbon.project_to_braid(R([3, 0], 1)) == BraidWord(2, (1,))
    assert ribbon.project_to_perm(R([3, 0], 1)) == Permutation((2, 1))


def test_twist_and_writhe():
    e = RibbonBraid.identity(2)
    assert (ribbon.total_twist(e), ribbon.writhe(e)) == (0, 0)
    assert (ribbon.total_twist(R([1, 1], 1)), ribbon.writhe(R([1, 1], 1))) == (2, 1)


def test_literals():
    x = ribbon.parse_ribbon("t:1,-2;b:1")
    assert x == R([1, -2], 1) and ribbon.format_ribbon(x) == "t:1,-2;b:1"
    s = ribbon.parse_signed("s:1,0;p:2,1")
    assert s == SignedPermutation((1, 0), Permutation((2, 1))) and str(s) == "s:1,0;p:2,1"
    for bad in ("t:1;b:2", "t1;b:", "s:2;p:1", "s:1;p:1,2"):
        with pytest.raises(ParseError):
            (ribbon.parse_signed if bad.startswith("s") else ribbon.parse_ribbon)(bad)


def test_signed_split_reverses_flipped_blocks():
    s = SignedPermutation((1, 0), Permutation((1, 2)))
    out = s.split_at(1, 2)
    assert out.signs == (1, 1, 0) and out.perm.images == (2, 1, 3)
    assert out.try_merge_at(1, 1, 2) == s


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(ribbons(n), ribbons(n), ribbons(n))))
def test_group_axioms(xyz):
    x, y, z = xyz
    e = RibbonBraid.identity(x.size)
    assert ribbon.rb_equal((x * y) * z, x * (y * z))
    assert ribbon.rb_equal(x * x.inverse(), e) and ribbon.rb_equal(x.inverse() * x, e)


@given(ribbons())
def test_twists_slide_through_braids(x):
    n = x.size
    pi = x.permutation
    t = RibbonBraid(x.twists, BraidWord(n))
    b = RibbonBraid.from_braid(x.braid)
    moved = tuple(x.twists[pi.source_of(p) - 1] for p in range(1, n + 1))
    assert ribbon.rb_equal(t * b, b * RibbonBraid(moved, BraidWord(n)))


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(ribbons(n, 12), ribbons(n, 12))), st.data())
def test_split_band_is_multiplicative(xy, data):
    x, y = xy
    p = data.draw(st.integers(1, x.size))
    d = data.draw(st.sampled_from([2, 3]))
    lhs = ribbon.split_band(x * y, p, d)
    rhs = ribbon.split_band(x, p, d) * ribbon.split_band(y, x.target_of(p), d)
    assert ribbon.rb_equal(lhs, rhs)


@given(ribbons(max_len=12), st.data())
def test_split_merge_round_trips(x, data):
    p = data.draw(st.integers(1, x.size))
    d = data.draw(st.sampled_from([2, 3]))
    s = ribbon.split_band(x, p, d)
    q = min(s.target_of(p + k) for k in range(d))
    merged = ribbon.try_merge_band(s, p, d, q)
    assert merged is not None and ribbon.rb_equal(merged, x)
    assert ribbon.rb_equal(ribbon.split_band(merged, p, d), s)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(ribbons(n), ribbons(n))))
def test_projections_are_homomorphisms(xy):
    x, y = xy
    assert (x * y).to_signed() == x.to_signed() * y.to_signed()
    assert (x * y).total_twist() == x.total_twist() + y.total_twist()
    assert (x * y).writhe() == x.writhe() + y.writhe()
    assert x.inverse().to_signed() == x.to_signed().inverse()


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(ribbons(n), ribbons(n))))
def test_oriented_elements_form_a_subgroup(xy):
    x, y = (RibbonBraid(tuple(2 * t for t in z.twists), z.braid) for z in xy)
    assert (x * y).is_oriented() and x.inverse().is_oriented()
