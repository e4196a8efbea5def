import pytest
from hypothesis import given, strategies as st

from htgroups import forest as fo
from htgroups.errors import ContextMismatch, ParseError

from conftest import forests

TERNARY_SOURCE = "((.,.,.),.,.)+(.,.,.)"
TERNARY_TARGET = "(.,(.,.,.),.)+(.,.,.)"


def F(text, d, r=None):
    return fo.parse_forest(text, d, r)


@pytest.mark.parametrize(
    "text,d,count",
    [(".", 2, 1), (TERNARY_SOURCE, 3, 8), ("((.,.),.)", 2, 3), (TERNARY_TARGET, 3, 8)],
)
def test_leaf_count(text, d, count):
    assert fo.leaf_count(F(text, d)) == count


def test_elementary_carets():
    assert [leaf for _, leaf in fo.elementary_carets(F("((.,.),.)", 2))] == [1]
    assert [leaf for _, leaf in fo.elementary_carets(F(TERNARY_SOURCE, 3))] == [1, 6]
    assert fo.elementary_carets(F(".+.", 2)) == []


@pytest.mark.parametrize(
    "text,d,i,want",
    [(".", 2, 1, "(.,.)"), ("(.,.,.)+(.,.,.)", 3, 1, TERNARY_SOURCE), ("(.,.)", 2, 2, "(.,(.,.))")],
)
def test_split_leaf(text, d, i, want):
    assert fo.serialize_forest(fo.split_leaf(F(text, d), i)) == want


def test_remove_elementary_caret():
    assert fo.serialize_forest(fo.remove_elementary_caret(F(TERNARY_SOURCE, 3), 1)) == "(.,.,.)+(.,.,.)"
    assert fo.serialize_forest(fo.remove_elementary_caret(F("(.,.)", 2), 1)) == "."
    with pytest.raises(ValueError):
        fo.remove_elementary_caret(F("(.,.)", 2), 2)


def test_join_small_cases():
    f = F("((.,.),.)", 2)
    assert fo.join(f, f) == (f, [], [])
    h, ef, eg = fo.join(F("(.,.)", 2), F(".", 2))
    assert fo.serialize_forest(h) == "(.,.)" and ef == [] and eg == [1]
    h, ef, eg = fo.join(F("((.,.),.)", 2), F("(.,(.,.))", 2))
    assert fo.serialize_forest(h) == "((.,.),(.,.))" and ef == [3] and eg == [1]


def _all_forests(d, r, max_carets):
    seen = {fo.Forest.trivial(d, r)}
    frontier = set(seen)
    for _ in range(max_carets):
        frontier = {fo.split_leaf(f, i) for f in frontier for i in range(1, f.leaf_count + 1)}
        seen |= frontier
    return seen


def test_join_is_least_common_refinement_by_enumeration():
    f, g = F("((.,.),.)", 2), F("(.,(.,.))", 2)
    common = [h for h in _all_forests(2, 1, 3) if fo.is_refinement(h, f) and fo.is_refinement(h, g)]
    smallest = min(h.leaf_count for h in common)
    minimal = [h for h in common if h.leaf_count == smallest]
    assert len(minimal) == 1
    assert minimal[0] == fo.join(f, g)[0]
    # every other common refinement refines the minimal one
    assert all(fo.is_refinement(h, minimal[0]) for h in common)


def test_join_rejects_other_groups():
    with pytest.raises(ContextMismatch):
        fo.join(F(".", 2), F(".", 3))
    with pytest.raises(ContextMismatch):
        fo.join(F(".", 2), F(".+.", 2))


@pytest.mark.parametrize(
    "text,d,i,root,path",
    [("((.,.),.)", 2, 3, 1, (2,)), ("(.,.,.)+(.,.,.)", 3, 4, 2, (1,))],
)
def test_leaf_address(text, d, i, root, path):
    assert fo.leaf_address(F(text, d), i) == (root, path)


def test_parse_caret_and_arity_error():
    assert F("(.,.)", 2).roots == (fo.caret(2),)
    with pytest.raises(ParseError) as err:
        F("(.,.)", 3)
    assert err.value.position == 0


def test_parse_round_trip_golden_forests():
    for text in (TERNARY_SOURCE, TERNARY_TARGET, "(.,.,.)+(.,.,.)"):
        assert fo.serialize_forest(F(text, 3, 2)) == text


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        F("(.,x)", 2)
    assert err.value.position == 3
    with pytest.raises(ParseError):
        F(".+.", 2, 3)


def test_shift_helpers():
    f = F("((.,.),.)+.", 2)
    g = fo.unwrap_first_root(f)
    assert fo.serialize_forest(g) == "(.,.)+.+."
    assert fo.wrap_first_roots(g) == f
    assert fo.serialize_forest(fo.append_trivial_root(f)) == "((.,.),.)+.+."


@given(forests(), st.data())
def test_split_properties(f, data):
    d = f.d
    i = data.draw(st.integers(1, f.leaf_count))
    g = fo.split_leaf(f, i)
    assert g.leaf_count == f.leaf_count + d - 1
    assert fo.remove_elementary_caret(g, i) == f
    j = data.draw(st.integers(1, f.leaf_count))
    if i < j:
        assert fo.split_leaf(fo.split_leaf(f, i), j + d - 1) == fo.split_leaf(fo.split_leaf(f, j), i)


@given(st.data())
def test_join_laws(data):
    d = data.draw(st.sampled_from([2, 3]))
    r = data.draw(st.integers(1, 3))
    f, g, h = (data.draw(forests(d, r)) for _ in range(3))
    j, ef, eg = fo.join(f, g)
    assert j == fo.join(g, f)[0]
    assert fo.join(f, f)[0] == f
    assert fo.join(j, h)[0] == fo.join(f, fo.join(g, h)[0])[0]
    assert fo.expansion_sequence(f, j) == ef and fo.expansion_sequence(g, j) == eg


@given(forests())
def test_text_round_trip(f):
    text = fo.serialize_forest(f)
    assert fo.parse_forest(text, f.d, f.r) == f
    assert fo.serialize_forest(fo.parse_forest(text, f.d)) == text


@given(forests())
def test_addresses_are_a_bijection(f):
    for i in range(1, f.leaf_count + 1):
        assert fo.address_to_leaf(f, fo.leaf_address(f, i)) == i
