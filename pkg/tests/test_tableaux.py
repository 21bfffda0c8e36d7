from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parcat.census import generate
from parcat.errors import DomainError
from parcat.maps import RPermutation, core, is_r312_avoiding, rank_tuple
from parcat.rtuples import RSet, classify, parse_rtuple
from parcat.tableaux import (
    Partition,
    Tableau,
    content,
    count_tableaux,
    enumerate_tableaux,
    is_gapless_key,
    is_key,
    join,
    key_of,
    leq,
    meet,
    minimal_shape,
    minimum_tableau,
    partitions_in_box,
    perm_of_key,
    principal_ideal,
    r_of_shape,
    row_bound_max,
    row_end_list,
    row_end_max,
)

SHAPES = [s for n in range(1, 5) for s in partitions_in_box(n, 3, 3)]


def hook_content(shape: Partition) -> int:
    """Number of tableaux with entries in [n], by the hook-content formula."""
    n = shape.n
    parts = [p for p in shape.parts if p]
    cols = shape.column_lengths
    out = Fraction(1)
    for i, row in enumerate(parts, start=1):
        for j in range(1, row + 1):
            hook = (row - j) + (cols[j - 1] - i) + 1
            out *= Fraction(n + j - i, hook)
    assert out.denominator == 1
    return int(out)


def brute_tableaux(shape: Partition) -> set[Tableau]:
    zeta = shape.column_lengths
    n = shape.n
    found = set()
    for flat in product(range(1, n + 1), repeat=sum(zeta)):
        cols, k = [], 0
        for z in zeta:
            cols.append(flat[k : k + z])
            k += z
        try:
            found.add(Tableau(shape, cols))
        except DomainError:
            pass
    return found


def perm(shape, text):
    t = parse_rtuple(text, rset=r_of_shape(shape))
    return RPermutation(t.rset, t.entries)


class TestPartition:
    @pytest.mark.parametrize(
        "parts, r",
        [((1, 1, 0), (2,)), ((2, 1, 1, 0), (1, 3)), ((3, 2, 1), (1, 2)), ((0, 0, 0), ())],
    )
    def test_divider_set(self, parts, r):
        shape = Partition(parts)
        assert r_of_shape(shape) == RSet(len(parts), r)

    def test_rejects_increasing_parts(self):
        with pytest.raises(DomainError):
            Partition((1, 2, 0))

    def test_minimal_shape_has_right_dividers(self):
        for n in range(1, 6):
            for rset in RSet.all_subsets(n):
                assert r_of_shape(minimal_shape(rset)) == rset

    def test_box_enumeration(self):
        shapes = list(partitions_in_box(3, 2, 2))
        assert all(s.parts[2] == 0 and s.parts[0] <= 2 for s in shapes)
        assert len(shapes) == 6


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_count_matches_hook_content(shape):
    assert count_tableaux(shape) == hook_content(shape)


@pytest.mark.parametrize("shape", [s for s in SHAPES if s.size <= 5 and s.n <= 3], ids=str)
def test_enumeration_matches_brute_force(shape):
    listed = list(enumerate_tableaux(shape))
    assert len(listed) == len(set(listed))
    assert set(listed) == brute_tableaux(shape)
    flat = [tuple(v for col in t.columns for v in col) for t in listed]
    assert flat == sorted(flat)


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_bounded_enumeration_matches_filter(shape):
    everything = list(enumerate_tableaux(shape))
    rset = r_of_shape(shape)
    for beta in generate("U", shape.n, rset):
        bounded = set(enumerate_tableaux(shape, beta))
        direct = {
            t for t in everything
            if all(v <= beta.entries[i] for col in t.columns for i, v in enumerate(col))
        }
        assert bounded == direct
        # The largest element exists and is the max tableau over the core.
        top = row_bound_max(shape, beta)
        assert top in bounded and all(leq(t, top) for t in bounded)
        assert bounded == set(principal_ideal(top))


class TestSmallExamples:
    def test_section_one_sets(self):
        shape = Partition((1, 1, 0))
        a = set(enumerate_tableaux(shape, parse_rtuple("3,3;3")))
        b = set(enumerate_tableaux(shape, parse_rtuple("2,3;3")))
        assert a == b and len(a) == 3

    def test_non_upper_bounds_are_empty(self):
        assert list(enumerate_tableaux(Partition((1, 1, 0)), parse_rtuple("1,1;3"))) == []

    def test_content_and_row_ends(self):
        t = Tableau(Partition((1, 1, 0)), [[1, 2]])
        assert content(t) == (1, 1, 0)
        assert str(row_end_list(t)) == "1,2;3"
        u = Tableau(Partition((2, 1, 0)), [[1, 3], [2]])
        assert content(u) == (1, 1, 1)

    def test_row_bound_max_small(self):
        assert row_bound_max(Partition((1, 1, 0)), parse_rtuple("3,3;3")).columns == ((2, 3),)

    def test_row_end_max_small(self):
        assert row_end_max(Partition((1, 1, 0)), parse_rtuple("2,3;3")).columns == ((2, 3),)

    def test_minimum_tableau_has_content_shape(self):
        for shape in SHAPES:
            assert content(minimum_tableau(shape)) == shape.parts

    def test_validation_messages(self):
        shape = Partition((2, 1, 0))
        with pytest.raises(DomainError, match="strictly increase"):
            Tableau(shape, [[2, 2], [3]])
        with pytest.raises(DomainError, match="decreases"):
            Tableau(shape, [[2, 3], [1]])
        with pytest.raises(DomainError, match="outside"):
            Tableau(shape, [[1, 4], [2]])

    def test_json_round_trip(self):
        t = Tableau(Partition((2, 1, 0)), [[1, 3], [2]])
        assert Tableau.from_json(t.to_json()) == t
        assert t.render() == "1 2\n3"


class TestKeys:
    def test_small_key(self):
        shape = Partition((1, 1, 0))
        assert key_of(shape, perm(shape, "1,3;2")).columns == ((1, 3),)

    def test_counterexample_shape_key(self):
        shape = Partition((2, 1, 1, 0))
        y = key_of(shape, perm(shape, "4;1,2;3"))
        assert y.columns == ((1, 2, 4), (4,))
        assert not is_gapless_key(y)

    def test_inert_columns(self):
        shape = Partition((1, 1, 1))
        (only,) = list(enumerate_tableaux(shape))
        assert key_of(shape, perm(shape, "1,2,3")) == only and is_key(only)

    def test_wrong_rset(self):
        with pytest.raises(DomainError, match="needs R"):
            key_of(Partition((1, 1, 0)), parse_rtuple("1;2;3"))

    @pytest.mark.parametrize("shape", SHAPES + [Partition((2, 1, 1, 0)), Partition((3, 2, 2, 1, 0))], ids=str)
    def test_key_properties(self, shape):
        rset = r_of_shape(shape)
        perms = list(generate("r_permutations", shape.n, rset))
        keys = {p: key_of(shape, p) for p in perms}
        assert len(set(keys.values())) == len(perms)
        gapless = 0
        for p, y in keys.items():
            assert is_key(y) and perm_of_key(y) == p
            assert row_end_list(y) == rank_tuple(p)
            assert is_gapless_key(y) == is_r312_avoiding(p)
            gapless += is_gapless_key(y)
        assert gapless == sum(1 for _ in generate("r312_avoiding", shape.n, rset))
        all_keys = {t for t in enumerate_tableaux(shape) if is_key(t)}
        assert all_keys == set(keys.values())

    def test_section_fifteen_example(self):
        shape = Partition((2, 1, 1, 0))
        p = perm(shape, "4;1,2;3")
        assert key_of(shape, p) == row_bound_max(shape, rank_tuple(p))
        assert not is_r312_avoiding(p)


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_row_end_max_is_fiber_maximum(shape):
    fibers: dict = {}
    for t in enumerate_tableaux(shape):
        fibers.setdefault(row_end_list(t), []).append(t)
    for alpha in generate("UI", shape.n, r_of_shape(shape)):
        m = row_end_max(shape, alpha)
        assert row_end_list(m) == alpha
        assert all(leq(t, m) for t in fibers[alpha])
        if "gapless" in classify(alpha):
            assert is_key(m)


@pytest.mark.parametrize("shape", [s for s in SHAPES if s.n <= 3], ids=str)
def test_lattice_operations(shape):
    ts = list(enumerate_tableaux(shape))
    for t in ts:
        assert join(t, t) == t and meet(t, t) == t
        ideal = set(principal_ideal(t))
        assert ideal == {u for u in ts if leq(u, t)}
        for u in ts:
            j, m = join(t, u), meet(t, u)
            assert leq(t, j) and leq(u, j) and leq(m, t) and leq(m, u)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([s for s in SHAPES if s.size]), st.data())
def test_join_meet_distribute(shape, data):
    ts = list(enumerate_tableaux(shape))
    a, b, c = (data.draw(st.sampled_from(ts)) for _ in range(3))
    assert meet(a, join(b, c)) == join(meet(a, b), meet(a, c))


def test_row_bound_max_uses_core():
    shape = Partition((2, 1, 0))
    beta = parse_rtuple("3;3;3")
    assert row_bound_max(shape, beta) == row_end_max(shape, core(beta))
