import math

import pytest
from hypothesis import given, strategies as st

from stonklab.errors import AlignmentError, SeriesTooShortError
from stonklab.series import (
    ALL_VARIANTS,
    PLAIN,
    SHIFTED,
    SHIFTED_STATIONARY,
    STATIONARY,
    AlignedPair,
    DailySeries,
    Variant,
    align,
    apply_variant,
    difference,
    shift_target,
)

from conftest import day, mk_series


class TestDailySeries:
    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            DailySeries((day(0), day(0)), (1.0, 2.0))  # duplicate date
        with pytest.raises(ValueError):
            DailySeries((day(1), day(0)), (1.0, 2.0))  # decreasing
        with pytest.raises(ValueError):
            DailySeries((day(0),), (math.nan,))
        with pytest.raises(ValueError):
            DailySeries((day(0),), (math.inf,))
        with pytest.raises(ValueError):
            DailySeries((day(0), day(1)), (1.0,))  # length mismatch

    def test_from_items_sorts(self):
        s = DailySeries.from_items([(day(2), 3.0), (day(0), 1.0), (day(1), 2.0)])
        assert s.dates == (day(0), day(1), day(2))
        assert s.values == (1.0, 2.0, 3.0)

    def test_clip(self):
        s = mk_series([1, 2, 3, 4, 5])
        clipped = s.clip(day(1), day(3))
        assert clipped.dates == (day(1), day(2), day(3))
        assert clipped.values == (2.0, 3.0, 4.0)


class TestAlign:
    def test_inner_join_keeps_shared_dates(self):
        a = DailySeries.from_items([(day(0), 1), (day(1), 2), (day(2), 3)])
        b = DailySeries.from_items([(day(1), 9), (day(2), 8)])
        pair = align(a, b, "inner-join")
        assert pair.dates == (day(1), day(2))
        assert pair.x == (2.0, 3.0)
        assert pair.y == (9.0, 8.0)

    def test_forward_fill_carries_sparser_values(self):
        a = DailySeries.from_items([(day(0), 1), (day(2), 3)])
        b = DailySeries.from_items([(day(0), 5), (day(1), 6), (day(2), 7)])
        pair = align(a, b, "forward-fill")
        assert pair.dates == (day(0), day(1), day(2))
        assert pair.x == (1.0, 1.0, 3.0)
        assert pair.y == (5.0, 6.0, 7.0)

    def test_forward_fill_drops_leading_dates(self):
        a = DailySeries.from_items([(day(0), 1), (day(3), 3)])
        b = DailySeries.from_items([(day(2), 6), (day(3), 7)])
        pair = align(a, b, "forward-fill")
        assert pair.dates == (day(2), day(3))
        assert pair.x == (1.0, 3.0)

    def test_empty_intersection_is_error(self):
        a = DailySeries.from_items([(day(0), 1)])
        b = DailySeries.from_items([(day(1), 2)])
        with pytest.raises(AlignmentError, match="no overlapping dates"):
            align(a, b, "inner-join")

    @given(
        st.sets(st.integers(min_value=0, max_value=40), min_size=1, max_size=15),
        st.sets(st.integers(min_value=0, max_value=40), min_size=1, max_size=15),
    )
    def test_inner_join_date_index_commutes(self, offs_a, offs_b):
        a = DailySeries.from_items([(day(o), float(o)) for o in offs_a])
        b = DailySeries.from_items([(day(o), float(-o)) for o in offs_b])
        if not (offs_a & offs_b):
            with pytest.raises(AlignmentError):
                align(a, b)
            return
        assert align(a, b).dates == align(b, a).dates


class TestShiftTarget:
    def test_basic_shift(self):
        pair = AlignedPair((day(0), day(1), day(2)), (10, 20, 30), (1, 2, 3))
        shifted = shift_target(pair, 1)
        assert shifted.x == (10.0, 20.0)
        assert shifted.y == (2.0, 3.0)
        assert shifted.dates == (day(0), day(1))

    def test_shift_by_length_is_error(self):
        pair = AlignedPair((day(0), day(1)), (1, 2), (3, 4))
        with pytest.raises(SeriesTooShortError, match="too short to shift"):
            shift_target(pair, 2)

    def test_length_contract(self):
        pair = AlignedPair(tuple(day(i) for i in range(5)), range(5), range(5))
        assert len(shift_target(pair, 2)) == 3

    def test_negative_shift_reverses_direction(self):
        pair = AlignedPair((day(0), day(1), day(2)), (10, 20, 30), (1, 2, 3))
        back = shift_target(pair, -1)
        assert back.x == (20.0, 30.0)
        assert back.y == (1.0, 2.0)

    def test_composition_law(self):
        pair = AlignedPair(tuple(day(i) for i in range(6)), range(6), range(10, 16))
        assert shift_target(shift_target(pair, 1), 1) == shift_target(pair, 2)


class TestDifference:
    def test_example(self):
        assert difference(mk_series([1, 3, 6, 10])).values == (2.0, 3.0, 4.0)

    def test_constant_series(self):
        assert difference(mk_series([5, 5, 5])).values == (0.0, 0.0)

    def test_too_short(self):
        with pytest.raises(SeriesTooShortError):
            difference(mk_series([1]))

    def test_dates_drop_first(self):
        s = mk_series([1, 2, 4])
        assert difference(s).dates == s.dates[1:]

    def test_linear_trend_gives_constant(self):
        b = 3.25
        s = mk_series([7.0 + b * t for t in range(40)])
        diffs = difference(s).values
        assert all(abs(v - b) <= 1e-12 for v in diffs)


class TestApplyVariant:
    def test_identity_variant_is_noop(self):
        pair = AlignedPair(tuple(day(i) for i in range(4)), (1, 2, 4, 8), (3, 1, 4, 1))
        assert apply_variant(pair, PLAIN) == pair

    def test_stationary_both_sides(self):
        pair = AlignedPair((day(0), day(1), day(2)), (1, 2, 4), (1, 3, 6))
        out = apply_variant(pair, STATIONARY, side="both")
        assert out.x == (1.0, 2.0)
        assert out.y == (2.0, 3.0)

    def test_stationary_target_only(self):
        pair = AlignedPair((day(0), day(1), day(2)), (1, 2, 4), (1, 3, 6))
        out = apply_variant(pair, STATIONARY, side="target-only")
        assert out.x == (2.0, 4.0)
        assert out.y == (2.0, 3.0)

    def test_shifted_stationary_length(self):
        n = 9
        pair = AlignedPair(
            tuple(day(i) for i in range(n)),
            tuple(float(i) for i in range(n)),
            tuple(float(i * i) for i in range(n)),
        )
        assert len(apply_variant(pair, SHIFTED_STATIONARY, side="both")) == n - 2

    def test_order_difference_then_shift(self):
        pair = AlignedPair(
            tuple(day(i) for i in range(4)), (1, 2, 4, 7), (10, 20, 40, 70)
        )
        out = apply_variant(pair, SHIFTED_STATIONARY, side="both")
        # diffs: x=(1,2,3), y=(10,20,30); then shift pairs x[i] with y[i+1]
        assert out.x == (1.0, 2.0)
        assert out.y == (20.0, 30.0)


class TestVariant:
    def test_exactly_four_variants(self):
        assert len(set(ALL_VARIANTS)) == 4
        assert {v.label for v in ALL_VARIANTS} == {
            "plain",
            "shifted",
            "stationary",
            "shifted-stationary",
        }

    def test_label_round_trip(self):
        for v in ALL_VARIANTS:
            assert Variant.from_label(v.label) == v

    def test_unknown_label(self):
        with pytest.raises(ValueError):
            Variant.from_label("sideways")
