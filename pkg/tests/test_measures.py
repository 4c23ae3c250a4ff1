import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lifelike.measures import (
    GOL_TARGET,
    BehaviorVector,
    DynamicParams,
    MeasureError,
    correlation,
    distance,
    dynamic_measure,
    feature_vector,
    static_measure,
)
from lifelike.rules import elementary, gol_truth_table

# Published (stability, decrease, growth, chaoticity) vectors, static then
# dynamic, of the search target and the four selected found rules.
PUBLISHED = {
    "target": ((0, 4.68, 27.34, 67.96), (0, 75.23, 11.37, 13.38)),
    "found-1": ((0, 4.88, 33.01, 62.11), (0, 78.88, 9.06, 12.06)),
    "found-2": ((0, 2.54, 33.01, 64.45), (0, 84.80, 5.92, 9.28)),
    "found-3": ((0, 3.91, 30.47, 65.63), (0, 90.54, 4.00, 5.53)),
    "self-replicator": ((0, 3.32, 34.96, 61.72), (0, 90.63, 3.77, 5.61)),
}


def features(me, md):
    return (me[3], me[1], me[2], me[0], md[3], md[1], md[2], md[0])


class TestBehaviorVector:
    def test_sum_must_be_100(self):
        with pytest.raises(MeasureError):
            BehaviorVector(50, 0, 0, 0)

    def test_negative_rejected(self):
        with pytest.raises(MeasureError):
            BehaviorVector(110, -10, 0, 0)

    def test_from_counts(self):
        v = BehaviorVector.from_counts([1, 1, 1, 1, 2, 2])
        assert v.stability == 37.5
        assert v.decrease == 12.5
        assert v.chaoticity == 25.0
        assert v.growth == 25.0

    def test_from_counts_empty_rejected(self):
        with pytest.raises(MeasureError):
            BehaviorVector.from_counts([0, 0, 0, 0, 0, 0])

    def test_components_are_plain_floats(self):
        v = BehaviorVector.from_counts(np.array([1, 0, 0, 0, 0, 1]))
        assert all(type(x) is float for x in v.as_tuple())


class TestStaticMeasure:
    def test_rule_94(self):
        assert static_measure(elementary(94)).as_tuple() == (0.0, 12.5, 62.5, 25.0)

    def test_identity_rule_fully_stable(self):
        assert static_measure(elementary(204)).stability == 100.0

    def test_gol_growth_exact(self):
        me = static_measure(gol_truth_table(), "exact")
        assert me.stability == 0.0
        assert me.growth == pytest.approx(140 / 512 * 100)

    def test_gol_near_published(self):
        me = static_measure(gol_truth_table(), "exact")
        assert me.decrease == pytest.approx(4.68, abs=2.0)
        assert me.chaoticity == pytest.approx(67.96, abs=2.0)


class TestDynamicMeasure:
    def test_identity_rule_fully_stable(self):
        params = DynamicParams(runs=3, dims=64, max_steps=20, seed=0)
        md = dynamic_measure(elementary(204), params)
        assert md.as_tuple() == (100.0, 0.0, 0.0, 0.0)

    def test_deterministic_per_seed(self):
        params = DynamicParams(runs=3, dims=(20, 20), max_steps=10, seed=9)
        a = dynamic_measure(gol_truth_table(), params)
        b = dynamic_measure(gol_truth_table(), params)
        assert a == b

    def test_seed_changes_result(self):
        p1 = DynamicParams(runs=2, dims=(20, 20), max_steps=10, seed=1)
        p2 = DynamicParams(runs=2, dims=(20, 20), max_steps=10, seed=2)
        assert dynamic_measure(gol_truth_table(), p1) != dynamic_measure(
            gol_truth_table(), p2
        )

    def test_rule_94_dynamic_behavior_ordering(self):
        # From a dense random start, rule 94 settles into mostly growing
        # regions with a chaotic fringe and little decrease.
        params = DynamicParams(runs=10, dims=200, max_steps=100, seed=1)
        md = dynamic_measure(elementary(94), params)
        assert md.stability == 0.0
        assert md.growth > md.chaoticity > md.decrease

    def test_1d_dims_require_elementary(self):
        params = DynamicParams(runs=1, dims=32, max_steps=5, seed=0)
        with pytest.raises(MeasureError):
            dynamic_measure(gol_truth_table(), params)

    def test_param_validation(self):
        with pytest.raises(MeasureError):
            DynamicParams(runs=0)
        with pytest.raises(MeasureError):
            DynamicParams(density=1.5)
        with pytest.raises(MeasureError):
            DynamicParams(dims=(2, 50))


class TestDistance:
    def test_identical_vectors(self):
        assert distance(GOL_TARGET, GOL_TARGET) == 0.0

    def test_euclidean(self):
        assert distance((0, 0), (3, 4)) == 5.0

    @given(
        st.lists(st.floats(0, 100, allow_nan=False), min_size=8, max_size=8),
        st.lists(st.floats(0, 100, allow_nan=False), min_size=8, max_size=8),
    )
    def test_symmetry(self, a, b):
        assert distance(a, b) == distance(b, a)

    @pytest.mark.parametrize(
        "name,expected",
        [
            ("found-1", 9.32),
            ("found-2", 13.68),
            ("found-3", 19.13),
            ("self-replicator", 21.31),
        ],
    )
    def test_published_distances(self, name, expected):
        me, md = PUBLISHED[name]
        assert distance(features(me, md), GOL_TARGET) == pytest.approx(
            expected, abs=0.02
        )


class TestCorrelation:
    @pytest.mark.parametrize(
        "name,expected",
        [
            ("target", -0.29),
            ("found-1", -0.34),
            ("found-2", -0.40),
            ("found-3", -0.42),
            ("self-replicator", -0.45),
        ],
    )
    def test_published_correlations(self, name, expected):
        me, md = PUBLISHED[name]
        assert correlation(me, md) == pytest.approx(expected, abs=0.01)

    def test_constant_vector_rejected(self):
        with pytest.raises(MeasureError):
            correlation((25, 25, 25, 25), (0, 50, 25, 25))

    def test_accepts_behavior_vectors(self):
        a = BehaviorVector(0, 50, 25, 25)
        b = BehaviorVector(10, 40, 25, 25)
        assert -1.0 <= correlation(a, b) <= 1.0


class TestFeatureVector:
    def test_component_order(self):
        me = BehaviorVector(1, 2, 3, 94)
        md = BehaviorVector(5, 6, 7, 82)
        assert feature_vector(me, md) == (94, 2, 3, 1, 82, 6, 7, 5)

    def test_gol_target_matches_published_layout(self):
        me, md = PUBLISHED["target"]
        assert features(me, md) == GOL_TARGET
