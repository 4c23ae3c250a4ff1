import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lifelike.rules import elementary, gol_truth_table, state_of
from lifelike.simulator import (
    LatticeError,
    averaged_spacetime,
    evolve,
    load_pattern,
    m_field,
    neighborhood_index_field,
    ppm_bytes,
    random_lattice,
    render_ppm,
    spacetime,
    step,
    step_naive,
)


def place(shape, cells):
    grid = np.zeros(shape, dtype=np.uint8)
    for i, j in cells:
        grid[i, j] = 1
    return grid


BLINKER = [(2, 1), (2, 2), (2, 3)]
GLIDER = [(0, 1), (1, 2), (2, 0), (2, 1), (2, 2)]


class TestGameOfLifePatterns:
    def test_blinker_period_two(self):
        tt = gol_truth_table()
        c0 = place((5, 5), BLINKER)
        c1 = step(c0, tt)
        c2 = step(c1, tt)
        assert not np.array_equal(c0, c1)
        assert np.array_equal(c0, c2)

    def test_glider_translates_diagonally_in_four_steps(self):
        tt = gol_truth_table()
        c = place((12, 12), GLIDER)
        expected = np.roll(np.roll(c, 1, axis=0), 1, axis=1)
        for _ in range(4):
            c = step(c, tt)
        assert np.array_equal(c, expected)

    def test_block_is_still(self):
        tt = gol_truth_table()
        c = place((6, 6), [(1, 1), (1, 2), (2, 1), (2, 2)])
        assert np.array_equal(step(c, tt), c)


class TestEngines:
    @given(st.integers(0, 255), st.integers(0, 2**30))
    @settings(max_examples=30, deadline=None)
    def test_fast_matches_naive_1d(self, rule, seed):
        tt = elementary(rule)
        c = random_lattice(17, 0.5, np.random.default_rng(seed))
        assert np.array_equal(step(c, tt), step_naive(c, tt))

    @given(st.integers(0, 2**30))
    @settings(max_examples=10, deadline=None)
    def test_fast_matches_naive_gol(self, seed):
        tt = gol_truth_table()
        c = random_lattice((9, 11), 0.4, np.random.default_rng(seed))
        assert np.array_equal(step(c, tt), step_naive(c, tt))

    def test_translation_equivariance_on_torus(self):
        tt = gol_truth_table()
        c = random_lattice((16, 16), 0.3, np.random.default_rng(5))
        shifted = np.roll(np.roll(c, 3, axis=0), -2, axis=1)
        assert np.array_equal(
            step(shifted, tt), np.roll(np.roll(step(c, tt), 3, axis=0), -2, axis=1)
        )

    def test_dimension_mismatch_raises(self):
        with pytest.raises(LatticeError):
            step(np.zeros((4, 4), dtype=np.uint8), elementary(90))
        with pytest.raises(LatticeError):
            step(np.zeros(8, dtype=np.uint8), gol_truth_table())


class TestNeighborhoodIndexField:
    def test_single_live_cell_indices(self):
        c = place((3, 3), [(1, 1)])
        idx = neighborhood_index_field(c)
        # The live cell is the center (bit 4 from the top) of its own
        # neighborhood and appears once in every neighbor's index.
        assert idx[1, 1] == 1 << 4
        assert idx[0, 0] == 1 << 0  # live cell is its SE neighbor
        assert idx[2, 2] == 1 << 8  # live cell is its NW neighbor


class TestMField:
    def test_state_projection_equals_step(self):
        tt = gol_truth_table()
        rng = np.random.default_rng(0)
        for _ in range(10):
            c = random_lattice((12, 12), rng.uniform(0.1, 0.9), rng)
            codes = m_field(c, tt)
            states = np.vectorize(state_of)(codes).astype(np.uint8)
            assert np.array_equal(states, step(c, tt))

    def test_identity_rule_is_all_stable(self):
        c = random_lattice(32, 0.5, np.random.default_rng(1))
        codes = m_field(c, elementary(204))
        assert set(np.unique(codes)) <= {0, 5}


class TestEvolve:
    def test_history_lengths(self):
        h = evolve(place((6, 6), BLINKER), gol_truth_table(), 5, with_mfields=True)
        assert len(h.frames) == 6
        assert len(h.mfields) == 5

    def test_negative_steps_rejected(self):
        with pytest.raises(ValueError):
            evolve(np.zeros(8, dtype=np.uint8), elementary(90), -1)

    def test_spacetime_shapes(self):
        h1 = evolve(random_lattice(20, 0.5, np.random.default_rng(0)), elementary(90), 7)
        assert spacetime(h1).shape == (8, 20)
        h2 = evolve(place((6, 7), BLINKER), gol_truth_table(), 3)
        assert averaged_spacetime(h2).shape == (4, 7)


class TestPPM:
    def test_header_and_payload_size(self):
        data = ppm_bytes(np.zeros((4, 6), dtype=np.uint8), "binary")
        assert data.startswith(b"P6\n6 4\n255\n")
        assert len(data) == len(b"P6\n6 4\n255\n") + 4 * 6 * 3

    def test_binary_palette(self):
        data = ppm_bytes(np.array([[0, 1]], dtype=np.uint8), "binary")
        pixels = data.split(b"255\n", 1)[1]
        assert pixels == bytes([255, 255, 255, 0, 0, 0])

    def test_mfield_palette(self):
        data = ppm_bytes(np.array([[3]], dtype=np.uint8), "mfield")
        assert data.endswith(bytes([255, 0, 0]))

    def test_auto_detection(self):
        gray = ppm_bytes(np.array([[0.5]]), "auto")
        assert gray.endswith(bytes([128, 128, 128]))
        m = ppm_bytes(np.array([[4]], dtype=np.uint8), "auto")
        assert m.endswith(bytes([0, 0, 255]))

    def test_render_round_trip(self, tmp_path):
        path = tmp_path / "img.ppm"
        render_ppm(np.zeros((2, 2), dtype=np.uint8), path, "binary")
        assert path.read_bytes() == ppm_bytes(np.zeros((2, 2), dtype=np.uint8), "binary")


class TestLoadPattern:
    def test_load(self, tmp_path):
        path = tmp_path / "p.txt"
        path.write_text("010\n111\n")
        assert np.array_equal(load_pattern(path), [[0, 1, 0], [1, 1, 1]])

    def test_ragged_rejected(self, tmp_path):
        path = tmp_path / "p.txt"
        path.write_text("01\n111\n")
        with pytest.raises(ValueError):
            load_pattern(path)

    def test_non_binary_rejected(self, tmp_path):
        path = tmp_path / "p.txt"
        path.write_text("012\n")
        with pytest.raises(ValueError):
            load_pattern(path)
