import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

import oracles
from dcwav import (
    QUANT_Q50,
    DimensionError,
    coeff_grid_to_image,
    dequantize,
    forward_dct,
    image_to_coeff_grid,
    inverse_dct,
    psnr,
    quantize,
)
from dcwav.blockdct import from_blocks, to_blocks

u8_blocks = hnp.arrays(dtype=np.uint8, shape=(8, 8))


class TestForwardDct:
    def test_all_128_block_is_all_zero(self):
        c = forward_dct(np.full((8, 8), 128, np.uint8))
        assert np.allclose(c, 0.0, atol=1e-12)

    def test_all_255_block(self):
        c = forward_dct(np.full((8, 8), 255, np.uint8))
        assert c[0, 0] == pytest.approx(1016.0, abs=1e-9)
        c[0, 0] = 0.0
        assert np.allclose(c, 0.0, atol=1e-9)

    def test_dc_is_eight_times_the_shifted_mean(self, rng):
        block = rng.integers(0, 256, (8, 8)).astype(np.uint8)
        c = forward_dct(block)
        assert c[0, 0] == pytest.approx(8.0 * (block.mean() - 128.0), abs=1e-9)

    @settings(max_examples=25, deadline=None)
    @given(block=u8_blocks)
    def test_parseval(self, block):
        shifted = block.astype(np.float64) - 128.0
        c = forward_dct(block)
        assert abs((shifted**2).sum() - (c**2).sum()) < 1e-9

    def test_matches_direct_cosine_sums(self, rng):
        block = rng.integers(0, 256, (8, 8)).astype(np.uint8)
        assert np.allclose(forward_dct(block), oracles.naive_forward_dct(block),
                           atol=1e-9)


class TestInverseDct:
    def test_zero_coeffs_give_flat_128(self):
        assert np.all(inverse_dct(np.zeros((8, 8))) == 128)

    def test_dc_1016_gives_white(self):
        c = np.zeros((8, 8))
        c[0, 0] = 1016.0
        assert np.all(inverse_dct(c) == 255)

    def test_output_dtype_and_range(self, rng):
        c = rng.normal(0, 500, (8, 8))
        out = inverse_dct(c)
        assert out.dtype == np.uint8

    @settings(max_examples=50, deadline=None)
    @given(block=u8_blocks)
    def test_round_trip_identity_on_8bit_blocks(self, block):
        assert np.array_equal(inverse_dct(forward_dct(block)), block)

    def test_matches_direct_cosine_sums(self, rng):
        c = np.round(rng.normal(0, 60, (8, 8)))
        assert np.array_equal(inverse_dct(c),
                              oracles.naive_inverse_dct(c).astype(np.uint8))


class TestQuantize:
    def test_dc_1016_over_16_rounds_away_to_64(self):
        c = np.zeros((8, 8))
        c[0, 0] = 1016.0
        assert quantize(c)[0, 0] == 64

    def test_negative_half_rounds_away(self):
        c = np.zeros((8, 8))
        c[0, 0] = -24.0
        assert quantize(c)[0, 0] == -2

    def test_zero_maps_to_zero(self):
        assert np.all(quantize(np.zeros((8, 8))) == 0)

    def test_dequantize_is_exact_multiplication(self):
        levels = np.zeros((8, 8), dtype=np.int32)
        levels[0, 0] = 64
        levels[1, 2] = -2
        d = dequantize(levels)
        assert d[0, 0] == 1024.0
        assert d[1, 2] == -2.0 * QUANT_Q50[1, 2]
        assert d[5, 5] == 0.0

    @settings(max_examples=50, deadline=None)
    @given(block=u8_blocks)
    def test_quantized_dc_magnitude_never_exceeds_64(self, block):
        levels = quantize(forward_dct(block))
        assert abs(int(levels[0, 0])) <= 64

    def test_q50_table_shape_and_dc_entry(self):
        assert QUANT_Q50.shape == (8, 8)
        assert QUANT_Q50[0, 0] == 16
        assert QUANT_Q50.min() >= 1


class TestGridConversion:
    def test_flat_200_grid_closed_form(self):
        img = np.full((16, 16), 200, np.uint8)
        grid = image_to_coeff_grid(img)
        assert grid.blocks.shape == (2, 2, 8, 8)
        assert np.all(grid.dc() == 36)
        ac = grid.blocks.copy()
        ac[:, :, 0, 0] = 0
        assert np.all(ac == 0)

    def test_8x8_image_is_one_block(self):
        grid = image_to_coeff_grid(np.zeros((8, 8), np.uint8))
        assert (grid.v_n, grid.h_n) == (1, 1)

    def test_rejects_unaligned_dims(self):
        with pytest.raises(DimensionError):
            image_to_coeff_grid(np.zeros((12, 16), np.uint8))

    def test_round_trip_matches_per_block_pipeline(self, rng):
        img = rng.integers(0, 256, (24, 16)).astype(np.uint8)
        grid = image_to_coeff_grid(img)
        by_hand = np.zeros_like(img)
        for i in range(3):
            for j in range(2):
                block = img[8 * i:8 * i + 8, 8 * j:8 * j + 8]
                levels = quantize(forward_dct(block))
                assert np.array_equal(levels, grid.blocks[i, j])
                by_hand[8 * i:8 * i + 8, 8 * j:8 * j + 8] = inverse_dct(
                    dequantize(levels))
        assert np.array_equal(coeff_grid_to_image(grid), by_hand)

    def test_size_crops_back_to_prepad_dims(self, rng):
        img = rng.integers(0, 256, (16, 16)).astype(np.uint8)
        grid = image_to_coeff_grid(img, size=(13, 11))
        out = coeff_grid_to_image(grid)
        assert out.shape == (13, 11)
        assert np.array_equal(out, coeff_grid_to_image(grid, crop=False)[:13, :11])

    def test_natural_reconstruction_psnr(self, camera):
        grid = image_to_coeff_grid(camera)
        assert psnr(camera, coeff_grid_to_image(grid)) >= 30.0

    def test_to_blocks_from_blocks_inverse(self, rng):
        img = rng.integers(0, 256, (32, 40)).astype(np.uint8)
        assert np.array_equal(from_blocks(to_blocks(img)), img)
