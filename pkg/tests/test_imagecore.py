import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp
from PIL import Image

import oracles
from dcwav import (
    DimensionError,
    FormatError,
    bicubic_resize,
    load_gray,
    load_rgb,
    pad_replicate,
    quantize_pixels,
    read_pgm,
    rgb_to_luma,
    round_half_away,
    save_gray,
    write_pgm,
)

u8_images = hnp.arrays(
    dtype=np.uint8,
    shape=hnp.array_shapes(min_dims=2, max_dims=2, min_side=1, max_side=40),
)


class TestPgm:
    def test_reads_2x2_payload_verbatim(self, tmp_path):
        p = tmp_path / "t.pgm"
        p.write_bytes(b"P5\n2 2\n255\n" + bytes([0, 128, 255, 7]))
        img = read_pgm(p)
        assert img.shape == (2, 2)
        assert img.tolist() == [[0, 128], [255, 7]]

    def test_header_bytes_are_exactly_the_documented_layout(self, tmp_path):
        img = np.arange(15, dtype=np.uint8).reshape(5, 3)
        p = tmp_path / "t.pgm"
        write_pgm(img, p)
        assert p.read_bytes() == b"P5\n3 5\n255\n" + img.tobytes()

    def test_single_pixel(self, tmp_path):
        p = tmp_path / "one.pgm"
        write_pgm(np.array([[42]], dtype=np.uint8), p)
        data = p.read_bytes()
        assert data.endswith(b"\n255\n" + bytes([42]))
        assert read_pgm(p).tolist() == [[42]]

    def test_comments_in_header_are_skipped(self, tmp_path):
        p = tmp_path / "c.pgm"
        p.write_bytes(b"P5\n# made by hand\n2 1\n# again\n255\n" + bytes([9, 10]))
        assert read_pgm(p).tolist() == [[9, 10]]

    def test_wrong_magic_rejected(self, tmp_path):
        p = tmp_path / "bad.pgm"
        p.write_bytes(b"P2\n2 2\n255\n0 0 0 0")
        with pytest.raises(FormatError):
            read_pgm(p)

    def test_wrong_maxval_rejected(self, tmp_path):
        p = tmp_path / "m.pgm"
        p.write_bytes(b"P5\n2 2\n65535\n" + bytes(8))
        with pytest.raises(FormatError):
            read_pgm(p)

    def test_truncated_raster_rejected(self, tmp_path):
        p = tmp_path / "short.pgm"
        p.write_bytes(b"P5\n4 4\n255\n" + bytes(15))
        with pytest.raises(FormatError):
            read_pgm(p)

    def test_non_uint8_array_rejected_on_write(self, tmp_path):
        with pytest.raises(FormatError):
            write_pgm(np.zeros((2, 2), dtype=np.uint16), tmp_path / "x.pgm")

    @settings(max_examples=40, deadline=None)
    @given(img=u8_images)
    def test_round_trip_is_identity(self, img, tmp_path_factory):
        p = tmp_path_factory.mktemp("pgm") / "rt.pgm"
        write_pgm(img, p)
        assert np.array_equal(read_pgm(p), img)


class TestLoadSave:
    def test_load_gray_uses_pgm_parser(self, tmp_path, camera):
        p = tmp_path / "c.pgm"
        save_gray(camera, p)
        assert np.array_equal(load_gray(p), camera)

    def test_png_round_trip(self, tmp_path, camera):
        p = tmp_path / "c.png"
        save_gray(camera, p)
        assert np.array_equal(load_gray(p), camera)

    def test_color_png_goes_through_luma(self, tmp_path):
        rgb = np.zeros((2, 2, 3), dtype=np.uint8)
        rgb[0, 0] = (255, 0, 0)
        rgb[0, 1] = (255, 255, 255)
        p = tmp_path / "rgb.png"
        Image.fromarray(rgb, "RGB").save(p)
        img = load_gray(p)
        assert img[0, 0] == 76  # round(0.299 * 255)
        assert img[0, 1] == 255

    def test_sixteen_bit_png_rejected(self, tmp_path):
        p = tmp_path / "deep.png"
        Image.fromarray(np.zeros((4, 4), dtype=np.uint16)).save(p)
        with pytest.raises(FormatError):
            load_gray(p)
        with pytest.raises(FormatError):
            load_rgb(p)

    def test_missing_file_is_an_oserror(self, tmp_path):
        with pytest.raises(OSError):
            load_gray(tmp_path / "nope.pgm")

    def test_load_rgb_shape(self, tmp_path):
        rgb = np.arange(27, dtype=np.uint8).reshape(3, 3, 3)
        p = tmp_path / "t.png"
        Image.fromarray(rgb, "RGB").save(p)
        assert np.array_equal(load_rgb(p), rgb)


class TestLuma:
    def test_white_stays_white(self):
        assert rgb_to_luma(np.full((1, 1, 3), 255, np.uint8))[0, 0] == 255

    def test_pure_red(self):
        rgb = np.zeros((1, 1, 3), dtype=np.uint8)
        rgb[0, 0, 0] = 255
        assert rgb_to_luma(rgb)[0, 0] == 76

    @settings(max_examples=30, deadline=None)
    @given(v=st.integers(0, 255))
    def test_gray_triples_are_fixed_points(self, v):
        rgb = np.full((2, 2, 3), v, dtype=np.uint8)
        assert np.array_equal(rgb_to_luma(rgb), np.full((2, 2), v, np.uint8))

    def test_rejects_non_rgb(self):
        with pytest.raises(DimensionError):
            rgb_to_luma(np.zeros((4, 4), dtype=np.uint8))


class TestRounding:
    @pytest.mark.parametrize(
        "x,expected",
        [(0.5, 1.0), (-0.5, -1.0), (1.5, 2.0), (-1.5, -2.0), (2.5, 3.0),
         (0.49, 0.0), (-0.49, 0.0), (63.5, 64.0), (-63.5, -64.0), (0.0, 0.0)],
    )
    def test_half_away_from_zero(self, x, expected):
        assert round_half_away(x) == expected

    def test_quantize_pixels_clamps(self):
        out = quantize_pixels(np.array([-3.2, 0.4, 254.5, 300.0]))
        assert out.dtype == np.uint8
        assert out.tolist() == [0, 0, 255, 255]


class TestPad:
    def test_aligned_input_unchanged(self):
        img = np.zeros((32, 32), dtype=np.uint8)
        padded, size = pad_replicate(img)
        assert padded is img
        assert size == (32, 32)

    def test_33x32_pads_rows_by_replication(self):
        img = np.arange(33 * 32, dtype=np.uint8).reshape(33, 32) % 251
        padded, size = pad_replicate(img)
        assert padded.shape == (40, 32)
        assert size == (33, 32)
        for r in range(33, 40):
            assert np.array_equal(padded[r], img[32])

    def test_1x1_becomes_constant_8x8(self):
        padded, size = pad_replicate(np.array([[17]], dtype=np.uint8))
        assert padded.shape == (8, 8)
        assert size == (1, 1)
        assert np.all(padded == 17)

    @settings(max_examples=30, deadline=None)
    @given(img=u8_images)
    def test_padding_preserves_the_original_corner(self, img):
        padded, (h, w) = pad_replicate(img)
        assert padded.shape[0] % 8 == 0 and padded.shape[1] % 8 == 0
        assert padded.shape[0] - h < 8 and padded.shape[1] - w < 8
        assert np.array_equal(padded[:h, :w], img)


class TestBicubic:
    def test_identity_when_shape_unchanged(self, rng):
        plane = rng.normal(size=(12, 9))
        out = bicubic_resize(plane, (12, 9))
        assert np.allclose(out, plane, atol=1e-12)

    def test_constant_plane_stays_constant(self):
        out = bicubic_resize(np.full((6, 6), 3.25), (13, 7))
        assert np.allclose(out, 3.25, atol=1e-12)

    def test_matches_pointwise_kernel_evaluation(self, rng):
        plane = rng.uniform(0, 255, size=(16, 16))
        ours = bicubic_resize(plane, (32, 32))
        ref = oracles.bicubic_grid(plane, 32, 32)
        assert np.allclose(ours, ref, atol=1e-9)

    def test_downscale_matches_oracle_too(self, rng):
        plane = rng.uniform(-5, 5, size=(20, 14))
        ours = bicubic_resize(plane, (9, 11))
        ref = oracles.bicubic_grid(plane, 9, 11)
        assert np.allclose(ours, ref, atol=1e-9)

    def test_linear_ramp_is_reproduced_exactly_inside(self):
        # Catmull-Rom interpolates degree-1 polynomials exactly; away from
        # the clamped border the upsampled ramp must stay a perfect ramp.
        plane = np.outer(np.ones(8), np.arange(8, dtype=np.float64))
        out = bicubic_resize(plane, (16, 16))
        inner = out[4:12, 4:12]
        dx = np.diff(inner, axis=1)
        assert np.allclose(dx, 0.5, atol=1e-12)

    def test_rejects_bad_shapes(self):
        with pytest.raises(DimensionError):
            bicubic_resize(np.zeros((4, 4, 3)), (8, 8))
        with pytest.raises(DimensionError):
            bicubic_resize(np.zeros((4, 4)), (0, 8))
