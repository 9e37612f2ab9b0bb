import io
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import png_bytes
from lulc_miner import raster
from lulc_miner.errors import DimensionError, RasterFormatError
from lulc_miner.raster import (
    BitMask,
    ColorMap,
    IndexedImage,
    individual_colormap,
    load_image,
    logical_mask,
    memory_footprint,
    render_indexed,
)


def simple_indexed(labels, k):
    cmap = ColorMap(np.linspace(0, 1, k * 3).reshape(k, 3))
    return IndexedImage(np.asarray(labels), cmap)


class TestLoadImage:
    def test_single_red_pixel(self):
        img = load_image(png_bytes(np.array([[[255, 0, 0]]])))
        assert (img.height, img.width) == (1, 1)
        assert img.pixels[0, 0].tolist() == [1.0, 0.0, 0.0]

    def test_all_black_2x2(self):
        img = load_image(png_bytes(np.zeros((2, 2, 3))))
        assert img.pixels.shape == (2, 2, 3)
        assert not img.pixels.any()

    def test_8bit_normalization_matches_published_values(self):
        # 63/255 renders as 0.24706 at 5 decimals
        img = load_image(png_bytes(np.full((1, 1, 3), 63)))
        assert round(img.pixels[0, 0, 1], 5) == 0.24706

    def test_deterministic_for_identical_bytes(self):
        data = png_bytes(np.arange(27).reshape(3, 3, 3) * 9)
        a, b = load_image(data), load_image(data)
        assert np.array_equal(a.pixels, b.pixels)

    def test_undecodable_stream(self):
        with pytest.raises(RasterFormatError):
            load_image(b"not an image at all")

    def test_alpha_dropped(self):
        from PIL import Image

        buf = io.BytesIO()
        Image.new("RGBA", (2, 2), (10, 20, 30, 128)).save(buf, format="PNG")
        img = load_image(buf.getvalue())
        assert np.allclose(img.pixels, np.array([10, 20, 30]) / 255.0)


class TestRenderIndexed:
    def test_all_labels_zero(self):
        idx = IndexedImage(np.zeros((2, 3), dtype=int), ColorMap([[1, 0, 0], [0, 0, 1]]))
        out = render_indexed(idx, ColorMap([[1, 0, 0]]))
        assert np.array_equal(out.pixels, np.broadcast_to([1.0, 0, 0], (2, 3, 3)))

    def test_shared_map_lookup(self):
        idx = simple_indexed([[0, 1], [2, 1]], 3)
        out = render_indexed(idx, idx.colormap)
        assert np.array_equal(out.pixels, idx.colormap.entries[idx.labels])

    def test_short_colormap_rejected(self):
        idx = simple_indexed([[0, 2]], 3)
        with pytest.raises(IndexError):
            render_indexed(idx, ColorMap([[0, 0, 0], [1, 1, 1]]))

    def test_label_roundtrip_through_distinct_map(self):
        idx = simple_indexed(np.random.default_rng(1).integers(0, 4, (5, 6)), 4)
        out = render_indexed(idx, idx.colormap)
        # re-derive labels by exact color lookup
        lut = {tuple(c): i for i, c in enumerate(idx.colormap.entries.tolist())}
        recovered = np.array(
            [[lut[tuple(px)] for px in row] for row in out.pixels.tolist()]
        )
        assert np.array_equal(recovered, idx.labels)


class TestIndividualColormap:
    def test_mute_all_but_one(self):
        shared = ColorMap([[0.1, 0.1, 0.1], [0.5, 0.5, 0.5], [0.9, 0.9, 0.9]])
        out = individual_colormap(shared, 1, mute=(1, 1, 1))
        assert out.entries.tolist() == [[1, 1, 1], [0.5, 0.5, 0.5], [1, 1, 1]]

    def test_seven_entry_map_keeps_one(self):
        shared = ColorMap(np.linspace(0, 0.9, 21).reshape(7, 3))
        out = individual_colormap(shared, 0)
        assert len(out) == 7
        assert np.array_equal(out.entries[0], shared.entries[0])
        assert (out.entries[1:] == 1.0).all()

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            individual_colormap(ColorMap([[0, 0, 0], [1, 1, 1]]), 5)

    def test_idempotent(self):
        shared = ColorMap(np.linspace(0, 0.9, 12).reshape(4, 3))
        once = individual_colormap(shared, 2)
        twice = individual_colormap(once, 2)
        assert np.array_equal(once.entries, twice.entries)

    def test_non_muted_renderings_partition_image(self):
        # on a 4x4 synthetic labeled image, the pixels showing their own
        # cluster color under each individual map partition the raster
        labels = np.array([[0, 1, 2, 3]] * 4)
        idx = simple_indexed(labels, 4)
        mute = (1.0, 1.0, 1.0)
        covered = np.zeros((4, 4), dtype=int)
        for k in range(4):
            out = render_indexed(idx, individual_colormap(idx.colormap, k, mute))
            own = np.all(out.pixels == idx.colormap.entries[k], axis=-1)
            covered += own.astype(int)
        assert (covered == 1).all()


class TestLogicalMask:
    def test_simple(self):
        idx = simple_indexed([[0, 1], [1, 0]], 2)
        assert logical_mask(idx, 1).bits.tolist() == [[False, True], [True, False]]

    def test_popcount_equals_cluster_area(self):
        labels = np.random.default_rng(2).integers(0, 3, (8, 9))
        idx = simple_indexed(labels, 3)
        for k in range(3):
            assert logical_mask(idx, k).popcount() == int((labels == k).sum())

    def test_partition_property(self):
        labels = np.random.default_rng(3).integers(0, 4, (7, 5))
        idx = simple_indexed(labels, 4)
        masks = [logical_mask(idx, k).bits for k in range(4)]
        assert np.logical_or.reduce(masks).all()
        for a in range(4):
            for b in range(a + 1, 4):
                assert not np.logical_and(masks[a], masks[b]).any()

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            logical_mask(simple_indexed([[0, 1]], 2), 2)


class TestMemoryFootprint:
    def test_method1_published_total(self):
        out = memory_footprint(563, 613, 7, method=1)
        assert out["index_elements"] == 563 * 613 * 7 == 2_415_833
        assert out["colormap_elements"] == 21
        assert out["total"] == 2_415_854

    def test_method2_published_total(self):
        out = memory_footprint(563, 613, 7, method=2)
        assert out == {"index_elements": 345_119, "colormap_elements": 147, "total": 345_266}

    def test_degenerate_1x1(self):
        for method in (1, 2):
            assert memory_footprint(1, 1, 1, method)["total"] == 4

    def test_published_memory_ratio(self):
        r = memory_footprint(563, 613, 7, 1)["total"] / memory_footprint(563, 613, 7, 2)["total"]
        assert round(r, 2) == 7.0  # 6.9971, "6.99 times" at 2 d.p. of the ratio
        assert abs(r - 6.9971) < 5e-4

    @given(
        w=st.integers(1, 5000), h=st.integers(1, 5000), k=st.integers(1, 64)
    )
    @settings(max_examples=50)
    def test_ratio_formula(self, w, h, k):
        r1 = memory_footprint(w, h, k, 1)["total"]
        r2 = memory_footprint(w, h, k, 2)["total"]
        assert r1 == w * h * k + 3 * k
        assert r2 == w * h + 3 * k * k

    def test_invalid_args(self):
        with pytest.raises(ValueError):
            memory_footprint(0, 1, 1, 1)
        with pytest.raises(ValueError):
            memory_footprint(1, 1, 1, 3)


class TestPersistence:
    def test_indexed_sidecar_roundtrip(self, tmp_path):
        idx = simple_indexed(np.random.default_rng(4).integers(0, 5, (6, 7)), 5)
        raster.save_indexed(idx, tmp_path / "c.png", tmp_path / "c.json")
        back = raster.load_indexed(tmp_path / "c.png", tmp_path / "c.json")
        assert np.array_equal(back.labels, idx.labels)
        assert np.allclose(back.colormap.entries, idx.colormap.entries)
        assert isinstance(json.loads((tmp_path / "c.json").read_text()), list)

    def test_mask_roundtrip(self, tmp_path):
        mask = BitMask(np.random.default_rng(5).random((4, 4)) > 0.5)
        raster.save_mask(mask, tmp_path / "m.png")
        assert np.array_equal(raster.load_mask(tmp_path / "m.png").bits, mask.bits)

    def test_zero_dim_rejected(self):
        with pytest.raises(DimensionError):
            raster.RgbImage(np.zeros((0, 4, 3)))
