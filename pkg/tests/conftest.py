import io
import sys
from pathlib import Path

import numpy as np
import pytest
from PIL import Image

sys.path.insert(0, str(Path(__file__).parent))

from lulc_miner.classify import SeedPalette

# well-separated 7-color palette: background + 6 thematic classes
PALETTE_7 = [
    ("null data", (0.0, 0.0, 0.0)),
    ("constructed", (1.0, 0.0, 0.0)),
    ("vegetation", (0.0, 0.8, 0.0)),
    ("water", (0.0, 0.2, 1.0)),
    ("agriculture", (1.0, 1.0, 0.0)),
    ("rocky/barren", (0.6, 0.6, 0.6)),
    ("scrub", (0.6, 0.4, 0.1)),
]


@pytest.fixture
def palette7() -> SeedPalette:
    return SeedPalette.from_pairs(PALETTE_7)


def png_bytes(arr: np.ndarray) -> bytes:
    """Encode a (h, w, 3) uint8 array as PNG bytes."""
    buf = io.BytesIO()
    Image.fromarray(arr.astype(np.uint8), mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def painted_image(palette: SeedPalette, labels: np.ndarray, noise_scale: float = 0.0, seed: int = 0):
    """Float image painted with palette colors at the given labels, plus
    optional uniform noise of L2 norm strictly below noise_scale."""
    from lulc_miner.raster import RgbImage

    rng = np.random.default_rng(seed)
    pixels = palette.colors[labels]
    if noise_scale > 0:
        noise = rng.uniform(-1.0, 1.0, pixels.shape)
        norms = np.linalg.norm(noise, axis=-1, keepdims=True)
        noise = noise / np.maximum(norms, 1e-12) * rng.uniform(0, noise_scale, norms.shape)
        pixels = np.clip(pixels + noise, 0.0, 1.0)
    return RgbImage(pixels)


def block_labels(height: int, width: int, k: int) -> np.ndarray:
    """Deterministic label painting in k vertical bands."""
    cols = np.minimum((np.arange(width) * k) // width, k - 1)
    return np.tile(cols, (height, 1)).astype(np.int32)
