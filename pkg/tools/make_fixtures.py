"""Regenerate the photo fixtures under tests/data/.

Each fixture is a 256x256 crop of a bundled sample image (scikit-image,
scikit-learn, matplotlib), converted to grayscale where needed and saved
as binary PGM.  The crops were picked so that the whole set exercises a
range of textures: smooth microscopy, hard edges, sky gradients, foliage.

Run from the repository root:

    python tools/make_fixtures.py
"""

import os

import numpy as np

from dcwav import rgb_to_luma, write_pgm

SIZE = 256

# name -> (loader, (top, left))
CROPS = {
    "cell": ("skimage:cell", (256, 256)),
    "rocket": ("skimage:rocket", (85, 192)),
    "coffee": ("skimage:coffee", (72, 172)),
    "hubble": ("skimage:hubble_deep_field", (308, 372)),
    "flower": ("sklearn:flower.jpg", (0, 384)),
    "camera": ("skimage:camera", (128, 0)),
}


def _load(source):
    kind, name = source.split(":", 1)
    if kind == "skimage":
        from skimage import data

        return getattr(data, name)()
    if kind == "sklearn":
        from sklearn.datasets import load_sample_image

        return load_sample_image(name)
    raise ValueError(f"unknown source {source!r}")


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    out_dir = os.path.join(here, "..", "tests", "data")
    os.makedirs(out_dir, exist_ok=True)

    for name, (source, (top, left)) in CROPS.items():
        img = np.asarray(_load(source))
        if img.ndim == 3:
            img = rgb_to_luma(img)
        img = np.ascontiguousarray(img[top:top + SIZE, left:left + SIZE])
        assert img.shape == (SIZE, SIZE) and img.dtype == np.uint8, name
        path = os.path.join(out_dir, f"{name}.pgm")
        write_pgm(img, path)
        print(f"{path}: {img.shape[1]}x{img.shape[0]}, "
              f"range {img.min()}..{img.max()}")

    # Small RGB fixture for the tensor-export command tests.
    from skimage import data

    rgb = np.asarray(data.coffee())[100:132, 200:232]
    from PIL import Image

    png_path = os.path.join(out_dir, "patch32.png")
    Image.fromarray(rgb, "RGB").save(png_path)
    print(f"{png_path}: 32x32 RGB")


if __name__ == "__main__":
    main()
