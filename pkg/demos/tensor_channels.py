"""Build the 6-channel wavelet-extension tensor and look inside it.

Each RGB channel gets a companion plane derived from its wavelet
approximation.  Training mode keeps the raw channels; inference mode
denoises them first but computes the extensions from the untouched input,
so the two layouts share their back three channels exactly.

    python demos/tensor_channels.py [image.png] [out.npy]
"""

import sys

import numpy as np

from dcwav import (
    build_inference_tensor,
    build_training_tensor,
    export_tensor,
    load_rgb,
)

NAMES = ("red", "green", "blue", "ext red", "ext green", "ext blue")


def describe(tensor):
    print(f"  mode {tensor.mode}, shape {tensor.data.shape}, "
          f"dtype {tensor.data.dtype}")
    for c, name in enumerate(NAMES):
        plane = tensor.data[:, :, c]
        print(f"  {name:<10} min {plane.min():.4f}  max {plane.max():.4f}  "
              f"mean {plane.mean():.4f}")


def main(argv):
    image = argv[1] if len(argv) > 1 else "tests/data/patch32.png"
    out = argv[2] if len(argv) > 2 else "demo_tensor.npy"

    img = load_rgb(image)
    train = build_training_tensor(img)
    infer = build_inference_tensor(img)

    print(f"{image}: {img.shape[1]}x{img.shape[0]}")
    describe(train)
    describe(infer)

    shared = all(
        np.array_equal(train.data[:, :, c], infer.data[:, :, c])
        for c in (3, 4, 5))
    print(f"extension channels identical across modes: {shared}")

    export_tensor(train, out)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
