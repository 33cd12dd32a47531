"""Command-line front end.

    dcwav encode  IN OUT [--drop-dc]        image -> baseline JPEG
    dcwav recover IN OUT [...]              dropped JPEG -> image
    dcwav bench   IMG... CSV [...]          drop/recover over a corpus
    dcwav wavext  IN OUT.npy [--mode ...]   6-channel tensor export
    dcwav denoise IN OUT [--levels N]       wavelet denoising

Exit codes: 0 success, 1 unreadable/unparseable input, 2 internal error,
3 dimension error.
"""

import argparse
import csv
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .blockdct import coeff_grid_to_image, image_to_coeff_grid
from .dcrecover import RecoveryConfig, recover_image
from .errors import DimensionError, FormatError, ParseError
from .imagecore import load_gray, load_rgb, pad_replicate, save_gray
from .jpegstream import compression_ratio, decode_baseline, drop_dc, encode_baseline
from .metrics import psnr, quality_report, ssim
from .wavelet import wd_denoise
from .wavext import build_inference_tensor, build_training_tensor, export_tensor

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2
EXIT_DIMENSION = 3

BENCH_COLUMNS = ("id", "orig_bytes", "drop_bytes", "ratio",
                 "psnr_zero", "psnr_rec", "ssim_rec", "ms")


def _encode_file(path):
    img = load_gray(path)
    padded, size = pad_replicate(img)
    grid = image_to_coeff_grid(padded, size=size)
    return img, grid


def _recovery_config(args):
    return RecoveryConfig(loss=args.loss, scan=args.mode)


def _add_recovery_flags(p):
    p.add_argument("--mode", choices=("single", "avg4"), default="avg4",
                   help="one raster scan or four averaged ones (default avg4)")
    p.add_argument("--loss", choices=("mse", "trend", "both"), default="mse",
                   help="seam loss driving the DC search (default mse)")


def cmd_encode(args):
    _, grid = _encode_file(args.input)
    original = encode_baseline(grid)
    if args.drop_dc:
        dropped = encode_baseline(drop_dc(grid))
        with open(args.output, "wb") as fh:
            fh.write(dropped.data)
        ref_path = os.path.splitext(args.output)[0] + ".orig.jpg"
        with open(ref_path, "wb") as fh:
            fh.write(original.data)
        r = compression_ratio(original, dropped)
        print(f"original: {original.total_len} bytes ({ref_path})")
        print(f"dropped:  {dropped.total_len} bytes ({args.output})")
        print(f"ratio:    {r.total:.4f} total, {r.scan:.4f} scan-only")
    else:
        with open(args.output, "wb") as fh:
            fh.write(original.data)
        print(f"encoded:  {original.total_len} bytes ({args.output})")
    return EXIT_OK


def cmd_recover(args):
    with open(args.input, "rb") as fh:
        data = fh.read()
    img = recover_image(data, _recovery_config(args))
    save_gray(img, args.output)
    print(f"recovered {img.shape[1]}x{img.shape[0]} image -> {args.output}")
    if args.reference:
        rep = quality_report(load_gray(args.reference), img)
        print(f"psnr: {rep.psnr:.2f} dB")
        print(f"ssim: {rep.ssim:.4f}")
    return EXIT_OK


def _bench_one(path, cfg):
    start = time.perf_counter()
    _, grid = _encode_file(path)
    original = encode_baseline(grid)
    dropped = encode_baseline(drop_dc(grid))

    # Quality is judged against the plain Q50 decode: the drop/recover
    # path can at best reproduce what an untouched JPEG would show.
    ref_img = coeff_grid_to_image(grid)
    zero_img = coeff_grid_to_image(decode_baseline(dropped.data))
    rec_img = recover_image(dropped.data, cfg)
    ms = (time.perf_counter() - start) * 1000.0

    name = os.path.splitext(os.path.basename(path))[0]
    return {
        "id": name,
        "orig_bytes": original.total_len,
        "drop_bytes": dropped.total_len,
        "ratio": compression_ratio(original, dropped).total,
        "psnr_zero": psnr(ref_img, zero_img),
        "psnr_rec": psnr(ref_img, rec_img),
        "ssim_rec": ssim(ref_img, rec_img),
        "ms": ms,
    }


_IMAGE_EXTS = (".pgm", ".png", ".jpg", ".jpeg", ".bmp")


def _expand_images(paths):
    """Files stay files; directories contribute their image files, sorted."""
    out = []
    for p in paths:
        if os.path.isdir(p):
            names = sorted(os.listdir(p))
            out.extend(os.path.join(p, n) for n in names
                       if n.lower().endswith(_IMAGE_EXTS))
        else:
            out.append(p)
    return out


_BENCH_FORMATS = {
    "orig_bytes": lambda v: f"{v:.0f}",
    "drop_bytes": lambda v: f"{v:.0f}",
    "ratio": lambda v: f"{v:.4f}",
    "psnr_zero": lambda v: f"{v:.2f}",
    "psnr_rec": lambda v: f"{v:.2f}",
    "ssim_rec": lambda v: f"{v:.4f}",
    "ms": lambda v: f"{v:.1f}",
}


def _format_row(row):
    return [row["id"]] + [_BENCH_FORMATS[c](row[c]) for c in BENCH_COLUMNS[1:]]


def cmd_bench(args):
    cfg = _recovery_config(args)
    images = _expand_images(args.images)
    if not images:
        print("dcwav: no images to bench", file=sys.stderr)
        return EXIT_INPUT
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(lambda p: _bench_one(p, cfg), images))
    else:
        rows = [_bench_one(p, cfg) for p in images]

    summary = []
    for label, fn in (("min", min), ("max", max), ("ave", lambda v: sum(v) / len(v))):
        agg = {"id": label}
        for col in BENCH_COLUMNS[1:]:
            agg[col] = fn([r[col] for r in rows])
        summary.append(agg)

    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(BENCH_COLUMNS)
        for row in rows + summary:
            writer.writerow(_format_row(row))

    ave = summary[2]
    print(f"{len(rows)} images -> {args.out}")
    print(f"ratio ave {ave['ratio']:.4f}, psnr_rec ave {ave['psnr_rec']:.2f} dB, "
          f"ssim_rec ave {ave['ssim_rec']:.4f}")
    return EXIT_OK


def cmd_wavext(args):
    img = load_rgb(args.input)
    if args.mode == "train":
        tensor = build_training_tensor(img)
    else:
        tensor = build_inference_tensor(img)
    export_tensor(tensor, args.output)
    n = tensor.data.shape[0]
    print(f"{args.mode} tensor {n}x{n}x6 -> {args.output}")
    return EXIT_OK


def cmd_denoise(args):
    img = load_gray(args.input)
    out = wd_denoise(img, levels=args.levels)
    save_gray(out, args.output)
    print(f"denoised {img.shape[1]}x{img.shape[0]} image -> {args.output}")
    return EXIT_OK


def _build_parser():
    p = argparse.ArgumentParser(
        prog="dcwav",
        description="DC-dropping JPEG pipeline and db4 wavelet tools.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("encode", help="encode a grayscale image as baseline JPEG")
    pe.add_argument("input")
    pe.add_argument("output")
    pe.add_argument("--drop-dc", action="store_true",
                    help="zero all DC coefficients except the four corner blocks "
                         "(a .orig.jpg reference is written next to the output)")
    pe.set_defaults(func=cmd_encode)

    pr = sub.add_parser("recover", help="decode a dropped JPEG, searching the DCs")
    pr.add_argument("input")
    pr.add_argument("output")
    pr.add_argument("--reference", help="clean image to report PSNR/SSIM against")
    _add_recovery_flags(pr)
    pr.set_defaults(func=cmd_recover)

    pb = sub.add_parser("bench", help="run drop/recover over images, write a CSV")
    pb.add_argument("images", nargs="+",
                    help="image files and/or directories of images")
    pb.add_argument("out", help="CSV report path")
    pb.add_argument("--jobs", type=int, default=1, help="worker threads (default 1)")
    _add_recovery_flags(pb)
    pb.set_defaults(func=cmd_bench)

    pw = sub.add_parser("wavext", help="export a 6-channel wavelet-extension tensor")
    pw.add_argument("input")
    pw.add_argument("output")
    pw.add_argument("--mode", choices=("train", "inference"), default="train")
    pw.set_defaults(func=cmd_wavext)

    pd = sub.add_parser("denoise", help="BayesShrink wavelet denoising")
    pd.add_argument("input")
    pd.add_argument("output")
    pd.add_argument("--levels", type=int, default=1)
    pd.set_defaults(func=cmd_denoise)
    return p


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, ParseError) as exc:
        print(f"dcwav: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"dcwav: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DimensionError as exc:
        print(f"dcwav: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports and exits
        print(f"dcwav: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
