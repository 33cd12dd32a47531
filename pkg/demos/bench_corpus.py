"""Benchmark drop/recover over a directory of images.

Thin wrapper over the bench subcommand: runs it on the committed test
photos by default and echoes the CSV it produces.

    python demos/bench_corpus.py [image_dir] [report.csv]
"""

import sys

from dcwav.cli import main as dcwav


def main(argv):
    image_dir = argv[1] if len(argv) > 1 else "tests/data"
    report = argv[2] if len(argv) > 2 else "demo_report.csv"

    code = dcwav(["bench", image_dir, report, "--jobs", "2"])
    if code:
        return code

    print()
    with open(report) as fh:
        for line in fh:
            print(f"  {line.rstrip()}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
