"""Write the CSV data behind all six figures, each with a replayable manifest.

    python3 scripts/reproduce_figures.py --outdir figures --workers 4

Grid and line resolutions can be lowered for a quick look with
``--n-grid`` and ``--points``.
"""
import argparse
import sys
import time

from qergo.cli import main


def parse():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--outdir", default="figures")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--n-grid", type=int, default=50)
    p.add_argument("--points", type=int, default=101)
    return p.parse_args()


if __name__ == "__main__":
    args = parse()
    start = time.perf_counter()
    code = main(["figures", "--outdir", args.outdir, "--workers", str(args.workers),
                 "--n-grid", str(args.n_grid), "--points", str(args.points)])
    print(f"finished in {time.perf_counter() - start:.1f} s with exit code {code}", file=sys.stderr)
    sys.exit(code)
