"""Print measured error against the predicted bound for the Gabor prop8 run.

    python scripts/show_convergence.py --L 256 --a 64 --M 128
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from a_framemult import bench_convergence
from frames import uniform_symbol
from gabor import GaborLattice, gauss_window, hann_window


def main() -> None:
    parser = argparse.ArgumentParser(description="Convergence of the Gabor prop8 inversion")
    parser.add_argument("--L", type=int, default=256)
    parser.add_argument("--a", type=int, default=64)
    parser.add_argument("--M", type=int, default=128)
    parser.add_argument("--e", type=float, default=1e-8)
    parser.add_argument("--ratio", type=float, default=0.1)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    lattice = GaborLattice(args.L, args.a, args.M)
    report = bench_convergence(
        lattice,
        hann_window(lattice.L, lattice.M),
        gauss_window(lattice.L, lattice),
        uniform_symbol(lattice.count, 0.5, 1.0, args.seed),
        args.e,
        args.ratio,
    )
    print(report.header())
    print(f"{'k':>3}  {'measured':>12}  {'bound':>12}")
    for k, (measured, bound) in enumerate(zip(report.residuals, report.bounds)):
        print(f"{k:>3}  {measured:12.4e}  {bound:12.4e}")


if __name__ == "__main__":
    main()
