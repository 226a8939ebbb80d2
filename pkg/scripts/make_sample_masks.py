"""Write the sample masks for one lattice.

    python scripts/make_sample_masks.py --L 64 --a 8 --M 16 --out masks

Produces an all-ones mask, a mask attenuating a frequency band (and its
mirror channels) by 0.01, and a random mask with values in [1/2, 1].
"""

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from gabor import GaborLattice
from matrix_io_helpers import write_mask

ATTENUATION = 0.01


def band_mask(lattice: GaborLattice, low: int, high: int) -> np.ndarray:
    grid = np.ones((lattice.M, lattice.n_time))
    rows = np.arange(low, high + 1)
    grid[rows] = ATTENUATION
    grid[(lattice.M - rows) % lattice.M] = ATTENUATION
    return grid


def main() -> None:
    parser = argparse.ArgumentParser(description="Write sample Gabor masks")
    parser.add_argument("--L", type=int, default=64)
    parser.add_argument("--a", type=int, default=8)
    parser.add_argument("--M", type=int, default=16)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="masks")
    args = parser.parse_args()

    lattice = GaborLattice(args.L, args.a, args.M)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    tag = f"L{lattice.L}_a{lattice.a}_M{lattice.M}"
    rng = np.random.default_rng(args.seed)

    masks = {
        f"ones_{tag}.txt": np.ones((lattice.M, lattice.n_time)),
        f"attenuate_band_{tag}.txt": band_mask(lattice, lattice.M // 4, lattice.M // 2 - 1),
        f"uniform_half_one_{tag}.txt": rng.uniform(0.5, 1.0, size=(lattice.M, lattice.n_time)),
    }
    for name, grid in masks.items():
        print(write_mask(out / name, grid))


if __name__ == "__main__":
    main()
