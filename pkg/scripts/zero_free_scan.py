"""Scan |Z| over the vertex-weight stadium for a batch of random instances.

Writes one CSV row per (instance, grid point) with the ratio of |Z| to the
sum of term moduli, which stays bounded away from zero inside the region.
"""

import argparse
import csv
import sys

import numpy as np

from hyperzeros import region
from hyperzeros.exact import size_coefficients
from hyperzeros.hypergraph import random_instance


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=14)
    ap.add_argument("--grid", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    spec = region.RegionSpec(args.k, 3, 0.9 * region.eps_max_ly(args.k, 3))
    out = csv.writer(sys.stdout)
    out.writerow(["instance", "n", "m", "re", "im", "certified", "abs_Z", "ratio"])
    for idx in range(args.count):
        n = int(rng.integers(args.k + 1, args.n_max + 1))
        H = random_instance(n, int(rng.integers(1, n * 3 // args.k)), args.k, 3, int(rng.integers(2**31)))
        a = size_coefficients(H).astype(float)
        t = np.arange(len(a))
        for z in region.region_grid(spec, args.grid):
            val = abs(np.sum(a * z**t))
            mag = np.sum(a * abs(z) ** t)
            ok = region.certify(H, z, spec.eps).passed
            out.writerow([idx, n, H.m, f"{z.real:.6g}", f"{z.imag:.6g}", int(ok), f"{val:.12g}", f"{val / mag:.6g}"])


if __name__ == "__main__":
    main()
