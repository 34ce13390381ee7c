#!/usr/bin/env python3
"""Scan elliptic fibrations for anomaly-effective rank-2 certificates.

Sweeps a grid of polarizations H = sigma + pi*(c1 + ample) on the chosen
base surface, runs the certificate search for each, and collects the
candidates whose anomaly class is effective.  Duplicate divisor classes
found under different polarizations are reported once with a count.
"""

import argparse

import cy3
from cy3.catalog import base_surface_for


def polarization_grid(g, base, steps):
    """Polarizations sigma + pi*(c1 + rho0) over a small grid of ample rho0."""
    if base.kind.startswith("F"):
        n = int(base.kind[1:])
        for a in range(1, steps + 1):
            for b in range(n * a + 1, n * a + steps + 1):
                rho0 = (a, b)
                yield g.divisor((1,) + tuple(c + r for c, r in zip(base.c1, rho0)))
    else:
        for m in range(1, steps + 1):
            for j in range(0, steps):
                rho0 = (m * base.c1[0] + j,) + tuple(m * c for c in base.c1[1:])
                yield g.divisor((1,) + tuple(c + r for c, r in zip(base.c1, rho0)))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--base", default="f0",
                        help="base surface: f0, f1, f2, dp1 .. dp8")
    parser.add_argument("--bound", type=int, default=2)
    parser.add_argument("--steps", type=int, default=3,
                        help="grid steps per polarization parameter")
    args = parser.parse_args()

    name = f"elliptic-{args.base}"
    g = cy3.builtin(name)
    base = base_surface_for(name)
    o = cy3.trivial_line(g)
    config = cy3.SearchConfig(coord_bound=args.bound,
                              multiple_range=args.bound, rank_case="r2")

    hits = {}
    runs = 0
    for h in polarization_grid(g, base, args.steps):
        runs += 1
        certs = cy3.search(g, h, config)
        for cert, verdict in cy3.anomaly_scan(g, certs, o, o):
            if not verdict.effective:
                continue
            entry = hits.setdefault(cert.d.coords, {
                "chi": cert.chi, "w": verdict.w.coords, "count": 0,
                "example_h": cert.h.coords})
            entry["count"] += 1

    print(f"geometry: {name}   polarizations scanned: {runs}   "
          f"bound: {args.bound}")
    if not hits:
        print("no anomaly-effective certificates in this grid")
        return
    print(f"{'D':<18} {'chi':>8} {'W':<22} {'#H':>4}  example H")
    for coords in sorted(hits):
        e = hits[coords]
        print(f"{str(coords):<18} {str(e['chi']):>8} {str(e['w']):<22} "
              f"{e['count']:>4}  {e['example_h']}")


if __name__ == "__main__":
    main()
