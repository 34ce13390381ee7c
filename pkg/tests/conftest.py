"""Shared helpers: geometry access, seeded samplers, brute-force oracles."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from hypothesis import settings

import cy3
from cy3.catalog import base_surface_for

settings.register_profile("cy3", deadline=None)
settings.load_profile("cy3")

ELLIPTIC_NAMES = tuple(n for n in cy3.BUILTIN_NAMES if n.startswith("elliptic-"))


def octic():
    return cy3.builtin("octic-k3")


def sample_octic_ample(rng: random.Random, rational: bool = False):
    s = rng.randint(1, 5)
    extra = Fraction(rng.randint(1, 8), 2) if rational else rng.randint(1, 6)
    return octic().divisor((s, 2 * s + extra))


def sample_base_ample(base, rng: random.Random):
    """Base-surface class rho with rho - c1 ample, for z = 1 polarizations."""
    if base.kind.startswith("F"):
        n = int(base.kind[1:])
        a = rng.randint(1, 4)
        amp = (a, n * a + rng.randint(1, 4))
    else:
        m = rng.randint(1, 3)
        j = rng.randint(0, 3)
        amp = (m * base.c1[0] + j,) + tuple(m * c for c in base.c1[1:])
    return tuple(c + a for c, a in zip(base.c1, amp))


def sample_elliptic_ample(name: str, rng: random.Random):
    base = base_surface_for(name)
    return cy3.builtin(name).divisor((1,) + sample_base_ample(base, rng))


def sample_ample(name: str, rng: random.Random):
    if name == "octic-k3":
        return sample_octic_ample(rng, rational=rng.random() < 0.5)
    return sample_elliptic_ample(name, rng)


def random_lattice_divisor(g, rng: random.Random, radius: int = 10):
    return g.divisor(tuple(rng.randint(-radius, radius) for _ in range(g.rho)))


def box_oracle(g, h, e1, e2, bound: int) -> set[tuple]:
    """Naive full-box enumeration applying the four checks pointwise."""
    valid = set()
    h_squared = cy3.product_curve(h, h)
    for coords in product(range(-bound, bound + 1), repeat=g.rho):
        d = g.divisor(coords)
        if cy3.pair(d, h_squared) != 0:
            continue
        if not any(cy3.pairing_row(d, h)):
            continue
        if cy3.pair(h, cy3.product_curve(d, d)) >= 0:
            continue
        if cy3.euler_characteristic(cy3.ExtensionSpec(e1, e2, d)) >= 0:
            continue
        valid.add(coords)
    return valid
