"""Chern data of extension bundles and the twisted Euler characteristic.

Bundles here always have vanishing first Chern class, so only the rank, the
second Chern curve class and the third Chern number are tracked.  An
extension of a negative twist of ``E2`` by a positive twist of ``E1`` along a
divisor class ``D`` again has vanishing first Chern class; its remaining
Chern data and the twisted Euler characteristic are polynomial in the
intersection numbers of ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DataConsistencyError, GeometryMismatch
from .exact import Exact, exact
from .intersection import (CurveClass, DivisorClass, Geometry, _same_geometry,
                           c2_dot, pair, product_curve, triple_product)


@dataclass(frozen=True)
class BundleData:
    """Rank, second Chern curve class and third Chern number of a bundle
    with trivial determinant."""

    rank: int
    c2: CurveClass
    c3: Exact
    label: str

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        object.__setattr__(self, "c3", exact(self.c3))

    def is_integral(self) -> bool:
        return self.c2.is_integral() and isinstance(self.c3, int)


def trivial_line(g: Geometry) -> BundleData:
    """The structure sheaf: rank 1, vanishing Chern classes."""
    return BundleData(1, g.zero_curve(), 0, "O_X")


def tangent(g: Geometry) -> BundleData:
    """The tangent bundle: rank 3 with the geometry's own Chern data."""
    return BundleData(3, g.c2_class(), g.c3x, "TX")


@dataclass(frozen=True)
class ExtensionSpec:
    """Input data (E1, E2, D) for a twisted extension with c1 = 0.

    The twist exponents are the ranks divided by their gcd, so they are
    coprime and the middle term has trivial determinant.
    """

    e1: BundleData
    e2: BundleData
    d: DivisorClass

    def __post_init__(self):
        _same_geometry(self.e1.c2, self.e2.c2, self.d)

    @property
    def r1_prime(self) -> int:
        return self.e1.rank // gcd(self.e1.rank, self.e2.rank)

    @property
    def r2_prime(self) -> int:
        return self.e2.rank // gcd(self.e1.rank, self.e2.rank)

    @property
    def r_prime(self) -> int:
        return self.r1_prime + self.r2_prime

    @property
    def rank(self) -> int:
        return self.e1.rank + self.e2.rank


def extension_chern(spec: ExtensionSpec) -> BundleData:
    """Chern data of the extension bundle determined by the spec."""
    r1, r2 = spec.e1.rank, spec.e2.rank
    r1p, r2p = spec.r1_prime, spec.r2_prime
    d = spec.d
    d_squared = product_curve(d, d)
    d_cubed = triple_product(d, d, d)

    c2 = (-Fraction(r1 * r2p * r2p + r2 * r1p * r1p, 2)) * d_squared \
        + spec.e1.c2 + spec.e2.c2
    c3 = Fraction(r1 * r2p ** 3 - r2 * r1p ** 3, 3) * d_cubed \
        + 2 * (r1p * pair(d, spec.e2.c2) - r2p * pair(d, spec.e1.c2)) \
        + spec.e1.c3 + spec.e2.c3
    return BundleData(spec.rank, c2, exact(c3),
                      f"ext({spec.e1.label},{spec.e2.label})")


def euler_characteristic(spec: ExtensionSpec) -> Exact:
    """Alternating Ext-dimension sum for the twisted pair, via Riemann-Roch.

    For integral input data the result must be an integer; a fractional
    value signals inconsistent geometry or bundle data and raises.
    """
    r1, r2 = spec.e1.rank, spec.e2.rank
    rp = spec.r_prime
    d = spec.d
    d_cubed = triple_product(d, d, d)

    chi = Fraction(r1 * r2 * rp ** 3, 6) * d_cubed \
        + rp * (Fraction(r1 * r2, 12) * c2_dot(d)
                - r2 * pair(d, spec.e1.c2) - r1 * pair(d, spec.e2.c2)) \
        + Fraction(r2, 2) * spec.e1.c3 - Fraction(r1, 2) * spec.e2.c3
    chi = exact(chi)
    if not isinstance(chi, int) and d.is_integral() \
            and spec.e1.is_integral() and spec.e2.is_integral():
        raise DataConsistencyError(
            f"Euler characteristic {chi} is not an integer for integral input "
            f"(D = {d.coords}, {spec.e1.label}/{spec.e2.label}); "
            "the geometry or bundle data is inconsistent")
    return chi


def nonsplit_r2(g: Geometry, d: DivisorClass) -> bool:
    """Rank-2 nonsplit criterion: c2(X).D + 8 D^3 < 0 (both bundles trivial)."""
    _check_owner(g, d)
    return c2_dot(d) + 8 * triple_product(d, d, d) < 0


def nonsplit_r4(g: Geometry, d: DivisorClass) -> bool:
    """Rank-4 nonsplit criterion: -3 c2(X).D + 32 D^3 + c3(X)/2 < 0
    (tangent bundle against the structure sheaf)."""
    _check_owner(g, d)
    value = -3 * c2_dot(d) + 32 * triple_product(d, d, d) + Fraction(g.c3x, 2)
    return value < 0


def nonsplit_general(spec: ExtensionSpec) -> bool:
    """Strictly negative Euler characteristic, the certified nonsplit test."""
    return euler_characteristic(spec) < 0


def _check_owner(g: Geometry, d: DivisorClass) -> None:
    if d.geometry is not g and d.geometry != g:
        raise GeometryMismatch(
            f"divisor class from {d.geometry.name!r} used with geometry {g.name!r}")
