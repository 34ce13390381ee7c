"""Exact intersection-ring model of a threefold with trivial first Chern class.

A :class:`Geometry` bundles the divisor and curve lattice bases, the triple
intersection tensor, the divisor-pair-to-curve map, the divisor/curve pairing
matrix, the second and third Chern data, and the configured ample and
effective cones.  Divisor and curve classes are exact rational coordinate
vectors in those bases.  Everything is immutable after construction and every
operation is a pure function, so values can be shared freely between workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import GeometryMismatch
from .exact import Exact, exact, exact_tuple, rational_rank


@dataclass(frozen=True)
class LinearForm:
    """Strict inequality ``sum coeffs[i] * x_i > 0`` with a printable label."""

    label: str
    coeffs: tuple[Exact, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", exact_tuple(self.coeffs))

    def value(self, coords: Sequence[Exact]) -> Exact:
        if len(coords) != len(self.coeffs):
            raise ValueError(f"form {self.label!r} expects {len(self.coeffs)} coordinates")
        return sum(c * x for c, x in zip(self.coeffs, coords))

    def holds(self, coords: Sequence[Exact]) -> bool:
        return self.value(coords) > 0


@dataclass(frozen=True)
class Geometry:
    """Immutable intersection data of a threefold, in fixed lattice bases.

    ``triple[i][j][k]`` is the triple product of basis divisors, fully
    symmetric.  ``pair_to_curve[i][j]`` gives the curve-class coordinates of
    the product of two basis divisors.  ``pairing[i][a]`` is the intersection
    number of basis divisor i with basis curve a.  ``c2x`` holds the curve
    coordinates of the second Chern class and ``c3x`` the third Chern number;
    the first Chern class is identically zero and has no field.
    """

    name: str
    divisor_basis: tuple[str, ...]
    curve_basis: tuple[str, ...]
    triple: tuple[tuple[tuple[Exact, ...], ...], ...]
    pair_to_curve: tuple[tuple[tuple[Exact, ...], ...], ...]
    pairing: tuple[tuple[Exact, ...], ...]
    c2x: tuple[Exact, ...]
    c3x: Exact
    ample_inequalities: tuple[LinearForm, ...]
    effective_curve_generators: tuple[tuple[Exact, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "divisor_basis", tuple(self.divisor_basis))
        object.__setattr__(self, "curve_basis", tuple(self.curve_basis))
        object.__setattr__(
            self, "triple",
            tuple(tuple(exact_tuple(row) for row in plane) for plane in self.triple))
        object.__setattr__(
            self, "pair_to_curve",
            tuple(tuple(exact_tuple(vec) for vec in row) for row in self.pair_to_curve))
        object.__setattr__(self, "pairing", tuple(exact_tuple(row) for row in self.pairing))
        object.__setattr__(self, "c2x", exact_tuple(self.c2x))
        object.__setattr__(self, "c3x", exact(self.c3x))
        object.__setattr__(self, "ample_inequalities", tuple(self.ample_inequalities))
        object.__setattr__(
            self, "effective_curve_generators",
            tuple(exact_tuple(g) for g in self.effective_curve_generators))

    @property
    def rho(self) -> int:
        """Picard rank: the size of the divisor basis."""
        return len(self.divisor_basis)

    @property
    def curve_rank(self) -> int:
        return len(self.curve_basis)

    def divisor(self, coords) -> "DivisorClass":
        return DivisorClass(exact_tuple(coords), self)

    def curve(self, coords) -> "CurveClass":
        return CurveClass(exact_tuple(coords), self)

    def basis_divisor(self, index: int) -> "DivisorClass":
        coords = [0] * self.rho
        coords[index] = 1
        return self.divisor(coords)

    def zero_divisor(self) -> "DivisorClass":
        return self.divisor([0] * self.rho)

    def zero_curve(self) -> "CurveClass":
        return self.curve([0] * self.curve_rank)

    def c2_class(self) -> "CurveClass":
        return self.curve(self.c2x)

    def effective_classes(self) -> tuple["CurveClass", ...]:
        return tuple(self.curve(g) for g in self.effective_curve_generators)


def _same_geometry(*objs) -> Geometry:
    g = objs[0].geometry
    for other in objs[1:]:
        og = other.geometry
        if og is not g and og != g:
            raise GeometryMismatch(
                f"classes from different geometries: {g.name!r} vs {og.name!r}")
    return g


class _LatticeClass:
    """Shared exact vector arithmetic for divisor and curve classes."""

    __slots__ = ()

    def _make(self, coords):
        return type(self)(tuple(coords), self.geometry)

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        _same_geometry(self, other)
        return self._make(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        _same_geometry(self, other)
        return self._make(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return self._make(-a for a in self.coords)

    def __mul__(self, scalar):
        s = exact(scalar)
        return self._make(s * a for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coords)


@dataclass(frozen=True)
class DivisorClass(_LatticeClass):
    """A divisor class, as exact coordinates in the geometry's divisor basis."""

    coords: tuple[Exact, ...]
    geometry: Geometry = field(repr=False)

    def __post_init__(self):
        coords = exact_tuple(self.coords)
        if len(coords) != self.geometry.rho:
            raise ValueError(
                f"divisor class needs {self.geometry.rho} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)


@dataclass(frozen=True)
class CurveClass(_LatticeClass):
    """A curve class, as exact coordinates in the geometry's curve basis."""

    coords: tuple[Exact, ...]
    geometry: Geometry = field(repr=False)

    def __post_init__(self):
        coords = exact_tuple(self.coords)
        if len(coords) != self.geometry.curve_rank:
            raise ValueError(
                f"curve class needs {self.geometry.curve_rank} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)


def triple_product(d1: DivisorClass, d2: DivisorClass, d3: DivisorClass) -> Exact:
    """Triple intersection number, contracted directly against the tensor."""
    g = _same_geometry(d1, d2, d3)
    total = 0
    tensor = g.triple
    for i, xi in enumerate(d1.coords):
        if not xi:
            continue
        plane = tensor[i]
        for j, yj in enumerate(d2.coords):
            if not yj:
                continue
            row = plane[j]
            w = xi * yj
            for k, zk in enumerate(d3.coords):
                if zk:
                    v = row[k]
                    if v:
                        total += w * zk * v
    return exact(total)


def product_curve(d1: DivisorClass, d2: DivisorClass) -> CurveClass:
    """Product of two divisor classes as a curve class (bilinear extension)."""
    g = _same_geometry(d1, d2)
    acc = [0] * g.curve_rank
    table = g.pair_to_curve
    for i, xi in enumerate(d1.coords):
        if not xi:
            continue
        row = table[i]
        for j, yj in enumerate(d2.coords):
            if not yj:
                continue
            w = xi * yj
            vec = row[j]
            for a, v in enumerate(vec):
                if v:
                    acc[a] += w * v
    return CurveClass(exact_tuple(acc), g)


def pair(d: DivisorClass, c: CurveClass) -> Exact:
    """Divisor-curve intersection number through the pairing matrix."""
    g = _same_geometry(d, c)
    return _pair_coords(g, d.coords, c.coords)


def _pair_coords(g: Geometry, dcoords, ccoords) -> Exact:
    total = 0
    matrix = g.pairing
    for i, xi in enumerate(dcoords):
        if not xi:
            continue
        row = matrix[i]
        for a, ca in enumerate(ccoords):
            if ca:
                v = row[a]
                if v:
                    total += xi * ca * v
    return exact(total)


def c2_dot(d: DivisorClass) -> Exact:
    """Intersection of the geometry's second Chern class with a divisor."""
    return _pair_coords(d.geometry, d.coords, d.geometry.c2x)


def violated_ample_forms(h: DivisorClass) -> list[LinearForm]:
    """Configured ample inequalities that fail (non-strictly positive) at h."""
    return [form for form in h.geometry.ample_inequalities
            if form.value(h.coords) <= 0]


def is_ample(h: DivisorClass) -> bool:
    """True iff every configured ample-cone inequality is strictly positive."""
    return not violated_ample_forms(h)


@dataclass(frozen=True)
class Violation:
    """One structural defect found by :func:`validate_geometry`."""

    kind: str
    where: tuple
    message: str


def validate_geometry(g: Geometry) -> list[Violation]:
    """Check structural consistency; returns every violation found.

    Checks, in order: array shapes, full symmetry of the triple tensor and of
    the pair-to-curve map, the compatibility identity
    ``triple[i][j][k] == pairing(B_k, pair_to_curve[i][j])``, the requirement
    that the curve basis has the same size as the divisor basis, and
    nondegeneracy of the pairing matrix.
    """
    out: list[Violation] = []
    rho = g.rho
    nc = g.curve_rank

    def bad_shape(msg, where=()):
        out.append(Violation("shape", where, msg))

    if len(g.triple) != rho or any(len(p) != rho for p in g.triple) or any(
            len(row) != rho for p in g.triple for row in p):
        bad_shape(f"triple tensor must be {rho}x{rho}x{rho}")
    if len(g.pair_to_curve) != rho or any(len(r) != rho for r in g.pair_to_curve) or any(
            len(vec) != nc for r in g.pair_to_curve for vec in r):
        bad_shape(f"pair_to_curve must be {rho}x{rho} curve vectors of length {nc}")
    if len(g.pairing) != rho or any(len(row) != nc for row in g.pairing):
        bad_shape(f"pairing matrix must be {rho}x{nc}")
    if len(g.c2x) != nc:
        bad_shape(f"c2X must have {nc} coordinates")
    for idx, gen in enumerate(g.effective_curve_generators):
        if len(gen) != nc:
            bad_shape(f"effective curve generator {idx} must have {nc} coordinates", (idx,))
    for idx, form in enumerate(g.ample_inequalities):
        if len(form.coeffs) != rho:
            bad_shape(f"ample inequality {form.label!r} must have {rho} coefficients", (idx,))
    if out:
        return out

    for i in range(rho):
        for j in range(i, rho):
            for k in range(j, rho):
                ref = g.triple[i][j][k]
                for perm in ((i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)):
                    other = g.triple[perm[0]][perm[1]][perm[2]]
                    if other != ref:
                        out.append(Violation(
                            "symmetry", (i, j, k),
                            f"triple tensor not symmetric at ({i},{j},{k}): "
                            f"d[{i}][{j}][{k}] = {ref} but d{list(perm)} = {other}"))
                        break

    for i in range(rho):
        for j in range(i + 1, rho):
            if g.pair_to_curve[i][j] != g.pair_to_curve[j][i]:
                out.append(Violation(
                    "symmetry", (i, j),
                    f"pair_to_curve not symmetric at ({i},{j})"))

    for i in range(rho):
        for j in range(rho):
            vec = g.pair_to_curve[i][j]
            for k in range(rho):
                via_pairing = sum(g.pairing[k][a] * vec[a] for a in range(nc))
                if via_pairing != g.triple[i][j][k]:
                    out.append(Violation(
                        "consistency", (i, j, k),
                        f"pairing(B_{k}, pair_to_curve[{i}][{j}]) = {via_pairing} "
                        f"but triple[{i}][{j}][{k}] = {g.triple[i][j][k]}"))

    if nc != rho:
        out.append(Violation(
            "curve-basis", (),
            f"curve basis size {nc} must equal Picard rank {rho}"))
    elif rational_rank(g.pairing) < rho:
        out.append(Violation(
            "pairing-rank", (),
            f"pairing matrix is degenerate (rank < {rho})"))

    return out
