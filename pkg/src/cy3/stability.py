"""Search for divisor classes certifying stable extension bundles.

For an ample class H the certificate conditions on a lattice class D are:
orthogonality D.H^2 = 0, numerical nontriviality of the curve class D.H,
negativity D^2.H < 0 (forced by the Hodge index theorem once the first two
hold, but re-verified), and a strictly negative twisted Euler characteristic
(so a nonsplit extension exists).  The solver enumerates primitive lattice
points in a coordinate box on the orthogonality hyperplane, extends them by
in-box multiples, and falls back to a small perturbation of H when a class
with vanishing triple self-intersection cannot be rescued by multiples.

The lattice box can be partitioned across worker processes; results are
merged and canonically sorted, so output is independent of the worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .chern import BundleData, ExtensionSpec, euler_characteristic, tangent, trivial_line
from .errors import DataConsistencyError, GeometryMismatch, NotAmpleError, StructuralError
from .exact import Exact, content, scale_to_integers
from .intersection import (DivisorClass, Geometry, _same_geometry, is_ample,
                           pair, product_curve, triple_product,
                           violated_ample_forms)

DEFAULT_PERTURBATION_DELTAS = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8),
                               Fraction(1, 16), Fraction(1, 32))


@dataclass(frozen=True)
class CertificateChecks:
    """Boolean verdicts of the four certificate conditions."""

    orthogonal: bool
    nontrivial: bool
    negative: bool
    nonsplit: bool

    def all_pass(self) -> bool:
        return self.orthogonal and self.nontrivial and self.negative and self.nonsplit


@dataclass(frozen=True)
class StabilityCertificate:
    """One candidate divisor class with its polarization and check verdicts."""

    d: DivisorClass
    h: DivisorClass
    checks: CertificateChecks
    chi: Exact

    @property
    def valid(self) -> bool:
        return self.checks.all_pass()


@dataclass(frozen=True)
class SearchConfig:
    """Bounds and case selection for the certificate search.

    ``rank_case`` chooses the bundle pair: "r2" extends the structure sheaf
    against itself, "r4" the tangent bundle against the structure sheaf, and
    "custom" uses the explicitly supplied pair.
    """

    coord_bound: int = 3
    multiple_range: int = 3
    rank_case: str = "r2"
    e1: BundleData | None = None
    e2: BundleData | None = None
    perturbation_enabled: bool = False
    perturbation_denominators: tuple[Fraction, ...] = DEFAULT_PERTURBATION_DELTAS
    workers: int = 1

    def __post_init__(self):
        if self.coord_bound < 1:
            raise ValueError("coord_bound must be >= 1")
        if self.multiple_range < 1:
            raise ValueError("multiple_range must be >= 1")
        if self.rank_case not in ("r2", "r4", "custom"):
            raise ValueError(f"unknown rank_case {self.rank_case!r}")
        if self.rank_case == "custom" and (self.e1 is None or self.e2 is None):
            raise ValueError("rank_case 'custom' requires e1 and e2")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def bundle_pair(self, g: Geometry) -> tuple[BundleData, BundleData]:
        if self.rank_case == "r2":
            o = trivial_line(g)
            return o, o
        if self.rank_case == "r4":
            return tangent(g), trivial_line(g)
        return self.e1, self.e2


def check_orthogonal(d: DivisorClass, h: DivisorClass) -> Exact:
    """The exact value of D.H^2; the caller compares against zero."""
    _same_geometry(d, h)
    return pair(d, product_curve(h, h))


def pairing_row(d: DivisorClass, h: DivisorClass) -> tuple[Exact, ...]:
    """Intersection of the curve class D.H with every basis divisor."""
    g = _same_geometry(d, h)
    dh = product_curve(d, h)
    return tuple(pair(g.basis_divisor(i), dh) for i in range(g.rho))


def check_numerically_nontrivial(d: DivisorClass, h: DivisorClass) -> bool:
    """True iff the curve class D.H pairs nonzero with some basis divisor."""
    return any(pairing_row(d, h))


def check_negativity(d: DivisorClass, h: DivisorClass) -> Exact:
    """The exact value of D^2.H.

    When D is orthogonal to H^2 and D.H is numerically nontrivial, the Hodge
    index theorem forces a strictly negative value on honest geometry; a
    violation means the intersection data itself is inconsistent, so it is
    raised as a data error rather than returned.
    """
    _same_geometry(d, h)
    value = pair(h, product_curve(d, d))
    if value >= 0 and check_orthogonal(d, h) == 0 \
            and check_numerically_nontrivial(d, h):
        raise DataConsistencyError(
            f"Hodge index violation: D^2.H = {value} >= 0 for D = {d.coords}, "
            f"H = {h.coords}; the geometry data cannot come from a projective "
            "threefold")
    return value


def _enumerate_slice(args):
    """Worker: lattice points of one slice of the orthogonality hyperplane.

    ``args`` is (coeffs, pivot, free_indices, first_values, bound): integer
    linear form coefficients, the index solved for, the remaining coordinate
    indices, the values assigned to the first free index in this slice, and
    the box radius.  Returns plain coordinate tuples.
    """
    coeffs, pivot, free_indices, first_values, bound = args
    rho = len(coeffs)
    a_p = coeffs[pivot]
    rest = free_indices[1:]
    rest_ranges = [range(-bound, bound + 1)] * len(rest)
    found = []
    for first in first_values:
        for combo in iter_product(*rest_ranges):
            s = coeffs[free_indices[0]] * first
            for idx, val in zip(rest, combo):
                s += coeffs[idx] * val
            if s % a_p:
                continue
            xp = -s // a_p
            if xp < -bound or xp > bound:
                continue
            coords = [0] * rho
            coords[free_indices[0]] = first
            for idx, val in zip(rest, combo):
                coords[idx] = val
            coords[pivot] = xp
            found.append(tuple(coords))
    return found


def _chunk(values: list[int], parts: int) -> list[list[int]]:
    parts = max(1, min(parts, len(values)))
    size, extra = divmod(len(values), parts)
    chunks, start = [], 0
    for i in range(parts):
        end = start + size + (1 if i < extra else 0)
        chunks.append(values[start:end])
        start = end
    return chunks


def solve_orthogonal(h: DivisorClass, bound: int,
                     workers: int = 1) -> list[DivisorClass]:
    """All primitive lattice classes D in the box with D.H^2 = 0 and D.H
    numerically nontrivial, in lexicographic coordinate order.

    Both signs of each class are returned: the Euler characteristic is odd
    in D, so the two signs are genuinely different candidates.  An empty
    list is a valid result; the caller may enlarge the box.
    """
    g = h.geometry
    if g.rho < 2:
        raise StructuralError(
            "orthogonal divisor classes require Picard rank > 1 (h^{1,1} > 1)")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    violated = violated_ample_forms(h)
    if violated:
        raise NotAmpleError(violated[0])

    h_squared = product_curve(h, h)
    coeffs = scale_to_integers(
        [pair(g.basis_divisor(i), h_squared) for i in range(g.rho)])
    if not any(coeffs):
        raise DataConsistencyError(
            f"H^2 pairs to zero with every basis divisor for H = {h.coords}; "
            "the geometry data is degenerate")

    pivot = max(range(g.rho), key=lambda i: (abs(coeffs[i]), -i))
    free_indices = [i for i in range(g.rho) if i != pivot]
    first_values = list(range(-bound, bound + 1))

    if workers > 1 and len(first_values) > 1:
        chunks = _chunk(first_values, workers)
        jobs = [(coeffs, pivot, free_indices, chunk, bound) for chunk in chunks]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(_enumerate_slice, jobs))
        raw = [pt for part in results for pt in part]
    else:
        raw = _enumerate_slice((coeffs, pivot, free_indices, first_values, bound))

    out = []
    for coords in sorted(set(raw)):
        if content(coords) != 1:
            continue
        d = g.divisor(coords)
        if check_numerically_nontrivial(d, h):
            out.append(d)
    return out


def scan_multiples(e1: BundleData, e2: BundleData, d: DivisorClass,
                   multiple_range: int) -> tuple[int, Exact] | None:
    """Smallest-|m| nonzero multiple of D with negative Euler characteristic.

    Positive m is tried before negative at each magnitude.  Returns
    (m, chi) or None when no multiple in the range works.
    """
    if multiple_range < 1:
        raise ValueError("multiple_range must be >= 1")
    for mag in range(1, multiple_range + 1):
        for m in (mag, -mag):
            chi = euler_characteristic(ExtensionSpec(e1, e2, m * d))
            if chi < 0:
                return m, chi
    return None


def perturb_polarization(h: DivisorClass, d: DivisorClass,
                         config: SearchConfig) -> tuple[DivisorClass, DivisorClass] | None:
    """Fallback for candidates with vanishing triple self-intersection.

    Tries H' = H + delta * D for each configured delta; for the first ample
    H' whose orthogonal solutions contain a class with nonzero triple
    self-intersection, returns (H', D').  None when the ladder is exhausted
    or perturbation is disabled.
    """
    if not config.perturbation_enabled:
        return None
    for delta in config.perturbation_denominators:
        h_prime = h + delta * d
        if not is_ample(h_prime):
            continue
        for d_prime in solve_orthogonal(h_prime, config.coord_bound,
                                        config.workers):
            if triple_product(d_prime, d_prime, d_prime) != 0:
                return h_prime, d_prime
    return None


def evaluate_candidate(d: DivisorClass, h: DivisorClass, e1: BundleData,
                       e2: BundleData) -> StabilityCertificate:
    """All four certificate checks for one candidate."""
    orthogonal = check_orthogonal(d, h) == 0
    nontrivial = check_numerically_nontrivial(d, h)
    negative = check_negativity(d, h) < 0
    chi = euler_characteristic(ExtensionSpec(e1, e2, d))
    checks = CertificateChecks(orthogonal, nontrivial, negative, chi < 0)
    return StabilityCertificate(d, h, checks, chi)


def _box_multiples(primitive: DivisorClass, bound: int, multiple_range: int):
    """Positive multiples of a primitive class that stay inside the box."""
    top = max(abs(c) for c in primitive.coords)
    limit = min(multiple_range, bound // top)
    for m in range(1, limit + 1):
        yield m * primitive


def search(g: Geometry, h: DivisorClass, config: SearchConfig,
           include_failures: bool = False) -> list[StabilityCertificate]:
    """Full certificate search for an ample polarization.

    Emits one certificate per candidate (primitive orthogonal classes and
    their in-box multiples, plus perturbation rescues when enabled), sorted
    lexicographically by the candidate coordinates.  By default only valid
    certificates are returned; with ``include_failures`` every evaluated
    candidate is kept, failed checks and all.
    """
    if h.geometry is not g and h.geometry != g:
        raise GeometryMismatch(
            f"polarization from {h.geometry.name!r} used with geometry {g.name!r}")
    violated = violated_ample_forms(h)
    if violated:
        raise NotAmpleError(violated[0])

    e1, e2 = config.bundle_pair(g)
    seen: dict[tuple, StabilityCertificate] = {}

    def consider(d: DivisorClass, pol: DivisorClass):
        key = (d.coords, pol.coords)
        if key not in seen:
            seen[key] = evaluate_candidate(d, pol, e1, e2)

    primitives = solve_orthogonal(h, config.coord_bound, config.workers)
    for prim in primitives:
        for candidate in _box_multiples(prim, config.coord_bound,
                                        config.multiple_range):
            consider(candidate, h)
        if config.perturbation_enabled \
                and triple_product(prim, prim, prim) == 0 \
                and scan_multiples(e1, e2, prim, config.multiple_range) is None:
            rescued = perturb_polarization(h, prim, config)
            if rescued is not None:
                h_prime, d_prime = rescued
                for candidate in _box_multiples(d_prime, config.coord_bound,
                                                config.multiple_range):
                    consider(candidate, h_prime)

    certificates = sorted(seen.values(), key=lambda c: (c.d.coords, c.h.coords))
    if include_failures:
        return certificates
    return [c for c in certificates if c.valid]
