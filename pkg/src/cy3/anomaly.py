"""Anomaly curve class and effectivity against the configured cone.

The anomaly class of a bundle is the difference between the geometry's
second Chern class and the bundle's.  A physical solution requires it to be
effective; here effectivity means membership in the rational cone spanned by
the geometry's configured effective curve generators, decided by exact
linear programming, with the witness decomposition returned on success.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chern import BundleData, ExtensionSpec, extension_chern
from .errors import GeometryMismatch
from .exact import Exact, exact
from .intersection import CurveClass, Geometry
from .stability import StabilityCertificate


@dataclass(frozen=True)
class AnomalyVerdict:
    """Effectivity verdict for an anomaly curve class.

    When ``effective`` is true, ``decomposition`` lists (generator index,
    coefficient) pairs with nonnegative rational coefficients recombining to
    the class exactly.
    """

    w: CurveClass
    effective: bool
    decomposition: tuple[tuple[int, Exact], ...] | None


def anomaly_class(g: Geometry, bundle: BundleData) -> CurveClass:
    """c2 of the geometry minus c2 of the bundle, coordinate-wise."""
    if bundle.c2.geometry is not g and bundle.c2.geometry != g:
        raise GeometryMismatch(
            f"bundle over {bundle.c2.geometry.name!r} used with geometry {g.name!r}")
    return g.c2_class() - bundle.c2


def _nonnegative_combination(generators: Sequence[Sequence[Exact]],
                             target: Sequence[Exact]) -> tuple[Fraction, ...] | None:
    """Nonnegative rational coefficients expressing target in the generators.

    Phase-I simplex with Bland's rule over exact rationals: minimize the sum
    of artificial variables for ``G x = target, x >= 0``.  Returns the
    coefficient vector, or None when the target is outside the cone.
    """
    m = len(target)
    n = len(generators)
    rows = []
    rhs = []
    for i in range(m):
        row = [Fraction(gen[i]) for gen in generators]
        b = Fraction(target[i])
        if b < 0:
            row = [-v for v in row]
            b = -b
        rows.append(row)
        rhs.append(b)
    # append artificial identity columns
    for i in range(m):
        rows[i].extend(Fraction(1) if j == i else Fraction(0) for j in range(m))
    basis = [n + i for i in range(m)]
    # reduced objective row for minimizing the artificial sum; the artificial
    # columns are basic, so their reduced cost starts at zero
    obj = [sum(rows[i][j] for i in range(m)) for j in range(n)] \
        + [Fraction(0)] * m
    obj_value = sum(rhs)

    while True:
        entering = next((j for j in range(n + m) if obj[j] > 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(m):
            a = rows[i][entering]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best
                                                    and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            return None  # unreachable for a feasibility phase, kept defensive
        piv = rows[leaving][entering]
        rows[leaving] = [v / piv for v in rows[leaving]]
        rhs[leaving] /= piv
        for i in range(m):
            if i != leaving and rows[i][entering]:
                factor = rows[i][entering]
                rows[i] = [v - factor * w for v, w in zip(rows[i], rows[leaving])]
                rhs[i] -= factor * rhs[leaving]
        if obj[entering]:
            factor = obj[entering]
            obj = [v - factor * w for v, w in zip(obj, rows[leaving])]
            obj_value -= factor * rhs[leaving]
        basis[leaving] = entering

    if obj_value != 0:
        return None
    solution = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            solution[var] = rhs[i]
    return tuple(solution)


def is_effective(g: Geometry, w: CurveClass) -> AnomalyVerdict:
    """Membership of a curve class in the configured effective cone.

    The zero class counts as effective (empty decomposition).
    """
    if w.geometry is not g and w.geometry != g:
        raise GeometryMismatch(
            f"curve class from {w.geometry.name!r} used with geometry {g.name!r}")
    coefficients = _nonnegative_combination(g.effective_curve_generators, w.coords)
    if coefficients is None:
        return AnomalyVerdict(w, False, None)
    decomposition = tuple((j, exact(c)) for j, c in enumerate(coefficients) if c)
    return AnomalyVerdict(w, True, decomposition)


def anomaly_scan(g: Geometry, certificates: Sequence[StabilityCertificate],
                 e1: BundleData, e2: BundleData
                 ) -> list[tuple[StabilityCertificate, AnomalyVerdict]]:
    """Anomaly verdict for each certificate, effective solutions first."""
    results = []
    for cert in certificates:
        bundle = extension_chern(ExtensionSpec(e1, e2, cert.d))
        results.append((cert, is_effective(g, anomaly_class(g, bundle))))
    results.sort(key=lambda item: (not item[1].effective,
                                   item[0].d.coords, item[0].h.coords))
    return results
