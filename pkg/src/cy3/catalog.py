"""Built-in threefold geometries and geometry file I/O.

Two families are provided: the degree-8 K3-fibered blow-up geometry
(``octic-k3``) and elliptic fibrations with a section over a rational base
surface (``elliptic-f0``/``-f1``/``-f2`` and ``elliptic-dp1`` .. ``-dp8``).
Intersection data is transcribed, not derived from ambient-space geometry.

Geometry files are JSON or TOML with keys ``name``, ``divisor_basis``,
``curve_basis``, ``triple`` (list of ``[i, j, k, value]`` entries,
symmetrized on load), ``pair_to_curve`` (list of ``[i, j, coords...]``),
``pairing`` (matrix), ``c2X`` (coords), ``c3X`` (integer), ``ample`` (list of
``{label, coeffs}``) and ``effective_curves`` (list of coords).  Rationals are
written as ``"p/q"`` strings, integers stay bare.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import GeometryParseError, GeometryValidationError
from .exact import (Exact, decode_exact, encode_exact, exact_tuple,
                    format_linear)
from .intersection import Geometry, LinearForm, validate_geometry

BUILTIN_NAMES = ("octic-k3", "elliptic-f0", "elliptic-f1", "elliptic-f2",
                 "elliptic-dp1", "elliptic-dp2", "elliptic-dp3", "elliptic-dp4",
                 "elliptic-dp5", "elliptic-dp6", "elliptic-dp7", "elliptic-dp8")


@dataclass(frozen=True)
class BaseSurface:
    """A rational base surface for the elliptic fibration builder.

    ``intersection_form`` is the symmetric pairing on the divisor basis,
    ``c1`` and ``c2`` its Chern data, ``ample_forms`` the strict cone
    description of ample classes and ``effective_curves`` the generators of
    the configured effective cone (extremal rational curves).
    """

    kind: str
    basis: tuple[str, ...]
    intersection_form: tuple[tuple[int, ...], ...]
    c1: tuple[int, ...]
    c2: int
    ample_forms: tuple[LinearForm, ...]
    effective_curves: tuple[tuple[int, ...], ...]

    def dot(self, u, v) -> Exact:
        form = self.intersection_form
        return sum(u[i] * form[i][j] * v[j]
                   for i in range(len(u)) for j in range(len(v)))


def hirzebruch(n: int) -> BaseSurface:
    """Ruled surface with a section of self-intersection -n, n in {0, 1, 2}."""
    if n not in (0, 1, 2):
        raise ValueError(f"unsupported ruled-surface parameter n={n}")
    effective = ((1, 0), (0, 1))  # the (-n)-section and the fiber
    # ample a*s + b*f: positive against the fiber (a) and the section (b - n a)
    forms = (LinearForm(format_linear((1, 0), ("a", "b")), (1, 0)),
             LinearForm(format_linear((-n, 1), ("a", "b")), (-n, 1)))
    return BaseSurface(
        kind=f"F{n}",
        basis=("s", "f"),
        intersection_form=((-n, 1), (1, 0)),
        c1=(2, n + 2),
        c2=4,
        ample_forms=forms,
        effective_curves=effective,
    )


def _minus_one_curves(k: int) -> list[tuple[int, ...]]:
    """Classes C with C^2 = -1 and C.c1 = 1 on the blow-up of the plane in k points."""
    out: list[tuple[int, ...]] = []

    def cls(deg, twos=(), threes=(), ones=()):
        v = [deg] + [0] * k
        for i in ones:
            v[1 + i] = -1
        for i in twos:
            v[1 + i] = -2
        for i in threes:
            v[1 + i] = -3
        return tuple(v)

    for i in range(k):
        e = [0] * (k + 1)
        e[1 + i] = 1
        out.append(tuple(e))
    for pair_ in combinations(range(k), 2):
        out.append(cls(1, ones=pair_))
    for five in combinations(range(k), 5):
        out.append(cls(2, ones=five))
    for i in range(k):
        rest = [j for j in range(k) if j != i]
        for six in combinations(rest, 6):
            out.append(cls(3, twos=(i,), ones=six))
    if k == 8:
        for three in combinations(range(k), 3):
            rest = [j for j in range(k) if j not in three]
            out.append(cls(4, twos=three, ones=rest))
        for six in combinations(range(k), 6):
            rest = [j for j in range(k) if j not in six]
            out.append(cls(5, twos=six, ones=rest))
        for i in range(k):
            rest = [j for j in range(k) if j != i]
            out.append(cls(6, threes=(i,), twos=rest))
    return out


def del_pezzo(k: int) -> BaseSurface:
    """Blow-up of the plane in k general points, 1 <= k <= 8."""
    if k not in range(1, 9):
        raise ValueError(f"unsupported del Pezzo parameter k={k}")
    basis = ("h",) + tuple(f"e{i}" for i in range(1, k + 1))
    form = tuple(tuple((1 if i == j == 0 else -1 if i == j else 0)
                       for j in range(k + 1)) for i in range(k + 1))
    effective = _minus_one_curves(k)
    if k == 1:
        # the single exceptional curve does not generate the cone alone;
        # add the ruling fiber h - e1
        effective.append((1, -1))
    effective_t = tuple(sorted(effective))
    # ample iff strictly positive against every extremal curve; with the full
    # generator list this is the exact cone criterion, so no quadratic test
    # is needed
    forms = []
    for gen in effective_t:
        coeffs = tuple(sum(form[i][j] * gen[j] for j in range(k + 1))
                       for i in range(k + 1))
        forms.append(LinearForm(format_linear(coeffs, basis), coeffs))
    return BaseSurface(
        kind=f"dP{k}",
        basis=basis,
        intersection_form=form,
        c1=(3,) + (-1,) * k,
        c2=3 + k,
        ample_forms=tuple(forms),
        effective_curves=effective_t,
    )


def build_octic_k3() -> Geometry:
    """K3-fibered blow-up of the degree-8 hypersurface geometry.

    Divisor basis (E, L): exceptional divisor and K3 fiber.  Curve basis
    (h, l).  A class s E + t L is ample iff s > 0, t > 0 and t > 2 s.
    """
    zero2 = (0, 0)
    triple = (
        (((-16), 4), (4, 0)),
        ((4, 0), zero2),
    )
    pair_to_curve = (
        (((-8), 4), (4, 0)),
        ((4, 0), zero2),
    )
    pairing = ((1, -2), (0, 1))
    names = ("s", "t")
    ample = tuple(LinearForm(format_linear(c, names), c)
                  for c in ((1, 0), (0, 1), (-2, 1)))
    geo = Geometry(
        name="octic-k3",
        divisor_basis=("E", "L"),
        curve_basis=("h", "l"),
        triple=triple,
        pair_to_curve=pair_to_curve,
        pairing=pairing,
        c2x=(56, 24),
        c3x=-168,
        ample_inequalities=ample,
        effective_curve_generators=((1, 0), (0, 1)),
    )
    return _checked(geo)


def build_elliptic(base: BaseSurface) -> Geometry:
    """Elliptic fibration with a section over a rational base surface.

    Divisor basis (sigma, pullbacks of the base basis); curve basis (fiber
    class, section curves over the base basis).  The ring is determined by
    sigma^2 = -sigma.pi*c1 together with the base intersection form.
    """
    q = base.intersection_form
    c1 = base.c1
    nb = len(base.basis)
    rho = nb + 1
    c1sq = base.dot(c1, c1)
    qc1 = tuple(sum(q[i][j] * c1[j] for j in range(nb)) for i in range(nb))

    def trip(i, j, k):
        zeros = (i == 0) + (j == 0) + (k == 0)
        if zeros == 3:
            return c1sq
        if zeros == 2:
            other = (i + j + k) - 0  # the single nonzero index
            return -qc1[other - 1]
        if zeros == 1:
            a, b = sorted(x for x in (i, j, k) if x != 0)
            return q[a - 1][b - 1]
        return 0

    triple = tuple(tuple(tuple(trip(i, j, k) for k in range(rho))
                         for j in range(rho)) for i in range(rho))

    def curve_vec(i, j):
        if i == 0 and j == 0:
            return (0,) + tuple(-c for c in c1)
        if i == 0 or j == 0:
            other = i + j
            vec = [0] * rho
            vec[other] = 1
            return tuple(vec)
        return (q[i - 1][j - 1],) + (0,) * nb

    pair_to_curve = tuple(tuple(curve_vec(i, j) for j in range(rho))
                          for i in range(rho))

    pairing = ((1,) + tuple(-v for v in qc1),) + tuple(
        (0,) + tuple(q[i][j] for j in range(nb)) for i in range(nb))

    c2x = (base.c2 + 11 * c1sq,) + tuple(12 * c for c in c1)

    names = ("z",) + base.basis
    forms = [LinearForm(format_linear((1,) + (0,) * nb, names), (1,) + (0,) * nb)]
    for bform in base.ample_forms:
        # the same inequality evaluated on rho - z*c1, as a form in (z, rho)
        coeffs = (-bform.value(c1),) + bform.coeffs
        forms.append(LinearForm(format_linear(coeffs, names), coeffs))

    effective = ((1,) + (0,) * nb,) + tuple(
        (0,) + tuple(g) for g in base.effective_curves)

    geo = Geometry(
        name=f"elliptic-{base.kind.lower()}",
        divisor_basis=("sigma",) + tuple(f"pi*{b}" for b in base.basis),
        curve_basis=("f_c",) + tuple(f"sigma.{b}" for b in base.basis),
        triple=triple,
        pair_to_curve=pair_to_curve,
        pairing=pairing,
        c2x=c2x,
        c3x=-60 * c1sq,
        ample_inequalities=tuple(forms),
        effective_curve_generators=effective,
    )
    return _checked(geo)


def _checked(geo: Geometry) -> Geometry:
    violations = validate_geometry(geo)
    if violations:
        raise GeometryValidationError(violations)
    return geo


def base_surface_for(name: str) -> BaseSurface:
    """The base surface of a built-in elliptic geometry name."""
    if name.startswith("elliptic-f"):
        return hirzebruch(int(name[len("elliptic-f"):]))
    if name.startswith("elliptic-dp"):
        return del_pezzo(int(name[len("elliptic-dp"):]))
    raise KeyError(f"not an elliptic geometry: {name!r}")


@lru_cache(maxsize=None)
def builtin(name: str) -> Geometry:
    """A built-in geometry by name; raises KeyError for unknown names."""
    if name == "octic-k3":
        return build_octic_k3()
    if name in BUILTIN_NAMES:
        return build_elliptic(base_surface_for(name))
    raise KeyError(f"unknown geometry {name!r}; known: {', '.join(BUILTIN_NAMES)}")


def geometry_to_dict(g: Geometry) -> dict:
    """Canonical plain-data form of a geometry (deterministic ordering)."""
    triple_entries = []
    for i in range(g.rho):
        for j in range(i, g.rho):
            for k in range(j, g.rho):
                v = g.triple[i][j][k]
                if v:
                    triple_entries.append([i, j, k, encode_exact(v)])
    ptc_entries = []
    for i in range(g.rho):
        for j in range(i, g.rho):
            vec = g.pair_to_curve[i][j]
            if any(vec):
                ptc_entries.append([i, j] + [encode_exact(v) for v in vec])
    return {
        "name": g.name,
        "divisor_basis": list(g.divisor_basis),
        "curve_basis": list(g.curve_basis),
        "triple": triple_entries,
        "pair_to_curve": ptc_entries,
        "pairing": [[encode_exact(v) for v in row] for row in g.pairing],
        "c2X": [encode_exact(v) for v in g.c2x],
        "c3X": encode_exact(g.c3x),
        "ample": [{"label": f.label, "coeffs": [encode_exact(c) for c in f.coeffs]}
                  for f in g.ample_inequalities],
        "effective_curves": [[encode_exact(v) for v in gen]
                             for gen in g.effective_curve_generators],
    }


_REQUIRED_KEYS = ("name", "divisor_basis", "curve_basis", "triple",
                  "pair_to_curve", "pairing", "c2X", "c3X", "ample",
                  "effective_curves")


def geometry_from_dict(data: dict) -> Geometry:
    """Build and validate a geometry from parsed file data."""
    for key in _REQUIRED_KEYS:
        if key not in data:
            raise GeometryParseError(f"missing key: {key}")
    try:
        divisor_basis = tuple(str(x) for x in data["divisor_basis"])
        curve_basis = tuple(str(x) for x in data["curve_basis"])
        rho = len(divisor_basis)
        nc = len(curve_basis)

        triple = [[[0] * rho for _ in range(rho)] for _ in range(rho)]
        seen: dict[tuple[int, int, int], Exact] = {}
        for entry in data["triple"]:
            if len(entry) != 4:
                raise GeometryParseError(f"triple entry must be [i, j, k, value]: {entry!r}")
            i, j, k = (int(entry[0]), int(entry[1]), int(entry[2]))
            if not all(0 <= x < rho for x in (i, j, k)):
                raise GeometryParseError(f"triple entry index out of range: {entry!r}")
            v = decode_exact(entry[3])
            key = tuple(sorted((i, j, k)))
            if key in seen and seen[key] != v:
                raise GeometryParseError(
                    f"conflicting triple entries for indices {key}: {seen[key]} vs {v}")
            seen[key] = v
        for (i, j, k), v in seen.items():
            for a, b, c in {(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)}:
                triple[a][b][c] = v

        ptc = [[(0,) * nc for _ in range(rho)] for _ in range(rho)]
        seen_ptc: dict[tuple[int, int], tuple] = {}
        for entry in data["pair_to_curve"]:
            if len(entry) != 2 + nc:
                raise GeometryParseError(
                    f"pair_to_curve entry must be [i, j, {nc} coords]: {entry!r}")
            i, j = int(entry[0]), int(entry[1])
            if not (0 <= i < rho and 0 <= j < rho):
                raise GeometryParseError(f"pair_to_curve index out of range: {entry!r}")
            vec = tuple(decode_exact(v) for v in entry[2:])
            key = (min(i, j), max(i, j))
            if key in seen_ptc and seen_ptc[key] != vec:
                raise GeometryParseError(
                    f"conflicting pair_to_curve entries for indices {key}")
            seen_ptc[key] = vec
        for (i, j), vec in seen_ptc.items():
            ptc[i][j] = vec
            ptc[j][i] = vec

        pairing = tuple(tuple(decode_exact(v) for v in row) for row in data["pairing"])
        c2x = tuple(decode_exact(v) for v in data["c2X"])
        c3x = decode_exact(data["c3X"])

        ample = []
        for idx, fdata in enumerate(data["ample"]):
            if isinstance(fdata, dict):
                coeffs = exact_tuple(decode_exact(v) for v in fdata["coeffs"])
                label = str(fdata.get("label") or format_linear(coeffs, divisor_basis))
            else:
                coeffs = exact_tuple(decode_exact(v) for v in fdata)
                label = format_linear(coeffs, divisor_basis)
            ample.append(LinearForm(label, coeffs))

        effective = tuple(tuple(decode_exact(v) for v in gen)
                          for gen in data["effective_curves"])

        geo = Geometry(
            name=str(data["name"]),
            divisor_basis=divisor_basis,
            curve_basis=curve_basis,
            triple=triple,
            pair_to_curve=ptc,
            pairing=pairing,
            c2x=c2x,
            c3x=c3x,
            ample_inequalities=tuple(ample),
            effective_curve_generators=effective,
        )
    except GeometryParseError:
        raise
    except (TypeError, ValueError, KeyError) as exc:
        raise GeometryParseError(f"malformed geometry data: {exc}") from exc
    return _checked(geo)


def _toml_value(v) -> str:
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, list):
        return "[" + ", ".join(_toml_value(x) for x in v) + "]"
    if isinstance(v, dict):
        inner = ", ".join(f"{k} = {_toml_value(val)}" for k, val in v.items())
        return "{" + inner + "}"
    raise TypeError(f"cannot emit TOML value {v!r}")


def _dump_toml(data: dict) -> str:
    # the geometry schema is flat (strings, ints, nested lists, inline
    # tables), so a minimal deterministic emitter suffices
    lines = [f"{key} = {_toml_value(data[key])}" for key in sorted(data)]
    return "\n".join(lines) + "\n"


def save_geometry(g: Geometry, path) -> None:
    """Write the canonical geometry file; TOML for .toml paths, else JSON."""
    path = Path(path)
    data = geometry_to_dict(g)
    if path.suffix.lower() == ".toml":
        path.write_text(_dump_toml(data))
    else:
        path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def load_geometry(path) -> Geometry:
    """Parse and validate a geometry file (JSON or TOML)."""
    path = Path(path)
    text = path.read_text()
    stripped = text.lstrip()
    if path.suffix.lower() == ".json" or stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GeometryParseError(f"invalid JSON in {path}: {exc}") from exc
    else:
        try:
            data = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise GeometryParseError(f"invalid TOML in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise GeometryParseError(f"geometry file {path} must contain a table/object")
    return geometry_from_dict(data)
