"""Exact scalar helpers used throughout the package.

Every quantity is an ``int`` or a ``fractions.Fraction``; floats are rejected
at the boundary so that all downstream arithmetic stays exact.  Integral
values are normalized to plain ``int`` (fast arithmetic, clean printing);
``int`` and ``Fraction`` hash and compare consistently, so mixed tuples are
safe as dataclass fields and dict keys.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

Exact = Union[int, Fraction]


def exact(value) -> Exact:
    """Normalize an int, Fraction or "p/q" string to a canonical exact scalar."""
    if isinstance(value, bool):
        raise TypeError("booleans are not exact scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        frac = Fraction(value.strip())
        return frac.numerator if frac.denominator == 1 else frac
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def exact_tuple(values: Iterable) -> tuple[Exact, ...]:
    return tuple(exact(v) for v in values)


def is_integral(values: Iterable[Exact]) -> bool:
    return all(isinstance(v, int) for v in values)


def encode_exact(value: Exact):
    """JSON-safe encoding: integers stay bare, other rationals become "p/q"."""
    if isinstance(value, int):
        return value
    return f"{value.numerator}/{value.denominator}"


def decode_exact(value) -> Exact:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError(f"expected integer or 'p/q' string, got {value!r}")
    return exact(value)


def content(values: Sequence[int]) -> int:
    """gcd of an integer vector (0 for the zero vector)."""
    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g


def scale_to_integers(values: Sequence[Exact]) -> tuple[int, ...]:
    """Clear denominators and divide out the content; zero maps to zero."""
    lcm = 1
    for v in values:
        if not isinstance(v, int):
            d = v.denominator
            lcm = lcm // gcd(lcm, d) * d
    ints = [int(v * lcm) for v in values]
    g = content(ints)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def rational_rank(rows: Sequence[Sequence[Exact]]) -> int:
    """Rank of a matrix over the rationals, by exact Gaussian elimination."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, len(m)):
            if m[r][col] != 0:
                factor = m[r][col] / pv
                for c in range(col, ncols):
                    m[r][c] -= factor * m[rank][c]
        rank += 1
        if rank == len(m):
            break
    return rank


def format_linear(coeffs: Sequence[Exact], names: Sequence[str]) -> str:
    """Render ``sum coeffs[i] * names[i] > 0`` with positive terms first.

    Example: coeffs (-2, 1) over names ("s", "t") prints as "t - 2 s > 0".
    """
    positives = []
    negatives = []
    for c, name in zip(coeffs, names):
        if c == 0:
            continue
        mag = c if c > 0 else -c
        term = name if mag == 1 else f"{mag} {name}"
        (positives if c > 0 else negatives).append(term)
    if not positives and not negatives:
        return "0 > 0"
    parts = " + ".join(positives) if positives else ""
    for term in negatives:
        parts = f"{parts} - {term}" if parts else f"-{term}"
    return f"{parts} > 0"
