"""Scalar conventions: exact rationals, float fallback, canonical forms.

Coordinates live in one of three scalar regimes: exact (every entry a
Fraction), float real, or complex float.  A tuple is "exact" only when all
entries are Fractions; mixing exact and float demotes to float.  Canonical
forms make projective equality testable by tuple comparison in the exact
regime and by angle metrics in the float regimes.
"""

import math
import warnings
from fractions import Fraction

from .errors import PrecisionFallbackWarning

# exact data above this many bits per numerator/denominator is demoted
BIT_CEILING = 4096

SCALE_TOL = 1e-9


def is_exact_tuple(values):
    return all(isinstance(v, Fraction) for v in values)


def is_complex_tuple(values):
    return any(isinstance(v, complex) for v in values)


def as_fraction(v):
    """Coerce ints/strings/Fractions; floats pass through unchanged."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    return v


def coerce_scalars(values):
    """Normalize a coordinate tuple into a single scalar regime."""
    vals = tuple(as_fraction(v) for v in values)
    if is_exact_tuple(vals):
        return vals
    if is_complex_tuple(vals):
        return tuple(complex(v) for v in vals)
    return tuple(float(v) for v in vals)


def max_bits(values):
    bits = 0
    for v in values:
        if isinstance(v, Fraction):
            bits = max(bits, v.numerator.bit_length(), v.denominator.bit_length())
    return bits


def demote_if_huge(values, ceiling=None):
    """Drop to float when exact entries outgrow the bit ceiling."""
    if ceiling is None:
        ceiling = BIT_CEILING
    if is_exact_tuple(values) and max_bits(values) > ceiling:
        warnings.warn(
            "exact coordinates exceeded %d bits; continuing in float" % ceiling,
            PrecisionFallbackWarning,
            stacklevel=3,
        )
        return tuple(float(v) for v in values)
    return values


def primitive(values):
    """Canonical exact form: integer entries, gcd 1, first nonzero positive.

    Input must be all-Fraction and not all zero.
    """
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in values]
    g = 0
    for n in ints:
        g = math.gcd(g, n)
    if g == 0:
        raise ValueError("zero tuple has no primitive form")
    ints = [n // g for n in ints]
    for n in ints:
        if n != 0:
            if n < 0:
                ints = [-m for m in ints]
            break
    return tuple(Fraction(n) for n in ints)


def unit_float(values):
    """Canonical float form: unit Euclidean norm, largest-|entry| positive."""
    norm = math.sqrt(sum(v * v for v in values))
    if norm == 0.0:
        raise ValueError("zero tuple cannot be normalized")
    vals = [v / norm for v in values]
    k = max(range(len(vals)), key=lambda i: abs(vals[i]))
    if vals[k] < 0:
        vals = [-v for v in vals]
    return tuple(vals)


def unit_complex(values):
    """Canonical complex form: unit norm, largest-|entry| rotated real positive."""
    norm = math.sqrt(sum((v * v.conjugate()).real for v in values))
    if norm == 0.0:
        raise ValueError("zero tuple cannot be normalized")
    vals = [v / norm for v in values]
    k = max(range(len(vals)), key=lambda i: abs(vals[i]))
    phase = vals[k] / abs(vals[k])
    vals = [v / phase for v in vals]
    return tuple(vals)


def canonical(values, ceiling=None):
    """Route a coerced tuple to its regime's canonical form."""
    vals = coerce_scalars(values)
    vals = demote_if_huge(vals, ceiling)
    if is_exact_tuple(vals):
        return primitive(vals)
    if is_complex_tuple(vals):
        return unit_complex(vals)
    return unit_float(vals)


def fmt_scalar(v):
    """Serialize one scalar: exact as num:den, floats via repr."""
    if isinstance(v, Fraction):
        return "%d:%d" % (v.numerator, v.denominator)
    if isinstance(v, complex):
        return repr(v)
    return repr(float(v))


def parse_scalar(text):
    """Inverse of fmt_scalar."""
    if ":" in text:
        num, den = text.split(":")
        return Fraction(int(num), int(den))
    if "j" in text or "J" in text:
        return complex(text.strip("()"))
    return float(text)
