from fractions import Fraction
from typing import Union

import re

from toricech.core.errors import ParseError


__all__ = [
    'Rational',
    'as_rational',
    'parse_rational',
    'format_rational',
    'decimal_string',
    'capped_midpoint',
]


Rational = Fraction

_RATIONAL_PATTERN = re.compile(r'^\s*[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)\s*$')


def parse_rational(text: str) -> Fraction:
    # floats never enter: '2.99' is read as 299/100
    if not _RATIONAL_PATTERN.match(text):
        raise ParseError(f'not a rational literal: {text!r}')
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f'not a rational literal: {text!r}') from e


def as_rational(value: Union[int, str, Fraction]) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f'expected an exact rational, got {type(value).__name__}')


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def decimal_string(value: Fraction, digits: int = 6) -> str:
    value = Fraction(value)
    sign = '-' if value < 0 else ''
    scaled = abs(value) * 10 ** digits
    # round half up, exactly
    units = int(scaled + Fraction(1, 2))
    whole, frac = divmod(units, 10 ** digits)
    if digits == 0:
        return f'{sign}{whole}'
    return f'{sign}{whole}.{frac:0{digits}d}'


def capped_midpoint(lo: Fraction, hi: Fraction) -> Fraction:
    assert lo < hi
    mid = (lo + hi) / 2
    width = hi - lo
    # the closest fraction with a small denominator stays well inside (lo, hi)
    max_denominator = max(1, int(4 / width) + 1)
    capped = mid.limit_denominator(max_denominator)
    if lo + width / 4 <= capped <= hi - width / 4:
        return capped
    return mid
