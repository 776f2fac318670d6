"""Exact phases, stored as rational multiples of pi reduced into [0, 2)."""

from fractions import Fraction
from typing import Union

PhaseLike = Union[Fraction, int, str]


def phase(value: PhaseLike) -> Fraction:
    """Return ``value`` (a multiple of pi) as a Fraction normalized into [0, 2)."""
    return Fraction(value) % 2


def is_pauli(p: Fraction) -> bool:
    return p.denominator == 1


def is_clifford(p: Fraction) -> bool:
    return p.denominator <= 2


def is_proper_clifford(p: Fraction) -> bool:
    """True for +-pi/2."""
    return p.denominator == 2


def is_t_like(p: Fraction) -> bool:
    """True for odd multiples of pi/4."""
    return p.denominator == 4


def format_phase(p: Fraction) -> str:
    if p == 0:
        return "0"
    num, den = p.numerator, p.denominator
    head = "pi" if num == 1 else f"{num}*pi"
    return head if den == 1 else f"{head}/{den}"
