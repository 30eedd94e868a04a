"""Base-b digit expansions and the happy/elated step maps.

All values are Python ints (arbitrary precision).  Digits are kept
most-significant first, so the leading digit is ``digits[0]``.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import gmpy2

Kind = Literal["elated", "happy"]

_ALPHABET = string.digits + string.ascii_lowercase


def _check_base(b: int) -> None:
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")


def _check_exponent(e: int) -> None:
    if e < 1:
        raise ValueError(f"exponent must be >= 1, got {e}")


@dataclass(frozen=True)
class DigitExpansion:
    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_base(self.base)
        if not self.digits:
            raise ValueError("empty digit sequence")
        if self.digits[0] == 0:
            raise ValueError("leading digit must be nonzero")
        for d in self.digits:
            if not 0 <= d < self.base:
                raise ValueError(f"digit {d} out of range for base {self.base}")

    @property
    def leading(self) -> int:
        return self.digits[0]

    @property
    def value(self) -> int:
        return from_digits(self.digits, self.base)

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return render_digits(self.digits, self.base)


# str(int) refuses very long values; gmpy2 has no such limit
_STR_SAFE_BITS = 12000
_DIGIT_VALUE = {c: i for i, c in enumerate(_ALPHABET)}


def decimal_str(n: int) -> str:
    """Decimal text of any int, however long."""
    if n.bit_length() < _STR_SAFE_BITS:
        return str(n)
    return gmpy2.mpz(n).digits(10)


def digit_list(n: int, b: int) -> list[int]:
    """Digits of ``n >= 1`` in base ``b``, most significant first (no validation)."""
    if b == 10:
        return [ord(c) - 48 for c in decimal_str(n)]
    if n.bit_length() >= _STR_SAFE_BITS and b <= 36:
        return [_DIGIT_VALUE[c] for c in gmpy2.mpz(n).digits(b)]
    out = []
    while n:
        n, r = divmod(n, b)
        out.append(r)
    out.reverse()
    return out


def to_digits(n: int, b: int) -> DigitExpansion:
    _check_base(b)
    if n < 1:
        raise ValueError(f"to_digits is defined for positive integers, got {n}")
    return DigitExpansion(b, tuple(digit_list(n, b)))


def from_digits(digits: Sequence[int], b: int) -> int:
    _check_base(b)
    if not digits:
        raise ValueError("empty digit sequence")
    if digits[0] == 0:
        raise ValueError("leading digit must be nonzero")
    n = 0
    for d in digits:
        if not 0 <= d < b:
            raise ValueError(f"digit {d} out of range for base {b}")
        n = n * b + d
    return n


def render_digits(digits: Iterable[int], b: int) -> str:
    """Base-b string: 0-9a-z up to base 36, comma-separated decimal digits above."""
    if b <= 36:
        return "".join(_ALPHABET[d] for d in digits)
    return ",".join(str(d) for d in digits)


def render(n: int, b: int) -> str:
    return render_digits(digit_list(n, b), b)


def parse_digits(text: str, b: int) -> tuple[int, ...]:
    """Inverse of :func:`render_digits` (accepts the empty string)."""
    if not text:
        return ()
    if b <= 36:
        digits = tuple(_ALPHABET.index(c) for c in text.lower())
    else:
        digits = tuple(int(c) for c in text.split(","))
    if any(d >= b for d in digits):
        raise ValueError(f"{text!r} is not a base-{b} digit string")
    return digits


def power_sum(n: int, b: int, e: int = 2) -> int:
    if b == 10 and e == 2:
        return sum(_SQ10[c] for c in decimal_str(n))
    return sum(d**e for d in digit_list(n, b))


_SQ10 = {str(d): d * d for d in range(10)}


def happy_step(n: int, b: int, e: int = 2) -> int:
    """Sum of the e-th powers of the base-b digits of ``n``."""
    _check_base(b)
    _check_exponent(e)
    if n < 1:
        raise ValueError(f"happy_step is defined for positive integers, got {n}")
    return power_sum(n, b, e)


def elated_step(n: int, b: int, e: int = 2) -> int:
    """Leading base-b digit of ``n`` times the sum of e-th powers of its digits."""
    _check_base(b)
    _check_exponent(e)
    if n < 1:
        raise ValueError(f"elated_step is defined for positive integers, got {n}")
    ds = digit_list(n, b)
    return ds[0] * sum(d**e for d in ds)


def step_function(kind: Kind):
    if kind == "elated":
        return _elated_fast
    if kind == "happy":
        return _happy_fast
    raise ValueError(f"unknown map kind {kind!r}")


# unchecked variants for inner loops
def _elated_fast(n: int, b: int, e: int = 2) -> int:
    ds = digit_list(n, b)
    return ds[0] * sum(d**e for d in ds)


def _happy_fast(n: int, b: int, e: int = 2) -> int:
    return power_sum(n, b, e)


def repunit(r: int, b: int, x: int) -> int:
    """The base-b number made of ``x`` ones followed by ``r`` zeros (0 when x == 0)."""
    _check_base(b)
    if r < 0 or x < 0:
        raise ValueError("repunit needs r >= 0 and x >= 0")
    return b**r * (b**x - 1) // (b - 1)


@dataclass(frozen=True)
class Trajectory:
    base: int
    exponent: int
    kind: str
    values: tuple[int, ...]
    # "target" when the last value is the requested target, otherwise "cycle"
    terminal: str
    cycle_start: int | None = None

    @property
    def steps(self) -> int:
        return len(self.values) - 1


def iterate(
    n: int,
    b: int,
    e: int = 2,
    kind: Kind = "elated",
    target: int | None = None,
) -> Trajectory:
    """Apply the step map until ``target`` is reached or a value repeats.

    With a repeat, ``cycle_start`` is the index of the first value on the
    cycle and the repeated value is not appended a second time.
    """
    _check_base(b)
    _check_exponent(e)
    if n < 1:
        raise ValueError(f"iterate needs a positive start, got {n}")
    step = step_function(kind)
    values = [n]
    seen = {n: 0}
    while True:
        if target is not None and values[-1] == target:
            return Trajectory(b, e, kind, tuple(values), "target")
        nxt = step(values[-1], b, e)
        if nxt in seen:
            return Trajectory(b, e, kind, tuple(values), "cycle", seen[nxt])
        seen[nxt] = len(values)
        values.append(nxt)
