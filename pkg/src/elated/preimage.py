"""Shortest fully basic preimages under the happy map.

``shortest_fully_basic_preimages(a, b)`` is the direct search: the
shortest nondecreasing digit strings over 1..b-1 whose squares sum to a.
``reduce_preimages`` gets the same set for large (even symbolic) a from a
small representative a' by appending (b-1)'s.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .digitmap import render_digits
from .towerint import (
    Num,
    RunSymbolic,
    TowerInt,
    eval_mod,
    exact_div,
    linear,
    lower,
    lower_bound,
    small_value,
)


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class PreimageSet:
    base: int
    a: Num
    members: tuple[RunSymbolic, ...]
    length: Num
    # set by reduce_preimages: the representative a' and the appended count q
    reduced_from: int | None = None
    q: Num = 0

    def as_ints(self) -> list[int]:
        return [m.to_int() for m in self.members]

    def strings(self) -> list[str]:
        return [m.render() for m in self.members]

    def __len__(self) -> int:
        return len(self.members)


def _check(a: int, b: int) -> None:
    if b < 3:
        raise PreconditionError("preimage sets are defined for b >= 3")
    if a < 1:
        raise PreconditionError("a must be >= 1")


@lru_cache(maxsize=None)
def _tuples(b: int, a: int, length: int, lo: int) -> tuple[tuple[int, ...], ...]:
    """Nondecreasing tuples over lo..b-1 of the given length with square sum a."""
    if length == 0:
        return ((),) if a == 0 else ()
    top = (b - 1) ** 2
    out = []
    for d in range(lo, b):
        rest = a - d * d
        if rest < (length - 1) * d * d:
            break
        if rest > (length - 1) * top:
            continue
        out.extend((d,) + t for t in _tuples(b, rest, length - 1, d))
    return tuple(out)


@lru_cache(maxsize=None)
def shortest_tuples(a: int, b: int) -> tuple[tuple[int, ...], ...]:
    """Digit tuples of the members of the shortest preimage set, ascending."""
    _check(a, b)
    top = (b - 1) ** 2
    length = -(-a // top)
    while True:
        found = _tuples(b, a, length, 1)
        if found:
            return found
        length += 1


def shortest_fully_basic_preimages(a: int, b: int) -> PreimageSet:
    tuples = shortest_tuples(a, b)
    members = tuple(RunSymbolic.from_digits(t, b) for t in tuples)
    return PreimageSet(b, a, members, len(tuples[0]))


@dataclass(frozen=True)
class BaseConstants:
    base: int
    a_star: int
    C: int
    window: int
    # the largest exceptional a sat on the edge of the scanned window
    at_window_edge: bool = False


@lru_cache(maxsize=None)
def compute_base_constants(b: int) -> BaseConstants:
    """Largest a whose shortest preimage set has a member not ending in b-1.

    Scans a up to 2b(b-1)**2, the largest square sum of a number with at
    most 2b digits; beyond it every member is longer than 2b digits and
    so ends in b-1.
    """
    if b < 3:
        raise PreconditionError("base constants are defined for b >= 3")
    window = 2 * b * (b - 1) ** 2
    a_star = 0
    for a in range(1, window + 1):
        if any(t[-1] != b - 1 for t in shortest_tuples(a, b)):
            a_star = a
    return BaseConstants(b, a_star, a_star // (b - 1) ** 2, window, a_star == window)


def _greater_than(a: Num, bound: int) -> bool:
    if isinstance(a, int):
        return a > bound
    if lower_bound(a) > bound:
        return True
    v = small_value(a)
    if v is not None:
        return v > bound
    raise PreconditionError(f"cannot decide whether {a} > {bound}")


def reduce_preimages(a: Num, b: int) -> PreimageSet:
    """Shortest preimage set of a large a, via its representative a'.

    q = floor((a-1)/(b-1)**2) - C and a' = a - (b-1)**2 q; the members
    are those of a' with q digits b-1 appended.
    """
    consts = compute_base_constants(b)
    sq = (b - 1) ** 2
    floor_a = consts.C * sq
    if not _greater_than(a, floor_a):
        raise PreconditionError(f"reduction needs a > C*(b-1)^2 = {floor_a}")
    a = lower(a)
    if isinstance(a, int):
        q: Num = (a - 1) // sq - consts.C
        a_red = a - sq * q
    else:
        a_red = floor_a + 1 + eval_mod(linear([(1, a)], -floor_a - 1), sq)
        q = exact_div(linear([(1, a)], -a_red), sq)
    base_set = shortest_fully_basic_preimages(a_red, b)
    members = tuple(m.append(b - 1, q) for m in base_set.members)
    length = lower(linear([(1, base_set.length), (1, q)]))
    return PreimageSet(b, a, members, length, a_red, q)


def preimages(a: Num, b: int) -> PreimageSet:
    """Direct search for small a, reduction otherwise."""
    consts = compute_base_constants(b)
    a = lower(a)
    if isinstance(a, int) and a <= consts.window:
        return shortest_fully_basic_preimages(a, b)
    return reduce_preimages(a, b)


def strip_member(m: RunSymbolic) -> str:
    runs, _ = m.strip_trailing(m.base - 1)
    if not runs:
        return ""
    if not all(isinstance(c, int) for _, c in runs):
        return RunSymbolic.of(m.base, runs).render()
    return render_digits([d for d, c in runs for _ in range(c)], m.base)


def stripped_preimages(a: Num, b: int) -> frozenset[str]:
    """Members of the shortest preimage set with trailing (b-1)'s removed."""
    a = lower(a)
    if isinstance(a, TowerInt):
        s = reduce_preimages(a, b)
    else:
        _check(a, b)
        s = shortest_fully_basic_preimages(a, b)
    return frozenset(strip_member(m) for m in s.members)


def non_top_digits(digits, b: int) -> int:
    """How many digits differ from b-1."""
    return sum(1 for d in digits if d != b - 1)
