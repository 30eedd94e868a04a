"""Cycles of the elated (and happy) maps and attractor classification.

For exponent 2 every a >= b**3 satisfies step(a) < a, so every orbit
drops below b**3 and every cycle has a member there.  For other
exponents the caller supplies such a descent bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .digitmap import Kind, render, step_function, _check_base, _check_exponent
from .search import parallel_map


@dataclass(frozen=True)
class Cycle:
    base: int
    exponent: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.members)) != len(self.members):
            raise ValueError(f"cycle members not distinct: {self.members}")

    @classmethod
    def canonical(cls, base: int, exponent: int, members) -> Cycle:
        members = tuple(members)
        i = members.index(min(members))
        return cls(base, exponent, members[i:] + members[:i])

    @property
    def representative(self) -> int:
        return self.members[0]

    def rendered(self) -> tuple[str, ...]:
        return tuple(render(m, self.base) for m in self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class CycleSet:
    base: int
    exponent: int
    cycles: tuple[Cycle, ...]
    kind: str = "elated"
    # reference tables only cover bases up to 10
    in_reference_range: bool = field(default=False, compare=False)

    @property
    def members(self) -> frozenset[int]:
        return frozenset(m for c in self.cycles for m in c.members)

    def cycle_of(self, n: int) -> Cycle | None:
        for c in self.cycles:
            if n in c.members:
                return c
        return None

    def rendered(self) -> list[tuple[str, ...]]:
        return [c.rendered() for c in self.cycles]

    def text(self) -> str:
        return ", ".join("(" + ", ".join(c.rendered()) + ")" for c in self.cycles)


def descent_bound(b: int, e: int = 2, bound: int | None = None) -> int:
    """A value B with step(a) < a for every a >= B.

    Exponent 2 uses b**3 (valid for both maps).  Other exponents need an
    explicit bound, which is spot-checked before use.
    """
    _check_base(b)
    _check_exponent(e)
    if bound is not None:
        _spot_check_bound(b, e, bound)
        return bound
    if e == 2:
        return b**3
    raise ValueError(
        f"no descent bound known for exponent {e}; pass an explicit bound B "
        "with E(a) < a for all a >= B"
    )


def _spot_check_bound(b: int, e: int, bound: int, samples: int = 2000) -> None:
    if bound < 2:
        raise ValueError("descent bound must be >= 2")
    step = step_function("elated")
    rng = random.Random(bound * 1_000_003 + b * 101 + e)
    probes = list(range(bound, bound + 1000))
    probes += [rng.randrange(bound, bound * b**4) for _ in range(samples)]
    for a in probes:
        if step(a, b, e) >= a:
            raise ValueError(f"descent bound {bound} fails at a = {a} (base {b}, exponent {e})")


def _cycles_in_range(args) -> set[tuple[int, ...]]:
    b, e, kind, lo, hi = args
    step = step_function(kind)
    found: set[tuple[int, ...]] = set()
    done: set[int] = set()
    for a in range(lo, hi):
        path: dict[int, int] = {}
        order: list[int] = []
        x = a
        while x not in done and x not in path:
            path[x] = len(order)
            order.append(x)
            x = step(x, b, e)
        if x in path:
            cyc = order[path[x]:]
            i = cyc.index(min(cyc))
            found.add(tuple(cyc[i:] + cyc[:i]))
        done.update(order)
    return found


@lru_cache(maxsize=None)
def _enumerate(b: int, e: int, kind: str, bound: int, workers: int) -> CycleSet:
    chunks = max(1, workers * 4) if workers > 1 else 1
    edges = [1 + (bound - 1) * i // chunks for i in range(chunks + 1)]
    jobs = [(b, e, kind, edges[i], edges[i + 1]) for i in range(chunks)]
    found: set[tuple[int, ...]] = set()
    for part in parallel_map(_cycles_in_range, jobs, workers):
        found |= part
    cycles = tuple(Cycle(b, e, m) for m in sorted(found))
    return CycleSet(b, e, cycles, kind, in_reference_range=(e == 2 and kind == "elated" and b <= 10))


def enumerate_cycles(
    b: int,
    e: int = 2,
    *,
    bound: int | None = None,
    kind: Kind = "elated",
    workers: int = 1,
) -> CycleSet:
    """All cycles of the step map, each rotated to start at its minimum.

    Every a below the descent bound is iterated until it repeats; the
    result does not depend on ``workers``.
    """
    B = descent_bound(b, e, bound)
    return _enumerate(b, e, kind, B, max(1, workers))


class AttractorTable:
    """Memoized (representative, steps) for every value reached from [1, bound)."""

    def __init__(self, b: int, e: int = 2, kind: Kind = "elated", bound: int | None = None):
        self.base = b
        self.exponent = e
        self.kind = kind
        self.bound = descent_bound(b, e, bound)
        self.cycles = _enumerate(b, e, kind, self.bound, 1)
        self._step = step_function(kind)
        self._table: dict[int, tuple[int, int]] = {}
        for c in self.cycles.cycles:
            for m in c.members:
                self._table[m] = (c.representative, 0)
        for a in range(1, self.bound):
            self._resolve(a)

    def _resolve(self, a: int) -> tuple[int, int]:
        table = self._table
        path = []
        x = a
        while x not in table:
            path.append(x)
            x = self._step(x, self.base, self.exponent)
        rep, steps = table[x]
        for y in reversed(path):
            steps += 1
            table[y] = (rep, steps)
        return table[a]

    def lookup(self, n: int) -> tuple[int, int]:
        if n < 1:
            raise ValueError(f"attractor is defined for positive integers, got {n}")
        hit = self._table.get(n)
        if hit is not None:
            return hit
        # above the bound the map strictly descends into the table
        steps = 0
        x = n
        while x not in self._table:
            x = self._step(x, self.base, self.exponent)
            steps += 1
        rep, more = self._table[x]
        return rep, steps + more

    def __contains__(self, n: int) -> bool:
        return n in self._table


@lru_cache(maxsize=64)
def attractor_table(b: int, e: int = 2, kind: Kind = "elated", bound: int | None = None) -> AttractorTable:
    return AttractorTable(b, e, kind, bound)


def attractor(n: int, b: int, e: int = 2, *, kind: Kind = "elated", bound: int | None = None) -> tuple[int, int]:
    """(minimum member of the cycle reached, steps until the cycle is first touched)."""
    return attractor_table(b, e, kind, bound).lookup(n)


def is_elated(n: int, b: int, e: int = 2, *, bound: int | None = None) -> bool:
    return attractor(n, b, e, bound=bound)[0] == 1


def is_happy(n: int, b: int, e: int = 2, *, bound: int | None = None) -> bool:
    return attractor(n, b, e, kind="happy", bound=bound)[0] == 1


def is_attracted_to(n: int, u: int, b: int, e: int = 2, *, kind: Kind = "elated") -> bool:
    """True when some iterate of ``n`` (after at least one step) equals ``u``."""
    table = attractor_table(b, e, kind)
    cyc = table.cycles.cycle_of(u)
    if cyc is None:
        raise ValueError(f"{u} is not on a cycle in base {b}")
    return table.lookup(n)[0] == cyc.representative
