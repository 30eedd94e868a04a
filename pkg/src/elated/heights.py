"""Heights, minimal numbers of each height, and candidate enumeration.

Minimal-height searches walk candidates in increasing order.  Below b**2
every integer is a candidate.  Above it only b-basic numbers are
candidates (fully b-basic ones for the happy map): moving a zero digit
or reordering non-leading digits gives a smaller number with the same
image, hence the same height.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Iterator

from .cycles import attractor_table
from .digitmap import Kind, digit_list, from_digits, step_function
from .search import first_hit
from .towerint import (
    Num,
    RunSymbolic,
    equal_mod_primes,
    exact_div,
    linear,
    lower,
    small_value,
    TowerInt,
)

DEFAULT_LIMIT = 10**15


class LimitExceeded(LookupError):
    pass


class HeightTable:
    """Memoized heights for one (base, exponent, kind).

    ``None`` marks a value that is not attracted to 1.  When ``cache_dir``
    is given the memo is loaded from and saved to an on-disk cache file.
    """

    def __init__(self, b: int, e: int = 2, kind: Kind = "elated", cache_dir: str | Path | None = None):
        self.base = b
        self.exponent = e
        self.kind = kind
        self._step = step_function(kind)
        self._memo: dict[int, int | None] = {}
        self._dirty = False
        self.cache_path = None
        if cache_dir is not None:
            from .cache import cache_path, load_heights

            self.cache_path = cache_path(cache_dir, b, e, kind)
            if self.cache_path.exists():
                self._memo = load_heights(self.cache_path, b, e, kind)
        if not self._memo:
            table = attractor_table(b, e, kind)
            self._memo = {n: (s if rep == 1 else None) for n, (rep, s) in table._table.items()}
            self._dirty = True

    def height(self, n: int) -> int | None:
        memo = self._memo
        if n in memo:
            return memo[n]
        path = []
        x = n
        while x not in memo:
            path.append(x)
            x = self._step(x, self.base, self.exponent)
        h = memo[x]
        if h is None:
            return None
        # only keep modest values; huge starting points are one-offs
        for i, y in enumerate(reversed(path), 1):
            if y.bit_length() <= 64:
                memo[y] = h + i
                self._dirty = True
        return h + len(path)

    __call__ = height

    def items(self):
        return sorted(self._memo.items())

    def flush(self) -> None:
        if self.cache_path is not None and self._dirty:
            from .cache import save_heights

            save_heights(self.cache_path, self.base, self.exponent, self.kind, self._memo)
            self._dirty = False


_TABLES: dict[tuple[int, int, str], HeightTable] = {}
_CACHE_DIR: Path | None = None


def configure_cache(cache_dir: str | Path | None) -> None:
    """Persist height memos under ``cache_dir`` (None turns persistence off)."""
    global _CACHE_DIR
    _CACHE_DIR = None if cache_dir is None else Path(cache_dir)
    _TABLES.clear()


def flush_tables() -> None:
    for table in _TABLES.values():
        table.flush()


def height_table(b: int, e: int = 2, kind: Kind = "elated") -> HeightTable:
    key = (b, e, kind)
    if key not in _TABLES:
        _TABLES[key] = HeightTable(b, e, kind, _CACHE_DIR)
    return _TABLES[key]


def height(n: int, b: int, e: int = 2, kind: Kind = "elated") -> int | None:
    if n < 1:
        raise ValueError(f"height is defined for positive integers, got {n}")
    return height_table(b, e, kind).height(n)


def is_basic(n: int, b: int) -> bool:
    """n > b with nonzero, nondecreasing non-leading digits."""
    if n <= b:
        return False
    ds = digit_list(n, b)
    tail = ds[1:]
    return all(d > 0 for d in tail) and all(x <= y for x, y in zip(tail, tail[1:]))


def is_fully_basic(n: int, b: int) -> bool:
    """All digits nonzero and nondecreasing; single digits qualify."""
    if n < 1:
        return False
    ds = digit_list(n, b)
    return ds[0] > 0 and all(d > 0 for d in ds) and all(x <= y for x, y in zip(ds, ds[1:]))


def _blocks(b: int, fully: bool) -> Iterator[tuple[int, int]]:
    """(length, leading digit) blocks of candidates with >= 3 digits, ascending."""
    length = 3
    while True:
        for lead in range(1, b):
            yield length, lead
        length += 1


def _block_tails(b: int, length: int, lead: int, fully: bool):
    lo = lead if fully else 1
    return combinations_with_replacement(range(lo, b), length - 1)


def _block_min_value(b: int, length: int, lead: int, fully: bool) -> int:
    lo = lead if fully else 1
    return from_digits([lead] + [lo] * (length - 1), b)


def enumerate_candidates(b: int, limit: int, *, fully: bool = False) -> Iterator[int]:
    """Every n < b**2, then every b-basic (or fully b-basic) n <= limit, ascending."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    for n in range(1, min(b * b, limit + 1)):
        yield n
    for length, lead in _blocks(b, fully):
        if _block_min_value(b, length, lead, fully) > limit:
            return
        prefix = lead * b ** (length - 1)
        for tail in _block_tails(b, length, lead, fully):
            n = prefix + from_digits(tail, b)
            if n > limit:
                break
            yield n


def _scan_block(args) -> int | None:
    """Smallest candidate in the block whose height is k, or None."""
    b, e, kind, k, length, lead, limit, fully = args
    table = height_table(b, e, kind)
    powers = [d**e for d in range(b)]
    want = k - 1
    seen: dict[int, bool] = {}
    prefix = lead * b ** (length - 1)
    lead_pow = powers[lead]
    for tail in _block_tails(b, length, lead, fully):
        s = sum(powers[d] for d in tail) + lead_pow
        img = lead * s if kind == "elated" else s
        hit = seen.get(img)
        if hit is None:
            hit = table.height(img) == want
            seen[img] = hit
        if hit:
            n = prefix + from_digits(tail, b)
            if n > limit:
                return None
            return n
    return None


def _search_min_height(
    k: int, b: int, e: int, kind: Kind, limit: int, fully: bool, workers: int
) -> int:
    table = height_table(b, e, kind)
    for n in range(1, min(b * b, limit + 1)):
        if table.height(n) == k:
            return n

    def jobs():
        for length, lead in _blocks(b, fully):
            if _block_min_value(b, length, lead, fully) > limit:
                return
            yield (b, e, kind, k, length, lead, limit, fully)

    hit = first_hit(_scan_block, jobs(), workers)
    if hit is None:
        raise LimitExceeded(f"no {kind} number of height {k} in base {b} up to {limit}")
    return hit[1]


@dataclass(frozen=True)
class EpsilonRecord:
    base: int
    k: int
    value: Num | RunSymbolic
    trajectory: tuple[int, ...] = ()
    method: str = "search"
    search_limit: int | None = None
    kind: str = "elated"
    notes: tuple[str, ...] = field(default=())

    @property
    def digits(self) -> RunSymbolic:
        if isinstance(self.value, RunSymbolic):
            return self.value
        return RunSymbolic.from_int(self.value, self.base)


def _trajectory(n: int, b: int, kind: Kind) -> tuple[int, ...]:
    step = step_function(kind)
    out = [n]
    while out[-1] != 1:
        out.append(step(out[-1], b, 2))
    return tuple(out)


def epsilon(k: int, b: int, *, limit: int | None = None, workers: int = 1) -> EpsilonRecord:
    """The smallest b-elated number of height k, found by candidate search."""
    if k < 0:
        raise ValueError("height must be >= 0")
    if b < 2:
        raise ValueError("base must be >= 2")
    limit = DEFAULT_LIMIT if limit is None else limit
    if k == 0:
        return EpsilonRecord(b, 0, 1, (1,), "definition", limit)
    if k == 1:
        return EpsilonRecord(b, 1, b, (b, 1), "definition", limit)
    n = _search_min_height(k, b, 2, "elated", limit, False, workers)
    return EpsilonRecord(b, k, n, _trajectory(n, b, "elated"), "search", limit)


def sigma(k: int, b: int, *, limit: int | None = None, workers: int = 1) -> int:
    """The smallest b-happy number of height k."""
    if k < 0:
        raise ValueError("height must be >= 0")
    limit = DEFAULT_LIMIT if limit is None else limit
    if k == 0:
        return 1
    return _search_min_height(k, b, 2, "happy", limit, True, workers)


def basic_numbers_of_height(k: int, b: int, below: int) -> list[int]:
    """All b-basic numbers below ``below`` whose elated height is k."""
    table = height_table(b)
    out = []
    for n in enumerate_candidates(b, below - 1):
        if is_basic(n, b) and table.height(n) == k:
            out.append(n)
    return out


# --------------------------------------------------------------------------
# closed forms in bases 2 and 3


def epsilon_base2(k: int) -> RunSymbolic:
    """Smallest 2-elated number of height k: a run of ones of length eps(k-1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return base2_chain(k)[0]


def base2_chain(k: int) -> list[RunSymbolic]:
    """[eps_k, eps_(k-1), ..., eps_1] in run form."""
    cur = RunSymbolic.from_int(2, 2)
    chain = [cur]
    for _ in range(k - 1):
        cur = RunSymbolic.of(2, [(1, cur.value())])
        chain.append(cur)
    return chain[::-1]


def epsilon_base3(k: int) -> RunSymbolic:
    """Smallest 3-elated number of height k >= 2: digit 1 then (eps(k-1)-1)/4 twos."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return base3_chain(k)[0]


def base3_chain(k: int) -> list[RunSymbolic]:
    """[eps_k, ..., eps_2] in run form; each step checks eps = 1 (mod 4)."""
    cur = RunSymbolic.from_int(13, 3)
    chain = [cur]
    for _ in range(k - 2):
        prev = cur.value()
        if (prev % 4) != 1:
            raise ArithmeticError("expected eps_k = 1 (mod 4)")
        cur = RunSymbolic.of(3, [(1, 1), (2, exact_div(linear([(1, prev)], -1), 4))])
        chain.append(cur)
    return chain[::-1]


def run_height(x: RunSymbolic, b: int | None = None, trials: int = 20) -> int | None:
    """Elated height of a run-form number.

    Symbolic first steps are evaluated from the run form; once an image
    is small it is finished with the memoized table.
    """
    b = x.base if b is None else b
    steps = 0
    cur: Num | RunSymbolic = x
    while isinstance(cur, RunSymbolic):
        img = lower(cur.elated_step())
        steps += 1
        if isinstance(img, TowerInt):
            v = small_value(img)
            if v is None:
                raise ArithmeticError("image too large to continue without a run form")
            img = v
        cur = img
    if cur == 1:
        return steps
    h = height(cur, b)
    return None if h is None else steps + h


def verify_chain(chain: list[RunSymbolic], trials: int = 20) -> int:
    """Check E(chain[i]) == chain[i+1] for all i and return the height of chain[0].

    The last entry must be small enough for the exact height table.
    """
    for hi, lo in zip(chain, chain[1:]):
        if not equal_mod_primes(hi.elated_step(), lo.value(), trials):
            raise ArithmeticError(f"E({hi}) != {lo}")
    tail = chain[-1]
    h = height(tail.to_int(), tail.base)
    if h is None:
        raise ArithmeticError(f"{tail} is not elated")
    return h + len(chain) - 1
