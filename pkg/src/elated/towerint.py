"""Symbolic integers that are too large to write down.

A :class:`TowerInt` is an immutable expression tree over nonnegative
integers.  Its exact value is never needed for the two things we do with
it: residues modulo a given m (:func:`eval_mod`) and cheap certified
bounds (:func:`lower_bound`, :func:`upper_bound`).  Equality of two trees
is decided by agreement modulo a fixed set of 63-bit primes
(:func:`equal_mod_primes`), or exactly when both sides are small.

:class:`RunSymbolic` is a base-b digit string stored as runs
``(digit, count)`` whose counts may themselves be TowerInts, e.g.
``8157[9^13888887]``.

Builders fold to plain ``int`` whenever the value is small, so code
working with these objects handles ``int | TowerInt`` throughout.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

import gmpy2
from sympy import factorint, isprime

# Literal folding and bound tracking stop above this many bits.
CAP_BITS = 8192
DEFAULT_DIGIT_CAP = 10**7
DEFAULT_PRIMES = 20


class TowerError(ArithmeticError):
    pass


class DivisibilityError(TowerError):
    """An ExactDiv numerator is not divisible by its divisor."""


class OrderReductionError(TowerError):
    """Residue of b**e modulo m needs a lower bound on e that is not available."""


class NegativeValueError(TowerError):
    pass


class ExceedsCapError(TowerError):
    pass


Num = Union[int, "TowerInt"]


class TowerInt:
    """Base class; see the node classes below."""

    __slots__ = ()

    def __add__(self, other: Num) -> Num:
        return linear([(1, self), (1, other)])

    __radd__ = __add__

    def __sub__(self, other: Num) -> Num:
        return linear([(1, self), (-1, other)])

    def __rsub__(self, other: Num) -> Num:
        return linear([(1, other), (-1, self)])

    def __mul__(self, other: Num) -> Num:
        return product([self, other])

    __rmul__ = __mul__

    def __floordiv__(self, d: int) -> Num:
        # only exact division is supported
        return exact_div(self, d)

    def __mod__(self, m: int) -> int:
        return eval_mod(self, m)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, eq=True)
class Literal(TowerInt):
    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise NegativeValueError(f"negative literal {self.value}")


@dataclass(frozen=True, eq=True)
class Sum(TowerInt):
    terms: tuple[tuple[int, TowerInt], ...]
    const: int = 0


@dataclass(frozen=True, eq=True)
class Product(TowerInt):
    factors: tuple[TowerInt, ...]


@dataclass(frozen=True, eq=True)
class PowBase(TowerInt):
    base: int
    exponent: TowerInt


@dataclass(frozen=True, eq=True)
class Repunit(TowerInt):
    """``count`` ones followed by ``r`` zeros in base ``base``."""

    r: int
    base: int
    count: TowerInt


@dataclass(frozen=True, eq=True)
class ExactDiv(TowerInt):
    numerator: TowerInt
    divisor: int


# --------------------------------------------------------------------------
# builders


def lift(x: Num) -> TowerInt:
    if isinstance(x, TowerInt):
        return x
    return Literal(int(x))


def lower(x: Num) -> Num:
    """Replace a literal node by its int."""
    if isinstance(x, Literal):
        return x.value
    if isinstance(x, TowerInt):
        return x
    return int(x)


def _small(v: int) -> bool:
    return v.bit_length() <= CAP_BITS


def linear(terms: Iterable[tuple[int, Num]], const: int = 0) -> Num:
    """``const + sum(c * x)``; nested sums are flattened, equal terms merged."""
    acc: dict[TowerInt, int] = {}
    order: list[TowerInt] = []

    def add(c: int, x: Num) -> None:
        nonlocal const
        if c == 0:
            return
        x = lower(x)
        if isinstance(x, int):
            const += c * x
        elif isinstance(x, Sum):
            const += c * x.const
            for cc, t in x.terms:
                add(c * cc, t)
        else:
            if x not in acc:
                acc[x] = 0
                order.append(x)
            acc[x] += c

    for c, x in terms:
        add(c, x)
    kept = tuple((acc[x], x) for x in order if acc[x] != 0)
    if not kept:
        if const < 0:
            raise NegativeValueError(f"sum evaluates to {const}")
        return const
    if len(kept) == 1 and kept[0][0] == 1 and const == 0:
        return kept[0][1]
    node = Sum(kept, const)
    lo, _ = bounds(node)
    if lo is None or lo < 0:
        raise NegativeValueError(f"cannot certify {to_text(node)} >= 0")
    return node


def product(factors: Iterable[Num]) -> Num:
    coef = 1
    nodes: list[TowerInt] = []
    for f in factors:
        f = lower(f)
        if isinstance(f, int):
            if f < 0:
                raise NegativeValueError("negative factor")
            coef *= f
        elif isinstance(f, Product):
            nodes.extend(f.factors)
        else:
            nodes.append(f)
    if coef == 0:
        return 0
    if not nodes:
        return coef
    core: TowerInt = nodes[0] if len(nodes) == 1 else Product(tuple(nodes))
    if coef == 1:
        return core
    return linear([(coef, core)])


def pow_base(base: int, exponent: Num) -> Num:
    if base < 2:
        raise ValueError("pow_base needs base >= 2")
    e = lower(exponent)
    if isinstance(e, int):
        if e < 0:
            raise NegativeValueError("negative exponent")
        if e * base.bit_length() <= CAP_BITS:
            return base**e
    return PowBase(base, lift(e))


def repunit_num(r: int, base: int, count: Num) -> Num:
    """``count`` ones followed by ``r`` zeros; folds to int when small."""
    if r < 0:
        raise ValueError("r must be >= 0")
    x = lower(count)
    if isinstance(x, int):
        if x < 0:
            raise NegativeValueError("negative repunit count")
        if (x + r) * base.bit_length() <= CAP_BITS:
            return base**r * (base**x - 1) // (base - 1)
    return Repunit(r, base, lift(x))


def exact_div(x: Num, d: int) -> Num:
    """``x / d``, refusing unless ``d`` divides ``x`` (checked by residue)."""
    if d < 1:
        raise ValueError("divisor must be positive")
    x = lower(x)
    if d == 1:
        return x
    if isinstance(x, int):
        q, r = divmod(x, d)
        if r:
            raise DivisibilityError(f"{d} does not divide {x}")
        return q
    r = eval_mod(x, d)
    if r:
        raise DivisibilityError(f"{d} does not divide {to_text(x)} (remainder {r})")
    return ExactDiv(x, d)


# --------------------------------------------------------------------------
# bounds


def _clamp(v: int) -> int:
    cap = 1 << CAP_BITS
    return cap if v > cap else v


def _exp_cap(base: int) -> int:
    return CAP_BITS // base.bit_length()


@lru_cache(maxsize=None)
def bounds(x: TowerInt) -> tuple[int | None, int | None]:
    """(lo, hi) with lo <= value <= hi; None marks an unknown side.

    Lower bounds are clamped to 2**CAP_BITS (still valid); upper bounds
    above that are reported as None.
    """
    if isinstance(x, Literal):
        return x.value, (x.value if _small(x.value) else None)
    if isinstance(x, Sum):
        lo: int | None = x.const
        hi: int | None = x.const
        for c, t in x.terms:
            tlo, thi = bounds(t)
            if c > 0:
                lo = None if lo is None or tlo is None else lo + c * tlo
                hi = None if hi is None or thi is None else hi + c * thi
            else:
                lo = None if lo is None or thi is None else lo + c * thi
                hi = None if hi is None or tlo is None else hi + c * tlo
        if lo is not None:
            lo = _clamp(lo)
        if hi is not None and not _small(hi):
            hi = None
        return lo, hi
    if isinstance(x, Product):
        lo, hi = 1, 1
        for f in x.factors:
            flo, fhi = bounds(f)
            lo = _clamp(lo * max(flo or 0, 0))
            hi = None if hi is None or fhi is None else hi * fhi
            if hi is not None and not _small(hi):
                hi = None
        return lo, hi
    if isinstance(x, PowBase):
        elo, ehi = bounds(x.exponent)
        cap = _exp_cap(x.base)
        lo = x.base ** min(max(elo or 0, 0), cap)
        hi = x.base**ehi if ehi is not None and ehi <= cap else None
        return lo, hi
    if isinstance(x, Repunit):
        clo, chi = bounds(x.count)
        cap = _exp_cap(x.base)
        b, r = x.base, x.r
        lo = _clamp(b**r * (b ** min(max(clo or 0, 0), cap) - 1) // (b - 1))
        hi = b**r * (b**chi - 1) // (b - 1) if chi is not None and chi + r <= cap else None
        return lo, hi
    if isinstance(x, ExactDiv):
        nlo, nhi = bounds(x.numerator)
        lo = None if nlo is None else -(-nlo // x.divisor)
        hi = None if nhi is None else nhi // x.divisor
        return lo, hi
    raise TypeError(f"not a TowerInt: {x!r}")


def lower_bound(x: Num) -> int:
    if isinstance(x, int):
        return x
    lo, _ = bounds(x)
    return max(lo or 0, 0)


def upper_bound(x: Num) -> int | None:
    if isinstance(x, int):
        return x
    return bounds(x)[1]


@lru_cache(maxsize=None)
def small_value(x: TowerInt) -> int | None:
    """Exact value when it is certified to fit in CAP_BITS, else None."""
    if bounds(x)[1] is None:
        return None
    if isinstance(x, Literal):
        return x.value
    if isinstance(x, Sum):
        total = x.const
        for c, t in x.terms:
            v = small_value(t)
            if v is None:
                return None
            total += c * v
        return total
    if isinstance(x, Product):
        out = 1
        for f in x.factors:
            v = small_value(f)
            if v is None:
                return None
            out *= v
        return out
    if isinstance(x, PowBase):
        e = small_value(x.exponent)
        return None if e is None else x.base**e
    if isinstance(x, Repunit):
        c = small_value(x.count)
        return None if c is None else x.base**x.r * (x.base**c - 1) // (x.base - 1)
    if isinstance(x, ExactDiv):
        n = small_value(x.numerator)
        return None if n is None else n // x.divisor
    raise TypeError(f"not a TowerInt: {x!r}")


# --------------------------------------------------------------------------
# modular evaluation


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


def carmichael(n: int) -> int:
    lam = 1
    for p, k in _factor(n):
        if p == 2:
            t = 1 if k == 1 else 2 if k == 2 else 2 ** (k - 2)
        else:
            t = (p - 1) * p ** (k - 1)
        lam = lam * t // math.gcd(lam, t)
    return lam


@lru_cache(maxsize=None)
def multiplicative_order(base: int, m: int) -> int:
    """Order of ``base`` modulo ``m`` (requires gcd(base, m) == 1)."""
    if m == 1:
        return 1
    if math.gcd(base, m) != 1:
        raise ValueError(f"{base} is not a unit modulo {m}")
    order = carmichael(m)
    for q, _ in _factor(order):
        while order % q == 0 and pow(base, order // q, m) == 1:
            order //= q
    return order


@dataclass(frozen=True)
class ModContext:
    """Splits ``modulus`` = ``shared`` * ``coprime`` with respect to ``base``.

    ``shared`` is the largest divisor built from primes of ``base``;
    ``base**e`` vanishes modulo it once ``e >= threshold``.  ``order`` is
    the multiplicative order of ``base`` modulo ``coprime``.  For base 10
    ``shared`` is 2**alpha * 5**beta.
    """

    modulus: int
    base: int
    shared: int
    coprime: int
    threshold: int
    order: int

    @property
    def alpha(self) -> int:
        return _valuation(self.shared, 2)

    @property
    def beta(self) -> int:
        return _valuation(self.shared, 5)


def _valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0 and n:
        n //= p
        k += 1
    return k


@lru_cache(maxsize=None)
def mod_context(modulus: int, base: int = 10) -> ModContext:
    if modulus < 1:
        raise ValueError("modulus must be positive")
    shared, threshold = 1, 0
    for p, k in _factor(modulus) if modulus > 1 else ():
        if base % p == 0:
            shared *= p**k
            vb = _valuation(base, p)
            threshold = max(threshold, -(-k // vb))
    coprime = modulus // shared
    return ModContext(modulus, base, shared, coprime, threshold, multiplicative_order(base, coprime))


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    if m1 == 1:
        return r2 % m2
    if m2 == 1:
        return r1 % m1
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


def _pow_mod(base: int, exponent: TowerInt, m: int) -> int:
    if m == 1:
        return 0
    e = small_value(exponent)
    if e is not None:
        return pow(base, e, m)
    ctx = mod_context(m, base)
    if ctx.shared > 1 and lower_bound(exponent) < ctx.threshold:
        raise OrderReductionError(
            f"need exponent >= {ctx.threshold} to reduce {base}^e modulo {m}"
        )
    r2 = pow(base, eval_mod(exponent, ctx.order), ctx.coprime) if ctx.coprime > 1 else 0
    return _crt(0, ctx.shared, r2, ctx.coprime)


def eval_mod(x: Num, m: int) -> int:
    """Residue of the exact value of ``x`` modulo ``m``."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if isinstance(x, int):
        return x % m
    return _eval_mod(x, m)


@lru_cache(maxsize=None)
def _eval_mod(x: TowerInt, m: int) -> int:
    if m == 1:
        return 0
    if isinstance(x, Literal):
        return x.value % m
    if isinstance(x, Sum):
        return (x.const + sum(c * _eval_mod(t, m) for c, t in x.terms)) % m
    if isinstance(x, Product):
        out = 1
        for f in x.factors:
            out = out * _eval_mod(f, m) % m
        return out
    if isinstance(x, PowBase):
        return _pow_mod(x.base, x.exponent, m)
    if isinstance(x, Repunit):
        b = x.base
        big = m * (b - 1)
        num = pow(b, x.r, big) * ((_pow_mod(b, x.count, big) - 1) % big) % big
        return (num // (b - 1)) % m
    if isinstance(x, ExactDiv):
        d = x.divisor
        if math.gcd(d, m) == 1:
            return _eval_mod(x.numerator, m) * pow(d, -1, m) % m
        r = _eval_mod(x.numerator, d * m)
        if r % d:
            raise DivisibilityError(f"{d} does not divide {to_text(x.numerator)}")
        return (r // d) % m
    raise TypeError(f"not a TowerInt: {x!r}")


# --------------------------------------------------------------------------
# exact evaluation


def _digits_estimate(v) -> int:
    return int(gmpy2.mpz(v).num_digits(10))


def _scaled_digits(e, base: int) -> float:
    if e.bit_length() > 60:
        return math.inf
    return float(e) * math.log10(base)


def eval_exact(x: Num, digit_cap: int = DEFAULT_DIGIT_CAP) -> int:
    """The exact value, refusing (never truncating) above ``digit_cap`` digits."""
    if isinstance(x, int):
        return x
    memo: dict[TowerInt, gmpy2.mpz] = {}

    def check(digits: float) -> None:
        if digits > digit_cap:
            raise ExceedsCapError(f"value needs more than {digit_cap} digits")

    def ev(node: TowerInt) -> gmpy2.mpz:
        if node in memo:
            return memo[node]
        if isinstance(node, Literal):
            v = gmpy2.mpz(node.value)
        elif isinstance(node, Sum):
            parts = [(c, ev(t)) for c, t in node.terms]
            check(max((_digits_estimate(p) for _, p in parts), default=0) + 2)
            v = gmpy2.mpz(node.const) + sum(c * p for c, p in parts)
        elif isinstance(node, Product):
            parts = [ev(f) for f in node.factors]
            check(sum(_digits_estimate(p) for p in parts))
            v = gmpy2.mpz(1)
            for p in parts:
                v *= p
        elif isinstance(node, PowBase):
            e = ev(node.exponent)
            check(_scaled_digits(e, node.base))
            v = gmpy2.mpz(node.base) ** int(e)
        elif isinstance(node, Repunit):
            c = ev(node.count)
            check(_scaled_digits(c + node.r, node.base))
            b = gmpy2.mpz(node.base)
            v = b ** node.r * (b ** int(c) - 1) // (b - 1)
        elif isinstance(node, ExactDiv):
            n = ev(node.numerator)
            q, r = gmpy2.f_divmod(n, node.divisor)
            if r:
                raise DivisibilityError(f"{node.divisor} does not divide numerator")
            v = q
        else:
            raise TypeError(f"not a TowerInt: {node!r}")
        if v < 0:
            raise NegativeValueError(f"negative intermediate in {to_text(node)}")
        memo[node] = v
        return v

    return int(ev(x))


# --------------------------------------------------------------------------
# equality by residues


@lru_cache(maxsize=None)
def verification_primes(count: int = DEFAULT_PRIMES, seed: int = 0) -> tuple[int, ...]:
    """Deterministic distinct primes in [2**62, 2**63)."""
    rng = random.Random(0x5EED + seed)
    out: list[int] = []
    while len(out) < count:
        p = rng.randrange(1 << 62, 1 << 63) | 1
        if p not in out and isprime(p):
            out.append(p)
    return tuple(out)


def equal_mod_primes(x: Num, y: Num, trials: int = DEFAULT_PRIMES, seed: int = 0) -> bool:
    """True when x and y agree modulo ``trials`` verification primes.

    Exact comparison is used when both values are small.  A False answer
    is always correct; a True answer can only be wrong if x - y is a
    nonzero multiple of every prime used.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    xs = x if isinstance(x, int) else small_value(x)
    ys = y if isinstance(y, int) else small_value(y)
    if xs is not None and ys is not None:
        return xs == ys
    return all(eval_mod(x, p) == eval_mod(y, p) for p in verification_primes(trials, seed))


# --------------------------------------------------------------------------
# text and JSON


def _num_text(v: int) -> str:
    s = str(v) if v.bit_length() < 4000 else f"<{_digits_estimate(v)}-digit integer>"
    return s


def to_text(x: Num) -> str:
    if isinstance(x, int):
        return _num_text(x)
    if isinstance(x, Literal):
        return _num_text(x.value)
    if isinstance(x, Sum):
        parts = []
        for c, t in x.terms:
            body = to_text(t)
            if c == 1:
                parts.append(f"+{body}")
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'}{abs(c)}*{body}")
        if x.const:
            parts.append(f"{'+' if x.const > 0 else '-'}{abs(x.const)}")
        s = "".join(parts)
        return "(" + (s[1:] if s.startswith("+") else s) + ")"
    if isinstance(x, Product):
        return "*".join(to_text(f) for f in x.factors)
    if isinstance(x, PowBase):
        return f"{x.base}^{to_text(x.exponent)}"
    if isinstance(x, Repunit):
        return f"R[{x.r},{x.base}]({to_text(x.count)})"
    if isinstance(x, ExactDiv):
        return f"({to_text(x.numerator)}/{x.divisor})"
    raise TypeError(f"not a TowerInt: {x!r}")


def _dec(v: int) -> str:
    from .digitmap import decimal_str

    return decimal_str(v)


def to_json(x: Num) -> dict:
    if isinstance(x, int):
        return {"op": "lit", "value": _dec(x)}
    if isinstance(x, Literal):
        return {"op": "lit", "value": _dec(x.value)}
    if isinstance(x, Sum):
        return {
            "op": "sum",
            "const": str(x.const),
            "terms": [{"coef": str(c), "arg": to_json(t)} for c, t in x.terms],
        }
    if isinstance(x, Product):
        return {"op": "prod", "args": [to_json(f) for f in x.factors]}
    if isinstance(x, PowBase):
        return {"op": "pow", "base": x.base, "exp": to_json(x.exponent)}
    if isinstance(x, Repunit):
        return {"op": "repunit", "r": x.r, "base": x.base, "count": to_json(x.count)}
    if isinstance(x, ExactDiv):
        return {"op": "div", "num": to_json(x.numerator), "by": x.divisor}
    raise TypeError(f"not a TowerInt: {x!r}")


def from_json(obj: dict) -> Num:
    """Rebuild through the checked builders, so divisibility is re-verified."""
    op = obj["op"]
    if op == "lit":
        return int(gmpy2.mpz(obj["value"]))
    if op == "sum":
        return linear([(int(t["coef"]), from_json(t["arg"])) for t in obj["terms"]], int(obj["const"]))
    if op == "prod":
        return product(from_json(a) for a in obj["args"])
    if op == "pow":
        return pow_base(int(obj["base"]), from_json(obj["exp"]))
    if op == "repunit":
        return repunit_num(int(obj["r"]), int(obj["base"]), from_json(obj["count"]))
    if op == "div":
        return exact_div(from_json(obj["num"]), int(obj["by"]))
    raise ValueError(f"unknown TowerInt op {op!r}")


# --------------------------------------------------------------------------
# run-length digit strings


Run = tuple[int, Num]


@dataclass(frozen=True)
class RunSymbolic:
    """Base-b digit string as ``(digit, count)`` runs, most significant first.

    Use :meth:`of` to build from arbitrary runs; the constructor expects
    the normalized form (no empty runs, adjacent digits distinct).
    """

    base: int
    runs: tuple[Run, ...]

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError("base must be >= 2")
        if not self.runs:
            raise ValueError("empty digit string")
        if self.runs[0][0] == 0:
            raise ValueError("leading digit must be nonzero")
        prev = None
        for d, c in self.runs:
            if not 0 <= d < self.base:
                raise ValueError(f"digit {d} out of range for base {self.base}")
            if d == prev:
                raise ValueError("adjacent runs must have distinct digits")
            if lower_bound(c) < 1:
                raise ValueError(f"run count {to_text(c)} not certified >= 1")
            prev = d

    @classmethod
    def of(cls, base: int, runs: Iterable[tuple[int, Num]]) -> RunSymbolic:
        out: list[list] = []
        for d, c in runs:
            c = lower(c)
            if isinstance(c, int) and c == 0:
                continue
            if out and out[-1][0] == d:
                out[-1][1] = lower(out[-1][1] + c)
            else:
                out.append([d, c])
        return cls(base, tuple((d, c) for d, c in out))

    @classmethod
    def from_digits(cls, digits: Iterable[int], base: int) -> RunSymbolic:
        return cls.of(base, ((d, 1) for d in digits))

    @classmethod
    def from_int(cls, n: int, base: int) -> RunSymbolic:
        from .digitmap import digit_list

        if n < 1:
            raise ValueError("RunSymbolic holds positive integers only")
        return cls.from_digits(digit_list(n, base), base)

    @property
    def leading_digit(self) -> int:
        return self.runs[0][0]

    @property
    def is_concrete(self) -> bool:
        return all(isinstance(c, int) for _, c in self.runs)

    def length(self) -> Num:
        return linear((1, c) for _, c in self.runs)

    def power_sum(self, e: int = 2) -> Num:
        return linear((d**e, c) for d, c in self.runs)

    def happy_step(self, e: int = 2) -> Num:
        return self.power_sum(e)

    def elated_step(self, e: int = 2) -> Num:
        return product([self.leading_digit, self.power_sum(e)])

    def value(self) -> Num:
        b = self.base
        acc: Num = 0
        for d, c in self.runs:
            acc = linear([(1, product([acc, pow_base(b, c)])), (d, repunit_num(0, b, c))])
        return acc

    def to_int(self, digit_cap: int = DEFAULT_DIGIT_CAP) -> int:
        if self.is_concrete:
            total = sum(c for _, c in self.runs)
            if total > digit_cap:
                raise ExceedsCapError(f"{total} digits exceeds cap {digit_cap}")
            b = gmpy2.mpz(self.base)
            v = gmpy2.mpz(0)
            for d, c in self.runs:
                p = b**c
                v = v * p + d * (p - 1) // (b - 1)
            return int(v)
        return eval_exact(self.value(), digit_cap)

    def digits(self) -> tuple[int, ...]:
        if not self.is_concrete:
            raise ExceedsCapError("symbolic run counts cannot be expanded")
        return tuple(d for d, c in self.runs for _ in range(c))

    def append(self, digit: int, count: Num = 1) -> RunSymbolic:
        return RunSymbolic.of(self.base, self.runs + ((digit, count),))

    def prepend(self, digit: int, count: Num = 1) -> RunSymbolic:
        return RunSymbolic.of(self.base, ((digit, count),) + self.runs)

    def strip_trailing(self, digit: int) -> tuple[tuple[Run, ...], Num]:
        """(remaining runs, number of trailing ``digit`` removed)."""
        if self.runs[-1][0] == digit:
            return self.runs[:-1], self.runs[-1][1]
        return self.runs, 0

    def same_as(self, other: RunSymbolic, trials: int = DEFAULT_PRIMES) -> bool:
        """Structural equality, comparing symbolic counts by residues."""
        if self.base != other.base or len(self.runs) != len(other.runs):
            return False
        return all(
            d1 == d2 and equal_mod_primes(c1, c2, trials)
            for (d1, c1), (d2, c2) in zip(self.runs, other.runs)
        )

    def render(self, compress_at: int = 8) -> str:
        """Digits, with long or symbolic runs written ``[d^count]``."""
        from .digitmap import render_digits

        sep = "," if self.base > 36 else ""
        parts = []
        for d, c in self.runs:
            ch = render_digits([d], self.base)
            if isinstance(c, int) and c < compress_at:
                parts.append(sep.join([ch] * c))
            else:
                parts.append(f"[{ch}^{to_text(c)}]")
        return sep.join(parts)

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "runs": [{"digit": d, "count": to_json(c)} for d, c in self.runs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> RunSymbolic:
        return cls.of(int(obj["base"]), ((int(r["digit"]), from_json(r["count"])) for r in obj["runs"]))


def elated_step_symbolic(x: RunSymbolic, e: int = 2) -> Num:
    """Leading digit times the sum of e-th powers of the digits, as a TowerInt."""
    return x.elated_step(e)
