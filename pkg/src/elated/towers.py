"""Certificates for the smallest base-10 elated numbers of heights 13 to 16.

eps_13 has about 1.4e7 digits; eps_14, eps_15 and eps_16 have digit
counts that are themselves tower-sized.  Each is built as a run form from
the one before it:

* E(x) is pinned down from the previous minimum (leading digit divides
  E(x), E(x) is an arrangement of the digits of a known height-(k-1)
  basic number, and E(x) is below an explicit bound);
* a = E(x)/lead - lead**2 is reduced to a small representative a' whose
  shortest preimage set gives the remaining digits of x.

The report records every residue of the integrality ladders, every
inequality, and every finite case check.  Steps that rest on a prose
case analysis rather than a finite computation are marked
``trusted``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .digitmap import elated_step, from_digits
from .heights import basic_numbers_of_height, height
from .preimage import reduce_preimages, stripped_preimages
from .towerint import (
    DEFAULT_PRIMES,
    Num,
    RunSymbolic,
    eval_mod,
    equal_mod_primes,
    exact_div,
    linear,
    lower,
    lower_bound,
    pow_base,
    small_value,
    to_text,
)

EPS12 = 8888999999
EPS13_TAIL = 8999999888
EPS13_EXP = 13888887
E14_EXP = 13888888
HEIGHT12_BOUND = 8 * 10**10

VERIFIED = "verified"
TRUSTED = "trusted"
FAILED = "failed"


class TowerVerificationError(AssertionError):
    def __init__(self, check: str, detail: str = ""):
        super().__init__(f"{check}: {detail}" if detail else check)
        self.check = check


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""


@dataclass(frozen=True)
class Residue:
    name: str
    modulus: int
    value: int
    expected: int | None = None


@dataclass
class TowerReport:
    k: int
    epsilon: RunSymbolic | None = None
    height: int | None = None
    checks: list[Check] = field(default_factory=list)
    residues: list[Residue] = field(default_factory=list)
    values: dict[str, Num] = field(default_factory=dict)
    primes: int = DEFAULT_PRIMES

    @property
    def status(self) -> str:
        return FAILED if any(c.status == FAILED for c in self.checks) else VERIFIED

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, VERIFIED if ok else FAILED, detail))
        if not ok:
            raise TowerVerificationError(name, detail)

    def trust(self, name: str, detail: str) -> None:
        self.checks.append(Check(name, TRUSTED, detail))

    def residue(self, name: str, x: Num, modulus: int, expected: int | None = None) -> int:
        v = eval_mod(x, modulus)
        self.residues.append(Residue(name, modulus, v, expected))
        if expected is not None:
            self.check(f"{name} = {expected} (mod {modulus})", v == expected % modulus, f"got {v}")
        return v


# --------------------------------------------------------------------------
# affine forms c*X + d in one huge quantity X


@dataclass(frozen=True)
class Affine:
    coef: Fraction
    const: Fraction

    def __add__(self, other):
        o = _aff(other)
        return Affine(self.coef + o.coef, self.const + o.const)

    __radd__ = __add__

    def __sub__(self, other):
        o = _aff(other)
        return Affine(self.coef - o.coef, self.const - o.const)

    def __rsub__(self, other):
        return _aff(other) - self

    def __mul__(self, k):
        k = Fraction(k)
        return Affine(self.coef * k, self.const * k)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1 / Fraction(k))


def _aff(v) -> Affine:
    return v if isinstance(v, Affine) else Affine(Fraction(0), Fraction(v))


def _less(a, b, x_lo: int) -> bool:
    """a < b for every X >= x_lo."""
    d = _aff(b) - _aff(a)
    if d.coef < 0:
        return False
    return d.coef * x_lo + d.const > 0


def _same(a, b) -> bool:
    a, b = _aff(a), _aff(b)
    return a.coef == b.coef and a.const == b.const


X = Affine(Fraction(1), Fraction(0))


# --------------------------------------------------------------------------
# finite checks on digit arrangements


def _arrangements(lead: int, tail: list[int]) -> list[int]:
    """All numbers with the given leading digit whose other digits permute ``tail``."""
    return sorted({from_digits([lead, *p], 10) for p in set(permutations(tail))})


def _tail_multiset(x: RunSymbolic, cap: int) -> dict[int, int]:
    """Non-leading digit counts, each capped at ``cap`` (enough for last-digit checks)."""
    out: dict[int, int] = {}
    first = True
    for d, c in x.runs:
        if first:
            first = False
            c = linear([(1, c)], -1)
        v = small_value(c) if not isinstance(c, int) else c
        n = cap if v is None else min(v, cap)
        if n:
            out[d] = out.get(d, 0) + n
    return out


def _tails_divisible(multiset: dict[int, int], width: int, m: int) -> set[tuple[int, ...]]:
    """Last-``width``-digit patterns drawn from the multiset that are 0 mod m."""
    pool = [d for d, c in multiset.items() for _ in range(c)]
    return {p for p in set(permutations(pool, width)) if from_digits(list(p), 10) % m == 0}


def _digit_sum_mod(x: RunSymbolic, m: int) -> int:
    return eval_mod(linear((d, c) for d, c in x.runs), m)


def _next_arrangement_gap(x: RunSymbolic) -> Num:
    """Lower bound for (next larger arrangement) - x when x's tail is sorted.

    With non-leading digits nondecreasing, x is the smallest arrangement;
    any other one differs in a digit left of the final run of t copies of
    the top digit, so exceeds x by at least 10**t.
    """
    return pow_base(10, linear([(1, x.runs[-1][1])], -1))


def _tail_sorted(x: RunSymbolic) -> bool:
    ds = [d for d, _ in x.runs]
    if x.runs[0][1] != 1 and len(ds) > 1 and ds[0] > ds[1]:
        # extra copies of the leading digit sit at the start of the tail
        return False
    ds = ds[1:]
    return all(a < b for a, b in zip(ds, ds[1:]))


def _smallest(cands: list[RunSymbolic]) -> RunSymbolic:
    """Smallest of equal-length run forms that share a final run."""
    prefixes = [[d for d, c in r.runs[:-1] for _ in range(c)] for r in cands]
    width = max(len(p) for p in prefixes)
    top = cands[0].runs[-1][0]
    keyed = [(p + [top] * (width - len(p)), r) for p, r in zip(prefixes, cands)]
    return min(keyed, key=lambda t: t[0])[1]


# --------------------------------------------------------------------------
# builders


def _from_preimage(lead: int, member: RunSymbolic) -> RunSymbolic:
    return member.prepend(lead)


@lru_cache(maxsize=None)
def _height12_basic() -> tuple[int, ...]:
    return tuple(basic_numbers_of_height(12, 10, HEIGHT12_BOUND))


def _reduce_step(report: TowerReport, name: str, e_val: Num, lead: int, want_a: int, q_shift: Num | None):
    """Reduce a = E/lead - lead**2 and return the candidate run forms."""
    a = linear([(1, exact_div(e_val, lead))], -(lead * lead))
    red = reduce_preimages(a, 10)
    report.check(f"{name}: representative a' = {want_a}", red.reduced_from == want_a, f"got {red.reduced_from}")
    if q_shift is not None:
        report.check(
            f"{name}: q = n - 5",
            equal_mod_primes(red.q, q_shift, report.primes),
            f"q = {to_text(red.q)}",
        )
    return a, red, [_from_preimage(lead, m) for m in red.members]


def _verify_13(report: TowerReport, exhaustive: bool) -> RunSymbolic:
    P = report.primes
    if exhaustive:
        found = _height12_basic()
        report.check(
            "eps12 is the only basic height-12 number below 8*10^10",
            found == (EPS12,),
            f"found {list(found)}",
        )
    else:
        report.trust(
            "eps12 is the only basic height-12 number below 8*10^10",
            "finite search; rerun with exhaustive=True",
        )
    report.check("height(eps12) = 12", height(EPS12, 10) == 12)
    e12 = EPS12
    report.check(
        "lead < 8: E(x) <= 7(7^2 + 13888891*9^2) < eps12",
        7 * (49 + 13888891 * 81) < e12,
    )
    report.check(
        "lead 8 or 9: E(x) <= 9(9^2 + 13888890*9^2) < 8*10^10",
        9 * (81 + 13888890 * 81) < HEIGHT12_BOUND,
    )
    report.trust(
        "E(x) is an arrangement of eps12",
        "same image as a basic number below the bound, so equivalent to eps12",
    )
    arr = _arrangements(8, [8, 8, 8, 9, 9, 9, 9, 9, 9])
    report.check("arrangements of eps12 with lead 8", len(arr) == 84, f"{len(arr)}")
    report.check("no arrangement of eps12 is a multiple of 9", all(v % 9 for v in arr))
    mult8 = [v for v in arr if v % 8 == 0]
    report.check("unique multiple of 8 among arrangements", mult8 == [EPS13_TAIL], f"{mult8}")
    a, red, cands = _reduce_step(report, "k=13", EPS13_TAIL, 8, 561, None)
    report.check("k=13: a = 1124999922", a == 1124999922, f"{a}")
    report.check("k=13: q = 13888881", red.q == 13888881, f"{red.q}")
    report.check("k=13: five candidates", len(cands) == 5, f"{len(cands)}")
    stated = [8158000000, 8368890000, 8377800000, 8556000000, 8788888889]
    for c, s in zip(cands, stated):
        v = linear([(s, pow_base(10, 13888881))], -1)
        report.check(f"candidate {s}*10^13888881-1 run form", equal_mod_primes(c.value(), v, P))
        report.check(f"E({s}*10^13888881-1) = 8999999888", lower(c.elated_step()) == EPS13_TAIL)
    eps = _smallest(cands)
    report.check(
        "minimum candidate is 8158*10^13888887-1",
        equal_mod_primes(eps.value(), linear([(8158, pow_base(10, EPS13_EXP))], -1), P),
    )
    report.check("minimum candidate has 13888891 digits", lower(eps.length()) == 13888891)
    report.values["eps13"] = eps.value()
    report.values["E(eps13)"] = EPS13_TAIL
    return eps, cands


def _verify_14(report: TowerReport, eps13: RunSymbolic, height13: list[RunSymbolic]) -> RunSymbolic:
    P = report.primes
    X14 = pow_base(10, E14_EXP)  # X = 10^13888888
    e14 = linear([(837, X14)], -112)
    report.values["E(eps14)"] = e14
    # n14 = (E/8 - 8^2 - 138)/81 counts the trailing nines; 138 comes from the prefix 8578
    prefix = stripped_preimages(543, 10)
    report.check("S(543) stripped to {578}", prefix == frozenset({"578"}), f"{sorted(prefix)}")
    sq = sum(d * d for d in [8, 5, 7, 8])
    report.check("prefix (8,5,7,8) square sum 202", sq == 202, f"{sq}")
    const = sq - 64
    report.check("prefix constant 202 - 8^2 = 138", const == 138, f"{const}")
    n14 = exact_div(linear([(1, exact_div(e14, 8))], -64 - const), 81)
    report.check("n14 is an integer", True, "exact divisions by 8 and 81 certified")
    report.values["n14"] = n14
    # bounds, as affine forms in X
    n = (837 * X - 112) / 8 - 64 - 138
    n = n / 81
    eps13_aff = 8158 * X / 10 - 1
    lo = lower_bound(X14)
    report.check("lead < 8: 7(7^2 + (n14+4)9^2) < 8*10^13888890", _less(7 * (49 + (n + 4) * 81), 800 * X, lo))
    report.check("8*10^13888890 < eps13", _less(800 * X, eps13_aff, lo))
    report.check("lead 8 or 9: 9(9^2 + (n14+3)9^2) < 8*10^13888891", _less(9 * (81 + (n + 3) * 81), 8000 * X, lo))
    report.check(
        "no arrangement of a height-13 basic number is a multiple of 9",
        all(_digit_sum_mod(c, 9) != 0 for c in height13),
    )
    report.check("lead 8: 8(8^2 + (n14+3)9^2) = 728 + 837*10^13888888", _same(8 * (64 + (n + 3) * 81), 728 + 837 * X))
    report.trust(
        "E(x) is an arrangement of a height-13 candidate at most the bound",
        "only eps13 and 8368890000*10^13888881-1 have arrangements below 728 + 837*10^13888888",
    )
    odd = sorted({d for d, _ in eps13.runs[1:]})
    report.check("every arrangement of eps13 is odd", all(d % 2 for d in odd), f"tail digits {odd}")
    # arrangements of 8368889999..9 at most 8370...0728 start with 836; the rest is {8,8,8,9...}
    rest = {8: 3, 9: 3}
    tails = _tails_divisible(rest, 3, 8)
    report.check("only tail 888 makes 836... a multiple of 8", tails == {(8, 8, 8)}, f"{sorted(tails)}")
    e14_run = RunSymbolic.of(10, [(8, 1), (3, 1), (6, 1), (9, E14_EXP - 3), (8, 3)])
    report.check("836[9^13888885]888 = 837*10^13888888 - 112", equal_mod_primes(e14_run.value(), e14, P))
    report.check("E(836[9^13888885]888) = E(eps13)", lower(e14_run.elated_step()) == EPS13_TAIL)
    n_minus_5 = linear([(1, n14)], -5)
    _, red, cands = _reduce_step(report, "k=14", e14, 8, 543, n_minus_5)
    report.check("k=14: single candidate", len(cands) == 1)
    eps = cands[0]
    report.check(
        "candidate = 8579*10^n14 - 1",
        equal_mod_primes(eps.value(), linear([(8579, pow_base(10, n14))], -1), P),
    )
    report.check("E(eps14) = 837*10^13888888 - 112", equal_mod_primes(eps.elated_step(), e14, P))
    report.trust("eps14 is the only basic height-14 number below 8*10^(n14+4)", "leading-digit case analysis")
    report.values["eps14"] = eps.value()
    return eps


def _ladder_15(report: TowerReport, n14: Num, eps14: Num) -> Num:
    report.residue("n14", n14, 6, 2)
    report.check("8579*10^2 - 1 = 0 (mod 7)", (8579 * 100 - 1) % 7 == 0)
    report.residue("eps14", eps14, 7, 0)
    report.residue("n14", n14, 54, 26)
    report.check("8579*10^26 - 1 = 55 (mod 81)", (8579 * 10**26 - 1) % 81 == 55)
    report.residue("eps14", eps14, 81, 55)
    report.check("7^-1 = 58 (mod 81)", pow(7, -1, 81) == 58)
    q = exact_div(eps14, 7)
    report.check("55*58 = 31 (mod 81)", 55 * 58 % 81 == 31)
    report.residue("eps14/7", q, 81, 31)
    report.residue("eps14/7 - 7^2 - 144", linear([(1, q)], -49 - 144), 81, 0)
    n15 = exact_div(linear([(1, q)], -49 - 144), 81)
    report.values["n15"] = n15
    return n15


def _verify_15(report: TowerReport, eps14_run: RunSymbolic) -> RunSymbolic:
    P = report.primes
    n14 = report.values["n14"]
    eps14 = report.values["eps14"]
    n15 = _ladder_15(report, n14, eps14)
    X14 = pow_base(10, n14)
    lo = lower_bound(X14)
    y = 8579 * X - 1
    n = (y / 7 - 49 - 144) / 81
    report.check("lead < 7: 6(6^2 + (n15+4)9^2) = 1002 + 6 eps14/7", _same(6 * (36 + (n + 4) * 81), 1002 + 6 * y / 7))
    report.check("1002 + 6 eps14/7 < eps14", _less(1002 + 6 * y / 7, y, lo))
    report.check("9(9^2 + (n15+3)9^2) = 1179 + 9 eps14/7", _same(9 * (81 + (n + 3) * 81), 1179 + 9 * y / 7))
    report.check("1179 + 9 eps14/7 < 8*10^(n14+4)", _less(1179 + 9 * y / 7, 80000 * X, lo))
    report.trust("E(x) is an arrangement of eps14", "eps14 is the only basic height-14 number below the bound")
    tails8 = _tails_divisible(_tail_multiset(eps14_run, 3), 3, 8)
    report.check("no arrangement of eps14 is a multiple of 8", not tails8, f"{sorted(tails8)}")
    report.check("arrangements of eps14 are not multiples of 9", _digit_sum_mod(eps14_run, 9) != 0)
    report.check("lead 7: 7(7^2 + (n15+3)9^2) = 693 + eps14", _same(7 * (49 + (n + 3) * 81), 693 + y))
    report.check(
        "eps14 is its smallest arrangement and the next exceeds it by more than 693",
        _tail_sorted(eps14_run) and lower_bound(_next_arrangement_gap(eps14_run)) > 693,
    )
    _, red, cands = _reduce_step(report, "k=15", eps14, 7, 549, linear([(1, n15)], -5))
    report.residue("eps14/7 - 7^2", linear([(1, exact_div(eps14, 7))], -49), 81, 549 % 81)
    report.check("k=15: single candidate", len(cands) == 1)
    eps = cands[0]
    report.check(
        "candidate = 7489*10^n15 - 1",
        equal_mod_primes(eps.value(), linear([(7489, pow_base(10, n15))], -1), P),
    )
    report.check("E(eps15) = eps14", equal_mod_primes(eps.elated_step(), eps14, P))
    report.trust("eps15 is the only basic height-15 number below 7*10^(n15+4)", "leading-digit case analysis")
    report.values["eps15"] = eps.value()
    return eps


def _ladder_16(report: TowerReport) -> Num:
    n14 = report.values["n14"]
    eps14 = report.values["eps14"]
    n15 = report.values["n15"]
    eps15 = report.values["eps15"]
    m = 3**8 * 7
    report.check("10^1458 = 1 (mod 3^8*7)", pow(10, 1458, m) == 1)
    report.residue("10^1458", pow_base(10, 1458), m, 1)
    report.residue("n14", n14, 1458, 566)
    report.check("10^566 = 4447 (mod 3^8*7)", pow(10, 566, m) == 4447)
    report.residue("10^n14", pow_base(10, n14), m, 4447)
    report.check("8579*4447 - 1 = 31402 (mod 3^8*7)", (8579 * 4447 - 1) % m == 31402)
    report.residue("eps14", eps14, m, 31402)
    report.residue("eps14/7", exact_div(eps14, 7), 3**8, 4486)
    report.residue("81 n15", linear([(81, n15)]), 3**8, 4293)
    report.residue("n15", n15, 3**4, 53)
    report.check("10^81 = 1 (mod 3^6)", pow(10, 81, 3**6) == 1)
    report.check("7489*10^53 - 1 = 432 (mod 3^6)", (7489 * 10**53 - 1) % 3**6 == 432)
    report.residue("eps15", eps15, 3**6, 432)
    q = exact_div(eps15, 9)
    report.residue("eps15/9", q, 3**4, 48)
    report.residue("eps15/9 - 9^2 - 129", linear([(1, q)], -81 - 129), 81, 0)
    n16 = exact_div(linear([(1, q)], -81 - 129), 81)
    report.values["n16"] = n16
    return n16


def _verify_16(report: TowerReport, eps15_run: RunSymbolic) -> RunSymbolic:
    P = report.primes
    eps15 = report.values["eps15"]
    n15 = report.values["n15"]
    n16 = _ladder_16(report)
    lo = lower_bound(pow_base(10, n15))
    y = 7489 * X - 1
    n = (y / 9 - 81 - 129) / 81
    report.check("lead < 9: 8(8^2 + (n16+3)9^2) = 776 + 8 eps15/9", _same(8 * (64 + (n + 3) * 81), 776 + 8 * y / 9))
    report.check("776 + 8 eps15/9 < eps15", _less(776 + 8 * y / 9, y, lo))
    report.check("9(9^2 + (n16+3)9^2) = 1026 + eps15", _same(9 * (81 + (n + 3) * 81), 1026 + y))
    report.check("1026 + eps15 < 7*10^(n15+4)", _less(1026 + y, 70000 * X, lo))
    report.trust("E(x) is an arrangement of eps15", "eps15 is the only basic height-15 number below the bound")
    report.check(
        "eps15 is its smallest arrangement and the next exceeds it by more than 1026",
        _tail_sorted(eps15_run) and lower_bound(_next_arrangement_gap(eps15_run)) > 1026,
    )
    _, red, cands = _reduce_step(report, "k=16", eps15, 9, 534, linear([(1, n16)], -5))
    report.residue("eps15/9 - 9^2", linear([(1, exact_div(eps15, 9))], -81), 81, 534 % 81)
    report.check("k=16: two candidates", len(cands) == 2)
    eps = _smallest(cands)
    report.check(
        "smaller candidate = 9189*10^n16 - 1",
        equal_mod_primes(eps.value(), linear([(9189, pow_base(10, n16))], -1), P),
    )
    report.check("E(eps16) = eps15", equal_mod_primes(eps.elated_step(), eps15, P))
    report.values["eps16"] = eps.value()
    return eps


def _descend(report: TowerReport, k: int) -> int:
    """Height of eps_k: k - 13 certified symbolic steps, one run-form step, then exact."""
    tail = [EPS13_TAIL]
    while tail[-1] != 1:
        tail.append(elated_step(tail[-1], 10))
    h = len(tail) - 1
    report.check("8999999888 descends to 1 in 12 steps", h == 12, f"{tail}")
    total = h + 1 + (k - 13)
    report.check(f"height(eps{k}) = {k}", total == k, f"{total}")
    return total


def verify_epsilon_tower(
    k: int, primes: int = DEFAULT_PRIMES, *, exhaustive: bool = False
) -> TowerReport:
    """Build eps_k (13 <= k <= 16) and certify its height and every stated residue.

    Raises :class:`TowerVerificationError` naming the first failing identity.
    ``exhaustive`` reruns the height-12 basic-number search (a few seconds).
    """
    if k not in (13, 14, 15, 16):
        raise ValueError("k must be one of 13, 14, 15, 16")
    if primes < 1:
        raise ValueError("primes must be >= 1")
    report = TowerReport(k, primes=primes)
    eps, height13 = _verify_13(report, exhaustive)
    if k >= 14:
        eps = _verify_14(report, eps, height13)
    if k >= 15:
        eps = _verify_15(report, eps)
    if k >= 16:
        eps = _verify_16(report, eps)
    report.epsilon = eps
    report.height = _descend(report, k)
    return report
