import random

import gmpy2
import pytest
from hypothesis import given
from hypothesis import strategies as st

from elated.digitmap import elated_step, happy_step
from elated.towerint import (
    DivisibilityError,
    ExactDiv,
    ExceedsCapError,
    Literal,
    PowBase,
    Product,
    Repunit,
    RunSymbolic,
    Sum,
    TowerInt,
    eval_exact,
    eval_mod,
    equal_mod_primes,
    exact_div,
    from_json,
    linear,
    lower_bound,
    pow_base,
    repunit_num,
    to_json,
    upper_bound,
    verification_primes,
)


def _value(x):
    """Independent exact evaluation straight from the tree definition."""
    if isinstance(x, int):
        return x
    if isinstance(x, Literal):
        return x.value
    if isinstance(x, Sum):
        return x.const + sum(c * _value(t) for c, t in x.terms)
    if isinstance(x, Product):
        out = 1
        for f in x.factors:
            out *= _value(f)
        return out
    if isinstance(x, PowBase):
        return x.base ** _value(x.exponent)
    if isinstance(x, Repunit):
        n = _value(x.count)
        return (x.base**n - 1) // (x.base - 1) * x.base**x.r
    if isinstance(x, ExactDiv):
        v = _value(x.numerator)
        assert v % x.divisor == 0
        return v // x.divisor
    raise TypeError(x)


def _random_tree(rng, depth):
    """Unfolded tree with a value small enough for the oracle."""
    if depth == 0 or rng.random() < 0.25:
        return Literal(rng.randrange(0, 50))
    kind = rng.choice(["sum", "product", "pow", "rep", "div"])
    if kind == "sum":
        terms = tuple((rng.randrange(1, 5), _random_tree(rng, depth - 1)) for _ in range(rng.randrange(1, 3)))
        return Sum(terms, rng.randrange(0, 10))
    if kind == "product":
        return Product((_random_tree(rng, depth - 1), _random_tree(rng, depth - 1)))
    if kind == "pow":
        return PowBase(rng.choice([2, 3, 7, 10]), Literal(rng.randrange(0, 60)))
    if kind == "rep":
        return Repunit(rng.randrange(0, 4), rng.choice([2, 3, 10]), Literal(rng.randrange(0, 40)))
    inner = _random_tree(rng, depth - 1)
    d = rng.randrange(1, 12)
    return ExactDiv(Sum(((d, inner),), 0), d)


def test_eval_mod_matches_exact_on_random_trees():
    rng = random.Random(7)
    for _ in range(10_000):
        x = _random_tree(rng, 3)
        v = _value(x)
        m = rng.choice([2, 9, 10, 81, 1000, 45927, rng.randrange(2, 10**6), verification_primes(1)[0]])
        assert eval_mod(x, m) == v % m
        assert eval_exact(x) == v


def test_bounds_contain_value():
    rng = random.Random(11)
    for _ in range(2000):
        x = _random_tree(rng, 3)
        v = _value(x)
        assert lower_bound(x) <= v
        hi = upper_bound(x)
        assert hi is None or v <= hi


@pytest.mark.parametrize("base", [2, 3, 7, 10])
@pytest.mark.parametrize("m", [9, 64, 1000, 45927, 3**8, 2**20 * 5**3, 999983 * 6])
def test_order_reduction_for_huge_exponent(base, m):
    # 2^k with k > 8192 stays symbolic, yet the residue is exact
    rng = random.Random(base * m)
    for _ in range(5):
        k = rng.randrange(8200, 9000)
        exp = pow_base(2, k)
        assert isinstance(exp, TowerInt)
        exact_exp = 2**k
        assert eval_mod(pow_base(base, exp), m) == pow(base, exact_exp, m)
        assert eval_mod(exp, m) == pow(2, k, m)


def test_builders_fold_small_values():
    assert pow_base(10, 3) == 1000
    assert repunit_num(0, 10, 3) == 111
    assert repunit_num(2, 10, 3) == 11100
    assert linear([(2, 5)], 1) == 11
    assert isinstance(pow_base(10, 10**4), TowerInt)


def test_repunit_literal_node():
    assert eval_exact(Repunit(0, 10, Literal(3))) == 111


def test_exact_div_rejects_remainder():
    with pytest.raises(DivisibilityError):
        exact_div(linear([(1, pow_base(10, 10**5))], 1), 3)
    assert eval_mod(exact_div(linear([(1, pow_base(10, 10**5))], -1), 9), 10**6) == 111111


def test_worked_residues():
    assert (55 * 58) % 81 == 31
    big = linear([(837, pow_base(10, 13888888))], -112)
    assert eval_mod(big, 9) == (837 - 112) % 9


def test_eval_exact_respects_digit_cap():
    x = linear([(8158, pow_base(10, 13888887))], -1)
    with pytest.raises(ExceedsCapError):
        eval_exact(x, digit_cap=10**6)
    with pytest.raises(ExceedsCapError):
        eval_exact(pow_base(10, pow_base(10, 13888888)))
    assert eval_exact(linear([(3, pow_base(10, 5000))], 1), digit_cap=10**4) == 3 * 10**5000 + 1


def test_equal_mod_primes():
    x = linear([(8158, pow_base(10, 13888887))], -1)
    y = linear([(8157, pow_base(10, 13888887)), (1, pow_base(10, 13888887))], -1)
    assert equal_mod_primes(x, y)
    assert not equal_mod_primes(x, linear([(1, y)], 1))
    assert equal_mod_primes(12, 12) and not equal_mod_primes(12, 13)
    with pytest.raises(ValueError):
        equal_mod_primes(x, y, trials=0)


def test_verification_primes_are_deterministic():
    ps = verification_primes(20)
    assert ps == verification_primes(20)
    assert len(set(ps)) == 20
    assert all(1 << 62 <= p < 1 << 63 and gmpy2.is_prime(p) for p in ps)
    assert verification_primes(20, seed=1) != ps


def test_json_round_trip_random():
    rng = random.Random(3)
    for _ in range(500):
        x = _random_tree(rng, 3)
        y = from_json(to_json(x))
        assert _value(y) == _value(x)


def test_json_round_trip_tower():
    x = exact_div(linear([(8, pow_base(10, pow_base(10, 9000)))], -8), 9)
    y = from_json(to_json(x))
    for p in verification_primes(5):
        assert eval_mod(x, p) == eval_mod(y, p)


def test_json_recheck_rejects_bad_division():
    bad = {"op": "div", "num": {"op": "lit", "value": "10"}, "by": 3}
    with pytest.raises(DivisibilityError):
        from_json(bad)


def test_json_big_literal():
    v = 7**20000
    assert from_json(to_json(v)) == v


# run-length numbers


@given(st.integers(min_value=1, max_value=2**256), st.integers(min_value=2, max_value=16))
def test_run_form_round_trip(n, b):
    r = RunSymbolic.from_int(n, b)
    assert r.to_int() == n
    assert r.elated_step() == elated_step(n, b)
    assert r.happy_step() == happy_step(n, b)


@given(
    st.lists(
        st.tuples(st.integers(min_value=0, max_value=9), st.integers(min_value=1, max_value=20_000)),
        min_size=1,
        max_size=6,
    ),
    st.integers(min_value=1, max_value=9),
)
def test_run_form_step_matches_direct(runs, lead):
    runs = [(lead, 1)] + runs
    total = sum(c for _, c in runs)
    if total > 10**5:
        runs = runs[:2]
    x = RunSymbolic.of(10, runs)
    s = "".join(str(d) * c for d, c in runs)
    n = int(gmpy2.mpz(s))
    assert x.to_int() == n
    assert x.elated_step() == elated_step(n, 10)


def test_run_form_step_one_hundred_thousand_digits():
    x = RunSymbolic.of(10, [(8, 1), (1, 3), (5, 49_990), (9, 50_006)])
    n = x.to_int()
    ds = gmpy2.mpz(n).digits(10)
    assert len(ds) == 100_000
    assert x.elated_step() == 8 * sum(int(c) ** 2 for c in ds)


def test_symbolic_run_counts():
    x = RunSymbolic.of(10, [(8, 1), (1, 1), (5, 1), (7, 1), (9, pow_base(10, 9000))])
    assert isinstance(x.length(), TowerInt)
    want = linear([(81, pow_base(10, 9000))], 64 + 1 + 25 + 49)
    assert equal_mod_primes(x.happy_step(), want)
    assert "8157[9^" in x.render()
