import pytest

from conftest import naive_digits, naive_elated, naive_happy
from elated.digitmap import render
from elated.heights import (
    LimitExceeded,
    basic_numbers_of_height,
    base2_chain,
    base3_chain,
    enumerate_candidates,
    epsilon,
    epsilon_base2,
    epsilon_base3,
    height,
    is_basic,
    is_fully_basic,
    run_height,
    sigma,
    verify_chain,
)
from elated.towerint import RunSymbolic, lower, small_value
from reference_data import EPSILON_10, smallest_by_height


def naive_height(n, b, step=naive_elated):
    seen = set()
    h = 0
    while n != 1:
        if n in seen:
            return None
        seen.add(n)
        n = step(n, b)
        h += 1
    return h


def scan_minimum(k, b, upto, step=naive_elated):
    """Oracle: first n (over all integers) whose height is k."""
    memo = {1: 0}

    def h(n):
        path = []
        while n not in memo:
            if n in path:
                for y in path:
                    memo[y] = None
                return None
            path.append(n)
            n = step(n, b)
        base = memo[n]
        for i, y in enumerate(reversed(path), 1):
            memo[y] = None if base is None else base + i
        return memo[path[0]] if path else base

    for n in range(1, upto + 1):
        if h(n) == k:
            return n
    return None


def test_height_examples():
    assert height(1, 10) == 0
    assert height(21, 10) == 2
    assert height(97, 10) == 5
    assert height(46, 10) is None
    with pytest.raises(ValueError):
        height(0, 10)


def test_height_matches_naive():
    for b in (3, 6, 10):
        for n in range(1, 3000):
            assert height(n, b) == naive_height(n, b)
            assert height(n, b, kind="happy") == naive_height(n, b, naive_happy)


def test_basic_predicates():
    assert is_basic(8888999999, 10) and is_fully_basic(8888999999, 10)
    assert is_basic(51, 10) and not is_fully_basic(51, 10)
    assert not is_basic(10, 10)
    assert not is_basic(7, 10) and is_fully_basic(7, 10)


def test_candidate_stream_start():
    stream = list(enumerate_candidates(10, 200))
    assert stream[:99] == list(range(1, 100))
    assert stream[99:103] == [111, 112, 113, 114]
    assert 3 in enumerate_candidates(4, 10)


def test_candidate_stream_is_exactly_the_filter():
    for b in (3, 4, 7, 10):
        limit = 20000
        want = [n for n in range(1, limit + 1) if n < b * b or is_basic(n, b)]
        assert list(enumerate_candidates(b, limit)) == want
        fully = [n for n in range(1, limit + 1) if n < b * b or is_fully_basic(n, b)]
        assert list(enumerate_candidates(b, limit, fully=True)) == fully


def test_candidate_count_below_1e10():
    n = sum(1 for _ in enumerate_candidates(10, 10**10))
    # 99 small values plus, for lengths 3..10 and 9 leads, C(length+7, 8) tails
    from math import comb

    assert n == 99 + 9 * sum(comb(L + 7, 8) for L in range(3, 11))
    assert n < 10**6


@pytest.mark.parametrize("b", range(2, 11))
def test_smallest_by_height_table(b):
    for k, v in smallest_by_height(b).items():
        if b == 10 and k == 12:
            continue  # covered by the acceptance suite
        assert epsilon(k, b).value == v, (b, k, render(v, b))


def test_base10_heights_table():
    assert [epsilon(k, 10).value for k in range(12)] == EPSILON_10[:12]
    assert epsilon(0, 7).value == 1 and epsilon(1, 7).value == 7


@pytest.mark.parametrize("b", range(2, 11))
def test_search_matches_exhaustive_scan(b):
    for k, v in smallest_by_height(b).items():
        if v < 10**6:
            assert scan_minimum(k, b, v) == v


def test_epsilon_limit():
    with pytest.raises(LimitExceeded):
        epsilon(12, 10, limit=10**6)
    rec = epsilon(6, 10)
    assert rec.trajectory[0] == 668 and rec.trajectory[-1] == 1 and len(rec.trajectory) == 7
    assert rec.search_limit == 10**15


def test_sigma_examples():
    assert sigma(0, 10) == 1
    assert sigma(2, 10) == 13
    assert sigma(5, 10) == 7
    for k in range(1, 7):
        v = sigma(k, 10)
        assert scan_minimum(k, 10, v, naive_happy) == v


def test_base2_recurrence():
    assert epsilon_base2(2).to_int() == 3
    assert epsilon_base2(4).to_int() == 127
    five = epsilon_base2(5)
    assert five.runs == ((1, 127),)
    assert five.to_int() == 2**127 - 1
    assert verify_chain(base2_chain(5)) == 5
    for k in range(1, 5):
        assert epsilon_base2(k).to_int() == epsilon(k, 2).value


def test_base3_recurrence():
    assert epsilon_base3(3).to_int() == 53
    four = epsilon_base3(4)
    assert four.to_int() == 2 * 3**13 - 1 == 3188645
    assert four.render(compress_at=100) == "12222222222222"
    five = epsilon_base3(5)
    assert five.runs[0] == (1, 1) and five.runs[1][1] == (3188645 - 1) // 4
    assert run_height(five) == 5
    for k in range(2, 5):
        assert epsilon_base3(k).to_int() == epsilon(k, 3).value


def test_symbolic_base3_chain():
    chain = base3_chain(6)
    assert small_value(lower(chain[0].runs[1][1])) is None
    with pytest.raises(ArithmeticError):
        run_height(chain[0])
    assert verify_chain(chain) == 6


def test_basic_numbers_of_height():
    assert basic_numbers_of_height(11, 10, 10**4) == [5369]


def _non_top(v, b):
    return sum(1 for d in naive_digits(v, b) if d != b - 1)


def test_digit_bound_for_minimal_happy_numbers():
    for b in range(3, 11):
        k = 1
        while True:
            try:
                v = sigma(k, b, limit=10**8)
            except LimitExceeded:
                break
            assert _non_top(v, b) < 2 * b
            k += 1


def test_digit_bound_for_minimal_elated_numbers():
    for b in range(3, 11):
        for k, v in smallest_by_height(b).items():
            tail = naive_digits(v, b)[1:]
            assert sum(1 for d in tail if d != b - 1) < 2 * b
