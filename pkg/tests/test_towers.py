import pytest

from elated.towerint import equal_mod_primes, eval_mod, linear, pow_base
from elated.towers import (
    FAILED,
    TRUSTED,
    VERIFIED,
    TowerVerificationError,
    _arrangements,
    verify_epsilon_tower,
)


@pytest.fixture(scope="module")
def report16():
    return verify_epsilon_tower(16)


@pytest.mark.parametrize("k", [13, 14, 15, 16])
def test_each_height_verifies(k):
    r = verify_epsilon_tower(k)
    assert r.status == VERIFIED
    assert r.height == k
    assert not any(c.status == FAILED for c in r.checks)


def test_eps13_value():
    r = verify_epsilon_tower(13)
    want = linear([(8158, pow_base(10, 13888887))], -1)
    assert equal_mod_primes(r.epsilon.value(), want)
    assert r.epsilon.render().startswith("8157")


STATED = [
    ("n14", 6, 2),
    ("n14", 54, 26),
    ("eps14", 81, 55),
    ("eps14/7", 81, 31),
    ("10^1458", 3**8 * 7, 1),
    ("n14", 1458, 566),
    ("eps14", 3**8 * 7, 31402),
    ("eps14/7", 3**8, 4486),
    ("n15", 3**4, 53),
    ("eps15", 3**6, 432),
    ("eps15/9", 3**4, 48),
]


@pytest.mark.parametrize("name,modulus,value", STATED)
def test_stated_residues(report16, name, modulus, value):
    hits = [r for r in report16.residues if r.name == name and r.modulus == modulus]
    assert hits and all(h.value == value for h in hits)


def test_residues_recompute_independently(report16):
    v = report16.values
    assert eval_mod(v["eps14"], 45927) == 31402
    assert eval_mod(v["n14"], 1458) == 566
    assert eval_mod(v["eps15"], 729) == 432


def test_image_identities(report16):
    names = {c.name: c.status for c in report16.checks}
    assert names["E(eps16) = eps15"] == VERIFIED
    assert names["E(eps15) = eps14"] == VERIFIED
    assert names["E(eps14) = 837*10^13888888 - 112"] == VERIFIED
    want = linear([(837, pow_base(10, 13888888))], -112)
    assert equal_mod_primes(report16.values["E(eps14)"], want)


def test_trusted_steps_are_named(report16):
    trusted = [c for c in report16.checks if c.status == TRUSTED]
    assert trusted and all(c.detail for c in trusted)


def test_arrangement_counts():
    arr = _arrangements(8, [8, 8, 8, 9, 9, 9, 9, 9, 9])
    assert len(arr) == 84 == len(set(arr))
    assert [a for a in arr if a % 8 == 0] == [8999999888]


@pytest.mark.heavy
def test_exhaustive_height12_search():
    r = verify_epsilon_tower(13, exhaustive=True)
    assert all(c.status == VERIFIED for c in r.checks if "height-12" in c.name)


def test_bad_arguments():
    with pytest.raises(ValueError):
        verify_epsilon_tower(12)
    with pytest.raises(ValueError):
        verify_epsilon_tower(14, primes=0)


def test_failure_names_check():
    from elated.towers import TowerReport

    r = TowerReport(14)
    with pytest.raises(TowerVerificationError) as info:
        r.residue("eps14", 55, 81, 54)
    assert "eps14 = 54 (mod 81)" in info.value.check
    assert r.status == FAILED
