"""Certificates for arithmetic runs of u-attracted numbers.

Construction (given u on a cycle and a set T whose shifts t + n are all
b-happy):

* y = R(u) - 1 with R = R_{r,b} (r ones-and-zeros padding, see below),
* m = R^{k-1}(y) + n,
* for each t in T the chain
  V_k = t + m, V_{k-1}, ..., V_1 = R(u), u
  with V_j = R^{j-1}(y) + S^{k-j}(t + n) and E(V_j) = V_{j-1}.

Each V_j is "a run of ones followed by r digits holding S^{k-j}(t+n)",
so its elated image can be read off the run form even when V_j has a
tower-sized number of digits.  Certificates store every V_j together
with its run form; :func:`verify_certificate` rechecks each link.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .cycles import attractor_table, enumerate_cycles
from .digitmap import digit_list, elated_step, happy_step
from .heights import height
from .search import first_hit
from .towerint import (
    DEFAULT_DIGIT_CAP,
    DEFAULT_PRIMES,
    Num,
    RunSymbolic,
    TowerInt,
    equal_mod_primes,
    eval_mod,
    exact_div,
    from_json,
    linear,
    lower,
    pow_base,
    repunit_num,
    small_value,
    to_json,
)

DEFAULT_CEILING = 10**7


class WitnessError(ValueError):
    pass


class CertificateError(AssertionError):
    pass


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class GoodSetWitness:
    base: int
    T: tuple[int, ...]
    n: int
    k: int
    r: int

    @property
    def d(self) -> int:
        return gcd(2, self.base - 1)

    @property
    def n_positive(self) -> bool:
        # the existence statement asks for n >= 1; the minimal witness may be 0
        return self.n >= 1


def _happy_block(args) -> int | None:
    b, T, lo, hi = args
    table = attractor_table(b, 2, "happy")
    for n in range(lo, hi):
        if all(table.lookup(t + n)[0] == 1 for t in T):
            return n
    return None


def find_good_witness(
    T: Sequence[int],
    b: int,
    *,
    ceiling: int = DEFAULT_CEILING,
    workers: int = 1,
    block: int = 4096,
) -> GoodSetWitness:
    """Minimal n >= 0 making every t + n b-happy, with k and r as small as allowed."""
    T = tuple(sorted(set(T)))
    if not T:
        raise WitnessError("T must be nonempty")
    if any(t < 1 for t in T):
        raise WitnessError("T must hold positive integers")
    d = gcd(2, b - 1)
    if len({t % d for t in T}) > 1:
        raise WitnessError(f"elements of T are not congruent modulo {d}; no witness exists")
    jobs = ((b, T, lo, min(lo + block, ceiling + 1)) for lo in range(0, ceiling + 1, block))
    hit = first_hit(_happy_block, jobs, workers)
    if hit is None:
        raise WitnessError(f"ceiling exceeded: no witness n <= {ceiling}")
    n = hit[1]
    k = 1 + max(height(t + n, b, kind="happy") for t in T)
    biggest = 0
    for t in T:
        x = t + n
        for _ in range(k):
            biggest = max(biggest, x)
            x = happy_step(x, b)
    r = 1
    while b**r <= biggest:
        r += 1
    return GoodSetWitness(b, T, n, k, r)


def _iterated_repunit(r: int, b: int, y: Num, times: int) -> Num:
    x = y
    for _ in range(times):
        x = repunit_num(r, b, x)
    return x


def _ones_then(count: Num, s: int, r: int, b: int) -> RunSymbolic:
    """Run form of R_r(count) + s for 0 <= s < b**r."""
    tail = digit_list(s, b) if s else []
    return RunSymbolic.of(b, [(1, count), (0, r - len(tail))] + [(d, 1) for d in tail])


@dataclass(frozen=True)
class Link:
    value: Num
    digits: RunSymbolic


@dataclass(frozen=True)
class ElementCertificate:
    value: Num
    links: tuple[Link, ...]
    # "chain": E iterated along links reaches target; "parity": even in odd base
    reason: str = "chain"


@dataclass(frozen=True)
class RunCertificate:
    base: int
    u: int
    d: int
    length: int
    kind: str
    start: Num
    elements: tuple[ElementCertificate, ...]
    witness: GoodSetWitness | None = None
    m: Num | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def values(self) -> list[Num]:
        return [e.value for e in self.elements]

    @property
    def materialized(self) -> bool:
        return all(isinstance(v, int) for v in self.values)


def _chain_links(t: int, w: GoodSetWitness, u: int) -> tuple[Link, ...]:
    """Links V_k, ..., V_1 for the element t + m."""
    b, r, k, n = w.base, w.r, w.k, w.n
    y = linear([(1, repunit_num(r, b, u))], -1)
    s_vals = [t + n]
    for _ in range(k - 1):
        s_vals.append(happy_step(s_vals[-1], b))
    links = []
    for j in range(k, 0, -1):
        s = s_vals[k - j]
        if j == 1:
            # V_1 = (R(u) - 1) + 1
            value = repunit_num(r, b, u)
            digits = _ones_then(u, 0, r, b)
        else:
            count = _iterated_repunit(r, b, y, j - 2)
            value = linear([(1, repunit_num(r, b, count))], s)
            digits = _ones_then(count, s, r, b)
        links.append(Link(lower(value), digits))
    return tuple(links)


def _cycle_member(u: int, b: int) -> None:
    if u not in enumerate_cycles(b).members:
        raise DomainError(f"{u} is not on a cycle of E_2 in base {b}")


def build_u_attracted_run(
    L: int, b: int, u: int, *, ceiling: int = DEFAULT_CEILING, workers: int = 1
) -> RunCertificate:
    """d-consecutive run {d+m, ..., Ld+m} of u-attracted numbers, d = gcd(2, b-1)."""
    if L < 1:
        raise DomainError("length must be >= 1")
    _cycle_member(u, b)
    d = gcd(2, b - 1)
    w = find_good_witness([d * i for i in range(1, L + 1)], b, ceiling=ceiling, workers=workers)
    y = linear([(1, repunit_num(w.r, b, u))], -1)
    m = lower(linear([(1, _iterated_repunit(w.r, b, y, w.k - 1))], w.n))
    elements = []
    for t in w.T:
        links = _chain_links(t, w, u)
        elements.append(ElementCertificate(links[0].value, links))
    notes = () if w.n_positive else ("minimal witness has n = 0; the existence statement asks for n >= 1",)
    return RunCertificate(b, u, d, L, "attracted", elements[0].value, tuple(elements), w, m, notes)


def build_even_consecutive_run(
    L: int, b: int, u: int, *, ceiling: int = DEFAULT_CEILING, workers: int = 1
) -> RunCertificate:
    """L consecutive u-attracted numbers A+1..A+L for odd b and even u."""
    if L < 1:
        raise DomainError("length must be >= 1")
    if b % 2 == 0:
        raise DomainError("even base: use build_u_attracted_run (difference 1 already)")
    if u % 2:
        raise DomainError(f"u = {u} is odd; consecutive runs need an even cycle member")
    _cycle_member(u, b)
    M = 2 * max(happy_step(i, b) for i in range(1, L + 1))
    T = [2 * j + 8 for j in range(M + 1)]
    w = find_good_witness(T, b, ceiling=ceiling, workers=workers)
    y = linear([(1, repunit_num(w.r, b, u))], -1)
    m = lower(linear([(1, _iterated_repunit(w.r, b, y, w.k - 1))], w.n))
    if eval_mod(m, 2):
        raise CertificateError("m is odd; parity argument failed")
    half = exact_div(m, 2)
    wdig = 1
    while b**wdig <= L:
        wdig += 1
    A = lower(linear([(2, pow_base(b, linear([(1, half)], wdig))), (1, repunit_num(wdig, b, half))]))
    elements = []
    for h in range(1, L + 1):
        tail = digit_list(h, b)
        digits = RunSymbolic.of(b, [(2, 1), (1, half), (0, wdig - len(tail))] + [(x, 1) for x in tail])
        t = 8 + 2 * happy_step(h, b)
        links = (Link(lower(linear([(1, A)], h)), digits),) + _chain_links(t, w, u)
        elements.append(ElementCertificate(links[0].value, links))
    return RunCertificate(b, u, 1, L, "consecutive", elements[0].value, tuple(elements), w, m)


def _default_non1_member(b: int) -> int:
    cycles = enumerate_cycles(b)
    others = sorted(x for c in cycles.cycles if c.representative != 1 for x in c.members)
    if not others:
        raise DomainError(f"E_2 has only the fixed point 1 in base {b}: all integers are {b}-elated")
    if b % 2:
        evens = [x for x in others if x % 2 == 0]
        if evens:
            return evens[0]
    return others[0]


def build_non_elated_run(
    L: int, b: int, u: int | None = None, *, ceiling: int = DEFAULT_CEILING, workers: int = 1
) -> RunCertificate:
    """Consecutive integers none of which is b-elated.

    Length L, except for odd b with odd u where the result has length 2L:
    a 2-consecutive u-attracted run interleaved with the even numbers
    between its terms.
    """
    if L < 1:
        raise DomainError("length must be >= 1")
    if u is None:
        u = _default_non1_member(b)
    else:
        _cycle_member(u, b)
        if enumerate_cycles(b).cycle_of(u).representative == 1:
            raise DomainError("u must lie on a cycle other than (1)")
    if b % 2 == 0:
        cert = build_u_attracted_run(L, b, u, ceiling=ceiling, workers=workers)
        return _relabel(cert, "nonelated")
    if u % 2 == 0:
        cert = build_even_consecutive_run(L, b, u, ceiling=ceiling, workers=workers)
        return _relabel(cert, "nonelated")
    cert = build_u_attracted_run(L, b, u, ceiling=ceiling, workers=workers)
    elements = []
    for el in cert.elements:
        elements.append(el)
        between = lower(linear([(1, el.value)], 1))
        elements.append(ElementCertificate(between, (), "parity"))
    return RunCertificate(
        b, u, 1, 2 * L, "nonelated", cert.start, tuple(elements), cert.witness, cert.m,
        cert.notes + ("odd base and odd u: even members certified by parity",),
    )


def _relabel(cert: RunCertificate, kind: str) -> RunCertificate:
    return RunCertificate(
        cert.base, cert.u, cert.d, cert.length, kind, cert.start, cert.elements,
        cert.witness, cert.m, cert.notes,
    )


# --------------------------------------------------------------------------
# verification


def verify_certificate(
    cert: RunCertificate,
    *,
    trials: int = DEFAULT_PRIMES,
    direct: bool = True,
    digit_cap: int = DEFAULT_DIGIT_CAP,
) -> bool:
    """Recheck every link; raise CertificateError naming the first failure.

    Symbolic links are compared modulo ``trials`` primes.  With ``direct``
    set, integer elements are also iterated with the plain step map.
    """
    b, u = cert.base, cert.u
    if u not in enumerate_cycles(b).members:
        raise CertificateError(f"{u} is not a cycle member")
    spacing = cert.d if cert.kind == "attracted" else 1
    for i, (prev, cur) in enumerate(zip(cert.elements, cert.elements[1:])):
        try:
            diff = lower(linear([(1, cur.value), (-1, prev.value)]))
        except ArithmeticError:
            diff = None
        if diff != spacing:
            raise CertificateError(f"elements {i} and {i + 1} differ by {diff}, not {spacing}")
    for idx, el in enumerate(cert.elements):
        if el.reason == "parity":
            if b % 2 == 0 or eval_mod(el.value, 2) != 0:
                raise CertificateError(f"element {idx}: parity certificate invalid")
            continue
        if not el.links or not equal_mod_primes(el.links[0].value, el.value, trials):
            raise CertificateError(f"element {idx}: chain does not start at the element")
        for j, link in enumerate(el.links):
            nxt = el.links[j + 1].value if j + 1 < len(el.links) else u
            if not equal_mod_primes(link.digits.value(), link.value, trials):
                raise CertificateError(f"element {idx} link {j}: run form does not match value")
            if not equal_mod_primes(link.digits.elated_step(), nxt, trials):
                raise CertificateError(f"element {idx} link {j}: E(value) != next value")
        if direct and isinstance(el.value, int):
            _direct_check(el.value, b, u, len(el.links), idx)
    return True


def _direct_check(x: int, b: int, u: int, steps: int, idx: int) -> None:
    for _ in range(steps):
        x = elated_step(x, b)
    if x != u:
        raise CertificateError(f"element {idx}: direct iteration gives {x}, expected {u}")


# --------------------------------------------------------------------------
# JSON


def certificate_to_json(cert: RunCertificate) -> dict:
    w = cert.witness
    return {
        "base": cert.base,
        "u": cert.u,
        "d": cert.d,
        "length": cert.length,
        "kind": cert.kind,
        "start": to_json(cert.start),
        "m": None if cert.m is None else to_json(cert.m),
        "witness": None if w is None else {"T": list(w.T), "n": w.n, "k": w.k, "r": w.r},
        "notes": list(cert.notes),
        "elements": [
            {
                "value": to_json(el.value),
                "reason": el.reason,
                "links": [{"value": to_json(l.value), "digits": l.digits.to_json()} for l in el.links],
            }
            for el in cert.elements
        ],
    }


def certificate_from_json(obj: dict) -> RunCertificate:
    b = int(obj["base"])
    w = obj.get("witness")
    witness = None if w is None else GoodSetWitness(b, tuple(w["T"]), w["n"], w["k"], w["r"])
    elements = tuple(
        ElementCertificate(
            from_json(el["value"]),
            tuple(Link(from_json(l["value"]), RunSymbolic.from_json(l["digits"])) for l in el["links"]),
            el["reason"],
        )
        for el in obj["elements"]
    )
    return RunCertificate(
        b, int(obj["u"]), int(obj["d"]), int(obj["length"]), obj["kind"],
        from_json(obj["start"]), elements, witness,
        None if obj.get("m") is None else from_json(obj["m"]), tuple(obj.get("notes", ())),
    )
