"""Command-line interface: ``elated <command> ...``.

Every command builds an :class:`OutputDocument` and prints it as JSON
(default), CSV rows, or text.  Exit codes: 0 success, 2 domain error,
3 verification failure, 64 usage error, 74 unreadable cache file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import heights
from .cache import CacheError, default_cache_dir
from .config import Settings
from .cycles import attractor, enumerate_cycles
from .digitmap import decimal_str, elated_step, render
from .preimage import (
    PreconditionError,
    compute_base_constants,
    preimages,
    reduce_preimages,
    strip_member,
)
from .sequences import (
    CertificateError,
    build_even_consecutive_run,
    build_non_elated_run,
    build_u_attracted_run,
    certificate_to_json,
    verify_certificate,
)
from .towerint import Num, RunSymbolic, TowerError, lower, to_text
from .towers import TowerVerificationError, verify_epsilon_tower

TOWER_HEIGHTS = (13, 14, 15, 16)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_VERIFY = 3
EXIT_USAGE = 64
EXIT_CACHE = 74


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass
class OutputDocument:
    command: str
    parameters: dict
    results: dict
    status: str = "ok"
    timing: float | None = None
    # rows for CSV output and lines for text output
    rows: list[dict] = field(default_factory=list, repr=False)
    lines: list[str] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "status": self.status,
        }
        if self.timing is not None:
            out["timing"] = self.timing
        return out


# --------------------------------------------------------------------------
# number payloads


def number_payload(x: Num | RunSymbolic, b: int, digit_cap: int) -> dict:
    """Decimal value (when within the digit cap) plus base-b rendering."""
    if isinstance(x, RunSymbolic):
        length = lower(x.length())
        if isinstance(length, int) and length <= digit_cap and x.is_concrete:
            v = x.to_int(digit_cap)
            if length <= 64:
                return {"value": decimal_str(v), "rendered": render(v, b)}
            return {"value": decimal_str(v), "rendered": x.render()}
        return {"value": None, "rendered": x.render(), "digits": to_text(length)}
    x = lower(x)
    if isinstance(x, int) and x.bit_length() <= digit_cap * 3:
        return {"value": decimal_str(x), "rendered": render(x, b)}
    return {"value": None, "rendered": to_text(x)}


def _rendered(p: dict) -> str:
    return p["rendered"]


# --------------------------------------------------------------------------
# commands


def cmd_cycles(args, s: Settings) -> OutputDocument:
    kind = "happy" if args.happy else "elated"
    cs = enumerate_cycles(args.base, args.exp, bound=args.bound, kind=kind, workers=s.workers)
    cycles = [
        {"members": [str(m) for m in c.members], "rendered": list(c.rendered())}
        for c in cs.cycles
    ]
    doc = OutputDocument(
        "cycles",
        {"base": args.base, "exp": args.exp, "kind": kind},
        {"count": len(cycles), "cycles": cycles},
    )
    doc.rows = [{"cycle": i, "members": " ".join(c["rendered"])} for i, c in enumerate(cycles)]
    doc.lines = [cs.text()]
    return doc


def cmd_height(args, s: Settings) -> OutputDocument:
    kind = "happy" if args.happy else "elated"
    if args.n < 1:
        raise PreconditionError("N must be a positive integer")
    rep, steps = attractor(args.n, args.base, kind=kind)
    h = heights.height(args.n, args.base, kind=kind)
    res = {
        "n": number_payload(args.n, args.base, s.digit_cap),
        "height": h,
        "attractor": str(rep),
        "steps": steps,
    }
    doc = OutputDocument("height", {"n": str(args.n), "base": args.base, "kind": kind}, res)
    doc.rows = [{"n": args.n, "height": "" if h is None else h, "attractor": rep, "steps": steps}]
    label = "not attracted to 1" if h is None else f"height {h}"
    doc.lines = [f"{render(args.n, args.base)}: {label} (cycle min {render(rep, args.base)}, {steps} steps)"]
    return doc


def _tower_epsilon(k: int, s: Settings) -> heights.EpsilonRecord:
    # beyond any search range: build and certify the run form instead
    report = verify_epsilon_tower(k, s.primes)
    path = [report.values[f"eps{j}"] for j in range(k, 12, -1)]
    tail = [report.values["E(eps13)"]]
    while tail[-1] != 1:
        tail.append(elated_step(tail[-1], 10))
    return heights.EpsilonRecord(10, k, report.epsilon, tuple(path + tail), "certificate", heights.DEFAULT_LIMIT)


def cmd_epsilon(args, s: Settings) -> OutputDocument:
    if args.base == 10 and args.k in TOWER_HEIGHTS and args.limit is None:
        rec = _tower_epsilon(args.k, s)
    else:
        rec = heights.epsilon(args.k, args.base, limit=args.limit, workers=s.workers)
    value = number_payload(rec.value, args.base, s.digit_cap)
    res = {
        "k": args.k,
        "epsilon": value,
        "trajectory": [to_text(v) for v in rec.trajectory],
        "method": rec.method,
        "search_limit": str(rec.search_limit),
    }
    doc = OutputDocument(
        "epsilon", {"k": args.k, "base": args.base, "limit": str(rec.search_limit)}, res
    )
    doc.rows = [{"k": args.k, "epsilon": value["value"] or "", "rendered": value["rendered"]}]
    doc.lines = [value["rendered"]]
    return doc


def cmd_sigma(args, s: Settings) -> OutputDocument:
    v = heights.sigma(args.k, args.base, limit=args.limit, workers=s.workers)
    doc = OutputDocument(
        "sigma", {"k": args.k, "base": args.base}, {"k": args.k, "sigma": number_payload(v, args.base, s.digit_cap)}
    )
    doc.rows = [{"k": args.k, "sigma": v, "rendered": render(v, args.base)}]
    doc.lines = [render(v, args.base)]
    return doc


def cmd_preimage(args, s: Settings) -> OutputDocument:
    b = args.base
    ps = reduce_preimages(args.a, b) if args.reduced else preimages(args.a, b)
    members = [number_payload(m, b, s.digit_cap) for m in ps.members]
    res = {
        "a": str(args.a),
        "length": to_text(ps.length),
        "members": members,
        "stripped": sorted(strip_member(m) for m in ps.members),
        "reduced_from": None if ps.reduced_from is None else str(ps.reduced_from),
        "q": to_text(ps.q),
    }
    doc = OutputDocument("preimage", {"a": str(args.a), "base": b, "reduced": args.reduced}, res)
    doc.rows = [{"member": _rendered(m)} for m in members]
    doc.lines = ["{" + ", ".join(_rendered(m) for m in members) + "}"]
    return doc


def cmd_constants(args, s: Settings) -> OutputDocument:
    c = compute_base_constants(args.base)
    res = {"a_star": c.a_star, "C": c.C, "window": c.window, "at_window_edge": c.at_window_edge}
    doc = OutputDocument("constants", {"base": args.base}, res)
    doc.rows = [{"base": args.base, "a_star": c.a_star, "C": c.C}]
    doc.lines = [f"a* = {c.a_star}, C = {c.C}"]
    return doc


def cmd_sequence(args, s: Settings) -> OutputDocument:
    b, L = args.base, args.length
    if args.mode == "attracted":
        u = 1 if args.target is None else args.target
        cert = build_u_attracted_run(L, b, u, ceiling=args.ceiling, workers=s.workers)
    elif args.mode == "consecutive":
        if args.target is None:
            raise PreconditionError("consecutive runs need --target (an even cycle member)")
        cert = build_even_consecutive_run(L, b, args.target, ceiling=args.ceiling, workers=s.workers)
    else:
        cert = build_non_elated_run(L, b, args.target, ceiling=args.ceiling, workers=s.workers)
    verify_certificate(cert, trials=s.primes, digit_cap=s.digit_cap)
    elements = [number_payload(v, b, s.digit_cap) for v in cert.values]
    res = {
        "u": cert.u,
        "d": cert.d,
        "length": len(cert.elements),
        "elements": elements,
        "verified": True,
        "certificate": certificate_to_json(cert),
    }
    doc = OutputDocument(
        "sequence",
        {"mode": args.mode, "base": b, "length": L, "target": args.target},
        res,
        status="verified",
    )
    doc.rows = [{"index": i, "element": _rendered(e)} for i, e in enumerate(elements)]
    doc.lines = [_rendered(e) for e in elements]
    return doc


def cmd_verify_towers(args, s: Settings) -> OutputDocument:
    ks = [args.k] if args.k is not None else [13, 14, 15, 16]
    reports = [verify_epsilon_tower(k, args.primes or s.primes, exhaustive=args.exhaustive) for k in ks]
    out = []
    for r in reports:
        out.append(
            {
                "k": r.k,
                "height": r.height,
                "epsilon": r.epsilon.render(),
                "status": r.status,
                "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in r.checks],
                "residues": [
                    {"name": x.name, "modulus": x.modulus, "residue": x.value, "expected": x.expected}
                    for x in r.residues
                ],
            }
        )
    status = "verified" if all(r.status == "verified" for r in reports) else "failed"
    doc = OutputDocument(
        "verify-towers",
        {"k": args.k, "primes": args.primes or s.primes, "exhaustive": args.exhaustive},
        {"reports": out},
        status=status,
    )
    for r in reports:
        for x in r.residues:
            doc.rows.append({"k": r.k, "name": x.name, "modulus": x.modulus, "residue": x.value})
        doc.lines.append(f"eps_{r.k} = {r.epsilon.render()}: height {r.height}, {r.status}")
        for c in r.checks:
            doc.lines.append(f"  [{c.status}] {c.name}")
    return doc


COMMANDS = {
    "cycles": cmd_cycles,
    "height": cmd_height,
    "epsilon": cmd_epsilon,
    "sigma": cmd_sigma,
    "preimage": cmd_preimage,
    "constants": cmd_constants,
    "sequence": cmd_sequence,
    "verify-towers": cmd_verify_towers,
}


# --------------------------------------------------------------------------
# parser


def _global_options(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=["json", "csv", "text"], default=d("json"))
    p.add_argument("--cache-dir", default=d(None), help="height cache directory (overrides $ELATED_CACHE_DIR)")
    p.add_argument("--digit-cap", type=int, default=d(None))
    p.add_argument("--threads", type=int, default=d(1))
    p.add_argument("--timing", action="store_true", default=d(False), help="add wall time to the output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="elated", description="Elated and happy digit maps.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        _global_options(p, suppress=True)
        return p

    p = add("cycles", "all cycles of the map")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--exp", type=int, default=2)
    p.add_argument("--bound", type=int, default=None, help="descent bound (needed when exp != 2)")
    p.add_argument("--happy", action="store_true")

    p = add("height", "height of one number")
    p.add_argument("n", type=int)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--happy", action="store_true")

    p = add("epsilon", "smallest elated number of height K")
    p.add_argument("k", type=int)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)

    p = add("sigma", "smallest happy number of height K")
    p.add_argument("k", type=int)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)

    p = add("preimage", "shortest fully basic preimage set")
    p.add_argument("a", type=int)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--reduced", action="store_true", help="force the reduction to a small representative")

    p = add("constants", "a* and C for a base")
    p.add_argument("--base", type=int, required=True)

    p = add("sequence", "certified runs of attracted or non-elated numbers")
    p.add_argument("mode", choices=["attracted", "consecutive", "nonelated"])
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--target", type=int, default=None, help="cycle member u")
    p.add_argument("--ceiling", type=int, default=10**7, help="largest shift n tried")

    p = add("verify-towers", "certify the height 13-16 minima in base 10")
    p.add_argument("--k", type=int, choices=[13, 14, 15, 16], default=None)
    p.add_argument("--primes", type=int, default=None)
    p.add_argument("--exhaustive", action="store_true", help="rerun the height-12 basic search")
    return parser


# --------------------------------------------------------------------------
# output


def format_document(doc: OutputDocument, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc.to_json(), indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if doc.rows:
            w = csv.DictWriter(buf, fieldnames=list(doc.rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(doc.rows)
        return buf.getvalue()
    text = "\n".join(doc.lines) + "\n"
    if doc.timing is not None:
        text += f"# {doc.timing:.3f}s\n"
    return text


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    cache_dir = args.cache_dir if args.cache_dir is not None else default_cache_dir()
    settings = Settings(workers=max(1, args.threads), cache_dir=cache_dir)
    if args.digit_cap is not None:
        settings.digit_cap = args.digit_cap
    heights.configure_cache(None if cache_dir is None else Path(cache_dir))
    start = time.perf_counter()
    try:
        doc = COMMANDS[args.command](args, settings)
        heights.flush_tables()
    except CacheError as exc:
        print(f"cache error: {exc}", file=stderr)
        return EXIT_CACHE
    except (TowerVerificationError, CertificateError) as exc:
        print(f"verification failed: {exc}", file=stderr)
        return EXIT_VERIFY
    except (ValueError, LookupError, TowerError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    finally:
        heights.configure_cache(None)
    if args.timing:
        doc.timing = round(time.perf_counter() - start, 3)
    stdout.write(format_document(doc, args.format))
    return EXIT_OK if doc.status in ("ok", "verified") else EXIT_VERIFY


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
