"""On-disk height cache, one text file per (base, exponent, kind).

Layout::

    ELATED-HEIGHT-CACHE v1 base=10 exp=2 kind=elated
    1 0
    2 -
    ...

Each record is ``<n> <height>`` with ``-`` for values not attracted to 1.
Keys are strictly increasing.  Files are replaced atomically.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

MAGIC = "ELATED-HEIGHT-CACHE"
VERSION = 1
SENTINEL = "-"
ENV_VAR = "ELATED_CACHE_DIR"


class CacheError(RuntimeError):
    def __init__(self, path: Path, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path


def default_cache_dir() -> Path | None:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


def cache_path(cache_dir: str | Path, b: int, e: int, kind: str) -> Path:
    return Path(cache_dir) / f"heights-b{b}-e{e}-{kind}.txt"


def _header(b: int, e: int, kind: str) -> str:
    return f"{MAGIC} v{VERSION} base={b} exp={e} kind={kind}"


def save_heights(path: Path, b: int, e: int, kind: str, memo: dict[int, int | None]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(_header(b, e, kind) + "\n")
            for n in sorted(memo):
                h = memo[n]
                fh.write(f"{n} {SENTINEL if h is None else h}\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_heights(path: Path, b: int, e: int, kind: str) -> dict[int, int | None]:
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise CacheError(path, f"unreadable ({exc})") from exc
    if not lines or lines[0] != _header(b, e, kind):
        raise CacheError(path, "bad or mismatched header")
    memo: dict[int, int | None] = {}
    prev = 0
    for lineno, line in enumerate(lines[1:], 2):
        parts = line.split()
        if len(parts) != 2:
            raise CacheError(path, f"line {lineno}: malformed record")
        try:
            n = int(parts[0])
            h = None if parts[1] == SENTINEL else int(parts[1])
        except ValueError:
            raise CacheError(path, f"line {lineno}: malformed record") from None
        if n <= prev:
            raise CacheError(path, f"line {lineno}: keys not strictly increasing")
        if h is not None and h < 0:
            raise CacheError(path, f"line {lineno}: negative height")
        memo[n] = h
        prev = n
    return memo
