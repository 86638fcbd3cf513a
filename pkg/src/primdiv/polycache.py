"""On-disk cache of Phi_n, g_n and g_n' coefficients, one text file per n.

File layout (coefficients lowest degree first, decimal)::

    primdiv-polycache 1
    n 35
    phi 1 -1 0 ...
    g ...
    gprime ...
    sha256 <hex digest of every line above, newline-terminated>

A file whose digest or contents do not check out is ignored and rebuilt.
"""

from __future__ import annotations

import hashlib
import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from . import cyclotomic
from .cyclotomic import IntegerPolynomial

log = logging.getLogger(__name__)

FORMAT_TAG = "primdiv-polycache"
FORMAT_VERSION = 1
ENV_VAR = "PRIMDIV_CACHE_DIR"


@dataclass(frozen=True)
class CacheEntry:
    n: int
    phi: IntegerPolynomial
    g: Optional[IntegerPolynomial]
    gprime: Optional[IntegerPolynomial]


def resolve_dir(cli_value: str | os.PathLike | None) -> Optional[Path]:
    """The environment variable wins over the command-line value."""
    env = os.environ.get(ENV_VAR)
    chosen = env if env else cli_value
    return Path(chosen) if chosen else None


def _coeff_line(tag: str, poly: Optional[IntegerPolynomial]) -> str:
    if poly is None:
        return f"{tag} -"
    return " ".join([tag, *map(str, poly.coeffs)])


def _parse_line(line: str, tag: str) -> Optional[IntegerPolynomial]:
    head, _, rest = line.partition(" ")
    if head != tag:
        raise ValueError(f"expected {tag!r}, got {head!r}")
    if rest == "-":
        return None
    return IntegerPolynomial(tuple(int(c) for c in rest.split()))


def render(entry: CacheEntry) -> str:
    body = [f"{FORMAT_TAG} {FORMAT_VERSION}", f"n {entry.n}",
            _coeff_line("phi", entry.phi), _coeff_line("g", entry.g),
            _coeff_line("gprime", entry.gprime)]
    text = "".join(line + "\n" for line in body)
    return text + f"sha256 {hashlib.sha256(text.encode()).hexdigest()}\n"


def parse(text: str) -> CacheEntry:
    lines = text.splitlines()
    if len(lines) != 6:
        raise ValueError("wrong number of lines")
    body = "".join(line + "\n" for line in lines[:5])
    tag, _, digest = lines[5].partition(" ")
    if tag != "sha256" or digest != hashlib.sha256(body.encode()).hexdigest():
        raise ValueError("checksum mismatch")
    if lines[0] != f"{FORMAT_TAG} {FORMAT_VERSION}":
        raise ValueError(f"unsupported header {lines[0]!r}")
    key, _, n = lines[1].partition(" ")
    if key != "n":
        raise ValueError("missing n line")
    phi = _parse_line(lines[2], "phi")
    if phi is None:
        raise ValueError("missing phi")
    return CacheEntry(int(n), phi, _parse_line(lines[3], "g"), _parse_line(lines[4], "gprime"))


def build_entry(n: int) -> CacheEntry:
    phi = cyclotomic.cyclotomic_poly(n)
    if n < 3:
        return CacheEntry(n, phi, None, None)
    g = cyclotomic.g_poly(n)
    return CacheEntry(n, phi, g, g.derivative())


class PolyCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def path(self, n: int) -> Path:
        return self.directory / f"phi_{n}.txt"

    def load(self, n: int) -> Optional[CacheEntry]:
        """The stored entry for n, or None when absent or corrupt."""
        path = self.path(n)
        try:
            entry = parse(path.read_text())
        except FileNotFoundError:
            return None
        except (OSError, ValueError) as exc:
            log.warning("discarding cache file %s: %s", path, exc)
            return None
        if entry.n != n or (entry.g is not None and entry.gprime != entry.g.derivative()):
            log.warning("discarding inconsistent cache file %s", path)
            return None
        return entry

    def store(self, entry: CacheEntry) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path(entry.n)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(render(entry))
        os.replace(tmp, path)
        return path

    def get(self, n: int) -> CacheEntry:
        """Load n, rebuilding and rewriting the file when needed."""
        entry = self.load(n)
        if entry is None:
            entry = build_entry(n)
            self.store(entry)
        return entry

    def warm(self, ns: Iterable[int]) -> int:
        """Seed the in-memory polynomial cache from whatever is on disk."""
        count = 0
        for n in ns:
            entry = self.load(n)
            if entry is not None:
                cyclotomic.seed_cache(n, entry.phi, entry.g)
                count += 1
        return count

    def build(self, ns: Iterable[int]) -> list[int]:
        """Make sure every n has a valid file; returns the n that were (re)built."""
        rebuilt = []
        for n in ns:
            if self.load(n) is None:
                self.store(build_entry(n))
                rebuilt.append(n)
        return rebuilt
