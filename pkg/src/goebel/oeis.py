"""OEIS b-file parsing and cross-checking (file-based; no network).

A b-file is plain ASCII, one "<index> <value>" pair per line, with
"#"-comment lines and blank lines ignored; LF and CRLF both accepted.
Indices must be strictly increasing.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Iterable

from .engine import DEFAULT_HARD_CAP, compute_nk
from .errors import GoebelError


class ParseError(GoebelError, ValueError):
    """A malformed b-file line; carries the 1-based line number."""

    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {reason}")


@dataclass(frozen=True)
class BFileEntry:
    index: int
    value: int


def parse_bfile(text: str) -> list[BFileEntry]:
    """Parse b-file content into entries, enforcing strictly increasing indices."""
    entries: list[BFileEntry] = []
    last_index = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(line_no, f"expected '<index> <value>', got {raw!r}")
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(line_no, f"non-integer field in {raw!r}") from None
        if last_index is not None and index <= last_index:
            raise ParseError(line_no, f"index {index} not greater than {last_index}")
        last_index = index
        entries.append(BFileEntry(index, value))
    return entries


def load_bfile(path: str | Path) -> list[BFileEntry]:
    return parse_bfile(Path(path).read_text(encoding="ascii"))


def render_bfile(entries: Iterable[BFileEntry]) -> str:
    """Serialize entries back to canonical b-file lines."""
    return "".join(f"{e.index} {e.value}\n" for e in entries)


@dataclass(frozen=True)
class Mismatch:
    k: int
    computed: int | None
    listed: int


@dataclass(frozen=True)
class CheckReport:
    """Outcome of comparing computed first-non-integer indices to a b-file."""

    checked: tuple[int, ...]
    mismatches: tuple[Mismatch, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "checked_k": list(self.checked),
            "matches": len(self.checked) - len(self.mismatches),
            "mismatches": [
                {"k": m.k, "computed": m.computed, "listed": m.listed}
                for m in self.mismatches
            ],
        }


def check_entries(
    entries: list[BFileEntry],
    k_to: int,
    offset: int = 0,
    hard_cap: int = DEFAULT_HARD_CAP,
    jobs: int = 1,
) -> CheckReport:
    """Compare computed values against b-file entries mapped by k = index + offset.

    Entries outside [2, k_to] after the offset are ignored.
    """
    targets = {
        e.index + offset: e.value for e in entries if 2 <= e.index + offset <= k_to
    }
    if not targets:
        return CheckReport(checked=(), mismatches=())
    ks = sorted(targets)
    if jobs > 1:
        worker = partial(compute_nk, hard_cap=hard_cap)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, ks))
    else:
        results = [compute_nk(k, hard_cap=hard_cap) for k in ks]
    mismatches = []
    for k, res in zip(ks, results):
        if res.nk != targets[k]:
            mismatches.append(Mismatch(k=k, computed=res.nk, listed=targets[k]))
    return CheckReport(checked=tuple(ks), mismatches=tuple(mismatches))
