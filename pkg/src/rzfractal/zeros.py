"""Tables of nontrivial Riemann zero ordinates used as fit targets."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

DEFAULT_TABLE = "zeros_100.txt"


class ZeroTableError(ValueError):
    """Raised for malformed or insufficient zero tables."""


@dataclass(frozen=True)
class ZeroTable:
    values: tuple[float, ...]
    source: str = ""
    count: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "count", len(self.values))
        for k, v in enumerate(self.values):
            if not v > 14.0:
                raise ZeroTableError(f"zero #{k + 1} = {v} is not above 14")
            if k and v <= self.values[k - 1]:
                raise ZeroTableError(f"non-monotone at entry {k + 1}")

    def __len__(self):
        return self.count

    def __getitem__(self, item):
        return self.values[item]

    def head(self, n: int) -> "ZeroTable":
        if n > self.count:
            raise ZeroTableError(f"requested {n} zeros, table has {self.count}")
        return ZeroTable(self.values[:n], self.source)


def default_table_path() -> Path:
    return Path(str(resources.files("rzfractal") / "data" / DEFAULT_TABLE))


def load_zeros(path: str | Path | None = None, n: int | None = None) -> ZeroTable:
    """Read the first `n` zero ordinates from a text table.

    The format is one decimal value per line; blank lines and lines
    starting with ``#`` are skipped.  Every problem is reported with the
    offending line number.

    Parameters
    ----------
    path : path-like, optional
        Table file.  Defaults to the bundled table of 100 zeros.
    n : int, optional
        Number of zeros to return; all of them when omitted.
    """
    path = default_table_path() if path is None else Path(path)
    if not path.is_file():
        raise ZeroTableError(f"zero table not found: {path}")
    values: list[float] = []
    prev = -math.inf
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if n is not None and len(values) >= n:
                break
            try:
                v = float(line)
            except ValueError:
                raise ZeroTableError(f"unparseable value at line {lineno}: {line!r}") from None
            if not math.isfinite(v) or v <= 14.0:
                raise ZeroTableError(f"value out of range at line {lineno}: {v}")
            if v <= prev:
                raise ZeroTableError(f"non-monotone at line {lineno}")
            prev = v
            values.append(v)
    if n is not None and len(values) < n:
        raise ZeroTableError(f"{path} holds {len(values)} zeros, {n} requested")
    try:
        return ZeroTable(tuple(values), source=str(path))
    except ZeroTableError as exc:
        raise ZeroTableError(f"{path}: {exc}") from None


def sum_of_squares(table: ZeroTable) -> float:
    return math.fsum(t * t for t in table.values)
