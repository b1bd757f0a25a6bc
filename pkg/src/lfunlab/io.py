"""File formats: coefficient series, config files, atomic writes.

Coefficient files are diff-able text: a header line
`# coeffs k=<k> N=<N> kind=<integer|normalized>` followed by dense `n,value`
rows ascending from 1.  Integer kind carries the exact unnormalized values
lambda(n) * n^((k-1)/2); normalized kind carries decimal lambda(n).
"""
from __future__ import annotations

import os
import re
import tempfile
from pathlib import Path

import numpy as np

from .coefficients import CoefficientSeries, NewformSpec
from .errors import DataFormatError

_HEADER_RE = re.compile(r"^#\s*coeffs\s+k=(\d+)\s+N=(\d+)\s+kind=(integer|normalized)\s*$")


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write-then-rename so readers never observe a partial file."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def coefficient_file_text(series: CoefficientSeries) -> str:
    kind = "integer" if series.exact else "normalized"
    lines = [f"# coeffs k={series.spec.weight} N={series.spec.level} kind={kind}"]
    if series.exact:
        for n in range(1, series.n_max + 1):
            lines.append(f"{n},{series.integer_values[n]}")
    else:
        for n in range(1, series.n_max + 1):
            lines.append(f"{n},{series.values[n]!r}")
    return "\n".join(lines) + "\n"


def write_coefficients(path: str | Path, series: CoefficientSeries) -> None:
    atomic_write_text(path, coefficient_file_text(series))


def read_coefficients(path: str | Path, label: str | None = None) -> CoefficientSeries:
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines:
        raise DataFormatError(f"{path}: empty coefficient file")
    m = _HEADER_RE.match(lines[0])
    if not m:
        raise DataFormatError(f"{path}: missing or malformed header: {lines[0]!r}")
    weight, level, kind = int(m.group(1)), int(m.group(2)), m.group(3)
    integers: list[int] = [0]
    floats: list[float] = [0.0]
    expected = 1
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        n_str, _, v_str = line.partition(",")
        try:
            n = int(n_str)
        except ValueError as exc:
            raise DataFormatError(f"{path}:{lineno}: bad index {n_str!r}") from exc
        if n != expected:
            raise DataFormatError(
                f"{path}:{lineno}: rows must be dense ascending from 1 (expected {expected}, got {n})"
            )
        try:
            if kind == "integer":
                integers.append(int(v_str))
            else:
                floats.append(float(v_str))
        except ValueError as exc:
            raise DataFormatError(f"{path}:{lineno}: bad value {v_str!r}") from exc
        expected += 1
    n_max = expected - 1
    if n_max < 1:
        raise DataFormatError(f"{path}: no coefficient rows")
    spec = NewformSpec(
        weight=weight, level=level, label=label or path.stem, generator="file"
    )
    if kind == "integer":
        values = np.zeros(n_max + 1)
        half = (weight - 1) / 2.0
        for n in range(1, n_max + 1):
            values[n] = integers[n] / float(n) ** half
        return CoefficientSeries(
            spec=spec, n_max=n_max, values=values, integer_values=tuple(integers)
        )
    return CoefficientSeries(spec=spec, n_max=n_max, values=np.asarray(floats))


def read_satake_file(path: str | Path) -> list[tuple[complex, ...]]:
    """Explicit local-parameter draws: one draw per line, comma-separated
    complex literals, '#' comments."""
    path = Path(path)
    draws: list[tuple[complex, ...]] = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            draws.append(tuple(complex(tok.strip()) for tok in line.split(",")))
        except ValueError as exc:
            raise DataFormatError(f"{path}:{lineno}: bad complex literal in {raw!r}") from exc
    if not draws:
        raise DataFormatError(f"{path}: no parameter rows")
    return draws


def parse_config(path: str | Path) -> dict[str, str]:
    """key=value lines mirroring the CLI flags; '#' comments; flags win on merge."""
    path = Path(path)
    out: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise DataFormatError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        out[key.strip().replace("-", "_")] = value.strip()
    return out
