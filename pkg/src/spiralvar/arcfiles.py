"""Reading and writing sampled arcs as JSON or CSV.

Two on-disk layouts are supported, selected by file extension:

* ``.json`` — an object with keys ``"t"`` (or ``"u"`` for reparametrized
  arcs), ``"x"``, ``"y"`` and an optional ``"meta"`` object.
* ``.csv`` — a header row ``t,x,y`` (or ``u,x,y``) followed by one row per
  sample.  CSV carries no metadata.

Numbers are written with shortest round-trip precision (at most 17
significant digits), so save → load reproduces every double bit-exactly.
Malformed input raises :class:`~spiralvar.errors.ArcFormatError` naming the
offending field and line.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .arc import SampledArc
from .errors import ArcFormatError

__all__ = ["load_arc", "read_arc_file", "save_arc"]

_COORD_KEYS = ("t", "u")


def _float_list(obj, key: str) -> list[float]:
    if not isinstance(obj, list):
        raise ArcFormatError(f'field "{key}": expected an array, got {type(obj).__name__}')
    out = []
    for k, v in enumerate(obj):
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise ArcFormatError(f'field "{key}", entry {k}: expected a number, got {v!r}')
        out.append(float(v))
    return out


def _read_json(path: Path) -> tuple[str, SampledArc]:
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ArcFormatError(f"{path.name}: invalid JSON at line {e.lineno}: {e.msg}") from e
    if not isinstance(doc, dict):
        raise ArcFormatError(f"{path.name}: top level must be an object")
    key = next((k for k in _COORD_KEYS if k in doc), None)
    if key is None:
        raise ArcFormatError(f'{path.name}: missing coordinate field "t" (or "u")')
    for fld in (key, "x", "y"):
        if fld not in doc:
            raise ArcFormatError(f'{path.name}: missing field "{fld}"')
    t = _float_list(doc[key], key)
    x = _float_list(doc["x"], "x")
    y = _float_list(doc["y"], "y")
    if not (len(t) == len(x) == len(y)):
        raise ArcFormatError(
            f'{path.name}: fields "{key}", "x", "y" must have equal length, '
            f"got {len(t)}, {len(x)}, {len(y)}"
        )
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise ArcFormatError(f'{path.name}: field "meta" must be an object')
    return key, SampledArc(np.array(t), np.column_stack([x, y]), meta)


def _read_csv(path: Path) -> tuple[str, SampledArc]:
    lines = path.read_text().splitlines()
    if not lines:
        raise ArcFormatError(f"{path.name}: empty file")
    header = [h.strip() for h in lines[0].split(",")]
    if len(header) != 3 or header[0] not in _COORD_KEYS or header[1:] != ["x", "y"]:
        raise ArcFormatError(
            f'{path.name}, line 1: expected header "t,x,y" (or "u,x,y"), got {lines[0]!r}'
        )
    key = header[0]
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != 3:
            raise ArcFormatError(f"{path.name}, line {lineno}: expected 3 columns, got {len(cells)}")
        try:
            rows.append([float(c) for c in cells])
        except ValueError as e:
            raise ArcFormatError(f"{path.name}, line {lineno}: {e}") from e
    if len(rows) < 2:
        raise ArcFormatError(f"{path.name}: need at least 2 samples, got {len(rows)}")
    data = np.array(rows)
    return key, SampledArc(data[:, 0], data[:, 1:], {})


def read_arc_file(path: str | Path) -> tuple[str, SampledArc]:
    """Load an arc file; returns ``(coordinate_key, arc)``.

    ``coordinate_key`` is ``"t"`` for plain arcs and ``"u"`` for
    reparametrized ones (the arc's ``params`` then hold the ``u`` values).
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".json":
        return _read_json(path)
    if suffix == ".csv":
        return _read_csv(path)
    raise ArcFormatError(f"{path.name}: unsupported extension {suffix!r} (use .json or .csv)")


def load_arc(path: str | Path) -> SampledArc:
    """Load a plain (``t``-parametrized) arc."""
    key, arc = read_arc_file(path)
    if key != "t":
        raise ArcFormatError(f'{Path(path).name}: expected a "t"-parametrized arc, found "{key}"')
    return arc


def save_arc(arc: SampledArc, path: str | Path, key: str = "t") -> None:
    """Write an arc; the format follows the file extension."""
    if key not in _COORD_KEYS:
        raise ValueError(f"coordinate key must be one of {_COORD_KEYS}, got {key!r}")
    path = Path(path)
    suffix = path.suffix.lower()
    t = [float(v) for v in arc.params]
    x = [float(v) for v in arc.points[:, 0]]
    y = [float(v) for v in arc.points[:, 1]]
    if suffix == ".json":
        doc = {key: t, "x": x, "y": y}
        if arc.meta:
            doc["meta"] = arc.meta
        path.write_text(json.dumps(doc, sort_keys=True) + "\n")
    elif suffix == ".csv":
        rows = [f"{key},x,y"]
        rows.extend(f"{a!r},{b!r},{c!r}" for a, b, c in zip(t, x, y))
        path.write_text("\n".join(rows) + "\n")
    else:
        raise ArcFormatError(f"{path.name}: unsupported extension {suffix!r} (use .json or .csv)")
