"""Instance documents, CSV tables and audit logs."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DimensionError, WSWeightsError
from .scalarise import LP, Discrete, ProblemInstance


class InstanceFormatError(WSWeightsError, ValueError):
    """Malformed problem instance document."""


def fmt(value) -> str:
    """Render a number with 17 significant digits (ints and strings pass through)."""
    if isinstance(value, (bool, np.bool_)):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % value
    return str(value)


def _num(v):
    return None if v is None or (isinstance(v, float) and math.isinf(v)) else float(v)


def instance_to_dict(instance: ProblemInstance) -> dict:
    doc = {
        "p": instance.p,
        "n": instance.n,
        "objectives": instance.objectives.tolist(),
    }
    if isinstance(instance.backend, Discrete):
        doc["points"] = instance.backend.points.tolist()
    else:
        lp = instance.backend
        doc["lp"] = {
            "A": lp.A.tolist(),
            "b": lp.b.tolist(),
            "sense": list(lp.sense),
            "bounds": None if lp.bounds is None else [[_num(lo), _num(hi)] for lo, hi in lp.bounds],
        }
    return doc


def instance_from_dict(doc: dict) -> ProblemInstance:
    try:
        p, n = int(doc["p"]), int(doc["n"])
        C = np.asarray(doc["objectives"], dtype=float)
        if ("points" in doc) == ("lp" in doc):
            raise InstanceFormatError("instance needs exactly one of 'points' or 'lp'")
        if "points" in doc:
            backend = Discrete(np.asarray(doc["points"], dtype=float).reshape(-1, n))
        else:
            lp = doc["lp"]
            bounds = lp.get("bounds")
            backend = LP(
                np.asarray(lp["A"], dtype=float).reshape(-1, n),
                lp["b"],
                lp["sense"],
                None if bounds is None else [tuple(bd) for bd in bounds],
            )
        instance = ProblemInstance(C.reshape(p, n), backend)
    except InstanceFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"malformed instance: {exc}") from exc
    return instance


def load_instance(path) -> ProblemInstance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceFormatError(f"cannot read instance {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path} is not valid JSON: {exc}") from exc
    return instance_from_dict(doc)


def save_instance(instance: ProblemInstance, path) -> None:
    # json writes floats with repr, which round-trips (<= 17 significant digits)
    Path(path).write_text(json.dumps(instance_to_dict(instance), indent=1) + "\n")


def write_csv(stream, header: Sequence[str], rows: Iterable[Sequence], comments: Sequence[str] = ()) -> None:
    for line in comments:
        stream.write(f"# {line}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])


def read_csv(path) -> tuple:
    """Return (comments, header, rows) of a ``#``-commented CSV file."""
    comments, lines = [], []
    with open(path, newline="") as fh:
        for line in fh:
            if line.startswith("#"):
                comments.append(line[1:].strip())
            elif line.strip():
                lines.append(line)
    reader = list(csv.reader(lines))
    if not reader:
        return comments, [], []
    return comments, reader[0], reader[1:]


def read_weights(path, p: Optional[int] = None) -> np.ndarray:
    _, header, rows = read_csv(path)
    try:
        w = np.array([[float(v) for v in row] for row in rows], dtype=float)
    except ValueError as exc:
        raise DimensionError(f"weights file {path} has non-numeric entries") from exc
    if w.ndim != 2 or w.shape[0] == 0:
        raise DimensionError(f"weights file {path} holds no weight rows")
    if p is not None and w.shape[1] != p:
        raise DimensionError(f"weights file has {w.shape[1]} columns, instance has p={p}")
    return w


def write_audit(path, records: Iterable[dict]) -> None:
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
