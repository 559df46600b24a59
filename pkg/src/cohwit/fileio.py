"""File formats: matrix/vector documents, measurement documents, sweep CSV.

All documents are JSON text.  A matrix document has fields ``dim`` and
``data``, where ``data`` is a row-major list of ``dim*dim`` two-element
``[re, im]`` pairs; a vector document uses ``dim`` pairs.  The two are
distinguished by the data length (a ``dim = 1`` document is read as a
matrix).  A measurement document has ``dim``, ``kind`` ("projectors" or
"povm") and ``operators``, a list of matrix documents.

Writing is canonical (compact separators, fixed key order, shortest
round-trip float representation), so write -> read -> write is
byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import FileFormatError
from .measurements import MEASUREMENT_TOL, PovmSet, ProjectorSet

MAX_DIM = 4096

__all__ = [
    "MAX_DIM",
    "matrix_obj",
    "vector_obj",
    "measurement_obj",
    "write_matrix",
    "write_vector",
    "write_measurement",
    "read_array",
    "read_matrix",
    "read_vector",
    "read_measurement",
    "write_sweep_csv",
    "format_sweep_csv",
    "file_digest",
]


def _pairs(values: np.ndarray) -> list[list[float]]:
    flat = np.asarray(values, dtype=complex).ravel()
    return [[float(z.real), float(z.imag)] for z in flat]


def matrix_obj(arr) -> dict:
    a = np.asarray(arr, dtype=complex)
    return {"dim": int(a.shape[0]), "data": _pairs(a)}


def vector_obj(vec) -> dict:
    v = np.asarray(vec, dtype=complex).ravel()
    return {"dim": int(v.shape[0]), "data": _pairs(v)}


def measurement_obj(mset: ProjectorSet | PovmSet) -> dict:
    return {
        "dim": int(mset.dim),
        "kind": mset.kind,
        "operators": [matrix_obj(op) for op in mset],
    }


def _dump(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, separators=(",", ":")) + "\n")


def write_matrix(path, arr) -> None:
    _dump(matrix_obj(arr), path)


def write_vector(path, vec) -> None:
    _dump(vector_obj(vec), path)


def write_measurement(path, mset: ProjectorSet | PovmSet) -> None:
    _dump(measurement_obj(mset), path)


def _parse_dim(obj, what: str) -> int:
    if not isinstance(obj, dict):
        raise FileFormatError(f"{what}: expected a JSON object, got {type(obj).__name__}")
    if "dim" not in obj:
        raise FileFormatError(f"{what}: missing required field 'dim'")
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise FileFormatError(f"{what}: 'dim' must be an integer, got {dim!r}")
    if dim < 1 or dim > MAX_DIM:
        raise FileFormatError(f"{what}: 'dim' must lie in [1, {MAX_DIM}], got {dim}")
    return dim


def _parse_pairs(data, count: int, what: str) -> np.ndarray:
    values = np.empty(count, dtype=complex)
    for k, entry in enumerate(data):
        if (
            not isinstance(entry, (list, tuple))
            or len(entry) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
        ):
            raise FileFormatError(f"{what}: data[{k}] must be a two-element [re, im] number pair")
        values[k] = complex(float(entry[0]), float(entry[1]))
    if not np.isfinite(values).all():
        raise FileFormatError(f"{what}: data contains non-finite entries")
    return values


def parse_array_obj(obj, what: str = "document") -> tuple[str, np.ndarray]:
    """Parse a matrix or vector document; returns ('matrix'|'vector', array)."""
    dim = _parse_dim(obj, what)
    data = obj.get("data")
    if not isinstance(data, list):
        raise FileFormatError(f"{what}: missing or invalid 'data' field")
    if len(data) == dim * dim:
        values = _parse_pairs(data, dim * dim, what)
        return "matrix", values.reshape(dim, dim)
    if len(data) == dim and dim > 1:
        return "vector", _parse_pairs(data, dim, what)
    raise FileFormatError(
        f"{what}: data has length {len(data)}, expected {dim * dim} (matrix)"
        + (f" or {dim} (vector)" if dim > 1 else "")
    )


def _load(path):
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: not valid JSON ({exc})") from None


def read_array(path) -> tuple[str, np.ndarray]:
    """Read a matrix or vector document; returns ('matrix'|'vector', array)."""
    return parse_array_obj(_load(path), what=str(path))


def read_matrix(path) -> np.ndarray:
    kind, arr = read_array(path)
    if kind != "matrix":
        raise FileFormatError(f"{path}: expected a matrix document, found a vector")
    return arr


def read_vector(path) -> np.ndarray:
    kind, arr = read_array(path)
    if kind != "vector":
        raise FileFormatError(f"{path}: expected a vector document, found a matrix")
    return arr


def read_measurement(path, tol: float = MEASUREMENT_TOL) -> ProjectorSet | PovmSet:
    """Read and validate a measurement document.

    Invariant violations raise with the failing invariant and the offending
    operator index in the message.
    """
    obj = _load(path)
    what = str(path)
    dim = _parse_dim(obj, what)
    kind = obj.get("kind")
    if kind not in ("projectors", "povm"):
        raise FileFormatError(f"{what}: 'kind' must be 'projectors' or 'povm', got {kind!r}")
    operators = obj.get("operators")
    if not isinstance(operators, list) or not operators:
        raise FileFormatError(f"{what}: 'operators' must be a non-empty list")
    stack = []
    for index, op_obj in enumerate(operators):
        op_kind, arr = parse_array_obj(op_obj, what=f"{what}: operator {index}")
        if op_kind != "matrix":
            raise FileFormatError(f"{what}: operator {index} is a vector, expected a matrix")
        if arr.shape[0] != dim:
            raise FileFormatError(
                f"{what}: operator {index} has dimension {arr.shape[0]}, expected {dim}"
            )
        stack.append(arr)
    cls = ProjectorSet if kind == "projectors" else PovmSet
    return cls(stack, tol=tol)


def format_sweep_csv(points) -> str:
    """Render sweep rows as `phi,expectation,detection_value` at 12 significant digits."""
    lines = ["phi,expectation,detection_value"]
    for point in points:
        lines.append(f"{point.phi:.12g},{point.expectation:.12g},{point.detection_value:.12g}")
    return "\n".join(lines) + "\n"


def write_sweep_csv(path, points) -> None:
    Path(path).write_text(format_sweep_csv(points))


def file_digest(path) -> str:
    """Short sha256 content digest used in CLI reports."""
    digest = hashlib.sha256(Path(path).read_bytes()).hexdigest()
    return f"sha256:{digest[:16]}"
