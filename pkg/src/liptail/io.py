"""CSV and binary serialization for sample batches and result tables."""

import csv
import io
import math
import struct

import numpy as np

from .errors import ParameterError

BINARY_MAGIC = b"LTSB"
BINARY_VERSION = 1
_HEADER = struct.Struct("<4sIII")  # magic, version, n, d: 16 bytes


def format_float(x):
    """17 significant digits; None and NaN become empty cells."""
    if x is None:
        return ""
    x = float(x)
    if math.isnan(x):
        return ""
    return format(x, ".17g")


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return format_float(v)


def table_to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def write_table(path, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(table_to_csv(header, rows))


def batch_to_csv(data):
    data = np.atleast_2d(np.asarray(data, dtype=float))
    header = [f"x{j}" for j in range(data.shape[1])]
    return table_to_csv(header, data.tolist())


def write_batch_csv(path, data):
    with open(path, "w", newline="") as fh:
        fh.write(batch_to_csv(data))


def batch_to_bytes(data):
    """16-byte header (magic, version, n, d) then float64 little-endian, column-major."""
    data = np.atleast_2d(np.asarray(data, dtype=float))
    n, d = data.shape
    return _HEADER.pack(BINARY_MAGIC, BINARY_VERSION, n, d) + np.asfortranarray(data).astype("<f8").tobytes(order="F")


def batch_from_bytes(blob):
    if len(blob) < _HEADER.size:
        raise ParameterError("binary batch is shorter than its header")
    magic, version, n, d = _HEADER.unpack_from(blob)
    if magic != BINARY_MAGIC:
        raise ParameterError(f"bad magic {magic!r}")
    if version != BINARY_VERSION:
        raise ParameterError(f"unsupported binary version {version}")
    body = blob[_HEADER.size:]
    if len(body) != 8 * n * d:
        raise ParameterError("binary batch body has the wrong length")
    return np.frombuffer(body, dtype="<f8").reshape((n, d), order="F").astype(float)


def write_batch_binary(path, data):
    with open(path, "wb") as fh:
        fh.write(batch_to_bytes(data))


def read_batch_binary(path):
    with open(path, "rb") as fh:
        return batch_from_bytes(fh.read())


def read_batch_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return np.array([[float(v) for v in r] for r in rows[1:]], dtype=float)


def read_column(path):
    """Single numeric column with an optional header line."""
    values = []
    with open(path, newline="") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if not row or not row[0].strip():
                continue
            if len(row) != 1:
                raise ParameterError(f"line {i + 1}: expected a single column")
            try:
                values.append(float(row[0]))
            except ValueError:
                if i == 0 and not values:
                    continue
                raise ParameterError(f"line {i + 1}: not a number: {row[0]!r}") from None
    if not values:
        raise ParameterError("no numeric values found")
    return np.array(values)
