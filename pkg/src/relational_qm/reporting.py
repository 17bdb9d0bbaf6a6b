"""Stable report serialization.

JSON numbers are printed at 12 significant digits so golden files compare
byte-for-byte across platforms; complex values become [re, im] pairs;
numpy containers are unwrapped.  Key order is insertion order.
"""

from __future__ import annotations

import csv
import io

import numpy as np


def format_float(x: float) -> str:
    if x == 0.0:
        return "0"   # fold -0.0
    s = format(float(x), ".12g")
    return "0" if s == "-0" else s


def _encode(obj, out):
    if isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(f'"{key}": ')
            _encode(value, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = obj.tolist() if isinstance(obj, np.ndarray) else obj
        out.append("[")
        for i, value in enumerate(seq):
            if i:
                out.append(", ")
            _encode(value, out)
        out.append("]")
    elif isinstance(obj, str):
        out.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, bool) or obj is None:
        out.append({True: "true", False: "false", None: "null"}[obj])
    elif isinstance(obj, (complex, np.complexfloating)):
        out.append(f"[{format_float(obj.real)}, {format_float(obj.imag)}]")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(obj))
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")


def dump_json(obj) -> str:
    out = []
    _encode(obj, out)
    out.append("\n")
    return "".join(out)


def dump_csv(rows, header=None) -> str:
    """CSV text from an iterable of rows; floats use the same 12-digit format."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, (float, np.floating))
                         else v for v in row])
    return buf.getvalue()


def complex_pairs(values):
    """[re, im] pairs for a vector of complex amplitudes."""
    return [[float(np.real(z)), float(np.imag(z))] for z in np.asarray(values)]
