"""Structured-text file formats.

All artifacts (measure files, butterfly parameter files, matrix files,
verification reports) are JSON documents written by a deterministic
serializer: keys keep insertion order, floats are printed at 17
significant digits (lossless for binary64), exact scalars are printed as
"p/q" strings.  Loading in rational mode parses decimal literals as exact
decimal fractions, so a rational round trip never touches binary floating
point.
"""

from __future__ import annotations

import json
from fractions import Fraction
from io import StringIO
from typing import Any, Dict, List, Optional, Sequence

from .modes import Scalar, validate_mode
from .moments import DiscreteMeasure


def dumps(obj: Any) -> str:
    """Deterministic structured-text rendering (valid JSON)."""
    out = StringIO()
    _write(obj, out, 0)
    out.write("\n")
    return out.getvalue()


def _write(obj: Any, out: StringIO, indent: int) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            out.write("{}")
            return
        out.write("{\n")
        items = list(obj.items())
        for i, (k, v) in enumerate(items):
            out.write(f'{pad}  "{k}": ')
            _write(v, out, indent + 1)
            out.write(",\n" if i + 1 < len(items) else "\n")
        out.write(pad + "}")
    elif isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            out.write("[]")
            return
        if all(_is_scalar(x) for x in seq):
            out.write("[" + ", ".join(_scalar_text(x) for x in seq) + "]")
            return
        out.write("[\n")
        for i, v in enumerate(seq):
            out.write(pad + "  ")
            _write(v, out, indent + 1)
            out.write(",\n" if i + 1 < len(seq) else "\n")
        out.write(pad + "]")
    else:
        out.write(_scalar_text(obj))


def _is_scalar(x: Any) -> bool:
    return x is None or isinstance(x, (bool, int, float, str, Fraction))


def _scalar_text(x: Any) -> str:
    if x is None:
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return f'"{x.numerator}/{x.denominator}"'
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, str):
        return json.dumps(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def loads(text: str, mode: str = "double") -> Any:
    """Parse a structured-text document in the given scalar mode."""
    validate_mode(mode)
    if mode == "rational":
        doc = json.loads(text, parse_float=Fraction, parse_int=int)
    else:
        doc = json.loads(text)
    return _coerce(doc, mode)


def _coerce(obj: Any, mode: str) -> Any:
    if isinstance(obj, dict):
        return {k: _coerce(v, mode) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_coerce(v, mode) for v in obj]
    if isinstance(obj, str) and _looks_rational(obj):
        frac = Fraction(obj)
        return frac if mode == "rational" else float(frac)
    if isinstance(obj, (int, Fraction)) and mode == "double" and not isinstance(obj, bool):
        return obj
    return obj


def _looks_rational(s: str) -> bool:
    if "/" not in s:
        return False
    num, _, den = s.partition("/")
    try:
        int(num)
        int(den)
        return True
    except ValueError:
        return False


# ---------------------------------------------------------------------------
# measure files
# ---------------------------------------------------------------------------

def measure_document(m: DiscreteMeasure, metadata: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "nodes": list(m.nodes),
        "weights": list(m.weights),
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def save_measure(m: DiscreteMeasure, metadata: Optional[Dict[str, Any]] = None) -> str:
    return dumps(measure_document(m, metadata))


def load_measure(text: str, mode: str = "double") -> DiscreteMeasure:
    doc = loads(text, mode)
    try:
        nodes = doc["nodes"]
        weights = doc["weights"]
    except (KeyError, TypeError) as exc:
        raise ValueError("measure file needs 'nodes' and 'weights' arrays") from exc
    if mode == "double":
        nodes = [float(x) for x in nodes]
        weights = [float(x) for x in weights]
    else:
        nodes = [x if isinstance(x, Fraction) else Fraction(x) for x in nodes]
        weights = [x if isinstance(x, Fraction) else Fraction(x) for x in weights]
    return DiscreteMeasure(nodes, weights)


# ---------------------------------------------------------------------------
# butterfly parameter files
# ---------------------------------------------------------------------------

def save_butterfly_params(a: Sequence[Scalar], b: Sequence[Scalar],
                          c: Sequence[Scalar], d: Sequence[Scalar]) -> str:
    return dumps({"a": list(a), "b": list(b), "c": list(c), "d": list(d)})


def load_butterfly_params(text: str, mode: str = "double"):
    doc = loads(text, mode)
    try:
        parts = [doc["a"], doc["b"], doc["c"], doc["d"]]
    except (KeyError, TypeError) as exc:
        raise ValueError("butterfly file needs 'a', 'b', 'c', 'd' arrays") from exc
    return tuple([float(x) for x in part] for part in parts)


# ---------------------------------------------------------------------------
# matrices and polynomials
# ---------------------------------------------------------------------------

def matrix_document(m: Sequence[Sequence[Scalar]]) -> Dict[str, Any]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    return {"rows": rows, "cols": cols, "data": [list(r) for r in m]}


def load_matrix(text: str, mode: str = "double") -> List[List[Scalar]]:
    doc = loads(text, mode)
    data = doc["data"]
    if len(data) != doc["rows"] or any(len(r) != doc["cols"] for r in data):
        raise ValueError("matrix dimensions header disagrees with data")
    return data


def poly_pairs(p) -> List[List[Scalar]]:
    """Laurent polynomial as sorted [exponent, coefficient] pairs."""
    return [[e, c] for e, c in p.to_pairs()]
