"""Model file format: exact serialization of a base module plus lambdas.

Files are JSON with every rational written as a "num/den" (or plain "num")
string, so nothing ever passes through floating point.  Schema:

    {
      "name": "hopf-s3",            # optional
      "description": "...",         # optional
      "n": 1,
      "s": 1,
      "lambdas": ["1"],             # s entries
      "dims": [1, 0, 1],            # 2n+1 entries
      "L": [ [["1"]], [], [] ]      # per degree p, a dims[p+2] x dims[p]
    }                               # matrix as rows (empty when 0 rows)

Parse errors raise ModelFileError naming the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .invariant import InvariantComplex, build_model
from .lefschetz import LefschetzModule
from .linalg import Matrix


class ModelFileError(ValueError):
    """The file does not describe a valid model."""


@dataclass(frozen=True)
class ModelFile:
    n: int
    s: int
    lambdas: tuple[Fraction, ...]
    dims: tuple[int, ...]
    L: tuple[Matrix, ...]
    name: str = ""
    description: str = ""
    labels: tuple[tuple[str, ...], ...] | None = None


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ModelFileError(f"{where}: rationals must be strings like \"3/2\" or integers")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ModelFileError(f"{where}: bad rational {value!r}: {exc}") from None


def parse_model(text: str) -> ModelFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ModelFileError("top level must be an object")
    for key in ("n", "s", "lambdas", "dims", "L"):
        if key not in data:
            raise ModelFileError(f"missing required field {key!r}")
    n, s = data["n"], data["s"]
    if not isinstance(n, int) or n < 0:
        raise ModelFileError("n: must be a non-negative integer")
    if not isinstance(s, int) or s < 1:
        raise ModelFileError("s: must be a positive integer")
    lambdas = data["lambdas"]
    if not isinstance(lambdas, list) or len(lambdas) != s:
        raise ModelFileError(f"lambdas: expected a list of {s} rationals")
    lambdas = tuple(_rational(x, f"lambdas[{i}]") for i, x in enumerate(lambdas))
    dims = data["dims"]
    if (
        not isinstance(dims, list)
        or len(dims) != 2 * n + 1
        or any(not isinstance(d, int) or d < 0 for d in dims)
    ):
        raise ModelFileError(f"dims: expected a list of {2 * n + 1} non-negative integers")
    dims = tuple(dims)
    raw_l = data["L"]
    if not isinstance(raw_l, list) or len(raw_l) != 2 * n + 1:
        raise ModelFileError(f"L: expected a list of {2 * n + 1} matrices")
    matrices = []
    for p, rows in enumerate(raw_l):
        want_rows = dims[p + 2] if p + 2 <= 2 * n else 0
        want_cols = dims[p]
        if not isinstance(rows, list) or len(rows) != want_rows:
            raise ModelFileError(f"L[{p}]: expected {want_rows} rows")
        entries = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != want_cols:
                raise ModelFileError(f"L[{p}][{i}]: expected {want_cols} entries")
            entries.append(tuple(_rational(x, f"L[{p}][{i}][{j}]") for j, x in enumerate(row)))
        matrices.append(Matrix(want_rows, want_cols, tuple(entries)))
    name = data.get("name", "")
    description = data.get("description", "")
    if not isinstance(name, str) or not isinstance(description, str):
        raise ModelFileError("name and description must be strings")
    labels = None
    if "labels" in data:
        raw = data["labels"]
        if (
            not isinstance(raw, list)
            or len(raw) != 2 * n + 1
            or any(
                not isinstance(layer, list)
                or len(layer) != dims[p]
                or any(not isinstance(x, str) for x in layer)
                for p, layer in enumerate(raw)
            )
        ):
            raise ModelFileError("labels: must mirror dims with string entries")
        labels = tuple(tuple(layer) for layer in raw)
    return ModelFile(n, s, lambdas, dims, tuple(matrices), name, description, labels)


def load_model(path: str) -> ModelFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ModelFileError(f"cannot read {path}: {exc}") from None
    return parse_model(text)


def _rational_str(x: Fraction) -> str:
    return str(x)


def dump_model(mf: ModelFile) -> str:
    data = {
        "name": mf.name,
        "description": mf.description,
        "n": mf.n,
        "s": mf.s,
        "lambdas": [_rational_str(x) for x in mf.lambdas],
        "dims": list(mf.dims),
        "L": [
            [[_rational_str(x) for x in row] for row in m.entries]
            for m in mf.L
        ],
    }
    if mf.labels is not None:
        data["labels"] = [list(layer) for layer in mf.labels]
    return json.dumps(data, indent=2) + "\n"


def base_module(mf: ModelFile) -> LefschetzModule:
    try:
        return LefschetzModule(mf.n, mf.dims, mf.L, mf.labels)
    except ValueError as exc:
        raise ModelFileError(str(exc)) from None


def to_complex(mf: ModelFile) -> InvariantComplex:
    return build_model(base_module(mf), mf.s, mf.lambdas)


def from_module(
    base: LefschetzModule,
    s: int,
    lambdas,
    name: str = "",
    description: str = "",
) -> ModelFile:
    return ModelFile(
        base.n,
        s,
        tuple(Fraction(x) for x in lambdas),
        base.dims,
        base.L_maps,
        name,
        description,
        base.labels,
    )
