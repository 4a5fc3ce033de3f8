"""On-disk formats: `.alg` algebra files and `.recipe` construction files.

Both formats are JSON.  Every scalar is written as an exact rational string
("p/q", or "p" when the denominator is one); decimals are rejected.  Indices
are 0-based.  Matrices are row-major and act on coordinate columns: column c
of "J" is the image of basis vector c.

Algebra file::

    {
      "dim": 4,
      "basis": ["x1", "x2", "x3", "x4"],
      "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}],
      "J": [["0","-1","0","0"], ["1","0","0","0"], ...],
      "phi": [[...], ...]
    }

Bracket entries must have i < j (antisymmetry is implied).  Recipe files are
expression trees; see `parse_recipe`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .catalog import abelian_with_signature, lorentz_core
from .constructions import (
    Cocycle,
    ExtensionData,
    complexify,
    direct_sum,
    kodaira_cocycle_basis,
    kodaira_thurston,
    phq_double_extension,
    tensor_construct,
    truncated_poly,
    tstar_extension,
)
from .lie import LieAlgebra
from .linalg import Matrix, vector
from .structures import PHQAlgebra


class ParseError(ValueError):
    """Malformed input file; carries line/column when JSON itself is broken."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc)
        self.line = line
        self.column = column


class BadRational(ParseError):
    pass


class IndexOutOfRange(ParseError):
    pass


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise BadRational(f"{where}: scalars must be exact rational strings, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise BadRational(f"{where}: not a rational: {value!r}") from exc
    raise BadRational(f"{where}: not a rational: {value!r}")


def _matrix(rows: Any, dim: int, where: str) -> Matrix:
    if not isinstance(rows, list) or len(rows) != dim:
        raise ParseError(f"{where}: expected {dim} rows")
    out = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"{where}: row {r} must have {dim} entries")
        out.append([_rational(e, f"{where}[{r}]") for e in row])
    return Matrix.from_rows(out, cols=dim)


def parse_algebra_text(text: str) -> PHQAlgebra:
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ParseError("algebra file must be a JSON object")
    try:
        dim = doc["dim"]
        basis = doc["basis"]
        brackets = doc["brackets"]
        jmat = doc["J"]
        phi = doc["phi"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from exc
    if not isinstance(dim, int) or dim < 0:
        raise ParseError("dim must be a nonnegative integer")
    if not isinstance(basis, list) or len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise ParseError("basis must list dim names")
    if not isinstance(brackets, list):
        raise ParseError("brackets must be a list")
    sparse: dict[tuple[int, int], dict[int, Fraction]] = {}
    for pos, entry in enumerate(brackets):
        where = f"brackets[{pos}]"
        if not isinstance(entry, dict) or not {"i", "j", "coeffs"} <= set(entry):
            raise ParseError(f"{where}: needs fields i, j, coeffs")
        i, j = entry["i"], entry["j"]
        if not isinstance(i, int) or not isinstance(j, int):
            raise ParseError(f"{where}: i and j must be integers")
        if not (0 <= i < dim and 0 <= j < dim):
            raise IndexOutOfRange(f"{where}: index out of range for dim {dim}")
        if i >= j:
            raise ParseError(f"{where}: bracket entries must have i < j")
        if (i, j) in sparse:
            raise ParseError(f"{where}: duplicate bracket ({i},{j})")
        coeffs = entry["coeffs"]
        if not isinstance(coeffs, dict):
            raise ParseError(f"{where}: coeffs must be an object")
        parsed: dict[int, Fraction] = {}
        for key, val in coeffs.items():
            try:
                k = int(key)
            except ValueError as exc:
                raise ParseError(f"{where}: bad coefficient index {key!r}") from exc
            if not 0 <= k < dim:
                raise IndexOutOfRange(f"{where}: coefficient index {k} out of range")
            parsed[k] = _rational(val, f"{where}.coeffs[{key}]")
        sparse[(i, j)] = parsed
    algebra = LieAlgebra.from_brackets(tuple(basis), sparse)
    return PHQAlgebra(algebra, _matrix(jmat, dim, "J"), _matrix(phi, dim, "phi"))


def serialize_algebra(p: PHQAlgebra) -> str:
    """Canonical text for an algebra; `parse_algebra_text` inverts it exactly."""
    brackets = []
    n = p.dim
    for i in range(n):
        for j in range(i + 1, n):
            cij = p.algebra.structure[i][j]
            coeffs = {str(k): str(cij[k]) for k in range(n) if cij[k] != 0}
            if coeffs:
                brackets.append({"i": i, "j": j, "coeffs": coeffs})
    doc = {
        "dim": n,
        "basis": list(p.basis_names),
        "brackets": brackets,
        "J": [[str(p.j[i, j]) for j in range(n)] for i in range(n)],
        "phi": [[str(p.phi[i, j]) for j in range(n)] for i in range(n)],
    }
    return json.dumps(doc, indent=2) + "\n"


_RECIPE_OPS = {
    "abelian",
    "kodaira",
    "L(4,2)",
    "L(2,4)",
    "direct_sum",
    "tstar",
    "phq_ext",
    "tensor",
    "complexify",
}


@dataclass(frozen=True)
class Recipe:
    """Parsed construction tree; `evaluate` produces the algebra."""

    tree: dict

    def evaluate(self) -> PHQAlgebra:
        return _eval_recipe(self.tree)


def parse_recipe_text(text: str) -> Recipe:
    doc = _load_json(text)
    _validate_recipe(doc, "recipe")
    return Recipe(doc)


def _validate_recipe(node: Any, where: str) -> None:
    if not isinstance(node, dict) or "op" not in node:
        raise ParseError(f"{where}: each node needs an 'op' field")
    op = node["op"]
    if op not in _RECIPE_OPS:
        raise ParseError(f"{where}: unknown op {op!r}")
    if op == "abelian":
        for field in ("p", "q"):
            if not isinstance(node.get(field), int) or node[field] < 0:
                raise ParseError(f"{where}: abelian needs nonnegative integer {field!r}")
    elif op == "direct_sum":
        args = node.get("args")
        if not isinstance(args, list) or len(args) < 2:
            raise ParseError(f"{where}: direct_sum needs at least two args")
        for pos, sub in enumerate(args):
            _validate_recipe(sub, f"{where}.args[{pos}]")
    elif op == "tstar":
        theta = node.get("theta")
        if not isinstance(theta, list) or len(theta) != 4:
            raise ParseError(f"{where}: tstar needs a list of 4 coefficients")
        for pos, c in enumerate(theta):
            _rational(c, f"{where}.theta[{pos}]")
        base = node.get("base", {"op": "kodaira"})
        _validate_recipe(base, f"{where}.base")
        if base.get("op") != "kodaira":
            raise ParseError(f"{where}: tstar is defined over the kodaira carrier")
    elif op == "phq_ext":
        _validate_recipe(node.get("base"), f"{where}.base")
        for field in ("D", "F"):
            if not isinstance(node.get(field), list):
                raise ParseError(f"{where}: phq_ext needs matrix {field!r}")
        if not isinstance(node.get("s0"), list):
            raise ParseError(f"{where}: phq_ext needs vector 's0'")
    elif op == "tensor":
        _validate_recipe(node.get("base"), f"{where}.base")
        if not isinstance(node.get("k"), int) or node["k"] < 1:
            raise ParseError(f"{where}: tensor needs integer k >= 1")
    elif op == "complexify":
        _validate_recipe(node.get("base"), f"{where}.base")
    # kodaira, L(4,2), L(2,4): no parameters


def _eval_recipe(node: dict) -> PHQAlgebra:
    op = node["op"]
    if op == "abelian":
        return abelian_with_signature(node["p"], node["q"])
    if op == "L(4,2)":
        return lorentz_core(True)
    if op == "L(2,4)":
        return lorentz_core(False)
    if op == "kodaira":
        raise ParseError("the kodaira carrier has no metric; wrap it in 'tstar'")
    if op == "direct_sum":
        out = _eval_recipe(node["args"][0])
        for sub in node["args"][1:]:
            out = direct_sum(out, _eval_recipe(sub))
        return out
    if op == "tstar":
        coeffs = [_rational(c, "theta") for c in node["theta"]]
        basis_cocycles = kodaira_cocycle_basis()
        theta = Cocycle.zero(4)
        for c, th in zip(coeffs, basis_cocycles):
            if c != 0:
                theta = theta + th.scale(c)
        algebra, j = kodaira_thurston()
        return tstar_extension(algebra, j, theta)
    if op == "phq_ext":
        base = _eval_recipe(node["base"])
        n = base.dim
        d = _matrix(node["D"], n, "D")
        f = _matrix(node["F"], n, "F")
        s0 = node["s0"]
        if len(s0) != n:
            raise ParseError(f"s0 must have length {n}")
        data = ExtensionData(base, d, f, vector([_rational(c, "s0") for c in s0]))
        return phq_double_extension(data)
    if op == "tensor":
        return tensor_construct(_eval_recipe(node["base"]), truncated_poly(node["k"]))
    if op == "complexify":
        return complexify(_eval_recipe(node["base"]))
    raise ParseError(f"unknown op {op!r}")


def parse_path(path: str | Path, fixtures_dir: str | Path | None = None):
    """Parse an `.alg` or `.recipe` file, resolving against ``fixtures_dir``
    when the path does not exist as given."""
    p = Path(path)
    if not p.exists() and fixtures_dir is not None:
        candidate = Path(fixtures_dir) / p
        if candidate.exists():
            p = candidate
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc}") from exc
    if p.suffix == ".recipe":
        return parse_recipe_text(text)
    return parse_algebra_text(text)
