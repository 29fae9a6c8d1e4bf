"""JSON model files: fixed-point data plus optional cohomology characters.

Schema::

    {
      "dim": 1,
      "fixed_points": [
        {"name": "p0", "weights": [1],  "fiber": [[0, 1]]},
        {"name": "p1", "weights": [-1], "fiber": [[-3, 1]]}
      ],
      "cohomology": {"0": [[0, 1], [-1, 1]], "1": []}
    }

Fibers and cohomology are lists of ``[weight, multiplicity]`` pairs.
"""
from __future__ import annotations

import json

from .character import Character
from .geometry import CohomologyData, FixedPoint, ManifoldModel, ModelError


class ModelFileError(ValueError):
    """Schema violation, with the offending field path in the message."""


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ModelFileError(f"{where}: expected an integer, got {value!r}")
    return value


def _list(value, where):
    if not isinstance(value, list):
        raise ModelFileError(f"{where}: expected a list, got {type(value).__name__}")
    return value


def _pairs(value, where):
    terms = []
    for j, pair in enumerate(_list(value, where)):
        loc = f"{where}[{j}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise ModelFileError(f"{loc}: expected [weight, multiplicity]")
        w, m = _int(pair[0], loc + "[0]"), _int(pair[1], loc + "[1]")
        if m < 0:
            raise ModelFileError(f"{loc}: negative multiplicity {m}")
        terms.append((w, m))
    return Character.from_terms(terms)


def parse_model_file(text):
    """Parse and validate; returns ``(ManifoldModel, CohomologyData | None)``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ModelFileError("top level: expected an object")
    for key in ("dim", "fixed_points"):
        if key not in data:
            raise ModelFileError(f"missing field {key!r}")
    unknown = set(data) - {"dim", "fixed_points", "cohomology"}
    if unknown:
        raise ModelFileError(f"unknown field(s): {sorted(unknown)}")
    dim = _int(data["dim"], "dim")
    if dim < 0:
        raise ModelFileError("dim: must be >= 0")
    points, seen = [], set()
    for j, fp in enumerate(_list(data["fixed_points"], "fixed_points")):
        loc = f"fixed_points[{j}]"
        if not isinstance(fp, dict):
            raise ModelFileError(f"{loc}: expected an object")
        for key in ("name", "weights", "fiber"):
            if key not in fp:
                raise ModelFileError(f"{loc}: missing field {key!r}")
        name = fp["name"]
        if not isinstance(name, str):
            raise ModelFileError(f"{loc}.name: expected a string")
        if name in seen:
            raise ModelFileError(f"{loc}.name: duplicate fixed-point name {name!r}")
        seen.add(name)
        weights = [_int(w, f"{loc}.weights[{i}]") for i, w in enumerate(_list(fp["weights"], loc + ".weights"))]
        if len(weights) != dim:
            raise ModelFileError(f"{loc}.weights: {len(weights)} weights, expected dim={dim}")
        for i, w in enumerate(weights):
            if w == 0:
                raise ModelFileError(f"{loc}.weights[{i}]: zero isotropy weight")
        fiber = _pairs(fp["fiber"], loc + ".fiber")
        try:
            points.append(FixedPoint(name, tuple(weights), fiber))
        except ModelError as exc:
            raise ModelFileError(f"{loc}: {exc}") from None
    try:
        model = ManifoldModel(dim, tuple(points))
    except ModelError as exc:
        raise ModelFileError(str(exc)) from None
    cohomology = None
    if "cohomology" in data:
        block = data["cohomology"]
        if not isinstance(block, dict):
            raise ModelFileError("cohomology: expected an object keyed by degree")
        by_degree = [Character.zero() for _ in range(dim + 1)]
        for key, value in block.items():
            if not key.isdigit() or int(key) > dim:
                raise ModelFileError(f"cohomology: degree key {key!r} not in 0..{dim}")
            by_degree[int(key)] = _pairs(value, f"cohomology[{key!r}]")
        cohomology = CohomologyData(tuple(by_degree))
    return model, cohomology


def _pairs_out(c):
    return [[w, int(m)] for w, m in c.terms()]


def dump_model(model, cohomology=None):
    """Serialize to the JSON schema; :func:`parse_model_file` inverts it."""
    dumps = lambda x: json.dumps(x, separators=(", ", ": "))
    rows = [dumps({"name": p.name, "weights": list(p.weights), "fiber": _pairs_out(p.fiber)})
            for p in model.fixed_points]
    lines = ["{", f'  "dim": {model.n},', '  "fixed_points": [']
    lines.append(",\n".join("    " + r for r in rows))
    if cohomology is None:
        lines.append("  ]")
    else:
        lines.append("  ],")
        lines.append('  "cohomology": {')
        lines.append(",\n".join(f'    "{k}": {dumps(_pairs_out(h))}'
                                for k, h in enumerate(cohomology.by_degree)))
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return parse_model_file(fh.read())
