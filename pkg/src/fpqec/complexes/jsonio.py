"""JSON export/import of cell complexes.

Schema: {"name", "periodic", "cells": [n_0, n_1, ...],
         "boundary": [[...id lists per cell...] per dim],
         "tags": [{id: record} per dim]}
Boundary id lists are sorted; cells are in construction order (lexicographic
in construction coordinates for the product builders).
"""

from __future__ import annotations

import json

from .core import CellComplex


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    if hasattr(value, "item"):
        return value.item()
    return str(value)


def complex_to_dict(cplx: CellComplex) -> dict:
    return {
        "name": cplx.name,
        "periodic": list(cplx.periodic),
        "cells": list(cplx.n_cells),
        "boundary": [[sorted(b) for b in level] for level in cplx.boundary],
        "tags": [{str(i): _jsonable(t) for i, t in enumerate(level) if t}
                 for level in cplx.tags],
    }


def complex_to_json(cplx: CellComplex, **kwargs) -> str:
    return json.dumps(complex_to_dict(cplx), **kwargs)


def complex_from_dict(data: dict) -> CellComplex:
    n_cells = data["cells"]
    boundary = [[frozenset(b) for b in level] for level in data["boundary"]]
    tags = [[{} for _ in range(n)] for n in n_cells]
    for k, level in enumerate(data.get("tags", [])):
        for key, rec in level.items():
            tags[k][int(key)] = rec
    cx = CellComplex(n_cells, boundary, tags, tuple(data.get("periodic", ())),
                     name=data.get("name", ""))
    return cx.check()


def complex_from_json(text: str) -> CellComplex:
    return complex_from_dict(json.loads(text))
