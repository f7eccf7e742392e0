"""JSON wire format shared by the CLI and fixtures.

Schemas:
    algebra  {"dims": [n1, ...]}
    element  {"algebra": {...}, "blocks": [[[ [re, im], ...], ...], ...]}
    map      {"dom": {...}, "cod": {...}, "images": [element, ...]}

Blocks are row-major; complex entries are [re, im] pairs.  Dumps are
canonical (sorted keys, fixed separators) so identical values serialize to
identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .algebra import Element, FdAlgebra
from .maps import LinMap, make_map


def algebra_to_json(algebra: FdAlgebra) -> dict:
    return {"dims": list(algebra.dims)}


def algebra_from_json(data: Any) -> FdAlgebra:
    if not isinstance(data, dict) or "dims" not in data:
        raise ValueError("algebra JSON needs a 'dims' field")
    return FdAlgebra(tuple(int(n) for n in data["dims"]))


def _matrix_to_json(m: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def _matrix_from_json(rows: Any) -> np.ndarray:
    return np.array([[complex(c[0], c[1]) for c in row] for row in rows],
                    dtype=complex)


def element_to_json(a: Element) -> dict:
    return {"algebra": algebra_to_json(a.algebra),
            "blocks": [_matrix_to_json(b) for b in a.blocks]}


def element_from_json(data: Any) -> Element:
    algebra = algebra_from_json(data["algebra"])
    blocks = [_matrix_from_json(b) for b in data["blocks"]]
    if len(blocks) != algebra.num_blocks:
        raise ValueError("block count does not match dims")
    return algebra.element(blocks)


def map_to_json(f: LinMap) -> dict:
    basis = f.dom.basis()
    return {"dom": algebra_to_json(f.dom),
            "cod": algebra_to_json(f.cod),
            "images": [element_to_json(f(e)) for e in basis]}


def map_from_json(data: Any) -> LinMap:
    dom = algebra_from_json(data["dom"])
    cod = algebra_from_json(data["cod"])
    images = [element_from_json(e) for e in data["images"]]
    return make_map(dom, cod, images)


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, no whitespace, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> Any:
    return json.loads(text)
