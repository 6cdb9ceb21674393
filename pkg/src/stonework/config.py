"""JSON configuration for the workbench CLI.

Schema: {"n": int, "m": int, "elements": {name: matrix per fiber},
"vectors": {name: vector per fiber}, "seed": int}. Complex numbers are
[re, im] pairs, matrices row-major nested arrays, fibers the outermost
dimension.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .center import CenterElement, StoneSpace
from .errors import ParseError, ValidationError
from .hilbert_module import ModuleElement
from .matrix_algebra import FiberedOperator


@dataclass
class AlgebraConfig:
    n: int
    m: int
    seed: int = 0
    elements: dict = field(default_factory=dict)
    vectors: dict = field(default_factory=dict)

    @property
    def space(self) -> StoneSpace:
        return StoneSpace(self.m)


def _decode_complex(pair, where: str) -> complex:
    if (
        not isinstance(pair, (list, tuple))
        or len(pair) != 2
        or not all(isinstance(x, (int, float)) for x in pair)
    ):
        raise ValidationError(f"{where}: expected a [re, im] pair, got {pair!r}")
    return complex(pair[0], pair[1])


def _decode_vector_fibers(data, n: int, m: int, where: str) -> ModuleElement:
    if not isinstance(data, list) or len(data) != m:
        raise ValidationError(f"{where}: expected {m} fibers")
    rows = np.zeros((m, n), dtype=np.complex128)
    for k, fiber in enumerate(data):
        if not isinstance(fiber, list) or len(fiber) != n:
            raise ValidationError(f"{where}: fiber {k} must have {n} components")
        for j, pair in enumerate(fiber):
            rows[k, j] = _decode_complex(pair, f"{where}[{k}][{j}]")
    return ModuleElement(StoneSpace(m), rows)


def _decode_matrix_fibers(data, n: int, m: int, where: str) -> FiberedOperator:
    if not isinstance(data, list) or len(data) != m:
        raise ValidationError(f"{where}: expected {m} fibers")
    fibers = np.zeros((m, n, n), dtype=np.complex128)
    for k, mat in enumerate(data):
        if not isinstance(mat, list) or len(mat) != n:
            raise ValidationError(f"{where}: fiber {k} must be a {n}x{n} matrix")
        for i, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != n:
                raise ValidationError(f"{where}: fiber {k} must be a {n}x{n} matrix")
            for j, pair in enumerate(row):
                fibers[k, i, j] = _decode_complex(pair, f"{where}[{k}][{i}][{j}]")
    return FiberedOperator(StoneSpace(m), fibers)


def parse_config(data: dict) -> AlgebraConfig:
    if not isinstance(data, dict):
        raise ValidationError("config root must be a JSON object")
    for key in ("n", "m"):
        if key not in data or not isinstance(data[key], int) or data[key] < 1:
            raise ValidationError(f"config field {key!r} must be a positive integer")
    n, m = data["n"], data["m"]
    seed = data.get("seed", 0)
    if not isinstance(seed, int):
        raise ValidationError("config field 'seed' must be an integer")
    cfg = AlgebraConfig(n=n, m=m, seed=seed)
    for name, payload in (data.get("elements") or {}).items():
        cfg.elements[name] = _decode_matrix_fibers(payload, n, m, f"elements[{name}]")
    for name, payload in (data.get("vectors") or {}).items():
        cfg.vectors[name] = _decode_vector_fibers(payload, n, m, f"vectors[{name}]")
    return cfg


def load_config(path: str) -> AlgebraConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise IOError(f"cannot read config file: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"config is not valid JSON: {exc}") from exc
    return parse_config(data)


# -- encoding back to the wire format ------------------------------------------


def encode_complex(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def encode_vector(a: ModuleElement) -> list:
    return [[encode_complex(z) for z in row] for row in a.values]


def encode_center(c: CenterElement) -> list:
    return [encode_complex(z) for z in c.values]


def encode_operator(op: FiberedOperator) -> list:
    return [
        [[encode_complex(z) for z in row] for row in fiber] for fiber in op.values
    ]
