"""Built-in matrix ensembles for the verification suites.

The ensembles span both constant regimes (diagonal-free vs. general) and the
degenerate cases (zero matrix, constant quadratic form).  Random entries are
uniform on [-1, 1], drawn from substreams of a master seed so every suite
run sees identical matrices.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .subgauss import RngStream

ENSEMBLE_NAMES = (
    "identity",
    "zero",
    "rank_one",
    "random_symmetric",
    "random_diagonal_free",
    "random_diagonal_only",
)


def make_matrix(name: str, n: int, rng: RngStream) -> np.ndarray:
    if name == "identity":
        return linalg.as_matrix(np.eye(n))
    if name == "zero":
        return linalg.as_matrix(np.zeros((n, n)))
    gen = rng.generator()
    if name == "rank_one":
        v = 2.0 * gen.random(n) - 1.0
        return linalg.as_matrix(np.outer(v, v))
    if name == "random_symmetric":
        raw = 2.0 * gen.random((n, n)) - 1.0
        return linalg.symmetrize(raw)
    if name == "random_diagonal_free":
        raw = 2.0 * gen.random((n, n)) - 1.0
        return linalg.hollow(linalg.symmetrize(raw))
    if name == "random_diagonal_only":
        return linalg.as_matrix(np.diag(2.0 * gen.random(n) - 1.0))
    raise ValueError(f"unknown ensemble {name!r}")


def build(names, sizes, rng: RngStream):
    """Deterministic list of (label, matrix) over names x sizes."""
    out = []
    index = 0
    for name in names:
        for n in sizes:
            out.append((f"{name}_n{n}", make_matrix(name, n, rng.substream(index))))
            index += 1
    return out
