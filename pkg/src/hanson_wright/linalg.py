"""Dense symmetric-matrix machinery.

Everything here operates on plain ``float64`` numpy arrays.  Validated
arrays are returned read-only so they can be shared freely across threads;
all operations are pure functions.

Conventions used throughout the package:

* ``A = (M + M^T) / 2`` is the symmetrization of ``M`` (leaves every
  quadratic form unchanged).
* the *hollow* of a symmetric ``A`` is a copy with its diagonal set to an
  exact literal zero, so ``trace(hollow(A)) == 0.0`` holds exactly.
* scalar reductions (norms, trace, quadratic forms) use exact compensated
  summation (``math.fsum``); verification margins downstream are small and
  this is cheap insurance at desk scale.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .exceptions import ConvergenceError, ValidationError

MAX_DIM = 10_000

# Cyclic Jacobi settings: converged when the off-diagonal Frobenius mass
# drops below JACOBI_RTOL * ||A||_F.
JACOBI_RTOL = 1e-14
JACOBI_MAX_SWEEPS = 100


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _check_shape(shape) -> None:
    if len(shape) != 2 or shape[0] != shape[1]:
        raise ValidationError(f"matrix must be square, got shape {tuple(shape)}")
    if shape[0] < 1:
        raise ValidationError("matrix dimension must be at least 1")
    if shape[0] > MAX_DIM:
        raise ValidationError(f"matrix dimension {shape[0]} exceeds the configured cap {MAX_DIM}")


def as_matrix(entries) -> np.ndarray:
    """Validate and copy input into a read-only square float64 array.

    Raises ValidationError for non-square shapes, n < 1, n > MAX_DIM, or
    non-finite entries.
    """
    if isinstance(entries, np.ndarray):
        _check_shape(entries.shape)
    try:
        arr = np.array(entries, dtype=np.float64, order="C")
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"matrix entries are not numeric: {exc}") from exc
    _check_shape(arr.shape)
    if not np.isfinite(arr).all():
        raise ValidationError("matrix entries must be finite (no NaN/Inf)")
    return _readonly(arr)


def require_symmetric(entries) -> np.ndarray:
    """Like :func:`as_matrix` but additionally demands bit-exact symmetry."""
    arr = as_matrix(entries)
    if not np.array_equal(arr, arr.T):
        raise ValidationError("matrix is not exactly symmetric; use symmetrize() first")
    return arr


def as_vector(x, n: int) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != n:
        raise ValidationError(f"vector must have length {n}, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValidationError("vector entries must be finite")
    return arr


def symmetrize(m) -> np.ndarray:
    """Return ``(M + M^T) / 2``.

    Each (i, j)/(j, i) pair is the same commutative float expression, so the
    result is symmetric bit-for-bit.
    """
    m = as_matrix(m)
    return _readonly((m + m.T) / 2.0)


def hollow(a) -> np.ndarray:
    """Copy of a symmetric matrix with its diagonal set to exact zeros."""
    a = require_symmetric(a)
    out = a.copy()
    np.fill_diagonal(out, 0.0)
    return _readonly(out)


def diagonal_part(a) -> np.ndarray:
    """Diagonal complement of :func:`hollow`: ``diagonal_part(a) + hollow(a) == a`` exactly."""
    a = require_symmetric(a)
    return _readonly(np.diag(np.diag(a).copy()))


def frobenius_norm(m) -> float:
    """sqrt of the exactly-accumulated sum of squared entries."""
    return math.sqrt(frobenius_norm_squared(m))


def frobenius_norm_squared(m) -> float:
    m = as_matrix(m)
    return math.fsum((m.ravel() ** 2).tolist())


def trace(m) -> float:
    m = as_matrix(m)
    return math.fsum(np.diag(m).tolist())


def quadratic_form(m, x) -> float:
    """``x^T M x`` accumulated with compensated summation over all n^2 terms."""
    m = as_matrix(m)
    x = as_vector(x, m.shape[0])
    terms = m * np.outer(x, x)
    return math.fsum(terms.ravel().tolist())


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral factorization ``rotation @ diag(eigenvalues) @ rotation.T``.

    ``eigenvalues`` are ordered by descending absolute value and ``rotation``
    is orthogonal to ~1e-10.
    """

    eigenvalues: np.ndarray
    rotation: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.rotation * self.eigenvalues) @ self.rotation.T


@njit(cache=True)
def _jacobi_kernel(a, v, tol_off, max_sweeps):  # pragma: no cover - exercised via wrapper
    n = a.shape[0]
    sweeps = 0
    while True:
        off2 = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off2 += 2.0 * a[i, j] * a[i, j]
        if math.sqrt(off2) <= tol_off:
            return sweeps
        if sweeps >= max_sweeps:
            return -1
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = 1.0 / (theta - math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                a[p, p] -= t * apq
                a[q, q] += t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * akq
                        a[p, k] = a[k, p]
                        a[k, q] = s * akp + c * akq
                        a[q, k] = a[k, q]
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq


def eigen_decompose(a) -> EigenDecomposition:
    """Full spectrum of a symmetric matrix via cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius mass falls below
    ``JACOBI_RTOL * ||A||_F`` (at most ``JACOBI_MAX_SWEEPS`` sweeps, else
    ConvergenceError).
    """
    a = require_symmetric(a)
    n = a.shape[0]
    work = a.copy()
    rot = np.eye(n)
    tol_off = JACOBI_RTOL * float(np.sqrt(np.sum(a * a)))
    sweeps = _jacobi_kernel(work, rot, tol_off, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise ConvergenceError(
            f"Jacobi eigensolver did not converge after {JACOBI_MAX_SWEEPS} sweeps",
            sweeps=JACOBI_MAX_SWEEPS,
        )
    eigenvalues = np.diag(work).copy()
    order = np.argsort(-np.abs(eigenvalues), kind="stable")
    return EigenDecomposition(
        eigenvalues=_readonly(eigenvalues[order]),
        rotation=_readonly(np.ascontiguousarray(rot[:, order])),
    )


def operator_norm(a) -> float:
    """Largest absolute eigenvalue of a symmetric matrix."""
    decomp = eigen_decompose(a)
    return float(np.abs(decomp.eigenvalues).max())


def operator_norm_general(m) -> float:
    """Spectral norm of a general square matrix.

    Exactly-symmetric inputs take the direct eigenvalue route; otherwise the
    norm is the square root of the largest eigenvalue of the Gram matrix
    ``M^T M``.
    """
    m = as_matrix(m)
    if np.array_equal(m, m.T):
        return operator_norm(m)
    gram = m.T @ m
    gram = (gram + gram.T) / 2.0  # scrub rounding asymmetry from the matmul
    top = float(eigen_decompose(gram).eigenvalues[0])
    return math.sqrt(max(top, 0.0))


# ---------------------------------------------------------------------------
# Matrix file formats: JSON {"n": ..., "entries": [[...], ...]} and CSV
# (n rows of n comma-separated decimals).  Writers emit 17 significant
# digits so values round-trip exactly.
# ---------------------------------------------------------------------------


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def matrix_to_json(m) -> str:
    m = as_matrix(m)
    rows = ",\n    ".join("[" + ", ".join(_fmt(v) for v in row) + "]" for row in m)
    return '{\n  "n": %d,\n  "entries": [\n    %s\n  ]\n}\n' % (m.shape[0], rows)


def write_matrix_json(m, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(matrix_to_json(m))


def write_matrix_csv(m, path) -> None:
    m = as_matrix(m)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for row in m:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def read_matrix_json(path) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read matrix file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "entries" not in payload:
        raise ValidationError(f'{path}: expected an object with "n" and "entries"')
    m = as_matrix(payload["entries"])
    declared = payload.get("n")
    if declared is not None and declared != m.shape[0]:
        raise ValidationError(f'{path}: declared "n"={declared} but entries are {m.shape[0]}x{m.shape[1]}')
    return m


def read_matrix_csv(path) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            rows = [row for row in csv.reader(fh) if row]
    except OSError as exc:
        raise ValidationError(f"cannot read matrix file {path}: {exc}") from exc
    try:
        entries = [[float(cell) for cell in row] for row in rows]
    except ValueError as exc:
        raise ValidationError(f"{path}: non-numeric CSV cell: {exc}") from exc
    if not entries:
        raise ValidationError(f"{path}: empty CSV matrix file")
    return as_matrix(entries)


def read_matrix(path) -> np.ndarray:
    """Dispatch on file extension: .json or .csv."""
    name = str(path).lower()
    if name.endswith(".json"):
        return read_matrix_json(path)
    if name.endswith(".csv"):
        return read_matrix_csv(path)
    raise ValidationError(f"unrecognized matrix file extension (want .json or .csv): {path}")
