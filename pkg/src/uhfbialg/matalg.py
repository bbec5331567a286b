"""Dense complex matrix helpers: matrix units, Kronecker products, density checks, ranks.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Indices in the
public functions are 1-based to match the matrix-unit notation ``E_{i,j}``.
"""

from __future__ import annotations

from typing import Any, Iterable, Sequence

import numpy as np

TOL_HERMITIAN = 1e-10
TOL_PSD = 1e-10
TOL_TRACE = 1e-10
TOL_RANK = 1e-10

MAX_DENSE_DIM = 1 << 14


def as_matrix(A: Any) -> np.ndarray:
    M = np.asarray(A, dtype=np.complex128)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def matrix_unit(n: int, i: int, j: int) -> np.ndarray:
    """The ``n x n`` matrix unit with a single 1 at row ``i``, column ``j``."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"matrix unit ({i},{j}) out of range for M_{n}")
    E = np.zeros((n, n), dtype=np.complex128)
    E[i - 1, j - 1] = 1.0
    return E


def kron(A: Any, B: Any) -> np.ndarray:
    """Kronecker product with ``(A kron B)[m(i-1)+i', m(j-1)+j'] = A[i,j] B[i',j']``.

    ``numpy.kron`` uses exactly this block convention (``m`` = rows of ``B``).
    """
    A, B = as_matrix(A), as_matrix(B)
    rows, cols = A.shape[0] * B.shape[0], A.shape[1] * B.shape[1]
    if max(rows, cols) > MAX_DENSE_DIM:
        raise OverflowError(f"Kronecker product of size {rows}x{cols} exceeds dense cap")
    return np.kron(A, B)


def kron_all(mats: Iterable[Any]) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.complex128)
    for M in mats:
        out = kron(out, M)
    return out


def adjoint(A: Any) -> np.ndarray:
    return as_matrix(A).conj().T


def is_density(T: Any, tol: float = TOL_TRACE) -> bool:
    """Self-adjoint, positive semidefinite and trace one, each within ``tol``."""
    T = as_matrix(T)
    if T.shape[0] != T.shape[1]:
        return False
    if np.max(np.abs(T - T.conj().T), initial=0.0) > tol:
        return False
    if abs(np.trace(T) - 1.0) > tol:
        return False
    evals = np.linalg.eigvalsh((T + T.conj().T) / 2)
    return bool(evals.min() >= -tol)


def check_density(T: Any, tol: float = TOL_TRACE) -> np.ndarray:
    T = as_matrix(T)
    if not is_density(T, tol):
        raise ValueError(f"not a density matrix within tol={tol}:\n{T}")
    return T


def span_rank(vectors: Sequence[Any], tol: float = TOL_RANK) -> int:
    """Numerical rank of the span of equally shaped arrays.

    Singular values are thresholded at ``tol`` times the largest one.
    """
    if len(vectors) == 0:
        return 0
    shapes = {np.shape(v) for v in vectors}
    if len(shapes) != 1:
        raise ValueError(f"span_rank needs equally shaped inputs, got {shapes}")
    stacked = np.stack([np.asarray(v, dtype=np.complex128).ravel() for v in vectors])
    return rank(stacked, tol)


def rank(M: np.ndarray, tol: float = TOL_RANK) -> int:
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def null_space(M: np.ndarray, tol: float = TOL_RANK) -> np.ndarray:
    """Orthonormal basis (as columns) of the kernel of ``M``."""
    n = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(n, dtype=np.complex128)
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    if s.size == 0 or s[0] == 0.0:
        return np.eye(n, dtype=np.complex128)
    r = int(np.sum(s > tol * s[0]))
    return vh[r:].conj().T


def orth(M: np.ndarray, tol: float = TOL_RANK) -> np.ndarray:
    """Orthonormal basis (as columns) of the column space of ``M``."""
    if M.size == 0:
        return np.zeros((M.shape[0], 0), dtype=np.complex128)
    u, s, _ = np.linalg.svd(M, full_matrices=False)
    if s[0] == 0.0:
        return np.zeros((M.shape[0], 0), dtype=np.complex128)
    return u[:, : int(np.sum(s > tol * s[0]))]


def random_density(n: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """A random density matrix ``G G* / tr(G G*)`` with ``G`` complex Gaussian."""
    k = n if rank is None else rank
    G = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
    T = G @ G.conj().T
    return T / np.trace(T).real


def matrix_to_json(A: Any) -> dict:
    A = as_matrix(A)
    return {
        "rows": A.shape[0],
        "cols": A.shape[1],
        "entries": [[float(z.real), float(z.imag)] for z in A.ravel()],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = obj["entries"]
    if len(entries) != rows * cols:
        raise ValueError(f"matrix JSON has {len(entries)} entries, expected {rows * cols}")
    flat = np.array([complex(re, im) for re, im in entries], dtype=np.complex128)
    return as_matrix(flat.reshape(rows, cols))
