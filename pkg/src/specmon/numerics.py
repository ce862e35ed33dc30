"""Scalar complex kernels and the dense symmetric eigensolver.

Branch-cut bookkeeping for the physics lives in `spectrum` and
`continuation`; this module only fixes the principal branch of the
square root and solves the small closed-form polynomials (degree <= 4
in the energy) plus the real-symmetric eigenproblem used by the grid
oracle.
"""

from __future__ import annotations

import cmath

import numpy as np
import scipy.linalg


def _require_finite(z: complex, what: str) -> complex:
    z = complex(z)
    if not (cmath.isfinite(z)):
        raise ValueError(f"{what} must be finite, got {z}")
    return z


def principal_sqrt(z: complex) -> complex:
    """Square root with Re >= 0; on the cut (Re = 0) the value with Im >= 0.

    The branch cut lies on the negative real axis of the radicand.  Unlike
    bare cmath.sqrt, the lower lip of the cut (negative real with -0.0
    imaginary part) is folded onto the upper value, so the convention is
    independent of the sign of a zero imaginary part.
    """
    z = _require_finite(z, "radicand")
    w = cmath.sqrt(z)
    if w.real == 0.0:
        w = complex(0.0, abs(w.imag))
    return w


def quadratic_roots(p: complex, q: complex) -> tuple[complex, complex]:
    """Both roots of E^2 + pE + q = 0.

    The larger-magnitude root is computed from the quadratic formula with
    the non-cancelling sign; the other comes from the product q.  No root
    ordering is guaranteed.
    """
    p = _require_finite(p, "p")
    q = _require_finite(q, "q")
    s = principal_sqrt(p * p - 4.0 * q)
    # pick the sign that adds |s| to |p| instead of cancelling it
    if (p.real * s.real + p.imag * s.imag) >= 0.0:
        big = -(p + s) / 2.0
    else:
        big = -(p - s) / 2.0
    if big == 0:
        return (0.0 + 0.0j, 0.0 + 0.0j)
    return (big, q / big)


def biquadratic_roots(p: complex, q: complex) -> list[complex]:
    """All four roots of E^4 + pE^2 + q = 0, in exact +/- pairs.

    Returned as [w1, -w1, w2, -w2] with wk the principal square roots of
    the two quadratic roots in u = E^2, so the first and third elementary
    symmetric functions vanish identically.
    """
    u1, u2 = quadratic_roots(p, q)
    w1 = principal_sqrt(u1)
    w2 = principal_sqrt(u2)
    return [w1, -w1, w2, -w2]


class DenseSelfAdjointMatrix:
    """Real symmetric matrix for the oracle discretizations.

    Symmetry is required exactly as stored (the discretizations are built
    symmetric; no fuzzy comparison is done here).
    """

    def __init__(self, entries):
        a = np.asarray(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix is not symmetric (entry(i,j) != entry(j,i))")
        self.entries = a

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.entries))


def _tridiagonal_bands(a: np.ndarray):
    """(diag, offdiag) if a is tridiagonal, else None."""
    n = a.shape[0]
    nnz = np.count_nonzero(a)
    if nnz > 3 * n:
        return None
    rows, cols = np.nonzero(a)
    if rows.size and np.abs(rows - cols).max() > 1:
        return None
    return np.diagonal(a).copy(), np.diagonal(a, 1).copy()


def selfadjoint_eigenvalues(matrix: DenseSelfAdjointMatrix) -> np.ndarray:
    """All eigenvalues, ascending.

    Tridiagonal input (the oracle's stencil matrices) is routed to the
    dedicated LAPACK tridiagonal solver; anything else goes through the
    dense symmetric driver.
    """
    if not isinstance(matrix, DenseSelfAdjointMatrix):
        matrix = DenseSelfAdjointMatrix(matrix)
    a = matrix.entries
    if a.shape[0] == 1:
        return a[0, :1].copy()
    bands = _tridiagonal_bands(a)
    if bands is not None:
        d, e = bands
        return scipy.linalg.eigh_tridiagonal(d, e, eigvals_only=True)
    return np.linalg.eigvalsh(a)
