"""Dense complex-matrix primitives sized for Hilbert dimensions up to 16.

Everything here is pure: inputs are never mutated and outputs are fresh
arrays.  The Hermitian eigensolver is a cyclic Jacobi iteration with a
deterministic sweep order, so repeated runs give identical spectra; the
rotation loop is the package's one hot kernel and is served by a compiled
extension when available, with a pure-Python twin selected at import
otherwise.
"""

from __future__ import annotations

import numpy as np

from . import _jacobi_py

try:
    from . import _jacobi as _jacobi_ext
except ImportError:
    _jacobi_ext = None

_KERNEL = _jacobi_ext if _jacobi_ext is not None else _jacobi_py

HERMITIAN_TOL = 1e-10
OFFDIAG_TOL = 1e-13
MAX_SWEEPS = 100


class DimensionError(ValueError):
    """Operands have incompatible or malformed dimensions."""


class NonHermitianError(ValueError):
    """Input matrix deviates from Hermiticity beyond tolerance."""


def eig_backend() -> str:
    """Name of the Jacobi kernel selected at import: 'compiled' or 'python'."""
    return "compiled" if _KERNEL is _jacobi_ext and _jacobi_ext is not None else "python"


def _as_square_complex(m, name="matrix") -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionError(f"{name} must be a square 2-D array, got shape {arr.shape}")
    return arr


def dagger(m) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def hermiticity_defect(m) -> float:
    """Max entrywise magnitude of m - m†."""
    arr = np.asarray(m, dtype=complex)
    return float(np.abs(arr - arr.conj().T).max())


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_defect(m) <= tol


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product: entry ((i*db+k),(j*db+l)) = a[i,j] * b[k,l]."""
    aa = _as_square_complex(a, "a")
    bb = _as_square_complex(b, "b")
    return np.kron(aa, bb)


def partial_trace(m, dims, keep) -> np.ndarray:
    """Trace out all subsystems not listed in ``keep``.

    ``dims`` are the subsystem dimensions whose product must equal the side
    of ``m``; ``keep`` is a subsystem index or set of indices.  Kept
    subsystems appear in ascending index order in the result.
    """
    arr = _as_square_complex(m)
    dims = tuple(int(x) for x in dims)
    if any(x < 1 for x in dims):
        raise DimensionError(f"subsystem dimensions must be positive, got {dims}")
    total = 1
    for x in dims:
        total *= x
    if total != arr.shape[0]:
        raise DimensionError(
            f"subsystem dimensions {dims} do not factor matrix of side {arr.shape[0]}"
        )
    if isinstance(keep, (int, np.integer)):
        keep = (int(keep),)
    keep = tuple(sorted({int(k) for k in keep}))
    n = len(dims)
    if not keep:
        raise DimensionError("keep must name at least one subsystem")
    if any(k < 0 or k >= n for k in keep):
        raise DimensionError(f"keep indices {keep} out of range for {n} subsystems")
    keep_set = set(keep)
    t = arr.reshape(dims + dims)
    row_idx = list(range(n))
    col_idx = [n + k if k in keep_set else k for k in range(n)]
    out_idx = [k for k in keep] + [n + k for k in keep]
    reduced = np.einsum(t, row_idx + col_idx, out_idx)
    d_keep = 1
    for k in keep:
        d_keep *= dims[k]
    return reduced.reshape(d_keep, d_keep)


def hermitian_eig(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix via cyclic Jacobi rotations.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending (ties keep the
    first-encountered column order) and eigenvector columns ``v[:, k]``.
    The global phase of each column is fixed by making its largest-magnitude
    component real and positive.
    """
    return _eig_with_kernel(m, _KERNEL)


def _eig_with_kernel(m, kernel) -> tuple[np.ndarray, np.ndarray]:
    arr = _as_square_complex(m)
    defect = hermiticity_defect(arr)
    if defect > HERMITIAN_TOL:
        raise NonHermitianError(
            f"matrix is not Hermitian: max |m - m†| = {defect:.3e} exceeds {HERMITIAN_TOL:.0e}"
        )
    d = arr.shape[0]
    if d == 1:
        return np.array([arr[0, 0].real]), np.ones((1, 1), dtype=complex)
    a = np.ascontiguousarray((arr + arr.conj().T) / 2.0)
    v = np.eye(d, dtype=complex)
    kernel.jacobi_sweeps(a, v, OFFDIAG_TOL, MAX_SWEEPS)
    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = np.ascontiguousarray(v[:, order])
    for k in range(d):
        col = v[:, k]
        idx = int(np.argmax(np.abs(col)))
        z = col[idx]
        mag = abs(z)
        if mag > 0.0:
            v[:, k] = col * (z.conjugate() / mag)
    return w, v
