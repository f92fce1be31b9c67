"""Projective observables: eigenbases, compatibility, mutual unbiasedness.

An observable is stored as matched lists of real eigenvalues and Hermitian
projectors; degenerate spectra are represented by projectors of rank equal
to the eigenvalue multiplicity.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .linalg import (
    DimensionError,
    _as_square_complex,
    dagger,
    hermitian_eig,
    hermiticity_defect,
    tensor_product,
)

PROJECTOR_TOL = 1e-10
COMPLETENESS_TOL = 1e-10
DEGENERACY_TOL = 1e-9
COMMUTE_TOL = 1e-10
MU_TOL = 1e-9

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)
for _m in (SIGMA_X, SIGMA_Y, SIGMA_Z, IDENTITY_2):
    _m.setflags(write=False)


class DegenerateObservableError(ValueError):
    """Operation is only defined for observables with rank-1 projectors."""


class ProjectiveObservable:
    """Spectral decomposition sum_j x_j P_j with orthonormal projectors."""

    __slots__ = ("eigenvalues", "projectors")

    def __init__(self, eigenvalues, projectors, *, validate: bool = True):
        values = tuple(float(x) for x in eigenvalues)
        projs = []
        for p in projectors:
            arr = np.ascontiguousarray(_as_square_complex(p, "projector"))
            arr.setflags(write=False)
            projs.append(arr)
        projs = tuple(projs)
        if len(values) != len(projs) or not projs:
            raise DimensionError("need one projector per eigenvalue, at least one of each")
        d = projs[0].shape[0]
        if any(p.shape[0] != d for p in projs):
            raise DimensionError("projectors must share one dimension")
        self.eigenvalues = values
        self.projectors = projs
        if validate:
            self._validate()

    def _validate(self):
        d = self.dim
        values, projs = self.eigenvalues, self.projectors
        for i, p in enumerate(projs):
            if hermiticity_defect(p) > PROJECTOR_TOL:
                raise ValueError(f"projector {i} is not Hermitian")
        for i in range(len(projs)):
            for j in range(len(projs)):
                prod = projs[i] @ projs[j]
                ref = projs[i] if i == j else 0.0
                if np.abs(prod - ref).max() > PROJECTOR_TOL:
                    raise ValueError(f"projectors {i},{j} violate orthogonal idempotence")
        if np.abs(sum(projs) - np.eye(d)).max() > COMPLETENESS_TOL:
            raise ValueError("projectors do not resolve the identity")
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                if abs(values[i] - values[j]) <= DEGENERACY_TOL:
                    raise ValueError(
                        f"eigenvalues {values[i]} and {values[j]} closer than {DEGENERACY_TOL:.0e}"
                    )

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    @property
    def n_outcomes(self) -> int:
        return len(self.projectors)

    def rank(self, j: int) -> int:
        return int(round(self.projectors[j].trace().real))

    @property
    def is_nondegenerate(self) -> bool:
        return all(self.rank(j) == 1 for j in range(self.n_outcomes))

    def matrix(self) -> np.ndarray:
        """Reconstruct the Hermitian operator sum_j x_j P_j."""
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for x, p in zip(self.eigenvalues, self.projectors):
            out += x * p
        return out

    def __repr__(self):
        return f"ProjectiveObservable(dim={self.dim}, eigenvalues={self.eigenvalues})"


def observable_from_axis(theta: float, phi: float = 0.0) -> ProjectiveObservable:
    """Qubit observable along the Bloch axis (theta, phi), eigenvalues (+1, -1).

    The +1 eigenket is (cos(theta/2), e^{i phi} sin(theta/2)) and the -1
    eigenket its orthogonal complement, so (0, 0) gives the computational
    basis and (pi/2, 0) the Hadamard basis.
    """
    half = 0.5 * theta
    ph = cmath.exp(1j * phi)
    n0 = np.array([math.cos(half), ph * math.sin(half)], dtype=complex)
    n1 = np.array([-math.sin(half), ph * math.cos(half)], dtype=complex)
    return ProjectiveObservable(
        (1.0, -1.0),
        (np.outer(n0, n0.conj()), np.outer(n1, n1.conj())),
        validate=False,
    )


def observable_from_hermitian(m) -> ProjectiveObservable:
    """Spectral decomposition with eigenvalues within 1e-9 merged into one projector."""
    w, v = hermitian_eig(m)
    d = len(w)
    groups: list[list[int]] = [[0]]
    for k in range(1, d):
        if w[k] - w[groups[-1][-1]] <= DEGENERACY_TOL:
            groups[-1].append(k)
        else:
            groups.append([k])
    values = []
    projectors = []
    for grp in groups:
        cols = v[:, grp]
        projectors.append(cols @ dagger(cols))
        values.append(float(np.mean(w[grp])))
    return ProjectiveObservable(values, projectors, validate=False)


def commutes(x: ProjectiveObservable, x2: ProjectiveObservable, tol: float = COMMUTE_TOL) -> bool:
    """True when the reconstructed operators commute entrywise within ``tol``."""
    if x.dim != x2.dim:
        raise DimensionError(f"observable dimensions differ: {x.dim} vs {x2.dim}")
    a = x.matrix()
    b = x2.matrix()
    return bool(np.abs(a @ b - b @ a).max() <= tol)


def is_mutually_unbiased(
    x: ProjectiveObservable, x2: ProjectiveObservable, tol: float = MU_TOL
) -> bool:
    """True when every eigenbasis overlap |<x_j|x'_k>|^2 equals 1/d within ``tol``.

    Defined only for nondegenerate observables; the overlap is evaluated as
    Tr(P_j P'_k), which equals the squared amplitude for rank-1 projectors.
    """
    if x.dim != x2.dim:
        raise DimensionError(f"observable dimensions differ: {x.dim} vs {x2.dim}")
    if not (x.is_nondegenerate and x2.is_nondegenerate):
        raise DegenerateObservableError(
            "mutual unbiasedness is defined for nondegenerate observables only"
        )
    d = x.dim
    target = 1.0 / d
    for p in x.projectors:
        for q in x2.projectors:
            overlap = float(np.trace(p @ q).real)
            if abs(overlap - target) > tol:
                return False
    return True


def observable_on_qubit(n_qubits: int, qubit: int, theta: float, phi: float = 0.0) -> ProjectiveObservable:
    """Single-qubit axis observable embedded in an ``n_qubits`` register.

    Projectors have rank 2**(n_qubits-1); eigenvalues stay (+1, -1).
    """
    if not 0 <= qubit < n_qubits:
        raise DimensionError(f"qubit {qubit} out of range for {n_qubits} qubits")
    base = observable_from_axis(theta, phi)
    left = np.eye(2**qubit, dtype=complex)
    right = np.eye(2 ** (n_qubits - qubit - 1), dtype=complex)
    projs = [tensor_product(tensor_product(left, p), right) for p in base.projectors]
    return ProjectiveObservable((1.0, -1.0), projs, validate=False)


def _basis_observable(columns: np.ndarray) -> ProjectiveObservable:
    d = columns.shape[0]
    projs = [np.outer(columns[:, k], columns[:, k].conj()) for k in range(d)]
    return ProjectiveObservable(tuple(range(d)), projs, validate=False)


def standard_mub_observables(d: int) -> tuple[ProjectiveObservable, ...]:
    """A fixed set of pairwise mutually unbiased bases, as observables.

    d=2 gives the three Pauli eigenbases; d=3 gives the computational basis
    plus the three Fourier-type bases (four bases, any three of which form
    a triple).  Other dimensions are not provided.
    """
    if d == 2:
        z = ProjectiveObservable(
            (1.0, -1.0),
            (np.diag([1.0, 0.0]).astype(complex), np.diag([0.0, 1.0]).astype(complex)),
            validate=False,
        )
        x = ProjectiveObservable(
            (1.0, -1.0),
            (
                np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex),
                np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex),
            ),
            validate=False,
        )
        y = ProjectiveObservable(
            (1.0, -1.0),
            (
                np.array([[0.5, -0.5j], [0.5j, 0.5]], dtype=complex),
                np.array([[0.5, 0.5j], [-0.5j, 0.5]], dtype=complex),
            ),
            validate=False,
        )
        return (z, x, y)
    if d == 3:
        omega = cmath.exp(2j * cmath.pi / 3)
        bases = [_basis_observable(np.eye(3, dtype=complex))]
        for m in range(3):
            cols = np.empty((3, 3), dtype=complex)
            for k in range(3):
                for j in range(3):
                    cols[j, k] = omega ** ((m * j * j + j * k) % 3) / math.sqrt(3.0)
            bases.append(_basis_observable(cols))
        return tuple(bases)
    raise DimensionError(f"no standard mutually unbiased set stored for dimension {d}")


def pauli_observable(axis: str) -> ProjectiveObservable:
    """Pauli observable 'x', 'y', or 'z' with exact rational projector entries."""
    z, x, y = standard_mub_observables(2)
    try:
        return {"x": x, "y": y, "z": z}[axis.lower()]
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}") from None
