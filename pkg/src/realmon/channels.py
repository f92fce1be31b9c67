"""Non-revealed measurement and monitoring channels.

Channels are structural descriptors (observable plus intensity, or a
composition tree) applied exactly; the superoperator form exists as an
independent equality oracle.  Superoperators use the row-major matrix-unit
basis: column k*d+l holds the row-stacked image of the unit E_kl, i.e.
S[i*d+j, k*d+l] = channel(E_kl)[i, j].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DimensionError
from .observables import ProjectiveObservable, observable_from_axis, observable_on_qubit
from .states import DensityOperator

SUPEROP_TOL = 1e-10


class DephasingChannel:
    """Full non-revealed measurement: rho -> sum_j P_j rho P_j."""

    __slots__ = ("observable",)

    def __init__(self, observable: ProjectiveObservable):
        self.observable = observable

    @property
    def dim(self) -> int:
        return self.observable.dim

    def apply_matrix(self, mat: np.ndarray) -> np.ndarray:
        out = np.zeros_like(mat, dtype=complex)
        for p in self.observable.projectors:
            out += p @ mat @ p
        return out


class MonitoringChannel:
    """Intensity-epsilon interpolation between identity and full dephasing."""

    __slots__ = ("observable", "epsilon")

    def __init__(self, observable: ProjectiveObservable, epsilon: float):
        epsilon = float(epsilon)
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError(f"measurement intensity must lie in [0, 1], got {epsilon!r}")
        self.observable = observable
        self.epsilon = epsilon

    @property
    def dim(self) -> int:
        return self.observable.dim

    def apply_matrix(self, mat: np.ndarray) -> np.ndarray:
        dephased = DephasingChannel(self.observable).apply_matrix(mat)
        return (1.0 - self.epsilon) * mat + self.epsilon * dephased


class ComposedChannel:
    """Sequential application: outer after inner."""

    __slots__ = ("outer", "inner")

    def __init__(self, outer, inner):
        if outer.dim != inner.dim:
            raise DimensionError(f"channel dimensions differ: {outer.dim} vs {inner.dim}")
        self.outer = outer
        self.inner = inner

    @property
    def dim(self) -> int:
        return self.outer.dim

    def apply_matrix(self, mat: np.ndarray) -> np.ndarray:
        return self.outer.apply_matrix(self.inner.apply_matrix(mat))


class IdentityChannel:
    __slots__ = ("dim",)

    def __init__(self, dim: int):
        self.dim = int(dim)

    def apply_matrix(self, mat: np.ndarray) -> np.ndarray:
        return np.array(mat, dtype=complex)


@dataclass(frozen=True)
class Superoperator:
    """Dense d^2 x d^2 matrix form of a channel (matrix-unit basis)."""

    dim: int
    matrix: np.ndarray

    def apply_matrix(self, mat: np.ndarray) -> np.ndarray:
        d = self.dim
        return (self.matrix @ np.asarray(mat, dtype=complex).reshape(-1)).reshape(d, d)


def _check_dims(channel_dim: int, rho: DensityOperator):
    if channel_dim != rho.dim:
        raise DimensionError(f"channel dimension {channel_dim} does not match state dimension {rho.dim}")


def dephase(x: ProjectiveObservable, rho: DensityOperator) -> DensityOperator:
    """Post-measurement state of a non-revealed projective measurement of x."""
    _check_dims(x.dim, rho)
    return DensityOperator(DephasingChannel(x).apply_matrix(rho.matrix), validate=False)


def monitor(ch: MonitoringChannel, rho: DensityOperator) -> DensityOperator:
    """State after monitoring: (1-eps) rho + eps * dephased(rho)."""
    _check_dims(ch.dim, rho)
    return DensityOperator(ch.apply_matrix(rho.matrix), validate=False)


def compose(outer, inner) -> ComposedChannel:
    return ComposedChannel(outer, inner)


def to_superoperator(ch) -> Superoperator:
    """Materialize any linear channel by acting on the d^2 matrix units."""
    if isinstance(ch, Superoperator):
        return ch
    d = ch.dim
    mat = np.zeros((d * d, d * d), dtype=complex)
    unit = np.zeros((d, d), dtype=complex)
    for k in range(d):
        for l in range(d):
            unit[k, l] = 1.0
            mat[:, k * d + l] = ch.apply_matrix(unit).reshape(-1)
            unit[k, l] = 0.0
    return Superoperator(d, mat)


def channels_equal(a, b, tol: float = SUPEROP_TOL) -> bool:
    """Sup-norm agreement of the two channels' superoperators."""
    sa = to_superoperator(a)
    sb = to_superoperator(b)
    if sa.dim != sb.dim:
        raise DimensionError(f"channel dimensions differ: {sa.dim} vs {sb.dim}")
    return bool(np.abs(sa.matrix - sb.matrix).max() <= tol)


def product_monitor(bases, epsilon: float) -> ComposedChannel | MonitoringChannel:
    """Per-qubit monitoring of a product basis on an n-qubit register.

    ``bases`` lists one (theta, phi) axis per qubit; the result is the
    composition of the commuting single-qubit monitoring channels, which is
    what one ancilla per qubit implements.
    """
    n = len(bases)
    if n < 1:
        raise DimensionError("need at least one qubit basis")
    if n == 1:
        theta, phi = bases[0]
        return MonitoringChannel(observable_from_axis(theta, phi), epsilon)
    channel = None
    for q, (theta, phi) in enumerate(bases):
        stage = MonitoringChannel(observable_on_qubit(n, q, theta, phi), epsilon)
        channel = stage if channel is None else ComposedChannel(stage, channel)
    return channel
