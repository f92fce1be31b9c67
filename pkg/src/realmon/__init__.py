"""Reality and irreality of quantum observables under weak non-revealed monitoring.

Core layers: dense complex linear algebra with a compiled-or-pure Jacobi
eigensolver (``linalg``), validated states and entropies (``states``),
projective observables (``observables``), dephasing and monitoring channels
with a superoperator oracle (``channels``), reality-variation measures and
closed-form qubit spectra (``reality``), ancilla-dilation circuits with
noise (``circuits``, ``noise``), single-qubit tomography (``tomography``),
and the sweep/CLI front end (``sweeps``, ``cli``).
"""

__version__ = "0.1.0"

from .linalg import eig_backend, hermitian_eig, partial_trace, tensor_product
from .states import (
    DensityOperator,
    PureState,
    bloch_vector,
    density_from_pure,
    von_neumann_entropy,
)
from .observables import (
    ProjectiveObservable,
    commutes,
    is_mutually_unbiased,
    observable_from_axis,
    observable_from_hermitian,
    pauli_observable,
)
from .channels import (
    MonitoringChannel,
    Superoperator,
    channels_equal,
    compose,
    dephase,
    monitor,
    to_superoperator,
)
from .reality import (
    CaseLabel,
    RealityReport,
    classify_case,
    delta_reality_monitored,
    delta_reality_other,
    irreality,
    reality,
    reality_report,
    scenario1_eigenvalues,
    scenario2_eigenvalues,
)
from .circuits import (
    Circuit,
    Gate,
    build_monitor_circuit,
    dump_circuit,
    epsilon_of_strength,
    extract_channel,
    run_circuit_density,
    unitary_adjoint_identity_check,
)
from .noise import NoiseModel, apply_readout_noise, default_noise_model, sample_shots
from .tomography import PauliEstimates, estimate_pauli, reconstruct_state
from .sweeps import (
    SweepConfig,
    SweepRecord,
    certify_circuits,
    make_config,
    run_sweep,
    verify_cases,
)

__all__ = [name for name in dir() if not name.startswith("_")]
