"""Sweep engine behind the CLI: figure presets, verification, certification.

A sweep walks a grid (monitoring strength, intensity, or an observable axis
angle), evaluates the reality variations at each point along one of three
paths (exact channel algebra, noiseless dilation circuits, or noisy
circuits with finite-shot tomography), and emits CSV/JSON/SVG.  Records are
produced in grid order and all randomness is derived from the config seed
per (point, repeat, state), so identical configs give byte-identical CSV
regardless of evaluation order.

Grid semantics per scenario: the fig4 presets sweep the strength angle
theta_m (intensity follows from the coupling); the fig1/fig2 presets sweep
the tilted observable's axis angle at fixed intensity, and that swept angle
is what lands in the ``theta_m`` record column.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .channels import MonitoringChannel, dephase, monitor, product_monitor, to_superoperator
from .circuits import (
    build_monitor_circuit,
    epsilon_of_strength,
    extract_channel,
    run_circuit_density,
    strength_of_epsilon,
)
from .linalg import eig_backend
from .noise import DEFAULT_DEPOLARIZING_RATE, DEFAULT_READOUT_FLIPS, NoiseModel, confusion_from_flip
from .observables import observable_from_axis, standard_mub_observables
from .reality import (
    classify_case,
    delta_reality_monitored,
    delta_reality_other,
    irreality,
    reality_report,
)
from .sampling import (
    mixture_of_eigenstates,
    random_commuting_pair,
    random_density,
    random_mu_pair,
    random_observable,
    random_probabilities,
)
from .states import DensityOperator, PureState, density_from_pure, von_neumann_entropy
from .tomography import estimate_pauli, reconstruct_state

SCENARIOS = ("fig1", "fig2", "fig4a", "fig4b", "fig4c", "custom")
PATHS = ("analytic", "circuit", "noisy")
GRID_KINDS = ("theta_m", "epsilon", "axis_theta")

CSV_HEADER = "theta_m,epsilon,dR_X,dR_Xp,S_rho,S_mon,S_probe,S_probe_mon,case,path,se_dR_X,se_dR_Xp"

DEFAULT_GRID_POINTS = 33
DEFAULT_SHOTS = 8192
DEFAULT_REPEATS = 10

_STATE_PRESETS = {
    "plus": np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex),
    "minus": np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex),
    "iplus": np.array([[0.5, -0.5j], [0.5j, 0.5]], dtype=complex),
    "iminus": np.array([[0.5, 0.5j], [-0.5j, 0.5]], dtype=complex),
    "zero": np.diag([1.0, 0.0]).astype(complex),
    "one": np.diag([0.0, 1.0]).astype(complex),
    "mixed": np.eye(2, dtype=complex) / 2.0,
}


class ConfigError(ValueError):
    """Sweep configuration is malformed; message names the offending field."""


@dataclass(frozen=True)
class SweepConfig:
    scenario: str = "custom"
    state: object = "plus"
    monitor_axis: tuple[float, float] = (0.0, 0.0)
    probe_axis: tuple[float, float] = (math.pi / 2, 0.0)
    grid_kind: str = "theta_m"
    grid_values: tuple[float, ...] = ()
    sweep_target: str | None = None
    epsilon: float = 1.0
    coupling: str = "CZ"
    path: str = "analytic"
    shots: int = DEFAULT_SHOTS
    repeats: int = DEFAULT_REPEATS
    seed: int = 0
    readout_flips: tuple[float, ...] = DEFAULT_READOUT_FLIPS
    depolarizing: float = DEFAULT_DEPOLARIZING_RATE
    out: str | None = None
    svg: str | None = None
    json_out: str | None = None

    def validate(self) -> "SweepConfig":
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"scenario: unknown value {self.scenario!r}, expected one of {SCENARIOS}")
        if self.path not in PATHS:
            raise ConfigError(f"path: unknown value {self.path!r}, expected one of {PATHS}")
        if self.grid_kind not in GRID_KINDS:
            raise ConfigError(f"grid_kind: unknown value {self.grid_kind!r}")
        if not self.grid_values:
            raise ConfigError("grid_values: grid must be nonempty")
        if self.grid_kind == "epsilon" and any(not 0.0 <= g <= 1.0 for g in self.grid_values):
            raise ConfigError("grid_values: intensity values must lie in [0, 1]")
        if self.grid_kind == "theta_m" and any(
            not 0.0 <= g <= math.pi / 2 + 1e-12 for g in self.grid_values
        ):
            raise ConfigError("grid_values: strength angles must lie in [0, pi/2]")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ConfigError(f"epsilon: must lie in [0, 1], got {self.epsilon!r}")
        if self.coupling not in ("CZ", "CNOT"):
            raise ConfigError(f"coupling: must be CZ or CNOT, got {self.coupling!r}")
        if self.grid_kind == "axis_theta" and self.sweep_target not in ("probe", "monitor"):
            raise ConfigError("sweep_target: axis_theta sweeps need 'probe' or 'monitor'")
        if self.shots < 0:
            raise ConfigError(f"shots: must be nonnegative, got {self.shots}")
        if self.repeats < 1:
            raise ConfigError(f"repeats: must be at least 1, got {self.repeats}")
        if self.depolarizing < 0.0 or self.depolarizing > 1.0:
            raise ConfigError(f"depolarizing: must lie in [0, 1], got {self.depolarizing!r}")
        _resolve_state(self.state)
        return self

    def noise_model(self) -> NoiseModel:
        return NoiseModel(
            readout_confusion=tuple(confusion_from_flip(p) for p in self.readout_flips),
            depolarizing_rate=self.depolarizing,
        )


@dataclass(frozen=True)
class SweepRecord:
    theta_m: float
    epsilon: float
    dR_X: float
    dR_Xp: float
    S_rho: float
    S_mon: float
    S_probe: float
    S_probe_mon: float
    case: str
    path: str
    se_dR_X: float | None = None
    se_dR_Xp: float | None = None


def _resolve_state(spec) -> DensityOperator:
    if isinstance(spec, str):
        try:
            return DensityOperator(_STATE_PRESETS[spec], validate=False)
        except KeyError:
            raise ConfigError(
                f"state: unknown preset {spec!r}, expected one of {sorted(_STATE_PRESETS)}"
            ) from None
    if isinstance(spec, dict):
        try:
            theta = float(spec["theta"])
            phi = float(spec.get("phi", 0.0))
        except (KeyError, TypeError, ValueError):
            raise ConfigError(f"state: angle spec needs numeric 'theta' (and optional 'phi'), got {spec!r}") from None
        amp = [math.cos(theta / 2.0), math.sin(theta / 2.0) * complex(math.cos(phi), math.sin(phi))]
        return density_from_pure(PureState(amp))
    raise ConfigError(f"state: expected preset name or angle dict, got {type(spec).__name__}")


def _grid(points: int, stop: float) -> tuple[float, ...]:
    return tuple(stop * k / (points - 1) for k in range(points))


def make_config(scenario: str = "custom", *, points: int = DEFAULT_GRID_POINTS, **overrides) -> SweepConfig:
    """Build a validated config from a scenario preset plus field overrides."""
    if scenario not in SCENARIOS:
        raise ConfigError(f"scenario: unknown value {scenario!r}, expected one of {SCENARIOS}")
    base: dict = {"scenario": scenario}
    if scenario == "fig1":
        base.update(
            state="plus",
            monitor_axis=(0.0, 0.0),
            probe_axis=(math.pi / 2, 0.0),
            grid_kind="axis_theta",
            sweep_target="probe",
            grid_values=_grid(points, math.pi),
            epsilon=1.0,
        )
    elif scenario == "fig2":
        base.update(
            state="plus",
            monitor_axis=(math.pi / 4, 0.0),
            probe_axis=(0.0, 0.0),
            grid_kind="axis_theta",
            sweep_target="monitor",
            grid_values=_grid(points, math.pi),
            epsilon=1.0,
        )
    elif scenario == "fig4a":
        base.update(
            state="plus",
            monitor_axis=(0.0, 0.0),
            probe_axis=(math.pi / 2, 0.0),
            grid_kind="theta_m",
            grid_values=_grid(points, math.pi / 2),
        )
    elif scenario == "fig4b":
        base.update(
            state="iplus",
            monitor_axis=(0.0, 0.0),
            probe_axis=(math.pi / 2, 0.0),
            grid_kind="theta_m",
            grid_values=_grid(points, math.pi / 2),
        )
    elif scenario == "fig4c":
        base.update(
            state="plus",
            monitor_axis=(math.pi / 4, 0.0),
            probe_axis=(0.0, 0.0),
            grid_kind="theta_m",
            grid_values=_grid(points, math.pi / 2),
        )
    else:
        base.update(grid_values=overrides.pop("grid_values", _grid(points, math.pi / 2)))
    base.update(overrides)
    try:
        config = SweepConfig(**base)
    except TypeError as exc:
        raise ConfigError(f"unknown config field: {exc}") from None
    return config.validate()


def config_from_json(path: str, **overrides) -> SweepConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    scenario = data.pop("scenario", "custom")
    for key in ("grid_values", "monitor_axis", "probe_axis", "readout_flips"):
        if key in data and isinstance(data[key], list):
            data[key] = tuple(data[key])
    data.update(overrides)
    points = data.pop("points", DEFAULT_GRID_POINTS)
    return make_config(scenario, points=points, **data)


def _point_parameters(config: SweepConfig, value: float):
    """Resolve one grid value into (theta_m_column, epsilon, monitor_axis, probe_axis)."""
    monitor_axis = config.monitor_axis
    probe_axis = config.probe_axis
    if config.grid_kind == "theta_m":
        eps = epsilon_of_strength(config.coupling, value)
        return value, eps, monitor_axis, probe_axis
    if config.grid_kind == "epsilon":
        theta_m = strength_of_epsilon(config.coupling, value)
        return theta_m, value, monitor_axis, probe_axis
    if config.sweep_target == "probe":
        probe_axis = (value, probe_axis[1])
    else:
        monitor_axis = (value, monitor_axis[1])
    return value, config.epsilon, monitor_axis, probe_axis


def _circuit_states(config, rho, eps, monitor_axis, probe_axis, noise):
    theta_m = strength_of_epsilon(config.coupling, eps)
    mon_circ = build_monitor_circuit([monitor_axis], theta_m, config.coupling)
    probe_circ = build_monitor_circuit([probe_axis], math.pi / 2, "CZ")
    mon = run_circuit_density(mon_circ, rho, noise)
    probe = run_circuit_density(probe_circ, rho, noise)
    probe_mon = run_circuit_density(probe_circ, mon, noise)
    return mon, probe, probe_mon


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """Evaluate every grid point of a validated config, in grid order."""
    config.validate()
    rho = _resolve_state(config.state)
    records: list[SweepRecord] = []
    noise = config.noise_model() if config.path == "noisy" else None
    for index, value in enumerate(config.grid_values):
        theta_col, eps, monitor_axis, probe_axis = _point_parameters(config, value)
        x_obs = observable_from_axis(*monitor_axis)
        xp_obs = observable_from_axis(*probe_axis)
        case = classify_case(x_obs, xp_obs, rho)
        if config.path == "analytic":
            report = reality_report(x_obs, xp_obs, eps, rho)
            records.append(
                SweepRecord(
                    theta_m=theta_col,
                    epsilon=eps,
                    dR_X=report.delta_r_monitored,
                    dR_Xp=report.delta_r_probe,
                    S_rho=report.entropy_initial,
                    S_mon=report.entropy_monitored,
                    S_probe=report.entropy_probe,
                    S_probe_mon=report.entropy_probe_monitored,
                    case=str(report.case_label),
                    path=config.path,
                )
            )
            continue
        mon, probe, probe_mon = _circuit_states(config, rho, eps, monitor_axis, probe_axis, noise)
        if config.path == "circuit":
            s_rho = von_neumann_entropy(rho)
            s_mon = von_neumann_entropy(mon)
            s_probe = von_neumann_entropy(probe)
            s_probe_mon = von_neumann_entropy(probe_mon)
            records.append(
                SweepRecord(
                    theta_m=theta_col,
                    epsilon=eps,
                    dR_X=s_mon - s_rho,
                    dR_Xp=s_probe + s_mon - s_rho - s_probe_mon,
                    S_rho=s_rho,
                    S_mon=s_mon,
                    S_probe=s_probe,
                    S_probe_mon=s_probe_mon,
                    case=str(case),
                    path=config.path,
                )
            )
            continue
        repeats = 1 if config.shots == 0 else config.repeats
        rows = np.empty((repeats, 6))
        for rep in range(repeats):
            entropies = []
            for state_idx, state in enumerate((rho, mon, probe, probe_mon)):
                rng = np.random.default_rng([config.seed, index, rep, state_idx])
                est = estimate_pauli(state, config.shots, rng, noise=noise, qubit=0)
                entropies.append(von_neumann_entropy(reconstruct_state(est)))
            s_rho, s_mon, s_probe, s_probe_mon = entropies
            rows[rep] = (
                s_mon - s_rho,
                s_probe + s_mon - s_rho - s_probe_mon,
                s_rho,
                s_mon,
                s_probe,
                s_probe_mon,
            )
        means = rows.mean(axis=0)
        if repeats > 1:
            sds = rows[:, :2].std(axis=0, ddof=1) / math.sqrt(repeats)
        else:
            sds = np.zeros(2)
        records.append(
            SweepRecord(
                theta_m=theta_col,
                epsilon=eps,
                dR_X=float(means[0]),
                dR_Xp=float(means[1]),
                S_rho=float(means[2]),
                S_mon=float(means[3]),
                S_probe=float(means[4]),
                S_probe_mon=float(means[5]),
                case=str(case),
                path=config.path,
                se_dR_X=float(sds[0]),
                se_dR_Xp=float(sds[1]),
            )
        )
    return records


def _fmt(x) -> str:
    if x is None:
        return ""
    return repr(float(x))


def render_csv(records: list[SweepRecord]) -> str:
    if not records:
        raise ConfigError("records: nothing to emit")
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                (
                    _fmt(r.theta_m),
                    _fmt(r.epsilon),
                    _fmt(r.dR_X),
                    _fmt(r.dR_Xp),
                    _fmt(r.S_rho),
                    _fmt(r.S_mon),
                    _fmt(r.S_probe),
                    _fmt(r.S_probe_mon),
                    r.case,
                    r.path,
                    _fmt(r.se_dR_X),
                    _fmt(r.se_dR_Xp),
                )
            )
        )
    return "\n".join(lines) + "\n"


def _write_text(path: str, text: str):
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from None


def emit_csv(records: list[SweepRecord], path: str):
    _write_text(path, render_csv(records))


def sweep_metadata(config: SweepConfig) -> dict:
    meta = asdict(config)
    meta["eig_backend"] = eig_backend()
    meta["tomography"] = (
        "simulated per-axis sampling with symmetric readout confusion; "
        f"shots={config.shots} (default {DEFAULT_SHOTS}), repeats={config.repeats}"
    )
    if config.grid_kind == "axis_theta":
        meta["theta_m_column"] = "swept observable axis angle (rad)"
    else:
        meta["theta_m_column"] = "monitoring strength angle (rad)"
    return meta


def emit_json(records: list[SweepRecord], config: SweepConfig, path: str):
    if not records:
        raise ConfigError("records: nothing to emit")
    payload = {"metadata": sweep_metadata(config), "records": [asdict(r) for r in records]}
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# Case verification


@dataclass(frozen=True)
class CheckResult:
    name: str
    instances: int
    worst: float
    bound: float
    kind: str  # 'max<=' or 'min>='
    passed: bool
    note: str = ""


@dataclass(frozen=True)
class VerificationReport:
    seed: int
    trials: int
    dims: tuple[int, ...]
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def render_text(self) -> str:
        lines = [f"case verification: seed={self.seed} trials={self.trials} dims={list(self.dims)}"]
        for c in self.checks:
            rel = "max" if c.kind == "max<=" else "min"
            if math.isinf(c.bound):
                status, bound_txt = "INFO", "none"
            else:
                status, bound_txt = ("PASS" if c.passed else "FAIL"), f"{c.bound:.0e}"
            lines.append(
                f"  [{status}] {c.name}: {rel} margin {c.worst:+.3e} vs bound {bound_txt}"
                f" over {c.instances} instances" + (f"  ({c.note})" if c.note else "")
            )
        lines.append("result: " + ("all checks passed" if self.ok else "VIOLATIONS FOUND"))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "dims": list(self.dims),
            "ok": self.ok,
            "checks": [
                {**asdict(c), "bound": (None if math.isinf(c.bound) else c.bound)}
                for c in self.checks
            ],
        }


def _random_instance(d, rng):
    x = random_observable(d, rng)
    xp = random_observable(d, rng)
    rho = random_density(d, rng)
    eps = float(rng.random())
    return x, xp, rho, eps


def verify_cases(seed: int = 0, trials: int = 200, dims: tuple[int, ...] = (2, 3)) -> VerificationReport:
    """Run every reality-variation invariant on seeded random instances."""
    if trials < 1:
        raise ConfigError(f"trials: must be positive, got {trials}")
    rng = np.random.default_rng(seed)
    checks: list[CheckResult] = []

    def add_max(name, worst, bound, n, note=""):
        checks.append(CheckResult(name, n, float(worst), bound, "max<=", bool(worst <= bound), note))

    def add_min(name, worst, bound, n, note=""):
        checks.append(CheckResult(name, n, float(worst), bound, "min>=", bool(worst >= bound), note))

    # identity between the sequential and composed four-entropy routes
    worst_id = 0.0
    worst_gain = math.inf
    worst_probe = math.inf
    worst_entropy = math.inf
    n = 0
    for d in dims:
        for _ in range(trials):
            x, xp, rho, eps = _random_instance(d, rng)
            report = reality_report(x, xp, eps, rho)
            dro = delta_reality_other(xp, x, eps, rho)
            drm = delta_reality_monitored(x, eps, rho)
            resid = abs(dro - (drm + report.entropy_probe - report.entropy_probe_monitored))
            worst_id = max(worst_id, resid)
            worst_gain = min(worst_gain, drm - eps * irreality(x, rho))
            worst_probe = min(worst_probe, dro)
            worst_entropy = min(worst_entropy, report.entropy_monitored - report.entropy_initial)
            n += 1
    add_max("four-entropy identity (sequential vs composed)", worst_id, 1e-10, n)
    add_min("monitored gain >= eps * irreality", worst_gain, -1e-9, n)
    add_min("entropy nondecreasing under monitoring", worst_entropy, -1e-9, n)
    # The probe gain has no sign guarantee for generic pairs: monitoring a
    # tilted, non-unbiased axis can scramble an established probe reality
    # (minimum reported for the record; provable sign claims follow below).
    add_min(
        "probe gain minimum over generic pairs (informational)",
        worst_probe,
        -math.inf,
        n,
        note="sign-indefinite for generic pairs; see MU and diagonal-state checks",
    )

    # (i) commuting pair -> equal variations
    worst = 0.0
    for d in dims:
        for _ in range(trials):
            x, xp = random_commuting_pair(d, rng)
            rho = random_density(d, rng)
            eps = float(rng.random())
            worst = max(worst, abs(delta_reality_other(xp, x, eps, rho) - delta_reality_monitored(x, eps, rho)))
    add_max("(i) commuting pair gives equal variations", worst, 1e-9, trials * len(dims))

    # (ii) state diagonal in the monitored basis -> both variations vanish
    worst = 0.0
    for d in dims:
        for _ in range(trials):
            x = random_observable(d, rng)
            xp = random_observable(d, rng)
            rho = mixture_of_eigenstates(x, random_probabilities(d, rng))
            eps = float(rng.random())
            worst = max(
                worst,
                abs(delta_reality_monitored(x, eps, rho)),
                abs(delta_reality_other(xp, x, eps, rho)),
            )
    add_max("(ii) monitored-diagonal state freezes both variations", worst, 1e-9, trials * len(dims))

    # (iii) state diagonal in the probe basis: an established probe reality
    # can never grow (one-sided); it stays exactly fixed when the monitored
    # axis is unbiased with respect to the probe.
    worst = -math.inf
    for d in dims:
        for _ in range(trials):
            x = random_observable(d, rng)
            xp = random_observable(d, rng)
            rho = mixture_of_eigenstates(xp, random_probabilities(d, rng))
            eps = float(rng.random())
            worst = max(worst, delta_reality_other(xp, x, eps, rho))
    add_max("(iii) probe-diagonal state: probe gain never positive", worst, 1e-9, trials * len(dims))
    worst = 0.0
    worst_mu_probe = math.inf
    for d in dims:
        if d not in (2, 3):
            continue
        for _ in range(trials):
            x, xp = random_mu_pair(d, rng)
            rho = mixture_of_eigenstates(xp, random_probabilities(d, rng))
            eps = float(rng.random())
            worst = max(worst, abs(delta_reality_other(xp, x, eps, rho)))
            rho_any = random_density(d, rng)
            worst_mu_probe = min(worst_mu_probe, delta_reality_other(xp, x, eps, rho_any))
    add_max("(iii) probe-diagonal state, MU monitor: probe reality fixed", worst, 1e-9, trials * 2)
    add_min("MU pair: probe gain nonnegative (any state)", worst_mu_probe, -1e-9, trials * 2)

    # (iv) mutually unbiased pair: ordering plus the concavity bound
    worst_order = math.inf
    worst_concave = math.inf
    worst_mu_identity = 0.0
    for d in dims:
        if d not in (2, 3):
            continue
        for _ in range(trials):
            x, xp = random_mu_pair(d, rng)
            rho = random_density(d, rng)
            eps = float(rng.random())
            report = reality_report(x, xp, eps, rho)
            worst_order = min(worst_order, report.delta_r_monitored - report.delta_r_probe)
            lhs = report.entropy_probe_monitored - report.entropy_probe
            rhs = eps * (math.log2(d) - report.entropy_probe)
            worst_concave = min(worst_concave, lhs - rhs)
            blend = (1.0 - eps) * dephase(xp, rho).matrix + eps * np.eye(d) / d
            chained = dephase(xp, monitor(MonitoringChannel(x, eps), rho))
            worst_mu_identity = max(worst_mu_identity, np.abs(chained.matrix - blend).max())
    add_min("(iv) MU pair: monitored gain dominates probe gain", worst_order, -1e-9, trials * 2)
    add_min("(iv) MU pair: concavity lower bound", worst_concave, -1e-9, trials * 2)
    add_max("(iv) MU pair: dephased-monitor blend identity", worst_mu_identity, 1e-10, trials * 2)

    # (v) state diagonal in a third pairwise-MU basis -> equal, nonzero variations
    for d in dims:
        if d not in (2, 3):
            continue
        mubs = standard_mub_observables(d)
        x, xp, third = mubs[0], mubs[1], mubs[2]
        worst_eq = 0.0
        worst_pos = math.inf
        for _ in range(trials):
            probs = random_probabilities(d, rng)
            while np.abs(probs - 1.0 / d).max() < 0.05:
                probs = random_probabilities(d, rng)
            rho = mixture_of_eigenstates(third, probs)
            eps = 0.1 + 0.9 * float(rng.random())
            drm = delta_reality_monitored(x, eps, rho)
            dro = delta_reality_other(xp, x, eps, rho)
            worst_eq = max(worst_eq, abs(dro - drm))
            worst_pos = min(worst_pos, drm)
        add_max(f"(v) third-basis-diagonal state: equal variations (d={d})", worst_eq, 1e-9, trials)
        add_min(f"(v) third-basis-diagonal state: strictly positive gain (d={d})", worst_pos, 1e-12, trials)

    return VerificationReport(seed=seed, trials=trials, dims=tuple(dims), checks=tuple(checks))


# ---------------------------------------------------------------------------
# Circuit certification


CNOT_MAPPING_NOTE = (
    "CNOT coupling: certified mapping is eps = 1 - sin(theta_m), decreasing from 1 to 0 "
    "on [0, pi/2]; the often-quoted eps = 1 - (1/2) sin(theta) does NOT match the "
    "extracted channel (its range [1/2, 1] is inconsistent with the observed damping)."
)


@dataclass(frozen=True)
class CertificationReport:
    resolution: int
    seed: int
    deviations: dict  # label -> max sup-norm deviation
    cnot_mapping_max_error: float
    cnot_monotone: bool
    notes: tuple[str, ...]

    @property
    def ok(self) -> bool:
        limits = {"n=3": 1e-9}
        for label, dev in self.deviations.items():
            limit = limits.get(label.split()[0], 1e-10)
            if dev > limit:
                return False
        return self.cnot_mapping_max_error <= 1e-10 and self.cnot_monotone

    def render_text(self) -> str:
        lines = [f"circuit certification: resolution={self.resolution} seed={self.seed}"]
        for label, dev in sorted(self.deviations.items()):
            lines.append(f"  {label}: max superoperator deviation {dev:.3e}")
        lines.append(
            f"  CNOT mapping vs 1 - sin(theta_m): max error {self.cnot_mapping_max_error:.3e}, "
            f"monotone={self.cnot_monotone}"
        )
        for note in self.notes:
            lines.append("  note: " + note)
        lines.append("result: " + ("certified" if self.ok else "DEVIATION FOUND"))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "resolution": self.resolution,
            "seed": self.seed,
            "ok": self.ok,
            "deviations": dict(self.deviations),
            "cnot_mapping_max_error": self.cnot_mapping_max_error,
            "cnot_monotone": self.cnot_monotone,
            "notes": list(self.notes),
        }


def certify_circuits(resolution: int = 17, seed: int = 11, include_three_qubit: bool = True) -> CertificationReport:
    """Compare extracted dilation channels against the analytic monitoring maps."""
    if resolution < 2:
        raise ConfigError(f"resolution: must be at least 2, got {resolution}")
    rng = np.random.default_rng(seed)
    grid = [math.pi / 2 * k / (resolution - 1) for k in range(resolution)]
    deviations: dict[str, float] = {}

    def basis_samples(n):
        fixed = [tuple((0.0, 0.0) for _ in range(n)), tuple((math.pi / 4, 0.0) for _ in range(n))]
        random_bases = tuple(
            (float(rng.uniform(0, math.pi)), float(rng.uniform(-math.pi, math.pi))) for _ in range(n)
        )
        return fixed + [random_bases]

    for coupling in ("CZ", "CNOT"):
        for n in (1, 2):
            worst = 0.0
            for theta_m in grid:
                eps = epsilon_of_strength(coupling, theta_m)
                for bases in basis_samples(n):
                    circ = build_monitor_circuit(list(bases), theta_m, coupling)
                    extracted = extract_channel(circ)
                    reference = to_superoperator(product_monitor(list(bases), eps))
                    worst = max(worst, float(np.abs(extracted.matrix - reference.matrix).max()))
            deviations[f"n={n} {coupling}"] = worst

    if include_three_qubit:
        worst = 0.0
        bases3 = basis_samples(3)[-1]
        for theta_m in (0.0, 0.7, math.pi / 2):
            eps = epsilon_of_strength("CZ", theta_m)
            circ = build_monitor_circuit(list(bases3), theta_m, "CZ")
            extracted = extract_channel(circ)
            reference = to_superoperator(product_monitor(list(bases3), eps))
            worst = max(worst, float(np.abs(extracted.matrix - reference.matrix).max()))
        deviations["n=3 CZ smoke"] = worst

    # independent CNOT intensity mapping from the extracted damping factor
    worst_map = 0.0
    eps_values = []
    for theta_m in grid:
        circ = build_monitor_circuit([(0.0, 0.0)], theta_m, "CNOT")
        sup = extract_channel(circ).matrix
        eps_extracted = 1.0 - float(sup[1, 1].real)
        eps_values.append(eps_extracted)
        worst_map = max(worst_map, abs(eps_extracted - (1.0 - math.sin(theta_m))))
    monotone = all(eps_values[k + 1] <= eps_values[k] + 1e-12 for k in range(len(eps_values) - 1))

    return CertificationReport(
        resolution=resolution,
        seed=seed,
        deviations=deviations,
        cnot_mapping_max_error=worst_map,
        cnot_monotone=monotone,
        notes=(CNOT_MAPPING_NOTE,),
    )
