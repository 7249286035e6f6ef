"""Time evolution under H(t) = A(t) H_p + B(t) H_q and single-run readout.

The schedule is an exponential ramp B(t) = B0 exp(-t/tau) with constant A,
terminating at T = 10 tau. Evolution uses second-order Strang splitting with
midpoint-frozen coefficients (exactly unitary substeps); a dense
matrix-exponential propagator over the same schedule serves as the
validation oracle at small n.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import CapabilityError, InputError
from .exact_cover import (
    Instance,
    SpinConfig,
    cost_of_config,
    hamming,
)
from .statevector import (
    StateVector,
    bias_diagonal,
    build_diagonal,
    initial_state,
    magnetization,
    overlap_probability,
    sample_config,
    validate_bias,
)

MAX_ORACLE_SPINS = 8

# |<sigma_z>| at or below this maps to s = +1 (sign() tie rule)
MAG_TIE_EPS = 1e-9


@dataclass(frozen=True)
class Schedule:
    """Annealing ramp B(t) = b0 exp(-t/tau), A(t) = a, over t in [0, T].

    T defaults to 10 tau and dt to 5e-4 tau (so b0*dt stays below ~0.025 rad
    per substep at the default b0=50). dt is adjusted downward so that
    steps = T/dt is an exact integer.
    """

    b0: float = 50.0
    tau: float = 1.0
    a: float = 1.0
    t_total: float = field(default=0.0)
    dt: float = field(default=0.0)
    steps: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.tau <= 0 or self.b0 <= 0:
            raise InputError("schedule requires tau > 0 and b0 > 0")
        t_total = self.t_total if self.t_total > 0 else 10.0 * self.tau
        dt_req = self.dt if self.dt > 0 else 5e-4 * self.tau
        if dt_req > t_total:
            dt_req = t_total
        ratio = t_total / dt_req
        steps = round(ratio) if abs(ratio - round(ratio)) < 1e-6 else math.ceil(ratio)
        object.__setattr__(self, "t_total", t_total)
        object.__setattr__(self, "steps", int(steps))
        object.__setattr__(self, "dt", t_total / steps)

    def b_of(self, t: float) -> float:
        return self.b0 * math.exp(-t / self.tau)

    def a_of(self, t: float) -> float:
        return self.a

    def to_dict(self) -> dict:
        return {
            "b0": self.b0,
            "tau": self.tau,
            "a": self.a,
            "t_total": self.t_total,
            "dt": self.dt,
            "steps": self.steps,
        }


@dataclass
class RunRecord:
    """Observables of one annealing run."""

    alpha: int
    success_prob: float
    final_config: SpinConfig
    final_cost: int
    hamming_to_solution: int
    magnetizations: tuple[float, ...]
    sampled_config: SpinConfig | None
    bias_used: tuple[float, ...]
    wall_time_s: float

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "success_prob": self.success_prob,
            "final_config": list(self.final_config),
            "final_cost": self.final_cost,
            "hamming_to_solution": self.hamming_to_solution,
            "magnetizations": list(self.magnetizations),
            "sampled_config": None
            if self.sampled_config is None
            else list(self.sampled_config),
            "bias_used": list(self.bias_used),
            "wall_time_s": self.wall_time_s,
        }


def evolve(inst: Instance, bias, sched: Schedule) -> StateVector:
    """Propagate from the biased paramagnetic ground state to t = T.

    Strang splitting per step: half-step diagonal phase on
    [A H_p + B sum_m h_m sigma^z], full-step transverse rotation, half-step
    diagonal phase, all with coefficients frozen at the step midpoint.
    """
    h = validate_bias(bias, inst.n)
    table = build_diagonal(inst)
    state = initial_state(inst.n, h)
    re = np.ascontiguousarray(state.amps.real)
    im = np.ascontiguousarray(state.amps.imag)
    _kernels.split_step_evolve(
        re, im, table, h, sched.a, sched.b0, sched.tau, sched.dt, sched.steps
    )
    state.amps = re + 1j * im
    return state


def dense_propagator_oracle(
    inst: Instance,
    bias,
    sched: Schedule,
    dt_ref: float,
    psi0: StateVector | None = None,
) -> StateVector:
    """Reference propagator: exact matrix exponential of the full 2^n x 2^n
    Hamiltonian frozen at each step midpoint, via eigendecomposition.

    Only the time-ordering error of the midpoint freezing remains, O(dt_ref^2);
    there is no splitting error. Intentionally slow; n <= 8.
    """
    if inst.n > MAX_ORACLE_SPINS:
        raise CapabilityError(
            f"dense oracle supports n <= {MAX_ORACLE_SPINS}, got n={inst.n}"
        )
    if dt_ref <= 0:
        raise InputError("dt_ref must be positive")
    h = validate_bias(bias, inst.n)
    dim = 1 << inst.n
    diag_p = sched.a * build_diagonal(inst)
    hq = np.zeros((dim, dim))
    ks = np.arange(dim)
    for m in range(inst.n):
        hq[ks, ks ^ (1 << m)] = 1.0
    hq[ks, ks] = bias_diagonal(h, inst.n)

    ratio = sched.t_total / dt_ref
    steps = round(ratio) if abs(ratio - round(ratio)) < 1e-6 else math.ceil(ratio)
    dt = sched.t_total / steps

    state = initial_state(inst.n, h) if psi0 is None else psi0.copy()
    psi = state.amps
    for j in range(steps):
        b = sched.b_of((j + 0.5) * dt)
        hmat = b * hq
        hmat[ks, ks] += diag_p
        w, v = np.linalg.eigh(hmat)
        psi = v @ (np.exp(-1j * dt * w) * (v.T @ psi))
    state.amps = psi
    return state


def final_config_from_magnetizations(mags) -> SpinConfig:
    """sign(<sigma_z>) with zeros (within MAG_TIE_EPS) mapped to +1."""
    return tuple(-1 if m < -MAG_TIE_EPS else 1 for m in mags)


def run_once(
    inst: Instance,
    bias,
    sched: Schedule,
    measure: bool = False,
    seed: int = 0,
    alpha: int = 1,
) -> RunRecord:
    """One annealing run plus classical readout of the final state."""
    t0 = time.perf_counter()
    state = evolve(inst, bias, sched)
    mags = tuple(magnetization(state, m) for m in range(inst.n))
    final_config = final_config_from_magnetizations(mags)
    sampled = sample_config(state, seed) if measure else None
    h = validate_bias(bias, inst.n)
    return RunRecord(
        alpha=alpha,
        success_prob=overlap_probability(state, inst.solution),
        final_config=final_config,
        final_cost=cost_of_config(inst, final_config),
        hamming_to_solution=hamming(final_config, inst.solution),
        magnetizations=mags,
        sampled_config=sampled,
        bias_used=tuple(float(x) for x in h),
        wall_time_s=time.perf_counter() - t0,
    )
