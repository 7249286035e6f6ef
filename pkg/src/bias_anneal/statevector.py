"""Dense state-vector primitives for the transverse-field dynamics.

Amplitudes are stored as a flat complex array of length 2^n; basis index k
encodes spin m in bit m (bit 1 <-> s = +1). All operators are applied
matrix-free via bit arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapabilityError, InputError
from .exact_cover import Instance, SpinConfig, config_to_index, index_to_config

# cap on |h_m|: keeps the z-part of the driver comparable to its x-part so the
# fixed integrator step stays adequate; inactive in paper-scale reproductions
DEFAULT_H_MAX = 10.0

MAX_SIMULATOR_SPINS = 20


@dataclass
class StateVector:
    n: int
    amps: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amps.copy())


def validate_bias(bias, n: int, h_max: float = DEFAULT_H_MAX) -> np.ndarray:
    """Check a per-spin longitudinal field and return it as a float array."""
    h = np.asarray(bias, dtype=np.float64)
    if h.shape != (n,):
        raise InputError(f"bias field has shape {h.shape}, expected ({n},)")
    if not np.all(np.isfinite(h)):
        raise InputError("bias field contains non-finite values")
    if np.any(np.abs(h) > h_max):
        raise InputError(f"bias magnitude exceeds the cap |h| <= {h_max}")
    return h


def build_diagonal(inst: Instance, bound: int = MAX_SIMULATOR_SPINS) -> np.ndarray:
    """Cost of every basis configuration, one pass over clauses via bit tests."""
    if inst.n > bound:
        raise CapabilityError(f"diagonal table supports n <= {bound}, got n={inst.n}")
    ks = np.arange(1 << inst.n, dtype=np.int64)
    values = np.zeros(1 << inst.n, dtype=np.float64)
    for c in inst.clauses:
        s = np.zeros(1 << inst.n, dtype=np.int64)
        for i in c.indices:
            s += 2 * ((ks >> i) & 1) - 1
        values += (s - 1) ** 2
    return values


def bias_diagonal(bias, n: int) -> np.ndarray:
    """Diagonal of sum_m h_m sigma^z_m: entry k is sum_m h_m s_m(k)."""
    h = np.asarray(bias, dtype=np.float64)
    ks = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.float64)
    for m in range(n):
        out += h[m] * (2.0 * ((ks >> m) & 1) - 1.0)
    return out


def initial_state(n: int, bias) -> StateVector:
    """Product of single-spin ground states of (sigma^x + h_m sigma^z).

    Each factor is the normalized (1, lambda - h) on (s=+1, s=-1) with
    lambda = -sqrt(1 + h^2); the s=+1 component is real and non-negative.
    """
    h = validate_bias(bias, n)
    factors = []
    for m in range(n):
        lam = -np.sqrt(1.0 + h[m] * h[m])
        v = np.array([lam - h[m], 1.0])  # (bit 0 <-> s=-1, bit 1 <-> s=+1)
        factors.append(v / np.linalg.norm(v))
    amps = np.array([1.0])
    for m in range(n - 1, -1, -1):
        amps = np.kron(amps, factors[m])
    return StateVector(n, amps.astype(np.complex128))


def apply_diagonal_phase(
    state: StateVector, table: np.ndarray, bias, a: float, b: float, dt: float
) -> StateVector:
    """amp_k *= exp(-i dt [a * table_k + b * sum_m h_m s_m(k)]), in place."""
    if table.shape != state.amps.shape:
        raise InputError(f"table shape {table.shape} does not match state dim")
    theta = dt * (a * table + b * bias_diagonal(bias, state.n))
    state.amps *= np.exp(-1j * theta)
    return state


def apply_transverse_rotation(state: StateVector, b: float, dt: float) -> StateVector:
    """exp(-i dt b sigma^x_m) on every spin m independently, in place."""
    c = np.cos(b * dt)
    s = np.sin(b * dt)
    for m in range(state.n):
        view = state.amps.reshape(-1, 2, 1 << m)
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :].copy()
        view[:, 0, :] = c * a0 - 1j * s * a1
        view[:, 1, :] = -1j * s * a0 + c * a1
    return state


def magnetization(state: StateVector, m: int) -> float:
    """Expectation of sigma^z on spin m."""
    if m < 0 or m >= state.n:
        raise InputError(f"spin index {m} out of range for n={state.n}")
    probs = np.abs(state.amps) ** 2
    view = probs.reshape(-1, 2, 1 << m)
    return float(view[:, 1, :].sum() - view[:, 0, :].sum())


def overlap_probability(state: StateVector, cfg: SpinConfig) -> float:
    """|<cfg|state>|^2 for a basis configuration."""
    if len(cfg) != state.n:
        raise InputError(f"configuration length {len(cfg)} does not match n={state.n}")
    return float(np.abs(state.amps[config_to_index(cfg)]) ** 2)


def sample_config(state: StateVector, seed: int) -> SpinConfig:
    """One projective measurement of all sigma^z: a basis index drawn with
    probability |amp_k|^2, deterministic in (state, seed)."""
    probs = np.abs(state.amps) ** 2
    cum = np.cumsum(probs)
    u = np.random.default_rng(seed).random() * cum[-1]
    k = int(np.searchsorted(cum, u, side="right"))
    return index_to_config(min(k, len(cum) - 1), state.n)
