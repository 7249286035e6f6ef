"""Exact-cover instances: generation, encoding, and classical evaluation.

A problem instance is N spins and M clauses, each clause a triple of spin
indices. A clause is satisfied when exactly two of its three spins are +1
(bits equal 1); the cost of a configuration is

    sum over clauses of (s_i + s_j + s_k - 1)^2

which is 0 / 4 / 16 per clause. Instances used for annealing benchmarks are
certified at generation time to have a unique zero-cost configuration.

Conventions, used project-wide: spin s = +1 corresponds to bit 1, and a
configuration maps to the integer index with bit m of the index holding
spin m.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CapabilityError, InputError

SpinConfig = tuple[int, ...]

# exhaustive enumeration is the certification oracle; keep it tractable
MAX_BRUTE_FORCE_SPINS = 20

# per-clause cost indexed by the number of 1-bits among the clause's spins
_CLAUSE_COST = (16, 4, 0, 4)


@dataclass(frozen=True)
class Clause:
    """A sorted triple of distinct spin indices."""

    indices: tuple[int, int, int]

    def __post_init__(self):
        idx = self.indices
        if len(idx) != 3 or len(set(idx)) != 3:
            raise InputError(f"clause must hold 3 distinct indices, got {idx}")
        if any(i < 0 for i in idx):
            raise InputError(f"clause indices must be non-negative, got {idx}")
        if tuple(sorted(idx)) != tuple(idx):
            raise InputError(f"clause indices must be sorted ascending, got {idx}")

    @property
    def mask(self) -> int:
        i, j, k = self.indices
        return (1 << i) | (1 << j) | (1 << k)


@dataclass(frozen=True)
class Instance:
    """An exact-cover instance with its (claimed) unique solution.

    Instances built by `generate_instance` are certified: the solution is the
    single zero-cost configuration among all 2^n. Directly constructed
    instances (e.g. clause-free ones in tests) skip that certification.
    """

    n: int
    clauses: tuple[Clause, ...]
    solution: SpinConfig
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"need at least one spin, got n={self.n}")
        for c in self.clauses:
            if c.indices[2] >= self.n:
                raise InputError(f"clause {list(c.indices)} out of range for n={self.n}")
        if len(set(self.clauses)) != len(self.clauses):
            raise InputError("duplicate clauses are not allowed")
        check_config(self.solution, self.n)

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def solution_index(self) -> int:
        return config_to_index(self.solution)


def check_config(cfg: SpinConfig, n: int) -> None:
    if len(cfg) != n:
        raise InputError(f"configuration has length {len(cfg)}, expected {n}")
    if any(s not in (-1, 1) for s in cfg):
        raise InputError(f"spins must be -1 or +1, got {cfg}")


def config_to_index(cfg: SpinConfig) -> int:
    """Packed form: bit m of the index is (1 + s_m) / 2."""
    k = 0
    for m, s in enumerate(cfg):
        if s == 1:
            k |= 1 << m
    return k


def index_to_config(k: int, n: int) -> SpinConfig:
    return tuple(1 if (k >> m) & 1 else -1 for m in range(n))


def config_to_bits(cfg: SpinConfig) -> str:
    """Bit string with bit m at string position m."""
    return "".join("1" if s == 1 else "0" for s in cfg)


def config_from_bits(bits: str) -> SpinConfig:
    if any(ch not in "01" for ch in bits):
        raise InputError(f"solution bits must be 0/1, got {bits!r}")
    return tuple(1 if ch == "1" else -1 for ch in bits)


def cost_of_config(inst: Instance, cfg: SpinConfig) -> int:
    """Exact-cover cost: sum over clauses of (s_i + s_j + s_k - 1)^2."""
    check_config(cfg, inst.n)
    total = 0
    for c in inst.clauses:
        i, j, k = c.indices
        total += (cfg[i] + cfg[j] + cfg[k] - 1) ** 2
    return total


def brute_force_minima(inst: Instance) -> tuple[int, list[SpinConfig]]:
    """Exhaustively enumerate all 2^n configurations.

    Returns the minimum cost and every minimizing configuration in ascending
    packed-index order. This is the ground-truth oracle used for uniqueness
    certification and in tests.
    """
    if inst.n > MAX_BRUTE_FORCE_SPINS:
        raise CapabilityError(
            f"brute force supports n <= {MAX_BRUTE_FORCE_SPINS}, got n={inst.n}"
        )
    masks = [c.mask for c in inst.clauses]
    lut = _CLAUSE_COST
    best = None
    argmin: list[int] = []
    for k in range(1 << inst.n):
        cost = 0
        for mask in masks:
            cost += lut[(k & mask).bit_count()]
        if best is None or cost < best:
            best = cost
            argmin = [k]
        elif cost == best:
            argmin.append(k)
    return best, [index_to_config(k, inst.n) for k in argmin]


def generate_instance(n: int, m: int, seed: int) -> Instance | None:
    """Draw m distinct random clauses; keep the instance only if it has a
    unique zero-cost configuration.

    Returns None on rejection (caller retries with another seed). The result
    is a deterministic function of (n, m, seed).
    """
    if n < 4:
        raise InputError(f"instance generation needs n >= 4, got {n}")
    if m < 1:
        raise InputError(f"need at least one clause, got m={m}")
    n_triples = math.comb(n, 3)
    if m > n_triples:
        raise InputError(f"m={m} exceeds the {n_triples} distinct triples for n={n}")
    triples = list(itertools.combinations(range(n), 3))
    rng = np.random.default_rng(seed)
    chosen = rng.choice(n_triples, size=m, replace=False)
    clauses = tuple(Clause(triples[i]) for i in sorted(int(i) for i in chosen))
    probe = Instance(n=n, clauses=clauses, solution=(1,) * n, seed=seed)
    min_cost, minima = brute_force_minima(probe)
    if min_cost != 0 or len(minima) != 1:
        return None
    return Instance(n=n, clauses=clauses, solution=minima[0], seed=seed)


def default_clause_count(n: int, ratio: float = 0.6) -> int:
    """Default clause count m = round(ratio * n); the hard regime sits near
    ratio 0.6 clauses per spin."""
    return max(1, round(ratio * n))


def hamming(a: SpinConfig, b: SpinConfig) -> int:
    if len(a) != len(b):
        raise InputError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(x != y for x, y in zip(a, b))


def flip_d_spins(cfg: SpinConfig, d: int, seed: int) -> SpinConfig:
    """Flip exactly d distinct positions, chosen uniformly by the seed."""
    n = len(cfg)
    if d < 0 or d > n:
        raise InputError(f"d must be in [0, {n}], got {d}")
    if d == 0:
        return tuple(cfg)
    rng = np.random.default_rng(seed)
    positions = set(int(p) for p in rng.choice(n, size=d, replace=False))
    return tuple(-s if m in positions else s for m, s in enumerate(cfg))


# --- instance files ---------------------------------------------------------
#
# JSON schema (exact keys):
#   {"n": int, "m": int, "seed": "u64 as string",
#    "clauses": [[i, j, k], ...],   # sorted lexicographically
#    "solution_bits": "0101..."}    # bit m at string position m


def instance_to_json_dict(inst: Instance) -> dict:
    return {
        "n": inst.n,
        "m": inst.m,
        "seed": str(inst.seed),
        "clauses": [list(c.indices) for c in sorted(inst.clauses, key=lambda c: c.indices)],
        "solution_bits": config_to_bits(inst.solution),
    }


def instance_from_json_dict(data: dict) -> Instance:
    for key in ("n", "m", "seed", "clauses", "solution_bits"):
        if key not in data:
            raise InputError(f"instance file missing key {key!r}")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise InputError(f"invalid spin count n={n!r}")
    clauses = []
    for pos, raw in enumerate(data["clauses"]):
        if len(raw) != 3 or any(not isinstance(i, int) for i in raw):
            raise InputError(f"clause {pos} = {raw} is not a triple of integers")
        if any(i < 0 or i >= n for i in raw):
            raise InputError(f"clause {pos} = {raw} has an index out of range for n={n}")
        try:
            clauses.append(Clause(tuple(sorted(raw))))
        except InputError as exc:
            raise InputError(f"clause {pos} = {raw}: {exc}") from exc
    if data["m"] != len(clauses):
        raise InputError(f"m={data['m']} does not match {len(clauses)} clauses")
    bits = data["solution_bits"]
    if len(bits) != n:
        raise InputError(f"solution_bits length {len(bits)} does not match n={n}")
    inst = Instance(
        n=n,
        clauses=tuple(clauses),
        solution=config_from_bits(bits),
        seed=int(data["seed"]),
    )
    sol_cost = cost_of_config(inst, inst.solution)
    if sol_cost != 0:
        raise InputError(f"stored solution has cost {sol_cost}, expected 0")
    return inst


def save_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(json.dumps(instance_to_json_dict(inst), indent=2) + "\n")


def load_instance(path: str | Path) -> Instance:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc
    try:
        return instance_from_json_dict(data)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc
