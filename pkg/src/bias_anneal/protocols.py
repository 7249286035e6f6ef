"""The four annealing strategies and their ensemble figures of merit.

standard   one unbiased run.
biased     one run with h_m = -guess_m (anti-aligned full-strength bias).
iterative  unbiased first run, then h_m = -s_m^final of the previous run,
           until two consecutive runs agree on the final configuration.
antibias   accumulative weak bias h_m = h * sum_alpha s_m^alpha over the
           projective samples of all previous runs, until a sample hits
           cost zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .annealing import RunRecord, Schedule, run_once
from .errors import InputError
from .exact_cover import Instance, SpinConfig, check_config, cost_of_config
from .seeds import derive_seed

FIXED_POINT = "fixed-point"
SOLUTION_FOUND = "solution-found"
STEP_CAP = "step-cap"

DEFAULT_MAX_ITERS = 20
DEFAULT_MAX_STEPS = 100
DEFAULT_ANTIBIAS_H = 0.1


@dataclass
class ProtocolResult:
    records: list[RunRecord]
    terminated_by: str
    steps_used: int
    instance_seed: int

    @property
    def success_probs(self) -> list[float]:
        return [r.success_prob for r in self.records]

    @property
    def final(self) -> RunRecord:
        return self.records[-1]


def run_standard(inst: Instance, sched: Schedule, seed: int = 0) -> ProtocolResult:
    """Single unbiased annealing run."""
    rec = run_once(
        inst,
        np.zeros(inst.n),
        sched,
        measure=False,
        seed=derive_seed(seed, inst.seed, 1),
        alpha=1,
    )
    return ProtocolResult([rec], FIXED_POINT, 1, inst.seed)


def run_biased(
    inst: Instance, guess: SpinConfig, sched: Schedule, seed: int = 0
) -> ProtocolResult:
    """Single run biased toward a guess configuration via h_m = -guess_m."""
    check_config(guess, inst.n)
    bias = -np.asarray(guess, dtype=np.float64)
    rec = run_once(
        inst, bias, sched, measure=False, seed=derive_seed(seed, inst.seed, 1), alpha=1
    )
    return ProtocolResult([rec], FIXED_POINT, 1, inst.seed)


def run_iterative(
    inst: Instance, sched: Schedule, seed: int = 0, max_iters: int = DEFAULT_MAX_ITERS
) -> ProtocolResult:
    """Feed each run's sign(<sigma_z>) readout back as the next bias.

    Stops at a fixed point (two consecutive identical final configurations).
    A 2-cycle (the configuration of run alpha-2 reappearing at alpha) cannot
    self-terminate since the dynamics is deterministic given the bias; it is
    detected and reported as a step-cap termination, as is hitting max_iters.
    """
    if max_iters < 2:
        raise InputError(f"iterative protocol needs max_iters >= 2, got {max_iters}")
    records = [
        run_once(
            inst,
            np.zeros(inst.n),
            sched,
            measure=False,
            seed=derive_seed(seed, inst.seed, 1),
            alpha=1,
        )
    ]
    terminated = STEP_CAP
    for alpha in range(2, max_iters + 1):
        bias = -np.asarray(records[-1].final_config, dtype=np.float64)
        rec = run_once(
            inst,
            bias,
            sched,
            measure=False,
            seed=derive_seed(seed, inst.seed, alpha),
            alpha=alpha,
        )
        records.append(rec)
        if rec.final_config == records[-2].final_config:
            terminated = FIXED_POINT
            break
        if len(records) >= 3 and rec.final_config == records[-3].final_config:
            break  # 2-cycle
    return ProtocolResult(records, terminated, len(records), inst.seed)


def run_antibias(
    inst: Instance,
    sched: Schedule,
    seed: int = 0,
    h: float = DEFAULT_ANTIBIAS_H,
    max_steps: int = DEFAULT_MAX_STEPS,
    stop_rule: str = "sample",
) -> ProtocolResult:
    """Accumulate h * sum of measured configurations as an anti-bias.

    Every run ends with a projective measurement whose outcome is added to
    the accumulator; the loop stops once the stop probe (the sample, or the
    expectation-value configuration when stop_rule="expectation") has cost 0.
    """
    if not 0.0 < h < 1.0:
        raise InputError(f"antibias strength must satisfy 0 < h < 1, got {h}")
    if max_steps < 1:
        raise InputError(f"antibias needs max_steps >= 1, got {max_steps}")
    if stop_rule not in ("sample", "expectation"):
        raise InputError(f"unknown stop_rule {stop_rule!r}")
    accum = np.zeros(inst.n)
    records: list[RunRecord] = []
    terminated = STEP_CAP
    for alpha in range(1, max_steps + 1):
        rec = run_once(
            inst,
            h * accum,
            sched,
            measure=True,
            seed=derive_seed(seed, inst.seed, alpha),
            alpha=alpha,
        )
        records.append(rec)
        probe = rec.sampled_config if stop_rule == "sample" else rec.final_config
        if cost_of_config(inst, probe) == 0:
            terminated = SOLUTION_FOUND
            break
        accum += np.asarray(rec.sampled_config, dtype=np.float64)
    return ProtocolResult(records, terminated, len(records), inst.seed)


# --- ensemble statistics ----------------------------------------------------


@dataclass
class EnsembleStats:
    """Figures of merit of a protocol ensemble against its standard baseline.

    mean_p is the mean final-run success probability (p for standard, p^iter
    for iterative, p^f for antibias); p_bar additionally averages over the
    runs of each instance; tau_st = <1/p_i> over the standard ensemble and
    mean_steps is the measured run count (tau^ab for antibias). The hardest
    subset holds the instances with the lowest standard p_i.
    """

    n_instances: int
    mean_p: float
    std_p: float
    se_p: float
    p_bar: float
    gamma: float
    tau_st: float
    tau_st_infinite: bool
    mean_steps: float
    mean_hamming: float
    se_hamming: float
    mean_final_cost: float
    solution_matches: int
    step_cap_hits: int
    hardest_fraction: float
    hardest_count: int
    p_hard: float
    p_bar_hard: float
    p_final_hard: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def stats_from_arrays(
    run_probs: list[list[float]],
    final_hamming: list[int],
    final_cost: list[int],
    steps_used: list[int],
    terminated_by: list[str],
    instance_seeds: list[int],
    standard_probs: list[float],
    hardest_fraction: float = 0.05,
) -> EnsembleStats:
    """Core statistics shared by `metrics` and the CSV aggregation path."""
    n = len(run_probs)
    if not (
        n
        == len(final_hamming)
        == len(final_cost)
        == len(steps_used)
        == len(terminated_by)
        == len(instance_seeds)
        == len(standard_probs)
    ):
        raise InputError("ensemble arrays have mismatched lengths")
    p_final = np.array([probs[-1] for probs in run_probs])
    p_std = np.array(standard_probs)
    per_inst_bar = np.array([float(np.mean(probs)) for probs in run_probs])

    mean_p = float(np.mean(p_final))
    std_p = float(np.std(p_final, ddof=1)) if n > 1 else 0.0
    mean_std = float(np.mean(p_std))
    gamma = float("inf") if mean_std == 0 else mean_p / mean_std
    tau_inf = bool(np.any(p_std == 0))
    tau_st = float("inf") if tau_inf else float(np.mean(1.0 / p_std))
    hamming_arr = np.array(final_hamming, dtype=float)
    se_hamming = float(np.std(hamming_arr, ddof=1) / np.sqrt(n)) if n > 1 else 0.0

    count = max(1, round(hardest_fraction * n))
    order = sorted(range(n), key=lambda i: (p_std[i], instance_seeds[i]))
    hard = order[:count]

    return EnsembleStats(
        n_instances=n,
        mean_p=mean_p,
        std_p=std_p,
        se_p=std_p / np.sqrt(n) if n > 1 else 0.0,
        p_bar=float(np.mean(per_inst_bar)),
        gamma=gamma,
        tau_st=tau_st,
        tau_st_infinite=tau_inf,
        mean_steps=float(np.mean(steps_used)),
        mean_hamming=float(np.mean(hamming_arr)),
        se_hamming=se_hamming,
        mean_final_cost=float(np.mean(final_cost)),
        solution_matches=int(np.sum(hamming_arr == 0)),
        step_cap_hits=sum(t == STEP_CAP for t in terminated_by),
        hardest_fraction=hardest_fraction,
        hardest_count=count,
        p_hard=float(np.mean(p_std[hard])),
        p_bar_hard=float(np.mean(per_inst_bar[hard])),
        p_final_hard=float(np.mean(p_final[hard])),
    )


def metrics(
    results: list[ProtocolResult],
    standard: list[ProtocolResult],
    hardest_fraction: float = 0.05,
) -> EnsembleStats:
    """Ensemble statistics for a protocol, paired with its standard baseline
    over the same instances (matched by generation seed, same order)."""
    if len(results) != len(standard):
        raise InputError("protocol and standard ensembles differ in size")
    for r, s in zip(results, standard):
        if r.instance_seed != s.instance_seed:
            raise InputError("protocol and standard ensembles cover different instances")
    return stats_from_arrays(
        run_probs=[r.success_probs for r in results],
        final_hamming=[r.final.hamming_to_solution for r in results],
        final_cost=[r.final.final_cost for r in results],
        steps_used=[r.steps_used for r in results],
        terminated_by=[r.terminated_by for r in results],
        instance_seeds=[r.instance_seed for r in results],
        standard_probs=[s.final.success_prob for s in standard],
        hardest_fraction=hardest_fraction,
    )
