"""Multiset and symbiogenetic genetic algorithms on deceptive benchmarks."""

from ._core import (
    Parasite,
    Problem,
    ExperimentResult,
    apply_parasite,
    compatible,
    infection_probability,
    list_problems,
    make_problem,
    recombine_parasites,
    run_experiment,
    shifted_rank,
    split_at,
    split_probability,
    wave_function,
)

__all__ = [
    "Parasite",
    "Problem",
    "ExperimentResult",
    "apply_parasite",
    "compatible",
    "infection_probability",
    "list_problems",
    "make_problem",
    "recombine_parasites",
    "run_experiment",
    "shifted_rank",
    "split_at",
    "split_probability",
    "wave_function",
]
