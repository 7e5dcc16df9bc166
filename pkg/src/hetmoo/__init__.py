"""Bi-objective optimization benchmarks for objectives with unequal costs.

One objective of each problem is treated as slow and the other as fast with
a fixed slowdown factor, and the package compares schemes that either exploit
or ignore the surplus fast evaluations: a transfer co-surrogate loop with its
ablations, a waiting loop, a fast-objective-first heuristic, and two
interleaving evolutionary baselines.
"""

from .acquisition import AcquisitionConfig, aaf_score, sample_additional, select_infill
from .errors import (InsufficientDataError, InternalConsistencyError,
                     NumericalDegeneracyError, PlanError)
from .evo import (EvoConfig, Population, ReferenceVectorSet, VariationConfig,
                  apd_select, apd_values, lhs_sample, reference_vectors,
                  soea_optimize, surrogate_rvea, variation)
from .gp import FitConfig, GpHyperParams, GpModel, concentrated_likelihood
from .gp import fit as fit_gp
from .gp import log_likelihood, predict, predict_many
from .harness import ExperimentPlan, execute, parse_plan, run_benchmark
from .metrics import (MetricReport, hypervolume_2d, igd, nondominated_mask,
                      wilcoxon_rank_sum)
from .problems import (CmOneMaxSpec, HeterogeneousProblem, ProblemSpec,
                       evaluate, make_cm_onemax, make_problem,
                       pareto_front_samples)
from .sched import (SCHEMES, AlgorithmConfig, BudgetLedger, IterationStats,
                    RunRecord, run_brood_interleaving, run_fast_first,
                    run_scheme, run_speculative_interleaving, run_tc_saea,
                    run_waiting)
from .transfer import (QuadraticCoSurrogate, TrainingSets, TransferBatch,
                       build_difference_set, cap_training_set,
                       select_transferable, synthesize_slow_labels)

__version__ = "0.1.0"

__all__ = [
    "AcquisitionConfig", "AlgorithmConfig", "BudgetLedger", "CmOneMaxSpec",
    "EvoConfig", "ExperimentPlan", "FitConfig", "GpHyperParams", "GpModel",
    "HeterogeneousProblem", "InsufficientDataError",
    "InternalConsistencyError", "IterationStats", "MetricReport",
    "NumericalDegeneracyError", "PlanError", "Population", "ProblemSpec",
    "QuadraticCoSurrogate", "ReferenceVectorSet", "RunRecord", "SCHEMES",
    "TrainingSets", "TransferBatch", "VariationConfig", "aaf_score",
    "apd_select", "apd_values", "build_difference_set", "cap_training_set",
    "concentrated_likelihood", "evaluate", "execute", "fit_gp",
    "hypervolume_2d", "igd", "lhs_sample", "log_likelihood", "make_cm_onemax",
    "make_problem", "nondominated_mask", "parse_plan",
    "pareto_front_samples", "predict", "predict_many", "reference_vectors",
    "run_benchmark", "run_brood_interleaving", "run_fast_first", "run_scheme",
    "run_speculative_interleaving", "run_tc_saea", "run_waiting",
    "sample_additional", "select_infill", "select_transferable",
    "soea_optimize", "surrogate_rvea", "synthesize_slow_labels", "variation",
    "wilcoxon_rank_sum",
]
