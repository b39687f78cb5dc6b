"""Automated model selection over embedding methods and their settings."""

from .gp import (GpSurrogate, ei_formula, encode_config, expected_improvement, fit_gp,
                 gp_fit)
from .search import (FinalResult, bayesian_search, finalize, random_search, report_json,
                     report_table, run_auto)
from .space import HyperparamConfig, SearchSpace, build_search_space
from .trial import TrialResult, evaluate_trial

__all__ = [
    "GpSurrogate", "ei_formula", "encode_config", "expected_improvement", "fit_gp",
    "gp_fit", "FinalResult", "bayesian_search", "finalize", "random_search",
    "report_json", "report_table", "run_auto", "HyperparamConfig", "SearchSpace",
    "build_search_space", "TrialResult", "evaluate_trial",
]
