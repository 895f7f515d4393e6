from .baselines import baseline_fd, baseline_fvps_approx
from .complexity import analytic_iterations, estimate_flops
from .config import ALGORITHMS, ExperimentConfig, load_config
from .output import read_results, write_results
from .runner import ResultRow, run_sweep

__all__ = ["ALGORITHMS", "ExperimentConfig", "ResultRow", "analytic_iterations",
           "baseline_fd", "baseline_fvps_approx", "estimate_flops", "load_config",
           "read_results", "run_sweep", "write_results"]
