"""Success probabilities, improvement rates and Monte-Carlo estimates for (1+1)RUS and (1+1)EP
on the sphere and cheating problems."""

from ._core import (
    AccuracyError,
    BoundValue,
    DecayFitError,
    InconsistentStateError,
    InfeasiblePointError,
    McEstimate,
    SweepTable,
    UnsupportedProblemError,
    classify_point,
    estimate_improvement_rate,
    estimate_success_probability,
    evaluate,
    fit_decay_base,
    format_csv,
    gaussian_cdf,
    integrate,
    ir_cht_1d,
    ir_cht_ep_bounds,
    ir_sph_1d,
    ir_sph_ep_bounds,
    ir_sph_rus,
    maximize_1d,
    optimal_sigma,
    optimal_sigma_cht_1d,
    p_cht_1d,
    p_cht_ep_bounds,
    p_sph_1d,
    p_sph_ep_bounds,
    p_sph_rus,
    psi,
    run,
    run_sweep,
    rus_cht_coordinate_feasible,
)

__all__ = [name for name in dir() if not name.startswith("_")]
