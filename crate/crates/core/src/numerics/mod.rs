//! Finite-difference evaluation of the inequality's quotient on sampled fields,
//! and the blow-up family for `(sym, skewtr Curl)`.

mod experiment;
mod family;
mod grid;

pub use experiment::{
    blowup_experiment, convergence_order, default_schedule, fit_line, kms_ratio, one_star, refinement_maxima,
    stencil_error, summarize, write_csv, BlowupRow, BlowupSummary, KmsParts, LineFit,
};
pub use family::{
    anti_vec, bump, counterexample_family, cutoff, grad_phi, hessian_phi, radial, BumpField, Counterexample,
    ExperimentConfig, Radial,
};
pub use grid::{apply_operator, apply_part_map, lp_norm, multi_indices, sobolev_seminorm, GridField};
