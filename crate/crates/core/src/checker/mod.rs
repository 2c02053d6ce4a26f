//! Decision procedures for ellipticity, cancellation and related symbol
//! conditions, with three-valued verdicts and re-checkable evidence.
//!
//! Soundness contract: a `CertifiedYes` or `CertifiedNo` verdict always carries
//! evidence that [`verify::verify_evidence`] re-derives by exact arithmetic.
//! `Unknown` means a budget ran out and always carries a [`BudgetReport`].

mod cancellation;
mod ellipticity;
pub mod positivity;
mod rank;
pub mod sampling;
mod validity;
pub mod verify;

use serde::{Deserialize, Serialize};

pub use cancellation::{check_full_cancellation, check_partial_cancellation, check_reduced_cancellation};
pub use ellipticity::{check_reduced_c_ellipticity, check_reduced_ellipticity};
pub use positivity::{FaceCover, PositivityCover};
pub use rank::{check_cocancellation, check_constant_rank};
pub use validity::{kms_validity, Validity, ValidityReport, Via};
pub use verify::{verify_certificate, verify_complex_witness, verify_evidence, verify_witness};

use crate::error::{Error, Result};
use crate::operator::{HomOperator, PartMap};
use crate::poly::{GroebnerBasis, Polynomial};
use crate::scalar::{gaussian_vec, rational_vec, Gaussian, Rational};

/// Resource limits for the non-exact parts of the procedures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Pseudo-random sample directions on top of the structured ones.
    pub samples: usize,
    /// Largest `s` in the certificate search `𝔹[ξ]v(ξ) = |ξ|^{2s}w`.
    pub smax: u32,
    /// Subdivision depth per face of the ℓ∞-sphere.
    pub depth: u32,
    pub seed: u64,
    /// Box evaluations per face before branch-and-bound gives up.
    pub max_boxes: usize,
    /// S-polynomial reductions before Buchberger gives up.
    pub max_pairs: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            samples: 25,
            smax: 3,
            depth: 12,
            seed: 1,
            max_boxes: 50_000,
            max_pairs: 20_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    CertifiedYes,
    CertifiedNo,
    Unknown,
}

impl Status {
    pub fn symbol(self) -> &'static str {
        match self {
            Status::CertifiedYes => "yes",
            Status::CertifiedNo => "no",
            Status::Unknown => "?",
        }
    }
}

/// How much of each budget a check consumed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub samples_used: usize,
    pub depth_reached: u32,
    pub boxes_examined: usize,
    /// Largest `s` tried in the certificate search (0 if none).
    pub degree_searched: u32,
    pub pairs_reduced: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhausted: Option<String>,
}

/// `𝔹[ξ*]v* = 0` with `𝒜v* = 0`, `ξ* ≠ 0`, `v* ≠ 0`; `v*` in coordinates of `V`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipticityWitness {
    #[serde(with = "rational_vec")]
    pub xi: Vec<Rational>,
    #[serde(with = "rational_vec")]
    pub v: Vec<Rational>,
}

/// Complex counterpart of [`EllipticityWitness`] over ℚ(i).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexWitness {
    #[serde(with = "gaussian_vec")]
    pub xi: Vec<Gaussian>,
    #[serde(with = "gaussian_vec")]
    pub v: Vec<Gaussian>,
}

/// `𝔹[ξ]v(ξ) = |ξ|^{2s}w` identically, with `𝒜v(ξ) ≡ 0` and `w ≠ 0`.
///
/// `v` lists one homogeneous polynomial of degree `2s − k` per coordinate of `V`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonCancellationCertificate {
    #[serde(with = "rational_vec")]
    pub w: Vec<Rational>,
    pub s: u32,
    pub v: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// `ker𝒜 = {0}`.
    Vacuous,
    Witness(EllipticityWitness),
    ComplexWitness(ComplexWitness),
    /// The Gram polynomial of the restricted symbol is positive on the sphere.
    Positivity(PositivityCover),
    /// A Gröbner basis of an ideal containing every `r×r` minor whose leading
    /// terms miss all pure powers of `missing_var`.
    GroebnerObstruction { basis: GroebnerBasis, missing_var: usize },
    /// A Gröbner basis of the minor ideal with a pure power of every variable.
    GroebnerOriginOnly { basis: GroebnerBasis },
    /// The images at these directions already intersect in `{0}`.
    ImageIntersection {
        #[serde(with = "crate::scalar::rational_vecvec")]
        directions: Vec<Vec<Rational>>,
    },
    Certificate(NonCancellationCertificate),
    /// All `(rank+1)`-minors vanish identically.
    MinorsVanish { rank: usize },
    /// Rank at `xi` is below `rank`, which is attained at `full_at`.
    RankDrop {
        #[serde(with = "rational_vec")]
        xi: Vec<Rational>,
        #[serde(with = "rational_vec")]
        full_at: Vec<Rational>,
        rank: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub evidence: Vec<Evidence>,
    pub budget: BudgetReport,
}

impl Verdict {
    pub(crate) fn yes(evidence: Vec<Evidence>, budget: BudgetReport) -> Self {
        Verdict {
            status: Status::CertifiedYes,
            evidence,
            budget,
        }
    }

    pub(crate) fn no(evidence: Vec<Evidence>, budget: BudgetReport) -> Self {
        Verdict {
            status: Status::CertifiedNo,
            evidence,
            budget,
        }
    }

    pub(crate) fn unknown(reason: impl Into<String>, mut budget: BudgetReport) -> Self {
        budget.exhausted = Some(reason.into());
        Verdict {
            status: Status::Unknown,
            evidence: Vec::new(),
            budget,
        }
    }
}

/// Which procedure produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    ReducedEllipticity,
    ReducedCEllipticity,
    ReducedCancellation,
    FullCancellation,
    PartialCancellation,
    ConstantRank,
}

impl CheckKind {
    pub fn description(self) -> &'static str {
        match self {
            CheckKind::ReducedEllipticity => "ker A ∩ ker B[ξ] = {0} for all real ξ ≠ 0",
            CheckKind::ReducedCEllipticity => "ker A ∩ ker B[ξ] = {0} for all complex ξ ≠ 0",
            CheckKind::ReducedCancellation => "intersection over ξ ≠ 0 of B[ξ](ker A) is {0}",
            CheckKind::FullCancellation => "intersection over ξ ≠ 0 of B[ξ](V) is {0}",
            CheckKind::PartialCancellation => "intersection over ξ ≠ 0 of B[ξ](ker A), meet ker T, is {0}",
            CheckKind::ConstantRank => "rank B[ξ] is constant on ξ ≠ 0",
        }
    }
}

/// A verdict together with everything needed to re-verify it offline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvidenceBundle {
    pub check: CheckKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<PartMap>,
    pub b: HomOperator,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<PartMap>,
    pub verdict: Verdict,
}

pub(crate) fn check_domains(a: &PartMap, b: &HomOperator) -> Result<()> {
    if a.domain.label != b.domain().label || a.domain.dim != b.domain().dim {
        return Err(Error::Label {
            expected: a.domain.label.clone(),
            found: b.domain().label.clone(),
        });
    }
    Ok(())
}
