use serde::{Deserialize, Serialize};

use super::{
    check_reduced_c_ellipticity, check_reduced_cancellation, check_reduced_ellipticity, Budget, Evidence, Status,
    Verdict,
};
use crate::error::Result;
use crate::operator::{HomOperator, PartMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Validity {
    Valid,
    Invalid,
    Unknown,
}

impl Validity {
    pub fn symbol(self) -> &'static str {
        match self {
            Validity::Valid => "✓",
            Validity::Invalid => "✗",
            Validity::Unknown => "?",
        }
    }
}

/// What the validity conclusion rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Via {
    Vacuous,
    CElliptic,
    EllipticCancelling,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub c_elliptic: Verdict,
    pub elliptic: Verdict,
    pub cancelling: Verdict,
    /// The inequality for `1 < p < n`.
    pub lp_valid: Validity,
    /// The borderline inequality with `L¹` on the right.
    pub l1_valid: Validity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub via: Option<Via>,
}

fn from_status(s: Status) -> Validity {
    match s {
        Status::CertifiedYes => Validity::Valid,
        Status::CertifiedNo => Validity::Invalid,
        Status::Unknown => Validity::Unknown,
    }
}

/// Lp validity mirrors reduced ellipticity; L¹ validity needs reduced
/// cancellation as well. Reduced ℂ-ellipticity implies both.
pub fn kms_validity(a: &PartMap, b: &HomOperator, budget: &Budget) -> Result<ValidityReport> {
    let c_elliptic = check_reduced_c_ellipticity(a, b, budget)?;
    let elliptic = check_reduced_ellipticity(a, b, budget)?;
    let cancelling = check_reduced_cancellation(a, b, budget)?;
    let vacuous = c_elliptic.evidence.iter().any(|e| matches!(e, Evidence::Vacuous));
    let (lp_valid, l1_valid) = if c_elliptic.status == Status::CertifiedYes {
        (Validity::Valid, Validity::Valid)
    } else {
        let lp = from_status(elliptic.status);
        let l1 = match (elliptic.status, cancelling.status) {
            (Status::CertifiedNo, _) | (_, Status::CertifiedNo) => Validity::Invalid,
            (Status::CertifiedYes, Status::CertifiedYes) => Validity::Valid,
            _ => Validity::Unknown,
        };
        (lp, l1)
    };
    let via = if vacuous {
        Some(Via::Vacuous)
    } else if c_elliptic.status == Status::CertifiedYes {
        Some(Via::CElliptic)
    } else if l1_valid == Validity::Valid {
        Some(Via::EllipticCancelling)
    } else if lp_valid == Validity::Invalid || l1_valid == Validity::Invalid {
        Some(Via::Counterexample)
    } else {
        None
    };
    Ok(ValidityReport {
        c_elliptic,
        elliptic,
        cancelling,
        lp_valid,
        l1_valid,
        via,
    })
}
