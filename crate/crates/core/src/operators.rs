//! The six operator families and their membership tests.
//!
//! ```text
//!                                      Pr(H)
//!                                     ↙
//!  B(H) ⊇ SA(H) ⊇ Pos(H) ⊇ Ef(H)
//!                                     ↖
//!                                      DM(H)  (inside Pos(H))
//! ```
//!
//! Membership is decided numerically with an explicit tolerance. Eigenvalues
//! in `[-tol, 0)` count as 0, eigenvalues in `(1, 1 + tol]` count as 1.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, scaled_tol, ComplexMatrix, I};

pub use crate::sampling::{rng_from_seed, sample, sample_unitary, sample_with};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OperatorKind {
    Bounded,
    SelfAdjoint,
    Positive,
    Effect,
    Projection,
    Density,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 6] = [
        OperatorKind::Bounded,
        OperatorKind::SelfAdjoint,
        OperatorKind::Positive,
        OperatorKind::Effect,
        OperatorKind::Projection,
        OperatorKind::Density,
    ];

    /// Families with a Hilbert–Schmidt dual.
    pub const DUALIZABLE: [OperatorKind; 5] = [
        OperatorKind::Bounded,
        OperatorKind::SelfAdjoint,
        OperatorKind::Positive,
        OperatorKind::Effect,
        OperatorKind::Density,
    ];

    /// The family on which `tr(A −)` is evaluated when `A` is of this kind.
    /// Effects pair with densities and densities with effects; the module
    /// families pair with themselves.
    pub fn dual_domain(self) -> Option<OperatorKind> {
        match self {
            OperatorKind::Bounded => Some(OperatorKind::Bounded),
            OperatorKind::SelfAdjoint => Some(OperatorKind::SelfAdjoint),
            OperatorKind::Positive => Some(OperatorKind::Positive),
            OperatorKind::Effect => Some(OperatorKind::Density),
            OperatorKind::Density => Some(OperatorKind::Effect),
            OperatorKind::Projection => None,
        }
    }

    /// Direct supersets in the inclusion diagram.
    pub fn parents(self) -> &'static [OperatorKind] {
        match self {
            OperatorKind::Bounded => &[],
            OperatorKind::SelfAdjoint => &[OperatorKind::Bounded],
            OperatorKind::Positive => &[OperatorKind::SelfAdjoint],
            OperatorKind::Effect => &[OperatorKind::Positive],
            OperatorKind::Projection => &[OperatorKind::Effect],
            OperatorKind::Density => &[OperatorKind::Positive],
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        Ok(match norm.as_str() {
            "bounded" | "b" => OperatorKind::Bounded,
            "selfadjoint" | "sa" | "hermitian" => OperatorKind::SelfAdjoint,
            "positive" | "pos" => OperatorKind::Positive,
            "effect" | "ef" => OperatorKind::Effect,
            "projection" | "pr" => OperatorKind::Projection,
            "density" | "dm" => OperatorKind::Density,
            _ => return Err(Error::Parse(format!("unknown operator kind '{s}'"))),
        })
    }
}

/// Result of [`classify`]: one flag per family plus the spectrum used.
#[derive(Debug, Clone, PartialEq)]
pub struct KindReport {
    pub bounded: bool,
    pub self_adjoint: bool,
    pub positive: bool,
    pub effect: bool,
    pub projection: bool,
    pub density: bool,
    /// Descending eigenvalues; empty when the input is not self-adjoint.
    pub eigenvalues: Vec<f64>,
}

impl KindReport {
    pub fn contains(&self, kind: OperatorKind) -> bool {
        match kind {
            OperatorKind::Bounded => self.bounded,
            OperatorKind::SelfAdjoint => self.self_adjoint,
            OperatorKind::Positive => self.positive,
            OperatorKind::Effect => self.effect,
            OperatorKind::Projection => self.projection,
            OperatorKind::Density => self.density,
        }
    }

    pub fn kinds(&self) -> Vec<OperatorKind> {
        OperatorKind::ALL
            .into_iter()
            .filter(|&k| self.contains(k))
            .collect()
    }

    /// Every member kind's parents are also members.
    pub fn is_consistent(&self) -> bool {
        OperatorKind::ALL
            .into_iter()
            .filter(|&k| self.contains(k))
            .all(|k| k.parents().iter().all(|&p| self.contains(p)))
    }
}

#[derive(Serialize, Deserialize)]
struct KindReportJson {
    kinds: Vec<OperatorKind>,
    eigenvalues: Vec<f64>,
}

impl Serialize for KindReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KindReportJson {
            kinds: self.kinds(),
            eigenvalues: self.eigenvalues.clone(),
        }
        .serialize(s)
    }
}

/// Decides membership in each family.
///
/// Effects are detected by the spectral criterion (all eigenvalues in
/// `[0, 1]`); [`is_effect_by_loewner`] is the two-sided order test it must
/// agree with.
pub fn classify(a: &ComplexMatrix, tol: f64) -> KindReport {
    let stol = scaled_tol(tol, a.max_norm());
    let mut report = KindReport {
        bounded: true,
        self_adjoint: false,
        positive: false,
        effect: false,
        projection: false,
        density: false,
        eigenvalues: Vec::new(),
    };
    if a.hermitian_residual() > stol {
        return report;
    }
    report.self_adjoint = true;
    let Ok(eig) = hermitian_eig(a, tol) else {
        return report;
    };
    let (max, min) = (eig.max_eigenvalue(), eig.min_eigenvalue());
    report.positive = min >= -stol;
    report.effect = report.positive && max <= 1.0 + tol;
    report.density = report.positive && (a.trace() - 1.0).norm() <= tol;
    if report.effect {
        let sq = a * a;
        report.projection = sq.max_diff(a).expect("same dim") <= stol;
    }
    report.eigenvalues = eig.eigenvalues;
    report
}

/// Spectral split `A = A_p − A_n` into positive parts with disjoint support.
pub fn pos_neg_split(a: &ComplexMatrix, tol: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let eig = hermitian_eig(a, tol)?;
    let pos = eig.spectral_map(|l| if l >= 0.0 { l } else { 0.0 });
    let neg = eig.spectral_map(|l| if l < 0.0 { -l } else { 0.0 });
    Ok((pos, neg))
}

/// Cartesian decomposition `A = A_re + i·A_im` with both parts self-adjoint.
pub fn sa_components(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let adag = a.dagger();
    let re = (a + &adag).scale_real(0.5);
    // ½(−iA + iA†)
    let im = (&adag - a).scale(I * 0.5);
    (re, im)
}

/// Löwner order: `A ≤ B` iff `B − A` is positive.
pub fn loewner_leq(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<bool> {
    a.check_dim(b)?;
    for m in [a, b] {
        let residual = m.hermitian_residual();
        if residual > scaled_tol(tol, m.max_norm()) {
            return Err(Error::NotHermitian { residual });
        }
    }
    let diff = b - a;
    let eig = hermitian_eig(&diff.hermitian_part(), tol)?;
    Ok(eig.min_eigenvalue() >= -scaled_tol(tol, diff.max_norm()))
}

/// `0 ≤ A ≤ I` by two Löwner comparisons.
pub fn is_effect_by_loewner(a: &ComplexMatrix, tol: f64) -> Result<bool> {
    let n = a.dim();
    Ok(loewner_leq(&ComplexMatrix::zeros(n), a, tol)?
        && loewner_leq(a, &ComplexMatrix::identity(n), tol)?)
}
