//! Serializable result records. Every exact number is a canonical `p/q` string.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{LaurentMatrix, Rat};
use crate::gkz::{
    check_assumptions, holonomic_rank, lattice_binomials, reduce_to_hyper, volume_report, AssumptionReport,
    GkzSystem, VolumeReport,
};
use crate::hodge::{HodgeSpectrum, IrregularFiltration};
use crate::hyper::{integral_difference, normalize_params, singularity_profile, HypergeometricParams, SingularityProfile};
use crate::rescale::{
    connection_matrices, curvature_check, graded_piece, v_step, verify_connection, IrregularContext,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

impl From<&Error> for ErrorReport {
    fn from(e: &Error) -> Self {
        ErrorReport {
            error: ErrorBody {
                kind: e.kind().to_string(),
                detail: e.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpEntry {
    pub value: Rat,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepEntry {
    pub level: Rat,
    pub basis: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeReport {
    pub rank: usize,
    pub normalization: String,
    pub jumps: Vec<JumpEntry>,
    pub filtration: Vec<StepEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qbar: Option<Vec<String>>,
}

impl HodgeReport {
    pub fn new(spectrum: &HodgeSpectrum, filtration: Option<&IrregularFiltration>) -> Self {
        HodgeReport {
            rank: spectrum.rank(),
            normalization: spectrum.normalization_note.as_str().to_string(),
            jumps: spectrum
                .jumps
                .iter()
                .map(|j| JumpEntry {
                    value: j.value.clone(),
                    multiplicity: j.multiplicity,
                })
                .collect(),
            filtration: filtration
                .map(|f| {
                    f.steps
                        .iter()
                        .map(|s| StepEntry {
                            level: s.level.clone(),
                            basis: s.basis_indices.clone(),
                        })
                        .collect()
                })
                .unwrap_or_default(),
            shift: filtration.map(|f| f.shift.clone()),
            qbar: filtration.map(|f| f.qbar.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralDifference {
    pub alpha_index: usize,
    pub beta_index: usize,
    pub difference: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub params: String,
    pub gamma: Rat,
    pub irreducible: bool,
    pub integral_difference: Option<IntegralDifference>,
    pub singularities: SingularityProfile,
    /// The parameters reduced into `[0, 1)` and sorted.
    pub normalized: String,
    pub alpha_shifts: Vec<String>,
    pub beta_shifts: Vec<String>,
}

pub fn invariants_report(p: &HypergeometricParams) -> Result<InvariantsReport> {
    let singularities = singularity_profile(p)?;
    let diff = integral_difference(p).map(|(i, j, d)| IntegralDifference {
        alpha_index: i + 1,
        beta_index: j + 1,
        difference: d,
    });
    let norm = normalize_params(p);
    Ok(InvariantsReport {
        params: p.to_string(),
        gamma: p.gamma(),
        irreducible: diff.is_none(),
        integral_difference: diff,
        singularities,
        normalized: norm.params.to_string(),
        alpha_shifts: norm.alpha_shifts.iter().map(ToString::to_string).collect(),
        beta_shifts: norm.beta_shifts.iter().map(ToString::to_string).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkzCheckReport {
    pub rows: usize,
    pub columns: usize,
    pub corank: usize,
    pub assumptions: AssumptionReport,
    pub assumptions_hold: bool,
    /// Present when the assumptions hold.
    pub holonomic_rank: Option<Rat>,
    pub volume: Option<VolumeReport>,
    /// Lattice-basis binomials as `[u_plus, u_minus]`.
    pub binomials: Vec<[Vec<u32>; 2]>,
    pub lattice_basis_approximation: bool,
}

pub fn gkz_check_report(sys: &GkzSystem) -> Result<GkzCheckReport> {
    let assumptions = check_assumptions(&sys.a_matrix)?;
    let hold = assumptions.passes();
    let binomials = lattice_binomials(sys)?
        .into_iter()
        .map(|b| [b.u_plus, b.u_minus])
        .collect();
    Ok(GkzCheckReport {
        rows: sys.a_matrix.rows(),
        columns: sys.a_matrix.cols(),
        corank: sys.corank(),
        holonomic_rank: if hold { Some(holonomic_rank(sys)?) } else { None },
        volume: volume_report(&sys.a_matrix).ok(),
        assumptions_hold: hold,
        assumptions,
        binomials,
        lattice_basis_approximation: sys.is_lattice_basis_approximation(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub params: String,
    pub p: String,
    pub h: String,
    pub t_sign: Rat,
}

pub fn reduction_report(sys: &GkzSystem) -> Result<ReductionReport> {
    let r = reduce_to_hyper(sys)?;
    Ok(ReductionReport {
        params: r.params.to_string(),
        p: r.p.to_string(),
        h: r.h.to_string(),
        t_sign: r.t_sign,
    })
}

fn laurent_strings(m: &LaurentMatrix) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnMismatch {
    pub generator: String,
    pub column: usize,
    pub reduced: String,
    pub predicted: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionReport {
    pub rank: usize,
    pub gamma: Rat,
    pub a0: Vec<Vec<String>>,
    pub ainf_prime: Vec<Vec<Rat>>,
    pub ainf: Vec<Vec<Rat>>,
    pub columns_checked: usize,
    pub tau_clearing: u32,
    pub ideal_agrees: bool,
    pub mismatch: Option<ColumnMismatch>,
    pub flat: bool,
}

pub fn connection_report(p: &HypergeometricParams) -> Result<ConnectionReport> {
    let ctx = IrregularContext::from_params(p)?;
    let m = connection_matrices(&ctx);
    let check = verify_connection(&ctx)?;
    Ok(ConnectionReport {
        rank: ctx.n(),
        gamma: ctx.gamma().clone(),
        a0: laurent_strings(&m.a0),
        ainf_prime: m.ainf_prime.clone(),
        ainf: m.ainf.clone(),
        columns_checked: check.columns_checked,
        tau_clearing: check.tau_clearing,
        ideal_agrees: check.ok(),
        mismatch: check.failure.map(|f| ColumnMismatch {
            generator: f.generator.to_string(),
            column: f.column,
            reduced: f.reduced.to_string(),
            predicted: f.predicted.to_string(),
        }),
        flat: curvature_check(&ctx),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VFiltrationReport {
    pub alpha: Rat,
    pub nu: Vec<String>,
    pub contributing_indices: Vec<usize>,
    pub nilpotent: Vec<Vec<Rat>>,
    pub jordan_blocks: Vec<usize>,
    pub nilpotency_index: usize,
}

pub fn vfiltration_report(p: &HypergeometricParams, alpha: &Rat) -> Result<VFiltrationReport> {
    let ctx = IrregularContext::from_params(p)?;
    let step = v_step(&ctx, alpha);
    let g = graded_piece(&ctx, alpha);
    Ok(VFiltrationReport {
        alpha: alpha.clone(),
        nu: step.nu.iter().map(ToString::to_string).collect(),
        jordan_blocks: g.jordan_blocks(),
        nilpotency_index: g.nilpotency_index(),
        contributing_indices: g.contributing_indices,
        nilpotent: g.nilpotent,
    })
}
