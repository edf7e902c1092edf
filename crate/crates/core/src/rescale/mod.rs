//! The rescaled module `^τĤ` for type `(n, 0)`: its free basis `Q_k`, the closed-form
//! connection matrices, their check against the defining ideal, flatness, and the
//! filtration along `τ = 0` with its graded pieces.

mod connection;
mod curvature;
mod vfilt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Laurent, LaurentMatrix, Rat};
use crate::hyper::HypergeometricParams;
use crate::ore::{IdealGenerators, OrePoly};

pub use connection::{verify_connection, verify_connection_with, ColumnFailure, ConnectionCheck, Generator};
pub use curvature::{curvature, curvature_check, ConnectionForm, Curvature};
pub use vfilt::{graded_piece, jump_values, v_step, GradedPiece, VFiltrationStep};

/// `α_1 <= … <= α_n` in `[0, 1)` with `γ = −Σ α_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrregularContext {
    alpha: Vec<Rat>,
    gamma: Rat,
}

impl IrregularContext {
    pub fn new(alpha: Vec<Rat>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::Invalid("the rescaled module needs n >= 1".into()));
        }
        for (i, a) in alpha.iter().enumerate() {
            if a.is_negative() || *a >= Rat::one() {
                return Err(Error::OutOfRange {
                    name: format!("alpha_{}", i + 1),
                    value: a.clone(),
                });
            }
        }
        if alpha.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotSorted("alpha"));
        }
        let gamma = -alpha.iter().sum::<Rat>();
        Ok(IrregularContext { alpha, gamma })
    }

    pub fn from_params(p: &HypergeometricParams) -> Result<Self> {
        if !p.beta.is_empty() {
            return Err(Error::TypeMismatch(format!(
                "the irregular calculators need type (n, 0), got ({}, {})",
                p.n(),
                p.m()
            )));
        }
        IrregularContext::new(p.alpha.clone())
    }

    pub fn alpha(&self) -> &[Rat] {
        &self.alpha
    }

    pub fn gamma(&self) -> &Rat {
        &self.gamma
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn params(&self) -> HypergeometricParams {
        HypergeometricParams::new(self.alpha.clone(), Vec::new())
    }
}

/// `(P, ^τR, ^τH)` for the context.
pub fn rescaled_generators(ctx: &IrregularContext) -> IdealGenerators {
    IdealGenerators::new(&ctx.alpha, &ctx.gamma)
}

/// An operator stored multiplied by `τ^tau_power`; the represented element is `τ^{-tau_power}·op`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClearedOp {
    pub op: OrePoly,
    pub tau_power: u32,
}

impl ClearedOp {
    pub fn restore(&self) -> OrePoly {
        &OrePoly::tau_pow(-(self.tau_power as i32)) * &self.op
    }
}

/// `Q_k = (−n)^k ∏_{j<=k} (z/τ)(θ − α_j)`, stored as `(−n)^k ∏ z(θ − α_j)` with τ-power k.
pub fn q_basis(ctx: &IrregularContext) -> Vec<ClearedOp> {
    let n = ctx.n();
    let minus_n = Rat::from(-(n as i64));
    let mut out = Vec::with_capacity(n);
    let mut acc = OrePoly::one();
    for k in 0..n {
        if k > 0 {
            let factor = &OrePoly::z() * &(&OrePoly::theta() - &OrePoly::constant(ctx.alpha[k - 1].clone()));
            acc = (&acc * &factor).scale(&minus_n);
        }
        out.push(ClearedOp {
            op: acc.clone(),
            tau_power: k as u32,
        });
    }
    out
}

/// `∇Q = Q·((τA_0 + zA_∞) dz/z² + (−τA_0 + zA'_∞) dt/(nzt) − (τA_0 + zA_∞) dτ/(zτ))`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionMatrices {
    /// Ones on the subdiagonal and `(−n)^n·t` in the top-right corner.
    pub a0: LaurentMatrix,
    /// `diag(nα_1, …, nα_n)`
    pub ainf_prime: Vec<Vec<Rat>>,
    /// `diag(0, …, n−1) − γ·I − A'_∞`
    pub ainf: Vec<Vec<Rat>>,
}

impl ConnectionMatrices {
    pub fn n(&self) -> usize {
        self.a0.len()
    }
}

pub fn connection_matrices(ctx: &IrregularContext) -> ConnectionMatrices {
    let n = ctx.n();
    let nr = Rat::from(n);
    let mut a0 = vec![vec![Laurent::zero(); n]; n];
    for k in 0..n - 1 {
        a0[k + 1][k] = Laurent::constant(Rat::one());
    }
    let corner = Rat::from(-(n as i64)).pow(n as i64);
    a0[0][n - 1] = &a0[0][n - 1] + &Laurent::term(corner, [0, 0, 1]);
    let mut ainf_prime = vec![vec![Rat::zero(); n]; n];
    let mut ainf = vec![vec![Rat::zero(); n]; n];
    for k in 0..n {
        ainf_prime[k][k] = &nr * &ctx.alpha[k];
        ainf[k][k] = &(&Rat::from(k) - &ctx.gamma) - &ainf_prime[k][k];
    }
    ConnectionMatrices {
        a0,
        ainf_prime,
        ainf,
    }
}

pub(crate) fn const_matrix(m: &[Vec<Rat>]) -> LaurentMatrix {
    m.iter()
        .map(|r| r.iter().map(|c| Laurent::constant(c.clone())).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(a: &[(i64, i64)]) -> IrregularContext {
        IrregularContext::new(a.iter().map(|&(p, q)| Rat::new(p, q)).collect()).unwrap()
    }

    #[test]
    fn context_validation() {
        assert_eq!(IrregularContext::new(vec![Rat::one()]).unwrap_err().kind(), "range");
        assert_eq!(
            IrregularContext::new(vec![Rat::new(1, 2), Rat::zero()]).unwrap_err().kind(),
            "ordering"
        );
        assert_eq!(ctx(&[(0, 1), (1, 2)]).gamma(), &Rat::new(-1, 2));
    }

    #[test]
    fn generators() {
        let g = rescaled_generators(&ctx(&[(0, 1)]));
        let zt = &OrePoly::z() * &OrePoly::theta();
        assert_eq!(g.p_gen, &OrePoly::dz() + &zt);
        assert_eq!(g.tau_r_gen, &OrePoly::dz() + &OrePoly::dtau());
        assert_eq!(g.tau_h_gen_cleared, &zt - &(&OrePoly::tau() * &OrePoly::t()));
        let g = rescaled_generators(&ctx(&[(0, 1), (1, 2)]));
        let expected = &(&OrePoly::dz() + &zt.scale(&Rat::from(2))) - &OrePoly::z().scale(&Rat::new(1, 2));
        assert_eq!(g.p_gen, expected);
    }

    #[test]
    fn basis_examples() {
        let q = q_basis(&ctx(&[(0, 1), (1, 2)]));
        assert_eq!(q[0].op, OrePoly::one());
        assert_eq!(q[1].op, (&OrePoly::z() * &OrePoly::theta()).scale(&Rat::from(-2)));
        assert_eq!(q[1].tau_power, 1);
        let q = q_basis(&ctx(&[(0, 1), (0, 1), (0, 1)]));
        let z2t2 = &OrePoly::z_pow(2) * &OrePoly::theta().pow(2);
        assert_eq!(q[2].op, z2t2.scale(&Rat::from(9)));
        assert_eq!(q[2].tau_power, 2);
    }

    #[test]
    fn matrix_examples() {
        let m = connection_matrices(&ctx(&[(0, 1), (0, 1)]));
        assert_eq!(m.a0[0][1], Laurent::term(Rat::from(4), [0, 0, 1]));
        assert_eq!(m.a0[1][0], Laurent::constant(Rat::one()));
        assert!(m.a0[0][0].is_zero() && m.a0[1][1].is_zero());
        assert_eq!(m.ainf, vec![vec![Rat::zero(), Rat::zero()], vec![Rat::zero(), Rat::one()]]);
        let m = connection_matrices(&ctx(&[(0, 1)]));
        assert_eq!(m.a0[0][0], Laurent::term(Rat::from(-1), [0, 0, 1]));
        assert_eq!(m.ainf, vec![vec![Rat::zero()]]);
        let m = connection_matrices(&ctx(&[(0, 1), (1, 2)]));
        assert_eq!(m.ainf_prime[1][1], Rat::one());
        let half = Rat::new(1, 2);
        assert_eq!(m.ainf, vec![vec![half.clone(), Rat::zero()], vec![Rat::zero(), half]]);
    }
}
