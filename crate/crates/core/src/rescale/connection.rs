//! Oracle check: the closed-form connection matrices against normal forms in the defining ideal.

use std::fmt;

use crate::error::Result;
use crate::exact::laurent::{lmat_add, lmat_map, lmat_sub};
use crate::exact::{Laurent, LaurentMatrix, Rat, Var};
use crate::ore::{normal_form, OrePoly};

use super::{connection_matrices, const_matrix, q_basis, rescaled_generators, ConnectionMatrices, IrregularContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `n·z·θ`, paired with `−τA_0 + zA'_∞`
    NzTheta,
    /// `δz`, paired with `τA_0 + zA_∞`
    DeltaZ,
    /// `δτ`, paired with `−(τA_0 + zA_∞)`
    DeltaTau,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::NzTheta => "n*z*(t∂t)",
            Generator::DeltaZ => "(z²∂z)",
            Generator::DeltaTau => "(zτ∂τ)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnFailure {
    pub generator: Generator,
    pub column: usize,
    /// Both sides multiplied by `τ^n`.
    pub reduced: OrePoly,
    pub predicted: OrePoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionCheck {
    pub columns_checked: usize,
    /// Power of τ both sides were multiplied by before reduction.
    pub tau_clearing: u32,
    pub failure: Option<ColumnFailure>,
}

impl ConnectionCheck {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

fn coefficient_matrices(m: &ConnectionMatrices) -> [(Generator, LaurentMatrix); 3] {
    let tau = Laurent::var(Var::Tau);
    let z = Laurent::var(Var::Z);
    let tau_a0 = lmat_map(&m.a0, |x| &tau * x);
    let z_ainf = lmat_map(&const_matrix(&m.ainf), |x| &z * x);
    let z_ainf_p = lmat_map(&const_matrix(&m.ainf_prime), |x| &z * x);
    let res = lmat_add(&tau_a0, &z_ainf);
    [
        (Generator::NzTheta, lmat_sub(&z_ainf_p, &tau_a0)),
        (Generator::DeltaZ, res.clone()),
        (Generator::DeltaTau, lmat_map(&res, |x| -x)),
    ]
}

pub fn verify_connection(ctx: &IrregularContext) -> Result<ConnectionCheck> {
    verify_connection_with(ctx, &connection_matrices(ctx))
}

/// Compares, for every `k`, `τ^n·g·Q_k` reduced modulo the ideal with `τ^n·Σ_j M_jk Q_j`.
pub fn verify_connection_with(ctx: &IrregularContext, mats: &ConnectionMatrices) -> Result<ConnectionCheck> {
    let n = ctx.n();
    let gens = rescaled_generators(ctx);
    let basis = q_basis(ctx);
    let clear = OrePoly::tau_pow(n as i32);
    let lhs_op = |g: Generator| match g {
        Generator::NzTheta => (&OrePoly::z() * &OrePoly::theta()).scale(&Rat::from(n)),
        Generator::DeltaZ => OrePoly::dz(),
        Generator::DeltaTau => OrePoly::dtau(),
    };
    let mut checked = 0;
    for (g, coef) in coefficient_matrices(mats) {
        let op = lhs_op(g);
        for k in 0..n {
            let lhs = &clear * &(&op * &basis[k].restore());
            let reduced = normal_form(&lhs, &gens)?;
            let mut predicted = OrePoly::zero();
            for (j, qj) in basis.iter().enumerate() {
                let c = coef[j][k].shift([0, n as i32 - qj.tau_power as i32, 0]);
                predicted = &predicted + &(&OrePoly::from_laurent(&c) * &qj.op);
            }
            let predicted = normal_form(&predicted, &gens)?;
            checked += 1;
            if reduced != predicted {
                return Ok(ConnectionCheck {
                    columns_checked: checked,
                    tau_clearing: n as u32,
                    failure: Some(ColumnFailure {
                        generator: g,
                        column: k,
                        reduced,
                        predicted,
                    }),
                });
            }
        }
    }
    Ok(ConnectionCheck {
        columns_checked: checked,
        tau_clearing: n as u32,
        failure: None,
    })
}
