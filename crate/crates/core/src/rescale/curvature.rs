//! Flatness of `∇Q = Q·Ω` over `ℚ[z^±, τ^±, t^±]`.
//!
//! With `Ω = Ω_z dz + Ω_t dt + Ω_τ dτ` the curvature is `dΩ + Ω∧Ω`, whose coefficient on
//! `dx_i∧dx_j` is `∂_iΩ_j − ∂_jΩ_i + Ω_iΩ_j − Ω_jΩ_i`.

use crate::exact::laurent::{lmat_add, lmat_is_zero, lmat_map, lmat_mul, lmat_sub};
use crate::exact::{Laurent, LaurentMatrix, Rat, Var};

use super::{connection_matrices, const_matrix, ConnectionMatrices, IrregularContext};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionForm {
    pub omega_z: LaurentMatrix,
    pub omega_t: LaurentMatrix,
    pub omega_tau: LaurentMatrix,
}

impl ConnectionForm {
    pub fn from_matrices(m: &ConnectionMatrices) -> Self {
        let n = m.n();
        let tau = Laurent::var(Var::Tau);
        let z = Laurent::var(Var::Z);
        let tau_a0 = lmat_map(&m.a0, |x| &tau * x);
        let res = lmat_add(&tau_a0, &lmat_map(&const_matrix(&m.ainf), |x| &z * x));
        let dt_part = lmat_sub(&lmat_map(&const_matrix(&m.ainf_prime), |x| &z * x), &tau_a0);
        let inv_nzt = Laurent::term(Rat::from(n).recip(), [-1, 0, -1]);
        ConnectionForm {
            omega_z: lmat_map(&res, |x| x.shift([-2, 0, 0])),
            omega_t: lmat_map(&dt_part, |x| &inv_nzt * x),
            omega_tau: lmat_map(&res, |x| -&x.shift([-1, -1, 0])),
        }
    }

    /// The same form with the sign of the `dτ` coefficient reversed.
    pub fn flip_dtau(&self) -> Self {
        ConnectionForm {
            omega_tau: lmat_map(&self.omega_tau, |x| -x),
            ..self.clone()
        }
    }

    fn component(&self, v: Var) -> &LaurentMatrix {
        match v {
            Var::Z => &self.omega_z,
            Var::T => &self.omega_t,
            Var::Tau => &self.omega_tau,
        }
    }
}

/// Coefficients of `dz∧dt`, `dz∧dτ`, `dt∧dτ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curvature {
    pub dz_dt: LaurentMatrix,
    pub dz_dtau: LaurentMatrix,
    pub dt_dtau: LaurentMatrix,
}

impl Curvature {
    pub fn is_zero(&self) -> bool {
        lmat_is_zero(&self.dz_dt) && lmat_is_zero(&self.dz_dtau) && lmat_is_zero(&self.dt_dtau)
    }
}

fn pair(form: &ConnectionForm, i: Var, j: Var) -> LaurentMatrix {
    let (oi, oj) = (form.component(i), form.component(j));
    let d = lmat_sub(
        &lmat_map(oj, |x| x.derivative(i)),
        &lmat_map(oi, |x| x.derivative(j)),
    );
    let comm = lmat_sub(&lmat_mul(oi, oj), &lmat_mul(oj, oi));
    lmat_add(&d, &comm)
}

pub fn curvature(form: &ConnectionForm) -> Curvature {
    Curvature {
        dz_dt: pair(form, Var::Z, Var::T),
        dz_dtau: pair(form, Var::Z, Var::Tau),
        dt_dtau: pair(form, Var::T, Var::Tau),
    }
}

pub fn curvature_check(ctx: &IrregularContext) -> bool {
    curvature(&ConnectionForm::from_matrices(&connection_matrices(ctx))).is_zero()
}
