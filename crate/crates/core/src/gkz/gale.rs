use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{kernel_basis, IntMat, Rat};

/// Gale dual `B` (columns a ℤ-basis of `ker A`) and the parameter vector κ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaleData {
    pub b_matrix: IntMat,
    pub kappa: Vec<Rat>,
}

impl GaleData {
    pub fn with_kappa(mut self, kappa: Vec<Rat>) -> Self {
        self.kappa = kappa;
        self
    }
}

/// Parameters read off a single-column Gale dual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaleParams {
    pub alpha: Vec<Rat>,
    pub beta: Vec<Rat>,
    /// `∏ b_i^{b_i}`
    pub eta: Rat,
}

pub fn gale_dual(a: &IntMat) -> GaleData {
    let b = kernel_basis(a);
    let n = a.cols();
    GaleData {
        b_matrix: b,
        kappa: vec![Rat::zero(); n],
    }
}

fn small(b: &BigInt) -> Result<i64> {
    b.to_i64()
        .filter(|x| x.unsigned_abs() <= 1 << 20)
        .ok_or_else(|| Error::Size(format!("Gale entry {b} is too large to expand")))
}

/// `α = ((k − κ_j)/b_j : b_j > 0, 0 <= k < b_j)`, `β` likewise over `b_j < 0`, and `η`.
pub fn params_from_gale(g: &GaleData) -> Result<GaleParams> {
    let b = &g.b_matrix;
    if b.cols() != 1 {
        return Err(Error::Gale(format!(
            "B has {} columns; the parameter formulas need a single column",
            b.cols()
        )));
    }
    if g.kappa.len() != b.rows() {
        return Err(Error::Gale(format!(
            "κ has length {} but B has {} rows",
            g.kappa.len(),
            b.rows()
        )));
    }
    if b.rows() == 0 || b[(0, 0)] != BigInt::from(1) {
        let b1 = if b.rows() == 0 { "missing".to_string() } else { b[(0, 0)].to_string() };
        return Err(Error::Gale(format!("b_1 = {b1}, but b_1 = 1 is required")));
    }
    if !g.kappa[0].is_zero() {
        return Err(Error::Gale(format!("κ_1 = {} must vanish", g.kappa[0])));
    }
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut eta = Rat::one();
    for j in 0..b.rows() {
        let bj = &b[(j, 0)];
        if bj.is_zero() {
            continue;
        }
        let bv = small(bj)?;
        let bj_rat = Rat::from(bj.clone());
        let target = if bj.is_positive() { &mut alpha } else { &mut beta };
        for k in 0..bv.abs() {
            target.push(&(&Rat::from(k) - &g.kappa[j]) / &bj_rat);
        }
        eta = &eta * &bj_rat.pow(bv);
    }
    Ok(GaleParams { alpha, beta, eta })
}
