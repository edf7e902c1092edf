use crate::error::{Error, Result};
use crate::exact::Rat;

use super::{Monomial, OrePoly};

/// Algebra maps applied to an operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// τ := z. Needs an operator free of δτ, where τ is central.
    TauToZ,
    /// z := 1. Needs an operator free of δz and δτ.
    ZToOne,
    /// θ := θ + η. An automorphism for any scalar η.
    ThetaShift(Rat),
    /// t := c·t for a nonzero scalar c. An automorphism fixing θ.
    TScale(Rat),
}

fn binomial_row(e: u32) -> Vec<Rat> {
    let mut row = vec![Rat::one()];
    for k in 0..e {
        let next = &row[k as usize] * &Rat::new(e - k, k + 1);
        row.push(next);
    }
    row
}

fn apply_one(op: &OrePoly, sub: &Substitution) -> Result<OrePoly> {
    let mut out = OrePoly::zero();
    match sub {
        Substitution::TauToZ => {
            if op.has_dtau() {
                return Err(Error::NonCentral("τ does not commute with zτ∂τ".into()));
            }
            for (m, c) in op.terms() {
                let z = m.z as i64 + m.tau as i64;
                let z = u32::try_from(z).map_err(|_| {
                    Error::Unsupported(format!("τ := z leaves the negative power z^{z}"))
                })?;
                out.add_term(Monomial { z, tau: 0, ..*m }, c.clone());
            }
        }
        Substitution::ZToOne => {
            if op.has_dz() || op.has_dtau() {
                return Err(Error::NonCentral("z does not commute with z²∂z".into()));
            }
            for (m, c) in op.terms() {
                out.add_term(Monomial { z: 0, ..*m }, c.clone());
            }
        }
        Substitution::ThetaShift(eta) => {
            for (m, c) in op.terms() {
                let binom = binomial_row(m.theta);
                for (k, b) in binom.iter().enumerate() {
                    // (θ + η)^e = Σ C(e, k) θ^k η^(e − k)
                    let coef = c * b * eta.pow(m.theta as i64 - k as i64);
                    out.add_term(Monomial { theta: k as u32, ..*m }, coef);
                }
            }
        }
        Substitution::TScale(s) => {
            if s.is_zero() {
                return Err(Error::Invalid("t := 0·t is not invertible".into()));
            }
            for (m, c) in op.terms() {
                out.add_term(*m, c * &s.pow(m.t as i64));
            }
        }
    }
    Ok(out)
}

/// Applies the substitutions left to right.
pub fn substitute(op: &OrePoly, subs: &[Substitution]) -> Result<OrePoly> {
    subs.iter().try_fold(op.clone(), |acc, s| apply_one(&acc, s))
}

impl OrePoly {
    /// `z^{-k}·self`, when every term carries at least `z^k` and δz is absent.
    pub fn divide_by_z_power(&self, k: u32) -> Result<OrePoly> {
        if self.has_dz() {
            return Err(Error::NonCentral("cannot divide by z through z²∂z".into()));
        }
        if let Some((m, _)) = self.terms().find(|(m, _)| m.z < k) {
            return Err(Error::Invalid(format!(
                "term with z^{} is not divisible by z^{k}",
                m.z
            )));
        }
        Ok(self.map_monomials(|m| Monomial { z: m.z - k, ..*m }))
    }
}
