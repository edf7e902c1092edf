//! Normal forms modulo the left ideal `(P, ^τR, ^τH)` of the rescaled hypergeometric module.

use crate::error::{Error, Result};
use crate::exact::Rat;

use super::{Monomial, OrePoly};

/// Generators of the left ideal, with `^τH` stored multiplied through by `τ^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGenerators {
    /// `δz + n·z·θ + γ·z`
    pub p_gen: OrePoly,
    /// `δz + δτ`
    pub tau_r_gen: OrePoly,
    /// `∏_{i=1}^n z(θ − α_i) − τ^n·t`
    pub tau_h_gen_cleared: OrePoly,
    /// Power of τ cleared from `^τH`; equals the rank `n`.
    pub tau_h_cleared_power: u32,
}

impl IdealGenerators {
    pub fn new(alpha: &[Rat], gamma: &Rat) -> Self {
        let n = alpha.len() as u32;
        let p_gen = &(&OrePoly::dz() + &(&OrePoly::z() * &OrePoly::theta()).scale(&Rat::from(n)))
            + &OrePoly::z().scale(gamma);
        let tau_r_gen = &OrePoly::dz() + &OrePoly::dtau();
        let mut prod = OrePoly::one();
        for a in alpha {
            let factor = &OrePoly::z() * &(&OrePoly::theta() - &OrePoly::constant(a.clone()));
            prod = &prod * &factor;
        }
        let tau_h_gen_cleared = &prod - &(&OrePoly::tau_pow(n as i32) * &OrePoly::t());
        IdealGenerators {
            p_gen,
            tau_r_gen,
            tau_h_gen_cleared,
            tau_h_cleared_power: n,
        }
    }

    pub fn rank(&self) -> u32 {
        self.tau_h_cleared_power
    }

    /// `^τH` with its τ-denominators restored.
    pub fn tau_h_gen(&self) -> OrePoly {
        &OrePoly::tau_pow(-(self.tau_h_cleared_power as i32)) * &self.tau_h_gen_cleared
    }

    pub fn as_list(&self) -> [&OrePoly; 3] {
        [&self.p_gen, &self.tau_r_gen, &self.tau_h_gen_cleared]
    }
}

/// Order in which rewrite rules are tried; both are terminating and should agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReductionOrder {
    /// Largest term first; δz via P, then δτ via ^τR, then θ-degree via ^τH.
    #[default]
    Triangular,
    /// Largest term first, but prefer ^τH whenever it applies, then ^τR even in the
    /// presence of δz, and P last; ties among coefficients broken smallest-first.
    Eager,
}

#[derive(Clone, Copy)]
enum Rule {
    P,
    TauR,
    TauH,
}

fn cofactor(m: &Monomial, rule: Rule, n: u32) -> Option<Monomial> {
    match rule {
        Rule::P => (m.dz > 0).then(|| Monomial { dz: m.dz - 1, ..*m }),
        Rule::TauR => (m.dtau > 0).then(|| Monomial {
            dtau: m.dtau - 1,
            ..*m
        }),
        Rule::TauH => (m.theta >= n && m.z >= n).then(|| Monomial {
            z: m.z - n,
            theta: m.theta - n,
            ..*m
        }),
    }
}

fn pick(op: &OrePoly, order: ReductionOrder) -> Option<(Monomial, Rat)> {
    match order {
        ReductionOrder::Triangular => op.leading().map(|(m, c)| (*m, c.clone())),
        ReductionOrder::Eager => op
            .terms()
            .max_by(|(a, _), (b, _)| {
                (a.dtau, a.dz, a.theta)
                    .cmp(&(b.dtau, b.dz, b.theta))
                    .then_with(|| (b.z, b.tau, b.t).cmp(&(a.z, a.tau, a.t)))
            })
            .map(|(m, c)| (*m, c.clone())),
    }
}

fn rules_for(m: &Monomial, order: ReductionOrder) -> &'static [Rule] {
    match order {
        ReductionOrder::Triangular => {
            if m.dz > 0 {
                &[Rule::P]
            } else if m.dtau > 0 {
                &[Rule::TauR]
            } else {
                &[Rule::TauH]
            }
        }
        ReductionOrder::Eager => &[Rule::TauH, Rule::TauR, Rule::P],
    }
}

/// Reduces `op` modulo the left ideal generated by `gens`, returning the remainder of
/// θ-degree `< n` free of δz and δτ.
///
/// Every step subtracts a left multiple `c·M·g` of a generator whose expansion contains the
/// selected term; terms of θ-degree `>= n` carrying fewer than `n` powers of z cannot be
/// rewritten and are reported as [`Error::NotInLattice`].
pub fn normal_form(op: &OrePoly, gens: &IdealGenerators) -> Result<OrePoly> {
    normal_form_with(op, gens, ReductionOrder::Triangular)
}

pub fn normal_form_with(
    op: &OrePoly,
    gens: &IdealGenerators,
    order: ReductionOrder,
) -> Result<OrePoly> {
    let n = gens.rank();
    if n == 0 {
        return Err(Error::Invalid("normal form needs rank n >= 1".into()));
    }
    let mut work = op.clone();
    let mut remainder = OrePoly::zero();
    while let Some((m, c)) = pick(&work, order) {
        let step = rules_for(&m, order).iter().find_map(|&rule| {
            cofactor(&m, rule, n).map(|cof| {
                let gen = match rule {
                    Rule::P => &gens.p_gen,
                    Rule::TauR => &gens.tau_r_gen,
                    Rule::TauH => &gens.tau_h_gen_cleared,
                };
                gen.left_mul_monomial(&cof, &Rat::one())
            })
        });
        match step {
            Some(multiple) => {
                let lead = multiple.coeff(&m);
                debug_assert!(!lead.is_zero());
                work = &work - &multiple.scale(&(&c / &lead));
            }
            None if m.theta < n && m.dz == 0 && m.dtau == 0 => {
                work.add_term(m, -c.clone());
                remainder.add_term(m, c);
            }
            None => {
                let term = OrePoly::monomial(m, c);
                return Err(Error::NotInLattice(format!(
                    "term {term} has θ-degree {} but only z^{}; multiply by a higher power of z",
                    m.theta, m.z
                )));
            }
        }
    }
    Ok(remainder)
}
