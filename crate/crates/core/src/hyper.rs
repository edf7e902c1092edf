//! Classical hypergeometric parameter data `(α_1..α_n; β_1..β_m)` and the elementary invariants
//! that depend only on it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::ore::OrePoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HypergeometricParams {
    pub alpha: Vec<Rat>,
    pub beta: Vec<Rat>,
}

impl HypergeometricParams {
    pub fn new(alpha: Vec<Rat>, beta: Vec<Rat>) -> Self {
        HypergeometricParams { alpha, beta }
    }

    /// Type `(n, m)`.
    pub fn type_pair(&self) -> (usize, usize) {
        (self.alpha.len(), self.beta.len())
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn m(&self) -> usize {
        self.beta.len()
    }

    pub fn is_punctual(&self) -> bool {
        self.alpha.is_empty() && self.beta.is_empty()
    }

    /// `γ = −Σ α_i + Σ β_j`
    pub fn gamma(&self) -> Rat {
        let sa: Rat = self.alpha.iter().sum();
        let sb: Rat = self.beta.iter().sum();
        sb - sa
    }

    fn require_nonpunctual(&self, what: &'static str) -> Result<()> {
        if self.is_punctual() {
            Err(Error::EmptyType(what))
        } else {
            Ok(())
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<Rat>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            if tok.trim().is_empty() {
                Err(Error::Syntax(format!("empty entry in list {s:?}")))
            } else {
                Ok(tok.parse::<Rat>()?)
            }
        })
        .collect()
}

impl FromStr for HypergeometricParams {
    type Err = Error;

    /// `"a1,a2,…;b1,b2,…"`; the semicolon is mandatory, either side may be empty.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(';');
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Syntax(format!(
                    "expected exactly one ';' separating alpha and beta in {s:?}"
                )))
            }
        };
        Ok(HypergeometricParams::new(parse_list(a)?, parse_list(b)?))
    }
}

impl fmt::Display for HypergeometricParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rat]| v.iter().map(Rat::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", join(&self.alpha), join(&self.beta))
    }
}

/// `∏(θ − α_i) − t·∏(θ − β_j)`; the punctual type gives `1 − t`.
pub fn hypergeometric_operator(p: &HypergeometricParams) -> OrePoly {
    let prod = |ps: &[Rat]| {
        ps.iter().fold(OrePoly::one(), |acc, a| {
            &acc * &(&OrePoly::theta() - &OrePoly::constant(a.clone()))
        })
    };
    &prod(&p.alpha) - &(&OrePoly::t() * &prod(&p.beta))
}

/// First pair `(i, j)` (zero-based) with `α_i − β_j ∈ ℤ`.
pub fn integral_difference(p: &HypergeometricParams) -> Option<(usize, usize, Rat)> {
    for (i, a) in p.alpha.iter().enumerate() {
        for (j, b) in p.beta.iter().enumerate() {
            let d = a - b;
            if d.is_integer() {
                return Some((i, j, d));
            }
        }
    }
    None
}

pub fn is_irreducible(p: &HypergeometricParams) -> Result<bool> {
    p.require_nonpunctual("irreducibility")?;
    Ok(integral_difference(p).is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MarkedPoint {
    Zero,
    One,
    Infinity,
}

impl fmt::Display for MarkedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MarkedPoint::Zero => "0",
            MarkedPoint::One => "1",
            MarkedPoint::Infinity => "∞",
        })
    }
}

/// Slope data is present exactly when `n ≠ m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityProfile {
    pub type_pair: (usize, usize),
    pub regular_points: BTreeSet<MarkedPoint>,
    pub irregular_point: Option<MarkedPoint>,
    pub slope: Option<Rat>,
    pub slope_multiplicity: u32,
    pub irregularity: u32,
    pub euler_characteristic: i32,
}

pub fn singularity_profile(p: &HypergeometricParams) -> Result<SingularityProfile> {
    p.require_nonpunctual("singularity profile")?;
    let (n, m) = p.type_pair();
    let diff = n.abs_diff(m);
    let (regular, irregular) = match n.cmp(&m) {
        std::cmp::Ordering::Equal => (
            vec![MarkedPoint::Zero, MarkedPoint::One, MarkedPoint::Infinity],
            None,
        ),
        std::cmp::Ordering::Greater => (vec![MarkedPoint::Zero], Some(MarkedPoint::Infinity)),
        std::cmp::Ordering::Less => (vec![MarkedPoint::Infinity], Some(MarkedPoint::Zero)),
    };
    Ok(SingularityProfile {
        type_pair: (n, m),
        regular_points: regular.into_iter().collect(),
        irregular_point: irregular,
        slope: irregular.map(|_| Rat::new(1, diff as i64)),
        slope_multiplicity: if irregular.is_some() { diff as u32 } else { 0 },
        irregularity: u32::from(irregular.is_some()),
        euler_characteristic: -1,
    })
}

/// Shifts every parameter by `eta`: the parameters of `H ⊗ K_eta`.
pub fn kummer_twist(p: &HypergeometricParams, eta: &Rat) -> HypergeometricParams {
    HypergeometricParams {
        alpha: p.alpha.iter().map(|a| a + eta).collect(),
        beta: p.beta.iter().map(|b| b + eta).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedParams {
    pub params: HypergeometricParams,
    /// Integer subtracted from each original α, by original position.
    pub alpha_shifts: Vec<BigInt>,
    pub beta_shifts: Vec<BigInt>,
    /// `alpha_order[i]` is the original position of the i-th output α.
    pub alpha_order: Vec<usize>,
    pub beta_order: Vec<usize>,
}

fn normalize_list(v: &[Rat]) -> (Vec<Rat>, Vec<BigInt>, Vec<usize>) {
    let shifts: Vec<BigInt> = v.iter().map(Rat::floor).collect();
    let reduced: Vec<Rat> = v.iter().map(Rat::fract).collect();
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&i, &j| reduced[i].cmp(&reduced[j]));
    let sorted = order.iter().map(|&i| reduced[i].clone()).collect();
    (sorted, shifts, order)
}

/// Reduces each parameter into `[0, 1)` and sorts each list ascending (stable).
pub fn normalize_params(p: &HypergeometricParams) -> NormalizedParams {
    let (alpha, alpha_shifts, alpha_order) = normalize_list(&p.alpha);
    let (beta, beta_shifts, beta_order) = normalize_list(&p.beta);
    NormalizedParams {
        params: HypergeometricParams { alpha, beta },
        alpha_shifts,
        beta_shifts,
        alpha_order,
        beta_order,
    }
}

/// The generators `(P, H)` of the Rees module `Ĥ(α; β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesPair {
    /// `δz + (n − m)·z·θ + γ·z`
    pub p: OrePoly,
    /// `∏ z(θ − α_i) − t·∏ z(θ − β_j)`
    pub h: OrePoly,
}

pub fn rees_pair(p: &HypergeometricParams) -> Result<ReesPair> {
    p.require_nonpunctual("Rees module")?;
    let (n, m) = p.type_pair();
    let zt = &OrePoly::z() * &OrePoly::theta();
    let p_gen = &(&OrePoly::dz() + &zt.scale(&(Rat::from(n) - Rat::from(m))))
        + &OrePoly::z().scale(&p.gamma());
    let prod = |ps: &[Rat]| {
        ps.iter().fold(OrePoly::one(), |acc, a| {
            &acc * &(&OrePoly::z() * &(&OrePoly::theta() - &OrePoly::constant(a.clone())))
        })
    };
    let h = &prod(&p.alpha) - &(&OrePoly::t() * &prod(&p.beta));
    Ok(ReesPair { p: p_gen, h })
}
