use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::{Laurent, Rat};

/// `z^z τ^tau t^t θ^theta δτ^dtau δz^dz` in normal order, with θ = t∂t, δτ = zτ∂τ, δz = z²∂z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub z: u32,
    pub tau: i32,
    pub t: i32,
    pub theta: u32,
    pub dtau: u32,
    pub dz: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        z: 0,
        tau: 0,
        t: 0,
        theta: 0,
        dtau: 0,
        dz: 0,
    };

    pub fn is_coefficient(&self) -> bool {
        self.theta == 0 && self.dtau == 0 && self.dz == 0
    }

    fn key(&self) -> (u32, u32, u32, u32, i32, i32) {
        (self.dtau, self.dz, self.theta, self.z, self.tau, self.t)
    }
}

/// Elimination order: δτ-degree, then δz-degree, then θ-degree, then z, τ, t.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the Rees-type operator algebra over Q generated by z, τ^±, t^±, θ, δτ, δz with
///
/// * θ·t = t·(θ + 1)
/// * δz·z = z·δz + z²
/// * δτ·τ = τ·δτ + z·τ
/// * δz·δτ = δτ·δz + z·δτ
///
/// and every other pair of generators commuting.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct OrePoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl OrePoly {
    pub fn zero() -> Self {
        OrePoly::default()
    }

    pub fn one() -> Self {
        OrePoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        OrePoly::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        OrePoly { terms }
    }

    pub fn z() -> Self {
        OrePoly::z_pow(1)
    }

    pub fn z_pow(k: u32) -> Self {
        OrePoly::monomial(Monomial { z: k, ..Monomial::ONE }, Rat::one())
    }

    pub fn tau() -> Self {
        OrePoly::tau_pow(1)
    }

    pub fn tau_pow(k: i32) -> Self {
        OrePoly::monomial(Monomial { tau: k, ..Monomial::ONE }, Rat::one())
    }

    pub fn t() -> Self {
        OrePoly::t_pow(1)
    }

    pub fn t_pow(k: i32) -> Self {
        OrePoly::monomial(Monomial { t: k, ..Monomial::ONE }, Rat::one())
    }

    /// θ = t∂t
    pub fn theta() -> Self {
        OrePoly::monomial(Monomial { theta: 1, ..Monomial::ONE }, Rat::one())
    }

    /// δτ = zτ∂τ
    pub fn dtau() -> Self {
        OrePoly::monomial(Monomial { dtau: 1, ..Monomial::ONE }, Rat::one())
    }

    /// δz = z²∂z
    pub fn dz() -> Self {
        OrePoly::monomial(Monomial { dz: 1, ..Monomial::ONE }, Rat::one())
    }

    /// Embeds a commutative Laurent polynomial as a pure coefficient. Panics on negative z powers.
    pub fn from_laurent(p: &Laurent) -> Self {
        let mut out = OrePoly::zero();
        for (e, c) in p.terms() {
            let z = u32::try_from(e[0]).expect("negative z power has no operator counterpart");
            out.add_term(
                Monomial {
                    z,
                    tau: e[1],
                    t: e[2],
                    ..Monomial::ONE
                },
                c.clone(),
            );
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn theta_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.theta).max()
    }

    pub fn has_dz(&self) -> bool {
        self.terms.keys().any(|m| m.dz > 0)
    }

    pub fn has_dtau(&self) -> bool {
        self.terms.keys().any(|m| m.dtau > 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> OrePoly {
        if c.is_zero() {
            return OrePoly::zero();
        }
        OrePoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> OrePoly {
        (0..e).fold(OrePoly::one(), |acc, _| &acc * self)
    }

    /// Applies `f` to every monomial, keeping coefficients; result re-normalized by summation.
    pub(crate) fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> OrePoly {
        let mut out = OrePoly::zero();
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    fn left_theta(&self) -> OrePoly {
        let mut out = OrePoly::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial { theta: m.theta + 1, ..*m }, c.clone());
            if m.t != 0 {
                out.add_term(*m, c * &Rat::from(m.t));
            }
        }
        out
    }

    fn left_dtau(&self) -> OrePoly {
        let mut out = OrePoly::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial { dtau: m.dtau + 1, ..*m }, c.clone());
            if m.tau != 0 {
                out.add_term(Monomial { z: m.z + 1, ..*m }, c * &Rat::from(m.tau));
            }
        }
        out
    }

    fn left_dz(&self) -> OrePoly {
        let mut out = OrePoly::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial { dz: m.dz + 1, ..*m }, c.clone());
            let k = m.z as i64 + m.dtau as i64;
            if k != 0 {
                out.add_term(Monomial { z: m.z + 1, ..*m }, c * &Rat::from(k));
            }
        }
        out
    }

    /// `m · self` for a single monomial `m`, by pushing its generators through from the right.
    pub fn left_mul_monomial(&self, m: &Monomial, c: &Rat) -> OrePoly {
        let mut p = self.clone();
        for _ in 0..m.dz {
            p = p.left_dz();
        }
        for _ in 0..m.dtau {
            p = p.left_dtau();
        }
        for _ in 0..m.theta {
            p = p.left_theta();
        }
        let mut out = OrePoly::zero();
        for (pm, pc) in p.terms {
            out.add_term(
                Monomial {
                    z: pm.z + m.z,
                    tau: pm.tau + m.tau,
                    t: pm.t + m.t,
                    ..pm
                },
                pc * c,
            );
        }
        out
    }
}

impl Add for &OrePoly {
    type Output = OrePoly;
    fn add(self, rhs: &OrePoly) -> OrePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Add for OrePoly {
    type Output = OrePoly;
    fn add(mut self, rhs: OrePoly) -> OrePoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for &OrePoly {
    type Output = OrePoly;
    fn sub(self, rhs: &OrePoly) -> OrePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Sub for OrePoly {
    type Output = OrePoly;
    fn sub(self, rhs: OrePoly) -> OrePoly {
        &self - &rhs
    }
}

impl Neg for &OrePoly {
    type Output = OrePoly;
    fn neg(self) -> OrePoly {
        self.scale(&Rat::from(-1))
    }
}

impl Neg for OrePoly {
    type Output = OrePoly;
    fn neg(self) -> OrePoly {
        -&self
    }
}

impl Mul for &OrePoly {
    type Output = OrePoly;
    fn mul(self, rhs: &OrePoly) -> OrePoly {
        let mut out = OrePoly::zero();
        for (m, c) in &self.terms {
            out = out + rhs.left_mul_monomial(m, c);
        }
        out
    }
}

impl Mul for OrePoly {
    type Output = OrePoly;
    fn mul(self, rhs: OrePoly) -> OrePoly {
        &self * &rhs
    }
}

/// Multiplies out `lhs · rhs`.
pub fn op_mul(lhs: &OrePoly, rhs: &OrePoly) -> OrePoly {
    lhs * rhs
}

fn power(name: &str, e: i64, wrap: bool) -> Option<String> {
    let base = if wrap { format!("({name})") } else { name.to_string() };
    match e {
        0 => None,
        1 => Some(base),
        _ => Some(format!("{base}^{e}")),
    }
}

impl Monomial {
    pub(crate) fn factors(&self) -> Vec<String> {
        [
            power("z", self.z as i64, false),
            power("τ", self.tau as i64, false),
            power("t", self.t as i64, false),
            power("t∂t", self.theta as i64, true),
            power("zτ∂τ", self.dtau as i64, true),
            power("z²∂z", self.dz as i64, true),
        ]
        .into_iter()
        .flatten()
        .collect()
    }
}

impl fmt::Display for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            crate::exact::write_signed_term(f, c, &m.factors(), i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn theta_past_t() {
        let lhs = &OrePoly::theta() * &OrePoly::t();
        let rhs = &(&OrePoly::t() * &OrePoly::theta()) + &OrePoly::t();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dz_past_z() {
        let lhs = &OrePoly::dz() * &OrePoly::z();
        let rhs = &(&OrePoly::z() * &OrePoly::dz()) + &OrePoly::z_pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_past_t_inverse() {
        let lhs = &OrePoly::theta() * &OrePoly::t_pow(-1);
        let tinv = OrePoly::t_pow(-1);
        let rhs = &(&tinv * &OrePoly::theta()) - &tinv;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dtau_past_tau_and_dz_past_dtau() {
        let lhs = &OrePoly::dtau() * &OrePoly::tau();
        let rhs = &(&OrePoly::tau() * &OrePoly::dtau()) + &(&OrePoly::z() * &OrePoly::tau());
        assert_eq!(lhs, rhs);
        let lhs = &OrePoly::dz() * &OrePoly::dtau();
        let rhs = &(&OrePoly::dtau() * &OrePoly::dz()) + &(&OrePoly::z() * &OrePoly::dtau());
        assert_eq!(lhs, rhs);
        // δτ·δz is already normal
        let m = &OrePoly::dtau() * &OrePoly::dz();
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn theta_commutes_with_z_tau_and_deltas() {
        for g in [OrePoly::z(), OrePoly::tau(), OrePoly::dz(), OrePoly::dtau()] {
            assert_eq!(&OrePoly::theta() * &g, &g * &OrePoly::theta());
        }
        assert_eq!(&OrePoly::dz() * &OrePoly::t(), &OrePoly::t() * &OrePoly::dz());
        assert_eq!(&OrePoly::dtau() * &OrePoly::z(), &OrePoly::z() * &OrePoly::dtau());
    }

    #[test]
    fn theta_power_past_t_power() {
        for k in -5..=5 {
            let lhs = &OrePoly::theta() * &OrePoly::t_pow(k);
            let rhs = &OrePoly::t_pow(k) * &(&OrePoly::theta() + &OrePoly::constant(Rat::from(k)));
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn display_uses_operator_names() {
        let p = &(&OrePoly::z_pow(2) * &OrePoly::theta().pow(2)) - &OrePoly::t().scale(&q(1, 2));
        assert_eq!(p.to_string(), "z^2*(t∂t)^2 - 1/2*t");
        let p = &OrePoly::dz() + &OrePoly::dtau();
        assert_eq!(p.to_string(), "(zτ∂τ) + (z²∂z)");
        assert_eq!(OrePoly::zero().to_string(), "0");
        assert_eq!(OrePoly::constant(q(-3, 4)).to_string(), "-3/4");
    }
}
