//! Multivariate operators in λ_1..λ_N, z, z²∂z and the commuting family z∂λ_i.
//!
//! Construction, left multiplication by λ-monomials and conversion to Euler-operator form
//! are supported; there is no division.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Rat;

/// `z^z · λ^lambda · δz^dz · ∏ (z∂λ_i)^dl[i]`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LambdaMonomial {
    pub z: u32,
    pub lambda: Vec<i32>,
    pub dz: u32,
    pub dl: Vec<u32>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct LambdaOp {
    nvars: usize,
    terms: BTreeMap<LambdaMonomial, Rat>,
}

impl LambdaOp {
    pub fn zero(nvars: usize) -> Self {
        LambdaOp {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn unit(&self) -> LambdaMonomial {
        LambdaMonomial {
            z: 0,
            lambda: vec![0; self.nvars],
            dz: 0,
            dl: vec![0; self.nvars],
        }
    }

    pub fn add_term(&mut self, m: LambdaMonomial, c: Rat) {
        assert_eq!(m.lambda.len(), self.nvars);
        assert_eq!(m.dl.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LambdaMonomial, &Rat)> {
        self.terms.iter()
    }

    /// `∏ (z∂λ_i)^{exps[i]}`
    pub fn box_monomial(exps: &[u32]) -> LambdaMonomial {
        LambdaMonomial {
            z: 0,
            lambda: vec![0; exps.len()],
            dz: 0,
            dl: exps.to_vec(),
        }
    }

    /// `∂^{u_plus} − ∂^{u_minus}` in the z∂λ alphabet.
    pub fn box_operator(u_plus: &[u32], u_minus: &[u32]) -> LambdaOp {
        let mut op = LambdaOp::zero(u_plus.len());
        op.add_term(LambdaOp::box_monomial(u_plus), Rat::one());
        op.add_term(LambdaOp::box_monomial(u_minus), Rat::from(-1));
        op
    }

    /// `Σ_j w_j λ_j z∂λ_j  +  c·z  +  (δz if with_dz)`
    pub fn euler_like(weights: &[Rat], z_coeff: &Rat, with_dz: bool) -> LambdaOp {
        let mut op = LambdaOp::zero(weights.len());
        for (j, w) in weights.iter().enumerate() {
            let mut m = op.unit();
            m.lambda[j] = 1;
            m.dl[j] = 1;
            op.add_term(m, w.clone());
        }
        let mut zm = op.unit();
        zm.z = 1;
        op.add_term(zm, z_coeff.clone());
        if with_dz {
            let mut dm = op.unit();
            dm.dz = 1;
            op.add_term(dm, Rat::one());
        }
        op
    }

    /// `λ^w · self`
    pub fn left_mul_lambda(&self, w: &[i32]) -> LambdaOp {
        let mut out = LambdaOp::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut nm = m.clone();
            for (e, x) in nm.lambda.iter_mut().zip(w) {
                *e += x;
            }
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Rewrites every `λ_i^{v}(z∂λ_i)^{v}` as `E_i(E_i − z)…(E_i − (v−1)z)` with `E_i = λ_i z∂λ_i`.
    pub fn to_euler_form(&self) -> Result<EulerForm> {
        let mut out = EulerForm::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.dz > 0 && m.dl.iter().any(|&v| v > 0) {
                return Err(Error::Unsupported(
                    "mixed z²∂z and z∂λ monomials in Euler conversion".into(),
                ));
            }
            let mut lambda = m.lambda.clone();
            // start with the z-power and δz, then multiply in falling factorials
            let mut acc = EulerForm::zero(self.nvars);
            acc.add(
                EulerMonomial {
                    lambda: vec![0; self.nvars],
                    z: m.z,
                    e: vec![0; self.nvars],
                    dz: m.dz,
                },
                c.clone(),
            );
            for (i, &v) in m.dl.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                if lambda[i] < v as i32 {
                    return Err(Error::Unsupported(format!(
                        "λ_{} power {} too small to absorb (z∂λ_{})^{v}",
                        i + 1,
                        lambda[i],
                        i + 1
                    )));
                }
                lambda[i] -= v as i32;
                for k in 0..v {
                    acc = acc.mul_linear(i, &Rat::from(-(k as i64)));
                }
            }
            for (em, ec) in acc.terms {
                out.add(
                    EulerMonomial {
                        lambda: lambda.clone(),
                        ..em
                    },
                    ec,
                );
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LambdaOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut factors = Vec::new();
            match m.z {
                0 => {}
                1 => factors.push("z".to_string()),
                k => factors.push(format!("z^{k}")),
            }
            for (j, &e) in m.lambda.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("λ{}", j + 1)),
                    _ => factors.push(format!("λ{}^{e}", j + 1)),
                }
            }
            match m.dz {
                0 => {}
                1 => factors.push("(z²∂z)".to_string()),
                k => factors.push(format!("(z²∂z)^{k}")),
            }
            for (j, &e) in m.dl.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("(z∂λ{})", j + 1)),
                    _ => factors.push(format!("(z∂λ{})^{e}", j + 1)),
                }
            }
            crate::exact::write_signed_term(f, c, &factors, i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `λ^lambda · z^z · ∏ E_i^{e[i]} · δz^dz`, where the `E_i = λ_i z∂λ_i` commute with each other
/// and with z, and δz stands rightmost.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EulerMonomial {
    pub lambda: Vec<i32>,
    pub z: u32,
    pub e: Vec<u32>,
    pub dz: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerForm {
    nvars: usize,
    terms: BTreeMap<EulerMonomial, Rat>,
}

impl EulerForm {
    pub fn zero(nvars: usize) -> Self {
        EulerForm {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&EulerMonomial, &Rat)> {
        self.terms.iter()
    }

    fn add(&mut self, m: EulerMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// `self · (E_i + shift·z)`; all factors involved commute.
    fn mul_linear(&self, i: usize, shift: &Rat) -> EulerForm {
        let mut out = EulerForm::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut me = m.clone();
            me.e[i] += 1;
            out.add(me, c.clone());
            let mut mz = m.clone();
            mz.z += 1;
            out.add(mz, c * shift);
        }
        out
    }

    /// Replaces each `E_j` (j ≥ 1, zero-based) by `p_j·E_0 + q_j·z`.
    pub fn eliminate(&self, p: &[Rat], q: &[Rat]) -> EulerForm {
        let mut out = EulerForm::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut acc = EulerForm::zero(self.nvars);
            let base = EulerMonomial {
                e: {
                    let mut e = vec![0; self.nvars];
                    e[0] = m.e[0];
                    e
                },
                ..m.clone()
            };
            acc.add(base, c.clone());
            for j in 1..self.nvars {
                for _ in 0..m.e[j] {
                    let mut next = EulerForm::zero(self.nvars);
                    for (am, ac) in &acc.terms {
                        let mut me = am.clone();
                        me.e[0] += 1;
                        next.add(me, ac * &p[j - 1]);
                        let mut mz = am.clone();
                        mz.z += 1;
                        next.add(mz, ac * &q[j - 1]);
                    }
                    acc = next;
                }
            }
            for (am, ac) in acc.terms {
                out.add(am, ac);
            }
        }
        out
    }

    /// Coefficients of a linear form `Σ c_j E_j + c_z·z` with no λ, or `None` if not of that shape.
    pub fn linear_coefficients(&self) -> Option<(Vec<Rat>, Rat)> {
        let mut ce = vec![Rat::zero(); self.nvars];
        let mut cz = Rat::zero();
        for (m, c) in &self.terms {
            if m.lambda.iter().any(|&x| x != 0) || m.dz != 0 {
                return None;
            }
            let deg: u32 = m.e.iter().sum::<u32>() + m.z;
            if deg != 1 {
                return None;
            }
            if m.z == 1 {
                cz = c.clone();
            } else {
                let j = m.e.iter().position(|&x| x == 1)?;
                ce[j] = c.clone();
            }
        }
        Some((ce, cz))
    }
}
