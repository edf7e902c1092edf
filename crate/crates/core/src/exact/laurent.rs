use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rat;

/// Variables of the commutative Laurent ring Q[z^±, τ^±, t^±].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Z,
    Tau,
    T,
}

impl Var {
    fn slot(self) -> usize {
        match self {
            Var::Z => 0,
            Var::Tau => 1,
            Var::T => 2,
        }
    }
}

/// Commutative Laurent polynomial in z, τ, t with rational coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<[i32; 3], Rat>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn constant(c: Rat) -> Self {
        Laurent::term(c, [0, 0, 0])
    }

    /// `c · z^e[0] τ^e[1] t^e[2]`
    pub fn term(c: Rat, exps: [i32; 3]) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Laurent { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.slot()] = 1;
        Laurent::term(Rat::one(), e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32; 3], &Rat)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rat) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiply by a monomial `z^a τ^b t^c`.
    pub fn shift(&self, exps: [i32; 3]) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| ([e[0] + exps[0], e[1] + exps[1], e[2] + exps[2]], x.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, v: Var) -> Laurent {
        let s = v.slot();
        let mut out = Laurent::zero();
        for (e, x) in &self.terms {
            if e[s] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[s] -= 1;
            out.add_term(ne, x * &Rat::from(e[s]));
        }
        out
    }

    fn add_term(&mut self, e: [i32; 3], c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(&Rat::from(-1))
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let names = ["z", "τ", "t"];
            let mut factors: Vec<String> = Vec::new();
            for (k, name) in names.iter().enumerate() {
                match e[k] {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    p => factors.push(format!("{name}^{p}")),
                }
            }
            super::write_signed_term(f, c, &factors, first)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Square matrix over the Laurent ring.
pub type LaurentMatrix = Vec<Vec<Laurent>>;

pub fn lmat_zero(n: usize) -> LaurentMatrix {
    vec![vec![Laurent::zero(); n]; n]
}

pub fn lmat_mul(a: &LaurentMatrix, b: &LaurentMatrix) -> LaurentMatrix {
    let n = a.len();
    let mut out = lmat_zero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
            }
        }
    }
    out
}

pub fn lmat_add(a: &LaurentMatrix, b: &LaurentMatrix) -> LaurentMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn lmat_sub(a: &LaurentMatrix, b: &LaurentMatrix) -> LaurentMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn lmat_map(a: &LaurentMatrix, f: impl Fn(&Laurent) -> Laurent) -> LaurentMatrix {
    a.iter().map(|r| r.iter().map(&f).collect()).collect()
}

pub fn lmat_is_zero(a: &LaurentMatrix) -> bool {
    a.iter().flatten().all(Laurent::is_zero)
}
