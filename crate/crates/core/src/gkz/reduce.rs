use crate::error::{Error, Result};
use crate::exact::{ratmat, Rat};
use crate::hyper::HypergeometricParams;
use crate::ore::{substitute, EulerForm, Monomial, OrePoly, Substitution};

use super::{gale_dual, gkz_rees_generators, matrix_for_hyper, params_from_gale, GkzSystem};

/// The pair `(P, H)` obtained by restricting a block-shaped Rees GKZ module to `(t, 1, …, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperReduction {
    pub params: HypergeometricParams,
    pub p: OrePoly,
    pub h: OrePoly,
    /// Scalar `s` of the final substitution `t := s·t`; equals `η` of the Gale dual.
    pub t_sign: Rat,
}

fn recognize(sys: &GkzSystem) -> Result<HypergeometricParams> {
    let cols = sys.a_matrix.cols();
    for m in 0..cols {
        let n = cols - m;
        let mut alpha = vec![Rat::zero()];
        alpha.extend(sys.beta[m..].iter().cloned());
        let p = HypergeometricParams::new(alpha, sys.beta[..m].to_vec());
        if p.n() != n {
            continue;
        }
        if matrix_for_hyper(&p).is_ok_and(|s| s.a_matrix == sys.a_matrix) {
            return Ok(p);
        }
    }
    Err(Error::Unsupported(
        "matrix is not of the hypergeometric block shape".into(),
    ))
}

/// Restriction `λ_1 = t`, `λ_i = 1`, so that `λ_1 z∂λ_1 = zθ`.
fn restrict(form: &EulerForm) -> Result<OrePoly> {
    let mut out = OrePoly::zero();
    for (m, c) in form.terms() {
        if m.e[1..].iter().any(|&e| e > 0) {
            return Err(Error::Invalid("Euler elimination left a non-initial variable".into()));
        }
        let term = Monomial {
            z: m.z + m.e[0],
            tau: 0,
            t: m.lambda[0],
            theta: m.e[0],
            dtau: 0,
            dz: m.dz,
        };
        out = &out + &OrePoly::monomial(term, c.clone());
    }
    Ok(out)
}

pub fn reduce_to_hyper(sys: &GkzSystem) -> Result<HyperReduction> {
    if !sys.beta0.is_zero() {
        return Err(Error::Unsupported("reduction needs β_0 = 0".into()));
    }
    let params = recognize(sys)?;
    let n_vars = sys.a_matrix.cols();
    let gens = gkz_rees_generators(sys)?;

    // Σ_j c_kj E_j + c_k z = 0  ⇒  E_rest = p·E_1 + q·z
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for g in &gens.euler {
        let (ce, cz) = g
            .to_euler_form()?
            .linear_coefficients()
            .ok_or_else(|| Error::Invalid("Euler generator is not linear".into()))?;
        lhs.push(ce[1..].to_vec());
        rhs.push(vec![-ce[0].clone(), -cz]);
    }
    let (p_coef, q_coef): (Vec<Rat>, Vec<Rat>) = if n_vars == 1 {
        (Vec::new(), Vec::new())
    } else {
        let sol = ratmat::solve(&lhs, &rhs)
            .ok_or_else(|| Error::Unsupported("Euler system does not determine E_2..E_N".into()))?;
        sol.into_iter().map(|r| (r[0].clone(), r[1].clone())).unzip()
    };

    let [binomial] = gens.boxes.as_slice() else {
        return Err(Error::Unsupported("reduction needs a corank-one matrix".into()));
    };
    let mut weight = vec![0i32; n_vars];
    for (m, _) in binomial.terms() {
        for (w, &e) in weight.iter_mut().zip(&m.dl) {
            *w += e as i32;
        }
    }
    let cleared = binomial.left_mul_lambda(&weight).to_euler_form()?;
    let h_raw = restrict(&cleared.eliminate(&p_coef, &q_coef))?;
    let p = restrict(&gens.homogeneity.to_euler_form()?.eliminate(&p_coef, &q_coef))?;

    let m = params.m();
    let mut kappa = vec![Rat::zero()];
    kappa.extend(params.alpha[1..].iter().map(|a| -a.clone()));
    kappa.extend(params.beta.iter().cloned());
    let eta = params_from_gale(&gale_dual(&sys.a_matrix).with_kappa(kappa))?.eta;
    debug_assert_eq!(eta, Rat::from(if m % 2 == 0 { 1 } else { -1 }));
    let h = substitute(&h_raw, &[Substitution::TScale(eta.clone())])?;
    Ok(HyperReduction {
        params,
        p,
        h,
        t_sign: eta,
    })
}
