//! GKZ systems: the assumptions checker, normalized volume and holonomic rank, Gale duality and
//! the dimensional reduction to classical hypergeometric systems.

mod gale;
mod polytope;
mod reduce;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{IntMat, Rat};
use crate::hyper::HypergeometricParams;
use crate::ore::LambdaOp;

pub use gale::{gale_dual, params_from_gale, GaleData, GaleParams};
pub use polytope::{
    check_assumptions, convex_hull, normalized_volume, simplex_normalized_volume, triangulate,
    volume_report, AssumptionReport, Facet, Polytope, VolumeReport, MAX_DIM, MAX_POINTS,
};
pub use reduce::{reduce_to_hyper, HyperReduction};

/// `A` (d×n, d < n) with parameters `β ∈ ℚ^d` and the Rees parameter `β_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkzSystem {
    pub a_matrix: IntMat,
    pub beta: Vec<Rat>,
    pub beta0: Rat,
}

impl GkzSystem {
    pub fn new(a_matrix: IntMat, beta: Vec<Rat>, beta0: Rat) -> Result<Self> {
        if a_matrix.rows() >= a_matrix.cols() {
            return Err(Error::Shape {
                rows: a_matrix.rows(),
                cols: a_matrix.cols(),
            });
        }
        if beta.len() != a_matrix.rows() {
            return Err(Error::Invalid(format!(
                "β has length {} but A has {} rows",
                beta.len(),
                a_matrix.rows()
            )));
        }
        Ok(GkzSystem {
            a_matrix,
            beta,
            beta0,
        })
    }

    pub fn corank(&self) -> usize {
        self.a_matrix.cols() - self.a_matrix.rank()
    }

    /// Only lattice-basis binomials are emitted, which generate the toric ideal in corank one.
    pub fn is_lattice_basis_approximation(&self) -> bool {
        self.corank() > 1
    }
}

/// Normalized volume of the hull of `A`, after checking the assumptions that make it the rank.
pub fn holonomic_rank(sys: &GkzSystem) -> Result<Rat> {
    let report = check_assumptions(&sys.a_matrix)?;
    if let Some(why) = report.first_failure() {
        return Err(Error::Assumption(why.to_string()));
    }
    normalized_volume(&sys.a_matrix)
}

/// The block matrix with rows `[1 | 0 | e_i]` (i <= m) over `[1 | −e_i | 0]` (i < n), and
/// `β = (β_1..β_m, α_2..α_n)`.
pub fn matrix_for_hyper(p: &HypergeometricParams) -> Result<GkzSystem> {
    let (n, m) = p.type_pair();
    if n == 0 {
        return Err(Error::Invalid(
            "the GKZ presentation needs at least one α".into(),
        ));
    }
    if !p.alpha[0].is_zero() {
        return Err(Error::KummerTwistRequired {
            alpha1: p.alpha[0].clone(),
        });
    }
    let cols = n + m;
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(cols - 1);
    for i in 0..m {
        let mut row = vec![0; cols];
        row[0] = 1;
        row[n + i] = 1;
        rows.push(row);
    }
    for i in 0..n - 1 {
        let mut row = vec![0; cols];
        row[0] = 1;
        row[1 + i] = -1;
        rows.push(row);
    }
    let mut beta = p.beta.clone();
    beta.extend(p.alpha[1..].iter().cloned());
    GkzSystem::new(IntMat::from_rows(cols, &rows), beta, Rat::zero())
}

/// `∂^{u_plus} − ∂^{u_minus}` for one Gale-dual column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binomial {
    pub u_plus: Vec<u32>,
    pub u_minus: Vec<u32>,
}

fn exponent(x: &BigInt) -> Result<u32> {
    x.abs()
        .to_u32()
        .ok_or_else(|| Error::Size(format!("lattice entry {x} does not fit an exponent")))
}

pub fn lattice_binomials(sys: &GkzSystem) -> Result<Vec<Binomial>> {
    let b = gale_dual(&sys.a_matrix).b_matrix;
    (0..b.cols())
        .map(|j| {
            let col = b.column(j);
            let mut u_plus = Vec::with_capacity(col.len());
            let mut u_minus = Vec::with_capacity(col.len());
            for x in &col {
                let e = exponent(x)?;
                u_plus.push(if x.is_positive() { e } else { 0 });
                u_minus.push(if x.is_negative() { e } else { 0 });
            }
            Ok(Binomial { u_plus, u_minus })
        })
        .collect()
}

/// Generators of the Rees GKZ module, in order: box operators, the `z²∂z` generator, then the
/// `d` Euler generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesGenerators {
    pub boxes: Vec<LambdaOp>,
    pub homogeneity: LambdaOp,
    pub euler: Vec<LambdaOp>,
}

impl ReesGenerators {
    pub fn all(&self) -> Vec<&LambdaOp> {
        self.boxes
            .iter()
            .chain(std::iter::once(&self.homogeneity))
            .chain(self.euler.iter())
            .collect()
    }
}

pub fn gkz_rees_generators(sys: &GkzSystem) -> Result<ReesGenerators> {
    let n = sys.a_matrix.cols();
    let boxes = lattice_binomials(sys)?
        .iter()
        .map(|b| LambdaOp::box_operator(&b.u_plus, &b.u_minus))
        .collect();
    let homogeneity = LambdaOp::euler_like(&vec![Rat::one(); n], &-sys.beta0.clone(), true);
    let euler = (0..sys.a_matrix.rows())
        .map(|k| {
            let w: Vec<Rat> = sys
                .a_matrix
                .row(k)
                .iter()
                .map(|x| Rat::from(x.clone()))
                .collect();
            LambdaOp::euler_like(&w, &-sys.beta[k].clone(), false)
        })
        .collect();
    Ok(ReesGenerators {
        boxes,
        homogeneity,
        euler,
    })
}
