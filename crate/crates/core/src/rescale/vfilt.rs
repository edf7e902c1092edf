//! The filtration `^τU_α` along `τ = 0` and its graded pieces.
//!
//! `U_α` is spanned over the functions by `τ^{ν_α(k)}Q_k`, with
//! `ν_α(k) = ⌈−α + c_k⌉` and jump values `c_k = k − γ − nα_{k+1}`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exact::{ceil_rat, ratmat, Rat};

use super::IrregularContext;

/// `c_k = k − γ − n·α_{k+1}` for `k = 0, …, n−1`.
pub fn jump_values(ctx: &IrregularContext) -> Vec<Rat> {
    let n = Rat::from(ctx.n());
    ctx.alpha()
        .iter()
        .enumerate()
        .map(|(k, a)| &(&Rat::from(k) - ctx.gamma()) - &(&n * a))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VFiltrationStep {
    pub alpha: Rat,
    pub nu: Vec<BigInt>,
}

pub fn v_step(ctx: &IrregularContext, alpha: &Rat) -> VFiltrationStep {
    let nu = jump_values(ctx)
        .iter()
        .map(|c| ceil_rat(&(c - alpha)))
        .collect();
    VFiltrationStep {
        alpha: alpha.clone(),
        nu,
    }
}

/// `Gr_α` on the classes `[τ^{ν_α(k)} Q_k]` with `c_k − α ∈ ℤ`, and the endomorphism induced by
/// `zτ∂τ + αz`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPiece {
    pub alpha: Rat,
    pub contributing_indices: Vec<usize>,
    /// Column `i` is the image of the i-th contributing class.
    pub nilpotent: Vec<Vec<Rat>>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.contributing_indices.len()
    }

    /// Sizes of the Jordan blocks of the nilpotent, descending, from ranks of its powers.
    pub fn jordan_blocks(&self) -> Vec<usize> {
        let d = self.dim();
        let mut ranks = vec![d];
        let mut power = ratmat::identity(d);
        for _ in 0..d {
            power = ratmat::mat_mul(&power, &self.nilpotent);
            ranks.push(ratmat::rank(&power));
        }
        // blocks of size >= p number ranks[p−1] − ranks[p]
        let mut sizes = Vec::new();
        for p in (1..=d).rev() {
            let at_least = ranks[p - 1] - ranks[p];
            let at_least_next = if p < d { ranks[p] - ranks[p + 1] } else { 0 };
            sizes.extend(std::iter::repeat_n(p, at_least - at_least_next));
        }
        sizes
    }

    /// Least `p` with `N^p = 0`.
    pub fn nilpotency_index(&self) -> usize {
        let d = self.dim();
        let mut power = ratmat::identity(d);
        for p in 0..=d {
            if power.iter().flatten().all(Rat::is_zero) {
                return p;
            }
            power = ratmat::mat_mul(&power, &self.nilpotent);
        }
        unreachable!("a strictly lower-triangular matrix is nilpotent")
    }
}

pub fn graded_piece(ctx: &IrregularContext, alpha: &Rat) -> GradedPiece {
    let c = jump_values(ctx);
    let contributing: Vec<usize> = (0..ctx.n())
        .filter(|&k| (&c[k] - alpha).is_integer())
        .collect();
    let d = contributing.len();
    let a = ctx.alpha();
    let mut nilpotent = vec![vec![Rat::zero(); d]; d];
    for (col, &k) in contributing.iter().enumerate() {
        // k = n−1 maps to a multiple of t, which vanishes in the graded piece
        if k + 1 >= ctx.n() || a[k + 1] != a[k] {
            continue;
        }
        if let Some(row) = contributing.iter().position(|&j| j == k + 1) {
            nilpotent[row][col] = Rat::from(-1);
        }
    }
    GradedPiece {
        alpha: alpha.clone(),
        contributing_indices: contributing,
        nilpotent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(a: &[(i64, i64)]) -> IrregularContext {
        IrregularContext::new(a.iter().map(|&(p, q)| Rat::new(p, q)).collect()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn steps() {
        let c = ctx(&[(0, 1), (1, 4)]);
        assert_eq!(v_step(&c, &Rat::new(1, 4)).nu, ints(&[0, 1]));
        assert_eq!(v_step(&c, &Rat::new(3, 4)).nu, ints(&[0, 0]));
        let a = Rat::new(2, 7);
        let shifted = v_step(&c, &(&a - &Rat::one())).nu;
        let plus_one: Vec<BigInt> = v_step(&c, &a).nu.iter().map(|x| x + 1).collect();
        assert_eq!(shifted, plus_one);
    }

    #[test]
    fn pieces() {
        let g = graded_piece(&ctx(&[(0, 1), (0, 1)]), &Rat::zero());
        assert_eq!(g.contributing_indices, vec![0, 1]);
        assert_eq!(g.nilpotent, vec![vec![Rat::zero(), Rat::zero()], vec![Rat::from(-1), Rat::zero()]]);
        assert_eq!(g.jordan_blocks(), vec![2]);
        assert_eq!(g.nilpotency_index(), 2);

        let g = graded_piece(&ctx(&[(0, 1), (1, 2)]), &Rat::new(1, 2));
        assert_eq!(g.contributing_indices, vec![0, 1]);
        assert_eq!(g.jordan_blocks(), vec![1, 1]);

        let g = graded_piece(&ctx(&[(0, 1), (1, 2)]), &Rat::new(1, 3));
        assert_eq!(g.dim(), 0);
        assert!(g.jordan_blocks().is_empty());
    }
}
