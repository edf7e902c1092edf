//! The Ore algebra of the rescaled hypergeometric module and normal forms in it.

mod lambda;
mod normal;
mod poly;
mod subst;

pub use lambda::{EulerForm, EulerMonomial, LambdaMonomial, LambdaOp};
pub use normal::{normal_form, normal_form_with, IdealGenerators, ReductionOrder};
pub use poly::{op_mul, Monomial, OrePoly};
pub use subst::{substitute, Substitution};
