//! Hodge numbers of classical hypergeometric modules: the regular type `(n, n)` by pair
//! counting, the irregular type `(n, 0)` through the filtration along `τ = 0` of the rescaled
//! module, together with the explicit basis `Q̄_k` of each filtration step.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::hyper::{integral_difference, HypergeometricParams};
use crate::ore::OrePoly;
use crate::rescale::{jump_values, v_step, IrregularContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationNote {
    /// Defined only up to an overall shift, reported without one.
    ShiftFree,
    /// Shifted so that the k-th jump is `k − nα_k`.
    NormalizedAsTheorem,
}

impl NormalizationNote {
    pub fn as_str(self) -> &'static str {
        match self {
            NormalizationNote::ShiftFree => "shift_free",
            NormalizationNote::NormalizedAsTheorem => "normalized_as_theorem",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Jump {
    pub value: Rat,
    pub multiplicity: usize,
}

/// Jumping numbers with multiplicities; values strictly increasing, multiplicities positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeSpectrum {
    pub jumps: Vec<Jump>,
    pub normalization_note: NormalizationNote,
}

impl HodgeSpectrum {
    /// Buckets a multiset of values.
    pub fn from_values(values: impl IntoIterator<Item = Rat>, note: NormalizationNote) -> Self {
        let mut buckets: BTreeMap<Rat, usize> = BTreeMap::new();
        for v in values {
            *buckets.entry(v).or_default() += 1;
        }
        HodgeSpectrum {
            jumps: buckets
                .into_iter()
                .map(|(value, multiplicity)| Jump { value, multiplicity })
                .collect(),
            normalization_note: note,
        }
    }

    pub fn rank(&self) -> usize {
        self.jumps.iter().map(|j| j.multiplicity).sum()
    }

    pub fn multiplicity(&self, value: &Rat) -> usize {
        self.jumps
            .binary_search_by(|j| j.value.cmp(value))
            .map_or(0, |i| self.jumps[i].multiplicity)
    }

    /// `(value, multiplicity)` pairs.
    pub fn pairs(&self) -> Vec<(Rat, usize)> {
        self.jumps.iter().map(|j| (j.value.clone(), j.multiplicity)).collect()
    }
}

fn check_unit_sorted(vals: &[Rat], name: &'static str) -> Result<()> {
    for (i, v) in vals.iter().enumerate() {
        if v.is_negative() || *v >= Rat::one() {
            return Err(Error::OutOfRange {
                name: format!("{name}_{}", i + 1),
                value: v.clone(),
            });
        }
    }
    if vals.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::NotSorted(name));
    }
    Ok(())
}

/// `ρ(k) = |{i : β_i < α_k}| − k` for an irreducible type `(n, n)` with sorted parameters in `[0, 1)`.
pub fn fedorov_numbers(p: &HypergeometricParams) -> Result<HodgeSpectrum> {
    let (n, m) = p.type_pair();
    if n != m || n == 0 {
        return Err(Error::TypeMismatch(format!(
            "the regular formula needs type (n, n) with n >= 1, got ({n}, {m})"
        )));
    }
    check_unit_sorted(&p.alpha, "alpha")?;
    check_unit_sorted(&p.beta, "beta")?;
    if let Some((i, j, d)) = integral_difference(p) {
        return Err(Error::Reducible {
            alpha_index: i + 1,
            beta_index: j + 1,
            difference: d,
        });
    }
    // β sorted: the count below α_k is a partition point
    let rho = p.alpha.iter().enumerate().map(|(k, a)| {
        let below = p.beta.partition_point(|b| b < a);
        Rat::from(below as i64 - (k as i64 + 1))
    });
    Ok(HodgeSpectrum::from_values(rho, NormalizationNote::ShiftFree))
}

fn irregular_context(p: &HypergeometricParams) -> Result<IrregularContext> {
    let (n, m) = p.type_pair();
    if m != 0 {
        let hint = if n == m {
            "use fedorov_numbers for the regular type (n, n)"
        } else {
            "mixed types (n, m) with 0 < m are out of scope"
        };
        return Err(Error::TypeMismatch(format!(
            "the irregular formula needs type (n, 0), got ({n}, {m}); {hint}"
        )));
    }
    if n == 0 {
        return Err(Error::EmptyType("irregular Hodge numbers"));
    }
    IrregularContext::from_params(p)
}

/// `{k − nα_k : k = 1, …, n}` for type `(n, 0)` with sorted `α` in `[0, 1)`.
pub fn irregular_hodge_numbers(p: &HypergeometricParams) -> Result<HodgeSpectrum> {
    let ctx = irregular_context(p)?;
    let n = Rat::from(ctx.n());
    let rho = ctx
        .alpha()
        .iter()
        .enumerate()
        .map(|(i, a)| &Rat::from(i + 1) - &(&n * a));
    Ok(HodgeSpectrum::from_values(rho, NormalizationNote::NormalizedAsTheorem))
}

/// `Q̄_k = (−n)^k ∏_{i<=k} (θ − α_i)` for `k = 0, …, n−1`.
pub fn qbar_operators(p: &HypergeometricParams) -> Result<Vec<OrePoly>> {
    let ctx = irregular_context(p)?;
    let minus_n = Rat::from(-(ctx.n() as i64));
    let mut out = Vec::with_capacity(ctx.n());
    let mut acc = OrePoly::one();
    for k in 0..ctx.n() {
        if k > 0 {
            let factor = &OrePoly::theta() - &OrePoly::constant(ctx.alpha()[k - 1].clone());
            acc = (&acc * &factor).scale(&minus_n);
        }
        out.push(acc.clone());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationStep {
    pub level: Rat,
    /// Indices `k` of the `Q̄_k` spanning the step, ascending.
    pub basis_indices: Vec<usize>,
}

/// Steps of `F^irr` on the grid of unnormalized jump classes, ascending in level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrregularFiltration {
    pub rank: usize,
    pub steps: Vec<FiltrationStep>,
    /// Added to an unnormalized jump gives the normalized one.
    pub shift: Rat,
    /// Display strings of `Q̄_0, …, Q̄_{n−1}`.
    pub qbar: Vec<String>,
}

impl IrregularFiltration {
    /// `F_level`: the last emitted step at or below `level`; empty below the first jump and
    /// full above the window.
    pub fn at(&self, level: &Rat) -> Vec<usize> {
        let idx = self.steps.partition_point(|s| s.level <= *level);
        if idx == 0 {
            Vec::new()
        } else {
            self.steps[idx - 1].basis_indices.clone()
        }
    }

    /// Levels where the basis grows, each repeated by the size of the increment.
    pub fn jump_multiset(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        let mut prev = 0;
        for s in &self.steps {
            let d = s.basis_indices.len();
            out.extend(std::iter::repeat_n(s.level.clone(), d.saturating_sub(prev)));
            prev = prev.max(d);
        }
        out
    }
}

/// `F_{α+j} = ⊕_{j >= ν_α(k)} O·Q̄_k`, sampled at every level congruent to a jump modulo 1 in
/// `[c_min, c_max + window − 1]`.
pub fn irregular_filtration(p: &HypergeometricParams, window: u32) -> Result<IrregularFiltration> {
    if window == 0 {
        return Err(Error::Invalid("window must be at least 1".into()));
    }
    let ctx = irregular_context(p)?;
    let c = jump_values(&ctx);
    let lo = c.iter().min().expect("n >= 1").clone();
    let hi = &c.iter().max().expect("n >= 1").clone() + &Rat::from(window as i64 - 1);

    let mut classes: Vec<Rat> = c.iter().map(Rat::fract).collect();
    classes.sort();
    classes.dedup();
    let mut levels = Vec::new();
    let mut base = lo.floor();
    while Rat::from(base.clone()) <= hi {
        for f in &classes {
            let l = &Rat::from(base.clone()) + f;
            if l >= lo && l <= hi {
                levels.push(l);
            }
        }
        base += 1;
    }

    let steps = levels
        .into_iter()
        .map(|level| {
            let nu = v_step(&ctx, &level).nu;
            let basis_indices = (0..ctx.n()).filter(|&k| nu[k] <= 0.into()).collect();
            FiltrationStep { level, basis_indices }
        })
        .collect();
    let qbar = qbar_operators(p)?.iter().map(ToString::to_string).collect();
    Ok(IrregularFiltration {
        rank: ctx.n(),
        steps,
        shift: ctx.gamma() + &Rat::one(),
        qbar,
    })
}
