//! Self-verification suite: named randomized invariant checks run concurrently and reported in
//! name order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exact::Rat;
use crate::gkz::{gale_dual, matrix_for_hyper, params_from_gale, reduce_to_hyper};
use crate::hodge::{fedorov_numbers, irregular_filtration, irregular_hodge_numbers};
use crate::hyper::{hypergeometric_operator, kummer_twist, rees_pair, HypergeometricParams};
use crate::ore::{normal_form, normal_form_with, substitute, IdealGenerators, Monomial, OrePoly, ReductionOrder, Substitution};
use crate::rescale::{curvature_check, graded_piece, jump_values, v_step, verify_connection, IrregularContext};

/// Caps `bound` when set, for quick runs.
pub const BOUND_ENV: &str = "HYPERHODGE_VERIFY_BOUND";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Random cases per check.
    pub bound: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { bound: 20, seed: 0 }
    }
}

impl VerifyConfig {
    pub fn effective_bound(&self) -> usize {
        let cap = std::env::var(BOUND_ENV).ok().and_then(|v| v.parse::<usize>().ok());
        cap.map_or(self.bound, |c| c.min(self.bound))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    /// First failing case.
    pub detail: Option<String>,
}

type CaseFn = fn(&mut ChaCha8Rng) -> Result<(), String>;

const CHECKS: &[(&str, CaseFn)] = &[
    ("connection_vs_ideal", case_connection),
    ("curvature_flat", case_curvature),
    ("fedorov_pair_count", case_fedorov),
    ("filtration_coherence", case_coherence),
    ("gale_round_trip", case_gale),
    ("graded_nilpotent", case_nilpotent),
    ("kummer_identity", case_kummer),
    ("normal_form", case_normal_form),
    ("ore_associativity", case_associativity),
    ("reduction_identity", case_reduction),
    ("vfilt_shift", case_vshift),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// FNV-1a of the name mixed into the seed; stable across builds.
fn check_seed(seed: u64, name: &str) -> u64 {
    let h = name
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3));
    seed ^ h
}

fn run_check(name: &str, f: CaseFn, cfg: &VerifyConfig) -> CheckResult {
    let cases = cfg.effective_bound();
    let mut rng = ChaCha8Rng::seed_from_u64(check_seed(cfg.seed, name));
    for i in 0..cases {
        if let Err(e) = f(&mut rng) {
            return CheckResult {
                name: name.to_string(),
                cases: i + 1,
                passed: false,
                detail: Some(e),
            };
        }
    }
    CheckResult {
        name: name.to_string(),
        cases,
        passed: true,
        detail: None,
    }
}

/// Runs every check on its own thread; the result order is by name and independent of timing.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut results: Vec<CheckResult> = std::thread::scope(|s| {
        let handles: Vec<_> = CHECKS
            .iter()
            .map(|&(name, f)| s.spawn(move || run_check(name, f, cfg)))
            .collect();
        handles
            .into_iter()
            .zip(CHECKS)
            .map(|(h, &(name, _))| {
                h.join().unwrap_or_else(|_| CheckResult {
                    name: name.to_string(),
                    cases: 0,
                    passed: false,
                    detail: Some("check panicked".into()),
                })
            })
            .collect()
    });
    results.sort_by(|a, b| a.name.cmp(&b.name));
    results
}

fn unit_rat(rng: &mut ChaCha8Rng) -> Rat {
    let q = rng.gen_range(1..=6i64);
    Rat::new(rng.gen_range(0..q), q)
}

/// Sorted values in `[0, 1)` drawn from a small pool so that repeats occur.
fn sorted_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    let pool: Vec<Rat> = (0..rng.gen_range(1..=n.max(1))).map(|_| unit_rat(rng)).collect();
    let mut v: Vec<Rat> = (0..n).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
    v.sort();
    v
}

fn irregular(rng: &mut ChaCha8Rng, max_n: usize) -> IrregularContext {
    let n = rng.gen_range(1..=max_n);
    IrregularContext::new(sorted_unit(rng, n)).expect("sampled in range and sorted")
}

fn case_connection(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ctx = irregular(rng, 4);
    let check = verify_connection(&ctx).map_err(|e| e.to_string())?;
    match check.failure {
        None => Ok(()),
        Some(f) => Err(format!("{:?}: {} column {}", ctx.alpha(), f.generator, f.column)),
    }
}

fn case_curvature(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ctx = irregular(rng, 4);
    curvature_check(&ctx).then_some(()).ok_or_else(|| format!("{:?} is not flat", ctx.alpha()))
}

fn case_fedorov(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(1..=6);
    let alpha = sorted_unit(rng, n);
    let beta = loop {
        let b = sorted_unit(rng, n);
        if b.iter().all(|x| !alpha.contains(x)) {
            break b;
        }
    };
    let p = HypergeometricParams::new(alpha, beta);
    let spec = fedorov_numbers(&p).map_err(|e| e.to_string())?;
    let mut counted: Vec<Rat> = Vec::new();
    for (k, a) in p.alpha.iter().enumerate() {
        let below = p.beta.iter().filter(|b| *b < a).count() as i64;
        counted.push(Rat::from(below - k as i64 - 1));
    }
    let mut flat: Vec<Rat> = spec
        .jumps
        .iter()
        .flat_map(|j| std::iter::repeat_n(j.value.clone(), j.multiplicity))
        .collect();
    counted.sort();
    flat.sort();
    (flat == counted).then_some(()).ok_or_else(|| format!("{p}: {flat:?} vs {counted:?}"))
}

fn case_coherence(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ctx = irregular(rng, 6);
    let p = ctx.params();
    let spec = irregular_hodge_numbers(&p).map_err(|e| e.to_string())?;
    let filt = irregular_filtration(&p, 1).map_err(|e| e.to_string())?;
    let shifted: Vec<Rat> = filt.jump_multiset().iter().map(|l| l + &filt.shift).collect();
    let flat: Vec<Rat> = spec
        .jumps
        .iter()
        .flat_map(|j| std::iter::repeat_n(j.value.clone(), j.multiplicity))
        .collect();
    if shifted != flat || spec.rank() != ctx.n() {
        return Err(format!("{p}: filtration {shifted:?} vs spectrum {flat:?}"));
    }
    for c in jump_values(&ctx) {
        let class: usize = spec
            .jumps
            .iter()
            .filter(|j| (&(&j.value - &filt.shift) - &c).is_integer())
            .map(|j| j.multiplicity)
            .sum();
        if class != graded_piece(&ctx, &c).dim() {
            return Err(format!("{p}: class of {c} has {class} jumps but graded dimension differs"));
        }
    }
    Ok(())
}

fn case_gale(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(1..=5);
    let m = rng.gen_range(0..=(8 - n).min(4));
    let mut alpha = vec![Rat::zero()];
    alpha.extend((1..n).map(|_| unit_rat(rng)));
    let beta: Vec<Rat> = (0..m).map(|_| unit_rat(rng)).collect();
    let p = HypergeometricParams::new(alpha, beta);
    let sys = matrix_for_hyper(&p).map_err(|e| e.to_string())?;
    let mut kappa = vec![Rat::zero()];
    kappa.extend(sys.beta[m..].iter().map(|a| -a.clone()));
    kappa.extend(sys.beta[..m].iter().cloned());
    let g = params_from_gale(&gale_dual(&sys.a_matrix).with_kappa(kappa)).map_err(|e| e.to_string())?;
    let sorted = |v: &[Rat]| {
        let mut v = v.to_vec();
        v.sort();
        v
    };
    let eta = Rat::from(if m % 2 == 0 { 1 } else { -1 });
    (sorted(&g.alpha) == sorted(&p.alpha) && sorted(&g.beta) == sorted(&p.beta) && g.eta == eta)
        .then_some(())
        .ok_or_else(|| format!("{p}: recovered {:?}; {:?}; η = {}", g.alpha, g.beta, g.eta))
}

fn case_nilpotent(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ctx = irregular(rng, 8);
    let a = ctx.alpha();
    for c in jump_values(&ctx) {
        let g = graded_piece(&ctx, &c);
        if g.nilpotency_index() > ctx.n() {
            return Err(format!("{a:?}: N^n ≠ 0 at {c}"));
        }
        // runs of equal α, restricted to the indices in this class
        let mut runs = Vec::new();
        let mut k = 0;
        while k < a.len() {
            let mut e = k + 1;
            while e < a.len() && a[e] == a[k] {
                e += 1;
            }
            if g.contributing_indices.contains(&k) {
                runs.push(e - k);
            }
            k = e;
        }
        runs.sort_by(|x, y| y.cmp(x));
        if g.jordan_blocks() != runs {
            return Err(format!("{a:?}: blocks {:?} vs runs {runs:?} at {c}", g.jordan_blocks()));
        }
    }
    Ok(())
}

fn case_vshift(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ctx = irregular(rng, 8);
    let level = &unit_rat(rng) + &Rat::from(rng.gen_range(-3..=3i64));
    let below = v_step(&ctx, &(&level - &Rat::one())).nu;
    let here = v_step(&ctx, &level).nu;
    below
        .iter()
        .zip(&here)
        .all(|(b, h)| *b == h + 1)
        .then_some(())
        .ok_or_else(|| format!("{:?} at {level}: {below:?} vs {here:?}", ctx.alpha()))
}

fn case_kummer(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(0..=4);
    let m = rng.gen_range(0..=4);
    let alpha: Vec<Rat> = (0..n).map(|_| unit_rat(rng)).collect();
    let beta: Vec<Rat> = (0..m).map(|_| unit_rat(rng)).collect();
    let p = HypergeometricParams::new(alpha, beta);
    let eta = &unit_rat(rng) + &Rat::from(rng.gen_range(-2..=2i64));
    let lhs = substitute(&hypergeometric_operator(&p), &[Substitution::ThetaShift(eta.clone())])
        .map_err(|e| e.to_string())?;
    let rhs = hypergeometric_operator(&kummer_twist(&p, &-eta.clone()));
    (lhs == rhs).then_some(()).ok_or_else(|| format!("{p} with η = {eta}"))
}

/// Random operator whose z-degree covers its derivative and θ degrees, so it lies in the domain
/// of the normal form.
pub(crate) fn random_lattice_op(rng: &mut ChaCha8Rng, terms: usize) -> OrePoly {
    let mut op = OrePoly::zero();
    for _ in 0..terms {
        let theta = rng.gen_range(0..=3);
        let dz = rng.gen_range(0..=1);
        let dtau = rng.gen_range(0..=1);
        let m = Monomial {
            z: theta + dz + dtau + rng.gen_range(0..=1),
            tau: rng.gen_range(-2..=2),
            t: rng.gen_range(-2..=2),
            theta,
            dtau,
            dz,
        };
        op = &op + &OrePoly::monomial(m, Rat::from(rng.gen_range(-3..=3i64)));
    }
    op
}

fn random_op(rng: &mut ChaCha8Rng) -> OrePoly {
    let mut op = OrePoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let m = Monomial {
            z: rng.gen_range(0..=2),
            tau: rng.gen_range(-2..=2),
            t: rng.gen_range(-2..=2),
            theta: rng.gen_range(0..=2),
            dtau: rng.gen_range(0..=2),
            dz: rng.gen_range(0..=2),
        };
        op = &op + &OrePoly::monomial(m, Rat::new(rng.gen_range(-4..=4i64), rng.gen_range(1..=3i64)));
    }
    op
}

fn case_associativity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (a, b, c) = (random_op(rng), random_op(rng), random_op(rng));
    (&(&a * &b) * &c == &a * &(&b * &c))
        .then_some(())
        .ok_or_else(|| format!("({a}) ({b}) ({c})"))
}

fn case_normal_form(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ctx = irregular(rng, 3);
    let gens = IdealGenerators::new(ctx.alpha(), ctx.gamma());
    let op = random_lattice_op(rng, 3);
    let nf = normal_form(&op, &gens).map_err(|e| format!("{op}: {e}"))?;
    if normal_form(&nf, &gens).map_err(|e| e.to_string())? != nf {
        return Err(format!("{op}: normal form is not idempotent"));
    }
    if normal_form_with(&op, &gens, ReductionOrder::Eager).map_err(|e| e.to_string())? != nf {
        return Err(format!("{op}: reduction orders disagree"));
    }
    for g in gens.as_list() {
        let mult = &random_lattice_op(rng, 2) * g;
        let r = normal_form(&mult, &gens).map_err(|e| format!("{mult}: {e}"))?;
        if !r.is_zero() {
            return Err(format!("left multiple of {g} reduces to {r}"));
        }
    }
    Ok(())
}

fn case_reduction(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(1..=4);
    let m = rng.gen_range(0..=(6 - n).min(3));
    let mut alpha = vec![Rat::zero()];
    alpha.extend((1..n).map(|_| unit_rat(rng)));
    let beta: Vec<Rat> = (0..m).map(|_| unit_rat(rng)).collect();
    let p = HypergeometricParams::new(alpha, beta);
    let r = reduce_to_hyper(&matrix_for_hyper(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let direct = rees_pair(&p).map_err(|e| e.to_string())?;
    if r.p != direct.p || r.h != direct.h {
        return Err(format!("{p}: reduction gives P = {}, H = {}", r.p, r.h));
    }
    let h1 = substitute(&direct.h, &[Substitution::ZToOne]).map_err(|e| e.to_string())?;
    if h1 != hypergeometric_operator(&p) {
        return Err(format!("{p}: H at z = 1 is {h1}"));
    }
    if m == 0 {
        let ctx = IrregularContext::new({
            let mut a = p.alpha.clone();
            a.sort();
            a
        })
        .map_err(|e| e.to_string())?;
        let gens = IdealGenerators::new(ctx.alpha(), ctx.gamma());
        let restricted = substitute(&gens.tau_h_gen_cleared, &[Substitution::TauToZ])
            .and_then(|op| op.divide_by_z_power(n as u32))
            .and_then(|op| substitute(&op, &[Substitution::ZToOne]))
            .map_err(|e| e.to_string())?;
        if restricted != hypergeometric_operator(&ctx.params()) {
            return Err(format!("{p}: τ := z restriction gives {restricted}"));
        }
    }
    Ok(())
}
