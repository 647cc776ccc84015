//! Seeded random S[B] systems for property tests and benchmarks.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use thiserror::Error;

use crate::constraints::{BoolOp, CmpOp, Formula, Observation, Signature, Sort, Value};
use crate::model::{BLevel, BState, SLevel, SState, STransition, SbSystem};

/// Upper bound of the `y` observable.
const Y_MAX: i64 = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    Params(String),
}

fn int(k: i64) -> Formula {
    Formula::IntConst(k)
}

fn cmp(op: CmpOp, var: &str, k: i64) -> Formula {
    Formula::cmp(op, Formula::var(var), int(k))
}

fn interval(lo: i64, hi: i64) -> Formula {
    if lo == hi {
        cmp(CmpOp::Eq, "x", lo)
    } else {
        Formula::bin(BoolOp::And, cmp(CmpOp::Ge, "x", lo), cmp(CmpOp::Le, "x", hi))
    }
}

fn invariant(rng: &mut impl Rng, x_max: i64) -> Formula {
    match rng.gen_range(0..12) {
        0..=3 => Formula::BoolConst(true),
        4 | 5 => cmp(CmpOp::Le, "y", rng.gen_range(0..=Y_MAX)),
        6 | 7 => cmp(CmpOp::Ge, "y", rng.gen_range(0..=Y_MAX)),
        8 => cmp(CmpOp::Ne, "x", rng.gen_range(0..=x_max)),
        9 | 10 => Formula::bin(
            BoolOp::Or,
            cmp(CmpOp::Eq, "y", rng.gen_range(0..=Y_MAX)),
            cmp(CmpOp::Le, "x", rng.gen_range(0..=x_max)),
        ),
        _ => Formula::BoolConst(false),
    }
}

fn signature(x_max: i64) -> Signature {
    Signature::new()
        .with("x", Sort::BoundedInt { lo: 0, hi: x_max })
        .and_then(|s| s.with("y", Sort::BoundedInt { lo: 0, hi: Y_MAX }))
        .expect("fixed signature is well formed")
}

fn b_states(sig: &Signature, xs: &[i64], ys: &[i64]) -> Vec<BState> {
    xs.iter()
        .zip(ys)
        .enumerate()
        .map(|(i, (&x, &y))| BState {
            id: format!("q{i}"),
            obs: Observation::new(sig, [("x", Value::Int(x)), ("y", Value::Int(y))]).expect("in sort"),
        })
        .collect()
}

/// S states `r0..` labelled by the intervals `[cuts[i], cuts[i+1])` of `x`.
fn s_states(cuts: &[i64]) -> Vec<SState> {
    cuts.windows(2).enumerate().map(|(i, w)| SState { id: format!("r{i}"), label: interval(w[0], w[1] - 1) }).collect()
}

fn region(cuts: &[i64], x: i64) -> usize {
    cuts.windows(2).position(|w| w[0] <= x && x < w[1]).expect("cuts cover the x range")
}

/// A random system over observables `x: int 0..D-1` and `y: int 0..3`,
/// where `n_s <= D <= 2 n_s`. Each behavioural state draws
/// `Binomial(n_b, density)` distinct successors, so `density = 1` gives a
/// total relation. Structural labels partition `x` into `n_s` intervals;
/// the initial structural state is the one whose interval holds `q0`.
pub fn gen_random(seed: u64, n_b: usize, n_s: usize, density: f64) -> Result<SbSystem, GenError> {
    if n_b == 0 || n_s == 0 {
        return Err(GenError::Params("n_b and n_s must be at least 1".into()));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(GenError::Params(format!("density {density} is not in (0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = (n_s + rng.gen_range(0..=n_s)) as i64;
    let sig = signature(d - 1);

    let mut cuts: Vec<i64> = sample(&mut rng, (d - 1) as usize, n_s - 1).into_iter().map(|c| c as i64 + 1).collect();
    cuts.push(0);
    cuts.push(d);
    cuts.sort_unstable();

    let xs: Vec<i64> = (0..n_b).map(|_| rng.gen_range(0..d)).collect();
    let ys: Vec<i64> = (0..n_b).map(|_| rng.gen_range(0..=Y_MAX)).collect();
    let degree = Binomial::new(n_b as u64, density).expect("density checked");
    let mut trans = Vec::new();
    for q in 0..n_b {
        let k = degree.sample(&mut rng) as usize;
        trans.extend(sample(&mut rng, n_b, k).into_iter().map(|q2| (q, q2)));
    }
    let b = BLevel::new(b_states(&sig, &xs, &ys), 0, trans).expect("generated B is well formed");

    let mut s_trans = Vec::new();
    for r in 0..n_s {
        for _ in 0..rng.gen_range(0..=3) {
            s_trans.push(STransition {
                source: r,
                invariant: invariant(&mut rng, d - 1),
                target: rng.gen_range(0..n_s),
            });
        }
    }
    let s = SLevel::new(s_states(&cuts), region(&cuts, xs[0]), s_trans).expect("generated S is well formed");
    Ok(SbSystem::new(format!("random_{seed}"), sig, b, s))
}

/// A system for scaling measurements. Four structural states form a ring
/// where each state may move one or two steps on with a `true` invariant;
/// `r_i` is labelled `x == i`. Each of the `n_b` behavioural states has
/// exactly `out_degree` successors, chosen outside its own region for half
/// of the states so that adaptations are frequent. The flat LTS grows
/// linearly in `n_b`.
pub fn gen_sized(seed: u64, n_b: usize, out_degree: usize) -> Result<SbSystem, GenError> {
    const N_S: usize = 4;
    if out_degree == 0 || n_b < 2 * out_degree {
        return Err(GenError::Params("need 1 <= out_degree and 2 * out_degree <= n_b".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sig = signature(N_S as i64 - 1);
    let xs: Vec<i64> = (0..n_b).map(|_| rng.gen_range(0..N_S as i64)).collect();
    let ys: Vec<i64> = (0..n_b).map(|_| rng.gen_range(0..=Y_MAX)).collect();
    let outside: Vec<Vec<usize>> = (0..N_S as i64).map(|r| (0..n_b).filter(|&q| xs[q] != r).collect()).collect();
    let mut trans = Vec::with_capacity(n_b * out_degree);
    for q in 0..n_b {
        let pool = &outside[xs[q] as usize];
        if rng.gen_bool(0.5) && pool.len() >= out_degree {
            trans.extend(sample(&mut rng, pool.len(), out_degree).into_iter().map(|i| (q, pool[i])));
        } else {
            trans.extend(sample(&mut rng, n_b, out_degree).into_iter().map(|q2| (q, q2)));
        }
    }
    let b = BLevel::new(b_states(&sig, &xs, &ys), 0, trans).expect("generated B is well formed");
    let cuts: Vec<i64> = (0..=N_S as i64).collect();
    let s_trans = (0..N_S)
        .flat_map(|r| {
            [1, 2].map(|k| STransition { source: r, invariant: Formula::BoolConst(true), target: (r + k) % N_S })
        })
        .collect();
    let s = SLevel::new(s_states(&cuts), xs[0] as usize, s_trans).expect("generated S is well formed");
    Ok(SbSystem::new(format!("sized_{seed}_{n_b}_{out_degree}"), sig, b, s))
}
