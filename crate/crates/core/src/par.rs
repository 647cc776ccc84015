//! Batch checking over many independent systems.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] fans work
//! out over the rayon pool; without it every batch runs sequentially.
//! Results always come back in input order.

use crate::adapt::{self, Agreement, Mode};
use crate::gen::{gen_random, GenError};
use crate::model::SbSystem;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this build can actually run batches in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// `items.iter().map(f)` in input order, possibly on several threads.
pub fn map_ordered<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// System-level verdicts for `mode`.
pub fn check_all(exec: Exec, systems: &[SbSystem], mode: Mode) -> Vec<bool> {
    map_ordered(exec, systems, |s| adapt::check(s, mode).holds)
}

pub fn cross_check_all(exec: Exec, systems: &[SbSystem]) -> Vec<Agreement> {
    map_ordered(exec, systems, adapt::cross_check)
}

/// One random system per seed, with the same shape parameters.
pub fn generate(exec: Exec, seeds: &[u64], n_b: usize, n_s: usize, density: f64) -> Result<Vec<SbSystem>, GenError> {
    map_ordered(exec, seeds, |&seed| gen_random(seed, n_b, n_s, density)).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::to_dsl;

    #[test]
    fn both_executors_agree_and_keep_order() {
        let seeds: Vec<u64> = (0..40).collect();
        let seq = generate(Exec::Sequential, &seeds, 6, 3, 0.3).unwrap();
        let par = generate(Exec::Parallel, &seeds, 6, 3, 0.3).unwrap();
        let text = |v: &[SbSystem]| v.iter().map(to_dsl).collect::<Vec<_>>();
        assert_eq!(text(&seq), text(&par));
        for mode in [Mode::Weak, Mode::Strong] {
            assert_eq!(check_all(Exec::Sequential, &seq, mode), check_all(Exec::Parallel, &par, mode));
        }
        assert_eq!(cross_check_all(Exec::Sequential, &seq), cross_check_all(Exec::Parallel, &seq));
    }
}
