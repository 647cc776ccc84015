//! Explicit-state verification of two-level adaptive systems `S[B]`.
//!
//! A behavioural machine `B` is flattened under a structural machine `S`
//! whose states constrain `B`'s observables. Weak and strong adaptability
//! are decided two ways: by CTL model checking on the associated Kripke
//! structure, and by computing adaptation relations directly.

pub mod adapt;
pub mod bundled;
pub mod cli;
pub mod constraints;
pub mod ctl;
pub mod export;
pub mod flatten;
pub mod gen;
pub mod kripke;
pub mod model;
pub mod par;
