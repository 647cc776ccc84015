//! The four example systems shipped with the crate.

use crate::constraints::Signature;
use crate::model::{load_model, GuardedRule, SbSystem};

pub const ATV_S0: &str = include_str!("../examples/atv_s0.sb");
pub const ATV_S1: &str = include_str!("../examples/atv_s1.sb");
pub const BONE_S0: &str = include_str!("../examples/bone_s0.sb");
pub const BONE_S1: &str = include_str!("../examples/bone_s1.sb");

fn load(text: &str) -> SbSystem {
    load_model(text).expect("bundled model is well-formed")
}

pub fn atv_s0() -> SbSystem {
    load(ATV_S0)
}

pub fn atv_s1() -> SbSystem {
    load(ATV_S1)
}

pub fn bone_s0() -> SbSystem {
    load(BONE_S0)
}

pub fn bone_s1() -> SbSystem {
    load(BONE_S1)
}

/// Every bundled system with its name, in a fixed order.
pub fn all() -> Vec<(&'static str, SbSystem)> {
    vec![("atv_s0", atv_s0()), ("atv_s1", atv_s1()), ("bone_s0", bone_s0()), ("bone_s1", bone_s1())]
}

/// Signature and guarded rules of the bone behaviour, unexpanded.
pub fn bone_rules() -> (Signature, Vec<GuardedRule>) {
    let doc = crate::model::parse_document(BONE_S0).expect("bundled model parses");
    match doc.behaviour {
        Some(crate::model::Behaviour::Rules { rules, .. }) => (doc.sig, rules),
        _ => unreachable!("bone behaviour is rule-based"),
    }
}
