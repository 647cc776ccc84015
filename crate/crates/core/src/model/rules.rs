//! Guarded-rule descriptions of behavioural machines.

use std::collections::{HashMap, VecDeque};

use crate::constraints::{evaluate, evaluate_int, Formula, Observation, Signature, Sort, Value};

use super::{BLevel, BState, Diagnostic, Severity};

/// `name: guard -> x := e, y := f`. Updates read the pre-state and apply
/// simultaneously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuardedRule {
    pub name: String,
    pub guard: Formula,
    pub updates: Vec<(String, Formula)>,
}

#[derive(Debug, Clone)]
pub struct RuleExpansion {
    pub level: BLevel,
    /// Firings pruned because an update left its sort.
    pub lints: Vec<Diagnostic>,
}

/// Explores every observation reachable from `init` by firing `rules`.
///
/// A rule fires when its guard holds and every updated value stays within
/// its sort. States are identified with their observation vectors, rendered
/// `(v1,v2,...)`, and ordered by observation.
pub fn expand_rules(rules: &[GuardedRule], sig: &Signature, init: Observation) -> RuleExpansion {
    let slots: Vec<Vec<(usize, &Formula, &Sort)>> = rules
        .iter()
        .map(|rule| {
            rule.updates
                .iter()
                .map(|(name, e)| {
                    let idx = sig.index_of(name).expect("update target declared");
                    (idx, e, sig.sort_of(name).expect("declared"))
                })
                .collect()
        })
        .collect();

    let mut seen: HashMap<Observation, usize> = HashMap::new();
    let mut order: Vec<Observation> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut lints = Vec::new();
    let mut queue = VecDeque::new();

    seen.insert(init.clone(), 0);
    order.push(init.clone());
    queue.push_back(0usize);

    while let Some(cur) = queue.pop_front() {
        let obs = order[cur].clone();
        for (rule, updates) in rules.iter().zip(&slots) {
            if !evaluate(&rule.guard, &obs) {
                continue;
            }
            let mut values: Vec<Value> = obs.values().cloned().collect();
            let mut in_range = true;
            for &(idx, e, sort) in updates {
                let v = evaluate_int(e, &obs);
                let fits = i64::try_from(v).ok().map(Value::Int).filter(|v| sort.contains(v));
                match fits {
                    Some(v) => values[idx] = v,
                    None => {
                        in_range = false;
                        lints.push(Diagnostic {
                            severity: Severity::Warning,
                            message: format!(
                                "rule `{}` at {} would set an observable to {v}, outside {sort}; firing pruned",
                                rule.name,
                                obs.render_tuple()
                            ),
                        });
                    }
                }
            }
            if !in_range {
                continue;
            }
            let next = obs.with_values(values);
            let target = match seen.get(&next) {
                Some(&i) => i,
                None => {
                    let i = order.len();
                    seen.insert(next.clone(), i);
                    order.push(next);
                    queue.push_back(i);
                    i
                }
            };
            edges.push((cur, target));
        }
    }

    // Canonical numbering by observation, independent of rule order.
    let mut perm: Vec<usize> = (0..order.len()).collect();
    perm.sort_by(|&a, &b| order[a].cmp(&order[b]));
    let mut rank = vec![0; order.len()];
    for (new, &old) in perm.iter().enumerate() {
        rank[old] = new;
    }
    let states: Vec<BState> =
        perm.iter().map(|&old| BState { id: order[old].render_tuple(), obs: order[old].clone() }).collect();
    let edges = edges.into_iter().map(|(a, b)| (rank[a], rank[b])).collect();
    let level = BLevel::new(states, rank[0], edges).expect("expansion yields a consistent level");
    RuleExpansion { level, lints }
}
