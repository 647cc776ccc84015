//! DOT and JSON renderings of flat LTSs and Kripke structures.

use std::fmt::Write;

use serde::Serialize;

use crate::flatten::{display, FlatLabel, FlatLts};
use crate::kripke::Kripke;
use crate::model::SbSystem;

fn label_text(sys: &SbSystem, l: FlatLabel) -> String {
    match l {
        FlatLabel::SteadyIn(r) => sys.s.state(r).id.clone(),
        FlatLabel::AdaptPhase(t) => {
            let tr = sys.s.transition(t);
            format!("{}, {}, {}", sys.s.state(tr.source).id, tr.invariant, sys.s.state(tr.target).id)
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn header(out: &mut String, name: &str, initial: usize) {
    let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
    out.push_str("  node [fontname=\"monospace\"];\n");
    out.push_str("  init [shape=point];\n");
    let _ = writeln!(out, "  init -> s{initial};");
}

/// Steady states are filled, adapting states hollow.
pub fn flat_dot(sys: &SbSystem, flat: &FlatLts) -> String {
    let mut out = String::new();
    header(&mut out, &sys.name, flat.initial());
    for (i, &f) in flat.states().iter().enumerate() {
        let style = if f.is_steady() { "filled" } else { "solid" };
        let _ = writeln!(out, "  s{i} [label=\"{}\", style={style}];", escape(&display(sys, f).to_string()));
    }
    for &(a, l, b) in flat.edges() {
        let _ = writeln!(out, "  s{a} -> s{b} [label=\"{}\"];", escape(&label_text(sys, l)));
    }
    out.push_str("}\n");
    out
}

/// States are annotated with their atomic propositions; added self-loops
/// are dashed.
pub fn kripke_dot(sys: &SbSystem, flat: &FlatLts, k: &Kripke) -> String {
    let mut out = String::new();
    header(&mut out, &sys.name, k.initial());
    for (i, &f) in flat.states().iter().enumerate() {
        let style = if f.is_steady() { "filled" } else { "solid" };
        let text = format!("{}\\n{}", escape(&display(sys, f).to_string()), k.labels(i));
        let _ = writeln!(out, "  s{i} [label=\"{text}\", style={style}];");
    }
    for (a, b) in k.edges() {
        let dashed = if a == b && k.has_added_loop(a) { " [style=dashed]" } else { "" };
        let _ = writeln!(out, "  s{a} -> s{b}{dashed};");
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize)]
struct PhaseJson {
    invariant: String,
    target: String,
}

#[derive(Debug, Serialize)]
struct FlatStateJson {
    index: usize,
    q: String,
    r: String,
    phase: Option<PhaseJson>,
    text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<&'static str>>,
}

#[derive(Debug, Serialize)]
struct FlatEdgeJson {
    from: usize,
    to: usize,
    label: String,
}

#[derive(Debug, Serialize)]
struct FlatJson {
    system: String,
    stage: &'static str,
    initial: usize,
    states: Vec<FlatStateJson>,
    edges: Vec<FlatEdgeJson>,
}

#[derive(Debug, Serialize)]
struct KripkeJson {
    system: String,
    stage: &'static str,
    initial: usize,
    states: Vec<FlatStateJson>,
    edges: Vec<[usize; 2]>,
}

fn state_json(sys: &SbSystem, flat: &FlatLts, i: usize, k: Option<&Kripke>) -> FlatStateJson {
    let f = flat.state(i);
    FlatStateJson {
        index: i,
        q: sys.b.state(f.q).id.clone(),
        r: sys.s.state(f.r).id.clone(),
        phase: f.phase.map(|t| {
            let tr = sys.s.transition(t);
            PhaseJson { invariant: tr.invariant.to_string(), target: sys.s.state(tr.target).id.clone() }
        }),
        text: display(sys, f).to_string(),
        labels: k.map(|k| k.labels(i).atoms().map(|a| a.name()).collect()),
    }
}

pub fn flat_json(sys: &SbSystem, flat: &FlatLts) -> String {
    let doc = FlatJson {
        system: sys.name.clone(),
        stage: "flat",
        initial: flat.initial(),
        states: (0..flat.len()).map(|i| state_json(sys, flat, i, None)).collect(),
        edges: flat.edges().iter().map(|&(from, l, to)| FlatEdgeJson { from, to, label: label_text(sys, l) }).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serialisable")
}

pub fn kripke_json(sys: &SbSystem, flat: &FlatLts, k: &Kripke) -> String {
    let doc = KripkeJson {
        system: sys.name.clone(),
        stage: "kripke",
        initial: k.initial(),
        states: (0..flat.len()).map(|i| state_json(sys, flat, i, Some(k))).collect(),
        edges: k.edges().map(|(a, b)| [a, b]).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serialisable")
}
