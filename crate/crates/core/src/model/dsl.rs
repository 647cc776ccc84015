//! Line-oriented model description language.
//!
//! ```text
//! system <id>
//! observables
//!   <name> : int <lo>..<hi> | bool | enum { A, B, ... }
//! behaviour explicit
//!   state <id> { <name>=<val>, ... }
//!   init <id>
//!   trans <id> -> <id>
//! behaviour rules
//!   init <name>=<val>, ...
//!   rule <id>: <formula> -> <name> := <int-expr>, ...
//! structure
//!   state <id> : <formula>
//!   init <id>
//!   trans <id> -> <id> inv <formula>
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::constraints::{is_identifier, parse_formula, parse_int_expr, Formula, Observation, Signature, Sort, Value};

use super::{
    check_update, expand_rules, BLevel, BState, GuardedRule, ModelError, SLevel, SState, STransition, SbSystem,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Preamble,
    Observables,
    Explicit,
    Rules,
    Structure,
}

/// One logical line: 1-based number, the text with comment stripped, and
/// the char column where that text starts.
struct Line<'a> {
    no: usize,
    text: &'a str,
    indent: usize,
}

impl Line<'_> {
    fn err(&self, col: usize, msg: impl Into<String>) -> ModelError {
        ModelError::Syntax { line: self.no, col: self.indent + col, msg: msg.into() }
    }

    /// Char column (1-based) of byte offset `at` within `text`.
    fn col_of(&self, at: usize) -> usize {
        self.text[..at].chars().count() + 1
    }

    fn formula(&self, at: usize, sig: &Signature) -> Result<Formula, ModelError> {
        let src = &self.text[at..];
        parse_formula(src, sig).map_err(|e| e.relocate(self.no, self.indent + self.col_of(at) - 1).into())
    }

    fn int_expr(&self, at: usize, end: usize, sig: &Signature) -> Result<Formula, ModelError> {
        let src = &self.text[at..end];
        parse_int_expr(src, sig).map_err(|e| e.relocate(self.no, self.indent + self.col_of(at) - 1).into())
    }
}

fn is_state_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) enum Behaviour {
    Explicit {
        states: Vec<(usize, String, Observation)>,
        init: Option<(usize, String)>,
        trans: Vec<(usize, String, String)>,
    },
    Rules {
        init: Option<Observation>,
        rules: Vec<GuardedRule>,
    },
}

pub(crate) struct Document {
    pub name: String,
    pub sig: Signature,
    pub behaviour: Option<Behaviour>,
    s_states: Vec<(usize, String, Formula)>,
    s_init: Option<(usize, String)>,
    s_trans: Vec<(usize, String, String, Formula)>,
}

fn parse_value(line: &Line, at: usize, raw: &str, sort: &Sort) -> Result<Value, ModelError> {
    let raw = raw.trim();
    let v = match sort {
        Sort::BoundedInt { .. } => raw
            .parse::<i64>()
            .map(Value::Int)
            .map_err(|_| line.err(at, format!("expected an integer, found `{raw}`")))?,
        Sort::Bool => match raw {
            "true" => Value::Bool(true),
            "false" => Value::Bool(false),
            _ => return Err(line.err(at, format!("expected `true` or `false`, found `{raw}`"))),
        },
        Sort::Enum(_) => Value::Label(raw.to_string()),
    };
    Ok(v)
}

/// Parses `name=val, name=val` starting at byte `at`.
fn parse_assignments(line: &Line, at: usize, body: &str, sig: &Signature) -> Result<Observation, ModelError> {
    let mut pairs = Vec::new();
    let mut offset = at;
    for part in body.split(',') {
        let col = line.col_of(offset);
        let Some((name, val)) = part.split_once('=') else {
            return Err(line.err(col, format!("expected `name=value`, found `{}`", part.trim())));
        };
        let name = name.trim();
        let sort = sig.sort_of(name).ok_or_else(|| line.err(col, format!("unknown observable `{name}`")))?;
        pairs.push((name.to_string(), parse_value(line, col, val, sort)?));
        offset += part.len() + 1;
    }
    Observation::new(sig, pairs).map_err(|source| ModelError::Observation { line: line.no, source })
}

fn parse_sort(line: &Line, at: usize, text: &str) -> Result<Sort, ModelError> {
    let t = text.trim();
    if t == "bool" {
        return Ok(Sort::Bool);
    }
    if let Some(range) = t.strip_prefix("int") {
        let Some((lo, hi)) = range.trim().split_once("..") else {
            return Err(line.err(at, "expected `int <lo>..<hi>`"));
        };
        let lo = lo.trim().parse::<i64>().map_err(|_| line.err(at, "bad lower bound"))?;
        let hi = hi.trim().parse::<i64>().map_err(|_| line.err(at, "bad upper bound"))?;
        return Ok(Sort::BoundedInt { lo, hi });
    }
    if let Some(rest) = t.strip_prefix("enum") {
        let inner = rest
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| line.err(at, "expected `enum { A, B, ... }`"))?;
        let labels: Vec<String> = inner.split(',').map(|l| l.trim().to_string()).collect();
        if let Some(bad) = labels.iter().find(|l| !is_identifier(l)) {
            return Err(line.err(at, format!("invalid enumeration label `{bad}`")));
        }
        return Ok(Sort::Enum(labels));
    }
    Err(line.err(at, format!("unknown sort `{t}`")))
}

fn split_arrow<'a>(line: &Line, at: usize, text: &'a str) -> Result<(&'a str, &'a str), ModelError> {
    let (a, b) = text.split_once("->").ok_or_else(|| line.err(at, "expected `<id> -> <id>`"))?;
    Ok((a.trim(), b.trim()))
}

fn expect_id<'a>(line: &Line, at: usize, s: &'a str) -> Result<&'a str, ModelError> {
    if is_state_id(s) {
        Ok(s)
    } else {
        Err(line.err(at, format!("invalid state id `{s}`")))
    }
}

pub(crate) fn parse_document(text: &str) -> Result<Document, ModelError> {
    let mut doc = Document {
        name: String::new(),
        sig: Signature::new(),
        behaviour: None,
        s_states: Vec::new(),
        s_init: None,
        s_trans: Vec::new(),
    };
    let mut section = Section::Preamble;
    let mut seen_structure = false;

    for (i, raw) in text.lines().enumerate() {
        let uncommented = raw.split('#').next().unwrap_or("");
        let trimmed_start = uncommented.trim_start();
        let indent = uncommented.chars().count() - trimmed_start.chars().count();
        let line = Line { no: i + 1, text: trimmed_start.trim_end(), indent };
        let t = line.text;
        if t.is_empty() {
            continue;
        }
        let (head, rest) = match t.find(char::is_whitespace) {
            Some(k) => (&t[..k], t[k..].trim_start()),
            None => (t, ""),
        };
        let rest_at = t.len() - rest.len();

        match head {
            "system" => {
                if !is_state_id(rest) {
                    return Err(line.err(1, "expected `system <id>`"));
                }
                doc.name = rest.to_string();
                continue;
            }
            "observables" if rest.is_empty() => {
                section = Section::Observables;
                continue;
            }
            "behaviour" | "behavior" => {
                if doc.behaviour.is_some() {
                    return Err(line.err(1, "duplicate behaviour section"));
                }
                section = match rest {
                    "explicit" => {
                        doc.behaviour = Some(Behaviour::Explicit { states: vec![], init: None, trans: vec![] });
                        Section::Explicit
                    }
                    "rules" => {
                        doc.behaviour = Some(Behaviour::Rules { init: None, rules: vec![] });
                        Section::Rules
                    }
                    _ => return Err(line.err(1, "expected `behaviour explicit` or `behaviour rules`")),
                };
                continue;
            }
            "structure" if rest.is_empty() => {
                if seen_structure {
                    return Err(line.err(1, "duplicate structure section"));
                }
                seen_structure = true;
                section = Section::Structure;
                continue;
            }
            _ => {}
        }

        match section {
            Section::Preamble => return Err(line.err(1, format!("unexpected `{head}` outside a section"))),
            Section::Observables => {
                let (name, sort) = t.split_once(':').ok_or_else(|| line.err(1, "expected `<name> : <sort>`"))?;
                let sort_at = line.col_of(name.len() + 1);
                let sort = parse_sort(&line, sort_at, sort)?;
                doc.sig.add(name.trim(), sort).map_err(|source| ModelError::Signature { line: line.no, source })?;
            }
            Section::Explicit => {
                let Some(Behaviour::Explicit { states, init, trans }) = doc.behaviour.as_mut() else { unreachable!() };
                match head {
                    "state" => {
                        let open = rest.find('{').ok_or_else(|| line.err(line.col_of(rest_at), "expected `{`"))?;
                        let id = expect_id(&line, line.col_of(rest_at), rest[..open].trim())?;
                        let body_start = rest_at + open + 1;
                        let close = t
                            .rfind('}')
                            .filter(|&c| c >= body_start)
                            .ok_or_else(|| line.err(line.col_of(t.len()), "expected `}`"))?;
                        if !t[close + 1..].trim().is_empty() {
                            return Err(line.err(line.col_of(close + 1), "trailing text after `}`"));
                        }
                        let obs = parse_assignments(&line, body_start, &t[body_start..close], &doc.sig)?;
                        states.push((line.no, id.to_string(), obs));
                    }
                    "init" => {
                        let id = expect_id(&line, line.col_of(rest_at), rest)?;
                        if init.replace((line.no, id.to_string())).is_some() {
                            return Err(line.err(1, "duplicate init"));
                        }
                    }
                    "trans" => {
                        let (a, b) = split_arrow(&line, line.col_of(rest_at), rest)?;
                        let a = expect_id(&line, line.col_of(rest_at), a)?;
                        let b = expect_id(&line, line.col_of(rest_at), b)?;
                        trans.push((line.no, a.to_string(), b.to_string()));
                    }
                    _ => return Err(line.err(1, format!("unexpected `{head}` in behaviour section"))),
                }
            }
            Section::Rules => {
                let Some(Behaviour::Rules { init, rules }) = doc.behaviour.as_mut() else { unreachable!() };
                match head {
                    "init" => {
                        let obs = parse_assignments(&line, rest_at, rest, &doc.sig)?;
                        if init.replace(obs).is_some() {
                            return Err(line.err(1, "duplicate init"));
                        }
                    }
                    "rule" => {
                        let colon = rest
                            .find(':')
                            .ok_or_else(|| line.err(line.col_of(rest_at), "expected `rule <id>: ...`"))?;
                        let name = rest[..colon].trim();
                        if !is_identifier(name) {
                            return Err(line.err(line.col_of(rest_at), format!("invalid rule name `{name}`")));
                        }
                        if rules.iter().any(|r| r.name == name) {
                            return Err(ModelError::DuplicateId { line: line.no, id: name.to_string() });
                        }
                        let guard_at = rest_at + colon + 1;
                        let arrow = t[guard_at..]
                            .find("->")
                            .map(|k| guard_at + k)
                            .ok_or_else(|| line.err(line.col_of(guard_at), "expected `->`"))?;
                        let guard = {
                            let src = &t[guard_at..arrow];
                            parse_formula(src, &doc.sig).map_err(|e| {
                                ModelError::from(e.relocate(line.no, indent + line.col_of(guard_at) - 1))
                            })?
                        };
                        let mut updates: Vec<(String, Formula)> = Vec::new();
                        let mut offset = arrow + 2;
                        for part in t[arrow + 2..].split(',') {
                            let col = line.col_of(offset);
                            let (target, _) =
                                part.split_once(":=").ok_or_else(|| line.err(col, "expected `<name> := <expr>`"))?;
                            let target = target.trim();
                            match doc.sig.sort_of(target) {
                                Some(Sort::BoundedInt { .. }) => {}
                                Some(_) => return Err(line.err(col, format!("`{target}` is not integer-sorted"))),
                                None => return Err(line.err(col, format!("unknown observable `{target}`"))),
                            }
                            if updates.iter().any(|(n, _)| n == target) {
                                return Err(line.err(col, format!("`{target}` updated twice")));
                            }
                            let expr_at = offset + part.find(":=").expect("split above") + 2;
                            let expr = line.int_expr(expr_at, offset + part.len(), &doc.sig)?;
                            check_update(&expr, &doc.sig).map_err(|m| line.err(col, m))?;
                            updates.push((target.to_string(), expr));
                            offset += part.len() + 1;
                        }
                        rules.push(GuardedRule { name: name.to_string(), guard, updates });
                    }
                    _ => return Err(line.err(1, format!("unexpected `{head}` in rules section"))),
                }
            }
            Section::Structure => match head {
                "state" => {
                    let colon = rest
                        .find(':')
                        .ok_or_else(|| line.err(line.col_of(rest_at), "expected `state <id> : <formula>`"))?;
                    let id = expect_id(&line, line.col_of(rest_at), rest[..colon].trim())?;
                    let label = line.formula(rest_at + colon + 1, &doc.sig)?;
                    doc.s_states.push((line.no, id.to_string(), label));
                }
                "init" => {
                    let id = expect_id(&line, line.col_of(rest_at), rest)?;
                    if doc.s_init.replace((line.no, id.to_string())).is_some() {
                        return Err(line.err(1, "duplicate init"));
                    }
                }
                "trans" => {
                    let inv = rest
                        .find(" inv ")
                        .ok_or_else(|| line.err(line.col_of(rest_at), "expected `trans <id> -> <id> inv <formula>`"))?;
                    let (a, b) = split_arrow(&line, line.col_of(rest_at), &rest[..inv])?;
                    let a = expect_id(&line, line.col_of(rest_at), a)?;
                    let b = expect_id(&line, line.col_of(rest_at), b)?;
                    let invariant = line.formula(rest_at + inv + 5, &doc.sig)?;
                    doc.s_trans.push((line.no, a.to_string(), b.to_string(), invariant));
                }
                _ => return Err(line.err(1, format!("unexpected `{head}` in structure section"))),
            },
        }
    }
    Ok(doc)
}

fn missing(what: &str) -> ModelError {
    ModelError::Syntax { line: 0, col: 0, msg: format!("missing {what}") }
}

fn build_b(doc: &Document) -> Result<BLevel, ModelError> {
    match doc.behaviour.as_ref().ok_or_else(|| missing("behaviour section"))? {
        Behaviour::Explicit { states, init, trans } => {
            let mut index: HashMap<&str, usize> = HashMap::new();
            for (i, (no, id, _)) in states.iter().enumerate() {
                if index.insert(id.as_str(), i).is_some() {
                    return Err(ModelError::DuplicateId { line: *no, id: id.clone() });
                }
            }
            let lookup = |no: usize, id: &str| {
                index.get(id).copied().ok_or_else(|| ModelError::Dangling { line: no, id: id.to_string() })
            };
            let (init_no, init_id) = init.as_ref().ok_or_else(|| missing("behaviour `init`"))?;
            let q0 = lookup(*init_no, init_id)?;
            let edges = trans
                .iter()
                .map(|(no, a, b)| Ok((lookup(*no, a)?, lookup(*no, b)?)))
                .collect::<Result<Vec<_>, ModelError>>()?;
            let bstates = states.iter().map(|(_, id, obs)| BState { id: id.clone(), obs: obs.clone() }).collect();
            BLevel::new(bstates, q0, edges)
        }
        Behaviour::Rules { init, rules } => {
            let init = init.clone().ok_or_else(|| missing("rules `init`"))?;
            Ok(expand_rules(rules, &doc.sig, init).level)
        }
    }
}

fn build_s(doc: &Document) -> Result<SLevel, ModelError> {
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, (no, id, _)) in doc.s_states.iter().enumerate() {
        if index.insert(id.as_str(), i).is_some() {
            return Err(ModelError::DuplicateId { line: *no, id: id.clone() });
        }
    }
    let lookup = |no: usize, id: &str| {
        index.get(id).copied().ok_or_else(|| ModelError::Dangling { line: no, id: id.to_string() })
    };
    let (init_no, init_id) = doc.s_init.as_ref().ok_or_else(|| missing("structure `init`"))?;
    let r0 = lookup(*init_no, init_id)?;
    let mut transitions = Vec::new();
    for (no, a, b, inv) in &doc.s_trans {
        let t = STransition { source: lookup(*no, a)?, invariant: inv.clone(), target: lookup(*no, b)? };
        if transitions.contains(&t) {
            return Err(ModelError::Syntax {
                line: *no,
                col: 1,
                msg: format!("duplicate structural transition `{a} -> {b}`"),
            });
        }
        transitions.push(t);
    }
    let states = doc.s_states.iter().map(|(_, id, label)| SState { id: id.clone(), label: label.clone() }).collect();
    SLevel::new(states, r0, transitions)
}

/// Parses a model text. Rule-based behaviour is expanded into an explicit
/// machine. Well-formedness beyond syntax is left to [`super::validate`].
pub fn parse_model(text: &str) -> Result<SbSystem, ModelError> {
    let doc = parse_document(text)?;
    if doc.name.is_empty() {
        return Err(missing("`system <id>` header"));
    }
    let b = build_b(&doc)?;
    let s = build_s(&doc)?;
    Ok(SbSystem::new(doc.name, doc.sig, b, s))
}

/// Renders `sys` in the model language, using an explicit behaviour section.
pub fn to_dsl(sys: &SbSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "system {}", sys.name);
    let _ = writeln!(out, "observables");
    for (name, sort) in sys.sig.iter() {
        let _ = writeln!(out, "  {name} : {sort}");
    }
    let _ = writeln!(out, "behaviour explicit");
    // Rule-expanded ids like `(0,1,2)` are not valid DSL ids.
    let ids: Vec<String> = sys
        .b
        .states()
        .iter()
        .enumerate()
        .map(|(i, s)| if is_state_id(&s.id) { s.id.clone() } else { format!("q{i}") })
        .collect();
    for (q, id) in sys.b.states().iter().zip(&ids) {
        let _ = writeln!(out, "  state {id} {{ {} }}", q.obs);
    }
    let _ = writeln!(out, "  init {}", ids[sys.b.initial()]);
    for &(a, b) in sys.b.transitions() {
        let _ = writeln!(out, "  trans {} -> {}", ids[a], ids[b]);
    }
    let _ = writeln!(out, "structure");
    for r in sys.s.states() {
        let _ = writeln!(out, "  state {} : {}", r.id, r.label);
    }
    let _ = writeln!(out, "  init {}", sys.s.state(sys.s.initial()).id);
    for t in sys.s.transitions() {
        let _ =
            writeln!(out, "  trans {} -> {} inv {}", sys.s.state(t.source).id, sys.s.state(t.target).id, t.invariant);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    const HEADER: &str = "system t\nobservables\n  x : int 0..3\n  b : bool\n";

    #[test]
    fn syntax_error_has_location() {
        let text = format!("{HEADER}behaviour explicit\n  state a {{ x=0, b=true\n");
        match parse_model(&text) {
            Err(ModelError::Syntax { line, .. }) => assert_eq!(line, 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicate_ids_rejected() {
        let text = format!(
            "{HEADER}behaviour explicit\n  state a {{ x=0, b=true }}\n  state a {{ x=1, b=true }}\n  init a\nstructure\n  state r : true\n  init r\n"
        );
        assert_eq!(parse_model(&text).unwrap_err(), ModelError::DuplicateId { line: 7, id: "a".into() });
    }

    #[test]
    fn dangling_endpoint_rejected() {
        let text = format!(
            "{HEADER}behaviour explicit\n  state a {{ x=0, b=true }}\n  init a\n  trans a -> z\nstructure\n  state r : true\n  init r\n"
        );
        assert_eq!(parse_model(&text).unwrap_err(), ModelError::Dangling { line: 8, id: "z".into() });
        let text = format!(
            "{HEADER}behaviour explicit\n  state a {{ x=0, b=true }}\n  init a\nstructure\n  state r : true\n  init r\n  trans r -> s inv true\n"
        );
        assert_eq!(parse_model(&text).unwrap_err(), ModelError::Dangling { line: 11, id: "s".into() });
    }

    #[test]
    fn ill_sorted_label_located() {
        let text = format!(
            "{HEADER}behaviour explicit\n  state a {{ x=0, b=true }}\n  init a\nstructure\n  state r : x && b\n  init r\n"
        );
        match parse_model(&text).unwrap_err() {
            ModelError::Formula(e) => {
                let (line, col) = e.position();
                assert_eq!(line, 9);
                assert!(col > 10, "col {col}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn observation_out_of_sort_rejected() {
        let text = format!("{HEADER}behaviour explicit\n  state a {{ x=7, b=true }}\n");
        assert!(matches!(parse_model(&text), Err(ModelError::Observation { line: 6, .. })));
    }

    #[test]
    fn dsl_round_trip_preserves_structure() {
        for (name, sys) in bundled::all() {
            let again = parse_model(&to_dsl(&sys)).unwrap();
            assert_eq!(again.b.len(), sys.b.len(), "{name}");
            assert_eq!(again.b.transitions(), sys.b.transitions(), "{name}");
            assert_eq!(again.s.transitions(), sys.s.transitions(), "{name}");
            assert_eq!(again.s.states(), sys.s.states(), "{name}");
            for q in 0..sys.b.len() {
                assert_eq!(again.b.state(q).obs, sys.b.state(q).obs);
            }
        }
    }
}
