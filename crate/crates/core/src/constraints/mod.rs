//! Quantifier-free constraint language over typed observables.
//!
//! Formulas label structural states (constraints) and structural transitions
//! (adaptation invariants). They range over a [`Signature`] of bounded
//! integer, boolean and enumeration observables and are evaluated against an
//! [`Observation`] of a behavioural state.

mod parse;

use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

pub use parse::{parse_formula, parse_int_expr, FormulaError};

/// Carrier of an observable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Sort {
    BoundedInt { lo: i64, hi: i64 },
    Bool,
    Enum(Vec<String>),
}

impl Sort {
    pub fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (Sort::BoundedInt { lo, hi }, Value::Int(k)) => lo <= k && k <= hi,
            (Sort::Bool, Value::Bool(_)) => true,
            (Sort::Enum(labels), Value::Label(l)) => labels.iter().any(|x| x == l),
            _ => false,
        }
    }

    /// Every value of the carrier, in ascending / declaration order.
    pub fn values(&self) -> Vec<Value> {
        match self {
            Sort::BoundedInt { lo, hi } => (*lo..=*hi).map(Value::Int).collect(),
            Sort::Bool => vec![Value::Bool(false), Value::Bool(true)],
            Sort::Enum(labels) => labels.iter().cloned().map(Value::Label).collect(),
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::BoundedInt { lo, hi } => write!(f, "int {lo}..{hi}"),
            Sort::Bool => f.write_str("bool"),
            Sort::Enum(labels) => write!(f, "enum {{ {} }}", labels.join(", ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("duplicate observable `{0}`")]
    Duplicate(String),
    #[error("invalid observable name `{0}`")]
    BadName(String),
    #[error("observable `{name}`: empty integer range {lo}..{hi}")]
    EmptyRange { name: String, lo: i64, hi: i64 },
    #[error("observable `{0}`: enumeration needs at least one label")]
    EmptyEnum(String),
    #[error("observable `{name}`: duplicate enumeration label `{label}`")]
    DuplicateLabel { name: String, label: String },
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Ordered set of typed observables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    observables: IndexMap<String, Sort>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: &str, sort: Sort) -> Result<(), SignatureError> {
        if !is_identifier(name) || is_keyword(name) {
            return Err(SignatureError::BadName(name.to_string()));
        }
        if self.observables.contains_key(name) {
            return Err(SignatureError::Duplicate(name.to_string()));
        }
        match &sort {
            Sort::BoundedInt { lo, hi } if lo > hi => {
                return Err(SignatureError::EmptyRange { name: name.to_string(), lo: *lo, hi: *hi })
            }
            Sort::Enum(labels) if labels.is_empty() => return Err(SignatureError::EmptyEnum(name.to_string())),
            Sort::Enum(labels) => {
                let mut seen = BTreeSet::new();
                for l in labels {
                    if !seen.insert(l) {
                        return Err(SignatureError::DuplicateLabel { name: name.to_string(), label: l.clone() });
                    }
                }
            }
            _ => {}
        }
        self.observables.insert(name.to_string(), sort);
        Ok(())
    }

    pub fn with(mut self, name: &str, sort: Sort) -> Result<Self, SignatureError> {
        self.add(name, sort)?;
        Ok(self)
    }

    pub fn sort_of(&self, name: &str) -> Option<&Sort> {
        self.observables.get(name)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.observables.get_index_of(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Sort)> {
        self.observables.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.observables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observables.is_empty()
    }

    /// Enumeration sorts declaring `label`.
    fn enums_with_label<'a>(&'a self, label: &'a str) -> impl Iterator<Item = &'a Sort> + 'a {
        self.observables.values().filter(move |s| matches!(s, Sort::Enum(ls) if ls.iter().any(|l| l == label)))
    }
}

/// A value in some sort's carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Label(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(k) => write!(f, "{k}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Label(l) => f.write_str(l),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObservationError {
    #[error("observable `{0}` is not declared")]
    Unknown(String),
    #[error("observable `{0}` has no value")]
    Missing(String),
    #[error("observable `{name}` assigned twice")]
    Duplicate { name: String },
    #[error("value `{value}` is outside the sort of `{name}` ({sort})")]
    OutOfSort { name: String, value: Value, sort: Sort },
}

/// Total assignment of values to the observables of a signature, kept in
/// signature order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Observation {
    values: Vec<(String, Value)>,
}

impl Observation {
    /// Builds an observation from `(name, value)` pairs given in any order.
    pub fn new<I, S>(sig: &Signature, pairs: I) -> Result<Self, ObservationError>
    where
        I: IntoIterator<Item = (S, Value)>,
        S: Into<String>,
    {
        let mut slots: Vec<Option<Value>> = vec![None; sig.len()];
        for (name, value) in pairs {
            let name = name.into();
            let idx = sig.index_of(&name).ok_or_else(|| ObservationError::Unknown(name.clone()))?;
            let sort = sig.sort_of(&name).expect("indexed");
            if !sort.contains(&value) {
                return Err(ObservationError::OutOfSort { name, value, sort: sort.clone() });
            }
            if slots[idx].replace(value).is_some() {
                return Err(ObservationError::Duplicate { name });
            }
        }
        let values = sig
            .iter()
            .zip(slots)
            .map(|((name, _), v)| {
                v.map(|v| (name.to_string(), v)).ok_or_else(|| ObservationError::Missing(name.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { values })
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.values.iter().map(|(n, v)| (n.as_str(), v))
    }

    pub fn values(&self) -> impl Iterator<Item = &Value> {
        self.values.iter().map(|(_, v)| v)
    }

    /// Replaces values positionally; the caller guarantees sort conformance.
    pub(crate) fn with_values(&self, values: Vec<Value>) -> Self {
        Self { values: self.values.iter().zip(values).map(|((n, _), v)| (n.clone(), v)).collect() }
    }

    /// `(v1,v2,...)` in signature order.
    pub fn render_tuple(&self) -> String {
        let parts: Vec<String> = self.values().map(Value::to_string).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(n, v)| format!("{n}={v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoolOp {
    And,
    Or,
    Implies,
    Iff,
}

/// Formula / term AST. Integer terms and boolean formulas share one tree;
/// well-sortedness is established by [`typecheck`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    BoolConst(bool),
    Var(String),
    IntConst(i64),
    EnumConst(String),
    Arith(ArithOp, Box<Formula>, Box<Formula>),
    Cmp(CmpOp, Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Bin(BoolOp, Box<Formula>, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn bin(op: BoolOp, a: Formula, b: Formula) -> Self {
        Formula::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn cmp(op: CmpOp, a: Formula, b: Formula) -> Self {
        Formula::Cmp(op, Box::new(a), Box::new(b))
    }

    pub fn arith(op: ArithOp, a: Formula, b: Formula) -> Self {
        Formula::Arith(op, Box::new(a), Box::new(b))
    }

    pub fn var(name: &str) -> Self {
        Formula::Var(name.to_string())
    }

    /// Conjunction of `parts`; `true` when empty.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts.into_iter().reduce(|a, b| Formula::bin(BoolOp::And, a, b)).unwrap_or(Formula::BoolConst(true))
    }
}

/// Names of the observables occurring in `phi`.
pub fn free_observables(phi: &Formula) -> BTreeSet<String> {
    fn walk(f: &Formula, out: &mut BTreeSet<String>) {
        match f {
            Formula::Var(n) => {
                out.insert(n.clone());
            }
            Formula::BoolConst(_) | Formula::IntConst(_) | Formula::EnumConst(_) => {}
            Formula::Not(a) => walk(a, out),
            Formula::Arith(_, a, b) | Formula::Cmp(_, a, b) | Formula::Bin(_, a, b) => {
                walk(a, out);
                walk(b, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(phi, &mut out);
    out
}

/// Sort of a term during type checking. Bare enumeration labels stay
/// unresolved until compared against an enum-sorted term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Ty {
    Int,
    Bool,
    Enum(Vec<String>),
    Label(String),
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Int => f.write_str("int"),
            Ty::Bool => f.write_str("bool"),
            Ty::Enum(ls) => write!(f, "enum {{ {} }}", ls.join(", ")),
            Ty::Label(l) => write!(f, "label `{l}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TypeIssue {
    UnknownIdent(String),
    Mismatch(String),
}

pub(crate) fn leaf_type(sig: &Signature, f: &Formula) -> Result<Ty, TypeIssue> {
    match f {
        Formula::BoolConst(_) => Ok(Ty::Bool),
        Formula::IntConst(_) => Ok(Ty::Int),
        Formula::Var(n) => match sig.sort_of(n) {
            Some(Sort::BoundedInt { .. }) => Ok(Ty::Int),
            Some(Sort::Bool) => Ok(Ty::Bool),
            Some(Sort::Enum(ls)) => Ok(Ty::Enum(ls.clone())),
            None => Err(TypeIssue::UnknownIdent(n.clone())),
        },
        Formula::EnumConst(l) => {
            if sig.enums_with_label(l).next().is_some() {
                Ok(Ty::Label(l.clone()))
            } else {
                Err(TypeIssue::UnknownIdent(l.clone()))
            }
        }
        _ => unreachable!("leaf_type on compound node"),
    }
}

fn labels_compatible(a: &Ty, b: &Ty) -> bool {
    match (a, b) {
        (Ty::Enum(x), Ty::Enum(y)) => x == y,
        (Ty::Enum(x), Ty::Label(l)) | (Ty::Label(l), Ty::Enum(x)) => x.contains(l),
        (Ty::Label(_), Ty::Label(_)) => true,
        _ => false,
    }
}

pub(crate) fn unary_not_type(t: &Ty) -> Result<Ty, TypeIssue> {
    match t {
        Ty::Bool => Ok(Ty::Bool),
        other => Err(TypeIssue::Mismatch(format!("`!` expects a boolean, found {other}"))),
    }
}

pub(crate) fn arith_type(op: ArithOp, a: &Ty, b: &Ty) -> Result<Ty, TypeIssue> {
    match (a, b) {
        (Ty::Int, Ty::Int) => Ok(Ty::Int),
        _ => Err(TypeIssue::Mismatch(format!("`{}` expects integer operands, found {a} and {b}", arith_symbol(op)))),
    }
}

pub(crate) fn cmp_type(op: CmpOp, a: &Ty, b: &Ty) -> Result<Ty, TypeIssue> {
    let ok = match op {
        CmpOp::Eq | CmpOp::Ne => matches!((a, b), (Ty::Int, Ty::Int) | (Ty::Bool, Ty::Bool)) || labels_compatible(a, b),
        _ => matches!((a, b), (Ty::Int, Ty::Int)),
    };
    if ok {
        Ok(Ty::Bool)
    } else {
        Err(TypeIssue::Mismatch(format!("`{}` cannot compare {a} with {b}", cmp_symbol(op))))
    }
}

pub(crate) fn bool_type(op: BoolOp, a: &Ty, b: &Ty) -> Result<Ty, TypeIssue> {
    match (a, b) {
        (Ty::Bool, Ty::Bool) => Ok(Ty::Bool),
        _ => Err(TypeIssue::Mismatch(format!("`{}` expects boolean operands, found {a} and {b}", bool_symbol(op)))),
    }
}

/// Well-formedness failure of an already-built formula.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaTypeError {
    #[error("unknown observable `{0}`")]
    UnknownObservable(String),
    #[error("sort mismatch: {0}")]
    SortMismatch(String),
    #[error("expected a boolean formula, found {0}")]
    NotBoolean(String),
    #[error("expected an integer expression, found {0}")]
    NotInteger(String),
}

impl From<TypeIssue> for FormulaTypeError {
    fn from(i: TypeIssue) -> Self {
        match i {
            TypeIssue::UnknownIdent(n) => FormulaTypeError::UnknownObservable(n),
            TypeIssue::Mismatch(m) => FormulaTypeError::SortMismatch(m),
        }
    }
}

pub(crate) fn type_of(sig: &Signature, f: &Formula) -> Result<Ty, TypeIssue> {
    match f {
        Formula::BoolConst(_) | Formula::IntConst(_) | Formula::Var(_) | Formula::EnumConst(_) => leaf_type(sig, f),
        Formula::Not(a) => unary_not_type(&type_of(sig, a)?),
        Formula::Arith(op, a, b) => arith_type(*op, &type_of(sig, a)?, &type_of(sig, b)?),
        Formula::Cmp(op, a, b) => cmp_type(*op, &type_of(sig, a)?, &type_of(sig, b)?),
        Formula::Bin(op, a, b) => bool_type(*op, &type_of(sig, a)?, &type_of(sig, b)?),
    }
}

/// Checks that `phi` is a well-sorted boolean formula over `sig`.
pub fn typecheck(phi: &Formula, sig: &Signature) -> Result<(), FormulaTypeError> {
    match type_of(sig, phi)? {
        Ty::Bool => Ok(()),
        other => Err(FormulaTypeError::NotBoolean(other.to_string())),
    }
}

/// Checks that `e` is a well-sorted integer expression over `sig`.
pub fn typecheck_int(e: &Formula, sig: &Signature) -> Result<(), FormulaTypeError> {
    match type_of(sig, e)? {
        Ty::Int => Ok(()),
        other => Err(FormulaTypeError::NotInteger(other.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Val<'a> {
    Int(i128),
    Bool(bool),
    Label(&'a str),
}

fn eval_term<'a>(f: &'a Formula, o: &'a Observation) -> Val<'a> {
    match f {
        Formula::BoolConst(b) => Val::Bool(*b),
        Formula::IntConst(k) => Val::Int(i128::from(*k)),
        Formula::EnumConst(l) => Val::Label(l),
        Formula::Var(n) => match o.get(n) {
            Some(Value::Int(k)) => Val::Int(i128::from(*k)),
            Some(Value::Bool(b)) => Val::Bool(*b),
            Some(Value::Label(l)) => Val::Label(l),
            None => panic!("observable `{n}` missing from observation"),
        },
        Formula::Arith(op, a, b) => {
            let (Val::Int(x), Val::Int(y)) = (eval_term(a, o), eval_term(b, o)) else {
                panic!("ill-sorted arithmetic");
            };
            Val::Int(match op {
                ArithOp::Add => x + y,
                ArithOp::Sub => x - y,
                ArithOp::Mul => x * y,
            })
        }
        Formula::Cmp(op, a, b) => {
            let (x, y) = (eval_term(a, o), eval_term(b, o));
            Val::Bool(match op {
                CmpOp::Eq => x == y,
                CmpOp::Ne => x != y,
                _ => {
                    let (Val::Int(x), Val::Int(y)) = (x, y) else {
                        panic!("ordering on non-integer terms");
                    };
                    match op {
                        CmpOp::Lt => x < y,
                        CmpOp::Le => x <= y,
                        CmpOp::Gt => x > y,
                        CmpOp::Ge => x >= y,
                        CmpOp::Eq | CmpOp::Ne => unreachable!(),
                    }
                }
            })
        }
        Formula::Not(a) => Val::Bool(!eval_bool(a, o)),
        Formula::Bin(op, a, b) => {
            let x = eval_bool(a, o);
            Val::Bool(match op {
                BoolOp::And => x && eval_bool(b, o),
                BoolOp::Or => x || eval_bool(b, o),
                BoolOp::Implies => !x || eval_bool(b, o),
                BoolOp::Iff => x == eval_bool(b, o),
            })
        }
    }
}

fn eval_bool(f: &Formula, o: &Observation) -> bool {
    match eval_term(f, o) {
        Val::Bool(b) => b,
        other => panic!("expected boolean, got {other:?}"),
    }
}

/// Satisfaction `o ⊨ phi`.
///
/// Arithmetic is exact; intermediate values may leave the declared bounds.
/// Panics if `phi` is ill-sorted or mentions an observable missing from
/// `o`; both are ruled out by [`typecheck`].
pub fn evaluate(phi: &Formula, o: &Observation) -> bool {
    eval_bool(phi, o)
}

/// Value of an integer expression under `o`.
pub fn evaluate_int(e: &Formula, o: &Observation) -> i128 {
    match eval_term(e, o) {
        Val::Int(k) => k,
        other => panic!("expected integer, got {other:?}"),
    }
}

pub(crate) fn is_keyword(s: &str) -> bool {
    matches!(s, "true" | "false")
}

fn arith_symbol(op: ArithOp) -> &'static str {
    match op {
        ArithOp::Add => "+",
        ArithOp::Sub => "-",
        ArithOp::Mul => "*",
    }
}

fn cmp_symbol(op: CmpOp) -> &'static str {
    match op {
        CmpOp::Eq => "==",
        CmpOp::Ne => "!=",
        CmpOp::Lt => "<",
        CmpOp::Le => "<=",
        CmpOp::Gt => ">",
        CmpOp::Ge => ">=",
    }
}

fn bool_symbol(op: BoolOp) -> &'static str {
    match op {
        BoolOp::And => "&&",
        BoolOp::Or => "||",
        BoolOp::Implies => "=>",
        BoolOp::Iff => "<=>",
    }
}

// Binding strength, loosest first.
const PREC_IFF: u8 = 1;
const PREC_IMPLIES: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_CMP: u8 = 5;
const PREC_ADD: u8 = 6;
const PREC_MUL: u8 = 7;
const PREC_NOT: u8 = 8;
const PREC_ATOM: u8 = 9;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Bin(BoolOp::Iff, ..) => PREC_IFF,
        Formula::Bin(BoolOp::Implies, ..) => PREC_IMPLIES,
        Formula::Bin(BoolOp::Or, ..) => PREC_OR,
        Formula::Bin(BoolOp::And, ..) => PREC_AND,
        Formula::Cmp(..) => PREC_CMP,
        Formula::Arith(ArithOp::Add | ArithOp::Sub, ..) => PREC_ADD,
        Formula::Arith(ArithOp::Mul, ..) => PREC_MUL,
        Formula::Not(_) => PREC_NOT,
        _ => PREC_ATOM,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, min: u8) -> fmt::Result {
    if precedence(child) < min {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::BoolConst(b) => write!(f, "{b}"),
            Formula::Var(n) | Formula::EnumConst(n) => f.write_str(n),
            Formula::IntConst(k) => write!(f, "{k}"),
            Formula::Not(a) => {
                f.write_str("!")?;
                write_child(f, a, PREC_NOT)
            }
            Formula::Arith(op, a, b) => {
                let p = precedence(self);
                write_child(f, a, p)?;
                write!(f, " {} ", arith_symbol(*op))?;
                write_child(f, b, p + 1)
            }
            Formula::Cmp(op, a, b) => {
                write_child(f, a, PREC_ADD)?;
                write!(f, " {} ", cmp_symbol(*op))?;
                write_child(f, b, PREC_ADD)
            }
            Formula::Bin(op, a, b) => {
                let p = precedence(self);
                // `=>` associates to the right, the others to the left.
                let (lmin, rmin) = if *op == BoolOp::Implies { (p + 1, p) } else { (p, p + 1) };
                write_child(f, a, lmin)?;
                write!(f, " {} ", bool_symbol(*op))?;
                write_child(f, b, rmin)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atv_sig() -> Signature {
        Signature::new()
            .with("velocity", Sort::BoundedInt { lo: 0, hi: 10 })
            .unwrap()
            .with("congestion", Sort::Bool)
            .unwrap()
    }

    fn bone_sig() -> Signature {
        Signature::new()
            .with("Oc", Sort::BoundedInt { lo: 0, hi: 2 })
            .unwrap()
            .with("Ob", Sort::BoundedInt { lo: 0, hi: 4 })
            .unwrap()
            .with("Oy", Sort::BoundedInt { lo: 0, hi: 2 })
            .unwrap()
    }

    fn bone_obs(sig: &Signature, oc: i64, ob: i64, oy: i64) -> Observation {
        Observation::new(sig, [("Oc", Value::Int(oc)), ("Ob", Value::Int(ob)), ("Oy", Value::Int(oy))]).unwrap()
    }

    #[test]
    fn congestion_formula_evaluates() {
        let sig = atv_sig();
        let phi = parse_formula("(congestion => velocity < 5) && (!congestion => velocity > 0)", &sig).unwrap();
        let o = Observation::new(&sig, [("velocity", Value::Int(3)), ("congestion", Value::Bool(true))]).unwrap();
        assert!(evaluate(&phi, &o));
        let o = Observation::new(&sig, [("velocity", Value::Int(0)), ("congestion", Value::Bool(false))]).unwrap();
        assert!(!evaluate(&phi, &o));
    }

    #[test]
    fn resorption_label() {
        let sig = bone_sig();
        let phi = parse_formula("Oc>0 && Ob==0 && Oy==0", &sig).unwrap();
        assert!(evaluate(&phi, &bone_obs(&sig, 2, 0, 0)));
        let over = parse_formula("Oy==2 && Oc==0 && Ob==0", &sig).unwrap();
        assert!(!evaluate(&over, &bone_obs(&sig, 0, 1, 2)));
    }

    #[test]
    fn arithmetic_is_unbounded() {
        let sig = bone_sig();
        let phi = parse_formula("Ob * 1000 - 4002 < 0 - 1", &sig).unwrap();
        assert!(evaluate(&phi, &bone_obs(&sig, 0, 4, 0)));
        let phi = parse_formula("Ob < 2*Oc", &sig).unwrap();
        assert!(evaluate(&phi, &bone_obs(&sig, 2, 3, 0)));
        assert!(!evaluate(&phi, &bone_obs(&sig, 1, 2, 0)));
    }

    #[test]
    fn free_observables_examples() {
        let sig = bone_sig();
        assert!(free_observables(&Formula::BoolConst(true)).is_empty());
        let phi = parse_formula("Oc>0 && Ob==0 && Oy==0", &sig).unwrap();
        let names: Vec<_> = free_observables(&phi).into_iter().collect();
        assert_eq!(names, ["Ob", "Oc", "Oy"]);

        let vsig = Signature::new().with("v", Sort::Enum(vec!["V0".into(), "V1".into(), "V2".into()])).unwrap();
        let phi = parse_formula("v==V0 || v==V1", &vsig).unwrap();
        assert_eq!(free_observables(&phi).into_iter().collect::<Vec<_>>(), ["v"]);
    }

    #[test]
    fn enum_ordering_rejected() {
        let vsig = Signature::new().with("v", Sort::Enum(vec!["V0".into(), "V1".into()])).unwrap();
        assert!(parse_formula("v == V1", &vsig).is_ok());
        let err = parse_formula("v < V1", &vsig).unwrap_err();
        assert!(matches!(err, parse::FormulaError::SortMismatch { .. }), "{err}");
    }

    #[test]
    fn signature_rejects_bad_declarations() {
        let mut sig = Signature::new();
        sig.add("x", Sort::Bool).unwrap();
        assert_eq!(sig.add("x", Sort::Bool), Err(SignatureError::Duplicate("x".into())));
        assert!(matches!(sig.add("y", Sort::BoundedInt { lo: 3, hi: 2 }), Err(SignatureError::EmptyRange { .. })));
        assert!(matches!(sig.add("z", Sort::Enum(vec![])), Err(SignatureError::EmptyEnum(_))));
        assert!(matches!(
            sig.add("w", Sort::Enum(vec!["A".into(), "A".into()])),
            Err(SignatureError::DuplicateLabel { .. })
        ));
        assert!(matches!(sig.add("true", Sort::Bool), Err(SignatureError::BadName(_))));
    }

    #[test]
    fn observation_must_be_total_and_in_sort() {
        let sig = bone_sig();
        assert_eq!(
            Observation::new(&sig, [("Oc", Value::Int(0)), ("Ob", Value::Int(0))]),
            Err(ObservationError::Missing("Oy".into()))
        );
        assert!(matches!(
            Observation::new(&sig, [("Oc", Value::Int(3)), ("Ob", Value::Int(0)), ("Oy", Value::Int(0))]),
            Err(ObservationError::OutOfSort { .. })
        ));
    }

    #[test]
    fn printing_respects_associativity() {
        let sig = bone_sig();
        for text in [
            "Oc - (Ob - Oy) == 0",
            "Oc - Ob - Oy == 0",
            "Oc > 0 => Ob > 0 => Oy > 0",
            "(Oc > 0 => Ob > 0) => Oy > 0",
            "!(Oc > 0 && Ob > 0) || Oy == 1",
            "Oc > 0 <=> (Ob > 0 <=> Oy > 0)",
        ] {
            let f = parse_formula(text, &sig).unwrap();
            let again = parse_formula(&f.to_string(), &sig).unwrap();
            assert_eq!(f, again, "{text} -> {f}");
        }
    }
}
