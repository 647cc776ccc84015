//! Explicit-state CTL over [`Kripke`] structures.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::kripke::{Atom, Kripke};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ctl {
    True,
    False,
    Atom(Atom),
    Not(Box<Ctl>),
    And(Box<Ctl>, Box<Ctl>),
    Or(Box<Ctl>, Box<Ctl>),
    Implies(Box<Ctl>, Box<Ctl>),
    EX(Box<Ctl>),
    AX(Box<Ctl>),
    EF(Box<Ctl>),
    AF(Box<Ctl>),
    EG(Box<Ctl>),
    AG(Box<Ctl>),
    EU(Box<Ctl>, Box<Ctl>),
    AU(Box<Ctl>, Box<Ctl>),
}

use Ctl::*;

impl Ctl {
    pub fn atom(a: Atom) -> Self {
        Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Ctl) -> Self {
        Not(Box::new(a))
    }

    pub fn and(a: Ctl, b: Ctl) -> Self {
        And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Ctl, b: Ctl) -> Self {
        Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Ctl, b: Ctl) -> Self {
        Implies(Box::new(a), Box::new(b))
    }

    pub fn ex(a: Ctl) -> Self {
        EX(Box::new(a))
    }

    pub fn ax(a: Ctl) -> Self {
        AX(Box::new(a))
    }

    pub fn ef(a: Ctl) -> Self {
        EF(Box::new(a))
    }

    pub fn af(a: Ctl) -> Self {
        AF(Box::new(a))
    }

    pub fn eg(a: Ctl) -> Self {
        EG(Box::new(a))
    }

    pub fn ag(a: Ctl) -> Self {
        AG(Box::new(a))
    }

    pub fn eu(a: Ctl, b: Ctl) -> Self {
        EU(Box::new(a), Box::new(b))
    }

    pub fn au(a: Ctl, b: Ctl) -> Self {
        AU(Box::new(a), Box::new(b))
    }

    /// `(adapting ⇒ EF steady) ∧ progress`
    pub fn weak_inner() -> Self {
        Ctl::and(Ctl::implies(Atom(Atom::Adapting), Ctl::ef(Atom(Atom::Steady))), Atom(Atom::Progress))
    }

    /// `(adapting ⇒ AF steady) ∧ progress`
    pub fn strong_inner() -> Self {
        Ctl::and(Ctl::implies(Atom(Atom::Adapting), Ctl::af(Atom(Atom::Steady))), Atom(Atom::Progress))
    }

    /// `EG((adapting ⇒ EF steady) ∧ progress)`
    pub fn weak() -> Self {
        Ctl::eg(Self::weak_inner())
    }

    /// `AG((adapting ⇒ AF steady) ∧ progress)`
    pub fn strong() -> Self {
        Ctl::ag(Self::strong_inner())
    }

    /// Rewrites into `true`, atoms, `¬`, `∧`, `∨`, `⇒`, `EX`, `E[U]`, `A[U]`.
    pub fn desugar(&self) -> Ctl {
        match self {
            True | Atom(_) => self.clone(),
            False => Ctl::not(True),
            Not(a) => Ctl::not(a.desugar()),
            And(a, b) => Ctl::and(a.desugar(), b.desugar()),
            Or(a, b) => Ctl::or(a.desugar(), b.desugar()),
            Implies(a, b) => Ctl::implies(a.desugar(), b.desugar()),
            EX(a) => Ctl::ex(a.desugar()),
            AX(a) => Ctl::not(Ctl::ex(Ctl::not(a.desugar()))),
            EF(a) => Ctl::eu(True, a.desugar()),
            AF(a) => Ctl::au(True, a.desugar()),
            EG(a) => Ctl::not(Ctl::au(True, Ctl::not(a.desugar()))),
            AG(a) => Ctl::not(Ctl::eu(True, Ctl::not(a.desugar()))),
            EU(a, b) => Ctl::eu(a.desugar(), b.desugar()),
            AU(a, b) => Ctl::au(a.desugar(), b.desugar()),
        }
    }

    /// Temporal nesting depth plus boolean structure, counting every node.
    pub fn depth(&self) -> usize {
        match self {
            True | False | Atom(_) => 0,
            Not(a) | EX(a) | AX(a) | EF(a) | AF(a) | EG(a) | AG(a) => 1 + a.depth(),
            And(a, b) | Or(a, b) | Implies(a, b) | EU(a, b) | AU(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Implies(..) => 1,
            Or(..) => 2,
            And(..) => 3,
            _ => 4,
        }
    }
}

struct Paren<'a>(&'a Ctl, u8);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.prec() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Ctl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            True => f.write_str("true"),
            False => f.write_str("false"),
            Atom(a) => write!(f, "{a}"),
            Not(a) => write!(f, "!{}", Paren(a, 4)),
            And(a, b) => write!(f, "{} && {}", Paren(a, 3), Paren(b, 4)),
            Or(a, b) => write!(f, "{} || {}", Paren(a, 2), Paren(b, 3)),
            Implies(a, b) => write!(f, "{} => {}", Paren(a, 2), Paren(b, 1)),
            EX(a) => write!(f, "EX {}", Paren(a, 4)),
            AX(a) => write!(f, "AX {}", Paren(a, 4)),
            EF(a) => write!(f, "EF {}", Paren(a, 4)),
            AF(a) => write!(f, "AF {}", Paren(a, 4)),
            EG(a) => write!(f, "EG {}", Paren(a, 4)),
            AG(a) => write!(f, "AG {}", Paren(a, 4)),
            EU(a, b) => write!(f, "E[{a} U {b}]"),
            AU(a, b) => write!(f, "A[{a} U {b}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CtlError {
    #[error("column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("column {col}: unknown atomic proposition `{name}` (expected adapting, steady or progress)")]
    UnknownAtom { col: usize, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Not,
    And,
    Or,
    Implies,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, CtlError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let two = chars.get(i + 1).copied();
        let (tok, len) = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '[' => (Tok::LBrack, 1),
            ']' => (Tok::RBrack, 1),
            '!' | '¬' => (Tok::Not, 1),
            '∧' => (Tok::And, 1),
            '∨' => (Tok::Or, 1),
            '⇒' | '→' => (Tok::Implies, 1),
            '&' if two == Some('&') => (Tok::And, 2),
            '|' if two == Some('|') => (Tok::Or, 2),
            '=' if two == Some('>') => (Tok::Implies, 2),
            '-' if two == Some('>') => (Tok::Implies, 2),
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((col, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => return Err(CtlError::Syntax { col, msg: format!("unexpected character `{other}`") }),
        };
        out.push((col, tok));
        i += len;
    }
    out.push((chars.len() + 1, Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn col(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), CtlError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(CtlError::Syntax { col: self.col(), msg: format!("expected {what}") })
        }
    }

    fn implies(&mut self) -> Result<Ctl, CtlError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            return Ok(Ctl::implies(lhs, self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Ctl, CtlError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Ctl::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Ctl, CtlError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Ctl::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<(Ctl, Ctl), CtlError> {
        self.expect(Tok::LBrack, "`[` after path quantifier")?;
        let a = self.implies()?;
        if *self.peek() != Tok::Ident("U".into()) {
            return Err(CtlError::Syntax { col: self.col(), msg: "expected `U`".into() });
        }
        self.bump();
        let b = self.implies()?;
        self.expect(Tok::RBrack, "`]`")?;
        Ok((a, b))
    }

    fn unary(&mut self) -> Result<Ctl, CtlError> {
        let col = self.col();
        match self.bump() {
            Tok::Not => Ok(Ctl::not(self.unary()?)),
            Tok::LParen => {
                let inner = self.implies()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "true" => Ok(True),
                "false" => Ok(False),
                "adapting" => Ok(Atom(Atom::Adapting)),
                "steady" => Ok(Atom(Atom::Steady)),
                "progress" => Ok(Atom(Atom::Progress)),
                "EX" => Ok(Ctl::ex(self.unary()?)),
                "AX" => Ok(Ctl::ax(self.unary()?)),
                "EF" => Ok(Ctl::ef(self.unary()?)),
                "AF" => Ok(Ctl::af(self.unary()?)),
                "EG" => Ok(Ctl::eg(self.unary()?)),
                "AG" => Ok(Ctl::ag(self.unary()?)),
                "E" => self.until().map(|(a, b)| Ctl::eu(a, b)),
                "A" => self.until().map(|(a, b)| Ctl::au(a, b)),
                _ => Err(CtlError::UnknownAtom { col, name }),
            },
            Tok::End => Err(CtlError::Syntax { col, msg: "unexpected end of formula".into() }),
            other => Err(CtlError::Syntax { col, msg: format!("unexpected {other:?}") }),
        }
    }
}

/// Parses a CTL formula. Binding from loosest: `=>` (right-associative),
/// `||`, `&&`, then `!` and the unary path operators.
/// `E[a U b]` and `A[a U b]` for until. Unicode `¬ ∧ ∨ ⇒` are accepted.
pub fn parse_ctl(text: &str) -> Result<Ctl, CtlError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.implies()?;
    if *p.peek() != Tok::End {
        return Err(CtlError::Syntax { col: p.col(), msg: "trailing input".into() });
    }
    Ok(f)
}

/// A set of Kripke states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatSet {
    bits: Vec<bool>,
}

impl SatSet {
    pub fn empty(n: usize) -> Self {
        Self { bits: vec![false; n] }
    }

    pub fn full(n: usize) -> Self {
        Self { bits: vec![true; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn contains(&self, t: usize) -> bool {
        self.bits[t]
    }

    pub fn insert(&mut self, t: usize) -> bool {
        !std::mem::replace(&mut self.bits[t], true)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn complement(&self) -> Self {
        Self { bits: self.bits.iter().map(|b| !b).collect() }
    }

    pub fn intersect(&self, other: &SatSet) -> Self {
        Self { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a && *b).collect() }
    }

    pub fn is_subset(&self, other: &SatSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| !a || *b)
    }
}

fn zip_with(a: &SatSet, b: &SatSet, f: impl Fn(bool, bool) -> bool) -> SatSet {
    SatSet { bits: a.bits.iter().zip(&b.bits).map(|(x, y)| f(*x, *y)).collect() }
}

fn sat_ex(k: &Kripke, a: &SatSet) -> SatSet {
    let mut out = SatSet::empty(k.len());
    for s in a.iter() {
        for &p in k.predecessors(s) {
            out.bits[p] = true;
        }
    }
    out
}

fn sat_eu(k: &Kripke, a: &SatSet, b: &SatSet) -> SatSet {
    let mut out = b.clone();
    let mut queue: VecDeque<usize> = b.iter().collect();
    while let Some(s) = queue.pop_front() {
        for &p in k.predecessors(s) {
            if !out.bits[p] && a.bits[p] {
                out.bits[p] = true;
                queue.push_back(p);
            }
        }
    }
    out
}

fn sat_au(k: &Kripke, a: &SatSet, b: &SatSet) -> SatSet {
    let mut out = b.clone();
    let mut pending: Vec<usize> = (0..k.len()).map(|t| k.successors(t).len()).collect();
    let mut queue: VecDeque<usize> = b.iter().collect();
    while let Some(s) = queue.pop_front() {
        for &p in k.predecessors(s) {
            if !out.bits[p] && a.bits[p] {
                pending[p] -= 1;
                if pending[p] == 0 {
                    out.bits[p] = true;
                    queue.push_back(p);
                }
            }
        }
    }
    out
}

fn sat_eg(k: &Kripke, a: &SatSet) -> SatSet {
    let mut out = a.clone();
    let mut live: Vec<usize> = (0..k.len()).map(|t| k.successors(t).iter().filter(|&&u| a.bits[u]).count()).collect();
    let mut queue: VecDeque<usize> = a.iter().filter(|&t| live[t] == 0).collect();
    for &t in &queue {
        out.bits[t] = false;
    }
    while let Some(s) = queue.pop_front() {
        for &p in k.predecessors(s) {
            if out.bits[p] {
                live[p] -= 1;
                if live[p] == 0 {
                    out.bits[p] = false;
                    queue.push_back(p);
                }
            }
        }
    }
    out
}

/// Strongly connected components of the subgraph induced by `mask`.
/// Returns a component id per state (`usize::MAX` outside `mask`) and the
/// number of components. Iterative Tarjan.
pub fn scc(k: &Kripke, mask: &SatSet) -> (Vec<usize>, usize) {
    const NONE: usize = usize::MAX;
    let n = k.len();
    let mut index = vec![NONE; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![NONE; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    let mut ncomp = 0;
    for root in mask.iter() {
        if index[root] != NONE {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let succ = k.successors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if !mask.bits[w] {
                    continue;
                }
                if index[w] == NONE {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    (comp, ncomp)
}

/// States of `mask` lying in a component that contains a cycle within
/// `mask` and, if `fair` is given, a state of `fair`.
fn cyclic_core(k: &Kripke, mask: &SatSet, fair: Option<&SatSet>) -> SatSet {
    let (comp, ncomp) = scc(k, mask);
    let mut size = vec![0usize; ncomp];
    let mut looped = vec![false; ncomp];
    let mut has_fair = vec![fair.is_none(); ncomp];
    for t in mask.iter() {
        let c = comp[t];
        size[c] += 1;
        if k.successors(t).contains(&t) {
            looped[c] = true;
        }
        if fair.is_some_and(|f| f.contains(t)) {
            has_fair[c] = true;
        }
    }
    let good: Vec<bool> = (0..ncomp).map(|c| (size[c] > 1 || looped[c]) && has_fair[c]).collect();
    SatSet { bits: (0..k.len()).map(|t| mask.bits[t] && good[comp[t]]).collect() }
}

/// `EG a` restricted to paths that visit `fair` infinitely often.
pub fn sat_eg_fair(k: &Kripke, a: &SatSet, fair: &SatSet) -> SatSet {
    let core = cyclic_core(k, a, Some(fair));
    sat_eu(k, a, &core)
}

/// `{t | t ⊨ phi}`.
pub fn sat_set(k: &Kripke, phi: &Ctl) -> SatSet {
    let n = k.len();
    match phi {
        True => SatSet::full(n),
        False => SatSet::empty(n),
        Atom(a) => SatSet { bits: (0..n).map(|t| k.labels(t).contains(*a)).collect() },
        Not(a) => sat_set(k, a).complement(),
        And(a, b) => zip_with(&sat_set(k, a), &sat_set(k, b), |x, y| x && y),
        Or(a, b) => zip_with(&sat_set(k, a), &sat_set(k, b), |x, y| x || y),
        Implies(a, b) => zip_with(&sat_set(k, a), &sat_set(k, b), |x, y| !x || y),
        EX(a) => sat_ex(k, &sat_set(k, a)),
        AX(a) => sat_ex(k, &sat_set(k, a).complement()).complement(),
        EF(a) => sat_eu(k, &SatSet::full(n), &sat_set(k, a)),
        AF(a) => sat_au(k, &SatSet::full(n), &sat_set(k, a)),
        EG(a) => sat_eg(k, &sat_set(k, a)),
        AG(a) => sat_eu(k, &SatSet::full(n), &sat_set(k, a).complement()).complement(),
        EU(a, b) => sat_eu(k, &sat_set(k, a), &sat_set(k, b)),
        AU(a, b) => sat_au(k, &sat_set(k, a), &sat_set(k, b)),
    }
}

pub fn holds_at(k: &Kripke, phi: &Ctl, t: usize) -> bool {
    sat_set(k, phi).contains(t)
}

/// A finite prefix followed by a cycle that repeats forever. The last prefix
/// state (or the start, if the prefix is empty) steps to `cycle[0]`; the last
/// cycle state steps back to `cycle[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl Lasso {
    pub fn start(&self) -> usize {
        self.prefix.first().copied().unwrap_or(self.cycle[0])
    }

    pub fn states(&self) -> impl Iterator<Item = usize> + '_ {
        self.prefix.iter().chain(&self.cycle).copied()
    }

    /// Consecutive states are connected and the cycle closes.
    pub fn is_path_in(&self, k: &Kripke) -> bool {
        if self.cycle.is_empty() {
            return false;
        }
        let seq: Vec<usize> = self.states().chain(std::iter::once(self.cycle[0])).collect();
        seq.windows(2).all(|w| k.successors(w[0]).contains(&w[1]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("state {0} does not satisfy the path formula; no witness exists")]
    NotSatisfied(usize),
    #[error("state {0} satisfies the invariant everywhere reachable; no counterexample exists")]
    NoViolation(usize),
}

/// Breadth-first shortest path from any of `from` (in order) to a state in
/// `goal`, moving only through `allowed`. Ties resolve towards lower state
/// indices. The returned path starts at one of `from`.
fn bfs(
    k: &Kripke,
    from: &[usize],
    allowed: impl Fn(usize) -> bool,
    goal: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let n = k.len();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in from {
        if allowed(s) && !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if goal(v) {
            let mut path = vec![v];
            let mut cur = v;
            while parent[cur] != usize::MAX {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in k.successors(v) {
            if allowed(w) && !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Shortest cycle through `v` inside `within`, passing through some state of
/// `via` if given. Returned without repeating `v` at the end.
fn cycle_through(k: &Kripke, v: usize, within: &SatSet, via: Option<&SatSet>) -> Option<Vec<usize>> {
    let inside = |u: usize| within.contains(u);
    let mut cycle = match via {
        Some(f) if f.contains(v) => vec![v],
        Some(f) => bfs(k, &[v], inside, |u| f.contains(u))?,
        None => vec![v],
    };
    let last = *cycle.last().expect("non-empty");
    let back = bfs(k, k.successors(last), inside, |u| u == v)?;
    cycle.extend(&back[..back.len() - 1]);
    Some(cycle)
}

fn lasso_in(k: &Kripke, eg: &SatSet, t: usize, fair: Option<&SatSet>) -> Result<Lasso, WitnessError> {
    if !eg.contains(t) {
        return Err(WitnessError::NotSatisfied(t));
    }
    let core = cyclic_core(k, eg, fair);
    let (comp, _) = scc(k, eg);
    let path = bfs(k, &[t], |u| eg.contains(u), |u| core.contains(u)).expect("EG state reaches a cycle");
    let v = *path.last().expect("non-empty");
    let same_comp = SatSet { bits: (0..k.len()).map(|u| eg.contains(u) && comp[u] == comp[v]).collect() };
    let cycle = cycle_through(k, v, &same_comp, fair).expect("core state lies on a cycle");
    Ok(Lasso { prefix: path[..path.len() - 1].to_vec(), cycle })
}

/// Lasso from `t` staying inside `sat(inner)`, with the shortest prefix.
pub fn witness_eg(k: &Kripke, inner: &Ctl, t: usize) -> Result<Lasso, WitnessError> {
    lasso_in(k, &sat_eg(k, &sat_set(k, inner)), t, None)
}

/// Like [`witness_eg`], but the cycle also visits `fair`.
pub fn witness_eg_fair(k: &Kripke, inner: &Ctl, fair: &SatSet, t: usize) -> Result<Lasso, WitnessError> {
    lasso_in(k, &sat_eg_fair(k, &sat_set(k, inner), fair), t, Some(fair))
}

/// Shortest path from `t` to a state violating `inner`.
pub fn counterexample_ag(k: &Kripke, inner: &Ctl, t: usize) -> Result<Vec<usize>, WitnessError> {
    let good = sat_set(k, inner);
    bfs(k, &[t], |_| true, |u| !good.contains(u)).ok_or(WitnessError::NoViolation(t))
}

/// Shortest path from `t` into `target`, if one exists.
pub fn path_to(k: &Kripke, t: usize, target: &SatSet) -> Option<Vec<usize>> {
    bfs(k, &[t], |_| true, |u| target.contains(u))
}
