//! Recursive-descent parser for constraint formulas.
//!
//! Precedence, tightest first: `!`, `*`, `+ -`, comparisons, `&&`, `||`,
//! `=>` (right associative), `<=>`. Unicode connectives `¬ ∧ ∨ ⇒ ⇔` are
//! accepted as synonyms.

use thiserror::Error;

use super::{
    arith_type, bool_type, cmp_type, leaf_type, unary_not_type, ArithOp, BoolOp, CmpOp, Formula, Signature, Ty,
    TypeIssue,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown observable `{name}`")]
    UnknownObservable { line: usize, col: usize, name: String },
    #[error("{line}:{col}: sort mismatch: {msg}")]
    SortMismatch { line: usize, col: usize, msg: String },
}

impl FormulaError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            FormulaError::Syntax { line, col, .. }
            | FormulaError::UnknownObservable { line, col, .. }
            | FormulaError::SortMismatch { line, col, .. } => (*line, *col),
        }
    }

    /// Shifts the reported position, for formulas embedded in a larger text.
    pub fn relocate(self, line: usize, col_offset: usize) -> Self {
        let fix = |l: usize, c: usize| if l == 1 { (line, c + col_offset) } else { (line + l - 1, c) };
        match self {
            FormulaError::Syntax { line: l, col: c, msg } => {
                let (line, col) = fix(l, c);
                FormulaError::Syntax { line, col, msg }
            }
            FormulaError::UnknownObservable { line: l, col: c, name } => {
                let (line, col) = fix(l, c);
                FormulaError::UnknownObservable { line, col, name }
            }
            FormulaError::SortMismatch { line: l, col: c, msg } => {
                let (line, col) = fix(l, c);
                FormulaError::SortMismatch { line, col, msg }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    True,
    False,
    LParen,
    RParen,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Plus,
    Minus,
    Star,
    Cmp(CmpOp),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, FormulaError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let peek = |k: usize| chars.get(i + k).copied();
        let mut push = |tok: Tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Token { tok, line: tl, col: tc });
            *i += len;
            *col += len;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '+' => push(Tok::Plus, 1, &mut i, &mut col),
            '-' => push(Tok::Minus, 1, &mut i, &mut col),
            '*' => push(Tok::Star, 1, &mut i, &mut col),
            '¬' => push(Tok::Not, 1, &mut i, &mut col),
            '∧' => push(Tok::And, 1, &mut i, &mut col),
            '∨' => push(Tok::Or, 1, &mut i, &mut col),
            '⇒' => push(Tok::Implies, 1, &mut i, &mut col),
            '⇔' => push(Tok::Iff, 1, &mut i, &mut col),
            '&' if peek(1) == Some('&') => push(Tok::And, 2, &mut i, &mut col),
            '|' if peek(1) == Some('|') => push(Tok::Or, 2, &mut i, &mut col),
            '=' if peek(1) == Some('>') => push(Tok::Implies, 2, &mut i, &mut col),
            '=' if peek(1) == Some('=') => push(Tok::Cmp(CmpOp::Eq), 2, &mut i, &mut col),
            '!' if peek(1) == Some('=') => push(Tok::Cmp(CmpOp::Ne), 2, &mut i, &mut col),
            '!' => push(Tok::Not, 1, &mut i, &mut col),
            '<' if peek(1) == Some('=') && peek(2) == Some('>') => push(Tok::Iff, 3, &mut i, &mut col),
            '<' if peek(1) == Some('=') => push(Tok::Cmp(CmpOp::Le), 2, &mut i, &mut col),
            '<' => push(Tok::Cmp(CmpOp::Lt), 1, &mut i, &mut col),
            '>' if peek(1) == Some('=') => push(Tok::Cmp(CmpOp::Ge), 2, &mut i, &mut col),
            '>' => push(Tok::Cmp(CmpOp::Gt), 1, &mut i, &mut col),
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let value = digits.parse::<i64>().map_err(|_| FormulaError::Syntax {
                    line: tl,
                    col: tc,
                    msg: format!("integer literal `{digits}` out of range"),
                })?;
                if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                    return Err(FormulaError::Syntax {
                        line: tl,
                        col: tc,
                        msg: "identifiers must start with a letter".into(),
                    });
                }
                col += i - start;
                out.push(Token { tok: Tok::Int(value), line: tl, col: tc });
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                col += i - start;
                let tok = match word.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word),
                };
                out.push(Token { tok, line: tl, col: tc });
            }
            other => {
                return Err(FormulaError::Syntax { line: tl, col: tc, msg: format!("unexpected character `{other}`") })
            }
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    sig: &'a Signature,
}

type Typed = (Formula, Ty);

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, t: &Token, msg: impl Into<String>) -> FormulaError {
        FormulaError::Syntax { line: t.line, col: t.col, msg: msg.into() }
    }

    fn typed(&self, at: &Token, r: Result<Ty, TypeIssue>) -> Result<Ty, FormulaError> {
        r.map_err(|issue| match issue {
            TypeIssue::UnknownIdent(name) => FormulaError::UnknownObservable { line: at.line, col: at.col, name },
            TypeIssue::Mismatch(msg) => FormulaError::SortMismatch { line: at.line, col: at.col, msg },
        })
    }

    fn iff(&mut self) -> Result<Typed, FormulaError> {
        let mut lhs = self.implies()?;
        while self.peek().tok == Tok::Iff {
            let op = self.bump();
            let rhs = self.implies()?;
            let ty = self.typed(&op, bool_type(BoolOp::Iff, &lhs.1, &rhs.1))?;
            lhs = (Formula::bin(BoolOp::Iff, lhs.0, rhs.0), ty);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Typed, FormulaError> {
        let lhs = self.or()?;
        if self.peek().tok == Tok::Implies {
            let op = self.bump();
            let rhs = self.implies()?;
            let ty = self.typed(&op, bool_type(BoolOp::Implies, &lhs.1, &rhs.1))?;
            return Ok((Formula::bin(BoolOp::Implies, lhs.0, rhs.0), ty));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Typed, FormulaError> {
        let mut lhs = self.and()?;
        while self.peek().tok == Tok::Or {
            let op = self.bump();
            let rhs = self.and()?;
            let ty = self.typed(&op, bool_type(BoolOp::Or, &lhs.1, &rhs.1))?;
            lhs = (Formula::bin(BoolOp::Or, lhs.0, rhs.0), ty);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Typed, FormulaError> {
        let mut lhs = self.comparison()?;
        while self.peek().tok == Tok::And {
            let op = self.bump();
            let rhs = self.comparison()?;
            let ty = self.typed(&op, bool_type(BoolOp::And, &lhs.1, &rhs.1))?;
            lhs = (Formula::bin(BoolOp::And, lhs.0, rhs.0), ty);
        }
        Ok(lhs)
    }

    fn comparison(&mut self) -> Result<Typed, FormulaError> {
        let lhs = self.additive()?;
        if let Tok::Cmp(op) = self.peek().tok {
            let at = self.bump();
            let rhs = self.additive()?;
            if let Tok::Cmp(_) = self.peek().tok {
                return Err(self.syntax(self.peek(), "comparisons do not chain; add parentheses"));
            }
            let ty = self.typed(&at, cmp_type(op, &lhs.1, &rhs.1))?;
            return Ok((Formula::cmp(op, lhs.0, rhs.0), ty));
        }
        Ok(lhs)
    }

    fn additive(&mut self) -> Result<Typed, FormulaError> {
        let mut lhs = self.multiplicative()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => ArithOp::Add,
                Tok::Minus => ArithOp::Sub,
                _ => return Ok(lhs),
            };
            let at = self.bump();
            let rhs = self.multiplicative()?;
            let ty = self.typed(&at, arith_type(op, &lhs.1, &rhs.1))?;
            lhs = (Formula::arith(op, lhs.0, rhs.0), ty);
        }
    }

    fn multiplicative(&mut self) -> Result<Typed, FormulaError> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Star {
            let at = self.bump();
            let rhs = self.unary()?;
            let ty = self.typed(&at, arith_type(ArithOp::Mul, &lhs.1, &rhs.1))?;
            lhs = (Formula::arith(ArithOp::Mul, lhs.0, rhs.0), ty);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Typed, FormulaError> {
        if self.peek().tok == Tok::Not {
            let at = self.bump();
            let inner = self.unary()?;
            let ty = self.typed(&at, unary_not_type(&inner.1))?;
            return Ok((Formula::not(inner.0), ty));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Typed, FormulaError> {
        let t = self.bump();
        let leaf = match &t.tok {
            Tok::True => Formula::BoolConst(true),
            Tok::False => Formula::BoolConst(false),
            Tok::Int(k) => Formula::IntConst(*k),
            Tok::Minus => match self.peek().tok {
                Tok::Int(k) => {
                    self.bump();
                    Formula::IntConst(-k)
                }
                _ => return Err(self.syntax(&t, "`-` must be followed by an integer literal here")),
            },
            Tok::Ident(name) => {
                if self.sig.sort_of(name).is_some() {
                    Formula::Var(name.clone())
                } else {
                    Formula::EnumConst(name.clone())
                }
            }
            Tok::LParen => {
                let inner = self.iff()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.syntax(&close, "expected `)`"));
                }
                return Ok(inner);
            }
            Tok::Eof => return Err(self.syntax(&t, "unexpected end of formula")),
            other => return Err(self.syntax(&t, format!("unexpected token {other:?}"))),
        };
        let ty = self.typed(&t, leaf_type(self.sig, &leaf))?;
        Ok((leaf, ty))
    }
}

fn parse_typed(text: &str, sig: &Signature) -> Result<(Formula, Ty, Token), FormulaError> {
    let toks = lex(text)?;
    let first = toks[0].clone();
    let mut p = Parser { toks, pos: 0, sig };
    let (f, ty) = p.iff()?;
    let rest = p.peek().clone();
    if rest.tok != Tok::Eof {
        return Err(p.syntax(&rest, format!("unexpected trailing token {:?}", rest.tok)));
    }
    Ok((f, ty, first))
}

/// Parses and sort-checks a boolean formula over `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, FormulaError> {
    let (f, ty, first) = parse_typed(text, sig)?;
    match ty {
        Ty::Bool => Ok(f),
        other => Err(FormulaError::SortMismatch {
            line: first.line,
            col: first.col,
            msg: format!("expected a boolean formula, found {other}"),
        }),
    }
}

/// Parses and sort-checks an integer expression over `sig`.
pub fn parse_int_expr(text: &str, sig: &Signature) -> Result<Formula, FormulaError> {
    let (f, ty, first) = parse_typed(text, sig)?;
    match ty {
        Ty::Int => Ok(f),
        other => Err(FormulaError::SortMismatch {
            line: first.line,
            col: first.col,
            msg: format!("expected an integer expression, found {other}"),
        }),
    }
}
