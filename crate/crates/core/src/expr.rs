//! A small set-expression language over named scalar sets.
//!
//! ```text
//! expr := term {("+" | "-") term}
//! term := atom {("*" | "/") atom}
//! atom := NAME | "{" scalar {"," scalar} "}" | "(" expr ")"
//!       | "sum(" INT "," expr ")" | "prod(" INT "," expr ")"
//! ```
//!
//! Every operator acts elementwise on sets: `A + B = {a + b}`, `A - B =
//! {a − b}`, `A * B = {ab}` and `A / B = {a / b : b ≠ 0}`. Note that `/` is
//! the *ratio set*, not scalar division. `sum(k, E)` is the k-fold sumset
//! `E + ⋯ + E` and `prod(k, E)` the k-fold product set `E^(k)`. Both
//! operator levels associate to the left and `*`, `/` bind tighter than
//! `+`, `-`. `sum` and `prod` are keywords only when followed by `(`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::sets::{parse_scalar_items, Limits, ScalarSet, SetOp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Name(String),
    Literal(ScalarSet),
    Binary { op: SetOp, lhs: Box<Expr>, rhs: Box<Expr> },
    FoldSum(u64, Box<Expr>),
    FoldProduct(u64, Box<Expr>),
}

impl Expr {
    pub fn binary(op: SetOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    /// Set names referenced by the expression, sorted and deduplicated.
    pub fn names(&self) -> Vec<&str> {
        fn walk<'a>(e: &'a Expr, out: &mut Vec<&'a str>) {
            match e {
                Expr::Name(n) => out.push(n),
                Expr::Literal(_) => {}
                Expr::Binary { lhs, rhs, .. } => {
                    walk(lhs, out);
                    walk(rhs, out);
                }
                Expr::FoldSum(_, e) | Expr::FoldProduct(_, e) => walk(e, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn precedence(op: SetOp) -> u8 {
    match op {
        SetOp::Add | SetOp::Sub => 1,
        SetOp::Mul | SetOp::Div => 2,
    }
}

fn symbol(op: SetOp) -> &'static str {
    match op {
        SetOp::Add => "+",
        SetOp::Sub => "-",
        SetOp::Mul => "*",
        SetOp::Div => "/",
    }
}

impl Expr {
    /// Writes `self` so that it parses back to the same tree, parenthesizing
    /// only where precedence or left associativity demands it.
    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        match self {
            Expr::Name(n) => f.write_str(n),
            Expr::Literal(s) => write!(f, "{{{}}}", s.element_strings().join(",")),
            Expr::FoldSum(k, e) => write!(f, "sum({k},{e})"),
            Expr::FoldProduct(k, e) => write!(f, "prod({k},{e})"),
            Expr::Binary { op, lhs, rhs } => {
                let p = precedence(*op);
                if p < min {
                    f.write_str("(")?;
                }
                lhs.write_prec(f, p)?;
                f.write_str(symbol(*op))?;
                rhs.write_prec(f, p + 1)?;
                if p < min {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected `{c}`")))
        }
    }

    fn unexpected(&mut self, wanted: &str) -> Error {
        match self.peek() {
            Some(c) => syntax(self.pos, format!("{wanted}, found `{c}`")),
            None => syntax(self.pos, format!("{wanted}, found end of input")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some('+') => SetOp::Add,
                Some('-') => SetOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::binary(op, lhs, self.term()?);
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.atom()?;
        loop {
            let op = match self.peek() {
                Some('*') => SetOp::Mul,
                Some('/') => SetOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::binary(op, lhs, self.atom()?);
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('{') => self.literal(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let len = self
                    .rest()
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(self.rest().len());
                let name = &self.src[start..start + len];
                self.pos += len;
                let fold = matches!(name, "sum" | "prod");
                if fold && self.eat('(') {
                    let k = self.fold_count()?;
                    self.expect(',')?;
                    let inner = Box::new(self.expr()?);
                    self.expect(')')?;
                    Ok(if name == "sum" {
                        Expr::FoldSum(k, inner)
                    } else {
                        Expr::FoldProduct(k, inner)
                    })
                } else {
                    Ok(Expr::Name(name.to_string()))
                }
            }
            _ => Err(self.unexpected("expected a set name, literal or `(`")),
        }
    }

    fn fold_count(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.unexpected("expected a fold count"));
        }
        self.pos += len;
        let k: u64 = self.src[start..self.pos]
            .parse()
            .map_err(|_| syntax(start, "fold count is too large"))?;
        if k == 0 {
            return Err(syntax(start, "fold count must be at least 1"));
        }
        Ok(k)
    }

    /// `{ scalar, … }`; commas inside a complex scalar's parentheses do not
    /// separate items.
    fn literal(&mut self) -> Result<Expr> {
        let open = self.pos;
        self.pos += 1;
        let body_start = self.pos;
        let mut depth = 0usize;
        let mut items = Vec::new();
        let mut item_start = body_start;
        for (i, c) in self.rest().char_indices() {
            let at = body_start + i;
            match c {
                '(' => depth += 1,
                ')' if depth > 0 => depth -= 1,
                ',' if depth == 0 => {
                    items.push((item_start, &self.src[item_start..at]));
                    item_start = at + 1;
                }
                '}' if depth == 0 => {
                    items.push((item_start, &self.src[item_start..at]));
                    self.pos = at + 1;
                    if items.len() == 1 && items[0].1.trim().is_empty() {
                        return Err(syntax(open, "empty set literal"));
                    }
                    if let Some(&(offset, _)) = items.iter().find(|(_, s)| s.trim().is_empty()) {
                        return Err(syntax(offset, "missing scalar in set literal"));
                    }
                    let parsed = parse_scalar_items(items.iter().map(|&(_, s)| s)).map_err(|e| match e {
                        Error::SetFile { line, source } => syntax(items[line - 1].0, source.to_string()),
                        other => syntax(open, other.to_string()),
                    })?;
                    return Ok(Expr::Literal(parsed.set));
                }
                _ => {}
            }
        }
        Err(syntax(self.src.len(), "unterminated set literal, expected `}`"))
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected("expected an operator or end of input"));
    }
    Ok(e)
}

/// Set bindings for evaluation.
pub type Env = BTreeMap<String, ScalarSet>;

/// Evaluates exactly. Division by a set whose every element is zero (so the
/// quotient is empty) is an error, as is mixing real and complex sets.
pub fn eval_expr(expr: &Expr, env: &Env, limits: &Limits) -> Result<ScalarSet> {
    match expr {
        Expr::Name(n) => env.get(n).cloned().ok_or_else(|| Error::UnboundName(n.clone())),
        Expr::Literal(s) => Ok(s.clone()),
        Expr::Binary { op, lhs, rhs } => {
            let l = eval_expr(lhs, env, limits)?;
            let r = eval_expr(rhs, env, limits)?;
            let (out, _) = l.pairwise(&r, *op, limits)?;
            if out.is_empty() {
                return Err(Error::EmptyResult);
            }
            Ok(out)
        }
        Expr::FoldSum(k, e) => eval_expr(e, env, limits)?.kfold_sum(*k, limits),
        Expr::FoldProduct(k, e) => eval_expr(e, env, limits)?.kfold_product(*k, limits),
    }
}
