//! The expression mini-language accepted by `ope`.
//!
//! ```text
//! expr := (J l) | (Om a b) | (gen NAME) | (d k expr) | (w expr expr …)
//!       | (circ n expr expr) | (* "p/q" expr) | (+ expr expr …)
//! ```
//!
//! `(gen NAME)` names a generator of the chosen system (`beta1`, `gamma2`,
//! `b1`, `c1`, `J3`). Rationals are written as double-quoted strings.

use std::fmt;

use winf_core::fock::FieldExpr;
use winf_core::w1inf::Model;
use winf_core::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    J(u32),
    Om(u32, u32),
    Gen(String),
    D(u32, Box<Expr>),
    W(Vec<Expr>),
    Circ(i64, Box<Expr>, Box<Expr>),
    Scale(Scalar, Box<Expr>),
    Sum(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
    Str(String),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, ch)) = it.peek() {
        match ch {
            c if c.is_whitespace() => {
                it.next();
            }
            '(' => {
                it.next();
                out.push((i, Tok::Open));
            }
            ')' => {
                it.next();
                out.push((i, Tok::Close));
            }
            '"' => {
                it.next();
                let mut s = String::new();
                loop {
                    match it.next() {
                        Some((_, '"')) => break,
                        Some((_, c)) => s.push(c),
                        None => return Err(ParseError { pos: i, msg: "unterminated string".into() }),
                    }
                }
                out.push((i, Tok::Str(s)));
            }
            _ => {
                let mut s = String::new();
                while let Some(&(_, c)) = it.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == '"' {
                        break;
                    }
                    s.push(c);
                    it.next();
                }
                out.push((i, Tok::Atom(s)));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn expect_close(&mut self) -> Result<(), ParseError> {
        match self.toks.get(self.at) {
            Some((_, Tok::Close)) => {
                self.at += 1;
                Ok(())
            }
            _ => self.err("expected `)`"),
        }
    }

    fn atom(&mut self, what: &str) -> Result<String, ParseError> {
        match self.toks.get(self.at) {
            Some((_, Tok::Atom(s))) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn int<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let p = self.pos();
        let s = self.atom(what)?;
        s.parse().map_err(|_| ParseError { pos: p, msg: format!("expected {what}, found `{s}`") })
    }

    fn at_close(&self) -> bool {
        matches!(self.toks.get(self.at), Some((_, Tok::Close)))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        match self.next() {
            Some(Tok::Open) => {}
            Some(_) => {
                self.at -= 1;
                return self.err("expected `(`");
            }
            None => return self.err("unexpected end of input"),
        }
        let head_pos = self.pos();
        let head = self.atom("an operator")?;
        let e = match head.as_str() {
            "J" => Expr::J(self.int("a generator index")?),
            "Om" => {
                let a = self.int("an index")?;
                Expr::Om(a, self.int("an index")?)
            }
            "gen" => Expr::Gen(self.atom("a generator name")?),
            "d" => {
                let k = self.int("a derivative order")?;
                Expr::D(k, Box::new(self.expr()?))
            }
            "circ" => {
                let n = self.int("a product index")?;
                let a = self.expr()?;
                Expr::Circ(n, Box::new(a), Box::new(self.expr()?))
            }
            "*" => {
                let p = self.pos();
                let c = match self.next() {
                    Some(Tok::Str(s)) => winf_core::scalar::parse(&s)
                        .map_err(|_| ParseError { pos: p, msg: format!("bad rational \"{s}\"") })?,
                    _ => {
                        self.at -= 1;
                        return self.err("expected a quoted rational");
                    }
                };
                Expr::Scale(c, Box::new(self.expr()?))
            }
            "w" | "+" => {
                let mut items = Vec::new();
                while !self.at_close() {
                    if self.at >= self.toks.len() {
                        return self.err("unexpected end of input");
                    }
                    items.push(self.expr()?);
                }
                if items.is_empty() {
                    return self.err(format!("`{head}` needs at least one argument"));
                }
                if head == "w" {
                    Expr::W(items)
                } else {
                    Expr::Sum(items)
                }
            }
            _ => return Err(ParseError { pos: head_pos, msg: format!("unknown operator `{head}`") }),
        };
        self.expect_close()?;
        Ok(e)
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, end: src.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: &str, items: &[Expr]| -> fmt::Result {
            write!(f, "({head}")?;
            for e in items {
                write!(f, " {e}")?;
            }
            write!(f, ")")
        };
        match self {
            Expr::J(l) => write!(f, "(J {l})"),
            Expr::Om(a, b) => write!(f, "(Om {a} {b})"),
            Expr::Gen(s) => write!(f, "(gen {s})"),
            Expr::D(k, e) => write!(f, "(d {k} {e})"),
            Expr::W(items) => list(f, "w", items),
            Expr::Circ(n, a, b) => write!(f, "(circ {n} {a} {b})"),
            Expr::Scale(c, e) => write!(f, "(* \"{c}\" {e})"),
            Expr::Sum(items) => list(f, "+", items),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct ElabError(pub String);

/// Builds the field over the model's system. `(J l)` and `(Om a b)` resolve
/// through the model's realization.
pub fn elaborate(e: &Expr, model: &Model) -> Result<FieldExpr, ElabError> {
    let eng = model.engine();
    Ok(match e {
        Expr::J(l) => model.j(*l),
        Expr::Om(a, b) => model.omega(*a, *b),
        Expr::Gen(name) => {
            let g = model
                .system()
                .parse_gen_name(name)
                .ok_or_else(|| ElabError(format!("`{name}` is not a generator of {}", model.system())))?;
            eng.gen(g)
        }
        Expr::D(k, a) => eng.deriv(*k, &elaborate(a, model)?),
        Expr::W(items) => {
            let fs = items.iter().map(|x| elaborate(x, model)).collect::<Result<Vec<_>, _>>()?;
            eng.wick_all(&fs)
        }
        Expr::Circ(n, a, b) => eng.circ_expr(*n, &elaborate(a, model)?, &elaborate(b, model)?),
        Expr::Scale(c, a) => eng.sum(vec![(c.clone(), elaborate(a, model)?)]),
        Expr::Sum(items) => {
            let one = winf_core::scalar::one();
            eng.sum(items.iter().map(|x| Ok((one.clone(), elaborate(x, model)?))).collect::<Result<Vec<_>, ElabError>>()?)
        }
    })
}
