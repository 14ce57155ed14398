use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

/// Parsed arithmetic expression over integers and named symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.position)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Sym(String),
    Op(char),
}

fn lex(input: &str, symbols: &[&str]) -> Result<Vec<(usize, Tok)>, ExprError> {
    let mut sorted: Vec<&str> = symbols.to_vec();
    sorted.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        if c.is_whitespace() {
            pos += 1;
            continue;
        }
        if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            pos += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let v: BigInt = input[start..pos].parse().expect("digits");
            out.push((start, Tok::Int(v)));
            continue;
        }
        let rest = &input[pos..];
        if let Some(sym) = sorted.iter().find(|s| !s.is_empty() && rest.starts_with(**s)) {
            out.push((pos, Tok::Sym(sym.to_string())));
            pos += sym.len();
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            out.push((start, Tok::Sym(input[start..pos].to_string())));
            continue;
        }
        return Err(ExprError { position: pos, message: format!("unexpected character `{c}`") });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ExprError> {
        Err(ExprError { position: self.pos(), message: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let paren = !neg && self.eat('(');
        let neg = neg || (paren && self.eat('-'));
        let k = match self.peek() {
            Some(Tok::Int(v)) => {
                let k: i32 = v.try_into().or_else(|_| self.err("exponent too large"))?;
                self.at += 1;
                k
            }
            _ => return self.err("expected integer exponent"),
        };
        if paren && !self.eat(')') {
            return self.err("expected `)`");
        }
        Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                Ok(Expr::Int(v))
            }
            Some(Tok::Sym(s)) => {
                self.at += 1;
                Ok(Expr::Sym(s))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(_) => self.err("unexpected operator"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `input` into an expression tree. Identifiers are matched against
/// `symbols` longest-first, so `a11a12` splits into known names.
pub fn parse_expression(input: &str, symbols: &[&str]) -> Result<Expr, ExprError> {
    let toks = lex(input, symbols)?;
    let mut p = Parser { toks, at: 0, end: input.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl Expr {
    /// Every symbol occurring in the expression, in order of appearance.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Sym(s) => {
                if !out.contains(s) {
                    out.push(s.clone())
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Box<Expr> {
        Box::new(Expr::Sym(s.into()))
    }

    #[test]
    fn precedence() {
        let e = parse_expression("a+b*c^2", &["a", "b", "c"]).unwrap();
        assert_eq!(
            e,
            Expr::Add(sym("a"), Box::new(Expr::Mul(sym("b"), Box::new(Expr::Pow(sym("c"), 2)))))
        );
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let e = parse_expression("-q^2", &["q"]).unwrap();
        assert_eq!(e, Expr::Neg(Box::new(Expr::Pow(sym("q"), 2))));
    }

    #[test]
    fn negative_exponents() {
        assert_eq!(parse_expression("q^-1", &["q"]).unwrap(), Expr::Pow(sym("q"), -1));
        assert_eq!(parse_expression("q^(-2)", &["q"]).unwrap(), Expr::Pow(sym("q"), -2));
    }

    #[test]
    fn longest_match_symbols() {
        let e = parse_expression("a11*a12", &["a1", "a11", "a12"]).unwrap();
        assert_eq!(e.symbols(), vec!["a11".to_string(), "a12".to_string()]);
    }

    #[test]
    fn errors_report_position() {
        let e = parse_expression("q + ", &["q"]).unwrap_err();
        assert_eq!(e.position, 4);
        assert!(parse_expression("(q", &["q"]).is_err());
        assert!(parse_expression("q $ 1", &["q"]).is_err());
        assert!(parse_expression("q q", &["q"]).is_err());
    }
}
