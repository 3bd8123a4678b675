//! Plain-text polynomials with integer coefficients.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := INT | VAR ('^' INT)?
//! ```
//!
//! A leading sign is allowed on the first term. Whitespace is insignificant.
//! Files hold several polynomials separated by `;`, and `#` starts a comment
//! running to the end of the line.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::arith::{Field, Monomial, MultiPoly, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown variable `{name}`")]
    UnknownVariable { line: usize, col: usize, name: String },
    #[error("{line}:{col}: exponent overflow")]
    ExponentOverflow { line: usize, col: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmitError {
    #[error("coefficient {0} is not an integer")]
    NonInteger(String),
    #[error("polynomial has {got} variables but {names} names were given")]
    NameCount { got: usize, names: usize },
}

/// Names `x0, …, x{n-1}`.
pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    Semi,
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            let (l, c) = (li + 1, i + 1);
            let single = match ch {
                '#' => break,
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '+' => Some(Tok::Plus),
                '-' => Some(Tok::Minus),
                '*' => Some(Tok::Star),
                '^' => Some(Tok::Caret),
                ';' => Some(Tok::Semi),
                _ => None,
            };
            if let Some(tok) = single {
                out.push(Lexed { tok, line: l, col: c });
                i += 1;
            } else if ch.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Lexed { tok: Tok::Int(digits.parse().unwrap()), line: l, col: c });
            } else if ch.is_ascii_alphabetic() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Lexed { tok: Tok::Var(chars[start..i].iter().collect()), line: l, col: c });
            } else {
                return Err(ParseError::Syntax { line: l, col: c, msg: format!("unexpected character `{ch}`") });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Lexed>,
    pos: usize,
    names: &'a [String],
    end: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col))
    }

    fn syntax(&self, msg: &str) -> ParseError {
        let (line, col) = self.here();
        ParseError::Syntax { line, col, msg: msg.to_string() }
    }

    fn expr(&mut self) -> Result<MultiPoly<Rational>, ParseError> {
        let n = self.names.len();
        let mut acc = MultiPoly::zero(n);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            match self.peek() {
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                None | Some(Tok::Semi) => return Ok(acc),
                _ => return Err(self.syntax("expected `+`, `-` or end of expression")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MultiPoly<Rational>, ParseError> {
        let n = self.names.len();
        let mut coeff = BigInt::one();
        let mut exps = vec![0u32; n];
        loop {
            let (line, col) = self.here();
            match self.peek().cloned() {
                Some(Tok::Int(v)) => {
                    self.pos += 1;
                    coeff *= v;
                }
                Some(Tok::Var(name)) => {
                    self.pos += 1;
                    let idx = self
                        .names
                        .iter()
                        .position(|x| *x == name)
                        .ok_or(ParseError::UnknownVariable { line, col, name })?;
                    let mut e = 1u32;
                    if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        let (line, col) = self.here();
                        match self.peek().cloned() {
                            Some(Tok::Int(v)) => {
                                self.pos += 1;
                                e = u32::try_from(&v).map_err(|_| ParseError::ExponentOverflow { line, col })?;
                            }
                            _ => return Err(self.syntax("expected an integer exponent")),
                        }
                    }
                    exps[idx] = exps[idx].checked_add(e).ok_or(ParseError::ExponentOverflow { line, col })?;
                }
                _ => return Err(self.syntax("expected an integer or a variable")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(MultiPoly::term(Monomial::new(exps), Rational::from_integer(coeff)))
    }
}

fn parser<'a>(src: &str, names: &'a [String]) -> Result<Parser<'a>, ParseError> {
    let toks = lex(src)?;
    let lines: Vec<&str> = src.lines().collect();
    let end = (lines.len().max(1), lines.last().map_or(0, |l| l.chars().count()) + 1);
    Ok(Parser { toks, pos: 0, names, end })
}

/// Parses one polynomial in the given variables.
pub fn parse_polynomial(src: &str, names: &[String]) -> Result<MultiPoly<Rational>, ParseError> {
    let mut p = parser(src, names)?;
    if p.peek().is_none() {
        return Err(p.syntax("empty expression"));
    }
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.syntax("trailing input"));
    }
    Ok(out)
}

/// Parses a `;`-separated list of polynomials.
pub fn parse_polynomials(src: &str, names: &[String]) -> Result<Vec<MultiPoly<Rational>>, ParseError> {
    let mut p = parser(src, names)?;
    let mut out = Vec::new();
    while p.peek().is_some() {
        if p.peek() == Some(&Tok::Semi) {
            p.pos += 1;
            continue;
        }
        out.push(p.expr()?);
    }
    Ok(out)
}

/// Prints the terms in descending grevlex order.
pub fn emit_polynomial(f: &MultiPoly<Rational>, names: &[String]) -> Result<String, EmitError> {
    if f.nvars() != names.len() {
        return Err(EmitError::NameCount { got: f.nvars(), names: names.len() });
    }
    let mut out = String::new();
    for (i, (m, c)) in f.terms().enumerate() {
        if !c.is_integer() {
            return Err(EmitError::NonInteger(c.to_string()));
        }
        let v = c.to_integer();
        let vars: Vec<String> = m
            .exps()
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        let mag = v.abs();
        let body = match (mag.is_one(), vars.is_empty()) {
            (_, true) => mag.to_string(),
            (true, false) => vars.join("*"),
            (false, false) => format!("{mag}*{}", vars.join("*")),
        };
        match (i, v.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    Ok(out)
}

/// A polynomial as JSON: a list of `[coefficient, exponents]` in grevlex
/// order, with coefficients as decimal strings.
pub fn polynomial_to_json(f: &MultiPoly<Rational>) -> serde_json::Value {
    serde_json::Value::Array(
        f.terms()
            .map(|(m, c)| serde_json::json!([crate::arith::rational_to_string(c), m.exps()]))
            .collect(),
    )
}

/// The inverse of [`polynomial_to_json`].
pub fn polynomial_from_json(v: &serde_json::Value, nvars: usize) -> Option<MultiPoly<Rational>> {
    let mut out = MultiPoly::zero(nvars);
    for t in v.as_array()? {
        let pair = t.as_array()?;
        let c = crate::arith::rational_from_str(pair.first()?.as_str()?)?;
        let exps: Vec<u32> = pair
            .get(1)?
            .as_array()?
            .iter()
            .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()))
            .collect::<Option<_>>()?;
        if exps.len() != nvars || Field::is_zero(&c) {
            return None;
        }
        out.add_term(Monomial::new(exps), c);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names6() -> Vec<String> {
        default_names(6)
    }

    #[test]
    fn single_monomial() {
        let f = parse_polynomial("x0^6", &names6()).unwrap();
        assert_eq!(f, MultiPoly::term(Monomial::new(vec![6, 0, 0, 0, 0, 0]), Rational::from_i64(1)));
    }

    #[test]
    fn negative_coefficient() {
        let f = parse_polynomial("-12*x0*x1*x2*x3*x4*x5", &names6()).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.coefficient(&Monomial::new(vec![1; 6])), Rational::from_i64(-12));
    }

    #[test]
    fn doubled_operator_is_rejected_at_its_position() {
        let err = parse_polynomial("x0 + + x1", &names6()).unwrap_err();
        assert_eq!(err, ParseError::Syntax { line: 1, col: 6, msg: "expected an integer or a variable".into() });
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_polynomial("x7", &names6()), Err(ParseError::UnknownVariable { col: 1, .. })));
        assert!(matches!(
            parse_polynomial("x1^99999999999", &names6()),
            Err(ParseError::ExponentOverflow { line: 1, col: 4 })
        ));
        assert!(matches!(parse_polynomial("", &names6()), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("x1 x2", &names6()), Err(ParseError::Syntax { col: 4, .. })));
        assert!(matches!(parse_polynomial("x1\n  + $", &names6()), Err(ParseError::Syntax { line: 2, col: 5, .. })));
    }

    #[test]
    fn gm_style_names_and_comments() {
        let names: Vec<String> = ["x00", "x12", "x13"].iter().map(|s| s.to_string()).collect();
        let fs = parse_polynomials("# header\nx00^2 - x12*x13;\n x12 + 2 # trailing\n;", &names).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(emit_polynomial(&fs[0], &names).unwrap(), "x00^2 - x12*x13");
        assert_eq!(emit_polynomial(&fs[1], &names).unwrap(), "x12 + 2");
    }

    #[test]
    fn like_terms_combine() {
        let f = parse_polynomial("2*x1*x2 - x2*x1 + 3 - 3", &names6()).unwrap();
        assert_eq!(emit_polynomial(&f, &names6()).unwrap(), "x1*x2");
        assert_eq!(emit_polynomial(&MultiPoly::zero(6), &names6()).unwrap(), "0");
    }

    #[test]
    fn emitter_rejects_fractions() {
        let f = MultiPoly::constant(6, Rational::new(1.into(), 2.into()));
        assert!(matches!(emit_polynomial(&f, &names6()), Err(EmitError::NonInteger(_))));
    }

    #[test]
    fn json_round_trip() {
        let f = parse_polynomial("x0^6 - 4*x0*x1^3*x2^2 + 6*x1*x2*x3^2*x4^2", &names6()).unwrap();
        let j = polynomial_to_json(&f);
        assert_eq!(polynomial_from_json(&j, 6).unwrap(), f);
    }

    proptest::proptest! {
        #[test]
        fn emit_parse_is_identity(terms in proptest::collection::vec((-50i64..50, proptest::collection::vec(0u32..4, 4)), 0..8)) {
            let names = default_names(4);
            let f = MultiPoly::from_terms(4, terms.into_iter().map(|(c, e)| (Monomial::new(e), Rational::from_i64(c))));
            let text = emit_polynomial(&f, &names).unwrap();
            let g = parse_polynomial(&text, &names).unwrap();
            proptest::prop_assert_eq!(&g, &f);
            proptest::prop_assert_eq!(emit_polynomial(&g, &names).unwrap(), text);
        }
    }
}
