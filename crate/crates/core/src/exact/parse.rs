//! Parser for exact expressions in π and one variable (`x` or `t`).
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' int)?
//! int    := '-'? digits | '(' '-'? digits ')'
//! atom   := number | 'pi' | 'x' | 't' | '(' expr ')'
//! ```
//!
//! Decimal literals are read exactly (`1.371` is `1371/1000`). Division is
//! only allowed by monomials `c·π^e·v^k`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::piexpr::PiExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error: {msg}")]
pub struct ParseError {
    pub msg: String,
}

impl ParseError {
    pub fn new(msg: impl Into<String>) -> Self {
        ParseError { msg: msg.into() }
    }
}

/// Laurent polynomial in one variable with `PiExpr` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    pub var: Option<char>,
    pub terms: BTreeMap<i32, PiExpr>,
}

impl Laurent {
    fn constant(c: PiExpr) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Laurent { var: None, terms }
    }

    fn variable(v: char) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(1, PiExpr::one());
        Laurent { var: Some(v), terms }
    }

    fn merge_var(a: Option<char>, b: Option<char>) -> Result<Option<char>, ParseError> {
        match (a, b) {
            (Some(u), Some(v)) if u != v => Err(ParseError::new(format!("expression mixes variables {u} and {v}"))),
            (Some(u), _) | (_, Some(u)) => Ok(Some(u)),
            _ => Ok(None),
        }
    }

    fn add(mut self, rhs: Laurent, negate: bool) -> Result<Laurent, ParseError> {
        self.var = Self::merge_var(self.var, rhs.var)?;
        for (k, c) in rhs.terms {
            let slot = self.terms.entry(k).or_default();
            if negate {
                *slot -= &c;
            } else {
                *slot += &c;
            }
            if slot.is_zero() {
                self.terms.remove(&k);
            }
        }
        Ok(self)
    }

    fn mul(self, rhs: Laurent) -> Result<Laurent, ParseError> {
        let var = Self::merge_var(self.var, rhs.var)?;
        let mut terms: BTreeMap<i32, PiExpr> = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &rhs.terms {
                let slot = terms.entry(k1 + k2).or_default();
                *slot += &(c1 * c2);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Laurent { var, terms })
    }

    fn recip(&self) -> Result<Laurent, ParseError> {
        if self.terms.len() != 1 {
            return Err(ParseError::new("division is only supported by monomials"));
        }
        let (k, c) = self.terms.iter().next().unwrap();
        let inv = c.recip().ok_or_else(|| ParseError::new("division is only supported by monomials"))?;
        let mut terms = BTreeMap::new();
        terms.insert(-k, inv);
        Ok(Laurent { var: self.var, terms })
    }

    fn pow(&self, n: i32) -> Result<Laurent, ParseError> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut acc = Laurent::constant(PiExpr::one());
        acc.var = self.var;
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(base.clone())?;
        }
        Ok(acc)
    }

    /// The expression as a constant, if it does not depend on the variable.
    pub fn into_constant(self) -> Option<PiExpr> {
        match self.terms.len() {
            0 => Some(PiExpr::zero()),
            1 => self.terms.into_iter().find(|(k, _)| *k == 0).map(|(_, c)| c),
            _ => None,
        }
    }

    pub fn min_power(&self) -> i32 {
        self.terms.keys().next().copied().unwrap_or(0)
    }

    pub fn max_power(&self) -> i32 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(parse_decimal(&text)?));
        } else if c.is_ascii_alphabetic() || c == 'π' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == 'π') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Ident(if text == "π" { "pi".into() } else { text }));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(ParseError::new(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

fn parse_decimal(text: &str) -> Result<BigRational, ParseError> {
    let bad = || ParseError::new(format!("malformed number '{text}'"));
    let (int_part, frac_part) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if frac_part.contains('.') || (int_part.is_empty() && frac_part.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let d = num_traits::pow(BigInt::from(10u32), frac_part.len());
    Ok(BigRational::new(n, d))
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    allowed: &'a [char],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Laurent, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = acc.add(self.term()?, false)?;
            } else if self.eat_op('-') {
                acc = acc.add(self.term()?, true)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Laurent, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = acc.mul(self.unary()?)?;
            } else if self.eat_op('/') {
                acc = acc.mul(self.unary()?.recip()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Laurent, ParseError> {
        if self.eat_op('-') {
            let inner = self.unary()?;
            return Laurent::constant(PiExpr::zero()).add(inner, true);
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Laurent, ParseError> {
        let base = self.atom()?;
        if self.eat_op('^') {
            let n = self.exponent()?;
            return base.pow(n);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i32, ParseError> {
        let paren = self.eat_op('(');
        let neg = self.eat_op('-');
        let n = match self.peek() {
            Some(Tok::Num(r)) if r.is_integer() => {
                let v: i32 = r.to_integer().try_into().map_err(|_| ParseError::new("exponent too large"))?;
                self.pos += 1;
                v
            }
            _ => return Err(ParseError::new("expected an integer exponent")),
        };
        if paren && !self.eat_op(')') {
            return Err(ParseError::new("expected ')'"));
        }
        Ok(if neg { -n } else { n })
    }

    fn atom(&mut self) -> Result<Laurent, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(Laurent::constant(PiExpr::rational(r)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "pi" {
                    return Ok(Laurent::constant(PiExpr::pi_pow(1)));
                }
                let mut cs = name.chars();
                match (cs.next(), cs.next()) {
                    (Some(v), None) if self.allowed.contains(&v) => Ok(Laurent::variable(v)),
                    _ => Err(ParseError::new(format!("unknown identifier '{name}'"))),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(ParseError::new("expected ')'"));
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => Err(ParseError::new(format!("unexpected '{c}'"))),
            None => Err(ParseError::new("unexpected end of input")),
        }
    }
}

/// Parses `s`; `var` names the single allowed variable, `None` allows `x` or `t`.
pub fn parse_laurent(s: &str, var: Option<char>) -> Result<Laurent, ParseError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(ParseError::new("empty expression"));
    }
    let both = ['x', 't'];
    let one = [var.unwrap_or('x')];
    let allowed: &[char] = if var.is_some() { &one } else { &both };
    let mut p = Parser { toks: &toks, pos: 0, allowed };
    let out = p.expr()?;
    if p.pos != toks.len() {
        return Err(ParseError::new(format!("trailing input at token {}", p.pos + 1)));
    }
    Ok(out)
}

/// Parses a constant expression such as `pi/2` or `0.373`.
pub fn parse_constant(s: &str) -> Result<PiExpr, ParseError> {
    s.parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::piexpr::rat;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_constant("1.371").unwrap(), PiExpr::ratio(1371, 1000));
        assert_eq!(parse_constant(".5").unwrap(), PiExpr::ratio(1, 2));
        assert!(parse_constant("1.2.3").is_err());
    }

    #[test]
    fn polynomial_in_x() {
        let l = parse_laurent("1 - x^2/6 + x^4/120", None).unwrap();
        assert_eq!(l.var, Some('x'));
        assert_eq!(l.terms[&0], PiExpr::one());
        assert_eq!(l.terms[&2], PiExpr::ratio(-1, 6));
        assert_eq!(l.terms[&4], PiExpr::ratio(1, 120));
    }

    #[test]
    fn principal_term_and_pi_powers() {
        let l = parse_laurent("1/t - 4/pi^2*t", Some('t')).unwrap();
        assert_eq!(l.terms[&-1], PiExpr::one());
        assert_eq!(l.terms[&1], PiExpr::monomial(rat(-4, 1), -2));
    }

    #[test]
    fn errors() {
        assert!(parse_laurent("x + t", None).is_err());
        assert!(parse_laurent("1/(1+x)", None).is_err());
        assert!(parse_laurent("2 +", None).is_err());
        assert!(parse_laurent("sin(x)", None).is_err());
        assert!(parse_laurent("x", Some('t')).is_err());
        assert!(parse_constant("x").is_err());
    }

    #[test]
    fn exponent_forms() {
        assert_eq!(parse_constant("pi^-2").unwrap(), PiExpr::pi_pow(-2));
        assert_eq!(parse_constant("pi^(-2)").unwrap(), PiExpr::pi_pow(-2));
        assert_eq!(parse_constant("-pi^2").unwrap(), -PiExpr::pi_pow(2));
        assert_eq!(parse_constant("(2/pi)^3").unwrap(), PiExpr::monomial(rat(8, 1), -3));
    }
}
