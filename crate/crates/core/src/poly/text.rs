//! Canonical text form and a small expression parser.
//!
//! Grammar (whitespace ignored):
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'/') power)*       divisors must be constants
//! power  := atom ['^' integer]
//! atom   := integer | var | 'sqrt' '(' expr ')' | '(' expr ')'
//! var    := prefix integer                 1-based index
//! ```

use num_bigint::BigInt;

use super::{ExponentVector, PolyError, Polynomial};
use crate::exactnum::{CoeffText, Field, Rational, SurdSum};

impl<C: Field> Polynomial<C> {
    /// Terms in lex-descending order, e.g. `x1^2 + 2*x1*x2 - x3^2`.
    pub fn to_text_with(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let mono = monomial_text(e, prefix);
            let (negative, body) = match c.coeff_text() {
                CoeffText::Unit { negative } => {
                    (negative, mono.unwrap_or_else(|| "1".to_string()))
                }
                CoeffText::Atom {
                    negative,
                    magnitude,
                } => (
                    negative,
                    match mono {
                        Some(m) => format!("{magnitude}*{m}"),
                        None => magnitude,
                    },
                ),
                CoeffText::Compound(text) => (
                    false,
                    match mono {
                        Some(m) => format!("{text}*{m}"),
                        None => text,
                    },
                ),
            };
            match (i, negative) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&body);
        }
        out
    }

    pub fn parse(text: &str, arity: usize) -> Result<Self, PolyError> {
        Self::parse_with(text, arity, "x")
    }

    /// Parses in variables `{prefix}1 .. {prefix}{arity}`; coefficients must lie in `C`.
    pub fn parse_with(text: &str, arity: usize, prefix: &str) -> Result<Self, PolyError> {
        let parsed = Parser::new(text, arity, prefix)?.parse_all()?;
        let mut terms = Vec::with_capacity(parsed.count_monomials());
        for (e, c) in parsed.terms() {
            let converted = C::from_surdsum(c).ok_or_else(|| PolyError::Parse {
                input: text.to_string(),
                position: 0,
                reason: format!("coefficient {c} is outside the coefficient field"),
            })?;
            terms.push((e.clone(), converted));
        }
        Ok(Polynomial::from_terms(arity, terms))
    }
}

fn monomial_text(e: &ExponentVector, prefix: &str) -> Option<String> {
    let parts: Vec<String> = e
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("{prefix}{}", i + 1)
            } else {
                format!("{prefix}{}^{k}", i + 1)
            }
        })
        .collect();
    (!parts.is_empty()).then(|| parts.join("*"))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Sqrt,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

struct Parser<'a> {
    input: &'a str,
    arity: usize,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

type P = Polynomial<SurdSum>;

impl<'a> Parser<'a> {
    fn new(input: &'a str, arity: usize, prefix: &str) -> Result<Self, PolyError> {
        let err = |position: usize, reason: String| PolyError::Parse {
            input: input.to_string(),
            position,
            reason,
        };
        let chars: Vec<(usize, char)> = input.char_indices().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (at, ch) = chars[i];
            match ch {
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '0'..='9' => {
                    let start = i;
                    while i < chars.len() && chars[i].1.is_ascii_digit() {
                        i += 1;
                    }
                    let digits: String = chars[start..i].iter().map(|c| c.1).collect();
                    toks.push((Tok::Num(digits.parse().unwrap()), at));
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].1.is_ascii_alphabetic() || chars[i].1 == '_')
                    {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().map(|c| c.1).collect();
                    let dstart = i;
                    while i < chars.len() && chars[i].1.is_ascii_digit() {
                        i += 1;
                    }
                    let digits: String = chars[dstart..i].iter().map(|c| c.1).collect();
                    if word == "sqrt" && digits.is_empty() {
                        toks.push((Tok::Sqrt, at));
                    } else if word == prefix && !digits.is_empty() {
                        let index: usize = digits
                            .parse()
                            .map_err(|_| err(at, "variable index too large".into()))?;
                        if index == 0 || index > arity {
                            return Err(err(
                                at,
                                format!("variable {word}{digits} outside 1..={arity}"),
                            ));
                        }
                        toks.push((Tok::Var(index - 1), at));
                    } else {
                        return Err(err(at, format!("unknown identifier {word}{digits}")));
                    }
                    continue;
                }
                '(' => toks.push((Tok::LParen, at)),
                ')' => toks.push((Tok::RParen, at)),
                '+' => toks.push((Tok::Plus, at)),
                '-' => toks.push((Tok::Minus, at)),
                '*' => toks.push((Tok::Star, at)),
                '/' => toks.push((Tok::Slash, at)),
                '^' => toks.push((Tok::Caret, at)),
                other => return Err(err(at, format!("unexpected character {other:?}"))),
            }
            i += 1;
        }
        Ok(Parser {
            input,
            arity,
            toks,
            pos: 0,
        })
    }

    fn err(&self, reason: impl Into<String>) -> PolyError {
        let position = self
            .toks
            .get(self.pos)
            .map_or(self.input.len(), |t| t.1);
        PolyError::Parse {
            input: self.input.to_string(),
            position,
            reason: reason.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_all(mut self) -> Result<P, PolyError> {
        if self.toks.is_empty() {
            return Err(self.err("empty expression"));
        }
        let value = self.expr()?;
        if self.pos != self.toks.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(value)
    }

    fn expr(&mut self) -> Result<P, PolyError> {
        let negative_first = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let mut acc = self.term()?;
        if negative_first {
            acc = -&acc;
        }
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<P, PolyError> {
        let mut acc = self.power()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.power()?;
            } else if self.eat(&Tok::Slash) {
                let divisor = self.power()?;
                let c = divisor
                    .as_constant()
                    .ok_or_else(|| self.err("division by a non-constant"))?;
                let inv = c.recip().map_err(|_| self.err("division by zero"))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<P, PolyError> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = n
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(k))
                }
                _ => Err(self.err("expected an integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<P, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(P::constant(
                    self.arity,
                    SurdSum::from_rational(Rational::from_integer(n)),
                ))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(P::var(self.arity, i))
            }
            Some(Tok::Sqrt) => {
                self.pos += 1;
                if !self.eat(&Tok::LParen) {
                    return Err(self.err("expected '(' after sqrt"));
                }
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                let q = inner
                    .as_constant()
                    .and_then(|c| c.as_rational())
                    .ok_or_else(|| self.err("sqrt needs a rational constant argument"))?;
                let root = SurdSum::sqrt(&q).map_err(|e| self.err(e.to_string()))?;
                Ok(P::constant(self.arity, root))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(self.err("expected a number, variable, sqrt or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text() {
        let p = P::parse("x3^2*(-1) + x1^2 + 2*x2*x1", 3).unwrap();
        assert_eq!(p.to_string(), "x1^2 + 2*x1*x2 - x3^2");
        let q = P::parse("sqrt(2)*x1 + (1 + sqrt(2))*x2 - 1/2*sqrt(6)", 2).unwrap();
        assert_eq!(q.to_string(), "sqrt(2)*x1 + (1 + sqrt(2))*x2 - 1/2*sqrt(6)");
        assert_eq!(P::zero(2).to_string(), "0");
        assert_eq!(P::parse("-1", 1).unwrap().to_string(), "-1");
        let z = P::parse_with("z1*z4 - z2*z3", 4, "z").unwrap();
        assert_eq!(z.to_text_with("z"), "z1*z4 - z2*z3");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(P::parse("x5", 4), Err(PolyError::Parse { .. })));
        assert!(matches!(P::parse("x1 +", 2), Err(PolyError::Parse { .. })));
        assert!(matches!(P::parse("x1/x2", 2), Err(PolyError::Parse { .. })));
        assert!(matches!(P::parse("y1", 2), Err(PolyError::Parse { .. })));
        assert!(matches!(P::parse("sqrt(-2)", 1), Err(PolyError::Parse { .. })));
        assert!(Polynomial::<Rational>::parse("sqrt(2)*x1", 1).is_err());
    }

    #[test]
    fn nested_and_powers() {
        let p = P::parse("(x1 - x2)^2 - (x1^2 + x2^2)", 2).unwrap();
        assert_eq!(p.to_string(), "-2*x1*x2");
        let r = P::parse("sqrt(3/2)*x1", 1).unwrap();
        assert_eq!(r.to_string(), "1/2*sqrt(6)*x1");
    }
}
