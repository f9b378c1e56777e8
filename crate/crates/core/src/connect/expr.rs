//! Arithmetic expressions in `eps` and the stage parameter `n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::FieldElem;

/// Laurent polynomial in `n` with coefficients in ℚ(ε).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct NExpr(BTreeMap<i32, FieldElem>);

impl NExpr {
    pub(crate) fn constant(c: FieldElem) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(0, c);
        }
        NExpr(m)
    }

    fn n() -> Self {
        NExpr(BTreeMap::from([(1, FieldElem::one())]))
    }

    pub(crate) fn coeff(&self, k: i32) -> FieldElem {
        self.0.get(&k).cloned().unwrap_or_else(FieldElem::zero)
    }

    pub(crate) fn powers(&self) -> impl Iterator<Item = i32> + '_ {
        self.0.keys().copied()
    }

    fn add(mut self, other: NExpr) -> Self {
        for (k, c) in other.0 {
            let v = &self.coeff(k) + &c;
            if v.is_zero() {
                self.0.remove(&k);
            } else {
                self.0.insert(k, v);
            }
        }
        self
    }

    fn neg(self) -> Self {
        NExpr(self.0.into_iter().map(|(k, c)| (k, -c)).collect())
    }

    fn mul(&self, other: &NExpr) -> Self {
        let mut out = NExpr::default();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                out = out.add(NExpr(BTreeMap::from([(a + b, x * y)])));
            }
        }
        out
    }

    /// The single `(power, coefficient)` pair of a monomial.
    fn as_monomial(&self) -> Option<(i32, &FieldElem)> {
        if self.0.len() == 1 {
            self.0.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    fn recip(&self) -> Result<Self, String> {
        match self.as_monomial() {
            Some((k, c)) => Ok(NExpr(BTreeMap::from([(-k, c.recip())]))),
            None if self.0.is_empty() => Err("division by zero".into()),
            None => Err("can only divide by a single power of n".into()),
        }
    }

    fn pow(&self, e: i32) -> Result<Self, String> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        if self.0.keys().any(|&k| k != 0) && self.as_monomial().is_none() {
            return Err("powers of sums involving n are not supported".into());
        }
        let mut out = NExpr::constant(FieldElem::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Eps,
    N,
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(parse_decimal(&text)?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            out.push(match word.as_str() {
                "eps" => Tok::Eps,
                "n" => Tok::N,
                _ => return Err(format!("unknown symbol `{word}`")),
            });
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

fn parse_decimal(text: &str) -> Result<BigRational, String> {
    let bad = || format!("malformed number `{text}`");
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if int.is_empty() || frac.contains('.') {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(digits, scale))
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    allow_n: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<NExpr, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?);
            } else if self.eat('-') {
                acc = acc.add(self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NExpr, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                acc = acc.mul(&self.unary()?.recip()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<NExpr, String> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<NExpr, String> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        match self.toks.get(self.pos) {
            Some(Tok::Num(k)) if k.is_integer() => {
                self.pos += 1;
                let k: i32 = k.numer().try_into().map_err(|_| "exponent too large".to_string())?;
                base.pow(if negative { -k } else { k })
            }
            _ => Err("expected an integer exponent".into()),
        }
    }

    fn atom(&mut self) -> Result<NExpr, String> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(c)) => Ok(NExpr::constant(FieldElem::from_rational(c))),
            Some(Tok::Eps) => Ok(NExpr::constant(FieldElem::eps())),
            Some(Tok::N) if self.allow_n => Ok(NExpr::n()),
            Some(Tok::N) => Err("`n` is not allowed here".into()),
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err("expected `)`".into());
                }
                Ok(e)
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of expression".into()),
        }
    }
}

pub(crate) fn parse_nexpr(s: &str, allow_n: bool) -> Result<NExpr, String> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
        allow_n,
    };
    if p.toks.is_empty() {
        return Err("empty expression".into());
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err("trailing input".into());
    }
    Ok(e)
}

/// Parses a constant such as `1/2`, `-3*eps^2` or `(1 + eps)/(1 - eps)`.
pub fn parse_field(s: &str) -> Result<FieldElem, String> {
    let e = parse_nexpr(s, false)?;
    Ok(e.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_constants() {
        assert_eq!(parse_field("1/2").unwrap(), FieldElem::from_ratio(1, 2));
        assert_eq!(parse_field("0.25").unwrap(), FieldElem::from_ratio(1, 4));
        assert_eq!(parse_field("eps^-1").unwrap(), FieldElem::eps().recip());
        assert_eq!(parse_field("-1/2*eps").unwrap(), FieldElem::from_ratio(-1, 2) * FieldElem::eps());
        assert!(parse_field("n").is_err());
        assert!(parse_field("1/0").is_err());
        assert!(parse_field("").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["(1 + eps)/(1 - eps)", "-3*eps^-2 + 1/7", "eps^3", "0", "2/(1 + eps^2)"] {
            let x = parse_field(s).unwrap();
            assert_eq!(parse_field(&x.to_string()).unwrap(), x, "{s}");
        }
    }

    #[test]
    fn stage_expressions() {
        let e = parse_nexpr("-2*n + 3 - eps/n", true).unwrap();
        assert_eq!(e.coeff(1), FieldElem::from_int(-2));
        assert_eq!(e.coeff(0), FieldElem::from_int(3));
        assert_eq!(e.coeff(-1), -FieldElem::eps());
        assert!(parse_nexpr("1/(n + 1)", true).is_err());
        assert_eq!(parse_nexpr("n^2", true).unwrap().powers().collect::<Vec<_>>(), vec![2]);
    }
}
