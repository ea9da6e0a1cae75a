use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::monomial::{Family, Var};
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

fn write_term(out: &mut String, c: &BigInt, m: &str, first: bool, spaced: bool) {
    let neg = c.is_negative();
    let (plus, minus) = if spaced { (" + ", " - ") } else { ("+", "-") };
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { minus } else { plus });
    }
    let a = c.abs();
    if m == "1" {
        out.push_str(&a.to_string());
    } else if a.is_one() {
        out.push_str(m);
    } else {
        out.push_str(&format!("{a}*{m}"));
    }
}

/// Flat rendering with ascending terms, e.g. `1-q1`.
fn render_flat(p: &Polynomial) -> String {
    let mut s = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        write_term(&mut s, c, &m.to_string(), i == 0, false);
    }
    s
}

impl fmt::Display for Polynomial {
    /// Terms are grouped by their x/y monomial, highest first; multi-term q-coefficients are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let groups = self.collect_by(&[Family::X, Family::Y]);
        let mut out = String::new();
        for (key, coeff) in groups.iter().rev() {
            let first = out.is_empty();
            if key.is_one() {
                for (m, c) in coeff.terms().rev() {
                    let at_start = out.is_empty();
                    write_term(&mut out, c, &m.to_string(), at_start, true);
                }
            } else if coeff.num_terms() == 1 {
                let (m, c) = coeff.terms().next().expect("one term");
                let name = if m.is_one() { key.to_string() } else { format!("{m}*{key}") };
                write_term(&mut out, c, &name, first, true);
            } else {
                let (_, lead) = coeff.terms().next().expect("nonempty");
                let neg = lead.is_negative();
                let inner = if neg { render_flat(&-coeff) } else { render_flat(coeff) };
                if first {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                out.push_str(&format!("({inner})*{key}"));
            }
        }
        f.write_str(&out)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at offset {}", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(txt.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.product()?;
            if sign < 0 {
                acc -= &t;
            } else {
                acc += &t;
            }
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.number()?;
            let e: u32 = e.try_into().or_else(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Polynomial::constant(self.number()?)),
            Some(c @ (b'x' | b'q' | b'y')) => {
                self.pos += 1;
                let idx = self.number()?;
                let idx: usize = idx.try_into().or_else(|_| self.err("index too large"))?;
                if idx == 0 {
                    return self.err("variables are indexed from 1");
                }
                let family = match c {
                    b'x' => Family::X,
                    b'q' => Family::Q,
                    _ => Family::Y,
                };
                Ok(Polynomial::var(Var { family, index: idx }))
            }
            _ => self.err("unexpected input"),
        }
    }
}

impl std::str::FromStr for Polynomial {
    type Err = Error;

    /// Parses expressions such as `(1-q1)*x1 + q1` or `x1^2 x2 - 3`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let out = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(out)
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn renders_grouped_by_x() {
        assert_eq!(p("(1-q1)*x1+q1").to_string(), "(1-q1)*x1 + q1");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::one().to_string(), "1");
        assert_eq!(
            p("-(1-q2)*x1*x2 + (1-q2)*x1 + (1-q2)*x2 + q2").to_string(),
            "-(1-q2)*x1*x2 + (1-q2)*x1 + (1-q2)*x2 + q2"
        );
        assert_eq!(p("x1^2*x2 - 2*q1*x1 - 3").to_string(), "x1^2*x2 - 2*q1*x1 - 3");
    }

    #[test]
    fn parses() {
        let g = (Polynomial::one() - Polynomial::q(1)) * Polynomial::x(1) + Polynomial::q(1);
        assert_eq!(p("(1-q1)*x1 + q1"), g);
        assert_eq!(p("(1 - q1) x1 + q1"), g);
        assert_eq!(p("-x1^2"), -Polynomial::x(1).pow(2));
        assert!("x0".parse::<Polynomial>().is_err());
        assert!("x1 +".parse::<Polynomial>().is_err());
        assert!("(x1".parse::<Polynomial>().is_err());
    }

    #[test]
    fn render_parse_round_trip() {
        for s in ["(1-q1)*x1 + q1", "x1*x2 + q1", "-(q1-q2)*x1 + 7*y2", "0"] {
            let f = p(s);
            assert_eq!(p(&f.to_string()), f);
        }
    }
}
