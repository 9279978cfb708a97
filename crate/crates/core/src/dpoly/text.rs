//! Text and JSON forms of differential polynomials.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := int ['/' int] | 'x' int ['[' int ']'] ['^' int]
//! ```

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{DiffMonomial, DiffPoly, DpolyError, VarRef};
use crate::exact::{parse_rational, Monomial, ParamPoly, Poly, Rational, Ring};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, DpolyError> {
        Err(DpolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<(), DpolyError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str, DpolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn small(&mut self, what: &str) -> Result<u32, DpolyError> {
        let start = self.pos;
        let s = self.digits()?;
        s.parse().map_err(|_| DpolyError::Parse {
            pos: start,
            msg: format!("{what} too large"),
        })
    }

    fn factor(&mut self) -> Result<(Rational, DiffMonomial), DpolyError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let index = self.small("variable index")? as usize;
                if index > self.n {
                    return Err(DpolyError::VarIndex { index, n: self.n });
                }
                let mut order = 0;
                if self.peek() == Some(b'[') {
                    self.pos += 1;
                    order = self.small("derivative order")?;
                    self.expect(b']')?;
                }
                let mut exp = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    exp = self.small("exponent")?;
                }
                let one = <Rational as Ring>::one();
                Ok((one, Monomial::from_factors([(VarRef::new(index, order), exp)])))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let mut text = num.to_string();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den_pos = self.pos;
                    let den = self.digits()?;
                    if den.parse::<BigInt>().map_or(true, |d| d == BigInt::from(0)) {
                        return Err(DpolyError::Parse {
                            pos: den_pos,
                            msg: "zero denominator".into(),
                        });
                    }
                    text = format!("{num}/{den}");
                }
                Ok((parse_rational(&text).unwrap(), Monomial::one()))
            }
            Some(_) => self.err("expected a variable or a number"),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<(Rational, DiffMonomial), DpolyError> {
        let (mut c, mut m) = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let (c2, m2) = self.factor()?;
            c *= c2;
            m = m.mul(&m2);
        }
        Ok((c, m))
    }

    fn poly(&mut self) -> Result<DiffPoly, DpolyError> {
        let mut out: Poly<VarRef, ParamPoly> = Poly::zero();
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (c, m) = self.term()?;
            let c = if negate { -c } else { c };
            out.add_term(m, ParamPoly::rational(c));
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                None => break,
                Some(_) => return self.err("expected '+', '-', '*' or end of input"),
            }
            self.pos += 1;
        }
        Ok(DiffPoly::from_poly(self.n, out))
    }
}

/// Parses the text form of a differential polynomial over `X_0..X_n`.
pub fn parse(text: &str, n: usize) -> Result<DiffPoly, DpolyError> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    }
    .poly()
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &DiffMonomial) -> fmt::Result {
    for (idx, (v, e)) in m.factors().iter().enumerate() {
        if idx > 0 {
            write!(f, "*")?;
        }
        write!(f, "{v}")?;
        if *e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical form: terms in decreasing canonical order, rational
/// coefficients in lowest terms. Parametric coefficients are parenthesized.
impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            match c.as_rational() {
                Some(r) => {
                    let neg = r < <Rational as Ring>::zero();
                    let abs = if neg { -r } else { r };
                    match (idx, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    if m.is_one() {
                        write!(f, "{abs}")?;
                    } else {
                        if !Ring::is_one(&abs) {
                            write!(f, "{abs}*")?;
                        }
                        write_monomial(f, m)?;
                    }
                }
                None => {
                    if idx > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "({c})")?;
                    if !m.is_one() {
                        write!(f, "*")?;
                        write_monomial(f, m)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl DiffPoly {
    /// `{"N":…, "terms":[{"coeff":"p/q","monomial":[[i,k,e],…]},…]}`, terms in
    /// decreasing canonical order.
    pub fn to_json(&self) -> Result<Value, DpolyError> {
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in self.terms() {
            let c = c.as_rational().ok_or(DpolyError::ParametricCoefficient)?;
            let mono: Vec<Value> = m
                .factors()
                .iter()
                .map(|(v, e)| json!([v.var, v.order, e]))
                .collect();
            terms.push(json!({"coeff": c.to_string(), "monomial": mono}));
        }
        Ok(json!({"N": self.n, "terms": terms}))
    }

    pub fn from_json(value: &Value) -> Result<DiffPoly, DpolyError> {
        let bad = |msg: &str| DpolyError::Json(msg.to_string());
        let n = value
            .get("N")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing N"))? as usize;
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?;
        let mut poly: Poly<VarRef, ParamPoly> = Poly::zero();
        for t in terms {
            let coeff = t
                .get("coeff")
                .and_then(Value::as_str)
                .and_then(parse_rational)
                .ok_or_else(|| bad("bad coefficient"))?;
            let mono = t
                .get("monomial")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("bad monomial"))?;
            let mut factors = Vec::with_capacity(mono.len());
            for f in mono {
                let triple: Vec<u64> = f
                    .as_array()
                    .filter(|a| a.len() == 3)
                    .and_then(|a| a.iter().map(Value::as_u64).collect())
                    .ok_or_else(|| bad("monomial factors are [i, k, e] triples"))?;
                let index = triple[0] as usize;
                if index > n {
                    return Err(DpolyError::VarIndex { index, n });
                }
                factors.push((VarRef::new(index, triple[1] as u32), triple[2] as u32));
            }
            poly.add_term(Monomial::from_factors(factors), ParamPoly::rational(coeff));
        }
        Ok(DiffPoly::from_poly(n, poly))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn parse_examples() {
        assert_eq!(parse("x0", 0).unwrap(), DiffPoly::var(0, 0, 0));

        let w = parse("x0*x1[1] - x1*x0[1]", 1).unwrap();
        let expect = &(&DiffPoly::var(1, 0, 0) * &DiffPoly::var(1, 1, 1))
            - &(&DiffPoly::var(1, 1, 0) * &DiffPoly::var(1, 0, 1));
        assert_eq!(w, expect);

        let p = parse("3/2*x2[4]^2", 2).unwrap();
        assert_eq!(p, DiffPoly::var(2, 2, 4).pow(2).scale(&rat(3, 2)));
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(parse("x3", 2), Err(DpolyError::VarIndex { index: 3, n: 2 }));
        match parse("x0 + * x1", 1) {
            Err(DpolyError::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("x0[1", 1), Err(DpolyError::Parse { pos: 4, .. })));
        assert!(matches!(parse("", 1), Err(DpolyError::Parse { pos: 0, .. })));
        assert!(matches!(parse("1/0*x0", 1), Err(DpolyError::Parse { pos: 2, .. })));
    }

    #[test]
    fn canonical_printing() {
        let w = parse("x0*x1[1] - x1*x0[1]", 1).unwrap();
        assert_eq!(w.to_string(), "-x0[1]*x1 + x0*x1[1]");
        assert_eq!(parse("2 - 4/6*x0^2", 0).unwrap().to_string(), "-2/3*x0^2 + 2");
        assert_eq!(parse("x0 - x0", 0).unwrap().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let p = parse("3/2*x2[4]^2 - x0*x1 + 7", 2).unwrap();
        let v = p.to_json().unwrap();
        assert_eq!(v["terms"][0]["monomial"], json!([[0, 0, 1], [1, 0, 1]]));
        assert_eq!(DiffPoly::from_json(&v).unwrap(), p);
    }
}
