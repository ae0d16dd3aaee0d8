//! Text syntax for group ring elements.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?
//! atom    := integer | 't' | 't' index | 'Phi' d '(' expr ')' | '(' expr ')'
//! ```
//!
//! `t` is accepted when the group has one generator, `t1..tn` always.
//! Negative exponents are allowed on monomials only; `/` divides by a
//! nonzero constant.

use num_bigint::BigInt;

use super::{GroupDescriptor, GroupRingElem};
use crate::coeffs::{cyclotomic_polynomial, Field};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().unwrap())));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` at position {i} in `{text}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    group: GroupDescriptor,
    field: &'a Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn err(&self, msg: &str) -> Error {
        let at = self.toks.get(self.pos).map_or(self.text.len(), |(p, _)| *p);
        Error::Parse(format!("{msg} at position {at} in `{}`", self.text))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<GroupRingElem> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<GroupRingElem> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(self.err("division by a non-constant or zero"));
                }
                let inv = d.augmentation().inv()?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<GroupRingElem> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<GroupRingElem> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let k = match self.peek() {
            Some(Tok::Num(n)) => {
                let n: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                self.pos += 1;
                n
            }
            _ => return Err(self.err("expected an integer exponent")),
        };
        if paren {
            self.expect(')')?;
        }
        if !neg {
            return Ok(base.pow(k as u32));
        }
        // Negative powers: only monomials c * t^e are invertible here.
        if base.terms().len() != 1 {
            return Err(self.err("negative exponent on a non-monomial"));
        }
        let (e, c) = base.terms().iter().next().unwrap();
        let inv_e: Vec<i64> = e.iter().map(|x| -x * k).collect();
        let inv_c = c.pow(-k)?;
        Ok(GroupRingElem::monomial(self.group, self.field, inv_e, inv_c))
    }

    fn variable(&self, name: &str) -> Option<usize> {
        let n = self.group.nvars();
        if name == "t" {
            return (n == 1).then_some(0);
        }
        let idx: usize = name.strip_prefix('t')?.parse().ok()?;
        (1..=n).contains(&idx).then(|| idx - 1)
    }

    fn atom(&mut self) -> Result<GroupRingElem> {
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(GroupRingElem::constant(self.group, self.field.from_bigint(&n)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                if let Some(i) = self.variable(&name) {
                    self.pos += 1;
                    return Ok(GroupRingElem::var(self.group, self.field, i));
                }
                if let Some(d) = name.strip_prefix("Phi").and_then(|d| d.parse::<u64>().ok()) {
                    if d == 0 {
                        return Err(self.err("cyclotomic order must be positive"));
                    }
                    self.pos += 1;
                    self.expect('(')?;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    let phi = cyclotomic_polynomial(d);
                    let mut acc = GroupRingElem::zero(self.group, self.field);
                    for c in phi.coeffs().iter().rev() {
                        acc = &(&acc * &arg) + &GroupRingElem::constant(self.group, self.field.from_bigint(c));
                    }
                    return Ok(acc);
                }
                Err(self.err(&format!("unknown symbol `{name}`")))
            }
            Some(Tok::Sym(c)) => Err(self.err(&format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses an element of `kG` written in the monomial syntax, e.g.
/// `t1^-2*t2^3 - 3`, `(t - 1)*Phi6(t)`.
pub fn parse_element(text: &str, group: GroupDescriptor, field: &Field) -> Result<GroupRingElem> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse(format!("empty expression `{text}`")));
    }
    let mut p = Parser { text, toks, pos: 0, group, field };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}
