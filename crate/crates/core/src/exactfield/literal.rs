//! Text forms: scalars `p/q` or `(a + b * sqrt(D))`, vectors `[x, y, z]`,
//! projective points `<x : y : z>`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{FieldError, ProjPoint, Scalar, Vec3};

/// Character cursor shared by the hand-written parsers of this crate.
#[derive(Clone, Debug)]
pub struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), FieldError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    pub fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(w) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    /// Consumes `[A-Za-z][A-Za-z0-9]*`.
    pub fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return None;
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.bump();
        }
        Some(&self.src[start..self.pos])
    }

    pub fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            None
        } else {
            self.src[start..self.pos].parse().ok()
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> FieldError {
        FieldError::Syntax { pos: self.pos, msg: msg.into() }
    }
}

pub fn parse_scalar_at(cur: &mut Cursor<'_>) -> Result<Scalar, FieldError> {
    cur.skip_ws();
    if cur.eat('(') {
        let a = parse_scalar_at(cur)?;
        cur.expect('+')?;
        let b = parse_scalar_at(cur)?;
        cur.expect('*')?;
        if !cur.eat_word("sqrt") {
            return Err(cur.error("expected 'sqrt'"));
        }
        cur.expect('(')?;
        let d = parse_scalar_at(cur)?;
        cur.expect(')')?;
        cur.expect(')')?;
        return Scalar::quad(&a, &b, &d);
    }
    let neg = cur.eat('-');
    cur.skip_ws();
    let num = cur.digits().ok_or_else(|| cur.error("expected number"))?;
    let den = if cur.eat('/') {
        cur.skip_ws();
        cur.digits().ok_or_else(|| cur.error("expected denominator"))?
    } else {
        BigInt::from(1)
    };
    if den.is_zero() {
        return Err(cur.error("zero denominator"));
    }
    let num = if neg { -num } else { num };
    Ok(Scalar::Rational(BigRational::new(num, den)))
}

fn finish<T>(cur: &mut Cursor<'_>, v: T) -> Result<T, FieldError> {
    cur.skip_ws();
    if cur.at_end() {
        Ok(v)
    } else {
        Err(cur.error("trailing input"))
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar, FieldError> {
    let mut cur = Cursor::new(s);
    let v = parse_scalar_at(&mut cur)?;
    finish(&mut cur, v)
}

pub fn parse_vec3_at(cur: &mut Cursor<'_>) -> Result<Vec3, FieldError> {
    cur.expect('[')?;
    let x = parse_scalar_at(cur)?;
    cur.expect(',')?;
    let y = parse_scalar_at(cur)?;
    cur.expect(',')?;
    let z = parse_scalar_at(cur)?;
    cur.expect(']')?;
    Ok(Vec3::new(x, y, z))
}

pub fn parse_vec3(s: &str) -> Result<Vec3, FieldError> {
    let mut cur = Cursor::new(s);
    let v = parse_vec3_at(&mut cur)?;
    finish(&mut cur, v)
}

pub fn parse_proj_at(cur: &mut Cursor<'_>) -> Result<ProjPoint, FieldError> {
    cur.expect('<')?;
    let x = parse_scalar_at(cur)?;
    cur.expect(':')?;
    let y = parse_scalar_at(cur)?;
    cur.expect(':')?;
    let z = parse_scalar_at(cur)?;
    cur.expect('>')?;
    ProjPoint::new(Vec3::new(x, y, z))
}

pub fn parse_proj(s: &str) -> Result<ProjPoint, FieldError> {
    let mut cur = Cursor::new(s);
    let v = parse_proj_at(&mut cur)?;
    finish(&mut cur, v)
}
