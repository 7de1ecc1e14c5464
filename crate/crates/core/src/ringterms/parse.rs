use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exactfield::{Cursor, Scalar};

use super::{RingError, RingTerm};

/// `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := '-' factor | int ['/' int] | ident | '(' expr ')'`.
pub fn parse_poly(text: &str) -> Result<RingTerm, RingError> {
    let mut cur = Cursor::new(text);
    let e = expr(&mut cur)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(err(&cur, "trailing input"));
    }
    Ok(e)
}

fn err(cur: &Cursor<'_>, msg: &str) -> RingError {
    RingError::Syntax { pos: cur.pos(), msg: msg.to_string() }
}

fn expr(cur: &mut Cursor<'_>) -> Result<RingTerm, RingError> {
    let mut acc = term(cur)?;
    loop {
        if cur.eat('+') {
            acc = RingTerm::add(acc, term(cur)?);
        } else if cur.eat('-') {
            acc = RingTerm::sub(acc, term(cur)?);
        } else {
            return Ok(acc);
        }
    }
}

fn term(cur: &mut Cursor<'_>) -> Result<RingTerm, RingError> {
    let mut acc = factor(cur)?;
    while cur.eat('*') {
        acc = RingTerm::mul(acc, factor(cur)?);
    }
    Ok(acc)
}

fn factor(cur: &mut Cursor<'_>) -> Result<RingTerm, RingError> {
    cur.skip_ws();
    match cur.peek() {
        Some('-') => {
            cur.bump();
            match factor(cur)? {
                RingTerm::Const(c) => Ok(RingTerm::Const(-c)),
                f => Ok(RingTerm::sub(RingTerm::int(0), f)),
            }
        }
        Some('(') => {
            cur.bump();
            let e = expr(cur)?;
            if !cur.eat(')') {
                return Err(err(cur, "expected ')'"));
            }
            Ok(e)
        }
        Some(c) if c.is_ascii_digit() => {
            let num = cur.digits().expect("digit");
            let den = if cur.eat('/') {
                cur.skip_ws();
                cur.digits().ok_or_else(|| err(cur, "expected denominator"))?
            } else {
                BigInt::from(1)
            };
            if den.is_zero() {
                return Err(err(cur, "zero denominator"));
            }
            Ok(RingTerm::Const(Scalar::from(BigRational::new(num, den))))
        }
        Some(c) if c.is_ascii_alphabetic() => Ok(RingTerm::var(cur.ident().expect("alphabetic"))),
        Some(_) => Err(err(cur, "expected number, variable or '('")),
        None => Err(err(cur, "unexpected end of input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let p = parse_poly("X*X - 2").unwrap();
        assert_eq!(
            p,
            RingTerm::sub(RingTerm::mul(RingTerm::var("X"), RingTerm::var("X")), RingTerm::int(2))
        );
        assert_eq!(p.to_string(), "X * X - 2");
        assert_eq!(parse_poly("0").unwrap(), RingTerm::int(0));
    }

    #[test]
    fn canonical_reprint() {
        let p = parse_poly("(X1 + X2) * X1 - 1").unwrap();
        assert_eq!(p.to_string(), "(X1 + X2) * X1 - 1");
        for s in ["X - (Y - Z)", "X - Y - Z", "X * (Y * Z)", "-2 * X + 1/2", "0 - X", "X - -3"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p, "{s}");
        }
        assert_eq!(parse_poly("((X))").unwrap().to_string(), "X");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_poly("X +"), Err(RingError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("X ) "), Err(RingError::Syntax { .. })));
        assert!(matches!(parse_poly("1/0"), Err(RingError::Syntax { .. })));
        assert!(matches!(parse_poly("X $ Y"), Err(RingError::Syntax { .. })));
    }
}
