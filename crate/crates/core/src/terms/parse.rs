//! Recursive descent parser for
//!
//! ```text
//! term  := ident | const | '(' term 'x' term ')'
//! const := '[' s ',' s ',' s ']' | '<' s ':' s ':' s '>'
//! ```
//!
//! Identifiers are `[A-Za-z][A-Za-z0-9]*`; the bare word `x` is reserved for the operator.

use crate::exactfield::{parse_proj_at, parse_vec3_at, Cursor, FieldError};

use super::{CrossTerm, TermError};

pub fn parse_term(text: &str) -> Result<CrossTerm, TermError> {
    let mut cur = Cursor::new(text);
    let t = term(&mut cur)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(syntax(&cur, "trailing input after term"));
    }
    Ok(t)
}

/// One term per non-empty line; `#` starts a comment line.
pub fn parse_term_batch(text: &str) -> Result<Vec<CrossTerm>, TermError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_term)
        .collect()
}

fn syntax(cur: &Cursor<'_>, msg: &str) -> TermError {
    TermError::Syntax { pos: cur.pos(), msg: msg.to_string() }
}

fn lift(e: FieldError) -> TermError {
    match e {
        FieldError::Syntax { pos, msg } => TermError::Syntax { pos, msg },
        other => TermError::Field(other),
    }
}

fn term(cur: &mut Cursor<'_>) -> Result<CrossTerm, TermError> {
    cur.skip_ws();
    match cur.peek() {
        Some('(') => {
            cur.bump();
            let l = term(cur)?;
            cur.skip_ws();
            let at = cur.pos();
            match cur.ident() {
                Some("x") => {}
                _ => {
                    return Err(TermError::Syntax { pos: at, msg: "expected operator 'x'".into() })
                }
            }
            let r = term(cur)?;
            if !cur.eat(')') {
                return Err(syntax(cur, "expected ')'"));
            }
            Ok(CrossTerm::cross(&l, &r))
        }
        Some('[') => parse_vec3_at(cur).map(CrossTerm::affine).map_err(lift),
        Some('<') => parse_proj_at(cur).map(CrossTerm::proj).map_err(lift),
        Some(c) if c.is_ascii_alphabetic() => {
            let at = cur.pos();
            let name = cur.ident().expect("alphabetic start");
            if name == "x" {
                return Err(TermError::Reserved { pos: at });
            }
            Ok(CrossTerm::var(name))
        }
        Some(_) => Err(syntax(cur, "expected variable, constant or '('")),
        None => Err(syntax(cur, "unexpected end of input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{ProjPoint, Vec3};
    use crate::terms::vanishing_example;

    #[test]
    fn simple_cross() {
        let t = parse_term("(V x W)").unwrap();
        assert_eq!(t, CrossTerm::cross(&CrossTerm::var("V"), &CrossTerm::var("W")));
    }

    #[test]
    fn vanishing_example_source() {
        let src = "(((V x (V x W)) x V) x (V x W))";
        assert_eq!(parse_term(src).unwrap(), vanishing_example());
        assert_eq!(parse_term(src).unwrap().to_string(), src);
    }

    #[test]
    fn constants() {
        let t = parse_term("((V x [0,0,1]) x <1:2:3>)").unwrap();
        let expect = CrossTerm::cross(
            &CrossTerm::cross(&CrossTerm::var("V"), &CrossTerm::affine(Vec3::from_ints(0, 0, 1))),
            &CrossTerm::proj(ProjPoint::from_ints(1, 2, 3)),
        );
        assert_eq!(t, expect);
        assert_eq!(t.to_string(), "((V x [0, 0, 1]) x <1 : 2 : 3>)");
    }

    #[test]
    fn whitespace_is_flexible() {
        assert_eq!(
            parse_term("  ( V1   x\n(W x U2) ) ").unwrap().to_string(),
            "(V1 x (W x U2))"
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_term("x"), Err(TermError::Reserved { pos: 0 }));
        assert!(matches!(parse_term("(V x x)"), Err(TermError::Reserved { pos: 5 })));
        assert!(matches!(parse_term("(V y W)"), Err(TermError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_term("(V x W"), Err(TermError::Syntax { .. })));
        assert!(matches!(parse_term("V W"), Err(TermError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_term("<0:0:0>"), Err(TermError::Field(FieldError::ZeroVector))));
        assert!(matches!(parse_term("V x W"), Err(TermError::Syntax { .. })));
    }

    #[test]
    fn batch() {
        let ts = parse_term_batch("# comment\n(V x W)\n\nU\n").unwrap();
        assert_eq!(ts.len(), 2);
    }
}
