//! Text syntax for cyclotomic scalars and 3×3 matrix literals.
//!
//! Scalars: integer literals, `z(N)` or `z(N)^k` for ζ_N^k, the binary
//! operators `+ - * /`, unary minus, parentheses and integer powers `x^k`.
//! Matrices: `[[a,b,c],[d,e,f],[g,h,i]]` with scalar entries, row-major.

use num_bigint::BigInt;

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::rational::rat_from_bigint;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        end = j + 1;
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n: BigInt = s[i..end].parse().map_err(|_| Error::Parse(format!("bad integer at {i}")))?;
                out.push(Tok::Int(n));
            }
            _ => {
                chars.next();
                out.push(match c {
                    'z' => Tok::Z,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    other => return Err(Error::Parse(format!("unexpected character {other:?} at {i}"))),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            other => Err(Error::Parse(format!("expected {want:?}, found {other:?}"))),
        }
    }

    fn small_int(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Int(n)) => {
                let v: i64 = n.try_into().map_err(|_| Error::Parse("integer too large".into()))?;
                Ok(if neg { -v } else { v })
            }
            other => Err(Error::Parse(format!("expected integer, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<CycNum> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    let (a, b) = CycNum::unify(&acc, &rhs)?;
                    acc = &a + &b;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    let (a, b) = CycNum::unify(&acc, &rhs)?;
                    acc = &a - &b;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CycNum> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let (a, b) = CycNum::unify(&acc, &rhs)?;
                    acc = &a * &b;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let (a, b) = CycNum::unify(&acc, &rhs)?;
                    acc = a.div(&b)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<CycNum> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<CycNum> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = self.small_int()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CycNum> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(CycNum::rational(rat_from_bigint(n))),
            Some(Tok::Z) => {
                self.expect(Tok::LParen)?;
                let n = self.small_int()?;
                self.expect(Tok::RParen)?;
                if n < 1 {
                    return Err(Error::Parse(format!("conductor must be positive, got {n}")));
                }
                crate::cyclo::check_conductor(n as u64)?;
                // `z(N)^k` is handled here so that negative k never inverts a sum.
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    let k = self.small_int()?;
                    return Ok(CycNum::zeta(n as u64, k));
                }
                Ok(CycNum::zeta(n as u64, 1))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return Err(Error::Parse(format!("trailing input at token {}", self.pos)));
        }
        Ok(())
    }
}

pub fn parse_scalar(s: &str) -> Result<CycNum> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0 };
    let v = p.expr()?;
    p.finish()?;
    Ok(v)
}

/// Entries are returned at their own conductors; callers embed as needed.
pub fn parse_matrix(s: &str) -> Result<[[CycNum; 3]; 3]> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0 };
    p.expect(Tok::LBracket)?;
    let mut rows = Vec::with_capacity(3);
    for r in 0..3 {
        if r > 0 {
            p.expect(Tok::Comma)?;
        }
        p.expect(Tok::LBracket)?;
        let mut row = Vec::with_capacity(3);
        for c in 0..3 {
            if c > 0 {
                p.expect(Tok::Comma)?;
            }
            row.push(p.expr()?);
        }
        p.expect(Tok::RBracket)?;
        rows.push(row_array(row));
    }
    p.expect(Tok::RBracket)?;
    p.finish()?;
    Ok(row_array(rows))
}

fn row_array<T>(v: Vec<T>) -> [T; 3] {
    v.try_into().unwrap_or_else(|_| unreachable!("exactly three items"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rat;

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("z(3)^2").unwrap(), CycNum::zeta(3, 2));
        assert_eq!(parse_scalar("z(3)").unwrap(), CycNum::zeta(3, 1));
        assert_eq!(parse_scalar("z(7)^-1").unwrap(), CycNum::zeta(7, 6));
        assert_eq!(parse_scalar("1 + z(3) + z(3)^2").unwrap(), CycNum::int(0));
        assert_eq!(parse_scalar("-(2)/4").unwrap(), CycNum::rational(Rat::new(-1, 2)));
        assert_eq!(parse_scalar("(1+z(4))^2").unwrap(), parse_scalar("2*z(4)").unwrap());
        assert_eq!(parse_scalar("z(3)*z(4)").unwrap(), CycNum::zeta(12, 7));
    }

    #[test]
    fn errors() {
        assert!(parse_scalar("1 +").is_err());
        assert!(parse_scalar("z(0)").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("w").is_err());
        assert!(parse_matrix("[[1,0],[0,1]]").is_err());
    }

    #[test]
    fn matrix_literal() {
        let m = parse_matrix("[[1,0,0],[0,z(3),0],[0,0,z(3)^2]]").unwrap();
        assert_eq!(m[1][1], CycNum::zeta(3, 1));
        assert_eq!(m[2][2], CycNum::zeta(3, 2));
        assert!(m[0][1].is_zero());
    }

    #[test]
    fn display_round_trip() {
        for s in ["1 + 2*z(3)^2", "(1/3)*z(12)^5 - 7", "z(9)^4 + z(9)^7"] {
            let x = parse_scalar(s).unwrap();
            assert_eq!(parse_scalar(&x.to_string()).unwrap(), x, "{s}");
        }
    }
}
