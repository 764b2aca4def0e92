//! Subgroup spec grammar.
//!
//! ```text
//! spec     := 'v=' list | 'alpha=' list
//!           | 'circle(' INT ',' INT ')@' torus
//!           | 'sub(' [ 'roots=' root (',' root)* ] [ ';' ] [ 'center=' vec (',' vec)* ] ')'
//! torus    := ('A2std' | 'B2std' | 'C2std' | 'G2std') [ ':' N ] | 'e(' N ',' N ')'
//! root     := 'a' N | vec            a<N> is the N-th simple root (1-based, global)
//! vec      := '[' list ']'
//! list     := rat (',' rat)*
//! rat      := ['-'] digits [ '/' digits ]
//! ```
//!
//! Vectors are in ambient coordinates. For `circle(p,q)` the named torus is a
//! rank-two coordinate torus W; the circle has tangent u (see [`TorusKind`])
//! and the subtorus is s = Ru ⊕ (t ∩ W^⊥). `:N` picks the N-th factor of the
//! matching type (default: the first).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TorusKind {
    /// u = (p, q, −p−q) in an A2 block.
    A2Std,
    /// u = (p, q) in a B2 or C2 block.
    B2Std,
    C2Std,
    /// u = p·h_γ + q·h_α in the G2 block, with γ the highest root (orthogonal to α = (1,−1,0)).
    G2Std,
    /// u = p·e_i + q·e_j (0-based ambient coordinates).
    Coords(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusId {
    pub kind: TorusKind,
    /// 1-based occurrence among factors of the matching type.
    pub occurrence: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootRef {
    Simple(usize),
    Vector(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubgroupSpec {
    Vector(Vec<Rational>),
    Functional(Vec<Rational>),
    Circle { p: i64, q: i64, torus: TorusId },
    Regular { roots: Vec<RootRef>, center: Vec<Vec<Rational>> },
}

impl std::str::FromStr for SubgroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_subgroup_spec(s)
    }
}

fn fmt_list(v: &[Rational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::Vector(v) => write!(f, "v={}", fmt_list(v)),
            SubgroupSpec::Functional(v) => write!(f, "alpha={}", fmt_list(v)),
            SubgroupSpec::Circle { p, q, torus } => {
                write!(f, "circle({p},{q})@")?;
                let name = match torus.kind {
                    TorusKind::A2Std => "A2std",
                    TorusKind::B2Std => "B2std",
                    TorusKind::C2Std => "C2std",
                    TorusKind::G2Std => "G2std",
                    TorusKind::Coords(i, j) => return write!(f, "e({},{})", i + 1, j + 1),
                };
                write!(f, "{name}")?;
                if torus.occurrence != 1 {
                    write!(f, ":{}", torus.occurrence)?;
                }
                Ok(())
            }
            SubgroupSpec::Regular { roots, center } => {
                write!(f, "sub(")?;
                let rs: Vec<String> = roots
                    .iter()
                    .map(|r| match r {
                        RootRef::Simple(i) => format!("a{}", i + 1),
                        RootRef::Vector(v) => format!("[{}]", fmt_list(v)),
                    })
                    .collect();
                if !rs.is_empty() {
                    write!(f, "roots={}", rs.join(","))?;
                }
                if !center.is_empty() {
                    if !rs.is_empty() {
                        write!(f, "; ")?;
                    }
                    let cs: Vec<String> = center.iter().map(|v| format!("[{}]", fmt_list(v))).collect();
                    write!(f, "center={}", cs.join(","))?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{tok}'")))
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected digits"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn natural(&mut self) -> Result<usize> {
        self.skip_ws();
        let at = self.pos;
        self.digits()?.parse().map_err(|_| Error::parse(at, "number out of range"))
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let at = self.pos;
        let neg = self.eat("-");
        if !neg {
            self.eat("+");
        }
        self.skip_ws();
        let d = self.digits()?;
        let n: i64 = d.parse().map_err(|_| Error::parse(at, "integer out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn rational(&mut self) -> Result<Rational> {
        let n = self.integer()?;
        if self.eat("/") {
            self.skip_ws();
            let dat = self.pos;
            let d: i64 = self.digits()?.parse().map_err(|_| Error::parse(dat, "integer out of range"))?;
            if d == 0 {
                return Err(Error::parse(dat, "zero denominator"));
            }
            return Ok(Rational::new(n, d));
        }
        Ok(Rational::from_int(n))
    }

    fn list(&mut self) -> Result<Vec<Rational>> {
        let mut v = vec![self.rational()?];
        while self.eat(",") {
            v.push(self.rational()?);
        }
        Ok(v)
    }

    fn bracketed(&mut self) -> Result<Vec<Rational>> {
        self.expect("[")?;
        let v = self.list()?;
        self.expect("]")?;
        Ok(v)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn parse_subgroup_spec(src: &str) -> Result<SubgroupSpec> {
    let mut c = Cursor { src, pos: 0 };
    let spec = if c.eat("v=") {
        SubgroupSpec::Vector(c.list()?)
    } else if c.eat("alpha=") {
        SubgroupSpec::Functional(c.list()?)
    } else if c.eat("circle(") {
        let at = c.pos;
        let p = c.integer()?;
        c.expect(",")?;
        let q = c.integer()?;
        c.expect(")")?;
        if gcd(p, q) != 1 {
            return Err(Error::parse(at, format!("circle weights ({p},{q}) are not coprime")));
        }
        c.expect("@")?;
        c.skip_ws();
        let kind = if c.eat("A2std") {
            TorusKind::A2Std
        } else if c.eat("B2std") {
            TorusKind::B2Std
        } else if c.eat("C2std") {
            TorusKind::C2Std
        } else if c.eat("G2std") {
            TorusKind::G2Std
        } else if c.eat("e(") {
            let at = c.pos;
            let i = c.natural()?;
            c.expect(",")?;
            let j = c.natural()?;
            c.expect(")")?;
            if i == 0 || j == 0 || i == j {
                return Err(Error::parse(at, "coordinate indices must be distinct and 1-based"));
            }
            TorusKind::Coords(i - 1, j - 1)
        } else {
            return Err(c.err("unknown torus id (expected A2std, B2std, C2std, G2std or e(i,j))"));
        };
        let mut occurrence = 1;
        if !matches!(kind, TorusKind::Coords(..)) && c.eat(":") {
            let at = c.pos;
            occurrence = c.natural()?;
            if occurrence == 0 {
                return Err(Error::parse(at, "factor occurrence is 1-based"));
            }
        }
        SubgroupSpec::Circle { p, q, torus: TorusId { kind, occurrence } }
    } else if c.eat("sub(") {
        let mut roots = Vec::new();
        let mut center = Vec::new();
        if c.eat("roots=") {
            loop {
                c.skip_ws();
                if c.eat("a") {
                    let at = c.pos;
                    let i = c.natural()?;
                    if i == 0 {
                        return Err(Error::parse(at, "simple root indices are 1-based"));
                    }
                    roots.push(RootRef::Simple(i - 1));
                } else if c.peek() == Some('[') {
                    roots.push(RootRef::Vector(c.bracketed()?));
                } else {
                    return Err(c.err("expected a root: a<N> or [..]"));
                }
                if !c.eat(",") {
                    break;
                }
            }
            c.eat(";");
        }
        if c.eat("center=") {
            loop {
                center.push(c.bracketed()?);
                if !c.eat(",") {
                    break;
                }
            }
        }
        c.expect(")")?;
        SubgroupSpec::Regular { roots, center }
    } else {
        return Err(c.err("expected 'v=', 'alpha=', 'circle(' or 'sub('"));
    };
    if !c.at_end() {
        return Err(c.err("unexpected trailing input"));
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    #[test]
    fn parses_each_variant() {
        assert_eq!(parse_subgroup_spec("v=1,1,-1,-1").unwrap(), SubgroupSpec::Vector(int_vec(&[1, 1, -1, -1])));
        assert_eq!(
            parse_subgroup_spec("alpha=1/2, -3").unwrap(),
            SubgroupSpec::Functional(vec![Rational::new(1, 2), Rational::from_int(-3)])
        );
        assert_eq!(
            parse_subgroup_spec("circle(3,1)@C2std").unwrap(),
            SubgroupSpec::Circle { p: 3, q: 1, torus: TorusId { kind: TorusKind::C2Std, occurrence: 1 } }
        );
        assert_eq!(
            parse_subgroup_spec("sub(roots=a1,a3,a4)").unwrap(),
            SubgroupSpec::Regular { roots: vec![RootRef::Simple(0), RootRef::Simple(2), RootRef::Simple(3)], center: vec![] }
        );
        let s = parse_subgroup_spec("sub(roots=a2,[0,0,-2,1,1]; center=[1,-1,0,1,0])").unwrap();
        assert_eq!(s.to_string(), "sub(roots=a2,[0,0,-2,1,1]; center=[1,-1,0,1,0])");
        assert_eq!(
            parse_subgroup_spec("circle(1,-2)@e(2,3)").unwrap().to_string(),
            "circle(1,-2)@e(2,3)"
        );
        assert_eq!(parse_subgroup_spec("circle(1,0)@G2std:2").unwrap().to_string(), "circle(1,0)@G2std:2");
        assert_eq!(parse_subgroup_spec("sub(center=[1,0,-1,0],[0,1,0,-1])").unwrap().to_string(), "sub(center=[1,0,-1,0],[0,1,0,-1])");
    }

    #[test]
    fn reports_positions() {
        let pos = |s: &str| match parse_subgroup_spec(s) {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("{other:?}"),
        };
        assert_eq!(pos("w=1"), 0);
        assert_eq!(pos("v=1,x"), 4);
        assert_eq!(pos("circle(2,4)@C2std"), 7);
        assert_eq!(pos("circle(1,1)@Z"), 12);
        assert_eq!(pos("v=1/0"), 4);
        assert_eq!(pos("sub(roots=b1)"), 10);
    }
}
