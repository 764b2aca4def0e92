//! Group spec grammar.
//!
//! ```text
//! spec    := factor (sep factor)*
//! sep     := 'x' | '×' | '+'
//! factor  := TYPE RANK            A1.., B1.., C1.., D2.., E6..E8, F4, G2
//!          | 'T' RANK             central torus of that dimension
//!          | ALIAS '(' N ')'      SU, U, SO, Spin, Sp
//! ```
//!
//! Aliases are resolved at Lie-algebra level: `SU(n)` = A(n-1), `U(n)` =
//! A(n-1)+T1, `SO(2k+1)` = `Spin(2k+1)` = Bk, `SO(2k)` = Dk (k ≥ 2),
//! `SO(2)` = T1, `Sp(n)` = Cn. Whitespace is ignored between tokens.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl SimpleType {
    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => SimpleType::A,
            'B' => SimpleType::B,
            'C' => SimpleType::C,
            'D' => SimpleType::D,
            'E' => SimpleType::E,
            'F' => SimpleType::F,
            'G' => SimpleType::G,
            _ => return None,
        })
    }

    pub fn valid_rank(self, n: usize) -> bool {
        match self {
            SimpleType::A | SimpleType::B | SimpleType::C => n >= 1,
            SimpleType::D => n >= 2,
            SimpleType::E => (6..=8).contains(&n),
            SimpleType::F => n == 4,
            SimpleType::G => n == 2,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub ty: SimpleType,
    pub rank: usize,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.ty, self.rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub factors: Vec<Factor>,
    pub central: usize,
    pub name: Option<String>,
}

impl GroupSpec {
    pub fn new(factors: Vec<Factor>, central: usize) -> Result<Self> {
        for f in &factors {
            if !f.ty.valid_rank(f.rank) {
                return Err(Error::invalid(format!("invalid rank {} for type {}", f.rank, f.ty)));
            }
        }
        if factors.is_empty() && central == 0 {
            return Err(Error::invalid("empty group spec"));
        }
        Ok(GroupSpec { factors, central, name: None })
    }

    /// `A4`, `C2xA1`, `B3+T1`, `T2`.
    pub fn canonical(&self) -> String {
        let mut s = self.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("x");
        if self.central > 0 {
            if !s.is_empty() {
                s.push('+');
            }
            s.push_str(&format!("T{}", self.central));
        }
        s
    }

    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn rank(&self) -> usize {
        self.semisimple_rank() + self.central
    }

    pub fn has_exceptional_e(&self) -> bool {
        self.factors.iter().any(|f| f.ty == SimpleType::E)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_group_spec(s)
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn letters(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        self.src[start..self.pos].parse().map_err(|_| Error::parse(start, "number out of range"))
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        let at = self.pos;
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(Error::parse(at, format!("expected '{want}', found '{c}'"))),
            None => Err(Error::parse(at, format!("expected '{want}', found end of input"))),
        }
    }
}

pub fn parse_group_spec(src: &str) -> Result<GroupSpec> {
    let mut cur = Cursor { src, pos: 0 };
    let mut factors = Vec::new();
    let mut central = 0;
    loop {
        cur.skip_ws();
        let start = cur.pos;
        let word = cur.letters();
        if word.is_empty() {
            return Err(Error::parse(start, "expected a group factor"));
        }
        let mut push = |ty: SimpleType, rank: usize, at: usize| -> Result<()> {
            if !ty.valid_rank(rank) {
                return Err(Error::parse(at, format!("invalid rank {rank} for type {ty}")));
            }
            factors.push(Factor { ty, rank });
            Ok(())
        };
        match word.to_ascii_lowercase().as_str() {
            "su" | "u" | "so" | "spin" | "sp" => {
                cur.expect('(')?;
                let at = cur.pos;
                let n = cur.number()?;
                cur.expect(')')?;
                match word.to_ascii_lowercase().as_str() {
                    "su" if n >= 2 => push(SimpleType::A, n - 1, at)?,
                    "u" if n >= 1 => {
                        if n >= 2 {
                            push(SimpleType::A, n - 1, at)?;
                        }
                        central += 1;
                    }
                    "so" | "spin" if n == 2 => central += 1,
                    "so" | "spin" if n >= 3 && n % 2 == 1 => push(SimpleType::B, n / 2, at)?,
                    "so" | "spin" if n >= 4 => push(SimpleType::D, n / 2, at)?,
                    "sp" if n >= 1 => push(SimpleType::C, n, at)?,
                    _ => return Err(Error::parse(at, format!("{word}({n}) is not a supported compact group"))),
                }
            }
            w if w.len() == 1 => {
                let at = cur.pos;
                let n = cur.number()?;
                let c = w.chars().next().unwrap();
                if c == 't' {
                    if n == 0 {
                        return Err(Error::parse(at, "central torus rank must be positive"));
                    }
                    central += n;
                } else {
                    let ty = SimpleType::from_letter(c).ok_or_else(|| Error::parse(start, format!("unknown type '{word}'")))?;
                    push(ty, n, at)?;
                }
            }
            _ => return Err(Error::parse(start, format!("unknown group name '{word}'"))),
        }
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('x' | '×' | '+') => {
                cur.bump();
            }
            Some(c) => return Err(Error::parse(cur.pos, format!("expected 'x' or '+', found '{c}'"))),
        }
    }
    if factors.is_empty() && central == 0 {
        return Err(Error::parse(0, "empty group spec"));
    }
    Ok(GroupSpec { factors, central, name: Some(src.trim().to_string()) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canon(s: &str) -> String {
        parse_group_spec(s).unwrap().canonical()
    }

    #[test]
    fn parses_type_tokens() {
        assert_eq!(canon("A4"), "A4");
        assert_eq!(canon("C2xA1"), "C2xA1");
        assert_eq!(canon("B3+T1"), "B3+T1");
        assert_eq!(canon(" G2 x F4 "), "G2xF4");
    }

    #[test]
    fn resolves_aliases() {
        assert_eq!(canon("SU(5)"), "A4");
        assert_eq!(canon("U(3)"), "A2+T1");
        assert_eq!(canon("U(1)"), "T1");
        assert_eq!(canon("SO(8)"), "D4");
        assert_eq!(canon("Spin(9)"), "B4");
        assert_eq!(canon("SO(2)"), "T1");
        assert_eq!(canon("Sp(3)xSp(1)"), "C3xC1");
        assert_eq!(canon("SO(7)xSO(2)"), "B3+T1");
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_group_spec("A2xQ3") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            e => panic!("{e:?}"),
        }
        match parse_group_spec("G3") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            e => panic!("{e:?}"),
        }
        match parse_group_spec("SU(3") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            e => panic!("{e:?}"),
        }
        assert!(parse_group_spec("").is_err());
        assert!(parse_group_spec("E9").is_err());
        assert!(parse_group_spec("D1").is_err());
    }
}
