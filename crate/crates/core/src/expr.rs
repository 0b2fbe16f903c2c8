//! Group expressions: `C6`, `D4`, `Q8 * C3`, `wr(C2,C2,C2;asc)`.
//!
//! ```text
//! expr    := primary ('*' primary)*
//! primary := atom | '(' expr ')' | 'wr' '(' expr (',' expr)* [';' ('desc' | 'asc')] ')'
//! atom    := 'C' n | 'D' n | 'Q8' | 'S3' | 'A4' | 'E'
//! ```
//!
//! Whitespace is ignored. `wr` defaults to the descending bracketing. Parse
//! errors carry the 0-based character position of the offending token.

use std::fmt;

use crate::catalog::{
    alternating4, cyclic, dihedral, group_tower, quaternion8, symmetric3, trivial,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::subgroup::direct_product;
use crate::wreath::{build_tower, Bracketing, TowerSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Trivial,
    Cyclic(u64),
    Dihedral(u64),
    Quaternion,
    Symmetric3,
    Alternating4,
    Product(Vec<GroupExpr>),
    Wreath(Vec<GroupExpr>, Bracketing),
}

impl GroupExpr {
    /// The tower spec when this is a wreath product of cyclic atoms.
    pub fn tower_spec(&self) -> Option<TowerSpec> {
        match self {
            GroupExpr::Wreath(factors, b) => {
                let orders = factors
                    .iter()
                    .map(|f| match f {
                        GroupExpr::Cyclic(n) => Some(*n),
                        _ => None,
                    })
                    .collect::<Option<Vec<_>>>()?;
                Some(TowerSpec {
                    orders,
                    bracketing: *b,
                })
            }
            _ => None,
        }
    }

    pub fn build(&self, limits: &Limits) -> Result<FiniteGroup> {
        let label = self.to_string();
        let g = match self {
            GroupExpr::Trivial => trivial(),
            GroupExpr::Cyclic(n) => cyclic(*n)?,
            GroupExpr::Dihedral(n) => dihedral(*n)?,
            GroupExpr::Quaternion => quaternion8(),
            GroupExpr::Symmetric3 => symmetric3(),
            GroupExpr::Alternating4 => alternating4(),
            GroupExpr::Product(factors) => {
                let mut acc = factors[0].build(limits)?;
                for f in &factors[1..] {
                    acc = direct_product(&acc, &f.build(limits)?, limits)?;
                }
                acc
            }
            GroupExpr::Wreath(factors, b) => {
                if let Some(spec) = self.tower_spec() {
                    build_tower(&spec, limits)?.carrier().clone()
                } else {
                    let groups = factors
                        .iter()
                        .map(|f| f.build(limits))
                        .collect::<Result<Vec<_>>>()?;
                    group_tower(&groups, *b == Bracketing::Descending, limits)?
                }
            }
        };
        Ok(g.with_label(label))
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Trivial => write!(f, "E"),
            GroupExpr::Cyclic(n) => write!(f, "C{n}"),
            GroupExpr::Dihedral(n) => write!(f, "D{n}"),
            GroupExpr::Quaternion => write!(f, "Q8"),
            GroupExpr::Symmetric3 => write!(f, "S3"),
            GroupExpr::Alternating4 => write!(f, "A4"),
            GroupExpr::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " * ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            GroupExpr::Wreath(fs, b) => {
                write!(f, "wr(")?;
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ";{b})")
            }
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn here(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.src.chars().count(), |c| c.0)
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(err(self.here(), format!("expected '{c}', found '{d}'"))),
            None => Err(err(
                self.here(),
                format!("expected '{c}', found end of input"),
            )),
        }
    }

    fn word(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.here();
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_alphanumeric() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        (start, s)
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let mut factors = vec![self.primary()?];
        while self.peek() == Some('*') {
            self.pos += 1;
            match self.primary()? {
                GroupExpr::Product(inner) => factors.extend(inner),
                f => factors.push(f),
            }
        }
        if factors.len() == 1 {
            Ok(factors.pop().unwrap())
        } else {
            Ok(GroupExpr::Product(factors))
        }
    }

    fn primary(&mut self) -> Result<GroupExpr> {
        match self.peek() {
            None => Err(err(self.here(), "expected a group, found end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let (start, w) = self.word();
                if w == "wr" {
                    return self.wreath();
                }
                atom(start, &w)
            }
            Some(c) => Err(err(self.here(), format!("unexpected '{c}'"))),
        }
    }

    fn wreath(&mut self) -> Result<GroupExpr> {
        self.expect('(')?;
        let mut factors = vec![self.expr()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            factors.push(self.expr()?);
        }
        let mut bracketing = Bracketing::Descending;
        if self.peek() == Some(';') {
            self.pos += 1;
            let (start, w) = self.word();
            bracketing = match w.as_str() {
                "desc" => Bracketing::Descending,
                "asc" => Bracketing::Ascending,
                _ => return Err(err(start, format!("expected 'desc' or 'asc', found '{w}'"))),
            };
        }
        self.expect(')')?;
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        Ok(GroupExpr::Wreath(factors, bracketing))
    }
}

fn atom(start: usize, w: &str) -> Result<GroupExpr> {
    match w {
        "E" => return Ok(GroupExpr::Trivial),
        "Q8" => return Ok(GroupExpr::Quaternion),
        "S3" => return Ok(GroupExpr::Symmetric3),
        "A4" => return Ok(GroupExpr::Alternating4),
        _ => {}
    }
    let (head, digits) = w.split_at(1);
    let n: u64 = match digits.parse() {
        Ok(n) if !digits.is_empty() => n,
        _ => return Err(err(start, format!("unknown group '{w}'"))),
    };
    match head {
        "C" if n == 1 => Err(err(
            start,
            "C1 is not an atom: cyclic orders start at 2; write E for the trivial group",
        )),
        "C" if (2..=256).contains(&n) => Ok(GroupExpr::Cyclic(n)),
        "C" => Err(err(start, format!("cyclic order {n} out of range 2..=256"))),
        "D" if (2..=256).contains(&n) => Ok(GroupExpr::Dihedral(n)),
        "D" => Err(err(
            start,
            format!("dihedral index {n} out of range 2..=256"),
        )),
        _ => Err(err(start, format!("unknown group '{w}'"))),
    }
}

pub fn parse_expr(src: &str) -> Result<GroupExpr> {
    let mut p = Parser {
        chars: src.chars().enumerate().collect(),
        pos: 0,
        src,
    };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(err(p.here(), format!("unexpected '{c}' after expression")));
    }
    Ok(e)
}

pub fn parse_group(src: &str, limits: &Limits) -> Result<FiniteGroup> {
    parse_expr(src)?.build(limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn atoms_and_products() {
        assert_eq!(parse_group("S3", &limits()).unwrap().order(), 6);
        assert_eq!(parse_group("D4", &limits()).unwrap().order(), 8);
        let g = parse_group(" Q8 *C3 ", &limits()).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.label(), "Q8 * C3");
        assert_eq!(parse_group("E", &limits()).unwrap().order(), 1);
        let g = parse_group("(C2 * C2) * C2", &limits()).unwrap();
        assert_eq!(g.label(), "C2 * C2 * C2");
    }

    #[test]
    fn wreath_products() {
        let g = parse_group("wr(C2,C2;desc)", &limits()).unwrap();
        assert_eq!(g.order(), 8);
        let g = parse_group("wr( C2 , C2 , C2 ; asc )", &limits()).unwrap();
        assert_eq!(g.order(), 128);
        assert_eq!(g.label(), "wr(C2,C2,C2;asc)");
        let g = parse_group("wr(S3,C2)", &limits()).unwrap();
        assert_eq!(g.order(), 72);
        assert_eq!(g.label(), "wr(S3,C2;desc)");
        assert_eq!(
            parse_expr("wr(C3,C2)").unwrap().tower_spec(),
            Some(TowerSpec::descending(&[3, 2]))
        );
    }

    #[test]
    fn labels_round_trip() {
        for s in ["C2 * wr(C3,C2;desc)", "wr(C2 * C2,C3;asc)", "D6 * Q8"] {
            assert_eq!(parse_expr(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn errors_report_positions() {
        match parse_expr("C1") {
            Err(Error::Parse {
                position: 0,
                message,
            }) => assert!(message.contains("E")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_expr("C2 * X7"),
            Err(Error::Parse { position: 5, .. })
        ));
        assert!(matches!(
            parse_expr("wr(C2,C2;up)"),
            Err(Error::Parse { position: 9, .. })
        ));
        assert!(matches!(
            parse_expr("C2 C3"),
            Err(Error::Parse { position: 3, .. })
        ));
        assert!(matches!(
            parse_expr("wr(C2"),
            Err(Error::Parse { position: 5, .. })
        ));
        assert!(matches!(
            parse_expr(""),
            Err(Error::Parse { position: 0, .. })
        ));
    }
}
