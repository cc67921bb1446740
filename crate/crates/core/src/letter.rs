//! Generator symbols shared by `S(g)`, `S(g[t])`, `S(q)`, `U(q[t])` and friends.

use std::fmt;

use crate::error::{Error, Result};

/// Position in the triangular decomposition. The derived order
/// `Neg < Cartan < Pos` is the primary key of the PBW letter order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LetterClass {
    Neg,
    Cartan,
    Pos,
}

impl LetterClass {
    fn tag(self) -> &'static str {
        match self {
            LetterClass::Neg => "neg",
            LetterClass::Cartan => "cartan",
            LetterClass::Pos => "pos",
        }
    }
}

/// `x t^t_power u^u_flag` for a basis element `x` of `g`.
///
/// For root classes `index` is the position of the positive root in the
/// ambient [`RootSystem`](crate::RootSystem); for the Cartan class it is the
/// simple coroot `h_{index+1}`.
///
/// Field order matters: the derived `Ord` compares class, then index, then
/// t-power, then the u-flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub class: LetterClass,
    pub index: u16,
    pub t_power: u32,
    pub u_flag: bool,
}

impl Letter {
    pub const fn new(class: LetterClass, index: u16) -> Self {
        Letter {
            class,
            index,
            t_power: 0,
            u_flag: false,
        }
    }

    pub const fn e(index: u16) -> Self {
        Letter::new(LetterClass::Pos, index)
    }

    pub const fn f(index: u16) -> Self {
        Letter::new(LetterClass::Neg, index)
    }

    pub const fn h(index: u16) -> Self {
        Letter::new(LetterClass::Cartan, index)
    }

    pub fn with_t(mut self, t_power: u32) -> Self {
        self.t_power = t_power;
        self
    }

    pub fn with_u(mut self, u_flag: bool) -> Self {
        self.u_flag = u_flag;
        self
    }

    /// Undecorated generator of `g`.
    pub fn is_plain(&self) -> bool {
        self.t_power == 0 && !self.u_flag
    }

    pub fn base(&self) -> Letter {
        Letter::new(self.class, self.index)
    }

    pub fn is_cartan(&self) -> bool {
        self.class == LetterClass::Cartan
    }

    /// `class:index:t:u`
    pub fn canonical(&self) -> String {
        format!(
            "{}:{}:{}:{}",
            self.class.tag(),
            self.index,
            self.t_power,
            u8::from(self.u_flag)
        )
    }

    pub fn parse_canonical(s: &str) -> Result<Letter> {
        let bad = || Error::Parse(format!("bad letter {s:?}"));
        let mut parts = s.split(':');
        let class = match parts.next().ok_or_else(bad)? {
            "neg" => LetterClass::Neg,
            "cartan" => LetterClass::Cartan,
            "pos" => LetterClass::Pos,
            _ => return Err(bad()),
        };
        let index = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let t_power = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let u_flag = match parts.next().ok_or_else(bad)? {
            "0" => false,
            "1" => true,
            _ => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(Letter {
            class,
            index,
            t_power,
            u_flag,
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stem = match self.class {
            LetterClass::Neg => 'f',
            LetterClass::Cartan => 'h',
            LetterClass::Pos => 'e',
        };
        write!(f, "{}{}", stem, self.index + 1)?;
        match self.t_power {
            0 => {}
            1 => write!(f, ".t")?,
            k => write!(f, ".t{k}")?,
        }
        if self.u_flag {
            write!(f, ".u")?;
        }
        Ok(())
    }
}

/// A commutative variable: a letter, or the formal scalar `t` produced by
/// the shifted partial derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    L(Letter),
    T,
}

impl Var {
    pub fn letter(&self) -> Option<Letter> {
        match self {
            Var::L(l) => Some(*l),
            Var::T => None,
        }
    }

    pub fn canonical(&self) -> String {
        match self {
            Var::L(l) => l.canonical(),
            Var::T => "t".to_string(),
        }
    }

    pub fn parse_canonical(s: &str) -> Result<Var> {
        if s == "t" {
            Ok(Var::T)
        } else {
            Letter::parse_canonical(s).map(Var::L)
        }
    }
}

impl From<Letter> for Var {
    fn from(l: Letter) -> Self {
        Var::L(l)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::L(l) => l.fmt(f),
            Var::T => f.write_str("t"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_puts_neg_before_cartan_before_pos() {
        let f = Letter::f(2).with_t(3).with_u(true);
        let h = Letter::h(0);
        let e = Letter::e(0);
        assert!(f < h && h < e);
        assert!(Letter::f(0) < Letter::f(0).with_u(true));
        assert!(Letter::h(0).with_t(1) < Letter::h(0).with_t(2));
    }

    #[test]
    fn canonical_text() {
        let l = Letter::h(1).with_t(2).with_u(true);
        assert_eq!(l.canonical(), "cartan:1:2:1");
        assert_eq!(Letter::parse_canonical("cartan:1:2:1").unwrap(), l);
        assert_eq!(l.to_string(), "h2.t2.u");
        assert!(Letter::parse_canonical("cartan:1:2").is_err());
        assert_eq!(Var::parse_canonical("t").unwrap(), Var::T);
    }
}
