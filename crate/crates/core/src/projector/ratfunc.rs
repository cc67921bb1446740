//! Univariate rational functions over `Q` in one symbolic weight parameter.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{self, Q};

/// Dense univariate polynomial, constant term first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        UPoly(vec![c]).trimmed()
    }

    /// `a + b s`
    pub fn affine(a: Q, b: Q) -> Self {
        UPoly(vec![a, b]).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    fn scale(&self, c: &Q) -> UPoly {
        UPoly(self.0.iter().map(|a| a * c).collect()).trimmed()
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly(
            (0..n)
                .map(|i| {
                    self.0.get(i).cloned().unwrap_or_else(Q::zero)
                        + o.0.get(i).cloned().unwrap_or_else(Q::zero)
                })
                .collect(),
        )
        .trimmed()
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|a| -a).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly(out).trimmed()
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = vec![Q::zero(); self.0.len().saturating_sub(dd).max(1)];
        let lead = d.lead();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.lead() / &lead;
            quot[rd - dd] = c.clone();
            let mut shifted = vec![Q::zero(); rd - dd];
            shifted.extend(d.0.iter().map(|x| x * &c));
            rem = rem.add(&UPoly(shifted).neg());
        }
        (UPoly(quot).trimmed(), rem)
    }

    fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Q::one() / self.lead()))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "s".into(),
                _ => format!("s^{k}"),
            };
            let coef = rational::display(c);
            parts.push(match (k, coef.as_str()) {
                (0, _) => coef,
                (_, "1") => mono,
                (_, "-1") => format!("-{mono}"),
                _ => format!("{coef}*{mono}"),
            });
        }
        f.write_str(&parts.join(" + ").replace("+ -", "- "))
    }
}

/// `num / den` in lowest terms with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let l = den.lead();
        RatFunc {
            num: num.scale(&(Q::one() / &l)),
            den: den.scale(&(Q::one() / l)),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: UPoly::zero(),
            den: UPoly::constant(Q::one()),
        }
    }

    pub fn one() -> Self {
        RatFunc::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        RatFunc {
            num: UPoly::constant(c),
            den: UPoly::constant(Q::one()),
        }
    }

    pub fn poly(p: UPoly) -> Self {
        RatFunc::new(p, UPoly::constant(Q::one()))
    }

    /// The symbolic parameter `s`.
    pub fn param() -> Self {
        RatFunc::poly(UPoly::affine(Q::zero(), Q::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numer(&self) -> &UPoly {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }

    pub fn as_constant(&self) -> Option<Q> {
        (self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0))
            .then(|| self.num.coeffs().first().cloned().unwrap_or_else(Q::zero))
    }

    pub fn recip(&self) -> Option<RatFunc> {
        (!self.is_zero()).then(|| RatFunc::new(self.den.clone(), self.num.clone()))
    }

    /// Value at `s = x`, `None` at a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        let r = o.recip().expect("division by zero rational function");
        RatFunc::new(self.num.mul(&r.num), self.den.mul(&r.den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
