//! Sparse commutative polynomials with exact rational coefficients.
//!
//! One type hosts every commutative ring in the crate: `S(g)`, `S(g[t])`,
//! `S(q)`, `S(h)` and the t-decorated Cartan ring. Variables are [`Var`]s.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::letter::{Letter, LetterClass, Var};
use crate::rational::{self, Q};

/// Sorted list of `(variable, exponent)` with positive exponents.
///
/// Ordered graded-lexicographically: total degree first, then the
/// lexicographic order in which smaller variables are more significant.
/// This is a monomial order, so leading terms are multiplicative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary factors, merging repeats.
    pub fn from_factors<I: IntoIterator<Item = (Var, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Degree counted over letters only; the scalar `t` is not counted.
    pub fn letter_degree(&self) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| matches!(v, Var::L(_)))
            .map(|(_, e)| e)
            .sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.0.iter().map(|(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let d = other.0[j].1;
                j += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - d)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Drops one copy of `v` (which must be present).
    fn without_one(&self, v: &Var) -> Monomial {
        let mut out = self.0.clone();
        if let Ok(i) = out.binary_search_by(|(w, _)| w.cmp(v)) {
            if out[i].1 == 1 {
                out.remove(i);
            } else {
                out[i].1 -= 1;
            }
        }
        Monomial(out)
    }

    /// `var^exp` factors in canonical text, space separated.
    pub fn canonical(&self) -> String {
        self.0
            .iter()
            .map(|(v, e)| format!("{}^{}", v.canonical(), e))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].0.cmp(&b[j].0) {
                    Ordering::Equal => {
                        if a[i].1 != b[j].1 {
                            return a[i].1.cmp(&b[j].1);
                        }
                        i += 1;
                        j += 1;
                    }
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
            (a.len() - i).cmp(&(b.len() - j))
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact sparse polynomial. Zero coefficients are never stored, so equal
/// polynomials have identical storage.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CommPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl CommPoly {
    pub fn zero() -> Self {
        CommPoly::default()
    }

    pub fn one() -> Self {
        CommPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        CommPoly::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Self {
        CommPoly::constant(rational::q(c))
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        CommPoly { terms }
    }

    pub fn var(v: impl Into<Var>) -> Self {
        CommPoly::term(Monomial::var(v.into()), Q::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(it: I) -> Self {
        let mut p = CommPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coefficient(&Monomial::one())
    }

    /// Returns the scalar if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars().copied()).collect()
    }

    pub fn scalar_mul(&self, c: &Q) -> CommPoly {
        if c.is_zero() {
            return CommPoly::zero();
        }
        CommPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> CommPoly {
        if c.is_zero() {
            return CommPoly::zero();
        }
        CommPoly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> CommPoly {
        let mut base = self.clone();
        let mut acc = CommPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Maximal letter degree (`t` and letter decorations not counted).
    pub fn letter_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::letter_degree).max()
    }

    /// Keeps only the monomials whose variables all satisfy `keep`;
    /// equivalently substitutes zero for every other variable.
    pub fn restrict(&self, keep: impl Fn(&Var) -> bool) -> CommPoly {
        CommPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.vars().all(&keep))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Renames variables one by one. Collisions are merged.
    pub fn map_vars(&self, f: impl Fn(&Var) -> Var) -> CommPoly {
        CommPoly::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial::from_factors(m.factors().iter().map(|(v, e)| (f(v), *e))),
                c.clone(),
            )
        }))
    }

    /// Simultaneous substitution. Variables missing from `assignment` are
    /// left untouched.
    pub fn substitute(&self, assignment: &BTreeMap<Var, CommPoly>) -> CommPoly {
        let mut powers: BTreeMap<(Var, u32), CommPoly> = BTreeMap::new();
        let mut out = CommPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = CommPoly::constant(c.clone());
            for &(v, e) in m.factors() {
                match assignment.get(&v) {
                    Some(image) => {
                        let pw = powers
                            .entry((v, e))
                            .or_insert_with(|| image.pow(e))
                            .clone();
                        acc = &acc * &pw;
                    }
                    None => kept.push((v, e)),
                }
            }
            let kept = Monomial::from_factors(kept);
            out = out + acc.mul_monomial(&kept, &Q::one());
        }
        out
    }

    /// Ordinary partial derivative.
    pub fn partial(&self, v: &Var) -> CommPoly {
        CommPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            (e > 0).then(|| (m.without_one(v), c * rational::q(i64::from(e))))
        }))
    }

    /// The derivation with `d/dh_j (h_j t^k) = k t^(k-1)` and
    /// `d/dh_j (h_i t^k) = 0` for `i != j`, extended by Leibniz.
    ///
    /// Variables must be undecorated-by-u Cartan letters with `t_power >= 1`
    /// or the scalar `t`.
    pub fn partial_shifted(&self, j: u16) -> Result<CommPoly> {
        for v in self.vars() {
            match v {
                Var::T => {}
                Var::L(l) if l.is_cartan() && l.t_power >= 1 && !l.u_flag => {}
                Var::L(l) => return Err(Error::InvalidLetter(l.to_string())),
            }
        }
        let mut out = CommPoly::zero();
        for (m, c) in &self.terms {
            for &(v, e) in m.factors() {
                let Var::L(l) = v else { continue };
                if l.index != j {
                    continue;
                }
                let k = l.t_power;
                let rest = m.without_one(&v);
                let rest = if k > 1 {
                    rest.mul(&Monomial(vec![(Var::T, k - 1)]))
                } else {
                    rest
                };
                out.add_term(rest, c * rational::q(i64::from(e) * i64::from(k)));
            }
        }
        Ok(out)
    }

    /// `t -> 1` and every letter `x t^k u^a -> x u^a`.
    pub fn at_t_equals_one(&self) -> CommPoly {
        CommPoly::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial::from_factors(m.factors().iter().filter_map(|(v, e)| match v {
                    Var::T => None,
                    Var::L(l) => Some((Var::L(l.with_t(0)), *e)),
                })),
                c.clone(),
            )
        }))
    }

    /// Sum of the monomials of maximal letter degree.
    pub fn highest_component(&self) -> Result<CommPoly> {
        let top = self.letter_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(CommPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.letter_degree() == top)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// `self / divisor`, failing with [`Error::NotExact`] when the divisor
    /// does not divide.
    pub fn exact_divide(&self, divisor: &CommPoly) -> Result<CommPoly> {
        let (lm, lc) = divisor.leading_term().ok_or(Error::ZeroPolynomial)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = CommPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let Some(qm) = m.div(&lm) else {
                return Err(Error::NotExact);
            };
            let qc = c / &lc;
            rem = rem - divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// One line per term, `p/q var^e var^e ...`, ascending monomial order.
    pub fn to_canonical_text(&self) -> String {
        let mut s = String::new();
        for (m, c) in &self.terms {
            s.push_str(&rational::to_pq(c));
            if !m.is_one() {
                s.push(' ');
                s.push_str(&m.canonical());
            }
            s.push('\n');
        }
        s
    }

    pub fn parse_canonical_text(text: &str) -> Result<CommPoly> {
        let mut p = CommPoly::zero();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let mut parts = line.split_whitespace();
            let c = rational::parse_pq(parts.next().unwrap_or_default())?;
            let mut factors = Vec::new();
            for f in parts {
                let (v, e) = f
                    .rsplit_once('^')
                    .ok_or_else(|| Error::Parse(format!("bad factor {f:?}")))?;
                let e: u32 = e
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent {f:?}")))?;
                factors.push((Var::parse_canonical(v)?, e));
            }
            p.add_term(Monomial::from_factors(factors), c);
        }
        Ok(p)
    }

    /// `[[coef, [factor, ...]], ...]`-shaped rows for JSON reports.
    pub fn to_term_list(&self) -> Vec<(String, Vec<String>)> {
        self.terms
            .iter()
            .map(|(m, c)| {
                (
                    rational::to_pq(c),
                    m.factors()
                        .iter()
                        .map(|(v, e)| format!("{}^{}", v.canonical(), e))
                        .collect(),
                )
            })
            .collect()
    }

    /// True when every variable is a plain Cartan letter `h_j` with `j < rank`.
    pub fn is_in_cartan_ring(&self, rank: usize) -> bool {
        self.vars().iter().all(|v| match v {
            Var::L(l) => {
                l.class == LetterClass::Cartan && l.is_plain() && usize::from(l.index) < rank
            }
            Var::T => false,
        })
    }
}

/// `h_j` as a polynomial.
pub fn cartan_var(j: u16) -> CommPoly {
    CommPoly::var(Letter::h(j))
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&rational::display(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", rational::display(&a))?;
            }
        }
        Ok(())
    }
}

impl Add for CommPoly {
    type Output = CommPoly;
    fn add(mut self, rhs: CommPoly) -> CommPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> Add<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        self.clone() + rhs.clone()
    }
}

impl Neg for CommPoly {
    type Output = CommPoly;
    fn neg(mut self) -> CommPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for CommPoly {
    type Output = CommPoly;
    fn sub(mut self, rhs: CommPoly) -> CommPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<'a> Sub<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        self.clone() - rhs.clone()
    }
}

impl<'a> Mul<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Mul for CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: CommPoly) -> CommPoly {
        &self * &rhs
    }
}

/// Square matrix of polynomials.
pub type PolyMatrix = Vec<Vec<CommPoly>>;

/// Fraction-free Bareiss elimination with exact polynomial division.
pub fn determinant(m: &PolyMatrix) -> Result<CommPoly> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Shape(format!("expected {n}x{n}")));
    }
    if n == 0 {
        return Ok(CommPoly::one());
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = CommPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(CommPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_divide(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign { -det } else { det })
}
