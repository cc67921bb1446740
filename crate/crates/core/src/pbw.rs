//! Words in the enveloping algebra and PBW normal ordering.
//!
//! All algebras (`U(g)`, `U(t g[t])`, `U(q)`, `U(q[t])`) share the letter
//! universe of [`Letter`] and the derived letter order, in which every
//! lowering letter precedes every Cartan letter precedes every raising
//! letter. A normal-ordered word is weakly increasing.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::letter::{Letter, Var};
use crate::liealg::LieStructure;
use crate::poly::{CommPoly, Monomial};
use crate::rational::{self, Q};

pub type Word = Vec<Letter>;

/// Rational linear combination of words. Not normal-ordered by itself;
/// see [`Straightener`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCElement {
    terms: BTreeMap<Word, Q>,
}

impl NCElement {
    pub fn zero() -> Self {
        NCElement::default()
    }

    pub fn one() -> Self {
        NCElement::word(Vec::new())
    }

    pub fn scalar(c: Q) -> Self {
        let mut e = NCElement::zero();
        e.add_term(Vec::new(), c);
        e
    }

    pub fn word(w: Word) -> Self {
        let mut e = NCElement::zero();
        e.add_term(w, Q::one());
        e
    }

    pub fn letter(l: Letter) -> Self {
        NCElement::word(vec![l])
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Q)>>(it: I) -> Self {
        let mut e = NCElement::zero();
        for (w, c) in it {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[Letter]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scalar_mul(&self, c: &Q) -> NCElement {
        NCElement::from_terms(self.terms.iter().map(|(w, a)| (w.clone(), a * c)))
    }

    /// Every word weakly increasing in the letter order.
    pub fn is_normal_ordered(&self) -> bool {
        self.terms.keys().all(|w| is_sorted(w))
    }

    pub fn letters(&self) -> impl Iterator<Item = &Letter> {
        self.terms.keys().flatten()
    }

    /// Applies a letter-wise map to every word (no reordering).
    pub fn map_letters(&self, f: impl Fn(&Letter) -> Letter) -> NCElement {
        NCElement::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (w.iter().map(&f).collect(), c.clone())),
        )
    }

    /// Letter-wise evaluation `x t^k u^a -> x u^a` (not reordered).
    pub fn at_t_equals_one(&self) -> NCElement {
        self.map_letters(|l| l.with_t(0))
    }

    /// Set of u-degrees of the words.
    pub fn u_degrees(&self) -> std::collections::BTreeSet<usize> {
        self.terms
            .keys()
            .map(|w| w.iter().filter(|l| l.u_flag).count())
            .collect()
    }

    /// One line per term: `p/q letter letter ...`.
    pub fn to_canonical_text(&self) -> String {
        let mut s = String::new();
        for (w, c) in &self.terms {
            s.push_str(&rational::to_pq(c));
            for l in w {
                s.push(' ');
                s.push_str(&l.canonical());
            }
            s.push('\n');
        }
        s
    }

    pub fn parse_canonical_text(text: &str) -> Result<NCElement> {
        let mut e = NCElement::zero();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let mut parts = line.split_whitespace();
            let c = rational::parse_pq(parts.next().unwrap_or_default())?;
            let w = parts.map(Letter::parse_canonical).collect::<Result<Word>>()?;
            e.add_term(w, c);
        }
        Ok(e)
    }

    pub fn to_term_list(&self) -> Vec<(String, Vec<String>)> {
        self.terms
            .iter()
            .map(|(w, c)| (rational::to_pq(c), w.iter().map(Letter::canonical).collect()))
            .collect()
    }
}

fn is_sorted(w: &[Letter]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

impl fmt::Display for NCElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let word = w.iter().map(Letter::to_string).collect::<Vec<_>>().join("*");
            match (w.is_empty(), a.is_one()) {
                (true, _) => f.write_str(&rational::display(&a))?,
                (false, true) => f.write_str(&word)?,
                (false, false) => write!(f, "{}*{word}", rational::display(&a))?,
            }
        }
        Ok(())
    }
}

impl Add for NCElement {
    type Output = NCElement;
    fn add(mut self, rhs: NCElement) -> NCElement {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl Sub for NCElement {
    type Output = NCElement;
    fn sub(mut self, rhs: NCElement) -> NCElement {
        for (w, c) in rhs.terms {
            self.add_term(w, -c);
        }
        self
    }
}

impl Neg for NCElement {
    type Output = NCElement;
    fn neg(self) -> NCElement {
        self.scalar_mul(&-Q::one())
    }
}

/// Free (concatenation) product; normal-order the result afterwards.
impl<'a> Mul<&'a NCElement> for &'a NCElement {
    type Output = NCElement;
    fn mul(self, rhs: &NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        out
    }
}

/// PBW straightening against a fixed Lie structure, memoising the normal
/// form of every word it has rewritten.
pub struct Straightener<'s> {
    lie: &'s LieStructure,
    memo: HashMap<Word, NCElement>,
}

impl<'s> Straightener<'s> {
    pub fn new(lie: &'s LieStructure) -> Self {
        Straightener {
            lie,
            memo: HashMap::new(),
        }
    }

    pub fn lie(&self) -> &'s LieStructure {
        self.lie
    }

    /// Leftmost-inversion rewriting `a x y b -> a y x b + a [x,y] b`.
    pub fn normal_order(&mut self, e: &NCElement) -> Result<NCElement> {
        let mut out = NCElement::zero();
        for (w, c) in &e.terms {
            for l in w {
                self.check_letter(l)?;
            }
            let nf = self.normal_word(w)?;
            for (v, d) in nf.terms {
                out.add_term(v, d * c);
            }
        }
        Ok(out)
    }

    fn check_letter(&self, l: &Letter) -> Result<()> {
        if !self.lie.is_valid_letter(l) {
            return Err(Error::InvalidLetter(l.to_string()));
        }
        if l.t_power > self.lie.t_cap() {
            return Err(Error::TPowerOverflow {
                letter: l.to_string(),
                power: l.t_power,
                cap: self.lie.t_cap(),
            });
        }
        Ok(())
    }

    fn normal_word(&mut self, w: &[Letter]) -> Result<NCElement> {
        let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
            return Ok(NCElement::word(w.to_vec()));
        };
        if let Some(hit) = self.memo.get(w) {
            return Ok(hit.clone());
        }
        let mut swapped = w.to_vec();
        swapped.swap(i, i + 1);
        let mut out = self.normal_word(&swapped)?;
        for (z, c) in self.lie.extended_bracket(w[i], w[i + 1])? {
            let mut shorter = Vec::with_capacity(w.len() - 1);
            shorter.extend_from_slice(&w[..i]);
            shorter.push(z);
            shorter.extend_from_slice(&w[i + 2..]);
            let nf = self.normal_word(&shorter)?;
            for (v, d) in nf.terms {
                out.add_term(v, d * &c);
            }
        }
        self.memo.insert(w.to_vec(), out.clone());
        Ok(out)
    }

    /// `a b - b a`, normal-ordered.
    pub fn commutator(&mut self, a: &NCElement, b: &NCElement) -> Result<NCElement> {
        self.normal_order(&(&(a * b) - &(b * a)))
    }

    /// Symmetrisation: each monomial goes to the average over its distinct
    /// letter arrangements, then the sum is normal-ordered.
    pub fn symmetrize(&mut self, p: &CommPoly) -> Result<NCElement> {
        let mut raw = NCElement::zero();
        for (m, c) in p.terms() {
            let mut letters: Vec<(Letter, u32)> = Vec::new();
            for &(v, e) in m.factors() {
                match v {
                    Var::L(l) => letters.push((l, e)),
                    Var::T => return Err(Error::InvalidLetter("t".into())),
                }
            }
            let arrangements = distinct_arrangements(&letters);
            let weight = c / rational::q(arrangements.len() as i64);
            for w in arrangements {
                raw.add_term(w, weight.clone());
            }
        }
        self.normal_order(&raw)
    }
}

impl<'a> Sub<&'a NCElement> for &'a NCElement {
    type Output = NCElement;
    fn sub(self, rhs: &NCElement) -> NCElement {
        self.clone() - rhs.clone()
    }
}

/// All distinct orderings of a multiset of letters.
pub fn distinct_arrangements(letters: &[(Letter, u32)]) -> Vec<Word> {
    fn go(counts: &mut [(Letter, u32)], cur: &mut Word, len: usize, out: &mut Vec<Word>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for k in 0..counts.len() {
            if counts[k].1 == 0 {
                continue;
            }
            counts[k].1 -= 1;
            cur.push(counts[k].0);
            go(counts, cur, len, out);
            cur.pop();
            counts[k].1 += 1;
        }
    }
    let len = letters.iter().map(|(_, e)| *e as usize).sum();
    let mut counts = letters.to_vec();
    let mut out = Vec::new();
    go(&mut counts, &mut Vec::with_capacity(len), len, &mut out);
    out
}

/// Normal ordering by recursive insertion: letters are multiplied in from
/// the right one at a time and sunk into place. Independent of
/// [`Straightener::normal_order`]; used to cross-check it.
pub fn normal_order_by_insertion(lie: &LieStructure, e: &NCElement) -> Result<NCElement> {
    let mut out = NCElement::zero();
    for (w, c) in &e.terms {
        let mut acc = NCElement::one();
        for &x in w {
            acc = right_multiply(lie, &acc, x)?;
        }
        for (v, d) in acc.terms {
            out.add_term(v, d * c);
        }
    }
    Ok(out)
}

/// `e * x` for normal-ordered `e`.
fn right_multiply(lie: &LieStructure, e: &NCElement, x: Letter) -> Result<NCElement> {
    let mut out = NCElement::zero();
    for (w, c) in &e.terms {
        for (v, d) in insert_letter(lie, w, x)?.terms {
            out.add_term(v, d * c);
        }
    }
    Ok(out)
}

/// `s * x` for a sorted word `s`.
fn insert_letter(lie: &LieStructure, s: &[Letter], x: Letter) -> Result<NCElement> {
    match s.split_last() {
        None => Ok(NCElement::letter(x)),
        Some((&y, _)) if y <= x => {
            let mut w = s.to_vec();
            w.push(x);
            Ok(NCElement::word(w))
        }
        Some((&y, prefix)) => {
            // s' y x = s' x y + s' [y, x]
            let head = insert_letter(lie, prefix, x)?;
            let mut out = right_multiply(lie, &head, y)?;
            for (z, c) in lie.extended_bracket(y, x)? {
                for (v, d) in insert_letter(lie, prefix, z)?.terms {
                    out.add_term(v, d * &c);
                }
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcMode {
    /// Cartan letters of `g` only.
    Plain,
    /// Cartan letters `h_j t^k` with `k >= 1`.
    TShifted,
}

/// Harish-Chandra projection of a normal-ordered element: keeps the words
/// made only of (u-free) Cartan letters and reads them as monomials.
pub fn hc_project(e: &NCElement, mode: HcMode) -> Result<CommPoly> {
    if !e.is_normal_ordered() {
        return Err(Error::NonCanonical);
    }
    let keep = |l: &Letter| {
        l.is_cartan()
            && !l.u_flag
            && match mode {
                HcMode::Plain => l.t_power == 0,
                HcMode::TShifted => l.t_power >= 1,
            }
    };
    Ok(cartan_words_to_poly(e, keep))
}

/// Component of a normal-ordered element of `U(q)` (or `U(q[t])`) spanned
/// by words in `h` and `h u` only.
pub fn takiff_cartan_part(e: &NCElement) -> Result<CommPoly> {
    if !e.is_normal_ordered() {
        return Err(Error::NonCanonical);
    }
    Ok(cartan_words_to_poly(e, |l| l.is_cartan()))
}

fn cartan_words_to_poly(e: &NCElement, keep: impl Fn(&Letter) -> bool) -> CommPoly {
    CommPoly::from_terms(
        e.terms
            .iter()
            .filter(|(w, _)| w.iter().all(&keep))
            .map(|(w, c)| {
                (
                    Monomial::from_factors(w.iter().map(|l| (Var::L(*l), 1))),
                    c.clone(),
                )
            }),
    )
}
