//! Verma modules of `sl_2`/`sl_3` and the extremal projector
//! `p = p_{a_1} ... p_{a_N}` over a normal order of the positive roots.
//!
//! Coefficients are rational functions of one symbolic parameter `s`; the
//! highest weight is given by its values on the simple coroots, each an
//! element of `Q(s)` (normally `s` on `h_1` and generic rationals elsewhere).

pub mod ratfunc;

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::letter::{Letter, LetterClass};
use crate::liealg::LieStructure;
use crate::pbw::{NCElement, Straightener};
use crate::rational::{self, Q};
use crate::rootdata::RootSystem;

pub use ratfunc::{RatFunc, UPoly};

/// Largest rank handled by the projector checks.
pub const PROJECTOR_MAX_RANK: usize = 2;

/// Exponents of `f_{a_1} ... f_{a_N}` in root-index order.
pub type Exponents = Vec<u32>;

/// Finite combination of PBW monomials applied to `v_lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VermaVector {
    terms: BTreeMap<Exponents, RatFunc>,
}

impl VermaVector {
    pub fn zero() -> Self {
        VermaVector::default()
    }

    pub fn add_term(&mut self, k: Exponents, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&k) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(k, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &RatFunc)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &RatFunc) -> VermaVector {
        let mut out = VermaVector::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn add(&self, o: &VermaVector) -> VermaVector {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, o: &VermaVector) -> VermaVector {
        self.add(&o.scale(&-&RatFunc::one()))
    }
}

impl fmt::Display for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mono: String = k
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(r, &e)| {
                        if e == 1 {
                            format!("f{}*", r + 1)
                        } else {
                            format!("f{}^{e}*", r + 1)
                        }
                    })
                    .collect();
                format!("[{c}]*{mono}v")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `M_lambda` for a type-A structure of rank at most two.
#[derive(Debug, Clone)]
pub struct VermaModule {
    lie: LieStructure,
    /// `lambda(h_j)` on simple coroots.
    lambda: Vec<RatFunc>,
}

impl VermaModule {
    pub fn new(lie: LieStructure, lambda: Vec<RatFunc>) -> Result<Self> {
        if lie.rank() > PROJECTOR_MAX_RANK {
            return Err(Error::RankGuard {
                rank: lie.rank(),
                bound: PROJECTOR_MAX_RANK,
            });
        }
        if lambda.len() != lie.rank() {
            return Err(Error::Shape(format!(
                "highest weight has {} entries for rank {}",
                lambda.len(),
                lie.rank()
            )));
        }
        Ok(VermaModule { lie, lambda })
    }

    /// `lambda(h_1) = s`, remaining coordinates `7/3, 11/5, ...`.
    pub fn generic(lie: LieStructure) -> Result<Self> {
        let fixed = [rational::frac(7, 3), rational::frac(11, 5)];
        let lambda = (0..lie.rank())
            .map(|j| {
                if j == 0 {
                    RatFunc::param()
                } else {
                    RatFunc::constant(fixed[(j - 1) % fixed.len()].clone())
                }
            })
            .collect();
        VermaModule::new(lie, lambda)
    }

    /// Numeric highest weight.
    pub fn numeric(lie: LieStructure, lambda: &[Q]) -> Result<Self> {
        let lambda = lambda.iter().cloned().map(RatFunc::constant).collect();
        VermaModule::new(lie, lambda)
    }

    pub fn lie(&self) -> &LieStructure {
        &self.lie
    }

    pub fn roots(&self) -> &RootSystem {
        self.lie.root_system()
    }

    pub fn highest(&self) -> VermaVector {
        self.monomial(vec![0; self.roots().num_positive()])
    }

    pub fn monomial(&self, k: Exponents) -> VermaVector {
        let mut v = VermaVector::zero();
        v.add_term(k, RatFunc::one());
        v
    }

    /// All PBW monomials with at most `depth` lowering letters.
    pub fn monomials_up_to(&self, depth: u32) -> Vec<VermaVector> {
        let n = self.roots().num_positive();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponents>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                go(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        let mut ks = Vec::new();
        go(0, depth, &mut cur, &mut ks);
        ks.sort_by_key(|k| (k.iter().sum::<u32>(), k.clone()));
        out.extend(ks.into_iter().map(|k| self.monomial(k)));
        out
    }

    /// `lambda - weight` in simple-root coordinates.
    pub fn depth(&self, k: &[u32]) -> Vec<i64> {
        let rs = self.roots();
        let mut beta = vec![0i64; rs.rank()];
        for (r, &e) in k.iter().enumerate() {
            for (b, c) in beta.iter_mut().zip(&rs.positive_roots[r]) {
                *b += i64::from(e) * c;
            }
        }
        beta
    }

    /// `gamma(h_j)` for the weight `lambda - depth`.
    pub fn weight_values(&self, beta: &[i64]) -> Vec<RatFunc> {
        let rs = self.roots();
        (0..rs.rank())
            .map(|j| {
                let shift = rs.pairing_with_simple_coroot(beta, j);
                &self.lambda[j] - &RatFunc::constant(rational::q(shift))
            })
            .collect()
    }

    /// `gamma(h_alpha)` for root index `a`.
    fn coroot_value(&self, a: usize, gamma: &[RatFunc]) -> RatFunc {
        self.roots().coroots[a]
            .iter()
            .zip(gamma)
            .fold(RatFunc::zero(), |acc, (&c, g)| &acc + &(g * &RatFunc::constant(rational::q(c))))
    }

    fn word_of(&self, k: &[u32]) -> Vec<Letter> {
        k.iter()
            .enumerate()
            .flat_map(|(r, &e)| std::iter::repeat_n(Letter::f(r as u16), e as usize))
            .collect()
    }

    /// Action of a plain letter of `g`: straighten `x * f-word`, drop words
    /// ending in a raising letter, evaluate Cartan letters on `lambda`.
    pub fn apply(&self, x: Letter, v: &VermaVector) -> Result<VermaVector> {
        if !x.is_plain() {
            return Err(Error::InvalidLetter(x.to_string()));
        }
        let mut st = Straightener::new(&self.lie);
        let n = self.roots().num_positive();
        let mut out = VermaVector::zero();
        for (k, c) in &v.terms {
            let mut w = vec![x];
            w.extend(self.word_of(k));
            let nf = st.normal_order(&NCElement::word(w))?;
            for (word, q) in nf.terms() {
                if word.iter().any(|l| l.class == LetterClass::Pos) {
                    continue;
                }
                let mut exps = vec![0u32; n];
                let mut coef = c * &RatFunc::constant(q.clone());
                for l in word {
                    match l.class {
                        LetterClass::Neg => exps[usize::from(l.index)] += 1,
                        LetterClass::Cartan => {
                            coef = &coef * &self.lambda[usize::from(l.index)];
                        }
                        LetterClass::Pos => unreachable!(),
                    }
                }
                out.add_term(exps, coef);
            }
        }
        Ok(out)
    }

    pub fn apply_power(&self, x: Letter, k: u32, v: &VermaVector) -> Result<VermaVector> {
        let mut w = v.clone();
        for _ in 0..k {
            if w.is_zero() {
                break;
            }
            w = self.apply(x, &w)?;
        }
        Ok(w)
    }

    /// Splits a vector into weight components, keyed by depth.
    pub fn weight_components(&self, v: &VermaVector) -> BTreeMap<Vec<i64>, VermaVector> {
        let mut out: BTreeMap<Vec<i64>, VermaVector> = BTreeMap::new();
        for (k, c) in &v.terms {
            out.entry(self.depth(k))
                .or_default()
                .add_term(k.clone(), c.clone());
        }
        out
    }

    fn weight_string(&self, gamma: &[RatFunc]) -> String {
        let parts: Vec<String> = gamma.iter().map(|g| g.to_string()).collect();
        format!("({})", parts.join(", "))
    }

    /// `p_alpha v` for a weight vector `v` of depth `beta`. Returns the
    /// image and the number of series terms evaluated.
    pub fn apply_p_alpha(&self, a: usize, v: &VermaVector, beta: &[i64]) -> Result<(VermaVector, usize)> {
        let rs = self.roots();
        let alpha = &rs.positive_roots[a];
        // e_alpha^k v = 0 once beta - k alpha leaves the positive cone
        let bound = (0..)
            .take_while(|&k: &i64| beta.iter().zip(alpha).all(|(b, a)| b - k * a >= 0))
            .last()
            .unwrap_or(0) as usize;
        let gamma = self.weight_values(beta);
        let base = &self.coroot_value(a, &gamma) + &RatFunc::constant(rational::q(rs.rho_pairings[a]));
        let mut denominators = Vec::with_capacity(bound);
        for j in 1..=bound {
            let d = &base + &RatFunc::constant(rational::q(j as i64));
            if d.is_zero() {
                return Err(Error::Pole {
                    root: a,
                    j,
                    weight: self.weight_string(&gamma),
                });
            }
            denominators.push(d);
        }
        let e = Letter::e(a as u16);
        let f = Letter::f(a as u16);
        let mut out = v.clone();
        let mut raised = v.clone();
        let mut coef = RatFunc::one();
        let mut used = 0;
        for k in 1..=bound {
            raised = self.apply(e, &raised)?;
            if raised.is_zero() {
                break;
            }
            used = k;
            // (-1)^k / (k! prod_{j<=k} (gamma(h_a) + rho(h_a) + j))
            let step = &RatFunc::constant(-rational::q(k as i64)) * &denominators[k - 1];
            coef = &coef / &step;
            let lowered = self.apply_power(f, k as u32, &raised)?;
            out = out.add(&lowered.scale(&coef));
        }
        Ok((out, used))
    }

    /// `p = p_{a_1} ... p_{a_N}` for the given normal order (rightmost
    /// factor applied first).
    pub fn apply_projector(&self, order: &NormalOrder, v: &VermaVector) -> Result<VermaVector> {
        Ok(self.apply_projector_traced(order, v)?.0)
    }

    /// Also reports the largest number of series terms any factor used.
    pub fn apply_projector_traced(
        &self,
        order: &NormalOrder,
        v: &VermaVector,
    ) -> Result<(VermaVector, usize)> {
        let mut total = VermaVector::zero();
        let mut max_used = 0;
        for (beta, comp) in self.weight_components(v) {
            let mut w = comp;
            for &a in order.roots.iter().rev() {
                let (next, used) = self.apply_p_alpha(a, &w, &beta)?;
                max_used = max_used.max(used);
                w = next;
            }
            total = total.add(&w);
        }
        Ok((total, max_used))
    }
}

/// Total order on the positive roots, given as root indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalOrder {
    pub roots: Vec<usize>,
}

impl NormalOrder {
    /// Whenever `a + b` is a root it lies strictly between `a` and `b`.
    pub fn is_normal(rs: &RootSystem, roots: &[usize]) -> bool {
        let pos: Vec<usize> = {
            let mut p = vec![0; roots.len()];
            for (i, &r) in roots.iter().enumerate() {
                p[r] = i;
            }
            p
        };
        for a in 0..rs.num_positive() {
            for b in a + 1..rs.num_positive() {
                let sum: Vec<i64> = rs.positive_roots[a]
                    .iter()
                    .zip(&rs.positive_roots[b])
                    .map(|(x, y)| x + y)
                    .collect();
                if let Some(c) = rs.root_index(&sum) {
                    let (pa, pb, pc) = (pos[a], pos[b], pos[c]);
                    if !((pa < pc && pc < pb) || (pb < pc && pc < pa)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Every normal order of the positive roots (brute force over permutations).
pub fn enumerate_normal_orders(rs: &RootSystem) -> Result<Vec<NormalOrder>> {
    if rs.rank() > PROJECTOR_MAX_RANK {
        return Err(Error::RankGuard {
            rank: rs.rank(),
            bound: PROJECTOR_MAX_RANK,
        });
    }
    Ok((0..rs.num_positive())
        .permutations(rs.num_positive())
        .filter(|p| NormalOrder::is_normal(rs, p))
        .map(|roots| NormalOrder { roots })
        .collect())
}

/// Outcome of the projector identities on a sample set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectorReport {
    pub samples: usize,
    pub orders: usize,
    /// `e_alpha (p v) = 0` for every positive root.
    pub raising_annihilates: bool,
    /// `p (f_alpha w) = 0`.
    pub kills_lowered: bool,
    pub idempotent: bool,
    pub order_independent: bool,
    pub weight_preserved: bool,
    /// Every factor used at most as many terms as the sample's letter count.
    pub truncation_ok: bool,
}

impl ProjectorReport {
    pub fn all_ok(&self) -> bool {
        self.raising_annihilates
            && self.kills_lowered
            && self.idempotent
            && self.order_independent
            && self.weight_preserved
            && self.truncation_ok
    }
}

/// Checks both halves of `e_a p = p f_a = 0`, idempotence, weight
/// preservation and independence of the normal order on `samples`.
pub fn projector_properties_check(
    module: &VermaModule,
    samples: &[VermaVector],
) -> Result<ProjectorReport> {
    let rs = module.roots();
    let orders = enumerate_normal_orders(rs)?;
    let first = &orders[0];
    let mut rep = ProjectorReport {
        samples: samples.len(),
        orders: orders.len(),
        raising_annihilates: true,
        kills_lowered: true,
        idempotent: true,
        order_independent: true,
        weight_preserved: true,
        truncation_ok: true,
    };
    for v in samples {
        let (pv, used) = module.apply_projector_traced(first, v)?;
        let letters = v
            .terms()
            .map(|(k, _)| k.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0);
        rep.truncation_ok &= used <= letters;
        let before: Vec<_> = module.weight_components(v).into_keys().collect();
        let after: Vec<_> = module.weight_components(&pv).into_keys().collect();
        rep.weight_preserved &= after.iter().all(|w| before.contains(w));
        for a in 0..rs.num_positive() {
            rep.raising_annihilates &= module.apply(Letter::e(a as u16), &pv)?.is_zero();
            let lowered = module.apply(Letter::f(a as u16), v)?;
            rep.kills_lowered &= module.apply_projector(first, &lowered)?.is_zero();
        }
        rep.idempotent &= module.apply_projector(first, &pv)? == pv;
        for other in &orders[1..] {
            rep.order_independent &= module.apply_projector(other, v)? == pv;
        }
    }
    Ok(rep)
}

/// Value of `h_alpha + rho(h_alpha) + j` at numeric weights, for oracles.
pub fn denominator_at(rs: &RootSystem, a: usize, gamma: &[Q], j: i64) -> Q {
    let val: Q = rs.coroots[a]
        .iter()
        .zip(gamma)
        .map(|(&c, g)| g * rational::q(c))
        .fold(Q::zero(), |acc, x| acc + x);
    val + rational::q(rs.rho_pairings[a] + j)
}

impl VermaModule {
    /// Convenience for tests and reports: `f^m v_lambda` on `sl_2`.
    pub fn sl2_lowered(&self, m: u32) -> VermaVector {
        let mut k = vec![0; self.roots().num_positive()];
        k[0] = m;
        self.monomial(k)
    }

    pub fn is_symbolic(&self) -> bool {
        self.lambda.iter().any(|l| l.as_constant().is_none())
    }

    pub fn lambda(&self) -> &[RatFunc] {
        &self.lambda
    }
}
