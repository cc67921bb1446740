//! Root-system combinatorics for the simple types A, B, C, D and G2.
//!
//! Roots are integer vectors in simple-root coordinates and the coroot of a
//! positive root is an integer vector in the simple-coroot basis. No
//! Euclidean embedding is used: the only metric input is the Gram matrix of
//! the simple roots, from which the Cartan matrix follows.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::letter::{Letter, Var};
use crate::poly::{cartan_var, CommPoly};
use crate::rational::{self, Q};

/// Upper bound on Weyl group orders that will be enumerated.
pub const WEYL_ENUMERATION_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Some(Family::A),
            "B" => Some(Family::B),
            "C" => Some(Family::C),
            "D" => Some(Family::D),
            "G" | "G2" => Some(Family::G2),
            _ => None,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => "G",
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C | Family::G2 => 2,
            Family::D => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let name = family.letter().to_string();
        let constraint = match family {
            Family::A if rank < 1 => Some("type A requires rank >= 1"),
            Family::B if rank < 2 => Some("type B requires rank >= 2"),
            Family::C if rank < 2 => Some("type C requires rank >= 2"),
            Family::D if rank < 3 => Some("type D requires rank >= 3"),
            Family::G2 if rank != 2 => Some("type G2 has rank 2"),
            _ => None,
        };
        match constraint {
            Some(constraint) => Err(Error::InvalidRank {
                family: name,
                rank,
                constraint,
            }),
            None => Ok(SimpleType { family, rank }),
        }
    }

    pub fn a(rank: usize) -> Result<Self> {
        SimpleType::new(Family::A, rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `dim g` from the classical formulas.
    pub fn dimension(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 2),
            Family::B | Family::C => n * (2 * n + 1),
            Family::D => n * (2 * n - 1),
            Family::G2 => 14,
        }
    }

    /// Degrees `d_i` of the basic invariants (exponents plus one).
    pub fn degrees(&self) -> Vec<u32> {
        let n = self.rank as u32;
        let mut d: Vec<u32> = match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B | Family::C => (1..=n).map(|k| 2 * k).collect(),
            Family::D => (1..n).map(|k| 2 * k).chain(std::iter::once(n)).collect(),
            Family::G2 => vec![2, 6],
        };
        d.sort_unstable();
        d
    }

    /// `|W|` from the classical formulas.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::G2 => 12,
        }
    }

    /// Gram matrix `(alpha_i, alpha_j)` of the simple roots, Bourbaki numbering.
    fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        if self.family == Family::G2 {
            return vec![vec![2, -3], vec![-3, 6]];
        }
        for i in 0..n {
            g[i][i] = 2;
            if i + 1 < n {
                g[i][i + 1] = -1;
                g[i + 1][i] = -1;
            }
        }
        match self.family {
            Family::B => g[n - 1][n - 1] = 1,
            Family::C => {
                g[n - 1][n - 1] = 4;
                g[n - 2][n - 1] = -2;
                g[n - 1][n - 2] = -2;
            }
            Family::D => {
                g[n - 2][n - 1] = 0;
                g[n - 1][n - 2] = 0;
                g[n - 3][n - 1] = -1;
                g[n - 1][n - 3] = -1;
            }
            _ => {}
        }
        g
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Root data of one simple type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub simple_type: SimpleType,
    /// `cartan_matrix[i][j] = alpha_i(h_j)`, so `[h_i, e_j] = a_ji e_j`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Simple-root coordinates, sorted by height.
    pub positive_roots: Vec<Vec<i64>>,
    /// `h_alpha` in the simple-coroot basis.
    pub coroots: Vec<Vec<i64>>,
    /// `rho(h_alpha)` per positive root.
    pub rho_pairings: Vec<i64>,
    pub exponents_plus_one: Vec<u32>,
    pub weyl_order: u64,
    gram: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn build(simple_type: SimpleType) -> Result<RootSystem> {
        let gram = simple_type.gram();
        let n = simple_type.rank();
        let cartan_matrix: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                if 2 * gram[i][j] % gram[j][j] != 0 {
                    return Err(Error::Internal(format!(
                        "non-integral Cartan entry ({i},{j})"
                    )));
                }
            }
        }

        let positive_roots = close_positive_roots(&cartan_matrix);
        let mut rs = RootSystem {
            simple_type,
            cartan_matrix,
            coroots: Vec::new(),
            rho_pairings: Vec::new(),
            exponents_plus_one: simple_type.degrees(),
            weyl_order: simple_type.weyl_order(),
            positive_roots,
            gram,
        };

        for k in 0..rs.positive_roots.len() {
            let coroot = rs.coroot_of(&rs.positive_roots[k].clone())?;
            let via_coroot: i64 = coroot.iter().sum();
            let via_rho = rs.rho_pairing_from_form(k)?;
            if via_coroot != via_rho {
                return Err(Error::Internal(format!(
                    "rho(h_alpha) mismatch for root {k}: {via_coroot} vs {via_rho}"
                )));
            }
            rs.coroots.push(coroot);
            rs.rho_pairings.push(via_coroot);
        }

        let big_n = rs.positive_roots.len();
        if n + 2 * big_n != simple_type.dimension() {
            return Err(Error::Internal(format!(
                "n + 2N = {} but dim = {}",
                n + 2 * big_n,
                simple_type.dimension()
            )));
        }
        let prod: u64 = rs.exponents_plus_one.iter().map(|&d| u64::from(d)).product();
        if prod != rs.weyl_order {
            return Err(Error::Internal(format!(
                "product of degrees {prod} differs from |W| = {}",
                rs.weyl_order
            )));
        }
        Ok(rs)
    }

    pub fn rank(&self) -> usize {
        self.simple_type.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn height(&self, k: usize) -> i64 {
        self.positive_roots[k].iter().sum()
    }

    pub fn simple_root_index(&self, k: usize) -> Option<usize> {
        let r = &self.positive_roots[k];
        (self.height(k) == 1).then(|| r.iter().position(|&c| c == 1).unwrap_or(0))
    }

    /// Index of a positive root given in simple-root coordinates.
    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == coords)
    }

    /// `(x, y)` for vectors in simple-root coordinates (integral here since
    /// the Gram matrix is).
    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| x[i] * self.gram[i][j] * y[j])
            .sum()
    }

    /// `<x, alpha_i^vee> = x(h_i) = sum_j x_j a_ji`.
    pub fn pairing_with_simple_coroot(&self, x: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|j| x[j] * self.cartan_matrix[j][i]).sum()
    }

    pub fn reflect(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let c = self.pairing_with_simple_coroot(x, i);
        let mut y = x.to_vec();
        y[i] -= c;
        y
    }

    /// Sum of positive roots, i.e. `2 rho`, in simple-root coordinates.
    pub fn two_rho(&self) -> Vec<i64> {
        let mut s = vec![0; self.rank()];
        for r in &self.positive_roots {
            for (a, b) in s.iter_mut().zip(r) {
                *a += b;
            }
        }
        s
    }

    fn coroot_of(&self, root: &[i64]) -> Result<Vec<i64>> {
        let len = self.form(root, root);
        root.iter()
            .enumerate()
            .map(|(j, &c)| {
                let num = c * self.gram[j][j];
                if num % len != 0 {
                    Err(Error::Internal(format!("non-integral coroot of {root:?}")))
                } else {
                    Ok(num / len)
                }
            })
            .collect()
    }

    /// `2 (rho, alpha) / (alpha, alpha)` computed from the bilinear form.
    fn rho_pairing_from_form(&self, k: usize) -> Result<i64> {
        let alpha = &self.positive_roots[k];
        let num = self.form(&self.two_rho(), alpha);
        let den = self.form(alpha, alpha);
        if num % den != 0 {
            return Err(Error::Internal(format!("non-integral rho pairing for {alpha:?}")));
        }
        Ok(num / den)
    }

    /// `h_alpha` as a linear form in the Cartan variables.
    pub fn coroot_poly(&self, k: usize) -> CommPoly {
        self.coroots[k]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(CommPoly::zero(), |acc, (j, &c)| {
                acc + cartan_var(j as u16).scalar_mul(&rational::q(c))
            })
    }

    /// `prod_{alpha > 0} (h_alpha + shift(alpha))`.
    pub fn coroot_product(&self, shift: impl Fn(usize) -> i64) -> CommPoly {
        (0..self.num_positive()).fold(CommPoly::one(), |acc, k| {
            &acc * &(self.coroot_poly(k) + CommPoly::int(shift(k)))
        })
    }

    /// Breadth-first enumeration of `W` through its action on `2 rho`,
    /// which is regular, so orbit points and group elements correspond.
    pub fn enumerate_weyl(&self) -> Result<WeylEnumeration> {
        self.weyl_guard()?;
        let start = self.two_rho();
        let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
        let mut layer = vec![start];
        let mut counts = Vec::new();
        while !layer.is_empty() {
            counts.push(layer.len() as u64);
            let mut next = Vec::new();
            for x in &layer {
                for i in 0..self.rank() {
                    let y = self.reflect(i, x);
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            if seen.len() as u64 > WEYL_ENUMERATION_BOUND {
                return Err(Error::WeylGuard {
                    order: seen.len() as u64,
                    bound: WEYL_ENUMERATION_BOUND,
                });
            }
            layer = next;
        }
        Ok(WeylEnumeration { counts })
    }

    fn weyl_guard(&self) -> Result<()> {
        if self.weyl_order > WEYL_ENUMERATION_BOUND {
            return Err(Error::WeylGuard {
                order: self.weyl_order,
                bound: WEYL_ENUMERATION_BOUND,
            });
        }
        Ok(())
    }

    /// Number of reduced decompositions of the longest element.
    pub fn reduced_words_of_longest(&self) -> Result<u64> {
        self.weyl_guard()?;
        let mut layer: HashMap<Vec<i64>, u64> = HashMap::from([(self.two_rho(), 1)]);
        let mut seen: HashSet<Vec<i64>> = layer.keys().cloned().collect();
        loop {
            let mut next: HashMap<Vec<i64>, u64> = HashMap::new();
            for (x, c) in &layer {
                for i in 0..self.rank() {
                    let y = self.reflect(i, x);
                    if !seen.contains(&y) {
                        *next.entry(y).or_insert(0) += c;
                    }
                }
            }
            if next.is_empty() {
                return Ok(layer.values().sum());
            }
            seen.extend(next.keys().cloned());
            layer = next;
        }
    }

    /// Kostant's product `prod (rho(h_a)+1)/rho(h_a)` against `|W|`.
    pub fn kostant_check(&self) -> KostantCheck {
        let lhs = self.rho_pairings.iter().fold(Q::one(), |acc, &m| {
            acc * rational::frac(m + 1, m)
        });
        let rhs = self.weyl_order;
        let equal = lhs == rational::q(rhs as i64);
        KostantCheck { lhs, rhs, equal }
    }

    /// `sum_w t^l(w)` against `prod (t^(m+1) - 1)/(t^m - 1)`, `m = rho(h_a)`.
    pub fn poincare_check(&self) -> Result<PoincareCheck> {
        let sum_side = self.enumerate_weyl()?.counts.iter().map(|&c| c as i128).collect();
        let mut num = vec![1i128];
        let mut den = vec![1i128];
        for &m in &self.rho_pairings {
            num = upoly_mul(&num, &t_pow_minus_one(m as usize + 1))?;
            den = upoly_mul(&den, &t_pow_minus_one(m as usize))?;
        }
        let product_side = upoly_exact_div(&num, &den).ok_or_else(|| {
            Error::Internal("Poincare product is not a polynomial; rho pairings are wrong".into())
        })?;
        let equal = sum_side == product_side;
        Ok(PoincareCheck {
            sum_side,
            product_side,
            equal,
        })
    }

    /// Applies `s_i` to a polynomial in `h_1..h_n`:
    /// `h_j -> h_j - a_ij h_i`.
    pub fn simple_reflection_action(&self, i: usize, p: &CommPoly) -> Result<CommPoly> {
        let n = self.rank();
        if i >= n {
            return Err(Error::Internal(format!("simple root index {i} out of range")));
        }
        if let Some(v) = p.vars().into_iter().find(|v| !is_cartan_var(v, n)) {
            return Err(Error::ForeignVariable(v.to_string()));
        }
        let assignment: BTreeMap<Var, CommPoly> = (0..n)
            .map(|j| {
                let image = cartan_var(j as u16)
                    - cartan_var(i as u16).scalar_mul(&rational::q(self.cartan_matrix[i][j]));
                (Var::L(Letter::h(j as u16)), image)
            })
            .collect();
        Ok(p.substitute(&assignment))
    }
}

fn is_cartan_var(v: &Var, rank: usize) -> bool {
    matches!(v, Var::L(l) if l.is_cartan() && l.is_plain() && usize::from(l.index) < rank)
}

/// Root-string closure of the simple roots, processed height by height.
fn close_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let pair = |x: &[i64], i: usize| -> i64 { (0..n).map(|j| x[j] * cartan[j][i]).sum() };
    let unit = |i: usize| -> Vec<i64> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    let mut all: HashSet<Vec<i64>> = HashSet::new();
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut layer: Vec<Vec<i64>> = (0..n).map(unit).collect();
    while !layer.is_empty() {
        layer.sort_by(|a, b| b.cmp(a));
        for r in &layer {
            all.insert(r.clone());
        }
        roots.extend(layer.iter().cloned());
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for i in 0..n {
                if *beta == unit(i) {
                    continue;
                }
                // p = length of the alpha_i-string below beta
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - pair(beta, i);
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        layer = next;
    }
    roots
}

fn t_pow_minus_one(k: usize) -> Vec<i128> {
    let mut v = vec![0i128; k + 1];
    v[0] = -1;
    v[k] += 1;
    v
}

fn upoly_mul(a: &[i128], b: &[i128]) -> Result<Vec<i128>> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let term = x
                .checked_mul(*y)
                .and_then(|t| t.checked_add(out[i + j]))
                .ok_or_else(|| Error::Internal("integer overflow in Poincare product".into()))?;
            out[i + j] = term;
        }
    }
    Ok(out)
}

/// Exact division of integer polynomials (coefficients low to high).
fn upoly_exact_div(num: &[i128], den: &[i128]) -> Option<Vec<i128>> {
    let mut rem = num.to_vec();
    let lead = *den.last()?;
    if den.len() > rem.len() {
        return rem.iter().all(Zero::is_zero).then(|| vec![0]);
    }
    let mut quot = vec![0i128; rem.len() - den.len() + 1];
    for k in (0..quot.len()).rev() {
        let top = rem[k + den.len() - 1];
        if top % lead != 0 {
            return None;
        }
        let c = top / lead;
        quot[k] = c;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

/// Number of Weyl group elements of each length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylEnumeration {
    pub counts: Vec<u64>,
}

impl WeylEnumeration {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn max_length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn length_pairs(&self) -> Vec<(usize, u64)> {
        self.counts.iter().copied().enumerate().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KostantCheck {
    pub lhs: Q,
    pub rhs: u64,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareCheck {
    /// Coefficients, constant term first.
    pub sum_side: Vec<i128>,
    pub product_side: Vec<i128>,
    pub equal: bool,
}

impl PoincareCheck {
    pub fn value_at_one(&self) -> i128 {
        self.sum_side.iter().sum()
    }
}

/// Human form of an integer polynomial in `t`.
pub fn format_t_poly(coeffs: &[i128]) -> String {
    let mut parts = Vec::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        parts.push(match (c, k) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            (-1, _) => format!("-{mono}"),
            _ => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}
