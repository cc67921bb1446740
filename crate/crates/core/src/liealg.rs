//! Structure constants of `sl_{n+1}` from matrix units, and the bracket on
//! the shared letter universe of `g[t]`, `q = g[u]/(u^2)` and `q[t]`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::letter::{Letter, LetterClass, Var};
use crate::poly::{CommPoly, Monomial};
use crate::rational::{self, Q};
use crate::rootdata::{Family, RootSystem, SimpleType};

/// Sparse rational linear combination of letters.
pub type LinComb = Vec<(Letter, Q)>;

/// Sparse `(row, col) -> entry` matrix.
pub type SparseMatrix = BTreeMap<(usize, usize), Q>;

#[derive(Debug, Clone)]
pub struct LieStructure {
    roots: RootSystem,
    basis: Vec<Letter>,
    table: HashMap<(Letter, Letter), LinComb>,
    /// `(a, b)` such that root `k` is `eps_a - eps_b`, `a < b`.
    root_pairs: Vec<(usize, usize)>,
    t_cap: u32,
}

impl LieStructure {
    /// Chevalley-style basis of `sl_{rank+1}`: `e_alpha = E_ab`,
    /// `f_alpha = E_ba`, `h_i = E_ii - E_(i+1)(i+1)`.
    pub fn build_sl(rank: usize) -> Result<LieStructure> {
        let roots = RootSystem::build(SimpleType::a(rank)?)?;
        let root_pairs: Vec<(usize, usize)> = roots
            .positive_roots
            .iter()
            .map(|r| {
                let a = r.iter().position(|&c| c != 0).unwrap_or(0);
                let b = a + r.iter().filter(|&&c| c != 0).count();
                (a, b)
            })
            .collect();
        let n_roots = roots.num_positive() as u16;
        let mut basis: Vec<Letter> = (0..n_roots).map(Letter::f).collect();
        basis.extend((0..rank as u16).map(Letter::h));
        basis.extend((0..n_roots).map(Letter::e));
        let t_cap = roots.exponents_plus_one.iter().copied().max().unwrap_or(2);

        let mut s = LieStructure {
            roots,
            basis,
            table: HashMap::new(),
            root_pairs,
            t_cap,
        };
        let mut table = HashMap::new();
        for &x in &s.basis {
            for &y in &s.basis {
                let mx = s.matrix_of(x);
                let my = s.matrix_of(y);
                let comm = sub_matrices(&mat_mul(&mx, &my), &mat_mul(&my, &mx));
                let lc = s.decompose(&comm)?;
                if !lc.is_empty() {
                    table.insert((x, y), lc);
                }
            }
        }
        s.table = table;
        Ok(s)
    }

    /// Builds the structure for a simple type; only type A is available.
    pub fn for_type(t: SimpleType) -> Result<LieStructure> {
        match t.family() {
            Family::A => LieStructure::build_sl(t.rank()),
            _ => Err(Error::Unsupported(format!(
                "structure constants for type {t} are not implemented"
            ))),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    /// Plain basis letters in letter order.
    pub fn basis(&self) -> &[Letter] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn t_cap(&self) -> u32 {
        self.t_cap
    }

    pub fn with_t_cap(mut self, cap: u32) -> Self {
        self.t_cap = cap;
        self
    }

    /// Size of the defining representation.
    pub fn matrix_size(&self) -> usize {
        self.rank() + 1
    }

    pub fn is_valid_letter(&self, l: &Letter) -> bool {
        let bound = match l.class {
            LetterClass::Cartan => self.rank(),
            _ => self.roots.num_positive(),
        };
        usize::from(l.index) < bound
    }

    /// Matrix of a plain basis letter in the defining representation.
    pub fn matrix_of(&self, l: Letter) -> SparseMatrix {
        let mut m = SparseMatrix::new();
        let k = usize::from(l.index);
        match l.class {
            LetterClass::Pos => {
                let (a, b) = self.root_pairs[k];
                m.insert((a, b), Q::one());
            }
            LetterClass::Neg => {
                let (a, b) = self.root_pairs[k];
                m.insert((b, a), Q::one());
            }
            LetterClass::Cartan => {
                m.insert((k, k), Q::one());
                m.insert((k + 1, k + 1), -Q::one());
            }
        }
        m
    }

    /// Writes a traceless matrix in the basis.
    pub fn decompose(&self, m: &SparseMatrix) -> Result<LinComb> {
        let size = self.matrix_size();
        let mut out: LinComb = Vec::new();
        let mut diag = vec![Q::zero(); size];
        for (&(r, c), v) in m {
            if v.is_zero() {
                continue;
            }
            if r == c {
                diag[r] += v;
                continue;
            }
            let (a, b, class) = if r < c {
                (r, c, LetterClass::Pos)
            } else {
                (c, r, LetterClass::Neg)
            };
            let k = self
                .root_pairs
                .iter()
                .position(|&p| p == (a, b))
                .ok_or_else(|| Error::Internal(format!("no root for E_{r}{c}")))?;
            out.push((Letter::new(class, k as u16), v.clone()));
        }
        let mut running = Q::zero();
        for (k, d) in diag.iter().enumerate().take(size - 1) {
            running += d;
            if !running.is_zero() {
                out.push((Letter::h(k as u16), running.clone()));
            }
        }
        if !(running + &diag[size - 1]).is_zero() {
            return Err(Error::Internal("matrix is not traceless".into()));
        }
        out.sort_by_key(|(l, _)| *l);
        Ok(out)
    }

    /// Bracket of two plain letters.
    pub fn base_bracket(&self, x: Letter, y: Letter) -> LinComb {
        self.table.get(&(x, y)).cloned().unwrap_or_default()
    }

    /// `[x t^k u^a, y t^m u^b] = [x, y] t^(k+m) u^(a+b)`, zero when `a = b = 1`.
    pub fn extended_bracket(&self, x: Letter, y: Letter) -> Result<LinComb> {
        if x.u_flag && y.u_flag {
            return Ok(Vec::new());
        }
        let base = self.base_bracket(x.base(), y.base());
        if base.is_empty() {
            return Ok(base);
        }
        let t = x.t_power + y.t_power;
        if t > self.t_cap {
            return Err(Error::TPowerOverflow {
                letter: format!("[{x}, {y}]"),
                power: t,
                cap: self.t_cap,
            });
        }
        let u = x.u_flag || y.u_flag;
        Ok(base
            .into_iter()
            .map(|(z, c)| (z.with_t(t).with_u(u), c))
            .collect())
    }

    /// The derivation of the polynomial ring extending `ad x`.
    pub fn ad_action(&self, x: Letter, p: &CommPoly) -> Result<CommPoly> {
        let mut out = CommPoly::zero();
        for (m, c) in p.terms() {
            for &(v, e) in m.factors() {
                let Var::L(y) = v else { continue };
                let br = self.extended_bracket(x, y)?;
                if br.is_empty() {
                    continue;
                }
                let rest = m.div(&Monomial::var(v)).expect("factor divides its monomial");
                let scale = c * rational::q(i64::from(e));
                for (z, k) in br {
                    out.add_term(rest.mul(&Monomial::var(Var::L(z))), &scale * k);
                }
            }
        }
        Ok(out)
    }

    /// Canonical text of the nonzero base brackets, one `x y : c z ...` per line.
    pub fn structure_text(&self) -> String {
        let mut keys: Vec<_> = self.table.keys().collect();
        keys.sort();
        let mut s = format!("sl {}\n", self.matrix_size());
        for k in keys {
            s.push_str(&format!("{} {} :", k.0.canonical(), k.1.canonical()));
            for (z, c) in &self.table[k] {
                s.push_str(&format!(" {} {}", rational::to_pq(c), z.canonical()));
            }
            s.push('\n');
        }
        s
    }
}

pub fn mat_mul(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let mut out = SparseMatrix::new();
    for (&(i, k), x) in a {
        for (&(k2, j), y) in b.range((k, 0)..(k + 1, 0)) {
            debug_assert_eq!(k, k2);
            let e = out.entry((i, j)).or_insert_with(Q::zero);
            *e += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn sub_matrices(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(*k).or_insert_with(Q::zero);
        *e -= v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn lc(items: &[(Letter, i64)]) -> LinComb {
        items.iter().map(|&(l, c)| (l, q(c))).collect()
    }

    #[test]
    fn sl2_relations() {
        let s = LieStructure::build_sl(1).unwrap();
        let (e, h, f) = (Letter::e(0), Letter::h(0), Letter::f(0));
        assert_eq!(s.dim(), 3);
        assert_eq!(s.base_bracket(e, f), lc(&[(h, 1)]));
        assert_eq!(s.base_bracket(h, e), lc(&[(e, 2)]));
        assert_eq!(s.base_bracket(h, f), lc(&[(f, -2)]));
        assert!(s.base_bracket(h, h).is_empty());
    }

    #[test]
    fn sl3_highest_root() {
        let s = LieStructure::build_sl(2).unwrap();
        assert_eq!(s.dim(), 8);
        let theta = s.root_system().root_index(&[1, 1]).unwrap() as u16;
        let br = s.base_bracket(Letter::e(0), Letter::e(1));
        assert_eq!(br.len(), 1);
        assert_eq!(br[0].0, Letter::e(theta));
        assert!(br[0].1 == q(1) || br[0].1 == q(-1));
    }

    #[test]
    fn extended_brackets() {
        let s = LieStructure::build_sl(1).unwrap().with_t_cap(3);
        let (e, h, f) = (Letter::e(0), Letter::h(0), Letter::f(0));
        assert_eq!(
            s.extended_bracket(e.with_t(1), f.with_t(2)).unwrap(),
            lc(&[(h.with_t(3), 1)])
        );
        assert!(s
            .extended_bracket(e.with_u(true), f.with_u(true))
            .unwrap()
            .is_empty());
        assert_eq!(
            s.extended_bracket(e, f.with_u(true)).unwrap(),
            lc(&[(h.with_u(true), 1)])
        );
        let err = s.extended_bracket(e.with_t(2), f.with_t(2)).unwrap_err();
        assert!(matches!(err, Error::TPowerOverflow { power: 4, cap: 3, .. }));
    }

    #[test]
    fn ad_examples() {
        let s = LieStructure::build_sl(1).unwrap();
        let (e, h, f) = (Letter::e(0), Letter::h(0), Letter::f(0));
        let casimir = (CommPoly::var(e) * CommPoly::var(f)).scalar_mul(&q(4))
            + CommPoly::var(h).pow(2);
        assert!(s.ad_action(e, &casimir).unwrap().is_zero());
        assert_eq!(
            s.ad_action(h, &CommPoly::var(e)).unwrap(),
            CommPoly::var(e).scalar_mul(&q(2))
        );
        assert_eq!(
            s.ad_action(e, &CommPoly::var(h)).unwrap(),
            CommPoly::var(e).scalar_mul(&q(-2))
        );
    }

    #[test]
    fn only_type_a() {
        let b2 = SimpleType::new(Family::B, 2).unwrap();
        assert!(matches!(LieStructure::for_type(b2), Err(Error::Unsupported(_))));
        assert!(LieStructure::build_sl(0).is_err());
    }
}
