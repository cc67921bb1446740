//! Invariant generators, the maps `T`, `psi`, `script_T`, the Jacobians and
//! the end-to-end check of the shifted Jacobian factorisation.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::letter::{Letter, LetterClass, Var};
use crate::liealg::LieStructure;
use crate::pbw::{hc_project, HcMode, NCElement, Straightener};
use crate::poly::{cartan_var, determinant, CommPoly, Monomial};
use crate::rational::{self, Q};
use crate::rootdata::SimpleType;

/// Homogeneous `g`-invariant generators `H_1..H_n` of `S(g)`.
#[derive(Debug, Clone)]
pub struct InvariantFamily {
    pub lie: LieStructure,
    pub generators: Vec<CommPoly>,
    pub degrees: Vec<u32>,
    pub provenance: String,
}

impl InvariantFamily {
    /// `H_k = tr(X^k)`, `k = 2..n+1`, for the generic element
    /// `X = sum_b b (x) b*` of `g (x) gl_{n+1}` (dual basis for the trace form),
    /// each scaled to a primitive integer polynomial.
    pub fn trace_invariants(lie: &LieStructure) -> Result<InvariantFamily> {
        let x = generic_matrix(lie)?;
        let size = lie.matrix_size();
        let mut power = x.clone();
        let mut generators = Vec::new();
        for k in 2..=size {
            power = poly_mat_mul(&power, &x);
            let trace = (0..size).fold(CommPoly::zero(), |acc, i| acc + power[i][i].clone());
            generators.push(primitive_part(&trace));
            debug_assert_eq!(generators.last().and_then(|g| g.letter_degree()), Some(k as u32));
        }
        let fam = InvariantFamily::from_generators(lie, generators, "trace powers")?;
        if fam.degrees != lie.root_system().exponents_plus_one {
            return Err(Error::Internal(format!(
                "trace-power degrees {:?} differ from {:?}",
                fam.degrees,
                lie.root_system().exponents_plus_one
            )));
        }
        Ok(fam)
    }

    /// Validates `rank` homogeneous invariant generators over plain letters.
    pub fn from_generators(
        lie: &LieStructure,
        generators: Vec<CommPoly>,
        provenance: &str,
    ) -> Result<InvariantFamily> {
        if generators.len() != lie.rank() {
            return Err(Error::Shape(format!(
                "{} generators for rank {}",
                generators.len(),
                lie.rank()
            )));
        }
        let mut degrees = Vec::new();
        for (i, h) in generators.iter().enumerate() {
            for v in h.vars() {
                match v {
                    Var::L(l) if l.is_plain() && lie.is_valid_letter(&l) => {}
                    other => return Err(Error::ForeignVariable(other.to_string())),
                }
            }
            let d = h.letter_degree().ok_or(Error::ZeroPolynomial)?;
            if h.terms().any(|(m, _)| m.letter_degree() != d) {
                return Err(Error::Internal(format!("generator {} is not homogeneous", i + 1)));
            }
            for &b in lie.basis() {
                if !lie.ad_action(b, h)?.is_zero() {
                    return Err(Error::Internal(format!(
                        "generator {} is not invariant under ad {b}",
                        i + 1
                    )));
                }
            }
            degrees.push(d);
        }
        Ok(InvariantFamily {
            lie: lie.clone(),
            generators,
            degrees,
            provenance: provenance.to_string(),
        })
    }

    pub fn rank(&self) -> usize {
        self.lie.rank()
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Same family with `H_i` multiplied by `factors[i]`.
    pub fn rescaled(&self, factors: &[Q]) -> InvariantFamily {
        let mut out = self.clone();
        for (h, c) in out.generators.iter_mut().zip(factors) {
            *h = h.scalar_mul(c);
        }
        out.provenance = format!("{} (rescaled)", self.provenance);
        out
    }

    /// Lie structure whose t-cap covers every computation on this family.
    pub fn working_lie(&self) -> LieStructure {
        self.lie.clone().with_t_cap(self.max_degree().max(1))
    }
}

/// The `sl_2` Casimir normalised as `4ef + h^2`.
pub fn sl2_casimir() -> CommPoly {
    (CommPoly::var(Letter::e(0)) * CommPoly::var(Letter::f(0))).scalar_mul(&rational::q(4))
        + CommPoly::var(Letter::h(0)).pow(2)
}

type PolyMat = Vec<Vec<CommPoly>>;

fn generic_matrix(lie: &LieStructure) -> Result<PolyMat> {
    let size = lie.matrix_size();
    let rank = lie.rank();
    let mut x = vec![vec![CommPoly::zero(); size]; size];
    let roots = lie.root_system().num_positive() as u16;
    for k in 0..roots {
        // trace-dual of E_ab is E_ba
        for (var, dual) in [(Letter::e(k), Letter::f(k)), (Letter::f(k), Letter::e(k))] {
            for (&(r, c), v) in &lie.matrix_of(dual) {
                x[r][c] = x[r][c].clone() + CommPoly::var(var).scalar_mul(v);
            }
        }
    }
    // Cartan part: dual basis D_k = sum_m G^{-1}_{km} h_m with G_jm = tr(h_j h_m)
    let gram: Vec<Vec<Q>> = (0..rank)
        .map(|j| {
            (0..rank)
                .map(|m| rational::q(lie.root_system().cartan_matrix[j][m]))
                .collect()
        })
        .collect();
    let inv = invert(&gram)?;
    for k in 0..rank {
        for m in 0..rank {
            if inv[k][m].is_zero() {
                continue;
            }
            for (&(r, c), v) in &lie.matrix_of(Letter::h(m as u16)) {
                x[r][c] = x[r][c].clone() + cartan_var(k as u16).scalar_mul(&(v * &inv[k][m]));
            }
        }
    }
    Ok(x)
}

fn invert(m: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Internal("singular Gram matrix".into()))?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn poly_mat_mul(a: &PolyMat, b: &PolyMat) -> PolyMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(CommPoly::zero(), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc + &a[i][k] * &b[k][j]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Positive rational multiple with coprime integer coefficients.
fn primitive_part(p: &CommPoly) -> CommPoly {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for (_, c) in p.terms() {
        lcm = lcm.lcm(c.denom());
        gcd = gcd.gcd(c.numer());
    }
    if gcd.is_zero() {
        return p.clone();
    }
    p.scalar_mul(&Q::new(lcm, gcd.abs()))
}

/// `P_i° = H_i|_h`: every non-Cartan variable set to zero.
pub fn restrict_to_h(h: &CommPoly) -> CommPoly {
    h.restrict(|v| matches!(v, Var::L(l) if l.is_cartan() && l.is_plain()))
}

fn require_plain(h: &CommPoly) -> Result<()> {
    for v in h.vars() {
        match v {
            Var::L(l) if l.is_plain() => {}
            other => return Err(Error::InvalidLetter(other.to_string())),
        }
    }
    Ok(())
}

/// The algebra map `T: S(g) -> S(g[t])`, `x -> x t`.
pub fn shift_t(h: &CommPoly) -> Result<CommPoly> {
    require_plain(h)?;
    Ok(h.map_vars(|v| match v {
        Var::L(l) => Var::L(l.with_t(1)),
        Var::T => Var::T,
    }))
}

/// `psi(x_1 ... x_d) = sum_i x_1 ... (x_i u) ... x_d`.
pub fn psi(h: &CommPoly) -> Result<CommPoly> {
    require_plain(h)?;
    let mut out = CommPoly::zero();
    for (m, c) in h.terms() {
        for &(v, e) in m.factors() {
            let Var::L(l) = v else { continue };
            let rest = m.div(&Monomial::var(v)).expect("factor divides its monomial");
            out.add_term(
                rest.mul(&Monomial::var(Var::L(l.with_u(true)))),
                c * rational::q(i64::from(e)),
            );
        }
    }
    Ok(out)
}

/// `psi` on words of the tensor algebra (no reordering).
pub fn psi_words(e: &NCElement) -> Result<NCElement> {
    let mut out = NCElement::zero();
    for (w, c) in e.terms() {
        for (pos, l) in w.iter().enumerate() {
            if !l.is_plain() {
                return Err(Error::InvalidLetter(l.to_string()));
            }
            let mut v = w.clone();
            v[pos] = l.with_u(true);
            out.add_term(v, c.clone());
        }
    }
    Ok(out)
}

/// The derivation `script_T: U(t g[t]) -> U(q[t])` with
/// `x t^k -> k (x u) t^(k-1)`, applied word by word and normal-ordered.
pub fn script_t(st: &mut Straightener<'_>, e: &NCElement) -> Result<NCElement> {
    let mut raw = NCElement::zero();
    for (w, c) in e.terms() {
        for (pos, l) in w.iter().enumerate() {
            if l.u_flag || l.t_power == 0 {
                return Err(Error::InvalidLetter(l.to_string()));
            }
            let mut v = w.clone();
            v[pos] = l.with_t(l.t_power - 1).with_u(true);
            raw.add_term(v, c * rational::q(i64::from(l.t_power)));
        }
    }
    st.normal_order(&raw)
}

/// `P_i^[1]`: t-shifted Harish-Chandra image of `symmetrize(T(H_i))`.
pub fn compute_p1(st: &mut Straightener<'_>, family: &InvariantFamily, i: usize) -> Result<CommPoly> {
    let h = generator(family, i)?;
    let sym = st.symmetrize(&shift_t(h)?)?;
    hc_project(&sym, HcMode::TShifted)
}

/// `P_i`: plain Harish-Chandra image of `symmetrize(H_i)`.
pub fn compute_p(st: &mut Straightener<'_>, family: &InvariantFamily, i: usize) -> Result<CommPoly> {
    let h = generator(family, i)?;
    hc_project(&st.symmetrize(h)?, HcMode::Plain)
}

fn generator(family: &InvariantFamily, i: usize) -> Result<&CommPoly> {
    family
        .generators
        .get(i)
        .ok_or_else(|| Error::Shape(format!("generator index {} out of range", i + 1)))
}

/// `P(x - rho)`, i.e. `h_j -> h_j - 1` on simple coroots.
pub fn rho_shift(p: &CommPoly, rank: usize) -> CommPoly {
    let assignment: BTreeMap<Var, CommPoly> = (0..rank)
        .map(|j| (Var::L(Letter::h(j as u16)), cartan_var(j as u16) - CommPoly::one()))
        .collect();
    p.substitute(&assignment)
}

/// `det(d/dh_j P_i^[1])` with the shifted derivative, then `t = 1`.
pub fn jacobian_shifted(p1s: &[CommPoly]) -> Result<CommPoly> {
    let matrix = p1s
        .iter()
        .map(|p| (0..p1s.len()).map(|j| p.partial_shifted(j as u16)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    Ok(determinant(&matrix)?.at_t_equals_one())
}

/// `det(d P_i / d h_j)` for polynomials in the plain Cartan variables.
pub fn jacobian_classical(ps: &[CommPoly]) -> Result<CommPoly> {
    let n = ps.len();
    for p in ps {
        if !p.is_in_cartan_ring(n) {
            return Err(Error::ForeignVariable(format!("{p}")));
        }
    }
    let matrix: Vec<Vec<CommPoly>> = ps
        .iter()
        .map(|p| (0..n).map(|j| p.partial(&Var::L(Letter::h(j as u16)))).collect())
        .collect();
    determinant(&matrix)
}

/// Outcome of the Jacobian identities for one algebra.
#[derive(Debug, Clone)]
pub struct JacobianReport {
    pub simple_type: SimpleType,
    pub c: Q,
    pub p1s: Vec<CommPoly>,
    pub j_shifted: CommPoly,
    pub expected: CommPoly,
    pub j_at_zero: Q,
    /// `J({P_i}) = C prod (h_a + rho(h_a))` and `J({P_i°}) = C prod h_a`.
    pub classical_ok: bool,
    pub lemma1_ok: bool,
    pub lemma2_ok: bool,
    pub theorem_ok: bool,
    pub timing_secs: f64,
}

impl JacobianReport {
    pub fn all_ok(&self) -> bool {
        self.classical_ok && self.lemma1_ok && self.lemma2_ok && self.theorem_ok
    }

    /// `C*(h_a + c_a)*...` with each `h_a` expanded in simple coroots.
    pub fn expected_factored(&self, lie: &LieStructure) -> String {
        let rs = lie.root_system();
        let mut s = rational::display(&self.c);
        for k in 0..rs.num_positive() {
            let form = rs.coroot_poly(k) + CommPoly::int(rs.rho_pairings[k] + 1);
            s.push_str(&format!("*({form})"));
        }
        s
    }
}

/// Computes everything from trace-power generators.
pub fn verify_theorem(t: SimpleType) -> Result<JacobianReport> {
    let lie = LieStructure::for_type(t)?;
    let family = InvariantFamily::trace_invariants(&lie)?;
    verify_family(&family)
}

pub fn verify_family(family: &InvariantFamily) -> Result<JacobianReport> {
    let start = Instant::now();
    let lie = family.working_lie();
    let mut st = Straightener::new(&lie);
    let p1s = (0..family.rank())
        .map(|i| compute_p1(&mut st, family, i))
        .collect::<Result<Vec<_>>>()?;
    let ps = (0..family.rank())
        .map(|i| compute_p(&mut st, family, i))
        .collect::<Result<Vec<_>>>()?;
    let mut report = verify_with(family, &p1s, &ps)?;
    report.timing_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Assembles the report from precomputed `P_i^[1]` and `P_i`.
pub fn verify_with(
    family: &InvariantFamily,
    p1s: &[CommPoly],
    ps: &[CommPoly],
) -> Result<JacobianReport> {
    let start = Instant::now();
    let rs = family.lie.root_system();
    let p_circ: Vec<CommPoly> = family.generators.iter().map(restrict_to_h).collect();
    let prod_h = rs.coroot_product(|_| 0);
    let j_circ = jacobian_classical(&p_circ)?;
    let c = j_circ
        .exact_divide(&prod_h)?
        .as_constant()
        .ok_or_else(|| Error::Internal("J(P°) / prod h_a is not a scalar".into()))?;
    if c.is_zero() {
        return Err(Error::Internal("generators are algebraically dependent (C = 0)".into()));
    }
    let scaled = |p: CommPoly| p.scalar_mul(&c);

    let j_p = jacobian_classical(ps)?;
    let classical_ok = j_p == scaled(rs.coroot_product(|k| rs.rho_pairings[k]));

    let j = jacobian_shifted(p1s)?;
    let expected = scaled(rs.coroot_product(|k| rs.rho_pairings[k] + 1));
    let theorem_ok = (&j - &expected).is_zero();
    let lemma1_ok = !j.is_zero() && j.highest_component()? == scaled(prod_h);

    let j_at_zero = j.constant_term();
    let prod_rho_plus_one = rs
        .rho_pairings
        .iter()
        .fold(Q::one(), |acc, &m| acc * rational::q(m + 1));
    let prod_rho = rs.rho_pairings.iter().fold(Q::one(), |acc, &m| acc * rational::q(m));
    let w = rational::q(rs.weyl_order as i64);
    let lemma2_ok = j_at_zero == &c * prod_rho_plus_one && j_at_zero == w * &c * prod_rho;

    Ok(JacobianReport {
        simple_type: rs.simple_type,
        c,
        p1s: p1s.to_vec(),
        j_shifted: j,
        expected,
        j_at_zero,
        classical_ok,
        lemma1_ok,
        lemma2_ok,
        theorem_ok,
        timing_secs: start.elapsed().as_secs_f64(),
    })
}

/// `R_i = symmetrize(psi(H_i))` in `U(q)`.
pub fn build_r(st: &mut Straightener<'_>, family: &InvariantFamily, i: usize) -> Result<NCElement> {
    st.symmetrize(&psi(generator(family, i)?)?)
}

/// `script_T(symmetrize(T(H_i)))` with `t = 1`, normal-ordered in `U(q)`.
pub fn r_via_script_t(
    st: &mut Straightener<'_>,
    family: &InvariantFamily,
    i: usize,
) -> Result<NCElement> {
    let p1 = st.symmetrize(&shift_t(generator(family, i)?)?)?;
    let image = script_t(st, &p1)?;
    st.normal_order(&image.at_t_equals_one())
}

pub fn check_r_via_t(st: &mut Straightener<'_>, family: &InvariantFamily, i: usize) -> Result<bool> {
    Ok(build_r(st, family, i)? == r_via_script_t(st, family, i)?)
}

/// `sum_j (d/dh_j P^[1])|_{t=1} (h_j u)`.
pub fn cartan_part_from_p1(p1: &CommPoly, rank: usize) -> Result<CommPoly> {
    let mut out = CommPoly::zero();
    for j in 0..rank {
        let d = p1.partial_shifted(j as u16)?.at_t_equals_one();
        out = out + &d * &CommPoly::var(Letter::h(j as u16).with_u(true));
    }
    Ok(out)
}

/// `psi` applied to `xy - yx` in the tensor algebra versus `[x, y] u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionDemo {
    pub lhs: NCElement,
    pub rhs: NCElement,
}

impl ObstructionDemo {
    /// `lhs = 2 rhs`, and `lhs != rhs` unless the bracket vanishes.
    pub fn shows_factor_two(&self) -> bool {
        self.lhs == self.rhs.scalar_mul(&rational::q(2)) && (self.rhs.is_zero() || self.lhs != self.rhs)
    }
}

pub fn psi_obstruction_demo(
    st: &mut Straightener<'_>,
    x: Letter,
    y: Letter,
) -> Result<ObstructionDemo> {
    if !x.is_plain() || !y.is_plain() {
        return Err(Error::InvalidLetter(format!("{x}, {y}")));
    }
    let comm = NCElement::word(vec![x, y]) - NCElement::word(vec![y, x]);
    let lhs = st.normal_order(&psi_words(&comm)?)?;
    let rhs = NCElement::from_terms(
        st.lie()
            .extended_bracket(x, y)?
            .into_iter()
            .map(|(z, c)| (vec![z.with_u(true)], c)),
    );
    Ok(ObstructionDemo { lhs, rhs })
}

/// Basis of `q`: the plain basis of `g` and its u-copy.
pub fn takiff_basis(lie: &LieStructure) -> Vec<Letter> {
    let mut out: Vec<Letter> = lie.basis().to_vec();
    out.extend(lie.basis().iter().map(|l| l.with_u(true)));
    out.sort();
    out
}

/// Is `l` a lowering or raising letter?
pub fn is_root_letter(l: &Letter) -> bool {
    l.class != LetterClass::Cartan
}
