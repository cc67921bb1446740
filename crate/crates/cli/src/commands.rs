//! The four report commands. Each returns its rows; independent rows are
//! computed on the ambient rayon pool and collected in index order.

use lie_jacobi_core::invariants::{
    build_r, cartan_part_from_p1, compute_p, compute_p1, psi_obstruction_demo, r_via_script_t,
    takiff_basis, verify_with, InvariantFamily,
};
use lie_jacobi_core::pbw::{takiff_cartan_part, Straightener};
use lie_jacobi_core::projector::{
    enumerate_normal_orders, projector_properties_check, ProjectorReport, RatFunc, VermaModule,
    VermaVector, PROJECTOR_MAX_RANK,
};
use lie_jacobi_core::rational::{self, q};
use lie_jacobi_core::rootdata::{Family, RootSystem, SimpleType};
use lie_jacobi_core::{CommPoly, Error, Letter, LieStructure, NCElement, Var};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cache::{version_stamp, Artifact, ArtifactKey, Cache};
use crate::config::RunConfig;
use crate::report::{
    CombinatoricsRow, GeneratorImage, ObstructionRow, ProjectorRow, Row, TakiffRow, TheoremRow,
};
use crate::CliError;

pub const THEOREM_MAX_RANK: usize = 4;
pub const TAKIFF_MAX_RANK: usize = 3;
pub const COMBINATORICS_MAX_RANK: usize = 8;
/// Poincaré sums enumerate `W`; beyond this rank they are skipped.
pub const POINCARE_MAX_RANK: usize = 4;
/// Lowering depth of the deterministic projector samples.
pub const PROJECTOR_SAMPLE_DEPTH: u32 = 3;
/// Extra seeded random combinations of those samples.
pub const PROJECTOR_RANDOM_SAMPLES: usize = 4;

fn type_a(config: &RunConfig, max_rank: usize) -> Result<SimpleType, CliError> {
    let t = config.simple_type()?;
    let cmd = config.command.name();
    if t.family() != Family::A {
        return Err(CliError::Usage(format!("`{cmd}` supports type A only, not {t}")));
    }
    if t.rank() > max_rank {
        return Err(CliError::Usage(format!(
            "`{cmd}` supports rank at most {max_rank}, not {}",
            t.rank()
        )));
    }
    Ok(t)
}

/// Trace-power family of one type with per-generator cache stamps.
struct Pipeline {
    simple_type: SimpleType,
    family: InvariantFamily,
    lie: LieStructure,
    stamps: Vec<String>,
}

impl Pipeline {
    fn new(t: SimpleType) -> Result<Self, CliError> {
        let family = InvariantFamily::trace_invariants(&LieStructure::for_type(t)?)?;
        let lie = family.working_lie();
        let stamps = family
            .generators
            .iter()
            .map(|g| version_stamp(&lie, g))
            .collect();
        Ok(Pipeline {
            simple_type: t,
            family,
            lie,
            stamps,
        })
    }

    fn key(&self, artifact: Artifact, index: usize) -> ArtifactKey {
        ArtifactKey {
            simple_type: self.simple_type,
            artifact,
            index,
        }
    }

    fn poly_artifact(
        &self,
        cache: &Cache,
        artifact: Artifact,
        i: usize,
        compute: impl FnOnce() -> lie_jacobi_core::Result<CommPoly>,
    ) -> Result<CommPoly, CliError> {
        cache.get_or_compute(
            self.key(artifact, i),
            &self.stamps[i],
            CommPoly::to_canonical_text,
            CommPoly::parse_canonical_text,
            compute,
        )
    }

    fn shifted_image(&self, cache: &Cache, i: usize) -> Result<CommPoly, CliError> {
        self.poly_artifact(cache, Artifact::ShiftedImage, i, || {
            compute_p1(&mut Straightener::new(&self.lie), &self.family, i)
        })
    }

    fn plain_image(&self, cache: &Cache, i: usize) -> Result<CommPoly, CliError> {
        self.poly_artifact(cache, Artifact::PlainImage, i, || {
            compute_p(&mut Straightener::new(&self.lie), &self.family, i)
        })
    }

    fn takiff_element(&self, cache: &Cache, i: usize) -> Result<NCElement, CliError> {
        cache.get_or_compute(
            self.key(Artifact::TakiffElement, i),
            &self.stamps[i],
            NCElement::to_canonical_text,
            NCElement::parse_canonical_text,
            || build_r(&mut Straightener::new(&self.lie), &self.family, i),
        )
    }
}

pub fn verify_theorem(config: &RunConfig, cache: &Cache) -> Result<Vec<Row>, CliError> {
    let t = type_a(config, THEOREM_MAX_RANK)?;
    let p = Pipeline::new(t)?;
    let images = (0..t.rank())
        .into_par_iter()
        .map(|i| Ok((p.shifted_image(cache, i)?, p.plain_image(cache, i)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let (p1s, ps): (Vec<CommPoly>, Vec<CommPoly>) = images.into_iter().unzip();
    let rep = verify_with(&p.family, &p1s, &ps)?;
    let generators = p1s
        .iter()
        .zip(&p.family.degrees)
        .enumerate()
        .map(|(i, (p1, &degree))| GeneratorImage {
            index: i + 1,
            degree,
            p1: p1.to_term_list(),
            p1_text: p1.to_string(),
        })
        .collect();
    Ok(vec![Row::Theorem(TheoremRow {
        simple_type: t.to_string(),
        generators,
        c: rational::to_pq(&rep.c),
        jacobian: rep.j_shifted.to_term_list(),
        jacobian_text: rep.j_shifted.to_string(),
        expected: rep.expected.to_term_list(),
        expected_factored: rep.expected_factored(&p.lie),
        jacobian_at_zero: rational::to_pq(&rep.j_at_zero),
        classical_ok: rep.classical_ok,
        lemma1_ok: rep.lemma1_ok,
        lemma2_ok: rep.lemma2_ok,
        theorem_ok: rep.theorem_ok,
        ok: rep.all_ok(),
    })])
}

/// Types covered by a combinatorics sweep up to `max_rank`.
pub fn sweep_types(family: Option<Family>, max_rank: usize) -> Result<Vec<SimpleType>, CliError> {
    if max_rank > COMBINATORICS_MAX_RANK {
        return Err(CliError::Usage(format!(
            "combinatorics sweeps go up to rank {COMBINATORICS_MAX_RANK}"
        )));
    }
    let usage = |e: Error| CliError::Usage(e.to_string());
    let mut out = Vec::new();
    match family {
        Some(Family::G2) => out.push(SimpleType::new(Family::G2, max_rank).map_err(usage)?),
        Some(f) => {
            SimpleType::new(f, max_rank).map_err(usage)?;
            for rank in f.min_rank()..=max_rank {
                out.push(SimpleType::new(f, rank).map_err(usage)?);
            }
        }
        None => {
            for f in [Family::A, Family::B, Family::C, Family::D] {
                for rank in f.min_rank()..=max_rank {
                    out.push(SimpleType::new(f, rank).map_err(usage)?);
                }
            }
            if max_rank >= 2 {
                out.push(SimpleType::new(Family::G2, 2).map_err(usage)?);
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("no types of rank <= {max_rank}")));
    }
    Ok(out)
}

pub fn combinatorics(config: &RunConfig) -> Result<Vec<Row>, CliError> {
    let types = sweep_types(config.family_selection()?, config.rank)?;
    Ok(types
        .par_iter()
        .map(|&t| Row::Combinatorics(combinatorics_row(t)))
        .collect())
}

fn combinatorics_row(t: SimpleType) -> CombinatoricsRow {
    let mut row = CombinatoricsRow {
        simple_type: t.to_string(),
        rank: t.rank(),
        kostant_lhs: String::new(),
        weyl_order: t.weyl_order(),
        kostant_equal: false,
        poincare: None,
        poincare_equal: None,
        note: None,
        ok: false,
    };
    let rs = match RootSystem::build(t) {
        Ok(rs) => rs,
        Err(e) => {
            row.note = Some(e.to_string());
            return row;
        }
    };
    let k = rs.kostant_check();
    row.kostant_lhs = rational::to_pq(&k.lhs);
    row.kostant_equal = k.equal;
    if t.rank() > POINCARE_MAX_RANK {
        row.note = Some(format!("poincare skipped above rank {POINCARE_MAX_RANK}"));
    } else {
        match rs.poincare_check() {
            Ok(p) => {
                row.poincare = Some(lie_jacobi_core::rootdata::format_t_poly(&p.sum_side));
                row.poincare_equal = Some(p.equal);
            }
            Err(e) => row.note = Some(e.to_string()),
        }
    }
    row.ok = row.kostant_equal && row.poincare_equal != Some(false);
    row
}

pub fn takiff(config: &RunConfig, cache: &Cache) -> Result<Vec<Row>, CliError> {
    let t = type_a(config, TAKIFF_MAX_RANK)?;
    let p = Pipeline::new(t)?;
    let mut rows = (0..t.rank())
        .into_par_iter()
        .map(|i| {
            takiff_row(&p, cache, i).map_err(|e| match e {
                CliError::Core(inner) => {
                    CliError::Core(Error::Internal(format!("generator {}: {inner}", i + 1)))
                }
                other => other,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut st = Straightener::new(&p.lie);
    let (e, h, f) = (Letter::e(0), Letter::h(0), Letter::f(0));
    for (x, y) in [(e, f), (h, h), (h, e)] {
        let d = psi_obstruction_demo(&mut st, x, y)?;
        rows.push(Row::Obstruction(ObstructionRow {
            pair: format!("{x}, {y}"),
            psi_of_commutator: d.lhs.to_string(),
            bracket_u: d.rhs.to_string(),
            factor_two: d.shows_factor_two(),
            ok: d.shows_factor_two(),
        }));
    }
    Ok(rows)
}

fn takiff_row(p: &Pipeline, cache: &Cache, i: usize) -> Result<Row, CliError> {
    let n = p.simple_type.rank();
    let degree = p.family.degrees[i];
    let r = p.takiff_element(cache, i)?;
    let mut st = Straightener::new(&p.lie);
    let commutes = |st: &mut Straightener<'_>, xs: &[Letter]| -> Result<bool, CliError> {
        for &x in xs {
            if !st.commutator(&r, &NCElement::letter(x))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let commutes_with_g = commutes(&mut st, p.lie.basis())?;
    let commutes_with_q = if degree == 2 {
        Some(commutes(&mut st, &takiff_basis(&p.lie))?)
    } else {
        None
    };
    let r_via_t = r_via_script_t(&mut st, &p.family, i)? == r;
    let p1 = p.shifted_image(cache, i)?;
    let cartan_part = takiff_cartan_part(&r)?;
    let matches = cartan_part == cartan_part_from_p1(&p1, n)?;
    let ok = commutes_with_g && commutes_with_q != Some(false) && r_via_t && matches;
    Ok(Row::Takiff(TakiffRow {
        simple_type: p.simple_type.to_string(),
        generator: i + 1,
        degree,
        r_terms: r.len(),
        commutes_with_g,
        commutes_with_q,
        r_via_script_t: r_via_t,
        cartan_part: cartan_part.to_term_list(),
        cartan_part_text: factor_by_u(&cartan_part, n),
        cartan_part_matches: matches,
        ok,
    }))
}

/// Writes `sum_j c_j (h_j u)` as `(c_1)*(h1.u) + ...`.
pub fn factor_by_u(p: &CommPoly, rank: usize) -> String {
    let mut parts = Vec::new();
    let mut rest = p.clone();
    for j in 0..rank {
        let hu = Var::L(Letter::h(j as u16).with_u(true));
        let coefficient = p.partial(&hu);
        if coefficient.is_zero() {
            continue;
        }
        rest = rest - &coefficient * &CommPoly::var(hu);
        parts.push(format!("({coefficient})*({hu})"));
    }
    if !rest.is_zero() {
        parts.push(rest.to_string());
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn root_label(rs: &RootSystem, k: usize) -> String {
    rs.positive_roots[k]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            if c == 1 {
                format!("a{}", i + 1)
            } else {
                format!("{c}a{}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}

/// All monomials up to the sample depth plus seeded random combinations.
pub fn projector_samples(module: &VermaModule, seed: u64) -> Vec<VermaVector> {
    let mut samples = module.monomials_up_to(PROJECTOR_SAMPLE_DEPTH);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = samples.clone();
    for _ in 0..PROJECTOR_RANDOM_SAMPLES {
        let mut v = VermaVector::zero();
        for m in pool.choose_multiple(&mut rng, 3) {
            let c = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
            v = v.add(&m.scale(&RatFunc::constant(q(c))));
        }
        samples.push(v);
    }
    samples
}

pub fn projector(config: &RunConfig) -> Result<Vec<Row>, CliError> {
    let t = type_a(config, PROJECTOR_MAX_RANK)?;
    let lie = LieStructure::for_type(t)?;
    let module = VermaModule::generic(lie.clone())?;
    let rs = module.roots().clone();
    let orders = enumerate_normal_orders(&rs)?;
    let samples = projector_samples(&module, config.seed);
    let mut rows = Vec::new();
    let row = |property: &str, ok: bool, detail: String| {
        Row::Projector(ProjectorRow {
            property: property.to_string(),
            expected_error: false,
            detail,
            ok,
        })
    };

    let order_text: Vec<String> = orders
        .iter()
        .map(|o| {
            o.roots
                .iter()
                .map(|&k| root_label(&rs, k))
                .collect::<Vec<_>>()
                .join(" < ")
        })
        .collect();
    let reduced = rs.reduced_words_of_longest()?;
    rows.push(row(
        "normal_orders",
        orders.len() as u64 == reduced,
        format!("{} ({} reduced words of w0)", order_text.join("; "), reduced),
    ));

    let checks: Vec<Result<ProjectorReport, Error>> = samples
        .par_iter()
        .map(|v| projector_properties_check(&module, std::slice::from_ref(v)))
        .collect();
    let mut reports = Vec::new();
    for (v, res) in samples.iter().zip(checks) {
        match res {
            Ok(r) => reports.push(r),
            Err(e) => rows.push(row("generic_sample", false, format!("{v}: {e}"))),
        }
    }
    let n = samples.len();
    type Flag = (&'static str, fn(&ProjectorReport) -> bool);
    let flags: [Flag; 6] = [
        ("raising_annihilates", |r| r.raising_annihilates),
        ("kills_lowered", |r| r.kills_lowered),
        ("idempotent", |r| r.idempotent),
        ("order_independent", |r| r.order_independent),
        ("weight_preserved", |r| r.weight_preserved),
        ("truncation_bound", |r| r.truncation_ok),
    ];
    for (name, get) in flags {
        let good = reports.iter().filter(|r| get(r)).count();
        rows.push(row(
            name,
            good == n,
            format!("{good}/{n} samples, {} normal orders", orders.len()),
        ));
    }

    let first = &orders[0];
    let v = module.highest();
    let pv = module.apply_projector(first, &v)?;
    let raised_zero = (0..rs.num_positive())
        .map(|a| module.apply(Letter::e(a as u16), &pv).map(|w| w.is_zero()))
        .collect::<Result<Vec<_>, Error>>()?
        .into_iter()
        .all(|z| z);
    rows.push(row(
        "highest_weight_fixed",
        pv == v && raised_zero,
        format!("p v = {pv}"),
    ));
    for i in 0..rs.rank() {
        let a = rs.simple_root_index(i).expect("simple roots are positive roots");
        let lowered = module.apply(Letter::f(a as u16), &v)?;
        let image = module.apply_projector(first, &lowered)?;
        rows.push(row(
            "lowered_vector_killed",
            image.is_zero(),
            format!("p(f{}*v) = {image}", a + 1),
        ));
    }

    for i in 0..rs.rank() {
        rows.push(pole_demo(&lie, &rs, i)?);
    }
    Ok(rows)
}

/// `lambda(h_i) = 0` (other coordinates generic): `p (f_i v)` must hit the
/// denominator `h_a + rho(h_a) + 1` at weight `lambda - a_i`.
fn pole_demo(lie: &LieStructure, rs: &RootSystem, i: usize) -> Result<Row, CliError> {
    let generic = [rational::frac(7, 3), rational::frac(11, 5)];
    let lambda: Vec<_> = (0..rs.rank())
        .map(|j| if j == i { q(0) } else { generic[j % 2].clone() })
        .collect();
    let module = VermaModule::numeric(lie.clone(), &lambda)?;
    let order = &enumerate_normal_orders(rs)?[0];
    let a = rs.simple_root_index(i).expect("simple roots are positive roots");
    let v = module.apply(Letter::f(a as u16), &module.highest())?;
    let lambda_text: Vec<String> = lambda.iter().map(rational::display).collect();
    let (ok, detail) = match module.apply_projector(order, &v) {
        Err(Error::Pole { root, j, weight }) => (
            root == a && j == 1,
            format!(
                "lambda = ({}): pole at root {}, j = {j}, weight {weight}",
                lambda_text.join(", "),
                root_label(rs, root)
            ),
        ),
        Err(e) => (false, format!("unexpected error: {e}")),
        Ok(w) => (false, format!("no pole, p(f{} v) = {w}", a + 1)),
    };
    Ok(Row::Projector(ProjectorRow {
        property: "pole_detected".to_string(),
        expected_error: true,
        detail,
        ok,
    }))
}
