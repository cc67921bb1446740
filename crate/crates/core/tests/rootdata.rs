use lie_jacobi_core::rational::q;
use lie_jacobi_core::rootdata::{Family, RootSystem, SimpleType};
use lie_jacobi_core::Error;

fn all_types(max_rank: usize) -> Vec<SimpleType> {
    let mut out = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D] {
        for rank in family.min_rank()..=max_rank {
            out.push(SimpleType::new(family, rank).unwrap());
        }
    }
    out.push(SimpleType::new(Family::G2, 2).unwrap());
    out
}

#[test]
fn kostant_formula_up_to_rank_six() {
    for t in all_types(6) {
        let rs = RootSystem::build(t).unwrap();
        let k = rs.kostant_check();
        assert!(k.equal, "{t}: {} vs {}", k.lhs, k.rhs);
        assert_eq!(k.lhs, q(t.weyl_order() as i64));
    }
}

#[test]
fn poincare_identity_up_to_rank_four() {
    for t in all_types(4) {
        let rs = RootSystem::build(t).unwrap();
        let p = rs.poincare_check().unwrap();
        assert!(p.equal, "{t}");
        assert_eq!(p.value_at_one(), i128::from(rs.weyl_order as u32));
    }
}

#[test]
fn structural_counts() {
    for t in all_types(6) {
        let rs = RootSystem::build(t).unwrap();
        let n = rs.rank();
        assert_eq!(n + 2 * rs.num_positive(), t.dimension(), "{t}");
        let prod: u64 = rs.exponents_plus_one.iter().map(|&d| u64::from(d)).product();
        assert_eq!(prod, rs.weyl_order, "{t}");
        let highest = rs.num_positive() - 1;
        let sum_exponents: u64 = rs.exponents_plus_one.iter().map(|&d| u64::from(d) - 1).sum();
        assert_eq!(sum_exponents, rs.num_positive() as u64, "{t}");
        assert!(rs.height(highest) >= rs.height(0));
    }
}

#[test]
fn reflections_permute_coroot_forms() {
    for t in all_types(4) {
        let rs = RootSystem::build(t).unwrap();
        for i in 0..rs.rank() {
            for k in 0..rs.num_positive() {
                let h = rs.coroot_poly(k);
                let image = rs.simple_reflection_action(i, &h).unwrap();
                let back = rs.simple_reflection_action(i, &image).unwrap();
                assert_eq!(back, h, "{t}: s{} is not an involution", i + 1);
                let hits = (0..rs.num_positive())
                    .filter(|&m| {
                        let c = rs.coroot_poly(m);
                        image == c || image == -c
                    })
                    .count();
                assert_eq!(hits, 1, "{t}: s{} h_{k}", i + 1);
            }
        }
    }
}

#[test]
fn reduced_words_of_the_longest_element() {
    let a2 = RootSystem::build(SimpleType::a(2).unwrap()).unwrap();
    assert_eq!(a2.reduced_words_of_longest().unwrap(), 2);
    let b2 = RootSystem::build(SimpleType::new(Family::B, 2).unwrap()).unwrap();
    assert_eq!(b2.reduced_words_of_longest().unwrap(), 2);
    let g2 = RootSystem::build(SimpleType::new(Family::G2, 2).unwrap()).unwrap();
    assert_eq!(g2.reduced_words_of_longest().unwrap(), 2);
}

#[test]
fn invalid_selections() {
    assert!(matches!(SimpleType::new(Family::D, 2), Err(Error::InvalidRank { .. })));
    assert!(matches!(SimpleType::new(Family::G2, 3), Err(Error::InvalidRank { .. })));
    assert!(matches!(SimpleType::a(0), Err(Error::InvalidRank { .. })));
    assert!(Family::parse("E").is_none());
}
