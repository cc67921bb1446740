use lie_jacobi_core::projector::{
    denominator_at, enumerate_normal_orders, projector_properties_check, VermaModule,
};
use lie_jacobi_core::rational::q;
use lie_jacobi_core::{Error, LieStructure, Q};
use num_traits::Zero;

fn sl(rank: usize) -> LieStructure {
    LieStructure::build_sl(rank).unwrap()
}

#[test]
fn sl2_generic_properties() {
    let m = VermaModule::generic(sl(1)).unwrap();
    let samples: Vec<_> = (0..=3).map(|k| m.sl2_lowered(k)).collect();
    let rep = projector_properties_check(&m, &samples).unwrap();
    assert!(rep.all_ok(), "{rep:?}");
    let order = &enumerate_normal_orders(m.roots()).unwrap()[0];
    assert_eq!(m.apply_projector(order, &m.highest()).unwrap(), m.highest());
    assert!(m.apply_projector(order, &m.sl2_lowered(1)).unwrap().is_zero());
}

#[test]
fn sl3_generic_properties_up_to_depth_three() {
    let m = VermaModule::generic(sl(2)).unwrap();
    let samples = m.monomials_up_to(3);
    assert_eq!(samples.len(), 20);
    let rep = projector_properties_check(&m, &samples).unwrap();
    assert_eq!(rep.orders, 2);
    assert!(rep.all_ok(), "{rep:?}");
}

#[test]
fn sl3_mixed_weight_vector() {
    let m = VermaModule::generic(sl(2)).unwrap();
    let samples = m.monomials_up_to(2);
    let mixed = samples[1].add(&samples[4]).add(&samples[7]);
    let rep = projector_properties_check(&m, &[mixed]).unwrap();
    assert!(rep.all_ok(), "{rep:?}");
}

/// Largest `k` with `beta - k alpha` in the positive cone.
fn series_bound(beta: &[i64], alpha: &[i64]) -> i64 {
    (0..)
        .take_while(|&k| beta.iter().zip(alpha).all(|(b, a)| b - k * a >= 0))
        .last()
        .unwrap()
}

#[test]
fn sl2_poles_exactly_where_a_denominator_vanishes() {
    for depth in 1..=4u32 {
        for lambda in -4i64..=10 {
            let m = VermaModule::numeric(sl(1), &[q(lambda)]).unwrap();
            let order = &enumerate_normal_orders(m.roots()).unwrap()[0];
            let res = m.apply_projector(order, &m.sl2_lowered(depth));
            let d = i64::from(depth);
            let expect_pole = (d - 1..=2 * d - 2).contains(&lambda);
            match res {
                Err(Error::Pole { root, j, .. }) => {
                    assert!(expect_pole, "unexpected pole at lambda={lambda}, depth={depth}");
                    assert_eq!(root, 0);
                    assert_eq!(lambda - 2 * d + 1 + j as i64, 0);
                }
                Ok(_) => assert!(!expect_pole, "missed pole at lambda={lambda}, depth={depth}"),
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn sl3_poles_match_denominator_oracle() {
    let lie = sl(2);
    let rs = lie.root_system().clone();
    for l1 in -2i64..=3 {
        for l2 in -2i64..=3 {
            let m = VermaModule::numeric(lie.clone(), &[q(l1), q(l2)]).unwrap();
            let order = &enumerate_normal_orders(&rs).unwrap()[0];
            for v in m.monomials_up_to(2) {
                let (k, _) = v.terms().next().unwrap();
                let beta = m.depth(k);
                let gamma: Vec<Q> = (0..2)
                    .map(|j| q([l1, l2][j] - rs.pairing_with_simple_coroot(&beta, j)))
                    .collect();
                let expect_pole = (0..rs.num_positive()).any(|a| {
                    (1..=series_bound(&beta, &rs.positive_roots[a]))
                        .any(|j| denominator_at(&rs, a, &gamma, j).is_zero())
                });
                let got = m.apply_projector(order, &v);
                assert_eq!(
                    matches!(got, Err(Error::Pole { .. })),
                    expect_pole,
                    "lambda=({l1},{l2}) v={v}"
                );
                if let Err(e) = &got {
                    assert!(matches!(e, Error::Pole { .. }), "{e}");
                }
            }
        }
    }
}

#[test]
fn normal_order_counts_match_reduced_words() {
    for rank in 1..=2 {
        let rs = sl(rank).root_system().clone();
        let orders = enumerate_normal_orders(&rs).unwrap();
        assert_eq!(orders.len() as u64, rs.reduced_words_of_longest().unwrap());
    }
}

#[test]
fn rank_three_is_refused() {
    assert!(matches!(
        VermaModule::generic(sl(3)),
        Err(Error::RankGuard { rank: 3, bound: 2 })
    ));
}
