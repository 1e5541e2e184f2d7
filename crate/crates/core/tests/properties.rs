use num_bigint::BigInt;
use proptest::prelude::*;

use torell::fan::is_linear_relation;
use torell::generators::{
    fans_isomorphic, generalized_bott_fan, hirzebruch, product, projective_space,
    weighted_projective, BottStage, BottTowerSpec,
};
use torell::{
    betti_numbers, classify, quotient_presentation, rational_homotopy_degrees, underlying_complex,
    validate, Fan, FanDocument, IntMatrix,
};

fn bott_spec() -> impl Strategy<Value = BottTowerSpec> {
    prop::collection::vec(1usize..=3, 1..=3)
        .prop_filter("total dimension at most 5", |dims| {
            dims.iter().sum::<usize>() <= 5
        })
        .prop_flat_map(|dims| {
            let mut base = 0;
            let stages: Vec<_> = dims
                .iter()
                .map(|&d| {
                    let s = prop::collection::vec(prop::collection::vec(-3i64..=3, base), d);
                    base += d;
                    (Just(d), s)
                })
                .collect();
            stages
        })
        .prop_map(|stages| BottTowerSpec {
            stages: stages
                .into_iter()
                .map(|(fiber_dim, degrees)| BottStage { fiber_dim, degrees })
                .collect(),
        })
}

fn named_fan() -> impl Strategy<Value = Fan> {
    prop_oneof![
        (1usize..=4).prop_map(|n| projective_space(n).unwrap()),
        (-4i64..=4).prop_map(hirzebruch),
        prop::sample::select(vec![
            vec![1i64, 1, 2],
            vec![1, 2, 3],
            vec![1, 1, 1, 3],
            vec![2, 3, 5]
        ])
        .prop_map(|q| weighted_projective(&q).unwrap()),
        bott_spec().prop_map(|s| generalized_bott_fan(&s).unwrap()),
    ]
}

/// A random unimodular matrix as a product of elementary moves.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 0..12).prop_map(move |moves| {
        let mut rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        for (a, b, k, neg) in moves {
            if a != b {
                let src = rows[b].clone();
                for (x, y) in rows[a].iter_mut().zip(src) {
                    *x += k * y;
                }
            } else if neg {
                rows[a].iter_mut().for_each(|x| *x = -*x);
            }
        }
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        IntMatrix::from_i64_rows(&refs).unwrap()
    })
}

fn transform(fan: &Fan, g: &IntMatrix) -> Fan {
    let rays: Vec<Vec<BigInt>> = fan.rays().iter().map(|r| g.mul_vec(r).unwrap()).collect();
    Fan::new(fan.dim(), rays, fan.max_cones().to_vec()).unwrap()
}

fn permute(fan: &Fan, perm: &[usize]) -> Fan {
    // Ray i of the new fan is ray perm[i] of the old one.
    let mut inverse = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inverse[p] = i;
    }
    let rays = perm.iter().map(|&p| fan.ray(p).to_vec()).collect();
    let cones = fan
        .max_cones()
        .iter()
        .map(|c| c.iter().map(|&i| inverse[i]).collect())
        .collect();
    Fan::new(fan.dim(), rays, cones).unwrap()
}

fn sorted_multiplicities(fan: &Fan) -> Vec<BigInt> {
    let vf = validate(fan.clone()).unwrap();
    let mut m: Vec<BigInt> = vf.multiplicities().values().cloned().collect();
    m.sort();
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_fans_are_complete_and_elliptic(fan in named_fan()) {
        let vf = validate(fan).unwrap();
        prop_assert!(vf.is_complete());
        let c = classify(&vf).unwrap();
        prop_assert!(c.elliptic);
        prop_assert_eq!(c.block_dims.iter().sum::<usize>(), vf.dim());
    }

    #[test]
    fn bott_blocks_follow_the_stages(spec in bott_spec()) {
        let vf = validate(generalized_bott_fan(&spec).unwrap()).unwrap();
        prop_assert!(vf.is_smooth());
        let c = classify(&vf).unwrap();
        let mut dims = c.block_dims.clone();
        let mut expect: Vec<usize> = spec.stages.iter().map(|s| s.fiber_dim).collect();
        dims.sort_unstable();
        expect.sort_unstable();
        prop_assert_eq!(dims, expect);
    }

    #[test]
    fn betti_sum_matches_cones_and_blocks(fan in named_fan()) {
        let vf = validate(fan).unwrap();
        let b = betti_numbers(&vf).unwrap();
        let total: u64 = b.iter().sum();
        prop_assert_eq!(total, vf.fan().max_cones().len() as u64);
        let c = classify(&vf).unwrap();
        let expect: u64 = c.block_dims.iter().map(|&n| n as u64 + 1).product();
        prop_assert_eq!(total, expect);
        let b_rev: Vec<u64> = b.iter().rev().cloned().collect();
        prop_assert_eq!(b, b_rev);
    }

    #[test]
    fn free_weights_are_linear_relations(fan in named_fan()) {
        let vf = validate(fan).unwrap();
        let q = quotient_presentation(&vf).unwrap();
        for k in 0..q.group.free_rank {
            let w: Vec<BigInt> = q.group.weights.iter().map(|w| w.free[k].clone()).collect();
            prop_assert!(is_linear_relation(vf.fan(), &w));
        }
    }

    #[test]
    fn homotopy_degrees_have_the_model_dimension(fan in named_fan()) {
        let vf = validate(fan).unwrap();
        let c = classify(&vf).unwrap();
        let d = rational_homotopy_degrees(&c).unwrap();
        prop_assert_eq!(d.even.len(), c.blocks.len());
        prop_assert_eq!(d.odd.len(), c.blocks.len());
        let top: usize = d.odd.iter().sum::<usize>() - d.even.iter().map(|e| e - 1).sum::<usize>();
        prop_assert_eq!(top, 2 * vf.dim());
    }

    #[test]
    fn products_join_the_blocks(a in named_fan(), b in named_fan()) {
        let (va, vb) = (validate(a.clone()).unwrap(), validate(b.clone()).unwrap());
        let vp = validate(product(&a, &b)).unwrap();
        let (ca, cb, cp) = (classify(&va).unwrap(), classify(&vb).unwrap(), classify(&vp).unwrap());
        let mut expect = ca.block_dims.clone();
        expect.extend(cb.block_dims.iter());
        prop_assert_eq!(cp.block_dims, expect);
        let qa = quotient_presentation(&va).unwrap();
        let qb = quotient_presentation(&vb).unwrap();
        let qp = quotient_presentation(&vp).unwrap();
        prop_assert_eq!(qp.group.free_rank, qa.group.free_rank + qb.group.free_rank);
        let mut torsion = qa.group.torsion.clone();
        torsion.extend(qb.group.torsion.iter().cloned());
        let order = |t: &[BigInt]| t.iter().product::<BigInt>();
        prop_assert_eq!(order(&qp.group.torsion), order(&torsion));
    }

    #[test]
    fn multiplicities_survive_unimodular_maps(
        (fan, g) in named_fan().prop_flat_map(|f| { let n = f.dim(); (Just(f), unimodular(n)) })
    ) {
        let moved = transform(&fan, &g);
        prop_assert_eq!(sorted_multiplicities(&fan), sorted_multiplicities(&moved));
        prop_assert!(fans_isomorphic(&fan, &moved));
        let c = classify(&validate(moved).unwrap()).unwrap();
        prop_assert!(c.elliptic);
    }

    #[test]
    fn classification_ignores_ray_order(
        (fan, perm) in named_fan().prop_flat_map(|f| {
            let n = f.n_rays();
            (Just(f), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let moved = permute(&fan, &perm);
        prop_assert_eq!(sorted_multiplicities(&fan), sorted_multiplicities(&moved));
        let c0 = classify(&validate(fan).unwrap()).unwrap();
        let c1 = classify(&validate(moved).unwrap()).unwrap();
        let mut d0 = c0.block_dims.clone();
        let mut d1 = c1.block_dims.clone();
        d0.sort_unstable();
        d1.sort_unstable();
        prop_assert_eq!(d0, d1);
        for block in &c1.blocks {
            let mapped: Vec<usize> = {
                let mut m: Vec<usize> = block.iter().map(|&i| perm[i]).collect();
                m.sort_unstable();
                m
            };
            prop_assert!(c0.blocks.contains(&mapped));
        }
    }

    #[test]
    fn documents_round_trip(fan in named_fan()) {
        let doc = FanDocument::from_fan(&fan, Some("generated".into()));
        let text = doc.to_toml_string();
        let parsed = FanDocument::parse(&text).unwrap();
        prop_assert_eq!(parsed.to_toml_string(), text);
        prop_assert_eq!(parsed.to_fan().unwrap(), fan);
    }

    #[test]
    fn dehn_sommerville(fan in named_fan()) {
        let vf = validate(fan).unwrap();
        let h = underlying_complex(&vf).h_vector();
        let rev: Vec<i64> = h.iter().rev().cloned().collect();
        prop_assert_eq!(h, rev);
    }
}
