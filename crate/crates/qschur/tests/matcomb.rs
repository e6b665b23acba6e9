use std::collections::BTreeSet;

use proptest::prelude::*;
use qschur::weylgroups::stabilizes_blocks;
use qschur::{
    classify, coset_to_matrix, enumerate_xi_b, enumerate_xi_d, matrix_to_da, Composition, CoxeterType, Error,
    EtaContext, Gen, Mark, MatB, MatClass, MatD, ParabolicSpec, Sign, SignedComposition, SignedPerm, Tag, WeylGroup,
};

fn mat(rows: &[&[u32]]) -> MatB {
    MatB::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn comp(parts: &[usize]) -> Composition {
    Composition::new(parts.to_vec()).unwrap()
}

#[test]
fn index_set_sizes() {
    assert_eq!(enumerate_xi_b(1, 1, 100).unwrap().len(), 5);
    assert_eq!(enumerate_xi_d(1, 1, 100).unwrap().len(), 9);
    assert_eq!(enumerate_xi_b(1, 2, 100).unwrap().len(), 15);
    assert_eq!(enumerate_xi_d(1, 2, 100).unwrap().len(), 25);
    assert_eq!(enumerate_xi_b(2, 2, 1000).unwrap().len(), 91);
    assert_eq!(enumerate_xi_d(2, 2, 1000).unwrap().len(), 169);
    assert!(matches!(enumerate_xi_b(2, 4, 10), Err(Error::TooLarge { .. })));
}

#[test]
fn signed_count_adds_the_zero_centre_matrices() {
    for (n, r) in [(1, 3), (2, 2), (2, 3)] {
        let xb = enumerate_xi_b(n, r, usize::MAX).unwrap();
        let zero_centre = xb.iter().filter(|a| a.center() == 0).count();
        assert_eq!(enumerate_xi_d(n, r, usize::MAX).unwrap().len(), xb.len() + zero_centre);
    }
}

#[test]
fn enumeration_is_exhaustive_by_brute_force() {
    // Every centro-symmetric 3x3 matrix with entry sum 4 and even centre.
    let mut brute = BTreeSet::new();
    for a in 0..=4u32 {
        for b in 0..=4u32 {
            for c in 0..=4u32 {
                for d in 0..=4u32 {
                    for e in (0..=4u32).step_by(2) {
                        if 2 * (a + b + c + d) + e == 4 {
                            brute.insert(mat(&[&[a, b, c], &[d, e, d], &[c, b, a]]));
                        }
                    }
                }
            }
        }
    }
    let got: BTreeSet<MatB> = enumerate_xi_b(1, 2, 100).unwrap().into_iter().collect();
    assert_eq!(got, brute);
}

#[test]
fn matrices_reject_bad_shapes() {
    assert!(MatB::new(vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 2]]).is_err());
    assert!(MatB::new(vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]).is_err());
    assert!(MatB::new(vec![vec![1, 1], vec![1, 1]]).is_err());
}

#[test]
fn classes() {
    assert_eq!(classify(&mat(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]])), MatClass::Dotted);
    assert_eq!(classify(&mat(&[&[1, 2, 3], &[3, 0, 3], &[3, 2, 1]])), MatClass::Dod);
    assert_eq!(classify(&mat(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, 2]])), MatClass::Ooo);
    assert_eq!(MatClass::Dod.label(), "•∘•Ξ");
}

#[test]
fn rank_nine_example_weights_and_da() {
    let a = mat(&[&[1, 2, 3], &[3, 0, 3], &[3, 2, 1]]);
    assert_eq!(a.ro(), vec![6, 6, 6]);
    assert_eq!(a.co(), vec![7, 4, 7]);
    let d = matrix_to_da(&a);
    let head: Vec<usize> = (1..=9).map(|j| d.apply(j)).collect();
    assert_eq!(head, vec![1, 7, 8, 9, 13, 14, 15, 2, 3]);
    assert_eq!(coset_to_matrix(&a.row_composition(), &d, &a.col_composition()).unwrap(), a);
}

#[test]
fn identity_maps_to_the_diagonal() {
    let lambda = comp(&[1, 2, 1]);
    let d = SignedPerm::identity(4);
    assert_eq!(coset_to_matrix(&lambda, &d, &lambda).unwrap(), MatB::diagonal(&lambda));
    assert!(matrix_to_da(&MatB::diagonal(&lambda)).is_identity());
}

#[test]
fn non_distinguished_permutations_are_rejected() {
    let lambda = comp(&[2, 0]);
    let s1 = SignedPerm::generator(2, Gen::S(1)).unwrap();
    assert_eq!(coset_to_matrix(&lambda, &s1, &lambda), Err(Error::NotDistinguished));
}

#[test]
fn da_is_minimal_and_round_trips() {
    for (n, r) in [(1, 2), (1, 3), (2, 2)] {
        let g = WeylGroup::new(CoxeterType::B, r, 1000).unwrap();
        for a in enumerate_xi_b(n, r, usize::MAX).unwrap() {
            let (lambda, mu) = (a.row_composition(), a.col_composition());
            let d = matrix_to_da(&a);
            assert_eq!(coset_to_matrix(&lambda, &d, &mu).unwrap(), a);
            let (l, m) = (ParabolicSpec::type_b(&lambda), ParabolicSpec::type_b(&mu));
            let i = g.index_of(&d).unwrap();
            assert_eq!(g.min_in_double_coset(&l.generators, i, &m.generators).unwrap(), i);
            // The corner sum counts the points of [1, r] sent past r.
            assert_eq!(d.n_r(), a.corner_sum());
            assert_eq!(d.in_type_d(), a.sign() == Sign::Plus);
        }
    }
}

#[test]
fn shift_examples() {
    let a = mat(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
    assert_eq!(a.shift_up(1, 1).unwrap(), mat(&[&[1, 1, 0], &[0, 0, 0], &[0, 1, 1]]));
    assert!(matches!(a.shift_up(1, 2), Err(Error::Invalid(_))));
    for a in enumerate_xi_b(1, 3, usize::MAX).unwrap() {
        if let Ok(b) = a.shift_up(1, 3) {
            if b.center() == 0 && a.center() == 0 {
                assert_eq!(b.sign(), -a.sign(), "{a:?}");
            }
        }
    }
}

#[test]
fn middle_reflection_in_both_parabolics_iff_centre_at_least_two() {
    let r = 2;
    let sr = SignedPerm::generator(r, Gen::S(r)).unwrap();
    for a in enumerate_xi_b(1, r, usize::MAX).unwrap() {
        let (l, m) = (ParabolicSpec::type_b(&a.row_composition()), ParabolicSpec::type_b(&a.col_composition()));
        let d = matrix_to_da(&a);
        let conj = d.inverse().compose(&sr).compose(&d);
        let both = stabilizes_blocks(&l, &sr) && stabilizes_blocks(&m, &conj);
        assert_eq!(both, a.center() >= 2, "{a:?}");
    }
}

#[test]
fn tags_follow_the_corner_sign() {
    let even = mat(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, 2]]);
    assert_eq!(
        MatD::tags_for(&even),
        vec![Tag::Signs(Sign::Plus, Sign::Plus), Tag::Signs(Sign::Minus, Sign::Minus)]
    );
    assert!(MatD::new(even.clone(), Tag::Signs(Sign::Plus, Sign::Minus)).is_err());
    assert!(MatD::new(even, Tag::Dot).is_err());
    let dotted = mat(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]);
    assert_eq!(MatD::tags_for(&dotted), vec![Tag::Dot]);
    for s in ["dot", "++", "--", "+-", "-+"] {
        assert_eq!(Tag::parse(s).unwrap().as_str(), s);
    }
    assert!(Tag::parse("+").is_err());
}

#[test]
fn json_shapes() {
    let a = mat(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
    let j = serde_json::to_value(&a).unwrap();
    assert_eq!(j, serde_json::json!({"n": 1, "r": 2, "entries": [[0, 1, 0], [1, 0, 1], [0, 1, 0]]}));
    let odd = mat(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]);
    let ad = MatD::new(odd, Tag::Signs(Sign::Plus, Sign::Minus)).unwrap();
    let j = serde_json::to_value(&ad).unwrap();
    assert_eq!(j["tag"], "+-");
    assert_eq!(serde_json::from_value::<MatD>(j).unwrap(), ad);
    let bad = serde_json::json!({"n": 1, "r": 1, "entries": [[0, 0, 1], [0, 0, 0], [1, 0, 0]], "tag": "++"});
    assert!(serde_json::from_value::<MatD>(bad).is_err());
}

#[test]
fn eta_on_diagonal_indices() {
    let ctx = EtaContext::new(4, 400).unwrap();
    let lambda = comp(&[1, 2, 1]);
    let t = ctx.eta(&MatD::dot(MatB::diagonal(&lambda)).unwrap()).unwrap();
    assert_eq!(t.row, SignedComposition::new(lambda.clone(), Mark::Dot).unwrap());
    assert_eq!(t.col, t.row);
    assert!(t.rep.is_identity());

    let mu = comp(&[3, 1, 0]);
    let d = MatD::new(MatB::diagonal(&mu), Tag::Signs(Sign::Plus, Sign::Plus)).unwrap();
    let t = ctx.eta(&d).unwrap();
    assert_eq!(t.row, SignedComposition::new(mu, Mark::Plus).unwrap());
    assert_eq!(t.col, t.row);
    assert!(t.rep.is_identity());
}

#[test]
fn eta_is_a_bijection_at_rank_four() {
    let ctx = EtaContext::new(4, 400).unwrap();
    let all = enumerate_xi_d(1, 4, usize::MAX).unwrap();
    let mut images = BTreeSet::new();
    for a in &all {
        let t = ctx.eta(a).unwrap();
        assert_eq!(t.row, a.row_weight(), "{a:?}");
        assert_eq!(t.col, a.col_weight(), "{a:?}");
        assert_eq!(&ctx.eta_inv(&t).unwrap(), a);
        images.insert(t);
    }
    assert_eq!(images.len(), all.len());
    // The images exhaust the type-D double cosets of all weight pairs.
    let weights = SignedComposition::all(1, 4);
    let mut cosets = 0;
    for alpha in &weights {
        for beta in &weights {
            let (l, m) = (ParabolicSpec::type_d(alpha), ParabolicSpec::type_d(beta));
            cosets += ctx.wd.double_coset_reps(&l.generators, &m.generators).unwrap().len();
        }
    }
    assert_eq!(cosets, all.len());
}

#[test]
fn eta_at_rank_two_is_injective() {
    let ctx = EtaContext::new(2, 400).unwrap();
    let all = enumerate_xi_d(1, 2, usize::MAX).unwrap();
    let images: BTreeSet<_> = all.iter().map(|a| ctx.eta(a).unwrap()).collect();
    assert_eq!(images.len(), 25);
}

#[test]
fn weight_marks_follow_the_class() {
    for a in enumerate_xi_d(2, 3, usize::MAX).unwrap() {
        let (rw, cw) = (a.row_weight(), a.col_weight());
        assert_eq!(rw.mark == Mark::Dot, a.base.row_composition().last() != 0);
        assert_eq!(cw.mark == Mark::Dot, a.base.col_composition().last() != 0);
        if let Tag::Signs(e1, e2) = a.tag {
            if rw.mark != Mark::Dot {
                assert_eq!(rw.mark, Mark::from(e1));
            }
            if cw.mark != Mark::Dot {
                assert_eq!(cw.mark, Mark::from(e2));
            }
        }
    }
}

fn xi_b_1_3() -> impl Strategy<Value = MatB> {
    let all = enumerate_xi_b(1, 3, usize::MAX).unwrap();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #[test]
    fn shifts_move_one_unit_of_row_weight(a in xi_b_1_3(), p in 1usize..=3) {
        let ro = a.ro();
        if let Ok(b) = a.shift_up(1, p) {
            prop_assert_eq!(b.co(), a.co());
            let mut want = ro.clone();
            want[0] += 1;
            want[2] += 1;
            want[1] -= 2;
            prop_assert_eq!(b.ro(), want);
            prop_assert_eq!(b.shift_down(1, p).unwrap(), a.clone());
        }
        if let Ok(b) = a.shift_down(1, p) {
            prop_assert_eq!(b.co(), a.co());
            prop_assert_eq!(b.shift_up(1, p).unwrap(), a.clone());
        }
    }

    #[test]
    fn json_round_trip(a in xi_b_1_3()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<MatB>(&s).unwrap(), a);
    }
}
