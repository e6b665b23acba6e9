use proptest::prelude::*;
use qschur::weylgroups::{coxeter_generators, group_order};
use qschur::{
    distinguished_reps, enumerate_parabolic, Composition, CoxeterType, Error, Gen, Mark, ParabolicSpec, SignedComposition,
    SignedPerm, WeylGroup,
};

const BUDGET: usize = 4000;

fn perm(cycles: &[&[usize]], r: usize) -> SignedPerm {
    SignedPerm::from_cycles(r, cycles).unwrap()
}

#[test]
fn generators_as_permutations() {
    assert_eq!(SignedPerm::generator(4, Gen::S(1)).unwrap(), perm(&[&[1, 2], &[7, 8]], 4));
    assert_eq!(SignedPerm::generator(4, Gen::S(4)).unwrap(), perm(&[&[4, 5]], 4));
    assert_eq!(SignedPerm::generator(4, Gen::Varsigma).unwrap(), perm(&[&[3, 5], &[4, 6]], 4));
    assert!(matches!(SignedPerm::generator(4, Gen::S(5)), Err(Error::BadLabel { .. })));
    assert!(matches!(SignedPerm::generator(4, Gen::S(0)), Err(Error::BadLabel { .. })));
}

#[test]
fn lengths_and_sign_counts() {
    let id = SignedPerm::identity(3);
    assert_eq!((id.length(CoxeterType::B), id.n_r()), (0, 0));
    let sr = SignedPerm::generator(3, Gen::S(3)).unwrap();
    assert_eq!((sr.length(CoxeterType::B), sr.n_r()), (1, 1));
    let vs = SignedPerm::generator(3, Gen::Varsigma).unwrap();
    assert_eq!(vs.length(CoxeterType::B), 3);
    assert_eq!(vs.n_r(), 2);
    assert!(vs.in_type_d());
    assert_eq!(vs.length(CoxeterType::D), 1);
    let s2 = SignedPerm::generator(3, Gen::S(2)).unwrap();
    assert_eq!(sr.compose(&s2).compose(&sr), vs);
}

#[test]
fn group_orders() {
    for r in 1..=4 {
        let b = WeylGroup::new(CoxeterType::B, r, BUDGET).unwrap();
        assert_eq!(b.size(), group_order(CoxeterType::B, r));
        assert_eq!(b.size(), (1..=r).product::<usize>() << r);
    }
    for r in 2..=4 {
        let d = WeylGroup::new(CoxeterType::D, r, BUDGET).unwrap();
        assert_eq!(d.size(), (1..=r).product::<usize>() << (r - 1));
        assert!(d.elements().iter().all(|w| w.n_r() % 2 == 0));
    }
    assert!(matches!(WeylGroup::new(CoxeterType::B, 5, 384), Err(Error::TooLarge { .. })));
}

#[test]
fn type_d_is_the_even_sign_subgroup() {
    let b = WeylGroup::new(CoxeterType::B, 4, BUDGET).unwrap();
    let d = WeylGroup::new(CoxeterType::D, 4, BUDGET).unwrap();
    let even = b.elements().iter().filter(|w| w.in_type_d()).count();
    assert_eq!(even, d.size());
    assert!(d.elements().iter().all(|w| b.index_of(w).is_some()));
}

#[test]
fn generator_relations_as_permutations() {
    for ty in [CoxeterType::B, CoxeterType::D] {
        let r = 4;
        let g = WeylGroup::new(ty, r, BUDGET).unwrap();
        for s in coxeter_generators(ty, r) {
            let p = SignedPerm::generator(r, s).unwrap();
            assert!(p.compose(&p).is_identity());
            assert_eq!(g.length(g.index_of(&p).unwrap()), 1);
        }
    }
    // (s_{r-1} s_r)^4 = 1 in type B.
    let a = SignedPerm::generator(3, Gen::S(2)).unwrap();
    let b = SignedPerm::generator(3, Gen::S(3)).unwrap();
    let ab = a.compose(&b);
    let ab2 = ab.compose(&ab);
    assert!(!ab2.is_identity());
    assert!(ab2.compose(&ab2).is_identity());
}

#[test]
fn parabolic_subgroups() {
    let lambda = Composition::new(vec![3, 0]).unwrap();
    let b = enumerate_parabolic(&ParabolicSpec::type_b(&lambda), BUDGET).unwrap();
    assert_eq!(b.len(), 6);
    let mu = Composition::new(vec![2, 0]).unwrap();
    let plus = SignedComposition::new(mu.clone(), Mark::Plus).unwrap();
    let minus = SignedComposition::new(mu.clone(), Mark::Minus).unwrap();
    let mut wb = enumerate_parabolic(&ParabolicSpec::type_b(&mu), BUDGET).unwrap();
    let mut wp = enumerate_parabolic(&ParabolicSpec::type_d(&plus), BUDGET).unwrap();
    wb.sort();
    wp.sort();
    assert_eq!(wb, wp);
    let sr = SignedPerm::generator(2, Gen::S(2)).unwrap();
    let mut conj: Vec<SignedPerm> = wp.iter().map(|w| sr.compose(w).compose(&sr)).collect();
    let mut wm = enumerate_parabolic(&ParabolicSpec::type_d(&minus), BUDGET).unwrap();
    conj.sort();
    wm.sort();
    assert_eq!(conj, wm);
}

#[test]
fn distinguished_reps_in_rank_two() {
    let lambda = Composition::new(vec![2, 0]).unwrap();
    let spec = ParabolicSpec::type_b(&lambda);
    let reps = distinguished_reps(&spec, &spec, CoxeterType::B, BUDGET).unwrap();
    let mut lens: Vec<usize> = reps.iter().map(|w| w.length(CoxeterType::B)).collect();
    lens.sort();
    // Cosets {e, s1}, {s2, s1 s2, s2 s1, s1 s2 s1} and {s2 s1 s2, w0}: the
    // longest element is not minimal in its coset.
    assert_eq!(lens, vec![0, 1, 3]);

    let full = ParabolicSpec::generated(CoxeterType::B, 2, coxeter_generators(CoxeterType::B, 2)).unwrap();
    let reps = distinguished_reps(&full, &full, CoxeterType::B, BUDGET).unwrap();
    assert_eq!(reps, vec![SignedPerm::identity(2)]);
    let trivial = ParabolicSpec::generated(CoxeterType::D, 3, vec![]).unwrap();
    assert_eq!(distinguished_reps(&trivial, &trivial, CoxeterType::D, BUDGET).unwrap().len(), 24);
}

#[test]
fn double_cosets_have_a_unique_minimum_and_tile() {
    for r in 1..=3 {
        let g = WeylGroup::new(CoxeterType::B, r, BUDGET).unwrap();
        for lambda in Composition::all(1, r) {
            for mu in Composition::all(1, r) {
                let (l, m) = (ParabolicSpec::type_b(&lambda), ParabolicSpec::type_b(&mu));
                let reps = g.double_coset_reps(&l.generators, &m.generators).unwrap();
                let mut total = 0;
                for d in reps {
                    let coset = g.double_coset(&l.generators, d, &m.generators).unwrap();
                    assert!(coset.iter().all(|&w| w == d || g.length(w) > g.length(d)));
                    total += coset.len();
                }
                assert_eq!(total, g.size());
            }
        }
    }
}

#[test]
fn flip_examples() {
    let r = 4;
    let s1 = SignedPerm::generator(r, Gen::S(1)).unwrap();
    assert_eq!(s1.flip(), s1);
    let s3 = SignedPerm::generator(r, Gen::S(3)).unwrap();
    assert_eq!(s3.flip(), SignedPerm::generator(r, Gen::Varsigma).unwrap());
    assert!(SignedPerm::identity(r).flip().is_identity());
}

#[test]
fn labels_round_trip() {
    for g in coxeter_generators(CoxeterType::D, 4) {
        assert_eq!(Gen::parse(&g.label()).unwrap(), g);
    }
}

#[test]
fn json_is_the_one_line_form() {
    let w = SignedPerm::generator(2, Gen::S(2)).unwrap();
    assert_eq!(serde_json::to_string(&w).unwrap(), "[1,3,2,4]");
    assert!(serde_json::from_str::<SignedPerm>("[1,2,4,3]").is_err());
}

fn b4_element() -> impl Strategy<Value = SignedPerm> {
    prop::collection::vec(0usize..4, 0..20).prop_map(|word| {
        let gens = coxeter_generators(CoxeterType::B, 4);
        word.into_iter().fold(SignedPerm::identity(4), |w, k| w.mul_gen(gens[k]))
    })
}

proptest! {
    #[test]
    fn flip_is_an_involutive_automorphism(u in b4_element(), v in b4_element()) {
        prop_assert_eq!(u.flip().flip(), u.clone());
        prop_assert_eq!(u.compose(&v).flip(), u.flip().compose(&v.flip()));
    }

    #[test]
    fn reduced_words_multiply_back(u in b4_element()) {
        let word = u.reduced_word(CoxeterType::B);
        prop_assert_eq!(word.len(), u.length(CoxeterType::B));
        let back = word.iter().fold(SignedPerm::identity(4), |w, &g| w.mul_gen(g));
        prop_assert_eq!(back, u.clone());
    }

    #[test]
    fn length_of_inverse(u in b4_element()) {
        prop_assert_eq!(u.inverse().length(CoxeterType::B), u.length(CoxeterType::B));
        prop_assert!(u.compose(&u.inverse()).is_identity());
    }

    #[test]
    fn type_d_words_stay_in_type_d(u in b4_element()) {
        if u.in_type_d() {
            let word = u.reduced_word(CoxeterType::D);
            let back = word.iter().fold(SignedPerm::identity(4), |w, &g| w.mul_gen(g));
            prop_assert_eq!(back, u.clone());
        }
    }
}
