use qschur::schurd::{idempotent, SchurB};
use qschur::{
    double_coset_sum, enumerate_xi_b, matrix_to_da, x_parabolic, Composition, CoxeterType, Error, Fundamental,
    HeckeAmbient, HeckeElt, MatB, OracleB, OracleD, ParabolicSpec, PolyQ, SignedComposition, SignedPerm, WeylGroup,
};

fn mat(rows: &[&[u32]]) -> MatB {
    MatB::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

#[test]
fn double_coset_sums() {
    let lambda = Composition::new(vec![1, 1]).unwrap();
    let spec = ParabolicSpec::type_b(&lambda);
    let id = SignedPerm::identity(2);
    assert_eq!(double_coset_sum(&spec, &id, &spec, 100).unwrap(), x_parabolic(&spec, 100).unwrap());
    let trivial = ParabolicSpec::generated(CoxeterType::B, 2, vec![]).unwrap();
    let g = WeylGroup::new(CoxeterType::B, 2, 100).unwrap();
    for w in g.elements() {
        let want = HeckeElt::basis(HeckeAmbient::new(CoxeterType::B, 2), w.clone()).unwrap();
        assert_eq!(double_coset_sum(&trivial, w, &trivial, 100).unwrap(), want);
    }
}

#[test]
fn double_cosets_partition_the_group() {
    for r in 1..=3 {
        let size = WeylGroup::new(CoxeterType::B, r, 100).unwrap().size();
        for lambda in Composition::all(1, r) {
            for mu in Composition::all(1, r) {
                let (l, m) = (ParabolicSpec::type_b(&lambda), ParabolicSpec::type_b(&mu));
                let total: usize = enumerate_xi_b(1, r, usize::MAX)
                    .unwrap()
                    .iter()
                    .filter(|a| a.row_composition() == lambda && a.col_composition() == mu)
                    .map(|a| double_coset_sum(&l, &matrix_to_da(a), &m, 100).unwrap().len())
                    .sum();
                assert_eq!(total, size);
            }
        }
    }
}

#[test]
fn raise_example() {
    let oracle = OracleB::new(1, 2).unwrap();
    let b = mat(&[&[1, 1, 0], &[0, 0, 0], &[0, 1, 1]]);
    let a = mat(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
    let p = oracle.product(&b, &a).unwrap();
    assert_eq!(p.terms().len(), 2);
    assert_eq!(p.coeff(&a.shift_up(1, 1).unwrap()), PolyQ::q());
    assert_eq!(p.coeff(&a.shift_up(1, 3).unwrap()), PolyQ::one());
}

#[test]
fn diagonal_left_factor_is_an_idempotent() {
    let oracle = OracleB::new(1, 3).unwrap();
    for a in oracle.indices() {
        let d = MatB::diagonal(&a.row_composition());
        let p = oracle.product(&d, &a).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.coeff(&a), PolyQ::one());
        let other = oracle.indices().into_iter().find(|x| x.is_diagonal() && x.co() != a.ro()).unwrap();
        assert!(oracle.product(&other, &a).unwrap().is_zero());
    }
}

#[test]
fn type_d_idempotents_square_to_themselves() {
    let oracle = OracleD::new(1, 4).unwrap();
    for alpha in SignedComposition::all(1, 4) {
        let e = idempotent(&alpha);
        let p = oracle.product(&e, &e).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.coeff(&e), PolyQ::one());
    }
}

#[test]
fn oracle_rejects_large_ranks() {
    assert!(matches!(OracleB::new(1, 5), Err(Error::TooLarge { .. })));
}

fn product_elt(oracle: &OracleB, x: &SchurB, z: &MatB) -> SchurB {
    let mut out = SchurB::zero(CoxeterType::B, x.n(), x.r());
    for (i, c) in x.terms() {
        for (j, d) in oracle.product(i, z).unwrap().terms() {
            out.add_term(j.clone(), &(c * d));
        }
    }
    out
}

fn product_left(oracle: &OracleB, x: &MatB, z: &SchurB) -> SchurB {
    let mut out = SchurB::zero(CoxeterType::B, z.n(), z.r());
    for (i, c) in z.terms() {
        for (j, d) in oracle.product(x, i).unwrap().terms() {
            out.add_term(j.clone(), &(c * d));
        }
    }
    out
}

#[test]
fn associative_on_fundamental_triples() {
    let oracle = OracleB::new(1, 2).unwrap();
    let all = oracle.indices();
    let mut left: Vec<MatB> = Fundamental::all(1, 2).into_iter().map(|f| f.matrix).collect();
    left.extend(all.iter().filter(|a| a.is_diagonal()).cloned());
    for x in &left {
        for y in &left {
            for z in &all {
                let xy = oracle.product(x, y).unwrap();
                let yz = oracle.product(y, z).unwrap();
                assert_eq!(product_elt(&oracle, &xy, z), product_left(&oracle, x, &yz), "{x:?} {y:?} {z:?}");
            }
        }
    }
}

#[test]
fn fundamental_products_have_nonnegative_coefficients() {
    let oracle = OracleB::new(1, 3).unwrap();
    let all = oracle.indices();
    for f in Fundamental::all(1, 3) {
        for p in oracle.products(&f.matrix, &all).unwrap() {
            assert!(p.terms().values().all(PolyQ::is_nonnegative));
        }
    }
}
