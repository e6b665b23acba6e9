use num_bigint::BigInt;
use qschur::schurd::{embed_elt, idempotent, identity_d, mult_fund_d_elt, SchurB};
use qschur::{
    coef_lower, coef_raise, dim_b, dim_d, embed_b_in_d, enumerate_xi_b, enumerate_xi_d, mult_fund_b, mult_fund_d,
    Composition, CoxeterType, Direction, Error, FormulaCase, Fundamental, Mark, MatB, MatD, OracleD, PolyQ, Sign,
    SignedComposition, Tag,
};

fn mat(rows: &[&[u32]]) -> MatB {
    MatB::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn comp(parts: &[usize]) -> Composition {
    Composition::new(parts.to_vec()).unwrap()
}

#[test]
fn dimensions() {
    let cases = [(1, 1, 5, 9), (1, 2, 15, 25), (2, 2, 91, 169)];
    for (n, r, b, d) in cases {
        assert_eq!(dim_b(n, r), BigInt::from(b));
        assert_eq!(dim_d(n, r), BigInt::from(d));
    }
    for (n, r) in [(1, 3), (1, 4), (2, 3)] {
        assert_eq!(dim_b(n, r), BigInt::from(enumerate_xi_b(n, r, usize::MAX).unwrap().len()));
        assert_eq!(dim_d(n, r), BigInt::from(enumerate_xi_d(n, r, usize::MAX).unwrap().len()));
    }
}

#[test]
fn raise_coefficients() {
    let d = MatB::diagonal(&comp(&[1, 1]));
    for p in 1..=3 {
        let want = if p == 2 { PolyQ::one() } else { PolyQ::zero() };
        assert_eq!(coef_raise(&d, 1, p), want);
    }
    let a = mat(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
    assert_eq!(coef_raise(&a, 1, 1), PolyQ::q());
    assert_eq!(coef_raise(&a, 1, 3), PolyQ::one());
    assert!(coef_raise(&a, 1, 2).is_zero());
}

#[test]
fn lower_coefficients() {
    // Central branch with a zero centre and one entry to its left: 2q.
    let a = mat(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
    assert_eq!(coef_lower(&a, 1, 2), PolyQ::monomial(2, 1));
    assert!(coef_lower(&a, 1, 1).is_zero());
    // h < n, nothing to the left and a single entry below: q + 1.
    let b = mat(&[&[1, 0, 0, 0, 0], &[1, 0, 0, 0, 0], &[0, 0, 0, 0, 0], &[0, 0, 0, 0, 1], &[0, 0, 0, 0, 1]]);
    assert_eq!(coef_lower(&b, 1, 1), PolyQ::from_coeffs(&[1, 1]));
}

#[test]
fn type_b_fundamental_products() {
    let b = mat(&[&[1, 1, 0], &[0, 0, 0], &[0, 1, 1]]);
    let f = Fundamental::from_matrix(&b).unwrap();
    assert_eq!((f.direction, f.h), (Direction::Raise, 1));
    let p = mult_fund_b(&f, &MatB::diagonal(&comp(&[1, 1]))).unwrap();
    assert_eq!(p.terms().len(), 1);
    assert_eq!(p.coeff(&b), PolyQ::one());

    let a = mat(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
    let p = mult_fund_b(&f, &a).unwrap();
    assert_eq!(p.terms().len(), 2);
    assert_eq!(p.coeff(&mat(&[&[1, 1, 0], &[0, 0, 0], &[0, 1, 1]])), PolyQ::q());
    assert_eq!(p.coeff(&mat(&[&[0, 1, 1], &[0, 0, 0], &[1, 1, 0]])), PolyQ::one());

    let c = Fundamental::for_col_weight(Direction::Lower, 1, &comp(&[2, 0])).unwrap();
    assert!(mult_fund_b(&c, &MatB::diagonal(&comp(&[1, 1]))).unwrap().is_zero());
}

#[test]
fn diagonal_matrices_are_not_fundamental() {
    assert_eq!(Fundamental::from_matrix(&MatB::diagonal(&comp(&[1, 2]))), Err(Error::NotFundamental));
}

#[test]
fn embedding_examples() {
    let dotted = mat(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]);
    let e = embed_b_in_d(&dotted);
    assert_eq!(e.terms().len(), 1);
    assert_eq!(e.coeff(&MatD::dot(dotted).unwrap()), PolyQ::one());
    let even = mat(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, 2]]);
    let e = embed_b_in_d(&even);
    assert_eq!(e.terms().len(), 2);
    assert_eq!(e.coeff(&MatD::new(even.clone(), Tag::Signs(Sign::Plus, Sign::Plus)).unwrap()), PolyQ::one());
    assert_eq!(e.coeff(&MatD::new(even, Tag::Signs(Sign::Minus, Sign::Minus)).unwrap()), PolyQ::one());
}

#[test]
fn type_d_needs_rank_four() {
    let a = MatD::dot(MatB::diagonal(&comp(&[1, 2]))).unwrap();
    assert_eq!(mult_fund_d(&a, &a).map(|p| p.case), Err(Error::RankTooSmall(3)));
}

#[test]
fn mismatched_weights_give_zero() {
    let plus = idempotent(&SignedComposition::new(comp(&[4, 0]), Mark::Plus).unwrap());
    let minus = idempotent(&SignedComposition::new(comp(&[4, 0]), Mark::Minus).unwrap());
    let p = mult_fund_d(&plus, &minus).unwrap();
    assert_eq!(p.case, FormulaCase::WeightMismatch);
    assert!(p.value.is_zero());
    let p = mult_fund_d(&minus, &minus).unwrap();
    assert_eq!(p.case, FormulaCase::Idempotent);
    assert_eq!(p.value.coeff(&minus), PolyQ::one());
}

fn signed_fundamentals(n: usize, r: usize) -> Vec<MatD> {
    Fundamental::all(n, r)
        .into_iter()
        .flat_map(|f| {
            MatD::tags_for(&f.matrix).into_iter().map(move |tag| MatD::new(f.matrix.clone(), tag).unwrap())
        })
        .collect()
}

#[test]
fn identity_acts_trivially() {
    let one = identity_d(1, 4);
    assert_eq!(one.terms().len(), SignedComposition::all(1, 4).len());
    for a in enumerate_xi_d(1, 4, usize::MAX).unwrap() {
        let mut x = qschur::schurd::SchurD::zero(CoxeterType::D, 1, 4);
        x.add_term(a.clone(), &PolyQ::one());
        let mut sum = qschur::schurd::SchurD::zero(CoxeterType::D, 1, 4);
        for e in one.terms().keys() {
            sum.add_assign(&mult_fund_d_elt(e, &x).unwrap());
        }
        assert_eq!(sum, x, "{a}");
    }
}

#[test]
fn outputs_carry_the_outer_weights() {
    for (n, r) in [(1, 4), (2, 4)] {
        let xd = enumerate_xi_d(n, r, usize::MAX).unwrap();
        for f in signed_fundamentals(n, r) {
            for a in xd.iter().filter(|a| a.row_weight() == f.col_weight()) {
                let p = mult_fund_d(&f, a).unwrap();
                assert_ne!(p.case, FormulaCase::WeightMismatch);
                for i in p.value.terms().keys() {
                    assert_eq!(i.row_weight(), f.row_weight());
                    assert_eq!(i.col_weight(), a.col_weight());
                }
            }
        }
    }
}

#[test]
fn splitting_matches_type_b() {
    let n = 1;
    let r = 4;
    for f in Fundamental::all(n, r) {
        for a in enumerate_xi_b(n, r, usize::MAX).unwrap().iter().filter(|a| a.ro() == f.matrix.co()) {
            let mut lhs = qschur::schurd::SchurD::zero(CoxeterType::D, n, r);
            for ft in embed_b_in_d(&f.matrix).terms().keys() {
                lhs.add_assign(&mult_fund_d_elt(ft, &embed_b_in_d(a)).unwrap());
            }
            let rhs: SchurB = mult_fund_b(&f, a).unwrap();
            assert_eq!(lhs, embed_elt(&rhs), "{:?} * {a:?}", f.matrix);
        }
    }
}

#[test]
fn halved_central_coefficient_matches_the_oracle() {
    let (n, r) = (1, 4);
    let oracle = OracleD::new(n, r).unwrap();
    let mut seen = 0;
    for f in signed_fundamentals(n, r) {
        let fund = Fundamental::from_matrix(&f.base).unwrap();
        if fund.direction != Direction::Lower || fund.h != n {
            continue;
        }
        for a in oracle.indices().iter().filter(|a| a.row_weight() == f.col_weight() && a.tag != Tag::Dot) {
            let g = coef_lower(&a.base, n, n + 1);
            if g.is_zero() {
                continue;
            }
            let centre = MatD::dot(a.base.shift_down(n, n + 1).unwrap()).unwrap();
            let closed = mult_fund_d(&f, a).unwrap().value;
            assert_eq!(closed.coeff(&centre), g.halve().unwrap(), "{f} * {a}");
            assert_eq!(oracle.product(&f, a).unwrap(), closed, "{f} * {a}");
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn json_round_trip() {
    let f = Fundamental::from_matrix(&mat(&[&[1, 1, 0], &[0, 0, 0], &[0, 1, 1]])).unwrap();
    let p = mult_fund_b(&f, &mat(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]])).unwrap();
    let j = serde_json::to_value(&p).unwrap();
    assert_eq!(j["ambient"], "B");
    assert_eq!(serde_json::from_value::<SchurB>(j).unwrap(), p);
}
