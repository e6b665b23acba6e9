//! Verification sweeps shared by the command line and the acceptance tests.
//!
//! Each sweep enumerates every instance in its range, compares two
//! independent computations exactly, and returns a [`Report`]. Instances run
//! in parallel; results are folded in enumeration order so reports are
//! deterministic.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactring::PolyQ;
use crate::flaggeom::{count_isotropic_lines, grass_check, FlagVariety};
use crate::heckealg::{HeckeAmbient, HeckeElt};
use crate::heckeoracle::{OracleB, OracleD, ORACLE_GROUP_BUDGET};
use crate::matcomb::{
    classify, coset_to_matrix, count_dod, count_xi_b, count_xi_d, enumerate_xi_b, enumerate_xi_d, matrix_to_da,
    EtaContext, MatB, MatClass, MatD, SignedComposition,
};
use crate::schurd::{
    coef_lower, embed_b_in_d, embed_elt, identity_d, mult_fund_b, mult_fund_d, mult_fund_d_elt, Direction,
    FormulaCase, Fundamental, SchurD,
};
use crate::weylgroups::{coxeter_generators, CoxeterType, Gen, SignedPerm, WeylGroup};

/// Default bound on flag enumerations.
pub const FLAG_BUDGET: usize = 100_000;

/// Outcome of one sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub n: usize,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub checked: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    /// Named counters: fired formula branches, census sizes and the like.
    pub counts: BTreeMap<String, u64>,
}

impl Report {
    fn new(suite: &str, n: usize, r: usize, p: Option<u32>) -> Self {
        Report {
            suite: suite.to_string(),
            n,
            r,
            p,
            ..Report::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }

    /// Records one comparison; `what` is only rendered for the first failure.
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn count(&mut self, key: &str, by: u64) {
        *self.counts.entry(key.to_string()).or_default() += by;
    }

    /// Folds a sub-report into this one.
    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
    }
}

/// Outcome of a single instance: pass, or a failure description.
type Outcome = std::result::Result<(), String>;

fn fold(report: &mut Report, outcomes: Vec<Outcome>) {
    for o in outcomes {
        match o {
            Ok(()) => report.check(true, String::new),
            Err(msg) => report.check(false, || msg),
        }
    }
}

/// Enumerated sizes of both index sets against their closed forms, and the
/// class census `|signed indices| = |counted once per Dod| + |Dod|`.
pub fn dimensions(max_n: usize, max_r: usize) -> Result<Report> {
    let mut rep = Report::new("dimensions", max_n, max_r, None);
    for n in 1..=max_n {
        for r in 1..=max_r {
            let xb = enumerate_xi_b(n, r, usize::MAX)?;
            rep.check(num_bigint::BigInt::from(xb.len()) == count_xi_b(n, r), || {
                format!("|Xi_B({n},{r})| = {} vs {}", xb.len(), count_xi_b(n, r))
            });
            let xd = enumerate_xi_d(n, r, usize::MAX)?;
            rep.check(num_bigint::BigInt::from(xd.len()) == count_xi_d(n, r), || {
                format!("|Xi_D({n},{r})| = {} vs {}", xd.len(), count_xi_d(n, r))
            });
            let dod = xb.iter().filter(|a| classify(a) == MatClass::Dod).count();
            let dotted = xb.iter().filter(|a| classify(a) == MatClass::Dotted).count();
            // Dotted indices once, other undotted-centre classes twice, Dod
            // once more on top.
            let xi_d_once = dotted + 2 * (xb.len() - dotted - dod) + dod;
            rep.check(num_bigint::BigInt::from(dod) == count_dod(n, r), || {
                format!("|Dod({n},{r})| = {dod} vs {}", count_dod(n, r))
            });
            rep.check(xd.len() == xi_d_once + dod, || {
                format!("census at ({n},{r}): {} vs {xi_d_once} + {dod}", xd.len())
            });
        }
    }
    Ok(rep)
}

/// Every fundamental type-B product against the Hecke algebra oracle.
pub fn b_oracle(n: usize, r: usize) -> Result<Report> {
    b_oracle_for(n, r, &Fundamental::all(n, r))
}

/// [`b_oracle`] restricted to the given left factors, each against every
/// right factor.
pub fn b_oracle_for(n: usize, r: usize, funds: &[Fundamental]) -> Result<Report> {
    let oracle = OracleB::new(n, r)?;
    let rights = oracle.indices();
    let mut rep = Report::new("b-oracle", n, r, None);
    let per: Vec<(Vec<Outcome>, BTreeMap<String, u64>)> = funds
        .par_iter()
        .map(|f| -> Result<_> {
            let got = oracle.products(&f.matrix, &rights)?;
            let mut outs = Vec::with_capacity(rights.len());
            let mut counts = BTreeMap::new();
            for (a, o) in rights.iter().zip(got) {
                let formula = mult_fund_b(f, a)?;
                if f.matrix.co() == a.ro() {
                    let key = match f.direction {
                        Direction::Raise => "raise",
                        Direction::Lower if f.h == n && a.get(n, n + 1) > 0 => "lower-central",
                        Direction::Lower => "lower",
                    };
                    *counts.entry(key.to_string()).or_default() += 1;
                }
                outs.push(if formula == o {
                    Ok(())
                } else {
                    Err(format!("{:?} * {a:?}: formula {formula:?}, oracle {o:?}", f.matrix))
                });
            }
            Ok((outs, counts))
        })
        .collect::<Result<_>>()?;
    for (outs, counts) in per {
        fold(&mut rep, outs);
        for (k, v) in counts {
            rep.count(&k, v);
        }
    }
    Ok(rep)
}

/// Every fundamental or diagonal signed left factor at `(n, r)`.
pub fn d_left_factors(n: usize, r: usize) -> Vec<MatD> {
    let mut out = Vec::new();
    for f in Fundamental::all(n, r) {
        for tag in MatD::tags_for(&f.matrix) {
            out.push(MatD {
                base: f.matrix.clone(),
                tag,
            });
        }
    }
    for alpha in SignedComposition::all(n, r) {
        out.push(crate::schurd::idempotent(&alpha));
    }
    out
}

/// Every fundamental type-D product against the type-D oracle, with the
/// fired branches counted under `case:<name>`. A branch of
/// [`FormulaCase::FORMULA_BRANCHES`] that never fires is reported as
/// `missing:<name>`; the caller decides whether coverage is required.
pub fn d_oracle(n: usize, r: usize) -> Result<Report> {
    d_oracle_for(n, r, &d_left_factors(n, r))
}

/// [`d_oracle`] restricted to the given left factors.
pub fn d_oracle_for(n: usize, r: usize, lefts: &[MatD]) -> Result<Report> {
    let oracle = OracleD::new(n, r)?;
    let rights = oracle.indices();
    let mut rep = Report::new("d-oracle", n, r, None);
    let per: Vec<(Vec<Outcome>, Vec<FormulaCase>)> = lefts
        .par_iter()
        .map(|f| -> Result<_> {
            let got = oracle.products(f, &rights)?;
            let mut outs = Vec::with_capacity(rights.len());
            let mut cases = Vec::new();
            for (a, o) in rights.iter().zip(got) {
                let res = mult_fund_d(f, a);
                outs.push(match res {
                    Ok(p) if p.value == o => {
                        cases.push(p.case);
                        Ok(())
                    }
                    Ok(p) => Err(format!("{f:?} * {a:?} [{}]: formula {:?}, oracle {o:?}", p.case, p.value)),
                    Err(e) => Err(format!("{f:?} * {a:?}: {e}")),
                });
            }
            Ok((outs, cases))
        })
        .collect::<Result<_>>()?;
    for (outs, cases) in per {
        fold(&mut rep, outs);
        for c in cases {
            rep.count(&format!("case:{}", c.name()), 1);
        }
    }
    Ok(rep)
}

/// Names of formula branches that did not fire in the given reports.
pub fn missing_branches<'a>(reports: impl IntoIterator<Item = &'a Report>) -> Vec<&'static str> {
    let mut fired = BTreeSet::new();
    for rep in reports {
        for (k, v) in &rep.counts {
            if *v > 0 {
                if let Some(name) = k.strip_prefix("case:") {
                    fired.insert(name.to_string());
                }
            }
        }
    }
    FormulaCase::FORMULA_BRANCHES
        .iter()
        .map(|c| c.name())
        .filter(|name| !fired.contains(*name))
        .collect()
}

/// Algebraic halving: for every lowering factor at `h = n` and every signed
/// index with `a_{n,n+1} >= 1`, the coefficient of the dotted shifted index
/// is exactly half of `g'` at the central column.
pub fn halving_algebraic(n: usize, r: usize) -> Result<Report> {
    let mut rep = Report::new("halving", n, r, None);
    let lefts: Vec<MatD> = d_left_factors(n, r)
        .into_iter()
        .filter(|f| Fundamental::from_matrix(&f.base).is_ok_and(|x| x.direction == Direction::Lower && x.h == n))
        .collect();
    let rights = enumerate_xi_d(n, r, usize::MAX)?;
    for f in &lefts {
        for a in rights.iter().filter(|a| a.base.center() == 0 && a.base.get(n, n + 1) > 0) {
            if a.row_weight() != f.col_weight() {
                continue;
            }
            let g = coef_lower(&a.base, n, n + 1);
            let want = g.halve();
            let got = mult_fund_d(f, a).and_then(|p| {
                let target = MatD::dot(a.base.shift_down(n, n + 1)?)?;
                Ok(p.value.coeff(&target))
            });
            match (want, got) {
                (Ok(w), Ok(c)) => rep.check(w == c, || format!("{f:?} * {a:?}: got {c}, want {w}")),
                (w, c) => rep.check(false, || format!("{f:?} * {a:?}: {w:?} / {c:?}")),
            }
        }
    }
    Ok(rep)
}

/// Orbit geometry over `F_p`: line count, orbit and splitting censuses,
/// label signs, fundamental type-B products at `q = p`, halving counts,
/// the one-step move, and the two-step line counts.
pub fn geom(n: usize, r: usize, p: u32, budget: usize) -> Result<Report> {
    let mut rep = Report::new("geom", n, r, Some(p));
    let lines = count_isotropic_lines(p, r)?;
    let (p64, r32) = (p as u64, r as u32);
    let want = (p64.pow(r32) - 1) * (p64.pow(r32 - 1) + 1) / (p64 - 1);
    rep.check(lines == want, || format!("isotropic lines {lines}, formula {want}"));
    rep.count("isotropic-lines", lines);

    let x = FlagVariety::new(n, r, p, budget)?;
    rep.count("flags", x.len() as u64);
    let orbits = x.orbit_census();
    let xb = count_xi_b(n, r);
    rep.check(num_bigint::BigInt::from(orbits) == xb, || format!("{orbits} orbits, {xb} indices"));
    rep.count("orbits", orbits as u64);

    let census = x.split_census();
    rep.check(census.violations.is_empty(), || format!("splitting violated at {:?}", census.violations));
    rep.count("split-orbits", census.split as u64);
    rep.count("unsplit-orbits", census.unsplit as u64);
    let bad_labels = x.label_sign_violations();
    rep.check(bad_labels == 0, || format!("{bad_labels} pairs with inconsistent labels"));

    rep.absorb(geom_products(&x)?);
    rep.absorb(geom_halving(&x)?);

    let (moves, bad_moves) = x.one_step_check();
    rep.check(bad_moves == 0 && moves > 0, || format!("{bad_moves} of {moves} one-step moves fail"));

    let (flags2, bad2) = grass_check(r, p, budget)?;
    rep.check(bad2 == 0, || format!("{bad2} of {flags2} two-step flags miscount lines"));
    Ok(rep)
}

/// Census part of [`geom`] only: line count, orbit census, splitting.
pub fn geom_census(n: usize, r: usize, p: u32, budget: usize) -> Result<Report> {
    let mut rep = Report::new("geom-census", n, r, Some(p));
    let lines = count_isotropic_lines(p, r)?;
    let (p64, r32) = (p as u64, r as u32);
    let want = (p64.pow(r32) - 1) * (p64.pow(r32 - 1) + 1) / (p64 - 1);
    rep.check(lines == want, || format!("isotropic lines {lines}, formula {want}"));
    let x = FlagVariety::new(n, r, p, budget)?;
    let orbits = x.orbit_census();
    rep.check(num_bigint::BigInt::from(orbits) == count_xi_b(n, r), || format!("{orbits} orbits"));
    let census = x.split_census();
    rep.check(census.violations.is_empty(), || format!("splitting violated at {:?}", census.violations));
    Ok(rep)
}

/// Every fundamental type-B product, counted on flags and compared with the
/// formula evaluated at `q = p`.
pub fn geom_products(x: &FlagVariety) -> Result<Report> {
    let mut rep = Report::new("geom-products", x.n(), x.r(), Some(x.p()));
    let all = enumerate_xi_b(x.n(), x.r(), usize::MAX)?;
    for f in Fundamental::all(x.n(), x.r()) {
        for a in all.iter().filter(|a| a.ro() == f.matrix.co()) {
            let geomp = x.product_b(&f.matrix, a)?;
            let formula: BTreeMap<MatB, u64> = mult_fund_b(&f, a)?
                .terms()
                .iter()
                .map(|(m, c)| (m.clone(), u64::try_from(c.eval_at(x.p() as i64)).unwrap_or(u64::MAX)))
                .filter(|(_, c)| *c != 0)
                .collect();
            rep.check(geomp == formula, || {
                format!("{:?} * {a:?}: counted {geomp:?}, formula {formula:?}", f.matrix)
            });
        }
    }
    Ok(rep)
}

/// Halving counts on flags for every signed-centre index with
/// `a_{n,n+1} >= 1`: the two label classes have equal size summing to `g'`.
pub fn geom_halving(x: &FlagVariety) -> Result<Report> {
    let n = x.n();
    let mut rep = Report::new("geom-halving", n, x.r(), Some(x.p()));
    for a in enumerate_xi_b(n, x.r(), usize::MAX)? {
        if a.center() != 0 || a.get(n, n + 1) == 0 {
            continue;
        }
        let (u, v) = x.verify_halving(&a)?;
        let target = x.halving_target(&a);
        rep.check(u == v && u + v == target, || format!("{a:?}: counts ({u}, {v}), target {target}"));
    }
    Ok(rep)
}

/// Round trips of the index bijections: `A -> d_A -> A` in type B, and
/// `eta_inv(eta(A)) = A` with `eta` injective in type D. The type-D part
/// needs `r >= 2`.
pub fn bijections(n: usize, r: usize) -> Result<Report> {
    let mut rep = Report::new("bijections", n, r, None);
    let xb = enumerate_xi_b(n, r, usize::MAX)?;
    let outs: Vec<Outcome> = xb
        .par_iter()
        .map(|a| {
            let back = coset_to_matrix(&a.row_composition(), &matrix_to_da(a), &a.col_composition());
            match back {
                Ok(b) if &b == a => Ok(()),
                other => Err(format!("{a:?} -> {other:?}")),
            }
        })
        .collect();
    fold(&mut rep, outs);
    rep.count("type-b-indices", xb.len() as u64);
    if r < 2 {
        return Ok(rep);
    }

    let ctx = EtaContext::new(r, ORACLE_GROUP_BUDGET)?;
    let xd = enumerate_xi_d(n, r, usize::MAX)?;
    let trips: Vec<std::result::Result<_, String>> = xd
        .par_iter()
        .map(|a| {
            let t = ctx.eta(a).map_err(|e| format!("eta({a:?}): {e}"))?;
            let back = ctx.eta_inv(&t).map_err(|e| format!("eta_inv({a:?}): {e}"))?;
            if &back == a {
                Ok(t)
            } else {
                Err(format!("{a:?} -> {back:?}"))
            }
        })
        .collect();
    let mut images = BTreeSet::new();
    for t in trips {
        match t {
            Ok(t) => {
                rep.check(true, String::new);
                images.insert(t);
            }
            Err(msg) => rep.check(false, || msg),
        }
    }
    rep.check(images.len() == xd.len(), || format!("eta has {} images for {} indices", images.len(), xd.len()));
    rep.count("type-d-indices", xd.len() as u64);
    Ok(rep)
}

fn braid_order(g: &WeylGroup, a: usize, b: usize) -> usize {
    let ab = g.mul(a, b);
    let mut cur = ab;
    let mut k = 1;
    while cur != 0 {
        cur = g.mul(cur, ab);
        k += 1;
    }
    k
}

/// Hecke relations, `tau`, `flip`, and the identity element.
///
/// Runs the group-level checks at every rank up to `max_r` and the identity
/// check on the type-D algebra at `(n, id_r)`.
pub fn structure(max_r: usize, n: usize, id_r: usize) -> Result<Report> {
    let mut rep = Report::new("structure", n, max_r, None);
    for ty in [CoxeterType::B, CoxeterType::D] {
        let min_r = if ty == CoxeterType::D { 2 } else { 1 };
        for r in min_r..=max_r {
            rep.absorb(hecke_relations(ty, r)?);
        }
    }
    for r in 2..=max_r {
        rep.absorb(flip_checks(r)?);
    }
    rep.absorb(identity_checks(n, id_r)?);
    Ok(rep)
}

/// Quadratic and braid relations in the Hecke algebra, and `tau` reversing
/// products of basis elements.
pub fn hecke_relations(ty: CoxeterType, r: usize) -> Result<Report> {
    let mut rep = Report::new("hecke-relations", 0, r, None);
    let amb = HeckeAmbient::new(ty, r);
    let gens = coxeter_generators(ty, r);
    let one = HeckeElt::one(amb);
    for &s in &gens {
        let t = HeckeElt::generator(amb, s)?;
        let qs = amb.param(s);
        let lhs = t.mul(&t)?;
        let rhs = t.scale(&(&qs - &PolyQ::one())).add(&one.scale(&qs))?;
        rep.check(lhs == rhs, || format!("quadratic relation fails for {} in {ty}{r}", s.label()));
    }
    let group = WeylGroup::new(ty, r, ORACLE_GROUP_BUDGET)?;
    for (i, &s) in gens.iter().enumerate() {
        for (j, &t) in gens.iter().enumerate().skip(i + 1) {
            let idx = |g: Gen| SignedPerm::generator(r, g).ok().and_then(|w| group.index_of(&w)).expect("generator");
            let m = braid_order(&group, idx(s), idx(t));
            let ts = HeckeElt::generator(amb, s)?;
            let tt = HeckeElt::generator(amb, t)?;
            let mut lhs = one.clone();
            let mut rhs = one.clone();
            for k in 0..m {
                lhs = lhs.mul(if k % 2 == 0 { &ts } else { &tt })?;
                rhs = rhs.mul(if k % 2 == 0 { &tt } else { &ts })?;
            }
            rep.check(lhs == rhs, || format!("braid relation of order {m} fails for {i},{j} in {ty}{r}"));
        }
    }
    // tau(xy) = tau(y) tau(x) on pairs of basis elements; tau is an involution.
    let elems: Vec<SignedPerm> = group.elements().iter().step_by((group.size() / 24).max(1)).cloned().collect();
    for u in &elems {
        let tu = HeckeElt::basis(amb, u.clone())?;
        rep.check(tu.tau().tau() == tu, || format!("tau is not an involution at {u:?}"));
        for v in &elems {
            let tv = HeckeElt::basis(amb, v.clone())?;
            let lhs = tu.mul(&tv)?.tau();
            let rhs = tv.tau().mul(&tu.tau())?;
            rep.check(lhs == rhs, || format!("tau(T_u T_v) != tau(T_v) tau(T_u) for {u:?}, {v:?}"));
        }
    }
    Ok(rep)
}

/// `flip` (conjugation by `s_r`) is an involutive automorphism of the type-B
/// group that preserves the type-D subgroup and swaps `s_{r-1}` with the
/// extra type-D generator.
pub fn flip_checks(r: usize) -> Result<Report> {
    let mut rep = Report::new("flip", 0, r, None);
    let g = WeylGroup::new(CoxeterType::B, r, ORACLE_GROUP_BUDGET)?;
    let els = g.elements();
    for u in els {
        let fu = u.flip();
        rep.check(fu.flip() == *u, || format!("flip is not an involution at {u:?}"));
        rep.check(fu.in_type_d() == u.in_type_d(), || format!("flip moves {u:?} across the type-D subgroup"));
    }
    let step = (els.len() / 48).max(1);
    for u in els.iter().step_by(step) {
        for v in els {
            let ok = u.compose(v).flip() == u.flip().compose(&v.flip());
            rep.check(ok, || format!("flip is not multiplicative at {u:?}, {v:?}"));
        }
    }
    if r >= 2 {
        let a = SignedPerm::generator(r, Gen::S(r - 1))?;
        let b = SignedPerm::generator(r, Gen::Varsigma)?;
        rep.check(a.flip() == b, || "flip does not exchange s_(r-1) and the extra generator".into());
    }
    Ok(rep)
}

/// `sum_alpha 1_alpha` is a two-sided identity on every basis element: on
/// the left through the product formulas, on the right through the oracle.
pub fn identity_checks(n: usize, r: usize) -> Result<Report> {
    let mut rep = Report::new("identity", n, r, None);
    let oracle = OracleD::new(n, r)?;
    let one = identity_d(n, r);
    let idems: Vec<MatD> = one.terms().keys().cloned().collect();
    let outs: Vec<Outcome> = oracle
        .indices()
        .par_iter()
        .map(|a| {
            let mut single = SchurD::zero(CoxeterType::D, n, r);
            single.add_term(a.clone(), &PolyQ::one());
            let mut left = SchurD::zero(CoxeterType::D, n, r);
            let mut right = SchurD::zero(CoxeterType::D, n, r);
            for e in &idems {
                let l = mult_fund_d(e, a).map_err(|err| format!("{e:?} * {a:?}: {err}"))?;
                left.add_assign(&l.value);
                let rr = oracle.product(a, e).map_err(|err| format!("{a:?} * {e:?}: {err}"))?;
                right.add_assign(&rr);
            }
            if left != single {
                return Err(format!("left identity fails on {a:?}: {left:?}"));
            }
            if right != single {
                return Err(format!("right identity fails on {a:?}: {right:?}"));
            }
            Ok(())
        })
        .collect();
    fold(&mut rep, outs);
    Ok(rep)
}

/// `embed(e_F) * embed(e_A) = embed(e_F * e_A)` for every fundamental
/// type-B product with matching weights.
pub fn embedding(n: usize, r: usize) -> Result<Report> {
    let mut rep = Report::new("embedding", n, r, None);
    let xb = enumerate_xi_b(n, r, usize::MAX)?;
    let funds = Fundamental::all(n, r);
    let outs: Vec<Outcome> = funds
        .par_iter()
        .flat_map_iter(|f| {
            xb.iter()
                .filter(|a| a.ro() == f.matrix.co())
                .map(|a| {
                    let err = |e: Error| format!("{:?} * {a:?}: {e}", f.matrix);
                    let ea = embed_b_in_d(a);
                    let mut lhs = SchurD::zero(CoxeterType::D, n, r);
                    for ft in embed_b_in_d(&f.matrix).terms().keys() {
                        lhs.add_assign(&mult_fund_d_elt(ft, &ea).map_err(err)?);
                    }
                    let rhs = embed_elt(&mult_fund_b(f, a).map_err(err)?);
                    if lhs == rhs {
                        Ok(())
                    } else {
                        Err(format!("{:?} * {a:?}: {lhs:?} vs {rhs:?}", f.matrix))
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    fold(&mut rep, outs);
    Ok(rep)
}
