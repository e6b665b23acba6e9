//! Schur algebras of types B and D in their natural bases, and the closed
//! multiplication formulas for fundamental left factors.
//!
//! A product `left * right` is nonzero only if the column weight of `left`
//! equals the row weight of `right`. Type-D products dispatch on the class of
//! the left factor and the tag of the right factor; each dispatch branch is
//! reported as a [`FormulaCase`] so sweeps can assert coverage.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactring::{gauss, PolyQ};
use crate::matcomb::{classify, count_xi_b, count_xi_d, Composition, MatB, MatClass, MatD, Mark, Sign, SignedComposition, Tag};
use crate::weylgroups::CoxeterType;

/// A sparse `Z[q]`-combination of natural basis elements indexed by `I`.
/// No zero coefficient is stored and all indices share `(n, r)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SchurElt<I: Ord> {
    ty: CoxeterType,
    n: usize,
    r: usize,
    terms: BTreeMap<I, PolyQ>,
}

pub type SchurB = SchurElt<MatB>;
pub type SchurD = SchurElt<MatD>;

impl<I: Ord + Clone> SchurElt<I> {
    pub fn zero(ty: CoxeterType, n: usize, r: usize) -> Self {
        SchurElt {
            ty,
            n,
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn ty(&self) -> CoxeterType {
        self.ty
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &BTreeMap<I, PolyQ> {
        &self.terms
    }

    pub fn coeff(&self, i: &I) -> PolyQ {
        self.terms.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: I, c: &PolyQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&i) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&i);
                }
            }
            None => {
                self.terms.insert(i, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &SchurElt<I>) {
        debug_assert_eq!((self.ty, self.n, self.r), (other.ty, other.n, other.r));
        for (i, c) in &other.terms {
            self.add_term(i.clone(), c);
        }
    }
}

impl<I: Ord + fmt::Display> fmt::Display for SchurElt<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(i, c)| format!("({c}) e{i}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<I: Ord + fmt::Debug> fmt::Debug for SchurElt<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(i, c)| (i, c.to_string())))
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct SchurWire<I> {
    ambient: CoxeterType,
    n: usize,
    r: usize,
    terms: Vec<(I, PolyQ)>,
}

impl<I: Ord + Clone + Serialize> Serialize for SchurElt<I> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SchurWire {
            ambient: self.ty,
            n: self.n,
            r: self.r,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), c.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de, I: Ord + Clone + Deserialize<'de>> Deserialize<'de> for SchurElt<I> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = SchurWire::<I>::deserialize(d)?;
        let mut out = SchurElt::zero(w.ambient, w.n, w.r);
        for (i, c) in w.terms {
            out.add_term(i, &c);
        }
        Ok(out)
    }
}

/// `dim S^B(n, r) = C(2n^2 + 2n + r, r)`.
pub fn dim_b(n: usize, r: usize) -> num_bigint::BigInt {
    count_xi_b(n, r)
}

/// `dim S^D(n, r) = C(2n^2 + 2n + r, r) + C(2n^2 + 2n + r - 1, r)`.
pub fn dim_d(n: usize, r: usize) -> num_bigint::BigInt {
    count_xi_d(n, r)
}

/// Coefficient of the raised term at column `p`:
/// `q^(sum_{j>p} a_{h,j}) [a_{h,p} + 1]` when `a_{h+1,p} > 0`, else 0.
pub fn coef_raise(a: &MatB, h: usize, p: usize) -> PolyQ {
    let s = a.size();
    if h == 0 || h > a.n() || p == 0 || p > s || a.get(h + 1, p) == 0 {
        return PolyQ::zero();
    }
    let exp: u32 = (p + 1..=s).map(|j| a.get(h, j)).sum();
    gauss(a.get(h, p) as usize + 1).shift(exp as usize)
}

/// Coefficient of the lowered term at column `p`:
/// `q^(sum_{j<p} a_{h+1,j}) [a_{h+1,p} + 1]` when `a_{h,p} > 0`, except at the
/// centre `(h, p) = (n, n+1)` where the bracket gains `+ q^(a/2)` for the
/// central entry `a`.
pub fn coef_lower(a: &MatB, h: usize, p: usize) -> PolyQ {
    let n = a.n();
    if h == 0 || h > n || p == 0 || p > a.size() || a.get(h, p) == 0 {
        return PolyQ::zero();
    }
    let exp: u32 = (1..p).map(|j| a.get(h + 1, j)).sum();
    let x = a.get(h + 1, p) as usize;
    let mut bracket = gauss(x + 1);
    if h == n && p == n + 1 {
        bracket += &PolyQ::monomial(1, x / 2);
    }
    bracket.shift(exp as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Raise,
    Lower,
}

/// A fundamental matrix: a diagonal matrix plus `E^theta_{h,h+1}` (raise)
/// or `E^theta_{h+1,h}` (lower).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fundamental {
    pub direction: Direction,
    pub h: usize,
    pub matrix: MatB,
}

impl Fundamental {
    /// Recognizes a fundamental matrix; diagonal matrices are not
    /// fundamental.
    pub fn from_matrix(m: &MatB) -> Result<Fundamental> {
        for h in 1..=m.n() {
            // Undo the shift that built the raising (lowering) matrix from its
            // column weight; the result must be diagonal.
            let up = m.shift_down(h, h + 1).ok().filter(|d| d.is_diagonal());
            if up.is_some() && !m.is_diagonal() {
                return Ok(Fundamental {
                    direction: Direction::Raise,
                    h,
                    matrix: m.clone(),
                });
            }
            let down = m.shift_up(h, h).ok().filter(|d| d.is_diagonal());
            if down.is_some() && !m.is_diagonal() {
                return Ok(Fundamental {
                    direction: Direction::Lower,
                    h,
                    matrix: m.clone(),
                });
            }
        }
        Err(Error::NotFundamental)
    }

    /// The fundamental matrix of the given direction and `h` whose column
    /// weight is `mu`, if its entries stay natural.
    pub fn for_col_weight(direction: Direction, h: usize, mu: &Composition) -> Option<Fundamental> {
        let matrix = match direction {
            Direction::Raise => MatB::raising(mu, h)?,
            Direction::Lower => MatB::lowering(mu, h)?,
        };
        Some(Fundamental { direction, h, matrix })
    }

    /// Every fundamental matrix with column weight `ro(a)`.
    pub fn all_for_right(a: &MatB) -> Vec<Fundamental> {
        let mu = a.row_composition();
        let mut out = Vec::new();
        for h in 1..=a.n() {
            for dir in [Direction::Raise, Direction::Lower] {
                out.extend(Self::for_col_weight(dir, h, &mu));
            }
        }
        out
    }

    /// Every fundamental matrix at `(n, r)`.
    pub fn all(n: usize, r: usize) -> Vec<Fundamental> {
        let mut out = Vec::new();
        for mu in Composition::all(n, r) {
            for h in 1..=n {
                for dir in [Direction::Raise, Direction::Lower] {
                    out.extend(Self::for_col_weight(dir, h, &mu));
                }
            }
        }
        out
    }
}

fn shifted(a: &MatB, dir: Direction, h: usize, p: usize) -> Result<MatB> {
    match dir {
        Direction::Raise => a.shift_up(h, p),
        Direction::Lower => a.shift_down(h, p),
    }
}

fn coef(a: &MatB, dir: Direction, h: usize, p: usize) -> PolyQ {
    match dir {
        Direction::Raise => coef_raise(a, h, p),
        Direction::Lower => coef_lower(a, h, p),
    }
}

/// `e_F * e_A` in type B.
pub fn mult_fund_b(f: &Fundamental, a: &MatB) -> Result<SchurB> {
    let m = &f.matrix;
    if m.n() != a.n() || m.r() != a.r() {
        return Err(Error::AmbientMismatch("factors have different (n, r)".into()));
    }
    let mut out = SchurB::zero(CoxeterType::B, a.n(), a.r());
    if m.co() != a.ro() {
        return Ok(out);
    }
    for p in 1..=a.size() {
        let c = coef(a, f.direction, f.h, p);
        if !c.is_zero() {
            out.add_term(shifted(a, f.direction, f.h, p)?, &c);
        }
    }
    Ok(out)
}

/// Linear extension of [`mult_fund_b`] in the right factor.
pub fn mult_fund_b_elt(f: &Fundamental, x: &SchurB) -> Result<SchurB> {
    let mut out = SchurB::zero(CoxeterType::B, x.n, x.r);
    for (a, c) in &x.terms {
        let y = mult_fund_b(f, a)?;
        for (b, d) in &y.terms {
            out.add_term(b.clone(), &(c * d));
        }
    }
    Ok(out)
}

/// Which branch of the type-D dispatcher produced a product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormulaCase {
    /// Dotted raising factor times a dotted index, no orbit splits.
    RaiseDotOnDot,
    /// Dotted raising factor at `h = n` times a dotted index with central
    /// entry 2: the central term splits into both signed orbits.
    RaiseDotOnDotSplit,
    /// Dotted raising factor, `h < n`, signed right index.
    RaiseDotOnSignedLow,
    /// Dotted raising factor, `h = n`, signed right index.
    RaiseDotOnSignedTop,
    /// Signed raising factor, `h < n`.
    RaiseSignedLow,
    /// Signed raising factor at `h = n` times a dotted index.
    RaiseCentralOnDot,
    /// Signed raising factor at `h = n`, first signs agree.
    RaiseCentralOnSignedSame,
    /// Signed raising factor at `h = n`, first signs differ.
    RaiseCentralOnSignedCross,
    /// Dotted lowering factor times a dotted index.
    LowerDotOnDot,
    /// Dotted lowering factor, `h < n`, signed right index.
    LowerDotOnSignedLow,
    /// Dotted lowering factor, `h = n`, signed right index (halved central
    /// term).
    LowerDotOnSignedTop,
    /// Signed lowering factor, `h < n`.
    LowerSignedLow,
    /// Signed lowering factor at `h = n` (halved central term).
    LowerCentralOnSigned,
    /// Diagonal left factor acting as a weight idempotent.
    Idempotent,
    /// Column weight of the left factor differs from the row weight of the
    /// right factor; the product is zero.
    WeightMismatch,
}

impl FormulaCase {
    /// The thirteen formula branches a complete sweep must fire.
    pub const FORMULA_BRANCHES: [FormulaCase; 13] = [
        FormulaCase::RaiseDotOnDot,
        FormulaCase::RaiseDotOnDotSplit,
        FormulaCase::RaiseDotOnSignedLow,
        FormulaCase::RaiseDotOnSignedTop,
        FormulaCase::RaiseSignedLow,
        FormulaCase::RaiseCentralOnDot,
        FormulaCase::RaiseCentralOnSignedSame,
        FormulaCase::RaiseCentralOnSignedCross,
        FormulaCase::LowerDotOnDot,
        FormulaCase::LowerDotOnSignedLow,
        FormulaCase::LowerDotOnSignedTop,
        FormulaCase::LowerSignedLow,
        FormulaCase::LowerCentralOnSigned,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaCase::RaiseDotOnDot => "raise-dot-on-dot",
            FormulaCase::RaiseDotOnDotSplit => "raise-dot-on-dot-split",
            FormulaCase::RaiseDotOnSignedLow => "raise-dot-on-signed-low",
            FormulaCase::RaiseDotOnSignedTop => "raise-dot-on-signed-top",
            FormulaCase::RaiseSignedLow => "raise-signed-low",
            FormulaCase::RaiseCentralOnDot => "raise-central-on-dot",
            FormulaCase::RaiseCentralOnSignedSame => "raise-central-on-signed-same",
            FormulaCase::RaiseCentralOnSignedCross => "raise-central-on-signed-cross",
            FormulaCase::LowerDotOnDot => "lower-dot-on-dot",
            FormulaCase::LowerDotOnSignedLow => "lower-dot-on-signed-low",
            FormulaCase::LowerDotOnSignedTop => "lower-dot-on-signed-top",
            FormulaCase::LowerSignedLow => "lower-signed-low",
            FormulaCase::LowerCentralOnSigned => "lower-central-on-signed",
            FormulaCase::Idempotent => "idempotent",
            FormulaCase::WeightMismatch => "weight-mismatch",
        }
    }
}

impl fmt::Display for FormulaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of a type-D product together with the branch that fired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductD {
    pub value: SchurD,
    pub case: FormulaCase,
}

fn signed(base: MatB, e1: Sign, e2: Sign) -> Result<MatD> {
    MatD::new(base, Tag::Signs(e1, e2))
}

/// `phi_F * phi_A` in type D for a fundamental or diagonal left factor.
pub fn mult_fund_d(f: &MatD, a: &MatD) -> Result<ProductD> {
    let (n, r) = (a.base.n(), a.base.r());
    if r < 4 {
        return Err(Error::RankTooSmall(r));
    }
    if f.base.n() != n || f.base.r() != r {
        return Err(Error::AmbientMismatch("factors have different (n, r)".into()));
    }
    MatD::new(f.base.clone(), f.tag)?;
    MatD::new(a.base.clone(), a.tag)?;
    let zero = SchurD::zero(CoxeterType::D, n, r);
    let fund = if f.base.is_diagonal() {
        None
    } else {
        Some(Fundamental::from_matrix(&f.base)?)
    };
    if f.col_weight() != a.row_weight() {
        return Ok(ProductD {
            value: zero,
            case: FormulaCase::WeightMismatch,
        });
    }
    let Some(fund) = fund else {
        let mut value = zero;
        value.add_term(a.clone(), &PolyQ::one());
        return Ok(ProductD {
            value,
            case: FormulaCase::Idempotent,
        });
    };
    let (dir, h) = (fund.direction, fund.h);
    let am = &a.base;
    let eps = am.sign();
    let mut value = zero;
    let terms = |value: &mut SchurD, filter: &dyn Fn(usize) -> bool, tag: &dyn Fn(usize) -> Option<(Sign, Sign)>| -> Result<()> {
        for p in (1..=am.size()).filter(|&p| filter(p)) {
            let c = coef(am, dir, h, p);
            if c.is_zero() {
                continue;
            }
            let b = shifted(am, dir, h, p)?;
            let idx = match tag(p) {
                Some((e1, e2)) => signed(b, e1, e2)?,
                None => MatD::dot(b)?,
            };
            value.add_term(idx, &c);
        }
        Ok(())
    };
    // `e1` of the right factor flips exactly for h = n and p > n + 1.
    let flip = |e1: Sign, p: usize| if h == n && p > n + 1 { -e1 } else { e1 };
    let all = |_: usize| true;
    let fclass = classify(&f.base);
    let case = match (dir, fclass, f.tag, a.tag) {
        (Direction::Raise, MatClass::Dotted, _, Tag::Dot) => {
            let split = h == n && am.center() == 2 && !coef_raise(am, n, n + 1).is_zero();
            terms(&mut value, &|p| !(split && p == n + 1), &|_| None)?;
            if split {
                let g = coef_raise(am, n, n + 1);
                let b = am.shift_up(n, n + 1)?;
                value.add_term(signed(b.clone(), Sign::Plus, eps)?, &g);
                value.add_term(signed(b, Sign::Minus, -eps)?, &g);
                FormulaCase::RaiseDotOnDotSplit
            } else {
                FormulaCase::RaiseDotOnDot
            }
        }
        (Direction::Raise, MatClass::Dotted, _, Tag::Signs(e1, e2)) => {
            if h < n {
                terms(&mut value, &all, &|_| Some((e1, e2)))?;
                FormulaCase::RaiseDotOnSignedLow
            } else {
                terms(&mut value, &|p| p != n + 1, &|p| Some((flip(e1, p), e2)))?;
                FormulaCase::RaiseDotOnSignedTop
            }
        }
        (Direction::Raise, MatClass::Ooo, Tag::Signs(_, _), Tag::Signs(e1, e2)) if h < n => {
            terms(&mut value, &all, &|_| Some((e1, e2)))?;
            FormulaCase::RaiseSignedLow
        }
        (Direction::Raise, MatClass::Ood, Tag::Signs(s, _), Tag::Dot) if h == n => {
            terms(&mut value, &|p| p == n + 1, &|_| Some((s, s.times(eps))))?;
            FormulaCase::RaiseCentralOnDot
        }
        (Direction::Raise, MatClass::Ood, Tag::Signs(s, _), Tag::Signs(e1, e2)) if h == n => {
            if s == e1 {
                terms(&mut value, &|p| p < n + 1, &|_| Some((e1, e2)))?;
                FormulaCase::RaiseCentralOnSignedSame
            } else {
                terms(&mut value, &|p| p > n + 1, &|_| Some((s, e2)))?;
                FormulaCase::RaiseCentralOnSignedCross
            }
        }
        (Direction::Lower, MatClass::Dotted, _, Tag::Dot) => {
            terms(&mut value, &all, &|_| None)?;
            FormulaCase::LowerDotOnDot
        }
        (Direction::Lower, MatClass::Dotted, _, Tag::Signs(e1, e2)) => {
            if h < n {
                terms(&mut value, &all, &|_| Some((e1, e2)))?;
                FormulaCase::LowerDotOnSignedLow
            } else {
                terms(&mut value, &|p| p != n + 1, &|p| Some((flip(e1, p), e2)))?;
                add_halved_center(&mut value, am)?;
                FormulaCase::LowerDotOnSignedTop
            }
        }
        (Direction::Lower, MatClass::Ooo, Tag::Signs(_, _), Tag::Signs(e1, e2)) if h < n => {
            terms(&mut value, &all, &|_| Some((e1, e2)))?;
            FormulaCase::LowerSignedLow
        }
        (Direction::Lower, MatClass::Doo, Tag::Signs(_, _), Tag::Signs(e1, e2)) if h == n => {
            terms(&mut value, &|p| p != n + 1, &|p| Some((flip(e1, p), e2)))?;
            add_halved_center(&mut value, am)?;
            FormulaCase::LowerCentralOnSigned
        }
        _ => {
            return Err(Error::Invalid(format!(
                "no formula for left factor {f} ({}) and right factor {a}",
                fclass.label()
            )))
        }
    };
    // Every output index must carry the outer weights of the product.
    let (rw, cw) = (f.row_weight(), a.col_weight());
    if let Some(bad) = value.terms.keys().find(|i| i.row_weight() != rw || i.col_weight() != cw) {
        return Err(Error::Invalid(format!("{case} produced {bad} with wrong weights")));
    }
    Ok(ProductD { value, case })
}

/// The `p = n + 1` term of a lowering product on a signed index at `h = n`:
/// half the coefficient, on the dotted shifted matrix.
fn add_halved_center(value: &mut SchurD, am: &MatB) -> Result<()> {
    let n = am.n();
    let g = coef_lower(am, n, n + 1);
    if g.is_zero() {
        return Ok(());
    }
    let b = am.shift_down(n, n + 1)?;
    value.add_term(MatD::dot(b)?, &g.halve()?);
    Ok(())
}

/// Linear extension of [`mult_fund_d`] in the right factor.
pub fn mult_fund_d_elt(f: &MatD, x: &SchurD) -> Result<SchurD> {
    let mut out = SchurD::zero(CoxeterType::D, x.n, x.r);
    for (a, c) in &x.terms {
        let y = mult_fund_d(f, a)?.value;
        for (b, d) in &y.terms {
            out.add_term(b.clone(), &(c * d));
        }
    }
    Ok(out)
}

/// The image of `e_A` in type D: `phi_A` for a nonzero centre, otherwise
/// `phi_{+A^e} + phi_{-A^-e}` with `e` the corner sign.
pub fn embed_b_in_d(a: &MatB) -> SchurD {
    let mut out = SchurD::zero(CoxeterType::D, a.n(), a.r());
    for tag in MatD::tags_for(a) {
        out.add_term(
            MatD {
                base: a.clone(),
                tag,
            },
            &PolyQ::one(),
        );
    }
    out
}

/// Linear extension of [`embed_b_in_d`].
pub fn embed_elt(x: &SchurB) -> SchurD {
    let mut out = SchurD::zero(CoxeterType::D, x.n, x.r);
    for (a, c) in &x.terms {
        for i in embed_b_in_d(a).terms.into_keys() {
            out.add_term(i, c);
        }
    }
    out
}

/// The weight idempotent `1_alpha`: the signed diagonal index of `alpha`.
pub fn idempotent(alpha: &SignedComposition) -> MatD {
    let base = MatB::diagonal(&alpha.base);
    let tag = match alpha.mark {
        Mark::Dot => Tag::Dot,
        Mark::Plus => Tag::Signs(Sign::Plus, Sign::Plus),
        Mark::Minus => Tag::Signs(Sign::Minus, Sign::Minus),
    };
    MatD { base, tag }
}

/// The identity `sum_alpha 1_alpha` of the type-D algebra.
pub fn identity_d(n: usize, r: usize) -> SchurD {
    let mut out = SchurD::zero(CoxeterType::D, n, r);
    for alpha in SignedComposition::all(n, r) {
        out.add_term(idempotent(&alpha), &PolyQ::one());
    }
    out
}
