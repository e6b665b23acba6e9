//! Compositions, centro-symmetric index matrices and the maps between
//! matrices and double cosets.
//!
//! Matrices are `N x N` with `N = 2n + 1` and are addressed 1-based through
//! [`MatB::get`]. Row `n + 1` and column `n + 1` are the central ones.

mod eta;

pub use eta::{EtaContext, EtaTriple};

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactring::binomial;
use crate::weylgroups::{tabloid_b, ParabolicSpec, SignedPerm};

/// A weak composition `(lambda_1, ..., lambda_{n+1})` of `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    /// Needs at least two parts, since `n >= 1`.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::Invalid(format!("composition {parts:?} needs n+1 >= 2 parts")));
        }
        Ok(Composition { parts })
    }

    /// Recovers `lambda` from `hat(lambda)`; the vector must be a palindrome
    /// of odd length with an even middle entry.
    pub fn from_hat(hat: &[usize]) -> Result<Self> {
        let len = hat.len();
        if len < 3 || len.is_multiple_of(2) {
            return Err(Error::Invalid(format!("{hat:?} has no odd length >= 3")));
        }
        let n = len / 2;
        if (0..len).any(|i| hat[i] != hat[len - 1 - i]) || !hat[n].is_multiple_of(2) {
            return Err(Error::Invalid(format!("{hat:?} is not a hat vector")));
        }
        let mut parts = hat[..n].to_vec();
        parts.push(hat[n] / 2);
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn r(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `lambda_{n+1}`.
    pub fn last(&self) -> usize {
        self.parts[self.n()]
    }

    /// `(lambda_1, ..., lambda_n, 2 lambda_{n+1}, lambda_n, ..., lambda_1)`.
    pub fn hat(&self) -> Vec<usize> {
        let n = self.n();
        let mut h = self.parts[..n].to_vec();
        h.push(2 * self.parts[n]);
        h.extend(self.parts[..n].iter().rev());
        h
    }

    /// All of `Lambda(n+1, r)` in lexicographic order.
    pub fn all(n: usize, r: usize) -> Vec<Composition> {
        weak_compositions(r, n + 1)
            .into_iter()
            .map(|parts| Composition { parts })
            .collect()
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All weak compositions of `total` into `k` parts, lexicographically.
fn weak_compositions(total: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=total {
            cur.push(x);
            go(total - x, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        go(total, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// A sign `+` or `-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn from_parity(even: bool) -> Sign {
        if even {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        Sign::from_parity(self == other)
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Mark of a signed composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mark {
    #[serde(rename = "dot")]
    Dot,
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl From<Sign> for Mark {
    fn from(s: Sign) -> Mark {
        match s {
            Sign::Plus => Mark::Plus,
            Sign::Minus => Mark::Minus,
        }
    }
}

/// A composition with a mark. Invariant: the mark is `Dot` exactly when
/// `lambda_{n+1} != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedComposition {
    pub base: Composition,
    pub mark: Mark,
}

impl SignedComposition {
    pub fn new(base: Composition, mark: Mark) -> Result<Self> {
        if (mark == Mark::Dot) != (base.last() != 0) {
            return Err(Error::Invalid(format!("mark {mark:?} does not fit {base}")));
        }
        Ok(SignedComposition { base, mark })
    }

    /// Every signed composition over `Lambda(n+1, r)`.
    pub fn all(n: usize, r: usize) -> Vec<SignedComposition> {
        let mut out = Vec::new();
        for base in Composition::all(n, r) {
            if base.last() != 0 {
                out.push(SignedComposition {
                    base,
                    mark: Mark::Dot,
                });
            } else {
                out.push(SignedComposition {
                    base: base.clone(),
                    mark: Mark::Plus,
                });
                out.push(SignedComposition {
                    base,
                    mark: Mark::Minus,
                });
            }
        }
        out
    }
}

impl fmt::Display for SignedComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = match self.mark {
            Mark::Dot => "dot",
            Mark::Plus => "+",
            Mark::Minus => "-",
        };
        write!(f, "{}{}", self.base, m)
    }
}

/// A centro-symmetric `N x N` natural matrix with entry sum `2r` and even
/// central entry.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatB {
    n: usize,
    r: usize,
    entries: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct MatBWire {
    n: usize,
    r: usize,
    entries: Vec<Vec<u32>>,
}

impl Serialize for MatB {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatBWire {
            n: self.n,
            r: self.r,
            entries: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatB {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = MatBWire::deserialize(d)?;
        let m = MatB::new(w.entries).map_err(serde::de::Error::custom)?;
        if m.n != w.n || m.r != w.r {
            return Err(serde::de::Error::custom("n or r disagrees with the entries"));
        }
        Ok(m)
    }
}

impl MatB {
    /// Validates shape, centro-symmetry and the even centre.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let size = rows.len();
        if size < 3 || size.is_multiple_of(2) || rows.iter().any(|row| row.len() != size) {
            return Err(Error::Invalid("matrix must be square of odd size >= 3".into()));
        }
        let entries: Vec<u32> = rows.into_iter().flatten().collect();
        let m = MatB {
            n: size / 2,
            r: 0,
            entries,
        };
        for i in 1..=size {
            for j in 1..=size {
                if m.get(i, j) != m.get(size + 1 - i, size + 1 - j) {
                    return Err(Error::Invalid("matrix is not centro-symmetric".into()));
                }
            }
        }
        let c = m.center();
        if !c.is_multiple_of(2) {
            return Err(Error::Invalid("central entry is odd".into()));
        }
        let total: u32 = m.entries.iter().sum();
        Ok(MatB {
            r: total as usize / 2,
            ..m
        })
    }

    /// `diag(hat(lambda))`.
    pub fn diagonal(lambda: &Composition) -> MatB {
        let hat = lambda.hat();
        let size = hat.len();
        let mut entries = vec![0u32; size * size];
        for (i, &x) in hat.iter().enumerate() {
            entries[i * size + i] = x as u32;
        }
        MatB {
            n: lambda.n(),
            r: lambda.r(),
            entries,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `N = 2n + 1`.
    pub fn size(&self) -> usize {
        2 * self.n + 1
    }

    /// `a_{i,j}`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.size() + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.size()).map(<[u32]>::to_vec).collect()
    }

    /// `a_{n+1,n+1}`.
    pub fn center(&self) -> u32 {
        self.get(self.n + 1, self.n + 1)
    }

    /// Row sums, a hat vector.
    pub fn ro(&self) -> Vec<usize> {
        let s = self.size();
        (1..=s).map(|i| (1..=s).map(|j| self.get(i, j) as usize).sum()).collect()
    }

    /// Column sums, a hat vector.
    pub fn co(&self) -> Vec<usize> {
        let s = self.size();
        (1..=s).map(|j| (1..=s).map(|i| self.get(i, j) as usize).sum()).collect()
    }

    pub fn row_composition(&self) -> Composition {
        Composition::from_hat(&self.ro()).expect("row sums of a centro-symmetric matrix")
    }

    pub fn col_composition(&self) -> Composition {
        Composition::from_hat(&self.co()).expect("column sums of a centro-symmetric matrix")
    }

    /// Entry sum of the upper right `n x n` block.
    pub fn corner_sum(&self) -> usize {
        let n = self.n;
        (1..=n)
            .flat_map(|i| (n + 2..=2 * n + 1).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j) as usize)
            .sum()
    }

    /// `+` iff the corner sum is even.
    pub fn sign(&self) -> Sign {
        Sign::from_parity(self.corner_sum().is_multiple_of(2))
    }

    pub fn is_diagonal(&self) -> bool {
        let s = self.size();
        (1..=s).all(|i| (1..=s).all(|j| i == j || self.get(i, j) == 0))
    }

    /// Adds `delta` at `(i, j)` and at its mirror (twice at the centre).
    fn add_theta(&self, cells: &[(usize, usize, i64)]) -> Result<MatB> {
        let s = self.size();
        let mut e: Vec<i64> = self.entries.iter().map(|&x| x as i64).collect();
        for &(i, j, delta) in cells {
            e[(i - 1) * s + (j - 1)] += delta;
            e[(s - i) * s + (s - j)] += delta;
        }
        if e.iter().any(|&x| x < 0) {
            return Err(Error::Invalid("shift makes an entry negative".into()));
        }
        Ok(MatB {
            n: self.n,
            r: self.r,
            entries: e.into_iter().map(|x| x as u32).collect(),
        })
    }

    fn check_shift(&self, h: usize, p: usize) -> Result<()> {
        if h == 0 || h > self.n || p == 0 || p > self.size() {
            return Err(Error::Invalid(format!("shift index (h={h}, p={p}) out of range")));
        }
        Ok(())
    }

    /// `A + E^theta_{h,p} - E^theta_{h+1,p}`.
    pub fn shift_up(&self, h: usize, p: usize) -> Result<MatB> {
        self.check_shift(h, p)?;
        self.add_theta(&[(h, p, 1), (h + 1, p, -1)])
    }

    /// `A - E^theta_{h,p} + E^theta_{h+1,p}`.
    pub fn shift_down(&self, h: usize, p: usize) -> Result<MatB> {
        self.check_shift(h, p)?;
        self.add_theta(&[(h, p, -1), (h + 1, p, 1)])
    }

    /// `diag(co) + E^theta_{h,h+1}` with `co` given by `mu`: the raising
    /// fundamental matrix whose column weight is `mu`. `None` if it would need
    /// a negative entry.
    pub fn raising(mu: &Composition, h: usize) -> Option<MatB> {
        let d = MatB::diagonal(mu);
        if h == 0 || h > mu.n() {
            return None;
        }
        d.add_theta(&[(h, h + 1, 1), (h + 1, h + 1, -1)]).ok()
    }

    /// `diag + E^theta_{h+1,h}` with column weight `mu`.
    pub fn lowering(mu: &Composition, h: usize) -> Option<MatB> {
        let d = MatB::diagonal(mu);
        if h == 0 || h > mu.n() {
            return None;
        }
        d.add_theta(&[(h + 1, h, 1), (h, h, -1)]).ok()
    }
}

impl fmt::Debug for MatB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl fmt::Display for MatB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// The number of matrices in `Xi_{N,2r}`: `C(2n^2 + 2n + r, r)`.
pub fn count_xi_b(n: usize, r: usize) -> num_bigint::BigInt {
    binomial((2 * n * n + 2 * n + r) as u64, r as u64)
}

/// All of `Xi_{N,2r}`, sorted.
///
/// The free data is rows `1..n`, the first `n` entries of row `n+1` and half
/// the centre: `2n^2 + 2n + 1` naturals summing to `r`.
pub fn enumerate_xi_b(n: usize, r: usize, budget: usize) -> Result<Vec<MatB>> {
    if n == 0 {
        return Err(Error::Config("n must be at least 1".into()));
    }
    let count = count_xi_b(n, r);
    if count > num_bigint::BigInt::from(budget) {
        return Err(Error::TooLarge {
            what: format!("Xi({n},{r})"),
            budget,
        });
    }
    let s = 2 * n + 1;
    let k = 2 * n * n + 2 * n + 1;
    let mut out: Vec<MatB> = weak_compositions(r, k)
        .into_iter()
        .map(|free| {
            let mut e = vec![0u32; s * s];
            let mut put = |i: usize, j: usize, x: u32| {
                e[i * s + j] = x;
                e[(s - 1 - i) * s + (s - 1 - j)] = x;
            };
            let mut it = free.into_iter();
            for i in 0..n {
                for j in 0..s {
                    put(i, j, it.next().unwrap() as u32);
                }
            }
            for j in 0..n {
                put(n, j, it.next().unwrap() as u32);
            }
            put(n, n, 2 * it.next().unwrap() as u32);
            MatB { n, r, entries: e }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// The class of a matrix, read from `(lambda_{n+1} = 0, centre = 0,
/// mu_{n+1} = 0)`. `D` stands for a dot (nonzero) and `O` for a circle
/// (zero) in the row, centre, column slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MatClass {
    /// Nonzero centre.
    Dotted,
    Ooo,
    Ood,
    Doo,
    Dod,
}

impl MatClass {
    pub fn label(self) -> &'static str {
        match self {
            MatClass::Dotted => "•Ξ",
            MatClass::Ooo => "∘∘∘Ξ",
            MatClass::Ood => "∘∘•Ξ",
            MatClass::Doo => "•∘∘Ξ",
            MatClass::Dod => "•∘•Ξ",
        }
    }
}

pub fn classify(a: &MatB) -> MatClass {
    if a.center() != 0 {
        return MatClass::Dotted;
    }
    let row_zero = a.row_composition().last() == 0;
    let col_zero = a.col_composition().last() == 0;
    match (row_zero, col_zero) {
        (true, true) => MatClass::Ooo,
        (true, false) => MatClass::Ood,
        (false, true) => MatClass::Doo,
        (false, false) => MatClass::Dod,
    }
}

/// `|Xi_D| + |class Dod|`, the size of the signed index set
/// `C(2n^2+2n+r, r) + C(2n^2+2n+r-1, r)`.
pub fn count_xi_d(n: usize, r: usize) -> num_bigint::BigInt {
    let k = (2 * n * n + 2 * n + r) as u64;
    binomial(k, r as u64) + binomial(k - 1, r as u64)
}

/// Closed form for the number of matrices of class `Dod`.
pub fn count_dod(n: usize, r: usize) -> num_bigint::BigInt {
    let r64 = r as u64;
    let (n, r) = (n as u64, r as u64);
    binomial(2 * n * n + 2 * n + r - 1, r64) - binomial(2 * n * n + n + r - 1, r64) * 2
        + binomial(2 * n * n + r - 1, r64)
}

/// Tag of a signed matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Dot,
    Signs(Sign, Sign),
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Dot => "dot",
            Tag::Signs(Sign::Plus, Sign::Plus) => "++",
            Tag::Signs(Sign::Minus, Sign::Minus) => "--",
            Tag::Signs(Sign::Plus, Sign::Minus) => "+-",
            Tag::Signs(Sign::Minus, Sign::Plus) => "-+",
        }
    }

    pub fn parse(s: &str) -> Result<Tag> {
        Ok(match s {
            "dot" => Tag::Dot,
            "++" => Tag::Signs(Sign::Plus, Sign::Plus),
            "--" => Tag::Signs(Sign::Minus, Sign::Minus),
            "+-" => Tag::Signs(Sign::Plus, Sign::Minus),
            "-+" => Tag::Signs(Sign::Minus, Sign::Plus),
            _ => return Err(Error::Invalid(format!("unknown tag {s:?}"))),
        })
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A signed index. Invariants: the tag is `Dot` iff the centre is nonzero,
/// and a sign tag `(e1, e2)` has `e1 * e2 = sign(base)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatD {
    pub base: MatB,
    pub tag: Tag,
}

#[derive(Serialize, Deserialize)]
struct MatDWire {
    n: usize,
    r: usize,
    entries: Vec<Vec<u32>>,
    tag: String,
}

impl Serialize for MatD {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatDWire {
            n: self.base.n,
            r: self.base.r,
            entries: self.base.rows(),
            tag: self.tag.as_str().to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatD {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = MatDWire::deserialize(d)?;
        let base = MatB::new(w.entries).map_err(serde::de::Error::custom)?;
        if base.n != w.n || base.r != w.r {
            return Err(serde::de::Error::custom("n or r disagrees with the entries"));
        }
        let tag = Tag::parse(&w.tag).map_err(serde::de::Error::custom)?;
        MatD::new(base, tag).map_err(serde::de::Error::custom)
    }
}

impl MatD {
    pub fn new(base: MatB, tag: Tag) -> Result<Self> {
        match tag {
            Tag::Dot if base.center() == 0 => {
                Err(Error::Invalid("dot tag needs a nonzero centre".into()))
            }
            Tag::Signs(..) if base.center() != 0 => {
                Err(Error::Invalid("sign tag needs a zero centre".into()))
            }
            Tag::Signs(e1, e2) if e1.times(e2) != base.sign() => Err(Error::Invalid(format!(
                "tag {tag} disagrees with corner sign {:?}",
                base.sign()
            ))),
            _ => Ok(MatD { base, tag }),
        }
    }

    pub fn dot(base: MatB) -> Result<Self> {
        Self::new(base, Tag::Dot)
    }

    /// The admissible tags of a matrix: `dot`, or the two sign pairs whose
    /// product is the corner sign.
    pub fn tags_for(base: &MatB) -> Vec<Tag> {
        if base.center() != 0 {
            return vec![Tag::Dot];
        }
        match base.sign() {
            Sign::Plus => vec![Tag::Signs(Sign::Plus, Sign::Plus), Tag::Signs(Sign::Minus, Sign::Minus)],
            Sign::Minus => vec![Tag::Signs(Sign::Plus, Sign::Minus), Tag::Signs(Sign::Minus, Sign::Plus)],
        }
    }

    /// Row weight: `lambda` with mark `e1` when `lambda_{n+1} = 0`, else
    /// dotted.
    pub fn row_weight(&self) -> SignedComposition {
        let lambda = self.base.row_composition();
        let mark = match (lambda.last(), self.tag) {
            (0, Tag::Signs(e1, _)) => e1.into(),
            _ => Mark::Dot,
        };
        SignedComposition { base: lambda, mark }
    }

    /// Column weight: `mu` with mark `e2` when `mu_{n+1} = 0`, else dotted.
    pub fn col_weight(&self) -> SignedComposition {
        let mu = self.base.col_composition();
        let mark = match (mu.last(), self.tag) {
            (0, Tag::Signs(_, e2)) => e2.into(),
            _ => Mark::Dot,
        };
        SignedComposition { base: mu, mark }
    }
}

impl fmt::Debug for MatD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.base, self.tag)
    }
}

impl fmt::Display for MatD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base, self.tag)
    }
}

/// All signed indices, sorted.
pub fn enumerate_xi_d(n: usize, r: usize, budget: usize) -> Result<Vec<MatD>> {
    let mut out: Vec<MatD> = enumerate_xi_b(n, r, budget)?
        .into_iter()
        .flat_map(|a| {
            MatD::tags_for(&a)
                .into_iter()
                .map(move |tag| MatD { base: a.clone(), tag })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// The intersection-size matrix `(|R_i cap d R_j|)` of a distinguished
/// double coset representative.
pub fn coset_to_matrix(lambda: &Composition, d: &SignedPerm, mu: &Composition) -> Result<MatB> {
    let r = lambda.r();
    if mu.r() != r || mu.n() != lambda.n() || d.rank() != r {
        return Err(Error::Invalid("compositions and permutation disagree on n or r".into()));
    }
    let left = ParabolicSpec::type_b(lambda);
    let right = ParabolicSpec::type_b(mu);
    if left.generators.iter().any(|&g| d.is_left_descent(g))
        || right.generators.iter().any(|&g| d.is_right_descent(g))
    {
        return Err(Error::NotDistinguished);
    }
    let rows = tabloid_b(lambda);
    let cols = tabloid_b(mu);
    let mut row_of = vec![0usize; 2 * r + 1];
    for (i, block) in rows.iter().enumerate() {
        for &x in block {
            row_of[x] = i;
        }
    }
    let s = rows.len();
    let mut entries = vec![0u32; s * s];
    for (j, block) in cols.iter().enumerate() {
        for &x in block {
            entries[row_of[d.apply(x)] * s + j] += 1;
        }
    }
    Ok(MatB {
        n: lambda.n(),
        r,
        entries,
    })
}

/// The distinguished representative `d_A`: the `k`-th point of cell `(i,j)`
/// in column-major order goes to the `k`-th point of the same cell in
/// row-major order.
pub fn matrix_to_da(a: &MatB) -> SignedPerm {
    let s = a.size();
    let mut row_start = vec![0usize; s * s];
    let mut acc = 0;
    for i in 1..=s {
        for j in 1..=s {
            row_start[(i - 1) * s + (j - 1)] = acc;
            acc += a.get(i, j) as usize;
        }
    }
    let mut images = vec![0usize; 2 * a.r];
    let mut col_acc = 0;
    for j in 1..=s {
        for i in 1..=s {
            let cell = a.get(i, j) as usize;
            let start = row_start[(i - 1) * s + (j - 1)];
            for k in 0..cell {
                images[col_acc + k] = start + k + 1;
            }
            col_acc += cell;
        }
    }
    SignedPerm::from_images(&images).expect("d_A of a centro-symmetric matrix is centro-symmetric")
}
