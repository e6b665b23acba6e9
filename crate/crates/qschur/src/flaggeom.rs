//! Isotropic flags over a small prime field `F_p`.
//!
//! `V = F_p^{2r}` carries the split symmetric form
//! `<x, y> = sum_i x_i y_{2r+1-i}`. An `n`-step isotropic flag is extended to
//! `N = 2n + 1` steps by `F_{N-i} = F_i^perp`, and a pair of flags determines
//! the orbit matrix `m(F, F')` whose entries are the successive dimension
//! jumps of `F_{i-1} + F_i & F'_j`. Orbits of pairs under the orthogonal group
//! are classified by that matrix; orbits under the special orthogonal group
//! additionally carry the sign labels computed by [`so_labels`].
//!
//! Everything here is counted by brute force. The structure constants of the
//! convolution algebra obtained this way specialize the generic formulas at
//! `q = p`, which makes this module an oracle independent of the Hecke
//! algebra side.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcomb::{enumerate_xi_b, MatB, MatD, Sign, Tag};
use crate::schurd::{coef_lower, Direction, Fundamental};

/// Largest supported prime; entries are stored as bytes.
pub const MAX_PRIME: u32 = 251;

/// Rejects anything that is not an odd prime up to [`MAX_PRIME`].
pub fn check_prime(p: u32) -> Result<()> {
    let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if !prime || p == 2 || p > MAX_PRIME {
        return Err(Error::Config(format!("p = {p} must be an odd prime at most {MAX_PRIME}")));
    }
    Ok(())
}

fn inv_mod(a: u8, p: u32) -> u32 {
    // Fermat: a^(p-2).
    let mut base = a as u32 % p;
    let mut e = p - 2;
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Reduced row echelon form; zero rows are dropped.
fn rref(mut rows: Vec<Vec<u8>>, p: u32) -> Vec<Vec<u8>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = (*x as u32 * inv % p) as u8;
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[c] == 0 {
                continue;
            }
            let f = row[c] as u32;
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = ((*x as u32 + p * p - f * y as u32) % p) as u8;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

fn pivot_col(row: &[u8]) -> usize {
    row.iter().position(|&x| x != 0).expect("rref rows are nonzero")
}

/// A subspace of `F_p^{2r}` in canonical (reduced row echelon) form, so
/// equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    p: u32,
    len: usize,
    rows: Vec<Vec<u8>>,
}

impl Subspace {
    pub fn zero(p: u32, len: usize) -> Self {
        Subspace { p, len, rows: Vec::new() }
    }

    pub fn full(p: u32, len: usize) -> Self {
        let rows = (0..len)
            .map(|i| {
                let mut v = vec![0u8; len];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { p, len, rows }
    }

    pub fn span(p: u32, len: usize, vectors: Vec<Vec<u8>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == len && v.iter().all(|&x| (x as u32) < p)));
        Subspace {
            p,
            len,
            rows: rref(vectors, p),
        }
    }

    /// The span of the standard basis vectors `e_k` for 1-based `k` in `ks`.
    pub fn coordinate(p: u32, len: usize, ks: impl IntoIterator<Item = usize>) -> Self {
        let vs = ks
            .into_iter()
            .map(|k| {
                let mut v = vec![0u8; len];
                v[k - 1] = 1;
                v
            })
            .collect();
        Self::span(p, len, vs)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim_ambient(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.rows
    }

    fn form(&self, x: &[u8], y: &[u8]) -> u32 {
        let n = self.len;
        (0..n).map(|i| x[i] as u32 * y[n - 1 - i] as u32).sum::<u32>() % self.p
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let p = self.p;
        let mut v = v.to_vec();
        for row in &self.rows {
            let c = pivot_col(row);
            let f = v[c] as u32;
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = ((*x as u32 + p * p - f * y as u32) % p) as u8;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.rows.clone();
        vs.extend(other.rows.iter().cloned());
        Subspace::span(self.p, self.len, vs)
    }

    pub fn with_vector(&self, v: &[u8]) -> Subspace {
        let mut vs = self.rows.clone();
        vs.push(v.to_vec());
        Subspace::span(self.p, self.len, vs)
    }

    /// Orthogonal complement: the null space of the basis with columns
    /// reversed, since `<u, x> = sum_j u_{2r+1-j} x_j`.
    pub fn perp(&self) -> Subspace {
        let p = self.p;
        let n = self.len;
        let reversed: Vec<Vec<u8>> = self.rows.iter().map(|r| r.iter().rev().copied().collect()).collect();
        let m = rref(reversed, p);
        let pivots: Vec<usize> = m.iter().map(|r| pivot_col(r)).collect();
        let mut out = Vec::new();
        for f in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u8; n];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = ((p - row[f] as u32) % p) as u8;
            }
            out.push(v);
        }
        Subspace::span(p, n, out)
    }

    /// `U & W = (U^perp + W^perp)^perp`; valid because the form is
    /// nondegenerate.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.perp().sum(&other.perp()).perp()
    }

    pub fn is_isotropic(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, x)| self.rows[i..].iter().all(|y| self.form(x, y) == 0))
    }

    /// The image under the coordinate swap `e_r <-> e_{r+1}`, an element of
    /// the orthogonal group with determinant -1.
    pub fn swap_middle(&self) -> Subspace {
        let r = self.len / 2;
        let vs = self
            .rows
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.swap(r - 1, r);
                w
            })
            .collect();
        Subspace::span(self.p, self.len, vs)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            for x in row {
                write!(f, "{x}")?;
            }
        }
        write!(f, ">")
    }
}

/// An isotropic flag stored with all `N + 1` steps `F_0 = 0, ..., F_N = V`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IsoFlag {
    n: usize,
    steps: Vec<Subspace>,
}

impl IsoFlag {
    /// Builds a flag from its isotropic part `F_1 <= ... <= F_n` and extends
    /// it by perps.
    pub fn new(p: u32, r: usize, partial: Vec<Subspace>) -> Result<Self> {
        let n = partial.len();
        let big_n = 2 * n + 1;
        let mut steps = Vec::with_capacity(big_n + 1);
        steps.push(Subspace::zero(p, 2 * r));
        for s in partial {
            if s.len != 2 * r || s.p != p {
                return Err(Error::AmbientMismatch(format!("subspace of F_{}^{} in F_{p}^{}", s.p, s.len, 2 * r)));
            }
            if !s.is_isotropic() {
                return Err(Error::Invalid(format!("{s:?} is not isotropic")));
            }
            if !s.contains_subspace(steps.last().expect("nonempty")) {
                return Err(Error::Invalid("flag steps are not nested".into()));
            }
            steps.push(s);
        }
        for i in (0..=n).rev() {
            let perp = steps[i].perp();
            steps.push(perp);
        }
        debug_assert_eq!(steps.len(), big_n + 1);
        Ok(IsoFlag { n, steps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `F_i` for `0 <= i <= N`.
    pub fn step(&self, i: usize) -> &Subspace {
        &self.steps[i]
    }

    /// Dimension jumps `dim F_i - dim F_{i-1}` for `i = 1..=N`.
    pub fn dims(&self) -> Vec<usize> {
        self.steps.windows(2).map(|w| w[1].dim() - w[0].dim()).collect()
    }

    fn swap_middle(&self) -> IsoFlag {
        IsoFlag {
            n: self.n,
            steps: self.steps.iter().map(Subspace::swap_middle).collect(),
        }
    }
}

/// The orbit matrix `m(F, F')`.
pub fn orbit_matrix(f: &IsoFlag, g: &IsoFlag) -> Result<MatB> {
    if f.n != g.n || f.steps[0].len != g.steps[0].len || f.steps[0].p != g.steps[0].p {
        return Err(Error::AmbientMismatch("flags live in different varieties".into()));
    }
    let big_n = 2 * f.n + 1;
    let mut rows = Vec::with_capacity(big_n);
    for i in 1..=big_n {
        let prev_step = &f.steps[i - 1];
        let mut prev = prev_step.dim();
        let mut row = Vec::with_capacity(big_n);
        for j in 1..=big_n {
            let cur = prev_step.sum(&f.steps[i].intersect(&g.steps[j])).dim();
            row.push((cur - prev) as u32);
            prev = cur;
        }
        rows.push(row);
    }
    MatB::new(rows)
}

/// `dim((F_n + F_{n+1} & F'_{n+1}) & M_r)` with `M_r = <e_1, ..., e_r>`.
fn middle_meet_dim(f: &IsoFlag, g: &IsoFlag) -> usize {
    let n = f.n;
    let len = f.steps[0].len;
    let m_r = Subspace::coordinate(f.steps[0].p, len, 1..=len / 2);
    f.steps[n].sum(&f.steps[n + 1].intersect(&g.steps[n + 1])).intersect(&m_r).dim()
}

fn labels_given(f: &IsoFlag, g: &IsoFlag, m: &MatB) -> Tag {
    if m.center() != 0 {
        return Tag::Dot;
    }
    let r = m.r();
    let e1 = Sign::from_parity((middle_meet_dim(f, g) + r).is_multiple_of(2));
    let e2 = Sign::from_parity((middle_meet_dim(g, f) + r).is_multiple_of(2));
    Tag::Signs(e1, e2)
}

/// The special-orthogonal refinement of the orbit of `(F, F')`: `dot` when
/// the centre of `m(F, F')` is nonzero, otherwise the sign pair read from the
/// parities of `d(F, F') - r` and `d(F', F) - r`.
pub fn so_labels(f: &IsoFlag, g: &IsoFlag) -> Result<Tag> {
    let m = orbit_matrix(f, g)?;
    Ok(labels_given(f, g, &m))
}

/// The standard representative of the orbit of `A` on the basis `e_k`: `F`
/// spans the first rows of cells and `F^A` spans the first columns, where
/// cell `(j, l)` owns the row-major interval of length `a_{j,l}`.
pub fn make_orbit_rep(a: &MatB, p: u32) -> Result<(IsoFlag, IsoFlag)> {
    check_prime(p)?;
    let n = a.n();
    let s = a.size();
    let len = 2 * a.r();
    let mut start = vec![vec![0usize; s + 1]; s + 1];
    let mut next = 1;
    for (j, row) in start.iter_mut().enumerate().skip(1) {
        for (l, slot) in row.iter_mut().enumerate().skip(1) {
            *slot = next;
            next += a.get(j, l) as usize;
        }
    }
    let cell = |j: usize, l: usize| start[j][l]..start[j][l] + a.get(j, l) as usize;
    let rows_upto = |i: usize| Subspace::coordinate(p, len, (1..=i).flat_map(|j| (1..=s).flat_map(move |l| cell(j, l))));
    let cols_upto = |i: usize| Subspace::coordinate(p, len, (1..=i).flat_map(|l| (1..=s).flat_map(move |j| cell(j, l))));
    let f = IsoFlag::new(p, a.r(), (1..=n).map(rows_upto).collect())?;
    let g = IsoFlag::new(p, a.r(), (1..=n).map(cols_upto).collect())?;
    Ok((f, g))
}

/// Number of isotropic lines in `F_p^{2r}`, by enumeration of normalized
/// vectors.
pub fn count_isotropic_lines(p: u32, r: usize) -> Result<u64> {
    check_prime(p)?;
    Ok(isotropic_lines(p, r).len() as u64)
}

fn all_vectors(p: u32, len: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = (p as u64).pow(len as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0u8; len];
        for x in v.iter_mut() {
            *x = (k % p as u64) as u8;
            k /= p as u64;
        }
        v
    })
}

fn self_form(p: u32, v: &[u8]) -> u32 {
    let n = v.len();
    (0..n).map(|i| v[i] as u32 * v[n - 1 - i] as u32).sum::<u32>() % p
}

/// One vector per isotropic line: first nonzero coordinate equal to 1.
fn isotropic_lines(p: u32, r: usize) -> Vec<Vec<u8>> {
    all_vectors(p, 2 * r)
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1) && self_form(p, v) == 0)
        .collect()
}

/// Every isotropic subspace of `F_p^{2r}`, grouped by dimension.
pub fn isotropic_subspaces(p: u32, r: usize, budget: usize) -> Result<Vec<Vec<Subspace>>> {
    check_prime(p)?;
    let lines = isotropic_lines(p, r);
    let mut levels = vec![vec![Subspace::zero(p, 2 * r)]];
    let mut total = 1;
    for _ in 1..=r {
        let prev = levels.last().expect("nonempty");
        let next: HashSet<Subspace> = prev
            .par_iter()
            .flat_map_iter(|u| {
                lines
                    .iter()
                    .filter(|v| u.rows.iter().all(|x| u.form(x, v) == 0) && !u.contains(v))
                    .map(|v| u.with_vector(v))
                    .collect::<Vec<_>>()
            })
            .collect();
        total += next.len();
        if total > budget {
            return Err(Error::TooLarge {
                what: format!("isotropic subspaces of F_{p}^{}", 2 * r),
                budget,
            });
        }
        let mut next: Vec<Subspace> = next.into_iter().collect();
        next.sort();
        levels.push(next);
    }
    Ok(levels)
}

/// Every `n`-step isotropic flag in `F_p^{2r}`, in canonical order.
pub fn enumerate_flags(n: usize, r: usize, p: u32, budget: usize) -> Result<Vec<IsoFlag>> {
    if n == 0 {
        return Err(Error::Invalid("flags need at least one step".into()));
    }
    let subs: Vec<Subspace> = isotropic_subspaces(p, r, budget)?.into_iter().flatten().collect();
    let mut chains: Vec<Vec<usize>> = (0..subs.len()).map(|i| vec![i]).collect();
    for _ in 1..n {
        let mut longer = Vec::new();
        for c in &chains {
            let top = &subs[*c.last().expect("nonempty")];
            for (j, s) in subs.iter().enumerate() {
                if s.dim() >= top.dim() && s.contains_subspace(top) {
                    let mut d = c.clone();
                    d.push(j);
                    longer.push(d);
                }
            }
            if longer.len() > budget {
                return Err(Error::TooLarge {
                    what: format!("{n}-step isotropic flags in F_{p}^{}", 2 * r),
                    budget,
                });
            }
        }
        chains = longer;
    }
    if chains.len() > budget {
        return Err(Error::TooLarge {
            what: format!("{n}-step isotropic flags in F_{p}^{}", 2 * r),
            budget,
        });
    }
    let mut flags: Vec<IsoFlag> = chains
        .into_par_iter()
        .map(|c| IsoFlag::new(p, r, c.into_iter().map(|i| subs[i].clone()).collect()))
        .collect::<Result<_>>()?;
    flags.sort();
    Ok(flags)
}

/// Consistency report for the orbit invariants over all pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SplitCensus {
    /// Distinct orbit matrices observed.
    pub orbits: usize,
    /// Orbits that carry two sign labels.
    pub split: usize,
    /// Orbits that carry only `dot`.
    pub unsplit: usize,
    /// Orbits whose observed labels are not the admissible set of their
    /// matrix.
    pub violations: Vec<MatB>,
}

/// All `n`-step isotropic flags with the orbit matrix and labels of every
/// ordered pair precomputed.
pub struct FlagVariety {
    n: usize,
    r: usize,
    p: u32,
    flags: Vec<IsoFlag>,
    index: HashMap<IsoFlag, usize>,
    table: Vec<MatB>,
    tags: Vec<Tag>,
}

impl FlagVariety {
    /// `budget` bounds the number of flags; the pair table has its square.
    pub fn new(n: usize, r: usize, p: u32, budget: usize) -> Result<Self> {
        let flags = enumerate_flags(n, r, p, budget)?;
        let len = flags.len();
        let pairs: Vec<(MatB, Tag)> = (0..len * len)
            .into_par_iter()
            .map(|k| {
                let (f, g) = (&flags[k / len], &flags[k % len]);
                let m = orbit_matrix(f, g)?;
                let t = labels_given(f, g, &m);
                Ok((m, t))
            })
            .collect::<Result<_>>()?;
        let (table, tags) = pairs.into_iter().unzip();
        let index = flags.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        Ok(FlagVariety {
            n,
            r,
            p,
            flags,
            index,
            table,
            tags,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn flags(&self) -> &[IsoFlag] {
        &self.flags
    }

    pub fn index_of(&self, f: &IsoFlag) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn matrix(&self, i: usize, j: usize) -> &MatB {
        &self.table[i * self.flags.len() + j]
    }

    pub fn tag(&self, i: usize, j: usize) -> Tag {
        self.tags[i * self.flags.len() + j]
    }

    fn check_index(&self, a: &MatB) -> Result<()> {
        if a.n() != self.n || a.r() != self.r {
            return Err(Error::AmbientMismatch(format!(
                "index at (n, r) = ({}, {}) in the variety at ({}, {})",
                a.n(),
                a.r(),
                self.n,
                self.r
            )));
        }
        Ok(())
    }

    /// Indices of the standard representative of the orbit of `a`.
    pub fn rep(&self, a: &MatB) -> Result<(usize, usize)> {
        self.check_index(a)?;
        let (f, g) = make_orbit_rep(a, self.p)?;
        let missing = || Error::Invalid("representative flag is not in the variety".into());
        let x = self.index_of(&f).ok_or_else(missing)?;
        let y = self.index_of(&g).ok_or_else(missing)?;
        debug_assert_eq!(self.matrix(x, y), a);
        Ok((x, y))
    }

    /// A representative of the special-orthogonal orbit of `a`: the standard
    /// pair, moved by the coordinate swap `e_r <-> e_{r+1}` if its labels
    /// are the other ones.
    pub fn rep_d(&self, a: &MatD) -> Result<(usize, usize)> {
        let (x, y) = self.rep(&a.base)?;
        if self.tag(x, y) == a.tag {
            return Ok((x, y));
        }
        let missing = || Error::Invalid("swapped representative is not in the variety".into());
        let x2 = self.index_of(&self.flags[x].swap_middle()).ok_or_else(missing)?;
        let y2 = self.index_of(&self.flags[y].swap_middle()).ok_or_else(missing)?;
        if self.tag(x2, y2) != a.tag {
            return Err(Error::Invalid(format!("no pair with labels {} over {:?}", a.tag, a.base)));
        }
        Ok((x2, y2))
    }

    /// `#{z : m(x, z) = b, m(z, y) = a}` for `(x, y)` in the orbit of `a2`.
    pub fn convolution_constant(&self, b: &MatB, a: &MatB, a2: &MatB) -> Result<u64> {
        self.check_index(b)?;
        self.check_index(a)?;
        let (x, y) = self.rep(a2)?;
        Ok((0..self.len())
            .into_par_iter()
            .filter(|&z| self.matrix(x, z) == b && self.matrix(z, y) == a)
            .count() as u64)
    }

    /// The same count for special-orthogonal orbits.
    pub fn convolution_constant_d(&self, b: &MatD, a: &MatD, a2: &MatD) -> Result<u64> {
        self.check_index(&b.base)?;
        self.check_index(&a.base)?;
        let (x, y) = self.rep_d(a2)?;
        Ok((0..self.len())
            .into_par_iter()
            .filter(|&z| {
                self.matrix(x, z) == &b.base
                    && self.tag(x, z) == b.tag
                    && self.matrix(z, y) == &a.base
                    && self.tag(z, y) == a.tag
            })
            .count() as u64)
    }

    /// `e_b * e_a` expanded by counting, as a map to nonzero constants.
    pub fn product_b(&self, b: &MatB, a: &MatB) -> Result<BTreeMap<MatB, u64>> {
        self.check_index(b)?;
        self.check_index(a)?;
        let mut out = BTreeMap::new();
        if b.co() != a.ro() {
            return Ok(out);
        }
        for a2 in enumerate_xi_b(self.n, self.r, usize::MAX)? {
            if a2.ro() != b.ro() || a2.co() != a.co() {
                continue;
            }
            let c = self.convolution_constant(b, a, &a2)?;
            if c != 0 {
                out.insert(a2, c);
            }
        }
        Ok(out)
    }

    /// Splits the intermediate flags of the central lowering step by the
    /// labels of `(E, F')`.
    ///
    /// With `A'` the matrix `A - E_{n,n+1} + E_{n+1,n+1}` (symmetrized) and
    /// `C` the lowering matrix at `h = n` with column weight `ro(A)`, counts
    /// `E` with `m(F, E) = C` and `m(E, F') = A` for `(F, F')` in the orbit of
    /// `A'`. Returns the counts with first label `+` and `-`.
    pub fn verify_halving(&self, a: &MatB) -> Result<(u64, u64)> {
        self.check_index(a)?;
        let n = self.n;
        if a.center() != 0 {
            return Err(Error::Invalid("halving needs a zero centre".into()));
        }
        if a.get(n, n + 1) == 0 {
            return Ok((0, 0));
        }
        let a2 = a.shift_down(n, n + 1)?;
        let c = MatB::lowering(&a.row_composition(), n)
            .ok_or_else(|| Error::Invalid("no lowering matrix for this weight".into()))?;
        let (x, y) = self.rep(&a2)?;
        let (plus, minus) = (0..self.len())
            .into_par_iter()
            .filter(|&z| self.matrix(x, z) == &c && self.matrix(z, y) == a)
            .map(|z| match self.tag(z, y) {
                Tag::Signs(Sign::Plus, _) => (1u64, 0u64),
                _ => (0, 1),
            })
            .reduce(|| (0, 0), |u, v| (u.0 + v.0, u.1 + v.1));
        Ok((plus, minus))
    }

    /// The halving target: `g'` at `q = p` for the same instance.
    pub fn halving_target(&self, a: &MatB) -> u64 {
        let g = coef_lower(a, self.n, self.n + 1);
        u64::try_from(g.eval_at(self.p as i64)).expect("nonnegative coefficient")
    }

    /// Number of distinct orbit matrices over all ordered pairs.
    pub fn orbit_census(&self) -> usize {
        self.table.iter().collect::<HashSet<_>>().len()
    }

    /// Checks that each orbit carries exactly its admissible labels: `dot`
    /// for a nonzero centre, both sign pairs with product `sign(A)` otherwise.
    pub fn split_census(&self) -> SplitCensus {
        let mut seen: BTreeMap<&MatB, BTreeSet<Tag>> = BTreeMap::new();
        for (m, t) in self.table.iter().zip(&self.tags) {
            seen.entry(m).or_default().insert(*t);
        }
        let mut out = SplitCensus {
            orbits: seen.len(),
            ..SplitCensus::default()
        };
        for (m, tags) in seen {
            let want: BTreeSet<Tag> = MatD::tags_for(m).into_iter().collect();
            if tags != want {
                out.violations.push(m.clone());
            } else if tags.len() == 2 {
                out.split += 1;
            } else {
                out.unsplit += 1;
            }
        }
        out
    }

    /// Pairs whose labels violate `e1 * e2 = sign(m)`.
    pub fn label_sign_violations(&self) -> usize {
        self.table
            .par_iter()
            .zip(self.tags.par_iter())
            .filter(|(m, t)| MatD::new((*m).clone(), **t).is_err())
            .count()
    }

    /// Checks the one-step move: whenever `m(F, E)` is the lowering matrix at
    /// `h` and `m(E, F') = A`, the matrix `m(F, F')` is `A` with one unit
    /// moved from row `h` to row `h + 1` in some column. Returns the number of
    /// triples checked and the number that failed.
    pub fn one_step_check(&self) -> (u64, u64) {
        let len = self.len();
        let moves: Vec<(usize, usize, usize)> = (0..len * len)
            .filter_map(|k| {
                let (f, e) = (k / len, k % len);
                let fund = Fundamental::from_matrix(self.matrix(f, e)).ok()?;
                (fund.direction == Direction::Lower).then_some((f, e, fund.h))
            })
            .collect();
        moves
            .par_iter()
            .map(|&(f, e, h)| {
                let mut bad = 0;
                for g in 0..len {
                    let a = self.matrix(e, g);
                    let target = self.matrix(f, g);
                    let hit = (1..=a.size()).any(|p| a.shift_down(h, p).is_ok_and(|m| &m == target));
                    if !hit {
                        bad += 1;
                    }
                }
                (len as u64, bad)
            })
            .reduce(|| (0, 0), |u, v| (u.0 + v.0, u.1 + v.1))
    }
}

/// Predicted `#Z_3` (isotropic lines in `F_3` not in `F_2`) for a 2-step
/// flag with dimension jumps `a`.
pub fn predicted_z3(a: &[usize], p: u32) -> u64 {
    let p = p as u64;
    if a[2] == 0 {
        return 0;
    }
    let g = (p.pow(a[2] as u32 - 1) - 1) / (p - 1);
    p.pow((a[0] + a[1]) as u32) * (g + p.pow(a[2] as u32 / 2 - 1))
}

/// Predicted `#Z_4` (isotropic lines in `F_4` not in `F_3`).
pub fn predicted_z4(a: &[usize], p: u32) -> u64 {
    let p = p as u64;
    let e = a[0] + a[1] + a[2];
    if a[3] == 0 || e == 0 {
        return 0;
    }
    p.pow(e as u32 - 1) * (p.pow(a[3] as u32) - 1) / (p - 1)
}

/// Compares the predicted line counts with enumeration over every 2-step
/// isotropic flag. Returns the number of flags checked and failures.
pub fn grass_check(r: usize, p: u32, budget: usize) -> Result<(u64, u64)> {
    let flags = enumerate_flags(2, r, p, budget)?;
    let lines: Vec<Subspace> = isotropic_lines(p, r)
        .into_iter()
        .map(|v| Subspace::span(p, 2 * r, vec![v]))
        .collect();
    let count = |outer: &Subspace, inner: &Subspace| {
        lines
            .iter()
            .filter(|l| outer.contains_subspace(l) && !inner.contains_subspace(l))
            .count() as u64
    };
    let bad = flags
        .par_iter()
        .filter(|f| {
            let a = f.dims();
            count(f.step(3), f.step(2)) != predicted_z3(&a, p) || count(f.step(4), f.step(3)) != predicted_z4(&a, p)
        })
        .count() as u64;
    Ok((flags.len() as u64, bad))
}
