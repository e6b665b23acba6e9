//! Weyl groups of types B and D as centro-symmetric permutations of `[1, 2r]`.
//!
//! A [`SignedPerm`] stores the one-line form `(w(1), ..., w(2r))` and always
//! satisfies `w(j) + w(2r+1-j) = 2r+1`. Products are composition of maps:
//! `(uv)(j) = u(v(j))`, so right multiplication by a generator permutes
//! positions and left multiplication permutes values.
//!
//! Lengths come from greedy descent reduction; [`WeylGroup`] additionally
//! enumerates a whole group by breadth-first search and tabulates
//! multiplication by generators, which the Hecke and coset code builds on.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matcomb::{Composition, Mark, SignedComposition};

/// Coxeter type of an ambient group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoxeterType {
    B,
    D,
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::B => write!(f, "B"),
            CoxeterType::D => write!(f, "D"),
        }
    }
}

/// A Coxeter generator label: `s_i` (1-based) or the type-D generator
/// `varsigma = s_r s_{r-1} s_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    S(usize),
    Varsigma,
}

impl Gen {
    pub fn label(&self) -> String {
        match self {
            Gen::S(i) => format!("s{i}"),
            Gen::Varsigma => "varsigma".to_string(),
        }
    }

    /// Parses `s3`, `varsigma` or `ς`.
    pub fn parse(label: &str) -> Result<Gen> {
        match label {
            "varsigma" | "ς" => Ok(Gen::Varsigma),
            _ => label
                .strip_prefix('s')
                .and_then(|i| i.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .map(Gen::S)
                .ok_or(Error::BadLabel {
                    label: label.to_string(),
                    rank: 0,
                }),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The Coxeter generators of the ambient group, in a fixed order.
pub fn coxeter_generators(ty: CoxeterType, r: usize) -> Vec<Gen> {
    match ty {
        CoxeterType::B => (1..=r).map(Gen::S).collect(),
        CoxeterType::D => (1..r).map(Gen::S).chain(std::iter::once(Gen::Varsigma)).collect(),
    }
}

/// An element of `W(B_r)` as a centro-symmetric permutation of `[1, 2r]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    images: Vec<u16>,
}

impl SignedPerm {
    pub fn identity(r: usize) -> Self {
        SignedPerm {
            images: (1..=2 * r as u16).collect(),
        }
    }

    /// Validates bijectivity and centro-symmetry of a one-line form.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        if !m.is_multiple_of(2) {
            return Err(Error::Invalid(format!("odd one-line length {m}")));
        }
        let mut seen = vec![false; m + 1];
        for &x in images {
            if x == 0 || x > m || seen[x] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        for j in 0..m {
            if images[j] + images[m - 1 - j] != m + 1 {
                return Err(Error::Invalid(format!("{images:?} is not centro-symmetric")));
            }
        }
        Ok(SignedPerm {
            images: images.iter().map(|&x| x as u16).collect(),
        })
    }

    /// Builds `w` from its cycles on `[1, 2r]`; unlisted points are fixed.
    pub fn from_cycles(r: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=2 * r).collect();
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                if a == 0 || a > 2 * r {
                    return Err(Error::Invalid(format!("point {a} out of range")));
                }
                images[a - 1] = cyc[(k + 1) % cyc.len()];
            }
        }
        Self::from_images(&images)
    }

    pub fn rank(&self) -> usize {
        self.images.len() / 2
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `w(j)` for 1-based `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1] as usize
    }

    /// The product `self * other`, i.e. `j -> self(other(j))`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        debug_assert_eq!(self.images.len(), other.images.len());
        SignedPerm {
            images: other.images.iter().map(|&j| self.images[j as usize - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut images = vec![0u16; self.images.len()];
        for (j, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = j as u16 + 1;
        }
        SignedPerm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &x)| x as usize == j + 1)
    }

    /// The image of a generator label at rank `r`.
    pub fn generator(r: usize, g: Gen) -> Result<SignedPerm> {
        let bad = || Error::BadLabel {
            label: g.label(),
            rank: r,
        };
        let m = 2 * r;
        match g {
            Gen::S(i) if i >= 1 && i < r => Self::from_cycles(r, &[&[i, i + 1], &[m + 1 - i, m - i]]),
            Gen::S(i) if i == r && r >= 1 => Self::from_cycles(r, &[&[r, r + 1]]),
            Gen::Varsigma if r >= 2 => Self::from_cycles(r, &[&[r - 1, r + 1], &[r, r + 2]]),
            _ => Err(bad()),
        }
    }

    /// `self * g`.
    pub fn mul_gen(&self, g: Gen) -> SignedPerm {
        let r = self.rank();
        let mut images = self.images.clone();
        match g {
            Gen::S(i) if i < r => {
                images.swap(i - 1, i);
                images.swap(2 * r - i, 2 * r - i - 1);
            }
            Gen::S(_) => images.swap(r - 1, r),
            Gen::Varsigma => {
                images.swap(r - 2, r);
                images.swap(r - 1, r + 1);
            }
        }
        SignedPerm { images }
    }

    /// `g * self`.
    pub fn gen_mul(&self, g: Gen) -> SignedPerm {
        self.inverse().mul_gen(g).inverse()
    }

    /// `#{ j in [1, r] : w(j) > r }`.
    pub fn n_r(&self) -> usize {
        let r = self.rank();
        self.images[..r].iter().filter(|&&x| x as usize > r).count()
    }

    /// Membership in the type-D subgroup (even `n_r`).
    pub fn in_type_d(&self) -> bool {
        self.n_r().is_multiple_of(2)
    }

    /// Whether `g` is a right descent, i.e. `l(w g) < l(w)`, read off the
    /// one-line form. Only generators of the ambient type are meaningful.
    pub fn is_right_descent(&self, g: Gen) -> bool {
        let r = self.rank();
        let w = |j: usize| self.images[j - 1];
        match g {
            Gen::S(i) if i < r => w(i) > w(i + 1),
            Gen::S(_) => w(r) > w(r + 1),
            Gen::Varsigma => w(r - 1) > w(r + 1),
        }
    }

    pub fn is_left_descent(&self, g: Gen) -> bool {
        self.inverse().is_right_descent(g)
    }

    /// A reduced word `g_1 ... g_k` with `w = g_1 * ... * g_k`, found by
    /// stripping right descents.
    pub fn reduced_word(&self, ty: CoxeterType) -> Vec<Gen> {
        let gens = coxeter_generators(ty, self.rank());
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(&g) = gens.iter().find(|&&g| w.is_right_descent(g)) {
            w = w.mul_gen(g);
            word.push(g);
        }
        debug_assert!(w.is_identity(), "greedy reduction must reach the identity");
        word.reverse();
        word
    }

    /// Coxeter length in the ambient of type `ty`.
    pub fn length(&self, ty: CoxeterType) -> usize {
        self.reduced_word(ty).len()
    }

    /// The flip automorphism `w -> s_r w s_r`.
    pub fn flip(&self) -> SignedPerm {
        let r = self.rank();
        self.mul_gen(Gen::S(r)).gen_mul(Gen::S(r))
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl Serialize for SignedPerm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedPerm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        SignedPerm::from_images(&v).map_err(serde::de::Error::custom)
    }
}

/// Which subgroup a [`ParabolicSpec`] describes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ParabolicKind {
    /// `W_lambda` in `W(B_r)`.
    B(Composition),
    /// `W_alpha` in the type-D group, keyed by the signed label.
    D(SignedComposition),
    /// The subgroup generated by an explicit set of Coxeter generators.
    Generated(CoxeterType),
}

/// A standard parabolic subgroup: its label plus its Coxeter generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParabolicSpec {
    pub kind: ParabolicKind,
    pub rank: usize,
    pub generators: Vec<Gen>,
}

impl ParabolicSpec {
    /// `W_lambda`: the stabilizer of the blocks of `hat(lambda)`.
    pub fn type_b(lambda: &Composition) -> Self {
        let r = lambda.r();
        let blocks = tabloid_b(lambda);
        let generators = stabilizing_generators(CoxeterType::B, r, &blocks);
        ParabolicSpec {
            kind: ParabolicKind::B(lambda.clone()),
            rank: r,
            generators,
        }
    }

    /// `W_alpha` in the type-D group for a signed composition.
    pub fn type_d(alpha: &SignedComposition) -> Self {
        let r = alpha.base.r();
        let blocks = tabloid_d(alpha);
        let generators = stabilizing_generators(CoxeterType::D, r, &blocks);
        ParabolicSpec {
            kind: ParabolicKind::D(alpha.clone()),
            rank: r,
            generators,
        }
    }

    pub fn generated(ty: CoxeterType, r: usize, generators: Vec<Gen>) -> Result<Self> {
        let allowed = coxeter_generators(ty, r);
        if let Some(g) = generators.iter().find(|g| !allowed.contains(g)) {
            return Err(Error::BadGenerator {
                label: g.label(),
                ambient: ty.to_string(),
            });
        }
        Ok(ParabolicSpec {
            kind: ParabolicKind::Generated(ty),
            rank: r,
            generators,
        })
    }

    pub fn ambient(&self) -> CoxeterType {
        match &self.kind {
            ParabolicKind::B(_) => CoxeterType::B,
            ParabolicKind::D(_) => CoxeterType::D,
            ParabolicKind::Generated(ty) => *ty,
        }
    }

    /// The blocks whose setwise stabilizer this subgroup is; empty for
    /// [`ParabolicKind::Generated`].
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        match &self.kind {
            ParabolicKind::B(l) => tabloid_b(l),
            ParabolicKind::D(a) => tabloid_d(a),
            ParabolicKind::Generated(_) => Vec::new(),
        }
    }
}

/// Blocks `R_i` of `hat(lambda)`: consecutive intervals of `[1, 2r]`.
pub fn tabloid_b(lambda: &Composition) -> Vec<Vec<usize>> {
    intervals(&lambda.hat())
}

/// The tabloid of a signed composition. For `+`/`-` only the blocks inside
/// `[1, r]` are listed (the rest are their mirrors); the `-` tabloid swaps `r`
/// for `r + 1` in the last nonempty block.
pub fn tabloid_d(alpha: &SignedComposition) -> Vec<Vec<usize>> {
    let lambda = &alpha.base;
    let n = lambda.n();
    let r = lambda.r();
    match alpha.mark {
        Mark::Dot => {
            let mut sizes: Vec<usize> = lambda.parts()[..n].to_vec();
            sizes.push(2 * lambda.parts()[n]);
            intervals(&sizes)
        }
        Mark::Plus | Mark::Minus => {
            let mut blocks = intervals(&lambda.parts()[..n]);
            if alpha.mark == Mark::Minus {
                if let Some(last) = blocks.iter_mut().rev().find(|b| !b.is_empty()) {
                    let k = last.iter().position(|&x| x == r).expect("last block ends at r");
                    last[k] = r + 1;
                }
            }
            blocks
        }
    }
}

fn intervals(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut start = 1;
    sizes
        .iter()
        .map(|&s| {
            let b: Vec<usize> = (start..start + s).collect();
            start += s;
            b
        })
        .collect()
}

fn stabilizes(w: &SignedPerm, blocks: &[Vec<usize>]) -> bool {
    blocks.iter().all(|b| b.iter().all(|&x| b.contains(&w.apply(x))))
}

fn stabilizing_generators(ty: CoxeterType, r: usize, blocks: &[Vec<usize>]) -> Vec<Gen> {
    coxeter_generators(ty, r)
        .into_iter()
        .filter(|&g| {
            SignedPerm::generator(r, g)
                .map(|w| stabilizes(&w, blocks))
                .unwrap_or(false)
        })
        .collect()
}

/// True when `w` lies in the setwise stabilizer of the parabolic's blocks.
pub fn stabilizes_blocks(spec: &ParabolicSpec, w: &SignedPerm) -> bool {
    stabilizes(w, &spec.blocks())
}

/// Closure of the parabolic's generators under multiplication.
pub fn enumerate_parabolic(spec: &ParabolicSpec, budget: usize) -> Result<Vec<SignedPerm>> {
    let id = SignedPerm::identity(spec.rank);
    let mut seen: HashSet<SignedPerm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for &g in &spec.generators {
            let wg = w.mul_gen(g);
            if seen.insert(wg.clone()) {
                if seen.len() > budget {
                    return Err(Error::TooLarge {
                        what: "parabolic subgroup".into(),
                        budget,
                    });
                }
                queue.push_back(wg);
            }
        }
    }
    let mut out: Vec<SignedPerm> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Order of `W(B_r)` or of the type-D subgroup.
pub fn group_order(ty: CoxeterType, r: usize) -> usize {
    let fact: usize = (1..=r).product();
    match ty {
        CoxeterType::B => (1usize << r) * fact,
        CoxeterType::D => (1usize << r.saturating_sub(1)) * fact,
    }
}

/// A fully enumerated Weyl group with multiplication tables for generators.
///
/// Element 0 is the identity. `len` is the word length from breadth-first
/// search, i.e. the Coxeter length for the chosen generating set.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    ty: CoxeterType,
    rank: usize,
    gens: Vec<Gen>,
    elems: Vec<SignedPerm>,
    index: HashMap<SignedPerm, usize>,
    len: Vec<u32>,
    rmul: Vec<Vec<u32>>,
    lmul: Vec<Vec<u32>>,
    inv: Vec<u32>,
}

impl WeylGroup {
    pub fn new(ty: CoxeterType, rank: usize, budget: usize) -> Result<Self> {
        if rank == 0 || (ty == CoxeterType::D && rank < 2) {
            return Err(Error::Config(format!("no type {ty} group at rank {rank}")));
        }
        if group_order(ty, rank) > budget {
            return Err(Error::TooLarge {
                what: format!("W({ty}_{rank})"),
                budget,
            });
        }
        let gens = coxeter_generators(ty, rank);
        let id = SignedPerm::identity(rank);
        let mut elems = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut len = vec![0u32];
        let mut head = 0;
        while head < elems.len() {
            let w = elems[head].clone();
            for &g in &gens {
                let wg = w.mul_gen(g);
                if !index.contains_key(&wg) {
                    index.insert(wg.clone(), elems.len());
                    elems.push(wg);
                    len.push(len[head] + 1);
                }
            }
            head += 1;
        }
        let look = |w: &SignedPerm| index[w] as u32;
        let rmul = elems
            .iter()
            .map(|w| gens.iter().map(|&g| look(&w.mul_gen(g))).collect())
            .collect();
        let lmul = elems
            .iter()
            .map(|w| gens.iter().map(|&g| look(&w.gen_mul(g))).collect())
            .collect();
        let inv = elems.iter().map(|w| look(&w.inverse())).collect();
        Ok(WeylGroup {
            ty,
            rank,
            gens,
            elems,
            index,
            len,
            rmul,
            lmul,
            inv,
        })
    }

    pub fn ty(&self) -> CoxeterType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Gen] {
        &self.gens
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[SignedPerm] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &SignedPerm {
        &self.elems[i]
    }

    pub fn index_of(&self, w: &SignedPerm) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn length(&self, i: usize) -> usize {
        self.len[i] as usize
    }

    pub fn gen_index(&self, g: Gen) -> Option<usize> {
        self.gens.iter().position(|&h| h == g)
    }

    /// Index of `w_i * gens[k]`.
    pub fn rmul(&self, i: usize, k: usize) -> usize {
        self.rmul[i][k] as usize
    }

    /// Index of `gens[k] * w_i`.
    pub fn lmul(&self, i: usize, k: usize) -> usize {
        self.lmul[i][k] as usize
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    fn gen_indices(&self, gens: &[Gen]) -> Result<Vec<usize>> {
        gens.iter()
            .map(|&g| {
                self.gen_index(g).ok_or(Error::BadGenerator {
                    label: g.label(),
                    ambient: self.ty.to_string(),
                })
            })
            .collect()
    }

    /// Elements of the double coset `<left> w_x <right>`, sorted by index.
    pub fn double_coset(&self, left: &[Gen], x: usize, right: &[Gen]) -> Result<Vec<usize>> {
        let l = self.gen_indices(left)?;
        let rt = self.gen_indices(right)?;
        let mut seen = vec![false; self.size()];
        seen[x] = true;
        let mut stack = vec![x];
        let mut out = Vec::new();
        while let Some(w) = stack.pop() {
            out.push(w);
            let nbrs = l.iter().map(|&k| self.lmul(w, k)).chain(rt.iter().map(|&k| self.rmul(w, k)));
            for v in nbrs {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// The unique minimal-length element of `<left> w_x <right>`; uniqueness
    /// is checked, not assumed.
    pub fn min_in_double_coset(&self, left: &[Gen], x: usize, right: &[Gen]) -> Result<usize> {
        let coset = self.double_coset(left, x, right)?;
        unique_min(&coset, |i| self.len[i])
    }

    /// One minimal representative per double coset, sorted by length then
    /// index. The cosets are checked to tile the group.
    pub fn double_coset_reps(&self, left: &[Gen], right: &[Gen]) -> Result<Vec<usize>> {
        let mut covered = vec![false; self.size()];
        let mut reps = Vec::new();
        let mut total = 0;
        for x in 0..self.size() {
            if covered[x] {
                continue;
            }
            let coset = self.double_coset(left, x, right)?;
            for &w in &coset {
                covered[w] = true;
            }
            total += coset.len();
            reps.push(unique_min(&coset, |i| self.len[i])?);
        }
        debug_assert_eq!(total, self.size());
        reps.sort_by_key(|&i| (self.len[i], i));
        Ok(reps)
    }

    /// True when no generator in `left` is a left descent of `w_i`, i.e.
    /// `w_i` is minimal in its coset `<left> w_i`.
    pub fn is_min_in_left_coset(&self, left: &[Gen], i: usize) -> Result<bool> {
        let l = self.gen_indices(left)?;
        Ok(l.iter().all(|&k| self.len[self.lmul(i, k)] > self.len[i]))
    }

    pub fn is_min_in_right_coset(&self, i: usize, right: &[Gen]) -> Result<bool> {
        let rt = self.gen_indices(right)?;
        Ok(rt.iter().all(|&k| self.len[self.rmul(i, k)] > self.len[i]))
    }

    /// Elements of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[Gen]) -> Result<Vec<usize>> {
        self.double_coset(gens, 0, &[])
    }

    /// Index of `w_a * w_b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elems[a].compose(&self.elems[b])]
    }
}

fn unique_min(coset: &[usize], len: impl Fn(usize) -> u32) -> Result<usize> {
    let min = coset.iter().map(|&i| len(i)).min().expect("nonempty coset");
    let mins: Vec<usize> = coset.iter().copied().filter(|&i| len(i) == min).collect();
    if mins.len() != 1 {
        return Err(Error::NotUnique { count: mins.len() });
    }
    Ok(mins[0])
}

/// Minimal representatives of the `left`-`right` double cosets in the
/// ambient group, as permutations.
pub fn distinguished_reps(
    left: &ParabolicSpec,
    right: &ParabolicSpec,
    ambient: CoxeterType,
    budget: usize,
) -> Result<Vec<SignedPerm>> {
    if left.rank != right.rank {
        return Err(Error::AmbientMismatch("parabolic ranks differ".into()));
    }
    let g = WeylGroup::new(ambient, left.rank, budget)?;
    let reps = g.double_coset_reps(&left.generators, &right.generators)?;
    Ok(reps.into_iter().map(|i| g.element(i).clone()).collect())
}
