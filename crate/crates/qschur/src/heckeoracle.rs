//! Brute-force structure constants of the Schur algebras.
//!
//! A natural basis element with weights `(row, col)` sends `x_col` to the
//! double coset sum `T(W_row d W_col)`. Composing `left * right` therefore
//! gives `T(W_l d_left W_m) * sum_d T_d`, the sum over minimal right-coset
//! representatives `d` (minimal in `W_m d`) inside the right factor's double
//! coset. The product is re-expanded by reading the coefficient at each
//! candidate's minimal representative, then checked by subtracting every
//! double coset sum: the residual must vanish.
//!
//! Arithmetic uses dense coefficient vectors over a fully enumerated group;
//! `X * T_d` is memoized along reduced words so all products sharing a left
//! factor reuse one prefix tree.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactring::PolyQ;
use crate::heckealg::{HeckeAmbient, HeckeElt};
use crate::matcomb::{enumerate_xi_b, enumerate_xi_d, matrix_to_da, Composition, EtaContext, MatB, MatD, SignedComposition};
use crate::schurd::SchurElt;
use crate::weylgroups::{CoxeterType, Gen, ParabolicSpec, SignedPerm, WeylGroup};

/// Default cap on the ambient group order: `|W(B_4)| = 384`.
pub const ORACLE_GROUP_BUDGET: usize = 384;

/// Default cap on the number of indices an oracle enumerates.
pub const ORACLE_INDEX_BUDGET: usize = 20_000;

/// `sum of T_w` over `W_left d W_right`, in the ambient of the two specs.
pub fn double_coset_sum(left: &ParabolicSpec, d: &SignedPerm, right: &ParabolicSpec, budget: usize) -> Result<HeckeElt> {
    let ty = left.ambient();
    if right.ambient() != ty || left.rank != right.rank || d.rank() != left.rank {
        return Err(Error::AmbientMismatch("double coset data disagree".into()));
    }
    let g = WeylGroup::new(ty, left.rank, budget)?;
    let x = g
        .index_of(d)
        .ok_or_else(|| Error::Invalid(format!("{d:?} is not in the {ty} group")))?;
    let mut out = HeckeElt::zero(HeckeAmbient::new(ty, left.rank));
    for w in g.double_coset(&left.generators, x, &right.generators)? {
        out.add_term(g.element(w).clone(), &PolyQ::one());
    }
    Ok(out)
}

/// Dense Hecke arithmetic over a fully enumerated group.
#[derive(Debug, Clone)]
pub struct DenseHecke {
    group: Arc<WeylGroup>,
    params: Vec<PolyQ>,
    params_minus_one: Vec<PolyQ>,
}

impl DenseHecke {
    pub fn new(group: Arc<WeylGroup>) -> Self {
        let amb = HeckeAmbient::new(group.ty(), group.rank());
        let params: Vec<PolyQ> = group.generators().iter().map(|&g| amb.param(g)).collect();
        let params_minus_one = params.iter().map(|p| p - &PolyQ::one()).collect();
        DenseHecke {
            group,
            params,
            params_minus_one,
        }
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    /// `v * T_{gens[k]}`.
    pub fn mul_gen(&self, v: &[PolyQ], k: usize) -> Vec<PolyQ> {
        let g = &self.group;
        let mut out = vec![PolyQ::zero(); v.len()];
        for (w, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ws = g.rmul(w, k);
            if g.length(ws) > g.length(w) {
                out[ws] += c;
            } else {
                out[w] += &(&self.params_minus_one[k] * c);
                out[ws] += &(&self.params[k] * c);
            }
        }
        out
    }

    /// Memoized `x * T_w` for every `w` requested, built along right descents.
    fn right_multiples<'a>(&self, memo: &'a mut HashMap<usize, Vec<PolyQ>>, w: usize) -> &'a Vec<PolyQ> {
        let g = &self.group;
        let mut chain = Vec::new();
        let mut cur = w;
        while !memo.contains_key(&cur) {
            let k = (0..g.generators().len())
                .find(|&k| g.length(g.rmul(cur, k)) < g.length(cur))
                .expect("a non-identity element has a right descent");
            chain.push((cur, k));
            cur = g.rmul(cur, k);
        }
        while let Some((next, k)) = chain.pop() {
            let v = self.mul_gen(&memo[&cur], k);
            memo.insert(next, v);
            cur = next;
        }
        &memo[&w]
    }
}

struct IndexData<K> {
    row: K,
    col: K,
    rep: usize,
    coset: Vec<usize>,
}

/// The shared engine behind [`OracleB`] and [`OracleD`]: indices `I` with
/// weights `K`.
struct CosetOracle<I, K> {
    n: usize,
    r: usize,
    hecke: DenseHecke,
    data: HashMap<I, IndexData<K>>,
    by_weights: HashMap<(K, K), Vec<I>>,
    gens: HashMap<K, Vec<Gen>>,
}

impl<I, K> CosetOracle<I, K>
where
    I: Ord + Hash + Clone + Send + Sync + std::fmt::Debug,
    K: Eq + Hash + Clone + Send + Sync,
{
    fn build(
        n: usize,
        r: usize,
        group: Arc<WeylGroup>,
        entries: Vec<(I, K, K, SignedPerm)>,
        spec: impl Fn(&K) -> ParabolicSpec,
    ) -> Result<Self> {
        let mut gens: HashMap<K, Vec<Gen>> = HashMap::new();
        for (_, row, col, _) in &entries {
            for k in [row, col] {
                gens.entry(k.clone()).or_insert_with(|| spec(k).generators);
            }
        }
        let data: Vec<(I, IndexData<K>)> = entries
            .into_par_iter()
            .map(|(i, row, col, d)| {
                let rep = group
                    .index_of(&d)
                    .ok_or_else(|| Error::Invalid(format!("representative of {i:?} is outside the group")))?;
                let coset = group.double_coset(&gens[&row], rep, &gens[&col])?;
                if coset.iter().any(|&w| group.length(w) < group.length(rep)) {
                    return Err(Error::NotDistinguished);
                }
                Ok((i, IndexData { row, col, rep, coset }))
            })
            .collect::<Result<_>>()?;
        let total: usize = data.iter().map(|(_, d)| d.coset.len()).sum();
        let pairs: std::collections::HashSet<(K, K)> =
            data.iter().map(|(_, d)| (d.row.clone(), d.col.clone())).collect();
        // The double cosets of each weight pair must tile the group.
        if total != pairs.len() * group.size() {
            return Err(Error::InconsistentExpansion(format!(
                "double cosets cover {total} elements, expected {}",
                pairs.len() * group.size()
            )));
        }
        let mut by_weights: HashMap<(K, K), Vec<I>> = HashMap::new();
        for (i, d) in &data {
            by_weights.entry((d.row.clone(), d.col.clone())).or_default().push(i.clone());
        }
        for v in by_weights.values_mut() {
            v.sort();
        }
        Ok(CosetOracle {
            n,
            r,
            hecke: DenseHecke::new(group),
            data: data.into_iter().collect(),
            by_weights,
            gens,
        })
    }

    fn get(&self, i: &I) -> Result<&IndexData<K>> {
        self.data
            .get(i)
            .ok_or_else(|| Error::Invalid(format!("{i:?} is not an index of this oracle")))
    }

    /// `left * right` for every right factor, sharing one memo table.
    fn products(&self, ty: CoxeterType, left: &I, rights: &[I]) -> Result<Vec<SchurElt<I>>> {
        let l = self.get(left)?;
        let size = self.hecke.group().size();
        let mut x = vec![PolyQ::zero(); size];
        for &w in &l.coset {
            x[w] = PolyQ::one();
        }
        let mut memo = HashMap::from([(0usize, x)]);
        let g = self.hecke.group();
        rights
            .iter()
            .map(|right| {
                let rd = self.get(right)?;
                let mut out = SchurElt::zero(ty, self.n, self.r);
                if rd.row != l.col {
                    return Ok(out);
                }
                let mid = &self.gens[&rd.row];
                let mut p = vec![PolyQ::zero(); size];
                for &d in &rd.coset {
                    if !g.is_min_in_left_coset(mid, d)? {
                        continue;
                    }
                    for (acc, c) in p.iter_mut().zip(self.hecke.right_multiples(&mut memo, d)) {
                        *acc += c;
                    }
                }
                let empty = Vec::new();
                let cands = self
                    .by_weights
                    .get(&(l.row.clone(), rd.col.clone()))
                    .unwrap_or(&empty);
                for c in cands {
                    let cd = &self.data[c];
                    let coef = p[cd.rep].clone();
                    if coef.is_zero() {
                        continue;
                    }
                    for &w in &cd.coset {
                        p[w] -= &coef;
                    }
                    out.add_term(c.clone(), &coef);
                }
                if let Some(w) = p.iter().position(|c| !c.is_zero()) {
                    return Err(Error::InconsistentExpansion(format!(
                        "{left:?} * {right:?} leaves {} at {:?}",
                        p[w],
                        g.element(w)
                    )));
                }
                Ok(out)
            })
            .collect()
    }
}

/// Ground truth for the type-B Schur algebra with parameters `(q, 1)`.
pub struct OracleB {
    inner: CosetOracle<MatB, Composition>,
}

impl OracleB {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        Self::with_budget(n, r, ORACLE_GROUP_BUDGET, ORACLE_INDEX_BUDGET)
    }

    pub fn with_budget(n: usize, r: usize, group_budget: usize, index_budget: usize) -> Result<Self> {
        let group = Arc::new(WeylGroup::new(CoxeterType::B, r, group_budget)?);
        let entries = enumerate_xi_b(n, r, index_budget)?
            .into_iter()
            .map(|a| {
                let d = matrix_to_da(&a);
                (a.clone(), a.row_composition(), a.col_composition(), d)
            })
            .collect();
        Ok(OracleB {
            inner: CosetOracle::build(n, r, group, entries, ParabolicSpec::type_b)?,
        })
    }

    pub fn indices(&self) -> Vec<MatB> {
        let mut v: Vec<MatB> = self.inner.data.keys().cloned().collect();
        v.sort();
        v
    }

    pub fn product(&self, left: &MatB, right: &MatB) -> Result<SchurElt<MatB>> {
        Ok(self.products(left, std::slice::from_ref(right))?.remove(0))
    }

    pub fn products(&self, left: &MatB, rights: &[MatB]) -> Result<Vec<SchurElt<MatB>>> {
        self.inner.products(CoxeterType::B, left, rights)
    }
}

/// Ground truth for the type-D Schur algebra, keyed by signed indices
/// through the bijection with type-D double cosets.
pub struct OracleD {
    inner: CosetOracle<MatD, SignedComposition>,
    eta: EtaContext,
}

impl OracleD {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        Self::with_budget(n, r, ORACLE_GROUP_BUDGET, ORACLE_INDEX_BUDGET)
    }

    pub fn with_budget(n: usize, r: usize, group_budget: usize, index_budget: usize) -> Result<Self> {
        let eta = EtaContext::new(r, group_budget)?;
        let entries = enumerate_xi_d(n, r, index_budget)?
            .into_par_iter()
            .map(|a| {
                let t = eta.eta(&a)?;
                Ok((a, t.row, t.col, t.rep))
            })
            .collect::<Result<Vec<_>>>()?;
        let inner = CosetOracle::build(n, r, eta.wd.clone(), entries, ParabolicSpec::type_d)?;
        Ok(OracleD { inner, eta })
    }

    pub fn eta(&self) -> &EtaContext {
        &self.eta
    }

    pub fn indices(&self) -> Vec<MatD> {
        let mut v: Vec<MatD> = self.inner.data.keys().cloned().collect();
        v.sort();
        v
    }

    pub fn product(&self, left: &MatD, right: &MatD) -> Result<SchurElt<MatD>> {
        Ok(self.products(left, std::slice::from_ref(right))?.remove(0))
    }

    pub fn products(&self, left: &MatD, rights: &[MatD]) -> Result<Vec<SchurElt<MatD>>> {
        self.inner.products(CoxeterType::D, left, rights)
    }
}
