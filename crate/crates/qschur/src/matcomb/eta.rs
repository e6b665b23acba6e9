//! The bijection between signed indices and type-D double cosets.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{classify, coset_to_matrix, matrix_to_da, MatClass, MatD, Mark, Sign, SignedComposition, Tag};
use crate::error::{Error, Result};
use crate::weylgroups::{CoxeterType, Gen, ParabolicSpec, SignedPerm, WeylGroup};

/// A type-D double coset `W_alpha d W_beta` with `d` its minimal element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EtaTriple {
    pub row: SignedComposition,
    pub rep: SignedPerm,
    pub col: SignedComposition,
}

/// Both ambient groups at a fixed rank, shared by every `eta` evaluation.
#[derive(Debug, Clone)]
pub struct EtaContext {
    pub wb: Arc<WeylGroup>,
    pub wd: Arc<WeylGroup>,
}

impl EtaContext {
    pub fn new(r: usize, budget: usize) -> Result<Self> {
        Ok(EtaContext {
            wb: Arc::new(WeylGroup::new(CoxeterType::B, r, budget)?),
            wd: Arc::new(WeylGroup::new(CoxeterType::D, r, budget)?),
        })
    }

    pub fn rank(&self) -> usize {
        self.wd.rank()
    }

    /// Maps a signed index to its double coset.
    ///
    /// The weights follow the class table: a row (column) weight carries the
    /// tag sign only for classes whose row (column) composition ends in 0.
    /// The representative is the minimum of
    /// `W_alpha s^[e1 = -] d_A s^[e2 = -] W_beta`, or for a dotted index of
    /// `W_alpha x W_beta` with `x` whichever of `d_A`, `s_r d_A` is in the
    /// type-D group.
    pub fn eta(&self, a: &MatD) -> Result<EtaTriple> {
        let m = a.base.clone();
        MatD::new(m.clone(), a.tag)?;
        let r = self.rank();
        if m.r() != r {
            return Err(Error::Invalid(format!("index has rank {} but context has {r}", m.r())));
        }
        let lambda = m.row_composition();
        let mu = m.col_composition();
        let sc = |base: &super::Composition, mark: Mark| SignedComposition {
            base: base.clone(),
            mark,
        };
        let da = matrix_to_da(&m);
        let sr = SignedPerm::generator(r, Gen::S(r))?;
        let (row_mark, col_mark, x) = match (classify(&m), a.tag) {
            (MatClass::Dotted, Tag::Dot) => {
                let x = if da.in_type_d() { da } else { sr.compose(&da) };
                (Mark::Dot, Mark::Dot, x)
            }
            (class, Tag::Signs(e1, e2)) if class != MatClass::Dotted => {
                let mut x = da;
                if e1 == Sign::Minus {
                    x = sr.compose(&x);
                }
                if e2 == Sign::Minus {
                    x = x.compose(&sr);
                }
                let (rm, cm) = match class {
                    MatClass::Ooo => (e1.into(), e2.into()),
                    MatClass::Ood => (e1.into(), Mark::Dot),
                    MatClass::Doo => (Mark::Dot, e2.into()),
                    _ => (Mark::Dot, Mark::Dot),
                };
                (rm, cm, x)
            }
            _ => return Err(Error::Invalid("tag does not match the matrix class".into())),
        };
        let row = sc(&lambda, row_mark);
        let col = sc(&mu, col_mark);
        let xi = self
            .wd
            .index_of(&x)
            .ok_or_else(|| Error::Invalid("coset seed is not in the type-D group".into()))?;
        let left = ParabolicSpec::type_d(&row).generators;
        let right = ParabolicSpec::type_d(&col).generators;
        let d = self.wd.min_in_double_coset(&left, xi, &right)?;
        Ok(EtaTriple {
            row,
            rep: self.wd.element(d).clone(),
            col,
        })
    }

    /// Inverse of [`EtaContext::eta`]: recover the type-B coset, then pick
    /// the admissible tag whose image is the given triple.
    ///
    /// A `-` mark on a side means the coset was translated by `s_r` on that
    /// side, and `s_r` is not in the type-B parabolic there; undo it first.
    pub fn eta_inv(&self, t: &EtaTriple) -> Result<MatD> {
        let lambda = &t.row.base;
        let mu = &t.col.base;
        if !t.rep.in_type_d() || t.rep.rank() != self.rank() {
            return Err(Error::Invalid("representative is not in the type-D group".into()));
        }
        let sr = SignedPerm::generator(self.rank(), Gen::S(self.rank()))?;
        let mut seed = t.rep.clone();
        if t.row.mark == Mark::Minus {
            seed = sr.compose(&seed);
        }
        if t.col.mark == Mark::Minus {
            seed = seed.compose(&sr);
        }
        let di = self
            .wb
            .index_of(&seed)
            .ok_or_else(|| Error::Invalid("representative is outside the type-B group".into()))?;
        let lb = ParabolicSpec::type_b(lambda).generators;
        let rb = ParabolicSpec::type_b(mu).generators;
        let db = self.wb.min_in_double_coset(&lb, di, &rb)?;
        let base = coset_to_matrix(lambda, self.wb.element(db), mu)?;
        for tag in MatD::tags_for(&base) {
            let cand = MatD {
                base: base.clone(),
                tag,
            };
            if self.eta(&cand)? == *t {
                return Ok(cand);
            }
        }
        Err(Error::Invalid("triple is not in the image of eta".into()))
    }
}
