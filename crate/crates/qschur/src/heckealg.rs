//! Hecke algebras over `Z[q]`: type B with parameters `(q, 1)` and type D
//! with parameter `q` throughout.
//!
//! Elements are sparse maps from group elements to coefficients. Products
//! fold right multiplication by generators along a reduced word of each
//! basis element of the right factor.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactring::PolyQ;
use crate::weylgroups::{coxeter_generators, enumerate_parabolic, CoxeterType, Gen, ParabolicSpec, SignedPerm};

/// Ambient Hecke algebra: a Coxeter type and a rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeckeAmbient {
    pub ty: CoxeterType,
    pub rank: usize,
}

impl HeckeAmbient {
    pub fn new(ty: CoxeterType, rank: usize) -> Self {
        HeckeAmbient { ty, rank }
    }

    /// `q_s`: 1 for the short-root generator `s_r` of type B, `q` otherwise.
    pub fn param(&self, g: Gen) -> PolyQ {
        match (self.ty, g) {
            (CoxeterType::B, Gen::S(i)) if i == self.rank => PolyQ::one(),
            _ => PolyQ::q(),
        }
    }

    pub fn check_gen(&self, g: Gen) -> Result<()> {
        if coxeter_generators(self.ty, self.rank).contains(&g) {
            Ok(())
        } else {
            Err(Error::BadGenerator {
                label: g.label(),
                ambient: format!("{}{}", self.ty, self.rank),
            })
        }
    }

    pub fn contains(&self, w: &SignedPerm) -> bool {
        w.rank() == self.rank && (self.ty == CoxeterType::B || w.in_type_d())
    }
}

/// A `Z[q]`-combination of basis elements `T_w`. No zero coefficient is
/// stored and every key lies in the ambient group.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElt {
    ambient: HeckeAmbient,
    terms: BTreeMap<SignedPerm, PolyQ>,
}

impl HeckeElt {
    pub fn zero(ambient: HeckeAmbient) -> Self {
        HeckeElt {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: HeckeAmbient) -> Self {
        Self::basis(ambient, SignedPerm::identity(ambient.rank)).expect("identity is in every ambient")
    }

    /// `T_w`.
    pub fn basis(ambient: HeckeAmbient, w: SignedPerm) -> Result<Self> {
        if !ambient.contains(&w) {
            return Err(Error::Invalid(format!("{w:?} is not in {}{}", ambient.ty, ambient.rank)));
        }
        Ok(HeckeElt {
            ambient,
            terms: BTreeMap::from([(w, PolyQ::one())]),
        })
    }

    /// `T_g` for a generator label.
    pub fn generator(ambient: HeckeAmbient, g: Gen) -> Result<Self> {
        ambient.check_gen(g)?;
        Self::basis(ambient, SignedPerm::generator(ambient.rank, g)?)
    }

    pub fn ambient(&self) -> HeckeAmbient {
        self.ambient
    }

    pub fn terms(&self) -> &BTreeMap<SignedPerm, PolyQ> {
        &self.terms
    }

    pub fn coeff(&self, w: &SignedPerm) -> PolyQ {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * T_w`.
    pub fn add_term(&mut self, w: SignedPerm, c: &PolyQ) {
        debug_assert!(self.ambient.contains(&w));
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &PolyQ) -> HeckeElt {
        let mut out = HeckeElt::zero(self.ambient);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    fn same_ambient(&self, other: &HeckeElt) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!(
                "{}{} vs {}{}",
                self.ambient.ty, self.ambient.rank, other.ambient.ty, other.ambient.rank
            )));
        }
        Ok(())
    }

    /// `self * T_g`.
    pub fn mul_gen(&self, g: Gen) -> Result<HeckeElt> {
        self.ambient.check_gen(g)?;
        let qs = self.ambient.param(g);
        let qs1 = &qs - &PolyQ::one();
        let mut out = HeckeElt::zero(self.ambient);
        for (w, c) in &self.terms {
            let wg = w.mul_gen(g);
            if w.is_right_descent(g) {
                out.add_term(w.clone(), &(&qs1 * c));
                out.add_term(wg, &(&qs * c));
            } else {
                out.add_term(wg, c);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.same_ambient(other)?;
        let mut out = HeckeElt::zero(self.ambient);
        for (w, c) in &other.terms {
            let mut t = self.clone();
            for g in w.reduced_word(self.ambient.ty) {
                t = t.mul_gen(g)?;
            }
            out = out.add(&t.scale(c))?;
        }
        Ok(out)
    }

    /// The linear anti-involution `T_w -> T_{w^-1}`.
    pub fn tau(&self) -> HeckeElt {
        HeckeElt {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(w, c)| (w.inverse(), c.clone())).collect(),
        }
    }
}

/// `x = sum of T_w` over a parabolic subgroup, in the subgroup's ambient.
pub fn x_parabolic(spec: &ParabolicSpec, budget: usize) -> Result<HeckeElt> {
    let ambient = HeckeAmbient::new(spec.ambient(), spec.rank);
    let mut out = HeckeElt::zero(ambient);
    for w in enumerate_parabolic(spec, budget)? {
        out.add_term(w, &PolyQ::one());
    }
    Ok(out)
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(w, c)| (w, c.to_string())))
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct HeckeWire {
    ambient: HeckeAmbient,
    terms: Vec<(SignedPerm, PolyQ)>,
}

impl Serialize for HeckeElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HeckeWire {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeckeElt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = HeckeWire::deserialize(d)?;
        let mut out = HeckeElt::zero(wire.ambient);
        for (w, c) in wire.terms {
            if !wire.ambient.contains(&w) {
                return Err(serde::de::Error::custom("term outside the ambient group"));
            }
            out.add_term(w, &c);
        }
        Ok(out)
    }
}
