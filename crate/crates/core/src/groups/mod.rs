//! Finite subgroups of PGL₃ and their abstract multiplication tables.

pub mod reference;
mod table;

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

pub use table::{close, sylow_order, AbstractGroup, GroupFingerprint};

use crate::cyclo::join_conductors;
use crate::error::{Error, Result};
use crate::projgeom::{ProjKey, ProjMat};

pub const DEFAULT_ORDER_CEILING: usize = 1000;

static ORDER_CEILING: AtomicUsize = AtomicUsize::new(DEFAULT_ORDER_CEILING);

pub fn order_ceiling() -> usize {
    ORDER_CEILING.load(Ordering::Relaxed)
}

/// Process-wide default for [`ProjGroup::closure`].
pub fn set_order_ceiling(ceiling: usize) {
    ORDER_CEILING.store(ceiling.max(1), Ordering::Relaxed);
}

/// A finite subgroup of PGL₃ with all elements materialized over one field.
#[derive(Clone, Debug)]
pub struct ProjGroup {
    conductor: u64,
    generators: Vec<ProjMat>,
    elements: Vec<ProjMat>,
    table: AbstractGroup,
    index: HashMap<ProjKey, usize>,
}

impl ProjGroup {
    pub fn closure(gens: &[ProjMat]) -> Result<ProjGroup> {
        Self::closure_with_ceiling(gens, order_ceiling())
    }

    pub fn closure_with_ceiling(gens: &[ProjMat], ceiling: usize) -> Result<ProjGroup> {
        // Finite-order lifts keep entries bounded along long words.
        let lifted: Vec<ProjMat> = gens.iter().map(|g| g.finite_lift().unwrap_or_else(|_| g.clone())).collect();
        let n = lifted.iter().try_fold(1, |acc, g| join_conductors(acc, g.conductor()))?;
        let lifted: Vec<ProjMat> = lifted.iter().map(|g| g.embed(n)).collect::<Result<_>>()?;
        let (elements, table) = close(ProjMat::identity(n), &lifted, |a, b| a.mul(b), ProjMat::key, ceiling)?;
        let index = elements.iter().enumerate().map(|(i, e)| (e.key(), i)).collect();
        let generators = gens.iter().map(|g| g.embed(n)).collect::<Result<_>>()?;
        Ok(ProjGroup { conductor: n, generators, elements, table, index })
    }

    pub fn trivial() -> ProjGroup {
        Self::closure(&[]).expect("trivial group")
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[ProjMat] {
        &self.generators
    }

    pub fn elements(&self) -> &[ProjMat] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ProjMat {
        &self.elements[i]
    }

    pub fn to_abstract(&self) -> AbstractGroup {
        self.table.clone()
    }

    pub fn table(&self) -> &AbstractGroup {
        &self.table
    }

    pub fn index_of(&self, m: &ProjMat) -> Option<usize> {
        let n = join_conductors(self.conductor, m.conductor()).ok()?;
        if n != self.conductor {
            // A member of this group is expressible at this conductor, so it
            // must embed down; anything else is not a member.
            return self.elements.iter().position(|e| e.proj_eq(m));
        }
        self.index.get(&m.embed(n).ok()?.key()).copied()
    }

    pub fn contains(&self, m: &ProjMat) -> bool {
        self.index_of(m).is_some()
    }

    /// Indices (in this group) of every element of `h`.
    pub fn member_indices(&self, h: &ProjGroup) -> Result<Vec<usize>> {
        h.elements.iter().map(|e| self.index_of(e).ok_or(Error::NotASubgroup)).collect()
    }

    /// Subgroup on the given element indices, which must be closed.
    pub fn subgroup(&self, members: &[usize]) -> Result<ProjGroup> {
        let (table, members) = self.table.subgroup(members)?;
        let elements: Vec<ProjMat> = members.iter().map(|&i| self.elements[i].clone()).collect();
        let generators = table.small_generating_set().iter().map(|&i| elements[i].clone()).collect();
        let index = elements.iter().enumerate().map(|(i, e)| (e.key(), i)).collect();
        Ok(ProjGroup { conductor: self.conductor, generators, elements, table, index })
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_abelian()
    }

    pub fn center(&self) -> ProjGroup {
        self.subgroup(&self.table.center()).expect("center is a subgroup")
    }

    pub fn centralizer(&self, g: &ProjMat) -> Result<ProjGroup> {
        let i = self.index_of(g).ok_or(Error::NotAMember)?;
        self.subgroup(&self.table.centralizer(&[i]))
    }

    pub fn normalizer_in(&self, h: &ProjGroup) -> Result<ProjGroup> {
        let members = self.member_indices(h)?;
        if !self.table.is_subgroup(&members) {
            return Err(Error::NotASubgroup);
        }
        self.subgroup(&self.table.normalizer(&members))
    }

    pub fn is_normal(&self, h: &ProjGroup) -> Result<bool> {
        Ok(self.table.is_normal(&self.member_indices(h)?))
    }

    /// `G/H` with the projection map on element indices of `G`.
    pub fn quotient(&self, h: &ProjGroup) -> Result<(AbstractGroup, Vec<usize>)> {
        self.table.quotient(&self.member_indices(h)?)
    }

    pub fn sylow_count(&self, p: u64) -> Result<usize> {
        self.table.sylow_count(p)
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        self.table.fingerprint()
    }

    /// `h G h⁻¹`, reusing this group's multiplication table.
    pub fn conjugate_by(&self, h: &ProjMat) -> Result<ProjGroup> {
        let n = join_conductors(self.conductor, h.conductor())?;
        let h = h.embed(n)?;
        let hi = h.exact_inverse()?;
        let conj = |m: &ProjMat| -> Result<ProjMat> { h.mul(&m.embed(n)?)?.mul(&hi) };
        let elements: Vec<ProjMat> = self.elements.iter().map(conj).collect::<Result<_>>()?;
        let generators = self.generators.iter().map(conj).collect::<Result<_>>()?;
        let index = elements.iter().enumerate().map(|(i, e)| (e.key(), i)).collect();
        Ok(ProjGroup { conductor: n, generators, elements, table: self.table.clone(), index })
    }

    /// Same group over a larger conductor.
    pub fn embed(&self, n: u64) -> Result<ProjGroup> {
        if n == self.conductor {
            return Ok(self.clone());
        }
        let elements: Vec<ProjMat> = self.elements.iter().map(|e| e.embed(n)).collect::<Result<_>>()?;
        let generators = self.generators.iter().map(|e| e.embed(n)).collect::<Result<_>>()?;
        let index = elements.iter().enumerate().map(|(i, e)| (e.key(), i)).collect();
        Ok(ProjGroup { conductor: n, generators, elements, table: self.table.clone(), index })
    }
}

#[cfg(test)]
mod tests;
