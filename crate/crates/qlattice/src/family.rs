//! Ordered families of proper subspaces sharing an ambient space.
//!
//! The derived subspaces used throughout the analysis modules (the join
//! and the meet of all members except one, the isolated part of a member,
//! and its augmented part) are computed lazily and cached per family.
//! Families are immutable, so a cache entry never invalidates; the
//! `OnceLock` fill is idempotent and safe under concurrent first use.
//!
//! Indices are 0-based everywhere.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::subspace::Subspace;
use crate::tolerance::TolerancePolicy;

/// An ordered list of at least two proper subspaces of a common `H(d)`.
#[derive(Debug, Clone)]
pub struct SubspaceFamily {
    ambient_dim: usize,
    members: Vec<Subspace>,
    tol: TolerancePolicy,
    others_join: Vec<OnceLock<Subspace>>,
    others_meet: Vec<OnceLock<Subspace>>,
    isolated: Vec<OnceLock<Subspace>>,
    augmented: Vec<OnceLock<Subspace>>,
}

impl SubspaceFamily {
    pub fn new(members: Vec<Subspace>, tol: TolerancePolicy) -> Result<Self> {
        if members.len() < 2 {
            return Err(Error::FamilyTooSmall {
                count: members.len(),
            });
        }
        let ambient_dim = members[0].ambient_dim();
        for (index, member) in members.iter().enumerate() {
            if member.ambient_dim() != ambient_dim {
                return Err(Error::AmbientMismatch {
                    left: ambient_dim,
                    right: member.ambient_dim(),
                });
            }
            if !member.is_proper() {
                return Err(Error::ImproperMember {
                    index,
                    dim: member.dim(),
                    ambient: ambient_dim,
                });
            }
        }
        let n = members.len();
        Ok(Self {
            ambient_dim,
            members,
            tol,
            others_join: (0..n).map(|_| OnceLock::new()).collect(),
            others_meet: (0..n).map(|_| OnceLock::new()).collect(),
            isolated: (0..n).map(|_| OnceLock::new()).collect(),
            augmented: (0..n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn tolerance(&self) -> &TolerancePolicy {
        &self.tol
    }

    pub fn member(&self, index: usize) -> Result<&Subspace> {
        self.members.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.members.len(),
        })
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.members.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.members.len(),
            });
        }
        Ok(())
    }

    /// Join of all members except `index`.
    pub fn others_join(&self, index: usize) -> Result<&Subspace> {
        self.check_index(index)?;
        Ok(self.others_join[index].get_or_init(|| {
            let mut acc: Option<Subspace> = None;
            for (j, member) in self.members.iter().enumerate() {
                if j == index {
                    continue;
                }
                acc = Some(match acc {
                    None => member.clone(),
                    Some(current) => current
                        .join(member, &self.tol)
                        .expect("family members share an ambient space"),
                });
            }
            acc.expect("family has at least two members")
        }))
    }

    /// Meet of all members except `index`.
    pub fn others_meet(&self, index: usize) -> Result<&Subspace> {
        self.check_index(index)?;
        Ok(self.others_meet[index].get_or_init(|| {
            let mut acc: Option<Subspace> = None;
            for (j, member) in self.members.iter().enumerate() {
                if j == index {
                    continue;
                }
                acc = Some(match acc {
                    None => member.clone(),
                    Some(current) => current
                        .meet(member, &self.tol)
                        .expect("family members share an ambient space"),
                });
            }
            acc.expect("family has at least two members")
        }))
    }

    /// The part of member `index` orthogonal to the span of all the other
    /// members: `others_join(i)-perp ^ H_i`.
    pub fn isolated_part(&self, index: usize) -> Result<&Subspace> {
        let others = self.others_join(index)?;
        Ok(self.isolated[index].get_or_init(|| {
            others
                .orthocomplement(&self.tol)
                .meet(&self.members[index], &self.tol)
                .expect("family members share an ambient space")
        }))
    }

    /// Member `index` extended by the common core of all the other
    /// members: `others_meet(i) v H_i`.
    pub fn augmented_part(&self, index: usize) -> Result<&Subspace> {
        let others = self.others_meet(index)?;
        Ok(self.augmented[index].get_or_init(|| {
            others
                .join(&self.members[index], &self.tol)
                .expect("family members share an ambient space")
        }))
    }

    /// Join of every member.
    pub fn join_all(&self) -> Subspace {
        let mut acc = self.members[0].clone();
        for member in &self.members[1..] {
            acc = acc
                .join(member, &self.tol)
                .expect("family members share an ambient space");
        }
        acc
    }

    /// Meet of every member.
    pub fn meet_all(&self) -> Subspace {
        let mut acc = self.members[0].clone();
        for member in &self.members[1..] {
            acc = acc
                .meet(member, &self.tol)
                .expect("family members share an ambient space");
        }
        acc
    }

    /// The family of orthocomplements, order preserved. Complements of
    /// proper subspaces are proper, so this cannot fail.
    pub fn dual(&self) -> SubspaceFamily {
        let members = self
            .members
            .iter()
            .map(|m| m.orthocomplement(&self.tol))
            .collect();
        SubspaceFamily::new(members, self.tol).expect("dual of a valid family is valid")
    }

    /// A family with the members permuted into the given order.
    pub fn reordered(&self, order: &[usize]) -> Result<SubspaceFamily> {
        let mut members = Vec::with_capacity(order.len());
        for &i in order {
            members.push(self.member(i)?.clone());
        }
        SubspaceFamily::new(members, self.tol)
    }
}
