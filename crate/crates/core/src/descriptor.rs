//! JSON descriptors for groups, codes, lattices, supports, distributions and
//! matrix-count requests, with resolution into the validated domain types.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{Code, FiniteAbelianGroup, GroupError};
use crate::lattice::{Lattice, LatticeError};
use crate::matrix_enum::ConstraintSpec;
use crate::support::{self, RegularSupport, SupportError, SupportMap, WeightDistribution};

#[derive(Debug, Error)]
pub enum DescriptorError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Support(#[from] SupportError),
    #[error("missing field `{0}` for this support kind")]
    MissingField(&'static str),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDescriptor {
    pub orders: Vec<u64>,
}

impl GroupDescriptor {
    pub fn resolve(&self) -> Result<FiniteAbelianGroup, DescriptorError> {
        Ok(FiniteAbelianGroup::new(self.orders.clone())?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDescriptor {
    pub group: GroupDescriptor,
    pub generators: Vec<Vec<u64>>,
}

impl CodeDescriptor {
    pub fn resolve(&self) -> Result<Code, DescriptorError> {
        let group = self.group.resolve()?;
        let gens = self
            .generators
            .iter()
            .map(|coords| group.element(coords.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Code::closure(&group, gens)?)
    }
}

/// A custom lattice given by its generating order relation. The optional
/// rank vector is verified against the ranks recomputed from covers.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDescriptor {
    pub elements: usize,
    pub leq: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<Vec<usize>>,
}

impl LatticeDescriptor {
    pub fn resolve(&self) -> Result<Lattice, DescriptorError> {
        let lattice = Lattice::from_leq_pairs(self.elements, &self.leq)?;
        if let Some(rank) = &self.rank {
            lattice.verify_rank(rank)?;
        }
        Ok(lattice)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportKind {
    Hamming,
    Rank,
    Chain,
    Lee4,
    Homogeneous,
    Custom,
}

/// Union of the per-kind parameters; each kind reads the fields it needs.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    /// Generator lists of the chain subgroups, from `{0}` to the full group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<Vec<Vec<u64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeDescriptor>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportDescriptor {
    pub kind: SupportKind,
    #[serde(default)]
    pub params: SupportParams,
    /// For `custom`: the lattice index assigned to each group element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<usize>>,
}

impl SupportDescriptor {
    pub fn resolve(&self) -> Result<RegularSupport, DescriptorError> {
        let p = &self.params;
        match self.kind {
            SupportKind::Hamming => {
                let orders = p.group.clone().ok_or(DescriptorError::MissingField("group"))?;
                let base = FiniteAbelianGroup::new(orders)?;
                let n = p.n.ok_or(DescriptorError::MissingField("n"))?;
                Ok(support::hamming(&base, n)?)
            }
            SupportKind::Rank => {
                let q = p.q.ok_or(DescriptorError::MissingField("q"))?;
                let k = p.k.ok_or(DescriptorError::MissingField("k"))?;
                let m = p.m.ok_or(DescriptorError::MissingField("m"))?;
                Ok(support::rank_support(q, k, m)?)
            }
            SupportKind::Chain => {
                let orders = p.group.clone().ok_or(DescriptorError::MissingField("group"))?;
                let group = FiniteAbelianGroup::new(orders)?;
                let chain_gens = p.chain.clone().ok_or(DescriptorError::MissingField("chain"))?;
                let chain = chain_gens
                    .iter()
                    .map(|gens| {
                        let elems = gens
                            .iter()
                            .map(|coords| group.element(coords.clone()))
                            .collect::<Result<Vec<_>, _>>()?;
                        Code::closure(&group, elems)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(support::chain_support(&group, &chain)?)
            }
            SupportKind::Lee4 => Ok(support::lee4()),
            SupportKind::Homogeneous => {
                let prime = p.p.ok_or(DescriptorError::MissingField("p"))?;
                let n = p.n.ok_or(DescriptorError::MissingField("n"))?;
                Ok(support::homogeneous(prime, n)?)
            }
            SupportKind::Custom => {
                let orders = p.group.clone().ok_or(DescriptorError::MissingField("group"))?;
                let group = FiniteAbelianGroup::new(orders)?;
                let lattice = p
                    .lattice
                    .as_ref()
                    .ok_or(DescriptorError::MissingField("lattice"))?
                    .resolve()?;
                let sigma = self
                    .sigma
                    .clone()
                    .ok_or(DescriptorError::MissingField("sigma"))?;
                Ok(SupportMap {
                    group,
                    lattice,
                    sigma,
                }
                .validate()?)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionDescriptor {
    pub counts: Vec<u64>,
}

impl From<&WeightDistribution> for DistributionDescriptor {
    fn from(w: &WeightDistribution) -> Self {
        Self {
            counts: w.counts.clone(),
        }
    }
}

impl DistributionDescriptor {
    pub fn resolve(&self) -> WeightDistribution {
        WeightDistribution {
            counts: self.counts.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstraintDescriptor {
    None,
    SumZero { indices: Vec<(usize, usize)> },
    ZeroBlock { rows: usize, cols: usize },
    ZeroDiagonal { positions: Vec<usize> },
    Symmetric,
    SkewSymmetric,
}

impl From<&ConstraintDescriptor> for ConstraintSpec {
    fn from(c: &ConstraintDescriptor) -> Self {
        match c {
            ConstraintDescriptor::None => ConstraintSpec::None,
            ConstraintDescriptor::SumZero { indices } => ConstraintSpec::SumZero(indices.clone()),
            ConstraintDescriptor::ZeroBlock { rows, cols } => ConstraintSpec::ZeroBlock {
                rows: *rows,
                cols: *cols,
            },
            ConstraintDescriptor::ZeroDiagonal { positions } => {
                ConstraintSpec::ZeroDiagonal(positions.clone())
            }
            ConstraintDescriptor::Symmetric => ConstraintSpec::Symmetric,
            ConstraintDescriptor::SkewSymmetric => ConstraintSpec::SkewSymmetric,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixCountRequest {
    pub q: u64,
    pub k: usize,
    pub m: usize,
    pub constraint: ConstraintDescriptor,
    pub rank: usize,
}

/// Counts are decimal strings so downstream consumers never overflow.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixCountResponse {
    pub count: String,
}
