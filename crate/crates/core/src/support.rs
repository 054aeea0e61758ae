//! Regular supports: maps from a finite abelian group into a regular graded
//! lattice satisfying the zero-kernel, symmetry, subadditivity, ball-sum and
//! rank-uniform ball-size axioms. Validation is exhaustive; a
//! [`RegularSupport`] therefore always carries a verified gamma table and the
//! invariant tables of its lattice.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::gf::{self, Gf};
use crate::group::{Code, FiniteAbelianGroup, GroupElement, GroupError};
use crate::lattice::{Lattice, LatticeError, LatticeInvariants, SubspaceLattice};

/// Axiom violations, each with a concrete witness (element and lattice
/// indices refer to the enumeration order of the group and lattice).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportViolation {
    /// `sigma(g) = 0_L` for some `g != 0`, or `sigma(0) != 0_L`.
    ZeroKernel { element: usize },
    /// `sigma(g) != sigma(-g)`.
    Symmetry { element: usize },
    /// `sigma(g + h)` is not below `sigma(g) v sigma(h)`.
    Subadditivity { g: usize, h: usize },
    /// The ball of `S1 v S2` differs from the sum of the two balls; `element`
    /// belongs to exactly one of the two sides.
    BallSum { s1: usize, s2: usize, element: usize },
    /// Two lattice elements of the same rank carry balls of different sizes.
    BallSize {
        rank: usize,
        first: (usize, u64),
        second: (usize, u64),
    },
}

impl std::fmt::Display for SupportViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::ZeroKernel { element } => {
                write!(f, "zero-kernel axiom fails at element {element}")
            }
            Self::Symmetry { element } => {
                write!(f, "symmetry axiom fails at element {element}")
            }
            Self::Subadditivity { g, h } => {
                write!(f, "subadditivity axiom fails at elements ({g}, {h})")
            }
            Self::BallSum { s1, s2, element } => write!(
                f,
                "ball-sum axiom fails for lattice pair ({s1}, {s2}) at element {element}"
            ),
            Self::BallSize { rank, first, second } => write!(
                f,
                "ball sizes at rank {rank} differ: |ball({})| = {}, |ball({})| = {}",
                first.0, first.1, second.0, second.1
            ),
        }
    }
}

#[derive(Debug, Error)]
pub enum SupportError {
    #[error("support axiom violated: {0}")]
    Violation(SupportViolation),
    #[error("lattice error: {0}")]
    Lattice(#[from] LatticeError),
    #[error("group error: {0}")]
    Group(#[from] GroupError),
    #[error("sigma has {got} entries, group has {expected} elements")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("sigma entry {0} out of range for lattice of size {1}")]
    SigmaOutOfRange(usize, usize),
    #[error("bad support parameters: {0}")]
    BadParameters(String),
    #[error("the zero code has no minimum weight")]
    ZeroCode,
}

/// An unvalidated support assignment `sigma: element index -> lattice index`.
#[derive(Debug, Clone)]
pub struct SupportMap {
    pub group: FiniteAbelianGroup,
    pub lattice: Lattice,
    pub sigma: Vec<usize>,
}

/// A validated regular support. All axioms have been checked exhaustively;
/// the gamma table and lattice invariants are frozen at validation time.
#[derive(Debug, Clone)]
pub struct RegularSupport {
    group: FiniteAbelianGroup,
    lattice: Lattice,
    sigma: Vec<usize>,
    gamma: Vec<u64>,
    invariants: LatticeInvariants,
    r: usize,
}

/// A weight histogram `W_0, ..., W_r` of a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

impl SupportMap {
    /// Exhaustively checks the five axioms and lattice regularity. On success
    /// the support is frozen together with its gamma table.
    pub fn validate(self) -> Result<RegularSupport, SupportError> {
        let n = self.group.order() as usize;
        if self.sigma.len() != n {
            return Err(SupportError::ShapeMismatch {
                expected: n,
                got: self.sigma.len(),
            });
        }
        for &s in &self.sigma {
            if s >= self.lattice.size() {
                return Err(SupportError::SigmaOutOfRange(s, self.lattice.size()));
            }
        }
        let invariants = self.lattice.invariant_tables()?;
        let r = invariants.r;
        let bottom = self.lattice.bottom();
        let zero_idx = self.group.index_of(&self.group.zero());

        // (A) zero kernel
        for (idx, &s) in self.sigma.iter().enumerate() {
            if (s == bottom) != (idx == zero_idx) {
                return Err(SupportError::Violation(SupportViolation::ZeroKernel {
                    element: idx,
                }));
            }
        }
        // (B) symmetry
        for idx in 0..n {
            let g = self.group.element_at(idx);
            let neg = self.group.index_of(&self.group.neg(&g)?);
            if self.sigma[idx] != self.sigma[neg] {
                return Err(SupportError::Violation(SupportViolation::Symmetry {
                    element: idx,
                }));
            }
        }
        // (C) subadditivity
        for gi in 0..n {
            let g = self.group.element_at(gi);
            for hi in 0..n {
                let h = self.group.element_at(hi);
                let sum = self.group.index_of(&self.group.add(&g, &h)?);
                let bound = self.lattice.join(self.sigma[gi], self.sigma[hi]);
                if !self.lattice.leq(self.sigma[sum], bound) {
                    return Err(SupportError::Violation(SupportViolation::Subadditivity {
                        g: gi,
                        h: hi,
                    }));
                }
            }
        }
        // Ball membership per lattice element.
        let balls: Vec<Vec<bool>> = (0..self.lattice.size())
            .map(|s| {
                (0..n)
                    .map(|idx| self.lattice.leq(self.sigma[idx], s))
                    .collect()
            })
            .collect();
        // (D) ball-sum over all lattice pairs
        for s1 in 0..self.lattice.size() {
            for s2 in 0..self.lattice.size() {
                let mut sumset = vec![false; n];
                for gi in (0..n).filter(|&i| balls[s1][i]) {
                    let g = self.group.element_at(gi);
                    for hi in (0..n).filter(|&i| balls[s2][i]) {
                        let h = self.group.element_at(hi);
                        sumset[self.group.index_of(&self.group.add(&g, &h)?)] = true;
                    }
                }
                let target = &balls[self.lattice.join(s1, s2)];
                if let Some(element) = (0..n).find(|&i| sumset[i] != target[i]) {
                    return Err(SupportError::Violation(SupportViolation::BallSum {
                        s1,
                        s2,
                        element,
                    }));
                }
            }
        }
        // (E) ball size depends only on rank; fill the gamma table.
        let mut gamma = vec![0u64; r + 1];
        let mut first_at_rank: Vec<Option<(usize, u64)>> = vec![None; r + 1];
        for s in 0..self.lattice.size() {
            let rank = self.lattice.rank_of(s)?;
            let size = balls[s].iter().filter(|&&b| b).count() as u64;
            match first_at_rank[rank] {
                Some(prev) if prev.1 != size => {
                    return Err(SupportError::Violation(SupportViolation::BallSize {
                        rank,
                        first: prev,
                        second: (s, size),
                    }));
                }
                Some(_) => {}
                None => {
                    first_at_rank[rank] = Some((s, size));
                    gamma[rank] = size;
                }
            }
        }
        Ok(RegularSupport {
            group: self.group,
            lattice: self.lattice,
            sigma: self.sigma,
            gamma,
            invariants,
            r,
        })
    }
}

impl RegularSupport {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn invariants(&self) -> &LatticeInvariants {
        &self.invariants
    }

    /// Rank of the lattice.
    pub fn r(&self) -> usize {
        self.r
    }

    /// `gamma[s] = |ball(S)|` for any `S` of rank `s`.
    pub fn gamma(&self) -> &[u64] {
        &self.gamma
    }

    pub fn sigma_index(&self, element: usize) -> usize {
        self.sigma[element]
    }

    pub fn sigma(&self, g: &GroupElement) -> usize {
        self.sigma[self.group.index_of(g)]
    }

    /// The subgroup of all elements supported below `s`.
    pub fn ball(&self, s: usize) -> Code {
        let set: BTreeSet<GroupElement> = self
            .group
            .elements()
            .filter(|g| self.lattice.leq(self.sigma(g), s))
            .collect();
        Code::from_element_set(&self.group, &set)
            .expect("balls of a validated support are subgroups")
    }

    /// `omega_sigma(g)`: the rank of `sigma(g)`.
    pub fn weight(&self, g: &GroupElement) -> usize {
        self.weight_of_index(self.group.index_of(g))
    }

    pub fn weight_of_index(&self, element: usize) -> usize {
        self.lattice
            .rank_of(self.sigma[element])
            .expect("validated support has a graded lattice")
    }

    /// The full weight vector, indexed by element.
    pub fn weights(&self) -> Vec<usize> {
        (0..self.group.order() as usize)
            .map(|i| self.weight_of_index(i))
            .collect()
    }

    /// The dual support on the character group, with values in the dual
    /// lattice: `sigma*(chi)` is the join of all lattice elements whose ball
    /// `chi` annihilates. The join is asserted to itself be annihilated (it
    /// is the maximum of the annihilated set).
    pub fn dual(&self) -> RegularSupport {
        let dual_group = self.group.dual_group();
        let n = self.group.order() as usize;
        let ball_elems: Vec<Vec<GroupElement>> = (0..self.lattice.size())
            .map(|s| {
                self.group
                    .elements()
                    .filter(|g| self.lattice.leq(self.sigma(g), s))
                    .collect()
            })
            .collect();
        let mut sigma_star = vec![0usize; n];
        for (chi_idx, slot) in sigma_star.iter_mut().enumerate() {
            let chi = dual_group.element_at(chi_idx);
            let annihilated: Vec<usize> = (0..self.lattice.size())
                .filter(|&s| {
                    ball_elems[s].iter().all(|g| {
                        self.group.char_pairing(&chi, g).expect("same presentation") == 0
                    })
                })
                .collect();
            let join = annihilated
                .iter()
                .fold(self.lattice.bottom(), |acc, &s| self.lattice.join(acc, s));
            assert!(
                annihilated.contains(&join),
                "the annihilated set must be closed under joins"
            );
            *slot = join;
        }
        SupportMap {
            group: dual_group,
            lattice: self.lattice.dual(),
            sigma: sigma_star,
        }
        .validate()
        .expect("the dual of a regular support is regular")
    }

    /// Histogram of the induced weight over a code.
    pub fn weight_distribution(&self, code: &Code) -> WeightDistribution {
        let mut counts = vec![0u64; self.r + 1];
        for &idx in code.element_indices() {
            counts[self.weight_of_index(idx)] += 1;
        }
        WeightDistribution { counts }
    }

    /// Minimum positive weight of a nonzero code.
    pub fn min_weight(&self, code: &Code) -> Result<usize, SupportError> {
        code.element_indices()
            .iter()
            .map(|&idx| self.weight_of_index(idx))
            .filter(|&w| w > 0)
            .min()
            .ok_or(SupportError::ZeroCode)
    }

    /// Exhaustively checks that `d(g, h) = weight(g - h)` is a metric,
    /// returning a witness triple on a triangle-inequality failure.
    /// Guaranteed to pass when the lattice is modular.
    pub fn check_distance(&self) -> Result<(), (usize, usize, usize)> {
        let n = self.group.order() as usize;
        let mut dist = vec![vec![0usize; n]; n];
        for i in 0..n {
            let gi = self.group.element_at(i);
            for j in 0..n {
                let gj = self.group.element_at(j);
                let diff = self.group.sub(&gi, &gj).expect("same group");
                dist[i][j] = self.weight(&diff);
            }
        }
        for i in 0..n {
            for j in 0..n {
                // identity and symmetry follow from axioms (A) and (B)
                debug_assert_eq!(dist[i][j] == 0, i == j);
                debug_assert_eq!(dist[i][j], dist[j][i]);
                for u in 0..n {
                    if dist[i][j] > dist[i][u] + dist[u][j] {
                        return Err((i, j, u));
                    }
                }
            }
        }
        Ok(())
    }
}

/// True iff two weight functions over the same element domain induce the
/// same partition (Krawtchouk data depends only on the partition).
pub fn weights_equivalent(wa: &[usize], wb: &[usize]) -> bool {
    if wa.len() != wb.len() {
        return false;
    }
    let mut fwd: BTreeMap<usize, usize> = BTreeMap::new();
    let mut bwd: BTreeMap<usize, usize> = BTreeMap::new();
    for (&a, &b) in wa.iter().zip(wb) {
        if *fwd.entry(a).or_insert(b) != b || *bwd.entry(b).or_insert(a) != a {
            return false;
        }
    }
    true
}

/// Relabeling that takes the builtin Lee support's rank classes on `Z_4` to
/// Lee-weight labels: rank 1 is the class `{2}` (Lee weight 2) and rank 2 is
/// `{1, 3}` (Lee weight 1). Applying it to both axes of a Krawtchouk table
/// yields the Lee-labeled table.
pub const LEE_CLASS_PERMUTATION: [usize; 3] = [0, 2, 1];

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Hamming support on `base^n`: the boolean lattice of coordinate sets, with
/// `sigma(g)` the set of nonzero block coordinates.
pub fn hamming(base: &FiniteAbelianGroup, n: usize) -> Result<RegularSupport, SupportError> {
    if n == 0 {
        return Err(SupportError::BadParameters("hamming needs n >= 1".into()));
    }
    let group = base.power(n)?;
    let lattice = Lattice::boolean(n);
    let block = base.orders().len();
    let sigma = group
        .elements()
        .map(|g| {
            let mut mask = 0usize;
            for i in 0..n {
                if g.coords()[i * block..(i + 1) * block].iter().any(|&c| c != 0) {
                    mask |= 1 << i;
                }
            }
            mask
        })
        .collect();
    SupportMap {
        group,
        lattice,
        sigma,
    }
    .validate()
}

/// Rank support on `k x m` matrices over `F_q`: the lattice of subspaces of
/// `F_q^k`, with `sigma(M)` the column space of `M`. The additive group is
/// `Z_p^{kme}`; each matrix entry occupies `e` base-p coordinates that encode
/// an `F_q` element in the polynomial basis.
pub fn rank_support(q: u64, k: usize, m: usize) -> Result<RegularSupport, SupportError> {
    if k == 0 || m == 0 {
        return Err(SupportError::BadParameters(
            "rank support needs k, m >= 1".into(),
        ));
    }
    let field = Gf::new(q)
        .map_err(|e| SupportError::BadParameters(e.to_string()))?;
    let p = field.characteristic();
    let e = field.degree() as usize;
    let sub = SubspaceLattice::new(q, k)
        .map_err(|err| SupportError::BadParameters(err.to_string()))?;
    let group = FiniteAbelianGroup::new(vec![p; k * m * e])?;
    let sigma = group
        .elements()
        .map(|g| {
            let entry = |row: usize, col: usize| -> u64 {
                (0..e)
                    .map(|t| g.coords()[(row * m + col) * e + t] * p.pow(t as u32))
                    .sum()
            };
            let cols: Vec<Vec<u64>> = (0..m)
                .map(|col| (0..k).map(|row| entry(row, col)).collect())
                .collect();
            let space = gf::span(&field, &cols, k);
            sub.index_of(&space).expect("span is a subspace")
        })
        .collect();
    SupportMap {
        group,
        lattice: sub.lattice.clone(),
        sigma,
    }
    .validate()
}

/// Chain support from a subgroup chain `{0} = G_0 < G_1 < ... < G_r = G`:
/// `sigma(g)` is the least `i` with `g` in `G_i`.
pub fn chain_support(
    group: &FiniteAbelianGroup,
    chain: &[Code],
) -> Result<RegularSupport, SupportError> {
    if chain.len() < 2
        || chain[0].len() != 1
        || chain[chain.len() - 1].len() != group.order()
    {
        return Err(SupportError::BadParameters(
            "chain must run from the zero subgroup to the full group".into(),
        ));
    }
    for w in chain.windows(2) {
        let contained = w[0].element_indices().iter().all(|&i| w[1].contains_index(i));
        if !contained || w[0].len() >= w[1].len() {
            return Err(SupportError::BadParameters(
                "chain subgroups must strictly increase".into(),
            ));
        }
    }
    let r = chain.len() - 1;
    let sigma = (0..group.order() as usize)
        .map(|idx| (0..=r).find(|&i| chain[i].contains_index(idx)).unwrap())
        .collect();
    SupportMap {
        group: group.clone(),
        lattice: Lattice::chain(r),
        sigma,
    }
    .validate()
}

/// The chain support `{0} < {0,2} < Z_4`, whose weight is equivalent to the
/// Lee weight on `Z_4`.
pub fn lee4() -> RegularSupport {
    let group = FiniteAbelianGroup::new(vec![4]).expect("Z_4");
    let two = group.element(vec![2]).expect("element 2");
    let chain = [
        Code::zero_code(&group),
        Code::closure(&group, vec![two]).expect("closure of 2"),
        Code::full_code(&group),
    ];
    chain_support(&group, &chain).expect("the Lee chain is regular")
}

/// Homogeneous-weight support on `(Z_{p^2})^n`, `p >= 3` prime: the punctured
/// boolean lattice, with `sigma(a)` the top unless `a` lies in the socle
/// `(pZ_{p^2})^n`, in which case it is the Hamming support of `a` there.
pub fn homogeneous(p: u64, n: usize) -> Result<RegularSupport, SupportError> {
    if !is_prime(p) || p < 3 {
        return Err(SupportError::BadParameters(format!(
            "homogeneous support needs an odd prime, got {p}"
        )));
    }
    if n == 0 {
        return Err(SupportError::BadParameters(
            "homogeneous support needs n >= 1".into(),
        ));
    }
    let group = FiniteAbelianGroup::new(vec![p * p; n])?;
    let lattice = Lattice::punctured_boolean(n);
    let top = 1usize << n;
    let sigma = group
        .elements()
        .map(|a| {
            if a.coords().iter().any(|&c| c % p != 0) {
                top
            } else {
                let mut mask = 0usize;
                for (i, &c) in a.coords().iter().enumerate() {
                    if c != 0 {
                        mask |= 1 << i;
                    }
                }
                mask
            }
        })
        .collect();
    SupportMap {
        group,
        lattice,
        sigma,
    }
    .validate()
}
