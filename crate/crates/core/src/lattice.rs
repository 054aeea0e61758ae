//! Finite graded lattices, Möbius functions, regularity and modularity
//! checks, and the invariant tables `mu_leq`, `mu_geq`, `mu_L` in both
//! enumerated and closed form.
//!
//! Lattice elements are indexed integers; the order relation, meet and join
//! are stored as explicit tables so exhaustive checks stay cheap.

use std::collections::BTreeMap;

use num::BigInt;
use thiserror::Error;

use crate::comb::{binomial, q_binomial, q_pow_choose2};
use crate::gf::{self, Gf};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("element index {0} out of range (size {1})")]
    IndexOutOfRange(usize, usize),
    #[error("the relation is not antisymmetric: {0} and {1} are equivalent")]
    NotAntisymmetric(usize, usize),
    #[error("elements {0} and {1} have no unique {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("the lattice is not graded: rank conflict at element {0}")]
    NotGraded(usize),
    #[error("Moebius function requires S <= T, got ({0}, {1})")]
    NotComparable(usize, usize),
    #[error("declared rank vector disagrees with cover ranks at element {0}")]
    RankMismatch(usize),
    #[error("unknown lattice family")]
    UnknownFamily,
    #[error("lattice is not regular: {0}")]
    NotRegular(RegularityCounterexample),
}

/// Witness returned when a lattice fails the regularity conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegularityCounterexample {
    /// Two elements of equal rank `t` have different numbers of rank-`s`
    /// elements below them.
    CountBelow {
        s: usize,
        first: (usize, usize),
        second: (usize, usize),
    },
    /// Same, for elements above.
    CountAbove {
        s: usize,
        first: (usize, usize),
        second: (usize, usize),
    },
    /// Two pairs with equal ranks have different Möbius values.
    MobiusValue {
        first: ((usize, usize), i64),
        second: ((usize, usize), i64),
    },
    /// Two intervals with equal rank data have different level counts.
    IntervalCount {
        i: usize,
        first: ((usize, usize), usize),
        second: ((usize, usize), usize),
    },
}

impl std::fmt::Display for RegularityCounterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::CountBelow { s, first, second } => write!(
                f,
                "rank-{s} counts below elements {} and {} differ ({} vs {})",
                first.0, second.0, first.1, second.1
            ),
            Self::CountAbove { s, first, second } => write!(
                f,
                "rank-{s} counts above elements {} and {} differ ({} vs {})",
                first.0, second.0, first.1, second.1
            ),
            Self::MobiusValue { first, second } => write!(
                f,
                "Moebius values differ on pairs {:?} ({}) and {:?} ({})",
                first.0, first.1, second.0, second.1
            ),
            Self::IntervalCount { i, first, second } => write!(
                f,
                "level-{i} interval counts differ on {:?} ({}) and {:?} ({})",
                first.0, first.1, second.0, second.1
            ),
        }
    }
}

/// A finite lattice with explicit order, meet and join tables.
/// `rank` is present iff the lattice is graded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    size: usize,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    rank: Option<Vec<usize>>,
}

/// The three invariant tables of a regular lattice, indexed `[s][t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeInvariants {
    pub r: usize,
    /// `mu_leq[s][t]`: number of rank-s elements below any rank-t element.
    pub mu_leq: Vec<Vec<BigInt>>,
    /// `mu_geq[s][t]`: number of rank-s elements above any rank-t element.
    pub mu_geq: Vec<Vec<BigInt>>,
    /// `mu_mob[s][t]`: Möbius value of any rank-(s,t) comparable pair.
    pub mu_mob: Vec<Vec<BigInt>>,
}

/// The builtin lattice families with closed-form invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeFamily {
    Chain { r: usize },
    Boolean { n: usize },
    Subspace { q: u64, k: usize },
    PuncturedBoolean { n: usize },
}

impl Lattice {
    /// Builds a lattice from an order predicate over `0..size`.
    pub fn from_leq_fn(
        size: usize,
        leq_fn: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, LatticeError> {
        let mut leq = vec![vec![false; size]; size];
        for (i, row) in leq.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = i == j || leq_fn(i, j);
            }
        }
        Self::from_relation(leq)
    }

    /// Builds a lattice from a generating relation given as pairs `(i, j)`
    /// meaning `i <= j`; the reflexive-transitive closure is taken first.
    pub fn from_leq_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let mut leq = vec![vec![false; size]; size];
        for i in 0..size {
            leq[i][i] = true;
        }
        for &(i, j) in pairs {
            if i >= size || j >= size {
                return Err(LatticeError::IndexOutOfRange(i.max(j), size));
            }
            leq[i][j] = true;
        }
        // Warshall closure.
        for k in 0..size {
            for i in 0..size {
                if leq[i][k] {
                    for j in 0..size {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_relation(leq)
    }

    fn from_relation(leq: Vec<Vec<bool>>) -> Result<Self, LatticeError> {
        let size = leq.len();
        for i in 0..size {
            for j in 0..size {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(LatticeError::NotAntisymmetric(i, j));
                }
            }
        }
        let mut meet = vec![vec![0usize; size]; size];
        let mut join = vec![vec![0usize; size]; size];
        for i in 0..size {
            for j in 0..size {
                meet[i][j] = Self::bound(&leq, size, i, j, true)
                    .ok_or(LatticeError::NotALattice(i, j, "meet"))?;
                join[i][j] = Self::bound(&leq, size, i, j, false)
                    .ok_or(LatticeError::NotALattice(i, j, "join"))?;
            }
        }
        let bottom = (0..size)
            .find(|&b| (0..size).all(|j| leq[b][j]))
            .ok_or(LatticeError::NotALattice(0, 0, "bottom"))?;
        let top = (0..size)
            .find(|&t| (0..size).all(|j| leq[j][t]))
            .ok_or(LatticeError::NotALattice(0, 0, "top"))?;
        let rank = Self::grade(&leq, size, bottom);
        Ok(Self {
            size,
            leq,
            meet,
            join,
            bottom,
            top,
            rank,
        })
    }

    /// Unique greatest lower bound (or least upper bound) of `i` and `j`.
    fn bound(leq: &[Vec<bool>], size: usize, i: usize, j: usize, lower: bool) -> Option<usize> {
        let ok = |u: usize| {
            if lower {
                leq[u][i] && leq[u][j]
            } else {
                leq[i][u] && leq[j][u]
            }
        };
        let bounds: Vec<usize> = (0..size).filter(|&u| ok(u)).collect();
        bounds
            .iter()
            .copied()
            .find(|&m| {
                bounds
                    .iter()
                    .all(|&u| if lower { leq[u][m] } else { leq[m][u] })
            })
    }

    /// Assigns ranks along cover relations; `None` if the assignment is
    /// inconsistent (the lattice is not graded).
    fn grade(leq: &[Vec<bool>], size: usize, bottom: usize) -> Option<Vec<usize>> {
        let covers = |i: usize, j: usize| {
            i != j
                && leq[i][j]
                && !(0..size).any(|u| u != i && u != j && leq[i][u] && leq[u][j])
        };
        let mut rank = vec![usize::MAX; size];
        rank[bottom] = 0;
        // Process elements in order of the number of elements below them,
        // which is a linear extension of the lattice order.
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by_key(|&i| (0..size).filter(|&u| leq[u][i]).count());
        for &j in &order {
            for i in 0..size {
                if covers(i, j) {
                    if rank[i] == usize::MAX {
                        return None;
                    }
                    if rank[j] == usize::MAX {
                        rank[j] = rank[i] + 1;
                    } else if rank[j] != rank[i] + 1 {
                        return None;
                    }
                }
            }
            if rank[j] == usize::MAX {
                return None; // unreachable element (not a lattice anyway)
            }
        }
        Some(rank)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn is_graded(&self) -> bool {
        self.rank.is_some()
    }

    pub fn rank_of(&self, i: usize) -> Result<usize, LatticeError> {
        let rank = self.rank.as_ref().ok_or(LatticeError::NotGraded(i))?;
        Ok(rank[i])
    }

    /// The rank of the lattice (the rank of the top element).
    pub fn rk(&self) -> Result<usize, LatticeError> {
        self.rank_of(self.top)
    }

    /// Verifies a caller-supplied rank vector against the computed one.
    pub fn verify_rank(&self, declared: &[usize]) -> Result<(), LatticeError> {
        let rank = self
            .rank
            .as_ref()
            .ok_or(LatticeError::NotGraded(self.top))?;
        if declared.len() != self.size {
            return Err(LatticeError::RankMismatch(declared.len()));
        }
        for i in 0..self.size {
            if declared[i] != rank[i] {
                return Err(LatticeError::RankMismatch(i));
            }
        }
        Ok(())
    }

    /// Full element-wise Möbius table; `mob[i][j]` is only meaningful when
    /// `i <= j` in the lattice order.
    pub fn mobius_table(&self) -> Vec<Vec<i64>> {
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&i| (0..self.size).filter(|&u| self.leq[u][i]).count());
        let mut mob = vec![vec![0i64; self.size]; self.size];
        for s in 0..self.size {
            mob[s][s] = 1;
            for &t in &order {
                if t == s || !self.leq[s][t] {
                    continue;
                }
                let sum: i64 = (0..self.size)
                    .filter(|&u| self.leq[s][u] && self.leq[u][t] && u != t)
                    .map(|u| mob[s][u])
                    .sum();
                mob[s][t] = -sum;
            }
        }
        mob
    }

    /// Möbius value of a comparable pair by the recursive definition.
    pub fn mobius(&self, s: usize, t: usize) -> Result<i64, LatticeError> {
        if s >= self.size || t >= self.size {
            return Err(LatticeError::IndexOutOfRange(s.max(t), self.size));
        }
        if !self.leq[s][t] {
            return Err(LatticeError::NotComparable(s, t));
        }
        Ok(self.mobius_table()[s][t])
    }

    /// Exhaustively checks both regularity conditions over all
    /// representatives. On success the lattice admits well-defined invariant
    /// tables.
    pub fn check_regular(&self) -> Result<(), LatticeError> {
        self.invariant_tables().map(|_| ())
    }

    /// Computes the invariant tables by full enumeration, verifying
    /// representative independence across all representatives.
    pub fn invariant_tables(&self) -> Result<LatticeInvariants, LatticeError> {
        let rank = self
            .rank
            .as_ref()
            .ok_or(LatticeError::NotGraded(self.top))?;
        let r = rank[self.top];
        let mut mu_leq = vec![vec![BigInt::from(0); r + 1]; r + 1];
        let mut mu_geq = vec![vec![BigInt::from(0); r + 1]; r + 1];
        let mut mu_mob = vec![vec![BigInt::from(0); r + 1]; r + 1];
        for s in 0..=r {
            for t in 0..=r {
                let mut below: Option<(usize, usize)> = None;
                let mut above: Option<(usize, usize)> = None;
                for elem in 0..self.size {
                    if rank[elem] != t {
                        continue;
                    }
                    let nb = (0..self.size)
                        .filter(|&u| rank[u] == s && self.leq[u][elem])
                        .count();
                    let na = (0..self.size)
                        .filter(|&u| rank[u] == s && self.leq[elem][u])
                        .count();
                    if let Some(prev) = below {
                        if prev.1 != nb {
                            return Err(LatticeError::NotRegular(
                                RegularityCounterexample::CountBelow {
                                    s,
                                    first: prev,
                                    second: (elem, nb),
                                },
                            ));
                        }
                    } else {
                        below = Some((elem, nb));
                    }
                    if let Some(prev) = above {
                        if prev.1 != na {
                            return Err(LatticeError::NotRegular(
                                RegularityCounterexample::CountAbove {
                                    s,
                                    first: prev,
                                    second: (elem, na),
                                },
                            ));
                        }
                    } else {
                        above = Some((elem, na));
                    }
                }
                mu_leq[s][t] = BigInt::from(below.map_or(0, |b| b.1));
                mu_geq[s][t] = BigInt::from(above.map_or(0, |a| a.1));
            }
        }
        let mob = self.mobius_table();
        for s in 0..=r {
            for t in s..=r {
                let mut value: Option<((usize, usize), i64)> = None;
                for a in 0..self.size {
                    if rank[a] != s {
                        continue;
                    }
                    for b in 0..self.size {
                        if rank[b] != t || !self.leq[a][b] {
                            continue;
                        }
                        if let Some(prev) = value {
                            if prev.1 != mob[a][b] {
                                return Err(LatticeError::NotRegular(
                                    RegularityCounterexample::MobiusValue {
                                        first: prev,
                                        second: ((a, b), mob[a][b]),
                                    },
                                ));
                            }
                        } else {
                            value = Some(((a, b), mob[a][b]));
                        }
                    }
                }
                mu_mob[s][t] = BigInt::from(value.map_or(0, |v| v.1));
            }
        }
        Ok(LatticeInvariants {
            r,
            mu_leq,
            mu_geq,
            mu_mob,
        })
    }

    /// Accepts regularity via the interval-count criterion: for every
    /// comparable pair the number of elements at each intermediate rank
    /// depends only on the three ranks involved.
    pub fn check_regular_intervals(&self) -> Result<(), LatticeError> {
        let rank = self
            .rank
            .as_ref()
            .ok_or(LatticeError::NotGraded(self.top))?;
        let mut seen: BTreeMap<(usize, usize, usize), ((usize, usize), usize)> = BTreeMap::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if !self.leq[a][b] {
                    continue;
                }
                for i in rank[a]..=rank[b] {
                    let count = (0..self.size)
                        .filter(|&u| rank[u] == i && self.leq[a][u] && self.leq[u][b])
                        .count();
                    match seen.get(&(i, rank[a], rank[b])) {
                        Some(&prev) if prev.1 != count => {
                            return Err(LatticeError::NotRegular(
                                RegularityCounterexample::IntervalCount {
                                    i,
                                    first: prev,
                                    second: ((a, b), count),
                                },
                            ));
                        }
                        Some(_) => {}
                        None => {
                            seen.insert((i, rank[a], rank[b]), ((a, b), count));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Exhaustive check of the modular law `S v (T ^ U) = (S v T) ^ U` for
    /// all triples with `S <= U`. Returns a witness triple on failure.
    pub fn check_modular(&self) -> Result<(), (usize, usize, usize)> {
        for s in 0..self.size {
            for u in 0..self.size {
                if !self.leq[s][u] {
                    continue;
                }
                for t in 0..self.size {
                    let lhs = self.join[s][self.meet[t][u]];
                    let rhs = self.meet[self.join[s][t]][u];
                    if lhs != rhs {
                        return Err((s, t, u));
                    }
                }
            }
        }
        Ok(())
    }

    /// The dual lattice: order reversed, meet and join swapped, rank
    /// complemented.
    pub fn dual(&self) -> Lattice {
        let size = self.size;
        let mut leq = vec![vec![false; size]; size];
        for i in 0..size {
            for j in 0..size {
                leq[i][j] = self.leq[j][i];
            }
        }
        let rank = self.rank.as_ref().map(|rank| {
            let r = rank[self.top];
            rank.iter().map(|&x| r - x).collect()
        });
        Lattice {
            size,
            leq,
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
            rank,
        }
    }

    // ---- builtin families ----

    /// The chain `S_0 < S_1 < ... < S_r`.
    pub fn chain(r: usize) -> Lattice {
        Lattice::from_leq_fn(r + 1, |i, j| i <= j).expect("chain is a lattice")
    }

    /// The Boolean lattice of subsets of `[n]`, elements indexed by bitmask.
    pub fn boolean(n: usize) -> Lattice {
        Lattice::from_leq_fn(1 << n, |i, j| i & j == i).expect("boolean is a lattice")
    }

    /// Subsets of `[n+1]` avoiding `n+1`, plus the full set `[n+1]` on top.
    /// Indices `0..2^n` are bitmasks over `[n]`; index `2^n` is the top.
    pub fn punctured_boolean(n: usize) -> Lattice {
        let top = 1usize << n;
        Lattice::from_leq_fn(top + 1, move |i, j| j == top || (i != top && i & j == i))
            .expect("punctured boolean is a lattice")
    }
}

/// The lattice of subspaces of `F_q^k` together with, for each lattice
/// element, the sorted vector-index set of the subspace it represents.
#[derive(Debug, Clone)]
pub struct SubspaceLattice {
    pub lattice: Lattice,
    pub field: Gf,
    pub k: usize,
    /// For each lattice index, the sorted indices of the vectors it contains.
    pub subspaces: Vec<Vec<usize>>,
    index_by_key: BTreeMap<Vec<usize>, usize>,
}

impl SubspaceLattice {
    /// Enumerates every subspace of `F_q^k` as the row space of some matrix.
    pub fn new(q: u64, k: usize) -> Result<Self, crate::gf::FieldError> {
        let field = Gf::new(q)?;
        let total = (q as usize).pow(k as u32);
        let mut keys: Vec<Vec<usize>> = vec![vec![0]]; // the zero subspace
        let mut seen: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
        seen.insert(vec![0], ());
        // Grow subspaces one generator at a time; every subspace is reached.
        let mut frontier = vec![vec![0usize]];
        while let Some(space) = frontier.pop() {
            for v_idx in 1..total {
                if space.binary_search(&v_idx).is_ok() {
                    continue;
                }
                let mut gens: Vec<Vec<u64>> = space
                    .iter()
                    .map(|&i| gf::vector_at(&field, i, k))
                    .collect();
                gens.push(gf::vector_at(&field, v_idx, k));
                let bigger = gf::span(&field, &gens, k);
                if !seen.contains_key(&bigger) {
                    seen.insert(bigger.clone(), ());
                    keys.push(bigger.clone());
                    frontier.push(bigger);
                }
            }
        }
        keys.sort_by_key(|s| (s.len(), s.clone()));
        let index_by_key: BTreeMap<Vec<usize>, usize> = keys
            .iter()
            .enumerate()
            .map(|(i, key)| (key.clone(), i))
            .collect();
        let lattice = Lattice::from_leq_fn(keys.len(), |i, j| {
            keys[i].iter().all(|v| keys[j].binary_search(v).is_ok())
        })
        .expect("subspaces form a lattice");
        Ok(Self {
            lattice,
            field,
            k,
            subspaces: keys,
            index_by_key,
        })
    }

    pub fn index_of(&self, sorted_vectors: &[usize]) -> Option<usize> {
        self.index_by_key.get(sorted_vectors).copied()
    }
}

/// Invariant tables from the closed forms of the builtin families.
pub fn closed_form_invariants(family: &LatticeFamily) -> LatticeInvariants {
    match family {
        LatticeFamily::Chain { r } => {
            let r = *r;
            let tbl = |f: &dyn Fn(usize, usize) -> i64| {
                (0..=r)
                    .map(|s| (0..=r).map(|t| BigInt::from(f(s, t))).collect())
                    .collect()
            };
            LatticeInvariants {
                r,
                mu_leq: tbl(&|s, t| i64::from(s <= t)),
                mu_geq: tbl(&|s, t| i64::from(s >= t)),
                mu_mob: tbl(&|s, t| {
                    if s == t {
                        1
                    } else if t == s + 1 {
                        -1
                    } else {
                        0
                    }
                }),
            }
        }
        LatticeFamily::Boolean { n } => {
            let n = *n;
            let grid = |f: &dyn Fn(i64, i64) -> BigInt| {
                (0..=n as i64)
                    .map(|s| (0..=n as i64).map(|t| f(s, t)).collect())
                    .collect()
            };
            LatticeInvariants {
                r: n,
                mu_leq: grid(&|s, t| binomial(t, s)),
                mu_geq: grid(&|s, t| binomial(n as i64 - t, s - t)),
                mu_mob: grid(&|s, t| {
                    if s <= t {
                        BigInt::from(if (t - s) % 2 == 0 { 1 } else { -1 })
                    } else {
                        BigInt::from(0)
                    }
                }),
            }
        }
        LatticeFamily::Subspace { q, k } => {
            let (q, k) = (*q, *k as i64);
            let grid = |f: &dyn Fn(i64, i64) -> BigInt| {
                (0..=k)
                    .map(|s| (0..=k).map(|t| f(s, t)).collect())
                    .collect()
            };
            LatticeInvariants {
                r: k as usize,
                mu_leq: grid(&|s, t| q_binomial(t, s, q)),
                mu_geq: grid(&|s, t| q_binomial(k - t, s - t, q)),
                mu_mob: grid(&|s, t| {
                    if s <= t {
                        let sign = if (t - s) % 2 == 0 { 1 } else { -1 };
                        BigInt::from(sign) * q_pow_choose2(q, t - s)
                    } else {
                        BigInt::from(0)
                    }
                }),
            }
        }
        LatticeFamily::PuncturedBoolean { n } => {
            let n = *n as i64;
            let r = (n + 1) as usize;
            let grid = |f: &dyn Fn(i64, i64) -> BigInt| {
                (0..=n + 1)
                    .map(|s| (0..=n + 1).map(|t| f(s, t)).collect())
                    .collect()
            };
            LatticeInvariants {
                r,
                mu_leq: grid(&|s, t| {
                    if s > t {
                        BigInt::from(0)
                    } else if t <= n {
                        binomial(t, s)
                    } else if s <= n {
                        binomial(n, s)
                    } else {
                        BigInt::from(1) // s = t = n + 1
                    }
                }),
                mu_geq: grid(&|s, t| {
                    if s < t {
                        BigInt::from(0)
                    } else if s <= n {
                        binomial(n - t, s - t)
                    } else {
                        BigInt::from(1) // s = n + 1 >= t
                    }
                }),
                mu_mob: grid(&|s, t| {
                    if s <= t && t <= n {
                        BigInt::from(if (t - s) % 2 == 0 { 1 } else { -1 })
                    } else if t == n + 1 && s == n {
                        BigInt::from(-1)
                    } else if s == t {
                        BigInt::from(1) // s = t = n + 1
                    } else {
                        BigInt::from(0)
                    }
                }),
            }
        }
    }
}

/// The enumerated lattice of a builtin family (for cross-checking the
/// closed forms).
pub fn family_lattice(family: &LatticeFamily) -> Result<Lattice, crate::gf::FieldError> {
    Ok(match family {
        LatticeFamily::Chain { r } => Lattice::chain(*r),
        LatticeFamily::Boolean { n } => Lattice::boolean(*n),
        LatticeFamily::Subspace { q, k } => SubspaceLattice::new(*q, *k)?.lattice,
        LatticeFamily::PuncturedBoolean { n } => Lattice::punctured_boolean(*n),
    })
}
