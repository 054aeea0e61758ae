//! Krawtchouk coefficients of regular supports, the character-sum oracle,
//! compatibility checking, MacWilliams transforms (explicit and implicit),
//! product/symmetrized extensions, Singleton bounds, and the solver for the
//! weight distribution of an optimal code. All arithmetic is exact rational.
//!
//! Index convention: in a table for the pair `(omega, tau)`, the row index
//! is the omega-weight of the reference element and the column index is the
//! tau-weight class being summed over.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cyclotomic::{cyclo_reduce, CyclotomicSum};
use crate::group::{Code, FiniteAbelianGroup};
use crate::lattice::LatticeInvariants;
use crate::support::{RegularSupport, SupportError, WeightDistribution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    RegularFormula,
    Oracle,
}

/// An `(r+1) x (r+1)` Krawtchouk matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrawtchoukTable {
    pub entries: Vec<Vec<BigRational>>,
    pub provenance: Provenance,
}

/// Witness of a compatibility failure: two elements of equal omega-weight
/// whose character sums over the tau-class differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityWitness {
    pub tau_class: usize,
    pub g: usize,
    pub g_prime: usize,
}

#[derive(Debug, Error)]
pub enum MacWilliamsError {
    #[error("character sum is not a rational integer (weights {i}, {j})")]
    OracleNotInteger { i: usize, j: usize },
    #[error("character sum depends on the representative (weights {i}, {j}; elements {first}, {second})")]
    RepresentativeDependence {
        i: usize,
        j: usize,
        first: usize,
        second: usize,
    },
    #[error("incompatible pair: elements {} and {} disagree on tau-class {}", .0.g, .0.g_prime, .0.tau_class)]
    Incompatible(CompatibilityWitness),
    #[error("index vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("compositions must sum to the same n (got {0} and {1})")]
    CompositionMismatch(u64, u64),
    #[error("transform output at weight {0} is {1}, not a nonnegative integer")]
    InconsistentTransform(usize, BigRational),
    #[error("the code is trivial")]
    TrivialCode,
    #[error("the code is not optimal (Singleton defect {0})")]
    NotOptimal(BigRational),
    #[error("minimum distance {d} out of range 1..={r}")]
    BadMinimumDistance { d: usize, r: usize },
    #[error("optimal-distribution solution at weight {0} is {1}, not a nonnegative integer")]
    InconsistentSolution(usize, BigRational),
    #[error(transparent)]
    Support(#[from] SupportError),
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn rat_u64(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Krawtchouk coefficient `K(omega_{sigma*}, omega_sigma)(i, j)` from the
/// lattice invariants and gamma table:
/// `sum_s gamma(s) mu_L(s, j) mu_leq(s, r - i) mu_geq(j, s)`.
pub fn krawtchouk_regular(
    inv: &LatticeInvariants,
    gamma: &[u64],
    i: usize,
    j: usize,
) -> BigRational {
    let r = inv.r;
    assert!(i <= r && j <= r, "weights must lie in 0..=r");
    let mut acc = BigInt::zero();
    for s in 0..=r {
        acc += BigInt::from(gamma[s]) * &inv.mu_mob[s][j] * &inv.mu_leq[s][r - i] * &inv.mu_geq[j][s];
    }
    rat(&acc)
}

/// Krawtchouk coefficient `K(omega_sigma, omega_{sigma*})(i, j)`:
/// `|G| sum_s (1/gamma(r-s)) mu_L(r-j, r-s) mu_geq(r-s, i) mu_leq(r-j, r-s)`.
pub fn krawtchouk_regular_dual(
    inv: &LatticeInvariants,
    gamma: &[u64],
    group_order: u64,
    i: usize,
    j: usize,
) -> BigRational {
    let r = inv.r;
    assert!(i <= r && j <= r, "weights must lie in 0..=r");
    let mut acc = BigRational::zero();
    for s in 0..=r {
        let term = rat(&inv.mu_mob[r - j][r - s]) * rat(&inv.mu_geq[r - s][i])
            * rat(&inv.mu_leq[r - j][r - s])
            / rat_u64(gamma[r - s]);
        acc += term;
    }
    acc * rat_u64(group_order)
}

/// Full table for the pair `(omega_{sigma*}, omega_sigma)` (rows indexed by
/// dual weight). This is the kernel taking `W(C*)` back to `W(C)`.
pub fn primal_table(support: &RegularSupport) -> KrawtchoukTable {
    let r = support.r();
    let entries = (0..=r)
        .map(|i| {
            (0..=r)
                .map(|j| krawtchouk_regular(support.invariants(), support.gamma(), i, j))
                .collect()
        })
        .collect();
    KrawtchoukTable {
        entries,
        provenance: Provenance::RegularFormula,
    }
}

/// Full table for the pair `(omega_sigma, omega_{sigma*})` (rows indexed by
/// primal weight). This is the kernel taking `W(C)` to `W(C*)`.
pub fn dual_table(support: &RegularSupport) -> KrawtchoukTable {
    let r = support.r();
    let order = support.group().order();
    let entries = (0..=r)
        .map(|i| {
            (0..=r)
                .map(|j| {
                    krawtchouk_regular_dual(support.invariants(), support.gamma(), order, i, j)
                })
                .collect()
        })
        .collect();
    KrawtchoukTable {
        entries,
        provenance: Provenance::RegularFormula,
    }
}

/// Applies a relabeling of weight classes to both axes:
/// `new[i][j] = old[perm[i]][perm[j]]`.
pub fn permute_table(table: &KrawtchoukTable, perm: &[usize]) -> KrawtchoukTable {
    let entries = perm
        .iter()
        .map(|&pi| perm.iter().map(|&pj| table.entries[pi][pj].clone()).collect())
        .collect();
    KrawtchoukTable {
        entries,
        provenance: table.provenance,
    }
}

/// Character-sum evaluation of `K(i, j)` where the reference element has
/// `rep_weights`-weight `i` and the sum runs over all elements of
/// `sum_weights`-weight `j`. Both weight vectors are indexed by the common
/// element enumeration; the pairing is the canonical one of `group`.
fn character_sum_oracle(
    group: &FiniteAbelianGroup,
    rep_weights: &[usize],
    sum_weights: &[usize],
    i: usize,
    j: usize,
) -> Result<BigRational, MacWilliamsError> {
    let n = group.exponent();
    let mut value: Option<(usize, BigInt)> = None;
    for rep in (0..rep_weights.len()).filter(|&idx| rep_weights[idx] == i) {
        let g = group.element_at(rep);
        let mut raw = vec![BigInt::zero(); n as usize];
        for idx in (0..sum_weights.len()).filter(|&idx| sum_weights[idx] == j) {
            let chi = group.element_at(idx);
            let e = group.char_pairing(&chi, &g).expect("same presentation");
            raw[e as usize] += 1;
        }
        let reduced = cyclo_reduce(&raw, n);
        let int = reduced
            .as_integer()
            .ok_or(MacWilliamsError::OracleNotInteger { i, j })?;
        match &value {
            Some((first, prev)) if *prev != int => {
                return Err(MacWilliamsError::RepresentativeDependence {
                    i,
                    j,
                    first: *first,
                    second: rep,
                });
            }
            Some(_) => {}
            None => value = Some((rep, int)),
        }
    }
    // An unattained reference weight contributes the zero coefficient.
    Ok(value.map_or_else(BigRational::zero, |(_, v)| rat(&v)))
}

/// Oracle for `K(omega_sigma, omega_{sigma*})(i, j)`: a representative `g`
/// of primal weight `i`, summed over all characters of dual weight `j`.
pub fn krawtchouk_oracle(
    support: &RegularSupport,
    dual: &RegularSupport,
    i: usize,
    j: usize,
) -> Result<BigRational, MacWilliamsError> {
    character_sum_oracle(support.group(), &support.weights(), &dual.weights(), i, j)
}

/// Oracle for `K(omega_{sigma*}, omega_sigma)(i, j)`: a representative
/// character of dual weight `i`, summed over all elements of primal weight
/// `j`.
pub fn krawtchouk_oracle_primal(
    support: &RegularSupport,
    dual: &RegularSupport,
    i: usize,
    j: usize,
) -> Result<BigRational, MacWilliamsError> {
    character_sum_oracle(support.group(), &dual.weights(), &support.weights(), i, j)
}

/// Checks that `(omega, tau)` is a compatible pair: for every tau-class, the
/// character sum is constant on each omega-class. `omega` is indexed by
/// elements of `group`, `tau` by characters (same enumeration).
pub fn compatibility_check(
    group: &FiniteAbelianGroup,
    omega: &[usize],
    tau: &[usize],
) -> Result<(), CompatibilityWitness> {
    let n = group.exponent();
    let classes: std::collections::BTreeSet<usize> = tau.iter().copied().collect();
    for &b in &classes {
        let sums: Vec<CyclotomicSum> = (0..omega.len())
            .map(|gi| {
                let g = group.element_at(gi);
                let mut raw = vec![BigInt::zero(); n as usize];
                for idx in (0..tau.len()).filter(|&idx| tau[idx] == b) {
                    let chi = group.element_at(idx);
                    let e = group.char_pairing(&chi, &g).expect("same presentation");
                    raw[e as usize] += 1;
                }
                cyclo_reduce(&raw, n)
            })
            .collect();
        for gi in 0..omega.len() {
            for gj in gi + 1..omega.len() {
                if omega[gi] == omega[gj] && sums[gi] != sums[gj] {
                    return Err(CompatibilityWitness {
                        tau_class: b,
                        g: gi,
                        g_prime: gj,
                    });
                }
            }
        }
    }
    Ok(())
}

/// MacWilliams transform: `W*_b = (1/|C|) sum_a K[a][b] W_a`. Every output
/// entry must be a nonnegative integer.
pub fn transform(
    w: &WeightDistribution,
    table: &KrawtchoukTable,
    code_size: u64,
) -> Result<WeightDistribution, MacWilliamsError> {
    let r = table.entries.len() - 1;
    let mut counts = Vec::with_capacity(r + 1);
    for b in 0..=r {
        let mut acc = BigRational::zero();
        for (a, &wa) in w.counts.iter().enumerate() {
            acc += &table.entries[a][b] * rat_u64(wa);
        }
        acc /= rat_u64(code_size);
        if !acc.is_integer() || acc.is_negative() {
            return Err(MacWilliamsError::InconsistentTransform(b, acc));
        }
        counts.push(acc.to_integer().to_u64().expect("desk-scale count"));
    }
    Ok(WeightDistribution { counts })
}

/// Product coefficient over `G^n`: the product of component coefficients.
pub fn product_krawtchouk(
    table: &KrawtchoukTable,
    a: &[usize],
    b: &[usize],
) -> Result<BigRational, MacWilliamsError> {
    if a.len() != b.len() {
        return Err(MacWilliamsError::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter()
        .zip(b)
        .map(|(&ai, &bi)| table.entries[ai][bi].clone())
        .product())
}

/// Symmetrized coefficient: `d` and `e` are compositions (class-multiplicity
/// vectors) of the same `n`. The reference weight vector contains `d_i`
/// copies of weight `i` in sorted order, and the sum runs over all weight
/// vectors `b` with composition `e`.
pub fn symmetrized_krawtchouk(
    table: &KrawtchoukTable,
    d: &[u64],
    e: &[u64],
) -> Result<BigRational, MacWilliamsError> {
    let nd: u64 = d.iter().sum();
    let ne: u64 = e.iter().sum();
    if nd != ne {
        return Err(MacWilliamsError::CompositionMismatch(nd, ne));
    }
    let n = nd as usize;
    let r = table.entries.len() - 1;
    let a: Vec<usize> = (0..=r).flat_map(|i| std::iter::repeat_n(i, d[i] as usize)).collect();
    let mut acc = BigRational::zero();
    let mut b = vec![0usize; n];
    loop {
        let mut cmp = vec![0u64; r + 1];
        for &bi in &b {
            cmp[bi] += 1;
        }
        if cmp == e {
            acc += product_krawtchouk(table, &a, &b)?;
        }
        // next vector in (r+1)-ary counting order
        let mut pos = 0;
        while pos < n {
            if b[pos] < r {
                b[pos] += 1;
                break;
            }
            b[pos] = 0;
            pos += 1;
        }
        if pos == n {
            break;
        }
    }
    Ok(acc)
}

/// Both sides of the implicit identity at level `s`:
/// `sum_{i<=s} W_i(C) mu_geq(s,i)` and
/// `(|C| / gamma*(r-s)) sum_{j<=r-s} W_j(C*) mu_leq(s, r-j)`,
/// each evaluated independently (the right side via the enumerated dual).
pub fn implicit_identity_residual(
    code: &Code,
    support: &RegularSupport,
    dual_support: &RegularSupport,
    s: usize,
) -> (BigRational, BigRational) {
    let inv = support.invariants();
    let r = inv.r;
    assert!(s <= r);
    let w = support.weight_distribution(code);
    let mut lhs = BigRational::zero();
    for i in 0..=s {
        lhs += rat(&inv.mu_geq[s][i]) * rat_u64(w.counts[i]);
    }
    let dual_code = code.dual();
    let wd = dual_support.weight_distribution(&dual_code);
    let mut rhs = BigRational::zero();
    for j in 0..=(r - s) {
        rhs += rat(&inv.mu_leq[s][r - j]) * rat_u64(wd.counts[j]);
    }
    rhs *= rat_u64(code.len()) / rat_u64(dual_support.gamma()[r - s]);
    (lhs, rhs)
}

/// Singleton defect `|G| / gamma(d - 1) - |C|` (zero iff the code is
/// optimal).
pub fn singleton_defect(
    code: &Code,
    support: &RegularSupport,
) -> Result<BigRational, MacWilliamsError> {
    let d = support.min_weight(code)?;
    let bound = rat_u64(support.group().order()) / rat_u64(support.gamma()[d - 1]);
    Ok(bound - rat_u64(code.len()))
}

pub fn is_optimal(code: &Code, support: &RegularSupport) -> Result<bool, MacWilliamsError> {
    Ok(singleton_defect(code, support)?.is_zero())
}

/// Outcome of checking that the dual of a non-trivial optimal code is itself
/// optimal with minimum dual weight at least `r - d + 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualOptimalityReport {
    pub dual_defect: BigRational,
    pub dual_optimal: bool,
    pub dual_min_weight: usize,
    pub min_weight_bound: usize,
    pub bound_holds: bool,
}

pub fn dual_optimality_check(
    code: &Code,
    support: &RegularSupport,
    dual_support: &RegularSupport,
) -> Result<DualOptimalityReport, MacWilliamsError> {
    if code.is_trivial() {
        return Err(MacWilliamsError::TrivialCode);
    }
    let defect = singleton_defect(code, support)?;
    if !defect.is_zero() {
        return Err(MacWilliamsError::NotOptimal(defect));
    }
    let d = support.min_weight(code)?;
    let r = support.r();
    let dual_code = code.dual();
    let dual_defect = singleton_defect(&dual_code, dual_support)?;
    let dual_min_weight = dual_support.min_weight(&dual_code)?;
    let min_weight_bound = r + 2 - d;
    Ok(DualOptimalityReport {
        dual_optimal: dual_defect.is_zero(),
        dual_defect,
        dual_min_weight,
        min_weight_bound,
        bound_holds: dual_min_weight >= min_weight_bound,
    })
}

/// Solves for the weight distribution of an optimal code with minimum weight
/// `d` by forward substitution in the unit-triangular system
/// `mu_geq(s,0) + sum_{i=d}^s W_i mu_geq(s,i)
///   = |G| / (gamma(d-1) gamma*(r-s)) * mu_leq(s,r)` for `d <= s <= r`.
pub fn optimal_distribution(
    group_order: u64,
    inv: &LatticeInvariants,
    gamma: &[u64],
    gamma_dual: &[u64],
    d: usize,
) -> Result<WeightDistribution, MacWilliamsError> {
    let r = inv.r;
    if d < 1 || d > r {
        return Err(MacWilliamsError::BadMinimumDistance { d, r });
    }
    let mut w: Vec<BigRational> = vec![BigRational::zero(); r + 1];
    w[0] = BigRational::one();
    for s in d..=r {
        let mut rhs = rat_u64(group_order) * rat(&inv.mu_leq[s][r])
            / (rat_u64(gamma[d - 1]) * rat_u64(gamma_dual[r - s]));
        rhs -= rat(&inv.mu_geq[s][0]);
        for i in d..s {
            rhs -= rat(&inv.mu_geq[s][i]) * w[i].clone();
        }
        // mu_geq(s, s) = 1, so the pivot is trivial
        w[s] = rhs;
    }
    let mut counts = Vec::with_capacity(r + 1);
    for (s, value) in w.iter().enumerate() {
        if !value.is_integer() || value.is_negative() {
            return Err(MacWilliamsError::InconsistentSolution(s, value.clone()));
        }
        counts.push(value.to_integer().to_u64().expect("desk-scale count"));
    }
    Ok(WeightDistribution { counts })
}
