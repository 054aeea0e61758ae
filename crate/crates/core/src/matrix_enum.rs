//! Enumerative combinatorics of matrices over finite fields: rank
//! distributions, the rank-metric MacWilliams kernel, and closed-form counts
//! of rank-j matrices under linear constraints (entry sums, zero blocks,
//! zero diagonals, symmetry, skew-symmetry), each backed by a brute-force
//! enumeration oracle.

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::comb::{binomial, q_binomial};
use crate::gf::{self, FieldError, Gf};

/// Default cap on `q^{km}` for the brute-force oracle.
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 1 << 20;

/// Parameters of a `k x m` matrix space over `F_q`. Up to transposition,
/// `k <= m` is not restrictive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixSpaceParams {
    pub q: u64,
    pub k: usize,
    pub m: usize,
}

impl MatrixSpaceParams {
    pub fn new(q: u64, k: usize, m: usize) -> Result<Self, MatrixEnumError> {
        if k < 1 || m < k {
            return Err(MatrixEnumError::BadParameters(format!(
                "need 1 <= k <= m, got k = {k}, m = {m}"
            )));
        }
        Gf::new(q)?;
        Ok(Self { q, k, m })
    }
}

/// A linear constraint on the matrix entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintSpec {
    None,
    /// The entries at the given `(row, col)` positions sum to zero.
    SumZero(Vec<(usize, usize)>),
    /// The top-left `rows x cols` block is zero.
    ZeroBlock { rows: usize, cols: usize },
    /// The diagonal entries at the given positions are zero.
    ZeroDiagonal(Vec<usize>),
    /// `M = M^t` (requires a square space).
    Symmetric,
    /// `M_ii = 0` and `M_ij = -M_ji` (requires a square space).
    SkewSymmetric,
}

#[derive(Debug, Error)]
pub enum MatrixEnumError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("matrix space of size {0} exceeds the brute-force cap {1}")]
    CapExceeded(u64, u64),
    #[error("the index set must be nonempty")]
    EmptyIndexSet,
    #[error("constraint requires a square matrix space")]
    NonSquare,
    #[error("count is not an integer: {0}")]
    NonIntegerCount(BigRational),
    #[error("transform output at rank {0} is {1}, not a nonnegative integer")]
    InconsistentTransform(usize, BigRational),
    #[error("symmetric/skew identity fails at rank {j}: lhs {lhs}, rhs {rhs}")]
    IdentityFailure { j: usize, lhs: BigRational, rhs: BigRational },
    #[error("the identity is only asserted in odd characteristic, got q = {0}")]
    EvenCharacteristic(u64),
}

fn sign(x: i64) -> BigInt {
    if x.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn q_pow(q: u64, x: i64) -> BigInt {
    debug_assert!(x >= 0);
    BigInt::from(q).pow(x as u32)
}

fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

fn div_exact(num: BigInt, den: &BigInt) -> Result<BigInt, MatrixEnumError> {
    let r = BigRational::new(num, den.clone());
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(MatrixEnumError::NonIntegerCount(r))
    }
}

/// Number of `k x m` matrices of rank `i` over `F_q`:
/// `[m, i] prod_{u=0}^{i-1} (q^k - q^u)`.
pub fn count_rank(q: u64, k: usize, m: usize, i: usize) -> BigInt {
    let mut prod = q_binomial(m as i64, i as i64, q);
    for u in 0..i as i64 {
        prod *= q_pow(q, k as i64) - q_pow(q, u);
    }
    prod
}

/// Rank-metric Krawtchouk coefficient
/// `K(i, j) = sum_s (-1)^{j-s} q^{ms + C(j-s,2)} [k-s, k-j] [k-i, s]`.
pub fn rank_krawtchouk(q: u64, k: usize, m: usize, i: usize, j: usize) -> BigInt {
    let (k, m, i, j) = (k as i64, m as i64, i as i64, j as i64);
    let mut acc = BigInt::zero();
    for s in 0..=k {
        acc += sign(j - s)
            * q_pow(q, m * s + choose2(j - s))
            * q_binomial(k - s, k - j, q)
            * q_binomial(k - i, s, q);
    }
    acc
}

/// MacWilliams transform of a rank distribution:
/// `W*_j = (1/|C|) sum_i K(i, j) W_i`, with integrality asserted.
pub fn rank_transform(
    w: &[BigInt],
    q: u64,
    k: usize,
    m: usize,
    code_size: &BigInt,
) -> Result<Vec<BigInt>, MatrixEnumError> {
    let mut out = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let mut acc = BigInt::zero();
        for (i, wi) in w.iter().enumerate() {
            acc += rank_krawtchouk(q, k, m, i, j) * wi;
        }
        let value = BigRational::new(acc, code_size.clone());
        if !value.is_integer() || value.is_negative() {
            return Err(MatrixEnumError::InconsistentTransform(j, value));
        }
        out.push(value.to_integer());
    }
    Ok(out)
}

/// Number of rank-j matrices in the kernel of a nonzero linear functional
/// `f` whose orthogonal space is generated by a rank-`r_f` matrix:
/// `(1/q) sum_s (-1)^{j-s} q^{ms + C(j-s,2)} [k-s, k-j]([k, s] + (q-1)[k-r_f, s])`.
pub fn count_kernel_rank(
    q: u64,
    k: usize,
    m: usize,
    r_f: usize,
    j: usize,
) -> Result<BigInt, MatrixEnumError> {
    if r_f < 1 || r_f > k {
        return Err(MatrixEnumError::BadParameters(format!(
            "functional rank {r_f} out of range 1..={k}"
        )));
    }
    let (ki, mi, ji, rf) = (k as i64, m as i64, j as i64, r_f as i64);
    let mut acc = BigInt::zero();
    for s in 0..=ki {
        acc += sign(ji - s)
            * q_pow(q, mi * s + choose2(ji - s))
            * q_binomial(ki - s, ki - ji, q)
            * (q_binomial(ki, s, q) + BigInt::from(q - 1) * q_binomial(ki - rf, s, q));
    }
    div_exact(acc, &BigInt::from(q))
}

/// Number of rank-j matrices whose entries at the positions in `index_set`
/// sum to zero. The count depends on the index set only through the rank of
/// its indicator matrix.
pub fn count_index_sum_zero(
    q: u64,
    k: usize,
    m: usize,
    index_set: &[(usize, usize)],
    j: usize,
) -> Result<BigInt, MatrixEnumError> {
    if index_set.is_empty() {
        return Err(MatrixEnumError::EmptyIndexSet);
    }
    let field = Gf::new(q)?;
    let mut indicator = vec![vec![0u64; m]; k];
    for &(row, col) in index_set {
        if row >= k || col >= m {
            return Err(MatrixEnumError::BadParameters(format!(
                "index ({row}, {col}) out of range for a {k} x {m} matrix"
            )));
        }
        indicator[row][col] = 1;
    }
    let r_f = gf::matrix_rank(&field, &indicator);
    count_kernel_rank(q, k, m, r_f, j)
}

/// Shared inner sum of the zero-block and zero-diagonal corollaries:
/// `sum_s (-1)^{j-s} q^{ms + C(j-s,2)} [k-s, k-j] [k-i, s]`
/// (equal to [`rank_krawtchouk`]).
fn inner_sum(q: u64, k: usize, m: usize, i: usize, j: usize) -> BigInt {
    rank_krawtchouk(q, k, m, i, j)
}

/// Number of rank-j matrices with a zero `rows x cols` block:
/// `q^{-rows*cols} sum_i [cols, i] prod_u (q^{rows} - q^u) * inner(i, j)`.
pub fn count_zero_block(
    q: u64,
    k: usize,
    m: usize,
    rows: usize,
    cols: usize,
    j: usize,
) -> Result<BigInt, MatrixEnumError> {
    if rows < 1 || rows > k || cols < 1 || cols > m {
        return Err(MatrixEnumError::BadParameters(format!(
            "zero block {rows} x {cols} out of range for a {k} x {m} matrix"
        )));
    }
    let mut acc = BigInt::zero();
    for i in 0..=k {
        let mut weight = q_binomial(cols as i64, i as i64, q);
        for u in 0..i as i64 {
            weight *= q_pow(q, rows as i64) - q_pow(q, u);
        }
        acc += weight * inner_sum(q, k, m, i, j);
    }
    div_exact(acc, &q_pow(q, (rows * cols) as i64))
}

/// Number of rank-j matrices with zeros at `t` prescribed diagonal entries:
/// `q^{-t} sum_i C(t, i) (q-1)^i * inner(i, j)`.
pub fn count_zero_diagonal(
    q: u64,
    k: usize,
    m: usize,
    t: usize,
    j: usize,
) -> Result<BigInt, MatrixEnumError> {
    if t > k {
        return Err(MatrixEnumError::BadParameters(format!(
            "{t} diagonal entries out of range for a {k} x {m} matrix"
        )));
    }
    let mut acc = BigInt::zero();
    for i in 0..=t {
        acc += binomial(t as i64, i as i64)
            * BigInt::from(q - 1).pow(i as u32)
            * inner_sum(q, k, m, i, j);
    }
    div_exact(acc, &q_pow(q, t as i64))
}

/// Number of symmetric `k x k` matrices of rank `i`:
/// `[k, i] sum_s (-1)^{i-s} q^{C(s+1,2) + C(i-s,2)} [i, s]`.
pub fn count_symmetric(q: u64, k: usize, i: usize) -> BigInt {
    let (ki, ii) = (k as i64, i as i64);
    let mut acc = BigInt::zero();
    for s in 0..=ii {
        acc += sign(ii - s)
            * q_pow(q, choose2(s + 1) + choose2(ii - s))
            * q_binomial(ii, s, q);
    }
    q_binomial(ki, ii, q) * acc
}

/// Number of skew-symmetric (`M_ii = 0`, `M_ij = -M_ji`) `k x k` matrices of
/// rank `i`: `[k, i] sum_s (-1)^{i-s} q^{C(s,2) + C(i-s,2)} [i, s]`.
pub fn count_skew(q: u64, k: usize, i: usize) -> BigInt {
    let (ki, ii) = (k as i64, i as i64);
    let mut acc = BigInt::zero();
    for s in 0..=ii {
        acc += sign(ii - s)
            * q_pow(q, choose2(s) + choose2(ii - s))
            * q_binomial(ii, s, q);
    }
    q_binomial(ki, ii, q) * acc
}

/// Verifies the duality between symmetric and skew-symmetric matrices under
/// the trace product: `W_j(Sym) = q^{-C(k,2)} sum_i W_i(Skew) K(i, j)` with
/// `m = k`. Only asserted in odd characteristic; use
/// [`sym_skew_identity_observed`] to inspect the outcome elsewhere.
pub fn sym_skew_identity_check(q: u64, k: usize) -> Result<(), MatrixEnumError> {
    if q % 2 == 0 {
        return Err(MatrixEnumError::EvenCharacteristic(q));
    }
    for (j, (lhs, rhs)) in sym_skew_sides(q, k).into_iter().enumerate() {
        if lhs != rhs {
            return Err(MatrixEnumError::IdentityFailure { j, lhs, rhs });
        }
    }
    Ok(())
}

/// Per-rank truth values of the symmetric/skew identity, with no assertion.
pub fn sym_skew_identity_observed(q: u64, k: usize) -> Vec<bool> {
    sym_skew_sides(q, k)
        .into_iter()
        .map(|(lhs, rhs)| lhs == rhs)
        .collect()
}

fn sym_skew_sides(q: u64, k: usize) -> Vec<(BigRational, BigRational)> {
    let scale = BigRational::from_integer(q_pow(q, choose2(k as i64)));
    (0..=k)
        .map(|j| {
            let lhs = BigRational::from_integer(count_symmetric(q, k, j));
            let mut acc = BigInt::zero();
            for i in 0..=k {
                acc += count_skew(q, k, i) * rank_krawtchouk(q, k, k, i, j);
            }
            (lhs, BigRational::from_integer(acc) / &scale)
        })
        .collect()
}

/// Independent oracle: enumerates every `k x m` matrix over `F_q`, filters
/// by the constraint, and counts the rank-j survivors.
pub fn brute_force_count(
    q: u64,
    k: usize,
    m: usize,
    constraint: &ConstraintSpec,
    j: usize,
) -> Result<BigInt, MatrixEnumError> {
    brute_force_count_with_cap(q, k, m, constraint, j, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_count_with_cap(
    q: u64,
    k: usize,
    m: usize,
    constraint: &ConstraintSpec,
    j: usize,
    cap: u64,
) -> Result<BigInt, MatrixEnumError> {
    let field = Gf::new(q)?;
    let total = (q as u128).checked_pow((k * m) as u32).ok_or(
        MatrixEnumError::CapExceeded(u64::MAX, cap),
    )?;
    if total > cap as u128 {
        return Err(MatrixEnumError::CapExceeded(total as u64, cap));
    }
    match constraint {
        ConstraintSpec::SumZero(index_set) if index_set.is_empty() => {
            return Err(MatrixEnumError::EmptyIndexSet);
        }
        ConstraintSpec::Symmetric | ConstraintSpec::SkewSymmetric if k != m => {
            return Err(MatrixEnumError::NonSquare);
        }
        _ => {}
    }
    let mut count = BigInt::zero();
    for code in 0..total as u64 {
        let mut rows = vec![vec![0u64; m]; k];
        let mut rem = code;
        for row in rows.iter_mut() {
            for cell in row.iter_mut() {
                *cell = rem % q;
                rem /= q;
            }
        }
        let ok = match constraint {
            ConstraintSpec::None => true,
            ConstraintSpec::SumZero(index_set) => {
                let mut sum = 0u64;
                for &(r, c) in index_set {
                    if r >= k || c >= m {
                        return Err(MatrixEnumError::BadParameters(format!(
                            "index ({r}, {c}) out of range for a {k} x {m} matrix"
                        )));
                    }
                    sum = field.add(sum, rows[r][c]);
                }
                sum == 0
            }
            ConstraintSpec::ZeroBlock { rows: br, cols: bc } => {
                (0..*br).all(|r| (0..*bc).all(|c| rows[r][c] == 0))
            }
            ConstraintSpec::ZeroDiagonal(positions) => {
                positions.iter().all(|&s| s < k.min(m) && rows[s][s] == 0)
            }
            ConstraintSpec::Symmetric => {
                (0..k).all(|r| (0..m).all(|c| rows[r][c] == rows[c][r]))
            }
            ConstraintSpec::SkewSymmetric => {
                (0..k).all(|r| rows[r][r] == 0)
                    && (0..k).all(|r| (0..m).all(|c| rows[r][c] == field.neg(rows[c][r])))
            }
        };
        if ok && gf::matrix_rank(&field, &rows) == j {
            count += 1;
        }
    }
    Ok(count)
}
