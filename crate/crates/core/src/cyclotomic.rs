//! Exact arithmetic with sums of N-th roots of unity.
//!
//! A sum `sum_j raw[j] * zeta_N^j` is represented by its canonical residue
//! modulo the N-th cyclotomic polynomial `Phi_N`. Since the power basis
//! `1, zeta, ..., zeta^{phi(N)-1}` is an integral basis of `Z[zeta_N]`, two
//! sums are equal iff their residues coincide, and a sum is a rational
//! integer iff all coefficients beyond degree zero vanish.

use num::{BigInt, Zero};

/// Canonical residue of a sum of N-th roots of unity modulo `Phi_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicSum {
    n: u64,
    /// Coefficients of the residue, length `deg Phi_N = phi(N)`.
    coeffs: Vec<BigInt>,
}

impl CyclotomicSum {
    pub fn root_order(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Returns `Some(c)` iff the sum is the rational integer `c`.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

/// Coefficients (low to high) of the N-th cyclotomic polynomial, computed by
/// exact division of `x^N - 1` by `Phi_d` over all proper divisors `d | N`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::from(1)];
    }
    // x^n - 1
    let mut f = vec![BigInt::zero(); n as usize + 1];
    f[0] = BigInt::from(-1);
    f[n as usize] = BigInt::from(1);
    for d in 1..n {
        if n % d == 0 {
            f = poly_div_exact(&f, &cyclotomic_polynomial(d));
        }
    }
    f
}

/// Exact polynomial division over Z; panics if the division has a remainder
/// (never happens for cyclotomic factors).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    assert!(den[dn] == BigInt::from(1), "divisor must be monic");
    let mut rem = num.to_vec();
    let qn = num.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for j in 0..=dn {
            rem[i + j] -= &c * &den[j];
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "non-exact division");
    quot
}

/// Reduces a multiplicity vector `raw[j]` of `zeta_N^j` (length N) to its
/// canonical residue modulo `Phi_N`.
pub fn cyclo_reduce(raw: &[BigInt], n: u64) -> CyclotomicSum {
    assert_eq!(raw.len(), n as usize, "raw vector must have length N");
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    let mut rem = raw.to_vec();
    for i in (deg..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        // subtract c * x^{i-deg} * Phi_N
        for j in 0..=deg {
            rem[i - deg + j] -= &c * &phi[j];
        }
    }
    rem.truncate(deg.max(1));
    if rem.is_empty() {
        rem.push(BigInt::zero());
    }
    CyclotomicSum { n, coeffs: rem }
}

/// The single root of unity `zeta_N^e` as a reduced sum.
pub fn root_of_unity(e: u64, n: u64) -> CyclotomicSum {
    let mut raw = vec![BigInt::zero(); n as usize];
    raw[(e % n) as usize] = BigInt::from(1);
    cyclo_reduce(&raw, n)
}
