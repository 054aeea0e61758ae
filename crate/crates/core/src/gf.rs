//! Exact arithmetic in small finite fields `F_q`, and Gaussian elimination
//! over them. Prime fields use modular integers; the prime-power fields
//! needed at desk scale (q = 4, 8, 9) use a fixed irreducible polynomial.
//!
//! Field elements are encoded as integers in `[0, q)`: the base-p digits of
//! the code are the coefficients of the element in the polynomial basis.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("q = {0} is not a supported prime power")]
    UnsupportedOrder(u64),
}

/// The field `F_q`, `q = p^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf {
    p: u64,
    e: u32,
    q: u64,
    /// Coefficients (low to high, length e) of x^e in the quotient ring,
    /// i.e. the negated tail of the irreducible polynomial. Empty for e = 1.
    reduction: Vec<u64>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl Gf {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if is_prime(q) {
            return Ok(Gf {
                p: q,
                e: 1,
                q,
                reduction: vec![],
            });
        }
        // Irreducibles: x^2+x+1 over F_2, x^3+x+1 over F_2, x^2+1 over F_3.
        let (p, e, reduction) = match q {
            4 => (2, 2, vec![1, 1]),
            8 => (2, 3, vec![1, 1, 0]),
            9 => (3, 2, vec![2, 0]),
            _ => return Err(FieldError::UnsupportedOrder(q)),
        };
        Ok(Gf { p, e, q, reduction })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    fn digits(&self, a: u64) -> Vec<u64> {
        let mut a = a;
        (0..self.e)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn from_digits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % self.p).collect();
        self.from_digits(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.e == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let d: Vec<u64> = self
            .digits(a)
            .iter()
            .map(|&x| (self.p - x) % self.p)
            .collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            return a * b % self.p;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let n = self.e as usize;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce using x^e = reduction (applied from the top down)
        for i in (n..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (k, &r) in self.reduction.iter().enumerate() {
                prod[i - n + k] = (prod[i - n + k] + c * r) % self.p;
            }
        }
        prod.truncate(n);
        self.from_digits(&prod)
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "zero has no inverse");
        (1..self.q).find(|&b| self.mul(a, b) == 1).expect("field")
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }
}

/// Row-reduces `rows` in place over `field` and returns the rank.
pub fn rank(field: &Gf, rows: &mut Vec<Vec<u64>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = field.inv(rows[pivot_row][col]);
        for c in col..ncols {
            rows[pivot_row][c] = field.mul(rows[pivot_row][c], inv);
        }
        for r in 0..rows.len() {
            if r != pivot_row && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in col..ncols {
                    let sub = field.mul(f, rows[pivot_row][c]);
                    rows[r][c] = field.sub(rows[r][c], sub);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    pivot_row
}

/// Rank of a matrix given by value.
pub fn matrix_rank(field: &Gf, rows: &[Vec<u64>]) -> usize {
    let mut copy = rows.to_vec();
    rank(field, &mut copy)
}

/// Index of a vector over `F_q^k` in base-q positional encoding.
pub fn vector_index(field: &Gf, v: &[u64]) -> usize {
    v.iter().fold(0, |acc, &c| acc * field.q() as usize + c as usize)
}

/// Inverse of [`vector_index`].
pub fn vector_at(field: &Gf, mut idx: usize, k: usize) -> Vec<u64> {
    let q = field.q() as usize;
    let mut v = vec![0u64; k];
    for i in (0..k).rev() {
        v[i] = (idx % q) as u64;
        idx /= q;
    }
    v
}

/// All vectors in the span of `gens`, as sorted indices into `F_q^k`.
pub fn span(field: &Gf, gens: &[Vec<u64>], k: usize) -> Vec<usize> {
    let total = (field.q() as usize).pow(k as u32);
    let mut members = vec![false; total];
    members[0] = true;
    let mut frontier = vec![vec![0u64; k]];
    while let Some(v) = frontier.pop() {
        for g in gens {
            for c in 1..field.q() {
                let w: Vec<u64> = v
                    .iter()
                    .zip(g)
                    .map(|(&a, &b)| field.add(a, field.mul(c, b)))
                    .collect();
                let idx = vector_index(field, &w);
                if !members[idx] {
                    members[idx] = true;
                    frontier.push(w);
                }
            }
        }
    }
    (0..total).filter(|&i| members[i]).collect()
}
