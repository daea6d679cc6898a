//! Quantum integers and Gaussian binomials evaluated at elements of Q(ζ_m).
//!
//! At a root of unity the factorial quotient n!_q / (k!_q (n−k)!_q) is often
//! 0/0, so binomials are always obtained from the Gaussian polynomial (or the
//! equivalent Pascal recursion), never by division.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

/// 1 + q + ⋯ + q^(n−1).
pub fn q_int(n: u32, q: &CycNum) -> CycNum {
    let f = q.field();
    let mut acc = f.zero();
    let mut pw = f.one();
    for _ in 0..n {
        acc = &acc + &pw;
        pw = &pw * q;
    }
    acc
}

/// n!_q = 1_q · 2_q ⋯ n_q.
pub fn q_factorial(n: u32, q: &CycNum) -> CycNum {
    (1..=n).fold(q.field().one(), |acc, i| &acc * &q_int(i, q))
}

/// Integer coefficients (ascending in q) of the Gaussian polynomial
/// binom(n, k)_q, built with binom(n,k) = binom(n−1,k) + q^(n−k) binom(n−1,k−1).
pub fn gaussian_polynomial(n: u32, k: u32) -> Vec<BigInt> {
    if k > n {
        return vec![];
    }
    // rows[j] holds binom(i, j) for the current i.
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for i in 1..=n {
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(i as usize + 1);
        for j in 0..=i {
            let mut poly = if j < i { rows[j as usize].clone() } else { Vec::new() };
            if j > 0 {
                let shift = (i - j) as usize;
                let prev = &rows[j as usize - 1];
                if poly.len() < prev.len() + shift {
                    poly.resize(prev.len() + shift, BigInt::zero());
                }
                for (d, c) in prev.iter().enumerate() {
                    poly[d + shift] += c;
                }
            }
            next.push(poly);
        }
        rows = next;
    }
    rows.swap_remove(k as usize)
}

/// binom(n, k)_q by evaluating the Gaussian polynomial at q.
pub fn q_binom(n: u32, k: u32, q: &CycNum) -> Result<CycNum> {
    if k > n {
        return Err(Error::InvalidArgument(format!("binomial needs k <= n, got n={n}, k={k}")));
    }
    let f = q.field();
    let poly = gaussian_polynomial(n, k);
    let mut acc = f.zero();
    for c in poly.iter().rev() {
        acc = &(&acc * q) + &f.rational(BigRational::from_integer(c.clone()));
    }
    Ok(acc)
}

/// Memoized triangle of binom(n, k)_q for n ≤ bound.
#[derive(Clone, Debug)]
pub struct QBinomTable {
    q: CycNum,
    bound: u32,
    table: Vec<Vec<CycNum>>,
}

impl QBinomTable {
    pub fn new(q: CycNum, bound: u32) -> Self {
        let f = q.field();
        let mut q_pows = vec![f.one()];
        for i in 1..=bound as usize {
            let next = &q_pows[i - 1] * &q;
            q_pows.push(next);
        }
        let mut table: Vec<Vec<CycNum>> = vec![vec![f.one()]];
        for n in 1..=bound as usize {
            let prev = &table[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(f.one());
            for k in 1..n {
                // binom(n,k) = binom(n−1,k−1) + q^k binom(n−1,k)
                row.push(&prev[k - 1] + &(&q_pows[k] * &prev[k]));
            }
            row.push(f.one());
            table.push(row);
        }
        QBinomTable { q, bound, table }
    }

    /// Table up to 2m, enough for every index arising from conductor m.
    pub fn with_default_bound(q: CycNum) -> Self {
        let bound = 2 * q.conductor();
        Self::new(q, bound)
    }

    pub fn q(&self) -> &CycNum {
        &self.q
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn get(&self, n: u32, k: u32) -> Result<&CycNum> {
        if k > n {
            return Err(Error::InvalidArgument(format!("binomial needs k <= n, got n={n}, k={k}")));
        }
        if n > self.bound {
            return Err(Error::InvalidArgument(format!("n={n} exceeds table bound {}", self.bound)));
        }
        Ok(&self.table[n as usize][k as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CyclotomicField;

    fn binomial(n: u64, k: u64) -> i64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as i64
    }

    #[test]
    fn q_int_examples() {
        let f2 = CyclotomicField::new(2).unwrap();
        let f3 = CyclotomicField::new(3).unwrap();
        assert!(q_int(2, &f2.int(-1)).is_zero());
        assert!(q_int(3, &f3.zeta()).is_zero());
        assert_eq!(q_int(3, &f2.int(-1)), f2.one());
        assert!(q_int(0, &f3.zeta()).is_zero());
    }

    #[test]
    fn gaussian_polynomial_small() {
        let as_i = |n, k| gaussian_polynomial(n, k).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(as_i(3, 1), "1,1,1");
        assert_eq!(as_i(4, 2), "1,1,2,1,1");
        assert_eq!(as_i(5, 0), "1");
    }

    #[test]
    fn binom_examples() {
        let f2 = CyclotomicField::new(2).unwrap();
        assert_eq!(q_binom(3, 1, &f2.int(-1)).unwrap(), f2.one());
        assert_eq!(q_binom(7, 0, &f2.int(-1)).unwrap(), f2.one());
        assert!(q_binom(2, 3, &f2.one()).is_err());
    }

    #[test]
    fn binom_vanishes_at_inverse_root() {
        for m in 2..=6u32 {
            let f = CyclotomicField::new(m).unwrap();
            let qinv = f.zeta_power(-1);
            for j in 1..m {
                assert!(q_binom(m, j, &qinv).unwrap().is_zero(), "m={m}, j={j}");
            }
            assert!(q_binom(m, 0, &qinv).unwrap().is_one());
        }
    }

    #[test]
    fn pascal_identity_and_table_agree() {
        for m in 2..=6u32 {
            let f = CyclotomicField::new(m).unwrap();
            for e in [1i64, -1, 2] {
                let q = f.zeta_power(e);
                let table = QBinomTable::with_default_bound(q.clone());
                let bound = 2 * m;
                for n in 0..=bound {
                    for k in 0..=n {
                        let direct = q_binom(n, k, &q).unwrap();
                        assert_eq!(table.get(n, k).unwrap(), &direct);
                        assert_eq!(q_binom(n, n - k, &q).unwrap(), direct);
                    }
                }
                // q^k binom(k+ℓ−1,k) + binom(k+ℓ−1,k−1) = binom(k+ℓ,k)
                for n in 1..=bound {
                    for k in 1..=n {
                        let lhs = &(&q.pow(k as i64).unwrap() * table.get(n - 1, k).unwrap_or(&f.zero()))
                            + table.get(n - 1, k - 1).unwrap();
                        assert_eq!(&lhs, table.get(n, k).unwrap(), "m={m} n={n} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn factorial_quotient_agrees_where_defined() {
        let f = CyclotomicField::new(5).unwrap();
        let q = f.zeta();
        for n in 0..5u32 {
            for k in 0..=n {
                let den = &q_factorial(k, &q) * &q_factorial(n - k, &q);
                let quotient = &q_factorial(n, &q) * &den.inv().unwrap();
                assert_eq!(q_binom(n, k, &q).unwrap(), quotient);
            }
        }
    }

    #[test]
    fn specializes_to_ordinary_binomials() {
        let f = CyclotomicField::new(3).unwrap();
        for n in 0..=12u32 {
            for k in 0..=n {
                assert_eq!(q_binom(n, k, &f.one()).unwrap(), f.int(binomial(n as u64, k as u64)));
            }
        }
    }
}
