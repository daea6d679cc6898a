//! Reduction of Q(ζ_m) into a prime field F_p with p ≡ 1 (mod m).
//!
//! The map sends ζ to a primitive m-th root of unity ω ∈ F_p and is a ring
//! homomorphism on the subring of elements whose coefficient denominators
//! are prime to p. Ranks can only drop under such a map, so a rank computed
//! modulo p is a lower bound for the rank over Q(ζ_m).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::cyclotomic::CycNum;
use crate::field::{is_prime_u64, prime_factors, Field, PrimeField};
use crate::linalg::Matrix;
use crate::cyclotomic::CyclotomicField;

#[derive(Clone, Debug)]
pub struct ReductionMap {
    field: PrimeField,
    m: u32,
    omega_pows: Vec<u64>,
}

const PRIME_CEILING: u64 = 1 << 62;

impl ReductionMap {
    /// Different seeds pick different primes and roots.
    pub fn new(m: u32, seed: u64) -> Self {
        let m64 = m as u64;
        let mut p = PRIME_CEILING - PRIME_CEILING % m64 + 1;
        if p >= PRIME_CEILING {
            p -= m64;
        }
        let mut skip = seed % 8;
        loop {
            if is_prime_u64(p) {
                if skip == 0 {
                    break;
                }
                skip -= 1;
            }
            p -= m64;
        }
        let field = PrimeField::new(p);
        let factors = prime_factors(m64);
        let exp = (p - 1) / m64;
        let mut x = 2 + seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) % 1_000_003;
        let omega = loop {
            let w = field.pow(x, exp);
            if factors.iter().all(|q| field.pow(w, m64 / q) != 1) {
                break w;
            }
            x += 1;
        };
        let mut omega_pows = Vec::with_capacity(m as usize);
        let mut acc = 1;
        for _ in 0..m {
            omega_pows.push(acc);
            acc = field.mul(&acc, &omega);
        }
        ReductionMap { field, m, omega_pows }
    }

    pub fn prime_field(&self) -> PrimeField {
        self.field
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// Image of ζ.
    pub fn omega(&self) -> u64 {
        self.omega_pows[1 % self.m as usize]
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.field.modulus());
        n.mod_floor(&p).to_u64().expect("residue fits in u64")
    }

    pub fn reduce_rational(&self, q: &BigRational) -> Option<u64> {
        let den = self.reduce_int(q.denom());
        let inv = self.field.inv(&den)?;
        Some(self.field.mul(&self.reduce_int(q.numer()), &inv))
    }

    pub fn reduce(&self, x: &CycNum) -> Option<u64> {
        debug_assert_eq!(x.conductor(), self.m);
        let mut acc = 0;
        for (c, w) in x.coeffs().iter().zip(&self.omega_pows) {
            let r = self.reduce_rational(c)?;
            acc = self.field.add(&acc, &self.field.mul(&r, w));
        }
        Some(acc)
    }

    pub fn reduce_matrix(&self, a: &Matrix<CyclotomicField>) -> Option<Matrix<PrimeField>> {
        let data = a.data().iter().map(|x| self.reduce(x)).collect::<Option<Vec<_>>>()?;
        Some(Matrix::from_vec(self.field, a.nrows(), a.ncols(), data))
    }

    pub fn reduce_vec(&self, v: &[CycNum]) -> Option<Vec<u64>> {
        v.iter().map(|x| self.reduce(x)).collect()
    }
}
