//! Exact arithmetic in the cyclotomic field Q(ζ_m).
//!
//! Elements are stored as the unique residue of degree `< φ(m)` modulo the
//! cyclotomic polynomial Φ_m, so two values are equal exactly when their
//! coefficient vectors are equal.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

/// Largest conductor accepted. Keeps Φ_m coefficient tables small.
pub const MAX_CONDUCTOR: u32 = 1000;

pub(crate) struct CycloData {
    m: u32,
    phi: usize,
    /// Φ_m, ascending, monic.
    min_poly: Vec<i64>,
    /// `reduce[j]` holds x^(φ+j) mod Φ_m.
    reduce: Vec<Vec<BigRational>>,
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m % d == 0).collect()
}

/// Φ_m with integer coefficients, ascending order.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        poly = exact_div_monic(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn cyclo_data(m: u32) -> &'static CycloData {
    static CACHE: OnceLock<RwLock<HashMap<u32, &'static CycloData>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(d) = cache.read().unwrap().get(&m) {
        return d;
    }
    let min_poly = cyclotomic_polynomial(m);
    let phi = min_poly.len() - 1;
    // x^j mod Φ for j = φ ..= 2φ-2, built by repeated multiplication by x.
    let mut reduce = Vec::new();
    let mut cur: Vec<BigRational> = vec![BigRational::zero(); phi];
    if phi > 0 {
        // x^φ = -(Φ - x^φ)
        for (i, c) in cur.iter_mut().enumerate() {
            *c = BigRational::from_integer(BigInt::from(-min_poly[i]));
        }
    }
    for _ in 0..phi.saturating_sub(1) {
        reduce.push(cur.clone());
        let top = cur[phi - 1].clone();
        let mut next = vec![BigRational::zero(); phi];
        for i in (1..phi).rev() {
            next[i] = cur[i - 1].clone();
        }
        if !top.is_zero() {
            for (i, n) in next.iter_mut().enumerate() {
                *n -= &top * BigRational::from_integer(BigInt::from(min_poly[i]));
            }
        }
        cur = next;
    }
    let data = Box::leak(Box::new(CycloData { m, phi, min_poly, reduce }));
    cache.write().unwrap().insert(m, data);
    data
}

/// The field Q(ζ_m) as a value: carries the conductor and the cached
/// reduction tables.
#[derive(Clone, Copy)]
pub struct CyclotomicField {
    data: &'static CycloData,
}

impl CyclotomicField {
    pub fn new(m: u32) -> Result<Self> {
        if !(2..=MAX_CONDUCTOR).contains(&m) {
            return Err(Error::InvalidConductor(m));
        }
        Ok(CyclotomicField { data: cyclo_data(m) })
    }

    pub fn conductor(&self) -> u32 {
        self.data.m
    }

    /// Degree of the extension, φ(m).
    pub fn degree(&self) -> usize {
        self.data.phi
    }

    pub fn min_poly(&self) -> &[i64] {
        &self.data.min_poly
    }

    pub fn zero(&self) -> CycNum {
        CycNum { field: *self, coeffs: vec![BigRational::zero(); self.data.phi] }
    }

    pub fn one(&self) -> CycNum {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> CycNum {
        self.rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(&self, num: i64, den: i64) -> CycNum {
        self.rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(&self, q: BigRational) -> CycNum {
        let mut z = self.zero();
        z.coeffs[0] = q;
        z
    }

    /// ζ^e, with `e` reduced modulo m.
    pub fn zeta_power(&self, e: i64) -> CycNum {
        let m = self.data.m as i64;
        let e = e.rem_euclid(m) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        self.reduce_poly(poly)
    }

    pub fn zeta(&self) -> CycNum {
        self.zeta_power(1)
    }

    /// Reduces an arbitrary rational polynomial in ζ modulo Φ_m.
    pub fn from_poly(&self, poly: &[BigRational]) -> CycNum {
        self.reduce_poly(poly.to_vec())
    }

    /// Shorthand for integer polynomials in ζ.
    pub fn from_int_poly(&self, poly: &[i64]) -> CycNum {
        let p: Vec<BigRational> =
            poly.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        self.reduce_poly(p)
    }

    fn reduce_poly(&self, mut poly: Vec<BigRational>) -> CycNum {
        let phi = self.data.phi;
        let mp = &self.data.min_poly;
        // Long division by the monic Φ_m, from the top.
        for deg in (phi..poly.len()).rev() {
            let c = std::mem::take(&mut poly[deg]);
            if c.is_zero() {
                continue;
            }
            let shift = deg - phi;
            for (i, &a) in mp.iter().take(phi).enumerate() {
                if a != 0 {
                    poly[shift + i] -= &c * BigRational::from_integer(BigInt::from(a));
                }
            }
        }
        poly.resize(phi, BigRational::zero());
        CycNum { field: *self, coeffs: poly }
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.data.m == other.data.m
    }
}
impl Eq for CyclotomicField {}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.data.m)
    }
}

/// Arithmetic selector for [`CycNum::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element of Q(ζ_m).
#[derive(Clone)]
pub struct CycNum {
    field: CyclotomicField,
    coeffs: Vec<BigRational>,
}

/// Builds the reduced residue of `poly` (coefficients of 1, ζ, ζ², …).
pub fn cyc_make(m: u32, poly: &[BigRational]) -> Result<CycNum> {
    Ok(CyclotomicField::new(m)?.from_poly(poly))
}

/// ζ_m^e.
pub fn zeta_power(m: u32, e: i64) -> Result<CycNum> {
    Ok(CyclotomicField::new(m)?.zeta_power(e))
}

impl CycNum {
    pub fn field(&self) -> CyclotomicField {
        self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.data.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Checked field arithmetic.
    pub fn arith(&self, op: ArithOp, other: &CycNum) -> Result<CycNum> {
        if self.conductor() != other.conductor() {
            return Err(Error::ConductorMismatch(self.conductor(), other.conductor()));
        }
        Ok(match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
            ArithOp::Div => self * &other.inv()?,
        })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_m.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f: Vec<BigRational> = self
            .field
            .min_poly()
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let mut r0 = f;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // s0 * self ≡ r0 (mod Φ); Φ is irreducible so r0 is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let scaled: Vec<BigRational> = s0.into_iter().map(|x| x / &c).collect();
        Ok(self.field.reduce_poly(scaled))
    }

    /// self^e; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    fn check(&self, other: &CycNum) {
        assert_eq!(
            self.conductor(),
            other.conductor(),
            "cyclotomic conductor mismatch"
        );
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Division with remainder; `den` must be nonzero and trimmed.
fn poly_divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(num.to_vec());
    let dd = den.len() - 1;
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead = &den[dd];
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dd] / lead;
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
        }
        quot[i] = c;
    }
    (trim(quot), trim(rem))
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.check(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CycNum { field: self.field, coeffs }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.check(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        CycNum { field: self.field, coeffs }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.check(rhs);
        let phi = self.field.data.phi;
        if phi == 1 {
            return CycNum { field: self.field, coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]] };
        }
        let mut full = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<BigRational> = full.drain(..phi).collect();
        for (j, hi) in full.iter().enumerate() {
            if hi.is_zero() {
                continue;
            }
            for (c, r) in coeffs.iter_mut().zip(&self.field.data.reduce[j]) {
                if !r.is_zero() {
                    *c += hi * r;
                }
            }
        }
        CycNum { field: self.field, coeffs }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.coeffs == other.coeffs
    }
}
impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.conductor().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef_shown = i == 0 || !abs.is_one();
            if coef_shown {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "ζ")?,
                _ => write!(f, "ζ^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self, self.conductor())
    }
}

impl Field for CyclotomicField {
    type Elem = CycNum;

    fn zero(&self) -> CycNum {
        CyclotomicField::zero(self)
    }
    fn one(&self) -> CycNum {
        CyclotomicField::one(self)
    }
    fn is_zero(&self, a: &CycNum) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a + b
    }
    fn sub(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a - b
    }
    fn mul(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a * b
    }
    fn neg(&self, a: &CycNum) -> CycNum {
        -a
    }
    fn inv(&self, a: &CycNum) -> Option<CycNum> {
        a.inv().ok()
    }
    fn from_i64(&self, v: i64) -> CycNum {
        self.int(v)
    }
    fn is_one(&self, a: &CycNum) -> bool {
        a.is_one()
    }
}

/// Wire form: `{"m": m, "coeffs": ["p/q", ...]}`.
#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    m: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumRepr {
            m: self.conductor(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CycNumRepr::deserialize(d)?;
        CycNum::try_from(repr).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<CycNumRepr> for CycNum {
    type Error = Error;
    fn try_from(repr: CycNumRepr) -> Result<Self> {
        let field = CyclotomicField::new(repr.m)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != field.degree() {
            return Err(Error::Parse(format!(
                "conductor {} needs {} coefficients, got {}",
                repr.m,
                field.degree(),
                coeffs.len()
            )));
        }
        Ok(CycNum { field, coeffs })
    }
}

/// Parses `"p"` or `"p/q"` with integer `p`, `q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}
