//! Automorphisms of a semisimple H-simple algebra as pairs (T̄, r).
//!
//! A pair consists of an invertible T, taken up to scalars, and 0 ≤ r < t
//! with P = ζ^r T P T^{-1} and QTQ^{-1}T^{-1} scalar.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::semisimple::{intertwiner_space, iso_map, SemisimpleIso, SemisimpleSpec};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutPair {
    t_bar: CMatrix,
    r: usize,
}

fn normalize(t: &CMatrix) -> Result<CMatrix> {
    let lead = t.data().iter().find(|x| !x.is_zero()).ok_or(Error::Singular)?;
    Ok(t.scale(&lead.inv()?))
}

impl AutPair {
    /// Validates and normalizes (T, r).
    pub fn new(spec: &SemisimpleSpec, t: CMatrix, r: usize) -> Result<Self> {
        let pair = AutPair { t_bar: normalize(&t)?, r };
        pair.check(spec)?;
        Ok(pair)
    }

    pub fn identity(spec: &SemisimpleSpec) -> Self {
        let f = spec.field().expect("valid conductor");
        AutPair { t_bar: Matrix::identity(f, spec.k), r: 0 }
    }

    pub fn t_bar(&self) -> &CMatrix {
        &self.t_bar
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// β with Q T = β T Q.
    pub fn beta(&self, spec: &SemisimpleSpec) -> Result<CycNum> {
        let ti = self.t_bar.inverse().ok_or(Error::Singular)?;
        let qi = spec.q.inverse().ok_or(Error::Singular)?;
        spec.q
            .mul(&self.t_bar)
            .mul(&qi)
            .mul(&ti)
            .scalar_value()
            .ok_or_else(|| Error::Structure("QTQ^-1T^-1 is not scalar".into()))
    }

    pub fn check(&self, spec: &SemisimpleSpec) -> Result<()> {
        let f = spec.field()?;
        if self.r >= spec.t {
            return Err(Error::Structure(format!("r = {} must be below t = {}", self.r, spec.t)));
        }
        let ti = self.t_bar.inverse().ok_or(Error::Singular)?;
        self.beta(spec)?;
        let conj = self.t_bar.mul(&spec.p).mul(&ti).scale(&f.zeta_power(self.r as i64));
        if conj != spec.p {
            return Err(Error::Structure("P != zeta^r T P T^-1".into()));
        }
        Ok(())
    }

    /// (W̄, s)·(T̄, r) = (W̄T̄, r + s) if r + s < t, else (W̄T̄Q^{-1}, r + s − t).
    pub fn compose(&self, other: &AutPair, spec: &SemisimpleSpec) -> Result<AutPair> {
        let wt = self.t_bar.mul(&other.t_bar);
        let sum = self.r + other.r;
        let (t, r) = if sum < spec.t {
            (wt, sum)
        } else {
            (wt.mul(&spec.q.inverse().ok_or(Error::Singular)?), sum - spec.t)
        };
        Ok(AutPair { t_bar: normalize(&t)?, r })
    }

    pub fn inverse(&self, spec: &SemisimpleSpec) -> Result<AutPair> {
        let ti = self.t_bar.inverse().ok_or(Error::Singular)?;
        if self.r == 0 {
            Ok(AutPair { t_bar: normalize(&ti)?, r: 0 })
        } else {
            Ok(AutPair { t_bar: normalize(&spec.q.mul(&ti))?, r: spec.t - self.r })
        }
    }

    /// The automorphism of A as a matrix on the standard basis.
    pub fn to_automorphism(&self, spec: &SemisimpleSpec) -> Result<CMatrix> {
        let w = SemisimpleIso { t_mat: self.t_bar.clone(), r: self.r, beta: self.beta(spec)? };
        iso_map(spec, &w)
    }
}

/// Random automorphism pairs, drawn from every admissible (r, β) class that
/// has an invertible solution.
pub fn sample_aut_pairs(spec: &SemisimpleSpec, count: usize, seed: u64) -> Result<Vec<AutPair>> {
    spec.validate()?;
    let f = spec.field()?;
    let (m, t, k) = (spec.m as usize, spec.t, spec.k);
    let mut classes = Vec::new();
    for r in 0..t {
        for j in 0..m / t {
            let beta = f.zeta_power((t * j) as i64);
            let space = intertwiner_space(
                f,
                k,
                &[(&spec.p, &spec.p, f.zeta_power(-(r as i64))), (&spec.q, &spec.q, beta.inv()?)],
            );
            if !space.is_empty() {
                classes.push((r, space));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count.max(1) && !classes.is_empty() {
        attempts += 1;
        let (r, space) = &classes[rng.gen_range(0..classes.len())];
        let mut tm = Matrix::zeros(f, k, k);
        for b in space {
            tm = tm.add(&b.scale(&f.int(rng.gen_range(-5..=5))));
        }
        if tm.det().is_zero() {
            continue;
        }
        out.push(AutPair::new(spec, tm, *r)?);
    }
    Ok(out)
}
