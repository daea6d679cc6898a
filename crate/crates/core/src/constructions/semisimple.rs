//! Semisimple H-simple algebras A = M_k^{⊕t} determined by matrices P, Q.
//!
//! With a = (a_1, …, a_t):
//!   c(a) = (Q a_t Q^{-1}, a_1, …, a_{t-1}),
//!   v(a)_s = ζ^{s-1} (P a_s − a_{s-1} P),  where a_0 := Q a_t Q^{-1}.
//! The data must satisfy t | m, Q^{m/t} = E, QPQ^{-1} = ζ^{-t}P, P^m = αE.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::FinDimAlgebra;
use crate::cyclotomic::{CycNum, CyclotomicField};
use crate::error::{Error, Result};
use crate::hmodule::HModuleAlgebra;
use crate::linalg::{CMatrix, Matrix};
use crate::qcomb::QBinomTable;

/// Largest number of determinant evaluations spent proving that a solution
/// space has no invertible element.
pub const GRID_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct SemisimpleSpec {
    pub m: u32,
    pub k: usize,
    pub t: usize,
    pub p: CMatrix,
    pub q: CMatrix,
}

impl SemisimpleSpec {
    pub fn new(m: u32, k: usize, t: usize, p: CMatrix, q: CMatrix) -> Self {
        SemisimpleSpec { m, k, t, p, q }
    }

    pub fn field(&self) -> Result<CyclotomicField> {
        CyclotomicField::new(self.m)
    }

    /// Checks every invariant and returns α with P^m = αE.
    /// All violations are reported together.
    pub fn validate(&self) -> Result<CycNum> {
        let f = self.field()?;
        let mut errs = Vec::new();
        let k = self.k;
        if k == 0 {
            errs.push("k must be positive".to_string());
        }
        if self.t == 0 || self.m as usize % self.t != 0 {
            errs.push(format!("t = {} does not divide m = {}", self.t, self.m));
        }
        for (name, mat) in [("P", &self.p), ("Q", &self.q)] {
            if mat.nrows() != k || mat.ncols() != k {
                errs.push(format!("{name} is {}x{}, expected {k}x{k}", mat.nrows(), mat.ncols()));
            }
            if mat.data().iter().any(|x| x.conductor() != self.m) {
                errs.push(format!("{name} has entries outside Q(zeta_{})", self.m));
            }
        }
        if !errs.is_empty() {
            return Err(Error::InvalidSpec(errs));
        }
        let Some(q_inv) = self.q.inverse() else {
            return Err(Error::InvalidSpec(vec!["Q is not invertible".into()]));
        };
        if !self.q.pow((self.m as usize / self.t) as u64).is_identity() {
            errs.push(format!("Q^{} != E", self.m as usize / self.t));
        }
        let conj = self.q.mul(&self.p).mul(&q_inv);
        if conj != self.p.scale(&f.zeta_power(-(self.t as i64))) {
            errs.push(format!("QPQ^-1 != zeta^-{} P", self.t));
        }
        let alpha = self.p.pow(self.m as u64).scalar_value();
        if alpha.is_none() {
            errs.push(format!("P^{} is not scalar", self.m));
        }
        if !errs.is_empty() {
            return Err(Error::InvalidSpec(errs));
        }
        Ok(alpha.unwrap())
    }

    pub fn dim(&self) -> usize {
        self.t * self.k * self.k
    }

    /// Splits a coordinate vector of A into the t matrix components.
    pub fn split(&self, a: &[CycNum]) -> Vec<CMatrix> {
        let f = self.field().expect("valid conductor");
        let kk = self.k * self.k;
        (0..self.t).map(|b| Matrix::from_vec(f, self.k, self.k, a[b * kk..(b + 1) * kk].to_vec())).collect()
    }

    pub fn join(&self, parts: &[CMatrix]) -> Vec<CycNum> {
        parts.iter().flat_map(|p| p.data().iter().cloned()).collect()
    }
}

/// c on a tuple of matrices.
pub fn apply_c(spec: &SemisimpleSpec, a: &[CMatrix]) -> Vec<CMatrix> {
    let q_inv = spec.q.inverse().expect("Q invertible");
    let t = spec.t;
    let mut out = Vec::with_capacity(t);
    out.push(spec.q.mul(&a[t - 1]).mul(&q_inv));
    out.extend(a[..t - 1].iter().cloned());
    out
}

/// v on a tuple of matrices.
pub fn apply_v(spec: &SemisimpleSpec, a: &[CMatrix]) -> Vec<CMatrix> {
    let f = spec.field().expect("valid conductor");
    let q_inv = spec.q.inverse().expect("Q invertible");
    let t = spec.t;
    let a0 = spec.q.mul(&a[t - 1]).mul(&q_inv);
    (0..t)
        .map(|s| {
            let prev = if s == 0 { &a0 } else { &a[s - 1] };
            spec.p.mul(&a[s]).sub(&prev.mul(&spec.p)).scale(&f.zeta_power(s as i64))
        })
        .collect()
}

fn operator_from_tuple_map(spec: &SemisimpleSpec, op: impl Fn(&[CMatrix]) -> Vec<CMatrix>) -> CMatrix {
    let f = spec.field().expect("valid conductor");
    let d = spec.dim();
    let cols: Vec<Vec<CycNum>> = (0..d)
        .map(|j| {
            let mut e = vec![f.zero(); d];
            e[j] = f.one();
            spec.join(&op(&spec.split(&e)))
        })
        .collect();
    Matrix::from_cols(f, d, &cols)
}

/// The H-module algebra M_k^{⊕t} with the actions above.
pub fn build_semisimple(spec: &SemisimpleSpec) -> Result<HModuleAlgebra> {
    spec.validate()?;
    let f = spec.field()?;
    let mk = FinDimAlgebra::matrix_algebra(f, spec.k);
    let parts: Vec<&FinDimAlgebra> = std::iter::repeat(&mk).take(spec.t).collect();
    let a = FinDimAlgebra::direct_sum(&parts)?;
    let c = operator_from_tuple_map(spec, |x| apply_c(spec, x));
    let v = operator_from_tuple_map(spec, |x| apply_v(spec, x));
    HModuleAlgebra::new(a, c, v)
}

/// Builds the operators without validating the spec. Used to observe what
/// goes wrong when an invariant is violated.
pub fn build_semisimple_unchecked(spec: &SemisimpleSpec) -> Result<HModuleAlgebra> {
    let f = spec.field()?;
    if spec.q.inverse().is_none() {
        return Err(Error::InvalidSpec(vec!["Q is not invertible".into()]));
    }
    let mk = FinDimAlgebra::matrix_algebra(f, spec.k);
    let parts: Vec<&FinDimAlgebra> = std::iter::repeat(&mk).take(spec.t).collect();
    let a = FinDimAlgebra::direct_sum(&parts)?;
    let c = operator_from_tuple_map(spec, |x| apply_c(spec, x));
    let v = operator_from_tuple_map(spec, |x| apply_v(spec, x));
    HModuleAlgebra::new(a, c, v)
}

/// v^ℓ(a) in closed form:
/// b_s = ζ^{ℓ(s−1)} Σ_j (−1)^j ζ^{−j(j−1)/2} binom(ℓ,j)_{ζ^{−1}} P^{ℓ−j} a_{s−j} P^j,
/// with a_{i} := Q a_{i+t} Q^{-1} for i ≤ 0.
pub fn v_power_closed_form(spec: &SemisimpleSpec, l: u32, a: &[CMatrix]) -> Result<Vec<CMatrix>> {
    if l == 0 || l > spec.m {
        return Err(Error::InvalidArgument(format!("power must lie in 1..={}, got {l}", spec.m)));
    }
    if a.len() != spec.t {
        return Err(Error::DimensionMismatch(format!("expected {} components, got {}", spec.t, a.len())));
    }
    let f = spec.field()?;
    let q_inv = spec.q.inverse().ok_or_else(|| Error::InvalidSpec(vec!["Q is not invertible".into()]))?;
    let t = spec.t as i64;
    // a_i for i in (1 − l) ..= t, 1-based.
    let component = |i: i64| -> CMatrix {
        let mut idx = i;
        let mut conj = 0;
        while idx <= 0 {
            idx += t;
            conj += 1;
        }
        let mut x = a[(idx - 1) as usize].clone();
        for _ in 0..conj {
            x = spec.q.mul(&x).mul(&q_inv);
        }
        x
    };
    let binoms = QBinomTable::new(f.zeta_power(-1), l);
    let p_pows: Vec<CMatrix> = (0..=l as u64).map(|e| spec.p.pow(e)).collect();
    let mut out = Vec::with_capacity(spec.t);
    for s in 1..=t {
        let mut acc = Matrix::zeros(f, spec.k, spec.k);
        for j in 0..=l as i64 {
            let coef = binoms.get(l, j as u32)?;
            if coef.is_zero() {
                continue;
            }
            let sign = if j % 2 == 0 { f.one() } else { f.int(-1) };
            let scalar = &(&sign * &f.zeta_power(-(j * (j - 1) / 2))) * coef;
            let term = p_pows[(l as i64 - j) as usize].mul(&component(s - j)).mul(&p_pows[j as usize]);
            acc = acc.add(&term.scale(&scalar));
        }
        out.push(acc.scale(&f.zeta_power(l as i64 * (s - 1))));
    }
    Ok(out)
}

/// Isomorphism data: P₂ = ζ^r T P₁ T^{-1} and Q₂ = β T Q₁ T^{-1}.
#[derive(Clone, Debug, PartialEq)]
pub struct SemisimpleIso {
    pub t_mat: CMatrix,
    pub r: usize,
    pub beta: CycNum,
}

/// Checks the defining equalities of a witness exactly.
pub fn verify_iso_witness(s1: &SemisimpleSpec, s2: &SemisimpleSpec, w: &SemisimpleIso) -> bool {
    let Ok(f) = s1.field() else { return false };
    let Some(ti) = w.t_mat.inverse() else { return false };
    s2.p == w.t_mat.mul(&s1.p).mul(&ti).scale(&f.zeta_power(w.r as i64))
        && s2.q == w.t_mat.mul(&s1.q).mul(&ti).scale(&w.beta)
}

/// Basis of {T : T·A₁ = λ A₂·T and T·B₁ = μ B₂·T}, as k×k matrices.
pub(crate) fn intertwiner_space(
    f: CyclotomicField,
    k: usize,
    pairs: &[(&CMatrix, &CMatrix, CycNum)],
) -> Vec<CMatrix> {
    let n = k * k;
    let mut rows = Vec::new();
    for (x1, x2, lambda) in pairs {
        for i in 0..k {
            for j in 0..k {
                let mut row = vec![f.zero(); n];
                for l in 0..k {
                    row[i * k + l] = &row[i * k + l] + x1.get(l, j);
                    row[l * k + j] = &row[l * k + j] - &(lambda * x2.get(i, l));
                }
                rows.push(row);
            }
        }
    }
    let sys = Matrix::from_rows(f, rows).expect("rectangular");
    sys.nullspace().into_iter().map(|v| Matrix::from_vec(f, k, k, v)).collect()
}

/// Finds an invertible element of span(basis), or proves there is none.
///
/// Random points are tried first. If they all give det = 0, the
/// determinant (a polynomial of degree k in the coefficients) is evaluated
/// on the grid {0..k}^s; a polynomial of degree k vanishing there is zero.
pub(crate) fn find_invertible(f: CyclotomicField, k: usize, basis: &[CMatrix], seed: u64) -> Result<Option<CMatrix>> {
    if basis.is_empty() {
        return Ok(None);
    }
    let combo = |coefs: &[i64]| -> CMatrix {
        let mut acc = Matrix::zeros(f, k, k);
        for (c, b) in coefs.iter().zip(basis) {
            if *c != 0 {
                acc = acc.add(&b.scale(&f.int(*c)));
            }
        }
        acc
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = basis.len();
    for _ in 0..(s + 1) * (s + 1) {
        let coefs: Vec<i64> = (0..s).map(|_| rng.gen_range(-50..=50)).collect();
        let t = combo(&coefs);
        if !t.det().is_zero() {
            return Ok(Some(t));
        }
    }
    let side = k as u64 + 1;
    let total = side.checked_pow(s as u32).filter(|&n| n <= GRID_BUDGET);
    let Some(total) = total else {
        return Err(Error::BudgetExceeded { unit: "grid points", required: (side as u128).pow(s as u32), budget: GRID_BUDGET as u128 });
    };
    let mut coefs = vec![0i64; s];
    for idx in 0..total {
        let mut x = idx;
        for c in coefs.iter_mut() {
            *c = (x % side) as i64;
            x /= side;
        }
        let t = combo(&coefs);
        if !t.det().is_zero() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Decides whether the algebras of two specs are isomorphic as H-module
/// algebras, returning a witness (T, r, β).
pub fn iso_semisimple(s1: &SemisimpleSpec, s2: &SemisimpleSpec) -> Result<Option<SemisimpleIso>> {
    s1.validate()?;
    s2.validate()?;
    if s1.m != s2.m {
        return Err(Error::ConductorMismatch(s1.m, s2.m));
    }
    if s1.k != s2.k || s1.t != s2.t {
        return Ok(None);
    }
    let f = s1.field()?;
    let (m, t, k) = (s1.m as usize, s1.t, s1.k);
    for r in 0..t {
        for j in 0..m / t {
            let beta = f.zeta_power((t * j) as i64);
            let beta_inv = beta.inv()?;
            // T P₁ = ζ^{-r} P₂ T,  T Q₁ = β^{-1} Q₂ T
            let space = intertwiner_space(
                f,
                k,
                &[(&s1.p, &s2.p, f.zeta_power(-(r as i64))), (&s1.q, &s2.q, beta_inv)],
            );
            if let Some(tm) = find_invertible(f, k, &space, (r * m + j) as u64)? {
                let w = SemisimpleIso { t_mat: tm, r, beta };
                debug_assert!(verify_iso_witness(s1, s2, &w));
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// The explicit H-module algebra isomorphism A(s1) → A(s2) of a witness:
/// a ↦ (T a_{r+1} T^{-1}, …, T a_t T^{-1}, T Q₁^{-1} a_1 Q₁ T^{-1}, …, T Q₁^{-1} a_r Q₁ T^{-1}).
pub fn iso_map(s1: &SemisimpleSpec, w: &SemisimpleIso) -> Result<CMatrix> {
    let f = s1.field()?;
    let ti = w.t_mat.inverse().ok_or(Error::Singular)?;
    let q_inv = s1.q.inverse().ok_or(Error::Singular)?;
    let t = s1.t;
    let d = s1.dim();
    let cols: Vec<Vec<CycNum>> = (0..d)
        .map(|j| {
            let mut e = vec![f.zero(); d];
            e[j] = f.one();
            let a = s1.split(&e);
            let mut out = Vec::with_capacity(t);
            for x in &a[w.r..] {
                out.push(w.t_mat.mul(x).mul(&ti));
            }
            for x in &a[..w.r] {
                out.push(w.t_mat.mul(&q_inv).mul(x).mul(&s1.q).mul(&ti));
            }
            s1.join(&out)
        })
        .collect();
    Ok(Matrix::from_cols(f, d, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hmodule::is_hma_isomorphism;

    pub(crate) fn mat(f: CyclotomicField, rows: &[&[i64]]) -> CMatrix {
        Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&x| f.int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn sweedler_gamma_example() {
        let f = CyclotomicField::new(2).unwrap();
        let spec = SemisimpleSpec::new(2, 2, 1, mat(f, &[&[0, 1], &[3, 0]]), mat(f, &[&[1, 0], &[0, -1]]));
        assert_eq!(spec.validate().unwrap(), f.int(3));
        let hma = build_semisimple(&spec).unwrap();
        assert!(hma.verify().all_passed());
        assert!(hma.is_h_simple().is_certified());
    }

    #[test]
    fn swap_example() {
        let f = CyclotomicField::new(2).unwrap();
        let spec = SemisimpleSpec::new(2, 1, 2, mat(f, &[&[5]]), mat(f, &[&[1]]));
        let hma = build_semisimple(&spec).unwrap();
        // c(a, b) = (b, a); v(a, b) = (Pa − bP, aP − Pb)
        assert_eq!(hma.c_op(), &mat(f, &[&[0, 1], &[1, 0]]));
        assert_eq!(hma.v_op(), &mat(f, &[&[5, -5], &[5, -5]]));
        assert!(hma.verify().all_passed());
        assert!(hma.is_h_simple().is_certified());
    }

    #[test]
    fn invalid_specs_rejected() {
        let f = CyclotomicField::new(2).unwrap();
        let spec = SemisimpleSpec::new(2, 2, 1, mat(f, &[&[1, 1], &[0, 2]]), mat(f, &[&[1, 0], &[0, 1]]));
        let Err(Error::InvalidSpec(errs)) = spec.validate() else { panic!("expected rejection") };
        assert!(errs.iter().any(|e| e.contains("not scalar")));
        assert!(errs.iter().any(|e| e.contains("QPQ^-1")));
        let spec = SemisimpleSpec::new(4, 1, 3, mat(f, &[&[1]]), mat(f, &[&[1]]));
        assert!(spec.validate().is_err());
    }

    #[test]
    fn closed_form_base_and_top_cases() {
        let f = CyclotomicField::new(3).unwrap();
        // t = m = 3 and Q = E, so any P with P^3 scalar works.
        let spec = SemisimpleSpec::new(3, 2, 3, mat(f, &[&[0, 1], &[0, 0]]), Matrix::identity(f, 2));
        spec.validate().unwrap();
        let a: Vec<CMatrix> = (0..3).map(|s| mat(f, &[&[s + 1, 2], &[3 - s, 5]])).collect();
        assert_eq!(v_power_closed_form(&spec, 1, &a).unwrap(), apply_v(&spec, &a));
        assert!(v_power_closed_form(&spec, 3, &a).unwrap().iter().all(Matrix::is_zero));
        let twice = apply_v(&spec, &apply_v(&spec, &a));
        assert_eq!(v_power_closed_form(&spec, 2, &a).unwrap(), twice);
        assert!(v_power_closed_form(&spec, 4, &a).is_err());
    }

    #[test]
    fn iso_examples() {
        let f = CyclotomicField::new(2).unwrap();
        let one = mat(f, &[&[1]]);
        let s = |a: i64| SemisimpleSpec::new(2, 1, 2, mat(f, &[&[a]]), one.clone());
        let w = iso_semisimple(&s(1), &s(1)).unwrap().unwrap();
        assert_eq!((w.r, w.beta.is_one()), (0, true));
        let w = iso_semisimple(&s(1), &s(-1)).unwrap().unwrap();
        assert_eq!(w.r, 1);
        assert!(verify_iso_witness(&s(1), &s(-1), &w));
        assert!(iso_semisimple(&s(1), &s(2)).unwrap().is_none());
    }

    #[test]
    fn witness_map_is_an_isomorphism() {
        let f = CyclotomicField::new(2).unwrap();
        let e = Matrix::identity(f, 2);
        let s1 = SemisimpleSpec::new(2, 2, 2, mat(f, &[&[1, 0], &[0, -1]]), e.clone());
        let s2 = SemisimpleSpec::new(2, 2, 2, mat(f, &[&[-1, 0], &[0, 1]]), e.clone());
        let s3 = SemisimpleSpec::new(2, 2, 2, mat(f, &[&[0, 1], &[0, 0]]), e.clone());
        let w = iso_semisimple(&s1, &s2).unwrap().unwrap();
        let phi = iso_map(&s1, &w).unwrap();
        assert!(is_hma_isomorphism(&build_semisimple(&s1).unwrap(), &build_semisimple(&s2).unwrap(), &phi));
        assert!(iso_semisimple(&s1, &s3).unwrap().is_none());
        // α and −α for k = 1 are only related with r = 1.
        let one = mat(f, &[&[1]]);
        let a = SemisimpleSpec::new(2, 1, 2, mat(f, &[&[3]]), one.clone());
        let b = SemisimpleSpec::new(2, 1, 2, mat(f, &[&[-3]]), one);
        let w = iso_semisimple(&a, &b).unwrap().unwrap();
        assert_eq!(w.r, 1);
        let phi = iso_map(&a, &w).unwrap();
        assert!(is_hma_isomorphism(&build_semisimple(&a).unwrap(), &build_semisimple(&b).unwrap(), &phi));
    }

    #[test]
    fn r_positive_map_with_nontrivial_q() {
        let f = CyclotomicField::new(4).unwrap();
        let i = f.zeta();
        let q = Matrix::from_rows(f, vec![vec![f.one(), f.zero()], vec![f.zero(), f.int(-1)]]).unwrap();
        let p = mat(f, &[&[0, 1], &[0, 0]]);
        let s1 = SemisimpleSpec::new(4, 2, 2, p.clone(), q.clone());
        let s2 = SemisimpleSpec::new(4, 2, 2, p.scale(&i), q);
        let w = iso_semisimple(&s1, &s2).unwrap().unwrap();
        assert!(verify_iso_witness(&s1, &s2, &w));
        let phi = iso_map(&s1, &w).unwrap();
        assert!(is_hma_isomorphism(&build_semisimple(&s1).unwrap(), &build_semisimple(&s2).unwrap(), &phi));
        // The same pair related by T = E and r = 1.
        let w1 = SemisimpleIso { t_mat: Matrix::identity(f, 2), r: 1, beta: f.one() };
        assert!(verify_iso_witness(&s1, &s2, &w1));
        let phi = iso_map(&s1, &w1).unwrap();
        assert!(is_hma_isomorphism(&build_semisimple(&s1).unwrap(), &build_semisimple(&s2).unwrap(), &phi));
    }
}
