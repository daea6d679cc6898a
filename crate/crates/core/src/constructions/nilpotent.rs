//! Non-semisimple H-simple algebras A = ⊕_{i<m} φ^i(B) built from a
//! Z_m-graded-simple unital algebra B, and recovery of B and φ from A.
//!
//! Multiplication: φ^k(a) φ^ℓ(b) = binom(k+ℓ, k)_ζ φ^{k+ℓ}((c^ℓ a) b),
//! zero when k + ℓ ≥ m. The action: v φ^{i+1}(b) = φ^i(b), v(B) = 0,
//! c φ^i(b) = ζ^{deg b + i} φ^i(b). Basis index of φ^i(b_j) is i·dim B + j.

use crate::algebra::{FinDimAlgebra, Subspace};
use crate::cyclotomic::{CycNum, CyclotomicField};
use crate::error::{Error, Result};
use crate::hmodule::{is_hma_isomorphism, operator_algebra_dim_modular, HModuleAlgebra};
use crate::linalg::{CMatrix, Matrix};
use crate::qcomb::QBinomTable;

/// A graded-simple unital algebra B with a homogeneous basis.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentExtensionSpec {
    m: u32,
    b: FinDimAlgebra,
    degrees: Vec<usize>,
    /// Dimension of the algebra generated by L_b, R_b and the degree
    /// projections; equals (dim B)² for a graded-simple B.
    certificate_dim: usize,
}

impl NilpotentExtensionSpec {
    pub fn new(m: u32, b: FinDimAlgebra, degrees: Vec<usize>) -> Result<Self> {
        let f = b.field();
        let d = b.dim();
        let mut errs = Vec::new();
        if f.conductor() != m {
            errs.push(format!("B is defined over Q(zeta_{}), expected Q(zeta_{m})", f.conductor()));
        }
        if degrees.len() != d {
            errs.push(format!("{} degrees given for a basis of size {d}", degrees.len()));
        }
        if let Some(bad) = degrees.iter().find(|&&g| g >= m as usize) {
            errs.push(format!("degree {bad} is not below {m}"));
        }
        if b.unit().is_none() {
            errs.push("B has no unit".into());
        }
        if !errs.is_empty() {
            return Err(Error::InvalidSpec(errs));
        }
        for i in 0..d {
            for j in 0..d {
                let g = (degrees[i] + degrees[j]) % m as usize;
                if let Some((k, _)) = b.basis_product(i, j).iter().find(|(k, _)| degrees[*k] != g) {
                    errs.push(format!("e{i}·e{j} has a component on e{k} of the wrong degree"));
                }
            }
        }
        if !errs.is_empty() {
            return Err(Error::InvalidSpec(errs));
        }
        let mut gens = Vec::new();
        for i in 0..d {
            let e = b.basis_vec(i);
            gens.push(b.left_mult_operator(&e));
            gens.push(b.right_mult_operator(&e));
        }
        for g in 0..m as usize {
            let mut p = Matrix::zeros(f, d, d);
            for (i, &dg) in degrees.iter().enumerate() {
                if dg == g {
                    p.set(i, i, f.one());
                }
            }
            gens.push(p);
        }
        let certificate_dim = operator_algebra_dim_modular(&gens, d);
        if certificate_dim != d * d {
            return Err(Error::Precondition(format!(
                "B is not certified graded-simple: operator algebra has dimension {certificate_dim} < {}",
                d * d
            )));
        }
        Ok(NilpotentExtensionSpec { m, b, degrees, certificate_dim })
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn base(&self) -> &FinDimAlgebra {
        &self.b
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn certificate_dim(&self) -> usize {
        self.certificate_dim
    }

    pub fn dim(&self) -> usize {
        self.m as usize * self.b.dim()
    }
}

/// M_k with the elementary grading deg e_ij = g_j − g_i (mod m).
pub fn elementary_grading(field: CyclotomicField, g: &[usize]) -> (FinDimAlgebra, Vec<usize>) {
    let k = g.len();
    let m = field.conductor() as usize;
    let degrees = (0..k * k).map(|x| (g[x % k] + m - g[x / k] % m) % m).collect();
    (FinDimAlgebra::matrix_algebra(field, k), degrees)
}

pub fn build_nilpotent_extension(spec: &NilpotentExtensionSpec) -> Result<HModuleAlgebra> {
    let b = &spec.b;
    let f = b.field();
    let m = spec.m as usize;
    let db = b.dim();
    let n = m * db;
    let binoms = QBinomTable::new(f.zeta(), spec.m);
    let mut err = None;
    let algebra = FinDimAlgebra::from_fn_unchecked(f, n, |x, y| {
        let (k, i) = (x / db, x % db);
        let (l, j) = (y / db, y % db);
        let mut out = vec![f.zero(); n];
        if k + l >= m {
            return out;
        }
        let coef = match binoms.get((k + l) as u32, k as u32) {
            Ok(c) => c * &f.zeta_power((l * spec.degrees[i]) as i64),
            Err(e) => {
                err = Some(e);
                return out;
            }
        };
        for (t, c) in b.basis_product(i, j) {
            out[(k + l) * db + t] = &coef * c;
        }
        out
    });
    if let Some(e) = err {
        return Err(e);
    }
    algebra.check_associativity()?;
    let mut c_op = Matrix::zeros(f, n, n);
    let mut v_op = Matrix::zeros(f, n, n);
    for i in 0..m {
        for j in 0..db {
            let x = i * db + j;
            c_op.set(x, x, f.zeta_power((spec.degrees[j] + i) as i64));
            if i > 0 {
                v_op.set((i - 1) * db + j, x, f.one());
            }
        }
    }
    let hma = HModuleAlgebra::new(algebra, c_op, v_op)?;
    let report = hma.verify();
    if !report.all_passed() {
        let names: Vec<&str> = report.failures().iter().map(|c| c.name).collect();
        return Err(Error::Structure(format!("constructed algebra fails {}", names.join(", "))));
    }
    Ok(hma)
}

/// The data recovered from a non-semisimple H-simple algebra.
#[derive(Clone, Debug)]
pub struct RecoveredExtension {
    pub spec: NilpotentExtensionSpec,
    /// Columns are the A-coordinates of φ^i(b_j), index i·dim B + j.
    /// This is an H-module algebra isomorphism from the rebuilt extension to A.
    pub iso: CMatrix,
    /// φ as an operator on A.
    pub phi: CMatrix,
    pub radical: Subspace,
    pub radical_nilpotency: usize,
}

impl RecoveredExtension {
    /// Coordinates of an element of ker v in the recovered basis of B.
    pub fn base_coordinates(&self, a: &[CycNum]) -> Option<Vec<CycNum>> {
        let db = self.spec.b.dim();
        let x = self.iso.solve(a)?;
        if x[db..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(x[..db].to_vec())
    }
}

fn homogeneous_degree(c_op: &CMatrix, x: &[CycNum], m: u32) -> Option<usize> {
    let f = c_op.field();
    let cx = c_op.mul_vec(x);
    (0..m as usize).find(|&g| {
        let z = f.zeta_power(g as i64);
        cx.iter().zip(x).all(|(a, b)| *a == &z * b)
    })
}

/// Recovers B, its grading and φ from an H-simple algebra with nonzero
/// radical, and returns an explicit isomorphism from the rebuilt extension.
pub fn recover_structure(hma: &HModuleAlgebra) -> Result<RecoveredExtension> {
    let a = hma.algebra();
    let f = hma.field();
    let m = hma.conductor();
    let n = a.dim();
    let report = hma.verify();
    if !report.all_passed() {
        return Err(Error::Precondition("input is not an H-module algebra".into()));
    }
    if !hma.is_h_simple().is_certified() {
        return Err(Error::Precondition("input is not certified H-simple".into()));
    }
    let radical = a.jacobson_radical();
    if radical.is_zero() {
        return Err(Error::Precondition("radical is zero; the algebra is semisimple".into()));
    }
    let kernel = a.span(&hma.v_op().nullspace());
    if !kernel.intersection(&radical).is_zero() || kernel.dim() + radical.dim() != n {
        return Err(Error::Structure("ker v is not a complement of the radical".into()));
    }
    if kernel.dim() * m as usize != n {
        return Err(Error::Structure(format!("dim A = {n} is not {m}·dim ker v")));
    }

    let ell = a
        .nilpotency_index(&radical)
        .ok_or_else(|| Error::Structure("radical is not nilpotent".into()))?;
    let mut top = radical.clone();
    for _ in 2..ell {
        top = a.product_space(&top, &radical);
    }
    let projections = a.grading_projections(hma.c_op(), m);
    let mut minimal = a.ideal_generated_by(&a.span(&top.basis()[..1]), &projections);
    'shrink: loop {
        for y in minimal.basis() {
            for p in &projections {
                let py = p.mul_vec(&y);
                if py.iter().all(CycNum::is_zero) {
                    continue;
                }
                let cand = a.ideal_generated_by(&a.span(&[py]), &projections);
                if cand.dim() < minimal.dim() {
                    minimal = cand;
                    continue 'shrink;
                }
            }
        }
        break;
    }
    let db = minimal.dim();
    if db * m as usize != n {
        return Err(Error::Structure(format!("minimal graded ideal has dimension {db}, expected {}", n / m as usize)));
    }

    // Homogeneous basis of the minimal ideal.
    let mut gens: Vec<Vec<CycNum>> = Vec::new();
    for p in &projections {
        gens.extend(minimal.image(p).basis());
    }
    let v_pows: Vec<CMatrix> = (0..m as u64).map(|e| hma.v_op().pow(e)).collect();
    let mut cols = vec![Vec::new(); n];
    for i in 0..m as usize {
        for (j, g) in gens.iter().enumerate() {
            cols[i * db + j] = v_pows[m as usize - 1 - i].mul_vec(g);
        }
    }
    let iso = Matrix::from_cols(f, n, &cols);
    let iso_inv = iso.inverse().ok_or_else(|| Error::Structure("layers v^i(J~) are not independent".into()))?;

    let degrees: Vec<usize> = (0..db)
        .map(|j| homogeneous_degree(hma.c_op(), &cols[j], m))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Structure("recovered basis of B is not homogeneous".into()))?;
    let mut mult = Vec::with_capacity(db);
    for x in &cols[..db] {
        let mut row = Vec::with_capacity(db);
        for y in &cols[..db] {
            let coords = iso_inv.mul_vec(&a.mul(x, y));
            if coords[db..].iter().any(|c| !c.is_zero()) {
                return Err(Error::Structure("ker v is not a subalgebra".into()));
            }
            row.push(coords[..db].to_vec());
        }
        mult.push(row);
    }
    let unit = a.unit().map(|u| iso_inv.mul_vec(u)[..db].to_vec());
    let b = FinDimAlgebra::from_structure_constants(f, db, mult, unit)?;
    let spec = NilpotentExtensionSpec::new(m, b, degrees)?;

    let mut shift = Matrix::zeros(f, n, n);
    for x in 0..n - db {
        shift.set(x + db, x, f.one());
    }
    let phi = iso.mul(&shift).mul(&iso_inv);
    check_phi_law(hma, &spec, &phi, &cols[..db])?;

    let rebuilt = build_nilpotent_extension(&spec)?;
    if !is_hma_isomorphism(&rebuilt, hma, &iso) {
        return Err(Error::Structure("rebuilt extension is not isomorphic via the recovered basis".into()));
    }
    Ok(RecoveredExtension { spec, iso, phi, radical, radical_nilpotency: ell })
}

/// φ^k(a) φ^ℓ(b) = binom(k+ℓ, k)_ζ φ^{k+ℓ}((c^ℓ a) b) on basis pairs of B.
fn check_phi_law(hma: &HModuleAlgebra, spec: &NilpotentExtensionSpec, phi: &CMatrix, base: &[Vec<CycNum>]) -> Result<()> {
    let a = hma.algebra();
    let m = spec.m as usize;
    let binoms = QBinomTable::new(hma.field().zeta(), spec.m);
    let phi_pows: Vec<CMatrix> = (0..m as u64).map(|e| phi.pow(e)).collect();
    let c_pows: Vec<CMatrix> = (0..m as u64).map(|e| hma.c_op().pow(e)).collect();
    for x in base {
        for y in base {
            for k in 0..m {
                for l in 0..m {
                    let lhs = a.mul(&phi_pows[k].mul_vec(x), &phi_pows[l].mul_vec(y));
                    let ok = if k + l >= m {
                        lhs.iter().all(CycNum::is_zero)
                    } else {
                        let inner = a.mul(&c_pows[l].mul_vec(x), y);
                        let coef = binoms.get((k + l) as u32, k as u32)?;
                        let rhs: Vec<CycNum> = phi_pows[k + l].mul_vec(&inner).iter().map(|z| coef * z).collect();
                        lhs == rhs
                    };
                    if !ok {
                        return Err(Error::Structure(format!("phi multiplication law fails at k = {k}, l = {l}")));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks that `t` (columns = images of the basis of b1) is a degree
/// preserving algebra isomorphism b1 → b2.
pub fn is_graded_isomorphism(b1: &FinDimAlgebra, d1: &[usize], b2: &FinDimAlgebra, d2: &[usize], t: &CMatrix) -> bool {
    let n = b1.dim();
    if b2.dim() != n || t.nrows() != n || t.ncols() != n || t.inverse().is_none() {
        return false;
    }
    let images: Vec<Vec<CycNum>> = (0..n).map(|j| t.col(j)).collect();
    for (j, img) in images.iter().enumerate() {
        if img.iter().enumerate().any(|(i, c)| !c.is_zero() && d2[i] != d1[j]) {
            return false;
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = t.mul_vec(&b1.mul(&b1.basis_vec(i), &b1.basis_vec(j)));
            if lhs != b2.mul(&images[i], &images[j]) {
                return false;
            }
        }
    }
    true
}
