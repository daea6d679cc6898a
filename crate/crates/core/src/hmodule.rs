//! Module algebras over H_{m²}(ζ): an algebra A with operators C, V on A
//! realizing the generators c, v.
//!
//! Convention: the basis monomial c^i v^k acts as C^i ∘ V^k, so V is applied
//! first. This matches the normal form of [`crate::taft`] and makes
//! `act(h₁h₂, a) = act(h₁, act(h₂, a))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{FinDimAlgebra, Subspace};
use crate::cyclotomic::{CycNum, CyclotomicField};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{vec_add, vec_is_zero, vec_scale, CMatrix, Echelon, Matrix};
use crate::modular::ReductionMap;
use crate::taft::{HopfElement, TaftAlgebra};

/// Random samples drawn from the intertwiner space before giving up.
pub const ISO_SAMPLE_BUDGET: usize = 64;

#[derive(Clone, Debug)]
pub struct HModuleAlgebra {
    h: TaftAlgebra,
    algebra: FinDimAlgebra,
    c_op: CMatrix,
    v_op: CMatrix,
    c_pows: Vec<CMatrix>,
    v_pows: Vec<CMatrix>,
}

/// Result of one check in [`HModuleAlgebra::verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// First violation found, if any.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HmaReport {
    pub checks: Vec<Check>,
    pub note: &'static str,
}

impl HmaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

const VERIFY_NOTE: &str = "c and v generate H and h ↦ h(ab) − Σ(h₁a)(h₂b) vanishes on products once it vanishes on \
the factors (Δ is multiplicative), so checking c and v on basis pairs covers all of H";

/// Outcome of [`HModuleAlgebra::is_h_simple`].
#[derive(Clone, Debug)]
pub enum Simplicity {
    /// The operators generate End(A) and A² ≠ 0.
    CertifiedSimple,
    /// A proper nonzero H-invariant ideal, or A² = 0.
    NotSimple(NotSimpleWitness),
    /// Neither a certificate nor an ideal was found.
    Inconclusive { operator_algebra_dim_lower_bound: usize },
}

#[derive(Clone, Debug)]
pub struct NotSimpleWitness {
    pub ideal: Subspace,
    pub reason: String,
}

impl Simplicity {
    pub fn label(&self) -> &'static str {
        match self {
            Simplicity::CertifiedSimple => "CertifiedSimple",
            Simplicity::NotSimple(_) => "NotSimple",
            Simplicity::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Simplicity::CertifiedSimple)
    }
}

impl HModuleAlgebra {
    /// Checks shapes and conductor only; use [`Self::verify`] for the laws.
    pub fn new(algebra: FinDimAlgebra, c_op: CMatrix, v_op: CMatrix) -> Result<Self> {
        let d = algebra.dim();
        for (name, op) in [("c", &c_op), ("v", &v_op)] {
            if op.nrows() != d || op.ncols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "{name} operator is {}x{}, algebra has dimension {d}",
                    op.nrows(),
                    op.ncols()
                )));
            }
        }
        let m = algebra.field().conductor();
        let h = TaftAlgebra::new(m)?;
        let f = algebra.field();
        let mut c_pows = vec![Matrix::identity(f, d)];
        let mut v_pows = vec![Matrix::identity(f, d)];
        for i in 1..=m as usize {
            c_pows.push(c_pows[i - 1].mul(&c_op));
            v_pows.push(v_pows[i - 1].mul(&v_op));
        }
        Ok(HModuleAlgebra { h, algebra, c_op, v_op, c_pows, v_pows })
    }

    /// The trivial action c = id, v = 0.
    pub fn trivial(algebra: FinDimAlgebra) -> Self {
        let f = algebra.field();
        let d = algebra.dim();
        Self::new(algebra, Matrix::identity(f, d), Matrix::zeros(f, d, d)).expect("shapes agree")
    }

    pub fn hopf(&self) -> &TaftAlgebra {
        &self.h
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.algebra
    }

    pub fn c_op(&self) -> &CMatrix {
        &self.c_op
    }

    pub fn v_op(&self) -> &CMatrix {
        &self.v_op
    }

    pub fn field(&self) -> CyclotomicField {
        self.algebra.field()
    }

    pub fn conductor(&self) -> u32 {
        self.h.conductor()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Operator of the basis monomial c^i v^k.
    pub fn monomial_operator(&self, i: usize, k: usize) -> CMatrix {
        let m = self.conductor() as usize;
        if k >= m {
            return self.v_pows[m].clone();
        }
        self.c_pows[i % m].mul(&self.v_pows[k])
    }

    /// Image of c^i v^k applied to `a`.
    pub fn act_monomial(&self, i: usize, k: usize, a: &[CycNum]) -> Vec<CycNum> {
        let m = self.conductor() as usize;
        let after_v = if k >= m { self.v_pows[m].mul_vec(a) } else { self.v_pows[k].mul_vec(a) };
        self.c_pows[i % m].mul_vec(&after_v)
    }

    pub fn act(&self, h: &HopfElement, a: &[CycNum]) -> Result<Vec<CycNum>> {
        if h.conductor() != self.conductor() {
            return Err(Error::ConductorMismatch(self.conductor(), h.conductor()));
        }
        if a.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("vector of length {} for dimension {}", a.len(), self.dim())));
        }
        let f = self.field();
        let mut out = self.algebra.zero_vec();
        for ((i, k), coef) in h.terms() {
            out = vec_add(&f, &out, &vec_scale(&f, &self.act_monomial(i, k, a), coef));
        }
        Ok(out)
    }

    /// Checks the operator relations and the generator-level module-algebra law.
    pub fn verify(&self) -> HmaReport {
        let f = self.field();
        let d = self.dim();
        let m = self.conductor() as usize;
        let mut checks = Vec::new();
        let mut push = |name, witness: Option<String>| checks.push(Check { name, passed: witness.is_none(), witness });

        push("c_order", (!self.c_pows[m].is_identity()).then(|| format!("c^{m} is not the identity")));
        push("v_nilpotent", (!self.v_pows[m].is_zero()).then(|| format!("v^{m} is not zero")));
        let vc = self.v_op.mul(&self.c_op);
        let zcv = self.c_op.mul(&self.v_op).scale(self.h.zeta());
        push("v_c_commutation", (vc != zcv).then(|| "v∘c differs from ζ·c∘v".to_string()));

        let mut c_fail = None;
        let mut v_fail = None;
        'outer: for i in 0..d {
            let a = self.algebra.basis_vec(i);
            let ca = self.c_op.mul_vec(&a);
            let va = self.v_op.mul_vec(&a);
            for j in 0..d {
                let b = self.algebra.basis_vec(j);
                let ab = self.algebra.mul(&a, &b);
                let cb = self.c_op.mul_vec(&b);
                let vb = self.v_op.mul_vec(&b);
                if c_fail.is_none() && self.c_op.mul_vec(&ab) != self.algebra.mul(&ca, &cb) {
                    c_fail = Some(format!("c(e{i} e{j}) != c(e{i}) c(e{j})"));
                }
                if v_fail.is_none() {
                    let rhs = vec_add(&f, &self.algebra.mul(&ca, &vb), &self.algebra.mul(&va, &b));
                    if self.v_op.mul_vec(&ab) != rhs {
                        v_fail = Some(format!("v(e{i} e{j}) != c(e{i}) v(e{j}) + v(e{i}) e{j}"));
                    }
                }
                if c_fail.is_some() && v_fail.is_some() {
                    break 'outer;
                }
            }
        }
        push("c_multiplicative", c_fail);
        push("v_skew_derivation", v_fail);
        if let Some(u) = self.algebra.unit() {
            let w = if self.c_op.mul_vec(u) != u {
                Some("c(1) != 1".to_string())
            } else if !vec_is_zero(&f, &self.v_op.mul_vec(u)) {
                Some("v(1) != 0".to_string())
            } else {
                None
            };
            push("unit_preserved", w);
        }
        HmaReport { checks, note: VERIFY_NOTE }
    }

    fn generators_for_density(&self) -> Vec<CMatrix> {
        let mut gens = Vec::with_capacity(2 * self.dim() + 2);
        for i in 0..self.dim() {
            let e = self.algebra.basis_vec(i);
            gens.push(self.algebra.left_mult_operator(&e));
            gens.push(self.algebra.right_mult_operator(&e));
        }
        gens.push(self.c_op.clone());
        gens.push(self.v_op.clone());
        gens
    }

    /// Two-tier H-simplicity decision; see [`Simplicity`].
    pub fn is_h_simple(&self) -> Simplicity {
        let d = self.dim();
        let f = self.field();
        let square_zero = (0..d).all(|i| (0..d).all(|j| self.algebra.basis_product(i, j).is_empty()));
        if square_zero {
            return Simplicity::NotSimple(NotSimpleWitness {
                ideal: self.algebra.whole(),
                reason: "A² = 0".into(),
            });
        }
        let gens = self.generators_for_density();
        let lower = operator_algebra_dim_modular(&gens, d);
        if lower == d * d {
            return Simplicity::CertifiedSimple;
        }
        let ops = [self.c_op.clone(), self.v_op.clone()];
        for x in self.ideal_candidates() {
            if vec_is_zero(&f, &x) {
                continue;
            }
            let ideal = self.algebra.ideal_generated_by(&self.algebra.span(&[x]), &ops);
            if ideal.dim() > 0 && ideal.dim() < d {
                return Simplicity::NotSimple(NotSimpleWitness {
                    ideal,
                    reason: "proper nonzero H-invariant ideal".into(),
                });
            }
        }
        Simplicity::Inconclusive { operator_algebra_dim_lower_bound: lower }
    }

    fn ideal_candidates(&self) -> Vec<Vec<CycNum>> {
        let f = self.field();
        let d = self.dim();
        let mut cands = Vec::new();
        if let Ok(g) = self.algebra.grading_from_c(&self.c_op, self.conductor()) {
            for (v, _) in g.homogeneous_basis() {
                cands.push(v);
            }
        }
        cands.extend(self.v_op.nullspace());
        let mut rng = ChaCha8Rng::seed_from_u64(0x51_4D_50_1E);
        let rand_vec = |rng: &mut ChaCha8Rng| -> Vec<CycNum> { (0..d).map(|_| f.int(rng.gen_range(-3..=3))).collect() };
        for i in 0..d {
            let e = self.algebra.basis_vec(i);
            cands.extend(self.algebra.left_mult_operator(&e).nullspace());
            cands.extend(self.algebra.right_mult_operator(&e).nullspace());
        }
        for _ in 0..4 {
            let a = rand_vec(&mut rng);
            let b = rand_vec(&mut rng);
            let op = self.algebra.left_mult_operator(&a).mul(&self.algebra.right_mult_operator(&b));
            cands.extend(op.nullspace());
            cands.extend(self.algebra.left_mult_operator(&a).nullspace());
        }
        for _ in 0..8 {
            cands.push(rand_vec(&mut rng));
        }
        cands
    }
}

/// Dimension of the unital algebra generated by `gens`, computed modulo two
/// primes. Each value is a lower bound for the dimension over Q(ζ_m).
pub fn operator_algebra_dim_modular(gens: &[CMatrix], d: usize) -> usize {
    let Some(first) = gens.first() else { return 1.min(d * d) };
    let m = first.field().conductor();
    let mut best = 0;
    for seed in 0..2 {
        let red = ReductionMap::new(m, seed);
        let reduced: Option<Vec<Matrix<PrimeField>>> = gens.iter().map(|g| red.reduce_matrix(g)).collect();
        let Some(reduced) = reduced else { continue };
        best = best.max(operator_algebra_dim(&reduced, d));
        if best == d * d {
            break;
        }
    }
    best
}

/// Dimension of the unital algebra generated by `gens` over the field of
/// the matrices, by closing {I} under left multiplication by generators.
pub fn operator_algebra_dim<F: Field>(gens: &[Matrix<F>], d: usize) -> usize {
    let f = gens[0].field().clone();
    let mut e = Echelon::new(f.clone(), d * d);
    let id = Matrix::identity(f, d);
    e.insert(id.data());
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            if e.is_full() {
                return e.rank();
            }
            let y = g.mul(&x);
            if e.insert(y.data()) {
                queue.push(y);
            }
        }
    }
    e.rank()
}

/// Checks that `t` is an isomorphism of H-module algebras from `a` to `b`.
pub fn is_hma_isomorphism(a: &HModuleAlgebra, b: &HModuleAlgebra, t: &CMatrix) -> bool {
    let d = a.dim();
    if b.dim() != d || t.nrows() != d || t.ncols() != d || t.inverse().is_none() {
        return false;
    }
    if t.mul(a.c_op()) != b.c_op().mul(t) || t.mul(a.v_op()) != b.v_op().mul(t) {
        return false;
    }
    let images: Vec<Vec<CycNum>> = (0..d).map(|i| t.col(i)).collect();
    for i in 0..d {
        for j in 0..d {
            let lhs = t.mul_vec(&a.algebra().mul(&a.algebra().basis_vec(i), &a.algebra().basis_vec(j)));
            if lhs != b.algebra().mul(&images[i], &images[j]) {
                return false;
            }
        }
    }
    true
}

/// Searches for an isomorphism inside the space of linear intertwiners of
/// the c- and v-actions (anchored at T(1) = 1 when both algebras are unital).
pub fn hma_isomorphic_generic(a: &HModuleAlgebra, b: &HModuleAlgebra) -> Option<CMatrix> {
    let d = a.dim();
    if b.dim() != d || a.conductor() != b.conductor() {
        return None;
    }
    let f = a.field();
    // Unknown T (row-major, d² entries): T·C1 − C2·T = 0, T·V1 − V2·T = 0.
    let n = d * d;
    let mut rows: Vec<Vec<CycNum>> = Vec::new();
    let mut rhs: Vec<CycNum> = Vec::new();
    for (o1, o2) in [(a.c_op(), b.c_op()), (a.v_op(), b.v_op())] {
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![f.zero(); n];
                for k in 0..d {
                    // (T·O1)_{ij} = Σ_k T_{ik} O1_{kj}
                    row[i * d + k] = &row[i * d + k] + o1.get(k, j);
                    // (O2·T)_{ij} = Σ_k O2_{ik} T_{kj}
                    row[k * d + j] = &row[k * d + j] - o2.get(i, k);
                }
                rows.push(row);
                rhs.push(f.zero());
            }
        }
    }
    if let (Some(u1), Some(u2)) = (a.algebra().unit(), b.algebra().unit()) {
        for i in 0..d {
            let mut row = vec![f.zero(); n];
            for k in 0..d {
                row[i * d + k] = u1[k].clone();
            }
            rows.push(row);
            rhs.push(u2[i].clone());
        }
    }
    let sys = Matrix::from_rows(f, rows).ok()?;
    let particular = sys.solve(&rhs)?;
    let null = sys.nullspace();
    let to_mat = |v: &[CycNum]| Matrix::from_vec(f, d, d, v.to_vec());
    let lies_in_space = |v: &[CycNum]| {
        let r = sys.mul_vec(v);
        r == rhs
    };

    let mut candidates: Vec<Vec<CycNum>> = Vec::new();
    candidates.push(Matrix::identity(f, d).to_vec());
    for p in a.c_pows.iter().take(a.conductor() as usize) {
        candidates.push(p.to_vec());
    }
    candidates.push(particular.clone());
    for nv in &null {
        candidates.push(vec_add(&f, &particular, nv));
    }
    for cand in candidates {
        if lies_in_space(&cand) {
            let t = to_mat(&cand);
            if is_hma_isomorphism(a, b, &t) {
                return Some(t);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..ISO_SAMPLE_BUDGET {
        let mut v = particular.clone();
        for nv in &null {
            let r = f.int(rng.gen_range(-4..=4));
            v = vec_add(&f, &v, &vec_scale(&f, nv, &r));
        }
        let t = to_mat(&v);
        if is_hma_isomorphism(a, b, &t) {
            return Some(t);
        }
    }
    None
}
