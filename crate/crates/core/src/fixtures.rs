//! The shipped corpus: the m = 2 examples (three actions on M₂, the F⊕F
//! family with swapping c, M₂⊕M₂ with the two kinds of P, the 2-dim
//! non-semisimple algebra), a few larger specs, graded algebras for the
//! nilpotent construction, and reducible negatives.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::FinDimAlgebra;
use crate::constructions::{
    build_nilpotent_extension, build_semisimple, elementary_grading, NilpotentExtensionSpec, SemisimpleSpec,
};
use crate::cyclotomic::{CycNum, CyclotomicField};
use crate::error::Result;
use crate::hmodule::HModuleAlgebra;
use crate::json;
use crate::linalg::{CMatrix, Matrix};

#[derive(Clone, Debug)]
pub enum Fixture {
    Spec(SemisimpleSpec),
    Graded(NilpotentExtensionSpec),
    Hma(HModuleAlgebra),
}

#[derive(Clone, Debug)]
pub struct NamedFixture {
    pub name: &'static str,
    pub description: &'static str,
    /// Expected to be H-simple once built.
    pub simple: bool,
    pub fixture: Fixture,
}

impl Fixture {
    pub fn to_json(&self) -> String {
        match self {
            Fixture::Spec(s) => json::emit_semisimple_spec(s),
            Fixture::Graded(g) => json::emit_graded_algebra(g),
            Fixture::Hma(h) => json::emit_hma(h),
        }
    }

    /// The module algebra described by the fixture (constructed for specs
    /// and graded algebras).
    pub fn to_hma(&self) -> Result<HModuleAlgebra> {
        match self {
            Fixture::Spec(s) => build_semisimple(s),
            Fixture::Graded(g) => build_nilpotent_extension(g),
            Fixture::Hma(h) => Ok(h.clone()),
        }
    }
}

fn mat(f: CyclotomicField, rows: &[&[CycNum]]) -> CMatrix {
    Matrix::from_rows(f, rows.iter().map(|r| r.to_vec()).collect()).expect("rectangular")
}

fn diag(f: CyclotomicField, entries: &[CycNum]) -> CMatrix {
    let mut a = Matrix::zeros(f, entries.len(), entries.len());
    for (i, x) in entries.iter().enumerate() {
        a.set(i, i, x.clone());
    }
    a
}

/// span{1, w} with w² = 0, c w = −w, v w = 1 (m = 2).
pub fn sweedler_two_dim() -> HModuleAlgebra {
    let f = CyclotomicField::new(2).expect("valid conductor");
    let alg = FinDimAlgebra::from_fn(f, 2, |i, j| {
        let mut v = vec![f.zero(); 2];
        if i == 0 || j == 0 {
            v[i + j] = f.one();
        }
        v
    })
    .expect("associative");
    let c = diag(f, &[f.one(), f.int(-1)]);
    let v = mat(f, &[&[f.zero(), f.one()], &[f.zero(), f.zero()]]);
    HModuleAlgebra::new(alg, c, v).expect("shapes match")
}

fn ss(m: u32, k: usize, t: usize, p: CMatrix, q: CMatrix) -> Fixture {
    Fixture::Spec(SemisimpleSpec::new(m, k, t, p, q))
}

fn graded(b: FinDimAlgebra, degrees: Vec<usize>) -> Fixture {
    let m = b.field().conductor();
    Fixture::Graded(NilpotentExtensionSpec::new(m, b, degrees).expect("graded-simple"))
}

pub fn corpus() -> Vec<NamedFixture> {
    let f2 = CyclotomicField::new(2).expect("valid conductor");
    let f3 = CyclotomicField::new(3).expect("valid conductor");
    let f4 = CyclotomicField::new(4).expect("valid conductor");
    let (o, z) = (f2.one(), f2.zero());
    let n = |x: i64| f2.int(x);
    let e2 = Matrix::identity(f2, 2);
    let sign = diag(f2, &[o.clone(), n(-1)]);
    let nil2 = mat(f2, &[&[z.clone(), o.clone()], &[z.clone(), z.clone()]]);
    let one1 = Matrix::identity(f2, 1);
    let scalar1 = |a: i64| Matrix::scalar(f2, 1, &n(a));
    let ff = FinDimAlgebra::direct_sum(&[&FinDimAlgebra::ground_field(f2), &FinDimAlgebra::ground_field(f2)])
        .expect("nonempty");
    let m2 = FinDimAlgebra::matrix_algebra(f2, 2);
    let m2m2 = FinDimAlgebra::direct_sum(&[&m2, &m2]).expect("nonempty");
    let fx = |name, description, simple, fixture| NamedFixture { name, description, simple, fixture };
    let (b22, d22) = elementary_grading(f2, &[0, 1]);
    let (b32, d32) = elementary_grading(f3, &[0, 1]);
    vec![
        fx("m2_trivial", "M2 with ca = a, va = 0", true, ss(2, 2, 1, Matrix::zeros(f2, 2, 2), e2.clone())),
        fx("m2_graded", "M2 with ca = (-1)^i a for the diagonal/antidiagonal grading, va = 0", true,
            ss(2, 2, 1, Matrix::zeros(f2, 2, 2), sign.clone())),
        fx("sweedler_p_gamma3", "M2 with the same grading and va = Pa - (ca)P, P = [[0,1],[3,0]]", true,
            ss(2, 2, 1, mat(f2, &[&[z.clone(), o.clone()], &[n(3), z.clone()]]), sign)),
        fx("ff_alpha_1", "F+F, c(a,b) = (b,a), v(a,b) = (Pa-bP, aP-Pb), P = 1", true, ss(2, 1, 2, scalar1(1), one1.clone())),
        fx("ff_alpha_neg1", "F+F with swapping c, P = -1", true, ss(2, 1, 2, scalar1(-1), one1.clone())),
        fx("ff_alpha_2", "F+F with swapping c, P = 2", true, ss(2, 1, 2, scalar1(2), one1)),
        fx("m2m2_diag_1", "M2+M2 with swapping c, P = diag(1,-1)", true,
            ss(2, 2, 2, diag(f2, &[o.clone(), n(-1)]), e2.clone())),
        fx("m2m2_diag_neg1", "M2+M2 with swapping c, P = diag(-1,1)", true,
            ss(2, 2, 2, diag(f2, &[n(-1), o.clone()]), e2.clone())),
        fx("m2m2_diag_2", "M2+M2 with swapping c, P = diag(2,-2)", true,
            ss(2, 2, 2, diag(f2, &[n(2), n(-2)]), e2.clone())),
        fx("m2m2_scalar_1", "M2+M2 with swapping c, P = E", true, ss(2, 2, 2, e2.clone(), e2.clone())),
        fx("m2m2_nilpotent", "M2+M2 with swapping c, P = [[0,1],[0,0]]", true, ss(2, 2, 2, nil2, e2)),
        fx("sweedler2dim", "span{1,w}, w^2 = 0, cw = -w, vw = 1", true, Fixture::Hma(sweedler_two_dim())),
        fx("m3_k1_t3_alpha2", "F+F+F with cyclic c, P = 2 (m = 3)", true,
            ss(3, 1, 3, Matrix::scalar(f3, 1, &f3.int(2)), Matrix::identity(f3, 1))),
        fx("m3_k2_t1_nilpotent", "M2 with Q = diag(1, zeta), P = e12 (m = 3)", true,
            ss(3, 2, 1, mat(f3, &[&[f3.zero(), f3.one()], &[f3.zero(), f3.zero()]]), diag(f3, &[f3.one(), f3.zeta()]))),
        fx("m4_k2_t2_nilpotent", "M2+M2 with Q = diag(1,-1), P = e12 (m = 4)", true,
            ss(4, 2, 2, mat(f4, &[&[f4.zero(), f4.one()], &[f4.zero(), f4.zero()]]), diag(f4, &[f4.one(), f4.int(-1)]))),
        fx("b_ground_m2", "F, trivially graded (m = 2)", true, graded(FinDimAlgebra::ground_field(f2), vec![0])),
        fx("b_ground_m3", "F, trivially graded (m = 3)", true, graded(FinDimAlgebra::ground_field(f3), vec![0])),
        fx("b_m2_elementary_m2", "M2 with elementary grading (0,1) (m = 2)", true, graded(b22, d22)),
        fx("b_m2_elementary_m3", "M2 with elementary grading (0,1) (m = 3)", true, graded(b32, d32)),
        fx("ff_trivial", "F+F with trivial action (reducible)", false, Fixture::Hma(HModuleAlgebra::trivial(ff))),
        fx("m2m2_trivial", "M2+M2 with trivial action (reducible)", false, Fixture::Hma(HModuleAlgebra::trivial(m2m2))),
    ]
}

/// Shape of the P matrix in [`grid_spec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridShape {
    /// P a weighted block-cyclic shift, every block with the same weight
    /// product, so P^m is a nonzero scalar.
    Cyclic,
    /// P a weighted shift on chains of length ≤ m, so P^m = 0.
    Nilpotent,
}

/// A valid spec with Q = diag(ζ^{−t·i}) and random integer weights in P.
///
/// With s = m/t, P may only have entries (i, j) with i − j ≡ 1 (mod s).
/// [`GridShape::Cyclic`] needs s | k and returns `None` otherwise.
pub fn grid_spec(m: u32, k: usize, t: usize, shape: GridShape, seed: u64) -> Option<SemisimpleSpec> {
    if k == 0 || t == 0 || m as usize % t != 0 {
        return None;
    }
    let f = CyclotomicField::new(m).ok()?;
    let s = m as usize / t;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weight = |rng: &mut ChaCha8Rng| {
        let w: i64 = rng.gen_range(1..=4);
        if rng.gen_bool(0.5) { -w } else { w }
    };
    let q = diag(f, &(0..k).map(|i| f.zeta_power(-((t * i) as i64))).collect::<Vec<_>>());
    let mut p = Matrix::zeros(f, k, k);
    match shape {
        GridShape::Cyclic => {
            if k % s != 0 {
                return None;
            }
            let gamma = f.int(weight(&mut rng));
            for block in 0..k / s {
                let base = block * s;
                let mut prod = f.one();
                for r in 0..s {
                    let w = if r + 1 == s { &gamma * &prod.inv().ok()? } else { f.int(weight(&mut rng)) };
                    prod = &prod * &w;
                    p.set(base + (r + 1) % s, base + r, w);
                }
            }
        }
        GridShape::Nilpotent => {
            let chain = (m as usize).min(k);
            for i in 0..k.saturating_sub(1) {
                if (i + 1) % chain != 0 {
                    p.set(i + 1, i, f.int(weight(&mut rng)));
                }
            }
        }
    }
    Some(SemisimpleSpec::new(m, k, t, p, q))
}

pub fn by_name(name: &str) -> Option<NamedFixture> {
    corpus().into_iter().find(|f| f.name == name)
}
