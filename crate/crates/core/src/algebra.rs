//! Finite-dimensional associative algebras over Q(ζ_m) given by structure
//! constants, with subspaces, ideals, the Jacobson radical and Z_m-gradings.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::{CycNum, CyclotomicField};
use crate::error::{Error, Result};
use crate::linalg::{unit_vec, vec_add, vec_scale, CMatrix, Echelon, Matrix};

/// Dimensions up to which associativity is checked on every basis triple.
pub const EXHAUSTIVE_ASSOC_DIM: usize = 12;
/// Number of random basis triples checked above that dimension.
pub const SAMPLED_ASSOC_TRIPLES: usize = 200;

type Sparse = Vec<(usize, CycNum)>;

#[derive(Clone, Debug)]
pub struct FinDimAlgebra {
    field: CyclotomicField,
    dim: usize,
    /// `table[i*dim + j]` = nonzero coordinates of e_i e_j.
    table: Vec<Sparse>,
    unit: Option<Vec<CycNum>>,
}

impl PartialEq for FinDimAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.field == other.field && self.table == other.table && self.unit == other.unit
    }
}

impl FinDimAlgebra {
    /// Validates shape and associativity; looks for a unit when none is given.
    pub fn from_structure_constants(
        field: CyclotomicField,
        dim: usize,
        mult: Vec<Vec<Vec<CycNum>>>,
        unit: Option<Vec<CycNum>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch("algebra dimension must be positive".into()));
        }
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::DimensionMismatch(format!("structure constants must have shape {dim}x{dim}x{dim}")));
        }
        for x in mult.iter().flatten().flatten() {
            if x.conductor() != field.conductor() {
                return Err(Error::ConductorMismatch(field.conductor(), x.conductor()));
            }
        }
        let table = mult
            .into_iter()
            .flatten()
            .map(|v| v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        Self::from_table(field, dim, table, unit)
    }

    fn from_table(field: CyclotomicField, dim: usize, table: Vec<Sparse>, unit: Option<Vec<CycNum>>) -> Result<Self> {
        let mut a = FinDimAlgebra { field, dim, table, unit: None };
        a.check_associativity()?;
        match unit {
            Some(u) => {
                if u.len() != dim {
                    return Err(Error::DimensionMismatch(format!("unit has {} coordinates, expected {dim}", u.len())));
                }
                if !a.is_unit(&u) {
                    return Err(Error::Structure("declared unit is not a two-sided identity".into()));
                }
                a.unit = Some(u);
            }
            None => a.unit = a.find_unit(),
        }
        Ok(a)
    }

    /// Builds an algebra from a function giving e_i e_j, skipping validation.
    /// Callers use it for constructions whose associativity is re-checked.
    pub(crate) fn from_fn_unchecked(
        field: CyclotomicField,
        dim: usize,
        mut prod: impl FnMut(usize, usize) -> Vec<CycNum>,
    ) -> Self {
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = prod(i, j);
                table.push(v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect());
            }
        }
        let mut a = FinDimAlgebra { field, dim, table, unit: None };
        a.unit = a.find_unit();
        a
    }

    /// Like [`Self::from_fn_unchecked`] followed by full validation.
    pub fn from_fn(field: CyclotomicField, dim: usize, prod: impl FnMut(usize, usize) -> Vec<CycNum>) -> Result<Self> {
        let a = Self::from_fn_unchecked(field, dim, prod);
        a.check_associativity()?;
        Ok(a)
    }

    /// The full matrix algebra M_k with basis e_ij at index i*k + j.
    pub fn matrix_algebra(field: CyclotomicField, k: usize) -> Self {
        Self::from_fn_unchecked(field, k * k, |a, b| {
            let (i, j) = (a / k, a % k);
            let (l, n) = (b / k, b % k);
            let mut v = vec![field.zero(); k * k];
            if j == l {
                v[i * k + n] = field.one();
            }
            v
        })
    }

    /// The one-dimensional algebra F.
    pub fn ground_field(field: CyclotomicField) -> Self {
        Self::matrix_algebra(field, 1)
    }

    /// Direct product of algebras, blocks in order.
    pub fn direct_sum(parts: &[&FinDimAlgebra]) -> Result<Self> {
        let field = parts.first().ok_or_else(|| Error::InvalidArgument("empty direct sum".into()))?.field;
        let offsets: Vec<usize> = parts.iter().scan(0, |acc, p| { let o = *acc; *acc += p.dim; Some(o) }).collect();
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let locate = |x: usize| {
            let b = offsets.iter().rposition(|&o| o <= x).unwrap();
            (b, x - offsets[b])
        };
        Ok(Self::from_fn_unchecked(field, dim, |x, y| {
            let (bx, ix) = locate(x);
            let (by, iy) = locate(y);
            let mut v = vec![field.zero(); dim];
            if bx == by {
                for (k, c) in parts[bx].basis_product(ix, iy) {
                    v[offsets[bx] + k] = c.clone();
                }
            }
            v
        }))
    }

    pub fn field(&self) -> CyclotomicField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&[CycNum]> {
        self.unit.as_deref()
    }

    pub fn zero_vec(&self) -> Vec<CycNum> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<CycNum> {
        unit_vec(&self.field, self.dim, i)
    }

    /// Nonzero coordinates of e_i e_j.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, CycNum)] {
        &self.table[i * self.dim + j]
    }

    /// Dense structure constants: `mult[i][j]` = coordinates of e_i e_j.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<CycNum>>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let mut v = self.zero_vec();
                        for (k, c) in self.basis_product(i, j) {
                            v[*k] = c.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    pub fn mul(&self, x: &[CycNum], y: &[CycNum]) -> Vec<CycNum> {
        assert!(x.len() == self.dim && y.len() == self.dim, "vector length does not match algebra dimension");
        let mut out = self.zero_vec();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.basis_product(i, j) {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    /// Matrix of x ↦ a·x acting on column vectors.
    pub fn left_mult_operator(&self, a: &[CycNum]) -> CMatrix {
        let cols: Vec<Vec<CycNum>> = (0..self.dim).map(|j| self.mul(a, &self.basis_vec(j))).collect();
        Matrix::from_cols(self.field, self.dim, &cols)
    }

    /// Matrix of x ↦ x·a.
    pub fn right_mult_operator(&self, a: &[CycNum]) -> CMatrix {
        let cols: Vec<Vec<CycNum>> = (0..self.dim).map(|j| self.mul(&self.basis_vec(j), a)).collect();
        Matrix::from_cols(self.field, self.dim, &cols)
    }

    fn assoc_fails(&self, i: usize, j: usize, k: usize) -> bool {
        let (ei, ej, ek) = (self.basis_vec(i), self.basis_vec(j), self.basis_vec(k));
        self.mul(&self.mul(&ei, &ej), &ek) != self.mul(&ei, &self.mul(&ej, &ek))
    }

    /// Exhaustive up to [`EXHAUSTIVE_ASSOC_DIM`], sampled above.
    pub fn check_associativity(&self) -> Result<()> {
        let d = self.dim;
        if d <= EXHAUSTIVE_ASSOC_DIM {
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        if self.assoc_fails(i, j, k) {
                            return Err(Error::NonAssociative(i, j, k));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xA550C);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let (i, j, k) = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
                if self.assoc_fails(i, j, k) {
                    return Err(Error::NonAssociative(i, j, k));
                }
            }
        }
        Ok(())
    }

    /// Exhaustive associativity regardless of dimension.
    pub fn check_associativity_exhaustive(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let eij = self.mul(&self.basis_vec(i), &self.basis_vec(j));
                for k in 0..d {
                    let l = self.mul(&eij, &self.basis_vec(k));
                    let r = self.mul(&self.basis_vec(i), &self.mul(&self.basis_vec(j), &self.basis_vec(k)));
                    if l != r {
                        return Err(Error::NonAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_unit(&self, u: &[CycNum]) -> bool {
        (0..self.dim).all(|j| {
            let e = self.basis_vec(j);
            self.mul(u, &e) == e && self.mul(&e, u) == e
        })
    }

    /// Solves the linear system u·e_j = e_j = e_j·u.
    pub fn find_unit(&self) -> Option<Vec<CycNum>> {
        let d = self.dim;
        let f = self.field;
        let mut m = Matrix::zeros(f, 2 * d * d, d);
        let mut rhs = vec![f.zero(); 2 * d * d];
        for i in 0..d {
            for j in 0..d {
                // coordinate k of u e_j = Σ_i u_i (e_i e_j)_k
                for (k, c) in self.basis_product(i, j) {
                    m.set(j * d + k, i, c.clone());
                }
                for (k, c) in self.basis_product(j, i) {
                    m.set(d * d + j * d + k, i, c.clone());
                }
            }
        }
        for j in 0..d {
            rhs[j * d + j] = f.one();
            rhs[d * d + j * d + j] = f.one();
        }
        let u = m.solve(&rhs)?;
        debug_assert!(self.is_unit(&u));
        Some(u)
    }

    /// Subspace spanned by the given vectors.
    pub fn span(&self, vectors: &[Vec<CycNum>]) -> Subspace {
        Subspace::span(self.field, self.dim, vectors)
    }

    pub fn whole(&self) -> Subspace {
        let basis: Vec<_> = (0..self.dim).map(|i| self.basis_vec(i)).collect();
        self.span(&basis)
    }

    /// Span of all products x·y with x ∈ s, y ∈ t.
    pub fn product_space(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut e = Echelon::new(self.field, self.dim);
        for x in s.basis() {
            for y in t.basis() {
                e.insert(&self.mul(&x, &y));
                if e.is_full() {
                    break;
                }
            }
        }
        Subspace { echelon: e }
    }

    /// Smallest subspace containing `s` that is closed under left and right
    /// multiplication by A and under every operator in `extra_ops`.
    pub fn ideal_generated_by(&self, s: &Subspace, extra_ops: &[CMatrix]) -> Subspace {
        let mut e = Echelon::new(self.field, self.dim);
        let mut queue: Vec<Vec<CycNum>> = Vec::new();
        for x in s.basis() {
            if e.insert(&x) {
                queue.push(x);
            }
        }
        while let Some(x) = queue.pop() {
            if e.is_full() {
                break;
            }
            let mut images = Vec::with_capacity(2 * self.dim + extra_ops.len());
            for i in 0..self.dim {
                let ei = self.basis_vec(i);
                images.push(self.mul(&ei, &x));
                images.push(self.mul(&x, &ei));
            }
            for op in extra_ops {
                images.push(op.mul_vec(&x));
            }
            for y in images {
                if e.insert(&y) {
                    queue.push(y);
                }
            }
        }
        Subspace { echelon: e }
    }

    /// The subalgebra spanned by `s` (which must be closed under products),
    /// in the basis [`Subspace::basis`].
    pub fn subalgebra(&self, s: &Subspace) -> Result<FinDimAlgebra> {
        let basis = s.basis();
        let n = basis.len();
        if n == 0 {
            return Err(Error::Structure("zero subspace is not an algebra".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for x in &basis {
            for y in &basis {
                let p = self.mul(x, y);
                let coords = s
                    .coordinates(&p)
                    .ok_or_else(|| Error::Structure("subspace is not closed under multiplication".into()))?;
                table.push(coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        let unit = self
            .unit
            .as_ref()
            .and_then(|u| s.coordinates(u));
        let mut b = FinDimAlgebra { field: self.field, dim: n, table, unit: None };
        b.unit = unit.filter(|u| b.is_unit(u)).or_else(|| b.find_unit());
        Ok(b)
    }

    /// A/I for an ideal I, with basis the standard vectors at the non-pivot
    /// columns of I. Returns the quotient and the projection matrix.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(FinDimAlgebra, CMatrix)> {
        let piv = ideal.echelon.pivots();
        let free: Vec<usize> = (0..self.dim).filter(|c| !piv.contains(c)).collect();
        let n = free.len();
        if n == 0 {
            return Err(Error::Structure("quotient by the whole algebra is zero".into()));
        }
        let project = |x: &[CycNum]| -> Vec<CycNum> {
            let r = ideal.echelon.reduce(x);
            free.iter().map(|&c| r[c].clone()).collect()
        };
        let mut table = Vec::with_capacity(n * n);
        for &a in &free {
            for &b in &free {
                let p = project(&self.mul(&self.basis_vec(a), &self.basis_vec(b)));
                table.push(p.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        let cols: Vec<Vec<CycNum>> = (0..self.dim).map(|j| project(&self.basis_vec(j))).collect();
        let proj = Matrix::from_cols(self.field, n, &cols);
        let mut q = FinDimAlgebra { field: self.field, dim: n, table, unit: None };
        q.unit = q.find_unit();
        Ok((q, proj))
    }

    /// Trace of left multiplication by e_i on the unital hull A ⊕ F·1.
    fn hull_trace_basis(&self) -> Vec<CycNum> {
        (0..self.dim)
            .map(|i| {
                let mut t = self.field.zero();
                for j in 0..self.dim {
                    for (k, c) in self.basis_product(i, j) {
                        if *k == j {
                            t = &t + c;
                        }
                    }
                }
                t
            })
            .collect()
    }

    /// J(A) as the kernel of the trace form Tr(L_{xy}) on the unital hull.
    pub fn jacobson_radical(&self) -> Subspace {
        let d = self.dim;
        let tr = self.hull_trace_basis();
        let f = self.field;
        let dot = |v: &[(usize, CycNum)]| v.iter().fold(f.zero(), |acc, (k, c)| &acc + &(c * &tr[*k]));
        // Row y, column x: Tr(L_{x y}); the last row is y = 1 with Tr(L_x).
        let mut g = Matrix::zeros(f, d + 1, d);
        for y in 0..d {
            for x in 0..d {
                g.set(y, x, dot(self.basis_product(x, y)));
            }
        }
        for x in 0..d {
            g.set(d, x, tr[x].clone());
        }
        self.span(&g.nullspace())
    }

    /// Smallest ℓ with I^ℓ = 0, if I is nilpotent.
    pub fn nilpotency_index(&self, ideal: &Subspace) -> Option<usize> {
        let mut power = ideal.clone();
        let mut l = 1;
        while !power.is_zero() {
            let next = self.product_space(&power, ideal);
            if next == power {
                return None;
            }
            power = next;
            l += 1;
        }
        Some(l)
    }

    /// Eigenspace decomposition of an operator of order dividing m.
    pub fn grading_from_c(&self, c_op: &CMatrix, m: u32) -> Result<GradingDecomposition> {
        let f = self.field;
        if c_op.nrows() != self.dim || !c_op.is_square() {
            return Err(Error::DimensionMismatch("c operator shape does not match algebra".into()));
        }
        if f.conductor() % m != 0 {
            return Err(Error::InvalidArgument(format!("grading modulus {m} does not divide conductor {}", f.conductor())));
        }
        if !c_op.pow(m as u64).is_identity() {
            return Err(Error::Structure(format!("c operator does not satisfy c^{m} = 1")));
        }
        let step = (f.conductor() / m) as i64;
        let components: Vec<Subspace> = (0..m as i64)
            .map(|i| {
                let shifted = c_op.sub(&Matrix::scalar(f, self.dim, &f.zeta_power(i * step)));
                self.span(&shifted.nullspace())
            })
            .collect();
        let found: usize = components.iter().map(Subspace::dim).sum();
        if found != self.dim {
            return Err(Error::NotDiagonalizable { found, dim: self.dim });
        }
        let g = GradingDecomposition { m, components };
        g.check_multiplicative(self)?;
        Ok(g)
    }

    /// Projection onto the ζ^i-eigenspace: (1/m) Σ_j ζ^{-ij} C^j.
    pub fn grading_projections(&self, c_op: &CMatrix, m: u32) -> Vec<CMatrix> {
        let f = self.field;
        let step = (f.conductor() / m) as i64;
        let pows: Vec<CMatrix> = (0..m as u64).map(|j| c_op.pow(j)).collect();
        let inv_m = f.ratio(1, m as i64);
        (0..m as i64)
            .map(|i| {
                let mut acc = Matrix::zeros(f, self.dim, self.dim);
                for (j, p) in pows.iter().enumerate() {
                    acc = acc.add(&p.scale(&f.zeta_power(-i * j as i64 * step)));
                }
                acc.scale(&inv_m)
            })
            .collect()
    }
}

/// A subspace of F^dim in canonical reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    echelon: Echelon<CyclotomicField>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim() == other.ambient_dim() && self.basis() == other.basis()
    }
}

impl Subspace {
    pub fn span(field: CyclotomicField, ambient: usize, vectors: &[Vec<CycNum>]) -> Self {
        let mut e = Echelon::new(field, ambient);
        for v in vectors {
            e.insert(v);
        }
        Subspace { echelon: e }
    }

    pub fn zero(field: CyclotomicField, ambient: usize) -> Self {
        Subspace { echelon: Echelon::new(field, ambient) }
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.echelon.ambient_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.echelon.is_full()
    }

    pub fn basis(&self) -> Vec<Vec<CycNum>> {
        self.echelon.basis()
    }

    pub fn contains(&self, v: &[CycNum]) -> bool {
        self.echelon.contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    /// Coordinates in [`Self::basis`], if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[CycNum]) -> Option<Vec<CycNum>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.echelon.pivots().iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut e = self.echelon.clone();
        for v in other.basis() {
            e.insert(&v);
        }
        Subspace { echelon: e }
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let f = *self.echelon.field();
        let a = self.basis();
        let b = other.basis();
        if a.is_empty() || b.is_empty() {
            return Subspace::zero(f, self.ambient_dim());
        }
        // Σ x_i a_i − Σ y_j b_j = 0
        let mut cols = a.clone();
        cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
        let m = Matrix::from_cols(f, self.ambient_dim(), &cols);
        let vecs: Vec<Vec<CycNum>> = m
            .nullspace()
            .into_iter()
            .map(|coef| {
                let mut v = vec![f.zero(); self.ambient_dim()];
                for (x, ai) in coef.iter().zip(&a) {
                    v = vec_add(&f, &v, &vec_scale(&f, ai, x));
                }
                v
            })
            .collect();
        Subspace::span(f, self.ambient_dim(), &vecs)
    }

    /// Image under a linear map.
    pub fn image(&self, op: &CMatrix) -> Subspace {
        let f = *self.echelon.field();
        let vecs: Vec<_> = self.basis().iter().map(|v| op.mul_vec(v)).collect();
        Subspace::span(f, op.nrows(), &vecs)
    }

    pub fn reduce(&self, v: &[CycNum]) -> Vec<CycNum> {
        self.echelon.reduce(v)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.echelon.pivots()
    }
}

/// Decomposition A = ⊕ A^{(i)} into eigenspaces of the c-action.
#[derive(Clone, Debug)]
pub struct GradingDecomposition {
    m: u32,
    components: Vec<Subspace>,
}

impl GradingDecomposition {
    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn components(&self) -> &[Subspace] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Subspace {
        &self.components[i % self.m as usize]
    }

    /// Homogeneous basis with degrees, components in order.
    pub fn homogeneous_basis(&self) -> Vec<(Vec<CycNum>, usize)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.basis().into_iter().map(move |v| (v, i)))
            .collect()
    }

    /// Degree of a nonzero homogeneous vector.
    pub fn degree_of(&self, v: &[CycNum]) -> Option<usize> {
        self.components.iter().position(|s| s.contains(v))
    }

    fn check_multiplicative(&self, a: &FinDimAlgebra) -> Result<()> {
        let m = self.m as usize;
        for (i, si) in self.components.iter().enumerate() {
            for (k, sk) in self.components.iter().enumerate() {
                let target = &self.components[(i + k) % m];
                for x in si.basis() {
                    for y in sk.basis() {
                        if !target.contains(&a.mul(&x, &y)) {
                            return Err(Error::Structure(format!(
                                "product of degrees {i} and {k} leaves component {}",
                                (i + k) % m
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
