//! The Taft Hopf algebra H_{m²}(ζ) with generators c, v subject to
//! c^m = 1, v^m = 0, vc = ζcv.
//!
//! Elements are coordinate vectors over the basis c^i v^k, stored at index
//! `i*m + k`. Coproducts of basis elements are obtained by multiplying the
//! generator coproducts inside H ⊗ H, so the generator images are the only
//! place the comultiplication is specified.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycNum, CyclotomicField};
use crate::error::{Error, Result};

/// Element of H_{m²}(ζ).
#[derive(Clone, PartialEq, Eq)]
pub struct HopfElement {
    m: u32,
    coords: Vec<CycNum>,
}

/// Element of H^{⊗n}, keyed by tuples of basis indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    m: u32,
    degree: usize,
    coords: BTreeMap<Vec<usize>, CycNum>,
}

#[derive(Clone, Debug)]
pub struct TaftAlgebra {
    m: u32,
    field: CyclotomicField,
    zeta_pows: Vec<CycNum>,
    delta_c: TensorElement,
    delta_v: TensorElement,
    /// Δ of every basis element, indexed like the basis.
    delta_basis: Vec<TensorElement>,
}

impl HopfElement {
    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn coords(&self) -> &[CycNum] {
        &self.coords
    }

    /// Coefficient of c^i v^k.
    pub fn coeff(&self, i: usize, k: usize) -> &CycNum {
        &self.coords[i * self.m as usize + k]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(CycNum::is_zero)
    }

    /// Nonzero terms as ((i, k), coefficient).
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &CycNum)> {
        let m = self.m as usize;
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(idx, c)| ((idx / m, idx % m), c))
    }

    pub fn add(&self, other: &HopfElement) -> HopfElement {
        assert_eq!(self.m, other.m);
        HopfElement { m: self.m, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &HopfElement) -> HopfElement {
        assert_eq!(self.m, other.m);
        HopfElement { m: self.m, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &CycNum) -> HopfElement {
        HopfElement { m: self.m, coords: self.coords.iter().map(|a| a * s).collect() }
    }
}

impl fmt::Display for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, k), c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})·c^{i}v^{k}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfElement[m={}]({self})", self.m)
    }
}

impl TensorElement {
    pub fn zero(m: u32, degree: usize) -> Self {
        TensorElement { m, degree, coords: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, CycNum> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Adds `coef` to the coordinate of the basis tuple `key`.
    pub fn add_term(&mut self, key: Vec<usize>, coef: &CycNum) {
        debug_assert_eq!(key.len(), self.degree);
        if coef.is_zero() {
            return;
        }
        match self.coords.get_mut(&key) {
            Some(cur) => {
                let s = &*cur + coef;
                if s.is_zero() {
                    self.coords.remove(&key);
                } else {
                    *cur = s;
                }
            }
            None => {
                self.coords.insert(key, coef.clone());
            }
        }
    }

    /// Coefficient of the tuple of basis pairs.
    pub fn coeff(&self, pairs: &[(usize, usize)]) -> Option<&CycNum> {
        let key: Vec<usize> = pairs.iter().map(|&(i, k)| i * self.m as usize + k).collect();
        self.coords.get(&key)
    }
}

impl TaftAlgebra {
    pub fn new(m: u32) -> Result<Self> {
        let field = CyclotomicField::new(m)?;
        let md = m as usize;
        let c = md; // index of c^1 v^0
        let v = 1; // index of c^0 v^1
        let mut delta_c = TensorElement::zero(m, 2);
        delta_c.add_term(vec![c, c], &field.one());
        let mut delta_v = TensorElement::zero(m, 2);
        delta_v.add_term(vec![c, v], &field.one());
        delta_v.add_term(vec![v, 0], &field.one());
        Ok(Self::with_generator_coproducts(m, delta_c, delta_v))
    }

    /// Builds the algebra with arbitrary generator coproducts. Used to test
    /// that axiom verification detects corrupted structure maps.
    pub fn with_generator_coproducts(m: u32, delta_c: TensorElement, delta_v: TensorElement) -> Self {
        let field = CyclotomicField::new(m).expect("valid conductor");
        let zeta_pows = (0..m as i64).map(|e| field.zeta_power(e)).collect();
        let mut h = TaftAlgebra {
            m,
            field,
            zeta_pows,
            delta_c,
            delta_v,
            delta_basis: Vec::new(),
        };
        let md = m as usize;
        let mut delta_basis = Vec::with_capacity(md * md);
        let mut one = TensorElement::zero(m, 2);
        one.add_term(vec![0, 0], &field.one());
        for i in 0..md {
            for k in 0..md {
                let mut acc = one.clone();
                for _ in 0..i {
                    acc = h.tensor_mul(&acc, &h.delta_c);
                }
                for _ in 0..k {
                    acc = h.tensor_mul(&acc, &h.delta_v);
                }
                delta_basis.push(acc);
            }
        }
        h.delta_basis = delta_basis;
        h
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn field(&self) -> CyclotomicField {
        self.field
    }

    pub fn zeta(&self) -> &CycNum {
        &self.zeta_pows[1 % self.m as usize]
    }

    pub fn dim(&self) -> usize {
        (self.m * self.m) as usize
    }

    pub fn basis_index(&self, i: usize, k: usize) -> usize {
        (i % self.m as usize) * self.m as usize + k
    }

    pub fn zero(&self) -> HopfElement {
        HopfElement { m: self.m, coords: vec![self.field.zero(); self.dim()] }
    }

    /// c^i v^k; `i` is reduced mod m, and `k ≥ m` gives zero.
    pub fn basis(&self, i: usize, k: usize) -> HopfElement {
        let mut e = self.zero();
        if k < self.m as usize {
            e.coords[self.basis_index(i, k)] = self.field.one();
        }
        e
    }

    pub fn one(&self) -> HopfElement {
        self.basis(0, 0)
    }

    pub fn c(&self) -> HopfElement {
        self.basis(1, 0)
    }

    pub fn v(&self) -> HopfElement {
        self.basis(0, 1)
    }

    /// Element from ((i, k), coefficient) terms.
    pub fn element(&self, terms: &[((usize, usize), CycNum)]) -> Result<HopfElement> {
        let mut e = self.zero();
        let md = self.m as usize;
        for ((i, k), coef) in terms {
            if *i >= md || *k >= md {
                return Err(Error::InvalidArgument(format!("basis pair ({i}, {k}) out of range for m={md}")));
            }
            if coef.conductor() != self.m {
                return Err(Error::ConductorMismatch(self.m, coef.conductor()));
            }
            let idx = i * md + k;
            e.coords[idx] = &e.coords[idx] + coef;
        }
        Ok(e)
    }

    pub fn from_coords(&self, coords: Vec<CycNum>) -> Result<HopfElement> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("expected {} coordinates, got {}", self.dim(), coords.len())));
        }
        Ok(HopfElement { m: self.m, coords })
    }

    fn check_parent(&self, a: &HopfElement) -> Result<()> {
        if a.m != self.m {
            return Err(Error::ConductorMismatch(self.m, a.m));
        }
        Ok(())
    }

    /// (c^i v^k)(c^j v^l) = ζ^{kj} c^{i+j} v^{k+l}, as (ζ-exponent, index),
    /// or `None` when k + l ≥ m.
    pub fn basis_product(&self, a: usize, b: usize) -> Option<(usize, usize)> {
        let md = self.m as usize;
        let (i, k) = (a / md, a % md);
        let (j, l) = (b / md, b % md);
        if k + l >= md {
            return None;
        }
        Some(((k * j) % md, ((i + j) % md) * md + k + l))
    }

    pub fn product(&self, a: &HopfElement, b: &HopfElement) -> Result<HopfElement> {
        self.check_parent(a)?;
        self.check_parent(b)?;
        let mut out = self.zero();
        for (ia, ca) in a.coords.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (ib, cb) in b.coords.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                if let Some((z, idx)) = self.basis_product(ia, ib) {
                    let term = &(ca * cb) * &self.zeta_pows[z];
                    out.coords[idx] = &out.coords[idx] + &term;
                }
            }
        }
        Ok(out)
    }

    /// Factorwise product in H^{⊗n}.
    pub fn tensor_mul(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        assert_eq!(a.degree, b.degree, "tensor degree mismatch");
        let mut out = TensorElement::zero(self.m, a.degree);
        for (ka, ca) in &a.coords {
            'pairs: for (kb, cb) in &b.coords {
                let mut key = Vec::with_capacity(a.degree);
                let mut z = 0;
                for (&x, &y) in ka.iter().zip(kb) {
                    match self.basis_product(x, y) {
                        Some((e, idx)) => {
                            z += e;
                            key.push(idx);
                        }
                        None => continue 'pairs,
                    }
                }
                let coef = &(ca * cb) * &self.zeta_pows[z % self.m as usize];
                out.add_term(key, &coef);
            }
        }
        out
    }

    /// Δ of the basis element with the given index.
    pub fn coproduct_basis(&self, idx: usize) -> &TensorElement {
        &self.delta_basis[idx]
    }

    pub fn coproduct(&self, a: &HopfElement) -> Result<TensorElement> {
        self.check_parent(a)?;
        let mut out = TensorElement::zero(self.m, 2);
        for (idx, coef) in a.coords.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (key, c) in &self.delta_basis[idx].coords {
                out.add_term(key.clone(), &(coef * c));
            }
        }
        Ok(out)
    }

    fn counit_basis(&self, idx: usize) -> CycNum {
        if idx % self.m as usize == 0 {
            self.field.one()
        } else {
            self.field.zero()
        }
    }

    pub fn counit(&self, a: &HopfElement) -> Result<CycNum> {
        self.check_parent(a)?;
        let mut acc = self.field.zero();
        for (idx, c) in a.coords.iter().enumerate() {
            if idx % self.m as usize == 0 {
                acc = &acc + c;
            }
        }
        Ok(acc)
    }

    /// S(c^i v^k) = S(v)^k S(c)^i with S(c) = c^{m−1}, S(v) = −c^{m−1}v.
    fn antipode_basis(&self, idx: usize) -> HopfElement {
        let md = self.m as usize;
        let (i, k) = (idx / md, idx % md);
        let s_c = self.basis(md - 1, 0);
        let s_v = self.basis(md - 1, 1).scale(&self.field.int(-1));
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.product(&acc, &s_v).expect("same parent");
        }
        for _ in 0..i {
            acc = self.product(&acc, &s_c).expect("same parent");
        }
        acc
    }

    pub fn antipode(&self, a: &HopfElement) -> Result<HopfElement> {
        self.check_parent(a)?;
        let mut out = self.zero();
        for (idx, coef) in a.coords.iter().enumerate() {
            if !coef.is_zero() {
                out = out.add(&self.antipode_basis(idx).scale(coef));
            }
        }
        Ok(out)
    }

    fn basis_tensor_to_element(&self, key: &[usize]) -> HopfElement {
        let mut e = self.zero();
        e.coords[key[0]] = self.field.one();
        e
    }

    /// Applies Δ to factor `pos` of a tensor.
    fn coproduct_at(&self, t: &TensorElement, pos: usize) -> TensorElement {
        let mut out = TensorElement::zero(self.m, t.degree + 1);
        for (key, coef) in &t.coords {
            for (dk, dc) in &self.delta_basis[key[pos]].coords {
                let mut nk = Vec::with_capacity(key.len() + 1);
                nk.extend_from_slice(&key[..pos]);
                nk.extend_from_slice(dk);
                nk.extend_from_slice(&key[pos + 1..]);
                out.add_term(nk, &(coef * dc));
            }
        }
        out
    }

    /// Exhaustive check of the Hopf algebra axioms on the basis.
    pub fn verify_axioms(&self) -> AxiomReport {
        let mut report = AxiomReport { m: self.m, ..AxiomReport::default() };
        let n = self.dim();
        let basis: Vec<HopfElement> = (0..n).map(|i| {
            let mut e = self.zero();
            e.coords[i] = self.field.one();
            e
        }).collect();

        for (idx, b) in basis.iter().enumerate() {
            let d = &self.delta_basis[idx];
            if self.coproduct_at(d, 0) != self.coproduct_at(d, 1) {
                report.fail(Axiom::Coassociativity, format!("basis element {idx}"));
            }
            // (ε⊗id)Δ(b) and (id⊗ε)Δ(b)
            let mut left = self.zero();
            let mut right = self.zero();
            for (key, coef) in &d.coords {
                let e0 = self.counit_basis(key[0]);
                if !e0.is_zero() {
                    left.coords[key[1]] = &left.coords[key[1]] + &(coef * &e0);
                }
                let e1 = self.counit_basis(key[1]);
                if !e1.is_zero() {
                    right.coords[key[0]] = &right.coords[key[0]] + &(coef * &e1);
                }
            }
            if left != *b || right != *b {
                report.fail(Axiom::Counit, format!("basis element {idx}"));
            }
            // μ(S⊗id)Δ(b) = ε(b)1 = μ(id⊗S)Δ(b)
            let target = self.one().scale(&self.counit_basis(idx));
            let mut sl = self.zero();
            let mut sr = self.zero();
            for (key, coef) in &d.coords {
                let x = self.basis_tensor_to_element(&key[0..1]);
                let y = self.basis_tensor_to_element(&key[1..2]);
                let l = self.product(&self.antipode(&x).unwrap(), &y).unwrap();
                let r = self.product(&x, &self.antipode(&y).unwrap()).unwrap();
                sl = sl.add(&l.scale(coef));
                sr = sr.add(&r.scale(coef));
            }
            if sl != target || sr != target {
                report.fail(Axiom::Antipode, format!("basis element {idx}"));
            }
        }
        for (ia, a) in basis.iter().enumerate() {
            for (ib, b) in basis.iter().enumerate() {
                let ab = self.product(a, b).unwrap();
                let lhs = self.coproduct(&ab).unwrap();
                let rhs = self.tensor_mul(&self.delta_basis[ia], &self.delta_basis[ib]);
                if lhs != rhs {
                    report.fail(Axiom::Bialgebra, format!("basis pair ({ia}, {ib})"));
                }
            }
        }
        report
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Coassociativity,
    Counit,
    Antipode,
    Bialgebra,
}

/// Outcome of [`TaftAlgebra::verify_axioms`]: per-axiom failure witnesses.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub m: u32,
    pub failures: BTreeMap<String, Vec<String>>,
}

impl AxiomReport {
    fn fail(&mut self, axiom: Axiom, witness: String) {
        self.failures.entry(axiom_name(axiom).to_string()).or_default().push(witness);
    }

    pub fn passed(&self, axiom: Axiom) -> bool {
        !self.failures.contains_key(axiom_name(axiom))
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn axiom_name(a: Axiom) -> &'static str {
    match a {
        Axiom::Coassociativity => "coassociativity",
        Axiom::Counit => "counit",
        Axiom::Antipode => "antipode",
        Axiom::Bialgebra => "bialgebra",
    }
}

pub const AXIOMS: [Axiom; 4] = [Axiom::Coassociativity, Axiom::Counit, Axiom::Antipode, Axiom::Bialgebra];

#[derive(Serialize, Deserialize)]
struct TermRepr {
    c: usize,
    v: usize,
    coeff: CycNum,
}

#[derive(Serialize, Deserialize)]
struct HopfElementRepr {
    m: u32,
    terms: Vec<TermRepr>,
}

impl Serialize for HopfElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HopfElementRepr {
            m: self.m,
            terms: self.terms().map(|((c, v), coeff)| TermRepr { c, v, coeff: coeff.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HopfElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = HopfElementRepr::deserialize(d)?;
        let h = TaftAlgebra::new(repr.m).map_err(serde::de::Error::custom)?;
        let terms: Vec<_> = repr.terms.into_iter().map(|t| ((t.c, t.v), t.coeff)).collect();
        h.element(&terms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn relations() {
        for m in 2..=6u32 {
            let h = TaftAlgebra::new(m).unwrap();
            let md = m as usize;
            let vc = h.product(&h.v(), &h.c()).unwrap();
            assert_eq!(vc, h.basis(1, 1).scale(h.zeta()));
            assert_eq!(h.product(&h.basis(md - 1, 0), &h.c()).unwrap(), h.one());
            assert!(h.product(&h.basis(0, md - 1), &h.v()).unwrap().is_zero());
        }
    }

    #[test]
    fn coproduct_examples() {
        let h = TaftAlgebra::new(3).unwrap();
        let f = h.field();
        let dc = h.coproduct(&h.c()).unwrap();
        assert_eq!(dc.terms().len(), 1);
        assert!(dc.coeff(&[(1, 0), (1, 0)]).unwrap().is_one());
        let dv = h.coproduct(&h.v()).unwrap();
        assert_eq!(dv.terms().len(), 2);
        assert!(dv.coeff(&[(1, 0), (0, 1)]).unwrap().is_one());
        assert!(dv.coeff(&[(0, 1), (0, 0)]).unwrap().is_one());
        // Δ(v²) = c²⊗v² + (1+ζ) cv⊗v + v²⊗1
        let v2 = h.basis(0, 2);
        let d = h.coproduct(&v2).unwrap();
        assert_eq!(d.terms().len(), 3);
        assert!(d.coeff(&[(2, 0), (0, 2)]).unwrap().is_one());
        assert_eq!(d.coeff(&[(1, 1), (0, 1)]).unwrap(), &(&f.one() + h.zeta()));
        assert!(d.coeff(&[(0, 2), (0, 0)]).unwrap().is_one());
    }

    #[test]
    fn counit_and_antipode_examples() {
        let h = TaftAlgebra::new(4).unwrap();
        let f = h.field();
        assert!(h.counit(&h.c()).unwrap().is_one());
        assert!(h.counit(&h.v()).unwrap().is_zero());
        let x = h.element(&[((2, 0), f.int(3)), ((1, 1), f.int(5))]).unwrap();
        assert_eq!(h.counit(&x).unwrap(), f.int(3));
        assert_eq!(h.antipode(&h.c()).unwrap(), h.basis(3, 0));
        assert_eq!(h.antipode(&h.v()).unwrap(), h.basis(3, 1).scale(&f.int(-1)));
        // S(cv) = S(v)S(c) = −c^{-1} v c^{-1} = −ζ^{-1} c^{-2} v
        let scv = h.antipode(&h.basis(1, 1)).unwrap();
        assert_eq!(scv, h.basis(2, 1).scale(&-&f.zeta_power(-1)));
    }

    #[test]
    fn axioms_hold() {
        for m in 2..=6 {
            let report = TaftAlgebra::new(m).unwrap().verify_axioms();
            assert!(report.all_passed(), "m={m}: {:?}", report.failures);
        }
    }

    #[test]
    fn corrupted_coproduct_fails_bialgebra() {
        let m = 3;
        let good = TaftAlgebra::new(m).unwrap();
        let mut bad_v = TensorElement::zero(m, 2);
        bad_v.add_term(vec![1, 1], &good.field().one());
        let bad = TaftAlgebra::with_generator_coproducts(m, good.coproduct(&good.c()).unwrap(), bad_v);
        let report = bad.verify_axioms();
        assert!(!report.passed(Axiom::Bialgebra));
    }

    #[test]
    fn antipode_square_and_counit() {
        for m in 2..=6 {
            let h = TaftAlgebra::new(m).unwrap();
            let md = m as usize;
            for i in 0..md {
                for k in 0..md {
                    let b = h.basis(i, k);
                    let s2 = h.antipode(&h.antipode(&b).unwrap()).unwrap();
                    // S²(h) = c^{-1} h c, hence S²(c^i v^k) = ζ^k c^i v^k.
                    let conj = h.product(&h.product(&h.basis(md - 1, 0), &b).unwrap(), &h.c()).unwrap();
                    assert_eq!(s2, b.scale(&h.field().zeta_power(k as i64)));
                    assert_eq!(s2, conj, "m={m} i={i} k={k}");
                    assert_eq!(h.counit(&h.antipode(&b).unwrap()).unwrap(), h.counit(&b).unwrap());
                }
            }
        }
    }

    #[test]
    fn product_associative_exhaustive() {
        for m in 2..=4 {
            let h = TaftAlgebra::new(m).unwrap();
            let n = h.dim();
            let md = m as usize;
            let b = |idx: usize| h.basis(idx / md, idx % md);
            for x in 0..n {
                for y in 0..n {
                    let xy = h.product(&b(x), &b(y)).unwrap();
                    for z in 0..n {
                        let l = h.product(&xy, &b(z)).unwrap();
                        let r = h.product(&b(x), &h.product(&b(y), &b(z)).unwrap()).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    fn arb_element(m: u32) -> impl Strategy<Value = HopfElement> {
        let h = TaftAlgebra::new(m).unwrap();
        prop::collection::vec(-3i64..4, (m * m) as usize)
            .prop_map(move |cs| h.from_coords(cs.iter().map(|&c| h.field().int(c)).collect()).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn product_associative_random(
            (m, a, b, c) in prop::sample::select(vec![5u32, 6])
                .prop_flat_map(|m| (Just(m), arb_element(m), arb_element(m), arb_element(m)))
        ) {
            let h = TaftAlgebra::new(m).unwrap();
            let l = h.product(&h.product(&a, &b).unwrap(), &c).unwrap();
            let r = h.product(&a, &h.product(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn coproduct_is_multiplicative((m, a, b) in prop::sample::select(vec![2u32, 3, 4])
                .prop_flat_map(|m| (Just(m), arb_element(m), arb_element(m)))) {
            let h = TaftAlgebra::new(m).unwrap();
            let lhs = h.coproduct(&h.product(&a, &b).unwrap()).unwrap();
            let rhs = h.tensor_mul(&h.coproduct(&a).unwrap(), &h.coproduct(&b).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn json_round_trip() {
        let h = TaftAlgebra::new(3).unwrap();
        let f = h.field();
        let x = h.element(&[((1, 2), f.zeta()), ((0, 0), f.ratio(1, 2))]).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        let back: HopfElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<HopfElement>(r#"{"m":3,"terms":[{"c":3,"v":0,"coeff":{"m":3,"coeffs":["1","0"]}}]}"#).is_err());
    }
}
