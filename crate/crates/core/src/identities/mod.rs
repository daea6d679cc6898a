//! Multilinear polynomial H-identities: monomials x^{h₁}_{σ(1)}···x^{hₙ}_{σ(n)},
//! their evaluation on an H-module algebra, alternation, and codimensions.
//!
//! Variables and permutations are 0-based: `sigma[p]` is the variable in
//! position p. Hopf coefficients are basis pairs (i, k) for c^i v^k.

mod codim;
mod rank;

use std::collections::BTreeMap;

pub use codim::{
    codim_growth_report, codimension, codimension_with, CodimOptions, CodimResult, GrowthRow, RankMethod,
    DEFAULT_ROW_BUDGET,
};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::hmodule::HModuleAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HMonomial {
    sigma: Vec<usize>,
    hcoeffs: Vec<(usize, usize)>,
}

impl HMonomial {
    pub fn new(sigma: Vec<usize>, hcoeffs: Vec<(usize, usize)>) -> Result<Self> {
        let n = sigma.len();
        if hcoeffs.len() != n {
            return Err(Error::DimensionMismatch(format!("{} Hopf coefficients for degree {n}", hcoeffs.len())));
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidArgument(format!("{sigma:?} is not a permutation")));
            }
        }
        Ok(HMonomial { sigma, hcoeffs })
    }

    /// x₁¹ x₂¹ ··· xₙ¹.
    pub fn plain(n: usize) -> Self {
        HMonomial { sigma: (0..n).collect(), hcoeffs: vec![(0, 0); n] }
    }

    pub fn degree(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn hcoeffs(&self) -> &[(usize, usize)] {
        &self.hcoeffs
    }

    /// Renames variable x_i to x_{tau[i]}.
    fn rename(&self, tau: &[usize]) -> HMonomial {
        HMonomial { sigma: self.sigma.iter().map(|&s| tau[s]).collect(), hcoeffs: self.hcoeffs.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearHPoly {
    n: usize,
    terms: BTreeMap<HMonomial, CycNum>,
}

impl MultilinearHPoly {
    pub fn zero(n: usize) -> Self {
        MultilinearHPoly { n, terms: BTreeMap::new() }
    }

    pub fn monomial(mono: HMonomial, coeff: CycNum) -> Self {
        let mut p = Self::zero(mono.degree());
        p.add_term(mono, coeff).expect("degree matches");
        p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<HMonomial, CycNum> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: HMonomial, coeff: CycNum) -> Result<()> {
        if mono.degree() != self.n {
            return Err(Error::DimensionMismatch(format!("monomial of degree {} in a degree {} polynomial", mono.degree(), self.n)));
        }
        let sum = match self.terms.remove(&mono) {
            Some(c) => &c + &coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(mono, sum);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s).expect("same degree");
        }
        out
    }
}

/// Substitutes `args[i]` for x_i, applies the Hopf coefficients and
/// multiplies left to right.
pub fn evaluate(p: &MultilinearHPoly, hma: &HModuleAlgebra, args: &[Vec<CycNum>]) -> Result<Vec<CycNum>> {
    let n = p.degree();
    if args.len() != n {
        return Err(Error::DimensionMismatch(format!("{} arguments for a degree {n} polynomial", args.len())));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let a = hma.algebra();
    if let Some(bad) = args.iter().find(|x| x.len() != a.dim()) {
        return Err(Error::DimensionMismatch(format!("argument of length {}, algebra has dimension {}", bad.len(), a.dim())));
    }
    let m = hma.conductor() as usize;
    let mut total = a.zero_vec();
    for (mono, coeff) in &p.terms {
        let mut acc: Option<Vec<CycNum>> = None;
        for (&var, &(i, k)) in mono.sigma.iter().zip(&mono.hcoeffs) {
            if i >= m || k >= m {
                return Err(Error::InvalidArgument(format!("Hopf basis index c^{i} v^{k} out of range")));
            }
            let val = hma.act_monomial(i, k, &args[var]);
            acc = Some(match acc {
                None => val,
                Some(x) => a.mul(&x, &val),
            });
        }
        for (t, x) in total.iter_mut().zip(acc.expect("positive degree")) {
            *t = &*t + &(coeff * &x);
        }
    }
    Ok(total)
}

/// Σ_τ sign(τ)·τ(p) over permutations τ of the variables in `varset`.
pub fn alternate(p: &MultilinearHPoly, varset: &[usize]) -> Result<MultilinearHPoly> {
    let n = p.degree();
    let mut sorted = varset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != varset.len() || sorted.iter().any(|&v| v >= n) {
        return Err(Error::InvalidArgument(format!("{varset:?} is not a set of variables of a degree {n} polynomial")));
    }
    let mut out = MultilinearHPoly::zero(n);
    let mut perm: Vec<usize> = (0..sorted.len()).collect();
    loop {
        let mut tau: Vec<usize> = (0..n).collect();
        for (from, &to) in sorted.iter().zip(&perm) {
            tau[*from] = sorted[to];
        }
        let odd = permutation_is_odd(&perm);
        for (mono, c) in &p.terms {
            let coeff = if odd { -c } else { c.clone() };
            out.add_term(mono.rename(&tau), coeff)?;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

/// Advances to the next permutation in lexicographic order.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn permutation_is_odd(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinDimAlgebra;
    use crate::cyclotomic::CyclotomicField;
    use crate::hmodule::tests::sweedler_two_dim;
    use proptest::prelude::*;

    #[test]
    fn identity_coefficient_returns_argument() {
        let hma = sweedler_two_dim();
        let f = hma.field();
        let p = MultilinearHPoly::monomial(HMonomial::plain(1), f.one());
        let a = vec![f.int(2), f.int(-5)];
        assert_eq!(evaluate(&p, &hma, &[a.clone()]).unwrap(), a);
    }

    #[test]
    fn c_negates_w() {
        let hma = sweedler_two_dim();
        let f = hma.field();
        let p = MultilinearHPoly::monomial(HMonomial::new(vec![0], vec![(1, 0)]).unwrap(), f.one());
        let w = vec![f.zero(), f.one()];
        assert_eq!(evaluate(&p, &hma, &[w]).unwrap(), vec![f.zero(), f.int(-1)]);
    }

    #[test]
    fn trivial_commutative_skew_commutator_vanishes() {
        let f = CyclotomicField::new(2).unwrap();
        let ff = FinDimAlgebra::direct_sum(&[&FinDimAlgebra::ground_field(f), &FinDimAlgebra::ground_field(f)]).unwrap();
        let hma = HModuleAlgebra::trivial(ff);
        let mut p = MultilinearHPoly::zero(2);
        p.add_term(HMonomial::new(vec![0, 1], vec![(0, 1), (1, 0)]).unwrap(), f.one()).unwrap();
        p.add_term(HMonomial::new(vec![1, 0], vec![(1, 0), (0, 1)]).unwrap(), f.int(-1)).unwrap();
        let args = vec![vec![f.int(3), f.int(1)], vec![f.int(-2), f.int(7)]];
        assert!(evaluate(&p, &hma, &args).unwrap().iter().all(CycNum::is_zero));
    }

    #[test]
    fn alternation_examples() {
        let f = CyclotomicField::new(2).unwrap();
        let p = MultilinearHPoly::monomial(HMonomial::plain(2), f.one());
        assert_eq!(alternate(&p, &[1]).unwrap(), p);
        let alt = alternate(&p, &[0, 1]).unwrap();
        let mut expected = p.clone();
        expected.add_term(HMonomial::new(vec![1, 0], vec![(0, 0), (0, 0)]).unwrap(), f.int(-1)).unwrap();
        assert_eq!(alt, expected);
        assert!(alternate(&p, &[0, 0]).is_err());
    }

    #[test]
    fn permutation_enumeration() {
        let mut p = vec![0, 1, 2];
        let mut all = vec![p.clone()];
        while next_permutation(&mut p) {
            all.push(p.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![0, 2, 1]);
        assert_eq!(all[5], vec![2, 1, 0]);
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = MultilinearHPoly> {
        let term = (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), prop::collection::vec((0usize..2, 0usize..2), n), -3i64..=3);
        prop::collection::vec(term, 1..4).prop_map(move |terms| {
            let f = CyclotomicField::new(2).unwrap();
            let mut p = MultilinearHPoly::zero(n);
            for (s, h, c) in terms {
                p.add_term(HMonomial::new(s, h).unwrap(), f.int(c)).unwrap();
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn alternation_twice_is_factorial_multiple(p in arb_poly(3)) {
            let f = CyclotomicField::new(2).unwrap();
            let once = alternate(&p, &[0, 2]).unwrap();
            let twice = alternate(&once, &[0, 2]).unwrap();
            prop_assert_eq!(twice, once.scale(&f.int(2)));
            let full = alternate(&p, &[0, 1, 2]).unwrap();
            prop_assert_eq!(alternate(&full, &[0, 1, 2]).unwrap(), full.scale(&f.int(6)));
        }

        #[test]
        fn alternation_vanishes_on_repeated_arguments(p in arb_poly(3), a in prop::collection::vec(-4i64..=4, 2), b in prop::collection::vec(-4i64..=4, 2)) {
            let hma = sweedler_two_dim();
            let f = hma.field();
            let x: Vec<CycNum> = a.iter().map(|&v| f.int(v)).collect();
            let y: Vec<CycNum> = b.iter().map(|&v| f.int(v)).collect();
            let alt = alternate(&p, &[0, 2]).unwrap();
            let val = evaluate(&alt, &hma, &[x.clone(), y, x]).unwrap();
            prop_assert!(val.iter().all(CycNum::is_zero));
        }
    }
}
