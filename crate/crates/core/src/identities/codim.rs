//! Codimensions c_n^H(A): the rank of the evaluation matrix of P_n^H.
//!
//! Rows are the monomials x^{h₁}_{σ(1)}···x^{hₙ}_{σ(n)}, ordered by σ
//! (lexicographic) and then by (h₁, …, hₙ) in mixed radix with h₁ most
//! significant, where c^i v^k has index i·m + k. Columns are indexed by a
//! basis tuple (j₁, …, jₙ) of A in mixed radix, then by output coordinate.
//!
//! Only monomials whose Hopf coefficients act by a chosen basis of the
//! operator span ρ(H) ⊆ End(A) are eliminated; by multilinearity every other
//! row is a combination of those, so the rank is unchanged.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::next_permutation;
use super::rank::{FractionFreeRank, ModularRank};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::hmodule::HModuleAlgebra;
use crate::linalg::Echelon;
use crate::modular::ReductionMap;

pub const DEFAULT_ROW_BUDGET: u128 = 1_000_000;
/// Largest number of entries in the table of positional products.
const TABLE_LIMIT: u128 = 1 << 21;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    /// Modular filter, exact elimination only when the filter cannot certify.
    Auto,
    /// Exact elimination over Z[ζ] regardless of the filter.
    Exact,
    /// Modular rank only: a lower bound, not certified.
    Modular,
}

#[derive(Clone, Copy, Debug)]
pub struct CodimOptions {
    pub budget: u128,
    pub method: RankMethod,
}

impl Default for CodimOptions {
    fn default() -> Self {
        CodimOptions { budget: DEFAULT_ROW_BUDGET, method: RankMethod::Auto }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimResult {
    pub n: usize,
    pub value: usize,
    /// n!·(m²)^n.
    pub rows: u128,
    /// (dim A)^{n+1}.
    pub cols: u128,
    /// Rows actually eliminated after restricting to a basis of ρ(H).
    pub processed_rows: usize,
    pub method: String,
    /// False only for an uncertified modular lower bound.
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub rows: u128,
    pub cols: u128,
    pub c_n: usize,
    pub root: f64,
    pub bound_ok: bool,
    pub wall_ms: u128,
}

struct EvaluationTable {
    n: usize,
    d: usize,
    /// Number of letters (alphabet operator, basis index).
    letters: usize,
    /// T[word·d + coord]: product of the letters' images, in positional order.
    table: Vec<CycNum>,
    /// Hopf basis indices chosen as a basis of ρ(H).
    alphabet: Vec<usize>,
    m2: usize,
}

impl EvaluationTable {
    fn build(hma: &HModuleAlgebra, n: usize) -> Result<Self> {
        let a = hma.algebra();
        let f = hma.field();
        let d = a.dim();
        let m = hma.conductor() as usize;
        let mut span = Echelon::new(f, d * d);
        let mut alphabet = Vec::new();
        let mut images: Vec<Vec<CycNum>> = Vec::new();
        for idx in 0..m * m {
            let op = hma.monomial_operator(idx / m, idx % m);
            if span.insert(op.data()) {
                alphabet.push(idx);
                images.extend((0..d).map(|k| op.col(k)));
            }
        }
        let letters = alphabet.len() * d;
        let entries = (letters as u128).pow(n as u32) * d as u128;
        if entries > TABLE_LIMIT {
            return Err(Error::BudgetExceeded { unit: "table entries", required: entries, budget: TABLE_LIMIT });
        }
        let mut level = images.clone();
        for _ in 1..n {
            level = (0..level.len() * letters)
                .into_par_iter()
                .map(|idx| a.mul(&level[idx / letters], &images[idx % letters]))
                .collect();
        }
        let table = level.into_iter().flatten().collect();
        Ok(EvaluationTable { n, d, letters, table, alphabet, m2: m * m })
    }

    fn cols(&self) -> usize {
        self.d.pow(self.n as u32 + 1)
    }

    /// For each σ, the word offset contributed by each basis tuple.
    fn tuple_offsets(&self) -> Vec<Vec<usize>> {
        let (n, d, l) = (self.n, self.d, self.letters);
        let tuples = d.pow(n as u32);
        let mut out = Vec::new();
        let mut sigma: Vec<usize> = (0..n).collect();
        loop {
            let offs = (0..tuples)
                .map(|t| {
                    let j: Vec<usize> = (0..n).map(|p| (t / d.pow((n - 1 - p) as u32)) % d).collect();
                    (0..n).fold(0, |acc, p| acc * l + j[sigma[p]])
                })
                .collect();
            out.push(offs);
            if !next_permutation(&mut sigma) {
                break;
            }
        }
        out
    }

    /// Processed rows as (σ index, word offset of the Hopf letters), in row
    /// order, and the formal row count.
    fn rows(&self) -> (Vec<(usize, usize)>, u128) {
        let (n, d, l) = (self.n, self.d, self.letters);
        let nfact: usize = (1..=n).product();
        let mut out = Vec::new();
        let mut formal = 0u128;
        let hseqs = self.m2.pow(n as u32);
        let position: Vec<Option<usize>> = (0..self.m2).map(|h| self.alphabet.iter().position(|&a| a == h)).collect();
        for s in 0..nfact {
            for hs in 0..hseqs {
                formal += 1;
                let mut base = 0;
                let mut ok = true;
                for p in 0..n {
                    let h = (hs / self.m2.pow((n - 1 - p) as u32)) % self.m2;
                    match position[h] {
                        Some(a) => base = base * l + a * d,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    out.push((s, base));
                }
            }
        }
        (out, formal)
    }
}

fn modular_rank(
    t: &EvaluationTable,
    offsets: &[Vec<usize>],
    rows: &[(usize, usize)],
    m: u32,
    seed: u64,
) -> (usize, Vec<usize>) {
    let (map, table) = (seed..seed + 16)
        .find_map(|s| {
            let map = ReductionMap::new(m, s);
            let table: Option<Vec<u64>> = t.table.iter().map(|x| map.reduce(x)).collect();
            table.map(|tb| (map, tb))
        })
        .expect("some prime avoids every denominator");
    let p = map.prime_field().modulus();
    let (d, cols) = (t.d, t.cols());
    let mut acc = ModularRank::new(p, cols);
    let mut independent = Vec::new();
    let mut x = vec![0u64; cols];
    for (idx, &(s, base)) in rows.iter().enumerate() {
        for (ti, off) in offsets[s].iter().enumerate() {
            let w = (base + off) * d;
            x[ti * d..(ti + 1) * d].copy_from_slice(&table[w..w + d]);
        }
        if acc.insert(&mut x) {
            independent.push(idx);
            if acc.is_full() {
                break;
            }
        }
    }
    (acc.rank(), independent)
}

/// Integer image of the table after clearing denominators, or `None` if an
/// entry does not fit.
fn integer_table(t: &EvaluationTable) -> Option<Vec<i128>> {
    let mut den = BigInt::one();
    for x in &t.table {
        for c in x.coeffs() {
            den = den.lcm(c.denom());
        }
    }
    let limit = BigInt::from(1i64 << 40);
    let mut out = Vec::with_capacity(t.table.len() * t.table.first().map_or(1, |x| x.coeffs().len()));
    for x in &t.table {
        for c in x.coeffs() {
            let v = c.numer() * (&den / c.denom());
            if v > limit || v < -&limit {
                return None;
            }
            out.push(v.to_i128()?);
        }
    }
    Some(out)
}

fn exact_rank(
    t: &EvaluationTable,
    hma: &HModuleAlgebra,
    offsets: &[Vec<usize>],
    rows: &[(usize, usize)],
    first: &[usize],
) -> (usize, &'static str) {
    let f = hma.field();
    let phi = f.degree();
    let (d, cols) = (t.d, t.cols());
    let order: Vec<usize> = {
        let mut seen = vec![false; rows.len()];
        let mut o: Vec<usize> = first.to_vec();
        for &i in first {
            seen[i] = true;
        }
        o.extend((0..rows.len()).filter(|&i| !seen[i]));
        o
    };
    if let Some(zt) = integer_table(t) {
        let mut acc = FractionFreeRank::new(cols, f.min_poly());
        let mut overflow = false;
        for &i in &order {
            let (s, base) = rows[i];
            let mut x = vec![0i128; cols * phi];
            for (ti, off) in offsets[s].iter().enumerate() {
                let w = (base + off) * d * phi;
                x[ti * d * phi..(ti + 1) * d * phi].copy_from_slice(&zt[w..w + d * phi]);
            }
            match acc.insert(x) {
                Ok(_) if acc.is_full() => break,
                Ok(_) => {}
                Err(_) => {
                    overflow = true;
                    break;
                }
            }
        }
        if !overflow {
            return (acc.rank(), "fraction-free");
        }
    }
    let mut acc = Echelon::new(f, cols);
    for &i in &order {
        let (s, base) = rows[i];
        let mut x = Vec::with_capacity(cols);
        for off in &offsets[s] {
            let w = (base + off) * d;
            x.extend_from_slice(&t.table[w..w + d]);
        }
        acc.insert(&x);
        if acc.is_full() {
            break;
        }
    }
    (acc.rank(), "field-echelon")
}

pub fn codimension(hma: &HModuleAlgebra, n: usize) -> Result<CodimResult> {
    codimension_with(hma, n, &CodimOptions::default())
}

pub fn codimension_with(hma: &HModuleAlgebra, n: usize, opts: &CodimOptions) -> Result<CodimResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let m = hma.conductor();
    let d = hma.dim() as u128;
    let nfact: u128 = (1..=n as u128).product();
    let formal_rows = nfact * (m as u128 * m as u128).pow(n as u32);
    if formal_rows > opts.budget {
        return Err(Error::BudgetExceeded { unit: "rows", required: formal_rows, budget: opts.budget });
    }
    let cols = d.pow(n as u32 + 1);
    let t = EvaluationTable::build(hma, n)?;
    let offsets = t.tuple_offsets();
    let (rows, counted) = t.rows();
    debug_assert_eq!(counted, formal_rows);
    let result = |value, method: &str, exact| CodimResult {
        n,
        value,
        rows: formal_rows,
        cols,
        processed_rows: rows.len(),
        method: method.to_string(),
        exact,
    };
    if opts.method == RankMethod::Exact {
        let (r, method) = exact_rank(&t, hma, &offsets, &rows, &[]);
        return Ok(result(r, method, true));
    }
    let ((r0, ind0), (r1, ind1)) = rayon::join(
        || modular_rank(&t, &offsets, &rows, m, 0),
        || modular_rank(&t, &offsets, &rows, m, 1),
    );
    let (r_mod, independent) = if r0 >= r1 { (r0, ind0) } else { (r1, ind1) };
    if opts.method == RankMethod::Modular {
        return Ok(result(r_mod, "modular", false));
    }
    let upper = rows.len().min(t.cols());
    if r_mod == upper {
        return Ok(result(r_mod, "modular-at-upper-bound", true));
    }
    let (r, method) = exact_rank(&t, hma, &offsets, &rows, &independent);
    if r < r_mod {
        return Err(Error::Structure(format!("exact rank {r} below modular rank {r_mod}")));
    }
    Ok(result(r, method, true))
}

/// c_n for n = 1..=n_max with the upper bound c_n ≤ (dim A)^{n+1} per row.
pub fn codim_growth_report(hma: &HModuleAlgebra, n_max: usize, opts: &CodimOptions) -> Result<Vec<GrowthRow>> {
    let d = hma.dim() as u128;
    (1..=n_max)
        .map(|n| {
            let start = Instant::now();
            let r = codimension_with(hma, n, opts)?;
            Ok(GrowthRow {
                n,
                rows: r.rows,
                cols: r.cols,
                c_n: r.value,
                root: (r.value as f64).powf(1.0 / n as f64),
                bound_ok: (r.value as u128) <= d.pow(n as u32 + 1),
                wall_ms: start.elapsed().as_millis(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinDimAlgebra;
    use crate::cyclotomic::CyclotomicField;
    use crate::hmodule::tests::sweedler_two_dim;
    use crate::identities::{evaluate, HMonomial, MultilinearHPoly};
    use crate::linalg::Matrix;

    /// Rank of the full evaluation matrix built monomial by monomial with
    /// the direct evaluator and dense elimination.
    fn brute_force_codim(hma: &HModuleAlgebra, n: usize) -> usize {
        let f = hma.field();
        let m = hma.conductor() as usize;
        let d = hma.dim();
        let mut rows = Vec::new();
        let mut sigma: Vec<usize> = (0..n).collect();
        loop {
            for hs in 0..(m * m).pow(n as u32) {
                let h: Vec<(usize, usize)> = (0..n)
                    .map(|p| {
                        let x = (hs / (m * m).pow((n - 1 - p) as u32)) % (m * m);
                        (x / m, x % m)
                    })
                    .collect();
                let poly = MultilinearHPoly::monomial(HMonomial::new(sigma.clone(), h).unwrap(), f.one());
                let mut row = Vec::new();
                for t in 0..d.pow(n as u32) {
                    let args: Vec<Vec<CycNum>> =
                        (0..n).map(|p| hma.algebra().basis_vec((t / d.pow((n - 1 - p) as u32)) % d)).collect();
                    row.extend(evaluate(&poly, hma, &args).unwrap());
                }
                rows.push(row);
            }
            if !next_permutation(&mut sigma) {
                break;
            }
        }
        Matrix::from_rows(f, rows).unwrap().rank()
    }

    #[test]
    fn sweedler_first_codimension_is_three() {
        let hma = sweedler_two_dim();
        for method in [RankMethod::Exact, RankMethod::Modular, RankMethod::Auto] {
            let r = codimension_with(&hma, 1, &CodimOptions { method, ..Default::default() }).unwrap();
            assert_eq!(r.value, 3, "{method:?}");
            assert_eq!((r.rows, r.cols), (4, 4));
        }
        assert_eq!(brute_force_codim(&hma, 1), 3);
    }

    #[test]
    fn trivial_ground_field_has_codimension_one() {
        let f = CyclotomicField::new(2).unwrap();
        let hma = HModuleAlgebra::trivial(FinDimAlgebra::ground_field(f));
        for n in 1..=5 {
            assert_eq!(codimension(&hma, n).unwrap().value, 1);
        }
    }

    #[test]
    fn table_agrees_with_direct_evaluation() {
        let hma = sweedler_two_dim();
        for n in 1..=3 {
            let direct = brute_force_codim(&hma, n);
            let exact = codimension_with(&hma, n, &CodimOptions { method: RankMethod::Exact, ..Default::default() }).unwrap();
            let auto = codimension(&hma, n).unwrap();
            assert_eq!(exact.value, direct, "n = {n}");
            assert_eq!(auto.value, direct, "n = {n}");
        }
    }

    #[test]
    fn budget_refusal_reports_size() {
        let hma = sweedler_two_dim();
        let opts = CodimOptions { budget: 100, method: RankMethod::Auto };
        match codimension_with(&hma, 3, &opts) {
            Err(Error::BudgetExceeded { required, budget, .. }) => assert_eq!((required, budget), (6 * 64, 100)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn growth_report_bound() {
        let hma = sweedler_two_dim();
        let rows = codim_growth_report(&hma, 3, &CodimOptions::default()).unwrap();
        assert!(rows.iter().all(|r| r.bound_ok));
        assert_eq!(rows[0].c_n, 3);
    }
}
