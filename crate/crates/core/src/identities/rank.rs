//! Streaming rank accumulators used by the codimension computation.
//!
//! [`ModularRank`] works over F_p and gives a lower bound for the rank over
//! Q(ζ). [`FractionFreeRank`] works over Z[ζ] with checked i128 arithmetic
//! and is exact; it reports overflow instead of wrapping.

use crate::field::mulmod;

pub(crate) struct ModularRank {
    p: u64,
    cols: usize,
    rows: Vec<Vec<(usize, u64)>>,
    pivots: Vec<usize>,
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

impl ModularRank {
    pub(crate) fn new(p: u64, cols: usize) -> Self {
        ModularRank { p, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Reduces `x` in place and adds it if independent.
    pub(crate) fn insert(&mut self, x: &mut [u64]) -> bool {
        let p = self.p;
        // Rows are fully reduced, so pivot coefficients can be read up front.
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let a = x[pc];
            if a == 0 {
                continue;
            }
            for &(j, b) in row {
                let s = mulmod(a, b, p);
                x[j] = if x[j] >= s { x[j] - s } else { x[j] + p - s };
            }
        }
        let Some(pc) = x.iter().position(|&v| v != 0) else { return false };
        let inv = powmod(x[pc], p - 2, p);
        let new: Vec<(usize, u64)> =
            x.iter().enumerate().skip(pc).filter(|(_, &v)| v != 0).map(|(j, &v)| (j, mulmod(v, inv, p))).collect();
        for row in self.rows.iter_mut() {
            let Ok(pos) = row.binary_search_by_key(&pc, |e| e.0) else { continue };
            let s = row[pos].1;
            let mut merged = Vec::with_capacity(row.len() + new.len());
            let (mut i, mut k) = (0, 0);
            while i < row.len() || k < new.len() {
                let ci = row.get(i).map_or(usize::MAX, |e| e.0);
                let ck = new.get(k).map_or(usize::MAX, |e| e.0);
                if ci < ck {
                    merged.push(row[i]);
                    i += 1;
                } else {
                    let sub = mulmod(s, new[k].1, p);
                    let v = if ci == ck {
                        let a = row[i].1;
                        i += 1;
                        if a >= sub { a - sub } else { a + p - sub }
                    } else {
                        p - sub
                    };
                    if v != 0 {
                        merged.push((ck, v));
                    }
                    k += 1;
                }
            }
            *row = merged;
        }
        self.pivots.push(pc);
        self.rows.push(new);
        true
    }
}

#[derive(Debug)]
pub(crate) struct Overflow;

/// Elements of Z[ζ] are slices of length φ(m) over the power basis.
pub(crate) struct FractionFreeRank {
    cols: usize,
    deg: usize,
    /// Φ_m, ascending, monic.
    min_poly: Vec<i128>,
    /// Semi-echelon rows: (pivot column, columns, flat values).
    rows: Vec<(usize, Vec<usize>, Vec<i128>)>,
    pivot_row: Vec<Option<usize>>,
}

const CONTENT_THRESHOLD: i128 = 1 << 60;

impl FractionFreeRank {
    pub(crate) fn new(cols: usize, min_poly: &[i64]) -> Self {
        FractionFreeRank {
            cols,
            deg: min_poly.len() - 1,
            min_poly: min_poly.iter().map(|&c| c as i128).collect(),
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    fn mul(&self, a: &[i128], b: &[i128], out: &mut [i128]) -> Result<(), Overflow> {
        let d = self.deg;
        if d == 1 {
            out[0] = a[0].checked_mul(b[0]).ok_or(Overflow)?;
            return Ok(());
        }
        let mut prod = vec![0i128; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let t = x.checked_mul(y).ok_or(Overflow)?;
                prod[i + j] = prod[i + j].checked_add(t).ok_or(Overflow)?;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (i, &q) in self.min_poly[..d].iter().enumerate() {
                let t = c.checked_mul(q).ok_or(Overflow)?;
                prod[k - d + i] = prod[k - d + i].checked_sub(t).ok_or(Overflow)?;
            }
            prod[k] = 0;
        }
        out.copy_from_slice(&prod[..d]);
        Ok(())
    }

    fn divide_content(x: &mut [i128]) {
        let g = x.iter().fold(0i128, |g, &v| num_integer::gcd(g, v));
        if g > 1 {
            x.iter_mut().for_each(|v| *v /= g);
        }
    }

    /// Adds a dense row (length cols·φ); returns whether the rank grew.
    pub(crate) fn insert(&mut self, mut x: Vec<i128>) -> Result<bool, Overflow> {
        let d = self.deg;
        let mut scratch = vec![0i128; d];
        let mut a = vec![0i128; d];
        for c in 0..self.cols {
            if x[c * d..(c + 1) * d].iter().all(|&v| v == 0) {
                continue;
            }
            let Some(r) = self.pivot_row[c] else { continue };
            a.copy_from_slice(&x[c * d..(c + 1) * d]);
            let (_, ref cols, ref vals) = self.rows[r];
            let lead = &vals[..d];
            let lead_is_one = lead[0] == 1 && lead[1..].iter().all(|&v| v == 0);
            if !lead_is_one {
                for j in 0..self.cols {
                    let slot = &x[j * d..(j + 1) * d];
                    if slot.iter().all(|&v| v == 0) {
                        continue;
                    }
                    self.mul(lead, slot, &mut scratch)?;
                    x[j * d..(j + 1) * d].copy_from_slice(&scratch);
                }
            }
            for (idx, &j) in cols.iter().enumerate() {
                self.mul(&a, &vals[idx * d..(idx + 1) * d], &mut scratch)?;
                for t in 0..d {
                    x[j * d + t] = x[j * d + t].checked_sub(scratch[t]).ok_or(Overflow)?;
                }
            }
            if x.iter().any(|v| v.abs() > CONTENT_THRESHOLD) {
                Self::divide_content(&mut x);
                if x.iter().any(|v| v.abs() > CONTENT_THRESHOLD) {
                    return Err(Overflow);
                }
            }
        }
        let Some(pc) = (0..self.cols).find(|&c| x[c * d..(c + 1) * d].iter().any(|&v| v != 0)) else {
            return Ok(false);
        };
        Self::divide_content(&mut x);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for c in pc..self.cols {
            let slot = &x[c * d..(c + 1) * d];
            if slot.iter().any(|&v| v != 0) {
                cols.push(c);
                vals.extend_from_slice(slot);
            }
        }
        self.pivot_row[pc] = Some(self.rows.len());
        self.rows.push((pc, cols, vals));
        Ok(true)
    }
}
