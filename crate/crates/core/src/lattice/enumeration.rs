//! Brute-force successive-minima oracles for polynomial-entry lattices.
//!
//! Two independent routes, neither sharing code with `reduce_basis`:
//!
//! * `minima_by_counting`: enumerate every A-combination with coefficient
//!   degrees up to a cap and count vectors by degree. The ball
//!   B(q^d) = {v : deg v <= d} is an F_q-vector space, so the count is an
//!   exact power of q and the increments of log_q #B(q^d) recover how many
//!   minima lie at or below each degree.
//! * `minima_by_greedy`: sort all enumerated vectors by norm and greedily pick
//!   A-independent ones, the literal definition of the minima.
//!
//! The counting route has a data-parallel split over the last coefficient
//! block; the sequential path is always available.

use crate::error::{Error, Result};
use crate::fq::{Fq, FqContext};
use crate::poly::PolyA;
use crate::rational::RationalFn;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Flattened enumeration workspace shared by both oracles.
struct Workspace {
    q: usize,
    rank: usize,
    dim: usize,
    width: usize,
    digits_per_col: usize,
    /// deltas[(i * digits_per_col + k) * dim * width ..]: t^k * column i,
    /// dense coefficients, row-major.
    deltas: Vec<u8>,
    add: Vec<u8>,
}

impl Workspace {
    fn build(ctx: &FqContext, rows: &[Vec<PolyA>], cap: u32) -> Result<Workspace> {
        let q = ctx.q();
        if q > 255 {
            return Err(Error::EnumerationCap(q, 255));
        }
        let dim = rows.len();
        let rank = rows.first().map_or(0, |r| r.len());
        if rank == 0 || rows.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidInput("ragged matrix".into()));
        }
        let max_entry_deg = rows
            .iter()
            .flat_map(|r| r.iter())
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0) as usize;
        let width = max_entry_deg + cap as usize + 1;
        let digits_per_col = cap as usize + 1;
        let total_digits = rank * digits_per_col;
        let tuples = (q as u128).checked_pow(total_digits as u32);
        match tuples {
            Some(n) if n <= 1 << 40 => {}
            _ => {
                return Err(Error::EnumerationCap(u64::MAX, 1 << 40));
            }
        }
        let mut deltas = vec![0u8; rank * digits_per_col * dim * width];
        for i in 0..rank {
            for k in 0..digits_per_col {
                let base = (i * digits_per_col + k) * dim * width;
                for (row, rvals) in rows.iter().enumerate() {
                    for &(e, c) in rvals[i].terms() {
                        deltas[base + row * width + e as usize + k] = c.index() as u8;
                    }
                }
            }
        }
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                add[a * qs + b] = ctx
                    .add(ctx.elem(a as u64), ctx.elem(b as u64))
                    .index() as u8;
            }
        }
        Ok(Workspace {
            q: qs,
            rank,
            dim,
            width,
            digits_per_col,
            deltas,
            add,
        })
    }

    #[inline]
    fn delta(&self, digit: usize) -> &[u8] {
        let stride = self.dim * self.width;
        &self.deltas[digit * stride..(digit + 1) * stride]
    }

    #[inline]
    fn add_delta(&self, vec: &mut [u8], digit: usize) {
        let d = self.delta(digit);
        for (v, &x) in vec.iter_mut().zip(d) {
            if x != 0 {
                *v = self.add[*v as usize * self.q + x as usize];
            }
        }
    }

    /// Degree of the current vector, or None for the zero vector.
    #[inline]
    fn vector_degree(&self, vec: &[u8]) -> Option<usize> {
        for d in (0..self.width).rev() {
            for row in 0..self.dim {
                if vec[row * self.width + d] != 0 {
                    return Some(d);
                }
            }
        }
        None
    }

    /// Enumerate all assignments of digits [lo, hi) on top of `vec`,
    /// calling f per completed tuple. Restores vec before returning.
    fn recurse(&self, vec: &mut [u8], lo: usize, hi: usize, f: &mut impl FnMut(&[u8])) {
        if lo == hi {
            f(vec);
            return;
        }
        for step in 0..self.q {
            if step > 0 {
                self.add_delta(vec, lo);
            }
            self.recurse(vec, lo + 1, hi, f);
        }
        // q * delta = 0 in characteristic p: one more add restores
        self.add_delta(vec, lo);
    }
}

fn counts_to_minima(
    q: u64,
    rank: usize,
    cap: u32,
    counts: &[u64],
) -> Result<Vec<i64>> {
    // counts[d] = number of nonzero enumerated vectors of degree exactly d
    let mut minima: Vec<i64> = Vec::with_capacity(rank);
    let mut n: u128 = 1; // the zero vector
    let mut prev_dim: u32 = 0;
    for (d, &c) in counts.iter().enumerate() {
        n += c as u128;
        // dim = log_q n, must be exact
        let mut dim = 0u32;
        let mut m = n;
        while m > 1 {
            if m % q as u128 != 0 {
                return Err(Error::Inconsistency(format!(
                    "ball size {n} at degree {d} is not a power of q; columns dependent?"
                )));
            }
            m /= q as u128;
            dim += 1;
        }
        let incr = dim - prev_dim;
        if (incr as usize) < minima.len() {
            return Err(Error::EnumerationCap(cap as u64, cap as u64));
        }
        while minima.len() < incr as usize && minima.len() < rank {
            minima.push(d as i64);
        }
        if minima.len() == rank {
            // the cap must not have truncated any column's contribution yet
            if d as i64 - minima[0] > cap as i64 {
                return Err(Error::EnumerationCap(cap as u64, cap as u64));
            }
            return Ok(minima);
        }
        prev_dim = dim;
    }
    Err(Error::Inconsistency(
        "enumeration exhausted before finding all minima; raise the cap".into(),
    ))
}

/// Successive minima exponents by exhaustive enumeration and ball counting,
/// sequential path.
pub fn minima_by_counting_seq(
    ctx: &FqContext,
    rows: &[Vec<PolyA>],
    cap: u32,
) -> Result<Vec<i64>> {
    let ws = Workspace::build(ctx, rows, cap)?;
    let mut counts = vec![0u64; ws.width];
    let mut vec = vec![0u8; ws.dim * ws.width];
    let total = ws.rank * ws.digits_per_col;
    ws.recurse(&mut vec, 0, total, &mut |v| {
        if let Some(d) = ws.vector_degree(v) {
            counts[d] += 1;
        }
    });
    counts_to_minima(ctx.q(), ws.rank, cap, &counts)
}

/// Parallel counting path: splits on the digits of the last column and merges
/// the per-task counters (order-independent sums, so the result is
/// deterministic).
#[cfg(feature = "parallel")]
pub fn minima_by_counting_par(
    ctx: &FqContext,
    rows: &[Vec<PolyA>],
    cap: u32,
) -> Result<Vec<i64>> {
    let ws = Workspace::build(ctx, rows, cap)?;
    let split_digits = ws.digits_per_col;
    let rest = (ws.rank - 1) * ws.digits_per_col;
    let tasks = (ws.q as u64).pow(split_digits as u32);
    let counts = (0..tasks)
        .into_par_iter()
        .map(|task| {
            let mut vec = vec![0u8; ws.dim * ws.width];
            let mut m = task;
            for k in 0..split_digits {
                let digit = (m % ws.q as u64) as usize;
                m /= ws.q as u64;
                for _ in 0..digit {
                    ws.add_delta(&mut vec, rest + k);
                }
            }
            let mut local = vec![0u64; ws.width];
            ws.recurse(&mut vec, 0, rest, &mut |v| {
                if let Some(d) = ws.vector_degree(v) {
                    local[d] += 1;
                }
            });
            local
        })
        .reduce(
            || vec![0u64; ws.width],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x += y;
                }
                a
            },
        );
    counts_to_minima(ctx.q(), ws.rank, cap, &counts)
}

/// Default counting oracle: parallel when the feature is on.
pub fn minima_by_counting(ctx: &FqContext, rows: &[Vec<PolyA>], cap: u32) -> Result<Vec<i64>> {
    #[cfg(feature = "parallel")]
    {
        minima_by_counting_par(ctx, rows, cap)
    }
    #[cfg(not(feature = "parallel"))]
    {
        minima_by_counting_seq(ctx, rows, cap)
    }
}

/// The literal definition: sort enumerated vectors by norm and greedily take
/// A-independent ones. Exponential in memory; use on small instances.
pub fn minima_by_greedy(ctx: &FqContext, rows: &[Vec<PolyA>], cap: u32) -> Result<Vec<i64>> {
    let ws = Workspace::build(ctx, rows, cap)?;
    let total = ws.rank * ws.digits_per_col;
    let tuples = (ws.q as u64).pow(total as u32);
    if tuples > 1 << 22 {
        return Err(Error::EnumerationCap(tuples, 1 << 22));
    }
    // collect (degree, tuple index)
    let mut items: Vec<(i64, u64)> = Vec::with_capacity(tuples as usize);
    let mut vec = vec![0u8; ws.dim * ws.width];
    let mut idx = 0u64;
    // recursion ordering must match a base-q odometer with digit 0 fastest:
    // reproduce indices by counting calls
    ws.recurse(&mut vec, 0, total, &mut |v| {
        if let Some(d) = ws.vector_degree(v) {
            items.push((d as i64, idx));
        }
        idx += 1;
    });
    items.sort();
    // decode a tuple index into coefficient polynomials
    let decode = |mut ix: u64| -> Vec<PolyA> {
        // digit order: level 0 is the outermost loop; each level steps once
        // per (q^{remaining}) calls, so level L has place value q^{total-1-L}
        let mut digits = vec![0u8; total];
        for level in (0..total).rev() {
            digits[level] = (ix % ws.q as u64) as u8;
            ix /= ws.q as u64;
        }
        // level = i * digits_per_col + k corresponds to coefficient of t^k in a_i
        (0..ws.rank)
            .map(|i| {
                let coeffs: Vec<Fq> = (0..ws.digits_per_col)
                    .map(|k| ctx.elem(digits[i * ws.digits_per_col + k] as u64))
                    .collect();
                PolyA::from_coeffs(ctx, &coeffs)
            })
            .collect()
    };
    let combination = |coeffs: &[PolyA]| -> Vec<RationalFn> {
        (0..ws.dim)
            .map(|row| {
                let mut acc = PolyA::zero(ctx);
                for (i, a) in coeffs.iter().enumerate() {
                    acc = acc.add(&a.mul(&rows[row][i]));
                }
                RationalFn::from_poly(acc)
            })
            .collect()
    };
    let mut echelon: Vec<Vec<RationalFn>> = Vec::new();
    let mut minima = Vec::with_capacity(ws.rank);
    for (deg, ix) in items {
        if minima.len() == ws.rank {
            break;
        }
        let coeffs = decode(ix);
        let mut v = combination(&coeffs);
        // reduce against the chosen echelon rows
        for row in &echelon {
            let pivot = row.iter().position(|x| !x.is_zero()).unwrap();
            if !v[pivot].is_zero() {
                let f = v[pivot].div(&row[pivot]).unwrap();
                for (a, b) in v.iter_mut().zip(row) {
                    *a = a.sub(&f.mul(b));
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            echelon.push(v);
            minima.push(deg);
        }
    }
    if minima.len() < ws.rank {
        return Err(Error::Inconsistency(
            "greedy oracle ran out of vectors; raise the cap".into(),
        ));
    }
    Ok(minima)
}
