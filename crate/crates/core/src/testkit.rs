//! Deterministic generators for randomized suites and benches. A tiny
//! xorshift keeps the corpus reproducible without pulling in an RNG crate.

use crate::drinfeld::DrinfeldModule;
use crate::fq::{Fq, FqContext};
use crate::lattice::poly_det;
use crate::poly::PolyA;
use crate::rational::RationalFn;

/// xorshift64*; good enough for test-corpus sampling, fully deterministic.
#[derive(Clone, Debug)]
pub struct DetRng(u64);

impl DetRng {
    pub fn new(seed: u64) -> Self {
        DetRng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn fq(&mut self, ctx: &FqContext) -> Fq {
        ctx.elem(self.below(ctx.q()))
    }
}

/// A random polynomial of degree <= max_deg (can be zero).
pub fn random_poly(rng: &mut DetRng, ctx: &FqContext, max_deg: u32) -> PolyA {
    let deg = rng.below(max_deg as u64 + 1) as usize;
    let coeffs: Vec<Fq> = (0..=deg).map(|_| rng.fq(ctx)).collect();
    PolyA::from_coeffs(ctx, &coeffs)
}

/// A random nonzero polynomial.
pub fn random_nonzero_poly(rng: &mut DetRng, ctx: &FqContext, max_deg: u32) -> PolyA {
    loop {
        let p = random_poly(rng, ctx, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random square polynomial lattice matrix (rows) with entry degrees
/// <= entry_deg, full rank, and deg det <= det_cap so the enumeration oracle
/// cap provably covers all minima.
pub fn random_lattice_matrix(
    rng: &mut DetRng,
    ctx: &FqContext,
    rank: usize,
    entry_deg: u32,
    det_cap: u64,
) -> Vec<Vec<PolyA>> {
    loop {
        let rows: Vec<Vec<PolyA>> = (0..rank)
            .map(|_| {
                (0..rank)
                    .map(|_| {
                        // skew degrees low so small determinants appear often
                        let d = match rng.below(8) {
                            0..=3 => 0,
                            4..=5 => 1,
                            6 => 2,
                            _ => entry_deg as u64,
                        } as u32;
                        random_poly(rng, ctx, d.min(entry_deg))
                    })
                    .collect()
            })
            .collect();
        let det = poly_det(ctx, &rows);
        match det.degree() {
            Some(d) if d <= det_cap => return rows,
            _ => continue,
        }
    }
}

/// A random Drinfeld module with polynomial coefficients of degree
/// <= coeff_deg and the exact requested rank.
pub fn random_module(
    rng: &mut DetRng,
    ctx: &FqContext,
    rank: u32,
    coeff_deg: u32,
) -> DrinfeldModule {
    let mut coeffs = vec![RationalFn::from_poly(PolyA::t(ctx))];
    for i in 1..=rank {
        let c = if i == rank {
            random_nonzero_poly(rng, ctx, coeff_deg)
        } else {
            random_poly(rng, ctx, coeff_deg)
        };
        coeffs.push(RationalFn::from_poly(c));
    }
    DrinfeldModule::new(ctx, coeffs).expect("valid module by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_streams() {
        let mut a = DetRng::new(42);
        let mut b = DetRng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn lattice_matrices_have_small_determinant() {
        let ctx = FqContext::prime(2).unwrap();
        let mut rng = DetRng::new(7);
        for _ in 0..20 {
            let rows = random_lattice_matrix(&mut rng, &ctx, 2, 3, 4);
            let det = poly_det(&ctx, &rows);
            assert!(det.degree().unwrap() <= 4);
        }
    }
}
