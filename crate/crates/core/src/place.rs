//! Primes of A = F_q[t] together with the infinite place (1/t).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{enumerate_irreducibles, PolyA};
use crate::rational::RationalFn;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PrimePlace {
    /// A finite prime, given by its monic irreducible generator.
    Finite(PolyA),
    Infinite,
}

impl PrimePlace {
    /// Construct a finite place, verifying monicity and irreducibility.
    pub fn finite(generator: PolyA) -> Result<Self> {
        if generator.is_zero() || generator.degree() == Some(0) {
            return Err(Error::InvalidInput("place generator must be nonconstant".into()));
        }
        if !generator.is_monic() {
            return Err(Error::InvalidInput("place generator must be monic".into()));
        }
        let d = generator.degree().unwrap() as u32;
        if d > 1 {
            // trial division against lower-degree irreducibles
            for dd in 1..=d / 2 {
                for g in enumerate_irreducibles(generator.ctx(), dd)? {
                    if generator.rem(&g)?.is_zero() {
                        return Err(Error::NotIrreducible(generator.to_string()));
                    }
                }
            }
        }
        Ok(PrimePlace::Finite(generator))
    }

    pub fn infinite() -> Self {
        PrimePlace::Infinite
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PrimePlace::Finite(_))
    }

    pub fn degree(&self) -> u64 {
        match self {
            PrimePlace::Finite(g) => g.degree().unwrap(),
            PrimePlace::Infinite => 1,
        }
    }

    pub fn generator(&self) -> Option<&PolyA> {
        match self {
            PrimePlace::Finite(g) => Some(g),
            PrimePlace::Infinite => None,
        }
    }

    /// Exact valuation of a nonzero rational function at this place.
    pub fn valuation(&self, x: &RationalFn) -> Result<i64> {
        match self {
            PrimePlace::Finite(g) => x.valuation_at(g),
            PrimePlace::Infinite => x.valuation_at_infinity(),
        }
    }

    /// Exact valuation of a nonzero polynomial.
    pub fn valuation_poly(&self, a: &PolyA) -> Result<i64> {
        match self {
            PrimePlace::Finite(g) => Ok(a.valuation_at(g)? as i64),
            PrimePlace::Infinite => {
                if a.is_zero() {
                    Err(Error::ZeroOperand)
                } else {
                    Ok(-(a.degree().unwrap() as i64))
                }
            }
        }
    }

    /// Stable sort key for deterministic reports.
    fn sort_key(&self) -> (u8, Vec<(u64, u32)>) {
        match self {
            PrimePlace::Infinite => (1, Vec::new()),
            PrimePlace::Finite(g) => (
                0,
                g.terms().iter().map(|&(e, c)| (e, c.index())).collect(),
            ),
        }
    }
}

impl PartialOrd for PrimePlace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for PrimePlace {
    fn cmp(&self, other: &Self) -> Ordering {
        let (ka, va) = self.sort_key();
        let (kb, vb) = other.sort_key();
        (ka, va.len(), va).cmp(&(kb, vb.len(), vb))
    }
}

impl fmt::Display for PrimePlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimePlace::Finite(g) => write!(f, "{g}"),
            PrimePlace::Infinite => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqContext;

    #[test]
    fn rejects_reducible_generator() {
        let ctx = FqContext::prime(2).unwrap();
        // t^2 + 1 = (t+1)^2
        let g = PolyA::from_coeffs(&ctx, &[ctx.from_int(1), ctx.from_int(0), ctx.from_int(1)]);
        assert!(PrimePlace::finite(g).is_err());
    }

    #[test]
    fn accepts_irreducible_quadratic() {
        let ctx = FqContext::prime(2).unwrap();
        let g = PolyA::from_coeffs(&ctx, &[ctx.from_int(1), ctx.from_int(1), ctx.from_int(1)]);
        let p = PrimePlace::finite(g).unwrap();
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn infinite_degree_one() {
        assert_eq!(PrimePlace::infinite().degree(), 1);
    }
}
