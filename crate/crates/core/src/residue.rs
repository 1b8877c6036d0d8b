//! Residue fields of places: F_{q^d} realized as F_q[t]/(l(t)).
//!
//! Elements are canonical representatives, polynomials of degree < d. At a
//! degree-1 place (including infinity) this collapses to F_q itself.

use crate::error::{Error, Result};
use crate::fq::{Fq, FqContext};
use crate::place::PrimePlace;
use crate::poly::PolyA;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResidueField {
    modulus: PolyA,
}

impl ResidueField {
    /// Residue field at a place. At infinity the residue field is F_q,
    /// realized with the dummy modulus t.
    pub fn for_place(ctx: &FqContext, place: &PrimePlace) -> Self {
        let modulus = match place {
            PrimePlace::Finite(g) => g.clone(),
            PrimePlace::Infinite => PolyA::t(ctx),
        };
        ResidueField { modulus }
    }

    pub fn ctx(&self) -> &FqContext {
        self.modulus.ctx()
    }

    pub fn degree(&self) -> u64 {
        self.modulus.degree().unwrap()
    }

    /// Cardinality q^d.
    pub fn size(&self) -> u64 {
        self.ctx().q().pow(self.degree() as u32)
    }

    pub fn zero(&self) -> PolyA {
        PolyA::zero(self.ctx())
    }

    pub fn one(&self) -> PolyA {
        PolyA::one(self.ctx())
    }

    pub fn from_fq(&self, c: Fq) -> PolyA {
        PolyA::constant(self.ctx(), c)
    }

    pub fn reduce(&self, a: &PolyA) -> PolyA {
        if a.degree().map_or(true, |d| d < self.degree()) {
            a.clone()
        } else {
            a.rem(&self.modulus).unwrap()
        }
    }

    pub fn add(&self, a: &PolyA, b: &PolyA) -> PolyA {
        a.add(b)
    }

    pub fn sub(&self, a: &PolyA, b: &PolyA) -> PolyA {
        a.sub(b)
    }

    pub fn neg(&self, a: &PolyA) -> PolyA {
        a.neg()
    }

    pub fn mul(&self, a: &PolyA, b: &PolyA) -> PolyA {
        self.reduce(&a.mul(b))
    }

    pub fn inv(&self, a: &PolyA) -> Result<PolyA> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, u, _) = a.ext_gcd(&self.modulus);
        debug_assert!(g.is_one(), "modulus is irreducible");
        Ok(self.reduce(&u))
    }

    /// x -> x^q, the base-field Frobenius.
    pub fn frob_q(&self, a: &PolyA) -> PolyA {
        self.reduce(&a.frobenius(1))
    }

    pub fn pow(&self, a: &PolyA, mut n: u64) -> PolyA {
        let mut acc = self.one();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Enumerate all elements in index order (coefficient digits, constant
    /// coefficient least significant).
    pub fn elements(&self) -> Vec<PolyA> {
        let q = self.ctx().q();
        let d = self.degree() as u32;
        let total = q.pow(d);
        let mut out = Vec::with_capacity(total as usize);
        for n in 0..total {
            let mut coeffs = Vec::with_capacity(d as usize);
            let mut m = n;
            for _ in 0..d {
                coeffs.push(self.ctx().elem(m % q));
                m /= q;
            }
            out.push(PolyA::from_coeffs(self.ctx(), &coeffs));
        }
        out
    }

    /// Evaluate a polynomial with F_q coefficients at a residue element.
    pub fn eval_base_poly(&self, f: &PolyA, x: &PolyA) -> PolyA {
        let mut acc = self.zero();
        for &(e, c) in f.terms() {
            let xe = self.pow(x, e);
            acc = self.add(&acc, &xe.mul_scalar(c));
        }
        acc
    }

    /// The first root of the modulus in the residue field, in element index
    /// order. This pins down the embedding used by series expansions.
    pub fn canonical_root(&self) -> PolyA {
        if self.degree() == 1 {
            // modulus t + c: root is -c
            return self.from_fq(self.ctx().neg(self.modulus.coeff(0)));
        }
        for x in self.elements() {
            if self.eval_base_poly(&self.modulus, &x).is_zero() {
                return x;
            }
        }
        unreachable!("the class of t is always a root")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_field_f4_root() {
        let ctx = FqContext::prime(2).unwrap();
        let l = PolyA::from_coeffs(&ctx, &[Fq::ONE, Fq::ONE, Fq::ONE]); // t^2+t+1
        let place = PrimePlace::finite(l).unwrap();
        let rf = ResidueField::for_place(&ctx, &place);
        assert_eq!(rf.size(), 4);
        let alpha = rf.canonical_root();
        // alpha is the class of t (index 2 in the enumeration) and a root
        assert_eq!(alpha.to_string(), "t");
        assert!(rf
            .eval_base_poly(place.generator().unwrap(), &alpha)
            .is_zero());
    }

    #[test]
    fn degree_one_root_is_constant() {
        let ctx = FqContext::prime(3).unwrap();
        // place t + 1: residue of t is -1 = 2
        let l = PolyA::from_coeffs(&ctx, &[ctx.from_int(1), Fq::ONE]);
        let place = PrimePlace::finite(l).unwrap();
        let rf = ResidueField::for_place(&ctx, &place);
        assert_eq!(rf.canonical_root().to_string(), "2");
    }

    #[test]
    fn inverses() {
        let ctx = FqContext::prime(2).unwrap();
        let l = PolyA::from_coeffs(&ctx, &[Fq::ONE, Fq::ONE, Fq::ONE]);
        let place = PrimePlace::finite(l).unwrap();
        let rf = ResidueField::for_place(&ctx, &place);
        for x in rf.elements() {
            if x.is_zero() {
                continue;
            }
            let y = rf.inv(&x).unwrap();
            assert!(rf.mul(&x, &y).is_one());
        }
    }
}
