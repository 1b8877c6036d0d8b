//! The fraction field F = F_q(t).

use std::fmt;

use crate::error::{Error, Result};
use crate::fq::{Fq, FqContext};
use crate::poly::PolyA;

/// A reduced fraction num/den with monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFn {
    num: PolyA,
    den: PolyA,
}

impl RationalFn {
    pub fn new(num: PolyA, den: PolyA) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: PolyA, den: PolyA) -> Self {
        let ctx = num.ctx().clone();
        if num.is_zero() {
            return RationalFn {
                num,
                den: PolyA::one(&ctx),
            };
        }
        if den.is_one() {
            return RationalFn { num, den };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.divrem(&g).unwrap().0,
                den.divrem(&g).unwrap().0,
            )
        };
        // normalize the denominator monic
        let lc = den.leading_coeff();
        if lc == Fq::ONE {
            RationalFn { num, den }
        } else {
            let inv = ctx.inv(lc).unwrap();
            RationalFn {
                num: num.mul_scalar(inv),
                den: den.mul_scalar(inv),
            }
        }
    }

    pub fn from_poly(p: PolyA) -> Self {
        let one = PolyA::one(p.ctx());
        RationalFn { num: p, den: one }
    }

    pub fn zero(ctx: &FqContext) -> Self {
        Self::from_poly(PolyA::zero(ctx))
    }

    pub fn one(ctx: &FqContext) -> Self {
        Self::from_poly(PolyA::one(ctx))
    }

    pub fn ctx(&self) -> &FqContext {
        self.num.ctx()
    }

    pub fn num(&self) -> &PolyA {
        &self.num
    }

    pub fn den(&self) -> &PolyA {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial itself if the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&PolyA> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let num = self
            .num
            .mul(&rhs.den)
            .add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        Self::reduce(num, den)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn mul_scalar(&self, c: Fq) -> Self {
        RationalFn {
            num: self.num.mul_scalar(c),
            den: if c.is_zero() {
                PolyA::one(self.ctx())
            } else {
                self.den.clone()
            },
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, n: u64) -> Self {
        RationalFn {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    /// q^k-power Frobenius, exact and cheap on sparse storage.
    pub fn frobenius(&self, k: u32) -> Self {
        RationalFn {
            num: self.num.frobenius(k),
            den: self.den.frobenius(k),
        }
    }

    /// Exact valuation at a finite prime given by its monic irreducible generator.
    pub fn valuation_at(&self, l: &PolyA) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroOperand);
        }
        let vn = self.num.valuation_at(l)? as i64;
        let vd = self.den.valuation_at(l)? as i64;
        Ok(vn - vd)
    }

    /// Valuation at infinity: deg den - deg num.
    pub fn valuation_at_infinity(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroOperand);
        }
        Ok(self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> FqContext {
        FqContext::prime(3).unwrap()
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = PolyA> {
        prop::collection::vec(0i64..3, 1..=max_deg + 1).prop_map(|cs| {
            let ctx = f3();
            let v: Vec<Fq> = cs.iter().map(|&c| ctx.from_int(c)).collect();
            PolyA::from_coeffs(&ctx, &v)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms_random(a in arb_poly(5), b in arb_poly(5), c in arb_poly(5)) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn rational_always_reduced(a in arb_poly(5), b in arb_poly(5), c in arb_poly(4)) {
            prop_assume!(!b.is_zero());
            prop_assume!(!c.is_zero());
            let x = RationalFn::new(a, b).unwrap();
            let y = RationalFn::new(c.clone(), PolyA::one(&f3())).unwrap();
            for z in [x.add(&y), x.mul(&y), x.sub(&y)] {
                if !z.is_zero() {
                    prop_assert!(z.num().gcd(z.den()).is_one());
                }
                prop_assert!(z.den().is_monic());
            }
        }
    }

    #[test]
    fn divrem_and_gcd() {
        let ctx = f3();
        let a = PolyA::from_coeffs(&ctx, &[ctx.from_int(1), ctx.from_int(0), ctx.from_int(1)]);
        let b = PolyA::from_coeffs(&ctx, &[ctx.from_int(2), ctx.from_int(1)]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn valuations() {
        let ctx = f3();
        let t = PolyA::t(&ctx);
        let x = RationalFn::new(PolyA::one(&ctx), t.clone()).unwrap(); // 1/t
        assert_eq!(x.valuation_at(&t).unwrap(), -1);
        assert_eq!(x.valuation_at_infinity().unwrap(), 1);
    }
}
