//! Twisted polynomials: finite sums of c_i tau^i with tau c = c^q tau.
//!
//! Generic over the coefficient field so the same arithmetic serves global
//! modules (coefficients in F_q(t)) and reconstructed local ones
//! (coefficients in K_l).

use crate::error::{Error, Result};
use crate::local::LocalElem;
use crate::rational::RationalFn;

/// Coefficients an Ore polynomial can take.
pub trait OreScalar: Clone {
    fn q(&self) -> u64;
    fn compatible(&self, other: &Self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// x -> x^q.
    fn frob_q(&self) -> Self;
    /// Zero as far as this representation can tell (exact zero, or zero to
    /// the tracked precision).
    fn is_zero(&self) -> bool;
    /// Exactly zero, safe to trim.
    fn is_exact_zero(&self) -> bool;
}

impl OreScalar for RationalFn {
    fn q(&self) -> u64 {
        self.ctx().q()
    }
    fn compatible(&self, other: &Self) -> bool {
        self.ctx() == other.ctx()
    }
    fn zero_like(&self) -> Self {
        RationalFn::zero(self.ctx())
    }
    fn one_like(&self) -> Self {
        RationalFn::one(self.ctx())
    }
    fn add(&self, rhs: &Self) -> Self {
        RationalFn::add(self, rhs)
    }
    fn neg(&self) -> Self {
        RationalFn::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RationalFn::mul(self, rhs)
    }
    fn frob_q(&self) -> Self {
        self.frobenius(1)
    }
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
    fn is_exact_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
}

impl OreScalar for LocalElem {
    fn q(&self) -> u64 {
        self.field().ctx().q()
    }
    fn compatible(&self, other: &Self) -> bool {
        self.place() == other.place()
    }
    fn zero_like(&self) -> Self {
        LocalElem::exact_zero(self.place(), self.field())
    }
    fn one_like(&self) -> Self {
        LocalElem::one(self.place(), self.field())
    }
    fn add(&self, rhs: &Self) -> Self {
        LocalElem::add(self, rhs)
    }
    fn neg(&self) -> Self {
        LocalElem::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        LocalElem::mul(self, rhs)
    }
    fn frob_q(&self) -> Self {
        self.frobenius_q()
    }
    fn is_zero(&self) -> bool {
        self.is_zero_to_prec()
    }
    fn is_exact_zero(&self) -> bool {
        self.is_exactly_zero()
    }
}

/// A twisted polynomial sum c_i tau^i. Trailing exactly-zero coefficients are
/// trimmed; zero-to-precision tails are kept so defects stay observable.
#[derive(Clone, PartialEq, Debug)]
pub struct OrePoly<C: OreScalar> {
    coeffs: Vec<C>,
}

impl<C: OreScalar> OrePoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.is_exact_zero()) {
            coeffs.pop();
        }
        assert!(!coeffs.is_empty(), "an Ore polynomial needs a coefficient");
        OrePoly { coeffs }
    }

    pub fn scalar(c: C) -> Self {
        OrePoly { coeffs: vec![c] }
    }

    pub fn one_like(sample: &C) -> Self {
        OrePoly {
            coeffs: vec![sample.one_like()],
        }
    }

    pub fn zero_like(sample: &C) -> Self {
        OrePoly {
            coeffs: vec![sample.zero_like()],
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.coeffs[0].zero_like())
    }

    /// tau-degree: index of the last coefficient that is not known to vanish.
    pub fn tau_degree(&self) -> usize {
        for i in (0..self.coeffs.len()).rev() {
            if !self.coeffs[i].is_zero() {
                return i;
            }
        }
        0
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn leading_coeff(&self) -> &C {
        &self.coeffs[self.tau_degree()]
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = self.coeffs[0].zero_like();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = rhs.coeffs.get(i).unwrap_or(&zero);
            out.push(a.add(b));
        }
        OrePoly::new(out)
    }

    pub fn neg(&self) -> Self {
        OrePoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Ore multiplication: (f g)_k = sum_{i+j=k} f_i g_j^{q^i}.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if !self.coeffs[0].compatible(&rhs.coeffs[0]) {
            return Err(Error::MixedField);
        }
        let zero = self.coeffs[0].zero_like();
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = vec![zero; n];
        // twist rhs incrementally: after i steps, twisted[j] = g_j^{q^i}
        let mut twisted: Vec<C> = rhs.coeffs.clone();
        for (i, fi) in self.coeffs.iter().enumerate() {
            if i > 0 {
                for t in twisted.iter_mut() {
                    *t = t.frob_q();
                }
            }
            if fi.is_exact_zero() {
                continue;
            }
            for (j, gj) in twisted.iter().enumerate() {
                out[i + j] = out[i + j].add(&fi.mul(gj));
            }
        }
        Ok(OrePoly::new(out))
    }

    /// Left multiplication by a scalar: (c X) after f.
    pub fn scale_left(&self, c: &C) -> Self {
        OrePoly::new(self.coeffs.iter().map(|a| c.mul(a)).collect())
    }

    pub fn pow(&self, n: u64) -> Result<Self> {
        let mut acc = Self::one_like(&self.coeffs[0]);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            n >>= 1;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqContext;
    use crate::poly::PolyA;

    fn f2() -> FqContext {
        FqContext::prime(2).unwrap()
    }

    fn tpoly(ctx: &FqContext) -> RationalFn {
        RationalFn::from_poly(PolyA::t(ctx))
    }

    #[test]
    fn commutation_rule() {
        // tau * (c tau) = c^q tau^2
        let ctx = f2();
        let c = tpoly(&ctx);
        let zero = RationalFn::zero(&ctx);
        let one = RationalFn::one(&ctx);
        let tau = OrePoly::new(vec![zero.clone(), one.clone()]);
        let ctau = OrePoly::new(vec![zero.clone(), c.clone()]);
        let prod = tau.mul(&ctau).unwrap();
        assert_eq!(prod.tau_degree(), 2);
        assert_eq!(prod.coeff(2), c.frobenius(1));
    }

    #[test]
    fn t_tau_squared() {
        // (t tau)(t tau) = t * t^q tau^2 = t^3 tau^2 over F_2(t)
        let ctx = f2();
        let t = tpoly(&ctx);
        let zero = RationalFn::zero(&ctx);
        let f = OrePoly::new(vec![zero.clone(), t.clone()]);
        let prod = f.mul(&f).unwrap();
        assert_eq!(prod.tau_degree(), 2);
        assert_eq!(prod.coeff(2), t.pow(3));
        assert!(prod.coeff(0).is_zero());
        assert!(prod.coeff(1).is_zero());
    }

    #[test]
    fn identity() {
        let ctx = f2();
        let t = tpoly(&ctx);
        let f = OrePoly::new(vec![t.clone(), RationalFn::one(&ctx), t.clone()]);
        let one = OrePoly::one_like(&t);
        assert_eq!(f.mul(&one).unwrap(), f);
        assert_eq!(one.mul(&f).unwrap(), f);
    }

    #[test]
    fn degree_additivity() {
        let ctx = FqContext::prime(3).unwrap();
        let t = RationalFn::from_poly(PolyA::t(&ctx));
        let one = RationalFn::one(&ctx);
        let f = OrePoly::new(vec![t.clone(), one.clone()]);
        let g = OrePoly::new(vec![one.clone(), t.clone(), t.clone()]);
        let fg = f.mul(&g).unwrap();
        assert_eq!(fg.tau_degree(), f.tau_degree() + g.tau_degree());
    }

    #[test]
    fn mixed_field_rejected() {
        let c2 = RationalFn::one(&f2());
        let c3 = RationalFn::one(&FqContext::prime(3).unwrap());
        let f = OrePoly::scalar(c2);
        let g = OrePoly::scalar(c3);
        assert!(matches!(f.mul(&g), Err(Error::MixedField)));
    }
}
