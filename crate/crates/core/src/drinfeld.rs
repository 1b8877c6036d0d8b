//! Drinfeld A-modules of generic characteristic over F = F_q(t): the map
//! phi_a, torsion polynomials, reduction analysis at a finite place, and the
//! torsion valuation window read off the Newton polygon.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::fq::FqContext;
use crate::local::{complete, eval_additive_terms, LocalElem, Prec};
use crate::newton::{additive_polygon, NewtonPolygon};
use crate::ore::OrePoly;
use crate::place::PrimePlace;
use crate::poly::PolyA;
use crate::rational::RationalFn;

/// phi, given by phi_t = g_0 + g_1 tau + ... + g_r tau^r with g_0 = t.
#[derive(Clone, PartialEq, Debug)]
pub struct DrinfeldModule {
    ctx: FqContext,
    coeffs: Vec<RationalFn>,
}

impl DrinfeldModule {
    pub fn new(ctx: &FqContext, coeffs: Vec<RationalFn>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidInput("rank must be at least 1".into()));
        }
        let t = RationalFn::from_poly(PolyA::t(ctx));
        if coeffs[0] != t {
            return Err(Error::InvalidInput(
                "generic characteristic requires g_0 = t".into(),
            ));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::InvalidInput("leading coefficient must be nonzero".into()));
        }
        Ok(DrinfeldModule {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    /// The Carlitz module phi_t = t + tau.
    pub fn carlitz(ctx: &FqContext) -> Self {
        DrinfeldModule {
            ctx: ctx.clone(),
            coeffs: vec![
                RationalFn::from_poly(PolyA::t(ctx)),
                RationalFn::one(ctx),
            ],
        }
    }

    pub fn ctx(&self) -> &FqContext {
        &self.ctx
    }

    pub fn rank(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[RationalFn] {
        &self.coeffs
    }

    pub fn phi_t(&self) -> OrePoly<RationalFn> {
        OrePoly::new(self.coeffs.clone())
    }

    /// The image phi_a, computed by Horner in the Ore ring.
    pub fn phi_of(&self, a: &PolyA) -> Result<OrePoly<RationalFn>> {
        if a.is_zero() {
            return Err(Error::ZeroOperand);
        }
        let phi_t = self.phi_t();
        let deg = a.degree().unwrap();
        let mut acc = OrePoly::scalar(RationalFn::from_poly(PolyA::constant(
            &self.ctx,
            a.coeff(deg),
        )));
        for k in (0..deg).rev() {
            acc = phi_t.mul(&acc)?;
            let c = a.coeff(k);
            if !c.is_zero() {
                let scal = OrePoly::scalar(RationalFn::from_poly(PolyA::constant(&self.ctx, c)));
                acc = acc.add(&scal);
            }
        }
        Ok(acc)
    }

    /// The additive torsion polynomial phi_a(X) = sum c_i X^{q^i}.
    pub fn torsion_poly(&self, a: &PolyA) -> Result<TorsionPolynomial> {
        let ore = self.phi_of(a)?;
        Ok(TorsionPolynomial {
            operand: a.clone(),
            coeffs: ore.coeffs().to_vec(),
        })
    }

    /// Reduction analysis at a finite place.
    pub fn stable_model(&self, place: &PrimePlace) -> Result<ReductionData> {
        let l = place
            .generator()
            .ok_or_else(|| Error::InvalidInput("stable_model needs a finite place".into()))?;
        let q = self.ctx.q();
        let mut vals: Vec<(u32, i64)> = Vec::new();
        for (i, g) in self.coeffs.iter().enumerate().skip(1) {
            if !g.is_zero() {
                vals.push((i as u32, place.valuation(g)?));
            }
        }
        let (mu, r_psi) = twist_slope(&vals, q);
        let kind = if mu.is_integer() {
            if r_psi == self.rank() {
                ReductionKind::Good
            } else {
                ReductionKind::StableBad
            }
        } else {
            let tame = mu.denom().clone();
            ReductionKind::PotentiallyStable {
                tame_degree: tame.magnitude().try_into().unwrap_or(u64::MAX),
            }
        };
        // twisted coefficients stay in F iff mu (q^i - 1) is integral for
        // every nonzero coefficient
        let twistable = vals.iter().all(|&(i, _)| {
            let f = &mu * BigRational::from(BigInt::from(q.pow(i) as i64 - 1));
            f.is_integer()
        });
        let twisted = if twistable {
            let mut out = vec![self.coeffs[0].clone()];
            for (i, g) in self.coeffs.iter().enumerate().skip(1) {
                if g.is_zero() {
                    out.push(g.clone());
                    continue;
                }
                let shift = (&mu * BigRational::from(BigInt::from(q.pow(i as u32) as i64 - 1)))
                    .to_integer();
                let shift: i64 = (&shift).try_into().expect("desk-scale twist exponent");
                let lp = RationalFn::from_poly(l.clone());
                let tw = if shift >= 0 {
                    g.div(&lp.pow(shift as u64))?
                } else {
                    g.mul(&lp.pow((-shift) as u64))
                };
                out.push(tw);
            }
            Some(out)
        } else {
            None
        };
        Ok(ReductionData {
            place: place.clone(),
            twist_slope: mu,
            reduction_rank: r_psi,
            kind,
            twisted,
        })
    }

    /// The valuation window of Prop-style Newton polygon analysis: every
    /// nonzero root of phi_{p^m} has valuation in [lower, upper].
    pub fn torsion_valuation_bounds(
        &self,
        l: &PrimePlace,
        p: &PrimePlace,
        m: u32,
    ) -> Result<(BigRational, BigRational)> {
        let pgen = p
            .generator()
            .ok_or_else(|| Error::InvalidInput("torsion level needs a finite prime".into()))?;
        for g in self.coeffs.iter().skip(1) {
            if !g.is_zero() && l.valuation(g)? < 0 {
                return Err(Error::NonIntegralModel);
            }
        }
        let q = self.ctx.q();
        let pm = pgen.pow(m as u64);
        let v_pm = l.valuation_poly(&pm)?;
        let tors = self.torsion_poly(&pm)?;
        let lead = tors.leading_coeff();
        let v_a = l.valuation(&lead)?;
        if v_a < 0 {
            return Err(Error::NonIntegralModel);
        }
        let degpm = pm.degree().unwrap() as u32 * 1;
        let upper = BigRational::new(BigInt::from(v_pm), BigInt::from(q as i64 - 1));
        let denom = BigInt::from(q).pow(self.rank() * degpm - 1) * BigInt::from(q as i64 - 1);
        let lower = BigRational::new(BigInt::from(-v_a), denom);
        Ok((upper, lower))
    }

    /// Newton polygon of phi_{a} at a finite place.
    pub fn torsion_newton_polygon(&self, a: &PolyA, l: &PrimePlace) -> Result<NewtonPolygon> {
        let tors = self.torsion_poly(a)?;
        tors.newton_polygon(l)
    }
}

/// The additive polynomial phi_a(X) = sum c_i X^{q^i}; c_0 = a and the top
/// coefficient is the quantity a(p^m) entering the break bounds.
#[derive(Clone, PartialEq, Debug)]
pub struct TorsionPolynomial {
    operand: PolyA,
    coeffs: Vec<RationalFn>,
}

impl TorsionPolynomial {
    pub fn operand(&self) -> &PolyA {
        &self.operand
    }

    /// Coefficient of X^{q^i}.
    pub fn coeff(&self, i: usize) -> RationalFn {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| RationalFn::zero(self.operand.ctx()))
    }

    pub fn coeffs(&self) -> &[RationalFn] {
        &self.coeffs
    }

    pub fn tau_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The initial coefficient in the product form: the top one.
    pub fn leading_coeff(&self) -> RationalFn {
        self.coeffs.last().unwrap().clone()
    }

    pub fn q(&self) -> u64 {
        self.operand.ctx().q()
    }

    /// Number of roots with multiplicity: q^{tau-degree}.
    pub fn root_count(&self) -> u64 {
        self.q().pow(self.tau_degree() as u32)
    }

    /// Newton polygon of the coefficient valuations at a finite place.
    pub fn newton_polygon(&self, l: &PrimePlace) -> Result<NewtonPolygon> {
        let vals: Vec<(u32, Option<BigRational>)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let v = if c.is_zero() {
                    None
                } else {
                    Some(BigRational::from(BigInt::from(l.valuation(c).unwrap())))
                };
                (i as u32, v)
            })
            .collect();
        additive_polygon(self.q(), &vals)
    }

    /// Evaluate at a local element, embedding the coefficients at the given
    /// precision. Errors when the result is zero to precision without being
    /// provably zero.
    pub fn eval_local(&self, x: &LocalElem, prec: i64) -> Result<LocalElem> {
        let out = self.eval_local_raw(x, prec)?;
        if out.is_zero_to_prec() && out.prec() != Prec::Exact {
            return Err(Error::PrecisionExhausted(format!(
                "additive evaluation is zero to precision {} but not provably zero",
                out.prec()
            )));
        }
        Ok(out)
    }

    /// Same evaluation without the zero-to-precision error policy.
    pub fn eval_local_raw(&self, x: &LocalElem, prec: i64) -> Result<LocalElem> {
        let place = x.place().clone();
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push((i as u32, complete(c, &place, prec)?));
        }
        eval_additive_terms(&terms, x, None)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ReductionKind {
    Good,
    StableBad,
    /// Stable only after a tame extension of the given ramification degree.
    PotentiallyStable { tame_degree: u64 },
}

/// Result of reduction analysis at a finite place.
#[derive(Clone, Debug)]
pub struct ReductionData {
    pub place: PrimePlace,
    /// mu = min_i v(g_i)/(q^i - 1).
    pub twist_slope: BigRational,
    /// Rank of the stable reduction.
    pub reduction_rank: u32,
    pub kind: ReductionKind,
    /// mu-twisted coefficients, when the twist stays in F.
    pub twisted: Option<Vec<RationalFn>>,
}

/// Shared twist-slope computation: vals lists (i, v(g_i)) for the nonzero
/// coefficients with i >= 1. Returns (mu, r_psi).
pub fn twist_slope(vals: &[(u32, i64)], q: u64) -> (BigRational, u32) {
    assert!(!vals.is_empty());
    let mut mu: Option<BigRational> = None;
    for &(i, v) in vals {
        let s = BigRational::new(BigInt::from(v), BigInt::from(q.pow(i) as i64 - 1));
        if mu.as_ref().map_or(true, |m| &s < m) {
            mu = Some(s);
        }
    }
    let mu = mu.unwrap();
    let mut r_psi = 0;
    for &(i, v) in vals {
        let attained = BigRational::from(BigInt::from(v))
            == &mu * BigRational::from(BigInt::from(q.pow(i) as i64 - 1));
        if attained {
            r_psi = r_psi.max(i);
        }
    }
    (mu, r_psi)
}

/// Assert that a rational is a nonnegative integer and return it.
pub fn expect_nonneg_integer(x: &BigRational) -> Option<u64> {
    if x.is_integer() && !x.is_negative() {
        (&x.to_integer()).try_into().ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::{rat, rat_int};

    fn f2() -> FqContext {
        FqContext::prime(2).unwrap()
    }
    fn f3() -> FqContext {
        FqContext::prime(3).unwrap()
    }

    fn place_t(ctx: &FqContext) -> PrimePlace {
        PrimePlace::finite(PolyA::t(ctx)).unwrap()
    }

    fn poly(ctx: &FqContext, coeffs: &[i64]) -> PolyA {
        let v: Vec<_> = coeffs.iter().map(|&c| ctx.from_int(c)).collect();
        PolyA::from_coeffs(ctx, &v)
    }

    #[test]
    fn phi_of_constant_is_scalar() {
        let ctx = f3();
        let phi = DrinfeldModule::carlitz(&ctx);
        let c = poly(&ctx, &[2]);
        let img = phi.phi_of(&c).unwrap();
        assert_eq!(img.tau_degree(), 0);
        assert_eq!(img.coeff(0), RationalFn::from_poly(c));
    }

    #[test]
    fn carlitz_t_squared() {
        // phi_{t^2} = t^2 + (t^q + t) tau + tau^2
        let ctx = f3();
        let phi = DrinfeldModule::carlitz(&ctx);
        let t2 = poly(&ctx, &[0, 0, 1]);
        let img = phi.phi_of(&t2).unwrap();
        assert_eq!(img.tau_degree(), 2);
        assert_eq!(img.coeff(0), RationalFn::from_poly(t2));
        let expected = poly(&ctx, &[0, 1, 0, 1]); // t + t^3
        assert_eq!(img.coeff(1), RationalFn::from_poly(expected));
        assert_eq!(img.coeff(2), RationalFn::one(&ctx));
    }

    #[test]
    fn rank2_phi_t_verbatim() {
        let ctx = f2();
        let g1 = RationalFn::from_poly(poly(&ctx, &[1, 1]));
        let g2 = RationalFn::from_poly(poly(&ctx, &[0, 0, 1]));
        let phi = DrinfeldModule::new(
            &ctx,
            vec![
                RationalFn::from_poly(PolyA::t(&ctx)),
                g1.clone(),
                g2.clone(),
            ],
        )
        .unwrap();
        let img = phi.phi_of(&PolyA::t(&ctx)).unwrap();
        assert_eq!(img.coeff(0), RationalFn::from_poly(PolyA::t(&ctx)));
        assert_eq!(img.coeff(1), g1);
        assert_eq!(img.coeff(2), g2);
    }

    #[test]
    fn torsion_poly_rank2() {
        // phi_t = t + tau + t tau^2 over F_2(t), a = t -> tX + X^2 + tX^4
        let ctx = f2();
        let phi = DrinfeldModule::new(
            &ctx,
            vec![
                RationalFn::from_poly(PolyA::t(&ctx)),
                RationalFn::one(&ctx),
                RationalFn::from_poly(PolyA::t(&ctx)),
            ],
        )
        .unwrap();
        let tors = phi.torsion_poly(&PolyA::t(&ctx)).unwrap();
        assert_eq!(tors.tau_degree(), 2);
        assert_eq!(tors.leading_coeff(), RationalFn::from_poly(PolyA::t(&ctx)));
        assert_eq!(tors.coeff(0), RationalFn::from_poly(PolyA::t(&ctx)));
        assert_eq!(tors.root_count(), 4);
    }

    #[test]
    fn phi_torsion_evaluates_to_exact_zero_on_torsion_point() {
        // q=2: phi_t(t) = t*t + t^2 = 0 exactly at the place (t)
        let ctx = f2();
        let phi = DrinfeldModule::carlitz(&ctx);
        let tors = phi.torsion_poly(&PolyA::t(&ctx)).unwrap();
        let pl = place_t(&ctx);
        let x = complete(&RationalFn::from_poly(PolyA::t(&ctx)), &pl, 10).unwrap();
        let out = tors.eval_local(&x, 10).unwrap();
        assert!(out.is_exactly_zero());
    }

    #[test]
    fn identity_evaluation() {
        let ctx = f2();
        let phi = DrinfeldModule::carlitz(&ctx);
        let one = poly(&ctx, &[1]);
        let tors = phi.torsion_poly(&one).unwrap();
        let pl = place_t(&ctx);
        let x = complete(
            &RationalFn::new(PolyA::one(&ctx), PolyA::t(&ctx)).unwrap(),
            &pl,
            8,
        )
        .unwrap();
        let out = tors.eval_local(&x, 8).unwrap();
        assert_eq!(out.valuation(), x.valuation());
    }

    #[test]
    fn stable_model_examples() {
        let ctx = f3();
        let pl = place_t(&ctx);
        let t = RationalFn::from_poly(PolyA::t(&ctx));
        // g_1 unit, g_2 = l: mu = 0, r_psi = 1, stable-bad
        let phi = DrinfeldModule::new(
            &ctx,
            vec![t.clone(), RationalFn::one(&ctx), t.clone()],
        )
        .unwrap();
        let red = phi.stable_model(&pl).unwrap();
        assert_eq!(red.twist_slope, rat_int(0));
        assert_eq!(red.reduction_rank, 1);
        assert_eq!(red.kind, ReductionKind::StableBad);

        // both units: good
        let phi2 = DrinfeldModule::new(
            &ctx,
            vec![t.clone(), RationalFn::one(&ctx), RationalFn::one(&ctx)],
        )
        .unwrap();
        let red2 = phi2.stable_model(&pl).unwrap();
        assert_eq!(red2.kind, ReductionKind::Good);
        assert_eq!(red2.reduction_rank, 2);

        // rank 1, g_1 = 1/l: mu = -1/(q-1) = -1/2, potentially stable,
        // tame degree q-1 = 2
        let phi3 = DrinfeldModule::new(
            &ctx,
            vec![t.clone(), t.inv().unwrap()],
        )
        .unwrap();
        let red3 = phi3.stable_model(&pl).unwrap();
        assert_eq!(red3.twist_slope, rat(-1, 2));
        assert_eq!(
            red3.kind,
            ReductionKind::PotentiallyStable { tame_degree: 2 }
        );
        // the twisted coefficient tuple still lives in F: g_1 * l^{-mu(q-1)}
        let tw = red3.twisted.as_ref().unwrap();
        assert_eq!(tw[1], RationalFn::one(&ctx));
    }

    #[test]
    fn twisted_model_is_integral_with_unit_reduction() {
        let ctx = f2();
        let pl = place_t(&ctx);
        let t = RationalFn::from_poly(PolyA::t(&ctx));
        // g_1 = 1/t^2: mu = -2 integral, twist by l^2
        let phi = DrinfeldModule::new(
            &ctx,
            vec![t.clone(), t.pow(2).inv().unwrap()],
        )
        .unwrap();
        let red = phi.stable_model(&pl).unwrap();
        assert_eq!(red.kind, ReductionKind::Good);
        let tw = red.twisted.as_ref().unwrap();
        for (i, g) in tw.iter().enumerate().skip(1) {
            if g.is_zero() {
                continue;
            }
            let v = pl.valuation(g).unwrap();
            assert!(v >= 0);
            if i as u32 == red.reduction_rank {
                assert_eq!(v, 0);
            }
        }
    }

    #[test]
    fn torsion_bounds_carlitz_q3() {
        let ctx = f3();
        let phi = DrinfeldModule::carlitz(&ctx);
        let pl = place_t(&ctx);
        let (upper, lower) = phi.torsion_valuation_bounds(&pl, &pl, 1).unwrap();
        assert_eq!(upper, rat(1, 2));
        assert_eq!(lower, rat_int(0));
        // actual nonzero root valuation is 1/2
        let np = phi
            .torsion_newton_polygon(&PolyA::t(&ctx), &pl)
            .unwrap();
        let rv = np.root_valuations();
        assert_eq!(rv, vec![(rat(1, 2), 2)]);
        assert!(rv.iter().all(|(v, _)| v >= &lower && v <= &upper));
    }

    #[test]
    fn torsion_bounds_away_from_p() {
        // l does not divide p, good reduction: window collapses to [0, 0]
        let ctx = f3();
        let phi = DrinfeldModule::carlitz(&ctx);
        let l = place_t(&ctx);
        let p = PrimePlace::finite(poly(&ctx, &[1, 1])).unwrap(); // t + 1
        let (upper, lower) = phi.torsion_valuation_bounds(&l, &p, 1).unwrap();
        assert_eq!(upper, rat_int(0));
        assert_eq!(lower, rat_int(0));
    }

    #[test]
    fn non_integral_model_rejected() {
        let ctx = f2();
        let pl = place_t(&ctx);
        let t = RationalFn::from_poly(PolyA::t(&ctx));
        let phi = DrinfeldModule::new(&ctx, vec![t.clone(), t.inv().unwrap()]).unwrap();
        assert!(matches!(
            phi.torsion_valuation_bounds(&pl, &pl, 1),
            Err(Error::NonIntegralModel)
        ));
    }

    #[test]
    fn zero_operand_errors() {
        let ctx = f2();
        let phi = DrinfeldModule::carlitz(&ctx);
        assert!(matches!(
            phi.phi_of(&PolyA::zero(&ctx)),
            Err(Error::ZeroOperand)
        ));
    }
}
