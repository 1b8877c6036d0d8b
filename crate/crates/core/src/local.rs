//! Completions K_l at finite places and at infinity: truncated Laurent series
//! over the residue field with exact valuations and precision tracking.
//!
//! The model is equal characteristic: K_l = F_{q^d}((u)) with u = l(t). An
//! element either has a known exact valuation (its lowest stored coefficient is
//! nonzero) or is zero to its precision. Elements arising from Laurent
//! polynomials carry `Prec::Exact` and never lose digits.

use std::fmt;

use crate::error::{Error, Result};

use crate::place::PrimePlace;
use crate::poly::PolyA;
use crate::rational::RationalFn;
use crate::residue::ResidueField;

/// Precision marker: `Exact` for finite Laurent polynomials known exactly,
/// `At(p)` when coefficients are known for exponents < p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Prec {
    Exact,
    At(i64),
}

impl Prec {
    pub fn min(self, other: Prec) -> Prec {
        match (self, other) {
            (Prec::Exact, o) => o,
            (s, Prec::Exact) => s,
            (Prec::At(a), Prec::At(b)) => Prec::At(a.min(b)),
        }
    }

    pub fn offset(self, k: i64) -> Prec {
        match self {
            Prec::Exact => Prec::Exact,
            Prec::At(p) => Prec::At(p + k),
        }
    }

    pub fn scale(self, q: i64) -> Prec {
        match self {
            Prec::Exact => Prec::Exact,
            Prec::At(p) => Prec::At(p * q),
        }
    }

    /// Finite bound if any.
    pub fn finite(self) -> Option<i64> {
        match self {
            Prec::Exact => None,
            Prec::At(p) => Some(p),
        }
    }

    pub fn at_least(self, p: i64) -> bool {
        match self {
            Prec::Exact => true,
            Prec::At(x) => x >= p,
        }
    }
}

impl fmt::Display for Prec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prec::Exact => write!(f, "exact"),
            Prec::At(p) => write!(f, "{p}"),
        }
    }
}

/// A truncated Laurent series element of K_l.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalElem {
    place: PrimePlace,
    field: ResidueField,
    start: i64,
    coeffs: Vec<PolyA>,
    prec: Prec,
}

impl LocalElem {
    fn normalized(mut self) -> Self {
        if let Prec::At(p) = self.prec {
            let keep = (p - self.start).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.first().map_or(false, |c| c.is_zero()) {
            self.coeffs.remove(0);
            self.start += 1;
        }
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.start = 0;
        }
        self
    }

    pub fn from_terms(
        place: &PrimePlace,
        field: &ResidueField,
        start: i64,
        coeffs: Vec<PolyA>,
        prec: Prec,
    ) -> Self {
        LocalElem {
            place: place.clone(),
            field: field.clone(),
            start,
            coeffs,
            prec,
        }
        .normalized()
    }

    pub fn exact_zero(place: &PrimePlace, field: &ResidueField) -> Self {
        LocalElem {
            place: place.clone(),
            field: field.clone(),
            start: 0,
            coeffs: Vec::new(),
            prec: Prec::Exact,
        }
    }

    pub fn zero_to_prec(place: &PrimePlace, field: &ResidueField, prec: i64) -> Self {
        LocalElem {
            place: place.clone(),
            field: field.clone(),
            start: 0,
            coeffs: Vec::new(),
            prec: Prec::At(prec),
        }
    }

    /// c * u^k, exact.
    pub fn monomial(place: &PrimePlace, field: &ResidueField, k: i64, c: PolyA) -> Self {
        LocalElem {
            place: place.clone(),
            field: field.clone(),
            start: k,
            coeffs: vec![c],
            prec: Prec::Exact,
        }
        .normalized()
    }

    pub fn uniformizer(place: &PrimePlace, field: &ResidueField) -> Self {
        Self::monomial(place, field, 1, field.one())
    }

    pub fn one(place: &PrimePlace, field: &ResidueField) -> Self {
        Self::monomial(place, field, 0, field.one())
    }

    pub fn place(&self) -> &PrimePlace {
        &self.place
    }

    pub fn field(&self) -> &ResidueField {
        &self.field
    }

    pub fn prec(&self) -> Prec {
        self.prec
    }

    /// Exact valuation, or `None` if the element is zero to its precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.start)
        }
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec == Prec::Exact
    }

    /// Lower bound on the valuation: exact if nonzero, else the precision.
    /// `None` means the element is exactly zero (valuation +infinity).
    pub fn valuation_lower_bound(&self) -> Option<i64> {
        match self.valuation() {
            Some(v) => Some(v),
            None => self.prec.finite(),
        }
    }

    pub fn coeff(&self, e: i64) -> PolyA {
        if e < self.start || e >= self.start + self.coeffs.len() as i64 {
            self.field.zero()
        } else {
            self.coeffs[(e - self.start) as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&PolyA> {
        self.coeffs.first()
    }

    fn assert_same_space(&self, rhs: &Self) {
        assert!(
            self.place == rhs.place,
            "local elements at different places"
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_space(rhs);
        if self.is_exactly_zero() {
            return rhs.clone();
        }
        if rhs.is_exactly_zero() {
            return self.clone();
        }
        let prec = self.prec.min(rhs.prec);
        let start = match (self.valuation(), rhs.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => {
                return LocalElem {
                    place: self.place.clone(),
                    field: self.field.clone(),
                    start: 0,
                    coeffs: Vec::new(),
                    prec,
                }
            }
        };
        let end = match prec {
            Prec::At(p) => p,
            Prec::Exact => (self.start + self.coeffs.len() as i64)
                .max(rhs.start + rhs.coeffs.len() as i64),
        };
        let mut coeffs = Vec::with_capacity((end - start).max(0) as usize);
        for e in start..end {
            coeffs.push(self.field.add(&self.coeff(e), &rhs.coeff(e)));
        }
        LocalElem {
            place: self.place.clone(),
            field: self.field.clone(),
            start,
            coeffs,
            prec,
        }
        .normalized()
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        LocalElem {
            place: self.place.clone(),
            field: self.field.clone(),
            start: self.start,
            coeffs,
            prec: self.prec,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_space(rhs);
        if self.is_exactly_zero() || rhs.is_exactly_zero() {
            return Self::exact_zero(&self.place, &self.field);
        }
        // precision of the product from the error terms
        let prec = {
            let p1 = match (self.prec, rhs.valuation_lower_bound()) {
                (Prec::Exact, _) => Prec::Exact,
                (Prec::At(p), Some(v2)) => Prec::At(p + v2),
                (Prec::At(_), None) => Prec::Exact, // rhs exactly zero, handled above
            };
            let p2 = match (rhs.prec, self.valuation_lower_bound()) {
                (Prec::Exact, _) => Prec::Exact,
                (Prec::At(p), Some(v1)) => Prec::At(p + v1),
                (Prec::At(_), None) => Prec::Exact,
            };
            p1.min(p2)
        };
        if self.is_zero_to_prec() || rhs.is_zero_to_prec() {
            let p = prec
                .finite()
                .expect("product of zero-to-precision elements has finite precision");
            return Self::zero_to_prec(&self.place, &self.field, p);
        }
        let start = self.start + rhs.start;
        let full_len = self.coeffs.len() + rhs.coeffs.len() - 1;
        let keep = match prec {
            Prec::Exact => full_len,
            Prec::At(p) => ((p - start).max(0) as usize).min(full_len),
        };
        let mut coeffs = vec![self.field.zero(); keep];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= keep {
                continue;
            }
            let jmax = (keep - i).min(rhs.coeffs.len());
            for (j, b) in rhs.coeffs.iter().enumerate().take(jmax) {
                if b.is_zero() {
                    continue;
                }
                let prod = self.field.mul(a, b);
                coeffs[i + j] = self.field.add(&coeffs[i + j], &prod);
            }
        }
        LocalElem {
            place: self.place.clone(),
            field: self.field.clone(),
            start,
            coeffs,
            prec,
        }
        .normalized()
    }

    pub fn mul_residue(&self, c: &PolyA) -> Self {
        if c.is_zero() {
            return Self::exact_zero(&self.place, &self.field);
        }
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        LocalElem {
            place: self.place.clone(),
            field: self.field.clone(),
            start: self.start,
            coeffs,
            prec: self.prec,
        }
        .normalized()
    }

    /// Multiply by u^k.
    pub fn shift(&self, k: i64) -> Self {
        LocalElem {
            place: self.place.clone(),
            field: self.field.clone(),
            start: self.start + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec.offset(k),
        }
    }

    /// Drop information above the given precision.
    pub fn truncated(&self, p: i64) -> Self {
        let prec = self.prec.min(Prec::At(p));
        LocalElem {
            place: self.place.clone(),
            field: self.field.clone(),
            start: self.start,
            coeffs: self.coeffs.clone(),
            prec,
        }
        .normalized()
    }

    /// x -> x^q. In characteristic p this is coefficientwise: exponents scale
    /// by q and the error term scales too.
    pub fn frobenius_q(&self) -> Self {
        let q = self.field.ctx().q() as i64;
        if self.coeffs.is_empty() {
            return LocalElem {
                place: self.place.clone(),
                field: self.field.clone(),
                start: 0,
                coeffs: Vec::new(),
                prec: self.prec.scale(q),
            };
        }
        let len = (self.coeffs.len() - 1) * q as usize + 1;
        let mut coeffs = vec![self.field.zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * q as usize] = self.field.pow(c, self.field.ctx().q());
            }
        }
        LocalElem {
            place: self.place.clone(),
            field: self.field.clone(),
            start: self.start * q,
            coeffs,
            prec: self.prec.scale(q),
        }
        .normalized()
    }

    /// x -> x^{q^k}, optionally truncating intermediates to a precision cap.
    pub fn frobenius_q_pow(&self, k: u32, cap: Option<i64>) -> Self {
        let mut x = self.clone();
        for _ in 0..k {
            x = x.frobenius_q();
            if let Some(p) = cap {
                x = x.truncated(p);
            }
        }
        x
    }

    /// Inverse with at most `rel_digits` relative digits (fewer if the input
    /// precision does not support that many).
    pub fn inv_to(&self, rel_digits: i64) -> Result<Self> {
        let v = match self.valuation() {
            Some(v) => v,
            None => {
                return Err(match self.prec {
                    Prec::Exact => Error::DivisionByZero,
                    Prec::At(p) => Error::PrecisionExhausted(format!(
                        "inverting an element that is zero to precision {p}"
                    )),
                })
            }
        };
        // exact monomial: exact inverse
        if self.prec == Prec::Exact && self.coeffs.len() == 1 {
            let c = self.field.inv(&self.coeffs[0])?;
            return Ok(Self::monomial(&self.place, &self.field, -v, c));
        }
        let avail_rel = match self.prec {
            Prec::Exact => rel_digits,
            Prec::At(p) => (p - v).min(rel_digits),
        };
        if avail_rel <= 0 {
            return Err(Error::PrecisionExhausted(
                "no relative digits available for inversion".into(),
            ));
        }
        let n = avail_rel as usize;
        let c0_inv = self.field.inv(&self.coeffs[0])?;
        let mut d = Vec::with_capacity(n);
        d.push(c0_inv.clone());
        for k in 1..n {
            let mut s = self.field.zero();
            for j in 1..=k {
                let cj = if j < self.coeffs.len() {
                    &self.coeffs[j]
                } else {
                    continue;
                };
                let t = self.field.mul(cj, &d[k - j]);
                s = self.field.add(&s, &t);
            }
            d.push(self.field.neg(&self.field.mul(&c0_inv, &s)));
        }
        Ok(LocalElem {
            place: self.place.clone(),
            field: self.field.clone(),
            start: -v,
            coeffs: d,
            prec: Prec::At(-v + avail_rel),
        }
        .normalized())
    }

    pub fn div_to(&self, rhs: &Self, rel_digits: i64) -> Result<Self> {
        Ok(self.mul(&rhs.inv_to(rel_digits)?))
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::one(&self.place, &self.field);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }
}

impl fmt::Display for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let val = match self.valuation() {
            Some(v) => v.to_string(),
            None => "zero".to_string(),
        };
        let coeffs: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| c.to_string())
            .collect();
        write!(
            f,
            "place={} prec={} val={} coeffs=[{}]",
            self.place,
            self.prec,
            val,
            coeffs.join(", ")
        )
    }
}

/// The expansion of t at a place, to the requested precision. At a degree-1
/// place this is exact; at higher degree it is a Newton-iterated series
/// T with l(T) = u and T = alpha mod u, alpha the canonical root of l.
pub fn expand_t(place: &PrimePlace, prec: i64) -> Result<LocalElem> {
    let field = match place {
        PrimePlace::Finite(g) => ResidueField::for_place(g.ctx(), place),
        PrimePlace::Infinite => {
            return Err(Error::InvalidInput(
                "t is not integral at infinity; use embeddings directly".into(),
            ))
        }
    };
    let l = place.generator().unwrap();
    let d = l.degree().unwrap();
    let alpha = field.canonical_root();
    if d == 1 {
        // T = alpha + u exactly
        return Ok(LocalElem::from_terms(
            place,
            &field,
            0,
            vec![alpha, field.one()],
            Prec::Exact,
        ));
    }
    let lp = l.derivative();
    let u = LocalElem::uniformizer(place, &field);
    let mut t_cur = LocalElem::from_terms(place, &field, 0, vec![alpha], Prec::At(1));
    let mut cur_prec: i64 = 1;
    while cur_prec < prec {
        cur_prec = (cur_prec * 2).min(prec);
        // refresh to the new target precision: coefficients above the old
        // precision are garbage until the update lands
        let t_ext = LocalElem {
            place: t_cur.place.clone(),
            field: t_cur.field.clone(),
            start: t_cur.start,
            coeffs: t_cur.coeffs.clone(),
            prec: Prec::At(cur_prec),
        };
        let f_val = eval_base_poly_local(l, &t_ext).sub(&u);
        let fp_val = eval_base_poly_local(&lp, &t_ext);
        let corr = f_val.div_to(&fp_val, cur_prec)?;
        t_cur = t_ext.sub(&corr).truncated(cur_prec);
    }
    Ok(t_cur)
}

/// Evaluate a polynomial with F_q coefficients at a local element (sparse
/// exponents handled by binary powering).
pub fn eval_base_poly_local(f: &PolyA, x: &LocalElem) -> LocalElem {
    let field = x.field().clone();
    let place = x.place().clone();
    let mut acc = LocalElem::exact_zero(&place, &field);
    // group by ascending exponent, reuse powers
    let mut cur_pow = LocalElem::one(&place, &field);
    let mut cur_exp: u64 = 0;
    for &(e, c) in f.terms() {
        let delta = e - cur_exp;
        if delta > 0 {
            cur_pow = cur_pow.mul(&x.pow(delta));
            cur_exp = e;
        }
        let term = cur_pow.mul_residue(&field.from_fq(c));
        acc = acc.add(&term);
    }
    acc
}

/// Embed a polynomial a(t) in K_l to the given precision.
pub fn embed_poly(a: &PolyA, place: &PrimePlace, prec: i64) -> Result<LocalElem> {
    let ctx = a.ctx().clone();
    let field = ResidueField::for_place(&ctx, place);
    match place {
        PrimePlace::Infinite => {
            // t = u^{-1} exactly
            let terms: Vec<(i64, PolyA)> = a
                .terms()
                .iter()
                .map(|&(e, c)| (-(e as i64), field.from_fq(c)))
                .collect();
            let start = terms.iter().map(|&(e, _)| e).min().unwrap_or(0);
            let end = terms.iter().map(|&(e, _)| e).max().unwrap_or(0);
            let mut coeffs = vec![field.zero(); (end - start + 1) as usize];
            for (e, c) in terms {
                coeffs[(e - start) as usize] = c;
            }
            Ok(LocalElem::from_terms(place, &field, start, coeffs, Prec::Exact))
        }
        PrimePlace::Finite(l) => {
            if a.is_zero() {
                return Ok(LocalElem::exact_zero(place, &field));
            }
            let d = l.degree().unwrap();
            if d == 1 {
                let t_exp = expand_t(place, prec)?; // exact
                Ok(eval_base_poly_local(a, &t_exp))
            } else {
                // valuation of a is bounded by deg(a)/d; expand T far enough
                let va = a.valuation_at(l)? as i64;
                let t_exp = expand_t(place, prec.max(va + 1) + 2)?;
                Ok(eval_base_poly_local(a, &t_exp).truncated(prec.max(va + 1) + 2))
            }
        }
    }
}

/// Embed a rational function x in K_l. The result reports its attained
/// precision, at least the requested one. Zero embeds as the exact zero.
pub fn complete(x: &RationalFn, place: &PrimePlace, prec: i64) -> Result<LocalElem> {
    let ctx = x.ctx().clone();
    let field = ResidueField::for_place(&ctx, place);
    if x.is_zero() {
        return Ok(LocalElem::exact_zero(place, &field));
    }
    let v = place.valuation(x)?;
    if prec <= v {
        return Err(Error::PrecisionBelowValuation {
            requested: prec,
            valuation: v,
        });
    }
    let vd = place.valuation_poly(x.den())?;
    // working precision: enough digits that the quotient still knows `prec`
    let work = prec + vd.abs() + 2;
    let num = embed_poly(x.num(), place, work)?;
    if x.den().is_one() {
        return Ok(num);
    }
    let den = embed_poly(x.den(), place, work)?;
    let rel = work - v;
    let out = num.div_to(&den, rel)?;
    if !out.prec().at_least(prec) {
        return Err(Error::PrecisionNotAttained {
            target: prec,
            attained: out.prec().finite().unwrap_or(i64::MAX),
            context: format!("embedding {x} at {place}"),
        });
    }
    Ok(out.truncated(prec.max(out.prec().finite().unwrap_or(prec))))
}

/// Additive-polynomial evaluation: sum of c_i x^{q^i} over given (i, c_i).
/// `cap`: truncate intermediate powers to this precision to bound memory.
pub fn eval_additive_terms(
    terms: &[(u32, LocalElem)],
    x: &LocalElem,
    cap: Option<i64>,
) -> Result<LocalElem> {
    let place = x.place().clone();
    let field = x.field().clone();
    for (_, c) in terms {
        if c.place() != &place {
            return Err(Error::MixedPlace);
        }
    }
    let mut acc = LocalElem::exact_zero(&place, &field);
    let mut pow = x.clone(); // x^{q^k}
    let mut k = 0u32;
    for &(i, ref c) in terms {
        while k < i {
            pow = pow.frobenius_q();
            if let Some(p) = cap {
                pow = pow.truncated(p);
            }
            k += 1;
        }
        acc = acc.add(&c.mul(&pow));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::{Fq, FqContext};

    fn f2() -> FqContext {
        FqContext::prime(2).unwrap()
    }

    fn place_t(ctx: &FqContext) -> PrimePlace {
        PrimePlace::finite(PolyA::t(ctx)).unwrap()
    }

    #[test]
    fn geometric_series() {
        // 1/(1-t) at (t), P=4 -> 1 + t + t^2 + t^3 + O(t^4)
        let ctx = f2();
        let one = PolyA::one(&ctx);
        let one_minus_t = one.sub(&PolyA::t(&ctx));
        let x = RationalFn::new(PolyA::one(&ctx), one_minus_t).unwrap();
        let pl = place_t(&ctx);
        let e = complete(&x, &pl, 4).unwrap();
        assert_eq!(e.valuation(), Some(0));
        assert!(e.prec().at_least(4));
        for k in 0..4 {
            assert!(e.coeff(k).is_one(), "coefficient at {k}");
        }
    }

    #[test]
    fn one_over_t() {
        let ctx = f2();
        let x = RationalFn::new(PolyA::one(&ctx), PolyA::t(&ctx)).unwrap();
        let pl = place_t(&ctx);
        let e = complete(&x, &pl, 3).unwrap();
        assert_eq!(e.valuation(), Some(-1));
        assert!(e.coeff(-1).is_one());
        assert!(e.coeff(0).is_zero());
    }

    #[test]
    fn precision_below_valuation_errors() {
        let ctx = f2();
        let x = RationalFn::from_poly(PolyA::t(&ctx));
        let pl = place_t(&ctx);
        assert!(matches!(
            complete(&x, &pl, 1),
            Err(Error::PrecisionBelowValuation { .. })
        ));
    }

    #[test]
    fn expand_t_at_quadratic_place() {
        // t at (t^2+t+1) over F_2: residue alpha is a root, and l(T) = u holds
        // to precision
        let ctx = f2();
        let l = PolyA::from_coeffs(&ctx, &[Fq::ONE, Fq::ONE, Fq::ONE]);
        let pl = PrimePlace::finite(l.clone()).unwrap();
        let t_exp = expand_t(&pl, 8).unwrap();
        assert_eq!(t_exp.valuation(), Some(0));
        let field = t_exp.field().clone();
        let alpha = t_exp.coeff(0);
        assert!(field.eval_base_poly(&l, &alpha).is_zero());
        // re-substitution: l(T) - u is zero to precision >= 8
        let u = LocalElem::uniformizer(&pl, &field);
        let resub = eval_base_poly_local(&l, &t_exp).sub(&u);
        assert!(resub.is_zero_to_prec());
        assert!(resub.prec().at_least(8));
    }

    #[test]
    fn embed_is_ring_homomorphism_to_precision() {
        let ctx = FqContext::prime(3).unwrap();
        let pl = place_t(&ctx);
        let t = PolyA::t(&ctx);
        let a = RationalFn::new(PolyA::one(&ctx), t.clone().add(&PolyA::one(&ctx))).unwrap();
        let b = RationalFn::new(t.clone(), t.mul(&t).add(&PolyA::one(&ctx))).unwrap();
        let p = 12;
        let ea = complete(&a, &pl, p).unwrap();
        let eb = complete(&b, &pl, p).unwrap();
        let esum = complete(&a.add(&b), &pl, p).unwrap();
        let eprod = complete(&a.mul(&b), &pl, p).unwrap();
        let d1 = ea.add(&eb).sub(&esum);
        assert!(d1.is_zero_to_prec() && d1.prec().at_least(p));
        let d2 = ea.mul(&eb).sub(&eprod);
        assert!(d2.is_zero_to_prec() && d2.prec().at_least(p));
    }

    #[test]
    fn valuation_laws() {
        let ctx = f2();
        let pl = place_t(&ctx);
        let t = PolyA::t(&ctx);
        let samples = [
            RationalFn::from_poly(t.clone()),
            RationalFn::new(PolyA::one(&ctx), t.clone()).unwrap(),
            RationalFn::from_poly(t.clone().add(&PolyA::one(&ctx))),
            RationalFn::new(t.clone().mul(&t), t.clone().add(&PolyA::one(&ctx))).unwrap(),
        ];
        for x in &samples {
            for y in &samples {
                let ex = complete(x, &pl, 10).unwrap();
                let ey = complete(y, &pl, 10).unwrap();
                let vx = ex.valuation().unwrap();
                let vy = ey.valuation().unwrap();
                assert_eq!(ex.mul(&ey).valuation(), Some(vx + vy));
                let s = ex.add(&ey);
                if let Some(vs) = s.valuation() {
                    assert!(vs >= vx.min(vy));
                    if vx != vy {
                        assert_eq!(vs, vx.min(vy));
                    }
                }
            }
        }
    }

    #[test]
    fn exact_inverse_of_monomial() {
        let ctx = f2();
        let pl = PrimePlace::infinite();
        let field = ResidueField::for_place(&ctx, &pl);
        let u = LocalElem::uniformizer(&pl, &field);
        let inv = u.inv_to(50).unwrap();
        assert_eq!(inv.prec(), Prec::Exact);
        assert_eq!(inv.valuation(), Some(-1));
    }

    #[test]
    fn frobenius_precision_scales() {
        let ctx = f2();
        let pl = place_t(&ctx);
        let field = ResidueField::for_place(&ctx, &pl);
        let x = LocalElem::from_terms(
            &pl,
            &field,
            -1,
            vec![field.one(), field.one()],
            Prec::At(3),
        );
        let y = x.frobenius_q();
        assert_eq!(y.valuation(), Some(-2));
        assert_eq!(y.prec(), Prec::At(6));
    }
}
