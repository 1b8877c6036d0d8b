//! Polynomials A = F_q[t], stored sparsely.
//!
//! Sparse storage matters: q-power Frobenius maps scale exponents by q, so the
//! torsion polynomials of higher-rank modules have terms of astronomically
//! large degree but only polynomially many of them.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fq::{Fq, FqContext};

/// Default cap on q^d for irreducible enumeration.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 22;

/// An element of F_q[t]: strictly increasing exponents, nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyA {
    ctx: FqContext,
    terms: Vec<(u64, Fq)>,
}

impl PolyA {
    pub fn zero(ctx: &FqContext) -> Self {
        PolyA {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ctx: &FqContext) -> Self {
        Self::constant(ctx, Fq::ONE)
    }

    pub fn constant(ctx: &FqContext, c: Fq) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(0, c)] };
        PolyA {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// The monomial c * t^k.
    pub fn monomial(ctx: &FqContext, k: u64, c: Fq) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(k, c)] };
        PolyA {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// t itself.
    pub fn t(ctx: &FqContext) -> Self {
        Self::monomial(ctx, 1, Fq::ONE)
    }

    /// Build from dense coefficients, constant first.
    pub fn from_coeffs(ctx: &FqContext, coeffs: &[Fq]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i as u64, c))
            .collect();
        PolyA {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn from_terms(ctx: &FqContext, mut terms: Vec<(u64, Fq)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by_key(|&(e, _)| e);
        // merge duplicates
        let mut out: Vec<(u64, Fq)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == e {
                    last.1 = ctx.add(last.1, c);
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            out.push((e, c));
        }
        PolyA {
            ctx: ctx.clone(),
            terms: out,
        }
    }

    pub fn ctx(&self) -> &FqContext {
        &self.ctx
    }

    pub fn terms(&self) -> &[(u64, Fq)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (0, Fq::ONE)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.first().map_or(true, |&(e, _)| e == 0)
    }

    /// Degree; `None` is the distinguished marker for deg 0 = -infinity.
    pub fn degree(&self) -> Option<u64> {
        self.terms.last().map(|&(e, _)| e)
    }

    /// Order at t = 0, i.e. smallest exponent with nonzero coefficient.
    pub fn order(&self) -> Option<u64> {
        self.terms.first().map(|&(e, _)| e)
    }

    pub fn leading_coeff(&self) -> Fq {
        self.terms.last().map_or(Fq::ZERO, |&(_, c)| c)
    }

    pub fn coeff(&self, e: u64) -> Fq {
        match self.terms.binary_search_by_key(&e, |&(x, _)| x) {
            Ok(i) => self.terms[i].1,
            Err(_) => Fq::ZERO,
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Fq::ONE
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert!(self.ctx == rhs.ctx);
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let take_left = match (self.terms.get(i), rhs.terms.get(j)) {
                (Some(&(ea, _)), Some(&(eb, _))) => {
                    if ea == eb {
                        let c = self.ctx.add(self.terms[i].1, rhs.terms[j].1);
                        if !c.is_zero() {
                            out.push((ea, c));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                    ea < eb
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => unreachable!(),
            };
            if take_left {
                out.push(self.terms[i]);
                i += 1;
            } else {
                out.push(rhs.terms[j]);
                j += 1;
            }
        }
        PolyA {
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|&(e, c)| (e, self.ctx.neg(c)))
            .collect();
        PolyA {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert!(self.ctx == rhs.ctx);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut acc: Vec<(u64, Fq)> = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &rhs.terms {
                acc.push((ea + eb, self.ctx.mul(ca, cb)));
            }
        }
        Self::from_terms(&self.ctx, acc)
    }

    pub fn mul_scalar(&self, c: Fq) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|&(e, a)| (e, self.ctx.mul(a, c)))
            .collect();
        PolyA {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: u64) -> Self {
        let terms = self.terms.iter().map(|&(e, c)| (e + k, c)).collect();
        PolyA {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::one(&self.ctx);
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

    /// The q^k-power Frobenius: coefficients are fixed, exponents scale.
    pub fn frobenius(&self, k: u32) -> Self {
        let scale = self.ctx.q().pow(k);
        let terms = self.terms.iter().map(|&(e, c)| (e * scale, c)).collect();
        PolyA {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ctx = self.ctx.clone();
        let dd = d.degree().unwrap();
        let lead_inv = ctx.inv(d.leading_coeff())?;
        let mut q = Self::zero(&ctx);
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let f = ctx.mul(r.leading_coeff(), lead_inv);
            let mono = Self::monomial(&ctx, dr - dd, f);
            q = q.add(&mono);
            r = r.sub(&mono.mul(d));
        }
        Ok((q, r))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, u, v) monic with u*self + v*rhs = g.
    pub fn ext_gcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let ctx = self.ctx.clone();
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Self::one(&ctx), Self::zero(&ctx));
        let (mut t0, mut t1) = (Self::zero(&ctx), Self::one(&ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc_inv = ctx.inv(r0.leading_coeff()).unwrap();
        (
            r0.mul_scalar(lc_inv),
            s0.mul_scalar(lc_inv),
            t0.mul_scalar(lc_inv),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.ctx.inv(self.leading_coeff()).unwrap();
        self.mul_scalar(inv)
    }

    pub fn eval(&self, x: Fq) -> Fq {
        // direct sparse evaluation; exponents can be large, pow handles them
        let mut acc = Fq::ZERO;
        for &(e, c) in &self.terms {
            acc = self.ctx.add(acc, self.ctx.mul(c, self.ctx.pow(x, e)));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let p = self.ctx.p() as u64;
        let terms: Vec<(u64, Fq)> = self
            .terms
            .iter()
            .filter(|&&(e, _)| e % p != 0 && e > 0)
            .map(|&(e, c)| {
                let m = self.ctx.from_int((e % p) as i64);
                (e - 1, self.ctx.mul(c, m))
            })
            .collect();
        Self::from_terms(&self.ctx, terms)
    }

    /// Exact multiplicity of `l` dividing self. Zero input is an error.
    pub fn valuation_at(&self, l: &PolyA) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroOperand);
        }
        // fast path for l = t
        if l.terms == [(1, Fq::ONE)] {
            return Ok(self.order().unwrap());
        }
        let mut v = 0;
        let mut f = self.clone();
        loop {
            let (q, r) = f.divrem(l)?;
            if r.is_zero() {
                v += 1;
                f = q;
            } else {
                return Ok(v);
            }
        }
    }
}

/// |a|_infty exponent: deg(a), with `None` as the marker for the zero polynomial
/// (so that |a|_infty = q^deg a, |0| = 0).
pub fn abs_infty(a: &PolyA) -> Option<u64> {
    a.degree()
}

/// lcm{q^i - 1 : 1 <= i <= r} as a big integer; the ramification index of the
/// tame extension that forces stable reduction divides this.
pub fn tame_lcm(q: u64, r: u32) -> BigUint {
    let mut acc = BigUint::one();
    let q = BigUint::from(q);
    for i in 1..=r {
        let v = q.pow(i) - BigUint::one();
        acc = acc.lcm(&v);
    }
    acc
}

/// All monic irreducibles of degree d in index order, subject to a cap on q^d.
pub fn enumerate_irreducibles_capped(ctx: &FqContext, d: u32, cap: u64) -> Result<Vec<PolyA>> {
    if d == 0 {
        return Err(Error::InvalidInput("degree must be >= 1".into()));
    }
    let total = (ctx.q() as u128).checked_pow(d).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(Error::EnumerationCap(total.min(u64::MAX as u128) as u64, cap));
    }
    // irreducibles of lower degree for trial division
    let mut small: Vec<PolyA> = Vec::new();
    for dd in 1..=d / 2 {
        small.extend(enumerate_irreducibles_capped(ctx, dd, cap)?);
    }
    let mut out = Vec::new();
    let q = ctx.q();
    for n in 0..total as u64 {
        let mut coeffs = Vec::with_capacity(d as usize + 1);
        let mut m = n;
        for _ in 0..d {
            coeffs.push(ctx.elem(m % q));
            m /= q;
        }
        coeffs.push(Fq::ONE);
        let f = PolyA::from_coeffs(ctx, &coeffs);
        let mut irred = true;
        for g in &small {
            if 2 * g.degree().unwrap() > d as u64 {
                break;
            }
            if f.rem(g)?.is_zero() {
                irred = false;
                break;
            }
        }
        if irred {
            out.push(f);
        }
    }
    Ok(out)
}

pub fn enumerate_irreducibles(ctx: &FqContext, d: u32) -> Result<Vec<PolyA>> {
    enumerate_irreducibles_capped(ctx, d, DEFAULT_ENUM_CAP)
}

/// Factor f into monic irreducibles with multiplicity, plus the unit.
pub fn factor(f: &PolyA) -> Result<(Fq, Vec<(PolyA, u32)>)> {
    if f.is_zero() {
        return Err(Error::ZeroOperand);
    }
    let ctx = f.ctx().clone();
    let unit = f.leading_coeff();
    let mut rest = f.monic();
    let mut out: Vec<(PolyA, u32)> = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap() > 0 {
        if 2 * d as u64 > rest.degree().unwrap() {
            // remaining factor is irreducible
            out.push((rest.clone(), 1));
            break;
        }
        for g in enumerate_irreducibles(&ctx, d)? {
            let mut mult = 0;
            loop {
                let (q, r) = rest.divrem(&g)?;
                if r.is_zero() {
                    mult += 1;
                    rest = q;
                } else {
                    break;
                }
            }
            if mult > 0 {
                out.push((g, mult));
            }
            if rest.degree().unwrap() == 0 {
                break;
            }
        }
        d += 1;
        if rest.degree().unwrap() == 0 {
            break;
        }
    }
    Ok((unit, out))
}

/// Gauss/Moebius count of monic irreducibles of degree d over F_q.
pub fn irreducible_count(q: u64, d: u32) -> BigUint {
    fn moebius(n: u32) -> i64 {
        let mut n = n;
        let mut m = 1i64;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                m = -m;
            }
            p += 1;
        }
        if n > 1 {
            m = -m;
        }
        m
    }
    let mut sum = num_bigint::BigInt::from(0);
    for e in 1..=d {
        if d % e == 0 {
            let mu = moebius(d / e);
            if mu != 0 {
                sum += num_bigint::BigInt::from(mu) * num_bigint::BigInt::from(q).pow(e);
            }
        }
    }
    let (sign, mag) = (sum.clone() / d).into_parts();
    assert!(sign != num_bigint::Sign::Minus);
    mag
}

impl fmt::Display for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for &(e, c) in self.terms.iter().rev() {
            let cs = self.ctx.format_elem(c);
            let needs_parens = cs.contains('+');
            let cs = if needs_parens { format!("({cs})") } else { cs };
            let part = match e {
                0 => cs,
                1 if c == Fq::ONE => "t".to_string(),
                1 => format!("{cs}*t"),
                e if c == Fq::ONE => format!("t^{e}"),
                e => format!("{cs}*t^{e}"),
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join("+"))
    }
}
