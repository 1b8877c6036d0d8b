//! Exact ramification filtrations of explicitly presented, totally ramified
//! Galois extensions of K_l, with the Carlitz-cyclotomic levels as the
//! built-in family.
//!
//! A presentation is an Eisenstein polynomial h over K_l together with the
//! Galois action written as additive polynomials g_sigma with
//! sigma(x) = g_sigma(x) mod h. Extension valuations go through the norm:
//! v_L(alpha(x)) = v_l(det of multiplication by alpha on K_l[X]/(h)), which
//! is exact and precision-tracked.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::fq::FqContext;
use crate::local::{complete, LocalElem};
use crate::newton::NewtonPolygon;
use crate::place::PrimePlace;
use crate::poly::PolyA;
use crate::rational::RationalFn;
use crate::residue::ResidueField;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default cap on q^{m deg p} for the built-in Carlitz levels.
pub const DEFAULT_LEVEL_CAP: u64 = 256;

/// One Galois element: an additive polynomial acting on the generator class.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub label: String,
    /// Terms (i, c): c X^{q^i}.
    pub additive: Vec<(u32, LocalElem)>,
    pub is_identity: bool,
}

/// An explicitly presented totally ramified Galois extension L = K_l[x]/(h).
#[derive(Clone, Debug)]
pub struct GaloisPresentation {
    place: PrimePlace,
    field: ResidueField,
    /// Monic h, dense coefficients h[0..=deg].
    h: Vec<LocalElem>,
    elements: Vec<GroupElement>,
}

/// Lower-numbering ramification data.
#[derive(Clone, Debug)]
pub struct Filtration {
    /// |G_i| for i = -1, 0, 1, ...; orders[k] = |G_{k-1}|.
    pub orders: Vec<u64>,
    /// i(sigma) = v_L(sigma x - x) for the nontrivial elements.
    pub conjugate_valuations: Vec<i64>,
    /// Indices i with G_i != G_{i+1}.
    pub lower_breaks: Vec<i64>,
}

impl Filtration {
    pub fn group_order(&self) -> u64 {
        self.orders[0]
    }

    /// |G_i| for i >= -1.
    pub fn order_at(&self, i: i64) -> u64 {
        let idx = (i + 1) as usize;
        self.orders.get(idx).copied().unwrap_or(1)
    }

    pub fn wild_order(&self) -> u64 {
        self.order_at(1)
    }

    pub fn tame_order(&self) -> u64 {
        self.order_at(0) / self.order_at(1)
    }

    /// ord of the different via the filtration orders.
    pub fn different_by_orders(&self) -> u64 {
        let mut acc = 0;
        let mut i = 0i64;
        loop {
            let o = self.order_at(i);
            if o == 1 {
                break;
            }
            acc += o - 1;
            i += 1;
        }
        acc
    }

    /// ord of the different via the conjugate valuations.
    pub fn different_by_conjugates(&self) -> u64 {
        self.conjugate_valuations.iter().map(|&v| v as u64).sum()
    }
}

/// Piecewise-linear Herbrand transition function, exact rational breakpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct HerbrandFn {
    /// Vertices (u, phi(u)) with strictly increasing u, starting at (-1, -1).
    pub vertices: Vec<(BigRational, BigRational)>,
    /// Slope beyond the last vertex.
    pub final_slope: BigRational,
}

impl HerbrandFn {
    pub fn eval(&self, u: &BigRational) -> BigRational {
        let first = &self.vertices[0];
        if u <= &first.0 {
            return first.1.clone() + (u - &first.0);
        }
        for w in self.vertices.windows(2) {
            if u <= &w[1].0 {
                let slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
                return &w[0].1 + slope * (u - &w[0].0);
            }
        }
        let last = self.vertices.last().unwrap();
        &last.1 + &self.final_slope * (u - &last.0)
    }

    /// The inverse function (swap coordinates).
    pub fn inverse(&self) -> HerbrandFn {
        HerbrandFn {
            vertices: self
                .vertices
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
            final_slope: BigRational::one() / self.final_slope.clone(),
        }
    }
}

/// phi(u) = integral of dt/[G_0 : G_t], built from the filtration orders.
pub fn herbrand_phi(f: &Filtration) -> HerbrandFn {
    let g0 = f.order_at(0);
    let minus_one = BigRational::from(BigInt::from(-1));
    let zero = BigRational::zero();
    let mut vertices = vec![(minus_one.clone(), minus_one), (zero.clone(), zero)];
    let mut cur_slope = BigRational::one();
    let mut u = BigRational::zero();
    let mut y = BigRational::zero();
    let mut i = 1i64;
    loop {
        let o = f.order_at(i);
        let slope = BigRational::new(BigInt::from(o), BigInt::from(g0));
        if slope != cur_slope {
            let at = BigRational::from(BigInt::from(i - 1));
            if at > u {
                y = &y + &cur_slope * (&at - &u);
                u = at;
                vertices.push((u.clone(), y.clone()));
            }
            cur_slope = slope;
        }
        if o == 1 {
            break;
        }
        i += 1;
    }
    HerbrandFn {
        vertices,
        final_slope: cur_slope,
    }
}

/// The inverse transition function psi.
pub fn herbrand_psi(f: &Filtration) -> HerbrandFn {
    herbrand_phi(f).inverse()
}

/// Exact break data in both numberings.
#[derive(Clone, Debug, Serialize)]
pub struct BreakReport {
    pub lower_breaks: Vec<i64>,
    /// Upper breaks as exact rationals rendered "num/den".
    pub upper_breaks: Vec<String>,
    pub maximal_break: String,
    pub group_order: u64,
    pub tame_order: u64,
    pub wild_order: u64,
}

pub(crate) fn rat_str(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl GaloisPresentation {
    /// Build and verify a presentation: h monic, Eisenstein unless linear;
    /// the elements permute the roots of h and compose within the table.
    pub fn new(
        place: PrimePlace,
        h: Vec<LocalElem>,
        elements: Vec<GroupElement>,
    ) -> Result<Self> {
        if h.len() < 2 {
            return Err(Error::InvalidInput("h must have positive degree".into()));
        }
        let deg = h.len() - 1;
        let field = h[0].field().clone();
        match h[deg].valuation() {
            Some(0) => {}
            _ => {
                return Err(Error::InvalidInput("h must be monic".into()));
            }
        }
        let pres = GaloisPresentation {
            place,
            field,
            h,
            elements,
        };
        if deg > 1 {
            pres.certify_eisenstein()?;
        }
        if pres.elements.iter().filter(|e| e.is_identity).count() != 1 {
            return Err(Error::InvalidInput(
                "exactly one identity element required".into(),
            ));
        }
        if pres.elements.len() != deg.max(1) {
            return Err(Error::InvalidInput(format!(
                "group order {} must equal the extension degree {}",
                pres.elements.len(),
                deg.max(1)
            )));
        }
        pres.verify_permutation()?;
        pres.verify_group_law()?;
        Ok(pres)
    }

    pub fn degree(&self) -> usize {
        self.h.len() - 1
    }

    pub fn place(&self) -> &PrimePlace {
        &self.place
    }

    pub fn group_order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn h(&self) -> &[LocalElem] {
        &self.h
    }

    fn zero(&self) -> LocalElem {
        LocalElem::exact_zero(&self.place, &self.field)
    }

    /// Eisenstein certificate: single Newton slope -1/deg h.
    fn certify_eisenstein(&self) -> Result<()> {
        let pts: Vec<(i64, Option<BigRational>)> = self
            .h
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let v = c.valuation().map(|v| BigRational::from(BigInt::from(v)));
                (i as i64, v)
            })
            .collect();
        let np = NewtonPolygon::from_points(&pts)?;
        let want = BigRational::new(BigInt::from(-1), BigInt::from(self.degree() as i64));
        if !np.is_single_slope(&want) {
            return Err(Error::InvalidInput(
                "h is not Eisenstein: Newton polygon is not a single slope -1/deg".into(),
            ));
        }
        Ok(())
    }

    /// Reduce a dense polynomial modulo h (monic).
    fn rem_mod_h(&self, mut f: Vec<LocalElem>) -> Vec<LocalElem> {
        let d = self.degree();
        while f.len() > d {
            let top = f.pop().unwrap();
            if top.is_exactly_zero() {
                continue;
            }
            let k = f.len() - d;
            for (i, hc) in self.h.iter().take(d).enumerate() {
                let t = top.mul(hc);
                f[k + i] = f[k + i].sub(&t);
            }
        }
        while f.len() < d.max(1) {
            f.push(self.zero());
        }
        f
    }

    /// Expand an additive polynomial into dense coefficients.
    fn additive_dense(&self, g: &[(u32, LocalElem)]) -> Vec<LocalElem> {
        let q = self.field.ctx().q();
        let maxdeg = g.iter().map(|(i, _)| q.pow(*i) as usize).max().unwrap_or(0);
        let mut out = vec![self.zero(); maxdeg + 1];
        for (i, c) in g {
            let e = q.pow(*i) as usize;
            out[e] = out[e].add(c);
        }
        out
    }

    /// g_sigma(x) as a residue class mod h.
    fn sigma_image(&self, g: &[(u32, LocalElem)]) -> Vec<LocalElem> {
        self.rem_mod_h(self.additive_dense(g))
    }

    /// Check h | h(g_sigma(X)) to precision for every element.
    fn verify_permutation(&self) -> Result<()> {
        if self.degree() == 1 {
            return Ok(());
        }
        for el in &self.elements {
            let gx = self.sigma_image(&el.additive);
            let mut acc = vec![self.zero(); self.degree()];
            acc[0] = self.h[0].clone();
            let mut pow = vec![self.zero(); self.degree()];
            pow[0] = LocalElem::one(&self.place, &self.field);
            for i in 1..=self.degree() {
                pow = self.rem_mod_h(poly_mul(&pow, &gx, &self.place, &self.field));
                let hi = &self.h[i];
                if hi.is_exactly_zero() {
                    continue;
                }
                for (a, p) in acc.iter_mut().zip(&pow) {
                    *a = a.add(&p.mul(hi));
                }
            }
            for c in &acc {
                if c.valuation().is_some() {
                    return Err(Error::Inconsistency(format!(
                        "element {} does not permute the roots of h",
                        el.label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Closure of the composition table.
    fn verify_group_law(&self) -> Result<()> {
        let images: Vec<Vec<LocalElem>> = self
            .elements
            .iter()
            .map(|e| self.sigma_image(&e.additive))
            .collect();
        for a in &self.elements {
            for b in &self.elements {
                let mut comp: BTreeMap<u32, LocalElem> = BTreeMap::new();
                for (i, c) in &a.additive {
                    for (j, d) in &b.additive {
                        let term = c.mul(&d.frobenius_q_pow(*i, None));
                        comp.entry(i + j)
                            .and_modify(|x| *x = x.add(&term))
                            .or_insert(term);
                    }
                }
                let terms: Vec<(u32, LocalElem)> = comp.into_iter().collect();
                let comp_img = self.sigma_image(&terms);
                let mut found = 0;
                for img in &images {
                    let mut ok = true;
                    for (x, y) in comp_img.iter().zip(img) {
                        if x.sub(y).valuation().is_some() {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        found += 1;
                    }
                }
                if found != 1 {
                    return Err(Error::Inconsistency(format!(
                        "composition {} . {} matched {} table entries",
                        a.label, b.label, found
                    )));
                }
            }
        }
        Ok(())
    }

    /// v_L of alpha(x), alpha dense of degree < deg h: the valuation of the
    /// determinant of multiplication by alpha on K_l[X]/(h).
    pub fn ext_valuation(&self, alpha: &[LocalElem]) -> Result<i64> {
        let d = self.degree();
        if alpha.len() > d && d > 0 {
            return Err(Error::InvalidInput("alpha must have degree < deg h".into()));
        }
        if d == 1 {
            let a = alpha.first().cloned().unwrap_or_else(|| self.zero());
            return a
                .valuation()
                .ok_or_else(|| Error::PrecisionExhausted("cannot certify alpha nonzero".into()));
        }
        let mut padded = alpha.to_vec();
        while padded.len() < d {
            padded.push(self.zero());
        }
        let mut cols = Vec::with_capacity(d);
        let mut cur = padded.clone();
        cols.push(cur.clone());
        for _ in 1..d {
            let mut shifted = vec![self.zero()];
            shifted.extend(cur.iter().cloned());
            cur = self.rem_mod_h(shifted);
            cols.push(cur.clone());
        }
        // inversion depth: bounded by the finite precision floating around,
        // generous when everything is exact
        let work_rel = self
            .h
            .iter()
            .chain(alpha.iter())
            .filter_map(|c| c.prec().finite())
            .min()
            .unwrap_or(64)
            .max(32);
        let det = det_min_valuation(&cols, &self.place, &self.field, work_rel)?;
        det.valuation()
            .ok_or_else(|| Error::PrecisionExhausted("norm determinant is zero to precision".into()))
    }

    /// i(sigma) = v_L(g_sigma(x) - x) for every nontrivial element.
    pub fn conjugate_valuations(&self) -> Result<Vec<i64>> {
        let work: Vec<&GroupElement> = self.elements.iter().filter(|e| !e.is_identity).collect();
        let compute = |el: &GroupElement| -> Result<i64> {
            let mut img = self.sigma_image(&el.additive);
            if self.degree() > 1 {
                img[1] = img[1].sub(&LocalElem::one(&self.place, &self.field));
            }
            self.ext_valuation(&img)
        };
        #[cfg(feature = "parallel")]
        {
            work.par_iter().map(|el| compute(el)).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            work.iter().map(|el| compute(el)).collect()
        }
    }

    /// The lower-numbering filtration from the conjugate valuations.
    pub fn lower_filtration(&self) -> Result<Filtration> {
        let ivals = self.conjugate_valuations()?;
        for &v in &ivals {
            if v < 1 {
                return Err(Error::Inconsistency(format!(
                    "conjugate valuation {v} < 1; presentation is not totally ramified"
                )));
            }
        }
        let n = self.group_order();
        let imax = ivals.iter().copied().max().unwrap_or(0);
        let mut orders = vec![n];
        for i in 0..=imax {
            let cnt = 1 + ivals.iter().filter(|&&v| v >= i + 1).count() as u64;
            orders.push(cnt);
        }
        let mut lower_breaks = Vec::new();
        for i in -1..imax {
            let here = orders[(i + 1) as usize];
            let next = orders.get((i + 2) as usize).copied().unwrap_or(1);
            if here != next {
                lower_breaks.push(i);
            }
        }
        if *orders.last().unwrap() != 1 {
            lower_breaks.push(imax);
        }
        Ok(Filtration {
            orders,
            conjugate_valuations: ivals,
            lower_breaks,
        })
    }

    /// Maximal ramification break: -1 for the trivial group, else the
    /// Herbrand image of the largest lower break.
    pub fn maximal_break(&self) -> Result<BigRational> {
        let f = self.lower_filtration()?;
        Ok(maximal_break_of(&f))
    }

    /// Full break report.
    pub fn breaks(&self) -> Result<BreakReport> {
        let f = self.lower_filtration()?;
        let phi = herbrand_phi(&f);
        let upper: Vec<String> = f
            .lower_breaks
            .iter()
            .map(|&b| rat_str(&phi.eval(&BigRational::from(BigInt::from(b)))))
            .collect();
        Ok(BreakReport {
            lower_breaks: f.lower_breaks.clone(),
            upper_breaks: upper,
            maximal_break: rat_str(&maximal_break_of(&f)),
            group_order: f.group_order(),
            tame_order: f.tame_order(),
            wild_order: f.wild_order(),
        })
    }
}

/// Maximal break from a filtration: phi of the largest lower break.
pub fn maximal_break_of(f: &Filtration) -> BigRational {
    if f.group_order() == 1 {
        return BigRational::from(BigInt::from(-1));
    }
    let phi = herbrand_phi(f);
    let b = *f.lower_breaks.last().unwrap();
    phi.eval(&BigRational::from(BigInt::from(b)))
}

/// Independent route to the maximal break: each sigma survives in upper
/// numbering until phi(i(sigma) - 1), with phi evaluated through the
/// averaging identity phi(u) = -1 + (1/|G_0|) sum_sigma min(i(sigma), u + 1)
/// (the identity contributing u + 1).
pub fn maximal_break_by_conjugates(f: &Filtration) -> BigRational {
    if f.group_order() == 1 {
        return BigRational::from(BigInt::from(-1));
    }
    let g0 = BigRational::from(BigInt::from(f.group_order() as i64));
    let phi_at = |u: BigRational| -> BigRational {
        let mut sum = &u + BigRational::one();
        for &iv in &f.conjugate_valuations {
            let cap = BigRational::from(BigInt::from(iv));
            let term = if cap < &u + BigRational::one() {
                cap
            } else {
                &u + BigRational::one()
            };
            sum += term;
        }
        sum / &g0 - BigRational::one()
    };
    let mut best: Option<BigRational> = None;
    for &iv in &f.conjugate_valuations {
        let u = BigRational::from(BigInt::from(iv - 1));
        let v = phi_at(u);
        if best.as_ref().map_or(true, |b| &v > b) {
            best = Some(v);
        }
    }
    best.unwrap()
}

/// Dense polynomial product over K_l.
fn poly_mul(
    a: &[LocalElem],
    b: &[LocalElem],
    place: &PrimePlace,
    field: &ResidueField,
) -> Vec<LocalElem> {
    let mut out = vec![LocalElem::exact_zero(place, field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_exactly_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Determinant by Gaussian elimination with minimal-valuation pivoting.
fn det_min_valuation(
    cols: &[Vec<LocalElem>],
    place: &PrimePlace,
    field: &ResidueField,
    work_rel: i64,
) -> Result<LocalElem> {
    let n = cols.len();
    let mut m: Vec<Vec<LocalElem>> = (0..n)
        .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
        .collect();
    let mut det = LocalElem::one(place, field);
    let mut negate = false;
    for col in 0..n {
        let mut pivot: Option<(usize, i64)> = None;
        for (r, row) in m.iter().enumerate().skip(col) {
            if let Some(v) = row[col].valuation() {
                if pivot.map_or(true, |(_, pv)| v < pv) {
                    pivot = Some((r, v));
                }
            }
        }
        let (pr, _) = pivot.ok_or_else(|| {
            Error::PrecisionExhausted("no certified pivot in norm determinant".into())
        })?;
        if pr != col {
            m.swap(pr, col);
            negate = !negate;
        }
        let pv = m[col][col].clone();
        det = det.mul(&pv);
        let rel = pv
            .prec()
            .finite()
            .map(|p| p - pv.valuation().unwrap())
            .unwrap_or(work_rel)
            .min(work_rel);
        let inv = pv.inv_to(rel)?;
        for r in col + 1..n {
            let f = m[r][col].mul(&inv);
            if f.is_exactly_zero() {
                continue;
            }
            for c in col..n {
                let t = f.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&t);
            }
        }
    }
    Ok(if negate { det.neg() } else { det })
}

/// The built-in family: K_p(Carlitz p^m-torsion) / K_p, presented by
/// h = phi_{p^m}(X) / phi_{p^{m-1}}(X) with (A/p^m)^* acting through phi.
pub fn carlitz_local(
    ctx: &FqContext,
    p: &PolyA,
    m: u32,
    precision: i64,
) -> Result<GaloisPresentation> {
    carlitz_local_capped(ctx, p, m, precision, DEFAULT_LEVEL_CAP)
}

pub fn carlitz_local_capped(
    ctx: &FqContext,
    p: &PolyA,
    m: u32,
    precision: i64,
    cap: u64,
) -> Result<GaloisPresentation> {
    if m < 1 {
        return Err(Error::InvalidInput("level m must be >= 1".into()));
    }
    let d = p.degree().ok_or(Error::ZeroOperand)? as u32;
    let size = (ctx.q() as u128).checked_pow(m * d).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::SizeCap(format!(
            "q^(m deg p) = {size} exceeds the cap {cap}"
        )));
    }
    let place = PrimePlace::finite(p.clone())?;
    let phi = DrinfeldModule::carlitz(ctx);
    let pm = p.pow(m as u64);
    let pm1 = p.pow((m - 1) as u64);
    let num = phi.torsion_poly(&pm)?;
    let den = phi.torsion_poly(&pm1)?;
    let q = ctx.q();
    let dense = |tors: &crate::drinfeld::TorsionPolynomial| -> Vec<RationalFn> {
        let degree = q.pow(tors.tau_degree() as u32) as usize;
        let mut v = vec![RationalFn::zero(ctx); degree + 1];
        for (i, c) in tors.coeffs().iter().enumerate() {
            v[q.pow(i as u32) as usize] = c.clone();
        }
        v
    };
    let h_rational = poly_divide_exact(ctx, &dense(&num), &dense(&den))?;
    let work = precision + 8;
    let mut h = Vec::with_capacity(h_rational.len());
    for c in &h_rational {
        h.push(complete(c, &place, work)?);
    }
    let total = q.pow(m * d);
    let mut elements = Vec::new();
    for n in 0..total {
        let mut coeffs = Vec::with_capacity((m * d) as usize);
        let mut x = n;
        for _ in 0..m * d {
            coeffs.push(ctx.elem(x % q));
            x /= q;
        }
        let a = PolyA::from_coeffs(ctx, &coeffs);
        if a.is_zero() || a.rem(p)?.is_zero() {
            continue;
        }
        let img = phi.phi_of(&a)?;
        let mut additive = Vec::new();
        for (i, c) in img.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            additive.push((i as u32, complete(c, &place, work)?));
        }
        elements.push(GroupElement {
            label: a.to_string(),
            additive,
            is_identity: a.is_one(),
        });
    }
    GaloisPresentation::new(place, h, elements)
}

/// Exact division in F[X] (dense, rational-function coefficients); the
/// remainder must vanish.
fn poly_divide_exact(
    ctx: &FqContext,
    num: &[RationalFn],
    den: &[RationalFn],
) -> Result<Vec<RationalFn>> {
    let dn = num.len() - 1;
    let dd = den
        .iter()
        .rposition(|c| !c.is_zero())
        .ok_or(Error::DivisionByZero)?;
    let mut rem: Vec<RationalFn> = num.to_vec();
    let mut quo = vec![RationalFn::zero(ctx); dn - dd + 1];
    let lead_inv = den[dd].inv()?;
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].mul(&lead_inv);
        if c.is_zero() {
            continue;
        }
        quo[k] = c.clone();
        for (i, dc) in den.iter().enumerate().take(dd + 1) {
            rem[k + i] = rem[k + i].sub(&c.mul(dc));
        }
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::Inconsistency("division was not exact".into()));
    }
    Ok(quo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::{rat, rat_int};

    fn f3() -> FqContext {
        FqContext::prime(3).unwrap()
    }

    #[test]
    fn carlitz_q3_t_level1() {
        // h = X^2 + t, group of order 2, tame: lower break 0, max break 0
        let ctx = f3();
        let pres = carlitz_local(&ctx, &PolyA::t(&ctx), 1, 30).unwrap();
        assert_eq!(pres.degree(), 2);
        assert_eq!(pres.group_order(), 2);
        let f = pres.lower_filtration().unwrap();
        assert_eq!(f.conjugate_valuations, vec![1]);
        assert_eq!(f.lower_breaks, vec![0]);
        assert_eq!(pres.maximal_break().unwrap(), rat_int(0));
    }

    #[test]
    fn carlitz_q2_t_level1_trivial() {
        // h = X + t: trivial extension, maximal break -1
        let ctx = FqContext::prime(2).unwrap();
        let pres = carlitz_local(&ctx, &PolyA::t(&ctx), 1, 30).unwrap();
        assert_eq!(pres.degree(), 1);
        assert_eq!(pres.group_order(), 1);
        assert_eq!(pres.maximal_break().unwrap(), rat_int(-1));
    }

    #[test]
    fn carlitz_q3_t_level2() {
        // |G| = 6; lower breaks {0, 2}; upper breaks {0, 1}; max break 1
        let ctx = f3();
        let pres = carlitz_local(&ctx, &PolyA::t(&ctx), 2, 30).unwrap();
        assert_eq!(pres.degree(), 6);
        assert_eq!(pres.group_order(), 6);
        let f = pres.lower_filtration().unwrap();
        let mut iv = f.conjugate_valuations.clone();
        iv.sort();
        assert_eq!(iv, vec![1, 1, 1, 3, 3]);
        assert_eq!(f.lower_breaks, vec![0, 2]);
        assert_eq!(f.orders, vec![6, 6, 3, 3, 1]);
        let phi = herbrand_phi(&f);
        assert_eq!(phi.eval(&rat_int(2)), rat_int(1));
        assert_eq!(pres.maximal_break().unwrap(), rat_int(1));
        assert_eq!(maximal_break_by_conjugates(&f), rat_int(1));
        assert_eq!(f.different_by_orders(), f.different_by_conjugates());
        let rep = pres.breaks().unwrap();
        assert_eq!(rep.upper_breaks, vec!["0", "1"]);
        assert_eq!(rep.tame_order, 2);
        assert_eq!(rep.wild_order, 3);
    }

    #[test]
    fn ext_valuation_examples() {
        // h = X^2 + t at (t) for q = 3
        let ctx = f3();
        let pres = carlitz_local(&ctx, &PolyA::t(&ctx), 1, 30).unwrap();
        let field = ResidueField::for_place(&ctx, pres.place());
        let one = LocalElem::one(pres.place(), &field);
        let u = LocalElem::uniformizer(pres.place(), &field);
        let zero = LocalElem::exact_zero(pres.place(), &field);
        // v_L(x) = 1
        assert_eq!(pres.ext_valuation(&[zero.clone(), one.clone()]).unwrap(), 1);
        // v_L(t) = 2 = e v_l(t)
        assert_eq!(pres.ext_valuation(&[u.clone(), zero.clone()]).unwrap(), 2);
        // v_L(x + t) = v_l(Res(X^2 + t, X + t)) = v_l(t^2 + t) = 1
        assert_eq!(pres.ext_valuation(&[u.clone(), one.clone()]).unwrap(), 1);
    }

    #[test]
    fn herbrand_inverse_roundtrip() {
        let ctx = f3();
        let pres = carlitz_local(&ctx, &PolyA::t(&ctx), 2, 30).unwrap();
        let f = pres.lower_filtration().unwrap();
        let phi = herbrand_phi(&f);
        let psi = herbrand_psi(&f);
        for n in 0..100i64 {
            let u = rat(7 * n + 1, (n % 5) + 2);
            let v = psi.eval(&phi.eval(&u));
            assert_eq!(v, u, "round trip at {u}");
        }
    }

    #[test]
    fn generator_change_keeps_conjugate_valuations() {
        // replace x by x + t x = (1 + t) x: i(sigma) values are unchanged
        let ctx = f3();
        let pres = carlitz_local(&ctx, &PolyA::t(&ctx), 1, 30).unwrap();
        let field = ResidueField::for_place(&ctx, pres.place());
        let scale = {
            let one_plus_t = PolyA::from_coeffs(&ctx, &[ctx.from_int(1), ctx.from_int(1)]);
            complete(&RationalFn::from_poly(one_plus_t), pres.place(), 30).unwrap()
        };
        for el in pres.elements().iter().filter(|e| !e.is_identity) {
            let img = pres.sigma_image(&el.additive);
            let mut diff = img;
            diff[1] = diff[1].sub(&LocalElem::one(pres.place(), &field));
            let scaled: Vec<LocalElem> = diff.iter().map(|c| c.mul(&scale)).collect();
            let v1 = pres.ext_valuation(&diff).unwrap();
            let v2 = pres.ext_valuation(&scaled).unwrap();
            assert_eq!(v1, v2);
        }
    }

    #[test]
    fn quadratic_place_tame_level() {
        // p = t^2 + t + 1 over F_2, m = 1: degree-3 tame extension
        let ctx = FqContext::prime(2).unwrap();
        let p = PolyA::from_coeffs(&ctx, &[ctx.from_int(1), ctx.from_int(1), ctx.from_int(1)]);
        let pres = carlitz_local(&ctx, &p, 1, 30).unwrap();
        assert_eq!(pres.degree(), 3);
        assert_eq!(pres.group_order(), 3);
        let f = pres.lower_filtration().unwrap();
        assert_eq!(f.lower_breaks, vec![0]);
        assert_eq!(pres.maximal_break().unwrap(), rat_int(0));
        assert_eq!(f.different_by_orders(), 2);
    }

    #[test]
    fn size_cap_enforced() {
        let ctx = f3();
        assert!(matches!(
            carlitz_local_capped(&ctx, &PolyA::t(&ctx), 4, 20, 16),
            Err(Error::SizeCap(_))
        ));
    }
}
