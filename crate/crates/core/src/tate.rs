//! Rank-1 Tate data over O_l: truncated exponential of the lattice, the
//! reconstruction of the rank-(r_psi + 1) module from the functional equation
//! e psi_t = phi_t e, and the leading-coefficient product identity.
//!
//! The lattice is Gamma = psi(A) gamma with gamma in K_l of negative
//! valuation, so every computation stays inside the base completion. The
//! exponential is built layer by layer: extending the F_q-span by
//! g_k = psi_{t^k}(gamma) multiplies the series on the left by
//! (1 - beta_k^{1-q} tau) with beta_k the image of g_k under the partial
//! product.

use num_rational::BigRational;

use crate::drinfeld::{twist_slope, DrinfeldModule, ReductionKind};
use crate::error::{Error, Result};
use crate::lattice::{gardeyn_norm, NormValue};
use crate::local::{complete, embed_poly, eval_additive_terms, LocalElem, Prec};
use crate::ore::OrePoly;
use crate::place::PrimePlace;
use crate::poly::PolyA;
use crate::rational::RationalFn;
use crate::residue::ResidueField;

/// Safety digits reserved against accumulated truncation of inverses.
pub const PRECISION_MARGIN: i64 = 2;

/// A rank-1 Tate datum: a good-reduction module psi (integral coefficients,
/// unit leading coefficient at the place) and a lattice generator gamma with
/// v(gamma) < 0.
#[derive(Clone, Debug)]
pub struct TateDatum {
    psi: DrinfeldModule,
    place: PrimePlace,
    gamma: LocalElem,
}

impl TateDatum {
    pub fn new(psi: DrinfeldModule, place: PrimePlace, gamma: LocalElem) -> Result<Self> {
        if !place.is_finite() {
            return Err(Error::InvalidInput("Tate data live at finite places".into()));
        }
        for (i, g) in psi.coeffs().iter().enumerate().skip(1) {
            if g.is_zero() {
                continue;
            }
            let v = place.valuation(g)?;
            if v < 0 {
                return Err(Error::NonIntegralModel);
            }
            if i == psi.rank() as usize && v != 0 {
                return Err(Error::InvalidInput(
                    "good reduction needs a unit leading coefficient".into(),
                ));
            }
        }
        let red = psi.stable_model(&place)?;
        if red.kind != ReductionKind::Good {
            return Err(Error::InvalidInput(
                "psi must have good reduction at the place".into(),
            ));
        }
        let v = gamma
            .valuation()
            .ok_or_else(|| Error::PrecisionExhausted("gamma is zero to precision".into()))?;
        if v >= 0 {
            return Err(Error::NonNegativeValuation(v));
        }
        Ok(TateDatum { psi, place, gamma })
    }

    pub fn psi(&self) -> &DrinfeldModule {
        &self.psi
    }
    pub fn place(&self) -> &PrimePlace {
        &self.place
    }
    pub fn gamma(&self) -> &LocalElem {
        &self.gamma
    }
    pub fn r_psi(&self) -> u32 {
        self.psi.rank()
    }
    pub fn q(&self) -> u64 {
        self.psi.ctx().q()
    }

    /// D(phi, l) = D(Gamma) = ||gamma|| for the rank-1 lattice.
    pub fn covolume(&self) -> Result<NormValue> {
        gardeyn_norm(&self.gamma, self.r_psi())
    }

    /// psi_t with coefficients embedded at the place.
    fn embedded_psi_t(&self, prec: i64) -> Result<OrePoly<LocalElem>> {
        let mut coeffs = Vec::with_capacity(self.psi.coeffs().len());
        for g in self.psi.coeffs() {
            coeffs.push(complete(g, &self.place, prec)?);
        }
        Ok(OrePoly::new(coeffs))
    }

    /// The generators g_k = psi_{t^k}(gamma) for k = 0..=kmax, with the
    /// valuation law v(g_k) = q^{r_psi k} v(gamma) checked on the nose.
    fn span_generators(&self, kmax: u32, prec: i64) -> Result<Vec<LocalElem>> {
        let psi_t = self.embedded_psi_t(prec)?;
        let terms: Vec<(u32, LocalElem)> = psi_t
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (i as u32, c.clone()))
            .collect();
        let mut out = vec![self.gamma.clone()];
        for _ in 1..=kmax {
            let next = eval_additive_terms(&terms, out.last().unwrap(), None)?;
            out.push(next);
        }
        let v0 = self.gamma.valuation().unwrap();
        let scale = self.q().pow(self.r_psi()) as i64;
        let mut expect = v0;
        for (k, g) in out.iter().enumerate() {
            if k > 0 {
                expect *= scale;
            }
            let got = g.valuation().ok_or_else(|| {
                Error::PrecisionExhausted("lattice generator lost to precision".into())
            })?;
            if got != expect {
                return Err(Error::Inconsistency(format!(
                    "valuation law violated at degree {k}: got {got}, expected {expect}"
                )));
            }
        }
        Ok(out)
    }

    /// All nonzero lattice points psi_a(gamma) with ||psi_a(gamma)|| <= bound.
    pub fn lattice_points(&self, bound: &NormValue, prec: i64) -> Result<Vec<LocalElem>> {
        let gnorm = self.covolume()?;
        if bound < &gnorm {
            return Err(Error::BoundTooSmall);
        }
        let q = self.q();
        let mut kmax: u32 = 0;
        loop {
            let next = NormValue::q_power(q, (kmax + 1) as i64).mul(&gnorm);
            if &next <= bound {
                kmax += 1;
            } else {
                break;
            }
        }
        let gens = self.span_generators(kmax, prec)?;
        let ctx = self.psi.ctx().clone();
        let field = gens[0].field().clone();
        let mut points = Vec::new();
        let total = q.pow(kmax + 1);
        for n in 1..total {
            let mut acc = LocalElem::exact_zero(&self.place, &field);
            let mut m = n;
            for g in gens.iter() {
                let c = ctx.elem(m % q);
                m /= q;
                if !c.is_zero() {
                    acc = acc.add(&g.mul_residue(&field.from_fq(c)));
                }
            }
            points.push(acc);
        }
        Ok(points)
    }
}

/// Truncated coefficients of e_Gamma, with convergence metadata.
#[derive(Clone, Debug)]
pub struct ExpSeries {
    r_psi: u32,
    /// Coefficients e_0..e_D of X^{q^i}; e_0 = 1.
    coeffs: Vec<LocalElem>,
    /// Internal guard coefficient e_{D+1}, used for tail certificates.
    tail: LocalElem,
    /// Number of span layers folded into the product.
    pub layers_used: u32,
    /// Norm bound actually reached by the partial product.
    pub norm_bound: NormValue,
    /// Requested target precision.
    pub target_prec: i64,
}

impl ExpSeries {
    pub fn coeffs(&self) -> &[LocalElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &LocalElem {
        &self.coeffs[i]
    }

    pub fn tau_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn r_psi(&self) -> u32 {
        self.r_psi
    }

    pub fn as_ore(&self) -> OrePoly<LocalElem> {
        OrePoly::new(self.coeffs.clone())
    }

    /// Minimal attained precision across the reported coefficients.
    pub fn attained_prec(&self) -> Prec {
        let mut p = Prec::Exact;
        for c in &self.coeffs {
            p = p.min(c.prec());
        }
        p
    }

    /// Evaluate the truncated series at z, with a certified tail: the first
    /// omitted term must sit at valuation >= target.
    pub fn eval(&self, z: &LocalElem, target: i64) -> Result<LocalElem> {
        let vz = z
            .valuation()
            .ok_or_else(|| Error::PrecisionExhausted("evaluating at zero-to-precision".into()))?;
        let q = z.field().ctx().q() as i64;
        let tail_v = self.tail.valuation_lower_bound().unwrap_or(i64::MAX);
        let mut qpow = 1i64;
        for _ in 0..self.coeffs.len() {
            qpow = qpow.saturating_mul(q);
        }
        let tail_term = tail_v.saturating_add(qpow.saturating_mul(vz));
        if tail_term < target {
            return Err(Error::PrecisionNotAttained {
                target,
                attained: tail_term,
                context: "series tail not small enough at this argument".into(),
            });
        }
        let terms: Vec<(u32, LocalElem)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero_to_prec())
            .map(|(i, c)| (i as u32, c.clone()))
            .collect();
        let cap = target + vz.abs() * 4 + 16;
        eval_additive_terms(&terms, z, Some(cap))
    }
}

/// Compute e_Gamma to tau-degree D at target precision P: fold in span layers
/// until the rigorous tail bound clears P and the reported digits are stable
/// twice in a row.
pub fn exp_series(datum: &TateDatum, tau_deg: u32, precision: i64) -> Result<ExpSeries> {
    if tau_deg < 1 || precision <= 0 {
        return Err(Error::InvalidInput("need tau_deg >= 1 and precision > 0".into()));
    }
    let q = datum.q();
    let r_psi = datum.r_psi();
    let vg = datum.gamma().valuation().unwrap();
    let keep = tau_deg as usize + 2; // reported 0..=D plus one guard
    let work_prec = precision + PRECISION_MARGIN + 32;

    let field = ResidueField::for_place(datum.psi().ctx(), datum.place());
    let one = LocalElem::one(datum.place(), &field);
    let mut coeffs: Vec<LocalElem> = vec![one.clone()];
    let mut stable_runs = 0u32;
    let mut layers = 0u32;
    // rigorous cutoff: folding layer k+1 perturbs coefficients by at least
    // (q-1) q^{r_psi (k+1)} |v(gamma)| digits
    let mut kmax = 2u32;
    while ((q - 1) as i64).saturating_mul(q.pow(r_psi * kmax) as i64) * (-vg)
        < precision + PRECISION_MARGIN
    {
        kmax += 1;
        if kmax > 48 {
            return Err(Error::PrecisionNotAttained {
                target: precision,
                attained: 0,
                context: "lattice layers exhausted".into(),
            });
        }
    }
    let gens = datum.span_generators(kmax + 2, work_prec)?;
    let mut prev: Option<Vec<LocalElem>> = None;
    for (k, g) in gens.iter().enumerate() {
        let terms: Vec<(u32, LocalElem)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero_to_prec())
            .map(|(i, c)| (i as u32, c.clone()))
            .collect();
        let beta = eval_additive_terms(&terms, g, None)?;
        let beta_pow = beta.pow(q - 1);
        let factor = beta_pow.inv_to(work_prec)?;
        let mut next: Vec<LocalElem> = Vec::with_capacity((coeffs.len() + 1).min(keep));
        next.push(coeffs[0].clone());
        for j in 1..(coeffs.len() + 1).min(keep) {
            let shifted = coeffs[j - 1].frobenius_q();
            let term = factor.mul(&shifted);
            let prev_c = if j < coeffs.len() {
                coeffs[j].clone()
            } else {
                LocalElem::exact_zero(datum.place(), &field)
            };
            next.push(prev_c.sub(&term));
        }
        coeffs = next;
        layers = k as u32 + 1;
        if let Some(p) = &prev {
            let mut stable = coeffs.len() > tau_deg as usize;
            if stable {
                for (a, b) in p.iter().zip(&coeffs).take(tau_deg as usize + 1) {
                    let d = a.sub(b);
                    if !(d.is_zero_to_prec() && d.prec().at_least(precision)) {
                        stable = false;
                        break;
                    }
                }
            }
            if stable {
                stable_runs += 1;
            } else {
                stable_runs = 0;
            }
        }
        prev = Some(coeffs.clone());
        let rigorous = ((q - 1) as i64).saturating_mul(q.pow(r_psi * (k as u32 + 1)) as i64)
            * (-vg)
            >= precision + PRECISION_MARGIN;
        if rigorous && stable_runs >= 2 && coeffs.len() >= keep {
            break;
        }
    }
    while coeffs.len() < keep {
        coeffs.push(LocalElem::exact_zero(datum.place(), &field));
    }
    let tail = coeffs[tau_deg as usize + 1].clone();
    coeffs.truncate(tau_deg as usize + 1);
    for (i, c) in coeffs.iter().enumerate() {
        if !c.prec().at_least(precision) {
            return Err(Error::PrecisionNotAttained {
                target: precision,
                attained: c.prec().finite().unwrap_or(i64::MAX),
                context: format!("exp series coefficient {i}"),
            });
        }
    }
    let norm_bound = NormValue::q_power(q, layers as i64).mul(&datum.covolume()?);
    Ok(ExpSeries {
        r_psi,
        coeffs,
        tail,
        layers_used: layers,
        norm_bound,
        target_prec: precision,
    })
}

/// A Drinfeld module over K_l given by locally embedded coefficients,
/// as produced by reconstruction.
#[derive(Clone, Debug)]
pub struct LocalDrinfeldModule {
    place: PrimePlace,
    coeffs: Vec<LocalElem>,
}

impl LocalDrinfeldModule {
    pub fn rank(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn place(&self) -> &PrimePlace {
        &self.place
    }

    pub fn coeffs(&self) -> &[LocalElem] {
        &self.coeffs
    }

    pub fn phi_t(&self) -> OrePoly<LocalElem> {
        OrePoly::new(self.coeffs.clone())
    }

    /// phi_a by Horner in the Ore ring over K_l.
    pub fn phi_of(&self, a: &PolyA) -> Result<OrePoly<LocalElem>> {
        if a.is_zero() {
            return Err(Error::ZeroOperand);
        }
        let field = self.coeffs[0].field().clone();
        let place = self.place.clone();
        let scalar =
            |c| OrePoly::scalar(LocalElem::monomial(&place, &field, 0, field.from_fq(c)));
        let phi_t = self.phi_t();
        let deg = a.degree().unwrap();
        let mut acc = scalar(a.coeff(deg));
        for k in (0..deg).rev() {
            acc = phi_t.mul(&acc)?;
            let c = a.coeff(k);
            if !c.is_zero() {
                acc = acc.add(&scalar(c));
            }
        }
        Ok(acc)
    }

    /// Twist-slope reduction analysis on the local coefficients.
    pub fn stable_model(&self) -> Result<(BigRational, u32, ReductionKind)> {
        let q = self.coeffs[0].field().ctx().q();
        let mut vals = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            if let Some(v) = c.valuation() {
                vals.push((i as u32, v));
            }
        }
        if vals.is_empty() {
            return Err(Error::PrecisionExhausted(
                "no coefficient with certified valuation".into(),
            ));
        }
        let (mu, r_psi) = twist_slope(&vals, q);
        let kind = if mu.is_integer() {
            if r_psi == self.rank() {
                ReductionKind::Good
            } else {
                ReductionKind::StableBad
            }
        } else {
            let tame: u64 = mu.denom().magnitude().try_into().unwrap_or(u64::MAX);
            ReductionKind::PotentiallyStable { tame_degree: tame }
        };
        Ok((mu, r_psi, kind))
    }
}

/// Result of reconstructing phi from a Tate datum.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub module: LocalDrinfeldModule,
    pub series: ExpSeries,
    /// Coefficientwise valuation floor of e psi_t - phi_t e, re-multiplied
    /// independently after the solve.
    pub defect_valuation: i64,
    /// Valuation floor of the trailing solved coefficients (indices beyond
    /// r_psi + 1), certifying finiteness.
    pub trailing_floor: i64,
}

/// Solve e_Gamma psi_t = phi_t e_Gamma coefficient by coefficient.
pub fn reconstruct_phi(datum: &TateDatum, precision: i64) -> Result<Reconstruction> {
    let r_new = datum.r_psi() + 1;
    let solve_deg = (r_new + 3).max(4);
    let series = exp_series(datum, solve_deg + datum.psi().rank(), precision)?;
    reconstruct_phi_with(datum, &series, precision)
}

/// Same, reusing a precomputed series (it must extend far enough).
pub fn reconstruct_phi_with(
    datum: &TateDatum,
    series: &ExpSeries,
    precision: i64,
) -> Result<Reconstruction> {
    let work_prec = precision + PRECISION_MARGIN + 32;
    let psi_t = {
        let mut coeffs = Vec::new();
        for g in datum.psi().coeffs() {
            coeffs.push(complete(g, datum.place(), work_prec)?);
        }
        OrePoly::new(coeffs)
    };
    let e = series.as_ore();
    let lhs = e.mul(&psi_t)?;
    let r_new = (datum.r_psi() + 1) as usize;
    let solve_deg = series.tau_degree();
    let mut f: Vec<LocalElem> = Vec::with_capacity(solve_deg + 1);
    for j in 0..=solve_deg {
        let mut acc = lhs.coeff(j);
        for (i, fi) in f.iter().enumerate() {
            if fi.is_zero_to_prec() {
                continue;
            }
            let l = j - i;
            if l > series.tau_degree() {
                continue;
            }
            let mut el = series.coeff(l).clone();
            for _ in 0..i {
                el = el.frobenius_q();
            }
            acc = acc.sub(&fi.mul(&el));
        }
        f.push(acc);
    }
    let mut trailing_floor = i64::MAX;
    for (j, c) in f.iter().enumerate().skip(r_new + 1) {
        match c.valuation() {
            Some(v) => {
                return Err(Error::Inconsistency(format!(
                    "reconstructed coefficient {j} is nonzero (valuation {v})"
                )))
            }
            None => {
                trailing_floor = trailing_floor.min(c.prec().finite().unwrap_or(i64::MAX));
            }
        }
    }
    if trailing_floor < precision - PRECISION_MARGIN {
        return Err(Error::PrecisionNotAttained {
            target: precision - PRECISION_MARGIN,
            attained: trailing_floor,
            context: "trailing reconstruction coefficients".into(),
        });
    }
    let module = LocalDrinfeldModule {
        place: datum.place().clone(),
        coeffs: f[..=r_new].to_vec(),
    };
    let rhs = module.phi_t().mul(&e)?;
    let diff = lhs.sub(&rhs);
    let mut defect = i64::MAX;
    for c in diff.coeffs() {
        let floor = match c.valuation() {
            Some(v) => v,
            None => c.prec().finite().unwrap_or(i64::MAX),
        };
        defect = defect.min(floor);
    }
    Ok(Reconstruction {
        module,
        series: series.clone(),
        defect_valuation: defect,
        trailing_floor,
    })
}

/// The rational torsion points psi[p^m] inside K_l, found by Newton-polygon
/// slope splitting and Hensel lifting of simple residue roots. Errors with
/// `IrrationalRepresentative` when the full torsion is not rational.
pub fn rational_torsion_points(
    psi: &DrinfeldModule,
    place: &PrimePlace,
    p: &PolyA,
    m: u32,
    precision: i64,
) -> Result<Vec<LocalElem>> {
    let pm = p.pow(m as u64);
    let tors = psi.torsion_poly(&pm)?;
    let field = ResidueField::for_place(psi.ctx(), place);
    let work = precision + PRECISION_MARGIN + 16;
    let mut embedded: Vec<(u32, LocalElem)> = Vec::new();
    for (i, c) in tors.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        embedded.push((i as u32, complete(c, place, work)?));
    }
    let expected = tors.root_count();
    let np = tors.newton_polygon(place)?;
    let mut points = vec![LocalElem::exact_zero(place, &field)];
    for (val, _len) in np.root_valuations() {
        if !val.is_integer() {
            return Err(Error::IrrationalRepresentative(format!(
                "torsion valuation {val} is not an integer"
            )));
        }
        let s: i64 = (&val.to_integer())
            .try_into()
            .map_err(|_| Error::IrrationalRepresentative("valuation out of range".into()))?;
        // substitute X = u^s Y, normalize, and reduce
        let mut min_v = i64::MAX;
        let shifted: Vec<(u32, LocalElem)> = embedded
            .iter()
            .map(|(i, c)| {
                let q_i = psi.ctx().q().pow(*i) as i64;
                let sc = c.shift(s * q_i);
                if let Some(v) = sc.valuation() {
                    min_v = min_v.min(v);
                }
                (*i, sc)
            })
            .collect();
        let mut residue_coeffs: Vec<(u32, PolyA)> = Vec::new();
        for (i, c) in &shifted {
            let r = c.coeff(min_v);
            if !r.is_zero() {
                residue_coeffs.push((*i, r));
            }
        }
        // separability of the reduced polynomial: linear coefficient nonzero
        if !residue_coeffs.iter().any(|(i, _)| *i == 0) {
            return Err(Error::IrrationalRepresentative(
                "residue polynomial is inseparable at this slope".into(),
            ));
        }
        // kernel of the residue additive polynomial by scanning F_{q^d}
        let mut lifts = Vec::new();
        for x in field.elements() {
            if x.is_zero() {
                continue;
            }
            let mut acc = field.zero();
            for (i, c) in &residue_coeffs {
                let mut xp = x.clone();
                for _ in 0..*i {
                    xp = field.frob_q(&xp);
                }
                acc = field.add(&acc, &field.mul(c, &xp));
            }
            if acc.is_zero() {
                lifts.push(x);
            }
        }
        let g_lin = shifted
            .iter()
            .find(|(i, _)| *i == 0)
            .map(|(_, c)| c.clone())
            .unwrap();
        for x0 in lifts {
            let mut y = LocalElem::monomial(place, &field, 0, x0);
            let mut iter = 0;
            loop {
                let gy = {
                    let mut acc = LocalElem::exact_zero(place, &field);
                    for (i, c) in &shifted {
                        acc = acc.add(&c.mul(&y.frobenius_q_pow(*i, Some(work + min_v.abs()))));
                    }
                    acc
                };
                let gy = gy.shift(-min_v);
                match gy.valuation() {
                    None => break,
                    Some(v) if v >= work => break,
                    Some(_) => {
                        let corr = gy.div_to(&g_lin.shift(-min_v), work)?;
                        y = y.sub(&corr).truncated(work);
                    }
                }
                iter += 1;
                if iter > 64 {
                    return Err(Error::PrecisionNotAttained {
                        target: work,
                        attained: 0,
                        context: "Hensel lift did not converge".into(),
                    });
                }
            }
            points.push(y.shift(s).truncated(work));
        }
    }
    if points.len() as u64 != expected {
        return Err(Error::IrrationalRepresentative(format!(
            "found {} rational torsion points, expected {}",
            points.len(),
            expected
        )));
    }
    Ok(points)
}

/// Output of the product-formula comparison.
#[derive(Clone, Debug)]
pub struct ProductFormulaReport {
    /// Leading coefficient of the reconstructed phi_{p^m}.
    pub lhs: LocalElem,
    /// p^m / prod e_Gamma(z) over nonzero representatives.
    pub rhs: LocalElem,
    /// Valuation floor of lhs - rhs.
    pub defect_valuation: i64,
    /// Number of representatives, q^{(r_psi + 1) deg p^m}.
    pub representative_count: u64,
    /// v(a(p^m)) as computed from the reconstruction.
    pub v_leading: i64,
    /// The covolume D(phi, l) of the datum.
    pub covolume: NormValue,
}

/// Build gamma = psi_{p^m}(seed), reconstruct phi, and compare the leading
/// coefficient of phi_{p^m} against p^m / prod e_Gamma(z) over the
/// representative set Z = {psi_a(seed) + eta}.
pub fn product_formula_check(
    psi: &DrinfeldModule,
    place: &PrimePlace,
    p: &PolyA,
    m: u32,
    seed: &RationalFn,
    precision: i64,
) -> Result<ProductFormulaReport> {
    let ctx = psi.ctx().clone();
    let q = ctx.q();
    let work = precision + PRECISION_MARGIN + 32;
    let s = complete(seed, place, work)?;
    let vs = s
        .valuation()
        .ok_or_else(|| Error::PrecisionExhausted("seed is zero to precision".into()))?;
    if vs >= 0 {
        return Err(Error::NonNegativeValuation(vs));
    }
    let pm = p.pow(m as u64);
    let pm_tors = psi.torsion_poly(&pm)?;
    let gamma = pm_tors.eval_local_raw(&s, work)?;
    let datum = TateDatum::new(psi.clone(), place.clone(), gamma)?;
    let recon = reconstruct_phi(&datum, precision)?;
    let phi_pm = recon.module.phi_of(&pm)?;
    let lhs = phi_pm.coeffs().last().unwrap().clone();
    let v_leading = lhs
        .valuation()
        .ok_or_else(|| Error::PrecisionExhausted("leading coefficient lost to precision".into()))?;

    let torsion = rational_torsion_points(psi, place, p, m, precision)?;
    let degpm = pm.degree().unwrap() as u32;
    let psi_t_emb = {
        let mut coeffs = Vec::new();
        for g in psi.coeffs() {
            coeffs.push(complete(g, place, work)?);
        }
        OrePoly::new(coeffs)
    };
    let mut psi_pows = vec![s.clone()];
    for _ in 1..degpm {
        let terms: Vec<(u32, LocalElem)> = psi_t_emb
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (i as u32, c.clone()))
            .collect();
        let next = eval_additive_terms(&terms, psi_pows.last().unwrap(), None)?;
        psi_pows.push(next);
    }
    let field = s.field().clone();
    let mut reps: Vec<LocalElem> = Vec::new();
    let a_count = q.pow(degpm);
    for n in 0..a_count {
        let mut base = LocalElem::exact_zero(place, &field);
        let mut mdig = n;
        for pw in psi_pows.iter() {
            let c = ctx.elem(mdig % q);
            mdig /= q;
            if !c.is_zero() {
                base = base.add(&pw.mul_residue(&field.from_fq(c)));
            }
        }
        for eta in &torsion {
            reps.push(base.add(eta));
        }
    }
    let expected_count = q.pow((datum.r_psi() + 1) * degpm);
    if reps.len() as u64 != expected_count {
        return Err(Error::Inconsistency(format!(
            "representative count {} != {}",
            reps.len(),
            expected_count
        )));
    }
    // representative valuation floor: v(z) >= v(gamma) / q^{r_psi}
    let vg = datum.gamma().valuation().unwrap();
    let qr = q.pow(datum.r_psi()) as i64;
    for z in &reps {
        if let Some(vz) = z.valuation() {
            if vz * qr < vg {
                return Err(Error::Inconsistency(format!(
                    "representative valuation {vz} below the floor {vg}/{qr}"
                )));
            }
        }
    }
    let pm_emb = embed_poly(&pm, place, work)?;
    #[cfg(feature = "parallel")]
    let evals: Vec<Result<Option<LocalElem>>> = {
        use rayon::prelude::*;
        reps.par_iter()
            .map(|z| {
                if z.is_zero_to_prec() {
                    Ok(None)
                } else {
                    recon.series.eval(z, precision).map(Some)
                }
            })
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let evals: Vec<Result<Option<LocalElem>>> = reps
        .iter()
        .map(|z| {
            if z.is_zero_to_prec() {
                Ok(None)
            } else {
                recon.series.eval(z, precision).map(Some)
            }
        })
        .collect();
    let mut prod = LocalElem::one(place, &field);
    let mut nonzero = 0u64;
    for e in evals {
        if let Some(v) = e? {
            prod = prod.mul(&v);
            nonzero += 1;
        }
    }
    if nonzero + 1 != expected_count {
        return Err(Error::Inconsistency(
            "a nonzero representative evaluated to zero under e_Gamma".into(),
        ));
    }
    let rhs = pm_emb.div_to(&prod, work)?;
    let diff = lhs.sub(&rhs);
    let defect = match diff.valuation() {
        Some(v) => v,
        None => diff.prec().finite().unwrap_or(i64::MAX),
    };
    Ok(ProductFormulaReport {
        lhs,
        rhs,
        defect_valuation: defect,
        representative_count: expected_count,
        v_leading,
        covolume: datum.covolume()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqContext;
    use crate::newton::rat_int;

    fn carlitz_datum(q: u32, vgamma: i64) -> TateDatum {
        let ctx = FqContext::prime(q).unwrap();
        let psi = DrinfeldModule::carlitz(&ctx);
        let place = PrimePlace::finite(PolyA::t(&ctx)).unwrap();
        let field = ResidueField::for_place(&ctx, &place);
        let gamma = LocalElem::monomial(&place, &field, vgamma, field.one());
        TateDatum::new(psi, place, gamma).unwrap()
    }

    #[test]
    fn lattice_points_layers() {
        let datum = carlitz_datum(2, -1);
        let b0 = datum.covolume().unwrap();
        let pts = datum.lattice_points(&b0, 40).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].valuation(), Some(-1));
        let b1 = NormValue::q_power(2, 1).mul(&b0);
        let pts1 = datum.lattice_points(&b1, 40).unwrap();
        assert_eq!(pts1.len(), 3);
        let mut vals: Vec<i64> = pts1.iter().map(|p| p.valuation().unwrap()).collect();
        vals.sort();
        assert_eq!(vals, vec![-2, -2, -1]);
        let small = NormValue::new(BigRational::new(1.into(), 2.into()), 1).unwrap();
        assert!(matches!(
            datum.lattice_points(&small, 40),
            Err(Error::BoundTooSmall)
        ));
    }

    #[test]
    fn single_layer_closed_form() {
        // q=2, gamma = t^{-1} at (t): the layer-0 partial product is
        // X - X^2/gamma^{q-1} = X + t X^2; after all layers e_1 = t + O(t^2)
        let datum = carlitz_datum(2, -1);
        let series = exp_series(&datum, 3, 20).unwrap();
        assert_eq!(series.coeff(0).valuation(), Some(0)); // e_0 = 1
        assert!(series.coeff(0).coeff(0).is_one());
        let e1 = series.coeff(1);
        assert_eq!(e1.valuation(), Some(1));
        assert!(e1.coeff(1).is_one());
    }

    #[test]
    fn exp_series_stable_under_larger_precision() {
        let datum = carlitz_datum(2, -1);
        let s1 = exp_series(&datum, 3, 20).unwrap();
        let s2 = exp_series(&datum, 3, 30).unwrap();
        for i in 0..=3 {
            let d = s1.coeff(i).sub(s2.coeff(i));
            assert!(
                d.is_zero_to_prec() && d.prec().at_least(20),
                "coefficient {i} not stable"
            );
        }
    }

    #[test]
    fn reconstruct_carlitz_rank2() {
        for q in [2u32, 3] {
            for vg in [-1i64, -2] {
                let datum = carlitz_datum(q, vg);
                let recon = reconstruct_phi(&datum, 30).unwrap();
                assert_eq!(recon.module.rank(), 2, "q={q} vg={vg}");
                assert!(
                    recon.defect_valuation >= 28,
                    "defect {} at q={q} vg={vg}",
                    recon.defect_valuation
                );
                let (mu, r_psi, kind) = recon.module.stable_model().unwrap();
                assert_eq!(r_psi, 1);
                assert_eq!(kind, ReductionKind::StableBad);
                assert_eq!(mu, rat_int(0));
                // bad reduction shows in the positive valuation of the
                // leading coefficient
                assert!(recon.module.coeffs()[2].valuation().unwrap() > 0);
            }
        }
    }

    #[test]
    fn torsion_points_q2_level_t() {
        let ctx = FqContext::prime(2).unwrap();
        let psi = DrinfeldModule::carlitz(&ctx);
        let place = PrimePlace::finite(PolyA::t(&ctx)).unwrap();
        let pts = rational_torsion_points(&psi, &place, &PolyA::t(&ctx), 1, 30).unwrap();
        assert_eq!(pts.len(), 2);
        let nonzero: Vec<&LocalElem> = pts.iter().filter(|p| !p.is_zero_to_prec()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].valuation(), Some(1));
    }

    #[test]
    fn torsion_points_q3_split_prime() {
        let ctx = FqContext::prime(3).unwrap();
        let psi = DrinfeldModule::carlitz(&ctx);
        let place = PrimePlace::finite(PolyA::t(&ctx)).unwrap();
        let p = PolyA::from_coeffs(&ctx, &[ctx.from_int(2), ctx.from_int(1)]);
        let pts = rational_torsion_points(&psi, &place, &p, 1, 30).unwrap();
        assert_eq!(pts.len(), 3);
        for p in pts.iter().filter(|p| !p.is_zero_to_prec()) {
            assert_eq!(p.valuation(), Some(0));
        }
    }

    #[test]
    fn torsion_points_q3_at_t_are_irrational() {
        let ctx = FqContext::prime(3).unwrap();
        let psi = DrinfeldModule::carlitz(&ctx);
        let place = PrimePlace::finite(PolyA::t(&ctx)).unwrap();
        assert!(matches!(
            rational_torsion_points(&psi, &place, &PolyA::t(&ctx), 1, 30),
            Err(Error::IrrationalRepresentative(_))
        ));
    }

    #[test]
    fn product_formula_q2() {
        let ctx = FqContext::prime(2).unwrap();
        let psi = DrinfeldModule::carlitz(&ctx);
        let place = PrimePlace::finite(PolyA::t(&ctx)).unwrap();
        let seed = RationalFn::new(PolyA::one(&ctx), PolyA::t(&ctx)).unwrap();
        let rep = product_formula_check(&psi, &place, &PolyA::t(&ctx), 1, &seed, 30).unwrap();
        assert_eq!(rep.representative_count, 4);
        assert!(rep.defect_valuation >= 28, "defect {}", rep.defect_valuation);
        assert_eq!(rep.v_leading, 2);
    }

    #[test]
    fn covolume_examples() {
        let d1 = carlitz_datum(2, -1);
        assert_eq!(d1.covolume().unwrap(), NormValue::from_integer(1).unwrap());
        let d8 = carlitz_datum(2, -8);
        assert_eq!(d8.covolume().unwrap(), NormValue::from_integer(8).unwrap());
    }

    #[test]
    fn datum_rejects_bad_reduction_psi() {
        let ctx = FqContext::prime(2).unwrap();
        let t = RationalFn::from_poly(PolyA::t(&ctx));
        let psi = DrinfeldModule::new(&ctx, vec![t.clone(), t.clone()]).unwrap();
        let place = PrimePlace::finite(PolyA::t(&ctx)).unwrap();
        let field = ResidueField::for_place(&ctx, &place);
        let gamma = LocalElem::monomial(&place, &field, -1, field.one());
        assert!(TateDatum::new(psi, place, gamma).is_err());
    }

    #[test]
    fn datum_rejects_nonnegative_gamma() {
        let ctx = FqContext::prime(2).unwrap();
        let psi = DrinfeldModule::carlitz(&ctx);
        let place = PrimePlace::finite(PolyA::t(&ctx)).unwrap();
        let field = ResidueField::for_place(&ctx, &place);
        let gamma = LocalElem::one(&place, &field);
        assert!(matches!(
            TateDatum::new(psi, place, gamma),
            Err(Error::NonNegativeValuation(0))
        ));
    }
}
