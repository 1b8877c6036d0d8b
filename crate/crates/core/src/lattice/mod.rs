//! A-lattices with exact norms: sup-norm lattices in an ambient space of
//! Laurent series at infinity, reduction to successive-minimum bases, exact
//! radical norm values, covolume and the last-minimum estimate.

pub mod enumeration;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fq::{Fq, FqContext};
use crate::local::{embed_poly, LocalElem};
use crate::place::PrimePlace;
use crate::poly::PolyA;
use crate::residue::ResidueField;

/// An exact norm value x^{1/s} with x a positive rational and s >= 1.
/// Comparisons and products are exact; nothing is ever rounded to floating
/// point.
#[derive(Clone, Debug)]
pub struct NormValue {
    base: BigRational,
    root: u32,
}

impl NormValue {
    pub fn new(base: BigRational, root: u32) -> Result<Self> {
        if base <= BigRational::zero() {
            return Err(Error::NonpositiveEpsilon);
        }
        if root == 0 {
            return Err(Error::InvalidInput("root index must be >= 1".into()));
        }
        Ok(NormValue { base, root }.normalized())
    }

    pub fn from_rational(x: BigRational) -> Result<Self> {
        Self::new(x, 1)
    }

    pub fn from_integer(n: i64) -> Result<Self> {
        Self::from_rational(BigRational::from(BigInt::from(n)))
    }

    pub fn one() -> Self {
        NormValue {
            base: BigRational::one(),
            root: 1,
        }
    }

    /// q^d for a (possibly negative) integer exponent d.
    pub fn q_power(q: u64, d: i64) -> Self {
        let q = BigRational::from(BigInt::from(q));
        let base = if d >= 0 {
            q.pow(d as i32)
        } else {
            q.pow(d as i32)
        };
        NormValue { base, root: 1 }
    }

    fn normalized(mut self) -> Self {
        if self.root == 1 {
            return self;
        }
        // pull out the largest divisor of the root index that has an exact
        // rational root
        let mut d = self.root;
        while d > 1 {
            if self.root % d == 0 {
                if let Some(r) = rational_nth_root(&self.base, d) {
                    self.base = r;
                    self.root /= d;
                    if self.root == 1 {
                        return self;
                    }
                    d = self.root;
                    continue;
                }
            }
            d -= 1;
        }
        self
    }

    pub fn base(&self) -> &BigRational {
        &self.base
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    /// Exact rational value when the root index reduces to 1.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.root == 1 {
            Some(self.base.clone())
        } else {
            None
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // x^{1/s} y^{1/r} = (x^r y^s)^{1/(sr)}
        let s = self.root;
        let r = rhs.root;
        let base = self.base.pow(r as i32) * rhs.base.pow(s as i32);
        NormValue {
            base,
            root: s * r,
        }
        .normalized()
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.pow(-1))
    }

    /// (x^{1/s})^k for a possibly negative integer k.
    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return NormValue::one();
        }
        let base = self.base.pow(k as i32);
        NormValue {
            base,
            root: self.root,
        }
        .normalized()
    }

    /// The s-th power as an exact rational (always exists).
    pub fn rational_power(&self) -> BigRational {
        self.base.clone()
    }

    /// A certified rational upper bound on the value: exact when rational,
    /// otherwise ceil(numerator^(1/s)) / floor(denominator^(1/s)).
    pub fn ceil_rational(&self) -> BigRational {
        if self.root == 1 {
            return self.base.clone();
        }
        let n = self.base.numer().magnitude();
        let d = self.base.denom().magnitude();
        let rn = n.nth_root(self.root);
        let rn = if &rn.pow(self.root) == n {
            rn
        } else {
            rn + 1u32
        };
        let rd = d.nth_root(self.root);
        BigRational::new(BigInt::from(rn), BigInt::from(rd.max(1u32.into())))
    }

    fn cmp_value(&self, rhs: &Self) -> Ordering {
        // x^{1/s} vs y^{1/r}  <=>  x^r vs y^s
        let lhs = self.base.pow(rhs.root as i32);
        let rhsv = rhs.base.pow(self.root as i32);
        lhs.cmp(&rhsv)
    }
}

fn rational_nth_root(x: &BigRational, n: u32) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    if &rn.pow(n) == num && &rd.pow(n) == den {
        Some(BigRational::new(BigInt::from(rn), BigInt::from(rd)))
    } else {
        None
    }
}

impl PartialEq for NormValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}
impl Eq for NormValue {}
impl PartialOrd for NormValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}
impl Ord for NormValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root == 1 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "({})^(1/{})", self.base, self.root)
        }
    }
}

/// Covolume D(Lambda) = product of the successive minima.
pub fn covolume(minima: &[NormValue]) -> NormValue {
    let mut acc = NormValue::one();
    for c in minima {
        acc = acc.mul(c);
    }
    acc
}

/// c_r <= eps^{-(r-1)} D(Lambda), valid whenever eps <= c_1.
pub fn last_minimum_bound(eps: &NormValue, covol: &NormValue, rank: u32) -> NormValue {
    eps.pow(-((rank as i64) - 1)).mul(covol)
}

/// Gardeyn's norm of a lattice point: (-v(gamma))^{1/r_psi}. Errors when the
/// valuation is not negative.
pub fn gardeyn_norm(gamma: &LocalElem, r_psi: u32) -> Result<NormValue> {
    let v = gamma
        .valuation()
        .ok_or_else(|| Error::PrecisionExhausted("norm of a zero-to-precision element".into()))?;
    if v >= 0 {
        return Err(Error::NonNegativeValuation(v));
    }
    NormValue::new(BigRational::from(BigInt::from(-v)), r_psi)
}

/// A free A-module of full column rank inside F_q((1/t))^n, with the sup norm
/// ||v|| = q^{max_i deg_infty v_i}.
#[derive(Clone, Debug)]
pub struct AmbientLattice {
    ctx: FqContext,
    dim: usize,
    columns: Vec<Vec<LocalElem>>,
}

/// A successive-minimum basis with its minima.
#[derive(Clone, Debug)]
pub struct SuccessiveMinima {
    pub minima: Vec<NormValue>,
    pub witness: Vec<Vec<LocalElem>>,
    /// Norm exponents d_i with c_i = q^{d_i}.
    pub exponents: Vec<i64>,
}

impl AmbientLattice {
    pub fn new(ctx: &FqContext, columns: Vec<Vec<LocalElem>>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::InvalidInput("lattice needs at least one column".into()));
        }
        let dim = columns[0].len();
        if dim == 0 || columns.iter().any(|c| c.len() != dim) {
            return Err(Error::InvalidInput("ambient dimension mismatch".into()));
        }
        for col in &columns {
            for e in col {
                if e.place() != &PrimePlace::Infinite {
                    return Err(Error::MixedPlace);
                }
            }
        }
        if columns.len() > dim {
            return Err(Error::InvalidInput(
                "more columns than ambient dimension".into(),
            ));
        }
        Ok(AmbientLattice {
            ctx: ctx.clone(),
            dim,
            columns,
        })
    }

    /// Exact lattice from a matrix of polynomials (rows x columns).
    pub fn from_poly_matrix(ctx: &FqContext, rows: &[Vec<PolyA>]) -> Result<Self> {
        let dim = rows.len();
        let rank = rows.first().map_or(0, |r| r.len());
        if rank == 0 || rows.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidInput("ragged matrix".into()));
        }
        let inf = PrimePlace::infinite();
        let mut columns = vec![Vec::with_capacity(dim); rank];
        for row in rows {
            for (j, a) in row.iter().enumerate() {
                columns[j].push(embed_poly(a, &inf, i64::from(i32::MAX))?);
            }
        }
        Self::new(ctx, columns)
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn columns(&self) -> &[Vec<LocalElem>] {
        &self.columns
    }

    /// Reduce to a successive-minimum basis by iterated leading-coefficient
    /// cancellation and return the minima with their witness basis.
    pub fn reduce_basis(&self) -> Result<SuccessiveMinima> {
        let mut cols = self.columns.clone();
        loop {
            let degs: Vec<i64> = cols
                .iter()
                .map(|c| column_degree(c))
                .collect::<Result<Vec<_>>>()?;
            let leads: Vec<Vec<Fq>> = cols
                .iter()
                .zip(&degs)
                .map(|(c, &d)| leading_vector(c, d))
                .collect::<Result<Vec<_>>>()?;
            match fq_dependency(&self.ctx, &leads, self.dim) {
                None => break,
                Some(dep) => {
                    // cancel into the participating column of largest degree
                    // (smallest index on ties, for determinism)
                    let max_deg = dep
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, _)| degs[i])
                        .max()
                        .unwrap();
                    let target = dep
                        .iter()
                        .enumerate()
                        .position(|(i, c)| !c.is_zero() && degs[i] == max_deg)
                        .unwrap();
                    let field = ResidueField::for_place(&self.ctx, &PrimePlace::Infinite);
                    let mut newcol =
                        vec![LocalElem::exact_zero(&PrimePlace::Infinite, &field); self.dim];
                    for (i, c) in dep.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let shift = max_deg - degs[i]; // multiply by t^shift = u^{-shift}
                        for (row, e) in cols[i].iter().enumerate() {
                            let term = e.shift(-shift).mul_residue(&field.from_fq(*c));
                            newcol[row] = newcol[row].add(&term);
                        }
                    }
                    if newcol.iter().all(|e| e.is_exactly_zero()) {
                        return Err(Error::NotABasis);
                    }
                    let new_deg = column_degree(&newcol)?;
                    debug_assert!(new_deg < max_deg, "reduction strictly decreases the norm");
                    cols[target] = newcol;
                }
            }
        }
        let mut order: Vec<usize> = (0..cols.len()).collect();
        let degs: Vec<i64> = cols
            .iter()
            .map(|c| column_degree(c))
            .collect::<Result<Vec<_>>>()?;
        order.sort_by_key(|&i| degs[i]);
        let witness: Vec<Vec<LocalElem>> = order.iter().map(|&i| cols[i].clone()).collect();
        let exponents: Vec<i64> = order.iter().map(|&i| degs[i]).collect();
        let minima = exponents
            .iter()
            .map(|&d| NormValue::q_power(self.ctx.q(), d))
            .collect();
        Ok(SuccessiveMinima {
            minima,
            witness,
            exponents,
        })
    }

    pub fn successive_minima(&self) -> Result<Vec<NormValue>> {
        Ok(self.reduce_basis()?.minima)
    }

    /// Taguchi's criterion for a candidate basis given by its A-coordinate
    /// matrix M (candidate_j = sum_i M[i][j] . col_i): the candidate is a
    /// successive-minimum basis iff its leading vectors are F_q-independent.
    /// The candidate must generate the lattice: det M must be a unit of A.
    pub fn is_smb(&self, coords: &[Vec<PolyA>]) -> Result<bool> {
        let r = self.rank();
        if coords.len() != r || coords.iter().any(|row| row.len() != r) {
            return Err(Error::NotABasis);
        }
        let det = poly_det(&self.ctx, coords);
        if det.is_zero() || det.degree() != Some(0) {
            return Err(Error::NotABasis);
        }
        let inf = PrimePlace::infinite();
        let field = ResidueField::for_place(&self.ctx, &inf);
        let mut cands: Vec<Vec<LocalElem>> = Vec::with_capacity(r);
        for j in 0..r {
            let mut col = vec![LocalElem::exact_zero(&inf, &field); self.dim];
            for i in 0..r {
                let m = &coords[i][j];
                if m.is_zero() {
                    continue;
                }
                let me = embed_poly(m, &inf, i64::from(i32::MAX))?;
                for (row, e) in self.columns[i].iter().enumerate() {
                    col[row] = col[row].add(&e.mul(&me));
                }
            }
            cands.push(col);
        }
        let mut leads = Vec::with_capacity(r);
        for c in &cands {
            let d = column_degree(c)?;
            leads.push(leading_vector(c, d)?);
        }
        Ok(fq_dependency(&self.ctx, &leads, self.dim).is_none())
    }

    /// ||sum a_i col_i|| as a norm exponent, computed exactly.
    pub fn combination_degree(&self, coeffs: &[PolyA]) -> Result<Option<i64>> {
        let inf = PrimePlace::infinite();
        let field = ResidueField::for_place(&self.ctx, &inf);
        let mut acc = vec![LocalElem::exact_zero(&inf, &field); self.dim];
        for (a, col) in coeffs.iter().zip(&self.columns) {
            if a.is_zero() {
                continue;
            }
            let ae = embed_poly(a, &inf, i64::from(i32::MAX))?;
            for (row, e) in col.iter().enumerate() {
                acc[row] = acc[row].add(&e.mul(&ae));
            }
        }
        if acc.iter().all(|e| e.is_exactly_zero()) {
            return Ok(None);
        }
        Ok(Some(column_degree(&acc)?))
    }
}

/// deg(v) = max_i deg_infty(v_i); requires every entry's degree to be certified
/// at its precision.
fn column_degree(col: &[LocalElem]) -> Result<i64> {
    let mut best: Option<i64> = None;
    let mut unknown_bound: Option<i64> = None;
    for e in col {
        match e.valuation() {
            Some(v) => {
                let d = -v;
                best = Some(best.map_or(d, |b: i64| b.max(d)));
            }
            None => {
                if !e.is_exactly_zero() {
                    let p = e.prec().finite().unwrap();
                    let bound = -p; // degree of this entry is < -p + 1
                    unknown_bound = Some(unknown_bound.map_or(bound, |b: i64| b.max(bound)));
                }
            }
        }
    }
    match (best, unknown_bound) {
        (Some(b), Some(u)) if u >= b => Err(Error::PrecisionExhausted(format!(
            "column degree ambiguous: known {b}, undetermined entries up to {u}"
        ))),
        (Some(b), _) => Ok(b),
        (None, _) => Err(Error::PrecisionExhausted(
            "column with no certified nonzero entry".into(),
        )),
    }
}

/// Coefficient vector at the top degree d: entry i is the coefficient of
/// u^{-d} in v_i (zero when deg v_i < d).
fn leading_vector(col: &[LocalElem], d: i64) -> Result<Vec<Fq>> {
    let mut out = Vec::with_capacity(col.len());
    for e in col {
        let c = e.coeff(-d);
        // residue field at infinity is F_q; constants only
        out.push(c.coeff(0));
    }
    Ok(out)
}

/// A nontrivial F_q-dependency among the given vectors, or None if they are
/// independent. Deterministic Gaussian elimination.
fn fq_dependency(ctx: &FqContext, vectors: &[Vec<Fq>], dim: usize) -> Option<Vec<Fq>> {
    let r = vectors.len();
    // rows: [vector | identity] over F_q; eliminate the vector part
    let mut rows: Vec<(Vec<Fq>, Vec<Fq>)> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut id = vec![Fq::ZERO; r];
            id[i] = Fq::ONE;
            (v.clone(), id)
        })
        .collect();
    let mut pivot_cols: Vec<usize> = Vec::new();
    for row_i in 0..r {
        // find pivot column in row_i after elimination by previous pivots
        let mut pivot = None;
        for col in 0..dim {
            if !rows[row_i].0[col].is_zero() {
                pivot = Some(col);
                break;
            }
        }
        match pivot {
            None => {
                return Some(rows[row_i].1.clone());
            }
            Some(pc) => {
                pivot_cols.push(pc);
                // normalize and eliminate below
                let inv = ctx.inv(rows[row_i].0[pc]).unwrap();
                for x in rows[row_i].0.iter_mut() {
                    *x = ctx.mul(*x, inv);
                }
                for x in rows[row_i].1.iter_mut() {
                    *x = ctx.mul(*x, inv);
                }
                let (head, tail) = rows.split_at_mut(row_i + 1);
                let prow = &head[row_i];
                for other in tail.iter_mut() {
                    let f = other.0[pc];
                    if f.is_zero() {
                        continue;
                    }
                    for (a, b) in other.0.iter_mut().zip(&prow.0) {
                        *a = ctx.sub(*a, ctx.mul(f, *b));
                    }
                    for (a, b) in other.1.iter_mut().zip(&prow.1) {
                        *a = ctx.sub(*a, ctx.mul(f, *b));
                    }
                }
            }
        }
    }
    None
}

/// Determinant of a square PolyA matrix by cofactor expansion (desk scale).
pub fn poly_det(ctx: &FqContext, m: &[Vec<PolyA>]) -> PolyA {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = PolyA::zero(ctx);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<PolyA>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let sub = poly_det(ctx, &minor);
        let term = m[0][j].mul(&sub);
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn f2() -> FqContext {
        FqContext::prime(2).unwrap()
    }

    fn poly(ctx: &FqContext, coeffs: &[i64]) -> PolyA {
        let v: Vec<Fq> = coeffs.iter().map(|&c| ctx.from_int(c)).collect();
        PolyA::from_coeffs(ctx, &v)
    }

    #[test]
    fn norm_value_exact_roots() {
        let n = NormValue::new(BigRational::from_i64(8).unwrap(), 3).unwrap();
        assert_eq!(n.as_rational(), Some(BigRational::from_i64(2).unwrap()));
        let m = NormValue::new(BigRational::from_i64(2).unwrap(), 2).unwrap();
        assert_eq!(m.as_rational(), None);
        // sqrt(2)^2 = 2
        assert_eq!(
            m.mul(&m).as_rational(),
            Some(BigRational::from_i64(2).unwrap())
        );
    }

    #[test]
    fn norm_value_ordering_is_exact() {
        // 2^(1/2) vs 5^(1/3): 2^3 = 8 < 25 = 5^2
        let a = NormValue::new(BigRational::from_i64(2).unwrap(), 2).unwrap();
        let b = NormValue::new(BigRational::from_i64(5).unwrap(), 3).unwrap();
        assert!(a < b);
        let c = NormValue::new(BigRational::from_i64(4).unwrap(), 2).unwrap();
        assert_eq!(c, NormValue::from_integer(2).unwrap());
    }

    #[test]
    fn last_minimum_bound_examples() {
        let q2 = NormValue::q_power(2, 2);
        let one = NormValue::one();
        assert_eq!(last_minimum_bound(&one, &q2, 2), q2);
        assert_eq!(last_minimum_bound(&one, &one, 5), one);
        // eps = 1/2, D = q (q = 2), r = 3 -> 4q = 8
        let eps = NormValue::new(BigRational::new(1.into(), 2.into()), 1).unwrap();
        let d = NormValue::q_power(2, 1);
        assert_eq!(
            last_minimum_bound(&eps, &d, 3).as_rational(),
            Some(BigRational::from_i64(8).unwrap())
        );
    }

    #[test]
    fn gardeyn_norm_examples() {
        let ctx = f2();
        let inf = PrimePlace::infinite();
        let field = ResidueField::for_place(&ctx, &inf);
        let g = LocalElem::monomial(&inf, &field, -3, field.one());
        let n = gardeyn_norm(&g, 1).unwrap();
        assert_eq!(n.as_rational(), Some(BigRational::from_i64(3).unwrap()));
        let g8 = LocalElem::monomial(&inf, &field, -8, field.one());
        let n8 = gardeyn_norm(&g8, 3).unwrap();
        assert_eq!(n8.as_rational(), Some(BigRational::from_i64(2).unwrap()));
        let unit = LocalElem::one(&inf, &field);
        assert!(matches!(
            gardeyn_norm(&unit, 1),
            Err(Error::NonNegativeValuation(0))
        ));
    }

    #[test]
    fn identity_basis_already_reduced() {
        let ctx = f2();
        let rows = vec![
            vec![poly(&ctx, &[1]), poly(&ctx, &[0])],
            vec![poly(&ctx, &[0]), poly(&ctx, &[1])],
        ];
        let lat = AmbientLattice::from_poly_matrix(&ctx, &rows).unwrap();
        let smb = lat.reduce_basis().unwrap();
        assert_eq!(smb.exponents, vec![0, 0]);
    }

    #[test]
    fn spec_example_t_t1_lattice() {
        // columns (t,1), (t+1,1): minima (1,1), witness {(1,0),(0,1)}
        let ctx = f2();
        let rows = vec![
            vec![poly(&ctx, &[0, 1]), poly(&ctx, &[1, 1])],
            vec![poly(&ctx, &[1]), poly(&ctx, &[1])],
        ];
        let lat = AmbientLattice::from_poly_matrix(&ctx, &rows).unwrap();
        let smb = lat.reduce_basis().unwrap();
        assert_eq!(smb.exponents, vec![0, 0]);
        // witness vectors are (1,0) and (0,1) in some order
        let mut rendered: Vec<Vec<String>> = smb
            .witness
            .iter()
            .map(|col| col.iter().map(|e| format!("{}", e)).collect())
            .collect();
        rendered.sort();
        assert_eq!(rendered.len(), 2);
        // covolume matches q^{deg det}: det = -1, deg 0
        let cov = covolume(&smb.minima);
        assert_eq!(cov, NormValue::one());
    }

    #[test]
    fn diagonal_t2_1() {
        let ctx = f2();
        let rows = vec![
            vec![poly(&ctx, &[0, 0, 1]), poly(&ctx, &[0])],
            vec![poly(&ctx, &[0]), poly(&ctx, &[1])],
        ];
        let lat = AmbientLattice::from_poly_matrix(&ctx, &rows).unwrap();
        let smb = lat.reduce_basis().unwrap();
        assert_eq!(smb.exponents, vec![0, 2]);
        assert_eq!(covolume(&smb.minima), NormValue::q_power(2, 2));
    }

    #[test]
    fn is_smb_spec_examples() {
        let ctx = f2();
        let rows = vec![
            vec![poly(&ctx, &[0, 1]), poly(&ctx, &[1, 1])],
            vec![poly(&ctx, &[1]), poly(&ctx, &[1])],
        ];
        let lat = AmbientLattice::from_poly_matrix(&ctx, &rows).unwrap();
        // the defining basis itself is not an SMB
        let id = vec![
            vec![poly(&ctx, &[1]), poly(&ctx, &[0])],
            vec![poly(&ctx, &[0]), poly(&ctx, &[1])],
        ];
        assert!(!lat.is_smb(&id).unwrap());
        // single-vector bases are always SMBs
        let rows1 = vec![vec![poly(&ctx, &[0, 1])], vec![poly(&ctx, &[1])]];
        let lat1 = AmbientLattice::from_poly_matrix(&ctx, &rows1).unwrap();
        let id1 = vec![vec![poly(&ctx, &[1])]];
        assert!(lat1.is_smb(&id1).unwrap());
        // non-unimodular coordinates are rejected
        let bad = vec![
            vec![poly(&ctx, &[0, 1]), poly(&ctx, &[0])],
            vec![poly(&ctx, &[0]), poly(&ctx, &[1])],
        ];
        assert!(matches!(lat.is_smb(&bad), Err(Error::NotABasis)));
    }

    #[test]
    fn reduced_output_satisfies_smb_criterion() {
        let ctx = f2();
        let rows = vec![
            vec![poly(&ctx, &[0, 1, 1]), poly(&ctx, &[1, 0, 1])],
            vec![poly(&ctx, &[1, 1]), poly(&ctx, &[0, 1])],
        ];
        let lat = AmbientLattice::from_poly_matrix(&ctx, &rows).unwrap();
        let smb = lat.reduce_basis().unwrap();
        // rebuild a lattice from the witness and check its leading vectors
        // via is_smb with identity coordinates
        let wit = AmbientLattice::new(&ctx, smb.witness.clone()).unwrap();
        let id = vec![
            vec![poly(&ctx, &[1]), poly(&ctx, &[0])],
            vec![poly(&ctx, &[0]), poly(&ctx, &[1])],
        ];
        assert!(wit.is_smb(&id).unwrap());
    }

    #[test]
    fn dependent_columns_detected() {
        let ctx = f2();
        let rows = vec![
            vec![poly(&ctx, &[0, 1]), poly(&ctx, &[0, 1])],
            vec![poly(&ctx, &[1]), poly(&ctx, &[1])],
        ];
        let lat = AmbientLattice::from_poly_matrix(&ctx, &rows).unwrap();
        assert!(matches!(lat.reduce_basis(), Err(Error::NotABasis)));
    }

    #[test]
    fn low_precision_triggers_error() {
        let ctx = f2();
        let inf = PrimePlace::infinite();
        let field = ResidueField::for_place(&ctx, &inf);
        // an entry that is zero to very low precision: degree cannot be
        // certified against the known column
        let fuzzy = LocalElem::zero_to_prec(&inf, &field, -5);
        let exact = LocalElem::one(&inf, &field);
        let lat = AmbientLattice::new(&ctx, vec![vec![exact, fuzzy]]).unwrap();
        assert!(matches!(
            lat.reduce_basis(),
            Err(Error::PrecisionExhausted(_))
        ));
    }
}
