//! The coefficient field F_q, q = p^e.
//!
//! Elements are indices into a fixed enumeration: the element with index
//! `n = a_0 + a_1 p + ... + a_{e-1} p^{e-1}` is `a_0 + a_1 w + ... + a_{e-1} w^{e-1}`
//! where `w` is the class of the defining polynomial's variable. For e = 1 the
//! index is just the residue mod p. Arithmetic goes through tables built at
//! construction time, so q is capped.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field size. Table-driven arithmetic keeps everything exact.
pub const MAX_Q: u64 = 512;

/// An element of F_q, identified by its index in the canonical enumeration.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fq(pub(crate) u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    p: u32,
    e: u32,
    q: u64,
    /// Defining polynomial coefficients over F_p, constant first, length e+1, monic.
    /// For e = 1 this is the identity placeholder [0, 1] (the map w -> w).
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>, // inv[0] unused
}

/// Context for F_q arithmetic. Cheap to clone (shared tables).
#[derive(Clone)]
pub struct FqContext {
    inner: Arc<Inner>,
}

impl PartialEq for FqContext {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.e == other.inner.e
            && self.inner.modulus == other.inner.modulus
    }
}
impl Eq for FqContext {}

impl fmt::Debug for FqContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqContext(q={})", self.inner.q)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomials over F_p as coefficient vectors (constant first), used only to
/// build defining polynomials.
mod fp_poly {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r: Vec<u32> = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lb_inv = mod_inv(b[db], p);
        while r.len() > db {
            let dr = r.len() - 1;
            let f = (r[dr] as u64 * lb_inv as u64 % p as u64) as u32;
            for i in 0..=db {
                let idx = dr - db + i;
                let sub = (f as u64 * b[i] as u64 % p as u64) as u32;
                r[idx] = ((r[idx] + p) - sub) % p;
            }
            trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    pub fn mod_inv(a: u32, p: u32) -> u32 {
        // Fermat; p is prime and a != 0.
        pow(a, (p - 2) as u64, p)
    }

    pub fn pow(mut a: u32, mut n: u64, p: u32) -> u32 {
        let mut acc: u64 = 1;
        let mut base = a as u64 % p as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            n >>= 1;
        }
        a = acc as u32;
        a
    }

    /// Irreducibility over F_p by trial division against all monic polynomials
    /// of degree up to deg/2. Fine at the degrees used for defining polynomials.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        for dd in 1..=d / 2 {
            // iterate monic polys of degree dd
            let count = (p as u64).pow(dd as u32);
            for n in 0..count {
                let mut g = Vec::with_capacity(dd + 1);
                let mut m = n;
                for _ in 0..dd {
                    g.push((m % p as u64) as u32);
                    m /= p as u64;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FqContext {
    /// Prime field F_p.
    pub fn prime(p: u32) -> Result<Self> {
        Self::extension(p, 1)
    }

    /// F_{p^e} with the canonical defining polynomial: the first monic
    /// irreducible of degree e in the index enumeration.
    pub fn extension(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::InvalidInput("extension degree must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(e).ok_or(Error::FieldTooLarge(u64::MAX, MAX_Q))?;
        if q > MAX_Q {
            return Err(Error::FieldTooLarge(q, MAX_Q));
        }
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            Self::canonical_modulus(p, e)
        };
        Ok(Self::build(p, e, q, modulus))
    }

    /// F_{p^e} with an explicitly given defining polynomial (constant first,
    /// monic, length e+1). Verified irreducible.
    pub fn with_modulus(p: u32, e: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let q = (p as u64).checked_pow(e).ok_or(Error::FieldTooLarge(u64::MAX, MAX_Q))?;
        if q > MAX_Q {
            return Err(Error::FieldTooLarge(q, MAX_Q));
        }
        if modulus.len() != e as usize + 1 || modulus[e as usize] != 1 {
            return Err(Error::InvalidInput(
                "defining polynomial must be monic of degree e".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput(
                "defining polynomial coefficients must be reduced mod p".into(),
            ));
        }
        if e > 1 && !fp_poly::is_irreducible(&modulus, p) {
            return Err(Error::NotIrreducible(format!("{modulus:?} over F_{p}")));
        }
        Ok(Self::build(p, e, q, modulus))
    }

    fn canonical_modulus(p: u32, e: u32) -> Vec<u32> {
        let count = (p as u64).pow(e);
        for n in 0..count {
            let mut f = Vec::with_capacity(e as usize + 1);
            let mut m = n;
            for _ in 0..e {
                f.push((m % p as u64) as u32);
                m /= p as u64;
            }
            f.push(1);
            if fp_poly::is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials of every degree exist over F_p")
    }

    fn build(p: u32, e: u32, q: u64, modulus: Vec<u32>) -> Self {
        let qs = q as usize;
        let digits = |n: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(e as usize);
            let mut m = n;
            for _ in 0..e {
                v.push(m % p);
                m /= p;
            }
            v
        };
        let undigits = |v: &[u32]| -> u32 {
            let mut n = 0u32;
            for &d in v.iter().rev() {
                n = n * p + d;
            }
            n
        };

        let mut add = vec![0u32; qs * qs];
        let mut neg = vec![0u32; qs];
        for a in 0..qs {
            let da = digits(a as u32);
            let nd: Vec<u32> = da.iter().map(|&x| (p - x) % p).collect();
            neg[a] = undigits(&nd);
            for b in a..qs {
                let db = digits(b as u32);
                let s: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                let v = undigits(&s);
                add[a * qs + b] = v;
                add[b * qs + a] = v;
            }
        }

        // multiplication: convolution of digit vectors reduced mod the defining poly
        let mut mul = vec![0u32; qs * qs];
        for a in 0..qs {
            let da = digits(a as u32);
            for b in a..qs {
                let db = digits(b as u32);
                let mut conv = vec![0u64; 2 * e as usize - 1];
                for (i, &x) in da.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in db.iter().enumerate() {
                        conv[i + j] += x as u64 * y as u64;
                    }
                }
                let mut c: Vec<u32> = conv.iter().map(|&x| (x % p as u64) as u32).collect();
                // reduce mod modulus
                for i in (e as usize..c.len()).rev() {
                    let f = c[i];
                    if f != 0 {
                        for (k, &mc) in modulus.iter().enumerate().take(e as usize) {
                            let idx = i - e as usize + k;
                            let sub = (f as u64 * mc as u64 % p as u64) as u32;
                            c[idx] = ((c[idx] + p) - sub) % p;
                        }
                    }
                    c[i] = 0;
                }
                c.truncate(e as usize);
                while c.len() < e as usize {
                    c.push(0);
                }
                let v = undigits(&c);
                mul[a * qs + b] = v;
                mul[b * qs + a] = v;
            }
        }

        // inverses by scanning the multiplication table
        let mut inv = vec![0u32; qs];
        for a in 1..qs {
            for b in 1..qs {
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }

        FqContext {
            inner: Arc::new(Inner {
                p,
                e,
                q,
                modulus,
                add,
                mul,
                neg,
                inv,
            }),
        }
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }
    pub fn e(&self) -> u32 {
        self.inner.e
    }
    pub fn q(&self) -> u64 {
        self.inner.q
    }
    pub fn modulus_coeffs(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn elem(&self, index: u64) -> Fq {
        debug_assert!(index < self.inner.q);
        Fq(index as u32)
    }

    /// The image of a rational integer under Z -> F_p <= F_q.
    pub fn from_int(&self, n: i64) -> Fq {
        let p = self.inner.p as i64;
        Fq(n.rem_euclid(p) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.inner.q as u32).map(Fq)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.inner.add[a.0 as usize * self.inner.q as usize + b.0 as usize])
    }
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.inner.neg[a.0 as usize])
    }
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.inner.mul[a.0 as usize * self.inner.q as usize + b.0 as usize])
    }
    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Fq(self.inner.inv[a.0 as usize]))
    }
    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }
    pub fn pow(&self, a: Fq, mut n: u64) -> Fq {
        if a.is_zero() {
            return if n == 0 { Fq::ONE } else { Fq::ZERO };
        }
        n %= self.inner.q - 1;
        let mut acc = Fq::ONE;
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Render an element in the text syntax: a digit for prime fields,
    /// a polynomial in `w` otherwise.
    pub fn format_elem(&self, a: Fq) -> String {
        if self.inner.e == 1 {
            return format!("{}", a.0);
        }
        let p = self.inner.p;
        let mut terms = Vec::new();
        let mut m = a.0;
        for i in 0..self.inner.e {
            let d = m % p;
            m /= p;
            if d == 0 {
                continue;
            }
            let t = match (i, d) {
                (0, d) => format!("{d}"),
                (1, 1) => "w".to_string(),
                (1, d) => format!("{d}*w"),
                (i, 1) => format!("w^{i}"),
                (i, d) => format!("{d}*w^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.reverse();
            terms.join("+")
        }
    }
}
